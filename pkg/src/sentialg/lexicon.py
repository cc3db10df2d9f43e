"""Dialect sentiment lexicon built by pivoting an English valence lexicon.

Every seed term is translated; every dialect form then receives the
arithmetic mean of the valences of all English terms that produced it.
Arabic and Arabizi forms live in separate per-script entry spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Script
from .errors import EmptySeed, FormatVersionMismatch, MalformedLine

LEXICON_HEADER = "#sentialg-lexicon v1"

_SEED_MIN, _SEED_MAX = -5, 5


@dataclass(frozen=True)
class SeedEntry:
    """An English pivot term with an integer valence in [-5,-1] or [+1,+5]."""

    term: str
    score: int

    def __post_init__(self):
        if not self.term or any(c.isspace() for c in self.term):
            raise ValueError(f"bad seed term: {self.term!r}")
        if not isinstance(self.score, int) or self.score == 0 or not (
            _SEED_MIN <= self.score <= _SEED_MAX
        ):
            raise ValueError(f"seed score must be a nonzero integer in [-5,+5]: {self.score!r}")


@dataclass(frozen=True)
class LexiconEntry:
    """A dialect surface form with its averaged valence and provenance."""

    term: str
    script: Script
    score: float
    sources: frozenset[tuple[str, int]]

    def __post_init__(self):
        if not self.sources:
            raise ValueError(f"entry {self.term!r} has no sources")
        if not (-5.0 <= self.score <= 5.0):
            raise ValueError(f"entry score out of range: {self.score!r}")
        mean = sum(s for _, s in self.sources) / len(self.sources)
        if abs(self.score - mean) > 2 * math.ulp(max(1.0, abs(mean))):
            raise ValueError(
                f"entry {self.term!r}: score {self.score!r} is not the mean of its sources ({mean!r})"
            )


@dataclass
class LexiconMetadata:
    seed_name: str = ""
    built_at: str = ""  # caller-supplied; left empty for reproducible builds


class SentimentLexicon:
    """Immutable map from (dialect term, script) to a scored entry."""

    def __init__(self, entries, metadata: LexiconMetadata | None = None):
        self._entries: dict[tuple[str, Script], LexiconEntry] = {}
        for entry in entries:
            key = (entry.term, entry.script)
            if key in self._entries:
                raise ValueError(f"duplicate lexicon key {key!r}")
            self._entries[key] = entry
        self.metadata = metadata or LexiconMetadata()

    def get(self, term: str, script: Script) -> LexiconEntry | None:
        return self._entries.get((term, script))

    def __contains__(self, key: tuple[str, Script]) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self.sorted_entries())

    def sorted_entries(self) -> list[LexiconEntry]:
        return [
            self._entries[k]
            for k in sorted(self._entries, key=lambda k: (k[1].value, k[0]))
        ]

    def count(self, script: Script) -> int:
        return sum(1 for _, s in self._entries if s is script)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SentimentLexicon)
            and self._entries == other._entries
            and self.metadata.seed_name == other.metadata.seed_name
            and self.metadata.built_at == other.metadata.built_at
        )


def build_lexicon(seed, provider, stoplist=frozenset(), *,
                  seed_name: str = "", built_at: str = "") -> SentimentLexicon:
    """Pivot ``seed`` through ``provider`` and average valences per dialect form.

    Each dialect form's score is the mean of the seed scores of every
    English term that translates to it; an English term counts once per
    form regardless of duplicate table lines.  Forms listed in
    ``stoplist`` are dropped.  Raises :class:`EmptySeed` on empty input.
    """
    seed = list(seed)
    if not seed:
        raise EmptySeed("seed lexicon is empty")
    stop = {t.casefold() for t in stoplist}
    contributions: dict[tuple[str, Script], dict[str, int]] = {}
    for entry in sorted(seed, key=lambda e: e.term):
        for rec in provider.translate(entry.term):
            key = (rec.dialect_term, rec.script)
            contributions.setdefault(key, {})[entry.term.casefold()] = entry.score
    entries = []
    for (term, script), sources in contributions.items():
        if term in stop:
            continue
        score = sum(sources.values()) / len(sources)
        entries.append(
            LexiconEntry(term, script, score, frozenset(sources.items()))
        )
    return SentimentLexicon(
        entries, LexiconMetadata(seed_name=seed_name, built_at=built_at)
    )


def load_seed_lexicon(path) -> list[SeedEntry]:
    """Read a seed TSV (``term<TAB>integer_score``), case-folding terms.

    Exact duplicate lines collapse; the same term with two different
    scores is a data error.
    """
    seen: dict[str, int] = {}
    order: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.count("\t") != 1:
                raise MalformedLine(line_no, "expected exactly one tab", str(path))
            term, score_text = (part.strip() for part in line.split("\t"))
            term = term.casefold()
            try:
                score = int(score_text)
            except ValueError:
                raise MalformedLine(line_no, f"non-integer score {score_text!r}", str(path))
            if term in seen and seen[term] != score:
                raise MalformedLine(
                    line_no, f"conflicting duplicate seed term {term!r}", str(path)
                )
            if term not in seen:
                order.append(term)
            seen[term] = score
            try:
                SeedEntry(term, score)
            except ValueError as exc:
                raise MalformedLine(line_no, str(exc), str(path))
    return [SeedEntry(t, seen[t]) for t in order]


def load_stoplist(path) -> frozenset[str]:
    terms = set()
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                terms.add(line.casefold())
    return frozenset(terms)


def save_lexicon(lexicon: SentimentLexicon, path) -> None:
    """Write the deterministic TSV form; identical lexicons give identical bytes."""
    lines = [
        LEXICON_HEADER,
        f"#seed={lexicon.metadata.seed_name}",
        f"#built={lexicon.metadata.built_at}",
        f"#arabic={lexicon.count(Script.ARABIC)}",
        f"#arabizi={lexicon.count(Script.ARABIZI)}",
    ]
    for entry in lexicon.sorted_entries():
        sources = ";".join(f"{eng}:{score}" for eng, score in sorted(entry.sources))
        lines.append(f"{entry.term}\t{entry.script.value}\t{entry.score!r}\t{sources}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_lexicon(path) -> SentimentLexicon:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != LEXICON_HEADER:
        found = lines[0] if lines else ""
        raise FormatVersionMismatch(LEXICON_HEADER, found, str(path))
    meta = LexiconMetadata()
    declared: dict[str, int] = {}
    entries = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:]
            if "=" not in body:
                continue
            key, value = body.split("=", 1)
            if key == "seed":
                meta.seed_name = value
            elif key == "built":
                meta.built_at = value
            elif key in ("arabic", "arabizi"):
                try:
                    declared[key] = int(value)
                except ValueError:
                    raise MalformedLine(line_no, f"bad count {value!r}", str(path))
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise MalformedLine(line_no, "expected 4 tab-separated fields", str(path))
        term, script_text, score_text, sources_text = parts
        try:
            script = Script(script_text)
        except ValueError:
            raise MalformedLine(line_no, f"unknown script {script_text!r}", str(path))
        try:
            score = float(score_text)
        except ValueError:
            raise MalformedLine(line_no, f"bad score {score_text!r}", str(path))
        sources = set()
        for item in sources_text.split(";"):
            if ":" not in item:
                raise MalformedLine(line_no, f"bad source {item!r}", str(path))
            eng, _, s = item.rpartition(":")
            try:
                sources.add((eng, int(s)))
            except ValueError:
                raise MalformedLine(line_no, f"bad source score in {item!r}", str(path))
        try:
            entries.append(LexiconEntry(term, script, score, frozenset(sources)))
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc), str(path))
    lexicon = SentimentLexicon(entries, meta)
    for key, script in (("arabic", Script.ARABIC), ("arabizi", Script.ARABIZI)):
        if key in declared and declared[key] != lexicon.count(script):
            raise MalformedLine(
                len(lines),
                f"{key} count mismatch: header says {declared[key]}, "
                f"file has {lexicon.count(script)}",
                str(path),
            )
    return lexicon
