"""Message scoring and silver-standard corpus annotation.

Scoring walks the token sequence once to resolve negation state, then
matches n-grams against the lexicon greedily (longest first, left to
right, non-overlapping), falling back to light stemming for unmatched
single tokens.  Every match starting at or after a negation toggle has
its score sign-flipped; the message score is the sum of applied scores
and the label is its sign.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import Label, Script, label_from_score, token_script
from .errors import InsufficientData, MalformedLine
from .evaluate import allocate_proportions
from .lexicon import SentimentLexicon
from .normalize import (
    DEFAULT_ELONGATION_THRESHOLD,
    Message,
    PUNCTUATION_TOKENS,
    TokenSequence,
    tokenize,
)
from .stemmer import AffixConfig, lookup_with_stemming, read_config_sections

DEFAULT_MAX_N = 3


class NegationScope(str, Enum):
    TO_END = "to_end"
    TO_PUNCTUATION = "to_punctuation"


@dataclass(frozen=True)
class NegationConfig:
    """Standalone and circumfix negation markers per script."""

    arabic_standalone: frozenset[str]
    arabizi_standalone: frozenset[str]
    arabic_prefixes: tuple[str, ...]
    arabic_suffixes: tuple[str, ...]
    arabizi_prefixes: tuple[str, ...]
    arabizi_suffixes: tuple[str, ...]
    scope: NegationScope = NegationScope.TO_END

    def __post_init__(self):
        for name in ("arabic_standalone", "arabizi_standalone"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        for name in (
            "arabic_prefixes", "arabic_suffixes",
            "arabizi_prefixes", "arabizi_suffixes",
        ):
            value = tuple(sorted(set(getattr(self, name)), key=lambda a: (-len(a), a)))
            if not value or any(not a for a in value):
                raise ValueError(f"{name} must be non-empty strings")
            object.__setattr__(self, name, value)

    def standalone_for(self, script: Script) -> frozenset[str]:
        return self.arabic_standalone if script is Script.ARABIC else self.arabizi_standalone

    def prefixes_for(self, script: Script) -> tuple[str, ...]:
        return self.arabic_prefixes if script is Script.ARABIC else self.arabizi_prefixes

    def suffixes_for(self, script: Script) -> tuple[str, ...]:
        return self.arabic_suffixes if script is Script.ARABIC else self.arabizi_suffixes


def default_negation_config() -> NegationConfig:
    from importlib import resources

    text = resources.files("sentialg.data").joinpath("negation_default.cfg").read_text("utf-8")
    return _negation_from_sections(read_config_sections(text))


def load_negation_config(path) -> NegationConfig:
    with open(path, encoding="utf-8") as fh:
        return _negation_from_sections(read_config_sections(fh.read()))


def _negation_from_sections(sections) -> NegationConfig:
    options = dict(
        (k.strip(), v.strip())
        for k, _, v in (line.partition("=") for line in sections.get("options", []))
    )
    return NegationConfig(
        arabic_standalone=frozenset(t.casefold() for t in sections.get("arabic.standalone", [])),
        arabizi_standalone=frozenset(t.casefold() for t in sections.get("arabizi.standalone", [])),
        arabic_prefixes=tuple(sections.get("arabic.prefixes", [])),
        arabic_suffixes=tuple(sections.get("arabic.suffixes", [])),
        arabizi_prefixes=tuple(sections.get("arabizi.prefixes", [])),
        arabizi_suffixes=tuple(sections.get("arabizi.suffixes", [])),
        scope=NegationScope(options.get("scope", "to_end")),
    )


@dataclass(frozen=True)
class MatchSpan:
    ngram: str      # surface form as it appeared in the message
    matched: str    # lexicon form that matched it
    raw: float
    negated: bool
    applied: float

    def __post_init__(self):
        expected = self.raw * (-1.0 if self.negated else 1.0)
        if self.applied != expected:
            raise ValueError(
                f"applied score {self.applied!r} must be raw x sign, expected {expected!r}"
            )


@dataclass(frozen=True)
class MatchTrace:
    spans: tuple[MatchSpan, ...] = ()
    notes: tuple[str, ...] = ()  # in-memory audit only, not serialized


@dataclass(frozen=True)
class AnnotatedMessage:
    message: Message
    script: Script
    score: float
    label: Label
    trace: MatchTrace = MatchTrace()

    def __post_init__(self):
        if self.label is not label_from_score(self.score):
            raise ValueError(
                f"label {self.label} inconsistent with score {self.score!r}"
            )


def detect_negation(token: str, config: NegationConfig) -> tuple[bool, str | None]:
    """Classify a token as a negator.

    A standalone marker gives (True, None); a token carrying both a
    negation prefix and suffix (circumfix) gives (True, residual) with the
    residual re-entering matching; anything else gives (False, None).
    """
    folded = token.casefold()
    script = token_script(token)
    if folded in config.standalone_for(script):
        return True, None
    for prefix in config.prefixes_for(script):
        if not folded.startswith(prefix):
            continue
        for suffix in config.suffixes_for(script):
            if folded.endswith(suffix) and len(folded) > len(prefix) + len(suffix):
                return True, folded[len(prefix):len(folded) - len(suffix)]
    return False, None


def score_message(
    tokens: TokenSequence,
    lexicon: SentimentLexicon,
    affix_config: AffixConfig,
    negation_config: NegationConfig,
    max_n: int = DEFAULT_MAX_N,
) -> tuple[float, MatchTrace]:
    """Score одних token sequence against the lexicon.

    Returns (score, trace) with one span per non-overlapping match; the
    score is the exact sum of the spans' applied scores.
    """
    count = len(tokens)
    surface = list(tokens.tokens)
    blocked = [False] * count
    parity_at = [0] * count  # negation parity applying to spans starting here
    notes: list[str] = []
    parity = 0
    for i, tok in enumerate(tokens.tokens):
        if negation_config.scope is NegationScope.TO_PUNCTUATION and tok in PUNCTUATION_TOKENS:
            parity = 0
        is_negator, residual = detect_negation(tok, negation_config)
        if is_negator:
            parity ^= 1
            if residual:
                surface[i] = residual
            else:
                blocked[i] = True
            if lexicon.get(tok.casefold(), token_script(tok)) is not None:
                notes.append(f"negator {tok!r} shadows a lexicon entry")
        parity_at[i] = parity

    consumed = [False] * count
    found: list[tuple[int, MatchSpan]] = []

    def try_match(start: int, length: int) -> None:
        surf = " ".join(surface[start:start + length])
        entry = lexicon.get(surf.casefold(), token_script(surf))
        if entry is None:
            return
        _record(start, length, surf, entry.term, entry.score)

    def _record(start: int, length: int, surf: str, matched: str, raw: float) -> None:
        negated = bool(parity_at[start])
        applied = raw * (-1.0 if negated else 1.0)
        found.append((start, MatchSpan(surf, matched, raw, negated, applied)))
        for j in range(start, start + length):
            consumed[j] = True

    for n in range(min(max_n, count), 0, -1):
        for start in range(count - n + 1):
            span = range(start, start + n)
            if any(consumed[j] or blocked[j] for j in span):
                continue
            try_match(start, n)

    for start in range(count):
        if consumed[start] or blocked[start]:
            continue
        hit = lookup_with_stemming(surface[start], lexicon, affix_config)
        if hit is not None:
            matched, raw = hit
            _record(start, 1, surface[start], matched, raw)

    found.sort(key=lambda pair: pair[0])
    spans = tuple(span for _, span in found)
    score = float(sum(span.applied for span in spans))
    return score, MatchTrace(spans=spans, notes=tuple(notes))


def annotate_message(
    message: Message,
    lexicon: SentimentLexicon,
    affix_config: AffixConfig,
    negation_config: NegationConfig,
    max_n: int = DEFAULT_MAX_N,
    elongation_threshold: int = DEFAULT_ELONGATION_THRESHOLD,
) -> AnnotatedMessage:
    tokens = tokenize(message.text, elongation_threshold)
    score, trace = score_message(tokens, lexicon, affix_config, negation_config, max_n)
    return AnnotatedMessage(message, tokens.script, score, label_from_score(score), trace)


def annotate_corpus(
    corpus,
    lexicon: SentimentLexicon,
    affix_config: AffixConfig,
    negation_config: NegationConfig,
    max_n: int = DEFAULT_MAX_N,
    elongation_threshold: int = DEFAULT_ELONGATION_THRESHOLD,
    jobs: int = 1,
) -> list[AnnotatedMessage]:
    """Annotate every message, preserving input order."""

    def one(msg: Message) -> AnnotatedMessage:
        return annotate_message(
            msg, lexicon, affix_config, negation_config, max_n, elongation_threshold
        )

    corpus = list(corpus)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, corpus))
    return [one(msg) for msg in corpus]


def summary_counts(annotated) -> dict:
    """Per-script positive/negative/unlabeled counts."""
    counts = {
        script.value: {label.value: 0 for label in Label}
        for script in (Script.ARABIC, Script.ARABIZI, Script.MIXED)
    }
    total = 0
    for item in annotated:
        counts[item.script.value][item.label.value] += 1
        total += 1
    counts["total"] = total
    return counts


@dataclass(frozen=True)
class BalancedSplits:
    balanced: tuple[AnnotatedMessage, ...]
    train: tuple[AnnotatedMessage, ...]
    dev: tuple[AnnotatedMessage, ...]
    test: tuple[AnnotatedMessage, ...]


_CELLS = (
    (Script.ARABIC, Label.POSITIVE),
    (Script.ARABIC, Label.NEGATIVE),
    (Script.ARABIZI, Label.POSITIVE),
    (Script.ARABIZI, Label.NEGATIVE),
)


def build_balanced_training_set(
    annotated,
    per_class_per_script: int,
    rng_seed: int,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
) -> BalancedSplits:
    """Sample a class- and script-balanced corpus, then split it.

    Each of the four (script, label) cells contributes exactly
    ``per_class_per_script`` messages sampled uniformly without
    replacement; unlabeled and mixed-script messages never qualify.
    """
    if per_class_per_script < 1:
        raise ValueError("per_class_per_script must be >= 1")
    rng = np.random.default_rng(rng_seed)
    balanced: list[AnnotatedMessage] = []
    train: list[AnnotatedMessage] = []
    dev: list[AnnotatedMessage] = []
    test: list[AnnotatedMessage] = []
    for script, label in _CELLS:
        pool = [a for a in annotated if a.script is script and a.label is label]
        if len(pool) < per_class_per_script:
            raise InsufficientData(
                f"{script.value}/{label.value}", len(pool), per_class_per_script
            )
        chosen_idx = rng.choice(len(pool), size=per_class_per_script, replace=False)
        chosen = [pool[i] for i in chosen_idx]
        balanced.extend(chosen)
        n_train, n_dev, n_test = allocate_proportions(per_class_per_script, ratios)
        train.extend(chosen[:n_train])
        dev.extend(chosen[n_train:n_train + n_dev])
        test.extend(chosen[n_train + n_dev:])
    return BalancedSplits(tuple(balanced), tuple(train), tuple(dev), tuple(test))


def write_annotated_jsonl(annotated, path) -> None:
    """Serialize annotations to JSONL with the wire trace schema."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for item in annotated:
            obj = {
                "id": item.message.id,
                "text": item.message.text,
                "script": item.script.value,
                "score": item.score,
                "label": item.label.value,
                "trace": [
                    {
                        "ngram": s.ngram,
                        "matched": s.matched,
                        "raw": s.raw,
                        "negated": s.negated,
                        "applied": s.applied,
                    }
                    for s in item.trace.spans
                ],
            }
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


def read_annotated_jsonl(path) -> list[AnnotatedMessage]:
    """Load an annotated (or gold-labeled) corpus.

    ``score`` and ``trace`` are optional so externally annotated test sets
    can carry just id/text/label; a missing score is synthesized from the
    label so the sign invariant holds.
    """
    out: list[AnnotatedMessage] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(line_no, f"bad JSON: {exc.msg}", str(path))
            for key in ("id", "text", "label"):
                if key not in obj:
                    raise MalformedLine(line_no, f"record needs {key!r}", str(path))
            try:
                label = Label(obj["label"])
            except ValueError:
                raise MalformedLine(line_no, f"unknown label {obj['label']!r}", str(path))
            if "score" in obj:
                score = float(obj["score"])
            else:
                score = {Label.POSITIVE: 1.0, Label.NEGATIVE: -1.0, Label.UNLABELED: 0.0}[label]
            message = Message(str(obj["id"]), str(obj["text"]))
            if "script" in obj:
                try:
                    script = Script(obj["script"])
                except ValueError:
                    raise MalformedLine(line_no, f"unknown script {obj['script']!r}", str(path))
            else:
                script = tokenize(message.text).script
            spans = []
            for span in obj.get("trace", []):
                spans.append(
                    MatchSpan(
                        span["ngram"], span["matched"],
                        float(span["raw"]), bool(span["negated"]), float(span["applied"]),
                    )
                )
            try:
                out.append(
                    AnnotatedMessage(message, script, score, label, MatchTrace(tuple(spans)))
                )
            except ValueError as exc:
                raise MalformedLine(line_no, str(exc), str(path))
    return out
