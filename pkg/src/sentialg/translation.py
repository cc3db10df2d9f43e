"""English-to-dialect translation lookup backed by an offline TSV table.

The table file holds one record per line, ``english<TAB>dialect``, UTF-8,
with ``#``-prefixed comment lines and blank lines skipped.  Any backend
exposing ``translate`` over the same record type can stand in for it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Script, contains_arabic, contains_latin_letter
from .errors import MalformedLine


@dataclass(frozen=True)
class TranslationRecord:
    """One translation outcome: an English term and a dialect surface form."""

    english_term: str
    dialect_term: str
    script: Script

    def __post_init__(self):
        if not self.english_term or any(c.isspace() for c in self.english_term):
            raise ValueError(f"bad english term: {self.english_term!r}")
        if ":" in self.english_term or ";" in self.english_term:
            raise ValueError(f"english term may not contain ':' or ';': {self.english_term!r}")
        if not self.dialect_term:
            raise ValueError("empty dialect term")
        if self.script not in (Script.ARABIC, Script.ARABIZI):
            raise ValueError(f"record script must be arabic or arabizi, got {self.script}")


def infer_record_script(dialect_term: str) -> Script:
    """Arabic if the form contains any Arabic code point, else Arabizi."""
    return Script.ARABIC if contains_arabic(dialect_term) else Script.ARABIZI


class TranslationTable:
    """Immutable English-to-dialect mapping; safe for concurrent reads."""

    def __init__(self, records):
        self._records = frozenset(records)
        self._by_english: dict[str, frozenset[TranslationRecord]] = {}
        grouped: dict[str, set[TranslationRecord]] = {}
        for rec in self._records:
            grouped.setdefault(rec.english_term, set()).add(rec)
        self._by_english = {k: frozenset(v) for k, v in grouped.items()}

    @property
    def records(self) -> frozenset[TranslationRecord]:
        return self._records

    def english_terms(self):
        return sorted(self._by_english)

    def translate(self, term: str) -> frozenset[TranslationRecord]:
        """All records whose English side equals ``term``, case-insensitively."""
        return self._by_english.get(term.casefold(), frozenset())

    def __len__(self) -> int:
        return len(self._records)

    def __eq__(self, other) -> bool:
        return isinstance(other, TranslationTable) and self._records == other._records


def load_translation_table(path) -> TranslationTable:
    """Parse a translation TSV into a :class:`TranslationTable`.

    English terms are case-folded; duplicate lines collapse to one record.
    Raises :class:`MalformedLine` for lines without exactly one tab, with
    an empty side, with whitespace inside the English term, or with a
    dialect form mixing Arabic and Latin letters.
    """
    records: set[TranslationRecord] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.count("\t") != 1:
                raise MalformedLine(line_no, "expected exactly one tab", str(path))
            english, dialect = line.split("\t")
            english = english.strip().casefold()
            dialect = dialect.strip().casefold()
            if not english or not dialect:
                raise MalformedLine(line_no, "empty field", str(path))
            if any(c.isspace() for c in english):
                raise MalformedLine(line_no, "whitespace inside english term", str(path))
            if ":" in english or ";" in english:
                raise MalformedLine(line_no, "':' or ';' inside english term", str(path))
            if contains_arabic(dialect) and contains_latin_letter(dialect):
                raise MalformedLine(line_no, f"mixed-script dialect term {dialect!r}", str(path))
            records.add(TranslationRecord(english, dialect, infer_record_script(dialect)))
    return TranslationTable(records)
