"""Message pretreatment: dedup, normalization, tokenization, n-grams.

Normalization order matters for idempotence: tatweel and ``#`` are removed
first (their removal can join letters into new runs), then elongated
character runs collapse to a single occurrence, then sentence punctuation
is detached from words, then whitespace collapses.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache

from .core import TATWEEL, Script, is_arabic_letter, is_latin_letter
from .errors import MalformedLine

PUNCTUATION_TOKENS = (".", ",", "!", "?")

DEFAULT_ELONGATION_THRESHOLD = 3

_PUNCT_RE = re.compile(r"([.,!?])")


@dataclass(frozen=True)
class Message:
    """One raw social-media message."""

    id: str
    text: str
    source: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("message id is empty")
        if not self.text.strip():
            raise ValueError(f"message {self.id!r} has empty text")


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    script: Script

    def __post_init__(self):
        for tok in self.tokens:
            if not tok or any(c.isspace() for c in tok):
                raise ValueError(f"bad token {tok!r}")

    def __len__(self) -> int:
        return len(self.tokens)


@lru_cache(maxsize=8)
def _run_re(threshold: int) -> re.Pattern:
    return re.compile(r"(.)\1{%d,}" % (threshold - 1), re.DOTALL)


def normalize(text: str, elongation_threshold: int = DEFAULT_ELONGATION_THRESHOLD) -> str:
    """Collapse exaggerations and detach punctuation; idempotent.

    Character runs of length >= ``elongation_threshold`` collapse to one
    occurrence (default 3, so doubled letters survive), ``#`` and tatweel
    are deleted, ``. , ! ?`` are split off as their own tokens, and
    whitespace runs become single spaces.
    """
    if elongation_threshold < 2:
        raise ValueError("elongation_threshold must be >= 2")
    text = text.replace(TATWEEL, "").replace("#", "")
    text = _run_re(elongation_threshold).sub(r"\1", text)
    text = _PUNCT_RE.sub(r" \1 ", text)
    return " ".join(text.split())


def deduplicate(corpus) -> list[Message]:
    """Keep the first occurrence of each distinct trimmed text, in order."""
    seen: set[str] = set()
    kept = []
    for msg in corpus:
        key = msg.text.strip()
        if key not in seen:
            seen.add(key)
            kept.append(msg)
    return kept


def detect_script(text: str) -> Script:
    """Ternary script of a whole text, judged on letters only.

    All-Arabic letters give Arabic, all-Latin give Arabizi, anything else
    (both present, or letters from neither family) gives Mixed.  Text with
    no letters at all defaults to Arabizi.
    """
    saw_arabic = saw_latin = saw_other = False
    for ch in text:
        if not ch.isalpha():
            continue
        if is_arabic_letter(ch):
            saw_arabic = True
        elif is_latin_letter(ch):
            saw_latin = True
        else:
            saw_other = True
    if saw_other or (saw_arabic and saw_latin):
        return Script.MIXED
    if saw_arabic:
        return Script.ARABIC
    return Script.ARABIZI


def tokenize(text: str, elongation_threshold: int = DEFAULT_ELONGATION_THRESHOLD) -> TokenSequence:
    """Normalize then split on whitespace."""
    norm = normalize(text, elongation_threshold)
    return TokenSequence(tokens=tuple(norm.split()), script=detect_script(norm))


def ngrams(tokens, max_n: int = 3) -> list[tuple[str, int, int]]:
    """All contiguous spans of 1..max_n tokens as (surface, start, length).

    A sequence of T tokens yields sum over n of (T-n+1) spans.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    toks = tokens.tokens if isinstance(tokens, TokenSequence) else tuple(tokens)
    spans = []
    for n in range(1, min(max_n, len(toks)) + 1):
        for start in range(len(toks) - n + 1):
            spans.append((" ".join(toks[start:start + n]), start, n))
    return spans


def read_corpus_jsonl(path) -> list[Message]:
    """Load messages from JSONL with fields ``id``, ``text``, optional ``source``."""
    messages = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(line_no, f"bad JSON: {exc.msg}", str(path))
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise MalformedLine(line_no, "record needs 'id' and 'text'", str(path))
            msg_id = str(obj["id"])
            if msg_id in seen_ids:
                raise MalformedLine(line_no, f"duplicate id {msg_id!r}", str(path))
            seen_ids.add(msg_id)
            try:
                messages.append(Message(msg_id, str(obj["text"]), obj.get("source")))
            except ValueError as exc:
                raise MalformedLine(line_no, str(exc), str(path))
    return messages


def write_corpus_jsonl(messages, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for msg in messages:
            obj = {"id": msg.id, "text": msg.text}
            if msg.source is not None:
                obj["source"] = msg.source
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")
