"""Shared enums and writing-system (script) helpers."""

from __future__ import annotations

from enum import Enum

TATWEEL = "ـ"

# Arabic block plus supplement/extended/presentation-form ranges.
_ARABIC_RANGES = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)


class Script(str, Enum):
    ARABIC = "arabic"
    ARABIZI = "arabizi"
    MIXED = "mixed"


class Label(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    UNLABELED = "unlabeled"


def is_arabic_codepoint(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _ARABIC_RANGES)


def is_arabic_letter(ch: str) -> bool:
    return ch.isalpha() and is_arabic_codepoint(ch)


def is_latin_letter(ch: str) -> bool:
    # Basic Latin through Latin Extended-B covers Arabizi plus French borrowings.
    return ch.isalpha() and ord(ch) < 0x0250


def contains_arabic(text: str) -> bool:
    return any(is_arabic_codepoint(ch) for ch in text)


def contains_latin_letter(text: str) -> bool:
    return any(is_latin_letter(ch) for ch in text)


def token_script(token: str) -> Script:
    """Binary script of a single surface form, used for lexicon keying.

    Any Arabic code point makes the form Arabic; everything else (Latin
    letters, digits, symbols) is treated as Arabizi.
    """
    return Script.ARABIC if contains_arabic(token) else Script.ARABIZI


def label_from_score(score: float) -> Label:
    if score > 0:
        return Label.POSITIVE
    if score < 0:
        return Label.NEGATIVE
    return Label.UNLABELED
