"""Light stemming for dialect tokens by single prefix/suffix stripping.

Candidates are generated in a fixed priority order (whole form first) and
looked up against the lexicon; stripping never recurses, since repeated
stripping over-stems short dialect roots.  Words conjugated in the past
get a restoration variant: the terminal past-tense suffix is replaced by
alef-maqsura for Arabic or "a" for Arabizi.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .core import Script, token_script
from .errors import ConfigError


def read_config_sections(text: str) -> dict[str, list[str]]:
    """Parse the plain-text section format: ``[name]`` headers, one item per line."""
    sections: dict[str, list[str]] = {}
    current: list[str] | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            current = sections.setdefault(name, [])
            continue
        if current is None:
            raise ConfigError(f"line {line_no}: item {line!r} appears before any [section]")
        current.append(line)
    return sections


def _sorted_affixes(items) -> tuple[str, ...]:
    cleaned = []
    for it in items:
        if not it:
            raise ConfigError("empty affix")
        cleaned.append(it)
    return tuple(sorted(set(cleaned), key=lambda a: (-len(a), a)))


@dataclass(frozen=True)
class AffixConfig:
    """Per-script affix inventories, longest first, plus past-tense rules."""

    arabic_prefixes: tuple[str, ...]
    arabic_suffixes: tuple[str, ...]
    arabizi_prefixes: tuple[str, ...]
    arabizi_suffixes: tuple[str, ...]
    arabic_past_suffixes: tuple[str, ...] = ("يت", "ت")
    arabizi_past_suffixes: tuple[str, ...] = ("yt", "it", "t")
    arabic_past_restore: str = "ى"
    arabizi_past_restore: str = "a"
    min_stem_length: int = 2

    def __post_init__(self):
        if self.min_stem_length < 2:
            raise ConfigError("min_stem_length must be >= 2")
        for name in (
            "arabic_prefixes", "arabic_suffixes",
            "arabizi_prefixes", "arabizi_suffixes",
            "arabic_past_suffixes", "arabizi_past_suffixes",
        ):
            object.__setattr__(self, name, _sorted_affixes(getattr(self, name)))

    def prefixes_for(self, script: Script) -> tuple[str, ...]:
        return self.arabic_prefixes if script is Script.ARABIC else self.arabizi_prefixes

    def suffixes_for(self, script: Script) -> tuple[str, ...]:
        return self.arabic_suffixes if script is Script.ARABIC else self.arabizi_suffixes

    def past_suffixes_for(self, script: Script) -> tuple[str, ...]:
        return (
            self.arabic_past_suffixes
            if script is Script.ARABIC
            else self.arabizi_past_suffixes
        )

    def past_restore_for(self, script: Script) -> str:
        return (
            self.arabic_past_restore
            if script is Script.ARABIC
            else self.arabizi_past_restore
        )


def _config_from_sections(sections: dict[str, list[str]]) -> AffixConfig:
    def need(name: str) -> list[str]:
        if name not in sections or not sections[name]:
            raise ConfigError(f"affix config missing section [{name}]")
        return sections[name]

    options = dict(
        (k.strip(), v.strip())
        for k, _, v in (line.partition("=") for line in sections.get("options", []))
    )
    min_stem = int(options.get("min_stem_length", 2))
    return AffixConfig(
        arabic_prefixes=tuple(need("arabic.prefixes")),
        arabic_suffixes=tuple(need("arabic.suffixes")),
        arabizi_prefixes=tuple(need("arabizi.prefixes")),
        arabizi_suffixes=tuple(need("arabizi.suffixes")),
        arabic_past_suffixes=tuple(sections.get("arabic.past_suffixes", ["يت", "ت"])),
        arabizi_past_suffixes=tuple(sections.get("arabizi.past_suffixes", ["yt", "it", "t"])),
        arabic_past_restore=(sections.get("arabic.past_restore") or ["ى"])[0],
        arabizi_past_restore=(sections.get("arabizi.past_restore") or ["a"])[0],
        min_stem_length=min_stem,
    )


def load_affix_config(path) -> AffixConfig:
    with open(path, encoding="utf-8") as fh:
        return _config_from_sections(read_config_sections(fh.read()))


def default_affix_config() -> AffixConfig:
    text = resources.files("sentialg.data").joinpath("affixes_default.cfg").read_text("utf-8")
    return _config_from_sections(read_config_sections(text))


def _strip_prefix(token: str, prefixes) -> str | None:
    for p in prefixes:
        if token.startswith(p) and len(token) > len(p):
            return token[len(p):]
    return None


def _strip_suffix(token: str, suffixes) -> str | None:
    for s in suffixes:
        if token.endswith(s) and len(token) > len(s):
            return token[:-len(s)]
    return None


def _past_variant(candidate: str, past_suffixes, restore: str) -> str | None:
    for s in past_suffixes:
        if candidate.endswith(s) and len(candidate) > len(s):
            return candidate[:-len(s)] + restore
    return None


def stem_candidates(token: str, config: AffixConfig) -> list[str]:
    """Candidate stems in priority order.

    (1) the token itself, (2) minus one longest-matching prefix, (3) minus
    one longest-matching suffix, (4) minus both, then the past-tense
    restoration variant of each.  Candidates shorter than
    ``min_stem_length`` are dropped; duplicates keep their first position.
    """
    if not token:
        raise ValueError("empty token")
    script = token_script(token)
    prefixes = config.prefixes_for(script)
    suffixes = config.suffixes_for(script)
    base: list[str] = [token]
    without_prefix = _strip_prefix(token, prefixes)
    if without_prefix:
        base.append(without_prefix)
    without_suffix = _strip_suffix(token, suffixes)
    if without_suffix:
        base.append(without_suffix)
    if without_prefix:
        without_both = _strip_suffix(without_prefix, suffixes)
        if without_both:
            base.append(without_both)
    past_suffixes = config.past_suffixes_for(script)
    restore = config.past_restore_for(script)
    candidates = list(base)
    for cand in base:
        past = _past_variant(cand, past_suffixes, restore)
        if past:
            candidates.append(past)
    out: list[str] = []
    seen: set[str] = set()
    for cand in candidates:
        if len(cand) >= config.min_stem_length and cand not in seen:
            seen.add(cand)
            out.append(cand)
    return out


def lookup_with_stemming(token: str, lexicon, config: AffixConfig):
    """First candidate stem present in the lexicon for the token's script.

    Returns ``(matched_form, score)`` or ``None``.  Lookup is
    case-insensitive; the whole form always wins over stripped forms.
    """
    script = token_script(token)
    for cand in stem_candidates(token, config):
        entry = lexicon.get(cand.casefold(), script)
        if entry is not None:
            return entry.term, entry.score
    return None
