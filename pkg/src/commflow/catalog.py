"""Keyphrase catalogs and deterministic matching of message text.

A catalog is an ordered list of rules. Each rule pairs a global key
phrase (which identifies a learning state) with a local key phrase
(which identifies the concrete activity and the actor's role). A
message is classified by checking, rule by rule, whether its body
contains both phrases.

Matching is normalized and token-boundary aware: bodies and phrases are
lowercased, punctuation becomes whitespace, and a phrase matches only as
a contiguous run of whole tokens ("know" never fires inside
"unknowable"). An optional synonym table extends a phrase to a set of
equivalent phrasings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

#: The three learning phases, in process order.
PHASES = ("Initiation", "Progression", "Maturation")

_NON_TOKEN = re.compile(r"[\W_]+", flags=re.UNICODE)

SynonymMap = Mapping[str, Iterable[str]]


def normalize_text(raw: str) -> str:
    """Lowercase, turn punctuation runs into single spaces, strip ends."""
    return _NON_TOKEN.sub(" ", raw.lower()).strip()


def _tokens(text: str) -> tuple[str, ...]:
    return tuple(normalize_text(text).split())


def _contains_run(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    # A phrase that normalizes to nothing is evidence of nothing.
    if not needle:
        return False
    width = len(needle)
    return any(
        haystack[i : i + width] == needle
        for i in range(len(haystack) - width + 1)
    )


def _alternates(phrase: str, synonyms: SynonymMap | None) -> Iterable[str]:
    yield phrase
    if synonyms:
        alts = synonyms.get(phrase)
        if alts is None:
            alts = synonyms.get(normalize_text(phrase), ())
        yield from alts


def phrase_matches(body: str, phrase: str, synonyms: SynonymMap | None = None) -> bool:
    """True iff the body contains the phrase (or a registered synonym).

    Containment means the normalized phrase occurs as a contiguous token
    run inside the normalized body. Synonym keys may be given raw or
    normalized.
    """
    if not phrase:
        raise ValueError("phrase must be non-empty")
    haystack = _tokens(body)
    return any(
        _contains_run(haystack, _tokens(candidate))
        for candidate in _alternates(phrase, synonyms)
    )


@dataclass(frozen=True)
class CatalogRule:
    """One classification rule: phase, state key, activity key, labels."""

    phase: str
    gl_key: str
    state: str
    lc_key: str
    activity: str
    role: str

    def __post_init__(self) -> None:
        for name in ("phase", "gl_key", "state", "lc_key", "activity", "role"):
            if not getattr(self, name):
                raise ValueError(f"catalog rule field {name!r} must be non-empty")
        if self.phase not in PHASES:
            raise ValueError(
                f"unknown phase {self.phase!r}; expected one of {', '.join(PHASES)}"
            )


@dataclass(frozen=True)
class MatchResult:
    """Labels copied from a matched rule, plus the rule's ordinal."""

    state: str
    activity: str
    role: str
    rule_index: int


@dataclass(frozen=True)
class Catalog:
    """An immutable, ordered rule collection with an optional synonym table.

    Rule order is significant: it governs the emission order when one
    message matches several rules. Synonym keys are normalized on load.
    """

    rules: tuple[CatalogRule, ...] = ()
    synonyms: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    # Per-rule token needles (phrase + synonyms), precomputed once.
    _gl_needles: tuple[tuple[tuple[str, ...], ...], ...] = field(
        init=False, repr=False, compare=False, default=()
    )
    _lc_needles: tuple[tuple[tuple[str, ...], ...], ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        normalized: dict[str, tuple[str, ...]] = {}
        for phrase, alts in self.synonyms.items():
            key = normalize_text(phrase)
            merged = dict.fromkeys(normalized.get(key, ()) + tuple(alts))
            normalized[key] = tuple(merged)
        object.__setattr__(self, "synonyms", normalized)
        object.__setattr__(
            self, "_gl_needles", tuple(self._needles(r.gl_key) for r in self.rules)
        )
        object.__setattr__(
            self, "_lc_needles", tuple(self._needles(r.lc_key) for r in self.rules)
        )

    def _needles(self, phrase: str) -> tuple[tuple[str, ...], ...]:
        candidates = dict.fromkeys(_alternates(phrase, self.synonyms))
        return tuple(_tokens(c) for c in candidates)

    def for_phase(self, phase: str) -> "Catalog":
        """A catalog restricted to one phase's rules (synonyms shared)."""
        if phase not in PHASES:
            raise ValueError(
                f"unknown phase {phase!r}; expected one of {', '.join(PHASES)}"
            )
        return Catalog(
            tuple(r for r in self.rules if r.phase == phase),
            dict(self.synonyms),
        )


def classify(body: str, catalog: Catalog) -> list[MatchResult]:
    """All rule matches for a message body, in catalog rule order.

    A rule matches when body contains both its gl_key and its lc_key.
    Matches repeating an already-emitted (state, activity, role) triple
    are collapsed into the first occurrence.
    """
    haystack = _tokens(body)
    results: list[MatchResult] = []
    seen: set[tuple[str, str, str]] = set()
    for index, rule in enumerate(catalog.rules):
        if not any(_contains_run(haystack, n) for n in catalog._gl_needles[index]):
            continue
        if not any(_contains_run(haystack, n) for n in catalog._lc_needles[index]):
            continue
        triple = (rule.state, rule.activity, rule.role)
        if triple in seen:
            continue
        seen.add(triple)
        results.append(MatchResult(rule.state, rule.activity, rule.role, index))
    return results
