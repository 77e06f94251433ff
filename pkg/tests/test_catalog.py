import random

import pytest

from commflow import (
    Catalog,
    CatalogRule,
    classify,
    normalize_text,
    phrase_matches,
)


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("Does ANYONE  know?", "does anyone know"),
        ("", ""),
        ("a-b_c", "a b c"),
        ("  spaced   out  ", "spaced out"),
        ("Tabs\tand\nnewlines", "tabs and newlines"),
    ],
)
def test_normalize_text(raw, expected):
    assert normalize_text(raw) == expected


@pytest.mark.parametrize(
    "body,phrase,expected",
    [
        ("can anyone know how this works", "anyone know", True),
        ("unknowable", "know", False),
        ("anyone know", "anyone know", True),
        ("does anyone really know", "anyone know", False),  # not contiguous
        ("ANYONE... know?!", "anyone know", True),
        ("knows best", "know", False),
        ("i know", "KNOW", True),
    ],
)
def test_phrase_matches(body, phrase, expected):
    assert phrase_matches(body, phrase) is expected


def test_phrase_matches_rejects_empty_phrase():
    with pytest.raises(ValueError):
        phrase_matches("anything", "")


def test_phrase_that_normalizes_to_nothing_matches_nothing():
    assert phrase_matches("anything at all", "?!") is False


def test_phrase_matches_via_synonym():
    synonyms = {"help": ("assist", "lend a hand")}
    assert phrase_matches("could you assist me", "help", synonyms)
    assert phrase_matches("lend a hand please", "help", synonyms)
    assert not phrase_matches("no relevant words", "help", synonyms)


def test_synonym_lookup_accepts_unnormalized_key():
    synonyms = {"HELP!": ("assist",)}
    catalog = Catalog((), synonyms)
    assert phrase_matches("please assist", "help", catalog.synonyms)


def test_catalog_rule_requires_all_fields():
    with pytest.raises(ValueError, match="lc_key"):
        CatalogRule("Initiation", "anyone know", "Observation", "", "X", "Novice")


def test_catalog_rule_requires_known_phase():
    with pytest.raises(ValueError, match="phase"):
        CatalogRule("Kickoff", "a", "S", "b", "X", "Novice")


RULES = (
    CatalogRule("Initiation", "anyone know", "Observation", "comment", "Comment Post", "Novice"),
    CatalogRule("Initiation", "anyone know", "Observation", "post", "Post Message", "Novice"),
    CatalogRule("Initiation", "anyone know", "Observation", "anyone", "Identify Expert", "Novice"),
    CatalogRule("Progression", "try this", "Guidance", "reply", "Send Reply", "Expert"),
)


def test_classify_requires_both_keys():
    # gl_key present but no lc_key, so nothing may fire
    assert classify("anyone know nothing else", Catalog(RULES[:2])) == []


def test_classify_single_rule():
    catalog = Catalog(RULES)
    results = classify("try this exact reply", catalog)
    assert len(results) == 1
    match = results[0]
    assert (match.state, match.activity, match.role) == ("Guidance", "Send Reply", "Expert")
    assert match.rule_index == 3


def test_classify_multi_rule_in_catalog_order():
    catalog = Catalog(RULES)
    results = classify("does anyone know how to comment on this post", catalog)
    assert [m.activity for m in results] == [
        "Comment Post",
        "Post Message",
        "Identify Expert",
    ]
    assert [m.rule_index for m in results] == [0, 1, 2]


def test_classify_collapses_duplicate_triples():
    duplicated = Catalog(
        (
            CatalogRule("Initiation", "anyone know", "Observation", "comment", "Comment Post", "Novice"),
            CatalogRule("Initiation", "know", "Observation", "comment", "Comment Post", "Novice"),
        )
    )
    results = classify("anyone know a comment", duplicated)
    assert len(results) == 1
    assert results[0].rule_index == 0


def test_classify_uses_catalog_synonyms():
    catalog = Catalog(RULES[:1], {"anyone know": ("who knows",), "comment": ("remark",)})
    assert classify("who knows a good remark", catalog)[0].activity == "Comment Post"


def test_for_phase_filters_rules_and_keeps_synonyms():
    catalog = Catalog(RULES, {"comment": ("remark",)})
    narrowed = catalog.for_phase("Progression")
    assert [r.activity for r in narrowed.rules] == ["Send Reply"]
    assert narrowed.synonyms == catalog.synonyms
    with pytest.raises(ValueError):
        catalog.for_phase("Wrapup")


def test_classify_is_pure_and_bounded():
    catalog = Catalog(RULES)
    body = "anyone know whether to comment or post a reply, try this"
    first = classify(body, catalog)
    second = classify(body, catalog)
    assert first == second
    assert len(first) <= len(catalog.rules)


_PUNCT = ["!", "?", ",", ";", ":", "...", "-", "_"]


def test_matching_survives_case_and_punctuation_noise():
    rng = random.Random(20100728)
    words = ["anyone", "know", "comment", "post", "where", "docs", "live", "it"]
    for _ in range(200):
        tokens = [rng.choice(words) for _ in range(rng.randint(1, 8))]
        body = " ".join(tokens)
        noisy = "".join(
            (tok.upper() if rng.random() < 0.5 else tok)
            + (rng.choice(_PUNCT) if rng.random() < 0.4 else " ")
            for tok in tokens
        )
        for phrase in ("anyone know", "comment", "post", "docs live"):
            assert phrase_matches(body, phrase) == phrase_matches(noisy, phrase)
