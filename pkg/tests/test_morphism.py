"""Grammar morphisms: construction, validation, composition and relabeling parse states."""

import pytest

from incremental_grammar.core import MorphismError
from incremental_grammar.grammar import MonoidalGrammar, enumerate_parsings, load_grammar
from incremental_grammar.morphism import (
    GrammarMorphism,
    apply_morphism,
    compose_morphisms,
    identity_morphism,
    infer_morphism,
    load_morphism,
)
from incremental_grammar.signature import PregroupType
from tests.grammar_cases import RENAMED_TEXT, SPLIT_TEXT, closure_edges, sentences


def _grammar(text: str) -> MonoidalGrammar:
    return MonoidalGrammar.from_spec(load_grammar(text))


def test_identity_morphism_fixes_every_generator(complex_houses):
    identity = identity_morphism(complex_houses.grammar)
    assert identity.arrow_map == {name: name for name in complex_houses.grammar.signature.names()}
    parsing = complex_houses.grammar.parse_state("s(np(Complex) vp(tv(houses) np(students)))")
    assert apply_morphism(identity, parsing) == parsing


def test_inferred_renaming_relabels_parsings(complex_houses):
    source = _grammar(RENAMED_TEXT)
    m = infer_morphism(source, complex_houses.grammar, {"nominal": "np"})
    assert m.arrow_map["s -> nominal vp"] == "s -> np vp"
    assert m.arrow_map["nominal -> adj nominal"] == "np -> adj np"
    (parsing,) = enumerate_parsings(source, ["Complex", "houses", "students"])
    image = apply_morphism(m, parsing)
    assert image.canonical() == "s(np(Complex) vp(tv(houses) np(students)))"
    assert image.prefix == parsing.prefix


def test_merging_morphism_sends_both_categories_to_one(complex_houses):
    source = _grammar(SPLIT_TEXT)
    m = infer_morphism(source, complex_houses.grammar, {"iv": "itv"})
    assert m.arrow_map["vp -> iv"] == "vp -> itv"
    assert m.arrow_map["iv -> houses"] == "itv -> houses"
    merged = apply_morphism(m, source.parse_state("s(np(houses) vp(iv(disappoint)))"))
    assert merged.canonical() == "s(np(houses) vp(itv(disappoint)))"


def test_pregroup_objects_keep_their_adjoint_order(alice):
    identity = identity_morphism(alice.grammar)
    assert identity.map_object(PregroupType("n", -2)) == (PregroupType("n", -2),)
    assert identity.map_object("Alice") == ("Alice",)
    (parsing,) = enumerate_parsings(alice.grammar, ["Alice", "loves", "Bob"])
    assert apply_morphism(identity, parsing) == parsing


def test_composition(complex_houses):
    source = _grammar(RENAMED_TEXT)
    renaming = infer_morphism(source, complex_houses.grammar, {"nominal": "np"})
    composed = compose_morphisms(renaming, identity_morphism(complex_houses.grammar))
    assert composed.arrow_map == renaming.arrow_map
    assert composed.map_symbol("nominal") == ("np",)
    with pytest.raises(MorphismError):
        compose_morphisms(identity_morphism(complex_houses.grammar), renaming)


def test_words_must_map_to_themselves(complex_houses):
    arrows = {name: name for name in complex_houses.grammar.signature.names()}
    with pytest.raises(MorphismError, match="Word 'Complex'"):
        infer_morphism(complex_houses.grammar, complex_houses.grammar, {"Complex": "Complex2"}, arrows)


def test_start_symbol_must_map_to_itself(complex_houses):
    arrows = {name: name for name in complex_houses.grammar.signature.names()}
    with pytest.raises(MorphismError):
        GrammarMorphism(complex_houses.grammar, complex_houses.grammar, {"s": "np"}, arrows)


def test_modes_must_agree(complex_houses, alice):
    with pytest.raises(MorphismError):
        GrammarMorphism(complex_houses.grammar, alice.grammar, {}, {})


def test_arrow_images_must_exist_and_commute(complex_houses):
    arrows = {name: name for name in complex_houses.grammar.signature.names()}
    with pytest.raises(MorphismError, match="lacks"):
        GrammarMorphism(complex_houses.grammar, complex_houses.grammar, {}, arrows | {"np -> students": "np -> cats"})
    with pytest.raises(MorphismError, match="commute"):
        GrammarMorphism(
            complex_houses.grammar, complex_houses.grammar, {}, arrows | {"np -> students": "np -> houses"}
        )
    with pytest.raises(MorphismError, match="no image"):
        GrammarMorphism(complex_houses.grammar, complex_houses.grammar, {}, {})


def test_inference_needs_a_unique_image(complex_houses):
    source = _grammar(SPLIT_TEXT)
    with pytest.raises(MorphismError, match="no image"):
        infer_morphism(source, complex_houses.grammar, {})


def test_load_morphism_from_toml(tmp_path, complex_houses):
    source = _grammar(SPLIT_TEXT)
    path = tmp_path / "merge.toml"
    path.write_text('[objects]\niv = "itv"\n\n[arrows]\n"vp -> iv" = "vp -> itv"\n', encoding="utf-8")
    m = load_morphism(path, source, complex_houses.grammar)
    assert m.arrow_map["iv -> disappoint"] == "itv -> disappoint"


def test_load_morphism_rejects_non_tables(tmp_path, complex_houses):
    path = tmp_path / "bad.toml"
    path.write_text("objects = 3\n", encoding="utf-8")
    with pytest.raises(TypeError):
        load_morphism(path, complex_houses.grammar, complex_houses.grammar)


def test_load_morphism_missing_file(tmp_path, complex_houses):
    with pytest.raises(FileNotFoundError):
        load_morphism(tmp_path / "absent.toml", complex_houses.grammar, complex_houses.grammar)


# --- functoriality over closures ---------------------------------------------------


def _morphisms(complex_houses, alice):
    split = _grammar(SPLIT_TEXT)
    renamed = _grammar(RENAMED_TEXT)
    return [
        infer_morphism(split, complex_houses.grammar, {"iv": "itv"}),
        infer_morphism(renamed, complex_houses.grammar, {"nominal": "np"}),
        identity_morphism(alice.grammar),
    ]


@pytest.mark.parametrize("which", [0, 1, 2])
def test_images_of_applications_are_applications_of_images(complex_houses, alice, which):
    m = _morphisms(complex_houses, alice)[which]
    checked = 0
    for state, g, position, successor in closure_edges(m.source, 3):
        image = m.target.apply_generator(apply_morphism(m, state), m.map_generator(g), position)
        assert apply_morphism(m, successor) == image
        checked += 1
    assert checked > 0


@pytest.mark.parametrize("which", [0, 1, 2])
def test_image_codomains_are_mapped_codomains(complex_houses, alice, which):
    m = _morphisms(complex_houses, alice)[which]
    for sentence in sentences(m.source.vocabulary, 3):
        for state in m.source.reachable_states(sentence):
            image = apply_morphism(m, state)
            assert image.codomain == m.map_objects(state.codomain)
            assert image.prefix == state.prefix
            assert m.target.is_parsing(image) == m.source.is_parsing(state)
