import pytest
from hypothesis import given

from stringcone.arrangement import Arrangement, face_name, mutate, parse_face
from stringcone.cluster import (
    LaurentExpr,
    Seed,
    depth_cap,
    ghkk_potential,
    initial_potential,
    monomial_case,
    mutate_potential,
    optimized_sequence,
    potential_on,
    pullback,
    restrict_potential,
    transport,
    tropicalize,
)
from stringcone.cones import area_normals, level_prefix_normals
from stringcone.words import enumerate_reduced_words, initial_word, longest_element

from strategies import longest_words

SCHUBERT = Arrangement((1, 2, 3, 2, 1), 3)
SCHUBERT_EXT = (1, 2, 3, 2, 1, 2)


def monomials(expr):
    """Each monomial as the set of face names with exponent -1."""
    out = set()
    for exp in expr.terms:
        assert all(e in (0, -1) for e in exp)
        out.add(frozenset(face_name(b) for b, e in zip(expr.basis, exp) if e))
    return out


def faces(*names):
    return frozenset(names)


def arrow_names(seed):
    return {(face_name(a), face_name(b)) for a, b, _ in seed.arrows()}


SCHUBERT_ARROWS = {
    ("(1,3)", "3"), ("(1,4)", "(1,3)"), ("2", "(1,3)"), ("(1,3)", "(3,4)"),
    ("(1,2)", "2"), ("(3,4)", "(1,2)"), ("1", "(1,2)"), ("(1,2)", "(2,4)"),
}


def test_seed_shapes():
    s = Seed.from_arrangement(SCHUBERT)
    assert len(s.vertices) == 8 and len(s.frozen) == 6
    assert sorted(s.mutable()) == [(1, 2), (1, 3)]
    assert arrow_names(s) == SCHUBERT_ARROWS
    assert len(Seed.from_arrangement(Arrangement((1,), 1)).frozen) == 2
    big = Seed.from_arrangement(Arrangement(initial_word(4), 4))
    assert {face_name(v) for v in big.frozen} == {"1", "2", "3", "4", "(1,5)", "(2,5)", "(3,5)", "(4,5)"}


@pytest.mark.parametrize("label", [(1, 3), (1, 2)])
def test_seed_mutation_reverses_arrows_at_vertex(label):
    s = Seed.from_arrangement(SCHUBERT)
    name = face_name(label)
    expected = {(b, a) if name in (a, b) else (a, b) for a, b in SCHUBERT_ARROWS}
    assert arrow_names(s.mutate(label)) == expected
    assert s.mutate(label).mutate(label) == s


def test_pullback_of_orthogonal_monomial_is_a_single_monomial():
    seed = Seed.from_arrangement(Arrangement((1, 2, 1), 2))
    basis = seed.vertices
    e = lambda *names: tuple(-int(face_name(v) in names) for v in basis)  # noqa: E731
    # one incoming and one outgoing neighbour: no binomial factor
    expr = LaurentExpr(basis, [(e("(1,3)", "2"), 1)])
    assert monomials(pullback(expr, seed, (1, 2))) == {faces("(1,3)", "2", "(1,2)")}
    assert pullback(LaurentExpr(basis, [(e(), 1)]), seed, (1, 2)) == LaurentExpr(basis, [(e(), 1)])


def test_pullback_binomial():
    s = Seed.from_arrangement(SCHUBERT)
    basis = s.vertices
    e = lambda *names: tuple(-int(face_name(v) in names) for v in basis)  # noqa: E731
    theta = LaurentExpr(basis, [(e("(1,4)"), 1)])
    assert monomials(pullback(theta, s, (1, 3))) == {faces("(1,4)"), faces("(1,4)", "(1,3)")}
    theta2 = LaurentExpr(basis, [(e("2"), 1)])
    assert monomials(pullback(theta2, s, (1, 3))) == {faces("2"), faces("2", "(1,3)")}


def test_initial_potentials():
    assert monomials(initial_potential(1)) == {faces("(1,2)"), faces("1")}
    assert monomials(initial_potential(2)) == {
        faces("(1,3)"), faces("(1,3)", "(1,2)"), faces("(2,3)"),
        faces("1"), faces("1", "(1,2)"), faces("2"),
    }
    assert len(initial_potential(3)) == 12
    assert potential_on(initial_word(3), 3) == initial_potential(3)


def _area_monomials(arr):
    rows = area_normals(arr) + level_prefix_normals(arr)
    labels = arr.face_labels()
    return {frozenset(face_name(labels[k]) for k, v in enumerate(r) if v) for r in rows}


@pytest.mark.parametrize("n", [2, 3])
def test_potential_matches_areas(n):
    for w in enumerate_reduced_words(longest_element(n)):
        arr = Arrangement(w, n)
        pot = potential_on(w, n)
        assert pot.basis == tuple(arr.face_labels())
        assert monomials(pot) == _area_monomials(arr)
        assert len(pot) == len(area_normals(arr)) + len(level_prefix_normals(arr))


def test_sl3_round_trip():
    arr = Arrangement((1, 2, 1), 2)
    pot = potential_on(arr.word, 2)
    moved, new = mutate_potential(pot, arr, (1, 2))
    assert new.word == (2, 1, 2)
    assert moved == potential_on((2, 1, 2), 2)
    _, mapping = mutate(arr, (1, 2))
    back, again = mutate_potential(moved, new, mapping[(1, 2)])
    assert again == arr and back == pot


def test_monomial_cases():
    seed = Seed.from_arrangement(Arrangement((1, 2, 1), 2))
    basis = seed.vertices
    e = lambda *names: tuple(-int(face_name(v) in names) for v in basis)  # noqa: E731
    assert monomial_case(e(), seed, (1, 2)) == (0, 0, 0, 0)
    assert monomial_case(e("(1,3)", "2"), seed, (1, 2)) == (1, 1, 1, 0)
    assert monomial_case(e("2"), seed, (1, 2)) == (2, 0, 1, 0)
    assert monomial_case(e("(2,3)"), seed, (1, 2)) == (2, 0, 1, 0)
    assert monomial_case(e("1"), seed, (1, 2)) == (3, 1, 0, 0)
    assert monomial_case(e("1", "(1,2)"), seed, (1, 2)) == (3, 1, 0, -1)


@given(longest_words(max_n=4))
def test_monomial_rules_match_pullback(case):
    word, n = case
    arr = Arrangement(word, n)
    pot = potential_on(word, n)
    for label in arr.mutable_faces():
        general, new, _ = transport(pot, arr, label)
        local, new2 = mutate_potential(pot, arr, label)
        assert new == new2
        assert general == local


@given(longest_words(max_n=4))
def test_expansions_and_merges_pair_up(case):
    word, n = case
    arr = Arrangement(word, n)
    pot = potential_on(word, n)
    for label in arr.mutable_faces():
        seed = Seed.from_arrangement(arr)
        expansions = sum(1 for exp in pot.terms if monomial_case(exp, seed, label)[0] == 2)
        moved, new = mutate_potential(pot, arr, label)
        _, mapping = mutate(arr, label)
        back_seed = Seed.from_arrangement(new)
        merges = sum(1 for exp in moved.terms
                     if monomial_case(exp, back_seed, mapping[label])[0] == 3
                     and exp[back_seed.index(mapping[label])] == -1)
        assert expansions == merges


def test_tropicalize_examples():
    arr = Arrangement((1, 2, 1), 2)
    basis = Seed.from_arrangement(arr).vertices
    e = lambda *names: tuple(-int(face_name(v) in names) for v in basis)  # noqa: E731
    expr = LaurentExpr(basis, [(e("1"), 1), (e("1", "(1,2)"), 1), (e(), 1)])
    cone = tropicalize(expr, arr)
    assert sorted(cone.inequalities()) == ["-x(1,2) - x1 >= 0", "-x1 >= 0"]


SCHUBERT_RESTRICTED = {
    faces("3"),
    faces("2"), faces("2", "(1,3)"), faces("2", "(1,3)", "(3,4)"),
    faces("1"), faces("1", "(1,2)"),
    faces("(2,4)"), faces("(2,4)", "(3,4)"),
    faces("(1,4)"), faces("(1,4)", "(1,3)"), faces("(1,4)", "(1,3)", "(3,4)"),
    faces("(1,4)", "(1,3)", "(3,4)", "(1,2)"),
}

SCHUBERT_GHKK = {
    faces("3"), faces("2"), faces("2", "(1,3)"), faces("1"), faces("1", "(1,2)"),
    faces("(2,4)"), faces("(3,4)"), faces("(3,4)", "(1,2)"), faces("(1,4)"), faces("(1,4)", "(1,3)"),
}


def test_restricted_schubert_potential():
    full = potential_on(SCHUBERT_EXT, 3)
    restricted = restrict_potential(full, SCHUBERT)
    dropped = {m for m in monomials(full) if "(2,3)" in m}
    assert dropped == {faces("(2,3)")}
    assert monomials(restricted) == SCHUBERT_RESTRICTED
    assert len(tropicalize(restricted, SCHUBERT).normals) == 12


def test_restriction_to_itself_is_identity():
    arr = Arrangement((2, 1, 2), 2)
    pot = potential_on(arr.word, 2)
    assert restrict_potential(pot, arr) == pot


def test_optimized_seeds_of_schubert_example():
    s = Seed.from_arrangement(SCHUBERT)
    assert optimized_sequence(s, (3,)) == []
    assert optimized_sequence(s, (2, 4)) == []
    assert optimized_sequence(s, (1, 4)) == [(1, 3)]
    assert optimized_sequence(s, (2,)) == [(1, 3)]
    assert optimized_sequence(s, (3, 4)) == [(1, 2)]
    assert optimized_sequence(s, (1,)) == [(1, 2)]


def test_ghkk_potential_examples():
    expr, missing = ghkk_potential(Seed.from_arrangement(SCHUBERT))
    assert missing == []
    assert monomials(expr) == SCHUBERT_GHKK
    tiny, _ = ghkk_potential(Seed.from_arrangement(Arrangement((1,), 1)))
    assert monomials(tiny) == {faces("1"), faces("(1,2)")}


@pytest.mark.parametrize("word", [(1, 2, 1), (2, 1, 2), (1, 2, 1, 3, 2, 1), (2, 3, 2, 1, 2, 3)])
def test_ghkk_on_longest_word_is_superpotential(word):
    n = max(word)
    expr, missing = ghkk_potential(Seed.from_arrangement(Arrangement(word, n)))
    assert missing == [] and expr == potential_on(word, n)


def test_ghkk_cone_strictly_inside_restricted_cone():
    ghkk = tropicalize(ghkk_potential(Seed.from_arrangement(SCHUBERT))[0], SCHUBERT)
    restricted = tropicalize(restrict_potential(potential_on(SCHUBERT_EXT, 3), SCHUBERT), SCHUBERT)
    ok, witness, side = ghkk.equals(restricted)
    assert not ok and side == "second"
    assert restricted.contains(witness) and not ghkk.contains(witness)


def test_laurent_json_and_reindex():
    arr = Arrangement((1, 2, 1), 2)
    pot = potential_on(arr.word, 2)
    data = pot.to_json()
    assert data["basis"] == ["e(1,2)", "e(1,3)", "e(2,3)", "e1", "e2"]
    assert all(set(t) == {"exp", "coef"} for t in data["terms"])
    rebuilt = LaurentExpr([parse_face(b) for b in data["basis"]],
                          [(t["exp"], t["coef"]) for t in data["terms"]])
    assert rebuilt == pot
    reversed_basis = pot.basis[::-1]
    assert pot.reindex(reversed_basis).reindex(pot.basis) == pot


def test_depth_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SCL_DEPTH_CAP", "3")
    assert depth_cap() == 3
    monkeypatch.delenv("SCL_DEPTH_CAP")
    assert depth_cap() == 12
