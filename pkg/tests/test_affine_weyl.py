import random
from itertools import combinations

import pytest

from iwahori_kit.affine_weyl import get_group
from iwahori_kit.errors import DatumMismatchError, InvalidInputError
from iwahori_kit.root_data import is_dominant, rho_pairing_twice


def test_simple_reflections_are_involutions(W_gl3, W_gsp4):
    for W in (W_gl3, W_gsp4):
        for s in W.simple_reflections():
            assert W.length(s) == 1
            assert W.multiply(s, s) == W.identity


def test_simple_reflection_count(W_gl2, W_gl3, W_gsp4):
    assert len(W_gl2.simple_reflections()) == 2
    assert len(W_gl3.simple_reflections()) == 3
    assert len(W_gsp4.simple_reflections()) == 3


def test_affine_reflection_gl2(W_gl2):
    s0 = W_gl2.simple_reflections()[0]
    assert s0.translation == (1, -1)
    assert s0.finite_part == (1, 0)


def test_inverse(W_gsp4):
    x = W_gsp4.element([2, 1, 0, -1], [1, 0, 3, 2])
    assert W_gsp4.multiply(x, W_gsp4.invert(x)) == W_gsp4.identity
    assert W_gsp4.length(W_gsp4.invert(x)) == W_gsp4.length(x)


@pytest.mark.parametrize("lam", [(1, 0, 0), (2, 1, 0), (3, 3, -1), (1, 1, 1)])
def test_translation_length_is_rho_pairing(W_gl3, gl3, lam):
    assert W_gl3.length(W_gl3.translation(lam)) == rho_pairing_twice(lam, gl3)


def _random_dominant(rng, rd, top=3):
    """Dominant coweight with entries in [0, top]."""
    if rd.kind == "GL":
        return tuple(sorted((rng.randint(0, top) for _ in range(rd.d)), reverse=True))
    c = rng.randint(0, top)
    half = sorted((rng.randint((c + 1) // 2, c) for _ in range(rd.d)), reverse=True)
    return tuple(half) + tuple(c - x for x in reversed(half))


@pytest.mark.parametrize("kind,d", [("GL", 2), ("GL", 3), ("GL", 4), ("GSp", 2), ("GSp", 3)])
def test_translation_length_on_random_dominant_coweights(kind, d):
    W = get_group(kind, d)
    rng = random.Random(7 * d + len(kind))
    for _ in range(100):
        lam = _random_dominant(rng, W.rd)
        assert is_dominant(lam, W.rd)
        assert W.length(W.translation(lam)) == rho_pairing_twice(lam, W.rd)


def test_translation_length_antidominant(W_gl2):
    assert W_gl2.length(W_gl2.translation((0, 1))) == 1
    assert W_gl2.length(W_gl2.translation((0, 3))) == 3


def test_omega_generator(W_gl2, W_gl3, W_gsp4):
    for W in (W_gl2, W_gl3, W_gsp4):
        omega = W.omega_generator()
        assert W.length(omega) == 0
        assert W.omega_index(omega) == 1
        assert W.omega_index(W.omega_power(-2)) == -2
        assert W.multiply(W.omega_power(3), W.omega_power(-3)) == W.identity


def test_reduced_word_reconstructs_element(W_gl3, W_gsp4):
    for W, mu in ((W_gl3, (1, 0, 0)), (W_gsp4, (1, 1, 0, 0))):
        for x in W.admissible_set(mu):
            word, omega = W.reduced_word(x)
            assert len(word) == W.length(x)
            assert W.length(omega) == 0
            assert W.element_from_word(word, W.omega_index(omega)) == x


def test_element_from_word_rejects_bad_index(W_gl2):
    with pytest.raises(InvalidInputError):
        W_gl2.element_from_word([0, 5], 0)


@pytest.mark.parametrize("kind,d,mu,size", [
    ("GL", 2, (1, 0), 3),
    ("GL", 3, (1, 0, 0), 7),
    ("GL", 3, (1, 1, 0), 7),
    ("GSp", 2, (1, 1, 0, 0), 13),
    ("GL", 4, (1, 1, 0, 0), 33),
])
def test_admissible_set_sizes(kind, d, mu, size):
    assert len(get_group(kind, d).admissible_set(mu)) == size


def test_admissible_set_rejects_non_dominant(W_gl2):
    with pytest.raises(InvalidInputError):
        W_gl2.admissible_set((0, 1))


def _subword_products(W, x):
    """Products of all subwords of a reduced word of x, with x's Omega-component."""
    word, omega = W.reduced_word(x)
    k = W.omega_index(omega)
    return {
        W.element_from_word([word[i] for i in positions], k)
        for size in range(len(word) + 1)
        for positions in combinations(range(len(word)), size)
    }


@pytest.mark.parametrize("kind,d,max_length,omegas", [
    ("GL", 2, 3, (0, 1)),
    ("GL", 3, 3, (0, 1)),
    ("GSp", 2, 3, (0,)),
])
def test_bruhat_order_matches_subword_oracle(short_elements, kind, d, max_length, omegas):
    W = get_group(kind, d)
    elements = short_elements(W, max_length, omegas)
    for x in elements:
        below = _subword_products(W, x)
        for y in elements:
            assert W.bruhat_leq(y, x) == (y in below)


def test_bruhat_order_needs_same_omega_component(W_gl2):
    assert not W_gl2.bruhat_leq(W_gl2.identity, W_gl2.translation((1, 0)))
    assert W_gl2.bruhat_leq(W_gl2.omega_generator(), W_gl2.translation((1, 0)))


def test_double_coset_size(W_gl2, W_gl3):
    assert len(W_gl2.double_coset((1, 0))) == 4
    assert len(W_gl3.double_coset((1, 0, 0))) == 18
    assert len(W_gl3.double_coset((1, 1, 1))) == 6


def test_candidate_set(W_gl2, W_gsp4):
    assert W_gl2.candidate_set(0, 1, r=1) == W_gl2.admissible_set((1, 0))
    assert len(W_gl2.candidate_set(0, 1)) == 5
    assert W_gsp4.candidate_set(0, 1) == W_gsp4.admissible_set((1, 1, 0, 0))


def test_datum_mismatch(W_gl2, W_gl3):
    with pytest.raises(DatumMismatchError):
        W_gl3.multiply(W_gl2.identity, W_gl3.identity)


def test_describe(W_gl2):
    body = W_gl2.describe(W_gl2.translation((1, 0)))
    assert body["length"] == 1
    assert body["omega"] == 1
    assert body["translation"] == [1, 0]
