import random

import pytest

from equipart.group_algebra import (
    CayleyTableError,
    Character,
    GroupRingElement,
    GroupTable,
    InconsistentCharacter,
    augment,
    build_cyclic,
    build_d8,
    character_from_generator_signs,
    group_from_cayley_text,
    ring_element,
    ring_mul,
    trivial_character,
)


def test_d8_order_and_relations():
    d8 = build_d8()
    assert d8.order == 8
    a, b, g = d8.generator("alpha"), d8.generator("beta"), d8.generator("gamma")
    e = d8.identity
    assert d8.product(a, a) == e
    assert d8.product(b, b) == e
    assert d8.product(g, g) == e
    assert d8.product(a, b) == d8.product(b, a)
    assert d8.product(a, g) == d8.product(g, b)
    assert d8.product(b, g) == d8.product(g, a)


def test_d8_structure_counts():
    d8 = build_d8()
    orders = [d8.element_order(x) for x in d8.elements()]
    assert len(orders) == 8
    assert orders.count(4) == 2
    assert orders.count(2) == 5
    assert orders.count(1) == 1


def test_d8_canonical_words():
    d8 = build_d8()
    assert d8.element_words == (
        "e", "alpha", "beta", "alpha*beta",
        "gamma", "alpha*gamma", "beta*gamma", "alpha*beta*gamma")
    for i, w in enumerate(d8.element_words):
        assert d8.index_of_word(w) == i


def test_group_table_rejects_non_groups():
    # Not associative / no identity.
    with pytest.raises(ValueError):
        GroupTable([[0, 1], [0, 1]], {"t": 1})
    # Generators that do not generate.
    z4 = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    with pytest.raises(ValueError, match="generate"):
        GroupTable(z4, {"half": 2})


def test_ring_mul_involution_cancellations():
    d8 = build_d8()
    one_plus_b = ring_element(d8, {"e": 1, "beta": 1})
    one_minus_b = ring_element(d8, {"e": 1, "beta": -1})
    one_plus_g = ring_element(d8, {"e": 1, "gamma": 1})
    one_minus_g = ring_element(d8, {"e": 1, "gamma": -1})
    assert ring_mul(one_plus_b, one_minus_b, d8).is_zero()
    assert ring_mul(one_minus_g, one_plus_g, d8).is_zero()
    assert ring_mul(one_plus_b, one_plus_b, d8) == 2 * one_plus_b


def _random_element(rng, group):
    support = rng.sample(range(group.order), rng.randint(0, group.order))
    return GroupRingElement(group, {i: rng.randint(-3, 3) for i in support})


def test_ring_axioms_on_random_elements():
    d8 = build_d8()
    rng = random.Random(20260809)
    for _ in range(50):
        a = _random_element(rng, d8)
        b = _random_element(rng, d8)
        c = _random_element(rng, d8)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
    one = GroupRingElement.one(d8)
    x = _random_element(rng, d8)
    assert one * x == x and x * one == x


def test_character_sphere_orientation():
    d8 = build_d8()
    chi = character_from_generator_signs(d8, {"alpha": 1, "beta": 1, "gamma": -1})
    assert chi.sign_of_word("gamma") == -1
    assert chi.sign_of_word("alpha*gamma") == -1
    assert chi.sign_of_word("alpha*beta") == 1


def test_character_product_orientation():
    d8 = build_d8()
    chi = character_from_generator_signs(d8, {"alpha": -1, "beta": -1, "gamma": 1})
    assert chi.sign_of_word("alpha") == -1
    assert chi.sign_of_word("alpha*beta") == 1
    assert chi.sign_of_word("alpha*beta*gamma") == 1


def test_character_trivial_and_inconsistent():
    d8 = build_d8()
    triv = character_from_generator_signs(d8, {"alpha": 1, "beta": 1, "gamma": 1})
    assert triv.values == (1,) * 8
    assert triv.values == trivial_character(d8).values
    # alpha*gamma = gamma*beta forces sign(alpha) = sign(beta).
    with pytest.raises(InconsistentCharacter):
        character_from_generator_signs(d8, {"alpha": -1, "beta": 1, "gamma": 1})
    with pytest.raises(InconsistentCharacter):
        character_from_generator_signs(d8, {"alpha": 1, "beta": 1})
    with pytest.raises(InconsistentCharacter):
        character_from_generator_signs(d8, {"alpha": 2, "beta": 1, "gamma": 1})


def test_character_multiplicativity_checked_on_construction():
    d8 = build_d8()
    values = [1] * 8
    values[d8.generator("alpha")] = -1
    with pytest.raises(InconsistentCharacter):
        Character(d8, tuple(values))


def test_augment_examples():
    d8 = build_d8()
    chi = character_from_generator_signs(d8, {"alpha": 1, "beta": 1, "gamma": -1})
    assert augment(ring_element(d8, {"e": 1, "beta": 1}), chi) == 2
    four = ring_element(d8, {"e": 1, "alpha": 1, "gamma": -1, "alpha*gamma": -1})
    assert augment(four, chi) == 4
    assert augment(ring_element(d8, {"e": 1, "gamma": 1}), chi) == 0


def test_augment_is_ring_homomorphism():
    d8 = build_d8()
    chi = character_from_generator_signs(d8, {"alpha": -1, "beta": -1, "gamma": 1})
    rng = random.Random(7)
    for _ in range(30):
        a = _random_element(rng, d8)
        b = _random_element(rng, d8)
        assert augment(a * b, chi) == augment(a, chi) * augment(b, chi)
        assert augment(a + b, chi) == augment(a, chi) + augment(b, chi)


def test_cyclic_group():
    z2 = build_cyclic(2)
    assert z2.order == 2
    assert z2.element_words == ("e", "omega")
    w = z2.generator("omega")
    assert z2.product(w, w) == z2.identity
    x = ring_element(z2, {"e": 1, "omega": -1})
    y = ring_element(z2, {"e": 2, "omega": 2})
    assert (x * y).is_zero()


CAYLEY_Z2 = """
order 2
0 1
1 0
generators omega=1
"""


def test_cayley_parse_round_trip():
    parsed = group_from_cayley_text(CAYLEY_Z2)
    assert parsed == build_cyclic(2)


def test_cayley_parse_d8_table():
    d8 = build_d8()
    rows = "\n".join(" ".join(str(x) for x in row) for row in d8.mul)
    text = f"order 8\n{rows}\ngenerators alpha=1 beta=2 gamma=4\n"
    assert group_from_cayley_text(text) == d8


@pytest.mark.parametrize("text,fragment", [
    ("", "line 1"),
    ("size 2\n0 1\n1 0\ngenerators omega=1", "expected 'order N'"),
    ("order 2\n0 1\n1\ngenerators omega=1", "expected 2 entries"),
    ("order 2\n0 1\n1 5\ngenerators omega=1", "column 2"),
    ("order 2\n0 1\n1 x\ngenerators omega=1", "not an integer"),
    ("order 2\n0 1\n1 0\ngenerators", "generators"),
    ("order 2\n0 1\n1 0\ngenerators omega=9", "out of range"),
    ("order 2\n0 1\n1 0\ngenerators omega=1 omega=0", "duplicate"),
    ("order 2\n0 1\n1 0\ngenerators omega=1\nextra", "trailing"),
    ("order 2\n0 1\n1 0", "missing 'generators'"),
])
def test_cayley_parse_diagnostics(text, fragment):
    with pytest.raises(CayleyTableError, match=fragment):
        group_from_cayley_text(text)


def test_group_ring_element_canonical_form():
    d8 = build_d8()
    x = GroupRingElement(d8, {0: 1, 1: 0, 2: -1})
    assert set(x.coeffs) == {0, 2}
    assert (x - x).coeffs == {}
    assert str(GroupRingElement.zero(d8)) == "0"
    assert x.words() == {"e": 1, "beta": -1}
