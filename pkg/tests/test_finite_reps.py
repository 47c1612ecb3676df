"""Finite-group module machinery: character tables through both the
abelian and the modular route, cocycle trivialization, and the squared
dimension identity."""

from fractions import Fraction

import pytest

from rk.cyclotomic import Cyclo
from rk.finite_reps import (
    CocycleError,
    FiniteGroup,
    _abelian_characters,
    _dixon_characters,
    character_table,
    simple_modules,
    trivialize_cocycle,
    validate_cocycle,
)
from rk.lattice import mat


def perm_mat(p):
    n = len(p)
    return tuple(tuple(1 if p[j] == i else 0 for j in range(n))
                 for i in range(n))


S3 = FiniteGroup.from_matrices([perm_mat((1, 0, 2)), perm_mat((0, 2, 1))])
S4 = FiniteGroup.from_matrices([perm_mat((1, 0, 2, 3)),
                                perm_mat((0, 2, 1, 3)),
                                perm_mat((0, 1, 3, 2))])
Z2 = FiniteGroup.from_matrices([mat([[-1]])])
Z4 = FiniteGroup.from_matrices([mat([[0, -1], [1, 0]])])
Z6 = FiniteGroup.from_matrices([perm_mat((1, 2, 3, 4, 5, 0))])
D4 = FiniteGroup.from_matrices([mat([[0, -1], [1, 0]]),
                                mat([[1, 0], [0, -1]])])


def test_z2_modules():
    mods = simple_modules(Z2)
    assert sorted(m.dim for m in mods) == [1, 1]
    signs = {m.chi(mat([[-1]])).as_rational() for m in mods}
    assert signs == {Fraction(1), Fraction(-1)}


def test_s3_classical_dims():
    assert sorted(m.dim for m in simple_modules(S3)) == [1, 1, 2]


def test_s3_character_values_frozen():
    two = [m for m in simple_modules(S3) if m.dim == 2][0]
    values = sorted(v.as_rational() for _e, v in two.character)
    # 2 at the identity, 0 at the three transpositions, -1 at the two
    # three-cycles
    assert values == [-1, -1, 0, 0, 0, 2]


def test_s4_dims():
    assert sorted(m.dim for m in simple_modules(S4)) == [1, 1, 2, 3, 3]


def test_d4_dims():
    assert sorted(m.dim for m in simple_modules(D4)) == [1, 1, 1, 1, 2]


@pytest.mark.parametrize("group", [Z2, Z4, Z6, S3, S4, D4])
def test_sum_of_squares(group):
    mods = simple_modules(group)
    assert sum(m.dim ** 2 for m in mods) == len(group)
    assert len({m.label() for m in mods}) == len(mods)


def test_orthogonality_rows():
    # first orthogonality over the group algebra, exactly
    for group in (S3, D4):
        mods = simple_modules(group)
        n = len(group)
        for a in mods:
            for b in mods:
                total = Cyclo.zero()
                for g in group.elements:
                    total = total + a.chi(g) * b.chi(group.inv(g))
                expected = n if a.label() == b.label() else 0
                assert total == Cyclo.from_rational(expected)


def test_abelian_and_modular_routes_agree():
    # run the nonabelian machinery on an abelian group and compare
    fast = {frozenset((repr(k), repr(v)) for k, v in t.items())
            for t in _abelian_characters(Z4)}
    slow = {frozenset((repr(k), repr(v)) for k, v in t.items())
            for t in _dixon_characters(Z4)}
    assert fast == slow


def test_cocycle_trivialization_cyclic():
    # any valid 2-cocycle on a cyclic group trivializes; build one from a
    # hidden coboundary and check the solver rediscovers one
    gen = mat([[0, -1], [1, 0]])
    powers = [Z4.identity]
    for _ in range(3):
        powers.append(Z4.mul(powers[-1], gen))
    beta = {powers[k]: Fraction(k, 8) for k in range(4)}
    cocycle = {}
    for a in Z4.elements:
        for b in Z4.elements:
            cocycle[(a, b)] = (beta[a] + beta[b] - beta[Z4.mul(a, b)]) % 1
    validate_cocycle(Z4, cocycle)
    found = trivialize_cocycle(Z4, cocycle)
    for a in Z4.elements:
        for b in Z4.elements:
            assert (found[a] + found[b] - found[Z4.mul(a, b)]) % 1 == \
                cocycle[(a, b)]
    mods = simple_modules(Z4, cocycle)
    assert [m.dim for m in mods] == [1, 1, 1, 1]


def test_cocycle_rejects_non_cocycle():
    bad = {(a, b): Fraction(1, 3) for a in Z2.elements for b in Z2.elements}
    with pytest.raises(CocycleError):
        validate_cocycle(Z2, bad)


def test_twisted_characters_scale():
    gen = mat([[0, -1], [1, 0]])
    powers = [Z4.identity]
    for _ in range(3):
        powers.append(Z4.mul(powers[-1], gen))
    beta = {powers[k]: Fraction(k, 4) for k in range(4)}
    cocycle = {(a, b): (beta[a] + beta[b] - beta[Z4.mul(a, b)]) % 1
               for a in Z4.elements for b in Z4.elements}
    plain = {tuple(sorted((repr(e), v.pretty()) for e, v in m.character))
             for m in simple_modules(Z4)}
    twisted = simple_modules(Z4, cocycle)
    assert sum(m.dim ** 2 for m in twisted) == 4
    # a trivialization is unique up to a character, so the twisted set is a
    # (possibly permuted) rescaling of the plain one
    assert len(twisted) == 4


def test_character_table_deterministic():
    t1 = character_table(S3)
    t2 = character_table(S3)
    assert [sorted(repr(v) for v in t.values()) for t in t1] == \
        [sorted(repr(v) for v in t.values()) for t in t2]


def test_conjugacy_classes_s3():
    classes = S3.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert classes[0][0] == S3.identity
