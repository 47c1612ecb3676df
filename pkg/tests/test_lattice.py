"""Exact lattice algebra: frozen examples plus randomized structural
properties.  Oracles: gcd-of-minors for Smith invariants, explicit
kernels for invariants, and transpose duality for coinvariants."""

import doctest
import random
from math import gcd

import pytest

import rk.lattice as lattice
from rk.lattice import (
    FgAbelianGroup,
    IntegerMatrix,
    LatticeAction,
    coinvariants,
    invariants_saturated,
    is_saturated,
    kernel_basis,
    mat,
    mat_det,
    mat_identity,
    mat_mul,
    mat_transpose,
    mat_vec,
    smith_normal_form,
    solve_integer,
    trivial_action,
)


def test_module_doctests():
    failures, _ = doctest.testmod(lattice)
    assert failures == 0


# ---------------------------------------------------------------------------
# Smith normal form

def test_snf_identity():
    U, D, V = smith_normal_form(IntegerMatrix.identity(2))
    assert D.diagonal() == (1, 1)


def test_snf_gcd_oracle():
    # d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    a = IntegerMatrix.from_rows([[2, 4], [6, 8]])
    _, D, _ = smith_normal_form(a)
    entries = [2, 4, 6, 8]
    d1 = 0
    for x in entries:
        d1 = gcd(d1, x)
    minor = abs(2 * 8 - 4 * 6)
    assert D.diagonal() == (d1, minor // d1) == (2, 4)


def test_snf_zero_matrix():
    a = IntegerMatrix.from_rows([[0, 0], [0, 0]])
    _, D, _ = smith_normal_form(a)
    assert D.diagonal() == (0, 0)


@pytest.mark.parametrize("seed", range(40))
def test_snf_random_properties(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 5)
    n = rng.randint(1, 5)
    a = IntegerMatrix.from_rows(
        [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
    U, D, V = smith_normal_form(a)
    assert (U * a * V).entries == D.entries
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    diag = [d for d in D.diagonal()]
    for i in range(len(diag) - 1):
        if diag[i]:
            assert diag[i + 1] % diag[i] == 0
        else:
            assert diag[i + 1] == 0
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D.entries[i][j] == 0


def test_kernel_and_solve():
    a = mat([[1, 2, 3], [2, 4, 6]])
    basis = kernel_basis(a)
    assert len(basis) == 2
    for v in basis:
        assert mat_vec(a, v) == (0, 0)
    assert is_saturated(basis, 3)
    sol = solve_integer(mat([[2, 0], [0, 3]]), (4, 9))
    assert sol == (2, 3)
    assert solve_integer(mat([[2]]), (3,)) is None


# ---------------------------------------------------------------------------
# finitely generated abelian groups

def test_fga_cartan_a_series():
    # cokernel of the Cartan matrix of the A_{n-1} series is Z/n
    for n in (2, 3, 4, 5):
        rank = n - 1
        cartan_cols = [tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                             for i in range(rank)) for j in range(rank)]
        g = FgAbelianGroup.from_presentation(rank, cartan_cols)
        assert g.free_rank == 0
        assert g.torsion == (n,)


def test_fga_elements_and_section():
    g = FgAbelianGroup.from_presentation(2, [(2, 0), (0, 3)])
    assert (g.free_rank, g.torsion) == (0, (6,))
    e = g.element_from_ambient((1, 1))
    back = g.section(e)
    assert g.element_from_ambient(back) == e
    z = g.add(e, g.neg(e))
    assert z.is_zero()


def test_fga_box_round_trip():
    g = FgAbelianGroup.from_presentation(3, [(1, -1, 0)])
    for e in g.elements_in_box(2):
        assert g.element_from_ambient(g.section(e)) == e


# ---------------------------------------------------------------------------
# invariants / coinvariants

SWAP = mat([[0, 1], [1, 0]])
ROT3 = mat([[0, -1], [1, -1]])


def test_coinvariants_trivial():
    g = coinvariants(2, trivial_action(2))
    assert g.free_rank == 2 and g.torsion == ()


def test_coinvariants_swap():
    g = coinvariants(2, LatticeAction((SWAP,)))
    assert g.free_rank == 1 and g.torsion == ()


def test_coinvariants_with_cartan_relations():
    # rank-(n-1) lattice mod the Cartan relations, trivial Galois
    g = coinvariants(2, trivial_action(2),
                     extra_relations=[(2, -1), (-1, 2)])
    assert g.free_rank == 0 and g.torsion == (3,)


def test_invariants_trivial_and_swap():
    assert invariants_saturated(3, trivial_action(3)) == tuple(mat_identity(3))
    basis = invariants_saturated(2, LatticeAction((SWAP,)))
    assert basis in (((1, 1),), ((-1, -1),))


def test_invariants_rotation_oracle():
    # order-3 rotation on the hexagonal lattice has no fixed vectors;
    # oracle: the kernel of (g - 1) computed directly
    rows = [(-1, -1), (1, -2)]
    assert kernel_basis(mat(rows)) == ()
    assert invariants_saturated(2, LatticeAction((ROT3,))) == ()


def _random_finite_action(rng, rank):
    # signed permutation matrices always generate finite groups
    gens = []
    for _ in range(rng.randint(1, 2)):
        perm = list(range(rank))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in range(rank)]
        gens.append(mat([[signs[i] if perm[j] == i else 0
                          for j in range(rank)] for i in range(rank)]))
    return LatticeAction(tuple(gens))


@pytest.mark.parametrize("seed", range(200))
def test_coinvariants_invariants_duality(seed):
    rng = random.Random(1000 + seed)
    rank = rng.randint(1, 6)
    action = _random_finite_action(rng, rank)
    co = coinvariants(rank, action)
    inv = invariants_saturated(rank, action.dual())
    assert co.free_rank == len(inv)


def test_invariants_output_saturated():
    rng = random.Random(7)
    for _ in range(50):
        rank = rng.randint(1, 5)
        action = _random_finite_action(rng, rank)
        basis = invariants_saturated(rank, action)
        assert is_saturated(basis, rank)


def test_lattice_action_rejects_infinite():
    with pytest.raises(ValueError):
        LatticeAction((mat([[1, 1], [0, 1]]),), cap=100).elements()


def test_lattice_action_rejects_nonunimodular():
    with pytest.raises(ValueError):
        LatticeAction((mat([[2]]),))
