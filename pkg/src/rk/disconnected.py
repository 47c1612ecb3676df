"""Algebraic representation theory of disconnected reductive groups.

A disconnected group is modeled by a based root datum for its identity
component together with a finite component group acting faithfully on
the character lattice while preserving the base, plus an optional
2-cocycle (root-of-unity exponents) twisting the stabilizer algebras.
Irreducible representations are classified by pairs (lambda, E): a
dominant weight up to the component action and a simple module of the
twisted stabilizer algebra.  Characters are evaluated exactly, with
values in cyclotomic fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Dict, Optional, Sequence, Tuple

from .cyclotomic import Cyclo
from .finite_reps import FiniteGroup, Module, simple_modules
from .lattice import (
    Matrix,
    Vector,
    dot,
    in_span,
    mat_identity,
    mat_mul,
    mat_vec,
    vadd,
    vsub,
)
from .rootdata import BasedRootDatum, DatumError, WeylGroup, reflection_matrix


class UnsupportedTraceError(NotImplementedError):
    """Raised instead of ever returning a wrong number: the requested
    twisted trace needs explicit data that was not supplied."""


@dataclass(frozen=True)
class HighestWeightPair:
    """(dominant weight, simple module of the twisted stabilizer algebra)."""

    weight: Vector
    module: Module

    def label(self) -> Tuple:
        return (self.weight, self.module.label())


class DisconnectedGroupDatum:
    """Identity-component datum plus a base-preserving component action."""

    def __init__(self, identity_component: BasedRootDatum,
                 component_generators: Sequence[Matrix] = (),
                 cocycle: Optional[Dict] = None, name: str = ""):
        self.component = identity_component
        self.name = name
        n = identity_component.rank
        gens = tuple(component_generators) or ()
        self.declared_generators = gens
        for g in gens:
            if len(g) != n or any(len(r) != n for r in g):
                raise DatumError("component matrix of wrong size")
        self.pi0 = FiniteGroup.from_matrices(gens + (mat_identity(n),))
        simple_set = set(identity_component.simple_indices)
        for g in self.pi0.elements:
            for r in identity_component.roots:
                if not identity_component.is_root(mat_vec(g, r)):
                    raise DatumError("component action does not permute roots")
            for i in identity_component.simple_indices:
                img = mat_vec(g, identity_component.roots[i])
                if identity_component.root_index(img) not in simple_set:
                    raise DatumError("component action does not preserve the base")
        self.cocycle = dict(cocycle) if cocycle else {}
        if self.cocycle:
            from .finite_reps import validate_cocycle
            validate_cocycle(self.pi0, self.cocycle)

    # -- Weyl structure -----------------------------------------------------

    def connected_weyl(self) -> WeylGroup:
        d = self.component
        gens = [reflection_matrix(d.roots[i], d.coroots[i])
                for i in d.simple_indices]
        return WeylGroup(gens, d.rank)

    def full_weyl(self) -> WeylGroup:
        d = self.component
        gens = [reflection_matrix(d.roots[i], d.coroots[i])
                for i in d.simple_indices]
        gens += [g for g in self.pi0.elements if g != self.pi0.identity]
        return WeylGroup(gens, d.rank)

    # -- weights -------------------------------------------------------------

    def is_dominant(self, weight: Sequence[int]) -> bool:
        d = self.component
        return all(dot(weight, d.coroots[i]) >= 0 for i in d.simple_indices)

    def orbit_of_weight(self, weight: Vector) -> Tuple[Vector, ...]:
        return tuple(sorted({mat_vec(g, weight) for g in self.pi0.elements}))

    def canonical_weight(self, weight: Vector) -> Vector:
        """Lexicographically greatest member of the component orbit (all
        members are dominant together, since the action preserves the base)."""
        return max(self.orbit_of_weight(weight))

    def restricted_cocycle(self, subgroup: FiniteGroup) -> Dict:
        if not self.cocycle:
            return {}
        keep = set(subgroup.elements)
        return {(a, b): v for (a, b), v in self.cocycle.items()
                if a in keep and b in keep}


def pi0_weyl_split(datum: DisconnectedGroupDatum):
    """(connected Weyl group, component image, verification report).

    Certifies the semidirect decomposition of the full Weyl group: trivial
    intersection and generation.
    """
    wc = datum.connected_weyl()
    pi0_mats = tuple(datum.pi0.elements)
    wf = datum.full_weyl()
    inter = set(wc.elements) & set(pi0_mats)
    report = {
        "connected_order": len(wc),
        "component_order": len(pi0_mats),
        "full_order": len(wf),
        "trivial_intersection": inter == {wc.identity},
        "generates": len(wf) == len(wc) * len(pi0_mats),
    }
    if not (report["trivial_intersection"] and report["generates"]):
        raise DatumError("component action is inconsistent with a semidirect "
                         "Weyl decomposition: %r" % (report,))
    return wc, pi0_mats, report


def stabilizer_A_lambda(datum: DisconnectedGroupDatum,
                        weight: Sequence[int]) -> FiniteGroup:
    """The stabilizer of a dominant weight inside the component group."""
    if not datum.is_dominant(weight):
        raise ValueError("stabilizer_A_lambda needs a dominant weight")
    w = tuple(weight)
    fixed = [g for g in datum.pi0.elements if mat_vec(g, w) == w]
    return datum.pi0.subgroup(fixed)


# ---------------------------------------------------------------------------
# weight multiplicities (Freudenthal recursion)

class WeightMultiplicityTable:
    """Exact weight multiplicities of the irreducible highest-weight module."""

    def __init__(self, weight: Vector, table: Dict[Vector, int], dimension: int):
        self.highest = weight
        self.table = dict(table)
        self.dimension = dimension

    def multiplicity(self, mu: Sequence[int]) -> int:
        return self.table.get(tuple(mu), 0)

    def items(self):
        return sorted(self.table.items())


def _invariant_form(datum: BasedRootDatum):
    """Weyl-invariant symmetric form on the character side: the Gram
    matrix of coroot evaluations, (u, v) = sum over coroots of
    <u, beta^vee><v, beta^vee>."""
    n = datum.rank
    b = [[Fraction(0)] * n for _ in range(n)]
    for c in datum.coroots:
        for i in range(n):
            for j in range(n):
                b[i][j] += Fraction(c[i] * c[j])
    return tuple(tuple(row) for row in b)


def _form_value(bform, u, v) -> Fraction:
    return sum(bform[i][j] * u[i] * v[j]
               for i in range(len(u)) for j in range(len(v)))


def weyl_dimension(datum: BasedRootDatum, weight: Sequence[int]) -> int:
    """Product formula for the dimension of the highest-weight module."""
    pos = [datum.roots[i] for i in datum.positive_root_indices()]
    if not pos:
        return 1
    bform = _invariant_form(datum)
    rho = tuple(sum(Fraction(r[i]) for r in pos) / 2 for i in range(datum.rank))
    num = Fraction(1)
    den = Fraction(1)
    lam = tuple(Fraction(x) for x in weight)
    for a in pos:
        num *= _form_value(bform, vadd(lam, rho), a)
        den *= _form_value(bform, rho, a)
    d = num / den
    if d.denominator != 1 or d <= 0:
        raise AssertionError("Weyl dimension came out non-integral")
    return int(d)


def weight_multiplicities(datum: BasedRootDatum,
                          weight: Sequence[int]) -> WeightMultiplicityTable:
    """Freudenthal recursion; the total is checked against the Weyl
    dimension formula on every call."""
    lam = tuple(int(x) for x in weight)
    for i in datum.simple_indices:
        if dot(lam, datum.coroots[i]) < 0:
            raise ValueError("weight_multiplicities needs a dominant weight")
    pos = [datum.roots[i] for i in datum.positive_root_indices()]
    if not pos:
        return WeightMultiplicityTable(lam, {lam: 1}, 1)
    bform = _invariant_form(datum)
    rho = tuple(sum(Fraction(r[i]) for r in pos) / 2
                for i in range(datum.rank))
    simples = list(datum.simple_roots)
    table: Dict[Vector, int] = {lam: 1}
    lam_rho = vadd(tuple(Fraction(x) for x in lam), rho)
    norm_top = _form_value(bform, lam_rho, lam_rho)
    level = [lam]
    while level:
        candidates = set()
        for mu in level:
            for s in simples:
                candidates.add(vsub(mu, s))
        nxt = []
        for mu in sorted(candidates):
            if mu in table:
                continue
            acc = Fraction(0)
            for a in pos:
                j = 1
                while True:
                    up = vadd(mu, tuple(j * x for x in a))
                    m_up = table.get(up)
                    if m_up is None:
                        # either outside the computed cone (multiplicity 0)
                        # or not yet reached; both contribute nothing
                        if not _dominates(lam, up, simples):
                            break
                        m_up = 0
                    if m_up:
                        acc += 2 * m_up * _form_value(bform, up, a)
                    j += 1
                    if j > 4 * (sum(abs(x) for x in lam) + len(pos) + 4):
                        break
            mu_rho = vadd(tuple(Fraction(x) for x in mu), rho)
            denom = norm_top - _form_value(bform, mu_rho, mu_rho)
            if denom == 0:
                m = 0
            else:
                m_frac = acc / denom
                if m_frac.denominator != 1 or m_frac < 0:
                    raise AssertionError("Freudenthal produced a non-integer")
                m = int(m_frac)
            if m > 0:
                table[mu] = m
                nxt.append(mu)
        level = nxt
    dim = sum(table.values())
    expected = weyl_dimension(datum, lam)
    if dim != expected:
        raise AssertionError("weight multiplicity total %d != Weyl dimension %d"
                             % (dim, expected))
    return WeightMultiplicityTable(lam, table, dim)


def _dominates(lam, mu, simples):
    """mu <= lam in the root order (lam - mu a nonneg rational combination
    of the simple roots)."""
    from .lattice import solve_rational
    diff = vsub(lam, mu)
    sol = solve_rational(list(simples), diff)
    return sol is not None and all(c >= 0 for c in sol)


# ---------------------------------------------------------------------------
# classification

def classify_irr(datum: DisconnectedGroupDatum, height_bound: int):
    """Representatives (lambda, E) of the irreducible classes whose weight
    has all coordinates in [0, height_bound].

    The weight representative is the lexicographically greatest member of
    its component orbit; modules come from the (possibly twisted)
    stabilizer algebra.
    """
    if height_bound < 0:
        raise ValueError("height bound must be >= 0")
    n = datum.component.rank
    seen = set()
    out = []
    for coords in iproduct(range(height_bound + 1), repeat=n):
        lam = tuple(coords)
        if not datum.is_dominant(lam):
            continue
        rep = datum.canonical_weight(lam)
        if rep in seen:
            continue
        seen.add(rep)
        a_lam = stabilizer_A_lambda(datum, rep)
        mods = simple_modules(a_lam, datum.restricted_cocycle(a_lam))
        for m in mods:
            out.append(HighestWeightPair(rep, m))
    return sorted(out, key=lambda p: (p.weight, p.label()))


# ---------------------------------------------------------------------------
# character evaluation

def char_eval(datum: DisconnectedGroupDatum, pair: HighestWeightPair,
              torus_functional: Callable[[Vector], object],
              component: Optional[Matrix] = None,
              twist_provider: Optional[Callable] = None):
    """Trace of a semisimple element on the induced irreducible module.

    `torus_functional` evaluates the torus part on a weight (any ring the
    caller likes: Cyclo for exact roots of unity, Fraction for numeric
    specializations).  With `component` None or the identity, only
    identity-component cosets contribute and the value is

        dim(E) * sum over component cosets x of sum_mu m_mu t(x . mu).

    For a nontrivial component the twisted traces on the highest-weight
    module are not computed symbolically; a `twist_provider(weight,
    functional, component)` must supply them, otherwise
    UnsupportedTraceError is raised (never a wrong number).
    """
    lam = pair.weight
    a_lam = stabilizer_A_lambda(datum, lam)
    stab = set(a_lam.elements)
    cosets = _coset_reps(datum.pi0, stab)
    wtab = weight_multiplicities(datum.component, lam)
    if component is None or component == datum.pi0.identity:
        total = None
        for x in cosets:
            for mu, m in wtab.items():
                v = torus_functional(mat_vec(x, mu))
                term = v * m if m != 1 else v
                total = term if total is None else total + term
        if total is None:
            total = Cyclo.zero()
        return total * pair.module.dim if pair.module.dim != 1 else total
    # nontrivial component
    if twist_provider is None:
        raise UnsupportedTraceError(
            "twisted trace along a nontrivial component needs explicit data")
    total = None
    for x in cosets:
        xinv = _group_inv(datum.pi0, x)
        conj = mat_mul(mat_mul(xinv, component), x)
        if conj not in stab:
            continue
        chi_e = pair.module.chi(conj)
        def conj_functional(muvec, _x=x):
            return torus_functional(mat_vec(_x, muvec))
        tw = twist_provider(lam, conj_functional, conj)
        term = chi_e * tw
        total = term if total is None else total + term
    return total if total is not None else Cyclo.zero()


def _coset_reps(group: FiniteGroup, subgroup_elements: set):
    reps = []
    covered = set()
    for g in group.elements:
        if g in covered:
            continue
        reps.append(g)
        covered |= {group.mul(g, h) for h in subgroup_elements}
    return reps


def _group_inv(group: FiniteGroup, g):
    return group.inv(g)


# ---------------------------------------------------------------------------
# descent certificate

def natural_quotient_rep(datum: DisconnectedGroupDatum, pair: HighestWeightPair,
                         kill_lattice_basis: Sequence[Vector]):
    """Certify that the highest-weight module is a character of the identity
    component that kills the given sublattice, and return the descended
    label.  Raises on failure (which signals a caller bug, not bad input).
    """
    lam = pair.weight
    d = datum.component
    bform = _invariant_form(d)
    for i in d.positive_root_indices():
        if _form_value(bform, lam, d.roots[i]) != 0:
            raise AssertionError(
                "descent certificate failed: weight pairs nontrivially with "
                "a root, so the module is not one-dimensional")
    for v in kill_lattice_basis:
        if dot(lam, v) != 0:
            raise AssertionError(
                "descent certificate failed: weight does not kill the "
                "derived-intersection sublattice")
    return {"weight": lam, "module": pair.module.label(), "descends": True}
