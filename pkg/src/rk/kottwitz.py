"""The Kottwitz set of a quasi-split group over a non-archimedean field,
modeled by its complete invariants.

An element is a pair (standard Levi L, basic class kappa_L), kappa_L a
character of the Galois-fixed center of the dual Levi, subject to the
open-facet condition: the Newton point alpha_L(kappa_L) must pair
strictly positively with every simple root outside L.  Wall cases are
hard rejections carrying the facet actually hit; re-encode the element
on its true stratum instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Tuple

from .lattice import FgaElement, map_between
from .rootdata import ReductiveGroup


class WallRejection(ValueError):
    """Newton point missed the open facet of the requested stratum."""

    def __init__(self, levi, newton, zero_walls, negative_walls):
        self.levi = frozenset(levi)
        self.newton = newton
        self.zero_walls = tuple(zero_walls)
        self.negative_walls = tuple(negative_walls)
        if negative_walls:
            detail = "negative pairing on simple positions %s" % (
                sorted(negative_walls),)
        else:
            detail = ("wall contact on simple positions %s; the element lives "
                      "on the stratum of Levi %s" % (
                          sorted(zero_walls),
                          sorted(set(levi) | set(zero_walls))))
        super().__init__(detail)


@dataclass(frozen=True)
class BElement:
    """A Kottwitz-set element by its complete invariants."""

    levi: FrozenSet[int]
    kappa: FgaElement

    def is_basic(self, group: ReductiveGroup) -> bool:
        return self.levi == group.full_subset()


def newton(group: ReductiveGroup, b: BElement) -> Tuple[Fraction, ...]:
    """The Newton point: alpha_L applied to the rational restriction of
    kappa (torsion contributes zero)."""
    return group.levi_context(b.levi).newton_point(b.kappa)


def kappa_push(group: ReductiveGroup, b: BElement) -> FgaElement:
    """Push kappa along X*(Z(L^)^Gamma) -> X*(Z(G^)^Gamma)."""
    src = group.levi_context(b.levi).dual_center_characters
    dst = group.levi_context(group.full_subset()).dual_center_characters
    return map_between(src, dst, b.kappa)


def classify(group: ReductiveGroup, b: BElement) -> FrozenSet[int]:
    """The unique parabolic stratum containing b; always equals b.levi for
    a well-formed element (asserted)."""
    nu = newton(group, b)
    if not group.dominant(nu):
        raise ValueError("inconsistent element: Newton point not dominant")
    stratum = group.facet_levi(nu)
    if stratum != b.levi:
        raise ValueError("inconsistent element: Newton stratum %s != levi %s"
                         % (sorted(stratum), sorted(b.levi)))
    return stratum


def basic_plus_lift(group: ReductiveGroup, levi, kappa: FgaElement) -> BElement:
    """Accept (levi, kappa) iff the Newton point lies in the open facet of
    the corresponding parabolic; otherwise raise WallRejection with the
    facet actually hit."""
    levi = frozenset(levi)
    ctx = group.levi_context(levi)
    nu = ctx.newton_point(kappa)
    zero, negative = [], []
    for pos in range(len(group.datum.simple_indices)):
        if pos in levi:
            continue
        p = sum(a * x for a, x in zip(group.datum.simple_roots[pos], nu))
        if p == 0:
            zero.append(pos)
        elif p < 0:
            negative.append(pos)
    if zero or negative:
        raise WallRejection(levi, nu, zero, negative)
    return BElement(levi, kappa)


def encode(group: ReductiveGroup, b: BElement) -> dict:
    """Stable JSON encoding: {levi: sorted simple positions, kappa: ...}."""
    return {
        "levi": sorted(b.levi),
        "kappa": {"free": list(b.kappa.free), "torsion": list(b.kappa.torsion)},
    }


def decode(group: ReductiveGroup, data: dict) -> BElement:
    levi = frozenset(int(i) for i in data["levi"])
    q = group.levi_context(levi).dual_center_characters
    kappa = q.element([int(x) for x in data["kappa"]["free"]],
                      [int(x) for x in data["kappa"]["torsion"]])
    b = BElement(levi, kappa)
    classify(group, b)
    return b
