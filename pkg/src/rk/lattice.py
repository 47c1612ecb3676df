"""Exact integer-lattice algebra.

Smith normal form with explicit transformation matrices, finitely
generated abelian groups presented as cokernels, and invariants /
coinvariants of finite integer matrix actions.  Everything is computed
with arbitrary-precision integers (or Fractions where a denominator is
unavoidable); no floating point is used anywhere in this package.

>>> U, D, V = smith_normal_form(IntegerMatrix.from_rows([[2, 4], [6, 8]]))
>>> D.diagonal()
(2, 4)
>>> G = FgAbelianGroup.from_presentation(2, [(2, 0), (0, 3)])
>>> (G.free_rank, G.torsion)
(0, (6,))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Tuple

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

#: safety cap for group closures; exceeding it is an input error
DEFAULT_CLOSURE_CAP = 10**6


# ---------------------------------------------------------------------------
# raw tuple-matrix helpers (used pervasively; IntegerMatrix wraps these)

def vec(entries: Iterable) -> tuple:
    return tuple(entries)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dot: length mismatch %d vs %d" % (len(u), len(v)))
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def vscale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_det(a: Matrix) -> int:
    """Fraction-free Bareiss determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_inverse(a: Matrix) -> tuple:
    """Exact inverse over the rationals (rows of Fractions)."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_inverse_int(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = mat_inverse(a)
    out = []
    for row in inv:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            irow.append(int(x))
        out.append(tuple(irow))
    return tuple(out)


def mat_contragredient(a: Matrix) -> Matrix:
    """Transpose-inverse: the induced action on the dual lattice."""
    return mat_transpose(mat_inverse_int(a))


def solve_rational(a_cols: Sequence[Sequence], b: Sequence):
    """Solve sum_j x_j * a_cols[j] = b over Q; None if inconsistent."""
    nrows = len(b)
    ncols = len(a_cols)
    aug = [[Fraction(a_cols[j][i]) for j in range(ncols)] + [Fraction(b[i])]
           for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][c]
        aug[r] = [x / p for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        x[c] = aug[row_idx][ncols]
    return tuple(x)


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    return solve_rational(basis, v) is not None


def span_contains_span(big: Sequence[Sequence], small: Sequence[Sequence]) -> bool:
    return all(in_span(big, v) for v in small)


# ---------------------------------------------------------------------------
# IntegerMatrix

@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix of arbitrary-precision integers."""

    rows: int
    cols: int
    entries: Matrix

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("column count mismatch")
            for x in r:
                if not isinstance(x, int):
                    raise TypeError("entries must be exact integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntegerMatrix":
        m = mat(rows)
        return cls(len(m), len(m[0]) if m else 0, m)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, mat_identity(n))

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        return IntegerMatrix.from_rows(mat_mul(self.entries, other.entries))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(mat_transpose(self.entries))

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return mat_det(self.entries)

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def diagonal(self) -> Vector:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> Tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.cols))


# ---------------------------------------------------------------------------
# Smith normal form

def _snf_raw(a: Matrix):
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(r) for r in a]
    U = [list(r) for r in mat_identity(m)]
    V = [list(r) for r in mat_identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        A[dst] = [x + c * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    for t in range(min(m, n)):
        while True:
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = abs(A[i][j])
                    if x and (best is None or x < best):
                        best = x
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            if A[t][t] < 0:
                negate_row(t)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        add_row(i, t, -q)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        add_col(j, t, -q)
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(A[i][j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if piv is None:
            break

    return mat(A), mat(U), mat(V)


def smith_normal_form(a: IntegerMatrix):
    """U, D, V with U*A*V = D diagonal, d_1 | d_2 | ..., U and V unimodular.

    The factorization is re-verified by exact multiplication on every
    call; a failure would indicate a genuine bug and raises.
    """
    D, U, V = _snf_raw(a.entries)
    Um = IntegerMatrix.from_rows(U)
    Dm = IntegerMatrix.from_rows(D) if D else IntegerMatrix(0, a.cols, ())
    Vm = IntegerMatrix.from_rows(V) if V else IntegerMatrix(a.cols, a.cols, ())
    check = mat_mul(mat_mul(U, a.entries), V) if a.rows and a.cols else D
    if a.rows and a.cols:
        if check != D:
            raise AssertionError("SNF verification failed: U*A*V != D")
        if abs(mat_det(U)) != 1 or abs(mat_det(V)) != 1:
            raise AssertionError("SNF verification failed: transform not unimodular")
        diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
        for i in range(len(diag) - 1):
            if diag[i] != 0 and diag[i + 1] % diag[i] != 0:
                raise AssertionError("SNF verification failed: divisibility chain")
    return Um, Dm, Vm


def kernel_basis(a: Matrix) -> Tuple[Vector, ...]:
    """Basis of the integer kernel of the column action x -> a*x.

    The returned basis is saturated (the quotient by its span is free).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return ()
    if m == 0:
        return tuple(mat_identity(n))
    D, _U, V = _snf_raw(a)
    rank = sum(1 for i in range(min(m, n)) if D[i][i] != 0)
    cols = []
    for j in range(rank, n):
        cols.append(tuple(V[i][j] for i in range(n)))
    return tuple(cols)


def solve_integer(a: Matrix, b: Sequence[int]):
    """One integer solution x of a*x = b, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    D, U, V = _snf_raw(a)
    ub = mat_vec(U, b)
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < min(m, n) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            if i < n:
                y[i] = ub[i] // d
    return mat_vec(V, y) if n else ()


def is_saturated(basis: Sequence[Vector], ambient_rank: int) -> bool:
    """True if the sublattice spanned by `basis` is saturated in Z^rank."""
    if not basis:
        return True
    cols = mat_transpose(mat(basis))  # ambient_rank x k
    D, _, _ = _snf_raw(cols)
    k = len(basis)
    return all(D[i][i] == 1 for i in range(min(k, ambient_rank)))


# ---------------------------------------------------------------------------
# finite matrix-group closure

def closure(generators: Sequence[Matrix], cap: int = DEFAULT_CLOSURE_CAP):
    """Breadth-first closure of a finite matrix group; words come out reduced.

    Returns (elements, words) where `elements` is a deterministically
    ordered list and `words[g]` is one shortest word in generator indices.
    """
    if not generators:
        n = 0
        raise ValueError("closure needs at least the lattice rank; pass identity")
    n = len(generators[0])
    ident = mat_identity(n)
    words = {ident: ()}
    order = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for i, s in enumerate(generators):
                h = mat_mul(g, s)
                if h not in words:
                    words[h] = words[g] + (i,)
                    order.append(h)
                    new.append(h)
                    if len(words) > cap:
                        raise ValueError(
                            "group closure exceeded cap of %d elements" % cap)
        frontier = new
    return order, words


@dataclass(frozen=True)
class LatticeAction:
    """A finite group acting on Z^rank by unimodular matrices."""

    generators: Tuple[Matrix, ...]
    cap: int = DEFAULT_CLOSURE_CAP

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.rank or any(len(r) != self.rank for r in g):
                raise ValueError("action matrices must be square of equal size")
            if abs(mat_det(g)) != 1:
                raise ValueError("action matrices must have determinant +/-1")
        self.elements()  # force finiteness check

    @property
    def rank(self) -> int:
        return len(self.generators[0]) if self.generators else 0

    def elements(self) -> Tuple[Matrix, ...]:
        if not self.generators:
            return ()
        order, _ = closure(self.generators, self.cap)
        return tuple(order)

    def dual(self) -> "LatticeAction":
        """The contragredient action on the dual lattice."""
        return LatticeAction(tuple(mat_contragredient(g) for g in self.generators),
                             self.cap)


def trivial_action(rank: int) -> LatticeAction:
    return LatticeAction((mat_identity(rank),))


# ---------------------------------------------------------------------------
# finitely generated abelian groups

@dataclass(frozen=True)
class FgaElement:
    """Element of an FgAbelianGroup in canonical (free, torsion) coordinates."""

    free: Vector
    torsion: Vector

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.free) and all(x == 0 for x in self.torsion)


class FgAbelianGroup:
    """Z^rank / (column span of a relation matrix).

    Elements are carried in coordinates read off from the Smith normal
    form of the presentation: a free part in Z^free_rank and a torsion
    part reduced modulo the invariant factors d_1 | d_2 | ... (each >= 2).

    >>> G = FgAbelianGroup.from_presentation(2, [(1, -1)])
    >>> G.free_rank, G.torsion
    (1, ())
    >>> G.element_from_ambient((1, 0)).free
    (1,)
    """

    def __init__(self, ambient_rank: int, relation_columns: Sequence[Vector]):
        self.ambient_rank = ambient_rank
        cols = [tuple(c) for c in relation_columns]
        for c in cols:
            if len(c) != ambient_rank:
                raise ValueError("relation column of wrong length")
        if cols:
            pres = mat_transpose(mat(cols))  # ambient_rank x m
        else:
            pres = tuple(() for _ in range(ambient_rank))
        self.presentation = IntegerMatrix(ambient_rank, len(cols), pres)
        if ambient_rank == 0:
            self._U = ()
            self._Uinv = ()
            self._diag = ()
        elif cols:
            D, U, _V = _snf_raw(pres)
            self._U = U
            self._Uinv = mat_inverse_int(U)
            self._diag = tuple(D[i][i] for i in range(min(ambient_rank, len(cols))))
        else:
            self._U = mat_identity(ambient_rank)
            self._Uinv = mat_identity(ambient_rank)
            self._diag = ()
        full = list(self._diag) + [0] * (ambient_rank - len(self._diag))
        self._slot_kind = []  # 'drop' (d=1), 'torsion' (d>=2), 'free' (d=0)
        torsion = []
        for d in full:
            if d == 1:
                self._slot_kind.append("drop")
            elif d == 0:
                self._slot_kind.append("free")
            else:
                self._slot_kind.append("torsion")
                torsion.append(d)
        self.torsion: Vector = tuple(torsion)
        self.free_rank: int = sum(1 for k in self._slot_kind if k == "free")

    @classmethod
    def from_presentation(cls, ambient_rank: int,
                          relation_columns: Sequence[Vector]) -> "FgAbelianGroup":
        return cls(ambient_rank, relation_columns)

    def __repr__(self):
        parts = ["Z"] * self.free_rank + ["Z/%d" % d for d in self.torsion]
        return "FgAbelianGroup(%s)" % (" + ".join(parts) if parts else "0")

    def __eq__(self, other):
        return (isinstance(other, FgAbelianGroup)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion
                and self.presentation == other.presentation)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def element_from_ambient(self, v: Sequence[int]) -> FgaElement:
        if len(v) != self.ambient_rank:
            raise ValueError("ambient vector of wrong length")
        y = mat_vec(self._U, v) if self.ambient_rank else ()
        free = []
        tors = []
        for yi, kind, d in zip(y, self._slot_kind,
                               list(self._diag) + [0] * self.ambient_rank):
            if kind == "free":
                free.append(yi)
            elif kind == "torsion":
                tors.append(yi % d)
        return FgaElement(tuple(free), tuple(tors))

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> FgaElement:
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise ValueError("coordinate counts do not match the group shape")
        tors = tuple(t % d for t, d in zip(torsion, self.torsion))
        return FgaElement(tuple(int(x) for x in free), tors)

    def zero(self) -> FgaElement:
        return FgaElement((0,) * self.free_rank, (0,) * len(self.torsion))

    def section(self, e: FgaElement) -> Vector:
        """An ambient representative of `e` (a set-theoretic section)."""
        y = []
        fi = ti = 0
        for kind in self._slot_kind:
            if kind == "drop":
                y.append(0)
            elif kind == "free":
                y.append(e.free[fi])
                fi += 1
            else:
                y.append(e.torsion[ti])
                ti += 1
        return mat_vec(self._Uinv, y) if self.ambient_rank else ()

    def add(self, a: FgaElement, b: FgaElement) -> FgaElement:
        return FgaElement(vadd(a.free, b.free),
                          tuple((x + y) % d for x, y, d
                                in zip(a.torsion, b.torsion, self.torsion)))

    def neg(self, a: FgaElement) -> FgaElement:
        return FgaElement(vneg(a.free),
                          tuple((-x) % d for x, d in zip(a.torsion, self.torsion)))

    def scale(self, c: int, a: FgaElement) -> FgaElement:
        return FgaElement(vscale(c, a.free),
                          tuple((c * x) % d for x, d in zip(a.torsion, self.torsion)))

    def elements_in_box(self, radius: int):
        """All elements with free coordinates in [-radius, radius] (exhaustive
        over torsion).  Only sensible for small groups; used by tests."""
        free_ranges = [range(-radius, radius + 1)] * self.free_rank
        tor_ranges = [range(d) for d in self.torsion]
        for free in product(*free_ranges):
            for tors in product(*tor_ranges):
                yield FgaElement(tuple(free), tuple(tors))


def map_between(source: FgAbelianGroup, target: FgAbelianGroup,
                e: FgaElement) -> FgaElement:
    """Image of `e` under the map induced by the identity on the shared
    ambient lattice (valid when target relations contain source relations)."""
    if source.ambient_rank != target.ambient_rank:
        raise ValueError("groups do not share an ambient lattice")
    return target.element_from_ambient(source.section(e))


# ---------------------------------------------------------------------------
# invariants and coinvariants

def coinvariants(lattice_rank: int, action: LatticeAction,
                 extra_relations: Sequence[Vector] = ()) -> FgAbelianGroup:
    """L / <x - g.x>, optionally after further quotienting by extra columns."""
    cols = [tuple(c) for c in extra_relations]
    ident = mat_identity(lattice_rank)
    for g in action.generators:
        if len(g) != lattice_rank:
            raise ValueError("action rank mismatch")
        diff = [vsub(col_g, col_i) for col_g, col_i
                in zip(mat_transpose(g), mat_transpose(ident))]
        cols.extend(diff)
    return FgAbelianGroup.from_presentation(lattice_rank, cols)


def invariants_saturated(lattice_rank: int, action: LatticeAction) -> Tuple[Vector, ...]:
    """Basis of the saturated fixed sublattice {x : g.x = x for all g}."""
    rows = []
    ident = mat_identity(lattice_rank)
    for g in action.generators:
        if len(g) != lattice_rank:
            raise ValueError("action rank mismatch")
        for row_g, row_i in zip(g, ident):
            rows.append(vsub(row_g, row_i))
    if not rows:
        return tuple(mat_identity(lattice_rank))
    basis = kernel_basis(mat(rows))
    if not is_saturated(basis, lattice_rank):
        raise AssertionError("kernel basis unexpectedly non-saturated")
    return basis
