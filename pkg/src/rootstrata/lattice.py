"""Exact integer lattice arithmetic.

Matrices are tuples of rows of Python ints; rows are lattice generators.
Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import Rejected

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class QuotientStructure:
    """Isomorphism type of a finitely generated abelian group Z^r + torsion.

    ``invariant_factors`` lists the nontrivial cyclic factors d_1 | d_2 | ...
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def order_of_torsion(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank,
                "invariant_factors": list(self.invariant_factors)}


def as_int_matrix(rows: Iterable[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged integer matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return ()
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def transpose(m: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``h = u @ m``, ``u`` unimodular, pivots positive
    and entries above each pivot reduced into ``[0, pivot)``.  Zero rows of
    ``h`` sit at the bottom.
    """
    h = [list(map(int, r)) for r in m]
    nrows = len(h)
    ncols = len(h[0]) if h else 0
    u = [list(r) for r in identity(nrows)]

    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        for i in range(row + 1, nrows):
            if h[i][col] == 0:
                continue
            a, b = h[row][col], h[i][col]
            g, s, t = _xgcd(a, b)
            p, q = a // g, b // g
            # [[s, t], [-q, p]] has determinant 1
            for mat in (h, u):
                ra, rb = mat[row], mat[i]
                mat[row] = [s * x + t * y for x, y in zip(ra, rb)]
                mat[i] = [-q * x + p * y for x, y in zip(ra, rb)]
        pivot = h[row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
            pivot = -pivot
        for i in range(row):
            f = h[i][col] // pivot
            if f:
                h[i] = [x - f * y for x, y in zip(h[i], h[row])]
                u[i] = [x - f * y for x, y in zip(u[i], u[row])]
        row += 1
    return as_int_matrix(h), as_int_matrix(u)


def hnf_basis(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Nonzero rows of the Hermite normal form: a canonical lattice basis."""
    h, _ = hermite_normal_form(m)
    return tuple(r for r in h if any(r))


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(hnf_basis(m)) if m else 0


def _pivot_cols(basis: IntMatrix) -> list[int]:
    return [next(j for j, x in enumerate(r) if x) for r in basis]


def solve_in_lattice(basis: Sequence[Sequence[int]],
                     v: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coefficients c with ``c @ hnf_basis(basis) == v``, else None."""
    echelon = hnf_basis(basis) if basis else ()
    rest = [int(x) for x in v]
    coeffs = []
    for r, j in zip(echelon, _pivot_cols(echelon)):
        q, rem = divmod(rest[j], r[j])
        if rem:
            return None
        coeffs.append(q)
        if q:
            rest = [x - q * y for x, y in zip(rest, r)]
    if any(rest):
        return None
    return tuple(coeffs)


def lattice_membership(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True iff ``v`` is in the integer row span of ``basis``."""
    return solve_in_lattice(basis, v) is not None


class LatticeMembership:
    """Membership oracle for one lattice, with the echelon basis cached."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.basis = hnf_basis(basis) if basis else ()
        self.pivots = _pivot_cols(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        rest = list(v)
        for r, j in zip(self.basis, self.pivots):
            q, rem = divmod(rest[j], r[j])
            if rem:
                return False
            if q:
                rest = [x - q * y for x, y in zip(rest, r)]
        return not any(rest)


def _diagonalize(m: list[list[int]]) -> list[int]:
    # alternate row and column HNF until the matrix is diagonal
    while True:
        h, _ = hermite_normal_form(m)
        ht = [list(r) for r in transpose(h, len(m[0]) if m else 0)]
        h2, _ = hermite_normal_form(ht)
        m = [list(r) for r in transpose(h2, len(h))]
        if all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m[0]))
               if i != j):
            return [m[i][i] for i in range(min(len(m), len(m[0])))]


def smith_invariants(m: Sequence[Sequence[int]]) -> list[int]:
    """Nontrivial invariant factors d_1 | d_2 | ... of the cokernel torsion.

    Units and zeros are omitted; the number of zeros follows from the rank.
    """
    rows = [list(map(int, r)) for r in m]
    if not rows or not rows[0]:
        return []
    diag = [abs(d) for d in _diagonalize(rows) if d]
    # enforce divisibility d_i | d_{i+1}
    n = len(diag)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return [d for d in diag if d != 1]


def quotient_structure(sub_basis: Sequence[Sequence[int]],
                       ambient_rank: int) -> QuotientStructure:
    """Structure of Z^ambient_rank / (row span of ``sub_basis``)."""
    sub = as_int_matrix(sub_basis)
    if sub and len(sub[0]) != ambient_rank:
        raise ValueError("sub_basis width does not match ambient_rank")
    r = rank(sub)
    return QuotientStructure(ambient_rank - r, tuple(smith_invariants(sub)))


def saturation_quotient(sub_basis: Sequence[Sequence[int]],
                        ambient_basis: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of (Q*sub intersected with ambient) / sub.

    Raises :class:`Rejected` if the sublattice is not contained in the
    ambient lattice.
    """
    sub = as_int_matrix(sub_basis)
    if not sub:
        return []
    amb = hnf_basis(ambient_basis)
    coords = []
    for v in sub:
        c = solve_in_lattice(amb, v)
        if c is None:
            raise Rejected(f"vector {list(v)} is not in the ambient lattice")
        coords.append(c)
    # torsion of Z^k / span(coords) is exactly the saturation quotient
    return smith_invariants(coords)


def rational_solve(rows: Sequence[Sequence[int]],
                   v: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Coefficients c (rationals) with ``sum c_i rows[i] == v``.

    ``rows`` must be linearly independent; returns None when ``v`` is not in
    their rational span.
    """
    k = len(rows)
    if k == 0:
        return () if not any(v) else None
    n = len(rows[0])
    # augmented system: columns of rows^T | v
    a = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(v[j])]
         for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("rows are linearly dependent")
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(a[i][k] for i in range(k))
