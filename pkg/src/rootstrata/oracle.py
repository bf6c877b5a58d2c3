"""Brute-force baselines for the subsystem enumerations.

Everything here is computed straight from definitions and shares no code
with the lattice, weyl or subsystems modules: closedness uses finite-group
arithmetic in rational coordinates, conjugacy uses a Weyl group regenerated
from simple-reflection permutations, and the trigonometric and elliptic
families come from sweeping rational points of the compact torus.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, TooLarge
from .root_datum import RootDatum
from .subsystems import ClosedSubset

DEFAULT_BUDGET = 10**6
MAX_ROOTS_FOR_ALL_CLOSED = 16


@dataclass(frozen=True)
class OracleConfig:
    max_rank: int = 2
    max_denominator: int = 12
    budget: int = DEFAULT_BUDGET


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _independent_subset(vecs: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    basis: list[tuple[int, ...]] = []
    for v in vecs:
        if _rank(basis + [v]) > len(basis):
            basis.append(v)
    return basis


def _rank(vecs: list[tuple[int, ...]]) -> int:
    rows = [[Fraction(x) for x in v] for v in vecs]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _coords(basis: list[tuple[int, ...]], v: Sequence[int]
            ) -> tuple[Fraction, ...] | None:
    """Rational coordinates of v in an independent ``basis``, or None."""
    k = len(basis)
    if k == 0:
        return () if not any(v) else None
    # solve on the first k coordinates giving a nonsingular system
    n = len(v)
    for cols in itertools.combinations(range(n), k):
        m = [[Fraction(basis[i][c]) for i in range(k)] for c in cols]
        rhs = [Fraction(v[c]) for c in cols]
        sol = _solve_square(m, rhs)
        if sol is None:
            continue
        if all(sum(sol[i] * basis[i][c] for i in range(k)) == v[c]
               for c in range(n)):
            return tuple(sol)
        return None
    return None


def _solve_square(m: list[list[Fraction]], rhs: list[Fraction]
                  ) -> list[Fraction] | None:
    k = len(m)
    a = [row[:] + [b] for row, b in zip(m, rhs)]
    for c in range(k):
        p = next((i for i in range(c, k) if a[i][c]), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        for i in range(k):
            if i != c and a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][k] / a[i][i] for i in range(k)]


def _integer_span_members(d: RootDatum, subset: Sequence[int]) -> set[int]:
    """Roots in Z*subset, via the finite group Z*subset / Z*basis."""
    if not subset:
        return set()
    vecs = [d.roots[i] for i in subset]
    basis = _independent_subset(vecs)
    frac = lambda t: tuple(x % 1 for x in t)  # noqa: E731
    gens = {frac(_coords(basis, v)) for v in vecs}
    group = {tuple(Fraction(0) for _ in basis)}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                s = tuple((a + b) % 1 for a, b in zip(g, h))
                if s not in group:
                    group.add(s)
                    nxt.append(s)
        frontier = nxt
    out = set()
    for j, r in enumerate(d.roots):
        c = _coords(basis, r)
        if c is not None and frac(c) in group:
            out.add(j)
    return out


def oracle_is_closed(d: RootDatum, subset: Iterable[int]) -> bool:
    s = set(subset)
    return _integer_span_members(d, sorted(s)) == s


class _OracleWeyl:
    """Root permutations of W generated from simple reflections."""

    def __init__(self, d: RootDatum):
        index = {r: i for i, r in enumerate(d.roots)}
        gens = []
        for i in d.simple_indices:
            a, av = d.roots[i], d.coroots[i]
            perm = []
            for r in d.roots:
                k = _dot(r, av)
                perm.append(index[tuple(x - k * y for x, y in zip(r, a))])
            gens.append(tuple(perm))
        ident = tuple(range(d.n_roots))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[x] for x in p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        self.perms = np.array(sorted(seen), dtype=np.int64).reshape(
            len(seen), d.n_roots)

    def canonical(self, subset: Iterable[int]) -> tuple[int, ...]:
        s = sorted(subset)
        if not s:
            return ()
        imgs = np.sort(self.perms[:, s], axis=1)
        best = min(map(tuple, imgs.tolist()))
        return tuple(int(x) for x in best)


def _canonical_classes(d: RootDatum, subsets: Iterable[Iterable[int]]
                       ) -> list[ClosedSubset]:
    w = _OracleWeyl(d)
    keys = sorted({w.canonical(s) for s in subsets}, key=lambda t: (len(t), t))
    return [ClosedSubset(d, k) for k in keys]


def oracle_all_closed(d: RootDatum) -> list[ClosedSubset]:
    """Every symmetric closed subset, up to W, by exhaustive search."""
    if d.n_roots > MAX_ROOTS_FOR_ALL_CLOSED:
        raise TooLarge(f"{d.n_roots} roots exceeds the exhaustive limit "
                       f"{MAX_ROOTS_FOR_ALL_CLOSED}")
    npos = d.n_roots // 2
    neg = {i: j for i, r in enumerate(d.roots)
           for j, q in enumerate(d.roots) if tuple(-x for x in r) == q}
    found = []
    for mask in range(1 << npos):
        pos = [i for i in range(npos) if mask >> i & 1]
        s = sorted(pos + [neg[i] for i in pos])
        if oracle_is_closed(d, s):
            found.append(s)
    return _canonical_classes(d, found)


def _check_rank(d: RootDatum, cfg: OracleConfig) -> None:
    if d.rank > cfg.max_rank:
        raise TooLarge(f"rank {d.rank} exceeds oracle max_rank {cfg.max_rank}")


def _point_count(d: RootDatum, cfg: OracleConfig) -> int:
    return sum(n ** d.rank for n in range(1, cfg.max_denominator + 1))


def _sigma_masks(d: RootDatum, cfg: OracleConfig) -> set[tuple[bool, ...]]:
    """Distinct vanishing sets Sigma_x over x in (1/D')X_*/X_*, D' <= D."""
    roots = np.array(d.roots, dtype=np.int64).reshape(d.n_roots, d.rank)
    masks: set[tuple[bool, ...]] = set()
    for n in range(1, cfg.max_denominator + 1):
        grid = np.array(list(itertools.product(range(n), repeat=d.rank)),
                        dtype=np.int64).reshape(n ** d.rank, d.rank)
        vanish = (grid @ roots.T) % n == 0
        masks.update(map(tuple, np.unique(vanish, axis=0).tolist()))
    return masks


def _mask_indices(mask: Sequence[bool]) -> tuple[int, ...]:
    return tuple(i for i, b in enumerate(mask) if b)


def oracle_trig(d: RootDatum, cfg: OracleConfig = OracleConfig()
                ) -> list[ClosedSubset]:
    """{Sigma_x : x a rational point of denominator <= D}, up to W."""
    _check_rank(d, cfg)
    npts = _point_count(d, cfg)
    if npts > cfg.budget:
        raise BudgetExceeded(f"{npts} points exceed budget {cfg.budget}")
    return _canonical_classes(d, map(_mask_indices, _sigma_masks(d, cfg)))


def oracle_elliptic(d: RootDatum, cfg: OracleConfig = OracleConfig()
                    ) -> list[ClosedSubset]:
    """{Sigma_x1 intersected with Sigma_x2} over pairs of rational points."""
    _check_rank(d, cfg)
    npts = _point_count(d, cfg)
    if npts * npts > cfg.budget:
        raise BudgetExceeded(f"{npts * npts} point pairs exceed budget "
                             f"{cfg.budget}")
    masks = sorted(_sigma_masks(d, cfg))
    inter = set()
    for m1, m2 in itertools.product(masks, repeat=2):
        inter.add(_mask_indices([a and b for a, b in zip(m1, m2)]))
    return _canonical_classes(d, inter)
