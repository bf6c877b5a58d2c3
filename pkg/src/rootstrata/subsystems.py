"""Closed root subsets and the rational / trigonometric / elliptic families."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import lattice
from .errors import NotClosed
from .root_datum import (RootDatum, extended_simples, pairing,
                         simple_system_components)
from .weyl import WeylGroup


class CaseTag(str, Enum):
    RATIONAL = "rational"
    TRIGONOMETRIC = "trigonometric"
    ELLIPTIC = "elliptic"


@dataclass(frozen=True, eq=False)
class ClosedSubset:
    """A symmetric subset of roots with Z-span intersected with roots = itself."""

    datum: RootDatum
    indices: tuple[int, ...]

    def __eq__(self, other):
        return (isinstance(other, ClosedSubset) and self.datum is other.datum
                and self.indices == other.indices)

    def __hash__(self):
        return hash(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i: int) -> bool:
        return i in self._set

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.indices)
            object.__setattr__(self, "_cached_set", s)
        return s

    def positive(self) -> tuple[int, ...]:
        return tuple(i for i in self.indices if self.datum.is_positive(i))

    def coefficient_vectors(self) -> list[list[int]]:
        """Positive members as simple-root coefficient vectors."""
        return [list(self.datum.coefficients[i]) for i in self.positive()]

    def __repr__(self) -> str:
        return f"ClosedSubset({self.datum.name}, {list(self.positive())})"


def symmetrize(d: RootDatum, s: Iterable[int]) -> set[int]:
    s = set(s)
    return s | {d.negation[i] for i in s}


def span_intersection(d: RootDatum, s: Iterable[int]) -> tuple[int, ...]:
    """Indices of all roots in the integer span of the roots ``s``."""
    s = list(s)
    if not s:
        return ()
    lat = lattice.LatticeMembership([d.coefficients[i] for i in s])
    return tuple(i for i, c in enumerate(d.coefficients) if c in lat)


def rational_span_intersection(d: RootDatum, s: Iterable[int],
                               ) -> tuple[int, ...]:
    """Indices of all roots in the rational span of the roots ``s``."""
    s = list(s)
    if not s:
        return ()
    basis = lattice.hnf_basis([d.coefficients[i] for i in s])
    r = len(basis)
    out = []
    for i, c in enumerate(d.coefficients):
        if lattice.rank(list(basis) + [c]) == r:
            out.append(i)
    return tuple(out)


def closure(d: RootDatum, s: Iterable[int]) -> ClosedSubset:
    """Smallest closed symmetric subset containing ``s``."""
    cur = tuple(sorted(symmetrize(d, s)))
    while True:
        nxt = span_intersection(d, cur)
        if nxt == cur:
            return ClosedSubset(d, cur)
        cur = nxt


def is_closed(d: RootDatum, s: Iterable[int]) -> bool:
    s = set(s)
    if s != symmetrize(d, s):
        return False
    return set(span_intersection(d, s)) == s


def as_closed(d: RootDatum, s: Iterable[int]) -> ClosedSubset:
    """Wrap ``s`` after checking closedness."""
    s = tuple(sorted(set(s)))
    if not is_closed(d, s):
        raise NotClosed(f"subset {list(s)} is not closed")
    return ClosedSubset(d, s)


def simple_system(s: ClosedSubset) -> tuple[int, ...]:
    """Positive members of ``s`` that are not a sum of two positive members."""
    d = s.datum
    pos = s.positive()
    pos_set = {d.coefficients[i] for i in pos}
    out = []
    for i in pos:
        c = d.coefficients[i]
        decomposable = False
        for j in pos:
            cj = d.coefficients[j]
            rest = tuple(x - y for x, y in zip(c, cj))
            if rest in pos_set:
                decomposable = True
                break
        if not decomposable:
            out.append(i)
    return tuple(out)


@dataclass(frozen=True)
class SubsystemComponent:
    simple_indices: tuple[int, ...]
    root_indices: tuple[int, ...]
    highest_index: int


def subsystem_components(s: ClosedSubset) -> list[SubsystemComponent]:
    """Irreducible components of ``s`` with their own highest roots."""
    d = s.datum
    simples = simple_system(s)
    if not simples:
        return []
    vecs = [d.coefficients[i] for i in simples]
    groups = simple_system_components(d, simples)
    members: dict[int, list[int]] = {g: [] for g in range(len(groups))}
    heights: dict[int, int] = {}
    group_of = {i: g for g, grp in enumerate(groups) for i in grp}
    for i in s.positive():
        co = lattice.rational_solve(vecs, d.coefficients[i])
        support = [simples[k] for k, x in enumerate(co) if x]
        g = group_of[support[0]]
        members[g].append(i)
        heights[i] = int(sum(co))
    out = []
    for g, grp in enumerate(groups):
        top = max(members[g], key=lambda i: (heights[i], -i))
        roots = sorted(members[g] + [d.negation[i] for i in members[g]])
        out.append(SubsystemComponent(tuple(grp), tuple(roots), top))
    return out


def subsystem_extended_simples(s: ClosedSubset) -> tuple[int, ...]:
    """Simple roots of ``s`` plus the lowest root of each component."""
    d = s.datum
    out = []
    for comp in subsystem_components(s):
        out.extend(comp.simple_indices)
        out.append(d.negation[comp.highest_index])
    return tuple(out)


def _dedup(w: WeylGroup, d: RootDatum, subsets: Iterable[Sequence[int]],
           ) -> list[ClosedSubset]:
    seen: dict[tuple[int, ...], ClosedSubset] = {}
    for sub in subsets:
        key = w.canonical_form(sub)
        if key not in seen:
            seen[key] = ClosedSubset(d, key)
    return sort_classes(seen.values())


def sort_classes(classes: Iterable[ClosedSubset]) -> list[ClosedSubset]:
    return sorted(classes, key=lambda c: (len(c.indices), c.indices))


def bds_children(s: ClosedSubset, w: WeylGroup) -> list[ClosedSubset]:
    """Subsets Z S intersected with the roots, S a proper subset of the
    extended simple roots of ``s``; one representative per W-class."""
    d = s.datum
    ext = subsystem_extended_simples(s)
    subs = []
    for k in range(len(ext)):
        for S in itertools.combinations(ext, k):
            subs.append(span_intersection(d, S))
    return _dedup(w, d, subs)


def enumerate_rational(d: RootDatum, w: WeylGroup) -> list[ClosedSubset]:
    """Levi subsystems: Z S intersected with the roots for S inside the simple
    roots, up to W."""
    simples = d.simple_indices
    subs = (span_intersection(d, S) for k in range(len(simples) + 1)
            for S in itertools.combinations(simples, k))
    return _dedup(w, d, subs)


def enumerate_trigonometric(d: RootDatum, w: WeylGroup) -> list[ClosedSubset]:
    """Pseudo-Levi subsystems: S ranges over subsets of the extended simple
    roots, up to W."""
    ext = extended_simples(d).indices
    subs = (span_intersection(d, S) for k in range(len(ext) + 1)
            for S in itertools.combinations(ext, k))
    return _dedup(w, d, subs)


def enumerate_elliptic(d: RootDatum, w: WeylGroup,
                       trig: Sequence[ClosedSubset] | None = None,
                       ) -> list[ClosedSubset]:
    """Intersections of two pseudo-Levi subsystems in relative position w,
    up to W."""
    if trig is None:
        trig = enumerate_trigonometric(d, w)
    reps = [t.indices for t in trig]
    images = [w.images(r) for r in reps]
    distinct: set[tuple[int, ...]] = set()
    for a, ra in enumerate(reps):
        mask = np.zeros(d.n_roots, dtype=bool)
        mask[list(ra)] = True
        for b in range(a, len(reps)):
            imgs = images[b]
            if imgs.shape[1] == 0:
                distinct.add(())
                continue
            inter = np.where(mask[imgs], imgs, -1)
            for row in np.unique(inter, axis=0):
                distinct.add(tuple(int(x) for x in row if x >= 0))
    return _dedup(w, d, sorted(distinct))


def enumerate_bds_iterated(d: RootDatum, w: WeylGroup) -> list[ClosedSubset]:
    """Everything reachable from the full root system by repeated
    :func:`bds_children`, up to W."""
    full = ClosedSubset(d, tuple(range(d.n_roots)))
    seen = {w.canonical_form(full.indices): full}
    frontier = [full]
    while frontier:
        nxt = []
        for s in frontier:
            if not s.indices:
                continue
            for child in bds_children(s, w):
                if child.indices not in seen:
                    seen[child.indices] = child
                    nxt.append(child)
        frontier = nxt
    return sort_classes(seen.values())


def enumerate_case(d: RootDatum, w: WeylGroup, case: CaseTag | str,
                   ) -> list[ClosedSubset]:
    case = CaseTag(case)
    if case is CaseTag.RATIONAL:
        return enumerate_rational(d, w)
    if case is CaseTag.TRIGONOMETRIC:
        return enumerate_trigonometric(d, w)
    return enumerate_elliptic(d, w)


def is_simple_system(d: RootDatum, idx: Sequence[int]) -> bool:
    for i in idx:
        for j in idx:
            if i != j and pairing(d.roots[j], d.coroots[i]) > 0:
                return False
    return not idx or lattice.rank([d.coefficients[i] for i in idx]) == len(idx)
