"""Weyl groups as explicit element lists.

Each element is stored as a permutation of root indices together with its
integer matrices on X* and X_* (column-vector convention, ``x -> M @ x``).
Subgroups are handled as sorted lists of element indices; the public
functions return :class:`WeylElement` lists.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import OrderExceeded
from .root_datum import CartanType, RootDatum, pairing

DEFAULT_MAX_ORDER = 10**6

_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040,
                       ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}


def weyl_order(t: CartanType) -> int:
    """Order of the Weyl group of a Cartan type, from the classical formulas."""
    out = 1
    for fam, n in t.components:
        if (fam, n) in _EXCEPTIONAL_ORDERS:
            out *= _EXCEPTIONAL_ORDERS[(fam, n)]
        elif fam == "A":
            out *= math.factorial(n + 1)
        elif fam in "BC":
            out *= 2**n * math.factorial(n)
        elif fam == "D":
            out *= 2 ** (n - 1) * math.factorial(n)
    return out


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]
    root_perm: tuple[int, ...]
    word: tuple[int, ...] | None = None
    comatrix: tuple[tuple[int, ...], ...] | None = None

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.matrix)

    def apply_coweight(self, y: Sequence) -> tuple:
        return tuple(sum(a * b for a, b in zip(row, y))
                     for row in self.comatrix)

    def __eq__(self, other):
        return (isinstance(other, WeylElement)
                and self.root_perm == other.root_perm)

    def __hash__(self):
        return hash(self.root_perm)


def _reflection_data(d: RootDatum, i: int):
    r, rv = d.roots[i], d.coroots[i]
    n = d.rank
    # s(x) = x - <x, rv> r   and   s(y) = y - <r, y> rv
    mat = np.array([[int(a == b) - r[a] * rv[b] for b in range(n)]
                    for a in range(n)], dtype=np.int64)
    comat = np.array([[int(a == b) - rv[a] * r[b] for b in range(n)]
                      for a in range(n)], dtype=np.int64)
    perm = []
    for x in d.roots:
        k = pairing(x, rv)
        perm.append(d.root_index[tuple(a - k * b for a, b in zip(x, r))])
    return mat, comat, np.array(perm, dtype=np.int32)


def reflection(d: RootDatum, root_index: int) -> WeylElement:
    """The reflection s_alpha: x -> x - <x, alpha^vee> alpha."""
    mat, comat, perm = _reflection_data(d, root_index)
    return WeylElement(matrix=tuple(map(tuple, mat.tolist())),
                       root_perm=tuple(perm.tolist()),
                       comatrix=tuple(map(tuple, comat.tolist())))


class WeylGroup:
    """The full Weyl group of a root datum, enumerated breadth first.

    Elements are ordered by word length, then by the lexicographic order of
    their X* matrices.
    """

    def __init__(self, datum: RootDatum, perms: np.ndarray, mats: np.ndarray,
                 comats: np.ndarray, words: list[tuple[int, ...]]):
        self.datum = datum
        self.perms = perms
        self.mats = mats
        self.comats = comats
        self.words = words
        self._index = {p.tobytes(): k for k, p in enumerate(perms)}
        self.simple_reflections = tuple(
            self.index_of_perm(_reflection_data(datum, i)[2])
            for i in datum.simple_indices)

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def __repr__(self) -> str:
        return f"WeylGroup({self.datum.name}, order={self.order})"

    def index_of_perm(self, perm: np.ndarray) -> int:
        return self._index[np.asarray(perm, dtype=np.int32).tobytes()]

    def element(self, k: int) -> WeylElement:
        return WeylElement(matrix=tuple(map(tuple, self.mats[k].tolist())),
                           root_perm=tuple(self.perms[k].tolist()),
                           word=self.words[k],
                           comatrix=tuple(map(tuple, self.comats[k].tolist())))

    @cached_property
    def elements(self) -> list[WeylElement]:
        return [self.element(k) for k in range(self.order)]

    def index_of(self, w: WeylElement) -> int:
        return self.index_of_perm(np.array(w.root_perm, dtype=np.int32))

    def multiply(self, a: int, b: int) -> int:
        """Index of the product a*b (apply b first)."""
        return self._index[self.perms[a][self.perms[b]].tobytes()]

    def inverse(self, a: int) -> int:
        return self.index_of_perm(np.argsort(self.perms[a]))

    @cached_property
    def reflection_index(self) -> dict[int, int]:
        """Root index -> element index of its reflection."""
        out = {}
        for i in range(self.datum.n_roots):
            out[i] = self.index_of_perm(_reflection_data(self.datum, i)[2])
        return out

    def generated_subgroup(self, gens: Iterable[int]) -> list[int]:
        gens = sorted(set(gens))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = self.multiply(a, g)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return sorted(seen)

    def stabilizer_indices(self, s: Iterable[int]) -> list[int]:
        s = np.array(sorted(set(s)), dtype=np.int64)
        if s.size == 0:
            return list(range(self.order))
        mask = np.zeros(self.datum.n_roots, dtype=bool)
        mask[s] = True
        return np.nonzero(mask[self.perms[:, s]].all(axis=1))[0].tolist()

    def reflection_subgroup_indices(self, s: Iterable[int]) -> list[int]:
        return self.generated_subgroup(self.reflection_index[i] for i in s)

    def images(self, s: Iterable[int]) -> np.ndarray:
        """Distinct sorted images w(s), one row each."""
        s = np.array(sorted(set(s)), dtype=np.int64)
        if s.size == 0:
            return np.zeros((1, 0), dtype=np.int32)
        imgs = np.sort(self.perms[:, s], axis=1)
        return np.unique(imgs, axis=0)

    def canonical_form(self, s: Iterable[int]) -> tuple[int, ...]:
        s = np.array(sorted(set(s)), dtype=np.int64)
        if s.size == 0:
            return ()
        imgs = np.sort(self.perms[:, s], axis=1)
        cand = imgs
        for col in range(imgs.shape[1]):
            c = cand[:, col]
            cand = cand[c == c.min()]
            if len(cand) == 1:
                break
        return tuple(int(x) for x in cand[0])

    def act_on_set(self, k: int, s: Iterable[int]) -> tuple[int, ...]:
        p = self.perms[k]
        return tuple(sorted(int(p[i]) for i in s))


def generate_weyl(d: RootDatum, max_order: int = DEFAULT_MAX_ORDER,
                  ) -> WeylGroup:
    """Breadth-first closure of the simple reflections.

    Raises :class:`OrderExceeded` when |W| would exceed ``max_order``.
    """
    if d.cartan_type is not None:
        predicted = weyl_order(d.cartan_type)
        if predicted > max_order:
            raise OrderExceeded(
                f"|W({d.name})| = {predicted} exceeds max_order {max_order}")
    n, m = d.rank, d.n_roots
    gens = [_reflection_data(d, i) for i in d.simple_indices]
    ident = (np.eye(n, dtype=np.int64), np.eye(n, dtype=np.int64),
             np.arange(m, dtype=np.int32), ())
    seen = {ident[2].tobytes()}
    layer = [ident]
    out = []
    while layer:
        layer.sort(key=lambda e: tuple(e[0].ravel().tolist()))
        out.extend(layer)
        if len(out) > max_order:
            raise OrderExceeded(f"|W| exceeds max_order {max_order}")
        nxt = []
        for mat, comat, perm, word in layer:
            for g, (gm, gc, gp) in enumerate(gens):
                p = perm[gp]
                key = p.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((mat @ gm, comat @ gc, p, word + (g,)))
        layer = nxt
    perms = np.stack([e[2] for e in out]) if m else np.zeros((len(out), 0),
                                                              np.int32)
    return WeylGroup(d, perms, np.stack([e[0] for e in out]),
                     np.stack([e[1] for e in out]), [e[3] for e in out])


def setwise_stabilizer(w: WeylGroup, s: Iterable[int]) -> list[WeylElement]:
    """{w in W : w(s) = s}."""
    return [w.element(k) for k in w.stabilizer_indices(s)]


def reflection_subgroup(w: WeylGroup, s: Iterable[int]) -> list[WeylElement]:
    """Subgroup generated by the reflections in the roots of ``s``."""
    return [w.element(k) for k in w.reflection_subgroup_indices(s)]


def canonical_form(w: WeylGroup, s: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically least sorted image of ``s`` over W."""
    return w.canonical_form(s)


@dataclass(frozen=True)
class QuotientGroupInfo:
    order: int
    is_abelian: bool
    abelian_invariants: tuple[int, ...] | None


def quotient_group_info(w: WeylGroup, group: Sequence[int],
                        normal: Sequence[int]) -> QuotientGroupInfo:
    """Order, commutativity and abelian invariants of group/normal."""
    coset_of = {}
    reps = []
    for g in group:
        if g in coset_of:
            continue
        cid = len(reps)
        reps.append(g)
        for n in normal:
            coset_of[w.multiply(g, n)] = cid
    k = len(reps)

    def mul(a: int, b: int) -> int:
        return coset_of[w.multiply(reps[a], reps[b])]

    abelian = all(mul(a, b) == mul(b, a) for a in range(k) for b in range(a))
    if not abelian:
        return QuotientGroupInfo(k, False, None)
    ident = coset_of[0]
    orders = []
    for a in range(k):
        x, o = a, 1
        while x != ident:
            x = mul(x, a)
            o += 1
        orders.append(o)
    return QuotientGroupInfo(k, True, abelian_invariants_from_orders(orders))


def _ilog(c: int, p: int) -> int:
    e = 0
    while c > 1:
        c, r = divmod(c, p)
        assert r == 0
        e += 1
    return e


def abelian_invariants_from_orders(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its element orders.

    Uses #{x : x^(p^j) = 1} = p^(sum_i min(e_i, j)) for the p-parts p^e_i.
    """
    n = len(orders)
    primes = [p for p in range(2, n + 1)
              if n % p == 0 and all(p % q for q in range(2, p))]
    elementary: dict[int, list[int]] = {}
    for p in primes:
        logs = [0]
        j = 1
        while True:
            logs.append(_ilog(sum(1 for o in orders if p**j % o == 0), p))
            if logs[-1] == logs[-2]:
                break
            j += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        parts = []
        for j, cnt in enumerate(at_least):
            nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
            parts += [p ** (j + 1)] * (cnt - nxt)
        elementary[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in elementary.values()), default=0)
    factors = []
    for i in range(width):
        f = 1
        for v in elementary.values():
            if i < len(v):
                f *= v[i]
        factors.append(f)
    return tuple(sorted(factors))


def component_permutation_image_order(w: WeylGroup, group: Sequence[int],
                                      components: Sequence[Sequence[int]],
                                      ) -> int:
    """Order of the image of ``group`` permuting the given root-set blocks."""
    block_of = {}
    for b, comp in enumerate(components):
        for i in comp:
            block_of[i] = b
    reps = [min(c) for c in components]
    images = set()
    for g in group:
        p = w.perms[g]
        images.add(tuple(block_of[int(p[r])] for r in reps))
    return len(images)
