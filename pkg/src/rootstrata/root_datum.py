"""Root data (X*, roots, X_*, coroots) for reductive groups.

Coordinates: roots live in X* coordinates, coroots in X_* coordinates, and
the pairing is the plain dot product.  Cartan matrices follow Bourbaki's
numbering with ``A[i][j] = <alpha_j, alpha_i^vee>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import lattice
from .errors import AxiomViolation, InvalidCartanType, NotSimpleSystem

Vector = tuple[int, ...]

SIMPLY_CONNECTED = "simply_connected"
ADJOINT = "adjoint"
_ISOGENY_ALIASES = {
    "sc": SIMPLY_CONNECTED, "simply_connected": SIMPLY_CONNECTED,
    "ad": ADJOINT, "adjoint": ADJOINT,
}

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "F": 4, "G": 2}


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class CartanType:
    """Finite Cartan type as a list of (family, rank) components."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for fam, n in self.components:
            if fam == "E":
                ok = n in (6, 7, 8)
            elif fam == "F":
                ok = n == 4
            elif fam == "G":
                ok = n == 2
            elif fam in _MIN_RANK:
                ok = n >= _MIN_RANK[fam]
            else:
                ok = False
            if not ok:
                raise InvalidCartanType(f"invalid Cartan type {fam}{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        parts = [p for p in re.split(r"[+x×\s]+", text.strip()) if p]
        if not parts:
            raise InvalidCartanType(f"cannot parse Cartan type {text!r}")
        comps = []
        for p in parts:
            m = re.fullmatch(r"([A-Ga-g])(\d+)", p)
            if not m:
                raise InvalidCartanType(f"cannot parse Cartan type {text!r}")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.components)

    def canonical(self) -> "CartanType":
        return CartanType(tuple(sorted(self.components)))

    @property
    def label(self) -> str:
        if not self.components:
            return "∅"
        return "+".join(f"{f}{n}" for f, n in self.components)

    def __str__(self) -> str:
        return self.label


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    """Bourbaki Cartan matrix with ``A[i][j] = <alpha_j, alpha_i^vee>``."""
    CartanType(((family, n),))
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        # 1-based Bourbaki labels
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if family in "ABC":
        for i in range(1, n):
            link(i, i + 1)
        if family == "B":
            # alpha_n short
            link(n - 1, n, aij=-1, aji=-2)
        elif family == "C":
            # alpha_n long
            link(n - 1, n, aij=-2, aji=-1)
    elif family == "D":
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 2, n)
    elif family == "E":
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif family == "F":
        link(1, 2)
        link(2, 3, aij=-2, aji=-1)
        link(3, 4)
    elif family == "G":
        # alpha_1 short, alpha_2 long
        link(1, 2, aij=-3, aji=-1)
    return a


@dataclass(frozen=True)
class ExtendedComponent:
    simple_indices: tuple[int, ...]
    lowest_index: int
    highest_coefficients: Vector


@dataclass(frozen=True)
class ExtendedSimples:
    components: tuple[ExtendedComponent, ...]

    @property
    def indices(self) -> tuple[int, ...]:
        out = []
        for c in self.components:
            out.extend(c.simple_indices)
            out.append(c.lowest_index)
        return tuple(out)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Validated root datum with roots ordered deterministically.

    Positive roots come first, sorted by height and then by decreasing
    simple-root coefficient vector (so simple roots keep their Bourbaki
    order); negative roots follow in the same order, so
    ``negation[i] == (i + n_positive) % len(roots)``.
    """

    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple_indices: tuple[int, ...]
    coefficients: tuple[Vector, ...]
    name: str = "custom"
    isogeny: str = "custom"
    cartan_type: CartanType | None = field(default=None, compare=False)

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_indices)

    @cached_property
    def negation(self) -> tuple[int, ...]:
        h = self.n_positive
        return tuple((i + h) % (2 * h) for i in range(2 * h)) if h else ()

    @cached_property
    def root_index(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def coefficient_index(self) -> dict[Vector, int]:
        return {c: i for i, c in enumerate(self.coefficients)}

    def is_positive(self, i: int) -> bool:
        return i < self.n_positive

    def height(self, i: int) -> int:
        return sum(self.coefficients[i])

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        s = self.simple_indices
        return tuple(tuple(pairing(self.roots[j], self.coroots[i]) for j in s)
                     for i in s)

    @cached_property
    def squared_lengths(self) -> tuple[int, ...]:
        """Root lengths for the W-invariant form sum over coroots of <x, b>^2.

        Comparable only within one irreducible component.
        """
        return tuple(sum(pairing(r, c) ** 2 for c in self.coroots)
                     for r in self.roots)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Irreducible components as tuples of positions into simple_indices."""
        n = self.semisimple_rank
        a = self.cartan
        seen: set[int] = set()
        comps = []
        for start in range(n):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and a[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def root_component(self) -> tuple[int, ...]:
        """Index into ``components`` for each root."""
        pos_to_comp = {}
        for ci, comp in enumerate(self.components):
            for p in comp:
                pos_to_comp[p] = ci
        out = []
        for c in self.coefficients:
            p = next(k for k, x in enumerate(c) if x)
            out.append(pos_to_comp[p])
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "isogeny": self.isogeny,
            "rank": self.rank,
            "semisimple_rank": self.semisimple_rank,
            "n_roots": self.n_roots,
            "cartan_matrix": [list(r) for r in self.cartan],
            "simple_roots": [list(self.roots[i]) for i in self.simple_indices],
            "simple_coroots": [list(self.coroots[i])
                               for i in self.simple_indices],
            "positive_roots": [list(c) for c in
                               self.coefficients[:self.n_positive]],
        }

    def __repr__(self) -> str:
        return (f"RootDatum(name={self.name!r}, isogeny={self.isogeny!r}, "
                f"rank={self.rank}, n_roots={self.n_roots})")


def _reflect(x: Sequence[int], alpha: Sequence[int], alpha_v: Sequence[int],
             ) -> Vector:
    k = pairing(x, alpha_v)
    return tuple(a - k * b for a, b in zip(x, alpha))


def _finish(rank: int, triples: Iterable[tuple[Vector, Vector, Vector]],
            simple_coefs: Sequence[Vector], **meta) -> RootDatum:
    triples = list(triples)
    pos = [t for t in triples if any(c > 0 for c in t[2])]
    pos.sort(key=lambda t: (sum(t[2]), tuple(-x for x in t[2])))
    neg = [(tuple(-x for x in r), tuple(-x for x in rv),
            tuple(-x for x in c)) for r, rv, c in pos]
    ordered = pos + neg
    coefs = tuple(t[2] for t in ordered)
    simple_indices = tuple(coefs.index(tuple(c)) for c in simple_coefs)
    return RootDatum(rank=rank,
                     roots=tuple(t[0] for t in ordered),
                     coroots=tuple(t[1] for t in ordered),
                     simple_indices=simple_indices,
                     coefficients=coefs, **meta)


def _close_under_reflections(simples: list[tuple[Vector, Vector]],
                             ) -> list[tuple[Vector, Vector, Vector]]:
    k = len(simples)
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    found = {simples[i][0]: (simples[i][0], simples[i][1], unit[i])
             for i in range(k)}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for r, rv, c in frontier:
            for i, (a, av) in enumerate(simples):
                k_ = pairing(r, av)
                r2 = tuple(x - k_ * y for x, y in zip(r, a))
                if r2 in found:
                    continue
                rv2 = _reflect(rv, av, a)
                c2 = tuple(x - k_ * int(j == i) for j, x in enumerate(c))
                found[r2] = (r2, rv2, c2)
                nxt.append(found[r2])
        frontier = nxt
    return list(found.values())


def build_datum(t: CartanType | str, isogeny: str = SIMPLY_CONNECTED,
                ) -> RootDatum:
    """Root datum of the simply connected or adjoint group of type ``t``.

    Simply connected: X* has the fundamental-weight basis and the simple
    coroots are the standard basis of X_*.  Adjoint: the simple roots are the
    standard basis of X*.
    """
    if isinstance(t, str):
        t = CartanType.parse(t)
    try:
        iso = _ISOGENY_ALIASES[isogeny]
    except KeyError:
        raise InvalidCartanType(f"unknown isogeny {isogeny!r}") from None
    n = t.rank
    big = [[0] * n for _ in range(n)]
    off = 0
    for fam, r in t.components:
        a = cartan_matrix(fam, r)
        for i in range(r):
            for j in range(r):
                big[off + i][off + j] = a[i][j]
        off += r
    simples = []
    for j in range(n):
        e = tuple(int(i == j) for i in range(n))
        if iso == SIMPLY_CONNECTED:
            root = tuple(big[i][j] for i in range(n))
            coroot = e
        else:
            root = e
            coroot = tuple(big[j][i] for i in range(n))
        simples.append((root, coroot))
    triples = _close_under_reflections(simples)
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return _finish(n, triples, unit, name=t.label, isogeny=iso, cartan_type=t)


def build_general_linear(n: int) -> RootDatum:
    """GL_n with X* = X_* = Z^n and roots e_i - e_j."""
    if n < 1:
        raise InvalidCartanType("GL_n needs n >= 1")
    roots, coroots, simples = [], [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = tuple(int(k == i) - int(k == j) for k in range(n))
                if j == i + 1:
                    simples.append(len(roots))
                roots.append(v)
                coroots.append(v)
    return build_custom_datum(n, roots, coroots, simples, name=f"GL{n}")


def build_custom_datum(rank: int, roots: Sequence[Sequence[int]],
                       coroots: Sequence[Sequence[int]],
                       simple_indices: Sequence[int],
                       name: str = "custom") -> RootDatum:
    """Validate an explicit root datum; raises :class:`AxiomViolation`."""
    rs = [tuple(int(x) for x in r) for r in roots]
    cs = [tuple(int(x) for x in c) for c in coroots]
    if len(rs) != len(cs):
        raise AxiomViolation("parallel", "roots and coroots differ in number")
    if any(len(v) != rank for v in rs + cs):
        raise AxiomViolation("dimension", f"vectors must have length {rank}")
    if len(set(rs)) != len(rs):
        raise AxiomViolation("distinct", "repeated root")
    lookup = {r: i for i, r in enumerate(rs)}
    for r, c in zip(rs, cs):
        if pairing(r, c) != 2:
            raise AxiomViolation("pairing", f"<{r}, {c}> != 2")
        if not any(r):
            raise AxiomViolation("nonzero", "zero root")
        neg = tuple(-x for x in r)
        if neg not in lookup or cs[lookup[neg]] != tuple(-x for x in c):
            raise AxiomViolation("negation", f"-{r} missing or mismatched")
        two = tuple(2 * x for x in r)
        if two in lookup:
            raise AxiomViolation("reduced", f"{r} and 2*{r} are both roots")
    for a, av in zip(rs, cs):
        for b, bv in zip(rs, cs):
            b2 = _reflect(b, a, av)
            if b2 not in lookup:
                raise AxiomViolation("reflection", f"s_{a}({b}) not a root")
            if cs[lookup[b2]] != _reflect(bv, av, a):
                raise AxiomViolation("coreflection",
                                     f"s_{av}({bv}) mismatched")
    simple = [rs[i] for i in simple_indices]
    if rs and lattice.rank(simple) != len(simple):
        raise AxiomViolation("simple_system", "simple roots are dependent")
    triples = []
    for r, c in zip(rs, cs):
        co = lattice.rational_solve(simple, r) if simple else None
        if co is None or any(x.denominator != 1 for x in co):
            raise AxiomViolation("simple_system",
                                 f"{r} not an integral combination of simples")
        co = tuple(int(x) for x in co)
        if not (all(x >= 0 for x in co) or all(x <= 0 for x in co)):
            raise AxiomViolation("simple_system", f"{r} has mixed signs")
        triples.append((r, c, co))
    k = len(simple)
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    d = _finish(rank, triples, unit, name=name, isogeny="custom")
    object.__setattr__(d, "cartan_type", cartan_type_of(d, d.simple_indices))
    return d


def extended_simples(d: RootDatum) -> ExtendedSimples:
    """Simple roots plus the lowest root of each irreducible component."""
    comps = []
    for ci, comp in enumerate(d.components):
        best = None
        for i in range(d.n_positive):
            if d.root_component[i] != ci:
                continue
            if best is None or d.height(i) > d.height(best):
                best = i
        coef = d.coefficients[best]
        assert all(coef[p] >= 1 for p in comp)
        comps.append(ExtendedComponent(
            simple_indices=tuple(d.simple_indices[p] for p in comp),
            lowest_index=d.negation[best],
            highest_coefficients=coef))
    return ExtendedSimples(tuple(comps))


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def good_primes(d: RootDatum) -> set[int]:
    """The excluded (bad) primes: those dividing a highest-root coefficient.

    Every prime outside the returned set is good for ``d``.
    """
    bad: set[int] = set()
    for comp in extended_simples(d).components:
        for c in comp.highest_coefficients:
            if c > 1:
                bad |= _prime_factors(c)
    return bad


bad_primes = good_primes


def is_good_prime(d: RootDatum, p: int) -> bool:
    return p not in good_primes(d)


def _classify_component(nodes: list[int], a: list[list[int]],
                        ) -> tuple[str, int]:
    n = len(nodes)
    if n == 1:
        return ("A", 1)
    prod = {}
    adj: dict[int, list[int]] = {i: [] for i in nodes}
    for i in nodes:
        for j in nodes:
            if i < j and a[i][j] != 0:
                prod[(i, j)] = a[i][j] * a[j][i]
                adj[i].append(j)
                adj[j].append(i)
    if n - 1 != len(prod):
        raise NotSimpleSystem("Dynkin diagram has a cycle")
    mults = sorted(prod.values())
    if mults[-1] == 3:
        if n != 2:
            raise NotSimpleSystem("triple bond outside G2")
        return ("G", 2)
    if mults[-1] == 2:
        if mults.count(2) > 1 or max(len(v) for v in adj.values()) > 2:
            raise NotSimpleSystem("not a finite-type diagram")
        (i, j), = [k for k, v in prod.items() if v == 2]
        # a[i][j] = <alpha_j, alpha_i^vee>; -2 means alpha_j is the long one
        long_node = j if a[i][j] == -2 else i
        if n == 2:
            return ("B", 2) if long_node == nodes[0] else ("C", 2)
        leaves = [v for v in (i, j) if len(adj[v]) == 1]
        if not leaves:
            if n == 4:
                return ("F", 4)
            raise NotSimpleSystem("double bond in the middle of a long chain")
        return ("C", n) if leaves[0] == long_node else ("B", n)
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if not branch:
        if max(len(v) for v in adj.values()) > 2:
            raise NotSimpleSystem("not a finite-type diagram")
        return ("A", n)
    if len(branch) > 1 or len(adj[branch[0]]) > 3:
        raise NotSimpleSystem("not a finite-type diagram")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise NotSimpleSystem("not a finite-type diagram")
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    raise NotSimpleSystem("not a finite-type diagram")


def simple_system_components(d: RootDatum, subset: Sequence[int],
                             ) -> list[list[int]]:
    """Connected components of the Dynkin graph on ``subset`` (root indices)."""
    s = sorted(subset)
    seen: set[int] = set()
    comps = []
    for start in s:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in s:
                if j not in seen and pairing(d.roots[j], d.coroots[i]) != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def cartan_type_of(d: RootDatum, subset: Iterable[int]) -> CartanType:
    """Cartan type of the root system with simple system ``subset``."""
    s = sorted(set(subset))
    for i in s:
        for j in s:
            if i != j and pairing(d.roots[j], d.coroots[i]) > 0:
                raise NotSimpleSystem(f"roots {i}, {j} pair positively")
    if s and lattice.rank([d.roots[i] for i in s]) != len(s):
        raise NotSimpleSystem("roots are linearly dependent")
    a = {i: {j: pairing(d.roots[j], d.coroots[i]) for j in s} for i in s}
    comps = []
    for c in simple_system_components(d, s):
        t = _classify_component(c, a)
        if t in (("B", 2), ("C", 2)):
            # B2 = C2; the name read off the node order would not be
            # W-invariant, so follow the ambient component instead
            fam = _ambient_family(d, d.root_component[c[0]])
            t = ("C", 2) if fam == "C" else ("B", 2)
        comps.append(t)
    return CartanType(tuple(sorted(comps)))


def _ambient_family(d: RootDatum, component: int) -> str:
    nodes = [d.simple_indices[p] for p in d.components[component]]
    a = {i: {j: pairing(d.roots[j], d.coroots[i]) for j in nodes}
         for i in nodes}
    return _classify_component(nodes, a)[0]
