import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rootstrata import lattice
from rootstrata.errors import Rejected
from rootstrata.lattice import (QuotientStructure, hermite_normal_form,
                                lattice_membership, quotient_structure,
                                saturation_quotient, smith_invariants)
from rootstrata.root_datum import build_datum

small_ints = st.integers(min_value=-9, max_value=9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def _is_hnf(h):
    last = -1
    zero_seen = False
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen, "zero rows must be at the bottom"
        j = nz[0]
        assert j > last
        assert row[j] > 0
        last = j
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        j = nz[0]
        for k in range(i):
            assert 0 <= h[k][j] < row[j]
    return True


def test_hnf_identity():
    h, u = hermite_normal_form([[1, 0], [0, 1]])
    assert h == ((1, 0), (0, 1)) and u == ((1, 0), (0, 1))


def test_hnf_already_reduced():
    h, u = hermite_normal_form([[2, 0], [0, 2]])
    assert h == ((2, 0), (0, 2)) and u == ((1, 0), (0, 1))


def test_hnf_small_example():
    # the entry above the second pivot is reduced into [0, 2)
    h, u = hermite_normal_form([[1, 2], [3, 4]])
    assert h == ((1, 0), (0, 2))
    assert lattice.matmul(u, [[1, 2], [3, 4]]) == h


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_hnf_properties(m):
    h, u = hermite_normal_form(m)
    assert lattice.matmul(u, m) == h
    assert abs(sympy.Matrix(u).det()) == 1
    assert _is_hnf(h)
    assert hermite_normal_form(h)[0] == h


@settings(max_examples=100, deadline=None)
@given(matrices(4, 3))
def test_hnf_matches_sympy_lattice(m):
    # same row lattice as sympy's HNF (column-style on the transpose)
    from sympy.matrices.normalforms import hermite_normal_form as shnf
    ours = lattice.hnf_basis(m)
    mt = sympy.Matrix(m).T
    if mt.rank() == 0:
        assert ours == ()
        return
    theirs = shnf(mt).T
    rows = [tuple(int(x) for x in theirs.row(i)) for i in range(theirs.rows)]
    rows = [r for r in rows if any(r)]
    assert lattice.hnf_basis(rows) == ours


def test_smith_examples():
    assert smith_invariants([[2, 0], [0, 2]]) == [2, 2]
    assert smith_invariants([[1, 0, 0], [0, 6, 0], [0, 0, 4]]) == [2, 12]
    assert smith_invariants([[0, 0], [0, 0]]) == []


def _random_unimodular(n, rng):
    u = sympy.eye(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            u[i, :] = u[i, :] + rng.randint(-2, 2) * u[j, :]
    return u


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3), st.integers(0, 10**6))
def test_smith_unimodular_invariance(m, seed):
    rng = random.Random(seed)
    a = sympy.Matrix(m)
    left = _random_unimodular(a.rows, rng)
    right = _random_unimodular(a.cols, rng)
    b = left * a * right
    mb = [[int(x) for x in b.row(i)] for i in range(b.rows)]
    assert smith_invariants(mb) == smith_invariants(m)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3))
def test_smith_matches_sympy(m):
    from sympy.matrices.normalforms import smith_normal_form
    snf = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    assert smith_invariants(m) == [d for d in diag if d not in (0, 1)]


def test_membership_examples():
    assert lattice_membership([[2, 0], [0, 2]], [2, 2])
    assert not lattice_membership([[2, 0], [0, 2]], [1, 0])


def test_membership_long_a2_in_g2():
    d = build_datum("G2")
    long_a2 = [d.roots[d.coefficient_index[c]] for c in [(0, 1), (3, 1)]]
    short = d.roots[d.coefficient_index[(1, 0)]]
    assert not lattice_membership(long_a2, short)


@settings(max_examples=200, deadline=None)
@given(matrices(3, 3), st.lists(small_ints, min_size=3, max_size=3))
def test_membership_cross_check(m, v):
    m = [row + [0] * (3 - len(row)) for row in m]
    got = lattice_membership(m, v)
    # independent test with sympy: same rank and same torsion index after
    # adjoining v means v adds nothing to the lattice
    base = sympy.Matrix(m)
    ext = sympy.Matrix(m + [v])
    if base.rank() != ext.rank():
        assert not got
        return

    def index(rows):
        return QuotientStructure(0, tuple(smith_invariants(rows))
                                 ).order_of_torsion()
    from sympy.matrices.normalforms import smith_normal_form

    def sympy_index(mat):
        if mat.rank() == 0:
            return 1
        snf = smith_normal_form(mat, domain=sympy.ZZ)
        out = 1
        for i in range(min(snf.shape)):
            if snf[i, i]:
                out *= abs(int(snf[i, i]))
        return out
    assert got == (sympy_index(base) == sympy_index(ext))
    assert index(m) == sympy_index(base)


def test_quotient_structure_d4():
    d = build_datum("D4")
    sigma = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]
    sub = [d.roots[d.coefficient_index[c]] for c in sigma]
    assert quotient_structure(sub, 4) == QuotientStructure(0, (2, 2, 2))
    assert quotient_structure(d.roots, 4) == QuotientStructure(0, (2, 2))
    assert quotient_structure([], 3) == QuotientStructure(3, ())
    assert quotient_structure(lattice.identity(3), 3) == QuotientStructure(0, ())


def test_saturation_examples():
    d = build_datum("D4")
    sigma = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]
    co = [d.coroots[d.coefficient_index[c]] for c in sigma]
    assert saturation_quotient(co, lattice.identity(4)) == [2]
    assert saturation_quotient([[1]], [[1]]) == []
    c3 = build_datum("C3")
    co3 = [c3.coroots[c3.coefficient_index[c]]
           for c in [(0, 0, 1), (0, 2, 1), (2, 2, 1)]]
    assert saturation_quotient(co3, lattice.identity(3)) == []


def test_saturation_rejects_outside():
    with pytest.raises(Rejected):
        saturation_quotient([[1, 0]], [[2, 0], [0, 1]])


def test_rational_solve():
    from fractions import Fraction
    assert lattice.rational_solve([[2, 0], [0, 3]], [1, 1]) == (
        Fraction(1, 2), Fraction(1, 3))
    assert lattice.rational_solve([[1, 0, 0]], [0, 1, 0]) is None
