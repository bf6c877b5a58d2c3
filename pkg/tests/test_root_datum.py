import pytest

from rootstrata.errors import AxiomViolation, InvalidCartanType, NotSimpleSystem
from rootstrata.root_datum import (CartanType, bad_primes, build_custom_datum,
                                   build_datum, build_general_linear,
                                   cartan_matrix, cartan_type_of,
                                   extended_simples, good_primes, pairing)

CLASSICAL_COUNTS = {
    "A1": 2, "A2": 6, "A4": 20, "B2": 8, "B3": 18, "C3": 18, "C4": 32,
    "D4": 24, "D5": 40, "G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240,
}


@pytest.mark.parametrize("name,count", sorted(CLASSICAL_COUNTS.items()))
@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_root_counts(name, count, iso):
    d = build_datum(name, iso)
    assert d.n_roots == count
    assert d.n_positive * 2 == count


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2", "F4", "A1+B2"])
@pytest.mark.parametrize("iso", ["sc", "adjoint"])
def test_axioms_and_structure(name, iso):
    d = build_datum(name, iso)
    for i, (r, c) in enumerate(zip(d.roots, d.coroots)):
        assert pairing(r, c) == 2
        j = d.negation[i]
        assert d.negation[j] == i
        assert d.roots[j] == tuple(-x for x in r)
        assert tuple(2 * x for x in r) not in d.root_index
        co = d.coefficients[i]
        assert all(x >= 0 for x in co) or all(x <= 0 for x in co)
    assert cartan_type_of(d, d.simple_indices) == CartanType.parse(name).canonical()


def test_cartan_convention_sl3():
    assert build_datum("A2").cartan == ((2, -1), (-1, 2))
    assert cartan_matrix("A", 2) == [[2, -1], [-1, 2]]


def test_g2_roots():
    d = build_datum("G2")
    assert d.n_roots == 12 and d.n_positive == 6
    assert set(d.coefficients[:6]) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1),
                                       (3, 2)}


def test_c3_highest_root():
    d = build_datum("C3")
    assert d.n_roots == 18
    ext = extended_simples(d)
    (comp,) = ext.components
    assert comp.highest_coefficients == (2, 2, 1)
    assert d.coefficients[comp.lowest_index] == (-2, -2, -1)


def test_extended_simples_d4_a1():
    (c,) = extended_simples(build_datum("D4")).components
    assert c.highest_coefficients == (1, 2, 1, 1)
    (c,) = extended_simples(build_datum("A1")).components
    assert c.highest_coefficients == (1,)


def test_adjoint_a1():
    d = build_datum("A1", "adjoint")
    assert d.rank == 1 and set(d.roots) == {(1,), (-1,)}


def test_sc_coroots_span_cocharacters():
    from rootstrata import lattice
    for name in ["B3", "C3", "D4", "G2"]:
        d = build_datum(name)
        assert lattice.hnf_basis(d.coroots) == lattice.identity(d.rank)


def test_invalid_types():
    for bad in ["A0", "B1", "D2", "E5", "F3", "G3", "Z2", ""]:
        with pytest.raises(InvalidCartanType):
            build_datum(bad)
    with pytest.raises(InvalidCartanType):
        build_datum("A2", "halfspin")


def test_custom_data():
    gl2 = build_general_linear(2)
    assert gl2.rank == 2 and set(gl2.roots) == {(1, -1), (-1, 1)}
    sl2 = build_custom_datum(1, [(2,), (-2,)], [(1,), (-1,)], [0])
    assert sl2.cartan_type == CartanType.parse("A1")
    with pytest.raises(AxiomViolation) as exc:
        build_custom_datum(1, [(1,), (-1,)], [(1,), (-1,)], [0])
    assert exc.value.axiom == "pairing"
    with pytest.raises(AxiomViolation) as exc:
        build_custom_datum(1, [(2,), (-2,)], [(1,), (1,)], [0])
    assert exc.value.axiom == "negation"


def test_primes():
    assert bad_primes(build_datum("G2")) == {2, 3}
    assert good_primes(build_datum("A4")) == set()
    assert bad_primes(build_datum("C3")) == {2}
    assert bad_primes(build_datum("E8")) == {2, 3, 5}


def test_cartan_type_of_subsystems():
    c3 = build_datum("C3")
    idx = [c3.coefficient_index[c] for c in [(0, 0, 1), (0, 2, 1), (2, 2, 1)]]
    assert cartan_type_of(c3, idx).label == "A1+A1+A1"
    d4 = build_datum("D4")
    idx = [d4.coefficient_index[c] for c in
           [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 2, 1, 1)]]
    assert cartan_type_of(d4, idx).label == "A1+A1+A1+A1"
    g2 = build_datum("G2")
    idx = [g2.coefficient_index[c] for c in [(0, 1), (3, 1)]]
    assert cartan_type_of(g2, idx).label == "A2"
    with pytest.raises(NotSimpleSystem):
        cartan_type_of(g2, [g2.coefficient_index[(1, 0)],
                            g2.coefficient_index[(2, 1)]])


def test_d3_is_a3():
    assert cartan_type_of(build_datum("D3"), build_datum("D3").simple_indices
                          ).label == "A3"


@pytest.mark.parametrize("name,expected", [("C3", "C2"), ("B3", "B2"),
                                           ("F4", "B2")])
def test_rank_two_double_bond_label_is_conjugation_invariant(name, expected):
    from rootstrata.subsystems import enumerate_rational, simple_system
    from rootstrata.weyl import generate_weyl
    d = build_datum(name)
    w = generate_weyl(d)
    for c in enumerate_rational(d, w):
        simples = simple_system(c)
        if len(simples) != 2:
            continue
        label = cartan_type_of(d, simples).label
        if label not in ("B2", "C2"):
            continue
        assert label == expected
        for k in range(0, w.order, max(1, w.order // 50)):
            moved = w.act_on_set(k, c.indices)
            from rootstrata.subsystems import ClosedSubset
            assert cartan_type_of(d, simple_system(
                ClosedSubset(d, moved))).label == expected
