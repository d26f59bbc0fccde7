import pytest

from stemhc.rootsystems import (
    Root, SimpleType, build, parse_shape, shape, simple_type,
)
import euclid_oracle as eo


ALL_SMALL = [
    SimpleType("A", 1), SimpleType("A", 2), SimpleType("A", 3),
    SimpleType("A", 4), SimpleType("B", 2), SimpleType("B", 3),
    SimpleType("B", 4), SimpleType("C", 2), SimpleType("C", 3),
    SimpleType("C", 4), SimpleType("D", 4), SimpleType("D", 5),
    SimpleType("F", 4), SimpleType("G", 2),
]


def rs_of(t):
    return build(shape(t))


# ---------------------------------------------------------------------------
# shapes


def test_simple_type_validation():
    simple_type("A", 1)
    simple_type("E", 8)
    for fam, rank in [("A", 0), ("B", 1), ("C", 1), ("E", 5), ("E", 9),
                      ("F", 3), ("G", 3), ("Z", 2)]:
        with pytest.raises(ValueError):
            simple_type(fam, rank)


def test_d2_d3_rejected_with_isomorphism_hint():
    with pytest.raises(ValueError, match="A1 x A1"):
        simple_type("D", 2)
    with pytest.raises(ValueError, match="A3"):
        simple_type("D", 3)


def test_parse_shape():
    s = parse_shape("c^2 x A3 x D5")
    assert s.center_dim == 2
    assert s.simples == (SimpleType("A", 3), SimpleType("D", 5))
    assert s.rank == 10
    assert parse_shape("G2").simples == (SimpleType("G", 2),)
    assert parse_shape("c x c x A1").center_dim == 2
    assert parse_shape("c^3").rank == 3
    assert parse_shape("0").rank == 0
    assert str(parse_shape("c^2 x A3 x D5")) == "c^2 x A3 x D5"
    for bad in ["c^x", "A", "H4", "A3 x", "D3"]:
        with pytest.raises(ValueError):
            parse_shape(bad)


# ---------------------------------------------------------------------------
# root sets against the Euclidean oracle


@pytest.mark.parametrize("t", ALL_SMALL + [SimpleType("E", 6)],
                         ids=str)
def test_roots_match_euclidean_realization(t):
    rs = rs_of(t)
    ours = {eo.to_euclid(t, r.coords) for r in rs.roots}
    assert ours == eo.euclid_roots(t)
    assert len(rs.roots) == len(ours)          # conversion is injective


@pytest.mark.parametrize("t", [SimpleType("E", 7), SimpleType("E", 8)],
                         ids=str)
def test_large_e_series_counts(t):
    rs = rs_of(t)
    ours = {eo.to_euclid(t, r.coords) for r in rs.roots}
    assert ours == eo.euclid_roots(t)


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_sym_form_matches_euclidean_dot(t):
    rs = rs_of(t)
    roots = list(rs.roots)
    for a in roots:
        va = eo.to_euclid(t, a.coords)
        for b in roots:
            vb = eo.to_euclid(t, b.coords)
            assert rs.sym_form(a, b) == eo.dot(va, vb)


# ---------------------------------------------------------------------------
# Cartan integers and strings


@pytest.mark.parametrize("t", ALL_SMALL, ids=str)
def test_cartan_int_vs_root_string(t):
    rs = rs_of(t)
    roots = list(rs.roots)
    for a in roots:
        for b in roots:
            if a == b or a == -b:
                continue
            c = rs.cartan_int(a, b)
            assert c in (-3, -2, -1, 0, 1, 2, 3)
            assert c * rs.cartan_int(b, a) in (0, 1, 2, 3)
            p, q = rs.root_string(a, b)
            assert p <= 0 <= q
            assert c == -(p + q)
            # string membership really is an interval
            for nlift in range(p, q + 1):
                v = Root(a.comp, tuple(x + nlift * y
                                       for x, y in zip(a.coords, b.coords)))
                assert rs.is_root(v)


def test_root_string_errors():
    rs = rs_of(SimpleType("A", 2))
    a = rs.positives[0]
    with pytest.raises(ValueError):
        rs.root_string(a, a)
    with pytest.raises(ValueError):
        rs.root_string(a, -a)
    with pytest.raises(ValueError):
        rs.cartan_int(a, Root(0, (5, 5)))


def test_cross_component_orthogonality():
    rs = build(parse_shape("A1 x A1"))
    a = [r for r in rs.positives if r.comp == 0][0]
    b = [r for r in rs.positives if r.comp == 1][0]
    assert rs.cartan_int(a, b) == 0
    assert rs.root_string(a, b) == (0, 0)
    assert rs.sym_form(a, b) == 0


# ---------------------------------------------------------------------------
# named Cartan matrices (Bourbaki)


def test_cartan_matrix_literals():
    from stemhc.rootsystems import cartan_matrix
    assert cartan_matrix(SimpleType("G", 2)) == [[2, -1], [-3, 2]]
    assert cartan_matrix(SimpleType("F", 4)) == [
        [2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    assert cartan_matrix(SimpleType("B", 3)) == [
        [2, -1, 0], [-1, 2, -2], [0, -1, 2]]
    assert cartan_matrix(SimpleType("C", 3)) == [
        [2, -1, 0], [-1, 2, -1], [0, -2, 2]]
    assert cartan_matrix(SimpleType("D", 4)) == [
        [2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]


def test_highest_roots_of_full_systems():
    cases = {
        SimpleType("A", 3): (1, 1, 1),
        SimpleType("B", 3): (1, 2, 2),
        SimpleType("C", 3): (2, 2, 1),
        SimpleType("D", 4): (1, 2, 1, 1),
        SimpleType("F", 4): (2, 3, 4, 2),
        SimpleType("G", 2): (3, 2),
        SimpleType("E", 6): (1, 2, 2, 3, 2, 1),
    }
    for t, coords in cases.items():
        rs = rs_of(t)
        tops = rs.highest_roots(set(rs.roots))
        assert tops == [Root(0, coords)]


# ---------------------------------------------------------------------------
# subsets


def test_is_closed_and_components():
    rs = rs_of(SimpleType("A", 3))
    a1, a2, a3 = rs.simple_roots(0)
    sub = {a1, -a1, a3, -a3}
    assert rs.is_closed(sub)
    comps = rs.irreducible_components(sub)
    assert len(comps) == 2
    # canonical component order sorts by minimal root in (height, lex) order
    assert rs.highest_roots(sub) == [a3, a1]
    assert not rs.is_closed({a1, a2, -a1, -a2})   # misses a1+a2
    with pytest.raises(ValueError):
        rs.irreducible_components({a1})
    with pytest.raises(ValueError):
        rs.highest_roots({a1, a2, -a1, -a2})


@pytest.mark.parametrize("t", ALL_SMALL + [SimpleType("E", 6)], ids=str)
def test_component_type_of_full_system(t):
    rs = rs_of(t)
    got = rs.component_type(set(rs.roots))
    if t == SimpleType("C", 2):
        assert got == SimpleType("B", 2)
    else:
        assert got == t


def test_component_type_of_proper_subsystems():
    # inside A3: single root lines and an A2
    rs = rs_of(SimpleType("A", 3))
    a1, a2, a3 = rs.simple_roots(0)
    assert rs.component_type({a1, -a1}) == SimpleType("A", 1)
    a12 = Root(0, (1, 1, 0))
    assert rs.component_type({a1, a2, a12, -a1, -a2, -a12}) == SimpleType("A", 2)
    # inside B3: the long subsystem {+-e_i +- e_j} is a D3 ~ A3
    rsb = rs_of(SimpleType("B", 3))
    longs = {r for r in rsb.roots if rsb.norm2(r) == 2}
    assert rsb.component_type(longs) == SimpleType("A", 3)
    # inside G2: the long roots form an A2
    rsg = rs_of(SimpleType("G", 2))
    longg = {r for r in rsg.roots if rsg.norm2(r) == 6}
    assert rsg.component_type(longg) == SimpleType("A", 2)


def test_reducedness_and_pairing():
    rs = rs_of(SimpleType("G", 2))
    for r in rs.positives:
        assert not rs.is_root(Root(0, tuple(2 * c for c in r.coords)))
    a1, a2 = rs.simple_roots(0)
    assert rs.pairing(a2, 0) == -3
    assert rs.pairing(a1, 1) == -1
