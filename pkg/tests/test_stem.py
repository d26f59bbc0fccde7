from fractions import Fraction

import pytest

from stemhc.chevalley import make_basis, verify_special_sign_identity
from stemhc.rootsystems import (
    Root, SimpleType, build, parse_shape, shape,
)
from stemhc.stem import (
    all_partition_stems, compute_stem, hasse_export, phi_plus, srank, stem_of,
    verify_stem_properties,
)
import euclid_oracle as eo


def ev(*entries):
    """Sparse euclid vector: ev((0,1),(1,1)) = e1+e2 in the ambient dim."""
    return entries


def stem_euclid(t):
    st = stem_of(shape(t))
    return [eo.to_euclid(t, g.coords) for g in st.elements]


def unit(n, entries):
    v = [Fraction(0)] * n
    for i, val in entries:
        v[i] = Fraction(val)
    return tuple(v)


# ---------------------------------------------------------------------------
# frozen stem tables


def test_stem_d5_exact_list():
    got = stem_euclid(SimpleType("D", 5))
    want = [unit(5, [(0, 1), (1, 1)]), unit(5, [(2, 1), (3, 1)]),
            unit(5, [(0, 1), (1, -1)]), unit(5, [(2, 1), (3, -1)])]
    assert got == want


def test_stem_d7_set_order_and_subsystems():
    t = SimpleType("D", 7)
    st = stem_of(shape(t))
    eu = {g: eo.to_euclid(t, g.coords) for g in st.elements}
    sums = {unit(7, [(2 * k, 1), (2 * k + 1, 1)]) for k in range(3)}
    diffs = {unit(7, [(2 * k, 1), (2 * k + 1, -1)]) for k in range(3)}
    assert set(eu.values()) == sums | diffs
    rs = st.rs
    by_eu = {v: g for g, v in eu.items()}
    # Theta types: the sum roots carry the descending chain D7, D5, A3; the
    # difference roots carry single lines
    for k, want in [(0, SimpleType("D", 7)), (1, SimpleType("D", 5)),
                    (2, SimpleType("A", 3))]:
        g = by_eu[unit(7, [(2 * k, 1), (2 * k + 1, 1)])]
        assert rs.component_type(st.theta[g]) == want
    for k in range(3):
        g = by_eu[unit(7, [(2 * k, 1), (2 * k + 1, -1)])]
        assert rs.component_type(st.theta[g]) == SimpleType("A", 1)
    # order relation: sum roots form a chain; sum k sits under diff j iff j >= k
    s = [by_eu[unit(7, [(2 * k, 1), (2 * k + 1, 1)])] for k in range(3)]
    d = [by_eu[unit(7, [(2 * k, 1), (2 * k + 1, -1)])] for k in range(3)]
    for k in range(2):
        assert st.precedes(s[k], s[k + 1])
    for k in range(3):
        for j in range(3):
            assert st.precedes(s[k], d[j]) == (j >= k)
    for j in range(3):
        for jj in range(3):
            if j != jj:
                assert not st.precedes(d[j], d[jj])
    # the element list is a linear extension with maximal roots first
    for g in st.elements:
        for h in st.elements:
            if st.precedes(g, h):
                assert st.index(g) < st.index(h)
    assert st.elements[0] == by_eu[unit(7, [(0, 1), (1, 1)])]


def test_stem_e6_chain():
    t = SimpleType("E", 6)
    st = stem_of(shape(t))
    assert len(st.elements) == 4
    assert st.srank == 8
    rs = st.rs
    types = [rs.component_type(st.theta[g]) for g in st.elements]
    assert types == [SimpleType("E", 6), SimpleType("A", 5),
                     SimpleType("A", 3), SimpleType("A", 1)]
    for i in range(3):
        assert st.precedes(st.elements[i], st.elements[i + 1])


@pytest.mark.parametrize("n", range(1, 11))
def test_stem_a_series(n):
    t = SimpleType("A", n)
    st = stem_of(shape(t))
    d = (n + 1) // 2
    assert len(st.elements) == d
    rs = st.rs
    for k, g in enumerate(st.elements, 1):
        assert rs.component_type(st.theta[g]) == SimpleType("A", n - 2 * k + 2)
        # gamma_k = e_k - e_{n+2-k}
        assert eo.to_euclid(t, g.coords) == unit(
            n + 1, [(k - 1, 1), (n + 1 - k, -1)])
    for i in range(d - 1):
        assert st.precedes(st.elements[i], st.elements[i + 1])


def test_stem_b2_and_g2():
    stb = stem_of(shape(SimpleType("B", 2)))
    tb = SimpleType("B", 2)
    assert [eo.to_euclid(tb, g.coords) for g in stb.elements] == \
        [unit(2, [(0, 1), (1, 1)]), unit(2, [(0, 1), (1, -1)])]
    stg = stem_of(shape(SimpleType("G", 2)))
    assert [g.coords for g in stg.elements] == [(3, 2), (1, 0)]


def test_stem_c_series():
    t = SimpleType("C", 3)
    st = stem_of(shape(t))
    assert [eo.to_euclid(t, g.coords) for g in st.elements] == \
        [unit(3, [(0, 2)]), unit(3, [(1, 2)]), unit(3, [(2, 2)])]


# ---------------------------------------------------------------------------
# srank identities


def test_srank_equals_twice_rank_families():
    for text in ["B2", "B3", "B4", "B5", "B6", "B7", "B8",
                 "C2", "C3", "C4", "C5", "C6", "C7", "C8",
                 "D4", "D6", "D8", "E7", "E8", "F4", "G2"]:
        s = parse_shape(text)
        assert srank(s) == 2 * s.rank, text


def test_srank_odd_d_and_e6():
    assert srank(parse_shape("D5")) == 8
    assert srank(parse_shape("D7")) == 12
    assert srank(parse_shape("E6")) == 8


def test_srank_additive_and_abelian():
    assert srank(parse_shape("c^3")) == 0
    assert srank(parse_shape("0")) == 0
    assert srank(parse_shape("A2")) == 2
    assert srank(parse_shape("A2 x A2")) == 4
    assert srank(parse_shape("c^2 x G2")) == 4
    assert srank(parse_shape("A3 x B2")) == 4 + 4


# ---------------------------------------------------------------------------
# wings


def test_phi_plus_d4_example():
    t = SimpleType("D", 4)
    st = stem_of(shape(t))
    g = st.elements[0]
    assert eo.to_euclid(t, g.coords) == unit(4, [(0, 1), (1, 1)])
    wings = {eo.to_euclid(t, b.coords) for b in phi_plus(st, g)}
    want = set()
    for i in (0, 1):
        for j in (2, 3):
            want.add(unit(4, [(i, 1), (j, 1)]))
            want.add(unit(4, [(i, 1), (j, -1)]))
    assert wings == want
    assert len(wings) == 8


def test_phi_plus_requires_positive_root():
    st = stem_of(shape(SimpleType("A", 2)))
    rs = st.rs
    with pytest.raises(ValueError):
        phi_plus(st, -rs.positives[0])
    with pytest.raises(ValueError):
        phi_plus(st, Root(0, (5, 5)))


def test_phi_plus_even_cardinality_on_stem():
    for text in ["A4", "B3", "C4", "D5", "F4", "G2", "E6"]:
        st = stem_of(parse_shape(text))
        for g in st.elements:
            assert len(st.phi[g]) % 2 == 0


# ---------------------------------------------------------------------------
# properties and uniqueness


@pytest.mark.parametrize("text", ["A1", "A2", "A3", "A4", "A5", "B2", "B3",
                                  "B4", "C2", "C3", "C4", "D4", "D5", "F4",
                                  "G2", "E6", "A2 x A2", "c^2 x A3 x B2"])
def test_verify_stem_properties(text):
    st = stem_of(parse_shape(text))
    rep = verify_stem_properties(st)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("text", ["A1", "A2", "A3", "A4", "A5", "B2", "B3",
                                  "B4", "C2", "C3", "C4", "D4", "D5", "G2"])
def test_partition_stem_is_unique(text):
    rs = build(parse_shape(text))
    assert len(rs.positives) <= 20
    sols = all_partition_stems(rs)
    st = compute_stem(rs)
    assert sols == [frozenset(st.elements)]


def test_linear_extension_property():
    for text in ["A6", "B5", "C5", "D6", "E6", "F4", "A3 x D4"]:
        st = stem_of(parse_shape(text))
        for g in st.elements:
            for h in st.elements:
                if st.precedes(g, h):
                    assert st.index(g) < st.index(h)
        for g in st.minimal_roots():
            assert st.stage_of[g] == 0


def test_hasse_export_e6_is_a_path():
    st = stem_of(parse_shape("E6"))
    dot = hasse_export(st)
    assert dot.startswith("digraph stem {")
    assert "g1 -> g2;" in dot and "g2 -> g3;" in dot and "g3 -> g4;" in dot
    assert "g1 -> g3;" not in dot
    assert dot.count("->") == 3


def test_hasse_export_d5_shape():
    st = stem_of(parse_shape("D5"))
    dot = hasse_export(st)
    edges = {line.strip().rstrip(";") for line in dot.splitlines()
             if "->" in line}
    assert edges == {"g1 -> g2", "g1 -> g3", "g2 -> g4"}


# ---------------------------------------------------------------------------
# wing sign products (needs the structure constants)


@pytest.mark.parametrize("text", ["A3", "A4", "B3", "C3", "D4", "D5", "F4",
                                  "G2", "E6"])
def test_special_sign_identity(text):
    s = parse_shape(text)
    cb = make_basis(s)
    st = stem_of(s)
    rep = verify_special_sign_identity(cb, st)
    assert rep.ok, rep.summary()
    assert rep.total_checked == sum(len(st.phi[g]) for g in st.elements) // 2
