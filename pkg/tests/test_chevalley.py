import random
from fractions import Fraction
from itertools import combinations

import pytest

from stemhc.chevalley import bracket, invariant_form, make_basis, tau
from stemhc.rootsystems import Root, SimpleType, parse_shape, root_sub, shape
from stemhc.scalars import TowerScalar, ZERO, ONE, I, EIGHTH_ROOT
from stemhc.stem import compute_stem


RANK_LE_4 = [
    SimpleType("A", 1), SimpleType("A", 2), SimpleType("A", 3),
    SimpleType("A", 4), SimpleType("B", 2), SimpleType("B", 3),
    SimpleType("B", 4), SimpleType("C", 2), SimpleType("C", 3),
    SimpleType("C", 4), SimpleType("D", 4), SimpleType("F", 4),
    SimpleType("G", 2),
]


def cb_of(t):
    return make_basis(shape(t))


# ---------------------------------------------------------------------------
# structure constants


@pytest.mark.parametrize("t", RANK_LE_4 + [SimpleType("D", 5)], ids=str)
def test_constant_magnitudes_are_string_lengths(t):
    cb = cb_of(t)
    rs = cb.rs
    for (a, b), n in cb.n_const.items():
        p = 0
        v = root_sub(b, a)
        while v in rs.root_set:
            p += 1
            v = root_sub(v, a)
        assert abs(n) == p + 1, (a, b, n)


@pytest.mark.parametrize("t", RANK_LE_4, ids=str)
def test_constant_antisymmetries(t):
    cb = cb_of(t)
    for (a, b), n in cb.n_const.items():
        assert cb.n_const[(b, a)] == -n
        assert cb.n_const[(-a, -b)] == -n


@pytest.mark.parametrize("t", RANK_LE_4, ids=str)
def test_jacobi_exhaustive(t):
    cb = cb_of(t)
    basis = [cb.basis_element(k) for k in cb.basis_keys]
    zero = cb.zero()
    for x, y, z in combinations(basis, 3):
        total = (cb.bracket(x, cb.bracket(y, z))
                 + cb.bracket(y, cb.bracket(z, x))
                 + cb.bracket(z, cb.bracket(x, y)))
        assert total == zero


@pytest.mark.parametrize("t", [SimpleType("D", 5), SimpleType("E", 6),
                               SimpleType("C", 7), SimpleType("E", 8)],
                         ids=str)
def test_jacobi_sampled_high_rank(t):
    cb = cb_of(t)
    rng = random.Random(20260814)
    keys = cb.basis_keys
    zero = cb.zero()
    for _ in range(250):
        x, y, z = (cb.basis_element(rng.choice(keys)) for _ in range(3))
        total = (cb.bracket(x, cb.bracket(y, z))
                 + cb.bracket(y, cb.bracket(z, x))
                 + cb.bracket(z, cb.bracket(x, y)))
        assert total == zero


@pytest.mark.parametrize("t", RANK_LE_4, ids=str)
def test_coroot_normalization(t):
    cb = cb_of(t)
    rs = cb.rs
    for a in rs.roots:
        # [E_a, E_{-a}] is the coroot, and a(H_a) = 2
        h = cb.bracket(cb.E(a), cb.E(-a))
        assert h == cb.H_of_root(a)
        assert cb.eval_root(a, cb.hroot[a]) == TowerScalar(2)


def test_h_acts_diagonally():
    cb = cb_of(SimpleType("G", 2))
    rs = cb.rs
    h = cb.H_vec([TowerScalar(2), TowerScalar(-3)])
    for b in rs.roots:
        got = cb.bracket(h, cb.E(b))
        want = cb.E(b, cb.eval_root(b, h.h))
        assert got == want


def test_cross_component_brackets_vanish():
    cb = make_basis(parse_shape("A1 x A1"))
    rs = cb.rs
    a = [r for r in rs.positives if r.comp == 0][0]
    b = [r for r in rs.positives if r.comp == 1][0]
    assert cb.bracket(cb.E(a), cb.E(b)) == cb.zero()
    assert cb.bracket(cb.E(a), cb.E(-b)) == cb.zero()


def test_mismatched_bases_rejected():
    cb1 = cb_of(SimpleType("A", 2))
    cb2 = make_basis(parse_shape("A2 x A1"))
    with pytest.raises(ValueError):
        cb1.bracket(cb1.E(cb1.rs.positives[0]), cb2.E(cb2.rs.positives[0]))
    with pytest.raises(ValueError):
        cb1.E(cb1.rs.positives[0]) + cb2.E(cb2.rs.positives[0])


# ---------------------------------------------------------------------------
# the compact conjugation


@pytest.mark.parametrize("t", [SimpleType("A", 3), SimpleType("B", 3),
                               SimpleType("G", 2)], ids=str)
def test_tau_properties(t):
    cb = cb_of(t)
    rs = cb.rs
    rng = random.Random(7)

    def rand_elem():
        x = cb.zero()
        for _ in range(3):
            r = rng.choice(rs.roots)
            c = TowerScalar(rng.randint(-3, 3), rng.randint(-3, 3),
                            rng.randint(-2, 2), rng.randint(-2, 2))
            x = x + cb.E(r, c)
        hv = [TowerScalar(rng.randint(-2, 2), rng.randint(-2, 2))
              for _ in range(cb.total_rank)]
        return x + cb.H_vec(hv)

    for a in rs.roots:
        assert cb.tau(cb.E(a)) == cb.E(-a, -ONE)
    for _ in range(25):
        x, y = rand_elem(), rand_elem()
        assert cb.tau(cb.tau(x)) == x
        assert cb.tau(x + y) == cb.tau(x) + cb.tau(y)
        assert cb.tau(x.scale(I)) == cb.tau(x).scale(-I)
        assert cb.tau(cb.bracket(x, y)) == cb.bracket(cb.tau(x), cb.tau(y))


def test_tau_fixes_compact_generators():
    cb = cb_of(SimpleType("B", 2))
    g = cb.rs.positives[-1]
    for rho in (ONE, I, EIGHTH_ROOT):
        for v in (cb.X(g, rho), cb.Y(g, rho), cb.W(g)):
            assert cb.tau(v) == v


# ---------------------------------------------------------------------------
# the invariant form, against the dual Coxeter oracle


def dual_coxeter(t: SimpleType) -> int:
    f, n = t.family, t.rank
    return {"A": n + 1, "B": 2 * n - 1, "C": n + 1, "D": 2 * n - 2,
            "E": {6: 12, 7: 18, 8: 30}.get(n), "F": 9, "G": 4}[f]


@pytest.mark.parametrize("t", RANK_LE_4 + [SimpleType("D", 5),
                                           SimpleType("E", 6)], ids=str)
def test_killing_numbers_match_dual_coxeter(t):
    cb = cb_of(t)
    rs = cb.rs
    theta = rs.highest_roots(set(rs.roots))[0]
    n2t = rs.norm2(theta)
    hv = dual_coxeter(t)
    for a in rs.positives:
        expected = Fraction(2 * hv) * n2t / rs.norm2(a)
        assert cb.killing_e[a] == expected
    off = 0
    for i in range(t.rank):
        ai = rs.simple_roots(0)[i]
        for j in range(t.rank):
            aj = rs.simple_roots(0)[j]
            expected = (Fraction(2 * hv) * 2 * rs.sym_form(ai, aj) * n2t
                        / (rs.norm2(ai) * rs.norm2(aj)))
            assert cb.killing_h[off + i][off + j] == expected


@pytest.mark.parametrize("t", [SimpleType("A", 3), SimpleType("C", 3),
                               SimpleType("G", 2)], ids=str)
def test_form_orthogonality_pattern(t):
    cb = cb_of(t)
    rs = cb.rs
    for a in rs.roots:
        for b in rs.roots:
            v = cb.invariant_form(cb.E(a), cb.E(b))
            if b == -a:
                assert v and v.is_rational() and v.as_fraction() > 0
            else:
                assert not v
        h = cb.H_of_root(a)
        assert not cb.invariant_form(cb.E(a), h)


@pytest.mark.parametrize("t", [SimpleType("A", 2), SimpleType("B", 2)],
                         ids=str)
def test_form_invariance(t):
    cb = cb_of(t)
    rng = random.Random(3)
    basis = [cb.basis_element(k) for k in cb.basis_keys]
    for _ in range(60):
        x, y, z = (rng.choice(basis) for _ in range(3))
        lhs = cb.invariant_form(cb.bracket(x, y), z)
        rhs = cb.invariant_form(x, cb.bracket(y, z))
        assert lhs == rhs


def test_compact_vectors_have_negative_norm():
    cb = cb_of(SimpleType("C", 3))
    for g in cb.rs.positives:
        for rho in (ONE, I, EIGHTH_ROOT):
            for v in (cb.X(g, rho), cb.Y(g, rho), cb.W(g)):
                n = cb.invariant_form(v, v)
                assert n.is_rational() and n.as_fraction() < 0
        x, y, w = cb.X(g), cb.Y(g), cb.W(g)
        assert not cb.invariant_form(x, y)
        assert not cb.invariant_form(x, w)
        assert not cb.invariant_form(y, w)


def test_center_form_convention():
    cb = make_basis(parse_shape("c^2 x A1"))
    c0 = cb.H_vec([ZERO, TowerScalar(0), ONE, ZERO][:cb.total_rank])
    # total_rank = 3: coroot coordinate then two center coordinates
    c1 = cb.H_vec([ZERO, ONE, ZERO])
    c2 = cb.H_vec([ZERO, ZERO, ONE])
    assert cb.invariant_form(c1, c1) == ONE
    assert cb.invariant_form(c2, c2) == ONE
    assert not cb.invariant_form(c1, c2)
    # the compact center basis i*c_j has norm -1
    ic = c1.scale(I)
    assert cb.invariant_form(ic, ic) == -ONE
    # center commutes with everything and is tau-fixed after the i twist
    e = cb.E(cb.rs.positives[0])
    assert cb.bracket(c1, e) == cb.zero()
    assert cb.tau(ic) == ic
    del c0


def test_sl2_triple_brackets():
    cb = cb_of(SimpleType("A", 1))
    a = cb.rs.positives[0]
    E, F, H = cb.E(a), cb.E(-a), cb.H_of_root(a)
    assert cb.bracket(E, F) == H
    assert cb.bracket(H, E) == E.scale(TowerScalar(2))
    assert cb.bracket(H, F) == F.scale(TowerScalar(-2))
    assert cb.invariant_form(E, F) == TowerScalar(4)
    assert cb.invariant_form(H, H) == TowerScalar(8)
