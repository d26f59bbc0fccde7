"""Chevalley bases with integer structure constants, exact brackets, the
compact conjugation, and the invariant trace form.

Structure-constant signs are fixed the classical way: walk the positive roots
by height; for each non-simple positive root the minimal-first decomposition
gets N = p+1 > 0, every other decomposition is forced by the Jacobi identity,
and each value is propagated to the full 12-pair orbit of its root triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rootsystems import (
    ReductiveShape, Root, RootSystem, build_cached, root_sub, root_sum,
)
from .scalars import TowerScalar, ZERO, ONE, I, HALF
from .reporting import CheckReport


@dataclass
class AlgebraElement:
    """h is a coordinate vector over (simple coroots per component, center);
    e maps roots to coefficients.  Everything is a TowerScalar."""

    cb: "ChevalleyBasis"
    h: tuple
    e: dict

    def is_zero(self):
        return not any(self.h) and not self.e

    def __add__(self, other):
        if not isinstance(other, AlgebraElement) or other.cb is not self.cb:
            raise ValueError("elements come from different bases")
        e = dict(self.e)
        for r, c in other.e.items():
            s = e.get(r, ZERO) + c
            if s:
                e[r] = s
            else:
                e.pop(r, None)
        return AlgebraElement(self.cb,
                              tuple(a + b for a, b in zip(self.h, other.h)), e)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.cb, tuple(-a for a in self.h),
                              {r: -c for r, c in self.e.items()})

    def scale(self, s) -> "AlgebraElement":
        s = TowerScalar.of(s)
        if not s:
            return self.cb.zero()
        return AlgebraElement(self.cb, tuple(s * a for a in self.h),
                              {r: s * c for r, c in self.e.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.cb is other.cb and self.h == other.h
                and self.e == other.e)

    def coeff(self, root) -> TowerScalar:
        return self.e.get(root, ZERO)

    def __str__(self):
        parts = []
        for r in sorted(self.e, key=Root.key):
            parts.append("(%s) E[%s]" % (self.e[r], r))
        for j, c in enumerate(self.h):
            if c:
                parts.append("(%s) H[%d]" % (c, j))
        return " + ".join(parts) if parts else "0"


class ChevalleyBasis:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        shape = rs.shape
        self.offsets = []
        off = 0
        for t in shape.simples:
            self.offsets.append(off)
            off += t.rank
        self.semisimple_rank = off
        self.total_rank = off + shape.center_dim
        self.center_dim = shape.center_dim
        self.n_const = {}
        for ci in range(len(shape.simples)):
            self._build_constants(ci)
        self._check_constants_complete()
        self.hroot = {}
        for r in rs.roots:
            self.hroot[r] = self._coroot_coords(r)
        # canonical ordering of the full basis, used for matrices
        self.basis_keys = [("e", r) for r in sorted(rs.roots, key=Root.key)]
        self.basis_keys += [("h", j) for j in range(self.total_rank)]
        self.key_index = {k: i for i, k in enumerate(self.basis_keys)}
        self.killing_e = {r: self._trace_e(r) for r in rs.positives}
        self.killing_h = self._killing_h_matrix()

    # -- structure constants --------------------------------------------------

    def _build_constants(self, ci):
        rs = self.rs
        pos = sorted((r for r in rs.positives if r.comp == ci), key=Root.key)
        order = {r: i for i, r in enumerate(pos)}
        posset = set(pos)
        N = self.n_const

        def down_steps(b, a):
            p = 0
            v = root_sub(b, a)
            while v in rs.root_set:
                p += 1
                v = root_sub(v, a)
            return p

        def set_triple(a, b, n):
            """Record N for every ordered pair built from {+-a, +-b, -+(a+b)}."""
            c = root_sum(a, b)
            r1 = n * rs.norm2(a) / rs.norm2(c)    # value for (b, -c)
            r2 = n * rs.norm2(b) / rs.norm2(c)    # value for (-c, a)
            assert r1.denominator == 1 and r2.denominator == 1
            for (u, v), m in (((a, b), n), ((b, -c), int(r1)), ((-c, a), int(r2))):
                N[(u, v)] = m
                N[(v, u)] = -m
                N[(-u, -v)] = -m
                N[(-v, -u)] = m

        for c in pos:
            if c.height < 2:
                continue
            specials = []
            for a in pos:
                b = root_sub(c, a)
                if b in posset and order[a] < order[b]:
                    specials.append((a, b))
            specials.sort(key=lambda ab: order[ab[0]])
            assert specials, "non-simple root with no decomposition"
            a0, b0 = specials[0]
            set_triple(a0, b0, down_steps(b0, a0) + 1)
            for x, y in specials[1:]:
                t = 0
                xm = root_sub(x, a0)
                if xm in rs.root_set:
                    t += N[(-a0, x)] * N[(xm, y)]
                ym = root_sub(y, a0)
                if ym in rs.root_set:
                    t += N[(y, -a0)] * N[(ym, x)]
                denom = N[(c, -a0)]
                assert t % denom == 0
                set_triple(x, y, -t // denom)

    def _check_constants_complete(self):
        rs = self.rs
        for a in rs.roots:
            for b in rs.roots:
                s = root_sum(a, b)
                if s is not None and s in rs.root_set:
                    assert (a, b) in self.n_const, (a, b)

    def _coroot_coords(self, r: Root):
        """H_r = sum m_i (d_i / d_r) H_i as an integer global h-vector."""
        rs = self.rs
        d = rs.dvecs[r.comp]
        dr = rs.norm2(r) / 2
        off = self.offsets[r.comp]
        out = [0] * self.total_rank
        for i, m in enumerate(r.coords):
            if m:
                v = m * d[i] / dr
                assert v.denominator == 1
                out[off + i] = int(v)
        return tuple(out)

    # -- element constructors --------------------------------------------------

    def zero(self):
        return AlgebraElement(self, (ZERO,) * self.total_rank, {})

    def E(self, root, coeff=ONE):
        if root not in self.rs.root_set:
            raise ValueError("not a root: %s" % (root,))
        coeff = TowerScalar.of(coeff)
        return AlgebraElement(self, (ZERO,) * self.total_rank,
                              {root: coeff} if coeff else {})

    def H_vec(self, vec):
        vec = tuple(TowerScalar.of(v) for v in vec)
        assert len(vec) == self.total_rank
        return AlgebraElement(self, vec, {})

    def H_of_root(self, root):
        return self.H_vec(self.hroot[root])

    def basis_element(self, key):
        kind, val = key
        if kind == "e":
            return self.E(val)
        return self.H_vec(tuple(ONE if j == val else ZERO
                                for j in range(self.total_rank)))

    # compact generators attached to a root (phase rho must be unit modulus)
    def W(self, gamma):
        return self.H_of_root(gamma).scale(I * HALF)

    def X(self, gamma, rho=ONE):
        rho = TowerScalar.of(rho)
        return AlgebraElement(self, (ZERO,) * self.total_rank,
                              {gamma: rho * HALF, -gamma: -rho.conj() * HALF})

    def Y(self, gamma, rho=ONE):
        rho = TowerScalar.of(rho)
        ih = I * HALF
        return AlgebraElement(self, (ZERO,) * self.total_rank,
                              {gamma: rho * ih, -gamma: rho.conj() * ih})

    # -- operations --------------------------------------------------------------

    def eval_root(self, alpha: Root, hvec) -> TowerScalar:
        """alpha(h) for a coordinate vector h."""
        off = self.offsets[alpha.comp]
        pair = self.rs._pairings[alpha]
        acc = ZERO
        for j, p in enumerate(pair):
            v = hvec[off + j]
            if v and p:
                acc = acc + v * p
        return acc

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.cb is not self or y.cb is not self:
            raise ValueError("elements come from different bases")
        rs = self.rs
        h = [ZERO] * self.total_rank
        e = {}
        for a, ca in x.e.items():
            for b, cb2 in y.e.items():
                if a.comp != b.comp:
                    continue
                s = root_sum(a, b)
                if s in rs.root_set:
                    v = ca * cb2 * self.n_const[(a, b)]
                    if v:
                        w = e.get(s, ZERO) + v
                        if w:
                            e[s] = w
                        else:
                            e.pop(s, None)
                elif not any(s.coords):
                    coef = ca * cb2
                    for j, m in enumerate(self.hroot[a]):
                        if m:
                            h[j] = h[j] + coef * m
        if any(x.h):
            for b, cb2 in y.e.items():
                w = self.eval_root(b, x.h)
                if w:
                    v = e.get(b, ZERO) + w * cb2
                    if v:
                        e[b] = v
                    else:
                        e.pop(b, None)
        if any(y.h):
            for a, ca in x.e.items():
                w = self.eval_root(a, y.h)
                if w:
                    v = e.get(a, ZERO) - w * ca
                    if v:
                        e[a] = v
                    else:
                        e.pop(a, None)
        return AlgebraElement(self, tuple(h), e)

    def tau(self, x: AlgebraElement) -> AlgebraElement:
        """The compact conjugation: E_a -> -E_{-a}, antilinear, -conj on h."""
        if x.cb is not self:
            raise ValueError("element from another basis")
        h = tuple(-c.conj() for c in x.h)
        e = {}
        for a, c in x.e.items():
            e[-a] = -c.conj()
        return AlgebraElement(self, h, e)

    def invariant_form(self, x: AlgebraElement, y: AlgebraElement) -> TowerScalar:
        """Killing form on the semisimple part, +identity on the center
        (complex basis), computed from the stored honest traces."""
        if x.cb is not self or y.cb is not self:
            raise ValueError("elements from different bases")
        acc = ZERO
        for a, ca in x.e.items():
            cb2 = y.e.get(-a)
            if cb2:
                pos = a if a.positive else -a
                acc = acc + ca * cb2 * self.killing_e[pos]
        if any(x.h) and any(y.h):
            K = self.killing_h
            for i, xi in enumerate(x.h):
                if not xi:
                    continue
                row = K[i]
                for j, yj in enumerate(y.h):
                    if yj and row[j]:
                        acc = acc + xi * yj * row[j]
        return acc

    # -- honest traces ------------------------------------------------------------

    def _ad_int(self, root, vec):
        """ad E_root applied to {key: Fraction} dicts over basis_keys."""
        rs = self.rs
        out = {}

        def add(key, val):
            if not val:
                return
            cur = out.get(key)
            cur = val if cur is None else cur + val
            if cur:
                out[key] = cur
            else:
                del out[key]

        for key, c in vec.items():
            kind, v = key
            if kind == "e":
                b = v
                if b.comp == root.comp:
                    s = root_sum(root, b)
                    if s in rs.root_set:
                        add(("e", s), c * self.n_const[(root, b)])
                    elif not any(s.coords):
                        for j, m in enumerate(self.hroot[root]):
                            if m:
                                add(("h", j), c * m)
            else:
                j = v
                ci = root.comp
                off = self.offsets[ci]
                if off <= j < off + len(root.coords):
                    w = rs._pairings[root][j - off]
                    if w:
                        add(("e", root), -c * w)
        return out

    def _trace_e(self, alpha: Root) -> Fraction:
        """tr(ad E_alpha o ad E_{-alpha}) over the full basis."""
        acc = Fraction(0)
        for key in self.basis_keys:
            v = self._ad_int(-alpha, {key: Fraction(1)})
            v = self._ad_int(alpha, v)
            acc += v.get(key, Fraction(0))
        return acc

    def _killing_h_matrix(self):
        n = self.total_rank
        K = [[Fraction(0)] * n for _ in range(n)]
        for ci in range(len(self.rs.shape.simples)):
            off = self.offsets[ci]
            rank = self.rs.shape.simples[ci].rank
            roots = [r for r in self.rs.roots if r.comp == ci]
            for i in range(rank):
                for j in range(i, rank):
                    s = Fraction(0)
                    for b in roots:
                        s += self.rs._pairings[b][i] * self.rs._pairings[b][j]
                    K[off + i][off + j] = s
                    K[off + j][off + i] = s
        for j in range(self.semisimple_rank, n):
            K[j][j] = Fraction(1)
        return K


@lru_cache(maxsize=None)
def make_basis(shape: ReductiveShape) -> ChevalleyBasis:
    return ChevalleyBasis(build_cached(shape))


def bracket(x, y):
    return x.cb.bracket(x, y)


def tau(x):
    return x.cb.tau(x)


def invariant_form(x, y):
    return x.cb.invariant_form(x, y)


def verify_special_sign_identity(cb: ChevalleyBasis, stem) -> CheckReport:
    """For every stem root g and every two-wing decomposition a + b = g, the
    product N(g,-a) N(g,-b) must be exactly -1 (the sign pattern that squares
    the wing half of the second complex structure to -1)."""
    rep = CheckReport()
    checked = 0
    bad = []
    for g in stem.elements:
        wings = stem.phi[g]
        for a in wings:
            b = root_sub(g, a)
            if b not in wings or a.key() > b.key():
                continue
            checked += 1
            prod = cb.n_const[(g, -a)] * cb.n_const[(g, -b)]
            if prod != -1:
                bad.append("N(%s,-%s) N(%s,-%s) = %d" % (g, a, g, b, prod))
    rep.record("wing sign products equal -1", checked, bad)
    return rep
