"""Stems: the canonical strongly orthogonal families obtained by repeatedly
peeling highest roots and their wings off a root system.

For a positive root zeta the wing set is
    Phi_zeta^+ = { beta in Delta^+ : zeta - beta in Delta^+ },
always taken with respect to the full positive system.  The stem Gamma is what
the peeling leaves behind as the removed highest roots; Delta^+ splits as the
disjoint union of Gamma and all wing sets, and an exhaustive search
(`all_partition_stems`) confirms Gamma is the only subset with that property.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .reporting import CheckReport
from .rootsystems import (
    ReductiveShape, Root, RootSystem, build_cached, root_sub, root_sum,
)


def phi_plus_set(rs: RootSystem, zeta: Root):
    """Wing set of a positive root, w.r.t. the full positive system."""
    if zeta not in rs.root_set or not zeta.positive:
        raise ValueError("zeta must be a positive root: %s" % (zeta,))
    out = set()
    for b in rs.positives:
        if b.comp != zeta.comp:
            continue
        d = root_sub(zeta, b)
        if d in rs.root_set and d.positive:
            out.add(b)
    return out


@dataclass
class Stem:
    rs: RootSystem
    elements: tuple          # peeling order: maximal roots first
    phi: dict                # stem root -> frozenset of positive wings
    theta: dict              # stem root -> its full peeled component
    stage_of: dict           # stem root -> peeling stage (0-based)

    def index(self, g: Root) -> int:
        """1-based position in the canonical order."""
        return self.elements.index(g) + 1

    def precedes(self, g: Root, d: Root) -> bool:
        """g < d in the stem order, i.e. d lies inside Theta_g."""
        return d != g and d in self.theta[g]

    def comparable(self, g, d):
        return g == d or self.precedes(g, d) or self.precedes(d, g)

    def up_closure(self, subset):
        out = set()
        for g in subset:
            if g not in self.theta:
                raise ValueError("not a stem root: %s" % (g,))
            out.add(g)
            for d in self.elements:
                if self.precedes(g, d):
                    out.add(d)
        return frozenset(out)

    def minimal_roots(self):
        """The stage-0 elements: exactly the highest roots of the components
        (the minimal elements of the stem order)."""
        return tuple(g for g in self.elements if self.stage_of[g] == 0)

    def hasse_edges(self):
        """Covering pairs (g, d) with g < d, arrows pointing deeper."""
        out = []
        for g in self.elements:
            for d in self.elements:
                if not self.precedes(g, d):
                    continue
                if any(self.precedes(g, m) and self.precedes(m, d)
                       for m in self.elements):
                    continue
                out.append((g, d))
        return out

    @property
    def srank(self):
        return 2 * len(self.elements)


def compute_stem(rs: RootSystem, subset=None) -> Stem:
    """Peel highest roots stage by stage.

    Components at each stage are processed in canonical order (ascending
    minimal positive root), so the element list is a fixed linear extension of
    the stem order with the maximal roots of the algebra first.
    """
    remaining = set(rs.roots) if subset is None else set(subset)
    for r in remaining:
        assert -r in remaining, "subset must be symmetric"
    elements = []
    phi = {}
    theta = {}
    stage_of = {}
    stage = 0
    while remaining:
        comps = rs.irreducible_components(remaining)
        peel = []
        for comp in comps:
            g = rs.highest_roots(comp)[0]
            wings = phi_plus_set(rs, g)
            pos_comp = {r for r in comp if r.positive}
            assert wings <= pos_comp, "wings must stay inside the component"
            elements.append(g)
            theta[g] = comp
            phi[g] = frozenset(wings)
            stage_of[g] = stage
            peel.append((g, wings))
        for g, wings in peel:
            remaining.discard(g)
            remaining.discard(-g)
            for w in wings:
                remaining.discard(w)
                remaining.discard(-w)
        if remaining and not rs.is_closed(remaining):
            raise AssertionError("peeling remainder is not closed")
        stage += 1
    stem = Stem(rs, tuple(elements), phi, theta, stage_of)
    # the defining partition, checked on every build
    if subset is None:
        seen = {}
        for g in stem.elements:
            for r in set([g]) | set(stem.phi[g]):
                assert r not in seen, "wing blocks overlap"
                seen[r] = g
        assert len(seen) == len(rs.positives), "wing blocks miss roots"
    return stem


@lru_cache(maxsize=None)
def stem_of(shape: ReductiveShape) -> Stem:
    return compute_stem(build_cached(shape))


def phi_plus(stem: Stem, zeta: Root):
    """Wings of any positive root (cached for stem roots)."""
    if zeta in stem.phi:
        return set(stem.phi[zeta])
    return phi_plus_set(stem.rs, zeta)


def srank(x) -> int:
    """Twice the stem size; 0 for abelian shapes.  Additive over factors."""
    if isinstance(x, Stem):
        return x.srank
    if isinstance(x, RootSystem):
        return 2 * len(compute_stem(x).elements)
    if isinstance(x, ReductiveShape):
        return stem_of(x).srank
    raise TypeError("srank expects a shape, root system, or stem")


def verify_stem_properties(stem: Stem) -> CheckReport:
    """Exhaustively check the structural facts the construction relies on."""
    rs = stem.rs
    rep = CheckReport()
    G = stem.elements

    # partition of the positive system
    count = 0
    bad = []
    seen = set()
    for g in G:
        block = {g} | set(stem.phi[g])
        if seen & block:
            bad.append("block of %s overlaps" % (g,))
        seen |= block
        count += len(block)
        if len(stem.phi[g]) % 2 != 0:
            bad.append("odd wing count at %s" % (g,))
    if seen != set(rs.positives):
        bad.append("blocks do not cover the positive roots")
    rep.record("wing blocks partition the positive system", count, bad)

    # strong orthogonality of the stem
    checked = 0
    bad = []
    for i, g in enumerate(G):
        for d in G[i + 1:]:
            checked += 1
            s, m = root_sum(g, d), root_sub(g, d)
            if (s is not None and s in rs.root_set) or \
               (m is not None and m in rs.root_set):
                bad.append("%s, %s not strongly orthogonal" % (g, d))
            if rs.cartan_int(g, d) != 0:
                bad.append("%s, %s not orthogonal" % (g, d))
    rep.record("stem roots are strongly orthogonal", checked, bad)

    def wing_block(g):
        return set(stem.phi[g]) | {g}

    # comparable pairs: sums/differences fall into the shallower wing set
    checked = 0
    bad = []
    for g in G:
        for d in G:
            if not stem.precedes(g, d):
                continue
            for a in wing_block(g):
                for b in wing_block(d):
                    for v in (root_sum(a, b), root_sub(a, b)):
                        if v is None or v not in rs.root_set:
                            continue
                        checked += 1
                        vv = v if v.positive else -v
                        if vv not in stem.phi[g]:
                            bad.append("%s +- %s escapes wings of %s"
                                       % (a, b, g))
    rep.record("deeper blocks bracket into the shallower wings", checked, bad)

    # sums inside one block only ever produce the stem root
    checked = 0
    bad = []
    for g in G:
        blk = sorted(wing_block(g), key=Root.key)
        for i, a in enumerate(blk):
            for b in blk[i + 1:]:
                s = root_sum(a, b)
                if s in rs.root_set:
                    checked += 1
                    if s != g:
                        bad.append("%s + %s = %s inside block of %s"
                                   % (a, b, s, g))
    rep.record("sums within a block land on its stem root", checked, bad)

    # deeper blocks are invisible to shallower stem roots
    checked = 0
    bad = []
    for d in G:
        for g in G:
            if not stem.precedes(d, g):
                continue
            for a in wing_block(g):
                checked += 1
                s, m = root_sum(a, d), root_sub(a, d)
                if (s in rs.root_set) or (m in rs.root_set) or \
                        rs.cartan_int(a, d) != 0:
                    bad.append("%s sees shallower stem root %s" % (a, d))
    rep.record("deeper blocks are orthogonal to shallower stem roots",
               checked, bad)

    # incomparable stem roots: blocks never interact
    checked = 0
    bad = []
    for i, g in enumerate(G):
        for d in G[i + 1:]:
            if stem.comparable(g, d):
                continue
            for a in wing_block(g):
                for b in wing_block(d):
                    checked += 1
                    s, m = root_sum(a, b), root_sub(a, b)
                    if (s is not None and s in rs.root_set) or \
                       (m is not None and m in rs.root_set):
                        bad.append("incomparable blocks of %s, %s interact"
                                   % (g, d))
    rep.record("incomparable blocks never sum to roots", checked, bad)

    # wings descend through their stem root
    checked = 0
    bad = []
    for g in G:
        for a in stem.phi[g]:
            checked += 1
            down = root_sub(a, g)
            up = root_sum(a, g)
            if not (down in rs.root_set and not down.positive):
                bad.append("%s - %s is not a negative root" % (a, g))
            if up in rs.root_set:
                bad.append("%s + %s is a root" % (a, g))
            if rs.cartan_int(a, g) <= 0:
                bad.append("%s pairs nonpositively with %s" % (a, g))
    rep.record("wings descend through their stem root", checked, bad)

    # every stem root sits over some highest root of the full system
    mins = stem.minimal_roots()
    checked = 0
    bad = []
    for g in G:
        checked += 1
        if not any(g == m or stem.precedes(m, g) for m in mins):
            bad.append("%s dominates no maximal root" % (g,))
    rep.record("every stem root dominates a maximal root", checked, bad)

    # deeper blocks are differences of shallower wings
    checked = 0
    bad = []
    diffs = {}
    for d in G:
        wings_d = stem.phi[d]
        diffs[d] = {root_sub(b1, b2) for b1 in wings_d for b2 in wings_d
                    if b1 != b2}
    for d in G:
        for g in G:
            if not stem.precedes(d, g):
                continue
            for a in wing_block(g):
                checked += 1
                if a not in diffs[d]:
                    bad.append("%s is not a difference of wings of %s"
                               % (a, d))
    rep.record("deeper blocks are differences within shallower wings",
               checked, bad)

    # the stem of a peeled component is the part of the stem above its root
    checked = 0
    bad = []
    for g in G:
        sub = compute_stem(rs, stem.theta[g])
        expected = {d for d in G if d == g or stem.precedes(g, d)}
        checked += 1
        if set(sub.elements) != expected:
            bad.append("stem of component of %s mismatches" % (g,))
    rep.record("component stems agree with the order filter", checked, bad)

    return rep


def all_partition_stems(rs: RootSystem):
    """Every subset S of Delta^+ such that the blocks {zeta} u Phi_zeta^+,
    zeta in S, partition Delta^+.  Exhaustive exact-cover backtracking."""
    pos = sorted(rs.positives, key=Root.key)
    idx = {r: i for i, r in enumerate(pos)}
    blocks = {}
    for z in pos:
        m = 1 << idx[z]
        for b in phi_plus_set(rs, z):
            m |= 1 << idx[b]
        blocks[z] = m
    full = (1 << len(pos)) - 1
    cands = [[] for _ in pos]
    for z in pos:
        m = blocks[z]
        while m:
            low = m & -m
            cands[low.bit_length() - 1].append(z)
            m ^= low
    out = []

    def dfs(covered, chosen):
        if covered == full:
            out.append(frozenset(chosen))
            return
        x = ~covered & full
        i = (x & -x).bit_length() - 1
        for z in cands[i]:
            bz = blocks[z]
            if not (bz & covered):
                dfs(covered | bz, chosen + (z,))

    dfs(0, ())
    return out


def hasse_export(stem: Stem) -> str:
    """The stem order as a DOT digraph; arrows point from a stem root to the
    roots directly above it (deeper in the peeling)."""
    lines = ["digraph stem {"]
    for i, g in enumerate(stem.elements, 1):
        lines.append('  g%d [label="g%d = %s"];' % (i, i, g))
    for a, b in sorted(stem.hasse_edges(),
                       key=lambda e: (stem.index(e[0]), stem.index(e[1]))):
        lines.append("  g%d -> g%d;" % (stem.index(a), stem.index(b)))
    lines.append("}")
    return "\n".join(lines) + "\n"
