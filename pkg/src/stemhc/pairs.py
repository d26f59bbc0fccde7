"""Pairs (g, k) built from substems: the numeric acceptance criterion and the
dimension bookkeeping of the reductive complement.

A subalgebra is described by an up-closed subset of the stem (its substem)
plus an optional extra central torus dimension.  Everything here is counting;
the actual basis construction lives in hcstruct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .reporting import CheckReport
from .rootsystems import ReductiveShape, Root, build_cached, parse_shape, \
    root_sum
from .stem import Stem, stem_of


class Substem:
    """An up-closed subset of the stem.

    Input may mix 1-based indices (canonical stem order) and roots; whatever
    comes in is up-closed, so naming any stem root pulls in everything above
    it."""

    def __init__(self, stem: Stem, members=()):
        roots = []
        for m in members:
            if isinstance(m, Root):
                if m not in stem.theta:
                    raise ValueError("not a stem root: %s" % (m,))
                roots.append(m)
            elif isinstance(m, int):
                if not 1 <= m <= len(stem.elements):
                    raise ValueError("stem index out of range: %d" % m)
                roots.append(stem.elements[m - 1])
            else:
                raise TypeError("substem members are roots or indices")
        self.stem = stem
        self.members = stem.up_closure(roots) if roots else frozenset()
        self.indices = tuple(sorted(stem.index(g) for g in self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members

    def __eq__(self, other):
        return (isinstance(other, Substem) and other.stem is self.stem
                and other.members == self.members)

    def __repr__(self):
        return "Substem(%s)" % (list(self.indices),)

    def complement_roots(self):
        """Stem roots outside the substem, in stem order."""
        return tuple(g for g in self.stem.elements if g not in self.members)

    def member_roots(self):
        return tuple(g for g in self.stem.elements if g in self.members)


def enumerate_substems(stem: Stem):
    """All up-closed subsets, sorted by size then indices."""
    n = len(stem.elements)
    out = []
    for mask in range(1 << n):
        chosen = [stem.elements[i] for i in range(n) if mask >> i & 1]
        ok = True
        for g in chosen:
            for d in stem.elements:
                if stem.precedes(g, d) and d not in chosen:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Substem(stem, chosen))
    out.sort(key=lambda s: (len(s.indices), s.indices))
    return out


def minimal_elements(sub: Substem):
    """The antichain generating the substem; checks that the peeled
    components of its members tile the subalgebra's root set."""
    stem = sub.stem
    mins = tuple(g for g in stem.elements if g in sub.members
                 and not any(d in sub.members and stem.precedes(d, g)
                             for d in stem.elements))
    seen = set()
    for g in mins:
        th = stem.theta[g]
        assert not (seen & th), "component tiles overlap"
        seen |= th
    assert seen == delta_k(sub), "component tiles miss roots"
    return mins


def delta_k(sub: Substem):
    """The root set of the subalgebra: all wing blocks of the substem."""
    stem = sub.stem
    out = set()
    for g in sub.members:
        out.add(g)
        out.add(-g)
        for w in stem.phi[g]:
            out.add(w)
            out.add(-w)
    return frozenset(out)


@dataclass(frozen=True)
class PairSpec:
    """Shape of g, canonical substem indices, extra torus dimension of k."""
    shape: ReductiveShape
    substem_indices: tuple
    o_k_dim: int = 0

    def stem(self) -> Stem:
        return stem_of(self.shape)

    def substem(self) -> Substem:
        return Substem(self.stem(), self.substem_indices)


def make_pair_spec(shape, substem=(), o_k_dim=0) -> PairSpec:
    if isinstance(shape, str):
        shape = parse_shape(shape)
    sub = Substem(stem_of(shape), substem)
    return PairSpec(shape, sub.indices, int(o_k_dim))


REASON_DIM_NOT_POSITIVE = "DIM_NOT_POSITIVE"
REASON_DIM_NOT_MOD4 = "DIM_NOT_MOD4"
REASON_DEFICIENCY_NEGATIVE = "DEFICIENCY_NEGATIVE"


@dataclass(frozen=True)
class PairReport:
    spec: PairSpec
    rank_g: int
    srank_g: int
    rank_k: int
    srank_k: int
    rank_k_semisimple: int
    dim_g: int
    dim_k: int
    dim_diff: int
    deficiency: int
    reasons: tuple
    verdict: bool

    def to_dict(self):
        return {
            "shape": str(self.spec.shape),
            "substem": list(self.spec.substem_indices),
            "o_k_dim": self.spec.o_k_dim,
            "rank_g": self.rank_g, "srank_g": self.srank_g,
            "rank_k": self.rank_k, "srank_k": self.srank_k,
            "rank_k_semisimple": self.rank_k_semisimple,
            "dim_g": self.dim_g, "dim_k": self.dim_k,
            "dim_diff": self.dim_diff, "deficiency": self.deficiency,
            "reasons": list(self.reasons), "verdict": self.verdict,
        }


def _root_coord_vector(rs, r: Root, offsets, width):
    v = [Fraction(0)] * width
    off = offsets[r.comp]
    for i, c in enumerate(r.coords):
        v[off + i] = Fraction(c)
    return v


def subsystem_rank(rs, roots) -> int:
    offsets = []
    off = 0
    for t in rs.shape.simples:
        offsets.append(off)
        off += t.rank
    if not roots:
        return 0
    mat = [_root_coord_vector(rs, r, offsets, off) for r in roots]
    return linalg.rank(mat)


def check_pair(spec: PairSpec) -> PairReport:
    """Evaluate the numeric criterion: positive dimension gap, divisible by
    four, and nonnegative deficiency."""
    shape = spec.shape
    rs = build_cached(shape)
    stem = spec.stem()
    sub = spec.substem()
    rank_g = shape.rank
    srank_g = stem.srank
    srank_k = 2 * len(sub.members)
    dk = delta_k(sub)
    rank_s = subsystem_rank(rs, [r for r in dk if r.positive])
    dim_center = rank_g - len(stem.elements)       # central directions in h
    available = dim_center - (rank_s - len(sub.members))
    if spec.o_k_dim < 0:
        raise ValueError("o_k_dim must be nonnegative")
    if spec.o_k_dim > available:
        raise ValueError(
            "o_k_dim = %d exceeds the %d available central directions"
            % (spec.o_k_dim, available))
    rank_k = rank_s + spec.o_k_dim
    dim_g = rank_g + len(rs.roots)
    dim_k = rank_k + len(dk)
    dim_diff = dim_g - dim_k
    deficiency = rank_g + srank_k - rank_k - srank_g
    reasons = []
    if dim_diff <= 0:
        reasons.append(REASON_DIM_NOT_POSITIVE)
    if dim_diff % 4 != 0:
        reasons.append(REASON_DIM_NOT_MOD4)
    if deficiency < 0:
        reasons.append(REASON_DEFICIENCY_NEGATIVE)
    return PairReport(spec, rank_g, srank_g, rank_k, srank_k, rank_s,
                      dim_g, dim_k, dim_diff, deficiency,
                      tuple(reasons), not reasons)


@dataclass(frozen=True)
class ComplementData:
    spec: PairSpec
    gamma_p: tuple           # stem roots outside the substem, stem order
    delta_p_plus: tuple      # their wing blocks, sorted
    dim_h_p: int             # Cartan directions lost to p
    dim_o_p: int             # central directions inside p
    dim_w_p: int             # one compact coroot line per free stem root
    dim_z_p: int             # their partners inside o_p
    dim_j_p: int             # what remains of o_p, always divisible by 4
    dim_p: int

    def to_dict(self):
        return {"gamma_p": [str(g) for g in self.gamma_p],
                "wing_roots": len(self.delta_p_plus),
                "dim_h_p": self.dim_h_p, "dim_o_p": self.dim_o_p,
                "dim_w_p": self.dim_w_p, "dim_z_p": self.dim_z_p,
                "dim_j_p": self.dim_j_p, "dim_p": self.dim_p}


def complement_data(spec: PairSpec, force=False) -> ComplementData:
    """Dimension split of the complement; requires an accepted spec unless
    force is given (the split must still be realizable)."""
    report = check_pair(spec)
    if not report.verdict and not force:
        raise ValueError("pair fails the criterion (%s); pass force=True "
                         "to size the complement anyway"
                         % ", ".join(report.reasons))
    stem = spec.stem()
    sub = spec.substem()
    gamma_p = sub.complement_roots()
    dk = delta_k(sub)
    dp_plus = sorted((r for r in stem.rs.positives if r not in dk),
                     key=Root.key)
    blocks = set()
    for g in gamma_p:
        blocks.add(g)
        blocks |= set(stem.phi[g])
    assert set(dp_plus) == blocks, "complement roots mismatch wing blocks"
    num_p = len(gamma_p)
    dim_h_p = report.rank_g - report.rank_k
    dim_center = report.rank_g - len(stem.elements)
    dim_o_k = report.rank_k - len(sub.members)
    dim_o_p = dim_center - dim_o_k
    dim_j_p = dim_o_p - num_p
    if dim_j_p < 0:
        raise ValueError("central part of the complement is too small "
                         "to pair every free stem root")
    if dim_j_p % 4 != 0:
        raise ValueError("leftover central block of dimension %d is not "
                         "divisible by 4" % dim_j_p)
    dim_p = dim_h_p + 2 * len(dp_plus)
    assert dim_p == report.dim_diff
    assert dim_h_p == 2 * num_p + dim_j_p
    # the two equivalent forms of the deficiency
    assert report.deficiency == dim_h_p - 2 * num_p == dim_o_p - num_p
    return ComplementData(spec, gamma_p, tuple(dp_plus), dim_h_p, dim_o_p,
                          num_p, num_p, dim_j_p, dim_p)


def edm1_equalities(spec: PairSpec):
    """The deficiency and its two complement-side forms; all three agree for
    any spec (it is an arithmetic identity)."""
    report = check_pair(spec)
    stem = spec.stem()
    sub = spec.substem()
    num_p = len(stem.elements) - len(sub.members)
    dim_h_p = report.rank_g - report.rank_k
    dim_center = report.rank_g - len(stem.elements)
    dim_o_p = dim_center - (report.rank_k - len(sub.members))
    triple = (report.deficiency, dim_h_p - 2 * num_p, dim_o_p - num_p)
    return {"deficiency": triple[0], "via_h_p": triple[1],
            "via_o_p": triple[2],
            "equal": triple[0] == triple[1] == triple[2]}


def gmg2_check(spec) -> CheckReport:
    """Wings of free stem roots absorb the subalgebra's roots: for gamma
    outside the substem, beta in Delta_k and alpha in the wings of gamma,
    alpha + beta is either outside Delta or again a wing of gamma, and
    gamma +- beta is never a root.

    Holds for every up-closed substem (the stem properties force it); kept
    as an explicit verification entry point.  Accepts a PairSpec or a bare
    Substem."""
    rep = CheckReport()
    sub = spec if isinstance(spec, Substem) else spec.substem()
    stem = sub.stem
    rs = stem.rs
    dk = delta_k(sub)
    checked = 0
    bad = []
    for g in sub.complement_roots():
        wings = set(stem.phi[g]) | {-w for w in stem.phi[g]}
        for beta in dk:
            checked += 1
            if root_sum(g, beta) in rs.root_set:
                bad.append("%s + %s is a root" % (g, beta))
            for a in wings:
                s = root_sum(a, beta)
                if s is not None and s in rs.root_set:
                    checked += 1
                    if s not in wings:
                        bad.append("%s + %s leaves the wings of %s"
                                   % (a, beta, g))
    rep.record("subalgebra roots act inside each free wing set", checked, bad)
    return rep
