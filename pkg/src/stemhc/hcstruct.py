"""The hypercomplex structure on the reductive complement, built exactly.

Given an accepted pair spec this module fixes an adapted basis of the
complexified complement p (root vectors of the free wing blocks, two
tau-conjugate combinations P, Q per free stem root, and a 4-divisible block
of leftover central directions u), builds the two anticommuting complex
structures I and J as matrices over the scalar tower, builds the Cayley-type
root rotations exp((pi/2) ad X_gamma) on the full algebra, and verifies every
identity the construction is supposed to satisfy.  All checks are exact;
the only floating point in the file is the optional cross-check of the
rotation matrices against scipy's expm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chevalley import AlgebraElement, ChevalleyBasis, make_basis
from .linalg import Span, identity, invert, kernel_basis, mat_mul, mat_vec, rref
from .pairs import PairSpec, check_pair, complement_data, delta_k
from .reporting import CheckReport
from .rootsystems import Root, root_sub
from .scalars import HALF, I, ONE, SQRT2, ZERO, TowerScalar, eighth_root_power
from .stem import stem_of


# ---------------------------------------------------------------------------
# Cartan-side splitting helpers (all exact rational)


def root_functional(cb: ChevalleyBasis, gamma: Root):
    """gamma as a Fraction row acting on global Cartan coordinate vectors."""
    row = [Fraction(0)] * cb.total_rank
    off = cb.offsets[gamma.comp]
    for j, p in enumerate(cb.rs._pairings[gamma]):
        if p:
            row[off + j] = Fraction(p)
    return row


def _kernel_inside(span_rows, functional_rows):
    """Basis of {v in span(span_rows) : f(v) = 0 for every row f}, in RREF."""
    if not span_rows:
        return []
    ncols = len(span_rows[0])
    if not functional_rows:
        return [list(r) for r in rref(span_rows)[0]]
    m = [[sum(f[j] * b[j] for j in range(ncols)) for b in span_rows]
         for f in functional_rows]
    vecs = []
    for c in kernel_basis(m, len(span_rows)):
        v = [Fraction(0)] * ncols
        for t, b in zip(c, span_rows):
            if t:
                for j in range(ncols):
                    v[j] += t * b[j]
        vecs.append(v)
    return [list(r) for r in rref(vecs)[0]]


def stem_central_kernel(cb: ChevalleyBasis, stem):
    """Deterministic basis of the common kernel of all stem functionals."""
    rows = [root_functional(cb, g) for g in stem.elements]
    return kernel_basis(rows, cb.total_rank)


def stem_z_vectors(cb: ChevalleyBasis, stem):
    """One central partner vector per stem root, in stem order.

    Takes the t-th kernel basis vector when it exists and the zero vector
    once the kernel is exhausted (types whose stem already fills the Cartan
    leave no room; the degenerate choice is still admissible everywhere the
    vectors are used, because only gamma(z) = 0 is ever needed).
    """
    ker = stem_central_kernel(cb, stem)
    out = []
    for t in range(len(stem.elements)):
        if t < len(ker):
            out.append(list(ker[t]))
        else:
            out.append([Fraction(0)] * cb.total_rank)
    return out


# ---------------------------------------------------------------------------
# The adapted basis of the complement


@dataclass
class PDecomposition:
    coords: list          # over the adapted labels, TowerScalar
    k_e: dict             # root-vector part that fell into the subalgebra
    k_h: list             # subalgebra Cartan coefficients (coroots of
                          # the picked stem roots, then the o_k vectors)

    @property
    def in_p(self):
        return not self.k_e and not any(self.k_h)


class PBasis:
    """Ordered basis of the complexified complement of an accepted pair.

    Labels, in order: ("e", a) for a in Delta_p+, then ("e", -a); then
    ("p", t), ("q", t) per free stem root gamma_t (P = W - iZ and Q = W + iZ
    for W = (i/2)H_gamma and Z = i z_t with z_t a rational central kernel
    vector, so tau swaps P and Q); then ("u", s) over the leftover central
    block, whose dimension is divisible by 4.
    """

    def __init__(self, spec: PairSpec, phases=None, force=False):
        self.spec = spec
        self.cb = make_basis(spec.shape)
        self.stem = stem_of(spec.shape)
        assert self.cb.rs is self.stem.rs
        self.sub = spec.substem()
        self.report = check_pair(spec)
        self.data = complement_data(spec, force=force)
        self.gamma_p = list(self.data.gamma_p)
        self.gamma_k = [g for g in self.stem.elements if g in self.sub.members]
        self.num_p = len(self.gamma_p)
        self.dp_plus = list(self.data.delta_p_plus)
        self.dp_set = set(self.dp_plus) | {-a for a in self.dp_plus}
        self.dk_set = delta_k(self.sub)
        self.wing_stem = {}
        for g in self.gamma_p:
            for a in self.stem.phi[g]:
                self.wing_stem[a] = g
                self.wing_stem[-a] = g
        self.phases = self._normalize_phases(phases)
        self._split_cartan()
        self._build_labels()
        self._build_h_matrix()
        self.vectors = [self._make_element(lab) for lab in self.labels]
        self._round_trip_check()

    # -- setup ---------------------------------------------------------------

    def _normalize_phases(self, phases):
        if phases is None:
            phases = {}
        if isinstance(phases, (TowerScalar, str, int, Fraction)):
            phases = {g: phases for g in self.gamma_p}
        if isinstance(phases, (list, tuple)):
            if len(phases) != self.num_p:
                raise ValueError("need %d phases, got %d"
                                 % (self.num_p, len(phases)))
            phases = dict(zip(self.gamma_p, phases))
        unknown = set(phases) - set(self.gamma_p)
        if unknown:
            raise ValueError("phases given for roots outside the free stem: %s"
                             % sorted(map(str, unknown)))
        out = {}
        for g in self.gamma_p:
            rho = phases.get(g, ONE)
            if isinstance(rho, str):
                rho = TowerScalar.parse(rho)
            rho = TowerScalar.of(rho)
            if not rho.is_unit_modulus():
                raise ValueError("phase for %s is not unit modulus: %s"
                                 % (g, rho))
            out[g] = rho
        return out

    def _split_cartan(self):
        cb = self.cb
        R = cb.total_rank
        K = cb.killing_h
        stem_rows = [root_functional(cb, g) for g in self.stem.elements]
        # torus part of the subalgebra: what the picked wing blocks already
        # cover of the central kernel, padded up to o_k_dim with orthogonal
        # kernel directions
        hk_semi = [list(map(Fraction, cb.hroot[r]))
                   for r in sorted(self.dk_set, key=Root.key) if r.positive]
        span_o = _kernel_inside(hk_semi, stem_rows)
        assert len(span_o) == (self.report.rank_k_semisimple
                               - len(self.gamma_k))
        central = kernel_basis(stem_rows, R) if stem_rows else \
            kernel_basis([], R)
        extras = _kernel_inside(central, [mat_vec(K, w) for w in span_o])
        assert len(extras) >= self.spec.o_k_dim
        self.o_k = [list(v) for v in span_o] + \
            [list(v) for v in extras[:self.spec.o_k_dim]]
        h_k = [list(map(Fraction, cb.hroot[g])) for g in self.gamma_k] + \
            self.o_k
        assert len(rref(h_k)[0]) == self.report.rank_k
        # the complement's Cartan slice: orthogonal to the subalgebra slice
        # under the invariant form
        constraints = [mat_vec(K, v) for v in h_k]
        h_p = kernel_basis(constraints, R) if constraints else \
            kernel_basis([], R)
        assert len(h_p) == self.data.dim_h_p
        o_p = _kernel_inside(h_p, [root_functional(cb, g)
                                   for g in self.gamma_p])
        full = _kernel_inside(h_p, stem_rows)
        assert Span(o_p, R) == Span(full, R), \
            "central kernel of the complement drifted"
        assert len(o_p) == self.data.dim_o_p
        assert len(o_p) >= self.num_p
        self.h_p = h_p
        self.z_vecs = [list(v) for v in o_p[:self.num_p]]
        self.j_vecs = [list(v) for v in o_p[self.num_p:]]
        assert len(self.j_vecs) == self.data.dim_j_p
        assert len(self.j_vecs) % 4 == 0

    def _build_labels(self):
        self.labels = [("e", a) for a in self.dp_plus]
        self.labels += [("e", -a) for a in self.dp_plus]
        for t in range(self.num_p):
            self.labels += [("p", t), ("q", t)]
        self.labels += [("u", s) for s in range(len(self.j_vecs))]
        assert len(self.labels) == self.data.dim_p
        self.index = {lab: j for j, lab in enumerate(self.labels)}

    def _build_h_matrix(self):
        cb = self.cb
        cols = [list(map(Fraction, cb.hroot[g])) for g in self.gamma_k]
        cols += self.o_k
        self.n_k = len(cols)
        cols += [list(map(Fraction, cb.hroot[g])) for g in self.gamma_p]
        cols += self.z_vecs
        cols += self.j_vecs
        assert len(cols) == cb.total_rank
        m = [[cols[j][i] for j in range(len(cols))]
             for i in range(cb.total_rank)]
        self.h_inverse = invert(m)

    def _round_trip_check(self):
        for j, v in enumerate(self.vectors):
            d = self.decompose(v)
            assert d.in_p, "basis element %s leaks into k" % (self.labels[j],)
            want = [ONE if i == j else ZERO for i in range(len(self.labels))]
            assert d.coords == want, "basis round trip failed at %s" \
                % (self.labels[j],)

    # -- elements --------------------------------------------------------------

    def _make_element(self, lab):
        kind, val = lab
        cb = self.cb
        if kind == "e":
            return cb.E(val)
        if kind == "p":
            return cb.W(self.gamma_p[val]) + cb.H_vec(self.z_vecs[val])
        if kind == "q":
            return cb.W(self.gamma_p[val]) - cb.H_vec(self.z_vecs[val])
        if kind == "u":
            return cb.H_vec(self.j_vecs[val]).scale(I)
        raise KeyError(lab)

    def element(self, lab) -> AlgebraElement:
        return self.vectors[self.index[lab]]

    def w_element(self, t) -> AlgebraElement:
        return self.cb.W(self.gamma_p[t])

    def z_element(self, t) -> AlgebraElement:
        """The designated partner Z = I W, a central kernel direction."""
        return self.cb.H_vec(self.z_vecs[t]).scale(I)

    def assemble(self, coords) -> AlgebraElement:
        acc = self.cb.zero()
        for c, v in zip(coords, self.vectors):
            if c:
                acc = acc + v.scale(c)
        return acc

    def decompose(self, x: AlgebraElement) -> PDecomposition:
        coords = [ZERO] * len(self.labels)
        k_e = {}
        for r, c in x.e.items():
            if r in self.dp_set:
                coords[self.index[("e", r)]] = c
            else:
                assert r in self.dk_set, "unknown root %s" % (r,)
                k_e[r] = c
        k_h = [ZERO] * self.n_k
        if any(x.h):
            cf = mat_vec(self.h_inverse, x.h)
            k_h = cf[:self.n_k]
            nk = self.n_k
            for t in range(self.num_p):
                c_t = cf[nk + t]
                d_t = cf[nk + self.num_p + t]
                coords[self.index[("p", t)]] = d_t * HALF - I * c_t
                coords[self.index[("q", t)]] = -(d_t * HALF) - I * c_t
            for s in range(len(self.j_vecs)):
                coords[self.index[("u", s)]] = -I * cf[nk + 2 * self.num_p + s]
        return PDecomposition(coords, k_e, k_h)

    def coords_strict(self, x: AlgebraElement):
        d = self.decompose(x)
        if not d.in_p:
            raise ValueError("element has a component inside the subalgebra")
        return d.coords

    def project_coords(self, x: AlgebraElement):
        """Coordinates of the complement part, dropping the subalgebra part."""
        return self.decompose(x).coords

    def apply_matrix(self, m, x: AlgebraElement) -> AlgebraElement:
        return self.assemble(mat_vec(m, self.coords_strict(x)))


def subalgebra_basis(pb: PBasis):
    """Labelled basis of the complexified subalgebra k."""
    cb = pb.cb
    out = [(("e", r), cb.E(r)) for r in sorted(pb.dk_set, key=Root.key)]
    out += [(("h", g), cb.H_of_root(g)) for g in pb.gamma_k]
    out += [(("o", j), cb.H_vec(v)) for j, v in enumerate(pb.o_k)]
    return out


# ---------------------------------------------------------------------------
# The two complex structures and the conjugation, as matrices


def _matrix_from_entries(pb: PBasis, entries):
    n = len(pb.labels)
    m = [[ZERO] * n for _ in range(n)]
    for (row, col), v in entries.items():
        m[pb.index[row]][pb.index[col]] = TowerScalar.of(v)
    return m


def build_I(pb: PBasis):
    """Multiplication by i on the positive half, -i on the negative half,
    and a rotation pairing consecutive leftover central directions."""
    entries = {}
    for a in pb.dp_plus:
        entries[(("e", a), ("e", a))] = I
        entries[(("e", -a), ("e", -a))] = -I
    for t in range(pb.num_p):
        entries[(("p", t), ("p", t))] = I
        entries[(("q", t), ("q", t))] = -I
    for s in range(0, len(pb.j_vecs), 2):
        entries[(("u", s + 1), ("u", s))] = ONE
        entries[(("u", s), ("u", s + 1))] = -ONE
    return _matrix_from_entries(pb, entries)


def build_J(pb: PBasis):
    """The second structure: swaps each free stem root vector with its
    Cartan partner pair, shifts wing vectors across the stem root with the
    structure-constant sign, and rotates the central 4-blocks the other way."""
    cb = pb.cb
    entries = {}
    for t, g in enumerate(pb.gamma_p):
        rho = pb.phases[g]
        rb = rho.conj()
        entries[(("q", t), ("e", g))] = rb
        entries[(("p", t), ("e", -g))] = -rho
        entries[(("e", g), ("q", t))] = -rho
        entries[(("e", -g), ("p", t))] = rb
        for a in sorted(pb.stem.phi[g], key=Root.key):
            n = cb.n_const[(g, -a)]
            entries[(("e", root_sub(a, g)), ("e", a))] = I * rb * n
            entries[(("e", root_sub(g, a)), ("e", -a))] = -(I * rho * n)
    for s in range(0, len(pb.j_vecs), 4):
        entries[(("u", s + 2), ("u", s))] = ONE
        entries[(("u", s + 3), ("u", s + 1))] = -ONE
        entries[(("u", s), ("u", s + 2))] = -ONE
        entries[(("u", s + 1), ("u", s + 3))] = ONE
    return _matrix_from_entries(pb, entries)


def conjugation_matrix(pb: PBasis):
    """The compact conjugation on the adapted labels: E_a -> -E_{-a},
    P <-> Q, u fixed.  Antilinear; the matrix is its linear part."""
    entries = {}
    for a in pb.dp_plus:
        entries[(("e", -a), ("e", a))] = -ONE
        entries[(("e", a), ("e", -a))] = -ONE
    for t in range(pb.num_p):
        entries[(("q", t), ("p", t))] = ONE
        entries[(("p", t), ("q", t))] = ONE
    for s in range(len(pb.j_vecs)):
        entries[(("u", s), ("u", s))] = ONE
    return _matrix_from_entries(pb, entries)


def _conj_matrix(m):
    return [[v.conj() for v in row] for row in m]


def _neg_matrix(m):
    return [[-v for v in row] for row in m]


def _matrix_mismatches(pb, got, want, limit=6):
    out = []
    n = len(pb.labels)
    for i in range(n):
        for j in range(n):
            if got[i][j] != want[i][j]:
                out.append("entry (%s <- %s): %s != %s"
                           % (pb.labels[i], pb.labels[j],
                              got[i][j], want[i][j]))
                if len(out) >= limit:
                    return out
    return out


# ---------------------------------------------------------------------------
# Structure container and the verification battery


@dataclass
class HCStructure:
    pbasis: PBasis
    i_matrix: list
    j_matrix: list
    tau_matrix: list

    @property
    def cb(self):
        return self.pbasis.cb

    @property
    def spec(self):
        return self.pbasis.spec

    def apply_i(self, x):
        return self.pbasis.apply_matrix(self.i_matrix, x)

    def apply_j(self, x):
        return self.pbasis.apply_matrix(self.j_matrix, x)

    def verify_all(self, include_cayley=True) -> CheckReport:
        rep = CheckReport()
        rep.extend(verify_operator_identities(self))
        rep.extend(verify_equivariance(self))
        rep.extend(verify_integrability(self))
        rep.extend(verify_root_coupling(self)[1])
        rep.extend(verify_wing_restriction(self))
        if include_cayley:
            rep.extend(verify_eigenspace_transport(self))
        return rep


def build_structure(spec: PairSpec, phases=None, force=False) -> HCStructure:
    pb = PBasis(spec, phases=phases, force=force)
    return HCStructure(pb, build_I(pb), build_J(pb), conjugation_matrix(pb))


def _empty_report(name):
    rep = CheckReport()
    rep.record(name + ": zero-dimensional complement, nothing to check", 0)
    return rep


def verify_operator_identities(hc: HCStructure) -> CheckReport:
    """The pointwise operator algebra: squares, anticommutation, reality."""
    pb = hc.pbasis
    n = len(pb.labels)
    if n == 0:
        return _empty_report("operator identities")
    rep = CheckReport()
    minus_id = _neg_matrix(identity(n, ONE))
    rep.record("first structure squares to minus the identity", n * n,
               _matrix_mismatches(pb, mat_mul(hc.i_matrix, hc.i_matrix),
                                  minus_id))
    rep.record("second structure squares to minus the identity", n * n,
               _matrix_mismatches(pb, mat_mul(hc.j_matrix, hc.j_matrix),
                                  minus_id))
    anti = mat_mul(hc.i_matrix, hc.j_matrix)
    rep.record("the two structures anticommute", n * n,
               _matrix_mismatches(pb, anti,
                                  _neg_matrix(mat_mul(hc.j_matrix,
                                                      hc.i_matrix))))
    t = hc.tau_matrix
    rep.record("conjugation matrix is an involution", n * n,
               _matrix_mismatches(pb, mat_mul(t, t), identity(n, ONE)))
    bad = []
    for j, lab in enumerate(pb.labels):
        img = pb.cb.tau(pb.vectors[j])
        d = pb.decompose(img)
        col = [t[i][j] for i in range(n)]
        if not d.in_p or d.coords != col:
            bad.append("conjugate of %s disagrees with the matrix" % (lab,))
    rep.record("conjugation matrix mirrors the compact conjugation", n, bad)
    rep.record("first structure is real for the compact form", n * n,
               _matrix_mismatches(pb, mat_mul(hc.i_matrix, t),
                                  mat_mul(t, _conj_matrix(hc.i_matrix))))
    rep.record("second structure is real for the compact form", n * n,
               _matrix_mismatches(pb, mat_mul(hc.j_matrix, t),
                                  mat_mul(t, _conj_matrix(hc.j_matrix))))
    # the compact sl2 generators transform into each other as claimed
    bad = []
    for t_idx, g in enumerate(pb.gamma_p):
        rho = pb.phases[g]
        x = pb.cb.X(g, rho)
        y = pb.cb.Y(g, rho)
        if hc.apply_j(x) != pb.w_element(t_idx):
            bad.append("J X_%s is not W" % (g,))
        if hc.apply_j(pb.z_element(t_idx)) != y:
            bad.append("J Z_%s is not Y" % (g,))
        if hc.apply_i(pb.w_element(t_idx)) != pb.z_element(t_idx):
            bad.append("I W_%s is not Z" % (g,))
    rep.record("compact generators rotate as claimed", 3 * pb.num_p, bad)
    return rep


def _ad_matrix(pb: PBasis, x: AlgebraElement):
    """ad(x) restricted to the complement, as a matrix over the labels.
    Returns (matrix, leak list); leak names labels whose bracket fell
    outside the complement."""
    n = len(pb.labels)
    m = [[ZERO] * n for _ in range(n)]
    leaks = []
    for j, v in enumerate(pb.vectors):
        d = pb.decompose(pb.cb.bracket(x, v))
        if not d.in_p:
            leaks.append(pb.labels[j])
        for i in range(n):
            m[i][j] = d.coords[i]
    return m, leaks


def verify_equivariance(hc: HCStructure) -> CheckReport:
    """The subalgebra action: stays inside the complement, commutes with
    both structures, preserves each free wing block, kills the rest."""
    pb = hc.pbasis
    n = len(pb.labels)
    if n == 0:
        return _empty_report("equivariance")
    kbasis = subalgebra_basis(pb)
    rep = CheckReport()
    leaks_all = []
    commute_i, commute_j = [], []
    block_bad, kill_bad = [], []
    wing_labels = {}
    for g in pb.gamma_p:
        labs = set()
        for a in pb.stem.phi[g]:
            labs.add(pb.index[("e", a)])
            labs.add(pb.index[("e", -a)])
        wing_labels[g] = labs
    # labels outside every wing block: the stem roots themselves and the
    # central block
    sl2_labels = [pb.index[("e", g)] for g in pb.gamma_p]
    sl2_labels += [pb.index[("e", -g)] for g in pb.gamma_p]
    sl2_labels += [pb.index[(k, t)] for (k, t) in pb.labels
                   if k in ("p", "q", "u")]
    for name, x in kbasis:
        ad, leaks = _ad_matrix(pb, x)
        leaks_all += ["%s moves %s outside the complement" % (name, lab)
                      for lab in leaks]
        commute_i += _matrix_mismatches(pb, mat_mul(hc.i_matrix, ad),
                                        mat_mul(ad, hc.i_matrix), limit=3)
        commute_j += _matrix_mismatches(pb, mat_mul(hc.j_matrix, ad),
                                        mat_mul(ad, hc.j_matrix), limit=3)
        for g in pb.gamma_p:
            labs = wing_labels[g]
            for j in labs:
                for i in range(n):
                    if ad[i][j] and i not in labs:
                        block_bad.append(
                            "%s maps %s outside its wing block"
                            % (name, pb.labels[j]))
        for j in sl2_labels:
            if any(ad[i][j] for i in range(n)):
                kill_bad.append("%s acts on %s" % (name, pb.labels[j]))
    nk = max(len(kbasis), 1)
    rep.record("subalgebra brackets stay inside the complement",
               nk * n, leaks_all)
    rep.record("first structure commutes with the subalgebra action",
               nk * n * n, commute_i)
    rep.record("second structure commutes with the subalgebra action",
               nk * n * n, commute_j)
    rep.record("the action preserves each free wing block", nk * n, block_bad)
    rep.record("the action kills the free sl2 and central directions",
               nk * len(sl2_labels), kill_bad)
    return rep


def eigenspace(matrix, sign):
    """Exact basis of the (sign * i)-eigenspace, as coordinate vectors."""
    n = len(matrix)
    lam = I if sign > 0 else -I
    rows = [[matrix[i][j] - (lam if i == j else ZERO) for j in range(n)]
            for i in range(n)]
    return kernel_basis(rows, n)


def compact_basis(pb: PBasis):
    """A real basis of the compact form of the complement (it spans the
    complexification over the tower, which is what the checks need)."""
    cb = pb.cb
    out = []
    for a in pb.dp_plus:
        out.append(("x_%s" % (a,), cb.X(a)))
        out.append(("y_%s" % (a,), cb.Y(a)))
    for t in range(pb.num_p):
        out.append(("w_%d" % t, pb.w_element(t)))
        out.append(("z_%d" % t, pb.z_element(t)))
    for s in range(len(pb.j_vecs)):
        out.append(("u_%d" % s, pb.element(("u", s))))
    return out


def verify_integrability(hc: HCStructure) -> CheckReport:
    """Eigenspace bracket closure plus the direct real torsion expression."""
    pb = hc.pbasis
    n = len(pb.labels)
    if n == 0:
        return _empty_report("integrability")
    rep = CheckReport()
    for opname, m in (("first", hc.i_matrix), ("second", hc.j_matrix)):
        for sign, signname in ((1, "+i"), (-1, "-i")):
            vecs = eigenspace(m, sign)
            bad = []
            if 2 * len(vecs) != n:
                bad.append("eigenspace dimension %d of %d" % (len(vecs), n))
            sp = Span(vecs, n)
            elems = [pb.assemble(v) for v in vecs]
            checked = 0
            for a in range(len(elems)):
                for b in range(a, len(elems)):
                    checked += 1
                    out = pb.cb.bracket(elems[a], elems[b])
                    if not sp.contains(pb.project_coords(out)):
                        bad.append("bracket of vectors %d,%d leaves the %s "
                                   "eigenspace" % (a, b, signname))
            rep.record("%s structure: %s eigenspace closes under the "
                       "projected bracket" % (opname, signname),
                       checked + 1, bad)
    basis = compact_basis(pb)
    for opname, m in (("first", hc.i_matrix), ("second", hc.j_matrix)):
        coords = [pb.coords_strict(x) for _, x in basis]
        images = [pb.assemble(mat_vec(m, c)) for c in coords]
        bad = []
        checked = 0

        def proj_bracket(x, y):
            return pb.project_coords(pb.cb.bracket(x, y))

        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                checked += 1
                xa, xb = basis[a][1], basis[b][1]
                torsion = proj_bracket(images[a], images[b])
                base = proj_bracket(xa, xb)
                cross_a = mat_vec(m, proj_bracket(images[a], xb))
                cross_b = mat_vec(m, proj_bracket(xa, images[b]))
                val = [torsion[i] - base[i] - cross_a[i] - cross_b[i]
                       for i in range(n)]
                if any(val):
                    bad.append("torsion of %s, %s is not zero"
                               % (basis[a][0], basis[b][0]))
        rep.record("%s structure: real torsion vanishes on the compact basis"
                   % opname, checked, bad)
    return rep


def root_coupling_matrix(hc: HCStructure):
    """Coefficient of E_{-a} in J(E_b) for positive complement roots a, b."""
    pb = hc.pbasis
    out = {}
    for b in pb.dp_plus:
        col = pb.index[("e", b)]
        for a in pb.dp_plus:
            v = hc.j_matrix[pb.index[("e", -a)]][col]
            if v:
                out[(a, b)] = v
    return out


def verify_root_coupling(hc: HCStructure):
    """The sparsity pattern and values of the second structure on root
    vectors: a pair couples exactly when it sums to a free stem root."""
    pb = hc.pbasis
    coup = root_coupling_matrix(hc)
    gamma_set = set(pb.gamma_p)
    rep = CheckReport()
    bad = []
    checked = 0
    for a in pb.dp_plus:
        for b in pb.dp_plus:
            checked += 1
            s = None
            if a.comp == b.comp:
                cand = Root(a.comp, tuple(x + y for x, y
                                          in zip(a.coords, b.coords)))
                if cand in gamma_set:
                    s = cand
            v = coup.get((a, b))
            if s is None:
                if v is not None:
                    bad.append("unexpected coupling at (%s, %s)" % (a, b))
                continue
            if v is None:
                bad.append("missing coupling at (%s, %s)" % (a, b))
                continue
            g = s
            rho = pb.phases[g]
            want = I * rho.conj() * pb.cb.n_const[(g, -b)]
            if v != want:
                bad.append("coupling at (%s, %s) is %s, want %s"
                           % (a, b, v, want))
                continue
            # the closed form through the stem root image: the coefficient
            # equals N(g,-b) / conj(g(J E_g))
            jg = hc.apply_j(pb.cb.E(g))
            denom = pb.cb.eval_root(g, jg.h).conj()
            if v * denom != TowerScalar.of(pb.cb.n_const[(g, -b)]):
                bad.append("closed form fails at (%s, %s)" % (a, b))
    rep.record("root coupling is supported exactly on free stem sums",
               checked, bad)
    return coup, rep


def verify_wing_restriction(hc: HCStructure) -> CheckReport:
    """On each free wing block the structures agree with the inner action
    of the compact sl2 generators: I with ad(2W), J with -ad(2Y)."""
    pb = hc.pbasis
    cb = pb.cb
    rep = CheckReport()
    bad_i, bad_j = [], []
    checked = 0
    for t, g in enumerate(pb.gamma_p):
        w2 = pb.w_element(t).scale(2)
        y2 = cb.Y(g, pb.phases[g]).scale(-2)
        for a in sorted(pb.stem.phi[g], key=Root.key):
            for r in (a, -a):
                checked += 1
                v = cb.E(r)
                if hc.apply_i(v) != cb.bracket(w2, v):
                    bad_i.append("first structure is not ad(2W) at %s" % (r,))
                if hc.apply_j(v) != cb.bracket(y2, v):
                    bad_j.append("second structure is not -ad(2Y) at %s"
                                 % (r,))
    rep.record("first structure restricts to ad(2W) on wing blocks",
               checked, bad_i)
    rep.record("second structure restricts to -ad(2Y) on wing blocks",
               checked, bad_j)
    return rep


# ---------------------------------------------------------------------------
# Cayley-type rotations on the full algebra


@lru_cache(maxsize=1)
def _rotation_poly():
    """Coefficients of the degree-6 polynomial matching the quarter-turn
    exponential on the eigenvalues {ik/2 : |k| <= 3} of any ad X_gamma."""
    nodes = [I * Fraction(k, 2) for k in range(-3, 4)]
    rows = []
    for x in nodes:
        row = [ONE]
        for _ in range(6):
            row.append(row[-1] * x)
        rows.append(row)
    vals = [eighth_root_power(k) for k in range(-3, 4)]
    return tuple(mat_vec(invert(rows), vals))


def g_coords(cb: ChevalleyBasis, x: AlgebraElement):
    out = [ZERO] * len(cb.basis_keys)
    for r, c in x.e.items():
        out[cb.key_index[("e", r)]] = c
    for j, c in enumerate(x.h):
        if c:
            out[cb.key_index[("h", j)]] = c
    return out


def g_element(cb: ChevalleyBasis, coords) -> AlgebraElement:
    h = [ZERO] * cb.total_rank
    e = {}
    for key, c in zip(cb.basis_keys, coords):
        if not c:
            continue
        kind, val = key
        if kind == "e":
            e[val] = c
        else:
            h[val] = c
    return AlgebraElement(cb, tuple(h), e)


class RootRotation:
    """The inner automorphism exp((pi/2) ad X_gamma) as an exact matrix in
    the canonical basis of the full algebra (column-major)."""

    def __init__(self, cb, gamma, rho, cols):
        self.cb = cb
        self.gamma = gamma
        self.rho = rho
        self.cols = cols

    def apply_coords(self, coords):
        n = len(self.cols)
        out = [ZERO] * n
        for j, c in enumerate(coords):
            if c:
                col = self.cols[j]
                for i in range(n):
                    if col[i]:
                        out[i] = out[i] + c * col[i]
        return out

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        return g_element(self.cb, self.apply_coords(g_coords(self.cb, x)))

    def compose(self, other: "RootRotation") -> "RootRotation":
        assert other.cb is self.cb
        cols = [self.apply_coords(c) for c in other.cols]
        return RootRotation(self.cb, None, None, cols)

    def __eq__(self, other):
        if not isinstance(other, RootRotation):
            return NotImplemented
        return self.cb is other.cb and self.cols == other.cols


def root_rotation(cb: ChevalleyBasis, gamma: Root, rho=ONE) -> RootRotation:
    if gamma not in cb.rs.root_set:
        raise ValueError("not a root: %s" % (gamma,))
    rho = TowerScalar.of(rho)
    if not rho.is_unit_modulus():
        raise ValueError("phase is not unit modulus: %s" % (rho,))
    poly = _rotation_poly()
    x = cb.X(gamma, rho)
    cols = []
    for key in cb.basis_keys:
        v = cb.basis_element(key)
        acc = v.scale(poly[0])
        w = v
        for c in poly[1:]:
            w = cb.bracket(x, w)
            if w.is_zero():
                break
            if c:
                acc = acc + w.scale(c)
        cols.append(g_coords(cb, acc))
    return RootRotation(cb, gamma, rho, cols)


def rotation_product(cb: ChevalleyBasis, gammas, phases=None) -> RootRotation:
    """Composition of the stem rotations (they commute, so order is moot)."""
    if phases is None:
        phases = {}
    if not isinstance(phases, dict):
        phases = {g: phases for g in gammas}
    rots = [root_rotation(cb, g, phases.get(g, ONE)) for g in gammas]
    n = len(cb.basis_keys)
    cols = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    for r in rots:
        cols = [r.apply_coords(c) for c in cols]
    return RootRotation(cb, None, None, cols)


def verify_rotation(cb: ChevalleyBasis, stem, gamma: Root,
                    rho=ONE) -> CheckReport:
    """The single-rotation identities: automorphism, reality, commutation,
    the closed image formulas, and block invariance."""
    rho = TowerScalar.of(rho)
    rot = root_rotation(cb, gamma, rho)
    rep = CheckReport()
    keys = cb.basis_keys
    n = len(keys)
    images = [g_element(cb, c) for c in rot.cols]

    bad = []
    checked = 0
    for a in range(n):
        for b in range(a + 1, n):
            checked += 1
            lhs = rot.apply(cb.bracket(cb.basis_element(keys[a]),
                                       cb.basis_element(keys[b])))
            if lhs != cb.bracket(images[a], images[b]):
                bad.append("bracket of %s, %s not respected"
                           % (keys[a], keys[b]))
    rep.record("rotation respects every bracket", checked, bad)

    bad = []
    for a in range(n):
        if rot.apply(cb.tau(cb.basis_element(keys[a]))) != cb.tau(images[a]):
            bad.append("conjugation slips past the rotation at %s"
                       % (keys[a],))
    rep.record("rotation commutes with the compact conjugation", n, bad)

    bad = []
    others = [d for d in stem.elements if d != gamma]
    for d in others:
        other = root_rotation(cb, d, rho)
        if rot.compose(other) != other.compose(rot):
            bad.append("rotations at %s and %s do not commute" % (gamma, d))
    rep.record("stem rotations commute pairwise", max(len(others), 1), bad)

    scale = SQRT2 * HALF
    bad = []
    wings = sorted(stem.phi[gamma], key=Root.key)
    for a in wings:
        nconst = cb.n_const[(gamma, -a)]
        want = (cb.E(a) + cb.E(root_sub(a, gamma), nconst * rho.conj())) \
            .scale(scale)
        if rot.apply(cb.E(a)) != want:
            bad.append("wing image at %s" % (a,))
        want = (cb.E(-a) + cb.E(root_sub(gamma, a), nconst * rho)) \
            .scale(scale)
        if rot.apply(cb.E(-a)) != want:
            bad.append("wing image at %s" % (-a,))
    rep.record("wing vectors mix with weight sqrt2/2",
               max(2 * len(wings), 1), bad)

    bad = []
    want = (cb.X(gamma, rho) - cb.W(gamma).scale(I)).scale(rho.conj())
    if rot.apply(cb.E(gamma)) != want:
        bad.append("image of the stem root vector")
    want = (cb.X(gamma, rho) + cb.W(gamma).scale(I)).scale(-rho)
    if rot.apply(cb.E(-gamma)) != want:
        bad.append("image of the opposite stem root vector")
    rep.record("stem root vectors rotate onto the twisted compact pair",
               2, bad)

    bad = []
    shear = cb.Y(gamma, rho) + cb.W(gamma)
    for j in range(cb.total_rank):
        unit = tuple(ONE if i == j else ZERO for i in range(cb.total_rank))
        h = cb.H_vec(unit)
        want = h + shear.scale(I * cb.eval_root(gamma, unit))
        if rot.apply(h) != want:
            bad.append("Cartan image at slot %d" % j)
    rep.record("Cartan vectors shear along the stem root",
               cb.total_rank, bad)

    bad = []
    ker = kernel_basis([root_functional(cb, gamma)], cb.total_rank)
    for v in ker:
        h = cb.H_vec(v)
        if rot.apply(h) != h:
            bad.append("kernel vector moved")
    rep.record("rotation fixes the kernel of the stem root",
               max(len(ker), 1), bad)

    bad = []
    for d in others:
        for sign in (1, -1):
            side = [a if sign > 0 else -a for a in stem.phi[d]]
            block = [g_coords(cb, cb.E(a)) for a in side]
            imgs = [g_coords(cb, rot.apply(cb.E(a))) for a in side]
            if block and Span(block, n) != Span(imgs, n):
                bad.append("wing block of %s not setwise invariant"
                           % (d if sign > 0 else -d,))
    sl2 = [g_coords(cb, cb.E(gamma)), g_coords(cb, cb.E(-gamma)),
           g_coords(cb, cb.H_of_root(gamma))]
    sl2_imgs = [g_coords(cb, rot.apply(g_element(cb, v))) for v in sl2]
    if Span(sl2, n) != Span(sl2_imgs, n):
        bad.append("own sl2 block not setwise invariant")
    rep.record("other wing blocks and the own sl2 stay setwise invariant",
               2 * len(others) + 1, bad)
    return rep


def verify_rotation_spans(cb: ChevalleyBasis, stem, phases=None,
                          z_vecs=None) -> CheckReport:
    """Image spans of the full product rotation: each wing block goes to
    its mixed twin, and each plane {P, E_gamma} goes to the twisted plane."""
    if phases is None:
        phases = {}
    phases = {g: TowerScalar.of(phases.get(g, ONE)) for g in stem.elements}
    if z_vecs is None:
        zs = stem_z_vectors(cb, stem)
        z_vecs = {g: zs[t] for t, g in enumerate(stem.elements)}
    prod = rotation_product(cb, stem.elements, phases)
    n = len(cb.basis_keys)
    rep = CheckReport()

    bad = []
    for g in stem.elements:
        rho = phases[g]
        wings = sorted(stem.phi[g], key=Root.key)
        if not wings:
            continue
        imgs = [g_coords(cb, prod.apply(cb.E(a))) for a in wings]
        want = [g_coords(cb, cb.E(a)
                         + cb.E(root_sub(a, g),
                                cb.n_const[(g, -a)] * rho.conj()))
                for a in wings]
        if Span(imgs, n) != Span(want, n):
            bad.append("wing span of %s" % (g,))
    rep.record("product rotation sends wing blocks to their mixed twins",
               len(stem.elements), bad)

    bad = []
    for g in stem.elements:
        if g not in z_vecs:
            continue
        rho = phases[g]
        rb = rho.conj()
        w = cb.W(g)
        z = cb.H_vec(z_vecs[g]).scale(I)
        p = w - z.scale(I)
        q = w + z.scale(I)
        plane = [g_coords(cb, prod.apply(p)),
                 g_coords(cb, prod.apply(cb.E(g)))]
        want = [g_coords(cb, cb.E(g) - q.scale(I * rb)),
                g_coords(cb, p - cb.E(-g).scale(I * rb))]
        if Span(plane, n) != Span(want, n):
            bad.append("twisted plane of %s" % (g,))
    rep.record("product rotation twists each stem plane as claimed",
               max(len(z_vecs), 1), bad)
    return rep


def verify_eigenspace_transport(hc: HCStructure) -> CheckReport:
    """The product rotation carries the untwisted polarization onto the
    eigenspaces of the second structure, and permutes the pair split."""
    pb = hc.pbasis
    cb = pb.cb
    n = len(pb.labels)
    ng = len(cb.basis_keys)
    prod = rotation_product(cb, pb.stem.elements,
                            {g: pb.phases[g] for g in pb.gamma_p})
    rep = CheckReport()

    kvecs = [g_coords(cb, x) for _, x in subalgebra_basis(pb)]
    kimgs = [prod.apply_coords(v) for v in kvecs]
    bad = []
    if kvecs and Span(kvecs, ng) != Span(kimgs, ng):
        bad.append("subalgebra span moved")
    rep.record("product rotation preserves the subalgebra",
               max(len(kvecs), 1), bad)

    pvecs = [g_coords(cb, v) for v in pb.vectors]
    pimgs = [prod.apply_coords(v) for v in pvecs]
    bad = []
    if Span(pvecs, ng) != Span(pimgs, ng):
        bad.append("complement span moved")
    rep.record("product rotation preserves the complement", len(pvecs), bad)

    # the untwisted polarization: positive root vectors with P (resp.
    # negatives with Q), plus the matching central eigenvectors
    for sign, signname in ((1, "+i"), (-1, "-i")):
        source = []
        for a in pb.dp_plus:
            source.append(pb.element(("e", a if sign > 0 else -a)))
        for t in range(pb.num_p):
            source.append(pb.element(("p" if sign > 0 else "q", t)))
        central = []
        for s in range(0, len(pb.j_vecs), 4):
            u = [pb.element(("u", s + r)) for r in range(4)]
            central.append(u[0] - u[2].scale(I * sign))
            central.append(u[1] + u[3].scale(I * sign))
        moved = [pb.coords_strict(prod.apply(x)) for x in source]
        moved += [pb.coords_strict(x) for x in central]
        eig = eigenspace(hc.j_matrix, sign)
        bad = []
        if Span(moved, n) != Span(eig, n):
            bad.append("transported span differs from the %s eigenspace"
                       % signname)
        rep.record("rotated polarization equals the %s eigenspace of the "
                   "second structure" % signname, len(moved), bad)
    return rep


def rotation_float_error(cb: ChevalleyBasis, gamma: Root, rho=ONE) -> float:
    """Entrywise gap between the exact rotation matrix and a floating
    evaluation of the exponential it interpolates."""
    import math

    import numpy as np
    from scipy.linalg import expm

    rot = root_rotation(cb, gamma, rho)
    n = len(cb.basis_keys)
    x = cb.X(gamma, TowerScalar.of(rho))
    ad = np.zeros((n, n), dtype=complex)
    for j, key in enumerate(cb.basis_keys):
        col = g_coords(cb, cb.bracket(x, cb.basis_element(key)))
        for i in range(n):
            ad[i, j] = complex(col[i])
    approx = expm((math.pi / 2) * ad)
    exact = np.array([[complex(rot.cols[j][i]) for j in range(n)]
                      for i in range(n)])
    return float(np.max(np.abs(approx - exact)))
