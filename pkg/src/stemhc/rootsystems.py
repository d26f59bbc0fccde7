"""Root systems of reductive compact Lie algebras, in simple-root coordinates.

Roots are integer coordinate vectors over the simple roots of one irreducible
component; no Euclidean embedding is ever used here (the test suite holds the
classical e_i realizations as an independent oracle).  The Cartan matrices
follow the standard Bourbaki numbering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple


FAMILIES = "ABCDEFG"


class SimpleType(NamedTuple):
    family: str
    rank: int

    def __str__(self):
        return "%s%d" % (self.family, self.rank)


def simple_type(family: str, rank: int) -> SimpleType:
    """Validated constructor; rejects out-of-range ranks.

    D2 and D3 are rejected on purpose: as root systems they are A1 x A1 and
    A3, and admitting the duplicates would break canonical naming.
    """
    family = family.upper()
    ok = (
        (family == "A" and rank >= 1)
        or (family == "B" and rank >= 2)
        or (family == "C" and rank >= 2)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if not ok:
        if family == "D" and rank in (2, 3):
            raise ValueError(
                "D%d is not admitted (isomorphic to %s); use the A-form"
                % (rank, "A1 x A1" if rank == 2 else "A3"))
        raise ValueError("no simple type %s%s" % (family, rank))
    return SimpleType(family, rank)


@dataclass(frozen=True)
class ReductiveShape:
    """An abelian center of dimension center_dim plus ordered simple factors."""
    center_dim: int
    simples: tuple

    def __post_init__(self):
        if self.center_dim < 0:
            raise ValueError("negative center dimension")
        for t in self.simples:
            simple_type(t.family, t.rank)

    @property
    def rank(self):
        return self.center_dim + sum(t.rank for t in self.simples)

    def __str__(self):
        parts = []
        if self.center_dim:
            parts.append("c^%d" % self.center_dim)
        parts.extend(str(t) for t in self.simples)
        return " x ".join(parts) if parts else "0"


def shape(*simples, center_dim=0) -> ReductiveShape:
    return ReductiveShape(center_dim, tuple(simples))


def parse_shape(text: str) -> ReductiveShape:
    """Parse 'c^2 x A3 x D5' style shape descriptions."""
    center = 0
    simples = []
    s = text.strip()
    if not s or s == "0":
        return ReductiveShape(0, ())
    for token in s.split("x"):
        token = token.strip()
        if not token:
            raise ValueError("empty factor in shape %r" % text)
        if token.startswith("c"):
            if token == "c":
                center += 1
                continue
            if token.startswith("c^"):
                try:
                    center += int(token[2:])
                except ValueError:
                    raise ValueError("bad center factor %r" % token) from None
                continue
            raise ValueError("bad center factor %r" % token)
        fam, num = token[0].upper(), token[1:]
        if fam not in FAMILIES or not num.isdigit():
            raise ValueError("bad simple factor %r" % token)
        simples.append(simple_type(fam, int(num)))
    return ReductiveShape(center, tuple(simples))


# ---------------------------------------------------------------------------
# Cartan data, Bourbaki numbering


def cartan_matrix(t: SimpleType):
    """Integer Cartan matrix C[i][j] = <alpha_i, alpha_j^vee>."""
    n = t.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j):
        C[i][j] = -1
        C[j][i] = -1

    if t.family == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif t.family == "B":
        for i in range(n - 2):
            edge(i, i + 1)
        C[n - 2][n - 1] = -2       # alpha_{n-1} long, alpha_n short
        C[n - 1][n - 2] = -1
    elif t.family == "C":
        for i in range(n - 2):
            edge(i, i + 1)
        C[n - 2][n - 1] = -1       # alpha_n long
        C[n - 1][n - 2] = -2
    elif t.family == "D":
        for i in range(n - 3):
            edge(i, i + 1)
        edge(n - 3, n - 2)
        edge(n - 3, n - 1)
    elif t.family == "E":
        # nodes 1..n with Bourbaki edges {1,3},{3,4},{4,5},{5,6},{2,4},...
        pairs = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if n >= 7:
            pairs.append((6, 7))
        if n == 8:
            pairs.append((7, 8))
        for a, b in pairs:
            edge(a - 1, b - 1)
    elif t.family == "F":
        edge(0, 1)
        C[1][2] = -2               # alpha_1, alpha_2 long
        C[2][1] = -1
        edge(2, 3)
    elif t.family == "G":
        C[0][1] = -1               # alpha_1 short
        C[1][0] = -3
    return C


def norm_halves(t: SimpleType):
    """d_i = (alpha_i, alpha_i)/2 normalized so long roots have d = 1."""
    n = t.rank
    one = Fraction(1)
    if t.family in ("A", "D", "E"):
        return [one] * n
    if t.family == "B":
        return [one] * (n - 1) + [Fraction(1, 2)]
    if t.family == "C":
        return [one] * (n - 1) + [Fraction(2)]
    if t.family == "F":
        return [one, one, Fraction(1, 2), Fraction(1, 2)]
    if t.family == "G":
        return [one, Fraction(3)]
    raise AssertionError(t)


_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


# ---------------------------------------------------------------------------
# Roots


class Root(NamedTuple):
    comp: int
    coords: tuple

    @property
    def height(self):
        return sum(self.coords)

    @property
    def positive(self):
        return self.height > 0

    def __neg__(self):
        return Root(self.comp, tuple(-c for c in self.coords))

    def key(self):
        return (self.comp, self.height, self.coords)

    def __str__(self):
        return "%d:(%s)" % (self.comp, ",".join(map(str, self.coords)))


def root_sum(a: Root, b: Root):
    """Coordinate sum; None when the roots live in different components."""
    if a.comp != b.comp:
        return None
    return Root(a.comp, tuple(x + y for x, y in zip(a.coords, b.coords)))


def root_sub(a: Root, b: Root):
    if a.comp != b.comp:
        return None
    return Root(a.comp, tuple(x - y for x, y in zip(a.coords, b.coords)))


class RootSystem:
    """The root system of a ReductiveShape, built once, queried a lot."""

    def __init__(self, shape: ReductiveShape):
        self.shape = shape
        self.cartans = [cartan_matrix(t) for t in shape.simples]
        self.dvecs = [norm_halves(t) for t in shape.simples]
        self.positives = []
        for ci, t in enumerate(shape.simples):
            pos = self._generate_positives(ci, t)
            expected = _ROOT_COUNTS[t.family](t.rank) // 2
            assert len(pos) == expected, (t, len(pos), expected)
            self.positives.extend(pos)
        self.positives.sort(key=Root.key)
        self.roots = tuple(self.positives) + tuple(-r for r in self.positives)
        self.root_set = frozenset(self.roots)
        # alpha(H_j) for every root alpha and simple coroot H_j of its component
        self._pairings = {}
        for r in self.roots:
            C = self.cartans[r.comp]
            n = len(C)
            self._pairings[r] = tuple(
                sum(r.coords[i] * C[i][j] for i in range(n)) for j in range(n))
        # reducedness: 2*alpha is never a root
        for r in self.positives:
            assert Root(r.comp, tuple(2 * c for c in r.coords)) not in self.root_set
        self._sym_memo = {}

    # -- construction --------------------------------------------------------

    def _generate_positives(self, ci, t: SimpleType):
        n = t.rank
        C = cartan_matrix(t)
        simples = [Root(ci, tuple(1 if j == i else 0 for j in range(n)))
                   for i in range(n)]
        known = set(simples)
        layer = list(simples)
        out = list(simples)
        while layer:
            nxt = []
            for a in layer:
                for i in range(n):
                    ai = simples[i]
                    # p = how far the alpha_i-string continues below a
                    p = 0
                    v = root_sub(a, ai)
                    while v in known:
                        p += 1
                        v = root_sub(v, ai)
                    c = sum(a.coords[k] * C[k][i] for k in range(n))
                    if p - c > 0:
                        up = root_sum(a, ai)
                        if up not in known:
                            known.add(up)
                            nxt.append(up)
                            out.append(up)
            layer = nxt
        return out

    # -- basic queries --------------------------------------------------------

    def is_root(self, r) -> bool:
        return r in self.root_set

    def simple_roots(self, ci):
        n = self.shape.simples[ci].rank
        return [Root(ci, tuple(1 if j == i else 0 for j in range(n)))
                for i in range(n)]

    def pairing(self, alpha: Root, j: int) -> int:
        """alpha(H_j) for the j-th simple coroot of alpha's component."""
        return self._pairings[alpha][j]

    def sym_form(self, a: Root, b: Root) -> Fraction:
        """Symmetric invariant form (a, b) = sum a_i b_j C[i][j] d_j.

        The per-family norm-half tables match the classical e_i realizations;
        only ratios of root lengths matter to anything computed from this.
        """
        if a.comp != b.comp:
            return Fraction(0)
        v = self._sym_memo.get((a, b))
        if v is None:
            d = self.dvecs[a.comp]
            pair = self._pairings[b]
            v = sum((a.coords[j] * pair[j]) * d[j] for j in range(len(d)))
            self._sym_memo[(a, b)] = v
            self._sym_memo[(b, a)] = v
        return v

    def norm2(self, a: Root) -> Fraction:
        return self.sym_form(a, a)

    def cartan_int(self, alpha: Root, beta: Root) -> int:
        """alpha(H_beta) = 2 (alpha, beta) / (beta, beta); 0 across components."""
        if beta not in self.root_set:
            raise ValueError("beta is not a root: %s" % (beta,))
        if alpha.comp != beta.comp:
            return 0
        v = 2 * self.sym_form(alpha, beta) / self.norm2(beta)
        assert v.denominator == 1
        return int(v)

    def root_string(self, alpha: Root, beta: Root):
        """(p, q) with p <= 0 <= q such that alpha + n*beta is a root
        exactly for p <= n <= q.  Errors out at alpha = +-beta."""
        if alpha not in self.root_set or beta not in self.root_set:
            raise ValueError("root_string needs two roots")
        if alpha.comp == beta.comp and (alpha == beta or alpha == -beta):
            raise ValueError("string through alpha = +-beta is undefined")
        if alpha.comp != beta.comp:
            return (0, 0)
        p = 0
        v = root_sub(alpha, beta)
        while v in self.root_set:
            p -= 1
            v = root_sub(v, beta)
        q = 0
        v = root_sum(alpha, beta)
        while v in self.root_set:
            q += 1
            v = root_sum(v, beta)
        return (p, q)

    # -- subsets ---------------------------------------------------------------

    def is_closed(self, subset) -> bool:
        """Closed under addition of roots: a,b in S, a+b a root => a+b in S."""
        sub = set(subset)
        for a in sub:
            for b in sub:
                s = root_sum(a, b)
                if s is not None and s in self.root_set and s not in sub:
                    return False
        return True

    def irreducible_components(self, subset):
        """Partition a symmetric subset by the non-orthogonality relation.

        Returns frozensets sorted by their minimal positive root; raises when
        the subset is not symmetric.
        """
        sub = set(subset)
        for a in sub:
            if -a not in sub:
                raise ValueError("subset is not symmetric: misses %s" % (-a,))
        parent = {a: a for a in sub}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        items = sorted(sub, key=Root.key)
        for i, a in enumerate(items):
            for b in items[i + 1:]:
                if a.comp == b.comp and self.sym_form(a, b) != 0:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
        groups = {}
        for a in sub:
            groups.setdefault(find(a), set()).add(a)
        comps = [frozenset(g) for g in groups.values()]
        comps.sort(key=lambda g: min(r.key() for r in g if r.positive))
        return comps

    def highest_roots(self, subset):
        """One highest root per irreducible component of a closed symmetric
        subsystem, in component order."""
        sub = set(subset)
        sym = sub | {-a for a in sub}
        if not self.is_closed(sym):
            raise ValueError("subset is not closed")
        out = []
        for comp in self.irreducible_components(sym):
            pos = [r for r in comp if r.positive]
            tops = [t for t in pos
                    if all(root_sum(t, b) not in comp for b in pos)]
            assert len(tops) == 1, "no unique maximal root in component"
            out.append(tops[0])
        return out

    def component_type(self, subset) -> SimpleType:
        """Recognize the isomorphism type of a closed irreducible symmetric
        subsystem from its induced Dynkin diagram."""
        sub = set(subset)
        pos = sorted((r for r in sub if r.positive), key=Root.key)
        possd = set(pos)
        simples = []
        for t in pos:
            decomposable = False
            for a in pos:
                if a == t:
                    continue
                b = root_sub(t, a)
                if b is not None and b in possd:
                    decomposable = True
                    break
            if not decomposable:
                simples.append(t)
        n = len(simples)
        assert n >= 1
        cmat = [[self.cartan_int(a, b) for b in simples] for a in simples]
        return _classify_diagram(simples, cmat, self)


def _classify_diagram(simples, cmat, rs) -> SimpleType:
    n = len(simples)
    if n == 1:
        return SimpleType("A", 1)
    edges = {}
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if cmat[i][j]:
                edges[(i, j)] = cmat[i][j] * cmat[j][i]
                adj[i].append(j)
                adj[j].append(i)
    assert len(edges) == n - 1, "subsystem diagram must be a tree"
    weights = sorted(edges.values())
    if weights[-1] == 3:
        assert n == 2
        return SimpleType("G", 2)
    if weights[-1] == 2:
        # path with one double edge: B, C, or F4
        assert all(len(v) <= 2 for v in adj.values())
        (i, j), = [e for e, w in edges.items() if w == 2]
        # side sizes when the double edge is cut
        def side_size(start, banned):
            seen = {banned, start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            return len(seen) - 1
        size_i = side_size(i, j)
        size_j = side_size(j, i)
        # cmat[i][j] == -2 means alpha_j is the short one
        if cmat[i][j] == -2:
            s_long, s_short = size_i, size_j
        else:
            s_long, s_short = size_j, size_i
        if n == 2:
            return SimpleType("B", 2)
        if s_long == n - 1:
            return SimpleType("B", n)
        if s_short == n - 1:
            return SimpleType("C", n)
        assert (s_long, s_short) == (2, 2) and n == 4
        return SimpleType("F", 4)
    # simply laced
    degs = sorted(len(v) for v in adj.values())
    if degs[-1] <= 2:
        return SimpleType("A", n)
    branch = [i for i in range(n) if len(adj[i]) == 3]
    assert len(branch) == 1, "diagram is not of finite type"
    b = branch[0]
    legs = []
    for start in adj[b]:
        length = 1
        prev, cur = b, start
        while True:
            nxts = [x for x in adj[cur] if x != prev]
            if not nxts:
                break
            assert len(nxts) == 1
            prev, cur = cur, nxts[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return SimpleType("D", n)
    assert legs[:2] == [1, 2] and legs[2] in (2, 3, 4)
    return SimpleType("E", n)


def build(shape: ReductiveShape) -> RootSystem:
    return RootSystem(shape)


@lru_cache(maxsize=None)
def build_cached(shape: ReductiveShape) -> RootSystem:
    return RootSystem(shape)
