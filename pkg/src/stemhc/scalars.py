"""Exact arithmetic in the field Q(i, sqrt(2)).

Every coefficient this library ever produces lives here: integer structure
constants, the unit phases attached to stem roots (including eighth roots of
unity like (sqrt2/2)(1+i)), and the sqrt2/2 factors coming out of the Cayley
maps.  A scalar is stored as four rationals over the basis {1, i, sqrt2,
i*sqrt2}, so equality, conjugation and inversion are exact and deterministic.
"""

from __future__ import annotations

import re
from fractions import Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % type(x).__name__)


class TowerScalar:
    """c0 + c1*i + c2*sqrt2 + c3*i*sqrt2 with rational coordinates."""

    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "c0", _as_fraction(c0))
        object.__setattr__(self, "c1", _as_fraction(c1))
        object.__setattr__(self, "c2", _as_fraction(c2))
        object.__setattr__(self, "c3", _as_fraction(c3))

    def __setattr__(self, name, value):
        raise AttributeError("TowerScalar is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def of(x) -> "TowerScalar":
        if isinstance(x, TowerScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return TowerScalar(x)
        raise TypeError("cannot coerce %r to TowerScalar" % (x,))

    def coords(self):
        return (self.c0, self.c1, self.c2, self.c3)

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        o = TowerScalar.of(other)
        return TowerScalar(self.c0 + o.c0, self.c1 + o.c1,
                           self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __sub__(self, other):
        o = TowerScalar.of(other)
        return TowerScalar(self.c0 - o.c0, self.c1 - o.c1,
                           self.c2 - o.c2, self.c3 - o.c3)

    def __rsub__(self, other):
        return TowerScalar.of(other).__sub__(self)

    def __neg__(self):
        return TowerScalar(-self.c0, -self.c1, -self.c2, -self.c3)

    def __mul__(self, other):
        o = TowerScalar.of(other)
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = o.c0, o.c1, o.c2, o.c3
        # fast paths: purely rational factors dominate the hot loops
        if not (a1 or a2 or a3):
            if not a0:
                return ZERO
            return TowerScalar(a0 * b0, a0 * b1, a0 * b2, a0 * b3)
        if not (b1 or b2 or b3):
            if not b0:
                return ZERO
            return TowerScalar(a0 * b0, a1 * b0, a2 * b0, a3 * b0)
        return TowerScalar(
            a0 * b0 - a1 * b1 + 2 * (a2 * b2 - a3 * b3),
            a0 * b1 + a1 * b0 + 2 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * TowerScalar.of(other).inv()

    def __rtruediv__(self, other):
        return TowerScalar.of(other) * self.inv()

    def inv(self) -> "TowerScalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self:
            raise ZeroDivisionError("inverse of zero TowerScalar")
        # product of the three nontrivial Galois conjugates, divided by the
        # rational norm s * conj_i(s) * conj_s2(s) * conj_i(conj_s2(s))
        ci = self.conj()                      # i -> -i
        cs = self._sqrt2_conj()               # sqrt2 -> -sqrt2
        cis = cs.conj()
        num = ci * cs * cis
        norm = self * num
        assert not (norm.c1 or norm.c2 or norm.c3), "norm must be rational"
        r = norm.c0
        return TowerScalar(num.c0 / r, num.c1 / r, num.c2 / r, num.c3 / r)

    # -- involutions ---------------------------------------------------------

    def conj(self) -> "TowerScalar":
        """Complex conjugation (i -> -i, sqrt2 fixed)."""
        return TowerScalar(self.c0, -self.c1, self.c2, -self.c3)

    def _sqrt2_conj(self) -> "TowerScalar":
        return TowerScalar(self.c0, self.c1, -self.c2, -self.c3)

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return bool(self.c0 or self.c1 or self.c2 or self.c3)

    def __eq__(self, other):
        try:
            o = TowerScalar.of(other)
        except TypeError:
            return NotImplemented
        return self.coords() == o.coords()

    def __hash__(self):
        return hash(self.coords())

    def is_unit_modulus(self) -> bool:
        """True iff s * conj(s) == 1."""
        return self * self.conj() == ONE

    def is_rational(self) -> bool:
        return not (self.c1 or self.c2 or self.c3)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational: %s" % self)
        return self.c0

    # -- numeric views -------------------------------------------------------

    def __complex__(self):
        s2 = 2 ** 0.5
        return complex(float(self.c0) + float(self.c2) * s2,
                       float(self.c1) + float(self.c3) * s2)

    # -- text ----------------------------------------------------------------

    def __str__(self):
        parts = []
        for coeff, unit in ((self.c0, ""), (self.c1, "i"),
                            (self.c2, "√2"), (self.c3, "i√2")):
            if coeff == 0:
                continue
            mag = -coeff if coeff < 0 else coeff
            body = str(mag) if (mag != 1 or not unit) else ""
            term = body + unit
            if not parts:
                parts.append(("-" if coeff < 0 else "") + term)
            else:
                parts.append((" - " if coeff < 0 else " + ") + term)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return "TowerScalar(%s)" % str(self)

    _TERM = re.compile(
        r"^([+-]?)(\d+(?:/\d+)?)?(i√2|i\*?sqrt2|isqrt2|√2|sqrt2|i)?$"
    )

    @staticmethod
    def parse(text: str) -> "TowerScalar":
        """Parse the textual form produced by str(); also accepts 'sqrt2'."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar literal")
        # split into signed terms, keeping each sign with its term
        chunks = re.split(r"(?=[+-])", s)
        chunks = [c for c in chunks if c]
        coords = [Fraction(0)] * 4
        slot = {"": 0, "i": 1, "√2": 2, "sqrt2": 2,
                "i√2": 3, "isqrt2": 3, "i*sqrt2": 3}
        for chunk in chunks:
            m = TowerScalar._TERM.match(chunk)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise ValueError("bad scalar term %r in %r" % (chunk, text))
            sign, mag, unit = m.groups()
            coeff = Fraction(mag) if mag is not None else Fraction(1)
            if sign == "-":
                coeff = -coeff
            coords[slot[unit or ""]] += coeff
        return TowerScalar(*coords)


ZERO = TowerScalar(0)
ONE = TowerScalar(1)
I = TowerScalar(0, 1)
SQRT2 = TowerScalar(0, 0, 1)
HALF = TowerScalar(Fraction(1, 2))
# the primitive eighth root of unity exp(i pi/4) = (sqrt2/2)(1 + i)
EIGHTH_ROOT = TowerScalar(0, 0, Fraction(1, 2), Fraction(1, 2))


def eighth_root_power(k: int) -> TowerScalar:
    """exp(i k pi / 4) as an exact scalar."""
    k %= 8
    out = ONE
    for _ in range(k):
        out = out * EIGHTH_ROOT
    return out
