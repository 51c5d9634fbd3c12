"""Exact coefficient arithmetic over Q(g).

Every number in this package is a rational function of the genus variable
``g`` with arbitrary-precision rational coefficients.  Two types live here:

* :class:`GenusPoly` -- an element of Q[g], stored as an ascending
  coefficient tuple with no trailing zeros, so equality is structural.
* :class:`GenusRational` -- an element of Q(g) in canonical form: the
  polynomial gcd of numerator and denominator is 1 and the denominator has
  coprime integer coefficients with positive leading coefficient.  With that
  normalization two equal values are structurally identical, which is what
  lets graded classes use plain ``==`` on coefficient dictionaries.

Integer genus specializations go through :func:`gr_eval`; integer-root
screening of determinants goes through :func:`poly_integer_roots`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Union

Q = Fraction

Coeffable = Union[int, Fraction, "GenusPoly"]


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _tup_add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _strip(out)


def _tup_neg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def _tup_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(x * c for x in a)
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _strip(out)


def _tup_divmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    # Exact polynomial division over Q; b must be nonzero.
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Q(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c:
            q = c / lead
            quo[k] = q
            for j, cb in enumerate(b):
                rem[k + j] -= q * cb
    return _strip(quo), _strip(rem)


def _tup_gcd(a: tuple, b: tuple) -> tuple:
    # Monic gcd via the Euclidean algorithm over Q.
    while b:
        a, b = b, _tup_divmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def _tup_eval(a: tuple, x: Fraction) -> Fraction:
    acc = Q(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _tup_content(a: tuple) -> Fraction:
    """Positive rational c with a/c integer, coprime coefficients."""
    num = 0
    den = 1
    for c in a:
        num = _int_gcd(num, c.numerator)
        den = den * c.denominator // _int_gcd(den, c.denominator)
    if num == 0:
        return Q(0)
    return Q(num, den)


class GenusPoly:
    """A polynomial in the genus variable with exact rational coefficients.

    >>> p = GenusPoly([336, 96])      # 96*g + 336, coefficients ascending
    >>> p(2)
    Fraction(528, 1)
    >>> p * GenusPoly([0, 1])
    GenusPoly('96*g^2 + 336*g')
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, GenusPoly):
            self.coeffs = coeffs.coeffs
        else:
            self.coeffs = _strip([Q(c) for c in coeffs])

    @staticmethod
    def _raw(coeffs: tuple) -> "GenusPoly":
        p = GenusPoly.__new__(GenusPoly)
        p.coeffs = coeffs
        return p

    @staticmethod
    def const(c) -> "GenusPoly":
        c = Q(c)
        return GenusPoly._raw((c,) if c else ())

    @staticmethod
    def gen() -> "GenusPoly":
        """The variable g itself."""
        return GenusPoly._raw((Q(0), Q(1)))

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree in g; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Q(0)
        return self.coeffs[-1]

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else Q(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, GenusPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == GenusPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "GenusPoly":
        if isinstance(other, GenusPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return GenusPoly.const(other)
        raise TypeError(f"cannot coerce {other!r} to GenusPoly")

    def __add__(self, other):
        if not isinstance(other, (GenusPoly, int, Fraction)):
            return NotImplemented
        return GenusPoly._raw(_tup_add(self.coeffs, self._coerce(other).coeffs))

    __radd__ = __add__

    def __neg__(self):
        return GenusPoly._raw(_tup_neg(self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (GenusPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (GenusPoly, int, Fraction)):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (GenusPoly, int, Fraction)):
            return NotImplemented
        return GenusPoly._raw(_tup_mul(self.coeffs, self._coerce(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = GenusPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "GenusPoly") -> tuple["GenusPoly", "GenusPoly"]:
        q, r = _tup_divmod(self.coeffs, self._coerce(other).coeffs)
        return GenusPoly._raw(q), GenusPoly._raw(r)

    def gcd(self, other: "GenusPoly") -> "GenusPoly":
        """Monic polynomial gcd."""
        return GenusPoly._raw(_tup_gcd(self.coeffs, self._coerce(other).coeffs))

    def __call__(self, g0) -> Fraction:
        return _tup_eval(self.coeffs, Q(g0))

    def content(self) -> Fraction:
        return _tup_content(self.coeffs)

    def primitive(self) -> tuple["GenusPoly", Fraction]:
        """Split off the rational content: returns (prim, c) with
        self == c * prim, prim having coprime integer coefficients and
        positive leading coefficient."""
        if not self.coeffs:
            return self, Q(0)
        c = _tup_content(self.coeffs)
        if self.coeffs[-1] < 0:
            c = -c
        return GenusPoly._raw(tuple(x / c for x in self.coeffs)), c

    # -- I/O -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else f"{mag}*"
                term = f"{head}g" if i == 1 else f"{head}g^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GenusPoly('{self}')"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: list[str]) -> "GenusPoly":
        return GenusPoly([Q(s) for s in data])


_P_ZERO = GenusPoly._raw(())
_P_ONE = GenusPoly._raw((Q(1),))

_COERCIBLE = (int, Fraction, GenusPoly)  # plus GenusRational, appended below


class GenusRational:
    """An element of Q(g) in canonical form.

    Canonical means: ``num`` is zero with ``den`` one, or gcd(num, den) = 1
    with ``den`` having coprime integer coefficients and positive leading
    coefficient.  Equality and hashing are structural.

    >>> GenusRational.of(GenusPoly([2, 2]), GenusPoly([1, 1]))
    GenusRational('2')
    >>> GenusRational.of(GenusPoly([-9, -3]), GenusPoly([6, 2]))
    GenusRational('-3/2')
    """

    __slots__ = ("num", "den")

    def __init__(self, num: GenusPoly, den: GenusPoly):
        # Trusted constructor: callers must pass canonical data.
        self.num = num
        self.den = den

    @staticmethod
    def of(num: Coeffable, den: Coeffable = 1) -> "GenusRational":
        """Build and canonicalize num/den."""
        if not isinstance(num, GenusPoly):
            num = GenusPoly.const(num)
        if not isinstance(den, GenusPoly):
            den = GenusPoly.const(den)
        return gr_normalize(num, den)

    @staticmethod
    def const(c) -> "GenusRational":
        c = Q(c)
        if not c:
            return GR_ZERO
        return GenusRational(GenusPoly.const(c), _P_ONE)

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, GenusRational):
            return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs
        if isinstance(other, (int, Fraction)):
            return self == GenusRational.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def is_const(self) -> bool:
        return self.num.is_const() and self.den == _P_ONE

    def const_value(self) -> Fraction:
        if self.den != _P_ONE:
            raise ValueError(f"{self} is not constant")
        return self.num.const_value()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "GenusRational":
        if isinstance(other, GenusRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GenusRational.const(other)
        if isinstance(other, GenusPoly):
            return gr_normalize(other, _P_ONE)
        raise TypeError(f"cannot coerce {other!r} to GenusRational")

    def __add__(self, other):
        if not isinstance(other, _COERCIBLE):
            return NotImplemented
        other = self._coerce(other)
        if self.den == _P_ONE and other.den == _P_ONE:
            n = _tup_add(self.num.coeffs, other.num.coeffs)
            if not n:
                return GR_ZERO
            return GenusRational(GenusPoly._raw(n), _P_ONE)
        return gr_normalize(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return GenusRational(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, _COERCIBLE):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _COERCIBLE):
            return NotImplemented
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, _COERCIBLE):
            return NotImplemented
        other = self._coerce(other)
        if not self.num or not other.num:
            return GR_ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            return GenusRational(
                GenusPoly._raw(_tup_mul(self.num.coeffs, other.num.coeffs)), _P_ONE
            )
        return gr_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _COERCIBLE):
            return NotImplemented
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(g)")
        return gr_normalize(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k == 0:
            return GR_ONE
        if k < 0:
            return GR_ONE / self ** (-k)
        return gr_normalize(self.num**k, self.den**k)

    # -- I/O -----------------------------------------------------------------

    def __str__(self) -> str:
        if self.den == _P_ONE:
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if self.num.degree > 0 or any(c < 0 for c in self.num.coeffs):
            num = f"({num})"
        if self.den.degree > 0:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"GenusRational('{self}')"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "GenusRational":
        return gr_normalize(
            GenusPoly.from_json(data["num"]), GenusPoly.from_json(data["den"])
        )


_COERCIBLE = _COERCIBLE + (GenusRational,)

GR_ZERO = GenusRational(_P_ZERO, _P_ONE)
GR_ONE = GenusRational(_P_ONE, _P_ONE)


def gr_normalize(num: GenusPoly, den: GenusPoly) -> GenusRational:
    """Canonicalize num/den in Q(g).

    Cancels the polynomial gcd, then rescales so the denominator has coprime
    integer coefficients and positive leading coefficient.  Structural
    equality of the result is value equality.
    """
    if not den:
        raise ZeroDivisionError("zero denominator in Q(g)")
    if not num:
        return GR_ZERO
    if den.degree > 0:
        g = num.gcd(den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
    den_prim, c = den.primitive()
    if c != 1:
        num = GenusPoly._raw(tuple(x / c for x in num.coeffs))
    return GenusRational(num, den_prim)


def gr_eval(x: GenusRational, g0) -> Fraction:
    """Evaluate an element of Q(g) at an integer (or rational) genus.

    Raises ZeroDivisionError at a pole of the denominator.
    """
    g0 = Q(g0)
    den = x.den(g0)
    if not den:
        raise ZeroDivisionError(f"pole of {x} at g = {g0}")
    return x.num(g0) / den


def poly_integer_roots(p: GenusPoly, gmin: int) -> list[int]:
    """All integer roots of p that are >= gmin, found exactly.

    Candidates come from the rational-root theorem applied to the primitive
    integer form of p (after stripping a power of g), each candidate is
    verified by exact evaluation.  The zero polynomial has no well-defined
    root set and is rejected.
    """
    if not p.coeffs:
        raise ValueError("the zero polynomial vanishes identically")
    prim, _ = p.primitive()
    coeffs = [int(c) for c in prim.coeffs]
    val = 0
    while coeffs[val] == 0:
        val += 1
    roots = set()
    if val > 0 and 0 >= gmin:
        roots.add(0)
    stripped = coeffs[val:]
    if len(stripped) > 1:
        a0 = abs(stripped[0])
        # Cauchy bound caps |root|, divisors of the constant term list them.
        bound = 1 + max(abs(c) for c in stripped) // abs(stripped[-1])
        d = 1
        divisors = set()
        while d * d <= a0:
            if a0 % d == 0:
                divisors.add(d)
                divisors.add(a0 // d)
            d += 1
        for d in divisors:
            if d > bound:
                continue
            for r in (d, -d):
                if r >= gmin and _tup_eval(prim.coeffs, Q(r)) == 0:
                    roots.add(r)
    return sorted(r for r in roots if r >= gmin)
