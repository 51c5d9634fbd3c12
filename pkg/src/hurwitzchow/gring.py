"""Truncated graded-commutative rings with monomial rewrite rules.

A ring context fixes a list of generators with positive integer degrees, a
truncation degree (everything above it is discarded), and a confluent set of
rewrite rules of the shape ``x^r -> lower-order class``.  All generators here
model algebraic cycle classes of even total degree, so the ring is honestly
commutative and sparse dictionaries of monomials work.

Rules must be homogeneous and their right-hand sides normal with strictly
smaller exponents in the rewritten generator, which makes the system
terminating and confluent: each rule owns the pure power of its own
generator, so critical pairs never overlap.

Monomial keys are packed ints (see ``_kernel_py`` for the layout).  Classes
are immutable by convention: every operation builds a new term dict.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeffs import GR_ONE, GR_ZERO, GenusPoly, GenusRational, gr_eval

if os.environ.get("HURWITZ_CHOW_PURE"):
    from . import _kernel_py as _k
else:
    try:
        from . import _kernel as _k  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _k

KERNEL_KIND = _k.KERNEL_KIND

_EXP_BITS = 6
_EXP_MASK = 0x3F
_DEG_BITS = 8

Scalar = (int, Fraction, GenusPoly, GenusRational)


def _as_coeff(c) -> GenusRational:
    if isinstance(c, GenusRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GenusRational.const(c)
    if isinstance(c, GenusPoly):
        return GenusRational.of(c)
    raise TypeError(f"not a coefficient: {c!r}")


class RingCtx:
    """Shared context for a family of :class:`GradedClass` values."""

    def __init__(
        self,
        gens: Sequence[tuple[str, int]],
        cut: int,
        aux_flags: Sequence[bool] | None = None,
        aux_cut: int = -1,
    ):
        names = tuple(name for name, _ in gens)
        degrees = tuple(int(d) for _, d in gens)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        if any(d <= 0 for d in degrees):
            raise ValueError("generator degrees must be positive")
        if not 0 <= cut <= 31:
            raise ValueError("truncation degree must lie in 0..31")
        self.names = names
        self.degrees = degrees
        self.cut = cut
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.aux_flags = (
            tuple(bool(f) for f in aux_flags) if aux_flags is not None else (False,) * self.nvars
        )
        self.aux_cut = aux_cut
        self.shift_aux = _EXP_BITS * self.nvars
        self.shift_deg = self.shift_aux + _DEG_BITS
        self.unit_keys = tuple(
            (1 << (_EXP_BITS * i))
            + (degrees[i] << self.shift_deg)
            + ((degrees[i] << self.shift_aux) if self.aux_flags[i] else 0)
            for i in range(self.nvars)
        )
        # rules[var index] = (power, rhs term dict); _rule_table is the
        # kernel-facing tuple sorted by variable index.
        self.rules: dict[int, tuple[int, dict]] = {}
        self._rule_table: tuple = ()

    # -- monomial packing ----------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        key = 0
        for i, e in enumerate(exps):
            if e:
                key += e * self.unit_keys[i]
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (_EXP_BITS * i)) & _EXP_MASK for i in range(self.nvars))

    def key_degree(self, key: int) -> int:
        return key >> self.shift_deg

    # -- rules ---------------------------------------------------------------

    def install_rule(self, name: str, power: int, rhs: "GradedClass") -> None:
        """Register ``name^power -> rhs``.

        The right-hand side must already be in normal form, homogeneous of
        degree ``power * deg(name)``, and use the rewritten generator only
        with exponents below ``power``.
        """
        v = self.index[name]
        if rhs.ring is not self:
            raise ValueError("rule right-hand side lives in a different ring")
        want = power * self.degrees[v]
        sv = _EXP_BITS * v
        for key in rhs.terms:
            if (key >> self.shift_deg) != want:
                raise ValueError(f"rule for {name} is not homogeneous of degree {want}")
            if ((key >> sv) & _EXP_MASK) >= power:
                raise ValueError(f"rule for {name} does not lower its own exponent")
        self.rules[v] = (power, dict(rhs.terms))
        self._rule_table = tuple(
            (_EXP_BITS * w, p, p * self.unit_keys[w], terms)
            for w, (p, terms) in sorted(self.rules.items())
        )

    # -- class constructors ----------------------------------------------------

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def one(self) -> "GradedClass":
        return GradedClass(self, {0: GR_ONE})

    def scalar(self, c) -> "GradedClass":
        c = _as_coeff(c)
        return GradedClass(self, {0: c} if c else {})

    def gen(self, name: str) -> "GradedClass":
        i = self.index[name]
        if self.degrees[i] > self.cut:
            return self.zero()
        return GradedClass(self, {self.unit_keys[i]: GR_ONE})

    def monomial(self, exps: Mapping[str, int], coeff=1) -> "GradedClass":
        key = self.pack([exps.get(n, 0) for n in self.names])
        c = _as_coeff(coeff)
        if not c or self.key_degree(key) > self.cut:
            return self.zero()
        cls = GradedClass(self, {key: c})
        return cls._reduced()

    def from_terms(self, terms: dict) -> "GradedClass":
        return GradedClass(self, terms)

    def signature(self) -> str:
        """Stable textual identity: generators, cut, and installed rules."""
        rules = [
            (self.names[v], p, sorted((str(k), str(c)) for k, c in terms.items()))
            for v, (p, terms) in sorted(self.rules.items())
        ]
        return repr((self.names, self.degrees, self.cut, self.aux_cut, rules))

    def __repr__(self):
        return f"RingCtx({', '.join(f'{n}:{d}' for n, d in zip(self.names, self.degrees))}; cut={self.cut})"


def ring_capped(ring: "RingCtx", cut: int) -> "RingCtx":
    """A truncated view of ``ring``: same generators, same packed-key layout,
    same rewrite rules (right-hand sides filtered), but a smaller cut.

    Classes move between the two rings by reusing term dicts verbatim,
    dropping keys above the smaller cut on the way down.
    """
    if cut >= ring.cut:
        return ring
    shadow = RingCtx(
        list(zip(ring.names, ring.degrees)), cut, ring.aux_flags, ring.aux_cut
    )
    for v, (power, terms) in sorted(ring.rules.items()):
        kept = {k: c for k, c in terms.items() if (k >> ring.shift_deg) <= cut}
        shadow.install_rule(ring.names[v], power, GradedClass(shadow, kept))
    return shadow


def class_capped(cls: "GradedClass", ring: "RingCtx") -> "GradedClass":
    """Move a class between a ring and a capped view of it (either way).

    Valid only for rings produced by ring_capped from a common ancestor, so
    the packed-key layout matches and terms transfer verbatim.
    """
    return ring.from_terms(
        {k: c for k, c in cls.terms.items() if ring.key_degree(k) <= ring.cut}
    )


def ring_new(
    gens: Sequence[tuple[str, int]],
    cut: int,
    rules: Mapping[str, tuple[int, Mapping[str, int] | "GradedClass"]] | None = None,
) -> RingCtx:
    """Build a ring context; ``rules`` maps a generator name to
    ``(power, right-hand side)`` where the right-hand side is a class or a
    plain ``{name: exponent}`` monomial mapping taken with coefficient -1
    style semantics is NOT assumed: pass an explicit class for anything
    beyond a single monomial."""
    ring = RingCtx(gens, cut)
    if rules:
        for name, (power, rhs) in rules.items():
            if not isinstance(rhs, GradedClass):
                rhs = ring.monomial(rhs)
            ring.install_rule(name, power, rhs)
    return ring


class GradedClass:
    """A truncated graded ring element: sparse terms, canonical coefficients.

    Supports ``+ - * **`` against other classes of the same ring and against
    scalars (int, Fraction, GenusPoly, GenusRational).
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingCtx, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- helpers -------------------------------------------------------------

    def _reduced(self) -> "GradedClass":
        r = self.ring
        if not r._rule_table:
            return self
        return GradedClass(
            r,
            _k.reduce_terms(self.terms, r._rule_table, r.shift_deg, r.shift_aux, r.cut, r.aux_cut),
        )

    def _check_ring(self, other: "GradedClass"):
        if other.ring is not self.ring:
            raise ValueError("classes from different rings")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedClass):
            if self.ring is not other.ring and self.ring.signature() != other.ring.signature():
                return False
            return self.terms == other.terms
        if isinstance(other, Scalar):
            return self == self.ring.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Scalar):
            other = self.ring.scalar(other)
        self._check_ring(other)
        return GradedClass(self.ring, _k.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Scalar):
            other = self.ring.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        r = self.ring
        if isinstance(other, Scalar):
            c = _as_coeff(other)
            if not c:
                return r.zero()
            return GradedClass(r, _k.scale_terms(self.terms, c))
        self._check_ring(other)
        raw = _k.mul_terms(
            self.terms, other.terms, r.shift_deg, r.shift_aux, r.cut, r.aux_cut
        )
        return GradedClass(r, raw)._reduced()

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            c = _as_coeff(other)
            return self * (GR_ONE / c)
        return self * class_inverse(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a graded class")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- structure ---------------------------------------------------------------

    def degrees_present(self) -> list[int]:
        return sorted({self.ring.key_degree(k) for k in self.terms})

    def graded_part(self, d: int) -> "GradedClass":
        r = self.ring
        if d < 0 or d > r.cut:
            raise ValueError(f"degree {d} outside 0..{r.cut}")
        sd = r.shift_deg
        return GradedClass(r, {k: c for k, c in self.terms.items() if (k >> sd) == d})

    def coefficient(self, exps: Mapping[str, int]) -> GenusRational:
        key = self.ring.pack([exps.get(n, 0) for n in self.ring.names])
        return self.terms.get(key, GR_ZERO)

    def constant_term(self) -> GenusRational:
        return self.terms.get(0, GR_ZERO)

    def items_sorted(self):
        """(exponent tuple, coeff) pairs in degree-then-lex order."""
        r = self.ring
        rows = [(r.key_degree(k), r.unpack(k), c) for k, c in self.terms.items()]
        rows.sort(key=lambda t: (t[0], t[1]))
        return [(exps, c) for _, exps, c in rows]

    def eval_genus(self, g0) -> "GradedClass":
        """Specialize every coefficient at an integer genus."""
        out = {}
        for k, c in self.terms.items():
            v = gr_eval(c, g0)
            if v:
                out[k] = GenusRational.const(v)
        return GradedClass(self.ring, out)

    def map_coeffs(self, f) -> "GradedClass":
        out = {}
        for k, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[k] = c2
        return GradedClass(self.ring, out)

    # -- I/O ----------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        r = self.ring
        parts = []
        for exps, c in self.items_sorted():
            mono = "*".join(
                r.names[i] if e == 1 else f"{r.names[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            cs = str(c)
            if "+" in cs or "-" in cs[1:] or "/" in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<GradedClass {self}>"

    def to_json(self) -> dict:
        r = self.ring
        terms = []
        for exps, c in self.items_sorted():
            mono = {r.names[i]: e for i, e in enumerate(exps) if e}
            terms.append({"monomial": mono, "coeff": c.to_json()})
        return {"terms": terms}

    @staticmethod
    def from_json(ring: RingCtx, data: dict) -> "GradedClass":
        out = ring.zero()
        for t in data["terms"]:
            out = out + ring.monomial(t["monomial"], GenusRational.from_json(t["coeff"]))
        return out


# -- module-level operation aliases (the functional face of the same ops) -----


def class_mul(a: GradedClass, b: GradedClass) -> GradedClass:
    return a * b


def class_add(a: GradedClass, b: GradedClass) -> GradedClass:
    return a + b


def graded_part(a: GradedClass, d: int) -> GradedClass:
    return a.graded_part(d)


def class_inverse(a: GradedClass) -> GradedClass:
    """Multiplicative inverse of a class with invertible degree-0 part,
    computed as a geometric series that terminates at the truncation."""
    r = a.ring
    c0 = a.constant_term()
    if not c0:
        raise ZeroDivisionError("class has no invertible constant term")
    inv0 = GR_ONE / c0
    n = (a - r.scalar(c0)) * inv0  # strictly positive degree
    out = r.one()
    power = r.one()
    for _ in range(r.cut):
        power = power * n
        if not power:
            break
        out = out + (power if _ % 2 == 1 else -power)
    return out * inv0


def class_substitute(a: GradedClass, mapping: Mapping[str, GradedClass]) -> GradedClass:
    """Replace generators by classes.

    All replacement classes must share one ring; generators of ``a`` that are
    not replaced must exist (same name, same degree) in that target ring.
    """
    if not mapping:
        return a
    target = next(iter(mapping.values())).ring
    for cls in mapping.values():
        if cls.ring is not target:
            raise ValueError("replacement classes live in different rings")
    src = a.ring
    images: list[GradedClass] = []
    for i, name in enumerate(src.names):
        if name in mapping:
            images.append(mapping[name])
        else:
            if name not in target.index or target.degrees[target.index[name]] != src.degrees[i]:
                raise ValueError(f"generator {name} has no image in the target ring")
            images.append(target.gen(name))
    powers: list[dict[int, GradedClass]] = [dict() for _ in src.names]

    def img_pow(i: int, e: int) -> GradedClass:
        got = powers[i].get(e)
        if got is None:
            got = images[i] ** e
            powers[i][e] = got
        return got

    out = target.zero()
    for exps, c in a.items_sorted():
        term = target.scalar(c)
        for i, e in enumerate(exps):
            if e:
                term = term * img_pow(i, e)
        out = out + term
    return out
