"""Exact arithmetic in Q(sqrt 5) and the prime ideals of Z[(1+sqrt5)/2].

QElem stores (u + v*sqrt5)/d in lowest terms with d > 0.  All sign and
comparison logic is exact integer arithmetic; nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .finitefield import GF, is_prime


@dataclass(frozen=True)
class QElem:
    """(u + v*sqrt5)/d, reduced: gcd(u, v, d) = 1 and d > 0."""

    u: int
    v: int = 0
    d: int = 1

    def __post_init__(self):
        u, v, d = self.u, self.v, self.d
        if d == 0:
            raise ValueError("zero denominator")
        if d < 0:
            u, v, d = -u, -v, -d
        g = gcd(gcd(abs(u), abs(v)), d)
        if g > 1:
            u, v, d = u // g, v // g, d // g
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "d", d)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "QElem":
        if isinstance(other, QElem):
            return other
        if isinstance(other, int):
            return QElem(other, 0, 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(self.u * o.d + o.u * self.d, self.v * o.d + o.v * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __neg__(self):
        return QElem(-self.u, -self.v, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QElem(
            self.u * o.u + 5 * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d * o.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QElem":
        n = self.u * self.u - 5 * self.v * self.v
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/x = conj(x) * d^2 / (u^2 - 5 v^2)
        return QElem(self.u * self.d, -self.v * self.d, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    # -- field invariants ---------------------------------------------------

    def conj(self) -> "QElem":
        """Galois conjugate: sqrt5 -> -sqrt5."""
        return QElem(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.u * self.u - 5 * self.v * self.v, self.d * self.d)

    def trace(self) -> Fraction:
        return Fraction(2 * self.u, self.d)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_rational(self) -> bool:
        return self.v == 0

    def is_integral(self) -> bool:
        """Membership in Z[(1+sqrt5)/2]: d in {1, 2}, and u = v mod 2 if d = 2."""
        if self.d == 1:
            return True
        if self.d == 2:
            return (self.u - self.v) % 2 == 0
        return False

    def sign_embedding(self, conjugate: bool = False) -> int:
        """Exact sign of the real embedding sending sqrt5 to +2.236... (or its conjugate)."""
        u, v = self.u, self.v
        if conjugate:
            v = -v
        if v == 0:
            return 0 if u == 0 else (1 if u > 0 else -1)
        if u == 0:
            return 1 if v > 0 else -1
        if u > 0 and v > 0:
            return 1
        if u < 0 and v < 0:
            return -1
        # mixed signs: compare u^2 against 5 v^2 (equality impossible, sqrt5 irrational)
        if u * u > 5 * v * v:
            return 1 if u > 0 else -1
        return 1 if v > 0 else -1

    def is_positive(self) -> bool:
        return self.sign_embedding(False) > 0

    def is_totally_positive(self) -> bool:
        return self.sign_embedding(False) > 0 and self.sign_embedding(True) > 0

    def is_totally_nonnegative(self) -> bool:
        return self.sign_embedding(False) >= 0 and self.sign_embedding(True) >= 0

    # -- {1, omega} coordinates, omega = (1 + sqrt5)/2 ----------------------

    def omega_coords(self) -> tuple[int, int]:
        """Integral x + y*omega coordinates; requires an integral element."""
        if not self.is_integral():
            raise ValueError(f"{self!r} is not integral")
        if self.d == 1:
            return (self.u - self.v, 2 * self.v)
        return ((self.u - self.v) // 2, self.v)

    @staticmethod
    def from_omega_coords(x: int, y: int) -> "QElem":
        return QElem(2 * x + y, y, 2)

    def in_2ofield(self) -> bool:
        """True iff the element lies in 2*Z[omega] (both omega-coordinates even)."""
        x, y = self.omega_coords()
        return x % 2 == 0 and y % 2 == 0

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if self.v == 0:
            core = str(self.u)
        else:
            vpart = "sqrt5" if abs(self.v) == 1 else f"{abs(self.v)}*sqrt5"
            sign = "+" if self.v > 0 else "-"
            if self.u == 0:
                core = vpart if self.v > 0 else f"-{vpart}"
            else:
                core = f"{self.u}{sign}{vpart}"
        if self.d == 1:
            return core
        return f"({core})/{self.d}"


ZERO = QElem(0, 0)
ONE = QElem(1, 0)
SQRT5 = QElem(0, 1)
OMEGA = QElem(1, 1, 2)  # fundamental unit (1 + sqrt5)/2


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime ideal of Z[omega], keyed by the rational prime below it.

    kind "split":    <p, sqrt5 - c> with c^2 = 5 mod p, 0 < c < p
    kind "inert":    (p) for p = +-2 mod 5
    kind "ramified": (sqrt5), the unique prime over 5
    """

    p: int
    kind: str
    c: int | None = None

    def __post_init__(self):
        if self.kind not in ("split", "inert", "ramified"):
            raise ValueError(f"bad kind {self.kind!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind == "ramified":
            if self.p != 5 or self.c is not None:
                raise ValueError("ramified ideal is the prime over 5")
        elif self.kind == "inert":
            if self.c is not None:
                raise ValueError("inert ideal carries no root")
            if self.p % 5 not in (2, 3):
                raise ValueError(f"{self.p} is not inert (p mod 5 must be 2 or 3)")
        else:
            if self.p % 5 not in (1, 4):
                raise ValueError(f"{self.p} is not split (p mod 5 must be 1 or 4)")
            if self.c is None or not 0 < self.c < self.p:
                raise ValueError("split ideal needs a root 0 < c < p")
            if (self.c * self.c - 5) % self.p != 0:
                raise ValueError(f"{self.c}^2 != 5 mod {self.p}")

    @staticmethod
    def split(p: int, c: int) -> "PrimeIdeal":
        """<p, sqrt5 - c>; c is reduced mod p, so <p, sqrt5 + c> arrives as p - c."""
        return PrimeIdeal(p, "split", c % p)

    @staticmethod
    def inert(p: int) -> "PrimeIdeal":
        return PrimeIdeal(p, "inert")

    @staticmethod
    def ramified() -> "PrimeIdeal":
        return PrimeIdeal(5, "ramified")

    @property
    def norm(self) -> int:
        return self.p * self.p if self.kind == "inert" else self.p

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == "inert" else 1

    def conjugate(self) -> "PrimeIdeal":
        if self.kind == "split":
            return PrimeIdeal(self.p, "split", self.p - self.c)
        return self

    def label(self) -> str:
        if self.kind == "split":
            return f"{self.p}:{self.c}"
        if self.kind == "ramified":
            return "sqrt5"
        return str(self.p)

    def __str__(self) -> str:
        return self.label()

    def residue_image(self, x: QElem) -> tuple[int, ...]:
        """Image of an integral element in the residue field.

        Split and ramified primes reduce to a single residue mod p (sqrt5 maps
        to c, resp. 0); inert primes reduce to a pair (a, b) = a + b*sqrt5 in
        F_p^2, p odd.  Used for ideal membership and residue symbols.
        """
        if not x.is_integral():
            raise ValueError(f"{x!r} is not integral")
        p = self.p
        if p == 2:
            # residue field F_4 in the {1, omega} basis; zero iff in the ideal
            a, b = x.omega_coords()
            return (a % 2, b % 2)
        dinv = pow(x.d, -1, p)  # d in {1, 2}, p odd here
        if self.kind == "inert":
            return ((x.u * dinv) % p, (x.v * dinv) % p)
        c = 0 if self.kind == "ramified" else self.c
        return (((x.u + x.v * c) * dinv) % p,)

    def contains(self, x: QElem) -> bool:
        return all(r == 0 for r in self.residue_image(x))


def splitting_type(p: int) -> PrimeIdeal:
    """Canonical prime over p: for split p the root with c <= p - c is chosen."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 5:
        return PrimeIdeal.ramified()
    if p % 5 in (2, 3):
        return PrimeIdeal.inert(p)
    root = GF(p).sqrt((5 % p,))
    assert root is not None  # 5 is a square mod p exactly when p = +-1 mod 5
    c = root[0]
    c = min(c, p - c)
    return PrimeIdeal.split(p, c)


def prime_ideals_above(p: int) -> list[PrimeIdeal]:
    t = splitting_type(p)
    if t.kind == "split":
        return [t, t.conjugate()]
    return [t]


def parse_ideal_label(s: str) -> PrimeIdeal:
    """Inverse of PrimeIdeal.label(): 'p' | 'sqrt5' | 'p:c', bit-exact round-trip."""
    s = s.strip()
    if s == "sqrt5":
        return PrimeIdeal.ramified()
    if ":" in s:
        ptxt, _, ctxt = s.partition(":")
        try:
            p, c = int(ptxt), int(ctxt)
        except ValueError:
            raise ValueError(f"bad ideal label {s!r}") from None
        if not 0 < c < p:
            raise ValueError(f"bad ideal label {s!r}: root must satisfy 0 < c < p")
        return PrimeIdeal(p, "split", c)
    try:
        p = int(s)
    except ValueError:
        raise ValueError(f"bad ideal label {s!r}") from None
    return PrimeIdeal.inert(p)
