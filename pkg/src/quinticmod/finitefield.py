"""Finite fields F_p, F_p2 and the tower F_p4, with deterministic enumeration.

Elements are tuples of f residues mod p.  F_p2 is F_p[x]/(x^2 - n) for the
least non-residue n; F_p4 is built as a quadratic extension of F_p2 rather
than from a quartic polynomial, so every operation bottoms out in F_p.
"""
from __future__ import annotations

_SIEVE_LIMIT = 1 << 12
_sieve: bytearray = bytearray()


def _grow_sieve(n: int) -> None:
    global _sieve, _SIEVE_LIMIT
    while _SIEVE_LIMIT <= n:
        _SIEVE_LIMIT *= 4
    limit = _SIEVE_LIMIT
    s = bytearray([1]) * limit
    s[0] = s[1] = 0
    i = 2
    while i * i < limit:
        if s[i]:
            s[i * i :: i] = bytearray(len(range(i * i, limit, i)))
        i += 1
    _sieve = s


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n >= len(_sieve):
        _grow_sieve(n)
    return bool(_sieve[n])


def primes_upto(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n >= len(_sieve):
        _grow_sieve(n)
    return [i for i in range(2, n + 1) if _sieve[i]]


class GF:
    """F_q with q = p^f, f in {1, 2, 4}; p an odd prime.

    coords convention: (a0,) for f=1; (a0, a1) = a0 + a1*w with w^2 = nonres
    for f=2; (a0, a1, b0, b1) = A + B*y with A = a0 + a1*w, B = b0 + b1*w and
    y^2 = tower_m for f=4.  encode() packs coords as base-p digits, most
    significant first, and enumeration order is encode order.
    """

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if f not in (1, 2, 4):
            raise ValueError(f"extension degree must be 1, 2 or 4, got {f}")
        self.p = p
        self.f = f
        self.q = p**f
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)
        self.nonres: int | None = None
        self.tower_m: tuple[int, int] | None = None
        if f >= 2:
            self.nonres = self._least_nonresidue()
        if f == 4:
            self.tower_m = self._base2_nonsquare()
        self._ts_nonsquare: tuple[int, ...] | None = None

    def __repr__(self) -> str:
        return f"GF({self.p}, {self.f})"

    def _least_nonresidue(self) -> int:
        p = self.p
        for n in range(2, p):
            if pow(n, (p - 1) // 2, p) == p - 1:
                return n
        raise AssertionError("no non-residue found")  # p odd prime: unreachable

    def _base2_nonsquare(self) -> tuple[int, int]:
        # first non-square of F_p2 in enumeration order
        base = GF(self.p, 2)
        for i in range(1, base.q):
            x = base.decode(i)
            if not base.is_square(x):
                return x
        raise AssertionError("no non-square in F_p^2")

    # -- tuple arithmetic ---------------------------------------------------

    def add(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x: tuple) -> tuple:
        p = self.p
        return tuple((-a) % p for a in x)

    def mul(self, x: tuple, y: tuple) -> tuple:
        p = self.p
        if self.f == 1:
            return ((x[0] * y[0]) % p,)
        if self.f == 2:
            n = self.nonres
            a0, a1 = x
            b0, b1 = y
            return ((a0 * b0 + n * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)
        # f == 4: (A + B y)(C + D y) = (AC + m BD) + (AD + BC) y over F_p2
        n = self.nonres
        m0, m1 = self.tower_m
        A = (x[0], x[1])
        B = (x[2], x[3])
        C = (y[0], y[1])
        D = (y[2], y[3])

        def mul2(u, v):
            return ((u[0] * v[0] + n * u[1] * v[1]) % p, (u[0] * v[1] + u[1] * v[0]) % p)

        def add2(u, v):
            return ((u[0] + v[0]) % p, (u[1] + v[1]) % p)

        AC = mul2(A, C)
        BD = mul2(B, D)
        AD = mul2(A, D)
        BC = mul2(B, C)
        re = add2(AC, mul2((m0, m1), BD))
        im = add2(AD, BC)
        return (re[0], re[1], im[0], im[1])

    def pow(self, x: tuple, e: int) -> tuple:
        """Square-and-multiply; 0^0 = 1 by convention."""
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: tuple) -> tuple:
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.q - 2)

    def from_int(self, n: int) -> tuple:
        return (n % self.p,) + (0,) * (self.f - 1)

    def frobenius(self, x: tuple) -> tuple:
        return self.pow(x, self.p)

    # -- encoding and enumeration -------------------------------------------

    def encode(self, x: tuple) -> int:
        v = 0
        for c in x:
            v = v * self.p + c
        return v

    def decode(self, i: int) -> tuple:
        assert 0 <= i < self.q
        coords = []
        for _ in range(self.f):
            coords.append(i % self.p)
            i //= self.p
        return tuple(reversed(coords))

    def elements(self, lo: int = 0, hi: int | None = None):
        """Yield elements with encode index in [lo, hi); full range by default.

        Disjoint index ranges partition the full enumeration exactly.
        """
        if hi is None:
            hi = self.q
        for i in range(lo, hi):
            yield self.decode(i)

    # -- squares ------------------------------------------------------------

    def is_square(self, x: tuple) -> bool:
        if x == self.zero:
            return True
        return self.pow(x, (self.q - 1) // 2) == self.one

    def sqrt(self, x: tuple) -> tuple | None:
        """Tonelli-Shanks square root, or None for non-squares.

        Of the two roots +-r the one with smaller encode index is returned.
        """
        if x == self.zero:
            return self.zero
        if not self.is_square(x):
            return None
        q = self.q
        s = 0
        t = q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        if s == 1:
            r = self.pow(x, (q + 1) // 4)
        else:
            if self._ts_nonsquare is None:
                for i in range(1, q):
                    cand = self.decode(i)
                    if not self.is_square(cand):
                        self._ts_nonsquare = cand
                        break
            c = self.pow(self._ts_nonsquare, t)
            r = self.pow(x, (t + 1) // 2)
            u = self.pow(x, t)
            m = s
            while u != self.one:
                u2 = u
                i = 0
                while u2 != self.one:
                    u2 = self.mul(u2, u2)
                    i += 1
                b = c
                for _ in range(m - i - 1):
                    b = self.mul(b, b)
                r = self.mul(r, b)
                c = self.mul(b, b)
                u = self.mul(u, c)
                m = i
        assert self.mul(r, r) == x
        other = self.neg(r)
        return r if self.encode(r) <= self.encode(other) else other


def gf_pow(spec: GF, a: tuple, e: int) -> tuple:
    return spec.pow(a, e)


def gf_sqrt(spec: GF, a: tuple) -> tuple | None:
    return spec.sqrt(a)


def gf_enumerate(spec: GF, lo: int = 0, hi: int | None = None):
    return spec.elements(lo, hi)
