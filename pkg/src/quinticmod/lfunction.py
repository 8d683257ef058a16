"""The quartic Frobenius polynomial and its factorization over Q(sqrt 5).

At a good prime p the middle-cohomology characteristic polynomial is

    L_p(T) = T^4 - a_p T^3 + m T^2 - a_p p^3 T + p^6,   m = (a_p^2 - a_{p^2})/2,

and for split p it factors as (T^2 - alpha T + p^3)(T^2 - alpha' T + p^3)
with alpha in O_F, alpha' its conjugate.  The canonical representative has
nonnegative sqrt5-coordinate; which of {alpha, alpha'} pairs with which of
the two ideals above p is a global orientation choice that every downstream
comparison carries as an explicit up-to-conjugation caveat.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .pointcount import CountReport, ExtractionError
from .quadfield import QElem, PrimeIdeal

UP_TO_CONJUGATION = (
    "alpha assignments are canonical up to the Q(sqrt5) conjugation "
    "(the identification nu is either the identity or tau)"
)


class NotSplitError(ValueError):
    """The quartic does not factor over Q(sqrt 5) in the expected shape."""

    code = "NOT_SPLIT"


@dataclass(frozen=True)
class QuarticLPoly:
    p: int
    a: int
    m: int
    alpha: QElem | None = None  # canonical factor trace, sqrt5-coordinate >= 0

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (1, -self.a, self.m, -self.a * self.p**3, self.p**6)

    @property
    def alpha_pair(self) -> tuple[QElem, QElem] | None:
        return None if self.alpha is None else (self.alpha, self.alpha.conj())

    def recombine(self) -> tuple[int, int]:
        """(a, m) recovered from the split: a = Tr(alpha), m = alpha*alpha' + 2p^3."""
        assert self.alpha is not None
        tr = self.alpha.trace()
        nm = self.alpha.norm()
        assert tr.denominator == 1 and nm.denominator == 1
        return int(tr), int(nm) + 2 * self.p**3

    def __str__(self) -> str:
        _, c3, c2, c1, c0 = self.coefficients
        def s(c):
            return f"+ {c}" if c >= 0 else f"- {-c}"
        return f"T^4 {s(c3)}*T^3 {s(c2)}*T^2 {s(c1)}*T {s(c0)}"


def l_poly(p: int, a_p: int, a_p2: int) -> QuarticLPoly:
    if (a_p * a_p - a_p2) % 2 != 0:
        raise ValueError(
            f"parity violation at p={p}: a_p^2 = {a_p*a_p} and a_p2 = {a_p2} "
            "differ in parity, so the middle coefficient is not an integer"
        )
    return QuarticLPoly(p=p, a=a_p, m=(a_p * a_p - a_p2) // 2)


def split_l_poly(L: QuarticLPoly) -> QuarticLPoly:
    """Factor L as (T^2 - alpha T + p^3)(T^2 - alpha' T + p^3) over Q(sqrt 5).

    alpha = (a + b sqrt5)/2 needs 5 | a^2 - 4N for N = m - 2p^3, b^2 exact,
    and b = a mod 2; the returned alpha has b >= 0.
    """
    N = L.m - 2 * L.p**3
    disc = L.a * L.a - 4 * N
    if disc < 0 or disc % 5 != 0:
        raise NotSplitError(
            f"NOT_SPLIT at p={L.p}: a^2 - 4(m - 2p^3) = {disc} is not 5 times a square"
        )
    b2 = disc // 5
    b = isqrt(b2)
    if b * b != b2:
        raise NotSplitError(f"NOT_SPLIT at p={L.p}: (a^2 - 4N)/5 = {b2} is not a square")
    if (b - L.a) % 2 != 0:
        raise NotSplitError(f"NOT_SPLIT at p={L.p}: half-integer alpha (b != a mod 2)")
    alpha = QElem(L.a, b, 2)
    assert alpha + alpha.conj() == QElem(L.a)
    assert alpha * alpha.conj() == QElem(N)
    return QuarticLPoly(p=L.p, a=L.a, m=L.m, alpha=alpha)


def _report_map(reports) -> dict[int, CountReport]:
    if isinstance(reports, dict):
        return reports
    return {r.q: r for r in reports}


def ideal_trace(t: PrimeIdeal, reports) -> int:
    """Tr_{F/Q} of the Frobenius trace at the prime ideal t: a_p for split t,
    a_{p^2} for inert t (Frobenius at p^2 restricts to Frobenius at (p))."""
    if t.kind == "ramified" or t.p in (2, 3, 5):
        raise ValueError(f"no good-reduction trace at {t.label()}")
    q = t.p if t.kind == "split" else t.p * t.p
    rmap = _report_map(reports)
    if q not in rmap or rmap[q].a is None:
        raise KeyError(f"missing count report with trace for q={q}")
    return rmap[q].a


def resolve_trace_pair(p: int, n_resolved: int, a_p2: int) -> tuple[int, int]:
    """(h_p, a_p) for small p where the bare Weil window is too wide.

    Scans every h whose trace lands in |a| <= 4 p^{3/2} and keeps those
    passing the structural filters: h odd, a = 0 mod 4, a = 0 when p is
    inert, and for split p the requirement that the quartic built with
    a_{p^2} factors over Q(sqrt 5) with both embeddings of alpha inside
    the quadratic-factor Weil bound Tr(alpha)^2 <= 16 p^3.  Exactly one
    candidate must survive.
    """
    step = p * (p + 1)
    bound = 16 * p**3
    amax = isqrt(bound)
    survivors = []
    h_lo = (-amax - 1 - p**3 + n_resolved) // step - 1
    h_hi = (amax - 1 - p**3 + n_resolved) // step + 2
    for h in range(h_lo, h_hi):
        a = 1 + h * step + p**3 - n_resolved
        if a * a > bound or h % 2 == 0 or a % 4 != 0:
            continue
        if p % 5 in (2, 3):
            if a != 0:
                continue
        else:
            try:
                L = split_l_poly(l_poly(p, a, a_p2))
            except (ValueError, NotSplitError):
                continue
            u, v = L.alpha.u, L.alpha.v
            # both embeddings: (u +- v sqrt5)^2 <= 4 p^3 d^2 with d = alpha.d
            lim = 4 * p**3 * L.alpha.d * L.alpha.d
            s = lim - u * u - 5 * v * v
            if s < 0 or s * s < 20 * u * u * v * v:
                continue
        survivors.append((h, a))
    if not survivors:
        raise ExtractionError("NO_SOLUTION", f"no admissible trace at p={p}")
    if len(survivors) > 1:
        raise ExtractionError("AMBIGUOUS", f"candidates at p={p}: {survivors}")
    return survivors[0]
