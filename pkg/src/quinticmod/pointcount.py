"""Point counts for the quintic threefold and the Frobenius trace extraction.

The threefold is cut out affinely by P(x1,x2) = P(x4,x5) for the quintic
P(y,z) = (y^5+z^5) - 5yz(y^2+z^2) + 5yz(y+z) + 5(y^2+z^2) - 5(y+z).
Counting proceeds in three parts: the affine count (a value histogram of P),
the surface at infinity (a Fermat-type quintic in P^3), and the rational
nodes, whose exceptional divisors contribute q^2 + 2q points each after the
resolution.  The trace of Frobenius on middle cohomology then falls out of
the fixed point formula

    a_q = 1 + h_q q(1+q) + q^3 - n_resolved

where h_q is pinned down by the Weil bound |a_q| <= 4 q^{3/2} once q > 20.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .finitefield import GF, is_prime

BAD_PRIMES = (2, 3, 5)

# rational node count by q mod 15; all 120 nodes live over the 15th
# cyclotomic field, so the count only depends on this residue
_NODES_MOD15 = {1: 120, 2: 0, 4: 24, 7: 0, 8: 0, 11: 104, 13: 0, 14: 8}


class ExtractionError(ValueError):
    """Trace extraction failure; .code is PRECONDITION, NO_SOLUTION or AMBIGUOUS."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


@dataclass
class CountReport:
    q: int
    p: int
    f: int
    n_affine: int
    n_fermat: int
    n_nodes: int
    n_resolved: int
    h: int | None = None
    a: int | None = None
    threads: int = 1
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "f": self.f,
            "n_affine": self.n_affine,
            "n_fermat": self.n_fermat,
            "n_nodes": self.n_nodes,
            "n_resolved": self.n_resolved,
            "h": self.h,
            "a": self.a,
            "threads": self.threads,
            "elapsed": round(self.elapsed, 3),
        }


def good_field(q: int) -> GF:
    """The field F_q for q = p^f, f in {1,2,4}, p a good prime."""
    for f in (1, 2, 4):
        root = round(q ** (1.0 / f))
        if root**f == q and is_prime(root):
            if root in BAD_PRIMES:
                raise ValueError(f"bad prime {root}: the threefold has bad reduction")
            return GF(root, f)
    raise ValueError(f"{q} is not p, p^2 or p^4 for a prime p")


def chebyshev_eval(gf: GF, y: tuple, z: tuple) -> tuple:
    """P(y, z), evaluated by a fixed straight-line program."""
    add, sub, mul = gf.add, gf.sub, gf.mul
    five = gf.from_int(5)
    y2 = mul(y, y)
    z2 = mul(z, z)
    y5 = mul(mul(y2, y2), y)
    z5 = mul(mul(z2, z2), z)
    yz = mul(y, z)
    s1 = add(y, z)
    s2 = add(y2, z2)
    acc = add(y5, z5)
    acc = sub(acc, mul(five, mul(yz, s2)))
    acc = add(acc, mul(five, mul(yz, s1)))
    acc = add(acc, mul(five, s2))
    return sub(acc, mul(five, s1))


def value_distribution(gf: GF, threads: int = 1) -> np.ndarray:
    """N(v) = #{(y,z): P(y,z) = v}, indexed by encoded value, via the y <= z
    symmetry (P is symmetric, so off-diagonal pairs are counted twice)."""
    return _kernels.chebyshev_histogram(gf, threads=threads)


def naive_value_distribution(gf: GF) -> np.ndarray:
    """Same histogram by the plain double loop over all q^2 pairs.

    Test oracle: no symmetry trick, no Horner rearrangement, one
    chebyshev_eval per pair.
    """
    hist = np.zeros(gf.q, dtype=np.int64)
    elems = list(gf.elements())
    for y in elems:
        for z in elems:
            hist[gf.encode(chebyshev_eval(gf, y, z))] += 1
    return hist


def count_affine_X(gf: GF, threads: int = 1, hist: np.ndarray | None = None) -> int:
    """#X(F_q) = sum over v of N(v)^2, in arbitrary-precision integers."""
    if hist is None:
        hist = value_distribution(gf, threads=threads)
    return sum(c * c for c in hist.tolist())


def count_fermat_S(gf: GF) -> int:
    """Points of the surface x1^5+x2^5 = x4^5+x5^5 in P^3 over F_q.

    For q != 1 mod 5 fifth powers are a bijection and the count is
    1 + q + q^2.  Otherwise classify y^5 + z^5 over P^1 by fifth-power
    coset: with m0 projective points giving 0 and m_i giving coset i, the
    affine fibers are N(0) = (q-1)m0 + 1 and N(a) = 5 m_i, and the
    projective count is (sum of N^2 over F_q, minus 1) / (q - 1).
    """
    q = gf.q
    if q % 5 != 1:
        return 1 + q + q * q
    m0, cosets = _kernels.fifth_power_projective_orbits(gf)
    # fiber identity: sum of N(a) over a in F_q equals q^2
    n_zero = (q - 1) * m0 + 1
    total = n_zero + (q - 1) * sum(cosets.values())
    assert total == q * q
    sq_sum = n_zero * n_zero + (q - 1) * 5 * sum(m * m for m in cosets.values())
    assert (sq_sum - 1) % (q - 1) == 0
    return (sq_sum - 1) // (q - 1)


def count_fermat_S_bruteforce(gf: GF) -> int:
    """Direct scan of P^3(F_q) against x1^5+x2^5 = x4^5+x5^5 (test oracle)."""
    q = gf.q
    fifth = {}
    for x in gf.elements():
        fifth[x] = gf.pow(x, 5)
    elems = list(gf.elements())
    zero, one = gf.zero, gf.one
    count = 0
    # normalized representatives: first nonzero coordinate = 1
    reps = []
    for i in range(4):
        head = [zero] * i + [one]
        tails = [elems] * (3 - i)
        stack = [tuple(head)]
        for t in tails:
            stack = [s + (e,) for s in stack for e in t]
        reps.extend(stack)
    assert len(reps) == q**3 + q**2 + q + 1
    for x1, x2, x4, x5 in reps:
        if gf.add(fifth[x1], fifth[x2]) == gf.add(fifth[x4], fifth[x5]):
            count += 1
    return count


def count_curve_C(gf: GF) -> int:
    """#C(F_q) for the curve P(y,y) = P(z,z): squared fiber sizes of t -> P(t,t)."""
    hist = _kernels.curve_histogram(gf)
    return sum(c * c for c in hist.tolist())


def node_count(q: int) -> int:
    """Nodes of the projective threefold rational over F_q."""
    if q % 3 == 0 or q % 5 == 0:
        raise ValueError(f"node count undefined: {q} is not coprime to 15")
    return _NODES_MOD15[q % 15]


def count_resolved_X(q: int, threads: int = 1, naive: bool = False) -> CountReport:
    """Full count of the resolved threefold over F_q; h and a left unset."""
    t0 = time.perf_counter()
    gf = good_field(q)
    if naive:
        hist = naive_value_distribution(gf)
    else:
        hist = value_distribution(gf, threads=threads)
    n_affine = count_affine_X(gf, hist=hist)
    n_fermat = count_fermat_S(gf)
    n_nodes = node_count(q)
    n_resolved = n_affine + n_fermat + n_nodes * (q * q + 2 * q)
    return CountReport(
        q=q, p=gf.p, f=gf.f,
        n_affine=n_affine, n_fermat=n_fermat, n_nodes=n_nodes,
        n_resolved=n_resolved, threads=threads,
        elapsed=time.perf_counter() - t0,
    )


def extract_h_and_trace(q: int, n_resolved: int) -> tuple[int, int]:
    """Solve a = 1 + h q(1+q) + q^3 - n_resolved under a^2 <= 16 q^3.

    The admissible window for a has width 8 q^{3/2}; consecutive h differ by
    q(q+1), and the true h is odd, which disambiguates the few small q where
    two h values land inside the window.  More than one odd candidate, or
    none at all, signals a counting bug.
    """
    if q <= 20:
        raise ExtractionError("PRECONDITION", f"extraction needs q > 20, got {q}")
    step = q * (q + 1)
    num = n_resolved - 1 - q**3
    center = (2 * num + step) // (2 * step)  # round(num / step) without floats
    bound = 16 * q**3
    admissible = []
    for h in range(center - 2, center + 3):
        a = 1 + h * step + q**3 - n_resolved
        if a * a <= bound:
            admissible.append((h, a))
    if not admissible:
        raise ExtractionError("NO_SOLUTION", f"no h within Weil window at q={q}")
    if len(admissible) > 1:
        odd = [(h, a) for h, a in admissible if h % 2 == 1]
        if len(odd) != 1:
            raise ExtractionError(
                "AMBIGUOUS", f"{len(admissible)} candidates at q={q}: {admissible}"
            )
        admissible = odd
    h, a = admissible[0]
    assert h % 2 == 1, f"h={h} even at q={q}"
    if q % 15 == 1:
        assert h == 141, f"h={h} at q={q} = 1 mod 15"
    return h, a


def count_and_extract(q: int, threads: int = 1) -> CountReport:
    """count_resolved_X plus the (h, a) extraction when q > 20."""
    report = count_resolved_X(q, threads=threads)
    if q > 20:
        t0 = time.perf_counter()
        report.h, report.a = extract_h_and_trace(q, report.n_resolved)
        report.elapsed += time.perf_counter() - t0
    return report
