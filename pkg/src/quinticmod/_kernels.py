"""Vectorized tables and JIT inner loops for the point-counting histograms.

The quintic P(y,z) is evaluated row-wise as a polynomial in z:

    P(y,z) = z^5 - 5y z^3 + (5y+5) z^2 + (-5y^3+5y^2-5) z + (y^5+5y^2-5y)

All four row coefficients are componentwise affine combinations of the
precomputed power tables (rational scalars act coordinatewise on extension
fields), so the per-row setup is pure table loads.  Reductions use a Barrett
multiply with a 2^32 shift; accumulated sums stay far below 2^32 because the
kernels only accept word-sized p (asserted per degree).  Histogram weights
implement the y <= z symmetry: the diagonal counts once, off-diagonal twice.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit


# -- componentwise helpers (rational scalars act per-coordinate) ------------


def _affine_rows(p: int, tables: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
    """Row-coefficient tables c3, c2, c1, c0 for every y at once."""
    out = {}
    for name, expr in (
        ("c3", [(-5, "z1")]),
        ("c2", [(5, "z1"), (5, None)]),
        ("c1", [(-5, "z3"), (5, "z2"), (-5, None)]),
        ("c0", [(1, "z5"), (5, "z2"), (-5, "z1")]),
    ):
        comps = None
        for scalar, key in expr:
            if key is None:
                term = [np.full_like(tables["z1"][0], scalar % p)] + [
                    np.zeros_like(a) for a in tables["z1"][1:]
                ]
            else:
                term = [(scalar * a) % p for a in tables[key]]
            comps = term if comps is None else [(x + y) % p for x, y in zip(comps, term)]
        out[name] = comps
    return out


def _vec_mul_f1(p, x, y):
    return [(x[0] * y[0]) % p]


def _vec_mul_f2(p, n, x, y):
    a0, a1 = x
    b0, b1 = y
    return [(a0 * b0 + n * a1 * b1) % p, (a0 * b1 + a1 * b0) % p]


def _vec_mul_f4(p, n, m0, m1, x, y):
    A = (x[0], x[1])
    B = (x[2], x[3])
    C = (y[0], y[1])
    D = (y[2], y[3])

    def k(u, v):
        return ((u[0] * v[0] + n * u[1] * v[1]) % p, (u[0] * v[1] + u[1] * v[0]) % p)

    AC, BD, AD, BC = k(A, C), k(B, D), k(A, D), k(B, C)
    mBD = k((np.full_like(x[0], m0), np.full_like(x[0], m1)), BD)
    return [
        (AC[0] + mBD[0]) % p,
        (AC[1] + mBD[1]) % p,
        (AD[0] + BC[0]) % p,
        (AD[1] + BC[1]) % p,
    ]


def vec_mul(gf, x, y):
    """Componentwise field product of coordinate arrays (int64)."""
    if gf.f == 1:
        return _vec_mul_f1(gf.p, x, y)
    if gf.f == 2:
        return _vec_mul_f2(gf.p, gf.nonres, x, y)
    m0, m1 = gf.tower_m
    return _vec_mul_f4(gf.p, gf.nonres, m0, m1, x, y)


def vec_pow(gf, x, e: int):
    """Square-and-multiply on coordinate arrays; e >= 1."""
    assert e >= 1
    result = None
    base = [a.copy() for a in x]
    while e:
        if e & 1:
            result = base if result is None else vec_mul(gf, result, base)
        e >>= 1
        if e:
            base = vec_mul(gf, base, base)
    return result


def element_tables(gf) -> dict[str, list[np.ndarray]]:
    """Coordinate arrays of z, z^2, z^3, z^5 for all q elements in encode order."""
    p, f, q = gf.p, gf.f, gf.q
    idx = np.arange(q, dtype=np.int64)
    coords = []
    rest = idx
    for k in range(f - 1, -1, -1):
        coords.append((rest // p**k) % p)
    z1 = coords
    z2 = vec_mul(gf, z1, z1)
    z3 = vec_mul(gf, z2, z1)
    z5 = vec_mul(gf, z2, z3)
    return {"z1": z1, "z2": z2, "z3": z3, "z5": z5}


def encode_arrays(gf, coords) -> np.ndarray:
    v = np.zeros_like(coords[0])
    for c in coords:
        v = v * gf.p + c
    return v


# -- JIT histogram kernels ---------------------------------------------------


@njit(cache=True, nogil=True)
def _hist_rows_f1(p, lo, hi, Z1, Z2, Z3, Z5, C3, C2, C1, C0, hist):
    q = p
    m32 = (1 << 32) // p
    for iy in range(lo, hi):
        c3 = C3[iy]
        c2 = C2[iy]
        c1 = C1[iy]
        c0 = C0[iy]
        r = Z5[iy] + c3 * Z3[iy] + c2 * Z2[iy] + c1 * Z1[iy] + c0
        r = r - ((r * m32) >> 32) * p
        if r >= p:
            r -= p
        hist[r] += 1
        for iz in range(iy + 1, q):
            r = Z5[iz] + c3 * Z3[iz] + c2 * Z2[iz] + c1 * Z1[iz] + c0
            r = r - ((r * m32) >> 32) * p
            if r >= p:
                r -= p
            hist[r] += 2


@njit(cache=True, nogil=True)
def _hist_rows_f2(p, n, lo, hi, Z1A, Z1B, Z2A, Z2B, Z3A, Z3B, Z5A, Z5B,
                  C3A, C3B, C2A, C2B, C1A, C1B, C0A, C0B, hist):
    q = p * p
    m32 = (1 << 32) // p
    for iy in range(lo, hi):
        c3a = C3A[iy]; c3b = C3B[iy]
        c2a = C2A[iy]; c2b = C2B[iy]
        c1a = C1A[iy]; c1b = C1B[iy]
        c0a = C0A[iy]; c0b = C0B[iy]
        nc3b = (n * c3b) % p
        nc2b = (n * c2b) % p
        nc1b = (n * c1b) % p
        for iz in range(iy, q):
            ra = (Z5A[iz] + c3a * Z3A[iz] + nc3b * Z3B[iz]
                  + c2a * Z2A[iz] + nc2b * Z2B[iz]
                  + c1a * Z1A[iz] + nc1b * Z1B[iz] + c0a)
            rb = (Z5B[iz] + c3a * Z3B[iz] + c3b * Z3A[iz]
                  + c2a * Z2B[iz] + c2b * Z2A[iz]
                  + c1a * Z1B[iz] + c1b * Z1A[iz] + c0b)
            ra = ra - ((ra * m32) >> 32) * p
            if ra >= p:
                ra -= p
            rb = rb - ((rb * m32) >> 32) * p
            if rb >= p:
                rb -= p
            if iz > iy:
                hist[ra * p + rb] += 2
            else:
                hist[ra * p + rb] += 1


@njit(cache=True, nogil=True)
def _hist_rows_f4(p, n, m0, m1, lo, hi,
                  ZA0, ZA1, ZB0, ZB1,
                  Z2A0, Z2A1, Z2B0, Z2B1,
                  Z3A0, Z3A1, Z3B0, Z3B1,
                  Z5A0, Z5A1, Z5B0, Z5B1,
                  C3, C2, C1, C0, hist):
    # C3..C0 are (q, 4) coefficient tables
    q = p * p * p * p
    m32 = (1 << 32) // p
    for iy in range(lo, hi):
        # tower scalars for this row, plus derived products used in the K-mults
        cs = np.empty((3, 10), dtype=np.int64)
        for t in range(3):
            if t == 0:
                a0 = C3[iy, 0]; a1 = C3[iy, 1]; b0 = C3[iy, 2]; b1 = C3[iy, 3]
            elif t == 1:
                a0 = C2[iy, 0]; a1 = C2[iy, 1]; b0 = C2[iy, 2]; b1 = C2[iy, 3]
            else:
                a0 = C1[iy, 0]; a1 = C1[iy, 1]; b0 = C1[iy, 2]; b1 = C1[iy, 3]
            mb0 = (m0 * b0 + n * m1 * b1) % p  # m * B in the base quadratic field
            mb1 = (m0 * b1 + m1 * b0) % p
            cs[t, 0] = a0
            cs[t, 1] = a1
            cs[t, 2] = b0
            cs[t, 3] = b1
            cs[t, 4] = mb0
            cs[t, 5] = mb1
            cs[t, 6] = (n * a1) % p
            cs[t, 7] = (n * b1) % p
            cs[t, 8] = (n * mb1) % p
            cs[t, 9] = 0
        k0a = C0[iy, 0]; k0b = C0[iy, 1]; k0c = C0[iy, 2]; k0d = C0[iy, 3]
        for iz in range(iy, q):
            za0 = ZA0[iz]; za1 = ZA1[iz]; zb0 = ZB0[iz]; zb1 = ZB1[iz]
            r0 = Z5A0[iz] + k0a
            r1 = Z5A1[iz] + k0b
            r2 = Z5B0[iz] + k0c
            r3 = Z5B1[iz] + k0d
            for t in range(3):
                if t == 0:
                    wa0 = Z3A0[iz]; wa1 = Z3A1[iz]; wb0 = Z3B0[iz]; wb1 = Z3B1[iz]
                elif t == 1:
                    wa0 = Z2A0[iz]; wa1 = Z2A1[iz]; wb0 = Z2B0[iz]; wb1 = Z2B1[iz]
                else:
                    wa0 = za0; wa1 = za1; wb0 = zb0; wb1 = zb1
                a0 = cs[t, 0]; a1 = cs[t, 1]; b0 = cs[t, 2]; b1 = cs[t, 3]
                mb0 = cs[t, 4]; mb1 = cs[t, 5]
                na1 = cs[t, 6]; nb1 = cs[t, 7]; nmb1 = cs[t, 8]
                # A-part: cA*zA + (m*cB)*zB ; B-part: cA*zB + cB*zA
                r0 += a0 * wa0 + na1 * wa1 + mb0 * wb0 + nmb1 * wb1
                r1 += a0 * wa1 + a1 * wa0 + mb0 * wb1 + mb1 * wb0
                r2 += a0 * wb0 + na1 * wb1 + b0 * wa0 + nb1 * wa1
                r3 += a0 * wb1 + a1 * wb0 + b0 * wa1 + b1 * wa0
            r0 = r0 - ((r0 * m32) >> 32) * p
            if r0 >= p:
                r0 -= p
            r1 = r1 - ((r1 * m32) >> 32) * p
            if r1 >= p:
                r1 -= p
            r2 = r2 - ((r2 * m32) >> 32) * p
            if r2 >= p:
                r2 -= p
            r3 = r3 - ((r3 * m32) >> 32) * p
            if r3 >= p:
                r3 -= p
            idx = ((r0 * p + r1) * p + r2) * p + r3
            if iz > iy:
                hist[idx] += 2
            else:
                hist[idx] += 1


def _row_chunks(q: int, threads: int) -> list[tuple[int, int]]:
    """Split rows [0, q) into ranges with roughly equal pair counts q - iy."""
    threads = max(1, min(threads, q))
    if threads == 1:
        return [(0, q)]
    weights = np.cumsum(np.arange(q, 0, -1, dtype=np.int64))
    targets = [weights[-1] * (k + 1) // threads for k in range(threads - 1)]
    cuts = np.searchsorted(weights, targets, side="left") + 1
    bounds = [0] + [int(c) for c in cuts] + [q]
    out = []
    for lo, hi in zip(bounds, bounds[1:]):
        if hi > lo:
            out.append((lo, hi))
    return out


def chebyshev_histogram(gf, threads: int = 1) -> np.ndarray:
    """Histogram over F_q of P(y, z) for all q^2 pairs, by encode index."""
    p, f, q = gf.p, gf.f, gf.q
    if f == 1:
        assert p < (1 << 16)
    elif f == 2:
        assert p < (1 << 14)
    else:
        assert p < (1 << 13)
    tables = element_tables(gf)
    rows = _affine_rows(p, tables)
    chunks = _row_chunks(q, threads)

    if f == 1:
        args = tuple(tables[k][0] for k in ("z1", "z2", "z3", "z5")) + tuple(
            rows[k][0] for k in ("c3", "c2", "c1", "c0")
        )

        def run(chunk, hist):
            _hist_rows_f1(p, chunk[0], chunk[1], *args, hist)

    elif f == 2:
        flat = []
        for k in ("z1", "z2", "z3", "z5"):
            flat.extend(tables[k])
        for k in ("c3", "c2", "c1", "c0"):
            flat.extend(rows[k])
        args = tuple(np.ascontiguousarray(a) for a in flat)

        def run(chunk, hist):
            _hist_rows_f2(p, gf.nonres, chunk[0], chunk[1], *args, hist)

    else:
        m0, m1 = gf.tower_m
        flat = []
        for k in ("z1", "z2", "z3", "z5"):
            flat.extend(tables[k])
        zargs = tuple(np.ascontiguousarray(a) for a in flat)
        cargs = tuple(
            np.ascontiguousarray(np.stack(rows[k], axis=1)) for k in ("c3", "c2", "c1")
        ) + (np.ascontiguousarray(np.stack(rows["c0"], axis=1)),)

        def run(chunk, hist):
            _hist_rows_f4(p, gf.nonres, m0, m1, chunk[0], chunk[1], *zargs, *cargs, hist)

    if len(chunks) == 1:
        hist = np.zeros(q, dtype=np.int64)
        run(chunks[0], hist)
        return hist
    hists = [np.zeros(q, dtype=np.int64) for _ in chunks]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        futures = [pool.submit(run, c, h) for c, h in zip(chunks, hists)]
        for fut in futures:
            fut.result()
    total = np.zeros(q, dtype=np.int64)
    for h in hists:  # fixed merge order; integer sums are order-independent anyway
        total += h
    return total


def curve_histogram(gf) -> np.ndarray:
    """Histogram of the diagonal restriction P(t, t) = 2t^5-10t^4+10t^3+10t^2-10t."""
    p, q = gf.p, gf.q
    tables = element_tables(gf)
    z4 = vec_mul(gf, tables["z2"], tables["z2"])
    comps = None
    for scalar, tab in ((2, tables["z5"]), (-10, z4), (10, tables["z3"]),
                        (10, tables["z2"]), (-10, tables["z1"])):
        term = [(scalar * a) % p for a in tab]
        comps = term if comps is None else [(x + y) % p for x, y in zip(comps, term)]
    idx = encode_arrays(gf, comps)
    return np.bincount(idx, minlength=q).astype(np.int64)


def fifth_power_projective_orbits(gf) -> tuple[int, dict[int, int]]:
    """Orbit statistics of y^5 + z^5 on P^1(F_q) for q = 1 mod 5.

    Returns (m0, cosets) where m0 counts projective points with value 0 and
    cosets maps each fifth-power-coset tag w^((q-1)/5) (encoded) to its count.
    """
    q = gf.q
    assert q % 5 == 1
    tables = element_tables(gf)
    w = [a.copy() for a in tables["z5"]]
    w[0] = (w[0] + 1) % gf.p  # y^5 + 1 on the chart (y : 1); constant coord is first
    # append the point at infinity (1 : 0) with value 1
    w = [np.append(a, 1 if i == 0 else 0) for i, a in enumerate(w)]
    nz = ~np.all([a == 0 for a in w], axis=0)
    m0 = int((~nz).sum())
    wnz = [a[nz] for a in w]
    tags = vec_pow(gf, wnz, (q - 1) // 5)
    enc = encode_arrays(gf, tags)
    vals, counts = np.unique(enc, return_counts=True)
    cosets = {int(v): int(c) for v, c in zip(vals, counts)}
    assert len(cosets) <= 5
    assert m0 + sum(cosets.values()) == q + 1
    return m0, cosets
