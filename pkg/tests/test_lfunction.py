"""Quartic Frobenius polynomial: construction, splitting, trace plumbing."""

import pytest

from quinticmod.lfunction import (
    NotSplitError,
    QuarticLPoly,
    ideal_trace,
    l_poly,
    resolve_trace_pair,
    split_l_poly,
)
from quinticmod.pointcount import count_and_extract, count_resolved_X
from quinticmod.quadfield import PrimeIdeal, QElem


def test_coefficients_satisfy_functional_equation():
    L = QuarticLPoly(p=11, a=-116, m=6006)
    c = L.coefficients
    assert c == (1, 116, 6006, 154396, 1771561)
    # c_{4-i} = p^{3(2-i)} c_i
    assert c[3] == 11**3 * c[1]
    assert c[4] == 11**6 * c[0]


def test_l_poly_parity_guard():
    with pytest.raises(ValueError):
        l_poly(11, 3, 10)  # 9 - 10 is odd
    L = l_poly(11, -116, 1444)
    assert L.m == (116 * 116 - 1444) // 2


def test_split_and_recombine_at_101():
    """a and m at p = 101 recovered from the known eigenvalue pair."""
    alpha = QElem(-598, -476)
    a = int(alpha.trace())
    m = int(alpha.norm()) + 2 * 101**3
    L = split_l_poly(QuarticLPoly(p=101, a=a, m=m))
    assert L.alpha in (alpha, alpha.conj())
    assert L.alpha.v >= 0  # canonical orientation
    assert L.recombine() == (a, m)
    pair = L.alpha_pair
    assert pair == (L.alpha, L.alpha.conj())


def test_split_failure_modes():
    # discriminant not a multiple of 5
    with pytest.raises(NotSplitError):
        split_l_poly(QuarticLPoly(p=11, a=0, m=2 * 11**3 - 1))
    # 5 divides but the quotient is not a square
    with pytest.raises(NotSplitError):
        split_l_poly(QuarticLPoly(p=11, a=0, m=2 * 11**3 - 10))
    # negative discriminant
    with pytest.raises(NotSplitError):
        split_l_poly(QuarticLPoly(p=11, a=0, m=2 * 11**3 + 500))


def test_split_half_integer_alpha_rejected():
    # a odd with b odd is fine; a odd with b even parity clash must raise
    # disc = a^2 - 4N = 5 b^2 needs b = a mod 2
    a, b = 3, 2
    N = (a * a - 5 * b * b) // 4 if (a * a - 5 * b * b) % 4 == 0 else None
    assert N is None  # parity clash means N is not an integer here
    with pytest.raises(NotSplitError):
        split_l_poly(QuarticLPoly(p=11, a=7, m=(7 * 7 - 5 * 4) // 2 + 11**3 * 2 + 1))


def test_ideal_trace_split_and_inert():
    r11 = count_resolved_X(11)
    r121 = count_and_extract(121)
    r11.h, r11.a = resolve_trace_pair(11, r11.n_resolved, r121.a)
    r169 = count_and_extract(169)
    reports = {11: r11, 121: r121, 169: r169}
    assert ideal_trace(PrimeIdeal.split(11, 4), reports) == r11.a
    assert ideal_trace(PrimeIdeal.split(11, 7), reports) == r11.a
    assert ideal_trace(PrimeIdeal.inert(13), reports) == r169.a


def test_ideal_trace_errors():
    with pytest.raises(ValueError):
        ideal_trace(PrimeIdeal.ramified(), {})
    with pytest.raises(ValueError):
        ideal_trace(PrimeIdeal.inert(2), {})
    with pytest.raises(ValueError):
        ideal_trace(PrimeIdeal.inert(3), {})
    with pytest.raises(KeyError):
        ideal_trace(PrimeIdeal.split(11, 4), {})
    # a report without extraction is as good as missing
    with pytest.raises(KeyError):
        ideal_trace(PrimeIdeal.split(11, 4), {11: count_resolved_X(11)})


def test_report_iterable_accepted():
    r169 = count_and_extract(169)
    assert ideal_trace(PrimeIdeal.inert(13), [r169]) == r169.a


@pytest.mark.parametrize("p", [7, 11, 13, 19])
def test_resolve_trace_pair_structure(p):
    """Small-p resolution: congruences hold and the split exists when p splits."""
    r1 = count_resolved_X(p)
    r2 = count_and_extract(p * p)
    h, a = resolve_trace_pair(p, r1.n_resolved, r2.a)
    assert h % 2 == 1 and a % 4 == 0
    assert a * a <= 16 * p**3
    if p % 5 in (2, 3):
        assert a == 0
    else:
        L = split_l_poly(l_poly(p, a, r2.a))
        assert L.alpha is not None
    # the resolved count reproduces itself through (h, a)
    assert r1.n_resolved == 1 + h * p * (p + 1) + p**3 - a


def test_inert_square_level_quartic():
    """Frobenius at an inert p acts through the p^2 level; the stored p is
    then p^2, so the functional equation runs against p^6 and p^12."""
    r49 = count_and_extract(49)
    r2401 = count_and_extract(2401)
    L = l_poly(49, r49.a, r2401.a)
    c = L.coefficients
    assert c[3] == 49**3 * c[1]
    assert c[4] == 49**6
    Ls = split_l_poly(L)
    assert Ls.alpha == QElem(-70)  # rational: the two factors agree
