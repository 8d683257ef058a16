"""Exact arithmetic in Q(sqrt 5) and the prime ideal layer."""

from fractions import Fraction

import pytest

from quinticmod.quadfield import (
    OMEGA,
    ONE,
    ZERO,
    PrimeIdeal,
    QElem,
    parse_ideal_label,
    prime_ideals_above,
    splitting_type,
)


# -- QElem -------------------------------------------------------------------


def test_normalization():
    assert QElem(2, 2, 4) == QElem(1, 1, 2)
    assert QElem(2, 0, 2) == QElem(1)
    assert QElem(-1, 0, -1) == QElem(1)
    assert QElem(0, 0, 7) == ZERO
    assert QElem(6, -9, 12) == QElem(2, -3, 4)


def test_omega_is_the_fundamental_unit():
    # omega^2 = omega + 1, norm -1
    assert OMEGA * OMEGA == OMEGA + ONE
    assert OMEGA.norm() == Fraction(-1)
    assert OMEGA.trace() == Fraction(1)
    assert OMEGA * OMEGA.conj() == QElem(-1)


def test_ring_operations():
    x = QElem(3, -2, 1)
    y = QElem(1, 1, 2)
    assert x + y == QElem(7, -3, 2)
    assert x - y == QElem(5, -5, 2)
    assert -x == QElem(-3, 2)
    assert x * y == (y * x)
    # (3 - 2 sqrt5)(1 + sqrt5)/2 = (3 + 3 sqrt5 - 2 sqrt5 - 10)/2
    assert x * y == QElem(-7, 1, 2)
    assert x * 2 == QElem(6, -4)
    assert 1 - x == QElem(-2, 2)


def test_division_and_inverse():
    x = QElem(3, -2)
    y = QElem(7, 1, 2)
    assert (x / y) * y == x
    assert y * y.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_norm_trace_formulas():
    for u, v, d in [(3, 1, 1), (-5, 2, 1), (7, -3, 2), (0, 1, 1)]:
        x = QElem(u, v, d)
        assert x.norm() == Fraction(u * u - 5 * v * v, d * d)
        assert x.trace() == Fraction(2 * u, d)
        assert x * x.conj() == QElem(x.norm().numerator, 0, x.norm().denominator)
        assert x.conj().conj() == x


def test_integrality():
    assert QElem(1, 1, 2).is_integral()
    assert QElem(3, 0).is_integral()
    assert not QElem(1, 2, 2).is_integral()  # mixed parity over 2
    assert not QElem(1, 1, 3).is_integral()
    assert QElem(4, 2, 2).is_integral()  # reduces to d = 1


def test_omega_coords_roundtrip():
    assert OMEGA.omega_coords() == (0, 1)
    assert QElem(3).omega_coords() == (3, 0)
    for x, y in [(0, 1), (2, -3), (-7, 5), (4, 4)]:
        el = QElem.from_omega_coords(x, y)
        assert el.is_integral()
        assert el.omega_coords() == (x, y)
    with pytest.raises(ValueError):
        QElem(1, 1, 3).omega_coords()


def test_in_2ofield():
    assert QElem(1, 1, 1).in_2ofield()  # 1 + sqrt5 = 2 omega
    assert not OMEGA.in_2ofield()
    assert QElem(2).in_2ofield()
    assert QElem(3, 1, 1).in_2ofield()  # 3 + sqrt5 = 2(1 + omega)
    assert not QElem(2, 1, 1).in_2ofield()
    assert not QElem(3).in_2ofield()
    assert QElem(-598, -476).in_2ofield()


def test_sign_embeddings():
    x = QElem(3, 1)  # 3 + sqrt5: both embeddings positive
    assert x.sign_embedding() == 1
    assert x.sign_embedding(conjugate=True) == 1
    assert x.is_totally_positive()
    assert not OMEGA.is_totally_positive()  # conjugate embedding negative
    assert OMEGA.sign_embedding() == 1
    assert OMEGA.sign_embedding(conjugate=True) == -1
    assert (OMEGA * OMEGA).is_totally_positive()
    assert not QElem(-1).is_totally_positive()
    assert QElem(0).is_totally_nonnegative()
    assert not ZERO.is_totally_positive()


def test_str_forms():
    assert str(QElem(1, 1, 2)) == "(1+sqrt5)/2"
    assert str(QElem(-70)) == "-70"
    assert str(QElem(0, 1)) == "sqrt5"
    assert str(QElem(3, -2)) == "3-2*sqrt5"


# -- prime ideals ------------------------------------------------------------


def _legendre5(p: int) -> int:
    return pow(5, (p - 1) // 2, p)


@pytest.mark.parametrize("p", [7, 11, 13, 19, 29, 31, 41, 59, 61, 101, 701])
def test_splitting_matches_residue_oracle(p):
    t = splitting_type(p)
    if _legendre5(p) == 1:
        assert t.kind == "split"
        assert (t.c * t.c - 5) % p == 0
        assert t.c == min(t.c, p - t.c)  # canonical root
        assert t.norm == p and t.residue_degree == 1
    else:
        assert t.kind == "inert"
        assert t.norm == p * p and t.residue_degree == 2


def test_splitting_boundary_cases():
    assert splitting_type(5).kind == "ramified"
    assert splitting_type(2).kind == "inert"
    with pytest.raises(ValueError):
        splitting_type(15)
    with pytest.raises(ValueError):
        splitting_type(1)


def test_conjugate_ideals():
    t = PrimeIdeal.split(11, 4)
    assert t.conjugate() == PrimeIdeal.split(11, 7)
    assert t.conjugate().conjugate() == t
    assert PrimeIdeal.inert(7).conjugate() == PrimeIdeal.inert(7)
    assert PrimeIdeal.ramified().conjugate() == PrimeIdeal.ramified()


def test_labels_roundtrip():
    for s in ["11:4", "11:7", "7", "13", "sqrt5", "401:178"]:
        assert parse_ideal_label(s).label() == s
    for bad in ["11:0", "11:11", "4:1", "15", "7:2", "", "11:x"]:
        with pytest.raises(ValueError):
            parse_ideal_label(bad)


def test_prime_ideals_above():
    assert prime_ideals_above(5) == [PrimeIdeal.ramified()]
    assert prime_ideals_above(7) == [PrimeIdeal.inert(7)]
    above11 = prime_ideals_above(11)
    assert len(above11) == 2 and above11[0].conjugate() == above11[1]


def test_residue_image_split():
    t = PrimeIdeal.split(11, 4)
    # sqrt5 maps to the root c attached to the ideal
    assert t.residue_image(QElem(0, 1)) == (4,)
    assert t.conjugate().residue_image(QElem(0, 1)) == (7,)
    assert t.residue_image(QElem(4, -1)) == (0,)
    assert t.contains(QElem(4, -1))
    assert not t.conjugate().contains(QElem(4, -1))
    assert t.contains(QElem(11))
    # half-integral elements reduce through the inverse of 2
    assert t.residue_image(QElem(1, 1, 2)) == ((1 + 4) * pow(2, -1, 11) % 11,)


def test_residue_image_inert():
    t = PrimeIdeal.inert(7)
    r = t.residue_image(QElem(0, 1))
    # the image of sqrt5 squares to 5 in F_49
    assert r != (0, 0)
    assert t.contains(QElem(7, 14))
    assert not t.contains(QElem(1, 7))


def test_residue_image_at_two():
    t = PrimeIdeal.inert(2)
    # reduction mod 2 reads the omega coordinates
    assert t.residue_image(OMEGA) == (0, 1)
    assert t.residue_image(QElem(3)) == (1, 0)
    assert t.contains(QElem(1, 1))  # 2 omega
    assert not t.contains(OMEGA)


def test_ramified_ideal():
    t = PrimeIdeal.ramified()
    assert t.p == 5 and t.norm == 5 and t.label() == "sqrt5"
    assert t.contains(QElem(0, 1))
    assert t.contains(QElem(5))
    assert not t.contains(QElem(1, 1))


def test_split_constructor_validates():
    with pytest.raises(ValueError):
        PrimeIdeal.split(11, 3)  # 3^2 != 5 mod 11
    with pytest.raises(ValueError):
        PrimeIdeal.split(7, 2)  # 7 does not split
