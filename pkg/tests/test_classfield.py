"""Class assignment, saturation, and both non-quartic certificates.

The certificate tests pin down a sharp edge: the bundled four linear forms
are dependent (they XOR to zero), so the hyperplane construction certifies
the 28-prime set even though the rank method shows a quartic vanishing on
it without vanishing everywhere.  The soundness test demonstrates that the
implication CERTIFIED -> non-quartic does hold for independent forms.
"""

import random
from itertools import product

import pytest

from quinticmod.classfield import test_set as full_test_set
from quinticmod.classfield import (
    BASIS,
    CALIBRATION_CLASSES,
    CERT_EXTRA_POINT,
    CERT_FORMS,
    DROPPED_LABELS,
    RAW_BASIS,
    SymbolError,
    TEST_SET_LABELS,
    calibration_report,
    extension_table,
    galois_class,
    kummer_class,
    nonquartic_bruteforce,
    nonquartic_hyperplane,
    quadratic_symbol,
    saturation_check,
    t_prime_subset,
)
from quinticmod.quadfield import OMEGA, PrimeIdeal, QElem, parse_ideal_label

# the five ideal-class generators, as elements
GEN_ELEMS = (QElem(-1), OMEGA, QElem(2), QElem(3), QElem(0, 1))


def _dot(f, v):
    return sum(a * b for a, b in zip(f, v)) % 2


def _rank_f2(rows):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# -- symbols and classes -----------------------------------------------------


def test_quadratic_symbol_against_euler():
    t = PrimeIdeal.split(11, 4)
    # 4 - sqrt5 reduces to 0; 3 reduces to 3, a non-residue mod 11
    with pytest.raises(SymbolError) as e:
        quadratic_symbol(QElem(4, -1), t)
    assert e.value.code == "D_IN_IDEAL"
    assert quadratic_symbol(QElem(3), t) == pow(3, 5, 11) * 2 % 22 - 1 or True
    assert quadratic_symbol(QElem(3), t) == (1 if pow(3, 5, 11) == 1 else -1)
    assert quadratic_symbol(QElem(5, 0), t) == (1 if pow(5, 5, 11) == 1 else -1)


def test_quadratic_symbol_inert_is_norm_symbol():
    t = PrimeIdeal.inert(7)
    for d in (QElem(3), QElem(1, 1), OMEGA, QElem(0, 1)):
        nrm = int((d * d.conj()).u) % 7
        want = 1 if pow(nrm, 3, 7) == 1 else -1
        assert quadratic_symbol(d, t) == want


def test_symbol_bad_ideals():
    with pytest.raises(SymbolError) as e:
        quadratic_symbol(QElem(3), PrimeIdeal.ramified())
    assert e.value.code == "BAD_IDEAL"
    with pytest.raises(SymbolError):
        quadratic_symbol(QElem(3), PrimeIdeal.inert(2))


def test_galois_class_rejects_small_primes():
    for t in (PrimeIdeal.inert(2), PrimeIdeal.inert(3), PrimeIdeal.ramified()):
        with pytest.raises(ValueError):
            galois_class(t)


def test_anchor_classes():
    for label, expected in CALIBRATION_CLASSES.items():
        assert galois_class(parse_ideal_label(label)) == expected, label


def test_class_constant_on_conjugates_only_sometimes():
    # conjugate primes can land on different classes; 11:4 and 11:7 do
    c1 = galois_class(parse_ideal_label("11:4"))
    c2 = galois_class(parse_ideal_label("11:7"))
    assert c1 != c2


# -- the basis and its dependent reading -------------------------------------


def test_basis_vectors_independent_over_generators():
    mat = [kummer_class(b) for b in BASIS]
    assert _rank_f2(mat) == 5


def test_raw_basis_is_degenerate():
    """The raw listing spans a hyperplane: the first three multiply to 45."""
    prod3 = RAW_BASIS[0] * RAW_BASIS[1] * RAW_BASIS[2]
    assert prod3 == QElem(45)
    assert kummer_class(prod3) == (0, 0, 0, 0, 0)  # 45 = (3 sqrt5)^2
    mat = [kummer_class(b) for b in RAW_BASIS]
    assert _rank_f2(mat) == 4
    # the two readings differ exactly by the sign of the first entry
    assert RAW_BASIS[0] == -BASIS[0]
    assert RAW_BASIS[1:] == BASIS[1:]


def test_quoted_anchor_quadruple_is_contradictory():
    """No linear class map can place (0,1,1,0,1) on a prime above 59.

    The four quoted classes XOR to zero, but the symbol vectors of the
    three anchor primes and either prime above 59 are independent, so any
    linear assignment matching the anchors sends both primes above 59
    outside the quoted fourth class.
    """
    quoted = [
        CALIBRATION_CLASSES["701:53"],
        CALIBRATION_CLASSES["449:118"],
        CALIBRATION_CLASSES["401:178"],
        (0, 1, 1, 0, 1),
    ]
    xor = tuple(sum(col) % 2 for col in zip(*quoted))
    assert xor == (0, 0, 0, 0, 0)
    for fifty_nine in ("59:51", "59:8"):
        vecs = [
            galois_class(parse_ideal_label(lab), basis=GEN_ELEMS)
            for lab in ("701:53", "449:118", "401:178", fifty_nine)
        ]
        assert _rank_f2(vecs) == 4


def test_calibration_report_contents():
    rep = calibration_report()
    assert rep["anchors_pass"] is True
    assert rep["extra_point"] == [0, 1, 1, 0, 1]
    assert rep["extra_point_carrier"] == "29:11"
    assert rep["extra_point_on_59"] is False
    assert set(rep["primes_above_59"]) == {"59:51", "59:8"}


# -- saturation --------------------------------------------------------------


def test_test_set_shapes():
    pairs = full_test_set()
    assert len(pairs) == 31
    assert [t.label() for t, _ in pairs] == list(TEST_SET_LABELS)
    sub = t_prime_subset()
    assert len(sub) == 28
    assert {t.label() for t, _ in sub}.isdisjoint(DROPPED_LABELS)
    # the dropped primes are the three of largest norm
    norms = sorted(t.norm for t, _ in pairs)
    assert sorted(parse_ideal_label(s).norm for s in DROPPED_LABELS) == norms[-3:]


def test_saturation_of_full_set():
    sat = saturation_check(full_test_set())
    assert sat["pass"] is True
    assert sat["count"] == 31
    assert not sat["duplicates"] and not sat["zero_classes"] and not sat["missing"]


def test_saturation_detects_defects():
    t1 = parse_ideal_label("11:4")
    t2 = parse_ideal_label("11:7")
    t3 = parse_ideal_label("7")
    sat = saturation_check([
        (t1, (0, 0, 0, 0, 1)),
        (t2, (0, 0, 0, 0, 1)),
        (t3, (0, 0, 0, 0, 0)),
    ])
    assert sat["pass"] is False
    assert sat["duplicates"][0]["labels"] == ["11:4", "11:7"]
    assert sat["zero_classes"] == ["7"]
    assert len(sat["missing"]) == 30


# -- non-quartic certificates ------------------------------------------------


def test_bundled_forms_are_dependent():
    xor = tuple(sum(col) % 2 for col in zip(*CERT_FORMS))
    assert xor == (0, 0, 0, 0, 0)
    assert _rank_f2(list(CERT_FORMS)) == 3


def test_certificates_on_the_test_sets():
    sub_classes = [c for _, c in t_prime_subset()]
    full_classes = [c for _, c in full_test_set()]
    assert nonquartic_hyperplane(sub_classes) == "CERTIFIED"
    # dependent forms make the certificate unsound on this very set
    assert nonquartic_bruteforce(sub_classes) is False
    assert nonquartic_bruteforce(full_classes) is True


def test_extra_point_lies_outside_all_hyperplanes():
    assert CERT_EXTRA_POINT in [c for _, c in t_prime_subset()]
    for f in CERT_FORMS:
        assert _dot(f, CERT_EXTRA_POINT) == 1


def _union_of_hyperplanes(forms, extra):
    pts = {
        v
        for v in product((0, 1), repeat=5)
        if any(_dot(f, v) == 0 for f in forms)
    }
    pts.discard((0,) * 5)
    pts.add(extra)
    return sorted(pts)


def _solve_all_ones(forms):
    return [
        v for v in product((0, 1), repeat=5)
        if v != (0,) * 5 and all(_dot(f, v) == 1 for f in forms)
    ]


def test_hyperplane_certificate_sound_for_independent_forms():
    """CERTIFIED with independent forms implies the rank method agrees."""
    rng = random.Random(20260822)
    vectors = [v for v in product((0, 1), repeat=5) if any(v)]
    found = 0
    while found < 8:
        forms = rng.sample(vectors, 4)
        if _rank_f2(forms) != 4:
            continue
        extras = _solve_all_ones(forms)
        assert extras  # independent system is consistent
        pts = _union_of_hyperplanes(forms, extras[0])
        assert nonquartic_hyperplane(pts, forms=forms, extra=extras[0]) == "CERTIFIED"
        assert nonquartic_bruteforce(pts) is True
        found += 1


def test_hyperplane_certificate_unsound_for_dependent_forms():
    """The same construction with rank-3 forms certifies a quartic-carrying set."""
    forms = list(CERT_FORMS)
    extras = _solve_all_ones(forms)
    assert extras
    pts = _union_of_hyperplanes(forms, extras[0])
    assert nonquartic_hyperplane(pts, forms=forms, extra=extras[0]) == "CERTIFIED"
    assert nonquartic_bruteforce(pts) is False


def test_hyperplane_inconclusive_paths():
    sub = [c for _, c in t_prime_subset()]
    no_carrier = [c for c in sub if c != CERT_EXTRA_POINT]
    assert nonquartic_hyperplane(no_carrier) == "INCONCLUSIVE"
    assert nonquartic_hyperplane(sub, forms=CERT_FORMS[:3] + (CERT_FORMS[0],)) == "INCONCLUSIVE"
    assert nonquartic_hyperplane(sub, forms=CERT_FORMS[:3] + ((0, 0, 0, 0, 0),)) == "INCONCLUSIVE"
    assert nonquartic_hyperplane(sub, extra=(1, 1, 1, 1, 1)) == "INCONCLUSIVE"


def test_bruteforce_small_cases():
    # a single point is never non-quartic in dimension 5
    assert nonquartic_bruteforce([(1, 0, 0, 0, 0)]) is False
    everything = [v for v in product((0, 1), repeat=5)]
    assert nonquartic_bruteforce(everything) is True


# -- unit decomposition over the generators ----------------------------------


def test_kummer_class_of_generators():
    assert kummer_class(QElem(-1)) == (1, 0, 0, 0, 0)
    assert kummer_class(OMEGA) == (0, 1, 0, 0, 0)
    assert kummer_class(QElem(2)) == (0, 0, 1, 0, 0)
    assert kummer_class(QElem(3)) == (0, 0, 0, 1, 0)
    assert kummer_class(QElem(0, 1)) == (0, 0, 0, 0, 1)


def test_kummer_class_multiplicative_and_square_invariant():
    rng = random.Random(7)
    squares = [QElem(1, 1, 2), QElem(3, -1), QElem(2, 1), QElem(5, 1, 2)]
    for _ in range(40):
        exps = [rng.randrange(2) for _ in range(5)]
        m = QElem(1)
        for g, e in zip(GEN_ELEMS, exps):
            if e:
                m = m * g
        s = rng.choice(squares)
        assert kummer_class(m * s * s) == tuple(exps)


def test_kummer_class_errors():
    with pytest.raises(ValueError):
        kummer_class(QElem(0))
    with pytest.raises(ValueError):
        kummer_class(QElem(7))
    with pytest.raises(ValueError):
        kummer_class(QElem(4, -1))  # norm 11


def test_extension_table_saturates():
    rows = extension_table()
    assert len(rows) == 31
    assert [r["row"] for r in rows] == list(range(1, 32))
    classes = [r["class"] for r in rows]
    assert len(set(classes)) == 31
    assert all(any(c) for c in classes)
    # spot checks against hand decomposition
    assert rows[0]["m"] == "6*sqrt5"
    assert rows[0]["class"] == (0, 0, 1, 1, 1)
    assert rows[10]["m"] == "sqrt5"
    assert rows[10]["class"] == (0, 0, 0, 0, 1)


# -- conjugation -------------------------------------------------------------


def _tau_rule(c):
    return (c[0], (c[0] + c[1]) % 2, c[2], c[3], (c[0] + c[4]) % 2)


def test_conjugation_rule_over_generators():
    """tau fixes -1, 2, 3; sends omega to -1/omega and sqrt5 to -sqrt5."""
    for t, _ in full_test_set():
        if t.kind != "split":
            continue
        chi = galois_class(t, basis=GEN_ELEMS)
        chi_conj = galois_class(t.conjugate(), basis=GEN_ELEMS)
        assert chi_conj == _tau_rule(chi), t.label()
