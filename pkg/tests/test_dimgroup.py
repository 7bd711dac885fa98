import random
from fractions import Fraction

import numpy as np
import pytest

from pfkit.dimgroup import (
    DYADIC_ONE,
    DYADIC_ZERO,
    PAPERFOLD_MATRIX,
    DyadicInvolution,
    DyadicPair,
    DyadicRational,
    TorsionDyadicPair,
    TORSION_UNIT_BRANCHES,
    alpha,
    alpha_preimage,
    birkhoff_discrepancy,
    closed_form_membership,
    closed_form_power,
    cone_membership,
    coboundary_partial_sums,
    discrepancy_profile,
    in_G,
    in_G_plus,
    in_H,
    involution_apply,
    m_sequence,
    mat_pow,
    one_plus_sigma_image,
    one_plus_sigma_preimage,
    rescale_unit,
    staged_cone_witness,
    torsion_add,
    torsion_is_positive,
    torsion_rescale_unit,
    torsion_state_value,
    verify_cone_identity,
    verify_coboundary_bound,
    verify_involution_algebra,
    verify_lattice_properties,
    verify_matrix_closed_form,
    verify_unbounded_discrepancy,
)
from pfkit.errors import DomainError, ResourceError
from pfkit.paperfold import pf_prefix
from pfkit.words import Word


def test_mat_pow_basics():
    ident = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    assert mat_pow(PAPERFOLD_MATRIX, 0) == ident
    assert mat_pow(PAPERFOLD_MATRIX, 1) == PAPERFOLD_MATRIX
    with pytest.raises(DomainError):
        mat_pow(PAPERFOLD_MATRIX, -1)


def test_matrix_closed_form():
    for n in range(0, 21):
        e = 2**n
        assert mat_pow(PAPERFOLD_MATRIX, n + 2) == (
            (e + 1, e - 1, e, e),
            (e, e, e, e),
            (e, e, e, e),
            (e - 1, e + 1, e, e),
        )
    assert closed_form_power(42) == mat_pow(PAPERFOLD_MATRIX, 42)  # exact big ints
    assert verify_matrix_closed_form(20).status == "pass"
    with pytest.raises(DomainError):
        closed_form_power(1)


def test_membership_examples():
    ones = (1, 1, 1, 1)
    assert in_G(ones, 1) and in_G_plus(ones, 1)
    h = (Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2))
    assert in_H(h, 3)
    zero = (0, 0, 0, 0)
    assert closed_form_membership(zero, 5) == (True, True, True)
    v = (1, -1, 0, 0)
    got = closed_form_membership(v, 4)
    assert got == (True, False, False)
    assert in_G(v, 4) and not in_H(v, 4)
    with pytest.raises(DomainError):
        in_G(ones, 0)
    with pytest.raises(DomainError):
        closed_form_membership(ones, 1)


def test_sum_power_condition_gives_membership():
    rng = random.Random(2)
    for n in range(0, 8):
        for _ in range(25):
            m = rng.randint(-50, 50)
            q = alpha_preimage(Fraction(rng.randint(-50, 50), 2**n), m)
            assert in_G(q, n + 2)


def test_closed_form_tracks_integrality_of_difference():
    # inequality alone without integral difference must not count as positive
    q = (Fraction(1, 2), 0, 0, Fraction(1, 2))
    n = 4
    definitional = (in_G(q, n), in_H(q, n), in_G_plus(q, n))
    assert definitional == (False, False, False)
    assert closed_form_membership(q, n) == definitional


def test_alpha_examples():
    for n in range(0, 6):
        pair = alpha((1, 1, 1, 1), n)
        assert pair == DyadicPair(DyadicRational(4, 0), 0)
    # kernel goes to the origin
    h = (Fraction(3, 7), Fraction(3, 7), Fraction(1, 5), Fraction(-6, 7) - Fraction(1, 5))
    assert alpha(h, 2) == DyadicPair(DYADIC_ZERO, 0)
    with pytest.raises(DomainError):
        alpha((Fraction(1, 3), 0, 0, 0), 2)


def test_alpha_surjectivity_witnesses():
    rng = random.Random(5)
    for n in range(0, 8):
        for _ in range(40):
            s = Fraction(rng.randint(-200, 200), 2 ** rng.randint(0, n))
            m = rng.randint(-200, 200)
            pair = alpha(alpha_preimage(s, m), n)
            assert pair.s.to_fraction() == s and pair.m == m


def test_cone_membership():
    assert cone_membership(DyadicPair(DYADIC_ZERO, 0))
    assert not cone_membership(DyadicPair(DYADIC_ZERO, 5))
    p = DyadicPair(DyadicRational(1, 3), 1000)
    assert cone_membership(p)
    assert staged_cone_witness(p) == 13  # least n with 2^n / 8 >= 1000
    assert staged_cone_witness(DyadicPair(DYADIC_ZERO, 0)) == 0
    assert staged_cone_witness(DyadicPair(DYADIC_ZERO, 5)) is None
    assert staged_cone_witness(DyadicPair(DyadicRational(-1, 0), 0)) is None


def test_staged_witness_is_valid_and_minimal():
    rng = random.Random(23)
    for _ in range(500):
        p = DyadicPair(
            DyadicRational(rng.randint(-4096, 4096), rng.randint(0, 12)),
            rng.randint(-4096, 4096),
        )
        n = staged_cone_witness(p)
        assert (n is not None) == cone_membership(p)
        if n is None or p.s == DYADIC_ZERO:
            continue
        s = p.s.to_fraction()
        assert (2**n * s).denominator == 1 and s > 0 and abs(p.m) <= 2**n * s
        if n > p.s.exp:
            assert abs(p.m) > 2 ** (n - 1) * s  # one stage earlier fails


def test_rescale_unit():
    four = DyadicPair(DyadicRational(4, 0), 0)
    assert rescale_unit(four, DyadicRational(4, 0)) == DyadicPair(DYADIC_ONE, 0)
    zero = DyadicPair(DYADIC_ZERO, 0)
    assert rescale_unit(zero, DyadicRational(4, 0)) == zero
    # dividing by 1/2 doubles
    assert rescale_unit(DyadicPair(DYADIC_ONE, 3), DyadicRational(1, 1)) == DyadicPair(
        DyadicRational(2, 0), 3
    )
    with pytest.raises(DomainError):
        rescale_unit(four, DyadicRational(-4, 0))
    with pytest.raises(DomainError):
        rescale_unit(four, DyadicRational(3, 0))


def test_rescale_preserves_cone():
    rng = random.Random(29)
    for _ in range(1000):
        p = DyadicPair(
            DyadicRational(rng.randint(-1024, 1024), rng.randint(0, 10)),
            rng.randint(-1024, 1024),
        )
        assert cone_membership(rescale_unit(p, DyadicRational(4, 0))) == cone_membership(p)


def test_dyadic_rational_canonical_form():
    assert DyadicRational(4, 2) == DyadicRational(1, 0)
    assert DyadicRational(6, 1) == DyadicRational(3, 0)
    assert DyadicRational(0, 9) == DYADIC_ZERO
    assert DyadicRational(4, 0).num == 4  # integers keep their value
    assert str(DyadicRational(-3, 4)) == "-3/2^4"
    assert DyadicRational.parse("-3/2^4") == DyadicRational(-3, 4)
    with pytest.raises(DomainError):
        DyadicRational.from_fraction(Fraction(1, 3))
    with pytest.raises(DomainError):
        DyadicRational(1, -1)


def test_dyadic_arithmetic_against_fractions():
    rng = random.Random(31)
    for _ in range(500):
        a = DyadicRational(rng.randint(-300, 300), rng.randint(0, 8))
        b = DyadicRational(rng.randint(-300, 300), rng.randint(0, 8))
        fa, fb = a.to_fraction(), b.to_fraction()
        assert (a + b).to_fraction() == fa + fb
        assert (a - b).to_fraction() == fa - fb
        assert (a * b).to_fraction() == fa * fb
        assert (a < b) == (fa < fb)
        assert (a >= b) == (fa >= fb)
        assert a.halve().to_fraction() == fa / 2


def test_involution():
    p = DyadicPair(DyadicRational(5, 2), 7)
    flip = DyadicInvolution(DYADIC_ZERO)
    assert involution_apply(flip, p) == DyadicPair(DyadicRational(5, 2), -7)
    rng = random.Random(37)
    for _ in range(1000):
        inv = DyadicInvolution(DyadicRational(rng.randint(-512, 512), rng.randint(0, 9)))
        q = DyadicPair(
            DyadicRational(rng.randint(-512, 512), rng.randint(0, 9)),
            rng.randint(-512, 512),
        )
        assert involution_apply(inv, involution_apply(inv, q)) == q
        fixed = DyadicPair(q.s, 0)
        assert involution_apply(inv, fixed) == fixed
        image = one_plus_sigma_image(inv, q)
        assert image.m == 0
    # the order unit is fixed by every twist
    unit = DyadicPair(DYADIC_ONE, 0)
    assert involution_apply(DyadicInvolution(DyadicRational(7, 3)), unit) == unit


def test_one_plus_sigma():
    inv = DyadicInvolution(DyadicRational(3, 1))
    q = DyadicPair(DyadicRational(5, 2), 0)
    assert one_plus_sigma_image(inv, q) == DyadicPair(DyadicRational(5, 1), 0)
    pre = one_plus_sigma_preimage(inv, q)
    assert pre == DyadicPair(DyadicRational(5, 3), 0)
    assert one_plus_sigma_image(inv, pre) == q
    with pytest.raises(DomainError):
        one_plus_sigma_preimage(inv, DyadicPair(DYADIC_ONE, 1))


def test_birkhoff_discrepancy():
    t = pf_prefix(64)
    assert birkhoff_discrepancy(t, 0) == 1
    assert birkhoff_discrepancy(t, 4) == 3
    with pytest.raises(DomainError):
        birkhoff_discrepancy(t, 64)
    profile = discrepancy_profile(t)
    text = str(t)
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randrange(64)
        naive = text[: n + 1].count("1") - text[: n + 1].count("0")
        assert birkhoff_discrepancy(t, n) == naive == int(profile[n])


def test_m_sequence():
    assert [m_sequence(n) for n in range(4)] == [0, 1, 4, 9]
    for n in range(61):
        m = m_sequence(n)
        assert m % 2 == n % 2
        assert m <= 2 ** (n + 1) - 2
    with pytest.raises(ResourceError):
        m_sequence(61)
    with pytest.raises(DomainError):
        m_sequence(-1)


def test_discrepancy_growth():
    t = pf_prefix(32)
    for n in range(4):
        assert birkhoff_discrepancy(t, m_sequence(n)) == n + 1
    assert verify_unbounded_discrepancy(10).status == "pass"


def test_coboundary_sums_bounded():
    t = pf_prefix(4096)
    for symbol in (0, 1):
        sums = coboundary_partial_sums(t, symbol)
        assert int(np.abs(sums).max()) <= 2
        f = (t.to_array() == symbol).astype(np.int64)
        assert np.array_equal(sums, f[1:] - f[0])
    assert verify_coboundary_bound(2**12).status == "pass"


def test_torsion_pairs():
    q = DyadicRational(3, 2)
    a = TorsionDyadicPair(1, q)
    b = TorsionDyadicPair(1, DyadicRational(1, 2))
    assert torsion_add(a, b) == TorsionDyadicPair(0, DyadicRational(1, 0))
    assert torsion_is_positive(TorsionDyadicPair(1, DyadicRational(1, 1)))
    assert not torsion_is_positive(TorsionDyadicPair(1, DYADIC_ZERO))
    assert torsion_is_positive(TorsionDyadicPair(0, DYADIC_ZERO))
    assert torsion_state_value(TorsionDyadicPair(1, DyadicRational(3, 2))) == DyadicRational(3, 2)
    assert torsion_state_value(TorsionDyadicPair(0, DyadicRational(3, 2))) == DyadicRational(3, 2)
    assert torsion_rescale_unit(TorsionDyadicPair(1, DyadicRational(4, 0)), DyadicRational(4, 0)) == TorsionDyadicPair(1, DYADIC_ONE)
    with pytest.raises(DomainError):
        TorsionDyadicPair(2, q)


def test_torsion_unit_branches_stay_ambiguous():
    assert TORSION_UNIT_BRANCHES == (
        TorsionDyadicPair(0, DYADIC_ONE),
        TorsionDyadicPair(1, DYADIC_ONE),
    )
    # the unique state cannot tell the two branches apart
    s0 = torsion_state_value(TORSION_UNIT_BRANCHES[0])
    s1 = torsion_state_value(TORSION_UNIT_BRANCHES[1])
    assert s0 == s1 == DYADIC_ONE


def test_batteries_pass_quickly():
    assert verify_lattice_properties(4, 50, seed=7).status == "pass"
    assert verify_cone_identity(100, seed=7).status == "pass"
    assert verify_involution_algebra(100, seed=7).status == "pass"


def test_battery_reports_are_reproducible():
    a = verify_lattice_properties(3, 25, seed=11)
    b = verify_lattice_properties(3, 25, seed=11)
    assert a.to_dict() | {"elapsed_ms": 0} == b.to_dict() | {"elapsed_ms": 0}
