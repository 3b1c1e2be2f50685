"""Local zeta factors: frozen coefficients, point-count recovery, RH, and the
functional equation."""

import pytest

from cyarith import (CongruentZeta, DiagonalVariety, check_functional_equation,
                     check_riemann_hypothesis, congruent_zeta, count_projective,
                     expected_degrees, local_factor_middle, make_field,
                     predicted_count)
from cyarith.errors import ValidationError


def test_quintic_factor_p11(quintic_lf11):
    lf = quintic_lf11
    assert lf.full_degree == 204
    assert lf.is_exact
    assert lf.degree == 204
    assert len(lf.coeffs) == 205
    assert lf.coeffs[0] == 1
    assert lf.coeffs[1:5] == (461, 48686, -8869784, -1916532189)
    assert all(isinstance(c, int) for c in lf.coeffs)


def test_quintic_factor_p31_head(quintic_lf31):
    assert quintic_lf31.coeffs[:3] == (1, 16641, 138483696)
    assert quintic_lf31.full_degree == 204


def test_quintic_factor_p2(quintic_lf2):
    lf = quintic_lf2
    # 51 Frobenius orbits of length 4; every orbit root is -64 = -(2^4)^{3/2}
    assert len(lf.orbits) == 51
    assert all(f == 4 for _, f in lf.orbits)
    assert all(j.rational_value() == -64 for j, _ in lf.orbits)
    assert lf.coeffs[4] == 51 * 64 == 3264
    assert all(lf.coeffs[i] == 0 for i in range(1, 4))


def test_predicted_counts_match_enumeration(quintic, quintic_lf11, quintic_lf2):
    z11 = CongruentZeta(variety=quintic, p=11, middle=quintic_lf11)
    assert predicted_count(z11, 1) == count_projective(quintic, make_field(11))
    z2 = CongruentZeta(variety=quintic, p=2, middle=quintic_lf2)
    for r in (1, 2, 3, 4):
        assert predicted_count(z2, r) == count_projective(quintic, make_field(2, r))
    with pytest.raises(ValidationError):
        predicted_count(z2, 0)


def test_cubic_factors():
    cubic = DiagonalVariety.fermat(3, 1)
    for p, coeffs in [(7, (1, 1, 7)), (13, (1, -5, 13)), (2, (1, 0, 2))]:
        lf = local_factor_middle(cubic, p)
        assert lf.coeffs == coeffs
        z = CongruentZeta(variety=cubic, p=p, middle=lf)
        assert predicted_count(z, 1) == count_projective(cubic, make_field(p))


def test_k3_quartic_factors():
    quartic = DiagonalVariety.fermat(4, 2)
    lf5 = local_factor_middle(quartic, 5)
    assert lf5.coeffs[:4] == (1, 31, 250, -2050)
    assert lf5.full_degree == 21
    z = CongruentZeta(variety=quartic, p=5, middle=lf5)
    assert predicted_count(z, 1) == 0     # x^4 mod 5 only reaches {0, 1}
    lf3 = local_factor_middle(quartic, 3)
    assert lf3.coeffs[:4] == (1, -3, -90, 270)
    z3 = CongruentZeta(variety=quartic, p=3, middle=lf3)
    for r in (1, 2):
        assert predicted_count(z3, r) == count_projective(quartic, make_field(3, r))


def test_mixed_exponent_elliptic():
    v = DiagonalVariety((2, 3, 6))
    for p, coeffs in [(5, (1, 0, 5)), (7, (1, -4, 7)),
                      (11, (1, 0, 11)), (13, (1, -2, 13))]:
        lf = local_factor_middle(v, p)
        assert lf.coeffs == coeffs
        z = CongruentZeta(variety=v, p=p, middle=lf)
        assert predicted_count(z, 1) == count_projective(v, make_field(p))


def test_riemann_hypothesis_reports(quintic_lf11, quintic_lf31):
    for lf in (quintic_lf11, quintic_lf31):
        rep = check_riemann_hypothesis(lf)
        assert rep.all_pass
        assert len(rep.per_root) == len(lf.orbits)
        assert all(rep.per_root)


def test_functional_equation(quintic_lf11, quintic_lf2):
    sign11, rep11 = check_functional_equation(quintic_lf11)
    assert sign11 == 1
    assert rep11.conjugation_closed and rep11.palindrome_ok
    sign2, _ = check_functional_equation(quintic_lf2)
    assert sign2 == 1
    # K3 at p = 5 picks the minus sign
    lf5 = local_factor_middle(DiagonalVariety.fermat(4, 2), 5)
    sign5, rep5 = check_functional_equation(lf5)
    assert sign5 == -1
    assert rep5.palindrome_ok


def test_truncation(quintic):
    lf = local_factor_middle(quintic, 7, max_root_field=100)
    assert not lf.is_exact
    assert lf.precision == 3
    assert lf.coeffs == (1,)               # no orbit fits below t^4
    assert lf.full_degree == 204
    with pytest.raises(ValidationError):
        lf.degree


def test_congruent_zeta_wrapper(quintic):
    z = congruent_zeta(quintic, 11)
    assert z.p == 11
    assert z.trivial_factors == ((1, -1), (1, -11), (1, -121), (1, -1331))
    assert z.middle.full_degree == 204


def test_expected_degrees():
    # quintic threefold hodge numbers force the 204
    deg = expected_degrees({"h11": 1, "h21": 101}, 3)
    assert deg[3] == 2 + 2 * 101 == 204
    assert deg[0] == deg[6] == 1
    assert deg[2] == deg[4] == 1
    k3 = expected_degrees(None, 2)
    assert k3[2] == 22
    curve = expected_degrees(None, 1)
    assert curve[1] == 2
