"""Modular data, fusion rules, dilogarithm identities, and the bridge from
quantum dimensions to cyclotomic units."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import spence

from cyarith import (check_kn_identity, check_kr_identity, euler_Li2,
                     fusion_field_match, gepner_levels, modular_data,
                     n2_spectrum, quantum_dimension, rogers_L, verlinde_fusion)
from cyarith.errors import ValidationError

PI2_6 = math.pi ** 2 / 6


def su2_fusion_oracle(k, l, m, n):
    """Closed form: N = 1 iff |l-m| <= n <= min(l+m, 2k-l-m), l+m+n even."""
    return int(abs(l - m) <= n <= min(l + m, 2 * k - l - m) and (l + m + n) % 2 == 0)


def test_euler_li2_against_scipy():
    # scipy convention: spence(z) = Li2(1 - z)
    for z in np.linspace(-1.0, 1.0, 401):
        assert euler_Li2(float(z)) == pytest.approx(spence(1.0 - float(z)),
                                                    rel=1e-13, abs=1e-14)


def test_euler_li2_exact_points():
    assert euler_Li2(1.0) == PI2_6
    assert euler_Li2(-1.0) == -PI2_6 / 2
    assert euler_Li2(0.5) == pytest.approx(PI2_6 / 2 - math.log(2) ** 2 / 2, rel=1e-15)
    assert euler_Li2(0.0) == 0.0
    with pytest.raises(ValidationError):
        euler_Li2(1.5)
    with pytest.raises(ValidationError):
        euler_Li2(float("nan"))


def test_rogers_dilog():
    assert rogers_L(0.0) == 0.0
    assert rogers_L(1.0) == PI2_6
    assert rogers_L(0.5) == pytest.approx(PI2_6 / 2, rel=1e-14)
    for x in np.linspace(0.01, 0.99, 50):
        x = float(x)
        assert rogers_L(x) + rogers_L(1.0 - x) == pytest.approx(PI2_6, rel=1e-13)
    # real extension used by the sum rules: L(x) = 2 L(1) - L(1/x)
    assert rogers_L(4.0) == pytest.approx(2 * PI2_6 - rogers_L(0.25), rel=1e-14)
    with pytest.raises(ValidationError):
        rogers_L(-0.1)


def test_modular_data():
    md = modular_data(3)
    assert md.c == Fraction(9, 5)
    assert md.deltas == (0, Fraction(3, 20), Fraction(2, 5), Fraction(3, 4))
    assert np.allclose(md.S, md.S.T)
    assert np.allclose(md.S @ md.S, np.eye(4), atol=1e-13)
    with pytest.raises(ValidationError):
        modular_data(0)


def test_quantum_dimension():
    golden = (1 + math.sqrt(5)) / 2
    assert quantum_dimension(3, 1) == pytest.approx(golden, rel=1e-15)
    assert quantum_dimension(3, 2) == pytest.approx(golden, rel=1e-15)
    assert quantum_dimension(3, 0) == 1.0
    assert quantum_dimension(2, 1, 1) == 0.0        # sine zero, returned exactly
    with pytest.raises(ValidationError):
        quantum_dimension(3, 4)


@pytest.mark.parametrize("k", range(1, 9))
def test_verlinde_fusion_matches_closed_form(k):
    N = verlinde_fusion(k)
    for l in range(k + 1):
        for m in range(k + 1):
            for n in range(k + 1):
                assert N[l, m, n] == su2_fusion_oracle(k, l, m, n)
    # vacuum column and total symmetry come along for free
    assert (N[0] == np.eye(k + 1, dtype=np.int64)).all()
    assert (N == N.transpose(1, 0, 2)).all()
    assert (N == N.transpose(0, 2, 1)).all()


def test_n2_spectrum():
    sp = n2_spectrum(1)
    assert len(sp.entries) == 12
    match = [e for e in sp.entries if (e.l, e.q, e.s) == (1, 1, 0)]
    assert len(match) == 1
    assert match[0].delta == Fraction(1, 6)
    assert match[0].charge == Fraction(1, 3)
    # charged vacuum-sector pairs delta = |Q|/2 (chiral primaries, s = 0)
    for e in sp.entries:
        if e.s == 0 and e.q == e.l:
            assert e.delta == abs(e.charge) / 2


def test_kr_identity():
    for k in range(1, 13):
        assert check_kr_identity(k) < 1e-9
    with pytest.raises(ValidationError):
        check_kr_identity(0)


def test_kn_identity():
    res = check_kn_identity(3, 1)
    assert res.rhs == pytest.approx(4.2, rel=1e-15)
    assert res.residual < 1e-9
    assert res.vanishing == ()
    skipped = check_kn_identity(2, 1)
    assert skipped.residual is None and skipped.lhs is None
    assert skipped.vanishing == (1,)
    # m = 0 degenerates to the plain sum rule
    base = check_kn_identity(5, 0)
    assert base.rhs == pytest.approx(3 * 5 / 7, rel=1e-15)
    assert base.residual < 1e-9
    with pytest.raises(ValidationError):
        check_kn_identity(3, 4)


def test_fusion_field_match():
    rep = fusion_field_match(3)
    assert rep.conductor == 5
    assert rep.all_match
    assert [e.unit_index for e in rep.entries] == [1, 2, 3, 4]
    assert all(e.abs_err <= 1e-12 for e in rep.entries)
    # gcd(l+1, k+2) > 1 labels are carried but not matched
    rep2 = fusion_field_match(2)
    assert rep2.conductor == 4
    assert [e.unit_index for e in rep2.entries] == [1, None, 3]
    assert rep2.all_match


def test_gepner_levels():
    assert gepner_levels(3, 4) == [(1, 4), (2, 2), (1, 1, 1)]
    levels = gepner_levels()
    assert len(levels) == 168
    for member in [(3, 3, 3, 3, 3), (2, 2, 2, 2, 2, 2), (1, 16, 16, 16),
                   (2, 3, 19, 418)]:
        assert member in levels
    assert levels[0] == (1, 5, 41, 1804)    # Sylvester expansion of 1/2
    for t in levels:
        assert sum(Fraction(3 * k, k + 2) for k in t) == 9
    with pytest.raises(ValidationError):
        gepner_levels(9, 0)
