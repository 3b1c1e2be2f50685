"""Jacobi sums: direct-definition oracle, Galois equivariance, Weil bound."""

import math

import pytest

from cyarith import (AlphaTuple, CycInt, DiagonalVariety, build_alpha_set,
                     class_histogram, full_alpha_set, jacobi_sum, make_field)
from cyarith.charsum import jacobi_sum_direct
from cyarith.errors import ValidationError
from cyarith.ffield import prime_field_with_generator


def test_alpha_tuple_validation():
    with pytest.raises(ValidationError):
        AlphaTuple((0, 1, 4), 5)           # zero entry
    with pytest.raises(ValidationError):
        AlphaTuple((1, 1, 1), 5)           # sum not integral
    a = AlphaTuple((1, 1, 1, 1, 1), 5)
    assert a.conductor == 5
    assert a.conjugate().nums == (4, 4, 4, 4, 4)
    assert a.scale(2).nums == (2, 2, 2, 2, 2)


def test_alpha_set_sizes(quintic):
    # (d-1 choose s+1)-style count: 204 interior lattice points for the quintic
    aset = full_alpha_set(quintic, 11)
    assert len(aset.tuples) == 204
    # p = 11 is 1 mod 5: Frobenius acts trivially, all orbits singletons
    assert all(len(o) == 1 for o in aset.orbits)
    aset2 = full_alpha_set(quintic, 2)
    assert len(aset2.tuples) == 204
    assert sorted({len(o) for o in aset2.orbits}) == [4]
    assert len(aset2.orbits) == 51


def test_alpha_set_cubic():
    cubic = DiagonalVariety.fermat(3, 1)
    aset = full_alpha_set(cubic, 7)
    assert [a.nums for a in aset.tuples] == [(1, 1, 1), (2, 2, 2)]


def test_build_alpha_set_respects_field_orders():
    # over F_2 itself every character is trivial; the degree set must be empty
    v = DiagonalVariety.fermat(3, 1)
    aset = build_alpha_set(v, make_field(2))
    assert aset.tuples == ()
    # over F_4 the full cubic set reappears
    aset4 = build_alpha_set(v, make_field(2, 2))
    assert len(aset4.tuples) == 2


@pytest.mark.parametrize("exps,p,r", [
    ((3, 3, 3), 7, 1),
    ((3, 3, 3), 13, 1),
    ((4, 4, 4, 4), 5, 1),
    ((5, 5, 5, 5, 5), 11, 1),
    ((3, 3, 3), 2, 2),
    ((2, 3, 6), 7, 1),
])
def test_histogram_sum_matches_direct_definition(exps, p, r):
    v = DiagonalVariety(exps)
    f = make_field(p, r)
    hist = class_histogram(v, f)
    aset = build_alpha_set(v, f)
    for a in aset.tuples[:40]:
        assert jacobi_sum(f, a, hist) == jacobi_sum_direct(f, a)


def test_generator_independence(quintic):
    # switching generators Galois-twists individual sums but permutes the
    # alpha labels along with them: the multiset over A is an invariant
    from collections import Counter

    def multiset(g):
        f = prime_field_with_generator(11, g)
        hist = class_histogram(quintic, f)
        return Counter(jacobi_sum(f, a, hist).coeffs
                       for a in full_alpha_set(quintic, 11).tuples)

    reference = multiset(2)
    for g in (6, 7, 8):
        assert multiset(g) == reference


def test_conjugation_equivariance(quintic, f11):
    hist = class_histogram(quintic, f11)
    for a in full_alpha_set(quintic, 11).tuples[:30]:
        assert jacobi_sum(f11, a.conjugate(), hist) == \
            jacobi_sum(f11, a, hist).conj()


def test_weil_bound_exact(quintic, f11):
    hist = class_histogram(quintic, f11)
    q = f11.q
    for a in full_alpha_set(quintic, 11).tuples[:30]:
        j = jacobi_sum(f11, a, hist)
        assert j * j.conj() == CycInt.from_int(j.m, q ** (len(a.nums) - 2))


def test_known_cubic_value():
    # J(chi, chi, chi) for the cubic at p = 7 embeds near 1 - 3*omega-ish;
    # pin the exact trace: j + conj(j) = 1 here
    f = make_field(7)
    v = DiagonalVariety.fermat(3, 1)
    hist = class_histogram(v, f)
    j = jacobi_sum(f, AlphaTuple((1, 1, 1), 3), hist)
    assert (j + j.conj()).rational_value() == 1
    assert j * j.conj() == CycInt.from_int(3, 7)
