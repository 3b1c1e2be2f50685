"""Congruent zeta functions of diagonal hypersurfaces via Jacobi sums.

The middle local factor at a good prime p is the product over Frobenius
orbits of the degree set A of (1 - J t^f), where f is the orbit length and
J the Jacobi sum of the orbit representative over F_{p^f}.  Expansion is
exact in Z[mu_M] and must collapse to integer coefficients; the point-count
trace, Riemann hypothesis and functional equation serve as exact
self-checks rather than floating-point diagnostics.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .charsum import AlphaTuple, full_alpha_set, jacobi_sum
from .counting import DiagonalVariety, class_histogram
from .cyclo import CycInt
from .errors import InvariantViolationError, ValidationError
from .ffield import make_field


@dataclass(frozen=True, eq=False)
class LocalFactor:
    """Middle local factor P(t) = prod over orbits of (1 - J t^f).

    When orbits were skipped because their Jacobi sums would live over a
    field beyond a caller-imposed cap, `precision` is the largest power of
    t to which `coeffs` is still exact; None means the factor is complete.
    """

    p: int
    cohomology_degree: int                    # middle degree n ("i" in P_i)
    full_degree: int                          # |A| = sum of all orbit sizes
    orbits: tuple[tuple[CycInt, int], ...]    # computed (J, f) pairs
    coeffs: tuple[int, ...]
    precision: int | None = None

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def degree(self) -> int:
        if not self.is_exact:
            raise ValidationError("truncated factor: degree is full_degree")
        return len(self.coeffs) - 1


@dataclass(frozen=True, eq=False)
class CongruentZeta:
    """Z(t) = P_middle(t)^{(-1)^{n+1}} / prod_{j=0..n} (1 - p^j t)."""

    variety: DiagonalVariety
    p: int
    middle: LocalFactor
    hodge: dict[str, int] | None = None

    @property
    def trivial_factors(self) -> tuple[tuple[int, int], ...]:
        """(1 - p^j t) for j = 0..n, as (constant, linear) coefficient pairs."""
        n = self.variety.complex_dim
        return tuple((1, -(self.p ** j)) for j in range(n + 1))


def _expand(orbits, trunc: int | None) -> tuple[int, ...]:
    if not orbits:
        return (1,)
    big_m = math.lcm(*(j.m for j, _ in orbits))
    poly = [CycInt.one(big_m)]
    for j, f in orbits:
        jl = j.lift(big_m)
        width = len(poly) + f
        if trunc is not None:
            width = min(width, trunc + 1)
        new = [CycInt.zero(big_m)] * width
        for i, c in enumerate(poly):
            if i < width:
                new[i] = new[i] + c
            if i + f < width:
                new[i + f] = new[i + f] - jl * c
        poly = new
    out = tuple(c.rational_value() for c in poly)  # raises if not in Z
    if out[0] != 1:
        raise InvariantViolationError("local factor must have constant term 1")
    return out


def local_factor_middle(v: DiagonalVariety, p: int,
                        max_root_field: int | None = None) -> LocalFactor:
    """Middle local factor at a good prime.

    The degree set is partitioned into Frobenius orbits under a -> p*a; an
    orbit of size f needs one Jacobi sum over F_{p^f}.  max_root_field caps
    that auxiliary field size: orbits with p^f beyond the cap are skipped
    and the returned factor is truncated to the precision that stays exact.
    """
    aset = full_alpha_set(v, p)  # validates primality and good reduction
    n = v.complex_dim
    reps: list[tuple[AlphaTuple, int]] = [(o[0], len(o)) for o in aset.orbits]

    skipped = [f for _, f in reps
               if max_root_field is not None and p ** f > max_root_field]
    precision = None if not skipped else min(skipped) - 1

    by_f: dict[int, list[AlphaTuple]] = {}
    for rep, f in reps:
        if precision is None or f <= precision:
            by_f.setdefault(f, []).append(rep)

    # Weil's sign: the reciprocal root attached to alpha is (-1)^n times the
    # plain hyperplane Jacobi sum (minus for odd middle dimension, plus for
    # even), pinned by the exact point-count oracle at p=2,7,11.
    root_sign = (-1) ** n
    orbits: list[tuple[CycInt, int]] = []
    for f in sorted(by_f):
        field = make_field(p, f)
        hist = class_histogram(v, field)
        for rep in by_f[f]:
            j = root_sign * jacobi_sum(field, rep, hist)
            if j * j.conj() != CycInt.from_int(j.m, field.q ** n):
                raise InvariantViolationError(
                    f"|J|^2 != q^{n} for {rep.nums}/{rep.den} at p={p}, f={f}")
            orbits.append((j, f))

    coeffs = _expand(orbits, precision)
    if precision is None and len(coeffs) - 1 != len(aset.tuples):
        raise InvariantViolationError("expanded degree disagrees with |A|")
    return LocalFactor(p=p, cohomology_degree=n, full_degree=len(aset.tuples),
                       orbits=tuple(orbits), coeffs=coeffs, precision=precision)


def congruent_zeta(v: DiagonalVariety, p: int,
                   max_root_field: int | None = None,
                   hodge: dict[str, int] | None = None) -> CongruentZeta:
    return CongruentZeta(variety=v, p=p,
                         middle=local_factor_middle(v, p, max_root_field),
                         hodge=hodge)


def predicted_count(z: CongruentZeta, r: int) -> int:
    """N_r read off the zeta shape.

    N_r = sum_{j=0..n} p^{jr} + (-1)^n sum_{orbits, f | r} f * J^{r/f};
    the orbit trace must collapse to a rational integer.  The sign is minus
    for odd middle dimension (factor in the numerator) and plus for even
    (factor in the denominator, e.g. K3 primitive classes).
    """
    if r < 1:
        raise ValidationError("power index must be positive")
    lf = z.middle
    if lf.precision is not None and r > lf.precision:
        raise ValidationError(
            f"factor truncated at t^{lf.precision}; cannot predict N_{r}")
    n = z.variety.complex_dim
    total = sum(z.p ** (j * r) for j in range(n + 1))
    relevant = [(j, f) for j, f in lf.orbits if r % f == 0]
    if relevant:
        big_m = math.lcm(*(j.m for j, _ in relevant))
        acc = CycInt.zero(big_m)
        for j, f in relevant:
            acc = acc + f * (j ** (r // f)).lift(big_m)
        total += (-1) ** n * acc.rational_value()  # raises if not rational
    return total


@dataclass(frozen=True)
class RHReport:
    p: int
    cohomology_degree: int
    per_root: tuple[bool, ...]    # one flag per computed orbit
    skipped: int                  # degree not covered by computed orbits
    all_pass: bool


def check_riemann_hypothesis(lf: LocalFactor) -> RHReport:
    """Exact |J|^2 = p^(i*f) for every computed orbit root."""
    flags = []
    for j, f in lf.orbits:
        target = CycInt.from_int(j.m, lf.p ** (lf.cohomology_degree * f))
        flags.append(j * j.conj() == target)
    skipped = lf.full_degree - sum(f for _, f in lf.orbits)
    return RHReport(p=lf.p, cohomology_degree=lf.cohomology_degree,
                    per_root=tuple(flags), skipped=skipped,
                    all_pass=all(flags))


@dataclass(frozen=True)
class FunctionalEquationReport:
    p: int
    degree: int
    sign: int
    conjugation_closed: bool
    palindrome_ok: bool


def check_functional_equation(lf: LocalFactor) -> tuple[int, FunctionalEquationReport]:
    """Sign epsilon with t^B p^{iB/2} P(1/(p^i t)) = epsilon * P(t) exactly.

    Also checks the root multiset is conjugation-closed (given RH this is
    the same as closure under beta -> p^{i f}/beta).
    """
    if not lf.is_exact:
        raise ValidationError("functional equation needs the complete factor")
    roots = Counter((j, f) for j, f in lf.orbits)
    conj = Counter((j.conj(), f) for j, f in lf.orbits)
    closed = roots == conj

    c = lf.coeffs
    B = len(c) - 1
    i, p = lf.cohomology_degree, lf.p
    if (i * B) % 2:
        raise InvariantViolationError("i*B odd: no integral palindrome normalisation")
    if abs(c[B]) != p ** ((i * B) // 2):
        raise InvariantViolationError(
            f"|leading coeff| = {abs(c[B])} != p^(iB/2) = {p ** ((i * B) // 2)}")
    sign = 1 if c[B] > 0 else -1
    pal = all(
        c[B - k] == sign * c[k] * p ** ((i * (B - 2 * k)) // 2)
        for k in range(B // 2 + 1)
    )
    if not pal:
        raise InvariantViolationError("palindrome fails for the forced sign")
    report = FunctionalEquationReport(p=p, degree=B, sign=sign,
                                      conjugation_closed=closed,
                                      palindrome_ok=pal)
    return sign, report


def expected_degrees(hodge: dict[str, int] | None, n: int) -> dict[int, int]:
    """Degree table {i: deg P_i} of the zeta factorisation, n in 1..4.

    n=1 uses h10 (the genus, default 1); n=2 is the rigid K3 diamond;
    n=3 needs h11 and h21; n=4 needs h11, h21, h31, h22.
    """
    hodge = dict(hodge or {})
    if n == 1:
        g = hodge.get("h10", 1)
        return {0: 1, 1: 2 * g, 2: 1}
    if n == 2:
        return {0: 1, 1: 0, 2: 22, 3: 0, 4: 1}
    if n == 3:
        h11, h21 = hodge["h11"], hodge["h21"]
        return {0: 1, 1: 0, 2: h11, 3: 2 + 2 * h21, 4: h11, 5: 0, 6: 1}
    if n == 4:
        h11, h21 = hodge["h11"], hodge["h21"]
        h31, h22 = hodge["h31"], hodge["h22"]
        return {0: 1, 1: 0, 2: h11, 3: 2 * h21, 4: 2 + 2 * h31 + h22,
                5: 2 * h21, 6: h11, 7: 0, 8: 1}
    raise ValidationError(f"no degree table for complex dimension {n}")
