"""Character-exponent tuples and exact Jacobi sums for diagonal hypersurfaces.

An admissible tuple alpha = (a_0/l_0, ..., a_s/l_s) has every entry in (0,1)
with denominator dividing the per-coordinate order and integer entry sum.
The Jacobi sum

    j_q(alpha) = 1/(q-1) * sum over (u_i) in (F_q^*)^{s+1}, sum u_i = 0,
                 of prod_i chi_{alpha_i}(u_i)

is evaluated exactly in Z[mu_m] via the shared dlog-class histogram; a
direct-summation path over the raw tuples is kept as the oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .counting import ClassHistogram, DiagonalVariety, HISTOGRAM_BUDGET
from .cyclo import CycInt
from .errors import BadReductionError, CapacityError, InvariantViolationError, ValidationError
from .ffield import FieldTable, is_prime


@dataclass(frozen=True)
class AlphaTuple:
    """Entries nums[i]/den with 0 < nums[i] < den and integer sum."""

    nums: tuple[int, ...]
    den: int

    def __post_init__(self):
        nums = tuple(int(n) for n in self.nums)
        object.__setattr__(self, "nums", nums)
        if self.den < 2:
            raise ValidationError("denominator must be at least 2")
        if any(not 0 < n < self.den for n in nums):
            raise ValidationError("entries must lie strictly between 0 and 1")
        if sum(nums) % self.den:
            raise ValidationError("entry sum must be an integer")

    @property
    def conductor(self) -> int:
        """lcm of the entry denominators in lowest terms."""
        return math.lcm(*(self.den // math.gcd(n, self.den) for n in self.nums))

    def entry_denominators(self) -> tuple[int, ...]:
        return tuple(self.den // math.gcd(n, self.den) for n in self.nums)

    def conjugate(self) -> "AlphaTuple":
        return AlphaTuple(tuple(self.den - n for n in self.nums), self.den)

    def scale(self, t: int) -> "AlphaTuple":
        """t * alpha mod 1, defined for gcd(t, den) = 1."""
        if math.gcd(t, self.den) != 1:
            raise ValidationError(f"scaling by {t} does not preserve denominators mod {self.den}")
        return AlphaTuple(tuple(n * t % self.den for n in self.nums), self.den)


@dataclass(frozen=True, eq=False)
class AlphaSet:
    """All admissible tuples for given per-coordinate orders, with the
    partition into orbits of alpha -> p * alpha."""

    variety: DiagonalVariety
    orders: tuple[int, ...]
    p: int
    tuples: tuple[AlphaTuple, ...]
    orbits: tuple[tuple[AlphaTuple, ...], ...]


def _enumerate_tuples(orders: tuple[int, ...]) -> list[AlphaTuple]:
    den = math.lcm(*orders)
    weights = [den // l for l in orders]
    out = []
    for a in product(*(range(1, l) for l in orders)):
        nums = tuple(ai * w for ai, w in zip(a, weights))
        if sum(nums) % den == 0:
            out.append(AlphaTuple(nums, den))
    return out


def _assemble(v: DiagonalVariety, orders: tuple[int, ...], p: int) -> AlphaSet:
    tuples = tuple(_enumerate_tuples(orders))
    seen: set[AlphaTuple] = set()
    orbits = []
    for a in tuples:
        if a in seen:
            continue
        orbit = [a]
        seen.add(a)
        b = a.scale(p % a.den) if a.den > 1 else a
        while b != a:
            orbit.append(b)
            seen.add(b)
            b = b.scale(p % a.den)
        orbits.append(tuple(orbit))
    return AlphaSet(variety=v, orders=orders, p=p, tuples=tuples, orbits=tuple(orbits))


def build_alpha_set(v: DiagonalVariety, f: FieldTable) -> AlphaSet:
    """Admissible tuples for the field at hand: l_i = gcd(n_i, q-1)."""
    orders = tuple(math.gcd(n, f.q - 1) for n in v.exponents)
    if any(l == 1 for l in orders):
        # a unit order kills the coordinate's character range; no tuples survive
        return AlphaSet(variety=v, orders=orders, p=f.p, tuples=(), orbits=())
    return _assemble(v, orders, f.p)


def full_alpha_set(v: DiagonalVariety, p: int) -> AlphaSet:
    """The degree set (l_i = n_i), orbit-partitioned under the given prime."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if not v.is_good_prime(p):
        raise BadReductionError(f"{p} divides an exponent of {v.exponents}")
    return _assemble(v, v.exponents, p)


# -- Jacobi sums -------------------------------------------------------------------


def _char_multipliers(alpha: AlphaTuple, m: int) -> list[int]:
    """Integers e_i with chi_{alpha_i}(g^s) = xi_m^(e_i * s)."""
    return [m * n // alpha.den for n in alpha.nums]


def _to_cyc(buckets: list[int], q: int, m: int) -> CycInt:
    scaled = []
    for w in buckets:
        if w % (q - 1):
            raise InvariantViolationError(
                "character sum not divisible by q-1; scaling orbits broken")
        scaled.append(w // (q - 1))
    return CycInt.from_exponent_counts(m, scaled)


def jacobi_sum(f: FieldTable, alpha: AlphaTuple, hist: ClassHistogram) -> CycInt:
    """Exact j_q(alpha) in Z[mu_m] from a precomputed class histogram."""
    if hist.field is not f and (hist.field.p, hist.field.r, hist.field.g) != (f.p, f.r, f.g):
        raise ValidationError("histogram was built over a different field")
    if len(alpha.nums) != len(hist.orders):
        raise ValidationError("tuple length does not match histogram arity")
    for d, l in zip(alpha.entry_denominators(), hist.orders):
        if l % d:
            raise ValidationError(f"entry denominator {d} does not divide order {l}")
    m = alpha.conductor
    mult = _char_multipliers(alpha, m)
    exps = np.zeros(hist.counts.shape, dtype=np.int64)
    grids = np.indices(hist.counts.shape)
    for e_i, grid in zip(mult, grids):
        exps += e_i * grid
    exps %= m
    buckets = [int(hist.counts[exps == e].sum()) for e in range(m)]
    return _to_cyc(buckets, f.q, m)


def jacobi_sum_direct(f: FieldTable, alpha: AlphaTuple) -> CycInt:
    """Direct summation over all nonzero hyperplane tuples (the oracle path)."""
    s1 = len(alpha.nums)
    s = s1 - 1
    q, p = f.q, f.p
    if (q - 1) ** s > HISTOGRAM_BUDGET:
        raise CapacityError("direct Jacobi summation exceeds the enumeration budget")
    for d in alpha.entry_denominators():
        if (q - 1) % d:
            raise ValidationError(f"character order {d} does not divide q-1")
    m = alpha.conductor
    mult = _char_multipliers(alpha, m)
    dl = np.where(f.dlog >= 0, f.dlog, 0)
    U = np.arange(1, q, dtype=np.int64)
    nv = min(3, s)
    buckets = [0] * m

    vexp = np.zeros((1,) * nv, dtype=np.int64)
    for j in range(nv):
        i = s - nv + j
        vexp = vexp + (mult[i] * dl[U]).reshape((1,) * j + (q - 1,) + (1,) * (nv - 1 - j))

    if f.r == 1:
        vsum = np.zeros((1,) * nv, dtype=np.int64)
        for j in range(nv):
            vsum = vsum + U.reshape((1,) * j + (q - 1,) + (1,) * (nv - 1 - j))
    else:
        vsum = np.zeros((1,) * nv + (f.r,), dtype=np.int32)
        for j in range(nv):
            vsum = vsum + f.digits[U].reshape((1,) * j + (q - 1,) + (1,) * (nv - 1 - j) + (f.r,))

    for prefix in product(range(1, q), repeat=s - nv):
        if f.r == 1:
            dep = (-(sum(prefix) + vsum)) % p
        else:
            part = np.zeros(f.r, dtype=np.int32)
            for u in prefix:
                part = part + f.digits[u]
            dep = ((p - (part + vsum)) % p) @ f.ppow
        mask = dep != 0
        e = (vexp + mult[s] * dl[dep]) % m
        for i, u in enumerate(prefix):
            e = (e + mult[i] * int(dl[u])) % m
        cnt = np.bincount(e[mask], minlength=m)
        for k in range(m):
            buckets[k] += int(cnt[k])
    return _to_cyc(buckets, q, m)
