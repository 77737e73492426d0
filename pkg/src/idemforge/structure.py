"""Number-theoretic structure of a problem instance: orders, the (t, m)
parameters, q-cyclotomic cosets mod p^k, and the full irreducible
factorization of x^(p^k) - 1 over F_q via coset products in the splitting
field."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import _fastpoly as fp
from .errors import InvariantViolation, UnsupportedInstanceError, UsageError
from .fields import (
    DEFAULT_ORDER_BUDGET_BITS,
    ExtensionField,
    element_by_index,
    get_extension_field,
    get_prime_field,
    is_prime,
    root_of_unity,
)
from .polys import Poly, inflate

DEFAULT_MAX_N = 10_000
DEFAULT_MAX_SPLITTING_DEGREE = 512


def multiplicative_order(q: int, d: int) -> int:
    """Least s >= 1 with q^s = 1 mod d; ord(1) is 1 by convention."""
    if d < 1:
        raise UsageError("modulus must be positive")
    if d == 1:
        return 1
    if math.gcd(q, d) != 1:
        raise UsageError(f"gcd({q}, {d}) != 1; order undefined")
    s, acc = 1, q % d
    while acc != 1:
        acc = (acc * q) % d
        s += 1
    return s


def euler_phi_prime_power(p: int, j: int) -> int:
    return p**j - p ** (j - 1) if j >= 1 else 1


@dataclass(frozen=True)
class ProblemInstance:
    """The triple (q, p, k) plus derived invariants for F_q[x]/(x^(p^k)-1)."""

    q: int
    p: int
    k: int
    n: int
    t: int  # ord_p q, defined as 1 when k == 0
    m: int  # largest integer with p^m | q^t - 1

    @property
    def effective_m(self) -> int:
        """m clamped to k: the root-of-unity order usable inside the ring."""
        return min(self.m, self.k)

    def describe(self) -> str:
        return f"q={self.q} p={self.p} k={self.k} n={self.n} t={self.t} m={self.m}"


def instance_parameters(
    q: int,
    p: int,
    k: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    power_budget_bits: int = DEFAULT_ORDER_BUDGET_BITS,
) -> ProblemInstance:
    """Validate (q, p, k) and compute t = ord_p q and m with p^m || q^t - 1."""
    if not is_prime(q):
        raise UsageError(f"q={q} is not prime")
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    if q == p:
        raise UsageError("q and p must be distinct primes")
    if k < 0:
        raise UsageError("k must be >= 0")
    n = p**k
    if n > max_n:
        raise UsageError(f"n = {p}^{k} = {n} exceeds the cap {max_n}")
    t = 1 if k == 0 else multiplicative_order(q, p)
    if t > 1 and (q**t - 1).bit_length() > power_budget_bits:
        raise UsageError(
            f"q^t - 1 needs {(q ** t - 1).bit_length()} bits; budget is {power_budget_bits}"
        )
    qt1 = q**t - 1
    m = 0
    while qt1 % p == 0:
        m += 1
        qt1 //= p
    return ProblemInstance(q=q, p=p, k=k, n=n, t=t, m=m)


@dataclass(frozen=True)
class Coset:
    rep: int
    elements: tuple[int, ...]
    divisor: int  # d = n / gcd(n, rep); the coset indexes a factor of Phi_d

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CosetPartition:
    n: int
    q: int
    cosets: tuple[Coset, ...]

    def census(self) -> dict[int, tuple[int, int]]:
        """Per divisor d: (number of cosets r_d, common coset size s_d)."""
        out: dict[int, tuple[int, int]] = {}
        for c in self.cosets:
            count, size = out.get(c.divisor, (0, c.size))
            if size != c.size:
                raise InvariantViolation("unequal coset sizes within one divisor")
            out[c.divisor] = (count + 1, c.size)
        return dict(sorted(out.items()))


@functools.lru_cache(maxsize=None)
def cyclotomic_cosets(q: int, n: int) -> CosetPartition:
    """Orbits of multiplication by q on Z_n, ordered by (divisor, min rep)."""
    if math.gcd(q, n) != 1:
        raise UsageError(f"gcd({q}, {n}) != 1")
    seen = bytearray(n)
    cosets = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        cur = start
        while not seen[cur]:
            seen[cur] = 1
            orbit.append(cur)
            cur = (cur * q) % n
        rep = min(orbit)
        divisor = n // math.gcd(n, rep)
        cosets.append(Coset(rep=rep, elements=tuple(sorted(orbit)), divisor=divisor))
    cosets.sort(key=lambda c: (c.divisor, c.rep))
    return CosetPartition(n=n, q=q, cosets=tuple(cosets))


def expected_idempotent_count(instance: ProblemInstance) -> int:
    """Number of primitive idempotents = number of q-cyclotomic cosets mod n,
    cross-checked against the closed count 1 + (p^m'-1)/t + (k-m')*phi(p^m')/t
    with m' = min(m, k)."""
    count = len(cyclotomic_cosets(instance.q, instance.n).cosets)
    m_eff, t, p, k = instance.effective_m, instance.t, instance.p, instance.k
    closed = 1 + (instance.p**m_eff - 1) // t
    if k > m_eff:
        closed += (k - m_eff) * euler_phi_prime_power(p, m_eff) // t
    if closed != count:
        raise InvariantViolation(
            f"closed-form count {closed} disagrees with coset count {count} on {instance.describe()}"
        )
    return count


def _nth_root_of_unity(field, n: int, p: int):
    """Deterministic primitive n-th root of unity in the splitting field:
    first enumerated element u with u^((q^D-1)/n) of exact order n = p^k."""
    if n == 1:
        return field.one()
    group = field.order - 1
    if group % n:
        raise InvariantViolation("splitting field does not contain the requested roots")
    exp = group // n
    one = field.one()
    for index in range(2, min(field.order, 1 << 20)):
        zeta = element_by_index(field, index) ** exp
        if zeta != one and zeta ** (n // p) != one:
            return zeta
    raise InvariantViolation("no primitive root of unity found")


def _splitting_field_with_root(q: int, p: int, k: int, t: int, m: int, max_deg: int):
    """The splitting field F_{q^D} of x^(p^k) - 1 (D = ord_{p^k} q) together
    with a primitive p^k-th root of unity in it.

    For k > m the modulus is built structurally: inflate the minimal
    polynomial over F_q of a primitive p^m-th root of unity (computed in
    F_{q^t}) by x^(p^(k-m)); the residue class of x is then itself a
    primitive p^k-th root.  Irreducibility is re-verified at construction.
    """
    n = p**k
    big_d = multiplicative_order(q, n)
    if big_d > max_deg:
        raise UnsupportedInstanceError(
            f"splitting field degree {big_d} exceeds the cap {max_deg} "
            f"(raise --max-splitting-degree to proceed)"
        )
    structural = (
        k > m
        and (p != 2 or q % 4 == 1)
        and (q**t - 1).bit_length() <= DEFAULT_ORDER_BUDGET_BITS
    )
    if structural:
        small = get_extension_field(q, t)
        conj = root_of_unity(small, p**m)
        min_poly = Poly.one(small)
        for _ in range(t):
            min_poly = min_poly * Poly(small, (-conj, small.one()))
            conj = conj**q
        try:
            ints = [c.as_int() for c in min_poly.coeffs]
        except UsageError as exc:
            raise InvariantViolation(f"minimal polynomial left the base field: {exc}") from exc
        base = get_prime_field(q)
        modulus = inflate(Poly.from_ints(base, ints), p ** (k - m))
        field = ExtensionField(base, modulus)
        zeta = field.gen()
    else:
        field = get_extension_field(q, big_d)
        zeta = _nth_root_of_unity(field, n, p)
    if field.degree != big_d:
        raise InvariantViolation("splitting field has the wrong degree")
    if zeta**n != field.one() or zeta ** (n // p) == field.one():
        raise InvariantViolation("splitting-field root has the wrong order")
    return field, zeta


@functools.lru_cache(maxsize=None)
def _factor_cached(q: int, p: int, k: int, max_splitting_degree: int):
    n = p**k
    field_q = get_prime_field(q)
    if n == 1:
        return ((1, Poly.from_ints(field_q, [-1, 1])),)
    partition = cyclotomic_cosets(q, n)
    t = 1 if k == 0 else multiplicative_order(q, p)
    qt1 = q**t - 1
    m = 0
    while qt1 % p == 0:
        m += 1
        qt1 //= p
    splitting, zeta = _splitting_field_with_root(q, p, k, t, m, max_splitting_degree)
    big_d = splitting.degree
    ring = splitting._ring
    powers = [ring.one()]
    zeta_vec = fp.as_vec(zeta.coeffs)
    for _ in range(n - 1):
        powers.append(ring.mul(powers[-1], zeta_vec))
    factors = []
    for coset in partition.cosets:
        neg_roots = [(-powers[i]) % q for i in coset.elements]
        rows = fp.product_of_linear_factors(ring, neg_roots)
        if rows.shape[0] != coset.size + 1:
            raise InvariantViolation("coset product has the wrong degree")
        if big_d > 1 and rows[:, 1:].any():
            raise InvariantViolation(
                f"coset product for rep {coset.rep} has a coefficient outside F_{q}"
            )
        ints = rows[:, 0].tolist()
        if ints[-1] != 1:
            raise InvariantViolation("coset product is not monic")
        factors.append((coset.divisor, Poly.from_ints(field_q, ints)))
    product = np.array([1], dtype=np.int64)
    for _, f in factors:
        product = fp.poly_mul(product, f._vec(), q)
    target = np.zeros(n + 1, dtype=np.int64)
    target[0], target[n] = q - 1, 1
    if not np.array_equal(product, target):
        raise InvariantViolation("factor product does not reconstruct x^n - 1")
    return tuple(factors)


def factor_xn_minus_1(
    instance: ProblemInstance,
    *,
    max_splitting_degree: int = DEFAULT_MAX_SPLITTING_DEGREE,
) -> tuple[tuple[int, Poly], ...]:
    """Irreducible factorization of x^n - 1 over F_q, one monic factor per
    q-cyclotomic coset (same order as `cyclotomic_cosets`), each computed as
    the product of (x - zeta^i) over the coset in the splitting field and
    mapped down after a base-subfield membership check."""
    return _factor_cached(instance.q, instance.p, instance.k, max_splitting_degree)
