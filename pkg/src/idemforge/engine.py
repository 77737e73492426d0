"""Constructors for the complete set of primitive idempotents of
F_q[x]/(x^(p^k) - 1).

Five routes produce the same set of ring elements:
  * euclid        — generic route through the irreducible factors of x^n - 1
                    (serves as the independent oracle),
  * fully-split   — q = 1 (mod n): DFT-style basis from a residing n-th root,
  * primitive-root— ord_{p^k} q = phi(p^k): differences of subgroup averages,
  * split-case    — t = ord_p q = 1: roots of unity live in F_q itself,
  * general-case  — t > 1: coefficients built in F_{q^t} and mapped down by
                    the trace, with orbit deduplication of the indices.

Records are returned in a canonical order: the unit-sum element first, then
second-type records by index, then third-type records by (level, index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvariantViolation, UnsupportedInstanceError, UsageError
from .fields import get_extension_field, get_prime_field, primitive_element
from .polys import CyclicRingElement, Poly, extended_gcd
from .structure import (
    DEFAULT_MAX_SPLITTING_DEGREE,
    ProblemInstance,
    cyclotomic_cosets,
    factor_xn_minus_1,
    multiplicative_order,
)

KIND_UNIT_SUM = "unit-sum"
KIND_SECOND = "second-type"
KIND_THIRD = "third-type"
KIND_GENERIC = "generic"

METHODS = ("auto", "euclid", "fully-split", "primitive-root", "split-case", "general-case")


@dataclass(frozen=True)
class IdempotentRecord:
    """A labeled primitive idempotent with its construction provenance."""

    value: CyclicRingElement
    label: str
    kind: str
    params: tuple[int, ...] | None
    method: str

    def key(self):
        return self.value.key()


def orbit_representatives(modulus: int, q: int, domain: str = "units") -> list[int]:
    """Minimal element of each multiplication-by-q orbit on the chosen
    residues mod `modulus`, ascending.  domain: "units" or "all-nonzero"."""
    if modulus < 1:
        raise UsageError("modulus must be positive")
    if domain == "units":
        members = [r for r in range(1, modulus) if math.gcd(r, modulus) == 1]
    elif domain == "all-nonzero":
        members = list(range(1, modulus))
    else:
        raise UsageError(f"unknown domain {domain!r}")
    pending = set(members)
    reps = []
    for r in members:
        if r not in pending:
            continue
        orbit = []
        cur = r
        while cur in pending:
            pending.discard(cur)
            orbit.append(cur)
            cur = (cur * q) % modulus
        reps.append(min(orbit))
    return sorted(reps)


def _record_from_ints(q: int, ints, label: str, kind: str, params, method: str) -> IdempotentRecord:
    value = CyclicRingElement.from_ints(get_prime_field(q), ints)
    if value.is_zero():
        raise InvariantViolation(f"constructed a zero idempotent for {label}")
    return IdempotentRecord(value=value, label=label, kind=kind, params=params, method=method)


def euclid_idempotent(
    f: Poly, n: int, q: int, *, label: str | None = None, params=None
) -> IdempotentRecord:
    """Idempotent attached to one monic irreducible factor f of x^n - 1:
    e = P*h with P = (x^n-1)/f and h the inverse of P modulo f, found by the
    extended Euclidean algorithm.  Then e = 1 mod f and e = 0 modulo every
    other irreducible factor."""
    field = get_prime_field(q)
    if f.field != field:
        raise UsageError("factor polynomial must live over F_q")
    if f.is_zero() or f.lead != field.one():
        raise UsageError("factor must be monic")
    xn1 = Poly.x_pow_minus_one(field, n)
    quotient, rem = xn1.divrem(f)
    if not rem.is_zero():
        raise UsageError(f"{f!r} does not divide x^{n} - 1")
    g, u, _ = extended_gcd(quotient % f, f)
    if g.degree != 0:
        raise InvariantViolation("cofactor and factor are not coprime")
    e = CyclicRingElement.from_poly(quotient * u, n)
    if e * e != e:
        raise InvariantViolation("Euclid construction produced a non-idempotent")
    if label is None:
        label = f"euclid:deg{f.degree}"
    return IdempotentRecord(value=e, label=label, kind=KIND_GENERIC, params=params, method="euclid")


def all_idempotents_euclid(
    instance: ProblemInstance,
    *,
    max_splitting_degree: int = DEFAULT_MAX_SPLITTING_DEGREE,
) -> tuple[IdempotentRecord, ...]:
    """One record per irreducible factor of x^n - 1: the oracle set."""
    factors = factor_xn_minus_1(instance, max_splitting_degree=max_splitting_degree)
    cosets = cyclotomic_cosets(instance.q, instance.n).cosets
    records = []
    for (d, f), coset in zip(factors, cosets):
        records.append(
            euclid_idempotent(
                f,
                instance.n,
                instance.q,
                label=f"e_{{d,r}}:{d},{coset.rep}",
            )
        )
    return tuple(records)


def _power_table(q: int, z: int, length: int) -> list[int]:
    out = [1 % q]
    for _ in range(length - 1):
        out.append((out[-1] * z) % q)
    return out


def _records_from_table(
    instance: ProblemInstance, pm: int, table: list[int], method: str
) -> tuple[IdempotentRecord, ...]:
    """Shared assembly for the split and general cases.

    table[i] holds the F_q value attached to the i-th power of the chosen
    root of unity (the power itself when it lives in F_q, its trace when it
    lives in the extension)."""
    q, p, k, n = instance.q, instance.p, instance.k, instance.n
    m_eff = instance.effective_m
    inv_n = pow(n % q, -1, q)
    records = [
        _record_from_ints(q, [inv_n] * n, "e_0", KIND_UNIT_SUM, None, method)
    ]
    for j in orbit_representatives(pm, q, "all-nonzero"):
        ints = [(inv_n * table[(-j * l) % pm]) % q for l in range(n)]
        records.append(_record_from_ints(q, ints, f"e_j:{j}", KIND_SECOND, (j,), method))
    for s in range(m_eff + 1, k + 1):
        inv_c = pow(pow(p, k + m_eff - s, q), -1, q)
        step = p ** (s - m_eff)
        count = p ** (k - s + m_eff)
        for l in orbit_representatives(pm, q, "units"):
            ints = [0] * n
            for j in range(count):
                ints[j * step] = (inv_c * table[(-l * j) % pm]) % q
            records.append(
                _record_from_ints(q, ints, f"e_{{s,l}}:{s},{l}", KIND_THIRD, (s, l), method)
            )
    return tuple(records)


def split_case_idempotents(
    instance: ProblemInstance, *, generator_skip: int = 0
) -> tuple[IdempotentRecord, ...]:
    """Closed form for t = 1 (p divides q - 1): a primitive p^min(m,k)-th
    root of unity lives in F_q, giving p^min(m,k) block idempotents plus,
    for each level s in (m, k], one record per unit index."""
    q, p, k = instance.q, instance.p, instance.k
    if instance.t != 1:
        raise UsageError("split case requires ord_p q = 1")
    if k == 0:
        return (_record_from_ints(q, [1], "e_0", KIND_UNIT_SUM, None, "split-case"),)
    if p == 2 and q % 4 == 3:
        raise UnsupportedInstanceError(
            "p = 2 with q = 3 (mod 4) is unsupported: the binomial factorization "
            "of x^(2^s) - zeta needs q = 1 (mod 4)"
        )
    pm = p**instance.effective_m
    g = primitive_element(get_prime_field(q), generator_skip)
    z = pow(g.coeffs[0], (q - 1) // pm, q)
    table = _power_table(q, z, pm)
    return _records_from_table(instance, pm, table, "split-case")


def _sigma_table(instance: ProblemInstance, pm: int, modulus_skip: int, generator_skip: int) -> list[int]:
    """table[i] = trace of zeta^i from F_{q^t} down to F_q, for a primitive
    pm-th root of unity zeta chosen deterministically."""
    q, t = instance.q, instance.t
    field = get_extension_field(q, t, modulus_skip)
    g = primitive_element(field, generator_skip)
    zeta = g ** ((field.order - 1) // pm)
    powers = [field.one()]
    for _ in range(pm - 1):
        powers.append(powers[-1] * zeta)
    q_pows = [pow(q, u, pm) for u in range(t)]
    table = []
    for i in range(pm):
        acc = field.zero()
        for qp in q_pows:
            acc = acc + powers[(i * qp) % pm]
        if any(acc.coeffs[1:]):
            raise InvariantViolation("trace value left the base field")
        table.append(acc.coeffs[0])
    return table


def general_case_idempotents(
    instance: ProblemInstance, *, modulus_skip: int = 0, generator_skip: int = 0
) -> tuple[IdempotentRecord, ...]:
    """Closed form for t = ord_p q > 1: coefficients are traces of root-of-
    unity powers computed in F_{q^t}; indices are deduplicated by their
    multiplication-by-q orbits mod p^min(m,k)."""
    q, p, k = instance.q, instance.p, instance.k
    if instance.t <= 1:
        raise UsageError("general case requires ord_p q > 1")
    if p == 2:
        raise UsageError("p = 2 never reaches the general case (t is always 1)")
    if k == 0:
        return (_record_from_ints(q, [1], "e_0", KIND_UNIT_SUM, None, "general-case"),)
    pm = p**instance.effective_m
    table = _sigma_table(instance, pm, modulus_skip, generator_skip)
    return _records_from_table(instance, pm, table, "general-case")


def second_type_idempotent(
    instance: ProblemInstance, j: int, *, modulus_skip: int = 0, generator_skip: int = 0
) -> IdempotentRecord:
    """Second-type record for an explicit index j (no orbit deduplication);
    useful to confirm that orbit-equivalent indices give the same element."""
    q, n = instance.q, instance.n
    pm = instance.p**instance.effective_m
    if not 0 < j < pm:
        raise UsageError(f"index must lie in (0, {pm})")
    if instance.t == 1:
        g = primitive_element(get_prime_field(q), generator_skip)
        table = _power_table(q, pow(g.coeffs[0], (q - 1) // pm, q), pm)
        method = "split-case"
    else:
        table = _sigma_table(instance, pm, modulus_skip, generator_skip)
        method = "general-case"
    inv_n = pow(n % q, -1, q)
    ints = [(inv_n * table[(-j * l) % pm]) % q for l in range(n)]
    return _record_from_ints(q, ints, f"e_j:{j}", KIND_SECOND, (j,), method)


def fully_split_idempotents(q: int, n: int) -> tuple[IdempotentRecord, ...]:
    """Closed form when q = 1 (mod n): x^n - 1 splits into linear factors,
    and the idempotents are the DFT characters e_j = (1/n) sum zeta^(-jl) x^l."""
    if n < 1:
        raise UsageError("n must be >= 1")
    if (q - 1) % n:
        raise UsageError(f"requires q = 1 (mod n); got q={q}, n={n}")
    field = get_prime_field(q)
    if n == 1:
        return (_record_from_ints(q, [1], "e_0", KIND_UNIT_SUM, None, "fully-split"),)
    g = primitive_element(field)
    z = pow(g.coeffs[0], (q - 1) // n, q)
    table = _power_table(q, z, n)
    inv_n = pow(n % q, -1, q)
    records = []
    for j in range(n):
        ints = [(inv_n * table[(-j * l) % n]) % q for l in range(n)]
        kind = KIND_UNIT_SUM if j == 0 else KIND_SECOND
        label = "e_0" if j == 0 else f"e_j:{j}"
        records.append(
            _record_from_ints(q, ints, label, kind, None if j == 0 else (j,), "fully-split")
        )
    return tuple(records)


def primitive_root_idempotents(q: int, p: int, k: int) -> tuple[IdempotentRecord, ...]:
    """Closed form when q generates the units mod p^k (every cyclotomic level
    is irreducible): k+1 records, each the difference of two successive
    subgroup-averaging idempotents u_i = (1/p^(k-i)) sum_l x^(p^i l)."""
    n = p**k
    phi = 1 if k == 0 else (p - 1) * p ** (k - 1)
    if multiplicative_order(q, n) != phi:
        raise UsageError(f"requires ord_{{{n}}} {q} = phi({n}) = {phi}")

    def avg(i: int) -> list[int]:
        c = pow(pow(p, k - i, q), -1, q)
        out = [0] * n
        for l in range(p ** (k - i)):
            out[l * p**i] = c
        return out

    records = [_record_from_ints(q, avg(0), "e_0", KIND_UNIT_SUM, None, "primitive-root")]
    for j in range(1, k + 1):
        upper, lower = avg(j), avg(j - 1)
        ints = [(a - b) % q for a, b in zip(upper, lower)]
        kind = KIND_SECOND if j == 1 else KIND_THIRD
        params = (j,) if j == 1 else (j, 1)
        records.append(_record_from_ints(q, ints, f"e_j:{j}", kind, params, "primitive-root"))
    return tuple(records)


def dispatch(
    instance: ProblemInstance,
    method: str = "auto",
    *,
    modulus_skip: int = 0,
    generator_skip: int = 0,
    max_splitting_degree: int = DEFAULT_MAX_SPLITTING_DEGREE,
) -> tuple[IdempotentRecord, ...]:
    """Pick the applicable closed form (t = 1 -> split case, t > 1 -> general
    case) or force a specific route.  Forcing `euclid` works even where the
    closed forms are unsupported (p = 2 with q = 3 mod 4)."""
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}; choose from {METHODS}")
    q, p, k, n = instance.q, instance.p, instance.k, instance.n
    if method == "euclid":
        return all_idempotents_euclid(instance, max_splitting_degree=max_splitting_degree)
    if method == "fully-split":
        return fully_split_idempotents(q, n)
    if method == "primitive-root":
        return primitive_root_idempotents(q, p, k)
    if method == "split-case" or (method == "auto" and instance.t == 1):
        return split_case_idempotents(instance, generator_skip=generator_skip)
    return general_case_idempotents(
        instance, modulus_skip=modulus_skip, generator_skip=generator_skip
    )


def third_type_census(records) -> dict[int, int]:
    """Count of third-type records per level s."""
    out: dict[int, int] = {}
    for r in records:
        if r.kind == KIND_THIRD and r.params is not None:
            s = r.params[0]
            out[s] = out.get(s, 0) + 1
    return dict(sorted(out.items()))
