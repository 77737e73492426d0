"""Exact arithmetic in the prime field F_q and one extension F_{q^t}.

Elements carry their coefficient sequence over the prime field (length =
extension degree, every entry reduced mod q) plus a handle to their parent
field.  All values are immutable; every operation is a pure function, so
elements are safe to share across threads.

Determinism: `find_irreducible` scans monic candidates in ascending order of
the integer value sum(c_i * q^i) of their non-leading coefficients, and
`primitive_element` walks field elements in the same integer order
(constants first, then polynomials), so every derived object is reproducible
byte for byte.
"""

from __future__ import annotations

import functools

from . import _fastpoly as fp
from .errors import BudgetExceededError, InvariantViolation, UsageError
from .polys import Poly

#: Default bit-size guard on q^t - 1 for operations that must factor it.
DEFAULT_ORDER_BUDGET_BITS = 96

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101)


def is_prime(n: int) -> bool:
    """Miller-Rabin, deterministic for n < 3.3e24 (extra witnesses beyond)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = _MR_WITNESSES if n < 3_317_044_064_679_887_385_961_981 else _MR_WITNESSES + _MR_EXTRA
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_integer(n: int) -> dict[int, int]:
    """Prime factorization by trial division, with a Miller-Rabin certificate
    to stop early once the cofactor is prime."""
    if n < 1:
        raise UsageError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while n > 1 and not is_prime(n):
        while n % d and n % (d + 2):
            d += 6
            if d > 10_000_000:
                raise BudgetExceededError(
                    "trial-division budget exceeded while factoring", required=n
                )
        p = d if n % d == 0 else d + 2
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FieldElement:
    """An element of F_q or F_{q^t} as a tuple of residues in [0, q)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_int(self) -> int:
        """The value as a base-field integer; requires a constant element."""
        if any(self.coeffs[1:]):
            raise UsageError("element does not lie in the base field")
        return self.coeffs[0]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(f"field mismatch: {self.field} vs {other.field}")
            return other
        raise UsageError(f"cannot operate on {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        q = self.field.q
        return FieldElement(self.field, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        q = self.field.q
        return FieldElement(self.field, tuple((a - b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        q = self.field.q
        return FieldElement(self.field, tuple((-a) % q for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(self.field, self.field._inv(self.coeffs))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field._pow(self.coeffs, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            try:
                other = self.field.element(other)
            except UsageError:
                return NotImplemented
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if len(self.coeffs) == 1:
            return str(self.coeffs[0])
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                ys = "y" if e == 1 else f"y^{e}"
                terms.append(ys if c == 1 else f"{c}*{ys}")
        return " + ".join(terms) if terms else "0"


class PrimeField:
    """The prime field F_q."""

    __slots__ = ("q",)

    def __init__(self, q: int):
        if not isinstance(q, int) or not is_prime(q):
            raise UsageError(f"{q} is not a prime modulus")
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeField is immutable")

    @property
    def degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.q

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise UsageError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.q,))
        seq = tuple(value)
        if len(seq) != 1:
            raise UsageError("prime-field elements have a single coefficient")
        return FieldElement(self, (seq[0] % self.q,))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,))

    def one(self) -> FieldElement:
        return FieldElement(self, (1 % self.q,))

    def _mul(self, a, b):
        return ((a[0] * b[0]) % self.q,)

    def _inv(self, a):
        return (pow(a[0], -1, self.q),)

    def _pow(self, a, e):
        return (pow(a[0], e, self.q),)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("PrimeField", self.q))

    def __repr__(self):
        return f"F_{self.q}"


class ExtensionField:
    """F_{q^t} presented as F_q[y] modulo a monic irreducible of degree t.

    The modulus is re-verified irreducible at construction.
    """

    __slots__ = ("base", "t", "modulus", "_mod_ints", "_ring")

    def __init__(self, base: PrimeField, modulus: Poly):
        if modulus.field != base:
            raise UsageError("modulus must be a polynomial over the base field")
        t = modulus.degree
        if not isinstance(t, int) or t < 1:
            raise UsageError("modulus must have degree >= 1")
        mod_ints = modulus.int_coeffs()
        if mod_ints[-1] != 1:
            raise UsageError("modulus must be monic")
        if not fp.is_irreducible(base.q, mod_ints):
            raise UsageError(f"modulus {modulus!r} is reducible over {base!r}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_mod_ints", mod_ints)
        object.__setattr__(self, "_ring", fp.ReducedRing(base.q, mod_ints))

    def __setattr__(self, name, value):
        raise AttributeError("ExtensionField is immutable")

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def degree(self) -> int:
        return self.t

    @property
    def order(self) -> int:
        return self.q**self.t

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if value.field == self.base:
                return self.embed(value)
            raise UsageError("element belongs to a different field")
        if isinstance(value, int):
            return self.embed(value)
        seq = [c % self.q for c in value]
        if len(seq) > self.t:
            raise UsageError(f"coefficient sequence longer than degree {self.t}")
        seq.extend([0] * (self.t - len(seq)))
        return FieldElement(self, tuple(seq))

    def embed(self, value) -> FieldElement:
        """Embed a base-field value as a constant."""
        c = value.coeffs[0] if isinstance(value, FieldElement) else value % self.q
        return FieldElement(self, (c,) + (0,) * (self.t - 1))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.t)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.t - 1))

    def gen(self) -> FieldElement:
        """The residue class of y."""
        return FieldElement(self, tuple(int(v) for v in self._ring.x()))

    def _mul(self, a, b):
        if self.t == 1:
            return ((a[0] * b[0]) % self.q,)
        return tuple(int(v) for v in self._ring.mul(fp.as_vec(a), fp.as_vec(b)))

    def _inv(self, a):
        g, u, _ = fp.ints_xgcd(list(a), list(self._mod_ints), self.q)
        if len(g) != 1:
            raise InvariantViolation("modulus shares a factor with a nonzero element")
        scaled = fp.ints_mul(u, [pow(g[0], -1, self.q)], self.q)
        scaled.extend([0] * (self.t - len(scaled)))
        return tuple(scaled)

    def _pow(self, a, e):
        if self.t == 1:
            return (pow(a[0], e, self.q),)
        return tuple(int(v) for v in self._ring.pow(fp.as_vec(a), e))

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.q == self.q
            and other._mod_ints == self._mod_ints
        )

    def __hash__(self):
        return hash(("ExtensionField", self.q, self._mod_ints))

    def __repr__(self):
        return f"F_{{{self.q}^{self.t}}}"


@functools.lru_cache(maxsize=None)
def get_prime_field(q: int) -> PrimeField:
    return PrimeField(q)


@functools.lru_cache(maxsize=None)
def find_irreducible(q: int, t: int, skip: int = 0) -> Poly:
    """The (skip+1)-th smallest monic irreducible of degree t over F_q,
    candidates ordered by integer value of the coefficient sequence read
    from the constant term up.  Deterministic across runs."""
    if t < 1:
        raise UsageError("extension degree must be >= 1")
    field = get_prime_field(q)
    return Poly.from_ints(field, fp.lex_irreducible(q, t, skip))


@functools.lru_cache(maxsize=None)
def get_extension_field(q: int, t: int, skip: int = 0) -> ExtensionField:
    return ExtensionField(get_prime_field(q), find_irreducible(q, t, skip))


def element_by_index(field, index: int) -> FieldElement:
    """The index-th field element in the canonical enumeration: digits of
    index base q, constant term first."""
    q = field.q
    digits = []
    for _ in range(field.degree):
        digits.append(index % q)
        index //= q
    if index:
        raise UsageError("element index out of range")
    if field.degree == 1:
        return field.element(digits[0])
    return field.element(digits)


def primitive_element(
    field, skip: int = 0, *, order_budget_bits: int = DEFAULT_ORDER_BUDGET_BITS
) -> FieldElement:
    """First element (in canonical enumeration order) of multiplicative
    order q^t - 1; `skip` asks for a later one.  Requires factoring
    q^t - 1, guarded by the order budget."""
    n = field.order - 1
    if n.bit_length() > order_budget_bits:
        raise BudgetExceededError(
            f"group order needs {n.bit_length()} bits; budget is {order_budget_bits}",
            required=n.bit_length(),
        )
    prime_divisors = list(factor_integer(n)) if n > 1 else []
    one = field.one()
    remaining = skip
    for index in range(1, field.order):
        g = element_by_index(field, index)
        if all(g ** (n // r) != one for r in prime_divisors):
            if remaining == 0:
                return g
            remaining -= 1
    raise UsageError("no primitive element found for requested skip")


def root_of_unity(field, order: int) -> FieldElement:
    """zeta = g^((q^t-1)/order) for the canonical generator g; verified to
    have exact multiplicative order `order`."""
    n = field.order - 1
    if order < 1:
        raise UsageError("root order must be positive")
    if order == 1:
        return field.one()
    if n % order:
        raise UsageError(f"{order} does not divide the group order {n}")
    zeta = primitive_element(field) ** (n // order)
    if zeta**order != field.one():
        raise InvariantViolation("root of unity failed its order check")
    smallest = min(factor_integer(order))
    if zeta ** (order // smallest) == field.one():
        raise InvariantViolation("root of unity is not primitive")
    return zeta


def frobenius(a: FieldElement) -> FieldElement:
    """a -> a^q; applying it `degree` times is the identity."""
    return a**a.field.q


def trace_sigma1(a: FieldElement) -> FieldElement:
    """Sum of all Galois conjugates a + a^q + ... + a^(q^(t-1)), returned
    as an element of the prime field."""
    field = a.field
    t = field.degree
    acc = a
    cur = a
    for _ in range(t - 1):
        cur = frobenius(cur)
        acc = acc + cur
    if any(acc.coeffs[1:]):
        raise InvariantViolation("trace left the base field")
    base = field.base if isinstance(field, ExtensionField) else field
    return base.element(acc.coeffs[0])
