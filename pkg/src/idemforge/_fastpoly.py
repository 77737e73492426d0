"""Dense polynomial kernels over Z/q (q prime), numpy-backed.

Coefficient vectors are int64 numpy arrays, ascending exponents, values
reduced into [0, q).  The zero polynomial is the empty array.  These
routines back the hot paths (splitting-field arithmetic, irreducibility
scans, coset products); the classes in `fields` and `polys` wrap them.

Exactness constraints: q must stay below MAX_KERNEL_MODULUS so that
int64 convolutions (len * q^2 < 2^63) and float64 BLAS reductions
(len * q^2 < 2^53) never round.
"""

from __future__ import annotations

import numpy as np

from .errors import InvariantViolation, UsageError

MAX_KERNEL_MODULUS = 1 << 20
MAX_KERNEL_DEGREE = 1 << 12


def as_vec(coeffs) -> np.ndarray:
    return np.array(coeffs, dtype=np.int64)


def trim(vec: np.ndarray) -> np.ndarray:
    nz = np.nonzero(vec)[0]
    if nz.size == 0:
        return vec[:0]
    return vec[: nz[-1] + 1]


def poly_mul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return a[:0]
    return np.convolve(a, b) % q


def poly_divmod(a: np.ndarray, b: np.ndarray, q: int):
    """Return (quotient, remainder) with deg(remainder) < deg(b)."""
    b = trim(b % q)
    if b.size == 0:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a % q)
    db = b.size - 1
    if a.size - 1 < db:
        return a[:0], a.copy()
    inv_lead = pow(int(b[-1]), -1, q)
    rem = a.copy()
    quot = np.zeros(a.size - db, dtype=np.int64)
    for i in range(a.size - 1, db - 1, -1):
        c = int(rem[i])
        if c:
            f = (c * inv_lead) % q
            quot[i - db] = f
            rem[i - db : i + 1] = (rem[i - db : i + 1] - f * b) % q
    return trim(quot), trim(rem[:db])


def poly_gcd(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Monic gcd; empty input pairs are rejected by callers."""
    a, b = trim(a % q), trim(b % q)
    while b.size:
        _, r = poly_divmod(a, b, q)
        a, b = b, r
    if a.size == 0:
        raise UsageError("gcd of two zero polynomials")
    lead = int(a[-1])
    if lead != 1:
        a = (a * pow(lead, -1, q)) % q
    return a


class ReducedRing:
    """Arithmetic in F_q[x] modulo a fixed monic polynomial of degree >= 1.

    Precomputes the reduction table rows x^(deg+i) mod M (i < deg-1) kept
    in float64 so reductions run as exact BLAS matmuls.
    """

    __slots__ = ("q", "deg", "mod", "_xd", "_tbl_f")

    def __init__(self, q: int, mod_vec) -> None:
        mod = trim(as_vec(mod_vec)) % q
        deg = mod.size - 1
        if deg < 1 or int(mod[-1]) != 1:
            raise UsageError("modulus must be monic of degree >= 1")
        if q > MAX_KERNEL_MODULUS or deg > MAX_KERNEL_DEGREE:
            raise UsageError("modulus size outside kernel limits")
        if deg * (q - 1) ** 2 >= (1 << 52):
            raise UsageError("q too large for exact float64 reduction")
        self.q = q
        self.deg = deg
        self.mod = mod
        self._xd = (-mod[:deg]) % q  # x^deg mod M
        rows = np.zeros((max(deg - 1, 0), deg), dtype=np.int64)
        cur = self._xd
        for i in range(deg - 1):
            rows[i] = cur
            shifted = np.concatenate(([0], cur[:-1]))
            c = int(cur[-1])
            if c:
                shifted = (shifted + c * self._xd) % q
            cur = shifted
        self._tbl_f = rows.astype(np.float64)

    def one(self) -> np.ndarray:
        v = np.zeros(self.deg, dtype=np.int64)
        v[0] = 1
        return v

    def x(self) -> np.ndarray:
        v = np.zeros(self.deg, dtype=np.int64)
        if self.deg > 1:
            v[1] = 1
        else:
            v[0] = int(self._xd[0])  # x reduces to a constant
        return v

    def reduce(self, c: np.ndarray) -> np.ndarray:
        c = c % self.q
        if c.size <= self.deg:
            if c.size < self.deg:
                c = np.concatenate((c, np.zeros(self.deg - c.size, dtype=np.int64)))
            return c
        lo, hi = c[: self.deg], c[self.deg :]
        folded = np.rint(hi.astype(np.float64) @ self._tbl_f[: hi.size]).astype(np.int64)
        return (lo + folded) % self.q

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.convolve(a, b))

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e < 0:
            raise UsageError("negative exponent in ring power")
        result = self.one()
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def _small_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _frobenius_rows(ring: ReducedRing, q: int) -> np.ndarray:
    """Rows F[i] = x^(i*q) mod M, as float64 (entries < q); needs deg >= 2."""
    t = ring.deg
    xq = ring.pow(ring.x(), q)
    rows = np.zeros((t, t), dtype=np.int64)
    rows[0, 0] = 1
    cur = rows[0]
    for i in range(1, t):
        if i * q < t:
            cur = np.zeros(t, dtype=np.int64)
            cur[i * q] = 1
        else:
            cur = ring.mul(cur, xq)
        rows[i] = cur
    return rows.astype(np.float64)


def is_irreducible(q: int, vec, ring: ReducedRing | None = None) -> bool:
    """Exact irreducibility test for a monic polynomial over F_q.

    Criterion: x^(q^t) = x mod M and gcd(x^(q^(t/r)) - x, M) = 1 for
    every prime r dividing t.
    """
    vec = trim(as_vec(vec)) % q
    t = vec.size - 1
    if t < 1:
        return False
    if int(vec[-1]) != 1:
        raise UsageError("irreducibility test expects a monic polynomial")
    if t == 1:
        return True
    if int(vec[0]) == 0:
        return False
    if ring is None:
        ring = ReducedRing(q, vec)
    frob = _frobenius_rows(ring, q)
    x_vec = np.zeros(t, dtype=np.int64)
    x_vec[1] = 1
    checkpoints = {t // r for r in _small_prime_factors(t)}
    tau = np.rint(x_vec.astype(np.float64) @ frob).astype(np.int64) % q  # x^q
    for i in range(1, t + 1):
        if i > 1:
            tau = np.rint(tau.astype(np.float64) @ frob).astype(np.int64) % q
        if i in checkpoints:
            diff = trim((tau - x_vec) % q)
            if diff.size == 0:
                return False
            if poly_gcd(diff, vec, q).size != 1:
                return False
        if i == t:
            return bool(np.array_equal(tau, x_vec))
    raise InvariantViolation("unreachable")  # pragma: no cover


def _passes_small_factor_filter(ring: ReducedRing, vec: np.ndarray, q: int, bound: int) -> bool:
    """False when M provably has an irreducible factor of degree <= bound."""
    t = ring.deg
    x_vec = np.zeros(t, dtype=np.int64)
    x_vec[1] = 1
    tau = x_vec
    acc = ring.one()
    for i in range(1, bound + 1):
        tau = ring.pow(tau, q)
        diff = (tau - x_vec) % q
        if not diff.any():
            return False  # all factor degrees divide i < t
        acc = ring.mul(acc, diff)
        if not acc.any():
            return False  # shares a factor with M
    return poly_gcd(trim(acc), vec, q).size == 1


def lex_irreducible(q: int, t: int, skip: int = 0) -> tuple[int, ...]:
    """Coefficients (ascending, monic) of the (skip+1)-th smallest monic
    irreducible polynomial of degree t over F_q, ordering candidates by the
    integer value sum(c_i * q^i) of their non-leading coefficients."""
    if t < 1:
        raise UsageError("degree must be >= 1")
    if t == 1:
        if skip >= q:
            raise UsageError(f"fewer than {skip + 1} monic irreducibles of degree 1 over F_{q}")
        return (skip, 1)
    digits = [0] * t
    points = np.arange(1, q, dtype=np.int64) if q <= 4096 else None
    prefilter_bound = 8 if t > 17 else 0
    remaining = skip
    while True:
        if digits[0] != 0:
            vec = as_vec(digits + [1])
            ok = True
            if points is not None:
                acc = np.full(points.size, 1, dtype=np.int64)  # leading coeff
                for i in range(t - 1, -1, -1):
                    acc = (acc * points + digits[i]) % q
                ok = not bool((acc == 0).any())
            ring = None
            if ok and prefilter_bound:
                ring = ReducedRing(q, vec)
                ok = _passes_small_factor_filter(ring, vec, q, prefilter_bound)
            if ok and is_irreducible(q, vec, ring=ring):
                if remaining == 0:
                    return tuple(digits + [1])
                remaining -= 1
        pos = 0
        while pos < t:
            digits[pos] += 1
            if digits[pos] < q:
                break
            digits[pos] = 0
            pos += 1
        else:
            if skip > 0:
                raise UsageError(
                    f"fewer than {skip + 1} monic irreducibles of degree {t} over F_{q}"
                )
            raise InvariantViolation("exhausted candidates without finding an irreducible")


def residue_matrix(mod_vec, n: int, q: int) -> np.ndarray:
    """Rows x^i mod M for i < n, so reducing a length-n coefficient vector v
    modulo M is the single product v @ matrix (entries < q keep the int64
    accumulation exact for n * q^2 < 2^63)."""
    ring = ReducedRing(q, mod_vec)
    df = ring.deg
    rows = np.zeros((n, df), dtype=np.int64)
    cur = ring.one()
    for i in range(n):
        rows[i] = cur
        lead = int(cur[-1])
        shifted = np.concatenate(([0], cur[:-1]))
        if lead:
            shifted = (shifted + lead * ring._xd) % q
        cur = shifted
    return rows


# --- pure-int helpers (ascending coefficient lists) -------------------------


def ints_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def ints_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % q
    return ints_trim(out)


def ints_sub(a: list[int], b: list[int], q: int) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        out[i] = ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q
    return ints_trim(out)


def ints_divmod(a: list[int], b: list[int], q: int):
    b = ints_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = ints_trim([c % q for c in a])
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv_lead = pow(b[-1], -1, q)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            f = (c * inv_lead) % q
            quot[i - db] = f
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - f * b[j]) % q
    return ints_trim(quot), ints_trim(rem[:db])


def ints_xgcd(a: list[int], b: list[int], q: int):
    """Extended Euclid over F_q[x]: returns (g, u, v), g monic, u*a + v*b = g."""
    r0, r1 = ints_trim([c % q for c in a]), ints_trim([c % q for c in b])
    if not r0 and not r1:
        raise UsageError("extended gcd of two zero polynomials")
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        quot, r2 = ints_divmod(r0, r1, q)
        r0, r1 = r1, r2
        u0, u1 = u1, ints_sub(u0, ints_mul(quot, u1, q), q)
        v0, v1 = v1, ints_sub(v0, ints_mul(quot, v1, q), q)
    scale = pow(r0[-1], -1, q)
    if scale != 1:
        r0 = [(c * scale) % q for c in r0]
        u0 = [(c * scale) % q for c in u0]
        v0 = [(c * scale) % q for c in v0]
    return r0, u0, v0


# --- 2-D kernels for coset products over an extension field -----------------


def conv2d_mod(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """Full 2-D convolution of nonnegative int arrays reduced mod q.

    Uses a real FFT when the exact-rounding bound allows it, otherwise an
    exact row-by-row fallback.
    """
    ra, ca = A.shape
    rb, cb = B.shape
    rows, cols = ra + rb - 1, ca + cb - 1
    bound = min(ra, rb) * min(ca, cb) * (q - 1) ** 2
    sr = 1 << (rows - 1).bit_length()
    sc = 1 << (cols - 1).bit_length()
    if bound * sr * sc < (1 << 50):  # rounding error provably < 0.25
        fa = np.fft.rfft2(A, s=(sr, sc))
        fb = np.fft.rfft2(B, s=(sr, sc))
        full = np.fft.irfft2(fa * fb, s=(sr, sc))[:rows, :cols]
        return np.rint(full).astype(np.int64) % q
    out = np.zeros((rows, cols), dtype=np.int64)
    for i in range(ra):
        row = A[i]
        if not row.any():
            continue
        for j in range(rb):
            out[i + j] = (out[i + j] + np.convolve(row, B[j])) % q
    return out


def _reduce_rows(ring: ReducedRing, C: np.ndarray) -> np.ndarray:
    """Reduce every row of C (a y-polynomial per row) modulo the ring modulus."""
    D = ring.deg
    if C.shape[1] <= D:
        if C.shape[1] < D:
            pad = np.zeros((C.shape[0], D - C.shape[1]), dtype=np.int64)
            C = np.hstack((C, pad))
        return C
    lo, hi = C[:, :D], C[:, D:]
    folded = np.rint(hi.astype(np.float64) @ ring._tbl_f[: hi.shape[1]]).astype(np.int64)
    return (lo + folded) % ring.q


def product_of_linear_factors(ring: ReducedRing, neg_roots: list[np.ndarray]) -> np.ndarray:
    """Product over (x - root) with extension-field coefficients.

    Each entry of neg_roots is the coefficient vector of -root (width = ring
    degree).  Returns a (s+1, deg) array: row i is the coefficient of x^i.
    Computed as a balanced product tree so intermediate widths stay reduced.
    """
    D = ring.deg
    nodes = []
    for nr in neg_roots:
        leaf = np.zeros((2, D), dtype=np.int64)
        leaf[0] = nr
        leaf[1, 0] = 1
        nodes.append(leaf)
    if not nodes:
        one = np.zeros((1, D), dtype=np.int64)
        one[0, 0] = 1
        return one
    while len(nodes) > 1:
        merged = []
        for i in range(0, len(nodes) - 1, 2):
            C = conv2d_mod(nodes[i], nodes[i + 1], ring.q)
            merged.append(_reduce_rows(ring, C))
        if len(nodes) % 2:
            merged.append(nodes[-1])
        nodes = merged
    return nodes[0]
