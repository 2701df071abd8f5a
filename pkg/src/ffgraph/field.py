"""Exact arithmetic in finite fields F_q with a chosen primitive element.

Field elements are canonical integer indices in [0, q).  For a prime field the
index is the least nonnegative residue.  For an extension field F_(p^k) the
index encodes the coefficient vector (c_0, ..., c_(k-1)) of the residue class
modulo the modulus polynomial as sum(c_i * p^i); multiplicative structure runs
off exp/log tables built from the primitive element (supported for q <= 2^16).
"""

from math import gcd, isqrt

from .numth import factorize, is_prime

ZECH_TABLE_LIMIT = 1 << 16


class NotPrime(ValueError):
    """Raised when a prime (or prime-power) cardinality check fails."""


class ZeroHasNoLog(ValueError):
    """Raised when a discrete logarithm of 0 is requested."""


class ZeroInverse(ValueError):
    """Raised when 0 is raised to a negative power."""


class FieldContext:
    """Immutable description of F_q: cardinality, modulus polynomial, primitive element.

    All operations are pure functions of (context, inputs); instances are safe to
    share across workers.  Do not call the constructor directly: use
    make_prime_field or make_field.
    """

    __slots__ = ("q", "p", "k", "modulus", "alpha", "_exp", "_log", "_baby", "_baby_stride")

    def __init__(self, q, p, k, modulus, alpha, exp_table=None, log_table=None):
        self.q = q
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.alpha = alpha
        self._exp = exp_table
        self._log = log_table
        self._baby = None  # lazy baby-step table; idempotent to rebuild
        self._baby_stride = 0

    def __repr__(self):
        if self.k == 1:
            return f"FieldContext(q={self.q}, alpha={self.alpha})"
        return f"FieldContext(q={self.q}={self.p}^{self.k}, modulus={self.modulus}, alpha={self.alpha})"

    # -- element plumbing -------------------------------------------------

    def elements(self):
        """All field elements as canonical indices."""
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of an element over the prime subfield, length k."""
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        acc = 0
        for c in reversed(list(cs)):
            acc = acc * self.p + c % self.p
        return acc

    def from_int(self, c: int) -> int:
        """Image of an integer under the ring map Z -> F_q (lands in the prime subfield)."""
        return c % self.p

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_coeffs(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        return self.from_coeffs(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def pow(self, b: int, e: int) -> int:
        """b^e with the exponent reduced mod q-1 for nonzero b; 0^e = 0 for e > 0, 0^0 = 1."""
        if b == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise ZeroInverse("0 cannot be raised to a negative power")
        e %= self.q - 1
        if self.k == 1:
            return pow(b, e, self.p)
        return self._exp[self._log[b] * e % (self.q - 1)]

    # -- discrete logarithms ----------------------------------------------

    def dlog(self, b: int) -> int:
        """Discrete log base alpha, in [0, q-1)."""
        if b == 0:
            raise ZeroHasNoLog("0 is not in the multiplicative group")
        if self.k > 1:
            return self._log[b]
        q1 = self.q - 1
        if self.q < 1000:
            acc, i = 1, 0
            while acc != b:
                acc = acc * self.alpha % self.p
                i += 1
            return i
        # baby-step / giant-step with a hash table of ceil(sqrt(q-1)) entries
        if self._baby is None:
            stride = isqrt(q1 - 1) + 1
            baby = {}
            acc = 1
            for j in range(stride):
                baby.setdefault(acc, j)
                acc = acc * self.alpha % self.p
            self._baby_stride = stride
            self._baby = baby
        stride = self._baby_stride
        giant = pow(self.alpha, -stride % q1, self.p)
        y = b
        for i in range(stride + 1):
            j = self._baby.get(y)
            if j is not None:
                return (i * stride + j) % q1
            y = y * giant % self.p
        raise ArithmeticError(f"discrete log of {b} not found")  # unreachable for valid ctx

    def order(self, b: int) -> int:
        """Multiplicative order of a nonzero element."""
        return (self.q - 1) // gcd(self.q - 1, self.dlog(b))


# -- raw polynomial arithmetic over F_p (construction-time only) -----------


def _pmul(u, v, modulus, p):
    k = len(modulus) - 1
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(k):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    return out[:k] + [0] * (k - len(out))


def _ppow(base, e, modulus, p):
    k = len(modulus) - 1
    acc = [1] + [0] * (k - 1)
    cur = list(base) + [0] * (k - len(base))
    while e:
        if e & 1:
            acc = _pmul(acc, cur, modulus, p)
        cur = _pmul(cur, cur, modulus, p)
        e >>= 1
    return acc


def _poly_divmod(num, den, p):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(1, len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] * inv_lead % p
        if c:
            quot[i - dd] = c
            for j, b in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - c * b) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(modulus, p):
    """Trial division by all monic polynomials of degree <= k/2."""
    k = len(modulus) - 1
    if modulus[0] == 0:
        return k == 1
    for d in range(1, k // 2 + 1):
        for tail in range(p**d):
            den = []
            t = tail
            for _ in range(d):
                t, c = divmod(t, p)
                den.append(c)
            den.append(1)
            _, rem = _poly_divmod(modulus, den, p)
            if len(rem) == 1 and rem[0] == 0:
                return False
    return True


def _find_irreducible(p, k):
    for tail in range(p**k):
        cs = []
        t = tail
        for _ in range(k):
            t, c = divmod(t, p)
            cs.append(c)
        cand = cs + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


def _prime_power(q):
    """Split q = p^k with p prime, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise NotPrime(f"{q} is not a prime power")
    (p, k), = fac.items()
    return p, k


def _smallest_prime_generator(p):
    if p == 2:
        return 1
    group_primes = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in group_primes):
            return g
    raise ArithmeticError(f"no generator mod {p}")  # unreachable for prime p


def _order_mod_prime(g, p):
    if g == 0:
        return 0
    order = p - 1
    for r in factorize(p - 1) if p > 2 else ():
        while order % r == 0 and pow(g, order // r, p) == 1:
            order //= r
    return order


def make_prime_field(p: int, alpha: int | None = None) -> FieldContext:
    """F_p for prime p, with the smallest integer generator unless overridden."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if alpha is None:
        alpha = _smallest_prime_generator(p)
    else:
        alpha %= p
        if _order_mod_prime(alpha, p) != p - 1:
            raise ValueError(f"{alpha} does not generate F_{p}*")
    return FieldContext(p, p, 1, (0, 1), alpha)


def make_field(q: int, modulus=None, alpha: int | None = None) -> FieldContext:
    """F_q for a prime power q; searches a modulus polynomial when none is given."""
    p, k = _prime_power(q)
    if k == 1:
        return make_prime_field(p, alpha)
    if q > ZECH_TABLE_LIMIT:
        raise ValueError(f"extension fields supported up to q = {ZECH_TABLE_LIMIT}")
    if modulus is None:
        modulus = _find_irreducible(p, k)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if not _is_irreducible(list(modulus), p):
            raise ValueError("modulus polynomial is reducible")

    def idx(vec):
        acc = 0
        for c in reversed(vec):
            acc = acc * p + c
        return acc

    group_primes = list(factorize(q - 1))
    alpha_idx = None
    for cand in range(2, q):
        vec = []
        t = cand
        for _ in range(k):
            t, c = divmod(t, p)
            vec.append(c)
        ok = True
        for r in group_primes:
            powvec = _ppow(vec, (q - 1) // r, modulus, p)
            if idx(powvec) == 1:
                ok = False
                break
        if ok:
            alpha_idx = cand
            alpha_vec = vec
            break
    if alpha_idx is None:
        raise ArithmeticError(f"no generator found for F_{q}")  # unreachable

    if alpha is not None and alpha != alpha_idx:
        vec = []
        t = alpha
        for _ in range(k):
            t, c = divmod(t, p)
            vec.append(c)
        order = q - 1
        for r in group_primes:
            if idx(_ppow(vec, (q - 1) // r, modulus, p)) == 1:
                raise ValueError(f"{alpha} does not generate F_{q}*")
        alpha_idx, alpha_vec = alpha, vec

    exp_table = [0] * (q - 1)
    log_table = [-1] * q
    cur = [1] + [0] * (k - 1)
    for i in range(q - 1):
        e = idx(cur)
        exp_table[i] = e
        log_table[e] = i
        cur = _pmul(cur, alpha_vec, modulus, p)
    if idx(cur) != 1 or log_table.count(-1) != 1:
        raise ArithmeticError("primitive element table construction failed")  # unreachable
    return FieldContext(q, p, k, modulus, alpha_idx, exp_table, log_table)


def find_primitive_element(ctx: FieldContext) -> int:
    """Smallest canonical element generating the multiplicative group of ctx."""
    if ctx.q == 2:
        return 1
    for g in range(2, ctx.q):
        if ctx.order(g) == ctx.q - 1:
            return g
    raise ArithmeticError("no primitive element found")  # unreachable


def discrete_log(ctx: FieldContext, b: int) -> int:
    """Discrete logarithm of b base ctx.alpha, unique in [0, q-1)."""
    return ctx.dlog(b)
