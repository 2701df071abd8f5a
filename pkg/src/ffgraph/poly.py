"""Dense polynomials over F_q, index decomposition, and map iteration.

A polynomial with zero constant term factors uniquely as x^n * h(x^((q-1)/m))
with h(0) != 0 and m minimal (the index).  The decomposition drives both the
closed-form iteration formula and the structural graph predictions.
"""

from dataclasses import dataclass
from math import gcd

from .field import FieldContext
from .numth import coprime_split


class InvalidInput(ValueError):
    """Raised for polynomials outside an operation's domain."""


class Polynomial:
    """Coefficient sequence, index = exponent, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


ZERO_POLY = Polynomial()


def poly_from_terms(ctx: FieldContext, terms) -> Polynomial:
    """Build a polynomial from (coefficient, exponent) pairs; integer coefficients map via Z -> F_q."""
    coeffs = {}
    for c, e in terms:
        if e < 0:
            raise InvalidInput("negative exponent")
        coeffs[e] = ctx.add(coeffs.get(e, 0), ctx.from_int(c))
    size = max(coeffs, default=-1) + 1
    out = [0] * size
    for e, c in coeffs.items():
        out[e] = c
    return Polynomial(out)


def evaluate(ctx: FieldContext, f: Polynomial, x: int) -> int:
    """Horner evaluation of f at x."""
    acc = 0
    for c in reversed(f.coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def poly_add(ctx, f, g):
    n = max(len(f.coeffs), len(g.coeffs))
    fc = list(f.coeffs) + [0] * (n - len(f.coeffs))
    gc = list(g.coeffs) + [0] * (n - len(g.coeffs))
    return Polynomial([ctx.add(a, b) for a, b in zip(fc, gc)])


def poly_neg(ctx, f):
    return Polynomial([ctx.neg(c) for c in f.coeffs])


def poly_mul(ctx, f, g):
    if f.is_zero() or g.is_zero():
        return ZERO_POLY
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return Polynomial(out)


def reduce_function(ctx: FieldContext, f: Polynomial) -> Polynomial:
    """Reduce mod x^q - x, preserving the induced map on F_q (exponent e >= 1 folds to 1 + (e-1) mod (q-1))."""
    q = ctx.q
    if f.degree < q:
        return f
    out = [0] * q
    for e, c in enumerate(f.coeffs):
        if c:
            folded = e if e < q else 1 + (e - 1) % (q - 1)
            out[folded] = ctx.add(out[folded], c)
    return Polynomial(out)


@dataclass(frozen=True)
class IndexedForm:
    """The decomposition f = x^n * h(x^((q-1)/m)) plus the coprime splittings.

    nu * omega = (q-1)/m with omega the greatest factor coprime to n;
    omega_prime is the greatest divisor of q-1 coprime to n.
    """

    n: int
    h: Polynomial
    m: int
    nu: int
    omega: int
    omega_prime: int


def index_decompose(ctx: FieldContext, f: Polynomial) -> IndexedForm:
    """Minimal-index decomposition of a polynomial vanishing at 0.

    The input is reduced mod x^q - x first, so the index describes the induced
    map rather than the formal expression.
    """
    f = reduce_function(ctx, f)
    if f.is_zero():
        raise InvalidInput("the zero polynomial has no index decomposition")
    if f.coeffs[0] != 0:
        raise InvalidInput("index decomposition requires f(0) = 0")
    n = next(e for e, c in enumerate(f.coeffs) if c)
    g = f.coeffs[n:]
    d = ctx.q - 1
    for e in range(1, len(g)):
        if g[e]:
            d = gcd(d, e)
    m = (ctx.q - 1) // d
    h = Polynomial([g[e] for e in range(0, len(g), d)])
    omega, nu = coprime_split(d, n)
    omega_prime, _ = coprime_split(ctx.q - 1, n)
    return IndexedForm(n=n, h=h, m=m, nu=nu, omega=omega, omega_prime=omega_prime)


def reassemble(ctx: FieldContext, form: IndexedForm) -> Polynomial:
    """Expand x^n * h(x^((q-1)/m)) back into a dense polynomial, reduced mod x^q - x."""
    d = (ctx.q - 1) // form.m
    out = [0] * (form.n + d * max(form.h.degree, 0) + 1)
    for j, c in enumerate(form.h.coeffs):
        if c:
            out[form.n + d * j] = c
    return reduce_function(ctx, Polynomial(out))


def indexed_evaluate(ctx: FieldContext, form: IndexedForm, a: int) -> int:
    """f(a) computed straight from the decomposition: a^n * h(a^((q-1)/m))."""
    if a == 0:
        return 0
    s = (ctx.q - 1) // form.m
    return ctx.mul(ctx.pow(a, form.n), evaluate(ctx, form.h, ctx.pow(a, s)))


def psi_value(ctx: FieldContext, form: IndexedForm, xi: int) -> int:
    """The companion map xi -> xi^n * h(xi)^((q-1)/m), with 0 absorbing."""
    if xi == 0:
        return 0
    hv = evaluate(ctx, form.h, xi)
    if hv == 0:
        return 0
    s = (ctx.q - 1) // form.m
    return ctx.mul(ctx.pow(xi, form.n), ctx.pow(hv, s))


def iterate_map(ctx: FieldContext, f: Polynomial, a: int, k: int) -> int:
    """f applied k times to a by repeated evaluation."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    for _ in range(k):
        a = evaluate(ctx, f, a)
    return a


def closed_form_iterate(ctx: FieldContext, form: IndexedForm, a: int, k: int) -> int:
    """k-th iterate via the closed form a^(n^k) * prod over the companion orbit.

    Exponents of nonzero bases are reduced mod q-1; a zero factor short-circuits
    to 0 (the orbit has fallen into the absorbing component of 0).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 or a == 0:
        return a
    q1 = ctx.q - 1
    s = q1 // form.m
    xi = ctx.pow(a, s)
    prod = 1
    for i in range(k):
        hv = evaluate(ctx, form.h, xi)
        if hv == 0:
            return 0
        prod = ctx.mul(prod, ctx.pow(hv, pow(form.n, k - i - 1, q1)))
        xi = ctx.mul(ctx.pow(xi, form.n), ctx.pow(hv, s))
    return ctx.mul(ctx.pow(a, pow(form.n, k, q1)), prod)
