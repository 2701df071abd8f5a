"""Companion-map dynamics on the m-th roots of unity and closed-form graph predictions.

The map psi(x) = x^n * h(x)^((q-1)/m) sends mu_m into mu_m union {0} and
commutes with f through the ((q-1)/m)-power map.  When psi is injective off
the set it kills (the map is then called m-nice), the whole functional graph
of f follows from the orbit structure of psi on the m points of mu_m: the
component of 0 from the depth profile of the tail into 0, and everything else
from a divisibility count over each psi-cycle, inverted with the Mobius
function to isolate exact cycle lengths.
"""

from dataclasses import dataclass
from math import gcd

from .field import FieldContext
from .numth import divisors, iterated_gcd, mobius, mult_order
from .poly import (
    IndexedForm,
    Polynomial,
    evaluate,
    index_decompose,
    psi_value,
)
from .trees import Component, GraphSummary, RootedTree, _level_trees, elementary_tree

R_CONVENTIONS = ("first_hit", "cumulative")


class NotNice(ValueError):
    """The companion map is not injective off its zero set; no prediction applies."""

    def __init__(self, witnesses):
        self.witnesses = tuple(sorted(witnesses))
        super().__init__(f"companion map not injective; colliding elements: {self.witnesses}")


class NonIntegerCount(ArithmeticError):
    """A cycle count failed to divide evenly; signals an interpretation bug."""


@dataclass(frozen=True)
class PsiCycle:
    """One cycle of the companion map: its elements in orbit order, starting at the least."""

    elements: tuple[int, ...]

    @property
    def length(self):
        return len(self.elements)

    @property
    def rep(self):
        return self.elements[0]


@dataclass(frozen=True)
class MuMDynamics:
    """Full orbit data of the companion map on mu_m.

    tail_depth maps each element that eventually reaches 0 to the first hitting
    time.  r_first_hit[i] counts elements with hitting time exactly i and
    r_cumulative[i] counts elements with hitting time <= i, both for
    i = 1, ..., m+1 (index 0 unused).  Elements off the tail split into cycles.
    """

    m: int
    mu: tuple[int, ...]
    images: dict
    tail_depth: dict
    r_first_hit: tuple[int, ...]
    r_cumulative: tuple[int, ...]
    cycles: tuple[PsiCycle, ...]
    nice: bool
    witnesses: tuple[int, ...]

    def r(self, i: int, convention: str = "first_hit") -> int:
        if convention not in R_CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        series = self.r_first_hit if convention == "first_hit" else self.r_cumulative
        if i < 1:
            raise ValueError("depth index starts at 1")
        if i < len(series):
            return series[i]
        return series[-1] if convention == "cumulative" else 0


def psi_map(ctx: FieldContext, form: IndexedForm) -> MuMDynamics:
    """Compute the companion-map orbit structure on the m-th roots of unity."""
    q1 = ctx.q - 1
    m = form.m
    s = q1 // m
    mu = tuple(sorted(ctx.pow(ctx.alpha, s * t) for t in range(m)))
    images = {xi: psi_value(ctx, form, xi) for xi in mu}
    for xi, y in images.items():
        if y != 0 and ctx.pow(y, m) != 1:
            raise AssertionError(f"psi({xi}) = {y} left mu_{m}")  # unreachable

    preim = {y: [] for y in (*mu, 0)}
    for xi, y in images.items():
        preim[y].append(xi)

    tail_depth = {}
    frontier = [xi for xi in preim[0] if xi != 0]
    depth = 1
    while frontier:
        for xi in frontier:
            tail_depth[xi] = depth
        frontier = [u for xi in frontier for u in preim.get(xi, ())]
        depth += 1

    r_first = [0] * (m + 2)
    for d in tail_depth.values():
        r_first[d] += 1
    r_cum = [0] * (m + 2)
    for i in range(1, m + 2):
        r_cum[i] = r_cum[i - 1] + r_first[i]

    remaining = [xi for xi in mu if xi not in tail_depth]
    on_cycle = set()
    for xi in remaining:
        seen = {}
        x = xi
        while x not in seen and x not in on_cycle:
            seen[x] = len(seen)
            x = images[x]
        if x in seen:
            orbit = sorted(seen, key=seen.get)[seen[x]:]
            on_cycle.update(orbit)
    cycles = []
    done = set()
    for start in sorted(on_cycle):
        if start in done:
            continue
        orbit = [start]
        x = images[start]
        while x != start:
            orbit.append(x)
            x = images[x]
        done.update(orbit)
        cycles.append(PsiCycle(tuple(orbit)))

    domain = [xi for xi in mu if images[xi] != 0]
    collisions = {}
    for xi in domain:
        collisions.setdefault(images[xi], []).append(xi)
    witnesses = sorted(xi for group in collisions.values() if len(group) > 1 for xi in group)
    nice = not witnesses

    if nice and set(on_cycle) != set(remaining):
        raise AssertionError("injective companion map must permute the non-tail part")  # unreachable

    return MuMDynamics(
        m=m,
        mu=mu,
        images=images,
        tail_depth=tail_depth,
        r_first_hit=tuple(r_first),
        r_cumulative=tuple(r_cum),
        cycles=tuple(cycles),
        nice=nice,
        witnesses=tuple(witnesses),
    )


def is_m_nice(dyn: MuMDynamics) -> bool:
    """Injectivity of the companion map away from the elements it sends to 0."""
    return dyn.nice


@dataclass(frozen=True)
class CycleRepData:
    """Per-cycle representative data: for cycle i with representative xi_i,
    alpha^ell = product of h along the orbit weighted by powers of n, and
    xi_i = alpha^((q-1)/m * rep_exp)."""

    ells: tuple[int, ...]
    rep_exps: tuple[int, ...]
    reps: tuple[int, ...]


def cycle_rep_data(ctx: FieldContext, form: IndexedForm, dyn: MuMDynamics, choices=None) -> CycleRepData:
    """Compute (ell_i, rep_exp_i) for each companion cycle.

    choices optionally overrides the representative of each cycle (by index);
    predictions must not depend on the choice.
    """
    q1 = ctx.q - 1
    s = q1 // form.m
    ells, rep_exps, reps = [], [], []
    for idx, cyc in enumerate(dyn.cycles):
        xi = cyc.rep if choices is None or choices[idx] is None else choices[idx]
        if xi not in cyc.elements:
            raise ValueError(f"{xi} is not on cycle {idx}")
        k = cyc.length
        prod = 1
        x = xi
        for j in range(k):
            hv = evaluate(ctx, form.h, x)
            prod = ctx.mul(prod, ctx.pow(hv, pow(form.n, k - j - 1, q1)))
            x = dyn.images[x]
        ell = ctx.dlog(prod)
        t = ctx.dlog(xi)
        if t % s:
            raise AssertionError(f"{xi} is not an s-th power")  # unreachable
        ells.append(ell)
        rep_exps.append(t // s)
        reps.append(xi)
    return CycleRepData(tuple(ells), tuple(rep_exps), tuple(reps))


def predict_zero_component(
    ctx: FieldContext, form: IndexedForm, dyn: MuMDynamics, convention: str = "first_hit"
) -> Component:
    """The component of 0: a fixed point whose tree is stitched from elementary levels.

    The depth-i level multiplicity is (q-1)/m * (r_(i+1)/d_i - r_(i+2)/d_(i+1))
    with d_j = gcd(nu, n^j); the r series is taken under the requested counting
    convention for the tail into 0.
    """
    if not dyn.nice:
        raise NotNice(dyn.witnesses)
    q1 = ctx.q - 1
    s = q1 // form.m
    V = iterated_gcd(form.n, form.nu)
    levels = _level_trees(V, max(form.m - 1, 0))

    def d(j):
        acc = 1
        for i in range(1, j + 1):
            acc *= V[min(i, len(V)) - 1]
        return acc

    children = []
    for i in range(form.m):
        hi = s * dyn.r(i + 1, convention)
        lo = s * dyn.r(i + 2, convention)
        if hi % d(i) or lo % d(i + 1):
            raise NonIntegerCount(
                f"level {i} population not divisible by its regular tree width "
                f"(convention {convention!r})"
            )
        mult = hi // d(i) - lo // d(i + 1)
        if mult < 0:
            raise NonIntegerCount(f"negative multiplicity at level {i} (convention {convention!r})")
        children.extend([levels[i]] * mult)
    return Component(1, (RootedTree(children),))


def _tau(ctx: FieldContext, form: IndexedForm, k: int, ell: int, rep_exp: int, d: int) -> int:
    """Number of elements over one companion cycle whose d-fold return condition holds."""
    q1 = ctx.q - 1
    s = q1 // form.m
    n = form.n
    Nd = n ** (d * k)
    geom = d if n == 1 else (Nd - 1) // (n**k - 1)
    modulus = gcd(q1, (Nd - 1) * form.m)
    if (ell * geom + rep_exp * (Nd - 1)) % modulus == 0:
        return gcd(s, Nd - 1)
    return 0


def predict_nonzero_components(
    ctx: FieldContext, form: IndexedForm, dyn: MuMDynamics, reps: CycleRepData | None = None
) -> GraphSummary:
    """All components away from 0: for each companion cycle of length k_i, Mobius
    inversion of the return counts tau_i(d) yields the number of cycles of each
    exact length k_i * u, every cycle vertex carrying the elementary tree."""
    if not dyn.nice:
        raise NotNice(dyn.witnesses)
    if reps is None:
        reps = cycle_rep_data(ctx, form, dyn)
    q1 = ctx.q - 1
    n = form.n
    tree = elementary_tree(iterated_gcd(n, form.nu))
    comps = []
    for idx, cyc in enumerate(dyn.cycles):
        k = cyc.length
        ell, rep_exp = reps.ells[idx], reps.rep_exps[idx]
        if n == 1:
            u_bound = q1 // gcd(q1, ell)
        else:
            N = n**k
            M = form.omega_prime * (N - 1)
            if gcd(N, M) != 1:
                raise AssertionError("n^k must be a unit modulo omega' * (n^k - 1)")  # unreachable
            u_bound = mult_order(N % M, M) if M > 1 else 1
        tau_cache = {}
        for d in divisors(u_bound):
            tau_cache[d] = _tau(ctx, form, k, ell, rep_exp, d)
        for u in divisors(u_bound):
            count = sum(mobius(u // d) * tau_cache[d] for d in divisors(u))
            if count == 0:
                continue
            if count < 0 or count % u:
                raise NonIntegerCount(f"cycle count {count} for length {k * u} not divisible by {u}")
            comps.extend([Component(k * u, (tree,) * (k * u))] * (count // u))
    return GraphSummary(comps)


def predict_full(ctx: FieldContext, f: Polynomial, convention: str = "first_hit") -> GraphSummary:
    """Index-decompose f and assemble the predicted graph of the whole field."""
    form = index_decompose(ctx, f)
    dyn = psi_map(ctx, form)
    if not dyn.nice:
        raise NotNice(dyn.witnesses)
    zero = predict_zero_component(ctx, form, dyn, convention)
    rest = predict_nonzero_components(ctx, form, dyn)
    return GraphSummary((zero, *rest.components))


def monomial_graph(ctx: FieldContext, a: int, n: int) -> GraphSummary:
    """Predicted graph of x -> a * x^n for nonzero a (always index 1, always applicable)."""
    if a == 0:
        raise ValueError("monomial coefficient must be nonzero")
    if n < 1:
        raise ValueError("exponent must be positive")
    n_eff = 1 + (n - 1) % (ctx.q - 1) if ctx.q > 2 else 1
    coeffs = [0] * n_eff + [a % ctx.q]
    return predict_full(ctx, Polynomial(coeffs))
