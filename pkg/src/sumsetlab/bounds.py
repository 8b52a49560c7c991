"""Closed-form cardinality bounds, pseudo-cardinality, and certified verdicts.

Every bound evaluated here compares an observed integer cardinality against a
formula in m = |A|, alpha = |A+B|/m, alpha_1 = D_1(G_+(A,B)), |hB| and the
pseudo-cardinality beta defined by C(beta+h-1, h) = |hB| (generalized
binomial in product form).  Verdicts must never be float artifacts, so two
techniques are used:

* exact arithmetic: a bound that is rational in its inputs is compared as a
  Fraction; a bound of the form x <= y^(1/h) is cross-powered to integers;
  and any comparison against beta is translated through the equivalence

      beta <= r  <=>  C(r+h-1, h) >= |hB|      (r rational, r > 0)

  which needs no root-finding at all;
* outward rounding: genuinely irrational bounds (those mixing e and
  fractional powers) are evaluated in interval arithmetic and rounded up to
  the nearest binary-64 value before comparison, so a reported violation is
  a real violation.

Asymptotic statements carry main-term values only and are reported with a
verdict of None, never asserted: at fixed m an o(1) term has no value.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .errors import GuardError, InputError
from .graphs import (
    LayeredGraph,
    build_addition_graph,
    build_restricted_graph,
    image,
)
from .groups import GSet, fold_sumset, sumset
from .magnification import Ratio, _vertex_image_masks, magnification_flow
from .partition import PartitionResult, partition_graph

__all__ = [
    "PseudoCardinality",
    "BoundValue",
    "BoundReport",
    "CertifiedMinSum",
    "LinearMajorant",
    "GrowthBound",
    "GrowthGeneralReport",
    "LargeSubsetResult",
    "NapReport",
    "RestrictedSumsetReport",
    "RestrictedGrowthReport",
    "rising_binomial",
    "pseudo_cardinality",
    "bound_report",
    "certified_min_sum",
    "linear_majorant",
    "majorant_from_root",
    "check_majorant_pointwise",
    "growth_commutative_bound",
    "growth_general_bound",
    "large_subset_search",
    "nap_check",
    "restricted_sumset_check",
    "restricted_growth_check",
    "float_up",
    "csv_header",
    "csv_row",
    "bound_report_to_json",
]

SUBSET_GUARD = 22

# Private interval context so the global mpmath state is never touched.
_IV = type(mpmath.iv)()
_IV.prec = 80


def _ival(x):
    """Exact interval enclosure of an int, Fraction, or float."""
    if isinstance(x, Fraction):
        return _IV.mpf(x.numerator) / _IV.mpf(x.denominator)
    return _IV.mpf(x)


def _frac_interval(lo: Fraction, hi: Fraction):
    return _IV.mpf([_ival(lo).a, _ival(hi).b])


def float_up(x) -> float:
    """Smallest binary-64 value >= the upper endpoint of interval x."""
    hi = x.b
    f = float(hi)
    while mpmath.mpf(f) < hi:
        f = math.nextafter(f, math.inf)
    return f


def rising_binomial(x: Fraction | int, h: int) -> Fraction:
    """Generalized binomial C(x+h-1, h) = prod_{i=0}^{h-1} (x+i) / h!."""
    if not isinstance(h, int) or h < 0:
        raise InputError(f"binomial order must be a non-negative integer, got {h!r}")
    prod = Fraction(1)
    x = Fraction(x)
    for i in range(h):
        prod *= x + i
    return prod / math.factorial(h)


# -- pseudo-cardinality --------------------------------------------------------


@dataclass(frozen=True)
class PseudoCardinality:
    """The positive real beta with C(beta+h-1, h) = n, bracketed certifiably.

    lo and hi are rationals with C(lo+h-1, h) <= n <= C(hi+h-1, h); when n is
    a binomial value at an integer the bracket collapses and exact is True.
    beta is the float midpoint, for display only; every decision should go
    through leq / lt, which are exact.
    """

    n: int
    h: int
    beta: float
    lo: Fraction
    hi: Fraction
    exact: bool

    def leq(self, r: Fraction | int) -> bool:
        """Exact test beta <= r."""
        r = Fraction(r)
        if r <= 0:
            return False
        return rising_binomial(r, self.h) >= self.n

    def lt(self, r: Fraction | int) -> bool:
        """Exact test beta < r."""
        r = Fraction(r)
        if r <= 0:
            return False
        return rising_binomial(r, self.h) > self.n

    def interval(self):
        return _frac_interval(self.lo, self.hi)


def pseudo_cardinality(
    n: int, h: int, rel_tol: Fraction = Fraction(1, 10**12)
) -> PseudoCardinality:
    """Solve C(beta+h-1, h) = n for beta >= 1.

    Integer solutions are detected exactly; otherwise beta is bisected to a
    bracket of width <= rel_tol * max(1, beta) with rational endpoints, each
    certified by evaluating the binomial exactly.
    """
    if not isinstance(n, int) or n < 1:
        raise InputError(f"pseudo-cardinality needs a positive integer count, got {n!r}")
    if not isinstance(h, int) or h < 1:
        raise InputError(f"pseudo-cardinality needs a positive integer h, got {h!r}")
    hi_int = 1
    while rising_binomial(hi_int, h) < n:
        hi_int *= 2
    lo_int, cand = 1, hi_int
    while lo_int < cand:
        mid = (lo_int + cand) // 2
        if rising_binomial(mid, h) >= n:
            cand = mid
        else:
            lo_int = mid + 1
    exact_val = rising_binomial(cand, h)
    if exact_val == n:
        r = Fraction(cand)
        return PseudoCardinality(n, h, float(cand), r, r, True)
    lo, hi = Fraction(cand - 1), Fraction(cand)
    while hi - lo > rel_tol * max(Fraction(1), lo):
        mid = (lo + hi) / 2
        if rising_binomial(mid, h) >= n:
            hi = mid
        else:
            lo = mid
    return PseudoCardinality(n, h, float((lo + hi) / 2), lo, hi, False)


# -- bound report --------------------------------------------------------------


@dataclass(frozen=True)
class BoundValue:
    """One named bound: rounded-up value, what it was compared against, verdict.

    ok is None when the bound is reported but not asserted (asymptotic main
    terms) or not applicable to the instance; exact records whether the
    verdict was decided in exact arithmetic.
    """

    name: str
    value: float | None
    observed: int | None
    ok: bool | None
    exact: bool
    note: str = ""


BOUND_NAMES = (
    "plunnecke_hA",
    "ruzsa_binomial_hA",
    "ruzsa_universal",
    "ruzsa_small_alpha",
    "thm_main_universal",
    "thm_main_small_alpha",
    "corollary_hb",
    "prop_restricted_first",
    "prop_restricted_second",
    "certified_min_sum",
    "growth_commutative",
    "per_vertex_binomial",
)


@dataclass(frozen=True)
class BoundReport:
    h: int
    m: int
    ab: int
    hb: int
    observed: int
    alpha: Ratio
    alpha_1: Ratio
    beta: PseudoCardinality
    s_value: float
    t_value: float | None
    ratios: tuple[Ratio, ...]
    block_sizes: tuple[int, ...]
    bounds: tuple[BoundValue, ...]

    def bound(self, name: str) -> BoundValue:
        for bv in self.bounds:
            if bv.name == name:
                return bv
        raise InputError(f"no bound named {name!r} in report")

    @property
    def all_ok(self) -> bool:
        return all(bv.ok is not False for bv in self.bounds)


@dataclass(frozen=True)
class CertifiedMinSum:
    """Sum over partition blocks of min(alpha_i^h, s alpha_i) |Z_i|.

    The branch of each min and the final comparison are decided exactly
    through the beta bracket; value is the rounded-up float of
    slow_part + s * fast_weight.
    """

    value: float
    ok: bool
    slow_part: Fraction
    fast_weight: Fraction
    s_value: float


def certified_min_sum(
    partition: PartitionResult, pseudo: PseudoCardinality, observed: int
) -> CertifiedMinSum:
    h = partition.graph.height
    if h != pseudo.h:
        raise InputError(
            f"partition height {h} and pseudo-cardinality h {pseudo.h} disagree"
        )
    n = pseudo.n
    slow = Fraction(0)
    fast = Fraction(0)
    for block in partition.blocks:
        if block.degenerate:
            continue
        a = block.ratio
        size = len(block.vertices)
        # alpha^h <= s alpha  <=>  alpha^(h-1) <= n/beta  <=>  beta <= n/alpha^(h-1)
        if pseudo.leq(Fraction(n) / a ** (h - 1)):
            slow += a**h * size
        else:
            fast += a * size
    if observed <= slow:
        ok = True
    elif fast == 0:
        ok = False
    else:
        ok = pseudo.leq(Fraction(n) * fast / (observed - slow))
    s_iv = _ival(n) / pseudo.interval()
    value = float_up(_ival(slow) + s_iv * _ival(fast))
    return CertifiedMinSum(value, ok, slow, fast, float_up(s_iv))


def _per_vertex_binomial(graph: LayeredGraph) -> tuple[bool, int, int]:
    """Check |im^(h)(a)| <= C(|im(a)|+h-1, h) for every bottom vertex.

    Returns (all ok, worst observed, its bound), worst meaning the smallest
    slack; ties broken by vertex id for determinism.
    """
    h = graph.height
    ok = True
    worst: tuple[int, int] | None = None
    for a in graph.layers[0]:
        deg = len(graph.out_neighbors(a))
        im_h = len(image(graph, {a}, h))
        cap = math.comb(deg + h - 1, h)
        if im_h > cap:
            ok = False
        if worst is None or cap - im_h < worst[1] - worst[0]:
            worst = (im_h, cap)
    if worst is None:
        return True, 0, 0
    return ok, worst[0], worst[1]


def bound_report(
    a: GSet, b: GSet, h: int, max_size: int | None = None
) -> BoundReport:
    """Evaluate every applicable named bound for the instance (A, B, h).

    Bounds stated only for A = B are suppressed otherwise; the asymptotic
    main terms are always reported with ok=None.  All other verdicts are
    outward-safe: pass/fail can be trusted bit-for-bit.
    """
    if not isinstance(h, int) or h < 1:
        raise InputError(f"bound report needs an integer h >= 1, got {h!r}")
    if a.space != b.space:
        raise InputError("A and B must share a space")
    if a.is_empty or b.is_empty:
        raise InputError("bound report needs non-empty A and B")
    graph = build_addition_graph(a, b, h, max_size)
    sizes = graph.layer_sizes()
    m, ab, observed = sizes[0], sizes[1], sizes[-1]
    hb = len(fold_sumset(b, h, max_size))
    alpha = Fraction(ab, m)
    alpha_1 = magnification_flow(graph, 1).value
    beta = pseudo_cardinality(hb, h)
    part = partition_graph(graph)
    live = [blk for blk in part.blocks if not blk.degenerate]
    ratios = tuple(blk.ratio for blk in live)
    block_sizes = tuple(len(blk.vertices) for blk in live)
    certified = certified_min_sum(part, beta, observed)

    beta_iv = beta.interval()
    s_iv = _ival(hb) / beta_iv
    e_iv = _IV.exp(_IV.mpf(1))
    m_pow = _ival(m) ** _ival(Fraction(2 * h - 1, h))
    same_sets = a.elements == b.elements

    bounds: list[BoundValue] = []

    if same_sets:
        # Both classical A = B bounds cap |hA| itself, which equals hb here,
        # not the top layer |A + hA|.
        frac = alpha**h * m
        bounds.append(
            BoundValue(
                "plunnecke_hA",
                float_up(_ival(frac)),
                hb,
                hb <= frac,
                True,
            )
        )
        frac = alpha**2 * rising_binomial(alpha**4, h - 1) * m
        bounds.append(
            BoundValue(
                "ruzsa_binomial_hA",
                float_up(_ival(frac)),
                hb,
                hb <= frac,
                True,
            )
        )
    else:
        note = "stated for A = B only"
        bounds.append(BoundValue("plunnecke_hA", None, None, None, False, note))
        bounds.append(BoundValue("ruzsa_binomial_hA", None, None, None, False, note))

    # observed <= alpha^h m^(2-1/h)  <=>  observed^h <= alpha^(h^2) m^(2h-1)
    ru_ok = Fraction(observed) ** h <= alpha ** (h * h) * Fraction(m) ** (2 * h - 1)
    bounds.append(
        BoundValue(
            "ruzsa_universal",
            float_up(_ival(alpha) ** h * m_pow),
            observed,
            ru_ok,
            True,
        )
    )

    if alpha <= 2:
        acc = _ival(alpha) * _ival(m)
        tail = _IV.mpf(0)
        for j in range(2, h + 1):
            tail += (
                _ival(Fraction(j + 1, j))
                * _ival(alpha) ** (j - 1)
                * _ival(m) ** (-_ival(Fraction(1, j)))
            )
        acc += _ival(alpha - 1) * _ival(m) ** 2 * tail
        val = float_up(acc)
        bounds.append(
            BoundValue("ruzsa_small_alpha", val, observed, observed <= val, False)
        )
    else:
        bounds.append(
            BoundValue(
                "ruzsa_small_alpha", None, None, None, False, "needs alpha <= 2"
            )
        )

    note = "asymptotic main term, not asserted"
    val = float_up(e_iv / _ival(2 * h * h) * _ival(alpha) ** h * m_pow)
    bounds.append(BoundValue("thm_main_universal", val, observed, None, False, note))
    val = float_up(
        _ival(m)
        + e_iv / _ival(h) * _ival(alpha - 1) * _ival(alpha) ** (h - 1) * m_pow
    )
    bounds.append(BoundValue("thm_main_small_alpha", val, observed, None, False, note))

    frac = alpha_1**h * m
    bounds.append(
        BoundValue("corollary_hb", float_up(_ival(frac)), hb, hb <= frac, True)
    )

    first_ok = observed == 0 or beta.leq(Fraction(ab * hb, observed))
    bounds.append(
        BoundValue(
            "prop_restricted_first",
            float_up(_ival(ab) * _ival(hb) / beta_iv),
            observed,
            first_ok,
            True,
        )
    )
    second = (
        (1 + _ival(h) / beta_iv)
        * e_iv
        * _ival(ab)
        * _ival(hb) ** _ival(Fraction(h - 1, h))
        / _ival(h)
    )
    second_val = float_up(second)
    bounds.append(
        BoundValue(
            "prop_restricted_second", second_val, observed, observed <= second_val, False
        )
    )

    bounds.append(
        BoundValue(
            "certified_min_sum", certified.value, observed, certified.ok, True
        )
    )

    growth = growth_commutative_bound(graph)
    bounds.append(
        BoundValue(
            "growth_commutative", growth.value, growth.observed, growth.ok, True
        )
    )

    pv_ok, pv_obs, pv_cap = _per_vertex_binomial(graph)
    bounds.append(
        BoundValue(
            "per_vertex_binomial",
            float(pv_cap),
            pv_obs,
            pv_ok,
            True,
            "worst vertex shown; verdict covers all",
        )
    )

    t_value: float | None = None
    if h >= 2 and beta.lt(Fraction(hb) / alpha_1 ** (h - 1)):
        # alpha_1 < s^(1/(h-1)) guaranteed; intervals cannot hit the pole.
        root = s_iv ** _ival(Fraction(1, h - 1))
        t_iv = (s_iv ** _ival(Fraction(h, h - 1)) - _ival(alpha_1) ** h) / (
            root - _ival(alpha_1)
        )
        t_value = float_up(t_iv)

    return BoundReport(
        h,
        m,
        ab,
        hb,
        observed,
        alpha,
        alpha_1,
        beta,
        float_up(s_iv),
        t_value,
        ratios,
        block_sizes,
        tuple(bounds),
    )


# -- linear majorant -----------------------------------------------------------


@dataclass(frozen=True)
class LinearMajorant:
    alpha_1: Fraction
    s: Fraction
    h: int
    t: float
    t_exact: Fraction | None
    samples_checked: int
    samples_ok: bool


def majorant_from_root(alpha_1: Fraction | int, sigma: Fraction | int, h: int):
    """Exact (s, t) from the root sigma = s^(1/(h-1)).

    t = (sigma^h - alpha_1^h) / (sigma - alpha_1) telescopes to the rational
    sum of sigma^i alpha_1^(h-1-i), so a rational sigma gives exact values.
    """
    if not isinstance(h, int) or h < 2:
        raise InputError(f"linear majorant needs h >= 2, got {h!r}")
    alpha_1 = Fraction(alpha_1)
    sigma = Fraction(sigma)
    if not 0 < alpha_1 < sigma:
        raise InputError(
            "linear majorant domain: need 0 < alpha_1 < s^(1/(h-1))"
        )
    s = sigma ** (h - 1)
    t = sum(sigma**i * alpha_1 ** (h - 1 - i) for i in range(h))
    return s, t


def check_majorant_pointwise(
    alpha_1: Fraction, s: Fraction, t: Fraction, h: int, alphas: Iterable[Fraction]
) -> bool:
    """Exact check of min(a^h, s a) <= alpha_1^h + t (a - alpha_1) on samples."""
    anchor = Fraction(alpha_1) ** h
    ok = True
    for a in alphas:
        a = Fraction(a)
        lhs = min(a**h, Fraction(s) * a)
        if lhs > anchor + Fraction(t) * (a - alpha_1):
            ok = False
    return ok


def linear_majorant(
    alpha_1, s, h: int, samples: int = 33
) -> LinearMajorant:
    """Slope t of the line through (alpha_1, alpha_1^h) majorizing min(a^h, s a).

    Inputs are taken exactly (floats are exact binary rationals).  Requires
    alpha_1^(h-1) < s strictly; otherwise the slope denominator is not
    positive and the construction is undefined.  The returned t is rounded
    up, which preserves domination for a >= alpha_1.  The sampled pointwise
    check never reports a violation caused by rounding.
    """
    if not isinstance(h, int) or h < 2:
        raise InputError(f"linear majorant needs h >= 2, got {h!r}")
    a1 = Fraction(alpha_1)
    s_f = Fraction(s)
    if a1 <= 0:
        raise InputError("linear majorant domain: alpha_1 must be positive")
    if a1 ** (h - 1) >= s_f:
        raise InputError(
            "linear majorant domain: alpha_1^(h-1) must be strictly below s"
        )
    t_exact: Fraction | None = None
    if h == 2:
        t_exact = s_f + a1
        t_val = float_up(_ival(t_exact))
        t_iv = _ival(t_exact)
    else:
        s_iv = _ival(s_f)
        root = s_iv ** _ival(Fraction(1, h - 1))
        t_iv = (s_iv ** _ival(Fraction(h, h - 1)) - _ival(a1) ** h) / (
            root - _ival(a1)
        )
        t_val = float_up(t_iv)
    hi = a1 + 2 * (s_f + 1)
    step = (hi - a1) / max(1, samples - 1)
    checked = 0
    ok = True
    anchor = _ival(a1) ** h
    for k in range(samples):
        a = a1 + step * k
        lhs = min(_ival(a**h), _ival(s_f * a))
        rhs = anchor + t_iv * _ival(a - a1)
        checked += 1
        if lhs.a > rhs.b:
            ok = False
    return LinearMajorant(a1, s_f, h, t_val, t_exact, checked, ok)


# -- growth bounds -------------------------------------------------------------


@dataclass(frozen=True)
class GrowthBound:
    """|V_h| <= M |V_1| / beta_M for a commutative graph, M the largest
    single-vertex h-step image."""

    max_image: int
    beta: PseudoCardinality | None
    value: float
    observed: int
    ok: bool


def growth_commutative_bound(graph: LayeredGraph) -> GrowthBound:
    """Callers must pass a commutative graph; the bound is unsound otherwise."""
    if not graph.layers[0]:
        raise InputError("growth bound needs a non-empty bottom layer")
    h = graph.height
    n = len(graph.layers[1])
    vh = len(graph.layers[h])
    m_img = max(len(image(graph, {v}, h)) for v in graph.layers[0])
    if m_img == 0:
        return GrowthBound(0, None, 0.0, vh, vh == 0)
    beta_m = pseudo_cardinality(m_img, h)
    ok = vh == 0 or beta_m.leq(Fraction(m_img * n, vh))
    value = float_up(_ival(m_img) * _ival(n) / beta_m.interval())
    return GrowthBound(m_img, beta_m, value, vh, ok)


@dataclass(frozen=True)
class GrowthGeneralReport:
    """Main term (n - m^(1-1/h) + 3h)^h / h! (reported, never asserted) next
    to the unconditional contraction bound C(n+h-1, h)."""

    value: float | None
    contraction: int
    precondition_ok: bool


def growth_general_bound(m: int, n: int, h: int) -> GrowthGeneralReport:
    for name, val in (("m", m), ("n", n)):
        if not isinstance(val, int) or val < 1:
            raise InputError(f"growth bound needs positive integer {name}, got {val!r}")
    if not isinstance(h, int) or h < 1:
        raise InputError(f"growth bound needs positive integer h, got {h!r}")
    pre_ok = n**h >= m ** (h - 1)  # n >= m^(1-1/h) cross-powered
    contraction = math.comb(n + h - 1, h)
    if not pre_ok:
        return GrowthGeneralReport(None, contraction, False)
    base = _ival(n) - _ival(m) ** _ival(Fraction(h - 1, h)) + _ival(3 * h)
    value = float_up(base**h / _ival(math.factorial(h)))
    return GrowthGeneralReport(value, contraction, True)


@dataclass(frozen=True)
class LargeSubsetResult:
    found: bool
    subset: tuple[int, ...] | None
    image_size: int | None
    bound: Fraction | None
    t: Fraction
    with_alpha_1: bool
    checked: int


def large_subset_search(
    graph: LayeredGraph,
    t,
    with_alpha_1: bool = False,
    guard: int = SUBSET_GUARD,
) -> LargeSubsetResult:
    """First subset X of V_0 (ascending bitmask order over the sorted layer)
    with |X| > t and |image(X, h)| within the large-subset budget.

    Basic form: (|X| - t) (n / (m - t))^h with n = |V_1|, m = |V_0|.
    With alpha_1: alpha_1^h t + (|X| - t) ((n - alpha_1 t) / (m - t))^h.
    All arithmetic is rational, so membership is exact.
    """
    bottom = list(graph.layers[0])
    m = len(bottom)
    if m == 0:
        raise InputError("large-subset search needs a non-empty bottom layer")
    if m > guard:
        raise GuardError(
            f"subset enumeration guard: |V_0| = {m} exceeds cap {guard}"
        )
    t = Fraction(t)
    if not 0 <= t < m:
        raise InputError(f"threshold t = {t} outside [0, {m})")
    n = len(graph.layers[1])
    h = graph.height
    masks, _ = _vertex_image_masks(graph, h)
    a1 = magnification_flow(graph, 1).value if with_alpha_1 else None
    scale = (
        ((n - a1 * t) / (m - t)) ** h if with_alpha_1 else (Fraction(n, 1) / (m - t)) ** h
    )
    offset = a1**h * t if with_alpha_1 else Fraction(0)
    checked = 0
    for mask in range(1, 1 << m):
        size = mask.bit_count()
        if size <= t:
            continue
        checked += 1
        im = 0
        rest = mask
        while rest:
            low = rest & (-rest)
            im |= masks[low.bit_length() - 1]
            rest ^= low
        budget = offset + (size - t) * scale
        if im.bit_count() <= budget:
            subset = tuple(bottom[k] for k in range(m) if mask >> k & 1)
            return LargeSubsetResult(
                True, subset, im.bit_count(), budget, t, with_alpha_1, checked
            )
    return LargeSubsetResult(False, None, None, None, t, with_alpha_1, checked)


# -- set-addition checks -------------------------------------------------------


@dataclass(frozen=True)
class NapReport:
    """|S+X+B| <= (|X+B|/|X|) |S+X| for the level-1 maximal tight set X."""

    x: GSet
    ratio: Ratio
    lhs: int
    sx: int
    ok: bool


def nap_check(a: GSet, b: GSet, s: GSet) -> NapReport:
    if a.space != b.space or a.space != s.space:
        raise InputError("A, B and S must share a space")
    if a.is_empty or b.is_empty or s.is_empty:
        raise InputError("NAP check needs non-empty A, B and S")
    graph = build_addition_graph(a, b, 1)
    tight = magnification_flow(graph, 1).maximal_tight_set
    x = GSet.from_coords(a.space, [graph.label_of(v) for v in tight])
    xb = sumset(x, b)
    sx = sumset(s, x)
    sxb = sumset(sx, b)
    ok = len(sxb) * len(x) <= len(xb) * len(sx)
    return NapReport(x, Fraction(len(xb), len(x)), len(sxb), len(sx), ok)


@dataclass(frozen=True)
class RestrictedSumsetReport:
    """Growth of (X+hB) \\ (J+hB) when level j is both tight and minimal.

    alpha_j is the observed j-level ratio |(X+jB)\\(J+jB)| / |X|.  When the
    subset-minimality hypothesis fails, conclusion_ok is None: the statement
    simply does not apply.  reiher_ok lists one verdict per supplied S.
    """

    hypothesis_ok: bool
    alpha_j: Ratio
    observed: int
    conclusion_ok: bool | None
    reiher_ok: tuple[bool, ...]


def _masked_difference(
    x: GSet, jb: GSet, forbidden: frozenset
) -> tuple[list[int], int]:
    """Per-element bitmasks of (x + jB) minus a forbidden coordinate set."""
    space = x.space
    universe: dict = {}
    masks = []
    for xe in x.elements:
        mask = 0
        for w in jb.elements:
            y = space.add_coords(xe, w)
            if y in forbidden:
                continue
            if y not in universe:
                universe[y] = len(universe)
            mask |= 1 << universe[y]
        masks.append(mask)
    return masks, len(universe)


def restricted_sumset_check(
    x: GSet,
    b: GSet,
    j_set: GSet,
    j: int,
    h: int,
    reiher_samples: Sequence[GSet] = (),
    guard: int = SUBSET_GUARD,
) -> RestrictedSumsetReport:
    if x.space != b.space or x.space != j_set.space:
        raise InputError("X, B and J must share a space")
    if x.is_empty or b.is_empty:
        raise InputError("restricted sumset check needs non-empty X and B")
    if not isinstance(h, int) or h < 1:
        raise InputError(f"restricted sumset check needs integer h >= 1, got {h!r}")
    if not isinstance(j, int) or not 1 <= j <= h:
        raise InputError(f"level j = {j!r} outside 1..{h}")
    if x.member_set() & j_set.member_set():
        raise InputError("X and J must be disjoint")
    if len(x) > guard:
        raise GuardError(
            f"subset enumeration guard: |X| = {len(x)} exceeds cap {guard}"
        )
    space = x.space

    def shifted(base: GSet, steps: int) -> frozenset:
        if base.is_empty:
            return frozenset()
        return sumset(base, fold_sumset(b, steps)).member_set()

    jb = fold_sumset(b, j)
    forbidden_j = shifted(j_set, j)
    masks, _ = _masked_difference(x, jb, forbidden_j)
    full = 0
    for mask in masks:
        full |= mask
    c = full.bit_count()
    size = len(x)
    hypothesis_ok = True
    for mask in range(1, 1 << size):
        im = 0
        rest = mask
        while rest:
            low = rest & (-rest)
            im |= masks[low.bit_length() - 1]
            rest ^= low
        # minimality: c/|X| <= f(Z)/|Z|
        if c * mask.bit_count() > im.bit_count() * size:
            hypothesis_ok = False
            break
    observed = len(shifted(x, h) - shifted(j_set, h))
    conclusion_ok: bool | None = None
    if hypothesis_ok:
        # observed <= (c/|X|)^(h/j) |X|  <=>  observed^j |X|^(h-j) <= c^h
        conclusion_ok = observed**j * size ** (h - j) <= c**h
    reiher: list[bool] = []
    for s in reiher_samples:
        if s.space != space:
            raise InputError("Reiher sample set must share the space")
        if s.is_empty:
            raise InputError("Reiher sample sets must be non-empty")
        xs = sumset(x, s)
        js = None if j_set.is_empty else sumset(j_set, s)
        lhs = len(shifted(xs, j) - (shifted(js, j) if js else frozenset()))
        rhs = len(shifted(xs, j - 1) - (shifted(js, j - 1) if js else frozenset()))
        # lhs <= (c/|X|)^(1/j) rhs  <=>  lhs^j |X| <= c rhs^j
        reiher.append(lhs**j * size <= c * rhs**j)
    return RestrictedSumsetReport(
        hypothesis_ok, Fraction(c, size), observed, conclusion_ok, tuple(reiher)
    )


@dataclass(frozen=True)
class RestrictedGrowthReport:
    """Both statements about G_R(A, B, C): the top-layer bound
    |V_h| <= |V_1| |hB| / beta and the per-vertex binomial bound."""

    v1: int
    vh: int
    hb: int
    beta: PseudoCardinality
    value: float
    top_ok: bool
    per_vertex_ok: bool


def restricted_growth_check(
    a: GSet, b: GSet, c: GSet, h: int, max_size: int | None = None
) -> RestrictedGrowthReport:
    graph = build_restricted_graph(a, b, c, h, max_size)
    sizes = graph.layer_sizes()
    v1, vh = sizes[1], sizes[-1]
    hb = len(fold_sumset(b, h, max_size))
    beta = pseudo_cardinality(hb, h)
    top_ok = vh == 0 or beta.leq(Fraction(v1 * hb, vh))
    value = float_up(_ival(v1) * _ival(hb) / beta.interval())
    pv_ok, _, _ = _per_vertex_binomial(graph)
    return RestrictedGrowthReport(v1, vh, hb, beta, value, top_ok, pv_ok)


# -- report serialization ------------------------------------------------------


def _frac_json(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def bound_report_to_json(report: BoundReport) -> dict:
    return {
        "h": report.h,
        "m": report.m,
        "ab": report.ab,
        "hb": report.hb,
        "observed": report.observed,
        "alpha": _frac_json(report.alpha),
        "alpha_1": _frac_json(report.alpha_1),
        "beta": report.beta.beta,
        "beta_exact": report.beta.exact,
        "s": report.s_value,
        "t": report.t_value,
        "ratios": [_frac_json(r) for r in report.ratios],
        "block_sizes": list(report.block_sizes),
        "bounds": [
            {
                "name": bv.name,
                "value": bv.value,
                "observed": bv.observed,
                "ok": bv.ok,
                "exact": bv.exact,
                "note": bv.note,
            }
            for bv in report.bounds
        ],
    }


def csv_header() -> str:
    cols = ["h", "m", "ab", "hb", "observed", "alpha", "alpha_1", "beta", "s", "t"]
    for name in BOUND_NAMES:
        cols.append(name)
        cols.append(name + "_ok")
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(cols)
    return buf.getvalue()


def csv_row(report: BoundReport) -> str:
    cells: list[object] = [
        report.h,
        report.m,
        report.ab,
        report.hb,
        report.observed,
        str(report.alpha),
        str(report.alpha_1),
        repr(report.beta.beta),
        repr(report.s_value),
        "" if report.t_value is None else repr(report.t_value),
    ]
    by_name = {bv.name: bv for bv in report.bounds}
    for name in BOUND_NAMES:
        bv = by_name.get(name)
        if bv is None or bv.value is None:
            cells.extend(["", ""])
        else:
            cells.append(repr(bv.value))
            cells.append("" if bv.ok is None else str(bv.ok))
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(cells)
    return buf.getvalue()
