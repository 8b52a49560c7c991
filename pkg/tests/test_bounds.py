"""Certified bound evaluation: pseudo-cardinality, the named report rows,
majorants, growth and set-addition statements."""

import math
from fractions import Fraction

import pytest

from sumsetlab import (
    GroupSpace,
    GSet,
    GuardError,
    InputError,
    bound_report,
    bound_report_to_json,
    build_addition_graph,
    build_restricted_graph,
    certified_min_sum,
    csv_header,
    csv_row,
    growth_commutative_bound,
    growth_general_bound,
    large_subset_search,
    linear_majorant,
    nap_check,
    partition_graph,
    pseudo_cardinality,
    restricted_growth_check,
    restricted_sumset_check,
    rising_binomial,
)
from sumsetlab.bounds import BOUND_NAMES, check_majorant_pointwise, majorant_from_root
from sumsetlab.instances import random_pair, rng_for

from oracles import naive_image

Z = GroupSpace((0,))


def gs(*coords):
    return GSet.from_coords(Z, [(c,) for c in coords])


# -- pseudo-cardinality ---------------------------------------------------------


def test_rising_binomial_matches_comb():
    for r in range(1, 12):
        for h in range(0, 6):
            assert rising_binomial(r, h) == math.comb(r + h - 1, h)
    assert rising_binomial(Fraction(5, 2), 2) == Fraction(35, 8)
    with pytest.raises(InputError):
        rising_binomial(3, -1)


def test_pseudo_cardinality_exact_on_binomial_values():
    for h in range(1, 7):
        for r in range(1, 31):
            n = math.comb(r + h - 1, h)
            p = pseudo_cardinality(n, h)
            assert p.exact
            assert p.lo == p.hi == r
            assert p.beta == float(r)


def test_pseudo_cardinality_bracket_quality():
    for n, h in ((16, 2), (7, 3), (1000, 4), (12345, 5)):
        p = pseudo_cardinality(n, h)
        assert not p.exact
        assert rising_binomial(p.lo, h) <= n <= rising_binomial(p.hi, h)
        assert p.hi - p.lo <= Fraction(1, 10**12) * max(1, p.lo)
        assert p.lo <= Fraction(p.beta) <= p.hi


def test_pseudo_cardinality_known_root():
    # beta(beta+1)/2 = 16 has the positive root (sqrt(129)-1)/2
    p = pseudo_cardinality(16, 2)
    assert abs(p.beta - (math.sqrt(129) - 1) / 2) < 1e-9


def test_pseudo_cardinality_exact_comparisons():
    p = pseudo_cardinality(16, 2)
    assert p.leq(6) and p.lt(6)
    assert not p.leq(5) and not p.lt(5)
    assert not p.leq(0) and not p.lt(-3)
    q = pseudo_cardinality(15, 2)  # beta = 5 exactly
    assert q.leq(5) and not q.lt(5)


def test_pseudo_cardinality_validation():
    with pytest.raises(InputError):
        pseudo_cardinality(0, 2)
    with pytest.raises(InputError):
        pseudo_cardinality(6, 0)


# -- the named-bound report -----------------------------------------------------


@pytest.fixture(scope="module")
def grid_report():
    from sumsetlab import example1

    a, b, _ = example1(2, 4, 1)
    return bound_report(a, b, 2)


def test_grid_report_frozen_headline_numbers(grid_report):
    rep = grid_report
    assert (rep.m, rep.ab, rep.hb, rep.observed) == (18, 30, 16, 48)
    assert rep.alpha == Fraction(5, 3)
    assert rep.alpha_1 == 1
    assert rep.ratios == (Fraction(1), Fraction(7))
    assert rep.block_sizes == (16, 2)
    assert rep.all_ok
    # alpha^h m^(2-1/h) = (25/9) * 18^1.5
    ruzsa = rep.bound("ruzsa_universal")
    assert ruzsa.ok and ruzsa.exact
    assert abs(ruzsa.value - (25 / 9) * 18**1.5) < 1e-6
    assert ruzsa.value >= (25 / 9) * 18**1.5
    assert rep.bound("corollary_hb").value == 18.0
    assert rep.bound("corollary_hb").observed == 16
    cert = rep.bound("certified_min_sum")
    assert cert.ok and cert.exact
    # slow block contributes 16, fast block 2 alpha_2 = 14, scaled by s
    assert abs(cert.value - (16 + 14 * rep.s_value)) < 1e-9


def test_grid_report_suppresses_same_set_rows(grid_report):
    for name in ("plunnecke_hA", "ruzsa_binomial_hA"):
        row = grid_report.bound(name)
        assert row.ok is None and row.value is None
        assert row.note == "stated for A = B only"


def test_grid_report_main_terms_not_asserted(grid_report):
    for name in ("thm_main_universal", "thm_main_small_alpha"):
        row = grid_report.bound(name)
        assert row.ok is None
        assert row.value is not None


def test_grid_report_s_and_t(grid_report):
    rep = grid_report
    # s = hb / beta, up-rounded
    assert rep.s_value >= 16 / rep.beta.hi
    assert abs(rep.s_value - 16 / rep.beta.beta) < 1e-9
    # h = 2 makes t the chord slope s + alpha_1
    assert abs(rep.t_value - (rep.s_value + 1)) < 1e-9


def test_same_set_rows_frozen():
    a = gs(0, 1)
    rep = bound_report(a, a, 3)
    pl = rep.bound("plunnecke_hA")
    # alpha = 3/2; |3A| = 4 <= (3/2)^3 * 2 = 6.75
    assert (pl.value, pl.observed, pl.ok, pl.exact) == (6.75, 4, True, True)
    rb = rep.bound("ruzsa_binomial_hA")
    # alpha^2 C(alpha^4+h-2, h-1) m = (9/4) * rb(81/16, 2) * 2
    assert rb.value == 69.0556640625
    assert rb.observed == 4 and rb.ok
    assert rep.all_ok


def test_group_case_certified_frozen():
    space = GroupSpace((4,))
    a = GSet.from_coords(space, [(i,) for i in range(4)])
    b = GSet.from_coords(space, [(1,)])
    rep = bound_report(a, b, 2)
    assert rep.alpha == 1 and rep.alpha_1 == 1
    # 2B is a single element, so beta = 1 and s = 1
    assert rep.hb == 1 and rep.s_value == 1.0
    cert = rep.bound("certified_min_sum")
    assert cert.ok
    assert cert.value == 4.0
    assert rep.all_ok


def test_group_case_certified_with_caller_chosen_count():
    # same instance evaluated against beta(4, 2): the bound is still
    # 4 min(1, s) = 4, with s = 4/beta = (1+sqrt(33))/4
    space = GroupSpace((4,))
    a = GSet.from_coords(space, [(i,) for i in range(4)])
    b = GSet.from_coords(space, [(1,)])
    part = partition_graph(build_addition_graph(a, b, 2))
    cert = certified_min_sum(part, pseudo_cardinality(4, 2), 4)
    assert cert.ok
    assert cert.slow_part == 4 and cert.fast_weight == 0
    assert cert.value == 4.0
    assert abs(cert.s_value - (1 + math.sqrt(33)) / 4) < 1e-9
    assert cert.s_value >= (1 + math.sqrt(33)) / 4


def test_certified_min_sum_slow_only_is_exact():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 1)
    part = partition_graph(g)
    pseudo = pseudo_cardinality(2, 1)  # |1B| = 2, h = 1: beta = 2 exactly
    cert = certified_min_sum(part, pseudo, 7)
    assert cert.ok
    assert cert.slow_part == 7 and cert.fast_weight == 0
    assert cert.value == 7.0


def test_certified_min_sum_rejects_height_mismatch():
    g = build_addition_graph(gs(0, 1), gs(0, 1), 2)
    part = partition_graph(g)
    with pytest.raises(InputError):
        certified_min_sum(part, pseudo_cardinality(3, 1), 3)


def test_bound_report_validation():
    a = gs(0, 1)
    with pytest.raises(InputError):
        bound_report(a, a, 0)
    with pytest.raises(InputError):
        bound_report(a, GSet.from_coords(GroupSpace((5,)), [(0,)]), 2)
    with pytest.raises(InputError):
        bound_report(a, GSet.from_coords(Z, []), 2)


def test_report_rows_complete_and_deterministic(grid_report):
    assert tuple(bv.name for bv in grid_report.bounds) == BOUND_NAMES
    doc = bound_report_to_json(grid_report)
    assert doc == bound_report_to_json(grid_report)
    assert doc["alpha"] == [5, 3]
    assert len(doc["bounds"]) == 12


def test_csv_shape(grid_report):
    header = csv_header().rstrip("\n").split(",")
    row = csv_row(grid_report).rstrip("\n").split(",")
    assert len(header) == len(row) == 10 + 2 * len(BOUND_NAMES)
    assert header[:5] == ["h", "m", "ab", "hb", "observed"]
    named = dict(zip(header, row))
    assert named["alpha"] == "5/3"
    assert named["plunnecke_hA"] == ""  # suppressed row stays empty
    assert named["ruzsa_universal_ok"] == "True"
    assert float(named["ruzsa_universal"]) == grid_report.bound("ruzsa_universal").value


def test_random_reports_all_ok():
    rng = rng_for(20260814, "bounds")
    for _ in range(120):
        a, b = random_pair(rng, a_hi=7, b_hi=4)
        h = rng.randint(1, 3)
        rep = bound_report(a, b, h)
        assert rep.all_ok, [bv for bv in rep.bounds if bv.ok is False]
        assert rep.alpha_1 <= rep.alpha
        assert rep.s_value > 0


def test_random_same_set_reports_all_ok():
    rng = rng_for(20260814, "bounds-same")
    for _ in range(40):
        a, _ = random_pair(rng, a_hi=6, b_hi=1)
        h = rng.randint(1, 3)
        rep = bound_report(a, a, h)
        assert rep.all_ok
        assert rep.bound("plunnecke_hA").ok is True


# -- linear majorant ------------------------------------------------------------


def test_linear_majorant_h2_exact():
    lm = linear_majorant(2, 4, 2)
    assert lm.t_exact == 6
    assert lm.t == 6.0
    assert lm.samples_ok
    # frozen sample: min(9, 12) = 9 <= 4 + 6*(3-2) = 10
    assert check_majorant_pointwise(2, 4, 6, 2, [Fraction(3)])


def test_linear_majorant_higher_h_interval():
    lm = linear_majorant(1, 4, 3)
    # chord slope through sigma = 2 is exactly 7; rounded up
    assert lm.t_exact is None
    assert 7 <= lm.t < 7 + 1e-9
    assert lm.samples_ok


def test_linear_majorant_domain_errors():
    with pytest.raises(InputError, match="strictly below"):
        linear_majorant(8, 4, 3)
    with pytest.raises(InputError):
        linear_majorant(0, 4, 2)
    with pytest.raises(InputError):
        linear_majorant(2, 4, 1)


def test_majorant_from_root_dominates_on_grid():
    alpha_1, sigma, h = Fraction(1), Fraction(2), 3
    s, t = majorant_from_root(alpha_1, sigma, h)
    assert (s, t) == (4, 7)
    span = 3 * sigma - alpha_1
    grid = [alpha_1 + Fraction(k, 1000) * span for k in range(1001)]
    assert check_majorant_pointwise(alpha_1, s, t, h, grid)


def test_majorant_from_root_random():
    rng = rng_for(20260814, "majorant")
    for _ in range(60):
        h = rng.randint(2, 4)
        alpha_1 = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        sigma = alpha_1 + Fraction(rng.randint(1, 9), rng.randint(1, 3))
        s, t = majorant_from_root(alpha_1, sigma, h)
        grid = [alpha_1 + Fraction(k, 40) * (2 * sigma) for k in range(41)]
        assert check_majorant_pointwise(alpha_1, s, t, h, grid)


# -- growth bounds --------------------------------------------------------------


def test_growth_commutative_frozen_examples():
    g = build_addition_graph(gs(0, 10), gs(0, 1), 2)
    gb = growth_commutative_bound(g)
    assert gb.max_image == 3
    assert gb.beta.beta == 2.0
    assert gb.value == 6.0 and gb.observed == 6 and gb.ok

    single = growth_commutative_bound(build_addition_graph(gs(0), gs(0, 1), 2))
    assert single.max_image == 3 and single.value == 3.0 and single.ok

    space = GroupSpace((4,))
    a = GSet.from_coords(space, [(i,) for i in range(4)])
    b = GSet.from_coords(space, [(1,)])
    group = growth_commutative_bound(build_addition_graph(a, b, 2))
    assert group.max_image == 1 and group.value == 4.0 and group.ok


def test_growth_commutative_empty_top():
    g = build_restricted_graph(gs(0), gs(1), gs(1), 1)
    gb = growth_commutative_bound(g)
    assert gb.max_image == 0 and gb.value == 0.0 and gb.ok


def test_growth_general_frozen():
    rep = growth_general_bound(16, 8, 2)
    # (8 - 16^(1/2) + 6)^2 / 2 = 50
    assert rep.precondition_ok
    assert abs(rep.value - 50.0) < 1e-9 and rep.value >= 50.0
    assert rep.contraction == math.comb(9, 2) == 36


def test_growth_general_precondition():
    rep = growth_general_bound(16, 2, 3)
    assert not rep.precondition_ok
    assert rep.value is None
    assert rep.contraction == math.comb(4, 3)
    with pytest.raises(InputError):
        growth_general_bound(0, 4, 2)


def test_growth_commutative_random():
    rng = rng_for(20260814, "growth")
    for _ in range(80):
        a, b = random_pair(rng, a_hi=7, b_hi=4)
        g = build_addition_graph(a, b, rng.randint(1, 3))
        gb = growth_commutative_bound(g)
        assert gb.ok
        assert gb.value >= gb.observed


# -- large subsets --------------------------------------------------------------


def test_large_subset_frozen_cases():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 1)
    base = large_subset_search(g, 0)
    assert base.found
    assert {g.label_of(v)[0] for v in base.subset} == {0, 1, 2}
    assert base.image_size == 4
    assert base.bound == Fraction(21, 5)

    mid = large_subset_search(g, 2)
    assert mid.found
    assert len(mid.subset) == 5
    assert mid.image_size == 7 and mid.bound == 7

    refined = large_subset_search(g, 2, with_alpha_1=True)
    assert refined.found
    assert {g.label_of(v)[0] for v in refined.subset} == {0, 1, 2}
    assert refined.image_size == 4 and refined.bound == 4


def test_large_subset_validation_and_guard():
    g = build_addition_graph(gs(0, 1, 2), gs(0, 1), 1)
    with pytest.raises(InputError):
        large_subset_search(g, 3)
    with pytest.raises(InputError):
        large_subset_search(g, -1)
    wide = build_addition_graph(gs(*range(23)), gs(0), 1)
    with pytest.raises(GuardError, match="subset enumeration guard"):
        large_subset_search(wide, 0)


def test_large_subset_random_reverified():
    rng = rng_for(20260814, "subset")
    for _ in range(50):
        a, b = random_pair(rng, a_hi=6, b_hi=3)
        h = rng.randint(1, 2)
        g = build_addition_graph(a, b, h)
        m = len(g.layers[0])
        t = rng.choice([Fraction(0), Fraction(m, 4), Fraction(m, 2)])
        res = large_subset_search(g, t)
        assert res.found
        # re-verify the witness against an independent reachability oracle
        im = naive_image(g.edges, res.subset, h)
        assert len(im) == res.image_size
        assert res.image_size <= res.bound
        assert len(res.subset) > t


# -- set-addition statements ----------------------------------------------------


def test_nap_frozen_equality_case():
    rep = nap_check(gs(0, 1, 2, 3, 100), gs(0, 1), gs(0, 7))
    assert {c[0] for c in rep.x.elements} == {0, 1, 2, 3}
    assert rep.ratio == Fraction(5, 4)
    assert rep.lhs == 10 and rep.sx == 8
    assert rep.ok  # 10 * 4 == 5 * 8


def test_nap_random():
    rng = rng_for(20260814, "nap")
    for _ in range(60):
        a, b = random_pair(rng, a_hi=7, b_hi=4)
        s, _ = random_pair(rng, a_hi=4, b_hi=1)
        if s.space != a.space:
            continue
        assert nap_check(a, b, s).ok


def test_restricted_sumset_frozen():
    rep = restricted_sumset_check(
        gs(0, 1, 2, 3), gs(0, 1), gs(100), 1, 2, reiher_samples=(gs(0),)
    )
    assert rep.hypothesis_ok
    assert rep.alpha_j == Fraction(5, 4)
    assert rep.observed == 6
    assert rep.conclusion_ok  # 6 * 4 <= 5^2
    assert rep.reiher_ok == (True,)


def test_restricted_sumset_hypothesis_miss():
    rep = restricted_sumset_check(gs(0, 1, 2, 3, 50), gs(0, 1), gs(1000), 1, 2)
    assert not rep.hypothesis_ok
    assert rep.conclusion_ok is None


def test_restricted_sumset_empty_forbidden_set():
    rep = restricted_sumset_check(gs(0, 1), gs(0, 1), GSet.from_coords(Z, []), 1, 2)
    assert rep.hypothesis_ok
    assert rep.alpha_j == Fraction(3, 2)
    assert rep.conclusion_ok


def test_restricted_sumset_validation():
    x, b = gs(0, 1), gs(0, 1)
    with pytest.raises(InputError, match="disjoint"):
        restricted_sumset_check(x, b, gs(1), 1, 2)
    with pytest.raises(InputError):
        restricted_sumset_check(x, b, gs(9), 3, 2)
    with pytest.raises(GuardError):
        restricted_sumset_check(gs(*range(23)), b, gs(99), 1, 1)


def test_restricted_growth_frozen():
    rep = restricted_growth_check(gs(0, 1, 2, 3), gs(0, 1), gs(4), 2)
    assert (rep.v1, rep.vh, rep.hb) == (4, 4, 3)
    assert rep.beta.beta == 2.0
    assert rep.value == 6.0
    assert rep.top_ok and rep.per_vertex_ok
