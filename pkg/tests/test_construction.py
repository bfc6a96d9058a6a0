import itertools
import math

import pytest

from boxturan.construction import (
    box_polynomial,
    build_instance,
    density_holds,
    enumerate_edges_fast,
    expected_edges,
    rote_instance_report,
    trace_form_eval,
)
from boxturan.finite_field import FieldCtx, irreducible_polynomials, make_field
from boxturan.multipoly import degree, evaluate, maximal_monomials
from boxturan.nullstellensatz import Grid, zero_set

GF4 = make_field(2, 2)
W = GF4.element(2)


def oracle_box_terms(p, r):
    # written out from the definition with 1-based cyclic indices
    q = p**r
    terms = {tuple([1] * r)}
    for i in range(1, r + 1):
        mono = [0] * r
        for j in range(1, r):
            idx = (i + j - 1) % r + 1
            mono[idx - 1] = q - p**j
        terms.add(tuple(mono))
    return terms


def test_box_polynomial_small_cases():
    assert set(box_polynomial(GF4).raw_terms()) == {(1, 1), (2, 0), (0, 2)}
    assert set(box_polynomial(make_field(3, 2)).raw_terms()) == {(1, 1), (6, 0), (0, 6)}
    f = box_polynomial(make_field(2, 3))
    assert set(f.raw_terms()) == {(1, 1, 1), (0, 6, 4), (4, 0, 6), (6, 4, 0)}
    assert all(c == 1 for c in f.raw_terms().values())


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4), (5, 2), (2, 5), (3, 4)])
def test_box_polynomial_matches_definition(p, r):
    f = box_polynomial(make_field(p, r))
    assert set(f.raw_terms()) == oracle_box_terms(p, r)
    assert (1,) * r in maximal_monomials(f)
    assert degree(f) == (r - 1) * p**r - sum(p**j for j in range(1, r))


def test_box_polynomial_needs_extension():
    with pytest.raises(ValueError):
        box_polynomial(make_field(5, 1))


def test_trace_form_examples():
    one = GF4.one
    assert trace_form_eval(GF4, (one, one)) == one
    assert trace_form_eval(GF4, (one, W)) == GF4.zero
    with pytest.raises(ValueError):
        trace_form_eval(GF4, (one, GF4.zero))
    with pytest.raises(ValueError):
        trace_form_eval(GF4, (one,))


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)])
def test_trace_form_agrees_with_polynomial(p, r):
    ctx = make_field(p, r)
    f = box_polynomial(ctx)
    pts = list(itertools.product(list(ctx.elements())[1:], repeat=r))
    step = max(1, len(pts) // 2000)
    for pt in pts[::step]:
        assert trace_form_eval(ctx, pt) == evaluate(f, pt)


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_fast_enumeration_matches_grid_scan(p, r):
    ctx = make_field(p, r)
    fast = list(enumerate_edges_fast(ctx))
    naive = zero_set(box_polynomial(ctx), Grid.units(ctx, r))
    assert len(fast) == len(set(fast)) == expected_edges(p, r)
    assert set(fast) == set(naive)


def test_expected_edges_values():
    assert [expected_edges(p, r) for p, r in [(2, 2), (3, 2), (5, 2), (7, 2), (2, 3), (3, 3), (2, 4)]] == [
        6,
        24,
        120,
        336,
        196,
        6084,
        27000,
    ]


def test_density_exact():
    assert density_holds(6, 3, 2)  # 36 >= 27
    assert not density_holds(5, 3, 2)  # 25 < 27
    for p in (2, 3, 5, 7, 11):
        for r in (2, 3, 4, 5):
            n = p**r - 1
            assert density_holds(expected_edges(p, r), n, r)
            # p^(r(r-1)) > (p^r - 1)^(r-1) is the reduced form
            assert p ** (r * (r - 1)) > n ** (r - 1)


@pytest.mark.parametrize("p,r,n,edges", [(2, 2, 3, 6), (3, 2, 8, 24), (2, 3, 7, 196)])
def test_build_instance_reports(p, r, n, edges):
    inst = build_instance(p, r)
    rep = inst.report
    assert (rep.n_per_part, rep.num_vertices, rep.num_edges) == (n, r * n, edges)
    assert rep.box_free is True and rep.density_ok and rep.passed
    assert inst.witness is None
    assert rep.modulus == list(make_field(p, r).modulus)


def test_build_instance_large_counts_without_box_check():
    rep = build_instance(2, 4, check_box=False).report
    assert (rep.n_per_part, rep.num_vertices, rep.num_edges) == (15, 60, 27000)
    assert rep.box_free == "skipped" and not rep.passed


def test_naive_and_fast_modes_agree():
    for p, r in [(2, 2), (3, 2), (2, 3)]:
        a = build_instance(p, r, "fast", check_box=False).hypergraph
        b = build_instance(p, r, "naive", check_box=False).hypergraph
        assert a == b


def test_budget_skip_is_recorded():
    rep = build_instance(3, 2, budget_pairs=1).report
    assert rep.box_free == "skipped-budget"
    assert rep.counts_ok and rep.density_ok and not rep.passed


def test_build_instance_argument_checks():
    with pytest.raises(ValueError):
        build_instance(2, 1)
    with pytest.raises(ValueError):
        build_instance(2, 2, "slow")
    with pytest.raises(ValueError):
        build_instance(3, 2, ctx=GF4)


def test_modulus_invariance_of_counts():
    for p, r in [(2, 3), (2, 4), (3, 2)]:
        counts = set()
        for mod in itertools.islice(irreducible_polynomials(p, r), 4):
            inst = build_instance(p, r, ctx=FieldCtx(p, r, mod), check_box=(p**r <= 9))
            counts.add(inst.report.num_edges)
            assert inst.report.box_free in (True, "skipped")
        assert counts == {expected_edges(p, r)}


@pytest.mark.parametrize("p,zeros,n", [(2, 6, 3), (3, 24, 8), (5, 120, 24)])
def test_rote_report(p, zeros, n):
    rep = rote_instance_report(p)
    assert (rep.zero_count, rep.n, rep.expected) == (zeros, n, zeros)
    assert rep.rote_shape
    assert rep.p_exponent == rep.q_exponent == p * p - p
    assert rep.ratio == pytest.approx(p / math.sqrt(p * p - 1), rel=1e-12)


def test_rote_ratio_p2():
    assert rote_instance_report(2).ratio == pytest.approx(1.1547, abs=1e-4)
