import random

from boxturan import selftest
from boxturan.finite_field import make_field
from boxturan.multipoly import degree, maximal_monomials


def test_suite_result_line():
    res = selftest.SuiteResult("demo", note="x")
    res.checked = 3
    assert res.ok and res.line() == "[PASS] demo: 3 checks (x)"
    res.fail("broken")
    assert not res.ok and res.line().startswith("[FAIL] demo")


def test_field_sizes_enumeration():
    got = list(selftest.field_sizes(9))
    assert sorted(got) == [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
    assert [p**r for p, r in got] == sorted(p**r for p, r in got)
    assert sorted(selftest.field_sizes(9, min_r=2)) == [(2, 2), (2, 3), (3, 2)]


def test_fresh_field_is_uncached():
    a = selftest._fresh_field(2, 4)
    assert a == make_field(2, 4) and a is not make_field(2, 4)


def test_generated_cases_meet_hypotheses():
    rng = random.Random(5)
    for _ in range(200):
        f, m, sub = selftest.lason_case(rng)
        assert m in maximal_monomials(f)
        assert all(n >= d + 1 for n, d in zip(sub.sizes, m))
        f, m, sub = selftest.alon_case(rng)
        assert m in f.raw_terms() and degree(f) <= sum(m)
        assert all(n >= d + 1 for n, d in zip(sub.sizes, m))


def test_small_suites_pass():
    for res in [
        selftest.suite_lason(200, seed=1),
        selftest.suite_alon(200, seed=1),
        selftest.suite_zero_set_freeness(60, seed=1),
        selftest.suite_box_detector(60, seed=1),
        selftest.suite_trace_fibers(1024),
        selftest.suite_modulus_invariance(64),
        selftest.suite_oracle_equivalence(10**4),
        selftest.suite_bounds(12),
    ]:
        assert res.ok, res.failures[:3]
        assert res.checked > 0


def test_field_axiom_checker_catches_a_broken_table():
    ctx = selftest._fresh_field(2, 3)
    # corrupt one entry of the log table used by table multiplication
    exp2, log, exp_arr, log_arr = ctx._tables
    log[3], log[5] = log[5], log[3]
    assert selftest.field_axioms(ctx, triple_limit=0) != []


def test_oracle_instances():
    inst = selftest.oracle_instances(10**6)
    expected = [(p, r) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31) for r in range(2, 6) if (p**r - 1) ** r <= 10**6]
    assert sorted(inst) == sorted(expected)
    assert len(inst) == 14
