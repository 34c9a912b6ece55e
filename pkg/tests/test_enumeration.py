from pathlib import Path

import numpy as np
import pytest

from qic.enumeration import (
    RunConfig,
    Termination,
    enumerate_solutions,
    verify,
)
from qic.errors import RegisterMismatch
from qic.interference import InterferenceConfig
from qic.predicate import CnfFormula, Predicate, parse_expr
from qic.reports import render_json
from qic.state import Register

from conftest import bits_of, cnf_truth_brute, expr_truth_brute, random_cnf, random_expr

GOLDEN = Path(__file__).parent / "golden"


class TestVerify:
    def test_solution_recognized(self):
        pred = Predicate(frozenset({1, 3}), Register(3))
        assert verify(pred, 3) is True
        assert verify(pred, 0) is False

    def test_ignores_exclusions(self):
        pred = Predicate(frozenset({1, 3}), Register(3),
                         exclusions=frozenset({1}))
        assert verify(pred, 1) is True


class TestRunConfig:
    def test_rejects_bad_seed(self):
        with pytest.raises(ValueError):
            RunConfig(seed=-1)
        with pytest.raises(ValueError):
            RunConfig(seed=2**64)

    def test_rejects_bad_max_runs(self):
        with pytest.raises(ValueError):
            RunConfig(seed=0, max_runs=0)


class TestEnumerateSolutions:
    def test_perfect_cancellation_finds_all_then_exhausts(self):
        reg = Register(3)
        pred = Predicate(frozenset({1, 3}), reg)
        for seed in (0, 1, 42, 999):
            report = enumerate_solutions(pred, reg, RunConfig(seed=seed))
            assert set(report.found) == {"001", "011"}
            assert len(report.runs) == 3
            assert report.runs[2].measured is None
            assert report.termination is Termination.EXHAUSTED

    def test_unsatisfiable_predicate(self):
        reg = Register(3)
        pred = Predicate(frozenset(), reg)
        report = enumerate_solutions(pred, reg, RunConfig(seed=5))
        assert report.found == ()
        assert len(report.runs) == 1
        assert report.termination is Termination.EXHAUSTED

    def test_golden_trace_seed42_with_leakage(self):
        reg = Register(3)
        pred = Predicate(frozenset({1, 3}), reg)
        cfg = RunConfig(seed=42,
                        interference=InterferenceConfig(leakage=0.2),
                        max_runs=50)
        report = enumerate_solutions(pred, reg, cfg)
        assert set(report.found) == {"001", "011"}
        assert report.termination in (Termination.REMNANT_MEASURED,
                                      Termination.REPEAT_MEASURED)
        expected = (GOLDEN / "enum_seed42_eps02.json").read_bytes()
        assert render_json(report.to_dict()).encode() == expected

    def test_max_runs_cap(self):
        reg = Register(2)
        pred = Predicate(frozenset({0, 1, 2, 3}), reg)
        report = enumerate_solutions(pred, reg, RunConfig(seed=3, max_runs=2))
        assert report.termination is Termination.MAX_RUNS_REACHED
        assert len(report.runs) == 2

    def test_register_mismatch(self):
        pred = Predicate(frozenset({1}), Register(2))
        with pytest.raises(RegisterMismatch):
            enumerate_solutions(pred, Register(3), RunConfig(seed=0))

    def test_reports_are_deterministic(self):
        reg = Register(4)
        pred = Predicate(parse_expr("b0 ^ b2"), reg)
        cfg = RunConfig(seed=77,
                        interference=InterferenceConfig(leakage=0.15, passes=2))
        first = render_json(
            enumerate_solutions(pred, reg, cfg).to_dict())
        second = render_json(
            enumerate_solutions(pred, reg, cfg).to_dict())
        assert first == second

    def test_repeat_measured_with_leakage(self):
        # single solution and strong leakage: refinding it is common
        reg = Register(2)
        pred = Predicate(frozenset({2}), reg)
        cfg_base = InterferenceConfig(leakage=0.9)
        seen = set()
        for seed in range(60):
            report = enumerate_solutions(
                pred, reg, RunConfig(seed=seed, interference=cfg_base))
            seen.add(report.termination)
            assert "10" in report.found or report.termination in (
                Termination.REMNANT_MEASURED, Termination.MAX_RUNS_REACHED)
        assert Termination.REPEAT_MEASURED in seen
        assert Termination.REMNANT_MEASURED in seen


def test_completeness_on_random_instances():
    # 100 random predicates, perfect cancellation: found set must equal the
    # brute-force solution set using |S| productive runs plus one collapse.
    rng = np.random.default_rng(90210)
    checked = 0
    while checked < 100:
        m = int(rng.integers(3, 9))
        reg = Register(m)
        if checked % 2 == 0:
            expr = random_expr(rng, m)
            pred = Predicate(expr, reg)
            solutions = {
                i for i in range(1 << m)
                if expr_truth_brute(expr, bits_of(i, m))
            }
        else:
            clauses = random_cnf(rng, m)
            pred = Predicate(CnfFormula(m, tuple(clauses)), reg)
            solutions = {
                i for i in range(1 << m)
                if cnf_truth_brute(clauses, bits_of(i, m))
            }
        if not solutions:
            continue
        checked += 1
        report = enumerate_solutions(pred, reg,
                                     RunConfig(seed=int(rng.integers(2**32))))
        found = {int(bits, 2) for bits in report.found}
        assert found == solutions
        assert len(report.runs) == len(solutions) + 1
        assert report.termination is Termination.EXHAUSTED
        # soundness: every reported solution satisfies the original predicate
        assert all(verify(pred, i) for i in found)


def test_first_solution_is_uniform_over_solution_set():
    reg = Register(6)
    solutions = [5, 17, 40, 63]
    pred = Predicate(frozenset(solutions), reg)
    counts = {s: 0 for s in solutions}
    trials = 10_000
    for seed in range(trials):
        report = enumerate_solutions(pred, reg, RunConfig(seed=seed))
        first = int(report.runs[0].measured, 2)
        counts[first] += 1
    tv = 0.5 * sum(abs(counts[s] / trials - 0.25) for s in solutions)
    assert tv <= 0.03
