"""End-to-end experiments and their reports."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from octopus_lab.algebra import TranspositionWeights
from octopus_lab.errors import PreconditionError
from octopus_lab.kazhdan import KazhdanConfig
from octopus_lab.symgroup import Partition
from octopus_lab.utils import trial_rng
from octopus_lab.verify import (
    TABLE1_EXPECTED,
    TABLE2_EXPECTED,
    ExperimentReport,
    TrialRecord,
    branch_children,
    caputo_element,
    caputo_trial,
    character_table_report,
    check_close,
    classsum_report,
    family_generates,
    kazhdan_experiment,
    random_connected_weights,
    random_octopus_weights,
    table1,
    table2,
    verify_aldous,
    verify_coxeter_path,
    verify_interlacing,
    verify_lemma_w2,
    verify_octopus,
    verify_semi_recursive,
    verify_transposition_gap,
    weights_connected,
)

FAST = KazhdanConfig(restarts=4, seed=3)


def _row(report, **keys):
    for row in report.summary["rows"]:
        if all(row[k] == v for k, v in keys.items()):
            return row
    raise KeyError(keys)


class TestReports:
    def test_report_passes_iff_trials_pass(self):
        good = TrialRecord(0, [check_close("a", 1.0, 1.0, 1e-9)])
        bad = TrialRecord(1, [check_close("b", 1.0, 2.0, 1e-9)])
        report = ExperimentReport("demo", {}, [good, bad])
        assert not report.passed
        assert report.failures == [bad]

    def test_infinite_values_serialize(self):
        record = TrialRecord(0, [check_close("inf", math.inf, math.inf, 1e-9)])
        data = record.to_dict()
        assert data["checks"][0]["lhs"] == "inf"
        assert data["passed"]
        json.dumps(data)


class TestTables:
    def test_table1(self):
        report = table1()
        assert report.passed
        assert report.summary["trivial_value"] == 2
        assert len(report.summary["rows"]) == 5
        row = _row(report, alpha=[2, 2])
        assert (row["f"], row["chi_31"], row["chi_22"], row["X"]) == (2, -1, 2, -10)

    def test_table1_expected_rows_are_checked(self):
        names = {c.name for c in table1().trials[0].checks}
        for parts in TABLE1_EXPECTED:
            assert f"row {Partition(parts)}" in names

    def test_table2(self):
        report = table2()
        assert report.passed
        assert report.summary["trivial_value"] == 3
        row = _row(report, alpha=[3, 2], beta=[3, 1])
        assert (row["F"], row["Y"]) == (-9, 3)
        row = _row(report, alpha=[3, 2], beta=[2, 2])
        assert (row["X_beta"], row["F"]) == (-10, 3)

    def test_table2_covers_expected_rows(self):
        report = table2()
        pairs = {(tuple(r["alpha"]), tuple(r["beta"])) for r in report.summary["rows"]}
        assert set(TABLE2_EXPECTED) <= pairs

    def test_branch_children_order(self):
        assert branch_children(Partition((3, 2))) == [Partition((3, 1)), Partition((2, 2))]

    def test_tables_are_json(self):
        json.dumps(table2().to_dict())

    def test_transposition_gap(self):
        report = verify_transposition_gap(6)
        assert report.passed
        assert [t.index for t in report.trials] == [2, 3, 4, 5, 6]


class TestSquaredOctopus:
    @pytest.mark.parametrize("n", [3, 4])
    def test_small(self, n):
        report = verify_lemma_w2(n, trials=4, seed=1)
        assert report.passed
        assert len(report.trials) == 4

    def test_range(self):
        with pytest.raises(PreconditionError):
            verify_lemma_w2(7, trials=1)


class TestRandomWeights:
    def test_octopus_weights_have_star(self):
        for index in range(10):
            W = random_octopus_weights(trial_rng(5, index), 5, density=0.3)
            assert sum(W.star_weights()) > 0

    def test_connected_weights(self):
        for index in range(10):
            assert weights_connected(random_connected_weights(trial_rng(5, index), 5, 0.4))

    def test_disconnected(self):
        assert not weights_connected(TranspositionWeights(4, {(1, 2): 1, (3, 4): 1}))


class TestSpectralExperiments:
    def test_octopus(self):
        report = verify_octopus(4, trials=6, seed=2)
        assert report.passed
        assert report.summary["worst_eigenvalue"] >= -1e-9

    def test_octopus_given_weights(self):
        W = TranspositionWeights(4, {(1, 4): Fraction(1, 2), (2, 3): 3})
        report = verify_octopus(3, weights=W)
        assert report.parameters["n"] == 4
        assert len(report.trials) == 1

    def test_aldous(self):
        report = verify_aldous(4, trials=6, seed=2)
        assert report.passed

    def test_aldous_disconnected_weights(self):
        with pytest.raises(PreconditionError):
            verify_aldous(4, weights=TranspositionWeights(4, {(1, 2): 1, (3, 4): 1}))

    def test_interlacing(self):
        assert verify_interlacing(5, trials=5, seed=4).passed

    def test_semi_recursive(self):
        assert verify_semi_recursive(4, trials=4, seed=4).passed

    @pytest.mark.parametrize("n", [2, 3, 5, 7])
    def test_coxeter_path(self, n):
        report = verify_coxeter_path(n)
        assert report.passed
        np.testing.assert_allclose(report.summary["gap"], 2 - 2 * math.cos(math.pi / n))

    def test_reports_are_deterministic(self):
        first = verify_interlacing(4, trials=3, seed=9).to_dict()
        second = verify_interlacing(4, trials=3, seed=9, threads=3).to_dict()
        assert first == second

    def test_failure_callback(self):
        seen = []
        report = verify_aldous(4, trials=2, tol=-1.0, on_failure=lambda name, record: seen.append((name, record.index)))
        assert not report.passed
        assert seen == [("aldous", 0), ("aldous", 1)]
        assert report.witness == report.trials[0].data


class TestClassSum:
    def test_four_cycles_in_s5(self):
        report = classsum_report(Partition((4, 1)))
        assert report.passed
        summary = report.summary
        assert summary["class_size"] == 30
        np.testing.assert_allclose(summary["gap_min"], 24.0)
        assert summary["argmin"] == [[2, 2, 1]]
        np.testing.assert_allclose(summary["defining_gap"], 30.0)
        assert summary["identity_holds"] is False
        json.dumps(report.to_dict())

    def test_transpositions_satisfy_identity(self):
        report = classsum_report(Partition((2, 1, 1, 1)))
        assert report.passed
        assert report.summary["identity_holds"]
        np.testing.assert_allclose(report.summary["gap_min"], 5.0)

    def test_even_class(self):
        report = classsum_report(Partition((3, 1, 1)))
        assert report.passed
        assert report.summary["even_class"]
        assert report.summary["gap_min"] == 0.0
        assert [1, 1, 1, 1, 1] in report.summary["argmin"]

    def test_n7_uses_characters_only(self):
        report = classsum_report(Partition((2, 1, 1, 1, 1, 1)))
        assert not any(c.name.startswith("Schur vs matrix") for c in report.trials[0].checks)
        np.testing.assert_allclose(report.summary["gap_min"], 7.0)


class TestCaputo:
    def test_family_generates(self):
        assert family_generates([((1, 2), Fraction(1)), ((2, 3, 4), Fraction(1, 2))], 4)
        assert not family_generates([((1, 2), Fraction(1)), ((3, 4), Fraction(1))], 4)
        assert not family_generates([((1, 2, 3, 4), Fraction(0))], 4)

    def test_caputo_element(self):
        w = caputo_element([((1, 2, 3), Fraction(1, 2))], 3)
        assert len(w) == 6

    def test_small_run(self):
        report = caputo_trial(4, trials=5, seed=1)
        summary = report.summary
        assert summary["agreements"] + summary["disagreements"] == 5
        assert report.trials[0].passed

    def test_subset_laws(self):
        for law in ("uniform", "pairs", "small", "full"):
            report = caputo_trial(3, trials=3, seed=2, subset_law=law)
            assert len(report.trials) == 3

    def test_unknown_subset_law(self):
        with pytest.raises(PreconditionError, match="unknown subset law 'pair'"):
            caputo_trial(3, trials=1, subset_law="pair")

    def test_range(self):
        with pytest.raises(PreconditionError):
            caputo_trial(7, trials=1)


class TestKazhdanExperiment:
    def test_n3(self):
        report = kazhdan_experiment(3, FAST)
        assert report.passed
        np.testing.assert_allclose(report.summary["class_value"], math.sqrt(2.0))
        assert "direct_sum" in report.summary
        assert "certificate" not in report.summary
        json.dumps(report.to_dict())

    @pytest.mark.slow
    def test_n4(self):
        report = kazhdan_experiment(4, FAST)
        assert report.passed
        assert report.summary["certificate"]["margin"] > 0

    @pytest.mark.slow
    def test_n6_skips_direct_sum(self):
        report = kazhdan_experiment(6, FAST)
        assert report.passed
        assert "direct_sum" not in report.summary


class TestCharacterTableReport:
    def test_n5(self):
        report = character_table_report(5)
        assert report.passed
        json.dumps(report.to_dict())

    def test_range(self):
        with pytest.raises(PreconditionError):
            character_table_report(11)


@pytest.mark.slow
class TestFullScale:
    def test_aldous(self):
        assert verify_aldous(6, trials=100, seed=0, threads=4).passed

    def test_octopus(self):
        assert verify_octopus(6, trials=50, seed=0, threads=4).passed

    def test_interlacing(self):
        assert verify_interlacing(7, trials=50, seed=0, threads=4).passed

    def test_lemma(self):
        assert verify_lemma_w2(6, trials=25, seed=0, threads=4).passed
