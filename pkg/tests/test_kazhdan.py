"""Kazhdan constants: exact values, witnesses and the optimizer."""

import math

import numpy as np
import pytest

from octopus_lab.algebra import trivial_eval
from octopus_lab.errors import PreconditionError
from octopus_lab.kazhdan import (
    KazhdanConfig,
    cluster_start,
    conjclass_kazhdan_value,
    displacement_max,
    displacement_profile,
    generator_sum,
    kazhdan_rep_estimate,
    planar_diameter_bound,
    rem2_direct_sum_witness,
    cube_root_vector,
    sandwich_bounds,
    saturation_profile_check,
    standard_coordinates,
    strict_inequality_certificate,
    transposition_set,
)
from octopus_lab.reptheory import defining_rep, irrep, standard_rep
from octopus_lab.symgroup import Partition, transposition

FAST = KazhdanConfig(restarts=4, seed=7)


class TestExactValues:
    def test_class_value(self):
        np.testing.assert_allclose(conjclass_kazhdan_value(3), math.sqrt(2.0))
        np.testing.assert_allclose(conjclass_kazhdan_value(5), 1.0)

    def test_lower_bound_beats_class_value(self):
        for n in (4, 5, 6, 7):
            assert planar_diameter_bound(n) > conjclass_kazhdan_value(n)

    def test_generator_sum(self):
        T = transposition_set(3)
        assert len(T) == 3
        assert trivial_eval(generator_sum(T)) == 3

    def test_transposition_set_order(self):
        T = transposition_set(4)
        assert len(T) == 6
        assert T == sorted(T)


class TestWitnesses:
    def test_cube_root_vector_n3(self):
        profile = displacement_profile(defining_rep(3), transposition_set(3), cube_root_vector())
        np.testing.assert_allclose(profile, [math.sqrt(2.0)] * 3, atol=1e-10)

    def test_cube_root_vector_is_sum_zero(self):
        np.testing.assert_allclose(cube_root_vector().sum(), 0.0, atol=1e-12)

    def test_cluster_start_n4(self):
        u = cluster_start(4)
        np.testing.assert_allclose(np.linalg.norm(u), 1.0)
        kappa = displacement_max(defining_rep(4), transposition_set(4), u)
        np.testing.assert_allclose(kappa ** 2, 8.0 / 5.0, atol=1e-12)

    def test_displacement_needs_unit_vector(self):
        with pytest.raises(PreconditionError):
            displacement_max(defining_rep(3), transposition_set(3), 2 * cube_root_vector())

    def test_standard_coordinates_preserve_displacement(self):
        u = cluster_start(5)
        T = transposition_set(5)
        coords = standard_coordinates(5, u)
        np.testing.assert_allclose(
            displacement_profile(standard_rep(5), T, coords),
            displacement_profile(defining_rep(5), T, u),
            atol=1e-12,
        )

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_direct_sum_profile_is_flat(self, n):
        witness = rem2_direct_sum_witness(n)
        assert witness.spread < 1e-9
        np.testing.assert_allclose(witness.value, 2.0 / math.sqrt(n - 1), atol=1e-6)
        assert witness.passed

    def test_direct_sum_with_cube_root_vector(self):
        witness = rem2_direct_sum_witness(3, standard_coordinates(3, cube_root_vector()))
        np.testing.assert_allclose(witness.value, math.sqrt(2.0), atol=1e-6)

    def test_direct_sum_rejects_non_unit(self):
        with pytest.raises(PreconditionError):
            rem2_direct_sum_witness(4, np.array([1.0, 1.0, 0.0], dtype=complex))


class TestOptimizer:
    def test_warm_start_n3(self):
        start = standard_coordinates(3, cube_root_vector())
        estimate = kazhdan_rep_estimate(standard_rep(3), transposition_set(3), FAST, starts=[start])
        np.testing.assert_allclose(estimate.kappa, math.sqrt(2.0), atol=1e-4)
        assert estimate.spread < 1e-6

    def test_cold_start_n3(self):
        estimate = kazhdan_rep_estimate(standard_rep(3), transposition_set(3), KazhdanConfig(restarts=8, seed=1))
        assert estimate.kappa >= math.sqrt(2.0) - 1e-9
        np.testing.assert_allclose(estimate.kappa, math.sqrt(2.0), atol=1e-2)

    def test_witness_invariants(self):
        R = standard_rep(4)
        estimate = kazhdan_rep_estimate(R, transposition_set(4), FAST)
        np.testing.assert_allclose(np.linalg.norm(estimate.witness), 1.0, atol=1e-12)
        assert estimate.kappa == max(estimate.profile)
        assert len(estimate.generators) == 6
        data = estimate.to_dict()
        assert len(data["witness"]) == 3
        assert all(len(pair) == 2 for pair in data["witness"])

    def test_deterministic(self):
        R = standard_rep(4)
        first = kazhdan_rep_estimate(R, transposition_set(4), FAST)
        second = kazhdan_rep_estimate(R, transposition_set(4), FAST)
        assert first.kappa == second.kappa
        assert first.best_start == second.best_start

    def test_sandwich(self):
        R = standard_rep(4)
        T = transposition_set(4)
        estimate = kazhdan_rep_estimate(R, T, FAST)
        low, high = sandwich_bounds(R, T)
        assert low - 1e-6 <= estimate.kappa ** 2 <= high + 1e-6

    def test_saturation_n3(self):
        R = standard_rep(3)
        T = transposition_set(3)
        estimate = kazhdan_rep_estimate(R, T, FAST, starts=[standard_coordinates(3, cube_root_vector())])
        result = saturation_profile_check(R, T, estimate)
        assert result.saturated
        assert result.profile_constant
        assert result.passed

    def test_empty_generating_set(self):
        with pytest.raises(PreconditionError):
            kazhdan_rep_estimate(standard_rep(3), [], FAST)

    def test_non_generating_set(self):
        with pytest.raises(PreconditionError):
            kazhdan_rep_estimate(standard_rep(4), [transposition(1, 2, 4)], FAST)

    def test_only_invariant_vectors(self):
        with pytest.raises(PreconditionError):
            kazhdan_rep_estimate(irrep(Partition((4,))), transposition_set(4), FAST)


class TestStrictness:
    def test_refuses_n3(self):
        with pytest.raises(PreconditionError):
            strict_inequality_certificate(3, FAST)

    @pytest.mark.parametrize("n", [4, 5])
    def test_certificate(self, n):
        certificate = strict_inequality_certificate(n, FAST)
        assert certificate.margin > 0
        np.testing.assert_allclose(certificate.lower_bound, math.sqrt(6.0 / n))
        assert certificate.estimate.kappa >= certificate.lower_bound - 1e-9
        assert certificate.estimate.kappa > conjclass_kazhdan_value(n)

    def test_reuses_given_estimate(self):
        estimate = kazhdan_rep_estimate(standard_rep(4), transposition_set(4), FAST,
                                        starts=[standard_coordinates(4, cluster_start(4))])
        certificate = strict_inequality_certificate(4, FAST, estimate)
        assert certificate.estimate is estimate
        assert certificate.margin > 0

    def test_rejects_estimate_for_other_degree(self):
        estimate = kazhdan_rep_estimate(standard_rep(5), transposition_set(5), FAST)
        with pytest.raises(PreconditionError):
            strict_inequality_certificate(4, FAST, estimate)

    def test_cluster_start_is_near_optimal_n4(self):
        certificate = strict_inequality_certificate(4, FAST)
        assert certificate.estimate.kappa ** 2 <= 8.0 / 5.0 + 1e-9
