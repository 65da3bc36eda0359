"""Characters and explicit representations of S_n."""

import math
from fractions import Fraction

import numpy as np
import pytest

from octopus_lab.algebra import TranspositionWeights, from_weights, lift
from octopus_lab.errors import DegreeMismatchError, PreconditionError
from octopus_lab.reptheory import (
    DirectSumRep,
    UnitaryRep,
    character_table,
    class_representative,
    defining_rep,
    dimension,
    irrep,
    mn_character,
    regular_rep,
    schur_scalar,
    standard_rep,
    standard_tableaux,
    transposition_ratio,
)
from octopus_lab.symgroup import (
    Partition,
    all_permutations,
    branch_down,
    class_size,
    compose,
    cycle_type,
    from_cycles,
    partitions_of,
    sign,
    transposition_class,
)


def _weights(n):
    edges = {(i, j): Fraction(i * j % 5 + 1, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return TranspositionWeights(n, edges)


class TestDimensions:
    def test_small(self):
        assert dimension(Partition((3, 1))) == 3
        assert dimension(Partition((2, 2))) == 2
        assert dimension(Partition((3, 2))) == 5
        assert dimension(Partition((3, 1, 1))) == 6

    @pytest.mark.parametrize("n", range(1, 11))
    def test_sum_of_squares(self, n):
        assert sum(dimension(b) ** 2 for b in partitions_of(n)) == math.factorial(n)

    def test_tableaux_count(self):
        for beta in partitions_of(6):
            assert len(standard_tableaux(beta)) == dimension(beta)


class TestCharacters:
    def test_known_values(self):
        assert mn_character(Partition((2, 2)), Partition((3, 1))) == -1
        assert mn_character(Partition((2, 2)), Partition((2, 2))) == 2
        assert mn_character(Partition((3, 2)), Partition((3, 1, 1))) == -1
        assert mn_character(Partition((3, 1, 1)), Partition((2, 2, 1))) == -2

    def test_identity_class_gives_dimension(self):
        for beta in partitions_of(6):
            assert mn_character(beta, Partition((1,) * 6)) == dimension(beta)

    def test_sign_character(self):
        sign_rep = Partition((1,) * 5)
        for p in all_permutations(5)[:40]:
            assert mn_character(sign_rep, cycle_type(p)) == sign(p)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            mn_character(Partition((2,)), Partition((3,)))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_row_orthogonality(self, n):
        assert character_table(n).check_orthogonality()

    def test_table_csv(self):
        text = character_table(3).to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "beta,(3),(2,1),(1,1,1)"
        assert lines[2] == "(2,1),-1,0,2"

    def test_transposition_ratio(self):
        for n in range(2, 8):
            tclass = transposition_class(n)
            for beta in partitions_of(n):
                expected = Fraction(class_size(tclass) * mn_character(beta, tclass), dimension(beta))
                assert transposition_ratio(beta) == expected

    def test_schur_scalar(self):
        assert schur_scalar(Partition((4, 1)), Partition((2, 2, 1))) == 6
        assert schur_scalar(Partition((4, 1)), Partition((4, 1))) == 0


class TestYoungOrthogonal:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_relations(self, n):
        for beta in partitions_of(n):
            assert irrep(beta).check_relations() == []

    @pytest.mark.parametrize("n", range(2, 7))
    def test_traces_match_characters(self, n):
        for beta in partitions_of(n):
            R = irrep(beta)
            for alpha in partitions_of(n):
                trace = np.trace(R.matrix(class_representative(alpha)))
                np.testing.assert_allclose(trace, mn_character(beta, alpha), atol=1e-9)

    def test_homomorphism(self):
        R = irrep(Partition((3, 2)))
        perms = all_permutations(5)
        for p, q in zip(perms[::7], perms[3::11]):
            np.testing.assert_allclose(R.matrix(compose(p, q)), R.matrix(p) @ R.matrix(q), atol=1e-10)

    def test_irreps_are_cached(self):
        assert irrep(Partition((3, 1))) is irrep(Partition((3, 1)))

    @pytest.mark.parametrize("n", range(3, 7))
    def test_branching_spectrum(self, n):
        a = from_weights(_weights(n - 1))
        lifted = lift(a, n)
        for beta in partitions_of(n):
            whole = np.linalg.eigvalsh(irrep(beta).evaluate(lifted))
            parts = np.concatenate([np.linalg.eigvalsh(irrep(g).evaluate(a)) for g in branch_down(beta)])
            np.testing.assert_allclose(np.sort(whole), np.sort(parts), atol=1e-9)


class TestPermutationReps:
    def test_defining_matrix(self):
        D = defining_rep(3)
        m = D.matrix(from_cycles([(1, 2, 3)], 3))
        e1 = np.array([1.0, 0.0, 0.0])
        np.testing.assert_allclose(m @ e1, [0.0, 1.0, 0.0])

    def test_defining_invariants(self):
        D = defining_rep(5)
        assert D.trivial_multiplicity() == 1
        assert D.complement_basis().shape == (5, 4)
        np.testing.assert_allclose(D.invariant_basis()[:, 0], np.full(5, 1 / math.sqrt(5)))

    def test_defining_needs_n2(self):
        with pytest.raises(PreconditionError):
            defining_rep(1)

    def test_standard_matches_hook_irrep(self):
        for n in range(3, 7):
            D = standard_rep(n)
            hook = Partition((n - 1, 1))
            assert D.trivial_multiplicity() == 0
            for alpha in partitions_of(n):
                trace = np.trace(D.matrix(class_representative(alpha)))
                np.testing.assert_allclose(trace, mn_character(hook, alpha), atol=1e-10)

    def test_regular_rep(self):
        L = regular_rep(4)
        assert L.dim == 24
        assert L.trivial_multiplicity() == 1
        assert L.complement_basis().shape == (24, 23)

    def test_regular_rep_capped(self):
        with pytest.raises(PreconditionError):
            regular_rep(7)

    def test_generic_fixed_space_uses_characters(self):
        D = defining_rep(4)
        generic = UnitaryRep(4, 4, "generic", D.generator_matrices)
        assert generic.trivial_multiplicity() == 1
        assert generic.invariant_basis().shape == (4, 1)
        assert generic.check_relations() == []

    def test_generator_count_checked(self):
        with pytest.raises(PreconditionError):
            UnitaryRep(4, 2, "bad", [np.eye(2)])


class TestDirectSum:
    def test_blocks(self):
        R = DirectSumRep([standard_rep(4), irrep(Partition((2, 2)))])
        assert R.dim == 5
        assert R.trivial_multiplicity() == 0
        g = class_representative(Partition((3, 1)))
        np.testing.assert_allclose(np.trace(R.matrix(g)), 0 + (-1), atol=1e-10)

    def test_mixed_degrees(self):
        with pytest.raises(DegreeMismatchError):
            DirectSumRep([standard_rep(3), standard_rep(4)])
