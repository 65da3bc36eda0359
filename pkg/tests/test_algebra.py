"""Group-algebra arithmetic, theta and the octopus elements."""

from fractions import Fraction

import pytest

from octopus_lab.algebra import (
    AlgebraElement,
    TranspositionWeights,
    class_sum,
    conjugate_element,
    convolve,
    embedded_class_sum,
    from_permutation,
    from_weights,
    identity_element,
    is_positive_symmetric,
    is_symmetric,
    lift,
    octopus_hat,
    octopus_X,
    octopus_Y,
    quartic_rhs,
    quartic_scalar,
    scale,
    shuffle_sum,
    star,
    support,
    theta,
    trivial_eval,
    x_hat,
    y_hat,
)
from octopus_lab.errors import DegreeMismatchError, PreconditionError, ThetaUndefinedError
from octopus_lab.symgroup import Partition, all_permutations, from_cycles, identity, inverse, transposition


class TestAlgebraElement:
    def test_zero_coefficients_dropped(self):
        a = AlgebraElement(3, {identity(3): 0, transposition(1, 2, 3): 2})
        assert len(a) == 1
        assert support(a) == [transposition(1, 2, 3)]

    def test_degree_checked(self):
        with pytest.raises(DegreeMismatchError):
            AlgebraElement(3, {identity(4): 1})
        with pytest.raises(DegreeMismatchError):
            identity_element(3) + identity_element(4)

    def test_transposition_squares_to_one(self):
        t = from_permutation(transposition(1, 2, 3))
        assert convolve(t, t) == identity_element(3)

    def test_convolution_is_associative(self):
        a = from_permutation(transposition(1, 2, 4), 2) + from_permutation(from_cycles([(1, 3, 4)], 4))
        b = from_permutation(transposition(2, 4, 4), Fraction(1, 3))
        c = identity_element(4) + from_permutation(from_cycles([(1, 2, 3, 4)], 4), -1)
        assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))

    def test_trivial_eval_is_multiplicative(self):
        a = from_permutation(transposition(1, 2, 4), 3) + identity_element(4)
        b = from_permutation(from_cycles([(2, 3, 4)], 4), Fraction(1, 2))
        assert trivial_eval(convolve(a, b)) == trivial_eval(a) * trivial_eval(b)

    def test_star(self):
        c = from_cycles([(1, 2, 3)], 3)
        a = from_permutation(c, 5)
        assert star(a) == from_permutation(from_cycles([(1, 3, 2)], 3), 5)
        assert not is_symmetric(a)
        assert is_symmetric(a + star(a))

    def test_positive_symmetric(self):
        assert is_positive_symmetric(from_weights(TranspositionWeights.complete(4)))
        assert not is_positive_symmetric(scale(identity_element(3), -1))

    def test_dict_roundtrip(self):
        a = class_sum(Partition((3, 1)))
        assert AlgebraElement.from_dict(a.to_dict()) == a

    def test_lift(self):
        a = from_permutation(transposition(1, 2, 2))
        lifted = lift(a, 4)
        assert support(lifted) == [transposition(1, 2, 4)]
        with pytest.raises(DegreeMismatchError):
            lift(identity_element(4), 3)


class TestClassSums:
    def test_class_sum_is_central(self):
        J = class_sum(Partition((3, 1)))
        for g in all_permutations(4):
            e = from_permutation(g)
            assert convolve(e, J) == convolve(J, e)

    def test_conjugate_element(self):
        pi = from_cycles([(1, 2, 3, 4)], 4)
        J = class_sum(Partition((3, 1)))
        assert conjugate_element(J, pi) == J
        t = from_permutation(transposition(1, 3, 4))
        expected = convolve(convolve(from_permutation(pi), t), from_permutation(inverse(pi)))
        assert conjugate_element(t, pi) == expected
        assert (conjugate_element(t, pi) - expected).is_zero()

    def test_class_sum_sizes(self):
        assert trivial_eval(class_sum(Partition((2, 2)))) == 3
        assert trivial_eval(class_sum(Partition((4, 1)))) == 30

    def test_shuffle_sum(self):
        J = shuffle_sum([1, 3, 4], 5)
        assert len(J) == 6
        assert convolve(J, J) == scale(J, 6)

    def test_embedded_size_mismatch(self):
        with pytest.raises(PreconditionError):
            embedded_class_sum(Partition((3, 1)), [1, 2, 3], 5)


class TestTranspositionWeights:
    def test_rejects_negative(self):
        with pytest.raises(PreconditionError):
            TranspositionWeights(3, {(1, 2): -1})

    def test_rejects_loop(self):
        with pytest.raises(PreconditionError):
            TranspositionWeights(3, {(2, 2): 1})

    def test_rejects_duplicate(self):
        with pytest.raises(PreconditionError):
            TranspositionWeights(3, {(1, 2): 1, (2, 1): 1})
        data = {"n": 3, "edges": [{"i": 1, "j": 2, "num": 1, "den": 1}, {"i": 2, "j": 1, "num": 1, "den": 2}]}
        with pytest.raises(PreconditionError):
            TranspositionWeights.from_json(data)

    def test_json_roundtrip(self):
        W = TranspositionWeights(4, {(1, 4): Fraction(1, 3), (2, 3): 2})
        assert TranspositionWeights.from_json(W.to_json()) == W

    def test_transposition_elements_are_symmetric(self):
        W = TranspositionWeights(4, {(1, 4): Fraction(1, 3), (2, 3): 2, (1, 2): 5})
        assert is_symmetric(from_weights(W))


class TestTheta:
    def test_small_example(self):
        W = TranspositionWeights(3, {(1, 2): 1, (1, 3): 2, (2, 3): 3})
        reduced = theta(W)
        assert reduced.n == 2
        assert reduced.weight(1, 2) == 1 + Fraction(6, 5)

    def test_star_only(self):
        reduced = theta(TranspositionWeights.from_star([1, 1, 1]))
        assert all(reduced.weight(i, j) == Fraction(1, 3) for i, j in [(1, 2), (1, 3), (2, 3)])

    def test_preserves_nonnegativity(self):
        W = TranspositionWeights(5, {(1, 5): Fraction(1, 7), (3, 5): 4, (2, 4): Fraction(2, 3)})
        assert all(v >= 0 for v in theta(W).edges.values())

    def test_undefined_without_star_weights(self):
        with pytest.raises(ThetaUndefinedError):
            theta(TranspositionWeights(4, {(1, 2): 1}))

    def test_needs_n_at_least_three(self):
        with pytest.raises(PreconditionError):
            theta(TranspositionWeights(2, {(1, 2): 1}))


class TestOctopusElements:
    def test_octopus_hat_n3(self):
        hat = octopus_hat(TranspositionWeights.from_star([1, 1]))
        assert hat.coefficient(transposition(1, 3, 3)) == 2
        assert hat.coefficient(transposition(2, 3, 3)) == 2
        assert hat.coefficient(transposition(1, 2, 3)) == -1
        assert not is_positive_symmetric(hat)

    def test_octopus_hat_ignores_off_star_weights(self):
        star_only = octopus_hat(TranspositionWeights.from_star([1, 2, 3]))
        with_extra = octopus_hat(TranspositionWeights(4, {(1, 4): 1, (2, 4): 2, (3, 4): 3, (1, 2): 7}))
        assert star_only == with_extra

    def test_x_hat_trivial_value(self):
        assert trivial_eval(x_hat()) == 2
        assert len(x_hat()) == 8 + 3

    def test_y_hat_trivial_value(self):
        assert trivial_eval(y_hat()) == 3

    def test_octopus_y_is_relabelled_y_hat(self):
        assert octopus_Y(1, 2, 3, 4, 5, 5) == y_hat()
        assert trivial_eval(octopus_Y(5, 3, 1, 2, 4, 6)) == 3
        with pytest.raises(PreconditionError):
            octopus_Y(1, 2, 3, 3, 5, 5)

    def test_octopus_x_needs_distinct_points(self):
        with pytest.raises(PreconditionError):
            octopus_X(1, 1, 2, 4, 4)

    def test_quartic_scalar(self):
        assert quartic_scalar([1, 1]) == 9
        assert quartic_scalar([1, 1, 1]) == 24

    def test_square_matches_expansion_n3(self):
        x = [Fraction(1), Fraction(1)]
        hat = octopus_hat(TranspositionWeights.from_star(x))
        assert convolve(hat, hat) == quartic_rhs(x, 3)
        assert quartic_rhs(x, 3) == scale(identity_element(3), 9)

    @pytest.mark.parametrize("x", [[1, 1, 1], [Fraction(1, 2), 3, Fraction(2, 7)], [0, 1, Fraction(5, 3)]])
    def test_square_matches_expansion_n4(self, x):
        hat = octopus_hat(TranspositionWeights.from_star(x))
        assert convolve(hat, hat) == quartic_rhs(x, 4)

    def test_square_matches_expansion_n5(self):
        x = [Fraction(1, 3), 2, Fraction(3, 4), 1]
        hat = octopus_hat(TranspositionWeights.from_star(x))
        assert convolve(hat, hat) == quartic_rhs(x, 5)

    def test_quartic_rhs_checks_length(self):
        with pytest.raises(PreconditionError):
            quartic_rhs([1, 1], 4)
