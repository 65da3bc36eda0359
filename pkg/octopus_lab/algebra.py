"""Sparse group-algebra arithmetic on QS_n.

Elements are finite sums  sum_g a_g g  with exact rational coefficients.
The module also hosts the reduction map theta on transposition weights and
the octopus elements built from it.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DegreeMismatchError, InternalConsistencyError, PreconditionError, ThetaUndefinedError
from .symgroup import (
    Partition,
    Permutation,
    class_elements_on,
    compose,
    conjugate_by,
    identity,
    inverse,
    permutations_on,
    transposition,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class AlgebraElement:
    """Element of the rational group algebra QS_n.

    Zero coefficients are never stored. Instances are treated as immutable:
    every operation returns a new element.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Permutation, Scalar]] = None):
        self.n = int(n)
        cleaned: Dict[Permutation, Fraction] = {}
        for perm, coeff in (terms or {}).items():
            if perm.n != self.n:
                raise DegreeMismatchError(f"term {perm} has degree {perm.n}, element has degree {self.n}")
            value = Fraction(coeff)
            if value != 0:
                cleaned[perm] = value
        self._terms = cleaned

    @classmethod
    def _from_clean(cls, n: int, terms: Dict[Permutation, Fraction]) -> "AlgebraElement":
        element = cls.__new__(cls)
        element.n = n
        element._terms = {g: c for g, c in terms.items() if c != 0}
        return element

    @property
    def terms(self) -> Dict[Permutation, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Permutation, Fraction]]:
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def coefficient(self, g: Permutation) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "AlgebraElement"):
        if self.n != other.n:
            raise DegreeMismatchError(f"degree {self.n} does not match degree {other.n}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        terms = dict(self._terms)
        for g, c in other._terms.items():
            terms[g] = terms.get(g, Fraction(0)) + c
        return AlgebraElement._from_clean(self.n, terms)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._from_clean(self.n, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"AlgebraElement(n={self.n}, 0)"
        body = " + ".join(f"{c}*{g}" for g, c in self.items())
        return f"AlgebraElement(n={self.n}, {body})"

    def to_dict(self) -> dict:
        """JSON form: {"n", "terms": [{"perm", "num", "den"}]} in canonical order."""
        return {
            "n": self.n,
            "terms": [
                {"perm": g.to_json(), "num": c.numerator, "den": c.denominator}
                for g, c in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AlgebraElement":
        n = int(data["n"])
        terms: Dict[Permutation, Fraction] = {}
        for term in data.get("terms", []):
            perm = Permutation(tuple(term["perm"]))
            terms[perm] = terms.get(perm, Fraction(0)) + Fraction(int(term["num"]), int(term.get("den", 1)))
        return cls(n, terms)


def zero(n: int) -> AlgebraElement:
    return AlgebraElement(n)


def identity_element(n: int) -> AlgebraElement:
    """The unit 1_{S_n}."""
    return AlgebraElement(n, {identity(n): 1})


def from_permutation(g: Permutation, coeff: Scalar = 1) -> AlgebraElement:
    return AlgebraElement(g.n, {g: coeff})


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def scale(a: AlgebraElement, c: Scalar) -> AlgebraElement:
    c = Fraction(c)
    return AlgebraElement._from_clean(a.n, {g: c * v for g, v in a._terms.items()})


def support(a: AlgebraElement) -> List[Permutation]:
    """Permutations with a nonzero coefficient, in canonical order."""
    return sorted(a._terms)


def star(a: AlgebraElement) -> AlgebraElement:
    """Canonical involution: coefficient of g moves to g^-1."""
    return AlgebraElement._from_clean(a.n, {inverse(g): c for g, c in a._terms.items()})


def convolve(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Group-algebra product: (ab)_g = sum_h a_h b_{h^-1 g}.

    Raises:
        DegreeMismatchError: If the degrees differ.
    """
    a._check(b)
    result: Dict[Permutation, Fraction] = {}
    for g, cg in a._terms.items():
        for h, ch in b._terms.items():
            gh = compose(g, h)
            result[gh] = result.get(gh, Fraction(0)) + cg * ch
    return AlgebraElement._from_clean(a.n, result)


def trivial_eval(a: AlgebraElement) -> Fraction:
    """Image under the trivial representation: the coefficient sum."""
    return sum(a._terms.values(), Fraction(0))


def is_symmetric(a: AlgebraElement) -> bool:
    """Whether a is star-invariant."""
    return all(a.coefficient(inverse(g)) == c for g, c in a._terms.items())


def is_positive_symmetric(a: AlgebraElement) -> bool:
    """Membership in CG(+): nonnegative and star-invariant."""
    return all(c >= 0 for c in a._terms.values()) and is_symmetric(a)


def lift(a: AlgebraElement, n: int) -> AlgebraElement:
    """Embed an element of QS_m into QS_n (m <= n) by fixing m+1..n."""
    if a.n > n:
        raise DegreeMismatchError(f"cannot lift degree {a.n} into degree {n}")
    tail = tuple(range(a.n + 1, n + 1))
    return AlgebraElement._from_clean(n, {Permutation._trusted(g.images + tail): c for g, c in a._terms.items()})


def conjugate_element(a: AlgebraElement, pi: Permutation) -> AlgebraElement:
    """pi a pi^-1."""
    return AlgebraElement._from_clean(a.n, {conjugate_by(pi, g): c for g, c in a._terms.items()})


def _sum_of(perms: Iterable[Permutation], n: int) -> AlgebraElement:
    return AlgebraElement._from_clean(n, {g: Fraction(1) for g in perms})


def embedded_class_sum(alpha: Partition, A: Iterable[int], n: int) -> AlgebraElement:
    """J^alpha_A: unit-coefficient sum over permutations supported on A with
    cycle type alpha there.

    Raises:
        PreconditionError: If |A| differs from the size of alpha.
    """
    return _sum_of(class_elements_on(alpha, A, n), n)


def class_sum(alpha: Partition) -> AlgebraElement:
    """J^alpha: sum of the conjugacy class of cycle type alpha."""
    return embedded_class_sum(alpha, range(1, alpha.n + 1), alpha.n)


def shuffle_sum(A: Iterable[int], n: int) -> AlgebraElement:
    """J_{n,A}: sum of every permutation fixing the complement of A."""
    return _sum_of(permutations_on(A, n), n)


@dataclass
class TranspositionWeights:
    """Nonnegative symmetric weights w_ij on the transpositions of S_n.

    Keys are stored as (i, j) with i < j; zero weights are dropped.
    """

    n: int
    edges: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in self.edges.items():
            i, j = int(i), int(j)
            if i == j:
                raise PreconditionError(f"edge ({i},{j}) is not a transposition")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PreconditionError(f"edge ({i},{j}) is outside 1..{self.n}")
            value = Fraction(value)
            if value < 0:
                raise PreconditionError(f"weight of ({i},{j}) is negative: {value}")
            key = (min(i, j), max(i, j))
            if key in cleaned:
                raise PreconditionError(f"edge {key} is listed twice")
            if value != 0:
                cleaned[key] = value
        self.edges = cleaned

    def weight(self, i: int, j: int) -> Fraction:
        return self.edges.get((min(i, j), max(i, j)), Fraction(0))

    def star_weights(self) -> List[Fraction]:
        """x_i = w_in for i = 1..n-1."""
        return [self.weight(i, self.n) for i in range(1, self.n)]

    def total(self) -> Fraction:
        return sum(self.edges.values(), Fraction(0))

    def positive_edges(self) -> List[Tuple[int, int]]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": [
                {"i": i, "j": j, "num": w.numerator, "den": w.denominator}
                for (i, j), w in sorted(self.edges.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TranspositionWeights":
        """Parse the edge-list form.

        Raises:
            PreconditionError: On negative weights, loops or duplicate edges.
        """
        n = int(data["n"])
        edges: Dict[Tuple[int, int], Fraction] = {}
        for edge in data.get("edges", []):
            i, j = int(edge["i"]), int(edge["j"])
            key = (min(i, j), max(i, j))
            if key in edges:
                raise PreconditionError(f"edge {key} is listed twice")
            edges[key] = Fraction(int(edge["num"]), int(edge.get("den", 1)))
        # The constructor applies the remaining checks
        return cls(n, edges)

    @classmethod
    def from_star(cls, x: Sequence[Scalar]) -> "TranspositionWeights":
        """Octopus weights: w_in = x_i, everything else zero."""
        n = len(x) + 1
        return cls(n, {(i, n): x[i - 1] for i in range(1, n)})

    @classmethod
    def complete(cls, n: int, weight: Scalar = 1) -> "TranspositionWeights":
        """Equal weight on every transposition (the weights of T_n)."""
        return cls(n, {(i, j): weight for i, j in itertools.combinations(range(1, n + 1), 2)})

    @classmethod
    def path(cls, n: int, weight: Scalar = 1) -> "TranspositionWeights":
        """Adjacent transpositions only."""
        return cls(n, {(i, i + 1): weight for i in range(1, n)})


def from_weights(W: TranspositionWeights) -> AlgebraElement:
    """sum_{i<j} w_ij (ij)."""
    return AlgebraElement(W.n, {transposition(i, j, W.n): w for (i, j), w in W.edges.items()})


def theta(W: TranspositionWeights) -> TranspositionWeights:
    """Reduce weights on S_n to weights on S_{n-1}:

        w'_ik = w_ik + w_in w_kn / (w_1n + ... + w_{n-1,n})

    Raises:
        PreconditionError: If n < 3.
        ThetaUndefinedError: If every w_in vanishes.
    """
    n = W.n
    if n < 3:
        raise PreconditionError(f"theta needs n >= 3, got {n}")
    x = W.star_weights()
    s = sum(x, Fraction(0))
    if s == 0:
        raise ThetaUndefinedError(f"theta needs some w_in > 0 with n = {n}; all star weights are zero")
    edges = {}
    for i, k in itertools.combinations(range(1, n), 2):
        edges[(i, k)] = W.weight(i, k) + x[i - 1] * x[k - 1] / s
    return TranspositionWeights(n - 1, edges)


def octopus_hat(W: TranspositionWeights) -> AlgebraElement:
    """The rescaled octopus element  s (w - theta(w)),  s = sum_i w_in.

    w - theta(w) only depends on the star weights x_i = w_in, so s equals
    the trivial value of the star part of w. The element is built from the
    definition and from the expansion

        sum_i x_i^2 (in) + sum_{i<j} x_i x_j [(in) + (jn) - (ij)]

    and the two must agree exactly.

    Raises:
        ThetaUndefinedError: If every w_in vanishes.
        InternalConsistencyError: If the two constructions differ.
    """
    n = W.n
    reduced = theta(W)
    x = W.star_weights()
    s = sum(x, Fraction(0))
    by_definition = scale(from_weights(W) - lift(from_weights(reduced), n), s)

    terms: Dict[Permutation, Fraction] = {}
    for i in range(1, n):
        terms[transposition(i, n, n)] = x[i - 1] ** 2
    for i, j in itertools.combinations(range(1, n), 2):
        cross = x[i - 1] * x[j - 1]
        for g, sgn in ((transposition(i, n, n), 1), (transposition(j, n, n), 1), (transposition(i, j, n), -1)):
            terms[g] = terms.get(g, Fraction(0)) + sgn * cross
    by_expansion = AlgebraElement(n, terms)

    if by_definition != by_expansion:
        raise InternalConsistencyError(
            f"octopus element mismatch for n = {n}: {by_definition!r} != {by_expansion!r}"
        )
    return by_expansion


def _distinct(indices: Sequence[int]):
    if len(set(indices)) != len(indices):
        raise PreconditionError(f"indices {tuple(indices)} must be distinct")


def octopus_X(i: int, j: int, k: int, n_slot: int, degree: int) -> AlgebraElement:
    """X_{i,j,k,n} = J^(3,1) - 2 J^(2,2) on the set {i, j, k, n_slot}."""
    points = (i, j, k, n_slot)
    _distinct(points)
    return (
        embedded_class_sum(Partition((3, 1)), points, degree)
        - scale(embedded_class_sum(Partition((2, 2)), points, degree), 2)
    )


def octopus_Y(i: int, j: int, k: int, l: int, n_slot: int, degree: int) -> AlgebraElement:
    """Y^n_{i,j,k,l} = J^(3,1,1) - J^(2,2,1) on {i,j,k,l,n_slot}, minus X_{i,j,k,l}."""
    points = (i, j, k, l, n_slot)
    _distinct(points)
    return (
        embedded_class_sum(Partition((3, 1, 1)), points, degree)
        - embedded_class_sum(Partition((2, 2, 1)), points, degree)
        - octopus_X(i, j, k, l, degree)
    )


def x_hat() -> AlgebraElement:
    """X_{1,2,3,4} in QS_4."""
    return octopus_X(1, 2, 3, 4, 4)


def y_hat() -> AlgebraElement:
    """Y^5_{1,2,3,4} in QS_5."""
    return octopus_Y(1, 2, 3, 4, 5, 5)


def quartic_scalar(x: Sequence[Scalar]) -> Fraction:
    """Coefficient bracket of the identity in the square of the octopus element:
    sum x_i^4 + 2 sum_{i != j} x_i^3 x_j + 3 sum_{i<j} x_i^2 x_j^2.
    """
    x = [Fraction(v) for v in x]
    m = len(x)
    total = sum((v ** 4 for v in x), Fraction(0))
    for i in range(m):
        for j in range(m):
            if i != j:
                total += 2 * x[i] ** 3 * x[j]
    for i, j in itertools.combinations(range(m), 2):
        total += 3 * x[i] ** 2 * x[j] ** 2
    return total


def quartic_rhs(x: Sequence[Scalar], n: int) -> AlgebraElement:
    """Closed-form square of the octopus element as a quartic in x.

        (scalar bracket) 1
        + sum_{i not in {j,k}, j<k} x_i^2 x_j x_k (X_{i,j,k,n} + 2)
        + 2 sum_{i<j<k<l} x_i x_j x_k x_l Y^n_{i,j,k,l}

    Sums with too few indices are empty for small n.

    Raises:
        PreconditionError: If n < 3 or len(x) != n - 1.
    """
    if n < 3:
        raise PreconditionError(f"quartic_rhs needs n >= 3, got {n}")
    if len(x) != n - 1:
        raise PreconditionError(f"expected {n - 1} star weights for n = {n}, got {len(x)}")
    x = [Fraction(v) for v in x]
    one = identity_element(n)
    result = scale(one, quartic_scalar(x))
    for j, k in itertools.combinations(range(1, n), 2):
        for i in range(1, n):
            if i in (j, k):
                continue
            coeff = x[i - 1] ** 2 * x[j - 1] * x[k - 1]
            if coeff == 0:
                continue
            result = result + scale(octopus_X(i, j, k, n, n) + scale(one, 2), coeff)
    for i, j, k, l in itertools.combinations(range(1, n), 4):
        coeff = x[i - 1] * x[j - 1] * x[k - 1] * x[l - 1]
        if coeff == 0:
            continue
        result = result + scale(octopus_Y(i, j, k, l, n, n), 2 * coeff)
    logger.debug("quartic_rhs n=%d has %d terms", n, len(result))
    return result
