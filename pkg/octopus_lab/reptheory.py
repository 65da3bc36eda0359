"""Characters, dimensions and explicit orthogonal representations of S_n."""

import csv
import io
import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraElement
from .errors import DegreeMismatchError, InternalConsistencyError, PreconditionError
from .symgroup import (
    Partition,
    Permutation,
    adjacent,
    all_permutations,
    branch_down,
    class_size,
    compose,
    from_cycles,
    identity,
    partitions_of,
)
from .utils import sum_zero_basis

logger = logging.getLogger(__name__)

# Largest degree for which the regular representation is built explicitly
REGULAR_REP_MAX_DEGREE = 6

RELATION_TOL = 1e-10


def dimension(beta: Partition) -> int:
    """Number of standard Young tableaux of shape beta (hook-length formula)."""
    conj = [sum(1 for p in beta.parts if p > c) for c in range(beta.parts[0])] if beta.parts else []
    hooks = 1
    for r, part in enumerate(beta.parts):
        for c in range(part):
            hooks *= (part - c - 1) + (conj[c] - r - 1) + 1
    return math.factorial(beta.n) // hooks


def _beads(parts: Tuple[int, ...]) -> Tuple[int, ...]:
    r = len(parts)
    return tuple(parts[i] + (r - 1 - i) for i in range(r))


def _from_beads(beads: Sequence[int]) -> Tuple[int, ...]:
    ordered = sorted(beads, reverse=True)
    r = len(ordered)
    return tuple(p for p in (ordered[i] - (r - 1 - i) for i in range(r)) if p > 0)


@lru_cache(maxsize=None)
def _mn(beta: Tuple[int, ...], alpha: Tuple[int, ...]) -> int:
    if not alpha:
        return 1 if not beta else 0
    k, rest = alpha[0], alpha[1:]
    beads = set(_beads(beta))
    total = 0
    for b in beads:
        target = b - k
        if target < 0 or target in beads:
            continue
        # Sign is (-1)^(leg length): beads strictly between target and b
        between = sum(1 for c in beads if target < c < b)
        child = _from_beads((beads - {b}) | {target})
        total += (-1) ** between * _mn(child, rest)
    return total


def mn_character(beta: Partition, alpha: Partition) -> int:
    """chi^beta on the class of cycle type alpha (Murnaghan-Nakayama rule).

    Border strips are removed through beta-numbers: removing a strip of
    length k moves one bead from b to b - k.

    Raises:
        DegreeMismatchError: If beta and alpha partition different integers.
    """
    if beta.n != alpha.n:
        raise DegreeMismatchError(f"{beta} and {alpha} partition different integers")
    return _mn(beta.parts, alpha.parts)


def transposition_ratio(beta: Partition) -> Fraction:
    """|T_n| chi^beta(2,1^(n-2)) / f_beta via the Frobenius formula:
    1/2 sum_i beta_i (beta_i - (2i - 1)).
    """
    return Fraction(sum(b * (b - (2 * i - 1)) for i, b in enumerate(beta.parts, start=1)), 2)


def class_representative(alpha: Partition) -> Permutation:
    """Canonical element of C^alpha: consecutive cycles (1..a1)(a1+1..)..."""
    cycles = []
    start = 1
    for part in alpha.parts:
        cycles.append(list(range(start, start + part)))
        start += part
    return from_cycles(cycles, alpha.n)


@dataclass
class CharacterTable:
    """Exact character table of S_n; rows are irreps, columns classes."""

    n: int
    partitions: List[Partition]
    values: Dict[Tuple[Partition, Partition], int] = field(default_factory=dict)

    def value(self, beta: Partition, alpha: Partition) -> int:
        return self.values[(beta, alpha)]

    def row(self, beta: Partition) -> List[int]:
        return [self.values[(beta, alpha)] for alpha in self.partitions]

    def check_orthogonality(self) -> bool:
        """Row orthogonality sum_alpha |C^alpha| chi^b chi^b' = n! delta, exactly."""
        order = math.factorial(self.n)
        sizes = {alpha: class_size(alpha) for alpha in self.partitions}
        for i, b1 in enumerate(self.partitions):
            for b2 in self.partitions[i:]:
                inner = sum(sizes[a] * self.values[(b1, a)] * self.values[(b2, a)] for a in self.partitions)
                if inner != (order if b1 == b2 else 0):
                    logger.warning("orthogonality fails for rows %s, %s: %d", b1, b2, inner)
                    return False
        return True

    def to_csv(self) -> str:
        """CSV with one row per irrep and one column per class."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["beta"] + [str(alpha) for alpha in self.partitions])
        for beta in self.partitions:
            writer.writerow([str(beta)] + self.row(beta))
        return buffer.getvalue()

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": [a.to_json() for a in self.partitions],
            "rows": [{"beta": b.to_json(), "values": self.row(b)} for b in self.partitions],
        }


_table_cache: Dict[int, CharacterTable] = {}
_table_cache_lock = threading.Lock()


def character_table(n: int) -> CharacterTable:
    """Character table of S_n, built once per degree."""
    with _table_cache_lock:
        cached = _table_cache.get(n)
    if cached is not None:
        return cached
    parts = partitions_of(n)
    table = CharacterTable(n, parts, {(b, a): mn_character(b, a) for b in parts for a in parts})
    with _table_cache_lock:
        _table_cache[n] = table
    return table


class UnitaryRep:
    """Real orthogonal representation of S_n given by the images of the
    adjacent transpositions s_1 .. s_{n-1}.

    Subclasses may override matrix() when they can build R(g) directly.
    """

    def __init__(self, n: int, dim: int, label: str, generator_matrices: Sequence[np.ndarray]):
        if len(generator_matrices) != max(n - 1, 0):
            raise PreconditionError(f"need {n - 1} generator matrices, got {len(generator_matrices)}")
        self.n = n
        self.dim = dim
        self.label = label
        self.generator_matrices = [np.asarray(m, dtype=float) for m in generator_matrices]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, dim={self.dim}, label={self.label!r})"

    def _memo_matrix(self, g: Permutation, memo: Dict[Permutation, np.ndarray]) -> np.ndarray:
        # R(g) = R(g s_i) M_i for the first descent i of g
        chain = []
        current = g
        while current not in memo:
            images = current.images
            i = next(k for k in range(1, len(images)) if images[k - 1] > images[k])
            chain.append((current, i))
            swapped = list(images)
            swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
            current = Permutation._trusted(tuple(swapped))
        for perm, i in reversed(chain):
            swapped = list(perm.images)
            swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
            memo[perm] = memo[Permutation._trusted(tuple(swapped))] @ self.generator_matrices[i - 1]
        return memo[g]

    def _new_memo(self) -> Dict[Permutation, np.ndarray]:
        return {identity(self.n): np.eye(self.dim)}

    def matrix(self, g: Permutation) -> np.ndarray:
        """R(g)."""
        if g.n != self.n:
            raise DegreeMismatchError(f"{g} has degree {g.n}, representation has degree {self.n}")
        return self._memo_matrix(g, self._new_memo())

    def evaluate(self, a: AlgebraElement) -> np.ndarray:
        """R(a) = sum_g a_g R(g); R(g) is memoized for the duration of the call."""
        if a.n != self.n:
            raise DegreeMismatchError(f"element has degree {a.n}, representation has degree {self.n}")
        memo = self._new_memo()
        result = np.zeros((self.dim, self.dim))
        for g, c in a.items():
            result += float(c) * self._memo_matrix(g, memo)
        return result

    def check_relations(self, tol: float = RELATION_TOL) -> List[str]:
        """Coxeter relations of the generator matrices; returns the failures."""
        failures = []
        eye = np.eye(self.dim)
        gens = self.generator_matrices
        for i, m in enumerate(gens, start=1):
            if not np.allclose(m @ m.T, eye, atol=tol):
                failures.append(f"s_{i} is not orthogonal")
            if not np.allclose(m @ m, eye, atol=tol):
                failures.append(f"s_{i} does not square to the identity")
        for i in range(len(gens) - 1):
            a, b = gens[i], gens[i + 1]
            if not np.allclose(a @ b @ a, b @ a @ b, atol=tol):
                failures.append(f"braid relation fails at s_{i + 1}")
        for i in range(len(gens)):
            for j in range(i + 2, len(gens)):
                if not np.allclose(gens[i] @ gens[j], gens[j] @ gens[i], atol=tol):
                    failures.append(f"s_{i + 1} and s_{j + 1} do not commute")
        return failures

    def trivial_multiplicity(self) -> int:
        """Multiplicity of the trivial irrep, (1/n!) sum_g trace R(g), summed by class."""
        total = 0.0
        for alpha in partitions_of(self.n):
            total += class_size(alpha) * np.trace(self.matrix(class_representative(alpha)))
        return int(round(total / math.factorial(self.n)))

    def invariant_basis(self) -> np.ndarray:
        """Orthonormal columns spanning V^G: the common fixed space of the generators."""
        if not self.generator_matrices:
            return np.eye(self.dim)
        stacked = np.vstack([m - np.eye(self.dim) for m in self.generator_matrices])
        _, singular, vt = np.linalg.svd(stacked)
        rank = int(np.sum(singular > 1e-9))
        basis = vt[rank:].T
        expected = self.trivial_multiplicity()
        if basis.shape[1] != expected:
            raise InternalConsistencyError(
                f"{self.label}: fixed space has dimension {basis.shape[1]}, characters give {expected}"
            )
        return basis

    def complement_basis(self) -> np.ndarray:
        """Orthonormal columns spanning the orthogonal complement of V^G."""
        invariant = self.invariant_basis()
        if invariant.shape[1] == 0:
            return np.eye(self.dim)
        _, _, vt = np.linalg.svd(invariant.T)
        return vt[invariant.shape[1]:].T

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "dim": self.dim,
            "generators": [m.ravel().tolist() for m in self.generator_matrices],
        }


def standard_tableaux(beta: Partition) -> List[Tuple[Tuple[int, int], ...]]:
    """Standard Young tableaux of shape beta.

    Each tableau is the tuple of (row, col) positions of 1..n, zero-based.
    Entry n goes into each removable corner in branch_down order.
    """
    return list(_tableaux(beta.parts))


@lru_cache(maxsize=None)
def _tableaux(parts: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    n = sum(parts)
    if n == 0:
        return ((),)
    result = []
    for child in branch_down(Partition(parts)) if n >= 2 else [Partition(())]:
        # The removed box is the one row where child is shorter
        padded = child.parts + (0,) * (len(parts) - len(child.parts))
        row = next(r for r in range(len(parts)) if padded[r] != parts[r])
        for tableau in _tableaux(child.parts):
            result.append(tableau + ((row, parts[row] - 1),))
    return tuple(result)


class YoungOrthogonalRep(UnitaryRep):
    """Irreducible representation T^beta in Young's orthogonal form."""

    # Class-level cache for irreps (with thread lock)
    _irrep_cache: dict = {}
    _irrep_cache_lock = threading.Lock()

    def __init__(self, beta: Partition):
        self.partition = beta
        tableaux = standard_tableaux(beta)
        index = {t: k for k, t in enumerate(tableaux)}
        n = beta.n
        gens = []
        for i in range(1, n):
            m = np.zeros((len(tableaux), len(tableaux)))
            for k, t in enumerate(tableaux):
                (r1, c1), (r2, c2) = t[i - 1], t[i]
                axial = (c2 - r2) - (c1 - r1)
                m[k, k] = 1.0 / axial
                if abs(axial) > 1:
                    swapped = list(t)
                    swapped[i - 1], swapped[i] = t[i], t[i - 1]
                    m[index[tuple(swapped)], k] = math.sqrt(1.0 - 1.0 / axial ** 2)
            gens.append(m)
        super().__init__(n, len(tableaux), str(beta), gens)

    def trivial_multiplicity(self) -> int:
        return 1 if len(self.partition.parts) == 1 else 0

    def invariant_basis(self) -> np.ndarray:
        return np.eye(1) if self.trivial_multiplicity() else np.zeros((self.dim, 0))

    def complement_basis(self) -> np.ndarray:
        return np.zeros((1, 0)) if self.trivial_multiplicity() else np.eye(self.dim)

    @classmethod
    def get(cls, beta: Partition) -> "YoungOrthogonalRep":
        # Thread-safe cache access for parallel spectral sweeps
        with cls._irrep_cache_lock:
            cached = cls._irrep_cache.get(beta)
        if cached is None:
            cached = cls(beta)
            with cls._irrep_cache_lock:
                cls._irrep_cache[beta] = cached
        return cached


def irrep(beta: Partition) -> YoungOrthogonalRep:
    """The irrep T^beta, cached per partition."""
    return YoungOrthogonalRep.get(beta)


class PermutationRep(UnitaryRep):
    """Representation by permutation matrices of an S_n-action on points.

    Subclasses implement point_images(g): the image index of each point.
    """

    def __init__(self, n: int, size: int, label: str):
        self.size = size
        gens = [self._permutation_matrix(self.point_images(adjacent(i, n))) for i in range(1, n)]
        super().__init__(n, size, label, gens)

    def point_images(self, g: Permutation) -> Sequence[int]:
        raise NotImplementedError

    def _permutation_matrix(self, targets: Sequence[int]) -> np.ndarray:
        m = np.zeros((self.size, self.size))
        m[list(targets), list(range(self.size))] = 1.0
        return m

    def matrix(self, g: Permutation) -> np.ndarray:
        if g.n != self.n:
            raise DegreeMismatchError(f"{g} has degree {g.n}, representation has degree {self.n}")
        return self._permutation_matrix(self.point_images(g))

    def evaluate(self, a: AlgebraElement) -> np.ndarray:
        if a.n != self.n:
            raise DegreeMismatchError(f"element has degree {a.n}, representation has degree {self.n}")
        result = np.zeros((self.size, self.size))
        columns = list(range(self.size))
        for g, c in a.items():
            result[list(self.point_images(g)), columns] += float(c)
        return result

    def point_orbits(self) -> List[List[int]]:
        """Orbits of the action on point indices."""
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(1, self.n):
            for source, target in enumerate(self.point_images(adjacent(i, self.n))):
                a, b = find(source), find(target)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: Dict[int, List[int]] = {}
        for k in range(self.size):
            groups.setdefault(find(k), []).append(k)
        return [groups[key] for key in sorted(groups)]

    def trivial_multiplicity(self) -> int:
        # Burnside: the trivial multiplicity of a permutation rep is its orbit count
        return len(self.point_orbits())

    def invariant_basis(self) -> np.ndarray:
        basis = np.zeros((self.size, 0))
        columns = []
        for orbit in self.point_orbits():
            v = np.zeros(self.size)
            v[orbit] = 1.0 / math.sqrt(len(orbit))
            columns.append(v)
        return np.column_stack(columns) if columns else basis

    def complement_basis(self) -> np.ndarray:
        """Sum-zero (Helmert) basis on each orbit."""
        columns = []
        for orbit in self.point_orbits():
            local = sum_zero_basis(len(orbit))
            for k in range(local.shape[1]):
                v = np.zeros(self.size)
                v[orbit] = local[:, k]
                columns.append(v)
        return np.column_stack(columns) if columns else np.zeros((self.size, 0))


class DefiningRep(PermutationRep):
    """D_n: S_n permuting the coordinates of R^n."""

    def __init__(self, n: int):
        super().__init__(n, n, "defining")

    def point_images(self, g: Permutation) -> Sequence[int]:
        return [v - 1 for v in g.images]


class RegularRep(PermutationRep):
    """Left regular representation L(g) e_h = e_{gh}."""

    def __init__(self, n: int):
        if n > REGULAR_REP_MAX_DEGREE:
            raise PreconditionError(
                f"regular representation is capped at n <= {REGULAR_REP_MAX_DEGREE}, got n = {n}"
            )
        self.elements = all_permutations(n)
        self.index = {g: k for k, g in enumerate(self.elements)}
        super().__init__(n, len(self.elements), "regular")

    def point_images(self, g: Permutation) -> Sequence[int]:
        return [self.index[compose(g, h)] for h in self.elements]


class RestrictedRep(UnitaryRep):
    """Restriction of a representation to an invariant subspace with
    orthonormal basis B (columns): R'(g) = B^T R(g) B.
    """

    def __init__(self, parent: UnitaryRep, basis: np.ndarray, label: str, trivial: int = 0):
        self.parent = parent
        self.basis = basis
        self._trivial = trivial
        gens = [basis.T @ m @ basis for m in parent.generator_matrices]
        super().__init__(parent.n, basis.shape[1], label, gens)

    def matrix(self, g: Permutation) -> np.ndarray:
        return self.basis.T @ self.parent.matrix(g) @ self.basis

    def evaluate(self, a: AlgebraElement) -> np.ndarray:
        return self.basis.T @ self.parent.evaluate(a) @ self.basis

    def trivial_multiplicity(self) -> int:
        return self._trivial

    def invariant_basis(self) -> np.ndarray:
        if self._trivial:
            return super().invariant_basis()
        return np.zeros((self.dim, 0))

    def complement_basis(self) -> np.ndarray:
        if self._trivial:
            return super().complement_basis()
        return np.eye(self.dim)


class DirectSumRep(UnitaryRep):
    """Block-diagonal direct sum of representations of the same S_n."""

    def __init__(self, parts: Sequence[UnitaryRep], label: Optional[str] = None):
        if not parts:
            raise PreconditionError("direct sum of no representations")
        n = parts[0].n
        if any(p.n != n for p in parts):
            raise DegreeMismatchError("summands act on different symmetric groups")
        self.parts = list(parts)
        dims = [p.dim for p in parts]
        self.offsets = np.cumsum([0] + dims)
        gens = []
        for i in range(n - 1):
            m = np.zeros((sum(dims), sum(dims)))
            for p, lo, hi in zip(parts, self.offsets[:-1], self.offsets[1:]):
                m[lo:hi, lo:hi] = p.generator_matrices[i]
            gens.append(m)
        super().__init__(n, sum(dims), label or " + ".join(p.label for p in parts), gens)

    def _blocks(self, blocks: List[np.ndarray]) -> np.ndarray:
        result = np.zeros((self.dim, self.dim))
        for block, lo, hi in zip(blocks, self.offsets[:-1], self.offsets[1:]):
            result[lo:hi, lo:hi] = block
        return result

    def matrix(self, g: Permutation) -> np.ndarray:
        return self._blocks([p.matrix(g) for p in self.parts])

    def evaluate(self, a: AlgebraElement) -> np.ndarray:
        return self._blocks([p.evaluate(a) for p in self.parts])

    def trivial_multiplicity(self) -> int:
        return sum(p.trivial_multiplicity() for p in self.parts)


def defining_rep(n: int) -> DefiningRep:
    """D_n.

    Raises:
        PreconditionError: If n < 2.
    """
    if n < 2:
        raise PreconditionError(f"defining_rep needs n >= 2, got {n}")
    return DefiningRep(n)


def regular_rep(n: int) -> RegularRep:
    """The left regular representation, n <= 6."""
    if n < 2:
        raise PreconditionError(f"regular_rep needs n >= 2, got {n}")
    return RegularRep(n)


def standard_rep(n: int) -> RestrictedRep:
    """D': the defining representation on the sum-zero hyperplane, in
    Helmert coordinates. Equivalent to T^(n-1,1).
    """
    parent = defining_rep(n)
    return RestrictedRep(parent, sum_zero_basis(n), "standard")


def evaluate(R: UnitaryRep, a: AlgebraElement) -> np.ndarray:
    """R(a) = sum_g a_g R(g)."""
    return R.evaluate(a)


def trivial_multiplicity(R: UnitaryRep) -> int:
    return R.trivial_multiplicity()


def schur_scalar(alpha: Partition, beta: Partition) -> Fraction:
    """The scalar by which T^beta(J^alpha) acts: |C^alpha| chi^beta(alpha) / f_beta."""
    return Fraction(class_size(alpha) * mn_character(beta, alpha), dimension(beta))
