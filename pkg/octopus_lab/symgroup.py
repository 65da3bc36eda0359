"""Permutations of {1..n}, partitions, conjugacy classes and the
combinatorial maps on partitions used throughout the package.

Composition convention: (p q)(i) = p(q(i)), the right factor acts first.
Indices are one-based everywhere.
"""

import itertools
import math
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import DegreeMismatchError, PreconditionError


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n} stored as its one-line image tuple.

    images[i - 1] is the image of i. Ordering is lexicographic on images,
    which is the canonical order used for serialization.
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise PreconditionError(f"images {images} are not a bijection of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: Tuple[int, ...]) -> "Permutation":
        # Skips validation; images must already be a bijection
        perm = object.__new__(cls)
        object.__setattr__(perm, "images", images)
        return perm

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> List[Tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element."""
        seen = set()
        result = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            current = self(start)
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self(current)
            if len(cycle) > 1 or include_fixed:
                result.append(tuple(cycle))
        return result

    def to_cycle_string(self) -> str:
        """One-line cycle notation such as "(1 3)(2 5)"; identity is "()"."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycles)

    def to_json(self) -> List[int]:
        return list(self.images)

    def __str__(self) -> str:
        return self.to_cycle_string()


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise PreconditionError(f"partition parts must be positive, got {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise PreconditionError(f"partition parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, index):
        return self.parts[index]

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(i: int, j: int, n: int) -> Permutation:
    """The transposition (i j) in S_n."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise PreconditionError(f"({i} {j}) is not a transposition of 1..{n}")
    images = list(range(1, n + 1))
    images[i - 1], images[j - 1] = j, i
    return Permutation(tuple(images))


def adjacent(i: int, n: int) -> Permutation:
    """The adjacent transposition s_i = (i, i+1)."""
    return transposition(i, i + 1, n)


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    """Build a permutation from disjoint cycles (c1 c2 ... ck): c1 -> c2 -> ... -> c1."""
    images = list(range(1, n + 1))
    touched = set()
    for cycle in cycles:
        for k, point in enumerate(cycle):
            if point in touched or not 1 <= point <= n:
                raise PreconditionError(f"cycles {cycles} are not disjoint cycles on 1..{n}")
            touched.add(point)
            images[point - 1] = cycle[(k + 1) % len(cycle)]
    return Permutation(tuple(images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as "(1 3)(2 5)" or "(1,3)"."""
    cycles = []
    for body in _CYCLE_RE.findall(text):
        points = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if points:
            cycles.append(points)
    return from_cycles(cycles, n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Group law: the permutation i -> p(q(i)).

    Raises:
        DegreeMismatchError: If the degrees differ.
    """
    if p.n != q.n:
        raise DegreeMismatchError(f"cannot compose degree {p.n} with degree {q.n}")
    return Permutation._trusted(tuple(p.images[v - 1] for v in q.images))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, v in enumerate(p.images, start=1):
        images[v - 1] = i
    return Permutation._trusted(tuple(images))


def conjugate_by(pi: Permutation, sigma: Permutation) -> Permutation:
    """pi sigma pi^-1: relabels each cycle point k of sigma as pi(k)."""
    return compose(compose(pi, sigma), inverse(pi))


def sign(p: Permutation) -> int:
    """+1 for even permutations, -1 for odd ones."""
    return -1 if sum(len(c) - 1 for c in p.cycles()) % 2 else 1


def cycle_type(p: Permutation) -> Partition:
    """Cycle partition of p, fixed points included."""
    lengths = sorted((len(c) for c in p.cycles(include_fixed=True)), reverse=True)
    return Partition(tuple(lengths))


def all_permutations(n: int) -> List[Permutation]:
    """All of S_n in lexicographic order of image tuples."""
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


def permutations_on(A: Iterable[int], n: int) -> List[Permutation]:
    """All permutations of {1..n} fixing every point outside A, in canonical order."""
    points = sorted(set(A))
    if points and not (1 <= points[0] and points[-1] <= n):
        raise PreconditionError(f"index set {points} is not inside 1..{n}")
    result = []
    for arrangement in itertools.permutations(points):
        images = list(range(1, n + 1))
        for source, target in zip(points, arrangement):
            images[source - 1] = target
        result.append(Permutation(tuple(images)))
    return sorted(result)


def _partitions_bounded(n: int, largest: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_tuple(n: int) -> Tuple[Partition, ...]:
    return tuple(Partition(parts) for parts in _partitions_bounded(n, n))


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n in lexicographically decreasing order.

    Raises:
        PreconditionError: If n < 1.
    """
    if n < 1:
        raise PreconditionError(f"partitions_of needs n >= 1, got {n}")
    return list(_partitions_tuple(n))


def content(alpha: Partition) -> Tuple[int, ...]:
    """alpha#: entry k-1 counts the parts equal to k, up to the largest part."""
    if not alpha.parts:
        return ()
    return tuple(alpha.parts.count(k) for k in range(1, alpha.parts[0] + 1))


def class_size(alpha: Partition) -> int:
    """|C^alpha| = n! / prod_k k^(alpha#_k) (alpha#_k)!, exact."""
    denominator = 1
    for k, mult in enumerate(content(alpha), start=1):
        denominator *= k ** mult * math.factorial(mult)
    return math.factorial(alpha.n) // denominator


def conjugate(alpha: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not alpha.parts:
        return alpha
    return Partition(tuple(sum(1 for p in alpha.parts if p > i) for i in range(alpha.parts[0])))


def is_even_class(alpha: Partition) -> bool:
    """Whether the class alpha consists of even permutations."""
    return sum(p - 1 for p in alpha.parts) % 2 == 0


def branch_down(alpha: Partition) -> List[Partition]:
    """Partitions of n-1 obtained by removing one box (branching rule).

    Raises:
        PreconditionError: If alpha is a partition of n < 2.
    """
    if alpha.n < 2:
        raise PreconditionError(f"branch_down needs n >= 2, got {alpha}")
    parts = alpha.parts
    result = []
    for i, part in enumerate(parts):
        following = parts[i + 1] if i + 1 < len(parts) else 0
        if part > following:
            child = list(parts)
            child[i] -= 1
            result.append(Partition(tuple(p for p in child if p > 0)))
    return result


def hook_partition(n: int) -> Partition:
    """(n-1, 1), the partition of the standard representation."""
    return Partition((n - 1, 1)) if n >= 2 else Partition((1,))


def transposition_class(n: int) -> Partition:
    """(2, 1^(n-2))."""
    return Partition((2,) + (1,) * (n - 2))


# Class-element cache (with thread lock)
_class_cache: Dict[Tuple[Partition, Tuple[int, ...], int], Tuple[Permutation, ...]] = {}
_class_cache_lock = threading.Lock()


def class_elements_on(alpha: Partition, A: Iterable[int], n: int = None) -> List[Permutation]:
    """Permutations of {1..n} fixing the complement of A whose restriction to
    A has cycle type alpha.

    Args:
        alpha: Partition of |A|.
        A: Index set.
        n: Degree; defaults to max(A).

    Raises:
        PreconditionError: If |A| differs from the size of alpha.
    """
    points = tuple(sorted(set(A)))
    if n is None:
        n = points[-1] if points else 0
    if len(points) != alpha.n:
        raise PreconditionError(f"|A| = {len(points)} but {alpha} is a partition of {alpha.n}")
    key = (alpha, points, n)
    with _class_cache_lock:
        cached = _class_cache.get(key)
    if cached is None:
        result = []
        for p in permutations_on(points, n):
            lengths = sorted((len(c) for c in p.cycles(include_fixed=True) if c[0] in points), reverse=True)
            if tuple(lengths) == alpha.parts:
                result.append(p)
        cached = tuple(result)
        with _class_cache_lock:
            _class_cache[key] = cached
    return list(cached)


def adjacent_factorization(p: Permutation) -> List[int]:
    """Word [a1, ..., ak] with p = s_a1 s_a2 ... s_ak, s_i = (i, i+1).

    Right-multiplying by s_i swaps positions i and i+1 of the image tuple, so
    bubble-sorting the images to the identity and reversing the swap list
    gives a reduced word (length = number of inversions).
    """
    images = list(p.images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(1, len(images)):
            if images[i - 1] > images[i]:
                images[i - 1], images[i] = images[i], images[i - 1]
                swaps.append(i)
                changed = True
    return swaps[::-1]


def recompose(word: Sequence[int], n: int) -> Permutation:
    """Product s_a1 s_a2 ... s_ak in S_n."""
    result = identity(n)
    for letter in word:
        result = compose(result, adjacent(letter, n))
    return result


def generated_subgroup(generators: Iterable[Permutation], n: int, limit: int = None) -> List[Permutation]:
    """Closure of the generators under composition (breadth first).

    Args:
        generators: Generating permutations of degree n.
        n: Degree.
        limit: Stop once this many elements are found.

    Returns:
        Elements found, identity first.
    """
    gens = sorted({g for g in generators if not g.is_identity()})
    start = identity(n)
    seen = {start}
    frontier = [start]
    while frontier:
        next_frontier = []
        for element in frontier:
            for g in gens:
                product = compose(g, element)
                if product not in seen:
                    seen.add(product)
                    next_frontier.append(product)
                    if limit is not None and len(seen) >= limit:
                        return list(seen)
        frontier = next_frontier
    return list(seen)


def orbits(generators: Iterable[Permutation], n: int) -> List[Tuple[int, ...]]:
    """Orbits of <generators> on {1..n}, via union-find."""
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for i, v in enumerate(g.images, start=1):
            ri, rv = find(i), find(v)
            if ri != rv:
                parent[max(ri, rv)] = min(ri, rv)
    groups: Dict[int, List[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    return [tuple(v) for _, v in sorted(groups.items())]


def generates_symmetric_group(generators: Iterable[Permutation], n: int) -> bool:
    """Whether the generators generate all of S_n.

    Cheap necessary conditions first (transitive action, an odd generator
    when n >= 2), then the exact closure.
    """
    gens = list(generators)
    if n == 1:
        return True
    if len(orbits(gens, n)) != 1:
        return False
    if all(sign(g) == 1 for g in gens):
        return False
    order = math.factorial(n)
    return len(generated_subgroup(gens, n, limit=order)) == order
