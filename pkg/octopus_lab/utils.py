"""Utility functions shared by the experiments: RNG streams, random rationals,
subset-size laws and the worker pool."""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from .errors import PreconditionError

T = TypeVar("T")
R = TypeVar("R")

# Largest denominator used for random rational data
DEFAULT_MAX_DENOMINATOR = 64


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent random stream for one trial.

    The stream depends only on (seed, index), so a trial produces the same
    data whether the run is serial or spread over a worker pool.
    """
    return np.random.default_rng([int(seed), int(index)])


def random_fraction(
    rng: np.random.Generator,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    allow_zero: bool = False,
) -> Fraction:
    """Uniform-ish rational in (0, 1] (or [0, 1] with allow_zero).

    Args:
        rng: Random generator.
        max_denominator: Largest denominator drawn.
        allow_zero: Whether 0 may be returned.

    Returns:
        A Fraction with denominator at most max_denominator.
    """
    den = int(rng.integers(1, max_denominator + 1))
    low = 0 if allow_zero else 1
    num = int(rng.integers(low, den + 1))
    return Fraction(num, den)


def fraction_to_json(value: Fraction) -> dict:
    """Exact JSON form of a rational: {"num": p, "den": q}."""
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def float_to_json(value: float):
    """JSON-safe float; infinities become the string "inf"."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return float(value)


def close_enough(lhs: float, rhs: float, tol: float, relative: bool = False) -> bool:
    """Compare two extended reals.

    Args:
        lhs: First value (may be +inf).
        rhs: Second value (may be +inf).
        tol: Absolute tolerance, or relative when relative=True.
        relative: Scale tol by max(1, |rhs|).

    Returns:
        True when the values agree within tolerance.
    """
    if math.isinf(lhs) or math.isinf(rhs):
        return lhs == rhs
    scale = max(1.0, abs(rhs)) if relative else 1.0
    return abs(lhs - rhs) <= tol * scale


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = 1) -> List[R]:
    """Map fn over items, optionally on a thread pool.

    Results come back in input order regardless of completion order.

    Args:
        fn: Function applied to each item.
        items: Inputs.
        threads: Worker count; None or values <= 1 run sequentially.

    Returns:
        List of results.
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(fn, items))


# Subset-size laws for shuffle-sum families.
# Each law maps (rng, n) to a subset size in 2..n.

def law_uniform(rng: np.random.Generator, n: int) -> int:
    """Sizes uniform over 2..n."""
    return int(rng.integers(2, n + 1))


def law_pairs(rng: np.random.Generator, n: int) -> int:
    """Always 2: the family is a weighted transposition set."""
    return 2


def law_small(rng: np.random.Generator, n: int) -> int:
    """Sizes 2 or 3, favouring 2."""
    return 2 if rng.random() < 0.7 or n < 3 else 3


def law_full(rng: np.random.Generator, n: int) -> int:
    """Always n: every shuffle of the whole set."""
    return n


SUBSET_LAW_FUNCTIONS = {
    "uniform": law_uniform,
    "pairs": law_pairs,
    "small": law_small,
    "full": law_full,
}

SUBSET_LAW_NAMES = list(SUBSET_LAW_FUNCTIONS.keys())


def get_subset_law(name: str) -> Callable[[np.random.Generator, int], int]:
    """Get a subset-size law by name.

    Args:
        name: Name of the law.

    Returns:
        The law.

    Raises:
        PreconditionError: If no law has that name.
    """
    if name not in SUBSET_LAW_FUNCTIONS:
        raise PreconditionError(f"unknown subset law '{name}', expected one of {SUBSET_LAW_NAMES}")
    return SUBSET_LAW_FUNCTIONS[name]


def sum_zero_basis(size: int) -> np.ndarray:
    """Orthonormal basis of {v : sum(v) = 0} in R^size (Helmert columns).

    Column k (0-based) is (1, ..., 1, -(k+1), 0, ..., 0) / sqrt((k+1)(k+2))
    with k+1 leading ones.
    """
    basis = np.zeros((size, max(size - 1, 0)))
    for k in range(1, size):
        basis[:k, k - 1] = 1.0
        basis[k, k - 1] = -float(k)
        basis[:, k - 1] /= math.sqrt(k * (k + 1))
    return basis


