"""End-to-end experiments: each procedure recomputes one family of claims
about S_n and returns an ExperimentReport with every comparison recorded.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import (
    AlgebraElement,
    TranspositionWeights,
    class_sum,
    convolve,
    from_weights,
    lift,
    octopus_hat,
    quartic_rhs,
    scale,
    shuffle_sum,
    theta,
    trivial_eval,
    x_hat,
    y_hat,
)
from .errors import PreconditionError
from .kazhdan import (
    KazhdanConfig,
    cluster_start,
    conjclass_kazhdan_value,
    displacement_profile,
    kazhdan_rep_estimate,
    rem2_direct_sum_witness,
    cube_root_vector,
    sandwich_bounds,
    saturation_profile_check,
    standard_coordinates,
    strict_inequality_certificate,
    transposition_set,
)
from .reptheory import (
    character_table,
    defining_rep,
    dimension,
    irrep,
    mn_character,
    regular_rep,
    schur_scalar,
    standard_rep,
    transposition_ratio,
)
from .spectral import (
    gamma_member,
    gap_min,
    gap_rep,
    interlacing_check,
    semi_recursive_check,
    symmetric_spectrum,
)
from .symgroup import (
    Partition,
    branch_down,
    class_size,
    hook_partition,
    is_even_class,
    orbits,
    partitions_of,
    sign,
    transposition,
    transposition_class,
)
from .utils import (
    DEFAULT_MAX_DENOMINATOR,
    close_enough,
    float_to_json,
    fraction_to_json,
    get_subset_law,
    parallel_map,
    random_fraction,
    trial_rng,
)

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9

# Exact rows of the n = 4 table: alpha -> (f, chi(3,1), chi(2,2), X)
TABLE1_EXPECTED = {
    (4,): (1, 1, 1, 2),
    (3, 1): (3, 0, -1, 2),
    (2, 2): (2, -1, 2, -10),
}

# Exact rows of the n = 5 table: (alpha, beta) -> (f, chi(3,1,1), chi(2,2,1), X^beta, F, Y)
TABLE2_EXPECTED = {
    ((5,), (4,)): (1, 1, 1, 2, 3, 3),
    ((4, 1), (4,)): (4, 1, 0, 2, 3, 3),
    ((4, 1), (3, 1)): (4, 1, 0, 2, 3, 3),
    ((3, 2), (3, 1)): (5, -1, 1, 2, -9, 3),
    ((3, 2), (2, 2)): (5, -1, 1, -10, 3, 3),
    ((3, 1, 1), (3, 1)): (6, 0, -2, 2, 3, 3),
    ((3, 1, 1), (2, 1, 1)): (6, 0, -2, 2, 3, 3),
}


def _json_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return fraction_to_json(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (float, np.floating)):
        return float_to_json(float(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, Partition):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


@dataclass
class Check:
    """One comparison: both sides, the tolerance and the verdict."""

    name: str
    lhs: Any
    rhs: Any
    passed: bool
    tol: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _json_value(self.lhs),
            "rhs": _json_value(self.rhs),
            "tol": self.tol,
            "passed": bool(self.passed),
        }


def check_close(name: str, lhs: float, rhs: float, tol: float, relative: bool = False) -> Check:
    return Check(name, float(lhs), float(rhs), close_enough(float(lhs), float(rhs), tol, relative), tol)


def check_exact(name: str, lhs: Any, rhs: Any) -> Check:
    return Check(name, lhs, rhs, lhs == rhs)


def check_at_most(name: str, lhs: float, rhs: float, tol: float = 0.0) -> Check:
    return Check(name, lhs, rhs, lhs <= rhs + tol, tol)


@dataclass
class TrialRecord:
    """Checks for one trial plus the data needed to reproduce it."""

    index: int
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
        }


@dataclass
class ExperimentReport:
    """Result of one experiment; passes iff every trial passes."""

    experiment: str
    parameters: Dict[str, Any]
    trials: List[TrialRecord] = field(default_factory=list)
    witness: Optional[Dict[str, Any]] = None
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.trials)

    @property
    def failures(self) -> List[TrialRecord]:
        return [t for t in self.trials if not t.passed]

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "parameters": self.parameters,
            "passed": self.passed,
            "summary": self.summary,
            "witness": self.witness,
            "trials": [t.to_dict() for t in self.trials],
        }


WitnessCallback = Callable[[str, TrialRecord], None]


def _require_range(name: str, n: int, low: int, high: int):
    if not low <= n <= high:
        raise PreconditionError(f"{name} needs {low} <= n <= {high}, got n = {n}")


def _finish(report: ExperimentReport, on_failure: Optional[WitnessCallback]) -> ExperimentReport:
    failures = report.failures
    if failures:
        report.witness = failures[0].data
        logger.warning("%s: %d of %d trials failed", report.experiment, len(failures), len(report.trials))
        if on_failure is not None:
            for record in failures:
                on_failure(report.experiment, record)
    return report


# Random data


def random_octopus_weights(rng: np.random.Generator, n: int, density: float = 1.0) -> TranspositionWeights:
    """Random nonnegative weights with some positive w_in."""
    edges = {}
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if rng.random() < density:
            edges[(i, j)] = random_fraction(rng, DEFAULT_MAX_DENOMINATOR, allow_zero=True)
    W = TranspositionWeights(n, edges)
    if sum(W.star_weights()) == 0:
        k = int(rng.integers(1, n))
        edges[(k, n)] = random_fraction(rng)
        W = TranspositionWeights(n, edges)
    return W


def weights_connected(W: TranspositionWeights) -> bool:
    """Whether the positive edges connect 1..n (so supp w generates S_n)."""
    gens = [transposition(i, j, W.n) for i, j in W.positive_edges()]
    return len(orbits(gens, W.n)) == 1


def random_connected_weights(rng: np.random.Generator, n: int, density: float) -> TranspositionWeights:
    """Keep each edge with probability density, weight uniform in (0, 1];
    resample until the weight graph is connected."""
    while True:
        edges = {
            (i, j): random_fraction(rng)
            for i, j in itertools.combinations(range(1, n + 1), 2)
            if rng.random() < density
        }
        W = TranspositionWeights(n, edges)
        if weights_connected(W):
            return W


# Square of the octopus element


def verify_lemma_w2(n: int, trials: int = 25, seed: int = 0, threads: int = 1) -> ExperimentReport:
    """Exact equality of the squared octopus element with its quartic expansion."""
    _require_range("verify_lemma_w2", n, 3, 6)

    def trial(index: int) -> TrialRecord:
        rng = trial_rng(seed, index)
        if index == 0:
            x = [Fraction(1)] * (n - 1)
        else:
            # Every third trial may contain zero coordinates
            x = [random_fraction(rng, allow_zero=index % 3 == 2) for _ in range(n - 1)]
            if sum(x) == 0:
                x[0] = Fraction(1)
        hat = octopus_hat(TranspositionWeights.from_star(x))
        lhs = convolve(hat, hat)
        rhs = quartic_rhs(x, n)
        record = TrialRecord(index, data={"x": [fraction_to_json(v) for v in x]})
        record.checks.append(Check("square == quartic expansion", len(lhs), len(rhs), lhs == rhs))
        record.checks.append(check_exact("trivial value", trivial_eval(lhs), trivial_eval(hat) ** 2))
        return record

    report = ExperimentReport("lemma-w2", {"n": n, "trials": trials, "seed": seed})
    report.trials = parallel_map(trial, range(trials), threads)
    return report


# Tables


def table1(tol: float = DEFAULT_TOL) -> ExperimentReport:
    """Every X^alpha for alpha of 4, by characters and by diagonalization."""
    X = x_hat()
    total = trivial_eval(X)
    rows = []
    record = TrialRecord(0)
    record.checks.append(check_exact("I(X-hat)", total, Fraction(2)))
    for alpha in partitions_of(4):
        f = dimension(alpha)
        c31 = mn_character(alpha, Partition((3, 1)))
        c22 = mn_character(alpha, Partition((2, 2)))
        by_characters = Fraction(8 * c31 - 6 * c22, f)
        by_matrix = float(symmetric_spectrum(irrep(alpha).evaluate(X))[-1])
        rows.append({"alpha": alpha.to_json(), "f": f, "chi_31": c31, "chi_22": c22, "X": _json_value(by_characters)})
        expected = TABLE1_EXPECTED.get(alpha.parts)
        if expected is not None:
            record.checks.append(check_exact(f"row {alpha}", (f, c31, c22, by_characters), expected))
        record.checks.append(check_close(f"X^{alpha} eigenvalue", by_matrix, float(by_characters), tol))
        record.checks.append(check_at_most(f"X^{alpha} <= I(X-hat)", by_characters, total))
    report = ExperimentReport("table1", {"tol": tol}, [record])
    report.summary = {"rows": rows, "trivial_value": 2}
    return report


def table2(tol: float = DEFAULT_TOL) -> ExperimentReport:
    """Every F_{alpha beta} and Y^alpha for alpha of 5."""
    Y = y_hat()
    total = trivial_eval(Y)
    x_values = {beta: Fraction(8 * mn_character(beta, Partition((3, 1))) - 6 * mn_character(beta, Partition((2, 2))), dimension(beta))
                for beta in partitions_of(4)}
    rows = []
    record = TrialRecord(0)
    record.checks.append(check_exact("I(Y-hat)", total, Fraction(3)))
    for alpha in partitions_of(5):
        f = dimension(alpha)
        c311 = mn_character(alpha, Partition((3, 1, 1)))
        c221 = mn_character(alpha, Partition((2, 2, 1)))
        central = Fraction(20 * c311 - 15 * c221, f)
        F = {beta: central - x_values[beta] for beta in branch_children(alpha)}
        y_value = max(F.values())
        by_matrix = float(symmetric_spectrum(irrep(alpha).evaluate(Y))[-1])
        record.checks.append(check_close(f"Y^{alpha} eigenvalue", by_matrix, float(y_value), tol))
        record.checks.append(check_at_most(f"Y^{alpha} <= I(Y-hat)", y_value, total))
        for beta, value in F.items():
            row = (f, c311, c221, x_values[beta], value, y_value)
            rows.append({
                "alpha": alpha.to_json(), "beta": beta.to_json(), "f": f, "chi_311": c311, "chi_221": c221,
                "X_beta": _json_value(x_values[beta]), "F": _json_value(value), "Y": _json_value(y_value),
            })
            expected = TABLE2_EXPECTED.get((alpha.parts, beta.parts))
            if expected is not None:
                record.checks.append(check_exact(f"row {alpha} {beta}", row, expected))
    report = ExperimentReport("table2", {"tol": tol}, [record])
    report.summary = {"rows": rows, "trivial_value": 3}
    return report


def branch_children(alpha: Partition) -> List[Partition]:
    """branch_down(alpha) in lexicographically decreasing order."""
    return sorted(branch_down(alpha), reverse=True)


# Octopus inequality and spectral-gap identities


def verify_octopus(
    n: int,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    on_failure: Optional[WitnessCallback] = None,
    weights: Optional[TranspositionWeights] = None,
) -> ExperimentReport:
    """w - theta(w) lies in Gamma(S_n) for random nonnegative weights."""
    if weights is not None:
        n, trials = weights.n, 1
    _require_range("verify_octopus", n, 3, 7)

    def trial(index: int) -> TrialRecord:
        if weights is not None:
            W = weights
        elif index == 0:
            W = TranspositionWeights.from_star([1] * (n - 1))
        else:
            W = random_octopus_weights(trial_rng(seed, index), n)
        element = from_weights(W) - lift(from_weights(theta(W)), n)
        result = gamma_member(element, tol)
        record = TrialRecord(index, data={"weights": W.to_json(), "worst_partition": result.worst_partition.to_json()})
        record.checks.append(Check("min eigenvalue >= -tol", result.worst_eigenvalue, -tol, result.member, tol))
        return record

    report = ExperimentReport("octopus", {"n": n, "trials": trials, "seed": seed, "tol": tol})
    report.trials = parallel_map(trial, range(trials), threads)
    report.summary = {"worst_eigenvalue": min(t.checks[0].lhs for t in report.trials) if report.trials else None}
    return _finish(report, on_failure)


def verify_aldous(
    n: int,
    trials: int = 100,
    seed: int = 0,
    density: float = 0.5,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    on_failure: Optional[WitnessCallback] = None,
    weights: Optional[TranspositionWeights] = None,
) -> ExperimentReport:
    """psi(w) = psi(w, D_n) for random connected transposition weights."""
    if weights is not None:
        n, trials = weights.n, 1
    _require_range("verify_aldous", n, 3, 7)
    if weights is not None and not weights_connected(weights):
        raise PreconditionError("the weight graph must be connected so that supp w generates S_n")
    standard = hook_partition(n)

    def trial(index: int) -> TrialRecord:
        if weights is not None:
            W = weights
        elif index == 0:
            W = TranspositionWeights.complete(n)
        else:
            W = random_connected_weights(trial_rng(seed, index), n, density)
        w = from_weights(W)
        result = gap_min(w, tol)
        defining = gap_rep(w, defining_rep(n))
        record = TrialRecord(index, data={"weights": W.to_json(), "argmin": [p.to_json() for p in result.argmin]})
        record.checks.append(check_close("gap_min == defining gap", result.value, defining, tol, relative=True))
        record.checks.append(Check("(n-1,1) in argmin", str(standard), [str(p) for p in result.argmin], standard in result.argmin))
        if weights is None and index == 0:
            record.checks.append(check_close("complete graph gap == n", result.value, n, tol, relative=True))
        return record

    report = ExperimentReport("aldous", {"n": n, "trials": trials, "seed": seed, "density": density, "tol": tol})
    report.trials = parallel_map(trial, range(trials), threads)
    return _finish(report, on_failure)


def classsum_report(alpha: Partition, tol: float = DEFAULT_TOL, threads: int = 1) -> ExperimentReport:
    """Gaps of the class sum J^alpha on every irrep and on D_n.

    Each irrep gap is I(J) - |C| chi^beta(alpha) / f_beta (Schur); for
    n <= 6 it is recomputed from the explicit matrices. The report flags
    whether psi(J) = psi(J, D_n); a failure of that identity is a finding,
    not a failed check.
    """
    n = alpha.n
    _require_range("classsum_report", n, 2, 7)
    J = class_sum(alpha)
    size = class_size(alpha)
    parts = partitions_of(n)

    def schur_gap(beta: Partition) -> float:
        if len(beta.parts) == 1:
            return math.inf
        return float(size - schur_scalar(alpha, beta))

    schur = {beta: schur_gap(beta) for beta in parts}
    record = TrialRecord(0)
    if n <= 6:
        explicit = dict(zip(parts, parallel_map(lambda beta: gap_rep(J, irrep(beta)), parts, threads)))
        for beta in parts:
            record.checks.append(check_close(f"Schur vs matrix at {beta}", explicit[beta], schur[beta], tol, relative=True))
    if is_even_class(alpha) and n >= 2:
        sign_rep = Partition((1,) * n)
        record.checks.append(check_exact("even class gap at sign", size - schur_scalar(alpha, sign_rep), 0))
    value = min(schur.values())
    argmin = [beta for beta in parts if close_enough(schur[beta], value, tol, relative=True)]
    defining = gap_rep(J, defining_rep(n))
    identity_holds = close_enough(value, defining, tol, relative=True)

    report = ExperimentReport("classsum", {"alpha": alpha.to_json(), "n": n, "tol": tol}, [record])
    report.summary = {
        "class_size": size,
        "even_class": is_even_class(alpha),
        "gap_min": float_to_json(value),
        "argmin": [b.to_json() for b in argmin],
        "defining_gap": float_to_json(defining),
        "identity_holds": identity_holds,
        "per_irrep": [{"beta": b.to_json(), "gap": float_to_json(schur[b])} for b in parts],
    }
    return report


def _random_family(rng: np.random.Generator, n: int, law: Callable) -> List[Tuple[Tuple[int, ...], Fraction]]:
    count = int(rng.integers(1, n + 1))
    family = []
    for _ in range(count):
        size = law(rng, n)
        A = tuple(sorted(int(v) + 1 for v in rng.choice(n, size=size, replace=False)))
        family.append((A, random_fraction(rng)))
    return family


def family_generates(family: Sequence[Tuple[Tuple[int, ...], Fraction]], n: int) -> bool:
    """Whether supp(sum alpha_A J_{n,A}) generates S_n.

    Each A with |A| >= 2 contributes every transposition inside A, so the
    support is transitive iff the sets connect 1..n, and it then holds an
    odd permutation.
    """
    gens = [transposition(A[0], a, n) for A, c in family if c > 0 and len(A) >= 2 for a in A[1:]]
    if not gens or len(orbits(gens, n)) != 1:
        return False
    return any(sign(g) == -1 for g in gens)


def caputo_element(family: Sequence[Tuple[Tuple[int, ...], Fraction]], n: int) -> AlgebraElement:
    """w = sum_A alpha_A J_{n,A}."""
    w = AlgebraElement(n)
    for A, coeff in family:
        w = w + scale(shuffle_sum(A, n), coeff)
    return w


def caputo_trial(
    n: int,
    trials: int = 20,
    seed: int = 0,
    subset_law: str = "uniform",
    tol: float = 1e-8,
    threads: int = 1,
    on_failure: Optional[WitnessCallback] = None,
) -> ExperimentReport:
    """Compare psi(w) with psi(w, D_n) for random nonnegative combinations of
    shuffle sums. Agreement is tallied, never claimed; a disagreement is
    re-checked at a tighter tolerance (and on the regular representation
    when n <= 5) before it is reported.
    """
    _require_range("caputo_trial", n, 3, 6)
    law = get_subset_law(subset_law)

    def trial(index: int) -> TrialRecord:
        rng = trial_rng(seed, index)
        if index == 0:
            family = [(tuple(range(1, n + 1)), Fraction(1))]
        else:
            family = _random_family(rng, n, law)
            while not family_generates(family, n):
                family = _random_family(rng, n, law)
        w = caputo_element(family, n)
        result = gap_min(w, tol)
        defining = gap_rep(w, defining_rep(n))
        record = TrialRecord(index, data={
            "family": [{"A": list(A), "num": c.numerator, "den": c.denominator} for A, c in family],
            "gap_min": result.value,
            "defining_gap": defining,
            "argmin": [p.to_json() for p in result.argmin],
        })
        agree = close_enough(result.value, defining, tol, relative=True)
        if not agree:
            logger.warning("caputo trial %d: gap_min %.12g differs from defining gap %.12g", index, result.value, defining)
            tight = gap_min(w, tol / 10)
            record.data["recheck_gap_min"] = tight.value
            if n <= 5:
                record.data["regular_gap"] = gap_rep(w, regular_rep(n))
        record.checks.append(Check("gap_min == defining gap", result.value, defining, agree, tol))
        if index == 0:
            record.checks.append(check_close("full shuffle gap == n!", result.value, math.factorial(n), tol, relative=True))
        return record

    report = ExperimentReport("caputo", {"n": n, "trials": trials, "seed": seed, "subset_law": subset_law, "tol": tol})
    report.trials = parallel_map(trial, range(trials), threads)
    report.summary = {
        "agreements": sum(1 for t in report.trials if t.passed),
        "disagreements": len(report.failures),
    }
    return _finish(report, on_failure)


def verify_interlacing(
    n: int,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    on_failure: Optional[WitnessCallback] = None,
    weights: Optional[TranspositionWeights] = None,
) -> ExperimentReport:
    """Interlacing and the rank-one difference between Delta_n and Delta_n^theta."""
    if weights is not None:
        n, trials = weights.n, 1
    _require_range("verify_interlacing", n, 3, 7)

    def trial(index: int) -> TrialRecord:
        if weights is not None:
            W = weights
        elif index == 0:
            W = TranspositionWeights.from_star([1] * (n - 1))
        else:
            W = random_octopus_weights(trial_rng(seed, index), n)
        result = interlacing_check(W, tol)
        record = TrialRecord(index, data={"weights": W.to_json(), "spectra": result.to_dict()})
        record.checks.append(Check("interlacing", result.eigenvalues, result.theta_eigenvalues, result.interlacing, tol))
        record.checks.append(Check("rank-one difference", "delta delta^T / delta_n", "Delta_n - Delta_n^theta", result.rank_one, tol))
        record.checks.append(Check("zero last row and column", "Delta_n^theta", 0, result.zero_block, tol))
        record.checks.append(check_at_most("psi(w, D_n) <= psi(theta w, D_n-1)", result.gap_defining, result.gap_theta,
                                           tol * max(1.0, abs(result.gap_theta))))
        return record

    report = ExperimentReport("interlace", {"n": n, "trials": trials, "seed": seed, "tol": tol})
    report.trials = parallel_map(trial, range(trials), threads)
    return _finish(report, on_failure)


def verify_transposition_gap(n_max: int = 8, tol: float = DEFAULT_TOL, threads: int = 1) -> ExperimentReport:
    """psi_{S_n}(T_n) = n for n = 2..n_max, exactly by the Frobenius formula
    and numerically by diagonalization."""
    report = ExperimentReport("transposition-gap", {"n_max": n_max, "tol": tol})
    for n in range(2, n_max + 1):
        record = TrialRecord(n)
        size = n * (n - 1) // 2
        exact = min(size - transposition_ratio(beta) for beta in partitions_of(n) if len(beta.parts) > 1)
        record.checks.append(check_exact(f"Frobenius gap n={n}", exact, Fraction(n)))
        tclass = transposition_class(n)
        for beta in partitions_of(n):
            ratio = Fraction(class_size(tclass) * mn_character(beta, tclass), dimension(beta))
            record.checks.append(check_exact(f"ratio {beta}", transposition_ratio(beta), ratio))
        numeric = gap_min(class_sum(tclass), tol, threads)
        record.checks.append(check_close(f"diagonalized gap n={n}", numeric.value, n, tol, relative=True))
        report.trials.append(record)
    return report


def verify_semi_recursive(
    n: int,
    trials: int = 20,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    threads: int = 1,
    weights: Optional[TranspositionWeights] = None,
) -> ExperimentReport:
    """psi(w) >= min{psi(theta w), psi(w, D_n)} and the per-irrep
    restriction bounds, for random weights (or the given ones)."""
    if weights is not None:
        n, trials = weights.n, 1
    _require_range("verify_semi_recursive", n, 3, 7)

    def trial(index: int) -> TrialRecord:
        W = weights if weights is not None else random_octopus_weights(trial_rng(seed, index), n)
        result = semi_recursive_check(W, tol)
        record = TrialRecord(index, data={"weights": W.to_json(), "result": result.to_dict()})
        record.checks.append(Check("semi-recursive bound", float_to_json(result.gap), float_to_json(result.bound), result.holds, tol))
        record.checks.append(Check("restriction bounds", len(result.bounds), "all", result.bounds_hold, tol))
        return record

    report = ExperimentReport("semirec", {"n": n, "trials": trials, "seed": seed, "tol": tol})
    report.trials = parallel_map(trial, range(trials), threads)
    return report


def verify_coxeter_path(n: int, tol: float = DEFAULT_TOL, threads: int = 1) -> ExperimentReport:
    """Adjacent transpositions: psi = psi(D_n) = 2 - 2 cos(pi/n), at (n-1,1)."""
    _require_range("verify_coxeter_path", n, 2, 8)
    w = from_weights(TranspositionWeights.path(n))
    expected = 2.0 - 2.0 * math.cos(math.pi / n)
    result = gap_min(w, tol, threads)
    defining = gap_rep(w, defining_rep(n))
    record = TrialRecord(0, data={"argmin": [p.to_json() for p in result.argmin]})
    record.checks.append(check_close("gap_min == 2 - 2cos(pi/n)", result.value, expected, tol, relative=True))
    record.checks.append(check_close("defining gap == 2 - 2cos(pi/n)", defining, expected, tol, relative=True))
    record.checks.append(Check("(n-1,1) in argmin", str(hook_partition(n)), [str(p) for p in result.argmin],
                               hook_partition(n) in result.argmin))
    return ExperimentReport("coxeter", {"n": n, "tol": tol}, [record], summary={"gap": expected})


# Kazhdan constants

# Largest n for which the |S_n|-fold direct sum is built
DIRECT_SUM_MAX_DEGREE = 5


def kazhdan_experiment(n: int, config: Optional[KazhdanConfig] = None, tol: float = 1e-6) -> ExperimentReport:
    """Kazhdan checks for T_n on D': the exact class value, the n = 3 witness,
    an optimizer estimate with its sandwich and saturation checks, the
    direct-sum witness and, for n >= 4, the strictness certificate."""
    _require_range("kazhdan_experiment", n, 3, 7)
    config = config or KazhdanConfig()
    value = conjclass_kazhdan_value(n)
    T = transposition_set(n)
    D = standard_rep(n)
    record = TrialRecord(0)
    summary: Dict[str, Any] = {"class_value": value}

    if n == 3:
        profile = displacement_profile(defining_rep(3), T, cube_root_vector())
        for q, d in zip(T, profile):
            record.checks.append(check_close(f"cube-root vector displacement {q}", d, math.sqrt(2.0), 1e-10))

    estimate = kazhdan_rep_estimate(D, T, config, starts=[standard_coordinates(n, cluster_start(n))])
    summary["estimate"] = estimate.to_dict()
    low, high = sandwich_bounds(D, T)
    kappa_sq = estimate.kappa ** 2
    record.checks.append(check_at_most("2 psi / |Q| <= kappa^2", low, kappa_sq, tol))
    record.checks.append(check_at_most("kappa^2 <= 2 psi", kappa_sq, high, tol))
    saturation = saturation_profile_check(D, T, estimate, tol)
    summary["saturation"] = saturation.to_dict()
    record.checks.append(Check("saturated implies constant profile", saturation.saturated, saturation.profile_constant,
                               saturation.passed, tol))
    if n == 3:
        record.checks.append(check_close("optimizer matches 2/sqrt(n-1)", estimate.kappa, value, 1e-4))

    if n <= DIRECT_SUM_MAX_DEGREE:
        u = standard_coordinates(3, cube_root_vector()) if n == 3 else None
        witness = rem2_direct_sum_witness(n, u)
        summary["direct_sum"] = witness.to_dict()
        record.checks.append(Check("direct-sum profile spread", witness.spread, 0.0, witness.spread <= 1e-9, 1e-9))
        record.checks.append(check_close("direct-sum displacement", witness.value, value, 1e-6))

    if n >= 4:
        certificate = strict_inequality_certificate(n, config, estimate)
        summary["certificate"] = certificate.to_dict()
        record.checks.append(Check("strictness margin > 0", certificate.margin, 0.0, certificate.margin > 0))
        record.checks.append(check_at_most("lower bound <= optimizer value", certificate.lower_bound,
                                           certificate.estimate.kappa, 1e-9))

    report = ExperimentReport("kazhdan", {"n": n, "restarts": config.restarts, "seed": config.seed, "tol": tol}, [record])
    report.summary = summary
    return report


def character_table_report(n: int) -> ExperimentReport:
    """Character table of S_n with its exact sanity checks: row
    orthogonality and sum of f_beta^2 = n!."""
    _require_range("character_table_report", n, 1, 10)
    table = character_table(n)
    record = TrialRecord(0)
    record.checks.append(Check("row orthogonality", n, n, table.check_orthogonality()))
    record.checks.append(check_exact("sum f^2 == n!", sum(dimension(b) ** 2 for b in table.partitions), math.factorial(n)))
    report = ExperimentReport("chartable", {"n": n}, [record])
    report.summary = table.to_dict()
    return report
