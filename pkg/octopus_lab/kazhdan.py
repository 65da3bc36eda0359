"""Kazhdan constants of S_n: per-representation estimates by minimax
optimization on the unit sphere, the exact value for the transposition
class, and the direct-sum and strictness checks around it.

For a generating set Q and a representation R,

    kappa(Q, R) = inf over unit v off V^G of max_q |R(q) v - v|.

Representations here are real orthogonal, so a complex vector v = x + iy
has |R(q)v - v|^2 = |(R(q) - I)x|^2 + |(R(q) - I)y|^2 and the search runs on
the unit sphere of the realified complement.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .algebra import AlgebraElement
from .config import DEFAULT_SEED
from .errors import InconclusiveError, InternalConsistencyError, PreconditionError
from .reptheory import DirectSumRep, UnitaryRep, standard_rep
from .spectral import gap_rep, laplacian
from .symgroup import Permutation, all_permutations, generates_symmetric_group, inverse, transposition
from .utils import parallel_map, trial_rng

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-10

# Largest degree for which generation of S_n by Q is checked by closure
GENERATION_CHECK_MAX_DEGREE = 7


@dataclass
class KazhdanConfig:
    """Optimizer settings for kazhdan_rep_estimate."""

    restarts: int = 32
    seed: int = DEFAULT_SEED
    temperatures: Tuple[float, ...] = (10.0, 1e2, 1e3, 1e4, 1e5)
    iterations: int = 200
    threads: int = 1


@dataclass
class KazhdanEstimate:
    """Best vector found for one (Q, R) pair; kappa is an upper bound."""

    rep: str
    generators: List[str]
    kappa: float
    witness: np.ndarray
    profile: List[float]
    restarts: int
    seed: int
    best_start: int = 0

    @property
    def spread(self) -> float:
        return max(self.profile) - min(self.profile)

    def to_dict(self) -> dict:
        return {
            "rep": self.rep,
            "generators": self.generators,
            "kappa": self.kappa,
            "witness": [[float(z.real), float(z.imag)] for z in self.witness],
            "profile": self.profile,
            "restarts": self.restarts,
            "seed": self.seed,
            "best_start": self.best_start,
        }


def transposition_set(n: int) -> List[Permutation]:
    """T_n: all transpositions of S_n in canonical order."""
    return sorted(transposition(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def generator_sum(Q: Sequence[Permutation]) -> AlgebraElement:
    """Symmetrized Q-hat = 1/2 sum_q (q + q^-1)."""
    half = Fraction(1, 2)
    terms = {}
    for q in Q:
        for g in (q, inverse(q)):
            terms[g] = terms.get(g, Fraction(0)) + half
    return AlgebraElement(Q[0].n, terms)


def displacement_profile(R: UnitaryRep, Q: Sequence[Permutation], v: np.ndarray) -> List[float]:
    """|R(q) v - v| for each q in Q, in the order given."""
    v = np.asarray(v, dtype=complex)
    return [float(np.linalg.norm(R.matrix(q) @ v - v)) for q in Q]


def displacement_max(R: UnitaryRep, Q: Sequence[Permutation], v: np.ndarray) -> float:
    """max over q of |R(q) v - v| for a unit vector v.

    Raises:
        PreconditionError: If v is not a unit vector.
    """
    norm = float(np.linalg.norm(np.asarray(v, dtype=complex)))
    if abs(norm - 1.0) > UNIT_TOL:
        raise PreconditionError(f"displacement needs a unit vector, |v| = {norm}")
    return max(displacement_profile(R, Q, v))


def _canonical_generators(R: UnitaryRep, Q: Sequence[Permutation]) -> List[Permutation]:
    if not Q:
        raise PreconditionError("the generating set Q is empty")
    gens = sorted(set(Q))
    if R.n <= GENERATION_CHECK_MAX_DEGREE and not generates_symmetric_group(gens, R.n):
        raise PreconditionError(f"Q does not generate S_{R.n}")
    return gens


class _SmoothedMax:
    """log-sum-exp smoothing of max_q u^T K_q u on the realified sphere."""

    def __init__(self, forms: np.ndarray):
        self.forms = forms
        self.k = forms.shape[1]

    def values(self, u: np.ndarray) -> np.ndarray:
        x, y = u[: self.k], u[self.k:]
        return np.einsum("qij,i,j->q", self.forms, x, x) + np.einsum("qij,i,j->q", self.forms, y, y)

    def smoothed(self, u: np.ndarray, beta: float) -> Tuple[float, np.ndarray, np.ndarray]:
        vals = self.values(u)
        top = float(vals.max())
        weights = np.exp(beta * (vals - top))
        total = float(weights.sum())
        return top + math.log(total) / beta, weights / total, vals

    def gradient(self, u: np.ndarray, probs: np.ndarray) -> np.ndarray:
        K = np.einsum("q,qij->ij", probs, self.forms)
        x, y = u[: self.k], u[self.k:]
        return 2.0 * np.concatenate([K @ x, K @ y])


def _descend(objective: _SmoothedMax, u: np.ndarray, config: KazhdanConfig) -> Tuple[np.ndarray, float]:
    """Projected gradient with backtracking over the temperature schedule.

    Returns the iterate with the smallest exact max seen.
    """
    best_u, best = u.copy(), float(objective.values(u).max())
    for beta in config.temperatures:
        step = 1.0
        F, probs, _ = objective.smoothed(u, beta)
        for _ in range(config.iterations):
            grad = objective.gradient(u, probs)
            tangent = grad - float(grad @ u) * u
            slope = float(tangent @ tangent)
            if slope < 1e-28:
                break
            accepted = False
            while step > 1e-12:
                candidate = u - step * tangent
                candidate /= np.linalg.norm(candidate)
                Fc, pc, vals = objective.smoothed(candidate, beta)
                if Fc <= F - 1e-4 * step * slope:
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                break
            u, F, probs = candidate, Fc, pc
            exact = float(vals.max())
            if exact < best:
                best_u, best = u.copy(), exact
            step = min(2.0 * step, 1.0)
    return best_u, best


def kazhdan_rep_estimate(
    R: UnitaryRep,
    Q: Sequence[Permutation],
    config: Optional[KazhdanConfig] = None,
    starts: Sequence[np.ndarray] = (),
) -> KazhdanEstimate:
    """Upper bound on kappa(Q, R) by multi-restart minimax descent.

    Random starts are drawn from trial_rng(seed, index); vectors in `starts`
    (complex, in the coordinates of R) are tried after them. Every iterate
    stays in the orthogonal complement of V^G. The best start wins, ties
    going to the lower index.

    Args:
        R: Representation.
        Q: Generating set.
        config: Optimizer settings.
        starts: Extra starting vectors.

    Returns:
        KazhdanEstimate whose witness is a unit vector off V^G.

    Raises:
        PreconditionError: If Q is empty or does not generate S_n, or R has
            only invariant vectors.
    """
    config = config or KazhdanConfig()
    gens = _canonical_generators(R, Q)
    basis = R.complement_basis()
    k = basis.shape[1]
    if k == 0:
        raise PreconditionError(f"representation {R.label} has only invariant vectors")

    forms = []
    for q in gens:
        A = basis.T @ R.matrix(q) @ basis
        forms.append(2.0 * np.eye(k) - A - A.T)
    objective = _SmoothedMax(np.array(forms))

    initial = []
    for index in range(config.restarts):
        u = trial_rng(config.seed, index).standard_normal(2 * k)
        initial.append(u / np.linalg.norm(u))
    for start in starts:
        coords = basis.T @ np.asarray(start, dtype=complex)
        u = np.concatenate([coords.real, coords.imag])
        if np.linalg.norm(u) < 1e-12:
            continue
        initial.append(u / np.linalg.norm(u))

    results = parallel_map(lambda u: _descend(objective, u, config), initial, config.threads)
    best_index = min(range(len(results)), key=lambda i: (results[i][1], i))
    u, value = results[best_index]
    witness = basis @ (u[:k] + 1j * u[k:])
    witness /= np.linalg.norm(witness)
    profile = displacement_profile(R, gens, witness)
    logger.debug("kazhdan %s: kappa^2=%.12f from start %d", R.label, value, best_index)
    return KazhdanEstimate(
        rep=R.label,
        generators=[q.to_cycle_string() for q in gens],
        kappa=max(profile),
        witness=witness,
        profile=profile,
        restarts=config.restarts,
        seed=config.seed,
        best_start=best_index,
    )


def conjclass_kazhdan_value(n: int) -> float:
    """kappa_{S_n}(T_n) = 2 / sqrt(n - 1)."""
    if n < 2:
        raise PreconditionError(f"conjclass_kazhdan_value needs n >= 2, got {n}")
    return 2.0 / math.sqrt(n - 1)


def planar_diameter_bound(n: int) -> float:
    """Lower bound sqrt(6/n) on kappa(T_n, D').

    A unit sum-zero u in C^n has displacement sqrt(2) |u_i - u_j| under (ij).
    By Jung's theorem the n points u_i lie in a disc of radius D/sqrt(3), D
    their diameter, so 1 <= sum |u_i - c|^2 <= n D^2 / 3 and
    max displacement^2 = 2 D^2 >= 6/n.
    """
    if n < 2:
        raise PreconditionError(f"planar_diameter_bound needs n >= 2, got {n}")
    return math.sqrt(6.0 / n)


def cube_root_vector() -> np.ndarray:
    """u = (1, e^{2 pi i/3}, e^{-2 pi i/3}) / sqrt(3) in C^3."""
    omega = np.exp(2j * np.pi / 3)
    return np.array([1.0, omega, np.conj(omega)]) / math.sqrt(3.0)


def cluster_start(n: int) -> np.ndarray:
    """Sum-zero unit vector in C^n whose coordinates sit on the three cube
    roots of unity (point k on root k mod 3), centred and normalized."""
    omega = np.exp(2j * np.pi / 3)
    u = np.array([omega ** (k % 3) for k in range(n)], dtype=complex)
    u -= u.mean()
    return u / np.linalg.norm(u)


def standard_coordinates(n: int, u: np.ndarray) -> np.ndarray:
    """Coordinates in standard_rep(n) of a sum-zero vector of C^n."""
    return standard_rep(n).basis.T @ np.asarray(u, dtype=complex)


@dataclass
class DirectSumWitness:
    """Displacement profile of U = (D'(g) u)_g in the |S_n|-fold direct sum."""

    n: int
    profile: List[float]
    expected: float
    tol: float = 1e-9

    @property
    def spread(self) -> float:
        return max(self.profile) - min(self.profile)

    @property
    def value(self) -> float:
        return self.profile[0]

    @property
    def passed(self) -> bool:
        return self.spread <= self.tol and abs(self.value - self.expected) <= 1e-6

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "profile": self.profile,
            "spread": self.spread,
            "value": self.value,
            "expected": self.expected,
            "passed": self.passed,
        }


def gap_minimizer(n: int) -> np.ndarray:
    """Unit eigenvector of Delta(T_n-hat, D') for its least eigenvalue."""
    D = standard_rep(n)
    delta = laplacian(generator_sum(transposition_set(n)), D)
    _, vectors = np.linalg.eigh(delta)
    return vectors[:, 0].astype(complex)


def rem2_direct_sum_witness(n: int, u: Optional[np.ndarray] = None, tol: float = 1e-9) -> DirectSumWitness:
    """Direct-sum vector with a q-independent displacement.

    With one copy of D' per group element, U = (D'(g) u)_g / sqrt(n!) has
    |R(q) U - U|^2 = (1/|T_n|) sum_t |D'(t) u - u|^2 for every transposition
    q, which equals 4/(n-1) when u minimizes the gap.

    Args:
        n: Degree, n >= 3.
        u: Unit vector in standard_rep(n) coordinates; defaults to a gap
            minimizer from the eigendecomposition.
        tol: Spread tolerance.

    Raises:
        PreconditionError: If u is not a unit gap minimizer.
    """
    if n < 3:
        raise PreconditionError(f"rem2_direct_sum_witness needs n >= 3, got {n}")
    D = standard_rep(n)
    T = transposition_set(n)
    u = gap_minimizer(n) if u is None else np.asarray(u, dtype=complex)
    if abs(np.linalg.norm(u) - 1.0) > UNIT_TOL:
        raise PreconditionError("u must be a unit vector")
    delta = laplacian(generator_sum(T), D)
    rayleigh = float(np.real(np.conj(u) @ delta @ u))
    if abs(rayleigh - n) > 1e-8:
        raise PreconditionError(f"u is not a gap minimizer: <Delta u, u> = {rayleigh}, gap is {n}")

    elements = all_permutations(n)
    big = DirectSumRep([D] * len(elements), label=f"{len(elements)} x standard")
    U = np.concatenate([D.matrix(g) @ u for g in elements]) / math.sqrt(len(elements))
    return DirectSumWitness(n, displacement_profile(big, T, U), conjclass_kazhdan_value(n), tol)


@dataclass
class StrictnessCertificate:
    """Certified kappa(T_n) < kappa(T_n, D') for n >= 4."""

    n: int
    class_value: float
    lower_bound: float
    margin: float
    estimate: KazhdanEstimate

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "class_value": self.class_value,
            "lower_bound": self.lower_bound,
            "margin": self.margin,
            "upper_bound": self.estimate.kappa,
            "estimate": self.estimate.to_dict(),
        }


def strict_inequality_certificate(
    n: int,
    config: Optional[KazhdanConfig] = None,
    estimate: Optional[KazhdanEstimate] = None,
) -> StrictnessCertificate:
    """Certificate that kappa_{S_n}(T_n) = 2/sqrt(n-1) < kappa(T_n, D').

    The margin is planar_diameter_bound(n) - 2/sqrt(n-1), rigorous for every
    unit vector. The optimizer supplies the upper bound and witness, which
    must sit above the lower bound. An estimate already computed for D' and
    T_n can be passed in; otherwise the optimizer runs here.

    Raises:
        PreconditionError: If n < 4 (equality holds at n = 3), or if the
            given estimate is not for D' and T_n.
        InconclusiveError: If the margin is not positive.
        InternalConsistencyError: If the optimizer beats the lower bound.
    """
    if n < 4:
        raise PreconditionError(f"strictness needs n >= 4 (equality holds for n = 3), got {n}")
    class_value = conjclass_kazhdan_value(n)
    lower = planar_diameter_bound(n)
    margin = lower - class_value
    if margin <= 0:
        raise InconclusiveError(f"no positive margin for n = {n}: {lower} <= {class_value}")
    D = standard_rep(n)
    T = transposition_set(n)
    if estimate is None:
        estimate = kazhdan_rep_estimate(D, T, config, starts=[standard_coordinates(n, cluster_start(n))])
    elif estimate.rep != D.label or len(estimate.witness) != D.dim or len(estimate.generators) != len(T):
        raise PreconditionError(
            f"estimate for {estimate.rep} of dimension {len(estimate.witness)} with {len(estimate.generators)} "
            f"generators does not match {D.label} of dimension {D.dim} with the {len(T)} transpositions"
        )
    if estimate.kappa < lower - 1e-9:
        raise InternalConsistencyError(f"optimizer value {estimate.kappa} is below the lower bound {lower}")
    return StrictnessCertificate(n, class_value, lower, margin, estimate)


@dataclass
class SaturationResult:
    """Whether |Q| kappa^2 = 2 psi, and whether the profile is constant."""

    saturated: bool
    profile_constant: bool
    kappa_sq: float
    two_psi: float
    size: int

    @property
    def passed(self) -> bool:
        return self.profile_constant or not self.saturated

    def to_dict(self) -> dict:
        return {
            "saturated": self.saturated,
            "profile_constant": self.profile_constant,
            "kappa_sq": self.kappa_sq,
            "two_psi": self.two_psi,
            "size": self.size,
            "passed": self.passed,
        }


def sandwich_bounds(R: UnitaryRep, Q: Sequence[Permutation]) -> Tuple[float, float]:
    """(2 psi / |Q|, 2 psi) with psi = psi(Q-hat, R); kappa^2 lies between."""
    psi = gap_rep(generator_sum(list(Q)), R)
    return 2.0 * psi / len(Q), 2.0 * psi


def saturation_profile_check(
    R: UnitaryRep, Q: Sequence[Permutation], estimate: KazhdanEstimate, tol: float = 1e-6
) -> SaturationResult:
    """If |Q| kappa^2 reaches 2 psi the witness must displace every q equally.

    A slack delta = |Q| kappa^2 - 2 psi bounds the spread of the squared
    displacements by delta, which is the test applied to the profile.
    """
    psi = gap_rep(generator_sum(list(Q)), R)
    kappa_sq = estimate.kappa ** 2
    slack = tol * max(1.0, 2.0 * psi)
    saturated = abs(len(Q) * kappa_sq - 2.0 * psi) <= slack
    squares = [d * d for d in estimate.profile]
    return SaturationResult(
        saturated=saturated,
        profile_constant=max(squares) - min(squares) <= slack + 1e-12,
        kappa_sq=kappa_sq,
        two_psi=2.0 * psi,
        size=len(Q),
    )
