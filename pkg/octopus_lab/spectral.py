"""Representation Laplacians, spectral gaps, Gamma(G) membership and
eigenvalue interlacing under the reduction map theta.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .algebra import (
    AlgebraElement,
    TranspositionWeights,
    from_weights,
    is_positive_symmetric,
    is_symmetric,
    lift,
    theta,
    trivial_eval,
)
from .errors import AsymmetricMatrixError, DegreeMismatchError, NotPositiveSymmetricError, PreconditionError
from .reptheory import UnitaryRep, defining_rep, irrep, regular_rep
from .symgroup import Partition, branch_down, partitions_of
from .utils import float_to_json, parallel_map

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9

SYMMETRY_TOL = 1e-10


def symmetric_spectrum(M: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric matrix.

    Raises:
        AsymmetricMatrixError: If M deviates from M^T by more than tol.
    """
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return np.zeros(0)
    deviation = float(np.max(np.abs(M - M.T)))
    if deviation > tol * max(1.0, float(np.max(np.abs(M)))):
        raise AsymmetricMatrixError(f"matrix is not symmetric (max |M - M^T| = {deviation:.3e})")
    return np.linalg.eigvalsh(M)


def laplacian(a: AlgebraElement, R: UnitaryRep) -> np.ndarray:
    """Delta(a, R) = I(a) Id - R(a).

    Raises:
        PreconditionError: If a is not star-invariant.
        DegreeMismatchError: If a and R live on different groups.
    """
    if a.n != R.n:
        raise DegreeMismatchError(f"element has degree {a.n}, representation has degree {R.n}")
    if not is_symmetric(a):
        raise PreconditionError("laplacian needs a star-invariant element (a_g = a_{g^-1})")
    M = float(trivial_eval(a)) * np.eye(R.dim) - R.evaluate(a)
    return 0.5 * (M + M.T)


def _restricted_min(delta: np.ndarray, basis: np.ndarray) -> float:
    if basis.shape[1] == 0:
        return math.inf
    return float(symmetric_spectrum(basis.T @ delta @ basis)[0])


def _require_positive_symmetric(a: AlgebraElement):
    if not is_positive_symmetric(a):
        raise NotPositiveSymmetricError("spectral gaps need a positive symmetric element (a_g = a_{g^-1} >= 0)")


@dataclass
class SpectrumReport:
    """Spectrum of one representation Laplacian."""

    rep: str
    eigenvalues: List[float]
    trivial_removed: int
    gap: float
    tol: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return {
            "rep": self.rep,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "trivial_removed": self.trivial_removed,
            "gap": float_to_json(self.gap),
            "tol": self.tol,
        }


def spectrum_report(a: AlgebraElement, R: UnitaryRep, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Full Laplacian spectrum plus the gap off the invariant subspace."""
    _require_positive_symmetric(a)
    delta = laplacian(a, R)
    basis = R.complement_basis()
    return SpectrumReport(
        rep=R.label,
        eigenvalues=symmetric_spectrum(delta).tolist(),
        trivial_removed=R.dim - basis.shape[1],
        gap=_restricted_min(delta, basis),
        tol=tol,
    )


def gap_rep(a: AlgebraElement, R: UnitaryRep) -> float:
    """psi(a, R): least eigenvalue of Delta(a, R) on the complement of V^G,
    +inf when that complement is zero.

    Raises:
        NotPositiveSymmetricError: If a is outside CG(+).
    """
    _require_positive_symmetric(a)
    return _restricted_min(laplacian(a, R), R.complement_basis())


@dataclass
class GapMinResult:
    """psi(a) over all irreps, with every minimizer within tolerance."""

    value: float
    argmin: List[Partition]
    per_irrep: Dict[Partition, float] = field(default_factory=dict)
    tol: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return {
            "gap": float_to_json(self.value),
            "argmin": [p.to_json() for p in self.argmin],
            "per_irrep": [
                {"beta": beta.to_json(), "gap": float_to_json(value)}
                for beta, value in self.per_irrep.items()
            ],
            "tol": self.tol,
        }


def gap_min(a: AlgebraElement, tol: float = DEFAULT_TOL, threads: int = 1) -> GapMinResult:
    """psi(a) = min over beta of psi(a, T^beta).

    Irreps are diagonalized independently (optionally on a worker pool) and
    collected in partition order. Ties within tol * max(1, |psi|) are all
    reported.
    """
    _require_positive_symmetric(a)
    parts = partitions_of(a.n)
    gaps = parallel_map(lambda beta: gap_rep(a, irrep(beta)), parts, threads)
    per_irrep = dict(zip(parts, gaps))
    value = min(gaps)
    if math.isinf(value):
        argmin = list(parts)
    else:
        slack = tol * max(1.0, abs(value))
        argmin = [beta for beta, g in per_irrep.items() if g <= value + slack]
    logger.debug("gap_min n=%d value=%s argmin=%s", a.n, value, [str(b) for b in argmin])
    return GapMinResult(value, argmin, per_irrep, tol)


@dataclass
class GammaResult:
    """Gamma(G) membership with the worst irrep."""

    member: bool
    worst_partition: Partition
    worst_eigenvalue: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "worst_partition": self.worst_partition.to_json(),
            "worst_eigenvalue": self.worst_eigenvalue,
            "tol": self.tol,
        }


def gamma_member(a: AlgebraElement, tol: float = DEFAULT_TOL, threads: int = 1) -> GammaResult:
    """Whether Delta(a, T^beta) >= -tol for every irrep beta."""
    parts = partitions_of(a.n)
    mins = parallel_map(lambda beta: float(symmetric_spectrum(laplacian(a, irrep(beta)))[0]), parts, threads)
    k = int(np.argmin(mins))
    return GammaResult(mins[k] >= -tol, parts[k], mins[k], tol)


def dirichlet_form(a: AlgebraElement, R: UnitaryRep, v: np.ndarray) -> float:
    """1/2 sum_g a_g |R(g) v - v|^2."""
    v = np.asarray(v, dtype=float)
    return 0.5 * sum(float(c) * float(np.sum((R.matrix(g) @ v - v) ** 2)) for g, c in a.items())


@dataclass
class InterlacingReport:
    """Comparison of Delta_n = Delta(w, D_n) with Delta_n^theta = Delta(theta w, D_n)."""

    n: int
    eigenvalues: List[float]
    theta_eigenvalues: List[float]
    interlacing: bool
    rank_one: bool
    zero_block: bool
    gap_defining: float
    gap_theta: float
    tol: float

    @property
    def gap_decreases(self) -> bool:
        return self.gap_defining <= self.gap_theta + self.tol * max(1.0, abs(self.gap_theta))

    @property
    def passed(self) -> bool:
        return self.interlacing and self.rank_one and self.zero_block and self.gap_decreases

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "eigenvalues": self.eigenvalues,
            "theta_eigenvalues": self.theta_eigenvalues,
            "interlacing": self.interlacing,
            "rank_one": self.rank_one,
            "zero_block": self.zero_block,
            "gap_defining": float_to_json(self.gap_defining),
            "gap_theta": float_to_json(self.gap_theta),
            "gap_decreases": self.gap_decreases,
            "tol": self.tol,
        }


def rank_one_vector(W: TranspositionWeights) -> np.ndarray:
    """delta with Delta_n - Delta_n^theta = delta delta^T / delta_n:
    delta_i = -w_in for i < n and delta_n = sum_i w_in."""
    x = [float(v) for v in W.star_weights()]
    return np.array([-v for v in x] + [sum(x)])


def interlacing_check(W: TranspositionWeights, tol: float = DEFAULT_TOL) -> InterlacingReport:
    """Eigenvalue interlacing between Delta_n and Delta_n^theta.

    Checks lambda^theta_k <= lambda_k <= lambda^theta_{k+1}, that the
    difference is the rank-one matrix delta delta^T / delta_n, that
    Delta_n^theta has a zero last row and column, and that
    psi(w, D_n) <= psi(theta w, D_{n-1}).

    Raises:
        ThetaUndefinedError: If every w_in vanishes.
    """
    n = W.n
    reduced = theta(W)
    w = from_weights(W)
    z = from_weights(reduced)
    D = defining_rep(n)
    delta_n = laplacian(w, D)
    delta_theta = laplacian(lift(z, n), D)

    lam = symmetric_spectrum(delta_n)
    lam_theta = symmetric_spectrum(delta_theta)
    scale = tol * max(1.0, float(np.max(np.abs(delta_n))))
    interlacing = all(lam_theta[k] <= lam[k] + scale for k in range(n)) and all(
        lam[k] <= lam_theta[k + 1] + scale for k in range(n - 1)
    )

    vec = rank_one_vector(W)
    expected = np.outer(vec, vec) / vec[-1]
    rank_one = bool(np.allclose(delta_n - delta_theta, expected, atol=scale))

    zero_block = bool(np.all(np.abs(delta_theta[-1, :]) <= scale) and np.all(np.abs(delta_theta[:, -1]) <= scale))

    return InterlacingReport(
        n=n,
        eigenvalues=lam.tolist(),
        theta_eigenvalues=lam_theta.tolist(),
        interlacing=bool(interlacing),
        rank_one=rank_one,
        zero_block=zero_block,
        gap_defining=gap_rep(w, D),
        gap_theta=gap_rep(z, defining_rep(n - 1)),
        tol=tol,
    )


def restricted_gap_bound(
    w: AlgebraElement, z: AlgebraElement, beta: Partition
) -> Optional[Tuple[float, float]]:
    """Lower bound for psi(w, T^beta) through the restriction to S_{n-1}.

    If w - z lies in Gamma(S_n) with z in CS_{n-1}, and the restriction of
    T^beta contains no trivial summand, then
        psi(w, T^beta) >= min over gamma in branch_down(beta) of psi(z, T^gamma).

    Returns:
        (psi(w, T^beta), bound), or None when the restriction contains the
        trivial irrep (beta = (n) or (n-1, 1)).
    """
    n = w.n
    if z.n != n - 1:
        raise DegreeMismatchError(f"z must have degree {n - 1}, got {z.n}")
    children = branch_down(beta)
    if any(len(gamma.parts) == 1 for gamma in children):
        return None
    bound = min(gap_rep(z, irrep(gamma)) for gamma in children)
    return gap_rep(w, irrep(beta)), bound


@dataclass
class SemiRecursiveResult:
    """Both sides of psi(w) >= min{psi(theta w), psi(w, D_n)}."""

    n: int
    gap: float
    gap_theta: float
    gap_defining: float
    tol: float
    bounds: List[Tuple[Partition, float, float]] = field(default_factory=list)

    @property
    def bound(self) -> float:
        return min(self.gap_theta, self.gap_defining)

    @property
    def holds(self) -> bool:
        return self.gap >= self.bound - self.tol * max(1.0, abs(self.bound))

    @property
    def bounds_hold(self) -> bool:
        return all(lhs >= rhs - self.tol * max(1.0, abs(rhs)) for _, lhs, rhs in self.bounds)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gap": float_to_json(self.gap),
            "gap_theta": float_to_json(self.gap_theta),
            "gap_defining": float_to_json(self.gap_defining),
            "holds": self.holds,
            "irrep_bounds": [
                {"beta": beta.to_json(), "gap": float_to_json(lhs), "bound": float_to_json(rhs)}
                for beta, lhs, rhs in self.bounds
            ],
            "bounds_hold": self.bounds_hold,
            "tol": self.tol,
        }


def semi_recursive_check(W: TranspositionWeights, tol: float = DEFAULT_TOL, threads: int = 1) -> SemiRecursiveResult:
    """Semi-recursive gap bound with z = theta(w), plus the per-irrep
    restriction bound for every irrep it applies to."""
    w = from_weights(W)
    z = from_weights(theta(W))
    bounds = []
    for beta in partitions_of(W.n):
        result = restricted_gap_bound(w, z, beta)
        if result is not None:
            bounds.append((beta, result[0], result[1]))
    return SemiRecursiveResult(
        n=W.n,
        gap=gap_min(w, tol, threads).value,
        gap_theta=gap_min(z, tol, threads).value,
        gap_defining=gap_rep(w, defining_rep(W.n)),
        tol=tol,
        bounds=bounds,
    )


def cayley_laplacian(a: AlgebraElement) -> np.ndarray:
    """Delta(a, L) on the left regular representation: the weighted Cayley
    graph Laplacian of S_n (n <= 6)."""
    return laplacian(a, regular_rep(a.n))
