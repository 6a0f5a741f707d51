"""Subsampled unitary / bounded-row systems and exact restricted isometries.

The sampling model keeps each row of an N x N unitary independently with
probability m/N and rescales by sqrt(N/m), so the expected row count is m
and the expected Gram matrix is the identity.  Restricted isometry
constants are computed exactly by enumerating size-s supports and taking
extreme eigenvalues of the s x s Grams; sample-complexity thresholds invert
the fitted sufficiency condition by integer bisection.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ConvergenceError, DomainError, ModelError
from .processes import replication_rng
from .validation import exceedance_lower_bound, exceedance_upper_bound

__all__ = [
    "RipInstance",
    "RipReport",
    "BosSystem",
    "build_dft",
    "sample_selectors",
    "subsample",
    "subsampled_instance",
    "restricted_isometry_constant",
    "sample_complexity",
    "estimate_failure_probability",
    "check_bos",
]

ENUMERATION_CAP = 1_000_000
UNITARY_TOL = 1e-10
WITNESS_TOL = 1e-9
COMPLEXITY_CAP = 1 << 60
_BATCH = 4096


def _check_int(name: str, v, low: int, high: int | None = None) -> int:
    if isinstance(v, bool) or int(v) != v:
        raise DomainError(f"{name} must be an integer, got {v!r}")
    v = int(v)
    if v < low or (high is not None and v > high):
        hi = "" if high is None else f" and <= {high}"
        raise DomainError(f"{name} must be >= {low}{hi}, got {v}")
    return v


def build_dft(N: int) -> np.ndarray:
    """The N x N unitary discrete Fourier matrix (unimodular entries / sqrt(N))."""
    N = _check_int("N", N, 1)
    k = np.arange(N)
    return np.exp(2j * np.pi * np.outer(k, k) / N) / math.sqrt(N)


def _check_unitary(U) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.size == 0:
        raise DomainError(f"U must be a nonempty square matrix, got shape {U.shape}")
    residual = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if residual > UNITARY_TOL:
        raise DomainError(f"U is not unitary (max |U*U - I| = {residual:.3e})")
    return U


def sample_selectors(N: int, m: int, seed: int, rep: int = 0) -> np.ndarray:
    """Indices kept by independent Bernoulli(m/N) selectors (E|I| = m)."""
    N = _check_int("N", N, 1)
    m = _check_int("m", m, 0, N)
    keep = replication_rng(seed, rep).random(N) < m / N
    return np.flatnonzero(keep)


def subsample(U, I, m: int) -> np.ndarray:
    """Row restriction to I rescaled by sqrt(N/m); empty I gives a 0 x N matrix."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2:
        raise DomainError("U must be a matrix")
    N = U.shape[0]
    m = _check_int("m", m, 1)
    I = np.asarray(I, dtype=int)
    if I.size and (I.min() < 0 or I.max() >= N):
        raise DomainError(f"selector indices must lie in [0, {N})")
    return math.sqrt(N / m) * U[I]


@dataclass(frozen=True)
class RipReport:
    """Exact restricted isometry constant with its attaining witness."""

    s: int
    delta_s: float
    witness_support: tuple
    witness_direction: np.ndarray
    witness_value: float

    def __post_init__(self):
        if self.delta_s < 0:
            raise DomainError(f"delta_s must be >= 0, got {self.delta_s}")
        if abs(self.witness_value - self.delta_s) > WITNESS_TOL:
            raise DomainError(
                f"witness reproduces {self.witness_value:.12g}, not delta_s = "
                f"{self.delta_s:.12g}"
            )


def restricted_isometry_constant(
    A, s: int, enumeration_cap: int = ENUMERATION_CAP
) -> RipReport:
    """sup over unit s-sparse x of | ||A x||^2 - 1 |, by support enumeration.

    For each size-s support the extreme eigenvalues of the restricted Gram
    give the local sup; the global max is attained on a single support, with
    lexicographically-first tie-breaking.  C(N, s) supports beyond
    enumeration_cap raise a capacity error (fall back to Monte Carlo over
    supports at larger scales).
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[1] == 0:
        raise DomainError(f"A must be a matrix with at least one column, got shape {A.shape}")
    N = A.shape[1]
    s = _check_int("s", s, 1, N)
    n_supports = math.comb(N, s)
    if n_supports > enumeration_cap:
        raise CapacityError(
            f"C({N},{s}) = {n_supports} supports exceeds the enumeration cap "
            f"{enumeration_cap}; use Monte Carlo sampling over supports instead"
        )
    best_delta = -1.0
    best_support = None
    combos = itertools.combinations(range(N), s)
    while True:
        chunk = list(itertools.islice(combos, _BATCH))
        if not chunk:
            break
        supports = np.array(chunk, dtype=int)
        cols = A[:, supports]  # (rows, batch, s)
        grams = np.einsum("rbi,rbj->bij", cols.conj(), cols)
        w = np.linalg.eigvalsh(grams)
        deltas = np.maximum(w[:, -1] - 1.0, 1.0 - w[:, 0])
        k = int(np.argmax(deltas))
        if deltas[k] > best_delta:
            best_delta = float(deltas[k])
            best_support = tuple(int(i) for i in supports[k])
    cols = A[:, best_support]
    gram = cols.conj().T @ cols
    w, V = np.linalg.eigh(gram)
    if w[-1] - 1.0 >= 1.0 - w[0]:
        vec = V[:, -1]
    else:
        vec = V[:, 0]
    witness = np.zeros(N, dtype=complex)
    witness[list(best_support)] = vec
    value = float(abs(np.linalg.norm(A @ witness) ** 2 - 1.0))
    return RipReport(
        s=s,
        delta_s=best_delta,
        witness_support=best_support,
        witness_direction=witness,
        witness_value=value,
    )


@dataclass(frozen=True)
class RipInstance:
    """One realized subsampled-unitary draw plus its scaled row matrix."""

    N: int
    m: int
    K: float
    selector_seed: int
    I: tuple
    U: np.ndarray
    U_I: np.ndarray

    @property
    def realized_rows(self) -> int:
        return len(self.I)

    def delta(self, s: int, enumeration_cap: int = ENUMERATION_CAP) -> RipReport:
        return restricted_isometry_constant(self.U_I, s, enumeration_cap)


def subsampled_instance(U, m: int, seed: int, K: float | None = None, rep: int = 0) -> RipInstance:
    """Draw selectors for a unitary U and package the rescaled row matrix.

    K defaults to the attained sqrt(N) * max |U_kl|; an explicit smaller K is
    rejected because the flatness premise would be false.
    """
    U = _check_unitary(U)
    N = U.shape[0]
    m = _check_int("m", m, 1, N)
    attained = math.sqrt(N) * float(np.abs(U).max())
    if K is None:
        K = attained
    elif attained > K + 1e-12:
        raise DomainError(f"declared K = {K:g} is below the attained flatness {attained:g}")
    I = sample_selectors(N, m, seed, rep)
    return RipInstance(
        N=N,
        m=m,
        K=float(K),
        selector_seed=int(seed),
        I=tuple(int(i) for i in I),
        U=U,
        U_I=subsample(U, I, m),
    )


def sample_complexity(
    s: int, K: float, delta: float, eta: float, d1_fit: float, d2_fit: float, N: int
) -> int:
    """Minimal integer m with m >= s K^2 delta^-2 max(d1 ln^2(s) ln(m) ln(N), d2 ln(1/eta)).

    All logarithms are natural and ln^2(s) means (ln s)^2.  The inequality is
    monotone in m beyond its crossing point; the minimum is located by
    doubling followed by integer bisection, capped at 2^60.
    """
    s = _check_int("s", s, 1)
    N = _check_int("N", N, 1)
    for name, v in (("K", K), ("d1_fit", d1_fit), ("d2_fit", d2_fit), ("delta", delta)):
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be positive and finite, got {v}")
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    lead = s * K**2 / delta**2
    log_term = d1_fit * math.log(s) ** 2 * math.log(N)
    tail_term = d2_fit * math.log(1.0 / eta)

    def satisfied(m: int) -> bool:
        return m >= lead * max(log_term * math.log(m), tail_term)

    hi = 1
    while not satisfied(hi):
        hi *= 2
        if hi > COMPLEXITY_CAP:
            raise ConvergenceError(
                f"no sample count below 2^60 satisfies the condition "
                f"(s={s}, K={K:g}, delta={delta:g}, eta={eta:g})"
            )
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if satisfied(mid):
            hi = mid
        else:
            lo = mid
    return hi


def estimate_failure_probability(
    N: int,
    m: int,
    s: int,
    delta: float,
    reps: int,
    seed: int,
    U=None,
    enumeration_cap: int = ENUMERATION_CAP,
    confidence: float = 0.99,
) -> dict:
    """Monte Carlo estimate of P(delta_s >= delta) under Bernoulli selectors.

    U defaults to the discrete Fourier matrix.  Equality counts as failure
    (delta = 0 therefore estimates 1).  Returns the exceedance fraction with
    one-sided Clopper-Pearson bounds and the mean realized row count.
    """
    U = build_dft(N) if U is None else _check_unitary(U)
    N = U.shape[0]
    m = _check_int("m", m, 1, N)
    reps = _check_int("reps", reps, 1)
    if not (delta >= 0 and math.isfinite(delta)):
        raise DomainError(f"delta must be finite and >= 0, got {delta}")
    failures = 0
    realized = 0
    for rep in range(reps):
        I = sample_selectors(N, m, seed, rep)
        realized += I.size
        report = restricted_isometry_constant(subsample(U, I, m), s, enumeration_cap)
        if report.delta_s >= delta:
            failures += 1
    return {
        "N": N,
        "m": m,
        "s": s,
        "delta": float(delta),
        "reps": reps,
        "failures": failures,
        "estimate": failures / reps,
        "ci_lower": exceedance_lower_bound(failures, reps, confidence),
        "ci_upper": exceedance_upper_bound(failures, reps, confidence),
        "mean_realized_rows": realized / reps,
    }


@dataclass(frozen=True)
class BosSystem:
    """A validated bounded orthonormal system given by finitely many rows."""

    rows: np.ndarray
    weights: np.ndarray
    K: float

    @property
    def dimension(self) -> int:
        return self.rows.shape[1]

    def sample_matrix(self, m: int, seed: int, rep: int = 0) -> np.ndarray:
        """m iid weighted row draws scaled by 1/sqrt(m)."""
        m = _check_int("m", m, 1)
        rng = replication_rng(seed, rep)
        idx = rng.choice(self.rows.shape[0], size=m, p=self.weights)
        return self.rows[idx] / math.sqrt(m)


def check_bos(rows, K: float, weights=None, test_vectors: int = 8, seed: int = 0) -> BosSystem:
    """Validate isotropy and flatness of a finite row system.

    Isotropy requires sum_i w_i X_i X_i^H = I, checked entrywise (standard
    basis) and on random unit test vectors to 1e-8; flatness requires every
    entry of every row to have modulus <= K.  Violations are rejected with
    the maximal residual.
    """
    rows = np.asarray(rows, dtype=complex)
    if rows.ndim != 2 or rows.size == 0:
        raise DomainError("rows must form a nonempty (count x dimension) matrix")
    n, N = rows.shape
    if weights is None:
        weights = np.full(n, 1.0 / n)
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (n,) or np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise DomainError("weights must be a probability vector over the rows")
    if not (K > 0 and math.isfinite(K)):
        raise DomainError(f"K must be positive and finite, got {K}")
    flat = float(np.abs(rows).max())
    if flat > K + 1e-12:
        raise ModelError(f"row sup-norm {flat:.12g} exceeds the declared bound K = {K:g}")
    M = np.einsum("i,ia,ib->ab", weights, rows, rows.conj())
    residual = float(np.abs(M - np.eye(N)).max())
    if residual > 1e-8:
        raise ModelError(f"row system is not isotropic (max residual {residual:.3e})")
    rng = replication_rng(seed, 0)
    for _ in range(int(test_vectors)):
        x = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        x /= np.linalg.norm(x)
        second = float(weights @ (np.abs(rows.conj() @ x) ** 2))
        if abs(second - 1.0) > 1e-8:
            raise ModelError(
                f"isotropy fails on a test vector (|E|<X,x>|^2 - 1| = {abs(second - 1.0):.3e})"
            )
    return BosSystem(rows=rows, weights=weights, K=float(K))
