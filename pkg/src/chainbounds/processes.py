"""Process models and seeded simulators for supremum samples.

Every stochastic routine draws one counter-based RNG stream per replication
(Philox keyed by the seed, counter word 2 = replication index), so results
are bit-identical for a given (seed, config) regardless of execution order,
and replications could be farmed out concurrently without changing output.

Models are deliberately small: index points are rows of a coefficient
matrix applied to a shared standardized driver (Rademacher signs, standard
normals, Uniform[-1,1], or constants), which keeps psi-norms, means, and
canonical metrics exactly computable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np
from scipy import optimize, special, stats

from .bounds import MixedTailMetrics
from .errors import CapacityError, DomainError, ModelError, UnsupportedFamilyError
from .metric import FiniteMetricSpace, build_metric_space
from .orlicz import LOG2, OrliczNorm
from .schatten import _matrix_stack

__all__ = [
    "RowDistribution",
    "ProcessModel",
    "SupremumSample",
    "gaussian_model",
    "martingale_model",
    "empirical_model",
    "squares_model",
    "canonical_metric",
    "mixed_metrics",
    "empirical_parameters",
    "replication_rng",
    "simulate_gaussian",
    "simulate_martingale_family",
    "simulate_empirical",
    "simulate_squares",
    "simulate_squares_increment",
    "simulate_chaos",
    "sign_patterns",
    "exact_martingale_distribution",
    "exact_empirical_distribution",
    "exact_chaos_distribution",
]

SIGN_ENUM_CAP = 10
MODEL_KINDS = ("gaussian", "martingale-family", "empirical", "squares", "chaos")
_ROW_FAMILIES = ("rademacher", "gaussian", "uniform", "constant")
_EIG_TOL = 1e-10


def _check_count(name: str, v) -> int:
    if isinstance(v, bool) or int(v) != v or v < 1:
        raise DomainError(f"{name} must be an integer >= 1, got {v!r}")
    return int(v)


def _check_seed(seed) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an integer in [0, 2^64), got {seed!r}")
    return int(seed)


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    """The dedicated stream for one replication (order-independent)."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, rep, 0]))


@dataclass(frozen=True)
class RowDistribution:
    """A scaled standardized driver with exactly known psi-norms.

    scale multiplies the standardized variable; for "constant" the value is
    the scale itself.  mean_known=False marks a row whose mean (and second
    moment) the caller refuses to attest — simulators that must center by
    the true mean reject such rows instead of guessing.
    """

    name: str
    scale: float = 1.0
    mean_known: bool = True

    def __post_init__(self):
        if self.name not in _ROW_FAMILIES:
            raise UnsupportedFamilyError(
                f"unknown row distribution {self.name!r}; expected one of {_ROW_FAMILIES}"
            )
        if not math.isfinite(self.scale):
            raise DomainError(f"scale must be finite, got {self.scale}")

    def mean(self) -> float:
        if not self.mean_known:
            raise ModelError(
                "row mean not attested; center the summands or supply a distribution "
                "with mean_known=True"
            )
        return self.scale if self.name == "constant" else 0.0

    def second_moment(self) -> float:
        if not self.mean_known:
            raise ModelError(
                "row second moment not attested; supply a distribution with mean_known=True"
            )
        if self.name == "uniform":
            return self.scale**2 / 3.0
        return self.scale**2

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.name == "rademacher":
            return self.scale * (2.0 * rng.integers(0, 2, size) - 1.0)
        if self.name == "gaussian":
            return self.scale * rng.standard_normal(size)
        if self.name == "uniform":
            return self.scale * rng.uniform(-1.0, 1.0, size)
        return np.full(size, float(self.scale))

    def psi_norm(self, alpha: float) -> OrliczNorm:
        """Exact psi_alpha norm (alpha in {1, 2})."""
        if alpha not in (1, 2):
            raise UnsupportedFamilyError(
                f"exact row psi-norms are implemented for alpha in {{1, 2}}, got {alpha}"
            )
        s = abs(self.scale)
        if s == 0.0:
            return OrliczNorm(alpha, 0.0, "analytic")
        if self.name in ("rademacher", "constant"):
            # |X| is the constant s.
            return OrliczNorm(alpha, s / LOG2 ** (1.0 / alpha), "analytic")
        if self.name == "gaussian":
            if alpha == 2:
                # E exp(g^2/t^2) = (1 - 2/t^2)^(-1/2) = 2  =>  t = sqrt(8/3).
                return OrliczNorm(2.0, s * math.sqrt(8.0 / 3.0), "analytic")
            # E exp(|g|/t) = 2 exp(1/(2t^2)) Phi(1/t) = 2.
            f = lambda t: 0.5 / t**2 + stats.norm.logcdf(1.0 / t)
            t = optimize.brentq(f, 0.3, 30.0, xtol=1e-13, rtol=1e-14)
            return OrliczNorm(1.0, s * t, "analytic")
        # uniform on [-s, s]; |X|/s ~ U[0,1].
        if alpha == 1:
            # E exp(r U) = (exp(r) - 1)/r = 2 at r = s/t.
            g = lambda r: math.expm1(r) / r - 2.0
            r = optimize.brentq(g, 1e-8, 10.0, xtol=1e-13, rtol=1e-14)
        else:
            # E exp(r^2 U^2) = sqrt(pi) erfi(r) / (2r) = 2 at r = s/t.
            g = lambda r: math.sqrt(math.pi) * special.erfi(r) / (2.0 * r) - 2.0
            r = optimize.brentq(g, 1e-8, 10.0, xtol=1e-13, rtol=1e-14)
        return OrliczNorm(float(alpha), s / r, "analytic")


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ProcessModel:
    """An index set plus the data needed to draw the process on it.

    kind selects the family; covariance is gaussian-only, coefficients hold
    one row per index point (martingale step weights, or per-summand scales
    for empirical/squares applied to iid copies of base), and step_bounds
    are the declared per-step sup-norm increment bounds of the martingale
    family.
    """

    kind: str
    labels: tuple
    covariance: np.ndarray | None = None
    coefficients: np.ndarray | None = None
    base: RowDistribution | None = None
    step_bounds: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise UnsupportedFamilyError(f"unknown process kind {self.kind!r}")
        if len(self.labels) != len(set(self.labels)):
            raise ModelError("index labels must be distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def psi_norm_matrix(self, alpha: float) -> np.ndarray:
        """Per-(point, summand) psi_alpha norms |coeff| * ||base||_psi."""
        if self.kind not in ("empirical", "squares"):
            raise UnsupportedFamilyError(
                f"psi-norm matrices apply to empirical/squares models, not {self.kind!r}"
            )
        return np.abs(self.coefficients) * self.base.psi_norm(alpha).value


def _default_labels(n: int) -> tuple:
    return tuple(f"t{i}" for i in range(n))


def _coeff_matrix(coefficients, what: str) -> np.ndarray:
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 2 or c.size == 0:
        raise ModelError(f"{what} must be a nonempty 2-D (points x columns) array")
    if not np.all(np.isfinite(c)):
        raise ModelError(f"{what} must be finite")
    return c


def gaussian_model(covariance, labels=None) -> ProcessModel:
    """Centered Gaussian process given by its covariance matrix."""
    cov = np.asarray(covariance, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.size == 0:
        raise ModelError(f"covariance must be a nonempty square matrix, got shape {cov.shape}")
    if not np.all(np.isfinite(cov)):
        raise ModelError("covariance must be finite")
    if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-12):
        raise ModelError("covariance must be symmetric")
    w = np.linalg.eigvalsh(0.5 * (cov + cov.T))
    if w.min() < -_EIG_TOL:
        raise ModelError(
            f"covariance is not positive semidefinite (min eigenvalue {w.min():.3e})"
        )
    labels = _default_labels(cov.shape[0]) if labels is None else tuple(labels)
    if len(labels) != cov.shape[0]:
        raise ModelError("label count must match covariance size")
    return ProcessModel(kind="gaussian", labels=labels, covariance=_freeze(cov))


def martingale_model(coefficients, labels=None, step_bounds=None) -> ProcessModel:
    """Family X_{t,k} = sum_{j<=k} t_j eps_j driven by shared Rademacher signs.

    coefficients has one coefficient vector t per row; step_bounds declares
    per-step sup-norm increment bounds (default |coefficients|, which the
    realized increments attain exactly).
    """
    c = _coeff_matrix(coefficients, "coefficients")
    if step_bounds is None:
        b = np.abs(c)
    else:
        b = np.asarray(step_bounds, dtype=float)
        if b.shape != c.shape or not np.all(np.isfinite(b)) or np.any(b < 0):
            raise ModelError("step_bounds must be finite, nonnegative, and match coefficients")
    labels = _default_labels(c.shape[0]) if labels is None else tuple(labels)
    if len(labels) != c.shape[0]:
        raise ModelError("label count must match coefficient rows")
    return ProcessModel(
        kind="martingale-family", labels=labels, coefficients=_freeze(c), step_bounds=_freeze(b)
    )


def _summand_model(kind: str, coefficients, base: RowDistribution, labels) -> ProcessModel:
    c = _coeff_matrix(coefficients, "coefficients")
    if not isinstance(base, RowDistribution):
        raise ModelError("base must be a RowDistribution")
    labels = _default_labels(c.shape[0]) if labels is None else tuple(labels)
    if len(labels) != c.shape[0]:
        raise ModelError("label count must match coefficient rows")
    return ProcessModel(kind=kind, labels=labels, coefficients=_freeze(c), base=base)


def empirical_model(coefficients, base: RowDistribution, labels=None) -> ProcessModel:
    """Summands X_{t_i} = coeff[t, i] * Z_i with iid Z_i ~ base."""
    return _summand_model("empirical", coefficients, base, labels)


def squares_model(coefficients, base: RowDistribution, labels=None) -> ProcessModel:
    """Same row structure as empirical_model, simulated through its squares."""
    return _summand_model("squares", coefficients, base, labels)


def canonical_metric(model: ProcessModel) -> FiniteMetricSpace:
    """The increment metric the theory attaches to this process kind.

    gaussian: d(s,t)^2 = Cov_ss + Cov_tt - 2 Cov_st; martingale-family:
    root-sum-of-squares of per-step sup-norm differences (Euclidean distance
    of coefficient rows); squares: max per-summand psi_2 distance.
    """
    if model.kind == "gaussian":
        v = np.diag(model.covariance)
        sq = v[:, None] + v[None, :] - 2.0 * model.covariance
        d = np.sqrt(np.clip(sq, 0.0, None))
    elif model.kind == "martingale-family":
        c = model.coefficients
        d = np.linalg.norm(c[:, None, :] - c[None, :, :], axis=2)
    elif model.kind == "squares":
        c = model.coefficients
        d = np.abs(c[:, None, :] - c[None, :, :]).max(axis=2) * model.base.psi_norm(2).value
    else:
        raise UnsupportedFamilyError(
            f"no single canonical metric for kind {model.kind!r}"
            + ("; use mixed_metrics" if model.kind == "empirical" else "")
        )
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return build_metric_space(d, labels=model.labels)


def mixed_metrics(model: ProcessModel) -> MixedTailMetrics:
    """Unscaled (d1, d2) psi_1 increment metrics of an empirical model.

    d1(s,t) = max_i ||X_{t_i} - X_{s_i}||_{psi_1}; d2 is the quadratic mean
    of the same per-summand norms.  The 1/m, 1/sqrt(m) scalings belong to
    the bound evaluator, not to the metrics.
    """
    if model.kind != "empirical":
        raise UnsupportedFamilyError(f"mixed metrics apply to empirical models, not {model.kind!r}")
    c = model.coefficients
    psi1 = model.base.psi_norm(1).value
    diff = np.abs(c[:, None, :] - c[None, :, :]) * psi1
    d1 = diff.max(axis=2)
    d2 = np.sqrt((diff**2).mean(axis=2))
    for d in (d1, d2):
        np.fill_diagonal(d, 0.0)
    return MixedTailMetrics(
        d1=build_metric_space(d1, labels=model.labels),
        d2=build_metric_space(d2, labels=model.labels),
    )


def empirical_parameters(model: ProcessModel) -> tuple[float, float]:
    """(sigma, K) scales for empirical_process_bound from the psi_1 norms.

    Per index point the summands obey the subexponential average inequality
    with nu_t = ((1/m) sum_i norm^2)^(1/2) and kappa_t = max_i norm; the
    returned pair is the sup over points of each.
    """
    norms = model.psi_norm_matrix(1)
    sigma = float(np.sqrt((norms**2).mean(axis=1)).max())
    K = float(norms.max())
    return sigma, K


def _resolve_point(labels: tuple, point) -> int:
    if point in labels:
        return labels.index(point)
    if isinstance(point, (int, np.integer)) and not isinstance(point, bool):
        if 0 <= point < len(labels):
            return int(point)
    raise DomainError(f"unknown index point {point!r}")


@dataclass(frozen=True)
class SupremumSample:
    """Per-replication supremum draws from one seeded simulation."""

    replications: int
    seed: int
    values: np.ndarray
    base_point: object | None = None
    companions: object = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.shape[0] != self.replications:
            raise ModelError("values must be 1-D with one entry per replication")
        if np.any(~np.isfinite(vals)) or np.any(vals < 0):
            raise ModelError("supremum values must be finite and nonnegative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        comp = {}
        for name, arr in dict(self.companions).items():
            arr = np.asarray(arr, dtype=float)
            if arr.shape != vals.shape:
                raise ModelError(f"companion {name!r} must match the replication count")
            arr.setflags(write=False)
            comp[name] = arr
        object.__setattr__(self, "companions", MappingProxyType(comp))


def _require_kind(model: ProcessModel, kind: str):
    if model.kind != kind:
        raise UnsupportedFamilyError(f"expected a {kind!r} model, got {model.kind!r}")


def simulate_gaussian(model: ProcessModel, reps: int, seed: int, base_point=0) -> SupremumSample:
    """sup_t |X_t - X_t0| draws (or raw sup_t |X_t| when base_point is None)."""
    _require_kind(model, "gaussian")
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    w, V = np.linalg.eigh(model.covariance)
    if w.min() < -_EIG_TOL:
        raise ModelError(
            f"covariance is not positive semidefinite (min eigenvalue {w.min():.3e})"
        )
    L = V * np.sqrt(np.clip(w, 0.0, None))
    n = model.size
    idx = None if base_point is None else _resolve_point(model.labels, base_point)
    vals = np.empty(reps)
    for r in range(reps):
        x = L @ replication_rng(seed, r).standard_normal(n)
        if idx is None:
            vals[r] = np.abs(x).max()
        else:
            vals[r] = np.abs(x - x[idx]).max()
    return SupremumSample(
        replications=reps,
        seed=seed,
        values=vals,
        base_point=None if idx is None else model.labels[idx],
    )


def simulate_martingale_family(model: ProcessModel, reps: int, seed: int) -> SupremumSample:
    """sup_t |X_{t,n} - X_{t,0}| for the shared-driver coefficient family."""
    _require_kind(model, "martingale-family")
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    c = model.coefficients
    excess = np.abs(c) - model.step_bounds
    if np.any(excess > 1e-12):
        t, k = (int(i) for i in np.argwhere(excess > 1e-12)[0])
        raise ModelError(
            f"step {k} of point {model.labels[t]!r} exceeds its declared sup-norm "
            f"bound ({abs(c[t, k]):g} > {model.step_bounds[t, k]:g})"
        )
    n_steps = c.shape[1]
    vals = np.empty(reps)
    for r in range(reps):
        eps = 2.0 * replication_rng(seed, r).integers(0, 2, n_steps) - 1.0
        vals[r] = np.abs(c @ eps).max()
    return SupremumSample(replications=reps, seed=seed, values=vals, base_point=None)


def _check_m(model: ProcessModel, m: int) -> int:
    m = _check_count("m", m)
    if m != model.coefficients.shape[1]:
        raise DomainError(
            f"m = {m} disagrees with the model's {model.coefficients.shape[1]} summands"
        )
    return m


def simulate_empirical(model: ProcessModel, m: int, reps: int, seed: int) -> SupremumSample:
    """sup_t |(1/m) sum_i (X_{t_i} - E X_{t_i})| draws."""
    _require_kind(model, "empirical")
    m = _check_m(model, m)
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    mu = model.base.mean()
    c = model.coefficients
    vals = np.empty(reps)
    for r in range(reps):
        z = model.base.sample(replication_rng(seed, r), m)
        vals[r] = np.abs(c @ (z - mu)).max() / m
    return SupremumSample(replications=reps, seed=seed, values=vals, base_point=None)


def simulate_squares(model: ProcessModel, m: int, reps: int, seed: int) -> SupremumSample:
    """sup_t |(1/m) sum_i (X_{t_i}^2 - E X_{t_i}^2)| draws.

    Also records, per replication, the companion "sup_l2_norm" =
    sup_t ||X_t||_{L2(mu_m)} used to check the empirical-L2 radius bound.
    """
    _require_kind(model, "squares")
    m = _check_m(model, m)
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    s2 = model.base.second_moment()
    c2 = model.coefficients**2
    vals = np.empty(reps)
    sup_l2 = np.empty(reps)
    for r in range(reps):
        z = model.base.sample(replication_rng(seed, r), m)
        sq = c2 * (z**2)[None, :]
        vals[r] = np.abs(sq.mean(axis=1) - s2 * c2.mean(axis=1)).max()
        sup_l2[r] = math.sqrt(sq.mean(axis=1).max())
    return SupremumSample(
        replications=reps,
        seed=seed,
        values=vals,
        base_point=None,
        companions={"sup_l2_norm": sup_l2},
    )


def simulate_squares_increment(
    model: ProcessModel, s, t, m: int, reps: int, seed: int
) -> SupremumSample:
    """||X_t - X_s||_{L2(mu_m)} draws for one pair of index points."""
    _require_kind(model, "squares")
    m = _check_m(model, m)
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    i, j = _resolve_point(model.labels, s), _resolve_point(model.labels, t)
    dc = model.coefficients[j] - model.coefficients[i]
    vals = np.empty(reps)
    for r in range(reps):
        z = model.base.sample(replication_rng(seed, r), m)
        vals[r] = math.sqrt(((dc * z) ** 2).mean())
    return SupremumSample(
        replications=reps, seed=seed, values=vals, base_point=model.labels[i]
    )


def _chaos_inputs(matrices, xi: RowDistribution):
    stack = _matrix_stack(matrices)
    if not isinstance(xi, RowDistribution):
        raise ModelError("xi must be a RowDistribution")
    if xi.mean() != 0.0:
        raise ModelError("chaos components must be mean-zero")
    return stack, xi.second_moment()


def simulate_chaos(
    matrices, xi: RowDistribution, reps: int, seed: int, decoupled: bool = False
) -> SupremumSample:
    """sup_A | ||A xi||^2 - E ||A xi||^2 | draws over a matrix family.

    With decoupled=True, draws an independent copy xi' per replication and
    returns sup_A |xi . (A^H A) xi'| instead (the bilinear comparison term).
    """
    stack, s2 = _chaos_inputs(matrices, xi)
    reps, seed = _check_count("reps", reps), _check_seed(seed)
    n = stack.shape[2]
    vals = np.empty(reps)
    if decoupled:
        grams = np.einsum("kmi,kmj->kij", stack.conj(), stack)
        for r in range(reps):
            rng = replication_rng(seed, r)
            x, y = xi.sample(rng, n), xi.sample(rng, n)
            vals[r] = np.abs(np.einsum("i,kij,j->k", x, grams, y)).max()
    else:
        fro2 = np.abs(stack).reshape(stack.shape[0], -1) ** 2
        means = s2 * fro2.sum(axis=1)
        for r in range(reps):
            x = xi.sample(replication_rng(seed, r), n)
            q = (np.abs(np.einsum("kmn,n->km", stack, x)) ** 2).sum(axis=1)
            vals[r] = np.abs(q - means).max()
    return SupremumSample(replications=reps, seed=seed, values=vals, base_point=None)


def sign_patterns(n: int) -> np.ndarray:
    """All 2^n sign vectors in {-1, +1}^n, n <= 10."""
    n = _check_count("n", n)
    if n > SIGN_ENUM_CAP:
        raise CapacityError(f"exhaustive sign enumeration capped at n = {SIGN_ENUM_CAP}, got {n}")
    bits = (np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1
    return 2.0 * bits - 1.0


def exact_martingale_distribution(model: ProcessModel) -> np.ndarray:
    """Equally likely sup values over all driver sign patterns."""
    _require_kind(model, "martingale-family")
    signs = sign_patterns(model.coefficients.shape[1])
    return np.abs(signs @ model.coefficients.T).max(axis=1)


def exact_empirical_distribution(model: ProcessModel) -> np.ndarray:
    """Equally likely sup values of the centered average (Rademacher base)."""
    _require_kind(model, "empirical")
    if model.base.name != "rademacher":
        raise UnsupportedFamilyError("exact enumeration needs a rademacher base")
    m = model.coefficients.shape[1]
    z = model.base.scale * sign_patterns(m)
    return np.abs(z @ model.coefficients.T).max(axis=1) / m


def exact_chaos_distribution(matrices, decoupled: bool = False) -> np.ndarray:
    """Equally likely chaos sup values over Rademacher sign patterns.

    Plain form enumerates 2^n component vectors; decoupled form enumerates
    all 2^(2n) independent pairs.
    """
    stack = _matrix_stack(matrices)
    signs = sign_patterns(stack.shape[2])
    if decoupled:
        grams = np.einsum("kmi,kmj->kij", stack.conj(), stack)
        bil = np.einsum("ai,kij,bj->kab", signs, grams, signs)
        return np.abs(bil).max(axis=0).ravel()
    rows = np.einsum("kmn,an->kam", stack, signs)
    q = (np.abs(rows) ** 2).sum(axis=2)
    fro2 = (np.abs(stack).reshape(stack.shape[0], -1) ** 2).sum(axis=1)
    return np.abs(q - fro2[:, None]).max(axis=0)
