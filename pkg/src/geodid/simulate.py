"""Synthetic data-generating processes and the Monte Carlo convergence driver.

Two DGPs are provided: Gaussian quantile curves observed through finite
samples (Wasserstein space) and weighted stochastic-block-model networks
observed as graph Laplacians (Frobenius space). The driver estimates the
treatment-effect geodesic on each replicated panel, measures the error in the
quotient metric anchored at the true counterfactual mean, and fits a log-log
slope across sample sizes.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import norm

from .did import estimate_gatt
from .errors import GeodidError
from .geometry import Geodesic, quotient_distance
from .panel import PanelDataset
from .spaces.matrix import SymmetricMatrixPoint, KIND_FREE, KIND_LAPLACIAN
from .spaces.wasserstein import QuantileCurve, midpoint_grid

SPACE_WASSERSTEIN = "wasserstein"
SPACE_NETWORK = "network"


@dataclass(frozen=True)
class SimConfig:
    space: str = SPACE_WASSERSTEIN
    n: int = 200
    q: int = 200
    treat_prob: float = 0.25
    seed: int = 0
    # Wasserstein DGP
    grid_size: int = 100
    sample_size_per_dist: int = 100
    # shared trend/effect coefficients
    alpha1: float = 1.0
    alpha2: float = 1.0
    alpha3: float = 1.0
    beta: float = 1.0
    # network DGP: block sizes and edge probabilities
    m1: int = 5
    m2: int = 5
    p11: float = 0.5
    p12: float = 0.2
    p21: float = 0.2
    p22: float = 0.5

    def __post_init__(self):
        if self.space not in (SPACE_WASSERSTEIN, SPACE_NETWORK):
            raise ValueError(f"unknown simulation space {self.space!r}")
        if not 0.0 < self.treat_prob < 1.0:
            raise ValueError("treat_prob must be in (0, 1)")
        if self.n < 4:
            raise ValueError("need at least 4 units")
        if self.q < 1:
            raise ValueError("need at least one Monte Carlo run")
        for p in (self.p11, self.p12, self.p21, self.p22):
            if not 0.0 <= p <= 1.0:
                raise ValueError("edge probabilities must lie in [0, 1]")


@dataclass(frozen=True)
class SimReport:
    space: str
    seed: int
    q: int
    n_values: tuple
    errors: dict            # n -> list of per-run errors (failed runs excluded)
    mean_error: dict        # n -> mean error
    excluded: dict          # n -> count of failed runs
    slope: float            # None when fewer than two sample sizes
    intercept: float


def _run_rng(config, run):
    # keyed by (seed, n, run) so results do not depend on execution order
    return np.random.default_rng(
        np.random.SeedSequence(entropy=config.seed, spawn_key=(config.n, run))
    )


def true_wasserstein_gatt(config):
    """Population treatment-effect geodesic of the Gaussian quantile DGP."""
    z = norm.ppf(midpoint_grid(config.grid_size))
    # nu_{1,0} and nu_{0,0} coincide, so the transported start equals nu_{0,1}
    start = QuantileCurve(config.alpha2 + config.alpha1 * z)
    end = QuantileCurve(config.alpha2 + (config.alpha1 + config.beta) * z)
    return Geodesic(start, end)


def generate_wasserstein_panel(config, rng):
    """Two-period panel of empirical quantile curves, plus the true effect."""
    n, s = config.n, config.sample_size_per_dist
    d = (rng.random(n) < config.treat_prob).astype(int)
    grid = midpoint_grid(config.grid_size)
    outcomes = []
    curves = np.empty((n, 2, config.grid_size))
    for t in (0, 1):
        mu = rng.normal(config.alpha2 * t, 1.0, size=n)
        sigma = config.alpha1 + config.beta * d * t
        # inverse-CDF sampling keeps a single source of truth for the normal quantile
        draws = mu[:, None] + sigma[:, None] * norm.ppf(rng.random((n, s)))
        curves[:, t, :] = np.quantile(draws, grid, axis=1).T
    for i in range(n):
        outcomes.append(
            (QuantileCurve(curves[i, 0]), QuantileCurve(curves[i, 1]))
        )
    treatment = np.column_stack([np.zeros(n, dtype=int), d])
    return PanelDataset(tuple(outcomes), treatment), true_wasserstein_gatt(config)


def _block_probabilities(config):
    m = config.m1 + config.m2
    membership = np.array([0] * config.m1 + [1] * config.m2)
    p = np.array([[config.p11, config.p12], [config.p21, config.p22]])
    probs = p[np.ix_(membership, membership)]
    np.fill_diagonal(probs, 0.0)
    return m, probs


def true_network_gatt(config):
    """Population treatment-effect geodesic of the weighted-SBM DGP."""
    _, probs = _block_probabilities(config)

    def mean_laplacian(d, t):
        weight = config.alpha1 + config.alpha2 * t + d * (config.alpha3 + config.beta * t)
        lap = -probs * weight
        np.fill_diagonal(lap, 0.0)
        np.fill_diagonal(lap, -lap.sum(axis=1))
        return lap

    nu00, nu01 = mean_laplacian(0, 0), mean_laplacian(0, 1)
    nu10, nu11 = mean_laplacian(1, 0), mean_laplacian(1, 1)
    start = SymmetricMatrixPoint(nu10 + nu01 - nu00, kind=KIND_LAPLACIAN)
    end = SymmetricMatrixPoint(nu11, kind=KIND_LAPLACIAN)
    return Geodesic(start, end)


def generate_network_panel(config, rng):
    """Two-period panel of graph Laplacians, plus the true effect."""
    n = config.n
    m, probs = _block_probabilities(config)
    d = (rng.random(n) < config.treat_prob).astype(int)
    iu = np.triu_indices(m, k=1)
    edge_probs = probs[iu]
    outcomes = []
    for i in range(n):
        row = []
        for t in (0, 1):
            present = rng.random(len(edge_probs)) < edge_probs
            noise = rng.uniform(-1.0, 1.0, size=len(edge_probs))
            base = (
                config.alpha1
                + config.alpha2 * t
                + config.alpha3 * d[i]
                + config.beta * d[i] * t
            )
            w = np.where(present, base + noise, 0.0)
            weights = np.zeros((m, m))
            weights[iu] = w
            weights += weights.T
            lap = -weights
            np.fill_diagonal(lap, weights.sum(axis=1))
            kind = KIND_LAPLACIAN if w.min() >= 0.0 else KIND_FREE
            row.append(SymmetricMatrixPoint(lap, kind=kind))
        outcomes.append(tuple(row))
    treatment = np.column_stack([np.zeros(n, dtype=int), d])
    return PanelDataset(tuple(outcomes), treatment), true_network_gatt(config)


def generate_panel(config, rng):
    if config.space == SPACE_WASSERSTEIN:
        return generate_wasserstein_panel(config, rng)
    return generate_network_panel(config, rng)


def single_run_error(config, run):
    """One replication: generate, estimate, measure error in the quotient metric.

    Returns the error, or None when estimation failed (e.g. an empty group).
    """
    rng = _run_rng(config, run)
    panel, truth = generate_panel(config, rng)
    try:
        estimate = estimate_gatt(panel)
    except GeodidError:
        return None
    return quotient_distance(estimate.effect, truth, reference=truth.start)


def _run_job(args):
    config, run = args
    return single_run_error(config, run)


def worker_count():
    raw = os.environ.get("GEODID_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def slope_regression(points):
    """Least-squares slope and intercept for (log n, log mean-error) pairs."""
    points = list(points)
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    if len(set(xs.tolist())) < 2:
        raise ValueError("slope regression needs at least two distinct x values")
    slope, intercept = np.polyfit(xs, ys, 1)
    return float(slope), float(intercept)


def run_monte_carlo(configs, workers=None):
    """Run all replications of each config and fit the log-log convergence slope."""
    configs = list(configs)
    if not configs:
        raise ValueError("need at least one configuration")
    space = configs[0].space
    seed = configs[0].seed
    q = configs[0].q
    if workers is None:
        workers = worker_count()

    jobs = [(config, run) for config in configs for run in range(config.q)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=8))
    else:
        results = [_run_job(job) for job in jobs]

    errors = {config.n: [] for config in configs}
    excluded = {config.n: 0 for config in configs}
    for (config, _), err in zip(jobs, results):
        if err is None:
            excluded[config.n] += 1
        else:
            errors[config.n].append(float(err))
    mean_error = {
        n: float(np.mean(errs)) for n, errs in errors.items() if errs
    }

    slope = intercept = None
    if len(mean_error) >= 2:
        slope, intercept = slope_regression(
            [(np.log(n), np.log(e)) for n, e in sorted(mean_error.items())]
        )
    return SimReport(
        space=space,
        seed=seed,
        q=q,
        n_values=tuple(config.n for config in configs),
        errors=errors,
        mean_error=mean_error,
        excluded=excluded,
        slope=slope,
        intercept=intercept,
    )


def configs_for_sizes(base, n_values):
    """Copies of `base` across sample sizes, sharing seed and all DGP knobs."""
    return [replace(base, n=n) for n in n_values]
