"""Randomized verification suites.

A suite runs ``trials`` independent trials.  Each trial draws an instance
from its own ``(seed, trial)`` stream and returns a list of :class:`Check`
objects; a check passes when ``margin >= -tol``.  Inequalities ``x <= y``
use ``margin = y - x``; equalities use ``margin = -|error|``.
"""

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from ..barycenter import (
    arithmetic_mean,
    harmonic_mean,
    karcher_mean,
    log_euclidean_mean,
    power_pushforward,
    product_barycenter_measure,
    pushforward_eigen,
)
from ..io import measure_to_json
from ..linalg import (
    ConvergenceError,
    _apply,
    _eigh,
    geodesic,
    loewner_min_eig,
    riemannian_distance,
    thompson_distance,
)
from ..majorization import log_majorization_margins, vector_geometric_mean
from ..measures import DiscreteMeasure
from ..symplectic import (
    SymplecticPairingError,
    compound_matrix,
    extended_symplectic_map,
    standard_J,
    symplectic_eigenvalues,
    symplectic_prefix_product,
    top_symplectic_bound_holds,
    williamson,
)
from ..transport import wasserstein1
from .random import (
    random_measure,
    random_orthogonal,
    random_psd,
    random_spd,
    random_symmetric,
    random_symplectic,
    random_weights,
    spd_ball,
    trial_rng,
)


@dataclass
class InstanceConfig:
    """Instance parameters; ``None`` fields take the suite's defaults.

    ``n`` is the matrix dimension, or the half-dimension for symplectic
    suites.  Trial dimensions are drawn uniformly from ``[n_min, n]`` and atom
    counts from ``[m_min, m]``.  ``measures`` and ``support`` bound the
    number of measures and atoms per measure in the product-measure suites.
    """

    trials: Optional[int] = None
    n: Optional[int] = None
    n_min: Optional[int] = None
    m: Optional[int] = None
    m_min: Optional[int] = None
    measures: Optional[int] = None
    support: Optional[int] = None
    r_grid: Optional[tuple] = None
    weights: Optional[str] = None
    cond_cap: Optional[float] = None
    tol: Optional[float] = None
    karcher_tol: float = 1e-11
    seed: int = 0

    def resolve(self, defaults):
        values = {k: (defaults.get(k) if v is None else v) for k, v in asdict(self).items()}
        cfg = InstanceConfig(**values)
        cfg.r_grid = tuple(float(r) for r in cfg.r_grid)
        cfg.n_min = min(cfg.n_min, cfg.n)
        cfg.m_min = min(cfg.m_min, cfg.m)
        for key in ("trials", "n", "n_min", "m", "m_min", "measures", "support"):
            if getattr(cfg, key) < 1:
                raise ValueError(f"{key} must be positive")
        if cfg.cond_cap < 1:
            raise ValueError("cond_cap must be >= 1")
        if cfg.weights not in ("uniform", "random"):
            raise ValueError("weights must be 'uniform' or 'random'")
        if not all(0 < r <= 1 for r in cfg.r_grid):
            raise ValueError("r values must lie in (0, 1]")
        return cfg


BASE_DEFAULTS = dict(
    trials=100,
    n=4,
    n_min=2,
    m=4,
    m_min=2,
    measures=2,
    support=3,
    r_grid=(0.25, 0.5, 0.75),
    weights="uniform",
    cond_cap=1e4,
    tol=1e-8,
)


@dataclass
class Check:
    label: str
    margin: float
    tol: float

    @property
    def ok(self):
        return bool(np.isfinite(self.margin) and self.margin >= -self.tol)


@dataclass(frozen=True)
class Suite:
    name: str
    anchor: str
    trial: Callable
    defaults: dict
    report_only: bool = False


SUITES = {}


def _suite(name, anchor, report_only=False, **defaults):
    def register(fn):
        SUITES[name] = Suite(name, anchor, fn, {**BASE_DEFAULTS, **defaults}, report_only)
        return fn

    return register


@dataclass
class SuiteReport:
    suite: str
    anchor: str
    trials: int
    passes: int
    worst_margin: Optional[float]
    failures: list
    config: dict
    wall_time: float
    report_only: bool = False
    rows: list = field(default_factory=list, repr=False)

    @property
    def ok(self):
        return self.report_only or not self.failures

    def to_json(self):
        return {
            "suite": self.suite,
            "anchor": self.anchor,
            "report_only": self.report_only,
            "trials": self.trials,
            "passes": self.passes,
            "worst_margin": self.worst_margin,
            "failures": self.failures,
            "config": self.config,
            "wall_time": self.wall_time,
        }


# ---------------------------------------------------------------- helpers


def _dim(rng, cfg):
    return int(rng.integers(cfg.n_min, cfg.n + 1))


def _count(rng, cfg):
    return int(rng.integers(cfg.m_min, cfg.m + 1))


def _G(mu, cfg):
    return karcher_mean(mu, cfg.karcher_tol).mean


def _eig(A):
    return _eigh(A)[0]


def _pow(A, p):
    return _apply(A, lambda x: x ** p)


def _rel(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)) / max(np.linalg.norm(b), 1e-300))


def _logmaj(label, a, b, tol):
    slacks, gap = log_majorization_margins(a, b)
    checks = [Check(f"{label} [total]", -abs(gap), tol)]
    if slacks.size:
        checks.append(Check(f"{label} [prefix]", float(slacks.min()), tol))
    return checks


def _instance(**measures):
    return {k: measure_to_json(v) for k, v in measures.items()}


# ------------------------------------------------------------------ suites


@_suite("metric-comp", "d_T(A,B) <= delta(A,B) <= sqrt(n) d_T(A,B)", n=8, tol=1e-10)
def _metric_comp(rng, cfg):
    n = _dim(rng, cfg)
    A, B = random_spd(n, cfg.cond_cap, rng), random_spd(n, cfg.cond_cap, rng)
    d, dT = riemannian_distance(A, B), thompson_distance(A, B)
    return [
        Check("d_T <= delta", d - dT, cfg.tol),
        Check("delta <= sqrt(n) d_T", np.sqrt(n) * dT - d, cfg.tol),
        Check("delta symmetric", -abs(d - riemannian_distance(B, A)), cfg.tol),
    ], None


@_suite(
    "emi-lidskii",
    "||log A - log B||_2 <= delta(A,B);  ||lambda(X) - lambda(Y)||_2 <= ||X - Y||_2",
    n=8,
    tol=1e-10,
)
def _emi_lidskii(rng, cfg):
    n = _dim(rng, cfg)
    A, B = random_spd(n, cfg.cond_cap, rng), random_spd(n, cfg.cond_cap, rng)
    LA, LB = _apply(A, np.log), _apply(B, np.log)
    X, Y = random_symmetric(n, rng), random_symmetric(n, rng)
    return [
        Check("EMI", riemannian_distance(A, B) - np.linalg.norm(LA - LB), cfg.tol),
        Check("Lidskii-Wielandt on logs", np.linalg.norm(LA - LB) - np.linalg.norm(_eig(LA) - _eig(LB)), cfg.tol),
        Check("Lidskii-Wielandt on symmetric", np.linalg.norm(X - Y) - np.linalg.norm(_eig(X) - _eig(Y)), cfg.tol),
    ], None


@_suite(
    "eig-contract",
    "delta(lambda(A), lambda(B)) <= delta(A,B);  W1 of eigenvalue push-forwards <= W1",
    n=8,
    m=3,
    tol=1e-10,
)
def _eig_contract(rng, cfg):
    n = _dim(rng, cfg)
    A, B = random_spd(n, cfg.cond_cap, rng), random_spd(n, cfg.cond_cap, rng)
    la, lb = _eig(A), _eig(B)
    checks = [
        Check("delta contraction", riemannian_distance(A, B) - riemannian_distance(la, lb), cfg.tol),
        Check("d_T Lipschitz-1", thompson_distance(A, B) - thompson_distance(la, lb), cfg.tol),
    ]
    mu = random_measure(n, _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    nu = random_measure(n, _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    lmu, lnu = pushforward_eigen(mu), pushforward_eigen(nu)
    for ground in ("riemannian", "thompson"):
        lhs = wasserstein1(lmu, lnu, ground)[0]
        rhs = wasserstein1(mu, nu, ground)[0]
        checks.append(Check(f"{ground} W1 push-forward", rhs - lhs, max(cfg.tol, 1e-8)))
    return checks, _instance(mu=mu, nu=nu)


@_suite(
    "thm-main-eig",
    "lambda(G(mu)) <_log lambda^{1/r}(G(mu^r)) <_log lambda(exp int log A dmu) <_log G(lambda_* mu)",
    n=5,
    m=6,
)
def _thm_main_eig(rng, cfg):
    mu = random_measure(_dim(rng, cfg), _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    base = _eig(_G(mu, cfg))
    le = _eig(log_euclidean_mean(mu))
    top = vector_geometric_mean(pushforward_eigen(mu).atoms, mu.weights)
    checks = _logmaj("lambda(G(mu)) <_log log-Euclidean", base, le, cfg.tol)
    checks += _logmaj("log-Euclidean <_log G(lambda_* mu)", le, top, cfg.tol)
    prev, prev_r = base, 1.0
    for r in sorted(cfg.r_grid, reverse=True):
        cur = _eig(_G(power_pushforward(mu, r), cfg)) ** (1.0 / r)
        checks += _logmaj(f"r={prev_r:g} <_log r={r:g}", prev, cur, cfg.tol)
        checks += _logmaj(f"r={r:g} <_log log-Euclidean", cur, le, cfg.tol)
        prev, prev_r = cur, r
    return checks, _instance(mu=mu)


def _symp_chain(mu, r_values, cfg):
    top = vector_geometric_mean(pushforward_eigen(mu, extended_symplectic_map).atoms, mu.weights)
    checks = []
    for r in r_values:
        lhs = extended_symplectic_map(_G(power_pushforward(mu, r), cfg)) ** (1.0 / r)
        checks += _logmaj(f"dd^(1/r)(G_w(mu^r)) <_log G_w(dd_* mu), r={r:g}", lhs, top, cfg.tol)
    return checks


@_suite(
    "thm-main-symp",
    "dd^{1/r}(G(mu^r)) <_log G(dd_* mu), 0 < r <= 1 (r = 1: dd(G(mu)) <_log G(dd_* mu))",
    n=3,
    n_min=1,
    m=6,
)
def _thm_main_symp(rng, cfg):
    mu = random_measure(2 * _dim(rng, cfg), _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    return _symp_chain(mu, sorted(set(cfg.r_grid) | {1.0}), cfg), _instance(mu=mu)


@_suite(
    "lemma-4-4",
    "dd^{1/r}(G_w(A_1^r, ..., A_m^r)) <_log G_w(dd(A_1), ..., dd(A_m)), weighted",
    n=3,
    n_min=1,
    m=6,
    weights="random",
    r_grid=(0.25, 0.5, 1.0),
)
def _lemma_44(rng, cfg):
    mu = random_measure(2 * _dim(rng, cfg), _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    checks = _symp_chain(mu, cfg.r_grid, cfg)
    # top symplectic eigenvalue step of the argument, checked on its own
    top = np.exp(mu.weights @ np.log([extended_symplectic_map(A)[0] for A in mu.atoms]))
    for r in cfg.r_grid:
        lhs = extended_symplectic_map(_G(power_pushforward(mu, r), cfg))[0] ** (1.0 / r)
        checks.append(Check(f"dd_1 bound, r={r:g}", np.log(top) - np.log(lhs), cfg.tol))
    return checks, _instance(mu=mu)


_ALPHA_FACTORS = (0.5, 0.9, 0.99, 1 - 1e-6, 1 - 2e-7, 1 + 2e-7, 1 + 1e-6, 1.01, 1.1, 2.0)


@_suite("criterion-f43", "dd_1(A) <= alpha  <=>  J^T A J <= alpha^2 A^{-1}", n=3, n_min=1)
def _criterion_f43(rng, cfg):
    A = random_spd(2 * _dim(rng, cfg), cfg.cond_cap, rng)
    top = extended_symplectic_map(A)[0]
    checks = []
    for f in _ALPHA_FACTORS + (float(np.exp(rng.uniform(-0.1, 0.1))),):
        alpha = top * f
        gap = abs(f - 1.0)
        if gap <= 1e-7:
            continue
        agree = top_symplectic_bound_holds(A, alpha) == (top <= alpha)
        checks.append(Check(f"alpha = {f:.8g} dd_1", gap if agree else -gap, 0.0))
    return checks, None


@_suite(
    "compound-prefix",
    "prod_{i<=k} dd_i(A) = lambda_1^{1/2}((^k A)^{1/2} J^(k)T (^k A) J^(k) (^k A)^{1/2})",
    n=3,
    n_min=1,
    tol=1e-7,
)
def _compound_prefix(rng, cfg):
    n = _dim(rng, cfg)
    A = random_spd(2 * n, cfg.cond_cap, rng)
    ext = extended_symplectic_map(A)
    checks = []
    for k in range(1, 2 * n + 1):
        lifted = symplectic_prefix_product(A, k)
        checks.append(Check(f"k={k}", -abs(lifted / np.prod(ext[:k]) - 1.0), cfg.tol))
    X, Y = rng.standard_normal((2, 2 * n, 2 * n))
    k = int(rng.integers(1, 2 * n + 1))
    err = _rel(compound_matrix(X @ Y, k), compound_matrix(X, k) @ compound_matrix(Y, k))
    checks.append(Check(f"compound multiplicative, k={k}", -err, 1e-8))
    return checks, None


@_suite(
    "karcher-props",
    "sum_j w_j log(X^{-1/2} A_j X^{-1/2}) = 0 at X = G(mu); two atoms give A #_t B",
    n=6,
    m=8,
    weights="random",
)
def _karcher_props(rng, cfg):
    n, m = _dim(rng, cfg), _count(rng, cfg)
    mu = random_measure(n, m, cfg.cond_cap, rng, cfg.weights)
    res = karcher_mean(mu, cfg.karcher_tol)
    G = res.mean
    logdet = lambda X: float(np.sum(np.log(_eig(X))))
    checks = [
        Check("Karcher residual", cfg.karcher_tol - res.residual_norm, 0.0),
        Check("log det identity", -abs(logdet(G) - sum(w * logdet(A) for A, w in zip(mu.atoms, mu.weights))), 1e-9),
        Check("harmonic <= G", loewner_min_eig(harmonic_mean(mu), G), 1e-9),
        Check("G <= arithmetic", loewner_min_eig(G, arithmetic_mean(mu)), 1e-9),
    ]
    # two atoms with weights (1-t, t) sit on the geodesic
    t = float(rng.choice([0.25, 0.5, 0.75]))
    A, B = random_spd(n, cfg.cond_cap, rng), random_spd(n, cfg.cond_cap, rng)
    G2 = _G(DiscreteMeasure(np.stack([A, B]), np.array([1 - t, t]), validate=False), cfg)
    checks.append(Check(f"two atoms = A #_t B, t={t:g}", -riemannian_distance(G2, geodesic(A, B, t)), 1e-9))
    # commuting family: entrywise weighted geometric mean of the spectra
    Q = random_orthogonal(n, rng)
    spectra = np.exp(rng.uniform(-0.5, 0.5, (m, n)) * np.log(cfg.cond_cap))
    commuting = DiscreteMeasure(np.stack([(Q * s) @ Q.T for s in spectra]), mu.weights, validate=False)
    expected = (Q * np.exp(mu.weights @ np.log(spectra))) @ Q.T
    checks.append(Check("commuting family", -_rel(_G(commuting, cfg), expected), 1e-10))
    return checks, _instance(mu=mu)


@_suite(
    "contraction",
    "delta(G(mu), G(nu)) <= delta^W(mu, nu);  d_T(G(mu), G(nu)) <= d_T^W(mu, nu)",
    n=4,
    m=3,
    m_min=3,
)
def _contraction(rng, cfg):
    n = _dim(rng, cfg)
    mu = random_measure(n, _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    nu = random_measure(n, _count(rng, cfg), cfg.cond_cap, rng, cfg.weights)
    Gm, Gn = _G(mu, cfg), _G(nu, cfg)
    checks = []
    for ground, dist in (("riemannian", riemannian_distance), ("thompson", thompson_distance)):
        w1 = wasserstein1(mu, nu, ground)[0]
        checks.append(Check(f"{ground} barycenter contraction", w1 - dist(Gm, Gn), cfg.tol))
        for r in cfg.r_grid:
            w1r = wasserstein1(power_pushforward(mu, r), power_pushforward(nu, r), ground)[0]
            checks.append(Check(f"{ground} power map r={r:g}", r * w1 - w1r, cfg.tol))
    return checks, _instance(mu=mu, nu=nu)


LIE_TROTTER_S = (2.0 ** -2, 2.0 ** -4, 2.0 ** -6)


@_suite(
    "lie-trotter",
    "G(mu^s)^{1/s} -> exp int log A dmu(A) as s -> 0",
    n=4,
    m=4,
)
def _lie_trotter(rng, cfg):
    n, m = _dim(rng, cfg), _count(rng, cfg)
    # support inside the delta-ball of radius 1/2 about I, so diameter <= 1
    mu = DiscreteMeasure(
        np.stack([spd_ball(n, 0.5, rng) for _ in range(m)]), random_weights(m, cfg.weights, rng), validate=False
    )
    target = log_euclidean_mean(mu)
    errs = [riemannian_distance(_pow(_G(power_pushforward(mu, s), cfg), 1.0 / s), target) for s in LIE_TROTTER_S]
    checks = [
        Check(f"decrease s={a:g} -> {b:g}", e0 - e1, 0.0)
        for (a, b), (e0, e1) in zip(zip(LIE_TROTTER_S, LIE_TROTTER_S[1:]), zip(errs, errs[1:]))
    ]
    checks.append(Check("error below 1e-3 at smallest s", 1e-3 - errs[-1], 0.0))
    return checks, _instance(mu=mu)


@_suite(
    "prop-3-2",
    "G(lambda_* mu) = ((prod_j lambda_i(A_j))^{1/m})_i for uniform mu",
    n=5,
    m=6,
)
def _prop_32(rng, cfg):
    mu = random_measure(_dim(rng, cfg), _count(rng, cfg), cfg.cond_cap, rng, "uniform")
    lam = np.array([_eig(A) for A in mu.atoms])
    closed = np.prod(lam, axis=0) ** (1.0 / len(lam))
    vector = vector_geometric_mean(lam)
    diagonal = np.diag(_G(DiscreteMeasure(np.stack([np.diag(l) for l in lam]), mu.weights, validate=False), cfg))
    return [
        Check("closed form vs vector barycenter", -np.max(np.abs(vector / closed - 1)), 1e-10),
        Check("closed form vs diagonal Karcher mean", -np.max(np.abs(diagonal / closed - 1)), 1e-10),
    ], _instance(mu=mu)


def _random_measures(rng, cfg, dim):
    count = int(rng.integers(min(2, cfg.measures), cfg.measures + 1))
    mus = []
    for _ in range(count):
        k = int(rng.integers(1, cfg.support + 1))
        mus.append(random_measure(dim, k, cfg.cond_cap, rng, cfg.weights))
    return mus


def _lambda_chain(mus, spectrum, cfg, name):
    Lam = product_barycenter_measure(mus, tol=cfg.karcher_tol)
    first = spectrum(_G(Lam, cfg))
    pushed = pushforward_eigen(Lam, spectrum)
    middle = vector_geometric_mean(pushed.atoms, pushed.weights)
    last_measure = product_barycenter_measure([pushforward_eigen(mu, spectrum) for mu in mus])
    last = vector_geometric_mean(last_measure.atoms, last_measure.weights)
    return _logmaj(f"{name}(G(Lambda)) <_log G({name}_* Lambda)", first, middle, cfg.tol) + _logmaj(
        f"G({name}_* Lambda) <_log G(Lambda({name}_* mu_j))", middle, last, cfg.tol
    )


@_suite(
    "thm-5-1",
    "lambda(G(Lambda(mu_1..mu_m))) <_log G(lambda_* Lambda(mu_1..mu_m)) <_log G(Lambda(lambda_* mu_1..lambda_* mu_m))",
    n=2,
    n_min=2,
    measures=3,
    support=3,
    trials=50,
)
def _thm_51(rng, cfg):
    mus = _random_measures(rng, cfg, _dim(rng, cfg))
    return _lambda_chain(mus, _eig, cfg, "lambda"), {f"mu{j}": measure_to_json(mu) for j, mu in enumerate(mus)}


@_suite(
    "thm-5-2",
    "dd(G(Lambda(mu_1..mu_m))) <_log G(dd_* Lambda(mu_1..mu_m)) <_log G(Lambda(dd_* mu_1..dd_* mu_m))",
    n=2,
    n_min=1,
    measures=3,
    support=3,
    trials=50,
)
def _thm_52(rng, cfg):
    mus = _random_measures(rng, cfg, 2 * _dim(rng, cfg))
    return _lambda_chain(mus, extended_symplectic_map, cfg, "dd"), {
        f"mu{j}": measure_to_json(mu) for j, mu in enumerate(mus)
    }


@_suite("williamson", "A = M^T diag(D, D) M, M^T J M = J, D = symplectic eigenvalues", n=3, n_min=1)
def _williamson(rng, cfg):
    n = _dim(rng, cfg)
    A = random_spd(2 * n, cfg.cond_cap, rng)
    spectrum = symplectic_eigenvalues(A)
    W = williamson(A)
    J = standard_J(n)
    DD = np.concatenate([W.D, W.D])
    S = random_symplectic(n, rng)
    return [
        Check("D vs eigenvalue formula", -_rel(W.D, spectrum.d), 1e-8),
        Check("extended = doubled reversed D", -_rel(np.repeat(W.D[::-1], 2), spectrum.extended), 1e-8),
        Check("M^T J M = J", -float(np.max(np.abs(W.M.T @ J @ W.M - J))), 1e-8),
        Check("M^T diag(D,D) M = A", -_rel(W.M.T @ (DD[:, None] * W.M), A), 1e-8),
        Check("symplectic congruence invariance", -_rel(extended_symplectic_map(S.T @ A @ S), spectrum.extended), 1e-8),
    ], None


@_suite(
    "symp-lipschitz",
    "A <= B => dd(A) <= dd(B);  d_T(dd(A), dd(B)) <= d_T(A,B);  delta(dd(A), dd(B)) <= sqrt(2n) delta(A,B)",
    n=3,
    n_min=1,
    tol=1e-10,
)
def _symp_lipschitz(rng, cfg):
    n = _dim(rng, cfg)
    A, B = random_spd(2 * n, cfg.cond_cap, rng), random_spd(2 * n, cfg.cond_cap, rng)
    C = A + random_psd(2 * n, rng, scale=float(np.exp(rng.uniform(-3, 1))))
    dA, dB, dC = extended_symplectic_map(A), extended_symplectic_map(B), extended_symplectic_map(C)
    return [
        Check("monotone under PSD perturbation", float(np.min(dC - dA)), 1e-9),
        Check("d_T Lipschitz-1", thompson_distance(A, B) - thompson_distance(dA, dB), cfg.tol),
        Check("delta Lipschitz-sqrt(2n)", np.sqrt(2 * n) * riemannian_distance(A, B) - riemannian_distance(dA, dB), cfg.tol),
    ], None


_CONJECTURE_CAPS = (1e2, 1e4, 1e6, 1e8)


@_suite(
    "conjectures-abc",
    "(a) dd(G(mu^r)^{1/r}) <_log G(dd_* mu)  (b) dd(G(mu)^r) <_log dd(G(mu^r))  (c) dd(exp int log X dmu) <_log G(dd_* mu)",
    report_only=True,
    n=3,
    n_min=2,
    m=4,
    weights="random",
    cond_cap=1e8,
)
def _conjectures(rng, cfg):
    caps = [c for c in _CONJECTURE_CAPS if c <= cfg.cond_cap] or [cfg.cond_cap]
    cap = caps[int(rng.integers(len(caps)))]
    mu = random_measure(2 * _dim(rng, cfg), _count(rng, cfg), cap, rng, cfg.weights)
    dd = extended_symplectic_map
    top = vector_geometric_mean(pushforward_eigen(mu, dd).atoms, mu.weights)
    G = _G(mu, cfg)
    checks = _logmaj(f"(c) cap={cap:g}", dd(log_euclidean_mean(mu)), top, cfg.tol)
    for r in cfg.r_grid:
        if r == 1:
            continue
        Gr = _G(power_pushforward(mu, r), cfg)
        checks += _logmaj(f"(a) r={r:g} cap={cap:g}", dd(_pow(Gr, 1.0 / r)), top, cfg.tol)
        checks += _logmaj(f"(b) r={r:g} cap={cap:g}", dd(_pow(G, r)), dd(Gr), cfg.tol)
    return checks, _instance(mu=mu)


# ---------------------------------------------------------------- runner


def _run_trial(args):
    name, cfg, trial, emit_dir = args
    suite = SUITES[name]
    rng = trial_rng(cfg.seed, trial)
    try:
        checks, instance = suite.trial(rng, cfg)
    except (ConvergenceError, SymplecticPairingError, np.linalg.LinAlgError) as exc:
        return trial, None, False, f"numerical failure: {exc}"
    if emit_dir and instance is not None:
        os.makedirs(emit_dir, exist_ok=True)
        with open(os.path.join(emit_dir, f"{name}-{cfg.seed}-{trial}.json"), "w") as fh:
            json.dump({"suite": name, "seed": cfg.seed, "trial": trial, **instance}, fh)
    margin = min(c.margin for c in checks)
    bad = [c for c in checks if not c.ok]
    if bad:
        note = "; ".join(f"{c.label}: margin {c.margin:.3e} (tol {c.tol:g})" for c in bad)
    else:
        worst = min(checks, key=lambda c: c.margin)
        note = f"tightest: {worst.label}"
    return trial, float(margin), not bad, note


def run_suite(name, config=None, jobs=1, emit_dir=None) -> SuiteReport:
    """Run one suite and aggregate its trials into a :class:`SuiteReport`.

    Trials are independent; with ``jobs > 1`` they run in worker processes
    and the report is identical to the sequential one apart from
    ``wall_time``.
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    suite = SUITES[name]
    cfg = (config or InstanceConfig()).resolve(suite.defaults)
    start = time.perf_counter()
    tasks = [(name, cfg, t, emit_dir) for t in range(cfg.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_trial(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    failures = [
        {"seed": cfg.seed, "trial": t, "margin": margin, "note": note} for t, margin, ok, note in results if not ok
    ]
    margins = [m for _, m, _, _ in results if m is not None]
    cfg_json = asdict(cfg)
    cfg_json["r_grid"] = list(cfg.r_grid)
    return SuiteReport(
        suite=name,
        anchor=suite.anchor,
        trials=cfg.trials,
        passes=sum(ok for _, _, ok, _ in results),
        worst_margin=min(margins) if margins else None,
        failures=failures,
        config=cfg_json,
        wall_time=time.perf_counter() - start,
        report_only=suite.report_only,
        rows=[(name, cfg.seed, t, m, ok) for t, m, ok, _ in results],
    )
