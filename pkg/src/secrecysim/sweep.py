"""Grid sweeps over eavesdropper positions and Monte Carlo over station placements.

The sweep evaluates one policy at every cell of a square grid with a
vectorized engine that mirrors :mod:`secrecysim.policy` cell for cell
(the scalar selectors remain the reference semantics and the test oracle).
Aggregates use exact summation, so results are independent of evaluation
order and of the number of Monte Carlo workers.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .channel import Point2D, distance, distance_corrected_power, effective_distance
from .fjopt import DEGENERACY_EPS
from .policy import PolicyKind, Scenario, SelectionResult

ALL_POLICIES = (PolicyKind.NORMAL_WIFI, PolicyKind.SMART_AP, PolicyKind.SMART_AP_FJ)


@dataclass(frozen=True)
class SweepConfig:
    """Grid layout and policy for one eavesdropper sweep.

    Cells sit at ``cell_origin + cell_step * {0 .. grid_k-1}`` on each
    axis; the defaults put them on integer coordinates 1..K with a 1 m
    step.
    """

    grid_k: int = 120
    cell_origin: Point2D = Point2D(1.0, 1.0)
    cell_step: float = 1.0
    policy: PolicyKind = PolicyKind.SMART_AP_FJ

    def __post_init__(self):
        if self.grid_k < 1:
            raise ValueError("grid_k must be >= 1")
        if self.cell_step <= 0:
            raise ValueError("cell_step must be positive")


@dataclass(frozen=True)
class CellResult:
    """Per-cell outcome: the eavesdropper position and the policy's selection."""

    eve_pos: Point2D
    selection: SelectionResult


@dataclass(frozen=True)
class SweepSummary:
    """Aggregates of one sweep; ``grid`` is empty when cells were not retained.

    ``avg_secrecy`` is the mean of the raw (possibly negative) per-cell
    differences; ``avg_secrecy_truncated`` floors each cell at zero first,
    matching how secrecy maps are usually displayed.
    """

    avg_secrecy: float
    avg_secrecy_truncated: float
    avg_eve_capacity: float
    coverage_ratio: float
    grid: tuple[CellResult, ...] = ()


@dataclass(frozen=True)
class PolicyMeans:
    """The sweep metrics averaged over Monte Carlo samples for one policy."""

    avg_secrecy: float
    avg_secrecy_truncated: float
    avg_eve_capacity: float
    coverage_ratio: float


@dataclass(frozen=True)
class SampleRecord:
    """One Monte Carlo draw: the station position and its per-policy metrics."""

    sta_m: Point2D
    metrics: dict[PolicyKind, PolicyMeans]


@dataclass(frozen=True)
class MonteCarloSummary:
    """Per-policy means over random legitimate-station placements.

    Reproducible by construction: the same ``seed`` and ``n_samples``
    give bit-identical results for any worker count, because each
    sample's randomness is derived from ``(seed, sample_index)`` and the
    reduction runs in sample order with exact summation.
    """

    n_samples: int
    seed: int
    means: dict[PolicyKind, PolicyMeans]
    samples: tuple[SampleRecord, ...] = ()


def grid_coordinates(cfg: SweepConfig) -> tuple[np.ndarray, np.ndarray]:
    """Flattened cell coordinates in output order: y outer, x inner, ascending."""
    axis_x = cfg.cell_origin.x + cfg.cell_step * np.arange(cfg.grid_k, dtype=float)
    axis_y = cfg.cell_origin.y + cfg.cell_step * np.arange(cfg.grid_k, dtype=float)
    grid_x, grid_y = np.meshgrid(axis_x, axis_y)
    return grid_x.ravel(), grid_y.ravel()


@dataclass(frozen=True)
class _GridEval:
    """Raw per-cell arrays for one policy over one grid."""

    x: np.ndarray
    y: np.ndarray
    chosen: np.ndarray
    cap_legit: np.ndarray
    cap_eve: np.ndarray
    secrecy: np.ndarray
    fj_power: np.ndarray


def _clamped_quadratic_candidates(a, b, c, p_max):
    """Vectorized roots of the derivative numerator, clamped to [0, p_max].

    Mirrors :func:`secrecysim.fjopt.derivative_numerator_roots`: the
    quadratic term is dropped where it cannot matter at the cap's scale,
    and the stable form of the quadratic formula avoids cancellation.
    Lanes without a usable root fall back to 0, which is already a
    candidate and therefore harmless.
    """
    s = np.where(p_max > 0.0, p_max, 1.0)
    a_n = np.abs(a) * s * s
    b_n = np.abs(b) * s
    c_n = np.abs(c)
    linear = a_n <= DEGENERACY_EPS * np.maximum(b_n, c_n)
    linear_ok = linear & ~(b_n <= DEGENERACY_EPS * c_n) & (b != 0.0)
    disc = b * b - 4.0 * a * c
    quadratic = ~linear & (disc >= 0.0)
    sq = np.sqrt(np.maximum(disc, 0.0))
    q = -(b + np.copysign(sq, b)) / 2.0
    safe_a = np.where(a != 0.0, a, 1.0)
    safe_b = np.where(b != 0.0, b, 1.0)
    safe_q = np.where(q != 0.0, q, 1.0)
    root1 = np.where(quadratic, q / safe_a, np.where(linear_ok, -c / safe_b, 0.0))
    root2 = np.where(quadratic & (q != 0.0), c / safe_q, 0.0)
    return np.clip(root1, 0.0, p_max), np.clip(root2, 0.0, p_max)


def _evaluate_policy_grid(scenario: Scenario, cfg: SweepConfig, policy: PolicyKind) -> _GridEval:
    """Evaluate one policy at every grid cell; the array twin of policy.select."""
    par = scenario.params
    alpha = par.pathloss_alpha
    w = par.bandwidth_w
    ap1, ap2 = scenario.ap1, scenario.ap2
    x, y = grid_coordinates(cfg)

    d1m = effective_distance(distance(ap1.position, scenario.sta_m), par)
    d2m = effective_distance(distance(ap2.position, scenario.sta_m), par)
    d0 = par.ref_distance_d0
    d1e = np.maximum(np.sqrt((x - ap1.position.x) ** 2 + (y - ap1.position.y) ** 2), d0)
    d2e = np.maximum(np.sqrt((x - ap2.position.x) ** 2 + (y - ap2.position.y) ** 2), d0)
    p1 = distance_corrected_power(ap1.tx_power, par)
    p2 = distance_corrected_power(ap2.tx_power, par)

    c1m = math.log2(1.0 + p1 * d1m ** -alpha / par.noise_m)
    c2m = math.log2(1.0 + p2 * d2m ** -alpha / par.noise_m)
    c1e = np.log2(1.0 + p1 * d1e ** -alpha / par.noise_e)
    c2e = np.log2(1.0 + p2 * d2e ** -alpha / par.noise_e)

    if policy is PolicyKind.NORMAL_WIFI:
        choice = 1 if p1 * d1m ** -alpha >= p2 * d2m ** -alpha else 2
        chosen = np.full(x.shape, choice, dtype=np.int64)
    else:
        chosen = np.where(c1m - c1e >= c2m - c2e, 1, 2).astype(np.int64)
    pick1 = chosen == 1
    cap_m = np.where(pick1, c1m, c2m)
    cap_e = np.where(pick1, c1e, c2e)
    fj_power = np.zeros_like(cap_e)

    if policy is PolicyKind.SMART_AP_FJ:
        d_im = np.where(pick1, d1m, d2m)
        d_ie = np.where(pick1, d1e, d2e)
        d_jm = np.where(pick1, d2m, d1m)
        d_je = np.where(pick1, d2e, d1e)
        p_i = np.where(pick1, p1, p2)
        p_max = np.where(
            pick1,
            distance_corrected_power(ap2.tx_power_max, par),
            distance_corrected_power(ap1.tx_power_max, par),
        )
        n = par.noise_m
        dim_a = d_im ** alpha
        die_a = d_ie ** alpha
        djm_a = d_jm ** alpha
        dje_a = d_je ** alpha
        cap_a = dim_a * die_a
        cap_b = n * die_a * dje_a * dim_a + n * dim_a * djm_a * die_a
        cap_c = djm_a * die_a
        cap_d = n * die_a * dje_a * djm_a
        cap_e_ = dim_a * dje_a
        cap_f = n * dim_a * djm_a * dje_a
        cap_k = n * n * dim_a * djm_a * die_a * dje_a
        quad_a = p_i * cap_a * (cap_e_ - cap_c)
        quad_b = 2.0 * p_i * cap_a * (cap_f - cap_d)
        quad_c = (
            p_i * cap_b * (cap_f - cap_d)
            + p_i * p_i * (cap_c * cap_f - cap_e_ * cap_d)
            + p_i * cap_k * (cap_c - cap_e_)
        )
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            root1, root2 = _clamped_quadratic_candidates(quad_a, quad_b, quad_c, p_max)
        cands = np.sort(np.stack([np.zeros_like(p_max), p_max, root1, root2]), axis=0)
        num = cap_a * cands ** 2 + (cap_b + p_i * cap_c) * cands + (p_i * cap_d + cap_k)
        den = cap_a * cands ** 2 + (cap_b + p_i * cap_e_) * cands + (p_i * cap_f + cap_k)
        values = np.log2(num) - np.log2(den)
        # first maximum along the sorted axis = smallest power on ties
        best = np.argmax(values, axis=0)
        p_opt = np.take_along_axis(cands, best[None, :], axis=0)[0]

        cap_m_fj = np.log2(1.0 + p_i * d_im ** -alpha / (p_opt * d_jm ** -alpha + par.noise_m))
        cap_e_fj = np.log2(1.0 + p_i * d_ie ** -alpha / (p_opt * d_je ** -alpha + par.noise_e))
        # same guard as the scalar path: never fall below the no-jamming result
        worse = (cap_m_fj - cap_e_fj) < (cap_m - cap_e)
        fj_power = np.where(worse, 0.0, p_opt)
        cap_m = np.where(worse, cap_m, cap_m_fj)
        cap_e = np.where(worse, cap_e, cap_e_fj)

    return _GridEval(
        x=x,
        y=y,
        chosen=chosen,
        cap_legit=w * cap_m,
        cap_eve=w * cap_e,
        secrecy=w * (cap_m - cap_e),
        fj_power=fj_power,
    )


def _metrics(ev: _GridEval) -> PolicyMeans:
    size = ev.secrecy.size
    return PolicyMeans(
        avg_secrecy=math.fsum(ev.secrecy) / size,
        avg_secrecy_truncated=math.fsum(np.maximum(ev.secrecy, 0.0)) / size,
        avg_eve_capacity=math.fsum(ev.cap_eve) / size,
        coverage_ratio=int(np.count_nonzero(ev.secrecy > 0.0)) / size,
    )


def _cells(ev: _GridEval) -> tuple[CellResult, ...]:
    return tuple(
        CellResult(
            eve_pos=Point2D(float(ev.x[i]), float(ev.y[i])),
            selection=SelectionResult(
                chosen_ap=int(ev.chosen[i]),
                idle_ap=3 - int(ev.chosen[i]),
                cap_legit=float(ev.cap_legit[i]),
                cap_eve=float(ev.cap_eve[i]),
                secrecy=float(ev.secrecy[i]),
                fj_power=float(ev.fj_power[i]),
            ),
        )
        for i in range(ev.secrecy.size)
    )


def sweep_eavesdropper(scenario: Scenario, cfg: SweepConfig, retain_cells: bool = True) -> SweepSummary:
    """Evaluate ``cfg.policy`` at every grid cell and aggregate the metrics."""
    ev = _evaluate_policy_grid(scenario, cfg, cfg.policy)
    m = _metrics(ev)
    return SweepSummary(
        avg_secrecy=m.avg_secrecy,
        avg_secrecy_truncated=m.avg_secrecy_truncated,
        avg_eve_capacity=m.avg_eve_capacity,
        coverage_ratio=m.coverage_ratio,
        grid=_cells(ev) if retain_cells else (),
    )


def coverage_ratio(grid) -> float:
    """Fraction of cells whose secrecy is strictly positive."""
    cells = list(grid)
    if not cells:
        raise ValueError("coverage_ratio needs a non-empty grid")
    return sum(1 for cell in cells if cell.selection.secrecy > 0.0) / len(cells)


def _draw_position(scenario: Scenario, cfg: SweepConfig, seed: int, index: int, lattice: bool) -> Point2D:
    # per-sample generator keyed by (seed, index): order- and worker-independent
    rng = np.random.default_rng([seed, index])
    if lattice:
        ix, iy = rng.integers(0, cfg.grid_k, size=2)
        return Point2D(
            cfg.cell_origin.x + cfg.cell_step * float(ix),
            cfg.cell_origin.y + cfg.cell_step * float(iy),
        )
    x, y = rng.uniform(0.0, scenario.map_extent, size=2)
    return Point2D(float(x), float(y))


def _run_sample(args) -> tuple[int, float, float, dict[PolicyKind, PolicyMeans]]:
    scenario, cfg, seed, index, lattice = args
    pos = _draw_position(scenario, cfg, seed, index, lattice)
    placed = replace(scenario, sta_m=pos)
    metrics = {
        policy: _metrics(_evaluate_policy_grid(placed, cfg, policy)) for policy in ALL_POLICIES
    }
    return index, pos.x, pos.y, metrics


def monte_carlo(
    scenario_template: Scenario,
    cfg: SweepConfig,
    n: int,
    seed: int,
    workers: int = 1,
    lattice: bool = False,
    retain_samples: bool = False,
) -> MonteCarloSummary:
    """Average the sweep metrics of all three policies over ``n`` random
    legitimate-station placements.

    Positions are drawn uniformly over the map square (or from the grid
    lattice when ``lattice`` is set); ``cfg.policy`` is ignored because
    every sample evaluates all policies.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if seed < 0:
        raise ValueError("seed must be a nonnegative integer")
    tasks = [(scenario_template, cfg, seed, index, lattice) for index in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(_run_sample, tasks, chunksize=max(1, n // (4 * workers))))
    else:
        raw = [_run_sample(task) for task in tasks]
    raw.sort(key=lambda item: item[0])

    means: dict[PolicyKind, PolicyMeans] = {}
    for policy in ALL_POLICIES:
        per_policy = [item[3][policy] for item in raw]
        means[policy] = PolicyMeans(
            avg_secrecy=math.fsum(m.avg_secrecy for m in per_policy) / n,
            avg_secrecy_truncated=math.fsum(m.avg_secrecy_truncated for m in per_policy) / n,
            avg_eve_capacity=math.fsum(m.avg_eve_capacity for m in per_policy) / n,
            coverage_ratio=math.fsum(m.coverage_ratio for m in per_policy) / n,
        )
    samples = ()
    if retain_samples:
        samples = tuple(
            SampleRecord(sta_m=Point2D(x, y), metrics=metrics) for _, x, y, metrics in raw
        )
    return MonteCarloSummary(n_samples=n, seed=seed, means=means, samples=samples)
