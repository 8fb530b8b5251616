"""Monte-Carlo machinery for multigroup ML decoding.

The decoding claim being exercised: when the cross-group weights are
quasi-orthogonal, the ML metric ||y - S(x) h||^2 splits into one term per
group (plus a constant), so per-group exhaustive search and full exhaustive
search pick the same symbols.  This module evaluates designs as complex
arrays, draws quasi-static Rayleigh channels with AWGN, runs both decoders,
and reports symbol error rate and decoder agreement.

Conventions: T = N_t (one square codeword per channel block), N_r = 1 by
default, SNR is average transmitted codeword power per channel use over the
noise variance per receive entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .designs import LinearDesign, normalize_partition

# Angle that separates the per-group square constellations: half the arc
# tangent of 2, the classic rotation making coordinate differences distinct.
DEFAULT_ROTATION = 0.5 * math.atan(2.0)

# Exhaustive search is a correctness oracle, not a production decoder.
_MAX_HYPOTHESES = 1 << 20


@dataclass(frozen=True, eq=False)
class GroupedSignalSet:
    """Per-group real constellations: groups[i] has shape (points, group size).

    `rotation` records the pairwise rotation baked into the points."""

    groups: tuple[np.ndarray, ...]
    rotation: float = 0.0

    def __post_init__(self):
        for arr in self.groups:
            if arr.ndim != 2 or arr.shape[0] < 1:
                raise ValueError("each group needs a non-empty (points, size) array")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(arr.shape[1] for arr in self.groups)

    @property
    def points_per_group(self) -> tuple[int, ...]:
        return tuple(arr.shape[0] for arr in self.groups)


def _pam_levels(m: int) -> np.ndarray:
    return np.arange(m, dtype=np.float64) * 2.0 - (m - 1)


def _rotate_pairs(points: np.ndarray, angle: float) -> np.ndarray:
    if angle == 0.0:
        return points
    out = points.copy()
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    for t in range(points.shape[1] // 2):
        out[:, 2 * t : 2 * t + 2] = points[:, 2 * t : 2 * t + 2] @ rot.T
    return out


def grouped_signal_set(
    sizes: Sequence[int],
    points_per_group: int = 4,
    rotation: float = DEFAULT_ROTATION,
) -> GroupedSignalSet:
    """Hypercube (PAM-product) constellation per group, rotated pairwise and
    normalized to unit average energy per group.

    points_per_group must be a perfect d-th power for a group of d reals
    (4 points on 2 reals gives the rotated square)."""
    groups = []
    for size in sizes:
        levels = round(points_per_group ** (1.0 / size))
        if levels**size != points_per_group or levels < 2:
            raise ValueError(
                f"{points_per_group} points do not form a grid over {size} reals"
            )
        axes = np.meshgrid(*[_pam_levels(levels)] * size, indexing="ij")
        pts = np.stack([ax.ravel() for ax in axes], axis=1)
        pts = _rotate_pairs(pts, rotation)
        energy = float(np.mean(np.sum(pts**2, axis=1)))
        pts = pts / math.sqrt(energy)
        pts.setflags(write=False)
        groups.append(pts)
    return GroupedSignalSet(tuple(groups), rotation)


def default_signal_set(
    d: LinearDesign,
    partition: Sequence[Sequence[int]] | None = None,
    points_per_group: int = 4,
    rotation: float = DEFAULT_ROTATION,
) -> GroupedSignalSet:
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    return grouped_signal_set([len(gp) for gp in groups], points_per_group, rotation)


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """One quasi-static block: h is N_t x N_r i.i.d. CN(0,1), noise is
    T x N_r unit-variance CN(0,1) (scaled by sqrt(N0) at use), snr linear."""

    h: np.ndarray
    noise: np.ndarray
    snr: float
    seed: object = None


def draw_channel(nt: int, nr: int, t: int, snr: float, seed) -> ChannelRealization:
    rng = np.random.default_rng(seed)
    h = (rng.standard_normal((nt, nr)) + 1j * rng.standard_normal((nt, nr))) / math.sqrt(2)
    w = (rng.standard_normal((t, nr)) + 1j * rng.standard_normal((t, nr))) / math.sqrt(2)
    return ChannelRealization(h=h, noise=w, snr=float(snr), seed=seed)


def weight_tensor(d: LinearDesign) -> np.ndarray:
    """Weights as a (K, N_t, N_t) complex array."""
    return np.stack([w.to_complex() for w in d.weights])


def evaluate_design(d: LinearDesign, x: Sequence[float]) -> np.ndarray:
    """S(x) = sum_k x_k A_k as a complex N_t x N_t array."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (d.k,):
        raise ValueError(f"expected {d.k} real variables, got shape {x.shape}")
    return np.tensordot(x, weight_tensor(d), axes=1)


def _cross_pairs(groups: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    pairs = []
    for ga in range(len(groups)):
        for gb in range(ga + 1, len(groups)):
            pairs.extend((i, j) for i in groups[ga] for j in groups[gb])
    return pairs


def metric_split_check(
    d: LinearDesign,
    partition: Sequence[Sequence[int]] | None = None,
    trials: int = 100,
    seed: int = 0,
    nr: int = 1,
) -> float:
    """Largest cross-group bilinear metric term over random trials.

    For variables i, j in different groups the ML metric contains
    x_i x_j tr(h^H (A_i^H A_j + A_j^H A_i) h); the maximum absolute value
    over random Gaussian x and h is returned.  Exactly zero cross matrices
    give exactly 0.0; a decodability contract should ask for < 1e-9.
    """
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    pairs = _cross_pairs(groups)
    if not pairs:
        return 0.0
    w = weight_tensor(d)
    cross = np.stack(
        [w[i].conj().T @ w[j] + w[j].conj().T @ w[i] for i, j in pairs]
    )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        h = (rng.standard_normal((d.nt, nr)) + 1j * rng.standard_normal((d.nt, nr))) / math.sqrt(2)
        x = rng.standard_normal(d.k)
        hh = h @ h.conj().T
        terms = np.real(np.einsum("pij,ji->p", cross, hh))
        coeffs = np.array([x[i] * x[j] for i, j in pairs])
        worst = max(worst, float(np.max(np.abs(coeffs * terms))))
    return worst


def _group_metrics(
    ah_flat: np.ndarray,
    y_flat: np.ndarray,
    group: Sequence[int],
    points: np.ndarray,
) -> np.ndarray:
    """||y - sum_{k in group} p_k A_k h||^2 for every point p in the group."""
    contrib = points @ ah_flat[list(group)]
    diff = y_flat[None, :] - contrib
    return np.sum(np.abs(diff) ** 2, axis=1)


@dataclass(frozen=True)
class DecodeOutcome:
    """Results of decoding one received block both ways.

    Index tuples select one constellation point per group; metric_gap is
    |metric(per-group choice) - metric(exhaustive choice)|."""

    per_group_indices: tuple[int, ...]
    exhaustive_indices: tuple[int, ...]
    metric_gap: float
    metric_evals_per_group: int
    metric_evals_exhaustive: int

    @property
    def agreed(self) -> bool:
        return self.per_group_indices == self.exhaustive_indices


def _assemble_x(
    k: int,
    groups: Sequence[Sequence[int]],
    sets: GroupedSignalSet,
    indices: Sequence[int],
) -> np.ndarray:
    x = np.zeros(k)
    for gi, group in enumerate(groups):
        x[list(group)] = sets.groups[gi][indices[gi]]
    return x


def ml_decode(
    d: LinearDesign,
    y: np.ndarray,
    h: np.ndarray,
    sets: GroupedSignalSet,
    partition: Sequence[Sequence[int]] | None = None,
) -> DecodeOutcome:
    """Decode y once per-group and once by full exhaustive search.

    The per-group decoder minimizes each group metric independently
    (sum of points_per_group evaluations); the exhaustive decoder scans the
    cartesian product.  Ties break toward the lowest index in both, so the
    outcomes are comparable index-for-index.
    """
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    if len(sets.groups) != len(groups):
        raise ValueError("signal set group count does not match the partition")
    for gi, group in enumerate(groups):
        if sets.groups[gi].shape[1] != len(group):
            raise ValueError(f"signal set group {gi} does not match the partition sizes")
        if sets.groups[gi].shape[0] == 0:
            raise ValueError("empty constellation")

    w = weight_tensor(d)
    ah = np.tensordot(w, h, axes=([2], [0]))  # (K, T, N_r)
    ah_flat = ah.reshape(d.k, -1)
    y_flat = np.asarray(y).ravel()

    per_group = tuple(
        int(np.argmin(_group_metrics(ah_flat, y_flat, group, sets.groups[gi])))
        for gi, group in enumerate(groups)
    )

    counts = [sets.groups[gi].shape[0] for gi in range(len(groups))]
    total = int(np.prod(counts))
    if total > _MAX_HYPOTHESES:
        raise ValueError(f"exhaustive search over {total} hypotheses refused")
    mesh = np.meshgrid(*[np.arange(c) for c in counts], indexing="ij")
    combos = np.stack([m.ravel() for m in mesh], axis=1)  # (total, n_groups)
    x_all = np.zeros((total, d.k))
    for gi, group in enumerate(groups):
        x_all[:, list(group)] = sets.groups[gi][combos[:, gi]]
    cand = x_all @ ah_flat
    metrics = np.sum(np.abs(y_flat[None, :] - cand) ** 2, axis=1)
    best = int(np.argmin(metrics))
    exhaustive = tuple(int(v) for v in combos[best])

    x_pg = _assemble_x(d.k, groups, sets, per_group)
    m_pg = float(np.sum(np.abs(y_flat - x_pg @ ah_flat) ** 2))
    gap = abs(m_pg - float(metrics[best]))

    return DecodeOutcome(
        per_group_indices=per_group,
        exhaustive_indices=exhaustive,
        metric_gap=gap,
        metric_evals_per_group=sum(counts),
        metric_evals_exhaustive=total,
    )


def split_residual(
    d: LinearDesign,
    y: np.ndarray,
    h: np.ndarray,
    x: Sequence[float],
    partition: Sequence[Sequence[int]] | None = None,
) -> float:
    """|M(x) - sum_g m_g(x_g) + (n_groups - 1) ||y||^2| for one realization.

    Zero (to rounding) exactly when the metric separates over the partition.
    """
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    x = np.asarray(x, dtype=np.float64)
    w = weight_tensor(d)
    ah_flat = np.tensordot(w, h, axes=([2], [0])).reshape(d.k, -1)
    y_flat = np.asarray(y).ravel()
    full = float(np.sum(np.abs(y_flat - x @ ah_flat) ** 2))
    parts = 0.0
    for group in groups:
        xg = np.zeros(d.k)
        xg[list(group)] = x[list(group)]
        parts += float(np.sum(np.abs(y_flat - xg @ ah_flat) ** 2))
    const = (len(groups) - 1) * float(np.sum(np.abs(y_flat) ** 2))
    return abs(full - (parts - const))


def average_power(d: LinearDesign, sets: GroupedSignalSet, partition=None) -> float:
    """Exact E_x ||S(x)||_F^2 / T from the signal-set moments.

    Cross-group variables are independent, so E[x_i x_j] is the product of
    means off the group diagonal and the group second moment on it."""
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    w = weight_tensor(d)
    gram = np.real(np.einsum("kij,lij->kl", w.conj(), w))
    mu = np.zeros(d.k)
    exx = np.zeros((d.k, d.k))
    for gi, group in enumerate(groups):
        pts = sets.groups[gi]
        idx = list(group)
        mu[idx] = pts.mean(axis=0)
        exx[np.ix_(idx, idx)] = pts.T @ pts / pts.shape[0]
    cross_mask = np.ones((d.k, d.k), dtype=bool)
    for group in groups:
        idx = list(group)
        cross_mask[np.ix_(idx, idx)] = False
    outer = np.outer(mu, mu)
    exx[cross_mask] = outer[cross_mask]
    return float(np.sum(exx * gram)) / d.nt


@dataclass(frozen=True)
class SimPoint:
    """One row of a Monte-Carlo sweep."""

    snr_db: float
    ser: float
    agreement: float
    trials: int


def run_monte_carlo(
    d: LinearDesign,
    snr_db: Sequence[float],
    trials: int = 1000,
    seed: int = 0,
    partition: Sequence[Sequence[int]] | None = None,
    sets: GroupedSignalSet | None = None,
    nr: int = 1,
) -> list[SimPoint]:
    """Sweep SNR points, decoding each trial per-group and exhaustively.

    ser counts wrong per-group symbol decisions over trials * n_groups;
    agreement is the fraction of trials where the two decoders picked
    identical index tuples.  Each trial draws its randomness from
    default_rng((seed, snr_index, trial)), so rows are reproducible
    independently of sweep order.
    """
    groups = d.partition if partition is None else normalize_partition(partition, d.k)
    if sets is None:
        sets = grouped_signal_set([len(gp) for gp in groups])
    power = average_power(d, sets, groups)
    out = []
    for si, snr_point in enumerate(snr_db):
        snr_lin = 10.0 ** (float(snr_point) / 10.0)
        n0 = power / snr_lin
        errors = 0
        agreements = 0
        for trial in range(trials):
            rng = np.random.default_rng((seed, si, trial))
            truth = tuple(
                int(rng.integers(sets.groups[gi].shape[0]))
                for gi in range(len(groups))
            )
            x = _assemble_x(d.k, groups, sets, truth)
            chan = draw_channel(d.nt, nr, d.nt, snr_lin, rng)
            y = evaluate_design(d, x) @ chan.h + math.sqrt(n0) * chan.noise
            outcome = ml_decode(d, y, chan.h, sets, groups)
            errors += sum(
                1 for gdec, gtrue in zip(outcome.per_group_indices, truth) if gdec != gtrue
            )
            agreements += int(outcome.agreed)
        out.append(
            SimPoint(
                snr_db=float(snr_point),
                ser=errors / (trials * len(groups)),
                agreement=agreements / trials,
                trials=trials,
            )
        )
    return out


def results_to_csv(points: Sequence[SimPoint]) -> str:
    """CSV table with columns snr_db, ser, agreement, trials."""
    lines = ["snr_db,ser,agreement,trials"]
    for p in points:
        lines.append(f"{p.snr_db:g},{p.ser:.10g},{p.agreement:.10g},{p.trials}")
    return "\n".join(lines) + "\n"
