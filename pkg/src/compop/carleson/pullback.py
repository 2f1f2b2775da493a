"""Monte Carlo box profile of the torus measure pushed through a Bohr lift.

Samples are drawn in fixed-size blocks, block b from Philox keyed by
(seed, b), so the stream does not depend on how blocks are spread over
workers. Cell counts are merged in block order.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Protocol

import numpy as np

from compop.errors import INSUFFICIENT_SAMPLES, LabError, VALIDATION_ERROR
from compop.models import PullbackProfile
from compop.services.settings import get_settings

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10_000
BOX_FACTOR = 2.0


class TorusMap(Protocol):
    d: int

    def evaluate_many(self, z: np.ndarray) -> np.ndarray: ...


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def _block_counts(
    lift: TorusMap,
    epsilons: tuple[float, ...],
    seed: int,
    omega_theta: float | None,
    job: tuple[int, int],
) -> list[Counter]:
    """Per (ε, grid offset) cell counts for one block of torus samples."""
    block, count = job
    rng = block_generator(seed, block)
    angles = rng.random((count, lift.d)) * (2 * math.pi)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = lift.evaluate_many(np.exp(1j * angles))
    w = w[np.isfinite(w)]
    if omega_theta is not None:
        w = w[w.real < omega_theta]
    x = w.real - 0.5
    y = w.imag

    counts: list[Counter] = []
    for eps in epsilons:
        near = x <= eps
        yy = y[near & (x >= 0)]
        for offset in (0.0, eps / 2):
            cells = np.floor((yy - offset) / eps).astype(np.int64)
            keys, hits = np.unique(cells, return_counts=True)
            counts.append(Counter(dict(zip(keys.tolist(), hits.tolist()))))
    return counts


def pullback_profile(
    lift: TorusMap,
    epsilons: list[float],
    samples: int | None = None,
    seed: int | None = None,
    *,
    omega_theta: float | None = None,
    block_size: int | None = None,
    workers: int | None = None,
) -> PullbackProfile:
    """Largest ε-box mass of m_∞∘Φ^{-1} per ε.

    Boxes are {1/2 ≤ σ ≤ 1/2 + ε} × (cell of width ε in t) on two grids
    offset by ε/2; every Carleson square of side ε lies in two adjacent
    cells, so the true sup is at most BOX_FACTOR times the reported mass.
    With ``omega_theta`` only samples with Re Φ < omega_theta are counted.
    """
    settings = get_settings()
    samples = settings.mc_samples if samples is None else samples
    seed = settings.mc_seed if seed is None else seed
    block_size = settings.mc_block_size if block_size is None else block_size
    workers = settings.workers if workers is None else workers

    if samples < MIN_SAMPLES:
        raise LabError(
            INSUFFICIENT_SAMPLES,
            422,
            f"{samples} samples is statistically meaningless (need >= {MIN_SAMPLES})",
        )
    eps = tuple(float(e) for e in epsilons)
    if not eps or any(not e > 0 for e in eps):
        raise LabError(VALIDATION_ERROR, 422, "epsilons must be positive")
    if any(a <= b for a, b in zip(eps, eps[1:])):
        raise LabError(VALIDATION_ERROR, 422, "epsilons must be strictly descending")
    if lift.d < 1:
        raise LabError(VALIDATION_ERROR, 422, "pullback needs a lift with d >= 1")

    jobs = [(b, min(block_size, samples - b * block_size)) for b in range(math.ceil(samples / block_size))]
    worker = partial(_block_counts, lift, eps, seed, omega_theta)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_block = list(pool.map(worker, jobs))
    else:
        per_block = [worker(job) for job in jobs]

    totals = [Counter() for _ in range(2 * len(eps))]
    for block_counts in per_block:
        for acc, counts in zip(totals, block_counts):
            acc.update(counts)

    d = lift.d
    masses, ratios, normalized, stderr = [], [], [], []
    for i, e in enumerate(eps):
        best = max(max(totals[2 * i].values(), default=0), max(totals[2 * i + 1].values(), default=0))
        p = best / samples
        masses.append(p)
        ratios.append(p / e)
        normalized.append(p / e ** ((d + 1) / 2))
        stderr.append(math.sqrt(p * (1 - p) / samples))
    logger.info("pullback profile over %d samples (seed %d): masses %s", samples, seed, masses)
    return PullbackProfile(
        d=d,
        epsilons=list(eps),
        max_masses=masses,
        ratios=ratios,
        normalized=normalized,
        stderr=stderr,
        samples=samples,
        seed=seed,
        box_factor=BOX_FACTOR,
    )
