"""Seeded finite-sample simulation of the scale estimators.

Each (distribution, n) cell is split into blocks of replicates.  Block ``b``
of a cell draws from its own counter-based stream keyed by
``(seed, cell_key, b)``, where ``cell_key`` is a hash of the distribution
label and n.  Per-block moment accumulators are merged in block order, so
results do not depend on the number of worker threads or on which other
cells are in the study.
"""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import closedform
from .distributions import DomainError, make_rng, parse_distribution
from .estimators import MeanDevScaling, gini_n, mean_dev_n, sd_n

__all__ = [
    "ESTIMATORS",
    "DEFAULT_SAMPLE_SIZES",
    "Moments",
    "EstimatorStats",
    "CellStats",
    "StudyConfig",
    "run_cell",
    "run_study",
    "report_rows",
    "report_json",
]

SCHEMA_VERSION = 1
ESTIMATORS = ("sd", "gini", "meandev", "meandev_plain")
DEFAULT_SAMPLE_SIZES = (5, 8, 10, 50, 500)
DEFAULT_BLOCK_SIZE = 500

_POPULATION = {
    "sd": closedform.population_sigma,
    "gini": closedform.population_g,
    "meandev": closedform.population_d,
    "meandev_plain": closedform.population_d,
}


@dataclass(frozen=True)
class Moments:
    """Count, mean and central power sums M2..M4 of a stream of values."""

    count: int
    mean: float
    m2: float
    m3: float
    m4: float

    @classmethod
    def of(cls, values):
        v = np.asarray(values, dtype=float)
        mean = float(np.mean(v))
        dev = v - mean
        dev2 = dev * dev
        return cls(v.size, mean, float(np.sum(dev2)), float(np.sum(dev2 * dev)),
                   float(np.sum(dev2 * dev2)))

    def merge(self, other):
        # pairwise update formulas for central moments up to order four
        if self.count == 0:
            return other
        if other.count == 0:
            return self
        na, nb = self.count, other.count
        n = na + nb
        delta = other.mean - self.mean
        d_n = delta / n
        mean = self.mean + nb * d_n
        m2 = self.m2 + other.m2 + delta * d_n * na * nb
        m3 = (self.m3 + other.m3 + delta * d_n * d_n * na * nb * (na - nb)
              + 3 * d_n * (na * other.m2 - nb * self.m2))
        m4 = (self.m4 + other.m4
              + delta * d_n ** 3 * na * nb * (na * na - na * nb + nb * nb)
              + 6 * d_n * d_n * (na * na * other.m2 + nb * nb * self.m2)
              + 4 * d_n * (na * other.m3 - nb * self.m3))
        return Moments(n, mean, m2, m3, m4)

    @property
    def variance(self):
        return self.m2 / (self.count - 1) if self.count > 1 else math.nan

    @property
    def variance_se(self):
        """Standard error of :attr:`variance` from the fourth central moment."""
        r = self.count
        if r < 4:
            return math.nan
        s2 = self.variance
        mu4 = self.m4 / r
        return math.sqrt(max(mu4 - (r - 3) / (r - 1) * s2 * s2, 0.0) / r)

    @property
    def mean_se(self):
        return math.sqrt(self.variance / self.count) if self.count > 1 else math.nan


_EMPTY = Moments(0, 0.0, 0.0, 0.0, 0.0)


def _tree_merge(items):
    items = list(items)
    if not items:
        return _EMPTY
    while len(items) > 1:
        nxt = [items[i].merge(items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


@dataclass(frozen=True)
class EstimatorStats:
    mean: float
    mean_se: float
    population_value: float
    n_times_variance: float
    n_times_variance_se: float
    bias2_over_variance: float
    rel_efficiency: float | None = None
    rel_efficiency_se: float | None = None


@dataclass(frozen=True)
class CellStats:
    dist: str
    n: int
    replications: int
    estimators: dict
    gini_true_n_times_variance: float

    def __getitem__(self, name):
        return self.estimators[name]


def cell_key(label, n):
    digest = hashlib.sha256(f"{label}|{int(n)}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _block(d, n, size, seed, key, b):
    rng = make_rng(seed, key, b)
    x = d.sample(rng, (size, n))
    return {
        "sd": Moments.of(sd_n(x)),
        "gini": Moments.of(gini_n(x)),
        "meandev": Moments.of(mean_dev_n(x, MeanDevScaling.CORRECTED)),
        "meandev_plain": Moments.of(mean_dev_n(x, MeanDevScaling.PLAIN)),
    }


def _rel_eff(sd, s, standardization, pop_ratio2):
    scale2 = (s.mean / sd.mean) ** 2 if standardization == "empirical" else pop_ratio2
    return sd.variance / s.variance * scale2


def _jackknife_se(blocks, fn):
    k = len(blocks)
    if k < 2:
        return math.nan
    prefix = [_EMPTY]
    for blk in blocks:
        prefix.append(_merge_dicts(prefix[-1], blk))
    suffix = [_EMPTY] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = _merge_dicts(blocks[i], suffix[i + 1])
    loo = np.array([fn(_merge_dicts(prefix[i], suffix[i + 1])) for i in range(k)])
    return float(math.sqrt((k - 1) / k * np.sum((loo - loo.mean()) ** 2)))


def _merge_dicts(a, b):
    if a is _EMPTY:
        return b
    if b is _EMPTY:
        return a
    return {name: a[name].merge(b[name]) for name in ESTIMATORS}


def run_cell(d, n, reps, seed, *, block_size=DEFAULT_BLOCK_SIZE, workers=1,
             standardization="empirical"):
    """Simulate ``reps`` samples of size ``n`` from ``d``.

    Parameters
    ----------
    standardization : {"empirical", "true"}
        How the relative efficiency against the standard deviation is
        scaled: by the squared ratio of the simulated mean estimates
        (``empirical``) or of the population values (``true``).

    Returns
    -------
    CellStats
    """
    n, reps = int(n), int(reps)
    if n < 2:
        raise DomainError(f"sample size must be >= 2, got {n}")
    if reps < 1:
        raise DomainError(f"replications must be >= 1, got {reps}")
    if standardization not in ("empirical", "true"):
        raise DomainError(f"unknown standardization {standardization!r}")
    key = cell_key(d.label(), n)
    sizes = [block_size] * (reps // block_size)
    if reps % block_size:
        sizes.append(reps % block_size)

    def job(b):
        return _block(d, n, sizes[b], seed, key, b)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(job, range(len(sizes))))
    else:
        blocks = [job(b) for b in range(len(sizes))]

    totals = {name: _tree_merge(blk[name] for blk in blocks) for name in ESTIMATORS}
    sigma = closedform.population_sigma(d)
    stats = {}
    for name in ESTIMATORS:
        m = totals[name]
        pop = _POPULATION[name](d)
        var = m.variance
        rel = rel_se = None
        if name in ("gini", "meandev"):
            ratio2 = (pop / sigma) ** 2

            def fn(tot, name=name, ratio2=ratio2):
                return _rel_eff(tot["sd"], tot[name], standardization, ratio2)

            rel = fn(totals)
            rel_se = _jackknife_se(blocks, fn)
        stats[name] = EstimatorStats(
            mean=m.mean,
            mean_se=m.mean_se,
            population_value=pop,
            n_times_variance=n * var,
            n_times_variance_se=n * m.variance_se,
            bias2_over_variance=(m.mean - pop) ** 2 / var if var > 0 else math.nan,
            rel_efficiency=rel,
            rel_efficiency_se=rel_se,
        )
    return CellStats(d.label(), n, reps, stats, n * closedform.lomnicki_var(d, n))


@dataclass(frozen=True)
class StudyConfig:
    distributions: tuple
    sample_sizes: tuple = DEFAULT_SAMPLE_SIZES
    replications: int = 100_000
    seed: int = 20_150_601
    block_size: int = DEFAULT_BLOCK_SIZE
    standardization: str = "empirical"

    def __post_init__(self):
        dists = tuple(parse_distribution(x) if isinstance(x, str) else x
                      for x in self.distributions)
        object.__setattr__(self, "distributions", dists)
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        if not dists:
            raise DomainError("study needs at least one distribution")
        if any(n < 2 for n in self.sample_sizes) or not self.sample_sizes:
            raise DomainError("sample sizes must all be >= 2")
        if self.replications < 1 or self.block_size < 1:
            raise DomainError("replications and block_size must be >= 1")

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        version = data.pop("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise DomainError(f"unsupported study schema_version {version}")
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise DomainError(f"unknown study config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "distributions": [d.label() for d in self.distributions],
            "sample_sizes": list(self.sample_sizes),
            "replications": self.replications,
            "seed": self.seed,
            "block_size": self.block_size,
            "standardization": self.standardization,
        }


def run_study(cfg, workers=1, progress=None):
    """Run every (distribution, n) cell of ``cfg`` in config order."""
    cells = []
    for d in cfg.distributions:
        for n in cfg.sample_sizes:
            cells.append(run_cell(d, n, cfg.replications, cfg.seed, block_size=cfg.block_size,
                                  workers=workers, standardization=cfg.standardization))
            if progress is not None:
                progress(cells[-1])
    return cells


CSV_HEADER = ("family", "params", "n", "estimator", "n_var", "bias2_over_var", "rel_eff", "true_n_var")


def report_rows(cells):
    """Rows for the delimited report, one per (cell, estimator)."""
    for cell in cells:
        d = parse_distribution(cell.dist)
        params = ";".join(f"{k}={v:.12g}" for k, v in d.params().items())
        for name in ESTIMATORS:
            st = cell.estimators[name]
            yield (d.family, params, cell.n, name, st.n_times_variance,
                   st.bias2_over_variance, st.rel_efficiency,
                   cell.gini_true_n_times_variance if name == "gini" else None)


def report_json(cfg, cells):
    return {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.to_dict(),
        "cells": [
            {
                "dist": c.dist,
                "n": c.n,
                "replications": c.replications,
                "gini_true_n_var": c.gini_true_n_times_variance,
                "estimators": {k: asdict(v) for k, v in c.estimators.items()},
            }
            for c in cells
        ],
    }
