"""Monte Carlo estimation of edge gap probabilities ``E_beta(n; J)``.

Sample ``i`` draws all of its randomness from its own Philox4x64-10 stream,
keyed by the run seed with the sample index in the most significant counter
word. Histograms are integer sums, so the report does not depend on how samples
are split into chunks or spread over worker processes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field

import numpy as np

from ..errors import DomainError, UsageError
from ..serialization import dumps
from .ensembles import EdgeWindow, EnsembleSpec, TridiagonalMatrix, sample, sturm_count_below

DEFAULT_CHUNK = 2048


@dataclass(frozen=True)
class MCPlan:
    samples: int
    seed: int
    t_grid: tuple
    n_max: int = 4

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise DomainError(f"samples must be a positive integer, got {self.samples!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise DomainError(f"n_max must be a nonnegative integer, got {self.n_max!r}")
        grid = tuple(float(t) for t in self.t_grid)
        if not grid or not all(math.isfinite(t) for t in grid):
            raise DomainError("t_grid must be a nonempty list of finite values")
        object.__setattr__(self, "t_grid", grid)
        object.__setattr__(self, "samples", int(self.samples))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "n_max", int(self.n_max))


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """Independent stream for sample ``index`` of a run seeded with ``seed``."""
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, index]))


def _window_counts(T: TridiagonalMatrix, edge: str, spec: EnsembleSpec, t_grid) -> np.ndarray:
    """Counts per (sample, t) with a single batched Sturm sweep over all thresholds."""
    bounds = [EdgeWindow(edge, t).raw_interval(spec) for t in t_grid]
    if edge == "hard":
        hi = np.array([b[1] for b in bounds])
        return sturm_count_below(T, hi) - sturm_count_below(T, np.zeros(1))
    lo = np.array([b[0] for b in bounds])
    return T.N - sturm_count_below(T, lo)


def _run_chunk(spec: EnsembleSpec, edge: str, t_grid, seed: int, start: int, stop: int, n_max: int) -> np.ndarray:
    T = TridiagonalMatrix.stack(sample(spec, sample_stream(seed, i)) for i in range(start, stop))
    counts = np.minimum(_window_counts(T, edge, spec, t_grid), n_max + 1)
    return np.stack([np.bincount(counts[:, k], minlength=n_max + 2) for k in range(len(t_grid))])


@dataclass
class MCReport:
    spec: EnsembleSpec
    plan: MCPlan
    edge: str
    counts: np.ndarray  # (len(t_grid), n_max + 1): samples with exactly n eigenvalues in the window
    overflow: np.ndarray  # samples with more than n_max
    samples_done: int
    complete: bool
    wall_seconds: float = math.nan
    meta: dict = field(default_factory=dict)

    @property
    def p_hat(self) -> np.ndarray:
        return self.counts / max(self.samples_done, 1)

    @property
    def stderr(self) -> np.ndarray:
        p = self.p_hat
        return np.sqrt(p * (1 - p) / max(self.samples_done, 1))

    def to_dict(self, timing: bool = True) -> dict:
        p, se = self.p_hat, self.stderr
        grid = []
        for k, t in enumerate(self.plan.t_grid):
            lo, hi = EdgeWindow(self.edge, t).raw_interval(self.spec)
            grid.append({
                "t": t,
                "raw_interval": [lo, hi if math.isfinite(hi) else None],
                "counts": [int(c) for c in self.counts[k]],
                "overflow": int(self.overflow[k]),
                "p_hat": [float(x) for x in p[k]],
                "stderr": [float(x) for x in se[k]],
            })
        return {
            "spec": asdict(self.spec),
            "plan": dict(asdict(self.plan), t_grid=list(self.plan.t_grid)),
            "edge": self.edge,
            "samples_done": self.samples_done,
            "complete": self.complete,
            "grid": grid,
            "wall_seconds": self.wall_seconds if timing else None,
            "meta": self.meta,
        }

    def to_json(self, timing: bool = True) -> str:
        return dumps(self.to_dict(timing))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "n", "count", "p_hat", "stderr"])
        p, se = self.p_hat, self.stderr
        for k, t in enumerate(self.plan.t_grid):
            for n in range(self.plan.n_max + 1):
                w.writerow([repr(t), n, int(self.counts[k, n]), "%.17g" % p[k, n], "%.17g" % se[k, n]])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: dict) -> "MCReport":
        plan = MCPlan(**d["plan"])
        counts = np.array([g["counts"] for g in d["grid"]], dtype=np.int64)
        overflow = np.array([g["overflow"] for g in d["grid"]], dtype=np.int64)
        wall = d.get("wall_seconds")
        return cls(EnsembleSpec(**d["spec"]), plan, d["edge"], counts, overflow, d["samples_done"],
                   d["complete"], math.nan if wall is None else wall, d.get("meta", {}))

    @classmethod
    def from_json(cls, text: str) -> "MCReport":
        return cls.from_dict(json.loads(text))


def run_mc(
    spec: EnsembleSpec,
    edge: str,
    plan: MCPlan,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    budget_seconds: float | None = None,
) -> MCReport:
    """Histogram the number of eigenvalues in each window of ``plan.t_grid``.

    With ``budget_seconds`` set, chunks finishing after the budget is spent are
    dropped and the report is marked incomplete; ``samples_done`` then counts
    the samples actually used.
    """
    for t in plan.t_grid:
        EdgeWindow(edge, t).raw_interval(spec)  # validates the edge/ensemble pairing
    if workers < 1:
        raise UsageError(f"workers must be at least 1, got {workers}")
    if chunk_size < 1:
        raise UsageError(f"chunk_size must be at least 1, got {chunk_size}")

    K, width = len(plan.t_grid), plan.n_max + 2
    hist = np.zeros((K, width), dtype=np.int64)
    chunks = [(s, min(s + chunk_size, plan.samples)) for s in range(0, plan.samples, chunk_size)]
    done, complete = 0, True
    t0 = time.perf_counter()
    over = lambda: budget_seconds is not None and time.perf_counter() - t0 > budget_seconds

    if workers == 1:
        for s, e in chunks:
            if over():
                complete = False
                break
            hist += _run_chunk(spec, edge, plan.t_grid, plan.seed, s, e, plan.n_max)
            done += e - s
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {pool.submit(_run_chunk, spec, edge, plan.t_grid, plan.seed, s, e, plan.n_max): e - s
                    for s, e in chunks}
            for fut in as_completed(futs):
                if over():
                    complete = False
                    for f in futs:
                        f.cancel()
                    break
                hist += fut.result()
                done += futs[fut]

    return MCReport(spec, plan, edge, hist[:, :-1].copy(), hist[:, -1].copy(), done, complete,
                    time.perf_counter() - t0)
