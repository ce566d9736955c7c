"""Simulation of fiber walks and total-variation tracking."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graph import FiberGraph, TransitionMatrix

MODES = ("simple", "applicable_only", "metropolis")


class WalkError(ValueError):
    pass


@dataclass(frozen=True)
class WalkConfig:
    mode: str = "simple"
    steps: int = 1000
    seed: int = 0
    target: Optional[Sequence[float]] = None
    record_every: int = 100
    start: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.record_every < 1:
            raise ValueError("record_every must be positive")
        if self.target is not None:
            t = np.asarray(self.target, dtype=float)
            if np.any(t <= 0) or abs(t.sum() - 1.0) > 1e-9:
                raise ValueError("target must be a positive probability vector")


@dataclass(frozen=True)
class WalkTrace:
    visit_counts: np.ndarray
    rejection_count: int
    tv_curve: tuple[tuple[int, float, int], ...]
    final_node: int
    seed: int
    path: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.path) - 1

    @property
    def rejection_rate(self) -> float:
        return self.rejection_count / self.steps if self.steps else 0.0

    @property
    def final_tv(self) -> float:
        return self.tv_curve[-1][1] if self.tv_curve else float("nan")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "tv", "rejections_so_far"])
        for step, tv, rej in self.tv_curve:
            writer.writerow([step, f"{tv:.12g}", rej])
        return buf.getvalue()


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(p, float) - np.asarray(q, float)).sum())


def run_walk(G: FiberGraph, cfg: WalkConfig) -> WalkTrace:
    """Run one trajectory of the chosen walk on ``G``.

    ``simple`` picks one of the ``degree`` moves uniformly and stays put on
    a loop (a rejection).  ``applicable_only`` picks uniformly among the
    non-loop edges at the current node.  ``metropolis`` proposes like the
    simple walk and accepts with probability ``min(1, target(w)/target(v))``;
    its move draws coincide with the simple walk's for the same seed.

    TV values compare the occupation measure of the second half of the
    trajectory so far with the target (uniform by default).
    """
    n = G.n
    if not 0 <= cfg.start < n:
        raise WalkError(f"start node {cfg.start} out of range")
    rng = np.random.default_rng(cfg.seed)
    table = G.move_targets()
    target = (np.full(n, 1.0 / n) if cfg.target is None
              else np.asarray(cfg.target, dtype=float))
    if target.shape != (n,):
        raise WalkError("target length does not match the graph")

    path = np.empty(cfg.steps + 1, dtype=np.int64)
    path[0] = v = cfg.start
    rejections = np.zeros(cfg.steps + 1, dtype=np.int64)
    rejected = 0

    if cfg.mode == "applicable_only":
        options = [table[w][table[w] != w] for w in range(n)]
        if cfg.steps and any(len(o) == 0 for o in options):
            bad = next(w for w, o in enumerate(options) if len(o) == 0)
            raise WalkError(f"node {bad} has no applicable move")
        draws = rng.random(cfg.steps)
        for t in range(cfg.steps):
            opts = options[v]
            v = int(opts[int(draws[t] * len(opts))])
            path[t + 1] = v
    else:
        if G.degree == 0 and cfg.steps:
            raise WalkError("graph has no moves")
        picks = rng.integers(0, max(G.degree, 1), size=cfg.steps)
        accept = rng.random(cfg.steps) if cfg.mode == "metropolis" else None
        for t in range(cfg.steps):
            w = int(table[v, picks[t]])
            if w == v:
                rejected += 1
            elif accept is not None and accept[t] * target[v] >= target[w]:
                rejected += 1
                w = v
            v = w
            path[t + 1] = v
            rejections[t + 1] = rejected

    curve = []
    record = list(range(0, cfg.steps + 1, cfg.record_every))
    if record[-1] != cfg.steps:
        record.append(cfg.steps)
    for t in record:
        window = path[t // 2:t + 1]
        occ = np.bincount(window, minlength=n) / len(window)
        curve.append((t, total_variation(occ, target), int(rejections[t])))

    return WalkTrace(
        visit_counts=np.bincount(path, minlength=n),
        rejection_count=int(rejected),
        tv_curve=tuple(curve),
        final_node=int(v),
        seed=cfg.seed,
        path=path,
    )


@dataclass(frozen=True)
class TVCurve:
    tv: tuple[float, ...]
    envelope: tuple[float, ...]
    slem: float


def exact_tv_curve(S: TransitionMatrix | np.ndarray, start: int, t_max: int,
                   slem_value: Optional[float] = None) -> TVCurve:
    """TV distance to uniform of ``delta_start @ S^t`` for ``t = 0..t_max``.

    ``envelope[t]`` is ``slem^t``, the rate the TV values are compared with.
    """
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    P = S.dense if isinstance(S, TransitionMatrix) else np.asarray(S, dtype=float)
    n = P.shape[0]
    if slem_value is None:
        from .spectral import slem
        slem_value = slem(S)
    pi = np.zeros(n)
    pi[start] = 1.0
    uniform = np.full(n, 1.0 / n)
    tv = []
    for _ in range(t_max + 1):
        tv.append(total_variation(pi, uniform))
        pi = pi @ P
    envelope = tuple(slem_value ** t for t in range(t_max + 1))
    return TVCurve(tuple(tv), envelope, slem_value)
