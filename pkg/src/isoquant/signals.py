"""Bus-voltage test signals: the noisy random-walk input the simulation
experiment runs on, plus deterministic ramps/constants for sweeps, and a
plain-text trace file format.

The random walk uses numpy's PCG64 generator (``numpy.random.default_rng``),
a seedable 64-bit algorithm with a published reference implementation, so a
given seed reproduces the same trace on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_V0 = 100.0
DEFAULT_STEPS = 1000
DEFAULT_SAMPLE_INTERVAL = 0.01
GENERATOR_NAME = "pcg64"


@dataclass(frozen=True)
class BusTrace:
    """Sampled primary-bus voltage, immutable once built."""

    sample_interval: float
    samples: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.size


def random_walk_bus(
    v0: float = DEFAULT_V0,
    steps: int = DEFAULT_STEPS,
    t_s: float = DEFAULT_SAMPLE_INTERVAL,
    seed: int = 0,
    clamp: tuple[float, float] | None = None,
) -> BusTrace:
    """Random-walk bus voltage: each sample moves by Unif(-1, 1) volts.

    ``steps`` is the total sample count, so steps=1 returns just [v0].
    ``clamp`` optionally pins long walks inside (lo, hi); the default walk is
    unclamped because a short run stays in range on its own.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = np.random.default_rng(seed)
    increments = rng.uniform(-1.0, 1.0, steps - 1)
    samples = np.empty(steps)
    samples[0] = v0
    samples[1:] = v0 + np.cumsum(increments)
    if clamp is not None:
        lo, hi = clamp
        if lo >= hi:
            raise ValueError("clamp must be (lo, hi) with lo < hi")
        # re-walk with per-step clamping so increments stay bounded
        v = v0
        for k in range(1, steps):
            v = min(hi, max(lo, v + increments[k - 1]))
            samples[k] = v
    return BusTrace(sample_interval=t_s, samples=samples, seed=seed)


def ramp(
    v_start: float, v_end: float, steps: int, t_s: float = DEFAULT_SAMPLE_INTERVAL
) -> BusTrace:
    """Linear sweep from v_start to v_end inclusive, steps >= 2."""
    if steps < 2:
        raise ValueError("a ramp needs at least 2 steps")
    return BusTrace(sample_interval=t_s, samples=np.linspace(v_start, v_end, steps))


def constant(v: float, steps: int, t_s: float = DEFAULT_SAMPLE_INTERVAL) -> BusTrace:
    """steps copies of a fixed voltage."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    return BusTrace(sample_interval=t_s, samples=np.full(steps, float(v)))


def write_trace(trace: BusTrace, path) -> None:
    """Write a trace as text: first line ``t_s=<seconds>``, one volt per line.

    Values are written with full float precision so a read-back compares
    equal bit for bit.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"t_s={trace.sample_interval!r}\n")
        for v in trace.samples:
            fh.write(f"{float(v)!r}\n")


def load_trace(path) -> BusTrace:
    """Parse a trace file written by :func:`write_trace`.

    Raises FileNotFoundError for a missing file and ValueError (with the
    offending line number) for malformed content.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.strip() for line in fh]
    if not lines or not lines[0]:
        raise ValueError(f"{path}: empty trace file")
    if not lines[0].startswith("t_s="):
        raise ValueError(f"{path}: line 1: expected 't_s=<seconds>', got {lines[0]!r}")
    try:
        t_s = float(lines[0][len("t_s="):])
    except ValueError:
        raise ValueError(f"{path}: line 1: bad sample interval {lines[0]!r}") from None
    if t_s <= 0:
        raise ValueError(f"{path}: line 1: sample interval must be positive")
    samples = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        try:
            samples.append(float(line))
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: bad voltage {line!r}") from None
    if not samples:
        raise ValueError(f"{path}: no voltage samples")
    return BusTrace(sample_interval=t_s, samples=np.array(samples))
