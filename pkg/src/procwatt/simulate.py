"""Synthetic trace generation following the gradual-increase protocol.

A run starts at a configurable competition level and raises it by a fixed
step, holding each level for a dwell period while sampling at a fixed
interval, until the level would push total CPU usage past 100% given the
observed process's own load q.  The whole staircase repeats for a number of
cycles with continuously increasing timestamps.  Sample powers come from a
known ground-truth profile plus optional Gaussian noise clamped at zero.

Noise is drawn from a counter-based generator keyed on (seed, cycle), so a
trace is bit-reproducible for a given seed and individual cycles could be
generated independently without changing the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .fitting import TraceSample
from .profiles import PowerProfile, evaluate
from .traceio import TraceFile

_U64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class ProtocolConfig:
    """Parameters of one simulated measurement campaign.

    baseline_load_q is the CPU percentage the observed process itself uses;
    competition never exceeds 100 - q.  noise_sigma is the per-sample
    Gaussian standard deviation in watts (0 for noiseless traces).
    """

    baseline_load_q: float
    noise_sigma: float = 0.0
    seed: int = 0
    start_pct: float = 0.0
    step_pct: float = 5.0
    dwell_seconds: float = 360.0
    sample_interval_seconds: float = 5.0
    cycles: int = 8

    def __post_init__(self):
        q = self.baseline_load_q
        if not (isinstance(q, (int, float)) and math.isfinite(q) and 0.0 < q < 100.0):
            raise ConfigError(f"baseline_load_q must lie in (0, 100), got {q!r}")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.step_pct <= 0:
            raise ConfigError(f"step_pct must be > 0, got {self.step_pct}")
        if self.sample_interval_seconds <= 0:
            raise ConfigError(
                f"sample_interval_seconds must be > 0, got {self.sample_interval_seconds}"
            )
        if self.dwell_seconds < self.sample_interval_seconds:
            raise ConfigError(
                "dwell_seconds must be >= sample_interval_seconds, got "
                f"{self.dwell_seconds} < {self.sample_interval_seconds}"
            )
        if self.cycles < 1:
            raise ConfigError(f"cycles must be >= 1, got {self.cycles}")
        if self.start_pct < 0 or self.start_pct > 100.0 - q:
            raise ConfigError(
                f"start_pct must lie in [0, 100 - q] = [0, {100.0 - q}], got {self.start_pct}"
            )


def competition_levels(config: ProtocolConfig) -> np.ndarray:
    """The arithmetic staircase of levels one cycle walks through."""
    top = 100.0 - config.baseline_load_q
    # epsilon guards against float junk in the division; the trim below keeps
    # the domain bound exact either way
    count = int(math.floor((top - config.start_pct) / config.step_pct + 1e-9)) + 1
    levels = config.start_pct + config.step_pct * np.arange(count)
    return levels[levels <= top]


def samples_per_level(config: ProtocolConfig) -> int:
    return int(math.floor(config.dwell_seconds / config.sample_interval_seconds + 1e-9))


def _cycle_rng(seed: int, cycle: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=((seed & _U64) << 64) | cycle))


def generate_trace(config: ProtocolConfig, truth: PowerProfile) -> TraceFile:
    """Simulate the protocol against a ground-truth profile.

    Sample count is exactly cycles * levels * floor(dwell/interval); power is
    evaluate(truth, level) plus seeded Gaussian noise, clamped at zero (with
    noise_sigma = 0 the values equal the evaluation bit for bit).
    """
    levels = competition_levels(config)
    per_level = samples_per_level(config)
    interval = config.sample_interval_seconds

    level_power = np.array([evaluate(truth, float(lv)) for lv in levels])
    samples = []
    index = 0
    for cycle in range(config.cycles):
        if config.noise_sigma > 0:
            noise = _cycle_rng(config.seed, cycle).normal(
                0.0, config.noise_sigma, size=(levels.size, per_level)
            )
            powers = np.maximum(level_power[:, None] + noise, 0.0)
        else:
            powers = np.broadcast_to(level_power[:, None], (levels.size, per_level))
        for li, level in enumerate(levels):
            row = powers[li]
            for j in range(per_level):
                samples.append(
                    TraceSample(t=index * interval, competition=float(level), power=float(row[j]))
                )
                index += 1
    return TraceFile(samples=samples, machine_label="synthetic")
