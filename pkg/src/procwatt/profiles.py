"""Power-profile models for a process facing CPU competition.

A profile maps the competition level p (percent of the CPU used by other
processes) to the watts drawn by the observed process.  Two families are
supported: an affine one, W(p) = a + b*p, and an n-th-root one,
W(p) = c + d*p**(1/n).  The module also carries the classic machine-level
utilization model and trapezoidal energy integration over power traces.

Units are fixed throughout the package: watts, seconds, joules, CPU percent
in [0, 100].  Machine utilization is a fraction in [0, 1]; converting from
percent is the caller's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DomainError,
    InputError,
    InsufficientDataError,
    OrderingError,
    SingularityError,
)


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InputError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class LinearProfile:
    """W(p) = a + b*p.  a is the intercept in watts, b the slope in W/percent."""

    a: float
    b: float

    def __post_init__(self):
        _require_finite("a", self.a)
        _require_finite("b", self.b)


@dataclass(frozen=True)
class NRootProfile:
    """W(p) = c + d*p**(1/n) with integer root degree n >= 2."""

    c: float
    d: float
    n: int

    def __post_init__(self):
        _require_finite("c", self.c)
        _require_finite("d", self.d)
        n = self.n
        if isinstance(n, float):
            if not n.is_integer():
                raise InputError(f"n must be an integer, got {n!r}")
            object.__setattr__(self, "n", int(n))
        elif not isinstance(n, (int, np.integer)):
            raise InputError(f"n must be an integer, got {n!r}")
        if self.n < 2:
            raise InputError(f"n must be >= 2, got {self.n}")

    @property
    def k(self) -> float:
        """Exponent 1 - 1/n of the derivative's denominator; lies in (0, 1)."""
        return 1.0 - 1.0 / self.n


PowerProfile = Union[LinearProfile, NRootProfile]


def evaluate(profile: PowerProfile, p: float) -> float:
    """Watts drawn at competition level p (percent).

    Defined at p = 0, where it returns the intercept.  Negative p is outside
    the model's domain.
    """
    if p < 0:
        raise DomainError(f"competition level must be >= 0, got {p}")
    if isinstance(profile, LinearProfile):
        return profile.a + profile.b * p
    if isinstance(profile, NRootProfile):
        return profile.c + profile.d * p ** (1.0 / profile.n)
    raise InputError(f"not a power profile: {profile!r}")


def derivative(profile: PowerProfile, p: float) -> float:
    """Rate of change of the profile in watts per percentage point.

    Constant (b) for the linear family.  For the n-root family the derivative
    d / (n * p**(1 - 1/n)) is unbounded as p -> 0, so p must be positive.
    """
    if p < 0:
        raise DomainError(f"competition level must be >= 0, got {p}")
    if isinstance(profile, LinearProfile):
        return profile.b
    if isinstance(profile, NRootProfile):
        if p == 0:
            raise SingularityError("n-root derivative is unbounded at p = 0")
        return profile.d / (profile.n * p ** (1.0 - 1.0 / profile.n))
    raise InputError(f"not a power profile: {profile!r}")


@dataclass(frozen=True)
class ReferenceMachineModel:
    """Whole-machine utilization model: P(u) = (p_max - p_idle)*u + p_idle."""

    p_idle: float
    p_max: float

    def __post_init__(self):
        _require_finite("p_idle", self.p_idle)
        _require_finite("p_max", self.p_max)
        if not 0.0 <= self.p_idle <= self.p_max:
            raise InputError(
                f"need 0 <= p_idle <= p_max, got p_idle={self.p_idle}, p_max={self.p_max}"
            )


def machine_power(model: ReferenceMachineModel, u: float) -> float:
    """Machine watts at utilization fraction u in [0, 1]."""
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"utilization must lie in [0, 1], got {u}")
    return (model.p_max - model.p_idle) * u + model.p_idle


def integrate_energy(samples) -> float:
    """Energy in joules of a (timestamp, watts) series, by the trapezoidal rule.

    Parameters
    ----------
    samples : sequence of (t, power) pairs or array of shape (n, 2)
        Timestamps in seconds, strictly increasing; powers in watts, >= 0.

    Returns
    -------
    float
        Trapezoidal approximation of the integral of power over the span.
        Exact for piecewise-linear power.
    """
    arr = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError(f"expected (t, power) pairs, got array of shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InsufficientDataError(
            f"need at least 2 samples to integrate, got {arr.shape[0]}"
        )
    t = arr[:, 0]
    power = arr[:, 1]
    if np.any(~np.isfinite(arr)):
        raise InputError("samples must be finite")
    if np.any(np.diff(t) <= 0):
        raise OrderingError("timestamps must be strictly increasing")
    if np.any(power < 0):
        raise DomainError("powers must be non-negative")
    return float(np.sum(0.5 * np.diff(t) * (power[1:] + power[:-1])))


def profile_to_dict(profile: PowerProfile) -> dict:
    """JSON-ready form: {"kind": "linear", ...} or {"kind": "nroot", ...}."""
    if isinstance(profile, LinearProfile):
        return {"kind": "linear", "a": profile.a, "b": profile.b}
    if isinstance(profile, NRootProfile):
        return {"kind": "nroot", "c": profile.c, "d": profile.d, "n": profile.n}
    raise InputError(f"not a power profile: {profile!r}")


def profile_from_dict(data: dict) -> PowerProfile:
    """Inverse of profile_to_dict.  Round-trips finite parameters exactly."""
    if not isinstance(data, dict):
        raise InputError(f"profile document must be an object, got {type(data).__name__}")
    kind = data.get("kind")
    try:
        if kind == "linear":
            return LinearProfile(a=float(data["a"]), b=float(data["b"]))
        if kind == "nroot":
            return NRootProfile(c=float(data["c"]), d=float(data["d"]), n=data["n"])
    except KeyError as exc:
        raise InputError(f"profile document is missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad profile field: {exc}") from exc
    raise InputError(f"unknown profile kind {kind!r}")
