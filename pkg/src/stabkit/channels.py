"""Single-qubit Pauli channels and i.i.d. error sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import ConfigError
from .pauli import PauliOperator

_SUM_TOL = 1e-12

# Sampling letter order I < X < Y < Z, as (x, z) bits.
_LETTER_X = np.array([0, 1, 1, 0], dtype=np.uint8)
_LETTER_Z = np.array([0, 0, 1, 1], dtype=np.uint8)


@dataclass(frozen=True)
class PauliChannel:
    p_i: float
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self):
        probs = self.probabilities
        if min(probs) < 0:
            raise ConfigError(f"negative channel probability in {probs}")
        if abs(sum(probs) - 1.0) > _SUM_TOL:
            raise ConfigError(f"channel probabilities sum to {sum(probs)!r}, not 1")

    @property
    def probabilities(self) -> tuple[float, float, float, float]:
        return (self.p_i, self.p_x, self.p_y, self.p_z)

    @property
    def x_marginal(self) -> float:
        """Probability that a qubit gets an X component (X or Y)."""
        return self.p_x + self.p_y

    @property
    def z_marginal(self) -> float:
        return self.p_z + self.p_y

    def sample_letters(self, rng: np.random.Generator, shape) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.uint8]]:
        """Inverse-CDF sampling of ``(x, z)`` bit arrays, one uniform per qubit."""
        u = rng.random(shape)
        cdf = np.cumsum(self.probabilities[:3])
        letter = np.searchsorted(cdf, u, side="right")
        return _LETTER_X[letter], _LETTER_Z[letter]


def _check_eps(eps: float, upper: float, name: str) -> float:
    eps = float(eps)
    if not 0.0 <= eps <= upper:
        raise ConfigError(f"{name} eps must lie in [0, {upper}], got {eps}")
    return eps


def depolarizing(eps: float) -> PauliChannel:
    """``(1 - eps, eps/3, eps/3, eps/3)`` for ``0 <= eps <= 3/4``."""
    eps = _check_eps(eps, 0.75, "depolarizing")
    return PauliChannel(1.0 - eps, eps / 3, eps / 3, eps / 3)


def bit_flip(eps: float) -> PauliChannel:
    eps = _check_eps(eps, 1.0, "bit-flip")
    return PauliChannel(1.0 - eps, eps, 0.0, 0.0)


def dephasing(eps: float) -> PauliChannel:
    eps = _check_eps(eps, 1.0, "dephasing")
    return PauliChannel(1.0 - eps, 0.0, 0.0, eps)


CHANNELS = {
    "depolarizing": depolarizing,
    "bitflip": bit_flip,
    "dephasing": dephasing,
}


def make_channel(name: str, eps: float) -> PauliChannel:
    try:
        factory = CHANNELS[name]
    except KeyError:
        raise ConfigError(f"unknown channel {name!r}; choose from {sorted(CHANNELS)}") from None
    return factory(eps)


def sample_error(ch: PauliChannel, n: int, rng: np.random.Generator) -> PauliOperator:
    """One i.i.d. ``n``-qubit error (phase 0)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    x, z = ch.sample_letters(rng, n)
    return PauliOperator(x, z)
