"""Monte Carlo playouts of stationary strategy pairs, for checking closed forms.

Floating point is fine here: nothing exact ever consumes these numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .exactalg import as_fraction
from .model import AbsorbingGame, ensure_valid

BLOCK = 1 << 15


@dataclass(frozen=True)
class PlayoutConfig:
    lam: Fraction
    eps: float = 1e-6
    n: int = 1
    seed: int = 0

    def __post_init__(self):
        lam = as_fraction(self.lam)
        if not 0 < lam < 1:
            raise DomainError(f"discount factor must lie in (0, 1), got {lam}")
        if not self.eps > 0:
            raise DomainError("truncation tail eps must be positive")
        if self.n < 1:
            raise DomainError("sample count must be at least 1")
        object.__setattr__(self, "lam", lam)

    @property
    def horizon(self) -> int:
        """Smallest T with (1 - lam)^T < eps."""
        return int(math.floor(math.log(self.eps) / math.log1p(-float(self.lam)))) + 1


def _arrays(game: AbsorbingGame):
    g = np.array([[float(v) for v in row] for row in game.g])
    q = np.array([[float(v) for v in row] for row in game.q])
    w = np.array([[float(v) if qq else 0.0 for v, qq in zip(wr, qr)]
                  for wr, qr in zip(game.w, game.q)])
    return g, q, w


def _probs(p, size: int, who: str) -> np.ndarray:
    p = [as_fraction(v) for v in p]
    if len(p) != size or any(v < 0 for v in p) or sum(p) != 1:
        raise DomainError(f"{who} strategy is not a distribution over {size} actions")
    return np.array([float(v) for v in p])


def _simulate(arrays, x, y, lam: float, horizon: int, n: int, rng: np.random.Generator) -> np.ndarray:
    g, q, w = (a.ravel() for a in arrays)
    cells = np.cumsum(np.outer(x, y).ravel())
    total = np.zeros(n)
    alive = np.arange(n)
    weight = lam           # lam * (1 - lam)^(t - 1) at stage t
    decay = 1.0            # (1 - lam)^(t - 1)
    for _ in range(horizon):
        if alive.size == 0:
            break
        k = alive.size
        c = np.minimum(np.searchsorted(cells, rng.random(k) * cells[-1], side="right"), len(cells) - 1)
        total[alive] += weight * g[c]
        decay *= 1.0 - lam
        absorbed = rng.random(k) < q[c]
        total[alive[absorbed]] += decay * w[c][absorbed]
        alive = alive[~absorbed]
        weight *= 1.0 - lam
    return total


def playout(game: AbsorbingGame, x, y, config: PlayoutConfig) -> float:
    """One discounted payoff sample; absorption tails are added in closed form."""
    ensure_valid(game)
    rng = np.random.default_rng([config.seed, 0])
    xs, ys = _probs(x, game.m, "row"), _probs(y, game.n, "column")
    return float(_simulate(_arrays(game), xs, ys, float(config.lam), config.horizon, 1, rng)[0])


def estimate_gamma(game: AbsorbingGame, x, y, lam, n: int, seed: int = 0, eps: float = 1e-6):
    """Sample mean and standard error of the discounted payoff over n playouts.

    Samples are drawn in fixed blocks, each seeded from (seed, block index),
    so the output depends only on the inputs, never on execution order.
    """
    ensure_valid(game)
    cfg = PlayoutConfig(lam, eps, n, seed)
    xs, ys = _probs(x, game.m, "row"), _probs(y, game.n, "column")
    arrays = _arrays(game)
    chunks = []
    for b, start in enumerate(range(0, n, BLOCK)):
        rng = np.random.default_rng([seed, b])
        chunks.append(_simulate(arrays, xs, ys, float(cfg.lam), cfg.horizon, min(BLOCK, n - start), rng))
    samples = np.concatenate(chunks)
    stderr = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else float("nan")
    return float(samples.mean()), stderr
