"""Perron roots and vectors by shifted power iteration.

Each irreducible diagonal block of the Frobenius form is iterated
separately; the spectral radius of the whole matrix is the largest block
radius. Convergence is judged on the Collatz--Wielandt bracket

    min_i (M v)_i / v_i  <=  r(M)  <=  max_i (M v)_i / v_i,

which holds for any positive ``v``, so every returned radius comes with a
certified two-sided bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import NonnegMatrix, PerronPair, sign_pattern
from .structure import ReducibleError, frobenius_form, is_irreducible

__all__ = [
    "SpectralConfig",
    "ConvergenceError",
    "HolderGap",
    "spectral_radius",
    "perron_pair",
    "log_convex_combination",
    "holder_gap",
]


@dataclass(frozen=True)
class SpectralConfig:
    """Power-iteration settings.

    ``shift`` is added to the diagonal of each block after it has been
    rescaled so its spectral radius is at most one; the shift makes imprimitive
    blocks converge and is subtracted again at the end.
    """

    tolerance: float = 1e-12
    max_iterations: int = 100_000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.shift >= 0:
            raise ValueError("shift must be nonnegative")


DEFAULT_CONFIG = SpectralConfig()


class ConvergenceError(RuntimeError):
    def __init__(self, iterations: int, lower: float, upper: float):
        lower, upper = float(lower), float(upper)
        super().__init__(
            f"power iteration did not converge after {iterations} iterations; "
            f"radius bracket [{lower:.17g}, {upper:.17g}]")
        self.iterations = iterations
        self.lower = lower
        self.upper = upper


def _entries(M) -> np.ndarray:
    return M.entries if isinstance(M, NonnegMatrix) else np.asarray(M, dtype=float)


def _irreducible_root(B: np.ndarray, cfg: SpectralConfig):
    """Perron root and unit-sum vector of an irreducible block of size >= 2."""
    n = B.shape[0]
    scale = B.sum(axis=1).max()
    N = B / scale
    shift = cfg.shift
    v = np.full(n, 1.0 / n)
    lo = hi = np.nan
    for it in range(1, cfg.max_iterations + 1):
        w = N @ v + shift * v
        ratios = w / v
        lo, hi = ratios.min() - shift, ratios.max() - shift
        if lo > 0 and hi - lo <= cfg.tolerance * lo:
            return 0.5 * (lo + hi) * scale, v, it
        if 0 < hi < 0.5:
            # keep r(N) near 1 so the shift stays comparable to the root
            N = N / hi
            scale *= hi
            continue
        v = w / w.sum()
    raise ConvergenceError(cfg.max_iterations, max(lo, 0.0) * scale, hi * scale)


def spectral_radius(M, cfg: SpectralConfig = DEFAULT_CONFIG) -> float:
    a = _entries(M)
    best = 0.0
    for block in frobenius_form(sign_pattern(a)).blocks:
        if len(block) == 1:
            r = float(a[block[0], block[0]])
        else:
            idx = np.array(block)
            r = _irreducible_root(a[np.ix_(idx, idx)], cfg)[0]
        best = max(best, r)
    return float(best)


def perron_pair(M, cfg: SpectralConfig = DEFAULT_CONFIG) -> PerronPair:
    a = _entries(M)
    if not is_irreducible(sign_pattern(a)):
        raise ReducibleError("Perron vector requires an irreducible matrix")
    if a.shape[0] == 1:
        return PerronPair(float(a[0, 0]), np.ones(1), 0)
    r, v, it = _irreducible_root(a, cfg)
    return PerronPair(float(r), v.copy(), it)


def log_convex_combination(A, B, t: float) -> np.ndarray:
    """Entrywise ``A_ij^(1-t) * B_ij^t``; zero wherever either factor is zero
    for ``0 < t < 1``."""
    a, b = _entries(A), _entries(B)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if t == 0:
        return a.copy()
    if t == 1:
        return b.copy()
    out = np.zeros_like(a)
    both = (a > 0) & (b > 0)
    out[both] = a[both] ** (1 - t) * b[both] ** t
    return out


@dataclass(frozen=True)
class HolderGap:
    """Per-row Hoelder slack and the radius slack of the log-convex combination.

    ``rows[i] = (sum_j A_ij a_j)^(1-t) (sum_j B_ij b_j)^t
                - sum_j (A_ij a_j)^(1-t) (B_ij b_j)^t``
    and ``radius = r(A)^(1-t) r(B)^t - r(A^(1-t) o B^(t))``; all are >= 0
    up to rounding.
    """

    rows: np.ndarray
    radius: float


def holder_gap(A, B, t: float, cfg: SpectralConfig = DEFAULT_CONFIG) -> HolderGap:
    a_m, b_m = _entries(A), _entries(B)
    if a_m.shape != b_m.shape:
        raise ValueError(f"shape mismatch: {a_m.shape} vs {b_m.shape}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    pa, pb = perron_pair(a_m, cfg), perron_pair(b_m, cfg)
    Aa = a_m * pa.vector[None, :]
    Bb = b_m * pb.vector[None, :]
    lhs = Aa.sum(axis=1) ** (1 - t) * Bb.sum(axis=1) ** t
    rhs = log_convex_combination(Aa, Bb, t).sum(axis=1)
    H = log_convex_combination(a_m, b_m, t)
    radius_gap = pa.radius ** (1 - t) * pb.radius ** t - spectral_radius(H, cfg)
    return HolderGap(lhs - rhs, float(radius_gap))
