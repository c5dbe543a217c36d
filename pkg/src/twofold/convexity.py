"""Strict log-convexity of ``R(D) = log r(e^D A)`` and equality witnesses.

``R`` is convex in the diagonal ``D`` for every nonnegative ``A`` with
``r(A) > 0``. Equality along a segment ``C -> D`` with nonscalar ``D - C`` is
possible exactly when ``A`` fails to be two-fold irreducible; in that case
:func:`construct_witness` builds such a segment explicitly, together with the
diagonal similarity ``e^D A = alpha E^-1 e^C A E`` that forces the equality.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .matrix import (DiagonalParams, NonnegMatrix, SignPattern,
                     convex_combination, scale_exp, sign_pattern)
from .spectral import DEFAULT_CONFIG, SpectralConfig, spectral_radius
from .structure import (ReducibleError, column_components, frobenius_form,
                        has_positive_radius, is_irreducible, is_two_fold,
                        product_pattern)

__all__ = [
    "NoWitnessError",
    "EqualityWitness",
    "StrictlyConvex",
    "EqualityPossible",
    "Property1Decision",
    "EqualitySystem",
    "log_radius_scaled",
    "convexity_gap",
    "decide_property1",
    "solve_equality_system",
    "construct_witness",
    "verify_similarity",
    "midpoint_convexity_check",
    "certify",
]

#: slack on the convexity gap when calling a segment "flat"
EQUALITY_TOLERANCE = 1e-8


class NoWitnessError(ValueError):
    """Raised when asked for an equality witness of a two-fold irreducible
    matrix; none exists."""


@dataclass(frozen=True)
class EqualityWitness:
    """Diagonals ``C``, ``D`` with nonscalar ``D - C`` on which ``R`` is affine.

    ``alpha``, ``E`` and ``L = log E`` satisfy
    ``e^{D_i} A_ij = alpha E_i^-1 e^{C_i} A_ij E_j`` on every nonzero cell
    with both indices in ``block`` (all cells when ``block`` is None). For a
    reducible matrix the identity can only be certified on the dominant
    Frobenius block, whose radius then carries ``R`` along the whole segment.
    """

    C: DiagonalParams
    D: DiagonalParams
    alpha: float
    E: np.ndarray
    L: np.ndarray
    cause: str
    block: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "C": self.C.values.tolist(),
            "D": self.D.values.tolist(),
            "alpha": self.alpha,
            "E": self.E.tolist(),
            "L": self.L.tolist(),
            "cause": self.cause,
            "block": None if self.block is None else list(self.block),
        }


@dataclass(frozen=True)
class StrictlyConvex:
    reason: dict = field(default_factory=dict)

    holds = True

    def to_dict(self) -> dict:
        return {"kind": "StrictlyConvex", "property1": True, "reason": self.reason}


@dataclass(frozen=True)
class EqualityPossible:
    witness: EqualityWitness
    cause: str

    holds = False

    def to_dict(self) -> dict:
        return {"kind": "EqualityPossible", "property1": False,
                "cause": self.cause, "witness": self.witness.to_dict()}


ConvexityCertificate = Union[StrictlyConvex, EqualityPossible]


@dataclass(frozen=True)
class Property1Decision:
    holds: bool
    cause: Optional[str] = None

    def __bool__(self):
        return self.holds


def _params(D, n: int) -> DiagonalParams:
    D = D if isinstance(D, DiagonalParams) else DiagonalParams(D)
    if len(D) != n:
        raise ValueError(f"diagonal length {len(D)} does not match n={n}")
    return D


def _matrix(A) -> NonnegMatrix:
    return A if isinstance(A, NonnegMatrix) else NonnegMatrix(A)


def log_radius_scaled(A, D, cfg: SpectralConfig = DEFAULT_CONFIG) -> float:
    """``R(D) = log r(e^D A)``."""
    A = _matrix(A)
    r = spectral_radius(scale_exp(A, _params(D, A.n)), cfg)
    if r <= 0:
        raise ValueError("matrix has zero spectral radius; log is undefined")
    return math.log(r)


def convexity_gap(A, C, D, t: float, cfg: SpectralConfig = DEFAULT_CONFIG) -> float:
    """``phi(t) = (1-t) R(C) + t R(D) - R((1-t) C + t D)``, nonnegative up to
    rounding."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t!r}")
    A = _matrix(A)
    C, D = _params(C, A.n), _params(D, A.n)
    mid = log_radius_scaled(A, convex_combination(C, D, t), cfg)
    return ((1 - t) * log_radius_scaled(A, C, cfg)
            + t * log_radius_scaled(A, D, cfg) - mid)


def midpoint_convexity_check(A, D1, D2, cfg: SpectralConfig = DEFAULT_CONFIG) -> float:
    """``(R(D1) + R(D2)) / 2 - R((D1 + D2) / 2)``."""
    A = _matrix(A)
    D1, D2 = _params(D1, A.n), _params(D2, A.n)
    mid = log_radius_scaled(A, convex_combination(D1, D2, 0.5), cfg)
    return 0.5 * (log_radius_scaled(A, D1, cfg) + log_radius_scaled(A, D2, cfg)) - mid


def _pattern(P) -> SignPattern:
    if isinstance(P, SignPattern):
        return P
    return sign_pattern(P)


def decide_property1(P) -> Property1Decision:
    """Combinatorial decision: strict convexity holds iff two-fold irreducible.

    ``cause`` is ``"reducible"`` or ``"ata_reducible"`` when it fails.
    """
    P = _pattern(P)
    if not has_positive_radius(P):
        raise ValueError("pattern has no realization with positive spectral radius")
    if is_two_fold(P):
        return Property1Decision(True)
    if not is_irreducible(P):
        return Property1Decision(False, "reducible")
    return Property1Decision(False, "ata_reducible")


@dataclass(frozen=True)
class EqualitySystem:
    """Solution set of the linearized equality conditions.

    ``L`` must be constant on each of ``components`` (column classes of the
    ``A^T A`` pattern); ``row_component[i]`` is the class holding every
    column ``j`` with ``A_ij != 0``, and then
    ``Delta_i = log(alpha) + L[row class of i] - L_i``.
    """

    components: tuple[tuple[int, ...], ...]
    row_component: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.row_component)

    def component_of(self, j: int) -> int:
        for k, comp in enumerate(self.components):
            if j in comp:
                return k
        raise IndexError(j)

    def expand_levels(self, levels: Sequence[float]) -> np.ndarray:
        """Per-index ``L`` from one value per component."""
        if len(levels) != len(self.components):
            raise ValueError(f"need {len(self.components)} levels, got {len(levels)}")
        L = np.empty(self.n)
        for comp, value in zip(self.components, levels):
            L[list(comp)] = value
        return L

    def delta(self, log_alpha: float, levels: Sequence[float]) -> np.ndarray:
        L = self.expand_levels(levels)
        row_level = np.array([levels[k] for k in self.row_component])
        return log_alpha + row_level - L


def solve_equality_system(P) -> EqualitySystem:
    P = _pattern(P)
    if not is_irreducible(P) or P.rows[0] == 0:
        raise ReducibleError("equality system is solved for irreducible patterns only")
    comps = column_components(P)
    where = {j: k for k, comp in enumerate(comps) for j in comp}
    row_component = []
    for r in P.rows:
        ks = {where[j] for j in range(P.n) if r >> j & 1}
        if len(ks) != 1:
            raise AssertionError("row spans several column components")
        row_component.append(ks.pop())
    return EqualitySystem(comps, tuple(row_component))


def verify_similarity(A, w: EqualityWitness, rtol: float = 1e-12) -> bool:
    """Check ``e^{D_i} A_ij = alpha E_i^-1 e^{C_i} A_ij E_j`` on nonzero cells."""
    a = _matrix(A).entries
    n = a.shape[0]
    if len(w.C) != n or len(w.D) != n or len(w.E) != n:
        return False
    lhs = np.exp(w.D.values)[:, None] * a
    rhs = w.alpha * (np.exp(w.C.values) / w.E)[:, None] * a * w.E[None, :]
    cells = a > 0
    if w.block is not None:
        inside = np.zeros(n, dtype=bool)
        inside[list(w.block)] = True
        cells &= inside[:, None] & inside[None, :]
    return bool(np.allclose(lhs[cells], rhs[cells], rtol=rtol, atol=0.0))


def _block_witness(A: NonnegMatrix, cfg: SpectralConfig) -> EqualityWitness:
    """Shift ``C`` up by one on a dominant Frobenius block, ``D = 0``."""
    a = A.entries
    blocks = frobenius_form(sign_pattern(A)).blocks
    radii = []
    for b in blocks:
        idx = np.array(b)
        radii.append(spectral_radius(a[np.ix_(idx, idx)], cfg))
    top = max(radii)
    h = next(k for k, r in enumerate(radii) if r >= top * (1 - 1e-9))
    C = np.zeros(A.n)
    C[list(blocks[h])] = 1.0
    return EqualityWitness(
        C=DiagonalParams(C), D=DiagonalParams.zeros(A.n), alpha=math.exp(-1.0),
        E=np.ones(A.n), L=np.zeros(A.n), cause="reducible", block=blocks[h])


def _similarity_witness(A: NonnegMatrix, log_alpha: Optional[float],
                        levels: Optional[Sequence[float]]) -> EqualityWitness:
    """``C = 0`` and ``D = Delta(log_alpha, levels)``.

    Defaults: ``alpha = e`` and ``L = 1`` on the second column class, 0
    elsewhere.
    """
    system = solve_equality_system(sign_pattern(A))
    if levels is None:
        levels = [0.0] * len(system.components)
        levels[1] = 1.0
    levels = [float(x) for x in levels]
    log_alpha = 1.0 if log_alpha is None else float(log_alpha)
    L = system.expand_levels(levels)
    D = system.delta(log_alpha, levels)
    return EqualityWitness(
        C=DiagonalParams.zeros(A.n), D=DiagonalParams(D), alpha=math.exp(log_alpha),
        E=np.exp(L), L=L, cause="ata_reducible")


def construct_witness(A, cfg: SpectralConfig = DEFAULT_CONFIG, *,
                      log_alpha: Optional[float] = None,
                      levels: Optional[Sequence[float]] = None) -> EqualityWitness:
    """Equality witness for a matrix that is not two-fold irreducible.

    Parameters
    ----------
    A : NonnegMatrix or array_like
    cfg : SpectralConfig
        Used to locate the dominant block of a reducible matrix.
    log_alpha, levels : optional
        Free parameters of the equality system for an irreducible ``A``:
        ``log(alpha)`` and one ``L`` value per column component (in the order
        of :func:`twofold.structure.column_components`). The levels must not
        all be equal, or ``D - C`` would be scalar.

    Raises
    ------
    NoWitnessError
        If ``A`` is two-fold irreducible.
    """
    A = _matrix(A)
    decision = decide_property1(sign_pattern(A))
    if decision.holds:
        raise NoWitnessError("matrix is two-fold irreducible; R is strictly "
                             "convex along every nonscalar direction")
    if decision.cause == "reducible":
        if log_alpha is not None or levels is not None:
            raise ValueError("log_alpha and levels apply to irreducible matrices only")
        w = _block_witness(A, cfg)
    else:
        w = _similarity_witness(A, log_alpha, levels)
        if (w.D - w.C).is_scalar():
            raise ValueError("levels give a scalar D - C; pick unequal levels")
    if (w.D - w.C).is_scalar() or not verify_similarity(A, w):
        raise AssertionError("constructed witness fails its own certificate")
    return w


def certify(A, cfg: SpectralConfig = DEFAULT_CONFIG, **witness_kw) -> ConvexityCertificate:
    """Strict convexity certificate, or an equality witness when it fails.

    ``witness_kw`` is passed to :func:`construct_witness`.
    """
    A = _matrix(A)
    P = sign_pattern(A)
    decision = decide_property1(P)
    if decision.holds:
        reason = {"irreducible": True, "ata_irreducible": True}
        if P.n > 1:
            reason["aat_irreducible"] = is_irreducible(product_pattern(P, P.T))
        return StrictlyConvex(reason)
    return EqualityPossible(construct_witness(A, cfg, **witness_kw), decision.cause)
