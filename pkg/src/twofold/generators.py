"""Matrix families used as examples and counterexamples, plus seeded random
patterns.

Random families draw from numpy's PCG64 bit generator seeded directly with
the user seed. A pattern uses one ``Generator.random((n, n))`` draw and keeps
the cells below ``density``; a random matrix then fills the kept cells, in
row-major order, with ``1 - Generator.random()`` so values lie in ``(0, 1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .matrix import NonnegMatrix, SignPattern

__all__ = [
    "FAMILIES",
    "GeneratorSpec",
    "generate",
    "wielandt",
    "partly_decomposable_two_fold",
    "worked_4x4",
    "n_cycle",
    "cyclic_normal",
    "remark_2x2",
    "random_pattern",
    "random_matrix",
    "rng_for",
]

FAMILIES = (
    "wielandt",
    "partly_decomposable_two_fold",
    "n_cycle",
    "cyclic_normal",
    "worked_4x4",
    "remark_2x2",
    "random_pattern",
    "random_matrix",
)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _cycle_cells(n: int):
    # edge j -> j+1 (mod n): cell (j+1 mod n, j)
    return [((j + 1) % n, j) for j in range(n)]


def n_cycle(n: int) -> SignPattern:
    if n < 1:
        raise ValueError("n must be at least 1")
    return SignPattern.from_cells(n, _cycle_cells(n))


def wielandt(n: int) -> SignPattern:
    """Cycle ``1 -> 2 -> ... -> n -> 1`` plus the shortcut ``1 -> 3``."""
    if n < 3:
        raise ValueError("Wielandt pattern needs n >= 3")
    return SignPattern.from_cells(n, _cycle_cells(n) + [(2, 0)])


def partly_decomposable_two_fold(n: int) -> SignPattern:
    """``n``-cycle, full last row except its diagonal, and cell ``(1, 2)``
    (1-based): two-fold irreducible with ``2n - 1`` nonzeros, yet partly
    decomposable."""
    if n < 4:
        raise ValueError("family needs n >= 4")
    cells = _cycle_cells(n) + [(n - 1, i) for i in range(n - 1)] + [(0, 1)]
    return SignPattern.from_cells(n, cells)


def worked_4x4() -> NonnegMatrix:
    """Column-stochastic matrix whose digraph is the two cycles
    ``1 -> 2 -> 1`` and ``1 -> 3 -> 4 -> 1``."""
    return NonnegMatrix([[0.0, 1.0, 0.0, 1.0],
                         [0.5, 0.0, 0.0, 0.0],
                         [0.5, 0.0, 0.0, 0.0],
                         [0.0, 0.0, 1.0, 0.0]])


def cyclic_normal(block_sizes: Sequence[int]) -> SignPattern:
    """Cyclic normal form with all-ones blocks: class ``k`` feeds class
    ``k + 1`` and the last class feeds the first."""
    sizes = list(block_sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("block sizes must be positive and nonempty")
    starts = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    g = len(sizes)
    cells = []
    for k in range(g):
        src = range(starts[k], starts[k + 1])
        nxt = (k + 1) % g
        dst = range(starts[nxt], starts[nxt + 1])
        cells += [(i, j) for i in dst for j in src]
    return SignPattern.from_cells(int(starts[-1]), cells)


def remark_2x2() -> SignPattern:
    """Reducible, although ``A^T A`` and ``A A^T`` are irreducible."""
    return SignPattern.from_mask([[1, 0], [1, 1]])


def _check_density(density: float):
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must lie in (0, 1], got {density!r}")


def random_pattern(n: int, density: float, seed: int) -> SignPattern:
    _check_density(density)
    return SignPattern.from_mask(rng_for(seed).random((n, n)) < density)


def random_matrix(n: int, density: float, seed: int) -> NonnegMatrix:
    _check_density(density)
    rng = rng_for(seed)
    keep = rng.random((n, n)) < density
    out = np.zeros((n, n))
    out[keep] = 1.0 - rng.random(int(keep.sum()))
    return NonnegMatrix(out)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: Optional[int] = None
    seed: int = 0
    density: float = 0.5
    blocks: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; "
                             f"choose from {', '.join(FAMILIES)}")


def generate(spec: GeneratorSpec) -> Union[SignPattern, NonnegMatrix]:
    f = spec.family
    if f == "worked_4x4":
        return worked_4x4()
    if f == "remark_2x2":
        return remark_2x2()
    if f == "cyclic_normal":
        if spec.blocks is None:
            raise ValueError("cyclic_normal needs block sizes")
        return cyclic_normal(spec.blocks)
    if spec.n is None:
        raise ValueError(f"family {f} needs n")
    if f == "wielandt":
        return wielandt(spec.n)
    if f == "partly_decomposable_two_fold":
        return partly_decomposable_two_fold(spec.n)
    if f == "n_cycle":
        return n_cycle(spec.n)
    if f == "random_pattern":
        return random_pattern(spec.n, spec.density, spec.seed)
    return random_matrix(spec.n, spec.density, spec.seed)
