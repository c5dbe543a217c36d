"""Brute-force cross-checks over small sign patterns.

The functions here recompute classifications from their definitions
(boolean powers, zero-submatrix scans, permutation enumeration,
transitive closure) so they stay independent of :mod:`twofold.structure`,
then sweep whole pattern spaces looking for a counterexample to any of the
known equivalences.
"""
from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .convexity import (EQUALITY_TOLERANCE, construct_witness, convexity_gap,
                        decide_property1)
from .generators import rng_for
from .matrix import NonnegMatrix, SignPattern
from .spectral import DEFAULT_CONFIG, SpectralConfig
from .structure import (board_move_irreducible, has_positive_radius,
                        has_total_support, is_chainable,
                        is_fully_indecomposable, is_irreducible,
                        is_scrambling, is_two_fold, period, product_pattern)

__all__ = [
    "EXHAUSTIVE_MAX_N",
    "CHECKS",
    "enumerate_patterns",
    "irreducible_by_powers",
    "fully_indecomposable_by_konig",
    "total_support_by_permutations",
    "digraph_strongly_connected",
    "bipartite_graph_connected",
    "is_bipartite_graph",
    "check_pattern",
    "SweepReport",
    "theorem_sweep",
    "ProbeResult",
    "property1_numeric_probe",
    "ProbeSummary",
    "probe_patterns",
]

EXHAUSTIVE_MAX_N = 4
KONIG_MAX_N = 12
PERMUTATION_MAX_N = 8

PatternFilter = Union[None, str, Callable[[SignPattern], bool]]


def _no_zero_lines(P: SignPattern) -> bool:
    return all(P.rows) and all(P.cols)


_FILTERS = {
    "irreducible": is_irreducible,
    "no_zero_lines": _no_zero_lines,
    "positive_radius": has_positive_radius,
}


def _symmetric_from_bits(n: int, bits: int) -> SignPattern:
    rows = [0] * n
    k = 0
    for i in range(n):
        for j in range(i, n):
            if bits >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return SignPattern(n, rows)


def enumerate_patterns(n: int, filter: PatternFilter = None,
                       sample: Optional[int] = None, seed: int = 0,
                       density: Union[float, tuple[float, float]] = 0.5,
                       ) -> Iterator[SignPattern]:
    """Yield all ``2^(n*n)`` patterns in code order, or a seeded sample.

    ``filter`` is a callable or one of ``"irreducible"``, ``"symmetric"``,
    ``"no_zero_lines"``, ``"positive_radius"``. Exhaustive mode is limited to
    ``n <= 4``; larger ``n`` needs ``sample``, the number of patterns to
    return after filtering. Sampled cells are kept with probability
    ``density``, or with a per-pattern density drawn uniformly from a
    ``(low, high)`` range.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    symmetric = filter == "symmetric"
    if isinstance(filter, str) and not symmetric:
        if filter not in _FILTERS:
            raise ValueError(f"unknown filter {filter!r}")
        filter = _FILTERS[filter]
    keep = None if symmetric else filter

    if sample is None:
        if n > EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive enumeration is limited to n <= "
                             f"{EXHAUSTIVE_MAX_N}; pass sample= for n={n}")
        if symmetric:
            m = n * (n + 1) // 2
            for bits in range(1 << m):
                yield _symmetric_from_bits(n, bits)
            return
        for code in range(1 << (n * n)):
            P = SignPattern.from_code(n, code)
            if keep is None or keep(P):
                yield P
        return

    rng = rng_for(seed)
    produced = 0
    attempts = 0
    while produced < sample:
        attempts += 1
        if attempts > 1000 * sample + 1000:
            raise RuntimeError("filter rejects nearly every sampled pattern")
        p = density if np.isscalar(density) else rng.uniform(*density)
        cells = rng.random((n, n)) < p
        if symmetric:
            cells = np.triu(cells)
            cells = cells | cells.T
        P = SignPattern.from_mask(cells)
        if keep is None or keep(P):
            produced += 1
            yield P


def irreducible_by_powers(P: SignPattern) -> bool:
    """Every ``(i, j)`` is positive in some boolean power ``P^m``, ``m <= n``."""
    n = P.n
    if n == 1:
        return True
    base = P.mask.astype(np.int64)
    power = base.copy()
    seen = base > 0
    for _ in range(n - 1):
        power = ((power @ base) > 0).astype(np.int64)
        seen |= power > 0
    return bool(seen.all())


def fully_indecomposable_by_konig(P: SignPattern) -> bool:
    """No ``r x s`` zero submatrix with ``r + s = n`` and ``r, s >= 1``."""
    n = P.n
    if n > KONIG_MAX_N:
        raise ValueError(f"subset scan is limited to n <= {KONIG_MAX_N}")
    mask = P.mask
    if n == 1:
        return bool(mask[0, 0])
    for r in range(1, n):
        for R in itertools.combinations(range(n), r):
            zero_cols = int((~mask[list(R)].any(axis=0)).sum())
            if zero_cols >= n - r:
                return False
    return True


def total_support_by_permutations(P: SignPattern) -> bool:
    """Union of all positive diagonals equals the pattern (and is nonempty)."""
    n = P.n
    if n > PERMUTATION_MAX_N:
        raise ValueError(f"permutation scan is limited to n <= {PERMUTATION_MAX_N}")
    mask = P.mask
    covered = np.zeros_like(mask)
    found = False
    for perm in itertools.permutations(range(n)):
        if all(mask[i, perm[i]] for i in range(n)):
            found = True
            covered[range(n), perm] = True
    return found and bool(np.array_equal(covered, mask))


def _transitive_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by repeated squaring of ``I + adj``."""
    k = adj.shape[0]
    reach = (adj | np.eye(k, dtype=bool)).astype(np.int64)
    span = 1
    while span < k:
        reach = ((reach @ reach) > 0).astype(np.int64)
        span *= 2
    return reach > 0


def digraph_strongly_connected(P: SignPattern) -> bool:
    return bool(_transitive_closure(P.mask).all())


def bipartite_graph_connected(P: SignPattern) -> bool:
    """Connectivity of the ``2n``-vertex row/column graph."""
    n = P.n
    m = P.mask
    adj = np.zeros((2 * n, 2 * n), dtype=bool)
    adj[:n, n:] = m
    adj[n:, :n] = m.T
    return bool(_transitive_closure(adj)[0].all())


def is_bipartite_graph(P: SignPattern) -> bool:
    """Two-colourability of the undirected graph of a symmetric pattern."""
    m = P.mask
    n = P.n
    colour = [-1] * n
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = [s]
        for v in queue:
            for w in np.flatnonzero(m[v]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


CHECKS = (
    "irreducibility_oracle",
    "two_fold_equivalence",
    "brualdi_ryser",
    "board_moves",
    "monotonicity",
    "sign_symmetric_two_fold",
    "symmetric_period",
    "simple_graph",
    "full_indecomposability",
    "total_support_oracle",
    "nnz_bound",
    "scrambling",
)


def check_pattern(P: SignPattern, checks: Sequence[str] = CHECKS) -> tuple[list[str], list[str]]:
    """Run the structural invariants on one pattern.

    Returns ``(applicable, violated)`` lists of check names; a check is
    applicable when its hypothesis holds for ``P``.
    """
    n = P.n
    wanted = set(checks)
    applied: list[str] = []
    bad: list[str] = []

    def record(name: str, ok: bool):
        applied.append(name)
        if not ok:
            bad.append(name)

    irr = is_irreducible(P)
    two_fold = is_two_fold(P)

    if "irreducibility_oracle" in wanted:
        record("irreducibility_oracle", irr == irreducible_by_powers(P))

    if "two_fold_equivalence" in wanted and n >= 2:
        irr_a2 = is_irreducible(product_pattern(P, P))
        irr_ata = is_irreducible(product_pattern(P.T, P))
        irr_aat = is_irreducible(product_pattern(P, P.T))
        statements = (
            irr and irr_ata,
            irr_a2 and irr_ata,
            irr and irr_aat,
            irr_a2 and irr_aat,
            irr and irr_a2 and irr_ata and irr_aat,
            digraph_strongly_connected(P) and bipartite_graph_connected(P),
        )
        record("two_fold_equivalence", len(set(statements)) == 1 and statements[0] == two_fold)

    gamma = period(P) if irr else None

    if "brualdi_ryser" in wanted and irr:
        ok = True
        power = P
        for m in range(1, 7):
            if m > 1:
                power = product_pattern(power, P)
            if is_irreducible(power) != (gcd(m, gamma) == 1):
                ok = False
                break
        record("brualdi_ryser", ok)

    if "board_moves" in wanted and _no_zero_lines(P):
        record("board_moves",
               board_move_irreducible(P) == irr == board_move_irreducible(P, vertical=True))

    if "monotonicity" in wanted and two_fold:
        ok = all(is_two_fold(P.with_cell(i, j))
                 for i in range(n) for j in range(n) if not P[i, j])
        record("monotonicity", ok)

    if P.is_symmetric():
        primitive = gamma == 1
        if "sign_symmetric_two_fold" in wanted:
            record("sign_symmetric_two_fold", two_fold == primitive)
        if "symmetric_period" in wanted and irr:
            record("symmetric_period", gamma in (1, 2))
        if ("simple_graph" in wanted and irr and n >= 2
                and not any(P[i, i] for i in range(n))):
            not_bipartite = not is_bipartite_graph(P)
            record("simple_graph", primitive == not_bipartite == two_fold)

    if "full_indecomposability" in wanted:
        fi = is_fully_indecomposable(P)
        chain = is_chainable(P)
        support = has_total_support(P)
        ok = fi == (chain and support) == fully_indecomposable_by_konig(P)
        ok = ok and (not fi or two_fold) and (not (chain and not fi) or not support)
        record("full_indecomposability", ok)

    if "total_support_oracle" in wanted and n <= PERMUTATION_MAX_N:
        record("total_support_oracle", has_total_support(P) == total_support_by_permutations(P))

    if "nnz_bound" in wanted and two_fold:
        record("nnz_bound", P.nnz >= 2 * n - 1)

    if "scrambling" in wanted and is_scrambling(P):
        aat = product_pattern(P, P.T)
        record("scrambling", all(aat[i, j] for i in range(n) for j in range(n) if i != j))

    return applied, bad


@dataclass
class SweepReport:
    n: int
    patterns: int = 0
    applicable: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    first_counterexample: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "SweepReport") -> None:
        self.patterns += other.patterns
        self.applicable.update(other.applicable)
        self.violations.update(other.violations)
        for k, v in other.first_counterexample.items():
            self.first_counterexample.setdefault(k, v)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "patterns": self.patterns,
            "ok": self.ok,
            "applicable": dict(sorted(self.applicable.items())),
            "violations": dict(sorted(self.violations.items())),
            "first_counterexample": self.first_counterexample,
        }


def _sweep(n: int, patterns, checks) -> SweepReport:
    report = SweepReport(n)
    for P in patterns:
        applied, bad = check_pattern(P, checks)
        report.patterns += 1
        report.applicable.update(applied)
        for name in bad:
            report.violations[name] += 1
            report.first_counterexample.setdefault(name, P.mask.astype(int).tolist())
    return report


def _sweep_codes(args) -> SweepReport:
    n, start, stop, checks = args
    return _sweep(n, (SignPattern.from_code(n, c) for c in range(start, stop)), checks)


def theorem_sweep(n: int, checks: Sequence[str] = CHECKS, sample: Optional[int] = None,
                  seed: int = 0, workers: int = 1) -> SweepReport:
    """Check every structural invariant over all patterns of size ``n``
    (``2 <= n <= 4``) or over a seeded sample for larger ``n``."""
    if n < 2:
        raise ValueError("theorem sweep needs n >= 2")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    checks = tuple(checks)
    if sample is not None or workers <= 1:
        return _sweep(n, enumerate_patterns(n, sample=sample, seed=seed), checks)
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive sweep is limited to n <= {EXHAUSTIVE_MAX_N}")
    total = 1 << (n * n)
    step = max(1, total // (workers * 8))
    chunks = [(n, s, min(s + step, total), checks) for s in range(0, total, step)]
    report = SweepReport(n)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_codes, chunks):
            report.merge(part)
    return report


@dataclass
class ProbeResult:
    """Outcome of comparing the combinatorial decision with numerics.

    ``gap`` is the smallest sampled convexity gap when the decision says
    strictly convex, otherwise the largest gap along the witness segment.
    """

    agree: bool
    holds: bool
    cause: Optional[str]
    gap: float
    trace: list
    pattern: list
    realization: list

    def to_dict(self) -> dict:
        return {
            "agree": self.agree,
            "holds": self.holds,
            "cause": self.cause,
            "gap": self.gap,
            "trace": self.trace,
            "pattern": self.pattern,
            "realization": self.realization,
        }


T_GRID = tuple(k / 10 for k in range(1, 10))


def property1_numeric_probe(P: SignPattern, trials: int = 8, seed: int = 0,
                            cfg: SpectralConfig = DEFAULT_CONFIG,
                            strict_threshold: Optional[float] = None,
                            equality_tolerance: float = EQUALITY_TOLERANCE) -> ProbeResult:
    """Realize ``P`` with entries in ``[0.5, 1.5]`` and test the decision.

    Strict case: every sampled nonscalar ``(C, D)`` must give
    ``phi(0.5)`` and ``phi(t)`` (random ``t``) above ``strict_threshold``
    (default ``10 * cfg.tolerance``). Equality case: the constructed witness
    must keep ``phi`` below ``equality_tolerance`` on ``t = 0.1, ..., 0.9``.
    """
    if strict_threshold is None:
        strict_threshold = 10 * cfg.tolerance
    n = P.n
    rng = rng_for([seed, P.code])
    entries = np.where(P.mask, rng.uniform(0.5, 1.5, size=(n, n)), 0.0)
    A = NonnegMatrix(entries)
    decision = decide_property1(P)
    trace = []
    if decision.holds:
        if n == 1:
            return ProbeResult(True, True, None, float("inf"), trace,
                               P.mask.astype(int).tolist(), entries.tolist())
        for _ in range(trials):
            C = rng.uniform(-1.0, 1.0, n)
            D = rng.uniform(-1.0, 1.0, n)
            t = float(rng.uniform(0.1, 0.9))
            for tt in (0.5, t):
                trace.append([C.tolist(), D.tolist(), tt, convexity_gap(A, C, D, tt, cfg)])
        gap = min(row[-1] for row in trace)
        agree = gap > strict_threshold
    else:
        w = construct_witness(A, cfg)
        for t in T_GRID:
            trace.append([t, convexity_gap(A, w.C, w.D, t, cfg)])
        gap = max(row[-1] for row in trace)
        agree = gap <= equality_tolerance and not (w.D - w.C).is_scalar()
    return ProbeResult(bool(agree), decision.holds, decision.cause, float(gap), trace,
                       P.mask.astype(int).tolist(), entries.tolist())


@dataclass
class ProbeSummary:
    patterns: int = 0
    strict: int = 0
    equality: int = 0
    min_strict_gap: float = float("inf")
    max_equality_gap: float = float("-inf")
    disagreement: Optional[ProbeResult] = None

    @property
    def ok(self) -> bool:
        return self.disagreement is None

    def to_dict(self) -> dict:
        return {
            "patterns": self.patterns,
            "strict": self.strict,
            "equality": self.equality,
            "min_strict_gap": self.min_strict_gap,
            "max_equality_gap": self.max_equality_gap,
            "ok": self.ok,
            "disagreement": None if self.disagreement is None else self.disagreement.to_dict(),
        }


def probe_patterns(patterns, trials: int = 8, seed: int = 0,
                   cfg: SpectralConfig = DEFAULT_CONFIG, **kwargs) -> ProbeSummary:
    """Probe each pattern; stops at the first disagreement."""
    summary = ProbeSummary()
    for P in patterns:
        res = property1_numeric_probe(P, trials, seed, cfg, **kwargs)
        summary.patterns += 1
        if res.holds:
            summary.strict += 1
            summary.min_strict_gap = min(summary.min_strict_gap, res.gap)
        else:
            summary.equality += 1
            summary.max_equality_gap = max(summary.max_equality_gap, res.gap)
        if not res.agree:
            summary.disagreement = res
            break
    return summary
