"""Combinatorial classification of sign patterns.

Conventions
-----------
The digraph of a pattern has an edge ``j -> i`` whenever cell ``(i, j)`` is
nonzero, so the successors of ``j`` are read off column ``j``. The bipartite
graph joins row vertex ``X_i`` to column vertex ``Y_j`` for every nonzero
cell. Indices are 0-based throughout.

For ``n = 1`` the pattern is treated as irreducible with period 1 whatever
its single entry; it is two-fold irreducible (and fully indecomposable) only
when the entry is nonzero.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .matrix import SignPattern, iter_bits

__all__ = [
    "ReducibleError",
    "FrobeniusForm",
    "CyclicForm",
    "StructureReport",
    "is_irreducible",
    "period",
    "is_primitive",
    "product_pattern",
    "power_pattern",
    "is_two_fold",
    "is_chainable",
    "column_components",
    "has_total_support",
    "is_fully_indecomposable",
    "is_scrambling",
    "has_positive_radius",
    "frobenius_form",
    "cyclic_form",
    "board_move_irreducible",
    "classify",
]


class ReducibleError(ValueError):
    """Raised when an operation requires an irreducible pattern."""


@dataclass(frozen=True)
class FrobeniusForm:
    """Strongly connected classes ordered so the permuted pattern is block
    lower-triangular."""

    permutation: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"permutation": list(self.permutation),
                "blocks": [list(b) for b in self.blocks]}


@dataclass(frozen=True)
class CyclicForm:
    """Cyclic classes of an irreducible pattern. Every nonzero cell ``(i, j)``
    has ``j`` in class ``k`` and ``i`` in class ``(k + 1) % period``."""

    period: int
    classes: tuple[tuple[int, ...], ...]

    @property
    def permutation(self) -> tuple[int, ...]:
        return tuple(i for c in self.classes for i in c)

    def to_dict(self) -> dict:
        return {"period": self.period, "classes": [list(c) for c in self.classes]}


@dataclass(frozen=True)
class StructureReport:
    n: int
    irreducible: bool
    period: Optional[int]
    primitive: bool
    a2_irreducible: bool
    ata_irreducible: bool
    aat_irreducible: bool
    two_fold: bool
    chainable: bool
    fully_indecomposable: bool
    total_support: bool
    scrambling: bool
    nnz: int
    column_components: tuple[tuple[int, ...], ...]
    frobenius: FrobeniusForm
    cyclic: Optional[CyclicForm] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "irreducible": self.irreducible,
            "period": self.period,
            "primitive": self.primitive,
            "a2_irreducible": self.a2_irreducible,
            "ata_irreducible": self.ata_irreducible,
            "aat_irreducible": self.aat_irreducible,
            "two_fold": self.two_fold,
            "chainable": self.chainable,
            "fully_indecomposable": self.fully_indecomposable,
            "total_support": self.total_support,
            "scrambling": self.scrambling,
            "nnz": self.nnz,
            "column_components": [list(c) for c in self.column_components],
            "frobenius": self.frobenius.to_dict(),
            "cyclic": None if self.cyclic is None else self.cyclic.to_dict(),
        }


def _reach(adj, start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_irreducible(P: SignPattern) -> bool:
    """Strong connectivity of the digraph (forward and backward search from
    vertex 0)."""
    n = P.n
    if n == 1:
        return True
    full = (1 << n) - 1
    return _reach(P.cols, 0) == full and _reach(P.rows, 0) == full


def product_pattern(P: SignPattern, Q: SignPattern) -> SignPattern:
    """Boolean matrix product: ``(i, j)`` set iff some ``k`` has ``P[i,k]``
    and ``Q[k,j]``."""
    if P.n != Q.n:
        raise ValueError(f"dimension mismatch: {P.n} vs {Q.n}")
    qrows = Q.rows
    out = []
    for r in P.rows:
        acc = 0
        for k in iter_bits(r):
            acc |= qrows[k]
        out.append(acc)
    return SignPattern(P.n, out)


def power_pattern(P: SignPattern, m: int) -> SignPattern:
    if m < 1:
        raise ValueError("power must be positive")
    out = P
    for _ in range(m - 1):
        out = product_pattern(out, P)
    return out


def _levels(P: SignPattern) -> list[int]:
    n = P.n
    level = [-1] * n
    level[0] = 0
    queue = [0]
    succ = P.cols
    for v in queue:
        for w in iter_bits(succ[v]):
            if level[w] < 0:
                level[w] = level[v] + 1
                queue.append(w)
    return level


def period(P: SignPattern) -> int:
    """Index of imprimitivity: gcd of ``level(u) + 1 - level(v)`` over all
    edges ``u -> v`` of a breadth-first search tree's level function."""
    if not is_irreducible(P):
        raise ReducibleError("period is defined for irreducible patterns only")
    if P.n == 1:
        return 1
    level = _levels(P)
    g = 0
    for u, col in enumerate(P.cols):
        for v in iter_bits(col):
            g = gcd(g, abs(level[u] + 1 - level[v]))
            if g == 1:
                return 1
    return g


def is_primitive(P: SignPattern) -> bool:
    return is_irreducible(P) and period(P) == 1


def cyclic_form(P: SignPattern) -> CyclicForm:
    gamma = period(P)
    if gamma == 1:
        return CyclicForm(1, (tuple(range(P.n)),))
    level = _levels(P)
    classes = [[] for _ in range(gamma)]
    for v, lv in enumerate(level):
        classes[lv % gamma].append(v)
    return CyclicForm(gamma, tuple(tuple(c) for c in classes))


def is_two_fold(P: SignPattern) -> bool:
    """``A`` and ``A^T A`` both irreducible."""
    if P.n == 1:
        return P.rows[0] != 0
    return is_irreducible(P) and is_irreducible(product_pattern(P.T, P))


def column_components(P: SignPattern) -> tuple[tuple[int, ...], ...]:
    """Columns grouped by connectivity of the ``A^T A`` pattern (two columns
    are adjacent when some row hits both). Ordered by smallest member; an
    all-zero column forms its own component."""
    n = P.n
    rows = P.rows
    unassigned = (1 << n) - 1
    comps = []
    while unassigned:
        comp = unassigned & -unassigned
        while True:
            grown = comp
            for r in rows:
                if r & comp:
                    grown |= r
            if grown == comp:
                break
            comp = grown
        comps.append(tuple(iter_bits(comp)))
        unassigned &= ~comp
    return tuple(comps)


def is_chainable(P: SignPattern) -> bool:
    """Connectivity of the bipartite row/column graph. Patterns with an
    all-zero row or column are not chainable."""
    if any(r == 0 for r in P.rows) or any(c == 0 for c in P.cols):
        return False
    return len(column_components(P)) == 1


def _perfect_matching(P: SignPattern) -> Optional[list[int]]:
    """Row -> column perfect matching by augmenting paths, or None."""
    n = P.n
    rows = P.rows
    col_owner = [-1] * n

    def augment(r: int, visited: list[bool]) -> bool:
        for c in iter_bits(rows[r]):
            if visited[c]:
                continue
            visited[c] = True
            if col_owner[c] < 0 or augment(col_owner[c], visited):
                col_owner[c] = r
                return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    match = [0] * n
    for c, r in enumerate(col_owner):
        match[r] = c
    return match


def has_total_support(P: SignPattern) -> bool:
    """Every nonzero cell lies on a positive diagonal.

    Forcing cell ``(i, j)`` into a matching frees row ``r = owner(j)`` and
    column ``match(i)``; a perfect matching through the cell exists iff one
    augmenting path joins them avoiding row ``i`` and column ``j``, i.e. iff
    row ``i`` is reachable from row ``r`` along ``row -> owner(column)``
    alternating steps.
    """
    match = _perfect_matching(P)
    if match is None:
        return False
    n = P.n
    owner = [0] * n
    for r, c in enumerate(match):
        owner[c] = r
    alt = []
    for r in P.rows:
        acc = 0
        for c in iter_bits(r):
            acc |= 1 << owner[c]
        alt.append(acc)
    reach = [None] * n
    for i, r in enumerate(P.rows):
        for j in iter_bits(r):
            if match[i] == j:
                continue
            start = owner[j]
            if reach[start] is None:
                reach[start] = _reach(alt, start)
            if not reach[start] >> i & 1:
                return False
    return True


def is_fully_indecomposable(P: SignPattern) -> bool:
    """Chainable with total support (Sinkhorn and Knopp's characterization)."""
    if P.n == 1:
        return P.rows[0] != 0
    return is_chainable(P) and has_total_support(P)


def is_scrambling(P: SignPattern) -> bool:
    """Every pair of distinct rows shares a nonzero column."""
    rows = P.rows
    return all(rows[i] & rows[j] for i in range(P.n) for j in range(i + 1, P.n))


def frobenius_form(P: SignPattern) -> FrobeniusForm:
    """Strongly connected components (Tarjan) in a topological order of the
    condensation, smallest-index block first among those available."""
    n = P.n
    succ = [list(iter_bits(c)) for c in P.cols]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, k = work[-1]
            if k < len(succ[v]):
                work[-1] = (v, k + 1)
                w = succ[v][k]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(comps)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))

    m = len(comps)
    indeg = [0] * m
    out_edges: list[set[int]] = [set() for _ in range(m)]
    for v in range(n):
        for w in succ[v]:
            a, b = comp_of[v], comp_of[w]
            if a != b and b not in out_edges[a]:
                out_edges[a].add(b)
                indeg[b] += 1
    heap = [(comps[c][0], c) for c in range(m) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for b in out_edges[c]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, (comps[b][0], b))
    blocks = tuple(tuple(comps[c]) for c in order)
    return FrobeniusForm(tuple(i for b in blocks for i in b), blocks)


def has_positive_radius(P: SignPattern) -> bool:
    """Some realization (hence every one) has positive spectral radius, i.e.
    the digraph contains a cycle."""
    for block in frobenius_form(P).blocks:
        if len(block) > 1 or P[block[0], block[0]]:
            return True
    return False


def board_move_irreducible(P: SignPattern, vertical: bool = False) -> bool:
    """Irreducibility via board moves on nonzero cells.

    A move reflects ``(i, j)`` to ``(j, i)`` and then slides horizontally to
    any nonzero ``(j, k)`` (or, with ``vertical=True``, vertically to any
    nonzero ``(k, i)``). True iff every row and column is nonempty and every
    nonzero cell reaches every other.
    """
    if any(r == 0 for r in P.rows) or any(c == 0 for c in P.cols):
        return False
    cells = P.cells()
    idx = {c: k for k, c in enumerate(cells)}
    fwd = [0] * len(cells)
    bwd = [0] * len(cells)
    for k, (i, j) in enumerate(cells):
        targets = ([(j, h) for h in iter_bits(P.rows[j])] if not vertical
                   else [(h, i) for h in iter_bits(P.cols[i])])
        for cell in targets:
            t = idx[cell]
            fwd[k] |= 1 << t
            bwd[t] |= 1 << k
    full = (1 << len(cells)) - 1
    return _reach(fwd, 0) == full and _reach(bwd, 0) == full


def classify(P: SignPattern) -> StructureReport:
    irreducible = is_irreducible(P)
    ata = product_pattern(P.T, P)
    aat = product_pattern(P, P.T)
    gamma = period(P) if irreducible else None
    report = StructureReport(
        n=P.n,
        irreducible=irreducible,
        period=gamma,
        primitive=gamma == 1,
        a2_irreducible=is_irreducible(product_pattern(P, P)),
        ata_irreducible=is_irreducible(ata),
        aat_irreducible=is_irreducible(aat),
        two_fold=is_two_fold(P),
        chainable=is_chainable(P),
        fully_indecomposable=is_fully_indecomposable(P),
        total_support=has_total_support(P),
        scrambling=is_scrambling(P),
        nnz=P.nnz,
        column_components=column_components(P),
        frobenius=frobenius_form(P),
        cyclic=cyclic_form(P) if irreducible else None,
    )
    _check_report(report)
    return report


def _check_report(r: StructureReport) -> None:
    failures = []
    # n = 1 follows its own conventions (see module docstring)
    if r.n > 1 and r.two_fold != (r.irreducible and r.ata_irreducible):
        failures.append("two_fold != irreducible and ata_irreducible")
    if r.two_fold and r.nnz < 2 * r.n - 1:
        failures.append("two_fold with fewer than 2n-1 nonzeros")
    if r.fully_indecomposable and not r.two_fold:
        failures.append("fully indecomposable but not two-fold")
    if r.two_fold and not r.primitive:
        failures.append("two-fold but not primitive")
    if r.irreducible != (len(r.frobenius.blocks) == 1):
        failures.append("Frobenius block count disagrees with irreducibility")
    if failures:
        raise AssertionError("inconsistent structure report: " + "; ".join(failures))
