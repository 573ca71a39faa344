"""Exhaustive isomorph-reduced search for Ryser designs at small ``(v, lambda)``.

The search is split by replication data. For each admissible triple
``(r1, r2, e1)`` the points ``0 .. e1-1`` are taken to be the ``r1`` points
(any design can be relabelled that way), and the incidence matrix is built
one block (row) at a time under two symmetry-breaking rules:

* rows strictly decrease lexicographically, reading point 0 first;
* within the ``r1`` points and within the ``r2`` points, columns are
  non-increasing lexicographically, reading the rows top down.

The lexicographically greatest matrix in the orbit of a design under row
permutations and class-preserving column permutations meets both rules, so
every design is reached at least once. Survivors are deduplicated by
:func:`canonical_form`.

Inside the kernel a row is an int whose bit ``v-1-x`` stands for point
``x``, so integer order equals lexicographic order of rows.
"""

from __future__ import annotations

import time
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .core import Ryser, SetSystem, classify, replication_counts
from .equivalence import is_type1
from .errors import ParameterError

EXACT_CANONICAL_LIMIT = 9
DEFAULT_SCAN_CAP = 8


# --- canonical form ---------------------------------------------------------


def canonical_key(system: SetSystem) -> tuple[int, ...]:
    """Column-major bit string of the incidence matrix with rows sorted ascending.

    Rows are the blocks read as bit tuples over points ``0 .. v-1``. This is the
    quantity :func:`canonical_form` minimises over point relabellings.
    """
    v = system.v
    rows = sorted(tuple(m >> x & 1 for x in range(v)) for m in system.masks)
    return tuple(row[x] for x in range(v) for row in rows)


def _point_invariant(system: SetSystem) -> list[tuple]:
    counts = replication_counts(system)
    sizes = system.sizes
    inv = []
    for x in range(system.v):
        through = sorted(sizes[i] for i, m in enumerate(system.masks) if m >> x & 1)
        inv.append((counts[x], tuple(through)))
    return inv


def canonical_form(system: SetSystem, exact_limit: int = EXACT_CANONICAL_LIMIT) -> SetSystem:
    """Relabel points so that :func:`canonical_key` is least; blocks come out sorted.

    Points are chosen one column at a time. Every partial labelling whose
    columns so far are minimal stays alive, so for ``v <= exact_limit`` the
    result is the exact minimum and two systems get the same form iff they
    are isomorphic. Above the limit only one branch is kept, tie-broken by a
    replication/block-size invariant and then by point index; the result is
    deterministic but may differ between isomorphic inputs.
    """
    v = system.v
    rows = system.masks
    exact = v <= exact_limit
    inv = None if exact else _point_invariant(system)

    # a live node: (points placed so far, ordered cells of row indices)
    live = [((), (tuple(range(len(rows))),))]
    for _ in range(v):
        best = None
        children = []
        for order, cells in live:
            used = set(order)
            for p in range(v):
                if p in used:
                    continue
                key = tuple(sum(rows[r] >> p & 1 for r in cell) for cell in cells)
                if best is None or key < best:
                    best, children = key, [(order, cells, p)]
                elif key == best:
                    children.append((order, cells, p))
        if not exact:
            children = [min(children, key=lambda ch: (inv[ch[2]], ch[2]))]
        seen = set()
        live = []
        for order, cells, p in children:
            new_cells = []
            for cell in cells:
                zeros = tuple(r for r in cell if not rows[r] >> p & 1)
                ones = tuple(r for r in cell if rows[r] >> p & 1)
                if zeros:
                    new_cells.append(zeros)
                if ones:
                    new_cells.append(ones)
            node = (order + (p,), tuple(new_cells))
            dedup = (frozenset(node[0]), node[1])
            if dedup not in seen:
                seen.add(dedup)
                live.append(node)

    order, cells = live[0]
    new_label = {old: new for new, old in enumerate(order)}
    out = []
    for cell in cells:
        for r in cell:
            m = 0
            for old in range(v):
                if rows[r] >> old & 1:
                    m |= 1 << new_label[old]
            out.append(m)
    return SetSystem.from_masks(v, out)


# --- admissible replication data -------------------------------------------


@dataclass(frozen=True)
class Triple:
    r1: int
    r2: int
    e1: int
    e2: int


def admissible_triples(v: int, lam: int) -> list[Triple]:
    """Replication data allowed by double counting.

    ``r1 + r2 = v + 1`` and ``e1*r1*(r1-1) + e2*r2*(r2-1) = lam*v*(v-1)`` with
    ``e1 + e2 = v`` pin ``e1 = (lam*(v-1) - r2*(r2-1)) / (r1 - r2)``, which must
    be an integer in ``[1, v-1]``; this is the same condition as
    ``(c - d) * e1 = lam*(c + d) - d*r2`` with ``(r1-1, r2-1) = g*(c, d)``.

    ``r2 = 1`` never occurs: every block would be ``E1`` plus private points,
    forcing ``lam = e1`` and at least ``v`` private points among ``v - e1``.
    """
    out = []
    for r2 in range(2, (v + 1) // 2 + 1):
        r1 = v + 1 - r2
        if r1 <= r2:
            continue
        num = lam * (v - 1) - r2 * (r2 - 1)
        if num % (r1 - r2):
            continue
        e1 = num // (r1 - r2)
        if not 1 <= e1 <= v - 1:
            continue
        g = gcd(r1 - 1, r2 - 1)
        c, d = (r1 - 1) // g, (r2 - 1) // g
        assert (c - d) * e1 == lam * (c + d) - d * r2
        out.append(Triple(r1, r2, e1, v - e1))
    return out


def _row_types(v: int, lam: int, t: Triple) -> set[tuple[int, int]]:
    # (r1-1)*tau1 + (r2-1)*tau2 = lam*(v-1) for every block
    types = set()
    for tau1 in range(t.e1 + 1):
        for tau2 in range(t.e2 + 1):
            size = tau1 + tau2
            if lam < size < v and (t.r1 - 1) * tau1 + (t.r2 - 1) * tau2 == lam * (v - 1):
                types.add((tau1, tau2))
    return types


# --- search kernel ----------------------------------------------------------


class _Timeout(Exception):
    pass


class _Cell:
    """Static data for one replication triple."""

    def __init__(self, v: int, lam: int, triple: Triple):
        self.v, self.lam, self.triple = v, lam, triple
        e2 = triple.e2
        E1 = ((1 << triple.e1) - 1) << e2
        E2 = (1 << e2) - 1
        types = _row_types(v, lam, triple)
        self.candidates = [
            m
            for m in range((1 << v) - 1, 0, -1)
            if ((m & E1).bit_count(), (m & E2).bit_count()) in types
        ]
        # bit position p belongs to point v-1-p; positions >= e2 are the r1 points
        self.targets = [triple.r1 if p >= e2 else triple.r2 for p in range(v)]
        ties = 0
        for p in range(1, v):
            if p != e2:
                ties |= 1 << (p - 1)
        self.initial_ties = ties

    def initial(self):
        return ((), self.candidates, self.initial_ties, (0,) * self.v)

    def step(self, state, idx: int):
        """Place ``cands[idx]`` as the next row; None if it breaks a rule."""
        rows, cands, ties, counts = state
        R = cands[idx]
        if (~R >> 1) & R & ties:
            return None
        v, lam = self.v, self.lam
        left = v - len(rows) - 1
        new_counts = list(counts)
        full = need = 0
        for p in range(v):
            if R >> p & 1:
                new_counts[p] += 1
            deficit = self.targets[p] - new_counts[p]
            if deficit > left:
                return None
            if deficit == 0:
                full |= 1 << p
            elif deficit == left:
                need |= 1 << p
        if left == 0:
            nxt = []
        else:
            nxt = [
                c
                for c in cands[idx + 1 :]
                if (c & R).bit_count() == lam and not c & full and c & need == need
            ]
            if len(nxt) < left:
                return None
        return (rows + (R,), nxt, ties & ~((R >> 1) ^ R), tuple(new_counts))


def _replay(cell: _Cell, prefix: tuple[int, ...]):
    state = cell.initial()
    for R in prefix:
        state = cell.step(state, state[1].index(R))
        if state is None:
            raise ValueError("invalid search prefix")
    return state


def _prefixes(cell: _Cell, depth: int) -> tuple[list[tuple[int, ...]], int]:
    out = []
    nodes = 0

    def go(state):
        nonlocal nodes
        nodes += 1
        if len(state[0]) == depth or len(state[0]) == cell.v:
            out.append(state[0])
            return
        for idx in range(len(state[1])):
            nxt = cell.step(state, idx)
            if nxt is not None:
                go(nxt)

    go(cell.initial())
    return out, nodes


def _run_task(v: int, lam: int, triple: Triple, prefix: tuple[int, ...], deadline: float | None):
    """Exhaust the subtree below ``prefix``. Returns (solutions, nodes, completed)."""
    cell = _Cell(v, lam, triple)
    state = _replay(cell, prefix)
    sols = []
    nodes = 0

    def go(state):
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes & 255 == 0 and time.time() > deadline:
            raise _Timeout
        if len(state[0]) == v:
            sols.append(state[0])
            return
        for idx in range(len(state[1])):
            nxt = cell.step(state, idx)
            if nxt is not None:
                go(nxt)

    try:
        go(state)
    except _Timeout:
        return sols, nodes, False
    return sols, nodes, True


def _rows_to_system(v: int, rows: Iterable[int]) -> SetSystem:
    masks = []
    for R in rows:
        m = 0
        for p in range(v):
            if R >> p & 1:
                m |= 1 << (v - 1 - p)
        masks.append(m)
    return SetSystem.from_masks(v, masks)


# --- public search API ------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    v: int
    lam: int
    max_results: int | None = None
    time_budget: float | None = None
    parallel_width: int = 1

    def __post_init__(self) -> None:
        if self.v < 3 or self.lam < 1 or self.lam >= self.v:
            raise ParameterError(f"need v >= 3 and 1 <= lambda < v, got ({self.v}, {self.lam})")
        if self.parallel_width < 1:
            raise ParameterError("parallel_width must be positive")


@dataclass
class SearchReport:
    config: SearchConfig
    found: list[SetSystem] = field(default_factory=list)
    type1_count: int = 0
    type2_candidates: list[SetSystem] = field(default_factory=list)
    nodes_explored: int = 0
    completed: bool = False
    triples: list[Triple] = field(default_factory=list)
    elapsed: float = 0.0


def search_ryser(config: SearchConfig) -> SearchReport:
    """Find all Ryser designs of order ``v`` and index ``lambda`` up to isomorphism."""
    start = time.time()
    deadline = None if config.time_budget is None else start + config.time_budget
    v, lam = config.v, config.lam
    report = SearchReport(config, triples=admissible_triples(v, lam))

    tasks = []
    for triple in report.triples:
        prefixes, nodes = _prefixes(_Cell(v, lam, triple), 2)
        report.nodes_explored += nodes
        tasks.extend((v, lam, triple, prefix, deadline) for prefix in prefixes)

    canon: dict[tuple[int, ...], SetSystem] = {}
    completed = True

    def absorb(result) -> bool:
        nonlocal completed
        sols, nodes, done = result
        report.nodes_explored += nodes
        completed = completed and done
        for rows in sols:
            system = _rows_to_system(v, rows)
            c = canonical_form(system)
            canon.setdefault(c.masks, c)
        return config.max_results is not None and len(canon) >= config.max_results

    if config.parallel_width > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel_width) as pool:
            # map preserves task order, so merging is deterministic
            for i, result in enumerate(pool.map(_run_task, *zip(*tasks))):
                if absorb(result) and i < len(tasks) - 1:
                    completed = False
                    break
    else:
        for i, task in enumerate(tasks):
            if deadline is not None and time.time() > deadline:
                completed = False
                break
            if absorb(_run_task(*task)) and i < len(tasks) - 1:
                completed = False
                break

    for key in sorted(canon):
        system = canon[key]
        kind = classify(system)
        if not (isinstance(kind, Ryser) and kind.lam == lam):
            raise AssertionError(f"search produced a non-design: {kind}")
        report.found.append(system)
        if is_type1(system):
            report.type1_count += 1
        else:
            report.type2_candidates.append(system)
    report.completed = completed
    report.elapsed = time.time() - start
    return report


def reference_enumerate(v: int, lam: int) -> set[tuple[int, ...]]:
    """Canonical forms of all Ryser designs, by plain generate-and-test.

    Every family of ``v`` distinct subsets with pairwise intersection ``lam``
    is listed with no replication or symmetry pruning, then classified.
    Meant as an oracle for small ``v`` only.
    """
    subsets = [m for m in range(1, 1 << v) if lam < m.bit_count() < v]
    found = set()

    def go(chosen, cands):
        if len(chosen) == v:
            system = SetSystem.from_masks(v, chosen)
            kind = classify(system)
            if isinstance(kind, Ryser) and kind.lam == lam:
                found.add(canonical_form(system).masks)
            return
        for i, m in enumerate(cands):
            go(chosen + [m], [c for c in cands[i + 1 :] if (c & m).bit_count() == lam])

    go([], subsets)
    return found


@dataclass
class ScanCell:
    v: int
    lam: int
    report: SearchReport

    @property
    def status(self) -> str:
        if self.report.type2_candidates:
            return "TYPE-2 CANDIDATE"
        return "verified" if self.report.completed else "inconclusive"


@dataclass
class ScanSummary:
    cells: list[ScanCell]

    @property
    def type2_found(self) -> bool:
        return any(c.report.type2_candidates for c in self.cells)

    @property
    def all_completed(self) -> bool:
        return all(c.report.completed for c in self.cells)


def conjecture_scan(
    v_max: int,
    lambda_max: int,
    budget: float | None = None,
    parallel_width: int = 1,
    cap: int = DEFAULT_SCAN_CAP,
) -> ScanSummary:
    """Run :func:`search_ryser` on every ``3 <= v <= v_max``, ``1 <= lambda <= lambda_max``.

    ``budget`` is a per-cell time budget in seconds.
    """
    if v_max > cap:
        raise ParameterError(f"v_max = {v_max} exceeds the desk-scale cap {cap}")
    cells = []
    for v in range(3, v_max + 1):
        for lam in range(1, min(lambda_max, v - 1) + 1):
            cfg = SearchConfig(v, lam, time_budget=budget, parallel_width=parallel_width)
            cells.append(ScanCell(v, lam, search_ryser(cfg)))
    return ScanSummary(cells)


__all__ = [
    "SearchConfig",
    "SearchReport",
    "ScanCell",
    "ScanSummary",
    "Triple",
    "admissible_triples",
    "canonical_form",
    "canonical_key",
    "conjecture_scan",
    "reference_enumerate",
    "search_ryser",
]
