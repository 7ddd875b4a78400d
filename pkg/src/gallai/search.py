"""Exhaustive, isomorph-rejecting search over rainbow-triangle-free colorings.

The decision problem: does K_n admit a Gallai-k-coloring in which every K_p
receives at least q+1 distinct colors? From its answer the threshold value
g^k_q(p) (smallest n where no such coloring exists) is computed exactly at
desk scale.

Enumeration strategy (orderly generation). A coloring on t vertices is
identified with its *word*: the concatenation of the columns
(c(1,j), ..., c(j-1,j)) for j = 2..t, colors renumbered in order of first
appearance. The canonical representative of an equivalence class under
vertex relabeling composed with color relabeling is the lexicographically
least word over all vertex orderings. Dropping the last column of a
canonical word leaves a canonical word, so canonical words form a tree under
column extension; depth-first search over that tree visits every class
exactly once, with no global duplicate set and no shared state. Candidate
columns are pruned by the rainbow-triangle constraint and by clique color
counts before the (more expensive) canonicity test runs.

Canonicity testing walks orderings of the vertices, comparing the renamed
word against the stored one and abandoning any ordering as soon as it
compares greater. Vertices interchangeable by a transposition automorphism
("twins", the interchangeable members of substitution blocks) are tried only
once per position, which keeps highly symmetric colorings cheap.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from multiprocessing import Pool
from typing import Iterator

from .coloring import EdgeColoring, is_gallai, min_colors_over_p_subsets
from .errors import BadParams, BudgetExceeded

EXACT_CANONICAL_LIMIT = 10  # exact minimum-word keys up to here; weak invariant beyond

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_TIME_BUDGET = 3600.0


@dataclass
class SearchProblem:
    """One decision instance plus its resource budget."""

    n: int
    k: int
    p: int
    q: int
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float = DEFAULT_TIME_BUDGET
    mode: str = "deterministic"  # "deterministic" | "parallel"
    jobs: int = 1

    def validate(self):
        if self.n < 1 or self.k < 1:
            raise BadParams(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.p < 3 or self.q < 1:
            raise BadParams(f"need p >= 3 and q >= 1, got p={self.p}, q={self.q}")
        if self.mode not in ("deterministic", "parallel"):
            raise BadParams(f"unknown mode {self.mode!r}")


@dataclass
class SearchStats:
    nodes: int = 0  # canonical nodes accepted
    columns: int = 0  # candidate columns generated (survived rainbow pruning)
    prune_rainbow: int = 0
    prune_clique: int = 0
    prune_isomorph: int = 0
    elapsed: float = 0.0
    depth_census: dict[int, int] = field(default_factory=dict)

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.columns += other.columns
        self.prune_rainbow += other.prune_rainbow
        self.prune_clique += other.prune_clique
        self.prune_isomorph += other.prune_isomorph
        self.elapsed = max(self.elapsed, other.elapsed)
        for d, c in other.depth_census.items():
            self.depth_census[d] = self.depth_census.get(d, 0) + c


@dataclass
class SearchOutcome:
    """SAT with a re-verified witness, UNSAT with the tree exhausted, or
    budget-exceeded (distinct from UNSAT)."""

    verdict: str  # "sat" | "unsat" | "budget"
    witness: EdgeColoring | None
    stats: SearchStats


@dataclass
class GValue:
    """A computed g^k_q(p): the integer, an extremal witness on value-1
    vertices, and where the number came from."""

    k: int
    q: int
    p: int
    value: int
    witness: EdgeColoring | None
    provenance: str  # "searched" | "formula(<rule>)" | "construction"
    exact: bool = True  # False: value is only a lower bound (cap reached)
    stats: SearchStats | None = None


class _BudgetHit(Exception):
    pass


class _Budget:
    __slots__ = ("node_limit", "deadline")

    def __init__(self, node_budget: int, time_budget: float):
        self.node_limit = node_budget
        self.deadline = time.monotonic() + time_budget

    def check(self, work: int):
        if work >= self.node_limit:
            raise _BudgetHit("node budget")
        if work % 4096 == 0 and time.monotonic() > self.deadline:
            raise _BudgetHit("time budget")


# --- canonical words ---------------------------------------------------------


def _twin_ids(cm: list[list[int]], t: int) -> list[int]:
    """Class ids under the twin relation: u ~ v when swapping u and v fixes
    the coloring (equal colors to every third vertex)."""
    ids = [-1] * t
    reps: list[int] = []
    for u in range(t):
        row_u = cm[u]
        for ri, r in enumerate(reps):
            row_r = cm[r]
            if all(row_u[x] == row_r[x] for x in range(t) if x != u and x != r):
                ids[u] = ri
                break
        else:
            ids[u] = len(reps)
            reps.append(u)
    return ids


def _is_canonical(cm: list[list[int]], t: int, flat: tuple[int, ...], maxcolor: int) -> bool:
    """True iff `flat` (the stored, first-use-renumbered word of cm) is the
    lexicographic minimum over all vertex orderings."""
    if t <= 2:
        return True
    twins = _twin_ids(cm, t)
    placed: list[int] = []

    def rec(remaining: list[int], rename: list[int], nn: int, pos: int) -> bool:
        # True when some ordering below yields a strictly smaller word
        tried = 0  # bitmask over twin class ids
        m = len(placed)
        for u in remaining:
            bit = 1 << twins[u]
            if tried & bit:
                continue
            tried |= bit
            r2 = rename
            nn2 = nn
            copied = False
            row = cm[u]
            verdict = 0
            for i in range(m):
                c = row[placed[i]]
                rc = r2[c]
                if rc == 0:
                    if not copied:
                        r2 = r2[:]
                        copied = True
                    nn2 += 1
                    r2[c] = nn2
                    rc = nn2
                fv = flat[pos + i]
                if rc != fv:
                    verdict = -1 if rc < fv else 1
                    break
            if verdict < 0:
                return True
            if verdict == 0:
                placed.append(u)
                rest = [x for x in remaining if x != u]
                if rec(rest, r2, nn2, pos + m):
                    placed.pop()
                    return True
                placed.pop()
        return False

    rename0 = [0] * (maxcolor + 2)
    return not rec(list(range(t)), rename0, 0, 0)


def _min_word(cm: list[list[int]], t: int) -> tuple[int, ...]:
    """The canonical (lexicographically least, first-use-renumbered) word.

    Greedy with ties: the minimal word must extend through the minimal
    achievable column at every position, so only candidates achieving it
    are explored; twins are explored once.
    """
    if t <= 1:
        return ()
    maxcolor = max(max(row) for row in cm)
    twins = _twin_ids(cm, t)
    best: list[int] | None = None
    placed: list[int] = []
    word: list[int] = []

    def rec(remaining: list[int], rename: list[int], nn: int):
        nonlocal best
        if not remaining:
            if best is None or word < best:
                best = word[:]
            return
        m = len(placed)
        options = []
        tried = 0
        for u in remaining:
            bit = 1 << twins[u]
            if tried & bit:
                continue
            tried |= bit
            r2 = rename[:]
            nn2 = nn
            col = []
            row = cm[u]
            for i in range(m):
                c = row[placed[i]]
                rc = r2[c]
                if rc == 0:
                    nn2 += 1
                    r2[c] = nn2
                    rc = nn2
                col.append(rc)
            options.append((col, u, r2, nn2))
        mincol = min(col for col, _, _, _ in options)
        for col, u, r2, nn2 in options:
            if col != mincol:
                continue
            placed.append(u)
            word.extend(col)
            rec([x for x in remaining if x != u], r2, nn2)
            del word[len(word) - m :]
            placed.pop()

    rec(list(range(t)), [0] * (maxcolor + 2), 0)
    assert best is not None
    return tuple(best)


def canonical_key(G: EdgeColoring):
    """A key equal across colorings equivalent under vertex relabeling
    composed with color relabeling.

    Exact (the canonical word) for n <= 10. Beyond that the key degrades to
    a declared-weak invariant (sorted color-degree spectra and per-color
    subgraph profiles); inequivalent colorings may then collide and callers
    must confirm with an explicit isomorphism check.
    """
    n = G.n
    m = G.matrix()
    if n <= EXACT_CANONICAL_LIMIT:
        return ("exact", n, _min_word(m, n))
    spectra = sorted(
        tuple(sorted(sum(1 for v in range(n) if v != u and m[u][v] == c) for c in G.colors_used()))
        for u in range(n)
    )
    profiles = sorted(
        (
            sum(1 for u in range(n) for v in range(u + 1, n) if m[u][v] == c),
            tuple(sorted(sum(1 for v in range(n) if v != u and m[u][v] == c) for u in range(n))),
        )
        for c in G.colors_used()
    )
    return ("weak", n, tuple(spectra), tuple(profiles))


# --- the extension tree ------------------------------------------------------


class _Explorer:
    """Depth-first walk of the canonical extension tree.

    Yields (t, cm) for every accepted canonical node with t vertices; cm is
    live and must be copied if kept. Pruning: rainbow triangles through the
    new vertex (when `gallai`), complete p-subsets through the new vertex
    with at most q colors (when `p` is set), palette cap k with
    first-use-ascending color introduction, and canonicity.
    """

    def __init__(
        self,
        k: int,
        depth_cap: int,
        p: int | None = None,
        q: int | None = None,
        gallai: bool = True,
        exact: bool = False,
        budget: _Budget | None = None,
        stats: SearchStats | None = None,
    ):
        self.k = k
        self.depth_cap = depth_cap
        self.p = p
        self.q = q
        self.gallai = gallai
        self.exact = exact
        self.budget = budget or _Budget(DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET)
        self.stats = stats if stats is not None else SearchStats()

    def _columns(self, cm, t, used):
        """Candidate color columns for vertex t toward vertices 0..t-1,
        ascending, with rainbow pruning and first-use-ascending colors."""
        k = self.k
        gallai = self.gallai
        stats = self.stats
        col = [0] * t
        out = []
        # existing colors toward each j, indexed [j][i] for i < j
        older = [[cm[i][j] for i in range(j)] for j in range(t)]

        def rec(j, u):
            if j == t:
                out.append((tuple(col), u))
                return
            cmj = older[j]
            for c in range(1, min(k, u + 1) + 1):
                if gallai:
                    bad = False
                    for i in range(j):
                        a = col[i]
                        if a != c:
                            b = cmj[i]
                            if b != a and b != c:
                                bad = True
                                break
                    if bad:
                        stats.prune_rainbow += 1
                        continue
                col[j] = c
                rec(j + 1, u + 1 if c == u + 1 else u)

        rec(0, used)
        return out

    def _clique_masks(self, cm, t):
        """Color bitmasks of every (p-1)-subset of the t placed vertices."""
        subsets = []
        for S in combinations(range(t), self.p - 1):
            mask = 0
            for a, b in combinations(S, 2):
                mask |= 1 << cm[a][b]
            subsets.append((S, mask))
        return subsets

    def run(self) -> Iterator[tuple[int, list[list[int]]]]:
        cm = [[0]]
        self.stats.nodes += 1
        self.stats.depth_census[1] = self.stats.depth_census.get(1, 0) + 1
        yield 1, cm
        yield from self._rec(cm, 1, 0, ())

    def run_from(self, cm0: list[list[int]]) -> Iterator[tuple[int, list[list[int]]]]:
        """Explore the subtree rooted at an existing canonical node."""
        cm = [row[:] for row in cm0]
        t = len(cm)
        used = max((c for row in cm for c in row), default=0)
        flat = tuple(cm[i][j] for j in range(1, t) for i in range(j))
        yield from self._rec(cm, t, used, flat)

    def _rec(self, cm, t, used, flat) -> Iterator[tuple[int, list[list[int]]]]:
        if t >= self.depth_cap:
            return
        stats = self.stats
        if self.exact:
            # each later vertex adds at most one new color on Gallai input
            headroom = (self.depth_cap - t) if self.gallai else (
                self.depth_cap * (self.depth_cap - 1) // 2 - t * (t - 1) // 2
            )
            if used + headroom < self.k:
                return
        masks = None
        if self.p is not None and t + 1 >= self.p:
            masks = self._clique_masks(cm, t)
        q = self.q
        for col, used2 in self._columns(cm, t, used):
            stats.columns += 1
            self.budget.check(stats.columns)
            if masks is not None:
                bad = False
                for S, mask in masks:
                    full = mask
                    for s in S:
                        full |= 1 << col[s]
                    if full.bit_count() <= q:
                        bad = True
                        break
                if bad:
                    stats.prune_clique += 1
                    continue
            # extend the matrix in place
            for i in range(t):
                cm[i].append(col[i])
            cm.append(list(col) + [0])
            child_flat = flat + col
            if _is_canonical(cm, t + 1, child_flat, used2):
                stats.nodes += 1
                stats.depth_census[t + 1] = stats.depth_census.get(t + 1, 0) + 1
                yield t + 1, cm
                yield from self._rec(cm, t + 1, used2, child_flat)
            else:
                stats.prune_isomorph += 1
            cm.pop()
            for i in range(t):
                cm[i].pop()


def _coloring_from_matrix(cm: list[list[int]], k: int) -> EdgeColoring:
    t = len(cm)
    upper = [cm[u][v] for u in range(t) for v in range(u + 1, t)]
    return EdgeColoring(t, k, upper)


def _mono(n: int, k: int) -> EdgeColoring:
    return EdgeColoring(n, k, [1] * (n * (n - 1) // 2))


# --- the decision procedure and g^k_q(p) -------------------------------------


def _verify_witness(G: EdgeColoring, p: int, q: int) -> bool:
    if not is_gallai(G)[0]:
        return False
    lo, _ = min_colors_over_p_subsets(G, p)
    return lo >= q + 1


def exists_good_coloring(prob: SearchProblem) -> SearchOutcome:
    """SAT iff some Gallai-k-coloring of K_n has >= q+1 colors on every K_p.

    Vacuously SAT for n < p; UNSAT by pigeonhole when k <= q and n >= p.
    In deterministic mode the returned witness is the lexicographically
    least canonical one and node counts are identical across runs. An
    exhausted budget is reported as its own verdict, never as UNSAT.
    """
    prob.validate()
    stats = SearchStats()
    if prob.n < prob.p:
        return SearchOutcome("sat", _mono(prob.n, prob.k), stats)
    if prob.k <= prob.q:
        # every K_p sees at most k <= q colors
        return SearchOutcome("unsat", None, stats)

    if prob.mode == "parallel" and prob.jobs > 1 and prob.n > 3:
        return _exists_parallel(prob)

    budget = _Budget(prob.node_budget, prob.time_budget)
    ex = _Explorer(prob.k, prob.n, p=prob.p, q=prob.q, budget=budget, stats=stats)
    t0 = time.monotonic()
    try:
        for t, cm in ex.run():
            if t == prob.n:
                witness = _coloring_from_matrix(cm, prob.k)
                stats.elapsed = time.monotonic() - t0
                assert _verify_witness(witness, prob.p, prob.q), "witness failed re-verification"
                return SearchOutcome("sat", witness, stats)
    except _BudgetHit:
        stats.elapsed = time.monotonic() - t0
        return SearchOutcome("budget", None, stats)
    stats.elapsed = time.monotonic() - t0
    return SearchOutcome("unsat", None, stats)


def _subtree_exists(args):
    cm0, k, n, p, q, node_budget, time_budget = args
    stats = SearchStats()
    budget = _Budget(node_budget, time_budget)
    ex = _Explorer(k, n, p=p, q=q, budget=budget, stats=stats)
    try:
        for t, cm in ex.run_from(cm0):
            if t == n:
                return ("sat", [row[:] for row in cm], stats)
    except _BudgetHit:
        return ("budget", None, stats)
    return ("unsat", None, stats)


def _exists_parallel(prob: SearchProblem) -> SearchOutcome:
    """Branch-parallel search: canonical subtrees are disjoint, so workers
    share nothing and the merged verdict is any-SAT / all-UNSAT. The witness
    comes from the earliest root in canonical order, hence the outcome is
    deterministic despite parallelism."""
    t0 = time.monotonic()
    stats = SearchStats()
    budget = _Budget(prob.node_budget, prob.time_budget)
    shallow = _Explorer(prob.k, 3, p=prob.p, q=prob.q, budget=budget, stats=stats)
    roots = [[row[:] for row in cm] for t, cm in shallow.run() if t == 3]
    args = [
        (cm0, prob.k, prob.n, prob.p, prob.q, prob.node_budget, prob.time_budget)
        for cm0 in roots
    ]
    with Pool(prob.jobs) as pool:
        results = pool.map(_subtree_exists, args)
    witness = None
    any_budget = False
    for verdict, cm, st in results:
        stats.merge(st)
        if verdict == "sat" and witness is None:
            witness = _coloring_from_matrix(cm, prob.k)
        elif verdict == "budget":
            any_budget = True
    stats.elapsed = time.monotonic() - t0
    if witness is not None:
        assert _verify_witness(witness, prob.p, prob.q), "witness failed re-verification"
        return SearchOutcome("sat", witness, stats)
    if any_budget:
        return SearchOutcome("budget", None, stats)
    return SearchOutcome("unsat", None, stats)


def compute_g(
    k: int,
    q: int,
    p: int,
    n_cap: int = 64,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> GValue:
    """g^k_q(p): the smallest n forcing a K_p with at most q colors.

    Satisfiability is monotone decreasing in n (induced subcolorings of good
    colorings are good), so the value is the first unsatisfiable level. One
    traversal of the canonical extension tree yields every level at once:
    the tree dies exactly at depth g-1, and the first witness reached at
    each depth is recorded along the way. If depth n_cap is reached while
    still satisfiable the result is a lower bound only (value = n_cap + 1,
    exact=False).

    Trivial dispatches, no search: k < q and q >= p-1 both give p, as does
    the pigeonhole k = q.
    """
    if n_cap < p:
        raise BadParams(f"n_cap={n_cap} below p={p}")
    if k < q:
        return GValue(k, q, p, p, _mono(p - 1, k), "formula(k<q)")
    if q >= p - 1:
        return GValue(k, q, p, p, _mono(p - 1, k), "formula(q>=p-1: anti-Ramsey cap)")
    if k <= q:
        # k == q: pigeonhole at n = p, while n = p-1 is vacuously satisfiable
        return GValue(k, q, p, p, _mono(p - 1, k), "formula(pigeonhole k<=q)")

    stats = SearchStats()
    budget = _Budget(node_budget, time_budget)
    ex = _Explorer(k, n_cap, p=p, q=q, budget=budget, stats=stats)
    deepest = 1
    witness_at: dict[int, list[list[int]]] = {1: [[0]]}
    t0 = time.monotonic()
    capped = False
    try:
        for t, cm in ex.run():
            if t > deepest:
                deepest = t
            if t not in witness_at:
                witness_at[t] = [row[:] for row in cm]
            if t == n_cap:
                capped = True
                break
    except _BudgetHit:
        stats.elapsed = time.monotonic() - t0
        raise BudgetExceeded(
            f"budget exhausted computing g^{k}_{q}({p}): deepest satisfiable "
            f"level found so far is {deepest}; tree not exhausted, no value"
        )
    stats.elapsed = time.monotonic() - t0
    if capped:
        witness = _coloring_from_matrix(witness_at[n_cap], k)
        return GValue(k, q, p, n_cap + 1, witness, "searched", exact=False, stats=stats)
    value = deepest + 1
    witness = _coloring_from_matrix(witness_at[deepest], k)
    assert _verify_witness(witness, p, q), "extremal witness failed re-verification"
    return GValue(k, q, p, value, witness, "searched", stats=stats)


# --- enumeration and the independent oracle ----------------------------------


def enumerate_colorings(
    n: int,
    k: int,
    filters: tuple = ("gallai",),
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> Iterator[EdgeColoring]:
    """One representative per equivalence class (vertex x color relabeling)
    of the colorings of K_n over [1..k] satisfying all filters.

    Supported filters: "gallai" (no rainbow triangle), "exact" (all k
    colors appear), and ("pq", p, q) (every complete K_p has >= q+1
    colors). Without the Gallai filter the stream is exponentially larger;
    keep the budget in mind.
    """
    gallai = "gallai" in filters
    exact = "exact" in filters
    p = q = None
    for f in filters:
        if isinstance(f, tuple) and f and f[0] == "pq":
            _, p, q = f
    stats = SearchStats()
    budget = _Budget(node_budget, time_budget)
    ex = _Explorer(k, n, p=p, q=q, gallai=gallai, exact=exact, budget=budget, stats=stats)
    try:
        for t, cm in ex.run():
            if t == n:
                G = _coloring_from_matrix(cm, k)
                if exact and len(G.colors_used()) != k:
                    continue
                yield G
    except _BudgetHit:
        raise BudgetExceeded(f"enumeration budget exhausted; stats={stats}")


def naive_exists_good_coloring(n: int, k: int, p: int, q: int) -> bool:
    """Independent oracle: brute force over all k^C(n,2) edge colorings,
    each checked with the verification primitives only. Feasible for tiny
    instances; exists to cross-check the canonical search."""
    if n < p:
        return True
    edges = n * (n - 1) // 2
    for assignment in product(range(1, k + 1), repeat=edges):
        G = EdgeColoring(n, k, assignment)
        if not is_gallai(G)[0]:
            continue
        lo, _ = min_colors_over_p_subsets(G, p)
        if lo >= q + 1:
            return True
    return False
