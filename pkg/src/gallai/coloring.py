"""Edge-colorings of complete graphs and their verification primitives.

Vertices are 1..n and colors are 1..k in every public interface. A coloring
is stored as the upper triangle of the color matrix in row-major order:
c(1,2), c(1,3), ..., c(1,n), c(2,3), ..., c(n-1,n). Colorings are immutable;
every operation here is a pure read or returns a fresh object, so values can
be shared freely across workers.

The central predicate is rainbow-triangle-freeness: a coloring is a Gallai
coloring when no triangle receives three distinct colors. Several operations
(dense color neighborhoods, the anti-Ramsey cap) are only guaranteed on
Gallai inputs and say so.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .errors import (
    ColorOutOfRange,
    IncompleteAssignment,
    NotGallai,
    VertexOutOfRange,
)

MAX_VERTICES = 64  # desk-scale envelope: vertex subsets fit in one machine word


@dataclass(frozen=True)
class RainbowTriangleWitness:
    """Three vertices whose mutual edges carry three distinct colors."""

    u: int
    v: int
    w: int
    colors: tuple[int, int, int]


def _pair_index(n: int, u: int, v: int) -> int:
    # 1-based u < v into the row-major upper triangle
    return (u - 1) * n - (u - 1) * u // 2 + (v - u - 1)


class EdgeColoring:
    """A symmetric color assignment on the edges of K_n over palette [1..k].

    The palette may be larger than the set of colors actually used;
    surjectivity is a separate queryable property (`colors_used`).
    """

    __slots__ = ("n", "k", "_upper")

    def __init__(self, n: int, k: int, upper: Iterable[int]):
        if n < 1:
            raise VertexOutOfRange(f"need n >= 1, got {n}")
        if n > MAX_VERTICES:
            raise VertexOutOfRange(f"n={n} exceeds the supported envelope of {MAX_VERTICES}")
        if k < 1:
            raise ColorOutOfRange(f"need k >= 1, got {k}")
        upper = tuple(upper)
        want = n * (n - 1) // 2
        if len(upper) != want:
            raise IncompleteAssignment(f"expected {want} edge colors for n={n}, got {len(upper)}")
        for c in upper:
            if not (1 <= c <= k):
                raise ColorOutOfRange(f"color {c} outside palette [1..{k}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_upper", upper)

    def __setattr__(self, name, value):
        raise AttributeError("EdgeColoring is immutable")

    def color(self, u: int, v: int) -> int:
        """Color of edge uv; symmetric in u and v."""
        if u == v:
            raise VertexOutOfRange(f"no self-loop at vertex {u}")
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside [1..{self.n}]")
        if u > v:
            u, v = v, u
        return self._upper[_pair_index(self.n, u, v)]

    @property
    def upper(self) -> tuple[int, ...]:
        return self._upper

    def colors_used(self) -> frozenset[int]:
        if self.n == 1:
            return frozenset()
        return frozenset(self._upper)

    def is_exact(self) -> bool:
        """True when all k palette colors actually appear."""
        return len(self.colors_used()) == self.k

    def matrix(self) -> list[list[int]]:
        """Full symmetric color matrix with 0 on the diagonal (1-based trimmed)."""
        n = self.n
        m = [[0] * n for _ in range(n)]
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                c = self._upper[_pair_index(n, u, v)]
                m[u - 1][v - 1] = c
                m[v - 1][u - 1] = c
        return m

    def __eq__(self, other):
        return (
            isinstance(other, EdgeColoring)
            and self.n == other.n
            and self.k == other.k
            and self._upper == other._upper
        )

    def __hash__(self):
        return hash((self.n, self.k, self._upper))

    def __repr__(self):
        return f"EdgeColoring(n={self.n}, k={self.k})"


def make_coloring(
    n: int,
    k: int,
    assignment: Mapping[tuple[int, int], int] | Callable[[int, int], int],
) -> EdgeColoring:
    """Build a validated coloring from a pair->color mapping or function.

    Every unordered pair of [1..n] must receive exactly one color in [1..k].
    A mapping may list a pair in either orientation but not inconsistently.
    """
    upper = [0] * (n * (n - 1) // 2)
    if callable(assignment):
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                upper[_pair_index(n, u, v)] = assignment(u, v)
    else:
        seen: dict[int, int] = {}
        for (u, v), c in assignment.items():
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise VertexOutOfRange(f"bad edge ({u},{v}) for n={n}")
            if u > v:
                u, v = v, u
            i = _pair_index(n, u, v)
            if i in seen and seen[i] != c:
                raise IncompleteAssignment(f"edge ({u},{v}) assigned two colors")
            seen[i] = c
        if len(seen) != len(upper):
            raise IncompleteAssignment(
                f"{len(upper) - len(seen)} edges of K_{n} left uncolored"
            )
        for i, c in seen.items():
            upper[i] = c
    return EdgeColoring(n, k, upper)


def colors_on_subset(G: EdgeColoring, S: Iterable[int]) -> set[int]:
    """Exactly the colors appearing on edges inside S; empty for |S| <= 1."""
    S = sorted(set(S))
    for v in S:
        if not (1 <= v <= G.n):
            raise VertexOutOfRange(f"vertex {v} outside [1..{G.n}]")
    return {G.color(u, v) for u, v in combinations(S, 2)}


def is_gallai(G: EdgeColoring) -> tuple[bool, RainbowTriangleWitness | None]:
    """True iff no triangle receives three distinct colors; else one witness."""
    n = G.n
    if n < 3:
        return True, None
    m = G.matrix()
    for u in range(n):
        row_u = m[u]
        for v in range(u + 1, n):
            a = row_u[v]
            row_v = m[v]
            for w in range(v + 1, n):
                b = row_u[w]
                if b == a:
                    continue
                c = row_v[w]
                if c != a and c != b:
                    return False, RainbowTriangleWitness(u + 1, v + 1, w + 1, (a, b, c))
    return True, None


def min_colors_over_p_subsets(
    G: EdgeColoring, p: int
) -> tuple[int | float, tuple[int, ...] | None]:
    """Minimum over all p-subsets S of |colors_on_subset(G, S)|, with one
    minimizing S.

    Defined as +inf (no witness) for p > n, matching the vacuous reading of
    the coloring condition below p vertices. Branch-and-bound: a partial
    subset is abandoned once its color set already matches the best minimum,
    since colors never disappear as vertices are added.
    """
    if p < 2:
        raise VertexOutOfRange(f"need p >= 2, got {p}")
    n = G.n
    if p > n:
        return math.inf, None
    m = G.matrix()
    best = n  # anti-Ramsey can never exceed n-1, so n is a safe sentinel
    best_set: tuple[int, ...] | None = None

    # DFS over increasing vertex ids, tracking the color set as a bitmask
    def extend(last: int, chosen: list[int], mask: int, count: int):
        nonlocal best, best_set
        if count >= best:
            return
        if len(chosen) == p:
            best = count
            best_set = tuple(v + 1 for v in chosen)
            return
        need = p - len(chosen)
        for v in range(last + 1, n - need + 1):
            mask2 = mask
            for u in chosen:
                mask2 |= 1 << m[u][v]
            c2 = mask2.bit_count()
            if c2 < best:
                chosen.append(v)
                extend(v, chosen, mask2, c2)
                chosen.pop()
            if best == 1:
                return

    extend(-1, [], 0, 0)
    return best, best_set


def color_degree(G: EdgeColoring, v: int, i: int) -> int:
    """Number of edges of color i incident with v."""
    if not (1 <= v <= G.n):
        raise VertexOutOfRange(f"vertex {v} outside [1..{G.n}]")
    if not (1 <= i <= G.k):
        raise ColorOutOfRange(f"color {i} outside palette [1..{G.k}]")
    return sum(1 for u in range(1, G.n + 1) if u != v and G.color(u, v) == i)


def find_dense_color_neighborhood(
    G: EdgeColoring,
) -> tuple[int, int, frozenset[int]]:
    """A vertex v and color l with color-degree d_l(v) > n/4, plus N_l(v).

    Guaranteed to exist on Gallai inputs with n >= 4: were every color degree
    at most n/4, a counting argument forces a rainbow triangle. Returns the
    maximizing (v, l) pair, ties broken toward small ids. On non-Gallai input
    without such a pair, raises NotGallai and names a rainbow triangle.
    """
    n = G.n
    if n < 4:
        raise VertexOutOfRange(f"need n >= 4, got {n}")
    m = G.matrix()
    best = (0, 0, 0)  # (degree, -v, -l) maximization via tuple compare
    for v in range(n):
        counts: dict[int, int] = {}
        for u in range(n):
            if u != v:
                c = m[v][u]
                counts[c] = counts.get(c, 0) + 1
        for c in sorted(counts):
            if counts[c] > best[0]:
                best = (counts[c], v + 1, c)
    deg, v, l = best
    if deg * 4 <= n:
        ok, witness = is_gallai(G)
        raise NotGallai(
            f"no color degree exceeds n/4={n / 4}; input is not Gallai "
            f"(rainbow triangle at {witness})" if not ok else
            f"no color degree exceeds n/4={n / 4} (unexpected on a Gallai coloring)"
        )
    nbhd = frozenset(u + 1 for u in range(n) if u != v - 1 and m[v - 1][u] == l)
    return v, l, nbhd


def unify_colors(G: EdgeColoring, i: int, j: int) -> tuple[EdgeColoring, dict[int, int]]:
    """Recolor all j-edges with i and renumber the palette densely to k-1.

    Returns the new coloring together with the old->new color-id map.
    Merging colors cannot create a rainbow triangle, so the Gallai property
    is preserved; this is re-asserted when the input is Gallai.
    """
    if i == j:
        raise ColorOutOfRange("unify_colors needs two distinct colors")
    for c in (i, j):
        if not (1 <= c <= G.k):
            raise ColorOutOfRange(f"color {c} outside palette [1..{G.k}]")
    remap = {}
    new = 0
    for c in range(1, G.k + 1):
        if c == j:
            continue
        new += 1
        remap[c] = new
    remap[j] = remap[i]
    merged = EdgeColoring(G.n, G.k - 1, tuple(remap[c] for c in G.upper))
    if is_gallai(G)[0]:
        ok, witness = is_gallai(merged)
        assert ok, f"color merge created a rainbow triangle: {witness}"
    return merged, remap


def induced_subcoloring(G: EdgeColoring, S: Iterable[int]) -> EdgeColoring:
    """Restriction of G to S, vertices renumbered 1..|S|, palette unchanged."""
    S = sorted(set(S))
    if not S:
        raise VertexOutOfRange("induced_subcoloring needs a nonempty vertex set")
    for v in S:
        if not (1 <= v <= G.n):
            raise VertexOutOfRange(f"vertex {v} outside [1..{G.n}]")
    ns = len(S)
    upper = []
    for a in range(ns):
        for b in range(a + 1, ns):
            upper.append(G.color(S[a], S[b]))
    return EdgeColoring(ns, G.k, upper)


# --- canonical text format and structured exports ---------------------------

def to_text(G: EdgeColoring) -> str:
    """Canonical text format: "n k" then n-1 rows of the upper triangle."""
    lines = [f"{G.n} {G.k}"]
    n = G.n
    pos = 0
    for u in range(1, n):
        row = G.upper[pos : pos + n - u]
        pos += n - u
        lines.append(" ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> EdgeColoring:
    """Parse the canonical text format; bit-exact inverse of to_text."""
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise IncompleteAssignment("empty coloring file")
    head = rows[0].split()
    if len(head) != 2:
        raise IncompleteAssignment(f"bad header line {rows[0]!r}; expected 'n k'")
    n, k = int(head[0]), int(head[1])
    if len(rows) != n:
        raise IncompleteAssignment(f"expected {n - 1} triangle rows, got {len(rows) - 1}")
    upper: list[int] = []
    for u, line in enumerate(rows[1:], start=1):
        vals = [int(x) for x in line.split()]
        if len(vals) != n - u:
            raise IncompleteAssignment(f"row {u} has {len(vals)} entries, expected {n - u}")
        upper.extend(vals)
    return EdgeColoring(n, k, upper)


def to_json_obj(G: EdgeColoring) -> dict:
    return {"n": G.n, "k": G.k, "upper": list(G.upper)}


def from_json_obj(obj: dict) -> EdgeColoring:
    return EdgeColoring(obj["n"], obj["k"], obj["upper"])


def to_json(G: EdgeColoring) -> str:
    return json.dumps(to_json_obj(G))


def to_dot(G: EdgeColoring) -> str:
    """Graphviz export; edges carry their palette index as a color attribute."""
    out = [f"graph K{G.n} {{"]
    for u in range(1, G.n + 1):
        out.append(f"  v{u};")
    for u in range(1, G.n):
        for v in range(u + 1, G.n + 1):
            c = G.color(u, v)
            out.append(f'  v{u} -- v{v} [label="{c}", colorscheme=set19, color={(c - 1) % 9 + 1}];')
    out.append("}")
    return "\n".join(out) + "\n"
