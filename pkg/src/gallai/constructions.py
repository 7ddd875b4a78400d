"""Explicit lower-bound colorings, each returned with a re-checked certificate.

Every constructor verifies its claims through the verification primitives in
`coloring` on the object it just built; a claim that fails verification
raises instead of returning, so a certificate in hand always means the
checks ran and passed. Vertex orderings follow the sources' labels (v_1...,
and U before V before x, y, z in the two fixed small colorings) so exported
files are deterministic and diffable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coloring import (
    EdgeColoring,
    colors_on_subset,
    is_gallai,
    make_coloring,
    min_colors_over_p_subsets,
)
from .errors import ArityMismatch, BadParams, ColorCollision


@dataclass
class ConstructionCertificate:
    """A constructed coloring plus machine-checked claims about it.

    Each claim is (property, parameters, verified); every listed claim was
    re-checked on the constructed object, never assumed.
    """

    coloring: EdgeColoring
    claims: list[tuple[str, tuple, bool]] = field(default_factory=list)

    def claim(self, prop: str, params: tuple, ok: bool):
        self.claims.append((prop, params, bool(ok)))
        if not ok:
            raise AssertionError(
                f"construction failed its own certificate: {prop}{params} does not hold"
            )

    def all_verified(self) -> bool:
        return all(ok for _, _, ok in self.claims)


def _claim_gallai(cert: ConstructionCertificate):
    ok, witness = is_gallai(cert.coloring)
    cert.claim("gallai", (), ok if witness is None else False)


def staircase(k: int, m: int) -> ConstructionCertificate:
    """Color edge v_i v_j (i < j) with color i, on m vertices, palette k.

    The extremal coloring behind g^k_{p-2}(p) = k+2: every K_p with p <= m
    receives exactly p-1 distinct colors (the p-1 smallest indices chosen).
    """
    if m < 2 or k < m - 1:
        raise BadParams(f"staircase needs m >= 2 and k >= m-1, got k={k}, m={m}")
    G = make_coloring(m, k, lambda u, v: min(u, v))
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    for p in range(3, m + 1):
        lo, _ = min_colors_over_p_subsets(G, p)
        cert.claim("every_Kp_exactly_p-1_colors", (p,), lo == p - 1)
    return cert


def staircase_tail(k: int, p: int) -> ConstructionCertificate:
    """The K_{k+2} staircase with the last edge folded back to color k.

    c(v_i v_j) = i for i <= k < j or i < j <= k, and c(v_{k+1} v_{k+2}) = k.
    Witnesses that no K_p receives p-3 or fewer colors; vacuous when
    k = p-3 (then K_{k+2} = K_{p-1} holds no K_p at all).
    """
    if p < 4 or k < p - 3:
        raise BadParams(f"staircase_tail needs p >= 4 and k >= p-3, got k={k}, p={p}")
    n = k + 2
    G = make_coloring(n, k, lambda u, v: min(min(u, v), k))
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    lo, _ = min_colors_over_p_subsets(G, p)
    cert.claim("no_(p-3)-colored_Kp", (p,), lo >= p - 2)
    return cert


def substitution_product(G0: EdgeColoring, parts: list[EdgeColoring]) -> EdgeColoring:
    """Replace vertex i of G0 with parts[i]; cross edges inherit G0's color.

    All inputs must share the ambient palette [1..k]; colors are not
    renumbered (callers unify or renumber explicitly). Gallai-ness is
    preserved when every input is Gallai, and that is asserted.
    """
    if len(parts) != G0.n:
        raise ArityMismatch(f"need {G0.n} parts for the base coloring, got {len(parts)}")
    k = G0.k
    for part in parts:
        if part.k != k:
            raise ArityMismatch(
                f"parts must share the base palette [1..{k}], got [1..{part.k}]"
            )
    sizes = [part.n for part in parts]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    total = offsets[-1]

    def owner(x: int) -> int:
        # block index of global vertex x (1-based)
        lo, hi = 0, len(sizes) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if x <= offsets[mid + 1]:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def col(u: int, v: int) -> int:
        bu, bv = owner(u), owner(v)
        if bu != bv:
            return G0.color(bu + 1, bv + 1)
        return parts[bu].color(u - offsets[bu], v - offsets[bu])

    G = make_coloring(total, k, col)
    if is_gallai(G0)[0] and all(is_gallai(part)[0] for part in parts):
        ok, witness = is_gallai(G)
        assert ok, f"substitution broke the Gallai property: {witness}"
    return G


def iterated_self_substitution(G0: EdgeColoring, m: int) -> EdgeColoring:
    """m rounds of substituting copies of the previous round into G0 itself.

    Round 1 is G0; the result lives on n(G0)^m vertices.
    """
    if m < 1:
        raise BadParams(f"need m >= 1 rounds, got {m}")
    G = G0
    for _ in range(m - 1):
        G = substitution_product(G0, [G] * G0.n)
    return G


def join_copies(G: EdgeColoring, m: int, fresh: int) -> EdgeColoring:
    """m disjoint copies of G with all cross edges in a color unused by G."""
    if m < 2:
        raise BadParams(f"join_copies needs m >= 2 copies, got {m}")
    if fresh in G.colors_used():
        raise ColorCollision(f"color {fresh} already appears in the coloring")
    if fresh < 1:
        raise ColorCollision(f"fresh color must be positive, got {fresh}")
    k = max(G.k, fresh)
    ns = G.n

    def col(u: int, v: int) -> int:
        bu, bv = (u - 1) // ns, (v - 1) // ns
        if bu != bv:
            return fresh
        return G.color(u - bu * ns, v - bv * ns)

    joined = make_coloring(m * ns, k, col)
    if is_gallai(G)[0]:
        ok, witness = is_gallai(joined)
        assert ok, f"join broke the Gallai property: {witness}"
    return joined


def p5_tower(k: int) -> ConstructionCertificate:
    """The doubling tower: K_4 base (color 1 a perfect matching, color 2 a
    C_4), then k-2 joins of two copies by one fresh color each.

    Produces a Gallai-k-coloring of K_{2^k} with no monochromatic K_3 and no
    2-colored K_5, the witness behind g^k_2(5) = 2^k + 1.
    """
    if k < 2:
        raise BadParams(f"p5_tower needs k >= 2, got {k}")
    base = make_coloring(
        4, 2, {(1, 2): 1, (3, 4): 1, (1, 3): 2, (1, 4): 2, (2, 3): 2, (2, 4): 2}
    )
    G = base
    for i in range(2, k):
        G = join_copies(G, 2, i + 1)
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    mono, _ = min_colors_over_p_subsets(G, 3)
    cert.claim("no_monochromatic_K3", (), mono >= 2)
    lo, _ = min_colors_over_p_subsets(G, 5)
    cert.claim("no_2-colored_K5", (), lo >= 3)
    return cert


def remark_p7() -> ConstructionCertificate:
    """The 5-colored K_8 showing g^5_4(7) > 8: two K_4 blocks, each split
    into two monochromatic P_4's (colors {1,2} and {3,4}), joined by color 5.

    Which P_4 decomposition of K_4 is used is immaterial up to isomorphism;
    we fix paths 1-2-3-4 and 3-1-4-2 in each block.
    """
    block = {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 3): 2, (1, 4): 2, (2, 4): 2}
    assignment: dict[tuple[int, int], int] = {}
    for (u, v), c in block.items():
        assignment[(u, v)] = c
        assignment[(u + 4, v + 4)] = c + 2
    for u in range(1, 5):
        for v in range(5, 9):
            assignment[(u, v)] = 5
    G = make_coloring(8, 5, assignment)
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    lo, _ = min_colors_over_p_subsets(G, 7)
    cert.claim("no_4-colored_K7", (), lo >= 5)
    cert.claim("colors_used", ({1, 2, 3, 4, 5},), set(G.colors_used()) == {1, 2, 3, 4, 5})
    return cert


def appendix_a_k7() -> ConstructionCertificate:
    """The 4-colored K_7 with no 3-colored K_6 (so g^4_3(6) > 7).

    Vertices 1..4 are U = {u, v, w, s}; 5, 6, 7 are x, y, z.
    """
    a: dict[tuple[int, int], int] = {}
    # inside U: colors 1 and 2 each induce a P_4
    a[(1, 2)] = a[(2, 3)] = a[(3, 4)] = 1
    a[(2, 4)] = a[(4, 1)] = a[(1, 3)] = 2
    for u in range(1, 5):
        a[(u, 5)] = 3  # x
        a[(u, 7)] = 3  # z
        a[(u, 6)] = 4  # y
    a[(7, 6)] = 3  # zy
    a[(6, 5)] = 4  # yx
    a[(5, 7)] = 4  # xz
    G = make_coloring(7, 4, a)
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    lo, _ = min_colors_over_p_subsets(G, 6)
    cert.claim("no_3-colored_K6", (), lo >= 4)
    cert.claim("colors_inside_U", ({1, 2},), colors_on_subset(G, [1, 2, 3, 4]) == {1, 2})
    return cert


def appendix_b_k9() -> ConstructionCertificate:
    """The 5-colored K_9 with no 3-colored K_6 (so g^5_3(6) > 9).

    Vertices 1..3 are U = {r, s, t}; 4..7 are V = {u, v, w, z}; 8, 9 are x, y.
    Additionally certifies the deletion property: for every pair of colors,
    at least four vertex deletions are needed to remove both from the graph.
    """
    a: dict[tuple[int, int], int] = {}
    for t in range(1, 8):
        a[(t, 8)] = 1
        a[(t, 9)] = 1
    a[(8, 9)] = 2
    for hi in (4, 7):  # {u, z} x {v, w}
        for lo in (5, 6):
            a[(hi, lo)] = 2
    a[(1, 2)] = a[(2, 3)] = a[(5, 6)] = 3  # rs, st, vw
    a[(1, 3)] = a[(4, 7)] = 4  # rt, uz
    for u in range(1, 4):
        for v in range(4, 8):
            a[(u, v)] = 5
    G = make_coloring(9, 5, a)
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    lo, _ = min_colors_over_p_subsets(G, 6)
    cert.claim("no_3-colored_K6", (), lo >= 4)
    cert.claim("min_deletions_to_kill_any_color_pair", (4,), _min_pair_deletions(G) >= 4)
    return cert


def _min_pair_deletions(G: EdgeColoring) -> int:
    """Smallest d such that deleting some d vertices removes two colors.

    Equivalently the minimum, over color pairs {i, j}, of the vertex-cover
    number of the subgraph of edges colored i or j.
    """
    from itertools import combinations

    n = G.n
    edges_by_color: dict[int, list[tuple[int, int]]] = {}
    for u in range(1, n):
        for v in range(u + 1, n + 1):
            edges_by_color.setdefault(G.color(u, v), []).append((u, v))
    used = sorted(edges_by_color)
    best = n
    for i, j in combinations(used, 2):
        edges = edges_by_color[i] + edges_by_color[j]
        for d in range(0, best):
            hit = False
            for deleted in combinations(range(1, n + 1), d):
                ds = set(deleted)
                if all(u in ds or v in ds for u, v in edges):
                    hit = True
                    break
            if hit:
                best = d
                break
    return best


def conjecture_extremal(k: int, c: int) -> ConstructionCertificate:
    """The K_{k+c-1} coloring supporting g^k_{p-c}(p) >= k+c for p = k+c.

    Edges v_i v_j with i <= k get color i; edges inside {v_k..v_{k+c-1}} all
    get color k. The matching upper bound is conjectural; the certificate
    claims only the lower-bound properties.
    """
    if k < 2 or c < 2:
        raise BadParams(f"conjecture_extremal needs k >= 2 and c >= 2, got k={k}, c={c}")
    n = k + c - 1
    G = make_coloring(n, k, lambda u, v: min(min(u, v), k))
    cert = ConstructionCertificate(G)
    _claim_gallai(cert)
    p = k + c
    lo, _ = min_colors_over_p_subsets(G, p)
    cert.claim("no_(p-c)-colored_Kp", (p,), lo == math.inf or lo >= p - c + 1)
    whole, _ = min_colors_over_p_subsets(G, n) if n >= 2 else (0, None)
    cert.claim("uses_k_colors_on_the_whole", (k,), whole == k)
    return cert
