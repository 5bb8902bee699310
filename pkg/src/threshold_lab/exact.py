"""Exact combinatorial primitives: colouring, subgraph search, enumeration.

Every solver here is complete: it either returns the exact answer or raises
BudgetExceededError, never an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from .errors import DomainError, as_budget
from .formats import write_graph6
from .graphs import Graph, bits


@dataclass(frozen=True)
class Embedding:
    """An injective map from pattern vertices to host vertices.

    ``mapping[i]`` is the host image of pattern vertex ``i``. Pattern edges
    must land on host edges (not necessarily induced).
    """

    mapping: tuple[int, ...]

    def validate(self, host: Graph, pattern: Graph) -> bool:
        if len(set(self.mapping)) != len(self.mapping):
            return False
        return all(
            host.has_edge(self.mapping[u], self.mapping[v])
            for u, v in pattern.edges()
        )


# -- colouring ---------------------------------------------------------------


def greedy_clique(g: Graph) -> list[int]:
    """Greedy clique, highest degree first. A lower bound for chi."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    clique: list[int] = []
    cmask = 0
    for v in order:
        if g.adj[v] & cmask == cmask:
            clique.append(v)
            cmask |= 1 << v
    return clique

def greedy_colouring(g: Graph) -> list[int]:
    """DSATUR-style greedy colouring. An upper bound for chi."""
    colour = [-1] * g.n
    sat = [0] * g.n  # bitmask of colours seen in the neighbourhood
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colour[u] < 0),
            key=lambda u: (sat[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while sat[v] >> c & 1:
            c += 1
        colour[v] = c
        for u in bits(g.adj[v]):
            sat[u] |= 1 << c
    return colour


def _colourable(g: Graph, k: int, order: list[int], budget) -> Optional[list[int]]:
    """Backtracking k-colourability; colours tried lowest-index-first."""
    n = g.n
    colour = [-1] * n
    masks = [0] * (k + 1)  # vertices holding each colour

    def rec(i: int, used: int) -> bool:
        budget.spend()
        if i == n:
            return True
        v = order[i]
        limit = min(used + 1, k)  # symmetry breaking: at most one fresh colour
        for c in range(limit):
            if masks[c] & g.adj[v]:
                continue
            colour[v] = c
            masks[c] |= 1 << v
            if rec(i + 1, max(used, c + 1)):
                return True
            masks[c] &= ~(1 << v)
            colour[v] = -1
        return False

    return colour if rec(0, 0) else None


def chromatic_number(g: Graph, budget=None) -> int:
    """Exact chromatic number via branch and bound (0 for the empty graph)."""
    if g.n == 0:
        return 0
    if g.edge_count() == 0:
        return 1
    budget = as_budget(budget, "chromatic_number")
    lower = len(greedy_clique(g))
    greedy = greedy_colouring(g)
    upper = max(greedy) + 1
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for k in range(lower, upper):
        if _colourable(g, k, order, budget) is not None:
            return k
    return upper


def colouring_with(g: Graph, k: int, budget=None) -> Optional[list[int]]:
    """An explicit proper k-colouring, or None if chi(g) > k."""
    if g.n == 0:
        return []
    budget = as_budget(budget, "colouring_with")
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    return _colourable(g, k, order, budget)


# -- independent sets ---------------------------------------------------------


def independent_sets(g: Graph, max_size: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All independent sets (including the empty one), by size then lex order."""
    top = g.n if max_size is None else min(max_size, g.n)
    for size in range(top + 1):
        for combo in combinations(range(g.n), size):
            mask = 0
            ok = True
            for v in combo:
                if g.adj[v] & mask:
                    ok = False
                    break
                mask |= 1 << v
            if ok:
                yield combo


def independent_set_masks(g: Graph) -> list[int]:
    """All independent sets as bitmasks, ordered by (popcount, value)."""
    out = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            start = mask.bit_length()
            for v in range(start, g.n):
                if g.adj[v] & mask:
                    continue
                m2 = mask | 1 << v
                nxt.append(m2)
        nxt.sort()
        out.extend(nxt)
        frontier = nxt
    return out


# -- 2-density ---------------------------------------------------------------


def two_density(g: Graph, budget=None) -> Fraction:
    """max (e(F)-1)/(v(F)-2) over induced subgraphs F with >= 3 vertices.

    Deleting edges never increases the ratio, so induced subgraphs realise
    the maximum over all subgraphs.
    """
    if g.n < 3:
        raise DomainError("2-density needs at least 3 vertices")
    budget = as_budget(budget, "two_density")
    best: Optional[Fraction] = None
    for size in range(3, g.n + 1):
        for combo in combinations(range(g.n), size):
            budget.spend()
            mask = 0
            for v in combo:
                mask |= 1 << v
            e = g.edge_count_within(mask)
            val = Fraction(e - 1, size - 2)
            if best is None or val > best:
                best = val
    return best


# -- subgraph containment ------------------------------------------------------


def _pattern_order(pattern: Graph) -> list[int]:
    """Connectivity-first vertex order: keeps the partial map constrained."""
    remaining = set(range(pattern.n))
    order: list[int] = []
    placed_mask = 0
    while remaining:
        v = max(
            remaining,
            key=lambda u: ((pattern.adj[u] & placed_mask).bit_count(), pattern.degree(u), -u),
        )
        order.append(v)
        remaining.discard(v)
        placed_mask |= 1 << v
    return order


def contains_subgraph(host: Graph, pattern: Graph, budget=None) -> Optional[Embedding]:
    """Deterministic backtracking search for a (not necessarily induced) copy."""
    if pattern.n > host.n or pattern.edge_count() > host.edge_count():
        return None
    budget = as_budget(budget, "contains_subgraph")
    order = _pattern_order(pattern)
    image = [-1] * pattern.n
    used = 0
    host_all = (1 << host.n) - 1

    def rec(i: int) -> bool:
        nonlocal used
        budget.spend()
        if i == pattern.n:
            return True
        v = order[i]
        cand = host_all & ~used
        deg_v = pattern.degree(v)
        for u in bits(pattern.adj[v]):
            if image[u] >= 0:
                cand &= host.adj[image[u]]
        for w in bits(cand):
            if host.degree(w) < deg_v:
                continue
            image[v] = w
            used |= 1 << w
            if rec(i + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    if rec(0):
        return Embedding(tuple(image))
    return None


# -- biclique counting ---------------------------------------------------------


def count_bicliques(g: Graph, s: int, budget=None) -> int:
    """Exact number of unordered K_{s,s} subgraph copies.

    For each s-set A, every s-subset of the common neighbourhood of A forms
    a copy; each copy is seen once from each side, so halve the total.
    """
    if s < 1:
        raise DomainError("side size must be positive")
    budget = as_budget(budget, "count_bicliques")
    total = 0
    for combo in combinations(range(g.n), s):
        budget.spend()
        common = g.common_neighbourhood(combo).bit_count()
        if common >= s:
            c = 1
            for i in range(s):
                c = c * (common - i) // (i + 1)
            total += c
    assert total % 2 == 0
    return total // 2


# -- forest embedding ----------------------------------------------------------


def embed_forest(g: Graph, f: Graph, budget=None) -> Optional[Embedding]:
    """Embed a forest by peeling to a high-min-degree core, then greedily.

    Guaranteed to succeed when e(g) >= v(f) * v(g); below that bound it falls
    back to the generic subgraph search, which may still find a copy.
    """
    if not f.is_forest():
        raise DomainError("pattern is not a forest")
    if f.n == 0:
        return Embedding(())
    k = f.n
    alive = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if (g.adj[v] & alive).bit_count() < k:
                alive &= ~(1 << v)
                changed = True
    if alive.bit_count() >= k:
        image = [-1] * f.n
        used = 0
        ok = True
        for comp in f.components():
            root = comp[0]
            spot = alive & ~used
            if not spot:
                ok = False
                break
            w = next(bits(spot))
            image[root] = w
            used |= 1 << w
            queue = [root]
            seen = {root}
            while queue and ok:
                v = queue.pop(0)
                for u in bits(f.adj[v]):
                    if u in seen:
                        continue
                    seen.add(u)
                    spot = g.adj[image[v]] & alive & ~used
                    if not spot:
                        ok = False
                        break
                    w = next(bits(spot))
                    image[u] = w
                    used |= 1 << w
                    queue.append(u)
            if not ok:
                break
        if ok:
            emb = Embedding(tuple(image))
            assert emb.validate(g, f)
            return emb
    return contains_subgraph(g, f, budget)


# -- canonical form ------------------------------------------------------------


def _min_code(g: Graph, budget) -> tuple[int, ...]:
    """Lexicographically least upper-triangle bit string over all orderings.

    Backtracking with prefix pruning: a partial ordering whose bits already
    exceed the best known prefix cannot produce the minimum.
    """
    n = g.n
    best: Optional[list[int]] = None
    order: list[int] = []
    prefix: list[int] = []
    used = [False] * n
    # candidates tried low-degree-first so a near-minimal code is found early
    by_degree = sorted(range(n), key=lambda v: (g.degree(v), v))

    def rec(depth: int):
        nonlocal best
        budget.spend()
        if depth == n:
            if best is None or prefix < best:
                best = prefix[:]
            return
        base = len(prefix)
        for v in by_degree:
            if used[v]:
                continue
            row = [g.adj[v] >> u & 1 for u in order]
            if best is not None:
                prefix.extend(row)
                worse = prefix > best[: base + depth]
                del prefix[base:]
                if worse:
                    continue
            used[v] = True
            order.append(v)
            prefix.extend(row)
            rec(depth + 1)
            del prefix[base:]
            order.pop()
            used[v] = False

    rec(0)
    assert best is not None or n == 0
    return tuple(best or ())


def canonical_form(g: Graph, budget=None) -> bytes:
    """Canonical bytes: equal iff isomorphic. Output is valid graph6."""
    budget = as_budget(budget, "canonical_form")
    if g.n == 0:
        return write_graph6(g)
    code = _min_code(g, budget)
    rows = [0] * g.n
    pos = 0
    for j in range(1, g.n):
        for i in range(j):
            if code[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return write_graph6(Graph(g.n, tuple(rows)))


def are_isomorphic(a: Graph, b: Graph, budget=None) -> bool:
    return a.n == b.n and canonical_form(a, budget) == canonical_form(b, budget)
