"""Recognisers, with certified witnesses, for the structural graph classes
that determine chromatic thresholds: cloud-forest, thundercloud-forest,
(r-)near-acyclic, and forest-in-decomposition-family.

All searches enumerate candidate independent sets by increasing size and
lexicographically within a size, and return the first witness found, so
outputs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, as_budget
from .exact import canonical_form, chromatic_number, colouring_with
from .graphs import Graph, bits, is_bipartite


@dataclass(frozen=True)
class CloudForestWitness:
    cloud: tuple[int, ...]
    forest_vertices: tuple[int, ...]

    def to_json(self):
        return {"class": "cloud-forest", "cloud": list(self.cloud),
                "forest": list(self.forest_vertices)}


@dataclass(frozen=True)
class CloudForestAltWitness:
    set_i: tuple[int, ...]
    set_j: tuple[int, ...]
    forest_f_prime: tuple[int, ...]

    def to_json(self):
        return {"class": "cloud-forest-alt", "I": list(self.set_i),
                "J": list(self.set_j), "F_prime": list(self.forest_f_prime)}


@dataclass(frozen=True)
class NearAcyclicWitness:
    independent_part: tuple[int, ...]
    forest_part: tuple[int, ...]

    def to_json(self):
        return {"class": "near-acyclic", "independent": list(self.independent_part),
                "forest": list(self.forest_part)}


@dataclass(frozen=True)
class RemovalSequence:
    sets: tuple[tuple[int, ...], ...]

    def to_json(self):
        return {"class": "removal-sequence", "removals": [list(s) for s in self.sets]}


def _mask_tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def _subsets_by_size(n: int):
    """All bitmasks over n vertices ordered by (popcount, value)."""
    masks = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    return masks


def _independent_masks_by_size(g: Graph):
    return [m for m in _subsets_by_size(g.n) if g.is_independent(m)]


def _odd_cycles_covered_twice(g: Graph, cloud_mask: int) -> bool:
    """Every odd cycle meets the cloud in >= 2 vertices.

    Requires the complement of the cloud to induce a forest. Then an odd
    cycle meeting the cloud in exactly one vertex v lives in (V \\ I) + v,
    so the condition holds iff each such one-vertex extension is bipartite.
    """
    rest = (1 << g.n) - 1 & ~cloud_mask
    for v in bits(cloud_mask):
        if is_bipartite(g.induced_mask(rest | 1 << v)) is None:
            return False
    return True


def is_cloud_forest(h: Graph, budget=None) -> Optional[CloudForestWitness]:
    """First independent cloud I (by size, then lex) whose complement is a
    forest receiving I-edges only at leaves/isolated vertices, with no two
    adjacent leaves both attached to I."""
    budget = as_budget(budget, "is_cloud_forest")
    full = (1 << h.n) - 1
    for cloud in _independent_masks_by_size(h):
        budget.spend()
        if _cloud_conditions(h, cloud, full & ~cloud):
            return CloudForestWitness(_mask_tuple(cloud), _mask_tuple(full & ~cloud))
    return None


def _cloud_conditions(h: Graph, cloud: int, rest: int) -> bool:
    forest = h.induced_mask(rest)
    if not forest.is_forest():
        return False
    rest_vertices = list(bits(rest))
    deg_f = {v: (h.adj[v] & rest).bit_count() for v in rest_vertices}
    touched = {v: bool(h.adj[v] & cloud) for v in rest_vertices}
    for v in rest_vertices:
        if touched[v] and deg_f[v] > 1:
            return False  # cloud edge lands on an internal forest vertex
    for v in rest_vertices:
        if deg_f[v] != 1:
            continue
        for u in bits(h.adj[v] & rest):
            if u > v and deg_f[u] == 1 and touched[v] and touched[u]:
                return False  # two adjacent leaves both send edges to the cloud
    return True


def is_thundercloud_forest(h: Graph, budget=None) -> Optional[CloudForestWitness]:
    """A cloud-forest witness whose cloud also meets every odd cycle twice."""
    budget = as_budget(budget, "is_thundercloud_forest")
    full = (1 << h.n) - 1
    for cloud in _independent_masks_by_size(h):
        budget.spend()
        rest = full & ~cloud
        if _cloud_conditions(h, cloud, rest) and _odd_cycles_covered_twice(h, cloud):
            return CloudForestWitness(_mask_tuple(cloud), _mask_tuple(rest))
    return None


def is_cloud_forest_alt(h: Graph, budget=None) -> Optional[CloudForestAltWitness]:
    """Partition into independent I and J plus a forest F' with no F'-I edges
    and every J-vertex having at most one F'-neighbour."""
    budget = as_budget(budget, "is_cloud_forest_alt")
    full = (1 << h.n) - 1
    indep = _independent_masks_by_size(h)
    for set_i in indep:
        rest_i = full & ~set_i
        for set_j in indep:
            if set_j & set_i:
                continue
            budget.spend()
            f_prime = rest_i & ~set_j
            if not h.induced_mask(f_prime).is_forest():
                continue
            if any(h.adj[v] & f_prime for v in bits(set_i)):
                continue
            if any((h.adj[v] & f_prime).bit_count() > 1 for v in bits(set_j)):
                continue
            return CloudForestAltWitness(
                _mask_tuple(set_i), _mask_tuple(set_j), _mask_tuple(f_prime)
            )
    return None


def is_near_acyclic(h: Graph, budget=None) -> Optional[NearAcyclicWitness]:
    """chi = 3 plus a partition into independent I and a forest such that
    every odd cycle meets I at least twice."""
    budget = as_budget(budget, "is_near_acyclic")
    if chromatic_number(h, budget) != 3:
        return None
    full = (1 << h.n) - 1
    for part_i in _independent_masks_by_size(h):
        budget.spend()
        rest = full & ~part_i
        if not h.induced_mask(rest).is_forest():
            continue
        if _odd_cycles_covered_twice(h, part_i):
            return NearAcyclicWitness(_mask_tuple(part_i), _mask_tuple(rest))
    return None


def _removal_sequence(h: Graph, removed_mask: int, count: int, budget) -> RemovalSequence:
    """Split the removed set into ``count`` independent sets via colouring."""
    if count == 0:
        return RemovalSequence(())
    sub = h.induced_mask(removed_mask)
    vertices = list(bits(removed_mask))
    colours = colouring_with(sub, count, budget)
    assert colours is not None
    sets = [tuple(vertices[i] for i in range(len(vertices)) if colours[i] == c)
            for c in range(count)]
    return RemovalSequence(tuple(sets))


def is_r_near_acyclic(h: Graph, r: int, budget=None
                      ) -> Optional[tuple[RemovalSequence, NearAcyclicWitness]]:
    """Witness that deleting the union of r-3 independent sets leaves a
    near-acyclic graph. Requires r = chi(h) >= 3."""
    budget = as_budget(budget, "is_r_near_acyclic")
    chi = chromatic_number(h, budget)
    if r != chi or r < 3:
        raise DomainError(f"r must equal chi(h) >= 3, got r={r}, chi={chi}")
    if r == 3:  # nothing is removed
        witness = is_near_acyclic(h, budget)
        return (RemovalSequence(()), witness) if witness is not None else None
    for removed in _subsets_by_size(h.n):
        budget.spend()
        if removed.bit_count() >= h.n:  # keep at least one vertex
            continue
        sub = h.induced_mask(removed)
        if chromatic_number(sub, budget) > r - 3:
            continue
        keep = [v for v in range(h.n) if not removed >> v & 1]
        witness = is_near_acyclic(h.induced(keep), budget)
        if witness is not None:
            relabel = {i: keep[i] for i in range(len(keep))}
            translated = NearAcyclicWitness(
                tuple(relabel[v] for v in witness.independent_part),
                tuple(relabel[v] for v in witness.forest_part),
            )
            removals = _removal_sequence(h, removed, r - 3, budget)
            return removals, translated
    return None


def decomposition_family(h: Graph, budget=None) -> list[Graph]:
    """Every bipartite graph (up to isomorphism) obtained by deleting the
    union of chi(h)-2 independent sets; sorted by canonical form."""
    budget = as_budget(budget, "decomposition_family")
    r = chromatic_number(h, budget)
    if r < 2:
        raise DomainError("decomposition family needs chi(h) >= 2")
    seen: dict[bytes, Graph] = {}
    for removed in range(1 << h.n):
        budget.spend()
        sub = h.induced_mask(removed)
        if chromatic_number(sub, budget) > r - 2:
            continue
        rest = h.induced([v for v in range(h.n) if not removed >> v & 1])
        if is_bipartite(rest) is None:
            continue
        seen.setdefault(canonical_form(rest, budget), rest)
    return [seen[k] for k in sorted(seen)]


def has_forest_in_decomposition_family(h: Graph, budget=None) -> Optional[RemovalSequence]:
    """First removal (by union size, then lex) leaving a forest."""
    budget = as_budget(budget, "has_forest_in_decomposition_family")
    r = chromatic_number(h, budget)
    if r < 3:
        raise DomainError("forest-in-family check needs chi(h) >= 3")
    for removed in _subsets_by_size(h.n):
        budget.spend()
        sub = h.induced_mask(removed)
        if chromatic_number(sub, budget) > r - 2:
            continue
        rest = h.induced([v for v in range(h.n) if not removed >> v & 1])
        if rest.is_forest():
            return _removal_sequence(h, removed, r - 2, budget)
    return None
