"""Belousov-Zhabotinsky automaton: species, clusters, mixtures, reactions.

A cell holds a *mixture*: a multiset of *clusters*, each cluster a flat
sequence of species joined by ``(+)``.  Seven reactions rewrite a single
species into a product cluster when the other reactants it needs occur in
distinct neighbor cells.  Three meta rules lift that to clusters and
mixtures:

* a cluster whose parts react is replaced by the products of the parts
  that reacted (the others are dropped);
* an unreactive cluster survives next to reacting ones only while it
  supplies a premise to a reaction firing in a neighbor cell;
* duplicate clusters collapse and the multiset is stored in sorted order.

The retention test needs to know which reactions fire *at the neighbors*,
so :class:`BZRule` asks the engine for the second ring of states
(``reach = 2``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .engine.evolution import TransitionRule
from .engine.lattice import Neighborhood, moore

SPECIES = (
    "Ce3+", "HBrO2", "BrO3-", "H+", "Ce4+", "H2O", "BrCH(COOH)2",
    "Br-", "HCOOH", "CO2", "HOBr", "Br2", "CH2(COOH)2",
)
_SPECIES_SET = frozenset(SPECIES)

Species = str
Cluster = tuple  # tuple[Species, ...], nonempty


class MixtureError(ValueError):
    """Malformed mixture text: unknown species or an empty cluster."""


@dataclass(frozen=True)
class Mixture:
    """Canonical multiset of clusters (sorted by rendered text)."""

    clusters: tuple

    def __post_init__(self):
        cl = tuple(tuple(c) for c in self.clusters)
        for c in cl:
            check_cluster(c)
        object.__setattr__(self, "clusters", tuple(sorted(cl, key=format_cluster)))

    def __str__(self) -> str:
        return format_mixture(self)

    def __iter__(self):
        return iter(self.clusters)

    def __len__(self) -> int:
        return len(self.clusters)

    def species(self) -> frozenset:
        return frozenset(s for c in self.clusters for s in c)

    def dedupe(self) -> "Mixture":
        return Mixture(tuple(dict.fromkeys(self.clusters)))


def check_cluster(c: Sequence[Species]) -> None:
    if not c:
        raise MixtureError("empty cluster")
    for s in c:
        if s not in _SPECIES_SET:
            raise MixtureError(f"unknown species {s!r}")


def format_cluster(c: Cluster) -> str:
    return " (+) ".join(c)


def format_mixture(m: Mixture) -> str:
    return ", ".join(format_cluster(c) for c in m.clusters)


def parse_cluster(text: str) -> Cluster:
    parts = [p.strip() for p in text.replace("⊕", "(+)").split("(+)")]
    if any(not p for p in parts):
        raise MixtureError(f"empty cluster part in {text!r}")
    c = tuple(parts)
    check_cluster(c)
    return c


def parse_mixture(text: str) -> Mixture:
    """``Br2 (+) H2O, HOBr (+) HBrO2`` -> two clusters.  ``⊕`` is accepted too."""
    if not text.strip():
        raise MixtureError("empty mixture")
    return Mixture(tuple(parse_cluster(chunk) for chunk in text.split(",")))


def mixture(*clusters: Iterable[Species] | str) -> Mixture:
    """Convenience constructor: ``mixture("HBrO2", ("Ce4+", "H2O"))``."""
    return Mixture(tuple((c,) if isinstance(c, str) else tuple(c) for c in clusters))


# --------------------------------------------------------------------------
# Reactions


@dataclass(frozen=True)
class ReactionSpec:
    rule_id: int
    reactant: Species
    required_premises: tuple
    product: Cluster


REACTIONS = (
    ReactionSpec(1, "Ce3+", ("HBrO2", "BrO3-", "H+"), ("Ce4+", "HBrO2", "H2O")),
    ReactionSpec(2, "Ce4+", ("BrCH(COOH)2", "H2O"), ("Br-", "Ce3+", "HCOOH", "CO2", "H+")),
    ReactionSpec(3, "HBrO2", (), ("HOBr", "BrO3-", "H+")),
    ReactionSpec(4, "BrO3-", ("Br-", "H+"), ("HOBr", "HBrO2")),
    ReactionSpec(5, "Br-", ("HBrO2", "H+"), ("HOBr",)),
    ReactionSpec(6, "HOBr", ("Br-", "H+"), ("Br2", "H2O")),
    ReactionSpec(7, "Br2", ("CH2(COOH)2",), ("Br-", "H+", "BrCH(COOH)2")),
)
REACTION_FOR = {r.reactant: r for r in REACTIONS}


def premises_available(required: Sequence[Species], neighbors: Sequence[Mixture | None]):
    """Assign every required premise to its own neighbor cell.

    Returns a tuple of neighbor indices aligned with ``required`` (the
    lexicographically first injective assignment in neighbor order), or
    ``None`` when no assignment exists.  A species occurring anywhere in a
    neighbor's mixture counts.
    """
    holders = [
        [i for i, n in enumerate(neighbors) if n is not None and s in n.species()]
        for s in required
    ]
    chosen: list[int] = []

    def search(k: int) -> bool:
        if k == len(required):
            return True
        for i in holders[k]:
            if i not in chosen:
                chosen.append(i)
                if search(k + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if search(0) else None


def fire(s: Species, neighbors: Sequence[Mixture | None]):
    """``(reaction, assignment)`` for ``s`` if its reaction fires, else ``None``."""
    rx = REACTION_FOR.get(s)
    if rx is None:
        return None
    assignment = premises_available(rx.required_premises, neighbors)
    if assignment is None:
        return None
    return rx, assignment


def species_step(s: Species, neighbors: Sequence[Mixture | None]) -> Cluster | None:
    hit = fire(s, neighbors)
    return hit[0].product if hit else None


def cluster_step(c: Cluster, neighbors: Sequence[Mixture | None]) -> list:
    """Product clusters of the parts that react, or ``[c]`` if none does."""
    products = [p for p in (species_step(s, neighbors) for s in c) if p is not None]
    return products if products else [tuple(c)]


# --------------------------------------------------------------------------
# Mixture step and the transition rule


@dataclass(frozen=True)
class BZTrace:
    """Which reactions (1-7) and meta rules (8-10) shaped one cell update."""

    reactions: tuple
    meta: tuple

    @property
    def applied(self) -> str:
        return " ".join(f"BZ-{i}" for i in sorted(set(self.reactions) | set(self.meta)))

    def describe(self) -> str:
        return self.applied or "-"


def _supplied_to_neighbors(
    neighbors: Sequence[Mixture | None],
    second_ring: Sequence,
    nbhd: Neighborhood,
) -> set:
    """Species this cell supplies to reactions firing at its neighbors."""
    supplied: set = set()
    for j, (alpha, n) in enumerate(zip(nbhd, neighbors)):
        if n is None:
            continue
        back = nbhd.index_of(tuple(-a for a in alpha))
        if back is None:
            continue
        ring = second_ring[j]
        for c in n.clusters:
            for s in c:
                hit = fire(s, ring)
                if hit is None:
                    continue
                rx, assignment = hit
                for premise, idx in zip(rx.required_premises, assignment):
                    if idx == back:
                        supplied.add(premise)
    return supplied


def mixture_step(
    m: Mixture,
    neighbors: Sequence[Mixture | None],
    second_ring: Sequence | None = None,
    nbhd: Neighborhood | None = None,
    idempotency: bool = True,
) -> tuple[Mixture, BZTrace | None]:
    reactions: set = set()
    meta: set = set()
    changed, unchanged = [], []
    for c in m.clusters:
        hits = [fire(s, neighbors) for s in c]
        if any(hits):
            reactions.update(h[0].rule_id for h in hits if h)
            if len(c) > 1:
                meta.add(8)
            changed.extend(h[0].product for h in hits if h)
        else:
            unchanged.append(c)
    if not changed:
        return m, None

    kept = []
    if unchanged:
        if second_ring is None:
            raise ValueError("retention of unreactive clusters needs the second ring of neighbor states")
        supplied = _supplied_to_neighbors(neighbors, second_ring, nbhd or moore(2))
        kept = [c for c in unchanged if supplied.intersection(c)]
        if kept:
            meta.add(9)
    out = changed + kept
    if idempotency and len(set(out)) < len(out):
        meta.add(10)
        out = list(dict.fromkeys(out))
    return Mixture(tuple(out)), BZTrace(tuple(sorted(reactions)), tuple(sorted(meta)))


class BZRule(TransitionRule):
    """The seven reactions applied to every part of every cluster at once."""

    name = "bz"
    reach = 2

    def __init__(self, nbhd: Neighborhood | None = None, idempotency: bool = True):
        self.nbhd = nbhd or moore(2)
        self.idempotency = idempotency

    def apply(self, own, neighbors, second_ring=None):
        return mixture_step(own, neighbors, second_ring, self.nbhd, self.idempotency)


def bz_delta(
    own: Mixture,
    neighbors: Sequence[Mixture | None],
    second_ring: Sequence | None = None,
    nbhd: Neighborhood | None = None,
    idempotency: bool = True,
) -> Mixture:
    return mixture_step(own, neighbors, second_ring, nbhd, idempotency)[0]
