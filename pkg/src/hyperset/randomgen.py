"""Seeded random systems and hypersets for property checks."""

from __future__ import annotations

import random

from .core import ApgSystem, CanonStore, HypersetId, Mode, default_store


def random_system(rng: random.Random, max_nodes: int = 30, acyclic: bool = False) -> ApgSystem:
    """Node count uniform in ``1..max_nodes``, edge count uniform in ``0..3n``.

    With ``acyclic`` every edge points to a higher-numbered node, which yields
    hereditarily finite (well-founded) sets.
    """
    n = rng.randint(1, max_nodes)
    m = rng.randint(0, 3 * n)
    kids: list[list[int]] = [[] for _ in range(n)]
    for _ in range(m):
        x = rng.randrange(n)
        if acyclic:
            if x == n - 1:
                continue
            kids[x].append(rng.randrange(x + 1, n))
        else:
            kids[x].append(rng.randrange(n))
    return ApgSystem(kids)


def random_handle(rng: random.Random, store: CanonStore | None = None, mode: Mode = Mode.SET, max_nodes: int = 12) -> HypersetId:
    """A random hyperset; roughly half are well-founded."""
    store = store or default_store()
    sys = random_system(rng, max_nodes, acyclic=rng.random() < 0.5)
    return store.intern(sys, rng.randrange(len(sys)), mode)


def relabel(sys: ApgSystem, rng: random.Random) -> tuple[ApgSystem, list[int]]:
    """Random node permutation plus shuffled edge lists; returns ``perm`` with
    old node ``x`` becoming ``perm[x]``."""
    n = len(sys)
    perm = list(range(n))
    rng.shuffle(perm)
    kids: list[list[int]] = [[] for _ in range(n)]
    for x in range(n):
        ks = [perm[c] for c in sys.children[x]]
        rng.shuffle(ks)
        kids[perm[x]] = ks
    return ApgSystem(kids), perm
