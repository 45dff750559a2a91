"""Finite systems of set equations: directed multigraphs with optional node labels."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class Mode(enum.Enum):
    """Equality regime for hypersets.

    ``SET`` collapses duplicate children (extensional sets); ``MULTISET`` keeps
    multiplicities (coiterative multisets).
    """

    SET = "set"
    MULTISET = "multiset"


class DuplicateDefinition(ValueError):
    pass


@dataclass
class ApgSystem:
    """A graph of set equations.

    ``children[i]`` is the ordered edge list of node ``i``. Duplicate entries
    are allowed; they only matter in multiset mode.
    """

    children: list[list[int]] = field(default_factory=list)
    labels: list[Optional[str]] = field(default_factory=list)

    def __post_init__(self):
        if len(self.labels) < len(self.children):
            self.labels.extend([None] * (len(self.children) - len(self.labels)))
        n = len(self.children)
        for src, kids in enumerate(self.children):
            for c in kids:
                if not 0 <= c < n:
                    raise IndexError(f"node {src} has invalid child {c}")

    @classmethod
    def unchecked(cls, children: list[list[int]], labels: list[Optional[str]]) -> "ApgSystem":
        """Construct without validating child ids."""
        sys = cls.__new__(cls)
        sys.children = children
        sys.labels = labels
        return sys

    def __len__(self) -> int:
        return len(self.children)

    @property
    def num_edges(self) -> int:
        return sum(len(k) for k in self.children)

    def add_node(self, label: Optional[str] = None, children: Iterable[int] = ()) -> int:
        self.children.append(list(children))
        self.labels.append(label)
        return len(self.children) - 1

    def add_edge(self, src: int, dst: int) -> None:
        self.check_node(src)
        self.check_node(dst)
        self.children[src].append(dst)

    def check_node(self, x: int) -> None:
        if not isinstance(x, int) or not 0 <= x < len(self.children):
            raise IndexError(f"invalid node {x!r} for system of {len(self)} nodes")

    def edges(self) -> list[tuple[int, int]]:
        return [(s, d) for s, kids in enumerate(self.children) for d in kids]

    def index(self, name: str) -> int:
        """Node id of the node labelled ``name``."""
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(name) from None

    def copy(self) -> "ApgSystem":
        return ApgSystem([list(k) for k in self.children], list(self.labels))

    @classmethod
    def disjoint_union(cls, a: "ApgSystem", b: "ApgSystem") -> tuple["ApgSystem", int]:
        """Return the union and the offset added to ``b``'s node ids."""
        off = len(a)
        kids = [list(k) for k in a.children] + [[c + off for c in k] for k in b.children]
        return cls(kids, list(a.labels) + list(b.labels)), off


def from_equations(defs: Sequence[tuple[str, Sequence[str]]]) -> ApgSystem:
    """Build a system from ``(name, child names)`` pairs.

    Names are numbered in order of first appearance. A name that is used but
    never defined becomes a childless node.
    """
    ids: dict[str, int] = {}
    sys = ApgSystem()

    def node(name: str) -> int:
        if name not in ids:
            ids[name] = sys.add_node(name)
        return ids[name]

    defined: set[str] = set()
    for name, kids in defs:
        if name in defined:
            raise DuplicateDefinition(f"{name!r} defined twice")
        defined.add(name)
        x = node(name)
        sys.children[x] = [node(k) for k in kids]
    return sys


def reachable_restrict(sys: ApgSystem, root: int) -> tuple[ApgSystem, int]:
    """Subsystem induced by the nodes reachable from ``root``.

    Nodes are renumbered in breadth-first order, so the root becomes node 0.
    Edge order (and multiplicity) within each list is preserved.
    """
    sys.check_node(root)
    new_id = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for c in sys.children[x]:
            if c not in new_id:
                new_id[c] = len(order)
                order.append(c)
                queue.append(c)
    kids = [[new_id[c] for c in sys.children[x]] for x in order]
    return ApgSystem(kids, [sys.labels[x] for x in order]), 0
