"""Decorations: solving graphs for the unique hypersets they picture."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional, Sequence, Union

from .core import ApgSystem, CanonStore, HypersetId, Mode, children, default_store, intern_all
from .core.store import _check
from .settheory import NotAPair, decode_pair, elements, empty, kuratowski_pair, tuple_


class NotAGraph(ValueError):
    pass


class NonInjectiveNaming(ValueError):
    pass


@dataclass
class Decoration:
    """Assignment of hypersets to nodes; unassigned nodes denote ``default``."""

    assignment: dict[Hashable, HypersetId]
    default: HypersetId
    mode: Mode = Mode.SET

    def __getitem__(self, node) -> HypersetId:
        return self.assignment.get(node, self.default)

    def __len__(self):
        return len(self.assignment)


@dataclass
class DecodedGraph:
    """A graph read back from a hyperset of pairs.

    ``nodes[i]`` is the hyperset naming node ``i`` of ``system``.
    """

    system: ApgSystem
    nodes: list[HypersetId]
    index: dict[HypersetId, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {h: i for i, h in enumerate(self.nodes)}


def decorate(sys: ApgSystem, mode: Mode = Mode.SET, store: Optional[CanonStore] = None) -> Decoration:
    """The unique decoration of ``sys``: node ``x`` gets the hyperset it denotes."""
    store = store or default_store()
    handles = intern_all(sys, mode, store)
    return Decoration(dict(enumerate(handles)), store.compose([], mode), mode)


def encode_graph(sys: ApgSystem, node_sets: Union[Sequence[HypersetId], Mapping[int, HypersetId]]) -> HypersetId:
    """The set of pairs ``⟨name(x), name(y)⟩`` over the edges ``x -> y``.

    ``node_sets`` must name distinct nodes by distinct hypersets.
    """
    names = [node_sets[x] for x in range(len(sys))]
    seen: dict[HypersetId, int] = {}
    for x, h in enumerate(names):
        _check(h, Mode.SET)
        if h in seen:
            raise NonInjectiveNaming(f"nodes {seen[h]} and {x} have the same name")
        seen[h] = x
    store = names[0].store if names else default_store()
    return tuple_([kuratowski_pair(names[x], names[y]) for x, y in sys.edges()], store)


def decode_graph(g: HypersetId) -> DecodedGraph:
    """Read ``g`` as a graph; raises :class:`NotAGraph` if an element is not a pair."""
    pairs = []
    for e in elements(g):
        try:
            pairs.append(decode_pair(e))
        except NotAPair:
            raise NotAGraph(f"element {e!r} is not a pair") from None
    index: dict[HypersetId, int] = {}
    for x, y in pairs:
        index.setdefault(x, len(index))
        index.setdefault(y, len(index))
    nodes = sorted(index)
    index = {h: i for i, h in enumerate(nodes)}
    sys = ApgSystem([[] for _ in nodes])
    for x, y in pairs:
        sys.children[index[x]].append(index[y])
    return DecodedGraph(sys, nodes, index)


def afa_decorate(g: HypersetId) -> Decoration:
    """Decoration of the graph ``g``, keyed by the hypersets naming its nodes."""
    dg = decode_graph(g)
    dec = decorate(dg.system, Mode.SET, g.store)
    return Decoration({h: dec[i] for i, h in enumerate(dg.nodes)}, empty(g.store))


def verify_decoration(g: HypersetId, d: Decoration) -> bool:
    """Check ``z ∈ d(x)  ⇔  ∃y. ⟨x, y⟩ ∈ g ∧ d(y) = z`` for all nodes ``x``.

    Nodes that are not edge sources must be sent to the empty set, and so must
    any extra node the decoration assigns.
    """
    dg = decode_graph(g)
    succ: dict[HypersetId, list[HypersetId]] = {}
    for x, y in ((dg.nodes[s], dg.nodes[t]) for s, t in dg.system.edges()):
        succ.setdefault(x, []).append(y)
    for x in {*dg.nodes, *d.assignment}:
        targets = [d[y] for y in succ.get(x, [])]
        got = elements(d[x])
        for z in got:
            if not any(z is t for t in targets):
                return False
        for t in targets:
            if not any(t is z for z in got):
                return False
    return True


def verify_multiset_decoration(sys: ApgSystem, d: Decoration) -> bool:
    """Counting form: the multiplicity of ``z`` in ``d(x)`` equals the number
    of edges ``x -> y`` with ``d(y) = z``."""
    for x, kids in enumerate(sys.children):
        if Counter(children(d[x])) != Counter(d[y] for y in kids):
            return False
    return True
