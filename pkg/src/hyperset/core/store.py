"""The canonical store: interned, bisimulation-minimal hypersets.

Every stored node is identified by the canonical serialization of the
minimal graph reachable from it (its *form*). Distinct handles therefore
denote distinct hypersets, and equality is handle identity.
"""

from __future__ import annotations

import enum
import threading
from collections import Counter, deque
from typing import Iterable, Optional, Sequence

from .. import bisim
from .graph import ApgSystem, Mode, reachable_restrict

Form = tuple[tuple[int, ...], ...]


class ModeMismatch(ValueError):
    pass


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class HypersetId:
    """Handle to an interned hyperset. Handles are unique per hyperset, so
    ``a is b`` (and ``a == b``) is extensional equality."""

    __slots__ = ("store", "mode", "index")

    def __init__(self, store: "CanonStore", mode: Mode, index: int):
        self.store = store
        self.mode = mode
        self.index = index

    def __repr__(self):
        return f"<HypersetId {self.mode.value}#{self.index} {self.store._table(self.mode).forms[self.index]}>"

    def __lt__(self, other: "HypersetId") -> bool:
        return order(self, other) is Ordering.LESS

    @property
    def children(self) -> list["HypersetId"]:
        return children(self)

    @property
    def form(self) -> Form:
        return self.store._table(self.mode).forms[self.index]


def canonical_form(kids: Sequence[Sequence[int]], root: int, mode: Mode) -> Form:
    """Canonical serialization of the minimal graph reachable from ``root``.

    ``kids`` must describe a bisimulation-minimal graph for ``mode`` (set-mode
    child lists duplicate free). Nodes are ranked by signature refinement
    seeded with out-degree and a root marker; minimal graphs are rigid, so
    the ranking is discrete. Nodes are then numbered breadth first from the
    root, visiting children by rank.
    """
    local = {root: 0}
    nodes = [root]
    i = 0
    while i < len(nodes):
        for c in kids[nodes[i]]:
            if c not in local:
                local[c] = len(nodes)
                nodes.append(c)
        i += 1
    succ = [[local[c] for c in kids[v]] for v in nodes]
    n = len(nodes)

    rank = _dense_rank([(len(succ[v]), v == 0) for v in range(n)])
    nblocks = max(rank) + 1
    while True:
        sigs = [(rank[v], tuple(sorted(rank[c] for c in succ[v]))) for v in range(n)]
        rank = _dense_rank(sigs)
        k = max(rank) + 1
        if k == nblocks:
            break
        nblocks = k
    if nblocks != n:
        raise ValueError("graph is not bisimulation-minimal")

    number = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for c in sorted(set(succ[v]), key=rank.__getitem__):
            if c not in number:
                number[c] = len(number)
                queue.append(c)
    by_number = sorted(range(n), key=number.__getitem__)
    return tuple(tuple(sorted(number[c] for c in succ[v])) for v in by_number)


def _dense_rank(keys: list) -> list[int]:
    ids = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [ids[k] for k in keys]


def _order_key(form: Form):
    return (len(form), form)


def _tarjan_sccs(kids: Sequence[Sequence[int]]) -> list[list[int]]:
    """Strongly connected components, children before parents."""
    n = len(kids)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for start in range(n):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, i = work[-1]
            if i < len(kids[v]):
                work[-1] = (v, i + 1)
                w = kids[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    out.append(comp)
    return out


class _Table:
    def __init__(self, store: "CanonStore", mode: Mode):
        self.store = store
        self.mode = mode
        self.forms: list[Form] = []
        self.keys: list = []
        self.children: list[tuple[int, ...]] = []
        self.handles: list[HypersetId] = []
        self.by_form: dict[Form, int] = {}
        self.by_sig: dict = {}

    def signature(self, kids: Iterable[int]):
        if self.mode is Mode.SET:
            return frozenset(kids)
        return frozenset(Counter(kids).items())

    def allocate(self, form: Form) -> int:
        idx = len(self.forms)
        self.forms.append(form)
        self.keys.append(_order_key(form))
        self.children.append(())
        self.handles.append(HypersetId(self.store, self.mode, idx))
        self.by_form[form] = idx
        return idx

    def set_children(self, idx: int, kids: Iterable[int]) -> None:
        kids = list(kids)
        if self.mode is Mode.SET:
            kids = set(kids)
        self.children[idx] = tuple(sorted(kids, key=self.keys.__getitem__))
        self.by_sig[self.signature(kids)] = idx


class CanonStore:
    """Thread-safe interning tables, one per mode."""

    def __init__(self):
        self._lock = threading.RLock()
        self._tables = {m: _Table(self, m) for m in Mode}

    def _table(self, mode: Mode) -> _Table:
        return self._tables[mode]

    def size(self, mode: Mode) -> int:
        return len(self._tables[mode].forms)

    def intern_all(self, sys: ApgSystem, mode: Mode = Mode.SET) -> list[HypersetId]:
        """Intern every node of ``sys``; returns one handle per node."""
        quotient, class_of = bisim.minimize(sys, mode)
        kids = quotient.children
        t = self._tables[mode]
        resolved: list[Optional[int]] = [None] * len(kids)
        with self._lock:
            for comp in _tarjan_sccs(kids):
                v = comp[0]
                if len(comp) == 1 and v not in kids[v]:
                    hit = t.by_sig.get(t.signature(resolved[c] for c in kids[v]))
                    if hit is not None:
                        resolved[v] = hit
                        continue
                fresh = []
                for v in comp:
                    form = canonical_form(kids, v, mode)
                    idx = t.by_form.get(form)
                    if idx is None:
                        idx = t.allocate(form)
                        fresh.append(v)
                    resolved[v] = idx
                for v in fresh:
                    t.set_children(resolved[v], (resolved[c] for c in kids[v]))
        return [t.handles[resolved[class_of[x]]] for x in range(len(sys))]

    def intern(self, sys: ApgSystem, root: int, mode: Mode = Mode.SET) -> HypersetId:
        sub, r = reachable_restrict(sys, root)
        return self.intern_all(sub, mode)[r]

    def compose(self, elems: Sequence[HypersetId], mode: Mode = Mode.SET) -> HypersetId:
        t = self._tables[mode]
        for e in elems:
            _check(e, mode, self)
        idxs = [e.index for e in elems]
        hit = t.by_sig.get(t.signature(idxs))
        if hit is not None:
            return t.handles[hit]
        # no existing node has exactly these children; the new node is fresh and
        # its reachable graph is the minimal store graph below it plus itself
        with self._lock:
            hit = t.by_sig.get(t.signature(idxs))
            if hit is not None:
                return t.handles[hit]
            local = {}
            order_ = []
            queue = deque(idxs)
            while queue:
                i = queue.popleft()
                if i in local:
                    continue
                local[i] = len(order_) + 1
                order_.append(i)
                queue.extend(t.children[i])
            kids = [[local[i] for i in idxs]] + [[local[c] for c in t.children[i]] for i in order_]
            if mode is Mode.SET:
                kids[0] = sorted(set(kids[0]))
            idx = t.allocate(canonical_form(kids, 0, mode))
            t.set_children(idx, idxs)
            return t.handles[idx]

    def system_of(self, h: HypersetId) -> tuple[ApgSystem, list[HypersetId]]:
        """The stored graph reachable from ``h``, root first, breadth first in
        canonical child order. Also returns the handle of each node."""
        _check(h, h.mode, self)
        t = self._tables[h.mode]
        number = {h.index: 0}
        order_ = [h.index]
        i = 0
        while i < len(order_):
            for c in t.children[order_[i]]:
                if c not in number:
                    number[c] = len(order_)
                    order_.append(c)
            i += 1
        kids = [[number[c] for c in t.children[v]] for v in order_]
        return ApgSystem(kids), [t.handles[v] for v in order_]


def _check(h: HypersetId, mode: Mode, store: Optional[CanonStore] = None) -> None:
    if not isinstance(h, HypersetId):
        raise TypeError(f"expected HypersetId, got {type(h).__name__}")
    if h.mode is not mode:
        raise ModeMismatch(f"expected {mode.value} handle, got {h.mode.value}")
    if store is not None and h.store is not store:
        raise ValueError("handle belongs to a different store")


_default = CanonStore()


def default_store() -> CanonStore:
    return _default


def intern(sys: ApgSystem, root: int, mode: Mode = Mode.SET, store: Optional[CanonStore] = None) -> HypersetId:
    """Canonical handle of the hyperset denoted by ``root`` in ``sys``."""
    return (store or _default).intern(sys, root, mode)


def intern_all(sys: ApgSystem, mode: Mode = Mode.SET, store: Optional[CanonStore] = None) -> list[HypersetId]:
    return (store or _default).intern_all(sys, mode)


def children(h: HypersetId) -> list[HypersetId]:
    """Elements of ``h`` in canonical order (with multiplicity in multiset mode)."""
    t = h.store._table(h.mode)
    return [t.handles[c] for c in t.children[h.index]]


def compose(elems: Sequence[HypersetId], mode: Optional[Mode] = None, store: Optional[CanonStore] = None) -> HypersetId:
    """The hyperset whose elements are exactly ``elems``."""
    elems = list(elems)
    if mode is None:
        mode = elems[0].mode if elems else Mode.SET
    if store is None:
        store = elems[0].store if elems else _default
    return store.compose(elems, mode)


def equal(a: HypersetId, b: HypersetId) -> bool:
    _check(b, a.mode, a.store)
    return a is b


def order(a: HypersetId, b: HypersetId) -> Ordering:
    """Total order on hypersets of one mode, derived from canonical forms only."""
    _check(b, a.mode, a.store)
    if a is b:
        return Ordering.EQUAL
    keys = a.store._table(a.mode).keys
    return Ordering.LESS if keys[a.index] < keys[b.index] else Ordering.GREATER


def sort_key(h: HypersetId):
    return h.store._table(h.mode).keys[h.index]
