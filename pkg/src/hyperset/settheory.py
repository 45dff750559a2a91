"""Set operations over canonical set-mode hypersets.

All functions take and return :class:`HypersetId` handles in set mode.
Functions without a handle argument use the default store unless one is
passed explicitly.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional, Sequence

from .core import (
    ApgSystem,
    CanonStore,
    HypersetId,
    Mode,
    Ordering,
    children,
    compose,
    default_store,
    intern,
    order,
)
from .core.store import _check

Predicate = Callable[[HypersetId], bool]

DEFAULT_MAX_EXP = 10**6


class NotAPair(ValueError):
    pass


class ExponentiationTooLarge(ValueError):
    pass


def _set(h: HypersetId) -> HypersetId:
    _check(h, Mode.SET)
    return h


def empty(store: Optional[CanonStore] = None) -> HypersetId:
    return compose([], Mode.SET, store or default_store())


def elements(x: HypersetId) -> list[HypersetId]:
    return children(_set(x))


def cardinality(x: HypersetId) -> int:
    return len(elements(x))


def member(z: HypersetId, x: HypersetId) -> bool:
    """``z ∈ x``, by binary search over the canonically sorted elements."""
    _check(z, Mode.SET, x.store)
    elems = elements(x)
    lo, hi = 0, len(elems)
    while lo < hi:
        mid = (lo + hi) // 2
        c = order(elems[mid], z)
        if c is Ordering.EQUAL:
            return True
        if c is Ordering.LESS:
            lo = mid + 1
        else:
            hi = mid
    return False


def tuple_(v: Sequence[HypersetId], store: Optional[CanonStore] = None) -> HypersetId:
    """Unordered tuple ``{v0, ..., vn}``; repeated entries collapse."""
    v = [_set(h) for h in v]
    return compose(v, Mode.SET, store or (v[0].store if v else default_store()))


def separation(x: HypersetId, p: Predicate) -> HypersetId:
    """``{z ∈ x | p(z)}``."""
    return compose([z for z in elements(x) if p(z)], Mode.SET, x.store)


def replace(u: HypersetId, r: Callable[[HypersetId], HypersetId]) -> HypersetId:
    """Image ``{r(x) | x ∈ u}``."""
    return compose([_set(r(x)) for x in elements(u)], Mode.SET, u.store)


def big_union(u: HypersetId) -> HypersetId:
    """``⋃u``: every element of an element of ``u``."""
    return compose([z for x in elements(u) for z in children(x)], Mode.SET, u.store)


def kuratowski_pair(a: HypersetId, b: HypersetId) -> HypersetId:
    """Ordered pair ``{{a}, {a, b}}``."""
    return tuple_([tuple_([a]), tuple_([a, b])])


pair = kuratowski_pair


def decode_pair(p: HypersetId) -> tuple[HypersetId, HypersetId]:
    """Inverse of :func:`kuratowski_pair`; raises :class:`NotAPair`.

    A singleton ``{{a}}`` decodes as ``(a, a)``.
    """
    elems = elements(p)
    if len(elems) == 1:
        inner = children(elems[0])
        if len(inner) == 1:
            return inner[0], inner[0]
    elif len(elems) == 2:
        s, t = (children(e) for e in elems)
        if len(s) == 2 and len(t) == 1:
            s, t = t, s
        if len(s) == 1 and len(t) == 2 and s[0] in t:
            a = s[0]
            b = t[1] if t[0] is a else t[0]
            return a, b
    raise NotAPair(f"{p!r} is not a Kuratowski pair")


def try_decode_pair(p: HypersetId) -> Optional[tuple[HypersetId, HypersetId]]:
    try:
        return decode_pair(p)
    except NotAPair:
        return None


def is_operation(a: HypersetId, b: HypersetId, f: HypersetId) -> bool:
    """Whether ``f`` is the graph of a function from ``a`` to ``b``.

    Checks that every element of ``f`` is a pair, that the elements of ``a``
    are exactly the first components with one second component each, and
    that every second component lies in ``b``.
    """
    pairs = []
    for e in elements(f):
        d = try_decode_pair(e)
        if d is None:
            return False
        pairs.append(d)
    outputs: dict[HypersetId, int] = {}
    for x, y in pairs:
        if not member(x, a) or not member(y, b):
            return False
        outputs[x] = outputs.get(x, 0) + 1
    return all(outputs.get(x) == 1 for x in elements(a))


def exponentiation(a: HypersetId, b: HypersetId, limit: int = DEFAULT_MAX_EXP) -> HypersetId:
    """``a ⇒ b``: the set of all function graphs from ``a`` to ``b``."""
    dom, cod = elements(a), elements(b)
    count = len(cod) ** len(dom)
    if count > limit:
        raise ExponentiationTooLarge(f"{count} functions exceed the limit of {limit}")
    graphs = [
        tuple_([kuratowski_pair(x, y) for x, y in zip(dom, ys)], a.store)
        for ys in itertools.product(cod, repeat=len(dom))
    ]
    return compose(graphs, Mode.SET, a.store)


def successor(x: HypersetId) -> HypersetId:
    """``x ∪ {x}``."""
    return big_union(tuple_([x, tuple_([x])]))


def numeral(n: int, store: Optional[CanonStore] = None) -> HypersetId:
    """Von Neumann numeral ``n``."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    x = empty(store)
    for _ in range(n):
        x = successor(x)
    return x


def quine_atom(store: Optional[CanonStore] = None) -> HypersetId:
    """The unique ``Q = {Q}``."""
    return intern(ApgSystem([[0]], ["q"]), 0, Mode.SET, store)


def is_accessible(x: HypersetId) -> bool:
    """Well-foundedness: no membership cycle is reachable from ``x``."""
    _set(x)
    state: dict[HypersetId, int] = {x: 0}  # 0 = on path, 1 = done
    stack = [(x, iter(children(x)))]
    while stack:
        v, it = stack[-1]
        for c in it:
            s = state.get(c)
            if s == 0:
                return False
            if s is None:
                state[c] = 0
                stack.append((c, iter(children(c))))
                break
        else:
            state[v] = 1
            stack.pop()
    return True


def is_natural_number_set(n: HypersetId) -> bool:
    """Evaluate ``u ∈ n  ⇔  u = ∅ ∨ ∃v ∈ n. u = v ∪ {v}`` for every ``u``.

    Only ``u`` drawn from the elements of ``n``, ``∅`` and the successors of
    elements of ``n`` can make either side true, so checking those suffices.
    """
    elems = elements(n)
    zero = empty(n.store)
    succs = [successor(v) for v in elems]
    for u in {*elems, zero, *succs}:
        lhs = member(u, n)
        rhs = u is zero or any(u is s for s in succs)
        if lhs != rhs:
            return False
    return True
