"""Bisimulation: coarsest stable partitions, quotients and a naive oracle.

Set mode uses Paige-Tarjan relational coarsest partition ("process the
smaller half" with per-compound-block edge counts). Multiset mode is exact
lumpability of the edge-count matrix, refined Hopcroft style: a split block
re-enters the worklist with all pieces but the largest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core.graph import ApgSystem, Mode


@dataclass(frozen=True)
class Partition:
    """Block assignment over ``0..n-1``, numbered by first occurrence."""

    block: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        ids: dict = {}
        return cls(tuple(ids.setdefault(lab, len(ids)) for lab in labels))

    @property
    def num_blocks(self) -> int:
        return max(self.block, default=-1) + 1

    @property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.block):
            out[b].append(x)
        return out

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` lies inside a block of ``other``."""
        seen: dict[int, int] = {}
        for mine, theirs in zip(self.block, other.block):
            if seen.setdefault(mine, theirs) != theirs:
                return False
        return True


class _Refinable:
    """Refinable partition: blocks are contiguous slices of ``elems``.

    ``mark`` moves an element into the marked prefix of its block; ``split``
    turns every partially marked block's prefix into a new block.
    """

    def __init__(self, n: int):
        self.elems = list(range(n))
        self.loc = list(range(n))
        self.blk = [0] * n
        self.first = [0]
        self.end = [n]
        self.mid = [0]
        self.touched: list[int] = []

    def size(self, b: int) -> int:
        return self.end[b] - self.first[b]

    def members(self, b: int) -> list[int]:
        return self.elems[self.first[b]:self.end[b]]

    def mark(self, x: int) -> None:
        b = self.blk[x]
        i = self.loc[x]
        m = self.mid[b]
        if i < m:
            return
        if m == self.first[b]:
            self.touched.append(b)
        elems, loc = self.elems, self.loc
        y = elems[m]
        elems[m], elems[i] = x, y
        loc[x], loc[y] = m, i
        self.mid[b] = m + 1

    def mark_all(self, xs) -> None:
        blk, loc, mid, first, elems, touched = self.blk, self.loc, self.mid, self.first, self.elems, self.touched
        for x in xs:
            b = blk[x]
            i = loc[x]
            m = mid[b]
            if i < m:
                continue
            if m == first[b]:
                touched.append(b)
            y = elems[m]
            elems[m] = x
            elems[i] = y
            loc[x] = m
            loc[y] = i
            mid[b] = m + 1

    def split(self) -> list[tuple[int, int]]:
        out = []
        first, end, mid, blk, elems = self.first, self.end, self.mid, self.blk, self.elems
        for b in self.touched:
            m = mid[b]
            if m == end[b]:
                mid[b] = first[b]
                continue
            nb = len(first)
            first.append(first[b])
            end.append(m)
            mid.append(first[b])
            for i in range(first[b], m):
                blk[elems[i]] = nb
            first[b] = m
            mid[b] = m
            out.append((b, nb))
        self.touched = []
        return out


def _predecessors(sys: ApgSystem):
    kids = sys.children
    src = [x for x, ks in enumerate(kids) for _ in ks]
    pred: list[list[int]] = [[] for _ in range(len(kids))]
    e = 0
    for ks in kids:
        for y in ks:
            pred[y].append(e)
            e += 1
    return src, pred


def _paige_tarjan(sys: ApgSystem) -> list[int]:
    # Refinable partition kept in flat local arrays (see _Refinable); the
    # loop below runs once per final block, so call overhead matters.
    n = len(sys)
    src, pred = _predecessors(sys)
    # count records: cnt[rec_of_edge[e]] = edges from src[e] into the compound block holding dst[e]
    cnt = [len(k) for k in sys.children]
    rec_of_edge = list(src)

    live = [x for x in range(n) if cnt[x]]
    dead = [x for x in range(n) if not cnt[x]]
    elems = live + dead
    loc = [0] * n
    for i, x in enumerate(elems):
        loc[x] = i
    if live and dead:
        blk = [0 if cnt[x] else 1 for x in range(n)]
        first, end, mid = [0, len(live)], [len(live), n], [0, len(live)]
    else:
        blk = [0] * n
        first, end, mid = [0], [n], [0]

    # compound blocks as lists with swap-remove; set iteration degrades after deletions
    nb0 = len(first)
    comp_of = [0] * nb0
    pos = list(range(nb0))
    comps: list[list[int]] = [list(range(nb0))]
    stack = [0] if nb0 > 1 else []

    def mark_split(xs):
        touched = []
        for x in xs:
            b = blk[x]
            i = loc[x]
            m = mid[b]
            if i < m:
                continue
            if m == first[b]:
                touched.append(b)
            y = elems[m]
            elems[m] = x
            elems[i] = y
            loc[x] = m
            loc[y] = i
            mid[b] = m + 1
        for b in touched:
            m = mid[b]
            f = first[b]
            if m == end[b]:
                mid[b] = f
                continue
            nb = len(first)
            first.append(f)
            end.append(m)
            mid.append(f)
            for i in range(f, m):
                blk[elems[i]] = nb
            first[b] = m
            mid[b] = m
            c = comp_of[b]
            comp_of.append(c)
            members = comps[c]
            pos.append(len(members))
            members.append(nb)
            if len(members) == 2:
                stack.append(c)

    while stack:
        S = stack[-1]
        blocks = comps[S]
        b1, b2 = blocks[-1], blocks[-2]
        B = b1 if end[b1] - first[b1] <= end[b2] - first[b2] else b2
        i = pos[B]
        last = blocks.pop()
        if last != B:
            blocks[i] = last
            pos[last] = i
        if len(blocks) < 2:
            stack.pop()
        comp_of[B] = len(comps)
        pos[B] = 0
        comps.append([B])

        edges_in = [e for y in elems[first[B]:end[B]] for e in pred[y]]
        count_b: dict[int, int] = {}
        rec_s: dict[int, int] = {}
        for e in edges_in:
            x = src[e]
            if x in count_b:
                count_b[x] += 1
            else:
                count_b[x] = 1
                # every edge from x into B shares the record count(x, S)
                rec_s[x] = rec_of_edge[e]

        mark_split(count_b)
        mark_split([x for x, k in count_b.items() if k == cnt[rec_s[x]]])

        new_rec = {}
        for x, k in count_b.items():
            cnt[rec_s[x]] -= k
            new_rec[x] = len(cnt)
            cnt.append(k)
        for e in edges_in:
            rec_of_edge[e] = new_rec[src[e]]
    return blk


def _lump(sys: ApgSystem) -> list[int]:
    n = len(sys)
    src, pred = _predecessors(sys)
    P = _Refinable(n)
    work = [0] if n else []
    pending = {0}
    while work:
        S = work.pop()
        pending.discard(S)
        weight: dict[int, int] = {}
        for y in P.members(S):
            for e in pred[y]:
                x = src[e]
                weight[x] = weight.get(x, 0) + 1
        by_block: dict[int, dict[int, list[int]]] = {}
        for x, w in weight.items():
            by_block.setdefault(P.blk[x], {}).setdefault(w, []).append(x)
        for D, groups in by_block.items():
            touched = sum(len(g) for g in groups.values())
            if len(groups) == 1 and touched == P.size(D):
                continue
            pieces = [D]
            for w in sorted(groups):
                P.mark_all(groups[w])
                pieces.extend(nb for _, nb in P.split())
            if D in pending:
                fresh = pieces[1:]
            else:
                largest = max(pieces, key=P.size)
                fresh = [b for b in pieces if b != largest]
            for b in fresh:
                work.append(b)
                pending.add(b)
    return P.blk


def partition(sys: ApgSystem, mode: Mode = Mode.SET) -> Partition:
    """Coarsest bisimulation partition of ``sys`` under ``mode``."""
    blk = _paige_tarjan(sys) if mode is Mode.SET else _lump(sys)
    return Partition.from_labels(blk)


def minimize(sys: ApgSystem, mode: Mode = Mode.SET) -> tuple[ApgSystem, list[int]]:
    """Quotient of ``sys`` by bisimilarity.

    Returns the block graph and ``class_of``, mapping each node to its quotient
    node. Quotient nodes are numbered by first occurrence; child lists are
    sorted, deduplicated in set mode and kept with multiplicity otherwise.
    """
    class_of = list(partition(sys, mode).block)
    nblocks = max(class_of, default=-1) + 1
    kids: list[list[int]] = [None] * nblocks  # type: ignore[list-item]
    labels = [None] * nblocks
    for x, b in enumerate(class_of):
        if kids[b] is None:
            mapped = [class_of[c] for c in sys.children[x]]
            kids[b] = sorted(set(mapped)) if mode is Mode.SET else sorted(mapped)
            labels[b] = sys.labels[x]
    return ApgSystem.unchecked(kids, labels), class_of


def bisimilar(sys_a: ApgSystem, x: int, sys_b: ApgSystem, y: int, mode: Mode = Mode.SET) -> bool:
    sys_a.check_node(x)
    sys_b.check_node(y)
    union, off = ApgSystem.disjoint_union(sys_a, sys_b)
    block = partition(union, mode).block
    return block[x] == block[y + off]


def naive_refine_oracle(sys: ApgSystem, mode: Mode = Mode.SET) -> Partition:
    """Reference partition by global signature recomputation.

    Deliberately slow and hash free: each round compares every node's
    signature against one representative per new block.
    """
    n = len(sys)
    block = [0] * n
    nblocks = 1 if n else 0
    while True:
        sigs = []
        for x in range(n):
            child_blocks = [block[c] for c in sys.children[x]]
            if mode is Mode.SET:
                child_blocks = sorted(set(child_blocks))
            else:
                child_blocks = sorted(child_blocks)
            sigs.append((block[x], child_blocks))
        reps: list[int] = []
        new = [0] * n
        for x in range(n):
            for k, r in enumerate(reps):
                if sigs[r] == sigs[x]:
                    new[x] = k
                    break
            else:
                new[x] = len(reps)
                reps.append(x)
        block = new
        if len(reps) == nblocks:
            return Partition(tuple(block))
        nblocks = len(reps)


def multiset_signature(kids) -> tuple[tuple[int, int], ...]:
    """Sorted ``(child, multiplicity)`` pairs."""
    return tuple(sorted(Counter(kids).items()))
