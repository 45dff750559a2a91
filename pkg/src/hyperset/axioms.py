"""Randomized property suites for the set-theoretic contracts.

Each check draws one case from ``rng`` and returns ``None`` on success or a
short failure description. :func:`run_suites` drives all checks from a
single seed, so a seed fixes the full case list.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import afa, bisim, textio
from . import settheory as st
from .core import CanonStore, HypersetId, Mode, default_store
from .randomgen import random_handle, random_system, relabel


@dataclass
class Ops:
    """Operations under test; swapped out to inject faults."""

    tuple_: Callable = st.tuple_
    pair: Callable = st.kuratowski_pair
    max_exp: int = st.DEFAULT_MAX_EXP


def faulty_ops() -> Ops:
    def lossy_tuple(v, store=None):
        v = list(v)
        return st.tuple_(v[:-1] if len(v) > 1 else v, store)

    return Ops(tuple_=lossy_tuple)


@dataclass
class Context:
    rng: random.Random
    store: CanonStore
    ops: Ops
    log: list[str] = field(default_factory=list)

    def handle(self, mode: Mode = Mode.SET) -> HypersetId:
        h = random_handle(self.rng, self.store, mode)
        self.log.append(textio.print_canonical(h))
        return h

    def system(self, max_nodes: int = 30):
        sys = random_system(self.rng, max_nodes)
        self.log.append(repr(sys.children))
        return sys

    def handles(self, k: int) -> list[HypersetId]:
        return [self.handle() for _ in range(k)]


def _probes(ctx: Context, *sets: HypersetId) -> list[HypersetId]:
    out = [z for s in sets for z in st.elements(s)]
    return out + ctx.handles(2) + [st.empty(ctx.store), st.quine_atom(ctx.store)]


def check_bisim_oracle(ctx: Context, max_nodes: int = 50) -> Optional[str]:
    sys = ctx.system(max_nodes)
    parts = {}
    for mode in Mode:
        got = bisim.partition(sys, mode)
        if got != bisim.naive_refine_oracle(sys, mode):
            return f"{mode.value} partition differs from oracle on {sys.children}"
        parts[mode] = got
    if not parts[Mode.MULTISET].refines(parts[Mode.SET]):
        return f"multiset partition does not refine set partition on {sys.children}"
    return None


def check_quotient_minimal(ctx: Context) -> Optional[str]:
    sys = ctx.system()
    for mode in Mode:
        q, _ = bisim.minimize(sys, mode)
        if bisim.partition(q, mode).num_blocks != len(q):
            return f"{mode.value} quotient not minimal for {sys.children}"
    return None


def check_extensionality(ctx: Context) -> Optional[str]:
    a, b = ctx.handles(2)
    if ctx.rng.random() < 0.2:
        b = a
    agree = all(st.member(z, a) == st.member(z, b) for z in st.elements(a) + st.elements(b))
    if (a is b) != agree:
        return f"extensionality fails for {a!r}, {b!r}"
    return None


def check_idempotence(ctx: Context) -> Optional[str]:
    h = ctx.handle(ctx.rng.choice(list(Mode)))
    sys, _ = ctx.store.system_of(h)
    if ctx.store.intern(sys, 0, h.mode) is not h:
        return f"re-interning {h!r} changed the handle"
    return None


def check_tupling(ctx: Context) -> Optional[str]:
    v = ctx.handles(ctx.rng.randint(0, 4))
    if v and ctx.rng.random() < 0.3:
        v.append(v[0])
    t = ctx.ops.tuple_(v, ctx.store)
    for z in _probes(ctx, t) + v:
        if st.member(z, t) != any(z is w for w in v):
            return f"tupling fails for {v!r}"
    return None


def _predicates(store: CanonStore):
    q = st.quine_atom(store)
    return [
        ("accessible", st.is_accessible),
        ("even cardinality", lambda z: st.cardinality(z) % 2 == 0),
        ("contains Q", lambda z: st.member(q, z)),
        ("always", lambda z: True),
        ("never", lambda z: False),
    ]


def check_separation(ctx: Context) -> Optional[str]:
    x = ctx.handle()
    name, p = ctx.rng.choice(_predicates(ctx.store))
    u = st.separation(x, p)
    for z in _probes(ctx, x, u):
        if st.member(z, u) != (st.member(z, x) and p(z)):
            return f"separation by {name} fails on {x!r}"
    return None


def _maps(ctx: Context):
    c = ctx.handle()
    return [
        ("successor", st.successor),
        ("singleton", lambda x: ctx.ops.tuple_([x], ctx.store)),
        ("constant", lambda x: c),
        ("union", st.big_union),
        ("identity", lambda x: x),
    ]


def check_replace(ctx: Context) -> Optional[str]:
    u = ctx.handle()
    name, r = ctx.rng.choice(_maps(ctx))
    v = st.replace(u, r)
    images = [r(x) for x in st.elements(u)]
    for z in _probes(ctx, u, v) + images:
        if st.member(z, v) != any(z is w for w in images):
            return f"replace by {name} fails on {u!r}"
    return None


def check_big_union(ctx: Context) -> Optional[str]:
    u = ctx.handle()
    v = st.big_union(u)
    for z in _probes(ctx, u, v):
        if st.member(z, v) != any(st.member(z, x) for x in st.elements(u)):
            return f"union fails on {u!r}"
    return None


def check_pairing(ctx: Context) -> Optional[str]:
    q = st.quine_atom(ctx.store)
    pool = ctx.handles(2) + [q, st.empty(ctx.store)]
    a, b, a2, b2 = (ctx.rng.choice(pool) for _ in range(4))
    p, p2 = ctx.ops.pair(a, b), ctx.ops.pair(a2, b2)
    if (p is p2) != (a is a2 and b is b2):
        return f"pairing not injective on {a!r}, {b!r} / {a2!r}, {b2!r}"
    if st.decode_pair(p) != (a, b):
        return f"decode_pair does not invert pairing on {a!r}, {b!r}"
    return None


def _small_set(ctx: Context, k: int) -> HypersetId:
    return ctx.ops.tuple_(ctx.handles(k), ctx.store)


def check_exponentiation(ctx: Context) -> Optional[str]:
    a = _small_set(ctx, ctx.rng.randint(0, 3))
    b = _small_set(ctx, ctx.rng.randint(0, 3))
    e = st.exponentiation(a, b, ctx.ops.max_exp)
    if st.cardinality(e) != st.cardinality(b) ** st.cardinality(a):
        return f"|a=>b| != |b|^|a| for {a!r}, {b!r}"
    dom, cod = st.elements(a), st.elements(b)
    pts = dom + cod + ctx.handles(1)
    candidates = list(st.elements(e))
    for _ in range(4):
        pairs = [
            ctx.ops.pair(ctx.rng.choice(pts), ctx.rng.choice(pts)) for _ in range(ctx.rng.randint(0, 4))
        ]
        if ctx.rng.random() < 0.2:
            pairs.append(ctx.handle())
        candidates.append(ctx.ops.tuple_(pairs, ctx.store))
    for f in candidates:
        if st.member(f, e) != st.is_operation(a, b, f):
            return f"exponentiation membership fails for f={f!r}"
    return None


def check_afa(ctx: Context, max_nodes: int = 15) -> Optional[str]:
    sys = random_system(ctx.rng, max_nodes)
    ctx.log.append(repr(sys.children))
    naming = [st.numeral(i, ctx.store) for i in range(len(sys))]
    g = afa.encode_graph(sys, naming)
    d = afa.afa_decorate(g)
    if not afa.verify_decoration(g, d):
        return f"decoration fails verification on {sys.children}"
    direct = afa.decorate(sys, Mode.SET, ctx.store)
    for x in range(len(sys)):
        if d[naming[x]] is not direct[x]:
            return f"afa_decorate disagrees with decorate at node {x} of {sys.children}"
    moved, perm = relabel(sys, ctx.rng)
    again = afa.decorate(moved, Mode.SET, ctx.store)
    for x in range(len(sys)):
        if textio.print_canonical(again[perm[x]]) != textio.print_canonical(direct[x]):
            return f"decoration not invariant under relabeling of {sys.children}"
    return None


def check_multiset_decoration(ctx: Context) -> Optional[str]:
    sys = ctx.system(15)
    d = afa.decorate(sys, Mode.MULTISET, ctx.store)
    if not afa.verify_multiset_decoration(sys, d):
        return f"multiset decoration miscounts on {sys.children}"
    return None


def check_roundtrip(ctx: Context) -> Optional[str]:
    h = ctx.handle(ctx.rng.choice(list(Mode)))
    text = textio.print_canonical(h)
    if textio.parse_hyperset(text, mode=h.mode, store=ctx.store) is not h:
        return f"print/parse round trip changed {h!r}"
    return None


SUITES: list[tuple[str, Callable[[Context], Optional[str]]]] = [
    ("bisimulation oracle", check_bisim_oracle),
    ("quotient minimality", check_quotient_minimal),
    ("extensionality", check_extensionality),
    ("intern idempotence", check_idempotence),
    ("tupling", check_tupling),
    ("separation", check_separation),
    ("replacement", check_replace),
    ("union", check_big_union),
    ("pairing", check_pairing),
    ("exponentiation", check_exponentiation),
    ("anti-foundation", check_afa),
    ("multiset anti-foundation", check_multiset_decoration),
    ("print round trip", check_roundtrip),
]


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: int
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def run_suite(
    check: Callable[[Context], Optional[str]],
    cases: int,
    seed: int,
    store: Optional[CanonStore] = None,
    ops: Optional[Ops] = None,
    name: str = "",
) -> tuple[SuiteResult, list[str]]:
    ctx = Context(random.Random(seed), store or default_store(), ops or Ops())
    failures, first = 0, None
    for _ in range(cases):
        try:
            msg = check(ctx)
        except Exception as e:  # a crashing case is a failed case
            msg = f"{type(e).__name__}: {e}"
        if msg is not None:
            failures += 1
            first = first or msg
    return SuiteResult(name or check.__name__, cases, failures, first), ctx.log


def run_suites(seed: int, cases: int, ops: Optional[Ops] = None, store: Optional[CanonStore] = None):
    """Run every suite; returns the results and a digest of the generated cases."""
    digest = hashlib.sha256()
    results = []
    for i, (name, check) in enumerate(SUITES):
        res, log = run_suite(check, cases, seed * 1000 + i, store, ops, name)
        results.append(res)
        for entry in log:
            digest.update(entry.encode())
    return results, digest.hexdigest()
