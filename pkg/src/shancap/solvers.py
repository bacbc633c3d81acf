"""Exact and heuristic solvers: independence number, cliques, clique covers.

The maximum-independent-set search is a bitmask branch-and-bound in the
style of Tomita's MCS: every node greedily covers the candidate set by
cliques, candidates are branched in decreasing cover-class order, and a
branch is cut as soon as the class index cannot beat the incumbent.
Budgets degrade the search to "incumbent + bound" instead of failing.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .graphs import Graph, complement

DEFAULT_CLIQUE_CAP = 2000

_ORDERINGS = ("degree", "degeneracy", "label")


class SolverError(ValueError):
    pass


class CliqueCapExceeded(SolverError):
    """Maximal-clique enumeration hit the cap; callers working with
    triangle-free graphs can fall back to edge constraints instead."""


@dataclass(frozen=True)
class SolverConfig:
    time_budget: float = 60.0
    node_budget: int = 50_000_000
    seed: int = 0
    ordering: str = "degree"

    def __post_init__(self):
        if self.time_budget <= 0 or self.node_budget <= 0:
            raise SolverError("budgets must be positive")
        if self.ordering not in _ORDERINGS:
            raise SolverError(f"ordering must be one of {_ORDERINGS}")


@dataclass(frozen=True)
class IndependentSet:
    vertices: tuple
    proven_optimal: bool
    upper_bound: int

    @property
    def size(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CliqueCover:
    parts: tuple
    proven_optimal: bool = True

    @property
    def size(self):
        return len(self.parts)


def is_independent_set(G, vertices):
    """O(k^2) bit test, independent of any solver internals."""
    vs = list(vertices)
    for i, v in enumerate(vs):
        for u in vs[i + 1:]:
            if u == v or G.adj[v] >> u & 1:
                return False
    return True


def is_clique(G, vertices):
    vs = list(vertices)
    for i, v in enumerate(vs):
        for u in vs[i + 1:]:
            if u == v or not G.adj[v] >> u & 1:
                return False
    return True


def _vertex_order(G, ordering):
    n = G.n
    if ordering == "label":
        return list(range(n))
    if ordering == "degree":
        return sorted(range(n), key=lambda v: (-G.adj[v].bit_count(), v))
    # degeneracy: repeatedly strip a minimum-degree vertex, then reverse
    adj = list(G.adj)
    alive = (1 << n) - 1
    order = []
    for _ in range(n):
        best, best_d = -1, n + 1
        m = alive
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best, best_d = v, d
        order.append(best)
        alive &= ~(1 << best)
    order.reverse()
    return order


class _BudgetExhausted(Exception):
    pass


_REDUCTION_THRESHOLD = 64  # scan for forced picks only on small candidate sets


class _MISEngine:
    """Branch-and-bound over candidate bitmasks.

    Every node covers its candidates by greedily peeled cliques (peeling in
    vertex-id order; callers relabel for other priorities), then branches
    vertices in decreasing cover class: once size + class cannot beat the
    incumbent the whole remaining node is cut.
    """

    def __init__(self, n, adj, cfg):
        self.n = n
        self.adj = adj
        full = (1 << n) - 1
        self.full = full
        self.nonadj = [~(adj[v] | (1 << v)) & full for v in range(n)]
        self.best = 0
        self.best_set = []
        self.cur = []
        self.nodes = 0
        self.node_budget = cfg.node_budget
        self.deadline = time.monotonic() + cfg.time_budget

    def seed_incumbent(self, vertices):
        if len(vertices) > self.best:
            self.best = len(vertices)
            self.best_set = list(vertices)

    def _tick(self):
        self.nodes += 1
        if not self.nodes & 1023:
            if self.nodes >= self.node_budget or time.monotonic() > self.deadline:
                raise _BudgetExhausted

    def cover_order(self, cand):
        """Greedy clique cover of cand: [(class_index, v)] in class order.
        Vertices in the first k classes hold at most k independent
        vertices, which is the pruning bound."""
        adj = self.adj
        out = []
        rem = cand
        k = 0
        while rem:
            k += 1
            ext = rem
            while ext:
                lsb = ext & -ext
                v = lsb.bit_length() - 1
                out.append((k, v))
                rem ^= lsb
                ext &= adj[v] & rem
        return out

    def root_bound(self, cand):
        if not cand:
            return 0
        return self.cover_order(cand)[-1][0]

    def expand(self, cand, size):
        self._tick()
        adj = self.adj
        nonadj = self.nonadj
        pushed = 0
        # fold in candidates with <= 1 candidate neighbor: always optimal
        if cand.bit_count() <= _REDUCTION_THRESHOLD:
            while True:
                pick = -1
                m = cand
                while m:
                    v = (m & -m).bit_length() - 1
                    m &= m - 1
                    if (adj[v] & cand).bit_count() <= 1:
                        pick = v
                        break
                if pick < 0:
                    break
                cand &= nonadj[pick]
                size += 1
                self.cur.append(pick)
                pushed += 1
                if size > self.best:
                    self.best = size
                    self.best_set = list(self.cur)
        try:
            order = self.cover_order(cand)
            removed = 0
            for i in range(len(order) - 1, -1, -1):
                bound, v = order[i]
                if size + bound <= self.best:
                    break
                ncand = cand & ~removed & nonadj[v]
                self.cur.append(v)
                if size + 1 > self.best:
                    self.best = size + 1
                    self.best_set = list(self.cur)
                if ncand:
                    self.expand(ncand, size + 1)
                self.cur.pop()
                removed |= 1 << v
        finally:
            for _ in range(pushed):
                self.cur.pop()


def _run_engine(G, cfg, forced=(), orbit_fn=None, incumbent=()):
    """Shared driver.  ``forced`` vertices are committed up front; when
    ``orbit_fn`` is given, the first level below the forced vertices uses
    orbital branching (include a representative or discard its whole orbit).
    Returns (vertices, proven, upper_bound)."""
    eng = _MISEngine(G.n, G.adj, cfg)
    cand = eng.full
    base = list(forced)
    for v in forced:
        if not cand >> v & 1:
            raise SolverError("forced vertices are not independent")
        cand &= eng.nonadj[v]
    eng.cur = list(base)
    eng.seed_incumbent(list(incumbent))
    if len(base) > eng.best:
        eng.best = len(base)
        eng.best_set = list(base)
    size = len(base)
    root_ub = size + eng.root_bound(cand)
    proven = True
    try:
        if orbit_fn is None:
            if cand:
                eng.expand(cand, size)
        else:
            remaining = cand
            while remaining:
                order = eng.cover_order(remaining)
                bound, v = order[-1]
                if size + bound <= eng.best:
                    break
                ncand = remaining & eng.nonadj[v]
                eng.cur.append(v)
                if size + 1 > eng.best:
                    eng.best = size + 1
                    eng.best_set = list(eng.cur)
                if ncand:
                    eng.expand(ncand, size + 1)
                eng.cur.pop()
                remaining &= ~orbit_fn(v)
    except _BudgetExhausted:
        proven = False
    upper = eng.best if proven else max(eng.best, root_ub)
    return tuple(sorted(eng.best_set)), proven, upper, eng.nodes


def max_independent_set(G, cfg=None):
    """Exact alpha(G) within budget; otherwise the best incumbent with the
    best proven upper bound and proven_optimal=False."""
    cfg = cfg or SolverConfig()
    order = _vertex_order(G, cfg.ordering)
    # relabel so the engine's peeling priority follows the requested ordering
    pos = {v: i for i, v in enumerate(order)}
    rows = [0] * G.n
    for u, v in G.edges():
        rows[pos[u]] |= 1 << pos[v]
        rows[pos[v]] |= 1 << pos[u]
    Gr = Graph(G.n, tuple(rows))
    seed = _greedy_independent(Gr)
    if G.n > 40:  # a stronger incumbent pays for itself on larger graphs
        local = heuristic_independent_set(G, cfg, restarts=6)
        if len(local.vertices) > len(seed):
            seed = [pos[v] for v in local.vertices]
    verts, proven, upper, _ = _run_engine(Gr, cfg, incumbent=seed)
    back = tuple(sorted(order[v] for v in verts))
    result = IndependentSet(back, proven, upper)
    if not is_independent_set(G, result.vertices):
        raise SolverError("internal error: returned set not independent")
    return result


def _greedy_independent(G):
    """Deterministic min-degree greedy; cheap incumbent for pruning."""
    alive = (1 << G.n) - 1
    adj = G.adj
    out = []
    while alive:
        best, best_d = -1, G.n + 1
        m = alive
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best, best_d = v, d
        out.append(best)
        alive &= ~(adj[best] | (1 << best))
    return out


def max_clique(G, cfg=None):
    """Largest clique as an IndependentSet of the complement, mapped back."""
    res = max_independent_set(complement(G), cfg)
    return IndependentSet(res.vertices, res.proven_optimal, res.upper_bound)


def clique_number(G, cfg=None):
    return len(max_clique(G, cfg).vertices)


def heuristic_independent_set(G, cfg=None, restarts=10):
    """Randomized greedy + (1,2)-swap local search; deterministic per seed."""
    cfg = cfg or SolverConfig()
    rng = random.Random(cfg.seed)
    n = G.n
    adj = G.adj
    full = (1 << n) - 1
    nonadj_closed = [~(adj[v] | (1 << v)) & full for v in range(n)]
    best = ()
    for _ in range(max(1, restarts)):
        order = list(range(n))
        rng.shuffle(order)
        sol = []
        blocked = 0
        for v in order:
            if not blocked >> v & 1:
                sol.append(v)
                blocked |= adj[v] | (1 << v)
        sol_mask = 0
        for v in sol:
            sol_mask |= 1 << v
        improved = True
        while improved:
            improved = False
            for v in list(sol):
                rest = sol_mask & ~(1 << v)
                closed = rest
                m = rest
                while m:
                    u = (m & -m).bit_length() - 1
                    m &= m - 1
                    closed |= adj[u]
                free = full & ~closed & ~(1 << v)
                # two mutually non-adjacent replacements beat keeping v
                m = free
                found = None
                while m and found is None:
                    a = (m & -m).bit_length() - 1
                    m &= m - 1
                    second = free & nonadj_closed[a]
                    second &= ~((1 << (a + 1)) - 1)
                    if second:
                        b = (second & -second).bit_length() - 1
                        found = (a, b)
                if found:
                    sol.remove(v)
                    sol.extend(found)
                    sol_mask = (sol_mask & ~(1 << v)) | (1 << found[0]) | (1 << found[1])
                    improved = True
            # plain additions
            closed = sol_mask
            m = sol_mask
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                closed |= adj[u]
            free = full & ~closed
            while free:
                a = (free & -free).bit_length() - 1
                sol.append(a)
                sol_mask |= 1 << a
                free &= nonadj_closed[a]
                improved = True
        if len(sol) > len(best):
            best = tuple(sorted(sol))
    result = IndependentSet(best, False, G.n)
    if not is_independent_set(G, result.vertices):
        raise SolverError("internal error: heuristic set not independent")
    return result


# -- maximal clique enumeration --------------------------------------------


def enumerate_maximal_cliques(G, cap=DEFAULT_CLIQUE_CAP):
    """Pivoting backtracking enumeration; every maximal clique exactly once.

    Raises CliqueCapExceeded beyond ``cap`` cliques.
    """
    adj = G.adj
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            if len(out) > cap:
                raise CliqueCapExceeded(
                    f"more than {cap} maximal cliques; for triangle-free "
                    "graphs fall back to edge constraints"
                )
            return
        pivot, pivot_deg = -1, -1
        m = p | x
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            d = (adj[u] & p).bit_count()
            if d > pivot_deg:
                pivot, pivot_deg = u, d
        m = p & ~adj[pivot]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            bk(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, (1 << G.n) - 1, 0)
    cliques = []
    for mask in out:
        vs = []
        while mask:
            vs.append((mask & -mask).bit_length() - 1)
            mask &= mask - 1
        cliques.append(tuple(vs))
    cliques.sort()
    return cliques


# -- clique cover via exact coloring of the complement ----------------------


def _greedy_coloring(adj, n):
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    color = [-1] * n
    classes = []
    for v in order:
        for c, members in enumerate(classes):
            if not members & adj[v]:
                classes[c] |= 1 << v
                color[v] = c
                break
        else:
            classes.append(1 << v)
            color[v] = len(classes) - 1
    return color, classes


def _greedy_clique(adj, n):
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    best = 0
    for start in order[: min(n, 8)]:
        mask = 1 << start
        cand = adj[start]
        while cand:
            pick, pick_d = -1, -1
            m = cand
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                d = (adj[v] & cand).bit_count()
                if d > pick_d:
                    pick, pick_d = v, d
            mask |= 1 << pick
            cand &= adj[pick]
        if mask.bit_count() > best.bit_count():
            best = mask
    return best


def _color_exact(adj, n, k, clique_mask, budget):
    """Backtracking k-coloring; the seed clique is pre-colored 0,1,2,...
    budget is a mutable [nodes_left]; returns list of class masks or None."""
    color = [-1] * n
    classes = [0] * k
    used = 0
    m = clique_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if used >= k:
            return None
        color[v] = used
        classes[used] |= 1 << v
        used += 1
    uncolored = [v for v in range(n) if color[v] < 0]
    uncolored.sort(key=lambda v: (-adj[v].bit_count(), v))

    def pick():
        best, best_key = -1, None
        for v in uncolored:
            if color[v] >= 0:
                continue
            sat = 0
            m = adj[v]
            seen = 0
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if color[u] >= 0 and not seen >> color[u] & 1:
                    seen |= 1 << color[u]
                    sat += 1
            key = (-sat, -adj[v].bit_count(), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def bt(remaining, used):
        if remaining == 0:
            return True
        budget[0] -= 1
        if budget[0] <= 0:
            raise _BudgetExhausted
        v = pick()
        limit = min(k, used + 1)
        for c in range(limit):
            if classes[c] & adj[v]:
                continue
            color[v] = c
            classes[c] |= 1 << v
            if bt(remaining - 1, max(used, c + 1)):
                return True
            color[v] = -1
            classes[c] &= ~(1 << v)
        return False

    if bt(len([v for v in uncolored if color[v] < 0]), used):
        return [c for c in classes if c]
    return None


def clique_cover_number(G, cfg=None):
    """sigma(G): chromatic number of the complement, exact within budget.

    Returns (value, CliqueCover); the cover is valid either way, with
    proven_optimal=False when the search degraded to greedy.
    """
    cfg = cfg or SolverConfig()
    H = complement(G)
    n = G.n
    adj = H.adj
    _, greedy_classes = _greedy_coloring(adj, n)
    ub = len(greedy_classes)
    clique_mask = _greedy_clique(adj, n)
    lb = clique_mask.bit_count()
    best_classes = greedy_classes
    proven = lb == ub
    budget = [min(cfg.node_budget, 2_000_000)]
    deadline = time.monotonic() + cfg.time_budget
    if not proven:
        try:
            for k in range(lb, ub):
                if time.monotonic() > deadline:
                    raise _BudgetExhausted
                res = _color_exact(adj, n, k, clique_mask, budget)
                if res is not None:
                    best_classes = res
                    break
            proven = True
        except _BudgetExhausted:
            proven = False
    parts = []
    for mask in best_classes:
        vs = []
        while mask:
            vs.append((mask & -mask).bit_length() - 1)
            mask &= mask - 1
        parts.append(tuple(vs))
    parts.sort()
    cover = CliqueCover(tuple(parts), proven)
    _validate_cover(G, cover)
    return len(parts), cover


def _validate_cover(G, cover):
    seen = 0
    for part in cover.parts:
        if not is_clique(G, part):
            raise SolverError(f"cover part {part} is not a clique")
        for v in part:
            if seen >> v & 1:
                raise SolverError(f"vertex {v} covered twice")
            seen |= 1 << v
    if seen != (1 << G.n) - 1:
        raise SolverError("cover misses vertices")
