"""Polynomial-time list labellers with provable list-size guarantees.

Each routine takes a graph, a separation p, and a list assignment whose
lists meet the guarantee threshold for its graph family, and produces a
valid list-respecting (p,1)-total labelling deterministically:

  paths          lists of size 2p+1, sequential greedy
  trees          lists of size max(Delta,2)+2p-1, depth-first greedy
  stars          lists of size n+2p-1 (p>=2, n>=3), protected-edge routine
  outerplanar    lists of size Delta+2p-1 when Delta>=p+3, reducible
                 configurations with minimum-color extensions

Every returned labelling is re-validated unconditionally. A failure of a
guarantee that the underlying mathematics rules out raises
TheoremViolation, which is a reportable research event rather than an
expected error path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graphs import Graph, make_star
from .labelling import (
    Edge,
    Vertex,
    check_lists,
    element_name,
    elements_of,
    is_valid,
    p_ball,
    respects_lists,
)
from .solvers import solve_list, solve_span

__all__ = [
    "TheoremViolation",
    "Leaf",
    "C1",
    "C2",
    "C3",
    "Configuration",
    "find_configuration",
    "label_path_greedy",
    "label_tree_dfs",
    "label_star_list",
    "label_star_span",
    "label_outerplanar_list",
    "OuterplanarAudit",
]


class TheoremViolation(RuntimeError):
    """A list-size guarantee failed at runtime; carries reproduction data."""


def _assert_output(g: Graph, p: int, labelling: dict, lists: dict | None = None) -> None:
    report = is_valid(g, p, labelling, total=True)
    if not report.ok:
        raise AssertionError(f"constructed labelling is invalid: {report.violations[:4]}")
    if lists is not None and not respects_lists(labelling, lists):
        raise AssertionError("constructed labelling leaves its lists")


def _least(colors) -> int:
    if not colors:
        raise AssertionError("no color available where the counting bound promised one")
    return min(colors)


# --- paths --------------------------------------------------------------------


def _path_order(g: Graph) -> list[int]:
    if g.n == 1:
        return [0]
    degs = [g.degree(v) for v in range(g.n)]
    ends = [v for v in range(g.n) if degs[v] == 1]
    if g.m != g.n - 1 or max(degs) > 2 or len(ends) != 2 or not g.is_connected():
        raise ValueError("graph is not a path")
    order = [min(ends)]
    prev = -1
    while len(order) < g.n:
        nxt = [w for w in g.adj[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def label_path_greedy(g: Graph, p: int, lists: dict) -> dict:
    """Color a path's vertices and edges in walk order, least available color.

    Each element after the first sees at most 2p forbidden colors (the
    previous element's color plus the separation ball of the element it is
    incident to), so lists of size 2p+1 never run dry.
    """
    if p < 1:
        raise ValueError("the sequential greedy needs p >= 1")
    order = _path_order(g)
    check_lists(g, lists, minimum=2 * p + 1)
    c: dict = {}
    c[Vertex(order[0])] = _least(lists[Vertex(order[0])])
    prev_edge_color: int | None = None
    for i in range(1, g.n):
        u, v = order[i - 1], order[i]
        e = Edge(u, v)
        forb = p_ball(c[Vertex(u)], p)
        if prev_edge_color is not None:
            forb = forb | {prev_edge_color}
        c[e] = _least(set(lists[e]) - forb)
        c[Vertex(v)] = _least(set(lists[Vertex(v)]) - {c[Vertex(u)]} - p_ball(c[e], p))
        prev_edge_color = c[e]
    _assert_output(g, p, c, lists)
    return c


# --- trees --------------------------------------------------------------------


def label_tree_dfs(g: Graph, p: int, lists: dict) -> dict:
    """Depth-first greedy: color the root, then each descent edge before its child.

    When stepping from u to child w along e, the edge avoids the ball of
    c(u) and the colors of u's already-colored edges (at most
    Delta-1 + 2p-1 colors); the child then avoids c(u) and the ball of c(e)
    (at most 2p colors). Lists of size max(Delta,2)+2p-1 always suffice.
    """
    if p < 1:
        raise ValueError("the depth-first greedy needs p >= 1")
    if g.m != g.n - 1 or not g.is_connected():
        raise ValueError("graph is not a tree")
    # the single-vertex tree is unconstrained; otherwise the subdivision
    # argument needs max(Delta, 2), which differs from Delta only for the
    # one-edge tree
    need = 1 if g.m == 0 else max(g.max_degree, 2) + 2 * p - 1
    check_lists(g, lists, minimum=need)
    c: dict = {}
    edge_colors: list[list[int]] = [[] for _ in range(g.n)]
    root = 0
    c[Vertex(root)] = _least(lists[Vertex(root)])
    stack = [(root, iter(g.adj[root]))]
    seen = {root}
    while stack:
        u, children = stack[-1]
        advanced = False
        for w in children:
            if w in seen:
                continue
            seen.add(w)
            e = Edge(u, w)
            forb = p_ball(c[Vertex(u)], p) | set(edge_colors[u])
            c[e] = _least(set(lists[e]) - forb)
            edge_colors[u].append(c[e])
            edge_colors[w].append(c[e])
            c[Vertex(w)] = _least(set(lists[Vertex(w)]) - {c[Vertex(u)]} - p_ball(c[e], p))
            stack.append((w, iter(g.adj[w])))
            advanced = True
            break
        if not advanced:
            stack.pop()
    _assert_output(g, p, c, lists)
    return c


# --- stars --------------------------------------------------------------------


def _star_shape(g: Graph) -> tuple[int, list[int]]:
    center = max(range(g.n), key=lambda v: (g.degree(v), -v))
    leaves = sorted(v for v in range(g.n) if v != center)
    if g.degree(center) != g.n - 1 or any(g.degree(v) != 1 for v in leaves):
        raise ValueError("graph is not a star")
    return center, leaves


def _protected_edge_coloring(order: list[Edge], avail: dict, n: int) -> dict | None:
    """Greedy minimum-color edge coloring that shields one slack-rich edge.

    Repeatedly takes the global minimum m of the uncolored lists and gives it
    to an edge other than the protected one whenever some other edge holds m;
    when the protected edge is forced, protection moves to an uncolored edge
    that still has at least n-i colors. Returns None if stranded.
    """
    remaining = {e: set(avail[e]) for e in order}
    uncolored = list(order)
    protected = next((e for e in order if len(remaining[e]) >= n), None)
    if protected is None:
        return None
    colors: dict = {}
    for i in range(1, n + 1):
        union = set().union(*(remaining[e] for e in uncolored))
        if not union:
            return None
        m = min(union)
        holders = [e for e in uncolored if m in remaining[e]]
        others = [e for e in holders if e != protected]
        chosen = others[0] if others else holders[0]
        colors[chosen] = m
        uncolored.remove(chosen)
        if i == n:
            break
        for e in uncolored:
            remaining[e].discard(m)
        if chosen == protected:
            fresh = [e for e in uncolored if len(remaining[e]) >= n - i]
            if not fresh:
                return None
            protected = fresh[0]
    return colors


def label_star_list(g: Graph, p: int, lists: dict) -> dict:
    """Star labeller from lists of size n+2p-1 (center degree n >= 3, p >= 2).

    Tries center colors in ascending list order. For each candidate alpha the
    edge lists lose the ball of alpha; as long as some reduced edge list
    keeps n colors, the protected-edge coloring places all edges and every
    leaf still has a color left. If every center color fails, something
    impossible happened and TheoremViolation is raised.
    """
    if p < 2:
        raise ValueError("the star routine needs p >= 2")
    center, leaves = _star_shape(g)
    n = len(leaves)
    if n < 3:
        raise ValueError("the star routine needs at least 3 leaves")
    check_lists(g, lists, minimum=n + 2 * p - 1)
    order = [Edge(center, v) for v in leaves]
    for alpha in sorted(lists[Vertex(center)]):
        reduced = {e: set(lists[e]) - p_ball(alpha, p) for e in order}
        if not any(len(reduced[e]) >= n for e in order):
            continue
        edge_colors = _protected_edge_coloring(order, reduced, n)
        if edge_colors is None:
            continue
        c = {Vertex(center): alpha, **edge_colors}
        stranded = False
        for v in leaves:
            e = Edge(center, v)
            pool = set(lists[Vertex(v)]) - {alpha} - p_ball(c[e], p)
            if not pool:
                stranded = True
                break
            c[Vertex(v)] = min(pool)
        if stranded:
            continue
        _assert_output(g, p, c, lists)
        return c
    raise TheoremViolation(
        f"star with {n} leaves and p={p}: no center color admitted the "
        f"protected-edge coloring; lists={ {element_name(x): sorted(v) for x, v in lists.items()} }"
    )


def label_star_span(n: int, p: int) -> dict:
    """Minimum-range labelling of the star with n leaves, colors from 1.

    For p < n the closed form uses colors {1..n+p}: center n+p, edge j gets
    j, leaf j gets p+j except the last leaf which wraps to 1. For p >= n the
    optimum range has n+p+1 colors and is found by the exact solver, shifted
    to {1..n+p+1}.
    """
    if n < 1 or p < 1:
        raise ValueError("need n >= 1 and p >= 1")
    g = make_star(n)
    if p < n:
        c: dict = {Vertex(0): n + p}
        for j in range(1, n + 1):
            c[Edge(0, j)] = j
        for j in range(1, n):
            c[Vertex(j)] = p + j
        c[Vertex(n)] = 1
    else:
        result = solve_span(g, p, n + p)
        if not result.labelled:
            raise TheoremViolation(f"star with {n} leaves, p={p}: range n+p+1 infeasible")
        c = {x: color + 1 for x, color in result.labelling.items()}
    _assert_output(g, p, c)
    return c


# --- outerplanar graphs ---------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    v: int
    u: int


@dataclass(frozen=True)
class C1:
    u: int
    v: int


@dataclass(frozen=True)
class C2:
    u: int
    v1: int
    v2: int


@dataclass(frozen=True)
class C3:
    x: int
    u1: int
    v1: int
    u2: int
    v2: int


Configuration = Leaf | C1 | C2 | C3


def _scan_configuration(adj: dict) -> Configuration | None:
    """Deterministic scan for a reducible configuration.

    Priority: a degree-1 vertex; then an edge joining two degree-2 vertices;
    then a triangle through a degree-2 vertex with a degree-3 corner; then a
    degree-4 hub carrying two vertex-disjoint triangles through degree-2
    vertices. Vertices of degree 0 never match.
    """
    deg = {v: len(nbs) for v, nbs in adj.items()}
    for v in sorted(adj):
        if deg[v] == 1:
            return Leaf(v, next(iter(adj[v])))
    for u in sorted(adj):
        if deg[u] != 2:
            continue
        for v in sorted(adj[u]):
            if v > u and deg[v] == 2:
                return C1(u, v)
    for u in sorted(adj):
        if deg[u] != 2:
            continue
        a, b = sorted(adj[u])
        if b in adj[a]:
            if deg[a] == 3:
                return C2(u, a, b)
            if deg[b] == 3:
                return C2(u, b, a)
    for x in sorted(adj):
        if deg[x] != 4:
            continue
        pairs = []
        for u in sorted(adj[x]):
            if deg[u] != 2:
                continue
            other = next(w for w in adj[u] if w != x)
            if other in adj[x]:
                pairs.append((u, other))
        for (u1, v1), (u2, v2) in combinations(pairs, 2):
            if {u1, v1}.isdisjoint({u2, v2}):
                return C3(x, u1, v1, u2, v2)
    return None


def find_configuration(g: Graph) -> Configuration | None:
    """Locate a reducible configuration; None means none is present.

    On a connected graph with minimum degree 1 this always returns a Leaf;
    every outerplanar graph with minimum degree 2 contains one of the other
    three shapes.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    return _scan_configuration({v: set(g.adj[v]) for v in range(g.n)})


@dataclass
class OuterplanarAudit:
    """Trace of one outerplanar labelling run.

    steps records each reduction with its reduced-list sizes; the counters
    track the rare repair paths of the degree-4 hub case. full_resolves
    reaching a complete re-solve is treated as a research event by the
    experiment harness.
    """

    steps: list = field(default_factory=list)
    interchanges: int = 0
    invalid_swaps: int = 0
    restricted_solves: int = 0
    full_resolves: int = 0

    @property
    def fallbacks(self) -> int:
        return self.restricted_solves + self.full_resolves


def _audit_bound(
    audit: OuterplanarAudit, kind: str, roles: tuple, sizes: dict, bounds: dict
) -> None:
    audit.steps.append({"kind": kind, "roles": list(roles), "sizes": dict(sizes)})
    for name, minimum in bounds.items():
        if sizes[name] < minimum:
            raise AssertionError(
                f"{kind} at {roles}: reduced list {name} has {sizes[name]} colors, "
                f"below the bound {minimum}"
            )


def _find_pair(vert_pool: set, edge_pool: set, p: int) -> tuple[int, int] | None:
    for a in sorted(vert_pool):
        for b in sorted(edge_pool):
            if abs(a - b) >= p:
                return a, b
    return None


class _Rebuilder:
    """Working state for the outerplanar extension phase.

    Holds the partially rebuilt graph (adjacency plus current edge set), the
    growing labelling, the fixed lists, and the audit counters. One method
    per reduction kind; each re-inserts its deleted piece and colors it.
    """

    def __init__(self, g: Graph, p: int, lists: dict, audit: OuterplanarAudit,
                 adj: dict, cur_edges: set, c: dict):
        self.g = g
        self.p = p
        self.lists = lists
        self.audit = audit
        self.adj = adj
        self.cur_edges = cur_edges
        self.c = c
        self.resolved_whole_graph = False

    def _add_edge(self, u, v):
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)
        self.cur_edges.add((u, v) if u < v else (v, u))

    def _edge_colors_at(self, w, skip=None):
        return {self.c[Edge(w, nb)] for nb in self.adj[w] if nb != skip}

    def extend_leaf(self, v, u):
        c, p = self.c, self.p
        self._add_edge(v, u)
        e = Edge(v, u)
        pool_e = set(self.lists[e]) - self._edge_colors_at(u, skip=v) - p_ball(c[Vertex(u)], p)
        _audit_bound(self.audit, "leaf", (v, u), {"edge": len(pool_e)}, {"edge": 1})
        c[e] = _least(pool_e)
        c[Vertex(v)] = _least(set(self.lists[Vertex(v)]) - {c[Vertex(u)]} - p_ball(c[e], p))

    def extend_c1(self, u, v, x, y):
        c, p = self.c, self.p
        self._add_edge(u, v)
        e = Edge(u, v)
        del c[Vertex(u)], c[Vertex(v)]
        eu, ev = Edge(u, x), Edge(v, y)
        pool_u = set(self.lists[Vertex(u)]) - {c[Vertex(x)]} - p_ball(c[eu], p)
        pool_v = set(self.lists[Vertex(v)]) - {c[Vertex(y)]} - p_ball(c[ev], p)
        pool_e = set(self.lists[e]) - {c[eu], c[ev]}
        _audit_bound(
            self.audit, "c1", (u, v),
            {"u": len(pool_u), "v": len(pool_v), "edge": len(pool_e)},
            {"u": p + 2, "v": p + 2, "edge": 3 * p},
        )
        m = min(pool_u | pool_v | pool_e)
        if m not in pool_u and m not in pool_v:
            # the minimum lives on the edge only: place it there, both ends
            # then lose at most p-1 colors each
            c[e] = m
            cu = _least(pool_u - p_ball(m, p))
            c[Vertex(u)] = cu
            c[Vertex(v)] = _least(pool_v - p_ball(m, p) - {cu})
            return
        if m in pool_u:
            first, second, spool = Vertex(u), Vertex(v), pool_v
        else:
            first, second, spool = Vertex(v), Vertex(u), pool_u
        c[first] = m
        spool2 = spool - {m}
        epool2 = pool_e - p_ball(m, p)
        m1 = min(spool2 | epool2)
        if m1 in spool2:
            c[second] = m1
            c[e] = _least(epool2 - p_ball(m1, p))
        else:
            c[e] = m1
            c[second] = _least(spool2 - p_ball(m1, p))

    def extend_c2(self, u, v1, v2, z):
        c, p = self.c, self.p
        self._add_edge(u, v1)
        e = Edge(u, v1)
        del c[Vertex(u)]
        pool_u = (
            set(self.lists[Vertex(u)])
            - {c[Vertex(v1)], c[Vertex(v2)]}
            - p_ball(c[Edge(u, v2)], p)
        )
        pool_e = (
            set(self.lists[e])
            - {c[Edge(v1, z)], c[Edge(v1, v2)], c[Edge(u, v2)]}
            - p_ball(c[Vertex(v1)], p)
        )
        _audit_bound(
            self.audit, "c2", (u, v1, v2),
            {"u": len(pool_u), "edge": len(pool_e)},
            {"u": p + 1, "edge": p},
        )
        m = min(pool_u | pool_e)
        if m in pool_e:
            c[e] = m
            c[Vertex(u)] = _least(pool_u - p_ball(m, p))
        else:
            c[Vertex(u)] = m
            c[e] = _least(pool_e - p_ball(m, p))

    def _c3_pools(self, x, u1, v1, u2, v2):
        c, p = self.c, self.p
        e = Edge(x, u1)
        pool_u = (
            set(self.lists[Vertex(u1)])
            - {c[Vertex(v1)], c[Vertex(x)]}
            - p_ball(c[Edge(u1, v1)], p)
        )
        pool_e = (
            set(self.lists[e])
            - {c[Edge(x, v1)], c[Edge(u1, v1)], c[Edge(x, v2)], c[Edge(x, u2)]}
            - p_ball(c[Vertex(x)], p)
        )
        return pool_u, pool_e

    def extend_c3(self, x, u1, v1, u2, v2):
        c, p = self.c, self.p
        self._add_edge(x, u1)
        e = Edge(x, u1)
        del c[Vertex(u1)]
        pool_u, pool_e = self._c3_pools(x, u1, v1, u2, v2)
        _audit_bound(
            self.audit, "c3", (x, u1, v1, u2, v2),
            {"u1": len(pool_u), "edge": len(pool_e)},
            {"u1": p + 1, "edge": p - 1},
        )
        pair = _find_pair(pool_u, pool_e, p)
        if pair is None:
            # tight case: swap the colors of the hub-side and far-side edges
            # at v1. The color multiset at v1 is unchanged; still, the swap is
            # verified before being trusted, and reverted if it breaks anything.
            e_hub, e_far = Edge(x, v1), Edge(u1, v1)
            c[e_hub], c[e_far] = c[e_far], c[e_hub]
            self.audit.interchanges += 1
            if is_valid(Graph(self.g.n, self.cur_edges), p, c).ok:
                pool_u, pool_e = self._c3_pools(x, u1, v1, u2, v2)
                pair = _find_pair(pool_u, pool_e, p)
            else:
                c[e_hub], c[e_far] = c[e_far], c[e_hub]
                self.audit.invalid_swaps += 1
        if pair is not None:
            c[Vertex(u1)] = pair[0]
            c[e] = pair[1]
            return
        # pin every colored element and let the complete solver place just
        # the hub edge and its degree-2 endpoint
        self.audit.restricted_solves += 1
        working = Graph(self.g.n, self.cur_edges)
        pinned = {el: {color} for el, color in c.items()}
        for el in elements_of(working):
            if el not in pinned:
                pinned[el] = set(self.lists[el])
        restricted = solve_list(working, p, pinned)
        if restricted.labelled:
            c[Vertex(u1)] = restricted.labelling[Vertex(u1)]
            c[e] = restricted.labelling[e]
            return
        # last resort: re-solve the whole instance; a failure here would
        # contradict the list-size guarantee
        self.audit.full_resolves += 1
        full = solve_list(self.g, p, self.lists)
        if not full.labelled:
            raise TheoremViolation(
                f"outerplanar with Delta={self.g.max_degree}, p={p}: the full "
                "instance has no list-respecting labelling"
            )
        self.c = dict(full.labelling)
        self.resolved_whole_graph = True


def label_outerplanar_list(
    g: Graph, p: int, lists: dict, audit: OuterplanarAudit | None = None
) -> dict:
    """Label an outerplanar graph from lists of size Delta+2p-1, Delta >= p+3.

    Outerplanarity is the caller's promise and is not verified (recognition
    is out of scope); a failure to find a reducible configuration is reported
    as a TheoremViolation since it implies the promise was broken. The list
    threshold is fixed by the ORIGINAL maximum degree and never shrinks as
    the reduction deletes edges and vertices, which may disconnect the
    working graph; that is fine, every remaining piece keeps a reducible
    shape and isolated vertices are simply colored with the edgeless core.
    """
    if p < 1:
        raise ValueError("the outerplanar routine needs p >= 1")
    if g.n == 0:
        raise ValueError("empty graph")
    delta = g.max_degree
    if delta < p + 3:
        raise ValueError(
            f"maximum degree {delta} below p+3={p + 3}; use the exact list solver instead"
        )
    check_lists(g, lists, minimum=delta + 2 * p - 1)
    if audit is None:
        audit = OuterplanarAudit()

    adj: dict[int, set[int]] = {v: set(g.adj[v]) for v in range(g.n)}
    cur_edges: set[tuple[int, int]] = set(g.edges)

    def drop_edge(u, v):
        adj[u].discard(v)
        adj[v].discard(u)
        cur_edges.discard((u, v) if u < v else (v, u))

    # reduction phase: peel to an edgeless core, remembering each step's roles
    steps: list[tuple] = []
    while cur_edges:
        match = _scan_configuration(adj)
        if match is None:
            raise TheoremViolation(
                "no reducible configuration in a working graph of minimum degree >= 2; "
                "the input cannot be outerplanar"
            )
        if isinstance(match, Leaf):
            steps.append(("leaf", match.v, match.u))
            drop_edge(match.v, match.u)
            del adj[match.v]
        elif isinstance(match, C1):
            u, v = match.u, match.v
            x = next(w for w in adj[u] if w != v)
            y = next(w for w in adj[v] if w != u)
            steps.append(("c1", u, v, x, y))
            drop_edge(u, v)
        elif isinstance(match, C2):
            u, v1, v2 = match.u, match.v1, match.v2
            z = next(w for w in adj[v1] if w not in (u, v2))
            steps.append(("c2", u, v1, v2, z))
            drop_edge(u, v1)
        else:
            steps.append(("c3", match.x, match.u1, match.v1, match.u2, match.v2))
            drop_edge(match.x, match.u1)

    # edgeless core: least color of each remaining vertex's list
    core = {Vertex(v): min(lists[Vertex(v)]) for v in sorted(adj)}

    # extension phase: undo the reductions last-first, so each step sees its
    # own reduced graph fully labelled
    rebuilder = _Rebuilder(g, p, lists, audit, adj, cur_edges, core)
    handlers = {
        "leaf": rebuilder.extend_leaf,
        "c1": rebuilder.extend_c1,
        "c2": rebuilder.extend_c2,
        "c3": rebuilder.extend_c3,
    }
    for step in reversed(steps):
        handlers[step[0]](*step[1:])
        if rebuilder.resolved_whole_graph:
            break
    c = rebuilder.c
    _assert_output(g, p, c, lists)
    return c
