"""Elements, (p,1)-total labellings, list assignments, and the validity predicates.

A labelling assigns non-negative integer colors to elements (vertices and
edges) of a host graph. Validity is a predicate, not a type invariant:
solvers and labellers freely build partial or broken candidates and ask
is_valid at the end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, IncidenceMap

__all__ = [
    "Vertex",
    "Edge",
    "Element",
    "element_key",
    "elements_of",
    "element_name",
    "element_from_name",
    "p_ball",
    "Violation",
    "ValidationReport",
    "is_valid",
    "respects_lists",
    "lp1_is_valid",
    "transport_labelling",
    "pull_back_labelling",
    "transport_lists",
    "pull_back_lists",
    "full_lists",
    "check_lists",
    "labelling_to_json",
    "labelling_from_json",
    "lists_to_json",
    "lists_from_json",
]


@dataclass(frozen=True)
class Vertex:
    v: int


@dataclass(frozen=True)
class Edge:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"loop edge at {self.u}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)


Element = Vertex | Edge


def element_key(x: Element) -> tuple:
    """Total order: all vertices (by index) before all edges (lexicographic)."""
    if isinstance(x, Vertex):
        return (0, x.v, -1)
    return (1, x.u, x.v)


def elements_of(g: Graph) -> list[Element]:
    """Every element of g in the element total order."""
    out: list[Element] = [Vertex(v) for v in range(g.n)]
    out += [Edge(u, v) for u, v in g.sorted_edges()]
    return out


def element_name(x: Element) -> str:
    if isinstance(x, Vertex):
        return f"v:{x.v}"
    return f"e:{x.u}-{x.v}"


def element_from_name(name: str) -> Element:
    try:
        tag, rest = name.split(":", 1)
        if tag == "v":
            return Vertex(int(rest))
        if tag == "e":
            u, v = rest.split("-", 1)
            return Edge(int(u), int(v))
    except ValueError:
        pass
    raise ValueError(f"bad element key {name!r}; expected 'v:ID' or 'e:U-V'")


def p_ball(x: int, p: int) -> set[int]:
    """The 2p-1 integers at distance < p from x; empty when p = 0.

    Members may be negative; that is harmless in set-difference use.
    """
    if p < 0:
        raise ValueError("separation p must be non-negative")
    if p == 0:
        return set()
    return set(range(x - (p - 1), x + p))


@dataclass(frozen=True)
class Violation:
    family: str  # vertex-vertex | edge-edge | vertex-edge | unlabelled | adjacent | distance-2
    first: object
    second: object | None = None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.ok


def _check_domain(g: Graph, labelling) -> None:
    for x in labelling:
        if isinstance(x, Vertex):
            if not (0 <= x.v < g.n):
                raise ValueError(f"element {element_name(x)} outside graph with n={g.n}")
        elif isinstance(x, Edge):
            if (x.u, x.v) not in g.edges:
                raise ValueError(f"element {element_name(x)} is not an edge of the graph")
        else:
            raise ValueError(f"not an element: {x!r}")


def is_valid(g: Graph, p: int, labelling: dict, total: bool = False) -> ValidationReport:
    """Check the three constraint families on labelled elements only.

    (i) adjacent vertices get distinct colors, (ii) adjacent edges get
    distinct colors, (iii) an edge and an incident vertex differ by >= p.
    With total=True additionally every element must be labelled. All
    violations are reported, not just the first.
    """
    if p < 0:
        raise ValueError("separation p must be non-negative")
    _check_domain(g, labelling)
    violations: list[Violation] = []
    for u, v in g.sorted_edges():
        cu = labelling.get(Vertex(u))
        cv = labelling.get(Vertex(v))
        if cu is not None and cv is not None and cu == cv:
            violations.append(Violation("vertex-vertex", Vertex(u), Vertex(v)))
    for w in range(g.n):
        incident = [Edge(w, nb) for nb in g.adj[w]]
        labelled = [e for e in incident if e in labelling]
        # two adjacent edges of a simple graph share exactly one vertex, so
        # every adjacent pair is visited exactly once over this loop
        for e1, e2 in combinations(sorted(labelled, key=element_key), 2):
            if labelling[e1] == labelling[e2]:
                violations.append(Violation("edge-edge", e1, e2))
    for u, v in g.sorted_edges():
        e = Edge(u, v)
        ce = labelling.get(e)
        if ce is None:
            continue
        for w in (u, v):
            cw = labelling.get(Vertex(w))
            if cw is not None and abs(cw - ce) < p:
                violations.append(Violation("vertex-edge", Vertex(w), e))
    if total:
        for x in elements_of(g):
            if x not in labelling:
                violations.append(Violation("unlabelled", x))
    return ValidationReport(ok=not violations, violations=tuple(violations))


def respects_lists(labelling: dict, lists: dict) -> bool:
    """True iff every labelled element's color belongs to its list."""
    for x, color in labelling.items():
        if x not in lists:
            raise ValueError(f"no list for element {element_name(x)}")
        if color not in lists[x]:
            return False
    return True


def lp1_is_valid(g: Graph, p: int, labels: dict) -> ValidationReport:
    """Vertex-labelling check: adjacent labels differ by >= p, labels at
    distance exactly two are distinct. Only labelled vertices are checked."""
    if p < 0:
        raise ValueError("separation p must be non-negative")
    for v in labels:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} outside graph with n={g.n}")
    violations: list[Violation] = []
    for u, v in g.sorted_edges():
        if u in labels and v in labels and abs(labels[u] - labels[v]) < p:
            violations.append(Violation("adjacent", u, v))
    dist2 = set()
    for w in range(g.n):
        for a, b in combinations(g.adj[w], 2):
            if not g.has_edge(a, b):
                dist2.add((a, b) if a < b else (b, a))
    for a, b in sorted(dist2):
        if a in labels and b in labels and labels[a] == labels[b]:
            violations.append(Violation("distance-2", a, b))
    return ValidationReport(ok=not violations, violations=tuple(violations))


# --- transport along an incidence map ---------------------------------------


def transport_labelling(im: IncidenceMap, labelling: dict) -> dict:
    """Carry element colors of the base graph onto derived vertices."""
    out = {}
    for x, color in labelling.items():
        if isinstance(x, Vertex):
            out[im.vertex_image[x.v]] = color
        else:
            out[im.edge_image[(x.u, x.v)]] = color
    return out


def pull_back_labelling(im: IncidenceMap, labels: dict) -> dict:
    """Inverse of transport_labelling; together they form a bijection."""
    vert_of = {w: v for v, w in im.vertex_image.items()}
    edge_of = {w: e for e, w in im.edge_image.items()}
    out: dict = {}
    for w, color in labels.items():
        if w in vert_of:
            out[Vertex(vert_of[w])] = color
        elif w in edge_of:
            out[Edge(*edge_of[w])] = color
        else:
            raise ValueError(f"derived vertex {w} has no preimage")
    return out


def transport_lists(im: IncidenceMap, lists: dict) -> dict:
    out = {}
    for x, colors in lists.items():
        if isinstance(x, Vertex):
            out[im.vertex_image[x.v]] = set(colors)
        else:
            out[im.edge_image[(x.u, x.v)]] = set(colors)
    return out


def pull_back_lists(im: IncidenceMap, vlists: dict) -> dict:
    vert_of = {w: v for v, w in im.vertex_image.items()}
    edge_of = {w: e for e, w in im.edge_image.items()}
    out: dict = {}
    for w, colors in vlists.items():
        if w in vert_of:
            out[Vertex(vert_of[w])] = set(colors)
        elif w in edge_of:
            out[Edge(*edge_of[w])] = set(colors)
        else:
            raise ValueError(f"derived vertex {w} has no preimage")
    return out


# --- list-assignment helpers -------------------------------------------------


def full_lists(g: Graph, colors) -> dict:
    """The assignment giving every element the same color set."""
    pool = frozenset(colors)
    return {x: pool for x in elements_of(g)}


def check_lists(g: Graph, lists: dict, minimum: int | None = None) -> None:
    """Require a non-empty list for every element, optionally of a minimum size."""
    for x in elements_of(g):
        if x not in lists:
            raise ValueError(f"missing list for element {element_name(x)}")
        if not lists[x]:
            raise ValueError(f"empty list for element {element_name(x)}")
        if minimum is not None and len(lists[x]) < minimum:
            raise ValueError(
                f"list for {element_name(x)} has {len(lists[x])} colors; need at least {minimum}"
            )


# --- JSON serialization -------------------------------------------------------
#
# Labelling files: {"p": int, "labels": {"v:ID": int, "e:U-V": int}}.
# List files mirror that with arrays: {"p": int, "lists": {...: [colors]}}.
# Keys are written in the element total order, bit-exactly.


def labelling_to_json(p: int, labelling: dict) -> str:
    ordered = {
        element_name(x): labelling[x] for x in sorted(labelling, key=element_key)
    }
    return json.dumps({"p": p, "labels": ordered}, indent=2) + "\n"


def labelling_from_json(text: str) -> tuple[int, dict]:
    obj = json.loads(text)
    p = int(obj["p"])
    labelling = {element_from_name(k): int(c) for k, c in obj["labels"].items()}
    return p, labelling


def lists_to_json(p: int, lists: dict) -> str:
    ordered = {
        element_name(x): sorted(lists[x]) for x in sorted(lists, key=element_key)
    }
    return json.dumps({"p": p, "lists": ordered}, indent=2) + "\n"


def lists_from_json(text: str) -> tuple[int, dict]:
    obj = json.loads(text)
    p = int(obj["p"])
    lists = {element_from_name(k): set(int(c) for c in v) for k, v in obj["lists"].items()}
    return p, lists
