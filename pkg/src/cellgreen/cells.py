"""Cell graphs: ingestion, validation, and structural analysis.

A cell is a finite connected simple graph with an ordered list of boundary
vertices (the origin first) through which copies of the cell are glued to
build an infinite self-similar graph.  Internally vertices are always
relabeled so the boundary occupies 0..theta-1 with the origin at 0; every
matrix convention downstream relies on that ordering.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence


class CellError(ValueError):
    pass


class CellParseError(CellError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CellGraph:
    """Finite simple connected graph with boundary vertices 0..theta-1.

    Vertex 0 is the origin.  Structural axioms (simplicity, connectivity,
    pairwise non-adjacent boundary) are enforced at construction; the
    symmetry axioms are checked separately by validate_cell.
    """

    n: int
    theta: int
    edges: frozenset[tuple[int, int]]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.theta < 2:
            raise CellError("at least two boundary vertices are required")
        if self.n <= self.theta:
            raise CellError("cell needs at least one interior vertex")
        edges = frozenset(_norm_edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        for a, b in edges:
            if a == b:
                raise CellError(f"loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise CellError(f"edge ({a},{b}) outside vertex range")
        nbrs = [set() for _ in range(self.n)]
        for a, b in edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        object.__setattr__(
            self, "_nbrs", tuple(frozenset(s) for s in nbrs)
        )
        for a in range(self.theta):
            for b in range(a + 1, self.theta):
                if b in nbrs[a]:
                    raise CellError(
                        f"boundary vertices {a} and {b} are adjacent"
                    )
        if len(self._component(0)) != self.n:
            raise CellError("graph is not connected")

    # -- basic structure ----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def boundary(self) -> tuple[int, ...]:
        return tuple(range(self.theta))

    @property
    def interior(self) -> tuple[int, ...]:
        return tuple(range(self.theta, self.n))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self._nbrs)

    def _component(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in self._nbrs[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    def bfs_distances(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = [source]
        for v in queue:
            for u in self._nbrs[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.bfs_distances(u)[v]

    def bipartition(self) -> tuple[frozenset[int], frozenset[int]] | None:
        """Two-coloring if one exists, else None."""
        color = [-1] * self.n
        color[0] = 0
        queue = [0]
        for v in queue:
            for u in self._nbrs[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
        return (
            frozenset(v for v in range(self.n) if color[v] == 0),
            frozenset(v for v in range(self.n) if color[v] == 1),
        )

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def is_path(self) -> bool:
        """True when the cell is a simple path between the two boundary ends."""
        if self.theta != 2:
            return False
        degs = self.degrees()
        return (
            degs[0] == 1
            and degs[1] == 1
            and all(degs[v] == 2 for v in self.interior)
        )

    def relabel(self, perm: Sequence[int]) -> CellGraph:
        """Image under a vertex permutation; perm must keep 0..theta-1 boundary."""
        if sorted(perm[: self.theta]) != list(range(self.theta)):
            raise CellError("relabeling must preserve the boundary set")
        return CellGraph(
            self.n,
            self.theta,
            frozenset(_norm_edge(perm[a], perm[b]) for a, b in self.edges),
            name=self.name,
        )

    def canonical_key(self) -> tuple:
        """Minimum edge encoding over boundary-set-preserving permutations."""
        best = None
        interior = list(self.interior)
        for bperm in itertools.permutations(range(self.theta)):
            for iperm in itertools.permutations(interior):
                perm = list(bperm) + list(iperm)
                enc = tuple(
                    sorted(_norm_edge(perm[a], perm[b]) for a, b in self.edges)
                )
                if best is None or enc < best:
                    best = enc
        return (self.n, self.theta, best)


# -- parsing and serialization ---------------------------------------------


def _build_from_ids(
    n: int,
    boundary_ids: list[int],
    edge_ids: list[tuple[int, int]],
    name: str | None,
) -> CellGraph:
    if len(set(boundary_ids)) != len(boundary_ids):
        raise CellParseError("duplicate boundary vertex")
    ids = set(boundary_ids)
    for a, b in edge_ids:
        ids.add(a)
        ids.add(b)
    if len(ids) > n:
        raise CellParseError(
            f"{len(ids)} distinct vertex ids exceed declared count {n}"
        )
    # Unreferenced ids would be isolated vertices; reject early with a
    # clearer message than the connectivity check would give.
    if len(ids) < n:
        raise CellParseError(
            f"only {len(ids)} of {n} declared vertices appear in the file"
        )
    remap = {}
    for i, v in enumerate(boundary_ids):
        remap[v] = i
    for v in sorted(ids):
        if v not in remap:
            remap[v] = len(remap)
    seen = set()
    edges = []
    for a, b in edge_ids:
        if a == b:
            raise CellParseError(f"loop at vertex {a}")
        e = _norm_edge(remap[a], remap[b])
        if e in seen:
            raise CellParseError(f"duplicate edge ({a},{b})")
        seen.add(e)
        edges.append(e)
    return CellGraph(n, len(boundary_ids), frozenset(edges), name=name)


def parse_cell(text: str, name: str | None = None) -> CellGraph:
    """Parse the line-oriented cell format, or its JSON equivalent.

    Text grammar: `vertices <n>`, then `boundary <id>...`, then `edge <a> <b>`
    lines; `#` starts a comment.  JSON: object with keys vertices, boundary,
    edges.  Vertex ids are arbitrary integers and are normalized so the
    boundary occupies 0..theta-1 in listed order (origin first).
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CellParseError(f"invalid JSON: {exc}") from exc
        try:
            n = int(doc["vertices"])
            boundary = [int(v) for v in doc["boundary"]]
            edges = [(int(a), int(b)) for a, b in doc["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise CellParseError(f"malformed JSON cell: {exc}") from exc
        return _build_from_ids(n, boundary, edges, name)

    n = None
    boundary: list[int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "vertices":
                if n is not None:
                    raise CellParseError("repeated vertices line", lineno)
                n = int(parts[1])
            elif kind == "boundary":
                if boundary is not None:
                    raise CellParseError("repeated boundary line", lineno)
                boundary = [int(p) for p in parts[1:]]
            elif kind == "edge":
                if len(parts) != 3:
                    raise CellParseError("edge needs two endpoints", lineno)
                edges.append((int(parts[1]), int(parts[2])))
            elif kind == "origin":
                # accepted for approximant files; ignored for cells
                int(parts[1])
            else:
                raise CellParseError(f"unknown directive {kind!r}", lineno)
        except (IndexError, ValueError) as exc:
            raise CellParseError(f"cannot parse: {raw!r}", lineno) from exc
    if n is None:
        raise CellParseError("missing vertices line")
    if boundary is None or len(boundary) < 2:
        raise CellParseError("missing or short boundary line")
    try:
        return _build_from_ids(n, boundary, edges, name)
    except CellParseError:
        raise
    except CellError as exc:
        raise CellParseError(str(exc)) from exc


def cell_to_text(g: CellGraph) -> str:
    lines = [f"vertices {g.n}", "boundary " + " ".join(map(str, g.boundary))]
    lines += [f"edge {a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def cell_to_json(g: CellGraph) -> dict:
    return {
        "vertices": g.n,
        "boundary": list(g.boundary),
        "edges": [list(e) for e in sorted(g.edges)],
    }


# -- transition matrix ------------------------------------------------------


def transition_matrix(g: CellGraph) -> list[list[Fraction]]:
    """Simple-random-walk step matrix: row x spreads 1/deg(x) over neighbors."""
    rows = []
    for x in range(g.n):
        deg = g.degree(x)
        row = [Fraction(0)] * g.n
        for y in g.neighbors(x):
            row[y] = Fraction(1, deg)
        rows.append(row)
    return rows


# -- automorphisms ----------------------------------------------------------


def _extend_automorphism(
    g: CellGraph, mapping: dict[int, int], used: set[int]
) -> bool:
    if len(mapping) == g.n:
        return True
    # Prefer an unmapped vertex adjacent to the mapped region.
    cand = None
    for v in range(g.n):
        if v in mapping:
            continue
        if any(u in mapping for u in g.neighbors(v)):
            cand = v
            break
    if cand is None:
        cand = next(v for v in range(g.n) if v not in mapping)
    deg = g.degree(cand)
    boundary_side = cand < g.theta
    mapped_nbrs = {mapping[u] for u in g.neighbors(cand) if u in mapping}
    for w in range(g.n):
        if w in used or g.degree(w) != deg:
            continue
        if (w < g.theta) != boundary_side:
            continue
        if not mapped_nbrs <= g.neighbors(w):
            continue
        # Edges to mapped vertices must be mirrored exactly.
        ok = True
        for u, mu in mapping.items():
            if (u in g.neighbors(cand)) != (mu in g.neighbors(w)):
                ok = False
                break
        if not ok:
            continue
        mapping[cand] = w
        used.add(w)
        if _extend_automorphism(g, mapping, used):
            return True
        del mapping[cand]
        used.remove(w)
    return False


def has_automorphism(g: CellGraph, forced: dict[int, int]) -> bool:
    """Is there a boundary-set-preserving automorphism extending `forced`?"""
    for v, w in forced.items():
        if g.degree(v) != g.degree(w) or (v < g.theta) != (w < g.theta):
            return False
    if len(set(forced.values())) != len(forced):
        return False
    return _extend_automorphism(g, dict(forced), set(forced.values()))


def boundary_doubly_transitive(g: CellGraph) -> bool:
    """Automorphisms reach every ordered pair of boundary vertices from (0,1)."""
    for a in range(g.theta):
        for b in range(g.theta):
            if a == b:
                continue
            if not has_automorphism(g, {0: a, 1: b}):
                return False
    return True


# -- clique partition --------------------------------------------------------


def _cliques_through(g: CellGraph, size: int) -> list[frozenset[int]]:
    out = []

    def grow(base: list[int], candidates: list[int]):
        if len(base) == size:
            out.append(frozenset(base))
            return
        for i, v in enumerate(candidates):
            if all(v in g.neighbors(u) for u in base):
                grow(base + [v], candidates[i + 1 :])

    grow([], list(range(g.n)))
    return out


def clique_partition(g: CellGraph) -> list[frozenset[int]] | None:
    """Partition of the edge set into complete graphs on theta vertices.

    For theta = 2 every edge is such a clique.  Otherwise an exact-cover
    backtracking search over all theta-cliques is run; None when no
    partition exists.
    """
    if g.theta == 2:
        return [frozenset(e) for e in sorted(g.edges)]
    cliques = _cliques_through(g, g.theta)
    edge_in = {}
    for idx, c in enumerate(cliques):
        for e in itertools.combinations(sorted(c), 2):
            edge_in.setdefault(_norm_edge(*e), []).append(idx)
    all_edges = sorted(g.edges)
    if any(e not in edge_in for e in all_edges):
        return None
    chosen: list[int] = []
    covered: set[tuple[int, int]] = set()

    def cover() -> bool:
        target = next((e for e in all_edges if e not in covered), None)
        if target is None:
            return True
        for idx in edge_in[target]:
            c_edges = [
                _norm_edge(*e)
                for e in itertools.combinations(sorted(cliques[idx]), 2)
            ]
            if any(e in covered for e in c_edges):
                continue
            chosen.append(idx)
            covered.update(c_edges)
            if cover():
                return True
            chosen.pop()
            covered.difference_update(c_edges)
        return False

    if not cover():
        return None
    return [cliques[i] for i in chosen]


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class CellReport:
    theta: int
    mu: int | None
    bipartite: bool
    is_path: bool
    clique_partition: tuple[frozenset[int], ...] | None
    doubly_transitive: bool | str
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations and self.doubly_transitive in (
            True,
            "skipped",
        )

    def to_json(self) -> dict:
        return {
            "theta": self.theta,
            "mu": self.mu,
            "bipartite": self.bipartite,
            "is_path": self.is_path,
            "clique_partition": (
                None
                if self.clique_partition is None
                else [sorted(c) for c in self.clique_partition]
            ),
            "doubly_transitive": self.doubly_transitive,
            "violations": list(self.violations),
            "valid": self.valid,
        }


def validate_cell(g: CellGraph, check_automorphisms: bool = True) -> CellReport:
    """Check the symmetry axioms and report violations instead of raising."""
    violations: list[str] = []
    theta = g.theta
    mu2 = 2 * g.num_edges
    if mu2 % (theta * (theta - 1)) == 0:
        mu = mu2 // (theta * (theta - 1))
    else:
        mu = None
        violations.append(
            "edge count is not a multiple of the clique size "
            f"({g.num_edges} edges, clique K_{theta})"
        )
    partition = clique_partition(g)
    if partition is None:
        violations.append("edges admit no partition into complete graphs K_theta")
    elif mu is not None and len(partition) != mu:
        violations.append("clique partition size disagrees with edge count")
    for b in range(theta):
        if g.degree(b) != theta - 1:
            violations.append(
                f"boundary vertex {b} has degree {g.degree(b)}, expected "
                f"{theta - 1}: gluing copies at it would grow its degree "
                "without bound, so no locally finite limit graph exists"
            )
    if check_automorphisms:
        dt: bool | str = boundary_doubly_transitive(g)
        if dt is False:
            violations.append(
                "automorphism group is not doubly transitive on the boundary"
            )
    else:
        dt = "skipped"
    return CellReport(
        theta=theta,
        mu=mu,
        bipartite=g.is_bipartite(),
        is_path=g.is_path(),
        clique_partition=None if partition is None else tuple(partition),
        doubly_transitive=dt,
        violations=tuple(violations),
    )


def require_valid(g: CellGraph, check_automorphisms: bool = True) -> CellReport:
    report = validate_cell(g, check_automorphisms=check_automorphisms)
    if not report.valid:
        label = g.name or "cell"
        raise CellError(f"invalid {label}: " + "; ".join(report.violations))
    return report


# -- enumeration of two-boundary cells ----------------------------------------


def _connected(m: int, adj: list[set[int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == m


def _degree_respecting_perms(
    m: int, degs: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    """All permutations of 0..m-1 mapping each vertex to one of equal degree."""
    buckets: dict[int, list[int]] = {}
    for v, dv in enumerate(degs):
        buckets.setdefault(dv, []).append(v)
    groups = list(buckets.values())
    for images in itertools.product(
        *(itertools.permutations(grp) for grp in groups)
    ):
        perm = [0] * m
        for grp, img in zip(groups, images):
            for src, dst in zip(grp, img):
                perm[src] = dst
        yield tuple(perm)


def _canon_edges(
    m: int, edges: frozenset[tuple[int, int]], degs: tuple[int, ...]
) -> tuple:
    """Minimal edge encoding over relabelings onto degree-sorted positions.

    Vertices may land only on positions reserved for their degree, so two
    labeled graphs share an encoding exactly when they are isomorphic.
    """
    order = sorted(range(m), key=lambda v: (-degs[v], v))
    pos_by_deg: dict[int, list[int]] = {}
    for i, v in enumerate(order):
        pos_by_deg.setdefault(degs[v], []).append(i)
    buckets: dict[int, list[int]] = {}
    for v, dv in enumerate(degs):
        buckets.setdefault(dv, []).append(v)
    degrees = list(buckets)
    edge_list = list(edges)
    best = None
    for images in itertools.product(
        *(itertools.permutations(pos_by_deg[d]) for d in degrees)
    ):
        perm = [0] * m
        for d, img in zip(degrees, images):
            for src, dst in zip(buckets[d], img):
                perm[src] = dst
        enc = tuple(sorted(_norm_edge(perm[a], perm[b]) for a, b in edge_list))
        if best is None or enc < best:
            best = enc
    return best


@lru_cache(maxsize=None)
def connected_graph_classes(m: int) -> tuple[frozenset[tuple[int, int]], ...]:
    """Connected simple graphs on m labeled vertices, one per isomorphism class."""
    if m == 1:
        return (frozenset(),)
    pairs = list(itertools.combinations(range(m), 2))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        adj = [set() for _ in range(m)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        if not _connected(m, adj):
            continue
        degs = tuple(len(s) for s in adj)
        key = (tuple(sorted(degs)), _canon_edges(m, edges, degs))
        if key in seen:
            continue
        seen.add(key)
        out.append(edges)
    return tuple(out)


def _interior_automorphisms(
    m: int, edges: frozenset[tuple[int, int]]
) -> list[tuple[int, ...]]:
    adj = [set() for _ in range(m)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    degs = tuple(len(s) for s in adj)
    out = []
    for perm in _degree_respecting_perms(m, degs):
        if all(_norm_edge(perm[a], perm[b]) in edges for a, b in edges):
            out.append(perm)
    return out


def enumerate_cells(theta: int = 2, max_vertices: int = 8) -> Iterator[CellGraph]:
    """All valid two-boundary cells with at most max_vertices vertices.

    A cell is an interior connected graph plus one pendant edge from each
    boundary vertex, subject to the swap symmetry on the boundary.  Cells are
    emitted once per boundary-preserving isomorphism class, smallest first.
    """
    if theta != 2:
        raise CellError("enumeration is implemented for two boundary vertices")
    if max_vertices < 3:
        return
    for m in range(1, max_vertices - 1):
        for edges in connected_graph_classes(m):
            auts = _interior_automorphisms(m, edges)
            seen_pairs: set[frozenset[int]] = set()
            for a in range(m):
                for b in range(a, m):
                    pair = frozenset((a, b))
                    if pair in seen_pairs:
                        continue
                    orbit = {
                        frozenset((perm[a], perm[b])) for perm in auts
                    }
                    seen_pairs.update(orbit)
                    # The two attachment points must be exchangeable, or the
                    # boundary swap cannot extend to an automorphism.
                    if a != b and not any(
                        perm[a] == b and perm[b] == a for perm in auts
                    ):
                        continue
                    cell_edges = {(0, a + 2), (1, b + 2)}
                    cell_edges.update(
                        (u + 2, v + 2) for u, v in edges
                    )
                    yield CellGraph(
                        m + 2, 2, frozenset(cell_edges), name=f"enum{m}"
                    )
