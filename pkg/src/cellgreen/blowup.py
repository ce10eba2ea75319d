"""Finite approximants of the infinite self-similar graph, and walk oracles.

The infinite graph is never materialized.  Level-k approximants arise by
repeatedly replacing every clique with a fresh cell copy; all vertices keep
their ids when a level is refined, so the original boundary vertices remain
the outermost glue points.  A closed walk of length n from the origin stays
within distance n // 2, so any n below the safe horizon (twice the distance
from the origin to the nearest vertex whose degree would still grow, minus
one) sees no difference between the approximant and the infinite graph.
That is what makes the two oracles here exact for small n: integer
matrix-vector powering and seeded Monte Carlo simulation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cells import CellError, CellGraph, clique_partition, require_valid

DEFAULT_EDGE_BUDGET = 10**6


class BudgetError(CellError):
    """Requested approximant exceeds the configured edge budget."""


@dataclass(frozen=True)
class Approximant:
    level: int
    origin: int
    adjacency: tuple[tuple[int, ...], ...]
    defect_set: frozenset[int]
    safe_horizon: int
    cell_name: str | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def _distance_to_defect(adjacency, origin: int, defect: frozenset[int]) -> int:
    dist = {origin: 0}
    queue = [origin]
    for v in queue:
        if v in defect:
            return dist[v]
        for u in adjacency[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    raise CellError("no defect vertex reachable; approximant malformed")


def blowup(
    g: CellGraph,
    k: int,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    origin_copies: int = 1,
    randomize_identification: int | None = None,
) -> Approximant:
    """Level-k approximant with the origin at vertex 0.

    Each refinement replaces every clique by a fresh cell copy whose
    boundary is identified with the clique's vertices, smallest id first.
    randomize_identification, when given a seed, shuffles that bijection
    per clique instead; boundary symmetry makes the resulting walk
    probabilities identical, which tests confirm.  origin_copies > 1 glues
    extra disjoint copies at the origin (the walk probabilities again must
    not change).
    """
    if k < 1:
        raise CellError("level must be at least 1")
    if origin_copies < 1:
        raise CellError("need at least one copy at the origin")
    report = require_valid(g, check_automorphisms=False)
    theta = g.theta
    mu = report.mu
    edge_cost = origin_copies * mu**k * theta * (theta - 1) // 2
    if edge_cost > edge_budget:
        raise BudgetError(
            f"level {k} needs {edge_cost} edges, budget is {edge_budget}"
        )

    rng = (
        random.Random(randomize_identification)
        if randomize_identification is not None
        else None
    )
    base_cliques = [tuple(sorted(c)) for c in clique_partition(g)]
    cell_interior = list(g.interior)

    cliques = list(base_cliques)
    next_id = g.n
    for _ in range(k - 1):
        refined = []
        for cl in cliques:
            members = list(cl)
            if rng is not None:
                rng.shuffle(members)
            vmap = dict(zip(range(theta), members))
            for v in cell_interior:
                vmap[v] = next_id
                next_id += 1
            for base in base_cliques:
                refined.append(tuple(sorted(vmap[v] for v in base)))
        cliques = refined

    # Non-origin vertex count of one copy; copies share vertex 0 only.
    block = next_id - 1
    if origin_copies > 1:
        single = list(cliques)
        for c in range(1, origin_copies):
            off = c * block
            for cl in single:
                cliques.append(
                    tuple(sorted(v if v == 0 else v + off for v in cl))
                )
        next_id += (origin_copies - 1) * block

    nbrs: list[set[int]] = [set() for _ in range(next_id)]
    for cl in cliques:
        for i in range(theta):
            for j in range(i + 1, theta):
                nbrs[cl[i]].add(cl[j])
                nbrs[cl[j]].add(cl[i])
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)

    # Defect vertices are the non-origin boundary ids of every top-level
    # copy: in the infinite graph they would be glued into further copies,
    # so their approximant degree is too small.
    defect = set()
    for c in range(origin_copies):
        for b in range(1, theta):
            defect.add(b + c * block)
    defect_f = frozenset(defect)
    horizon = 2 * _distance_to_defect(adjacency, 0, defect_f) - 1
    return Approximant(
        level=k,
        origin=0,
        adjacency=adjacency,
        defect_set=defect_f,
        safe_horizon=horizon,
        cell_name=g.name,
    )


def approximant_to_text(a: Approximant) -> str:
    lines = [f"vertices {a.num_vertices}", f"origin {a.origin}"]
    for v, nbrs in enumerate(a.adjacency):
        for u in nbrs:
            if v < u:
                lines.append(f"edge {v} {u}")
    return "\n".join(lines) + "\n"


# -- exact oracle ---------------------------------------------------------------


@dataclass(frozen=True)
class ReturnProbs:
    probs: tuple[Fraction, ...]
    safe_horizon: int

    @property
    def approximant_only_from(self) -> int | None:
        """First step count not covered by the infinite-graph guarantee."""
        if len(self.probs) - 1 <= self.safe_horizon:
            return None
        return self.safe_horizon + 1


def exact_return_probs(a: Approximant, n_max: int) -> ReturnProbs:
    """p^(n)(origin, origin) for n = 0..n_max, exactly.

    A closed walk of length n stays within distance n // 2 of the origin,
    so the computation is restricted to that ball; probability mass that
    steps outside can never return in time and is dropped.  Scaling by the
    lcm of the ball degrees keeps the iteration in integers.
    """
    radius = n_max // 2
    dist = {a.origin: 0}
    order = [a.origin]
    for v in order:
        if dist[v] == radius:
            continue
        for u in a.adjacency[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                order.append(u)
    index = {v: i for i, v in enumerate(order)}
    degs = [a.degree(v) for v in order]
    scale = math.lcm(*degs) if degs else 1
    weight = [scale // d for d in degs]
    targets: list[list[int]] = []
    for v in order:
        targets.append([index[u] for u in a.adjacency[v] if u in index])

    vec = [0] * len(order)
    vec[0] = 1
    probs = [Fraction(1)]
    for n in range(1, n_max + 1):
        nxt = [0] * len(order)
        for i, val in enumerate(vec):
            if not val:
                continue
            w = val * weight[i]
            for j in targets[i]:
                nxt[j] += w
        vec = nxt
        probs.append(Fraction(vec[0], scale**n))
    return ReturnProbs(probs=tuple(probs), safe_horizon=a.safe_horizon)


# -- Monte Carlo oracle -----------------------------------------------------------


@dataclass(frozen=True)
class WalkStats:
    n: int
    trials: int
    hits: int
    estimate: Fraction
    std_err: float
    seed: int
    workers: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "hits": self.hits,
            "estimate": str(self.estimate),
            "estimate_approx": float(self.estimate),
            "std_err": self.std_err,
            "seed": self.seed,
            "workers": self.workers,
        }


def monte_carlo(
    a: Approximant,
    n: int,
    trials: int,
    seed: int,
    workers: int = 1,
    chunk: int = 1 << 18,
) -> WalkStats:
    """Estimate p^(n)(origin, origin) by seeded vectorized simulation.

    One PCG64 stream per worker, spawned from the master seed, with the
    trial count split evenly (remainder to the first workers).  Results
    are bit-for-bit reproducible for a fixed (seed, workers) pair.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if workers < 1:
        raise ValueError("need at least one worker")
    max_deg = max(len(nb) for nb in a.adjacency)
    deg = np.array([len(nb) for nb in a.adjacency], dtype=np.int64)
    nbr = np.zeros((a.num_vertices, max_deg), dtype=np.int64)
    for v, nb in enumerate(a.adjacency):
        nbr[v, : len(nb)] = nb

    streams = np.random.SeedSequence(seed).spawn(workers)
    base, rem = divmod(trials, workers)
    hits = 0
    for w in range(workers):
        todo = base + (1 if w < rem else 0)
        rng = np.random.Generator(np.random.PCG64(streams[w]))
        while todo > 0:
            batch = min(todo, chunk)
            todo -= batch
            pos = np.full(batch, a.origin, dtype=np.int64)
            for _ in range(n):
                step = rng.integers(0, deg[pos])
                pos = nbr[pos, step]
            hits += int(np.count_nonzero(pos == a.origin))
    estimate = Fraction(hits, trials)
    p = hits / trials
    std_err = math.sqrt(p * (1 - p) / trials)
    return WalkStats(
        n=n,
        trials=trials,
        hits=hits,
        estimate=estimate,
        std_err=std_err,
        seed=seed,
        workers=workers,
    )


def sufficient_level(g: CellGraph, n_max: int, edge_budget: int = DEFAULT_EDGE_BUDGET) -> int:
    """Smallest level whose safe horizon covers walks of length n_max.

    The origin-to-boundary distance scales by the cell's boundary distance
    at every refinement, so the needed level is logarithmic in n_max.  The
    estimate is confirmed by building the approximant; the loop exists for
    safety, not as a search.
    """
    d_cell = g.bfs_distances(0)[1]
    level = 1
    reach = d_cell
    while 2 * reach - 1 < n_max:
        level += 1
        reach *= d_cell
    for k in range(level, level + 3):
        a = blowup(g, k, edge_budget=edge_budget)
        if a.safe_horizon >= n_max:
            return k
    raise CellError("could not reach the requested horizon within budget")
