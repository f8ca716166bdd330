"""Builders for the function families with known class membership.

Each builder returns a ``SetFunction`` whose ``claims`` record what the
construction guarantees.  Integer inputs stay in integer arithmetic, so the
classic counterexample values reproduce exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from random import Random
from typing import Hashable, Iterable, Sequence

from .core import (
    MONOTONE,
    NONNEGATIVE,
    NORMALIZED,
    SUBMODULAR,
    WEAKLY_SUBMODULAR,
    GroundSet,
    SetFunction,
    Value,
    cardinality_profile,
)


@dataclass(frozen=True)
class DistanceMatrix:
    """A symmetric nonnegative matrix with zero diagonal satisfying the triangle inequality."""

    d: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        d = tuple(tuple(row) for row in self.d)
        object.__setattr__(self, "d", d)
        n = len(d)
        if any(len(row) != n for row in d):
            raise ValueError("distance matrix must be square")
        for i in range(n):
            if d[i][i] != 0:
                raise ValueError("distance matrix must have zero diagonal")
            for j in range(i + 1, n):
                if d[i][j] != d[j][i]:
                    raise ValueError("distance matrix must be symmetric")
                if d[i][j] < 0:
                    raise ValueError("distances must be nonnegative")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][j] > d[i][k] + d[k][j]:
                        raise ValueError(
                            f"triangle inequality fails on ({i},{j},{k}): "
                            f"{d[i][j]} > {d[i][k]} + {d[k][j]}"
                        )

    @property
    def n(self) -> int:
        return len(self.d)

    @classmethod
    def unit(cls, n: int) -> "DistanceMatrix":
        return cls(tuple(tuple(0 if i == j else 1 for j in range(n)) for i in range(n)))


def random_metric(n: int, seed_or_rng, high: int = 9) -> DistanceMatrix:
    """A random integer metric via shortest-path completion of a random symmetric matrix.

    Running all-pairs shortest paths on arbitrary nonnegative edge lengths
    guarantees the triangle inequality without rejection sampling.
    """
    rng = seed_or_rng if isinstance(seed_or_rng, Random) else Random(seed_or_rng)
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(1, high)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            row = d[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < row[j]:
                    row[j] = alt
    return DistanceMatrix(tuple(tuple(row) for row in d))


@dataclass(frozen=True)
class SegmentationMatrix:
    """An items-by-individuals score matrix where every row sums to >= 0."""

    m: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.m)
        object.__setattr__(self, "m", m)
        if not m:
            raise ValueError("segmentation matrix needs at least one row")
        width = len(m[0])
        if any(len(row) != width for row in m):
            raise ValueError("segmentation matrix rows must have equal length")
        for i, row in enumerate(m):
            if sum(row) < 0:
                raise ValueError(f"row {i} sums to {sum(row)} < 0 (average non-negativity)")

    @property
    def rows(self) -> int:
        return len(self.m)

    @property
    def cols(self) -> int:
        return len(self.m[0])


def random_segmentation(
    rows: int, cols: int, seed_or_rng, low: int = -4, high: int = 9
) -> SegmentationMatrix:
    """Random integer matrix with each row redrawn until its sum is nonnegative."""
    rng = seed_or_rng if isinstance(seed_or_rng, Random) else Random(seed_or_rng)
    out = []
    for _ in range(rows):
        while True:
            row = [rng.randint(low, high) for _ in range(cols)]
            if sum(row) >= 0:
                out.append(tuple(row))
                break
    return SegmentationMatrix(tuple(out))


@dataclass(frozen=True)
class Graph:
    """Undirected graph with nonnegative edge weights and no self-loops."""

    n_vertices: int
    edges: tuple[tuple[int, int, Value], ...]

    def __post_init__(self):
        edges = tuple((u, v, w) for (u, v, w) in self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v, w in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError(f"edge ({u},{v}) endpoint out of range")
            if w < 0:
                raise ValueError("edge weights must be nonnegative")


def linear(weights: Sequence[Value], labels: Sequence[Hashable] | None = None) -> SetFunction:
    """f(S) = sum of per-element weights; modular, hence in every class here."""
    weights = tuple(weights)
    if any(w < 0 for w in weights):
        raise ValueError("linear weights must be nonnegative")
    ground = GroundSet(tuple(labels) if labels is not None else tuple(range(len(weights))))
    if ground.n != len(weights):
        raise ValueError("one weight per ground element required")

    def ev(mask: int) -> Value:
        return sum(w for i, w in enumerate(weights) if mask >> i & 1)

    return SetFunction(
        ground,
        ev,
        name="linear",
        claims={NORMALIZED, NONNEGATIVE, MONOTONE, SUBMODULAR, WEAKLY_SUBMODULAR},
    )


def coverage(
    covers: Sequence[Iterable[Hashable]],
    weights: dict | None = None,
    labels: Sequence[Hashable] | None = None,
) -> SetFunction:
    """Weighted coverage: f(S) = weight of the union of the items covered by S.

    ``covers[i]`` lists the items ground element i covers; ``weights`` maps
    item -> weight (default 1 each).  Referencing an item missing from an
    explicit weights table is an error.
    """
    item_sets = [frozenset(c) for c in covers]
    items = sorted({x for c in item_sets for x in c}, key=repr)
    if weights is None:
        weights = {x: 1 for x in items}
    else:
        dangling = [x for x in items if x not in weights]
        if dangling:
            raise ValueError(f"covered items missing from weight table: {dangling}")
    ground = GroundSet(tuple(labels) if labels is not None else tuple(range(len(item_sets))))
    if ground.n != len(item_sets):
        raise ValueError("one cover set per ground element required")

    def ev(mask: int) -> Value:
        hit = set()
        for i, c in enumerate(item_sets):
            if mask >> i & 1:
                hit |= c
        return sum(weights[x] for x in hit)

    return SetFunction(
        ground,
        ev,
        name="coverage",
        claims={NORMALIZED, NONNEGATIVE, MONOTONE, SUBMODULAR, WEAKLY_SUBMODULAR},
    )


def random_coverage(n: int, seed_or_rng, n_items: int = 8, max_weight: int = 5) -> SetFunction:
    rng = seed_or_rng if isinstance(seed_or_rng, Random) else Random(seed_or_rng)
    covers = [
        [j for j in range(n_items) if rng.random() < 0.4] or [rng.randrange(n_items)]
        for _ in range(n)
    ]
    weights = {j: rng.randint(1, max_weight) for j in range(n_items)}
    return coverage(covers, weights)


def metric_dispersion(dist: DistanceMatrix) -> SetFunction:
    """Sum of pairwise distances within S; monotone and weakly submodular but
    supermodular, so no submodularity claim."""
    d = dist.d
    ground = GroundSet.of_size(dist.n)

    def ev(mask: int) -> Value:
        idx = [i for i in range(dist.n) if mask >> i & 1]
        return sum(d[u][v] for u, v in combinations(idx, 2))

    return SetFunction(
        ground,
        ev,
        name="dispersion",
        claims={NORMALIZED, NONNEGATIVE, MONOTONE, WEAKLY_SUBMODULAR},
    )


def cross_dispersion(dist: DistanceMatrix, s_indices, t_indices) -> Value:
    """Bipartite distance sum between two disjoint index sets."""
    s, t = set(s_indices), set(t_indices)
    if s & t:
        raise ValueError("cross dispersion requires disjoint sets")
    d = dist.d
    return sum(d[u][v] for u in s for v in t)


def segmentation(matrix: SegmentationMatrix) -> SetFunction:
    """Column-wise best-row sum over the chosen rows, with value 0 on the empty set."""
    m = matrix.m
    cols = matrix.cols
    ground = GroundSet.of_size(matrix.rows)

    def ev(mask: int) -> Value:
        if mask == 0:
            return 0
        idx = [i for i in range(matrix.rows) if mask >> i & 1]
        return sum(max(m[i][j] for i in idx) for j in range(cols))

    return SetFunction(
        ground,
        ev,
        name="segmentation",
        claims={NORMALIZED, NONNEGATIVE, MONOTONE, WEAKLY_SUBMODULAR},
    )


def cardinality_power(k: int, n: int) -> SetFunction:
    """f(S) = |S| ** k for k in 0..3; higher powers are refused by construction.

    Use ``raw_cardinality_profile`` to study what goes wrong for k >= 4.
    """
    if not 0 <= k <= 3:
        raise ValueError("cardinality_power allows only k in 0..3")
    claims = {NONNEGATIVE, MONOTONE, WEAKLY_SUBMODULAR}
    if k >= 1:
        claims.add(NORMALIZED)
    if k <= 1:
        claims.add(SUBMODULAR)
    ground = GroundSet.of_size(n)
    return SetFunction(ground, lambda mask: mask.bit_count() ** k, name=f"card^{k}", claims=claims)


def cardinality_polynomial(coeffs: Sequence[Value], n: int) -> SetFunction:
    """f(S) = p(|S|) for a polynomial with nonnegative coefficients, zero
    constant term, and degree at most 3."""
    coeffs = tuple(coeffs)
    if len(coeffs) > 4:
        raise ValueError("cardinality polynomials of degree >= 4 are refused")
    if coeffs and coeffs[0] != 0:
        raise ValueError("constant term must be zero (normalization)")
    if any(c < 0 for c in coeffs):
        raise ValueError("coefficients must be nonnegative")
    prof = cardinality_profile(coeffs)
    claims = {NORMALIZED, NONNEGATIVE, MONOTONE, WEAKLY_SUBMODULAR}
    if all(c == 0 for c in coeffs[2:]):
        claims.add(SUBMODULAR)
    ground = GroundSet.of_size(n)
    return SetFunction(ground, lambda mask: prof(mask.bit_count()), name="card_poly", claims=claims)


def raw_cardinality_profile(k_or_coeffs, n: int) -> SetFunction:
    """Unchecked cardinality-only function for counterexample studies; claims nothing."""
    prof = cardinality_profile(k_or_coeffs)
    ground = GroundSet.of_size(n)
    return SetFunction(ground, lambda mask: prof(mask.bit_count()), name="card_profile")


def threshold(k: int, bonus: Value, n: int) -> SetFunction:
    """f(S) = bonus when |S| >= k, else 0.  Weak submodularity holds exactly
    for k <= 2; k >= 3 breaks on any universe of size >= k."""
    if k < 1:
        raise ValueError("threshold requires k >= 1")
    if not bonus > 0:
        raise ValueError("threshold bonus must be positive")
    claims = {NORMALIZED, NONNEGATIVE, MONOTONE}
    if k <= 2:
        claims.add(WEAKLY_SUBMODULAR)
    if k == 1:
        claims.add(SUBMODULAR)
    ground = GroundSet.of_size(n)
    zero = 0 * bonus  # matches the arithmetic type of bonus
    return SetFunction(
        ground,
        lambda mask: bonus if mask.bit_count() >= k else zero,
        name=f"threshold(k={k})",
        claims=claims,
    )


def linear_combination(fs: Sequence[SetFunction], alphas: Sequence[Value]) -> SetFunction:
    """g(S) = sum alpha_i * f_i(S).  Nonnegative combinations preserve every
    claim shared by all inputs."""
    fs = list(fs)
    alphas = list(alphas)
    if len(fs) != len(alphas):
        raise ValueError("one coefficient per function required")
    if not fs:
        raise ValueError("need at least one function")
    if any(a < 0 for a in alphas):
        raise ValueError("combination coefficients must be nonnegative")
    ground = fs[0].ground
    if any(f.ground != ground for f in fs):
        raise ValueError("all combined functions must share a ground set")
    claims = frozenset.intersection(*(f.claims for f in fs))

    def ev(mask: int) -> Value:
        return sum(a * f.value(mask) for a, f in zip(alphas, fs))

    return SetFunction(ground, ev, name="combination", claims=claims)


def msd_objective(quality: SetFunction, dist: DistanceMatrix) -> SetFunction:
    """Quality-plus-diversity objective: g(S) + sum of pairwise distances in S."""
    return linear_combination([quality, metric_dispersion(dist)], [1, 1])


def complement(f: SetFunction) -> SetFunction:
    """f_bar(S) = f(U - S).  Claims nothing; class membership is for the caller
    to check (it generally does not survive complementation)."""
    full = f.ground.full_mask
    return SetFunction(f.ground, lambda mask: f.value(full ^ mask), name=f"complement({f.name})")


def zero_at_top(f: SetFunction) -> SetFunction:
    """Identical to f except the full set maps to 0.

    Kills monotonicity whenever f is positive somewhere, yet the weak
    submodularity inequality survives: pairs that involve the full set either
    reduce to identities or only lose rhs mass.
    """
    full = f.ground.full_mask
    claims = f.claims & {NORMALIZED, NONNEGATIVE, WEAKLY_SUBMODULAR}

    def ev(mask: int) -> Value:
        return 0 if mask == full else f.value(mask)

    return SetFunction(f.ground, ev, name=f"zero_at_top({f.name})", claims=claims)


def max_cut(graph: Graph) -> SetFunction:
    """Total weight of edges crossing (S, V - S); an intentionally non-monotone
    fixture, so it claims only normalization and nonnegativity."""
    edges = graph.edges
    ground = GroundSet.of_size(graph.n_vertices)

    def ev(mask: int) -> Value:
        return sum(w for (u, v, w) in edges if (mask >> u & 1) != (mask >> v & 1))

    return SetFunction(ground, ev, name="max_cut", claims={NORMALIZED, NONNEGATIVE})


def star_counterexample(n: int) -> Graph:
    """The two-hub gadget: hub vertices s=n and t=n+1 each joined to all of
    0..n-1 by unit edges.  Cutting around the hubs breaks weak submodularity."""
    if n < 1:
        raise ValueError("gadget needs at least one spoke")
    s, t = n, n + 1
    edges = tuple((s, u, 1) for u in range(n)) + tuple((u, t, 1) for u in range(n))
    return Graph(n + 2, edges)


def supermodular_pair(bonus: Value) -> SetFunction:
    """On ground {a1, a2, b}: f(S) = bonus exactly when both a1 and a2 are in S.

    The smallest function with one supermodular dependency; it already fails
    weak submodularity.
    """
    if not bonus > 0:
        raise ValueError("bonus must be positive")
    ground = GroundSet(("a1", "a2", "b"))
    zero = 0 * bonus
    return SetFunction(
        ground,
        lambda mask: bonus if mask & 0b011 == 0b011 else zero,
        name="supermodular_pair",
        claims={NORMALIZED, NONNEGATIVE, MONOTONE},
    )


@dataclass(frozen=True)
class WelfareInstance:
    """Agents with normalized valuation oracles over one shared item universe."""

    valuations: tuple[SetFunction, ...]

    def __post_init__(self):
        vals = tuple(self.valuations)
        object.__setattr__(self, "valuations", vals)
        if not vals:
            raise ValueError("need at least one agent")
        ground = vals[0].ground
        if any(v.ground != ground for v in vals):
            raise ValueError("valuations must share the item universe")
        for i, v in enumerate(vals):
            if v.value(0) != 0:
                raise ValueError(f"valuation {i} is not normalized: v(empty) = {v.value(0)}")

    @property
    def items(self) -> GroundSet:
        return self.valuations[0].ground

    @property
    def n_agents(self) -> int:
        return len(self.valuations)


def welfare_reduction(instance: WelfareInstance):
    """Lift welfare maximization to one set function under a partition matroid.

    The lifted universe is (agent, item) pairs, agent-major; f'(S') sums each
    agent's valuation of its own slice, and each item contributes one block
    with capacity 1 (an item goes to at most one agent).

    The lifted function claims weak submodularity only when every valuation is
    monotone submodular: the per-agent slice of a submodular monotone
    valuation stays submodular and monotone on the lifted universe, and those
    two properties imply weak submodularity there.  Merely weakly submodular
    valuations do not survive the lift (valuations with zero singletons such
    as dispersion give immediate counterexamples).
    """
    from .matroid import Matroid  # local import to avoid a cycle

    items = instance.items
    n_agents = instance.n_agents
    m = items.n
    labels = tuple((a, u) for a in range(n_agents) for u in items.elements)
    lifted = GroundSet(labels)
    slice_mask = (1 << m) - 1

    def ev(mask: int) -> Value:
        return sum(
            v.value((mask >> (a * m)) & slice_mask) for a, v in enumerate(instance.valuations)
        )

    claims = {NORMALIZED, NONNEGATIVE}
    shared = frozenset.intersection(*(v.claims for v in instance.valuations))
    if MONOTONE in shared:
        claims.add(MONOTONE)
    if {MONOTONE, SUBMODULAR} <= shared:
        claims |= {SUBMODULAR, WEAKLY_SUBMODULAR}

    welfare = SetFunction(lifted, ev, name="welfare", claims=claims)
    blocks = [
        tuple((a, u) for a in range(n_agents)) for u in items.elements
    ]
    matroid = Matroid.partition(lifted, blocks, [1] * m)
    return welfare, matroid
