"""Greedy and local-search maximizers plus brute-force oracles.

Both algorithms are fully deterministic: argmax ties break toward the
smallest element index, and local search applies the first improving swap in
a fixed scan order.  Brute-force enumeration provides exact optima for
ground-truth comparison on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .core import (
    MONOTONE,
    NONNEGATIVE,
    NORMALIZED,
    CapExceeded,
    SetFunction,
    Subset,
    Value,
)
from .matroid import BRUTE_FORCE_MATROID_CAP, Matroid

BRUTE_FORCE_CARDINALITY_CAP = 22

_SOLVER_PRECONDITIONS = {NORMALIZED, NONNEGATIVE, MONOTONE}


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solver run; ``value`` equals the oracle at ``selected`` bit-exactly."""

    selected: Subset
    value: Value
    iterations: int
    trace: tuple
    certificate: dict


@dataclass(frozen=True)
class OptResult:
    """Exact optimum from enumeration; dominates every feasible set by construction."""

    optimum: Subset
    value: Value
    enumerated: int


def _check_solver_claims(f: SetFunction, algorithm: str) -> None:
    # Builders that assert claims must assert the solver preconditions; an
    # empty claim set means "unknown" and is the caller's responsibility.
    if f.claims and not _SOLVER_PRECONDITIONS <= f.claims:
        missing = sorted(_SOLVER_PRECONDITIONS - f.claims)
        raise ValueError(f"{algorithm} requires claims {missing}, which {f.name} does not assert")


def greedy_cardinality(f: SetFunction, p: int) -> SolveResult:
    """Pick p elements, each round adding the largest marginal gain.

    Ties break toward the smallest index.  ``p`` beyond the ground size is an
    error rather than a clamp.
    """
    n = f.ground.n
    if p < 0:
        raise ValueError("p must be nonnegative")
    if p > n:
        raise ValueError(f"p = {p} exceeds ground size {n}")
    _check_solver_claims(f, "greedy")

    mask = 0
    trace = []
    for step in range(1, p + 1):
        base = f.value(mask)
        best_gain = None
        best_e = None
        for e in range(n):
            if mask >> e & 1:
                continue
            gain = f.value(mask | (1 << e)) - base
            if best_gain is None or gain > best_gain:
                best_gain, best_e = gain, e
        mask |= 1 << best_e
        trace.append((step, f.ground.label(best_e), f.value(mask)))

    selected = Subset(f.ground, mask)
    return SolveResult(
        selected=selected,
        value=f.value(mask),
        iterations=p,
        trace=tuple(trace),
        certificate={
            "algorithm": "greedy_cardinality",
            "p": p,
            "tie_break": "smallest-index",
            "deterministic": True,
        },
    )


def _greedy_basis(f: SetFunction, matroid: Matroid, start_mask: int) -> int:
    """Complete a mask to a basis by best-marginal-gain feasible additions."""
    mask = start_mask
    n = f.ground.n
    while mask.bit_count() < matroid.rank:
        base = f.value(mask)
        best_gain = None
        best_e = None
        for e in range(n):
            if mask >> e & 1 or not matroid.is_independent_mask(mask | (1 << e)):
                continue
            gain = f.value(mask | (1 << e)) - base
            if best_gain is None or gain > best_gain:
                best_gain, best_e = gain, e
        if best_e is None:
            raise RuntimeError("independence oracle inconsistent: basis unreachable")
        mask |= 1 << best_e
    return mask


def local_search_matroid(
    f: SetFunction,
    matroid: Matroid,
    init: Optional[Subset] = None,
    epsilon: Value = 0,
    max_iters: Optional[int] = None,
) -> SolveResult:
    """Oblivious single-swap local search over matroid bases.

    Starting from ``init`` (extended to a basis; default: a greedy basis),
    repeatedly apply the first swap (u in, v out) in ascending (u, v) order
    that keeps a basis and improves the value beyond (1 + epsilon) times the
    current one.  With epsilon = 0 the result is a true local optimum;
    epsilon > 0 trades the guarantee's tightness for a polynomial pass count
    on large instances.
    """
    if f.ground != matroid.ground:
        raise ValueError("function and matroid must share a ground set")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    _check_solver_claims(f, "local search")

    if init is None:
        mask = _greedy_basis(f, matroid, 0)
    else:
        if not matroid.is_independent(init):
            raise ValueError("init must be independent")
        mask = _greedy_basis(f, matroid, init.mask)

    n = f.ground.n
    trace = [(0, None, f.value(mask))]
    swaps = 0
    while max_iters is None or swaps < max_iters:
        current = f.value(mask)
        bar = current + epsilon * current
        found = False
        for u in range(n):
            if mask >> u & 1:
                continue
            with_u = mask | (1 << u)
            for v in range(n):
                if not mask >> v & 1:
                    continue
                candidate = with_u & ~(1 << v)
                if not matroid.is_independent_mask(candidate):
                    continue
                if f.value(candidate) > bar:
                    mask = candidate
                    swaps += 1
                    trace.append(
                        (swaps, (f.ground.label(u), f.ground.label(v)), f.value(mask))
                    )
                    found = True
                    break
            if found:
                break
        if not found:
            break

    selected = Subset(f.ground, mask)
    return SolveResult(
        selected=selected,
        value=f.value(mask),
        iterations=swaps,
        trace=tuple(trace),
        certificate={
            "algorithm": "local_search_matroid",
            "epsilon": epsilon,
            "max_iters": max_iters,
            "init": "greedy-basis" if init is None else "caller-extended",
            "scan": "first-improvement, u then v ascending",
            "deterministic": True,
        },
    )


def brute_force_cardinality(
    f: SetFunction,
    p: int,
    *,
    exact_size: bool = False,
    cap: int = BRUTE_FORCE_CARDINALITY_CAP,
) -> OptResult:
    """Exact maximum over all sets of size <= p (or exactly p).

    For monotone functions the two modes agree at the optimum.  Enumeration
    order is by size then lexicographic index tuples; the first maximizer
    encountered is kept.
    """
    n = f.ground.n
    if not 0 <= p <= n:
        raise ValueError(f"p must be in 0..{n}")
    if n > cap:
        raise CapExceeded(f"brute force capped at n <= {cap}")
    sizes = [p] if exact_size else range(p + 1)
    best_mask = None
    best = None
    enumerated = 0
    for size in sizes:
        for idx in combinations(range(n), size):
            mask = 0
            for i in idx:
                mask |= 1 << i
            enumerated += 1
            v = f.value(mask)
            if best is None or v > best:
                best, best_mask = v, mask
    return OptResult(Subset(f.ground, best_mask), best, enumerated)


def brute_force_matroid(
    f: SetFunction,
    matroid: Matroid,
    *,
    cap: int = BRUTE_FORCE_MATROID_CAP,
) -> OptResult:
    """Exact maximum of f over the bases of a matroid (ascending mask order)."""
    if f.ground != matroid.ground:
        raise ValueError("function and matroid must share a ground set")
    if f.ground.n > cap and matroid.kind != "explicit":
        raise CapExceeded(f"brute force capped at n <= {cap}")
    best_mask = None
    best = None
    enumerated = 0
    for mask in matroid.bases():
        enumerated += 1
        v = f.value(mask)
        if best is None or v > best:
            best, best_mask = v, mask
    if best_mask is None:
        raise ValueError("matroid has no basis")
    return OptResult(Subset(f.ground, best_mask), best, enumerated)
