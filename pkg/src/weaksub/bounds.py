"""Closed-form approximation bounds for the greedy and local-search guarantees.

Every formula has a float fast path and an exact ``Fraction`` path
(``exact=True``); the float path never materializes the huge powers directly,
so it stays finite out to arbitrary parameter sizes, while the exact path is
practical up to roughly p = 32 and serves as a cross-check.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .core import Value

_LOG_OVERFLOW = 700.0  # beyond exp overflow; terms degenerate gracefully


def _growth(i: int, exact: bool):
    """The per-step growth factor (i+1)/i in the requested arithmetic."""
    return Fraction(i + 1, i) if exact else (i + 1) / i


def geometric_identity(i: int, n: int, exact: bool = False):
    """Left and right sides of the geometric-sum identity

        sum_{j=1..n} x^(j-1) = i x^n - i,   x = (i+1)/i.

    Returns the pair; the two sides agree to 1e-12 relative in float mode and
    exactly in rational mode.
    """
    if i < 1 or n < 1:
        raise ValueError("need i >= 1 and n >= 1")
    x = _growth(i, exact)
    lhs = sum(x ** (j - 1) for j in range(1, n + 1))
    rhs = i * x**n - i
    return lhs, rhs


def weighted_geometric_identity(i: int, n: int, exact: bool = False):
    """Left and right sides of the differentiated geometric identity

        sum_{j=1..n} j x^(j-1) = n i^2 x^(n+1) - (n+1) i^2 x^n + i^2,
        x = (i+1)/i.
    """
    if i < 1 or n < 1:
        raise ValueError("need i >= 1 and n >= 1")
    x = _growth(i, exact)
    lhs = sum(j * x ** (j - 1) for j in range(1, n + 1))
    rhs = n * i**2 * x ** (n + 1) - (n + 1) * i**2 * x**n + i**2
    return lhs, rhs


def _require_chain_index(i: int, p: int) -> None:
    if p < 2:
        raise ValueError("need p >= 2")
    if not 1 <= i <= p - 1:
        raise ValueError(f"chain index i must be in 1..{p - 1}")


def a_star(i: int, p: int, exact: bool = False):
    """Closed form 2 i^2 ((i+1)/i)^p - 2 i^2 - i p of the step-i chain coefficient."""
    _require_chain_index(i, p)
    x = _growth(i, exact)
    return 2 * i * i * x**p - 2 * i * i - i * p


def b_star(i: int, p: int, exact: bool = False):
    """Companion coefficient; identically a_star(i, p) - i."""
    return a_star(i, p, exact) - i


def a_star_from_sum(i: int, p: int, exact: bool = False):
    """Defining sum of a_star: sum_{j=1..p} (i + p - j) ((i+1)/i)^(j-1)."""
    _require_chain_index(i, p)
    x = _growth(i, exact)
    return sum((i + p - j) * x ** (j - 1) for j in range(1, p + 1))


def b_star_from_sum(i: int, p: int, exact: bool = False):
    """Defining sum of b_star: sum_{j=1..p-1} (i + p - j + 1) ((i+1)/i)^(j-1)."""
    _require_chain_index(i, p)
    x = _growth(i, exact)
    return sum((i + p - j + 1) * x ** (j - 1) for j in range(1, p))


def _chain_term_ratios(i: int, p: int) -> tuple[float, float]:
    """(i / a_star_i, b_star_i / a_star_i) without overflowing on huge powers.

    Uses a_star/i = 2 i expm1(p log1p(1/i)) - p; once the power exceeds float
    range the pair degenerates to (0, 1), which is exact to double precision.
    """
    log_power = p * math.log1p(1.0 / i)
    if log_power > _LOG_OVERFLOW:
        return 0.0, 1.0
    scaled = 2.0 * i * math.expm1(log_power) - p  # a_star / i
    inv = 1.0 / scaled
    return inv, 1.0 - inv


def greedy_ratio(p: int, exact: bool = False, from_sums: bool = False):
    """Worst-case OPT/greedy bound for a cardinality constraint of p.

    Evaluates the telescoped chain bound

        ( sum_{i=1..p-1} (i / a*_i) prod_{j=i+1..p-1} (b*_j / a*_j) )^(-1)

    accumulating the product as ratios in (0, 1) for stability.  The exact
    rational mode reproduces the float value to full precision and is
    affordable up to about p = 32; ``from_sums`` swaps the closed forms for
    their defining sums as an independent route to the same value.
    """
    if p < 2:
        raise ValueError("need p >= 2")
    if exact or from_sums:
        total = Fraction(0) if exact else 0.0
        prod = Fraction(1) if exact else 1.0
        a_of = a_star_from_sum if from_sums else a_star
        b_of = b_star_from_sum if from_sums else b_star
        for i in range(p - 1, 0, -1):
            a = a_of(i, p, exact)
            b = b_of(i, p, exact)
            total += (Fraction(i) if exact else i) / a * prod
            prod *= b / a
        return 1 / total
    total = 0.0
    prod = 1.0
    for i in range(p - 1, 0, -1):
        inv_a, ratio = _chain_term_ratios(i, p)
        total += inv_a * prod
        prod *= ratio
    return 1.0 / total


def ls_discrete_bound(s: int, t: int, exact: bool = False):
    """Local-search bound before the continuous relaxation, for basis size s
    and exchange count t in 2..s:

        (2 s y^2 - 2 t y - 2 s) / ((2 s - t) y - 2 s),   y = ((s+1)/s)^t.

    The denominator is provably positive on the stated range and is asserted.
    """
    if not 2 <= t <= s:
        raise ValueError("need 2 <= t <= s")
    y = _growth(s, exact) ** t
    num = 2 * s * y * y - 2 * t * y - 2 * s
    den = (2 * s - t) * y - 2 * s
    if not den > 0:
        raise ArithmeticError(f"nonpositive denominator at s={s}, t={t}")
    return num / den


def ls_bound(s: int, exact: bool = False):
    """Worst-case OPT/local-search bound for a matroid of rank s: the maximum
    of ls_discrete_bound(s, t) over t in 2..s (scanned, not assumed at t=s)."""
    t, value = ls_bound_argmax(s, exact)
    return value


def ls_bound_argmax(s: int, exact: bool = False):
    """(argmax t, max value) of the discrete local-search bound over t in 2..s."""
    if s < 2:
        raise ValueError("need s >= 2")
    best_t, best = None, None
    for t in range(2, s + 1):
        v = ls_discrete_bound(s, t, exact)
        if best is None or v > best:
            best_t, best = t, v
    return best_t, best


_X_LOWER = 2.25
_X_UPPER = math.e


def _g_raw(x, r):
    """g(x, r) with only the well-definedness constraint (positive denominator)."""
    num = 2 * x ** (2 * r) - 2 * r * x**r - 2
    den = (2 - r) * x**r - 2
    if not den > 0:
        raise ValueError(f"denominator (2-r) x^r - 2 not positive at x={x}, r={r}")
    return num / den


def g_continuous(x, r):
    """The continuous relaxation g(x, r) = (2 x^(2r) - 2 r x^r - 2) / ((2-r) x^r - 2).

    Domain: 2.25 <= x <= e and 0 < r <= 1, where x stands in for
    ((s+1)/s)^s and r for t/s.  Integer r keeps exact operands exact.
    """
    if not 0 < r <= 1:
        raise ValueError("need 0 < r <= 1")
    if not _X_LOWER <= x <= _X_UPPER + 1e-12:
        raise ValueError(f"x = {x} outside [{_X_LOWER}, e]")
    return _g_raw(x, r)


def g_stationary(r):
    """Interior stationary point of g in x and its value, in closed form:

        x* = ((2+r)/(2-r))^(1/r),     g(x*, r) = (2 r^2 + 8) / (r - 2)^2.

    The closed-form value is re-derived by direct evaluation of g at x* and
    must agree to 1e-9 relative (exactly for integer r, where x* is rational).
    """
    if not 0 < r <= 1:
        raise ValueError("need 0 < r <= 1")
    exact = isinstance(r, Rational) and Fraction(r).denominator == 1
    if exact:
        # The only integer r in (0, 1] is 1, where x* = 3 is rational.
        x_star = 3
        g_value = Fraction(2 + 8, 1)
        direct = _g_raw(Fraction(x_star), 1)
        if direct != g_value:
            raise ArithmeticError("stationary value does not match direct evaluation")
        return x_star, int(g_value)
    x_star = ((2 + r) / (2 - r)) ** (1 / r)
    g_value = (2 * r * r + 8) / (r - 2) ** 2
    direct = _g_raw(x_star, r)
    if abs(direct - g_value) > 1e-9 * max(1.0, abs(g_value)):
        raise ArithmeticError("stationary value does not match direct evaluation")
    return x_star, g_value


def rearrangement_check(
    alphas: Sequence[Value], betas: Sequence[Value], xs: Sequence[Value]
) -> bool:
    """Verify the sorted-sequence averaging inequality

        (sum alpha_i x_i)(sum beta_i) >= (sum beta_i x_{n+1-i})(sum alpha_i)

    for three equal-length non-increasing nonnegative sequences.  Sequences
    that are not sorted non-increasing (or go negative) are rejected.
    """
    seqs = [tuple(alphas), tuple(betas), tuple(xs)]
    n = len(seqs[0])
    if any(len(s) != n for s in seqs) or n == 0:
        raise ValueError("three equal-length nonempty sequences required")
    for name, s in zip(("alphas", "betas", "xs"), seqs):
        if any(s[i] < s[i + 1] for i in range(n - 1)):
            raise ValueError(f"{name} must be non-increasing")
        if s[-1] < 0:
            raise ValueError(f"{name} must be nonnegative")
    al, be, x = seqs
    lhs = sum(a * v for a, v in zip(al, x)) * sum(be)
    rhs = sum(b * v for b, v in zip(be, reversed(x))) * sum(al)
    if lhs >= rhs:
        return True
    if isinstance(lhs, Rational) and isinstance(rhs, Rational):
        return False
    return rhs - lhs <= 1e-9 * max(1, abs(lhs), abs(rhs))


@dataclass(frozen=True)
class RatioTable:
    """Tabulated bound values: one (parameter, bound, arithmetic-mode) row each."""

    rows: tuple[tuple[int, Value, str], ...]
    kind: str
    precision: str = "float64"
    formula_version: str = "1"

    def __post_init__(self):
        for param, bound, _ in self.rows:
            if param >= 2 and not bound > 1:
                raise ValueError(f"bound {bound} at parameter {param} should exceed 1")

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "precision": self.precision,
            "formula_version": self.formula_version,
            "rows": [
                {"param": p, "bound": _plain(b), "mode": m} for p, b, m in self.rows
            ],
        }

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["param", "bound", "mode"])
        for p, b, m in self.rows:
            writer.writerow([p, _plain(b), m])
        return out.getvalue()


def _plain(v: Value):
    if isinstance(v, Fraction):
        return str(v)
    return v


def greedy_ratio_table(params: Sequence[int], exact: bool = False) -> RatioTable:
    mode = "rational" if exact else "float64"
    rows = tuple((p, greedy_ratio(p, exact=exact), mode) for p in params)
    return RatioTable(rows, kind="greedy", precision=mode)


def ls_bound_table(params: Sequence[int], exact: bool = False) -> RatioTable:
    mode = "rational" if exact else "float64"
    rows = tuple((s, ls_bound(s, exact=exact), mode) for s in params)
    return RatioTable(rows, kind="local", precision=mode)
