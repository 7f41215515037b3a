"""The concurrence calculus for two-qubit pure states.

A state cos(theta)|00> + sin(theta)|11> with theta in [0, pi/4] is
parametrized throughout by the normalized angle t = theta / (pi/4), so
t = 0 is unentangled and t = 1 is a singlet. The three scalar measures
and their conversions:

    concurrence    c = sin(2 theta)
    singlet prob.  p = 2 sin^2(theta) = 1 - sqrt(1 - c^2)

Links combine by two rules. A chain of l identical links (entanglement
swapping) multiplies concurrences: c' = c^l. A bundle of n identical
parallel links (distillation) satisfies

    (1 + sqrt(1 - c'^2)) / 2 = max(1/2, ((1 + sqrt(1 - c^2)) / 2)^n)

and saturates at a singlet once the product drops to 1/2. All scalars
are doubles; results are clamped onto [0, 1] with tolerance 1e-12.
"""

from __future__ import annotations

import math
import operator

from .paths import PathSummary

_EPS = 1e-12
_LOG_HALF = math.log(0.5)


def _checked_unit(value: float, name: str) -> float:
    """Validate a scalar against [0, 1], tolerating 1e-12 of float slop."""
    if not (-_EPS <= value <= 1.0 + _EPS):
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return min(1.0, max(0.0, value))


def _checked_count(value, name: str) -> int:
    try:
        count = operator.index(value)
    except TypeError:
        raise ValueError(f"{name} must be an integer, got {value!r}") from None
    if count < 1:
        raise ValueError(f"{name} must be >= 1, got {count}")
    return count


def concurrence_of_theta(theta_norm: float) -> float:
    """Concurrence sin(2 theta) of the state at normalized angle t."""
    t = _checked_unit(theta_norm, "theta_norm")
    return _checked_unit(math.sin(t * math.pi / 2), "concurrence")


def theta_of_concurrence(concurrence: float) -> float:
    """Normalized angle on the branch theta in [0, pi/4]."""
    c = _checked_unit(concurrence, "concurrence")
    return _checked_unit(2.0 * math.asin(c) / math.pi, "theta_norm")


def singlet_prob_of_theta(theta_norm: float) -> float:
    """Probability 2 sin^2(theta) of converting the state into a singlet."""
    t = _checked_unit(theta_norm, "theta_norm")
    s = math.sin(t * math.pi / 4)
    return _checked_unit(2.0 * s * s, "singlet probability")


def singlet_prob_of_concurrence(concurrence: float) -> float:
    """Singlet conversion probability 1 - sqrt(1 - c^2)."""
    c = _checked_unit(concurrence, "concurrence")
    return _checked_unit(1.0 - math.sqrt(max(0.0, 1.0 - c * c)), "singlet probability")


def series_concurrence(concurrence: float, length) -> float:
    """Concurrence c^l after swapping along a chain of `length` identical links."""
    c = _checked_unit(concurrence, "concurrence")
    l = _checked_count(length, "path length")
    return _checked_unit(c**l, "concurrence")


def parallel_concurrence(path_concurrence: float, count) -> float:
    """Concurrence after distilling `count` identical parallel links.

    The n-fold product is evaluated in log space so large counts
    underflow gracefully into the saturation branch (a singlet) instead
    of losing precision.
    """
    c = _checked_unit(path_concurrence, "path concurrence")
    n = _checked_count(count, "path count")
    term = (1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0
    if term <= 0.0:  # unreachable: term >= 1/2 for c in [0, 1]
        return 1.0
    log_product = n * math.log(term)
    if log_product <= _LOG_HALF:
        return 1.0
    m = math.exp(log_product)
    return _checked_unit(math.sqrt(max(0.0, 1.0 - (2.0 * m - 1.0) ** 2)), "concurrence")


def gcp_pair_concurrence(edge_concurrence: float, paths: PathSummary) -> float:
    """Concurrence of the link the GCP protocol builds between one node pair.

    Swap along each of the `paths.count` shortest paths of length
    `paths.length`, then distill the resulting parallel bundle.
    """
    chain = series_concurrence(edge_concurrence, paths.length)
    return parallel_concurrence(chain, paths.count)
