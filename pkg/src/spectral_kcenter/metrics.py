"""The six k-center selection metrics and the exhaustive subset engine.

Scores are pure functions of (graph, subset, params). ``select_best``
enumerates subsets in lexicographic order, optimizes in the metric's
direction, collects ties within relative 1e-9 and breaks them toward the
lexicographically smallest subset, so results are schedule-independent.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import DegenerateEigenvalueError, ParameterError
from .graphs import Graph, laplacian, max_degree, stochastic
from .spectral import are_charging_energy, gramian_extraction_energy, sym_eigen

TIE_RTOL = 1e-9
DEFAULT_ENUMERATION_CAP = 2_000_000
EIGVEC_GAP_MIN = 1e-9


class Metric(enum.Enum):
    MPLSE = "mplse"
    MSUB_LE = "msub"
    MSUP_LE = "msup"
    EIGVEC = "eigvec"
    ARE = "are"
    GRAMIAN = "gramian"

    @staticmethod
    def parse(name: str) -> "Metric":
        for m in Metric:
            if m.value == name.lower():
                return m
        raise ParameterError(f"unknown metric {name!r}; choose from "
                             + ", ".join(m.value for m in Metric))


# maximize or minimize, per metric
_MAXIMIZING = {Metric.MPLSE: True, Metric.MSUB_LE: False, Metric.MSUP_LE: False,
               Metric.EIGVEC: False, Metric.ARE: False, Metric.GRAMIAN: True}


@dataclass(frozen=True)
class MetricParams:
    """Shared knobs: perturbation eps, stochastic step tau, ARE regularizer rho.

    tau = None means 1/(max_degree + 1), strictly inside the stochastic
    range for every graph.
    """

    epsilon: float = 0.01
    tau: Optional[float] = None
    rho: float = 1e-6

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")
        if self.rho <= 0:
            raise ParameterError(f"rho must be positive, got {self.rho}")

    def tau_for(self, g: Graph) -> float:
        """Resolve tau for a graph, validating the stochastic range."""
        if self.tau is None:
            return 1.0 / (max_degree(g) + 1)
        if not (0 < self.tau <= 1.0 / max_degree(g)):
            raise ParameterError(
                f"tau={self.tau} outside (0, 1/{max_degree(g)}] for this graph")
        return self.tau


@dataclass(frozen=True)
class SelectionResult:
    metric: Metric
    k: int
    best: tuple[int, ...]
    score: float
    ties: list[tuple[int, ...]]
    table: Optional[list[tuple[tuple[int, ...], float]]] = None


def perturbed_laplacian(L: np.ndarray, ports: Iterable[int], eps: float) -> np.ndarray:
    """L with eps added to the diagonal entries indexed by the port set."""
    if eps < 0:
        raise ParameterError(f"eps must be nonnegative, got {eps}")
    L = np.array(L, dtype=float)
    n = L.shape[0]
    for j in ports:
        if not 1 <= j <= n:
            raise ParameterError(f"port {j} out of range 1..{n}")
        L[j - 1, j - 1] += eps
    return L


def mplse_score(g: Graph, ports, params: MetricParams = MetricParams()) -> float:
    """Smallest eigenvalue of the port-perturbed Laplacian (higher is better)."""
    Lt = perturbed_laplacian(laplacian(g), ports, params.epsilon)
    return float(sym_eigen(Lt).values[0])


def msub_score(g: Graph, ports, params: MetricParams = MetricParams()) -> float:
    """Perron root of the stochastic matrix with port rows/columns removed.

    Equals 1 - tau * lambda_min(grounded Laplacian); lower is better.
    """
    Z = stochastic(g, params.tau_for(g))
    keep = [i for i in range(g.n) if (i + 1) not in set(ports)]
    if len(keep) == g.n:
        raise ParameterError("port set is empty")
    if not keep:
        raise ParameterError("port set must leave at least one node")
    return float(sym_eigen(Z[np.ix_(keep, keep)]).values[-1])


def msup_score(g: Graph, ports, params: MetricParams = MetricParams()) -> float:
    """Largest eigenvalue of the super-stochastic matrix Z + eps on port
    diagonal entries; lower is better (stubbornness diffuses best at centers)."""
    Z = stochastic(g, params.tau_for(g))
    for j in ports:
        Z[j - 1, j - 1] += params.epsilon
    return float(sym_eigen(Z).values[-1])


def _eigvec_magnitudes(g: Graph, k: int) -> np.ndarray:
    """|v_{k+1}| for the Laplacian, guarded against a repeated lambda_{k+1}."""
    dec = sym_eigen(laplacian(g))
    lam = dec.values
    if k >= g.n:
        raise ParameterError(f"need k < n, got k={k}, n={g.n}")
    gap_below = lam[k] - lam[k - 1]
    gap_above = lam[k + 1] - lam[k] if k + 1 < g.n else math.inf
    if min(gap_below, gap_above) <= EIGVEC_GAP_MIN:
        raise DegenerateEigenvalueError(
            f"lambda_{k + 1} is repeated (gap {min(gap_below, gap_above):.2e}); "
            "eigenvector heuristic undefined")
    return np.abs(dec.vectors[:, k])


def eigvec_heuristic_score(g: Graph, ports, k: int) -> float:
    """Sum of |v_{k+1}| over the port set; lower is better."""
    mags = _eigvec_magnitudes(g, k)
    return float(sum(mags[j - 1] for j in ports))


def _subset_scorer(g: Graph, k: int, metric: Metric, params: MetricParams):
    """Precompute shared matrices and return a subset -> score callable."""
    if metric is Metric.MPLSE:
        L = laplacian(g)
        eps = params.epsilon

        def score(S):
            Lt = L.copy()
            for j in S:
                Lt[j - 1, j - 1] += eps
            return float(sym_eigen(Lt).values[0])
    elif metric is Metric.MSUB_LE:
        Z = stochastic(g, params.tau_for(g))

        def score(S):
            keep = [i for i in range(g.n) if (i + 1) not in S]
            return float(sym_eigen(Z[np.ix_(keep, keep)]).values[-1])
    elif metric is Metric.MSUP_LE:
        Z0 = stochastic(g, params.tau_for(g))
        eps = params.epsilon

        def score(S):
            Z = Z0.copy()
            for j in S:
                Z[j - 1, j - 1] += eps
            return float(sym_eigen(Z).values[-1])
    elif metric is Metric.EIGVEC:
        mags = _eigvec_magnitudes(g, k)

        def score(S):
            return float(sum(mags[j - 1] for j in S))
    elif metric is Metric.ARE:
        L = laplacian(g)
        rho = params.rho

        def score(S):
            return are_charging_energy(L, S, rho)
    elif metric is Metric.GRAMIAN:
        L = laplacian(g)

        def score(S):
            return gramian_extraction_energy(L, S)
    else:  # pragma: no cover
        raise ParameterError(f"unhandled metric {metric}")
    return score


def _is_tie(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_RTOL * max(1.0, abs(a), abs(b))


def select_best(g: Graph, k: int, metric: Metric,
                params: MetricParams = MetricParams(),
                keep_table: bool = False,
                enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> SelectionResult:
    """Exhaustively score all C(n, k) port sets and return the optimum.

    Ties within relative 1e-9 of the optimal score are collected; ``best``
    is the lexicographically smallest of them.
    """
    if not 1 <= k < g.n:
        raise ParameterError(f"need 1 <= k < n, got k={k}, n={g.n}")
    count = math.comb(g.n, k)
    if count > enumeration_cap:
        raise ParameterError(
            f"C({g.n},{k}) = {count} exceeds the enumeration cap {enumeration_cap}")
    score = _subset_scorer(g, k, metric, params)
    maximize = _MAXIMIZING[metric]

    table: list[tuple[tuple[int, ...], float]] = []
    best_score = None
    for S in itertools.combinations(range(1, g.n + 1), k):
        v = score(S)
        table.append((S, v))
        if best_score is None or (v > best_score if maximize else v < best_score):
            best_score = v
    ties = [S for (S, v) in table if _is_tie(v, best_score)]
    ties.sort()
    return SelectionResult(metric=metric, k=k, best=ties[0], score=float(best_score),
                           ties=ties, table=table if keep_table else None)


@dataclass
class AgreementReport:
    """Agreement of two selectors' best sets over an instance stream."""

    metric_a: Metric
    metric_b: Metric
    per_k: dict[int, float] = field(default_factory=dict)
    pooled: float = 0.0
    skipped_per_k: dict[int, int] = field(default_factory=dict)
    counted_per_k: dict[int, int] = field(default_factory=dict)

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped_per_k.values())


def agreement_rate(metric_a: Metric, metric_b: Metric,
                   instances: Iterable[Graph], trials: int,
                   k_list: Iterable[int],
                   params: MetricParams = MetricParams()) -> AgreementReport:
    """Fraction of (instance, k) pairs on which both selectors pick the same
    best set, per k and pooled.

    Instances where a selector is undefined (repeated eigenvalue for the
    eigenvector heuristic) are excluded from the denominator and counted
    as skipped.
    """
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    k_list = list(k_list)
    agree = {k: 0 for k in k_list}
    counted = {k: 0 for k in k_list}
    skipped = {k: 0 for k in k_list}
    stream: Iterator[Graph] = iter(instances)
    for _ in range(trials):
        g = next(stream)
        for k in k_list:
            if k >= g.n:
                continue
            try:
                best_a = select_best(g, k, metric_a, params).best
                best_b = select_best(g, k, metric_b, params).best
            except DegenerateEigenvalueError:
                skipped[k] += 1
                continue
            counted[k] += 1
            agree[k] += int(best_a == best_b)
    per_k = {k: (100.0 * agree[k] / counted[k]) if counted[k] else float("nan")
             for k in k_list}
    total_counted = sum(counted.values())
    pooled = 100.0 * sum(agree.values()) / total_counted if total_counted else float("nan")
    return AgreementReport(metric_a=metric_a, metric_b=metric_b, per_k=per_k,
                           pooled=pooled, skipped_per_k=skipped,
                           counted_per_k=counted)

