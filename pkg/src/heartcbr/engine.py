"""Retrieve / reuse / revise / retain cycle over a min-max scaled case memory.

Retrieval scores every stored case against the query with a weighted average
of per-attribute similarities; reuse copies the solution of the single best
match. The revise stage is a recorded no-op for binary outcomes, and retain
appends the solved raw query to the case memory and refits the scaling.

Scoring uses sequential summation on purpose: it keeps every global
similarity provably inside [0, 1], makes self-similarity exactly 1.0, and
makes scores symmetric, so callers can rely on those identities bit for bit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .analytics import CaseResult, ConfusionCounts, EvaluationReport
from .cases import (
    N_FEATURES,
    Case,
    CaseValidationError,
    case_to_mapping,
    to_feature_vector,
    validate_case,
)
from .dataset import CaseBase
from .scaling import NormalizationParams, fit_minmax, normalize

logger = logging.getLogger(__name__)

TIE_BREAK_POLICIES = ("lowest_case_id",)


def _sequential_sum(values: Sequence[float]) -> float:
    total = 0.0
    for value in values:
        total += value
    return total


@dataclass(frozen=True)
class SimilarityConfig:
    """Per-attribute weights and retrieval policy.

    Weights default to 1.0 each; only their ratios matter because the score
    divides by their sum. Ties are always resolved toward the lowest case id.
    """

    weights: tuple[float, ...] = (1.0,) * N_FEATURES
    tie_break: str = "lowest_case_id"
    incremental_retain: bool = False

    def __post_init__(self):
        if len(self.weights) != N_FEATURES:
            raise ValueError(f"expected {N_FEATURES} weights, got {len(self.weights)}")
        if any(w < 0 or w != w for w in self.weights):
            raise ValueError("weights must be finite and non-negative")
        if _sequential_sum(self.weights) <= 0.0:
            raise ValueError("weights must not all be zero")
        if self.tie_break not in TIE_BREAK_POLICIES:
            raise ValueError(f"unknown tie-break policy {self.tie_break!r}")

    @property
    def weight_sum(self) -> float:
        return _sequential_sum(self.weights)


class RankedMatch(NamedTuple):
    case_id: int
    score: float
    target: int


@dataclass(frozen=True)
class Prediction:
    """Retrieval outcome: the reused solution plus the ranked evidence."""

    predicted_target: int
    best_case_id: int
    best_global_similarity: float
    ranked: tuple[RankedMatch, ...]


def local_similarity(a: float, b: float, attr_range: float, degenerate: bool = False) -> float:
    """Per-attribute similarity in [0, 1].

    Non-degenerate attributes use the range-normalized measure
    max(0, 1 - |a - b| / range); a degenerate (zero-range) attribute matches
    exactly or not at all.
    """
    if degenerate:
        return 1.0 if a == b else 0.0
    diff = abs(a - b) / attr_range
    sim = 1.0 - diff
    return sim if sim > 0.0 else 0.0


def _score_scaled(
    query: Sequence[float],
    row: Sequence[float],
    weights: Sequence[float],
    degenerate: Sequence[bool],
    weight_sum: float,
) -> float:
    # Scaled space: every non-degenerate attribute has range exactly 1.
    num = 0.0
    for a, b, w, deg in zip(query, row, weights, degenerate):
        if deg:
            sim = 1.0 if a == b else 0.0
        else:
            diff = a - b
            if diff < 0.0:
                diff = -diff
            sim = 1.0 - diff
            if sim < 0.0:
                sim = 0.0
        num += w * sim
    return num / weight_sum


def global_similarity(
    query: Sequence[float],
    case: Sequence[float],
    config: SimilarityConfig,
    params: NormalizationParams,
) -> float:
    """Weighted average of the 13 local similarities between scaled vectors."""
    if len(query) != N_FEATURES or len(case) != N_FEATURES:
        raise ValueError("global similarity is defined over 13-attribute vectors")
    return _score_scaled(query, case, config.weights, params.degenerate, config.weight_sum)


def rank_scaled(
    query: Sequence[float],
    rows: Sequence[Sequence[float]],
    ids: Sequence[int],
    targets: Sequence[int],
    weights: Sequence[float],
    degenerate: Sequence[bool] | None = None,
) -> list[RankedMatch]:
    """Score pre-scaled rows against a pre-scaled query, best first.

    Generic over the number of attributes. The sort is descending by score
    with exact ties ordered by ascending case id.
    """
    if degenerate is None:
        degenerate = (False,) * len(query)
    weight_sum = _sequential_sum(weights)
    matches = [
        RankedMatch(ids[i], _score_scaled(query, rows[i], weights, degenerate, weight_sum), targets[i])
        for i in range(len(rows))
    ]
    matches.sort(key=lambda m: (-m.score, m.case_id))
    return matches


def retrieve(
    query: Case,
    case_base: CaseBase,
    config: SimilarityConfig,
    params: NormalizationParams,
) -> list[RankedMatch]:
    """Rank every stored case against the query, highest similarity first."""
    if len(case_base) == 0:
        raise ValueError("cannot retrieve from an empty case base")
    scaled_query = normalize(to_feature_vector(query), params)
    ids: list[int] = []
    rows: list[tuple[float, ...]] = []
    targets: list[int] = []
    for case_id, case in case_base:
        ids.append(case_id)
        rows.append(normalize(to_feature_vector(case), params))
        targets.append(case.target)  # type: ignore[arg-type]
    ranked = rank_scaled(scaled_query, rows, ids, targets, config.weights, params.degenerate)
    logger.debug("retrieve: ranked %d cases, best id %d", len(ranked), ranked[0].case_id)
    return ranked


def reuse(ranked: Sequence[RankedMatch]) -> int:
    """Copy the solution of the highest-scoring case, lowest id on ties."""
    if not ranked:
        raise ValueError("cannot reuse from an empty ranking")
    best = max(ranked, key=lambda m: (m.score, -m.case_id))
    logger.debug("reuse: case %d with score %.6f -> target %d", best.case_id, best.score, best.target)
    return best.target


def predict(
    query: Case,
    case_base: CaseBase,
    config: SimilarityConfig,
    params: NormalizationParams,
    top_k: int | None = None,
) -> Prediction:
    """Run retrieve + reuse for one query without retaining it.

    The revise stage is intentionally a no-op: with a binary outcome there is
    nothing to adapt, so the reused solution is final.
    """
    ranked = retrieve(query, case_base, config, params)
    predicted = reuse(ranked)
    logger.debug("revise: no-op (binary solution)")
    best = ranked[0]
    kept = tuple(ranked if top_k is None else ranked[:top_k])
    return Prediction(
        predicted_target=predicted,
        best_case_id=best.case_id,
        best_global_similarity=best.score,
        ranked=kept,
    )


def retain(
    query: Case,
    solved_target: int,
    case_base: CaseBase,
) -> tuple[CaseBase, NormalizationParams]:
    """Append the solved raw query to the case base and refit the scaling.

    The query is stored un-normalized under a fresh id; scaling parameters
    are refitted on the enlarged base, so extrema may widen. Requires
    exclusive access to the case base (single writer).
    """
    if solved_target not in (0, 1):
        raise CaseValidationError(f"solved target must be 0 or 1, got {solved_target!r}")
    mapping = case_to_mapping(query)
    mapping["target"] = solved_target
    stored, _ = validate_case(mapping, "lenient")
    case_id = case_base.add(stored)
    params = fit_minmax(case_base)
    logger.debug("retain: stored case %d with target %d", case_id, solved_target)
    return case_base, params


def evaluate(
    test_cases: Sequence[Case],
    case_base: CaseBase,
    config: SimilarityConfig,
    params: NormalizationParams,
) -> EvaluationReport:
    """Predict every test case in order and summarize the outcome.

    With ``config.incremental_retain`` each test case is retained with its
    predicted target before the next prediction, growing the case base as it
    goes (and mutating the one passed in); otherwise the base and scaling
    stay frozen. The merged accuracy counts every original training case as
    correct by self-retrieval.
    """
    if not test_cases:
        raise ValueError("cannot evaluate an empty test set")
    for index, case in enumerate(test_cases):
        if case.target is None:
            raise ValueError(f"test case {index} is missing a target")

    n_train = len(case_base)
    results: list[CaseResult] = []

    if config.incremental_retain:
        for index, case in enumerate(test_cases):
            prediction = predict(case, case_base, config, params)
            results.append(
                CaseResult(
                    index=index,
                    true_target=case.target,  # type: ignore[arg-type]
                    predicted_target=prediction.predicted_target,
                    best_similarity=prediction.best_global_similarity,
                    best_case_id=prediction.best_case_id,
                )
            )
            case_base, params = retain(case, prediction.predicted_target, case_base)
    else:
        ids: list[int] = []
        rows: list[tuple[float, ...]] = []
        targets: list[int] = []
        for case_id, case in case_base:
            ids.append(case_id)
            rows.append(normalize(to_feature_vector(case), params))
            targets.append(case.target)  # type: ignore[arg-type]
        for index, case in enumerate(test_cases):
            scaled_query = normalize(to_feature_vector(case), params)
            ranked = rank_scaled(
                scaled_query, rows, ids, targets, config.weights, params.degenerate
            )
            predicted = reuse(ranked)
            best = ranked[0]
            results.append(
                CaseResult(
                    index=index,
                    true_target=case.target,  # type: ignore[arg-type]
                    predicted_target=predicted,
                    best_similarity=best.score,
                    best_case_id=best.case_id,
                )
            )

    correct = sum(1 for r in results if r.predicted_target == r.true_target)
    n_test = len(results)
    tp = sum(1 for r in results if r.true_target == 1 and r.predicted_target == 1)
    tn = sum(1 for r in results if r.true_target == 0 and r.predicted_target == 0)
    fp = sum(1 for r in results if r.true_target == 0 and r.predicted_target == 1)
    fn = sum(1 for r in results if r.true_target == 1 and r.predicted_target == 0)

    return EvaluationReport(
        per_case=tuple(results),
        test_accuracy=correct / n_test,
        merged_accuracy=(n_train + correct) / (n_train + n_test),
        confusion=ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn),
        n_train=n_train,
        n_test=n_test,
    )
