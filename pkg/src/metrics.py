#  Copyright 2022 Christopher Eltschka
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.


"""
Run records and the metrics computed from them: SP1, success rates,
run-length ECDFs and {F, CR} heatmaps.

Everything here is a pure function of immutable records.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import settings


@dataclass
class RunRecord:
    """
    The outcome of one run.

    best_error_trajectory holds one (fevals, error) entry for every
    strict improvement of the best-so-far error; theta_trace the (F, CR)
    pair of every counted trial.
    """
    run_index: int
    success: bool
    fevals_to_success: Optional[int]
    fevals: int
    best_error_trajectory: List[Tuple[int, float]]
    theta_trace: List[Tuple[float, float]]
    metadata: Dict[str, str] = field(default_factory=dict)
    oracle_evals: int = 0
    oracle_trace: Any = None

    def final_error(self) -> float:
        """
        The best error reached in the run
        """
        if not self.best_error_trajectory:
            return float("inf")
        return self.best_error_trajectory[-1][1]


def success_rate(records: Sequence[RunRecord]) -> float:
    """
    Fraction of successful runs
    """
    if not records:
        raise ValueError("no run records")
    return sum(record.success for record in records) / len(records)


def successful_fevals(records: Sequence[RunRecord]) -> List[int]:
    """
    FEvals to success of the successful runs
    """
    return [ record.fevals_to_success for record in records if record.success ]


def sp1(records: Sequence[RunRecord]) -> Optional[float]:
    """
    Success performance 1: the mean FEvals of the successful runs
    divided by the success rate. None if no run was successful.
    """
    fevals = successful_fevals(records)
    if not fevals:
        return None
    return float(np.mean(fevals)) / success_rate(records)


def sp1_as_written(records: Sequence[RunRecord]) -> Optional[float]:
    """
    The mean FEvals of the successful runs divided by the number of
    successes; reported next to sp1 for comparison.
    """
    fevals = successful_fevals(records)
    if not fevals:
        return None
    return float(np.mean(fevals)) / len(fevals)


def median_fevals_to_success(records: Sequence[RunRecord]) -> Optional[float]:
    """
    Median FEvals to success over the successful runs
    """
    fevals = successful_fevals(records)
    if not fevals:
        return None
    return float(np.median(fevals))


def best_gaode_fevals(records: Sequence[RunRecord]) -> Optional[int]:
    """
    The lowest FEvals to success among (composed) oracle runs, which
    is what the comparison table reports for the oracle instead of SP1
    """
    fevals = successful_fevals(records)
    if not fevals:
        return None
    return min(fevals)


def default_targets(count: int = settings.ecdf["target_count"],
                    high: float = settings.ecdf["target_high"],
                    low: float = settings.ecdf["target_low"]) -> np.ndarray:
    """
    Error targets log-uniformly spaced from 10^high down to 10^low
    """
    return np.logspace(high, low, count)


def default_budget_grid(budget: float,
                        points: int = settings.ecdf["grid_points"]
                        ) -> np.ndarray:
    """
    Budgets log-uniformly spaced from 1 to budget
    """
    return np.logspace(0.0, np.log10(budget), points)


def first_hits(record: RunRecord, targets: np.ndarray) -> np.ndarray:
    """
    For every target, the FEvals at which the best-so-far error first
    was at or below it (infinity if never)
    """
    hits = np.full(len(targets), np.inf)
    if not record.best_error_trajectory:
        return hits
    fevals, errors = (np.array(column, dtype=float)
                      for column in zip(*record.best_error_trajectory))
    reached = errors[np.newaxis, :] <= targets[:, np.newaxis]
    ever = reached.any(axis=1)
    hits[ever] = fevals[np.argmax(reached[ever], axis=1)]
    return hits


@dataclass
class EcdfCurve:
    """
    Fraction of (run, target) pairs solved within each budget
    """
    budgets: np.ndarray
    fevals_per_dimension: np.ndarray
    fractions: np.ndarray


def ecdf(records: Sequence[RunRecord],
         targets: Optional[np.ndarray] = None,
         budget_grid: Optional[np.ndarray] = None,
         dimension: int = 1,
         budget: Optional[int] = None) -> EcdfCurve:
    """
    The run-length ECDF over all (run, target) pairs.

    A pair counts as solved at budget b if the run's best-so-far error
    was at or below the target after at most b counted evaluations.
    The x values are reported as FEvals divided by the dimension.
    Without budget grid, the grid spans 1 to the budget, given or
    taken from the run metadata.
    """
    if not records:
        raise ValueError("the ECDF needs at least one run record")
    if targets is None:
        targets = default_targets()
    targets = np.asarray(targets, dtype=float)
    if budget_grid is None:
        if budget is None:
            budgets = { record.metadata.get("budget") for record in records }
            if len(budgets) != 1 or None in budgets:
                raise ValueError("the ECDF needs the budget of its runs")
            budget = int(budgets.pop())
        budget_grid = default_budget_grid(budget)
    budget_grid = np.asarray(budget_grid, dtype=float)

    hits = np.concatenate([ first_hits(record, targets) for record in records ])
    fractions = np.array([ np.mean(hits <= limit) for limit in budget_grid ])
    return EcdfCurve(budget_grid, budget_grid / dimension, fractions)


@dataclass
class Histogram2D:
    """
    Counts of (F, CR) pairs on a bins x bins grid over [0,1] x [0,1].
    counts[f_bin, cr_bin].
    """
    counts: np.ndarray
    bins: int

    def total(self) -> int:
        """
        Number of binned pairs
        """
        return int(np.sum(self.counts))

    def f_marginal(self) -> np.ndarray:
        """
        Counts per F bin
        """
        return np.sum(self.counts, axis=1)

    def cr_marginal(self) -> np.ndarray:
        """
        Counts per CR bin
        """
        return np.sum(self.counts, axis=0)

    def edges(self) -> np.ndarray:
        """
        The bin edges (same for both axes)
        """
        return np.linspace(0.0, 1.0, self.bins + 1)


def param_heatmap(theta_trace: Sequence[Tuple[float, float]],
                  bins: int = settings.plot["heatmap_bins"]) -> Histogram2D:
    """
    Bin every (F, CR) pair at (min(floor(F B), B-1), min(floor(CR B), B-1))
    """
    if bins < 1:
        raise ValueError("at least one bin is required")
    counts = np.zeros((bins, bins), dtype=np.int64)
    if len(theta_trace) > 0:
        pairs = np.asarray(theta_trace, dtype=float)
        indices = np.minimum(np.floor(pairs * bins).astype(np.int64), bins - 1)
        np.add.at(counts, (indices[:, 0], indices[:, 1]), 1)
    return Histogram2D(counts, bins)


def select_best_run(records: Sequence[RunRecord]) -> RunRecord:
    """
    The successful record with the fewest FEvals to success or, if
    there is none, the one with the lowest final error. Earlier records
    win ties.
    """
    if not records:
        raise ValueError("no run records")
    successful = [ record for record in records if record.success ]
    if successful:
        return min(successful, key=lambda record: record.fevals_to_success)
    return min(records, key=lambda record: record.final_error())
