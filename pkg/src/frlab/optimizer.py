"""Greedy coordinate descent on eigenfunction coefficients.

The objective is the certified largest root; the linear constraint f(0) = 0
is maintained by re-solving the highest-index (pivot) coefficient after each
trial move, the same way the closed-form example solves its last
coefficient.  Trials whose pivot turns nonpositive are rejected outright
since a negative leading coefficient makes the function eventually negative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError, require
from .eigen import EigenPlusFunction, h4n_at_zero, root_certificate

PROVEN_LOWER_BOUND = 0.45


@dataclass(frozen=True)
class SearchConfig:
    max_basis_index: int
    step_init: float = 1e-2
    step_shrink: float = 0.5
    step_min: float = 1e-7
    max_passes: int = 400
    accept_tol: float = 0.0
    seed: int = 0

    def __post_init__(self):
        require(1 <= self.max_basis_index, "max_basis_index must be >= 1")
        require(self.step_init > self.step_min > 0.0, "need step_init > step_min > 0")
        require(0.0 < self.step_shrink < 1.0, "step_shrink must be in (0, 1)")
        require(self.max_passes >= 1, "max_passes must be >= 1")


@dataclass
class SearchResult:
    function: EigenPlusFunction
    objective: float
    start_objective: float
    improvement: float
    passes: int
    accepted: int
    gap_to_lower_bound: float
    log: list[dict] = field(default_factory=list)


def objective(f: EigenPlusFunction) -> float:
    """Certified largest root; +inf when f cannot be eventually positive."""
    top = f.top_index  # raises on the all-zero function
    if f.coeffs[top] <= 0.0:
        return math.inf
    if not f.normalized:
        raise DomainError("objective requires a normalized function (f(0) = 0)")
    return root_certificate(f).largest_root


def _solve_pivot(coeffs: list[float], pivot: int) -> float:
    others = sum(c * h4n_at_zero(n) for n, c in enumerate(coeffs) if n != pivot)
    return -others / h4n_at_zero(pivot)


def _solved_or_none(coeffs: list[float], pivot: int) -> EigenPlusFunction | None:
    """Solve the pivot from the f(0) = 0 constraint; None when infeasible.

    A pivot within rounding noise of zero is clamped, so feasibility hinges
    on the sign of the effective leading (top nonzero) coefficient.
    """
    trial = list(coeffs)
    scale = max((abs(c) * h4n_at_zero(n) for n, c in enumerate(trial)
                 if n != pivot and c != 0.0), default=1.0)
    solved = _solve_pivot(trial, pivot)
    if abs(solved) * h4n_at_zero(pivot) <= 1e-13 * scale:
        solved = 0.0
    trial[pivot] = solved
    for n in range(len(trial) - 1, -1, -1):
        if trial[n] != 0.0:
            if trial[n] < 0.0:
                return None
            return EigenPlusFunction(tuple(trial), normalized=True)
    return None


def greedy_search(start: EigenPlusFunction, cfg: SearchConfig,
                  log_path: str | Path | None = None) -> SearchResult:
    """Coordinate descent over coefficients up to max_basis_index.

    The pivot absorbing the f(0) = 0 constraint is the start's highest
    active coefficient (the role the last coefficient plays in the built-in
    reference example); every other index up to max_basis_index is a free
    coordinate, so raising max_basis_index beyond the start's degree adds
    new perturbation directions.  Each pass tries +/- step on every free
    coordinate and keeps strict improvements; the step shrinks after a pass
    with no acceptance and the search stops below step_min.  Fully
    deterministic for a fixed config.
    """
    pivot = start.top_index
    if pivot > cfg.max_basis_index:
        raise DomainError("start function uses more coefficients than max_basis_index")
    size = cfg.max_basis_index + 1
    coeffs = list(start.coeffs) + [0.0] * (size - len(start.coeffs))
    free_coords = [c for c in range(size) if c != pivot]
    current = _solved_or_none(coeffs, pivot)
    if current is None:
        raise DomainError("infeasible start: leading coefficient is not positive")
    coeffs = list(current.coeffs)
    best = objective(current)
    if not math.isfinite(best):
        raise DomainError("infeasible start: objective is not finite")

    start_objective = best
    log: list[dict] = []
    step = cfg.step_init
    passes = 0
    accepted_total = 0

    while step >= cfg.step_min and passes < cfg.max_passes:
        passes += 1
        accepted_this_pass = False
        for coord in free_coords:
            for direction in (1.0, -1.0):
                trial = list(coeffs)
                trial[coord] += direction * step
                candidate = _solved_or_none(trial, pivot)
                if candidate is None:
                    continue
                try:
                    value = objective(candidate)
                except DomainError:
                    continue
                if value < best - cfg.accept_tol:
                    coeffs = list(candidate.coeffs)
                    current = candidate
                    best = value
                    accepted_this_pass = True
                    accepted_total += 1
                    log.append({"pass": passes, "coordinate": coord,
                                "step": direction * step, "objective": best})
                    break
        if not accepted_this_pass:
            step *= cfg.step_shrink

    result = SearchResult(
        function=current,
        objective=best,
        start_objective=start_objective,
        improvement=start_objective - best,
        passes=passes,
        accepted=accepted_total,
        gap_to_lower_bound=best - PROVEN_LOWER_BOUND,
        log=log,
    )
    if log_path is not None:
        lines = [json.dumps(entry) for entry in log]
        Path(log_path).write_text("\n".join(lines) + ("\n" if lines else ""))
    return result
