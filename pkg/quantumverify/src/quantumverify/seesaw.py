"""Alternating lower-bound search for the minimal quantum value of an
inequality over qubit strategies: the state step takes the Bell operator's
minimal eigenvector, the settings step replaces one observable at a time by
the closed-form minimizer of its reduced coefficient operator.  Both steps
can only decrease the objective, which is asserted on every half-step."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interchange import Inequality
from .operators import (
    SettingsTable,
    optimal_observable,
    optimal_state,
    quantum_value,
    random_settings,
    reduced_coefficient_operator,
)

MONOTONE_SLACK = 1e-9


@dataclass
class SeesawResult:
    value: float
    state: np.ndarray
    settings: SettingsTable
    sweeps: int
    converged: bool


def _sweep_once(
    b: Inequality,
    settings: SettingsTable,
    fixed_state: np.ndarray | None,
    current: float | None,
) -> tuple[float, np.ndarray, SettingsTable]:
    if fixed_state is None:
        value, psi = optimal_state(b, settings)
    else:
        psi = fixed_state
        value = quantum_value(b, settings, psi)
    if current is not None and value > current + MONOTONE_SLACK:
        raise AssertionError(f"state step increased the objective: {current} -> {value}")
    for party in range(b.parties):
        for setting in range(1, b.settings + 1):
            r = reduced_coefficient_operator(b, settings, psi, party, setting)
            obs, degenerate = optimal_observable(r)
            if degenerate:
                continue  # this observable does not enter the objective here
            candidate = settings.replace(party, setting, obs)
            new_value = quantum_value(b, candidate, psi)
            if new_value > value + MONOTONE_SLACK:
                raise AssertionError(
                    f"observable step increased the objective: {value} -> {new_value}"
                )
            settings = candidate
            value = new_value
    return value, psi, settings


def seesaw(
    b: Inequality,
    restarts: int = 20,
    seed: int = 0,
    fixed_state: np.ndarray | None = None,
    max_sweeps: int = 500,
    rel_tol: float = 1e-10,
) -> SeesawResult:
    """Best strategy over random restarts; reproducible for a given seed."""
    rng = np.random.default_rng(seed)
    best: SeesawResult | None = None
    for _ in range(max(1, restarts)):
        settings = random_settings(b.parties, b.settings, rng)
        value: float | None = None
        psi = fixed_state
        converged = False
        sweeps = 0
        for sweeps in range(1, max_sweeps + 1):
            new_value, psi, settings = _sweep_once(b, settings, fixed_state, value)
            if value is not None:
                scale = max(1.0, abs(value))
                if abs(value - new_value) / scale < rel_tol:
                    value = new_value
                    converged = True
                    break
            value = new_value
        assert value is not None and psi is not None
        if best is None or value < best.value:
            best = SeesawResult(value, psi, settings, sweeps, converged)
    assert best is not None
    return best
