"""Shared fixtures: the exhaustive small-cell sweep and builtin pipelines.

The sweep fixture walks every two-boundary cell with at most eight
vertices once per session and records everything the property suites
need, so the exhaustive tests share one computation instead of repeating
it per test.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import pytest

from cellgreen import (
    CellFunctions,
    CellGraph,
    CellInvariants,
    CellReport,
    PropertyReport,
    Verdict,
    blowup,
    builtin_cell,
    builtin_names,
    cell_functions,
    classify,
    enumerate_cells,
    exact_return_probs,
    green_series,
    invariants,
    modified_determinants,
    spectral_property_report,
    sufficient_level,
    validate_cell,
)
from cellgreen.harmonic import alpha_from_harmonic

ORACLE_STEP_CAP = 20


@dataclass(frozen=True)
class SweepRecord:
    cell: CellGraph
    report: CellReport
    cf: CellFunctions
    inv: CellInvariants
    spectral: PropertyReport
    det_equal: bool
    harmonic_alpha: Fraction
    verdict: Verdict
    oracle_level: int
    oracle_n: int
    series_prefix: tuple[Fraction, ...]
    oracle_probs: tuple[Fraction, ...]

    @property
    def oracle_match(self) -> bool:
        return self.series_prefix == self.oracle_probs


@dataclass(frozen=True)
class Sweep:
    records: tuple[SweepRecord, ...]
    oracle_seconds: float


def _sweep_one(g: CellGraph) -> tuple[SweepRecord, float]:
    report = validate_cell(g)
    cf = cell_functions(g, check_symmetry=False)
    inv = invariants(g, cf)
    spectral = spectral_property_report(cf)
    det_f, det_d = modified_determinants(g)
    verdict = classify(g, cf=cf)

    t0 = time.perf_counter()
    level = sufficient_level(g, ORACLE_STEP_CAP)
    appx = blowup(g, level)
    n_cap = min(ORACLE_STEP_CAP, appx.safe_horizon)
    probs = exact_return_probs(appx, n_cap)
    gs = green_series(cf, n_cap)
    oracle_dt = time.perf_counter() - t0

    rec = SweepRecord(
        cell=g,
        report=report,
        cf=cf,
        inv=inv,
        spectral=spectral,
        det_equal=det_f == det_d,
        harmonic_alpha=alpha_from_harmonic(g),
        verdict=verdict,
        oracle_level=level,
        oracle_n=n_cap,
        series_prefix=gs.coefficients(),
        oracle_probs=probs.probs,
    )
    return rec, oracle_dt


@pytest.fixture(scope="session")
def enumerated_cells() -> tuple[CellGraph, ...]:
    return tuple(enumerate_cells(2, 8))


@pytest.fixture(scope="session")
def sweep(enumerated_cells) -> Sweep:
    records = []
    oracle_seconds = 0.0
    for g in enumerated_cells:
        rec, dt = _sweep_one(g)
        records.append(rec)
        oracle_seconds += dt
    return Sweep(records=tuple(records), oracle_seconds=oracle_seconds)


@pytest.fixture(scope="session")
def builtin_cells() -> dict[str, CellGraph]:
    return {name: builtin_cell(name) for name in builtin_names()}


@pytest.fixture(scope="session")
def builtin_functions(builtin_cells) -> dict[str, CellFunctions]:
    return {name: cell_functions(g) for name, g in builtin_cells.items()}


@pytest.fixture(scope="session")
def builtin_invariants(builtin_cells, builtin_functions) -> dict[str, CellInvariants]:
    return {
        name: invariants(g, builtin_functions[name])
        for name, g in builtin_cells.items()
    }


# -- command line runner ----------------------------------------------------


_CLI_STUB = "from cellgreen.cli import main; raise SystemExit(main())"


def run_cli(*args: str, env_extra: dict | None = None) -> subprocess.CompletedProcess:
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-c", _CLI_STUB, *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=300,
    )


@pytest.fixture(scope="session")
def cli():
    return run_cli


# -- acceptance reporting ---------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


def _record(tag: str, passed: bool, detail: str) -> None:
    _ACCEPTANCE_LINES.append(
        f"{tag}: {'PASS' if passed else 'FAIL'}  {detail}"
    )


@pytest.fixture
def record_acceptance():
    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


try:
    from hypothesis import settings

    settings.register_profile("suite", derandomize=True, max_examples=60)
    settings.load_profile("suite")
except ImportError:
    pass
