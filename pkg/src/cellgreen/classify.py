"""Classification of the limit graph's Green's function, plus the full
property suite that backs the verdict with machine-checked evidence.

For two-boundary cells the dichotomy is sharp: a path cell generates a
star of half-lines whose return series is the algebraic function
1/sqrt(1 - z^2); every other cell yields a return series satisfying no
polynomial differential equation, because it solves G = f (G over d) with
an inner function d that fixes 0 with multiplier 0, and no iterate of such
a d is the identity.  Cells with three or more boundary vertices are
reported as conjectured: the triangle-gasket case has a published proof,
the general case does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PowerSeries
from .blowup import DEFAULT_EDGE_BUDGET, blowup, exact_return_probs, sufficient_level
from .cells import CellGraph, CellReport, validate_cell
from .greenkernel import (
    CheckItem,
    KernelError,
    PropertyReport,
    cell_functions,
    modified_determinants,
    spectral_property_report,
)
from .harmonic import alpha_from_harmonic, verify_alpha_mu
from .iteration import (
    GreenSeries,
    functional_residual,
    green_series,
    green_series_recursion,
    invariants,
    transcendence_hypotheses,
)

OUTCOMES = (
    "AlgebraicStar",
    "DifferentiallyTranscendental",
    "ConjecturedTranscendental",
    "Invalid",
)

_BASIS = {
    "AlgebraicStar": (
        "path cells generate a star of half-lines; its return series is "
        "1/sqrt(1-z^2), an algebraic function"
    ),
    "DifferentiallyTranscendental": (
        "the return series solves G = f*(G over d) where d fixes 0 with "
        "multiplier 0 and no iterate of d is the identity; any such series "
        "that is not rational satisfies no algebraic differential equation"
    ),
    "ConjecturedTranscendental": (
        "no dichotomy theorem covers three or more boundary vertices; "
        "transcendence is conjectured (and proven in prior work for the "
        "triangle gasket)"
    ),
    "Invalid": "the graph fails the cell symmetry axioms",
}


@dataclass(frozen=True)
class Verdict:
    outcome: str
    theorem_basis: str
    cell_report: CellReport
    invariants: CellInvariants | None = None
    hypotheses: PropertyReport | None = None
    bipartite_branch: str | None = None
    closed_form: str | None = None
    closed_form_verified_order: int | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "theorem_basis": self.theorem_basis,
            "cell_report": self.cell_report.to_json(),
            "invariants": None if self.invariants is None else self.invariants.to_json(),
            "hypotheses": None if self.hypotheses is None else self.hypotheses.to_json(),
            "bipartite_branch": self.bipartite_branch,
            "closed_form": self.closed_form,
            "closed_form_verified_order": self.closed_form_verified_order,
        }


def star_series(count: int) -> PowerSeries:
    """Expansion of 1/sqrt(1 - z^2): central binomials over powers of four."""
    coeffs = []
    for k in range(count):
        if k % 2:
            coeffs.append(Fraction(0))
        else:
            m = k // 2
            coeffs.append(Fraction(math.comb(2 * m, m), 4**m))
    return PowerSeries(coeffs, count)


def _verify_star_form(gs: GreenSeries) -> None:
    count = gs.order + 1
    if gs.series != star_series(count):
        raise KernelError("path cell series deviates from 1/sqrt(1-z^2)")
    # Independent algebraicity witness: (1 - z^2) G^2 = 1 as truncated series.
    one_minus_z2 = PowerSeries([1, 0, -1], count)
    if one_minus_z2 * gs.series * gs.series != PowerSeries.one(count):
        raise KernelError("algebraic identity (1-z^2) G^2 = 1 failed")


def classify(
    g: CellGraph,
    series_order: int = 50,
    cf: CellFunctions | None = None,
) -> Verdict:
    """Total, deterministic verdict with verified evidence attached."""
    report = validate_cell(g)
    if not report.valid:
        return Verdict(
            outcome="Invalid",
            theorem_basis=_BASIS["Invalid"],
            cell_report=report,
        )
    if cf is None:
        cf = cell_functions(g, check_symmetry=False)
    inv = invariants(g, cf)
    hyp = transcendence_hypotheses(cf)
    if g.theta == 2 and report.is_path:
        gs = green_series(cf, max(series_order, 50))
        _verify_star_form(gs)
        return Verdict(
            outcome="AlgebraicStar",
            theorem_basis=_BASIS["AlgebraicStar"],
            cell_report=report,
            invariants=inv,
            hypotheses=hyp,
            closed_form="1/sqrt(1-z^2)",
            closed_form_verified_order=gs.order,
        )
    if g.theta == 2:
        if not hyp.all_passed:
            raise KernelError(
                "valid non-path cell failed the dichotomy hypotheses"
            )
        return Verdict(
            outcome="DifferentiallyTranscendental",
            theorem_basis=_BASIS["DifferentiallyTranscendental"],
            cell_report=report,
            invariants=inv,
            hypotheses=hyp,
            bipartite_branch="bipartite" if report.bipartite else "non-bipartite",
        )
    return Verdict(
        outcome="ConjecturedTranscendental",
        theorem_basis=_BASIS["ConjecturedTranscendental"],
        cell_report=report,
        invariants=inv,
        hypotheses=hyp,
        bipartite_branch="bipartite" if report.bipartite else "non-bipartite",
    )


# -- full property suite ----------------------------------------------------------


def _det_identity_holds(g: CellGraph) -> bool:
    det_f, det_d = modified_determinants(g)
    return det_f == det_d


def verify_cell(
    g: CellGraph,
    max_steps: int = 12,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
) -> PropertyReport:
    """Everything checkable about one cell, as a pass/fail item list.

    Exact unless stated: the expansion grid item samples rationals, and the
    oracle item is limited to walk lengths min(max_steps, safe horizon).
    """
    items: list[CheckItem] = []
    report = validate_cell(g)
    items.append(
        CheckItem(
            "valid_cell",
            report.valid,
            "; ".join(report.violations) if report.violations else "all axioms hold",
        )
    )
    if not report.valid:
        return PropertyReport(tuple(items))

    cf = cell_functions(g, check_symmetry=False)
    inv = invariants(g, cf)
    items.extend(spectral_property_report(cf).items)

    det_ok = _det_identity_holds(g)
    items.append(
        CheckItem(
            "determinant_identity",
            det_ok,
            "det(I-zP_f) = det(I-zP_d)" if det_ok else "determinants differ",
        )
    )

    if g.theta == 2:
        am = verify_alpha_mu(g)
        items.append(
            CheckItem(
                "alpha_mu",
                am.consistent,
                f"alpha={am.alpha} mu={am.mu} "
                + ("equality on a path" if am.is_path else "strict"),
            )
        )
        ha = alpha_from_harmonic(g)
        cross = ha == inv.alpha
        items.append(
            CheckItem(
                "harmonic_alpha",
                cross,
                f"1/(1-H(w)) = {ha} vs f(1) = {inv.alpha}",
            )
        )
        if report.is_path:
            eta_ok = (
                inv.alpha == inv.mu
                and inv.eta.low <= Fraction(-1, 2) <= inv.eta.high
            )
            detail = "path: alpha = mu and eta bracket straddles -1/2"
        else:
            eta_ok = inv.eta.low > Fraction(-1, 2) and inv.eta.high < 0
            detail = f"-1/2 < eta < 0: {inv.eta.approx_str()}"
        items.append(CheckItem("eta_range", eta_ok, detail))
    else:
        am = None
        items.append(
            CheckItem(
                "alpha_mu",
                True,
                f"alpha={inv.alpha} mu={inv.mu} (recorded, not asserted, "
                "for more than two boundary vertices)",
            )
        )

    n_cap = max_steps
    level = sufficient_level(g, n_cap, edge_budget=edge_budget)
    approx = blowup(g, level, edge_budget=edge_budget)
    n_cap = min(n_cap, approx.safe_horizon)
    gs = green_series(cf, n_cap)
    probs = exact_return_probs(approx, n_cap).probs
    oracle_ok = all(
        gs.coefficient(n) == probs[n] for n in range(n_cap + 1)
    )
    items.append(
        CheckItem(
            "oracle_equivalence",
            oracle_ok,
            f"series = walk probabilities for n <= {n_cap} at level {level}"
            if oracle_ok
            else "series and walk probabilities disagree",
        )
    )

    rec_cap = min(n_cap, 20)
    rec = green_series_recursion(cf, rec_cap)
    rec_ok = all(
        gs.coefficient(n) == rec.coefficient(n) for n in range(rec_cap + 1)
    )
    items.append(
        CheckItem(
            "recursion_crosscheck",
            rec_ok,
            f"product and order-by-order solutions agree to z^{rec_cap}",
        )
    )

    gs40 = green_series(cf, 40)
    residual_ok = functional_residual(cf, gs40).is_zero
    items.append(
        CheckItem(
            "functional_residual",
            residual_ok,
            "G - f*(G over d) vanishes through z^40",
        )
    )

    verdict = classify(g)
    expected = (
        "AlgebraicStar"
        if g.theta == 2 and report.is_path
        else "DifferentiallyTranscendental"
        if g.theta == 2
        else "ConjecturedTranscendental"
    )
    items.append(
        CheckItem(
            "classification",
            verdict.outcome == expected,
            f"outcome {verdict.outcome}",
        )
    )
    return PropertyReport(tuple(items))
