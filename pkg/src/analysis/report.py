"""
Single-pair analysis: builds the order, chain and paired polytopes of (P, Q),
measures them, runs the poset-side criteria, the equivalence search and the
toric checks, and collects everything into an AnalysisReport.
"""

from typing import Any, Dict, List, Optional

import pandas as pd
import sympy
from pydantic import BaseModel, Field

from src.fano.classify import (
    ccs_smooth_condition,
    equivalence_verdicts,
    ocs_smooth_condition,
    oos_smooth_condition,
    predicted_volume,
    split_decompose,
)
from src.gamma.construct import PairingKind, chain_polytope, gamma, order_polytope
from src.geometry.ehrhart import ehrhart, normalized_volume
from src.geometry.polytope import LatticePolytope
from src.geometry.properties import (
    contains_origin_interior,
    is_centrally_symmetric,
    is_fano,
    is_gorenstein,
    is_pseudo_symmetric,
    is_simplicial,
    is_smooth,
)
from src.poset.core import Poset
from src.poset.families import count_linear_extensions, has_common_linear_extension
from src.toric.groebner import verify_pairing
from src.utils.config import get_analysis_config, get_toric_config
from src.utils.logger import PerformanceLogger, get_logger, log_function_call

logger = get_logger(__name__)


class PolytopeSummary(BaseModel):
    """Geometric profile of one polytope."""

    name: str
    d: int
    vertices: List[List[int]]
    facet_count: int
    ehrhart: List[str]
    polynomial: str
    normalized_volume: int
    origin_interior: bool
    fano: bool
    gorenstein: Optional[bool] = None
    simplicial: bool
    smooth: Optional[bool] = None
    centrally_symmetric: bool
    pseudo_symmetric: bool


class ConditionSummary(BaseModel):
    """Poset-side smoothness criteria for the pair."""

    common_linear_extension: bool
    chain_chain: Optional[bool] = None
    order_chain: Optional[bool] = None
    order_order: Optional[bool] = None
    split: Optional[Dict[str, Any]] = None
    predicted_volume: Optional[int] = None


class AnalysisReport(BaseModel):
    """Everything computed for one (P, Q) pair."""

    input: Dict[str, Any]
    linear_extensions: Dict[str, int]
    polytopes: List[PolytopeSummary]
    conditions: ConditionSummary
    equivalence: Optional[Dict[str, Any]] = None
    toric: List[Dict[str, Any]] = Field(default_factory=list)
    hilbert_agreement: Dict[str, bool] = Field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()

    def mismatches(self) -> List[str]:
        """Names of the checks where the poset criteria or the toric side
        disagree with the geometry."""
        found = [f"hilbert_{kind}" for kind, ok in self.hilbert_agreement.items() if not ok]
        by_name = {p.name: p for p in self.polytopes}
        criteria = {
            "CC": self.conditions.chain_chain,
            "OC": self.conditions.order_chain,
            "OO": self.conditions.order_order,
        }
        for kind, verdict in criteria.items():
            summary = by_name.get(f"Gamma_{kind}")
            if verdict is None or summary is None:
                continue
            if verdict != bool(summary.smooth) or verdict != summary.simplicial:
                found.append(f"condition_{kind}")
        if self.conditions.predicted_volume is not None and "Gamma_CC" in by_name:
            if by_name["Gamma_CC"].normalized_volume != self.conditions.predicted_volume:
                found.append("split_volume")
        return found

    def polytope_table(self) -> pd.DataFrame:
        rows = [
            {
                "polytope": p.name,
                "vertices": len(p.vertices),
                "facets": p.facet_count,
                "ehrhart": p.polynomial,
                "volume": p.normalized_volume,
                "fano": p.fano,
                "gorenstein": p.gorenstein,
                "simplicial": p.simplicial,
                "smooth": p.smooth,
                "c.sym": p.centrally_symmetric,
                "p.sym": p.pseudo_symmetric,
            }
            for p in self.polytopes
        ]
        return pd.DataFrame(rows)

    def toric_table(self) -> pd.DataFrame:
        columns = ["kind", "generator_count", "groebner", "squarefree", "initial_is_first", "hilbert"]
        return pd.DataFrame(self.toric, columns=columns)

    def to_text(self) -> str:
        """Human-readable tables."""
        sections = [
            f"P: {self.input['P']}",
            f"Q: {self.input['Q']}",
            "",
            self.polytope_table().to_string(index=False),
            "",
            "Conditions: " + ", ".join(
                f"{k}={v}" for k, v in self.conditions.model_dump().items() if k != "split"
            ),
        ]
        if self.equivalence is not None:
            sections += ["", "Equivalences: " + ", ".join(
                f"{k}={'yes' if v is not None else 'no'}"
                for k, v in self.equivalence.items() if k.endswith(("_cc", "_oo", "_swapped"))
            )]
        if self.toric:
            sections += ["", self.toric_table().to_string(index=False)]
        return "\n".join(sections)


def summarize_polytope(name: str, polytope: LatticePolytope) -> PolytopeSummary:
    polynomial = ehrhart(polytope)
    fano = is_fano(polytope)
    return PolytopeSummary(
        name=name,
        d=polytope.d,
        vertices=[list(v) for v in polytope.vertices],
        facet_count=len(polytope.facets),
        ehrhart=[str(c) for c in polynomial.coefficients],
        polynomial=str(polynomial),
        normalized_volume=normalized_volume(polytope),
        origin_interior=contains_origin_interior(polytope),
        fano=fano,
        gorenstein=is_gorenstein(polytope) if fano else None,
        simplicial=is_simplicial(polytope),
        smooth=is_smooth(polytope) if fano else None,
        centrally_symmetric=is_centrally_symmetric(polytope),
        pseudo_symmetric=is_pseudo_symmetric(polytope),
    )


def pair_polytopes(first: Poset, second: Poset,
                   kinds: List[PairingKind]) -> Dict[str, LatticePolytope]:
    """O(P), C(P) and the requested Gamma polytopes, keyed by report name."""
    polytopes = {"O(P)": order_polytope(first), "C(P)": chain_polytope(first)}
    for kind in kinds:
        polytopes[f"Gamma_{kind.value}"] = gamma(kind, first, second)
    return polytopes


def _conditions(first: Poset, second: Poset) -> ConditionSummary:
    common = has_common_linear_extension(first, second)
    if first.d < 2:
        return ConditionSummary(common_linear_extension=common)
    chain_chain = ccs_smooth_condition(first, second)
    summary = ConditionSummary(
        common_linear_extension=common,
        chain_chain=chain_chain,
        order_chain=ocs_smooth_condition(first, second),
        order_order=oos_smooth_condition(first, second) if common else None,
    )
    if chain_chain:
        profile = split_decompose(first, second)
        summary.split = profile.to_dict()
        summary.predicted_volume = predicted_volume(profile)
    return summary


@log_function_call
def analyze_pair(first: Poset, second: Poset,
                 kinds: Optional[List[PairingKind]] = None,
                 include_toric: Optional[bool] = None,
                 include_equivalence: Optional[bool] = None,
                 degree_cap: Optional[int] = None) -> AnalysisReport:
    """
    Run the full analysis of one poset pair.

    Args:
        first: The poset P
        second: The poset Q, of the same size
        kinds: Pairings to build (config default)
        include_toric: Run the Groebner checks (config default)
        include_equivalence: Run the equivalence search (config default)
        degree_cap: Toric oracle degree bound (config default)

    Returns:
        AnalysisReport for the pair
    """
    config = get_analysis_config()
    kinds = kinds or [PairingKind.parse(k) for k in config.kinds]
    include_toric = config.include_toric if include_toric is None else include_toric
    include_equivalence = config.include_equivalence if include_equivalence is None else include_equivalence

    polytopes = []
    for name, polytope in pair_polytopes(first, second, kinds).items():
        with PerformanceLogger(logger, f"{name} profile"):
            polytopes.append(summarize_polytope(name, polytope))

    report = AnalysisReport(
        input={"P": first.to_dict(), "Q": second.to_dict()},
        linear_extensions={"P": count_linear_extensions(first), "Q": count_linear_extensions(second)},
        polytopes=polytopes,
        conditions=_conditions(first, second),
    )

    if include_equivalence and first.d >= 2:
        with PerformanceLogger(logger, "equivalence search"):
            report.equivalence = equivalence_verdicts(first, second).to_dict()

    if include_toric:
        if first.d > get_toric_config().max_dimension:
            logger.warning(f"Skipping toric checks: d={first.d} exceeds the toric limit")
        else:
            checks = [verify_pairing(kind, first, second, degree_cap) for kind in kinds]
            report.toric = [c.to_dict() for c in checks]
            report.hilbert_agreement = _hilbert_agreement(report, checks)
    return report


def _hilbert_agreement(report: AnalysisReport, checks) -> Dict[str, bool]:
    """Hilbert function against the lattice-point counts of the same Gamma.

    Gamma_OO is skipped without a common linear extension: neither the
    Groebner basis nor normality is claimed there.
    """
    by_name = {p.name: p for p in report.polytopes}
    agreement = {}
    for check in checks:
        if check.kind is PairingKind.OO and not report.conditions.common_linear_extension:
            continue
        summary = by_name[f"Gamma_{check.kind.value}"]
        coefficients = [sympy.Rational(c) for c in summary.ehrhart]
        counts = [sum(c * n ** k for k, c in enumerate(coefficients)) for n in range(len(check.hilbert))]
        agreement[check.kind.value] = bool(check.hilbert) and counts == check.hilbert
    return agreement
