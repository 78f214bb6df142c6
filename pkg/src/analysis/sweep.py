"""
Exhaustive verification sweeps over labeled poset pairs.

Every pair (P, Q) of labeled posets on d elements is checked against the
combinatorial criteria and the Ehrhart, Fano, toric and equivalence
identities. Results are plain-dict records, one per (d, P, Q, kind); any
failed check marks its record as a mismatch.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed

from src.fano.classify import (
    ccs_smooth_condition,
    equivalence_verdicts,
    ocs_smooth_condition,
    oos_smooth_condition,
    predicted_volume,
    profile_direct_sum,
    split_decompose,
    split_polytope,
    split_symmetry_holds,
)
from src.gamma.construct import PairingKind, chain_polytope, gamma, order_polytope
from src.geometry.ehrhart import EhrhartPolynomial, ehrhart, normalized_volume
from src.geometry.equivalence import unimodular_equivalent
from src.geometry.lattice import lattice_point_count
from src.geometry.polytope import LatticePolytope
from src.geometry.properties import is_fano, is_gorenstein, is_simplicial, is_smooth
from src.poset.core import Poset
from src.poset.families import (
    count_linear_extensions,
    count_linear_extensions_bruteforce,
    enumerate_posets,
    has_common_linear_extension,
)
from src.toric.groebner import verify_pairing
from src.utils.config import get_performance_config, get_sweep_config
from src.utils.logger import PerformanceLogger, get_logger, log_function_call

logger = get_logger(__name__)

CHECK_GROUPS = ("ehrhart", "chain-chain", "order-chain", "order-order", "equivalence", "stanley", "toric")

# --theorem selectors
THEOREM_GROUPS = {
    "1.1": ("ehrhart", "toric"),
    "2.1": ("chain-chain",),
    "2.2": ("order-chain",),
    "2.3": ("order-order",),
    "3.1": ("equivalence",),
}


@dataclass
class SweepOptions:
    """What to run for each pair."""

    groups: Tuple[str, ...] = CHECK_GROUPS
    toric: bool = True
    degree_cap: Optional[int] = None

    def wants(self, group: str) -> bool:
        return group in self.groups


def parse_groups(text: Optional[str]) -> Tuple[str, ...]:
    """Comma-separated check groups; None or 'all' selects every group."""
    if not text or text == "all":
        return CHECK_GROUPS
    groups = tuple(g.strip() for g in text.split(",") if g.strip())
    unknown = [g for g in groups if g not in CHECK_GROUPS]
    if unknown:
        raise ValueError(f"unknown check group(s) {unknown}, expected some of {CHECK_GROUPS}")
    return groups


def parse_theorems(text: str) -> Tuple[str, ...]:
    """Check groups for a comma-separated list of --theorem selectors."""
    groups: List[str] = []
    for selector in (s.strip() for s in text.split(",") if s.strip()):
        if selector not in THEOREM_GROUPS:
            raise ValueError(f"unknown theorem selector {selector!r}, expected one of {list(THEOREM_GROUPS)}")
        groups += [g for g in THEOREM_GROUPS[selector] if g not in groups]
    if not groups:
        raise ValueError("no theorem selector given")
    return tuple(groups)


@dataclass
class _Record:
    d: int
    kind: str
    first: Poset
    second: Optional[Poset] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "kind": self.kind,
            "P": self.first.to_dict()["covers"],
            "Q": self.second.to_dict()["covers"] if self.second is not None else None,
            "checks": dict(self.checks),
            "values": dict(self.values),
            "error": self.error,
            "mismatch": self.error is not None or not all(self.checks.values()),
        }


def _coeffs(polynomial: EhrhartPolynomial) -> List[str]:
    return [str(c) for c in polynomial.coefficients]


def _smoothness(polytope: LatticePolytope) -> Tuple[bool, bool]:
    return is_simplicial(polytope), is_fano(polytope) and is_smooth(polytope)


def check_pair(first: Poset, second: Poset, options: SweepOptions) -> List[Dict[str, Any]]:
    """All records for one ordered pair (P, Q)."""
    d = first.d
    records = {kind: _Record(d, kind.value, first, second) for kind in PairingKind.pairings()}
    try:
        _check_pair_into(first, second, options, records)
    except Exception as e:  # recorded, the sweep carries on
        logger.error(f"Pair {first.describe()} / {second.describe()} failed: {e}")
        for record in records.values():
            record.error = f"{type(e).__name__}: {e}"
    return [r.to_dict() for r in records.values() if r.checks or r.error]


def _check_pair_into(first: Poset, second: Poset, options: SweepOptions,
                     records: Dict[PairingKind, _Record]) -> None:
    d = first.d
    common = has_common_linear_extension(first, second)
    polytopes = {kind: gamma(kind, first, second) for kind in PairingKind.pairings()}
    oo, oc, cc = (records[k] for k in PairingKind.pairings())

    if options.wants("ehrhart"):
        polys = {kind: ehrhart(p) for kind, p in polytopes.items()}
        swapped = ehrhart(gamma(PairingKind.CC, second, first))
        cc.checks["ehrhart_oc_equals_cc"] = polys[PairingKind.OC] == polys[PairingKind.CC]
        oc.checks["ehrhart_oc_equals_swapped_cc"] = polys[PairingKind.OC] == swapped
        if common:
            oo.checks["ehrhart_oo_equals_oc"] = polys[PairingKind.OO] == polys[PairingKind.OC]
        for kind, polynomial in polys.items():
            records[kind].values["ehrhart"] = _coeffs(polynomial)

        for kind in (PairingKind.OC, PairingKind.CC):
            polytope = polytopes[kind]
            records[kind].checks["gorenstein_fano"] = is_fano(polytope) and is_gorenstein(polytope)
        oo_polytope = polytopes[PairingKind.OO]
        oo_status = is_fano(oo_polytope) and is_gorenstein(oo_polytope)
        oo.checks["gorenstein_fano_iff_common_extension"] = oo_status == common
        oo.values["common_linear_extension"] = common

    if d >= 2 and options.wants("chain-chain"):
        simplicial, smooth = _smoothness(polytopes[PairingKind.CC])
        predicted = ccs_smooth_condition(first, second)
        cc.checks["chain_chain_condition"] = predicted == smooth == simplicial
        if predicted:
            profile = split_decompose(first, second)
            cc.values["split"] = [profile.l, profile.m, profile.n]
            cc.checks["split_volume"] = normalized_volume(polytopes[PairingKind.CC]) == predicted_volume(profile)
            cc.checks["split_realisation"] = split_polytope(profile, d) == polytopes[PairingKind.CC]
            cc.checks["split_equivalence"] = (
                unimodular_equivalent(profile_direct_sum(profile), polytopes[PairingKind.CC]) is not None
            )
            cc.checks["split_symmetry"] = split_symmetry_holds(profile, polytopes[PairingKind.CC])

    if d >= 2 and options.wants("order-chain"):
        simplicial, smooth = _smoothness(polytopes[PairingKind.OC])
        oc.checks["order_chain_condition"] = ocs_smooth_condition(first, second) == smooth == simplicial

    if d >= 2 and common and options.wants("order-order"):
        simplicial, smooth = _smoothness(polytopes[PairingKind.OO])
        oo.checks["order_order_condition"] = oos_smooth_condition(first, second) == smooth == simplicial

    if d >= 3 and options.wants("equivalence") and all(
        _smoothness(polytopes[k])[1] for k in PairingKind.pairings()
    ):
        verdicts = equivalence_verdicts(first, second)
        oc.checks["oo_equivalent_cc"] = verdicts.oo_to_cc is not None
        oc.checks["oc_not_equivalent_oo"] = verdicts.oc_to_oo is None
        oc.checks["oc_not_equivalent_cc"] = verdicts.oc_to_cc is None
        if first != second:
            swapped = gamma(PairingKind.OC, second, first)
            oc.checks["swapped_oc_smooth"] = _smoothness(swapped)[1]
            oc.checks["oc_not_equivalent_swapped"] = verdicts.oc_to_swapped is None
        oc.values["symmetric_vertex_counts"] = verdicts.symmetric_counts

    if options.toric and options.wants("toric") and d <= get_sweep_config().toric_max_dimension:
        hilbert = {}
        # G_OO is only claimed to be a Groebner basis under a common linear extension
        kinds = [k for k in PairingKind.pairings() if k is not PairingKind.OO or common]
        for kind in kinds:
            result = verify_pairing(kind, first, second, options.degree_cap)
            record = records[kind]
            record.checks["groebner_basis"] = result.groebner
            record.checks["initial_is_first"] = result.initial_is_first
            record.checks["squarefree_initial_ideal"] = bool(result.squarefree)
            counts = [lattice_point_count(polytopes[kind], n) for n in range(d + 2)]
            record.checks["hilbert_equals_ehrhart"] = result.hilbert == counts
            record.values["hilbert"] = result.hilbert
            hilbert[kind] = result.hilbert
        cc.checks["hilbert_oc_equals_cc"] = hilbert[PairingKind.OC] == hilbert[PairingKind.CC]
        if common:
            oo.checks["hilbert_oo_equals_cc"] = hilbert[PairingKind.OO] == hilbert[PairingKind.CC]


def check_poset(poset: Poset) -> Dict[str, Any]:
    """Order against chain polytope: same Ehrhart polynomial, volume e(P)."""
    record = _Record(poset.d, "O/C", poset)
    order, chain = order_polytope(poset), chain_polytope(poset)
    extensions = count_linear_extensions(poset)
    order_poly, chain_poly = ehrhart(order), ehrhart(chain)
    record.checks["ehrhart_order_equals_chain"] = order_poly == chain_poly
    record.checks["order_volume_is_e"] = normalized_volume(order) == extensions
    record.checks["chain_volume_is_e"] = normalized_volume(chain) == extensions
    record.checks["e_matches_bruteforce"] = extensions == count_linear_extensions_bruteforce(poset)
    record.values["ehrhart"] = _coeffs(order_poly)
    record.values["linear_extensions"] = extensions
    return record.to_dict()


def select_pairs(posets: Sequence[Poset]) -> List[Tuple[Poset, Poset]]:
    """
    Every ordered pair, or a fixed stride sample when the count exceeds the
    configured exhaustive limit.
    """
    config = get_sweep_config()
    total = len(posets) ** 2
    if total <= config.exhaustive_pair_limit:
        return [(p, q) for p in posets for q in posets]
    stride = max(1, total // config.sample_pairs)
    chosen = [(posets[k // len(posets)], posets[k % len(posets)]) for k in range(0, total, stride)]
    logger.warning(f"{total} pairs exceed the exhaustive limit; sampling {len(chosen[:config.sample_pairs])}")
    return chosen[:config.sample_pairs]


def _run(tasks: Iterable, jobs: int) -> List:
    """
    Run delayed tasks through joblib.

    ``sweep.pair_timeout`` bounds each task only when workers are used;
    joblib runs ``jobs=1`` in-process and cannot interrupt a task there.
    """
    timeout = get_sweep_config().pair_timeout
    if jobs == 1 and timeout:
        logger.info(f"Serial sweep: the {timeout:g}s pair timeout is not enforced")
    return Parallel(n_jobs=jobs, timeout=timeout)(tasks)


@log_function_call
def sweep(d: int, options: Optional[SweepOptions] = None, jobs: Optional[int] = None) -> List[Dict[str, Any]]:
    """
    Sweep all labeled poset pairs on d elements.

    Args:
        d: Poset size, within the configured sweep range
        options: Check selection
        jobs: Worker count (performance.max_workers by default)

    Returns:
        Records in input order

    Raises:
        ValueError: If d is outside the sweep range
    """
    config = get_sweep_config()
    if not config.min_dimension <= d <= config.max_dimension:
        raise ValueError(f"sweeps run for {config.min_dimension} <= d <= {config.max_dimension}, got {d}")
    options = options or SweepOptions()
    performance = get_performance_config()
    jobs = jobs or (performance.max_workers if performance.parallel_processing else 1)

    posets = list(enumerate_posets(d))
    records: List[Dict[str, Any]] = []
    with PerformanceLogger(logger, f"sweep d={d} over {len(posets)} posets"):
        if options.wants("stanley"):
            records += _run((delayed(check_poset)(p) for p in posets), jobs)
        pair_groups = [g for g in options.groups if g != "stanley"]
        if pair_groups:
            pairs = select_pairs(posets)
            logger.info(f"Checking {len(pairs)} pairs with {jobs} worker(s)")
            for batch in _run((delayed(check_pair)(p, q, options) for p, q in pairs), jobs):
                records += batch
    return records


def summarize(records: List[Dict[str, Any]]) -> pd.DataFrame:
    """Pass and failure counts per check."""
    rows = [
        {"check": name, "passed": bool(value)}
        for record in records
        for name, value in record["checks"].items()
    ]
    if not rows:
        return pd.DataFrame(columns=["check", "passed", "failed"])
    frame = pd.DataFrame(rows)
    summary = frame.groupby("check")["passed"].agg(passed="sum", total="count").reset_index()
    summary["failed"] = summary["total"] - summary["passed"]
    return summary[["check", "passed", "failed"]]


def mismatch_count(records: List[Dict[str, Any]]) -> int:
    return sum(1 for r in records if r["mismatch"])
