"""ASIL derivation from Severity/Exposure/Controllability triples.

The nonzero grid (S1-S3, E1-E4, C1-C3) follows the ISO 26262-3 risk
determination table, which the ordinal sum rule below reproduces exactly:
QM for sums up to 6, then A/B/C/D for sums 7/8/9/10. The zero classes
S0/E0/C0 extend the standard's scales and force QM unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import SafetyCase
from .taxonomy import (
    AsilRating,
    ControllabilityClass,
    ExposureClass,
    SeverityClass,
    ordinal,
)

# Ordinal sum -> rating on the nonzero grid.
_SUM_TO_ASIL = {7: AsilRating.A, 8: AsilRating.B, 9: AsilRating.C, 10: AsilRating.D}

ZERO_RULE_TRACE = "zero-class => QM"


def derive_asil(
    severity: SeverityClass,
    exposure: ExposureClass,
    controllability: ControllabilityClass,
) -> AsilRating:
    """Rating for one S/E/C triple."""
    rating, _ = derive_asil_traced(severity, exposure, controllability)
    return rating


def derive_asil_traced(
    severity: SeverityClass,
    exposure: ExposureClass,
    controllability: ControllabilityClass,
) -> tuple[AsilRating, str]:
    """Rating plus a human-readable trace of which rule fired."""
    if severity is SeverityClass.S0 or exposure is ExposureClass.E0 or controllability is ControllabilityClass.C0:
        return AsilRating.QM, ZERO_RULE_TRACE
    total = ordinal(severity) + ordinal(exposure) + ordinal(controllability)
    trace = f"sum rule, S+E+C = {total}"
    return _SUM_TO_ASIL.get(total, AsilRating.QM), trace


@dataclass(frozen=True)
class ScenarioAssessment:
    """Derived ASIL for one scenario with rule provenance.

    mismatch is set iff the document carried a declared ASIL that differs
    from the derived one; the derivation is authoritative, the disagreement
    is a finding.
    """

    hid: str
    asil: AsilRating
    rule_trace: str
    mismatch: tuple[AsilRating, AsilRating] | None = None  # (declared, derived)

    def to_dict(self) -> dict:
        return {
            "hid": self.hid,
            "derived_asil": self.asil.label,
            "rule_trace": self.rule_trace,
            "mismatch": None
            if self.mismatch is None
            else {"declared": self.mismatch[0].label, "derived": self.mismatch[1].label},
        }


def assess_scenarios(case: SafetyCase) -> list[ScenarioAssessment]:
    """One assessment per scenario, in document order."""
    assessments = []
    for scenario in case.scenarios:
        rating, trace = derive_asil_traced(
            scenario.severity, scenario.exposure, scenario.controllability
        )
        mismatch = None
        if scenario.declared_asil is not None and scenario.declared_asil is not rating:
            mismatch = (scenario.declared_asil, rating)
        assessments.append(
            ScenarioAssessment(hid=scenario.hid, asil=rating, rule_trace=trace, mismatch=mismatch)
        )
    return assessments
