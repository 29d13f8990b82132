"""Diagnostic records produced by validation and policy checking.

The code registry below is fixed: every diagnostic the engine can emit is
listed here with its severity, so downstream consumers can filter on stable
codes instead of message text.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


class Code(str, Enum):
    """Registry of diagnostic codes.

    Errors (fail validation):
      DUPLICATE_ID                   repeated item_id / fid / (fid, mfid) / hid / lid
      DANGLING_REFERENCE             function.item_id, malfunction.fid, or
                                     loss_evaluation.hid does not resolve
      DANGLING_ROOT                  scenario root (fid, mfid) does not resolve
      LLR_EXCEEDS_LOSS_LEVEL         loss_levels_reduced above the loss level ordinal
      SMIL_RULE_CONFLICT             two loss evaluations share a rating triple but
                                     carry different SMIL labels with no override

    Warnings (reported, do not fail validation):
      UNKNOWN_FIELD                  unrecognized field accepted in lenient parsing
      FUNCTION_WITHOUT_MALFUNCTIONS  function with no derived malfunctions
      MALFUNCTION_WITHOUT_SCENARIOS  malfunction with no hazardous scenarios
      QM_SCENARIO_WITHOUT_LOSS_EVAL  derived-QM scenario of severity >= S2 with no
                                     loss evaluation and no exempt_loss_eval flag
      DECLARED_ASIL_MISMATCH         authored ASIL differs from the derived rating
      DECLARED_SMIL_MISMATCH         authored SMIL differs from the derived label
      SMIL_POLICY_GAP                rating triple used by the case has no policy rule
      SMIL_RULE_OVERRIDE             a per-evaluation override bypassed the rule table
    """

    UNKNOWN_FIELD = "UNKNOWN_FIELD"
    DUPLICATE_ID = "DUPLICATE_ID"
    DANGLING_REFERENCE = "DANGLING_REFERENCE"
    DANGLING_ROOT = "DANGLING_ROOT"
    LLR_EXCEEDS_LOSS_LEVEL = "LLR_EXCEEDS_LOSS_LEVEL"
    FUNCTION_WITHOUT_MALFUNCTIONS = "FUNCTION_WITHOUT_MALFUNCTIONS"
    MALFUNCTION_WITHOUT_SCENARIOS = "MALFUNCTION_WITHOUT_SCENARIOS"
    QM_SCENARIO_WITHOUT_LOSS_EVAL = "QM_SCENARIO_WITHOUT_LOSS_EVAL"
    DECLARED_ASIL_MISMATCH = "DECLARED_ASIL_MISMATCH"
    DECLARED_SMIL_MISMATCH = "DECLARED_SMIL_MISMATCH"
    SMIL_RULE_CONFLICT = "SMIL_RULE_CONFLICT"
    SMIL_POLICY_GAP = "SMIL_POLICY_GAP"
    SMIL_RULE_OVERRIDE = "SMIL_RULE_OVERRIDE"


# Severity is fixed per code; Diagnostic.__post_init__ fills it from here.
CODE_SEVERITY: dict[Code, Severity] = {
    Code.UNKNOWN_FIELD: Severity.WARNING,
    Code.DUPLICATE_ID: Severity.ERROR,
    Code.DANGLING_REFERENCE: Severity.ERROR,
    Code.DANGLING_ROOT: Severity.ERROR,
    Code.LLR_EXCEEDS_LOSS_LEVEL: Severity.ERROR,
    Code.FUNCTION_WITHOUT_MALFUNCTIONS: Severity.WARNING,
    Code.MALFUNCTION_WITHOUT_SCENARIOS: Severity.WARNING,
    Code.QM_SCENARIO_WITHOUT_LOSS_EVAL: Severity.WARNING,
    Code.DECLARED_ASIL_MISMATCH: Severity.WARNING,
    Code.DECLARED_SMIL_MISMATCH: Severity.WARNING,
    Code.SMIL_RULE_CONFLICT: Severity.ERROR,
    Code.SMIL_POLICY_GAP: Severity.WARNING,
    Code.SMIL_RULE_OVERRIDE: Severity.WARNING,
}


@dataclass(frozen=True)
class Diagnostic:
    """One finding, pinned to a document path such as "scenarios[3].root"."""

    code: Code
    location: str
    message: str

    @property
    def severity(self) -> Severity:
        return CODE_SEVERITY[self.code]

    def to_dict(self) -> dict[str, str]:
        return {
            "code": self.code.value,
            "severity": self.severity.value,
            "location": self.location,
            "message": self.message,
        }

    def render(self) -> str:
        return f"{self.severity.value}[{self.code.value}] {self.location}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """All diagnostics for one document; passes iff no error-level entry."""

    diagnostics: tuple[Diagnostic, ...]

    @property
    def passed(self) -> bool:
        return not any(d.severity is Severity.ERROR for d in self.diagnostics)

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.ERROR)

    @property
    def warnings(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.WARNING)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }
