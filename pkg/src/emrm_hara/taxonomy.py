"""Ordinal taxonomy classes used throughout the hazard and loss analysis.

Every class below is an ordered scale: comparisons follow the integer
value, and for the suffix-labelled scales (S, E, C, L, M, A, Mit) the
integer value equals the label suffix. Members are immutable and safe to
share across concurrent analysis passes.
"""

from __future__ import annotations

from enum import IntEnum


class _LabeledScale(IntEnum):
    """IntEnum whose members carry a serialization label (default: the name)."""

    @property
    def label(self) -> str:
        return self.name

    @classmethod
    def from_label(cls, text: str) -> "_LabeledScale":
        for member in cls:
            if member.label == text:
                return member
        valid = ", ".join(m.label for m in cls)
        raise ValueError(f"unknown {cls.__name__} label {text!r} (expected one of: {valid})")


class SeverityClass(_LabeledScale):
    """Potential harm of a hazardous event."""

    S0 = 0  # No impact: no risk of injury or safety-critical damage
    S1 = 1  # Marginal: minor public injury or property damage
    S2 = 2  # Critical: major injuries or serious infrastructure damage
    S3 = 3  # Catastrophic: risk of death or serious injury


class ExposureClass(_LabeledScale):
    """Probability class of being in the operational situation."""

    E0 = 0  # Incredible: exceptional or rare events
    E1 = 1  # Very low: not expected but possible
    E2 = 2  # Low: could occur
    E3 = 3  # Medium: frequent occurrence
    E4 = 4  # High: expected to happen frequently


class ControllabilityClass(_LabeledScale):
    """How readily the hazardous event can be controlled or avoided."""

    C0 = 0  # Controllable by gentle maneuvers
    C1 = 1  # Simple: easily and reliably controlled
    C2 = 2  # Moderate: generally controllable, medium risk of harm
    C3 = 3  # Difficult: challenging to control or uncontrollable


class AsilRating(_LabeledScale):
    """Automotive safety integrity level, QM lowest through D highest."""

    QM = 0
    A = 1
    B = 2
    C = 3
    D = 4


class LossLevel(_LabeledScale):
    """Granular severity of the actual undesirable outcome."""

    L0 = 0  # Damage to objects outside the vehicle
    L1 = 1  # Damage with major economic loss
    L2 = 2  # Serious damage to infrastructure
    L3 = 3  # Minor injuries to people
    L4 = 4  # Severe injury to people
    L5 = 5  # Indirect cause of loss of life
    L6 = 6  # Directly causing loss of life


class ManeuverabilityLevel(_LabeledScale):
    """Capability of the vehicle and planner to execute evasive maneuvers."""

    M1 = 1  # Basic maneuvers only
    M2 = 2  # Average: handles moderately hazardous situations
    M3 = 3  # Pro: critical-hazard avoidance or loss mitigation


class AvoidabilityClass(_LabeledScale):
    """Likelihood that a hazardous situation can be avoided once it occurs."""

    A1 = 1  # Avoidable
    A2 = 2  # Challenging
    A3 = 3  # Inevitable


class MitigabilityCategory(_LabeledScale):
    """Impact category of a mitigation maneuver on the loss level.

    Serialized as "Mit1".."Mit3" to keep the namespace distinct from the
    maneuverability scale M1..M3.
    """

    MIT1 = 1  # Low impact, low chance of reducing small levels of loss
    MIT2 = 2  # Medium impact, medium chance of reducing a few levels
    MIT3 = 3  # High impact, good chance of reducing multiple levels

    @property
    def label(self) -> str:
        return f"Mit{self.value}"


class SmilLabel(_LabeledScale):
    """Severity mitigation integrity level.

    Six ordered values A < B < C < D < E < F; serialized as the bare
    letter, displayed as "SMIL-<letter>".
    """

    A = 1
    B = 2
    C = 3
    D = 4
    E = 5
    F = 6

    @property
    def display(self) -> str:
        return f"SMIL-{self.name}"


def ordinal(value: IntEnum) -> int:
    """Numeric index of an ordinal taxonomy member (S3 -> 3, E4 -> 4, L6 -> 6)."""
    return int(value)
