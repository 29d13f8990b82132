"""Domain records of a safety case: items, functions, malfunctions,
hazardous scenarios, and loss evaluations.

All records are frozen dataclasses; a parsed case never mutates. Identifier
tokens must match ID_PATTERN. Reference resolution and uniqueness are not
enforced here but by validation (see emrm_hara.validate), so that a
structurally broken document can still be loaded and diagnosed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .taxonomy import (
    AsilRating,
    AvoidabilityClass,
    ControllabilityClass,
    ExposureClass,
    LossLevel,
    ManeuverabilityLevel,
    MitigabilityCategory,
    SeverityClass,
    SmilLabel,
)

ID_PATTERN = re.compile(r"^[A-Za-z][A-Za-z0-9_.-]*$")


@dataclass(frozen=True)
class ItemDef:
    """Top-level item under analysis."""

    item_id: str
    definition: str


@dataclass(frozen=True)
class FunctionDef:
    """A function of an item, identified by its FID."""

    fid: str
    item_id: str
    name: str


@dataclass(frozen=True)
class MalfunctionDef:
    """A malfunction of a function; MFIDs are scoped per FID."""

    mfid: str
    fid: str
    description: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.fid, self.mfid)


@dataclass(frozen=True)
class HazardousScenario:
    """One hazardous scenario with its S/E/C ratings and trace root."""

    hid: str
    root: tuple[str, str]  # (fid, mfid)
    description: str
    severity: SeverityClass
    exposure: ExposureClass
    controllability: ControllabilityClass
    declared_asil: AsilRating | None = None
    exempt_loss_eval: bool = False
    note: str | None = None

    @property
    def root_label(self) -> str:
        return f"{self.root[0]}-{self.root[1]}"


@dataclass(frozen=True)
class LossParams:
    """Numeric inputs of the loss formulas for one evaluation.

    occurrence_probability is the probability of the harmful outcome given
    the hazardous situation; mitigation_success_probability is the chance a
    mitigation maneuver succeeds; loss_levels_reduced counts how many loss
    levels a successful mitigation removes.
    """

    severity: SeverityClass
    occurrence_probability: float
    exposure: ExposureClass
    loss_level: LossLevel
    skill: ManeuverabilityLevel
    mitigation_success_probability: float
    loss_levels_reduced: int


@dataclass(frozen=True)
class LossEvaluation:
    """Loss-mitigation assessment row for one hazardous scenario."""

    lid: str
    hid: str
    synopsis: str
    maneuverability: ManeuverabilityLevel
    avoidability: AvoidabilityClass
    mitigability_category: MitigabilityCategory
    loss_params: LossParams
    declared_smil: SmilLabel | None = None
    smil_override: SmilLabel | None = None
    note: str | None = None

    @property
    def triple(self) -> tuple[ManeuverabilityLevel, AvoidabilityClass, MitigabilityCategory]:
        return (self.maneuverability, self.avoidability, self.mitigability_category)


@dataclass(frozen=True)
class SafetyCase:
    """A parsed safety-case document."""

    metadata: dict[str, str] = field(default_factory=dict)
    items: tuple[ItemDef, ...] = ()
    functions: tuple[FunctionDef, ...] = ()
    malfunctions: tuple[MalfunctionDef, ...] = ()
    scenarios: tuple[HazardousScenario, ...] = ()
    loss_evaluations: tuple[LossEvaluation, ...] = ()

    def scenario(self, hid: str) -> HazardousScenario | None:
        """First scenario with the given HID, or None."""
        for scenario in self.scenarios:
            if scenario.hid == hid:
                return scenario
        return None

    def loss_evaluations_for(self, hid: str) -> tuple[LossEvaluation, ...]:
        return tuple(ev for ev in self.loss_evaluations if ev.hid == hid)

    def covered_hids(self) -> frozenset[str]:
        """HIDs referenced by at least one loss evaluation."""
        return frozenset(ev.hid for ev in self.loss_evaluations)
