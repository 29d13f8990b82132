"""Loss-evaluation engine: baseline loss, mitigability, risk reduction,
SMIL derivation, and the EMRM suitability gate.

The three loss quantities are plain products over configurable weight
tables:

    baseline_loss = severity_weight * occurrence_probability
                    * exposure_weight * loss_weight
    mitigability  = skill_weight * mitigation_success_probability
                    * loss_levels_reduced
    risk reduction (%) = 100 * mitigability / baseline_loss, clamped to 100
                         and undefined (None) when baseline_loss is zero

SMIL labels come from a declarative policy table keyed on the
(maneuverability, avoidability, mitigability category) triple. The table is
deliberately partial; a lookup outside it is an error, never a default. A
per-evaluation override bypasses the table and is always reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .diagnostics import Code, Diagnostic, ValidationReport
from .model import LossEvaluation, SafetyCase
from .taxonomy import (
    AvoidabilityClass,
    ExposureClass,
    LossLevel,
    ManeuverabilityLevel,
    MitigabilityCategory,
    SeverityClass,
    SmilLabel,
    ordinal,
)

Triple = tuple[ManeuverabilityLevel, AvoidabilityClass, MitigabilityCategory]


class ConfigError(Exception):
    """Weight or policy file is unreadable or structurally invalid."""


class PolicyError(Exception):
    """SMIL policy is semantically unusable (conflicting rules, empty gate set)."""


class PolicyGapError(PolicyError):
    """A rating triple in use has no policy rule and no override."""

    def __init__(self, triple: Triple, lid: str | None = None):
        self.triple = triple
        self.lid = lid
        where = f" (loss evaluation {lid})" if lid else ""
        super().__init__(f"no SMIL rule for triple {format_triple(triple)}{where}")


def format_triple(triple: Triple) -> str:
    return f"({triple[0].label}, {triple[1].label}, {triple[2].label})"


def _parse_weight_map(raw: object, enum_cls, section: str) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError(f"weights.{section}: expected an object of label -> number")
    parsed = {}
    for key, value in raw.items():
        try:
            member = enum_cls.from_label(key)
        except ValueError as exc:
            raise ConfigError(f"weights.{section}: {exc}") from exc
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"weights.{section}.{key}: expected a number")
        if value < 0:
            raise ConfigError(f"weights.{section}.{key}: weights must be nonnegative")
        parsed[member] = float(value)
    missing = [m.label for m in enum_cls if m not in parsed]
    if missing:
        raise ConfigError(f"weights.{section}: missing entries for {', '.join(missing)}")
    members = sorted(parsed)
    for lower, upper in zip(members, members[1:]):
        if parsed[lower] >= parsed[upper]:
            raise ConfigError(
                f"weights.{section}: weights must strictly increase along the scale "
                f"({lower.label}={parsed[lower]:g} vs {upper.label}={parsed[upper]:g})"
            )
    return parsed


@dataclass(frozen=True)
class WeightConfig:
    """Numeric interpretation of the ordinal scales used by the loss formulas.

    Each map is total over its scale and strictly increasing in scale order.
    """

    severity: dict[SeverityClass, float]
    exposure: dict[ExposureClass, float]
    loss: dict[LossLevel, float]
    skill: dict[ManeuverabilityLevel, float]

    @classmethod
    def from_dict(cls, data: dict) -> "WeightConfig":
        if not isinstance(data, dict):
            raise ConfigError("weights: expected a JSON object")
        unknown = set(data) - {"severity", "exposure", "loss", "skill"}
        if unknown:
            raise ConfigError(f"weights: unknown sections {sorted(unknown)}")
        for section in ("severity", "exposure", "loss", "skill"):
            if section not in data:
                raise ConfigError(f"weights: missing section {section!r}")
        return cls(
            severity=_parse_weight_map(data["severity"], SeverityClass, "severity"),
            exposure=_parse_weight_map(data["exposure"], ExposureClass, "exposure"),
            loss=_parse_weight_map(data["loss"], LossLevel, "loss"),
            skill=_parse_weight_map(data["skill"], ManeuverabilityLevel, "skill"),
        )

    def to_dict(self) -> dict:
        return {
            "severity": {m.label: self.severity[m] for m in SeverityClass},
            "exposure": {m.label: self.exposure[m] for m in ExposureClass},
            "loss": {m.label: self.loss[m] for m in LossLevel},
            "skill": {m.label: self.skill[m] for m in ManeuverabilityLevel},
        }


@dataclass(frozen=True)
class SmilPolicy:
    """Partial rule table (triple -> SMIL) plus the acceptable-gate set."""

    rules: dict[Triple, SmilLabel]
    acceptable: frozenset[SmilLabel]

    def __post_init__(self):
        if not self.acceptable:
            raise PolicyError("policy: the acceptable SMIL set must not be empty")

    @classmethod
    def from_dict(cls, data: dict) -> "SmilPolicy":
        if not isinstance(data, dict):
            raise ConfigError("policy: expected a JSON object")
        unknown = set(data) - {"rules", "acceptable"}
        if unknown:
            raise ConfigError(f"policy: unknown sections {sorted(unknown)}")
        raw_rules = data.get("rules", [])
        if not isinstance(raw_rules, list):
            raise ConfigError("policy.rules: expected an array of rule objects")
        rules: dict[Triple, SmilLabel] = {}
        for i, raw in enumerate(raw_rules):
            where = f"policy.rules[{i}]"
            if not isinstance(raw, dict):
                raise ConfigError(f"{where}: expected an object")
            unknown = set(raw) - {"maneuverability", "avoidability", "mitigability", "smil"}
            if unknown:
                raise ConfigError(f"{where}: unknown fields {sorted(unknown)}")
            try:
                triple = (
                    ManeuverabilityLevel.from_label(raw["maneuverability"]),
                    AvoidabilityClass.from_label(raw["avoidability"]),
                    MitigabilityCategory.from_label(raw["mitigability"]),
                )
                smil = SmilLabel.from_label(raw["smil"])
            except KeyError as exc:
                raise ConfigError(f"{where}: missing field {exc.args[0]!r}") from exc
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"{where}: {exc}") from exc
            if triple in rules:
                raise PolicyError(
                    f"{where}: duplicate rule for triple {format_triple(triple)} "
                    f"({rules[triple].label} vs {smil.label})"
                )
            rules[triple] = smil
        raw_acceptable = data.get("acceptable")
        if not isinstance(raw_acceptable, list):
            raise ConfigError("policy.acceptable: expected an array of SMIL labels")
        try:
            acceptable = frozenset(SmilLabel.from_label(label) for label in raw_acceptable)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"policy.acceptable: {exc}") from exc
        return cls(rules=rules, acceptable=acceptable)

    def to_dict(self) -> dict:
        ordered = sorted(self.rules.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2]))
        return {
            "rules": [
                {
                    "maneuverability": triple[0].label,
                    "avoidability": triple[1].label,
                    "mitigability": triple[2].label,
                    "smil": smil.label,
                }
                for triple, smil in ordered
            ],
            "acceptable": [label.label for label in sorted(self.acceptable)],
        }


def _load_config_json(text: str | bytes, what: str) -> dict:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError(f"{what}: not valid UTF-8: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_weight_config(text: str | bytes) -> WeightConfig:
    return WeightConfig.from_dict(_load_config_json(text, "weights"))


def load_smil_policy(text: str | bytes) -> SmilPolicy:
    return SmilPolicy.from_dict(_load_config_json(text, "policy"))


def _data_text(name: str) -> str:
    return resources.files("emrm_hara").joinpath(f"data/{name}").read_text(encoding="utf-8")


def default_weight_config() -> WeightConfig:
    """Bundled default weights (ordinal indices; exposure as probability decades)."""
    return load_weight_config(_data_text("default_weights.json"))


def default_smil_policy() -> SmilPolicy:
    """Bundled default policy covering the triples attested by the demo case."""
    return load_smil_policy(_data_text("default_smil_policy.json"))


def baseline_loss(
    severity: SeverityClass,
    probability: float,
    exposure: ExposureClass,
    loss: LossLevel,
    weights: WeightConfig,
) -> float:
    """Expected loss of the scenario without any EMRM intervention."""
    if not 0.0 <= probability <= 1.0:
        raise ValueError(f"occurrence probability must be in [0, 1], got {probability!r}")
    return weights.severity[severity] * probability * weights.exposure[exposure] * weights.loss[loss]


def mitigability(
    skill: ManeuverabilityLevel,
    success_probability: float,
    loss_levels_reduced: int,
    weights: WeightConfig,
) -> float:
    """Expected mitigation capacity of the maneuver."""
    if not 0.0 <= success_probability <= 1.0:
        raise ValueError(f"mitigation success probability must be in [0, 1], got {success_probability!r}")
    if not 0 <= loss_levels_reduced <= ordinal(max(LossLevel)):
        raise ValueError(f"loss_levels_reduced must be in [0, 6], got {loss_levels_reduced!r}")
    return weights.skill[skill] * success_probability * loss_levels_reduced


def emrm_risk_reduction(baseline: float, mitigability_value: float) -> float | None:
    """Percentage of the baseline loss removed by mitigation.

    Returns None when the baseline is zero (no loss to reduce). Values are
    clamped to 100: a maneuver cannot remove more loss than exists; the
    caller attaches the clamp warning.
    """
    if baseline < 0 or mitigability_value < 0:
        raise ValueError("baseline and mitigability must be nonnegative")
    if baseline == 0:
        return None
    return min(mitigability_value / baseline * 100.0, 100.0)


def derive_smil(
    maneuverability: ManeuverabilityLevel,
    avoidability: AvoidabilityClass,
    mitigability_category: MitigabilityCategory,
    policy: SmilPolicy,
    override: SmilLabel | None = None,
) -> SmilLabel:
    """Policy lookup for one triple; an override bypasses the table."""
    if override is not None:
        return override
    triple = (maneuverability, avoidability, mitigability_category)
    try:
        return policy.rules[triple]
    except KeyError:
        raise PolicyGapError(triple) from None


GATE_ACCEPTABLE = "acceptable"
GATE_NOT_ACCEPTABLE = "not_acceptable"


def gate_decision(smil: SmilLabel, policy: SmilPolicy) -> str:
    """EMRM suitability verdict for one SMIL label."""
    return GATE_ACCEPTABLE if smil in policy.acceptable else GATE_NOT_ACCEPTABLE


def check_policy(policy: SmilPolicy, case: SafetyCase) -> ValidationReport:
    """Pre-flight check of a policy against a case.

    Flags (a) pairs of loss evaluations that share a rating triple but carry
    different SMIL labels with no override on either side, and (b) triples
    the case needs (no override) that have no rule.
    """
    diagnostics: list[Diagnostic] = []
    indexed = list(enumerate(case.loss_evaluations))

    def effective_label(ev: LossEvaluation) -> SmilLabel | None:
        if ev.declared_smil is not None:
            return ev.declared_smil
        return policy.rules.get(ev.triple)

    for pos, (i, first) in enumerate(indexed):
        if first.smil_override is not None:
            continue
        for j, second in indexed[pos + 1 :]:
            if second.smil_override is not None or first.triple != second.triple:
                continue
            a, b = effective_label(first), effective_label(second)
            if a is not None and b is not None and a is not b:
                diagnostics.append(
                    Diagnostic(
                        code=Code.SMIL_RULE_CONFLICT,
                        location=f"loss_evaluations[{j}]",
                        message=(
                            f"{second.lid} and {first.lid} share triple "
                            f"{format_triple(first.triple)} but map to SMIL "
                            f"{b.label} vs {a.label} with no override"
                        ),
                    )
                )

    seen: set[Triple] = set()
    for i, ev in indexed:
        if ev.smil_override is not None or ev.triple in policy.rules or ev.triple in seen:
            continue
        seen.add(ev.triple)
        diagnostics.append(
            Diagnostic(
                code=Code.SMIL_POLICY_GAP,
                location=f"loss_evaluations[{i}]",
                message=f"no SMIL rule for triple {format_triple(ev.triple)} (first used by {ev.lid})",
            )
        )
    return ValidationReport(diagnostics=tuple(diagnostics))


@dataclass(frozen=True)
class LossAssessment:
    """Derived loss quantities, SMIL, and gate verdict for one evaluation."""

    lid: str
    baseline_loss: float
    mitigability_value: float
    risk_reduction_percent: float | None  # None when baseline_loss == 0
    smil: SmilLabel
    gate: str
    warnings: tuple[str, ...] = ()
    override_applied: bool = False
    clamped: bool = False

    def to_dict(self) -> dict:
        return {
            "lid": self.lid,
            "baseline_loss": self.baseline_loss,
            "mitigability": self.mitigability_value,
            "risk_reduction_percent": self.risk_reduction_percent,
            "smil": self.smil.label,
            "gate": self.gate,
            "warnings": list(self.warnings),
            "override_applied": self.override_applied,
            "clamped": self.clamped,
        }


def evaluate_losses(
    case: SafetyCase, weights: WeightConfig, policy: SmilPolicy
) -> list[LossAssessment]:
    """One assessment per loss evaluation, in document order.

    Raises PolicyGapError (carrying the offending lid) when a triple has no
    rule and no override.
    """
    assessments = []
    for ev in case.loss_evaluations:
        params = ev.loss_params
        base = baseline_loss(
            params.severity, params.occurrence_probability, params.exposure, params.loss_level, weights
        )
        mit = mitigability(
            params.skill, params.mitigation_success_probability, params.loss_levels_reduced, weights
        )
        reduction = emrm_risk_reduction(base, mit)
        warnings = []
        clamped = base > 0 and mit > base
        if clamped:
            warnings.append(
                f"mitigation capacity {mit:.6g} exceeds baseline loss {base:.6g}; "
                "risk reduction clamped to 100%"
            )
        try:
            smil = derive_smil(
                ev.maneuverability, ev.avoidability, ev.mitigability_category, policy,
                override=ev.smil_override,
            )
        except PolicyGapError as exc:
            raise PolicyGapError(exc.triple, lid=ev.lid) from None
        if ev.smil_override is not None:
            warnings.append(f"SMIL rule table bypassed by override {ev.smil_override.display}")
        assessments.append(
            LossAssessment(
                lid=ev.lid,
                baseline_loss=base,
                mitigability_value=mit,
                risk_reduction_percent=reduction,
                smil=smil,
                gate=gate_decision(smil, policy),
                warnings=tuple(warnings),
                override_applied=ev.smil_override is not None,
                clamped=clamped,
            )
        )
    return assessments
