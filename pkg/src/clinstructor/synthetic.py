"""Synthetic labeled corpora with known ground truth.

Each generated note embeds its planted attributes as ``NAME: value`` lines so
an offline mock extractor can recover them exactly. Labels are drawn from a
logistic model over the planted attribute effects, with the intercept
calibrated so the expected positive fraction matches the requested rate.
The ground-truth table records, per note, every pool attribute's value or
absence, making end-to-end runs checkable without any LLM.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from clinstructor.corpus import AdmissionNote

_NAME_RE = re.compile(r"^[A-Z][A-Z0-9_]+$")

# Raising this sharpens the label logistic toward a deterministic threshold;
# 3.0 keeps the corpus close to linearly separable (direct logistic fit on the
# ground-truth attributes reaches ~0.99 AUC) while leaving some label noise.
DEFAULT_LABEL_SHARPNESS = 3.0


@dataclass(frozen=True)
class SyntheticAttribute:
    """One plantable attribute: a name, categorical values with effects, and a
    predictive weight controlling how much it moves the label logit."""

    name: str
    weight: float
    values: tuple[tuple[str, float], ...]

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ValueError(f"attribute name must be UPPER_SNAKE_CASE, got {self.name!r}")
        if not self.values:
            raise ValueError(f"attribute {self.name}: needs at least one value")
        for value, _effect in self.values:
            if not value or value.strip().lower() == "n/a":
                raise ValueError(f"attribute {self.name}: invalid planted value {value!r}")

    @property
    def phrase(self) -> str:
        """Human-readable form used in generated questions, e.g. 'heart rhythm'."""
        return self.name.lower().replace("_", " ")


def _vitals(*pairs: tuple[str, float]) -> tuple[tuple[str, float], ...]:
    return tuple(pairs)


# No attribute name may start with PATIENT_ (the mock keyword templates prefix
# it) and no phrase may be a whole-word nesting of another phrase; both rules
# keep mock-generated clusters and answer lookups one-to-one with attributes.
DEFAULT_ATTRIBUTE_POOL: tuple[SyntheticAttribute, ...] = (
    # Strong predictors: these dominate both the label and the importance
    # ranking, so top-K selection should surface them first.
    SyntheticAttribute("MENTAL_STATUS", 1.0, _vitals(
        ("alert and oriented", -1.0), ("mildly confused", 0.2),
        ("lethargic", 0.6), ("unresponsive", 1.0))),
    SyntheticAttribute("LACTATE_LEVEL", 0.95, _vitals(
        ("1.1 mmol/L", -1.0), ("2.4 mmol/L", 0.1),
        ("4.8 mmol/L", 0.7), ("9.6 mmol/L", 1.0))),
    SyntheticAttribute("VASOPRESSOR_SUPPORT", 0.9, _vitals(
        ("none required", -1.0), ("low dose norepinephrine", 0.5),
        ("high dose norepinephrine", 1.0))),
    SyntheticAttribute("BREATHING_SUPPORT", 0.85, _vitals(
        ("room air", -1.0), ("nasal cannula", -0.2),
        ("non-rebreather mask", 0.5), ("mechanical ventilation", 1.0))),
    SyntheticAttribute("CODE_STATUS", 0.8, _vitals(
        ("full code", -0.6), ("DNR", 0.7), ("comfort measures only", 1.0))),
    SyntheticAttribute("CONSCIOUSNESS_SCORE", 0.8, _vitals(
        ("15 of 15", -1.0), ("12 of 15", 0.0), ("8 of 15", 0.6), ("3 of 15", 1.0))),
    # Medium predictors.
    SyntheticAttribute("AGE", 0.6, _vitals(
        ("34 years", -1.0), ("52 years", -0.4), ("71 years", 0.3), ("88 years", 1.0))),
    SyntheticAttribute("OXYGEN_SATURATION", 0.55, _vitals(
        ("99% on room air", -1.0), ("94%", -0.2), ("88%", 0.6), ("79%", 1.0))),
    SyntheticAttribute("SYSTOLIC_PRESSURE", 0.5, _vitals(
        ("128 mmHg", -0.6), ("104 mmHg", -0.1), ("82 mmHg", 0.7), ("64 mmHg", 1.0))),
    SyntheticAttribute("HEART_RHYTHM", 0.5, _vitals(
        ("normal sinus rhythm", -0.8), ("atrial fibrillation", 0.4),
        ("ventricular tachycardia", 1.0))),
    SyntheticAttribute("KIDNEY_FUNCTION", 0.45, _vitals(
        ("normal baseline", -0.7), ("acute injury", 0.5), ("dialysis dependent", 0.9))),
    SyntheticAttribute("CREATININE", 0.45, _vitals(
        ("0.9 mg/dL", -0.7), ("1.6 mg/dL", 0.1), ("3.2 mg/dL", 0.8))),
    SyntheticAttribute("WHITE_CELL_COUNT", 0.4, _vitals(
        ("7.2 thousand", -0.5), ("14.5 thousand", 0.3), ("28.0 thousand", 0.9))),
    SyntheticAttribute("RESPIRATORY_RATE", 0.4, _vitals(
        ("14 per minute", -0.6), ("24 per minute", 0.3), ("36 per minute", 0.9))),
    SyntheticAttribute("TEMPERATURE", 0.35, _vitals(
        ("36.8 C", -0.4), ("38.9 C", 0.3), ("34.9 C", 0.7))),
    SyntheticAttribute("BILIRUBIN", 0.35, _vitals(
        ("0.8 mg/dL", -0.4), ("2.1 mg/dL", 0.3), ("5.4 mg/dL", 0.8))),
    SyntheticAttribute("HEART_RATE", 0.35, _vitals(
        ("72 per minute", -0.5), ("108 per minute", 0.3), ("142 per minute", 0.8))),
    SyntheticAttribute("UREA_NITROGEN", 0.3, _vitals(
        ("15 mg/dL", -0.4), ("32 mg/dL", 0.3), ("70 mg/dL", 0.8))),
    SyntheticAttribute("PLATELET_COUNT", 0.3, _vitals(
        ("240 thousand", -0.4), ("110 thousand", 0.3), ("35 thousand", 0.8))),
    SyntheticAttribute("HEMOGLOBIN", 0.3, _vitals(
        ("13.5 g/dL", -0.4), ("9.8 g/dL", 0.2), ("6.9 g/dL", 0.7))),
    SyntheticAttribute("ADMISSION_SOURCE", 0.3, _vitals(
        ("elective referral", -0.7), ("emergency department", 0.2),
        ("outside hospital transfer", 0.6))),
    SyntheticAttribute("GLUCOSE_LEVEL", 0.25, _vitals(
        ("98 mg/dL", -0.3), ("210 mg/dL", 0.3), ("480 mg/dL", 0.7))),
    SyntheticAttribute("SODIUM_LEVEL", 0.25, _vitals(
        ("139 mEq/L", -0.3), ("128 mEq/L", 0.4), ("118 mEq/L", 0.8))),
    SyntheticAttribute("INFECTION_SOURCE", 0.25, _vitals(
        ("none suspected", -0.5), ("urinary tract", 0.2), ("pneumonia", 0.5),
        ("bloodstream", 0.8))),
    SyntheticAttribute("NUTRITION_STATUS", 0.2, _vitals(
        ("well nourished", -0.5), ("mildly malnourished", 0.3),
        ("severely malnourished", 0.8))),
    SyntheticAttribute("MOBILITY_STATUS", 0.2, _vitals(
        ("ambulatory without aid", -0.6), ("walker at baseline", 0.3),
        ("bedbound", 0.8))),
    SyntheticAttribute("CHRONIC_CONDITIONS", 0.2, _vitals(
        ("none documented", -0.5), ("hypertension and diabetes", 0.2),
        ("heart failure and cirrhosis", 0.7))),
    SyntheticAttribute("RECENT_HOSPITALIZATIONS", 0.15, _vitals(
        ("none in past year", -0.4), ("one in past year", 0.2),
        ("three in past six months", 0.7))),
    SyntheticAttribute("PAIN_SCORE", 0.15, _vitals(
        ("2 of 10", -0.3), ("6 of 10", 0.2), ("9 of 10", 0.5))),
    SyntheticAttribute("FALL_HISTORY", 0.12, _vitals(
        ("no recent falls", -0.3), ("one fall this month", 0.3),
        ("recurrent falls", 0.6))),
    # Weak attributes: near-noise, present to pad the question list and to
    # exercise ranking below the signal tier.
    SyntheticAttribute("CHIEF_COMPLAINT", 0.1, _vitals(
        ("shortness of breath", 0.2), ("chest discomfort", 0.1),
        ("abdominal discomfort", 0.0), ("generalized weakness", 0.2))),
    SyntheticAttribute("SURGICAL_HISTORY", 0.1, _vitals(
        ("appendectomy", 0.0), ("hip replacement", 0.1), ("none reported", -0.1))),
    SyntheticAttribute("POTASSIUM_LEVEL", 0.1, _vitals(
        ("4.1 mEq/L", -0.1), ("5.8 mEq/L", 0.3), ("3.1 mEq/L", 0.2))),
    SyntheticAttribute("IMAGING_FINDINGS", 0.1, _vitals(
        ("clear chest film", -0.2), ("bilateral infiltrates", 0.4),
        ("no acute findings", -0.1))),
    SyntheticAttribute("MEDICATION_COMPLIANCE", 0.08, _vitals(
        ("fully adherent", -0.2), ("occasionally misses doses", 0.1),
        ("frequently non-adherent", 0.3))),
    SyntheticAttribute("HOME_MEDICATIONS", 0.08, _vitals(
        ("lisinopril and metformin", 0.0), ("warfarin", 0.2),
        ("no regular medications", -0.1))),
    SyntheticAttribute("ALLERGIES", 0.06, _vitals(
        ("no known allergies", 0.0), ("penicillin", 0.1), ("sulfa drugs", 0.1))),
    SyntheticAttribute("SMOKING_HISTORY", 0.08, _vitals(
        ("never smoker", -0.2), ("former smoker", 0.1), ("current smoker", 0.3))),
    SyntheticAttribute("ALCOHOL_USE", 0.07, _vitals(
        ("none reported", -0.1), ("social use", 0.0), ("daily use", 0.3))),
    SyntheticAttribute("FAMILY_HISTORY", 0.05, _vitals(
        ("non-contributory", 0.0), ("early cardiac disease", 0.2),
        ("cancer in first degree relative", 0.1))),
    SyntheticAttribute("LIVING_SITUATION", 0.05, _vitals(
        ("lives with family", -0.1), ("lives alone", 0.2), ("nursing facility", 0.3))),
    SyntheticAttribute("OCCUPATION_HISTORY", 0.04, _vitals(
        ("retired teacher", 0.0), ("construction work", 0.1), ("office work", 0.0))),
    SyntheticAttribute("MARITAL_STATUS", 0.03, _vitals(
        ("married", 0.0), ("widowed", 0.2), ("single", 0.1))),
    SyntheticAttribute("PRIMARY_LANGUAGE", 0.03, _vitals(
        ("english", 0.0), ("spanish", 0.0), ("mandarin", 0.0))),
    SyntheticAttribute("INSURANCE_TYPE", 0.03, _vitals(
        ("private", -0.1), ("public", 0.1), ("uninsured", 0.2))),
    SyntheticAttribute("DIET_TYPE", 0.03, _vitals(
        ("regular", 0.0), ("diabetic", 0.1), ("pureed", 0.3))),
    SyntheticAttribute("SLEEP_PATTERN", 0.03, _vitals(
        ("unremarkable", 0.0), ("chronic insomnia", 0.1), ("sleeps with CPAP", 0.1))),
    SyntheticAttribute("EXERCISE_HABITS", 0.03, _vitals(
        ("walks daily", -0.2), ("sedentary", 0.2), ("swims weekly", -0.1))),
    SyntheticAttribute("CAFFEINE_INTAKE", 0.02, _vitals(
        ("one cup daily", 0.0), ("four cups daily", 0.1), ("none", 0.0))),
    SyntheticAttribute("TRAVEL_HISTORY", 0.02, _vitals(
        ("no recent travel", 0.0), ("recent international travel", 0.1))),
    SyntheticAttribute("PET_EXPOSURE", 0.02, _vitals(
        ("no pets", 0.0), ("dogs at home", 0.0), ("birds at home", 0.1))),
    SyntheticAttribute("IMMUNIZATION_STATUS", 0.04, _vitals(
        ("up to date", -0.1), ("influenza vaccine declined", 0.1), ("unknown", 0.1))),
    SyntheticAttribute("SKIN_FINDINGS", 0.05, _vitals(
        ("intact", -0.1), ("stage two pressure ulcer", 0.4), ("cellulitis", 0.3))),
    SyntheticAttribute("WOUND_STATUS", 0.05, _vitals(
        ("no open wounds", -0.1), ("healing surgical site", 0.1),
        ("infected wound", 0.4))),
    SyntheticAttribute("HYDRATION_STATUS", 0.06, _vitals(
        ("euvolemic", -0.2), ("dehydrated", 0.3), ("fluid overloaded", 0.4))),
    SyntheticAttribute("APPETITE_TREND", 0.04, _vitals(
        ("stable", -0.1), ("decreased for one week", 0.2),
        ("poor for one month", 0.4))),
    SyntheticAttribute("HEARING_STATUS", 0.02, _vitals(
        ("adequate", 0.0), ("hearing aids", 0.0), ("severe loss", 0.1))),
    SyntheticAttribute("VISION_STATUS", 0.02, _vitals(
        ("corrected with glasses", 0.0), ("cataracts", 0.1), ("adequate", 0.0))),
)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters for one synthetic corpus draw."""

    num_notes: int
    positive_rate: float = 0.5
    attribute_pool: tuple[SyntheticAttribute, ...] = DEFAULT_ATTRIBUTE_POOL
    na_rate: float = 0.3
    seed: int = 0
    label_sharpness: float = DEFAULT_LABEL_SHARPNESS

    def __post_init__(self) -> None:
        if self.num_notes < 0:
            raise ValueError("num_notes must be non-negative")
        if not 0.0 < self.positive_rate < 1.0:
            raise ValueError(f"positive_rate must lie in (0, 1), got {self.positive_rate}")
        if not 0.0 <= self.na_rate < 1.0:
            raise ValueError(f"na_rate must lie in [0, 1), got {self.na_rate}")
        if not self.attribute_pool:
            raise ValueError("attribute_pool must not be empty")
        names = [a.name for a in self.attribute_pool]
        if len(set(names)) != len(names):
            raise ValueError("attribute_pool contains duplicate names")


_NOTE_HEADER = "Admission note for {note_id}.\nPresenting findings documented at arrival:\n"
_NOTE_FOOTER = "\nAssessment and plan: continue current management and reassess.\n"

PLANTED_LINE_RE = re.compile(r"^([A-Z][A-Z0-9_]+):\s*(.+?)\s*$")


def parse_planted_attributes(text: str) -> dict[str, str]:
    """Read back the ``NAME: value`` lines planted in a synthetic note."""
    found: dict[str, str] = {}
    for line in text.splitlines():
        m = PLANTED_LINE_RE.match(line)
        if m:
            found[m.group(1)] = m.group(2)
    return found


def _calibrate_intercept(scores: np.ndarray, target_rate: float) -> float:
    """Bisection for the intercept making mean sigmoid(score + b) = target."""
    lo, hi = -50.0, 50.0
    for _ in range(200):
        mid = (lo + hi) / 2.0
        rate = float(np.mean(1.0 / (1.0 + np.exp(-(scores + mid)))))
        if rate < target_rate:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def generate_synthetic_corpus(
    spec: SyntheticSpec,
) -> tuple[list[AdmissionNote], list[dict]]:
    """Generate notes plus their ground-truth attribute table.

    Returns (notes, truth_rows) where each truth row is
    ``{"note_id": str, "attributes": {name: value-or-None}}`` covering every
    pool attribute. Fully deterministic given the spec's seed.
    """
    if spec.num_notes == 0:
        return [], []

    rng = np.random.default_rng(spec.seed)
    pool = spec.attribute_pool

    planted: list[dict[str, str | None]] = []
    scores = np.zeros(spec.num_notes)
    for i in range(spec.num_notes):
        row: dict[str, str | None] = {}
        score = 0.0
        for attr in pool:
            if rng.random() < spec.na_rate:
                row[attr.name] = None
                continue
            value, effect = attr.values[rng.integers(len(attr.values))]
            row[attr.name] = value
            score += attr.weight * effect
        planted.append(row)
        scores[i] = score

    intercept = _calibrate_intercept(spec.label_sharpness * scores, spec.positive_rate)
    probs = 1.0 / (1.0 + np.exp(-(spec.label_sharpness * scores + intercept)))
    labels = (rng.random(spec.num_notes) < probs).astype(int)

    notes: list[AdmissionNote] = []
    truth: list[dict] = []
    for i, row in enumerate(planted):
        note_id = f"note-{i:05d}"
        lines = [f"{name}: {value}" for name, value in row.items() if value is not None]
        text = _NOTE_HEADER.format(note_id=note_id) + "\n".join(lines) + _NOTE_FOOTER
        notes.append(AdmissionNote(note_id=note_id, text=text, label=int(labels[i])))
        truth.append({"note_id": note_id, "attributes": dict(row)})
    return notes, truth


def save_attribute_pool(path: str | Path, pool: Sequence[SyntheticAttribute]) -> None:
    rows = [
        {"name": a.name, "weight": a.weight, "values": [list(v) for v in a.values]}
        for a in pool
    ]
    Path(path).write_text(json.dumps(rows, indent=2) + "\n", encoding="utf-8")


def load_attribute_pool(path: str | Path) -> tuple[SyntheticAttribute, ...]:
    rows = json.loads(Path(path).read_text(encoding="utf-8"))
    return tuple(
        SyntheticAttribute(
            name=row["name"],
            weight=float(row["weight"]),
            values=tuple((str(v), float(e)) for v, e in row["values"]),
        )
        for row in rows
    )
