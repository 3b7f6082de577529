"""Labeled note ingestion, class balancing, dataset splits, and sampling.

All sampling here is seed-deterministic: the same inputs and seed always
produce the same selection, and selected items keep their input order.
The balancing/splitting helpers only require ``note_id`` and ``label``
attributes, so they work on structured records as well as raw notes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TypeVar

import numpy as np

from clinstructor.ioutils import read_jsonl, write_jsonl

log = logging.getLogger(__name__)

VALID_SPLITS = ("train", "val", "test")


@dataclass(frozen=True)
class AdmissionNote:
    """One free-text note with a binary outcome label (1 = deceased)."""

    note_id: str
    text: str
    label: int
    split: str | None = None

    def __post_init__(self) -> None:
        if not self.note_id:
            raise ValueError("note_id must be non-empty")
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label!r}")
        if len(self.text) < 1:
            raise ValueError(f"note {self.note_id!r}: text must be non-empty")
        if self.split is not None and self.split not in VALID_SPLITS:
            raise ValueError(f"note {self.note_id!r}: split must be one of {VALID_SPLITS}")

    def to_dict(self) -> dict:
        row = {"note_id": self.note_id, "text": self.text, "label": self.label}
        if self.split is not None:
            row["split"] = self.split
        return row


Labeled = TypeVar("Labeled")


@dataclass
class DatasetSplits:
    """Train/val/test partition; note_id sets are pairwise disjoint."""

    train: list = field(default_factory=list)
    val: list = field(default_factory=list)
    test: list = field(default_factory=list)

    def sizes(self) -> tuple[int, int, int]:
        return len(self.train), len(self.val), len(self.test)


def load_notes(path: str | Path) -> list[AdmissionNote]:
    """Parse a notes JSONL file, preserving line order.

    Raises ValueError naming the offending line on malformed records,
    duplicate note_ids, or labels outside {0, 1}.
    """
    notes: list[AdmissionNote] = []
    seen: dict[str, int] = {}
    for lineno, row in read_jsonl(path):
        if not isinstance(row, dict):
            raise ValueError(f"{path}: line {lineno}: expected a JSON object")
        for key in ("note_id", "text", "label"):
            if key not in row:
                raise ValueError(f"{path}: line {lineno}: missing field {key!r}")
        try:
            note = AdmissionNote(
                note_id=str(row["note_id"]),
                text=row["text"],
                label=row["label"],
                split=row.get("split"),
            )
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{path}: line {lineno}: {exc}") from exc
        if note.note_id in seen:
            raise ValueError(
                f"{path}: line {lineno}: duplicate note_id {note.note_id!r}"
                f" (first seen on line {seen[note.note_id]})"
            )
        seen[note.note_id] = lineno
        notes.append(note)
    return notes


def save_notes(path: str | Path, notes: Sequence[AdmissionNote]) -> None:
    write_jsonl(path, (n.to_dict() for n in notes))


def _split_by_label(items: Sequence[Labeled]) -> tuple[list[Labeled], list[Labeled]]:
    pos = [x for x in items if x.label == 1]
    neg = [x for x in items if x.label == 0]
    return pos, neg


def balanced_subsample(items: Sequence[Labeled], seed: int) -> list[Labeled]:
    """Subsample negatives down to the positive count.

    Keeps every positive and a seeded uniform sample of negatives of equal
    size. If negatives are already the minority the input is returned
    unchanged (with a warning); only negatives are ever dropped. Output
    preserves input order.
    """
    pos, neg = _split_by_label(items)
    if not pos or not neg:
        raise ValueError("balanced_subsample requires at least one item of each class")
    if len(neg) < len(pos):
        log.warning(
            "negatives (%d) already fewer than positives (%d); returning input unchanged",
            len(neg),
            len(pos),
        )
        return list(items)
    if len(neg) == len(pos):
        return list(items)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(neg), size=len(pos), replace=False)
    keep_ids = {neg[i].note_id for i in chosen}
    return [x for x in items if x.label == 1 or x.note_id in keep_ids]


def _apportion(n: int, ratios: Sequence[float]) -> list[int]:
    """Largest-remainder rounding of n * ratios to integers summing to n."""
    raw = [n * r for r in ratios]
    counts = [math.floor(v) for v in raw]
    short = n - sum(counts)
    remainders = sorted(range(len(ratios)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in remainders[:short]:
        counts[i] += 1
    return counts


def resolve_splits(
    items: Sequence[Labeled],
    ratios: tuple[float, float, float] | None = None,
    seed: int = 0,
) -> DatasetSplits:
    """Partition items into train/val/test.

    With ``ratios=None`` every item must carry a ``split`` tag, which is
    reproduced exactly. With ratios the split is label-stratified and
    seed-deterministic; ratios must be non-negative and sum to 1 (1e-9).
    """
    if ratios is None:
        tagged = [getattr(x, "split", None) for x in items]
        if any(t is None for t in tagged):
            n_untagged = sum(1 for t in tagged if t is None)
            if n_untagged == len(items):
                raise ValueError("no ratios given and no item carries a split tag")
            raise ValueError(
                f"mixed corpus: {n_untagged} of {len(items)} items lack a split tag"
            )
        splits = DatasetSplits()
        for item, tag in zip(items, tagged):
            getattr(splits, tag).append(item)
        return splits

    if len(ratios) != 3:
        raise ValueError("ratios must be a (train, val, test) triple")
    if any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative, got {ratios}")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {ratios} (sum {sum(ratios)})")
    if any(getattr(x, "split", None) is not None for x in items):
        log.warning("ratio mode requested; existing split tags are ignored")

    rng = np.random.default_rng(seed)
    assignment: dict[str, str] = {}
    for group in _split_by_label(items):
        order = rng.permutation(len(group))
        n_train, n_val, _ = _apportion(len(group), ratios)
        for pos_in_order, idx in enumerate(order):
            if pos_in_order < n_train:
                tag = "train"
            elif pos_in_order < n_train + n_val:
                tag = "val"
            else:
                tag = "test"
            assignment[group[idx].note_id] = tag

    splits = DatasetSplits()
    for item in items:
        getattr(splits, assignment[item.note_id]).append(item)
    return splits


def sample_identification_notes(
    notes: Sequence[AdmissionNote], n: int, seed: int
) -> list[AdmissionNote]:
    """Draw exactly n notes, n/2 per class, seed-deterministically."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"sample size must be a positive even number, got {n}")
    pos, neg = _split_by_label(notes)
    half = n // 2
    if len(pos) < half or len(neg) < half:
        raise ValueError(
            f"need {half} notes of each class, have {len(pos)} positive / {len(neg)} negative"
        )
    rng = np.random.default_rng(seed)
    keep_ids = set()
    for group in (pos, neg):
        for i in rng.choice(len(group), size=half, replace=False):
            keep_ids.add(group[i].note_id)
    return [x for x in notes if x.note_id in keep_ids]
