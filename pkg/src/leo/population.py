"""Mapping of extracted tables onto repository images.

Rules, applied in order: the target must be a Project or Dataset; a
Project target requires both a "Dataset Name" and an "Image Name"
column, a Dataset target only "Image Name"; header matching is exact
string equality on trimmed headers; cell values must exactly match
(case-sensitive) the titles of datasets and images under the target.
Rows that match nothing or match more than one image are skipped with
a diagnostic instead of aborting the run, since re-running replaces
any group with the same table signature anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .contract import ElementForest, ElementRef, ResolvedPlan, ResolvedRow
from .errors import (
    DuplicateColumn,
    InvalidTargetType,
    MissingRequiredColumn,
    TargetGone,
)
from .links import LinkEndpoint
from .tables import Table

IMAGE_NAME_COLUMN = "Image Name"
DATASET_NAME_COLUMN = "Dataset Name"
TARGET_TYPES = ("Project", "Dataset")


@dataclass
class MappingPlan:
    table: Table
    target: LinkEndpoint
    image_name_col: int
    dataset_name_col: int | None
    value_columns: list[int]

    @property
    def signature(self) -> str:
        return self.table.signature


def validate_mapping(table: Table, target: LinkEndpoint) -> MappingPlan:
    if target.element_type not in TARGET_TYPES:
        raise InvalidTargetType(
            f"population target must be a Project or a Dataset, not {target.element_type!r}"
        )

    def column_of(name: str, required: bool) -> int | None:
        hits = [i for i, header in enumerate(table.headers) if header == name]
        if len(hits) > 1:
            raise DuplicateColumn(f"column {name!r} appears {len(hits)} times")
        if not hits:
            if required:
                raise MissingRequiredColumn(name)
            return None
        return hits[0]

    image_col = column_of(IMAGE_NAME_COLUMN, required=True)
    # For Dataset targets the dataset column is optional; when present it
    # is still treated as a key column and kept out of the written values.
    dataset_col = column_of(DATASET_NAME_COLUMN, required=target.element_type == "Project")
    key_columns = {image_col, dataset_col}
    return MappingPlan(
        table=table,
        target=target,
        image_name_col=image_col,
        dataset_name_col=dataset_col,
        value_columns=[i for i in range(len(table.headers)) if i not in key_columns],
    )


@dataclass
class RowDiagnostic:
    row_index: int
    status: str  # unmatched | ambiguous | write_error
    detail: str

    def to_json(self) -> dict:
        return {"row": self.row_index, "status": self.status, "detail": self.detail}


@dataclass
class Resolution:
    plan: ResolvedPlan
    diagnostics: list[RowDiagnostic] = field(default_factory=list)


def resolve_rows(plan: MappingPlan, forest: ElementForest) -> Resolution:
    """Match each row against the target's subtree in the given forest."""
    target = forest.find(ElementRef(plan.target.origin_id, plan.target.element_type))
    if target is None:
        raise TargetGone(f"{plan.target.origin_id!r} is no longer present in the provider")

    if plan.target.element_type == "Dataset":
        datasets = [target]
    else:
        datasets = [child for child in target.children if child.element_type == "Dataset"]

    resolved: list[ResolvedRow] = []
    diagnostics: list[RowDiagnostic] = []
    for row_index, row in enumerate(plan.table.rows):
        image_name = row[plan.image_name_col]
        if plan.target.element_type == "Project":
            dataset_name = row[plan.dataset_name_col]
            candidates = [d for d in datasets if d.title == dataset_name]
        else:
            candidates = datasets
        matches = [
            image
            for dataset in candidates
            for image in dataset.children
            if image.element_type == "Image" and image_name and image.title == image_name
        ]
        if not matches:
            diagnostics.append(RowDiagnostic(row_index, "unmatched", _unmatched_detail(plan, row)))
        elif len(matches) > 1:
            diagnostics.append(
                RowDiagnostic(row_index, "ambiguous", f"{image_name!r} matches {len(matches)} images")
            )
        else:
            pairs = tuple((plan.table.headers[i], row[i]) for i in plan.value_columns)
            resolved.append(ResolvedRow(row_index, matches[0].ref, pairs))
    return Resolution(
        plan=ResolvedPlan(signature=plan.signature, rows=tuple(resolved)),
        diagnostics=diagnostics,
    )


def _unmatched_detail(plan: MappingPlan, row: list[str]) -> str:
    image_name = row[plan.image_name_col]
    if not image_name:
        return "row has an empty Image Name cell"
    if plan.target.element_type == "Project":
        return f"no image {image_name!r} in a dataset named {row[plan.dataset_name_col]!r}"
    return f"no image {image_name!r} in the target dataset"


@dataclass
class PopulationReport:
    total_rows: int
    applied: int = 0
    overwritten: int = 0
    unmatched: int = 0
    ambiguous: int = 0
    failed: int = 0
    diagnostics: list[RowDiagnostic] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "total_rows": self.total_rows,
            "applied": self.applied,
            "overwritten": self.overwritten,
            "unmatched": self.unmatched,
            "ambiguous": self.ambiguous,
            "failed": self.failed,
            "diagnostics": [d.to_json() for d in sorted(self.diagnostics, key=lambda d: d.row_index)],
        }


def build_report(total_rows: int, resolution: Resolution, applied: int,
                 overwritten: int, write_failures: list[tuple[int, str]]) -> PopulationReport:
    report = PopulationReport(total_rows=total_rows, applied=applied, overwritten=overwritten)
    report.diagnostics.extend(resolution.diagnostics)
    for diagnostic in resolution.diagnostics:
        if diagnostic.status == "unmatched":
            report.unmatched += 1
        elif diagnostic.status == "ambiguous":
            report.ambiguous += 1
    for row_index, message in write_failures:
        report.failed += 1
        report.diagnostics.append(RowDiagnostic(row_index, "write_error", message))
    return report
