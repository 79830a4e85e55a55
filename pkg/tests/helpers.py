"""Shared test utilities, including the brute-force row matcher used as
an independent oracle for the resolution engine."""

from __future__ import annotations

from dataclasses import dataclass, field

from leo.contract import Element, ElementForest


def find_element(forest: ElementForest, element_type: str, title: str) -> Element:
    matches = [e for e in forest if e.element_type == element_type and e.title == title]
    assert matches, f"no {element_type} titled {title!r}"
    return matches[0]


@dataclass
class BruteForceOutcome:
    resolved: dict[int, str] = field(default_factory=dict)  # row index -> image origin_id
    unmatched: set[int] = field(default_factory=set)
    ambiguous: set[int] = field(default_factory=set)


def brute_force_matches(
    forest: ElementForest,
    target_type: str,
    target_origin: str,
    rows: list[list[str]],
    image_col: int,
    dataset_col: int | None,
) -> BruteForceOutcome:
    """Classify every row by scanning every (row, image) pair in the forest.

    Deliberately ignorant of the resolution engine: walks the raw tree
    collecting each image with its full ancestry, then applies the
    matching rules literally.
    """
    lineages: list[tuple[list[Element], Element]] = []

    def walk(element: Element, ancestors: list[Element]):
        if element.element_type == "Image":
            lineages.append((list(ancestors), element))
        for child in element.children:
            walk(child, ancestors + [element])

    for root in forest.roots:
        walk(root, [])

    outcome = BruteForceOutcome()
    for index, row in enumerate(rows):
        image_name = row[image_col]
        hits = []
        for ancestors, image in lineages:
            if not image_name or image.title != image_name:
                continue
            dataset = ancestors[-1] if ancestors else None
            project = ancestors[-2] if len(ancestors) >= 2 else None
            if target_type == "Dataset":
                if dataset is not None and dataset.origin_id == target_origin:
                    hits.append(image)
            else:
                if (
                    project is not None
                    and project.origin_id == target_origin
                    and dataset is not None
                    and dataset.title == row[dataset_col]
                ):
                    hits.append(image)
        if not hits:
            outcome.unmatched.add(index)
        elif len(hits) > 1:
            outcome.ambiguous.add(index)
        else:
            outcome.resolved[index] = hits[0].origin_id
    return outcome
