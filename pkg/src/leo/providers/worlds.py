"""Deterministic in-memory worlds backing the mock provider.

Each world is a desk-scale stand-in for a pair of live systems: an
image repository organized Project -> Dataset -> Image, and a lab
notebook holding experiments with HTML bodies. Shipped fixtures:

  fmd         one project with three modality datasets, tagged images,
              and a notebook entry without tables
  theraoptik  raw + illumination-corrected image datasets (23 images
              each) and a notebook entry embedding the patient and
              optical-measurement tables (46 data rows each)
  ambiguous   a dataset containing two identically named images, for
              exercising ambiguous-match diagnostics
  empty       nothing at all

Image names are unique within a dataset except in "ambiguous".
"""

from __future__ import annotations

import html
import threading
from dataclasses import dataclass, field

from ..errors import UnknownFixture

FIXTURES = ("ambiguous", "empty", "fmd", "theraoptik")


@dataclass
class MockImage:
    origin_id: str
    name: str
    tags: tuple[str, ...] = ()


@dataclass
class MockDataset:
    origin_id: str
    name: str
    images: list[MockImage] = field(default_factory=list)


@dataclass
class MockProject:
    origin_id: str
    name: str
    datasets: list[MockDataset] = field(default_factory=list)


@dataclass
class MockExperiment:
    origin_id: str
    title: str
    body: str


@dataclass
class MockWorld:
    name: str
    projects: list[MockProject] = field(default_factory=list)
    experiments: list[MockExperiment] = field(default_factory=list)
    # image origin_id -> table signature -> ordered key/value pairs
    annotations: dict[str, dict[str, tuple[tuple[str, str], ...]]] = field(default_factory=dict)
    # test hook: writes against these image origin_ids report failure
    fail_writes_for: set[str] = field(default_factory=set, compare=False)
    lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False)


class _Ids:
    def __init__(self):
        self._n = 0

    def take(self, element_type: str) -> str:
        self._n += 1
        return f"{element_type}:{self._n}"


def render_table(headers: list[str], rows: list[list[str]], header_tag: str = "th") -> str:
    cells = "".join(f"<{header_tag}><strong>{html.escape(h)}</strong></{header_tag}>" for h in headers)
    parts = [f"<tr>{cells}</tr>"]
    for row in rows:
        parts.append("<tr>" + "".join(f"<td>{html.escape(c)}</td>" for c in row) + "</tr>")
    return '<table border="1">' + "".join(parts) + "</table>"


PATIENT_HEADERS = [
    "Patient", "Samples", "Op date", "Tissue slices date",
    "Age at op date (in years)", "Gender", "Tumor localization", "Subsite",
    "Image Name", "Dataset Name",
]

# (patient, sample, op date, slices date, age, gender, localization, subsite, image number)
_PATIENT_BASE = [
    ("patient 1", "Sample 01", "04.01.18", "08.12.22", "69", "male", "", "", 1),
    ("patient 2", "Sample 16", "31.05.18", "20.03.23", "56", "male", "larynx", "glottis", 18),
    ("patient 3", "Sample 18", "05.07.18", "20.03.23", "68", "male", "oropharynx", "base of tongue", 20),
    ("patient 4", "Sample 15", "18.06.19", "07.03.22", "54", "male", "hypopharynx", "", 17),
    ("patient 4", "Sample 10", "18.06.19", "07.03.22", "54", "male", "hypopharynx", "", 11),
    ("patient 4", "Sample 09", "18.06.19", "07.03.22", "54", "male", "hypopharynx", "", 10),
    ("patient 4", "Sample 19", "18.06.19", "20.03.23", "54", "male", "hypopharynx", "", 21),
    ("patient 4", "Sample 19", "18.06.19", "20.03.23", "54", "male", "hypopharynx", "", 22),
    ("patient 4", "Sample 20", "04.07.19", "20.03.23", "61", "male", "hypopharynx", "", 23),
    ("patient 5", "Sample 17", "04.07.19", "20.03.23", "61", "male", "hypopharynx", "", 19),
    ("patient 6", "Sample 14", "08.07.19", "07.03.22", "67", "male", "hypopharynx", "", 15),
    ("patient 6", "Sample 14", "08.07.19", "07.03.22", "67", "male", "hypopharynx", "", 16),
    ("patient 7", "Sample 05", "23.07.19", "07.03.22", "61", "male", "hypopharynx", "", 6),
    ("patient 7", "Sample 07", "08.08.19", "07.03.22", "61", "male", "hypopharynx", "", 8),
    ("patient 8", "Sample 11", "16.09.19", "07.03.22", "64", "male", "larynx", "epiglottis", 12),
    ("patient 9", "Sample 03", "18.03.20", "07.03.22", "66", "male", "oral cavity", "floor of mouth", 4),
    ("patient 10", "Sample 06", "19.03.20", "07.03.22", "34", "female", "oral cavity", "tongue/floor of mouth", 7),
    ("patient 11", "Sample 04", "31.03.20", "07.03.22", "47", "male", "oral cavity", "", 5),
    ("patient 12", "Sample 02", "30.07.20", "08.12.22", "77", "male", "oral cavity", "tongue", 2),
    ("patient 12", "Sample 02", "30.07.20", "08.12.22", "77", "male", "oral cavity", "tongue", 3),
    ("patient 13", "Sample 08", "29.04.22", "07.03.22", "60", "male", "oral cavity", "floor of mouth", 9),
    ("patient 14", "Sample 12", "25.01.18", "20.03.23", "53", "male", "oropharynx", "tonsil", 13),
    ("patient 15", "Sample 13", "29.11.18", "20.03.23", "58", "male", "larynx", "glottis", 14),
]

OPTICAL_HEADERS = [
    "Sample name", "Slice", "Number of tiles", "Number of pixel in tile (per line)",
    "Pixel dwell time [us]", "Averaging [# frames]", "Scanning amplitude [%]",
    "Scanning amplitude [um]", "PMT1 gain [mV]", "PMT2 gain [mV]", "PMT3 gain [mV]",
    "PMT4 gain [mV]", "Total power [mW]", "Stokes power [mW]", "Pump power [mW]",
    "Overlap between tiles [%]", "Dataset Name", "Image Name",
]

# (sample, slice, tiles, image number, total power, stokes power, pump power)
_OPTICAL_BASE = [
    ("Sample 01", "0.11", "16x16", 1, "129", "107", "18.2"),
    ("Sample 02", "0.11", "10x11", 2, "129", "107", "18.2"),
    ("Sample 02", "0.11", "12x12", 3, "129", "107", "18.2"),
    ("Sample 03", "0.11", "10x11", 4, "128", "107", "17.8"),
    ("Sample 04", "0.11", "14x16", 5, "128", "107", "17.8"),
    ("Sample 05", "0.11", "8x14", 6, "129", "106", "18.5"),
    ("Sample 06", "0.11", "16x16", 7, "129", "106", "18.5"),
    ("Sample 07", "0.11", "14x10", 8, "129", "107", "18.1"),
    ("Sample 08", "0.11", "14x12", 9, "129", "107", "18.1"),
    ("Sample 09", "0.11", "15x16", 10, "129", "107", "17.7"),
    ("Sample 10", "0.11", "15x14", 11, "129", "107", "17.7"),
    ("Sample 11", "0.11", "14x14", 12, "129", "106", "18.3"),
    ("Sample 12", "0.11", "7x11", 13, "129", "106", "18.3"),
    ("Sample 13", "0.11", "10x12", 14, "128", "106", "18.1"),
    ("Sample 14", "0.11", "12x14", 15, "128", "106", "18.1"),
    ("Sample 14", "0.11", "11x12", 16, "128", "106", "18.1"),
    ("Sample 15", "0.11", "16x17", 17, "129", "106", "18"),
    ("Sample 16", "0.12", "13x13", 18, "130", "104", "20"),
    ("Sample 17", "0.11", "11x15", 19, "129", "106", "18.7"),
    ("Sample 18", "0.11", "23x8", 20, "129", "106", "18.7"),
    ("Sample 19", "0.11", "7x10", 21, "130", "104", "20"),
    ("Sample 19", "0.11", "10x18", 22, "130", "104", "20"),
    ("Sample 20", "0.11", "16x15", 23, "130", "104", "20"),
]

_VARIANTS = (("raw", "RAW_Images"), ("basic", "BASIC_Images"))


def _image_name(number: int, suffix: str) -> str:
    return f"{number:02d}_RGB_{suffix}.png"


def patient_table_rows() -> list[list[str]]:
    rows = []
    for suffix, dataset in _VARIANTS:
        for p, s, op, slices, age, gender, loc, subsite, num in _PATIENT_BASE:
            rows.append([p, s, op, slices, age, gender, loc, subsite, _image_name(num, suffix), dataset])
    return rows


def optical_table_rows() -> list[list[str]]:
    rows = []
    for suffix, dataset in _VARIANTS:
        for sample, slice_, tiles, num, total, stokes, pump in _OPTICAL_BASE:
            rows.append([
                sample, slice_, tiles, "1200", "3", "5", "14", "431.45",
                "950", "950", "950", "10", total, stokes, pump, "10",
                dataset, _image_name(num, suffix),
            ])
    return rows


def _theraoptik_world() -> MockWorld:
    ids = _Ids()
    project = MockProject(ids.take("Project"), "TheraOptik")
    for suffix, dataset_name in _VARIANTS:
        dataset = MockDataset(ids.take("Dataset"), dataset_name)
        for number in range(1, 24):
            dataset.images.append(MockImage(ids.take("Image"), _image_name(number, suffix)))
        project.datasets.append(dataset)
    body = (
        "<h1>Multimodal nonlinear imaging of head and neck samples</h1>"
        "<p>Twenty-three multimodal images per variant, raw and after "
        "illumination correction. Patient context and optical settings "
        "are recorded in the tables below.</p>"
        "<h2>Patient metadata</h2>"
        + render_table(PATIENT_HEADERS, patient_table_rows())
        + "<h2>Optical measurements</h2>"
        + render_table(OPTICAL_HEADERS, optical_table_rows(), header_tag="td")
    )
    experiment = MockExperiment(ids.take("Experiment"), "TheraOptik dataset", body)
    return MockWorld("theraoptik", projects=[project], experiments=[experiment])


def _fmd_world() -> MockWorld:
    ids = _Ids()
    project = MockProject(ids.take("Project"), "FMD")
    modalities = [
        ("Confocal", [("confocal_BPAE_01.png", "BPAE"), ("confocal_MICE_01.png", "MICE"),
                      ("confocal_FISH_01.png", "FISH")]),
        ("TwoPhoton", [("twophoton_BPAE_01.png", "BPAE"), ("twophoton_MICE_01.png", "MICE")]),
        ("WideField", [("widefield_FISH_01.png", "FISH"), ("widefield_BPAE_01.png", "BPAE")]),
    ]
    for dataset_name, images in modalities:
        dataset = MockDataset(ids.take("Dataset"), dataset_name)
        for image_name, tag in images:
            dataset.images.append(MockImage(ids.take("Image"), image_name, tags=(tag,)))
        project.datasets.append(dataset)
    body = (
        "<h1>Fluorescence microscopy denoising collection</h1>"
        "<p>Raw and ground-truth fluorescence images acquired with "
        "confocal, two-photon and wide-field microscopes. Samples cover "
        "BPAE cells, mouse brain tissue and zebrafish embryos; sample "
        "type is tagged on each uploaded image.</p>"
    )
    experiment = MockExperiment(ids.take("Experiment"), "FMD dataset", body)
    return MockWorld("fmd", projects=[project], experiments=[experiment])


def _ambiguous_world() -> MockWorld:
    ids = _Ids()
    project = MockProject(ids.take("Project"), "Ambiguity")
    dataset = MockDataset(ids.take("Dataset"), "Duplicates")
    dataset.images = [
        MockImage(ids.take("Image"), "dup.png"),
        MockImage(ids.take("Image"), "dup.png"),
        MockImage(ids.take("Image"), "unique.png"),
    ]
    project.datasets.append(dataset)
    body = (
        "<p>Rows against a dataset holding two images that share a name.</p>"
        + render_table(
            ["Image Name", "Dataset Name", "Note"],
            [
                ["dup.png", "Duplicates", "collides"],
                ["unique.png", "Duplicates", "matches once"],
                ["missing.png", "Duplicates", "no such image"],
            ],
        )
        # a merged-cell table the mapping rules must refuse
        + '<table><tr><td colspan="2">Image Name</td><td>Note</td></tr>'
        "<tr><td>unique.png</td><td>x</td><td>y</td></tr></table>"
    )
    experiment = MockExperiment(ids.take("Experiment"), "Ambiguity check", body)
    return MockWorld("ambiguous", projects=[project], experiments=[experiment])


_BUILDERS = {
    "ambiguous": _ambiguous_world,
    "empty": lambda: MockWorld("empty"),
    "fmd": _fmd_world,
    "theraoptik": _theraoptik_world,
}


def load_world(fixture_name: str) -> MockWorld:
    """Build a fresh world; repeated loads of one fixture are value-equal."""
    try:
        builder = _BUILDERS[fixture_name]
    except KeyError:
        raise UnknownFixture(f"no fixture named {fixture_name!r}; have {', '.join(FIXTURES)}") from None
    return builder()
