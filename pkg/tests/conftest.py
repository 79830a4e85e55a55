from __future__ import annotations

from types import SimpleNamespace

import pytest

from leo.config import Config
from leo.providers.mock import FIXTURE_PASSWORD, FIXTURE_USERNAME
from leo.service import Service

TEST_SECRET = "unit-test-secret"


@pytest.fixture
def make_service(tmp_path):
    """Build a Service over a temp database with one notebook-facet and
    one repository-facet mock instance for the given fixture world."""

    def build(fixture: str = "theraoptik", db_name: str = "leo.sqlite3"):
        config = Config(secret=TEST_SECRET, db_path=str(tmp_path / db_name))
        service = Service(config)
        notebook = service.bootstrap_instance(
            display_name=f"{fixture} notebook", kind="mock",
            host=f"mock://world-{fixture}/eln")
        repository = service.bootstrap_instance(
            display_name=f"{fixture} images", kind="mock",
            host=f"mock://world-{fixture}/repo")
        service.auth_instance_id = repository.instance_id
        return service, notebook, repository

    return build


def _world(ns):
    ns.token = ns.service.login(FIXTURE_USERNAME, FIXTURE_PASSWORD)
    ns.session = ns.service.authorize(ns.token)
    return ns


@pytest.fixture
def theraoptik(make_service):
    service, notebook, repository = make_service("theraoptik")
    return _world(SimpleNamespace(service=service, notebook=notebook, repository=repository))


@pytest.fixture
def fmd(make_service):
    service, notebook, repository = make_service("fmd")
    return _world(SimpleNamespace(service=service, notebook=notebook, repository=repository))


@pytest.fixture
def ambiguous(make_service):
    service, notebook, repository = make_service("ambiguous")
    return _world(SimpleNamespace(service=service, notebook=notebook, repository=repository))
