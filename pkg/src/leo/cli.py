"""Command line entry point: run the service, optionally seeded with a
demo world so the UI has something to browse on first start."""

from __future__ import annotations

import argparse
import os
import sys

from .api import create_app
from .config import Config
from .providers import mock
from .service import Service


def seed_fixture(service: Service, fixture: str) -> None:
    """Register one notebook-facet and one repository-facet instance of
    the mock provider and make the repository the login authority."""
    notebook = service.bootstrap_instance(
        display_name=f"{fixture} notebook",
        kind="mock",
        host=f"mock://world-{fixture}/eln",
    )
    repository = service.bootstrap_instance(
        display_name=f"{fixture} images",
        kind="mock",
        host=f"mock://world-{fixture}/repo",
    )
    service.auth_instance_id = repository.instance_id
    print(f"seeded instances: {notebook.instance_id} (notebook), "
          f"{repository.instance_id} (repository)")
    print(f"login with {mock.FIXTURE_USERNAME!r} / {mock.FIXTURE_PASSWORD!r} "
          f"against {repository.instance_id}")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="leo")
    sub = parser.add_subparsers(dest="command", required=True)
    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--bind", help="host:port (default: LEO_BIND_ADDR or 127.0.0.1:8000)")
    serve.add_argument("--db", help="sqlite path (default: LEO_DB_PATH or leo.sqlite3)")
    serve.add_argument("--secret", help="server secret (default: LEO_SECRET)")
    serve.add_argument(
        "--seed-fixture",
        metavar="NAME",
        help="register mock instances for a shipped fixture (fmd, theraoptik, ...)",
    )
    args = parser.parse_args(argv)

    if args.secret:
        os.environ["LEO_SECRET"] = args.secret
    config = Config.from_env()
    if args.bind:
        config.bind_addr = args.bind
    if args.db:
        config.db_path = args.db

    service = Service(config)
    if args.seed_fixture:
        seed_fixture(service, args.seed_fixture)

    import uvicorn

    host, _, port = config.bind_addr.partition(":")
    uvicorn.run(create_app(service), host=host or "127.0.0.1", port=int(port or "8000"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
