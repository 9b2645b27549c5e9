"""Shipped complexes in facet-list format."""

from __future__ import annotations

from importlib import resources

from ..complex import SimplicialComplex, parse_complex


def fixture_names() -> list[str]:
    return sorted(p.name[:-3] for p in resources.files(__name__).iterdir() if p.name.endswith(".sc"))


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.sc").read_text()


def load_fixture(name: str) -> SimplicialComplex:
    return parse_complex(fixture_text(name))
