"""Bundled example groups (``*.cox``) and complexes (``*.cplx``)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .complexes import SimplicialComplex, parse_complex
from .coxeter import CoxeterSystem, parse_definition

GROUPS = ("a1", "a2", "dihedral-m4", "dinf", "z2z2z2", "b2tilde", "pentagon", "octahedron", "two-squares")
COMPLEXES = ("two-points", "three-points", "pentagon", "octahedron", "two-squares", "hexagon")


def _read(name: str) -> str:
    return resources.files(__package__).joinpath("corpus", name).read_text(encoding="utf-8")


def load_group(name: str) -> CoxeterSystem:
    return parse_definition(_read(f"{name}.cox"))


def load_complex(name: str) -> SimplicialComplex:
    return parse_complex(_read(f"{name}.cplx"))


def resolve_text(source: str, suffix: str) -> str:
    """Contents of a file path, or of a bundled corpus entry when no such file exists."""
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    try:
        return _read(source if source.endswith(suffix) else source + suffix)
    except (FileNotFoundError, IsADirectoryError):
        raise FileNotFoundError(f"no file or corpus entry named {source!r}") from None
