"""Bundled fixture files.

Fixtures are JSON documents in the fixtures directory (``fixtures/`` at the
repository root, or ``$HYPERLAT_FIXTURES``). Their kind is recognized from
their keys.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from hyperlat.config import default_fixtures_dir
from hyperlat.loaders import load_json

_KIND_BY_KEY = (
    ('gram', 'lattice'),
    ('matrix', 'isometry'),
    ('basis', 'embedding'),
    ('vector', 'vector'),
    ('coeffs', 'polynomial'),
)


@dataclass(frozen=True)
class FixtureInfo:
    name: str
    kind: str
    lattice: Optional[str]
    description: Optional[str]


def fixture_kind(document: dict) -> str:
    for key, kind in _KIND_BY_KEY:
        if key in document:
            return kind
    return 'unknown'


def list_fixtures(fixtures_dir: Optional[Path] = None) -> List[FixtureInfo]:
    """Describes every fixture, sorted by name."""
    base = fixtures_dir or default_fixtures_dir()
    out = []
    for path in sorted(base.glob('*.json'), key=lambda p: p.stem):
        document = load_json(path)
        out.append(FixtureInfo(
            name=path.stem,
            kind=fixture_kind(document),
            lattice=document.get('lattice') if 'gram' not in document else document.get('label'),
            description=document.get('description'),
        ))
    return out
