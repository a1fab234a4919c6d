"""Defaults and per-invocation job configuration.

Module-level constants hold the library defaults. ``JobConfig`` collects the
settings of one CLI invocation; it is layered from defaults, an optional YAML
file and explicit command-line flags, in increasing priority.

Typical usage example:

    job = JobConfig.from_sources(
        command='transfer',
        inputs={'lattice': 'fixture:coxeter4'},
        flags={'cap_order': 5000},
        config_path=Path('job.yaml'),
    )
"""

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from hyperlat.exceptions import InputError

TOOL_VERSION: str = "1.0.0"
CERTIFICATE_SCHEMA: str = "hyperlat-cert/1"

DEFAULT_ORDER_CAP: int = 10**6
DEFAULT_WALK_CAP: int = 10**4
DEFAULT_ENUMERATION_RADIUS: Optional[int] = None

# Integers at or above this magnitude are serialized as decimal strings.
JSON_SAFE_INTEGER: int = 2**53

FIXTURES_ENV_VAR: str = "HYPERLAT_FIXTURES"
FIXTURE_PREFIX: str = "fixture:"

# Keys accepted in a YAML job file.
_CONFIG_KEYS = (
    'cap_order', 'cap_walk', 'enumeration_radius', 'no_chamber', 'quiet', 'log_json',
)


def default_fixtures_dir() -> Path:
    """Bundled fixtures directory, overridable through HYPERLAT_FIXTURES."""
    override = os.environ.get(FIXTURES_ENV_VAR)
    if override:
        return Path(override)
    # tools/lib/hyperlat/config.py -> fixtures/
    return Path(__file__).resolve().parent.parent.parent.parent / 'fixtures'


def resolve_input(reference: str, fixtures_dir: Optional[Path] = None) -> Path:
    """Resolves a path or a ``fixture:NAME`` reference to an existing file.

    Raises:
        InputError: If the file does not exist.
    """
    if reference.startswith(FIXTURE_PREFIX):
        name = reference[len(FIXTURE_PREFIX):]
        base = fixtures_dir or default_fixtures_dir()
        path = base / (name if name.endswith('.json') else f"{name}.json")
    else:
        path = Path(reference)
    path = path.expanduser().resolve()
    if not path.is_file():
        raise InputError(f"Input file not found: {reference}")
    return path


def load_config_file(path: Path) -> Dict[str, Any]:
    """Reads a YAML job file and returns its recognized keys.

    Raises:
        InputError: If the file is unreadable, not a mapping, or has unknown keys.
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise InputError(f"Cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"Config file {path} must contain a mapping")
    unknown = sorted(set(data) - set(_CONFIG_KEYS))
    if unknown:
        raise InputError(f"Unknown config keys in {path}: {', '.join(unknown)}")
    return data


@dataclass(frozen=True)
class JobConfig:
    """Settings of a single CLI invocation.

    Attributes:
        command: Subcommand name.
        inputs: Resolved input paths by role (lattice, isometry, ...).
        output: Output path, if the command writes a file.
        cap_order: Cap for order_mod.
        cap_walk: Cap on chamber-walk reflections.
        enumeration_radius: Box radius for brute-force audits, if any.
        no_chamber: Skip the chamber requirement in transfer.
        quiet: Only warnings and errors on stderr.
        log_json: JSON-lines logs instead of rich console output.
    """

    command: str
    inputs: Mapping[str, Path] = field(default_factory=dict)
    output: Optional[Path] = None
    cap_order: int = DEFAULT_ORDER_CAP
    cap_walk: int = DEFAULT_WALK_CAP
    enumeration_radius: Optional[int] = DEFAULT_ENUMERATION_RADIUS
    no_chamber: bool = False
    quiet: bool = False
    log_json: bool = False

    def __post_init__(self):
        for name in ('cap_order', 'cap_walk'):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise InputError(f"{name} must be a positive integer, got {value!r}")
        radius = self.enumeration_radius
        if radius is not None and (not isinstance(radius, int) or radius <= 0):
            raise InputError(f"enumeration_radius must be positive, got {radius!r}")

    @classmethod
    def from_sources(
        cls,
        command: str,
        inputs: Optional[Mapping[str, Optional[str]]] = None,
        output: Optional[str] = None,
        flags: Optional[Mapping[str, Any]] = None,
        config_path: Optional[Path] = None,
        fixtures_dir: Optional[Path] = None
    ) -> 'JobConfig':
        """Layers defaults, the YAML file and explicit flags.

        Args:
            command: Subcommand name.
            inputs: Raw input references by role; None entries are skipped.
            output: Raw output path.
            flags: Explicit flag values; None means "not given".
            config_path: Optional YAML job file.
            fixtures_dir: Fixture directory override.
        """
        settings: Dict[str, Any] = {}
        if config_path is not None:
            settings.update(load_config_file(config_path))
        for key, value in (flags or {}).items():
            if value is not None and value is not False:
                settings[key] = value
        resolved = {
            role: resolve_input(ref, fixtures_dir)
            for role, ref in (inputs or {}).items()
            if ref is not None
        }
        output_path = Path(output).expanduser().resolve() if output else None
        return cls(command=command, inputs=resolved, output=output_path, **settings)

    def with_overrides(self, **changes: Any) -> 'JobConfig':
        return replace(self, **changes)
