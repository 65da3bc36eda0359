"""Project files (saved CLI settings) and transposition weight files."""

import json
from pathlib import Path
from typing import Any, Dict

from .algebra import TranspositionWeights
from .errors import PreconditionError, ProjectFileError, WeightsFileError


def save_project(filepath: Path, name: str, settings: Dict[str, Any]) -> None:
    """Save run settings to a project JSON file.

    Args:
        filepath: Path to save the project file.
        name: Name of the project.
        settings: Settings keyed like the CLI options.
    """
    project = {
        "project_name": name,
        "project_version": "1.0",
        "settings": settings,
    }

    with open(filepath, "w") as f:
        json.dump(project, f, indent=2, sort_keys=True)


def load_project(filepath: Path) -> Dict[str, Any]:
    """Load settings from a project JSON file.

    Args:
        filepath: Path to the project file.

    Returns:
        Dictionary of settings.

    Raises:
        ProjectFileError: If the file is missing, is not JSON, or its
            settings are not an object.
    """
    try:
        with open(filepath, "r") as f:
            data = json.load(f)
    except (OSError, ValueError) as exc:
        raise ProjectFileError(f"cannot read project from {filepath}: {exc}") from exc
    if not isinstance(data, dict):
        raise ProjectFileError(f"project {filepath} is not a JSON object")
    settings = data.get("settings", {})
    if not isinstance(settings, dict):
        raise ProjectFileError(f"project {filepath} has a non-object 'settings' entry")
    return settings


def load_weights(filepath: Path) -> TranspositionWeights:
    """Read a weight file {"n": n, "edges": [{"i", "j", "num", "den"}, ...]}.

    Raises:
        WeightsFileError: If the file is missing, is not JSON, or describes
            invalid weights (negative, i = j, out of range, duplicated).
    """
    try:
        with open(filepath, "r") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise WeightsFileError(f"cannot read weights from {filepath}: {exc}") from exc
    try:
        return TranspositionWeights.from_json(data)
    except (PreconditionError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise WeightsFileError(f"invalid weights in {filepath}: {exc}") from exc
