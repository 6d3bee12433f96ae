"""Loader for YAML chain description files."""

from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from .exceptions import ChainFileError
from .exceptions import ContactInteractionError
from .schema import InteractionChain


def _normalize_site(raw: Any) -> Any:
    """Accept ``matrix: [t, v, u, s]`` as shorthand for a general site's connection."""
    if not isinstance(raw, dict) or raw.get("kind") != "general":
        return raw
    site = dict(raw)
    matrix = site.pop("matrix", None)
    if matrix is not None and "connection" not in site:
        if isinstance(matrix, list | tuple):
            if len(matrix) != 4:
                raise ChainFileError(f"general site matrix needs 4 entries, got {len(matrix)}", context={"site": raw})
            t, v, u, s = matrix
            site["connection"] = {"m11": t, "m12": v, "m21": u, "m22": s}
        else:
            site["connection"] = matrix
    return site


def parse_chain(data: Any) -> InteractionChain:
    """
    Validate an already-parsed chain description.

    Args:
        data: Mapping with an ``interactions`` list, or the list itself

    Returns:
        Validated chain

    Example:
        >>> chain = parse_chain({"interactions": [{"kind": "delta", "strength": 2, "position": 0}]})
        >>> len(chain)
        1
    """
    if isinstance(data, list):
        data = {"interactions": data}
    if not isinstance(data, dict):
        raise ChainFileError(f"chain description must be a mapping, got {type(data).__name__}")

    sites = data.get("interactions") or []
    if not isinstance(sites, list):
        raise ChainFileError("'interactions' must be a list")
    try:
        return InteractionChain(interactions=[_normalize_site(site) for site in sites])
    except ValidationError as e:
        raise ChainFileError(f"Invalid chain description: {e}") from e


def load_chain_file(path: Path) -> InteractionChain:
    """
    Load and validate a chain description file.

    Args:
        path: YAML file with an ``interactions`` list

    Returns:
        Validated chain

    Raises:
        ChainFileError: If the file is missing, not YAML, or fails validation
        ChainOrderError: If positions are not strictly increasing
        NonUnimodularError: If a general site's matrix has det != 1
    """
    try:
        content = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ChainFileError(f"Cannot read chain file {path}: {e}", context={"path": str(path)}) from e

    try:
        data = yaml.safe_load(content) or {}
    except yaml.YAMLError as e:
        raise ChainFileError(f"Invalid YAML in chain file {path}: {e}", context={"path": str(path)}) from e

    try:
        return parse_chain(data)
    except ChainFileError as e:
        raise ChainFileError(f"Invalid chain file {path}: {e.message}", context={"path": str(path)}) from e
    except ContactInteractionError as e:
        e.context.setdefault("path", str(path))
        raise
