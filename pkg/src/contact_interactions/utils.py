"""Parsing and formatting helpers shared by the command line and the chain loader."""

import math

import numpy as np

from .exceptions import InvalidParameterError


def parse_grid(text: str, log: bool = False) -> list[float]:
    """
    Parse a ``min:max:count`` grid into an increasing list of values.

    Args:
        text: Grid specification, e.g. ``"0.1:10:50"``
        log: Geometric spacing instead of linear

    Returns:
        ``count`` values from min to max inclusive

    Example:
        >>> parse_grid("1:3:3")
        [1.0, 2.0, 3.0]
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidParameterError(f"grid must look like min:max:count, got {text!r}", context={"grid": text})
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InvalidParameterError(f"invalid grid {text!r}: {e}", context={"grid": text}) from e

    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise InvalidParameterError(f"grid bounds must be finite, got {text!r}", context={"grid": text})
    if count < 2:
        raise InvalidParameterError(f"grid needs at least 2 points, got {count}", context={"grid": text})
    if hi <= lo:
        raise InvalidParameterError(f"grid max must exceed min, got {text!r}", context={"grid": text})
    if log:
        if lo <= 0:
            raise InvalidParameterError(f"log grid needs positive bounds, got {text!r}", context={"grid": text})
        values = np.geomspace(lo, hi, count)
    else:
        values = np.linspace(lo, hi, count)
    return [float(x) for x in values]


def parse_matrix(text: str) -> tuple[float, float, float, float]:
    """
    Parse ``t,v,u,s`` into a 4-tuple of floats.

    Example:
        >>> parse_matrix("2,3,1,2")
        (2.0, 3.0, 1.0, 2.0)
    """
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise InvalidParameterError(f"matrix must be t,v,u,s, got {text!r}", context={"matrix": text})
    try:
        t, v, u, s = (float(p) for p in parts)
    except ValueError as e:
        raise InvalidParameterError(f"invalid matrix {text!r}: {e}", context={"matrix": text}) from e
    if not all(math.isfinite(x) for x in (t, v, u, s)):
        raise InvalidParameterError(f"matrix entries must be finite, got {text!r}", context={"matrix": text})
    return t, v, u, s


def parse_site(text: str) -> tuple[str, float, float]:
    """
    Parse a ``kind:strength@position`` site description.

    Example:
        >>> parse_site("delta:2@-0.5")
        ('delta', 2.0, -0.5)
    """
    try:
        head, position = text.split("@", 1)
        kind, strength = head.split(":", 1)
        kind = kind.strip().lower()
        result = (kind, float(strength), float(position))
    except ValueError as e:
        raise InvalidParameterError(
            f"site must look like kind:strength@position, got {text!r}", context={"site": text}
        ) from e
    if kind not in ("delta", "epsilon"):
        raise InvalidParameterError(f"site kind must be delta or epsilon, got {kind!r}", context={"site": text})
    return result


def format_number(value: float) -> str:
    """Shortest round-trip decimal form of a float (at most 17 significant digits).

    Example:
        >>> format_number(0.1)
        '0.1'
        >>> format_number(1.0)
        '1.0'
    """
    return repr(float(value))
