"""JSON schemas for the value types and a deterministic report emitter.

Reports are emitted with sorted keys and floats printed to 17 significant
digits, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .domains import SplitToricDomain
from .errors import InvalidInputError
from .forms import ContactFormRep, ContactMapRep, SampledManifold
from .starshape import DirectionGrid, RadialSet


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidInputError("reports may not contain non-finite numbers")
    return format(x, ".17g")


def _render(obj: Any) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, np.ndarray):
        return _render(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_render(v)}" for k, v in items) + "}"
    raise InvalidInputError(f"cannot serialize object of type {type(obj).__name__}")


def dumps_report(obj: Any) -> str:
    return _render(obj) + "\n"


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# -- value-type schemas -------------------------------------------------------


def _planar_grid_from_directions(directions: np.ndarray) -> DirectionGrid:
    """Planar grid keeping the caller's direction order; weights are the
    half-gap arcs of the sorted angles, scattered back to that order."""
    angles = np.mod(np.arctan2(directions[:, 1], directions[:, 0]), 2.0 * np.pi)
    order = np.argsort(angles, kind="stable")
    sorted_angles = angles[order]
    if np.any(np.diff(sorted_angles) == 0.0):
        raise InvalidInputError("duplicate directions in radial-set payload")
    gaps = np.diff(sorted_angles, append=sorted_angles[0] + 2.0 * np.pi)
    sorted_weights = 0.5 * (gaps + np.roll(gaps, 1))
    weights = np.empty_like(sorted_weights)
    weights[order] = sorted_weights
    return DirectionGrid(2, directions, weights, angles)


def radial_set_to_dict(s: RadialSet, include_directions: bool = True) -> dict:
    out = {
        "dimension": s.grid.dimension,
        "radii": s.radii,
    }
    if include_directions:
        out["directions"] = s.grid.directions
    return out


def radial_set_from_dict(data: dict) -> RadialSet:
    try:
        dimension = int(data["dimension"])
        radii = np.asarray(data["radii"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad radial-set payload: {exc}") from exc
    if "directions" in data and data["directions"] is not None:
        directions = np.asarray(data["directions"], dtype=float)
        if directions.ndim != 2 or directions.shape[1] != dimension:
            raise InvalidInputError("directions must be a (count, dimension) matrix")
        if dimension == 2:
            grid = _planar_grid_from_directions(directions)
        else:
            count = directions.shape[0]
            from .starshape import sphere_area

            weights = np.full(count, sphere_area(dimension) / count)
            grid = DirectionGrid(dimension, directions, weights)
    else:
        count = radii.shape[0]
        grid = (
            DirectionGrid.uniform_circle(count)
            if dimension == 2
            else DirectionGrid.sphere(count, dimension)
        )
    return RadialSet(grid, radii)


def domain_to_dict(d: SplitToricDomain) -> dict:
    return {
        "base_dim": d.base_dim,
        "liouville_weight": d.liouville_weight,
        "fiber": radial_set_to_dict(d.fiber),
        "label": d.label,
        "cover": d.cover,
    }


def domain_from_dict(data: dict) -> SplitToricDomain:
    try:
        return SplitToricDomain(
            base_dim=int(data["base_dim"]),
            fiber=radial_set_from_dict(data["fiber"]),
            liouville_weight=float(data.get("liouville_weight", 1.0)),
            label=str(data.get("label", "")),
            cover=int(data.get("cover", 1)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad domain payload: {exc}") from exc


def form_to_dict(form: ContactFormRep) -> dict:
    return {
        "sites": form.manifold.sites,
        "weights": form.manifold.weights,
        "half_dim": form.manifold.half_dim,
        "f": form.f,
    }


def form_from_dict(data: dict) -> ContactFormRep:
    try:
        manifold = SampledManifold(
            weights=np.asarray(data["weights"], dtype=float),
            half_dim=int(data["half_dim"]),
        )
        if "sites" in data and int(data["sites"]) != manifold.sites:
            raise InvalidInputError("declared site count disagrees with the weights")
        return ContactFormRep(manifold, np.asarray(data["f"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad contact-form payload: {exc}") from exc


def map_from_dict(data: dict, manifold: SampledManifold) -> ContactMapRep:
    try:
        perm = np.asarray(data["perm"], dtype=np.int64)
        if "g" in data and data["g"] is not None:
            g = np.asarray(data["g"], dtype=float)
            return ContactMapRep(manifold, perm, g)
        return ContactMapRep.measure_compatible(manifold, perm)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad candidate-map payload: {exc}") from exc


def map_to_dict(m: ContactMapRep) -> dict:
    return {"perm": m.perm, "g": m.g}


def element_values_from_json(data: Any) -> np.ndarray:
    """Grid elements travel as bare JSON arrays of numbers."""
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError("grid element payload must be a flat array of numbers")
    return arr
