"""Problem declarations: JSON config parsing and builtin problems.

A config is one JSON object::

    {
      "space":   {"dim": 2, "p": 2},
      "regions": {"omega": {"variant": "segment", "endpoint_a": [...], "endpoint_b": [...]},
                  "delta": {"variant": "box", "lower_corner": [...], "upper_corner": [...]}},
      "map":     {"omega_rule": {"A": [[...]], "b": [...]}, "delta_rule": {...}},
      "options": {"density": 11, "depth": 32, "eta": 0.95, "seeds": [[...]], ...}
    }

Region variants are ``segment``, ``box`` and ``points`` (``{"points": [...],
"convex": false}``). A table map is ``{"table": [[input, output], ...]}``.
Numbers may be JSON numbers or strings holding an integer, decimal or
fraction such as ``"-1/3"``; strings are parsed exactly before conversion to
float. Unknown keys are rejected.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .cyclic_map import AffineCyclicMap, AffineRule, CyclicMap, TableMap
from .errors import ConfigError, UsageError
from .region import DEFAULT_MEMBERSHIP_TOL, Box, FinitePointSet, Region, Segment
from .space import Point, Space

__all__ = ["Problem", "parse_config", "load_config", "builtin_problem", "BUILTIN_PROBLEMS"]

OPTION_DEFAULTS = {
    "density": 11,
    "dist_density": 101,
    "depth": 32,
    "eta": 0.95,
    "seeds": [],
    "tolerances": {"gap": 1e-9, "pair": 1e-9, "membership": DEFAULT_MEMBERSHIP_TOL,
                   "verify": 1e-9},
    "max_iter": 10_000,
    "trace_path": None,
    "dist": None,
}


@dataclass
class Problem:
    name: str
    space: Space
    omega: Region
    delta: Region
    map: CyclicMap
    options: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)

    @property
    def seeds(self) -> list[Point]:
        return [Point(s, self.space) for s in self.options["seeds"]]


def _number(v, where: str) -> float:
    if isinstance(v, bool):
        raise ConfigError(f"{where}: expected a number, got a boolean")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(Fraction(v.strip()))
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{where}: cannot parse number {v!r}") from None
    raise ConfigError(f"{where}: expected a number, got {type(v).__name__}")


def _vector(v, where: str, dim: int | None = None) -> list[float]:
    if not isinstance(v, list):
        raise ConfigError(f"{where}: expected a list of numbers")
    out = [_number(x, f"{where}[{i}]") for i, x in enumerate(v)]
    if dim is not None and len(out) != dim:
        raise ConfigError(f"{where}: expected {dim} entries, got {len(out)}")
    return out


def _matrix(v, where: str, dim: int) -> list[list[float]]:
    if not isinstance(v, list) or len(v) != dim:
        raise ConfigError(f"{where}: expected a {dim}x{dim} matrix")
    return [_vector(row, f"{where}[{i}]", dim) for i, row in enumerate(v)]


def _obj(v, where: str, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(v, dict):
        raise ConfigError(f"{where}: expected an object")
    unknown = sorted(set(v) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = sorted(required - set(v))
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(missing)}")
    return v


def _region(v, where: str, space: Space, tol: float) -> Region:
    kind = v.get("variant") if isinstance(v, dict) else None
    pt = lambda key: Point(_vector(v[key], f"{where}.{key}", space.dim), space)  # noqa: E731
    try:
        if kind == "segment":
            _obj(v, where, {"variant", "endpoint_a", "endpoint_b"}, {"endpoint_a", "endpoint_b"})
            return Segment(pt("endpoint_a"), pt("endpoint_b"), membership_tol=tol)
        if kind == "box":
            _obj(v, where, {"variant", "lower_corner", "upper_corner"},
                 {"lower_corner", "upper_corner"})
            return Box(pt("lower_corner"), pt("upper_corner"), membership_tol=tol)
        if kind == "points":
            _obj(v, where, {"variant", "points", "convex"}, {"points"})
            if not isinstance(v["points"], list):
                raise ConfigError(f"{where}.points: expected a list of points")
            pts = tuple(Point(_vector(x, f"{where}.points[{i}]", space.dim), space)
                        for i, x in enumerate(v["points"]))
            convex = v.get("convex", False)
            if not isinstance(convex, bool):
                raise ConfigError(f"{where}.convex: expected a boolean")
            return FinitePointSet(pts, convex=convex, membership_tol=tol)
    except UsageError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    raise ConfigError(f"{where}.variant: expected 'segment', 'box' or 'points', got {kind!r}")


def _map(v, space: Space, omega: Region, delta: Region) -> CyclicMap:
    if isinstance(v, dict) and "table" in v:
        _obj(v, "map", {"table"})
        rows = v["table"]
        if not isinstance(rows, list) or not rows:
            raise ConfigError("map.table: expected a nonempty list of [input, output] pairs")
        table = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 2:
                raise ConfigError(f"map.table[{i}]: expected [input, output]")
            table.append(tuple(Point(_vector(x, f"map.table[{i}]", space.dim), space)
                               for x in row))
        return TableMap(omega, delta, tuple(table))
    _obj(v, "map", {"omega_rule", "delta_rule"}, {"omega_rule", "delta_rule"})
    rules = []
    for key in ("omega_rule", "delta_rule"):
        r = _obj(v[key], f"map.{key}", {"A", "b"}, {"A", "b"})
        rules.append(AffineRule(_matrix(r["A"], f"map.{key}.A", space.dim),
                                _vector(r["b"], f"map.{key}.b", space.dim)))
    return AffineCyclicMap(omega, delta, *rules)


def _options(v, space: Space) -> dict:
    opts = copy.deepcopy(OPTION_DEFAULTS)
    if v is None:
        return opts
    _obj(v, "options", set(OPTION_DEFAULTS))
    for key in ("density", "dist_density", "depth", "max_iter"):
        if key in v:
            if not isinstance(v[key], int) or isinstance(v[key], bool) or v[key] < 1:
                raise ConfigError(f"options.{key}: expected a positive integer")
            opts[key] = v[key]
    if "eta" in v:
        opts["eta"] = _number(v["eta"], "options.eta")
    if "dist" in v and v["dist"] is not None:
        opts["dist"] = _number(v["dist"], "options.dist")
    if "seeds" in v:
        if not isinstance(v["seeds"], list):
            raise ConfigError("options.seeds: expected a list of points")
        opts["seeds"] = [_vector(s, f"options.seeds[{i}]", space.dim)
                         for i, s in enumerate(v["seeds"])]
    if "tolerances" in v:
        t = _obj(v["tolerances"], "options.tolerances", set(OPTION_DEFAULTS["tolerances"]))
        for key, val in t.items():
            opts["tolerances"][key] = _number(val, f"options.tolerances.{key}")
    if "trace_path" in v:
        if v["trace_path"] is not None and not isinstance(v["trace_path"], str):
            raise ConfigError("options.trace_path: expected a string")
        opts["trace_path"] = v["trace_path"]
    return opts


def build_problem(doc: dict, name: str = "config") -> Problem:
    """Validate a decoded config document and build the problem objects."""
    _obj(doc, "config", {"space", "regions", "map", "options"}, {"space", "regions", "map"})
    sp = _obj(doc["space"], "space", {"dim", "p"}, {"dim"})
    if not isinstance(sp["dim"], int) or isinstance(sp["dim"], bool):
        raise ConfigError("space.dim: expected an integer")
    try:
        space = Space(sp["dim"], _number(sp.get("p", 2), "space.p"))
    except UsageError as exc:
        raise ConfigError(f"space: {exc}") from None
    opts = _options(doc.get("options"), space)
    tol = opts["tolerances"]["membership"]
    regs = _obj(doc["regions"], "regions", {"omega", "delta"}, {"omega", "delta"})
    omega = _region(regs["omega"], "regions.omega", space, tol)
    delta = _region(regs["delta"], "regions.delta", space, tol)
    try:
        m = _map(doc["map"], space, omega, delta)
    except UsageError as exc:
        raise ConfigError(f"map: {exc}") from None
    return Problem(name, space, omega, delta, m, opts, doc)


def parse_config(text: str, name: str = "config") -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return build_problem(doc, name)


def load_config(path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text, name=str(path))


# Two vertical unit segments at x = -1 and x = 1; the map halves (omega side)
# or thirds (delta side) the second coordinate, flips its sign, and jumps across.
TWO_SEGMENT_EXAMPLE = {
    "space": {"dim": 2, "p": 2},
    "regions": {
        "omega": {"variant": "segment", "endpoint_a": [-1, "-1/2"], "endpoint_b": [-1, "1/2"]},
        "delta": {"variant": "segment", "endpoint_a": [1, "-1/2"], "endpoint_b": [1, "1/2"]},
    },
    "map": {
        "omega_rule": {"A": [[1, 0], [0, "-1/2"]], "b": [2, 0]},
        "delta_rule": {"A": [[1, 0], [0, "-1/3"]], "b": [-2, 0]},
    },
    "options": {
        "density": 11,
        "depth": 32,
        "eta": 0.95,
        "seeds": [[-1, "-1/2"]],
    },
}

BUILTIN_PROBLEMS = {"paper-example": TWO_SEGMENT_EXAMPLE}


def builtin_problem(name: str) -> Problem:
    try:
        doc = BUILTIN_PROBLEMS[name]
    except KeyError:
        raise ConfigError(
            f"unknown builtin problem {name!r}; available: {', '.join(sorted(BUILTIN_PROBLEMS))}"
        ) from None
    return build_problem(copy.deepcopy(doc), name)
