"""JSON scenario files: two batches, an optional grid and theorem id.

Layout (schema version 1)::

    {
      "v": 1,
      "name": "pareto_locations",
      "theorem": "T3.1",
      "baseline": {"family": "pareto", "params": {"a": 2}},
      "A": {"lambda": [5, 7, 9], "theta": [0.5, 0.7, 0.9], "alpha": 0.2},
      "B": {"lambda": [2, 4, 7], "theta": [0.5, 0.7, 0.9], "alpha": 0.2,
            "generator": {"family": "independence"}},
      "grid": {"lo": 9.001, "hi": 60, "n": 512}
    }

A batch may carry its own ``"baseline"``; otherwise the top-level one is
used.  Scalars in ``lambda``/``theta``/``alpha`` are broadcast to the
length of the vector entries (or to ``"n"`` when all three are scalars).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .baseline import make_baseline
from .copula import make_generator
from .orderstat import ElsBatch

SCHEMA_VERSION = 1

FIGURES = {
    "1a": "pareto_locations",
    "1b": "truncweibull_scales",
    "2a": "frailty_crossing",
    "2b": "hougaard_crossing",
}


class ScenarioError(ValueError):
    """Malformed scenario file or descriptor."""


@dataclass(frozen=True)
class Scenario:
    name: str
    A: ElsBatch
    B: ElsBatch
    grid: Optional[np.ndarray] = None
    theorem: Optional[str] = None
    expect: dict = field(default_factory=dict)
    description: str = ""


def parse_grid(text: str) -> np.ndarray:
    """Parse ``"lo:hi:n"`` into ``n`` linearly spaced points on ``[lo, hi]``."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ScenarioError(f"grid must look like lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ScenarioError(f"bad grid {text!r}: {exc}") from None
    return linear_grid(lo, hi, n)


def linear_grid(lo, hi, n) -> np.ndarray:
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
        raise ScenarioError(f"grid needs finite lo < hi, got {lo}, {hi}")
    if n < 2:
        raise ScenarioError("grid needs at least 2 points")
    return np.linspace(lo, hi, int(n))


def _family(desc, what, maker):
    if not isinstance(desc, dict) or "family" not in desc:
        raise ScenarioError(f"{what} must be an object with a 'family' tag")
    try:
        return maker(desc["family"], desc.get("params") or {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"bad {what}: {exc}") from None


def _batch(desc, default_baseline, label):
    if not isinstance(desc, dict):
        raise ScenarioError(f"batch {label} must be an object")
    missing = [k for k in ("lambda", "theta", "alpha") if k not in desc]
    if missing:
        raise ScenarioError(f"batch {label} lacks {', '.join(missing)}")
    base_desc = desc.get("baseline", default_baseline)
    if base_desc is None:
        raise ScenarioError(f"batch {label} has no baseline")
    baseline = _family(base_desc, "baseline", make_baseline)
    gen_desc = desc.get("generator")
    generator = None if gen_desc is None else _family(gen_desc, "generator", make_generator)
    try:
        return ElsBatch.from_vectors(desc["lambda"], desc["theta"], desc["alpha"],
                                     baseline, generator, n=desc.get("n"))
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"batch {label}: {exc}") from None


def scenario_from_dict(data: dict, name: str = "scenario") -> Scenario:
    """Build a :class:`Scenario` from a parsed JSON object."""
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    if data.get("v") != SCHEMA_VERSION:
        raise ScenarioError(f"unsupported scenario version {data.get('v')!r}")
    for key in ("A", "B"):
        if key not in data:
            raise ScenarioError(f"scenario lacks batch {key}")
    base = data.get("baseline")
    A = _batch(data["A"], base, "A")
    B = _batch(data["B"], base, "B")
    if A.n != B.n:
        raise ScenarioError(f"batches differ in size: {A.n} vs {B.n}")
    grid = None
    if data.get("grid") is not None:
        g = data["grid"]
        try:
            grid = linear_grid(float(g["lo"]), float(g["hi"]), int(g["n"]))
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"bad grid: {exc}") from None
    return Scenario(str(data.get("name", name)), A, B, grid, data.get("theorem"),
                    dict(data.get("expect") or {}), str(data.get("description", "")))


def load_scenario(path) -> Scenario:
    """Read a scenario file.

    Raises
    ------
    ScenarioError
        If the file is missing, is not JSON, or does not describe two
        compatible batches.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path} is not valid JSON: {exc}") from None
    return scenario_from_dict(data, path.stem)


def list_fixtures() -> list:
    root = resources.files("ordstat") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def fixture_text(name: str) -> str:
    res = resources.files("ordstat") / "fixtures" / f"{name}.json"
    if not res.is_file():
        raise ScenarioError(f"no fixture named {name!r}; known: {', '.join(list_fixtures())}")
    return res.read_text()


def load_fixture(name: str) -> Scenario:
    """Load one of the scenarios shipped inside the package."""
    return scenario_from_dict(json.loads(fixture_text(name)), name)
