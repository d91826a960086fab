"""JSON scenario documents and the shipped presets.

Angles and angular frequencies may be written as numbers or as simple
multiples of pi (``"pi/4"``, ``"3*pi/4"``, ``"2pi"``).  Unknown keys are
rejected; every error names the offending field.
"""
from __future__ import annotations

import hashlib
import json
import math
import re
from importlib import resources
from pathlib import Path

from .errors import InvalidArgument, ScenarioError
from .grid import DEFAULT_GRID, ImagingGrid
from .medium import (LINEAR_OMEGA, SPACING_MODES, FrequencySet, Inhomogeneity,
                     LayeredMedium, make_frequency_set)
from .scenario import Scenario
from .steering import INCIDENCE, OBSERVATION, make_direction_set

_PI_EXPR = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")

_TOP_KEYS = {"name", "medium", "scatterers", "arrays", "frequencies", "noise", "grid",
             "test_vectors", "method", "description"}
_METHOD_PARAMS = {
    "filter": {"freq_count", "tau", "cap"},
    "music": {"freq_index", "tau", "cap"},
    "kirchhoff": {"freq_index"},
}


def _number(value, path):
    if isinstance(value, bool):
        raise ScenarioError(path, "expected a number")
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise ScenarioError(path, "must be finite")
        return float(value)
    if isinstance(value, str):
        m = _PI_EXPR.match(value)
        if m:
            coef = m.group(1)
            coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
            denom = float(m.group(2)) if m.group(2) else 1.0
            return coef * math.pi / denom
        raise ScenarioError(path, f"cannot read {value!r} as a number or multiple of pi")
    raise ScenarioError(path, f"expected a number, got {type(value).__name__}")


def _integer(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(path, "expected an integer")
    return value


def _keys(obj, allowed, path, required=()):
    if not isinstance(obj, dict):
        raise ScenarioError(path, "expected an object")
    for key in obj:
        if key not in allowed:
            raise ScenarioError(f"{path}.{key}" if path else key, "unknown key")
    for key in required:
        if key not in obj:
            raise ScenarioError(f"{path}.{key}" if path else key, "missing required key")


def _vector(value, path, n):
    if not isinstance(value, list) or len(value) != n:
        raise ScenarioError(path, f"expected a list of {n} numbers")
    return tuple(_number(v, f"{path}[{i}]") for i, v in enumerate(value))


def _wrap(path, func, *args):
    try:
        return func(*args)
    except ScenarioError:
        raise
    except InvalidArgument as exc:
        raise ScenarioError(path, str(exc)) from None


def scenario_from_document(doc: dict) -> Scenario:
    _keys(doc, _TOP_KEYS, "", required=("medium", "scatterers", "arrays", "frequencies"))

    med = doc["medium"]
    _keys(med, {"eps_plus", "eps_minus", "mu_plus", "mu_minus"}, "medium",
          required=("eps_plus", "eps_minus"))
    medium = _wrap("medium", LayeredMedium,
                   *(_number(med.get(k, 1.0), f"medium.{k}")
                     for k in ("eps_plus", "eps_minus", "mu_plus", "mu_minus")))

    if not isinstance(doc["scatterers"], list):
        raise ScenarioError("scatterers", "expected a list")
    scatterers = []
    for i, s in enumerate(doc["scatterers"]):
        path = f"scatterers[{i}]"
        _keys(s, {"center", "radius", "eps", "mu"}, path, required=("center", "radius"))
        center = _vector(s["center"], f"{path}.center", 2)
        if center[1] >= 0:
            raise ScenarioError(f"{path}.center", "inclusion must be buried (second coordinate < 0)")
        scatterers.append(_wrap(path, Inhomogeneity, center, _number(s["radius"], f"{path}.radius"),
                                _number(s.get("eps", medium.eps_minus), f"{path}.eps"),
                                _number(s.get("mu", medium.mu_minus), f"{path}.mu")))

    arrays = doc["arrays"]
    _keys(arrays, {OBSERVATION, INCIDENCE}, "arrays", required=(OBSERVATION, INCIDENCE))
    built = {}
    for role in (OBSERVATION, INCIDENCE):
        path = f"arrays.{role}"
        a = arrays[role]
        _keys(a, {"count", "angle_min", "angle_max"}, path, required=("count",))
        built[role] = _wrap(path, make_direction_set, role, _integer(a["count"], f"{path}.count"),
                            _number(a.get("angle_min", "pi/4"), f"{path}.angle_min"),
                            _number(a.get("angle_max", "3*pi/4"), f"{path}.angle_max"))

    frequencies = _frequencies(doc["frequencies"])

    noise = doc.get("noise", {})
    _keys(noise, {"snr_db", "seed"}, "noise")
    snr = noise.get("snr_db")
    snr = None if snr is None else _number(snr, "noise.snr_db")
    seed = _integer(noise.get("seed", 0), "noise.seed")

    grid = DEFAULT_GRID
    if "grid" in doc:
        g = doc["grid"]
        _keys(g, {"bounds", "step"}, "grid", required=("bounds", "step"))
        b = g["bounds"]
        if not isinstance(b, list) or len(b) != 2:
            raise ScenarioError("grid.bounds", "expected [[x1_min, x1_max], [x2_min, x2_max]]")
        (a1, b1), (a2, b2) = _vector(b[0], "grid.bounds[0]", 2), _vector(b[1], "grid.bounds[1]", 2)
        grid = _wrap("grid", ImagingGrid, a1, b1, a2, b2, _number(g["step"], "grid.step"))

    tv = doc.get("test_vectors", {})
    _keys(tv, {"c_d", "c_h"}, "test_vectors")
    c_d = _vector(tv["c_d"], "test_vectors.c_d", 3) if "c_d" in tv else (1.0, 0.0, 0.0)
    c_h = _vector(tv["c_h"], "test_vectors.c_h", 3) if "c_h" in tv else None

    method = doc.get("method", {})
    if method:
        _keys(method, {"name", "params"}, "method", required=("name",))
        if method["name"] not in _METHOD_PARAMS:
            raise ScenarioError("method.name", f"unknown method {method['name']!r}")
        params = method.get("params", {})
        _keys(params, _METHOD_PARAMS[method["name"]], "method.params")
        method = {"name": method["name"], "params": dict(params)}

    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ScenarioError("name", "expected a string")
    return _wrap("", Scenario, medium, tuple(scatterers), built[OBSERVATION], built[INCIDENCE],
                 frequencies, c_d, c_h, snr, seed, grid, method, name)


def _frequencies(f):
    path = "frequencies"
    _keys(f, {"omega_min", "omega_max", "lambda_min", "lambda_max", "count", "mode", "omegas"}, path)
    mode = f.get("mode", LINEAR_OMEGA)
    if mode not in SPACING_MODES:
        raise ScenarioError(f"{path}.mode", f"must be one of {SPACING_MODES}")
    if "omegas" in f:
        if not isinstance(f["omegas"], list):
            raise ScenarioError(f"{path}.omegas", "expected a list")
        values = [_number(w, f"{path}.omegas[{i}]") for i, w in enumerate(f["omegas"])]
        return _wrap(path, FrequencySet, tuple(values), mode)
    count = _integer(f.get("count", 10), f"{path}.count")
    if "lambda_min" in f or "lambda_max" in f:
        if "omega_min" in f or "omega_max" in f:
            raise ScenarioError(path, "give either omega or lambda bounds, not both")
        lam_min = _number(f.get("lambda_min"), f"{path}.lambda_min")
        lam_max = _number(f.get("lambda_max"), f"{path}.lambda_max")
        if lam_min <= 0 or lam_max <= 0:
            raise ScenarioError(path, "wavelengths must be positive")
        lo, hi = 2 * math.pi / lam_max, 2 * math.pi / lam_min
    else:
        lo = _number(f.get("omega_min", "2*pi"), f"{path}.omega_min")
        hi = _number(f.get("omega_max", "4*pi"), f"{path}.omega_max")
    return _wrap(path, make_frequency_set, lo, hi, count, mode)


def scenario_to_document(s: Scenario) -> dict:
    """Plain-JSON form that parses back to an identical scenario."""
    m = s.medium
    g = s.grid
    doc = {
        "name": s.name,
        "medium": {"eps_plus": m.eps_plus, "eps_minus": m.eps_minus,
                   "mu_plus": m.mu_plus, "mu_minus": m.mu_minus},
        "scatterers": [{"center": list(x.center), "radius": x.radius, "eps": x.eps, "mu": x.mu}
                       for x in s.scatterers],
        "arrays": {a.role: {"count": len(a), "angle_min": a.angle_min, "angle_max": a.angle_max}
                   for a in (s.obs, s.inc)},
        "frequencies": {"omegas": list(s.frequencies.omegas), "mode": s.frequencies.mode},
        "noise": {"snr_db": s.snr_db, "seed": s.seed},
        "grid": {"bounds": [[g.x1_min, g.x1_max], [g.x2_min, g.x2_max]], "step": g.step},
        "test_vectors": {"c_d": list(s.c_d), "c_h": list(s.c_h)},
    }
    if s.method:
        doc["method"] = s.method
    return doc


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def scenario_hash(s: Scenario) -> str:
    return hashlib.sha256(canonical_json(scenario_to_document(s)).encode()).hexdigest()


def parse_document_text(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ScenarioError("", "scenario document must be a JSON object")
    return scenario_from_document(doc)


def preset_names() -> list[str]:
    root = resources.files("halfspace_msr") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def preset_text(name: str) -> str:
    path = resources.files("halfspace_msr") / "presets" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no preset named {name!r}")
    return path.read_text()


def load_preset(name: str) -> Scenario:
    return parse_document_text(preset_text(name))


def parse_scenario(source) -> Scenario:
    """Load a scenario from a file path or, failing that, a preset name."""
    path = Path(source)
    if path.is_file():
        return parse_document_text(path.read_text())
    if str(source) in preset_names():
        return load_preset(str(source))
    raise FileNotFoundError(f"scenario {source!r} is neither a readable file nor a preset")

