"""Run configuration: JSON ingestion, validation, and canonical emission.

The file format is UTF-8 JSON with top-level keys ``n``, ``tau``,
``volume``, ``classes`` (each with ``d``, ``angles`` as ``{p, q}``
fractions, ``weight`` as ``{num, den}``), optional ``plancherel`` and
``conventions.angle_unit`` ("two_pi", the default, reads an angle p/q as
2*pi*p/q; "pi" reads it as pi*p/q).  Angles are normalised to exact
fractions of a full turn internally, which makes the residue period of
every phase factor immediate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import jsonschema

from .lie import EllipticClass, RayConfig
from .torsion import OrbifoldData

CONFIG_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["n", "tau", "volume", "classes"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "tau": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2},
        "volume": {
            "oneOf": [
                {"type": "number", "exclusiveMinimum": 0},
                {"$ref": "#/$defs/rational"},
            ]
        },
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "angles", "weight"],
                "additionalProperties": False,
                "properties": {
                    "d": {"type": "integer", "minimum": 1},
                    "angles": {"type": "array", "items": {"$ref": "#/$defs/fraction"}},
                    "weight": {"$ref": "#/$defs/rational"},
                },
            },
        },
        "plancherel": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"oneOf": [{"type": "integer"}, {"$ref": "#/$defs/rational"}]},
            },
        },
        "conventions": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"angle_unit": {"enum": ["two_pi", "pi"]}},
        },
    },
    "$defs": {
        "fraction": {
            "type": "object",
            "required": ["p", "q"],
            "additionalProperties": False,
            "properties": {
                "p": {"type": "integer"},
                "q": {"type": "integer", "exclusiveMinimum": 0},
            },
        },
        "rational": {
            "type": "object",
            "required": ["num", "den"],
            "additionalProperties": False,
            "properties": {
                "num": {"type": "integer"},
                "den": {"type": "integer", "exclusiveMinimum": 0},
            },
        },
    },
}


class ConfigError(ValueError):
    """Schema or semantic violations, with JSON field paths."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class RunConfig:
    """Validated run inputs: the ray base plus orbifold data."""

    n: int
    tau: tuple[int, ...]
    volume: Fraction | float
    classes: tuple[EllipticClass, ...] = ()
    plancherel: tuple[tuple[Fraction, ...], ...] | None = None

    @property
    def q(self) -> int:
        """Least common residue period over all configured rotation angles."""
        denominators = [a.denominator for cls in self.classes for a in cls.angles]
        return math.lcm(1, *denominators)

    def ray(self, m: int = 0) -> RayConfig:
        return RayConfig(self.n, self.tau, m)

    def orbifold(self) -> OrbifoldData:
        return OrbifoldData(self.n, self.volume, self.classes, self.plancherel)


def _to_turns(p: int, q: int, unit: str) -> Fraction:
    frac = Fraction(p, q)
    return frac if unit == "two_pi" else frac / 2


def _schema_violations(raw) -> list[str]:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    out = []
    for err in sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path)):
        path = ".".join(str(part) for part in err.absolute_path) or "<root>"
        out.append(f"{path}: {err.message}")
    return out


def _semantic_violations(raw) -> list[str]:
    out = []
    n = raw["n"]
    tau = raw["tau"]
    if len(tau) != n + 1:
        out.append(f"tau: expected {n + 1} entries for n={n}, got {len(tau)}")
    if any(tau[i] < tau[i + 1] for i in range(len(tau) - 1)):
        out.append("tau: tau not non-increasing")
    unit = raw.get("conventions", {}).get("angle_unit", "two_pi")
    for ci, cls in enumerate(raw["classes"]):
        d = cls["d"]
        if d > n:
            out.append(f"classes[{ci}].d: must be at most n={n} (n+1 blocks is the identity)")
            continue
        turns = [_to_turns(a["p"], a["q"], unit) % 1 for a in cls["angles"]]
        if len(turns) != n + 1 - d:
            out.append(f"classes[{ci}].angles: expected {n + 1 - d} angles for d={d}, got {len(turns)}")
        for ai, t in enumerate(turns):
            if t == 0:
                out.append(f"classes[{ci}].angles[{ai}]: angle is zero modulo a full turn")
        if len(set(turns)) != len(turns):
            out.append(f"classes[{ci}].angles: angles must be distinct")
    if "plancherel" in raw and len(raw["plancherel"]) != n + 1:
        out.append(f"plancherel: expected {n + 1} coefficient lists, got {len(raw['plancherel'])}")
    return out


def _rational(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(obj["num"], obj["den"])
    return Fraction(obj) if isinstance(obj, int) else obj


def parse_config_dict(raw) -> RunConfig:
    violations = _schema_violations(raw)
    if not violations:
        violations = _semantic_violations(raw)
    if violations:
        raise ConfigError(violations)
    unit = raw.get("conventions", {}).get("angle_unit", "two_pi")
    classes = tuple(
        EllipticClass(
            d=cls["d"],
            angles=tuple(_to_turns(a["p"], a["q"], unit) for a in cls["angles"]),
            weight=Fraction(cls["weight"]["num"], cls["weight"]["den"]),
        )
        for cls in raw["classes"]
    )
    volume = _rational(raw["volume"]) if isinstance(raw["volume"], (dict, int)) else float(raw["volume"])
    plancherel = None
    if "plancherel" in raw:
        plancherel = tuple(tuple(_rational(c) for c in row) for row in raw["plancherel"])
    return RunConfig(
        n=raw["n"],
        tau=tuple(raw["tau"]),
        volume=volume,
        classes=classes,
        plancherel=plancherel,
    )


def parse_config(path: str | Path) -> RunConfig:
    """Load and validate a JSON run configuration."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError([f"<file>: {exc}"]) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"<json>: {exc}"]) from exc
    return parse_config_dict(raw)


def canonical_dict(rc: RunConfig) -> dict:
    """Canonical JSON form; parsing it reproduces an identical RunConfig."""
    out: dict = {
        "n": rc.n,
        "tau": list(rc.tau),
        "volume": (
            {"num": rc.volume.numerator, "den": rc.volume.denominator}
            if isinstance(rc.volume, Fraction)
            else rc.volume
        ),
        "classes": [
            {
                "d": cls.d,
                "angles": [{"p": a.numerator, "q": a.denominator} for a in cls.angles],
                "weight": {"num": cls.weight.numerator, "den": cls.weight.denominator},
            }
            for cls in rc.classes
        ],
        "conventions": {"angle_unit": "two_pi"},
    }
    if rc.plancherel is not None:
        out["plancherel"] = [
            [{"num": c.numerator, "den": c.denominator} for c in row] for row in rc.plancherel
        ]
    return out


def emit_canonical(rc: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(canonical_dict(rc), indent=2) + "\n", encoding="utf-8")
