"""Command-line driver: scenario files in, CSV/JSON artifacts out.

Three subcommands cover the package's experiments: ``field`` evaluates a
single source's pressure/velocity on the planar grid, ``reproduce`` solves
loudspeaker weights for both matching methods and writes the desired and
synthesized fields, ``sweep`` runs the error/conditioning analysis across a
frequency range. Identical scenario files produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib as _toml
except ImportError:  # Python 3.10
    import tomli as _toml

from . import __version__
from .exceptions import ScenarioError, VelfieldError
from .field_eval import GridSpec, sample_plane, sample_plane_exact
from .metrics import sweep_errors
from .operators import MediumConstants, apply_operator, velocity_operators
from .reproduction import build_reproduction_system, reproduce_field, write_weights_csv
from .shbasis import SphericalPoint
from .sources import LoudspeakerArray, SourceSpec

__all__ = ["Scenario", "load_scenario", "cmd_field", "cmd_reproduce", "cmd_sweep", "main"]

DEFAULT_GRID_SPACING = 1.0 / 60.0  # reconstructs the reference evaluation grids
GRID_LAYOUT_NOTE = (
    "origin-centered square lattice, inclusive disk mask; "
    "reconstructed from published point counts"
)


@dataclass
class Scenario:
    """A parsed scenario file."""

    name: str
    medium: MediumConstants
    region_radius: float
    pressure_degree: int
    frequencies_hz: list[float]
    source: SourceSpec | None
    array: LoudspeakerArray | None
    grid_spacing: float
    inner_radius: float
    pinv_tolerance: float | None
    output_dir: str | None
    sha256: str

    @property
    def velocity_degree(self) -> int:
        return self.pressure_degree - 1


def _require(table: dict, key: str, context: str):
    if key not in table:
        raise ScenarioError(f"missing required field '{key}' in [{context}]")
    return table[key]


def _angle(table: dict, key: str, context: str, required: bool = True) -> float | None:
    """Read an angle given in radians (``key``) or degrees (``key_deg``)."""
    has_rad = key in table
    has_deg = f"{key}_deg" in table
    if has_rad and has_deg:
        raise ScenarioError(f"give either '{key}' or '{key}_deg' in [{context}], not both")
    if has_rad:
        return float(table[key])
    if has_deg:
        return float(np.deg2rad(table[f"{key}_deg"]))
    if required:
        raise ScenarioError(f"missing required field '{key}' (or '{key}_deg') in [{context}]")
    return None


def _parse_source(table: dict) -> SourceSpec:
    kind = _require(table, "kind", "source")
    if kind == "plane_wave":
        theta = _angle(table, "theta", "source")
        phi = _angle(table, "phi", "source")
        return SourceSpec.plane_wave(theta, phi)
    if kind == "point_source":
        radius = float(_require(table, "radius", "source"))
        theta = _angle(table, "theta", "source")
        phi = _angle(table, "phi", "source")
        return SourceSpec.point_source(radius, theta, phi)
    raise ScenarioError(f"unknown source kind {kind!r} in [source]")


def _parse_array(table: dict) -> LoudspeakerArray:
    if "positions" in table:
        positions = []
        for i, row in enumerate(table["positions"]):
            if len(row) != 3:
                raise ScenarioError(
                    f"array position {i} must be [radius, theta, phi], got {row!r}"
                )
            positions.append(SphericalPoint(float(row[0]), float(row[1]), float(row[2])))
        return LoudspeakerArray(tuple(positions))
    radius = float(_require(table, "radius", "array"))
    has_rad = "azimuths" in table
    has_deg = "azimuths_deg" in table
    if has_rad == has_deg:
        raise ScenarioError("give exactly one of 'azimuths' or 'azimuths_deg' in [array]")
    azimuths = (
        [float(a) for a in table["azimuths"]]
        if has_rad
        else [float(np.deg2rad(a)) for a in table["azimuths_deg"]]
    )
    colatitude = _angle(table, "colatitude", "array", required=False)
    if colatitude is None:
        colatitude = np.pi / 2
    return LoudspeakerArray.circle(radius, azimuths, theta=colatitude)


def _parse_frequencies(table: dict) -> list[float]:
    if "values" in table:
        values = [float(f) for f in table["values"]]
    elif {"start", "stop", "step"} <= table.keys():
        start, stop, step = (float(table[k]) for k in ("start", "stop", "step"))
        if step <= 0:
            raise ScenarioError("frequency step must be positive in [frequency]")
        count = int(np.floor((stop - start) / step + 0.5)) + 1
        values = [start + i * step for i in range(count) if start + i * step <= stop + 1e-9]
    else:
        raise ScenarioError(
            "[frequency] needs either 'values' or 'start'/'stop'/'step'"
        )
    if not values or any(f <= 0 for f in values):
        raise ScenarioError("frequencies must be a non-empty list of positive Hz values")
    return values


def load_scenario(path: str | Path) -> Scenario:
    """Parse and validate a scenario file."""
    path = Path(path)
    raw = path.read_bytes()
    try:
        data = _toml.loads(raw.decode("utf-8"))
    except _toml.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc

    region = data.get("region", {})
    truncation = data.get("truncation", {})
    medium_tbl = data.get("medium", {})
    medium = MediumConstants(
        density=float(medium_tbl.get("density", 1.2041)),
        sound_speed=float(medium_tbl.get("sound_speed", 343.0)),
    )
    pressure_degree = int(_require(truncation, "pressure_degree", "truncation"))
    if pressure_degree < 1:
        raise ScenarioError("'pressure_degree' in [truncation] must be >= 1")

    source = _parse_source(data["source"]) if "source" in data else None
    array = _parse_array(data["array"]) if "array" in data else None
    if "frequency" not in data:
        raise ScenarioError("missing required section [frequency]")

    grid_tbl = data.get("grid", {})
    metrics_tbl = data.get("metrics", {})
    solver_tbl = data.get("solver", {})
    output_tbl = data.get("output", {})

    return Scenario(
        name=path.stem,
        medium=medium,
        region_radius=float(_require(region, "radius", "region")),
        pressure_degree=pressure_degree,
        frequencies_hz=_parse_frequencies(data["frequency"]),
        source=source,
        array=array,
        grid_spacing=float(grid_tbl.get("spacing", DEFAULT_GRID_SPACING)),
        inner_radius=float(metrics_tbl.get("inner_radius", 0.15)),
        pinv_tolerance=(
            float(solver_tbl["pinv_tolerance"]) if "pinv_tolerance" in solver_tbl else None
        ),
        output_dir=output_tbl.get("directory"),
        sha256=hashlib.sha256(raw).hexdigest(),
    )


def _metadata_line(scenario: Scenario, kind: str, **extra) -> str:
    fields = {
        "velfield": __version__,
        "kind": kind,
        "scenario": scenario.name,
        "scenario_sha256": scenario.sha256,
    }
    fields.update(extra)
    return " ".join(f"{key}={value}" for key, value in fields.items())


def _freq_tag(frequency_hz: float) -> str:
    return f"{frequency_hz:g}".replace(".", "p")


def _write_meta_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_field(scenario: Scenario, out_dir: Path) -> list[Path]:
    """Evaluate a single source's field on the grid; one CSV per frequency."""
    if scenario.source is None:
        raise ScenarioError("the field command needs a [source] section")
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = GridSpec(scenario.grid_spacing, scenario.region_radius)
    ops = velocity_operators(scenario.pressure_degree, scenario.medium)
    written: list[Path] = []
    counts = None
    for f in scenario.frequencies_hz:
        k = 2.0 * np.pi * f / scenario.medium.sound_speed
        alpha = scenario.source.coefficients(k, scenario.pressure_degree)
        zetas = tuple(apply_operator(op, alpha) for op in ops)
        field = sample_plane(alpha, zetas, k, grid, region_radius=scenario.region_radius)
        counts = field.count
        csv_path = out_dir / f"field_{_freq_tag(f)}Hz.csv"
        field.write_csv(
            csv_path,
            _metadata_line(
                scenario,
                "field",
                frequency_hz=repr(f),
                pressure_degree=scenario.pressure_degree,
                velocity_degree=scenario.velocity_degree,
                spacing=repr(grid.spacing),
                mask_radius=repr(grid.mask_radius),
                points=field.count,
            ),
        )
        written.append(csv_path)
    meta = out_dir / "field_meta.json"
    _write_meta_json(
        meta,
        {
            "velfield": __version__,
            "scenario": scenario.name,
            "scenario_sha256": scenario.sha256,
            "pressure_degree": scenario.pressure_degree,
            "velocity_degree": scenario.velocity_degree,
            "grid_spacing_m": grid.spacing,
            "mask_radius_m": grid.mask_radius,
            "grid_points": counts,
            "grid_layout": GRID_LAYOUT_NOTE,
            "frequencies_hz": scenario.frequencies_hz,
            "files": [p.name for p in written],
        },
    )
    return written + [meta]


def cmd_reproduce(scenario: Scenario, out_dir: Path, rtol: float | None = None) -> list[Path]:
    """Solve weights for both methods and write desired/reproduced fields."""
    if scenario.source is None:
        raise ScenarioError("the reproduce command needs a [source] section")
    if scenario.array is None:
        raise ScenarioError("the reproduce command needs an [array] section")
    scenario.array.require_outside(scenario.region_radius)
    out_dir.mkdir(parents=True, exist_ok=True)
    if rtol is None:
        rtol = scenario.pinv_tolerance
    grid = GridSpec(scenario.grid_spacing, scenario.region_radius)
    weights_vm = []
    weights_pm = []
    written: list[Path] = []
    for f in scenario.frequencies_hz:
        system = build_reproduction_system(
            scenario.array,
            scenario.source,
            scenario.pressure_degree,
            f,
            scenario.medium,
            scenario.region_radius,
        )
        w_vm = system.solve_velocity_matching(rtol)
        w_pm = system.solve_pressure_matching(rtol)
        weights_vm.append(w_vm)
        weights_pm.append(w_pm)
        k = 2.0 * np.pi * f / scenario.medium.sound_speed
        tag = _freq_tag(f)
        grids = {
            f"desired_{tag}Hz.csv": sample_plane_exact(
                [scenario.source], k, grid, scenario.medium
            ),
            f"reproduced_vm_{tag}Hz.csv": reproduce_field(
                scenario.array, w_vm, k, grid, scenario.medium
            ),
            f"reproduced_pm_{tag}Hz.csv": reproduce_field(
                scenario.array, w_pm, k, grid, scenario.medium
            ),
        }
        for name, fgrid in grids.items():
            p = out_dir / name
            fgrid.write_csv(
                p,
                _metadata_line(
                    scenario,
                    "reproduce",
                    frequency_hz=repr(f),
                    pressure_degree=scenario.pressure_degree,
                    points=fgrid.count,
                ),
            )
            written.append(p)
    for name, wlist in (("weights_vm.csv", weights_vm), ("weights_pm.csv", weights_pm)):
        p = out_dir / name
        write_weights_csv(p, wlist, _metadata_line(scenario, "weights"))
        written.append(p)
    meta = out_dir / "reproduce_meta.json"
    _write_meta_json(
        meta,
        {
            "velfield": __version__,
            "scenario": scenario.name,
            "scenario_sha256": scenario.sha256,
            "pressure_degree": scenario.pressure_degree,
            "loudspeakers": scenario.array.count,
            "h_shape": [3 * scenario.pressure_degree**2, scenario.array.count],
            "g_shape": [(scenario.pressure_degree + 1) ** 2, scenario.array.count],
            "grid_spacing_m": grid.spacing,
            "grid_layout": GRID_LAYOUT_NOTE,
            "frequencies_hz": scenario.frequencies_hz,
            "files": [p.name for p in written],
        },
    )
    return written + [meta]


def cmd_sweep(
    scenario: Scenario, out_dir: Path, rtol: float | None = None, threads: int = 1
) -> list[Path]:
    """Run the conditioning/error sweep and write its CSV."""
    if scenario.source is None:
        raise ScenarioError("the sweep command needs a [source] section")
    if scenario.array is None:
        raise ScenarioError("the sweep command needs an [array] section")
    scenario.array.require_outside(scenario.region_radius)
    out_dir.mkdir(parents=True, exist_ok=True)
    if rtol is None:
        rtol = scenario.pinv_tolerance
    grid = GridSpec(scenario.grid_spacing, scenario.region_radius)
    sweep = sweep_errors(
        scenario.array,
        scenario.source,
        scenario.pressure_degree,
        scenario.frequencies_hz,
        scenario.medium,
        scenario.region_radius,
        grid,
        inner_radius=scenario.inner_radius,
        rtol=rtol,
        threads=threads,
    )
    csv_path = out_dir / "sweep.csv"
    sweep.write_csv(
        csv_path,
        _metadata_line(
            scenario,
            "sweep",
            pressure_degree=scenario.pressure_degree,
            outer_radius=repr(grid.mask_radius),
            inner_radius=repr(scenario.inner_radius),
        ),
    )
    meta = out_dir / "sweep_meta.json"
    _write_meta_json(
        meta,
        {
            "velfield": __version__,
            "scenario": scenario.name,
            "scenario_sha256": scenario.sha256,
            "pressure_degree": scenario.pressure_degree,
            "frequencies_hz": scenario.frequencies_hz,
            "outer_radius_m": grid.mask_radius,
            "inner_radius_m": scenario.inner_radius,
            "grid_layout": GRID_LAYOUT_NOTE,
            "files": [csv_path.name],
        },
    )
    return [csv_path, meta]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="velfield",
        description=(
            "Sound field velocity analysis and velocity-matched reproduction"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("field", "evaluate a source's pressure/velocity field on the planar grid"),
        ("reproduce", "solve loudspeaker weights and synthesize both methods' fields"),
        ("sweep", "frequency sweep of condition numbers and direction errors"),
    ):
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("--scenario", required=True, help="scenario TOML file")
        cmd.add_argument("--out", default=None, help="output directory")
        cmd.add_argument("--threads", type=int, default=1, help="worker threads")
        cmd.add_argument(
            "--tolerance", type=float, default=None,
            help="relative pseudoinverse tolerance override",
        )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
        out = args.out or scenario.output_dir
        if out is None:
            raise ScenarioError(
                "no output directory: pass --out or set [output] directory"
            )
        out_dir = Path(out)
        rtol = args.tolerance if args.tolerance is not None else scenario.pinv_tolerance
        if args.command == "field":
            written = cmd_field(scenario, out_dir)
        elif args.command == "reproduce":
            written = cmd_reproduce(scenario, out_dir, rtol)
        else:
            written = cmd_sweep(scenario, out_dir, rtol, threads=args.threads)
    except (VelfieldError, OSError) as exc:
        line = json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}, sort_keys=True
        )
        print(f"error: {line}", file=sys.stderr)
        return 2
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
