import json
from pathlib import Path

import numpy as np
import pytest

from velfield import ScenarioError
from velfield.cli import cmd_field, cmd_reproduce, cmd_sweep, load_scenario, main

SCENARIOS = Path(__file__).parent.parent / "scenarios"


def write_scenario(tmp_path: Path, body: str, name: str = "case.toml") -> Path:
    path = tmp_path / name
    path.write_text(body)
    return path


MINI_REPRO = """
[region]
radius = 0.5

[truncation]
pressure_degree = 4

[source]
kind = "plane_wave"
theta_deg = 90.0
phi_deg = 60.0

[array]
radius = 1.21
azimuths_deg = [0.0, 45.0, 135.0, 225.0, 315.0]

[frequency]
values = [1000.0]

[grid]
spacing = 0.05
"""


class TestScenarioParsing:
    def test_shipped_scenarios_parse(self):
        for name in ("fig2", "fig3", "fig5", "sweep"):
            scenario = load_scenario(SCENARIOS / f"{name}.toml")
            assert scenario.pressure_degree >= 1
            assert scenario.frequencies_hz
            assert len(scenario.sha256) == 64

    def test_fig2_values(self):
        scenario = load_scenario(SCENARIOS / "fig2.toml")
        assert scenario.region_radius == pytest.approx(0.2)
        assert scenario.pressure_degree == 10
        assert scenario.frequencies_hz == [2000.0]
        assert scenario.source.kind == "plane_wave"
        assert scenario.source.direction[0] == pytest.approx(np.pi / 2)
        assert scenario.source.direction[1] == pytest.approx(2 * np.pi / 3)

    def test_sweep_frequency_grid(self):
        scenario = load_scenario(SCENARIOS / "sweep.toml")
        freqs = scenario.frequencies_hz
        assert freqs[0] == 50.0 and freqs[-1] == 2000.0
        assert len(freqs) == 40
        steps = np.diff(freqs)
        assert np.allclose(steps, 50.0)

    def test_degrees_and_radians_agree(self, tmp_path):
        deg = write_scenario(tmp_path, MINI_REPRO, "deg.toml")
        rad = write_scenario(
            tmp_path,
            MINI_REPRO.replace("theta_deg = 90.0", "theta = 1.5707963267948966")
            .replace("phi_deg = 60.0", "phi = 1.0471975511965976"),
            "rad.toml",
        )
        s_deg = load_scenario(deg)
        s_rad = load_scenario(rad)
        assert s_deg.source.direction == pytest.approx(s_rad.source.direction)

    def test_missing_source_block_named(self, tmp_path):
        path = write_scenario(
            tmp_path, MINI_REPRO.replace('kind = "plane_wave"', "")
        )
        with pytest.raises(ScenarioError, match="kind"):
            load_scenario(path)

    def test_unparseable_file(self, tmp_path):
        path = write_scenario(tmp_path, "[region\nradius=")
        with pytest.raises(ScenarioError):
            load_scenario(path)

    def test_both_angle_forms_rejected(self, tmp_path):
        path = write_scenario(
            tmp_path, MINI_REPRO.replace("theta_deg = 90.0", "theta_deg = 90.0\ntheta = 1.5")
        )
        with pytest.raises(ScenarioError, match="theta"):
            load_scenario(path)


class TestFieldCommand:
    def test_fig2_outputs(self, tmp_path):
        scenario = load_scenario(SCENARIOS / "fig2.toml")
        written = cmd_field(scenario, tmp_path)
        csv_path = tmp_path / "field_2000Hz.csv"
        meta_path = tmp_path / "field_meta.json"
        assert csv_path in written and meta_path in written
        first = csv_path.read_text().splitlines()[0]
        assert first.startswith("# velfield=")
        assert f"scenario_sha256={scenario.sha256}" in first
        meta = json.loads(meta_path.read_text())
        assert meta["pressure_degree"] == 10
        assert meta["velocity_degree"] == 9
        assert meta["grid_points"] == 441  # lattice count for R=0.2, s=1/60
        data = np.loadtxt(csv_path, delimiter=",", skiprows=2)
        assert data.shape == (441, 11)

    def test_missing_source_rejected(self, tmp_path):
        # drop the whole [source] table
        body = "\n".join(
            line
            for line in MINI_REPRO.splitlines()
            if not (line.startswith(("kind", "theta_deg", "phi_deg")) or line == "[source]")
        )
        scenario = load_scenario(write_scenario(tmp_path, body))
        with pytest.raises(ScenarioError, match="source"):
            cmd_field(scenario, tmp_path / "out")

    def test_determinism(self, tmp_path):
        scenario = load_scenario(SCENARIOS / "fig3.toml")
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        cmd_field(scenario, out1)
        cmd_field(scenario, out2)
        assert (out1 / "field_2000Hz.csv").read_bytes() == (out2 / "field_2000Hz.csv").read_bytes()
        assert (out1 / "field_meta.json").read_bytes() == (out2 / "field_meta.json").read_bytes()


class TestReproduceCommand:
    def test_outputs_and_schema(self, tmp_path):
        scenario = load_scenario(write_scenario(tmp_path, MINI_REPRO))
        out = tmp_path / "out"
        cmd_reproduce(scenario, out)
        for name in (
            "weights_vm.csv",
            "weights_pm.csv",
            "desired_1000Hz.csv",
            "reproduced_vm_1000Hz.csv",
            "reproduced_pm_1000Hz.csv",
            "reproduce_meta.json",
        ):
            assert (out / name).exists(), name
        meta = json.loads((out / "reproduce_meta.json").read_text())
        assert meta["h_shape"] == [48, 5]
        assert meta["g_shape"] == [25, 5]
        weights = (out / "weights_vm.csv").read_text().splitlines()
        assert weights[1] == "frequency_hz,speaker_index,re_w,im_w"
        assert len(weights) == 2 + 5

    def test_speaker_inside_region_rejected(self, tmp_path):
        body = MINI_REPRO.replace("radius = 1.21", "radius = 0.4")
        scenario = load_scenario(write_scenario(tmp_path, body))
        from velfield import DomainError

        with pytest.raises(DomainError):
            cmd_reproduce(scenario, tmp_path / "out")

    def test_single_speaker_runs(self, tmp_path):
        body = MINI_REPRO.replace(
            "azimuths_deg = [0.0, 45.0, 135.0, 225.0, 315.0]", "azimuths_deg = [0.0]"
        )
        scenario = load_scenario(write_scenario(tmp_path, body))
        cmd_reproduce(scenario, tmp_path / "out")
        weights = (tmp_path / "out" / "weights_vm.csv").read_text().splitlines()
        assert len(weights) == 2 + 1


class TestSweepCommand:
    def test_schema_and_monotone_frequencies(self, tmp_path):
        body = MINI_REPRO.replace(
            "values = [1000.0]", "start = 200.0\nstop = 600.0\nstep = 200.0"
        )
        scenario = load_scenario(write_scenario(tmp_path, body))
        out = tmp_path / "out"
        cmd_sweep(scenario, out, threads=2)
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[1].startswith("frequency_hz,cond_H,cond_G")
        freqs = [float(line.split(",")[0]) for line in lines[2:]]
        assert freqs == sorted(freqs) == [200.0, 400.0, 600.0]
        for line in lines[2:]:
            parts = line.split(",")
            etas = [float(v) for v in parts[3:7]]
            assert all(0.0 <= e <= 1.0 for e in etas)
            assert float(parts[1]) >= 1.0 and float(parts[2]) >= 1.0


class TestMainEntry:
    def test_end_to_end_exit_codes(self, tmp_path, capsys):
        scenario_path = write_scenario(tmp_path, MINI_REPRO)
        code = main(
            ["reproduce", "--scenario", str(scenario_path), "--out", str(tmp_path / "out")]
        )
        assert code == 0
        captured = capsys.readouterr()
        assert "weights_vm.csv" in captured.out

    def test_error_line_is_machine_parsable(self, tmp_path, capsys):
        bad = write_scenario(tmp_path, "[region]\nradius = 0.5\n")
        code = main(["field", "--scenario", str(bad), "--out", str(tmp_path / "out")])
        assert code == 2
        err = capsys.readouterr().err.strip()
        assert err.startswith("error: ")
        payload = json.loads(err[len("error: "):])
        assert payload["error"] == "ScenarioError"

    def test_missing_out_dir_rejected(self, tmp_path, capsys):
        scenario_path = write_scenario(tmp_path, MINI_REPRO)
        code = main(["field", "--scenario", str(scenario_path)])
        assert code == 2
        assert "output" in capsys.readouterr().err
