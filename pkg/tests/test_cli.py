import csv
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from slagquad import io as sio
from slagquad.cli import UsageError, main, parse_complex

SVG_NS = "{http://www.w3.org/2000/svg}"


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    @pytest.mark.parametrize(
        "text,value",
        [("0.3+0.7i", 0.3 + 0.7j), ("1 - 2i", 1 - 2j), ("2", 2), ("-i", -1j), ("3.5i", 3.5j), ("1e-3+2j", 1e-3 + 2j)],
    )
    def test_complex(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "1+x", "abc", "nan", "1+infi", "1,5"])
    def test_complex_rejects(self, text):
        with pytest.raises(UsageError):
            parse_complex(text)


class TestPortrait:
    def test_sphere_svg_and_sidecar(self, tmp_path, capsys):
        out = tmp_path / "p4.svg"
        code, _, _ = run(["portrait", "--case", "sphere", "--n", "4", "--window", "-3,3,-3,3", "--grid", "200",
                          "--levels", "0,0.5", "--out", str(out)], capsys)
        assert code == 0
        root = ET.parse(out).getroot()
        assert root.get("version") == "1.1"
        groups = {g.get("id"): g for g in root.iter(f"{SVG_NS}g")}
        assert len(groups["asymptotes"]) == 6
        assert len(groups["singular"]) == 7  # segment and 6 branches
        assert len(groups["singular-points"]) == 2
        doc = sio.loads((tmp_path / "p4.json").read_text())
        kinds = [c["classification"] for c in doc["payload"]["curves"]]
        assert kinds.count("SingularBranch") == 6 and kinds.count("RealSegment") == 1
        assert all(c["drift"] < 1e-8 for c in doc["payload"]["curves"])

    def test_flat_level_zero_lines(self, tmp_path, capsys):
        out = tmp_path / "f3.json"
        assert run(["portrait", "--case", "flat", "--n", "3", "--levels", "0", "--grid", "100", "--out", str(out)],
                   capsys)[0] == 0
        curves = sio.loads(out.read_text())["payload"]["curves"]
        angles = sorted(math.atan2(c["points"][-1][1], c["points"][-1][0]) % (2 * math.pi) for c in curves)
        assert np.allclose(angles, np.arange(6) * math.pi / 3, atol=1e-9)

    def test_sphere_n2_horizontal(self, tmp_path, capsys):
        out = tmp_path / "s2.csv"
        assert run(["portrait", "--case", "sphere", "--n", "2", "--grid", "100", "--out", str(out)], capsys)[0] == 0
        rows = list(csv.DictReader(out.open()))
        by_curve = {}
        for r in rows:
            by_curve.setdefault(r["curve"], []).append(float(r["im"]))
        assert len(by_curve) == 9
        assert all(np.ptp(v) < 1e-9 for v in by_curve.values())

    def test_svg_deterministic(self, tmp_path, capsys):
        args = ["portrait", "--case", "sphere", "--n", "3", "--grid", "100", "--levels", "0,1"]
        run(args + ["--out", str(tmp_path / "a.svg")], capsys)
        run(args + ["--out", str(tmp_path / "b.svg")], capsys)
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_unwritable_path(self, capsys):
        code, _, err = run(["portrait", "--case", "flat", "--n", "2", "--levels", "0", "--grid", "32",
                            "--out", "/nonexistent/dir/x.svg"], capsys)
        assert code == 2 and "error" in err

    def test_bad_window(self, capsys):
        code, _, err = run(["portrait", "--case", "flat", "--n", "2", "--window", "1,0,0,1"], capsys)
        assert code == 2 and err


class TestTrace:
    def test_json_record(self, tmp_path, capsys):
        out = tmp_path / "t.json"
        assert run(["trace", "--case", "sphere", "--n", "5", "--start", "0.3+0.7i", "--stop-radius", "10",
                    "--out", str(out)], capsys)[0] == 0
        doc = json.loads(out.read_text())
        assert doc["schema_version"] == 1 and doc["case"] == "sphere" and doc["n"] == 5
        payload = doc["payload"]
        assert payload["drift"] < 1e-6
        assert payload["classification"] == "SmoothTwoEnded"
        assert len(payload["points"]) == len(payload["roots"])

    def test_sphere_n2_horizontal(self, capsys):
        code, out, _ = run(["trace", "--case", "sphere", "--n", "2", "--start", "0+0.5i", "--stop-radius", "10"], capsys)
        pts = np.array(json.loads(out)["payload"]["points"])
        assert code == 0 and np.max(np.abs(pts[:, 1] - 0.5)) < 1e-9

    def test_flat_csv(self, capsys):
        code, out, _ = run(["trace", "--case", "flat", "--n", "2", "--start", "1+1i", "--format", "csv",
                            "--stop-radius", "10"], capsys)
        rows = list(csv.reader(out.splitlines()))
        assert code == 0 and rows[0] == ["s", "re", "im", "level_residual"]
        data = np.array(rows[1:], dtype=float)
        assert np.max(np.abs(2 * data[:, 1] * data[:, 2] - 2)) < 1e-9
        assert np.max(np.abs(data[:, 3])) < 1e-9
        assert np.all(np.diff(data[:, 0]) > 0)

    def test_singular_start(self, capsys):
        code, _, err = run(["trace", "--case", "sphere", "--n", "4", "--start", "1"], capsys)
        assert code == 2 and "singular" in err

    def test_negative_start(self, capsys):
        code, out, _ = run(["trace", "--case", "sphere", "--n", "4", "--start", "-0.3-0.7i", "--stop-radius", "4"], capsys)
        assert code == 0 and json.loads(out)["payload"]["drift"] < 1e-6


class TestVerify:
    def test_lagrangian(self, capsys):
        code, out, err = run(["verify", "lagrangian", "--n", "3", "--samples", "1000", "--seed", "7"], capsys)
        assert code == 0 and "PASS" in err and json.loads(out)["payload"]["passed"]

    def test_calabi_yau(self, capsys):
        assert run(["verify", "calabi-yau", "--samples", "100", "--seed", "1"], capsys)[0] == 0

    def test_calabi_yau_negative_control(self, capsys):
        code, out, _ = run(["verify", "calabi-yau", "--samples", "20", "--potential", "flat"], capsys)
        assert code == 1 and not json.loads(out)["payload"]["passed"]

    def test_slag(self, capsys):
        assert run(["verify", "slag", "--n", "4", "--level", "0.5", "--seed", "2"], capsys)[0] == 0

    def test_unknown_verifier(self, capsys):
        assert run(["verify", "ricci"], capsys)[0] == 2

    def test_report_file_deterministic(self, tmp_path, capsys):
        for name in ("a", "b"):
            run(["verify", "lagrangian", "--n", "2", "--samples", "50", "--seed", "3", "--out", str(tmp_path / name)],
                capsys)
        assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


class TestImmerse:
    def test_roundtrip_and_membership(self, tmp_path, capsys):
        curve = tmp_path / "c.json"
        run(["trace", "--case", "flat", "--n", "2", "--start", "1+1i", "--stop-radius", "4", "--out", str(curve)], capsys)
        text = curve.read_text()
        doc = sio.loads(text)
        assert sio.dumps(doc["case"], doc["n"], doc["payload"]) == text
        out = tmp_path / "cloud.json"
        assert run(["immerse", "--curve", str(curve), "--sphere-samples", "16", "--out", str(out)], capsys)[0] == 0
        cloud = sio.loads(out.read_text())["payload"]
        assert len(cloud["points"]) == 16 * len(doc["payload"]["points"])
        assert len(cloud["points"][0]) == 6
        assert cloud["max_residual"] < 1e-10

    def test_real_segment_on_real_sphere(self, capsys):
        code, out, _ = run(["immerse", "--case", "sphere", "--n", "2", "--gamma", "-0.9,-0.3,0.2,0.8",
                            "--sphere-samples", "64"], capsys)
        pts = np.array(json.loads(out)["payload"]["points"])
        assert code == 0 and pts.shape == (256, 6)
        assert np.max(np.abs(pts[:, 1::2])) == 0
        assert np.allclose(np.sum(pts[:, 0::2] ** 2, axis=1), 1.0)

    @pytest.mark.parametrize("content", ["not json", '{"schema_version":1,"case":"flat","n":2,"payload":{}}',
                                         '{"schema_version":2}'])
    def test_malformed_curve(self, tmp_path, capsys, content):
        bad = tmp_path / "bad.json"
        bad.write_text(content)
        assert run(["immerse", "--curve", str(bad)], capsys)[0] == 2

    def test_missing_inputs(self, capsys):
        assert run(["immerse", "--case", "flat"], capsys)[0] == 2


class TestAsymptotes:
    def test_sphere_4(self, capsys):
        code, out, _ = run(["asymptotes", "--case", "sphere", "--n", "4", "--format", "json"], capsys)
        table = json.loads(out)["payload"]
        assert np.allclose(table["infinity"], np.arange(6) * math.pi / 3)
        expected = sorted((2 * k * math.pi / 4 + math.pi) % (2 * math.pi) for k in range(4))
        assert np.allclose(table["plus_one"], expected)

    def test_sphere_3(self, capsys):
        table = json.loads(run(["asymptotes", "--case", "sphere", "--n", "3", "--format", "json"], capsys)[1])["payload"]
        assert np.allclose(table["infinity"], math.pi / 4 + np.arange(4) * math.pi / 2)

    def test_sphere_2_note(self, capsys):
        code, out, _ = run(["asymptotes", "--case", "sphere", "--n", "2"], capsys)
        assert code == 0 and "plus_one: none" in out and "note:" in out


class TestMisc:
    def test_bad_log_level(self, monkeypatch, capsys):
        monkeypatch.setenv("SLAG_LOG", "loud")
        assert run(["asymptotes", "--case", "flat", "--n", "2"], capsys)[0] == 2

    def test_info_logging(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv("SLAG_LOG", "info")
        code, _, err = run(["asymptotes", "--case", "flat", "--n", "2", "--out", str(tmp_path / "a.txt")], capsys)
        assert code == 0

    def test_bad_n(self, capsys):
        assert run(["asymptotes", "--case", "flat", "--n", "1"], capsys)[0] == 2

    def test_help(self, capsys):
        assert run(["--help"], capsys)[0] == 0

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "slagquad", "asymptotes", "--case", "sphere", "--n", "3"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "infinity" in proc.stdout
