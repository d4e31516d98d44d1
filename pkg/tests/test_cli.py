import json
import re
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from cuspvol import caser, cli
from cuspvol.cli import EXIT_CERT, EXIT_OK, EXIT_USAGE, UsageError, main, parse_angle


def schema(name):
    text = resources.files("cuspvol").joinpath("schemas", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, name, *argv):
    code, out, err = run(capsys, name, *argv, "--json")
    assert code == EXIT_OK, err
    data = json.loads(out)
    jsonschema.validate(data, schema(name))
    return data


# ---------------------------------------------------------------- angles


@pytest.mark.parametrize(
    "text, value",
    [("pi", 3.141592653589793), ("pi/3", 1.0471975511965976), ("2*pi/3", 2.0943951023931953),
     ("π/4", 0.7853981633974483), ("-pi/6", -0.5235987755982988), ("0.25", 0.25), ("0", 0.0)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("bad", ["pi/0", "tau", "inf", "nan", ""])
def test_parse_angle_rejects(bad):
    with pytest.raises(UsageError):
        parse_angle(bad)


# ---------------------------------------------------------------- lob


def test_lob_text(capsys):
    code, out, _ = run(capsys, "lob", "pi/3")
    assert code == EXIT_OK
    assert out.startswith("0.338313868803")
    assert run(capsys, "lob", "0")[1] == "0.000000000000\n"
    assert run(capsys, "lob", "pi/4")[1].startswith("0.457982797")


def test_lob_json(capsys):
    data = run_json(capsys, "lob", "pi/3", "--tol", "1e-9")
    assert data["value"] == pytest.approx(0.338314, abs=1e-6)
    assert data["est_error"] <= 1e-9


def test_lob_usage_errors(capsys):
    code, out, err = run(capsys, "lob", "tau")
    assert code == EXIT_USAGE and "cannot parse" in err and out == ""
    with pytest.raises(SystemExit) as exc:
        main(["lob"])
    assert exc.value.code == EXIT_USAGE


# ---------------------------------------------------------------- volume


@pytest.mark.parametrize("sym, expected", [("[5,3,6]", "0.171502"), ("[(3^3,6)]", "0.364107"), ("[3,3,6]", "0.042289")])
def test_volume_catalog(capsys, sym, expected):
    code, out, _ = run(capsys, "volume", sym)
    assert code == EXIT_OK and expected in out


def test_volume_ortho(capsys):
    code, out, _ = run(capsys, "volume", "--ortho", "pi/3", "pi/3")
    assert code == EXIT_OK and "0.042289" in out
    data = run_json(capsys, "volume", "--ortho", "pi/7", "pi/3", "--truncated")
    assert data["truncated"] is True and data["volume"] > 0.317811


def test_volume_json(capsys):
    data = run_json(capsys, "volume", "[5,3,6]")
    assert data["arithmetic"] == "NON_ARITHMETIC" and data["cusps"] == 1


@pytest.mark.parametrize(
    "argv",
    [["volume"], ["volume", "[7,3,6]"], ["volume", "--ortho", "pi/3", "pi/3", "--truncated"], ["volume", "--ortho", "x", "1"]],
)
def test_volume_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


# ---------------------------------------------------------------- gram, cusps, arithmetic


def test_gram(capsys):
    code, out, _ = run(capsys, "gram", "[3,3,6]")
    assert code == EXIT_OK and "(3, 0, 1)" in out
    data = run_json(capsys, "gram", "[5,3,6]")
    assert data["inertia"] == [3, 0, 1]


def test_cusps(capsys):
    assert run(capsys, "cusps", "[(3^3,6)]")[1] == "2\n"
    data = run_json(capsys, "cusps", "[5,3,6]")
    assert data["cusps"] == 1 and data["vertices"].count("IDEAL") == 1


def test_arithmetic(capsys):
    code, out, _ = run(capsys, "arithmetic", "[5,3,6]")
    assert code == EXIT_OK and out.startswith("NON_ARITHMETIC") and "weight 5" in out
    assert run(capsys, "arithmetic", "[3,4,4]")[1] == "ARITHMETIC\n"
    out = run(capsys, "arithmetic", "[(3^3,6)]")[1]
    assert "NON_ARITHMETIC" in out and "√3" in out
    data = run_json(capsys, "arithmetic", "[(3^3,6)]")
    assert data["offending_cycle"]["product"] == "√3"


@pytest.mark.parametrize("cmd", ["gram", "cusps", "arithmetic"])
def test_symbol_usage_errors(capsys, cmd):
    code, _, err = run(capsys, cmd, "[5,3,")
    assert code == EXIT_USAGE and "position" in err


# ---------------------------------------------------------------- scenario


def test_scenario(capsys):
    data = run_json(capsys, "scenario", caser.MINIMUM_ROW)
    assert data["verdict"] == "REALIZED_BY" and data["realized_by"] == "[5,3,6]"
    listing = run_json(capsys, "scenario", "--list")
    assert caser.MINIMUM_ROW in listing["scenarios"]
    code, out, _ = run(capsys, "scenario", "1w-coincide-a3")
    assert code == EXIT_OK and "EXCLUDED_VOLUME" in out
    assert run(capsys, "scenario", "no-such-row")[0] == EXIT_USAGE


# ---------------------------------------------------------------- certify


def test_certify_default(capsys):
    code, out, _ = run(capsys, "certify")
    assert code == EXIT_OK
    assert "minimum 0.171502 at two-1d-tangent-aligned/[5,3,6]" in out
    assert out.rstrip().endswith("certified")


def test_certify_json(capsys):
    data = run_json(capsys, "certify")
    assert data["ok"] and data["argmin"] == caser.MINIMUM_ROW
    assert [i["name"] for i in data["identities"]] == ["A", "B"]


def test_certify_only_244(capsys):
    data = run_json(capsys, "certify", "--only", "2,4,4")
    assert data["ok"]
    assert all(r["verdict"] != "REALIZED_BY" for r in data["rows"])
    assert run(capsys, "certify", "--only", "2,2,2")[0] == EXIT_USAGE


def test_certify_failure_exit(capsys, monkeypatch):
    registry = caser.scenario_registry()
    bad = [s for s in registry if s.id != caser.MINIMUM_ROW]
    monkeypatch.setattr(caser, "scenario_registry", lambda: bad)
    code, out, err = run(capsys, "certify")
    assert code == EXIT_CERT
    assert "certification failed" in out and "failing rows" in err


def test_certify_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "certify", "--json", "--out", str(target))
    assert code == EXIT_OK and out == ""
    jsonschema.validate(json.loads(target.read_text(encoding="utf-8")), schema("certify"))


def test_certify_json_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"c{i}.json"
        subprocess.run([sys.executable, "-m", "cuspvol.cli", "certify", "--json", "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


# ---------------------------------------------------------------- render


def circles(svg):
    return re.findall(r'<circle cx="([-\d.]+)" cy="([-\d.]+)" r="([\d.]+)" fill="([^"]+)"', svg)


def test_render_unit_configuration(capsys):
    code, svg, _ = run(capsys, "render", "--cusp-type", "2,3,6", "--d", "1", "--depth", "0")
    assert code == EXIT_OK and svg.startswith("<svg ")
    full = [c for c in circles(svg) if c[3] == "#dde6f5"]
    assert full and all(c[2] == "80.000000" for c in full)
    # d = 1: neighbouring full-sized disks touch, centres 160 px apart
    pts = sorted((float(x), float(y)) for x, y, *_ in full)
    gaps = {round(((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) ** 0.5, 3) for a in pts for b in pts if a < b}
    assert min(gaps) == pytest.approx(160.0, abs=1e-3)


def test_render_row7_has_aligned_chain(capsys):
    code, svg, _ = run(capsys, "render", caser.MINIMUM_ROW)
    assert code == EXIT_OK
    small = [c for c in circles(svg) if c[3] == "#f5e0c8"]
    d = 2 * 0.8090169943749475
    # (1/d)-balls have diameter 1/d², radius 80/d² px
    assert small and all(float(c[2]) == pytest.approx(80 / d**2, abs=1e-5) for c in small)


def test_render_row9_has_central_ball(capsys):
    svg = run(capsys, "render", "1w-coincide-a3")[1]
    assert any(c[3] == "#c8f0d0" for c in circles(svg))


def test_render_json_and_determinism(capsys):
    a = run_json(capsys, "render", caser.MINIMUM_ROW)
    b = run_json(capsys, "render", caser.MINIMUM_ROW)
    assert a == b
    assert run(capsys, "render", "--cusp-type", "2,4,4", "--d", "1.3", "--placement", "a2")[1] == run(
        capsys, "render", "--cusp-type", "2,4,4", "--d", "1.3", "--placement", "a2"
    )[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["render"],
        ["render", "no-such-row"],
        ["render", "--cusp-type", "2,3,6", "--d", "0.5"],
        ["render", "--cusp-type", "2,3,6", "--d", "1", "--depth", "9"],
        ["render", "--cusp-type", "2,3,6", "--d", "1", "--placement", "a4"],
        ["render", "multi-cusp/mu3-6"],
    ],
)
def test_render_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "cuspvol.cli", "lob", "pi/3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("0.3383")
    res = subprocess.run([sys.executable, "-m", "cuspvol.cli", "bogus"], capture_output=True, text=True)
    assert res.returncode == EXIT_USAGE


def test_every_command_has_a_schema():
    sub = next(a for a in cli.build_parser()._actions if a.dest == "command")
    for name in sub.choices:
        s = schema(name)
        jsonschema.Draft202012Validator.check_schema(s)
        assert s.get("type") == "object" or "oneOf" in s
