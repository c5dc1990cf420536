import json
import pathlib

import jsonschema
import pytest

import etacoh

DOCS = pathlib.Path(__file__).resolve().parents[2] / "docs"


def test_quaternion_closed_form():
    v = etacoh.eta_quaternion(0, "2-tau")
    assert v["value"] == "7/8"
    assert v["order"] == 8
    assert abs(v["float"] - 0.875) < 1e-9


def test_lens_bundle():
    v = etacoh.eta_lens(8, [1, 1], "r0-r1", chern=[2, 0])
    assert v["value"] == "-7/8"
    assert v["modulus"] == "Z"


def test_order_and_cyclotomic():
    assert etacoh.order("3/8") == 8
    assert etacoh.order("1", "2Z") == 2
    assert etacoh.cyclotomic("1*z^4 @ n=8") == "-1*z^0 @ n=8"


def test_normal_form():
    assert etacoh.normal_form("lens:4", "X^4") == "0"
    assert etacoh.normal_form("lens:4", "T*T + X") == "X"


def test_verify_q8():
    claims = etacoh.verify(["q8"], q8_max=2)
    assert claims
    assert all(c["status"] == "pass" for c in claims)


def test_cli_json():
    code, out, err = etacoh.run_cli(["--format", "json", "order", "--value", "1/4"])
    assert code == 0 and err == ""
    assert json.loads(out)["order"] == "4"


def test_errors():
    with pytest.raises(etacoh.EtacohError, match="ParseError"):
        etacoh.cyclotomic("1*z^")
    with pytest.raises(ValueError):
        etacoh.order("1", "3Z")


def test_report_schema():
    code, out, _ = etacoh.run_cli(["verify", "--suite", "q8", "sd16-dim5-13", "--q8-max", "1", "--format", "json"])
    assert code == 0
    schema = json.loads((DOCS / "report.schema.json").read_text())
    jsonschema.validate(json.loads(out), schema)


def test_config_schema(tmp_path):
    config = {
        "degree_bound": 40,
        "algebras": [
            {
                "name": "rp3",
                "generators": [{"name": "x", "degree": 1}],
                "relations": ["x^4"],
                "poincare": {"dimension": 3, "top": "x^3"},
                "steenrod": [],
            }
        ],
        "homs": [{"name": "self", "source": "custom:rp3", "target": "custom:rp3", "images": {"x": "x"}}],
    }
    jsonschema.validate(config, json.loads((DOCS / "config.schema.json").read_text()))
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, out, err = etacoh.run_cli(["--config", str(path), "wu", "--steenrod", "custom:rp3"])
    assert code == 0, err
    assert "w1 = 0" in out
