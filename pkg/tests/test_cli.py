import dataclasses
import json
import subprocess
import sys

import pytest

from planegerms.cli import EXIT_INPUT, EXIT_OK, EXIT_OOS, main, run_table
from planegerms.jets import PlaneGermJet
from planegerms.normal_forms import NORMAL_FORMS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def inline(obj):
    return ("--inline", json.dumps(obj))


# -- classify -------------------------------------------------------------------------------------

def test_classify_labels_exit_zero(capsys):
    code, out, _ = run(capsys, "classify", *inline({"f": ["x", "x*y+y^5"], "order": 7}))
    assert code == EXIT_OK and json.loads(out)["label"] == "7"


def test_classify_order_defaults_when_missing(capsys):
    code, out, _ = run(capsys, "classify", *inline({"f": ["x", "x*y+y^4"]}))
    assert code == EXIT_OK and json.loads(out)["label"] == "5"


def test_classify_structured_jets(capsys):
    data = PlaneGermJet.parse("x", "y^3-x^2*y", 6).to_json()
    code, out, _ = run(capsys, "classify", *inline(data))
    assert code == EXIT_OK and json.loads(out)["label"] == "4_2-"


def test_corank_two_exit_two(capsys):
    code, out, _ = run(capsys, "classify", *inline({"f": ["x^2", "y^2"], "order": 6}))
    d = json.loads(out)
    assert code == EXIT_OOS and d["label"] == "OutOfScope" and d["reason"] == "corank2"


def test_short_order_exit_one_with_needed(capsys):
    code, out, _ = run(capsys, "classify", "--order", "5", *inline({"f": ["x", "x*y+y^7"], "order": 9}))
    d = json.loads(out)
    assert code == EXIT_INPUT and d["needed_order"] == 6


def test_order_above_input_refused(capsys):
    code, _, _ = run(capsys, "classify", "--order", "9", *inline({"f": ["x", "x*y+y^4"], "order": 6}))
    assert code == EXIT_INPUT


@pytest.mark.parametrize("text", ["{not json", "[1, 2", '{"f": ["x"], "order": 4}', '{"f": ["x", "y^"], "order": 4}'])
def test_malformed_input_exit_one(capsys, text):
    code, _, _ = run(capsys, "classify", "--inline", text)
    assert code == EXIT_INPUT


def test_missing_input_exit_one(capsys):
    code, _, err = run(capsys, "classify")
    assert code == EXIT_INPUT and "error" in err


def test_input_file(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"f": ["x", "x*y^2+y^4+y^5"], "order": 7}), encoding="utf-8")
    code, out, _ = run(capsys, "classify", "--input", str(p))
    assert code == EXIT_OK and json.loads(out)["label"] == "11_5"


def test_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--format", "text", *inline({"f": ["x", "x*y+y^5+y^6"], "order": 8}))
    assert code == EXIT_OK
    assert out.startswith("label: 6") and "a07 - 5/8 a06^2" in out


# -- batches -------------------------------------------------------------------------------------

BATCH = [{"f": ["x", f2], "order": 9} for f2 in ("y^2", "x*y+y^3", "x*y+y^4", "x*y+y^6+y^8", "x^2*y+y^4+y^5", "y^3+x^3*y")]


def test_batch_is_ordered_and_deterministic(capsys):
    _, one, _ = run(capsys, "classify", "--jobs", "1", *inline(BATCH))
    _, two, _ = run(capsys, "classify", "--jobs", "2", *inline(BATCH))
    assert one == two
    assert [d["label"] for d in json.loads(one)] == ["2", "3", "5", "8+", "16+", "4_3"]


def test_batch_exit_code_precedence(capsys):
    mixed = BATCH[:2] + [{"f": ["x^2", "y^2"], "order": 4}]
    assert run(capsys, "classify", *inline(mixed))[0] == EXIT_OOS
    mixed.append({"f": ["x", "x*y+y^9"], "order": 5})
    assert run(capsys, "classify", *inline(mixed))[0] == EXIT_INPUT


def test_classification_json_round_trip(capsys):
    _, out, _ = run(capsys, "classify", *inline(BATCH))
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data


# -- normalize -----------------------------------------------------------------------------------

def test_normalize_reports_change(capsys):
    code, out, _ = run(capsys, "normalize", *inline({"f": ["x", "2*x*y+y^5"], "order": 6}))
    d = json.loads(out)
    assert code == EXIT_OK and d["class"] == "II_5"
    assert PlaneGermJet.from_json(d["germ"]) == PlaneGermJet.parse("x", "x*y+y^5", 6)


def test_normalize_stable_and_out_of_scope(capsys):
    code, out, _ = run(capsys, "normalize", *inline({"f": ["x", "x*y+y^3"], "order": 4}))
    assert code == EXIT_OK and json.loads(out)["label"] == "3"
    code, out, _ = run(capsys, "normalize", *inline({"f": ["x", "x*y"], "order": 8}))
    assert code == EXIT_OOS


# -- project and scan ------------------------------------------------------------------------------

def test_project_central_with_row(capsys):
    data = {"monge": {"expr": "x*y+x^5", "order": 7}, "viewpoint": {"a": "1/3"}, "row": "6"}
    code, out, _ = run(capsys, "project", *inline(data))
    d = json.loads(out)
    assert code == EXIT_OK and d["classification"]["label"].startswith("6")
    assert d["constraints"]["satisfied"] is True


def test_project_parallel(capsys):
    code, out, _ = run(capsys, "project", *inline({"monge": {"expr": "x*y+x^3", "order": 6}, "direction": [1, 0]}))
    assert code == EXIT_OK and json.loads(out)["classification"]["label"] == "3"


def test_project_out_of_scope(capsys):
    code, _, _ = run(capsys, "project", *inline({"monge": {"expr": "x*y", "order": 8}}))
    assert code == EXIT_OOS


def test_project_tangent_plane_viewpoint(capsys):
    code, out, _ = run(capsys, "project", *inline({"monge": {"expr": "x*y", "order": 4}, "viewpoint": {"a": "1"}}))
    assert code == EXIT_INPUT and "error" in json.loads(out)


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", *inline({"monge": {"expr": "x*y+x^5+x^6", "order": 7}}))
    d = json.loads(out)
    assert code == EXIT_OK and d["numerator_in_u"] == [-3, -2, 5]
    assert [r["a_interval"] for r in d["roots"]] == [["0", "0"], ["8/5", "8/5"]]


def test_scan_text(capsys):
    code, out, _ = run(capsys, "scan", "--format", "text", *inline({"monge": {"expr": "x*y+x^5+x^6", "order": 7}}))
    assert code == EXIT_OK and "a = 8/5" in out


def test_scan_without_quantity_exit_two(capsys):
    code, _, _ = run(capsys, "scan", *inline({"monge": {"expr": "x*y+x^3", "order": 6}}))
    assert code == EXIT_OOS


# -- table and fixtures ---------------------------------------------------------------------------

def test_table(capsys):
    code, out, _ = run(capsys, "table", "--format", "text")
    assert code == EXIT_OK
    assert out.strip().endswith(f"{len(NORMAL_FORMS)}/{len(NORMAL_FORMS)} normal forms classified to their own labels")


def test_table_catches_a_wrong_form():
    nf = NORMAL_FORMS[5]
    broken = [dataclasses.replace(nf, label="7" if nf.label != "7" else "8+")]
    code, rows = run_table(forms=broken)
    assert code == EXIT_INPUT and rows[0]["pass"] is False


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == EXIT_OK and all(r["ok"] for r in json.loads(out))


def test_bad_arguments_exit_two_from_argparse():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "planegerms", "classify", "--inline", '{"f": ["x", "x^2*y+y^4+y^5"], "order": 5}'],
        capture_output=True, text=True, timeout=120,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["label"] == "16+"
