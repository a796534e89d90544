import json
import os
import subprocess
import sys

import pytest

from atas import cli, docio
from atas.model import Signal


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "atas.cli", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


def test_signal_grammar_round_trip():
    s = docio.parse_signal("55(-y->+x)")
    assert s == Signal("55", "-y", "+x")
    assert docio.format_signal(s) == "55(-y->+x)"
    assert docio.parse_signal("4(0->-x)") == Signal("4", "0", "-x")


@pytest.mark.parametrize("bad", ["55", "55(q->+x)", "55(+x->0)", "-5(0->+x)"])
def test_signal_grammar_rejects_malformed(bad):
    with pytest.raises(ValueError):
        docio.parse_signal(bad)


def test_tileset_round_trip(system):
    doc = docio.tileset_to_doc(system)
    back = docio.tileset_from_doc(json.loads(json.dumps(doc)))
    assert back.theta == system.theta
    assert {t.content_key for t in back.tiles} == {
        t.content_key for t in system.tiles
    }


def test_tileset_rejects_bad_documents(system):
    doc = docio.tileset_to_doc(system)
    doc["theta"] = 0
    with pytest.raises(ValueError, match="theta"):
        docio.tileset_from_doc(doc)


def test_assembly_round_trip(system):
    cells = {(0, 0): system.tiles[0], (1, 0): system.tiles[1]}
    doc = docio.assembly_to_doc(cells, name="pair")
    back = docio.assembly_from_doc(json.loads(json.dumps(doc)))
    assert {p: t.content_key for p, t in back.items()} == {
        p: t.content_key for p, t in cells.items()
    }


def test_render_ascii_and_svg(system):
    cells = {(0, 0): system.tiles[0], (0, 1): system.tiles[1]}
    text = docio.render_ascii(cells)
    assert system.tiles[0].name in text and system.tiles[1].name in text
    svg = docio.render_svg(cells)
    assert svg.startswith("<svg") and "</svg>" in svg


def test_cli_validate_accepts_builtin_export(tmp_path, system):
    path = tmp_path / "tiles.json"
    docio.dump_json(docio.tileset_to_doc(system), str(path))
    proc = run_cli("validate", str(path))
    assert proc.returncode == cli.EXIT_OK, proc.stderr


def test_cli_validate_rejects_broken_tileset(tmp_path, system):
    doc = docio.tileset_to_doc(system)
    doc["tiles"][0]["activation"] = ["55(0->+x)"]  # initiation in activation set
    path = tmp_path / "broken.json"
    docio.dump_json(doc, str(path))
    proc = run_cli("validate", str(path))
    assert proc.returncode == cli.EXIT_VALIDATION


def test_cli_run_writes_outputs(tmp_path):
    out = tmp_path / "run"
    proc = run_cli(
        "run", "--builtin", "lshape", "--theta", "2", "--stages", "2",
        "--out", str(out),
    )
    assert proc.returncode == cli.EXIT_OK, proc.stderr
    summary = json.load(open(out / "summary.json"))
    assert summary["stage_counts"] == [112, 28, 4]


def test_cli_run_budget_exit_code(tmp_path):
    proc = run_cli(
        "run", "--builtin", "lshape", "--theta", "2", "--stages", "42",
        env={"ATAS_BUDGET_SECS": "0"},
    )
    assert proc.returncode == cli.EXIT_BUDGET


def test_cli_run_seed_mode_trajectory():
    proc = run_cli(
        "run", "--builtin", "lshape", "--theta", "2", "--stages", "0",
        "--seed-mode", "trajectory",
    )
    assert proc.returncode == cli.EXIT_OK
    assert "stage 0: 28" in proc.stdout


def test_cli_render_and_classify(tmp_path, system):
    cells = {(0, 0): system.tiles[0]}
    path = tmp_path / "a.json"
    docio.dump_json(docio.assembly_to_doc(cells, name="one"), str(path))
    proc = run_cli("render", str(path), "--ascii")
    assert proc.returncode == cli.EXIT_OK
    svg_out = tmp_path / "a.svg"
    proc = run_cli("render", str(path), "--svg", "--out", str(svg_out))
    assert proc.returncode == cli.EXIT_OK and svg_out.exists()
    trace = tmp_path / "trace"
    proc = run_cli("classify", str(path), "--trace", str(trace))
    assert proc.returncode == cli.EXIT_OK
    verdict = json.load(open(trace / "classification.json"))
    assert verdict["verdict"] == "seed"


def test_cli_verify_levels(tmp_path):
    report = tmp_path / "report.json"
    proc = run_cli("verify", "lshape", "--level", "1", "--out", str(report))
    assert proc.returncode == cli.EXIT_OK, proc.stdout + proc.stderr
    doc = json.load(open(report))
    assert all(entry["ok"] for entry in doc["regions"])
