from __future__ import annotations

import json
import subprocess
import sys

import yaml

from quotlab.cli import EXIT_FAIL, EXIT_OK, EXIT_PARSE, main
from quotlab.scenarios import CORPUS_DIR

GOOD = """\
name: cli-demo
base: {kind: prime_field, p: 5}
algebra: {variables: [t], truncation: 6}
action: {kind: constant, group: {cyclic: 2}, images: {g: {t: "-t"}}}
tasks:
  - op: norm
    params: {element: t}
    expect: {norm: "-t^2"}
    provenance: derived
"""


def write(tmp_path, text, name="s.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_passing_scenario(tmp_path, capsys):
    assert main(["run", write(tmp_path, GOOD), "--no-timing"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "scenario cli-demo: pass"
    assert "norm = -t^2" in out


def test_run_failing_scenario(tmp_path, capsys):
    assert main(["run", write(tmp_path, GOOD.replace('"-t^2"', '"t^2"'))]) == EXIT_FAIL
    assert "check expect.norm failed" in capsys.readouterr().out


def test_parse_error_exit_code_and_location(tmp_path, capsys):
    path = write(tmp_path, GOOD.replace("op: norm", "op: nrom"))
    assert main(["run", path]) == EXIT_PARSE
    err = capsys.readouterr().err
    assert f"{path}:6:9:" in err


def test_tree_format_is_json(tmp_path, capsys):
    assert main(["run", write(tmp_path, GOOD), "--format", "tree", "--no-timing"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == 1
    assert doc["tasks"][0]["artifacts"]["norm"] == "-t^2"


def test_show_artifact(capsys):
    assert main(["show", "node-swap-z4", "node.u", "--no-timing"]) == EXIT_OK
    assert yaml.safe_load(capsys.readouterr().out) == "-x^2"


def test_show_algebra(capsys):
    assert main(["show", "z2-sign-f5", "algebra"]) == EXIT_OK
    assert "variables" in yaml.safe_load(capsys.readouterr().out)


def test_show_unknown_artifact(capsys):
    assert main(["show", "z2-sign-f5", "nothing.here"]) == EXIT_FAIL


def test_corpus_list_by_tag(capsys):
    assert main(["corpus", "--list", "--tag", "appendix"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines and all(line.endswith("[appendix]") for line in lines)


def test_corpus_tag_run(capsys):
    assert main(["corpus", "--tag", "remark-2-4", "--no-timing"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "schema: 1"
    assert out[-1] == "total 2: pass 2, fail 0, gated 0"


def test_module_entry_point():
    path = str(CORPUS_DIR / "z2-sign-f5.yaml")
    proc = subprocess.run([sys.executable, "-m", "quotlab", "run", path, "--no-timing"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("scenario z2-sign-f5: pass")
