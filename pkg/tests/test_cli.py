"""CLI subcommands, exit codes, and error mapping."""

import json

from patchwork.cli import main
from patchwork.patchfile import emit_patch, patch_from_state

from conftest import CONIC_TRIANGLES


def write_conic(tmp_path, name="conic.patch"):
    text = (
        "polygon:\n0 0\n2 0\n0 2\n"
        "triangles:\n"
        + "".join(" ".join(f"{x} {y}" for (x, y) in t) + "\n" for t in CONIC_TRIANGLES)
        + "twists:\n"
    )
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_check_ok(tmp_path, capsys):
    assert main(["check", write_conic(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "6 points" in out and "genus 0" in out


def test_check_invalid_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.patch"
    path.write_text("polygon:\n0 0\n2 0\n0 2\ntriangles:\n0 0 2 0 0 2\ntwists:\n")
    assert main(["check", str(path)]) == 1
    assert "NotUnimodular" in capsys.readouterr().err


def test_classify_output(tmp_path, capsys, deg14_block):
    tri, curve, twists, _ = deg14_block
    path = tmp_path / "deg14.patch"
    path.write_text(emit_patch(patch_from_state(tri, twists, curve)))
    assert main(["classify", str(path)]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "g=78 rank=2 components=77 dividing M-2 bipartite K_{1,7}"


def test_classify_json(tmp_path, capsys):
    assert main(["classify", write_conic(tmp_path), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["components"] == rep["g"] - rep["rank"] + 1 == 1


def test_ovals_full_deg14(tmp_path, capsys, deg14_full):
    cfg = deg14_full
    path = tmp_path / "r14.patch"
    path.write_text(emit_patch(patch_from_state(cfg.tri, cfg.twists, cfg.curve)))
    assert main(["ovals", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "p=68 n=7"


def test_ovals_refuses_pseudoline(tmp_path, capsys):
    from conftest import staircase_triangles
    text = ("polygon:\n0 0\n3 0\n0 3\ntriangles:\n"
            + "".join(" ".join(f"{x} {y}" for (x, y) in t) + "\n"
                      for t in staircase_triangles(3))
            + "twists:\n")
    path = tmp_path / "cubic.patch"
    path.write_text(text)
    assert main(["ovals", str(path)]) == 1


def test_ragsdale_single(tmp_path, capsys):
    out_path = tmp_path / "it10.patch"
    assert main(["ragsdale", "--k", "5", "--single", "0,1",
                 "--out", str(out_path), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["predicted_even_ovals"] == 32 == rep["geometric_even_ovals"]
    assert out_path.exists()
    assert main(["classify", str(out_path)]) == 0


def test_ragsdale_full_k5(capsys):
    assert main(["ragsdale", "--k", "5", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["geometric_even_ovals"] == 32


def test_render_writes_svg(tmp_path, capsys):
    src = write_conic(tmp_path)
    out = tmp_path / "conic.svg"
    assert main(["render", src, "--view", "realpart", "--out", str(out)]) == 0
    assert out.read_text().startswith("<?xml")


def test_inadmissible_twists_patch(tmp_path, capsys):
    from conftest import staircase_triangles
    text = ("polygon:\n0 0\n4 0\n0 4\ntriangles:\n"
            + "".join(" ".join(f"{x} {y}" for (x, y) in t) + "\n"
                      for t in staircase_triangles(4))
            + "twists:\n1 1 2 1\n")
    path = tmp_path / "bad_twist.patch"
    path.write_text(text)
    assert main(["check", str(path)]) == 1
    assert "Inadmissible" in capsys.readouterr().err


def test_usage_error_exit_code():
    import pytest
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
