"""Command line behaviours, exit codes, and output determinism.

Claims covered: every subcommand emits exactly one JSON object on
standard output, files appear only with --out, certificates re-evaluate
to the reported value, error paths exit 1, failed suites would exit 2,
and repeated seeded runs are byte-identical.
"""

import json
import math

import numpy as np
import pytest

from dirmetric import (
    FiniteDSpace,
    MapPair,
    DirectedMetricSpace,
    disjoint_union,
    distortion_relation,
    load_space,
    reverse,
    save_space,
    source_sink_interval,
)
from dirmetric.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_two_arm(tmp_path, k=2):
    s = source_sink_interval(k)
    p1 = tmp_path / "arms.json"
    p2 = tmp_path / "arms_rev.json"
    save_space(s, str(p1))
    save_space(reverse(s), str(p2))
    return str(p1), str(p2)


# ---------------------------------------------------------------------------
# gen


def test_gen_prints_space_without_out(capsys):
    code, out, err = run(capsys, "gen", "interval", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["labels"] == ["0", "0.5", "1"]
    assert "points=3 edges=2" in err


def test_gen_writes_file_with_out(capsys, tmp_path):
    path = tmp_path / "iv.json"
    code, out, _ = run(capsys, "gen", "interval", "--k", "4", "--out", str(path))
    assert code == 0
    rep = json.loads(out)
    assert rep["points"] == 5 and rep["out"] == str(path)
    assert load_space(str(path)).n == 5


def test_gen_open_book_reports_spine_distance(capsys):
    code, out, err = run(capsys, "gen", "open-book", "--n", "5", "--m", "2")
    assert code == 0
    assert "spine_distance=0.2" in err


def test_gen_rejects_bad_arguments(capsys):
    code, _, _ = run(capsys, "gen", "no-such-space")
    assert code == 1
    code, _, err = run(capsys, "gen", "sncf")
    assert code == 1 and "--points" in err
    code, _, _ = run(capsys, "gen", "square", "--steps", "1,0;oops")
    assert code == 1


# ---------------------------------------------------------------------------
# zigzag


def test_zigzag_files_round_trip(capsys, tmp_path):
    space_path = tmp_path / "iv.json"
    run(capsys, "gen", "interval", "--k", "2", "--out", str(space_path))
    out_path = tmp_path / "zz.csv"
    code, out, _ = run(capsys, "zigzag", str(space_path), "--out", str(out_path))
    assert code == 0
    rep = json.loads(out)
    zz_lines = (tmp_path / "zz.csv").read_text().splitlines()
    assert zz_lines[1].split(",")[2] == "1.0"
    reach_lines = (tmp_path / "zz.reach.csv").read_text().splitlines()
    assert reach_lines[1] == "1,1,1"
    assert reach_lines[3] == "0,0,1"
    assert rep["points"] == 3


def test_zigzag_stdout_marks_disconnected_pairs(capsys, tmp_path):
    two = FiniteDSpace(base=[[0.0, 1.0], [1.0, 0.0]], edges=((0, 1, 1.0),))
    path = tmp_path / "union.json"
    save_space(disjoint_union(two, two), str(path))
    code, out, _ = run(capsys, "zigzag", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["zigzag"][0][2] == "inf"
    assert doc["reachability"][0][2] == 0


def test_zigzag_missing_file_exits_one(capsys, tmp_path):
    code, _, err = run(capsys, "zigzag", str(tmp_path / "nope.json"))
    assert code == 1 and "error" in err


def test_zigzag_malformed_file_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "zigzag", str(path))
    assert code == 1 and "line 1" in err


# ---------------------------------------------------------------------------
# dist


def test_dist_gh_self_is_zero_exact(capsys, tmp_path):
    fx, _ = write_two_arm(tmp_path)
    code, out, _ = run(capsys, "dist", "gh", fx, fx)
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == 0.0 and rep["exact"] is True
    assert rep["certificate_check"] is True
    assert rep["certificate"]["pairs"]


def test_dist_cdis_two_arm_reversal_is_infinite(capsys, tmp_path):
    fx, fy = write_two_arm(tmp_path)
    code, out, _ = run(capsys, "dist", "cdis", fx, fy)
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == "inf" and rep["exact"] is True
    assert rep["method"] == "propagation"


def test_dist_dis_two_arm_reversal_certificate_reevaluates(capsys, tmp_path):
    fx, fy = write_two_arm(tmp_path)
    code, out, _ = run(capsys, "dist", "dis", fx, fy)
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == pytest.approx(0.5)
    assert rep["certificate_check"] is True
    X = DirectedMetricSpace.from_space(load_space(fx))
    Y = DirectedMetricSpace.from_space(load_space(fy))
    pair = MapPair(
        forward=tuple(rep["certificate"]["forward"]),
        backward=tuple(rep["certificate"]["backward"]),
    )
    assert 0.5 * pair.objective(X.zz, Y.zz) == pytest.approx(rep["value"], abs=1e-9)


def test_dist_gh_certificate_reevaluates_from_file(capsys, tmp_path):
    fx, fy = write_two_arm(tmp_path)
    code, out, _ = run(capsys, "dist", "gh", fx, fy)
    rep = json.loads(out)
    X = DirectedMetricSpace.from_space(load_space(fx))
    Y = DirectedMetricSpace.from_space(load_space(fy))
    pairs = [tuple(p) for p in rep["certificate"]["pairs"]]
    assert 0.5 * distortion_relation(pairs, X.zz, Y.zz) == pytest.approx(rep["value"], abs=1e-9)


def test_dist_hausdorff_subsets_by_label_and_index(capsys, tmp_path):
    fx, _ = write_two_arm(tmp_path, k=2)
    subs = tmp_path / "subs.json"
    subs.write_text(json.dumps({"a": [0], "b": ["1"]}))
    code, out, _ = run(capsys, "dist", "hausdorff", fx, str(subs))
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == pytest.approx(2.0)
    bad = tmp_path / "bad_subs.json"
    bad.write_text(json.dumps({"a": [0]}))
    code, _, _ = run(capsys, "dist", "hausdorff", fx, str(bad))
    assert code == 1


def test_dist_runs_are_byte_identical(capsys, tmp_path):
    fx, fy = write_two_arm(tmp_path, k=3)
    _, out1, _ = run(capsys, "dist", "dis", fx, fy, "--seed", "5")
    _, out2, _ = run(capsys, "dist", "dis", fx, fy, "--seed", "5")
    assert out1 == out2


# ---------------------------------------------------------------------------
# ball


def test_ball_torus_csv_and_svg(capsys, tmp_path):
    space_path = tmp_path / "torus.json"
    run(capsys, "gen", "torus", "--k", "4", "--out", str(space_path))
    out_path = tmp_path / "ball.csv"
    code, out, _ = run(
        capsys, "ball", str(space_path), "--center", "(0.5,0.5)", "--radius", "0.25",
        "--out", str(out_path),
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == len(rep["members"])
    lines = out_path.read_text().splitlines()
    assert lines[0] == "point,member"
    assert len(lines) == 17
    svg = (tmp_path / "ball.svg").read_text()
    assert svg.startswith("<svg") and "#d62728" in svg and "#1f77b4" in svg


def test_ball_radius_zero_is_just_the_center(capsys, tmp_path):
    space_path = tmp_path / "torus.json"
    run(capsys, "gen", "torus", "--k", "4", "--out", str(space_path))
    code, out, _ = run(capsys, "ball", str(space_path), "--center", "0", "--radius", "0")
    rep = json.loads(out)
    assert rep["members"] == ["(0,0)"]
    assert "svg" not in rep


def test_ball_non_embeddable_skips_svg(capsys, tmp_path):
    fx, _ = write_two_arm(tmp_path)
    out_path = tmp_path / "arms.csv"
    code, out, err = run(capsys, "ball", fx, "--center", "0", "--radius", "1", "--out", str(out_path))
    assert code == 0
    assert "SVG skipped" in err
    assert out_path.exists() and not (tmp_path / "arms.svg").exists()


def test_ball_unknown_center_exits_one(capsys, tmp_path):
    fx, _ = write_two_arm(tmp_path)
    code, _, err = run(capsys, "ball", fx, "--center", "nowhere", "--radius", "1")
    assert code == 1 and "nowhere" in err


# ---------------------------------------------------------------------------
# verify


def test_verify_distances_seed7_twice_byte_identical(capsys):
    code1, out1, err1 = run(capsys, "verify", "distances", "--seed", "7")
    code2, out2, _ = run(capsys, "verify", "distances", "--seed", "7")
    assert code1 == 0 and code2 == 0
    assert out1 == out2
    assert json.loads(out1)["passed"] is True
    assert "chain_inequalities" in err1


def test_verify_writes_report_with_out(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "core", "--out", str(path))
    assert code == 0
    assert path.read_text() == out


def test_verify_rejects_unknown_suite(capsys):
    code, _, _ = run(capsys, "verify", "everything")
    assert code == 1


def test_usage_error_maps_to_exit_one(capsys):
    assert main(["dist"]) == 1
    assert main([]) == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
