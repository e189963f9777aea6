"""Acceptance gate: the package's headline guarantees, end to end.

One test per guarantee.  Each test prints a single pass/fail line (visible
with -s, and echoed in the failure report otherwise); stated tolerances and
runtime budgets are asserted in the test body, not relaxed.
"""

import json
import time

from dirmetric.cli import main
from dirmetric.distances import DEFAULT_BUDGET
from dirmetric.verify import (
    check_chain_inequalities,
    check_disometry_detection,
    check_gh_oracle_equivalence,
    check_grid_oracle_convergence,
    check_open_book,
    check_reversal_gh_zero,
    check_reversal_invariance,
    check_source_sink,
    check_square_identity,
    check_torus_balls,
    check_zigzag_dominates_base,
    check_zigzag_metric_axioms,
)

SEED = 0


def _timed(check, *, seed=SEED, **kwargs):
    t0 = time.perf_counter()
    passed, details = check(seed, DEFAULT_BUDGET, **kwargs)
    return passed, details, time.perf_counter() - t0


def _line(name, ok):
    print(f"[acceptance] {name}: {'pass' if ok else 'FAIL'}")


def test_zigzag_axioms_on_random_ensemble():
    # 50 random directed graphs, n <= 40: zero diagonal, symmetry,
    # extended triangle inequality, symmetric finiteness; under 10 s.
    passed, details, secs = _timed(check_zigzag_metric_axioms)
    ok = passed and secs < 10.0
    _line("zigzag extended-metric axioms", ok)
    assert passed, details
    assert secs < 10.0, f"took {secs:.2f}s"


def test_zigzag_dominates_base_entrywise():
    passed, details, _ = _timed(check_zigzag_dominates_base)
    _line("zigzag >= base entrywise", passed)
    assert passed, details


def test_reversal_leaves_zigzag_and_gh_unchanged():
    # zz(reverse s) equals zz(s) entrywise and gh(s, reverse s) is 0 exactly.
    p1, d1, _ = _timed(check_reversal_invariance)
    p2, d2, _ = _timed(check_reversal_gh_zero)
    _line("reversal invariance", p1 and p2)
    assert p1, d1
    assert p2, d2


def test_distance_chain_on_random_pairs():
    # 30 random pairs with |X|, |Y| <= 3, all values exhaustive:
    # gh <= dis <= cdis and base-gh <= zigzag-gh on every pair; under 60 s.
    passed, details, secs = _timed(check_chain_inequalities, strict_base=True)
    ok = passed and secs < 60.0
    _line("distance inequality chain", ok)
    assert passed, details
    assert secs < 60.0, f"took {secs:.2f}s"


def test_two_arm_interval_distances():
    # k = 8 arms: dis within 2/k of 1/2, cdis infinite exactly;
    # k = 2: gh exactly 0.
    passed, details, _ = _timed(check_source_sink)
    _line("two-arm interval distances", passed)
    assert passed, details


def test_square_grid_identity_distortion():
    # k = 64 one-way square: identity distortion and codistortion equal
    # 2 - sqrt(2) within 0.03; half of that certifies the distance
    # between the base and zigzag forms within 0.015.
    passed, details, _ = _timed(check_square_identity)
    _line("square identity distortion 2 - sqrt(2)", passed)
    assert passed, details


def test_torus_ball_inclusions():
    # k = 32 torus, radii {0.15, 0.3, 0.45}, 4x4 centers:
    # base ball at r/sqrt(2) inside zigzag ball at r inside base ball at r,
    # with a one-cell boundary band; under 30 s.
    passed, details, secs = _timed(check_torus_balls)
    ok = passed and secs < 30.0
    _line("torus ball inclusions", ok)
    assert passed, details
    assert secs < 30.0, f"took {secs:.2f}s"


def test_open_book_spine_distance_vanishes():
    # n sheets glued along a spine: zz(a, b) = 1/n within 1e-9 for
    # n = 1..10, strictly decreasing.
    passed, details, _ = _timed(check_open_book)
    _line("open book spine distance 1/n", passed)
    assert passed, details


def test_relabeling_gives_distortion_zero_with_certificate():
    # 20 relabeled copies: dis = 0 with a mutually inverse certified pair;
    # 20 length-perturbed copies (>= 0.1): dis >= 0.05.
    passed, details, _ = _timed(check_disometry_detection)
    _line("relabeling detection", passed)
    assert passed, details


def test_search_agrees_with_independent_oracles():
    # Exhaustive gh equals naive correspondence enumeration to 1e-9 on
    # |X| * |Y| <= 9; grid routes track the closed-form planar oracle with
    # error strictly decreasing over k in {32, 64, 128}.
    p1, d1, _ = _timed(check_gh_oracle_equivalence)
    p2, d2, _ = _timed(check_grid_oracle_convergence)
    _line("independent oracle agreement", p1 and p2)
    assert p1, d1
    assert p2, d2


def test_verify_cli_is_byte_deterministic(capsys):
    code1 = main(["verify", "--seed", "7"])
    out1 = capsys.readouterr().out
    code2 = main(["verify", "--seed", "7"])
    out2 = capsys.readouterr().out
    ok = code1 == 0 and code2 == 0 and out1 == out2
    _line("verify CLI byte-identical across runs", ok)
    assert code1 == 0 and code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["passed"] is True and report["seed"] == 7
