"""One PASS/FAIL line per acceptance criterion, shown in the terminal summary.

Everything is exact, so the only tolerances are wall-clock limits, pinned
below.  Where a stated expectation does not hold, the line says FAIL with the
observed facts, and the offending sub-check is kept as a strict xfail.
"""
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from gentile.angles import AngleSpec, splitting_candidates, vertex_signatures
from gentile.constructions import (
    SplitParams,
    corner_split,
    equilateral,
    kaiser_5gentiling,
    rational_master,
    rep3_306090,
    rhombus_flip,
    scalene_acute,
    sierpinski_2reptiling,
    snover_reptiling,
    trivial_gentiling,
    trivial_reptiling,
)
from gentile.curves import (
    BUILTINS,
    CurveRule,
    builtin_curve,
    check_continuity,
    check_face_continuity,
    check_measure,
    evaluate,
    polyline,
    sierpinski,
)
from gentile.dual import build_dual, conforming_hamiltonian_path, hamiltonian_path, two_level
from gentile.enumeration import enumerate_reptilings
from gentile.exact import P
from gentile.io import load_rule, load_tiling, save_rule, save_tiling
from gentile.tiling import (
    build_graph,
    check_euler,
    detect_caps_fans,
    is_trivial_tiling,
    tile_set,
    validate_gentiling,
    validate_reptiling,
)

LIMIT_EULER_S = 10.0
LIMIT_SPLIT_S = 60.0
LIMIT_CANDIDATES_S = 1.0
LIMIT_ENUM_S = 60.0
LIMIT_CURVES_S = 30.0
LIMIT_DUAL_S = 30.0

T13 = (F(2, 13), F(5, 13), F(6, 13))
T15 = (F(2, 15), F(6, 15), F(7, 15))


def record(log, n, ok, detail):
    log[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(log[n])


def fans(t, g=None):
    return [(c["vertex"], c["k"]) for c in detect_caps_fans(t, g) if c["kind"] == "fan"]


def test_criterion_01_euler(acceptance_log):
    t0 = time.perf_counter()
    corpus = [trivial_reptiling(scalene_acute(), n) for n in range(2, 7)]
    corpus += [trivial_gentiling(scalene_acute(), r) for r in (4, 6, 7, 8, 9)]
    corpus += [rhombus_flip(rational_master(3, 2), 3, 2, 5), rhombus_flip(rational_master(2, 1), 2, 1, 3)]
    corpus += [snover_reptiling(1, 2), snover_reptiling(2, 3), rep3_306090(), kaiser_5gentiling()]
    corpus.append(corner_split(SplitParams(4, 6, 5), refine=True))
    bad = [i for i, t in enumerate(corpus) if not check_euler(build_graph(t), t.r)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < LIMIT_EULER_S
    record(acceptance_log, 1, ok, f"{len(corpus)} tilings, failures {bad}, {elapsed:.1f} s (limit {LIMIT_EULER_S:.0f} s)")
    assert ok


def test_criterion_02_corner_split(acceptance_log):
    t0 = time.perf_counter()
    small = corner_split(SplitParams(4, 6, 5), refine=True)
    big = corner_split(SplitParams(9, 15, 16), refine=True)
    small_ok = small.r == 169 and validate_reptiling(small).ok and fans(small) == [(1, 2)]
    big_ok = big.r == 1156 and validate_reptiling(big).ok and fans(big) == [(1, 2)]
    elapsed = time.perf_counter() - t0
    ok = small_ok and big_ok and elapsed < LIMIT_SPLIT_S
    record(
        acceptance_log,
        2,
        ok,
        f"(4,6,5) -> {small.r} tiles, (9,15,16) -> {big.r} tiles, fan(2) at one corner, {elapsed:.1f} s (limit {LIMIT_SPLIT_S:.0f} s)",
    )
    assert ok


def test_criterion_03_non_trivial(acceptance_log):
    t = rhombus_flip(rational_master(3, 2), 3, 2, 5)
    valid = validate_reptiling(t).ok
    trivial = is_trivial_tiling(t)
    hanging = build_graph(t).hanging
    ok = valid and not trivial and hanging >= 1
    record(acceptance_log, 3, ok, f"rhombus flip (3,2,5): valid={valid}, trivial={trivial}, hanging vertices={hanging}")
    assert ok


def test_criterion_04_candidates(acceptance_log):
    t0 = time.perf_counter()
    k3 = splitting_candidates(3)
    rest = {k: splitting_candidates(k) for k in range(4, 13)}
    elapsed = time.perf_counter() - t0
    ok = k3 == [T13, T15] and not any(rest.values()) and elapsed < LIMIT_CANDIDATES_S
    record(acceptance_log, 4, ok, f"k=3 gives {len(k3)} triples, k=4..12 give none, {elapsed:.3f} s (limit {LIMIT_CANDIDATES_S:.0f} s)")
    assert ok


def test_criterion_05_signatures(acceptance_log):
    s13 = {tuple(s[:3]) for s in vertex_signatures(AngleSpec.of(*T13), "full")}
    s15 = {tuple(s[:3]) for s in vertex_signatures(AngleSpec.of(*T15), "full")}
    ok = {(1, 0, 4), (0, 4, 1)} <= s13 and {(1, 0, 4), (0, 5, 0)} <= s15
    record(acceptance_log, 5, ok, f"13-triple {len(s13)} signatures, 15-triple {len(s15)} signatures, required ones present")
    assert ok


def test_criterion_06_enumeration(acceptance_log):
    t0 = time.perf_counter()
    scal = enumerate_reptilings(scalene_acute(), 2)
    only_trivial = (
        scal.exhaustive
        and len(scal.tilings) == 1
        and tile_set(scal.tilings[0]) == tile_set(trivial_reptiling(scalene_acute(), 2))
    )
    ratio = enumerate_reptilings(rational_master(2, 1), 3)
    nontrivial = sum(1 for t in ratio.tilings if not is_trivial_tiling(t))
    elapsed = time.perf_counter() - t0
    ok = only_trivial and nontrivial >= 1 and elapsed < LIMIT_ENUM_S
    record(
        acceptance_log,
        6,
        ok,
        f"scalene n=2: {len(scal.tilings)} tiling, exhaustive={scal.exhaustive}; 2:1 master n=3: {nontrivial} non-trivial; {elapsed:.1f} s (limit {LIMIT_ENUM_S:.0f} s)",
    )
    assert ok


def _swapped_sierpinski():
    s = sierpinski()
    return CurveRule(s.master, list(reversed(s.children)))


def test_criterion_07_curves(acceptance_log):
    t0 = time.perf_counter()
    verdicts = {}
    for name in sorted(BUILTINS):
        rule = builtin_curve(name)
        depth = 8 if name == "sierpinski" else 5
        verdicts[name] = check_continuity(rule).ok and check_measure(rule) and check_face_continuity(rule, depth).ok
    swapped = check_continuity(_swapped_sierpinski())
    control_fails_at_1 = not swapped.ok and 1 in swapped.failing
    elapsed = time.perf_counter() - t0
    builtins_ok = all(verdicts.values()) and elapsed < LIMIT_CURVES_S
    detail = f"built-ins {verdicts}, {elapsed:.1f} s (limit {LIMIT_CURVES_S:.0f} s)"
    if not control_fails_at_1:
        detail += "; swapped Sierpinski negative control does not fail: entry/exit re-solve to (2,0)/(0,0) and the junction (1,1) matches"
    record(acceptance_log, 7, builtins_ok and control_fails_at_1, detail)
    assert builtins_ok


@pytest.mark.xfail(
    strict=True,
    reason="swapping the two Sierpinski children only reverses the curve; the re-solved rule is continuous",
)
def test_criterion_07_swapped_negative_control():
    report = check_continuity(_swapped_sierpinski())
    assert not report.ok and 1 in report.failing


def test_criterion_08_dual(acceptance_log):
    t0 = time.perf_counter()
    star = hamiltonian_path(build_dual(trivial_reptiling(equilateral(), 2)))
    star_ok = not star.found and star.exhaustive
    grid = hamiltonian_path(build_dual(trivial_reptiling(scalene_acute(), 3)))
    eq = trivial_reptiling(equilateral(), 2)
    eq_conf = conforming_hamiltonian_path(two_level(eq, eq))
    sier = conforming_hamiltonian_path(two_level(sierpinski_2reptiling(), sierpinski_2reptiling()))
    rep3 = conforming_hamiltonian_path(two_level(rep3_306090(), rep3_306090()))
    elapsed = time.perf_counter() - t0
    attainable = star_ok and not eq_conf.found and eq_conf.exhaustive and sier.found and rep3.found
    attainable = attainable and elapsed < LIMIT_DUAL_S
    detail = (
        f"eq n=2 no path (exhaustive={star.exhaustive}); eq 2x2 conforming none (exhaustive={eq_conf.exhaustive}); "
        f"sierpinski 2x2 found={sier.found}; rep3 3x3 found={rep3.found}; {elapsed:.1f} s (limit {LIMIT_DUAL_S:.0f} s)"
    )
    if not grid.found:
        detail += (
            f"; trivial n=3 has no Hamiltonian path (exhaustive={grid.exhaustive}): "
            "its three corner tiles each have a single dual neighbour"
        )
    record(acceptance_log, 8, attainable and grid.found, detail)
    assert attainable


@pytest.mark.xfail(
    strict=True,
    reason="the trivial 9-tile dual has three degree-1 corner tiles, so no Hamiltonian path exists",
)
def test_criterion_08_trivial_n3_path():
    assert hamiltonian_path(build_dual(trivial_reptiling(scalene_acute(), 3))).found


def test_criterion_09_evaluate(acceptance_log):
    s = sierpinski()
    values = [evaluate(s, t, d)[1] for t, d in ((0, 4), (F(1, 2), 4), (F(1, 4), 4))]
    line = polyline(s, 2, unique=True)
    ok = values == [P(0, 0), P(1, 1), P(1, 0)] and line == [P(0, 0), P(1, 0), P(1, 1), P(2, 0)]
    record(acceptance_log, 9, ok, f"f(0), f(1/2), f(1/4) = {values}; depth-2 junctions {line}")
    assert ok


def _render_in_subprocess(dest):
    cmd = [sys.executable, "-m", "gentile.cli", "render", "--curve", "kaiser5", "--depth", "3", "--glyphs", "--out", str(dest)]
    subprocess.run(cmd, check=True, capture_output=True)
    return dest.read_bytes()


def test_criterion_10_round_trip(acceptance_log, tmp_path):
    same = []
    for i, t in enumerate([kaiser_5gentiling(), corner_split(SplitParams(4, 6, 5), refine=True)]):
        a, b = tmp_path / f"t{i}a.json", tmp_path / f"t{i}b.json"
        save_tiling(t, a)
        save_tiling(load_tiling(a), b)
        same.append(a.read_bytes() == b.read_bytes())
    for name in sorted(BUILTINS):
        a, b = tmp_path / f"{name}a.json", tmp_path / f"{name}b.json"
        save_rule(builtin_curve(name), a)
        save_rule(load_rule(a), b)
        same.append(a.read_bytes() == b.read_bytes())
    svg_same = _render_in_subprocess(tmp_path / "one.svg") == _render_in_subprocess(tmp_path / "two.svg")
    ok = all(same) and svg_same
    record(acceptance_log, 10, ok, f"{sum(same)}/{len(same)} files byte-identical after reload; SVG identical across two processes: {svg_same}")
    assert ok
