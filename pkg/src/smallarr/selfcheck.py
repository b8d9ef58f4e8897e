"""Replay the bundled fixtures and report one pass/fail line per item."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .arrangement import (
    Arrangement,
    direct_sum_components,
    is_small,
    load_arrangement,
    project_from_point,
    small_char_sample,
    verify_linearly_joined,
)
from .chordal import SimpleGraph, froberg_check
from .ideals import degree_piece, equations_for_ordered_arrangement, verify_generation


def load_fixture(name: str) -> dict:
    """Decoded JSON of a bundled fixture, e.g. ``load_fixture("example05")``."""
    ref = resources.files("smallarr") / "fixtures" / f"{name}.json"
    return json.loads(ref.read_text())


def fixture_arrangement(name: str) -> Arrangement:
    return load_arrangement(load_fixture(name))


@dataclass
class ItemResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _example05():
    arr = fixture_arrangement("example05")
    rep = is_small(arr)
    fwd = verify_linearly_joined(arr, [0, 1, 2, 3])
    rev = verify_linearly_joined(arr, [3, 2, 1, 0])
    ok = (rep.small and rep.chi_w_min == 5 and rep.span_rank == 5 and fwd.ok
          and not rev.ok and rev.first_failure == 2)
    return ok, (f"small={rep.small} chi_w_min={rep.chi_w_min} span_rank={rep.span_rank} "
                f"forward_ok={fwd.ok} reverse_first_failure={rev.first_failure}")


def _example05_sub():
    full = fixture_arrangement("example05")
    arr = fixture_arrangement("example05_sub")
    rep = is_small(arr)
    sample = small_char_sample(arr, 2, trials=20, seed=0)
    l0 = full.components[0].basis
    hit = [v for v in sample.violations if v.source == "builtin" and v.plane == l0 and v.count == 3]
    ok = not rep.small and rep.chi_w_min == 6 and rep.span_rank == 5 and bool(hit)
    return ok, (f"small={rep.small} chi_w_min={rep.chi_w_min} span_rank={rep.span_rank} "
                f"builtin_3_points_on_L0={bool(hit)}")


def _example05_variant():
    # L3 moved to pass through a different point of L0
    doc = load_fixture("example05")
    doc["subspaces"][3]["basis"] = [[1, 2, 0, 0, 0], [0, 0, 0, 0, 1]]
    rep = is_small(load_arrangement(doc))
    return rep.small, f"small={rep.small} chi_w_min={rep.chi_w_min}"


def _example05_equations():
    arr = fixture_arrangement("example05")
    gens = equations_for_ordered_arrangement(arr, [0, 1, 2, 3])
    gr = verify_generation(arr, gens)
    return gr.ok and gens.mu_predicted == 6, f"mu={gens.mu_predicted} checks_ok={gr.ok}"


def _example05_projection():
    arr = fixture_arrangement("example05")
    proj = project_from_point(arr, 1, [0, 0, 1, 0, 0])
    rep = is_small(proj)
    return rep.small and len(proj) == 3, f"components={len(proj)} small={rep.small}"


def _path3():
    arr = fixture_arrangement("path3")
    rep = is_small(arr)
    gens = equations_for_ordered_arrangement(arr, list(rep.ordering.sequence))
    gr = verify_generation(arr, gens)
    r2, _ = degree_piece(arr, 2)
    r3, _ = degree_piece(arr, 3)
    ok = rep.small and gens.mu_predicted == 3 and r2 == 3 and r3 == 10 and gr.ok
    return ok, f"mu={gens.mu_predicted} degree2_rank={r2} degree3_rank={r3} checks_ok={gr.ok}"


def _triangle():
    rep = is_small(fixture_arrangement("triangle"))
    ok = not rep.small and rep.chi_w_min == 4 and rep.span_rank == 3
    return ok, f"small={rep.small} chi_w_min={rep.chi_w_min} span_rank={rep.span_rank}"


def _c4():
    rep = is_small(fixture_arrangement("c4"))
    fr = froberg_check(SimpleGraph.from_json(load_fixture("c4_graph")))
    ok = (not rep.small and rep.chi_w_min == 5 and rep.span_rank == 4
          and fr.consistent and not fr.chordal and not fr.small)
    return ok, (f"small={rep.small} chi_w_min={rep.chi_w_min} froberg_consistent={fr.consistent} "
                f"chordal={fr.chordal}")


def _skew():
    arr = fixture_arrangement("skew")
    rep = is_small(arr)
    parts, direct = direct_sum_components(arr)
    ok = rep.small and direct and len(parts) == 2
    return ok, f"small={rep.small} parts={parts} direct_sum={direct}"


def _froberg5():
    bad = []
    total = 0
    for n in range(1, 6):
        for mask in range(1 << (n * (n - 1) // 2)):
            total += 1
            if not froberg_check(SimpleGraph.from_mask(n, mask)).consistent:
                bad.append((n, mask))
    return not bad, f"graphs={total} inconsistent={len(bad)}"


ITEMS: dict[str, Callable[[], tuple[bool, str]]] = {
    "example05": _example05,
    "example05-sub": _example05_sub,
    "example05-variant": _example05_variant,
    "example05-equations": _example05_equations,
    "example05-projection": _example05_projection,
    "path3": _path3,
    "triangle": _triangle,
    "c4": _c4,
    "skew": _skew,
    "froberg5": _froberg5,
}


def selfcheck(name_filter: str | None = None) -> list[ItemResult]:
    """Run every item whose name contains ``name_filter``.

    An exception inside an item counts as a failure of that item.
    """
    out = []
    for name, fn in ITEMS.items():
        if name_filter and name_filter not in name:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # reported, not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(ItemResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out
