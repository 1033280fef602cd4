"""Acceptance criteria 1-11 at their stated tolerances.

Each test records one pass/fail line in ``RESULTS``; the lines are printed as
they are produced and again in the terminal summary.
"""

import time

import numpy as np
import pytest

from holgerbe.cech import (canonical_cocycle, connection_cochain, dd_details, dd_integer,
                           make_cycle, random_gauge)
from holgerbe.cover import build_su2_cover
from holgerbe.suites import (associativity_probe, direct_sum_probe, holomorphy_probe,
                             spectral_suite)
from holgerbe.two_gerbe import (AssociatorData, bundle_sections, chern_weil_c2, dd4_integer,
                                instanton_bundle, pentagon_verify, pullback_gerbe_data,
                                synthesize_class_cocycle, trivial_bundle)

RESULTS = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def spectral_cases():
    t0 = time.perf_counter()
    cases = spectral_suite(200, seed=0)
    return cases, time.perf_counter() - t0


def test_01_argument_principle(spectral_cases):
    cases, elapsed = spectral_cases
    wrong = sum(c["count"] != c["expected"] for c in cases)
    raw = max(c["raw_residual"] for c in cases)
    sizes = sorted({c["n"] for c in cases})
    ok = len(cases) == 200 and wrong == 0 and raw < 1e-6 and elapsed < 60 and sizes == [2, 3, 4, 5]
    record(1, "argument principle", ok,
           f"{len(cases)} matrices n={sizes}, mismatches {wrong}, raw residual {raw:.1e}, {elapsed:.1f}s")


def test_02_riesz_projectors(spectral_cases):
    cases, _ = spectral_cases
    idem = max(c["idempotency"] for c in cases)
    comm = max(c["commutator"] for c in cases)
    angle = max(c["angle"] for c in cases)
    rank_bad = sum(c["rank"] != c["count"] for c in cases)
    ok = idem < 1e-8 and comm < 1e-8 and angle < 1e-6 and rank_bad == 0
    record(2, "Riesz projectors", ok,
           f"idempotency {idem:.1e}, commutator {comm:.1e}, angle {angle:.1e}, rank mismatches {rank_bad}")


def test_03_direct_sum():
    rng = np.random.default_rng(3)
    probes = [direct_sum_probe(rng) for _ in range(100)]
    bad = sum(not p["rank_ok"] for p in probes)
    angle = max(p["angle"] for p in probes)
    nonempty = sum(p["dims"][2] > 0 for p in probes)
    record(3, "direct sum of sector eigenspaces", bad == 0 and angle < 1e-6,
           f"100 sector pairs ({nonempty} nonempty), rank failures {bad}, angle {angle:.1e}")


def test_04_associativity():
    rng = np.random.default_rng(4)
    err = max(associativity_probe(rng) for _ in range(100))
    record(4, "gerbe associativity", err < 1e-10, f"100 quadruples, max relative error {err:.1e}")


def test_05_holomorphy():
    rng = np.random.default_rng(5)
    probes = [holomorphy_probe(rng) for _ in range(50)]
    small = max(p[1e-5] for p in probes)
    ratios = [p[5e-4] / p[1e-3] for p in probes]
    ok = small < 1e-7 and 0.15 <= min(ratios) and max(ratios) <= 0.35
    record(5, "holomorphy of transition scalars", ok,
           f"50 probes, max residual {small:.1e} at h=1e-5, halving ratio in [{min(ratios):.4f}, {max(ratios):.4f}]")


def test_06_cocycle_closure(canonical_su2):
    res = canonical_su2[2].closure_residual()
    record(6, "cocycle closure", res < 1e-8, f"max |delta g - 1| = {res:.1e}")


def test_07_canonical_generator(su2_cover, canonical_su2):
    t0 = time.perf_counter()
    cyc = make_cycle()
    base = dd_details(su2_cover, canonical_su2[2]).value
    gauge = dd_integer(su2_cover, canonical_cocycle(su2_cover, cyc, gauge=random_gauge(su2_cover, 2, seed=7))[2])
    rechoice = dd_integer(su2_cover, canonical_cocycle(su2_cover, cyc, section_rank=1)[2])
    dense = build_su2_cover(5, path_steps=128)
    doubled = dd_integer(dense, canonical_cocycle(dense, cyc)[2])
    reversed_ = dd_integer(su2_cover.reversed(), canonical_su2[2])
    seeds = []
    for seed in (1, 2):
        c = build_su2_cover(5, seed=seed)
        seeds.append(dd_integer(c, canonical_cocycle(c, cyc, seed=seed)[2]))
    elapsed = time.perf_counter() - t0
    ok = (abs(base) == 1 and gauge == rechoice == doubled == base and reversed_ == -base
          and all(s == base for s in seeds) and elapsed < 300)
    record(7, "canonical generator", ok,
           f"dd={base:+d} (default orientation), gauge {gauge:+d}, section re-choice {rechoice:+d}, "
           f"doubled paths {doubled:+d}, reversed {reversed_:+d}, seeds 1,2 {seeds}, {elapsed:.0f}s")


def test_08_degree_naturality():
    cover = build_su2_cover(120)
    vals = {k: dd_integer(cover, canonical_cocycle(cover, make_cycle(name))[2])
            for k, name in [(1, "su2"), (2, "su2-pow2"), (3, "su2-pow3")]}
    ok = abs(vals[1]) == 1 and vals[2] == 2 * vals[1] and vals[3] == 3 * vals[1]
    record(8, "degree naturality", ok, f"600-cell cover, q^k -> {vals}")


def test_09_connection(canonical_su2):
    rep = connection_cochain(canonical_su2[1], h=1e-5)
    record(9, "connection compatibility", rep.residual < 1e-5,
           f"{rep.samples} samples, residual {rep.residual:.1e}, antisymmetry {rep.antisymmetry:.1e}")


def test_10_two_gerbe_structure(s4_cover):
    E = trivial_bundle(s4_cover)
    z = bundle_sections(E, spread=True)
    scal = max(float(np.max(np.abs(v - 1))) for s in s4_cover.simplices[2]
               for v in pullback_gerbe_data(E, s, z=z).scalars.values())
    g0 = synthesize_class_cocycle(s4_cover, 0)
    triv = [E.cocycle_residual(), E.gauge_residual(), scal, g0.closure_residual(),
            pentagon_verify(AssociatorData.from_cocycle(g0), s4_cover)]
    triv_ok = max(triv) < 1e-10 and dd4_integer(s4_cover, g0) == 0
    classes = {k: dd4_integer(s4_cover, synthesize_class_cocycle(s4_cover, k)) for k in range(-3, 4)}
    rng = np.random.default_rng(10)
    psi = AssociatorData.from_cocycle(synthesize_class_cocycle(s4_cover, 1))
    cob = pentagon_verify(psi, s4_cover)
    tet = s4_cover.faces[int(rng.integers(len(s4_cover.faces)))]
    pert = pentagon_verify(psi.perturbed(tet, 1.01), s4_cover)
    ok = triv_ok and all(k == v for k, v in classes.items()) and cob < 1e-10 and pert >= 5e-3
    record(10, "2-gerbe structural suite", ok,
           f"trivial residuals max {max(triv):.1e}, classes {classes}, "
           f"pentagon {cob:.1e} unperturbed and {pert:.2e} at 1% on {tet}")


def test_11_second_chern_class(s4_cover):
    inst = chern_weil_c2(instanton_bundle(s4_cover), nodes=6)
    triv = chern_weil_c2(trivial_bundle(s4_cover), nodes=6)
    k = int(round(inst.value))
    dd4 = dd4_integer(s4_cover, synthesize_class_cocycle(s4_cover, k))
    ok = abs(abs(inst.value) - 1) < 1e-3 and abs(triv.value) < 1e-6 and dd4 == k
    record(11, "c2 oracle", ok,
           f"clutching bundle c2={inst.value:.6f}, trivial {triv.value:.1e}; "
           f"scoped: dd4 of the cocycle synthesized with class round(c2) is {dd4}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
