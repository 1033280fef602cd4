import numpy as np
import pytest

from holgerbe.cech import (CechCocycle, canonical_cocycle, coboundary_function,
                           cocycle_from_function, collate_form_to_cocycle, connection_cochain,
                           dd_details, dd_integer, eigen_angles, forbidden_intervals, make_cycle,
                           normalized_volume_form, random_gauge, section_margin,
                           GerbeCocycleEvaluator)
from holgerbe.cover import ball_points, build_su2_cover
from holgerbe.errors import DataIntegrityError, DomainError, SamplingError
from holgerbe.two_gerbe import cover_isometry, pullback_cocycle_function


def test_cycle_tangent_matches_difference(rng):
    cyc = make_cycle("su2-pow2", "gl3")
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    t = rng.standard_normal(4)
    t -= (t @ q) * q
    h = 1e-6
    fd = (cyc.matrix(q + h * t) - cyc.matrix(q - h * t)) / (2 * h)
    assert np.allclose(cyc.tangent(q, t), fd, atol=1e-8)


def test_unknown_cycle():
    with pytest.raises(DomainError):
        make_cycle("su3")


def test_section_examples(rng):
    cyc = make_cycle()
    near_one = eigen_angles(cyc, ball_points(np.array([1.0, 0, 0, 0]), 0.5, 200, rng))
    near_minus = eigen_angles(cyc, ball_points(np.array([-1.0, 0, 0, 0]), 0.5, 200, rng))
    assert section_margin(np.pi, near_one) > 0.5
    assert section_margin(np.pi / 2, near_minus) > 0.5
    assert section_margin(np.pi, near_minus) < 0.5


def test_forbidden_intervals_merge():
    assert forbidden_intervals(np.array([0.0, 0.1, 1.0]), 0.1) == [(-0.1, 0.2), (0.9, 1.1)]


def test_sections_certified(canonical_su2):
    sec, frames, g = canonical_su2
    assert np.all(sec.margins > sec.delta)
    assert np.all(sec.recheck_margins > sec.delta / 2)
    assert min(frames.min_volume.values()) > 0


def test_canonical_closure_and_class(su2_cover, canonical_su2):
    g = canonical_su2[2]
    assert g.closure_residual() < 1e-8
    res = dd_details(su2_cover, g)
    assert res.value == 1
    assert res.rounding_residual < 1e-6
    assert dd_integer(su2_cover.reversed(), g) == -1


def test_connection_cochain(canonical_su2):
    rep = connection_cochain(canonical_su2[1])
    assert rep.residual < 1e-5
    assert rep.antisymmetry < 1e-12
    assert rep.samples > 0


def test_gauge_invariance(su2_cover):
    cyc = make_cycle()
    _, _, g = canonical_cocycle(su2_cover, cyc, gauge=random_gauge(su2_cover, 2, seed=4))
    assert g.closure_residual() < 1e-8
    assert dd_integer(su2_cover, g) == 1


def test_section_choice_invariance(su2_cover):
    _, _, g = canonical_cocycle(su2_cover, make_cycle(), section_rank=1)
    assert dd_integer(su2_cover, g) == 1


def test_sampling_density_invariance():
    cover = build_su2_cover(5, path_steps=24)
    _, _, g = canonical_cocycle(cover, make_cycle())
    assert dd_integer(cover, g) == 1


def test_coarse_paths_are_rejected(su2_cover, canonical_su2):
    g = canonical_su2[2]
    with pytest.raises(SamplingError):
        dd_details(su2_cover, g, phase_guard=1e-4)


def test_determinant_line_is_trivial(su2_cover):
    _, _, g = canonical_cocycle(su2_cover, make_cycle("su2", "gl1"))
    for rows in g.closure.values():
        assert np.allclose(rows, 1)
    assert dd_integer(su2_cover, g) == 0


def test_naturality_under_cover_symmetries(su2_cover, canonical_su2):
    frames = canonical_su2[1]
    ev = GerbeCocycleEvaluator(frames)
    fn = ev.values
    for perm in [(1, 0, 2, 3, 4), (1, 2, 0, 3, 4)]:
        f = cover_isometry(su2_cover, perm)
        h = cocycle_from_function(su2_cover, pullback_cocycle_function(su2_cover, fn, perm))
        assert h.closure_residual() < 1e-8
        assert dd_integer(su2_cover, h) == round(np.linalg.det(f))


@pytest.mark.parametrize("k", [-3, -2, -1, 0, 1, 2, 3])
def test_collation_realizes_every_class(su2_cover, k):
    g = collate_form_to_cocycle(su2_cover, normalized_volume_form(3, k))
    assert g.closure_residual() < 1e-10
    assert dd_integer(su2_cover, g) == k
    assert dd_integer(su2_cover.reversed(), g) == -k


def test_non_integral_period_rejected(su2_cover):
    with pytest.raises(DomainError):
        collate_form_to_cocycle(su2_cover, normalized_volume_form(3, 0.5))


def test_coboundaries_are_trivial(su2_cover):
    lam = lambda t, pts: np.exp(1j * (3 * pts[:, 0] + t[0] - 2 * t[1] * pts[:, 2]))
    g = cocycle_from_function(su2_cover, coboundary_function(lam))
    assert g.closure_residual() < 1e-12
    assert dd_integer(su2_cover, g) == 0


def test_class_is_additive(su2_cover, canonical_su2):
    g = canonical_su2[2]
    h = collate_form_to_cocycle(su2_cover, normalized_volume_form(3, 2))
    assert dd_integer(su2_cover, g.multiply(h)) == 3


def test_serialization_roundtrip(su2_cover, canonical_su2):
    g = canonical_su2[2]
    back = CechCocycle.from_dict(g.to_dict())
    assert back.closure_residual() == pytest.approx(g.closure_residual(), abs=1e-15)
    assert dd_integer(su2_cover, back) == 1


def test_zero_value_rejected(su2_cover, canonical_su2):
    d = canonical_su2[2].to_dict()
    key = next(iter(d["closure"]))
    d["closure"][key][0][0] = [0.0, 0.0]
    with pytest.raises(DataIntegrityError):
        dd_integer(su2_cover, CechCocycle.from_dict(d))
