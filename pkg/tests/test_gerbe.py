import numpy as np
import pytest
from hypothesis import given, strategies as st

from holgerbe.errors import DomainError, FiberMismatchError
from holgerbe.gerbe import (LineFiberElement, canonical_identify, connection_one_form, cr_residual,
                            fiber_ratio, in_Y, lambda_basis, local_trivialization, multiply,
                            random_fiber_element, swap_dual, transition_scalar, unit)
from holgerbe.sectors import ray_angle, unordered_sector
from holgerbe.spectral import eigenspace_basis, max_principal_angle
from holgerbe.suites import associativity_probe, random_generic_matrix, random_ray

E = lambda t: np.exp(1j * t)
A_i2 = np.diag([1j, -2])


def test_in_Y_examples():
    assert in_Y(A_i2, E(np.pi / 4))
    assert not in_Y(A_i2, 3j)
    assert not in_Y(A_i2, 1)
    assert not in_Y(np.diag([1, 0]), -1)
    with pytest.raises(DomainError):
        in_Y(np.ones((2, 3)), -1)


def test_lambda_basis_examples():
    A = np.diag([E(np.pi / 2), E(np.pi)])
    w = lambda_basis(A, E(3 * np.pi / 4))
    assert w.k == 1 and max_principal_angle(w.B, np.eye(2)[:, [0]]) < 1e-12
    w0 = lambda_basis(A, E(np.pi / 4))
    assert w0.k == 0 and w0.c == 1
    assert lambda_basis(np.eye(3), -1).k == 0


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_fiber_dimension_law(seed, n):
    rng = np.random.default_rng(seed)
    A = random_generic_matrix(n, rng)
    x = random_ray(A, rng)
    count = sum(0 < ray_angle(v) < ray_angle(x) for v in np.linalg.eigvals(A))
    assert lambda_basis(A, x).k == count


def test_unit_is_neutral(rng):
    A = random_generic_matrix(4, rng)
    x, y = random_ray(A, rng), random_ray(A, rng)
    p = random_fiber_element(A, x, y, rng)
    assert abs(fiber_ratio(multiply(p, unit(A, y)), p) - 1) < 1e-12
    assert abs(fiber_ratio(multiply(unit(A, x), p), p) - 1) < 1e-12


def test_swap_dual_is_inverse(rng):
    A = random_generic_matrix(4, rng)
    x, y = random_ray(A, rng), random_ray(A, rng)
    p = random_fiber_element(A, x, y, rng)
    assert abs(fiber_ratio(multiply(p, swap_dual(p)), unit(A, x)) - 1) < 1e-10
    assert abs(fiber_ratio(multiply(swap_dual(p), p), unit(A, y)) - 1) < 1e-10


def test_multiply_fiber_mismatch(rng):
    A = random_generic_matrix(3, rng)
    x, y, z = (random_ray(A, rng, 0.2) for _ in range(3))
    p = random_fiber_element(A, x, y, rng)
    q = random_fiber_element(A, z, x, rng)
    if abs(ray_angle(y) - ray_angle(z)) > 1e-6:
        with pytest.raises(FiberMismatchError):
            multiply(p, q)
    with pytest.raises(FiberMismatchError):
        multiply(p, random_fiber_element(A + np.eye(3), y, x, rng))


def test_multiply_diagonal_determinant_oracle(rng):
    """For diagonal A the pairing is a ratio of coordinate minors."""
    d = np.array([E(0.5), 2 * E(1.5), 0.7 * E(2.5), 1.3 * E(4.0), E(5.5)])
    A = np.diag(d)
    x, y, z = E(3.0), E(4.5), E(1.0)
    for _ in range(20):
        p = random_fiber_element(A, x, y, rng)
        q = random_fiber_element(A, y, z, rng)
        rows = [i for i in range(5) if 0 < ray_angle(d[i]) < ray_angle(y)]
        minor = lambda w: w.c * np.linalg.det(w.B[rows, :])
        oracle = minor(q.u) / minor(p.alpha.w)
        got = fiber_ratio(multiply(p, q), LineFiberElement(A, x, z, p.u, q.alpha))
        assert abs(got - oracle) < 1e-10 * abs(oracle)


def test_associativity(rng):
    assert max(associativity_probe(rng) for _ in range(20)) < 1e-10


def test_canonical_identify_examples():
    assert canonical_identify(A_i2, E(0.3), E(0.3)).kind == "trivial"
    # the literal base point -1 lies on the eigenray of -2; rotate it slightly
    x = E(0.9 * np.pi)
    idn = canonical_identify(A_i2, x, E(np.pi / 4))
    assert idn.kind == "wedge-of-sector" and idn.dimension == 1
    assert max_principal_angle(idn.frame.B, np.eye(2)[:, [0]]) < 1e-12
    back = canonical_identify(A_i2, E(np.pi / 4), x)
    assert back.kind == "dual-of-swap"
    # the two identifications are dual: their product is the unit
    assert abs(fiber_ratio(multiply(idn.element, back.element), unit(A_i2, x)) - 1) < 1e-12


def test_local_trivialization_examples():
    x, y = E(0.9 * np.pi), E(np.pi / 4)
    T = local_trivialization(A_i2, x, y)
    assert len(T.discs) == 1 and abs(T.discs[0][0] - 1j) < 1e-12
    assert T.k == 1
    assert T.certificate["min_volume_ratio"] >= 0.5
    r = fiber_ratio(T.fiber(A_i2), canonical_identify(A_i2, x, y).element)
    assert np.isfinite(r) and abs(r) > 0
    T0 = local_trivialization(A_i2, E(0.1), E(0.3))
    assert T0.k == 0 and T0.frame(A_i2).c == 1


def test_trivialization_tracks_sector_eigenspace(rng):
    A0 = random_generic_matrix(4, rng)
    x, y = random_ray(A0, rng, 0.3), random_ray(A0, rng, 0.3)
    T = local_trivialization(A0, x, y)
    S = unordered_sector(x, y)
    for _ in range(10):
        dA = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        A = A0 + 0.9 * T.rho * dA / np.linalg.norm(dA)
        B = eigenspace_basis(A, S).B
        assert B.shape[1] == T.k
        if T.k:
            assert max_principal_angle(T.frame(A).B, B) < 1e-6


def test_transition_scalar_examples():
    x, y = E(0.9 * np.pi), E(np.pi / 4)
    T1 = local_trivialization(A_i2, x, y)
    T2 = local_trivialization(A_i2, x, y, radius_scale=0.5)
    assert transition_scalar(T1, T1, A_i2) == 1
    A = A_i2 + 0.01 * np.array([[1, 2j], [0.5, -1]])
    assert abs(transition_scalar(T1, T2, A) - 1) < 1e-8


def test_cr_residual_examples(rng):
    A = random_generic_matrix(3, rng)
    assert cr_residual(np.linalg.det, A, 1e-5) < 1e-9
    anti = lambda M: np.linalg.det(M) * np.conj(M[0, 0])
    assert cr_residual(anti, A, 1e-5) == pytest.approx(abs(np.linalg.det(A)), rel=1e-3)


def test_cr_residual_is_second_order():
    f = lambda M: np.exp(M[0, 0]) + M[0, 1] ** 3
    A = np.array([[0.3, 1.0], [0.2, -1.0]], dtype=complex)
    r1, r2 = cr_residual(f, A, 1e-3), cr_residual(f, A, 5e-4)
    assert 0.15 <= r2 / r1 <= 0.35


def test_connection_scalar_case():
    A = np.array([[2j]])
    T = local_trivialization(A, -1, E(np.pi / 4), reference=np.array([[1.0 + 0.5j]]),
                             gauge=np.array([[0.3 - 0.2j]]))
    dA = np.array([[0.4 + 0.1j]])
    h = 1e-6
    logc = lambda M: np.log(T.frame(M).c * np.prod(T.frame(M).B))
    fd = (logc(A + h * dA) - logc(A - h * dA)) / (2 * h)
    assert abs(connection_one_form(T, A, dA) - fd) < 1e-6
    assert connection_one_form(T, A, 0 * dA) == 0


def test_connection_diagonal_closed_form():
    a1, a2 = 1j, -2.0
    A = np.diag([a1, a2])
    R = np.array([[0.8], [0.6 + 0.1j]])
    T = local_trivialization(A, E(0.9 * np.pi), E(np.pi / 4), reference=R)
    # a diagonal direction moves eigenvalues only; the projector is constant
    assert abs(connection_one_form(T, A, np.diag([1.0, 2.0]))) < 1e-12
    dA = np.array([[0, 1.0], [0, 0]])
    expected = R[1, 0] / (R[0, 0] * (a1 - a2))
    assert abs(connection_one_form(T, A, dA) - expected) < 1e-10


def test_connection_matches_frame_log_derivative(rng):
    A = random_generic_matrix(3, rng)
    x, y = random_ray(A, rng, 0.3), random_ray(A, rng, 0.3)
    T = local_trivialization(A, x, y)
    if T.k == 0:
        return
    dA = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    h = 1e-6
    ref, P = T.frame(A), T.projector(A)
    fd = (wedge_log(T.frame(A + h * dA), ref, P) - wedge_log(T.frame(A - h * dA), ref, P)) / (2 * h)
    assert abs(connection_one_form(T, A, dA) - fd) < 1e-6


def wedge_log(w, ref, P):
    """log of the coefficient of ``P w`` against ``ref``; ``P`` is the projector at the base point."""
    return np.log(w.c * np.linalg.det(np.linalg.lstsq(ref.B, P @ w.B, rcond=None)[0]))


def test_trivialization_descriptor_serializable():
    import json
    T = local_trivialization(A_i2, E(0.9 * np.pi), E(np.pi / 4))
    d = json.loads(json.dumps(T.to_dict()))
    assert d["discs"][0]["center"] == [0.0, 1.0]
    assert d["contour"][0]["kind"] == "arc"
