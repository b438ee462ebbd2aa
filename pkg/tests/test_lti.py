import numpy as np
import pytest

from observkit.linalg import ShapeMismatchError
from observkit.lti import (
    SystemClass,
    Trace,
    classify,
    make_model,
    simulate_forced,
    simulate_free,
    transition_matrix,
    zoh_discretize,
)


def oscillator(mass=1.0, damping=0.0, stiffness=1.0):
    """Mass-spring-damper in state-space form with a velocity sensor."""
    return make_model(
        [[0.0, 1.0], [-stiffness / mass, -damping / mass]],
        [[0.0], [1.0]],
        [[0.0, 1.0]],
    )


def test_make_model_dimensions():
    m = oscillator()
    assert (m.n, m.p, m.q) == (2, 1, 1)
    assert m.a.shape == (2, 2) and m.b.shape == (2, 1) and m.c.shape == (1, 2)


def test_make_model_rejects_bad_shapes():
    with pytest.raises(ShapeMismatchError, match="b must be 2xp"):
        make_model(np.eye(2), np.ones((3, 1)), np.ones((1, 2)))
    with pytest.raises(ShapeMismatchError, match="a must be square"):
        make_model(np.ones((2, 3)), np.ones((2, 1)), np.ones((1, 2)))
    with pytest.raises(ShapeMismatchError, match="c must be qx2"):
        make_model(np.eye(2), np.ones((2, 1)), np.ones((1, 3)))


def test_model_arrays_are_read_only():
    m = oscillator()
    with pytest.raises(ValueError):
        m.a[0, 0] = 99.0


def test_trace_validation_and_metadata():
    tr = Trace(0.5, 0.25, [[1.0], [2.0], [3.0]])
    assert tr.width == 1
    assert tr.duration == 0.5
    np.testing.assert_allclose(tr.times, [0.5, 0.75, 1.0])
    with pytest.raises(ValueError):
        Trace(0.0, 0.0, [[1.0]])
    with pytest.raises(ValueError):
        Trace(0.0, -1.0, [[1.0]])


def test_classification_flags():
    assert classify(None) == SystemClass(free=True, stationary=True)
    assert classify(None).autonomous
    zero = Trace(0.0, 0.1, np.zeros((5, 1)))
    assert classify(zero).free
    driven = Trace(0.0, 0.1, np.ones((5, 1)))
    flags = classify(driven)
    assert not flags.free and flags.stationary and not flags.autonomous


def test_transition_matrix_at_zero_is_identity():
    m = oscillator(damping=0.7, stiffness=3.0)
    np.testing.assert_array_equal(transition_matrix(m, 0.0), np.eye(2))


def test_transition_matrix_rotation():
    m = oscillator()  # undamped unit oscillator: A = [[0,1],[-1,0]]
    for t in (0.3, 1.0, 2.5):
        want = [[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]]
        np.testing.assert_allclose(transition_matrix(m, t), want,
                                   rtol=0, atol=1e-13)


def test_transition_matrix_scalar_decay():
    m = make_model([[-1.0]], [[1.0]], [[1.0]])
    np.testing.assert_allclose(transition_matrix(m, 1.0), [[np.exp(-1.0)]],
                               rtol=1e-14)


def test_transition_semigroup_through_api():
    m = oscillator(damping=0.4, stiffness=2.0)
    left = transition_matrix(m, 0.7 + 1.1)
    right = transition_matrix(m, 0.7) @ transition_matrix(m, 1.1)
    np.testing.assert_allclose(left, right, rtol=0, atol=1e-10)


def test_simulate_free_zero_state_stays_zero():
    xs, ys = simulate_free(oscillator(), [0.0, 0.0], 0.0, 0.01, 50)
    assert not xs.samples.any()
    assert not ys.samples.any()


def test_simulate_free_constant_for_zero_dynamics():
    m = make_model([[0.0]], [[1.0]], [[1.0]])
    xs, ys = simulate_free(m, [3.0], 0.0, 0.1, 20)
    np.testing.assert_array_equal(xs.samples, np.full((21, 1), 3.0))
    np.testing.assert_array_equal(ys.samples, np.full((21, 1), 3.0))


def test_simulate_free_oscillator_closed_form():
    # x(t) = [cos t, -sin t] for x0 = [1, 0]; the sensor sees -sin t
    xs, ys = simulate_free(oscillator(), [1.0, 0.0], 0.0, 0.01, 600)
    t = xs.times
    np.testing.assert_allclose(xs.samples[:, 0], np.cos(t), rtol=0, atol=1e-11)
    np.testing.assert_allclose(xs.samples[:, 1], -np.sin(t), rtol=0, atol=1e-11)
    np.testing.assert_allclose(ys.samples[:, 0], -np.sin(t), rtol=0, atol=1e-11)


def test_simulate_free_output_is_exactly_c_times_state():
    m = oscillator(damping=0.3, stiffness=2.5)
    xs, ys = simulate_free(m, [0.4, -1.2], 0.0, 0.02, 100)
    for k in range(xs.samples.shape[0]):
        np.testing.assert_array_equal(ys.samples[k], m.c @ xs.samples[k])


def test_simulate_free_zero_steps_gives_single_sample():
    xs, ys = simulate_free(oscillator(), [1.0, 2.0], 0.0, 0.1, 0)
    assert xs.samples.shape == (1, 2)
    np.testing.assert_array_equal(xs.samples[0], [1.0, 2.0])
    assert ys.samples.shape == (1, 1)


def test_simulate_free_rejects_bad_arguments():
    with pytest.raises(ShapeMismatchError, match="width 2"):
        simulate_free(oscillator(), [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        simulate_free(oscillator(), [1.0, 2.0], dt=-0.1)
    with pytest.raises(ValueError):
        simulate_free(oscillator(), [1.0, 2.0], steps=-1)


def test_zoh_discretize_zero_dynamics():
    ad, bd = zoh_discretize(np.zeros((2, 2)), [[1.0], [2.0]], 0.25)
    np.testing.assert_allclose(ad, np.eye(2), rtol=0, atol=1e-15)
    np.testing.assert_allclose(bd, [[0.25], [0.5]], rtol=0, atol=1e-15)


def test_zoh_discretize_scalar_closed_form():
    ad, bd = zoh_discretize([[-1.0]], [[1.0]], 0.1)
    np.testing.assert_allclose(ad, [[np.exp(-0.1)]], rtol=1e-14)
    np.testing.assert_allclose(bd, [[1.0 - np.exp(-0.1)]], rtol=1e-13)


def test_simulate_forced_zero_input_reduces_to_free():
    m = oscillator(damping=0.2, stiffness=1.5)
    u = Trace(0.0, 0.01, np.zeros((201, 1)))
    xs_forced, ys_forced = simulate_forced(m, [1.0, -0.5], u)
    xs_free, ys_free = simulate_free(m, [1.0, -0.5], 0.0, 0.01, 200)
    np.testing.assert_array_equal(xs_forced.samples, xs_free.samples)
    np.testing.assert_array_equal(ys_forced.samples, ys_free.samples)


def test_simulate_forced_pure_integrator():
    m = make_model([[0.0]], [[1.0]], [[1.0]])
    u = Trace(0.0, 0.01, np.ones((101, 1)))
    xs, _ = simulate_forced(m, [0.0], u)
    np.testing.assert_allclose(xs.samples[:, 0], xs.times, rtol=0, atol=1e-12)


def test_simulate_forced_scalar_step_response():
    m = make_model([[-1.0]], [[1.0]], [[1.0]])
    u = Trace(0.0, 0.01, np.ones((201, 1)))
    xs, _ = simulate_forced(m, [0.0], u)
    np.testing.assert_allclose(xs.samples[:, 0], 1.0 - np.exp(-xs.times),
                               rtol=0, atol=1e-12)


def test_simulate_forced_rejects_width_mismatch():
    u = Trace(0.0, 0.01, np.ones((10, 2)))
    with pytest.raises(ShapeMismatchError, match="width 1"):
        simulate_forced(oscillator(), [1.0, 0.0], u)


def test_superposition():
    rng = np.random.default_rng(41)
    for _ in range(5):
        a = rng.standard_normal((3, 3)) - 2.0 * np.eye(3)
        m = make_model(a, rng.standard_normal((3, 2)), rng.standard_normal((2, 3)))
        x0 = rng.standard_normal(3)
        u = Trace(0.0, 0.01, rng.standard_normal((101, 2)))
        x_full, y_full = simulate_forced(m, x0, u)
        x_free, y_free = simulate_free(m, x0, 0.0, 0.01, 100)
        x_zero, y_zero = simulate_forced(m, np.zeros(3), u)
        np.testing.assert_allclose(x_full.samples,
                                   x_free.samples + x_zero.samples,
                                   rtol=0, atol=1e-10)
        np.testing.assert_allclose(y_full.samples,
                                   y_free.samples + y_zero.samples,
                                   rtol=0, atol=1e-10)


def _rk4_forced(a, b, x0, u_samples, dt, substeps=20):
    """Reference integration of dx/dt = A x + B u with u held constant on
    each sample interval; classic fixed-step RK4 within the interval."""
    x = np.array(x0, dtype=float)
    out = [x.copy()]
    h = dt / substeps
    for k in range(len(u_samples) - 1):
        drive = b @ u_samples[k]
        for _ in range(substeps):
            k1 = a @ x + drive
            k2 = a @ (x + 0.5 * h * k1) + drive
            k3 = a @ (x + 0.5 * h * k2) + drive
            k4 = a @ (x + h * k3) + drive
            x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(x.copy())
    return np.array(out)


def test_simulate_forced_matches_rk4_oracle():
    rng = np.random.default_rng(42)
    for _ in range(5):
        a = rng.standard_normal((3, 3)) - 2.5 * np.eye(3)  # shift to stability
        b = rng.standard_normal((3, 1))
        m = make_model(a, b, np.eye(3))
        x0 = rng.standard_normal(3)
        u = Trace(0.0, 0.01, rng.standard_normal((101, 1)))
        xs, _ = simulate_forced(m, x0, u)
        ref = _rk4_forced(a, b, x0, u.samples, u.dt)
        err = np.linalg.norm(xs.samples - ref) / np.linalg.norm(ref)
        assert err <= 1e-6
