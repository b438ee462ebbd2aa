"""Linear time-invariant state-space models and trajectory simulation.

A model is the constant-coefficient triple (A, B, C) for

    dx/dt = A x + B u,        y = C x,

with n states, p inputs, and q outputs.  Simulation steps the exact
solution x(t) = e^{At} x(0) + integral of e^{A(t-s)} B u(s) ds on a
uniform grid; sampled inputs are interpreted as zero-order hold
(constant between samples), which makes the per-step update exact up
to matrix-exponential accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from observkit.linalg import ShapeMismatchError, as_matrix, as_vector, expm

__all__ = [
    "StateSpaceModel",
    "SystemClass",
    "Trace",
    "classify",
    "make_model",
    "simulate_forced",
    "simulate_free",
    "transition_matrix",
    "zoh_discretize",
]


@dataclass(frozen=True)
class StateSpaceModel:
    """Validated (A, B, C) triple.  Use :func:`make_model` to construct."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        """State dimension."""
        return self.a.shape[0]

    @property
    def p(self) -> int:
        """Input dimension."""
        return self.b.shape[1]

    @property
    def q(self) -> int:
        """Output dimension."""
        return self.c.shape[0]


@dataclass(frozen=True)
class Trace:
    """Uniformly sampled vector signal.

    Row ``k`` of ``samples`` is the signal value at time ``t0 + k*dt``.
    """

    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if not (self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        samples = as_matrix(self.samples, "samples")
        samples.setflags(write=False)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "samples", samples)

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def times(self) -> np.ndarray:
        """The sample instants t0, t0 + dt, ..."""
        return self.t0 + self.dt * np.arange(self.samples.shape[0])

    @property
    def duration(self) -> float:
        """Length of the covered interval, (len - 1) * dt."""
        return self.dt * (self.samples.shape[0] - 1)


@dataclass(frozen=True)
class SystemClass:
    """Classification flags: free (no input acting) and stationary
    (constant coefficients).  Autonomous means both at once.

    Only stationary systems are representable here, so ``stationary``
    is always true in practice.
    """

    free: bool
    stationary: bool
    autonomous: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "autonomous", self.free and self.stationary)


def classify(u: Trace | None) -> SystemClass:
    """Classify a system by its input trace: ``None`` or an identically
    zero trace makes it free, hence autonomous."""
    free = u is None or not np.any(u.samples)
    return SystemClass(free=free, stationary=True)


def make_model(a, b, c, name: str = "") -> StateSpaceModel:
    """Validate shapes and build a model.

    Args:
        a: system matrix, n x n.
        b: input matrix, n x p with p >= 1.
        c: output matrix, q x n with q >= 1.
        name: optional label carried through to reports.

    Raises:
        ShapeMismatchError: naming the offending matrix and the
            expected shape.
    """
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    c = as_matrix(c, "c")
    n = a.shape[0]
    if a.shape[1] != n:
        raise ShapeMismatchError(f"a must be square, got {a.shape[0]}x{a.shape[1]}")
    if n == 0:
        raise ShapeMismatchError("a must be at least 1x1")
    if b.shape[0] != n or b.shape[1] < 1:
        raise ShapeMismatchError(
            f"b must be {n}xp with p >= 1 to match a, got {b.shape[0]}x{b.shape[1]}")
    if c.shape[1] != n or c.shape[0] < 1:
        raise ShapeMismatchError(
            f"c must be qx{n} with q >= 1 to match a, got {c.shape[0]}x{c.shape[1]}")
    for m in (a, b, c):
        m.setflags(write=False)
    return StateSpaceModel(a=a, b=b, c=c, name=str(name))


def transition_matrix(m: StateSpaceModel, t: float) -> np.ndarray:
    """State transition matrix Phi(t) = exp(A t), so x(t) = Phi(t) x(0)
    for the free system.  Phi(0) is the identity."""
    return expm(m.a, t)


def _check_x0(m: StateSpaceModel, x0) -> np.ndarray:
    x0 = as_vector(x0, "x0")
    if x0.size != m.n:
        raise ShapeMismatchError(f"x0 must have width {m.n}, got {x0.size}")
    return x0


def simulate_free(m: StateSpaceModel, x0, t0: float = 0.0, dt: float = 1e-3,
                  steps: int = 1000) -> tuple[Trace, Trace]:
    """Free response (no input) on a uniform grid.

    One transition matrix Phi(dt) is computed and applied repeatedly,
    so sample k equals exp(A k dt) x0 up to exponential accuracy.

    Returns:
        (x trace, y trace), each with steps + 1 samples.
    """
    x0 = _check_x0(m, x0)
    if not (dt > 0):
        raise ValueError(f"dt must be positive, got {dt}")
    steps = int(steps)
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    phi = expm(m.a, dt)
    xs = np.empty((steps + 1, m.n))
    ys = np.empty((steps + 1, m.q))
    x = x0
    for k in range(steps + 1):
        xs[k] = x
        ys[k] = m.c @ xs[k]
        if k < steps:
            x = phi @ x
    return Trace(t0, dt, xs), Trace(t0, dt, ys)


def zoh_discretize(a, b, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact zero-order-hold discretization of (A, B) at step dt.

    Returns (A_d, B_d) such that x(t + dt) = A_d x(t) + B_d u when u is
    held constant over the step.  Both come from one exponential of the
    augmented block matrix [[A, B], [0, 0]] * dt, whose top row blocks
    are exactly A_d and B_d.
    """
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    n, p = a.shape[0], b.shape[1]
    aug = np.zeros((n + p, n + p))
    aug[:n, :n] = a
    aug[:n, n:] = b
    big = expm(aug, dt)
    return big[:n, :n], big[:n, n:]


def simulate_forced(m: StateSpaceModel, x0, u: Trace) -> tuple[Trace, Trace]:
    """Forced response under a sampled input, zero-order-hold semantics.

    The input is held constant on each [t_k, t_{k+1}), which admits the
    exact per-step update x_{k+1} = A_d x_k + B_d u_k.  The returned
    traces share the input's grid.  An identically zero input reduces
    to :func:`simulate_free`.
    """
    x0 = _check_x0(m, x0)
    if u.width != m.p:
        raise ShapeMismatchError(f"input trace must have width {m.p}, got {u.width}")
    steps = u.samples.shape[0] - 1
    if not np.any(u.samples):
        return simulate_free(m, x0, u.t0, u.dt, steps)
    ad, bd = zoh_discretize(m.a, m.b, u.dt)
    xs = np.empty((steps + 1, m.n))
    ys = np.empty((steps + 1, m.q))
    x = x0
    for k in range(steps + 1):
        xs[k] = x
        ys[k] = m.c @ xs[k]
        if k < steps:
            x = ad @ x + bd @ u.samples[k]
    return Trace(u.t0, u.dt, xs), Trace(u.t0, u.dt, ys)
