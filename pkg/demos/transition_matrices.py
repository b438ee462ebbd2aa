"""The state transition matrix, numerically.

Phi(t) = exp(A t) maps an initial state to the free-response state at
time t.  This walk-through checks the numerical exponential against the
classic closed forms and demonstrates the algebra the simulator leans
on: the semigroup law, invertibility, and the defining differential
equation.

Run:  python3 demos/transition_matrices.py
"""

import numpy as np

from observkit import expm, make_model, transition_matrix

print("=== closed forms ===")
t = 1.3

nilpotent = np.array([[0.0, 1.0], [0.0, 0.0]])
print("nilpotent [[0,1],[0,0]]: exp truncates to [[1,t],[0,1]]")
print(expm(nilpotent, t))

rotation = np.array([[0.0, 1.0], [-1.0, 0.0]])
got = expm(rotation, t)
want = np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
print(f"rotation generator: max error vs cos/sin form "
      f"{np.max(np.abs(got - want)):.2e}")

diag = np.diag([-0.5, 0.25, 0.1])
got = expm(diag, t)
print(f"diagonal: max error vs entrywise exp "
      f"{np.max(np.abs(got - np.diag(np.exp(np.diag(diag) * t)))):.2e}")

print()
print("=== algebraic laws on a random matrix ===")
rng = np.random.default_rng(5)
a = rng.standard_normal((4, 4))
t1, t2 = 0.6, 0.9
semigroup = np.max(np.abs(expm(a, t1 + t2) - expm(a, t1) @ expm(a, t2)))
inverse = np.max(np.abs(expm(a, t1) @ expm(a, -t1) - np.eye(4)))
print(f"semigroup  |exp(A(t1+t2)) - exp(At1)exp(At2)| = {semigroup:.2e}")
print(f"inverse    |exp(At) exp(-At) - I|             = {inverse:.2e}")

h = 1e-5
derivative = (expm(a, t1 + h) - expm(a, t1 - h)) / (2 * h) - a @ expm(a, t1)
print(f"derivative |d/dt exp(At) - A exp(At)|         = "
      f"{np.max(np.abs(derivative)):.2e}  (central difference)")

print()
print("=== through a model ===")
model = make_model([[0.0, 1.0], [-2.0, -0.5]], [[0.0], [1.0]], [[0.0, 1.0]])
print("damped oscillator, Phi(0) is the identity:")
print(transition_matrix(model, 0.0))
print("Phi(2.0) contracts the state (stable system):")
phi = transition_matrix(model, 2.0)
print(phi)
print(f"spectral radius {max(abs(np.linalg.eigvals(phi))):.4f} < 1")
