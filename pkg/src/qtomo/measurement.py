"""Measurement models and seeded outcome sampling.

A k-level state is probed entrywise with k^2 - 1 projective observables:
one two-outcome diagonal observable per basis index below k, and for every
index pair i < j a three-outcome pair observable for the real part and one
for the imaginary part of the off-diagonal entry.  Qubits can instead be
measured along arbitrary Bloch directions or with one of two fixed POVMs,
a six-outcome one built from the three coordinate axes and a four-outcome
tetrahedral one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import InvariantError, require_square
from .states import PAULI, SIGMA_0, require_density

__all__ = [
    "Observable",
    "Povm",
    "MeasurementPlan",
    "TETRAHEDRON",
    "stream_rng",
    "pair_observable_x",
    "pair_observable_y",
    "diag_observable_z",
    "direction_observable",
    "standard_povm",
    "minimal_povm",
    "outcome_probabilities",
    "sample_counts",
    "relative_frequency",
    "sample_plan_counts",
]

# Tolerance for the algebraic checks on projectors and POVM effects.
_STRUCTURE_ATOL = 1e-10
# Probabilities this far below zero are treated as rounding noise; anything
# more negative signals an invalid state upstream.
_PROB_FLOOR = -1e-12

# Rows are the four unit vectors from the alternating-sign corners of a cube,
# pointing at the vertices of a regular tetrahedron.
TETRAHEDRON = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
) / np.sqrt(3.0)


def stream_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for a (master seed, stream key) pair.

    Streams with distinct keys are statistically independent, and the same
    (seed, key) always yields the same stream regardless of how many other
    streams exist.  This is what makes multi-worker runs reproducible.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Observable:
    """Projective observable: outcome values with their projectors.

    ``projectors[s]`` is the eigenprojector for ``values[s]``.  Projectors
    must be idempotent, mutually orthogonal, and sum to the identity; the
    values must be distinct real numbers.
    """

    values: tuple[float, ...]
    projectors: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.projectors, dtype=complex)
        if p.ndim != 3 or p.shape[1] != p.shape[2]:
            raise InvariantError(f"projectors must be a stack of square matrices, got {p.shape}")
        if len(self.values) != p.shape[0]:
            raise InvariantError("one projector per outcome value is required")
        if len(set(self.values)) != len(self.values):
            raise InvariantError("outcome values must be distinct")
        ident = np.eye(p.shape[1])
        if np.abs(p.sum(axis=0) - ident).max() > _STRUCTURE_ATOL:
            raise InvariantError("projectors must sum to the identity")
        for s in range(p.shape[0]):
            for t in range(p.shape[0]):
                want = p[s] if s == t else 0.0
                if np.abs(p[s] @ p[t] - want).max() > _STRUCTURE_ATOL:
                    raise InvariantError("projectors must be idempotent and orthogonal")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "projectors", _readonly(p))

    @property
    def dim(self) -> int:
        return self.projectors.shape[1]

    def expectation(self, rho) -> float:
        """Expected outcome value in the state ``rho``."""
        probs = outcome_probabilities(self, rho)
        return float(np.dot(self.values, probs))


@dataclass(frozen=True)
class Povm:
    """Positive operator-valued measure: PSD effects summing to the identity."""

    effects: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.effects, dtype=complex)
        if e.ndim != 3 or e.shape[1] != e.shape[2]:
            raise InvariantError(f"effects must be a stack of square matrices, got {e.shape}")
        gap = np.abs(e - e.conj().transpose(0, 2, 1)).max()
        if gap > _STRUCTURE_ATOL:
            raise InvariantError("effects must be Hermitian")
        if np.abs(e.sum(axis=0) - np.eye(e.shape[1])).max() > _STRUCTURE_ATOL:
            raise InvariantError("effects must sum to the identity")
        smallest = np.linalg.eigvalsh(e)[:, 0].min()
        if smallest < -_STRUCTURE_ATOL:
            raise InvariantError(f"effects must be PSD, smallest eigenvalue {smallest:.3e}")
        object.__setattr__(self, "effects", _readonly(e))

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    @property
    def n_outcomes(self) -> int:
        return self.effects.shape[0]


def _unit_matrix(dim: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((dim, dim), dtype=complex)
    e[i - 1, j - 1] = 1.0
    return e


def _check_pair(dim: int, i: int, j: int):
    if dim < 2:
        raise InvariantError("dimension must be at least 2")
    if not (1 <= i < j <= dim):
        raise InvariantError(f"need 1 <= i < j <= {dim}, got i={i}, j={j}")


def pair_observable_x(dim: int, i: int, j: int) -> Observable:
    """Observable E_ij + E_ji for the real part of entry (i, j), 1-based.

    Outcomes are +1 and -1 on the two-dimensional (i, j) block and 0 on the
    rest; the 0 outcome is omitted when dim == 2.  Its expectation in a state
    rho is 2 Re rho_ij.
    """
    _check_pair(dim, i, j)
    e_ii, e_jj = _unit_matrix(dim, i, i), _unit_matrix(dim, j, j)
    e_ij, e_ji = _unit_matrix(dim, i, j), _unit_matrix(dim, j, i)
    plus = 0.5 * (e_ii + e_ij + e_ji + e_jj)
    minus = 0.5 * (e_ii - e_ij - e_ji + e_jj)
    if dim == 2:
        return Observable((1.0, -1.0), np.stack([plus, minus]))
    rest = np.eye(dim, dtype=complex) - e_ii - e_jj
    return Observable((1.0, -1.0, 0.0), np.stack([plus, minus, rest]))


def pair_observable_y(dim: int, i: int, j: int) -> Observable:
    """Observable i E_ij - i E_ji for the imaginary part of entry (i, j).

    Same outcome structure as the real-part observable; the expectation is
    2 Im rho_ij, with Prob(+1) - Prob(-1) = 2 Im rho_ij.
    """
    _check_pair(dim, i, j)
    e_ii, e_jj = _unit_matrix(dim, i, i), _unit_matrix(dim, j, j)
    e_ij, e_ji = _unit_matrix(dim, i, j), _unit_matrix(dim, j, i)
    plus = 0.5 * (e_ii + 1j * e_ij - 1j * e_ji + e_jj)
    minus = 0.5 * (e_ii - 1j * e_ij + 1j * e_ji + e_jj)
    if dim == 2:
        return Observable((1.0, -1.0), np.stack([plus, minus]))
    rest = np.eye(dim, dtype=complex) - e_ii - e_jj
    return Observable((1.0, -1.0, 0.0), np.stack([plus, minus, rest]))


def diag_observable_z(dim: int, i: int) -> Observable:
    """Two-outcome observable E_ii (1-based): outcome 1 with probability rho_ii."""
    if dim < 2:
        raise InvariantError("dimension must be at least 2")
    if not (1 <= i <= dim):
        raise InvariantError(f"need 1 <= i <= {dim}, got i={i}")
    e_ii = _unit_matrix(dim, i, i)
    return Observable((1.0, 0.0), np.stack([e_ii, np.eye(dim, dtype=complex) - e_ii]))


def direction_observable(direction) -> Observable:
    """Qubit spin observable along a unit Bloch direction u.

    Outcomes +1 and -1 with projectors (I +- u . sigma) / 2; the +1
    probability in the state with Bloch vector theta is (1 + u . theta) / 2.
    """
    u = np.asarray(direction, dtype=float)
    if u.shape != (3,):
        raise InvariantError(f"direction must have shape (3,), got {u.shape}")
    if abs(float(np.linalg.norm(u)) - 1.0) > 1e-9:
        raise InvariantError("direction must be a unit vector")
    spin = np.tensordot(u, PAULI, axes=1)
    plus = 0.5 * (SIGMA_0 + spin)
    minus = 0.5 * (SIGMA_0 - spin)
    return Observable((1.0, -1.0), np.stack([plus, minus]))


def standard_povm() -> Povm:
    """Six-outcome qubit POVM from the three coordinate axes.

    Effects are P_i / 3 for outcomes 1..3 and Q_i / 3 for outcomes 4..6,
    where P_i and Q_i project onto the +1 and -1 eigenvectors of sigma_i.
    """
    effects = []
    for a in range(3):
        effects.append((0.5 * (SIGMA_0 + PAULI[a])) / 3.0)
    for a in range(3):
        effects.append((0.5 * (SIGMA_0 - PAULI[a])) / 3.0)
    return Povm(np.stack(effects))


def minimal_povm() -> Povm:
    """Four-outcome tetrahedral qubit POVM, effects (I + a_i . sigma) / 4."""
    effects = [0.25 * (SIGMA_0 + np.tensordot(a, PAULI, axes=1)) for a in TETRAHEDRON]
    return Povm(np.stack(effects))


def outcome_probabilities(measurement, rho) -> np.ndarray:
    """Outcome distribution Tr(rho P_s) of an observable or POVM in ``rho``.

    Values within 1e-12 below zero are clipped to zero and the vector is
    renormalized to sum exactly to one; anything more negative raises, since
    it signals an invalid state rather than rounding noise.
    """
    if isinstance(measurement, Observable):
        ops = measurement.projectors
    elif isinstance(measurement, Povm):
        ops = measurement.effects
    else:
        raise InvariantError(f"unsupported measurement type {type(measurement).__name__}")
    state = require_density(rho)
    if state.shape[0] != ops.shape[1]:
        raise InvariantError(
            f"dimension mismatch: state is {state.shape[0]}-level, measurement is "
            f"{ops.shape[1]}-level"
        )
    probs = np.einsum("sij,ji->s", ops, state).real
    low = float(probs.min())
    if low < _PROB_FLOOR:
        raise InvariantError(f"outcome probability {low:.3e} below rounding tolerance")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sample_counts(probs, repetitions: int, rng: np.random.Generator) -> np.ndarray:
    """Multinomial outcome counts for ``repetitions`` independent shots."""
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise InvariantError("probability vector must be 1-d with at least 2 outcomes")
    if np.any(p < 0) or abs(float(p.sum()) - 1.0) > 1e-9:
        raise InvariantError("probabilities must be nonnegative and sum to 1")
    if repetitions < 1:
        raise InvariantError("repetitions must be at least 1")
    return rng.multinomial(repetitions, p / p.sum())


def relative_frequency(counts, outcome: int) -> float:
    """Fraction of shots that landed on the given outcome index."""
    c = np.asarray(counts)
    total = int(c.sum())
    if total < 1:
        raise InvariantError("counts must contain at least one shot")
    if np.any(c < 0):
        raise InvariantError("counts must be nonnegative")
    return float(c[outcome]) / total


@dataclass(frozen=True)
class MeasurementPlan:
    """Entrywise plan: the k^2 - 1 observables, each measured r times.

    Copies are consumed independently, one fresh copy per shot; the optional
    ``copy_order`` permutation only relabels which block of copies feeds
    which observable and does not change any distribution.
    """

    dim: int
    repetitions: int
    copy_order: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.dim < 2:
            raise InvariantError("dimension must be at least 2")
        if self.repetitions < 1:
            raise InvariantError("repetitions must be at least 1")
        if self.copy_order is not None:
            order = tuple(int(v) for v in self.copy_order)
            if sorted(order) != list(range(len(self.keys))):
                raise InvariantError("copy_order must be a permutation of the observable slots")
            object.__setattr__(self, "copy_order", order)

    @cached_property
    def keys(self) -> tuple[tuple, ...]:
        """Observable labels: ('z', i) for i < k, then ('x'|'y', i, j) for i < j."""
        k = self.dim
        labels = [("z", i) for i in range(1, k)]
        labels += [("x", i, j) for i in range(1, k) for j in range(i + 1, k + 1)]
        labels += [("y", i, j) for i in range(1, k) for j in range(i + 1, k + 1)]
        return tuple(labels)

    @cached_property
    def observables(self) -> dict:
        built = {}
        for key in self.keys:
            if key[0] == "z":
                built[key] = diag_observable_z(self.dim, key[1])
            elif key[0] == "x":
                built[key] = pair_observable_x(self.dim, key[1], key[2])
            else:
                built[key] = pair_observable_y(self.dim, key[1], key[2])
        return built

    @property
    def total_copies(self) -> int:
        """n = r (k^2 - 1), the number of state copies the plan consumes."""
        return self.repetitions * (self.dim**2 - 1)


def sample_plan_counts(plan: MeasurementPlan, rho, rng: np.random.Generator) -> dict:
    """Outcome counts for every observable in the plan, keyed by label.

    Observables are sampled in the plan's key order, so a fixed generator
    state always produces the same table.
    """
    state = require_density(rho)
    if state.shape[0] != plan.dim:
        raise InvariantError("state dimension does not match the plan")
    counts = {}
    for key in plan.keys:
        probs = outcome_probabilities(plan.observables[key], state)
        counts[key] = sample_counts(probs, plan.repetitions, rng)
    return counts
