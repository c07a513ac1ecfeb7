"""Qubit observables, Bell operators, and the two single-step optimizers
used by the seesaw: the minimal-eigenvector state step and the closed-form
optimal dichotomic observable for a 2x2 reduced coefficient operator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interchange import Inequality

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENT = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class QubitObservable:
    """Traceless dichotomic observable n . sigma with |n| = 1, or the trivial
    identity observable used for setting index 0."""

    bloch: tuple[float, float, float] | None  # None marks the trivial observable

    def __post_init__(self):
        if self.bloch is not None:
            norm = float(np.linalg.norm(self.bloch))
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"Bloch vector norm {norm} is not 1")

    @property
    def trivial(self) -> bool:
        return self.bloch is None

    def matrix(self) -> np.ndarray:
        if self.bloch is None:
            return IDENT.copy()
        nx, ny, nz = self.bloch
        return nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z


TRIVIAL = QubitObservable(None)


def observable(nx: float, ny: float, nz: float) -> QubitObservable:
    v = np.array([nx, ny, nz], dtype=float)
    return QubitObservable(tuple(v / np.linalg.norm(v)))


SIGMA_X = observable(1, 0, 0)
SIGMA_Y = observable(0, 1, 0)
SIGMA_Z = observable(0, 0, 1)


def negate(o: QubitObservable) -> QubitObservable:
    if o.trivial:
        raise ValueError("the trivial observable has no negative")
    return QubitObservable(tuple(-x for x in o.bloch))


@dataclass(frozen=True)
class SettingsTable:
    """One observable per party and non-trivial setting index 1..I."""

    observables: tuple[tuple[QubitObservable, ...], ...]

    @property
    def parties(self) -> int:
        return len(self.observables)

    @property
    def settings(self) -> int:
        return len(self.observables[0])

    def matrix(self, party: int, setting: int) -> np.ndarray:
        if setting == 0:
            return IDENT.copy()
        return self.observables[party][setting - 1].matrix()

    def replace(self, party: int, setting: int, obs: QubitObservable) -> "SettingsTable":
        rows = [list(r) for r in self.observables]
        rows[party][setting - 1] = obs
        return SettingsTable(tuple(tuple(r) for r in rows))


def settings_table(rows: list[list[QubitObservable]]) -> SettingsTable:
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError("every party needs the same number of settings")
    return SettingsTable(tuple(tuple(r) for r in rows))


def random_settings(parties: int, settings: int, rng: np.random.Generator) -> SettingsTable:
    rows = []
    for _ in range(parties):
        row = []
        for _ in range(settings):
            v = rng.normal(size=3)
            row.append(QubitObservable(tuple(v / np.linalg.norm(v))))
        rows.append(row)
    return SettingsTable(tuple(tuple(r) for r in rows))


def bell_operator(b: Inequality, s: SettingsTable) -> np.ndarray:
    """sum_m b[m] O_1 x ... x O_N with setting 0 mapped to the identity."""
    if s.parties != b.parties or s.settings != b.settings:
        raise ValueError("settings table does not match the inequality scenario")
    dim = 2 ** b.parties
    out = np.zeros((dim, dim), dtype=complex)
    for m in b.multi_indices():
        coeff = b.coefficient(m)
        if coeff == 0:
            continue
        term = s.matrix(0, m[0])
        for p in range(1, b.parties):
            term = np.kron(term, s.matrix(p, m[p]))
        out += coeff * term
    hermiticity = float(np.max(np.abs(out - out.conj().T)))
    if hermiticity > 1e-12:
        raise AssertionError(f"Bell operator not Hermitian: deviation {hermiticity}")
    return out


def quantum_value(b: Inequality, s: SettingsTable, psi: np.ndarray) -> float:
    """<psi| B |psi> as a real number (the operator is Hermitian)."""
    psi = np.asarray(psi, dtype=complex)
    val = complex(psi.conj() @ (bell_operator(b, s) @ psi))
    if abs(val.imag) > 1e-10:
        raise AssertionError(f"expectation value has imaginary part {val.imag}")
    return val.real


def optimal_state(b: Inequality, s: SettingsTable) -> tuple[float, np.ndarray]:
    """Minimal eigenvalue of the Bell operator and a unit eigenvector."""
    op = bell_operator(b, s)
    vals, vecs = np.linalg.eigh(op)
    return float(vals[0]), vecs[:, 0].copy()


def optimal_observable(r: np.ndarray) -> tuple[QubitObservable, bool]:
    """The dichotomic observable minimizing trace(O r) for Hermitian 2x2 r.

    With r = a I + v . sigma the objective is 2 n . v, minimized by
    n = -v / |v|.  A vanishing traceless part leaves every observable
    equally good; sigma_z is returned with the degeneracy flag set.
    """
    r = np.asarray(r, dtype=complex)
    v = np.array([
        (r[0, 1] + r[1, 0]).real / 2,           # tr(sigma_x r) / 2
        ((r[1, 0] - r[0, 1]) * 1j).real / -2,   # tr(sigma_y r) / 2
        (r[0, 0] - r[1, 1]).real / 2,           # tr(sigma_z r) / 2
    ])
    norm = float(np.linalg.norm(v))
    if norm < 1e-14:
        return SIGMA_Z, True
    return QubitObservable(tuple(-v / norm)), False


def reduced_coefficient_operator(
    b: Inequality, s: SettingsTable, psi: np.ndarray, party: int, setting: int
) -> np.ndarray:
    """The 2x2 operator R with objective contribution trace(O R) for the
    observable at (party, setting), everything else held fixed."""
    n = b.parties
    psi_t = np.asarray(psi, dtype=complex).reshape((2,) * n)
    r = np.zeros((2, 2), dtype=complex)
    for m in b.multi_indices():
        if m[party] != setting:
            continue
        coeff = b.coefficient(m)
        if coeff == 0:
            continue
        phi = psi_t
        for q in range(n):
            if q == party:
                continue
            phi = np.tensordot(s.matrix(q, m[q]), phi, axes=([1], [q]))
            phi = np.moveaxis(phi, 0, q)
        # R[a, b] accumulates <psi| (... |b><a| at the party slot ...) |psi>
        r += coeff * np.tensordot(
            psi_t.conj(), phi, axes=(
                [q for q in range(n) if q != party],
                [q for q in range(n) if q != party],
            )
        )
    return r.T
