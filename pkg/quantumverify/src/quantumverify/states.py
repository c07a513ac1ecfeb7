"""Three-qubit reference states, as amplitude vectors over |000>..|111>
(party 1 is the most significant bit)."""

from __future__ import annotations

import numpy as np


def normalized(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-12:
        psi = psi / norm
    return psi


def ghz3() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[0b000] = psi[0b111] = 1 / np.sqrt(2)
    return psi


def w3() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[0b001] = psi[0b010] = psi[0b100] = 1 / np.sqrt(3)
    return psi


def ket111() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[0b111] = 1
    return psi


def w_plus_111(a: float, b: float) -> np.ndarray:
    """a |W3> + b |111>."""
    return normalized(a * w3() + b * ket111())


def w_ghz_mixture_angle(phi_radians: float) -> np.ndarray:
    """cos(phi) |W3> + sin(phi) |GHZ3>."""
    return normalized(np.cos(phi_radians) * w3() + np.sin(phi_radians) * ghz3())
