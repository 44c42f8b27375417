"""Shared test utilities."""

import math

from casimir_ase.constants import C_LIGHT, HBAR, K_B, PI


def geometry_for(material, A, tau):
    """(a, T) realising the dimensionless pair (A, tau) for this material."""
    ratio2 = A**3 / ((C_LIGHT / material.v) * tau)  # (omega_p/omega_a)^2
    omega_a = material.omega_p / math.sqrt(ratio2)
    a = C_LIGHT / (2.0 * omega_a)
    T = tau * HBAR * omega_a / (2.0 * PI * K_B)
    return a, T


def temperature_for(material, a, A):
    """Temperature realising A at fixed separation (A^3 is linear in T)."""
    from casimir_ase import DimensionlessState

    base = DimensionlessState.from_geometry(material, a, 1.0).A ** 3
    return A**3 / base
