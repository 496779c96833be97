"""Vacuum polarization of planar Dirac fermions in Coulomb and Aharonov-Bohm fields.

Modules
-------
specfun
    Complex log-Gamma, digamma, trigamma, Whittaker M/W, modified Bessel I.
dirac_coulomb
    Radial doublets, Wronskians, extension angle, bound and resonance levels.
subcritical_charge
    Induced charge series ``Q1 + Qr`` and the Hartree self-consistent coupling.
supercritical_charge
    Log-periodic supercritical density, annulus charge and screening flow.
massive_polarization
    Polarization operator, coordinate-space charge, charged-vacuum density.
cli
    Command-line front end (``planar-vacuum``).
"""
from ._backend import BACKEND
from .errors import (
    ConvergenceError,
    DomainError,
    NoRootError,
    PlanarVacuumError,
    PoleError,
    SpecialFunctionOverflow,
    SupercriticalExcursionError,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    "PlanarVacuumError",
    "DomainError",
    "PoleError",
    "SpecialFunctionOverflow",
    "ConvergenceError",
    "NoRootError",
    "SupercriticalExcursionError",
]
