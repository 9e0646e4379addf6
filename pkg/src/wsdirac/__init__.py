"""Dirac equation with a position-dependent mass in a Woods-Saxon potential.

Closed-form scattering coefficients, bound-state spectrum and spinor wave
functions, plus an RK4 oracle for arbitrary ``(V, m)`` profiles.
"""
__version__ = "0.1.0"

from ._backend import NAME as backend
from .boundstates import Spectrum, coefficient_ratio, f_eigen, spectrum
from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    NotAnEigenvalue,
    PoleError,
    ShapeWarning,
    SingularEnergy,
    StepError,
    TailError,
    WSDiracError,
)
from .model import PhysParams, bound_exponents, mass, potential, scattering_exponents
from .oracle import integrate, oracle_scattering, oracle_spectrum, woods_saxon_profile
from .scattering import reflection, scatter, transmission, transmission_sweep
from .specfun import gamma_ratio, hyp2f1, log_gamma
from .wavefunction import BoundState, ScatteringState, normalize_bound, region_probability
