"""Exactly solvable open-system models."""

from . import lambda_type, pauli, phase_covariant, two_qubit, v_type
from .lambda_type import LambdaParams, lambda_evolve, lambda_hss_and_chi, lambda_rates
from .pauli import Parametrization, PauliParams
from .phase_covariant import PhaseCovariantParams
from .rates import RateProfile, parse_rate
from .two_qubit import TwoQubitParams
from .v_type import VTypeParams

phase_covariant_evolve = phase_covariant.evolve
phase_covariant_chi = phase_covariant.chi
pauli_evolve = pauli.evolve
pauli_chi = pauli.chi
two_qubit_P = two_qubit.coherence_function
two_qubit_evolve = two_qubit.evolve
two_qubit_hss_and_D = two_qubit.hss_and_D
vtype_G = v_type.amplitudes
vtype_evolve = v_type.evolve
vtype_hss_and_D = v_type.hss_and_D

__all__ = [
    "LambdaParams",
    "Parametrization",
    "PauliParams",
    "PhaseCovariantParams",
    "RateProfile",
    "TwoQubitParams",
    "VTypeParams",
    "lambda_evolve",
    "lambda_hss_and_chi",
    "lambda_rates",
    "parse_rate",
    "pauli_chi",
    "pauli_evolve",
    "phase_covariant_chi",
    "phase_covariant_evolve",
    "two_qubit_P",
    "two_qubit_evolve",
    "two_qubit_hss_and_D",
    "vtype_G",
    "vtype_evolve",
    "vtype_hss_and_D",
]
