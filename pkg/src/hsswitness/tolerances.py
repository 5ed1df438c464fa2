"""Numerical tolerances shared by the library and its tests."""

#: max |H_ij - conj(H_ji)| for a matrix to count as a valid state
HERMITICITY_TOL = 1e-12
#: |Tr rho - 1| allowed for a valid state
TRACE_TOL = 1e-10
#: most negative eigenvalue allowed for a valid state
POSITIVITY_TOL = 1e-10

#: asymmetry above which eigensolvers and speeds refuse the input
NON_HERMITIAN_TOL = 1e-8
#: |Tr| allowed for a phase derivative of a unit-trace family
TRACELESS_TOL = 1e-10

#: cyclic Jacobi sweep budget
JACOBI_MAX_SWEEPS = 100

#: default recursion cap for adaptive Simpson
SIMPSON_MAX_DEPTH = 40

#: witness values at or below this are treated as zero
WITNESS_TOL = 1e-8

#: default phase step for finite-difference speeds
DEFAULT_DPHI = 1e-4
#: default time step of figure reproductions
DEFAULT_DT = 1e-3
#: default number of points in the phase grid search
DEFAULT_PHI_GRID = 64
