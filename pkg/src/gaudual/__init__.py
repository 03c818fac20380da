"""Exact symbolic verification of Gaudin-model dualities.

The package computes, over exact rationals, both sides of the classical
bosonic, classical fermionic, quantum bosonic and cyclotomic duality
identities for Gaudin models with irregular singularities, and checks the
supporting algebraic structure (realization homomorphisms, Manin matrices,
commutativity of the extracted conserved quantities).
"""

from .errors import (
    BadPoints,
    BlockNotInvertible,
    DivisorMismatch,
    DuplicateFrequency,
    GaudualError,
    IndexOutOfRange,
    InhomogeneousInput,
    NonSquare,
    NoncommutativeRing,
    NotInvertible,
    RequiresRegularDivisor,
    ResidualPole,
    SingularBlock,
    SpecValidationError,
    UnlistedPole,
    ZeroInverse,
)
from .multipoly import MultiPoly
from .ratfunc import RatFunc, partial_fractions, ratfunc_invert
from .weyl import OrderedDiffOp, WeylElement, weyl_commutator, weyl_mul
from .grassmann import GrassmannAlgebra, GrassmannElement, grassmann_mul
from .poisson import poisson_bracket
from .matrices import (
    RingMatrix,
    berezinian_identity_check,
    cdet,
    det,
    jordan_block,
    jordan_block_inverse,
    manin_check,
    schur_cdet_factor,
)
from .gaudin import (
    Divisor,
    DualityInstance,
    build_quadratic_hamiltonians,
    check_commutativity,
    extract_gaudin_generators,
    verify_classical_bosonic_duality,
    verify_classical_fermionic_duality,
    verify_homomorphism,
    verify_quantum_duality,
)
from .cyclotomic import (
    CycloDivisor,
    CycloInstance,
    lax_algebra_check,
    neumann_artifacts,
    quantum_cyclotomic_candidate,
    verify_cyclotomic_duality,
    verify_cyclotomic_homomorphisms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
