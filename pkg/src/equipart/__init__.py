"""Exact-arithmetic computations for mass equipartitions by two hyperplanes.

The package computes, over the integral group ring of the dihedral group of
order 8, the cohomology group housing the primary obstruction to an
equivariant map from a product of spheres to a sphere of representations,
evaluates the obstruction through exact resultants and combinatorial
mapping degrees, and turns the result into admissibility verdicts for
triples (d, j, 2) of the equipartition problem.
"""

from .group_algebra import (
    CayleyTableError,
    Character,
    GroupRingElement,
    GroupTable,
    InconsistentCharacter,
    augment,
    build_cyclic,
    build_d8,
    character_from_generator_signs,
    group_from_cayley_text,
    load_cayley_table,
    ring_element,
    ring_mul,
    trivial_character,
)
from .chain_complexes import (
    ChainFragment,
    ComplexCheck,
    LambdaMatrix,
    NonCommutingPartialMap,
    PartialChainMap,
    UnsupportedDimension,
    build_sphere_product_fragment,
    build_z2_example_complexes,
    fragment_from_json,
    fragment_to_json,
    fragment_to_json_str,
    matrix_of_composite,
    verify_complex,
)
from .cohomology import (
    AbelianGroupPresentation,
    CohomologyClass,
    DegreeOutOfRange,
    IntMatrix,
    NotACocycle,
    cohomology_at,
    invariant_factors,
    reduce_class,
    smith_normal_form,
    twisted_cochain,
    unimodular_inverse,
)
from .polynomial_degrees import (
    FactorizationCertificate,
    IntPolynomial,
    PreconditionViolated,
    ZeroPolynomial,
    bareiss_determinant,
    degree_monic_multiplication,
    degree_sphere_multiplication,
    poly_product,
    resultant,
    resultant_positivity_check,
    sylvester_matrix,
)
from .obstruction_engine import (
    AdmissibilityReport,
    CongruenceReport,
    NonFreeModule,
    ObstructionProblem,
    ThetaResult,
    Verdict,
    binomial_parity,
    chain_obstruction,
    decide_admissible,
    degree_congruence_check,
    sphere_coefficient_character,
    theta_equipartition,
    z2_example_problem,
)

__version__ = "0.1.0"
