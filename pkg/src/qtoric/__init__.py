"""qtoric: exact-arithmetic classification and rigidity checks for quasitoric
manifolds over the 3-cube.

The pipeline: combinatorial polytopes (`polytope`), characteristic matrices
and their orbit classification (`charmat`), integral cohomology realizations
(`ringkit`), characteristic classes (`charclasses`), graded isomorphism
search (`isokit`), and machine-checked verification reports (`verify`).
"""

from .charclasses import CharClassData, ManifoldData, classes_full, classes_small, manifold_data
from .charmat import (
    CanonicalForm,
    CharMatrix,
    FamilyTag,
    StarForm,
    canonicalize,
    char_matrix,
    class_label,
    colambda_st,
    enumerate_star,
    family_of,
    lambda_st,
    named_star,
    to_star_form,
    validate,
)
from .errors import (
    CapabilityError,
    NoMonomialBasisError,
    QtoricError,
    TorsionError,
    ValidationError,
)
from .isokit import (
    RingMap,
    automorphisms,
    find_isomorphisms,
    is_isomorphism,
    jupp_check,
    residuals,
    ring_map,
    theta_solutions,
)
from .polytope import SimplePolytope, cube, f_vector, h_vector, make_polytope, simplex
from .ringkit import (
    GradedRing,
    RingElement,
    RingPresentation,
    full_presentation,
    nilsquare2,
    realize,
    realize_full,
    realize_star,
    small_presentation,
)
from .verify import classify_cube, run_suite, verify_families, verify_rigidity_partition, verify_strata

__version__ = "0.1.0"
