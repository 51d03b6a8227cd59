"""Exact computations with coherent lower previsions and exchangeability.

Everything is done in rational arithmetic: gambles and mass functions hold
:class:`fractions.Fraction` values, and natural extension is solved with an
exact simplex method.
"""

from .bernstein import (
    BernsteinPoly,
    MonomialForm,
    SimplexPoint,
    basis_eval,
    bernstein_approximant,
    bounds,
    comn,
    elevate,
    elevate_to,
    evaluate,
    from_monomials,
    mn,
)
from .combinatorics import (
    CategorySpace,
    CountVector,
    atom,
    count_vector,
    enumerate_count_vectors,
    enumerate_tuples,
    enumeration_cap,
    nu,
)
from .errors import (
    CapacityError,
    DegreeError,
    DomainMismatchError,
    ExpressionError,
    InconsistentFamilyError,
    InvalidCategoryError,
    LowPrevError,
    SureLossError,
    ValidationError,
)
from .exchangeability import (
    count_distribution,
    exchangeable_from_count,
    is_exchangeable,
    marginal,
    muhy,
    muhy_gamble,
)
from .expr import Expression
from .gambles import Domain, Gamble, Permutation, cylindrical_extension, lower_projection, permute
from .previsions import (
    AssessmentSet,
    CredalLowerPrevision,
    LinearPrevision,
    axiom_audit,
    check_avoiding_sure_loss,
    check_coherence,
    evaluate_linear,
    evaluate_lower,
    evaluate_upper,
    natural_extension,
)
from .representation import (
    CountFamily,
    SimplexDistribution,
    SimplexLowerPrevision,
    check_time_consistency,
    convergence_table,
    count_family,
    family_from_r,
    frequency_prevision,
    multinomial_family,
    natural_extension_cylinder,
    r_eval,
    r_from_family,
)

__version__ = "0.1.0"
