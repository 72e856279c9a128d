"""Exact computations on regular weight systems in three variables.

Exponents, the leveled divisor poset M(W) with its cyclotomic exponents,
orbifoldized Poincare polynomials, and the P-/M-duality predicates.
"""

from .algebra import BiLaurent, CyclotomicNumber, LaurentPoly
from .cyclotomic import RootMultiplicities, classify_type, poset_with_exponents, root_multiplicities
from .duality import (
    AtomicForm,
    DualPairRecord,
    atomic_form,
    dual_char_poly,
    is_M_dual,
    is_P_dual,
    m_dual_candidate,
    necessary_conditions,
)
from .orbifold import (
    DiagonalGroup,
    chi_orbifold,
    chi_sector,
    l1_vanishing_check,
    principal_group,
    sector_decomposition,
    trivial_group,
)
from .search import EnumerationReport, enumerate_dual_pairs, enumerate_regular, verify_theorem
from .weights import InvalidWeightSystem, WeightSystem, exponents, is_regular, validate

__version__ = "0.1.0"
