"""Exact solving-degree analysis for polynomial systems over prime fields.

Computes the degree of regularity, solving degree, last fall degree, and
Groebner basis degree of a polynomial family over GF(p), and certifies the
inequalities that relate them.
"""

from .errors import (
    AlgebraError,
    CapExceeded,
    DimensionError,
    DomainError,
    GenerationError,
    InconsistencyError,
    ParseError,
    PreconditionError,
)
from .rings import (
    GREVLEX,
    GRLEX,
    MAX_VARS,
    MINUS_INFINITY,
    Monomial,
    Polynomial,
    PolySystem,
    PrimeField,
    Ring,
    Term,
    TermOrder,
    enumerate_monomials,
    is_prime,
    render_monomial,
)
from .linalg import ColumnIndex, RowBasis
from .vspace import (
    ClosureStats,
    TopRepSet,
    VSpaceBasis,
    construct_top_representatives,
    interreduce_tops,
    macaulay_generators,
    reduce_against_tops,
    v_space_closure,
)
from .groebner import (
    GroebnerBasis,
    MutantStats,
    buchberger_reduced,
    gbd,
    ideal_dim_le,
    mutantxl_gb,
    normal_form,
)
from .invariants import (
    Certificate,
    DegreeReport,
    InfiniteDegree,
    degree_of_regularity,
    last_fall_degree,
    solving_degree,
    verify_bounds,
)
from .harness import (
    RandomSpec,
    SystemFile,
    gen_fk,
    gen_random,
    parse_system,
    render_report,
    render_system,
)

__version__ = "0.1.0"
