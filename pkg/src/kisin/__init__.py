"""kisin: exact computation of Kisin varieties of tame principal-series type.

From the arithmetic input (p, f, h, gamma, gamma_prime, theta) the package
computes the combinatorial band of symbols ("gene") on a Moebius strip, the
explicit equations of the associated Kisin variety inside a product of
projective lines, its full geometric decomposition (irreducible components,
dimensions, connectivity, emptiness), the genre stratification, and
candidate deformation-space descriptors.  An independent semilinear-algebra
oracle rebuilds the passage and Frobenius matrices symbolically over a prime
field and cross-validates the combinatorics point by point.
"""

from .components import components_of, count_polynomial, maximal_exprimables
from .decorate import Decoration, assign_dominance, compute_links, decorate, render_moebius
from .gene import (
    AbstractGene,
    Gene,
    InternalMismatch,
    compute_gene,
    parse_abstract,
    transform_gene,
    validate_gene,
)
from .lattice import (
    frobenius_numerator,
    genre_from_matrices,
    integrality_check,
    lattice_description,
    passage_matrix,
)
from .params import (
    NoSolution,
    ParamError,
    Params,
    RejectDeterminant,
    RejectEqualCharacters,
    RejectReducible,
    RejectSmallPrime,
    degeneracy_flags,
    derive_params,
    digits,
    realize_h,
)
from .pipeline import (
    CrossCheckError,
    PipelineReport,
    enumerate_abstract_genes,
    run_pipeline,
)
from .strata import (
    NotAChain,
    PointNotOnVariety,
    RingDescriptor,
    chain_candidate,
    fiber_descriptor,
    genre_of_point,
    ring_descriptor,
    strata_census,
)
from .variety import (
    BudgetExceeded,
    Cross,
    EquationSystem,
    ProductZero,
    Vanish,
    build_equations,
    enumerate_points,
    is_empty,
    reduce_diagram,
    satisfies,
    witness_point,
)

__version__ = "0.1.0"
