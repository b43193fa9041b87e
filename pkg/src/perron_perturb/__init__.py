"""Eigenvalue analysis of rank-one perturbations of singular M-matrices."""

from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    GenerationFailure,
    IllConditioned,
    NonsingularConstantTerm,
    NotNonderogatory,
    NotSimple,
    ParseError,
    PerronPerturbError,
    UnknownSelector,
)
from .matcore import (
    NonnegativeMatrix,
    NzpReport,
    PerronPair,
    SingularMMatrix,
    adjugate,
    check_nzp,
    is_irreducible,
    perron_pair,
    spectral_radius,
    to_m_matrix,
)
from .perturb import (
    AsymptoticCase,
    AsymptoticReport,
    EigenCurveSet,
    N2ClosedForm,
    N3ClosedForm,
    PerturbationProblem,
    Stability,
    StabilityVerdict,
    asymptotics,
    b_of_t,
    classify,
    closed_form_n2,
    closed_form_n3,
    eigenvalues,
    estimate_threshold,
    factorization_residual,
    make_problem,
    min_real_part,
    p_vw_det_oracle,
    p_vw_lemma16,
    trace_eigenvalues,
)
from .poly import (
    HurwitzStatus,
    HurwitzVerdict,
    RealPolynomial,
    RootSet,
    char_poly,
    minimal_poly,
    roots,
    routh_hurwitz,
)
from .search import (
    CounterexampleRecord,
    SearchConfig,
    example_circulant_3,
    example_small_3,
    falsify,
    paper_counterexample_4,
    paper_family,
    random_problem,
)

__version__ = "0.1.0"
