"""Unit-circle zeros of self-inversive polynomials: construction, criteria and certificates."""

from .certify import (
    CircleBound,
    Lemma2Certificate,
    certified_max_on_circle,
    certified_min_on_circle,
    family_certificate,
    lemma2_certificate,
    lipschitz_constant,
)
from .criteria import (
    CriterionVerdict,
    best_alpha,
    cohn,
    lakatos,
    lakatos_losonczi_alpha,
    lakatos_losonczi_half,
    observation_scan,
    schinzel,
    smyth_inf_mu,
    smyth_value,
)
from .families import (
    FamilyDecomposition,
    FamilyId,
    FamilySequences,
    build,
    counterexample_poly,
    decompose,
    e_r_of,
    h_r_of,
    lemma3_scan,
    lemma5_scan,
    lemma6_scan,
    ramanujan_residual,
    sequences,
)
from .poly import (
    NotSelfInversiveError,
    Polynomial,
    SelfInversiveForm,
    ZeroPolynomialError,
    construct_theorem1,
    derivative,
    derivative_decomposition,
    detect_self_inversive,
    star,
)
from .roots import NonConvergenceError, RootReport, all_roots, convex_hull_containment, max_root_modulus, unimodularity
from .special import bernoulli, euler_number, l_chi4, zeta, zeta_even

__version__ = "0.1.0"
