"""chowcalc: exact symbolic intersection theory with a verification DSL.

Library layout:

* rings: sparse graded classes, rewrite rules, normal forms, symmetric
  function expansion, confluence smoke checks;
* varieties: Chow presentations of projective spaces, products, projective
  bundles, blow-ups; pullback/pushforward/degree; JSON catalogs;
* characteristic: Chern/Segre classes and mod-p reduced power operations;
* milnor: exterior differential algebras over finite coefficient rings,
  their restriction maps and periodic quotient modules;
* numeric: degree pairings, numerical-equivalence kernels, ideal quotients;
* script/report/registry/cli: the scenario DSL, its runner, the built-in
  scenario registry, and the command-line front end.
"""

__version__ = "0.1.0"

from .rings import (
    ConfluenceReport,
    ContextMismatch,
    GradedClass,
    Monomial,
    ReductionBudgetExceeded,
    RewriteRule,
    RingContext,
    RingError,
    confluence_smoke_check,
    evaluate,
    inverse_series,
    normal_form,
    random_class,
    symmetric_expand,
)
from .varieties import (
    BundleRoots,
    CenterData,
    ChowPresentation,
    CoverageError,
    TangentUnavailable,
    blow_up,
    generic_context,
    load_presentation,
    presentation_from_json,
    product,
    projective_bundle,
    projective_space,
)
from .characteristic import (
    NotSteenrodClosed,
    chern_class,
    chern_total,
    d_class,
    embedded_power,
    homological_power,
    reduced_power,
    segre_total,
    steenrod_embedded,
    steenrod_total,
)
from .milnor import (
    IaAlgebra,
    MilnorElement,
    MilnorRing,
    PeriodicModule,
    comult_check,
    flexible_cohomology,
    make_ring,
    q_apply,
    q_composite,
    restrict_symbol,
    trivial_ia,
    truncated_symbol_ia,
)
from .numeric import (
    GammaQuotient,
    PairingReport,
    ab1_check,
    gamma_quotient,
    integer_determinant,
    kernel_is_ideal,
    numerical_kernel,
    pairing_matrix,
    pairing_report,
)
from .report import Report, emit_report
from .script import ParseError, Script, parse_script, print_script, run_scenario
from . import registry

__all__ = [name for name in dir() if not name.startswith("_")]
