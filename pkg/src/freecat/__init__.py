"""Free products of unitary fusion 2-categories.

Two layers:

* an exact fusion-ring engine over reduced words (arbitrary amalgamated
  families of factor categories, Temperley-Lieb-Jones generators, pointed
  specs, free composition, box-space dimensions);
* a numerical realization over finite-group factor categories (graded
  Hilbert spaces, module actions with associators and unitors, swap maps,
  assembly maps, the induced 2-functor) with a verifier that checks every
  structural identity at desk scale.
"""

from .fusion import (
    Bundle,
    BoundError,
    CategorySpec,
    CompositionError,
    FusionError,
    Irr,
    ParameterError,
    SpecError,
    TableSpec,
    ValidationReport,
    WordError,
    bundle_dual,
    bundle_fuse,
    bundle_qdim,
    decompose_tensor,
    fuse_pair,
    hom_dim,
    validate,
)
from .words import (
    Amalgam,
    Cell,
    GeneralWord,
    Letter,
    ReducedWord,
    dual_word,
    enumerate_reduced,
    format_word,
    is_reduced,
    left_cons,
    parse_reduced,
    parse_word,
    right_cons,
)
from .freeprod import (
    FreeDecomposition,
    FreeProductSpec,
    PointedSpec,
    box_dims,
    decompose_word,
    free_compose,
    free_product_spec,
    hom_dim_words,
    mult_in_word,
    nondegenerate,
    qdim_conservation_residual,
    rewrite_decompose,
    word_qdim,
)
from .tlj import pointed_tlj, tlj_spec
from .repgroups import (
    ConcreteCategory,
    FiniteGroup,
    UnitaryRep,
    build_category,
    categorical_trace,
    cyclic_category,
    intertwiner_basis,
    s3_category,
)
from .graded import GradedMap, GradedSpace, star_space
from .actions import (
    ConcreteAmalgam,
    Scales,
    act_left,
    act_left_map,
    act_right,
    act_right_map,
    assoc_left,
    assoc_right,
    build_word_action,
    c_word,
    sigma,
    sigma_tilde,
    t_alpha,
    unitor_left,
    unitor_right,
    word_action,
    word_map,
)
from .morphisms import (
    NonExtendableError,
    component_at,
    extend_morphism,
    square_defect,
    two_cell_dim,
    unrolled_component,
)
from .assembly import assembly, assembly_tensors, universal_image
from .verify import VerificationReport, verify_suite

__version__ = "0.1.0"
