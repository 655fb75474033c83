import logging
from .classifier import Classifier, classifier, verify_classifier_adjunction, verify_marked_limit_theorem
from .codescent import (
    BarResolution,
    MarkedCoherenceData,
    bar_resolution,
    build_delta_sigma,
    cocone_marked_lax_bridge,
    cocones_as_weighted_transformations,
    marked_codescent_cocones,
    marked_weight,
)
from .diagram import CatValued2Functor
from .dotted import (
    DottedFCategory,
    PIEReport,
    check_fweighted_equals_dotted,
    dotted_colax_cone_fobject,
    dotted_lax_cone_fobject,
    f_category_of_elements,
    pie_indexing,
)
from .dsl import parse_source
from .enhanced import FCategory, FFunctor, FObject, FWeight, enumerate_fnat, f_functor_check, validate_fcategory
from .example_library import ShapeDescriptor, check_descriptor, example_library
from .exceptions import (
    CatlimException,
    ClosureOverflow,
    ClosureViolation,
    DSLSyntaxError,
    DuplicateDefinition,
    InvalidCategory,
    NoLift,
    SizeOverflow,
    TightnessViolation,
    TransportFailure,
    DefinitionFileNotFound,
    UnresolvedReference,
    UnsupportedCombination,
    ValidationError,
)
from .fin_2category import Fin2Category, TwoFunctor
from .fin_category import FinCategory, ValidationReport, validate_category
from .fincat import factorize_functor, find_isomorphism, functor_category, unique_lift
from .functor import Functor, NatTransformation
from .lax import LaxTransformation, Modification, lax_category
from .marked import (
    EquivalenceReport,
    MarkedTwoCategory,
    category_of_elements,
    check_weighted_equals_marked,
    marked_colax_cone_category,
    marked_lax_cone_category,
)
from .presentation import CatPresentation, PresentedCategory, saturate_presentation
from .settings import Settings
from .sharp import SharpWeight, sharp_classifier, verify_sharp_adjunction, verify_unit_dotted
from .two_cat import (
    LanMonad,
    lan_along_objects,
    lan_extend,
    lan_transpose,
    pointwise_lan,
    verify_lan_adjunction,
    weighted_limit_in_cat,
)
from .workspace import Workspace, emit, parse, parse_file
from ._version import __version__

# Set our default logger
_logger = logging.getLogger(__name__)
_logger.setLevel(logging.INFO)

_formatter = logging.Formatter("%(levelname)s - %(message)s")

_handler = logging.StreamHandler()
_handler.setLevel(logging.INFO)
_handler.setFormatter(_formatter)

_logger.addHandler(_handler)


def set_loglevel(level: int):
    """
    Parameters:
        level (int): A level from the logging module, e.g. logging.DEBUG for enumeration sizes.
    """
    _logger.setLevel(level)
    _handler.setLevel(level)
