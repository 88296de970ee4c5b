"""Exact engine for Rees powers of modules over graded polynomial rings.

Layers, bottom up: ring/element (arithmetic and orders), groebner
(bases, syzygies, elimination), linalg + modops (graded submodules,
resolutions, primes), rees (powers, presentation, fiber cone),
asymptotics (depth/Ass sequences and theorem checkers), instance/report/
cli (text instances in, JSON and CSV out).
"""

__version__ = "0.1.0"

from .ring import Ring, grevlex_order, lex_order, elim_order
from .element import Element, parse_polynomial
from .groebner import (
    AugmentedBasis,
    GroebnerBasis,
    ModuleOrder,
    buchberger,
    component_elim_order,
    eliminate,
    normal_form,
    pot_order,
    syzygies,
    top_order,
)
from .errors import (
    DegreeGuardError,
    EngineInconsistencyError,
    InstanceParseError,
    ResourceLimitError,
    RingMismatchError,
    UnsupportedInstanceError,
)
from .modops import (
    INFINITE_DEPTH,
    Quotient,
    Resolution,
    Submodule,
    fitting_ideal,
    ideal_height,
    is_double_dual_free,
    koszul_grade,
    module_depth,
    module_rank,
)
from .rees import ReesContext, t_monomials
from .asymptotics import (
    CheckerVerdict,
    ass_sequence,
    bar_reduce_check,
    burch_check,
    cm_equality_check,
    cowsik_nori_check,
    grade_check,
    quotient_depth_sequence,
    power_depth_sequence,
    reduced_context,
    superficial_element,
)
from .instance import Instance, load_instance, parse_instance
from .report import invariant_record, power_csv, record_json

__all__ = [
    "Ring",
    "Element",
    "parse_polynomial",
    "grevlex_order",
    "lex_order",
    "elim_order",
    "ModuleOrder",
    "GroebnerBasis",
    "AugmentedBasis",
    "buchberger",
    "normal_form",
    "syzygies",
    "eliminate",
    "top_order",
    "pot_order",
    "component_elim_order",
    "Submodule",
    "Quotient",
    "Resolution",
    "INFINITE_DEPTH",
    "ideal_height",
    "fitting_ideal",
    "module_rank",
    "module_depth",
    "koszul_grade",
    "is_double_dual_free",
    "ReesContext",
    "t_monomials",
    "CheckerVerdict",
    "quotient_depth_sequence",
    "power_depth_sequence",
    "ass_sequence",
    "superficial_element",
    "reduced_context",
    "bar_reduce_check",
    "burch_check",
    "grade_check",
    "cm_equality_check",
    "cowsik_nori_check",
    "Instance",
    "parse_instance",
    "load_instance",
    "invariant_record",
    "power_csv",
    "record_json",
    "RingMismatchError",
    "DegreeGuardError",
    "ResourceLimitError",
    "UnsupportedInstanceError",
    "EngineInconsistencyError",
    "InstanceParseError",
    "__version__",
]
