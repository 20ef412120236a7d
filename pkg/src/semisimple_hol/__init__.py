"""Holomorphs of finite semisimple groups and the regular subgroups they normalize."""

from .analysis import analyze, report_dict
from .catalog import QuasisimpleDescriptor, count_L_up_to_iso, h_bounds, in_L, l_critical_check
from .central_product import Amalgamation, central_product, decompose, inverting_automorphism
from .constructors import builtin, special_linear
from .holomorph import build_GJ, compute_H_set, phi_J, t_group
from .specfile import load_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "Amalgamation", "QuasisimpleDescriptor", "analyze", "build_GJ", "builtin", "central_product",
    "compute_H_set", "count_L_up_to_iso", "decompose", "h_bounds", "in_L", "inverting_automorphism",
    "l_critical_check", "load_spec", "parse_spec", "phi_J", "report_dict", "special_linear", "t_group",
]
