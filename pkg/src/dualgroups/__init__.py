"""Exact combinatorics of dual groups of spherical varieties."""

from .catalog import load_catalog
from .chevalley import StructureConstants, check_dn_identity
from .errors import DualGroupError, ParseError
from .fileformat import parse_system, serialize_datum, serialize_system
from .functor import build_eta, tau_wedge, verify_inclusion, verify_main_theorem
from .luna import SphericalSystem, build_system, check_axioms, check_quotient, verify_system
from .roots import DynkinType, RootSystem, build, weyl_order
from .spherical import WeakSphericalDatum, check_wss, classify, dual_datum, make_datum
from .valuations import face_roots, quotient_datum

__version__ = "0.1.0"

__all__ = [
    "DualGroupError", "DynkinType", "ParseError", "RootSystem", "SphericalSystem",
    "StructureConstants", "WeakSphericalDatum", "build", "build_eta", "build_system",
    "check_axioms", "check_dn_identity", "check_quotient", "check_wss", "classify",
    "dual_datum", "face_roots", "load_catalog", "make_datum", "parse_system",
    "quotient_datum", "serialize_datum", "serialize_system", "tau_wedge",
    "verify_inclusion", "verify_main_theorem", "verify_system", "weyl_order",
]
