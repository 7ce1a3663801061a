"""Exact verification of Harder-Narasimhan filtrations of normal bundles of
canonical curves on rational normal scrolls."""

from .exact import Rational, UniPoly, rat
from .genpos import GenericConfig, Subspace, codim_in, li_basis_check, meet, span
from .nodal import DegenerationData, StabilityReport, degeneration, delta_rule, destabilizer_search
from .pbundle import GradedMap, SplitBundle, cokernel_splitting, kernel_splitting
from .surfaces import DivisorClass, IntersectionLattice, del_pezzo4, hirzebruch
from .trigonal import HNReport, hn_report, mu_canonical_normal, small_genus_cases

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "UniPoly",
    "rat",
    "GenericConfig",
    "Subspace",
    "codim_in",
    "li_basis_check",
    "meet",
    "span",
    "DegenerationData",
    "StabilityReport",
    "degeneration",
    "delta_rule",
    "destabilizer_search",
    "GradedMap",
    "SplitBundle",
    "cokernel_splitting",
    "kernel_splitting",
    "DivisorClass",
    "IntersectionLattice",
    "del_pezzo4",
    "hirzebruch",
    "HNReport",
    "hn_report",
    "mu_canonical_normal",
    "small_genus_cases",
]
