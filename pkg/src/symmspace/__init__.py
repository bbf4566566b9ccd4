"""Riemannian symmetric spaces G/K realized as the closed submanifold P = exp(p) of G."""

__version__ = "0.1.0"

from .config import load_builtin, load_triple
from .involution import Involution, InvolutionKind, SymmetricTriple, split_algebra
from .liegroup import Family, GroupSpec, algebra_basis, random_element
from .symmcore import (component_dim, decompose, intersect_coset, membership_P,
                       membership_Q, membership_R, phi_map, su2_coset_classify,
                       transversal, twisted_conjugate)
from .verify import run_suite

__all__ = [
    "__version__", "load_builtin", "load_triple", "Involution", "InvolutionKind",
    "SymmetricTriple", "split_algebra", "Family", "GroupSpec", "algebra_basis",
    "random_element", "component_dim", "decompose", "intersect_coset",
    "membership_P", "membership_Q", "membership_R", "phi_map",
    "su2_coset_classify", "transversal", "twisted_conjugate", "run_suite",
]
