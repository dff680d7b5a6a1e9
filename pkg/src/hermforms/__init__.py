"""Exact arithmetic for epsilon-hermitian forms over algebras with
involution: signatures at real orderings, Goldman elements, trace pairings,
Sylvester decompositions, and decidable Witt-class questions over Q."""

__version__ = "0.1.0"

from .algebras import AlgebraWithInvolution, ProductAlgebra, build_algebra
from .baserings import BaseRing, Ordering
from .forms import HermForm, ProductForm, base_diag_form, diag_form
from .signatures import signature, signature_table
from .witt import is_hyperbolic, plg_minimal_n, witt_equal

__all__ = [
    "AlgebraWithInvolution",
    "BaseRing",
    "HermForm",
    "Ordering",
    "ProductAlgebra",
    "ProductForm",
    "base_diag_form",
    "build_algebra",
    "diag_form",
    "is_hyperbolic",
    "plg_minimal_n",
    "signature",
    "signature_table",
    "witt_equal",
    "__version__",
]
