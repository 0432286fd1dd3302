"""scx: exact-arithmetic algebra of S-complexes.

Coefficients are exact (Z, Z/p, Q, Z[T^{+-1}], Q(T)); every structural claim
is verified entrywise.  See the README for the module map and the CLI.
"""

from .errors import ScxError
from .gradedlin import GradedMatrix, GradedModule, homology_of_pair, smith_normal_form
from .rings import FRAC_LAURENT_Q, LAURENT_Z, Q, Ring, RingElement, RingMap, Z, Zp
from .scomplex import SComplex, SHomotopy, SMorphism, load_scomplex, save_scomplex

__all__ = [
    "FRAC_LAURENT_Q", "GradedMatrix", "GradedModule", "LAURENT_Z", "Q", "Ring",
    "RingElement", "RingMap", "SComplex", "SHomotopy", "SMorphism", "ScxError",
    "Z", "Zp", "homology_of_pair", "load_scomplex", "save_scomplex",
    "smith_normal_form",
]
