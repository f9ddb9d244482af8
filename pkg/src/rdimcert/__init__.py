"""Exact certificates for Rouquier dimension of blow-ups of projective spaces."""

__version__ = "0.1.0"

from .core import GradedDimension, euler_char, gd_dual, gd_shift, gd_sum, gd_tensor
from .coh import TwistedForm, bott_cohomology, rgamma_line
from .quiver import DynkinType, Quiver, classify_dynkin, positive_roots, star_quiver
from .sod import Center, CenterKind, GradedGram, build_blowup_collection
from .rdim import Certificate, TowerSpec, certify_tower, glueing_bound

__all__ = [
    "__version__",
    "GradedDimension",
    "euler_char",
    "gd_dual",
    "gd_shift",
    "gd_sum",
    "gd_tensor",
    "TwistedForm",
    "bott_cohomology",
    "rgamma_line",
    "DynkinType",
    "Quiver",
    "classify_dynkin",
    "positive_roots",
    "star_quiver",
    "Center",
    "CenterKind",
    "GradedGram",
    "build_blowup_collection",
    "Certificate",
    "TowerSpec",
    "certify_tower",
    "glueing_bound",
]
