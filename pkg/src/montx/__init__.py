"""montx: x-only arithmetic on Montgomery curves.

Field arithmetic with operation counting, the Montgomery ladder and its
constant-time variant, differential addition chains (EUCLID/PRAC), x-only
Diffie-Hellman, and ECM stage 1.
"""

from .curve import MontgomeryCurve, new_curve
from .chains import euclid, prac
from .ecm import EcmConfig, stage1
from .ladder import (
    dh_keypair, dh_public, dh_shared, named_curve, recover, scalar_mul, uniform_ladder, x0, x_ladder,
)
from .modarith import Modulus, OpCount
from .xline import XZPoint, xadd, xdbl

__all__ = [
    "Modulus", "OpCount", "MontgomeryCurve", "new_curve", "XZPoint", "xadd", "xdbl",
    "x_ladder", "uniform_ladder", "recover", "scalar_mul", "x0", "named_curve",
    "dh_keypair", "dh_public", "dh_shared", "euclid", "prac", "EcmConfig", "stage1",
]
__version__ = "0.1.0"
