"""Free-plate spectra on balls and rods, and numerical checks of the inequalities
that compare any region's fundamental tone with the ball's."""

from .ball_spectrum import BallTone, fundamental_tone, tone_for_order
from .errors import BoundViolation, ConvergenceError, DomainError, FreePlateError
from .profile import RadialProfile
from .rod_spectrum import RodMode
from .special_functions import UltraIndex, first_deriv_zero, ultra_i, ultra_j

__version__ = "0.1.0"

__all__ = [
    "BallTone",
    "BoundViolation",
    "ConvergenceError",
    "DomainError",
    "FreePlateError",
    "RadialProfile",
    "RodMode",
    "UltraIndex",
    "first_deriv_zero",
    "fundamental_tone",
    "tone_for_order",
    "ultra_i",
    "ultra_j",
]
