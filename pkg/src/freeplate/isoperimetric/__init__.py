from .domains import DomainSpec, make_domain, parse_domain, unit_ball_volume
from .quadrature import (
    CenterResult,
    DirectionSampler,
    QuotientResult,
    RadialTable,
    center_translate,
    normalize_volume,
    quotient_bound,
    radial_integral,
    sphere_area,
)
from .lemmas import (
    N_of_rho,
    calculus_identity_check,
    monotonicity_report,
    polynomial_lemma_check,
)
