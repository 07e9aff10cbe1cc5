"""Exact computations for toric domains: Reeb spectra, Conley-Zehnder indices,
symplectic capacities and the Lagrangian-capacity chain."""

from .capacities import (
    CapacityReport,
    CapacityValue,
    a_min_product_torus,
    c_B_lower,
    c_L,
    c_P,
    c_vol,
    capacities_report,
    cgh,
    cgh_nondecreasing_check,
    cgh_sequence,
    cgh_value,
    chain_report,
)
from .errors import DegenerateSpectrumError, DomainError, UnsupportedQueryError
from .numeric import floor_ratio, min_positive_integer_combination, rational, scale
from .reeb import (
    EllipsoidSpec,
    ReebOrbit,
    action,
    cz_index,
    enumerate_spectrum,
    lch_rank,
    normal_cz,
    orbit_of_degree,
)
from .toric import (
    Ball,
    Cube,
    Cylinder,
    Ellipsoid,
    HRep,
    NCylinders,
    Polydisk,
    contains_point,
    diagonal,
    includes,
    is_concave_toric,
    is_convex_toric,
    scale_region,
    volume,
)

__version__ = "0.1.0"
