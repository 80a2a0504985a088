"""Exact computation with m-fold mesh algebras of Dynkin type."""

from .dynkin import Arrow, DynkinSpec, InvalidRank, NoRho, make_dynkin, sigma, tau_arrow, translate
from .fields import GF2, QQ, PrimeField, Rationals, field_for_char
from .groups import GroupSpec, InvalidGroup
from .invariants import (
    H_subgroup,
    InvariantReport,
    UnsupportedType,
    cy_dimensions,
    invariant_report,
    n_cy_min,
    period,
    symmetry_class,
    vertex_order_u,
)
from .meshcore import AlgElem, Path, WindowAlgebra, eta_table_sign, make_path, socle_path
from .orbit import OrbitAlgebra, OrbitQuiver, covering_dim_check, orbit_algebra
from .presentation import Presentation, build_presentation

__version__ = "0.1.0"
