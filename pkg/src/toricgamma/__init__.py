"""Exact intersection numbers and gamma_2 verdicts for toric surfaces and 3-folds."""
from .classify import NEF, NOT_NEF, POSITIVE, VarietyReport, enumerate_reflexive_polygons, sweep, verdict
from .fan import Cone, Fan, face_fan, polygon_fan, product_fan, star_subdivide
from .intersection import (
    QuadForm,
    gamma1_dot_curve,
    gamma_dot_surface,
    i_poly,
    rho1_form,
    rho2_form,
    surface_gamma2,
    wall_relation,
)
from .props import VarietyProfile, is_fano, is_gorenstein, is_terminal, profile

__version__ = "0.1.0"
