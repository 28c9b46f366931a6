"""Exact computations with Koenig's order of a curve singularity.

Lattices over a product of power series rings, the chain of partial
normalizations, the order matrix, its quasi-hereditary quotient Q and the
tilting algebra Lambda of a rational projective curve.
"""
from .linalg import BACKEND
from .field import QQ, PrimeField, field_from_descriptor
from .lattice import FractionalIdeal, SeriesVec, lat_colon, lat_mul, lat_sum, lat_intersect, algebra_closure
from .chain import LocalRing, local_ring, normalization_chain
from .order import OrderMatrix, build_order
from .qha import build_Q, build_layers, heredity_check, bimodule_W, build_Lambda, CurveConfig, PointSpec

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "QQ", "PrimeField", "field_from_descriptor",
    "FractionalIdeal", "SeriesVec", "lat_colon", "lat_mul", "lat_sum", "lat_intersect", "algebra_closure",
    "LocalRing", "local_ring", "normalization_chain", "OrderMatrix", "build_order",
    "build_Q", "build_layers", "heredity_check", "bimodule_W", "build_Lambda", "CurveConfig", "PointSpec",
]
