"""Exact tropical curve counting and gluing-formula evaluation."""

from .complex import ContactData, Domain, FaceId, Mode
from .enumeration import PointConfig, count_nd, enumerate_plane, generic_config, kontsevich
from .glue import EnergyVec, NovikovPoly, VertexInvariantTable, evaluate_curve, total
from .lattice import IntVec2, RatPoint, wedge
from .tropical import CombinatorialType, Edge, Vertex, aut_order, realize

__version__ = "0.1.0"
