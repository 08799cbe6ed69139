"""Faces of the braid, m-Catalan and m-Shi arrangements via decorated trees.

The main entry points are re-exported here; see the submodules for details.
"""

from .arrangement import Arrangement, FaceCode, Kind, face_code_of_point, face_dimension, restrict_to_shi
from .chain import MarkedFunction, enumerate_marked_functions, t_to_w, w_to_t
from .counting import catalan_face_count, shi_face_count, stirling2
from .facemaps import phi_catalan, phi_shi, point_to_tree, shi_repair, witness_point
from .oracle import census_diff, enumerate_faces
from .trees import DecoratedTree, enumerate_trees, parse_tree

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "FaceCode", "Kind", "face_code_of_point", "face_dimension", "restrict_to_shi",
    "MarkedFunction", "enumerate_marked_functions", "t_to_w", "w_to_t",
    "catalan_face_count", "shi_face_count", "stirling2",
    "phi_catalan", "phi_shi", "point_to_tree", "shi_repair", "witness_point",
    "census_diff", "enumerate_faces",
    "DecoratedTree", "enumerate_trees", "parse_tree",
]
