"""Weighted blade arrangements, their boundary maps, and positive tropical heights."""

from .blade_complex import (
    DecoratedOSP,
    WeightedBladeArrangement,
    arrangement,
    blade,
    boundary,
    boundary_j,
    boundary_L,
    dosp_from_vertex,
    plate_system,
    support_on_face,
)
from .building_blocks import TauSpec, check_tau_closure, dj_vertices, tau
from .combinatorics import (
    DomainError,
    GroundFrame,
    cyclic_intervals,
    interlaced_complements,
    is_frozen,
    is_totally_nonfrozen,
    is_ws_collection,
    weakly_separated,
)
from .enumeration import catalog_rays, enumerate_dosps, enumerate_multisplits, eulerian, is_ray
from .heights import VertexVector, cube_L, cube_R, eta, height_vector, hmin, rho
from .tropical import (
    PluckerVector,
    face_weights,
    faces_report,
    is_in_X,
    is_in_Y,
    is_in_Z,
    is_pos_plucker,
    to_blades,
)

__version__ = "0.1.0"
