"""Infinitesimal and finite rigidity of graph-of-groups realisations."""

from .errors import InstanceError, InvariantError
from .hypergraph import Hypergraph, Incidence
from .liemodels import GroupModel, Subalgebra
from .motionspace import MotionReport, is_infinitesimally_rigid, motion_space
from .realisation import Realisation, build, pushforward

__all__ = [
    "GroupModel",
    "Hypergraph",
    "Incidence",
    "InstanceError",
    "InvariantError",
    "MotionReport",
    "Realisation",
    "Subalgebra",
    "build",
    "is_infinitesimally_rigid",
    "motion_space",
    "pushforward",
]
