from manetids.mobility.waypoint import (NodeKinematics, random_kinematics,
    step_waypoint)
from manetids.mobility.adjacency import Adjacency, compute_adjacency
