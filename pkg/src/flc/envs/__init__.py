from .corridor import Corridor1D
from .hazardgrid import HazardGrid2D

__all__ = ["Corridor1D", "HazardGrid2D"]
