"""geo3d: 3D geospatial analysis engine.

Terrain factors from DEMs, spatial statistics and interpolation, layered
network routing, and address geocoding, behind one CLI (``geo3d``).
"""

__version__ = "0.1.0"
