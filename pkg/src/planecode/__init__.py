"""Codes of the projective planes PG(2, p) over prime fields."""

from .code import CodeModel, MoorhouseSpec, build_code, code_dimension, dual_dimension
from .plane import PlaneModel, ProjLine, ProjPoint, build_plane

__all__ = ["CodeModel", "MoorhouseSpec", "PlaneModel", "ProjLine", "ProjPoint",
           "build_code", "build_plane", "code_dimension", "dual_dimension"]
