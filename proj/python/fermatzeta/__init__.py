"""Zeta functions of monomial deformations of Fermat hypersurfaces."""

from ._core import FermatZetaError, calibrate, classes, count, pf, pf_latex, verify, zeta

__all__ = ["FermatZetaError", "calibrate", "classes", "count", "pf", "pf_latex", "verify", "zeta"]
