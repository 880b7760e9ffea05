"""
halfstrip - numerical Hardy spaces on half-strip domains.

Contours and geometry of the half-strip, adaptive contour quadrature,
Cauchy transforms and non-tangential limits, H^p norm estimation,
the explicit conformal maps onto the half-planes, Blaschke products,
and a registry of numerical checks for the identities and inequalities
that tie them together.
"""

__version__ = "0.1.0"
