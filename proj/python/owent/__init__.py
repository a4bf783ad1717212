"""Owen's T function and the bivariate normal cdf."""

from ._core import (
    SeriesVariant,
    owen_t,
    owen_t_batch,
    owen_t_quadrature,
    owen_t_report,
    owen_t_tetrachoric,
    phi2,
    phi2_h0,
    phi2_quadrature,
    phi2_tetrachoric,
    phi2_tetrachoric_h0,
    std_normal_cdf,
)

__all__ = [
    "SeriesVariant",
    "owen_t",
    "owen_t_batch",
    "owen_t_quadrature",
    "owen_t_report",
    "owen_t_tetrachoric",
    "phi2",
    "phi2_h0",
    "phi2_quadrature",
    "phi2_tetrachoric",
    "phi2_tetrachoric_h0",
    "std_normal_cdf",
]
