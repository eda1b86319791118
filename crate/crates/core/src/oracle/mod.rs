//! Independent numerical checks: quadrature of the reluctance integral and
//! finite-difference permeance gradients.

mod fd;
mod quadrature;

pub use fd::{central_difference, default_step, gradient_fd, gradient_fd_with, FdEstimate};
pub use quadrature::{
    adaptive_simpson, gauss_geometric, permeance_quadrature, quadrature_permeance, slice_permeance_quadrature,
    Integral, OracleReport, QuadratureConfig,
};
