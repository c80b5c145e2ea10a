//! Exact finite-size distribution layer: biorthogonal contour kernels, the
//! windowed Fredholm determinant giving the q-Laplace transform of particle
//! positions, its stationary continuation at a -> alpha, and series inversion
//! of the transform back to probabilities.

pub mod inversion;
pub mod kernel;
pub mod linalg;
pub mod stationary;
pub mod tasep;

pub use kernel::{f_weight, fredholm_det_window, qlaplace, Kernel};
