//! Coefficient-space algebra for odd-harmonic standing-wave series.

mod grid;
pub mod io;
mod product;
mod residual;
mod seq;

pub use grid::{CoeffGrid, CosGrid};
pub use product::{
    cosine_cube, cube_diagonal_field, cube_diagonal_field_with, cube_field, mul_cos_sine,
    mul_cos_sine_with, product_sine_sine, product_sine_sine_with,
};
pub use residual::{diagonal_residual_at, diagonal_residuals, diagonal_residuals_unscaled, offdiagonal_residuals};
pub use seq::DiagonalSeq;
