//! Numerical toolkit for rank-one reflection-weighted analysis on `R^d`.
//!
//! Everything here revolves around the family of measures
//!
//! ```text
//!     dmu_k(x) = h_k(x)^2 dx,      h_k(x) = prod_j |x_j|^{k_j},   k_j >= 0,
//! ```
//!
//! indexed by a *multiplicity* vector `k = (k_1, ..., k_d)` attached to the sign
//! changes `x_j -> -x_j`. The weight is homogeneous of degree `gamma = sum_j k_j`,
//! so `mu_k` scales like `r^{2 gamma + d}` under dilation, and balls, cubes and
//! coordinate rectangles all have closed-form volumes implemented in [`measure`].
//!
//! On top of the measure the crate builds, layer by layer:
//!
//! * [`special`] — Gauss–Jacobi rules for the one-dimensional weight
//!   `Phi_k(t) = M_k (1+t)(1-t^2)^{k-1}`, normalized Bessel functions, and the
//!   exponential kernel `E_k` that replaces `e^{i<x,y>}` in the weighted setting;
//! * [`polynomial`] — exact sparse polynomials, the first-order
//!   difference-differential operators, and the intertwining average that maps
//!   ordinary derivatives to them;
//! * [`product_formula`] — the explicit three-point measure `nu_{x,y}` behind the
//!   product `E_k(ix,.) E_k(iy,.)`, its positive part, and their tensor extension;
//! * [`grid`], [`transform`] — symmetric tensor grids avoiding the reflection
//!   hyperplanes, dense-quadrature forward/inverse transforms, heat and Poisson
//!   kernels, dilations and admissibility moments for radial profiles;
//! * [`translation`] — the generalized translation `tau_x` (quadrature form on a
//!   signed parameter interval), exact translates of interval, cube and ball
//!   indicators, and spectral convolution;
//! * [`maximal`] — four maximal operators (balls, cubes via the positive
//!   three-point measure, one-sided rectangles, radial approximate identities),
//!   a greedy covering selector with engulfment certificates, and empirical
//!   weak-type / strong-type / vector-valued inequality ratios;
//! * [`suites`], [`report`], [`config`] — a verification harness that replays the
//!   identities and inequalities above on desk-scale grids and writes
//!   `summary.txt`, `checks.csv` and `constants.csv`.
//!
//! # Conventions
//!
//! * `d = 1` sphere integrals use the counting convention: the 0-sphere has
//!   total weight 2.
//! * Grids are cell-centered and symmetric, so no node lies on a reflection
//!   hyperplane; the frequency grid of a transform equals the spatial grid.
//! * A multiplicity component `k_j = 0` always routes to the classical branch
//!   (ordinary shift, Fourier kernel `e^{ixy}`, point mass at `t = 1`).
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release -p dunkl --example weights_and_measures
//! cargo run --release -p dunkl --example kernel_and_bessel
//! cargo run --release -p dunkl --example product_formula
//! cargo run --release -p dunkl --example heat_transform
//! cargo run --release -p dunkl --example translation
//! cargo run --release -p dunkl --example maximal_operators
//! cargo run --release -p dunkl --example covering_lemma
//! cargo run --release -p dunkl --example fefferman_stein
//! ```
//!
//! The thin `dunkl` binary drives the same verification suites from the command
//! line (`describe`, `run`, `report`); see the README for the file formats.

pub mod config;
pub mod error;
pub mod gamma;
pub mod grid;
pub mod maximal;
pub mod measure;
pub mod polynomial;
pub mod product_formula;
pub mod quad;
pub mod report;
pub mod special;
pub mod suites;
pub mod transform;
pub mod translation;

pub use error::Error;
pub use measure::Multiplicity;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
