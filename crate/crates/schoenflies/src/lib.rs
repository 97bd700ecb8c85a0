//! Finite-scale machinery for the Schönflies relation on planar compacta.
//!
//! A compactum is represented as a set of marked cells on a square raster
//! ([`raster::CellSet`]). The relation engine ([`relation`]) decides, for pairs
//! of sample points, whether enough separating components survive across a
//! schedule of annulus scales; [`decomp`] turns the resulting sample graph into
//! a decomposition of the raster into classes (atoms), and [`invariance`]
//! checks how decompositions transport under finite-to-one open maps of the
//! plane (power maps, quadratic polynomials, McMullen family).

pub mod decomp;
pub mod gen;
pub mod invariance;
pub mod netpbm;
pub mod raster;
pub mod relation;

/// Crate-wide error type. Message strings are part of the CLI contract.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("pair unresolvable: |x - y| = {dist:.6} < {limit:.6}")]
    PairUnresolvable { dist: f64, limit: f64 },
    #[error("depth unresolvable: finest feature {feature:.6} spans fewer than {min_cells} cells at resolution {resolution}")]
    DepthUnresolvable {
        feature: f64,
        min_cells: u32,
        resolution: u32,
    },
    #[error("circle unresolvable at this grid: r = {r:.6} <= 2h = {limit:.6}")]
    CircleUnresolvable { r: f64, limit: f64 },
    #[error("pole: {0}")]
    Pole(String),
    #[error("empty set: {0}")]
    EmptySet(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
