use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{what} exceeds bound {limit} (got {actual})")]
    Bound {
        what: &'static str,
        limit: u64,
        actual: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

/// Size limits for the enumerative parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest determinant group |ξ̄/ξ| that is expanded into cosets.
    pub max_det_order: u64,
    /// Largest |Tors(A)| scanned when enumerating components of V(ker ν).
    pub max_torsion: u64,
    /// Largest support of a Laurent polynomial for partition enumeration.
    pub max_support: usize,
    /// Largest vertex count of a simplicial complex.
    pub max_vertices: usize,
    /// Largest finite group handled by brute-force enumeration.
    pub max_finite_order: u64,
    /// Largest number of candidate homomorphisms visited by brute force.
    pub max_enumeration: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_det_order: 10_000,
            max_torsion: 10_000,
            max_support: 12,
            max_vertices: 16,
            max_finite_order: 512,
            max_enumeration: 20_000_000,
        }
    }
}

impl Bounds {
    pub(crate) fn check(&self, what: &'static str, limit: u64, actual: u64) -> Result<()> {
        if actual > limit {
            Err(Error::Bound {
                what,
                limit,
                actual: actual.to_string(),
            })
        } else {
            Ok(())
        }
    }
}
