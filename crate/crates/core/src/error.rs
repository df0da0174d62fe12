use thiserror::Error;

/// All errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed triangulation: {0}")]
    Malformed(String),
    #[error("face ({tet}, {face}) is multiply glued")]
    FaceMultiplyGlued { tet: usize, face: usize },
    #[error("face ({tet}, {face}) is unpaired")]
    UnpairedFace { tet: usize, face: usize },
    #[error("inconsistent inverse pairings at face ({tet}, {face})")]
    InconsistentPairing { tet: usize, face: usize },
    #[error("non-orientable triangulation (orientation sign propagation contradicts itself)")]
    NonOrientable,
    #[error("invalid permutation image {0:?}")]
    BadPermutation([u8; 4]),
    #[error("peripheral curve {name:?}: broken edge path at step {step}")]
    BrokenPath { name: String, step: usize },
    #[error("level must satisfy n >= 2, got {0}")]
    BadLevel(usize),
    #[error("odd column sum in C' row for point {0}; to_nz requires even sums")]
    OddCSum(String),
    #[error("identification signs are inconsistent: variable at {0} is forced to vanish")]
    SignConflict(String),
    #[error("non-generic decoration: |det| = {0:.3e} below threshold")]
    NonGenericDecoration(f64),
    #[error("shape coordinate too close to {0}: |z - {0}| = {1:.3e}")]
    DegenerateShape(u8, f64),
    #[error("residual {0:.3e} exceeds tolerance {1:.3e}")]
    ResidualTooLarge(f64, f64),
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no integer solution to the flattening system")]
    NoFlattening,
    #[error("rank deficiency mismatch: expected to drop {expected} dependent rows, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("no curve named {0:?} in triangulation")]
    NoSuchCurve(String),
    #[error("not a face point: {0:?}")]
    NotFacePoint([u8; 4]),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
