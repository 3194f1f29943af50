use alloc::string::String;

/// Errors produced by the simulator, Hamiltonian, circuit and optimizer layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("axis is not unit-norm (|n| = {norm})")]
    InvalidAxis { norm: f64 },
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control and target must differ (both {0})")]
    SameControlTarget(usize),
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{n_qubits} qubits exceeds the limit of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },
    #[error("state is not normalized (|s|^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("non-finite coefficient in Pauli sum")]
    NonFiniteCoefficient,
    #[error("slot {slot} out of range for a circuit with {len} slots")]
    SlotOutOfRange { slot: usize, len: usize },
    #[error("slot {0} is not a parametrized gate")]
    NotParamSlot(usize),
    #[error("rotation angle {0} is a multiple of pi; use the pi-fixed update")]
    DegenerateAngle(f64),
    #[error("secular equation root finding did not converge")]
    SecularNonConvergence,
    #[error("eigensolver failed: {0}")]
    Eigensolve(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid vertex labeling: {0}")]
    InvalidLabeling(String),
    #[error("assignment entries must be +1 or -1, got {0}")]
    InvalidSpin(i8),
    #[error("assignment has {found} entries, graph has {expected} vertices")]
    AssignmentSize { expected: usize, found: usize },
    #[error("chain length must be at least 2, got {0}")]
    ChainTooShort(usize),
    #[error("layer count must be at least 1")]
    ZeroLayers,
    #[error("Hilbert-space dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("invalid bin width {0}")]
    InvalidBinWidth(f64),
    #[error("histograms with different binning cannot be merged")]
    BinningMismatch,
}

pub type Result<T> = core::result::Result<T, Error>;
