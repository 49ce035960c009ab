use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building or analysing a structure.
///
/// Element witnesses are carried by name so reports never degrade to a bare boolean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DuplicateElement(String),
    UnknownElement(String),
    NotAPoset(String, String),
    NotALattice(String, String),
    NoBounds,
    BottomNotPreserved,
    NotJoinPreserving(String, String),
    DomainMismatch,
    NotAssociative(String, String, String),
    NotBimorphic(String, String, String),
    BadUnit(String),
    BadInvolution(String, String),
    NoInvolution,
    NotSemiIntegral,
    NotSemiUnital,
    NotInvolutive,
    NotPrime(String),
    NotAHom(String),
    StructureMissing(&'static str),
    HypothesisFailed(String),
    PreconditionFailed(String),
    NucleusNotInvolutive(String),
    NotANucleus(String),
    NotAQuanticFrame(String),
    TwistNotInverse(String),
    InconsistentExtension(String),
    NotInjective,
    NotReduced(String),
    NotAFilter(&'static str, String),
    SizeCapExceeded { what: &'static str, limit: usize },
    UnknownName(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            DuplicateElement(a) => write!(f, "element {a} listed twice"),
            UnknownElement(a) => write!(f, "unknown element {a}"),
            NotAPoset(a, b) => write!(f, "not a partial order: {a} <= {b} and {b} <= {a}"),
            NotALattice(a, b) => write!(f, "not a lattice: {a} and {b} lack a least upper or greatest lower bound"),
            NoBounds => write!(f, "no top or bottom element"),
            BottomNotPreserved => write!(f, "map does not send bottom to bottom"),
            NotJoinPreserving(a, b) => write!(f, "map does not preserve the join of {a} and {b}"),
            DomainMismatch => write!(f, "maps are not composable"),
            NotAssociative(a, b, c) => write!(f, "not associative at ({a}, {b}, {c})"),
            NotBimorphic(a, b, x) => write!(f, "multiplication does not distribute: ({a} v {b}) against {x}"),
            BadUnit(e) => write!(f, "{e} is not a unit"),
            BadInvolution(a, b) => write!(f, "not an involution, witness ({a}, {b})"),
            NoInvolution => write!(f, "quantale has no involution"),
            NotSemiIntegral => write!(f, "quantale is not semi-integral"),
            NotSemiUnital => write!(f, "quantale is not semi-unital"),
            NotInvolutive => write!(f, "quantale is not involutive"),
            NotPrime(p) => write!(f, "{p} is not prime"),
            NotAHom(w) => write!(f, "not a homomorphism: {w}"),
            StructureMissing(s) => write!(f, "missing structure: {s}"),
            HypothesisFailed(h) => write!(f, "hypothesis failed: {h}"),
            PreconditionFailed(h) => write!(f, "precondition failed: {h}"),
            NucleusNotInvolutive(w) => write!(f, "nucleus is not involutive at {w}"),
            NotANucleus(w) => write!(f, "not a nucleus: {w}"),
            NotAQuanticFrame(w) => write!(f, "not a quantic frame: {w}"),
            TwistNotInverse(w) => write!(f, "twist maps are not mutually inverse at {w}"),
            InconsistentExtension(w) => write!(f, "extension from elementary tensors is inconsistent: {w}"),
            NotInjective => write!(f, "map is not injective"),
            NotReduced(w) => write!(f, "subset is not reduced at {w}"),
            NotAFilter(ax, w) => write!(f, "filter axiom {ax} fails at {w}"),
            SizeCapExceeded { what, limit } => write!(f, "{what} exceeds the cap of {limit}"),
            UnknownName(n) => write!(f, "no built-in named {n}"),
        }
    }
}

impl core::error::Error for Error {}
