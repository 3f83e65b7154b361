use alloc::string::String;
use alloc::vec::Vec;

/// Every failure the library reports. Witness indices are element indices
/// of the group or abelian group the variant talks about.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("table is empty")]
    EmptyTable,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    NotClosed { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),

    #[error("invalid invariant factors {0:?}: need d >= 2 and each dividing the next")]
    BadInvariantFactors(Vec<u64>),
    #[error("abelian group of order {0} is too large")]
    GroupTooLarge(u128),

    #[error("expected {expected} maps, found {found}")]
    WrongMapCount { expected: usize, found: usize },
    #[error("map for actor element {actor} has a bad shape or out-of-range image")]
    MapShape { actor: usize },
    #[error("map for actor element {0} is not a bijection")]
    NotBijective(usize),
    #[error("map for actor element {actor} is not a homomorphism at ({a}, {b})")]
    NotHomomorphic { actor: usize, a: usize, b: usize },
    #[error("maps do not compose as an action at ({0}, {1})")]
    NotAnAction(usize, usize),
    #[error("the identity acts nontrivially")]
    IdentityActsNontrivially,
    #[error("not equivariant at (sigma={0}, x={1}, a={2})")]
    NotEquivariant(usize, usize, usize),

    #[error("associativity constraint is not normalized at ({0}, {1}, {2})")]
    NotNormalized(usize, usize, usize),
    #[error("associativity constraint fails the cocycle identity at ({0}, {1}, {2}, {3})")]
    NotACocycle(usize, usize, usize, usize),
    #[error("morphisms live over different objects ({0} and {1})")]
    ObjectMismatch(usize, usize),

    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("cochains have different degrees")]
    DegreeMismatch,
    #[error("operands are defined over different modules")]
    ModuleMismatch,
    #[error("cochain is not normalized at {0:?}")]
    CochainNotNormalized(Vec<usize>),
    #[error("cochain is not a cocycle: {0} fails at {1:?}")]
    CochainNotCocycle(String, Vec<usize>),

    #[error("integer overflow during elimination")]
    Overflow,
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(u64),

    #[error("factor set is not enough strict (c[{0}] != 0)")]
    NotEnoughStrict(usize),
    #[error("cocycle restricted to the triple product differs from the base constraint at ({0}, {1}, {2})")]
    XiMismatch(usize, usize, usize),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("tensor factors have different grades ({0} and {1})")]
    GradeMismatch(usize, usize),
    #[error("the two crossed products are not related by the given coboundary")]
    NotCoboundaryRelated,
}

pub type Result<T> = core::result::Result<T, Error>;
