//! Exact symbolic expressions: sparse polynomials, hash-consed DAGs, and
//! quantified formulas built from them.
//!
//! Everything here is exact.  Coefficients are [`BigInt`]s, exponents are
//! [`BigUint`]s (so a single factor may carry an exponent like 5^60 without
//! expansion), and degrees live in [`Degree`], which adjoins `-inf` for the
//! zero polynomial.
//!
//! Variables are interned once in a [`VarTable`]; polynomials and DAGs over
//! the same table share it through [`Vars`].  Monomial order is graded
//! lexicographic with earlier-declared variables weighing more, so the
//! declaration order of the table fixes all printed term orders.

use num_bigint::BigUint;
use std::fmt;
use std::sync::Arc;

pub mod dag;
pub mod poly;
pub mod quant;

pub use dag::{DagBuilder, ExprDag, Node, NodeId};
pub use poly::{Monomial, Polynomial};
pub use quant::{Dom, EmitFormat, Matrix, Quant, QuantBlock, QuantifiedExpr};

/// Total degree of an expression, with `-inf` for the zero polynomial.
///
/// `MinusInfinity < Finite(d)` for every `d`, and `Finite` compares by value,
/// so the derived order is the usual degree order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    /// Degree of the zero polynomial.
    MinusInfinity,
    /// Ordinary total degree.
    Finite(BigUint),
}

impl Degree {
    /// Finite degree from a machine integer.
    pub fn finite(d: u64) -> Self {
        Degree::Finite(BigUint::from(d))
    }

    /// `max` respecting `-inf` as bottom (degree of a sum).
    pub fn join(&self, other: &Degree) -> Degree {
        std::cmp::max(self, other).clone()
    }

    /// Degree of a product: finite degrees add, `-inf` absorbs.
    pub fn add(&self, other: &Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }

    /// Degree of a power: finite degrees scale, `-inf` stays (for `e > 0`).
    ///
    /// By convention a zeroth power is the constant one, degree zero, even
    /// for a zero base.
    pub fn pow(&self, e: &BigUint) -> Degree {
        use num_traits::Zero;
        if e.is_zero() {
            return Degree::finite(0);
        }
        match self {
            Degree::Finite(d) => Degree::Finite(d * e),
            Degree::MinusInfinity => Degree::MinusInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Index of a variable in its [`VarTable`] (also its monomial-order weight:
/// lower index means declared earlier means compared first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    /// Position in the owning table.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An immutable, ordered list of variable names.
///
/// The order is the declaration order and doubles as the monomial tie-break
/// order.  Names must be unique.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    /// Build a table from names, rejecting duplicates and empty names.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Arc<Self>, ExprError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(ExprError::BadVarName(String::new()));
            }
            if !seen.insert(n.clone()) {
                return Err(ExprError::DuplicateVar(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True when the table declares no variables.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Name of a variable.
    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    /// Look a name up.
    pub fn id(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(|i| VarId(i as u32))
    }

    /// All ids in declaration order.
    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len() as u32).map(VarId)
    }

    /// All names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Shared handle to a [`VarTable`].
pub type Vars = Arc<VarTable>;

/// Errors from building, expanding, or serializing expressions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    /// A variable name was declared twice in one table.
    #[error("duplicate variable name: {0:?}")]
    DuplicateVar(String),
    /// A variable name was empty or otherwise unusable.
    #[error("bad variable name: {0:?}")]
    BadVarName(String),
    /// Two operands were built over different variable tables.
    #[error("mixed variable tables in one operation")]
    MixedTables,
    /// A variable id pointed outside its table.
    #[error("variable id {0} out of range (table has {1} variables)")]
    VarOutOfRange(u32, usize),
    /// Expansion would exceed the caller's term budget.
    #[error("expansion exceeded the term budget of {budget} (needed more than {reached})")]
    BudgetExceeded {
        /// The limit the caller set.
        budget: usize,
        /// Term count actually reached before aborting.
        reached: usize,
    },
    /// The expression contains a node with no polynomial meaning.
    #[error("expression is not a polynomial: contains {0}")]
    NotPolynomial(&'static str),
    /// A quantified formula failed a well-formedness check.
    #[error("malformed quantified expression: {0}")]
    Malformed(String),
    /// JSON (or text) input could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),
}
