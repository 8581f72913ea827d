//! Exact machinery for quantified integer polynomials that carve out
//! pathological sets.
//!
//! The crate builds, emits and evaluates expressions of the form
//! `inf/sup ... inf/sup p(...)` where `p` has integer coefficients and the
//! quantifiers range over naturals, integers or reals.  Everything that can be
//! checked at desk scale is checked with exact arithmetic: sparse big-integer
//! polynomials and expression DAGs ([`expr`]), basic-neighborhood codings of
//! Polish spaces ([`coding`]), computably enumerable covers and the derived
//! solvability sets ([`ce`]), universal-polynomial bookkeeping including a
//! 28-unknown universal polynomial with a degree-`2*5^60` term ([`universal`]),
//! the polynomial-engineering pipeline ([`forge`]), budgeted inf/sup
//! evaluation with certified verdicts ([`evaluate`]), and an exactly verified
//! free group of rotations behind a sphere decomposition ([`sphere`]).

pub mod ce;
pub mod coding;
pub mod evaluate;
pub mod exec;
pub mod expr;
pub mod forge;
pub mod rat;
pub mod sphere;
pub mod universal;
