//! Exact rotation-group machinery on the unit sphere.
//!
//! Everything in this module that can be exact is exact: the two generator
//! rotations are rational matrices with 5-power denominators, group words
//! are stored reduced, products and determinants are computed over ℚ, and
//! fixed axes come out of an exact rational kernel computation.  The only
//! irrational objects — the third rotation built from a quaternion with
//! cube- and fifth-root coordinates, normalized fixed points, and their
//! inner products — live in [`alg`] behind certified interval enclosures.
//!
//! The layers:
//!
//! - **Words**: the free alphabet `{τ, τ⁻¹, σ, σ⁻¹}` with reducing
//!   concatenation, a deterministic enumeration of the free group with
//!   `f(0) = e`, and a ranked enumeration of the reduced words of a fixed
//!   length for exhaustive scans.
//! - **Matrices**: the generator rotations ρ and φ, the homomorphism
//!   `w ↦ g(w)` into SO(3), and a freeness check that runs both an exact
//!   5^len-scaled integer route and a mod-5 route and insists they agree.
//! - **Decomposition**: the classical four-piece paradoxical decomposition
//!   of the free group by first letters, checked exhaustively — partition
//!   plus both doubling laws — rather than quoted.
//! - **Fixed points**: exact rational fixed axes of nontrivial group
//!   elements via cross products of the rows of `g(w) − I`, deduplicated
//!   projectively, feeding the countable fixed-point set `D` whose
//!   interval-certified geometry lives in [`alg`].

pub mod alg;

pub use alg::{
    alpha_axis_enclosure, alpha_matrix, combination_index, on_sphere_tolerance, piece16_classify,
    separation_check, unit_fixed_point, AlgMatrix3, AlgVec3, MockTransversal,
    SeparationCertificate, SphereClassification, TransversalOracle,
};

use crate::exec;
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Errors from the sphere layer.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    /// The kernel of `g(w) − I` did not have dimension exactly one.  For a
    /// nontrivial rotation this cannot happen, so seeing it means the word
    /// machinery handed an identity (or a non-rotation) to the axis solver.
    #[error("kernel of g(w) - I has dimension {0}, expected 1")]
    DegenerateKernel(usize),
    /// A point handed to the sphere classifier is not on the unit sphere.
    #[error("point is not on the unit sphere: |p|^2 = {0}")]
    NotOnSphere(String),
    /// Interval refinement hit its precision cap before certifying.
    #[error("refinement exhausted at {0} bits without separating all pairs")]
    RefinementExhausted(u32),
}

// ----------------------------------------------------------------------
// Words
// ----------------------------------------------------------------------

/// A generator letter of the free group on two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// τ, sent to the rotation ρ.
    Tau,
    /// τ⁻¹.
    TauInv,
    /// σ, sent to the rotation φ.
    Sigma,
    /// σ⁻¹.
    SigmaInv,
}

impl Letter {
    /// All four letters, in the fixed enumeration order.
    pub const ALL: [Letter; 4] = [Letter::Tau, Letter::TauInv, Letter::Sigma, Letter::SigmaInv];

    /// The inverse letter.
    pub fn inverse(self) -> Letter {
        match self {
            Letter::Tau => Letter::TauInv,
            Letter::TauInv => Letter::Tau,
            Letter::Sigma => Letter::SigmaInv,
            Letter::SigmaInv => Letter::Sigma,
        }
    }

    /// Display symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::Tau => "τ",
            Letter::TauInv => "τ⁻¹",
            Letter::Sigma => "σ",
            Letter::SigmaInv => "σ⁻¹",
        }
    }
}

/// A reduced word over `{τ, τ⁻¹, σ, σ⁻¹}`; the empty word is the identity.
///
/// Reduction (cancelling adjacent inverse pairs) is maintained as an
/// invariant by every constructor, so equality of values is equality in
/// the free group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    /// The identity (empty word).
    pub fn identity() -> Self {
        GroupWord {
            letters: Vec::new(),
        }
    }

    /// The one-letter word.
    pub fn single(l: Letter) -> Self {
        GroupWord { letters: vec![l] }
    }

    /// Build from letters, reducing as they are appended.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Vec::new();
        for l in letters {
            push_reduce(&mut out, l);
        }
        GroupWord { letters: out }
    }

    /// The reduced letters.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Reduced length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Whether this is the identity.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Synonym for [`GroupWord::is_empty`] that reads as group theory.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// First letter of the reduced form, if any.
    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    /// Group product `self · other`, reduced at the seam.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduce(&mut out, l);
        }
        GroupWord { letters: out }
    }

    /// Group inverse (letters reversed and inverted; stays reduced).
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Whether the word is `σ⁻ⁿ` for some `n ≥ 0` (the identity counts).
    pub fn is_sigma_inv_power(&self) -> bool {
        self.letters.iter().all(|&l| l == Letter::SigmaInv)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

fn push_reduce(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// The fixed enumeration `f : ℕ → F₂` with `f(0) = e`.
///
/// For `n > 0`, write `n` in *bijective* base 4 — digits `1..=4`, every
/// positive integer getting exactly one string — and map the digits, most
/// significant first, through [`Letter::ALL`] (digit `d` to position
/// `d − 1`).  The resulting string is then reduced.  Because every string
/// over the four letters is the image of exactly one `n`, every reduced
/// word appears as its own string (a reduced string reduces to itself), so
/// the enumeration is surjective onto the free group — no fixpoint search
/// is ever needed to realize a word.
pub fn enum_word(n: u64) -> GroupWord {
    let mut digits = Vec::new();
    let mut n = n;
    while n > 0 {
        let mut d = n % 4;
        if d == 0 {
            d = 4;
        }
        digits.push(d as usize - 1);
        n = (n - d) / 4;
    }
    GroupWord::from_letters(digits.into_iter().rev().map(|d| Letter::ALL[d]))
}

/// How many reduced words have exactly this length (`1` for the identity,
/// `4·3^{len−1}` otherwise).
pub fn count_reduced(len: usize) -> u64 {
    if len == 0 {
        1
    } else {
        4 * 3u64.pow(len as u32 - 1)
    }
}

/// The `i`-th reduced word of exactly the given length, in a fixed
/// mixed-radix order: 4 choices for the first letter, then 3 for each
/// subsequent position (anything but the previous letter's inverse),
/// ordered by [`Letter::ALL`].
///
/// Ranked access is what makes exhaustive scans embarrassingly parallel:
/// workers take disjoint index ranges with no shared enumeration state.
pub fn unrank_reduced(len: usize, i: u64) -> GroupWord {
    assert!(i < count_reduced(len), "rank out of range for this length");
    if len == 0 {
        return GroupWord::identity();
    }
    let mut letters = Vec::with_capacity(len);
    let mut base = 3u64.pow(len as u32 - 1);
    let mut rem = i;
    letters.push(Letter::ALL[(rem / base) as usize]);
    rem %= base;
    for _ in 1..len {
        base /= 3;
        let d = (rem / base) as usize;
        rem %= base;
        let prev = *letters.last().expect("nonempty");
        let choice = Letter::ALL
            .iter()
            .copied()
            .filter(|&l| l != prev.inverse())
            .nth(d)
            .expect("three continuations per letter");
        letters.push(choice);
    }
    GroupWord { letters }
}

// ----------------------------------------------------------------------
// Matrices
// ----------------------------------------------------------------------

/// A 3×3 matrix of exact rationals.
///
/// Group elements additionally satisfy — and the tests check — exact
/// orthogonality `M·Mᵀ = I`, determinant 1, and 5-power denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix3 {
    e: [[Rat; 3]; 3],
}

impl RatMatrix3 {
    /// The identity matrix.
    pub fn identity() -> Self {
        RatMatrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })
            }),
        }
    }

    /// Build from integer entries over a common denominator.
    pub fn from_scaled(rows: [[i64; 3]; 3], denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        RatMatrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| Rat::new(BigInt::from(rows[i][j]), BigInt::from(denom)))
            }),
        }
    }

    /// Entry at row `i`, column `j` (0-based).
    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.e[i][j]
    }

    /// Matrix product.
    pub fn mul(&self, other: &RatMatrix3) -> RatMatrix3 {
        RatMatrix3 {
            e: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    (0..3).map(|k| &self.e[i][k] * &other.e[k][j]).sum()
                })
            }),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> RatMatrix3 {
        RatMatrix3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| self.e[j][i].clone())),
        }
    }

    /// Exact determinant.
    pub fn det(&self) -> Rat {
        let m = &self.e;
        let c0 = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
        let c1 = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
        let c2 = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
        &m[0][0] * c0 - &m[0][1] * c1 + &m[0][2] * c2
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rat; 3]) -> [Rat; 3] {
        std::array::from_fn(|i| (0..3).map(|k| &self.e[i][k] * &v[k]).sum())
    }

    /// Whether this is exactly the identity.
    pub fn is_identity(&self) -> bool {
        *self == RatMatrix3::identity()
    }

    /// Exact check of `M·Mᵀ = I` and `det M = 1`.
    pub fn is_special_orthogonal(&self) -> bool {
        self.mul(&self.transpose()).is_identity() && self.det().is_one()
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &RatMatrix3) -> RatMatrix3 {
        RatMatrix3 {
            e: std::array::from_fn(|i| std::array::from_fn(|j| &self.e[i][j] - &other.e[i][j])),
        }
    }
}

/// The generator rotation ρ: a rotation in the xy-plane fixing the z-axis.
pub fn rho() -> RatMatrix3 {
    RatMatrix3::from_scaled([[3, 4, 0], [-4, 3, 0], [0, 0, 5]], 5)
}

/// The generator rotation φ: a rotation in the yz-plane fixing the x-axis.
pub fn phi() -> RatMatrix3 {
    RatMatrix3::from_scaled([[5, 0, 0], [0, 3, 4], [0, -4, 3]], 5)
}

/// The 5-scaled integer matrix of one letter (`5·g(letter)`).  Inverses are
/// transposes because the generators are exactly orthogonal.
fn letter_scaled(l: Letter) -> [[i64; 3]; 3] {
    match l {
        Letter::Tau => [[3, 4, 0], [-4, 3, 0], [0, 0, 5]],
        Letter::TauInv => [[3, -4, 0], [4, 3, 0], [0, 0, 5]],
        Letter::Sigma => [[5, 0, 0], [0, 3, 4], [0, -4, 3]],
        Letter::SigmaInv => [[5, 0, 0], [0, 3, -4], [0, 4, 3]],
    }
}

/// The homomorphism `g` from words to rotations: the product of the
/// letters' matrices, exactly; the identity word maps to `I`.
pub fn word_to_matrix(w: &GroupWord) -> RatMatrix3 {
    let mut acc = RatMatrix3::identity();
    for &l in w.letters() {
        acc = acc.mul(&RatMatrix3::from_scaled(letter_scaled(l), 5));
    }
    acc
}

/// `5^len · g(w)` as an exact integer matrix — the all-integer route used
/// by the freeness check.
fn word_scaled_int(w: &GroupWord) -> [[BigInt; 3]; 3] {
    let mut acc: [[BigInt; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() })
    });
    for &l in w.letters() {
        let m = letter_scaled(l);
        acc = std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).map(|k| &acc[i][k] * m[k][j]).sum())
        });
    }
    acc
}

/// The same product reduced mod 5 the whole way.
fn word_mod5(w: &GroupWord) -> [[u8; 3]; 3] {
    let mut acc: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for &l in w.letters() {
        let m = letter_scaled(l);
        let mm: [[u8; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| (m[i][j].rem_euclid(5)) as u8));
        acc = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).map(|k| u32::from(acc[i][k]) * u32::from(mm[k][j])).sum::<u32>() as u8 % 5
            })
        });
    }
    acc
}

fn is_scaled_identity(m: &[[BigInt; 3]; 3], len: usize) -> bool {
    let five_len = BigInt::from(5).pow(len as u32);
    (0..3).all(|i| {
        (0..3).all(|j| {
            if i == j {
                m[i][j] == five_len
            } else {
                m[i][j].is_zero()
            }
        })
    })
}

/// Certificate of a freeness sweep: every nontrivial reduced word of
/// length up to the horizon mapped to a non-identity rotation, by two
/// independent exact routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    /// Longest word length checked.
    pub max_len: usize,
    /// Reduced words of exactly the maximal length (`4·3^{max_len−1}`).
    pub words_at_max_len: u64,
    /// Total nontrivial reduced words checked (all lengths `1..=max_len`).
    pub words_checked: u64,
    /// Words whose rotation was the identity — must be zero.
    pub identity_collisions: u64,
    /// Words where the exact route and the mod-5 route disagreed — must be
    /// zero.
    pub mod5_disagreements: u64,
}

/// Check freeness of the rotation group on all nontrivial reduced words of
/// length `1..=max_len`.
///
/// Two certificates per word, which must agree:
///
/// - **exact**: the 5^len-scaled integer product differs from `5^len·I`;
/// - **mod 5**: the product of the scaled generators reduced mod 5 is a
///   nonzero matrix.  Since `5^len·I ≡ 0 (mod 5)` for `len ≥ 1`, a nonzero
///   mod-5 product already forces the exact product off the identity —
///   the classical argument runs this route; here it is checked, not
///   quoted, and cross-checked against the full-precision route.
///
/// The per-length sweeps run in parallel over ranked word indices.
pub fn freeness_check(max_len: usize) -> FreenessCertificate {
    assert!(max_len >= 1, "freeness horizon must be at least 1");
    let mut words_checked = 0u64;
    let mut identity_collisions = 0u64;
    let mut mod5_disagreements = 0u64;
    for len in 1..=max_len {
        let outcomes = exec::map_indexed(count_reduced(len) as usize, |i| {
            let w = unrank_reduced(len, i as u64);
            let exact_nonidentity = !is_scaled_identity(&word_scaled_int(&w), len);
            let mod5_nonzero = word_mod5(&w).iter().flatten().any(|&x| x != 0);
            (exact_nonidentity, mod5_nonzero)
        });
        for (exact_nonidentity, mod5_nonzero) in outcomes {
            words_checked += 1;
            if !exact_nonidentity {
                identity_collisions += 1;
            }
            if exact_nonidentity != mod5_nonzero {
                mod5_disagreements += 1;
            }
        }
    }
    FreenessCertificate {
        max_len,
        words_at_max_len: count_reduced(max_len),
        words_checked,
        identity_collisions,
        mod5_disagreements,
    }
}

// ----------------------------------------------------------------------
// The four-piece decomposition
// ----------------------------------------------------------------------

/// Index of a decomposition piece: `1..=4` for the free-group
/// decomposition, `1..=16` for the sphere bookkeeping combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PieceIndex(u8);

impl PieceIndex {
    /// Wrap an index, enforcing the `1..=16` range invariant.
    pub fn new(i: u8) -> Self {
        assert!((1..=16).contains(&i), "piece index out of range: {i}");
        PieceIndex(i)
    }

    /// The underlying index.
    pub fn get(self) -> u8 {
        self.0
    }
}

impl fmt::Display for PieceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn in_a1(w: &GroupWord) -> bool {
    w.first() == Some(Letter::Tau)
}

fn in_a2(w: &GroupWord) -> bool {
    w.first() == Some(Letter::TauInv)
}

fn in_a3(w: &GroupWord) -> bool {
    w.first() == Some(Letter::Sigma) || w.is_sigma_inv_power()
}

fn in_a4(w: &GroupWord) -> bool {
    w.first() == Some(Letter::SigmaInv) && !w.is_sigma_inv_power()
}

/// The classical four-piece classification of a free-group element by the
/// first letter of its reduced word:
///
/// - `A₁`: first letter τ;
/// - `A₂`: first letter τ⁻¹;
/// - `A₃`: first letter σ, or the word is `σ⁻ⁿ` for some `n ≥ 0`
///   (the identity lands here);
/// - `A₄`: first letter σ⁻¹ and not of the form `σ⁻ⁿ`.
///
/// The σ⁻-power carve-out is what turns the naive first-letter split into
/// an exact partition satisfying both doubling laws; see
/// [`decomposition_check`].
pub fn classify_piece(w: &GroupWord) -> PieceIndex {
    let i = if in_a1(w) {
        1
    } else if in_a2(w) {
        2
    } else if in_a3(w) {
        3
    } else {
        4
    };
    PieceIndex::new(i)
}

/// Exhaustive verification report for the four-piece decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// Longest word length checked.
    pub max_len: usize,
    /// Words checked (all reduced words of length `0..=max_len`).
    pub words_checked: u64,
    /// Words per piece; sums to `words_checked`.
    pub piece_counts: [u64; 4],
    /// Words in not-exactly-one piece — must be zero.
    pub partition_violations: u64,
    /// Words breaking `F₂ = A₁ ⊔ τ·A₂` — must be zero.
    pub first_copy_violations: u64,
    /// Words breaking `F₂ = A₃ ⊔ σ·A₄` — must be zero.
    pub second_copy_violations: u64,
}

/// Exhaustively verify, on every reduced word of length at most `max_len`,
/// that the four pieces partition the group and satisfy the two doubling
/// laws `F₂ = A₁ ⊔ τ·A₂` and `F₂ = A₃ ⊔ σ·A₄` (membership of `w` in
/// `τ·A₂` meaning `τ⁻¹·w ∈ A₂`, with the product reduced).
///
/// The laws are the engine of the paradox — each says two of the pieces
/// reassemble into the whole group — and they are checked here by direct
/// enumeration rather than trusted.
pub fn decomposition_check(max_len: usize) -> DecompositionReport {
    assert!(max_len >= 2, "decomposition horizon must be at least 2");
    let tau_inv = GroupWord::single(Letter::TauInv);
    let sigma_inv = GroupWord::single(Letter::SigmaInv);
    let mut report = DecompositionReport {
        max_len,
        words_checked: 0,
        piece_counts: [0; 4],
        partition_violations: 0,
        first_copy_violations: 0,
        second_copy_violations: 0,
    };
    for len in 0..=max_len {
        let rows = exec::map_indexed(count_reduced(len) as usize, |i| {
            let w = unrank_reduced(len, i as u64);
            let memberships = [in_a1(&w), in_a2(&w), in_a3(&w), in_a4(&w)];
            let piece = classify_piece(&w);
            let partition_ok = memberships.iter().filter(|&&b| b).count() == 1
                && memberships[piece.get() as usize - 1];
            let first_copy_ok = in_a1(&w) != in_a2(&tau_inv.concat(&w));
            let second_copy_ok = in_a3(&w) != in_a4(&sigma_inv.concat(&w));
            (piece, partition_ok, first_copy_ok, second_copy_ok)
        });
        for (piece, partition_ok, first_copy_ok, second_copy_ok) in rows {
            report.words_checked += 1;
            report.piece_counts[piece.get() as usize - 1] += 1;
            if !partition_ok {
                report.partition_violations += 1;
            }
            if !first_copy_ok {
                report.first_copy_violations += 1;
            }
            if !second_copy_ok {
                report.second_copy_violations += 1;
            }
        }
    }
    report
}

// ----------------------------------------------------------------------
// Fixed axes
// ----------------------------------------------------------------------

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    (0..3).map(|i| &a[i] * &b[i]).sum()
}

/// Exact projective equality: two nonzero rational vectors point along the
/// same line exactly when their cross product vanishes.  This is the
/// duplicate-axis test — no numeric comparison is ever involved.
pub fn axes_parallel(a: &[Rat; 3], b: &[Rat; 3]) -> bool {
    cross(a, b).iter().all(|c| c.is_zero())
}

/// Scale a rational direction to the canonical representative of its line:
/// coprime integer coordinates with the first nonzero one positive.
fn canonical_direction(v: [Rat; 3]) -> [Rat; 3] {
    let mut denom_lcm = BigInt::one();
    for x in &v {
        denom_lcm = num_integer::Integer::lcm(&denom_lcm, x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::Integer::gcd(&g, x);
    }
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).map(Signed::is_negative) == Some(true) {
        for x in ints.iter_mut() {
            *x = -&*x;
        }
    }
    [
        Rat::from_integer(ints[0].clone()),
        Rat::from_integer(ints[1].clone()),
        Rat::from_integer(ints[2].clone()),
    ]
}

/// The exact rational fixed axis of a nontrivial group element: the
/// one-dimensional kernel of `g(w) − I`, canonically scaled (coprime
/// integers, first nonzero coordinate positive).  The two unit fixed
/// points of the rotation are `±v/|v|`; normalization is deferred to
/// interval arithmetic at the point of use so this layer stays exact.
///
/// The kernel is read off cross products: for a rank-2 matrix the cross
/// product of two independent rows spans the kernel.
///
/// # Errors
///
/// [`SphereError::DegenerateKernel`] when the kernel dimension is not 1 —
/// dimension 3 for the identity word, and other dimensions only if the
/// invariant "nontrivial reduced words are nontrivial rotations" were
/// breached (the freeness check exists to rule that out).
pub fn fixed_axis(w: &GroupWord) -> Result<[Rat; 3], SphereError> {
    let g = word_to_matrix(w);
    let d = g.sub(&RatMatrix3::identity());
    if !d.det().is_zero() {
        return Err(SphereError::DegenerateKernel(0));
    }
    let rows: [[Rat; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| d.entry(i, j).clone()));
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&rows[i], &rows[j]);
        if !c.iter().all(|x| x.is_zero()) {
            let v = canonical_direction(c);
            let gv = g.mul_vec(&v);
            assert_eq!(gv, v, "kernel vector must be fixed by the rotation");
            return Ok(v);
        }
    }
    // All row pairs dependent: rank ≤ 1, kernel dimension ≥ 2.
    let rank0 = rows.iter().flatten().all(|x| x.is_zero());
    Err(SphereError::DegenerateKernel(if rank0 { 3 } else { 2 }))
}

/// The first `count` projectively distinct fixed axes, in enumeration
/// order of their witnessing words: scan `f(1), f(2), …`, skip words that
/// reduce to the identity, and keep axes not parallel to any kept one.
/// Antipodal fixed points collapse automatically — they share an axis.
pub fn enumerate_axes(count: usize) -> Result<Vec<[Rat; 3]>, SphereError> {
    let mut axes: Vec<[Rat; 3]> = Vec::with_capacity(count);
    let mut n = 0u64;
    while axes.len() < count {
        n += 1;
        assert!(n <= 1_000_000, "axis enumeration stalled — invariant breach");
        let w = enum_word(n);
        if w.is_identity() {
            continue;
        }
        let v = fixed_axis(&w)?;
        if axes.iter().any(|a| axes_parallel(a, &v)) {
            continue;
        }
        axes.push(v);
    }
    Ok(axes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};
    use std::collections::HashSet;

    fn word(s: &[Letter]) -> GroupWord {
        GroupWord::from_letters(s.iter().copied())
    }

    #[test]
    fn generator_matrices_are_exact_rotations() {
        for m in [rho(), phi()] {
            assert!(m.is_special_orthogonal());
            // 5-power denominators, exactly.
            for i in 0..3 {
                for j in 0..3 {
                    assert!((m.entry(i, j) * Rat::from_integer(5.into())).is_integer());
                }
            }
        }
        // ρ fixes the z-axis: third column (0, 0, 1)ᵀ.
        assert_eq!(*rho().entry(0, 2), rat_i(0));
        assert_eq!(*rho().entry(1, 2), rat_i(0));
        assert_eq!(*rho().entry(2, 2), rat_i(1));
        // Spot entries.
        assert_eq!(*rho().entry(0, 0), rat(3, 5));
        assert_eq!(*rho().entry(0, 1), rat(4, 5));
        assert_eq!(*phi().entry(2, 1), rat(-4, 5));
    }

    #[test]
    fn word_reduction_and_group_operations() {
        let e = GroupWord::identity();
        assert!(e.is_identity());
        assert_eq!(e.to_string(), "e");

        // ττ⁻¹ reduces away entirely.
        let w = word(&[Letter::Tau, Letter::TauInv]);
        assert!(w.is_identity());

        // στ τ⁻¹σ → σσ (reduction at the concat seam).
        let a = word(&[Letter::Sigma, Letter::Tau]);
        let b = word(&[Letter::TauInv, Letter::Sigma]);
        assert_eq!(a.concat(&b), word(&[Letter::Sigma, Letter::Sigma]));

        // w·w⁻¹ = e.
        let c = word(&[Letter::Tau, Letter::Sigma, Letter::TauInv]);
        assert!(c.concat(&c.inverse()).is_identity());
        assert_eq!(c.to_string(), "τστ⁻¹");

        assert!(word(&[Letter::SigmaInv, Letter::SigmaInv]).is_sigma_inv_power());
        assert!(GroupWord::identity().is_sigma_inv_power());
        assert!(!word(&[Letter::SigmaInv, Letter::Tau]).is_sigma_inv_power());
    }

    #[test]
    fn enumeration_starts_at_identity_and_reaches_every_short_word() {
        assert!(enum_word(0).is_identity());
        // f(1) is the single generator at digit-map position 0, i.e. τ.
        assert_eq!(enum_word(1), GroupWord::single(Letter::Tau));
        assert_eq!(enum_word(2), GroupWord::single(Letter::TauInv));
        assert_eq!(enum_word(3), GroupWord::single(Letter::Sigma));
        assert_eq!(enum_word(4), GroupWord::single(Letter::SigmaInv));

        // Every reduced word of length ≤ 4 appears among f(0..4⁵).
        let seen: HashSet<GroupWord> = (0..4u64.pow(5)).map(enum_word).collect();
        for len in 0..=4usize {
            for i in 0..count_reduced(len) {
                let w = unrank_reduced(len, i);
                assert!(seen.contains(&w), "missing word {w} of length {len}");
            }
        }
    }

    #[test]
    fn ranked_word_enumeration_is_reduced_and_complete() {
        // Counts: 1, 4, 12, 36.
        assert_eq!(count_reduced(0), 1);
        assert_eq!(count_reduced(1), 4);
        assert_eq!(count_reduced(2), 12);
        assert_eq!(count_reduced(3), 36);
        // All ranks of a length are distinct, reduced, and that long.
        let mut seen = HashSet::new();
        for i in 0..count_reduced(3) {
            let w = unrank_reduced(3, i);
            assert_eq!(w.len(), 3, "unranked word must not reduce");
            assert!(seen.insert(w));
        }
    }

    #[test]
    fn homomorphism_respects_products_and_inverses() {
        assert!(word_to_matrix(&GroupWord::identity()).is_identity());
        assert!(word_to_matrix(&word(&[Letter::Tau, Letter::TauInv])).is_identity());

        // g(τσ) = ρ·φ, entries with denominator 25.
        let ts = word_to_matrix(&word(&[Letter::Tau, Letter::Sigma]));
        assert_eq!(ts, rho().mul(&phi()));
        assert!((ts.entry(0, 1) * Rat::from_integer(25.into())).is_integer());

        // Homomorphism on a sample pair and inverse-as-transpose.
        let u = word(&[Letter::Sigma, Letter::Tau, Letter::Sigma]);
        let v = word(&[Letter::SigmaInv, Letter::Tau]);
        assert_eq!(
            word_to_matrix(&u.concat(&v)),
            word_to_matrix(&u).mul(&word_to_matrix(&v))
        );
        assert_eq!(word_to_matrix(&u.inverse()), word_to_matrix(&u).transpose());

        // Orthogonality and det 1 hold exactly out to length 4.
        for len in 1..=4usize {
            for i in 0..count_reduced(len) {
                assert!(word_to_matrix(&unrank_reduced(len, i)).is_special_orthogonal());
            }
        }
    }

    #[test]
    fn freeness_certificates_at_short_lengths() {
        let l1 = freeness_check(1);
        assert_eq!(l1.words_checked, 4);
        assert_eq!(l1.words_at_max_len, 4);
        assert_eq!(l1.identity_collisions, 0);
        assert_eq!(l1.mod5_disagreements, 0);

        // The commutator ρφρ⁻¹φ⁻¹ is not the identity.
        let comm = word(&[Letter::Tau, Letter::Sigma, Letter::TauInv, Letter::SigmaInv]);
        assert!(!word_to_matrix(&comm).is_identity());

        // 4 + 12 + 36 = 52 words through length 3.
        let l3 = freeness_check(3);
        assert_eq!(l3.words_checked, 52);
        assert_eq!(l3.words_at_max_len, 36);
        assert_eq!(l3.identity_collisions, 0);
        assert_eq!(l3.mod5_disagreements, 0);
    }

    #[test]
    fn pieces_partition_and_satisfy_the_paradox_laws() {
        // Pinned memberships.
        assert_eq!(classify_piece(&GroupWord::identity()).get(), 3);
        assert_eq!(classify_piece(&word(&[Letter::Tau, Letter::Sigma])).get(), 1);
        assert_eq!(classify_piece(&word(&[Letter::SigmaInv, Letter::Tau])).get(), 4);
        assert_eq!(classify_piece(&word(&[Letter::SigmaInv; 3])).get(), 3);
        assert_eq!(classify_piece(&word(&[Letter::TauInv, Letter::Sigma])).get(), 2);

        // σ is covered by the first law through τ·A₂, not A₁.
        let sigma = GroupWord::single(Letter::Sigma);
        assert!(!in_a1(&sigma));
        assert!(in_a2(&GroupWord::single(Letter::TauInv).concat(&sigma)));

        let report = decomposition_check(6);
        // Census: 1 + Σ_{j=1..6} 4·3^{j−1} = 1457 reduced words.
        assert_eq!(report.words_checked, 1457);
        assert_eq!(report.piece_counts.iter().sum::<u64>(), 1457);
        assert_eq!(report.partition_violations, 0);
        assert_eq!(report.first_copy_violations, 0);
        assert_eq!(report.second_copy_violations, 0);
    }

    #[test]
    fn fixed_axes_are_exact_eigenvectors() {
        // ρ rotates the xy-plane, so its axis is the z-axis; φ fixes x.
        assert_eq!(
            fixed_axis(&GroupWord::single(Letter::Tau)).unwrap(),
            [rat_i(0), rat_i(0), rat_i(1)]
        );
        assert_eq!(
            fixed_axis(&GroupWord::single(Letter::Sigma)).unwrap(),
            [rat_i(1), rat_i(0), rat_i(0)]
        );

        // The identity has a three-dimensional kernel, which is refused.
        assert_eq!(
            fixed_axis(&GroupWord::identity()),
            Err(SphereError::DegenerateKernel(3))
        );

        // The eigen-equation g(w)·v = v holds exactly for every reduced
        // word of length ≤ 4 (the axis solver also asserts it internally).
        for len in 1..=4usize {
            for i in 0..count_reduced(len) {
                let w = unrank_reduced(len, i);
                let v = fixed_axis(&w).unwrap();
                assert_eq!(word_to_matrix(&w).mul_vec(&v), v);
            }
        }
    }

    #[test]
    fn axis_enumeration_dedups_projectively() {
        let axes = enumerate_axes(6).unwrap();
        assert_eq!(axes.len(), 6);
        // First two witnesses: τ = f(1) gives the z-axis; τ⁻¹ = f(2)
        // duplicates it, σ = f(3) gives the x-axis.
        assert_eq!(axes[0], [rat_i(0), rat_i(0), rat_i(1)]);
        assert_eq!(axes[1], [rat_i(1), rat_i(0), rat_i(0)]);
        for i in 0..axes.len() {
            for j in 0..i {
                assert!(!axes_parallel(&axes[i], &axes[j]));
            }
        }
        // Canonical scaling: coprime integers, first nonzero positive.
        for a in &axes {
            assert!(a.iter().all(Rat::is_integer));
        }
    }

    #[test]
    fn projective_equality_is_scaling_invariant() {
        let v = [rat(3, 7), rat_i(-2), rat_i(0)];
        let w = [rat(-9, 7), rat_i(6), rat_i(0)];
        assert!(axes_parallel(&v, &w));
        let u = [rat(3, 7), rat_i(-2), rat_i(1)];
        assert!(!axes_parallel(&v, &u));
        assert_eq!(dot(&v, &w), rat(-9 * 3, 49) + rat_i(-12));
    }
}
