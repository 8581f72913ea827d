//! Outward-bounded interval arithmetic over exact rationals.
//!
//! Endpoints are rationals extended with `±∞`, so an enclosure always
//! exists: opaque calls enclose to the whole line, and powers with
//! astronomical exponents fall back to sound sign-and-magnitude bounds
//! instead of attempting the exact endpoint powers.  Everything else is
//! computed in exact rational arithmetic, which makes enclosures of `+`,
//! `·`, `-`, and moderate powers *tight*: they equal the true range.
//!
//! Every operation here is inclusion-monotone — inputs contained in wider
//! inputs produce enclosures contained in the wider results.  Two design
//! choices carry that property through the non-trivial cases:
//!
//! * [`RatInterval::pow`] picks the exact-versus-fallback branch from the
//!   exponent alone, never from the operand, so nested operands always take
//!   the same branch (and each branch is monotone on its own).
//! * [`sin_pi`] encloses point values by *dyadic cells*: an argument whose
//!   sine is rational (exactly the arguments with denominator 1, 2, or 6)
//!   evaluates exactly, and any other argument gets the unique cell
//!   `[j·2⁻ᵖ, (j+1)·2⁻ᵖ]` around its (irrational, hence never-on-grid)
//!   sine value.  Cell assignment is a monotone function of the true value,
//!   so endpoint enclosures inherit the monotonicity of `sin` on its
//!   quarter-wave pieces exactly, with no tolerance games.
//!
//! The one transcendental admitted is `sin(π·t)`.  Cells are located by an
//! alternating-series enclosure: the argument is reduced mod 2 exactly (the
//! period in `t`), folded onto the first quarter wave, and run through the
//! Taylor series of `sin` against a cached enclosure of π (Machin's
//! formula, two arctangent series), refining the working precision until
//! the series enclosure fits inside a single cell.

use crate::expr::{ExprDag, Node, NodeId};
use crate::rat::{sin_pi_exact, Rat};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// An interval endpoint: a rational or one of the two infinities.
#[derive(Clone, Debug, PartialEq)]
pub enum End {
    /// `-∞`; only valid as a lower endpoint.
    NegInf,
    /// A finite rational endpoint.
    Fin(Rat),
    /// `+∞`; only valid as an upper endpoint.
    PosInf,
}

impl End {
    fn as_fin(&self) -> Option<&Rat> {
        match self {
            End::Fin(r) => Some(r),
            _ => None,
        }
    }
}

/// A closed interval `[lo, hi]` with extended-rational endpoints.
///
/// Invariant: `lo` is never `+∞`, `hi` is never `-∞`, and when both are
/// finite `lo ≤ hi`.  An infinite endpoint means the interval is unbounded
/// on that side (the "closed" reading applies to finite endpoints only).
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    lo: End,
    hi: End,
}

impl RatInterval {
    /// `[lo, hi]` from finite rational endpoints.
    ///
    /// # Panics
    ///
    /// Panics when `lo > hi`.
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval {
            lo: End::Fin(lo),
            hi: End::Fin(hi),
        }
    }

    /// The degenerate interval `[r, r]`.
    pub fn point(r: Rat) -> Self {
        RatInterval {
            lo: End::Fin(r.clone()),
            hi: End::Fin(r),
        }
    }

    /// The whole line `(-∞, +∞)`.
    pub fn whole() -> Self {
        RatInterval {
            lo: End::NegInf,
            hi: End::PosInf,
        }
    }

    /// `[lo, +∞)`.
    pub fn at_least(lo: Rat) -> Self {
        RatInterval {
            lo: End::Fin(lo),
            hi: End::PosInf,
        }
    }

    /// `(-∞, hi]`.
    pub fn at_most(hi: Rat) -> Self {
        RatInterval {
            lo: End::NegInf,
            hi: End::Fin(hi),
        }
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &End {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &End {
        &self.hi
    }

    /// Both endpoints when finite.
    pub fn as_finite(&self) -> Option<(&Rat, &Rat)> {
        Some((self.lo.as_fin()?, self.hi.as_fin()?))
    }

    /// `hi - lo` when both endpoints are finite.
    pub fn width(&self) -> Option<Rat> {
        let (lo, hi) = self.as_finite()?;
        Some(hi - lo)
    }

    /// Does the interval contain `r`?
    pub fn contains(&self, r: &Rat) -> bool {
        let above = match &self.lo {
            End::NegInf => true,
            End::Fin(lo) => lo <= r,
            End::PosInf => false,
        };
        let below = match &self.hi {
            End::PosInf => true,
            End::Fin(hi) => r <= hi,
            End::NegInf => false,
        };
        above && below
    }

    /// Is `self` contained in `other`?
    pub fn subset_of(&self, other: &RatInterval) -> bool {
        let lo_ok = match (&other.lo, &self.lo) {
            (End::NegInf, _) => true,
            (End::Fin(o), End::Fin(s)) => o <= s,
            _ => false,
        };
        let hi_ok = match (&other.hi, &self.hi) {
            (End::PosInf, _) => true,
            (End::Fin(o), End::Fin(s)) => s <= o,
            _ => false,
        };
        lo_ok && hi_ok
    }

    /// `0 ∈ self`?
    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    /// Elementwise negation: `[-hi, -lo]`.
    pub fn neg(&self) -> RatInterval {
        let lo = match &self.hi {
            End::PosInf => End::NegInf,
            End::Fin(r) => End::Fin(-r.clone()),
            End::NegInf => unreachable!("hi is never -inf"),
        };
        let hi = match &self.lo {
            End::NegInf => End::PosInf,
            End::Fin(r) => End::Fin(-r.clone()),
            End::PosInf => unreachable!("lo is never +inf"),
        };
        RatInterval { lo, hi }
    }

    /// Minkowski sum: `[lo+lo', hi+hi']`.
    pub fn add(&self, other: &RatInterval) -> RatInterval {
        let lo = match (&self.lo, &other.lo) {
            (End::Fin(a), End::Fin(b)) => End::Fin(a + b),
            _ => End::NegInf,
        };
        let hi = match (&self.hi, &other.hi) {
            (End::Fin(a), End::Fin(b)) => End::Fin(a + b),
            _ => End::PosInf,
        };
        RatInterval { lo, hi }
    }

    /// `self + (-other)`.
    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        self.add(&other.neg())
    }

    /// Product: the hull of the four endpoint products.
    ///
    /// The convention `0 · ±∞ = 0` is sound here — an endpoint 0 means the
    /// factor's magnitude near that end shrinks to nothing, so the product
    /// set's corresponding extreme is 0.
    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let cands = [
            end_mul(&self.lo, &other.lo),
            end_mul(&self.lo, &other.hi),
            end_mul(&self.hi, &other.lo),
            end_mul(&self.hi, &other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if end_lt(c, &lo) {
                lo = c.clone();
            }
            if end_lt(&hi, c) {
                hi = c.clone();
            }
        }
        // A product's extremes can land on either infinity.
        let lo = if matches!(lo, End::PosInf) { End::NegInf } else { lo };
        let hi = if matches!(hi, End::NegInf) { End::PosInf } else { hi };
        RatInterval { lo, hi }
    }

    /// `1/self`; the whole line when the interval contains 0.
    pub fn recip(&self) -> RatInterval {
        if self.contains_zero() {
            return RatInterval::whole();
        }
        let inv = |e: &End| -> End {
            match e {
                End::Fin(r) => End::Fin(r.recip()),
                // 1/±∞: the reciprocal approaches 0 from the matching side.
                End::NegInf | End::PosInf => End::Fin(Rat::zero()),
            }
        };
        // Sign is constant (0 excluded), so the order just flips.
        RatInterval {
            lo: inv(&self.hi),
            hi: inv(&self.lo),
        }
    }

    /// Quotient: `self · (1/other)`.
    pub fn div(&self, other: &RatInterval) -> RatInterval {
        self.mul(&other.recip())
    }

    /// `self^e` for a natural exponent.
    ///
    /// Exponents up to [`POW_EXP_CAP`] with finite endpoints are computed
    /// exactly, with even/odd monotonicity analysis, so the result is the
    /// true range.  Beyond the cap (or on unbounded operands) the result
    /// falls back to sound magnitude bounds: operands inside `[-1, 1]` stay
    /// inside `[-1, 1]` (refined by sign and parity), and anything else
    /// becomes a half line or the whole line.  The branch is chosen by the
    /// exponent alone — never by the operand — so nested operands take the
    /// same branch, which keeps the operation inclusion-monotone.
    pub fn pow(&self, e: &BigUint) -> RatInterval {
        if e.is_zero() {
            return RatInterval::point(Rat::one());
        }
        if e.is_one() {
            return self.clone();
        }
        let even = !e.bit(0);
        if let Some(e64) = e.to_u64() {
            if e64 <= POW_EXP_CAP {
                if let Some(exact) = self.pow_exact(e, even) {
                    return exact;
                }
            }
        }
        // Astronomical exponent or unbounded operand: bound by magnitude.
        let one = Rat::one();
        let inside_unit = self.subset_of(&RatInterval::new(-one.clone(), one.clone()));
        let nonneg_lo = matches!(&self.lo, End::Fin(lo) if !lo.is_negative());
        if inside_unit {
            return if even || nonneg_lo {
                RatInterval::new(Rat::zero(), one)
            } else {
                RatInterval::new(-one.clone(), one)
            };
        }
        if even || nonneg_lo {
            RatInterval::at_least(Rat::zero())
        } else {
            RatInterval::whole()
        }
    }

    fn pow_exact(&self, e: &BigUint, even: bool) -> Option<RatInterval> {
        let (lo, hi) = self.as_finite()?;
        let plo = crate::rat::rat_pow(lo, e);
        let phi = crate::rat::rat_pow(hi, e);
        Some(if even {
            if self.contains_zero() {
                RatInterval::new(Rat::zero(), plo.max(phi))
            } else {
                RatInterval::new(plo.clone().min(phi.clone()), plo.max(phi))
            }
        } else {
            // Odd powers are monotone.
            RatInterval::new(plo, phi)
        })
    }

    /// Whether the two intervals share at least one point.
    pub fn intersects(&self, other: &RatInterval) -> bool {
        let self_below = match (&self.hi, &other.lo) {
            (End::Fin(h), End::Fin(l)) => h < l,
            _ => false,
        };
        let other_below = match (&other.hi, &self.lo) {
            (End::Fin(h), End::Fin(l)) => h < l,
            _ => false,
        };
        !(self_below || other_below)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        let lo = match (&self.lo, &other.lo) {
            (End::Fin(a), End::Fin(b)) => End::Fin(a.min(b).clone()),
            _ => End::NegInf,
        };
        let hi = match (&self.hi, &other.hi) {
            (End::Fin(a), End::Fin(b)) => End::Fin(a.max(b).clone()),
            _ => End::PosInf,
        };
        RatInterval { lo, hi }
    }
}

/// Largest exponent whose interval powers are computed exactly.
///
/// Chosen so the exact branch never allocates integers more than a few
/// hundred thousand times the operand size; the engineered exponents on
/// the order of `5^60` take the magnitude fallback instead.
pub const POW_EXP_CAP: u64 = 1 << 16;

/// Endpoint product under the `0 · ±∞ = 0` convention.
fn end_mul(a: &End, b: &End) -> End {
    match (a, b) {
        (End::Fin(x), End::Fin(y)) => End::Fin(x * y),
        (End::Fin(x), inf) | (inf, End::Fin(x)) => {
            if x.is_zero() {
                End::Fin(Rat::zero())
            } else if (x.is_positive()) == matches!(inf, End::PosInf) {
                End::PosInf
            } else {
                End::NegInf
            }
        }
        (End::NegInf, End::NegInf) | (End::PosInf, End::PosInf) => End::PosInf,
        _ => End::NegInf,
    }
}

/// Strict order on endpoints with `-∞ < every rational < +∞`.
fn end_lt(a: &End, b: &End) -> bool {
    match (a, b) {
        (End::NegInf, End::NegInf) | (End::PosInf, End::PosInf) => false,
        (End::NegInf, _) | (_, End::PosInf) => true,
        (_, End::NegInf) | (End::PosInf, _) => false,
        (End::Fin(x), End::Fin(y)) => x < y,
    }
}

// ----------------------------------------------------------------------
// π and sin(π·)
// ----------------------------------------------------------------------

/// An enclosure of π with width at most `2^-precision`.
///
/// Machin's formula `π = 16·atan(1/5) - 4·atan(1/239)`, with each
/// arctangent enclosed between consecutive partial sums of its alternating
/// series.  Results are cached *per requested precision*, so a given
/// precision always returns the identical enclosure regardless of what
/// other precisions have been computed — evaluation stays deterministic.
pub fn pi_enclosure(precision: u32) -> RatInterval {
    static CACHE: OnceLock<Mutex<HashMap<u32, RatInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut held = cache.lock().expect("pi cache lock");
    if let Some(hit) = held.get(&precision) {
        return hit.clone();
    }
    // Each series shrinks by more than 4× per term and the combination
    // scales widths by at most 20, so 8 guard bits are plenty.
    let guard = precision + 8;
    let a5 = atan_inv_enclosure(5, guard);
    let a239 = atan_inv_enclosure(239, guard);
    let sixteen = RatInterval::point(Rat::from_integer(BigInt::from(16)));
    let four = RatInterval::point(Rat::from_integer(BigInt::from(4)));
    let pi = sixteen.mul(&a5).sub(&four.mul(&a239));
    held.insert(precision, pi.clone());
    pi
}

/// Enclosure of `atan(1/x)` between consecutive partial sums of the
/// alternating series, to width below `2^-precision`.
fn atan_inv_enclosure(x: u64, precision: u32) -> RatInterval {
    let x2 = Rat::from_integer(BigInt::from(x * x));
    let mut term = Rat::new(BigInt::one(), BigInt::from(x));
    let mut sum = Rat::zero();
    let mut k = 0u64;
    let eps = pow2_neg(precision);
    loop {
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        // Alternating with decreasing terms: the limit always lies between
        // consecutive partial sums, so [sum, next] (ordered) encloses it.
        if term < eps {
            let (lo, hi) = if sum <= next { (sum, next) } else { (next, sum) };
            return RatInterval::new(lo, hi);
        }
        sum = next;
        k += 1;
        // term_k = 1/((2k+1)·x^{2k+1}) = term_{k-1} · (2k-1) / ((2k+1)·x²).
        term = term * Rat::new(BigInt::from(2 * k - 1), BigInt::from(2 * k + 1)) / &x2;
    }
}

/// `2^-p` as a rational.
fn pow2_neg(p: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << p)
}

/// Number of Taylor terms pushing the `sin` remainder below
/// `2^-(precision+4)` uniformly over arguments in `[0, π/2]`.
fn sin_terms(precision: u32) -> u32 {
    // |R_K| ≤ (π/2)^{2K+1}/(2K+1)! ≤ 2^{2K+1}/(2K+1)!; take the first K
    // under the target.  The factorial dominates, so the loop terminates.
    let target = pow2_neg(precision + 4);
    let four = Rat::from_integer(BigInt::from(4));
    let mut bound = Rat::from_integer(BigInt::from(2)); // K = 0: 2^1/1!
    let mut k = 0u32;
    while bound >= target {
        k += 1;
        let step = (2 * k) * (2 * k + 1);
        bound = bound * &four / Rat::from_integer(BigInt::from(step));
    }
    k
}

/// The remainder bound matching [`sin_terms`]: `2^{2K+1}/(2K+1)!`.
fn sin_remainder(terms: u32) -> Rat {
    let four = Rat::from_integer(BigInt::from(4));
    let mut bound = Rat::from_integer(BigInt::from(2));
    for k in 1..=terms {
        let step = (2 * k) * (2 * k + 1);
        bound = bound * &four / Rat::from_integer(BigInt::from(step));
    }
    bound
}

/// Series enclosure of `sin(π t)` for `t ∈ [0, 1/2]` at the given working
/// precision: interval Taylor sum plus a uniform remainder.
fn sin_quarter(t: &Rat, precision: u32) -> RatInterval {
    debug_assert!(!t.is_negative() && *t <= Rat::new(BigInt::one(), BigInt::from(2)));
    let pi = pi_enclosure(precision + 8);
    let u = pi.mul(&RatInterval::point(t.clone())); // ⊆ [0, π/2 + ε]
    let terms = sin_terms(precision);
    // Σ_{k<terms} (-1)^k u^{2k+1}/(2k+1)! with a running odd power of u.
    let u2 = u.mul(&u);
    let mut upow = u.clone();
    let mut fact = BigInt::one();
    let mut sum = RatInterval::point(Rat::zero());
    for k in 0..terms {
        if k > 0 {
            fact *= BigInt::from((2 * k) * (2 * k + 1));
            upow = upow.mul(&u2);
        }
        let term = upow.mul(&RatInterval::point(Rat::new(BigInt::one(), fact.clone())));
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    let slack = sin_remainder(terms);
    sum.add(&RatInterval::new(-slack.clone(), slack))
}

/// Series enclosure of `sin(π t)` at a single rational `t` (any sign):
/// exact reduction mod 2, then quarter-wave folding.
fn sin_series_point(t: &Rat, precision: u32) -> RatInterval {
    let two = Rat::from_integer(BigInt::from(2));
    let s = t - (t / &two).floor() * &two;
    let one = Rat::one();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    if s <= half {
        sin_quarter(&s, precision)
    } else if s <= one {
        sin_quarter(&(&one - &s), precision)
    } else if s <= &one + &half {
        sin_quarter(&(&s - &one), precision).neg()
    } else {
        sin_quarter(&(&two - &s), precision).neg()
    }
}

/// The dyadic cell of `sin(π t)` on the `2^-grid` lattice, for `t` whose
/// sine is irrational.
///
/// The value of `sin` at a rational multiple of π is rational only when it
/// is `0`, `±1/2`, or `±1` (callers handle those exactly), so here the true
/// value never sits on the lattice and the enclosing cell is unique.  The
/// series enclosure is refined — doubling the working precision — until it
/// fits inside one cell.  The resulting map `t ↦ cell` factors through the
/// true value monotonically, which is what makes [`sin_pi`]
/// inclusion-monotone without any tolerance tuning.
fn sin_cell(t: &Rat, grid: u32) -> RatInterval {
    let scale = Rat::from_integer(BigInt::one() << grid);
    let mut precision = grid + 8;
    for _ in 0..10 {
        let s = sin_series_point(t, precision);
        let (lo, hi) = s.as_finite().expect("series enclosures are finite");
        let j = (lo * &scale).floor();
        let top = (&j + Rat::one()) / &scale;
        // True value v: v ≥ lo ≥ j/2^grid and v ≠ j/2^grid (irrational),
        // so v > j/2^grid; if also hi ≤ top then likewise v < top.
        if *hi <= top {
            return RatInterval::new(j / &scale, top);
        }
        precision = precision.saturating_mul(2);
    }
    // Ten doublings cover every algebraic sine reachable from rational
    // arguments with denominators into the thousands (Liouville-type
    // bounds keep irrational algebraics away from dyadic lattice points);
    // reaching this line would mean the series enclosure stopped
    // shrinking, i.e. a bug above.
    unreachable!("sin(pi*{t}) enclosure refinement stalled")
}

/// Point enclosure of `sin(π t)`: exact where the value is rational,
/// otherwise the dyadic cell at resolution `2^-grid`.
fn sin_point(t: &Rat, grid: u32) -> RatInterval {
    match sin_pi_exact(t) {
        Some(v) => RatInterval::point(v),
        None => sin_cell(t, grid),
    }
}

/// Enclosure of `sin(π t)` over an interval of arguments, at cell
/// resolution `2^-precision`.
///
/// Unbounded inputs and inputs spanning a full period enclose to
/// `[-1, 1]`.  Otherwise the interior extrema of `sin(π·)` sit exactly at
/// `t ≡ 1/2 (mod 2)` (maxima) and `t ≡ 3/2 (mod 2)` (minima): the matching
/// bound saturates to `±1` when such a point is covered, and every other
/// extreme is attained at an endpoint, enclosed by [`sin_point`].
///
/// Point inputs with rational sine values (denominator 1, 2, or 6) get
/// zero-width enclosures; any other point gets width exactly
/// `2^-precision`.  Inclusion-monotone: covering an extremum only ever
/// saturates further, and endpoint cells are monotone in the true values.
pub fn sin_pi(x: &RatInterval, precision: u32) -> RatInterval {
    let one = Rat::one();
    let unit = RatInterval::new(-one.clone(), one.clone());
    let Some((a, b)) = x.as_finite() else {
        return unit;
    };
    let two = Rat::from_integer(BigInt::from(2));
    if b - a >= two {
        return unit;
    }
    // Does [a, b] meet the residue class offset + 2ℤ?
    let crosses = |offset: Rat| -> bool {
        let k = ((a - &offset) / &two).ceil();
        offset + k * &two <= *b
    };
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let ea = sin_point(a, precision);
    let eb = sin_point(b, precision);
    let hull = ea.hull(&eb);
    let (lo, hi) = hull.as_finite().expect("point enclosures are finite");
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if crosses(half.clone()) {
        hi = one.clone();
    }
    if crosses(&half + &one) {
        lo = -one;
    }
    RatInterval::new(lo, hi)
}

// ----------------------------------------------------------------------
// Roots
// ----------------------------------------------------------------------

/// Enclosure of `x^{1/n}` for `x ≥ 0`, with width at most `2^{1-precision}`.
///
/// Scales to an integer, takes the exact floor `n`-th root, and widens by
/// one dyadic step on each side.
///
/// # Panics
///
/// Panics for negative `x` or `n = 0`.
pub fn nth_root_enclosure(x: &Rat, n: u32, precision: u32) -> RatInterval {
    assert!(n >= 1, "root index must be positive");
    assert!(!x.is_negative(), "root enclosures need a nonnegative radicand");
    if x.is_zero() {
        return RatInterval::point(Rat::zero());
    }
    // x^{1/n} = nth_root(x · 2^{n·p}) / 2^p up to floor error.
    let p = precision;
    let scaled: BigInt = (x * Rat::from_integer(BigInt::one() << (n as u64 * p as u64)))
        .floor()
        .to_integer();
    let root = scaled
        .to_biguint()
        .expect("nonnegative by construction")
        .nth_root(n);
    let denom = BigInt::one() << p;
    let lo = Rat::new(BigInt::from(root.clone()), denom.clone());
    let hi = Rat::new(BigInt::from(root + 2u32), denom);
    RatInterval::new(lo, hi)
}

// ----------------------------------------------------------------------
// Expression enclosure
// ----------------------------------------------------------------------

/// Enclosure of a DAG's value over a box of rational intervals.
///
/// Every node has an enclosure: arithmetic nodes combine their children's
/// intervals, `sin(π·)` goes through [`sin_pi`] at the given precision, and
/// opaque calls — whose value the DAG does not determine — enclose to the
/// whole line.  Inclusion-monotone node by node, hence over boxes: a box
/// contained in another yields an enclosure contained in the other's.
///
/// # Panics
///
/// Panics when the box width does not match the DAG's variable table.
pub fn interval_eval(dag: &ExprDag, box_: &[RatInterval], precision: u32) -> RatInterval {
    assert_eq!(
        box_.len(),
        dag.vars().len(),
        "box width must match the variable table"
    );
    let n = dag.arena_len();
    let mut memo: Vec<Option<RatInterval>> = vec![None; n];
    for i in 0..n {
        let get = |id: &NodeId| -> &RatInterval {
            memo[id.index()].as_ref().expect("children precede parents")
        };
        let iv = match dag.node(NodeId(i as u32)) {
            Node::Const(c) => RatInterval::point(Rat::from(c.clone())),
            Node::Var(v) => box_[v.index()].clone(),
            Node::Sum(ids) => {
                let mut acc = RatInterval::point(Rat::zero());
                for id in ids {
                    acc = acc.add(get(id));
                }
                acc
            }
            Node::Prod(ids) => {
                let mut acc = RatInterval::point(Rat::one());
                for id in ids {
                    acc = acc.mul(get(id));
                }
                acc
            }
            Node::Neg(a) => get(a).neg(),
            Node::Pow(b, e) => get(b).pow(e),
            Node::SinPi(a) => sin_pi(get(a), precision),
            Node::Call { .. } => RatInterval::whole(),
        };
        memo[i] = Some(iv);
    }
    memo[dag.root().index()].clone().expect("root is in the arena")
}
