//! Arithmetic codings of basic-space neighborhoods: p-adic valuations,
//! Cantor-style pairing with exact inverses, and enumerated bases for the
//! four basic factors ℕ, ℕ^ℕ (Baire space), ℝ and the extended reals.
//!
//! Everything is exact: indices are arbitrary-precision naturals, interval
//! endpoints are exact rationals, and every decision (membership, inclusion,
//! ball-in-box) is made by rational arithmetic.
//!
//! # Index convention
//!
//! The public API is zero-based: `decode(space, i)` is the `i`-th basic
//! neighborhood.  Codings whose defining formulas read off prime valuations
//! shift internally to `n = i + 1` so that the valuations are defined; the
//! shift never leaks out of this module.

use crate::rat::Rat;
use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt;

/// Errors from coding and decision operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CodingError {
    /// p-adic valuation of zero is undefined.
    #[error("p-adic valuation of zero is undefined")]
    ZeroArgument,
    /// A value fed to an unpairing function is not a paired value.
    #[error("value {0} is not in the pairing image")]
    NotInImage(BigUint),
    /// Two operands live over different (or unsupported) spaces.
    #[error("incompatible spaces: {0}")]
    IncompatibleSpaces(String),
}

// ----------------------------------------------------------------------
// Valuations and primes
// ----------------------------------------------------------------------

/// True for primes, by trial division (arguments here are always small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `k`-th prime, zero-based: `nth_prime(0) = 2`, `nth_prime(1) = 3`, ...
pub fn nth_prime(k: usize) -> u64 {
    let mut found = 0usize;
    let mut p = 1u64;
    loop {
        p += 1;
        if is_prime(p) {
            if found == k {
                return p;
            }
            found += 1;
        }
    }
}

/// Largest `e` with `p^e | n`.
///
/// `p` must be prime and `n` positive (the valuation of zero is undefined).
pub fn padic_valuation(p: u64, n: &BigUint) -> Result<u64, CodingError> {
    assert!(is_prime(p), "{p} is not prime");
    if n.is_zero() {
        return Err(CodingError::ZeroArgument);
    }
    if p == 2 {
        return Ok(n.trailing_zeros().expect("nonzero"));
    }
    // Binary lifting: build the ladder p, p², p⁴, … ≤ n, then peel the
    // valuation's binary digits from the top. Large valuations (3^m codes
    // with m in the thousands) cost O(log e) big divisions instead of e.
    let mut ladder = vec![BigUint::from(p)];
    loop {
        let top = ladder.last().expect("nonempty");
        let next = top * top;
        if &next > n {
            break;
        }
        ladder.push(next);
    }
    let mut e = 0u64;
    let mut rest = n.clone();
    for (i, power) in ladder.iter().enumerate().rev() {
        let (q, r) = rest.div_rem(power);
        if r.is_zero() {
            rest = q;
            e += 1 << i;
        }
    }
    Ok(e)
}

// ----------------------------------------------------------------------
// Pairing
// ----------------------------------------------------------------------

/// `J(x, y) = (x+y)(x+y+1) + 2y`: an injection ℕ² → ℕ whose image is
/// exactly the even naturals (twice the classical diagonal pairing).
pub fn pair2(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    &s * (&s + 1u32) + (y << 1)
}

/// Left-nested iterated pairing: `pairN(x1..xn) = J(pairN(x1..x_{n-1}), xn)`.
///
/// # Panics
///
/// Panics for fewer than two coordinates.
pub fn pair_n(xs: &[BigUint]) -> BigUint {
    assert!(xs.len() >= 2, "pairing needs at least two coordinates");
    let mut acc = pair2(&xs[0], &xs[1]);
    for x in &xs[2..] {
        acc = pair2(&acc, x);
    }
    acc
}

/// Inverse of [`pair2`]; odd values are not in the image.
pub fn unpair2(v: &BigUint) -> Result<(BigUint, BigUint), CodingError> {
    if v.bit(0) {
        return Err(CodingError::NotInImage(v.clone()));
    }
    // Fast path: machine arithmetic when 8h+1 fits in u128.
    if let Some(v128) = v.to_u128() {
        if v128 <= (u128::MAX - 1) / 4 {
            let h = v128 / 2;
            let s = (8 * h + 1).sqrt();
            let w = (s - 1) / 2;
            let t = w * (w + 1) / 2;
            let y = h - t;
            let x = w - y;
            return Ok((BigUint::from(x), BigUint::from(y)));
        }
    }
    let h: BigUint = v >> 1;
    let s = (&h * 8u32 + 1u32).sqrt();
    let w: BigUint = (&s - 1u32) >> 1;
    let t: BigUint = (&w * (&w + 1u32)) >> 1;
    let y = &h - &t;
    let x = &w - &y;
    Ok((x, y))
}

/// Inverse of [`pair_n`] at width `n >= 2`; rejects values outside the image.
pub fn unpair_n(v: &BigUint, n: usize) -> Result<Vec<BigUint>, CodingError> {
    assert!(n >= 2, "unpairing needs at least two coordinates");
    let mut out = vec![BigUint::zero(); n];
    let mut rest = v.clone();
    for slot in (1..n).rev() {
        let (head, last) = unpair2(&rest)?;
        out[slot] = last;
        rest = head;
    }
    out[0] = rest;
    Ok(out)
}

// ----------------------------------------------------------------------
// Spaces, codes, regions
// ----------------------------------------------------------------------

/// One basic factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    /// The naturals with the discrete topology.
    Nat,
    /// Baire space ℕ^ℕ.
    Baire,
    /// The reals.
    Real,
    /// The extended reals [−∞, ∞].
    ExtReal,
}

impl SpaceTag {
    fn short(self) -> &'static str {
        match self {
            SpaceTag::Nat => "N",
            SpaceTag::Baire => "B",
            SpaceTag::Real => "R",
            SpaceTag::ExtReal => "Rbar",
        }
    }
}

/// A finite product of basic factors (right-associated when decoding).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceCode {
    factors: Vec<SpaceTag>,
}

impl SpaceCode {
    /// Build from a non-empty factor list.
    pub fn new(factors: Vec<SpaceTag>) -> Self {
        assert!(!factors.is_empty(), "a space needs at least one factor");
        SpaceCode { factors }
    }

    /// The single space ℝ.
    pub fn real() -> Self {
        SpaceCode::new(vec![SpaceTag::Real])
    }

    /// ℝ^a × ℕ, the ambient space of the engineering construction.
    pub fn reals_nat(a: usize) -> Self {
        let mut factors = vec![SpaceTag::Real; a];
        factors.push(SpaceTag::Nat);
        SpaceCode::new(factors)
    }

    /// Factor tags in order.
    pub fn factors(&self) -> &[SpaceTag] {
        &self.factors
    }
}

impl fmt::Display for SpaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{}", t.short())?;
        }
        Ok(())
    }
}

/// Index of one basic neighborhood of a space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NbhdCode {
    /// The ambient space.
    pub space: SpaceCode,
    /// Zero-based neighborhood index.
    pub index: BigUint,
}

impl NbhdCode {
    /// Convenience constructor.
    pub fn new(space: SpaceCode, index: impl Into<BigUint>) -> Self {
        NbhdCode {
            space,
            index: index.into(),
        }
    }
}

/// The decoded condition for one factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `{m}` in ℕ.
    NatSingleton(BigUint),
    /// All Baire points extending a finite initial segment.
    BaireInit(Vec<u64>),
    /// Open rational interval in ℝ.
    RealInterval(Rat, Rat),
    /// Open rational interval in the extended reals.
    ExtRealInterval(Rat, Rat),
    /// `(n, ∞]` in the extended reals.
    ExtRealTailUp(BigUint),
    /// `[−∞, −n)` in the extended reals.
    ExtRealTailDown(BigUint),
}

/// A decoded basic neighborhood: one condition per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Factor conditions, in space order.
    pub factors: Vec<Factor>,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rat::fmt_rat;
        match self {
            Factor::NatSingleton(m) => write!(f, "{{{m}}}"),
            Factor::BaireInit(vals) => {
                write!(f, "[")?;
                for (i, v) in vals.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "...]")
            }
            Factor::RealInterval(a, b) | Factor::ExtRealInterval(a, b) => {
                write!(f, "({}, {})", fmt_rat(a), fmt_rat(b))
            }
            Factor::ExtRealTailUp(n) => write!(f, "({n}, +oo]"),
            Factor::ExtRealTailDown(n) => write!(f, "[-oo, -{n})"),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

impl Region {
    /// Canonical JSON rendering (used by the command-line tools).
    pub fn to_json(&self) -> Value {
        use crate::rat::fmt_rat;
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::NatSingleton(m) => json!({"kind": "nat", "value": m.to_string()}),
                Factor::BaireInit(vals) => json!({
                    "kind": "baire",
                    "init": vals.iter().map(u64::to_string).collect::<Vec<_>>(),
                }),
                Factor::RealInterval(a, b) => {
                    json!({"kind": "real", "lo": fmt_rat(a), "hi": fmt_rat(b)})
                }
                Factor::ExtRealInterval(a, b) => {
                    json!({"kind": "extreal", "lo": fmt_rat(a), "hi": fmt_rat(b)})
                }
                Factor::ExtRealTailUp(n) => json!({"kind": "tail_up", "n": n.to_string()}),
                Factor::ExtRealTailDown(n) => json!({"kind": "tail_down", "n": n.to_string()}),
            })
            .collect();
        json!({ "factors": factors })
    }
}

// ----------------------------------------------------------------------
// Decoding
// ----------------------------------------------------------------------

fn rat_from_parts(num: i64, den: u64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

fn decode_single(tag: SpaceTag, index: &BigUint) -> Factor {
    match tag {
        SpaceTag::Nat => Factor::NatSingleton(index.clone()),
        SpaceTag::Baire => {
            let n = index + 1u32;
            let len = padic_valuation(2, &n).expect("n > 0");
            let vals = (0..len)
                .map(|i| {
                    let p = nth_prime(usize::try_from(i + 1).expect("desk-scale length"));
                    padic_valuation(p, &n).expect("n > 0")
                })
                .collect();
            Factor::BaireInit(vals)
        }
        SpaceTag::Real => {
            let (lo, hi) = real_interval(index);
            Factor::RealInterval(lo, hi)
        }
        SpaceTag::ExtReal => {
            let three = BigUint::from(3u32);
            let (q, r) = index.div_rem(&three);
            match r.to_u32().expect("residue < 3") {
                0 => {
                    let (lo, hi) = real_interval(&q);
                    Factor::ExtRealInterval(lo, hi)
                }
                1 => Factor::ExtRealTailUp(q),
                _ => Factor::ExtRealTailDown(q),
            }
        }
    }
}

/// The open interval coded by a zero-based ℝ index: with `n = index + 1`,
/// `((ν₃−ν₅)/(1+ν₂), (ν₃−ν₅+ν₇+1)/(1+ν₂))`.
fn real_interval(index: &BigUint) -> (Rat, Rat) {
    let n = index + 1u32;
    let v2 = padic_valuation(2, &n).expect("n > 0");
    let v3 = padic_valuation(3, &n).expect("n > 0") as i64;
    let v5 = padic_valuation(5, &n).expect("n > 0") as i64;
    let v7 = padic_valuation(7, &n).expect("n > 0") as i64;
    let den = 1 + v2;
    let lo = rat_from_parts(v3 - v5, den);
    let hi = rat_from_parts(v3 - v5 + v7 + 1, den);
    (lo, hi)
}

/// Decode a neighborhood code into an exact [`Region`].
///
/// Products decode right-associated: with `n = index + 1`, the first factor
/// gets sub-index `ν₂(n)` and the remaining product gets `ν₃(n)`.
pub fn decode_nbhd(c: &NbhdCode) -> Region {
    fn go(tags: &[SpaceTag], index: &BigUint, out: &mut Vec<Factor>) {
        match tags {
            [] => unreachable!("spaces are non-empty"),
            [tag] => out.push(decode_single(*tag, index)),
            [tag, rest @ ..] => {
                let n = index + 1u32;
                let i_first = padic_valuation(2, &n).expect("n > 0");
                // Strip the 2-part before taking the 3-adic valuation: the
                // first factor's index lives in the exponent of 2, so `n`
                // can be enormous while its odd part stays small.
                let odd = &n >> i_first;
                let i_rest = padic_valuation(3, &odd).expect("n > 0");
                out.push(decode_single(*tag, &BigUint::from(i_first)));
                go(rest, &BigUint::from(i_rest), out);
            }
        }
    }
    let mut factors = Vec::with_capacity(c.space.factors.len());
    go(&c.space.factors, &c.index, &mut factors);
    Region { factors }
}

// ----------------------------------------------------------------------
// Encoding
// ----------------------------------------------------------------------

fn pow_u(base: u32, exp: &BigInt) -> BigUint {
    let e = exp
        .to_u32()
        .expect("interval endpoints too large to encode at desk scale");
    BigUint::from(base).pow(e)
}

/// Index of an ℝ neighborhood exactly equal to the open interval `(a, b)`.
///
/// Chooses the denominator `d = lcm(den(a), den(b))`, so that `a·d` and
/// `(b−a)·d ≥ 1` are integers, and composes
/// `2^(d−1) · 3^max(ad,0) · 5^max(−ad,0) · 7^((b−a)d−1) − 1`.
///
/// # Panics
///
/// Panics when `a >= b`.
pub fn encode_interval(a: &Rat, b: &Rat) -> BigUint {
    assert!(a < b, "interval endpoints out of order");
    let d: BigInt = a.denom().lcm(b.denom());
    let ad: BigInt = (a * Rat::from(d.clone())).to_integer();
    let wd: BigInt = ((b - a) * Rat::from(d.clone())).to_integer();
    let zero = BigInt::zero();
    let e2 = &d - 1;
    let e3 = std::cmp::max(ad.clone(), zero.clone());
    let e5 = std::cmp::max(-ad, zero);
    let e7 = &wd - 1;
    let n = pow_u(2, &e2) * pow_u(3, &e3) * pow_u(5, &e5) * pow_u(7, &e7);
    n - 1u32
}

// ----------------------------------------------------------------------
// Decisions
// ----------------------------------------------------------------------

fn factor_subset(a: &Factor, b: &Factor) -> Result<bool, CodingError> {
    Ok(match (a, b) {
        (Factor::NatSingleton(m), Factor::NatSingleton(k)) => m == k,
        (Factor::BaireInit(s), Factor::BaireInit(t)) => {
            // Extensions of s all extend t iff t is a prefix of s.
            s.len() >= t.len() && s[..t.len()] == t[..]
        }
        (Factor::RealInterval(a1, b1), Factor::RealInterval(a2, b2))
        | (Factor::ExtRealInterval(a1, b1), Factor::ExtRealInterval(a2, b2)) => {
            a1 >= a2 && b1 <= b2
        }
        (Factor::ExtRealInterval(a1, _), Factor::ExtRealTailUp(n)) => {
            *a1 >= Rat::from(BigInt::from(n.clone()))
        }
        (Factor::ExtRealInterval(_, b1), Factor::ExtRealTailDown(n)) => {
            *b1 <= -Rat::from(BigInt::from(n.clone()))
        }
        (Factor::ExtRealTailUp(n1), Factor::ExtRealTailUp(n2)) => n1 >= n2,
        (Factor::ExtRealTailDown(n1), Factor::ExtRealTailDown(n2)) => n1 >= n2,
        // A tail contains ±∞, which no interval or opposite tail does.
        (Factor::ExtRealTailUp(_), _) | (Factor::ExtRealTailDown(_), _) => false,
        _ => {
            return Err(CodingError::IncompatibleSpaces(
                "factor kinds do not match".to_string(),
            ))
        }
    })
}

/// Combine per-factor neighborhood indices into one index for their product
/// space.
///
/// Right-associated: for indices `[i, j]` the result is `2^i · 3^j − 1`, and
/// longer lists fold the tail first. Interior indices end up in towers of
/// exponents, so this is only usable when every folded exponent fits in a
/// `u32`; the function panics otherwise, which at desk scale means "pick
/// smaller indices".
pub fn compose_product_index(indices: &[BigUint]) -> BigUint {
    assert!(!indices.is_empty(), "a product needs at least one factor");
    let mut acc = indices[indices.len() - 1].clone();
    for i in indices[..indices.len() - 1].iter().rev() {
        let e2 = i
            .to_u64()
            .expect("factor index too large to compose at desk scale");
        let e3 = acc
            .to_u32()
            .expect("tail index too large to compose at desk scale");
        let n = (BigUint::one() << e2) * BigUint::from(3u32).pow(e3);
        acc = n - BigUint::one();
    }
    acc
}

/// Exact inclusion test between two neighborhoods of the same space.
pub fn nbhd_subset(c1: &NbhdCode, c2: &NbhdCode) -> Result<bool, CodingError> {
    if c1.space != c2.space {
        return Err(CodingError::IncompatibleSpaces(format!(
            "{} vs {}",
            c1.space, c2.space
        )));
    }
    let r1 = decode_nbhd(c1);
    let r2 = decode_nbhd(c2);
    for (f1, f2) in r1.factors.iter().zip(&r2.factors) {
        if !factor_subset(f1, f2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a rational point in a decoded region.
///
/// Factor-wise: a ℕ factor requires the coordinate to be exactly that
/// integer; Baire factors are not pointwise-testable on rational tuples and
/// yield `IncompatibleSpaces`.
pub fn region_member(point: &[Rat], region: &Region) -> Result<bool, CodingError> {
    if point.len() != region.factors.len() {
        return Err(CodingError::IncompatibleSpaces(format!(
            "point has {} coordinates, region has {} factors",
            point.len(),
            region.factors.len()
        )));
    }
    for (x, f) in point.iter().zip(&region.factors) {
        let inside = match f {
            Factor::NatSingleton(m) => {
                x.is_integer() && !x.is_negative() && x.numer().magnitude() == m
            }
            Factor::BaireInit(_) => {
                return Err(CodingError::IncompatibleSpaces(
                    "rational points cannot be tested against Baire factors".to_string(),
                ))
            }
            Factor::RealInterval(a, b) | Factor::ExtRealInterval(a, b) => a < x && x < b,
            Factor::ExtRealTailUp(n) => *x > Rat::from(BigInt::from(n.clone())),
            Factor::ExtRealTailDown(n) => *x < -Rat::from(BigInt::from(n.clone())),
        };
        if !inside {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a rational point in a coded neighborhood.
pub fn nbhd_member(point: &[Rat], c: &NbhdCode) -> Result<bool, CodingError> {
    region_member(point, &decode_nbhd(c))
}

/// Does the closed Euclidean ball (given by center and squared radius) fit
/// inside the open box formed by the given interval factors?
///
/// The factors must all be real intervals, one per center coordinate.
/// Because the box is axis-aligned, the exact criterion is per-axis: each
/// margin `center_i − a_i` and `b_i − center_i` must be positive with square
/// exceeding the squared radius.
pub fn ball_in_intervals(
    center: &[Rat],
    radius_sq: &Rat,
    factors: &[Factor],
) -> Result<bool, CodingError> {
    assert!(!radius_sq.is_negative(), "squared radius must be >= 0");
    if factors.len() != center.len() {
        return Err(CodingError::IncompatibleSpaces(format!(
            "ball over R^{} vs {} box factors",
            center.len(),
            factors.len()
        )));
    }
    for (x, f) in center.iter().zip(factors) {
        let (a, b) = match f {
            Factor::RealInterval(a, b) => (a, b),
            other => {
                return Err(CodingError::IncompatibleSpaces(format!(
                    "ball tested against non-interval factor {other}"
                )))
            }
        };
        let lo_margin = x - a;
        let hi_margin = b - x;
        if !lo_margin.is_positive()
            || !hi_margin.is_positive()
            || &lo_margin * &lo_margin <= *radius_sq
            || &hi_margin * &hi_margin <= *radius_sq
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does the closed Euclidean ball (given by center and squared radius) fit
/// inside the open box coded by `c` over ℝ^a?
pub fn ball_in_box(center: &[Rat], radius_sq: &Rat, c: &NbhdCode) -> Result<bool, CodingError> {
    if c.space.factors.len() != center.len()
        || c.space.factors.iter().any(|t| *t != SpaceTag::Real)
    {
        return Err(CodingError::IncompatibleSpaces(format!(
            "ball over R^{} vs space {}",
            center.len(),
            c.space
        )));
    }
    ball_in_intervals(center, radius_sq, &decode_nbhd(c).factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn bu(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(2, &bu(12)).unwrap(), 2);
        assert_eq!(padic_valuation(3, &bu(1)).unwrap(), 0);
        assert_eq!(padic_valuation(5, &bu(50)).unwrap(), 2);
        assert_eq!(padic_valuation(7, &bu(0)), Err(CodingError::ZeroArgument));
        assert_eq!(nth_prime(0), 2);
        assert_eq!(nth_prime(4), 11);
    }

    #[test]
    fn pairing_hits_pinned_values() {
        assert_eq!(pair2(&bu(0), &bu(0)), bu(0));
        assert_eq!(pair2(&bu(1), &bu(0)), bu(2));
        assert_eq!(pair2(&bu(0), &bu(1)), bu(4));
        assert_eq!(pair_n(&[bu(0), bu(0), bu(0)]), bu(0));
        assert_eq!(unpair2(&bu(2)).unwrap(), (bu(1), bu(0)));
        assert_eq!(unpair2(&bu(1)), Err(CodingError::NotInImage(bu(1))));
    }

    #[test]
    fn pairing_round_trips_small_grid() {
        for x in 0..30u64 {
            for y in 0..30u64 {
                let v = pair2(&bu(x), &bu(y));
                assert!(!v.bit(0), "pair2 image must be even");
                assert_eq!(unpair2(&v).unwrap(), (bu(x), bu(y)));
            }
        }
        // Width 4 spot checks.
        let xs = vec![bu(3), bu(0), bu(7), bu(2)];
        assert_eq!(unpair_n(&pair_n(&xs), 4).unwrap(), xs);
    }

    #[test]
    fn pairing_round_trips_above_machine_words() {
        // Big enough that 8h+1 cannot fit in u128.
        let x = BigUint::from(7u32).pow(80);
        let y = BigUint::from(3u32).pow(101);
        let v = pair2(&x, &y);
        assert!(v.bits() > 130);
        assert_eq!(unpair2(&v).unwrap(), (x, y));
    }

    #[test]
    fn decode_pinned_examples() {
        // Real index 0 is the unit interval.
        let c = NbhdCode::new(SpaceCode::real(), 0u32);
        assert_eq!(
            decode_nbhd(&c).factors,
            vec![Factor::RealInterval(rat_i(0), rat_i(1))]
        );
        // Nat indices are singletons.
        let c = NbhdCode::new(SpaceCode::new(vec![SpaceTag::Nat]), 5u32);
        assert_eq!(decode_nbhd(&c).factors, vec![Factor::NatSingleton(bu(5))]);
        // Extended-real index 1 is (0, +oo].
        let c = NbhdCode::new(SpaceCode::new(vec![SpaceTag::ExtReal]), 1u32);
        assert_eq!(decode_nbhd(&c).factors, vec![Factor::ExtRealTailUp(bu(0))]);
        assert_eq!(decode_nbhd(&c).to_string(), "(0, +oo]");
    }

    #[test]
    fn encode_decode_round_trip() {
        assert_eq!(encode_interval(&rat_i(0), &rat_i(1)), bu(0));
        let cases = [
            (rat(-1, 2), rat(3, 2)),
            (rat_i(-3), rat_i(4)),
            (rat(1, 3), rat(5, 6)),
            (rat(-7, 4), rat(-1, 4)),
        ];
        for (a, b) in cases {
            let idx = encode_interval(&a, &b);
            let c = NbhdCode::new(SpaceCode::real(), idx);
            assert_eq!(
                decode_nbhd(&c).factors,
                vec![Factor::RealInterval(a.clone(), b.clone())],
                "round trip failed for ({a}, {b})"
            );
        }
    }

    #[test]
    fn subset_and_membership() {
        let unit = NbhdCode::new(SpaceCode::real(), 0u32);
        assert!(nbhd_subset(&unit, &unit).unwrap());
        let half = NbhdCode::new(
            SpaceCode::real(),
            encode_interval(&rat(1, 4), &rat(3, 4)),
        );
        assert!(nbhd_subset(&half, &unit).unwrap());
        assert!(!nbhd_subset(&unit, &half).unwrap());
        assert!(nbhd_member(&[rat(1, 2)], &unit).unwrap());
        assert!(!nbhd_member(&[rat_i(1)], &unit).unwrap());
        // Mixed spaces are rejected.
        let nat = NbhdCode::new(SpaceCode::new(vec![SpaceTag::Nat]), 0u32);
        assert!(nbhd_subset(&unit, &nat).is_err());
    }

    #[test]
    fn product_decoding_follows_the_valuation_split() {
        // Space R x N, index n-1 with n = 2^i3 * 3^i_nat.
        // First factor <- Real index v2(n), second <- Nat index v3(n).
        let space = SpaceCode::reals_nat(1);
        // n = 2^0 * 3^5 = 243, so index 242: Real index 0, Nat index 5.
        let c = NbhdCode::new(space.clone(), 242u32);
        let r = decode_nbhd(&c);
        assert_eq!(
            r.factors,
            vec![
                Factor::RealInterval(rat_i(0), rat_i(1)),
                Factor::NatSingleton(bu(5)),
            ]
        );
        assert!(region_member(&[rat(1, 2), rat_i(5)], &r).unwrap());
        assert!(!region_member(&[rat(1, 2), rat_i(4)], &r).unwrap());
    }

    #[test]
    fn ball_in_box_pinned_examples() {
        let unit = NbhdCode::new(SpaceCode::real(), 0u32);
        assert!(ball_in_box(&[rat(1, 2)], &rat(1, 16), &unit).unwrap());
        assert!(!ball_in_box(&[rat(1, 2)], &rat_i(1), &unit).unwrap());
        // Border case: radius exactly reaching the edge fails (open box).
        assert!(!ball_in_box(&[rat(1, 2)], &rat(1, 4), &unit).unwrap());
        // Zero radius reduces to strict interior membership.
        assert!(ball_in_box(&[rat(1, 2)], &rat_i(0), &unit).unwrap());
        assert!(!ball_in_box(&[rat_i(0)], &rat_i(0), &unit).unwrap());
    }
}
