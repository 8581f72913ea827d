//! Rational scalars and exact power helpers shared across the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; the only scalar type the public API exposes.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`; `d` must be nonzero.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` (optional sign, ASCII digits).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational denominator {den:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Canonical rendering: `"p"` for integers, `"p/q"` otherwise (q > 0).
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Largest integer `n` with `n <= r`.
pub fn rat_floor(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// `|r|`.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// True when the exponent is even.
fn even(e: &BigUint) -> bool {
    !e.bit(0)
}

/// `base^e` for an arbitrary-precision natural exponent.
///
/// Bases `0`, `1`, `-1` are handled for any exponent.  Other bases require
/// the exponent to fit in a machine word (larger powers of a non-unit
/// rational are astronomically large and never arise here).
///
/// # Panics
///
/// Panics when `|base| ∉ {0, 1}` and `e` does not fit in a `u64`.
pub fn rat_pow(base: &Rat, e: &BigUint) -> Rat {
    if e.is_zero() {
        return Rat::one();
    }
    if base.is_zero() {
        return Rat::zero();
    }
    if base.is_one() {
        return Rat::one();
    }
    if (-base).is_one() {
        return if even(e) { Rat::one() } else { -Rat::one() };
    }
    let e = e
        .to_u64()
        .expect("rational power: exponent too large for a non-unit base");
    let mut acc = Rat::one();
    let mut sq = base.clone();
    let mut rem = e;
    while rem > 0 {
        if rem & 1 == 1 {
            acc *= &sq;
        }
        rem >>= 1;
        if rem > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// `sin(π·t)` when that value is rational, `None` otherwise.
///
/// For rational `t` the sine of `π·t` is rational exactly when it is one of
/// `0`, `±1/2`, `±1` (Niven's theorem), i.e. when `t` reduced mod 2 is a
/// multiple of `1/2` or an odd multiple of `1/6`.  Everything else —
/// `sin(π/4)`, `sin(π/3)`, … — is irrational and reported as `None`.
pub fn sin_pi_exact(t: &Rat) -> Option<Rat> {
    let two = Rat::from_integer(BigInt::from(2));
    // t mod 2, landed in [0, 2).
    let s = t - (t / &two).floor() * &two;
    let (num, den) = (s.numer(), s.denom());
    let num = num.to_u32()?; // 0 ≤ num < 2·den, so small denominators fit
    match den.to_u32()? {
        1 => Some(Rat::zero()),                                  // 0, 1
        2 => Some(if num == 1 { Rat::one() } else { -Rat::one() }), // 1/2, 3/2
        6 => {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            Some(if num < 6 { half } else { -half }) // 1/6, 5/6 vs 7/6, 11/6
        }
        _ => None,
    }
}

/// `base^e` over the integers; same conventions and panics as [`rat_pow`].
pub fn int_pow(base: &BigInt, e: &BigUint) -> BigInt {
    if e.is_zero() {
        return BigInt::one();
    }
    if base.is_zero() {
        return BigInt::zero();
    }
    if base.is_one() {
        return BigInt::one();
    }
    if (-base).is_one() {
        return if even(e) { BigInt::one() } else { -BigInt::one() };
    }
    let e = e
        .to_u64()
        .expect("integer power: exponent too large for a non-unit base");
    let mut acc = BigInt::one();
    let mut sq = base.clone();
    let mut rem = e;
    while rem > 0 {
        if rem & 1 == 1 {
            acc *= &sq;
        }
        rem >>= 1;
        if rem > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-1/2", "3", "7/4", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn exact_powers() {
        let e60: BigUint = BigUint::from(5u32).pow(60);
        assert_eq!(rat_pow(&rat_i(1), &e60), rat_i(1));
        assert_eq!(rat_pow(&rat_i(-1), &e60), rat_i(-1));
        assert_eq!(rat_pow(&rat_i(0), &e60), rat_i(0));
        assert_eq!(rat_pow(&rat(2, 3), &BigUint::from(5u32)), rat(32, 243));
        assert_eq!(int_pow(&BigInt::from(-2), &BigUint::from(11u32)), BigInt::from(-2048));
        assert_eq!(int_pow(&BigInt::from(7), &BigUint::from(0u32)), BigInt::one());
    }
}
