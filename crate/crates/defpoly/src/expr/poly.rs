//! Sparse multivariate polynomials with big-integer coefficients and
//! arbitrary-precision natural exponents.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so iteration order — and therefore every printed
//! form — is canonical.  No zero coefficient is ever stored.

use super::{Degree, ExprError, VarId, Vars};
use crate::rat::{int_pow, rat_pow, Rat};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Hard cap, in bits, on a coefficient produced by a single-term power.
///
/// A one-term base with a non-unit coefficient and a huge exponent has a tiny
/// term count but an astronomically large coefficient; no term budget can
/// bound that, so [`Polynomial::pow_budgeted`] aborts beyond this cap.
const COEFF_BIT_CAP: u128 = 1 << 22;

/// Exponent vector of one term, with the total degree cached.
///
/// The vector always has one entry per variable of the owning table.  Order
/// is graded lexicographic: higher total degree first, ties broken by the
/// exponent of the earliest-declared variable, then the next, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    total: BigUint,
    exps: Vec<BigUint>,
}

impl Monomial {
    /// The constant monomial (all exponents zero) over `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            total: BigUint::zero(),
            exps: vec![BigUint::zero(); n],
        }
    }

    /// A single variable to the first power, over `n` variables.
    pub fn var(v: VarId, n: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[v.index()] = BigUint::one();
        m.total = BigUint::one();
        m
    }

    /// Build from an explicit exponent vector.
    pub fn from_exps(exps: Vec<BigUint>) -> Self {
        let total = exps.iter().sum();
        Monomial { total, exps }
    }

    /// Total degree.
    pub fn total_degree(&self) -> &BigUint {
        &self.total
    }

    /// Exponent of one variable.
    pub fn exp(&self, v: VarId) -> &BigUint {
        &self.exps[v.index()]
    }

    /// All exponents, in variable declaration order.
    pub fn exps(&self) -> &[BigUint] {
        &self.exps
    }

    /// True for the constant monomial.
    pub fn is_constant(&self) -> bool {
        self.total.is_zero()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            total: &self.total + &other.total,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `e`-th power (exponents scale).
    pub fn pow(&self, e: &BigUint) -> Monomial {
        Monomial {
            total: &self.total * e,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a shared variable table.
///
/// Arithmetic panics when the operands were built over different tables;
/// that is a programming error, not an input condition.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.vars == *other.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero(vars: Vars) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant one.
    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant(vars: Vars, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let m = Monomial::one(p.vars.len());
            p.terms.insert(m, c);
        }
        p
    }

    /// A single variable.
    pub fn var(vars: Vars, v: VarId) -> Self {
        assert!(
            v.index() < vars.len(),
            "variable id {} out of range for a table of {} variables",
            v.0,
            vars.len()
        );
        let m = Monomial::var(v, vars.len());
        let mut p = Self::zero(vars);
        p.terms.insert(m, BigInt::one());
        p
    }

    /// Build from explicit terms; coefficients for repeated monomials add,
    /// zero results are dropped.
    ///
    /// # Panics
    ///
    /// Panics when a monomial's exponent vector does not match the table
    /// width.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(
                m.exps.len(),
                p.vars.len(),
                "monomial width does not match the variable table"
            );
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn assert_same_table(&self, other: &Polynomial) {
        assert!(
            *self.vars == *other.vars,
            "polynomial operands use different variable tables"
        );
    }

    /// The shared variable table.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending monomial order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Leading term (greatest monomial), if any.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `MinusInfinity` for zero.
    pub fn degree(&self) -> Degree {
        match self.leading() {
            Some((m, _)) => Degree::Finite(m.total.clone()),
            None => Degree::MinusInfinity,
        }
    }

    /// Scale by an integer.
    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Product, aborting once the work exceeds `budget`.
    ///
    /// The budget bounds both the retained term count and the number of
    /// monomial products formed along the way.  Bounding only the retained
    /// count would let heavily-cancelling products (dense univariate squares
    /// being the classic case) grind through quadratically many operations
    /// while the result stays small, so the abort would come far too late to
    /// be a useful resource limit.
    pub fn mul_budgeted(&self, other: &Polynomial, budget: usize) -> Result<Polynomial, ExprError> {
        self.assert_same_table(other);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut ops = 0usize;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                ops += 1;
                let m = ma.mul(mb);
                match terms.entry(m) {
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += ca * cb;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(ca * cb);
                    }
                }
                if terms.len() > budget || ops > budget {
                    return Err(ExprError::BudgetExceeded {
                        budget,
                        reached: terms.len().max(ops),
                    });
                }
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// `self^e`, aborting once the running term count exceeds `budget`.
    ///
    /// A one-term base is raised directly by scaling its exponent vector;
    /// that path also aborts (with the same error) when the coefficient
    /// alone would exceed [`COEFF_BIT_CAP`] bits, since no term count
    /// reflects that cost.  Multi-term bases go through binary
    /// exponentiation with the budget enforced at every multiplication.
    pub fn pow_budgeted(&self, e: &BigUint, budget: usize) -> Result<Polynomial, ExprError> {
        if e.is_zero() {
            return Ok(Self::one(self.vars.clone()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().expect("one term");
            let c_pow = if c.is_one() {
                BigInt::one()
            } else if (-c).is_one() {
                if e.bit(0) {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            } else {
                match e.to_u64() {
                    Some(e64) if (c.bits() as u128) * (e64 as u128) <= COEFF_BIT_CAP => {
                        Pow::pow(c.clone(), e64)
                    }
                    _ => {
                        return Err(ExprError::BudgetExceeded { budget, reached: 1 });
                    }
                }
            };
            let mut p = Self::zero(self.vars.clone());
            p.terms.insert(m.pow(e), c_pow);
            return Ok(p);
        }
        let mut acc = Self::one(self.vars.clone());
        for i in (0..e.bits()).rev() {
            acc = acc.mul_budgeted(&acc, budget)?;
            if e.bit(i) {
                acc = acc.mul_budgeted(self, budget)?;
            }
        }
        Ok(acc)
    }

    /// Simultaneous substitution: variable `i` is replaced by `images[i]`.
    ///
    /// All images must share one table, which becomes the result's table.
    /// The running term count is capped by `budget`.
    pub fn substitute(&self, images: &[Polynomial], budget: usize) -> Result<Polynomial, ExprError> {
        assert_eq!(
            images.len(),
            self.vars.len(),
            "substitution needs one image per variable"
        );
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        for img in images {
            assert!(
                *img.vars == *target,
                "substitution images use different variable tables"
            );
        }
        let mut acc = Self::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Self::constant(target.clone(), c.clone());
            for (i, e) in m.exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let img_pow = images[i].pow_budgeted(e, budget)?;
                term = term.mul_budgeted(&img_pow, budget)?;
            }
            acc = acc.add(&term);
            if acc.num_terms() > budget {
                return Err(ExprError::BudgetExceeded {
                    budget,
                    reached: acc.num_terms(),
                });
            }
        }
        Ok(acc)
    }

    /// Sum.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_table(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_table(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Product with no term budget.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.mul_budgeted(other, usize::MAX)
            .expect("unbudgeted multiplication cannot abort")
    }

    /// Exact value at a rational point (one coordinate per variable).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "point width mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = Rat::from(c.clone());
            for (i, e) in m.exps.iter().enumerate() {
                if !e.is_zero() {
                    t *= rat_pow(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len(), "point width mismatch");
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.exps.iter().enumerate() {
                if !e.is_zero() {
                    t *= int_pow(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: terms in descending monomial order, `*` between
    /// factors, `^` for exponents greater than one, unit coefficients
    /// suppressed.  The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_constant() {
                write!(f, "{mag}")?;
                continue;
            }
            let mut wrote = false;
            if !mag.is_one() {
                write!(f, "{mag}")?;
                wrote = true;
            }
            for (i, e) in m.exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(VarId(i as u32)))?;
                if !e.is_one() {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::VarTable;

    fn xyz() -> Vars {
        VarTable::new(vec!["x", "y", "z"]).expect("fresh names")
    }

    fn v(vars: &Vars, name: &str) -> Polynomial {
        Polynomial::var(vars.clone(), vars.id(name).expect("declared"))
    }

    #[test]
    fn graded_lex_order_and_display() {
        let vars = xyz();
        let x = v(&vars, "x");
        let y = v(&vars, "y");
        // (x + y)^2 prints highest-first with the earlier variable winning ties.
        let p = x.add(&y).pow_budgeted(&BigUint::from(2u32), 100).unwrap();
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        // Mixed degrees: the cubic term leads.
        let q = x.mul(&x).mul(&y).sub(&x.scale(&BigInt::from(2)));
        assert_eq!(q.to_string(), "x^2*y - 2*x");
        assert_eq!(q.degree(), Degree::finite(3));
    }

    #[test]
    fn zero_polynomial_degree_is_minus_infinity() {
        let vars = xyz();
        let x = v(&vars, "x");
        let z = x.sub(&x);
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::MinusInfinity);
        assert_eq!(z.to_string(), "0");
        assert!(Degree::MinusInfinity < Degree::finite(0));
    }

    #[test]
    fn ring_identities_on_a_sample() {
        let vars = xyz();
        let (x, y, z) = (v(&vars, "x"), v(&vars, "y"), v(&vars, "z"));
        let a = x.add(&y.scale(&BigInt::from(3)));
        let b = z.sub(&Polynomial::one(vars.clone()));
        let c = y.mul(&z).add(&x);
        // Distributivity and associativity, exactly.
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Degree is additive on products of nonzero polynomials.
        assert_eq!(
            a.mul(&c).degree(),
            Degree::finite(1 + 2),
        );
    }

    #[test]
    fn huge_exponents_stay_sparse() {
        let vars = xyz();
        let x = v(&vars, "x");
        let e = BigUint::from(5u32).pow(60u32);
        let p = x.pow_budgeted(&e, 10).expect("single monomial");
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree(), Degree::Finite(BigUint::from(5u32).pow(60u32)));
        // A two-term base with the same exponent must abort, not expand.
        let shifted = x.add(&Polynomial::one(vars.clone()));
        let err = shifted.pow_budgeted(&e, 1000).unwrap_err();
        assert!(matches!(err, ExprError::BudgetExceeded { budget: 1000, .. }));
        // A non-unit coefficient with a huge exponent aborts too.
        let two_x = x.scale(&BigInt::from(2));
        assert!(two_x.pow_budgeted(&e, 10).is_err());
    }

    #[test]
    fn substitution_matches_expected_binomial() {
        let vars = xyz();
        let x = v(&vars, "x");
        // x^2 with x -> x + 1 gives x^2 + 2x + 1.
        let sq = x.mul(&x);
        let images = vec![
            x.add(&Polynomial::one(vars.clone())),
            v(&vars, "y"),
            v(&vars, "z"),
        ];
        let out = sq.substitute(&images, 100).unwrap();
        assert_eq!(out.to_string(), "x^2 + 2*x + 1");
        // x*y with x -> 2 gives 2y.
        let images2 = vec![
            Polynomial::constant(vars.clone(), BigInt::from(2)),
            v(&vars, "y"),
            v(&vars, "z"),
        ];
        let xy = x.mul(&v(&vars, "y"));
        assert_eq!(xy.substitute(&images2, 100).unwrap().to_string(), "2*y");
    }

    #[test]
    fn evaluation_agrees_with_arithmetic() {
        use crate::rat::rat;
        let vars = xyz();
        let (x, y, _) = (v(&vars, "x"), v(&vars, "y"), v(&vars, "z"));
        // p = x^2*y - 3
        let p = x.mul(&x).mul(&y).sub(&Polynomial::constant(vars.clone(), BigInt::from(3)));
        let val = p.eval(&[rat(1, 2), rat(4, 1), rat(0, 1)]);
        assert_eq!(val, rat(-2, 1));
        let vi = p.eval_int(&[BigInt::from(3), BigInt::from(2), BigInt::from(9)]);
        assert_eq!(vi, BigInt::from(15));
    }
}
