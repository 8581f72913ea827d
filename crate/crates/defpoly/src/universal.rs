//! The concrete universal polynomial and its published arity data.
//!
//! Jones (1982) published one universal polynomial in full — a sum of 18
//! squares in unknowns `x₁, …, x₂₈` with parameters `n, m₁, m₂, m₃` and
//! degree `2·5⁶⁰` — alongside a table of (unknowns, degree) pairs for
//! variants whose details were never printed, including a degree-4 form in
//! 58 unknowns and a 9-unknown form of degree `47216·5⁵⁸ + 9728`. This
//! module transcribes the printed polynomial as an expression DAG, records
//! the published table, and provides the two stand-ins the rest of the
//! pipeline needs:
//!
//! * *metadata-only* instances for the 58- and 9-unknown variants, whose
//!   bodies are unavailable but whose arity arithmetic still runs; and
//! * *virtual* instances wrapping an enumerated set, for semantic
//!   evaluation: solvability of `q(ȳ; ℓ, m̄) = 0` is replaced by budgeted
//!   membership of `ℓ` — this is a stand-in justified by the existence of
//!   suitable parameters `m̄`, not a polynomial, and it never pretends to be
//!   one.
//!
//! The parameters `m̄` are never given numeric values anywhere in this
//! crate: determining them amounts to compiling a specific Turing machine
//! into the polynomial, which is far outside desk scale. Symbolic emission
//! keeps `m₁, m₂, m₃` as declared parameters.
//!
//! The transcription is guarded by a content checksum over its canonical
//! rendering, so an accidental edit of any coefficient or exponent fails a
//! test rather than silently corrupting everything built on top.

use crate::ce::{CeSet, Membership};
use crate::expr::{DagBuilder, Degree, ExprDag, ExprError, Node, NodeId, VarId, VarTable};
use num_bigint::BigUint;
use std::collections::HashSet;

/// One row of the published arity table: a universal polynomial is reported
/// to exist with this many unknowns and this degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesMeta {
    /// Number of unknowns ν.
    pub unknowns: u32,
    /// Degree δ, exact (the 9-unknown row's degree has 41 digits).
    pub degree: BigUint,
}

/// The published (unknowns, degree) pairs used here: `(58, 4)`,
/// `(28, 2·5⁶⁰)`, and `(9, 47216·5⁵⁸ + 9728)`.
pub fn jones_table() -> [JonesMeta; 3] {
    let five60 = BigUint::from(5u32).pow(60);
    let five58 = BigUint::from(5u32).pow(58);
    [
        JonesMeta {
            unknowns: 58,
            degree: BigUint::from(4u32),
        },
        JonesMeta {
            unknowns: 28,
            degree: 2u32 * five60,
        },
        JonesMeta {
            unknowns: 9,
            degree: BigUint::from(47216u32) * five58 + BigUint::from(9728u32),
        },
    ]
}

/// How a universal polynomial is present in this artifact.
#[derive(Clone, Debug)]
pub enum UniversalBody {
    /// A concrete expression DAG over unknowns `y₁..y_ν`, one distinguished
    /// argument, and parameter variables.
    Symbolic(ExprDag),
    /// No polynomial at all: solvability at `ℓ` is budgeted membership of
    /// `ℓ` in the wrapped set. Evaluation-only.
    Virtual(CeSet),
    /// Published metadata without a printed body; arity bookkeeping only.
    Unavailable,
}

/// A positively universal polynomial as consumed by the construction
/// pipeline: ν unknowns, degree δ, and a body that is symbolic, virtual, or
/// absent.
#[derive(Clone, Debug)]
pub struct UniversalPoly {
    /// Number of unknowns ν (0 for virtual instances).
    pub nu: u32,
    /// Degree δ of the body, exact.
    pub delta: Degree,
    /// The body itself.
    pub body: UniversalBody,
}

impl UniversalPoly {
    /// The fully transcribed 28-unknown instance.
    pub fn jones28() -> Self {
        let dag = jones_polynomial();
        let delta = dag.degree();
        UniversalPoly {
            nu: 28,
            delta,
            body: UniversalBody::Symbolic(dag),
        }
    }

    /// Metadata-only stand-in for the degree-4, 58-unknown variant.
    pub fn jones58() -> Self {
        UniversalPoly {
            nu: 58,
            delta: Degree::finite(4),
            body: UniversalBody::Unavailable,
        }
    }

    /// Metadata-only stand-in for the 9-unknown variant.
    pub fn jones9() -> Self {
        UniversalPoly {
            nu: 9,
            delta: Degree::Finite(jones_table()[2].degree.clone()),
            body: UniversalBody::Unavailable,
        }
    }

    /// Resolve a selector string: `jones58`, `jones28`, or `jones9`.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "jones58" => Some(Self::jones58()),
            "jones28" => Some(Self::jones28()),
            "jones9" => Some(Self::jones9()),
            _ => None,
        }
    }

    /// Budgeted solvability of `q(ȳ; ℓ, m̄) = 0` over the naturals.
    ///
    /// Only virtual bodies can answer (by oracle membership of `ℓ`);
    /// symbolic and unavailable bodies return `None` because without
    /// concrete parameters `m̄` the question has no finite procedure here.
    pub fn solvable_at(&self, ell: &BigUint, budget: u64) -> Option<Membership> {
        match &self.body {
            UniversalBody::Virtual(oracle) => Some(oracle.decide(ell, budget)),
            _ => None,
        }
    }
}

/// Wrap an enumerated set as a virtual universal instance: ν = 0, δ = 0,
/// and "`q(ȳ; ℓ, m̄) = 0` has a solution" meaning `ℓ` is in the set.
pub fn oracle_universal(w: CeSet) -> UniversalPoly {
    UniversalPoly {
        nu: 0,
        delta: Degree::finite(0),
        body: UniversalBody::Virtual(w),
    }
}

/// Variable table of the transcribed polynomial: unknowns `x1..x28`, then
/// the distinguished argument `n`, then parameters `m1, m2, m3`.
fn jones_vars() -> crate::expr::Vars {
    let mut names: Vec<String> = (1..=28).map(|i| format!("x{i}")).collect();
    names.extend(["n", "m1", "m2", "m3"].map(String::from));
    VarTable::new(names).expect("fixed name list is well-formed")
}

/// The printed 28-unknown universal polynomial, verbatim, as a DAG.
///
/// Eighteen squared integer-coefficient expressions summed together; the
/// second square `(x₆ − x₅^(5⁶⁰))²` carries the whole degree `2·5⁶⁰`.
/// Convention note: the polynomial is written for naturals starting at 1;
/// [`shift_one_based`] applies the `x ↦ x + 1` substitution needed under
/// the 0-based convention used everywhere else in this crate.
pub fn jones_polynomial() -> ExprDag {
    let mut b = DagBuilder::new(jones_vars());
    let x: Vec<NodeId> = (1..=28).map(|i| b.var_named(&format!("x{i}"))).collect();
    // x is 0-indexed below: x[i] is the printed x_{i+1}.
    let n = b.var_named("n");
    let m1 = b.var_named("m1");
    let m2 = b.var_named("m2");
    let m3 = b.var_named("m3");
    let one = b.konst(1);

    // (x1·x2·x3² + x4 − (x5 − n·m3)·x6²)²
    let s1 = {
        let x3sq = b.square(x[2]);
        let t1 = b.prod(vec![x[0], x[1], x3sq]);
        let nm3 = b.prod(vec![n, m3]);
        let diff = b.sub(x[4], nm3);
        let x6sq = b.square(x[5]);
        let t3 = b.prod(vec![diff, x6sq]);
        let t3n = b.neg(t3);
        let inner = b.sum(vec![t1, x[3], t3n]);
        b.square(inner)
    };

    // (x6 − x5^(5⁶⁰))²
    let s2 = {
        let tower = b.pow(x[4], BigUint::from(5u32).pow(60));
        let inner = b.sub(x[5], tower);
        b.square(inner)
    };

    // (x7 + x6⁴ − 1 − x7·x5⁵)²
    let s3 = {
        let x6p4 = b.pow_u64(x[5], 4);
        let x5p5 = b.pow_u64(x[4], 5);
        let t = b.prod(vec![x[6], x5p5]);
        let tn = b.neg(t);
        let onen = b.neg(one);
        let inner = b.sum(vec![x[6], x6p4, onen, tn]);
        b.square(inner)
    };

    // (x8 + 2·m1 − x5⁵)²
    let s4 = {
        let two = b.konst(2);
        let t = b.prod(vec![two, m1]);
        let x5p5 = b.pow_u64(x[4], 5);
        let x5n = b.neg(x5p5);
        let inner = b.sum(vec![x[7], t, x5n]);
        b.square(inner)
    };

    // (x2 − m2 − x9·x8)²
    let s5 = {
        let t = b.prod(vec![x[8], x[7]]);
        let m2n = b.neg(m2);
        let tn = b.neg(t);
        let inner = b.sum(vec![x[1], m2n, tn]);
        b.square(inner)
    };

    // (x1 − m3 − x10·x8)²
    let s6 = {
        let t = b.prod(vec![x[9], x[7]]);
        let m3n = b.neg(m3);
        let tn = b.neg(t);
        let inner = b.sum(vec![x[0], m3n, tn]);
        b.square(inner)
    };

    // (x11 − x6¹⁶)²
    let s7 = {
        let x6p16 = b.pow_u64(x[5], 16);
        let inner = b.sub(x[10], x6p16);
        b.square(inner)
    };

    // ([x3 + x1x6³ + x2x6⁵ + (2(x1 − m1x7)(1 + n·x5⁵ + x3)⁴ + x7x5⁵
    //    + x7x5⁵x6⁴)x6⁴]·[x11² − x11]
    //  + [x6³ − x5x2 + x2 + x8x7x6³ + (x5⁵ − 2)x6⁵]·[x11² − 1] − x12)²
    let s8 = {
        let x6p3 = b.pow_u64(x[5], 3);
        let x6p4 = b.pow_u64(x[5], 4);
        let x6p5 = b.pow_u64(x[5], 5);
        let x5p5 = b.pow_u64(x[4], 5);

        let two = b.konst(2);
        let m1x7 = b.prod(vec![m1, x[6]]);
        let m1x7n = b.neg(m1x7);
        let lin = b.sum(vec![x[0], m1x7n]);
        let nx5p5 = b.prod(vec![n, x5p5]);
        let base = b.sum(vec![one, nx5p5, x[2]]);
        let base4 = b.pow_u64(base, 4);
        let lead = b.prod(vec![two, lin, base4]);
        let x7x5 = b.prod(vec![x[6], x5p5]);
        let x7x5x6 = b.prod(vec![x[6], x5p5, x6p4]);
        let coeff = b.sum(vec![lead, x7x5, x7x5x6]);
        let coeff_x6 = b.prod(vec![coeff, x6p4]);
        let x1x6 = b.prod(vec![x[0], x6p3]);
        let x2x6 = b.prod(vec![x[1], x6p5]);
        let bracket_a = b.sum(vec![x[2], x1x6, x2x6, coeff_x6]);

        let x11sq = b.square(x[10]);
        let x11n = b.neg(x[10]);
        let bracket_b = b.sum(vec![x11sq, x11n]);

        let x5x2 = b.prod(vec![x[4], x[1]]);
        let x5x2n = b.neg(x5x2);
        let x8x7x6 = b.prod(vec![x[7], x[6], x6p3]);
        let twon = b.neg(two);
        let x5m2 = b.sum(vec![x5p5, twon]);
        let tail = b.prod(vec![x5m2, x6p5]);
        let bracket_c = b.sum(vec![x6p3, x5x2n, x[1], x8x7x6, tail]);

        let onen = b.neg(one);
        let bracket_d = b.sum(vec![x11sq, onen]);

        let ab = b.prod(vec![bracket_a, bracket_b]);
        let cd = b.prod(vec![bracket_c, bracket_d]);
        let x12n = b.neg(x[11]);
        let inner = b.sum(vec![ab, cd, x12n]);
        b.square(inner)
    };

    // (x13 − 2·x14·x15²·x12²·x11²)²
    let s9 = {
        let two = b.konst(2);
        let x15sq = b.square(x[14]);
        let x12sq = b.square(x[11]);
        let x11sq = b.square(x[10]);
        let t = b.prod(vec![two, x[13], x15sq, x12sq, x11sq]);
        let inner = b.sub(x[12], t);
        b.square(inner)
    };

    // (x13²·x16² − x16² + 1 − x17²)²
    let s10 = {
        let x13sq = b.square(x[12]);
        let x16sq = b.square(x[15]);
        let t1 = b.prod(vec![x13sq, x16sq]);
        let x16n = b.neg(x16sq);
        let x17sq = b.square(x[16]);
        let x17n = b.neg(x17sq);
        let inner = b.sum(vec![t1, x16n, one, x17n]);
        b.square(inner)
    };

    // (4·(x18 − x16·x15·x11²)² + x19 − x16²)²
    let s11 = {
        let four = b.konst(4);
        let x11sq = b.square(x[10]);
        let t = b.prod(vec![x[15], x[14], x11sq]);
        let diff = b.sub(x[17], t);
        let diffsq = b.square(diff);
        let lead = b.prod(vec![four, diffsq]);
        let x16sq = b.square(x[15]);
        let x16n = b.neg(x16sq);
        let inner = b.sum(vec![lead, x[18], x16n]);
        b.square(inner)
    };

    // (x16 − x12 − 1 − x20·x13 + x20)²
    let s12 = {
        let t = b.prod(vec![x[19], x[12]]);
        let x12n = b.neg(x[11]);
        let onen = b.neg(one);
        let tn = b.neg(t);
        let inner = b.sum(vec![x[15], x12n, onen, tn, x[19]]);
        b.square(inner)
    };

    // (x21 − (x14·x11² + 1)·x12·x15·x11²)²
    let s13 = {
        let x11sq = b.square(x[10]);
        let t = b.prod(vec![x[13], x11sq]);
        let fac = b.sum(vec![t, one]);
        let t2 = b.prod(vec![fac, x[11], x[14], x11sq]);
        let inner = b.sub(x[20], t2);
        b.square(inner)
    };

    // (x18 − 2·x12 − 1 − x22)²
    let s14 = {
        let two = b.konst(2);
        let t = b.prod(vec![two, x[11]]);
        let tn = b.neg(t);
        let onen = b.neg(one);
        let x22n = b.neg(x[21]);
        let inner = b.sum(vec![x[17], tn, onen, x22n]);
        b.square(inner)
    };

    // (x23 − x5·x14 − x18·x21 + 2·x18 − 4·x21·x24 + 5·x24)²
    let s15 = {
        let two = b.konst(2);
        let four = b.konst(4);
        let five = b.konst(5);
        let t1 = b.prod(vec![x[4], x[13]]);
        let t2 = b.prod(vec![x[17], x[20]]);
        let t3 = b.prod(vec![two, x[17]]);
        let t4 = b.prod(vec![four, x[20], x[23]]);
        let t5 = b.prod(vec![five, x[23]]);
        let t1n = b.neg(t1);
        let t2n = b.neg(t2);
        let t4n = b.neg(t4);
        let inner = b.sum(vec![x[22], t1n, t2n, t3, t4n, t5]);
        b.square(inner)
    };

    // (x23² − (x21² − 1)·x18² − 1)²
    let s16 = {
        let x23sq = b.square(x[22]);
        let x21sq = b.square(x[20]);
        let onen = b.neg(one);
        let pell = b.sum(vec![x21sq, onen]);
        let x18sq = b.square(x[17]);
        let t = b.prod(vec![pell, x18sq]);
        let tn = b.neg(t);
        let inner = b.sum(vec![x23sq, tn, onen]);
        b.square(inner)
    };

    // (x25² − (x21² − 1)·x26²·x18⁴ − 1)²
    let s17 = {
        let x25sq = b.square(x[24]);
        let x21sq = b.square(x[20]);
        let onen = b.neg(one);
        let pell = b.sum(vec![x21sq, onen]);
        let x26sq = b.square(x[25]);
        let x18p4 = b.pow_u64(x[17], 4);
        let t = b.prod(vec![pell, x26sq, x18p4]);
        let tn = b.neg(t);
        let inner = b.sum(vec![x25sq, tn, onen]);
        b.square(inner)
    };

    // ((x23 + x27·x25)² − ((x21 + x25²·(x23² − x21))² − 1)·(2·x12 + 1
    //   + x28·x18)² − 1)²
    let s18 = {
        let t = b.prod(vec![x[26], x[24]]);
        let base = b.sum(vec![x[22], t]);
        let lead = b.square(base);

        let x25sq = b.square(x[24]);
        let x23sq = b.square(x[22]);
        let x21n = b.neg(x[20]);
        let delta = b.sum(vec![x23sq, x21n]);
        let scaled = b.prod(vec![x25sq, delta]);
        let shifted = b.sum(vec![x[20], scaled]);
        let shifted_sq = b.square(shifted);
        let onen = b.neg(one);
        let pell = b.sum(vec![shifted_sq, onen]);

        let two = b.konst(2);
        let t2 = b.prod(vec![two, x[11]]);
        let t3 = b.prod(vec![x[27], x[17]]);
        let modulus = b.sum(vec![t2, one, t3]);
        let modulus_sq = b.square(modulus);

        let prod = b.prod(vec![pell, modulus_sq]);
        let prodn = b.neg(prod);
        let inner = b.sum(vec![lead, prodn, onen]);
        b.square(inner)
    };

    let root = b.sum(vec![
        s1, s2, s3, s4, s5, s6, s7, s8, s9, s10, s11, s12, s13, s14, s15, s16, s17, s18,
    ]);
    b.finish(root)
}

/// Substitute `x ↦ x + 1` for each listed variable — the bridge between
/// the 1-based natural-number convention the printed polynomial assumes and
/// the 0-based convention used everywhere else here. Degrees are preserved
/// (substitution by a degree-1 expression).
pub fn shift_one_based(e: &ExprDag, targets: &[VarId]) -> Result<ExprDag, ExprError> {
    let width = e.vars().len();
    for t in targets {
        if t.index() >= width {
            return Err(ExprError::VarOutOfRange(t.index() as u32, width));
        }
    }
    let shifted: HashSet<usize> = targets.iter().map(|t| t.index()).collect();
    let mut b = DagBuilder::new(e.vars().clone());
    let root = e.map_into(&mut b, &mut |v, b| {
        let node = b.var(v);
        if shifted.contains(&v.index()) {
            let one = b.konst(1);
            b.sum(vec![node, one])
        } else {
            node
        }
    });
    Ok(b.finish(root))
}

/// 64-bit FNV-1a over a byte string: the content checksum used to pin the
/// transcription (and any other canonical rendering worth guarding).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &byte in bytes {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Checksum of the transcription's canonical rendering, pinned by test.
pub fn jones_checksum() -> u64 {
    fnv1a64(jones_polynomial().to_string().as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i, Rat};

    #[test]
    fn published_table_is_exact() {
        let table = jones_table();
        assert_eq!(table[0].unknowns, 58);
        assert_eq!(table[0].degree, BigUint::from(4u32));
        assert_eq!(table[1].unknowns, 28);
        assert_eq!(table[1].degree, BigUint::from(2u32) * BigUint::from(5u32).pow(60));
        assert_eq!(table[2].unknowns, 9);
        let row3 = BigUint::from(47216u32) * BigUint::from(5u32).pow(58) + BigUint::from(9728u32);
        assert_eq!(table[2].degree, row3);
        // The 9-unknown degree is astronomically large but exactly held.
        assert_eq!(row3.to_string().len(), 46);
    }

    #[test]
    fn transcription_has_the_published_shape() {
        let dag = jones_polynomial();
        let five60 = BigUint::from(5u32).pow(60);
        assert_eq!(dag.degree(), Degree::Finite(2u32 * &five60));
        assert_eq!(dag.vars().len(), 32); // 28 unknowns + n + 3 parameters

        // Structural sum-of-squares: the root is a sum of 18 children, each
        // of which is syntactically a square.
        let Node::Sum(children) = dag.node(dag.root()) else {
            panic!("root must be a sum");
        };
        assert_eq!(children.len(), 18);
        for &child in children {
            let Node::Pow(_, e) = dag.node(child) else {
                panic!("every summand must be a square");
            };
            assert_eq!(*e, BigUint::from(2u32));
        }

        // The degree-carrying node x5^(5⁶⁰) is present (and hash-consing
        // makes any second mention share it by construction).
        let x5 = dag.vars().id("x5").unwrap();
        let found = (0..dag.arena_len()).any(|i| {
            matches!(
                dag.node(NodeId(i as u32)),
                Node::Pow(base, e)
                    if *e == five60 && matches!(dag.node(*base), Node::Var(v) if *v == x5)
            )
        });
        assert!(found, "the x5 tower with exponent 5^60 is in the arena");
    }

    #[test]
    fn transcription_checksum_is_pinned() {
        // Guards the transcription against accidental edits: any change to
        // a coefficient, exponent, or term ordering shifts this value.
        assert_eq!(jones_checksum(), 6123255596203477346);
    }

    #[test]
    fn expansion_is_sparse_and_matches_pointwise_evaluation() {
        let dag = jones_polynomial();
        let poly = dag.expand(2_000_000).expect("expansion fits the budget");
        assert_eq!(poly.degree(), Degree::Finite(BigUint::from(2u32) * BigUint::from(5u32).pow(60)));
        assert_eq!(poly.num_terms(), 2458);

        // Same value through the DAG and through the expansion. The x5
        // coordinate is ±1 so the 5⁶⁰-exponent powers stay exact and fast.
        let mut point: Vec<Rat> = (0..32).map(|i| rat(i as i64 % 5 - 2, 3)).collect();
        point[4] = rat_i(-1);
        let via_dag = dag.eval(&point).expect("no opaque nodes");
        let via_poly = poly.eval(&point);
        assert_eq!(via_dag, via_poly);
    }

    #[test]
    fn shifting_exercises_the_expansion_budget() {
        // Under x5 ↦ x5 + 1 the tower becomes (x5+1)^(5⁶⁰): a dense binomial
        // no feasible budget survives — the honest outcome is a budget error,
        // not an attempt.  A modest budget keeps the abort itself quick.
        let dag = jones_polynomial();
        let x5 = dag.vars().id("x5").unwrap();
        let shifted = shift_one_based(&dag, &[x5]).unwrap();
        assert_eq!(shifted.degree(), dag.degree());
        assert!(matches!(
            shifted.expand(100_000),
            Err(ExprError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn shift_is_the_identity_off_its_targets() {
        let vars = VarTable::new(vec!["x", "y"]).unwrap();
        let mut b = DagBuilder::new(vars.clone());
        let xv = b.var_named("x");
        let xsq = b.square(xv);
        let dag = b.finish(xsq);

        let x = vars.id("x").unwrap();
        let y = vars.id("y").unwrap();
        let shifted = shift_one_based(&dag, &[x]).unwrap();
        assert_eq!(shifted.to_string(), "(x + 1)^2");
        let unshifted = shift_one_based(&dag, &[y]).unwrap();
        assert_eq!(unshifted, dag);
        assert_eq!(shift_one_based(&dag, &[]).unwrap(), dag);

        let bad = VarId(9);
        assert!(matches!(
            shift_one_based(&dag, &[bad]),
            Err(ExprError::VarOutOfRange(9, 2))
        ));
    }

    #[test]
    fn virtual_instances_answer_by_oracle_membership() {
        let evens = CeSet::new("evens", |s| Some(BigUint::from(2 * s)));
        let q = oracle_universal(evens);
        assert_eq!(q.nu, 0);
        assert_eq!(q.delta, Degree::finite(0));
        assert_eq!(
            q.solvable_at(&BigUint::from(4u32), 10),
            Some(Membership::Yes)
        );
        assert_eq!(
            q.solvable_at(&BigUint::from(3u32), 1_000),
            Some(Membership::Unknown)
        );
        // Bodies without an oracle cannot answer solvability at all.
        assert_eq!(UniversalPoly::jones58().solvable_at(&BigUint::from(4u32), 10), None);
        assert_eq!(UniversalPoly::jones28().solvable_at(&BigUint::from(4u32), 10), None);
    }

    #[test]
    fn selectors_resolve_to_the_published_rows() {
        let q58 = UniversalPoly::by_name("jones58").unwrap();
        assert_eq!((q58.nu, q58.delta), (58, Degree::finite(4)));
        assert!(matches!(q58.body, UniversalBody::Unavailable));
        let q28 = UniversalPoly::by_name("jones28").unwrap();
        assert_eq!(q28.nu, 28);
        assert!(matches!(q28.body, UniversalBody::Symbolic(_)));
        let q9 = UniversalPoly::by_name("jones9").unwrap();
        assert_eq!(q9.delta, Degree::Finite(jones_table()[2].degree.clone()));
        assert!(UniversalPoly::by_name("jones999").is_none());
    }
}
