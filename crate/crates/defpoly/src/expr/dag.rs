//! Hash-consed expression DAGs.
//!
//! A [`DagBuilder`] interns nodes structurally, so a repeated subterm — say
//! `x5^(5^60)` used in several places — is stored once and shared by id.
//! The arena is topologically ordered by construction (children always have
//! smaller indices than their parents), which lets every traversal here run
//! as a single indexed pass with no recursion over the arena.
//!
//! Beyond polynomial nodes, two opaque node kinds appear: `SinPi(t)` stands
//! for `sin(pi * t)` (arguments are always rational multiples of pi in this
//! artifact), and `Call` applies a named polynomial that is carried by
//! metadata only — its declared total degree participates in degree
//! bookkeeping, but it cannot be expanded.

use super::{Degree, ExprError, Polynomial, VarId, Vars};
use crate::rat::{rat_pow, sin_pi_exact, Rat};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Index of a node in its arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    /// Position in the owning arena.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One DAG node.  Children are arena ids, always smaller than the node's own
/// id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Integer constant.
    Const(BigInt),
    /// Variable reference.
    Var(VarId),
    /// Sum of two or more children.
    Sum(Vec<NodeId>),
    /// Product of two or more children.
    Prod(Vec<NodeId>),
    /// Negation.
    Neg(NodeId),
    /// Power with an arbitrary-precision natural exponent.
    Pow(NodeId, BigUint),
    /// `sin(pi * child)` — opaque, only interval-evaluable.
    SinPi(NodeId),
    /// Application of a named polynomial known only by metadata.
    ///
    /// The first `sep` arguments are unknowns, the rest parameters (rendered
    /// after a semicolon).  `degree` is the declared total degree used by
    /// degree bookkeeping.
    Call {
        /// Symbol the application prints as.
        name: String,
        /// Argument nodes.
        args: Vec<NodeId>,
        /// How many leading arguments are unknowns.
        sep: usize,
        /// Declared total degree of the named polynomial.
        degree: BigUint,
    },
}

impl Node {
    /// Child ids in structural order.
    pub(crate) fn children(&self) -> Vec<NodeId> {
        match self {
            Node::Const(_) | Node::Var(_) => Vec::new(),
            Node::Sum(ids) | Node::Prod(ids) => ids.clone(),
            Node::Neg(a) | Node::Pow(a, _) | Node::SinPi(a) => vec![*a],
            Node::Call { args, .. } => args.clone(),
        }
    }
}

/// Arena builder with structural hash-consing.
pub struct DagBuilder {
    vars: Vars,
    nodes: Vec<Node>,
    memo: HashMap<Node, NodeId>,
}

impl DagBuilder {
    /// Fresh builder over a variable table.
    pub fn new(vars: Vars) -> Self {
        DagBuilder {
            vars,
            nodes: Vec::new(),
            memo: HashMap::new(),
        }
    }

    /// The builder's variable table.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    fn intern(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.memo.get(&n) {
            return id;
        }
        let id = NodeId(u32::try_from(self.nodes.len()).expect("arena fits in u32"));
        self.nodes.push(n.clone());
        self.memo.insert(n, id);
        id
    }

    fn check_ids(&self, ids: &[NodeId]) {
        for id in ids {
            assert!(id.index() < self.nodes.len(), "foreign node id");
        }
    }

    /// Integer constant.
    pub fn konst(&mut self, c: i64) -> NodeId {
        self.konst_big(BigInt::from(c))
    }

    /// Big-integer constant.
    pub fn konst_big(&mut self, c: BigInt) -> NodeId {
        self.intern(Node::Const(c))
    }

    /// Variable by id.
    pub fn var(&mut self, v: VarId) -> NodeId {
        assert!(
            v.index() < self.vars.len(),
            "variable id {} out of range for a table of {} variables",
            v.0,
            self.vars.len()
        );
        self.intern(Node::Var(v))
    }

    /// Variable by name.
    ///
    /// # Panics
    ///
    /// Panics when the name is not declared in the builder's table.
    pub fn var_named(&mut self, name: &str) -> NodeId {
        let v = self
            .vars
            .id(name)
            .unwrap_or_else(|| panic!("undeclared variable {name:?}"));
        self.var(v)
    }

    /// Sum.  Empty sums collapse to `0`, singletons to their child.
    pub fn sum(&mut self, ids: Vec<NodeId>) -> NodeId {
        match ids.len() {
            0 => self.konst(0),
            1 => ids[0],
            _ => {
                self.check_ids(&ids);
                self.intern(Node::Sum(ids))
            }
        }
    }

    /// Product.  Empty products collapse to `1`, singletons to their child.
    pub fn prod(&mut self, ids: Vec<NodeId>) -> NodeId {
        match ids.len() {
            0 => self.konst(1),
            1 => ids[0],
            _ => {
                self.check_ids(&ids);
                self.intern(Node::Prod(ids))
            }
        }
    }

    /// Negation.
    pub fn neg(&mut self, a: NodeId) -> NodeId {
        self.check_ids(&[a]);
        self.intern(Node::Neg(a))
    }

    /// Difference `a - b`.
    pub fn sub(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let nb = self.neg(b);
        self.sum(vec![a, nb])
    }

    /// Power with an arbitrary-precision exponent.
    pub fn pow(&mut self, base: NodeId, e: BigUint) -> NodeId {
        self.check_ids(&[base]);
        self.intern(Node::Pow(base, e))
    }

    /// Power with a machine-word exponent.
    pub fn pow_u64(&mut self, base: NodeId, e: u64) -> NodeId {
        self.pow(base, BigUint::from(e))
    }

    /// Square.
    pub fn square(&mut self, a: NodeId) -> NodeId {
        self.pow_u64(a, 2)
    }

    /// `sin(pi * a)`.
    pub fn sinpi(&mut self, a: NodeId) -> NodeId {
        self.check_ids(&[a]);
        self.intern(Node::SinPi(a))
    }

    /// Opaque application of a named polynomial (see [`Node::Call`]).
    pub fn call(&mut self, name: &str, args: Vec<NodeId>, sep: usize, degree: BigUint) -> NodeId {
        assert!(sep <= args.len(), "argument split point out of range");
        self.check_ids(&args);
        self.intern(Node::Call {
            name: name.to_string(),
            args,
            sep,
            degree,
        })
    }

    /// Seal the arena with `root` as the designated expression.
    pub fn finish(self, root: NodeId) -> ExprDag {
        assert!(root.index() < self.nodes.len(), "root id out of range");
        ExprDag {
            vars: self.vars,
            nodes: self.nodes,
            root,
        }
    }
}

/// Immutable expression DAG.
///
/// Equality is structural from the roots (arena numbering does not matter).
#[derive(Clone, Debug)]
pub struct ExprDag {
    vars: Vars,
    nodes: Vec<Node>,
    root: NodeId,
}

impl ExprDag {
    /// The variable table.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Root node id.
    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Node by id.
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    /// Arena size (interned nodes, shared subterms counted once).
    pub fn arena_len(&self) -> usize {
        self.nodes.len()
    }

    fn reachable_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if mask[id.index()] {
                continue;
            }
            mask[id.index()] = true;
            stack.extend(self.nodes[id.index()].children());
        }
        mask
    }

    /// Number of distinct nodes reachable from the root.
    pub fn node_count(&self) -> usize {
        self.reachable_mask().iter().filter(|&&b| b).count()
    }

    /// Structural total degree, computed without expansion.
    ///
    /// Rules: `max` over sums, sum over products, scaling for powers; a sum
    /// takes the maximum of its children's degrees even when leading terms
    /// would cancel, so this is an upper bound that is exact for
    /// cancellation-free expressions.  `SinPi` counts as degree `0`
    /// (bounded, not polynomial); `Call` contributes its declared degree.
    pub fn degree(&self) -> Degree {
        let mask = self.reachable_mask();
        let mut memo: Vec<Option<Degree>> = vec![None; self.nodes.len()];
        for i in 0..self.nodes.len() {
            if !mask[i] {
                continue;
            }
            let get = |id: &NodeId| -> &Degree {
                memo[id.index()].as_ref().expect("children precede parents")
            };
            let d = match &self.nodes[i] {
                Node::Const(c) => {
                    if c.is_zero() {
                        Degree::MinusInfinity
                    } else {
                        Degree::finite(0)
                    }
                }
                Node::Var(_) => Degree::finite(1),
                Node::Sum(ids) => ids
                    .iter()
                    .fold(Degree::MinusInfinity, |acc, id| acc.join(get(id))),
                Node::Prod(ids) => ids
                    .iter()
                    .fold(Degree::finite(0), |acc, id| acc.add(get(id))),
                Node::Neg(a) => get(a).clone(),
                Node::Pow(b, e) => get(b).pow(e),
                Node::SinPi(_) => Degree::finite(0),
                Node::Call { degree, .. } => Degree::Finite(degree.clone()),
            };
            memo[i] = Some(d);
        }
        memo[self.root.index()].clone().expect("root is reachable")
    }

    /// Fully expanded sparse polynomial, or `BudgetExceeded` once any
    /// intermediate term count passes `budget`.
    ///
    /// Fails with `NotPolynomial` if the DAG contains `SinPi` or `Call`
    /// nodes.
    pub fn expand(&self, budget: usize) -> Result<Polynomial, ExprError> {
        let mask = self.reachable_mask();
        let mut memo: Vec<Option<Polynomial>> = vec![None; self.nodes.len()];
        for i in 0..self.nodes.len() {
            if !mask[i] {
                continue;
            }
            let p = match &self.nodes[i] {
                Node::Const(c) => Polynomial::constant(self.vars.clone(), c.clone()),
                Node::Var(v) => Polynomial::var(self.vars.clone(), *v),
                Node::Sum(ids) => {
                    let mut acc = Polynomial::zero(self.vars.clone());
                    for id in ids {
                        acc = acc.add(memo[id.index()].as_ref().expect("child ready"));
                        if acc.num_terms() > budget {
                            return Err(ExprError::BudgetExceeded {
                                budget,
                                reached: acc.num_terms(),
                            });
                        }
                    }
                    acc
                }
                Node::Prod(ids) => {
                    let mut acc = Polynomial::one(self.vars.clone());
                    for id in ids {
                        acc = acc.mul_budgeted(memo[id.index()].as_ref().expect("child ready"), budget)?;
                    }
                    acc
                }
                Node::Neg(a) => memo[a.index()].as_ref().expect("child ready").neg(),
                Node::Pow(b, e) => memo[b.index()]
                    .as_ref()
                    .expect("child ready")
                    .pow_budgeted(e, budget)?,
                Node::SinPi(_) => return Err(ExprError::NotPolynomial("sin")),
                Node::Call { .. } => return Err(ExprError::NotPolynomial("an opaque call")),
            };
            memo[i] = Some(p);
        }
        Ok(memo[self.root.index()].take().expect("root is reachable"))
    }

    /// Exact value at a rational point.
    ///
    /// `sin(π·t)` is evaluated where its value is rational — exactly the
    /// arguments where it lands on `0`, `±1/2`, or `±1` — and fails with
    /// `NotPolynomial` anywhere else, since every other rational `t` makes
    /// the value irrational.  `Call` nodes always fail (they are opaque
    /// here).  Panics, like [`rat_pow`], on an exponent beyond machine
    /// range over a non-unit base.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, ExprError> {
        assert_eq!(point.len(), self.vars.len(), "point width mismatch");
        let mask = self.reachable_mask();
        let mut memo: Vec<Option<Rat>> = vec![None; self.nodes.len()];
        for i in 0..self.nodes.len() {
            if !mask[i] {
                continue;
            }
            let val = match &self.nodes[i] {
                Node::Const(c) => Rat::from(c.clone()),
                Node::Var(v) => point[v.index()].clone(),
                Node::Sum(ids) => {
                    let mut acc = Rat::zero();
                    for id in ids {
                        acc += memo[id.index()].as_ref().expect("child ready");
                    }
                    acc
                }
                Node::Prod(ids) => {
                    let mut acc = Rat::from(BigInt::from(1));
                    for id in ids {
                        acc *= memo[id.index()].as_ref().expect("child ready");
                    }
                    acc
                }
                Node::Neg(a) => -memo[a.index()].clone().expect("child ready"),
                Node::Pow(b, e) => rat_pow(memo[b.index()].as_ref().expect("child ready"), e),
                Node::SinPi(a) => {
                    let t = memo[a.index()].as_ref().expect("child ready");
                    match sin_pi_exact(t) {
                        Some(v) => v,
                        None => return Err(ExprError::NotPolynomial("sin")),
                    }
                }
                Node::Call { .. } => return Err(ExprError::NotPolynomial("an opaque call")),
            };
            memo[i] = Some(val);
        }
        Ok(memo[self.root.index()].take().expect("root is reachable"))
    }

    /// Rebuild this expression inside `target`, sending each variable
    /// through `var_map` (which may return any node — a variable of the
    /// target table, a shifted copy, a constant).  Returns the rebuilt
    /// root's id in `target`.
    pub fn map_into(
        &self,
        target: &mut DagBuilder,
        var_map: &mut dyn FnMut(VarId, &mut DagBuilder) -> NodeId,
    ) -> NodeId {
        let mask = self.reachable_mask();
        let mut memo: Vec<Option<NodeId>> = vec![None; self.nodes.len()];
        for i in 0..self.nodes.len() {
            if !mask[i] {
                continue;
            }
            let new_id = match &self.nodes[i] {
                Node::Const(c) => target.konst_big(c.clone()),
                Node::Var(v) => var_map(*v, target),
                Node::Sum(ids) => {
                    let args = ids.iter().map(|id| memo[id.index()].expect("child ready")).collect();
                    target.sum(args)
                }
                Node::Prod(ids) => {
                    let args = ids.iter().map(|id| memo[id.index()].expect("child ready")).collect();
                    target.prod(args)
                }
                Node::Neg(a) => {
                    let aa = memo[a.index()].expect("child ready");
                    target.neg(aa)
                }
                Node::Pow(b, e) => {
                    let bb = memo[b.index()].expect("child ready");
                    target.pow(bb, e.clone())
                }
                Node::SinPi(a) => {
                    let aa = memo[a.index()].expect("child ready");
                    target.sinpi(aa)
                }
                Node::Call {
                    name,
                    args,
                    sep,
                    degree,
                } => {
                    let aa = args.iter().map(|id| memo[id.index()].expect("child ready")).collect();
                    target.call(name, aa, *sep, degree.clone())
                }
            };
            memo[i] = Some(new_id);
        }
        memo[self.root.index()].expect("root is reachable")
    }

    fn node_eq(
        &self,
        a: NodeId,
        other: &ExprDag,
        b: NodeId,
        memo: &mut HashMap<(u32, u32), bool>,
    ) -> bool {
        if let Some(&r) = memo.get(&(a.0, b.0)) {
            return r;
        }
        let r = match (&self.nodes[a.index()], &other.nodes[b.index()]) {
            (Node::Const(x), Node::Const(y)) => x == y,
            (Node::Var(x), Node::Var(y)) => x == y,
            (Node::Sum(xs), Node::Sum(ys)) | (Node::Prod(xs), Node::Prod(ys)) => {
                xs.len() == ys.len()
                    && xs
                        .iter()
                        .zip(ys)
                        .all(|(x, y)| self.node_eq(*x, other, *y, memo))
            }
            (Node::Neg(x), Node::Neg(y)) | (Node::SinPi(x), Node::SinPi(y)) => {
                self.node_eq(*x, other, *y, memo)
            }
            (Node::Pow(x, e), Node::Pow(y, g)) => e == g && self.node_eq(*x, other, *y, memo),
            (
                Node::Call {
                    name: na,
                    args: aa,
                    sep: sa,
                    degree: da,
                },
                Node::Call {
                    name: nb,
                    args: ab,
                    sep: sb,
                    degree: db,
                },
            ) => {
                na == nb
                    && sa == sb
                    && da == db
                    && aa.len() == ab.len()
                    && aa
                        .iter()
                        .zip(ab)
                        .all(|(x, y)| self.node_eq(*x, other, *y, memo))
            }
            _ => false,
        };
        memo.insert((a.0, b.0), r);
        r
    }

    fn prec(&self, id: NodeId) -> u8 {
        match &self.nodes[id.index()] {
            Node::Sum(_) => 1,
            Node::Neg(_) => 2,
            Node::Const(c) if c.is_negative() => 2,
            Node::Prod(_) => 3,
            Node::Pow(..) => 4,
            Node::Const(_) | Node::Var(_) | Node::SinPi(_) | Node::Call { .. } => 5,
        }
    }

    fn fmt_node(&self, f: &mut fmt::Formatter<'_>, id: NodeId, parent_prec: u8) -> fmt::Result {
        if self.prec(id) < parent_prec {
            write!(f, "(")?;
            self.fmt_inner(f, id)?;
            return write!(f, ")");
        }
        self.fmt_inner(f, id)
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, id: NodeId) -> fmt::Result {
        match &self.nodes[id.index()] {
            Node::Const(c) => write!(f, "{c}"),
            Node::Var(v) => write!(f, "{}", self.vars.name(*v)),
            Node::Sum(ids) => {
                for (k, c) in ids.iter().enumerate() {
                    match &self.nodes[c.index()] {
                        Node::Neg(inner) => {
                            write!(f, "{}", if k == 0 { "-" } else { " - " })?;
                            self.fmt_node(f, *inner, 3)?;
                        }
                        Node::Const(v) if v.is_negative() => {
                            write!(f, "{}{}", if k == 0 { "-" } else { " - " }, v.abs())?;
                        }
                        _ => {
                            if k > 0 {
                                write!(f, " + ")?;
                            }
                            self.fmt_node(f, *c, 2)?;
                        }
                    }
                }
                Ok(())
            }
            Node::Prod(ids) => {
                for (k, c) in ids.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    self.fmt_node(f, *c, 3)?;
                }
                Ok(())
            }
            Node::Neg(a) => {
                write!(f, "-")?;
                self.fmt_node(f, *a, 3)
            }
            Node::Pow(b, e) => {
                self.fmt_node(f, *b, 5)?;
                write!(f, "^{e}")
            }
            Node::SinPi(a) => {
                write!(f, "sin(pi*")?;
                self.fmt_node(f, *a, 3)?;
                write!(f, ")")
            }
            Node::Call {
                name, args, sep, ..
            } => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        let split = *sep > 0 && k == *sep;
                        write!(f, "{}", if split { "; " } else { ", " })?;
                    }
                    self.fmt_node(f, *a, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl PartialEq for ExprDag {
    fn eq(&self, other: &Self) -> bool {
        *self.vars == *other.vars && {
            let mut memo = HashMap::new();
            self.node_eq(self.root, other, other.root, &mut memo)
        }
    }
}

impl Eq for ExprDag {}

impl fmt::Display for ExprDag {
    /// Canonical infix rendering with minimal parentheses; deterministic for
    /// a given structure, so it can be checksummed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(f, self.root, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::VarTable;

    fn table() -> Vars {
        VarTable::new(vec!["x", "y", "z"]).expect("fresh names")
    }

    #[test]
    fn hash_consing_shares_repeated_subterms() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let e60 = BigUint::from(5u32).pow(60u32);
        let p1 = b.pow(x, e60.clone());
        let p2 = b.pow(x, e60.clone());
        assert_eq!(p1, p2);
        let y = b.var_named("y");
        let d = b.sub(y, p1);
        let sq = b.square(d);
        let dag = b.finish(sq);
        // x, x^e, y, -(x^e), y - x^e, square: six nodes, nothing duplicated.
        assert_eq!(dag.node_count(), 6);
        assert_eq!(
            dag.degree(),
            Degree::Finite(BigUint::from(2u32) * BigUint::from(5u32).pow(60u32))
        );
    }

    #[test]
    fn degree_rules_follow_structure() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let y = b.var_named("y");
        let zero = b.konst(0);
        assert_eq!(b.clone_finish(zero).degree(), Degree::MinusInfinity);
        let xy = b.prod(vec![x, y]);
        let s = b.sum(vec![xy, x]);
        assert_eq!(b.clone_finish(s).degree(), Degree::finite(2));
        let sq = b.square(s);
        assert_eq!(b.clone_finish(sq).degree(), Degree::finite(4));
        let sp = b.sinpi(x);
        let with_sin = b.prod(vec![sp, xy]);
        assert_eq!(b.clone_finish(with_sin).degree(), Degree::finite(2));
        let call = b.call("q", vec![x, y], 1, BigUint::from(4u32));
        let with_call = b.prod(vec![call, x]);
        assert_eq!(b.clone_finish(with_call).degree(), Degree::finite(5));
    }

    impl DagBuilder {
        /// Test helper: snapshot the arena with the given root.
        fn clone_finish(&self, root: NodeId) -> ExprDag {
            ExprDag {
                vars: self.vars.clone(),
                nodes: self.nodes.clone(),
                root,
            }
        }
    }

    #[test]
    fn expansion_matches_hand_algebra() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let one = b.konst(1);
        let xp1 = b.sum(vec![x, one]);
        let sq = b.square(xp1);
        let dag = b.finish(sq);
        let p = dag.expand(10).expect("tiny expansion");
        assert_eq!(p.to_string(), "x^2 + 2*x + 1");
        assert_eq!(dag.degree(), p.degree());
        // Constants expand to themselves even at budget 1.
        let mut b2 = DagBuilder::new(table());
        let c = b2.konst(42);
        let d2 = b2.finish(c);
        assert_eq!(d2.expand(1).expect("constant").to_string(), "42");
    }

    #[test]
    fn expansion_respects_the_budget() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let one = b.konst(1);
        let xp1 = b.sum(vec![x, one]);
        let huge = b.pow(xp1, BigUint::from(5u32).pow(60u32));
        let dag = b.finish(huge);
        match dag.expand(1000) {
            Err(ExprError::BudgetExceeded { budget: 1000, .. }) => {}
            other => panic!("expected budget abort, got {other:?}"),
        }
    }

    #[test]
    fn opaque_nodes_refuse_expansion() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let sp = b.sinpi(x);
        let dag = b.finish(sp);
        assert!(matches!(dag.expand(10), Err(ExprError::NotPolynomial(_))));
        // sin(π/3) is irrational, so exact evaluation must refuse it (at a
        // Niven argument like x = 1 it would instead succeed exactly).
        assert!(dag
            .eval(&[crate::rat::rat(1, 3), crate::rat::rat_i(0), crate::rat::rat_i(0)])
            .is_err());
    }

    #[test]
    fn canonical_rendering_is_prec_aware() {
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let y = b.var_named("y");
        let one = b.konst(1);
        let xp1 = b.sum(vec![x, one]);
        let ysq = b.square(y);
        let prod = b.prod(vec![xp1, ysq]);
        let neg = b.neg(prod);
        let dag = b.clone_finish(neg);
        assert_eq!(dag.to_string(), "-(x + 1)*y^2");
        let diff = b.sub(x, ysq);
        assert_eq!(b.clone_finish(diff).to_string(), "x - y^2");
        let sp = b.sinpi(xp1);
        let spsq = b.square(sp);
        assert_eq!(b.clone_finish(spsq).to_string(), "sin(pi*(x + 1))^2");
        let call = b.call("q", vec![x, y, one], 2, BigUint::from(4u32));
        assert_eq!(b.clone_finish(call).to_string(), "q(x, y; 1)");
    }

    #[test]
    fn evaluation_and_mapping() {
        use crate::rat::{rat, rat_i};
        let mut b = DagBuilder::new(table());
        let x = b.var_named("x");
        let y = b.var_named("y");
        let ysq = b.square(y);
        let d = b.sub(ysq, x);
        let dag = b.finish(d);
        assert_eq!(
            dag.eval(&[rat(1, 2), rat_i(3), rat_i(0)]).expect("polynomial"),
            rat(17, 2)
        );
        // Shift x -> x + 1 by rebuilding.
        let mut t = DagBuilder::new(table());
        let root = dag.map_into(&mut t, &mut |v, t| {
            if t.vars().name(v) == "x" {
                let xv = t.var(v);
                let one = t.konst(1);
                t.sum(vec![xv, one])
            } else {
                t.var(v)
            }
        });
        let shifted = t.finish(root);
        assert_eq!(shifted.to_string(), "y^2 - (x + 1)");
        assert_eq!(
            shifted.eval(&[rat(-1, 2), rat_i(3), rat_i(0)]).expect("polynomial"),
            rat(17, 2)
        );
        // Structural equality ignores arena numbering.
        let mut b2 = DagBuilder::new(table());
        let y2 = b2.var_named("y");
        let x2 = b2.var_named("x");
        let ysq2 = b2.square(y2);
        let d2 = b2.sub(ysq2, x2);
        assert_eq!(dag, b2.finish(d2));
    }
}
