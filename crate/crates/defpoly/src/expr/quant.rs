//! Quantifier prefixes over polynomial (or DAG) matrices, with canonical
//! emission and a JSON round trip.
//!
//! A [`QuantifiedExpr`] is a prefix of inf/sup blocks over ℕ, ℤ or ℝ,
//! followed by a matrix.  Every variable the matrix mentions must be free,
//! bound by exactly one block, or declared a parameter; the constructor
//! enforces this.
//!
//! # JSON format
//!
//! ```json
//! {
//!   "prefix": [{"q": "inf", "dom": "N", "vars": ["n"]}, ...],
//!   "free":   ["x"],
//!   "params": ["m1", "m2", "m3"],
//!   "vars":   ["x", "n", "m1", "m2", "m3"],
//!   "matrix": {"kind": "poly", "terms": [{"coeff": "1", "exps": [..]}, ..]}
//!             or {"kind": "dag", "nodes": [..], "root": 7},
//!   "meta":   {"degree": "7", "var_count": 2}
//! }
//! ```
//!
//! Big integers serialize as decimal strings.  `params` lists parameter
//! names and `vars` the full variable table in declaration order, so the
//! round trip reconstructs the table (and hence the monomial order) exactly.
//! Polynomial terms are listed leading-term first; DAG nodes are listed in
//! post-order depth-first first-visit order, making the emission canonical
//! for a given structure.  DAG node objects are
//! `{"op": "const", "val": "5"}`, `{"op": "var", "name": "x1"}`,
//! `{"op": "sum"|"prod"|"neg"|"sinpi", "args": [..]}`,
//! `{"op": "pow", "args": [b], "exp": "2"}`, and
//! `{"op": "call", "name": "q", "args": [..], "sep": 58, "degree": "4"}`.

use super::dag::{DagBuilder, ExprDag, Node, NodeId};
use super::poly::{Monomial, Polynomial};
use super::{Degree, ExprError, VarId, VarTable, Vars};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Quantifier kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quant {
    /// Greatest lower bound.
    Inf,
    /// Least upper bound.
    Sup,
}

impl Quant {
    /// `"inf"` or `"sup"`.
    pub fn word(self) -> &'static str {
        match self {
            Quant::Inf => "inf",
            Quant::Sup => "sup",
        }
    }

    /// The dual quantifier.
    pub fn dual(self) -> Quant {
        match self {
            Quant::Inf => Quant::Sup,
            Quant::Sup => Quant::Inf,
        }
    }

    fn latex(self) -> &'static str {
        match self {
            Quant::Inf => "\\inf",
            Quant::Sup => "\\sup",
        }
    }
}

/// Quantification domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dom {
    /// Naturals (including zero).
    Nat,
    /// Integers.
    Int,
    /// Reals.
    Real,
}

impl Dom {
    /// `"N"`, `"Z"` or `"R"`.
    pub fn letter(self) -> &'static str {
        match self {
            Dom::Nat => "N",
            Dom::Int => "Z",
            Dom::Real => "R",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            Dom::Nat => "\\mathbb{N}",
            Dom::Int => "\\mathbb{Z}",
            Dom::Real => "\\mathbb{R}",
        }
    }

    fn from_letter(s: &str) -> Option<Dom> {
        match s {
            "N" => Some(Dom::Nat),
            "Z" => Some(Dom::Int),
            "R" => Some(Dom::Real),
            _ => None,
        }
    }
}

/// One quantifier block: a kind, a domain, and a non-empty ordered variable
/// list (`sup_{k1..k70 in N}` is one block with seventy variables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantBlock {
    /// Inf or sup.
    pub q: Quant,
    /// Domain the block ranges over.
    pub dom: Dom,
    /// Bound variables, in order.
    pub vars: Vec<VarId>,
}

/// The quantifier-free part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matrix {
    /// Fully expanded sparse polynomial.
    Poly(Polynomial),
    /// Structured expression (may contain opaque `sin`/call nodes).
    Dag(ExprDag),
}

impl Matrix {
    /// The variable table the matrix is built over.
    pub fn vars(&self) -> &Vars {
        match self {
            Matrix::Poly(p) => p.vars(),
            Matrix::Dag(d) => d.vars(),
        }
    }

    /// Structural total degree.
    pub fn degree(&self) -> Degree {
        match self {
            Matrix::Poly(p) => p.degree(),
            Matrix::Dag(d) => d.degree(),
        }
    }

    /// Indices of variables that actually occur.
    fn used_vars(&self) -> BTreeSet<u32> {
        let mut used = BTreeSet::new();
        match self {
            Matrix::Poly(p) => {
                use num_traits::Zero;
                for (m, _) in p.iter() {
                    for (i, e) in m.exps().iter().enumerate() {
                        if !e.is_zero() {
                            used.insert(i as u32);
                        }
                    }
                }
            }
            Matrix::Dag(d) => {
                let mut stack = vec![d.root()];
                let mut seen = vec![false; d.arena_len()];
                while let Some(id) = stack.pop() {
                    if seen[id.index()] {
                        continue;
                    }
                    seen[id.index()] = true;
                    if let Node::Var(v) = d.node(id) {
                        used.insert(v.0);
                    }
                    stack.extend(d.node(id).children());
                }
            }
        }
        used
    }
}

/// Output format for [`QuantifiedExpr::emit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    /// Canonical ASCII, e.g. `inf_{n in N} [ n ]`.
    Text,
    /// A LaTeX display equation body.
    Latex,
    /// The JSON format documented at module level; round-trips through
    /// [`QuantifiedExpr::parse_json`].
    Json,
}

/// A quantifier prefix over a matrix, with designated free variables and
/// parameters.
///
/// Equality is structural (same table contents, same roles, equal matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantifiedExpr {
    vars: Vars,
    free: Vec<VarId>,
    params: Vec<VarId>,
    prefix: Vec<QuantBlock>,
    matrix: Matrix,
}

impl QuantifiedExpr {
    /// Assemble and validate.
    ///
    /// Rejects: empty blocks, out-of-range ids, a variable given two roles,
    /// and a matrix that uses a variable with no role.
    pub fn new(
        free: Vec<VarId>,
        params: Vec<VarId>,
        prefix: Vec<QuantBlock>,
        matrix: Matrix,
    ) -> Result<Self, ExprError> {
        let vars = matrix.vars().clone();
        let n = vars.len();
        let mut assigned: BTreeSet<u32> = BTreeSet::new();
        let mut claim = |v: VarId| -> Result<(), ExprError> {
            if v.index() >= n {
                return Err(ExprError::VarOutOfRange(v.0, n));
            }
            if !assigned.insert(v.0) {
                return Err(ExprError::Malformed(format!(
                    "variable {:?} has two roles",
                    vars.name(v)
                )));
            }
            Ok(())
        };
        for &v in &free {
            claim(v)?;
        }
        for &v in &params {
            claim(v)?;
        }
        for block in &prefix {
            if block.vars.is_empty() {
                return Err(ExprError::Malformed("empty quantifier block".into()));
            }
            for &v in &block.vars {
                claim(v)?;
            }
        }
        for used in matrix.used_vars() {
            if !assigned.contains(&used) {
                return Err(ExprError::Malformed(format!(
                    "matrix uses variable {:?} which is neither free, bound, nor a parameter",
                    vars.name(VarId(used))
                )));
            }
        }
        Ok(QuantifiedExpr {
            vars,
            free,
            params,
            prefix,
            matrix,
        })
    }

    /// The variable table.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Free variables, in order.
    pub fn free(&self) -> &[VarId] {
        &self.free
    }

    /// Parameter variables, in order.
    pub fn params(&self) -> &[VarId] {
        &self.params
    }

    /// Quantifier blocks, outermost first.
    pub fn prefix(&self) -> &[QuantBlock] {
        &self.prefix
    }

    /// The quantifier-free part.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Structural total degree of the matrix.
    pub fn degree(&self) -> Degree {
        self.matrix.degree()
    }

    /// Number of bound variables.
    pub fn bound_count(&self) -> usize {
        self.prefix.iter().map(|b| b.vars.len()).sum()
    }

    /// Free plus bound variables (parameters excluded).
    pub fn var_count(&self) -> usize {
        self.free.len() + self.bound_count()
    }

    fn names(&self, ids: &[VarId]) -> Vec<&str> {
        ids.iter().map(|&v| self.vars.name(v)).collect()
    }

    /// Compact one-line prefix, e.g. `inf_R(y) sup_R(z) inf_N(n) sup_N(k1..k70)`.
    pub fn prefix_summary(&self) -> String {
        let mut parts = Vec::new();
        for b in &self.prefix {
            parts.push(format!(
                "{}_{}({})",
                b.q.word(),
                b.dom.letter(),
                contract_names(&self.names(&b.vars))
            ));
        }
        parts.join(" ")
    }

    /// Render in the requested format.
    pub fn emit(&self, format: EmitFormat) -> String {
        match format {
            EmitFormat::Text => self.emit_text(),
            EmitFormat::Latex => self.emit_latex(),
            EmitFormat::Json => self.emit_json().to_string(),
        }
    }

    fn emit_text(&self) -> String {
        let mut out = String::new();
        for b in &self.prefix {
            if !out.is_empty() {
                out.push(' ');
            }
            write!(
                out,
                "{}_{{{} in {}}}",
                b.q.word(),
                contract_names(&self.names(&b.vars)),
                b.dom.letter()
            )
            .expect("writing to a string");
        }
        let matrix = match &self.matrix {
            Matrix::Poly(p) => p.to_string(),
            Matrix::Dag(d) => d.to_string(),
        };
        if out.is_empty() {
            format!("[ {matrix} ]")
        } else {
            format!("{out} [ {matrix} ]")
        }
    }

    fn emit_latex(&self) -> String {
        let mut out = String::new();
        for b in &self.prefix {
            if !out.is_empty() {
                out.push(' ');
            }
            write!(
                out,
                "{}_{{{} \\in {}}}",
                b.q.latex(),
                contract_names_latex(&self.names(&b.vars)),
                b.dom.latex()
            )
            .expect("writing to a string");
        }
        let matrix = match &self.matrix {
            Matrix::Poly(p) => latex_poly(p),
            Matrix::Dag(d) => latex_dag(d),
        };
        if out.is_empty() {
            format!("\\left[ {matrix} \\right]")
        } else {
            format!("{out} \\left[ {matrix} \\right]")
        }
    }

    fn emit_json(&self) -> Value {
        let prefix: Vec<Value> = self
            .prefix
            .iter()
            .map(|b| {
                json!({
                    "q": b.q.word(),
                    "dom": b.dom.letter(),
                    "vars": self.names(&b.vars),
                })
            })
            .collect();
        let matrix = match &self.matrix {
            Matrix::Poly(p) => poly_to_json(p),
            Matrix::Dag(d) => dag_to_json(d),
        };
        json!({
            "prefix": prefix,
            "free": self.names(&self.free),
            "params": self.names(&self.params),
            "vars": self.vars.names(),
            "matrix": matrix,
            "meta": {
                "degree": self.degree().to_string(),
                "var_count": self.var_count(),
            },
        })
    }

    /// Parse the JSON emitted by [`QuantifiedExpr::emit`] with
    /// [`EmitFormat::Json`].  `parse_json(emit(q, Json)) == q`.
    pub fn parse_json(s: &str) -> Result<Self, ExprError> {
        let v: Value = serde_json::from_str(s).map_err(|e| ExprError::Parse(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| parse_err("top level is not an object"))?;

        let names = str_list(obj.get("vars").ok_or_else(|| parse_err("missing \"vars\""))?)?;
        let vars = VarTable::new(names)?;
        let lookup = |name: &str| -> Result<VarId, ExprError> {
            vars.id(name)
                .ok_or_else(|| parse_err(&format!("undeclared variable {name:?}")))
        };
        let to_ids = |v: &Value| -> Result<Vec<VarId>, ExprError> {
            str_list(v)?.iter().map(|n| lookup(n)).collect()
        };

        let free = to_ids(obj.get("free").ok_or_else(|| parse_err("missing \"free\""))?)?;
        let params = match obj.get("params") {
            Some(p) => to_ids(p)?,
            None => Vec::new(),
        };

        let mut prefix = Vec::new();
        let blocks = obj
            .get("prefix")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing \"prefix\" array"))?;
        for b in blocks {
            let bo = b.as_object().ok_or_else(|| parse_err("block is not an object"))?;
            let q = match bo.get("q").and_then(Value::as_str) {
                Some("inf") => Quant::Inf,
                Some("sup") => Quant::Sup,
                other => return Err(parse_err(&format!("bad quantifier {other:?}"))),
            };
            let dom = bo
                .get("dom")
                .and_then(Value::as_str)
                .and_then(Dom::from_letter)
                .ok_or_else(|| parse_err("bad domain"))?;
            let bvars = to_ids(bo.get("vars").ok_or_else(|| parse_err("block missing \"vars\""))?)?;
            prefix.push(QuantBlock { q, dom, vars: bvars });
        }

        let mo = obj
            .get("matrix")
            .and_then(Value::as_object)
            .ok_or_else(|| parse_err("missing \"matrix\" object"))?;
        let matrix = match mo.get("kind").and_then(Value::as_str) {
            Some("poly") => Matrix::Poly(poly_from_json(mo, &vars)?),
            Some("dag") => Matrix::Dag(dag_from_json(mo, &vars)?),
            other => return Err(parse_err(&format!("bad matrix kind {other:?}"))),
        };

        QuantifiedExpr::new(free, params, prefix, matrix)
    }
}

fn parse_err(msg: &str) -> ExprError {
    ExprError::Parse(msg.to_string())
}

fn str_list(v: &Value) -> Result<Vec<String>, ExprError> {
    v.as_array()
        .ok_or_else(|| parse_err("expected an array of strings"))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| parse_err("expected a string"))
        })
        .collect()
}

fn parse_biguint(v: &Value, what: &str) -> Result<BigUint, ExprError> {
    v.as_str()
        .and_then(|s| s.parse::<BigUint>().ok())
        .ok_or_else(|| parse_err(&format!("bad {what}: {v}")))
}

fn parse_bigint(v: &Value, what: &str) -> Result<BigInt, ExprError> {
    v.as_str()
        .and_then(|s| s.parse::<BigInt>().ok())
        .ok_or_else(|| parse_err(&format!("bad {what}: {v}")))
}

fn poly_to_json(p: &Polynomial) -> Value {
    let terms: Vec<(&Monomial, &BigInt)> = p.iter().collect();
    let terms: Vec<Value> = terms
        .into_iter()
        .rev()
        .map(|(m, c)| {
            json!({
                "coeff": c.to_string(),
                "exps": m.exps().iter().map(BigUint::to_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "kind": "poly", "terms": terms })
}

fn poly_from_json(mo: &serde_json::Map<String, Value>, vars: &Vars) -> Result<Polynomial, ExprError> {
    let terms = mo
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polynomial matrix missing \"terms\""))?;
    let mut parsed = Vec::new();
    for t in terms {
        let to = t.as_object().ok_or_else(|| parse_err("term is not an object"))?;
        let coeff = parse_bigint(
            to.get("coeff").ok_or_else(|| parse_err("term missing \"coeff\""))?,
            "coefficient",
        )?;
        let exps_v = to
            .get("exps")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("term missing \"exps\""))?;
        if exps_v.len() != vars.len() {
            return Err(parse_err("exponent vector width does not match \"vars\""));
        }
        let exps: Vec<BigUint> = exps_v
            .iter()
            .map(|e| parse_biguint(e, "exponent"))
            .collect::<Result<_, _>>()?;
        parsed.push((Monomial::from_exps(exps), coeff));
    }
    Ok(Polynomial::from_terms(vars.clone(), parsed))
}

/// Reachable nodes in post-order depth-first first-visit order (children
/// before parents, each node once, root last).
fn postorder(dag: &ExprDag) -> Vec<NodeId> {
    let mut order = Vec::new();
    // 0 = unseen, 1 = scheduled, 2 = emitted
    let mut state = vec![0u8; dag.arena_len()];
    let mut stack = vec![(dag.root(), false)];
    while let Some((id, processed)) = stack.pop() {
        if state[id.index()] == 2 {
            continue;
        }
        if processed {
            state[id.index()] = 2;
            order.push(id);
            continue;
        }
        if state[id.index()] == 1 {
            continue;
        }
        state[id.index()] = 1;
        stack.push((id, true));
        for c in dag.node(id).children().into_iter().rev() {
            if state[c.index()] == 0 {
                stack.push((c, false));
            }
        }
    }
    order
}

fn dag_to_json(dag: &ExprDag) -> Value {
    let order = postorder(dag);
    let mut pos = vec![usize::MAX; dag.arena_len()];
    for (i, id) in order.iter().enumerate() {
        pos[id.index()] = i;
    }
    let arg_list = |ids: &[NodeId]| -> Vec<usize> { ids.iter().map(|id| pos[id.index()]).collect() };
    let nodes: Vec<Value> = order
        .iter()
        .map(|&id| match dag.node(id) {
            Node::Const(c) => json!({"op": "const", "val": c.to_string()}),
            Node::Var(v) => json!({"op": "var", "name": dag.vars().name(*v)}),
            Node::Sum(ids) => json!({"op": "sum", "args": arg_list(ids)}),
            Node::Prod(ids) => json!({"op": "prod", "args": arg_list(ids)}),
            Node::Neg(a) => json!({"op": "neg", "args": [pos[a.index()]]}),
            Node::Pow(b, e) => json!({"op": "pow", "args": [pos[b.index()]], "exp": e.to_string()}),
            Node::SinPi(a) => json!({"op": "sinpi", "args": [pos[a.index()]]}),
            Node::Call {
                name,
                args,
                sep,
                degree,
            } => json!({
                "op": "call",
                "name": name,
                "args": arg_list(args),
                "sep": sep,
                "degree": degree.to_string(),
            }),
        })
        .collect();
    json!({ "kind": "dag", "nodes": nodes, "root": order.len() - 1 })
}

fn dag_from_json(mo: &serde_json::Map<String, Value>, vars: &Vars) -> Result<ExprDag, ExprError> {
    let nodes = mo
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("dag matrix missing \"nodes\""))?;
    if nodes.is_empty() {
        return Err(parse_err("dag has no nodes"));
    }
    let mut builder = DagBuilder::new(vars.clone());
    let mut ids: Vec<NodeId> = Vec::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        let no = n.as_object().ok_or_else(|| parse_err("node is not an object"))?;
        let args: Vec<NodeId> = match no.get("args") {
            Some(a) => a
                .as_array()
                .ok_or_else(|| parse_err("\"args\" is not an array"))?
                .iter()
                .map(|x| {
                    let j = x
                        .as_u64()
                        .ok_or_else(|| parse_err("argument index is not a number"))?
                        as usize;
                    if j >= i {
                        return Err(parse_err("argument index refers to a later node"));
                    }
                    Ok(ids[j])
                })
                .collect::<Result<_, _>>()?,
            None => Vec::new(),
        };
        let arg1 = || -> Result<NodeId, ExprError> {
            if args.len() == 1 {
                Ok(args[0])
            } else {
                Err(parse_err("expected exactly one argument"))
            }
        };
        let id = match no.get("op").and_then(Value::as_str) {
            Some("const") => {
                let c = parse_bigint(
                    no.get("val").ok_or_else(|| parse_err("const missing \"val\""))?,
                    "constant",
                )?;
                builder.konst_big(c)
            }
            Some("var") => {
                let name = no
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| parse_err("var missing \"name\""))?;
                let v = vars
                    .id(name)
                    .ok_or_else(|| parse_err(&format!("undeclared variable {name:?}")))?;
                builder.var(v)
            }
            Some("sum") => builder.sum(args.clone()),
            Some("prod") => builder.prod(args.clone()),
            Some("neg") => {
                let a = arg1()?;
                builder.neg(a)
            }
            Some("pow") => {
                let e = parse_biguint(
                    no.get("exp").ok_or_else(|| parse_err("pow missing \"exp\""))?,
                    "exponent",
                )?;
                let a = arg1()?;
                builder.pow(a, e)
            }
            Some("sinpi") => {
                let a = arg1()?;
                builder.sinpi(a)
            }
            Some("call") => {
                let name = no
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| parse_err("call missing \"name\""))?;
                let sep = no
                    .get("sep")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| parse_err("call missing \"sep\""))? as usize;
                if sep > args.len() {
                    return Err(parse_err("call \"sep\" exceeds argument count"));
                }
                let degree = parse_biguint(
                    no.get("degree").ok_or_else(|| parse_err("call missing \"degree\""))?,
                    "declared degree",
                )?;
                builder.call(name, args.clone(), sep, degree)
            }
            other => return Err(parse_err(&format!("bad node op {other:?}"))),
        };
        ids.push(id);
    }
    let root = mo
        .get("root")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("dag matrix missing \"root\""))? as usize;
    let root = *ids
        .get(root)
        .ok_or_else(|| parse_err("root index out of range"))?;
    Ok(builder.finish(root))
}

fn split_suffix(name: &str) -> (&str, Option<u64>) {
    let split = name
        .rfind(|c: char| !c.is_ascii_digit())
        .map(|i| i + 1)
        .unwrap_or(0);
    let (stem, digits) = name.split_at(split);
    match digits.parse::<u64>() {
        Ok(n) if !stem.is_empty() => (stem, Some(n)),
        _ => (name, None),
    }
}

/// Contract runs of consecutively numbered names: `k1, ..., k70` becomes
/// `k1..k70`; anything else is comma-joined.
fn contract_names(names: &[&str]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < names.len() {
        let (stem, num) = split_suffix(names[i]);
        let mut j = i;
        if let Some(mut n) = num {
            while j + 1 < names.len() {
                let (s2, n2) = split_suffix(names[j + 1]);
                match n2 {
                    Some(n2) if s2 == stem && n2 == n + 1 => {
                        n = n2;
                        j += 1;
                    }
                    _ => break,
                }
            }
        }
        if j > i {
            parts.push(format!("{}..{}", names[i], names[j]));
        } else {
            parts.push(names[i].to_string());
        }
        i = j + 1;
    }
    parts.join(", ")
}

/// LaTeX flavor of [`contract_names`]: runs longer than two use `\ldots`.
fn contract_names_latex(names: &[&str]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < names.len() {
        let (stem, num) = split_suffix(names[i]);
        let mut j = i;
        if let Some(mut n) = num {
            while j + 1 < names.len() {
                let (s2, n2) = split_suffix(names[j + 1]);
                match n2 {
                    Some(n2) if s2 == stem && n2 == n + 1 => {
                        n = n2;
                        j += 1;
                    }
                    _ => break,
                }
            }
        }
        if j > i + 1 {
            parts.push(format!(
                "{}, \\ldots, {}",
                latex_name(names[i]),
                latex_name(names[j])
            ));
            i = j + 1;
        } else {
            parts.push(latex_name(names[i]));
            i += 1;
        }
    }
    parts.join(", ")
}

/// `k12` renders as `k_{12}`; names without a numeric suffix are unchanged.
fn latex_name(name: &str) -> String {
    match split_suffix(name) {
        (stem, Some(n)) => format!("{stem}_{{{n}}}"),
        _ => name.to_string(),
    }
}

/// LaTeX rendering of a polynomial (terms leading-first, juxtaposed
/// factors, braced exponents).
pub fn latex_poly(p: &Polynomial) -> String {
    use num_traits::{One, Zero};
    if p.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<_> = p.iter().collect();
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let constant = m.total_degree().is_zero();
        let mut wrote = false;
        if constant || !mag.is_one() {
            write!(out, "{mag}").expect("writing to a string");
            wrote = true;
        }
        for (i, e) in m.exps().iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if wrote {
                out.push(' ');
            }
            out.push_str(&latex_name(p.vars().name(VarId(i as u32))));
            if !e.is_one() {
                write!(out, "^{{{e}}}").expect("writing to a string");
            }
            wrote = true;
        }
    }
    out
}

/// LaTeX rendering of a DAG (same precedence scheme as its `Display`).
pub fn latex_dag(dag: &ExprDag) -> String {
    let mut out = String::new();
    latex_node(dag, dag.root(), 0, &mut out);
    out
}

fn latex_prec(dag: &ExprDag, id: NodeId) -> u8 {
    match dag.node(id) {
        Node::Sum(_) => 1,
        Node::Neg(_) => 2,
        Node::Const(c) if c.is_negative() => 2,
        Node::Prod(_) => 3,
        Node::Pow(..) => 4,
        _ => 5,
    }
}

fn latex_node(dag: &ExprDag, id: NodeId, parent_prec: u8, out: &mut String) {
    if latex_prec(dag, id) < parent_prec {
        out.push_str("\\left(");
        latex_inner(dag, id, out);
        out.push_str("\\right)");
    } else {
        latex_inner(dag, id, out);
    }
}

fn latex_inner(dag: &ExprDag, id: NodeId, out: &mut String) {
    match dag.node(id) {
        Node::Const(c) => {
            write!(out, "{c}").expect("writing to a string");
        }
        Node::Var(v) => out.push_str(&latex_name(dag.vars().name(*v))),
        Node::Sum(ids) => {
            for (k, c) in ids.iter().enumerate() {
                match dag.node(*c) {
                    Node::Neg(inner) => {
                        out.push_str(if k == 0 { "-" } else { " - " });
                        latex_node(dag, *inner, 3, out);
                    }
                    Node::Const(v) if v.is_negative() => {
                        write!(out, "{}{}", if k == 0 { "-" } else { " - " }, v.abs())
                            .expect("writing to a string");
                    }
                    _ => {
                        if k > 0 {
                            out.push_str(" + ");
                        }
                        latex_node(dag, *c, 2, out);
                    }
                }
            }
        }
        Node::Prod(ids) => {
            for (k, c) in ids.iter().enumerate() {
                if k > 0 {
                    out.push_str(" \\cdot ");
                }
                latex_node(dag, *c, 3, out);
            }
        }
        Node::Neg(a) => {
            out.push('-');
            latex_node(dag, *a, 3, out);
        }
        Node::Pow(b, e) => {
            latex_node(dag, *b, 5, out);
            write!(out, "^{{{e}}}").expect("writing to a string");
        }
        Node::SinPi(a) => {
            out.push_str("\\sin(\\pi \\cdot ");
            latex_node(dag, *a, 3, out);
            out.push(')');
        }
        Node::Call {
            name, args, sep, ..
        } => {
            out.push_str(name);
            out.push('(');
            for (k, a) in args.iter().enumerate() {
                if k > 0 {
                    out.push_str(if *sep > 0 && k == *sep { ";\\ " } else { ", " });
                }
                latex_node(dag, *a, 0, out);
            }
            out.push(')');
        }
    }
}
