use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cartan::{CartanDatum, Family, Weight};
use crate::error::{Error, Result};
use crate::exact::{qint, qs_pow, scalar_from_json, scalar_to_json, Field, Scalar};

/// Basis label of a module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// `v_j` for `1 <= j <= n`.
    Pos(usize),
    /// `v_0`.
    Zero,
    /// `v_empty`.
    Empty,
    /// `v_{j bar}`.
    Neg(usize),
    /// Spin basis vector `(m_1, .., m_n)`, `true` meaning `+`.
    Spin(Vec<bool>),
    /// Pure tensor of two labels.
    Pair(Box<Label>, Box<Label>),
    /// Basis vector of the trivial module.
    Unit,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos(j) => write!(f, "{j}"),
            Label::Zero => f.write_str("0"),
            Label::Empty => f.write_str("\u{2205}"),
            Label::Neg(j) => write!(f, "{j}\u{0304}"),
            Label::Spin(m) => {
                let s: Vec<&str> = m.iter().map(|&p| if p { "+" } else { "-" }).collect();
                write!(f, "({})", s.join(","))
            }
            Label::Pair(a, b) => write!(f, "{a}\u{2297}{b}"),
            Label::Unit => f.write_str("1"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One nonzero image `coeff * z^zdeg * v_target` of a generator action.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry<F> {
    pub target: usize,
    pub coeff: F,
    pub zdeg: i32,
}

/// Chevalley generator `e_i` or `f_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(usize),
    F(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{i}"),
            Gen::F(i) => write!(f, "f{i}"),
        }
    }
}

/// Column-wise sparse action of one generator.
pub type Action<F> = Vec<Vec<Entry<F>>>;

/// A finite-dimensional module with a labelled weight basis.
#[derive(Clone, Debug)]
pub struct Rep<F = Scalar> {
    pub datum: Arc<CartanDatum>,
    pub labels: Vec<Label>,
    pub weights: Vec<Weight>,
    /// `e[i][col]`: images of basis vector `col` under `e_i`.
    pub e: Vec<Action<F>>,
    /// `f[i][col]`: images of basis vector `col` under `f_i`.
    pub f: Vec<Action<F>>,
    /// Spectral shift `a` of the twist `M_a` relative to the untwisted module.
    pub twist: Scalar,
    blocks: BTreeMap<Weight, Vec<usize>>,
    local: Vec<usize>,
}

impl<F: Field> Rep<F> {
    /// Assembles a module and indexes its weight spaces.
    pub fn new(datum: Arc<CartanDatum>, labels: Vec<Label>, weights: Vec<Weight>, e: Vec<Action<F>>, f: Vec<Action<F>>) -> Self {
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; labels.len()];
        for (b, w) in weights.iter().enumerate() {
            let block = blocks.entry(w.clone()).or_default();
            local[b] = block.len();
            block.push(b);
        }
        Rep { datum, labels, weights, e, f, twist: Scalar::one(), blocks, local }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.datum.n() + 1
    }

    /// Basis indices of each weight space, keyed by weight.
    pub fn blocks(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.blocks
    }

    /// Basis indices of the weight space `w` (empty if `w` is not a weight).
    pub fn block(&self, w: &Weight) -> &[usize] {
        self.blocks.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Position of basis vector `b` inside its weight space.
    pub fn local_index(&self, b: usize) -> usize {
        self.local[b]
    }

    pub fn action(&self, g: Gen) -> &Action<F> {
        match g {
            Gen::E(i) => &self.e[i],
            Gen::F(i) => &self.f[i],
        }
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Applies a field homomorphism to every coefficient.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Rep<G> {
        let conv = |acts: &Vec<Action<F>>| -> Vec<Action<G>> {
            acts.iter()
                .map(|a| {
                    a.iter()
                        .map(|col| {
                            col.iter()
                                .map(|e| Entry { target: e.target, coeff: f(&e.coeff), zdeg: e.zdeg })
                                .filter(|e| !e.coeff.is_zero())
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        let e = conv(&self.e);
        let fa = conv(&self.f);
        Rep {
            datum: self.datum.clone(),
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            e,
            f: fa,
            twist: self.twist.clone(),
            blocks: self.blocks.clone(),
            local: self.local.clone(),
        }
    }

    /// Applies a generator to a sparse vector, ignoring powers of `z`.
    pub fn apply(&self, g: Gen, v: &BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        let act = self.action(g);
        let mut out: BTreeMap<usize, F> = BTreeMap::new();
        for (&b, c) in v {
            for e in &act[b] {
                let t = out.entry(e.target).or_insert_with(F::zero);
                *t = t.add(&c.mul(&e.coeff));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Whether any action entry carries a power of `z`.
    pub fn has_symbolic_z(&self) -> bool {
        self.e.iter().chain(&self.f).any(|a| a.iter().any(|col| col.iter().any(|e| e.zdeg != 0)))
    }
}

fn empty_actions<F>(nodes: usize, dim: usize) -> Vec<Action<F>> {
    (0..nodes).map(|_| (0..dim).map(|_| Vec::new()).collect()).collect()
}

fn push<F>(act: &mut Action<F>, from: usize, to: usize, coeff: F) {
    act[from].push(Entry { target: to, coeff, zdeg: 0 });
}

/// Weight of a vector-representation label.
fn vector_weight(n: usize, l: &Label) -> Weight {
    match l {
        Label::Pos(j) => Weight::eps(n, *j),
        Label::Neg(j) => Weight::eps(n, *j).neg(),
        _ => Weight::zero(n),
    }
}

/// The vector representation `V(varpi_1)`.
pub fn vector_rep(datum: &Arc<CartanDatum>) -> Result<Rep> {
    let fam = datum.ty.family;
    let n = datum.n();
    let has_zero = matches!(fam, Family::B1 | Family::D2);
    let has_empty = matches!(fam, Family::A2even | Family::D2);
    if !fam.has_modules() {
        return Err(Error::FormulaOnly(fam.name().to_string()));
    }
    let mut labels: Vec<Label> = (1..=n).map(Label::Pos).collect();
    if has_zero {
        labels.push(Label::Zero);
    }
    if has_empty {
        labels.push(Label::Empty);
    }
    labels.extend((1..=n).rev().map(Label::Neg));
    let idx = |l: &Label| labels.iter().position(|x| x == l).expect("label present");
    let dim = labels.len();
    let mut e = empty_actions(n + 1, dim);
    let mut f = empty_actions(n + 1, dim);
    let one = Scalar::one;
    for i in 1..n {
        push(&mut e[i], idx(&Label::Pos(i + 1)), idx(&Label::Pos(i)), one());
        push(&mut e[i], idx(&Label::Neg(i)), idx(&Label::Neg(i + 1)), one());
        push(&mut f[i], idx(&Label::Pos(i)), idx(&Label::Pos(i + 1)), one());
        push(&mut f[i], idx(&Label::Neg(i + 1)), idx(&Label::Neg(i)), one());
    }
    let two_n = qint(2, datum.qi_exp[n]);
    if has_zero {
        push(&mut e[n], idx(&Label::Neg(n)), idx(&Label::Zero), one());
        push(&mut e[n], idx(&Label::Zero), idx(&Label::Pos(n)), two_n.clone());
        push(&mut f[n], idx(&Label::Pos(n)), idx(&Label::Zero), one());
        push(&mut f[n], idx(&Label::Zero), idx(&Label::Neg(n)), two_n);
    } else {
        push(&mut e[n], idx(&Label::Neg(n)), idx(&Label::Pos(n)), one());
        push(&mut f[n], idx(&Label::Pos(n)), idx(&Label::Neg(n)), one());
    }
    let two_0 = qint(2, datum.qi_exp[0]);
    if has_empty {
        push(&mut e[0], idx(&Label::Pos(1)), idx(&Label::Empty), one());
        push(&mut e[0], idx(&Label::Empty), idx(&Label::Neg(1)), two_0.clone());
        push(&mut f[0], idx(&Label::Neg(1)), idx(&Label::Empty), one());
        push(&mut f[0], idx(&Label::Empty), idx(&Label::Pos(1)), two_0);
    } else {
        push(&mut e[0], idx(&Label::Pos(1)), idx(&Label::Neg(2)), one());
        push(&mut e[0], idx(&Label::Pos(2)), idx(&Label::Neg(1)), one());
        push(&mut f[0], idx(&Label::Neg(2)), idx(&Label::Pos(1)), one());
        push(&mut f[0], idx(&Label::Neg(1)), idx(&Label::Pos(2)), one());
    }
    let weights = labels.iter().map(|l| vector_weight(n, l)).collect();
    Ok(Rep::new(datum.clone(), labels, weights, e, f))
}

/// The spin representation `V(varpi_n)` for `B(1)_n` and `D(2)_{n+1}`.
pub fn spin_rep(datum: &Arc<CartanDatum>) -> Result<Rep> {
    let fam = datum.ty.family;
    if !matches!(fam, Family::B1 | Family::D2) {
        return Err(Error::UnsupportedType(format!("{fam} has no spin representation")));
    }
    let n = datum.n();
    let dim = 1usize << n;
    // Lexicographic order with + before -: bit k (from the top) set means m_{k+1} = -.
    let signs = |idx: usize| -> Vec<bool> { (0..n).map(|k| (idx >> (n - 1 - k)) & 1 == 0).collect() };
    let index = |m: &[bool]| -> usize { m.iter().fold(0, |acc, &p| (acc << 1) | usize::from(!p)) };
    let labels: Vec<Label> = (0..dim).map(|b| Label::Spin(signs(b))).collect();
    let weights: Vec<Weight> = (0..dim).map(|b| Weight(signs(b).iter().map(|&p| if p { 1 } else { -1 }).collect())).collect();
    let mut e = empty_actions(n + 1, dim);
    let mut f = empty_actions(n + 1, dim);
    for b in 0..dim {
        let m = signs(b);
        for i in 1..n {
            if !m[i - 1] && m[i] {
                let mut t = m.clone();
                t[i - 1] = true;
                t[i] = false;
                push(&mut e[i], b, index(&t), Scalar::one());
            }
            if m[i - 1] && !m[i] {
                let mut t = m.clone();
                t[i - 1] = false;
                t[i] = true;
                push(&mut f[i], b, index(&t), Scalar::one());
            }
        }
        let mut t = m.clone();
        t[n - 1] = !m[n - 1];
        if m[n - 1] {
            push(&mut f[n], b, index(&t), Scalar::one());
        } else {
            push(&mut e[n], b, index(&t), Scalar::one());
        }
        match fam {
            Family::B1 => {
                if m[0] && m[1] {
                    let mut t = m.clone();
                    t[0] = false;
                    t[1] = false;
                    push(&mut e[0], b, index(&t), Scalar::one());
                }
                if !m[0] && !m[1] {
                    let mut t = m.clone();
                    t[0] = true;
                    t[1] = true;
                    push(&mut f[0], b, index(&t), Scalar::one());
                }
            }
            _ => {
                let mut t = m.clone();
                t[0] = !m[0];
                if m[0] {
                    push(&mut e[0], b, index(&t), Scalar::one());
                } else {
                    push(&mut f[0], b, index(&t), Scalar::one());
                }
            }
        }
    }
    Ok(Rep::new(datum.clone(), labels, weights, e, f))
}

/// The one-dimensional trivial module.
pub fn trivial_rep(datum: &Arc<CartanDatum>) -> Rep {
    let n = datum.n();
    Rep::new(datum.clone(), vec![Label::Unit], vec![Weight::zero(n)], empty_actions(n + 1, 1), empty_actions(n + 1, 1))
}

/// The spectral twist `M_a`: `e_0` scaled by `a` and `f_0` by `a^{-1}`.
pub fn twist(rep: &Rep, a: &Scalar) -> Result<Rep> {
    let ainv = a.inv().ok_or(Error::ZeroTwist)?;
    let mut out = rep.clone();
    for col in out.e[0].iter_mut() {
        for en in col.iter_mut() {
            en.coeff = en.coeff.mul(a);
        }
    }
    for col in out.f[0].iter_mut() {
        for en in col.iter_mut() {
            en.coeff = en.coeff.mul(&ainv);
        }
    }
    out.twist = rep.twist.mul(a);
    Ok(out)
}

/// Which tensor factor carries the symbolic spectral variable `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZSide {
    None,
    Left,
    Right,
}

/// A tensor product `M (x) N` with its factors.
#[derive(Clone, Debug)]
pub struct TensorRep {
    pub left: Arc<Rep>,
    pub right: Arc<Rep>,
    pub z_side: ZSide,
    pub rep: Rep,
}

impl TensorRep {
    /// Basis index of the pure tensor `u_a (x) v_b`.
    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.right.dim() + b
    }

    /// Factor indices of a pure tensor basis vector.
    pub fn split_index(&self, idx: usize) -> (usize, usize) {
        (idx / self.right.dim(), idx % self.right.dim())
    }
}

/// Tensor product through the coproduct `e_i -> e_i (x) K_i^{-1} + 1 (x) e_i`,
/// `f_i -> f_i (x) 1 + K_i (x) f_i`; with `symbolic_z` the right factor's `e_0`/`f_0` carry
/// `z^{+-1}`.
pub fn tensor(m: &Rep, n: &Rep, symbolic_z: bool) -> Result<TensorRep> {
    tensor_with(m, n, if symbolic_z { ZSide::Right } else { ZSide::None })
}

/// Tensor product with an explicit choice of the factor carrying `z`.
pub fn tensor_with(m: &Rep, n: &Rep, z_side: ZSide) -> Result<TensorRep> {
    if m.datum != n.datum {
        return Err(Error::MismatchedData);
    }
    let datum = m.datum.clone();
    let nodes = datum.n() + 1;
    let (dm, dn) = (m.dim(), n.dim());
    let dim = dm * dn;
    let mut labels = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for a in 0..dm {
        for b in 0..dn {
            labels.push(Label::Pair(Box::new(m.labels[a].clone()), Box::new(n.labels[b].clone())));
            weights.push(m.weights[a].add(&n.weights[b]));
        }
    }
    let zl = |i: usize, sign: i32| if i == 0 && z_side == ZSide::Left { sign } else { 0 };
    let zr = |i: usize, sign: i32| if i == 0 && z_side == ZSide::Right { sign } else { 0 };
    let mut e = empty_actions(nodes, dim);
    let mut f = empty_actions(nodes, dim);
    for i in 0..nodes {
        let kexp_n: Vec<i64> = n.weights.iter().map(|w| datum.k_exp(i, w)).collect();
        let kexp_m: Vec<i64> = m.weights.iter().map(|w| datum.k_exp(i, w)).collect();
        for a in 0..dm {
            for b in 0..dn {
                let col = a * dn + b;
                let kinv = qs_pow(-kexp_n[b]);
                for en in &m.e[i][a] {
                    e[i][col].push(Entry { target: en.target * dn + b, coeff: en.coeff.mul(&kinv), zdeg: en.zdeg + zl(i, 1) });
                }
                for en in &n.e[i][b] {
                    e[i][col].push(Entry { target: a * dn + en.target, coeff: en.coeff.clone(), zdeg: en.zdeg + zr(i, 1) });
                }
                for en in &m.f[i][a] {
                    f[i][col].push(Entry { target: en.target * dn + b, coeff: en.coeff.clone(), zdeg: en.zdeg + zl(i, -1) });
                }
                let k = qs_pow(kexp_m[a]);
                for en in &n.f[i][b] {
                    f[i][col].push(Entry { target: a * dn + en.target, coeff: en.coeff.mul(&k), zdeg: en.zdeg + zr(i, -1) });
                }
            }
        }
    }
    let rep = Rep::new(datum, labels, weights, e, f);
    Ok(TensorRep { left: Arc::new(m.clone()), right: Arc::new(n.clone()), z_side, rep })
}

impl Rep {
    /// Cache serialization: labels, weights and sparse action triples.
    pub fn to_json(&self) -> Value {
        let mut actions = Vec::new();
        for (name, acts) in [("e", &self.e), ("f", &self.f)] {
            for (i, act) in acts.iter().enumerate() {
                for (from, col) in act.iter().enumerate() {
                    for en in col {
                        actions.push(json!([format!("{name}{i}"), from, en.target, en.zdeg, scalar_to_json(&en.coeff)]));
                    }
                }
            }
        }
        json!({
            "type": self.datum.ty.family.name(),
            "n": self.datum.n(),
            "labels": self.labels,
            "weights": self.weights.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "twist": scalar_to_json(&self.twist),
            "actions": actions,
        })
    }

    /// Inverse of [`Rep::to_json`] for a given datum.
    pub fn from_json(datum: &Arc<CartanDatum>, v: &Value) -> Result<Rep> {
        let err = |m: &str| Error::Parse(format!("rep json: {m}"));
        let labels: Vec<Label> = serde_json::from_value(v["labels"].clone()).map_err(|e| err(&e.to_string()))?;
        let weights: Vec<Vec<i32>> = serde_json::from_value(v["weights"].clone()).map_err(|e| err(&e.to_string()))?;
        let dim = labels.len();
        let nodes = datum.n() + 1;
        let mut e = empty_actions(nodes, dim);
        let mut f = empty_actions(nodes, dim);
        for a in v["actions"].as_array().ok_or_else(|| err("actions"))? {
            let g = a[0].as_str().ok_or_else(|| err("generator"))?;
            let i: usize = g[1..].parse().map_err(|_| err("generator index"))?;
            let from = a[1].as_u64().ok_or_else(|| err("from"))? as usize;
            let to = a[2].as_u64().ok_or_else(|| err("to"))? as usize;
            let zdeg = a[3].as_i64().ok_or_else(|| err("zdeg"))? as i32;
            let coeff = scalar_from_json(&a[4])?;
            if i >= nodes || from >= dim || to >= dim {
                return Err(err("index out of range"));
            }
            let target = if g.starts_with('e') { &mut e } else { &mut f };
            target[i][from].push(Entry { target: to, coeff, zdeg });
        }
        let mut rep = Rep::new(datum.clone(), labels, weights.into_iter().map(Weight).collect(), e, f);
        rep.twist = scalar_from_json(&v["twist"])?;
        Ok(rep)
    }
}
