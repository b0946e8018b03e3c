use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::exact::{Echelon, Field, Matrix};
use crate::modules::{Gen, Rep};

/// Vector in a weight space, graded by the power of `z` carried by the action that produced it.
pub type ZGraded<F> = BTreeMap<i32, Vec<F>>;

/// Applies a generator to a vector of the weight space `kappa`, returning the target weight
/// and the image split by powers of `z`.
pub fn apply_block<F: Field>(rep: &Rep<F>, g: Gen, kappa: &Weight, v: &[F]) -> (Weight, ZGraded<F>) {
    let i = match g {
        Gen::E(i) | Gen::F(i) => i,
    };
    let sign = if matches!(g, Gen::E(_)) { 1 } else { -1 };
    let target = kappa.add_root(&rep.datum.roots[i], sign);
    let mut out: ZGraded<F> = BTreeMap::new();
    let tdim = rep.block(&target).len();
    if tdim == 0 {
        return (target, out);
    }
    let src = rep.block(kappa);
    let act = rep.action(g);
    for (p, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for en in &act[src[p]] {
            let w = out.entry(en.zdeg).or_insert_with(|| vec![F::zero(); tdim]);
            let t = rep.local_index(en.target);
            w[t] = w[t].add(&c.mul(&en.coeff));
        }
    }
    out.retain(|_, w| w.iter().any(|x| !x.is_zero()));
    (target, out)
}

/// Applies a generator ignoring `z`-gradings (all entries must be `z`-free or the caller
/// accepts `z = 1`).
pub fn apply_block_flat<F: Field>(rep: &Rep<F>, g: Gen, kappa: &Weight, v: &[F]) -> (Weight, Vec<F>) {
    let (target, graded) = apply_block(rep, g, kappa, v);
    let dim = rep.block(&target).len();
    let mut out = vec![F::zero(); dim];
    for w in graded.values() {
        for (o, x) in out.iter_mut().zip(w) {
            *o = o.add(x);
        }
    }
    (target, out)
}

/// Basis of the classical highest weight vectors in the weight space `w`: the common kernel of
/// `e_1, .., e_n` restricted to that weight space, in local coordinates.
pub fn highest_weight_vectors<F: Field>(rep: &Rep<F>, w: &Weight) -> Vec<Vec<F>> {
    let dim = rep.block(w).len();
    if dim == 0 {
        return Vec::new();
    }
    let n = rep.datum.n();
    let mut rows: Vec<Vec<F>> = Vec::new();
    let mut cols: Vec<Vec<Vec<F>>> = Vec::new();
    for i in 1..=n {
        let mut images = Vec::with_capacity(dim);
        for p in 0..dim {
            let mut unit = vec![F::zero(); dim];
            unit[p] = F::one();
            images.push(apply_block_flat(rep, Gen::E(i), w, &unit).1);
        }
        cols.push(images);
    }
    for images in &cols {
        let tdim = images.first().map_or(0, Vec::len);
        for r in 0..tdim {
            rows.push(images.iter().map(|c| c[r].clone()).collect());
        }
    }
    if rows.is_empty() {
        return (0..dim)
            .map(|p| {
                let mut v = vec![F::zero(); dim];
                v[p] = F::one();
                v
            })
            .collect();
    }
    Matrix::from_rows(rows, dim).kernel()
}

/// Lowering words spanning an irreducible classical module from its highest weight vector.
///
/// At each weight the words are recorded as `(node, parent index)` pairs: the vector is `f_node`
/// applied to the parent vector at the weight raised by `alpha_node`.
#[derive(Clone, Debug)]
pub struct WordTree {
    pub top: Weight,
    pub order: Vec<Weight>,
    pub words: BTreeMap<Weight, Vec<(usize, usize)>>,
}

impl WordTree {
    /// Builds the word tree by breadth-first lowering from `u` at weight `top`.
    pub fn build<F: Field>(rep: &Rep<F>, top: &Weight, u: &[F]) -> Self {
        let n = rep.datum.n();
        let mut order = vec![top.clone()];
        let mut words: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        let mut vecs: BTreeMap<Weight, Vec<Vec<F>>> = BTreeMap::new();
        words.insert(top.clone(), vec![(usize::MAX, 0)]);
        vecs.insert(top.clone(), vec![u.to_vec()]);
        let mut frontier: BTreeSet<Weight> = [top.clone()].into_iter().collect();
        while !frontier.is_empty() {
            let mut next: BTreeSet<Weight> = BTreeSet::new();
            for kappa in &frontier {
                for i in 1..=n {
                    let lower = kappa.add_root(&rep.datum.roots[i], -1);
                    if !rep.block(&lower).is_empty() {
                        next.insert(lower);
                    }
                }
            }
            let mut kept = BTreeSet::new();
            for lower in next {
                let dim = rep.block(&lower).len();
                let mut ech = Echelon::new(dim);
                let mut ws = Vec::new();
                let mut vs = Vec::new();
                for i in 1..=n {
                    let parent = lower.add_root(&rep.datum.roots[i], 1);
                    let Some(pv) = vecs.get(&parent) else { continue };
                    for (p, v) in pv.iter().enumerate() {
                        let (_, w) = apply_block_flat(rep, Gen::F(i), &parent, v);
                        if ech.insert(&w) {
                            ws.push((i, p));
                            vs.push(w);
                        }
                    }
                }
                if !ws.is_empty() {
                    order.push(lower.clone());
                    words.insert(lower.clone(), ws);
                    vecs.insert(lower.clone(), vs);
                    kept.insert(lower);
                }
            }
            frontier = kept;
        }
        WordTree { top: top.clone(), order, words }
    }

    /// Number of words at `kappa` (the weight multiplicity of the irreducible module).
    pub fn count(&self, kappa: &Weight) -> usize {
        self.words.get(kappa).map_or(0, Vec::len)
    }

    /// Evaluates all words on a highest weight vector `u` of another copy.
    pub fn evaluate<F: Field>(&self, rep: &Rep<F>, u: &[F]) -> BTreeMap<Weight, Vec<Vec<F>>> {
        let mut vecs: BTreeMap<Weight, Vec<Vec<F>>> = BTreeMap::new();
        vecs.insert(self.top.clone(), vec![u.to_vec()]);
        for kappa in self.order.iter().skip(1) {
            let mut vs = Vec::new();
            for &(i, p) in &self.words[kappa] {
                let parent = kappa.add_root(&rep.datum.roots[i], 1);
                let (_, w) = apply_block_flat(rep, Gen::F(i), &parent, &vecs[&parent][p]);
                vs.push(w);
            }
            vecs.insert(kappa.clone(), vs);
        }
        vecs
    }
}

/// Coordinate slot in an isotypic basis: dominant weight, copy and word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub mu: usize,
    pub copy: usize,
    pub word: usize,
}

/// Decomposition of a module into classical isotypic components.
#[derive(Debug)]
pub struct Isotypic<F> {
    /// Dominant weights that occur, in ascending order, shared with the word trees.
    pub dominants: Vec<Weight>,
    /// Highest weight vectors per dominant weight index.
    pub hw: Vec<Vec<Vec<F>>>,
    /// Basis vectors `f_word u_copy` per weight, with their slots.
    columns: BTreeMap<Weight, (Vec<Slot>, Vec<Vec<F>>)>,
    inverses: Arc<Mutex<HashMap<Weight, Arc<Matrix<F>>>>>,
}

impl<F: Field> Isotypic<F> {
    /// Decomposes `rep`; `trees` holds (or receives) one word tree per dominant weight and is
    /// shared between modules so that coordinates are compatible.
    pub fn new(rep: &Rep<F>, trees: &mut BTreeMap<Weight, WordTree>) -> Result<Self> {
        let mut dominants = Vec::new();
        let mut hw = Vec::new();
        for w in rep.blocks().keys() {
            if !rep.datum.is_dominant(w) {
                continue;
            }
            let h = highest_weight_vectors(rep, w);
            if h.is_empty() {
                continue;
            }
            trees.entry(w.clone()).or_insert_with(|| WordTree::build(rep, w, &h[0]));
            dominants.push(w.clone());
            hw.push(h);
        }
        let mut columns: BTreeMap<Weight, (Vec<Slot>, Vec<Vec<F>>)> = BTreeMap::new();
        for (mu, top) in dominants.iter().enumerate() {
            let tree = &trees[top];
            for (copy, u) in hw[mu].iter().enumerate() {
                for (kappa, vs) in tree.evaluate(rep, u) {
                    let entry = columns.entry(kappa).or_default();
                    for (word, v) in vs.into_iter().enumerate() {
                        entry.0.push(Slot { mu, copy, word });
                        entry.1.push(v);
                    }
                }
            }
        }
        for (kappa, idx) in rep.blocks() {
            let have = columns.get(kappa).map_or(0, |c| c.0.len());
            if have != idx.len() {
                return Err(Error::Inconsistent(format!(
                    "isotypic basis at weight {kappa} has {have} vectors for a {}-dimensional weight space",
                    idx.len()
                )));
            }
        }
        Ok(Isotypic { dominants, hw, columns, inverses: Arc::new(Mutex::new(HashMap::new())) })
    }

    /// Whether two modules have the same weights and classical actions, so that one
    /// decomposition serves both.
    pub fn same_classical(a: &Rep<F>, b: &Rep<F>) -> bool {
        let n = a.datum.n();
        a.weights == b.weights && (1..=n).all(|i| a.action(Gen::E(i)) == b.action(Gen::E(i)) && a.action(Gen::F(i)) == b.action(Gen::F(i)))
    }

    /// Index of a dominant weight.
    pub fn dominant_index(&self, w: &Weight) -> Option<usize> {
        self.dominants.iter().position(|d| d == w)
    }

    /// Multiplicity of the irreducible component of highest weight `w`.
    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.dominant_index(w).map_or(0, |i| self.hw[i].len())
    }

    /// Slots of the isotypic basis of the weight space `kappa`.
    pub fn slots(&self, kappa: &Weight) -> &[Slot] {
        self.columns.get(kappa).map_or(&[], |c| c.0.as_slice())
    }

    /// Isotypic basis vectors of the weight space `kappa`.
    pub fn basis(&self, kappa: &Weight) -> &[Vec<F>] {
        self.columns.get(kappa).map_or(&[], |c| c.1.as_slice())
    }

    /// Change-of-basis matrix `T` at `kappa` whose columns are the isotypic basis vectors.
    pub fn t_matrix(&self, kappa: &Weight) -> Matrix<F> {
        let basis = self.basis(kappa);
        let dim = basis.first().map_or(0, Vec::len);
        Matrix::from_cols(basis, dim)
    }

    /// Coordinates of a local vector at `kappa` in the isotypic basis.
    pub fn coords(&self, kappa: &Weight, v: &[F]) -> Vec<F> {
        self.inverse(kappa).mul_vec(v)
    }

    /// Inverse of the change-of-basis matrix at `kappa`, cached.
    pub fn inverse(&self, kappa: &Weight) -> Arc<Matrix<F>> {
        if let Some(m) = self.inverses.lock().expect("cache lock").get(kappa) {
            return m.clone();
        }
        let m = Arc::new(self.t_matrix(kappa).inverse().expect("isotypic basis is invertible"));
        self.inverses.lock().expect("cache lock").insert(kappa.clone(), m.clone());
        m
    }
}

impl<F: Field> Clone for Isotypic<F> {
    fn clone(&self) -> Self {
        Isotypic {
            dominants: self.dominants.clone(),
            hw: self.hw.clone(),
            columns: self.columns.clone(),
            inverses: self.inverses.clone(),
        }
    }
}
