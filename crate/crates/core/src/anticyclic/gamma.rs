use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::prelie::{compose_unchecked, graft_terms, TreeVector, WedgeVector};
use crate::trees::{Label, RootedTree};

type Key = (Label, RootedTree, RootedTree);

fn cache() -> &'static RwLock<HashMap<Key, TreeVector>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, TreeVector>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Γ_b(w)`: the unique element of `PreLie(I∖{b})` with `⟨b, Γ_b(w)⟩` equal
/// to the class of `w` in `CycPreLie(I)`.
pub fn gamma(b: &Label, w: &WedgeVector) -> Result<TreeVector> {
    check_label(b, w)?;
    let mut ev = Evaluator { rng: None };
    Ok(ev.wedge(b, w))
}

/// `Γ_b` computed with randomized (but valid) decomposition choices and no
/// memoization; by uniqueness the output equals [`gamma`].
pub fn gamma_seeded(b: &Label, w: &WedgeVector, seed: u64) -> Result<TreeVector> {
    check_label(b, w)?;
    let mut ev = Evaluator {
        rng: Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    Ok(ev.wedge(b, w))
}

fn check_label(b: &Label, w: &WedgeVector) -> Result<()> {
    match w.labels() {
        Some(ls) if !ls.contains(b) => Err(Error::MissingLabel(b.to_string())),
        _ => Ok(()),
    }
}

pub(crate) fn gamma_pair(b: &Label, s: &RootedTree, t: &RootedTree) -> TreeVector {
    Evaluator { rng: None }.pair(b, s, t)
}

struct Evaluator {
    rng: Option<ChaCha8Rng>,
}

fn one() -> Rational {
    Rational::one()
}

fn minus_one() -> Rational {
    Rational::from_int(-1)
}

impl Evaluator {
    fn wedge(&mut self, b: &Label, w: &WedgeVector) -> TreeVector {
        let mut out = TreeVector::zero();
        for ((s, t), c) in w.iter() {
            out.add_scaled(&self.pair(b, s, t), c);
        }
        out
    }

    fn pair(&mut self, b: &Label, s: &RootedTree, t: &RootedTree) -> TreeVector {
        if self.rng.is_some() {
            return self.compute(b, s, t);
        }
        let key = (b.clone(), s.clone(), t.clone());
        if let Some(v) = cache().read().expect("gamma cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.compute(b, s, t);
        cache()
            .write()
            .expect("gamma cache poisoned")
            .insert(key, v.clone());
        v
    }

    fn pick(&mut self, n: usize, canonical: usize) -> usize {
        match &mut self.rng {
            Some(rng) => rng.random_range(0..n),
            None => canonical,
        }
    }

    fn compute(&mut self, b: &Label, s: &RootedTree, t: &RootedTree) -> TreeVector {
        if s.is_leaf() && s.root() == b {
            return TreeVector::from_tree(t.clone());
        }
        if t.is_leaf() && t.root() == b {
            return -TreeVector::from_tree(s.clone());
        }
        if s.contains(b) {
            return -self.pair(b, t, s);
        }
        let (ls, lt) = (s.labels(), t.labels());
        // b ∈ t and |t| ≥ 2 from here on.
        if s.size() >= 2 {
            // s ∧ t = (# ∧ t) ∘_# s with b outside s
            let hash = Label::fresh_outside(&[&ls, &lt]);
            let g = self.pair(b, &RootedTree::leaf(hash.clone()), t);
            return compose_unchecked(&g, &hash, &TreeVector::from_tree(s.clone()));
        }
        let x = s.root();
        if t.height() >= 2 {
            // t = outer ∘_a inner at a non-root inner vertex
            let v = match self.rng {
                None => t.top_corolla().expect("size ≥ 2").1,
                Some(_) => {
                    let inner = t.inner_vertices();
                    inner[self.pick(inner.len(), 0)].clone()
                }
            };
            let a = Label::fresh_outside(&[&ls, &lt]);
            let outer = t.replace_subtree(&v, &a);
            let inner = t.subtree(&v).expect("vertex of t");
            if inner.contains(b) {
                let mut taken = ls.clone();
                taken.insert(a.clone());
                let hash = Label::fresh_outside(&[&taken, &lt]);
                let g_inner = self.pair(b, &RootedTree::leaf(hash.clone()), &inner);
                let g_outer = self.pair(&a, s, &outer);
                return -compose_unchecked(&g_inner, &hash, &g_outer);
            }
            let g = self.pair(b, s, &outer);
            return compose_unchecked(&g, &a, &TreeVector::from_tree(inner));
        }
        let leaf = |l: &Label| RootedTree::leaf(l.clone());
        let edge = |p: &Label, q: &Label| RootedTree::node(p.clone(), vec![leaf(q)]);
        if t.size() == 2 {
            let (y, z) = (t.root(), t.children()[0].root());
            let mut out = TreeVector::zero();
            if b == z {
                // ⟨x, y◁z⟩ = −⟨z, y◁x⟩
                out.add_term(edge(y, x), minus_one());
            } else {
                // ⟨x, y◁z⟩ = ⟨y, x◁z − z◁x⟩
                out.add_term(edge(x, z), one());
                out.add_term(edge(z, x), minus_one());
            }
            return out;
        }
        // t is a corolla with at least two leaves. Peel a leaf l, y = t − l:
        // y◁l = t + Σ tᵢ and ⟨x, y◁l⟩ = ⟨y, x◁l − l◁x⟩.
        let kids = t.children();
        let l = kids[self.pick(kids.len(), kids.len() - 1)].root().clone();
        let y = t.remove_subtree(&l);
        let mut out = self.pair(b, &y, &edge(x, &l));
        out.add_scaled(&self.pair(b, &y, &edge(&l, x)), &minus_one());
        for ti in graft_terms(&y, &leaf(&l)) {
            if ti != *t {
                out.add_scaled(&self.pair(b, s, &ti), &minus_one());
            }
        }
        out
    }
}
