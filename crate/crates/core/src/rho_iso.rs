//! The morphism `ρ : CycPreLie → Rela_{v=1}` and the isomorphism between
//! the `Perm`/`Reflex` sequence and the `Rela`/`PreLie`/`Indec` sequence.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anticyclic::{
    cyc_normal, cycprelie_basis, gamma, psi, sum_of_gammas, CycPreLieElem, PermCycElem,
};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, SparseVec, Span};
use crate::prelie::{
    compose_unchecked, delta2, delta3, indec_space, wedge3_basis, wedge_basis,
    wedge_compose_unchecked, IndecSpace, TreeVector, Wedge3Vector, WedgeKey, WedgeVector,
};
use crate::trees::{label_set, standard_labels, Label, LabelSet, RootedTree};

/// `ρ(x)` together with the input it was computed from.
#[derive(Clone, Debug, Serialize)]
pub struct RhoResult {
    pub input: CycPreLieElem,
    /// A lift of `ρ(x)` to `Λ²PreLie`.
    pub representative: WedgeVector,
}

/// Result of an exact identity check.
#[derive(Clone, Debug, Serialize)]
pub struct Check<T> {
    pub passed: bool,
    pub residual: T,
}

type Key = (RootedTree, RootedTree);

fn cache() -> &'static RwLock<HashMap<Key, WedgeVector>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, WedgeVector>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `ρ(x)`, computed term by term on the presentation `⟨i₀, body⟩`.
pub fn rho(x: &CycPreLieElem) -> Result<RhoResult> {
    rho_with(x, &mut Builder { rng: None })
}

/// `ρ(x)` with a randomized choice of the grafted subtree in the
/// root-valence step. Representatives may differ from [`rho`] by elements of
/// `im δ₃`.
pub fn rho_seeded(x: &CycPreLieElem, seed: u64) -> Result<RhoResult> {
    rho_with(
        x,
        &mut Builder {
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
        },
    )
}

fn rho_with(x: &CycPreLieElem, b: &mut Builder) -> Result<RhoResult> {
    if x.arity() < 2 {
        return Err(Error::ArityTooSmall {
            got: x.arity(),
            min: 2,
        });
    }
    let a = RootedTree::leaf(x.basepoint().clone());
    let mut rep = WedgeVector::zero();
    for (t, c) in x.body().iter() {
        rep.add_scaled(&b.pair(&a, t), c);
    }
    Ok(RhoResult {
        input: x.clone(),
        representative: rep,
    })
}

/// `ρ` on an arbitrary element of `Λ²PreLie`.
pub fn rho_wedge(w: &WedgeVector) -> WedgeVector {
    let mut b = Builder { rng: None };
    let mut out = WedgeVector::zero();
    for ((s, t), c) in w.iter() {
        out.add_scaled(&b.pair(s, t), c);
    }
    out
}

struct Builder {
    rng: Option<ChaCha8Rng>,
}

fn fresh(trees: &[&RootedTree], extra: &[&Label]) -> Label {
    let mut taken = LabelSet::new();
    for t in trees {
        taken.extend(t.vertices());
    }
    taken.extend(extra.iter().map(|l| (*l).clone()));
    Label::fresh_outside(&[&taken])
}

fn single(t: &RootedTree) -> TreeVector {
    TreeVector::from_tree(t.clone())
}

impl Builder {
    fn pair(&mut self, s: &RootedTree, t: &RootedTree) -> WedgeVector {
        if self.rng.is_some() {
            return self.compute(s, t);
        }
        let key = (s.clone(), t.clone());
        if let Some(v) = cache().read().expect("rho cache poisoned").get(&key) {
            return v.clone();
        }
        let v = self.compute(s, t);
        cache().write().expect("rho cache poisoned").insert(key, v.clone());
        v
    }

    fn compute(&mut self, s: &RootedTree, t: &RootedTree) -> WedgeVector {
        if s.is_leaf() && t.is_leaf() {
            return WedgeVector::pair(s.clone(), t.clone());
        }
        if !s.is_leaf() && t.is_leaf() {
            return -self.pair(t, s);
        }
        if s.is_leaf() {
            return if t.root_valence() == 1 {
                self.chain(s, t)
            } else {
                self.split_root(s, t)
            };
        }
        // neither block a singleton:
        // ρ(T∧T′) = ρ(T∧*)∘_* T′ + ρ(#∧T′)∘_# T − T∧T′
        let star = fresh(&[s, t], &[]);
        let hash = fresh(&[s, t], &[&star]);
        let left = -self.pair(&RootedTree::leaf(star.clone()), s);
        let right = self.pair(&RootedTree::leaf(hash.clone()), t);
        let mut out = wedge_compose_unchecked(&left, &star, &single(t));
        out.add_scaled(&wedge_compose_unchecked(&right, &hash, &single(s)), &Rational::one());
        out.add_pair(s.clone(), t.clone(), Rational::from_int(-1));
        out
    }

    /// `a ∧ (b ◁ T″)`.
    fn chain(&mut self, a: &RootedTree, t: &RootedTree) -> WedgeVector {
        let b = t.root();
        let rest = &t.children()[0];
        if rest.is_leaf() {
            // ρ(a∧(b◁c)) = a∧(b◁c) − c∧(b◁a)
            let mut out = WedgeVector::pair(a.clone(), t.clone());
            out.add_pair(
                rest.clone(),
                RootedTree::node(b.clone(), vec![a.clone()]),
                Rational::from_int(-1),
            );
            return out;
        }
        let star = fresh(&[a, t], &[]);
        let hash = fresh(&[a, t], &[&star]);
        let b_star = RootedTree::node(b.clone(), vec![RootedTree::leaf(star.clone())]);
        let head = WedgeVector::pair(a.clone(), b_star.clone());
        let g = gamma(&star, &head).expect("placeholder present");
        self.property(a, &b_star, &star, rest, &hash, &g)
    }

    /// Right side of the composition property of `ρ` for `(r ∧ s) ∘_i t`
    /// with `r` a singleton, given `g = Γ_i(r ∧ s)`.
    fn property(
        &mut self,
        r: &RootedTree,
        s: &RootedTree,
        i: &Label,
        t: &RootedTree,
        hash: &Label,
        g: &TreeVector,
    ) -> WedgeVector {
        let first = self.pair(r, s);
        let second = self.pair(&RootedTree::leaf(hash.clone()), t);
        let mut out = wedge_compose_unchecked(&first, i, &single(t));
        out.add_scaled(
            &wedge_compose_unchecked(&second, hash, g),
            &Rational::from_int(-1),
        );
        out.add_scaled(&WedgeVector::wedge(g, &single(t)), &Rational::one());
        out
    }

    /// `a ∧ B_b(T₁, …, T_k)` with `k ≥ 2`: with `T″ = B_*(T₂, …, T_k)` and
    /// `U = b ◁ T₁`, one has `T′ = T″ ∘_* U − Σ T_α`.
    fn split_root(&mut self, a: &RootedTree, t: &RootedTree) -> WedgeVector {
        let kids = t.children();
        let k = match &mut self.rng {
            Some(rng) => rng.random_range(0..kids.len()),
            None => 0,
        };
        let star = fresh(&[a, t], &[]);
        let hash = fresh(&[a, t], &[&star]);
        let others: Vec<RootedTree> = kids
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, c)| c.clone())
            .collect();
        let outer = RootedTree::node(star.clone(), others);
        let u = RootedTree::node(t.root().clone(), vec![kids[k].clone()]);
        let g = gamma(&star, &WedgeVector::pair(a.clone(), outer.clone())).expect("placeholder present");
        let mut out = self.property(a, &outer, &star, &u, &hash, &g);
        let mut remainder = compose_unchecked(&single(&outer), &star, &single(&u));
        remainder.add_term(t.clone(), Rational::from_int(-1));
        for (ta, c) in remainder.iter() {
            out.add_scaled(&self.pair(a, ta), &-c);
        }
        out
    }
}

/// `δ(ρ(x)) − Σ_i i ◁ Γ_i(x)`; passes when the residual is zero.
pub fn verify_carre(x: &CycPreLieElem) -> Result<Check<TreeVector>> {
    let r = rho(x)?;
    let residual = delta2(&r.representative) - sum_of_gammas(x);
    Ok(Check {
        passed: residual.is_zero(),
        residual,
    })
}

/// `⟨,⟩(ρ(x)) − (n − 1) x`; passes when the residual is zero.
pub fn verify_rho_n(x: &CycPreLieElem) -> Result<Check<CycPreLieElem>> {
    let r = rho(x)?;
    let n = x.arity() as i64;
    let residual = cyc_normal(&r.representative) - x.scaled(&Rational::from_int(n - 1));
    Ok(Check {
        passed: residual.is_zero(),
        residual,
    })
}

/// `μ` on the basis `(j − i₀) ⊗ t` of sum-zero elements, `j ≠ i₀`.
#[derive(Clone, Debug)]
pub struct MuMap {
    pub arity: usize,
    pub labels: LabelSet,
    pub indec: IndecSpace,
    /// `((j, t), μ((j − i₀) ⊗ ⟨i₀, t⟩))` in quotient coordinates.
    pub columns: Vec<((Label, RootedTree), SparseVec<RootedTree>)>,
    pub rank: usize,
}

impl MuMap {
    pub fn domain_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.indec.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.rank == self.domain_dim() && self.rank == self.codomain_dim()
    }

    /// `μ(p(x))` for an arbitrary `x ∈ Perm ⊙ CycPreLie`, through the
    /// expansion `p(i ⊗ t) = Σ_{j≠i₀} (δ_ij − 1/n) (j − i₀) ⊗ t`.
    pub fn apply_projected(&self, x: &PermCycElem) -> SparseVec<RootedTree> {
        let n = self.arity as i64;
        let by_key: BTreeMap<&(Label, RootedTree), &SparseVec<RootedTree>> =
            self.columns.iter().map(|(k, v)| (k, v)).collect();
        let i0 = self.labels.first().expect("nonempty");
        let mut out = SparseVec::new();
        for (i, t) in x.slots() {
            for (tree, c) in t.body().iter() {
                for j in &self.labels {
                    if j == i0 {
                        continue;
                    }
                    let mut w = Rational::new(-1, n);
                    if i == j {
                        w += &Rational::one();
                    }
                    let col = by_key[&(j.clone(), tree.clone())];
                    out.add_scaled(col, &(c * &w));
                }
            }
        }
        out
    }
}

pub fn mu_map(n: usize) -> Result<MuMap> {
    if n < 2 {
        return Err(Error::ArityTooSmall { got: n, min: 2 });
    }
    let labels = label_set(&standard_labels(n));
    let indec = indec_space(&labels);
    let i0 = labels.first().expect("nonempty").clone();
    let basis = cycprelie_basis(&labels);
    let keys: Vec<(Label, &CycPreLieElem)> = labels
        .iter()
        .filter(|j| **j != i0)
        .flat_map(|j| basis.iter().map(move |t| (j.clone(), t)))
        .collect();
    let columns: Vec<((Label, RootedTree), SparseVec<RootedTree>)> = keys
        .par_iter()
        .map(|(j, t)| {
            let tree = t.body().trees().next().expect("basis element").clone();
            let mut p = PermCycElem::single(j, t).expect("slot");
            p.add_slot(&i0, t, &Rational::from_int(-1)).expect("slot");
            ((j.clone(), tree), indec.pi_coords(&psi(&p)))
        })
        .collect();
    let mut sp = Span::new();
    for (_, v) in &columns {
        sp.insert(v);
    }
    Ok(MuMap {
        arity: n,
        labels,
        indec,
        rank: sp.rank(),
        columns,
    })
}

/// Dimensions and checks of the isomorphism of short exact sequences.
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub arity: usize,
    pub dim_cycprelie: usize,
    pub rank_rho: usize,
    pub dim_rela_v1: usize,
    pub dim_reflex: usize,
    pub dim_indec: usize,
    pub mu_rank: usize,
    pub mu_bijective: bool,
    /// `rank δ₃ + rank δ₂ = dim Λ²`, i.e. `Rela ≅ im δ`.
    pub exact_at_wedge2: bool,
    pub left_square: bool,
    pub right_square: bool,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_iso_ses(n: usize) -> Result<IsoReport> {
    let mu = mu_map(n)?;
    let labels = mu.labels.clone();
    let basis = cycprelie_basis(&labels);
    let mut failures = Vec::new();

    // ρ and the left square
    let rhos: Vec<RhoResult> = basis.par_iter().map(rho).collect::<Result<_>>()?;
    let mut left_square = true;
    for r in &rhos {
        let d = delta2(&r.representative);
        if d != sum_of_gammas(&r.input) {
            left_square = false;
            failures.push(format!("left square fails at {}", r.input));
        }
    }

    // rank of ρ inside Λ²/im δ₃
    let mut image3: Span<WedgeKey> = Span::with_universe(wedge_basis(&labels));
    for [a, b, c] in wedge3_basis(&labels) {
        image3.insert(delta3(&Wedge3Vector::triple(a, b, c)).as_sparse());
    }
    let rank3 = image3.rank();
    let mut with_rho = image3.clone();
    for r in &rhos {
        with_rho.insert(r.representative.as_sparse());
    }
    let rank_rho = with_rho.rank() - rank3;

    // Rela_{v=1} ≅ im δ₂ ∩ PreLie_{v=1}
    let image2 = mu.indec.image();
    let rank2 = image2.rank();
    let exact = rank2 + rank3 == image3.universe_len();
    if !exact {
        failures.push(format!(
            "Λ² not exact: rank δ₃ {rank3} + rank δ₂ {rank2} ≠ {}",
            image3.universe_len()
        ));
    }
    let v1: Vec<RootedTree> = crate::trees::enumerate_trees(&labels)?
        .into_iter()
        .filter(|t| t.root_valence() == 1)
        .collect();
    let mut sum = image2.clone();
    for t in &v1 {
        sum.insert(&SparseVec::unit(t.clone()));
    }
    let dim_rela_v1 = rank2 + v1.len() - sum.rank();

    // right square on every i ⊗ t
    let mut right_square = true;
    for t in &basis {
        for i in &labels {
            let x = PermCycElem::single(i, t)?;
            let lhs = mu.indec.pi_coords(&psi(&x));
            if lhs != mu.apply_projected(&x) {
                right_square = false;
                failures.push(format!("right square fails at {i} ⊗ ({t})"));
            }
        }
    }

    let dim_cycprelie = basis.len();
    let dim_reflex = (n - 1) * dim_cycprelie;
    if rank_rho != dim_cycprelie {
        failures.push(format!("rank ρ = {rank_rho} ≠ dim CycPreLie = {dim_cycprelie}"));
    }
    if dim_rela_v1 != dim_cycprelie {
        failures.push(format!("dim Rela_v=1 = {dim_rela_v1} ≠ {dim_cycprelie}"));
    }
    if !mu.is_bijective() {
        failures.push(format!(
            "μ not bijective: rank {} on {} → {}",
            mu.rank,
            mu.domain_dim(),
            mu.codomain_dim()
        ));
    }
    Ok(IsoReport {
        arity: n,
        dim_cycprelie,
        rank_rho,
        dim_rela_v1,
        dim_reflex,
        dim_indec: mu.codomain_dim(),
        mu_rank: mu.rank,
        mu_bijective: mu.is_bijective(),
        exact_at_wedge2: exact,
        left_square,
        right_square,
        failures,
    })
}
