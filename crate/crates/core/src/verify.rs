//! Verification suites: exhaustive checks at small arity and seeded random
//! sampling above it. Every suite reports what it checked, what failed and
//! the dimensions it observed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anticyclic::{
    cyc_normal, cycprelie_basis, gamma, gamma_seeded, kp_oracle, psi, psi_inv, PermCycElem,
};
use crate::cyclie_embed::{conjecture_report, lambda_map, series_residuals, theta, theta_cyc, theta_well_defined};
use crate::error::Result;
use crate::exactalg::{rank_of, SparseVec};
use crate::lie::{cyclie_basis, cyclie_rotate, LieVector};
use crate::prelie::{
    compose_partial, delta2, delta3, indec_space, prelie_product, reduce_rv1, wedge3_basis,
    wedge_basis, TreeVector, Wedge3Vector, WedgeVector,
};
use crate::rho_iso::{rho_seeded, verify_carre, verify_iso_ses, verify_rho_n};
use crate::trees::{enumerate_trees, label_set, standard_labels, Label, LabelSet, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Operad,
    Anticyclic,
    Rho,
    Theta,
    Conjectures,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [
        Suite::Operad,
        Suite::Anticyclic,
        Suite::Rho,
        Suite::Theta,
        Suite::Conjectures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Operad => "operad",
            Suite::Anticyclic => "anticyclic",
            Suite::Rho => "rho",
            Suite::Theta => "theta",
            Suite::Conjectures => "conjectures",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::PARTS
            .iter()
            .chain([&Suite::All])
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Outcome of a suite. `dims` maps a quantity name to its value per arity.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub arity: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    pub dims: BTreeMap<String, BTreeMap<usize, usize>>,
}

impl VerifyReport {
    fn new(arity: usize) -> Self {
        VerifyReport {
            arity,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    /// Records a dimension and checks it against the expected value.
    fn dim(&mut self, name: &str, n: usize, got: usize, expected: Option<usize>) {
        self.dims.entry(name.to_string()).or_default().insert(n, got);
        if let Some(e) = expected {
            self.check(got == e, || format!("dim {name}({n}) = {got}, expected {e}"));
        }
    }

    /// Folds in failures computed in parallel, in canonical order.
    fn absorb(&mut self, checked: usize, mut failures: Vec<String>) {
        failures.sort();
        self.checked += checked;
        self.failures.extend(failures);
    }

    fn merge(&mut self, other: VerifyReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        for (k, v) in other.dims {
            self.dims.entry(k).or_default().extend(v);
        }
    }
}

/// Parameters shared by all suites.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Random instances drawn per arity above the exhaustive range.
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(max_n: usize) -> Self {
        VerifyConfig {
            max_n,
            seed: 0,
            samples: 500,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    match suite {
        Suite::Operad => operad_suite(cfg),
        Suite::Anticyclic => anticyclic_suite(cfg),
        Suite::Rho => rho_suite(cfg),
        Suite::Theta => theta_suite(cfg),
        Suite::Conjectures => conjectures_suite(cfg),
        Suite::All => {
            let mut out = VerifyReport::new(cfg.max_n);
            for s in Suite::PARTS {
                out.merge(run_suite(s, cfg)?);
            }
            Ok(out)
        }
    }
}

/// Largest arity covered exhaustively by the operad and pre-Lie checks.
pub const EXHAUSTIVE_MAX: usize = 4;

fn pow(b: usize, e: usize) -> usize {
    b.pow(e as u32)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn single(t: &RootedTree) -> TreeVector {
    TreeVector::from_tree(t.clone())
}

fn placeholders(n: usize) -> (Label, Label) {
    let ls = label_set(&standard_labels(n));
    let p = Label::fresh_outside(&[&ls]);
    let mut taken = ls;
    taken.insert(p.clone());
    let q = Label::fresh_outside(&[&taken]);
    (p, q)
}

/// Ordered partitions of `labels` into `k` blocks, where the blocks listed in
/// `may_be_empty` are allowed to be empty.
fn ordered_blocks(labels: &[Label], k: usize, may_be_empty: &[bool]) -> Vec<Vec<LabelSet>> {
    let mut out = Vec::new();
    for code in 0..pow(k, labels.len()) {
        let mut blocks = vec![LabelSet::new(); k];
        let mut c = code;
        for l in labels {
            blocks[c % k].insert(l.clone());
            c /= k;
        }
        if blocks.iter().zip(may_be_empty).all(|(b, &e)| e || !b.is_empty()) {
            out.push(blocks);
        }
    }
    out
}

fn with(set: &LabelSet, extra: &[&Label]) -> LabelSet {
    let mut s = set.clone();
    s.extend(extra.iter().map(|l| (*l).clone()));
    s
}

fn trees_on(set: &LabelSet) -> Vec<RootedTree> {
    enumerate_trees(set).expect("nonempty label set")
}

/// A random tree on `labels`: each vertex after the first (in shuffled order)
/// attaches to a uniformly chosen earlier one. Every tree has positive
/// probability.
pub fn random_tree(labels: &LabelSet, rng: &mut impl Rng) -> RootedTree {
    let mut ls: Vec<Label> = labels.iter().cloned().collect();
    ls.shuffle(rng);
    let parent: BTreeMap<Label, Label> = (1..ls.len())
        .map(|i| (ls[i].clone(), ls[rng.random_range(0..i)].clone()))
        .collect();
    RootedTree::from_parent_map(&ls[0], &parent).expect("valid parent map")
}

fn random_blocks(labels: &[Label], k: usize, may_be_empty: &[bool], rng: &mut impl Rng) -> Vec<LabelSet> {
    loop {
        let mut blocks = vec![LabelSet::new(); k];
        for l in labels {
            blocks[rng.random_range(0..k)].insert(l.clone());
        }
        if blocks.iter().zip(may_be_empty).all(|(b, &e)| e || !b.is_empty()) {
            return blocks;
        }
    }
}

/// One instance of each operad identity: `s` carries the placeholders.
#[derive(Clone)]
enum Axiom {
    /// `(s ∘_p t) ∘_q u = s ∘_p (t ∘_q u)` with `q ∈ t`.
    Sequential(RootedTree, RootedTree, RootedTree),
    /// `(s ∘_p t) ∘_q u = (s ∘_q u) ∘_p t` with `p, q ∈ s`.
    Parallel(RootedTree, RootedTree, RootedTree),
    /// `(x ◁ y) ◁ z − x ◁ (y ◁ z)` symmetric in `y, z`.
    PreLie(RootedTree, RootedTree, RootedTree),
}

impl Axiom {
    fn failure(&self, p: &Label, q: &Label) -> Option<String> {
        let ok = match self {
            Axiom::Sequential(s, t, u) => {
                let lhs = compose_partial(&compose_partial(&single(s), p, &single(t)).ok()?, q, &single(u));
                let rhs = compose_partial(&single(s), p, &compose_partial(&single(t), q, &single(u)).ok()?);
                lhs.ok()? == rhs.ok()?
            }
            Axiom::Parallel(s, t, u) => {
                let lhs = compose_partial(&compose_partial(&single(s), p, &single(t)).ok()?, q, &single(u));
                let rhs = compose_partial(&compose_partial(&single(s), q, &single(u)).ok()?, p, &single(t));
                lhs.ok()? == rhs.ok()?
            }
            Axiom::PreLie(x, y, z) => {
                let assoc = |a: &RootedTree, b: &RootedTree, c: &RootedTree| -> Option<TreeVector> {
                    let l = prelie_product(&prelie_product(&single(a), &single(b)).ok()?, &single(c)).ok()?;
                    let r = prelie_product(&single(a), &prelie_product(&single(b), &single(c)).ok()?).ok()?;
                    Some(l - r)
                };
                assoc(x, y, z)? == assoc(x, z, y)?
            }
        };
        (!ok).then(|| match self {
            Axiom::Sequential(s, t, u) => format!("sequential axiom fails for {s}, {t}, {u}"),
            Axiom::Parallel(s, t, u) => format!("parallel axiom fails for {s}, {t}, {u}"),
            Axiom::PreLie(x, y, z) => format!("pre-Lie identity fails for {x}, {y}, {z}"),
        })
    }
}

fn exhaustive_axioms(n: usize, p: &Label, q: &Label) -> Vec<Axiom> {
    let ls = standard_labels(n);
    let mut out = Vec::new();
    for b in ordered_blocks(&ls, 3, &[true, true, false]) {
        for s in trees_on(&with(&b[0], &[p])) {
            for t in trees_on(&with(&b[1], &[q])) {
                for u in trees_on(&b[2]) {
                    out.push(Axiom::Sequential(s.clone(), t.clone(), u));
                }
            }
        }
    }
    for b in ordered_blocks(&ls, 3, &[true, false, false]) {
        for s in trees_on(&with(&b[0], &[p, q])) {
            for t in trees_on(&b[1]) {
                for u in trees_on(&b[2]) {
                    out.push(Axiom::Parallel(s.clone(), t.clone(), u));
                }
            }
        }
    }
    for b in ordered_blocks(&ls, 3, &[false, false, false]) {
        for x in trees_on(&b[0]) {
            for y in trees_on(&b[1]) {
                for z in trees_on(&b[2]) {
                    out.push(Axiom::PreLie(x.clone(), y.clone(), z));
                }
            }
        }
    }
    out
}

fn sampled_axioms(n: usize, p: &Label, q: &Label, count: usize, rng: &mut ChaCha8Rng) -> Vec<Axiom> {
    let ls = standard_labels(n);
    (0..count)
        .map(|k| match k % 3 {
            0 => {
                let b = random_blocks(&ls, 3, &[true, true, false], rng);
                Axiom::Sequential(
                    random_tree(&with(&b[0], &[p]), rng),
                    random_tree(&with(&b[1], &[q]), rng),
                    random_tree(&b[2], rng),
                )
            }
            1 => {
                let b = random_blocks(&ls, 3, &[true, false, false], rng);
                Axiom::Parallel(
                    random_tree(&with(&b[0], &[p, q]), rng),
                    random_tree(&b[1], rng),
                    random_tree(&b[2], rng),
                )
            }
            _ => {
                let b = random_blocks(&ls, 3, &[false, false, false], rng);
                Axiom::PreLie(random_tree(&b[0], rng), random_tree(&b[1], rng), random_tree(&b[2], rng))
            }
        })
        .collect()
}

/// Operad axioms, unit laws, the pre-Lie identity, `δ₂ ∘ δ₃ = 0`, the
/// root-valence-1 reduction and the dimensions of `PreLie` and `Indec`.
pub fn operad_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(cfg.max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.max_n {
        let ls = label_set(&standard_labels(n));
        let trees = trees_on(&ls);
        rep.dim("prelie", n, trees.len(), Some(pow(n, n - 1)));
        if n <= 5 {
            let sp = indec_space(&ls);
            let expected = if n == 1 { 1 } else { pow(n - 1, n - 1) };
            rep.dim("indec", n, sp.dim(), Some(expected));
        }
        let (p, q) = placeholders(n);
        // unit laws
        for t in &trees {
            let v = single(t);
            let r = t.root().clone();
            let left = compose_partial(&TreeVector::leaf(&p), &p, &v)?;
            let right = compose_partial(&single(&t.rename(&r, &p)), &p, &TreeVector::leaf(&r))?;
            rep.check(left == v && right == v, || format!("unit law fails for {t}"));
        }
        if (2..=5).contains(&n) {
            let failures = trees
                .par_iter()
                .filter_map(|t| match reduce_rv1(t) {
                    Ok((r, w)) => {
                        let rv1 = r.trees().all(|s| s.root_valence() == 1);
                        let certified = single(t) - r == delta2(&w);
                        (!(rv1 && certified)).then(|| format!("reduce_rv1 fails on {t}"))
                    }
                    Err(e) => Some(format!("reduce_rv1 errors on {t}: {e}")),
                })
                .collect();
            rep.absorb(trees.len(), failures);
        }
        if n < 3 {
            continue;
        }
        let axioms = if n <= EXHAUSTIVE_MAX {
            exhaustive_axioms(n, &p, &q)
        } else {
            sampled_axioms(n, &p, &q, cfg.samples, &mut rng)
        };
        let failures = axioms.par_iter().filter_map(|a| a.failure(&p, &q)).collect();
        rep.absorb(axioms.len(), failures);

        if n <= EXHAUSTIVE_MAX {
            let basis3 = wedge3_basis(&ls);
            let failures = basis3
                .par_iter()
                .filter_map(|[a, b, c]| {
                    let w = Wedge3Vector::triple(a.clone(), b.clone(), c.clone());
                    (!delta2(&delta3(&w)).is_zero()).then(|| format!("δ₂δ₃ ≠ 0 on {a} ∧ {b} ∧ {c}"))
                })
                .collect();
            rep.absorb(basis3.len(), failures);
        }
    }
    Ok(rep)
}

/// `K_P` codimensions, `Γ` against the `K_P` oracle, independence of `Γ`
/// from decomposition choices, and `ψ` as a bijection onto root-valence-1
/// trees.
pub fn anticyclic_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(cfg.max_n);
    for n in 2..=cfg.max_n {
        let ls = label_set(&standard_labels(n));
        let basis = cycprelie_basis(&ls);
        let expected = pow(n - 1, n - 2);
        rep.dim("cycprelie", n, basis.len(), Some(expected));
        if n <= 5 {
            let kp = kp_oracle(&ls);
            rep.dim("kp_codim", n, kp.codim(), Some(expected));
            let wedges = wedge_basis(&ls);
            let seed = cfg.seed;
            let failures: Vec<String> = wedges
                .par_iter()
                .enumerate()
                .flat_map_iter(|(k, (s, t))| {
                    let w = WedgeVector::pair(s.clone(), t.clone());
                    let kp = &kp;
                    ls.iter().filter_map(move |b| {
                        let g = match gamma(b, &w) {
                            Ok(g) => g,
                            Err(e) => return Some(format!("Γ_{b}({w}) errors: {e}")),
                        };
                        let diff = w.clone() - WedgeVector::wedge(&TreeVector::leaf(b), &g);
                        if !kp.contains(diff.as_sparse()) {
                            return Some(format!("Γ_{b}({w}) = {g} disagrees with K_P"));
                        }
                        let seeded = gamma_seeded(b, &w, seed.wrapping_add(k as u64)).ok()?;
                        (seeded != g).then(|| format!("Γ_{b}({w}) depends on decomposition choices"))
                    })
                })
                .collect();
            rep.absorb(wedges.len() * n, failures);
        }
        // ψ: sum-of-slots ↔ root-valence-1 trees
        let rv1: Vec<RootedTree> = trees_on(&ls).into_iter().filter(|t| t.root_valence() == 1).collect();
        rep.dim("prelie_v1", n, rv1.len(), Some(n * expected));
        let slots: Vec<(Label, _)> = ls
            .iter()
            .flat_map(|i| basis.iter().map(move |t| (i.clone(), t.clone())))
            .collect();
        rep.dim("perm_cycprelie", n, slots.len(), Some(rv1.len()));
        if n <= 5 {
            let images: Vec<SparseVec<RootedTree>> = slots
                .par_iter()
                .map(|(i, t)| Ok(psi(&PermCycElem::single(i, t)?).into_sparse()))
                .collect::<Result<_>>()?;
            rep.dim("psi_rank", n, rank_of(&images), Some(rv1.len()));
            let failures = rv1
                .par_iter()
                .filter_map(|t| {
                    let v = single(t);
                    let back = psi_inv(&v).map(|x| psi(&x));
                    (back.as_ref() != Ok(&v)).then(|| format!("ψ ∘ ψ⁻¹ fails on {t}"))
                })
                .collect();
            rep.absorb(rv1.len(), failures);
        }
    }
    Ok(rep)
}

/// The defining square of `ρ`, the factor `n − 1`, independence of the
/// class from choices, and the isomorphism of short exact sequences.
pub fn rho_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(cfg.max_n);
    for n in 2..=cfg.max_n {
        let ls = label_set(&standard_labels(n));
        let basis = cycprelie_basis(&ls);
        let seed = cfg.seed;
        let failures: Vec<String> = basis
            .par_iter()
            .enumerate()
            .flat_map_iter(|(k, x)| {
                let mut out = Vec::new();
                match (verify_carre(x), verify_rho_n(x)) {
                    (Ok(a), Ok(b)) => {
                        if !a.passed {
                            out.push(format!("δρ ≠ ΣΓ at {x}"));
                        }
                        if !b.passed {
                            out.push(format!("⟨,⟩ρ ≠ (n−1)x at {x}"));
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => out.push(format!("ρ errors at {x}: {e}")),
                }
                if n <= EXHAUSTIVE_MAX {
                    if let Ok(r) = rho_seeded(x, seed.wrapping_add(k as u64)) {
                        let sq = delta2(&r.representative) == crate::anticyclic::sum_of_gammas(x);
                        let nx = cyc_normal(&r.representative)
                            == x.scaled(&crate::Rational::from_int(n as i64 - 1));
                        if !(sq && nx) {
                            out.push(format!("seeded ρ fails at {x}"));
                        }
                    }
                }
                out
            })
            .collect();
        rep.absorb(basis.len() * 3, failures);
        if n <= EXHAUSTIVE_MAX {
            let iso = verify_iso_ses(n)?;
            rep.dim("rank_rho", n, iso.rank_rho, Some(basis.len()));
            rep.dim("rela_v1", n, iso.dim_rela_v1, Some(basis.len()));
            rep.dim("reflex_cycprelie", n, iso.dim_reflex, Some(pow(n - 1, n - 1)));
            rep.dim("mu_rank", n, iso.mu_rank, Some(pow(n - 1, n - 1)));
            rep.check(iso.mu_bijective, || format!("μ not invertible at n = {n}"));
            rep.check(iso.left_square, || format!("left square fails at n = {n}"));
            rep.check(iso.right_square, || format!("right square fails at n = {n}"));
            rep.check(iso.exact_at_wedge2, || format!("Λ² not exact at n = {n}"));
            rep.failures.extend(iso.failures);
        }
    }
    Ok(rep)
}

/// Well-definedness and rank of `θ`, slot sums, independence of the
/// presentation, and `λ`.
pub fn theta_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(cfg.max_n);
    let (x, y) = (Label::new("x")?, Label::new("y")?);
    let lxy = lambda_map(&crate::lie::CycLieElem::new(x.clone(), LieVector::leaf(y.clone()))?)?;
    let expected = TreeVector::parse("(x y) + (y x)")?;
    rep.check(lxy == expected, || format!("λ(⟨x,y⟩) = {lxy}"));
    for n in 2..=cfg.max_n {
        let ls = label_set(&standard_labels(n));
        if (3..=EXHAUSTIVE_MAX).contains(&n) {
            let wd = theta_well_defined(&ls)?;
            rep.absorb(wd.checked, wd.failures);
        }
        let basis = cyclie_basis(&ls);
        let images: Vec<(PermCycElem, TreeVector)> = basis
            .par_iter()
            .map(|e| Ok((theta_cyc(e)?, lambda_map(e)?)))
            .collect::<Result<_>>()?;
        let expected = factorial(n - 2);
        rep.dim("cyclie", n, basis.len(), Some(expected));
        let coords: Vec<_> = images.iter().map(|(t, _)| t.coords()).collect();
        rep.dim("theta_rank", n, rank_of(&coords), Some(expected));
        let lambdas: Vec<_> = images.iter().map(|(_, l)| l.as_sparse().clone()).collect();
        rep.dim("lambda_rank", n, rank_of(&lambdas), Some(expected));
        for (e, (t, l)) in basis.iter().zip(&images) {
            rep.check(t.slot_sum().is_zero(), || format!("θ({e}) has nonzero slot sum"));
            rep.check(l.trees().all(|s| s.root_valence() == 1), || {
                format!("λ({e}) leaves root-valence 1")
            });
        }
        if n <= 5 {
            let failures: Vec<String> = basis
                .par_iter()
                .zip(&images)
                .flat_map_iter(|(e, (t, _))| {
                    e.labels().into_iter().filter_map(move |i| {
                        let body = cyclie_rotate(e, &i).ok()?;
                        let v = theta(&LieVector::leaf(i.clone()), &body).ok()?.value;
                        (v != *t).then(|| format!("θ depends on the presentation of {e} at {i}"))
                    })
                })
                .collect();
            rep.absorb(basis.len() * n, failures);
        }
    }
    Ok(rep)
}

/// Series identities to order 10 and the dimension comparison for `M`.
/// Conjecture mismatches are reported as failures.
pub fn conjectures_suite(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rep = VerifyReport::new(cfg.max_n);
    let order = cfg.max_n.max(7) + 3;
    let s = series_residuals(order)?;
    rep.check(s.all_zero(), || format!("series identities fail to order {order}"));
    if cfg.max_n < 2 {
        return Ok(rep);
    }
    let report = conjecture_report(cfg.max_n)?;
    for r in &report.rows {
        rep.dim("M", r.n, r.dim_m, None);
        rep.dim("indec", r.n, r.dim_indec, None);
        rep.dim("free", r.n, r.dim_free, None);
        rep.check(r.matches, || {
            format!(
                "n = {}: dim M = {}, dim Indec = {}, dim free = {}",
                r.n, r.dim_m, r.dim_indec, r.dim_free
            )
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_three() {
        let cfg = VerifyConfig::new(3);
        for s in Suite::PARTS {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::PARTS.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn random_trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ls = label_set(&standard_labels(6));
        for _ in 0..50 {
            assert_eq!(random_tree(&ls, &mut rng).labels(), ls);
        }
    }

    #[test]
    fn report_json_shape() {
        let r = run_suite(Suite::Theta, &VerifyConfig::new(3)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["arity", "checked", "failures", "dims"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
