//! The maps `θ : CycLie → Perm ⊙ CycPreLie` and `λ = ψ ∘ θ`, the suboperad
//! `M ⊆ PreLie` generated by the image of `λ`, and the dimension comparison
//! against `Indec` and the free operad on `CycLie`.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::anticyclic::{cyc_normal, ordered_triples, psi, PermCycElem};
use crate::error::{Error, Result};
use crate::exactalg::{cyclie_series, prelie_series, Egf, Rational, Span};
use crate::lie::{cyclie_basis, lie_basis, lie_normal_form, phi, CycLieElem, LieVector, LieWord};
use crate::prelie::{compose_unchecked, indec_space, TreeVector, WedgeVector};
use crate::trees::{label_set, standard_labels, Label, LabelSet, RootedTree};

/// `θ(m₁ · m₂)` for a presentation in `S²Lie`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaImage {
    pub m1: LieVector,
    pub m2: LieVector,
    pub value: PermCycElem,
}

/// Splits `φ(m)` by the root of each tree.
fn by_root(m: &LieVector) -> BTreeMap<Label, TreeVector> {
    let mut out: BTreeMap<Label, TreeVector> = BTreeMap::new();
    for (t, c) in phi(m).iter() {
        out.entry(t.root().clone())
            .or_default()
            .add_term(t.clone(), c.clone());
    }
    out
}

/// `θ(m₁ · m₂) = Σ_{a,b} (a − b) ⊗ ⟨φ(m₁)_a, φ(m₂)_b⟩`, where `φ(m)_a` is
/// the part of `φ(m)` made of trees with root `a`.
pub fn theta(m1: &LieVector, m2: &LieVector) -> Result<ThetaImage> {
    let (l1, l2) = match (m1.labels(), m2.labels()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Empty),
    };
    if let Some(l) = l1.intersection(&l2).next() {
        return Err(Error::LabelClash(l.to_string()));
    }
    let labels: LabelSet = l1.union(&l2).cloned().collect();
    let mut value = PermCycElem::zero(labels);
    let minus = Rational::from_int(-1);
    for (a, ta) in by_root(m1) {
        for (b, tb) in by_root(m2) {
            let e = cyc_normal(&WedgeVector::wedge(&ta, &tb));
            if e.is_zero() {
                continue;
            }
            value.add_slot(&a, &e, &Rational::one())?;
            value.add_slot(&b, &e, &minus)?;
        }
    }
    Ok(ThetaImage {
        m1: m1.clone(),
        m2: m2.clone(),
        value,
    })
}

/// `θ` on `CycLie` through the presentation `⟨i₀, body⟩`.
pub fn theta_cyc(e: &CycLieElem) -> Result<PermCycElem> {
    Ok(theta(&LieVector::leaf(e.basepoint().clone()), e.body())?.value)
}

fn lie_bracket(u: &LieVector, v: &LieVector) -> LieVector {
    let mut out = LieVector::zero();
    for (wu, a) in u.words() {
        for (wv, b) in v.words() {
            out.add_scaled(&lie_normal_form(&LieWord::bracket(wu.clone(), wv)), &(a * b));
        }
    }
    out
}

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `θ(m₁ · [m₂, m₃]) = θ([m₁, m₂] · m₃)` for all basis elements on all
/// ordered triples of blocks of `I`.
pub fn theta_well_defined(labels: &LabelSet) -> Result<CheckReport> {
    if labels.len() < 3 {
        return Err(Error::ArityTooSmall {
            got: labels.len(),
            min: 3,
        });
    }
    let mut cases = Vec::new();
    for [a, b, c] in ordered_triples(labels) {
        for x in lie_basis(&a) {
            for y in lie_basis(&b) {
                for z in lie_basis(&c) {
                    cases.push((
                        LieVector::basis_element(x.clone()),
                        LieVector::basis_element(y.clone()),
                        LieVector::basis_element(z),
                    ));
                }
            }
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(m1, m2, m3)| {
            let lhs = theta(m1, &lie_bracket(m2, m3)).ok()?.value;
            let rhs = theta(&lie_bracket(m1, m2), m3).ok()?.value;
            (lhs != rhs).then(|| format!("θ({m1} · [{m2}, {m3}]) ≠ θ([{m1}, {m2}] · {m3})"))
        })
        .collect();
    Ok(CheckReport {
        checked: cases.len(),
        failures,
    })
}

/// `λ = ψ ∘ θ : CycLie → PreLie_{v=1}`.
pub fn lambda_map(e: &CycLieElem) -> Result<TreeVector> {
    let n = e.labels().len();
    if n < 2 {
        return Err(Error::ArityTooSmall { got: n, min: 2 });
    }
    Ok(psi(&theta_cyc(e)?))
}

/// Dimensions of `M(n)` with the comparison columns.
#[derive(Clone, Debug, Serialize)]
pub struct SuboperadRow {
    pub n: usize,
    pub dim_m: usize,
    /// `dim π(M(n))` inside `Indec(n)`, when computed.
    pub dim_pi_m: Option<usize>,
    pub dim_indec: usize,
    pub dim_free: usize,
}

#[derive(Clone, Debug)]
pub struct SuboperadTable {
    pub max_arity: usize,
    pub rows: Vec<SuboperadRow>,
    /// Spanning vectors of `M(n)` on the labels `1..n`, indexed by `n`.
    pub spans: Vec<Vec<TreeVector>>,
}

/// Largest arity at which `π(M(n))` is computed inside an explicit
/// `Indec(n)`.
pub const PI_CHECK_MAX: usize = 5;

/// The transposition `(1 2)` and the cycle `(1 2 … n)`, which generate `S_n`.
fn generator_maps(labels: &[Label]) -> Vec<BTreeMap<Label, Label>> {
    let n = labels.len();
    if n < 2 {
        return Vec::new();
    }
    let swap = BTreeMap::from([
        (labels[0].clone(), labels[1].clone()),
        (labels[1].clone(), labels[0].clone()),
    ]);
    let cycle = (0..n)
        .map(|i| (labels[i].clone(), labels[(i + 1) % n].clone()))
        .collect();
    vec![swap, cycle]
}

/// `u ∘_i v` with `u` on `1..k`, `v` on `1..m`, relabeled onto `1..k+m−1`
/// by the order-preserving rule (`v` takes the block starting at `i`).
fn compose_standard(u: &TreeVector, k: usize, i: usize, v: &TreeVector, m: usize) -> TreeVector {
    let n = k + m - 1;
    let (lk, lm, ln) = (standard_labels(k), standard_labels(m), standard_labels(n));
    let hole = Label::new("p").expect("valid label");
    let mut mu = BTreeMap::new();
    for j in 1..=k {
        let target = match j.cmp(&i) {
            std::cmp::Ordering::Less => ln[j - 1].clone(),
            std::cmp::Ordering::Equal => hole.clone(),
            std::cmp::Ordering::Greater => ln[j + m - 2].clone(),
        };
        mu.insert(lk[j - 1].clone(), target);
    }
    let mv: BTreeMap<Label, Label> = (1..=m).map(|l| (lm[l - 1].clone(), ln[i + l - 2].clone())).collect();
    compose_unchecked(&u.relabel(&mu), &hole, &v.relabel(&mv))
}

/// Generates `M(n)` for `1 ≤ n ≤ max_arity`: the span of `λ(CycLie(n))` and
/// of all compositions of lower-arity pieces, closed under the symmetric
/// group.
pub fn generate_suboperad(max_arity: usize) -> Result<SuboperadTable> {
    if max_arity < 2 {
        return Err(Error::ArityTooSmall {
            got: max_arity,
            min: 2,
        });
    }
    let free = Egf::fixed_point_free_operad(&cyclie_series(max_arity), max_arity)?.dims();
    let indec = indec_dims(max_arity)?;
    let mut spans: Vec<Vec<TreeVector>> = vec![Vec::new(); max_arity + 1];
    spans[1] = vec![TreeVector::from_tree(RootedTree::leaf(standard_labels(1)[0].clone()))];
    let mut rows = vec![SuboperadRow {
        n: 1,
        dim_m: 1,
        dim_pi_m: Some(1),
        dim_indec: indec[1],
        dim_free: to_usize(&free[1]),
    }];
    for n in 2..=max_arity {
        let labels = standard_labels(n);
        let ls = label_set(&labels);
        let mut candidates: Vec<TreeVector> = cyclie_basis(&ls)
            .par_iter()
            .map(lambda_map)
            .collect::<Result<_>>()?;
        let mut triples = Vec::new();
        for k in 2..n {
            let m = n - k + 1;
            for u in 0..spans[k].len() {
                for i in 1..=k {
                    for v in 0..spans[m].len() {
                        triples.push((k, u, i, m, v));
                    }
                }
            }
        }
        let composed: Vec<TreeVector> = triples
            .par_iter()
            .map(|&(k, u, i, m, v)| compose_standard(&spans[k][u], k, i, &spans[m][v], m))
            .collect();
        candidates.extend(composed);

        let gens = generator_maps(&labels);
        let mut span: Span<RootedTree> = Span::new();
        let mut basis = Vec::new();
        let mut queue: VecDeque<TreeVector> = candidates.into();
        while let Some(v) = queue.pop_front() {
            if span.insert(v.as_sparse()) {
                for g in &gens {
                    queue.push_back(v.relabel(g));
                }
                basis.push(v);
            }
        }
        let dim_pi_m = (n <= PI_CHECK_MAX).then(|| {
            let sp = indec_space(&ls);
            let mut img = Span::new();
            for v in &basis {
                img.insert(&sp.pi_coords(v));
            }
            img.rank()
        });
        rows.push(SuboperadRow {
            n,
            dim_m: span.rank(),
            dim_pi_m,
            dim_indec: indec[n],
            dim_free: to_usize(&free[n]),
        });
        spans[n] = basis;
    }
    Ok(SuboperadTable {
        max_arity,
        rows,
        spans,
    })
}

fn to_usize(r: &Rational) -> usize {
    r.to_i64().expect("integral dimension") as usize
}

/// EGF of `Indec`, from `1 − f_Indec = exp(−f_PreLie)`.
pub fn indec_series(order: usize) -> Result<Egf> {
    let f = prelie_series(order);
    Egf::one(order).sub(&f.scale(&Rational::from_int(-1)).exp()?)
}

fn indec_dims(order: usize) -> Result<Vec<usize>> {
    Ok(indec_series(order)?.dims().iter().map(to_usize).collect())
}

/// Residuals of the three series identities to the given order.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesResiduals {
    pub order: usize,
    /// `f_PreLie − x·exp(f_PreLie)`.
    pub prelie_fixed_point: Vec<Rational>,
    /// `(1 − f_Indec) − exp(−f_PreLie)`.
    pub indec_exp: Vec<Rational>,
    /// `(1 − f_Indec)(−log(1 − f_Indec)) − x`.
    pub indec_log: Vec<Rational>,
    /// `f_F − f_Indec` for the free operad on `CycLie`.
    pub free_vs_indec: Vec<Rational>,
}

impl SeriesResiduals {
    pub fn all_zero(&self) -> bool {
        [&self.prelie_fixed_point, &self.indec_exp, &self.indec_log, &self.free_vs_indec]
            .iter()
            .all(|v| v.iter().all(Rational::is_zero))
    }
}

pub fn series_residuals(order: usize) -> Result<SeriesResiduals> {
    let x = Egf::x(order);
    let one = Egf::one(order);
    let f = prelie_series(order);
    let prelie_fixed_point = f.sub(&x.mul(&f.exp()?)?)?;
    let exp_neg = f.scale(&Rational::from_int(-1)).exp()?;
    let indec = indec_series(order)?;
    let indec_exp = one.sub(&indec)?.sub(&exp_neg)?;
    let indec_log = one.sub(&indec)?.mul(&indec.log1p_neg()?)?.sub(&x)?;
    let free = Egf::fixed_point_free_operad(&cyclie_series(order), order)?;
    let free_vs_indec = free.sub(&indec)?;
    Ok(SeriesResiduals {
        order,
        prelie_fixed_point: prelie_fixed_point.coeffs().to_vec(),
        indec_exp: indec_exp.coeffs().to_vec(),
        indec_log: indec_log.coeffs().to_vec(),
        free_vs_indec: free_vs_indec.coeffs().to_vec(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    #[serde(rename = "dim_M")]
    pub dim_m: usize,
    pub dim_indec: usize,
    pub dim_free: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Evidence for the two conjectures on `M`; mismatches are reported, never
/// asserted away.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub max_arity: usize,
    pub rows: Vec<ConjectureRow>,
    pub series_residual_order: usize,
    pub ok: bool,
    /// Offending arities with the span dimensions, present on mismatch.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<SuboperadRow>,
}

pub fn conjecture_report(max_arity: usize) -> Result<ConjectureReport> {
    let table = generate_suboperad(max_arity)?;
    let order = max_arity + 3;
    let residuals = series_residuals(order)?;
    let mut certificate = Vec::new();
    let rows: Vec<ConjectureRow> = table
        .rows
        .iter()
        .map(|r| {
            let pi_ok = r.dim_pi_m.is_none_or(|d| d == r.dim_m);
            let matches = r.dim_m == r.dim_indec && r.dim_m == r.dim_free && pi_ok;
            if !matches {
                certificate.push(r.clone());
            }
            ConjectureRow {
                n: r.n,
                dim_m: r.dim_m,
                dim_indec: r.dim_indec,
                dim_free: r.dim_free,
                matches,
            }
        })
        .collect();
    let ok = certificate.is_empty() && residuals.all_zero();
    Ok(ConjectureReport {
        max_arity,
        rows,
        series_residual_order: order,
        ok,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anticyclic::reflex_project;
    use crate::exactalg::rank_of;
    use crate::trees::{label, labels};

    fn lv(s: &str) -> LieVector {
        LieVector::parse(s).unwrap()
    }

    fn tv(s: &str) -> TreeVector {
        TreeVector::parse(s).unwrap()
    }

    #[test]
    fn theta_on_letters() {
        let v = theta(&lv("x"), &lv("y")).unwrap().value;
        let e = cyc_normal(&WedgeVector::parse("x ^ y").unwrap());
        let mut expected = PermCycElem::single(&label("x"), &e).unwrap();
        expected.add_slot(&label("y"), &e, &Rational::from_int(-1)).unwrap();
        assert_eq!(v, expected);
        assert!(v.slot_sum().is_zero());
        // symmetric in its arguments
        assert_eq!(theta(&lv("y"), &lv("x")).unwrap().value, v);
    }

    #[test]
    fn theta_respects_invariance() {
        let lhs = theta(&lv("x"), &lv("[y,z]")).unwrap().value;
        let rhs = theta(&lv("[x,y]"), &lv("z")).unwrap().value;
        assert_eq!(lhs, rhs);
        assert!(theta_well_defined(&labels("a b c")).unwrap().passed());
    }

    #[test]
    fn lambda_small() {
        let e = CycLieElem::parse("x | y").unwrap();
        assert_eq!(lambda_map(&e).unwrap(), tv("(x y) + (y x)"));
        let e = CycLieElem::parse("x | [y,z]").unwrap();
        let l = lambda_map(&e).unwrap();
        assert!(l.trees().all(|t| t.root_valence() == 1));
        // (x−y)⊗⟨x,y◁z⟩ − (x−z)⊗⟨x,z◁y⟩ pushed through the two-vertex Γ cases
        let by_hand = tv("(x (y z)) - (x (z y)) - (y (x z)) + (y (z x)) + (z (x y)) - (z (y x))");
        assert_eq!(l, by_hand);
    }

    #[test]
    fn theta_rank_at_four() {
        let ls = labels("a b c d");
        let imgs: Vec<_> = cyclie_basis(&ls)
            .iter()
            .map(|e| theta_cyc(e).unwrap().coords())
            .collect();
        assert_eq!(rank_of(&imgs), 2);
        // the image already sits in the sum-zero part
        for e in cyclie_basis(&ls) {
            let v = theta_cyc(&e).unwrap();
            assert_eq!(reflex_project(&v).as_perm(), &v);
        }
    }

    #[test]
    fn theta_ignores_presentation() {
        for e in cyclie_basis(&labels("a b c d")) {
            let v = theta_cyc(&e).unwrap();
            for i in e.labels() {
                let body = crate::lie::cyclie_rotate(&e, &i).unwrap();
                assert_eq!(theta(&LieVector::leaf(i.clone()), &body).unwrap().value, v);
            }
        }
        let e = CycLieElem::parse("x | [y,z]").unwrap();
        let at_y = crate::lie::cyclie_rotate(&e, &label("y")).unwrap();
        assert_eq!(theta(&lv("y"), &at_y).unwrap().value, theta_cyc(&e).unwrap());
    }

    #[test]
    fn standard_composition() {
        let u = tv("(1 2)");
        let v = tv("(1 2)");
        // (1 p) ∘_p (2 3) = (1 (2 3))
        assert_eq!(compose_standard(&u, 2, 2, &v, 2), tv("(1 (2 3))"));
        // (p 3) ∘_p (1 2) = (1 2 3) + (1 (2 3))
        assert_eq!(compose_standard(&u, 2, 1, &v, 2), tv("(1 2 3) + (1 (2 3))"));
    }

    #[test]
    fn small_suboperad() {
        let t = generate_suboperad(3).unwrap();
        let dims: Vec<usize> = t.rows.iter().map(|r| r.dim_m).collect();
        assert_eq!(dims, vec![1, 1, 4]);
        let r = conjecture_report(2).unwrap();
        assert!(r.ok);
        assert!(r.rows.iter().all(|r| r.dim_m == 1 && r.dim_indec == 1 && r.dim_free == 1));
    }

    #[test]
    fn series_identities() {
        let r = series_residuals(10).unwrap();
        assert!(r.all_zero());
    }
}
