use std::collections::BTreeMap;

use ainfty_check::{check_hopf_an, RelationReport, Status, SuiteReport};
use coeff_chain::linalg::{kernel, rref, SparseRow};
use coeff_chain::{BigRational, Chain, Coeff, Ring};
use graded_hopf::{GradedBialgebra, HomComponent, Mono, Word};
use rayon::prelude::*;

use crate::symbolic::equation_string;
use crate::{gs_terms, symbolic_total_d, total_d, GsCochain, GsError, GsTerm, Tridegree};

/// Check `D(c) = 0` for a total 2-cochain whose components lie in the
/// region `p >= 2 - n`. One report item per target tridegree, labelled with
/// its equation.
pub fn is_2cocycle(h: &GradedBialgebra, c: &GsCochain, n: usize) -> Result<SuiteReport, GsError> {
    let bound = 2 - n as i64;
    for (t, f) in c.iter() {
        if t.total() != 2 {
            return Err(GsError::TotalDegree {
                name: f.name.clone(),
                tridegree: *t,
                found: t.total(),
                expected: 2,
            });
        }
        if t.p < bound {
            return Err(GsError::OutsideRegion {
                name: f.name.clone(),
                tridegree: *t,
                bound,
            });
        }
    }
    let names: Vec<(String, Tridegree)> = c.iter().map(|(t, f)| (f.name.clone(), *t)).collect();
    let equations = symbolic_total_d(&names);
    let image = total_d(h, &c.to_lazy())?;
    let mut items = Vec::new();
    for (t, terms) in &equations {
        let label = format!("{t}: {}", equation_string(terms));
        let item = match image.get(t) {
            Some(op) => RelationReport::from_check(&label, None, &graded_hopf::check_vanishes(op, h)?, Vec::new()),
            None => RelationReport {
                relation: label,
                k: None,
                window: h.d_max(),
                words_checked: 0,
                status: Status::Pass,
                witness: None,
                missing: Vec::new(),
            },
        };
        items.push(item);
    }
    Ok(SuiteReport::new("2-cocycle", items))
}

/// Windowed solution space of `D(f) = 0` for `f` at tridegree `(2-n, n, 1)`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub n: usize,
    pub window: i64,
    /// The entries `f(w) = c·m` left free, in column order.
    pub unknowns: Vec<(Word, Word)>,
    pub equations: usize,
    pub rank: usize,
    pub basis: Vec<HomComponent>,
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coordinates(&self, f: &HomComponent) -> SparseRow {
        let mut row = SparseRow::new();
        for (k, (w, m)) in self.unknowns.iter().enumerate() {
            if let Some(v) = f.get(w) {
                let c = v.coeff(m);
                if !c.is_zero() {
                    row.insert(k, Ring::Q.normalize(c));
                }
            }
        }
        row
    }

    /// Whether `f`, restricted to the window, lies in the span of the basis.
    pub fn contains(&self, f: &HomComponent) -> Result<bool, GsError> {
        let rows: Vec<SparseRow> = self.basis.iter().map(|b| self.coordinates(b)).collect();
        let r0 = rref(&Ring::Q, rows.clone())?.len();
        let mut with = rows;
        with.push(self.coordinates(f));
        Ok(rref(&Ring::Q, with)?.len() == r0)
    }
}

/// Solve `D(f) = 0` over ℚ for `f: H^{⊗n} → H` of degree `2 - n`, with
/// unknowns on every source word of degree at most `window` and equations
/// on every input word whose evaluation stays inside the cutoff.
pub fn find_cocycles(h: &GradedBialgebra, n: usize, window: i64) -> Result<CocycleSpace, GsError> {
    if n < 3 {
        return Err(GsError::SmallN(n));
    }
    if window > h.d_max() {
        return Err(graded_hopf::HopfError::OutOfWindow {
            degree: window,
            window: h.d_max(),
        }
        .into());
    }
    let hq = h.clone().with_ring(Ring::Q);
    let p = 2 - n as i64;
    let target_of: BTreeMap<i64, Mono> = hq.basis().into_iter().map(|m| (m.deg(), m)).collect();
    let unknowns: Vec<(Word, Word)> = hq
        .words(n, window)
        .into_iter()
        .filter_map(|w| target_of.get(&(w.deg() + p)).map(|m| (w, Word::single(*m))))
        .collect();
    if unknowns.is_empty() {
        return Err(GsError::WindowTooSmall {
            window,
            reason: format!("no words of arity {n} reach a target"),
        });
    }
    let mut by_source: BTreeMap<&Word, Vec<(usize, &Word)>> = BTreeMap::new();
    for (k, (w, m)) in unknowns.iter().enumerate() {
        by_source.entry(w).or_default().push((k, m));
    }
    let t = Tridegree::new(p, n, 1);
    let placeholder = HomComponent::new("f", n, 1, p, Ring::Q).to_op();
    let terms = gs_terms(&hq, t)?;
    let mut groups: BTreeMap<Tridegree, Vec<&GsTerm>> = BTreeMap::new();
    for term in &terms {
        groups.entry(term.target(t)).or_default().push(term);
    }
    let mut row_index: BTreeMap<(Tridegree, Word, Word), usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (target, group) in &groups {
        let mut lift = 0;
        for term in group {
            lift = lift.max(term.apply_to(&placeholder)?.max_lift());
        }
        let eq_window = window.min(hq.d_max() - lift);
        let inputs = hq.words(target.i, eq_window);
        let entries: Vec<Vec<(Word, usize, Coeff)>> = inputs
            .par_iter()
            .map(|u| linear_entries(&hq, group, n, p, &by_source, u))
            .collect::<Result<_, _>>()?;
        for (u, es) in inputs.into_iter().zip(entries) {
            for (v, k, c) in es {
                let r = *row_index.entry((*target, u.clone(), v)).or_insert_with(|| {
                    rows.push(SparseRow::new());
                    rows.len() - 1
                });
                let cell = rows[r].entry(k).or_insert_with(|| Ring::Q.zero());
                *cell = Ring::Q.add(cell, &c);
            }
        }
    }
    for row in &mut rows {
        row.retain(|_, c| !c.is_zero());
    }
    rows.retain(|r| !r.is_empty());
    let equations = rows.len();
    let ncols = unknowns.len();
    let rank = rref(&Ring::Q, rows.clone())?.len();
    let basis = kernel(&Ring::Q, rows, ncols)?
        .into_iter()
        .enumerate()
        .map(|(b, v)| {
            let mut f = HomComponent::new(format!("μ_1^{n}#{b}"), n, 1, p, Ring::Q);
            for (k, c) in v {
                let (w, m) = &unknowns[k];
                f.insert(w.clone(), Chain::from_terms(Ring::Q, [(m.clone(), c)]))?;
            }
            Ok(f)
        })
        .collect::<Result<_, GsError>>()?;
    Ok(CocycleSpace {
        n,
        window,
        unknowns,
        equations,
        rank,
        basis,
    })
}

/// Contributions `(output word, unknown, coefficient)` of every unknown to
/// `D(f)(u)`, read off term by term: `pre(u)` is split around the slot of
/// `f`, and only unknowns whose source word fills the slot contribute.
fn linear_entries(
    h: &GradedBialgebra,
    group: &[&GsTerm],
    n: usize,
    p: i64,
    by_source: &BTreeMap<&Word, Vec<(usize, &Word)>>,
    u: &Word,
) -> Result<Vec<(Word, usize, Coeff)>, GsError> {
    let ring = h.ring();
    let mut out = Vec::new();
    for term in group {
        for (v, c) in term.pre.eval_word(h, u)?.iter() {
            let mid = Word(v.0[term.left..term.left + n].to_vec());
            let Some(hits) = by_source.get(&mid) else {
                continue;
            };
            let left = Word(v.0[..term.left].to_vec());
            let right = Word(v.0[term.left + n..].to_vec());
            let koszul = if (p * left.deg()).rem_euclid(2) == 0 { 1 } else { -1 };
            let scale = ring.mul(c, &ring.from_int(term.coeff * koszul));
            for &(k, m) in hits {
                let filled = left.concat(m).concat(&right);
                for (o, c2) in term.post.eval_word(h, &filled)?.iter() {
                    out.push((o.clone(), k, ring.mul(&scale, c2)));
                }
            }
        }
    }
    Ok(out)
}

/// `(H[t], d, μ, Δ, t·μ_1^n)`.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub h_t: GradedBialgebra,
    pub n: usize,
    pub mu_t: HomComponent,
    /// Present when the deformation was built with checking on.
    pub report: Option<SuiteReport>,
}

impl Deformation {
    /// Run the Hopf A(n) verifier on the deformed structure.
    pub fn verify(&self) -> Result<SuiteReport, GsError> {
        Ok(check_hopf_an(&self.h_t, &self.mu_t.to_op(), self.n)?)
    }

    /// Specialize `t` to a constant, giving a table over the base ring.
    pub fn at_t(&self, value: &BigRational) -> Result<HomComponent, GsError> {
        let ring = self.h_t.ring();
        let base = ring.base().clone();
        let (_, i, j) = self.mu_t.tridegree();
        let mut out = HomComponent::new(self.mu_t.name.clone(), i, j, self.mu_t.degree(), base.clone());
        for (w, v) in self.mu_t.entries() {
            let terms = v.iter().map(|(u, c)| (u.clone(), ring.eval_t(c, value)));
            out.insert(w.clone(), Chain::from_terms(base.clone(), terms))?;
        }
        Ok(out)
    }
}

/// The linear deformation with `μ^n := t·μ_1^n` over `base[t]`, where the
/// base is ℚ for integral inputs.
pub fn build_deformation(h: &GradedBialgebra, mu1: &HomComponent, n: usize, check: bool) -> Result<Deformation, GsError> {
    let expected = Tridegree::new(2 - n as i64, n, 1);
    let (p, i, j) = mu1.tridegree();
    let found = Tridegree::new(p, i, j);
    if found != expected {
        return Err(GsError::WrongTridegree { expected, found });
    }
    if check {
        let report = is_2cocycle(h, &GsCochain::new().with(mu1.clone())?, n)?;
        if let Some(bad) = report.items.iter().find(|r| !r.passed()) {
            return Err(GsError::NotCocycle(bad.to_string()));
        }
    }
    let base = match h.ring() {
        Ring::Z | Ring::Q => Ring::Q,
        other => other.base().clone(),
    };
    let ring_t = Ring::poly_t(base);
    let t = ring_t.t().expect("polynomial ring has t");
    let h_t = h.clone().with_ring(ring_t.clone());
    let mu_t = mu1.change_ring(ring_t).scale(&t).with_name(format!("μ^{n}"));
    let mut d = Deformation {
        h_t,
        n,
        mu_t,
        report: None,
    };
    if check {
        let report = d.verify()?;
        if !report.passed() {
            let bad = report.items.iter().find(|r| !r.passed()).map(|r| r.to_string()).unwrap_or_default();
            return Err(GsError::DeformationFailed(bad));
        }
        d.report = Some(report);
    }
    Ok(d)
}
