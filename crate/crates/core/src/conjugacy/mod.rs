//! Products of conjugacy classes, covering exponents, the conjugacy graph and
//! the cancelation norm.

mod graph;
mod words;

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

pub use graph::{delta_length, delta_length_function, ConjugacyGraph};
pub use words::{
    cancelation_equals_delta, cancelation_norm, eval_word, min_cancelation, reduce_word, CancelationReport,
    CancelationRow, Word, WordProblemInstance, MAX_WORD_LEN,
};

/// `{x * y : x in X, y in Y}`, sorted.
pub fn class_product(group: &FiniteGroup, xs: &[usize], ys: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; group.order()];
    for &x in xs {
        for &y in ys {
            mask[group.mul(x, y)] = true;
        }
    }
    (0..mask.len()).filter(|&i| mask[i]).collect()
}

/// Classes of `P * X` where `P` is a union of classes (given as a class mask)
/// and `X` a conjugation-closed element set. A class `z` lies in the product
/// iff `rep(z) * x^-1` is in `P` for some `x` in `X`.
fn class_mask_product(group: &FiniteGroup, p: &[bool], xs: &[usize]) -> Vec<bool> {
    let data = group.classes();
    let xs_inv: Vec<usize> = xs.iter().map(|&x| group.inv(x)).collect();
    (0..data.count())
        .map(|z| {
            let r = data.representative(z);
            xs_inv.iter().any(|&xi| p[data.class_of(group.mul(r, xi))])
        })
        .collect()
}

fn mask_size(group: &FiniteGroup, mask: &[bool]) -> usize {
    let data = group.classes();
    mask.iter().enumerate().filter(|(_, &m)| m).map(|(c, _)| data.size(c)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringReport {
    pub element: String,
    pub class_size: usize,
    /// Minimal `m` with `(g^G)^m` equal to a full coset of `K`; `None` marks
    /// the infinite case (central elements, or stabilization below the coset).
    pub exponent: Option<usize>,
    /// Order of the normal closure of `g`.
    pub normal_closure_order: usize,
    /// Order of `K`, the normal closure of `g^G * g^-1`.
    pub coset_kernel_order: usize,
    /// `(g^G)^m = G`.
    pub covers_group: bool,
    /// `m * ln|g^G| / ln|G|`, when `m` is finite and `g` is not central.
    pub ls_ratio: Option<f64>,
}

/// Minimal `m` such that `(g^G)^m` fills the coset `g^m K`, where `K` is the
/// normal subgroup generated by `x g^-1` for `x` conjugate to `g`. Every power
/// of the class lies in such a coset, so this is the strongest covering
/// statement available when `g^G` sits in a proper coset (for example a
/// transposition in a symmetric group). For simple groups `K = G`.
pub fn covering_exponent(group: &Arc<FiniteGroup>, g: usize) -> CoveringReport {
    let data = group.classes();
    let class = data.members(data.class_of(g)).to_vec();
    let normal_closure_order = Subgroup::normal_closure(group, &[g]).order();
    let gi = group.inv(g);
    let shifted: Vec<usize> = class.iter().map(|&x| group.mul(x, gi)).collect();
    let k_order = Subgroup::normal_closure(group, &shifted).order();
    let mut report = CoveringReport {
        element: group.format_element(g),
        class_size: class.len(),
        exponent: None,
        normal_closure_order,
        coset_kernel_order: k_order,
        covers_group: false,
        ls_ratio: None,
    };
    if class.len() == 1 {
        return report;
    }
    let mut power = vec![false; data.count()];
    power[data.class_of(g)] = true;
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut m = 1;
    loop {
        let size = mask_size(group, &power);
        if size == k_order {
            report.exponent = Some(m);
            report.covers_group = k_order == group.order();
            report.ls_ratio = Some(m as f64 * (class.len() as f64).ln() / (group.order() as f64).ln());
            return report;
        }
        if !seen.insert(power.clone()) {
            return report;
        }
        power = class_mask_product(group, &power, &class);
        m += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsClassRow {
    pub group: String,
    pub representative: String,
    pub class_size: usize,
    pub exponent: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsConstantReport {
    pub constant: f64,
    pub rows: Vec<LsClassRow>,
}

/// Largest `m * ln|g^H| / ln|H|` over every nontrivial class of every group
/// in the corpus. Each group must be non-abelian simple.
#[allow(non_snake_case)]
pub fn empirical_LS_constant(corpus: &[Arc<FiniteGroup>]) -> Result<LsConstantReport> {
    if corpus.is_empty() {
        return Err(Error::Domain("empty corpus".into()));
    }
    let mut rows = Vec::new();
    for h in corpus {
        if h.is_abelian() {
            return Err(Error::Hypothesis(format!("{} is abelian", h.descriptor())));
        }
        let data = h.classes();
        for c in 0..data.count() {
            let rep = data.representative(c);
            if rep == h.identity() {
                continue;
            }
            if Subgroup::normal_closure(h, &[rep]).order() != h.order() {
                return Err(Error::Hypothesis(format!("{} is not simple", h.descriptor())));
            }
            let report = covering_exponent(h, rep);
            let m = report
                .exponent
                .ok_or_else(|| Error::Hypothesis(format!("class of {} never covers {}", report.element, h.descriptor())))?;
            rows.push(LsClassRow {
                group: h.descriptor().to_string(),
                representative: report.element.clone(),
                class_size: report.class_size,
                exponent: m,
                ratio: report.ls_ratio.expect("non-central"),
            });
        }
    }
    let constant = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(LsConstantReport { constant, rows })
}
