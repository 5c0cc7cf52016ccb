//! Pointwise comparison of aligned families of length functions.

use serde::Serialize;

use super::{blend_correction, LengthFunction, TOL};
use crate::error::{Error, Result};
use crate::group::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// `l1(g) <= c * l2(g)`.
    Linear,
    /// `l1(g)^m <= c * l2(g)` wherever `l1(g) < 1`.
    Polynomial { m: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundViolation {
    pub index: usize,
    pub element: usize,
    pub literal: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub holds: bool,
    pub checked_indices: usize,
    pub checked_elements: usize,
    pub first_violation: Option<BoundViolation>,
}

/// Checks the bound on every element of every index `i >= n0`. The two
/// families must enumerate the same groups in the same order.
pub fn asymptotic_bound_check(
    family1: &[LengthFunction],
    family2: &[LengthFunction],
    c: f64,
    n0: usize,
    mode: BoundMode,
) -> Result<AsymptoticReport> {
    if family1.len() != family2.len() {
        return Err(Error::Misaligned(format!("{} versus {} indices", family1.len(), family2.len())));
    }
    let mut report = AsymptoticReport {
        holds: true,
        checked_indices: 0,
        checked_elements: 0,
        first_violation: None,
    };
    for (i, (l1, l2)) in family1.iter().zip(family2).enumerate().skip(n0) {
        let (g1, g2) = (l1.group(), l2.group());
        if g1.descriptor() != g2.descriptor() || g1.order() != g2.order() {
            return Err(Error::Misaligned(format!(
                "index {i} pairs {} with {}",
                g1.descriptor(),
                g2.descriptor()
            )));
        }
        report.checked_indices += 1;
        for g in g1.elements() {
            let (a, b) = (l1.value(g), l2.value(g));
            let lhs = match mode {
                BoundMode::Linear => a,
                BoundMode::Polynomial { m } => {
                    if a >= 1.0 {
                        continue;
                    }
                    a.powi(m as i32)
                }
            };
            report.checked_elements += 1;
            let rhs = c * b;
            if lhs > rhs + TOL {
                report.holds = false;
                report.first_violation = Some(BoundViolation {
                    index: i,
                    element: g,
                    literal: g1.format_element(g),
                    lhs,
                    rhs,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The three comparison inequalities between `l` and its blend corrections.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub t: u32,
    pub s: u32,
    pub s2: u32,
    /// `l <= (t+1) l^{11t}_H`.
    pub upper: AsymptoticReport,
    /// `l^{11t}_H <= l`.
    pub lower: AsymptoticReport,
    /// `(l^{ss't}_H)^{max(s,s')} <= l`, on every element.
    pub polynomial: AsymptoticReport,
}

impl CompareReport {
    pub fn holds(&self) -> bool {
        self.upper.holds && self.lower.holds && self.polynomial.holds
    }
}

pub fn compare_lemma_check(l: &LengthFunction, h: &Subgroup, t: u32, s: u32, s2: u32) -> Result<CompareReport> {
    let l = l.materialize();
    let simple = blend_correction(&l, h, 1, 1, t)?;
    let general = blend_correction(&l, h, s, s2, t)?;
    let one = std::slice::from_ref;
    let upper = asymptotic_bound_check(one(&l), one(&simple), (t + 1) as f64, 0, BoundMode::Linear)?;
    let lower = asymptotic_bound_check(one(&simple), one(&l), 1.0, 0, BoundMode::Linear)?;
    let m = s.max(s2) as i32;
    let powered = LengthFunction::from_values(
        l.group().clone(),
        general.values().into_iter().map(|v| v.powi(m)).collect(),
        format!("{}^{m}", general.name()),
        true,
        Some(1.0),
    )?;
    let polynomial = asymptotic_bound_check(one(&powered), one(&l), 1.0, 0, BoundMode::Linear)?;
    Ok(CompareReport {
        t,
        s,
        s2,
        upper,
        lower,
        polynomial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;
    use crate::norms::{hamming, lc};

    #[test]
    fn compare_on_s4() {
        let s4 = construct_group("S:4").unwrap();
        let a4 = Subgroup::even_permutations(&s4).unwrap();
        for l in [lc(&s4).unwrap(), hamming(&s4).unwrap()] {
            for t in 1..=3 {
                let r = compare_lemma_check(&l, &a4, t, 2, 3).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
    }

    #[test]
    fn violations_are_located() {
        let s3 = construct_group("S:3").unwrap();
        let l = lc(&s3).unwrap();
        let half = LengthFunction::from_values(s3.clone(), l.values().iter().map(|v| v / 2.0).collect(), "half", true, None)
            .unwrap();
        let r = asymptotic_bound_check(&[l.clone()], &[half.clone()], 1.0, 0, BoundMode::Linear).unwrap();
        assert!(!r.holds);
        assert!(r.first_violation.unwrap().lhs > 0.0);
        assert!(asymptotic_bound_check(&[l.clone()], &[half.clone()], 2.0, 0, BoundMode::Linear).unwrap().holds);
        assert!(asymptotic_bound_check(&[l.clone()], &[], 2.0, 0, BoundMode::Linear).is_err());
        let s4 = lc(&construct_group("S:4").unwrap()).unwrap();
        assert!(asymptotic_bound_check(&[l], &[s4], 2.0, 0, BoundMode::Linear).is_err());
    }
}
