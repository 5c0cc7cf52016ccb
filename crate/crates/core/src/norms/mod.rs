//! Length functions on finite groups, the correction operators that build new
//! ones from old, and verification of the pseudo-length axioms.

mod axioms;
mod compare;
mod ops;
mod spec;

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{FiniteField, Matrix};

pub use axioms::{verify_axioms, verify_axioms_with, AxiomCheck, AxiomReport, VerifyOptions, Violation};
pub use compare::{asymptotic_bound_check, compare_lemma_check, AsymptoticReport, BoundMode, BoundViolation, CompareReport};
pub use ops::{blend_correction, lift_length, normalize_bounded, quotient_length, restrict_length, star_correction};
pub use spec::{NormSpec, SubgroupSpec};

/// Comparison tolerance for floating-point norm values.
pub const TOL: f64 = 1e-12;

#[derive(Clone)]
enum Values {
    Table(Arc<[f64]>),
    Pointwise(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

/// A total map from group elements (by index) to nonnegative reals, with the
/// claims the constructor makes about it. Claims are checked by
/// [`verify_axioms`], never trusted.
#[derive(Clone)]
pub struct LengthFunction {
    group: Arc<FiniteGroup>,
    values: Values,
    claimed_invariant: bool,
    claimed_bound: Option<f64>,
    name: String,
}

impl fmt::Debug for LengthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LengthFunction({} on {})", self.name, self.group.descriptor())
    }
}

impl LengthFunction {
    pub fn from_values(
        group: Arc<FiniteGroup>,
        values: Vec<f64>,
        name: impl Into<String>,
        claimed_invariant: bool,
        claimed_bound: Option<f64>,
    ) -> Result<LengthFunction> {
        if values.len() != group.order() {
            return Err(Error::Misaligned(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain(format!("value {} at element {bad} is not a nonnegative real", values[bad])));
        }
        Ok(LengthFunction {
            group,
            values: Values::Table(values.into()),
            claimed_invariant,
            claimed_bound,
            name: name.into(),
        })
    }

    /// A length function evaluated on demand; used for groups too large to
    /// tabulate (symmetric groups of high degree).
    pub fn pointwise(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        claimed_invariant: bool,
        claimed_bound: Option<f64>,
        f: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> LengthFunction {
        LengthFunction {
            group,
            values: Values::Pointwise(Arc::new(f)),
            claimed_invariant,
            claimed_bound,
            name: name.into(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> LengthFunction {
        self.name = name.into();
        self
    }

    pub fn claimed_invariant(&self) -> bool {
        self.claimed_invariant
    }

    pub fn claimed_bound(&self) -> Option<f64> {
        self.claimed_bound
    }

    #[inline]
    pub fn value(&self, g: usize) -> f64 {
        match &self.values {
            Values::Table(t) => t[g],
            Values::Pointwise(f) => f(g),
        }
    }

    /// Every value, in element order.
    pub fn values(&self) -> Vec<f64> {
        match &self.values {
            Values::Table(t) => t.to_vec(),
            Values::Pointwise(f) => self.group.elements().map(|g| f(g)).collect(),
        }
    }

    /// A tabulated copy.
    pub fn materialize(&self) -> LengthFunction {
        match &self.values {
            Values::Table(_) => self.clone(),
            Values::Pointwise(_) => LengthFunction {
                values: Values::Table(self.values().into()),
                ..self.clone()
            },
        }
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.values, Values::Table(_))
    }

    /// Maximum value over the whole group.
    pub fn sup(&self) -> f64 {
        match &self.values {
            Values::Table(t) => t.iter().copied().fold(0.0, f64::max),
            Values::Pointwise(f) => self.group.elements().map(|g| f(g)).fold(0.0, f64::max),
        }
    }
}

/// Fraction of points moved, as an exact rational.
pub fn hamming_exact(group: &FiniteGroup, g: usize) -> Result<Ratio<u64>> {
    let n = group
        .perm_degree()
        .ok_or_else(|| Error::Incompatible(format!("Hamming length needs a permutation group, got {}", group.descriptor())))?;
    let p = group.perm(g).expect("permutation group");
    Ok(Ratio::new(p.support_size() as u64, n as u64))
}

pub fn hamming_length(group: &FiniteGroup, g: usize) -> Result<f64> {
    let r = hamming_exact(group, g)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}

/// Hamming length on a permutation group.
pub fn hamming(group: &Arc<FiniteGroup>) -> Result<LengthFunction> {
    hamming_length(group, group.identity())?;
    let g = group.clone();
    Ok(LengthFunction::pointwise(group.clone(), "hamming", true, Some(1.0), move |x| {
        hamming_length(&g, x).expect("permutation group")
    }))
}

/// `ln |g^G| / ln |G|`. The trivial group is a domain error.
pub fn conjugacy_length(group: &FiniteGroup, g: usize) -> Result<f64> {
    if group.order() < 2 {
        return Err(Error::Domain(format!("conjugacy length is undefined on the trivial group {}", group.descriptor())));
    }
    Ok((group.class_size(g) as f64).ln() / (group.order() as f64).ln())
}

/// Conjugacy length. Tabulated for groups with explicit class data, on demand
/// for symmetric and alternating groups.
pub fn lc(group: &Arc<FiniteGroup>) -> Result<LengthFunction> {
    conjugacy_length(group, group.identity())?;
    if group.perm_degree().is_some() && group.subgroup_parts().is_none() {
        let g = group.clone();
        return Ok(LengthFunction::pointwise(group.clone(), "lc", true, Some(1.0), move |x| {
            conjugacy_length(&g, x).expect("nontrivial group")
        }));
    }
    let values = group
        .elements()
        .map(|x| conjugacy_length(group, x))
        .collect::<Result<Vec<_>>>()?;
    LengthFunction::from_values(group.clone(), values, "lc", true, Some(1.0))
}

/// `min_{a != 0} rank(aI - m)` divided by `n`, exactly.
pub fn jordan_exact(field: &FiniteField, m: &Matrix) -> Ratio<u64> {
    let min = field.rank_shifted(m).into_iter().map(|(_, r)| r).min().unwrap_or(0);
    Ratio::new(min as u64, m.dim() as u64)
}

pub fn jordan_length(field: &FiniteField, m: &Matrix) -> f64 {
    let r = jordan_exact(field, m);
    *r.numer() as f64 / *r.denom() as f64
}

/// Jordan length on a matrix group (projective groups use the canonical
/// representative; the value does not depend on the scalar).
pub fn jordan(group: &Arc<FiniteGroup>) -> Result<LengthFunction> {
    let field = group
        .field()
        .ok_or_else(|| Error::Incompatible(format!("Jordan length needs a matrix group, got {}", group.descriptor())))?;
    let values = group
        .elements()
        .map(|x| jordan_length(field, group.matrix(x).expect("matrix group")))
        .collect();
    LengthFunction::from_values(group.clone(), values, "jordan", true, Some(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;

    #[test]
    fn hamming_examples() {
        let s5 = construct_group("S:5").unwrap();
        let t = s5.parse_element("(0 1)").unwrap();
        assert_eq!(hamming_exact(&s5, t).unwrap(), Ratio::new(2, 5));
        assert_eq!(hamming_length(&s5, s5.identity()).unwrap(), 0.0);
        let c = s5.parse_element("(0 1 2 3 4)").unwrap();
        assert_eq!(hamming_length(&s5, c).unwrap(), 1.0);
        let gl = construct_group("GL:2:2").unwrap();
        assert!(hamming(&gl).is_err());
    }

    #[test]
    fn conjugacy_length_examples() {
        let s3 = construct_group("S:3").unwrap();
        let t = s3.parse_element("(0 1)").unwrap();
        // class of size 3 found by brute-force conjugation
        let class: std::collections::BTreeSet<usize> = s3.elements().map(|h| s3.conjugate(t, h)).collect();
        assert_eq!(class.len(), 3);
        let expected = 3f64.ln() / 6f64.ln();
        assert!((conjugacy_length(&s3, t).unwrap() - expected).abs() < TOL);
        assert!((expected - 0.6131).abs() < 1e-4);
        assert_eq!(conjugacy_length(&s3, s3.identity()).unwrap(), 0.0);
        let s1 = construct_group("S:1").unwrap();
        assert!(matches!(conjugacy_length(&s1, 0), Err(Error::Domain(_))));
        assert!(lc(&s1).is_err());
    }

    #[test]
    fn jordan_examples() {
        let f = FiniteField::new(5).unwrap();
        for n in 2..=4 {
            let mut d = vec![1; n];
            d[n - 1] = 3;
            assert_eq!(jordan_exact(&f, &Matrix::diagonal(&d)), Ratio::new(1, n as u64));
            assert_eq!(jordan_exact(&f, &Matrix::scalar(n, 2)), Ratio::new(0, 1));
        }
        let f2 = FiniteField::new(2).unwrap();
        let block = Matrix::from_entries(3, vec![1, 1, 0, 0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(jordan_exact(&f2, &block), Ratio::new(2, 3));
    }
}
