//! Classical groups over finite fields by exhaustive enumeration.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Fe, FiniteField};
use super::forms::{FormKind, SesquilinearForm};
use super::mat::Matrix;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Families accepted in `FAMILY:n:q` descriptors.
///
/// `OPlus`/`OMinus` are the orthogonal groups whose orders the product
/// formulas count: determinant one for odd `q`, the kernel of the Dickson
/// invariant for even `q`. `GOPlus`/`GOMinus` are the full isometry groups
/// and `OmegaPlus`/`OmegaMinus` their derived subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalFamily {
    GL,
    SL,
    PGL,
    PSL,
    Sp,
    U,
    SU,
    OPlus,
    OMinus,
    GOPlus,
    GOMinus,
    OmegaPlus,
    OmegaMinus,
}

const NAMES: &[(&str, ClassicalFamily)] = &[
    ("GL", ClassicalFamily::GL),
    ("SL", ClassicalFamily::SL),
    ("PGL", ClassicalFamily::PGL),
    ("PSL", ClassicalFamily::PSL),
    ("Sp", ClassicalFamily::Sp),
    ("U", ClassicalFamily::U),
    ("SU", ClassicalFamily::SU),
    ("Oplus", ClassicalFamily::OPlus),
    ("Ominus", ClassicalFamily::OMinus),
    ("GOplus", ClassicalFamily::GOPlus),
    ("GOminus", ClassicalFamily::GOMinus),
    ("Omegaplus", ClassicalFamily::OmegaPlus),
    ("Omegaminus", ClassicalFamily::OmegaMinus),
];

impl FromStr for ClassicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|&(_, f)| f)
            .ok_or_else(|| Error::Domain(format!("unknown classical family {s:?}")))
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = NAMES.iter().find(|(_, fam)| fam == self).map(|(n, _)| *n).expect("every family named");
        f.write_str(name)
    }
}

impl ClassicalFamily {
    fn is_unitary(self) -> bool {
        matches!(self, ClassicalFamily::U | ClassicalFamily::SU)
    }

    fn orthogonal_sign(self) -> Option<bool> {
        use ClassicalFamily::*;
        match self {
            OPlus | GOPlus | OmegaPlus => Some(true),
            OMinus | GOMinus | OmegaMinus => Some(false),
            _ => None,
        }
    }
}

/// A family with its dimension, field parameter and standard form. For the
/// unitary families `q` names the fixed field: matrices live over `F_{q^2}`.
#[derive(Debug, Clone)]
pub struct ClassicalGroupSpec {
    pub family: ClassicalFamily,
    pub n: usize,
    pub q: u32,
    pub field: Arc<FiniteField>,
    pub form: SesquilinearForm,
}

impl ClassicalGroupSpec {
    pub fn new(family: ClassicalFamily, n: usize, q: u32) -> Result<ClassicalGroupSpec> {
        if n == 0 {
            return Err(Error::Incompatible("dimension must be positive".into()));
        }
        let field_size = if family.is_unitary() {
            q.checked_mul(q).filter(|&s| s <= 256).ok_or_else(|| {
                Error::Incompatible(format!("unitary groups need q^2 <= 256, got q = {q}"))
            })?
        } else {
            q
        };
        let field = Arc::new(FiniteField::new(field_size)?);
        let form = match family {
            ClassicalFamily::GL | ClassicalFamily::SL | ClassicalFamily::PGL | ClassicalFamily::PSL => {
                SesquilinearForm::zero(n)
            }
            ClassicalFamily::Sp => SesquilinearForm::symplectic(&field, n)?,
            ClassicalFamily::U | ClassicalFamily::SU => SesquilinearForm::hermitian(&field, n)?,
            _ => {
                let plus = family.orthogonal_sign().expect("orthogonal family");
                if field.characteristic() == 2 {
                    SesquilinearForm::quadratic_char2(&field, n, plus)?
                } else {
                    SesquilinearForm::symmetric(&field, n, plus)?
                }
            }
        };
        Ok(ClassicalGroupSpec {
            family,
            n,
            q,
            field,
            form,
        })
    }

    pub fn descriptor(&self) -> String {
        format!("{}:{}:{}", self.family, self.n, self.q)
    }
}

fn checked_product(factors: impl IntoIterator<Item = Option<u128>>) -> Result<u128> {
    factors
        .into_iter()
        .try_fold(1u128, |acc, f| f.and_then(|f| acc.checked_mul(f)))
        .ok_or_else(|| Error::Domain("group order overflows u128".into()))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Closed-form group orders.
///
/// Unitary: `prod_{i=1..n} (q^i - (-1)^i) q^{i-1}`. Orthogonal, odd `n = 2m+1`:
/// `prod_{k=1..m} (q^{2k} - 1) q^{2k-1}`. Even `n = 2m`, odd `q`:
/// `(q^{2m-1} - e q^{m-1}) prod_{k<m} (q^{2k} - 1) q^{2k-1}`. Even `n = 2m`,
/// even `q`: `(q^m - e) prod_{k<m} (q^{2k} - 1) q^{2k}`. Full isometry groups
/// are twice these. Derived orthogonal subgroups have no formula here.
pub fn order_formula(family: ClassicalFamily, n: usize, q: u32) -> Result<u128> {
    use ClassicalFamily::*;
    let q = q as u128;
    let pw = |e: usize| q.checked_pow(e as u32);
    let unsupported = |why: &str| Err(Error::Incompatible(format!("no order formula for {family}:{n}:{q}: {why}")));
    if n == 0 {
        return unsupported("dimension 0");
    }
    let gl = checked_product((0..n).map(|i| Some(pw(n)? - pw(i)?)));
    match family {
        GL => gl,
        SL | PGL => Ok(gl? / (q - 1)),
        PSL => Ok(gl? / (q - 1) / gcd(n as u128, q - 1)),
        Sp => {
            if n % 2 != 0 {
                return unsupported("odd dimension");
            }
            let m = n / 2;
            checked_product(std::iter::once(pw(m * m)).chain((1..=m).map(|i| Some(pw(2 * i)? - 1))))
        }
        U | SU => {
            let u = checked_product((1..=n).map(|i| {
                let a = pw(i)?;
                let a = if i % 2 == 0 { a - 1 } else { a + 1 };
                a.checked_mul(pw(i - 1)?)
            }))?;
            Ok(if family == SU { u / (q + 1) } else { u })
        }
        OPlus | OMinus | GOPlus | GOMinus => {
            let plus = family.orthogonal_sign().expect("orthogonal");
            let base = if n % 2 == 1 {
                if !plus {
                    return unsupported("odd dimension has no minus type");
                }
                if q % 2 == 0 {
                    return unsupported("odd dimension in characteristic 2");
                }
                let m = n / 2;
                checked_product((1..=m).map(|k| (pw(2 * k)? - 1).checked_mul(pw(2 * k - 1)?)))?
            } else {
                let m = n / 2;
                let (lead, tail_exp): (Option<u128>, fn(usize) -> usize) = if q % 2 == 1 {
                    let lead = if plus {
                        pw(2 * m - 1).and_then(|a| Some(a - pw(m - 1)?))
                    } else {
                        pw(2 * m - 1).and_then(|a| a.checked_add(pw(m - 1)?))
                    };
                    (lead, |k| 2 * k - 1)
                } else {
                    let lead = if plus { pw(m).map(|a| a - 1) } else { pw(m).and_then(|a| a.checked_add(1)) };
                    (lead, |k| 2 * k)
                };
                checked_product(
                    std::iter::once(lead).chain((1..m).map(|k| (pw(2 * k)? - 1).checked_mul(pw(tail_exp(k))?))),
                )?
            };
            if matches!(family, GOPlus | GOMinus) {
                base.checked_mul(2).ok_or_else(|| Error::Domain("group order overflows u128".into()))
            } else {
                Ok(base)
            }
        }
        OmegaPlus | OmegaMinus => unsupported("derived subgroups are computed, not counted"),
    }
}

/// `diag(1, .., 1, target)`, which preserves the standard hermitian form
/// exactly when `target` has norm one (equivalently `target = g^J g^-1`).
pub fn unitary_determinant_twist(n: usize, field: &FiniteField, target: Fe) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if target as u32 >= field.q() || target == 0 || field.norm(target)? != 1 {
        return Err(Error::Domain(format!("{target} is not a norm-one element of F_{}", field.q())));
    }
    let mut diag = vec![1; n];
    diag[n - 1] = target;
    Ok(Matrix::diagonal(&diag))
}

fn all_vectors(field: &FiniteField, n: usize) -> Vec<Vec<Fe>> {
    let q = field.q() as usize;
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = (code % q) as Fe;
                code /= q;
            }
            v
        })
        .collect()
}

/// All invertible matrices by rows, keeping those accepted by `keep`. With
/// `projective` only rows whose first row has leading entry 1 are produced.
fn enumerate_linear(field: &FiniteField, n: usize, projective: bool, keep: impl Fn(&Matrix) -> bool + Sync) -> Vec<Matrix> {
    let vecs = all_vectors(field, n);
    let q = field.q() as usize;
    let encode = |v: &[Fe]| v.iter().fold(0usize, |acc, &x| acc * q + x as usize);

    fn extend(
        field: &FiniteField,
        vecs: &[Vec<Fe>],
        encode: &dyn Fn(&[Fe]) -> usize,
        rows: &mut Vec<usize>,
        span: &[bool],
        keep: &(dyn Fn(&Matrix) -> bool + Sync),
        out: &mut Vec<Matrix>,
    ) {
        let n = vecs[0].len();
        if rows.len() == n {
            let m = Matrix::from_rows(&rows.iter().map(|&r| vecs[r].clone()).collect::<Vec<_>>());
            if keep(&m) {
                out.push(m);
            }
            return;
        }
        let last = rows.len() + 1 == n;
        for (idx, v) in vecs.iter().enumerate() {
            if span[idx] {
                continue;
            }
            rows.push(idx);
            if last {
                extend(field, vecs, encode, rows, span, keep, out);
            } else {
                let mut next = span.to_vec();
                for (s, &inside) in span.iter().enumerate() {
                    if !inside {
                        continue;
                    }
                    for a in field.nonzero() {
                        let w: Vec<Fe> = vecs[s].iter().zip(v).map(|(&x, &y)| field.add(x, field.mul(a, y))).collect();
                        next[encode(&w)] = true;
                    }
                }
                extend(field, vecs, encode, rows, &next, keep, out);
            }
            rows.pop();
        }
    }

    let mut zero_span = vec![false; vecs.len()];
    zero_span[0] = true;
    let firsts: Vec<usize> = (1..vecs.len())
        .filter(|&i| !projective || vecs[i].iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let chunks: Vec<Vec<Matrix>> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut rows = vec![first];
            if n == 1 {
                let m = Matrix::from_rows(&[vecs[first].clone()]);
                if keep(&m) {
                    out.push(m);
                }
                return out;
            }
            let mut span = zero_span.clone();
            for a in field.elements() {
                let w: Vec<Fe> = vecs[first].iter().map(|&y| field.mul(a, y)).collect();
                span[encode(&w)] = true;
            }
            extend(field, &vecs, &encode, &mut rows, &span, &keep, &mut out);
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// All matrices whose columns have the form's Gram and quadratic values,
/// keeping those accepted by `keep`.
fn enumerate_isometries(field: &FiniteField, form: &SesquilinearForm, keep: impl Fn(&Matrix) -> bool + Sync) -> Result<Vec<Matrix>> {
    let n = form.dim();
    let vecs = all_vectors(field, n);
    let conj: Vec<Vec<Fe>> = if form.kind == FormKind::Hermitian {
        vecs.iter().map(|v| v.iter().map(|&x| field.conj(x)).collect::<Result<_>>()).collect::<Result<_>>()?
    } else {
        vecs.clone()
    };
    // left[w] = w^T G, so f(w, v) = left[w] . conj[v]
    let left: Vec<Vec<Fe>> = vecs
        .iter()
        .map(|w| {
            (0..n)
                .map(|k| (0..n).fold(0, |acc, i| field.add(acc, field.mul(w[i], form.gram.get(i, k)))))
                .collect()
        })
        .collect();
    let pair = |a: usize, b: usize| -> Fe {
        left[a].iter().zip(&conj[b]).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
    };
    let qvals: Option<Vec<Fe>> = form
        .quadratic_values
        .as_ref()
        .map(|_| vecs.iter().map(|v| form.quadratic(field, v).expect("quadratic form")).collect());
    let fits_column = |j: usize, v: usize, cols: &[usize]| -> bool {
        if pair(v, v) != form.gram.get(j, j) {
            return false;
        }
        if let (Some(qv), Some(target)) = (&qvals, &form.quadratic_values) {
            if qv[v] != target[j] {
                return false;
            }
        }
        cols.iter().enumerate().all(|(i, &c)| pair(c, v) == form.gram.get(i, j) && pair(v, c) == form.gram.get(j, i))
    };

    fn extend(
        n: usize,
        vecs: &[Vec<Fe>],
        cols: &mut Vec<usize>,
        fits: &(dyn Fn(usize, usize, &[usize]) -> bool + Sync),
        keep: &(dyn Fn(&Matrix) -> bool + Sync),
        out: &mut Vec<Matrix>,
    ) {
        let j = cols.len();
        if j == n {
            let m = Matrix::from_columns(&cols.iter().map(|&c| vecs[c].clone()).collect::<Vec<_>>());
            if keep(&m) {
                out.push(m);
            }
            return;
        }
        for v in 1..vecs.len() {
            if fits(j, v, cols) {
                cols.push(v);
                extend(n, vecs, cols, fits, keep, out);
                cols.pop();
            }
        }
    }

    let firsts: Vec<usize> = (1..vecs.len()).filter(|&v| fits_column(0, v, &[])).collect();
    let chunks: Vec<Vec<Matrix>> = firsts
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut cols = vec![first];
            extend(n, &vecs, &mut cols, &fits_column, &keep, &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Enumerates the group named by `spec`. Fails with a capacity error when the
/// (formula) order exceeds `cap`.
pub fn construct_classical_group(spec: &ClassicalGroupSpec, cap: usize) -> Result<Arc<FiniteGroup>> {
    use ClassicalFamily::*;
    let family = spec.family;
    let bound_family = match family {
        OmegaPlus => GOPlus,
        OmegaMinus => GOMinus,
        f => f,
    };
    let bound = order_formula(bound_family, spec.n, spec.q)?;
    if bound > cap as u128 {
        return Err(Error::Capacity { order: bound, cap });
    }
    let field = &spec.field;
    let n = spec.n;
    let odd_q = field.characteristic() != 2;
    let elems = match family {
        GL => enumerate_linear(field, n, false, |_| true),
        SL => enumerate_linear(field, n, false, |m| field.det(m) == 1),
        PGL => enumerate_linear(field, n, true, |_| true),
        PSL => enumerate_linear(field, n, true, |m| field.is_nth_power(field.det(m), n as u32)),
        Sp | U | GOPlus | GOMinus => enumerate_isometries(field, &spec.form, |_| true)?,
        SU => enumerate_isometries(field, &spec.form, |m| field.det(m) == 1)?,
        OPlus | OMinus if odd_q => enumerate_isometries(field, &spec.form, |m| field.det(m) == 1)?,
        OPlus | OMinus => enumerate_isometries(field, &spec.form, |m| {
            // Dickson invariant: rank(g - 1) mod 2
            field.rank(&field.mat_sub(m, &Matrix::identity(n))) % 2 == 0
        })?,
        OmegaPlus | OmegaMinus => {
            let full = ClassicalGroupSpec {
                family: bound_family,
                ..spec.clone()
            };
            let g = construct_classical_group(&full, cap)?;
            let derived = Subgroup::derived(&g);
            derived.members().iter().map(|&x| g.matrix(x).expect("matrix").clone()).collect()
        }
    };
    FiniteGroup::from_matrices(spec.descriptor(), field.clone(), n, matches!(family, PGL | PSL), elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(desc: &str) -> Arc<FiniteGroup> {
        crate::group::construct_group(desc).unwrap()
    }

    #[test]
    fn small_formula_values() {
        use ClassicalFamily::*;
        assert_eq!(order_formula(U, 2, 2).unwrap(), 18);
        assert_eq!(order_formula(OPlus, 3, 3).unwrap(), 24);
        for q in [2, 3, 4, 5] {
            assert_eq!(order_formula(U, 1, q).unwrap(), q as u128 + 1);
        }
        assert_eq!(order_formula(GL, 2, 2).unwrap(), 6);
        assert_eq!(order_formula(PSL, 2, 7).unwrap(), 168);
        assert!(order_formula(OMinus, 3, 3).is_err());
        assert!(order_formula(OPlus, 3, 2).is_err());
    }

    #[test]
    fn enumerations_match_standard_orders() {
        assert_eq!(build("GL:2:2").order(), 6);
        assert_eq!(build("SL:2:3").order(), 24);
        assert_eq!(build("PSL:2:5").order(), 60);
        assert_eq!(build("PGL:2:3").order(), 24);
        assert_eq!(build("Sp:2:3").order(), 24);
        assert_eq!(build("U:2:2").order(), 18);
        assert_eq!(build("Sp:4:2").order(), 720);
    }

    #[test]
    fn twist_requires_norm_one() {
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(unitary_determinant_twist(2, &f4, 1).unwrap(), Matrix::identity(2));
        let f9 = FiniteField::new(9).unwrap();
        let bad = f9.nonzero().find(|&a| f9.norm(a).unwrap() != 1).unwrap();
        assert!(unitary_determinant_twist(3, &f9, bad).is_err());
        assert!(unitary_determinant_twist(3, &FiniteField::new(3).unwrap(), 1).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for (name, fam) in NAMES {
            assert_eq!(fam.to_string(), *name);
            assert_eq!(name.parse::<ClassicalFamily>().unwrap(), *fam);
        }
    }
}
