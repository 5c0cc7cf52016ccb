//! Bilinear, hermitian and characteristic-2 quadratic forms given by Gram
//! matrices in a fixed basis.

use serde::{Deserialize, Serialize};

use super::field::{Fe, FiniteField};
use super::mat::Matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    Zero,
    Symplectic,
    Hermitian,
    Symmetric,
    QuadraticChar2,
}

/// A form `f(x, y) = x^T G y` (or `x^T G y^J` when hermitian). In the
/// quadratic case `gram` is the polar form and `quadratic_values[i]` is
/// `Q(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FormJson", try_from = "FormJson")]
pub struct SesquilinearForm {
    pub kind: FormKind,
    pub gram: Matrix,
    pub quadratic_values: Option<Vec<Fe>>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    kind: FormKind,
    gram: Vec<Vec<Fe>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadratic_values: Option<Vec<Fe>>,
}

impl From<SesquilinearForm> for FormJson {
    fn from(f: SesquilinearForm) -> Self {
        let n = f.gram.dim();
        FormJson {
            kind: f.kind,
            gram: (0..n).map(|i| (0..n).map(|j| f.gram.get(i, j)).collect()).collect(),
            quadratic_values: f.quadratic_values,
        }
    }
}

impl TryFrom<FormJson> for SesquilinearForm {
    type Error = Error;

    fn try_from(j: FormJson) -> Result<Self> {
        let n = j.gram.len();
        if j.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("gram matrix is not square".into()));
        }
        if j.quadratic_values.as_ref().is_some_and(|q| q.len() != n) {
            return Err(Error::Domain("quadratic values do not match the dimension".into()));
        }
        Ok(SesquilinearForm {
            kind: j.kind,
            gram: Matrix::from_rows(&j.gram),
            quadratic_values: j.quadratic_values,
        })
    }
}

impl SesquilinearForm {
    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn zero(n: usize) -> SesquilinearForm {
        SesquilinearForm {
            kind: FormKind::Zero,
            gram: Matrix::scalar(n, 0),
            quadratic_values: None,
        }
    }

    /// Block form `[[0, I], [-I, 0]]` in the basis `e_1..e_m, f_1..f_m`.
    pub fn symplectic(field: &FiniteField, n: usize) -> Result<SesquilinearForm> {
        if n % 2 != 0 || n == 0 {
            return Err(Error::Incompatible(format!("symplectic form needs even positive dimension, got {n}")));
        }
        let m = n / 2;
        let mut rows = vec![vec![0; n]; n];
        for i in 0..m {
            rows[i][m + i] = 1;
            rows[m + i][i] = field.neg(1);
        }
        Ok(SesquilinearForm {
            kind: FormKind::Symplectic,
            gram: Matrix::from_rows(&rows),
            quadratic_values: None,
        })
    }

    /// Identity Gram matrix over a field with an involution.
    pub fn hermitian(field: &FiniteField, n: usize) -> Result<SesquilinearForm> {
        if !field.has_involution() {
            return Err(Error::Incompatible(format!("F_{} has no involution for a hermitian form", field.q())));
        }
        Ok(SesquilinearForm {
            kind: FormKind::Hermitian,
            gram: Matrix::identity(n),
            quadratic_values: None,
        })
    }

    /// Diagonal form `diag(1, .., 1, d)` over odd `q`. In odd dimension `d = 1`;
    /// in dimension `2m` the last entry is chosen so the form has Witt type
    /// `plus` (maximal isotropic subspaces of dimension `m`) or minus.
    pub fn symmetric(field: &FiniteField, n: usize, plus: bool) -> Result<SesquilinearForm> {
        if field.characteristic() == 2 {
            return Err(Error::Incompatible("symmetric forms are for odd characteristic".into()));
        }
        if n == 0 {
            return Err(Error::Incompatible("dimension must be positive".into()));
        }
        let mut diag = vec![1 as Fe; n];
        if n % 2 == 0 {
            let m = n / 2;
            let sign: Fe = if m % 2 == 0 { 1 } else { field.neg(1) };
            // type is plus iff (-1)^m det is a square
            let d = if plus {
                sign
            } else {
                let nonsquare = field.nonzero().find(|&a| !field.is_square(a)).expect("odd q has nonsquares");
                field.mul(sign, nonsquare)
            };
            diag[n - 1] = d;
        } else if !plus {
            return Err(Error::Incompatible("odd-dimensional orthogonal groups have no minus type".into()));
        }
        Ok(SesquilinearForm {
            kind: FormKind::Symmetric,
            gram: Matrix::diagonal(&diag),
            quadratic_values: None,
        })
    }

    /// Characteristic-2 quadratic form on `F_q^{2m}`: an orthogonal sum of
    /// hyperbolic planes `x_{2i} x_{2i+1}`; for the minus type the last plane
    /// is `x^2 + xy + a y^2` with `t^2 + t + a` irreducible.
    pub fn quadratic_char2(field: &FiniteField, n: usize, plus: bool) -> Result<SesquilinearForm> {
        if field.characteristic() != 2 {
            return Err(Error::Incompatible("quadratic char-2 form needs even q".into()));
        }
        if n % 2 != 0 || n == 0 {
            return Err(Error::Incompatible(format!(
                "characteristic-2 orthogonal groups need even positive dimension, got {n}"
            )));
        }
        let mut rows = vec![vec![0; n]; n];
        for i in (0..n).step_by(2) {
            rows[i][i + 1] = 1;
            rows[i + 1][i] = 1;
        }
        let mut values = vec![0; n];
        if !plus {
            let a = field
                .elements()
                .find(|&a| field.elements().all(|t| field.add(field.add(field.mul(t, t), t), a) != 0))
                .expect("an irreducible t^2 + t + a exists");
            values[n - 2] = 1;
            values[n - 1] = a;
        }
        Ok(SesquilinearForm {
            kind: FormKind::QuadraticChar2,
            gram: Matrix::from_rows(&rows),
            quadratic_values: Some(values),
        })
    }

    /// `f(x, y)`.
    pub fn eval(&self, field: &FiniteField, x: &[Fe], y: &[Fe]) -> Result<Fe> {
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                let g = self.gram.get(i, j);
                if g == 0 || y[j] == 0 {
                    continue;
                }
                let yj = if self.kind == FormKind::Hermitian { field.conj(y[j])? } else { y[j] };
                acc = field.add(acc, field.mul(field.mul(x[i], g), yj));
            }
        }
        Ok(acc)
    }

    /// `Q(x)` for the characteristic-2 quadratic case.
    pub fn quadratic(&self, field: &FiniteField, x: &[Fe]) -> Option<Fe> {
        let values = self.quadratic_values.as_ref()?;
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            acc = field.add(acc, field.mul(values[i], field.mul(x[i], x[i])));
            for j in i + 1..n {
                acc = field.add(acc, field.mul(self.gram.get(i, j), field.mul(x[i], x[j])));
            }
        }
        Some(acc)
    }
}

/// Whether `m` preserves the form: `f(Me_i, Me_j) = f(e_i, e_j)` for all basis
/// pairs, and `Q(Me_i) = Q(e_i)` in the quadratic case.
pub fn verify_form_preserved(field: &FiniteField, form: &SesquilinearForm, m: &Matrix) -> Result<bool> {
    let n = form.dim();
    if m.dim() != n {
        return Err(Error::Misaligned(format!("{}x{} matrix for a form of dimension {n}", m.dim(), m.dim())));
    }
    let cols: Vec<Vec<Fe>> = (0..n).map(|j| m.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            if form.eval(field, &cols[i], &cols[j])? != form.gram.get(i, j) {
                return Ok(false);
            }
        }
        if let Some(values) = &form.quadratic_values {
            if form.quadratic(field, &cols[i]) != Some(values[i]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
