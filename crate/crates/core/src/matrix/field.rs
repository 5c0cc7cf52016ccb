//! Finite fields `F_q` with `q = p^k <= 256`, elements encoded as integers
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` for the residue `c_0 + c_1 x + ...`
//! modulo a fixed irreducible polynomial.

use std::fmt;

use crate::error::{Error, Result};

/// Field element code, always `< q`.
pub type Fe = u8;

/// Fixed modulus per `(p, k)`: Conway polynomials, coefficients low to high
/// without the leading 1.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
    (11, 2, &[2, 7]),
    (13, 2, &[2, 12]),
];

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Fe>,
    mul: Vec<Fe>,
    neg: Vec<Fe>,
    inv: Vec<Fe>,
    involution: Option<Vec<Fe>>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FiniteField {
    /// Builds `F_q`. Fails for non prime powers, `q > 256`, or when no
    /// modulus is shipped for `q`.
    pub fn new(q: u32) -> Result<FiniteField> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        if q > 256 {
            return Err(Error::Domain(format!("field size {q} above 256")));
        }
        let modulus: Vec<u32> = if k == 1 {
            vec![0]
        } else {
            MODULI
                .iter()
                .find(|&&(mp, mk, _)| mp == p && mk == k)
                .map(|&(_, _, m)| m.to_vec())
                .ok_or_else(|| Error::Domain(format!("no modulus shipped for F_{q}")))?
        };
        let size = q as usize;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0; size * size];
        let mut neg = vec![0; size];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as Fe;
            }
            let n: Vec<u32> = da.iter().map(|x| (p - x) % p).collect();
            neg[a as usize] = encode(&n) as Fe;
        }

        let mut mul = vec![0; size * size];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce using x^k = -(m_0 + m_1 x + ...)
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = deg - k as usize + i;
                        prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..k as usize]) as Fe;
            }
        }

        let mut inv = vec![0; size];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .ok_or_else(|| Error::Domain(format!("modulus for F_{q} is reducible")))?;
            inv[a as usize] = b as Fe;
        }

        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            involution: None,
        };
        if k % 2 == 0 {
            let q0 = p.pow(k / 2);
            let table = (0..q).map(|x| field.pow(x as Fe, q0 as u64)).collect();
            field.involution = Some(table);
        }
        Ok(field)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Size of the fixed field of the involution, when `q` is a square.
    pub fn subfield_size(&self) -> Option<u32> {
        self.involution.as_ref().map(|_| self.p.pow(self.k / 2))
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc: Fe = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The involution `x -> x^{sqrt q}`, defined when `q` is a square.
    pub fn conj(&self, a: Fe) -> Result<Fe> {
        self.involution
            .as_ref()
            .map(|t| t[a as usize])
            .ok_or_else(|| Error::Domain(format!("F_{} has no involutory automorphism", self.q)))
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    /// `x^J * x`, the norm to the fixed subfield.
    pub fn norm(&self, a: Fe) -> Result<Fe> {
        Ok(self.mul(self.conj(a)?, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(|x| x as Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(|x| x as Fe)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u32 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        self.nonzero().find(|&a| self.order(a) == self.q - 1).expect("cyclic group has a generator")
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a == 0 || self.nonzero().any(|b| self.mul(b, b) == a)
    }

    /// Whether `a` is an `n`-th power of a nonzero element.
    pub fn is_nth_power(&self, a: Fe, n: u32) -> bool {
        a != 0 && self.nonzero().any(|b| self.pow(b, n as u64) == a)
    }

    /// Elements `x` with `x^J x = 1`.
    pub fn norm_one_elements(&self) -> Result<Vec<Fe>> {
        let mut out = Vec::new();
        for a in self.nonzero() {
            if self.norm(a)? == 1 {
                out.push(a);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold_for_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn involution_fixes_exactly_the_subfield() {
        for q in [4, 9, 16, 25, 49] {
            let f = FiniteField::new(q).unwrap();
            let q0 = f.subfield_size().unwrap();
            let mut fixed = 0;
            for a in f.elements() {
                let j = f.conj(a).unwrap();
                assert_eq!(f.conj(j).unwrap(), a);
                if j == a {
                    fixed += 1;
                }
            }
            assert_eq!(fixed, q0);
            assert_eq!(f.norm_one_elements().unwrap().len() as u32, q0 + 1);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(512).is_err());
        assert!(FiniteField::new(3).unwrap().conj(1).is_err());
    }
}
