//! Permutations of `{0, .., n-1}` stored as image arrays.

use std::fmt;

use crate::error::{Error, Result};

/// Largest degree whose factorial still fits in a `u64` rank.
pub const MAX_DEGREE: usize = 20;

/// A permutation given by its images: `p.image(i) == p.0[i]`.
///
/// Products compose right to left: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u8]>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from an image array, rejecting non-bijections.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::Domain(format!("degree {n} above {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(Error::Domain(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x >= n {
                    return Err(Error::Domain(format!("point {x} outside degree {n}")));
                }
                if used[x] {
                    return Err(Error::Domain(format!("point {x} repeated in cycles")));
                }
                used[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm(rhs.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.degree()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Number of points not fixed.
    pub fn support_size(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i != x as usize).count()
    }

    /// Cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.image(x);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.cycle_type().len();
        (self.degree() - cycles) % 2 == 0
    }

    /// Position of `self` among all permutations of its degree in lexicographic
    /// order of image arrays (Lehmer code).
    pub fn lex_rank(&self) -> u64 {
        let n = self.degree();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&y| y < self.0[i]).count() as u64;
            rank = rank * (n - i) as u64 + smaller;
        }
        rank
    }

    /// Inverse of [`Perm::lex_rank`].
    pub fn lex_unrank(n: usize, mut rank: u64) -> Perm {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let radix = (n - i) as u64;
            digits[i] = (rank % radix) as usize;
            rank /= radix;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let images: Vec<u8> = digits.iter().map(|&d| pool.remove(d)).collect();
        Perm(images.into_boxed_slice())
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`, `()` or `id`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Perm> {
        let trimmed = text.trim();
        if trimmed == "id" || trimmed == "e" {
            return Ok(Perm::identity(n));
        }
        let mut cycles = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush = |number: &mut String, current: &mut Option<Vec<usize>>, pos: usize| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let value: usize = number.parse().map_err(|_| Error::parse(pos, "bad point"))?;
            match current {
                Some(c) => c.push(value),
                None => return Err(Error::parse(pos, "point outside parentheses")),
            }
            number.clear();
            Ok(())
        };
        for (pos, ch) in text.char_indices() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::parse(pos, "nested '('"));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current, pos)?;
                    match current.take() {
                        Some(c) => {
                            if !c.is_empty() {
                                cycles.push(c)
                            }
                        }
                        None => return Err(Error::parse(pos, "unbalanced ')'")),
                    }
                }
                d if d.is_ascii_digit() => number.push(d),
                ' ' | ',' | '\t' => flush(&mut number, &mut current, pos)?,
                other => return Err(Error::parse(pos, format!("unexpected {other:?}"))),
            }
        }
        if current.is_some() {
            return Err(Error::parse(text.len(), "missing ')'"));
        }
        Perm::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_round_trip_and_order() {
        let all: Vec<Perm> = (0..24).map(|r| Perm::lex_unrank(4, r)).collect();
        for (r, p) in all.iter().enumerate() {
            assert_eq!(p.lex_rank(), r as u64);
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_identity());
    }

    #[test]
    fn adjacent_ranks_differ_in_parity() {
        for r in (0..720u64).step_by(2) {
            let a = Perm::lex_unrank(6, r);
            let b = Perm::lex_unrank(6, r + 1);
            assert_ne!(a.is_even(), b.is_even());
        }
    }

    #[test]
    fn parse_and_display() {
        let p = Perm::parse_cycles(5, "(0 1)(2 3 4)").unwrap();
        assert_eq!(p.to_string(), "(0 1)(2 3 4)");
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(!p.is_even());
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
        assert!(Perm::parse_cycles(3, "(0 5)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn compose_is_right_to_left() {
        let a = Perm::parse_cycles(3, "(0 1)").unwrap();
        let b = Perm::parse_cycles(3, "(1 2)").unwrap();
        // b sends 1 -> 2, then a fixes 2.
        assert_eq!(a.compose(&b).image(1), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }
}
