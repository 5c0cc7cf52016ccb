//! Desk-scale finite groups with a fixed, deterministic element ordering.
//!
//! Every group element is addressed by its index in that ordering. Symmetric
//! and alternating groups are lazy (indices are lexicographic ranks), every
//! other representation is materialized at construction.

pub mod perm;
mod descriptor;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Fe, FiniteField, Matrix};
pub use descriptor::{construct_group, construct_group_with_cap, TableFile};
pub use perm::Perm;
pub use subgroup::{quotient_group, Subgroup};

/// Default bound on the number of elements any operation may enumerate.
pub const DEFAULT_CAP: usize = 10_000_000;

/// Seed used for every randomized step inside group construction.
pub const GROUP_SEED: u64 = 0x5EED;

/// Concrete representation of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Perm(Perm),
    Matrix(Matrix),
    Table(usize),
    /// A coset, carried by its canonical (minimal) representative.
    Coset(Box<Element>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => write!(f, "{p}"),
            Element::Matrix(m) => write!(f, "{m}"),
            Element::Table(i) => write!(f, "#{i}"),
            Element::Coset(rep) => write!(f, "{rep}N"),
        }
    }
}

pub(crate) struct MatrixRepr {
    pub(crate) field: Arc<FiniteField>,
    pub(crate) n: usize,
    pub(crate) projective: bool,
    pub(crate) elems: Vec<Matrix>,
    pub(crate) index: HashMap<Matrix, u32>,
    pub(crate) inv: Vec<u32>,
}

enum Repr {
    Symmetric {
        degree: usize,
    },
    Alternating {
        degree: usize,
    },
    Matrix(MatrixRepr),
    Table {
        mul: Vec<u32>,
        inv: Vec<u32>,
    },
    Sub {
        parent: Arc<FiniteGroup>,
        members: Vec<usize>,
        pos: HashMap<usize, u32>,
    },
    Quotient {
        parent: Arc<FiniteGroup>,
        coset_of: Vec<u32>,
        reps: Vec<usize>,
    },
}

/// Conjugacy classes, ordered by their minimal element.
#[derive(Debug, Clone)]
pub struct ClassData {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ClassData {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g] as usize
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    /// Canonical representative: the smallest member.
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.classes.iter().map(|c| c.as_slice())
    }
}

pub struct FiniteGroup {
    descriptor: String,
    repr: Repr,
    order: usize,
    identity: usize,
    generators: OnceLock<Vec<usize>>,
    classes: OnceLock<ClassData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.descriptor, self.order)
    }
}

impl FiniteGroup {
    fn new(descriptor: String, repr: Repr, order: usize, identity: usize) -> FiniteGroup {
        FiniteGroup {
            descriptor,
            repr,
            order,
            identity,
            generators: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// The symmetric group on `n` points, indexed by lexicographic rank.
    pub fn symmetric(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 || n > perm::MAX_DEGREE {
            return Err(Error::Domain(format!("symmetric degree {n} outside 1..={}", perm::MAX_DEGREE)));
        }
        let order = perm::factorial(n) as usize;
        Ok(Arc::new(FiniteGroup::new(format!("S:{n}"), Repr::Symmetric { degree: n }, order, 0)))
    }

    /// The alternating group on `n` points; index `i` is the even permutation
    /// with lexicographic rank `2i` or `2i + 1`.
    pub fn alternating(n: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 || n > perm::MAX_DEGREE {
            return Err(Error::Domain(format!("alternating degree {n} outside 1..={}", perm::MAX_DEGREE)));
        }
        let order = if n < 2 { 1 } else { (perm::factorial(n) / 2) as usize };
        Ok(Arc::new(FiniteGroup::new(format!("A:{n}"), Repr::Alternating { degree: n }, order, 0)))
    }

    /// A group given by its full multiplication table (row-major,
    /// `mul[a * order + b] = a * b`). The table is validated: Latin square,
    /// two-sided identity, and associativity on sampled triples.
    pub fn from_table(descriptor: &str, order: usize, mul: Vec<u32>) -> Result<Arc<FiniteGroup>> {
        let bad = |reason: &str| Error::descriptor(descriptor, reason);
        if order == 0 || mul.len() != order * order {
            return Err(bad("table size does not match order"));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(bad("table entry out of range"));
        }
        for a in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                row[mul[a * order + b] as usize] = true;
                col[mul[b * order + a] as usize] = true;
            }
            if row.iter().chain(col.iter()).any(|&s| !s) {
                return Err(bad("table is not a Latin square"));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let b = (0..order).find(|&b| mul[a * order + b] as usize == identity).ok_or_else(|| bad("missing inverse"))?;
            inv[a] = b as u32;
        }
        let group = FiniteGroup::new(descriptor.to_string(), Repr::Table { mul, inv }, order, identity);
        group.verify_axioms()?;
        Ok(Arc::new(group))
    }

    /// Cyclic group of order `n` as a table group.
    pub fn cyclic(n: usize) -> Result<Arc<FiniteGroup>> {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        FiniteGroup::from_table(&format!("C:{n}"), n, mul)
    }

    pub(crate) fn from_matrices(
        descriptor: String,
        field: Arc<FiniteField>,
        n: usize,
        projective: bool,
        mut elems: Vec<Matrix>,
    ) -> Result<Arc<FiniteGroup>> {
        elems.sort();
        elems.dedup();
        let index: HashMap<Matrix, u32> = elems.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        let identity = *index
            .get(&Matrix::identity(n))
            .ok_or_else(|| Error::descriptor(&descriptor, "identity missing from matrix set"))? as usize;
        let mut inv = Vec::with_capacity(elems.len());
        for m in &elems {
            let mi = field.mat_inv(m).ok_or_else(|| Error::descriptor(&descriptor, "singular matrix"))?;
            let mi = if projective { field.canonical_projective(&mi) } else { mi };
            let j = index.get(&mi).ok_or_else(|| Error::descriptor(&descriptor, "matrix set not closed under inverse"))?;
            inv.push(*j);
        }
        let order = elems.len();
        let repr = Repr::Matrix(MatrixRepr {
            field,
            n,
            projective,
            elems,
            index,
            inv,
        });
        let group = FiniteGroup::new(descriptor, repr, order, identity);
        group.verify_axioms()?;
        Ok(Arc::new(group))
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    fn even_perm(degree: usize, index: usize) -> Perm {
        if degree < 2 {
            return Perm::identity(degree);
        }
        let p = Perm::lex_unrank(degree, 2 * index as u64);
        if p.is_even() {
            p
        } else {
            Perm::lex_unrank(degree, 2 * index as u64 + 1)
        }
    }

    /// The permutation at index `g`, for permutation groups and their
    /// subgroups.
    pub fn perm(&self, g: usize) -> Option<Perm> {
        match &self.repr {
            Repr::Symmetric { degree } => Some(Perm::lex_unrank(*degree, g as u64)),
            Repr::Alternating { degree } => Some(Self::even_perm(*degree, g)),
            Repr::Sub { parent, members, .. } => parent.perm(members[g]),
            _ => None,
        }
    }

    fn perm_index(&self, p: &Perm) -> Option<usize> {
        match &self.repr {
            Repr::Symmetric { degree } if p.degree() == *degree => Some(p.lex_rank() as usize),
            Repr::Alternating { degree } if p.degree() == *degree => {
                p.is_even().then(|| if *degree < 2 { 0 } else { (p.lex_rank() / 2) as usize })
            }
            _ => None,
        }
    }

    pub fn perm_degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Symmetric { degree } | Repr::Alternating { degree } => Some(*degree),
            Repr::Sub { parent, .. } => parent.perm_degree(),
            _ => None,
        }
    }

    /// The matrix at index `g` (canonical representative when projective).
    pub fn matrix(&self, g: usize) -> Option<&Matrix> {
        match &self.repr {
            Repr::Matrix(m) => Some(&m.elems[g]),
            Repr::Sub { parent, members, .. } => parent.matrix(members[g]),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<FiniteField>> {
        match &self.repr {
            Repr::Matrix(m) => Some(&m.field),
            Repr::Sub { parent, .. } => parent.field(),
            _ => None,
        }
    }

    pub fn is_projective(&self) -> bool {
        match &self.repr {
            Repr::Matrix(m) => m.projective,
            Repr::Sub { parent, .. } => parent.is_projective(),
            _ => false,
        }
    }

    pub fn matrix_dim(&self) -> Option<usize> {
        match &self.repr {
            Repr::Matrix(m) => Some(m.n),
            Repr::Sub { parent, .. } => parent.matrix_dim(),
            _ => None,
        }
    }

    /// Index of a matrix (canonicalized first for projective groups).
    pub fn matrix_index(&self, m: &Matrix) -> Option<usize> {
        match &self.repr {
            Repr::Matrix(r) => {
                if r.projective {
                    r.index.get(&r.field.canonical_projective(m)).map(|&i| i as usize)
                } else {
                    r.index.get(m).map(|&i| i as usize)
                }
            }
            Repr::Sub { parent, pos, .. } => parent.matrix_index(m).and_then(|i| pos.get(&i)).map(|&i| i as usize),
            _ => None,
        }
    }

    /// Parent group and member list when this group is a materialized subgroup.
    pub fn subgroup_parts(&self) -> Option<(&Arc<FiniteGroup>, &[usize])> {
        match &self.repr {
            Repr::Sub { parent, members, .. } => Some((parent, members)),
            _ => None,
        }
    }

    /// Parent group, coset assignment and coset representatives when this
    /// group is a quotient.
    pub fn quotient_parts(&self) -> Option<(&Arc<FiniteGroup>, &[u32], &[usize])> {
        match &self.repr {
            Repr::Quotient { parent, coset_of, reps } => Some((parent, coset_of, reps)),
            _ => None,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Symmetric { degree } => {
                let pa = Perm::lex_unrank(*degree, a as u64);
                let pb = Perm::lex_unrank(*degree, b as u64);
                pa.compose(&pb).lex_rank() as usize
            }
            Repr::Alternating { degree } => {
                let p = Self::even_perm(*degree, a).compose(&Self::even_perm(*degree, b));
                self.perm_index(&p).expect("even permutations are closed")
            }
            Repr::Matrix(r) => {
                let prod = r.field.mat_mul(&r.elems[a], &r.elems[b]);
                let prod = if r.projective { r.field.canonical_projective(&prod) } else { prod };
                *r.index.get(&prod).expect("matrix group is closed") as usize
            }
            Repr::Table { mul, .. } => mul[a * self.order + b] as usize,
            Repr::Sub { parent, members, pos } => {
                pos[&parent.mul(members[a], members[b])] as usize
            }
            Repr::Quotient { parent, coset_of, reps } => coset_of[parent.mul(reps[a], reps[b])] as usize,
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Symmetric { degree } => Perm::lex_unrank(*degree, a as u64).inverse().lex_rank() as usize,
            Repr::Alternating { degree } => {
                self.perm_index(&Self::even_perm(*degree, a).inverse()).expect("closed")
            }
            Repr::Matrix(r) => r.inv[a] as usize,
            Repr::Table { inv, .. } => inv[a] as usize,
            Repr::Sub { parent, members, pos } => pos[&parent.inv(members[a])] as usize,
            Repr::Quotient { parent, coset_of, reps } => coset_of[parent.inv(reps[a])] as usize,
        }
    }

    /// `by * g * by^-1`.
    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    /// `a * b * a^-1 * b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element(&self, g: usize) -> Element {
        match &self.repr {
            Repr::Symmetric { .. } | Repr::Alternating { .. } => Element::Perm(self.perm(g).expect("perm repr")),
            Repr::Matrix(r) => Element::Matrix(r.elems[g].clone()),
            Repr::Table { .. } => Element::Table(g),
            Repr::Sub { parent, members, .. } => parent.element(members[g]),
            Repr::Quotient { parent, reps, .. } => Element::Coset(Box::new(parent.element(reps[g]))),
        }
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        match (&self.repr, e) {
            (Repr::Symmetric { .. } | Repr::Alternating { .. }, Element::Perm(p)) => self.perm_index(p),
            (Repr::Matrix(_), Element::Matrix(m)) => self.matrix_index(m),
            (Repr::Table { .. }, Element::Table(i)) => (*i < self.order).then_some(*i),
            (Repr::Sub { parent, pos, .. }, _) => parent.index_of(e).and_then(|i| pos.get(&i)).map(|&i| i as usize),
            (Repr::Quotient { parent, coset_of, .. }, Element::Coset(rep)) => {
                parent.index_of(rep).map(|i| coset_of[i] as usize)
            }
            (Repr::Quotient { parent, coset_of, .. }, other) => parent.index_of(other).map(|i| coset_of[i] as usize),
            _ => None,
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index_of(e).is_some()
    }

    /// Human-readable form of the element at index `g`.
    pub fn format_element(&self, g: usize) -> String {
        self.element(g).to_string()
    }

    /// Parses an element literal: cycle notation for permutation groups,
    /// a row-major entry list for matrix groups, an index (`3` or `#3`) for
    /// table groups. Quotient groups accept any literal of the parent.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let not_in = || Error::NotInGroup(format!("{} (literal {t:?})", self.descriptor));
        if t == "id" || t == "e" || t == "1" && self.perm_degree().is_some() {
            return Ok(self.identity);
        }
        match &self.repr {
            Repr::Quotient { parent, coset_of, .. } => Ok(coset_of[parent.parse_element(t)?] as usize),
            _ => {
                if let Some(n) = self.perm_degree() {
                    let p = Perm::parse_cycles(n, t)?;
                    return self.index_of(&Element::Perm(p)).ok_or_else(not_in);
                }
                if let (Some(n), Some(field)) = (self.matrix_dim(), self.field()) {
                    let inner = t.trim_start_matches('[').trim_end_matches(']');
                    let mut entries = Vec::new();
                    for (i, tok) in inner.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).enumerate() {
                        let v: u32 = tok.parse().map_err(|_| Error::parse(i, format!("bad entry {tok:?}")))?;
                        if v >= field.q() {
                            return Err(Error::parse(i, format!("entry {v} outside F_{}", field.q())));
                        }
                        entries.push(v as Fe);
                    }
                    let m = Matrix::from_entries(n, entries)?;
                    return self.matrix_index(&m).ok_or_else(not_in);
                }
                let idx: usize = t
                    .trim_start_matches('#')
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad element literal {t:?}")))?;
                self.index_of(&Element::Table(idx)).ok_or_else(not_in)
            }
        }
    }

    /// Fails with a capacity error when the group is larger than `cap`.
    pub fn ensure_enumerable(&self, cap: usize) -> Result<()> {
        if self.order > cap {
            Err(Error::Capacity {
                order: self.order as u128,
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Identity and inverses checked exhaustively, associativity on 1000
    /// seeded random triples.
    pub fn verify_axioms(&self) -> Result<()> {
        let e = self.identity;
        let fail = |what: String| Err(Error::descriptor(&self.descriptor, what));
        for x in self.elements() {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return fail(format!("identity fails at element {x}"));
            }
            let xi = self.inv(x);
            if self.mul(x, xi) != e || self.mul(xi, x) != e {
                return fail(format!("inverse fails at element {x}"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(GROUP_SEED);
        for _ in 0..1000 {
            let (a, b, c) = (
                rng.gen_range(0..self.order),
                rng.gen_range(0..self.order),
                rng.gen_range(0..self.order),
            );
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail(format!("associativity fails at ({a}, {b}, {c})"));
            }
        }
        Ok(())
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure_mask(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set: fixed generators for symmetric and alternating
    /// groups, otherwise seeded random elements added until they generate.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Vec<usize> {
        let perm_gens = |degree: usize, cycles: Vec<Vec<usize>>| -> Vec<usize> {
            cycles
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| {
                    let p = Perm::from_cycles(degree, &[c]).expect("valid cycle");
                    self.perm_index(&p).expect("generator in group")
                })
                .collect()
        };
        match &self.repr {
            Repr::Symmetric { degree } if *degree >= 2 => perm_gens(*degree, vec![vec![0, 1], (0..*degree).collect()]),
            Repr::Symmetric { .. } => Vec::new(),
            Repr::Alternating { degree } if *degree >= 3 => {
                let long: Vec<usize> = if degree % 2 == 1 { (0..*degree).collect() } else { (1..*degree).collect() };
                perm_gens(*degree, vec![vec![0, 1, 2], long])
            }
            Repr::Alternating { .. } => Vec::new(),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(GROUP_SEED);
                let mut gens = Vec::new();
                let mut mask = vec![false; self.order];
                mask[self.identity] = true;
                let mut size = 1;
                while size < self.order {
                    let candidate = loop {
                        let r = rng.gen_range(0..self.order);
                        if !mask[r] {
                            break r;
                        }
                    };
                    gens.push(candidate);
                    mask = self.closure_mask(&gens);
                    size = mask.iter().filter(|&&m| m).count();
                }
                gens
            }
        }
    }

    /// Conjugacy classes by orbit search under conjugation by generators.
    /// Enumerates the whole group.
    pub fn classes(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        const UNSET: u32 = u32::MAX;
        let gens = self.generators().to_vec();
        let gens_inv: Vec<usize> = gens.iter().map(|&s| self.inv(s)).collect();
        let mut class_of = vec![UNSET; self.order];
        let mut classes = Vec::new();
        for start in self.elements() {
            if class_of[start] != UNSET {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for (&s, &si) in gens.iter().zip(&gens_inv) {
                    let y = self.mul(self.mul(s, x), si);
                    if class_of[y] == UNSET {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        ClassData { class_of, classes }
    }

    /// `|g^G|`. Uses the cycle-type formula for symmetric and alternating
    /// groups, so it never enumerates those.
    pub fn class_size(&self, g: usize) -> usize {
        match &self.repr {
            Repr::Symmetric { degree } => symmetric_class_size(*degree, &self.perm(g).expect("perm")) as usize,
            Repr::Alternating { degree } => {
                let p = self.perm(g).expect("perm");
                let full = symmetric_class_size(*degree, &p);
                let ct = p.cycle_type();
                let splits = *degree >= 2 && ct.iter().all(|&l| l % 2 == 1) && ct.windows(2).all(|w| w[0] != w[1]);
                (if splits { full / 2 } else { full }) as usize
            }
            _ => {
                let data = self.classes();
                data.size(data.class_of(g))
            }
        }
    }

    pub fn conjugacy_class(&self, g: usize) -> Vec<usize> {
        let data = self.classes();
        data.members(data.class_of(g)).to_vec()
    }

    pub fn center(&self) -> Vec<usize> {
        let data = self.classes();
        data.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    pub fn is_central(&self, g: usize) -> bool {
        self.class_size(g) == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.classes().count() == self.order
    }

    /// Centralizer of `g`, by brute force.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        self.elements().filter(|&h| self.mul(g, h) == self.mul(h, g)).collect()
    }
}

fn symmetric_class_size(degree: usize, p: &Perm) -> u128 {
    let mut counts = vec![0usize; degree + 1];
    for l in p.cycle_type() {
        counts[l] += 1;
    }
    let mut denom: u128 = 1;
    for (len, &m) in counts.iter().enumerate().skip(1) {
        denom *= (len as u128).pow(m as u32) * perm::factorial(m);
    }
    perm::factorial(degree) / denom
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::alternating(5).unwrap().order(), 60);
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::alternating(2).unwrap().order(), 1);
    }

    #[test]
    fn alternating_indices_are_dense() {
        let a = FiniteGroup::alternating(5).unwrap();
        for g in a.elements() {
            let p = a.perm(g).unwrap();
            assert!(p.is_even());
            assert_eq!(a.index_of(&Element::Perm(p)), Some(g));
        }
        a.verify_axioms().unwrap();
    }

    #[test]
    fn class_formula_matches_orbits() {
        for n in 1..=6 {
            for g in [FiniteGroup::symmetric(n).unwrap(), FiniteGroup::alternating(n).unwrap()] {
                let data = g.classes();
                for x in g.elements() {
                    assert_eq!(g.class_size(x), data.size(data.class_of(x)), "{} at {x}", g.descriptor());
                }
            }
        }
    }

    #[test]
    fn orbit_stabilizer_holds() {
        let g = FiniteGroup::symmetric(4).unwrap();
        for x in g.elements() {
            assert_eq!(g.class_size(x) * g.centralizer(x).len(), g.order());
        }
    }

    #[test]
    fn cyclic_table_is_abelian() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(c4.is_abelian());
        assert_eq!(c4.center().len(), 4);
    }

    #[test]
    fn rejects_non_group_tables() {
        // Latin square without associativity: a loop of order 5.
        let loop5 = vec![
            0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table("loop", 5, loop5).is_err());
        assert!(FiniteGroup::from_table("short", 2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn parse_element_literals() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let t = s4.parse_element("(0 1)").unwrap();
        assert_eq!(s4.format_element(t), "(0 1)");
        assert_eq!(s4.parse_element("id").unwrap(), s4.identity());
        let a4 = FiniteGroup::alternating(4).unwrap();
        assert!(matches!(a4.parse_element("(0 1)"), Err(Error::NotInGroup(_))));
    }
}
