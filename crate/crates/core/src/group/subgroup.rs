use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::{FiniteGroup, Repr};
use crate::error::{Error, Result};

/// A subgroup of a parent group, stored as a membership mask plus the sorted
/// member list. Normality is always computed, never asserted.
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    mask: Vec<bool>,
    members: Vec<usize>,
    normal: bool,
    as_group: OnceLock<Arc<FiniteGroup>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {} in {}, normal: {})",
            self.members.len(),
            self.parent.descriptor(),
            self.normal
        )
    }
}

impl Subgroup {
    fn from_mask(parent: Arc<FiniteGroup>, mask: Vec<bool>) -> Subgroup {
        let members: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
        let normal = parent
            .generators()
            .iter()
            .all(|&s| members.iter().all(|&h| mask[parent.conjugate(h, s)]));
        Subgroup {
            parent,
            mask,
            members,
            normal,
            as_group: OnceLock::new(),
        }
    }

    /// Validates an explicit member set: must contain the identity and be
    /// closed under products.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            if m >= parent.order() {
                return Err(Error::NotInGroup(parent.descriptor().to_string()));
            }
            mask[m] = true;
        }
        if !mask[parent.identity()] {
            return Err(Error::Domain("member set lacks the identity".into()));
        }
        // Grow a generating set from the members; the set is a subgroup iff
        // every intermediate closure stays inside it.
        let mut gens = Vec::new();
        let mut closure = vec![false; mask.len()];
        closure[parent.identity()] = true;
        for m in 0..mask.len() {
            if mask[m] && !closure[m] {
                gens.push(m);
                closure = parent.closure_mask(&gens);
                if closure.iter().zip(&mask).any(|(&c, &inside)| c && !inside) {
                    return Err(Error::Domain("member set is not closed under products".into()));
                }
            }
        }
        Ok(Subgroup::from_mask(parent.clone(), mask))
    }

    /// Members satisfying `pred`, checked for closure.
    pub fn from_predicate(parent: &Arc<FiniteGroup>, pred: impl Fn(usize) -> bool) -> Result<Subgroup> {
        let members: Vec<usize> = parent.elements().filter(|&g| pred(g)).collect();
        Subgroup::from_members(parent, &members)
    }

    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        Subgroup::from_mask(parent.clone(), parent.closure_mask(gens))
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(parent: &Arc<FiniteGroup>, set: &[usize]) -> Subgroup {
        // only conjugates not yet in the running closure become generators
        let mut gens = Vec::new();
        let mut mask = parent.closure_mask(&[]);
        let mut seen_class = vec![false; parent.classes().count()];
        for &x in set {
            let c = parent.classes().class_of(x);
            if seen_class[c] {
                continue;
            }
            seen_class[c] = true;
            for &m in parent.classes().members(c) {
                if !mask[m] {
                    gens.push(m);
                    mask = parent.closure_mask(&gens);
                }
            }
        }
        Subgroup::from_mask(parent.clone(), mask)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(parent, &[])
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_mask(parent.clone(), vec![true; parent.order()])
    }

    pub fn center(parent: &Arc<FiniteGroup>) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for z in parent.center() {
            mask[z] = true;
        }
        Subgroup::from_mask(parent.clone(), mask)
    }

    /// Normal closure of all commutators of generators.
    pub fn derived(parent: &Arc<FiniteGroup>) -> Subgroup {
        let gens = parent.generators();
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                comms.push(parent.commutator(a, b));
            }
        }
        Subgroup::normal_closure(parent, &comms)
    }

    /// Even permutations of a permutation group.
    pub fn even_permutations(parent: &Arc<FiniteGroup>) -> Result<Subgroup> {
        if parent.perm_degree().is_none() {
            return Err(Error::Incompatible(format!("{} is not a permutation group", parent.descriptor())));
        }
        Subgroup::from_predicate(parent, |g| parent.perm(g).expect("perm").is_even())
    }

    /// Determinant-one members of a linear (non-projective) matrix group.
    pub fn determinant_one(parent: &Arc<FiniteGroup>) -> Result<Subgroup> {
        let field = parent
            .field()
            .ok_or_else(|| Error::Incompatible(format!("{} is not a matrix group", parent.descriptor())))?;
        if parent.is_projective() {
            return Err(Error::Incompatible("determinant is not defined on projective classes".into()));
        }
        Subgroup::from_predicate(parent, |g| field.det(parent.matrix(g).expect("matrix")) == 1)
    }

    /// Image of the special linear group inside a projective group: classes
    /// whose canonical representative has determinant an `n`-th power.
    pub fn projective_special(parent: &Arc<FiniteGroup>) -> Result<Subgroup> {
        let (field, n) = match (parent.field(), parent.matrix_dim()) {
            (Some(f), Some(n)) if parent.is_projective() => (f, n),
            _ => return Err(Error::Incompatible(format!("{} is not a projective group", parent.descriptor()))),
        };
        Subgroup::from_predicate(parent, |g| {
            field.is_nth_power(field.det(parent.matrix(g).expect("matrix")), n as u32)
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn require_normal(&self) -> Result<()> {
        if self.normal {
            Ok(())
        } else {
            Err(Error::NotNormal(self.parent.descriptor().to_string()))
        }
    }

    /// The subgroup as a standalone group, indices following the parent order.
    pub fn as_group(&self) -> Arc<FiniteGroup> {
        self.as_group
            .get_or_init(|| {
                let pos: HashMap<usize, u32> = self.members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
                let identity = pos[&self.parent.identity()] as usize;
                Arc::new(FiniteGroup::new(
                    format!("{}[sub {}]", self.parent.descriptor(), self.members.len()),
                    Repr::Sub {
                        parent: self.parent.clone(),
                        members: self.members.clone(),
                        pos,
                    },
                    self.members.len(),
                    identity,
                ))
            })
            .clone()
    }
}

/// `G/H` for normal `H`. Cosets are ordered by their minimal element, which is
/// also the canonical representative.
pub fn quotient_group(h: &Subgroup) -> Result<Arc<FiniteGroup>> {
    h.require_normal()?;
    let g = h.parent();
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != UNSET {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in h.members() {
            coset_of[g.mul(x, m)] = id;
        }
    }
    let order = reps.len();
    let identity = coset_of[g.identity()] as usize;
    Ok(Arc::new(FiniteGroup::new(
        format!("{}/[{}]", g.descriptor(), h.order()),
        Repr::Quotient {
            parent: g.clone(),
            coset_of,
            reps,
        },
        order,
        identity,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> Arc<FiniteGroup> {
        FiniteGroup::symmetric(n).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let s3 = s(3);
        let c = s3.parse_element("(0 1 2)").unwrap();
        let h = Subgroup::generated(&s3, &[c]);
        assert_eq!(h.order(), 3);
        assert!(h.is_normal());
        assert!(Subgroup::generated(&s3, &[]).is_trivial());

        let s4 = s(4);
        let transpositions: Vec<usize> = s4.elements().filter(|&g| s4.perm(g).unwrap().support_size() == 2).collect();
        assert_eq!(Subgroup::generated(&s4, &transpositions).order(), 24);
        let t = s4.parse_element("(0 1)").unwrap();
        assert!(!Subgroup::generated(&s4, &[t]).is_normal());
    }

    #[test]
    fn normal_closures() {
        let s4 = s(4);
        let t = s4.parse_element("(0 1)").unwrap();
        assert_eq!(Subgroup::normal_closure(&s4, &[t]).order(), 24);
        let d = s4.parse_element("(0 1)(2 3)").unwrap();
        let v4 = Subgroup::normal_closure(&s4, &[d]);
        assert_eq!(v4.order(), 4);
        assert!(v4.is_normal());
        assert!(Subgroup::normal_closure(&s4, &[]).is_trivial());
        assert_eq!(Subgroup::derived(&s4).order(), 12);
    }

    #[test]
    fn quotients() {
        let s4 = s(4);
        let a4 = Subgroup::even_permutations(&s4).unwrap();
        let q = quotient_group(&a4).unwrap();
        assert_eq!(q.order(), 2);
        q.verify_axioms().unwrap();
        assert_eq!(quotient_group(&Subgroup::trivial(&s4)).unwrap().order(), 24);
        assert_eq!(quotient_group(&Subgroup::whole(&s4)).unwrap().order(), 1);
        let t = s4.parse_element("(0 1)").unwrap();
        assert!(matches!(quotient_group(&Subgroup::generated(&s4, &[t])), Err(Error::NotNormal(_))));
    }

    #[test]
    fn subgroup_as_group_keeps_elements() {
        let s4 = s(4);
        let a4 = Subgroup::even_permutations(&s4).unwrap();
        let g = a4.as_group();
        g.verify_axioms().unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.center().len(), 1);
        let x = g.parse_element("(0 1 2)").unwrap();
        assert_eq!(g.format_element(x), "(0 1 2)");
    }
}
