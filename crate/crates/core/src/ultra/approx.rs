use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::conjugacy::{eval_word, reduce_word, Word};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::norms::LengthFunction;

/// Whether a word is trivial in the free product of cyclic groups whose
/// orders are `orders` (0 for infinite cyclic), by reduction to normal form.
pub fn free_product_is_trivial(word: &[i32], orders: &[u32]) -> bool {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for &l in word {
        let g = l.unsigned_abs() as usize;
        assert!(g >= 1 && g <= orders.len(), "letter {l} outside the generators");
        let order = orders[g - 1] as i64;
        let reduce = |e: i64| if order == 0 { e } else { e.rem_euclid(order) };
        let step = l.signum() as i64;
        match stack.last_mut() {
            Some((top, e)) if *top == g => {
                *e = reduce(*e + step);
                if *e == 0 {
                    stack.pop();
                }
            }
            _ => {
                let e = reduce(step);
                if e != 0 {
                    stack.push((g, e));
                }
            }
        }
    }
    stack.is_empty()
}

/// A finite piece of a (source) group mapped into a normed target.
#[derive(Debug, Clone)]
pub struct ApproxWitness {
    pub source: Arc<FiniteGroup>,
    pub domain: Vec<usize>,
    pub eps: f64,
    /// Lower bound `delta_g` for each element of `domain`, in order.
    pub delta: Vec<f64>,
    pub target: LengthFunction,
    /// Images of source elements; must cover `domain` and its products.
    pub phi: HashMap<usize, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproxReport {
    pub identity_fixed: bool,
    pub lower_bound_failures: Vec<String>,
    pub defect_failures: Vec<String>,
    pub max_defect: f64,
    pub passes: bool,
}

/// `phi(e) = e`, `l(phi(g)) >= delta_g` on `D`, and
/// `l(phi(gh) phi(h)^-1 phi(g)^-1) < eps` for `g, h` in `D`.
pub fn verify_approximation_witness(w: &ApproxWitness) -> Result<ApproxReport> {
    if w.delta.len() != w.domain.len() {
        return Err(Error::Misaligned(format!("{} bounds for {} domain elements", w.delta.len(), w.domain.len())));
    }
    let src = &w.source;
    let tgt = w.target.group();
    let image = |g: usize| w.phi.get(&g).copied();
    let identity_fixed = image(src.identity()) == Some(tgt.identity());
    let mut lower_bound_failures = Vec::new();
    for (&g, &d) in w.domain.iter().zip(&w.delta) {
        match image(g) {
            Some(x) if w.target.value(x) >= d => {}
            Some(x) => lower_bound_failures.push(format!(
                "l(phi({})) = {} < {d}",
                src.format_element(g),
                w.target.value(x)
            )),
            None => lower_bound_failures.push(format!("phi undefined at {}", src.format_element(g))),
        }
    }
    let mut defect_failures = Vec::new();
    let mut max_defect: f64 = 0.0;
    for &g in &w.domain {
        for &h in &w.domain {
            let gh = src.mul(g, h);
            let (Some(a), Some(b), Some(c)) = (image(g), image(h), image(gh)) else {
                defect_failures.push(format!(
                    "phi undefined on the product {} * {}",
                    src.format_element(g),
                    src.format_element(h)
                ));
                continue;
            };
            let defect = tgt.mul(tgt.mul(c, tgt.inv(b)), tgt.inv(a));
            let v = w.target.value(defect);
            max_defect = max_defect.max(v);
            if v >= w.eps {
                defect_failures.push(format!(
                    "defect of ({}, {}) has length {v} >= {}",
                    src.format_element(g),
                    src.format_element(h),
                    w.eps
                ));
            }
        }
    }
    Ok(ApproxReport {
        passes: identity_fixed && lower_bound_failures.is_empty() && defect_failures.is_empty(),
        identity_fixed,
        lower_bound_failures,
        defect_failures,
        max_defect,
    })
}

/// A fragment of a multiplication table: labelled elements and the products
/// `a * b = c` known among them.
#[derive(Debug, Clone, Serialize)]
pub struct PartialTable {
    pub labels: Vec<String>,
    pub triples: Vec<(usize, usize, usize)>,
}

impl PartialTable {
    /// Every triple `a * b = c` with all three in `subset`.
    pub fn from_group(group: &FiniteGroup, subset: &[usize]) -> PartialTable {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut triples = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                if let Some(&k) = pos.get(&group.mul(a, b)) {
                    triples.push((i, j, k));
                }
            }
        }
        PartialTable {
            labels: subset.iter().map(|&g| group.format_element(g)).collect(),
            triples,
        }
    }

    /// Ball of `radius` around the identity in the Cayley graph on `gens`
    /// (taken with inverses), in breadth-first order.
    pub fn cayley_ball(group: &FiniteGroup, gens: &[usize], radius: usize) -> (PartialTable, Vec<usize>) {
        let mut steps: Vec<usize> = gens.to_vec();
        steps.extend(gens.iter().map(|&g| group.inv(g)));
        let mut ball = vec![group.identity()];
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut frontier = ball.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for &x in &frontier {
                for &s in &steps {
                    let y = group.mul(x, s);
                    if !seen[y] {
                        seen[y] = true;
                        next.push(y);
                    }
                }
            }
            ball.extend_from_slice(&next);
            frontier = next;
        }
        (PartialTable::from_group(group, &ball), ball)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LefFailure {
    pub a: String,
    pub b: String,
    pub product: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LefReport {
    pub injective: bool,
    pub collisions: Vec<(String, String)>,
    pub triples_checked: usize,
    pub failures: Vec<LefFailure>,
    pub passes: bool,
}

/// Checks `phi(a b) = phi(a) phi(b)` on every known triple, and injectivity.
pub fn verify_lef_witness(table: &PartialTable, target: &FiniteGroup, phi: &[usize]) -> Result<LefReport> {
    if phi.len() != table.labels.len() {
        return Err(Error::Misaligned(format!("{} images for {} elements", phi.len(), table.labels.len())));
    }
    if let Some(&x) = phi.iter().find(|&&x| x >= target.order()) {
        return Err(Error::NotInGroup(format!("index {x} in {}", target.descriptor())));
    }
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for (i, &x) in phi.iter().enumerate() {
        if let Some(&j) = first.get(&x) {
            collisions.push((table.labels[j].clone(), table.labels[i].clone()));
        } else {
            first.insert(x, i);
        }
    }
    let mut failures = Vec::new();
    for &(a, b, c) in &table.triples {
        let prod = target.mul(phi[a], phi[b]);
        if prod != phi[c] {
            failures.push(LefFailure {
                a: table.labels[a].clone(),
                b: table.labels[b].clone(),
                product: table.labels[c].clone(),
                detail: format!(
                    "phi(a) phi(b) = {} but phi(ab) = {}",
                    target.format_element(prod),
                    target.format_element(phi[c])
                ),
            });
        }
    }
    Ok(LefReport {
        injective: collisions.is_empty(),
        passes: collisions.is_empty() && failures.is_empty(),
        collisions,
        triples_checked: table.triples.len(),
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LefSeparationReport {
    /// `phi(D1) = {e}`; offending words otherwise.
    pub kills_d1: bool,
    pub d1_failures: Vec<Word>,
    pub injective_on_d2: bool,
    pub collisions: Vec<(Word, Word)>,
    /// `phi(D2 \ N1)` misses `H`.
    pub separated: bool,
    pub separation_failures: Vec<Word>,
    /// Order of `H`, the normal closure of `phi(N1 generators)` in the image.
    pub h_order: usize,
    pub passes: bool,
}

/// `phi` is given by generator images; `n1_generators` normally generate `N1`
/// in the free group and `in_n1` decides membership.
pub fn verify_lef_separation(
    target: &Arc<FiniteGroup>,
    generator_images: &[usize],
    d1: &[Word],
    d2: &[Word],
    n1_generators: &[Word],
    in_n1: &dyn Fn(&[i32]) -> bool,
) -> Result<LefSeparationReport> {
    let phi = |w: &[i32]| eval_word(target, generator_images, w);
    let mut d1_failures = Vec::new();
    for w in d1 {
        if phi(w)? != target.identity() {
            d1_failures.push(w.clone());
        }
    }
    let mut collisions = Vec::new();
    let mut seen: HashMap<usize, Word> = HashMap::new();
    for w in d2 {
        let red = reduce_word(w);
        let x = phi(&red)?;
        match seen.get(&x) {
            Some(other) if *other != red => collisions.push((other.clone(), red)),
            Some(_) => {}
            None => {
                seen.insert(x, red);
            }
        }
    }
    let image = target.closure_mask(generator_images);
    let seeds = n1_generators.iter().map(|w| phi(w)).collect::<Result<Vec<_>>>()?;
    let mut conj = Vec::new();
    for y in target.elements().filter(|&y| image[y]) {
        for &s in &seeds {
            conj.push(target.conjugate(s, y));
        }
    }
    let h = Subgroup::generated(target, &conj);
    let mut separation_failures = Vec::new();
    for w in d2 {
        if !in_n1(w) && h.contains(phi(w)?) {
            separation_failures.push(w.clone());
        }
    }
    Ok(LefSeparationReport {
        kills_d1: d1_failures.is_empty(),
        injective_on_d2: collisions.is_empty(),
        separated: separation_failures.is_empty(),
        passes: d1_failures.is_empty() && collisions.is_empty() && separation_failures.is_empty(),
        d1_failures,
        collisions,
        separation_failures,
        h_order: h.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_product_normal_form() {
        // Z/2 * Z/3
        let orders = [2, 3];
        assert!(free_product_is_trivial(&[], &orders));
        assert!(free_product_is_trivial(&[1, 1], &orders));
        assert!(free_product_is_trivial(&[2, 2, 2], &orders));
        assert!(free_product_is_trivial(&[2, 1, 1, -2], &orders));
        assert!(free_product_is_trivial(&[1, -1], &orders));
        assert!(!free_product_is_trivial(&[1, 2], &orders));
        assert!(!free_product_is_trivial(&[1, 2, 1, 2], &orders));
        // free letters never wrap
        assert!(!free_product_is_trivial(&[1, 1], &[0]));
        assert!(free_product_is_trivial(&[1, 1, -1, -1], &[0]));
    }

    #[test]
    fn trivial_tables() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let t = PartialTable::from_group(&c3, &[c3.identity()]);
        let r = verify_lef_witness(&t, &c3, &[c3.identity()]).unwrap();
        assert!(r.passes);
        assert_eq!(r.triples_checked, 1);
    }
}
