//! Exhaustive (or seeded-sampled) verification of the pseudo-length axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{LengthFunction, TOL};

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub tol: f64,
    /// Groups above this order are sampled instead of checked exhaustively.
    pub exhaustive_cap: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: TOL,
            exhaustive_cap: 10_000,
            samples: 100_000,
            seed: 0x5EED,
        }
    }
}

/// Elements witnessing a failed axiom, by index and literal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub elements: Vec<usize>,
    pub literals: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub counterexample: Option<Violation>,
}

impl AxiomCheck {
    fn from(v: Option<Violation>) -> AxiomCheck {
        AxiomCheck {
            holds: v.is_none(),
            counterexample: v,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub group: String,
    pub norm: String,
    pub order: usize,
    pub sampled: bool,
    pub identity_zero: AxiomCheck,
    pub positivity: AxiomCheck,
    pub symmetry: AxiomCheck,
    pub triangle: AxiomCheck,
    pub invariance: AxiomCheck,
    /// Largest value; omitted when sampled.
    pub max_value: Option<f64>,
    pub claimed_bound: Option<f64>,
    pub bound_respected: Option<bool>,
    /// Whether the centre is trivial; computed on exhaustive runs.
    pub center_trivial: Option<bool>,
}

impl AxiomReport {
    /// Axioms (i), (ii), (iii) and invariance.
    pub fn is_invariant_pseudo_length(&self) -> bool {
        self.identity_zero.holds && self.symmetry.holds && self.triangle.holds && self.invariance.holds
    }

    /// Additionally positive off the identity.
    pub fn is_invariant_length(&self) -> bool {
        self.is_invariant_pseudo_length() && self.positivity.holds
    }
}

pub fn verify_axioms(l: &LengthFunction) -> AxiomReport {
    verify_axioms_with(l, &VerifyOptions::default())
}

pub fn verify_axioms_with(l: &LengthFunction, opts: &VerifyOptions) -> AxiomReport {
    let g = l.group();
    let l = if g.order() <= opts.exhaustive_cap { l.materialize() } else { l.clone() };
    let tol = opts.tol;
    let violation = |elements: Vec<usize>, detail: String| Violation {
        literals: elements.iter().map(|&x| g.format_element(x)).collect(),
        elements,
        detail,
    };
    let e = g.identity();
    let identity_zero = {
        let v = l.value(e);
        (v.abs() > tol).then(|| violation(vec![e], format!("l(1) = {v}")))
    };
    let sampled = g.order() > opts.exhaustive_cap;

    let (positivity, symmetry, triangle, invariance, center_trivial) = if !sampled {
        let elems: Vec<usize> = g.elements().collect();
        let positivity = elems.iter().find(|&&x| x != e && l.value(x) <= 0.0).map(|&x| {
            violation(vec![x], format!("l = {} off the identity", l.value(x)))
        });
        let symmetry = elems.par_iter().find_map_first(|&x| {
            let (a, b) = (l.value(x), l.value(g.inv(x)));
            ((a - b).abs() > tol).then(|| violation(vec![x], format!("l(g) = {a}, l(g^-1) = {b}")))
        });
        let gens = g.generators().to_vec();
        let invariance = elems.par_iter().find_map_first(|&x| {
            gens.iter().find_map(|&s| {
                let y = g.conjugate(x, s);
                let (a, b) = (l.value(x), l.value(y));
                ((a - b).abs() > tol).then(|| violation(vec![x, s], format!("l(g) = {a}, l(sgs^-1) = {b}")))
            })
        });
        // With invariance, l(x g x^-1 h) <= l(g) + l(h) for all x reduces to
        // class representatives g against every h.
        let firsts: Vec<usize> = if invariance.is_none() {
            g.classes().iter().map(|c| c[0]).collect()
        } else {
            elems.clone()
        };
        let triangle = firsts.par_iter().find_map_first(|&a| {
            let la = l.value(a);
            elems.iter().find_map(|&b| {
                let lab = l.value(g.mul(a, b));
                let lb = l.value(b);
                (lab > la + lb + tol).then(|| violation(vec![a, b], format!("l(gh) = {lab} > {la} + {lb}")))
            })
        });
        let center_trivial = Some(g.center().len() == 1);
        (positivity, symmetry, triangle, invariance, center_trivial)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let triples: Vec<(usize, usize, usize)> = (0..opts.samples)
            .map(|_| (rng.gen_range(0..g.order()), rng.gen_range(0..g.order()), rng.gen_range(0..g.order())))
            .collect();
        let positivity = triples.par_iter().find_map_first(|&(x, _, _)| {
            (x != e && l.value(x) <= 0.0).then(|| violation(vec![x], format!("l = {} off the identity", l.value(x))))
        });
        let symmetry = triples.par_iter().find_map_first(|&(x, _, _)| {
            let (a, b) = (l.value(x), l.value(g.inv(x)));
            ((a - b).abs() > tol).then(|| violation(vec![x], format!("l(g) = {a}, l(g^-1) = {b}")))
        });
        let triangle = triples.par_iter().find_map_first(|&(a, b, _)| {
            let (la, lb, lab) = (l.value(a), l.value(b), l.value(g.mul(a, b)));
            (lab > la + lb + tol).then(|| violation(vec![a, b], format!("l(gh) = {lab} > {la} + {lb}")))
        });
        let invariance = triples.par_iter().find_map_first(|&(a, _, x)| {
            let (la, lc) = (l.value(a), l.value(g.conjugate(a, x)));
            ((la - lc).abs() > tol).then(|| violation(vec![a, x], format!("l(g) = {la}, l(xgx^-1) = {lc}")))
        });
        (positivity, symmetry, triangle, invariance, None)
    };

    let max_value = (!sampled).then(|| l.sup());
    let bound_respected = match (l.claimed_bound(), max_value) {
        (Some(b), Some(m)) => Some(m <= b + tol),
        _ => None,
    };
    AxiomReport {
        group: g.descriptor().to_string(),
        norm: l.name().to_string(),
        order: g.order(),
        sampled,
        identity_zero: AxiomCheck::from(identity_zero),
        positivity: AxiomCheck::from(positivity),
        symmetry: AxiomCheck::from(symmetry),
        triangle: AxiomCheck::from(triangle),
        invariance: AxiomCheck::from(invariance),
        max_value,
        claimed_bound: l.claimed_bound(),
        bound_respected,
        center_trivial,
    }
}
