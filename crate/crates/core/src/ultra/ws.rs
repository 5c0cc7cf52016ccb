use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::conjugacy::{eval_word, reduce_word, ConjugacyGraph, Word};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::norms::{
    conjugacy_length, lift_length, quotient_length, verify_axioms, AxiomReport, LengthFunction, TOL,
};

/// The concave correction used by the weakly sofic construction:
/// `x^(1/s)` above 9/10 and linear below, continuous at 9/10.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gamma {
    pub s: u32,
    pub p: f64,
}

const KNEE: f64 = 0.9;

impl Gamma {
    /// Requires `s > 1` and `m0^(1/s) < 2`, where `m0` bounds the norm fed in.
    pub fn new(s: u32, m0: f64) -> Result<Gamma> {
        if s < 2 {
            return Err(Error::Hypothesis(format!("gamma needs s > 1, got {s}")));
        }
        if !(m0 >= 0.0) || m0.powf(1.0 / s as f64) >= 2.0 {
            return Err(Error::Hypothesis(format!("m0^(1/s) = {m0}^(1/{s}) is not below 2")));
        }
        Ok(Gamma {
            s,
            p: KNEE.powf(1.0 / s as f64 - 1.0),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x > KNEE {
            x.powf(1.0 / self.s as f64)
        } else {
            self.p * x
        }
    }

    /// Range of `p`, continuity at the knee, monotonicity and subadditivity on
    /// the grid `{0, 0.01, ..., m0}`.
    pub fn check(&self, m0: f64) -> GammaReport {
        let steps = (m0 * 100.0 + 1e-9).floor() as usize;
        let mut grid: Vec<f64> = (0..=steps).map(|i| i as f64 / 100.0).collect();
        if grid.last().is_some_and(|&x| x < m0) {
            grid.push(m0);
        }
        let continuity_gap = (KNEE.powf(1.0 / self.s as f64) - self.p * KNEE).abs();
        let values: Vec<f64> = grid.iter().map(|&x| self.eval(x)).collect();
        let monotone = values.windows(2).all(|w| w[1] >= w[0] - TOL);
        let mut worst = None;
        'outer: for &x in &grid {
            for &y in &grid {
                if self.eval(x + y) > self.eval(x) + self.eval(y) + TOL {
                    worst = Some((x, y));
                    break 'outer;
                }
            }
        }
        GammaReport {
            s: self.s,
            p: self.p,
            p_in_range: (1.0..=10.0 / 9.0).contains(&self.p),
            continuity_gap,
            continuous: continuity_gap <= TOL,
            monotone,
            subadditive: worst.is_none(),
            subadditivity_counterexample: worst,
            grid_points: grid.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaReport {
    pub s: u32,
    pub p: f64,
    pub p_in_range: bool,
    pub continuity_gap: f64,
    pub continuous: bool,
    pub monotone: bool,
    pub subadditive: bool,
    pub subadditivity_counterexample: Option<(f64, f64)>,
    pub grid_points: usize,
}

impl GammaReport {
    pub fn holds(&self) -> bool {
        self.p_in_range && self.continuous && self.monotone && self.subadditive
    }
}

/// Input of the weakly sofic norm construction. `phi` is the homomorphism from
/// the free group on `generator_images.len()` letters, `in_n` and `in_n1`
/// decide membership of words in the normal subgroups `N ⊆ N1`.
pub struct WsInstance<'a> {
    pub group: Arc<FiniteGroup>,
    pub generator_images: Vec<usize>,
    pub d_words: Vec<Word>,
    pub in_n: &'a (dyn Fn(&[i32]) -> bool + Sync),
    pub in_n1: &'a (dyn Fn(&[i32]) -> bool + Sync),
    pub subgroup: Subgroup,
    pub eps: f64,
    pub s: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdClass {
    /// `w` in `D^3 ∩ N`: below `10/9 eps`.
    TripleInN,
    /// `w` in `D \ N`: at least 9/40.
    OutsideN,
    /// `w` in `D ∩ N1`: below 1/2.
    InN1,
    /// `w` in `D \ N` with `phi(w)` outside `H`: above 21/40.
    OutsideHAndN,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub class: ThresholdClass,
    pub word: Word,
    pub element: String,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WsReport {
    /// Three times the longest word of `D`.
    pub r: usize,
    /// Representatives of the classes `phi(w)^G`, `w` in `N`, `|w| <= r`.
    pub delta: Vec<String>,
    pub words_scanned: usize,
    /// Largest value of `eps * l_Delta`.
    pub m0: f64,
    pub gamma: GammaReport,
    pub values: Vec<f64>,
    pub axioms: AxiomReport,
    pub rows: Vec<ThresholdRow>,
    pub thresholds_hold: bool,
    #[serde(skip)]
    pub length: Option<LengthFunction>,
}

/// All reduced words over `k` letters of length at most `r`, shortlex.
pub fn reduced_words(k: usize, r: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=k as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Builds `tilde-l = γ(l)/4 + [g ∉ H] γ(l_{G/H})/3` from `l = eps * l_Delta`
/// and evaluates the four threshold classes on the instance.
pub fn ws_norm_builder(inst: &WsInstance) -> Result<WsReport> {
    let group = &inst.group;
    let h = &inst.subgroup;
    if !Arc::ptr_eq(h.parent(), group) {
        return Err(Error::Misaligned("subgroup of a different group".into()));
    }
    h.require_normal()?;
    if !(inst.eps > 0.0 && inst.eps < 0.25) {
        return Err(Error::Hypothesis(format!("eps must lie in (0, 1/4), got {}", inst.eps)));
    }
    let k = inst.generator_images.len();
    let phi = |w: &[i32]| eval_word(group, &inst.generator_images, w);
    let r = 3 * inst.d_words.iter().map(|w| w.len()).max().unwrap_or(0);
    let ball = reduced_words(k, r);
    let mut delta_elems = BTreeSet::new();
    for w in &ball {
        if (inst.in_n)(w) {
            delta_elems.insert(group.classes().representative(group.classes().class_of(phi(w)?)));
        }
    }
    let delta_elems: Vec<usize> = delta_elems.into_iter().collect();
    let graph = ConjugacyGraph::build(group, &delta_elems);
    let base_values: Vec<f64> = group.elements().map(|g| inst.eps * graph.length(g) as f64).collect();
    let m0 = base_values.iter().copied().fold(0.0, f64::max);
    let gamma = Gamma::new(inst.s, m0)?;
    let base = LengthFunction::from_values(group.clone(), base_values, "eps*delta", true, None)?;
    let lifted = lift_length(&quotient_length(&base, h)?)?;
    let values: Vec<f64> = group
        .elements()
        .map(|g| {
            let mut v = gamma.eval(base.value(g)) / 4.0;
            if !h.contains(g) {
                v += gamma.eval(lifted.value(g)) / 3.0;
            }
            v
        })
        .collect();
    let length = LengthFunction::from_values(group.clone(), values.clone(), "ws", true, None)?;
    let axioms = verify_axioms(&length);

    let mut rows = Vec::new();
    let mut push = |class, word: &Word, bound: f64, holds: &dyn Fn(f64) -> bool| -> Result<()> {
        let g = phi(word)?;
        let value = values[g];
        rows.push(ThresholdRow {
            class,
            word: word.clone(),
            element: group.format_element(g),
            value,
            bound,
            holds: holds(value),
        });
        Ok(())
    };
    let triple_bound = 10.0 / 9.0 * inst.eps;
    let mut seen = BTreeSet::new();
    for a in &inst.d_words {
        for b in &inst.d_words {
            for c in &inst.d_words {
                let w = reduce_word(&[a.as_slice(), b, c].concat());
                if (inst.in_n)(&w) && seen.insert(w.clone()) {
                    push(ThresholdClass::TripleInN, &w, triple_bound, &|v| v < triple_bound)?;
                }
            }
        }
    }
    for w in &inst.d_words {
        let in_n = (inst.in_n)(w);
        if !in_n {
            push(ThresholdClass::OutsideN, w, 9.0 / 40.0, &|v| v >= 9.0 / 40.0)?;
            if !h.contains(phi(w)?) {
                push(ThresholdClass::OutsideHAndN, w, 21.0 / 40.0, &|v| v > 21.0 / 40.0)?;
            }
        }
        if (inst.in_n1)(w) {
            push(ThresholdClass::InN1, w, 0.5, &|v| v < 0.5)?;
        }
    }
    Ok(WsReport {
        r,
        delta: delta_elems.iter().map(|&d| group.format_element(d)).collect(),
        words_scanned: ball.len(),
        m0,
        gamma: gamma.check(m0),
        values,
        axioms,
        thresholds_hold: rows.iter().all(|r| r.holds),
        rows,
        length: Some(length),
    })
}

/// Smallest `s` with `v^(1/s) > 1/2` for every value, i.e. with
/// `v^(1/s) / 2 > 1/4`. Values must lie in `(0, 1]`.
pub fn minimal_star_exponent(values: &[f64]) -> Result<u32> {
    let mut s = 1u32;
    for &v in values {
        if !(v > 0.0 && v <= 1.0 + TOL) {
            return Err(Error::Hypothesis(format!("value {v} outside (0, 1]; no exponent works")));
        }
        while v.powf(1.0 / s as f64) <= 0.5 {
            s += 1;
        }
    }
    Ok(s)
}

/// Smallest `s` such that `(l_c)^{*s1}_H` exceeds 1/4 on every element of
/// `targets` (and 1/2 off `H`, which holds for every `s`). Central targets
/// admit no `s`.
pub fn choose_star_exponent(group: &Arc<FiniteGroup>, h: &Subgroup, targets: &[usize]) -> Result<u32> {
    h.require_normal()?;
    let mut inside = Vec::new();
    for &g in targets {
        if group.is_central(g) {
            return Err(Error::Hypothesis(format!("{} is central", group.format_element(g))));
        }
        if h.contains(g) {
            inside.push(conjugacy_length(group, g)?);
        }
    }
    minimal_star_exponent(&inside)
}
