use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{filter_limit, kernel_membership, ultraproduct_norm, FilterLimit, FilterSpec, NormedFamily, TAIL_TOL};
use crate::conjugacy::{covering_exponent, empirical_LS_constant};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::norms::{quotient_length, LengthFunction, TOL};

/// Shape of a finite sequence of values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    /// All values agree to [`TAIL_TOL`].
    Constant,
    StrictlyDecreasing,
    Other,
}

impl Trend {
    pub fn of(values: &[f64]) -> Trend {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if values.is_empty() || hi - lo < TAIL_TOL {
            Trend::Constant
        } else if values.windows(2).all(|w| w[1] < w[0] - TOL) {
            Trend::StrictlyDecreasing
        } else {
            Trend::Other
        }
    }
}

fn window<'a>(values: &'a [f64], filter: &FilterSpec) -> &'a [f64] {
    match *filter {
        FilterSpec::Principal { index } => &values[index.min(values.len() - 1)..=index.min(values.len() - 1)],
        FilterSpec::Tail { window_start } => &values[window_start.min(values.len())..],
    }
}

/// The `h` with `g * h` in `H` minimizing `l(h)`; ties go to the smallest
/// index.
pub fn min_norm_coset_representative(l: &LengthFunction, h: &Subgroup, g: usize) -> Result<(usize, f64)> {
    h.require_normal()?;
    let group = l.group();
    if !Arc::ptr_eq(group, h.parent()) {
        return Err(Error::Misaligned("length and subgroup live on different groups".into()));
    }
    let gi = group.inv(g);
    let mut best = (usize::MAX, f64::INFINITY);
    for &k in h.members() {
        let cand = group.mul(gi, k);
        let v = l.value(cand);
        if v < best.1 || (v == best.1 && cand < best.0) {
            best = (cand, v);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityRow {
    pub index: usize,
    pub param: usize,
    pub group: String,
    pub element: String,
    pub norm: f64,
    pub corrector: String,
    pub corrector_norm: f64,
    /// Largest corrector norm any coset needs: the sup of the quotient length.
    pub worst_corrector_norm: f64,
    pub product_in_subgroup: bool,
    pub covering_exponent: Option<usize>,
    /// `ceil(2c / eps)`.
    pub bound: usize,
    pub within_bound: bool,
    /// `ceil(c * ln|H| / ln|(gh)^H|)`, at least `m` whenever `c` is the
    /// empirical constant of a corpus containing `H`.
    pub ls_bound: Option<usize>,
    /// `ceil(2c * ln|G| / ln|(gh)^G|)` with classes taken in `G`.
    pub group_ratio_bound: Option<usize>,
    /// `ceil(2c * (ln q + ln|H|) / (ln q + ln|(gh)^H|))` for projective groups.
    pub projective_ratio_bound: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectorEvidence {
    /// Corrector norms converge to 0 along the filter.
    Vanishes,
    /// Not converged, but the worst-case corrector norm strictly decreases
    /// over the tail window.
    Decreasing,
    Fails,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityReport {
    pub eps: f64,
    pub ls_constant: f64,
    pub element_limit: FilterLimit,
    pub corrector_limit: FilterLimit,
    pub corrector_evidence: CorrectorEvidence,
    pub products_in_subgroup: bool,
    pub exponents_bounded: bool,
    pub passes: bool,
    pub rows: Vec<SimplicityRow>,
}

fn position(h: &Subgroup, g: usize) -> usize {
    h.members().binary_search(&g).expect("member of the subgroup")
}

/// Checks, index by index, the finite hypotheses behind simplicity of the
/// ultraproduct: a small coset corrector `h_i` with `x_i h_i` in `H_i`, and a
/// covering exponent of `x_i h_i` in `H_i` below `ceil(2c/eps)`. `c` defaults
/// to the empirical constant of the `H_i` themselves.
pub fn simplicity_witness_check(
    fam: &NormedFamily,
    x: &[usize],
    filter: &FilterSpec,
    eps: f64,
    ls_constant: Option<f64>,
) -> Result<SimplicityReport> {
    if !fam.has_subgroups() {
        return Err(Error::Hypothesis("family has no distinguished subgroups".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let element_limit = ultraproduct_norm(fam, x, filter)?;
    if element_limit.lower() <= eps {
        return Err(Error::Hypothesis(format!(
            "the sequence does not stay above eps = {eps} (lower limit {})",
            element_limit.lower()
        )));
    }
    let subs: Vec<Arc<FiniteGroup>> = (0..fam.len()).map(|i| fam.subgroup(i).expect("checked").as_group()).collect();
    let c = match ls_constant {
        Some(c) => c,
        None => empirical_LS_constant(&subs)?.constant,
    };
    let bound = (2.0 * c / eps).ceil() as usize;
    let rows = (0..fam.len())
        .into_par_iter()
        .map(|i| {
            let group = fam.group(i);
            let l = fam.norm(i);
            let h = fam.subgroup(i).expect("checked");
            let (corr, corrector_norm) = min_norm_coset_representative(l, h, x[i])?;
            let worst = quotient_length(l, h)?.sup();
            let prod = group.mul(x[i], corr);
            let inside = h.contains(prod);
            let sub = &subs[i];
            let (m, ls_bound, projective) = if inside {
                let local = position(h, prod);
                let report = covering_exponent(sub, local);
                let class = report.class_size as f64;
                let ls = (report.class_size > 1).then(|| (c * (sub.order() as f64).ln() / class.ln()).ceil() as usize);
                let projective = match (group.is_projective(), group.field()) {
                    (true, Some(field)) if report.class_size > 1 => {
                        let lq = (field.q() as f64).ln();
                        Some((2.0 * c * (lq + (sub.order() as f64).ln()) / (lq + class.ln())).ceil() as usize)
                    }
                    _ => None,
                };
                (report.exponent, ls, projective)
            } else {
                (None, None, None)
            };
            let class_g = group.class_size(prod) as f64;
            let group_ratio = (class_g > 1.0).then(|| (2.0 * c * (group.order() as f64).ln() / class_g.ln()).ceil() as usize);
            Ok(SimplicityRow {
                index: i,
                param: fam.params()[i],
                group: group.descriptor().to_string(),
                element: group.format_element(x[i]),
                norm: l.value(x[i]),
                corrector: group.format_element(corr),
                corrector_norm,
                worst_corrector_norm: worst,
                product_in_subgroup: inside,
                covering_exponent: m,
                bound,
                within_bound: m.is_some_and(|m| m <= bound),
                ls_bound,
                group_ratio_bound: group_ratio,
                projective_ratio_bound: projective,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let corrector_norms: Vec<f64> = rows.iter().map(|r| r.corrector_norm).collect();
    let corrector_limit = filter_limit(&corrector_norms, filter)?;
    let worst: Vec<f64> = rows.iter().map(|r| r.worst_corrector_norm).collect();
    let corrector_evidence = match corrector_limit {
        FilterLimit::Converged { value } if value.abs() < TAIL_TOL => CorrectorEvidence::Vanishes,
        _ if matches!(filter, FilterSpec::Tail { .. }) && Trend::of(window(&worst, filter)) == Trend::StrictlyDecreasing => {
            CorrectorEvidence::Decreasing
        }
        _ => CorrectorEvidence::Fails,
    };
    let products_in_subgroup = rows.iter().all(|r| r.product_in_subgroup);
    let exponents_bounded = rows.iter().all(|r| r.within_bound);
    Ok(SimplicityReport {
        eps,
        ls_constant: c,
        element_limit,
        corrector_limit,
        passes: corrector_evidence != CorrectorEvidence::Fails && products_in_subgroup && exponents_bounded,
        corrector_evidence,
        products_in_subgroup,
        exponents_bounded,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallNormRow {
    pub index: usize,
    pub param: usize,
    pub group: String,
    pub small_count: usize,
    pub is_subgroup: bool,
    pub is_normal: bool,
    /// Largest norm inside the small set.
    pub sup_inside: f64,
    /// Smallest norm outside it; `None` when the set is everything.
    pub inf_outside: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallNormReport {
    pub threshold: f64,
    pub rows: Vec<SmallNormRow>,
    pub sequences: usize,
    pub small_sequences: usize,
    /// Sequence-level closure failures, described.
    pub violations: Vec<String>,
    pub closed: bool,
}

/// Largest group order the per-index small-set enumeration accepts.
pub const SMALL_SET_CAP: usize = 1_000_000;

fn below(v: f64, threshold: f64) -> bool {
    v < threshold || v.abs() <= TOL
}

/// Sequence is small when every limit the filter allows is below the
/// threshold (for threshold 0: when it lies in the kernel).
fn sequence_small(fam: &NormedFamily, x: &[usize], filter: &FilterSpec, threshold: f64) -> Result<bool> {
    if threshold <= 0.0 {
        return Ok(kernel_membership(fam, x, filter)?.member == Some(true));
    }
    Ok(ultraproduct_norm(fam, x, filter)?.upper() < threshold)
}

/// Checks that `{x : l(x) < threshold}` behaves as a normal subgroup: index by
/// index on the full groups, and at sequence level over `samples` random
/// sequences (half of them drawn from the per-index small sets).
pub fn small_norm_subgroup(
    fam: &NormedFamily,
    threshold: f64,
    filter: &FilterSpec,
    samples: usize,
    seed: u64,
) -> Result<SmallNormReport> {
    let small_sets: Vec<Vec<usize>> = (0..fam.len())
        .into_par_iter()
        .map(|i| {
            let group = fam.group(i);
            if group.order() > SMALL_SET_CAP {
                return Err(Error::Capacity {
                    order: group.order() as u128,
                    cap: SMALL_SET_CAP,
                });
            }
            let l = fam.norm(i);
            Ok(group.elements().filter(|&g| below(l.value(g), threshold)).collect())
        })
        .collect::<Result<_>>()?;
    let rows: Vec<SmallNormRow> = (0..fam.len())
        .into_par_iter()
        .map(|i| {
            let group = fam.group(i);
            let l = fam.norm(i);
            let set = &small_sets[i];
            let sub = Subgroup::from_members(group, set).ok();
            let mut inside = vec![false; group.order()];
            for &g in set {
                inside[g] = true;
            }
            let inf_outside = group
                .elements()
                .filter(|&g| !inside[g])
                .map(|g| l.value(g))
                .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
            SmallNormRow {
                index: i,
                param: fam.params()[i],
                group: group.descriptor().to_string(),
                small_count: set.len(),
                is_subgroup: sub.is_some(),
                is_normal: sub.as_ref().is_some_and(|s| s.is_normal()),
                sup_inside: set.iter().map(|&g| l.value(g)).fold(0.0, f64::max),
                inf_outside,
            }
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Vec<usize>> = (0..samples)
        .map(|k| {
            (0..fam.len())
                .map(|i| {
                    if k % 2 == 0 {
                        small_sets[i][rng.gen_range(0..small_sets[i].len())]
                    } else {
                        rng.gen_range(0..fam.group(i).order())
                    }
                })
                .collect()
        })
        .collect();
    let small: Vec<&Vec<usize>> = pool
        .iter()
        .filter_map(|x| match sequence_small(fam, x, filter, threshold) {
            Ok(true) => Some(Ok(x)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for (k, x) in small.iter().enumerate() {
        let y = small[(k + 1) % small.len()];
        let z = &pool[rng.gen_range(0..pool.len())];
        for (what, seq) in [
            ("product", fam.mul(x, y)),
            ("inverse", fam.inv(x)),
            ("conjugate", fam.conjugate(x, z)),
        ] {
            if !sequence_small(fam, &seq, filter, threshold)? {
                violations.push(format!("{what} of small sequence {k} leaves the small set"));
            }
        }
    }
    Ok(SmallNormReport {
        threshold,
        sequences: pool.len(),
        small_sequences: small.len(),
        closed: violations.is_empty() && rows.iter().all(|r| r.is_subgroup && r.is_normal),
        rows,
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelClosureReport {
    pub sequences: usize,
    /// Sequences whose norm limit the filter determines.
    pub converged: usize,
    /// Converged sequences with limit 0.
    pub members: usize,
    pub checks: usize,
    pub violations: Vec<String>,
    pub closed: bool,
}

/// Sequence-level closure of the kernel under product, inverse and
/// conjugation. Nothing is enumerated, so members may be lazily indexed.
///
/// Even-numbered samples are random up to a random cutoff and the identity
/// after it; odd-numbered samples are random throughout. Only sequences the
/// filter flags as converged members take part.
pub fn kernel_closure_check(fam: &NormedFamily, filter: &FilterSpec, samples: usize, seed: u64) -> Result<KernelClosureReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = fam.len();
    let pool: Vec<Vec<usize>> = (0..samples)
        .map(|k| {
            let cutoff = if k % 2 == 0 { rng.gen_range(0..=len) } else { len };
            (0..len)
                .map(|i| {
                    let g = fam.group(i);
                    if i < cutoff {
                        rng.gen_range(0..g.order())
                    } else {
                        g.identity()
                    }
                })
                .collect()
        })
        .collect();
    let statuses: Vec<Option<bool>> = pool
        .par_iter()
        .map(|x| kernel_membership(fam, x, filter).map(|s| s.member))
        .collect::<Result<_>>()?;
    let members: Vec<&Vec<usize>> = pool.iter().zip(&statuses).filter(|(_, s)| **s == Some(true)).map(|(x, _)| x).collect();
    let mut violations = Vec::new();
    let mut checks = 0;
    for (k, x) in members.iter().enumerate() {
        let y = members[(k + 1) % members.len()];
        let z = &pool[rng.gen_range(0..pool.len())];
        for (what, seq) in [
            ("product", fam.mul(x, y)),
            ("inverse", fam.inv(x)),
            ("conjugate", fam.conjugate(x, z)),
        ] {
            checks += 1;
            let status = kernel_membership(fam, &seq, filter)?;
            if status.member != Some(true) {
                violations.push(format!("{what} of member {k} has limit {:?}", status.limit));
            }
        }
    }
    Ok(KernelClosureReport {
        sequences: pool.len(),
        converged: statuses.iter().filter(|s| s.is_some()).count(),
        members: members.len(),
        checks,
        closed: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscretenessRow {
    pub index: usize,
    pub param: usize,
    pub group: String,
    /// Smallest nonzero norm, with an element attaining it.
    pub min_nonzero: Option<f64>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscretenessReport {
    pub rows: Vec<DiscretenessRow>,
    pub window_start: usize,
    pub trend: Trend,
    pub infimum: Option<f64>,
    /// `Some(true)` for a constant positive tail, `Some(false)` for a strictly
    /// decreasing one, `None` otherwise.
    pub discrete: Option<bool>,
}

/// Smallest nonzero norm per index and the trend of those minima over the
/// indices from `window_start` on (default: the second half of the prefix).
pub fn discreteness_check(fam: &NormedFamily, window_start: Option<usize>) -> Result<DiscretenessReport> {
    let rows: Vec<DiscretenessRow> = (0..fam.len())
        .into_par_iter()
        .map(|i| {
            let group = fam.group(i);
            let l = fam.norm(i);
            let best = group
                .elements()
                .into_par_iter()
                .map(|g| (l.value(g), g))
                .filter(|&(v, _)| v > TOL)
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            DiscretenessRow {
                index: i,
                param: fam.params()[i],
                group: group.descriptor().to_string(),
                min_nonzero: best.map(|b| b.0),
                witness: best.map(|b| group.format_element(b.1)),
            }
        })
        .collect();
    let start = window_start.unwrap_or(fam.len() / 2);
    if start >= fam.len() {
        return Err(Error::Misaligned(format!("window {start} outside a prefix of {}", fam.len())));
    }
    let minima: Option<Vec<f64>> = rows[start..].iter().map(|r| r.min_nonzero).collect();
    let trend = minima.as_deref().map_or(Trend::Other, Trend::of);
    let discrete = match trend {
        Trend::Constant => Some(true),
        Trend::StrictlyDecreasing => Some(false),
        Trend::Other => None,
    };
    Ok(DiscretenessReport {
        infimum: rows.iter().filter_map(|r| r.min_nonzero).reduce(f64::min),
        rows,
        window_start: start,
        trend,
        discrete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct_group;
    use crate::norms::hamming;

    #[test]
    fn trends() {
        assert_eq!(Trend::of(&[0.5, 0.5]), Trend::Constant);
        assert_eq!(Trend::of(&[0.5, 0.4, 0.1]), Trend::StrictlyDecreasing);
        assert_eq!(Trend::of(&[0.5, 0.6]), Trend::Other);
    }

    #[test]
    fn coset_representatives() {
        let s5 = construct_group("S:5").unwrap();
        let l = hamming(&s5).unwrap();
        let a5 = Subgroup::even_permutations(&s5).unwrap();
        let g = s5.parse_element("(0 1 2 3)").unwrap();
        let (h, v) = min_norm_coset_representative(&l, &a5, g).unwrap();
        assert!(a5.contains(s5.mul(g, h)));
        assert_eq!(v, 2.0 / 5.0);
        let e = s5.parse_element("(0 1 2)").unwrap();
        assert_eq!(min_norm_coset_representative(&l, &a5, e).unwrap(), (s5.identity(), 0.0));
    }
}
