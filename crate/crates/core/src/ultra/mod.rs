//! Finite-prefix stand-ins for metric ultraproducts: families of normed
//! groups, filter limits, kernel membership, and the witness checks built on
//! them.

mod approx;
mod family;
mod witness;
mod ws;

use serde::Serialize;

use crate::error::{Error, Result};

pub use approx::{
    free_product_is_trivial, verify_approximation_witness, verify_lef_separation, verify_lef_witness, ApproxReport,
    ApproxWitness, LefFailure, LefReport, LefSeparationReport, PartialTable,
};
pub use family::{FamilyParams, FamilyRule, NormedFamily, DEFAULT_PREFIX};
pub use witness::{
    discreteness_check, kernel_closure_check, min_norm_coset_representative, simplicity_witness_check, small_norm_subgroup,
    CorrectorEvidence, KernelClosureReport,
    DiscretenessReport, DiscretenessRow, SimplicityReport, SimplicityRow, SmallNormReport, SmallNormRow, Trend, SMALL_SET_CAP,
};
pub use ws::{
    choose_star_exponent, minimal_star_exponent, reduced_words, ws_norm_builder, Gamma, GammaReport, ThresholdClass, ThresholdRow,
    WsInstance, WsReport,
};

/// Window oscillation below which a tail is declared convergent.
pub const TAIL_TOL: f64 = 1e-9;

/// Approximation of "the limit along an ultrafilter" on a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FilterSpec {
    /// The principal ultrafilter at one index: limits are values there.
    Principal { index: usize },
    /// Indices from `window_start` on; convergent when they agree to
    /// [`TAIL_TOL`].
    Tail { window_start: usize },
}

impl FilterSpec {
    /// `principal:i` or `tail:k`.
    pub fn parse(text: &str) -> Result<FilterSpec> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("expected principal:i or tail:k, got {text:?}")))?;
        let value: usize = arg.trim().parse().map_err(|_| Error::parse(kind.len() + 1, "expected an index"))?;
        match kind.trim() {
            "principal" => Ok(FilterSpec::Principal { index: value }),
            "tail" => Ok(FilterSpec::Tail { window_start: value }),
            other => Err(Error::parse(0, format!("unknown filter {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum FilterLimit {
    /// The filter determines the limit.
    Converged { value: f64 },
    /// The window still oscillates: any value in `[liminf, limsup]` is the
    /// limit along some ultrafilter extending the tail.
    UltrafilterDependent { liminf: f64, limsup: f64 },
}

impl FilterLimit {
    pub fn value(&self) -> Option<f64> {
        match self {
            FilterLimit::Converged { value } => Some(*value),
            FilterLimit::UltrafilterDependent { .. } => None,
        }
    }

    pub fn lower(&self) -> f64 {
        match self {
            FilterLimit::Converged { value } => *value,
            FilterLimit::UltrafilterDependent { liminf, .. } => *liminf,
        }
    }

    pub fn upper(&self) -> f64 {
        match self {
            FilterLimit::Converged { value } => *value,
            FilterLimit::UltrafilterDependent { limsup, .. } => *limsup,
        }
    }
}

pub fn filter_limit(values: &[f64], filter: &FilterSpec) -> Result<FilterLimit> {
    if values.is_empty() {
        return Err(Error::Domain("filter limit of an empty prefix".into()));
    }
    match *filter {
        FilterSpec::Principal { index } => values
            .get(index)
            .map(|&value| FilterLimit::Converged { value })
            .ok_or_else(|| Error::Misaligned(format!("principal index {index} outside a prefix of {}", values.len()))),
        FilterSpec::Tail { window_start } => {
            let window = values
                .get(window_start..)
                .filter(|w| !w.is_empty())
                .ok_or_else(|| Error::Misaligned(format!("tail window {window_start} outside a prefix of {}", values.len())))?;
            let lo = window.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi - lo < TAIL_TOL {
                Ok(FilterLimit::Converged {
                    value: window.iter().sum::<f64>() / window.len() as f64,
                })
            } else {
                Ok(FilterLimit::UltrafilterDependent { liminf: lo, limsup: hi })
            }
        }
    }
}

/// Membership of a sequence in the kernel `{x : lim l(x_i) = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelStatus {
    /// `None` when the answer depends on the ultrafilter.
    pub member: Option<bool>,
    pub limit: FilterLimit,
}

/// Per-index elements of a family, `x[i]` in the `i`-th group.
pub type ElementSequence = Vec<usize>;

pub fn ultraproduct_norm(fam: &NormedFamily, x: &[usize], filter: &FilterSpec) -> Result<FilterLimit> {
    filter_limit(&fam.norm_values(x)?, filter)
}

pub fn kernel_membership(fam: &NormedFamily, x: &[usize], filter: &FilterSpec) -> Result<KernelStatus> {
    let limit = ultraproduct_norm(fam, x, filter)?;
    let member = match limit {
        FilterLimit::Converged { value } => Some(value.abs() < TAIL_TOL),
        // a moving window says nothing about the limit at infinity
        FilterLimit::UltrafilterDependent { .. } => None,
    };
    Ok(KernelStatus { member, limit })
}
