//! Restriction, quotient, lift and the correction operators.

use std::sync::Arc;

use super::{LengthFunction, TOL};
use crate::error::{Error, Result};
use crate::group::{quotient_group, FiniteGroup, Subgroup};

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    std::ptr::eq(a, b) || (a.descriptor() == b.descriptor() && a.order() == b.order())
}

fn check_parent(l: &LengthFunction, h: &Subgroup) -> Result<()> {
    if same_group(l.group(), h.parent()) {
        Ok(())
    } else {
        Err(Error::Incompatible(format!(
            "subgroup of {} used with a length function on {}",
            h.parent().descriptor(),
            l.group().descriptor()
        )))
    }
}

/// Pointwise restriction to `h`, as a length function on `h` viewed as a group.
pub fn restrict_length(l: &LengthFunction, h: &Subgroup) -> Result<LengthFunction> {
    check_parent(l, h)?;
    let values = h.members().iter().map(|&x| l.value(x)).collect();
    LengthFunction::from_values(
        h.as_group(),
        values,
        format!("restrict({})", l.name()),
        l.claimed_invariant(),
        l.claimed_bound(),
    )
}

/// Quotient group and the minimum of `l` over each coset.
fn coset_minima(l: &LengthFunction, h: &Subgroup) -> Result<(Arc<FiniteGroup>, Vec<f64>)> {
    check_parent(l, h)?;
    let quotient = quotient_group(h)?;
    let (_, coset_of, _) = quotient.quotient_parts().expect("quotient group");
    let mut mins = vec![f64::INFINITY; quotient.order()];
    for g in l.group().elements() {
        let c = coset_of[g] as usize;
        mins[c] = mins[c].min(l.value(g));
    }
    Ok((quotient, mins))
}

/// `l_{G/H}(gH) = min_{h in H} l(gh)`.
pub fn quotient_length(l: &LengthFunction, h: &Subgroup) -> Result<LengthFunction> {
    let (quotient, mins) = coset_minima(l, h)?;
    LengthFunction::from_values(
        quotient,
        mins,
        format!("quotient({})", l.name()),
        l.claimed_invariant(),
        l.claimed_bound(),
    )
}

/// Pull-back of a length function on a quotient group: `l^G(g) = l(gH)`.
pub fn lift_length(lq: &LengthFunction) -> Result<LengthFunction> {
    let (parent, coset_of, _) = lq
        .group()
        .quotient_parts()
        .ok_or_else(|| Error::Incompatible(format!("{} is not a quotient group", lq.group().descriptor())))?;
    let values = coset_of.iter().map(|&c| lq.value(c as usize)).collect();
    LengthFunction::from_values(
        parent.clone(),
        values,
        format!("lift({})", lq.name()),
        lq.claimed_invariant(),
        lq.claimed_bound(),
    )
}

/// `l^{1/s} / (k+1)` on `h`, `1` off `h`. Needs `k >= max(1, sup l)`.
pub fn star_correction(l: &LengthFunction, h: &Subgroup, s: u32, k: u32) -> Result<LengthFunction> {
    check_parent(l, h)?;
    h.require_normal()?;
    if s == 0 || k == 0 {
        return Err(Error::Domain("star correction needs positive integers s and k".into()));
    }
    let sup = l.sup();
    if (k as f64) + TOL < sup {
        return Err(Error::Hypothesis(format!("k = {k} is below sup l = {sup}")));
    }
    let inv_s = 1.0 / s as f64;
    let scale = 1.0 / (k as f64 + 1.0);
    let values = l
        .group()
        .elements()
        .map(|g| if h.contains(g) { l.value(g).powf(inv_s) * scale } else { 1.0 })
        .collect();
    LengthFunction::from_values(
        l.group().clone(),
        values,
        format!("star({},{s},{k})", l.name()),
        l.claimed_invariant(),
        Some(1.0),
    )
}

/// `t/(t+1) * l_{G/H}(gH)^{1/s} + l(g)^{1/s'} / (t+1)`. Needs `sup l <= 1`.
pub fn blend_correction(l: &LengthFunction, h: &Subgroup, s: u32, s2: u32, t: u32) -> Result<LengthFunction> {
    h.require_normal()?;
    if s == 0 || s2 == 0 || t == 0 {
        return Err(Error::Domain("blend correction needs positive integers s, s' and t".into()));
    }
    let sup = l.sup();
    if sup > 1.0 + TOL {
        return Err(Error::Hypothesis(format!("blend correction needs sup l <= 1, got {sup}")));
    }
    let (quotient, mins) = coset_minima(l, h)?;
    let (_, coset_of, _) = quotient.quotient_parts().expect("quotient group");
    let t = t as f64;
    let (a, b) = (t / (t + 1.0), 1.0 / (t + 1.0));
    let (e1, e2) = (1.0 / s as f64, 1.0 / s2 as f64);
    let values = l
        .group()
        .elements()
        .map(|g| a * mins[coset_of[g] as usize].powf(e1) + b * l.value(g).powf(e2))
        .collect();
    LengthFunction::from_values(
        l.group().clone(),
        values,
        format!("blend({},{s},{s2},{})", l.name(), t as u32),
        l.claimed_invariant(),
        Some(1.0),
    )
}

/// `l / (1 + l)`.
pub fn normalize_bounded(l: &LengthFunction) -> LengthFunction {
    let name = format!("normalize({})", l.name());
    if l.is_tabulated() {
        let values = l.values().into_iter().map(|v| v / (1.0 + v)).collect();
        LengthFunction::from_values(l.group().clone(), values, name, l.claimed_invariant(), Some(1.0))
            .expect("normalizing keeps values valid")
    } else {
        let inner = l.clone();
        LengthFunction::pointwise(l.group().clone(), name, l.claimed_invariant(), Some(1.0), move |g| {
            let v = inner.value(g);
            v / (1.0 + v)
        })
    }
}
