use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{construct_group_with_cap, FiniteGroup, Subgroup};
use crate::matrix::ClassicalFamily;
use crate::norms::{verify_axioms_with, AxiomReport, LengthFunction, NormSpec, SubgroupSpec, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n_start: usize,
    #[serde(default = "one")]
    pub n_step: usize,
    #[serde(default)]
    pub q: Option<u32>,
    /// Number of indices; defaults to 12.
    #[serde(default)]
    pub count: Option<usize>,
}

fn one() -> usize {
    1
}

/// JSON family rule: `{rule, params: {n_start, n_step, q, count}, norm,
/// subgroup}`. The norm spec may use `n` for the index parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRule {
    pub rule: String,
    pub params: FamilyParams,
    pub norm: String,
    #[serde(default)]
    pub subgroup: Option<String>,
}

pub const DEFAULT_PREFIX: usize = 12;

impl FamilyRule {
    pub fn from_json(text: &str) -> Result<FamilyRule> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn parameters(&self) -> Vec<usize> {
        let count = self.params.count.unwrap_or(DEFAULT_PREFIX);
        (0..count).map(|i| self.params.n_start + i * self.params.n_step).collect()
    }

    /// Group descriptor for parameter `n`.
    pub fn descriptor(&self, n: usize) -> Result<String> {
        let rule = self.rule.trim();
        match rule.to_ascii_lowercase().as_str() {
            "symmetric" | "s" => return Ok(format!("S:{n}")),
            "alternating" | "a" => return Ok(format!("A:{n}")),
            _ => {}
        }
        let name = match rule.to_ascii_lowercase().as_str() {
            "unitary" | "u" => "U".to_string(),
            "special-unitary" | "su" => "SU".to_string(),
            "gl" => "GL".into(),
            "sl" => "SL".into(),
            "pgl" => "PGL".into(),
            "psl" => "PSL".into(),
            "sp" | "symplectic" => "Sp".into(),
            "oplus" => "Oplus".into(),
            "ominus" => "Ominus".into(),
            _ => rule.to_string(),
        };
        let family: ClassicalFamily = name
            .parse()
            .map_err(|_| Error::descriptor(rule, "unknown family rule"))?;
        let q = self
            .params
            .q
            .ok_or_else(|| Error::descriptor(rule, "matrix family rules need params.q"))?;
        Ok(format!("{family}:{n}:{q}"))
    }

    /// Builds every index, in parallel. Symmetric and alternating groups stay
    /// lazy unless the norm or subgroup needs the full element list.
    pub fn build(&self, cap: usize) -> Result<NormedFamily> {
        let params = self.parameters();
        if params.is_empty() {
            return Err(Error::Domain("family rule with no indices".into()));
        }
        let sub = self.subgroup.as_deref().map(SubgroupSpec::parse).transpose()?;
        let members: Vec<(Arc<FiniteGroup>, LengthFunction, Option<Subgroup>)> = params
            .par_iter()
            .map(|&n| {
                let desc = self.descriptor(n)?;
                let spec = NormSpec::parse_with_n(&self.norm, Some(n))?;
                let lazy_ok = sub.is_none() && matches!(spec, NormSpec::Hamming | NormSpec::Lc);
                let group = construct_group_with_cap(&desc, if lazy_ok { usize::MAX } else { cap })?;
                let l = spec.build(&group)?;
                let h = sub.as_ref().map(|s| s.resolve(&group)).transpose()?;
                Ok((group, l, h))
            })
            .collect::<Result<_>>()?;
        let has_sub = sub.is_some();
        let mut norms = Vec::with_capacity(members.len());
        let mut subs = Vec::with_capacity(members.len());
        for (_, l, h) in members {
            norms.push(l);
            if let Some(h) = h {
                subs.push(h);
            }
        }
        NormedFamily::new(self.describe(), params, norms, has_sub.then_some(subs))
    }

    fn describe(&self) -> String {
        let mut s = format!("{} n={}+{}k", self.rule, self.params.n_start, self.params.n_step);
        if let Some(q) = self.params.q {
            s.push_str(&format!(" q={q}"));
        }
        s.push_str(&format!(" norm={}", self.norm));
        if let Some(h) = &self.subgroup {
            s.push_str(&format!(" subgroup={h}"));
        }
        s
    }
}

/// A finite prefix `(G_i, l_i, H_i)` of a sequence of normed groups.
#[derive(Debug, Clone)]
pub struct NormedFamily {
    rule: String,
    params: Vec<usize>,
    norms: Vec<LengthFunction>,
    subgroups: Option<Vec<Arc<Subgroup>>>,
}

impl NormedFamily {
    /// `subgroups`, when given, must be normal and align with `norms`.
    pub fn new(
        rule: impl Into<String>,
        params: Vec<usize>,
        norms: Vec<LengthFunction>,
        subgroups: Option<Vec<Subgroup>>,
    ) -> Result<NormedFamily> {
        if norms.is_empty() {
            return Err(Error::Domain("empty family".into()));
        }
        if params.len() != norms.len() {
            return Err(Error::Misaligned(format!("{} parameters for {} norms", params.len(), norms.len())));
        }
        let subgroups = match subgroups {
            None => None,
            Some(subs) => {
                if subs.len() != norms.len() {
                    return Err(Error::Misaligned(format!("{} subgroups for {} norms", subs.len(), norms.len())));
                }
                for (h, l) in subs.iter().zip(&norms) {
                    if !Arc::ptr_eq(h.parent(), l.group()) {
                        return Err(Error::Misaligned("subgroup and norm live on different groups".into()));
                    }
                    h.require_normal()?;
                }
                Some(subs.into_iter().map(Arc::new).collect())
            }
        };
        Ok(NormedFamily {
            rule: rule.into(),
            params,
            norms,
            subgroups,
        })
    }

    pub fn rule(&self) -> &str {
        &self.rule
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn group(&self, i: usize) -> &Arc<FiniteGroup> {
        self.norms[i].group()
    }

    pub fn norm(&self, i: usize) -> &LengthFunction {
        &self.norms[i]
    }

    pub fn subgroup(&self, i: usize) -> Option<&Subgroup> {
        self.subgroups.as_ref().map(|s| s[i].as_ref())
    }

    pub fn has_subgroups(&self) -> bool {
        self.subgroups.is_some()
    }

    fn check_sequence(&self, x: &[usize]) -> Result<()> {
        if x.len() != self.len() {
            return Err(Error::Misaligned(format!("sequence of length {} for a family of {}", x.len(), self.len())));
        }
        for (i, &g) in x.iter().enumerate() {
            if g >= self.group(i).order() {
                return Err(Error::NotInGroup(self.group(i).descriptor().to_string()));
            }
        }
        Ok(())
    }

    /// `l_i(x_i)` for every index.
    pub fn norm_values(&self, x: &[usize]) -> Result<Vec<f64>> {
        self.check_sequence(x)?;
        Ok(x.iter().enumerate().map(|(i, &g)| self.norms[i].value(g)).collect())
    }

    /// Parses one literal per index.
    pub fn parse_sequence(&self, literals: &[String]) -> Result<Vec<usize>> {
        if literals.len() != self.len() {
            return Err(Error::Misaligned(format!("{} literals for a family of {}", literals.len(), self.len())));
        }
        literals.iter().enumerate().map(|(i, l)| self.group(i).parse_element(l)).collect()
    }

    pub fn identity_sequence(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.group(i).identity()).collect()
    }

    pub fn mul(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        x.iter().zip(y).enumerate().map(|(i, (&a, &b))| self.group(i).mul(a, b)).collect()
    }

    pub fn inv(&self, x: &[usize]) -> Vec<usize> {
        x.iter().enumerate().map(|(i, &a)| self.group(i).inv(a)).collect()
    }

    /// `z x z^-1` coordinatewise.
    pub fn conjugate(&self, x: &[usize], z: &[usize]) -> Vec<usize> {
        x.iter().zip(z).enumerate().map(|(i, (&a, &b))| self.group(i).conjugate(a, b)).collect()
    }

    /// Axiom reports for every member norm.
    pub fn verify(&self, opts: &VerifyOptions) -> Vec<AxiomReport> {
        self.norms.par_iter().map(|l| verify_axioms_with(l, opts)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_json_round_trip() {
        let text = r#"{"rule":"symmetric","params":{"n_start":3,"count":4},"norm":"hamming","subgroup":null}"#;
        let rule = FamilyRule::from_json(text).unwrap();
        assert_eq!(rule.parameters(), vec![3, 4, 5, 6]);
        let fam = rule.build(1000).unwrap();
        assert_eq!(fam.len(), 4);
        assert_eq!(fam.group(3).order(), 720);
        assert!(!fam.has_subgroups());
    }

    #[test]
    fn matrix_rules_need_q() {
        let mut rule = FamilyRule {
            rule: "pgl".into(),
            params: FamilyParams {
                n_start: 2,
                n_step: 1,
                q: None,
                count: Some(2),
            },
            norm: "jordan".into(),
            subgroup: Some("psl".into()),
        };
        assert!(rule.build(10_000).is_err());
        rule.params.q = Some(3);
        let fam = rule.build(10_000).unwrap();
        assert_eq!(fam.group(0).order(), 24);
        assert_eq!(fam.subgroup(0).unwrap().order(), 12);
    }

    #[test]
    fn misaligned_sequences_are_rejected() {
        let rule = FamilyRule::from_json(r#"{"rule":"symmetric","params":{"n_start":3,"count":2},"norm":"lc"}"#).unwrap();
        let fam = rule.build(1000).unwrap();
        assert!(matches!(fam.norm_values(&[0]), Err(Error::Misaligned(_))));
        assert!(matches!(fam.norm_values(&[0, 10_000]), Err(Error::NotInGroup(_))));
    }
}
