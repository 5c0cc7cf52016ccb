//! Norm spec strings: `hamming`, `lc`, `jordan`, `delta:<lit;lit>`,
//! `star:s:k:H`, `blend:s:s':t:H`, `normalize` and `normalize(<spec>)`,
//! chained left to right with commas. A correction without a base applies to
//! `lc`.

use std::fmt;
use std::sync::Arc;

use super::{blend_correction, hamming, jordan, lc, normalize_bounded, star_correction, LengthFunction};
use crate::conjugacy::delta_length_function;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// Even permutations.
    Alternating,
    Derived,
    Center,
    Trivial,
    Whole,
    /// Image of the special linear group in a projective group.
    Psl,
    /// Determinant-one matrices.
    DetOne,
    /// Normal closure of the listed element literals.
    NormalClosure(Vec<String>),
}

impl SubgroupSpec {
    pub fn parse(text: &str) -> Result<SubgroupSpec> {
        let t = text.trim();
        Ok(match t {
            "A" | "alternating" => SubgroupSpec::Alternating,
            "derived" => SubgroupSpec::Derived,
            "center" | "Z" => SubgroupSpec::Center,
            "trivial" | "1" => SubgroupSpec::Trivial,
            "G" | "whole" => SubgroupSpec::Whole,
            "psl" => SubgroupSpec::Psl,
            "su" | "sl" | "det1" => SubgroupSpec::DetOne,
            _ => {
                let inner = t
                    .strip_prefix("ncl(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(0, format!("unknown subgroup {t:?}")))?;
                SubgroupSpec::NormalClosure(split_literals(inner))
            }
        })
    }

    pub fn resolve(&self, group: &Arc<FiniteGroup>) -> Result<Subgroup> {
        match self {
            SubgroupSpec::Alternating => Subgroup::even_permutations(group),
            SubgroupSpec::Derived => Ok(Subgroup::derived(group)),
            SubgroupSpec::Center => Ok(Subgroup::center(group)),
            SubgroupSpec::Trivial => Ok(Subgroup::trivial(group)),
            SubgroupSpec::Whole => Ok(Subgroup::whole(group)),
            SubgroupSpec::Psl => Subgroup::projective_special(group),
            SubgroupSpec::DetOne => Subgroup::determinant_one(group),
            SubgroupSpec::NormalClosure(lits) => {
                let elems = lits.iter().map(|l| group.parse_element(l)).collect::<Result<Vec<_>>>()?;
                Ok(Subgroup::normal_closure(group, &elems))
            }
        }
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Alternating => f.write_str("A"),
            SubgroupSpec::Derived => f.write_str("derived"),
            SubgroupSpec::Center => f.write_str("center"),
            SubgroupSpec::Trivial => f.write_str("trivial"),
            SubgroupSpec::Whole => f.write_str("G"),
            SubgroupSpec::Psl => f.write_str("psl"),
            SubgroupSpec::DetOne => f.write_str("su"),
            SubgroupSpec::NormalClosure(l) => write!(f, "ncl({})", l.join(";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormSpec {
    Hamming,
    Lc,
    Jordan,
    /// `l_Delta` for the classes of the listed element literals.
    Delta(Vec<String>),
    Star {
        base: Box<NormSpec>,
        s: u32,
        k: u32,
        sub: SubgroupSpec,
    },
    Blend {
        base: Box<NormSpec>,
        s: u32,
        s2: u32,
        t: u32,
        sub: SubgroupSpec,
    },
    Normalize(Box<NormSpec>),
}

fn split_literals(text: &str) -> Vec<String> {
    text.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Splits on commas outside parentheses and brackets, keeping byte offsets.
fn split_top_level(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(i, "unbalanced closing bracket"));
                }
            }
            ',' if depth == 0 => {
                parts.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(text.len(), "unbalanced opening bracket"));
    }
    parts.push((start, &text[start..]));
    Ok(parts)
}

impl NormSpec {
    pub fn parse(text: &str) -> Result<NormSpec> {
        NormSpec::parse_with_n(text, None)
    }

    /// Parses with `n` substituted for integer fields written as `n`.
    pub fn parse_with_n(text: &str, n: Option<usize>) -> Result<NormSpec> {
        Self::parse_at(text, n, 0)
    }

    fn parse_at(text: &str, n: Option<usize>, offset: usize) -> Result<NormSpec> {
        let mut current: Option<NormSpec> = None;
        for (pos, raw) in split_top_level(text).map_err(|e| shift(e, offset))? {
            let lead = raw.len() - raw.trim_start().len();
            let at = offset + pos + lead;
            let stage = raw.trim();
            if stage.is_empty() {
                return Err(Error::parse(at, "empty stage"));
            }
            current = Some(Self::parse_stage(stage, current, n, at)?);
        }
        current.ok_or_else(|| Error::parse(offset, "empty norm spec"))
    }

    fn parse_stage(stage: &str, prev: Option<NormSpec>, n: Option<usize>, at: usize) -> Result<NormSpec> {
        let base_only = |spec: NormSpec| -> Result<NormSpec> {
            match prev {
                None => Ok(spec),
                Some(_) => Err(Error::parse(at, format!("{stage:?} cannot follow another stage"))),
            }
        };
        let int = |field: &str, rel: usize| -> Result<u32> {
            match (field.trim(), n) {
                ("n", Some(v)) => Ok(v as u32),
                ("n", None) => Err(Error::parse(at + rel, "placeholder n outside a sweep")),
                (f, _) => f.parse().map_err(|_| Error::parse(at + rel, format!("{f:?} is not a positive integer"))),
            }
        };
        let fields: Vec<&str> = stage.splitn(5, ':').collect();
        let rel = |i: usize| fields[..i].iter().map(|f| f.len() + 1).sum::<usize>();
        let base = || Box::new(prev.clone().unwrap_or(NormSpec::Lc));
        match fields[0] {
            "hamming" if fields.len() == 1 => base_only(NormSpec::Hamming),
            "lc" if fields.len() == 1 => base_only(NormSpec::Lc),
            "jordan" if fields.len() == 1 => base_only(NormSpec::Jordan),
            "delta" => {
                let rest = stage.strip_prefix("delta:").ok_or_else(|| Error::parse(at, "delta needs classes"))?;
                base_only(NormSpec::Delta(split_literals(rest)))
            }
            "normalize" if fields.len() == 1 => Ok(NormSpec::Normalize(base())),
            "star" if fields.len() == 4 => Ok(NormSpec::Star {
                base: base(),
                s: int(fields[1], rel(1))?,
                k: int(fields[2], rel(2))?,
                sub: SubgroupSpec::parse(fields[3]).map_err(|e| shift(e, at + rel(3)))?,
            }),
            "blend" if fields.len() == 5 => Ok(NormSpec::Blend {
                base: base(),
                s: int(fields[1], rel(1))?,
                s2: int(fields[2], rel(2))?,
                t: int(fields[3], rel(3))?,
                sub: SubgroupSpec::parse(fields[4]).map_err(|e| shift(e, at + rel(4)))?,
            }),
            _ => {
                if let Some(inner) = stage.strip_prefix("normalize(").and_then(|r| r.strip_suffix(')')) {
                    let spec = Self::parse_at(inner, n, at + "normalize(".len())?;
                    return base_only(NormSpec::Normalize(Box::new(spec)));
                }
                Err(Error::parse(at, format!("unknown norm stage {stage:?}")))
            }
        }
    }

    /// Evaluates the spec on `group`.
    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<LengthFunction> {
        let l = match self {
            NormSpec::Hamming => hamming(group)?,
            NormSpec::Lc => lc(group)?,
            NormSpec::Jordan => jordan(group)?,
            NormSpec::Delta(lits) => {
                let elems = lits.iter().map(|l| group.parse_element(l)).collect::<Result<Vec<_>>>()?;
                delta_length_function(group, &elems)?
            }
            NormSpec::Star { base, s, k, sub } => {
                let l = base.build(group)?;
                star_correction(&l, &sub.resolve(group)?, *s, *k)?
            }
            NormSpec::Blend { base, s, s2, t, sub } => {
                let l = base.build(group)?;
                blend_correction(&l, &sub.resolve(group)?, *s, *s2, *t)?
            }
            NormSpec::Normalize(base) => normalize_bounded(&base.build(group)?),
        };
        Ok(l.with_name(self.to_string()))
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, reason } => Error::Parse { pos: pos + by, reason },
        other => other,
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::Hamming => f.write_str("hamming"),
            NormSpec::Lc => f.write_str("lc"),
            NormSpec::Jordan => f.write_str("jordan"),
            NormSpec::Delta(l) => write!(f, "delta:{}", l.join(";")),
            NormSpec::Star { base, s, k, sub } => write!(f, "{base},star:{s}:{k}:{sub}"),
            NormSpec::Blend { base, s, s2, t, sub } => write!(f, "{base},blend:{s}:{s2}:{t}:{sub}"),
            NormSpec::Normalize(base) => write!(f, "normalize({base})"),
        }
    }
}
