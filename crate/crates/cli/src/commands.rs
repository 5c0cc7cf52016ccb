use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use normlab::conjugacy::{
    cancelation_equals_delta, cancelation_norm, covering_exponent, eval_word, min_cancelation, ConjugacyGraph, Word,
    WordProblemInstance,
};
use normlab::group::{construct_group_with_cap, FiniteGroup};
use normlab::norms::{
    asymptotic_bound_check, hamming_exact, jordan_exact, verify_axioms_with, BoundMode, LengthFunction, NormSpec,
    SubgroupSpec, VerifyOptions,
};
use normlab::ultra::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub struct Ctx {
    pub cap: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Ctx {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            tol: self.tol,
            seed: self.seed,
            ..VerifyOptions::default()
        }
    }

    fn group(&self, descriptor: &str) -> Result<Arc<FiniteGroup>> {
        Ok(construct_group_with_cap(descriptor, self.cap)?)
    }
}

/// A command's result and whether it flags a property violation.
pub struct Report {
    pub value: Value,
    pub violation: bool,
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn split_literals(text: &str) -> Vec<String> {
    text.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_elements(g: &FiniteGroup, text: &str) -> Result<Vec<usize>> {
    split_literals(text).iter().map(|l| Ok(g.parse_element(l)?)).collect()
}

/// `1,-2,3` or `1 -2 3`; letters are 1-based, negative for inverses.
pub fn parse_word(text: &str) -> Result<Word> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|tok| {
            tok.parse::<i32>()
                .ok()
                .filter(|&l| l != 0)
                .ok_or_else(|| CliError::Usage(format!("bad letter {tok:?} in word")))
        })
        .collect()
}

pub fn norm(ctx: &Ctx, group: &str, norm: &str, element: &str) -> Result<Report> {
    let spec = NormSpec::parse(norm)?;
    let all = element.trim() == "all";
    // a single pointwise value never needs the element list
    let lazy = !all && matches!(spec, NormSpec::Hamming | NormSpec::Lc);
    let g = construct_group_with_cap(group, if lazy { usize::MAX } else { ctx.cap })?;
    let l = spec.build(&g)?;
    let elements: Vec<usize> = if all { g.elements().collect() } else { vec![g.parse_element(element)?] };
    let rows: Vec<Value> = elements
        .iter()
        .map(|&x| {
            let mut row = json!({"element": x, "literal": g.format_element(x), "value": l.value(x)});
            let exact = match spec {
                NormSpec::Hamming => hamming_exact(&g, x).ok().map(|r| r.to_string()),
                NormSpec::Jordan => g.field().zip(g.matrix(x)).map(|(f, m)| jordan_exact(f, m).to_string()),
                _ => None,
            };
            if let Some(e) = exact {
                row["exact"] = json!(e);
            }
            row
        })
        .collect();
    Ok(Report {
        value: json!({"group": g.descriptor(), "norm": l.name(), "rows": rows}),
        violation: false,
    })
}

pub fn axioms(ctx: &Ctx, group: &str, norm: &str) -> Result<Report> {
    let spec = NormSpec::parse(norm)?;
    let g = ctx.group(group)?;
    let l = spec.build(&g)?;
    let r = verify_axioms_with(&l, &ctx.verify_options());
    let violation = !r.is_invariant_pseudo_length() || r.bound_respected == Some(false);
    let extra = json!({
        "invariant_pseudo_length": r.is_invariant_pseudo_length(),
        "invariant_length": r.is_invariant_length(),
    });
    Ok(Report {
        value: merge(to_value(&r), extra),
        violation,
    })
}

/// Options of `sweep` beyond the family and the analysis.
#[derive(Debug, Default, Clone)]
pub struct SweepOptions {
    pub q: Option<u32>,
    pub subgroup: Option<String>,
    pub filter: Option<String>,
    pub window: Option<usize>,
    pub samples: usize,
    pub elements: Option<String>,
    pub ls_constant: Option<f64>,
    pub against: Option<String>,
    pub constant: f64,
    pub n0: usize,
    pub poly: Option<u32>,
}

/// `3..9`, `n=3..9` or `3..9:2`, as `(start, step, count)`.
pub fn parse_range(text: &str) -> Result<(usize, usize, usize)> {
    let bad = || CliError::Usage(format!("expected a range like n=3..9 or 3..9:2, got {text:?}"));
    let t = text.trim().trim_start_matches("n=");
    let (range, step) = match t.split_once(':') {
        Some((r, s)) => (r, s.parse::<usize>().map_err(|_| bad())?),
        None => (t, 1),
    };
    let (a, b) = range.split_once("..").ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if step == 0 || b < a {
        return Err(bad());
    }
    Ok((a, step, (b - a) / step + 1))
}

fn family_rule(args: &[String], opts: &SweepOptions) -> Result<(FamilyRule, String)> {
    match args {
        [file, analysis] => {
            let text = std::fs::read_to_string(file)?;
            Ok((FamilyRule::from_json(&text)?, analysis.clone()))
        }
        [rule, range, norm, analysis] => {
            let (n_start, n_step, count) = parse_range(range)?;
            let rule = FamilyRule {
                rule: rule.clone(),
                params: FamilyParams {
                    n_start,
                    n_step,
                    q: opts.q,
                    count: Some(count),
                },
                norm: norm.clone(),
                subgroup: opts.subgroup.clone(),
            };
            Ok((rule, analysis.clone()))
        }
        _ => Err(CliError::Usage(
            "sweep takes <family.json> <analysis> or <rule> <range> <norm> <analysis>".into(),
        )),
    }
}

fn witness_sequence(fam: &NormedFamily, elements: Option<&str>) -> Result<Vec<usize>> {
    let lits = match elements {
        Some(text) => split_literals(text),
        None if fam.group(0).perm_degree().is_some() => vec!["(0 1)".to_string()],
        None => return Err(CliError::Usage("witness on a matrix family needs --elements".into())),
    };
    let lits = match lits.len() {
        1 => vec![lits[0].clone(); fam.len()],
        n if n == fam.len() => lits,
        n => return Err(CliError::Usage(format!("{n} element literals for {} indices", fam.len()))),
    };
    Ok(fam.parse_sequence(&lits)?)
}

pub fn sweep(ctx: &Ctx, args: &[String], opts: &SweepOptions) -> Result<Report> {
    let (rule, analysis) = family_rule(args, opts)?;
    // parse every spec before building anything
    NormSpec::parse_with_n(&rule.norm, Some(rule.params.n_start))?;
    if let Some(h) = &rule.subgroup {
        SubgroupSpec::parse(h)?;
    }
    let filter = opts.filter.as_deref().map(FilterSpec::parse).transpose()?;
    let (kind, arg) = match analysis.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (analysis.as_str(), None),
    };
    let number = |what: &str| -> Result<f64> {
        arg.and_then(|a| a.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("{kind} needs a numeric {what}, as in {kind}:0.25")))
    };
    let fam = rule.build(ctx.cap)?;
    let filter = filter.unwrap_or(FilterSpec::Tail { window_start: fam.len() / 2 });
    let (report, violation) = match kind {
        "discreteness" => (to_value(&discreteness_check(&fam, opts.window)?), false),
        "small-norm" => {
            let r = small_norm_subgroup(&fam, number("threshold")?, &filter, opts.samples, ctx.seed)?;
            (to_value(&r), !r.closed)
        }
        "kernel" => {
            let r = kernel_closure_check(&fam, &filter, opts.samples, ctx.seed)?;
            (to_value(&r), !r.closed)
        }
        "witness" => {
            let x = witness_sequence(&fam, opts.elements.as_deref())?;
            let r = simplicity_witness_check(&fam, &x, &filter, number("epsilon")?, opts.ls_constant)?;
            (to_value(&r), !r.passes)
        }
        "asymptotic" => {
            let against = opts
                .against
                .clone()
                .ok_or_else(|| CliError::Usage("asymptotic needs --against <norm>".into()))?;
            let other = FamilyRule {
                norm: against,
                ..rule.clone()
            }
            .build(ctx.cap)?;
            let norms = |f: &NormedFamily| (0..f.len()).map(|i| f.norm(i).clone()).collect::<Vec<LengthFunction>>();
            let mode = match opts.poly {
                Some(m) => BoundMode::Polynomial { m },
                None => BoundMode::Linear,
            };
            let r = asymptotic_bound_check(&norms(&fam), &norms(&other), opts.constant, opts.n0, mode)?;
            (to_value(&r), !r.holds)
        }
        "axioms" => {
            let reports = fam.verify(&ctx.verify_options());
            let bad = reports.iter().any(|r| !r.is_invariant_pseudo_length());
            (json!({"rows": reports}), bad)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown analysis {other:?}; expected discreteness, small-norm:θ, kernel, witness:ε, asymptotic or axioms"
            )))
        }
    };
    let head = json!({
        "family": fam.rule(),
        "params": fam.params(),
        "groups": (0..fam.len()).map(|i| fam.group(i).descriptor().to_string()).collect::<Vec<_>>(),
        "analysis": analysis,
        "filter": filter,
    });
    Ok(Report {
        value: merge(head, report),
        violation,
    })
}

pub fn covering(ctx: &Ctx, group: &str, element: &str) -> Result<Report> {
    let g = ctx.group(group)?;
    let x = g.parse_element(element)?;
    let r = covering_exponent(&g, x);
    let display = r.exponent.map_or("inf".to_string(), |m| m.to_string());
    Ok(Report {
        value: merge(json!({"group": g.descriptor()}), merge(to_value(&r), json!({"exponent_display": display}))),
        violation: false,
    })
}

pub fn graph(ctx: &Ctx, group: &str, delta: &str) -> Result<Report> {
    let g = ctx.group(group)?;
    let d = parse_elements(&g, delta)?;
    let graph = ConjugacyGraph::build(&g, &d);
    let rows: Vec<Value> = graph
        .vertices
        .iter()
        .enumerate()
        .map(|(v, &rep)| {
            json!({
                "vertex": v,
                "representative": graph.vertex_literals[v],
                "class_size": graph.class_sizes[v],
                "distance": graph.distances[v],
                "l_delta": graph.length(rep),
                "neighbours": graph.adjacency[v],
            })
        })
        .collect();
    Ok(Report {
        value: json!({
            "group": g.descriptor(),
            "delta": graph.delta,
            "identity_component_diameter": graph.identity_component_diameter,
            "disconnected": graph.disconnected,
            "rows": rows,
        }),
        violation: false,
    })
}

pub fn cancel(ctx: &Ctx, group: &str, alphabet: &str, word: &str, delta: Option<&str>) -> Result<Report> {
    let g = ctx.group(group)?;
    let alpha = parse_elements(&g, alphabet)?;
    let w = parse_word(word)?;
    let value = cancelation_norm(&WordProblemInstance {
        group: g.clone(),
        alphabet: alpha.clone(),
        word: w.clone(),
    })?;
    let x = eval_word(&g, &alpha, &w)?;
    let (minimum, witness) = min_cancelation(&g, &alpha, x)?;
    let head = json!({
        "group": g.descriptor(),
        "word": w,
        "element": g.format_element(x),
        "cancelation": value,
        "minimum_over_words": minimum,
        "minimizing_word": witness,
    });
    match delta {
        None => Ok(Report {
            value: head,
            violation: false,
        }),
        Some(d) => {
            let d = parse_elements(&g, d)?;
            let r = cancelation_equals_delta(&g, &d, &alpha, &[w])?;
            Ok(Report {
                violation: !r.all_equal,
                value: merge(head, to_value(&r)),
            })
        }
    }
}

/// A normal subgroup of the free group, given by a membership test.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WordSubgroup {
    /// Kernel of the map onto the free product of cyclic groups of these
    /// orders (0 for infinite cyclic).
    FreeProduct { orders: Vec<u32> },
    /// Kernel of `phi`.
    Kernel,
    /// Preimage under `phi` of a normal subgroup (default: the instance's).
    Preimage {
        #[serde(default)]
        subgroup: Option<String>,
    },
}

type Membership = Box<dyn Fn(&[i32]) -> bool + Sync>;

impl WordSubgroup {
    fn membership(&self, g: &Arc<FiniteGroup>, images: &[usize], default_h: Option<&str>) -> Result<Membership> {
        Ok(match self {
            WordSubgroup::FreeProduct { orders } => {
                let orders = orders.clone();
                Box::new(move |w: &[i32]| free_product_is_trivial(w, &orders))
            }
            WordSubgroup::Kernel => {
                let (g, images) = (g.clone(), images.to_vec());
                Box::new(move |w: &[i32]| eval_word(&g, &images, w).is_ok_and(|x| x == g.identity()))
            }
            WordSubgroup::Preimage { subgroup } => {
                let spec = subgroup
                    .as_deref()
                    .or(default_h)
                    .ok_or_else(|| CliError::Usage("preimage needs a subgroup".into()))?;
                let mask = SubgroupSpec::parse(spec)?.resolve(g)?.mask().to_vec();
                let (g, images) = (g.clone(), images.to_vec());
                Box::new(move |w: &[i32]| eval_word(&g, &images, w).is_ok_and(|x| mask[x]))
            }
        })
    }
}

#[derive(Debug, Deserialize)]
struct WsFile {
    group: String,
    generators: Vec<String>,
    #[serde(default)]
    d_words: Option<Vec<Word>>,
    #[serde(default)]
    d_radius: Option<usize>,
    n: WordSubgroup,
    #[serde(default = "default_n1")]
    n1: WordSubgroup,
    subgroup: String,
    eps: f64,
    s: u32,
}

fn default_n1() -> WordSubgroup {
    WordSubgroup::Preimage { subgroup: None }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn ws_build(ctx: &Ctx, path: &Path) -> Result<Report> {
    let f: WsFile = read_json(path)?;
    let g = ctx.group(&f.group)?;
    let images = f.generators.iter().map(|l| Ok(g.parse_element(l)?)).collect::<Result<Vec<_>>>()?;
    let d_words = match (f.d_words, f.d_radius) {
        (Some(words), None) => words,
        (None, Some(r)) => reduced_words(images.len(), r),
        _ => return Err(CliError::Usage("give exactly one of d_words and d_radius".into())),
    };
    let h = SubgroupSpec::parse(&f.subgroup)?.resolve(&g)?;
    let in_n = f.n.membership(&g, &images, Some(&f.subgroup))?;
    let in_n1 = f.n1.membership(&g, &images, Some(&f.subgroup))?;
    let inst = WsInstance {
        group: g.clone(),
        generator_images: images,
        d_words,
        in_n: &*in_n,
        in_n1: &*in_n1,
        subgroup: h,
        eps: f.eps,
        s: f.s,
    };
    let r = ws_norm_builder(&inst)?;
    let violation = !r.thresholds_hold || !r.axioms.is_invariant_pseudo_length() || !r.gamma.holds();
    Ok(Report {
        value: merge(json!({"group": g.descriptor()}), to_value(&r)),
        violation,
    })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Bounds {
    One(f64),
    Each(Vec<f64>),
}

#[derive(Debug, Deserialize)]
struct ApproxFile {
    source: String,
    target: String,
    norm: String,
    eps: f64,
    domain: Vec<String>,
    delta: Bounds,
    /// `[source literal, target literal]` pairs.
    phi: Vec<(String, String)>,
}

fn parse_map(src: &FiniteGroup, tgt: &FiniteGroup, pairs: &[(String, String)]) -> Result<HashMap<usize, usize>> {
    pairs
        .iter()
        .map(|(a, b)| Ok((src.parse_element(a)?, tgt.parse_element(b)?)))
        .collect()
}

pub fn verify_approx(ctx: &Ctx, path: &Path) -> Result<Report> {
    let f: ApproxFile = read_json(path)?;
    let spec = NormSpec::parse(&f.norm)?;
    let src = ctx.group(&f.source)?;
    let tgt = ctx.group(&f.target)?;
    let domain = f.domain.iter().map(|l| Ok(src.parse_element(l)?)).collect::<Result<Vec<_>>>()?;
    let delta = match f.delta {
        Bounds::One(d) => vec![d; domain.len()],
        Bounds::Each(v) => v,
    };
    let w = ApproxWitness {
        phi: parse_map(&src, &tgt, &f.phi)?,
        source: src,
        domain,
        eps: f.eps,
        delta,
        target: spec.build(&tgt)?,
    };
    let r = verify_approximation_witness(&w)?;
    Ok(Report {
        violation: !r.passes,
        value: to_value(&r),
    })
}

#[derive(Debug, Deserialize)]
struct LefTableFile {
    source: String,
    target: String,
    #[serde(default)]
    subset: Option<Vec<String>>,
    #[serde(default)]
    generators: Option<Vec<String>>,
    #[serde(default)]
    radius: Option<usize>,
    phi: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct LefSeparationFile {
    target: String,
    generators: Vec<String>,
    d1: Vec<Word>,
    d2: Vec<Word>,
    n1_generators: Vec<Word>,
    n1: WordSubgroup,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum LefFile {
    Table(LefTableFile),
    Separation(LefSeparationFile),
}

pub fn verify_lef(ctx: &Ctx, path: &Path) -> Result<Report> {
    match read_json::<LefFile>(path)? {
        LefFile::Table(f) => {
            let src = ctx.group(&f.source)?;
            let tgt = ctx.group(&f.target)?;
            let (table, elements) = match (f.subset, f.generators, f.radius) {
                (Some(lits), None, None) => {
                    let elems = lits.iter().map(|l| Ok(src.parse_element(l)?)).collect::<Result<Vec<_>>>()?;
                    (PartialTable::from_group(&src, &elems), elems)
                }
                (None, Some(gens), Some(r)) => {
                    let gens = gens.iter().map(|l| Ok(src.parse_element(l)?)).collect::<Result<Vec<_>>>()?;
                    PartialTable::cayley_ball(&src, &gens, r)
                }
                _ => return Err(CliError::Usage("give either subset, or generators with radius".into())),
            };
            let map = parse_map(&src, &tgt, &f.phi)?;
            let phi = elements
                .iter()
                .map(|x| {
                    map.get(x)
                        .copied()
                        .ok_or_else(|| CliError::Usage(format!("phi misses {}", src.format_element(*x))))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = verify_lef_witness(&table, &tgt, &phi)?;
            Ok(Report {
                violation: !r.passes,
                value: merge(json!({"labels": table.labels}), to_value(&r)),
            })
        }
        LefFile::Separation(f) => {
            let tgt = ctx.group(&f.target)?;
            let images = f.generators.iter().map(|l| Ok(tgt.parse_element(l)?)).collect::<Result<Vec<_>>>()?;
            let in_n1 = f.n1.membership(&tgt, &images, None)?;
            let r = verify_lef_separation(&tgt, &images, &f.d1, &f.d2, &f.n1_generators, &*in_n1)?;
            Ok(Report {
                violation: !r.passes,
                value: to_value(&r),
            })
        }
    }
}
