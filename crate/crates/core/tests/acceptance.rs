//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero when a criterion fails other than in the documented way.
//!
//! Expected values come from oracles written here (brute-force class
//! products, plain elimination over prime fields, closed-form orders), not
//! from the library under test.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use normlab::conjugacy::{
    cancelation_equals_delta, covering_exponent, delta_length_function, empirical_LS_constant, eval_word, Word,
};
use normlab::group::FiniteGroup;
use normlab::matrix::{FiniteField, Matrix};
use normlab::norms::*;
use normlab::ultra::*;
use normlab::{construct_group, Subgroup};
use num_rational::Ratio;
use rayon::prelude::*;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails exactly as the recorded analysis predicts.
    KnownFail(String),
}

fn check(cond: bool, pass: String, fail: String) -> Outcome {
    if cond {
        Outcome::Pass(pass)
    } else {
        Outcome::Fail(fail)
    }
}

// ---------------------------------------------------------------- corpus

fn corpus_descriptors() -> Vec<String> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(format!("S:{n}"));
    }
    for n in 3..=7 {
        out.push(format!("A:{n}"));
    }
    for fam in ["GL", "SL", "PGL", "PSL"] {
        for q in [2, 3, 4, 5] {
            out.push(format!("{fam}:2:{q}"));
        }
    }
    for d in ["GL:3:2", "Sp:2:3", "U:2:2", "U:3:2"] {
        out.push(d.to_string());
    }
    for d in [
        "Oplus:2:2", "Ominus:2:2", "Oplus:4:2", "Ominus:4:2", "Oplus:1:3", "Oplus:2:3", "Ominus:2:3", "Oplus:3:3",
        "Oplus:4:3", "Ominus:4:3",
    ] {
        out.push(d.to_string());
    }
    out
}

fn corpus() -> Vec<Arc<FiniteGroup>> {
    corpus_descriptors()
        .par_iter()
        .map(|d| construct_group(d).unwrap_or_else(|e| panic!("{d}: {e}")))
        .filter(|g| g.order() <= 10_000)
        .collect()
}

/// Distinct normal subgroups worth correcting by.
fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut subs = vec![
        Subgroup::trivial(g),
        Subgroup::whole(g),
        Subgroup::center(g),
        Subgroup::derived(g),
    ];
    subs.extend(Subgroup::even_permutations(g).ok());
    if g.is_projective() {
        subs.extend(Subgroup::projective_special(g).ok());
    } else {
        subs.extend(Subgroup::determinant_one(g).ok());
    }
    let mut seen = HashSet::new();
    subs.retain(|h| seen.insert(h.mask().to_vec()));
    subs
}

/// Base lengths on a nontrivial group.
fn base_lengths(g: &Arc<FiniteGroup>) -> Vec<LengthFunction> {
    let mut out = vec![lc(g).unwrap()];
    out.extend(hamming(g).ok());
    out.extend(jordan(g).ok());
    let d = g.generators()[0];
    let delta = delta_length_function(g, &[d]).unwrap();
    out.push(normalize_bounded(&delta));
    out.push(delta);
    out
}

fn bounded(l: &LengthFunction) -> LengthFunction {
    if l.sup() <= 1.0 {
        l.clone()
    } else {
        normalize_bounded(l)
    }
}

// ---------------------------------------------------------------- oracles

fn brute_center(g: &FiniteGroup) -> Vec<usize> {
    g.elements()
        .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
        .collect()
}

/// Rank over a prime field by plain elimination.
fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = (1..p).find(|&x| rows[rank][col] * x % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let f = rows[r][col] * inv % p;
                for c in 0..n {
                    rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `min_{a != 0} rank(aI - m)` over the prime field `F_p`.
fn jordan_rank_oracle(m: &Matrix, p: u32) -> usize {
    let n = m.dim();
    (1..p)
        .map(|a| {
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = if i == j { a } else { 0 };
                            (d + p - m.get(i, j) as u32 % p) % p
                        })
                        .collect()
                })
                .collect();
            rank_mod_p(rows, p)
        })
        .min()
        .unwrap()
}

fn class_of_oracle(g: &FiniteGroup, x: usize) -> BTreeSet<usize> {
    g.elements().map(|h| g.conjugate(x, h)).collect()
}

/// `l_Delta` by breadth-first search over conjugacy classes, with class
/// products formed element by element.
fn delta_oracle(g: &FiniteGroup, delta: &[usize]) -> Vec<usize> {
    let mut class_id = vec![usize::MAX; g.order()];
    let mut classes: Vec<BTreeSet<usize>> = Vec::new();
    for x in g.elements() {
        if class_id[x] == usize::MAX {
            let c = class_of_oracle(g, x);
            for &y in &c {
                class_id[y] = classes.len();
            }
            classes.push(c);
        }
    }
    let dclasses: Vec<&BTreeSet<usize>> = delta.iter().map(|&d| &classes[class_id[d]]).collect();
    let k = classes.len();
    let mut adj = vec![BTreeSet::new(); k];
    for (y, cy) in classes.iter().enumerate() {
        for dc in &dclasses {
            for &a in dc.iter() {
                for &b in cy {
                    let x = class_id[g.mul(a, b)];
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
        }
    }
    let start = class_id[g.identity()];
    let mut dist = vec![usize::MAX; k];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let diam = dist.iter().filter(|&&d| d != usize::MAX).max().copied().unwrap_or(0);
    g.elements()
        .map(|x| match dist[class_id[x]] {
            usize::MAX => diam + 1,
            d => d,
        })
        .collect()
}

/// Class size of a permutation from its cycle type: `n! / prod k^{m_k} m_k!`.
fn perm_class_size(images: &[usize]) -> f64 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut counts = vec![0u32; n + 1];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        counts[len] += 1;
    }
    let fact = |k: u32| (1..=k).map(|i| i as f64).product::<f64>();
    let mut size = fact(n as u32);
    for (k, &m) in counts.iter().enumerate().skip(1) {
        size /= (k as f64).powi(m as i32) * fact(m);
    }
    size
}

fn is_odd(images: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Minimal `m` with the `m`-fold class product equal to the group.
fn covering_oracle(g: &FiniteGroup, x: usize) -> Option<usize> {
    let class: Vec<usize> = class_of_oracle(g, x).into_iter().collect();
    let mut power: BTreeSet<usize> = class.iter().copied().collect();
    let mut history = HashSet::new();
    for m in 1.. {
        if power.len() == g.order() {
            return Some(m);
        }
        if !history.insert(power.clone()) {
            return None;
        }
        power = power.iter().flat_map(|&p| class.iter().map(move |&c| (p, c))).map(|(p, c)| g.mul(p, c)).collect();
    }
    unreachable!()
}

fn pw(q: i128, e: u32) -> i128 {
    q.pow(e)
}

/// `|U_n(q^2)| = prod_{i=1..n} (q^i - (-1)^i) q^{i-1}`.
fn unitary_order(n: u32, q: i128) -> i128 {
    (1..=n).map(|i| (pw(q, i) - (-1i128).pow(i)) * pw(q, i - 1)).product()
}

/// Orthogonal orders from the closed forms: odd `n`, even `n` in odd
/// characteristic with sign `e`, and even `n` in characteristic 2.
fn orthogonal_order(n: u32, q: i128, e: i128) -> i128 {
    let m = n / 2;
    if n % 2 == 1 {
        (1..=m).map(|k| (pw(q, 2 * k) - 1) * pw(q, 2 * k - 1)).product()
    } else if q % 2 == 1 {
        (pw(q, 2 * m - 1) - e * pw(q, m - 1)) * (1..m).map(|k| (pw(q, 2 * k) - 1) * pw(q, 2 * k - 1)).product::<i128>()
    } else {
        (pw(q, m) - e) * (1..m).map(|k| (pw(q, 2 * k) - 1) * pw(q, 2 * k)).product::<i128>()
    }
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let groups: Vec<Arc<FiniteGroup>> = corpus().into_iter().filter(|g| !g.is_trivial()).collect();
    let results: Vec<(usize, Vec<String>)> = groups
        .par_iter()
        .map(|g| {
            let mut lengths = Vec::new();
            for l in base_lengths(g) {
                lengths.push(l.clone());
                for h in normal_subgroups(g) {
                    lengths.push(restrict_length(&l, &h).unwrap());
                    let q = quotient_length(&l, &h).unwrap();
                    lengths.push(lift_length(&q).unwrap());
                    lengths.push(q);
                    let k = l.sup().ceil().max(1.0) as u32;
                    for s in [1, 2] {
                        lengths.push(star_correction(&l, &h, s, k).unwrap());
                    }
                    let lb = bounded(&l);
                    for (s, s2, t) in [(1, 1, 1), (2, 3, 1), (8, 1, 3)] {
                        lengths.push(blend_correction(&lb, &h, s, s2, t).unwrap());
                    }
                }
            }
            let bad: Vec<String> = lengths
                .iter()
                .map(verify_axioms)
                .filter(|r| r.sampled || !r.is_invariant_pseudo_length())
                .map(|r| format!("{} on {}", r.norm, r.group))
                .collect();
            (lengths.len(), bad)
        })
        .collect();
    let elapsed = start.elapsed();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    check(
        bad.is_empty() && elapsed < Duration::from_secs(300),
        format!("{checked} length functions on {} groups, exhaustive, {:.1?}", groups.len(), elapsed),
        format!("{} violations (first: {:?}), {:.1?}", bad.len(), bad.first(), elapsed),
    )
}

fn criterion_2() -> Outcome {
    let groups: Vec<Arc<FiniteGroup>> = corpus().into_iter().filter(|g| !g.is_trivial()).collect();
    let failures: Vec<String> = groups
        .par_iter()
        .filter_map(|g| {
            let center = brute_center(g);
            let r = verify_axioms(&lc(g).unwrap());
            let ok = if center.len() == 1 {
                r.positivity.holds
            } else {
                !r.positivity.holds
                    && r.positivity
                        .counterexample
                        .as_ref()
                        .is_some_and(|v| v.elements.iter().all(|x| *x != g.identity() && center.contains(x)))
            };
            (!ok || !r.is_invariant_pseudo_length()).then(|| g.descriptor().to_string())
        })
        .collect();
    let centerless = groups.iter().filter(|g| g.center().len() == 1).count();
    check(
        failures.is_empty(),
        format!("{} groups, {centerless} centerless, positivity matches in all", groups.len()),
        format!("mismatch on {failures:?}"),
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=9u64 {
        let g = construct_group(&format!("S:{n}")).unwrap();
        let t = g.parse_element("(0 1)").unwrap();
        let v = hamming_exact(&g, t).unwrap();
        if v != Ratio::new(2, n) {
            bad.push(format!("S_{n}: {v}"));
        }
    }
    check(bad.is_empty(), "l_H((0 1)) = 2/n for n = 3..9".into(), format!("{bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut diag_checked = 0;
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        for q in [2u32, 3, 5] {
            let field = FiniteField::new(q).unwrap();
            for d in 2..q as u8 {
                let mut diag = vec![1u8; n];
                diag[n - 1] = d;
                let m = Matrix::diagonal(&diag);
                let oracle = Ratio::new(jordan_rank_oracle(&m, q) as u64, n as u64);
                let v = jordan_exact(&field, &m);
                diag_checked += 1;
                if v != Ratio::new(1, n as u64) || oracle != v {
                    bad.push(format!("diag n={n} q={q} d={d}: {v}, oracle {oracle}"));
                }
            }
            let g = construct_group(&format!("PGL:{n}:{q}")).unwrap();
            let (lib_min, oracle_min) = g
                .elements()
                .into_par_iter()
                .map(|x| {
                    let m = g.matrix(x).unwrap();
                    (jordan_exact(&field, m), jordan_rank_oracle(m, q))
                })
                .filter(|(v, _)| *v.numer() != 0)
                .map(|(v, r)| (v, Ratio::new(r as u64, n as u64)))
                .reduce(
                    || (Ratio::new(1, 1), Ratio::new(1, 1)),
                    |a, b| (a.0.min(b.0), a.1.min(b.1)),
                );
            if lib_min != Ratio::new(1, n as u64) || oracle_min != lib_min {
                bad.push(format!("PGL_{n}({q}): min nonzero {lib_min}, oracle {oracle_min}"));
            }
        }
        notes.push(format!("PGL_{n}(2,3,5) min 1/{n}"));
    }
    check(
        bad.is_empty(),
        format!("{diag_checked} diagonal twists (none over F_2), {}", notes.join(", ")),
        format!("{bad:?}"),
    )
}

fn criterion_5() -> Outcome {
    let mut cases: Vec<(String, i128)> = vec![
        ("U:2:2".into(), unitary_order(2, 2)),
        ("U:3:2".into(), unitary_order(3, 2)),
    ];
    for (desc, n, q, e) in [
        ("Oplus:2:2", 2, 2, 1),
        ("Ominus:2:2", 2, 2, -1),
        ("Oplus:4:2", 4, 2, 1),
        ("Ominus:4:2", 4, 2, -1),
        ("Oplus:1:3", 1, 3, 1),
        ("Oplus:3:3", 3, 3, 1),
        ("Oplus:2:3", 2, 3, 1),
        ("Ominus:2:3", 2, 3, -1),
        ("Oplus:4:3", 4, 3, 1),
        ("Ominus:4:3", 4, 3, -1),
    ] {
        cases.push((desc.into(), orthogonal_order(n, q, e)));
    }
    let mut bad = Vec::new();
    if unitary_order(2, 2) != 18 {
        bad.push(format!("|U_2(4)| formula gives {}", unitary_order(2, 2)));
    }
    for (desc, expected) in &cases {
        let g = construct_group(desc).unwrap();
        if g.order() as i128 != *expected {
            bad.push(format!("{desc}: enumerated {}, formula {expected}", g.order()));
        }
    }
    check(
        bad.is_empty(),
        format!("{} orders match (|U_2(4)| = 18, |U_3(4)| = {})", cases.len(), unitary_order(3, 2)),
        format!("{bad:?}"),
    )
}

fn criterion_6() -> Outcome {
    let groups: Vec<Arc<FiniteGroup>> = corpus().into_iter().filter(|g| !g.is_trivial()).collect();
    let results: Vec<(usize, Vec<String>)> = groups
        .par_iter()
        .map(|g| {
            let mut bases = vec![lc(g).unwrap()];
            bases.extend(hamming(g).ok());
            bases.extend(jordan(g).ok());
            bases.push(normalize_bounded(&delta_length_function(g, &[g.generators()[0]]).unwrap()));
            let mut count = 0;
            let mut bad = Vec::new();
            for l in &bases {
                for h in normal_subgroups(g) {
                    for t in 1..=3 {
                        for s in 1..=3 {
                            for s2 in 1..=3 {
                                let r = compare_lemma_check(l, &h, t, s, s2).unwrap();
                                count += 1;
                                if !r.holds() {
                                    bad.push(format!("{} on {} (H of order {}), t={t} s={s} s'={s2}", l.name(), g.descriptor(), h.order()));
                                }
                            }
                        }
                    }
                }
            }
            (count, bad)
        })
        .collect();
    let count: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();
    check(
        bad.is_empty(),
        format!("{count} (l, H, t, s, s') combinations, zero violations"),
        format!("{} violations, first {:?}", bad.len(), bad.first()),
    )
}

fn criterion_7() -> Outcome {
    let instances: Vec<(&str, Vec<&str>, Vec<&str>)> = vec![
        ("S:3", vec!["(0 1)", "(0 2)", "(1 2)"], vec!["(0 1)"]),
        ("S:4", vec!["(0 1)", "(0 2)", "(0 3)", "(1 2)", "(1 3)", "(2 3)"], vec!["(0 1)"]),
        ("S:4", vec!["(0 1)", "(1 2)", "(2 3)"], vec!["(0 1)"]),
        ("S:4", vec!["(0 1)", "(0 1 2 3)", "(0 3 2 1)"], vec!["(0 1)", "(0 1 2 3)"]),
    ];
    let mut bad = Vec::new();
    let mut elements = 0;
    for (desc, alphabet, delta) in &instances {
        let g = construct_group(desc).unwrap();
        let s: Vec<usize> = alphabet.iter().map(|l| g.parse_element(l).unwrap()).collect();
        let d: Vec<usize> = delta.iter().map(|l| g.parse_element(l).unwrap()).collect();
        let oracle = delta_oracle(&g, &d);
        let r = cancelation_equals_delta(&g, &d, &s, &[]).unwrap();
        for row in &r.rows {
            elements += 1;
            if !(row.equal && row.delta_length == oracle[row.element]) {
                bad.push(format!(
                    "{desc} S={alphabet:?} at {}: cancel {}, l_Delta {}, oracle {}",
                    row.literal, row.cancelation, row.delta_length, oracle[row.element]
                ));
            }
            // the witness word must represent the element and cancel in that many deletions
            if eval_word(&g, &s, &row.witness).unwrap() != row.element {
                bad.push(format!("{desc}: witness for {} evaluates elsewhere", row.literal));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{} instances, {elements} elements, all equal", instances.len()),
        format!("{} mismatches, first {:?}", bad.len(), bad.first()),
    )
}

fn criterion_8() -> Outcome {
    let q = 2u32;
    let field = FiniteField::new(q * q).unwrap();
    let mut bad = Vec::new();
    let mut sizes = Vec::new();
    for n in [2usize, 3] {
        let g = construct_group(&format!("U:{n}:{q}")).unwrap();
        // d = γ^J γ^{-1} ranges over the norm-one elements; d = 1 gives the identity
        let twists: Vec<u8> = field.nonzero().filter(|&d| d != 1 && field.pow(d, (q + 1) as u64) == 1).collect();
        for d in twists {
            let mut diag = vec![1u8; n];
            diag[n - 1] = d;
            let x = g.matrix_index(&Matrix::diagonal(&diag)).unwrap();
            let size = class_of_oracle(&g, x).len();
            sizes.push(format!("n={n} d={d}: {size}"));
            if size != g.class_size(x) || size < q as usize || size > (q as usize).pow(2 * n as u32) {
                bad.push(format!("n={n} d={d}: size {size}, library {}", g.class_size(x)));
            }
        }
    }
    check(
        bad.is_empty() && !sizes.is_empty(),
        format!("class sizes in [q, q^2n]: {}", sizes.join(", ")),
        format!("{bad:?}"),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let g = construct_group("S:8").unwrap();
    let a8 = Subgroup::even_permutations(&g).unwrap();
    let l = blend_correction(&lc(&g).unwrap(), &a8, 8, 1, 3).unwrap();
    let ln_order = 40320f64.ln();
    let odd_floor = (28f64.ln() / ln_order).powf(1.0 / 8.0) * 0.75;
    let results: Vec<(bool, f64, f64)> = g
        .elements()
        .into_par_iter()
        .map(|x| {
            let images: Vec<usize> = g.perm(x).unwrap().images().collect();
            let lcx = perm_class_size(&images).ln() / ln_order;
            let odd = is_odd(&images);
            let oracle = if odd { odd_floor + lcx / 4.0 } else { lcx / 4.0 };
            (odd, l.value(x), oracle)
        })
        .collect();
    let elapsed = start.elapsed();
    let tol = 1e-9;
    let mismatch = results.iter().filter(|(_, v, o)| (v - o).abs() > tol).count();
    let odd_min = results.iter().filter(|r| r.0).map(|r| r.1).fold(f64::INFINITY, f64::min);
    let even_max = results.iter().filter(|r| !r.0).map(|r| r.1).fold(0.0, f64::max);
    check(
        mismatch == 0 && odd_min > 0.5 && even_max < 0.25 && elapsed < Duration::from_secs(120),
        format!("40320 elements: odd min {odd_min:.6} > 1/2, even max {even_max:.6} < 1/4, {elapsed:.1?}"),
        format!("odd min {odd_min}, even max {even_max}, {mismatch} oracle mismatches, {elapsed:.1?}"),
    )
}

fn criterion_10() -> Outcome {
    let groups: Vec<Arc<FiniteGroup>> = ["A:5", "A:6", "PSL:2:7"].iter().map(|d| construct_group(d).unwrap()).collect();
    let ls = empirical_LS_constant(&groups).unwrap();
    let mut bad = Vec::new();
    let mut classes = 0;
    for g in &groups {
        let data = g.classes();
        for c in 0..data.count() {
            let x = data.representative(c);
            if x == g.identity() {
                continue;
            }
            classes += 1;
            let r = covering_exponent(g, x);
            let oracle = covering_oracle(g, x);
            if r.exponent != oracle || !r.covers_group {
                bad.push(format!("{} {}: {:?} vs oracle {oracle:?}", g.descriptor(), r.element, r.exponent));
                continue;
            }
            let m = oracle.unwrap();
            let bound = (ls.constant * (g.order() as f64).ln() / (r.class_size as f64).ln()).ceil() as usize;
            if m > bound {
                bad.push(format!("{} {}: m = {m} above LS bound {bound}", g.descriptor(), r.element));
            }
        }
    }
    let fam = FamilyRule {
        rule: "symmetric".into(),
        params: FamilyParams {
            n_start: 5,
            n_step: 1,
            q: None,
            count: Some(3),
        },
        norm: "lc".into(),
        subgroup: Some("alternating".into()),
    }
    .build(10_000_000)
    .unwrap();
    let filter = FilterSpec::Tail { window_start: 0 };
    let mut witness = Vec::new();
    for (name, lits) in [
        ("transpositions", ["(0 1)", "(0 1)", "(0 1)"]),
        ("3-cycles", ["(0 1 2)", "(0 1 2)", "(0 1 2)"]),
        ("full cycles", ["(0 1 2 3 4)", "(0 1 2 3 4 5)", "(0 1 2 3 4 5 6)"]),
    ] {
        let lits: Vec<String> = lits.iter().map(|s| s.to_string()).collect();
        let x = fam.parse_sequence(&lits).unwrap();
        let r = simplicity_witness_check(&fam, &x, &filter, 0.2, None).unwrap();
        if !r.passes {
            bad.push(format!("simplicity witness fails on {name}: {:?}", r.corrector_evidence));
        }
        witness.push(name);
    }
    check(
        bad.is_empty(),
        format!(
            "{classes} classes match the oracle, c_emp = {:.4}, witness passes on {}",
            ls.constant,
            witness.join(", ")
        ),
        format!("{bad:?}"),
    )
}

/// Words of length at most `r` in two letters, reduced.
fn reduced_words(r: usize) -> Vec<Word> {
    let mut out: Vec<Word> = vec![vec![]];
    let mut frontier = out.clone();
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for l in [1, -1, 2, -2] {
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

fn criterion_11() -> Outcome {
    let g = construct_group("S:4").unwrap();
    let images = vec![g.parse_element("(0 1)").unwrap(), g.parse_element("(1 2 3)").unwrap()];
    let a4 = Subgroup::even_permutations(&g).unwrap();
    let mask = a4.mask().to_vec();
    let (gg, imgs) = (g.clone(), images.clone());
    let in_n = |w: &[i32]| free_product_is_trivial(w, &[2, 3]);
    let in_n1 = move |w: &[i32]| mask[eval_word(&gg, &imgs, w).unwrap()];
    let (eps, s) = (0.2, 2);
    let inst = WsInstance {
        group: g.clone(),
        generator_images: images,
        d_words: reduced_words(2),
        in_n: &in_n,
        in_n1: &in_n1,
        subgroup: a4,
        eps,
        s,
    };
    let r = ws_norm_builder(&inst).unwrap();
    let classes = [
        (ThresholdClass::TripleInN, "D^3∩N < 10/9 eps"),
        (ThresholdClass::OutsideN, "D∖N >= 9/40"),
        (ThresholdClass::InN1, "D∩N1 < 1/2"),
        (ThresholdClass::OutsideHAndN, "off H∪N > 21/40"),
    ];
    let summary: Vec<String> = classes
        .iter()
        .map(|(c, label)| {
            let rows: Vec<&ThresholdRow> = r.rows.iter().filter(|row| row.class == *c).collect();
            let held = rows.iter().filter(|row| row.holds).count();
            format!("{label}: {held}/{}", rows.len())
        })
        .collect();
    let gamma_ok = r.gamma.holds() && r.gamma.continuity_gap <= 1e-12 && (1.0..=10.0 / 9.0).contains(&r.gamma.p);
    let axioms_ok = r.axioms.is_invariant_pseudo_length();
    let detail = format!(
        "axioms {}, gamma p = {:.6} gap {:.1e}; {}",
        if axioms_ok { "ok" } else { "VIOLATED" },
        r.gamma.p,
        r.gamma.continuity_gap,
        summary.join("; ")
    );
    if axioms_ok && gamma_ok && r.thresholds_hold {
        return Outcome::Pass(detail);
    }
    // S_4 has five classes, so l_Delta <= 4 and eps * l_Delta <= 0.8 for any
    // choice of Delta. Below the knee gamma is linear with slope at most 10/9,
    // which caps tilde-l at gamma(0.8)/4 on H and 7/12 gamma(0.8) off H.
    let g08 = 0.8 * 10.0 / 9.0;
    let ceiling_h = g08 / 4.0;
    let ceiling_off = g08 * 7.0 / 12.0;
    let max_value = r.values.iter().copied().fold(0.0, f64::max);
    let predicted = axioms_ok
        && gamma_ok
        && ceiling_h < 9.0 / 40.0
        && ceiling_off < 21.0 / 40.0
        && r.values.iter().enumerate().all(|(x, &v)| v <= if inst.subgroup.contains(x) { ceiling_h } else { ceiling_off } + 1e-12)
        && r.rows.iter().all(|row| {
            row.holds || matches!(row.class, ThresholdClass::OutsideN | ThresholdClass::OutsideHAndN)
        });
    let detail = format!(
        "{detail}; max tilde-l {max_value:.4}, ceilings {ceiling_h:.4} on H and {ceiling_off:.4} off H \
         are below 9/40 and 21/40 for every S_4 instance at eps = 0.2"
    );
    if predicted {
        Outcome::KnownFail(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn criterion_12() -> Outcome {
    let fam = FamilyRule {
        rule: "symmetric".into(),
        params: FamilyParams {
            n_start: 3,
            n_step: 1,
            q: None,
            count: Some(10),
        },
        norm: "hamming".into(),
        subgroup: None,
    }
    .build(10_000_000)
    .unwrap();
    let r = kernel_closure_check(&fam, &FilterSpec::Tail { window_start: 5 }, 200, 0x5EED).unwrap();
    check(
        r.closed && r.members > 0 && r.sequences == 200,
        format!(
            "S_3..S_12: {} sequences, {} converged, {} kernel members, {} closure checks, 0 violations",
            r.sequences, r.converged, r.members, r.checks
        ),
        format!("{} members, violations {:?}", r.members, r.violations),
    )
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    let (mut passed, mut known, mut failed) = (0, 0, 0);
    for (i, c) in criteria.iter().enumerate() {
        let n = i + 1;
        match panic::catch_unwind(AssertUnwindSafe(c)) {
            Ok(Outcome::Pass(d)) => {
                passed += 1;
                println!("criterion {n}: PASS {d}");
            }
            Ok(Outcome::KnownFail(d)) => {
                known += 1;
                println!("criterion {n}: FAIL (expected, see notes/decisions.md) {d}");
            }
            Ok(Outcome::Fail(d)) => {
                failed += 1;
                println!("criterion {n}: FAIL {d}");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n}: FAIL (panicked)");
            }
        }
    }
    println!("acceptance: {passed} passed, {known} failed as analyzed, {failed} failed unexpectedly");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
