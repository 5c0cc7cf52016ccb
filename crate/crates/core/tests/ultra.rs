use std::collections::HashMap;
use std::sync::Arc;

use normlab::conjugacy::Word;
use normlab::group::construct_group_with_cap;
use normlab::norms::{hamming, jordan, lc, LengthFunction, NormSpec};
use normlab::ultra::*;
use normlab::{construct_group, FiniteGroup, Subgroup};

fn family(rule: &str, n_start: usize, count: usize, q: Option<u32>, norm: &str, sub: Option<&str>) -> NormedFamily {
    FamilyRule {
        rule: rule.into(),
        params: FamilyParams {
            n_start,
            n_step: 1,
            q,
            count: Some(count),
        },
        norm: norm.into(),
        subgroup: sub.map(String::from),
    }
    .build(10_000_000)
    .unwrap()
}

fn literal_sequence(fam: &NormedFamily, f: impl Fn(usize) -> String) -> Vec<usize> {
    let lits: Vec<String> = fam.params().iter().map(|&n| f(n)).collect();
    fam.parse_sequence(&lits).unwrap()
}

fn cycle(n: usize) -> String {
    format!("({})", (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
}

#[test]
fn kernel_examples() {
    let fam = family("symmetric", 4, 9, None, "hamming", None);
    let tail = FilterSpec::Tail { window_start: 4 };
    let id = fam.identity_sequence();
    assert_eq!(kernel_membership(&fam, &id, &tail).unwrap().member, Some(true));
    // fixed-point-free involutions in even degrees: norms are 1
    let fam_even = NormedFamily::new(
        "even symmetric",
        vec![4, 6, 8],
        [4, 6, 8].iter().map(|&n| hamming(&construct_group(&format!("S:{n}")).unwrap()).unwrap()).collect(),
        None,
    )
    .unwrap();
    let inv = literal_sequence(&fam_even, |n| (0..n / 2).map(|i| format!("({} {})", 2 * i, 2 * i + 1)).collect());
    let k = kernel_membership(&fam_even, &inv, &FilterSpec::Tail { window_start: 0 }).unwrap();
    assert_eq!(k.member, Some(false));
    assert_eq!(k.limit, FilterLimit::Converged { value: 1.0 });
    // transpositions: 2/n still moves on a finite window, so the answer is left open
    let t = literal_sequence(&fam, |_| "(0 1)".into());
    let k = kernel_membership(&fam, &t, &tail).unwrap();
    assert_eq!(k.member, None);
    assert_eq!(k.limit.upper(), 2.0 / 8.0);
    assert_eq!(k.limit.lower(), 2.0 / 12.0);
}

#[test]
fn ultraproduct_norm_examples() {
    let fam = family("symmetric", 3, 6, None, "hamming", None);
    let cycles = literal_sequence(&fam, cycle);
    let v = ultraproduct_norm(&fam, &cycles, &FilterSpec::Tail { window_start: 0 }).unwrap();
    assert_eq!(v, FilterLimit::Converged { value: 1.0 });
    // diag(1, ..., 1, d) in PGL_n(5) has Jordan length 1/n
    let fam = family("pgl", 2, 2, Some(5), "jordan", None);
    let diag = literal_sequence(&fam, |n| {
        let mut m = vec!["0"; n * n];
        for i in 0..n {
            m[i * n + i] = "1";
        }
        m[n * n - 1] = "2";
        format!("[{}]", m.join(","))
    });
    let values = fam.norm_values(&diag).unwrap();
    assert_eq!(values, vec![0.5, 1.0 / 3.0]);
}

#[test]
fn triangle_survives_limits() {
    let fam = family("symmetric", 5, 4, None, "hamming", None);
    let f = FilterSpec::Principal { index: 2 };
    let x = literal_sequence(&fam, |_| "(0 1 2)".into());
    let y = literal_sequence(&fam, |_| "(2 3)".into());
    let xy = fam.mul(&x, &y);
    let a = ultraproduct_norm(&fam, &x, &f).unwrap().value().unwrap();
    let b = ultraproduct_norm(&fam, &y, &f).unwrap().value().unwrap();
    let c = ultraproduct_norm(&fam, &xy, &f).unwrap().value().unwrap();
    assert!(c <= a + b + 1e-12);
}

#[test]
fn simplicity_on_symmetric_family() {
    let fam = family("symmetric", 5, 3, None, "lc", Some("alternating"));
    let x = literal_sequence(&fam, cycle);
    let report = simplicity_witness_check(&fam, &x, &FilterSpec::Tail { window_start: 0 }, 0.2, None).unwrap();
    assert!(report.passes, "{report:#?}");
    assert_eq!(report.corrector_evidence, CorrectorEvidence::Decreasing);
    for row in &report.rows {
        assert!(row.product_in_subgroup);
        assert!(row.covering_exponent.unwrap() <= row.ls_bound.unwrap());
    }
    // identity sequence lies in the kernel
    let id = fam.identity_sequence();
    assert!(simplicity_witness_check(&fam, &id, &FilterSpec::Tail { window_start: 0 }, 0.2, None).is_err());
}

#[test]
fn simplicity_on_projective_family() {
    let members: Vec<(LengthFunction, Subgroup)> = ["PGL:2:5", "PGL:2:7"]
        .iter()
        .map(|d| {
            let g = construct_group(d).unwrap();
            (lc(&g).unwrap(), Subgroup::projective_special(&g).unwrap())
        })
        .collect();
    let (norms, subs): (Vec<_>, Vec<_>) = members.into_iter().unzip();
    let fam = NormedFamily::new("PGL_2(q)", vec![5, 7], norms, Some(subs)).unwrap();
    // an element outside PSL in each group: diag(1, primitive)
    let x = fam.parse_sequence(&["[1,0,0,2]".into(), "[1,0,0,3]".into()]).unwrap();
    for i in 0..2 {
        assert!(!fam.subgroup(i).unwrap().contains(x[i]));
    }
    let report = simplicity_witness_check(&fam, &x, &FilterSpec::Tail { window_start: 0 }, 0.2, None).unwrap();
    assert!(report.products_in_subgroup);
    assert!(report.exponents_bounded);
    assert!(report.rows.iter().all(|r| r.projective_ratio_bound.is_some()));
}

#[test]
fn small_norm_star_correction() {
    let fam = family("symmetric", 4, 3, None, "lc,star:1:1:A", Some("alternating"));
    let r = small_norm_subgroup(&fam, 0.5, &FilterSpec::Tail { window_start: 0 }, 60, 0x5EED).unwrap();
    assert!(r.closed, "{:?}", r.violations);
    for row in &r.rows {
        // exactly the alternating group
        assert_eq!(row.small_count * 2, fam.group(row.index).order());
        assert_eq!(row.inf_outside, Some(1.0));
    }
    let zero = small_norm_subgroup(&fam, 0.0, &FilterSpec::Tail { window_start: 0 }, 20, 1).unwrap();
    assert!(zero.rows.iter().all(|row| row.small_count == 1));
}

#[test]
fn discreteness_examples() {
    let fam = family("symmetric", 3, 7, None, "hamming", None);
    let r = discreteness_check(&fam, None).unwrap();
    for row in &r.rows {
        assert_eq!(row.min_nonzero, Some(2.0 / row.param as f64));
    }
    assert_eq!(r.discrete, Some(false));
    let fam = family("symmetric", 3, 7, None, "lc", None);
    assert_eq!(discreteness_check(&fam, None).unwrap().discrete, Some(false));
    let fam = family("pgl", 2, 3, Some(2), "jordan", None);
    let r = discreteness_check(&fam, Some(0)).unwrap();
    for row in &r.rows {
        assert_eq!(row.min_nonzero, Some(1.0 / row.param as f64));
    }
    assert_eq!(r.discrete, Some(false));
    // one fixed dimension: constant minima
    let g = construct_group("PGL:3:5").unwrap();
    let l = jordan(&g).unwrap();
    let fam = NormedFamily::new("PGL_3(5) constant", vec![3, 3], vec![l.clone(), l], None).unwrap();
    let r = discreteness_check(&fam, Some(0)).unwrap();
    assert_eq!(r.rows[0].min_nonzero, Some(1.0 / 3.0));
    assert_eq!(r.discrete, Some(true));
}

#[test]
fn norm_spec_with_parameter() {
    let fam = family("symmetric", 4, 2, None, "blend:n:1:3:A", Some("alternating"));
    assert_eq!(fam.norm(0).name(), "lc,blend:4:1:3:A");
    assert!(NormSpec::parse("blend:n:1:3:A").is_err());
}

fn s4_instance_phi(s4: &Arc<FiniteGroup>) -> Vec<usize> {
    vec![s4.parse_element("(0 1)").unwrap(), s4.parse_element("(1 2 3)").unwrap()]
}

#[test]
fn ws_builder_basic_properties() {
    let s4 = construct_group("S:4").unwrap();
    let images = s4_instance_phi(&s4);
    let in_n = |w: &[i32]| free_product_is_trivial(w, &[2, 3]);
    let a4 = Subgroup::even_permutations(&s4).unwrap();
    let a4_check = a4.mask().to_vec();
    let imgs = images.clone();
    let g = s4.clone();
    let in_n1 = move |w: &[i32]| a4_check[normlab::conjugacy::eval_word(&g, &imgs, w).unwrap()];
    let d: Vec<Word> = vec![vec![], vec![1], vec![2], vec![-2], vec![1, 2], vec![2, 1], vec![1, 1]];
    let inst = WsInstance {
        group: s4.clone(),
        generator_images: images,
        d_words: d,
        in_n: &in_n,
        in_n1: &in_n1,
        subgroup: a4,
        eps: 0.2,
        s: 2,
    };
    let r = ws_norm_builder(&inst).unwrap();
    assert_eq!(r.r, 6);
    assert!(r.axioms.is_invariant_pseudo_length());
    assert!(r.gamma.holds());
    assert_eq!(r.values[s4.identity()], 0.0);
    // the empty word sits in D^3 ∩ N with value 0
    assert!(r
        .rows
        .iter()
        .any(|row| row.class == ThresholdClass::TripleInN && row.word.is_empty() && row.value == 0.0));
    // inside H the value is at most 1/2
    for g in s4.elements().filter(|&g| inst.subgroup.contains(g)) {
        assert!(r.values[g] <= 0.5);
    }
    let bad = WsInstance { eps: 0.3, ..inst };
    assert!(ws_norm_builder(&bad).is_err());
}

#[test]
fn approximation_witness_examples() {
    let s3 = construct_group("S:3").unwrap();
    let target = lc(&s3).unwrap();
    let domain: Vec<usize> = s3.elements().collect();
    let phi: HashMap<usize, usize> = domain.iter().map(|&g| (g, g)).collect();
    let delta: Vec<f64> = domain.iter().map(|&g| target.value(g)).collect();
    let w = ApproxWitness {
        source: s3.clone(),
        domain: domain.clone(),
        eps: 1e-6,
        delta,
        target: target.clone(),
        phi: phi.clone(),
    };
    let r = verify_approximation_witness(&w).unwrap();
    assert!(r.passes);
    assert_eq!(r.max_defect, 0.0);

    let t = s3.parse_element("(0 1)").unwrap();
    let mut moved = phi.clone();
    moved.insert(s3.identity(), t);
    let r = verify_approximation_witness(&ApproxWitness { phi: moved, ..w.clone() }).unwrap();
    assert!(!r.identity_fixed && !r.passes);

    // defect exactly eps fails the strict inequality
    let mut bent = phi.clone();
    bent.insert(t, s3.identity());
    let eps = target.value(t);
    let r = verify_approximation_witness(&ApproxWitness {
        phi: bent,
        eps,
        delta: vec![0.0; domain.len()],
        ..w
    })
    .unwrap();
    assert!((r.max_defect - eps).abs() < 1e-15);
    assert!(!r.passes);
}

#[test]
fn lef_examples() {
    let s4 = construct_group("S:4").unwrap();
    let a4 = Subgroup::even_permutations(&s4).unwrap();
    let table = PartialTable::from_group(&s4, a4.members());
    assert!(verify_lef_witness(&table, &s4, a4.members()).unwrap().passes);

    // a ball in Z/12 with one product image broken
    let c12 = FiniteGroup::cyclic(12).unwrap();
    let (ball_table, ball) = PartialTable::cayley_ball(&c12, &[1], 2);
    let c24 = FiniteGroup::cyclic(24).unwrap();
    // x -> 2x mod 24 is an embedding
    let mut phi: Vec<usize> = ball.iter().map(|&x| (2 * x) % 24).collect();
    assert!(verify_lef_witness(&ball_table, &c24, &phi).unwrap().passes);
    let last = phi.len() - 1;
    phi[last] = (phi[last] + 1) % 24;
    let r = verify_lef_witness(&ball_table, &c24, &phi).unwrap();
    assert!(!r.passes);
    assert!(r.injective);
    assert!(!r.failures.is_empty());
}

#[test]
fn lef_separation_examples() {
    let c10 = FiniteGroup::cyclic(10).unwrap();
    let none = |_: &[i32]| false;
    assert!(verify_lef_separation(&c10, &[1], &[], &[], &[], &none).unwrap().passes);
    // P = Z with P1 = 2Z, of finite index; phi(a) = 1 in Z/10
    let d2: Vec<Word> = (1..=4).flat_map(|k| [vec![1; k], vec![-1; k]]).collect();
    let in_n1 = |w: &[i32]| w.iter().sum::<i32>() % 2 == 0;
    let r = verify_lef_separation(&c10, &[1], &[vec![]], &d2, &[vec![1, 1]], &in_n1).unwrap();
    assert!(r.passes, "{r:?}");
    assert_eq!(r.h_order, 5);
    // collapsing a and a^-1
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let r = verify_lef_separation(&c2, &[1], &[], &[vec![1], vec![-1]], &[], &none).unwrap();
    assert!(!r.injective_on_d2);
}

#[test]
fn family_capacity_is_enforced() {
    let rule = FamilyRule {
        rule: "pgl".into(),
        params: FamilyParams {
            n_start: 5,
            n_step: 1,
            q: Some(3),
            count: Some(1),
        },
        norm: "jordan".into(),
        subgroup: None,
    };
    assert!(matches!(rule.build(1000), Err(normlab::Error::Capacity { .. })));
    // lazy symmetric groups are fine beyond the cap with pointwise norms
    let g = construct_group_with_cap("S:12", usize::MAX).unwrap();
    assert_eq!(g.order(), 479_001_600);
}
