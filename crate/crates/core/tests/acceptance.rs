//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measurements. Run with
//!   cargo test -p mc-core --test acceptance -- --nocapture
//! The long exact F4 search is ignored by default:
//!   cargo test -p mc-core --test acceptance -- --ignored --nocapture

use mc_core::abelian::{ade_equivalence_check, max_strongly_abelian, strongly_abelian_violation};
use mc_core::completeness::{
    condition2, condition3, encoding_graph_symmetric, essential_roots, essential_set,
    is_inversion_complete, is_minimal_inversion_complete, is_weak_antichain, Family, GraphVariant,
    Provenance,
};
use mc_core::coxeter::{
    element_from_biclosed, element_from_word, inversion_set, is_biclosed, length_by_descent,
    weak_leq, GroupElement, Word,
};
use mc_core::families::{paper_family, y_family, PaperFamilyId, F4_ESSENTIAL_COORDS};
use mc_core::roots::{build_root_system, RootSystem, TypeId};
use mc_core::scalar::{rat, rat_frac, Scalar};
use mc_core::search::{brute_force_mc, search_mc, SearchConfig, SearchStatus};
use mc_core::sets::RootSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

const SEED: u64 = 0x6d63_2024;

fn rs(t: &str) -> Arc<RootSystem> {
    build_root_system(TypeId::parse(t).unwrap()).unwrap()
}

fn random_element(r: &RootSystem, rng: &mut ChaCha8Rng, max_len: usize) -> GroupElement {
    let len = rng.gen_range(0..=max_len);
    let word = Word(
        (0..len)
            .map(|_| rng.gen_range(1..=r.rank() as u32))
            .collect(),
    );
    element_from_word(r, &word).unwrap()
}

#[test]
fn criterion_01_type_a_families() {
    let mut worst = Duration::ZERO;
    for n in 3..=9usize {
        let started = Instant::now();
        let r = rs(&format!("A{}", n - 1));
        let id = PaperFamilyId::A { n: n as u32 };
        let fam = y_family(&r, id).unwrap();
        assert_eq!(fam.len(), n * n / 4, "A_{}: wrong cardinality", n - 1);
        assert!(is_minimal_inversion_complete(&r, &fam), "A_{}", n - 1);
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(1), "A_{}: {elapsed:?}", n - 1);
        worst = worst.max(elapsed);
    }
    println!("criterion 1: PASS — A families n=3..9 verify at floor(n^2/4), worst {worst:?}");
}

#[test]
fn criterion_02_type_b_families() {
    let mut worst = Duration::ZERO;
    for n in 2..=6usize {
        let started = Instant::now();
        let r = rs(&format!("B{n}"));
        let fam = y_family(&r, PaperFamilyId::B { n: n as u32 }).unwrap();
        assert_eq!(fam.len(), n * (n - 1) / 2 + 1, "B{n}: wrong cardinality");
        assert!(is_minimal_inversion_complete(&r, &fam), "B{n}");
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(1), "B{n}: {elapsed:?}");
        worst = worst.max(elapsed);
    }
    println!("criterion 2: PASS — B families n=2..6 verify at C(n,2)+1, worst {worst:?}");
}

#[test]
fn criterion_03_type_d_families() {
    let mut worst = Duration::ZERO;
    for n in 4..=6usize {
        let started = Instant::now();
        let r = rs(&format!("D{n}"));
        let fam = y_family(&r, PaperFamilyId::D { n: n as u32 }).unwrap();
        assert_eq!(fam.len(), n * (n - 1) / 2, "D{n}: wrong cardinality");
        assert!(is_minimal_inversion_complete(&r, &fam), "D{n}");
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(1), "D{n}: {elapsed:?}");
        worst = worst.max(elapsed);
    }
    println!("criterion 3: PASS — D families n=4..6 verify at C(n,2), worst {worst:?}");
}

#[test]
fn criterion_04_exceptional_families() {
    let mut worst = Duration::ZERO;
    for (t, id, size) in [
        ("F4", PaperFamilyId::F4, 6),
        ("E6", PaperFamilyId::E6, 16),
        ("E7", PaperFamilyId::E7, 27),
        ("E8", PaperFamilyId::E8, 36),
    ] {
        let started = Instant::now();
        let r = rs(t);
        let pf = paper_family(&r, id).unwrap();
        assert!(pf.non_reduced.is_empty(), "{t}: non-reduced words");
        assert_eq!(pf.family.len(), size, "{t}: wrong cardinality");
        assert!(is_minimal_inversion_complete(&r, &pf.family), "{t}");
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(5), "{t}: {elapsed:?}");
        worst = worst.max(elapsed);
    }
    println!("criterion 4: PASS — embedded families verify at 6/16/27/36, worst {worst:?}");
}

#[test]
fn criterion_05_h_types_and_f4_table() {
    let mut worst = Duration::ZERO;

    let started = Instant::now();
    let r3 = rs("H3");
    let f3 = y_family(&r3, PaperFamilyId::H3).unwrap();
    assert_eq!(f3.len(), 5);
    assert!(is_minimal_inversion_complete(&r3, &f3));
    worst = worst.max(started.elapsed());

    let started = Instant::now();
    let r4 = rs("H4");
    let f4 = y_family(&r4, PaperFamilyId::H4).unwrap();
    assert_eq!(f4.len(), 8);
    assert!(is_minimal_inversion_complete(&r4, &f4));
    worst = worst.max(started.elapsed());

    // each F4 table root is essential to exactly its own row's word
    let started = Instant::now();
    let rf = rs("F4");
    let ff = y_family(&rf, PaperFamilyId::F4).unwrap();
    let owners = essential_roots(&rf, &ff);
    let invsets = ff.inversion_sets();
    for (row, coords) in F4_ESSENTIAL_COORDS.iter().enumerate() {
        let idx = rf.index_of_integer_coords(coords).unwrap();
        assert_eq!(owners.get(&idx), Some(&row), "F4 table row {row}");
        for (other, inv) in invsets.iter().enumerate() {
            assert_eq!(
                inv.contains(idx),
                other == row,
                "F4 root of row {row} vs word {other}"
            );
        }
    }
    worst = worst.max(started.elapsed());
    assert!(worst < Duration::from_secs(5), "{worst:?}");
    println!("criterion 5: PASS — Y(H3)=5, Y(H4)=8, F4 table roots row-essential, worst {worst:?}");
}

#[test]
fn criterion_06_exact_search_small_types() {
    let total = Instant::now();
    let cfg = SearchConfig::default();
    let mut cases = vec![
        ("A2".to_string(), 2),
        ("B2".to_string(), 2),
        ("G2".to_string(), 2),
        ("A3".to_string(), 4),
        ("B3".to_string(), 4),
        ("D4".to_string(), 6),
        ("H3".to_string(), 5),
    ];
    for m in 3..=12 {
        cases.push((format!("I2:{m}"), 2));
    }
    for (t, expect) in &cases {
        let r = rs(t);
        let res = search_mc(&r, &cfg);
        assert_eq!(res.value, *expect, "{t}");
        assert_eq!(res.status, SearchStatus::Exact, "{t}");
        assert!(is_minimal_inversion_complete(&r, &res.witness), "{t}");
        assert!(is_weak_antichain(&res.witness), "{t}");
    }
    // the definition-level oracle agrees on every instance it can run
    for t in ["A2", "A3", "B2", "B3", "G2", "I2:5", "I2:7", "D4"] {
        let r = rs(t);
        let brute = brute_force_mc(&r).unwrap();
        let search = search_mc(&r, &cfg);
        assert_eq!(brute.value, search.value, "{t}: oracle disagrees");
    }
    let elapsed = total.elapsed();
    assert!(elapsed < Duration::from_secs(600), "{elapsed:?}");
    println!(
        "criterion 6: PASS — exact MC on {} small types with oracle agreement, total {elapsed:?}",
        cases.len()
    );
}

/// Exact value for F4 by full scan of the essential-set candidates of sizes
/// 24 down to 7. Takes minutes to hours depending on the machine; bounded
/// well under the 12 h budget.
#[test]
#[ignore = "long-running exact F4 search"]
fn criterion_06_f4_exact_long() {
    let started = Instant::now();
    let r = rs("F4");
    let cfg = SearchConfig {
        k_min: 6,
        node_budget: u64::MAX,
        time_budget: Some(Duration::from_secs(12 * 3600)),
        ..SearchConfig::default()
    };
    let res = search_mc(&r, &cfg);
    assert_eq!(res.value, 6);
    assert_eq!(res.status, SearchStatus::Exact);
    assert!(is_minimal_inversion_complete(&r, &res.witness));
    println!(
        "criterion 6 (long): PASS — MC(F4) = 6 exact, {} nodes, {:?}",
        res.nodes,
        started.elapsed()
    );
}

#[test]
fn criterion_07_strongly_abelian_maxima() {
    let mut worst = Duration::ZERO;
    for (t, expect) in [("F4", 6), ("H3", 5), ("H4", 10)] {
        let started = Instant::now();
        let r = rs(t);
        let res = max_strongly_abelian(&r, Some(Duration::from_secs(600)));
        assert_eq!(res.value, expect, "{t}");
        assert_eq!(res.status, SearchStatus::Exact, "{t}");
        let elapsed = started.elapsed();
        assert!(elapsed < Duration::from_secs(600), "{t}: {elapsed:?}");
        worst = worst.max(elapsed);
    }
    println!("criterion 7: PASS — max strongly abelian 6 (F4), 5 (H3), 10 (H4), worst {worst:?}");
}

#[test]
fn criterion_08_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // |N(w)| = l(w) against the independent descent oracle
    let mut cases = 0;
    for t in ["A3", "B3", "D4", "F4", "H3", "I2:7"] {
        let r = rs(t);
        for _ in 0..200 {
            let w = random_element(&r, &mut rng, 2 * r.n_positive());
            assert_eq!(inversion_set(&w).count(), length_by_descent(&r, &w));
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    // biclosed <=> realizable as an inversion set, with round trips
    let mut cases = 0;
    for t in ["A3", "B3", "G2"] {
        let r = rs(t);
        let n = r.n_positive();
        for _ in 0..250 {
            // random subset
            let mut l = RootSet::empty(n);
            for i in 0..n as u32 {
                if rng.gen_bool(0.5) {
                    l.insert(i);
                }
            }
            match element_from_biclosed(&r, &l) {
                Ok(w) => {
                    assert!(is_biclosed(&r, &l), "{t}: realizable but not biclosed");
                    assert_eq!(inversion_set(&w), l);
                }
                Err(_) => assert!(!is_biclosed(&r, &l), "{t}: biclosed but unrealizable"),
            }
            // round trip from a random element
            let w = random_element(&r, &mut rng, 2 * n);
            let back = element_from_biclosed(&r, &inversion_set(&w)).unwrap();
            assert_eq!(back, w);
            cases += 2;
        }
    }
    // round trips hold in the noncrystallographic types as well
    for t in ["H3", "H4", "I2:5"] {
        let r = rs(t);
        for _ in 0..100 {
            let w = random_element(&r, &mut rng, 2 * r.n_positive());
            assert_eq!(
                element_from_biclosed(&r, &inversion_set(&w)).unwrap(),
                w
            );
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    // weak order <=> inversion-set inclusion, against the length identity
    let mut cases = 0;
    for t in ["A3", "B3", "H3"] {
        let r = rs(t);
        for _ in 0..400 {
            let v = random_element(&r, &mut rng, r.n_positive());
            let w = random_element(&r, &mut rng, 2 * r.n_positive());
            let by_inclusion = weak_leq(&v, &w);
            let u = v.inverse().compose(&w);
            let by_length = v.length() + u.length() == w.length();
            assert_eq!(by_inclusion, by_length, "{t}");
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    // randomly pruned minimal complete families are weak antichains
    let mut cases = 0;
    for t in ["A3", "B3", "H3"] {
        let r = rs(t);
        for _ in 0..350 {
            let fam = random_minimal_complete(&r, &mut rng);
            assert!(is_minimal_inversion_complete(&r, &fam), "{t}");
            assert!(is_weak_antichain(&fam), "{t}");
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    // duality: the coroot bijection carries inversion sets of B onto C
    let mut cases = 0;
    for n in 2..=5 {
        let rb = rs(&format!("B{n}"));
        let rc = rs(&format!("C{n}"));
        for _ in 0..250 {
            let len = rng.gen_range(0..=2 * rb.n_positive());
            let word = Word((0..len).map(|_| rng.gen_range(1..=n as u32)).collect());
            let wb = element_from_word(&rb, &word).unwrap();
            let wc = element_from_word(&rc, &word).unwrap();
            assert_eq!(
                rb.coroot_image(&inversion_set(&wb)).unwrap(),
                inversion_set(&wc),
                "B{n}"
            );
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    // reflection-based inversions equal root-based inversions
    let mut cases = 0;
    for t in ["H3", "H4", "I2:5", "I2:7"] {
        let r = rs(t);
        let n = r.n_positive() as u32;
        let reflections: Vec<GroupElement> =
            (0..n).map(|a| GroupElement::reflection(&r, a)).collect();
        for _ in 0..250 {
            let w = random_element(&r, &mut rng, 2 * r.n_positive());
            let by_roots = inversion_set(&w);
            for (a, t_refl) in reflections.iter().enumerate() {
                let shorter = t_refl.compose(&w).length() < w.length();
                assert_eq!(shorter, by_roots.contains(a as u32), "{t}");
            }
            cases += 1;
        }
    }
    assert!(cases >= 1000);

    println!("criterion 8: PASS — randomized property suites (seed {SEED:#x}), all >= 1000 cases");
}

fn random_minimal_complete(r: &RootSystem, rng: &mut ChaCha8Rng) -> Family {
    let n = r.n_positive();
    let mut members: Vec<GroupElement> = Vec::new();
    let mut sets: Vec<RootSet> = Vec::new();
    let mut cover = RootSet::empty(n);
    while !cover.is_full() {
        let w = random_element(r, rng, 2 * n);
        let inv = inversion_set(&w);
        if inv.is_empty() || sets.contains(&inv) {
            continue;
        }
        cover.union_with(&inv);
        members.push(w);
        sets.push(inv);
    }
    // drop members owning no essential root until none remain
    loop {
        let mut count = vec![0u32; n];
        for s in &sets {
            for i in s.iter() {
                count[i as usize] += 1;
            }
        }
        let redundant = (0..members.len())
            .find(|&m| sets[m].iter().all(|i| count[i as usize] >= 2));
        match redundant {
            Some(m) => {
                members.remove(m);
                sets.remove(m);
            }
            None => break,
        }
    }
    Family::new(members, Provenance::Search).unwrap()
}

#[test]
fn criterion_09_graph_criteria() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x9);

    // type A: sum-freeness of the symmetric set is exactly triangle
    // freeness of the encoding graph
    for t in ["A3", "A4", "A5"] {
        let r = rs(t);
        let n = r.n_positive();
        for _ in 0..500 {
            let density = rng.gen_range(0.05..0.8);
            let mut s = RootSet::empty(n);
            for i in 0..n as u32 {
                if rng.gen_bool(density) {
                    s.insert(i);
                }
            }
            let graph = encoding_graph_symmetric(&r, &s, GraphVariant::Standard).unwrap();
            assert_eq!(condition2(&r, &s), graph.triangle_free(), "{t}");
        }
    }

    // type B: conditions (2) and (3) together match triangle freeness of
    // both encodings
    for t in ["B3", "B4"] {
        let r = rs(t);
        let n = r.n_positive();
        for _ in 0..500 {
            let density = rng.gen_range(0.05..0.8);
            let mut s = RootSet::empty(n);
            for i in 0..n as u32 {
                if rng.gen_bool(density) {
                    s.insert(i);
                }
            }
            let std = encoding_graph_symmetric(&r, &s, GraphVariant::Standard).unwrap();
            let typec = encoding_graph_symmetric(&r, &s, GraphVariant::TypeC).unwrap();
            assert_eq!(
                condition2(&r, &s) && condition3(&r, &s),
                std.triangle_free() && typec.triangle_free(),
                "{t}"
            );
        }
    }

    // extracted essential sets in type A stay within the edge bound of
    // triangle-free graphs
    for n in 3..=9u32 {
        let r = rs(&format!("A{}", n - 1));
        let cap = (n * n / 4) as usize;
        let fam = y_family(&r, PaperFamilyId::A { n }).unwrap();
        assert!(essential_set(&r, &fam).unwrap().count() <= cap);
        for _ in 0..30 {
            let fam = random_minimal_complete(&r, &mut rng);
            let ess = essential_set(&r, &fam).unwrap();
            assert!(ess.count() <= cap, "A{}: essential set beats the cap", n - 1);
        }
    }

    println!("criterion 9: PASS — graph equivalences on 500 random sets per type, size caps hold");
}

#[test]
fn criterion_10_ade_equivalence_and_b2_certificate() {
    assert_eq!(
        ade_equivalence_check(&rs("A5"), 10_000, SEED).unwrap(),
        None,
        "A5"
    );
    assert_eq!(
        ade_equivalence_check(&rs("D5"), 10_000, SEED ^ 1).unwrap(),
        None,
        "D5"
    );
    assert_eq!(
        ade_equivalence_check(&rs("E6"), 1_000, SEED ^ 2).unwrap(),
        None,
        "E6"
    );

    // the B2 pair {e1-e2, e1+e2} is abelian but not strongly abelian, with
    // gamma = e1 at s = t = 1/2
    let r = rs("B2");
    let a = r.index_of_eps(&[rat(1), rat(-1)]).unwrap();
    let b = r.index_of_eps(&[rat(1), rat(1)]).unwrap();
    let e1 = r.index_of_eps(&[rat(1), rat(0)]).unwrap();
    let set = RootSet::from_indices(r.n_positive(), &[a, b]);
    assert!(mc_core::abelian::is_abelian(&r, &set));
    let v = strongly_abelian_violation(&r, &set).expect("violation expected");
    let half = Scalar::from_rational(r.field(), rat_frac(1, 2));
    assert_eq!((v.gamma, &v.s, &v.t), (e1, &half, &half));

    println!(
        "criterion 10: PASS — abelian <=> strongly abelian on 10^4+10^4+10^3 samples; B2 certificate s=t=1/2"
    );
}

#[test]
fn search_results_reverify_and_lower_bounds_are_honest() {
    // families emitted by the search re-verify through the verification path
    let r = rs("B3");
    let res = search_mc(&r, &SearchConfig::default());
    assert!(is_inversion_complete(&r, &res.witness));
    assert!(is_minimal_inversion_complete(&r, &res.witness));
    assert_eq!(essential_set(&r, &res.witness).unwrap().count(), res.value);

    // a type out of desk-scale reach reports a truthful lower bound status
    let re6 = rs("E6");
    let res = search_mc(
        &re6,
        &SearchConfig {
            node_budget: 50_000,
            time_budget: Some(Duration::from_secs(5)),
            ..SearchConfig::default()
        },
    );
    assert_eq!(res.value, 16, "seeded witness bound");
    assert_eq!(res.status, SearchStatus::BudgetExhausted);
    assert!(is_minimal_inversion_complete(&re6, &res.witness));
}
