//! Abelian and strongly abelian subsets of the positive roots.
//!
//! A set is abelian when no two members sum to a root, strongly abelian
//! when no positive linear combination s*a + t*b (s, t > 0) of two distinct
//! members is a root. The real-quantifier condition reduces to a finite
//! exact check: distinct positive roots are linearly independent, so for
//! each candidate root gamma the 2x2 Gram system pins down the only possible
//! (s, t), which is then verified by coordinate arithmetic and exact sign
//! tests. Only positive gamma can occur, since a positive combination of
//! positive roots stays inside the positive cone.
//!
//! Strong abelianity is a pairwise property, so maximum-size sets are
//! maximum cliques of the pair-compatibility graph.

use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::search::SearchStatus;
use crate::sets::RootSet;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::{Duration, Instant};

/// Witness that gamma = s*a + t*b with s, t > 0.
#[derive(Clone, Debug)]
pub struct Violation {
    pub a: u32,
    pub b: u32,
    pub gamma: u32,
    pub s: Scalar,
    pub t: Scalar,
}

/// No pair (including a member with itself, which is automatic for reduced
/// systems) sums to a root.
pub fn is_abelian(rs: &RootSystem, set: &RootSet) -> bool {
    let idx = set.indices();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            if rs.root_sum(a, b).is_some() {
                return false;
            }
        }
    }
    true
}

/// The exact positive solution (s, t) of gamma = s*a + t*b, if one exists.
pub fn positive_combination(
    rs: &RootSystem,
    a: u32,
    b: u32,
    gamma: u32,
) -> Option<(Scalar, Scalar)> {
    let aa = rs.inner(a, a).clone();
    let bb = rs.inner(b, b).clone();
    let ab = rs.inner(a, b).clone();
    let ga = rs.inner(gamma, a).clone();
    let gb = rs.inner(gamma, b).clone();
    let det = aa.clone() * bb.clone() - ab.clone() * ab.clone();
    debug_assert!(det.signum() > 0, "distinct roots are independent");
    let det_inv = det.inverse()?;
    let s = (ga.clone() * bb - gb.clone() * ab.clone()) * det_inv.clone();
    let t = (gb * aa - ga * ab) * det_inv;
    if s.signum() <= 0 || t.signum() <= 0 {
        return None;
    }
    // the Gram system only sees the projection; confirm the vector identity
    let ca = &rs.root(a).coords;
    let cb = &rs.root(b).coords;
    let cg = &rs.root(gamma).coords;
    let matches = (0..rs.rank()).all(|i| {
        let lhs = ca[i].clone() * s.clone() + cb[i].clone() * t.clone();
        lhs == cg[i]
    });
    if matches {
        Some((s, t))
    } else {
        None
    }
}

/// First root expressible as a positive combination of the pair, if any.
pub fn pair_violation(rs: &RootSystem, a: u32, b: u32) -> Option<Violation> {
    debug_assert_ne!(a, b);
    for gamma in 0..rs.n_positive() as u32 {
        if let Some((s, t)) = positive_combination(rs, a, b, gamma) {
            return Some(Violation { a, b, gamma, s, t });
        }
    }
    None
}

/// Scans all unordered pairs of distinct members.
pub fn strongly_abelian_violation(rs: &RootSystem, set: &RootSet) -> Option<Violation> {
    let idx = set.indices();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            if let Some(v) = pair_violation(rs, a, b) {
                return Some(v);
            }
        }
    }
    None
}

pub fn is_strongly_abelian(rs: &RootSystem, set: &RootSet) -> bool {
    strongly_abelian_violation(rs, set).is_none()
}

pub struct MaxAbelianResult {
    pub value: usize,
    pub witness: RootSet,
    pub status: SearchStatus,
    pub elapsed: Duration,
}

/// Pair-compatibility adjacency: edges are the strongly abelian pairs.
pub fn compatibility_graph(rs: &RootSystem) -> Vec<Vec<bool>> {
    let n = rs.n_positive();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let flags: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| pair_violation(rs, i as u32, j as u32).is_none())
        .collect();
    let mut adj = vec![vec![false; n]; n];
    for (&(i, j), &ok) in pairs.iter().zip(&flags) {
        adj[i][j] = ok;
        adj[j][i] = ok;
    }
    adj
}

/// Maximum-size strongly abelian subset: branch and bound over the
/// compatibility graph with a greedy coloring bound, vertices in root-index
/// order. Returns a lower-bound status only if the time budget interrupts
/// the proof of maximality.
pub fn max_strongly_abelian(
    rs: &RootSystem,
    time_budget: Option<Duration>,
) -> MaxAbelianResult {
    let started = Instant::now();
    let deadline = time_budget.map(|d| started + d);
    let adj = compatibility_graph(rs);
    let n = rs.n_positive();

    struct Search<'a> {
        adj: &'a [Vec<bool>],
        best: Vec<usize>,
        timed_out: bool,
        deadline: Option<Instant>,
    }

    impl Search<'_> {
        fn greedy_color(&self, cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for &v in cand {
                match classes
                    .iter_mut()
                    .find(|c| c.iter().all(|&u| !self.adj[u][v]))
                {
                    Some(c) => c.push(v),
                    None => classes.push(vec![v]),
                }
            }
            let mut order = Vec::with_capacity(cand.len());
            let mut bound = Vec::with_capacity(cand.len());
            for (ci, class) in classes.iter().enumerate() {
                for &v in class {
                    order.push(v);
                    bound.push(ci + 1);
                }
            }
            (order, bound)
        }

        fn expand(&mut self, cur: &mut Vec<usize>, cand: &[usize]) {
            if self.timed_out {
                return;
            }
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.timed_out = true;
                    return;
                }
            }
            if cand.is_empty() {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
                return;
            }
            let (order, bound) = self.greedy_color(cand);
            for i in (0..order.len()).rev() {
                if cur.len() + bound[i] <= self.best.len() {
                    return;
                }
                let v = order[i];
                cur.push(v);
                let next: Vec<usize> = order[..i]
                    .iter()
                    .copied()
                    .filter(|&u| self.adj[v][u])
                    .collect();
                self.expand(cur, &next);
                cur.pop();
                if self.timed_out {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        adj: &adj,
        best: Vec::new(),
        timed_out: false,
        deadline,
    };
    let all: Vec<usize> = (0..n).collect();
    search.expand(&mut Vec::new(), &all);

    let mut witness = RootSet::empty(n);
    for v in &search.best {
        witness.insert(*v as u32);
    }
    MaxAbelianResult {
        value: search.best.len(),
        witness,
        status: if search.timed_out {
            SearchStatus::LowerBound
        } else {
            SearchStatus::Exact
        },
        elapsed: started.elapsed(),
    }
}

/// Samples random subsets and compares the abelian and strongly abelian
/// verdicts; in the simply laced types they must agree. Returns the first
/// counterexample, which would indicate an implementation bug.
pub fn ade_equivalence_check(
    rs: &RootSystem,
    samples: usize,
    seed: u64,
) -> Result<Option<RootSet>> {
    use crate::roots::TypeFamily;
    if !matches!(
        rs.type_id().family,
        TypeFamily::A | TypeFamily::D | TypeFamily::E
    ) {
        return Err(Error::UnsupportedType(format!(
            "{} is not simply laced",
            rs.type_id()
        )));
    }
    let n = rs.n_positive();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<u32> = (0..n as u32).collect();
    for _ in 0..samples {
        let k = rng.gen_range(0..=n.min(10));
        let mut chosen = all.clone();
        chosen.partial_shuffle(&mut rng, k);
        let set = RootSet::from_indices(n, &chosen[..k]);
        if is_abelian(rs, &set) != is_strongly_abelian(rs, &set) {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, TypeId};
    use crate::scalar::{rat, rat_frac, Rational, Scalar};
    use std::sync::Arc;

    fn rs(t: &str) -> Arc<RootSystem> {
        build_root_system(TypeId::parse(t).unwrap()).unwrap()
    }

    #[test]
    fn abelian_examples() {
        let r = rs("A2");
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        assert!(is_abelian(&r, &RootSet::from_indices(3, &[a1])));
        assert!(!is_abelian(&r, &RootSet::from_indices(3, &[a1, a2])));

        let rb = rs("B2");
        let e = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| rat(x)).collect() };
        let pair = RootSet::from_indices(
            rb.n_positive(),
            &[
                rb.index_of_eps(&e(&[1, -1])).unwrap(),
                rb.index_of_eps(&e(&[1, 1])).unwrap(),
            ],
        );
        assert!(is_abelian(&rb, &pair));
    }

    #[test]
    fn b2_abelian_but_not_strongly() {
        // {e1-e2, e1+e2}: their average is e1, so s = t = 1/2 violates.
        let r = rs("B2");
        let e = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| rat(x)).collect() };
        let a = r.index_of_eps(&e(&[1, -1])).unwrap();
        let b = r.index_of_eps(&e(&[1, 1])).unwrap();
        let e1 = r.index_of_eps(&e(&[1, 0])).unwrap();
        let set = RootSet::from_indices(r.n_positive(), &[a, b]);
        assert!(is_abelian(&r, &set));
        let v = strongly_abelian_violation(&r, &set).expect("must violate");
        assert_eq!(v.gamma, e1);
        let half = Scalar::from_rational(r.field(), rat_frac(1, 2));
        assert_eq!(v.s, half);
        assert_eq!(v.t, half);
    }

    #[test]
    fn strongly_abelian_implies_abelian_on_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in ["B3", "F4", "H3", "G2"] {
            let r = rs(t);
            let n = r.n_positive();
            for _ in 0..300 {
                let k = rng.gen_range(0..=n.min(8));
                let mut idx: Vec<u32> = (0..n as u32).collect();
                use rand::seq::SliceRandom;
                idx.partial_shuffle(&mut rng, k);
                let set = RootSet::from_indices(n, &idx[..k]);
                if is_strongly_abelian(&r, &set) {
                    assert!(is_abelian(&r, &set), "{t}: strongly abelian but not abelian");
                }
            }
        }
    }

    #[test]
    fn singleton_sets_are_strongly_abelian() {
        let r = rs("B2");
        for i in 0..r.n_positive() as u32 {
            assert!(is_strongly_abelian(
                &r,
                &RootSet::from_indices(r.n_positive(), &[i])
            ));
        }
    }

    #[test]
    fn max_strongly_abelian_small_types() {
        let f4 = max_strongly_abelian(&rs("F4"), None);
        assert_eq!(f4.value, 6);
        assert_eq!(f4.status, SearchStatus::Exact);
        assert!(is_strongly_abelian(&rs("F4"), &f4.witness));

        let h3 = max_strongly_abelian(&rs("H3"), None);
        assert_eq!(h3.value, 5);
        assert!(is_strongly_abelian(&rs("H3"), &h3.witness));
    }

    #[test]
    fn constructed_essential_sets_are_strongly_abelian() {
        use crate::families::{essential_set_of_family, PaperFamilyId};
        for t in ["A5", "B4", "D4", "F4", "H3", "H4"] {
            let r = rs(t);
            let id = PaperFamilyId::for_type(r.type_id(), None).unwrap();
            let ess = essential_set_of_family(&r, id).unwrap();
            assert!(is_strongly_abelian(&r, &ess), "{t}");
        }
    }

    #[test]
    fn maximum_is_stable_under_diagram_automorphisms() {
        use crate::search::diagram_automorphisms;
        let r = rs("D4");
        let res = max_strongly_abelian(&r, None);
        for auto in diagram_automorphisms(&r) {
            let mut image = RootSet::empty(r.n_positive());
            for i in res.witness.iter() {
                image.insert(auto[i as usize]);
            }
            assert!(is_strongly_abelian(&r, &image));
            assert_eq!(image.count(), res.value);
        }
    }

    #[test]
    fn ade_equivalence_small_samples() {
        for t in ["A3", "D4"] {
            let r = rs(t);
            assert_eq!(ade_equivalence_check(&r, 500, 99).unwrap(), None, "{t}");
        }
        assert!(ade_equivalence_check(&rs("B3"), 10, 0).is_err());
    }

    #[test]
    fn nonsimple_roots_decompose_positively() {
        // every positive root outside the simple basis is a positive
        // combination of two positive roots
        for t in ["A3", "B3", "D4", "G2", "F4", "H3", "I2:5", "I2:7"] {
            let r = rs(t);
            let n = r.n_positive() as u32;
            for gamma in 0..n {
                if r.generator_of(gamma).is_some() {
                    continue;
                }
                let found = (0..n).any(|a| {
                    (a..n).any(|b| {
                        (a != gamma || b != gamma)
                            && a != b
                            && positive_combination(&r, a, b, gamma).is_some()
                    })
                });
                assert!(found, "{t}: root {gamma} admits no positive decomposition");
            }
        }
    }
}
