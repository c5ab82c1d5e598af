//! Inversion complete and minimal inversion complete families, essential
//! roots, root paths, the three necessary conditions on essential sets, and
//! the graph encodings of symmetric root subsets in the classical types.

use crate::coxeter::{inversion_set, weak_leq, GroupElement};
use crate::roots::{RootSystem, SignedIndex, TypeFamily};
use crate::scalar::Rational;
use crate::sets::RootSet;
use crate::{Error, Result};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Provenance {
    Constructed,
    Embedded,
    Search,
}

/// An ordered family of group elements, a candidate minimal inversion
/// complete set.
#[derive(Clone)]
pub struct Family {
    members: Vec<GroupElement>,
    provenance: Provenance,
}

impl Family {
    /// Members must be pairwise distinct (compared by inversion set, which
    /// identifies elements).
    pub fn new(members: Vec<GroupElement>, provenance: Provenance) -> Result<Family> {
        let mut seen = HashSet::new();
        for (i, m) in members.iter().enumerate() {
            if !seen.insert(inversion_set(m)) {
                return Err(Error::DuplicateMember(i));
            }
        }
        Ok(Family {
            members,
            provenance,
        })
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn inversion_sets(&self) -> Vec<RootSet> {
        self.members.iter().map(inversion_set).collect()
    }
}

/// Union of the members' inversion sets covers the whole positive system.
pub fn is_inversion_complete(rs: &RootSystem, y: &Family) -> bool {
    let mut cover = RootSet::empty(rs.n_positive());
    for m in y.members() {
        cover.union_with(&inversion_set(m));
    }
    cover.is_full()
}

/// Roots covered by exactly one member, mapped to that member's index.
pub fn essential_roots(rs: &RootSystem, y: &Family) -> BTreeMap<u32, usize> {
    let n = rs.n_positive();
    let mut count = vec![0u32; n];
    let mut owner = vec![0usize; n];
    for (mi, m) in y.members().iter().enumerate() {
        for r in inversion_set(m).iter() {
            count[r as usize] += 1;
            owner[r as usize] = mi;
        }
    }
    (0..n as u32)
        .filter(|&r| count[r as usize] == 1)
        .map(|r| (r, owner[r as usize]))
        .collect()
}

/// Complete, and every member owns at least one essential root (so no
/// proper subfamily is complete).
pub fn is_minimal_inversion_complete(rs: &RootSystem, y: &Family) -> bool {
    if y.is_empty() || !is_inversion_complete(rs, y) {
        return false;
    }
    let essentials = essential_roots(rs, y);
    let mut owned = vec![false; y.len()];
    for &mi in essentials.values() {
        owned[mi] = true;
    }
    owned.into_iter().all(|b| b)
}

/// No two distinct members are comparable in the weak order.
pub fn is_weak_antichain(y: &Family) -> bool {
    let ms = y.members();
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            if i != j && weak_leq(&ms[i], &ms[j]) {
                return false;
            }
        }
    }
    true
}

/// One essential root per member: the lowest-index essential root owned by
/// each. Errors if the family is not minimal inversion complete.
pub fn essential_set(rs: &RootSystem, y: &Family) -> Result<RootSet> {
    if !is_minimal_inversion_complete(rs, y) {
        return Err(Error::NotMinimalComplete(format!(
            "family of size {}",
            y.len()
        )));
    }
    let essentials = essential_roots(rs, y);
    let mut chosen = vec![None; y.len()];
    for (&r, &mi) in essentials.iter() {
        if chosen[mi].is_none() {
            chosen[mi] = Some(r);
        }
    }
    let mut out = RootSet::empty(rs.n_positive());
    for c in chosen {
        out.insert(c.expect("every member of a minimal complete family owns an essential root"));
    }
    Ok(out)
}

pub const DEFAULT_PATH_BUDGET: usize = 1_000_000;

/// For each positive root gamma, the distinct supports of root paths with
/// steps in `s_plus` and last sum gamma. States are (current sum, support)
/// pairs; partial sums strictly gain height, so the walk terminates. Errors
/// when the state count exceeds `budget`.
pub fn enumerate_root_paths(
    rs: &RootSystem,
    s_plus: &RootSet,
    budget: usize,
) -> Result<BTreeMap<u32, Vec<RootSet>>> {
    let steps: Vec<u32> = s_plus.indices();
    let mut seen: HashSet<(u32, RootSet)> = HashSet::new();
    let mut queue: VecDeque<(u32, RootSet)> = VecDeque::new();
    for &s in &steps {
        let mut supp = RootSet::empty(rs.n_positive());
        supp.insert(s);
        let state = (s, supp);
        if seen.insert(state.clone()) {
            queue.push_back(state);
        }
    }
    while let Some((sum, supp)) = queue.pop_front() {
        for &s in &steps {
            if let Some(next) = rs.root_sum(sum, s) {
                let mut nsupp = supp.clone();
                nsupp.insert(s);
                let state = (next, nsupp);
                if !seen.contains(&state) {
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded(format!(
                            "root-path state budget {budget}"
                        )));
                    }
                    seen.insert(state.clone());
                    queue.push_back(state);
                }
            }
        }
    }
    let mut out: BTreeMap<u32, Vec<RootSet>> = BTreeMap::new();
    for (sum, supp) in seen {
        out.entry(sum).or_default().push(supp);
    }
    for supports in out.values_mut() {
        supports.sort();
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Copy, Debug)]
pub struct ConditionsReport {
    /// Path supports with equal last sum pairwise intersect.
    pub cond1: Verdict,
    /// S = S+ u -S+ is sum-free within the root system.
    pub cond2: Verdict,
    /// S contains no root string of length two or more.
    pub cond3: Verdict,
}

impl ConditionsReport {
    pub fn all_pass(&self) -> bool {
        [self.cond1, self.cond2, self.cond3]
            .iter()
            .all(|v| *v == Verdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        [self.cond1, self.cond2, self.cond3].contains(&Verdict::Fail)
    }
}

/// Condition: no a, b, c in S+ with alpha_a + alpha_b = alpha_c. Signed
/// cases reduce to this because S is symmetric.
pub fn condition2(rs: &RootSystem, s_plus: &RootSet) -> bool {
    let idx = s_plus.indices();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i..] {
            if let Some(c) = rs.root_sum(a, b) {
                if s_plus.contains(c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Condition: no alpha in S and positive gamma with alpha, alpha+gamma,
/// alpha+2gamma all in S (membership in the symmetric S depends only on the
/// unsigned index).
pub fn condition3(rs: &RootSystem, s_plus: &RootSet) -> bool {
    let n = rs.n_positive() as u32;
    let in_s = |x: SignedIndex| s_plus.contains(x.0);
    for a in s_plus.indices() {
        for sign in [false, true] {
            let alpha = (a, sign);
            for g in 0..n {
                if let Some(m1) = rs.signed_sum(alpha, (g, false)) {
                    if in_s(m1) {
                        if let Some(m2) = rs.signed_sum(m1, (g, false)) {
                            if in_s(m2) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Evaluates the three necessary conditions for S+ to be an essential set,
/// on S = S+ u -S+. Condition (1) may come back Undecided when the path
/// enumeration exceeds its state budget; callers treating these as pruning
/// rules must then keep the candidate.
pub fn check_essential_conditions(
    rs: &RootSystem,
    s_plus: &RootSet,
    path_budget: usize,
) -> ConditionsReport {
    let cond2 = if condition2(rs, s_plus) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let cond3 = if condition3(rs, s_plus) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let cond1 = match enumerate_root_paths(rs, s_plus, path_budget) {
        Err(_) => Verdict::Undecided,
        Ok(by_sum) => {
            let ok = by_sum.values().all(|supports| {
                supports
                    .iter()
                    .enumerate()
                    .all(|(i, u)| supports[i + 1..].iter().all(|v| u.intersects(v)))
            });
            if ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
    };
    ConditionsReport { cond1, cond2, cond3 }
}

/// Graph encoding of a set of roots in the classical types: vertices are
/// integer labels, arcs directed; for symmetric input the underlying
/// undirected graph is the object of interest.
#[derive(Clone, Debug)]
pub struct EncodingGraph {
    pub vertices: Vec<i32>,
    pub arcs: BTreeSet<(i32, i32)>,
}

impl EncodingGraph {
    pub fn undirected_edges(&self) -> BTreeSet<(i32, i32)> {
        self.arcs
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.undirected_edges().len()
    }

    /// No 3-clique in the underlying undirected graph.
    pub fn triangle_free(&self) -> bool {
        let edges = self.undirected_edges();
        let verts = &self.vertices;
        let has = |a: i32, b: i32| edges.contains(&(a.min(b), a.max(b)));
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if !has(u, v) {
                    continue;
                }
                for &t in verts.iter().skip(j + 1) {
                    if has(u, t) && has(v, t) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphVariant {
    Standard,
    TypeC,
}

fn eps_support(eps: &[Rational]) -> Vec<(usize, i32)> {
    eps.iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| {
            let v = if q.is_integer() {
                let n: i64 = q.to_integer().try_into().expect("small eps entry");
                n as i32
            } else {
                panic!("non-integer epsilon coordinate in encoding graph")
            };
            (i, v)
        })
        .collect()
}

/// Arcs contributed by one signed root, per the classical encoding. Type A
/// roots e_i - e_j give the single arc i -> j; types B/C/D roots give an
/// antiparallel pair under the vertex involution v -> -v, with short roots
/// e_i passing through the extra vertex 0 (standard variant) or contracted
/// to i -> -i (type C variant).
fn arcs_of_signed_root(
    rs: &RootSystem,
    x: SignedIndex,
    variant: GraphVariant,
) -> Vec<(i32, i32)> {
    let root = rs.root(x.0);
    let eps = root.eps.as_ref().expect("classical type required");
    let mut sup = eps_support(eps);
    if x.1 {
        for (_, v) in &mut sup {
            *v = -*v;
        }
    }
    match rs.type_id().family {
        TypeFamily::A => {
            // e_i - e_j, 1-based vertices
            assert_eq!(sup.len(), 2);
            let (i, vi) = sup[0];
            let (j, vj) = sup[1];
            debug_assert!(vi == -vj);
            let (from, to) = if vi > 0 { (i, j) } else { (j, i) };
            vec![(from as i32 + 1, to as i32 + 1)]
        }
        TypeFamily::B | TypeFamily::C | TypeFamily::D => match sup.len() {
            // sgn(i) e_|i| - sgn(j) e_|j| gives arcs (i, j) and (-j, -i)
            2 => {
                let (i, vi) = sup[0];
                let (j, vj) = sup[1];
                let a = (i as i32 + 1) * vi.signum();
                let b = -(j as i32 + 1) * vj.signum();
                debug_assert!(vi.abs() == 1 && vj.abs() == 1);
                vec![(a, b), (-b, -a)]
            }
            // type B short root e_i (or C long root 2 e_i)
            1 => {
                let (i, vi) = sup[0];
                let v = (i as i32 + 1) * vi.signum();
                if variant == GraphVariant::TypeC || vi.abs() == 2 {
                    vec![(v, -v)]
                } else {
                    vec![(v, 0), (0, -v)]
                }
            }
            _ => unreachable!("classical roots touch at most two axes"),
        },
        _ => unreachable!("checked classical above"),
    }
}

/// The directed encoding graph of a signed set of roots. `signed` lists the
/// members of S; pass both signs for a symmetric set.
pub fn encoding_graph_signed(
    rs: &RootSystem,
    signed: &[SignedIndex],
    variant: GraphVariant,
) -> Result<EncodingGraph> {
    if !rs.type_id().is_classical() {
        return Err(Error::UnsupportedType(format!(
            "{} has no classical graph encoding",
            rs.type_id()
        )));
    }
    let n = rs.rank() as i32;
    let n_eps = match rs.type_id().family {
        TypeFamily::A => n + 1,
        _ => n,
    };
    let mut vertices: Vec<i32> = Vec::new();
    match (rs.type_id().family, variant) {
        (TypeFamily::A, _) => vertices.extend(1..=n_eps),
        (TypeFamily::B, GraphVariant::Standard) => {
            vertices.push(0);
            for i in 1..=n_eps {
                vertices.push(i);
                vertices.push(-i);
            }
        }
        _ => {
            for i in 1..=n_eps {
                vertices.push(i);
                vertices.push(-i);
            }
        }
    }
    vertices.sort_unstable();
    let mut arcs = BTreeSet::new();
    for &x in signed {
        for arc in arcs_of_signed_root(rs, x, variant) {
            arcs.insert(arc);
        }
    }
    Ok(EncodingGraph { vertices, arcs })
}

/// Graph of the symmetric set S+ u -S+.
pub fn encoding_graph_symmetric(
    rs: &RootSystem,
    s_plus: &RootSet,
    variant: GraphVariant,
) -> Result<EncodingGraph> {
    let signed: Vec<SignedIndex> = s_plus
        .iter()
        .flat_map(|i| [(i, false), (i, true)])
        .collect();
    encoding_graph_signed(rs, &signed, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{element_from_word, Word};
    use crate::roots::{build_root_system, TypeId};
    use crate::scalar::rat;
    use std::sync::Arc;

    fn rs(t: &str) -> Arc<RootSystem> {
        build_root_system(TypeId::parse(t).unwrap()).unwrap()
    }

    fn fam(rs: &RootSystem, words: &[&[u32]]) -> Family {
        Family::new(
            words
                .iter()
                .map(|w| element_from_word(rs, &Word(w.to_vec())).unwrap())
                .collect(),
            Provenance::Constructed,
        )
        .unwrap()
    }

    #[test]
    fn completeness_and_minimality_a2() {
        let r = rs("A2");
        let w0 = fam(&r, &[&[1, 2, 1]]);
        assert!(is_inversion_complete(&r, &w0));
        assert!(is_minimal_inversion_complete(&r, &w0));
        assert!(!is_inversion_complete(&r, &fam(&r, &[&[]])));
        let two = fam(&r, &[&[1, 2], &[2, 1]]);
        assert!(is_inversion_complete(&r, &two));
        assert!(is_minimal_inversion_complete(&r, &two));
        let padded = fam(&r, &[&[1, 2, 1], &[1]]);
        assert!(is_inversion_complete(&r, &padded));
        assert!(!is_minimal_inversion_complete(&r, &padded));
    }

    #[test]
    fn essential_root_maps() {
        let r = rs("A2");
        let w0 = fam(&r, &[&[1, 2, 1]]);
        let all = essential_roots(&r, &w0);
        assert_eq!(all.len(), 3);
        assert!(all.values().all(|&m| m == 0));

        let two = fam(&r, &[&[1, 2], &[2, 1]]);
        let ess = essential_roots(&r, &two);
        // a1 -> member 0, a2 -> member 1; the high root is covered twice
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        assert_eq!(ess.get(&a1), Some(&0));
        assert_eq!(ess.get(&a2), Some(&1));
        assert_eq!(ess.len(), 2);

        let padded = fam(&r, &[&[1, 2, 1], &[1]]);
        let ess = essential_roots(&r, &padded);
        assert!(!ess.contains_key(&a1));
        assert_eq!(ess.len(), 2);
        assert!(ess.values().all(|&m| m == 0));
    }

    #[test]
    fn antichain_checks() {
        let r = rs("A2");
        assert!(is_weak_antichain(&fam(&r, &[&[1, 2, 1]])));
        assert!(!is_weak_antichain(&fam(&r, &[&[], &[1]])));
        assert!(is_weak_antichain(&fam(&r, &[&[1, 2], &[2, 1]])));
    }

    #[test]
    fn root_paths_in_a2() {
        let r = rs("A2");
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        let theta = r.root_sum(a1, a2).unwrap();
        let n = r.n_positive();

        let only_a1 = enumerate_root_paths(&r, &RootSet::from_indices(n, &[a1]), 1000).unwrap();
        assert_eq!(only_a1.len(), 1);
        assert_eq!(only_a1[&a1], vec![RootSet::from_indices(n, &[a1])]);

        let both = enumerate_root_paths(&r, &RootSet::from_indices(n, &[a1, a2]), 1000).unwrap();
        // two orderings, one support
        assert_eq!(both[&theta], vec![RootSet::from_indices(n, &[a1, a2])]);

        let all = enumerate_root_paths(&r, &RootSet::full(n), 1000).unwrap();
        let mut expect = vec![
            RootSet::from_indices(n, &[a1, a2]),
            RootSet::from_indices(n, &[theta]),
        ];
        expect.sort();
        assert_eq!(all[&theta], expect);

        assert!(matches!(
            enumerate_root_paths(&r, &RootSet::full(n), 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn conditions_in_a2() {
        let r = rs("A2");
        let n = r.n_positive();
        let full = RootSet::full(n);
        let rep = check_essential_conditions(&r, &full, 1000);
        assert_eq!(rep.cond2, Verdict::Fail);
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        let rep = check_essential_conditions(&r, &RootSet::from_indices(n, &[a1, a2]), 1000);
        assert!(rep.all_pass());
    }

    #[test]
    fn condition3_sees_strings_through_signs() {
        // In B2 the string e1-e2, e1, e1+e2 steps twice by e2.
        let r = rs("B2");
        let e = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| rat(x)).collect() };
        let s = RootSet::from_indices(
            r.n_positive(),
            &[
                r.index_of_eps(&e(&[1, -1])).unwrap(),
                r.index_of_eps(&e(&[1, 0])).unwrap(),
                r.index_of_eps(&e(&[1, 1])).unwrap(),
            ],
        );
        assert!(!condition3(&r, &s));
        assert!(condition2(&r, &s)); // no two of them sum to a root
    }

    #[test]
    fn a2_encoding_graph() {
        let r = rs("A2");
        let a1 = r.simple_root(0);
        let g = encoding_graph_symmetric(
            &r,
            &RootSet::from_indices(3, &[a1]),
            GraphVariant::Standard,
        )
        .unwrap();
        assert_eq!(g.undirected_edges().into_iter().collect::<Vec<_>>(), vec![(1, 2)]);
        // the full symmetric set of A2 has a triangle
        let g = encoding_graph_symmetric(&r, &RootSet::full(3), GraphVariant::Standard).unwrap();
        assert!(!g.triangle_free());
        assert_eq!(g.edge_count(), 3);
        // empty set: edgeless
        let g = encoding_graph_symmetric(&r, &RootSet::empty(3), GraphVariant::Standard).unwrap();
        assert!(g.triangle_free());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn b2_short_root_arcs() {
        let r = rs("B2");
        let e1 = r.index_of_eps(&[rat(1), rat(0)]).unwrap();
        let s = RootSet::from_indices(r.n_positive(), &[e1]);
        let g = encoding_graph_symmetric(&r, &s, GraphVariant::Standard).unwrap();
        let edges: Vec<_> = g.undirected_edges().into_iter().collect();
        assert_eq!(edges, vec![(-1, 0), (0, 1)]);
        let gc = encoding_graph_symmetric(&r, &s, GraphVariant::TypeC).unwrap();
        let edges: Vec<_> = gc.undirected_edges().into_iter().collect();
        assert_eq!(edges, vec![(-1, 1)]);
    }

    #[test]
    fn bipartite_graphs_are_triangle_free() {
        let g = EncodingGraph {
            vertices: vec![1, 2, 3, 4],
            arcs: [(1, 3), (1, 4), (2, 3), (2, 4)].into_iter().collect(),
        };
        assert!(g.triangle_free());
    }

    #[test]
    fn duplicate_members_rejected() {
        let r = rs("A2");
        let w = element_from_word(&r, &Word(vec![1, 2])).unwrap();
        let dup = Family::new(vec![w.clone(), w], Provenance::Constructed);
        assert!(matches!(dup, Err(Error::DuplicateMember(1))));
    }
}
