//! Exhaustive search for MC(T), the maximum size of a minimal inversion
//! complete family.
//!
//! The search runs on essential-set candidates rather than on families,
//! using the following reformulation.
//!
//! Lemma. MC(T) is the largest k for which some k-subset S of the positive
//! roots admits a family {w_b : b in S} with N(w_b) n S = {b} for every b
//! and union of the N(w_b) equal to the whole positive system.
//!
//! Proof. Given such a family, each b is covered only by w_b (the other
//! members exclude it), so every member owns a private root and the family
//! is minimal inversion complete of size k; hence MC(T) >= k. Conversely a
//! minimal inversion complete Y of size MC(T) assigns to each member w a
//! root a(w) covered by w alone; S = {a(w)} has size |Y|, and
//! N(w) n S = {a(w)} because every other a(w') is covered only by w'. QED
//!
//! So the scan goes k = k_max down to k_min: enumerate k-subsets S (up to
//! diagram automorphisms, in descending total-height order), discard those
//! failing the necessary conditions on essential sets when pruning is
//! enabled, and try to assemble a covering witness family from the per-root
//! witness pools. The first feasible size is the answer; exactness holds
//! when every larger size was exhausted within budget.
//!
//! The scan is seeded with the best known family (the constructed family of
//! the type when one exists, the longest element alone otherwise), so the
//! reported value is always witnessed even when budgets truncate the scan.

use crate::completeness::{check_essential_conditions, essential_set, Family, Provenance};
use crate::coxeter::{inversion_set, longest_element, GroupElement};
use crate::families::{paper_family, PaperFamilyId};
use crate::roots::{RootSystem, TypeFamily};
use crate::sets::RootSet;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub k_min: usize,
    /// Upper end of the scan; None means the hard cap for the type.
    pub k_max: Option<usize>,
    /// Feasibility-search node budget (shared across the scan).
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    pub use_conditions_pruning: bool,
    /// Cap on each per-root witness pool; a hit downgrades exactness.
    pub pool_cap: usize,
    /// State budget for the root-path enumeration behind condition (1).
    pub path_budget: usize,
    /// Seed the scan with the known constructed family when available.
    pub seed_with_family: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k_min: 1,
            k_max: None,
            node_budget: 50_000_000,
            time_budget: None,
            threads: 0,
            use_conditions_pruning: true,
            pool_cap: 100_000,
            path_budget: 100_000,
            seed_with_family: true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    Exact,
    LowerBound,
    BudgetExhausted,
}

impl SearchStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchStatus::Exact => "exact",
            SearchStatus::LowerBound => "lower_bound",
            SearchStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

pub struct SearchResult {
    pub type_id: crate::roots::TypeId,
    pub value: usize,
    pub status: SearchStatus,
    pub witness: Family,
    pub essential_set: RootSet,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Upper bound on |S| that needs scanning: the edge bound of a
/// triangle-free graph on n+1 vertices for type A (rank n), the number of
/// positive roots otherwise.
pub fn mc_hard_cap(rs: &RootSystem) -> usize {
    match rs.type_id().family {
        TypeFamily::A => {
            let n = rs.rank() + 1;
            n * n / 4
        }
        _ => rs.n_positive(),
    }
}

/// Lazily enumerates the elements w with N(w) n S = {beta}, in
/// breadth-first weak-order sequence: extend by right multiplication and
/// prune any branch whose inversion set grows into S \ {beta}.
pub struct WitnessPool<'a> {
    rs: &'a RootSystem,
    beta: u32,
    forbidden: RootSet,
    queue: std::collections::VecDeque<GroupElement>,
    visited: HashSet<RootSet>,
}

impl<'a> WitnessPool<'a> {
    pub fn new(rs: &'a RootSystem, beta: u32, s: &RootSet) -> WitnessPool<'a> {
        assert!(s.contains(beta), "beta must lie in S");
        let mut forbidden = s.clone();
        forbidden.remove(beta);
        let id = GroupElement::identity(rs);
        let mut visited = HashSet::new();
        visited.insert(inversion_set(&id));
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(id);
        WitnessPool {
            rs,
            beta,
            forbidden,
            queue,
            visited,
        }
    }
}

impl Iterator for WitnessPool<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        while let Some(w) = self.queue.pop_front() {
            let inv = inversion_set(&w);
            for g in 0..self.rs.rank() {
                let (root, negated) = w.image_of_simple(self.rs, g);
                if negated || self.forbidden.contains(root) {
                    continue;
                }
                let mut next_inv = inv.clone();
                next_inv.insert(root);
                if self.visited.contains(&next_inv) {
                    continue;
                }
                self.visited.insert(next_inv);
                self.queue.push_back(w.right_multiply(self.rs, g));
            }
            if inv.contains(self.beta) {
                return Some(w);
            }
        }
        None
    }
}

/// Materialized pool, capped; the flag reports a cap hit.
pub fn witness_pool(
    rs: &RootSystem,
    beta: u32,
    s: &RootSet,
    cap: usize,
) -> (Vec<GroupElement>, bool) {
    let mut pool = Vec::new();
    let mut iter = WitnessPool::new(rs, beta, s);
    for w in iter.by_ref() {
        if pool.len() >= cap {
            return (pool, true);
        }
        pool.push(w);
    }
    (pool, false)
}

pub enum Feasibility {
    /// Members ordered by their essential root index.
    Feasible(Vec<GroupElement>),
    Infeasible,
    /// Budget or pool cap prevented a definite answer.
    Undecided,
}

/// Shared node/time accounting for a search run.
pub struct Budget<'a> {
    nodes: &'a AtomicU64,
    node_budget: u64,
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
}

impl<'a> Budget<'a> {
    pub fn new(
        nodes: &'a AtomicU64,
        node_budget: u64,
        deadline: Option<Instant>,
        abort: &'a AtomicBool,
    ) -> Budget<'a> {
        Budget {
            nodes,
            node_budget,
            deadline,
            abort,
        }
    }

    fn spend(&self, n: u64) -> bool {
        let used = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.node_budget || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

/// Tries to assemble a full-cover witness family for the essential-set
/// candidate S: one element per root of S, each owning exactly its root
/// within S. Pools are tried most-constrained first; within a pool,
/// elements with larger inversion sets first. A branch is cut when the
/// chosen covers plus everything the remaining pools could still cover no
/// longer reach the whole positive system.
pub fn feasible_essential_set(
    rs: &RootSystem,
    s: &RootSet,
    pool_cap: usize,
    budget: &Budget<'_>,
) -> Feasibility {
    let roots: Vec<u32> = s.indices();
    let k = roots.len();
    let mut pools: Vec<(u32, Vec<(GroupElement, RootSet)>)> = Vec::with_capacity(k);
    let mut any_capped = false;
    for &beta in &roots {
        if !budget.spend(1) {
            return Feasibility::Undecided;
        }
        let (pool, capped) = witness_pool(rs, beta, s, pool_cap);
        any_capped |= capped;
        if pool.is_empty() {
            return if capped {
                Feasibility::Undecided
            } else {
                Feasibility::Infeasible
            };
        }
        let mut with_sets: Vec<(GroupElement, RootSet)> = pool
            .into_iter()
            .map(|w| {
                let inv = inversion_set(&w);
                (w, inv)
            })
            .collect();
        // descending coverage, breadth-first sequence as the tiebreak
        with_sets.sort_by_key(|(_, inv)| std::cmp::Reverse(inv.count()));
        pools.push((beta, with_sets));
    }
    pools.sort_by_key(|(beta, pool)| (pool.len(), *beta));

    let n = rs.n_positive();
    let mut suffix_union: Vec<RootSet> = vec![RootSet::empty(n); k + 1];
    for i in (0..k).rev() {
        let mut u = suffix_union[i + 1].clone();
        for (_, inv) in &pools[i].1 {
            u.union_with(inv);
        }
        suffix_union[i] = u;
    }

    fn dfs(
        pools: &[(u32, Vec<(GroupElement, RootSet)>)],
        suffix_union: &[RootSet],
        level: usize,
        cover: &RootSet,
        chosen: &mut Vec<GroupElement>,
        budget: &Budget<'_>,
    ) -> Option<bool> {
        if level == pools.len() {
            return Some(cover.is_full());
        }
        for (w, inv) in &pools[level].1 {
            if !budget.spend(1) {
                return None;
            }
            let mut next = cover.clone();
            next.union_with(inv);
            if !next.union(&suffix_union[level + 1]).is_full() {
                continue;
            }
            chosen.push(w.clone());
            match dfs(pools, suffix_union, level + 1, &next, chosen, budget) {
                Some(true) => return Some(true),
                Some(false) => {
                    chosen.pop();
                }
                None => return None,
            }
        }
        Some(false)
    }

    let mut chosen = Vec::with_capacity(k);
    match dfs(
        &pools,
        &suffix_union,
        0,
        &RootSet::empty(n),
        &mut chosen,
        budget,
    ) {
        None => Feasibility::Undecided,
        Some(true) => {
            let mut tagged: Vec<(u32, GroupElement)> = pools
                .iter()
                .map(|(b, _)| *b)
                .zip(chosen)
                .collect();
            tagged.sort_by_key(|(b, _)| *b);
            Feasibility::Feasible(tagged.into_iter().map(|(_, w)| w).collect())
        }
        Some(false) => {
            if any_capped {
                Feasibility::Undecided
            } else {
                Feasibility::Infeasible
            }
        }
    }
}

/// Index permutations of the positive roots induced by the diagram
/// automorphisms used for candidate reduction: the reversal in type A, the
/// fork swap in type D, the reversal in type E6.
pub fn diagram_automorphisms(rs: &RootSystem) -> Vec<Vec<u32>> {
    let rank = rs.rank();
    let simple_perm: Option<Vec<usize>> = match (rs.type_id().family, rank) {
        (TypeFamily::A, r) if r >= 2 => Some((0..r).rev().collect()),
        (TypeFamily::D, r) => {
            let mut p: Vec<usize> = (0..r).collect();
            p.swap(r - 2, r - 1);
            Some(p)
        }
        (TypeFamily::E, 6) => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    };
    let Some(p) = simple_perm else {
        return Vec::new();
    };
    let n = rs.n_positive() as u32;
    let map: Vec<u32> = (0..n)
        .map(|i| {
            let coords = &rs.root(i).coords;
            let mut permuted = coords.clone();
            for (from, &to) in p.iter().enumerate() {
                permuted[to] = coords[from].clone();
            }
            rs.index_of_coords(&permuted)
                .expect("diagram automorphism must permute the positive roots")
        })
        .collect();
    vec![map]
}

fn apply_auto(map: &[u32], s: &RootSet) -> RootSet {
    let mut out = RootSet::empty(s.universe_len());
    for i in s.iter() {
        out.insert(map[i as usize]);
    }
    out
}

fn is_canonical(s: &RootSet, autos: &[Vec<u32>]) -> bool {
    autos.iter().all(|a| *s <= apply_auto(a, s))
}

fn binomials(n: usize) -> Vec<Vec<u128>> {
    let mut b = vec![vec![0u128; n + 1]; n + 1];
    for i in 0..=n {
        b[i][0] = 1;
        for j in 1..=i {
            b[i][j] = b[i - 1][j - 1] + b[i - 1][j];
        }
    }
    b
}

/// The rank-th k-combination of 0..n-1 in lexicographic order.
fn unrank_combination(mut rank: u128, n: usize, k: usize, binom: &[Vec<u128>]) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for remaining in (1..=k).rev() {
        for c in next..n {
            let with_c = binom[n - c - 1][remaining - 1];
            if rank < with_c {
                out.push(c);
                next = c + 1;
                break;
            }
            rank -= with_c;
        }
    }
    out
}

/// The known family for the type (falling back to the longest element,
/// which alone is always minimal inversion complete), used as the seed
/// witness for the scan.
fn seed_family(rs: &RootSystem, use_paper: bool) -> (Family, RootSet) {
    if use_paper {
        if let Ok(id) = PaperFamilyId::for_type(rs.type_id(), None) {
            if let Ok(pf) = paper_family(rs, id) {
                if let Ok(ess) = essential_set(rs, &pf.family) {
                    return (pf.family, ess);
                }
            }
        }
    }
    let w0 = longest_element(rs);
    let fam = Family::new(vec![w0], Provenance::Constructed).expect("singleton family");
    let ess = essential_set(rs, &fam).expect("the longest element is minimal complete");
    (fam, ess)
}

/// Two-phase scan for MC(T); see the module docs. Exact when every size
/// above the found value was exhausted without budget trouble and the scan
/// reached the hard cap.
pub fn search_mc(rs: &RootSystem, cfg: &SearchConfig) -> SearchResult {
    let started = Instant::now();
    let deadline = cfg.time_budget.map(|d| started + d);
    let n = rs.n_positive();
    let hard_cap = mc_hard_cap(rs);
    let k_max_eff = cfg.k_max.unwrap_or(hard_cap).min(n);

    let (mut best_family, mut best_ess) = seed_family(rs, cfg.seed_with_family);
    let mut best = best_family.len();

    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let undecided = AtomicBool::new(false);

    // roots ordered by descending height; candidates enumerate
    // lexicographically over this order so height-heavy sets come first
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| {
        rs.height(b)
            .cmp_real(rs.height(a))
            .then_with(|| a.cmp(&b))
    });
    let autos = diagram_automorphisms(rs);
    let binom = binomials(n);

    let run = |k: usize| -> Option<(RootSet, Vec<GroupElement>)> {
        let total = binom[n][k];
        if total > u64::MAX as u128 {
            undecided.store(true, Ordering::Relaxed);
            return None;
        }
        let scan = |rank: u64| -> Option<(RootSet, Vec<GroupElement>)> {
            if abort.load(Ordering::Relaxed) {
                undecided.store(true, Ordering::Relaxed);
                return None;
            }
            let budget = Budget {
                nodes: &nodes,
                node_budget: cfg.node_budget,
                deadline,
                abort: &abort,
            };
            if !budget.spend(1) {
                undecided.store(true, Ordering::Relaxed);
                return None;
            }
            let positions = unrank_combination(rank as u128, n, k, &binom);
            let mut s = RootSet::empty(n);
            for p in positions {
                s.insert(order[p]);
            }
            if !is_canonical(&s, &autos) {
                return None;
            }
            if cfg.use_conditions_pruning {
                let report = check_essential_conditions(rs, &s, cfg.path_budget);
                if report.any_fail() {
                    return None;
                }
            }
            match feasible_essential_set(rs, &s, cfg.pool_cap, &budget) {
                Feasibility::Feasible(members) => Some((s, members)),
                Feasibility::Infeasible => None,
                Feasibility::Undecided => {
                    undecided.store(true, Ordering::Relaxed);
                    None
                }
            }
        };
        if cfg.threads == 1 {
            (0..total as u64).find_map(scan)
        } else {
            let body = || (0..total as u64).into_par_iter().find_map_first(scan);
            if cfg.threads == 0 {
                body()
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build()
                    .expect("thread pool");
                pool.install(body)
            }
        }
    };

    let lo = cfg.k_min.max(best + 1);
    for k in (lo..=k_max_eff).rev() {
        if abort.load(Ordering::Relaxed) {
            undecided.store(true, Ordering::Relaxed);
            break;
        }
        if let Some((s, members)) = run(k) {
            best = k;
            best_family =
                Family::new(members, Provenance::Search).expect("distinct witnesses");
            best_ess = s;
            break;
        }
    }

    let status = if undecided.load(Ordering::Relaxed) {
        SearchStatus::BudgetExhausted
    } else if k_max_eff >= hard_cap.min(n) {
        SearchStatus::Exact
    } else {
        SearchStatus::LowerBound
    };
    SearchResult {
        type_id: rs.type_id(),
        value: best,
        status,
        witness: best_family,
        essential_set: best_ess,
        nodes: nodes.load(Ordering::Relaxed),
        elapsed: started.elapsed(),
    }
}

/// Independent exact oracle for tiny groups: depth-first enumeration of
/// families straight from the definition. A partial family survives only
/// while every chosen member still covers some root exactly once, and a
/// branch is cut when even claiming every currently uncovered root for a
/// new member cannot beat the best size found. No essential-set machinery
/// and none of the necessary conditions are consulted.
pub fn brute_force_mc(rs: &RootSystem) -> Result<SearchResult> {
    let started = Instant::now();
    let n = rs.n_positive();
    if n > 12 {
        return Err(Error::InstanceTooLarge(format!(
            "{} positive roots (limit 12)",
            n
        )));
    }
    // all elements, breadth-first over the weak order
    let mut visited: HashSet<RootSet> = HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    let mut elements: Vec<(GroupElement, RootSet)> = Vec::new();
    let id = GroupElement::identity(rs);
    visited.insert(inversion_set(&id));
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        let inv = inversion_set(&w);
        if elements.len() >= 240 {
            return Err(Error::InstanceTooLarge(
                "group order exceeds 240".to_string(),
            ));
        }
        elements.push((w.clone(), inv));
        for g in 0..rs.rank() {
            let (_, negated) = w.image_of_simple(rs, g);
            if negated {
                continue;
            }
            let next = w.right_multiply(rs, g);
            let next_inv = inversion_set(&next);
            if visited.insert(next_inv) {
                queue.push_back(next);
            }
        }
    }
    elements.sort_by(|a, b| a.1.count().cmp(&b.1.count()).then_with(|| a.1.cmp(&b.1)));
    // identity covers nothing and can never own a root
    let profiles: Vec<RootSet> = elements.iter().map(|(_, inv)| inv.clone()).collect();

    struct Dfs<'a> {
        profiles: &'a [RootSet],
        best: usize,
        best_members: Vec<usize>,
        nodes: u64,
    }

    impl Dfs<'_> {
        fn run(&mut self, chosen: &mut Vec<usize>, cover: &mut Vec<u8>, uncovered: usize) {
            self.nodes += 1;
            if uncovered == 0 {
                // complete; minimality already enforced along the way
                if chosen.len() > self.best {
                    self.best = chosen.len();
                    self.best_members = chosen.clone();
                }
                return;
            }
            if chosen.len() + uncovered <= self.best {
                return;
            }
            let start = chosen.last().map_or(0, |&i| i + 1);
            for cand in start..self.profiles.len() {
                let inv = &self.profiles[cand];
                // the newcomer must be able to own a currently uncovered root
                if !inv.iter().any(|r| cover[r as usize] == 0) {
                    continue;
                }
                let mut newly_covered = 0;
                for r in inv.iter() {
                    if cover[r as usize] == 0 {
                        newly_covered += 1;
                    }
                    cover[r as usize] = (cover[r as usize] + 1).min(2);
                }
                // every earlier member must still own some root
                let alive = chosen.iter().all(|&m| {
                    self.profiles[m]
                        .iter()
                        .any(|r| cover[r as usize] == 1)
                });
                if alive {
                    chosen.push(cand);
                    self.run(chosen, cover, uncovered - newly_covered);
                    chosen.pop();
                }
                // undo: counts were capped at 2, so recompute touched roots
                for r in inv.iter() {
                    let mut c = 0u8;
                    for &m in chosen.iter() {
                        if self.profiles[m].contains(r) {
                            c = (c + 1).min(2);
                            if c == 2 {
                                break;
                            }
                        }
                    }
                    cover[r as usize] = c;
                }
            }
        }
    }

    let mut dfs = Dfs {
        profiles: &profiles,
        best: 0,
        best_members: Vec::new(),
        nodes: 0,
    };
    let mut chosen = Vec::new();
    let mut cover = vec![0u8; n];
    dfs.run(&mut chosen, &mut cover, n);

    let members: Vec<GroupElement> = dfs
        .best_members
        .iter()
        .map(|&i| elements[i].0.clone())
        .collect();
    let witness = Family::new(members, Provenance::Search)?;
    let ess = essential_set(rs, &witness)?;
    Ok(SearchResult {
        type_id: rs.type_id(),
        value: dfs.best,
        status: SearchStatus::Exact,
        witness,
        essential_set: ess,
        nodes: dfs.nodes,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::{is_minimal_inversion_complete, is_weak_antichain};
    use crate::coxeter::{element_from_word, Word};
    use crate::roots::{build_root_system, TypeId};
    use std::sync::Arc;

    fn rs(t: &str) -> Arc<RootSystem> {
        build_root_system(TypeId::parse(t).unwrap()).unwrap()
    }

    fn quick_cfg() -> SearchConfig {
        SearchConfig {
            threads: 1,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn witness_pools_in_a2() {
        let r = rs("A2");
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        let s = RootSet::from_indices(3, &[a1, a2]);
        let (pool, capped) = witness_pool(&r, a1, &s, 1000);
        assert!(!capped);
        let expect: HashSet<GroupElement> = [
            element_from_word(&r, &Word(vec![1])).unwrap(),
            element_from_word(&r, &Word(vec![1, 2])).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(pool.into_iter().collect::<HashSet<_>>(), expect);

        // with S the full positive system, only the simple reflection in
        // beta survives (inversion sets are singletons)
        let full = RootSet::full(3);
        let (pool, _) = witness_pool(&r, a1, &full, 1000);
        assert_eq!(pool, vec![element_from_word(&r, &Word(vec![1])).unwrap()]);
        let theta = r.root_sum(a1, a2).unwrap();
        let (pool, _) = witness_pool(&r, theta, &full, 1000);
        assert!(pool.is_empty());
    }

    #[test]
    fn witness_pool_with_simple_essential_candidates() {
        // S = all simple roots: the pool of beta holds exactly the elements
        // whose inversion set meets the simples only in beta.
        for t in ["A3", "B3"] {
            let r = rs(t);
            let simples: Vec<u32> = (0..r.rank()).map(|g| r.simple_root(g)).collect();
            let s = RootSet::from_indices(r.n_positive(), &simples);
            for &beta in &simples {
                let (pool, capped) = witness_pool(&r, beta, &s, 100_000);
                assert!(!capped);
                for w in &pool {
                    let inv = inversion_set(w);
                    let mut meet = inv.clone();
                    meet.intersect_with(&s);
                    assert_eq!(meet.indices(), vec![beta]);
                }
                assert!(!pool.is_empty());
            }
        }
    }

    fn feasibility(rs_: &RootSystem, s: &RootSet) -> Feasibility {
        let nodes = AtomicU64::new(0);
        let abort = AtomicBool::new(false);
        let budget = Budget {
            nodes: &nodes,
            node_budget: 10_000_000,
            deadline: None,
            abort: &abort,
        };
        feasible_essential_set(rs_, s, 100_000, &budget)
    }

    #[test]
    fn feasibility_examples_in_a2() {
        let r = rs("A2");
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        let theta = r.root_sum(a1, a2).unwrap();
        // {a1, a2} is feasible via {s1 s2, s2 s1}
        match feasibility(&r, &RootSet::from_indices(3, &[a1, a2])) {
            Feasibility::Feasible(members) => {
                let fam = Family::new(members, Provenance::Search).unwrap();
                assert!(is_minimal_inversion_complete(&r, &fam));
                assert_eq!(fam.len(), 2);
            }
            _ => panic!("{{a1, a2}} must be feasible"),
        }
        // {theta} is feasible via the longest element
        match feasibility(&r, &RootSet::from_indices(3, &[theta])) {
            Feasibility::Feasible(members) => {
                assert_eq!(members.len(), 1);
                assert_eq!(members[0].length(), 3);
            }
            _ => panic!("{{theta}} must be feasible"),
        }
        // the full set is infeasible
        assert!(matches!(
            feasibility(&r, &RootSet::full(3)),
            Feasibility::Infeasible
        ));
    }

    #[test]
    fn small_searches_are_exact() {
        for (t, expect) in [("A2", 2), ("B2", 2), ("G2", 2), ("I2:5", 2), ("A3", 4), ("B3", 4)] {
            let r = rs(t);
            let res = search_mc(&r, &quick_cfg());
            assert_eq!(res.value, expect, "{t}");
            assert_eq!(res.status, SearchStatus::Exact, "{t}");
            assert!(is_minimal_inversion_complete(&r, &res.witness));
            assert!(is_weak_antichain(&res.witness));
            assert_eq!(res.witness.len(), res.value);
        }
    }

    #[test]
    fn search_without_seed_still_finds_the_value() {
        let r = rs("B2");
        let cfg = SearchConfig {
            seed_with_family: false,
            ..quick_cfg()
        };
        let res = search_mc(&r, &cfg);
        assert_eq!(res.value, 2);
        assert_eq!(res.status, SearchStatus::Exact);
    }

    #[test]
    fn pruning_toggle_agrees() {
        for t in ["A3", "B3", "I2:7"] {
            let r = rs(t);
            let on = search_mc(&r, &quick_cfg());
            let off = search_mc(
                &r,
                &SearchConfig {
                    use_conditions_pruning: false,
                    ..quick_cfg()
                },
            );
            assert_eq!(on.value, off.value, "{t}");
            assert_eq!(on.status, off.status, "{t}");
        }
    }

    #[test]
    fn brute_force_agrees_with_search() {
        for t in ["A2", "A3", "B2", "B3", "G2", "I2:5", "I2:7"] {
            let r = rs(t);
            let brute = brute_force_mc(&r).unwrap();
            let search = search_mc(&r, &quick_cfg());
            assert_eq!(brute.value, search.value, "{t}");
            assert!(is_minimal_inversion_complete(&r, &brute.witness));
            assert_eq!(brute.witness.len(), brute.value);
        }
        assert!(brute_force_mc(&rs("H3")).is_err());
    }

    #[test]
    fn determinism_across_thread_counts() {
        for t in ["B3", "D4"] {
            let r = rs(t);
            let one = search_mc(&r, &quick_cfg());
            let many = search_mc(
                &r,
                &SearchConfig {
                    threads: 4,
                    ..quick_cfg()
                },
            );
            assert_eq!(one.value, many.value);
            let key = |res: &SearchResult| {
                let mut sets = res.witness.inversion_sets();
                sets.sort();
                sets
            };
            assert_eq!(key(&one), key(&many), "{t}");
            assert_eq!(one.essential_set, many.essential_set, "{t}");
        }
    }

    #[test]
    fn capped_k_range_reports_a_lower_bound() {
        let r = rs("D4");
        let res = search_mc(
            &r,
            &SearchConfig {
                k_max: Some(7),
                ..quick_cfg()
            },
        );
        assert_eq!(res.value, 6);
        assert_eq!(res.status, SearchStatus::LowerBound);
    }

    #[test]
    fn d4_search_value() {
        let r = rs("D4");
        let res = search_mc(&r, &quick_cfg());
        assert_eq!(res.value, 6);
        assert_eq!(res.status, SearchStatus::Exact);
        let brute = brute_force_mc(&r).unwrap();
        assert_eq!(brute.value, 6);
    }
}
