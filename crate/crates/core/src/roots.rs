//! Construction of the positive root systems of all finite irreducible
//! types, with exact coordinates and the lookup tables everything else in
//! the crate runs on: root sums and differences, simple-reflection actions,
//! the full reflection table, the bilinear form, and the B/C coroot
//! bijection.
//!
//! Roots are stored in the simple-root basis. Crystallographic types use the
//! standard realizations (classical types additionally carry epsilon
//! coordinates matching the usual tables); H3, H4 and I2(m) use the
//! canonical geometric representation with unit simple roots and
//! (a_s, a_t) = -cos(pi/m_st). Positive roots are indexed in a fixed order:
//! graded by height, ties broken lexicographically on coordinates, so all
//! bit-set encodings and serialized output are reproducible.

use crate::scalar::{rat, rat_frac, NumberField, Rational, Scalar};
use crate::sets::RootSet;
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum TypeFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

/// A finite irreducible type: family letter, rank, and the dihedral label m
/// for I2(m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeId {
    pub family: TypeFamily,
    pub rank: u32,
    pub dihedral_m: Option<u32>,
}

impl TypeId {
    pub fn new(family: TypeFamily, rank: u32) -> Result<TypeId> {
        let t = TypeId {
            family,
            rank,
            dihedral_m: None,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn dihedral(m: u32) -> Result<TypeId> {
        let t = TypeId {
            family: TypeFamily::I,
            rank: 2,
            dihedral_m: Some(m),
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        use TypeFamily::*;
        let ok = match self.family {
            A => self.rank >= 1,
            B | C => self.rank >= 2,
            D => self.rank >= 4,
            E => (6..=8).contains(&self.rank),
            F => self.rank == 4,
            G => self.rank == 2,
            H => (3..=4).contains(&self.rank),
            I => self.rank == 2 && self.dihedral_m.is_some_and(|m| m >= 3),
        };
        if self.family != I && self.dihedral_m.is_some() {
            return Err(Error::InvalidType(format!("{self}")));
        }
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidType(format!("{self}")))
        }
    }

    pub fn is_crystallographic(&self) -> bool {
        !matches!(self.family, TypeFamily::H | TypeFamily::I)
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self.family,
            TypeFamily::A | TypeFamily::B | TypeFamily::C | TypeFamily::D
        )
    }

    /// Parses "A5", "B3", "H4", "I2:7".
    pub fn parse(s: &str) -> Result<TypeId> {
        let s = s.trim();
        let err = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let fam = match chars.next().ok_or_else(err)? {
            'A' | 'a' => TypeFamily::A,
            'B' | 'b' => TypeFamily::B,
            'C' | 'c' => TypeFamily::C,
            'D' | 'd' => TypeFamily::D,
            'E' | 'e' => TypeFamily::E,
            'F' | 'f' => TypeFamily::F,
            'G' | 'g' => TypeFamily::G,
            'H' | 'h' => TypeFamily::H,
            'I' | 'i' => TypeFamily::I,
            _ => return Err(err()),
        };
        let rest = chars.as_str();
        if fam == TypeFamily::I {
            let (rank_s, m_s) = rest.split_once(':').ok_or_else(err)?;
            if rank_s != "2" {
                return Err(err());
            }
            let m: u32 = m_s.parse().map_err(|_| err())?;
            TypeId::dihedral(m)
        } else {
            let rank: u32 = rest.parse().map_err(|_| err())?;
            TypeId::new(fam, rank)
        }
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dihedral_m {
            Some(m) => write!(f, "I{}:{}", self.rank, m),
            None => write!(f, "{:?}{}", self.family, self.rank),
        }
    }
}

impl fmt::Debug for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for TypeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<TypeId> {
        TypeId::parse(s)
    }
}

/// A positive root: coordinates in the simple-root basis, plus epsilon
/// coordinates for the classical types.
#[derive(Clone)]
pub struct Root {
    pub coords: Vec<Scalar>,
    pub eps: Option<Vec<Rational>>,
}

/// Signed reference to a root: (positive-root index, negated flag).
pub type SignedIndex = (u32, bool);

pub struct RootSystem {
    type_id: TypeId,
    field: Arc<NumberField>,
    rank: usize,
    simple_gram: Vec<Vec<Scalar>>,
    coxeter_m: Vec<Vec<u32>>,
    roots: Vec<Root>,
    heights: Vec<Scalar>,
    simple_root_idx: Vec<u32>,
    coord_index: HashMap<Vec<Scalar>, u32>,
    eps_index: Option<HashMap<Vec<Rational>, u32>>,
    sum_table: Vec<Option<u32>>,
    diff_table: Vec<Option<SignedIndex>>,
    simple_refl: Vec<Vec<SignedIndex>>,
    refl: Vec<Vec<SignedIndex>>,
    gram: Vec<Vec<Scalar>>,
    highest: Option<u32>,
    coroot_map: Option<Vec<u32>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, {} positive roots)", self.type_id, self.roots.len())
    }
}

static CACHE: OnceLock<Mutex<HashMap<TypeId, Arc<RootSystem>>>> = OnceLock::new();

/// Builds (or fetches from the per-process cache) the root system of the
/// given type.
pub fn build_root_system(t: TypeId) -> Result<Arc<RootSystem>> {
    t.validate()?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rs) = cache.lock().unwrap().get(&t) {
        return Ok(Arc::clone(rs));
    }
    let built = Arc::new(RootSystem::build(t)?);
    Ok(cache
        .lock()
        .unwrap()
        .entry(t)
        .or_insert(built)
        .clone())
}

/// Simple-root data: field, Gram matrix, Coxeter matrix, and epsilon
/// coordinates of the simple roots (classical types).
struct SimpleData {
    field: Arc<NumberField>,
    gram: Vec<Vec<Scalar>>,
    coxeter_m: Vec<Vec<u32>>,
    eps: Option<Vec<Vec<Rational>>>,
}

// diagonal and band writes into the Gram matrix read clearest as index loops
#[allow(clippy::needless_range_loop)]
fn simple_data(t: TypeId) -> SimpleData {
    use TypeFamily::*;
    let n = t.rank as usize;
    let field = match t.family {
        H => NumberField::for_m(5),
        I => NumberField::for_m(t.dihedral_m.unwrap()),
        _ => NumberField::rational(),
    };
    let sc = |q: Rational| Scalar::from_rational(&field, q);
    let mut gram = vec![vec![Scalar::zero(&field); n]; n];
    let mut cox = vec![vec![2u32; n]; n];
    for (i, row) in cox.iter_mut().enumerate() {
        row[i] = 1;
    }
    let bond = |g: &mut Vec<Vec<Scalar>>, c: &mut Vec<Vec<u32>>, i: usize, j: usize, v: Scalar, m: u32| {
        g[i][j] = v.clone();
        g[j][i] = v;
        c[i][j] = m;
        c[j][i] = m;
    };
    let mut eps: Option<Vec<Vec<Rational>>> = None;
    match t.family {
        A => {
            for i in 0..n {
                gram[i][i] = sc(rat(2));
            }
            for i in 0..n - 1 {
                bond(&mut gram, &mut cox, i, i + 1, sc(rat(-1)), 3);
            }
            let dim = n + 1;
            let mut e = vec![vec![Rational::zero(); dim]; n];
            for (i, v) in e.iter_mut().enumerate() {
                v[i] = Rational::one();
                v[i + 1] = -Rational::one();
            }
            eps = Some(e);
        }
        B | C => {
            let long_last = t.family == C;
            for i in 0..n - 1 {
                gram[i][i] = sc(rat(2));
            }
            gram[n - 1][n - 1] = sc(if long_last { rat(4) } else { rat(1) });
            for i in 0..n.saturating_sub(2) {
                bond(&mut gram, &mut cox, i, i + 1, sc(rat(-1)), 3);
            }
            bond(
                &mut gram,
                &mut cox,
                n - 2,
                n - 1,
                sc(if long_last { rat(-2) } else { rat(-1) }),
                4,
            );
            let mut e = vec![vec![Rational::zero(); n]; n];
            for (i, v) in e.iter_mut().enumerate().take(n - 1) {
                v[i] = Rational::one();
                v[i + 1] = -Rational::one();
            }
            e[n - 1][n - 1] = if long_last { rat(2) } else { rat(1) };
            eps = Some(e);
        }
        D => {
            for i in 0..n {
                gram[i][i] = sc(rat(2));
            }
            for i in 0..n - 2 {
                bond(&mut gram, &mut cox, i, i + 1, sc(rat(-1)), 3);
            }
            bond(&mut gram, &mut cox, n - 3, n - 1, sc(rat(-1)), 3);
            let mut e = vec![vec![Rational::zero(); n]; n];
            for (i, v) in e.iter_mut().enumerate().take(n - 1) {
                v[i] = Rational::one();
                v[i + 1] = -Rational::one();
            }
            e[n - 1][n - 2] = Rational::one();
            e[n - 1][n - 1] = Rational::one();
            eps = Some(e);
        }
        E => {
            for i in 0..n {
                gram[i][i] = sc(rat(2));
            }
            // Chain 1-3-4-5-6(-7)(-8) with node 2 attached to 4.
            let mut edges = vec![(0usize, 2usize), (2, 3), (3, 4), (4, 5), (1, 3)];
            if n >= 7 {
                edges.push((5, 6));
            }
            if n == 8 {
                edges.push((6, 7));
            }
            for (i, j) in edges {
                bond(&mut gram, &mut cox, i, j, sc(rat(-1)), 3);
            }
        }
        F => {
            // Short simple roots first: diagram a1 - a2 <= a3 - a4, matching
            // the labeling the embedded word tables use.
            gram[0][0] = sc(rat(1));
            gram[1][1] = sc(rat(1));
            gram[2][2] = sc(rat(2));
            gram[3][3] = sc(rat(2));
            bond(&mut gram, &mut cox, 0, 1, sc(rat_frac(-1, 2)), 3);
            bond(&mut gram, &mut cox, 1, 2, sc(rat(-1)), 4);
            bond(&mut gram, &mut cox, 2, 3, sc(rat(-1)), 3);
        }
        G => {
            gram[0][0] = sc(rat(2));
            gram[1][1] = sc(rat(6));
            bond(&mut gram, &mut cox, 0, 1, sc(rat(-3)), 6);
        }
        H => {
            let g = Scalar::generator(&field);
            let half = sc(rat_frac(1, 2));
            for i in 0..n {
                gram[i][i] = Scalar::one(&field);
            }
            bond(&mut gram, &mut cox, 0, 1, -(g * half.clone()), 5);
            for i in 1..n - 1 {
                bond(&mut gram, &mut cox, i, i + 1, -half.clone(), 3);
            }
        }
        I => {
            let m = t.dihedral_m.unwrap();
            let g = Scalar::generator(&field);
            let half = sc(rat_frac(1, 2));
            gram[0][0] = Scalar::one(&field);
            gram[1][1] = Scalar::one(&field);
            bond(&mut gram, &mut cox, 0, 1, -(g * half), m);
        }
    }
    SimpleData {
        field,
        gram,
        coxeter_m: cox,
        eps,
    }
}

/// Applies the simple reflection s_i to a coordinate vector.
fn reflect_simple(
    v: &[Scalar],
    i: usize,
    gram: &[Vec<Scalar>],
    field: &Arc<NumberField>,
) -> Vec<Scalar> {
    let mut pairing = Scalar::zero(field);
    for (j, vj) in v.iter().enumerate() {
        if !vj.is_zero() {
            pairing = pairing + vj.clone() * &gram[j][i];
        }
    }
    let c = (Scalar::from_integer(field, 2) * pairing)
        .checked_div(&gram[i][i])
        .expect("simple root has nonzero norm");
    let mut w = v.to_vec();
    w[i] = w[i].clone() - c;
    w
}

/// Orbit of the simple basis under the simple reflections, positive part
/// only, sorted by (height, lexicographic coordinates).
// Scalar hashes by tag and coefficients; the interior mutex (the generator's
// isolating interval) never feeds Eq or Hash, so Scalar keys are stable.
#[allow(clippy::mutable_key_type)]
fn enumerate_sorted_positives(data: &SimpleData) -> Vec<Vec<Scalar>> {
    let rank = data.gram.len();
    let field = &data.field;
    let mut seen: HashMap<Vec<Scalar>, ()> = HashMap::new();
    let mut queue: VecDeque<Vec<Scalar>> = VecDeque::new();
    for i in 0..rank {
        let mut v = vec![Scalar::zero(field); rank];
        v[i] = Scalar::one(field);
        seen.insert(v.clone(), ());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            let w = reflect_simple(&v, i, &data.gram, field);
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), ());
                queue.push_back(w);
            }
        }
    }
    let mut positives: Vec<Vec<Scalar>> = Vec::new();
    for (v, _) in seen {
        let signs: Vec<i32> = v.iter().map(|c| c.signum()).collect();
        if signs.iter().all(|&s| s >= 0) {
            positives.push(v);
        } else {
            assert!(
                signs.iter().all(|&s| s <= 0),
                "root with mixed coordinate signs"
            );
        }
    }
    positives.sort_by(|a, b| {
        let ha = a.iter().fold(Scalar::zero(field), |acc, c| acc + c);
        let hb = b.iter().fold(Scalar::zero(field), |acc, c| acc + c);
        ha.cmp_real(&hb).then_with(|| {
            for (x, y) in a.iter().zip(b) {
                let o = x.cmp_real(y);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    positives
}

impl RootSystem {
    #[allow(clippy::mutable_key_type)] // see enumerate_sorted_positives
    fn build(t: TypeId) -> Result<RootSystem> {
        let data = simple_data(t);
        let field = Arc::clone(&data.field);
        let rank = t.rank as usize;
        let coords = enumerate_sorted_positives(&data);
        let n = coords.len();

        let mut coord_index = HashMap::with_capacity(n);
        for (i, c) in coords.iter().enumerate() {
            coord_index.insert(c.clone(), i as u32);
        }

        let mut simple_root_idx = vec![0u32; rank];
        for (g, idx) in simple_root_idx.iter_mut().enumerate() {
            let mut v = vec![Scalar::zero(&field); rank];
            v[g] = Scalar::one(&field);
            *idx = *coord_index
                .get(&v)
                .expect("simple root missing from closure");
        }

        // Epsilon coordinates for classical types.
        let eps_of = |c: &[Scalar]| -> Option<Vec<Rational>> {
            data.eps.as_ref().map(|simple_eps| {
                let dim = simple_eps[0].len();
                let mut out = vec![Rational::zero(); dim];
                for (j, cj) in c.iter().enumerate() {
                    let q = cj.as_rational().expect("classical coordinate not rational");
                    for (k, e) in simple_eps[j].iter().enumerate() {
                        out[k] = &out[k] + q * e;
                    }
                }
                out
            })
        };

        let roots: Vec<Root> = coords
            .iter()
            .map(|c| Root {
                coords: c.clone(),
                eps: eps_of(c),
            })
            .collect();

        let eps_index = data.eps.as_ref().map(|_| {
            roots
                .iter()
                .enumerate()
                .map(|(i, r)| (r.eps.clone().unwrap(), i as u32))
                .collect::<HashMap<_, _>>()
        });

        let heights: Vec<Scalar> = coords
            .iter()
            .map(|c| c.iter().fold(Scalar::zero(&field), |acc, x| acc + x))
            .collect();

        let signed_lookup = |v: &[Scalar]| -> Option<SignedIndex> {
            if let Some(&i) = coord_index.get(v) {
                return Some((i, false));
            }
            let neg: Vec<Scalar> = v.iter().map(|c| -c.clone()).collect();
            coord_index.get(&neg).map(|&i| (i, true))
        };

        let mut sum_table = vec![None; n * n];
        let mut diff_table = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                let sum: Vec<Scalar> = coords[i]
                    .iter()
                    .zip(&coords[j])
                    .map(|(a, b)| a.clone() + b)
                    .collect();
                sum_table[i * n + j] = coord_index.get(&sum).copied();
                if i != j {
                    let diff: Vec<Scalar> = coords[i]
                        .iter()
                        .zip(&coords[j])
                        .map(|(a, b)| a.clone() - b.clone())
                        .collect();
                    diff_table[i * n + j] = signed_lookup(&diff);
                }
            }
        }

        // Pairings (root_i, alpha_j), then the full Gram table.
        let pair: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|c| {
                (0..rank)
                    .map(|j| {
                        let mut acc = Scalar::zero(&field);
                        for (k, ck) in c.iter().enumerate() {
                            if !ck.is_zero() {
                                acc = acc + ck.clone() * &data.gram[k][j];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let gram: Vec<Vec<Scalar>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut acc = Scalar::zero(&field);
                        for (k, ck) in coords[b].iter().enumerate() {
                            if !ck.is_zero() {
                                acc = acc + ck.clone() * &pair[a][k];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();

        let simple_refl: Vec<Vec<SignedIndex>> = (0..rank)
            .map(|i| {
                (0..n)
                    .map(|b| {
                        let w = reflect_simple(&coords[b], i, &data.gram, &field);
                        signed_lookup(&w).expect("reflection left the root system")
                    })
                    .collect()
            })
            .collect();

        let refl: Vec<Vec<SignedIndex>> = (0..n)
            .map(|a| {
                let norm = &gram[a][a];
                (0..n)
                    .map(|b| {
                        let c = (Scalar::from_integer(&field, 2) * gram[a][b].clone())
                            .checked_div(norm)
                            .expect("root has nonzero norm");
                        let w: Vec<Scalar> = coords[b]
                            .iter()
                            .zip(&coords[a])
                            .map(|(x, y)| x.clone() - y.clone() * &c)
                            .collect();
                        signed_lookup(&w).expect("reflection left the root system")
                    })
                    .collect()
            })
            .collect();

        let highest = t.is_crystallographic().then_some(n as u32 - 1);

        let coroot_map = match t.family {
            TypeFamily::B | TypeFamily::C => {
                let partner_family = if t.family == TypeFamily::B {
                    TypeFamily::C
                } else {
                    TypeFamily::B
                };
                let partner = simple_data(TypeId::new(partner_family, t.rank)?);
                let partner_coords = enumerate_sorted_positives(&partner);
                let partner_eps: HashMap<Vec<Rational>, u32> = partner_coords
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let simple_eps = partner.eps.as_ref().unwrap();
                        let dim = simple_eps[0].len();
                        let mut out = vec![Rational::zero(); dim];
                        for (j, cj) in c.iter().enumerate() {
                            let q = cj.as_rational().unwrap();
                            for (k, e) in simple_eps[j].iter().enumerate() {
                                out[k] = &out[k] + q * e;
                            }
                        }
                        (out, i as u32)
                    })
                    .collect();
                let map: Vec<u32> = roots
                    .iter()
                    .map(|r| {
                        let e = r.eps.as_ref().unwrap();
                        let norm: Rational =
                            e.iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b);
                        let scale = rat(2) / norm;
                        let dual: Vec<Rational> = e.iter().map(|x| x * &scale).collect();
                        *partner_eps
                            .get(&dual)
                            .expect("coroot missing from partner system")
                    })
                    .collect();
                Some(map)
            }
            _ => None,
        };

        Ok(RootSystem {
            type_id: t,
            field,
            rank,
            simple_gram: data.gram,
            coxeter_m: data.coxeter_m,
            roots,
            heights,
            simple_root_idx,
            coord_index,
            eps_index,
            sum_table,
            diff_table,
            simple_refl,
            refl,
            gram,
            highest,
            coroot_map,
        })
    }

    pub fn type_id(&self) -> TypeId {
        self.type_id
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: u32) -> &Root {
        &self.roots[i as usize]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn height(&self, i: u32) -> &Scalar {
        &self.heights[i as usize]
    }

    pub fn simple_gram(&self) -> &[Vec<Scalar>] {
        &self.simple_gram
    }

    /// Coxeter matrix entry m_ij for the generators (0-based).
    pub fn coxeter_m(&self, i: usize, j: usize) -> u32 {
        self.coxeter_m[i][j]
    }

    /// Root index of the simple root of generator `g` (0-based).
    pub fn simple_root(&self, g: usize) -> u32 {
        self.simple_root_idx[g]
    }

    /// Some(generator) when root `i` is simple.
    pub fn generator_of(&self, i: u32) -> Option<usize> {
        self.simple_root_idx.iter().position(|&r| r == i)
    }

    /// Index of alpha_i + alpha_j when that is a positive root.
    pub fn root_sum(&self, i: u32, j: u32) -> Option<u32> {
        self.sum_table[i as usize * self.roots.len() + j as usize]
    }

    /// alpha_i - alpha_j as a signed root, when it is a root.
    pub fn root_diff(&self, i: u32, j: u32) -> Option<SignedIndex> {
        if i == j {
            return None;
        }
        self.diff_table[i as usize * self.roots.len() + j as usize]
    }

    /// Sum of two signed roots, when the result is a root.
    pub fn signed_sum(&self, a: SignedIndex, b: SignedIndex) -> Option<SignedIndex> {
        match (a.1, b.1) {
            (false, false) => self.root_sum(a.0, b.0).map(|k| (k, false)),
            (true, true) => self.root_sum(a.0, b.0).map(|k| (k, true)),
            (false, true) => self.root_diff(a.0, b.0),
            (true, false) => self.root_diff(a.0, b.0).map(|(k, s)| (k, !s)),
        }
    }

    /// Signed-permutation action of s_i (0-based generator) on positive
    /// roots: entry b is the image of root b.
    pub fn simple_reflection_table(&self, i: usize) -> &[SignedIndex] {
        &self.simple_refl[i]
    }

    /// Action of the reflection in positive root `a` on positive root `b`.
    pub fn reflection_table(&self, a: u32) -> &[SignedIndex] {
        &self.refl[a as usize]
    }

    pub fn inner(&self, a: u32, b: u32) -> &Scalar {
        &self.gram[a as usize][b as usize]
    }

    pub fn index_of_coords(&self, v: &[Scalar]) -> Option<u32> {
        self.coord_index.get(v).copied()
    }

    pub fn signed_index_of_coords(&self, v: &[Scalar]) -> Option<SignedIndex> {
        if let Some(&i) = self.coord_index.get(v) {
            return Some((i, false));
        }
        let neg: Vec<Scalar> = v.iter().map(|c| -c.clone()).collect();
        self.coord_index.get(&neg).map(|&i| (i, true))
    }

    /// Index lookup by epsilon coordinates (classical types).
    pub fn index_of_eps(&self, eps: &[Rational]) -> Option<u32> {
        self.eps_index.as_ref()?.get(eps).copied()
    }

    pub fn highest_root(&self) -> Option<u32> {
        self.highest
    }

    /// Image of a set of positive roots under the coroot bijection onto the
    /// partner system (B <-> C).
    pub fn coroot_image(&self, s: &RootSet) -> Result<RootSet> {
        let map = self.coroot_map.as_ref().ok_or_else(|| {
            Error::UnsupportedType(format!("{} has no coroot partner", self.type_id))
        })?;
        let mut out = RootSet::empty(self.roots.len());
        for i in s.iter() {
            out.insert(map[i as usize]);
        }
        Ok(out)
    }

    pub fn coroot_map(&self) -> Option<&[u32]> {
        self.coroot_map.as_deref()
    }

    /// Convenience for tests and dumps: integer simple-basis coordinates, if
    /// all coordinates are integers.
    pub fn integer_coords(&self, i: u32) -> Option<Vec<i64>> {
        self.roots[i as usize]
            .coords
            .iter()
            .map(|c| {
                c.as_rational().and_then(|q| {
                    if q.is_integer() {
                        q.to_integer().try_into().ok()
                    } else {
                        None
                    }
                })
            })
            .collect()
    }

    /// Root index with the given integer simple-basis coordinates.
    pub fn index_of_integer_coords(&self, v: &[i64]) -> Option<u32> {
        let coords: Vec<Scalar> = v
            .iter()
            .map(|&x| Scalar::from_integer(&self.field, x))
            .collect();
        self.index_of_coords(&coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: &str) -> Arc<RootSystem> {
        build_root_system(TypeId::parse(t).unwrap()).unwrap()
    }

    #[test]
    fn type_parsing() {
        assert_eq!(TypeId::parse("A5").unwrap().to_string(), "A5");
        assert_eq!(TypeId::parse("I2:7").unwrap().to_string(), "I2:7");
        assert!(TypeId::parse("D3").is_err());
        assert!(TypeId::parse("E9").is_err());
        assert!(TypeId::parse("I2:2").is_err());
        assert!(TypeId::parse("Q4").is_err());
        assert!(TypeId::parse("B1").is_err());
    }

    #[test]
    fn positive_root_counts_match_classical_formulas() {
        // Counts come from the reflection-closure enumeration; the closed
        // formulas are the independent check.
        let cases = [
            ("A1", 1),
            ("A2", 3),
            ("A5", 15),
            ("A8", 36),
            ("B2", 4),
            ("B3", 9),
            ("B6", 36),
            ("C3", 9),
            ("C5", 25),
            ("D4", 12),
            ("D6", 30),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("H3", 15),
            ("H4", 60),
            ("I2:5", 5),
            ("I2:6", 6),
            ("I2:7", 7),
            ("I2:12", 12),
        ];
        for (t, expect) in cases {
            assert_eq!(rs(t).n_positive(), expect, "count for {t}");
        }
    }

    #[test]
    fn a2_roots_and_sums() {
        let r = rs("A2");
        assert_eq!(r.n_positive(), 3);
        let a1 = r.simple_root(0);
        let a2 = r.simple_root(1);
        let theta = r.root_sum(a1, a2).expect("a1+a2 is a root");
        assert_eq!(r.integer_coords(theta).unwrap(), vec![1, 1]);
        // 2*a1 + a2 is not a root
        assert_eq!(r.root_sum(a1, theta), None);
        assert_eq!(r.highest_root(), Some(theta));
    }

    #[test]
    fn b2_epsilon_sums() {
        let r = rs("B2");
        let e = |v: &[i64]| -> Vec<Rational> { v.iter().map(|&x| rat(x)).collect() };
        let e1me2 = r.index_of_eps(&e(&[1, -1])).unwrap();
        let e2 = r.index_of_eps(&e(&[0, 1])).unwrap();
        let e1 = r.index_of_eps(&e(&[1, 0])).unwrap();
        assert_eq!(r.root_sum(e1me2, e2), Some(e1));
    }

    #[test]
    fn crystallographic_coords_are_integers() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            for i in 0..r.n_positive() as u32 {
                assert!(r.integer_coords(i).is_some(), "{t} root {i}");
            }
        }
    }

    #[test]
    fn f4_contains_the_expected_high_root() {
        let r = rs("F4");
        assert!(r.index_of_integer_coords(&[2, 4, 3, 2]).is_some());
        assert_eq!(r.integer_coords(r.highest_root().unwrap()).unwrap(), vec![2, 4, 3, 2]);
    }

    #[test]
    fn coroot_bijection_b_to_c() {
        let r = rs("B2");
        let c = rs("C2");
        // empty -> empty
        assert!(r
            .coroot_image(&RootSet::empty(r.n_positive()))
            .unwrap()
            .is_empty());
        // short root e1 maps to the long root 2e1
        let e1 = r.index_of_eps(&[rat(1), rat(0)]).unwrap();
        let img = r
            .coroot_image(&RootSet::from_indices(r.n_positive(), &[e1]))
            .unwrap();
        let long = c.index_of_eps(&[rat(2), rat(0)]).unwrap();
        assert_eq!(img.indices(), vec![long]);
        // the full positive system maps onto the full positive system
        let full = RootSet::full(r.n_positive());
        assert!(r.coroot_image(&full).unwrap().is_full());
        // duality is an involution through the partner map
        for i in 0..r.n_positive() as u32 {
            let j = r.coroot_map().unwrap()[i as usize];
            assert_eq!(c.coroot_map().unwrap()[j as usize], i);
        }
        assert!(rs("A2").coroot_image(&RootSet::empty(3)).is_err());
    }

    #[test]
    fn no_proper_rational_multiples_between_roots() {
        // t*alpha in the root system forces t = +/-1: exhaustive pair scan.
        for t in ["A3", "B3", "G2", "F4", "H3", "I2:7"] {
            let r = rs(t);
            let n = r.n_positive() as u32;
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let a = &r.root(i).coords;
                    let b = &r.root(j).coords;
                    // proportional iff all 2x2 minors vanish
                    let proportional = (0..r.rank()).all(|k| {
                        (0..r.rank()).all(|l| {
                            (a[k].clone() * b[l].clone()) == (a[l].clone() * b[k].clone())
                        })
                    });
                    assert!(!proportional, "{t}: roots {i} and {j} are proportional");
                }
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn gram_is_positive_definite() {
        // Leading principal minors of the simple Gram matrix are positive.
        for t in ["A4", "B4", "D5", "F4", "G2", "E6", "H3", "H4", "I2:7"] {
            let r = rs(t);
            let g = r.simple_gram();
            let f = r.field();
            for k in 1..=r.rank() {
                // Gaussian elimination determinant on the leading k x k block.
                let mut m: Vec<Vec<Scalar>> =
                    (0..k).map(|i| g[i][..k].to_vec()).collect();
                let mut det = Scalar::one(f);
                for col in 0..k {
                    let piv = (col..k)
                        .find(|&row| !m[row][col].is_zero())
                        .expect("singular Gram block");
                    if piv != col {
                        m.swap(piv, col);
                        det = -det;
                    }
                    det = det * m[col][col].clone();
                    let inv = m[col][col].inverse().unwrap();
                    for row in col + 1..k {
                        let factor = m[row][col].clone() * inv.clone();
                        for cc in col..k {
                            let sub = factor.clone() * m[col][cc].clone();
                            m[row][cc] = m[row][cc].clone() - sub;
                        }
                    }
                }
                assert_eq!(det.signum(), 1, "{t}: minor {k} not positive");
            }
        }
    }

    #[test]
    fn sum_table_is_symmetric_and_matches_epsilon_arithmetic() {
        let r = rs("B3");
        let n = r.n_positive() as u32;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(r.root_sum(i, j), r.root_sum(j, i));
                let ei = r.root(i).eps.clone().unwrap();
                let ej = r.root(j).eps.clone().unwrap();
                let sum: Vec<Rational> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
                assert_eq!(r.root_sum(i, j), r.index_of_eps(&sum));
            }
        }
    }

    #[test]
    fn simple_reflection_permutes_other_positive_roots() {
        for t in ["A3", "B3", "F4", "H3", "I2:5"] {
            let r = rs(t);
            for g in 0..r.rank() {
                let table = r.simple_reflection_table(g);
                let own = r.simple_root(g);
                for (b, &(img, negated)) in table.iter().enumerate() {
                    if b as u32 == own {
                        assert!(negated && img == own, "{t}: s_g(alpha_g) != -alpha_g");
                    } else {
                        assert!(!negated, "{t}: s_g must permute the other positives");
                    }
                }
                // involution
                for (b, &(img, _)) in table.iter().enumerate() {
                    assert_eq!(table[img as usize].0, b as u32);
                }
            }
        }
    }
}
