//! Exact arithmetic in the real fields Q(2cos(pi/m)).
//!
//! Every coordinate in this crate is either a rational number or an element
//! of Q(2cos(pi/m)) for the m of the ambient group (m = 5 for the H family,
//! the dihedral label for I2(m)). Elements are stored as rational coefficient
//! vectors modulo the minimal polynomial of the generator g = 2cos(pi/m), so
//! all ring operations are exact. Signs are decided exactly: zero by
//! coefficient comparison, nonzero values by refining a rational isolating
//! interval around g until the evaluation interval excludes zero.
//!
//! The minimal polynomial is obtained without general factoring: g equals
//! z + 1/z for a primitive 2m-th root of unity z, and the cyclotomic
//! polynomial Phi_2m is palindromic, so writing Phi_2m(y)/y^d in the basis
//! y^j + y^-j = D_j(g) (the degree-j Dickson polynomials) yields a monic
//! integer polynomial of degree d = phi(2m)/2 whose roots are exactly the
//! conjugates 2cos(pi k/m), gcd(k, 2m) = 1. That polynomial is irreducible,
//! hence minimal, and g is its largest real root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The field Q(2cos(pi/m)), shared by all scalars with the same tag.
pub struct NumberField {
    m: u32,
    degree: usize,
    /// Monic minimal polynomial of 2cos(pi/m); index k holds the coefficient
    /// of x^k, length degree + 1.
    min_poly: Vec<Rational>,
    /// Rational interval isolating the generator among the roots of
    /// `min_poly`; refined in place as sign queries demand. Unused when the
    /// degree is 1 (the generator is rational).
    isolating: Mutex<(Rational, Rational)>,
    /// Exact value of the generator when degree == 1.
    rational_generator: Option<Rational>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(m={}, degree={})", self.m, self.degree)
    }
}

static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<NumberField>>>> = OnceLock::new();

impl NumberField {
    /// The field containing 2cos(pi/m). Instances are cached per m.
    pub fn for_m(m: u32) -> Arc<NumberField> {
        assert!(m >= 2, "field tag must be at least 2");
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = reg.lock().unwrap().get(&m) {
            return Arc::clone(f);
        }
        let built = Arc::new(Self::build(m));
        reg.lock()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&built))
            .clone()
    }

    /// Degree-1 field used for all crystallographic coordinate work.
    pub fn rational() -> Arc<NumberField> {
        Self::for_m(3)
    }

    fn build(m: u32) -> NumberField {
        let min_poly = min_poly_two_cos_pi_over(m);
        let degree = min_poly.len() - 1;
        let rational_generator = if degree == 1 {
            // x + c0 = 0  =>  g = -c0
            Some(-min_poly[0].clone())
        } else {
            None
        };
        let isolating = if degree == 1 {
            (rat(0), rat(0))
        } else {
            isolate_largest_root(&min_poly)
        };
        NumberField {
            m,
            degree,
            min_poly,
            isolating: Mutex::new(isolating),
            rational_generator,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    fn refine_isolating(&self) -> (Rational, Rational) {
        let mut guard = self.isolating.lock().unwrap();
        let (lo, hi) = guard.clone();
        let mid = (&lo + &hi) / rat(2);
        // One simple root inside, sign(lo) < 0 < sign(hi); the polynomial is
        // irreducible of degree >= 2, so mid is never a root.
        if poly_eval(&self.min_poly, &mid).is_negative() {
            *guard = (mid, hi);
        } else {
            *guard = (lo, mid);
        }
        guard.clone()
    }

    fn isolating_interval(&self) -> (Rational, Rational) {
        self.isolating.lock().unwrap().clone()
    }
}

/// An element of Q(2cos(pi/m)): coefficients of 1, g, g^2, ... g^(d-1).
#[derive(Clone)]
pub struct Scalar {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl Scalar {
    pub fn zero(field: &Arc<NumberField>) -> Scalar {
        Scalar {
            field: Arc::clone(field),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Scalar {
        Scalar::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, value: Rational) -> Scalar {
        let mut s = Scalar::zero(field);
        s.coeffs[0] = value;
        s
    }

    pub fn from_integer(field: &Arc<NumberField>, value: i64) -> Scalar {
        Scalar::from_rational(field, rat(value))
    }

    /// The generator 2cos(pi/m) itself.
    pub fn generator(field: &Arc<NumberField>) -> Scalar {
        if let Some(g) = &field.rational_generator {
            return Scalar::from_rational(field, g.clone());
        }
        let mut s = Scalar::zero(field);
        s.coeffs[1] = Rational::one();
        s
    }

    pub fn from_coeffs(field: &Arc<NumberField>, mut coeffs: Vec<Rational>) -> Scalar {
        assert!(coeffs.len() <= field.degree, "coefficient vector too long");
        coeffs.resize(field.degree, Rational::zero());
        Scalar {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field.m, other.field.m,
            "mismatched field tags: {} vs {}",
            self.field.m, other.field.m
        );
    }

    /// Sign of the element under the real embedding g = 2cos(pi/m):
    /// -1, 0 or +1, decided exactly.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        if let Some(g) = &self.field.rational_generator {
            let v = poly_eval(&self.coeffs, g);
            return if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
        }
        // Nonzero element of an irreducible extension: the evaluation at g is
        // nonzero, so interval refinement terminates.
        let mut interval = self.field.isolating_interval();
        loop {
            let (lo, hi) = eval_interval(&self.coeffs, &interval);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            interval = self.field.refine_isolating();
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Total order under the real embedding.
    pub fn cmp_real(&self, other: &Scalar) -> std::cmp::Ordering {
        let d = self.clone() - other.clone();
        match d.signum() {
            x if x < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Multiplicative inverse; None for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Scalar::from_rational(&self.field, q.recip()));
        }
        // Bezout: u * self + v * psi = gcd (a nonzero constant, since psi is
        // irreducible and self is not a multiple of it).
        let (g, u) = poly_half_ext_gcd(&self.coeffs, &self.field.min_poly);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let scaled: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        let reduced = poly_mod(&scaled, &self.field.min_poly);
        Some(Scalar::from_coeffs(&self.field, reduced))
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        self.assert_same_field(other);
        other.inverse().map(|inv| self.clone() * inv)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: self.field,
            coeffs,
        }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self + rhs.clone()
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.assert_same_field(&rhs);
        if self.field.degree == 1 {
            let v = &self.coeffs[0] * &rhs.coeffs[0];
            return Scalar::from_rational(&self.field, v);
        }
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        let reduced = poly_mod(&prod, &self.field.min_poly);
        Scalar::from_coeffs(&self.field, reduced)
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self * rhs.clone()
    }
}

impl Mul<Rational> for Scalar {
    type Output = Scalar;
    fn mul(mut self, rhs: Rational) -> Scalar {
        for c in &mut self.coeffs {
            *c = &*c * &rhs;
        }
        self
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*g"),
                _ => format!("{c}*g^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomial helpers over Q. Coefficient index = degree.

fn poly_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + ai * bj;
            }
        }
    }
    out
}

/// Remainder of `p` modulo the monic polynomial `m`.
fn poly_mod(p: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let d = m.len() - 1;
    let mut r: Vec<Rational> = p.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for k in 0..d {
            r[shift + k] = &r[shift + k] - &lead * &m[k];
        }
    }
    r.resize(d.max(1), Rational::zero());
    r
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = bb[db].recip();
    if r.len() <= db && (r.len() != 1 || db != 0) {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db || (db == 0 && !(r.len() == 1 && r[0].is_zero())) {
        let dr = r.len() - 1;
        let c = &r[dr] * &lead_inv;
        q[dr - db] = c.clone();
        for k in 0..=db {
            r[dr - db + k] = &r[dr - db + k] - &c * &bb[k];
        }
        poly_trim(&mut r);
        if dr == db {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// Extended gcd returning (gcd, u) with u*a = gcd (mod m); both normalized so
/// the gcd is a nonzero constant when gcd(a, m) = 1.
fn poly_half_ext_gcd(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut u0 = vec![Rational::zero()];
    let mut u1 = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qu = poly_mul(&q, &u1);
        let mut nu = vec![Rational::zero(); u0.len().max(qu.len())];
        for (i, c) in u0.iter().enumerate() {
            nu[i] = nu[i].clone() + c;
        }
        for (i, c) in qu.iter().enumerate() {
            nu[i] = &nu[i] - c;
        }
        poly_trim(&mut nu);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, nu);
    }
    (r0, u0)
}

fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * rat(k as i64))
        .collect()
}

/// Interval Horner evaluation: encloses p(x) for x in [lo, hi].
fn eval_interval(p: &[Rational], iv: &(Rational, Rational)) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in p.iter().rev() {
        acc = interval_mul(&acc, iv);
        acc.0 = &acc.0 + c;
        acc.1 = &acc.1 + c;
    }
    acc
}

fn interval_mul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let cands = [
        &a.0 * &b.0,
        &a.0 * &b.1,
        &a.1 * &b.0,
        &a.1 * &b.1,
    ];
    let mut lo = cands[0].clone();
    let mut hi = cands[0].clone();
    for c in &cands[1..] {
        if *c < lo {
            lo = c.clone();
        }
        if *c > hi {
            hi = c.clone();
        }
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Minimal polynomial of 2cos(pi/m) and root isolation.

fn cyclotomic(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic(d, memo);
            poly = int_poly_exact_div(&poly, &phi_d);
        }
    }
    memo.insert(n, poly.clone());
    poly
}

fn int_poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone() / &b[db];
        for k in 0..=db {
            r[i - db + k] = &r[i - db + k] - &c * &b[k];
        }
        q[i - db] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "non-exact division");
    q
}

/// Monic minimal polynomial of 2cos(pi/m), for m >= 2.
fn min_poly_two_cos_pi_over(m: u32) -> Vec<Rational> {
    let mut memo = HashMap::new();
    let phi = cyclotomic(2 * m, &mut memo);
    let d = (phi.len() - 1) / 2;
    debug_assert_eq!(phi.len() - 1, 2 * d, "cyclotomic degree must be even");
    // Phi(y)/y^d = a_d + sum_j a_{d+j} (y^j + y^-j) with a_{d+j} = a_{d-j};
    // substitute y^j + y^-j = D_j(x) to land on a polynomial in x = y + 1/y.
    let mut acc = vec![Rational::zero(); d + 1];
    acc[0] = Rational::from_integer(phi[d].clone());
    let mut dick_prev: Vec<Rational> = vec![rat(2)]; // D_0 = 2
    let mut dick: Vec<Rational> = vec![rat(0), rat(1)]; // D_1 = x
    for j in 1..=d {
        debug_assert_eq!(phi[d + j], phi[d - j], "cyclotomic not palindromic");
        let a = Rational::from_integer(phi[d + j].clone());
        for (k, c) in dick.iter().enumerate() {
            acc[k] = &acc[k] + &a * c;
        }
        if j < d {
            // D_{j+1} = x*D_j - D_{j-1}
            let mut next = vec![Rational::zero(); dick.len() + 1];
            for (k, c) in dick.iter().enumerate() {
                next[k + 1] = c.clone();
            }
            for (k, c) in dick_prev.iter().enumerate() {
                next[k] = &next[k] - c;
            }
            dick_prev = std::mem::replace(&mut dick, next);
        }
    }
    debug_assert!(acc[d].is_one(), "minimal polynomial must be monic");
    acc
}

fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![p.to_vec(), poly_derivative(p)];
    loop {
        let n = chain.len();
        let (_, mut r) = poly_divmod(&chain[n - 2], &chain[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        for c in &mut r {
            *c = -std::mem::take(c);
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let v = poly_eval(p, x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Interval (lo, hi) containing exactly the largest real root of `p`, with
/// p(lo) < 0 < p(hi). All roots of these minimal polynomials lie in (-2, 2).
fn isolate_largest_root(p: &[Rational]) -> (Rational, Rational) {
    let chain = sturm_chain(p);
    let roots_in = |a: &Rational, b: &Rational| -> usize {
        sign_variations(&chain, a) - sign_variations(&chain, b)
    };
    let mut lo = rat(-3);
    let mut hi = rat(3);
    while roots_in(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / rat(2);
        if roots_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(poly_eval(p, &lo).is_negative() && poly_eval(p, &hi).is_positive());
    (lo, hi)
}
