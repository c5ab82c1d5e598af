//! Group elements, words, lengths, inversion sets, biclosed subsets and the
//! weak order.
//!
//! An element is identified with its signed-permutation action on the
//! positive roots; words are only input/output. The inversion set N(w) is
//! the set of positive roots sent negative by w^-1, which can be read off
//! the action of w directly: alpha is in N(w) exactly when alpha = -w(beta)
//! for some positive beta.

use crate::roots::{RootSystem, SignedIndex};
use crate::sets::RootSet;
use crate::{Error, Result};

/// A word in the Coxeter generators, letters 1-based as in printed tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses the word text format: whitespace-separated 1-based generator
/// indices, one word per line, `#` starting a comment.
pub fn parse_word_file(text: &str) -> Result<Vec<Word>> {
    let mut words = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut letters = Vec::new();
        for tok in line.split_whitespace() {
            let v: u32 = tok.parse().map_err(|_| {
                Error::InvalidWord(format!("line {}: bad generator '{tok}'", lineno + 1))
            })?;
            if v == 0 {
                return Err(Error::InvalidWord(format!(
                    "line {}: generators are 1-based",
                    lineno + 1
                )));
            }
            letters.push(v);
        }
        words.push(Word(letters));
    }
    Ok(words)
}

/// A reflection-group element realized by its action on positive roots.
/// `perm[b]` is the index of the image of root b, `neg` flags the images
/// that are negative roots. Identity of elements is this table; words are
/// never compared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    perm: Vec<u32>,
    neg: RootSet,
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupElement(len={})", self.length())
    }
}

impl GroupElement {
    pub fn identity(rs: &RootSystem) -> GroupElement {
        let n = rs.n_positive();
        GroupElement {
            perm: (0..n as u32).collect(),
            neg: RootSet::empty(n),
        }
    }

    /// The simple reflection s_g (0-based generator index).
    pub fn simple(rs: &RootSystem, g: usize) -> GroupElement {
        Self::from_table(rs.simple_reflection_table(g))
    }

    /// The reflection in positive root `a`.
    pub fn reflection(rs: &RootSystem, a: u32) -> GroupElement {
        Self::from_table(rs.reflection_table(a))
    }

    fn from_table(table: &[SignedIndex]) -> GroupElement {
        let mut neg = RootSet::empty(table.len());
        let mut perm = Vec::with_capacity(table.len());
        for (b, &(img, negated)) in table.iter().enumerate() {
            perm.push(img);
            if negated {
                neg.insert(b as u32);
            }
        }
        GroupElement { perm, neg }
    }

    /// Image of a signed root under this element.
    pub fn apply(&self, x: SignedIndex) -> SignedIndex {
        let img = self.perm[x.0 as usize];
        (img, x.1 ^ self.neg.contains(x.0))
    }

    /// Group product: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let n = self.perm.len();
        let mut perm = vec![0u32; n];
        let mut neg = RootSet::empty(n);
        for b in 0..n as u32 {
            let (img, s) = self.apply((other.perm[b as usize], other.neg.contains(b)));
            perm[b as usize] = img;
            if s {
                neg.insert(b);
            }
        }
        GroupElement { perm, neg }
    }

    pub fn inverse(&self) -> GroupElement {
        let n = self.perm.len();
        let mut perm = vec![0u32; n];
        let mut neg = RootSet::empty(n);
        for b in 0..n as u32 {
            let img = self.perm[b as usize];
            perm[img as usize] = b;
            if self.neg.contains(b) {
                neg.insert(img);
            }
        }
        GroupElement { perm, neg }
    }

    pub fn is_identity(&self) -> bool {
        self.neg.is_empty() && self.perm.iter().enumerate().all(|(b, &i)| b as u32 == i)
    }

    /// Coxeter length, equal to |N(w)|.
    pub fn length(&self) -> usize {
        self.neg.count()
    }

    /// Right multiplication by s_g.
    pub fn right_multiply(&self, rs: &RootSystem, g: usize) -> GroupElement {
        // (w s_g)(x) = w(s_g(x)); cheaper than a general compose because the
        // simple reflection table is already flat.
        let table = rs.simple_reflection_table(g);
        let n = self.perm.len();
        let mut perm = vec![0u32; n];
        let mut neg = RootSet::empty(n);
        for b in 0..n as u32 {
            let (mid, s1) = table[b as usize];
            let (img, s2) = self.apply((mid, s1));
            perm[b as usize] = img;
            if s2 {
                neg.insert(b);
            }
        }
        GroupElement { perm, neg }
    }

    /// Image of the simple root of generator g under this element.
    pub fn image_of_simple(&self, rs: &RootSystem, g: usize) -> SignedIndex {
        self.apply((rs.simple_root(g), false))
    }
}

/// Product of the simple reflections named by the word, read left to right.
/// The word need not be reduced.
pub fn element_from_word(rs: &RootSystem, w: &Word) -> Result<GroupElement> {
    let rank = rs.rank() as u32;
    for &l in w.letters() {
        if l == 0 || l > rank {
            return Err(Error::InvalidWord(format!(
                "generator {l} out of range 1..={rank}"
            )));
        }
    }
    let mut acc = GroupElement::identity(rs);
    for &l in w.letters() {
        acc = acc.right_multiply(rs, (l - 1) as usize);
    }
    Ok(acc)
}

/// The inversion set N(w): positive roots alpha with w^-1(alpha) negative.
pub fn inversion_set(g: &GroupElement) -> RootSet {
    let mut out = RootSet::empty(g.perm.len());
    for b in g.neg.iter() {
        out.insert(g.perm[b as usize]);
    }
    out
}

/// v <= w in the (right) weak order, i.e. N(v) is contained in N(w).
pub fn weak_leq(a: &GroupElement, b: &GroupElement) -> bool {
    inversion_set(a).is_subset(&inversion_set(b))
}

/// Closed and coclosed under root addition, scanned over all pairs.
pub fn is_biclosed(rs: &RootSystem, l: &RootSet) -> bool {
    let n = rs.n_positive() as u32;
    for i in 0..n {
        for j in i + 1..n {
            if let Some(k) = rs.root_sum(i, j) {
                let (a, b, c) = (l.contains(i), l.contains(j), l.contains(k));
                if a && b && !c {
                    return false;
                }
                if !a && !b && c {
                    return false;
                }
            }
        }
    }
    true
}

/// The unique w with N(w) = L. Peels the lowest-index simple root of L at
/// each step; the final element is verified against L, so non-biclosed
/// input is detected even when the peeling happens to run to completion.
pub fn element_from_biclosed(rs: &RootSystem, l: &RootSet) -> Result<GroupElement> {
    let mut remaining = l.clone();
    let mut letters: Vec<u32> = Vec::new();
    while !remaining.is_empty() {
        let g = (0..rs.rank())
            .find(|&g| remaining.contains(rs.simple_root(g)))
            .ok_or(Error::NotBiclosed)?;
        letters.push(g as u32 + 1);
        remaining.remove(rs.simple_root(g));
        let table = rs.simple_reflection_table(g);
        let mut image = RootSet::empty(rs.n_positive());
        for i in remaining.iter() {
            let (img, negated) = table[i as usize];
            if negated {
                return Err(Error::NotBiclosed);
            }
            image.insert(img);
        }
        remaining = image;
    }
    let w = element_from_word(rs, &Word(letters))?;
    if inversion_set(&w) == *l {
        Ok(w)
    } else {
        Err(Error::NotBiclosed)
    }
}

/// Longest element: inversion set is the full positive system.
pub fn longest_element(rs: &RootSystem) -> GroupElement {
    element_from_biclosed(rs, &RootSet::full(rs.n_positive()))
        .expect("the full positive system is biclosed")
}

/// The reflections t with l(tw) < l(w); coincides with the reflections in
/// the roots of N(w). (Reflections that shorten from the right correspond
/// to N(w^-1) instead.)
pub fn reflection_inversions(rs: &RootSystem, w: &GroupElement) -> Vec<GroupElement> {
    inversion_set(w)
        .iter()
        .map(|a| GroupElement::reflection(rs, a))
        .collect()
}

/// Canonical reduced word by greedy descent: repeatedly strip the smallest
/// generator g with alpha_g in N(w).
pub fn canonical_word(rs: &RootSystem, w: &GroupElement) -> Word {
    let mut cur = w.clone();
    let mut letters = Vec::with_capacity(cur.length());
    while !cur.is_identity() {
        let inv = inversion_set(&cur);
        let g = (0..rs.rank())
            .find(|&g| inv.contains(rs.simple_root(g)))
            .expect("nonidentity element has a left descent");
        letters.push(g as u32 + 1);
        cur = GroupElement::simple(rs, g).compose(&cur);
    }
    Word(letters)
}

/// Independent length oracle: greedy descent by right multiplication,
/// counting steps until the identity.
pub fn length_by_descent(rs: &RootSystem, w: &GroupElement) -> usize {
    let mut cur = w.clone();
    let mut steps = 0;
    'outer: while !cur.is_identity() {
        for g in 0..rs.rank() {
            // l(w s_g) < l(w) iff w(alpha_g) is negative.
            if cur.image_of_simple(rs, g).1 {
                cur = cur.right_multiply(rs, g);
                steps += 1;
                continue 'outer;
            }
        }
        unreachable!("nonidentity element has a right descent");
    }
    steps
}
