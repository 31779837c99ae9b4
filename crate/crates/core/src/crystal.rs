//! Type `A_{n-1}` crystal operators on set-valued tableaux, words and
//! straight tableaux; tensor products; Demazure crystals.
//!
//! Tensor products follow the convention in which `x ⊗ y` lists the
//! signature of `x` first: `f_i(x ⊗ y) = f_i(x) ⊗ y` when `ε_i(x) ≥ φ_i(y)`
//! and `x ⊗ f_i(y)` otherwise. A signature is reduced by cancelling adjacent
//! `(−, +)` pairs down to `+⋯+ −⋯−`. Under this convention a word
//! `w_1 w_2 ⋯` is the tensor `w_1 ⊗ w_2 ⊗ ⋯` and a tableau is the tensor of
//! its rows from the bottom row up.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::keys::key_polynomial;
use crate::poly::Poly;
use crate::shape::{Composition, Partition, SkewShape};
use crate::tableau::{LetterSet, SetValuedTableau, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("operator index {i} is outside 1..{n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("set has {0} highest weight elements")]
    HighestWeight(usize),
    #[error("character of the set matches {0} key polynomials")]
    NoKeyMatch(usize),
}

/// Result of a crystal operator: an element or the formal zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrZero<T> {
    Zero,
    Elem(T),
}

impl<T> OrZero<T> {
    pub fn is_zero(&self) -> bool {
        matches!(self, OrZero::Zero)
    }

    pub fn elem(&self) -> Option<&T> {
        match self {
            OrZero::Zero => None,
            OrZero::Elem(x) => Some(x),
        }
    }

    pub fn into_option(self) -> Option<T> {
        match self {
            OrZero::Zero => None,
            OrZero::Elem(x) => Some(x),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> OrZero<U> {
        match self {
            OrZero::Zero => OrZero::Zero,
            OrZero::Elem(x) => OrZero::Elem(f(x)),
        }
    }

    pub fn and_then<U>(self, f: impl FnOnce(T) -> OrZero<U>) -> OrZero<U> {
        match self {
            OrZero::Zero => OrZero::Zero,
            OrZero::Elem(x) => f(x),
        }
    }
}

impl<T> From<Option<T>> for OrZero<T> {
    fn from(o: Option<T>) -> Self {
        o.map_or(OrZero::Zero, OrZero::Elem)
    }
}

/// Reduce a sequence of signs (`true` for `+`) by cancelling `(−, +)`
/// pairs. Returns the positions of the surviving `+` and `−` signs.
pub fn reduce_signature<P: Copy>(signs: impl IntoIterator<Item = (P, bool)>) -> (Vec<P>, Vec<P>) {
    let mut plus = Vec::new();
    let mut minus: Vec<P> = Vec::new();
    for (p, s) in signs {
        if s {
            if minus.pop().is_none() {
                plus.push(p);
            }
        } else {
            minus.push(p);
        }
    }
    (plus, minus)
}

/// Elements of a crystal of type `A`.
pub trait Crystal: Clone {
    fn raise(&self, i: usize) -> OrZero<Self>;
    fn lower(&self, i: usize) -> OrZero<Self>;
    /// `(ε_i, φ_i)` read off the reduced signature.
    fn string_counts(&self, i: usize) -> (usize, usize);
    fn crystal_weight(&self, n: usize) -> Composition;

    fn epsilon(&self, i: usize) -> usize {
        self.string_counts(i).0
    }

    fn phi(&self, i: usize) -> usize {
        self.string_counts(i).1
    }
}

/// `(ε_i, φ_i)` by repeated application of the operators.
pub fn string_lengths<C: Crystal>(x: &C, i: usize) -> (usize, usize) {
    let count = |step: &dyn Fn(&C) -> OrZero<C>| {
        let mut k = 0;
        let mut cur = x.clone();
        while let OrZero::Elem(y) = step(&cur) {
            cur = y;
            k += 1;
        }
        k
    };
    (count(&|y: &C| y.raise(i)), count(&|y: &C| y.lower(i)))
}

/// Column signs of `T` for index `i`: `+` over columns holding `i` but not
/// `i+1`, `−` over columns holding `i+1` but not `i`, left to right.
fn column_signs(t: &SetValuedTableau, i: u32) -> Vec<(usize, bool)> {
    let width = t.shape().outer().get(0);
    let mut has = vec![(false, false); width];
    for ((_, c), s) in t.cells() {
        has[c].0 |= s.contains(i);
        has[c].1 |= s.contains(i + 1);
    }
    has.iter()
        .enumerate()
        .filter_map(|(c, &(a, b))| match (a, b) {
            (true, false) => Some((c, true)),
            (false, true) => Some((c, false)),
            _ => None,
        })
        .collect()
}

fn row_holding(t: &SetValuedTableau, c: usize, x: u32) -> usize {
    (0..t.shape().rows())
        .find(|&r| t.cell(r, c).is_some_and(|s| s.contains(x)))
        .expect("signed column holds the letter")
}

impl Crystal for SetValuedTableau {
    fn lower(&self, i: usize) -> OrZero<Self> {
        let i = i as u32;
        let (plus, _) = reduce_signature(column_signs(self, i));
        let Some(&c) = plus.last() else {
            return OrZero::Zero;
        };
        let r = row_holding(self, c, i);
        let mut t = self.clone();
        let b = t.cell(r, c).unwrap();
        match t.cell(r, c + 1) {
            Some(right) if right.contains(i) => {
                t.set_cell(r, c + 1, right.without(i));
                t.set_cell(r, c, b.with(i + 1));
            }
            _ => t.set_cell(r, c, b.without(i).with(i + 1)),
        }
        OrZero::Elem(t)
    }

    fn raise(&self, i: usize) -> OrZero<Self> {
        let i = i as u32;
        let (_, minus) = reduce_signature(column_signs(self, i));
        let Some(&c) = minus.first() else {
            return OrZero::Zero;
        };
        let r = row_holding(self, c, i + 1);
        let mut t = self.clone();
        let b = t.cell(r, c).unwrap();
        match c.checked_sub(1).and_then(|l| t.cell(r, l)) {
            Some(left) if left.contains(i + 1) => {
                t.set_cell(r, c - 1, left.without(i + 1));
                t.set_cell(r, c, b.with(i));
            }
            _ => t.set_cell(r, c, b.without(i + 1).with(i)),
        }
        OrZero::Elem(t)
    }

    fn string_counts(&self, i: usize) -> (usize, usize) {
        let (plus, minus) = reduce_signature(column_signs(self, i as u32));
        (minus.len(), plus.len())
    }

    fn crystal_weight(&self, n: usize) -> Composition {
        self.weight(n)
    }
}

/// A word in positive letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    fn signs(&self, i: u32) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.0.iter().enumerate().filter_map(move |(p, &x)| {
            if x == i {
                Some((p, true))
            } else if x == i + 1 {
                Some((p, false))
            } else {
                None
            }
        })
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Crystal for Word {
    fn lower(&self, i: usize) -> OrZero<Self> {
        let (plus, _) = reduce_signature(self.signs(i as u32));
        plus.last()
            .map(|&p| {
                let mut w = self.clone();
                w.0[p] += 1;
                w
            })
            .into()
    }

    fn raise(&self, i: usize) -> OrZero<Self> {
        let (_, minus) = reduce_signature(self.signs(i as u32));
        minus
            .first()
            .map(|&p| {
                let mut w = self.clone();
                w.0[p] -= 1;
                w
            })
            .into()
    }

    fn string_counts(&self, i: usize) -> (usize, usize) {
        let (plus, minus) = reduce_signature(self.signs(i as u32));
        (minus.len(), plus.len())
    }

    fn crystal_weight(&self, n: usize) -> Composition {
        let mut w = vec![0; n];
        for &x in &self.0 {
            w[x as usize - 1] += 1;
        }
        Composition::new(w)
    }
}

// Straight tableaux act through their row reading word.
impl Crystal for Tableau {
    fn lower(&self, i: usize) -> OrZero<Self> {
        let shape = self.shape();
        Word(self.reading_word()).lower(i).map(|w| Tableau::from_reading_word(&shape, &w.0))
    }

    fn raise(&self, i: usize) -> OrZero<Self> {
        let shape = self.shape();
        Word(self.reading_word()).raise(i).map(|w| Tableau::from_reading_word(&shape, &w.0))
    }

    fn string_counts(&self, i: usize) -> (usize, usize) {
        Word(self.reading_word()).string_counts(i)
    }

    fn crystal_weight(&self, n: usize) -> Composition {
        self.weight(n)
    }
}

/// Index of the factor acted on by `f_i`, with `φ_i` of the tensor, from
/// `φ_i = max_j (Σ_{h≤j} φ_i(x_h) − Σ_{h<j} ε_i(x_h))` and the first argmax.
pub fn tensor_lowering_index<C: Crystal>(factors: &[C], i: usize) -> (usize, usize) {
    let mut best = (0usize, i64::MIN);
    let (mut phis, mut eps) = (0i64, 0i64);
    for (j, x) in factors.iter().enumerate() {
        let (e, p) = x.string_counts(i);
        phis += p as i64;
        let v = phis - eps;
        if v > best.1 {
            best = (j, v);
        }
        eps += e as i64;
    }
    (best.0, best.1.max(0) as usize)
}

/// Index of the factor acted on by `e_i`, with `ε_i` of the tensor, from
/// `ε_i = max_j (Σ_{h≥j} ε_i(x_h) − Σ_{h>j} φ_i(x_h))` and the last argmax.
pub fn tensor_raising_index<C: Crystal>(factors: &[C], i: usize) -> (usize, usize) {
    let mut best = (0usize, i64::MIN);
    let (mut epss, mut phis) = (0i64, 0i64);
    for (j, x) in factors.iter().enumerate().rev() {
        let (e, p) = x.string_counts(i);
        epss += e as i64;
        let v = epss - phis;
        if v > best.1 {
            best = (j, v);
        }
        phis += p as i64;
    }
    (best.0, best.1.max(0) as usize)
}

pub fn tensor_lowering<C: Crystal>(factors: &[C], i: usize) -> OrZero<Vec<C>> {
    let (j, phi) = tensor_lowering_index(factors, i);
    if phi == 0 {
        return OrZero::Zero;
    }
    factors[j].lower(i).map(|y| {
        let mut v = factors.to_vec();
        v[j] = y;
        v
    })
}

pub fn tensor_raising<C: Crystal>(factors: &[C], i: usize) -> OrZero<Vec<C>> {
    let (j, eps) = tensor_raising_index(factors, i);
    if eps == 0 {
        return OrZero::Zero;
    }
    factors[j].raise(i).map(|y| {
        let mut v = factors.to_vec();
        v[j] = y;
        v
    })
}

/// The rows of `T` as single-row tableaux, bottom row first.
pub fn rows_as_tensor(t: &SetValuedTableau) -> Vec<SetValuedTableau> {
    let s = t.shape();
    (0..s.rows())
        .rev()
        .map(|r| {
            let shape = SkewShape::from_parts(vec![s.row_end(r)], vec![s.row_start(r)]).unwrap();
            SetValuedTableau::new_unchecked(shape, vec![t.rows()[r].clone()])
        })
        .collect()
}

/// Inverse of [`rows_as_tensor`] for a given shape.
pub fn tensor_to_rows(shape: &SkewShape, rows: &[SetValuedTableau]) -> SetValuedTableau {
    let cells = rows.iter().rev().map(|row| row.rows().first().cloned().unwrap_or_default()).collect();
    SetValuedTableau::new_unchecked(shape.clone(), cells)
}

/// One-line notation of `s_{w_1} ⋯ s_{w_p}` in `S_n`.
pub fn permutation_of(word: &[usize], n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    for &i in word {
        p.swap(i - 1, i);
    }
    p
}

pub fn inversions(p: &[usize]) -> usize {
    (0..p.len()).map(|a| (a + 1..p.len()).filter(|&b| p[a] > p[b]).count()).sum()
}

pub fn is_reduced(word: &[usize], n: usize) -> bool {
    inversions(&permutation_of(word, n)) == word.len()
}

/// A reduced word for a permutation `w` with `w·λ = α` for a composition `α`
/// (sorting by adjacent swaps).
pub fn reduced_word_to(alpha: &Composition) -> Vec<usize> {
    let mut a = alpha.entries().to_vec();
    let mut word = Vec::new();
    // Bubble α to its decreasing rearrangement; the swaps, reversed in
    // application order, give a word acting on λ to produce α.
    while let Some(i) = (1..a.len()).find(|&i| a[i - 1] < a[i]) {
        a.swap(i - 1, i);
        word.push(i);
    }
    word
}

/// `B_w(λ)` together with the word that generated it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureSet {
    pub base: Partition,
    pub word: Vec<usize>,
    pub elements: BTreeSet<Tableau>,
}

/// `{f_{i_1}^{k_1} ⋯ f_{i_p}^{k_p} T_λ}` for the word `i_1 ⋯ i_p`, the last
/// letter acting first.
pub fn demazure_generate(lambda: &Partition, word: &[usize], n: usize) -> Result<DemazureSet, CrystalError> {
    if let Some(&i) = word.iter().find(|&&i| i == 0 || i >= n) {
        return Err(CrystalError::IndexOutOfRange { i, n });
    }
    if !is_reduced(word, n) {
        return Err(CrystalError::NotReduced(word.to_vec()));
    }
    let mut set: BTreeSet<Tableau> = BTreeSet::from([Tableau::highest(lambda)]);
    for &i in word.iter().rev() {
        let mut next = BTreeSet::new();
        for t in &set {
            let mut cur = t.clone();
            next.insert(cur.clone());
            while let OrZero::Elem(y) = cur.lower(i) {
                next.insert(y.clone());
                cur = y;
            }
        }
        set = next;
    }
    Ok(DemazureSet { base: lambda.clone(), word: word.to_vec(), elements: set })
}

/// `Σ x^{wt(u)}`.
pub fn character<'a, C: Crystal + 'a>(elements: impl IntoIterator<Item = &'a C>, n: usize) -> Poly {
    let mut out = Poly::zero();
    for u in elements {
        out += &Poly::x_power(u.crystal_weight(n).entries());
    }
    out
}

/// Elements killed by every `e_i`, `1 ≤ i < n`.
pub fn highest_weights<'a, C: Crystal + 'a>(elements: impl IntoIterator<Item = &'a C>, n: usize) -> Vec<&'a C> {
    elements.into_iter().filter(|u| (1..n).all(|i| u.raise(i).is_zero())).collect()
}

/// The unique rearrangement `γ` of the highest weight with
/// `character(component) = κ_γ`, searched in lexicographic order.
pub fn demazure_label(component: &BTreeSet<Tableau>, n: usize) -> Result<Composition, CrystalError> {
    let hw = highest_weights(component.iter(), n);
    if hw.len() != 1 {
        return Err(CrystalError::HighestWeight(hw.len()));
    }
    let lambda = hw[0].crystal_weight(n);
    let ch = character(component.iter(), n);
    label_of_character(&ch, &lambda.padded(n))
}

/// The unique rearrangement `γ` of `λ` with `κ_γ = ch`.
pub fn label_of_character(ch: &Poly, lambda: &Composition) -> Result<Composition, CrystalError> {
    let matches: Vec<Composition> = lambda.rearrangements().into_iter().filter(|g| &key_polynomial(g) == ch).collect();
    if matches.len() != 1 {
        return Err(CrystalError::NoKeyMatch(matches.len()));
    }
    Ok(matches.into_iter().next().unwrap())
}

/// The connected component of `x` in the crystal on letters `1..=n`.
pub fn connected_component<C: Crystal + Ord>(x: &C, n: usize) -> BTreeSet<C> {
    let mut seen = BTreeSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(u) = queue.pop_front() {
        for i in 1..n {
            for v in [u.raise(i), u.lower(i)] {
                if let OrZero::Elem(v) = v {
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    seen
}

/// Graphviz rendering with `f_i` edges labelled `i`. Nodes are numbered in
/// the order given and labelled by tableau JSON.
pub fn crystal_graph_dot(elements: &[SetValuedTableau], n: usize) -> String {
    let index: BTreeMap<&SetValuedTableau, usize> = elements.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut out = String::from("digraph crystal {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (k, t) in elements.iter().enumerate() {
        let label = serde_json::to_string(&t.to_json()).unwrap().replace('"', "\\\"");
        let _ = writeln!(out, "  n{k} [label=\"{label}\"];");
    }
    for (k, t) in elements.iter().enumerate() {
        for i in 1..n {
            if let OrZero::Elem(u) = t.lower(i) {
                if let Some(&m) = index.get(&u) {
                    let _ = writeln!(out, "  n{k} -> n{m} [label=\"{i}\"];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Letter set helper used by tests and examples.
pub fn cell(letters: &[u32]) -> LetterSet {
    letters.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::Flag;
    use crate::tableau::enumerate_svt;

    fn sample_tableau() -> SetValuedTableau {
        let s = SkewShape::from_parts(vec![2, 2], vec![1]).unwrap();
        SetValuedTableau::from_lists(s, vec![vec![vec![1]], vec![vec![1, 2], vec![2]]]).unwrap()
    }

    #[test]
    fn lowering_moves_on_a_sample() {
        let t = sample_tableau();
        let OrZero::Elem(u) = t.lower(2) else { panic!() };
        assert_eq!(u.cell(1, 1), Some(cell(&[3])));
        let OrZero::Elem(v) = u.lower(2) else { panic!() };
        assert_eq!(v.cell(1, 0), Some(cell(&[1, 3])));
        let OrZero::Elem(w) = u.lower(1) else { panic!() };
        assert_eq!(w.cell(0, 1), Some(cell(&[2])));
    }

    #[test]
    fn set_valued_bump_case() {
        let s = SkewShape::from_parts(vec![2, 2], vec![1]).unwrap();
        let t = SetValuedTableau::from_lists(s.clone(), vec![vec![vec![1]], vec![vec![2], vec![2, 3]]]).unwrap();
        let OrZero::Elem(u) = t.lower(2) else { panic!() };
        let want = SetValuedTableau::from_lists(s, vec![vec![vec![1]], vec![vec![2, 3], vec![3]]]).unwrap();
        assert_eq!(u, want);
        assert_eq!(u.raise(2), OrZero::Elem(t));
    }

    #[test]
    fn axioms_on_a_sample_set() {
        let s = SkewShape::from_parts(vec![2, 2], vec![1]).unwrap();
        let all = enumerate_svt(&s, &Flag::full(3, 2), Some(&Composition::new(vec![0, 1]))).unwrap();
        for t in &all {
            for i in 1..3 {
                assert_eq!(string_lengths(t, i), t.string_counts(i));
                if let OrZero::Elem(u) = t.lower(i) {
                    assert_eq!(u.raise(i), OrZero::Elem(t.clone()));
                    assert_eq!(u.excess(), t.excess());
                }
            }
        }
    }

    #[test]
    fn standard_crystal_letter() {
        let w = Word(vec![2]);
        assert_eq!(w.string_counts(2), (0, 1));
        assert_eq!(w.string_counts(1), (1, 0));
        assert_eq!(Word(vec![1, 2]).lower(1), OrZero::Elem(Word(vec![2, 2])));
        assert_eq!(Word(vec![2, 1]).lower(1), OrZero::Zero);
    }

    #[test]
    fn demazure_crystal_s1_s2() {
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let d = demazure_generate(&lambda, &[1, 2], 3).unwrap();
        assert_eq!(d.elements.len(), 5);
        let label = demazure_label(&d.elements, 3).unwrap();
        assert_eq!(label, Composition::new(vec![0, 2, 1]));
        assert!(demazure_generate(&lambda, &[1, 1], 3).is_err());
        assert_eq!(demazure_generate(&lambda, &[], 3).unwrap().elements.len(), 1);
    }

    #[test]
    fn reduced_word_reaches_composition() {
        for a in Composition::new(vec![0, 1, 2, 2]).rearrangements() {
            let w = reduced_word_to(&a);
            assert!(is_reduced(&w, 4));
            assert_eq!(a.dagger().to_composition().padded(4).act(&w), a);
        }
    }
}
