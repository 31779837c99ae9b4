//! Demazure operators, key polynomials, left keys, the word sets
//! `W(α, Φ)`, and expansion of polynomials in the key basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::insertion::{burge, Biword};
use crate::poly::{Monomial, Poly};
use crate::shape::{Composition, Flag};
use crate::tableau::Tableau;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyError {
    #[error("T_{i} is undefined for {n} variables")]
    BadIndex { i: usize, n: usize },
    #[error("division by x_{i} - x_{j} left a nonzero remainder")]
    Remainder { i: usize, j: usize },
    #[error("polynomial involves t variables")]
    HasT,
    #[error("polynomial uses x_{vars} but only {n} variables are allowed")]
    TooManyVariables { vars: usize, n: usize },
    #[error("key expansion did not terminate after {0} steps")]
    IterationCap(usize),
    #[error("flag of length {flag} is shorter than the composition ({len})")]
    FlagTooShort { flag: usize, len: usize },
}

fn with_exponent(m: &Monomial, i: usize, e: u32) -> Monomial {
    let mut x = m.x_padded(i + 1);
    x[i] = e;
    Monomial::new(x, m.t().to_vec())
}

/// `T_i f = (x_i f − x_{i+1} s_i f) / (x_i − x_{i+1})`, by synthetic
/// division in `x_i`.
pub fn demazure_op(f: &Poly, i: usize) -> Result<Poly, KeyError> {
    if i == 0 {
        return Err(KeyError::BadIndex { i, n: 0 });
    }
    let (a, b) = (i - 1, i);
    let g = &(f * &Poly::x(i)) - &(&f.swap_x(i) * &Poly::x(i + 1));
    // Coefficients of powers of x_i, each free of x_i.
    let mut coeffs: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, &c) in g.terms() {
        coeffs.entry(m.x_exp(i)).or_insert_with(Poly::zero).add_term(with_exponent(m, a, 0), c);
    }
    let Some(&deg) = coeffs.keys().next_back() else {
        return Ok(Poly::zero());
    };
    let xb = Poly::x(b + 1);
    let mut quotient = Poly::zero();
    let mut carry = Poly::zero();
    for k in (0..=deg).rev() {
        let mut c = coeffs.remove(&k).unwrap_or_else(Poly::zero);
        c += &(&xb * &carry);
        if k == 0 {
            if !c.is_zero() {
                return Err(KeyError::Remainder { i, j: i + 1 });
            }
            break;
        }
        for (m, &v) in c.terms() {
            quotient.add_term(with_exponent(m, a, k - 1), v);
        }
        carry = c;
    }
    Ok(quotient)
}

fn cache() -> &'static Mutex<HashMap<Composition, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<Composition, Poly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `κ_α`, memoized. Uses `κ_α = T_i κ_{s_i α}` at the first ascent of `α`.
pub fn key_polynomial(alpha: &Composition) -> Poly {
    if let Some(p) = cache().lock().unwrap().get(alpha) {
        return p.clone();
    }
    let e = alpha.entries();
    let p = match (1..e.len()).find(|&i| e[i - 1] < e[i]) {
        None => Poly::x_power(e),
        Some(i) => demazure_op(&key_polynomial(&alpha.reflect(i)), i).expect("key polynomial division"),
    };
    cache().lock().unwrap().insert(alpha.clone(), p.clone());
    p
}

/// `κ_α` computed along an arbitrary reduced word `w` with `w·α† = α`,
/// without the cache.
pub fn key_polynomial_along(alpha: &Composition, word: &[usize]) -> Result<Poly, KeyError> {
    let lambda = alpha.dagger();
    let mut p = Poly::x_power(lambda.parts());
    for &i in word.iter().rev() {
        p = demazure_op(&p, i)?;
    }
    Ok(p)
}

/// `n^{α_n} ⋯ 2^{α_2} 1^{α_1}`.
pub fn b_word(alpha: &Composition) -> Vec<u32> {
    let e = alpha.entries();
    (0..e.len()).rev().flat_map(|j| std::iter::repeat_n(j as u32 + 1, e[j])).collect()
}

/// Weakly increasing words of length `len` in letters `1..=max`.
fn increasing_words(len: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in lo..=max {
            cur.push(x);
            rec(len, x, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 1, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `W(α, Φ)`: words `v^(n) ⋯ v^(1)` with `v^(i)` weakly increasing of length
/// `α_i` in letters `≤ Φ_i`, a strict descent between consecutive nonempty
/// blocks, and Burge recording tableau of `[b(α); v]` equal to `key(α)`.
pub fn word_set_w(alpha: &Composition, flag: &Flag) -> Result<Vec<Vec<u32>>, KeyError> {
    let e = alpha.entries();
    if flag.len() < e.len() {
        return Err(KeyError::FlagTooShort { flag: flag.len(), len: e.len() });
    }
    let top = b_word(alpha);
    let key = Tableau::key(alpha);
    let blocks: Vec<Vec<Vec<u32>>> = (0..e.len()).map(|i| increasing_words(e[i], flag.get(i) as u32)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(alpha.size());
    fn rec(i: usize, blocks: &[Vec<Vec<u32>>], cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == 0 {
            visit(cur);
            return;
        }
        for b in &blocks[i - 1] {
            if let (Some(&last), Some(&first)) = (cur.last(), b.first()) {
                if last <= first {
                    continue;
                }
            }
            let len = cur.len();
            cur.extend_from_slice(b);
            rec(i - 1, blocks, cur, visit);
            cur.truncate(len);
        }
    }
    rec(e.len(), &blocks, &mut cur, &mut |v| {
        let bw = Biword::new(top.clone(), v.to_vec()).expect("blocks are increasing");
        if burge(&bw).1 == key {
            out.push(v.to_vec());
        }
    });
    out.sort();
    Ok(out)
}

/// Left key `K_−(R)` by scanning: the `j`-th column of the key collects the
/// endpoints of paths started at the cells of column `j`, bottom to top,
/// moving left and taking in each column the lowest unused entry not
/// exceeding the current value.
pub fn left_key(r: &Tableau) -> Tableau {
    let cols = r.columns();
    let mut key_cols = Vec::with_capacity(cols.len());
    for j in 0..cols.len() {
        let mut used: Vec<Vec<bool>> = cols[..j].iter().map(|c| vec![false; c.len()]).collect();
        let mut ends = Vec::with_capacity(cols[j].len());
        for &start in cols[j].iter().rev() {
            let mut v = start;
            for c in (0..j).rev() {
                if let Some(p) = (0..cols[c].len()).rev().find(|&p| !used[c][p] && cols[c][p] <= v) {
                    used[c][p] = true;
                    v = cols[c][p];
                }
            }
            ends.push(v);
        }
        ends.sort_unstable();
        key_cols.push(ends);
    }
    Tableau::from_columns(&key_cols)
}

/// `β(R) = wt(K_−(R))`.
pub fn beta(r: &Tableau, n: usize) -> Composition {
    left_key(r).weight(n)
}

/// `f = Σ c_α κ_α` over compositions of length `n`, by repeatedly peeling
/// the lexicographically smallest monomial `x^β` (every monomial of `κ_β`
/// is lexicographically at least `β`, with `x^β` appearing once).
pub fn key_expand(f: &Poly, n: usize) -> Result<BTreeMap<Composition, i64>, KeyError> {
    if !f.is_x_only() {
        return Err(KeyError::HasT);
    }
    if f.x_vars() > n {
        return Err(KeyError::TooManyVariables { vars: f.x_vars(), n });
    }
    const CAP: usize = 1 << 20;
    let mut residue = f.clone();
    let mut out = BTreeMap::new();
    for _ in 0..CAP {
        let Some((m, &c)) = residue.terms().iter().next() else {
            return Ok(out);
        };
        let alpha = Composition::new(m.x().iter().map(|&e| e as usize).collect());
        residue -= &key_polynomial(&alpha).scale(c);
        *out.entry(alpha).or_insert(0) += c;
    }
    Err(KeyError::IterationCap(CAP))
}
