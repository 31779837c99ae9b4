//! Exact integer polynomials in `x_1, x_2, …` and `t_1, t_2, …`.
//!
//! Exponent vectors are kept without trailing zeros, so a polynomial does not
//! depend on how many variables it is considered to live in.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

fn trimmed(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_vec(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    x: Vec<u32>,
    t: Vec<u32>,
}

impl Monomial {
    pub fn new(x: Vec<u32>, t: Vec<u32>) -> Self {
        Monomial { x: trimmed(x), t: trimmed(t) }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn x_exp(&self, i: usize) -> u32 {
        self.x.get(i - 1).copied().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { x: add_vec(&self.x, &other.x), t: add_vec(&self.t, &other.t) }
    }

    /// Exponents padded to `n` entries.
    pub fn x_padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.x.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn t_padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.t.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    fn with_x(&self, x: Vec<u32>) -> Monomial {
        Monomial { x: trimmed(x), t: self.t.clone() }
    }
}

/// Sparse polynomial with `i64` coefficients; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: i64) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// `x^α`.
    pub fn x_power(alpha: &[usize]) -> Self {
        Poly::term(Monomial::new(alpha.iter().map(|&a| a as u32).collect(), vec![]), 1)
    }

    /// `t^α`.
    pub fn t_power(alpha: &[usize]) -> Self {
        Poly::term(Monomial::new(vec![], alpha.iter().map(|&a| a as u32).collect()), 1)
    }

    /// `x_i`, 1-based.
    pub fn x(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Poly::term(Monomial::new(e, vec![]), 1)
    }

    /// `t_i`, 1-based.
    pub fn t(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Poly::term(Monomial::new(vec![], e), 1)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn scale(&self, c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, &v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: i64) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, &v)| (k.mul(m), v * c)).collect() }
    }

    /// Exchange `x_i` and `x_{i+1}`.
    pub fn swap_x(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mut x = m.x_padded(i + 1);
            x.swap(i - 1, i);
            out.add_term(m.with_x(x), c);
        }
        out
    }

    /// Largest `x` index with a nonzero exponent.
    pub fn x_vars(&self) -> usize {
        self.terms.keys().map(|m| m.x.len()).max().unwrap_or(0)
    }

    pub fn t_vars(&self) -> usize {
        self.terms.keys().map(|m| m.t.len()).max().unwrap_or(0)
    }

    pub fn is_x_only(&self) -> bool {
        self.terms.keys().all(|m| m.t.is_empty())
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    /// Terms of `x`-degree at most `d`.
    pub fn truncate_x_degree(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.x_degree() <= d).map(|(m, &c)| (m.clone(), c)).collect() }
    }

    /// Group by the `t` exponent: `f = Σ t^β f_β(x)`.
    pub fn split_t(&self) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            out.entry(m.t.clone()).or_default().add_term(Monomial { x: m.x.clone(), t: vec![] }, c);
        }
        out
    }

    /// Set every `t_i` to `1`.
    pub fn at_t_one(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            out.add_term(Monomial { x: m.x.clone(), t: vec![] }, c);
        }
        out
    }

    /// Drop every term involving some `t_i`.
    pub fn at_t_zero(&self) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.t.is_empty()).map(|(m, &c)| (m.clone(), c)).collect() }
    }

    pub fn to_json(&self, nx: usize, nt: usize) -> PolyJson {
        let nx = nx.max(self.x_vars());
        let nt = nt.max(self.t_vars());
        let vars = (1..=nx).map(|i| format!("x{i}")).chain((1..=nt).map(|i| format!("t{i}"))).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut e = m.x_padded(nx);
                e.extend(m.t_padded(nt));
                (e, c)
            })
            .collect();
        PolyJson { vars, terms }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly, String> {
        let mut slots = Vec::new();
        for v in &j.vars {
            let (kind, idx) = v.split_at(1);
            let idx: usize = idx.parse().map_err(|_| format!("bad variable name {v}"))?;
            if idx == 0 || !(kind == "x" || kind == "t") {
                return Err(format!("bad variable name {v}"));
            }
            slots.push((kind == "x", idx - 1));
        }
        let mut out = Poly::zero();
        for (e, c) in &j.terms {
            if e.len() != slots.len() {
                return Err("exponent vector length does not match vars".into());
            }
            let mut x = Vec::new();
            let mut t = Vec::new();
            for (&(is_x, idx), &k) in slots.iter().zip(e) {
                let v = if is_x { &mut x } else { &mut t };
                if v.len() <= idx {
                    v.resize(idx + 1, 0);
                }
                v[idx] += k;
            }
            out.add_term(Monomial::new(x, t), *c);
        }
        Ok(out)
    }

    /// Terms ordered by decreasing total degree, then decreasing exponents.
    fn display_order(&self) -> Vec<(&Monomial, i64)> {
        let mut v: Vec<(&Monomial, i64)> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        v.sort_by(|a, b| {
            (b.0.x_degree() + b.0.t_degree(), &b.0.t, &b.0.x).cmp(&(a.0.x_degree() + a.0.t_degree(), &a.0.t, &a.0.x))
        });
        v
    }

    pub fn to_latex(&self) -> String {
        format_terms(self.display_order().into_iter().map(|(m, c)| (c, monomial_latex(m))))
    }
}

fn factor_string(m: &Monomial, sep: &str, pow: impl Fn(&str, usize, u32) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.t.iter().enumerate() {
        if e > 0 {
            parts.push(pow("t", i + 1, e));
        }
    }
    for (i, &e) in m.x.iter().enumerate() {
        if e > 0 {
            parts.push(pow("x", i + 1, e));
        }
    }
    parts.join(sep)
}

fn monomial_text(m: &Monomial) -> String {
    factor_string(m, "*", |v, i, e| if e == 1 { format!("{v}{i}") } else { format!("{v}{i}^{e}") })
}

fn monomial_latex(m: &Monomial) -> String {
    factor_string(m, " ", |v, i, e| if e == 1 { format!("{v}_{{{i}}}") } else { format!("{v}_{{{i}}}^{{{e}}}") })
}

/// Join signed terms `c·body` as `a - b + …`, printing bare `1` for empty
/// bodies and `0` for an empty sum.
pub(crate) fn format_terms(terms: impl IntoIterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (k, (c, body)) in terms.into_iter().enumerate() {
        let sign = if c < 0 { "-" } else { "+" };
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.unsigned_abs();
        match (a, body.is_empty()) {
            (_, true) => out.push_str(&a.to_string()),
            (1, false) => out.push_str(&body),
            (_, false) => out.push_str(&format!("{a}{body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_order().into_iter().map(|(m, c)| {
            let body = monomial_text(m);
            let a = c.unsigned_abs();
            if body.is_empty() || a == 1 {
                (c, body)
            } else {
                (c.signum(), format!("{a}*{body}"))
            }
        });
        write!(f, "{}", format_terms(terms))
    }
}

/// Serialized polynomial: variable names and `[exponents, coefficient]`
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<(Vec<u32>, i64)>,
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x1 = Poly::x(1);
        let x2 = Poly::x(2);
        let p = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(p, &Poly::x_power(&[2]) - &Poly::x_power(&[0, 2]));
        assert!((&p - &p).is_zero());
        assert_eq!(p.swap_x(1), -&p);
    }

    #[test]
    fn display_and_latex() {
        let p = &(&Poly::x(1) + &Poly::x(2)) - &(&Poly::x(1) * &Poly::x(2));
        assert_eq!(p.to_string(), "-x1*x2 + x1 + x2");
        let q = &Poly::t(2) * &Poly::x_power(&[2, 0, 1]);
        assert_eq!(q.scale(-3).to_latex(), "-3t_{2} x_{1}^{2} x_{3}");
        assert_eq!(Poly::one().to_string(), "1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = &(&Poly::t(1) * &Poly::x(3)) - &Poly::constant(2);
        let j = p.to_json(3, 2);
        assert_eq!(j.vars, vec!["x1", "x2", "x3", "t1", "t2"]);
        let s = serde_json::to_string(&j).unwrap();
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(Poly::from_json(&back).unwrap(), p);
    }
}
