//! Generating functions and their expansions in the key, Schur, stable
//! Grothendieck and dual stable Grothendieck bases.
//!
//! Every expansion is computed structurally (classification of tableaux
//! into Demazure crystals, or enumeration of the index families `𝕊`, `ℝ`)
//! and then compared exactly against a direct enumeration. A mismatch is
//! reported as an [`IdentityViolation`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal::{
    demazure_generate, demazure_label, label_of_character, reduced_word_to, Crystal, CrystalError, OrZero,
};
use crate::insertion::{burge, psi, psi_flag, rect, Biword, InsertionError, PsiRecord};
use crate::keys::{b_word, key_polynomial};
use crate::poly::{format_terms, Monomial, Poly};
use crate::shape::{Composition, Flag, Partition, ShapeError, SkewShape};
use crate::tableau::{
    enumerate_rpp, enumerate_rpp_with, enumerate_ssyt, RecordingTableau, ReversePlanePartition, RppFilter,
    SetValuedTableau, SvtEnumerator, SvtFilter, Tableau,
};

/// A structural formula disagreed with direct enumeration.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{what}; counterexample: {counterexample}")]
pub struct IdentityViolation {
    pub what: String,
    pub counterexample: String,
}

impl IdentityViolation {
    pub fn new(what: impl Into<String>, counterexample: impl Into<String>) -> Self {
        IdentityViolation { what: what.into(), counterexample: counterexample.into() }
    }

    fn poly_mismatch(what: &str, lhs: &Poly, rhs: &Poly) -> Self {
        let diff = lhs - rhs;
        let first = diff.terms().iter().next().map(|(m, c)| format!("{}", Poly::term(m.clone(), *c)));
        IdentityViolation::new(
            what,
            format!("difference has {} terms, first {}", diff.len(), first.unwrap_or_default()),
        )
    }
}

#[derive(Debug, Error)]
pub enum ExpansionError {
    #[error(transparent)]
    Identity(#[from] IdentityViolation),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Insertion(#[from] InsertionError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("flag {flag} allows letters above n = {n}")]
    FlagExceedsN { flag: Flag, n: usize },
    #[error("degree cap {cap} is below |outer| = {size}")]
    DegreeCap { cap: usize, size: usize },
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn monomial(x: &Composition, t: &Composition) -> Monomial {
    let cv = |c: &Composition| c.entries().iter().map(|&e| e as u32).collect();
    Monomial::new(cv(x), cv(t))
}

fn check_flag(flag: &Flag, n: usize) -> Result<(), ExpansionError> {
    if flag.max() > n {
        return Err(ExpansionError::FlagExceedsN { flag: flag.clone(), n });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Generating functions

/// `G_{λ/μ}(X_Φ; t) = Σ (−1)^{|ex T|} t^{ex T} x^{wt T}` over flagged SVT.
pub fn grothendieck_flagged(shape: &SkewShape, flag: &Flag) -> Result<Poly, ShapeError> {
    let n = flag.max();
    let mut out = Poly::zero();
    SvtEnumerator::new(shape, flag, SvtFilter::default())?.for_each(|t| {
        let ex = t.excess();
        out.add_term(monomial(&t.weight(n), &ex), sign(ex.size()));
    });
    Ok(out)
}

/// `s_{λ/μ}(X_Φ)` by SSYT enumeration.
pub fn flagged_schur(shape: &SkewShape, flag: &Flag) -> Result<Poly, ShapeError> {
    let n = flag.max();
    let mut out = Poly::zero();
    for t in enumerate_ssyt(shape, flag)? {
        out.add_term(monomial(&t.weight(n), &Composition::default()), 1);
    }
    Ok(out)
}

/// `g̃_{λ/μ}(X_Φ; t) = Σ t^{ceq R} x^{wt R}` over flagged RPP.
pub fn dual_g_flagged(shape: &SkewShape, flag: &Flag) -> Result<Poly, ShapeError> {
    let n = flag.max();
    let mut out = Poly::zero();
    for r in enumerate_rpp(shape, flag)? {
        out.add_term(monomial(&r.weight(n), &r.ceq()), 1);
    }
    Ok(out)
}

fn full_flag(n: usize, rows: usize) -> Flag {
    Flag::full(n.max(1), rows)
}

pub fn schur_poly(lambda: &Partition, n: usize) -> Poly {
    let s = SkewShape::straight(lambda.clone());
    if n == 0 {
        return if lambda.is_empty() { Poly::one() } else { Poly::zero() };
    }
    flagged_schur(&s, &full_flag(n, s.rows())).expect("full flag")
}

/// `G_λ(x_1, …, x_n)` with the alternating sign.
#[allow(non_snake_case)]
pub fn stable_G_n(lambda: &Partition, n: usize) -> Poly {
    let s = SkewShape::straight(lambda.clone());
    if n == 0 {
        return if lambda.is_empty() { Poly::one() } else { Poly::zero() };
    }
    grothendieck_flagged(&s, &full_flag(n, s.rows())).expect("full flag").at_t_one()
}

/// `g_λ(x_1, …, x_n)`.
pub fn dual_g_n(lambda: &Partition, n: usize) -> Poly {
    let s = SkewShape::straight(lambda.clone());
    if n == 0 {
        return if lambda.is_empty() { Poly::one() } else { Poly::zero() };
    }
    dual_g_flagged(&s, &full_flag(n, s.rows())).expect("full flag").at_t_one()
}

// ---------------------------------------------------------------------------
// Reading words

/// `w(S)`: rows bottom to top; within a row, first the non-minimal entries
/// of each box (boxes right to left, entries decreasing), then the minimal
/// entries left to right.
pub fn reading_word_svt(s: &SetValuedTableau) -> Vec<u32> {
    let mut w = Vec::with_capacity(s.entry_count());
    for row in s.rows().iter().rev() {
        for cell in row.iter().rev() {
            w.extend(cell.iter().rev().take(cell.len() - 1));
        }
        w.extend(row.iter().map(|c| c.least()));
    }
    w
}

/// `w(R)`: the topmost occurrence of each letter in each column, rows
/// bottom to top, left to right.
pub fn reading_word_rpp(r: &ReversePlanePartition) -> Vec<u32> {
    let s = r.shape();
    let mut w = Vec::new();
    for row in (0..s.rows()).rev() {
        for c in s.row_start(row)..s.row_end(row) {
            let x = r.get(row, c).unwrap();
            if row == 0 || r.get(row - 1, c) != Some(x) {
                w.push(x);
            }
        }
    }
    w
}

/// `(r_T, h(T))`: entries not equal to the entry directly below, rows
/// bottom to top, with the 1-based row of each.
pub fn row_reading_rpp(r: &ReversePlanePartition) -> (Vec<u32>, Vec<u32>) {
    let s = r.shape();
    let mut word = Vec::new();
    let mut heights = Vec::new();
    for row in (0..s.rows()).rev() {
        for c in s.row_start(row)..s.row_end(row) {
            if !r.equals_below(row, c) {
                word.push(r.get(row, c).unwrap());
                heights.push(row as u32 + 1);
            }
        }
    }
    (word, heights)
}

// ---------------------------------------------------------------------------
// Expansions as data

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Key,
    Schur,
    #[serde(rename = "G")]
    StableG,
    #[serde(rename = "g")]
    DualG,
}

impl Basis {
    fn text(self) -> &'static str {
        match self {
            Basis::Key => "κ",
            Basis::Schur => "s",
            Basis::StableG => "G",
            Basis::DualG => "g",
        }
    }

    fn latex(self) -> &'static str {
        match self {
            Basis::Key => "\\kappa",
            Basis::Schur => "s",
            Basis::StableG => "G",
            Basis::DualG => "g",
        }
    }

    /// The basis element in `x_1, …, x_n`.
    pub fn element(self, index: &Composition, n: usize) -> Poly {
        match self {
            Basis::Key => key_polynomial(index),
            Basis::Schur => schur_poly(&index.dagger(), n),
            Basis::StableG => stable_G_n(&index.dagger(), n),
            Basis::DualG => dual_g_n(&index.dagger(), n),
        }
    }
}

/// `Σ c · t^α · B_γ` with integer coefficients keyed by `(α, γ)`.
///
/// Indices are stored padded to `n`; `t` exponents have trailing zeros
/// removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub basis: Basis,
    pub n: usize,
    terms: BTreeMap<(Composition, Composition), i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTermJson {
    pub t: Vec<usize>,
    pub index: Vec<usize>,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub basis: Basis,
    pub n: usize,
    pub terms: Vec<ExpansionTermJson>,
}

fn trimmed(c: &Composition) -> Composition {
    let e = c.entries();
    let end = e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    Composition::new(e[..end].to_vec())
}

impl Expansion {
    pub fn new(basis: Basis, n: usize) -> Self {
        Expansion { basis, n, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, t: &Composition, index: &Composition, c: i64) {
        if c == 0 {
            return;
        }
        let key = (trimmed(t), index.padded(self.n));
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, t: &Composition, index: &Composition) -> i64 {
        self.terms.get(&(trimmed(t), index.padded(self.n))).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Composition, i64)> {
        self.terms.iter().map(|((t, g), &c)| (t, g, c))
    }

    /// Terms by `|α|` ascending, then `α` descending, then index descending.
    pub fn ordered_terms(&self) -> Vec<(&Composition, &Composition, i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then_with(|| b.0.cmp(a.0)).then_with(|| b.1.cmp(a.1)));
        v
    }

    /// `Σ c t^α B_γ(x_1, …, x_n)`.
    pub fn to_poly(&self) -> Poly {
        let mut cache: HashMap<&Composition, Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (t, g, c) in self.terms() {
            let b = cache.entry(g).or_insert_with(|| self.basis.element(g, self.n));
            let tm = Monomial::new(vec![], t.entries().iter().map(|&e| e as u32).collect());
            out += &b.mul_monomial(&tm, c);
        }
        out
    }

    fn render(
        &self,
        t_factor: impl Fn(usize, usize) -> String,
        index: impl Fn(&Composition) -> String,
        sep: &str,
    ) -> String {
        format_terms(self.ordered_terms().into_iter().map(|(t, g, c)| {
            let mut parts: Vec<String> =
                t.entries().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| t_factor(i + 1, e)).collect();
            if !g.is_zero() {
                parts.push(index(g));
            }
            let a = c.unsigned_abs();
            let body = parts.join(sep);
            if a != 1 && !body.is_empty() {
                (c.signum(), format!("{a}{sep}{body}"))
            } else {
                (c, body)
            }
        }))
    }

    pub fn to_latex(&self) -> String {
        let name = self.basis.latex();
        self.render(
            |i, e| {
                if e == 1 {
                    format!("t_{{{i}}}")
                } else {
                    format!("t_{{{i}}}^{{{e}}}")
                }
            },
            |g| format!("{name}_{{{g}}}"),
            " ",
        )
    }

    pub fn to_json(&self) -> ExpansionJson {
        ExpansionJson {
            basis: self.basis,
            n: self.n,
            terms: self
                .ordered_terms()
                .into_iter()
                .map(|(t, g, c)| ExpansionTermJson { t: t.entries().to_vec(), index: g.entries().to_vec(), coeff: c })
                .collect(),
        }
    }

    pub fn from_json(j: &ExpansionJson) -> Expansion {
        let mut e = Expansion::new(j.basis, j.n);
        for term in &j.terms {
            e.add(&Composition::new(term.t.clone()), &Composition::new(term.index.clone()), term.coeff);
        }
        e
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.basis.text();
        let s = self.render(
            |i, e| {
                if e == 1 {
                    format!("t{i}")
                } else {
                    format!("t{i}^{e}")
                }
            },
            |g| format!("{name}_{g}"),
            "*",
        );
        write!(f, "{s}")
    }
}

// ---------------------------------------------------------------------------
// Classification of flagged SVT

/// Uncrowding data for one SVT.
#[derive(Clone, Debug)]
pub struct PsiData {
    pub tableau: SetValuedTableau,
    pub psi: PsiRecord,
    /// `rect(Ψ S)`.
    pub image: Tableau,
    /// `R′`: Burge recording tableau of `[b(θ̃); r_{Ψ S}]`.
    pub compatible: Tableau,
}

pub fn psi_data(s: &SetValuedTableau) -> Result<PsiData, InsertionError> {
    let record = psi(s)?;
    let word = record.image.row_reading_word();
    let top = b_word(&record.shape.row_lengths());
    let (p, q) = burge(&Biword::new(top, word)?);
    Ok(PsiData { tableau: s.clone(), psi: record, image: p, compatible: q })
}

/// `(ex, θ̃, Q″, R′)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub excess: Composition,
    pub shape: SkewShape,
    pub recording: RecordingTableau,
    pub compatible: Tableau,
}

impl ClassKey {
    fn of(d: &PsiData) -> ClassKey {
        ClassKey {
            excess: d.tableau.excess(),
            shape: d.psi.shape.clone(),
            recording: d.psi.recording.clone(),
            compatible: d.compatible.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SvtClass {
    pub key: ClassKey,
    /// `Φ̃`.
    pub evolved_flag: Flag,
    pub members: Vec<SetValuedTableau>,
    pub images: BTreeSet<Tableau>,
    /// `γ` with `ch(class) = κ_γ`.
    pub label: Composition,
}

impl SvtClass {
    pub fn character(&self, n: usize) -> Poly {
        let mut out = Poly::zero();
        for s in &self.members {
            out.add_term(monomial(&s.weight(n), &Composition::default()), 1);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub shape: SkewShape,
    pub flag: Flag,
    pub n: usize,
    pub classes: Vec<SvtClass>,
}

impl Classification {
    /// Classes grouped by `(ex, θ̃, Q″)`.
    pub fn by_recording(&self) -> BTreeMap<(Composition, SkewShape, RecordingTableau), Vec<&SvtClass>> {
        let mut out: BTreeMap<_, Vec<&SvtClass>> = BTreeMap::new();
        for c in &self.classes {
            out.entry((c.key.excess.clone(), c.key.shape.clone(), c.key.recording.clone())).or_default().push(c);
        }
        out
    }

    pub fn size(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

/// Uncrowding data for a fixed set of SVT on one shape, reusable across
/// flags.
pub struct PsiTable {
    shape: SkewShape,
    data: Vec<PsiData>,
    index: HashMap<SetValuedTableau, usize>,
}

impl PsiTable {
    /// Data for every SVT on `shape` with letters `≤ n`.
    pub fn build(shape: &SkewShape, n: usize) -> Result<PsiTable, ExpansionError> {
        PsiTable::for_flag(shape, &full_flag(n, shape.rows()))
    }

    pub fn for_flag(shape: &SkewShape, flag: &Flag) -> Result<PsiTable, ExpansionError> {
        let all = SvtEnumerator::new(shape, flag, SvtFilter::default())?.collect();
        let data: Vec<PsiData> = all.par_iter().map(psi_data).collect::<Result<_, _>>()?;
        let index = data.iter().enumerate().map(|(k, d)| (d.tableau.clone(), k)).collect();
        Ok(PsiTable { shape: shape.clone(), data, index })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, s: &SetValuedTableau) -> Option<&PsiData> {
        self.index.get(s).map(|&k| &self.data[k])
    }

    pub fn entries(&self) -> &[PsiData] {
        &self.data
    }

    /// Partition the flagged SVT into classes keyed by `(ex, θ̃, Q″, R′)`
    /// and check that each class is a Demazure crystal compatible with
    /// `Ψ`.
    pub fn classify(&self, flag: &Flag, n: usize) -> Result<Classification, ExpansionError> {
        check_flag(flag, n)?;
        flag.check_rows(self.shape.rows())?;
        let full = flag.bounds().iter().take(self.shape.rows()).all(|&b| b == n);
        let mut groups: BTreeMap<ClassKey, Vec<&PsiData>> = BTreeMap::new();
        for d in self.data.iter().filter(|d| d.tableau.respects_flag(flag)) {
            groups.entry(ClassKey::of(d)).or_default().push(d);
        }
        let classes: Vec<SvtClass> = groups
            .into_par_iter()
            .map(|(key, members)| self.check_class(key, &members, flag, n, full))
            .collect::<Result<_, _>>()?;
        Ok(Classification { shape: self.shape.clone(), flag: flag.clone(), n, classes })
    }

    fn check_class(
        &self,
        key: ClassKey,
        members: &[&PsiData],
        flag: &Flag,
        n: usize,
        full: bool,
    ) -> Result<SvtClass, ExpansionError> {
        let json = |s: &SetValuedTableau| serde_json::to_string(&s.to_json()).unwrap();
        let images: BTreeSet<Tableau> = members.iter().map(|d| d.image.clone()).collect();
        if images.len() != members.len() {
            return Err(IdentityViolation::new("rect∘Ψ is not injective on a class", json(&members[0].tableau)).into());
        }
        for d in members {
            for i in 1..n {
                for raising in [true, false] {
                    let (s2, p2) = if raising {
                        (d.tableau.raise(i), d.image.raise(i))
                    } else {
                        (d.tableau.lower(i), d.image.lower(i))
                    };
                    match s2 {
                        OrZero::Elem(s2) if s2.respects_flag(flag) => {
                            let e = self.get(&s2).ok_or_else(|| {
                                IdentityViolation::new("crystal operator left the enumerated set", json(&s2))
                            })?;
                            if ClassKey::of(e) != key || p2 != OrZero::Elem(e.image.clone()) {
                                let op = if raising { "e" } else { "f" };
                                return Err(IdentityViolation::new(
                                    format!("Ψ does not commute with {op}_{i}"),
                                    json(&d.tableau),
                                )
                                .into());
                            }
                        }
                        OrZero::Elem(_) => {}
                        OrZero::Zero => {
                            if (raising || full) && !p2.is_zero() {
                                return Err(IdentityViolation::new(
                                    format!("operator {i} kills S but not rect(Ψ S)"),
                                    json(&d.tableau),
                                )
                                .into());
                            }
                        }
                    }
                }
            }
        }
        let label = demazure_label(&images, n).map_err(|e| {
            IdentityViolation::new(format!("class image is not a Demazure crystal: {e}"), json(&members[0].tableau))
        })?;
        let lambda = label.dagger();
        let generated = demazure_generate(&lambda, &reduced_word_to(&label), n)?;
        if generated.elements != images {
            return Err(IdentityViolation::new(
                format!("class image differs from B_w({lambda}) for label {label}"),
                json(&members[0].tableau),
            )
            .into());
        }
        let evolved_flag = psi_flag(&members[0].tableau, &members[0].psi, flag)?;
        Ok(SvtClass {
            key,
            evolved_flag,
            members: members.iter().map(|d| d.tableau.clone()).collect(),
            images,
            label: label.padded(n),
        })
    }
}

pub fn classify_svt(shape: &SkewShape, flag: &Flag, n: usize) -> Result<Classification, ExpansionError> {
    check_flag(flag, n)?;
    PsiTable::for_flag(shape, flag)?.classify(flag, n)
}

fn assemble_key_expansion(c: &Classification) -> Expansion {
    let mut e = Expansion::new(Basis::Key, c.n);
    for class in &c.classes {
        let ex = &class.key.excess;
        e.add(ex, &class.label, sign(ex.size()));
    }
    e
}

fn verify(what: &str, lhs: &Poly, rhs: &Poly) -> Result<(), IdentityViolation> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(IdentityViolation::poly_mismatch(what, lhs, rhs))
    }
}

/// `G_{λ/μ}(X_Φ; t) = Σ (−1)^{|α|} t^α κ_γ` over the classes, checked
/// against [`grothendieck_flagged`].
#[allow(non_snake_case)]
pub fn key_expansion_G(shape: &SkewShape, flag: &Flag, n: usize) -> Result<Expansion, ExpansionError> {
    let c = classify_svt(shape, flag, n)?;
    let e = assemble_key_expansion(&c);
    verify("key expansion of the flagged Grothendieck polynomial", &e.to_poly(), &grothendieck_flagged(shape, flag)?)?;
    Ok(e)
}

/// Key expansion from a precomputed table.
#[allow(non_snake_case)]
pub fn key_expansion_G_with(table: &PsiTable, flag: &Flag, n: usize) -> Result<Expansion, ExpansionError> {
    let c = table.classify(flag, n)?;
    let e = assemble_key_expansion(&c);
    verify(
        "key expansion of the flagged Grothendieck polynomial",
        &e.to_poly(),
        &grothendieck_flagged(table.shape(), flag)?,
    )?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Classification of flagged RPP

#[derive(Clone, Debug)]
pub struct RppClass {
    /// Burge recording tableau of `[h(T); r_T]`, shared by the class.
    pub recording: Tableau,
    pub ceq: Composition,
    pub members: Vec<ReversePlanePartition>,
    /// The member with Yamanouchi `r_T`.
    pub yamanouchi: ReversePlanePartition,
    pub label: Composition,
}

fn rpp_recording(r: &ReversePlanePartition) -> Result<Tableau, InsertionError> {
    let (word, heights) = row_reading_rpp(r);
    Ok(burge(&Biword::new(heights, word)?).1)
}

/// Group flagged RPP by the recording tableau of `[h(T); r_T]` and label
/// each group by the key polynomial matching its character.
pub fn classify_rpp(shape: &SkewShape, flag: &Flag, n: usize) -> Result<Vec<RppClass>, ExpansionError> {
    check_flag(flag, n)?;
    let json = |r: &ReversePlanePartition| serde_json::to_string(&r.to_json()).unwrap();
    let all = enumerate_rpp(shape, flag)?;
    let mut groups: BTreeMap<Tableau, Vec<ReversePlanePartition>> = BTreeMap::new();
    for r in all {
        groups.entry(rpp_recording(&r)?).or_default().push(r);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (q, members) in groups {
        let yam: Vec<&ReversePlanePartition> =
            members.iter().filter(|r| crate::insertion::is_yamanouchi(&row_reading_rpp(r).0)).collect();
        if yam.len() != 1 {
            return Err(IdentityViolation::new(
                format!("recording class has {} Yamanouchi members", yam.len()),
                json(&members[0]),
            )
            .into());
        }
        let ceq = yam[0].ceq();
        if let Some(bad) = members.iter().find(|r| r.ceq() != ceq) {
            return Err(IdentityViolation::new("ceq is not constant on a recording class", json(bad)).into());
        }
        let mut ch = Poly::zero();
        for r in &members {
            ch.add_term(monomial(&r.weight(n), &Composition::default()), 1);
        }
        let lambda = Composition::from(q.shape()).padded(n);
        let label = label_of_character(&ch, &lambda).map_err(|e| {
            IdentityViolation::new(format!("RPP class character is not a key polynomial: {e}"), json(&members[0]))
        })?;
        out.push(RppClass { recording: q, ceq, yamanouchi: yam[0].clone(), members, label });
    }
    Ok(out)
}

/// `g̃_{λ/μ}(X_Φ; t) = Σ t^{ceq} κ_γ`, checked against [`dual_g_flagged`].
pub fn key_expansion_g(shape: &SkewShape, flag: &Flag, n: usize) -> Result<Expansion, ExpansionError> {
    let mut e = Expansion::new(Basis::Key, n);
    for c in classify_rpp(shape, flag, n)? {
        e.add(&c.ceq, &c.label, 1);
    }
    verify("key expansion of the flagged dual Grothendieck polynomial", &e.to_poly(), &dual_g_flagged(shape, flag)?)?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Schur and K-theoretic bases

/// Which unflagged generating function of `λ/μ` in `n` variables to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// `RG_{λ/μ}(x; t)`.
    Grothendieck,
    /// `g̃_{λ/μ}(x; t)`.
    Dual,
}

impl Source {
    pub fn generating_function(self, shape: &SkewShape, n: usize) -> Result<Poly, ShapeError> {
        let flag = full_flag(n, shape.rows());
        if n == 0 {
            return Ok(if shape.is_empty() { Poly::one() } else { Poly::zero() });
        }
        match self {
            Source::Grothendieck => grothendieck_flagged(shape, &flag),
            Source::Dual => dual_g_flagged(shape, &flag),
        }
    }
}

/// One element of the tableau multiset `𝕋` together with its weight
/// `sign · t^α`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightedTableau {
    pub tableau: Tableau,
    pub t: Composition,
    pub sign: i64,
}

/// `𝕋` for the source: the compatible tableaux `R′` with weight
/// `(−1)^{|α|} t^α`, or the RPP recording tableaux `Q` with weight
/// `t^{ceq}`.
pub fn compatible_tableaux(
    shape: &SkewShape,
    n: usize,
    source: Source,
) -> Result<Vec<WeightedTableau>, ExpansionError> {
    if shape.is_empty() {
        return Ok(vec![WeightedTableau { tableau: Tableau::empty(), t: Composition::default(), sign: 1 }]);
    }
    let flag = full_flag(n, shape.rows());
    let mut out: Vec<WeightedTableau> = match source {
        Source::Grothendieck => classify_svt(shape, &flag, n)?
            .classes
            .into_iter()
            .map(|c| WeightedTableau {
                sign: sign(c.key.excess.size()),
                t: trimmed(&c.key.excess),
                tableau: c.key.compatible,
            })
            .collect(),
        Source::Dual => classify_rpp(shape, &flag, n)?
            .into_iter()
            .map(|c| WeightedTableau { tableau: c.recording, t: trimmed(&c.ceq), sign: 1 })
            .collect(),
    };
    out.sort();
    Ok(out)
}

/// `f = Σ wt(T) s_{sh T}`, checked against the generating function.
pub fn schur_expansion(shape: &SkewShape, n: usize, source: Source) -> Result<Expansion, ExpansionError> {
    let mut e = Expansion::new(Basis::Schur, n);
    for w in compatible_tableaux(shape, n, source)? {
        e.add(&w.t, &w.tableau.shape().into(), w.sign);
    }
    verify("Schur expansion", &e.to_poly(), &source.generating_function(shape, n)?)?;
    Ok(e)
}

/// Map each distinct tableau of `𝕋` to its accumulated weights.
fn group_by_tableau(tt: &[WeightedTableau]) -> BTreeMap<&Tableau, Vec<(&Composition, i64)>> {
    let mut out: BTreeMap<&Tableau, Vec<(&Composition, i64)>> = BTreeMap::new();
    for w in tt {
        out.entry(&w.tableau).or_default().push((&w.t, w.sign));
    }
    out
}

fn content(t: &Tableau) -> Composition {
    t.weight(t.max_letter() as usize)
}

/// `𝕊 = {S : rect(w(S)) ∈ 𝕋}`: SVT of partition shape whose reading word
/// rectifies to a tableau of `𝕋`, with `g`-coefficient
/// `(−1)^{|ex S|} wt(rect(w(S)))`. The letters of such `S` are those of
/// the target tableau.
pub fn expand_in_g(shape: &SkewShape, n: usize, source: Source) -> Result<Expansion, ExpansionError> {
    let tt = compatible_tableaux(shape, n, source)?;
    let targets = group_by_tableau(&tt);
    let mut by_content: BTreeMap<Composition, Vec<&Tableau>> = BTreeMap::new();
    for t in targets.keys() {
        by_content.entry(content(t)).or_default().push(t);
    }
    let found: Vec<Vec<(Tableau, Partition, usize)>> = by_content
        .par_iter()
        .map(|(w, ts)| {
            let wanted: BTreeSet<&Tableau> = ts.iter().copied().collect();
            let letters = w.len().max(1);
            let mut hits = Vec::new();
            for k in 0..=w.size() {
                for nu in Partition::all_of(k) {
                    if nu.len() > letters {
                        continue;
                    }
                    let s = SkewShape::straight(nu.clone());
                    let flag = full_flag(letters, s.rows());
                    let filter = SvtFilter { weight: Some(w.clone()), ..SvtFilter::default() };
                    SvtEnumerator::new(&s, &flag, filter).expect("full flag").for_each(|svt| {
                        let r = rect(&reading_word_svt(svt));
                        if wanted.contains(&r) {
                            hits.push((r, nu.clone(), svt.total_excess()));
                        }
                    });
                }
            }
            hits
        })
        .collect();
    let mut e = Expansion::new(Basis::DualG, n);
    for (t, nu, ex) in found.into_iter().flatten() {
        for &(alpha, sg) in &targets[&t] {
            e.add(alpha, &nu.clone().into(), sg * sign(ex));
        }
    }
    verify("g-basis expansion", &e.to_poly(), &source.generating_function(shape, n)?)?;
    Ok(e)
}

pub fn default_degree_cap(shape: &SkewShape) -> usize {
    shape.outer().size() + 4
}

/// `ℝ = {R : rect(w(R)) ∈ 𝕋}` restricted to `|sh R| ≤ cap`, with
/// `G`-coefficient `wt(rect(w(R)))`. Equality with the generating function
/// is checked for `x`-degree at most `cap`; coefficients of the returned
/// terms are exact, and terms with `|sh R| > cap` are omitted.
#[allow(non_snake_case)]
pub fn expand_in_G(shape: &SkewShape, n: usize, source: Source, cap: usize) -> Result<Expansion, ExpansionError> {
    if cap < shape.outer().size() {
        return Err(ExpansionError::DegreeCap { cap, size: shape.outer().size() });
    }
    let tt = compatible_tableaux(shape, n, source)?;
    let targets = group_by_tableau(&tt);
    let mut by_content: BTreeMap<Composition, Vec<&Tableau>> = BTreeMap::new();
    for t in targets.keys() {
        by_content.entry(content(t)).or_default().push(t);
    }
    let found: Vec<Vec<(Tableau, Partition)>> = by_content
        .par_iter()
        .map(|(w, ts)| {
            let wanted: BTreeSet<&Tableau> = ts.iter().copied().collect();
            let letters = w.len().max(1);
            let mut hits = Vec::new();
            for k in w.size()..=cap {
                for nu in Partition::all_of(k) {
                    // Each column holds at least one counted letter.
                    if nu.get(0) > w.size() {
                        continue;
                    }
                    let s = SkewShape::straight(nu.clone());
                    let flag = full_flag(letters, s.rows());
                    let filter = RppFilter { weight: Some(w.clone()) };
                    for r in enumerate_rpp_with(&s, &flag, &filter).expect("full flag") {
                        let t = rect(&reading_word_rpp(&r));
                        if wanted.contains(&t) {
                            hits.push((t, nu.clone()));
                        }
                    }
                }
            }
            hits
        })
        .collect();
    let mut e = Expansion::new(Basis::StableG, n);
    for (t, nu) in found.into_iter().flatten() {
        for &(alpha, sg) in &targets[&t] {
            e.add(alpha, &nu.clone().into(), sg);
        }
    }
    let d = cap as u32;
    verify(
        "G-basis expansion through the degree cap",
        &e.to_poly().truncate_x_degree(d),
        &source.generating_function(shape, n)?.truncate_x_degree(d),
    )?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::LetterSet;

    fn skew(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::from_parts(o.to_vec(), i.to_vec()).unwrap()
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    #[test]
    fn reading_words() {
        let s = SetValuedTableau::from_lists(
            skew(&[3, 2], &[]),
            vec![vec![vec![1], vec![1, 2], vec![2, 3]], vec![vec![2, 3], vec![4]]],
        )
        .unwrap();
        assert_eq!(reading_word_svt(&s), vec![3, 2, 4, 3, 2, 1, 1, 2]);
        let r = ReversePlanePartition::new(skew(&[3, 2], &[]), vec![vec![1, 2, 3], vec![1, 3]]).unwrap();
        assert_eq!(reading_word_rpp(&r), vec![3, 1, 2, 3]);
        assert_eq!(row_reading_rpp(&r), (vec![1, 3, 2, 3], vec![2, 2, 1, 1]));
    }

    #[test]
    fn ssyt_reading_word_rectifies_to_itself() {
        for t in Tableau::all(&Partition::new(vec![3, 2, 1]).unwrap(), 3) {
            assert_eq!(rect(&reading_word_svt(&t.to_svt())), t);
        }
    }

    #[test]
    fn small_generating_functions() {
        let one = Partition::new(vec![1]).unwrap();
        assert_eq!(schur_poly(&one, 2), &Poly::x(1) + &Poly::x(2));
        assert_eq!(stable_G_n(&one, 2), &(&Poly::x(1) + &Poly::x(2)) - &Poly::x_power(&[1, 1]));
        let single = skew(&[1], &[]);
        let g = grothendieck_flagged(&single, &Flag::new(vec![1]).unwrap()).unwrap();
        assert_eq!(g, Poly::x(1));
        let d = dual_g_flagged(&single, &Flag::new(vec![3]).unwrap()).unwrap();
        assert_eq!(d, &(&Poly::x(1) + &Poly::x(2)) + &Poly::x(3));
    }

    #[test]
    fn flagged_key_expansion_1_3_3() {
        let shape = skew(&[2, 2, 0], &[1, 0, 0]);
        let flag = Flag::new(vec![1, 3, 3]).unwrap();
        let e = key_expansion_G(&shape, &flag, 3).unwrap();
        assert_eq!(e.to_string(), "κ_(1,0,2) - t2*κ_(2,0,2) - t2*κ_(1,1,2) + t2^2*κ_(2,1,2)");
        assert_eq!(
            e.to_latex(),
            "\\kappa_{(1,0,2)} - t_{2} \\kappa_{(2,0,2)} - t_{2} \\kappa_{(1,1,2)} + t_{2}^{2} \\kappa_{(2,1,2)}"
        );
        let j = serde_json::to_string(&e.to_json()).unwrap();
        let back: ExpansionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Expansion::from_json(&back), e);
    }

    #[test]
    fn uncrowding_class_of_sample() {
        let shape = skew(&[4, 3, 2], &[2, 1, 0]);
        let flag = Flag::new(vec![2, 3, 4]).unwrap();
        let c = classify_svt(&shape, &flag, 4).unwrap();
        let cell = |v: &[u32]| v.iter().copied().collect::<LetterSet>();
        let t = SetValuedTableau::new(
            shape.clone(),
            vec![vec![cell(&[1]), cell(&[1, 2])], vec![cell(&[1, 2]), cell(&[2, 3])], vec![cell(&[1]), cell(&[3])]],
        )
        .unwrap();
        let groups = c.by_recording();
        let (_, classes) = groups.iter().find(|(_, cl)| cl.iter().any(|k| k.members.contains(&t))).unwrap();
        assert_eq!(classes.iter().map(|k| k.members.len()).sum::<usize>(), 3);
        let sum: Poly = classes.iter().map(|k| k.character(4)).sum();
        assert_eq!(sum, &key_polynomial(&comp(&[3, 4, 2])) + &key_polynomial(&comp(&[3, 3, 3])));
        let k = classes[0];
        assert_eq!(k.key.shape, skew(&[4, 4, 3, 1], &[2, 1, 0, 0]));
        assert_eq!(k.evolved_flag, Flag::new(vec![2, 2, 3, 3]).unwrap());
        let s = flagged_schur(&k.key.shape, &k.evolved_flag).unwrap();
        let rest = &s - &sum;
        assert_eq!(rest, &key_polynomial(&comp(&[2, 4, 3])) + &key_polynomial(&comp(&[4, 4, 1])));
    }

    #[test]
    fn dual_expansion_of_3_2_over_1() {
        let shape = skew(&[3, 2, 0], &[1, 0, 0]);
        let classes = classify_rpp(&shape, &Flag::full(3, 3), 3).unwrap();
        let mut seen: Vec<(Vec<Vec<u32>>, Composition)> =
            classes.iter().map(|c| (c.recording.rows().to_vec(), c.ceq.clone())).collect();
        seen.sort();
        assert_eq!(
            seen,
            vec![
                (vec![vec![1, 1], vec![2, 2]], comp(&[0, 0, 0])),
                (vec![vec![1, 1, 2], vec![2]], comp(&[0, 0, 0])),
                (vec![vec![1, 2, 2]], comp(&[1, 0, 0])),
            ]
        );
        let e = expand_in_g(&shape, 3, Source::Dual).unwrap();
        assert_eq!(e.to_string(), "g_(3,1,0) - g_(3,0,0) + g_(2,2,0) - g_(2,1,0) + t1*g_(3,0,0)");
    }

    #[test]
    fn grothendieck_expansion_of_2_2_over_1() {
        let shape = skew(&[2, 2], &[1]);
        let e = expand_in_g(&shape, 2, Source::Grothendieck).unwrap();
        assert_eq!(e.to_string(), "g_(2,1) - g_(2,0) - t2*g_(2,2) + t2*g_(2,1)");
        expand_in_G(&shape, 2, Source::Grothendieck, 6).unwrap();
    }

    #[test]
    fn empty_shape() {
        let shape = SkewShape::empty();
        for src in [Source::Grothendieck, Source::Dual] {
            assert_eq!(expand_in_g(&shape, 2, src).unwrap().to_string(), "1");
            assert_eq!(expand_in_G(&shape, 2, src, 4).unwrap().to_string(), "1");
        }
    }
}
