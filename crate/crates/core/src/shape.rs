//! Partitions, compositions, skew shapes, flags and the `*` composition of
//! skew shapes.
//!
//! Rows and columns are 0-based throughout the Rust API. Serialized forms
//! (JSON, DOT labels) use 1-based coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("{0:?} is not weakly decreasing")]
    NotPartition(Vec<usize>),
    #[error("inner partition {inner} is not contained in outer partition {outer}")]
    NotContained { outer: Partition, inner: Partition },
    #[error("flag {0:?} must be weakly increasing with positive entries")]
    BadFlag(Vec<usize>),
    #[error("flag of length {flag} is shorter than the {rows} rows of the shape")]
    FlagTooShort { flag: usize, rows: usize },
}

fn trim(v: &[usize]) -> &[usize] {
    let end = v.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    &v[..end]
}

fn fmt_tuple(v: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

// Equality, hashing and ordering ignore trailing zeros.
macro_rules! trimmed_identity {
    ($t:ty) => {
        impl PartialEq for $t {
            fn eq(&self, other: &Self) -> bool {
                trim(&self.0) == trim(&other.0)
            }
        }
        impl Eq for $t {}
        impl Hash for $t {
            fn hash<H: Hasher>(&self, state: &mut H) {
                trim(&self.0).hash(state)
            }
        }
        impl PartialOrd for $t {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for $t {
            fn cmp(&self, other: &Self) -> Ordering {
                let n = self.0.len().max(other.0.len());
                (0..n).map(|i| self.get(i)).cmp((0..n).map(|i| other.get(i)))
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_tuple(&self.0, f)
            }
        }
    };
}

/// A weakly decreasing sequence of non-negative integers.
#[derive(Clone, Debug, Default)]
pub struct Partition(Vec<usize>);

trimmed_identity!(Partition);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Stored parts, trailing zeros included.
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Nonzero parts.
    pub fn nonzero(&self) -> &[usize] {
        trim(&self.0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        trim(&self.0).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.get(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// `other ⊆ self` componentwise.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.0.len()).all(|i| other.get(i) <= self.get(i))
    }

    /// Copy padded with zeros (or truncated of zeros) to exactly `n` parts
    /// when possible.
    pub fn padded(&self, n: usize) -> Partition {
        let mut v: Vec<usize> = trim(&self.0).to_vec();
        v.resize(n.max(v.len()), 0);
        Partition(v)
    }

    pub fn to_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `n`.
    pub fn all_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of).collect()
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let parts = self.nonzero().to_vec();
        let mut out = Vec::new();
        let mut cur = vec![0; parts.len()];
        fn rec(i: usize, bound: usize, parts: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == parts.len() {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in 0..=bound.min(parts[i]) {
                cur[i] = p;
                rec(i + 1, p, parts, cur, out);
            }
        }
        rec(0, usize::MAX, &parts, &mut cur, &mut out);
        out
    }
}

/// A finite sequence of non-negative integers: weights, excesses, key
/// indices.
#[derive(Clone, Debug, Default)]
pub struct Composition(Vec<usize>);

trimmed_identity!(Composition);

impl Composition {
    pub fn new(entries: Vec<usize>) -> Self {
        Composition(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Composition(vec![0; n])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Stored length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entries sorted decreasingly.
    pub fn dagger(&self) -> Partition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn padded(&self, n: usize) -> Composition {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        Composition(v)
    }

    /// Swap entries `i` and `i+1` (1-based `i`): the action of `s_i`.
    pub fn reflect(&self, i: usize) -> Composition {
        let mut v = self.0.clone();
        let n = v.len().max(i + 1);
        v.resize(n, 0);
        v.swap(i - 1, i);
        Composition(v)
    }

    /// Left action of `s_{w_1} ⋯ s_{w_p}`; the rightmost reflection acts
    /// first.
    pub fn act(&self, word: &[usize]) -> Composition {
        word.iter().rev().fold(self.clone(), |a, &i| a.reflect(i))
    }

    /// Distinct rearrangements of the stored entries in lexicographic order.
    pub fn rearrangements(&self) -> Vec<Composition> {
        let mut v = self.0.clone();
        v.sort_unstable();
        let mut out = vec![Composition(v.clone())];
        // Standard next-permutation walk.
        loop {
            let n = v.len();
            let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
            v.swap(i - 1, j);
            v[i..].reverse();
            out.push(Composition(v.clone()));
        }
        out
    }

    pub fn add(&self, other: &Composition) -> Composition {
        let n = self.0.len().max(other.0.len());
        Composition((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }
}

impl From<Vec<usize>> for Composition {
    fn from(v: Vec<usize>) -> Self {
        Composition(v)
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition(p.0)
    }
}

/// A skew shape `outer/inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, ShapeError> {
        if !outer.contains(&inner) {
            return Err(ShapeError::NotContained { outer, inner });
        }
        let rows = outer.len();
        Ok(SkewShape { inner: inner.padded(rows), outer: outer.padded(rows) })
    }

    pub fn from_parts(outer: Vec<usize>, inner: Vec<usize>) -> Result<Self, ShapeError> {
        SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
    }

    pub fn straight(shape: Partition) -> Self {
        SkewShape::new(shape, Partition::empty()).expect("empty inner shape")
    }

    pub fn empty() -> Self {
        SkewShape::straight(Partition::empty())
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Number of rows: the length of the outer partition.
    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// First column of row `r`.
    pub fn row_start(&self, r: usize) -> usize {
        self.inner.get(r)
    }

    /// One past the last column of row `r`.
    pub fn row_end(&self, r: usize) -> usize {
        self.outer.get(r)
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.row_end(r) - self.row_start(r)
    }

    pub fn row_lengths(&self) -> Composition {
        Composition((0..self.rows()).map(|r| self.row_len(r)).collect())
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.row_start(r) <= c && c < self.row_end(r)
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows()).flat_map(move |r| (self.row_start(r)..self.row_end(r)).map(move |c| (r, c)))
    }

    /// Maximal edge-connected sets of boxes, top component first.
    pub fn components(&self) -> Vec<Component> {
        let mut out: Vec<Component> = Vec::new();
        let mut r = 0;
        while r < self.rows() {
            if self.row_len(r) == 0 {
                r += 1;
                continue;
            }
            // Consecutive nonempty rows sharing a column belong together.
            let first = r;
            while r + 1 < self.rows() && self.row_len(r + 1) > 0 && self.row_end(r + 1) > self.row_start(r) {
                r += 1;
            }
            let last = r;
            let col_offset = self.row_start(last);
            let outer = (first..=last).map(|i| self.row_end(i) - col_offset).collect();
            let inner = (first..=last).map(|i| self.row_start(i) - col_offset).collect();
            out.push(Component {
                row_offset: first,
                col_offset,
                shape: SkewShape::from_parts(outer, inner).expect("component of a skew shape"),
            });
            r += 1;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Drop empty rows at the top and shift left so the bottom row starts
    /// in column 0. Only meaningful for shapes without interior gaps.
    fn normalized(&self) -> SkewShape {
        let first = (0..self.rows()).find(|&r| self.row_len(r) > 0);
        let Some(first) = first else {
            return SkewShape::empty();
        };
        let last = self.rows() - 1;
        let shift = (first..=last).map(|r| self.row_start(r)).min().unwrap();
        SkewShape::from_parts(
            (first..=last).map(|r| self.row_end(r) - shift).collect(),
            (first..=last).map(|r| self.row_start(r) - shift).collect(),
        )
        .expect("normalized shape")
    }

    /// The shape with `upper` placed strictly above and strictly to the
    /// right of `lower`, sharing no rows or columns and leaving no gaps.
    pub fn star(upper: &SkewShape, lower: &SkewShape) -> SkewShape {
        let u = upper.normalized();
        let l = lower.normalized();
        if l.is_empty() {
            return u;
        }
        if u.is_empty() {
            return l;
        }
        let w = l.row_end(0);
        let rows_u = u.rows();
        let outer = (0..rows_u).map(|r| u.row_end(r) + w).chain((0..l.rows()).map(|r| l.row_end(r))).collect();
        let inner = (0..rows_u).map(|r| u.row_start(r) + w).chain((0..l.rows()).map(|r| l.row_start(r))).collect();
        SkewShape::from_parts(outer, inner).expect("star composite")
    }

    /// `θ_1 * θ_2 * ⋯` over the given shapes, first one on top.
    pub fn star_all<'a>(shapes: impl IntoIterator<Item = &'a SkewShape>) -> SkewShape {
        let v: Vec<&SkewShape> = shapes.into_iter().collect();
        v.iter().rev().fold(SkewShape::empty(), |acc, s| SkewShape::star(s, &acc))
    }

    /// The composite of the connected components of `self`.
    pub fn star_of_components(&self) -> SkewShape {
        let comps = self.components();
        SkewShape::star_all(comps.iter().map(|c| &c.shape))
    }

    /// All skew shapes `λ/μ` with `|λ| ≤ n`, each listed once.
    pub fn all_up_to(n: usize) -> Vec<SkewShape> {
        let mut out = Vec::new();
        for lambda in Partition::all_up_to(n) {
            for mu in lambda.subpartitions() {
                out.push(SkewShape::new(lambda.clone(), mu).unwrap());
            }
        }
        out
    }

    /// Every nonempty skew shape with at most `max_boxes` boxes, up to
    /// translation and the width of gaps between components: no empty
    /// rows, the bottom row starts in column 0, and each component starts
    /// in the column where the one below it ends.
    pub fn all_compact(max_boxes: usize) -> Vec<SkewShape> {
        // Rows are built bottom-up as intervals [start, end).
        fn rec(rows: &mut Vec<(usize, usize)>, left: usize, out: &mut Vec<SkewShape>) {
            let &(s0, e0) = rows.last().unwrap();
            let outer = rows.iter().rev().map(|r| r.1).collect();
            let inner = rows.iter().rev().map(|r| r.0).collect();
            out.push(SkewShape::from_parts(outer, inner).expect("compact shape"));
            for s in s0..=e0 {
                for len in 1..=left {
                    let e = s + len;
                    if e < e0 {
                        continue;
                    }
                    rows.push((s, e));
                    rec(rows, left - len, out);
                    rows.pop();
                }
            }
        }
        let mut out = Vec::new();
        for len in 1..=max_boxes {
            rec(&mut vec![(0, len)], max_boxes - len, &mut out);
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// A connected piece of a skew shape, normalized, with its position in the
/// ambient shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub row_offset: usize,
    pub col_offset: usize,
    pub shape: SkewShape,
}

/// Weakly increasing positive row bounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag(Vec<usize>);

impl Flag {
    pub fn new(bounds: Vec<usize>) -> Result<Self, ShapeError> {
        if bounds.contains(&0) || bounds.windows(2).any(|w| w[0] > w[1]) {
            return Err(ShapeError::BadFlag(bounds));
        }
        Ok(Flag(bounds))
    }

    /// `(n, n, …, n)` with `rows` entries.
    pub fn full(n: usize, rows: usize) -> Self {
        Flag(vec![n.max(1); rows])
    }

    /// `(1, 2, …, n)`.
    pub fn standard(n: usize) -> Self {
        Flag((1..=n).collect())
    }

    pub fn bounds(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bound of row `r` (0-based).
    pub fn get(&self, r: usize) -> usize {
        self.0[r]
    }

    pub fn max(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn check_rows(&self, rows: usize) -> Result<(), ShapeError> {
        if self.0.len() < rows {
            return Err(ShapeError::FlagTooShort { flag: self.0.len(), rows });
        }
        Ok(())
    }

    /// Entries at the given rows, in order.
    pub fn restrict(&self, rows: std::ops::Range<usize>) -> Flag {
        Flag(self.0[rows].to_vec())
    }

    pub fn concat(flags: &[Flag]) -> Flag {
        Flag(flags.iter().flat_map(|f| f.0.iter().copied()).collect())
    }

    pub(crate) fn bounds_mut(&mut self) -> &mut Vec<usize> {
        &mut self.0
    }

    /// All flags of the given length with entries in `1..=n`.
    pub fn all(len: usize, n: usize) -> Vec<Flag> {
        fn rec(len: usize, lo: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Flag>) {
            if cur.len() == len {
                out.push(Flag(cur.clone()));
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(len, v, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, 1, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.0, f)
    }
}
