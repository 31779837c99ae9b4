//! Set-valued tableaux, semistandard tableaux of straight shape, reverse
//! plane partitions and recording tableaux, with exhaustive enumerators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shape::{Composition, Flag, Partition, ShapeError, SkewShape};

#[derive(Debug, Error)]
pub enum TableauError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("row {row} has {found} cells but the shape has {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("box ({row},{col}) breaks the {rule} condition")]
    Order { row: usize, col: usize, rule: &'static str },
    #[error("box ({row},{col}) holds an empty set or a letter outside 1..=31")]
    BadCell { row: usize, col: usize },
    #[error("box ({row},{col}) is not in the shape")]
    OutsideShape { row: usize, col: usize },
    #[error("box ({row},{col}) is missing")]
    MissingCell { row: usize, col: usize },
    #[error("malformed tableau JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A finite set of letters in `1..=31`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(u32);

impl LetterSet {
    pub const MAX_LETTER: u32 = 31;

    pub fn empty() -> Self {
        LetterSet(0)
    }

    pub fn single(x: u32) -> Self {
        debug_assert!((1..=Self::MAX_LETTER).contains(&x));
        LetterSet(1 << x)
    }

    pub fn from_bits(bits: u32) -> Self {
        LetterSet(bits & !1)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn least(self) -> u32 {
        self.0.trailing_zeros()
    }

    pub fn greatest(self) -> u32 {
        31 - self.0.leading_zeros()
    }

    pub fn contains(self, x: u32) -> bool {
        x <= Self::MAX_LETTER && self.0 & (1 << x) != 0
    }

    pub fn with(self, x: u32) -> Self {
        LetterSet(self.0 | (1 << x))
    }

    pub fn without(self, x: u32) -> Self {
        LetterSet(self.0 & !(1 << x))
    }

    /// Letters in increasing order.
    pub fn iter(self) -> Letters {
        Letters(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }
}

/// Iterator over the letters of a [`LetterSet`].
#[derive(Clone, Debug)]
pub struct Letters(u32);

impl Iterator for Letters {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x)
    }
}

impl DoubleEndedIterator for Letters {
    fn next_back(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let x = 31 - self.0.leading_zeros();
        self.0 &= !(1 << x);
        Some(x)
    }
}

impl FromIterator<u32> for LetterSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        iter.into_iter().fold(LetterSet::empty(), LetterSet::with)
    }
}

// Lexicographic on the increasing list of letters.
impl Ord for LetterSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LetterSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// The serialized form shared by every tableau type: 1-based rows and
/// columns, one entry list per box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub cells: Vec<(usize, usize, Vec<u32>)>,
}

/// Entry lists by row, left to right.
type Grid = Vec<Vec<Vec<u32>>>;

impl TableauJson {
    fn shape(&self) -> Result<SkewShape, TableauError> {
        Ok(SkewShape::from_parts(self.outer.clone(), self.inner.clone())?)
    }

    fn grid(&self) -> Result<(SkewShape, Grid), TableauError> {
        let shape = self.shape()?;
        let mut rows: Vec<Vec<Option<Vec<u32>>>> = (0..shape.rows()).map(|r| vec![None; shape.row_len(r)]).collect();
        for (row, col, entries) in &self.cells {
            let (r, c) = (row.wrapping_sub(1), col.wrapping_sub(1));
            if !shape.contains(r, c) {
                return Err(TableauError::OutsideShape { row: *row, col: *col });
            }
            rows[r][c - shape.row_start(r)] = Some(entries.clone());
        }
        let mut out = Vec::with_capacity(rows.len());
        for (r, row) in rows.into_iter().enumerate() {
            let mut v = Vec::with_capacity(row.len());
            for (k, cell) in row.into_iter().enumerate() {
                let cell = cell.ok_or(TableauError::MissingCell { row: r + 1, col: shape.row_start(r) + k + 1 })?;
                v.push(cell);
            }
            out.push(v);
        }
        Ok((shape, out))
    }
}

fn shape_json(shape: &SkewShape) -> (Vec<usize>, Vec<usize>) {
    (shape.outer().nonzero().to_vec(), shape.inner().padded(shape.rows()).parts().to_vec())
}

/// A set-valued tableau on a skew shape.
///
/// `rows[r][k]` is the box `(r, inner_r + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetValuedTableau {
    shape: SkewShape,
    rows: Vec<Vec<LetterSet>>,
}

impl SetValuedTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<LetterSet>>) -> Result<Self, TableauError> {
        let t = SetValuedTableau { shape, rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(shape: SkewShape, rows: Vec<Vec<LetterSet>>) -> Self {
        SetValuedTableau { shape, rows }
    }

    /// Build from rows of entry lists.
    pub fn from_lists(shape: SkewShape, rows: Vec<Vec<Vec<u32>>>) -> Result<Self, TableauError> {
        let rows = rows.into_iter().map(|row| row.into_iter().map(|c| c.into_iter().collect()).collect()).collect();
        SetValuedTableau::new(shape, rows)
    }

    pub fn empty(shape: SkewShape) -> Result<Self, TableauError> {
        if !shape.is_empty() {
            return Err(TableauError::MissingCell { row: 1, col: 1 });
        }
        let rows = vec![Vec::new(); shape.rows()];
        Ok(SetValuedTableau { shape, rows })
    }

    pub fn validate(&self) -> Result<(), TableauError> {
        let s = &self.shape;
        if self.rows.len() != s.rows() {
            return Err(TableauError::RowLength { row: self.rows.len(), expected: s.rows(), found: self.rows.len() });
        }
        for r in 0..s.rows() {
            if self.rows[r].len() != s.row_len(r) {
                return Err(TableauError::RowLength { row: r + 1, expected: s.row_len(r), found: self.rows[r].len() });
            }
            for c in s.row_start(r)..s.row_end(r) {
                let cell = self.cell(r, c).unwrap();
                if cell.is_empty() || cell.contains(0) {
                    return Err(TableauError::BadCell { row: r + 1, col: c + 1 });
                }
                if let Some(left) = self.cell(r, c.wrapping_sub(1)) {
                    if left.greatest() > cell.least() {
                        return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "row" });
                    }
                }
                if let Some(above) = self.cell(r.wrapping_sub(1), c) {
                    if above.greatest() >= cell.least() {
                        return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "column" });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<LetterSet>] {
        &self.rows
    }

    pub fn cell(&self, r: usize, c: usize) -> Option<LetterSet> {
        if r >= self.shape.rows() || !self.shape.contains(r, c) {
            return None;
        }
        Some(self.rows[r][c - self.shape.row_start(r)])
    }

    pub(crate) fn set_cell(&mut self, r: usize, c: usize, v: LetterSet) {
        let k = c - self.shape.row_start(r);
        self.rows[r][k] = v;
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), LetterSet)> + '_ {
        self.shape.boxes().map(|(r, c)| ((r, c), self.cell(r, c).unwrap()))
    }

    pub fn max_letter(&self) -> u32 {
        self.cells().map(|(_, s)| s.greatest()).max().unwrap_or(0)
    }

    /// Number of occurrences of each letter `1..=n`.
    pub fn weight(&self, n: usize) -> Composition {
        let mut w = vec![0; n];
        for (_, s) in self.cells() {
            for x in s.iter() {
                w[x as usize - 1] += 1;
            }
        }
        Composition::new(w)
    }

    /// Entries of row `i` minus boxes of row `i`.
    pub fn excess(&self) -> Composition {
        Composition::new(self.rows.iter().map(|row| row.iter().map(|s| s.len() - 1).sum()).collect())
    }

    pub fn total_excess(&self) -> usize {
        self.cells().map(|(_, s)| s.len() - 1).sum()
    }

    pub fn entry_count(&self) -> usize {
        self.cells().map(|(_, s)| s.len()).sum()
    }

    pub fn is_ssyt(&self) -> bool {
        self.cells().all(|(_, s)| s.len() == 1)
    }

    pub fn respects_flag(&self, flag: &Flag) -> bool {
        flag.len() >= self.shape.rows()
            && self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|s| s.greatest() as usize <= flag.get(r)))
    }

    /// Row reading word of a single-valued tableau: bottom row first, each
    /// row left to right.
    pub fn row_reading_word(&self) -> Vec<u32> {
        debug_assert!(self.is_ssyt());
        self.rows.iter().rev().flat_map(|row| row.iter().map(|s| s.least())).collect()
    }

    /// Straight-shape SSYT view, when applicable.
    pub fn to_tableau(&self) -> Option<Tableau> {
        if !self.shape.is_straight() || !self.is_ssyt() {
            return None;
        }
        Some(Tableau::new_unchecked(self.rows.iter().map(|row| row.iter().map(|s| s.least()).collect()).collect()))
    }

    pub fn to_json(&self) -> TableauJson {
        let (outer, inner) = shape_json(&self.shape);
        TableauJson { outer, inner, cells: self.cells().map(|((r, c), s)| (r + 1, c + 1, s.to_vec())).collect() }
    }

    pub fn from_json(j: &TableauJson) -> Result<Self, TableauError> {
        let (shape, rows) = j.grid()?;
        if rows.iter().flatten().flatten().any(|&x| x == 0 || x > LetterSet::MAX_LETTER) {
            return Err(TableauError::BadCell { row: 0, col: 0 });
        }
        SetValuedTableau::from_lists(shape, rows)
    }
}

impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, " / ")?;
            }
            for _ in 0..self.shape.row_start(r) {
                write!(f, "_")?;
            }
            for s in row {
                if s.len() == 1 {
                    write!(f, "{}", s.least())?;
                } else {
                    write!(f, "{s:?}")?;
                }
            }
        }
        Ok(())
    }
}

/// Optional constraints for [`SvtEnumerator`].
#[derive(Clone, Debug, Default)]
pub struct SvtFilter {
    pub excess: Option<Composition>,
    pub weight: Option<Composition>,
    pub max_entries: Option<usize>,
}

/// Backtracking enumerator of flagged set-valued tableaux, in row-major
/// lexicographic order of cell contents.
pub struct SvtEnumerator<'a> {
    shape: &'a SkewShape,
    flag: &'a Flag,
    filter: SvtFilter,
    candidates: BTreeMap<(u32, u32), Vec<LetterSet>>,
}

impl<'a> SvtEnumerator<'a> {
    pub fn new(shape: &'a SkewShape, flag: &'a Flag, filter: SvtFilter) -> Result<Self, ShapeError> {
        flag.check_rows(shape.rows())?;
        Ok(SvtEnumerator { shape, flag, filter, candidates: BTreeMap::new() })
    }

    fn candidates(&mut self, lo: u32, hi: u32) -> Vec<LetterSet> {
        self.candidates
            .entry((lo, hi))
            .or_insert_with(|| {
                let span = hi - lo + 1;
                let mut v: Vec<LetterSet> = (1..(1u32 << span)).map(|m| LetterSet::from_bits(m << lo)).collect();
                v.sort();
                v
            })
            .clone()
    }

    pub fn collect(mut self) -> Vec<SetValuedTableau> {
        let mut out = Vec::new();
        self.for_each(|t| out.push(t.clone()));
        out
    }

    /// Visit every tableau without collecting.
    pub fn for_each(&mut self, mut visit: impl FnMut(&SetValuedTableau)) {
        let shape = self.shape.clone();
        let boxes: Vec<(usize, usize)> = shape.boxes().collect();
        let rows = (0..shape.rows()).map(|r| vec![LetterSet::empty(); shape.row_len(r)]).collect();
        let mut t = SetValuedTableau::new_unchecked(shape, rows);
        let mut state = EnumState {
            row_excess: vec![0; t.shape.rows()],
            letters: vec![0; LetterSet::MAX_LETTER as usize + 1],
            entries: 0,
        };
        if t.shape.rows() > 0 && (0..t.shape.rows()).all(|r| t.shape.row_len(r) == 0) || boxes.is_empty() {
            if self.accepts_final(&t, &state) {
                visit(&t);
            }
            return;
        }
        self.rec(&boxes, 0, &mut t, &mut state, &mut visit);
    }

    fn accepts_final(&self, t: &SetValuedTableau, state: &EnumState) -> bool {
        if let Some(e) = &self.filter.excess {
            if (0..t.shape.rows().max(e.len())).any(|r| state.row_excess.get(r).copied().unwrap_or(0) != e.get(r)) {
                return false;
            }
        }
        if let Some(w) = &self.filter.weight {
            if (1..state.letters.len()).any(|x| state.letters[x] != w.get(x - 1)) {
                return false;
            }
        }
        true
    }

    fn rec(
        &mut self,
        boxes: &[(usize, usize)],
        k: usize,
        t: &mut SetValuedTableau,
        state: &mut EnumState,
        visit: &mut impl FnMut(&SetValuedTableau),
    ) {
        if k == boxes.len() {
            if self.accepts_final(t, state) {
                visit(t);
            }
            return;
        }
        let (r, c) = boxes[k];
        let mut lo = 1;
        if let Some(left) = t.cell(r, c.wrapping_sub(1)) {
            lo = lo.max(left.greatest());
        }
        if let Some(above) = t.cell(r.wrapping_sub(1), c) {
            lo = lo.max(above.greatest() + 1);
        }
        let hi = self.flag.get(r).min(LetterSet::MAX_LETTER as usize) as u32;
        if lo > hi {
            return;
        }
        let row_done = c + 1 == t.shape.row_end(r);
        for s in self.candidates(lo, hi) {
            let extra = s.len() - 1;
            if let Some(e) = &self.filter.excess {
                let used = state.row_excess[r] + extra;
                if used > e.get(r) || (row_done && used != e.get(r)) {
                    continue;
                }
            }
            if let Some(m) = self.filter.max_entries {
                if state.entries + s.len() > m {
                    continue;
                }
            }
            if let Some(w) = &self.filter.weight {
                if s.iter().any(|x| state.letters[x as usize] + 1 > w.get(x as usize - 1)) {
                    continue;
                }
            }
            state.row_excess[r] += extra;
            state.entries += s.len();
            for x in s.iter() {
                state.letters[x as usize] += 1;
            }
            t.set_cell(r, c, s);
            self.rec(boxes, k + 1, t, state, visit);
            for x in s.iter() {
                state.letters[x as usize] -= 1;
            }
            state.entries -= s.len();
            state.row_excess[r] -= extra;
        }
        t.set_cell(r, c, LetterSet::empty());
    }
}

struct EnumState {
    row_excess: Vec<usize>,
    letters: Vec<usize>,
    entries: usize,
}

/// `SVT(shape, flag)`, optionally restricted to one excess vector.
pub fn enumerate_svt(
    shape: &SkewShape,
    flag: &Flag,
    excess: Option<&Composition>,
) -> Result<Vec<SetValuedTableau>, ShapeError> {
    let filter = SvtFilter { excess: excess.cloned(), ..Default::default() };
    Ok(SvtEnumerator::new(shape, flag, filter)?.collect())
}

/// `Tab(shape, flag)`: the single-valued members of `SVT(shape, flag)`.
pub fn enumerate_ssyt(shape: &SkewShape, flag: &Flag) -> Result<Vec<SetValuedTableau>, ShapeError> {
    enumerate_svt(shape, flag, Some(&Composition::zeros(shape.rows())))
}

/// A semistandard tableau of straight shape, stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let t = Tableau::new_unchecked(rows);
        for r in 0..t.rows.len() {
            if t.rows[r].is_empty() || (r > 0 && t.rows[r].len() > t.rows[r - 1].len()) {
                return Err(TableauError::Shape(ShapeError::NotPartition(t.rows.iter().map(Vec::len).collect())));
            }
            for c in 0..t.rows[r].len() {
                let x = t.rows[r][c];
                if x == 0 || x > LetterSet::MAX_LETTER {
                    return Err(TableauError::BadCell { row: r + 1, col: c + 1 });
                }
                if c > 0 && t.rows[r][c - 1] > x {
                    return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "row" });
                }
                if r > 0 && t.rows[r - 1][c] >= x {
                    return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "column" });
                }
            }
        }
        Ok(t)
    }

    pub(crate) fn new_unchecked(mut rows: Vec<Vec<u32>>) -> Self {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Tableau { rows }
    }

    pub fn empty() -> Self {
        Tableau::default()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("tableau rows are a partition")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u32> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    /// Column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows.iter().take_while(|row| row.len() > c).map(|row| row[c]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.rows.first().map_or(0, Vec::len)).map(|c| self.column(c)).collect()
    }

    pub fn max_letter(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn weight(&self, n: usize) -> Composition {
        let mut w = vec![0; n.max(self.max_letter() as usize)];
        for &x in self.rows.iter().flatten() {
            w[x as usize - 1] += 1;
        }
        w.truncate(n.max(w.iter().rposition(|&v| v > 0).map_or(0, |p| p + 1)));
        Composition::new(w)
    }

    /// Bottom row first, each row left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Refill `shape` from a row reading word.
    pub fn from_reading_word(shape: &Partition, word: &[u32]) -> Tableau {
        let mut rows = Vec::new();
        let mut pos = word.len();
        for &len in shape.nonzero() {
            pos -= len;
            rows.push(word[pos..pos + len].to_vec());
        }
        Tableau::new_unchecked(rows)
    }

    /// `T_λ`: row `i` filled with `i`.
    pub fn highest(shape: &Partition) -> Tableau {
        Tableau::new_unchecked(shape.nonzero().iter().enumerate().map(|(i, &len)| vec![i as u32 + 1; len]).collect())
    }

    /// `key(α)`: the SSYT of shape `α†` and weight `α`; column `j` holds the
    /// indices `i` with `α_i > j`.
    pub fn key(alpha: &Composition) -> Tableau {
        let width = alpha.entries().iter().copied().max().unwrap_or(0);
        let cols: Vec<Vec<u32>> = (0..width)
            .map(|j| (0..alpha.len()).filter(|&i| alpha.get(i) > j).map(|i| i as u32 + 1).collect())
            .collect();
        Tableau::from_columns(&cols)
    }

    pub fn from_columns(cols: &[Vec<u32>]) -> Tableau {
        let height = cols.first().map_or(0, Vec::len);
        Tableau::new_unchecked(
            (0..height).map(|r| cols.iter().take_while(|c| c.len() > r).map(|c| c[r]).collect()).collect(),
        )
    }

    pub fn to_svt(&self) -> SetValuedTableau {
        let shape = SkewShape::straight(self.shape());
        SetValuedTableau::new_unchecked(
            shape,
            self.rows.iter().map(|row| row.iter().map(|&x| LetterSet::single(x)).collect()).collect(),
        )
    }

    pub fn to_json(&self) -> TableauJson {
        self.to_svt().to_json()
    }

    pub fn from_json(j: &TableauJson) -> Result<Self, TableauError> {
        let (shape, rows) = j.grid()?;
        if !shape.is_straight() {
            return Err(TableauError::Shape(ShapeError::NotContained {
                outer: shape.outer().clone(),
                inner: shape.inner().clone(),
            }));
        }
        let mut out = Vec::new();
        for (r, row) in rows.into_iter().enumerate() {
            let mut v = Vec::new();
            for (c, cell) in row.into_iter().enumerate() {
                if cell.len() != 1 {
                    return Err(TableauError::BadCell { row: r + 1, col: c + 1 });
                }
                v.push(cell[0]);
            }
            out.push(v);
        }
        Tableau::new(out)
    }

    /// All SSYT of straight shape with letters `≤ n`.
    pub fn all(shape: &Partition, n: usize) -> Vec<Tableau> {
        let s = SkewShape::straight(shape.clone());
        let flag = Flag::full(n, s.rows());
        enumerate_ssyt(&s, &flag).expect("full flag").iter().filter_map(|t| t.to_tableau()).collect()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, "/")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// A reverse plane partition: weakly increasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReversePlanePartition {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
}

impl ReversePlanePartition {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let t = ReversePlanePartition { shape, rows };
        let s = &t.shape;
        for r in 0..s.rows() {
            if t.rows.get(r).map_or(0, Vec::len) != s.row_len(r) {
                return Err(TableauError::RowLength {
                    row: r + 1,
                    expected: s.row_len(r),
                    found: t.rows.get(r).map_or(0, Vec::len),
                });
            }
            for c in s.row_start(r)..s.row_end(r) {
                let x = t.get(r, c).unwrap();
                if x == 0 {
                    return Err(TableauError::BadCell { row: r + 1, col: c + 1 });
                }
                if t.get(r, c.wrapping_sub(1)).is_some_and(|l| l > x) {
                    return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "row" });
                }
                if t.get(r.wrapping_sub(1), c).is_some_and(|a| a > x) {
                    return Err(TableauError::Order { row: r + 1, col: c + 1, rule: "column" });
                }
            }
        }
        Ok(t)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u32> {
        if r >= self.shape.rows() || !self.shape.contains(r, c) {
            return None;
        }
        Some(self.rows[r][c - self.shape.row_start(r)])
    }

    /// Whether the entry at `(r, c)` equals the entry directly below it.
    pub fn equals_below(&self, r: usize, c: usize) -> bool {
        self.get(r + 1, c).is_some_and(|b| Some(b) == self.get(r, c))
    }

    /// `r_i` = number of columns containing `i`.
    pub fn weight(&self, n: usize) -> Composition {
        let mut w = vec![0; n];
        for (r, c) in self.shape.boxes() {
            if !self.equals_below(r, c) {
                w[self.get(r, c).unwrap() as usize - 1] += 1;
            }
        }
        Composition::new(w)
    }

    /// `ceq_i` = boxes of row `i` equal to the box directly below.
    pub fn ceq(&self) -> Composition {
        Composition::new(
            (0..self.shape.rows())
                .map(|r| (self.shape.row_start(r)..self.shape.row_end(r)).filter(|&c| self.equals_below(r, c)).count())
                .collect(),
        )
    }

    pub fn respects_flag(&self, flag: &Flag) -> bool {
        flag.len() >= self.shape.rows()
            && self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|&x| x as usize <= flag.get(r)))
    }

    pub fn to_json(&self) -> TableauJson {
        let (outer, inner) = shape_json(&self.shape);
        TableauJson {
            outer,
            inner,
            cells: self.shape.boxes().map(|(r, c)| (r + 1, c + 1, vec![self.get(r, c).unwrap()])).collect(),
        }
    }

    pub fn from_json(j: &TableauJson) -> Result<Self, TableauError> {
        let (shape, rows) = j.grid()?;
        let mut out = Vec::new();
        for (r, row) in rows.into_iter().enumerate() {
            let mut v = Vec::new();
            for (k, cell) in row.into_iter().enumerate() {
                if cell.len() != 1 {
                    return Err(TableauError::BadCell { row: r + 1, col: shape.row_start(r) + k + 1 });
                }
                v.push(cell[0]);
            }
            out.push(v);
        }
        ReversePlanePartition::new(shape, out)
    }
}

impl fmt::Display for ReversePlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, "/")?;
            }
            for _ in 0..self.shape.row_start(r) {
                write!(f, "_")?;
            }
            for x in row {
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Constraints for [`enumerate_rpp_with`].
#[derive(Clone, Debug, Default)]
pub struct RppFilter {
    /// Required column-count weight.
    pub weight: Option<Composition>,
}

/// `RPP(shape, flag)`.
pub fn enumerate_rpp(shape: &SkewShape, flag: &Flag) -> Result<Vec<ReversePlanePartition>, ShapeError> {
    enumerate_rpp_with(shape, flag, &RppFilter::default())
}

pub fn enumerate_rpp_with(
    shape: &SkewShape,
    flag: &Flag,
    filter: &RppFilter,
) -> Result<Vec<ReversePlanePartition>, ShapeError> {
    flag.check_rows(shape.rows())?;
    let boxes: Vec<(usize, usize)> = shape.boxes().collect();
    let mut t = ReversePlanePartition {
        shape: shape.clone(),
        rows: (0..shape.rows()).map(|r| vec![0; shape.row_len(r)]).collect(),
    };
    let mut out = Vec::new();
    // Boxes are filled bottom-up so "equal to the box below" is known when
    // a box is placed; the output is sorted afterwards.
    let order: Vec<(usize, usize)> = boxes.iter().rev().copied().collect();
    let mut count = vec![0usize; LetterSet::MAX_LETTER as usize + 1];
    fn rec(
        order: &[(usize, usize)],
        k: usize,
        t: &mut ReversePlanePartition,
        flag: &Flag,
        filter: &RppFilter,
        count: &mut Vec<usize>,
        out: &mut Vec<ReversePlanePartition>,
    ) {
        if k == order.len() {
            if let Some(w) = &filter.weight {
                if (1..count.len()).any(|x| count[x] != w.get(x - 1)) {
                    return;
                }
            }
            out.push(t.clone());
            return;
        }
        let (r, c) = order[k];
        let set = |t: &mut ReversePlanePartition, v: u32| {
            let s = t.shape.row_start(r);
            t.rows[r][c - s] = v;
        };
        let mut hi = flag.get(r) as u32;
        if let Some(x) = t.get(r, c + 1) {
            hi = hi.min(x);
        }
        if let Some(x) = t.get(r + 1, c) {
            hi = hi.min(x);
        }
        for v in 1..=hi {
            let fresh = t.get(r + 1, c) != Some(v);
            if fresh {
                if let Some(w) = &filter.weight {
                    if count[v as usize] + 1 > w.get(v as usize - 1) {
                        continue;
                    }
                }
                count[v as usize] += 1;
            }
            set(t, v);
            rec(order, k + 1, t, flag, filter, count, out);
            if fresh {
                count[v as usize] -= 1;
            }
        }
        set(t, 0);
    }
    rec(&order, 0, &mut t, flag, filter, &mut count, &mut out);
    out.sort();
    Ok(out)
}

/// An integer filling of a set of boxes used to record uncrowding: `T′`,
/// `T″`, `Q″`. Keys are 0-based `(row, col)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordingTableau {
    cells: BTreeMap<(usize, usize), u32>,
}

impl RecordingTableau {
    pub fn new() -> Self {
        RecordingTableau::default()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = ((usize, usize), u32)>) -> Self {
        RecordingTableau { cells: cells.into_iter().collect() }
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u32> {
        self.cells.get(&(r, c)).copied()
    }

    pub fn insert(&mut self, r: usize, c: usize, v: u32) {
        self.cells.insert((r, c), v);
    }

    pub fn remove(&mut self, r: usize, c: usize) -> Option<u32> {
        self.cells.remove(&(r, c))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_label(&self) -> u32 {
        self.cells.values().copied().max().unwrap_or(0)
    }

    pub fn weight(&self, n: usize) -> Composition {
        let mut w = vec![0; n.max(self.max_label() as usize)];
        for &v in self.cells.values() {
            w[v as usize - 1] += 1;
        }
        Composition::new(w)
    }

    /// Rows strictly decrease left to right, columns weakly decrease top to
    /// bottom.
    pub fn is_reverse_row_strict(&self) -> bool {
        self.cells
            .iter()
            .all(|(&(r, c), &v)| self.get(r, c + 1).is_none_or(|x| x < v) && self.get(r + 1, c).is_none_or(|x| x <= v))
    }

    /// Every label in row `r` (0-based) is `< r+1` (strict) or `≤ r+1`.
    pub fn is_row_bounded(&self, strict: bool) -> bool {
        self.cells.iter().all(|(&(r, _), &v)| if strict { (v as usize) < r + 1 } else { v as usize <= r + 1 })
    }

    /// Shift every box by the given offsets.
    pub fn shifted(&self, dr: usize, dc: usize) -> RecordingTableau {
        RecordingTableau { cells: self.cells.iter().map(|(&(r, c), &v)| ((r + dr, c + dc), v)).collect() }
    }

    pub fn extend(&mut self, other: &RecordingTableau) {
        self.cells.extend(other.cells.iter().map(|(&k, &v)| (k, v)));
    }

    /// Serialized over the region `outer/inner` that the boxes fill.
    pub fn to_json(&self, outer: &Partition, inner: &Partition) -> TableauJson {
        let rows = outer.len();
        TableauJson {
            outer: outer.nonzero().to_vec(),
            inner: inner.padded(rows).parts()[..rows.min(inner.padded(rows).parts().len())].to_vec(),
            cells: self.cells.iter().map(|(&(r, c), &v)| (r + 1, c + 1, vec![v])).collect(),
        }
    }

    pub fn from_json(j: &TableauJson) -> Result<Self, TableauError> {
        let mut out = RecordingTableau::new();
        for (row, col, v) in &j.cells {
            if *row == 0 || *col == 0 || v.len() != 1 || v[0] == 0 {
                return Err(TableauError::BadCell { row: *row, col: *col });
            }
            out.insert(row - 1, col - 1, v[0]);
        }
        Ok(out)
    }
}

impl fmt::Display for RecordingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cells.iter().map(|(&(r, c), v)| format!("({},{})={v}", r + 1, c + 1)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
