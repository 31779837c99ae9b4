//! Insertion algorithms: the Burge correspondence, row-insertion
//! rectification, and uncrowding of set-valued tableaux on skew shapes.

use thiserror::Error;

use crate::crystal::{Crystal, Word};
use crate::shape::{Flag, ShapeError, SkewShape};
use crate::tableau::{LetterSet, RecordingTableau, SetValuedTableau, Tableau, TableauError};

#[derive(Debug, Error)]
pub enum InsertionError {
    #[error("biword is not in Burge order at column {0}")]
    BiwordOrder(usize),
    #[error("biword rows have lengths {top} and {bottom}")]
    BiwordLength { top: usize, bottom: usize },
    #[error("P and Q have different shapes")]
    ShapeMismatch,
    #[error("{0} is not a skew shape containing the input with nothing below it")]
    BadOuterShape(String),
    #[error("shape {0} is not connected")]
    Disconnected(String),
    #[error("auxiliary tableau invalid at box ({row},{col}): {reason}")]
    BadAuxiliary { row: usize, col: usize, reason: &'static str },
    #[error("tableau shape does not match")]
    TableauShape,
    #[error("recording data is not in the image of uncrowding at box ({row},{col})")]
    NonInvertible { row: usize, col: usize },
    #[error("tableau does not respect flag {0}")]
    FlagViolation(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

/// Two-line array, read column by column.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Biword {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Biword {
    /// Accepts only Burge order: top weakly decreasing, bottom weakly
    /// increasing among columns with equal top.
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self, InsertionError> {
        if top.len() != bottom.len() {
            return Err(InsertionError::BiwordLength { top: top.len(), bottom: bottom.len() });
        }
        for p in 1..top.len() {
            let ok = top[p - 1] > top[p] || (top[p - 1] == top[p] && bottom[p - 1] <= bottom[p]);
            if !ok || top[p] == 0 || bottom[p] == 0 {
                return Err(InsertionError::BiwordOrder(p));
            }
        }
        if top.first() == Some(&0) || bottom.first() == Some(&0) {
            return Err(InsertionError::BiwordOrder(0));
        }
        Ok(Biword { top, bottom })
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }
}

impl std::fmt::Display for Biword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "[{}; {}]", join(&self.top), join(&self.bottom))
    }
}

/// `a_{ij}` columns `[i; j]`, arranged in Burge order.
pub fn biword_of_matrix(a: &[Vec<u32>]) -> Biword {
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for i in (0..a.len()).rev() {
        for (j, &m) in a[i].iter().enumerate() {
            for _ in 0..m {
                top.push(i as u32 + 1);
                bottom.push(j as u32 + 1);
            }
        }
    }
    Biword { top, bottom }
}

pub fn matrix_of_biword(bw: &Biword, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    let mut a = vec![vec![0; cols]; rows];
    for (&i, &j) in bw.top.iter().zip(&bw.bottom) {
        a[i as usize - 1][j as usize - 1] += 1;
    }
    a
}

/// Index of the leftmost entry strictly greater than `x`.
pub fn bump_position(row: &[u32], x: u32) -> Option<usize> {
    row.iter().position(|&y| y > x)
}

/// Row-insert `x` into `rows` starting at row `start`. Returns the position
/// of the new box.
pub fn row_insert_from(rows: &mut Vec<Vec<u32>>, start: usize, mut x: u32) -> (usize, usize) {
    let mut r = start;
    loop {
        if r == rows.len() {
            rows.push(vec![x]);
            return (r, 0);
        }
        match bump_position(&rows[r], x) {
            Some(c) => x = std::mem::replace(&mut rows[r][c], x),
            None => {
                rows[r].push(x);
                return (r, rows[r].len() - 1);
            }
        }
        r += 1;
    }
}

/// Column insertion of the bottom letters, right to left, recording the
/// top letters.
pub fn burge(bw: &Biword) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (&label, &letter) in bw.top.iter().zip(&bw.bottom).rev() {
        let mut x = letter;
        let mut c = 0;
        loop {
            if c == p.len() {
                p.push(vec![x]);
                q.push(vec![label]);
                break;
            }
            let col = &mut p[c];
            let k = col.partition_point(|&y| y < x);
            if k == col.len() {
                col.push(x);
                q[c].push(label);
                break;
            }
            x = std::mem::replace(&mut col[k], x);
            c += 1;
        }
    }
    (Tableau::from_columns(&p), Tableau::from_columns(&q))
}

/// Inverse of [`burge`].
pub fn burge_inverse(p: &Tableau, q: &Tableau) -> Result<Biword, InsertionError> {
    if p.shape() != q.shape() {
        return Err(InsertionError::ShapeMismatch);
    }
    let mut pc = p.columns();
    let mut qc = q.columns();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    while !qc.is_empty() {
        let max = qc.iter().flat_map(|c| c.last()).max().copied().unwrap();
        // Rightmost column whose bottom cell carries the largest label.
        let c = (0..qc.len()).rev().find(|&c| qc[c].last() == Some(&max)).unwrap();
        qc[c].pop();
        let mut y = pc[c].pop().unwrap();
        for col in pc[..c].iter_mut().rev() {
            let k = col.partition_point(|&v| v <= y);
            if k == 0 {
                return Err(InsertionError::ShapeMismatch);
            }
            y = std::mem::replace(&mut col[k - 1], y);
        }
        if qc[c].is_empty() {
            qc.pop();
            pc.pop();
        }
        top.push(max);
        bottom.push(y);
    }
    Biword::new(top, bottom)
}

/// The SSYT obtained by row-inserting the letters of `w` left to right.
pub fn rect(w: &[u32]) -> Tableau {
    let mut rows = Vec::new();
    for &x in w {
        row_insert_from(&mut rows, 0, x);
    }
    Tableau::new_unchecked(rows)
}

pub fn knuth_equivalent(u: &[u32], v: &[u32]) -> bool {
    rect(u) == rect(v)
}

/// Killed by every raising operator of the word crystal.
pub fn is_yamanouchi(w: &[u32]) -> bool {
    let n = w.iter().copied().max().unwrap_or(0) as usize;
    let word = Word(w.to_vec());
    (1..n).all(|i| word.raise(i).is_zero())
}

/// Output of uncrowding together with the intermediate tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncrowdingRecord {
    pub input_shape: SkewShape,
    pub output_shape: SkewShape,
    /// `T″`: each added box labelled by the step that created it.
    pub recording: RecordingTableau,
    pub straightened: SetValuedTableau,
    /// `T^(0), …, T^(l)`.
    pub chain: Vec<SetValuedTableau>,
    /// 1-based row of the box added at each step.
    pub added_rows: Vec<usize>,
}

#[derive(Clone, Debug)]
struct WorkRow {
    start: usize,
    cells: Vec<LetterSet>,
}

struct Work {
    rows: Vec<WorkRow>,
}

impl Work {
    fn from_tableau(t: &SetValuedTableau) -> Self {
        let s = t.shape();
        let rows = (0..s.rows()).map(|r| WorkRow { start: s.row_start(r), cells: t.rows()[r].clone() }).collect();
        Work { rows }
    }

    fn snapshot(&self) -> Result<SetValuedTableau, InsertionError> {
        let outer = self.rows.iter().map(|r| r.start + r.cells.len()).collect();
        let inner = self.rows.iter().map(|r| r.start).collect();
        let shape = SkewShape::from_parts(outer, inner)?;
        let rows = self.rows.iter().map(|r| r.cells.clone()).collect();
        Ok(SetValuedTableau::new_unchecked(shape, rows))
    }

    /// Row-insert `x` into 0-based row `r` and below; rows from `r` on are
    /// single-valued.
    fn insert_from(&mut self, mut r: usize, mut x: u32) -> (usize, usize) {
        loop {
            if r == self.rows.len() {
                self.rows.push(WorkRow { start: 0, cells: vec![LetterSet::single(x)] });
                return (r, 0);
            }
            let row = &mut self.rows[r];
            match row.cells.iter().position(|s| s.least() > x) {
                Some(c) => {
                    let old = std::mem::replace(&mut row.cells[c], LetterSet::single(x));
                    x = old.least();
                }
                None => {
                    row.cells.push(LetterSet::single(x));
                    return (r, row.start + row.cells.len() - 1);
                }
            }
            r += 1;
        }
    }
}

fn check_aux(theta: &SkewShape, tau: &SkewShape, aux: &RecordingTableau) -> Result<(), InsertionError> {
    let in_theta = |r: usize, c: usize| r < theta.rows() && theta.contains(r, c);
    for (r, c) in theta.boxes() {
        if !tau.contains(r, c) {
            return Err(InsertionError::BadOuterShape(tau.to_string()));
        }
    }
    for (r, c) in tau.boxes() {
        if in_theta(r, c) {
            continue;
        }
        if !(r + 1..theta.rows()).any(|rr| theta.contains(rr, c)) {
            return Err(InsertionError::BadOuterShape(tau.to_string()));
        }
        if aux.get(r, c).is_none() {
            return Err(InsertionError::BadAuxiliary { row: r + 1, col: c + 1, reason: "box of A(τ/θ) unlabelled" });
        }
    }
    for (&(r, c), &v) in aux.cells() {
        let bad = |reason| Err(InsertionError::BadAuxiliary { row: r + 1, col: c + 1, reason });
        if !tau.contains(r, c) || in_theta(r, c) {
            return bad("outside A(τ/θ)");
        }
        if v == 0 || v as usize > r + 1 {
            return bad("label exceeds its row");
        }
        if aux.get(r, c + 1).is_some_and(|w| w >= v) {
            return bad("row not strictly decreasing");
        }
        if aux.get(r + 1, c).is_some_and(|w| w > v) {
            return bad("column not weakly decreasing");
        }
    }
    Ok(())
}

/// Uncrowding of `T` on `τ ⊇ θ` with auxiliary filling `T′` of `A(τ/θ)`.
pub fn uncrowd(
    theta: &SkewShape,
    tau: &SkewShape,
    aux: &RecordingTableau,
    t: &SetValuedTableau,
) -> Result<UncrowdingRecord, InsertionError> {
    if !theta.is_connected() {
        return Err(InsertionError::Disconnected(theta.to_string()));
    }
    if !tau.is_connected() {
        return Err(InsertionError::Disconnected(tau.to_string()));
    }
    if t.shape() != tau {
        return Err(InsertionError::TableauShape);
    }
    check_aux(theta, tau, aux)?;

    let mut work = Work::from_tableau(t);
    let mut chain = vec![t.clone()];
    let mut recording = RecordingTableau::new();
    let mut added_rows = Vec::new();
    let mut push = |work: &Work, (r, c): (usize, usize), k: u32| -> Result<(), InsertionError> {
        recording.insert(r, c, k);
        added_rows.push(r + 1);
        chain.push(work.snapshot()?);
        Ok(())
    };

    for k in (1..=tau.rows()).rev() {
        let kr = k - 1;
        while let Some(c) = work.rows[kr].cells.iter().rposition(|s| s.len() > 1) {
            let cell = work.rows[kr].cells[c];
            let m = cell.greatest();
            work.rows[kr].cells[c] = cell.without(m);
            let pos = work.insert_from(kr + 1, m);
            push(&work, pos, k as u32)?;
        }
        let mut boxes: Vec<(usize, usize)> =
            aux.cells().iter().filter(|&(_, &v)| v as usize == k).map(|(&p, _)| p).collect();
        boxes.sort();
        for w in boxes.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(InsertionError::BadAuxiliary {
                    row: w[1].0 + 1,
                    col: w[1].1 + 1,
                    reason: "repeated label in a row",
                });
            }
        }
        for (i, j) in boxes {
            let row = &mut work.rows[i];
            if row.start != j || row.cells.is_empty() || row.cells[0].len() != 1 {
                return Err(InsertionError::BadAuxiliary { row: i + 1, col: j + 1, reason: "box not removable" });
            }
            let v = row.cells.remove(0).least();
            row.start += 1;
            let pos = work.insert_from(i + 1, v);
            push(&work, pos, k as u32)?;
        }
    }

    let straightened = work.snapshot()?;
    Ok(UncrowdingRecord {
        input_shape: theta.clone(),
        output_shape: straightened.shape().clone(),
        recording,
        straightened,
        chain,
        added_rows,
    })
}

/// The unique `T` on `θ` with `uncrowd(θ, θ, ∅, T) = (θ̃, Q″, T̃)`.
pub fn uncrowd_inverse(
    theta: &SkewShape,
    theta_tilde: &SkewShape,
    q: &RecordingTableau,
    t_tilde: &SetValuedTableau,
) -> Result<SetValuedTableau, InsertionError> {
    if t_tilde.shape() != theta_tilde || !t_tilde.is_ssyt() {
        return Err(InsertionError::TableauShape);
    }
    let mut work = Work::from_tableau(t_tilde);
    for k in 1..=q.max_label() as usize {
        let mut boxes: Vec<(usize, usize)> =
            q.cells().iter().filter(|&(_, &v)| v as usize == k).map(|(&p, _)| p).collect();
        boxes.sort_by(|a, b| b.cmp(a));
        for (i, j) in boxes {
            let fail = InsertionError::NonInvertible { row: i + 1, col: j + 1 };
            if i < k || i >= work.rows.len() {
                return Err(fail);
            }
            let row = &mut work.rows[i];
            if row.cells.is_empty() || row.start + row.cells.len() - 1 != j {
                return Err(fail);
            }
            let mut y = row.cells.pop().unwrap().least();
            while work.rows.last().is_some_and(|r| r.cells.is_empty() && r.start == 0) {
                work.rows.pop();
            }
            for r in (k..i).rev() {
                let row = &mut work.rows[r];
                let Some(c) = row.cells.iter().rposition(|s| s.least() < y) else {
                    return Err(fail);
                };
                y = std::mem::replace(&mut row.cells[c], LetterSet::single(y)).least();
            }
            let row = &mut work.rows[k - 1];
            let Some(c) = row.cells.iter().rposition(|s| s.greatest() < y) else {
                return Err(fail);
            };
            row.cells[c] = row.cells[c].with(y);
        }
    }
    let out = work.snapshot()?;
    if out.shape() != theta {
        return Err(InsertionError::NonInvertible { row: 0, col: 0 });
    }
    out.validate()?;
    Ok(out)
}

/// `Φ^(0), …, Φ^(l)`, checking that each `T^(j)` respects `Φ^(j)`.
pub fn flag_trace(record: &UncrowdingRecord, flag: &Flag) -> Result<Vec<Flag>, InsertionError> {
    let rows = record.input_shape.rows();
    flag.check_rows(rows)?;
    let mut cur = flag.restrict(0..rows);
    let mut out = vec![cur.clone()];
    for (j, &k) in record.added_rows.iter().enumerate() {
        let mut next = cur.clone();
        let b = next.bounds_mut();
        let v = b[k - 2];
        if k > b.len() {
            b.push(v);
        } else {
            b[k - 1] = v;
        }
        let next = Flag::new(next.bounds().to_vec())?;
        if !record.chain[j + 1].respects_flag(&next) {
            return Err(InsertionError::FlagViolation(next.to_string()));
        }
        out.push(next.clone());
        cur = next;
    }
    if !record.chain[0].respects_flag(&out[0]) {
        return Err(InsertionError::FlagViolation(out[0].to_string()));
    }
    Ok(out)
}

/// `Φ̃ = Φ^(l)`.
pub fn flag_evolution(record: &UncrowdingRecord, flag: &Flag) -> Result<Flag, InsertionError> {
    Ok(flag_trace(record, flag)?.pop().unwrap())
}

/// The restriction of `t` to each connected component, top first, in
/// component coordinates.
pub fn split_components(t: &SetValuedTableau) -> Vec<SetValuedTableau> {
    t.shape()
        .components()
        .into_iter()
        .map(|comp| {
            let rows = (0..comp.shape.rows())
                .map(|r| {
                    let src = comp.row_offset + r;
                    let start = t.shape().row_start(src);
                    let cs = comp.shape.row_start(r) + comp.col_offset;
                    let ce = comp.shape.row_end(r) + comp.col_offset;
                    t.rows()[src][cs - start..ce - start].to_vec()
                })
                .collect();
            SetValuedTableau::new_unchecked(comp.shape, rows)
        })
        .collect()
}

/// Column offset of each factor inside `θ_1 * θ_2 * ⋯` (first on top).
pub fn star_offsets(shapes: &[&SkewShape]) -> Vec<(usize, usize)> {
    let widths: Vec<usize> = shapes.iter().map(|s| if s.rows() == 0 { 0 } else { s.row_end(0) }).collect();
    let mut out = Vec::with_capacity(shapes.len());
    let mut row = 0;
    for (k, s) in shapes.iter().enumerate() {
        let col: usize = widths[k + 1..].iter().sum();
        out.push((row, col));
        row += s.rows();
    }
    out
}

/// `t_1 * t_2 * ⋯` for tableaux on normalized connected shapes.
pub fn star_tableaux(parts: &[SetValuedTableau]) -> SetValuedTableau {
    let shapes: Vec<&SkewShape> = parts.iter().map(|p| p.shape()).collect();
    let shape = SkewShape::star_all(shapes.iter().copied());
    let rows = parts.iter().flat_map(|p| p.rows().iter().cloned()).collect();
    SetValuedTableau::new_unchecked(shape, rows)
}

/// Componentwise uncrowding reassembled by `*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRecord {
    pub components: Vec<UncrowdingRecord>,
    /// `θ̃ = θ̃_1 * θ̃_2 * ⋯`.
    pub shape: SkewShape,
    pub image: SetValuedTableau,
    /// The recording tableaux placed in the coordinates of `θ̃`.
    pub recording: RecordingTableau,
}

pub fn psi(s: &SetValuedTableau) -> Result<PsiRecord, InsertionError> {
    let parts = split_components(s);
    let mut components = Vec::with_capacity(parts.len());
    for p in &parts {
        components.push(uncrowd(p.shape(), p.shape(), &RecordingTableau::new(), p)?);
    }
    let outs: Vec<SetValuedTableau> = components.iter().map(|c| c.straightened.clone()).collect();
    let shapes: Vec<&SkewShape> = outs.iter().map(|t| t.shape()).collect();
    let offsets = star_offsets(&shapes);
    let mut recording = RecordingTableau::new();
    for (c, &(dr, dc)) in components.iter().zip(&offsets) {
        recording.extend(&c.recording.shifted(dr, dc));
    }
    let image = star_tableaux(&outs);
    Ok(PsiRecord { shape: image.shape().clone(), components, image, recording })
}

/// `Φ̃`: the evolved flags of the components concatenated, top first.
pub fn psi_flag(s: &SetValuedTableau, record: &PsiRecord, flag: &Flag) -> Result<Flag, InsertionError> {
    flag.check_rows(s.shape().rows())?;
    let comps = s.shape().components();
    let mut flags = Vec::with_capacity(comps.len());
    for (comp, rec) in comps.iter().zip(&record.components) {
        let local = flag.restrict(comp.row_offset..comp.row_offset + comp.shape.rows());
        flags.push(flag_evolution(rec, &local)?);
    }
    Ok(Flag::concat(&flags))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn svt(outer: Vec<usize>, inner: Vec<usize>, rows: Vec<Vec<Vec<u32>>>) -> SetValuedTableau {
        SetValuedTableau::from_lists(SkewShape::from_parts(outer, inner).unwrap(), rows).unwrap()
    }

    #[test]
    fn matrix_biword_example() {
        let bw = biword_of_matrix(&[vec![1, 2, 0], vec![2, 1, 3]]);
        assert_eq!(bw.top(), &[2, 2, 2, 2, 2, 2, 1, 1, 1]);
        assert_eq!(bw.bottom(), &[1, 1, 2, 3, 3, 3, 1, 2, 2]);
        assert_eq!(matrix_of_biword(&bw, 2, 3), vec![vec![1, 2, 0], vec![2, 1, 3]]);
        let (p, q) = burge(&bw);
        assert_eq!(p.shape(), q.shape());
        assert_eq!(burge_inverse(&p, &q).unwrap(), bw);
    }

    #[test]
    fn rejects_unordered_biword() {
        assert!(Biword::new(vec![1, 2], vec![1, 1]).is_err());
        assert!(Biword::new(vec![2, 2], vec![2, 1]).is_err());
        assert!(Biword::new(vec![2, 2], vec![1, 2]).is_ok());
    }

    #[test]
    fn rectification_and_yamanouchi() {
        let t = rect(&[3, 2, 4, 1, 2]);
        assert_eq!(t.shape().parts(), &[2, 2, 1]);
        assert_eq!(t.weight(4), Composition::new(vec![1, 2, 1, 1]));
        assert!(rect(&[]).is_empty());
        assert!(is_yamanouchi(&[]));
        assert!(is_yamanouchi(&[1, 1, 1]));
        assert!(is_yamanouchi(&[2, 1, 1]));
        assert!(!is_yamanouchi(&[1, 2]));
        assert!(knuth_equivalent(&[2, 1, 3], &[2, 3, 1]));
    }

    fn eleven_box_input() -> (SkewShape, SkewShape, RecordingTableau, SetValuedTableau) {
        let theta = SkewShape::from_parts(vec![4, 3, 3, 2], vec![2, 2, 0, 0]).unwrap();
        let tau = SkewShape::from_parts(vec![4, 3, 3, 2], vec![1, 0, 0, 0]).unwrap();
        let aux = RecordingTableau::from_cells([((0, 1), 1), ((1, 0), 2), ((1, 1), 1)]);
        let t = svt(
            vec![4, 3, 3, 2],
            vec![1, 0, 0, 0],
            vec![
                vec![vec![1], vec![1, 2], vec![2]],
                vec![vec![2], vec![3], vec![4]],
                vec![vec![3, 5], vec![6], vec![6, 7]],
                vec![vec![8], vec![9]],
            ],
        );
        (theta, tau, aux, t)
    }

    #[test]
    fn eleven_box_uncrowding() {
        let (theta, tau, aux, t) = eleven_box_input();
        let rec = uncrowd(&theta, &tau, &aux, &t).unwrap();
        assert_eq!(rec.chain.len(), 7);
        let want = svt(
            vec![4, 3, 3, 2, 2, 2, 1, 1],
            vec![2, 2, 0, 0, 0, 0, 0, 0],
            vec![
                vec![vec![1], vec![2]],
                vec![vec![4]],
                vec![vec![1], vec![2], vec![6]],
                vec![vec![2], vec![3]],
                vec![vec![3], vec![6]],
                vec![vec![5], vec![9]],
                vec![vec![7]],
                vec![vec![8]],
            ],
        );
        assert_eq!(rec.straightened, want);
        let q = RecordingTableau::from_cells([
            ((4, 0), 3),
            ((5, 0), 3),
            ((6, 0), 2),
            ((7, 0), 1),
            ((4, 1), 1),
            ((5, 1), 1),
        ]);
        assert_eq!(rec.recording, q);
    }

    #[test]
    fn zero_excess_is_fixed() {
        let t = svt(vec![2, 2], vec![1], vec![vec![vec![1]], vec![vec![1], vec![2]]]);
        let rec = uncrowd(t.shape(), t.shape(), &RecordingTableau::new(), &t).unwrap();
        assert_eq!(rec.straightened, t);
        assert!(rec.recording.is_empty());
    }

    #[test]
    fn flag_example() {
        let t = svt(
            vec![4, 3, 2],
            vec![2, 1, 0],
            vec![vec![vec![1], vec![1, 2]], vec![vec![1, 2], vec![2, 3]], vec![vec![1], vec![3]]],
        );
        let rec = uncrowd(t.shape(), t.shape(), &RecordingTableau::new(), &t).unwrap();
        let q = RecordingTableau::from_cells([((3, 0), 2), ((2, 2), 2), ((1, 3), 1)]);
        assert_eq!(rec.recording, q);
        assert_eq!(rec.recording.weight(3), Composition::new(vec![1, 2, 0]));
        let want = svt(
            vec![4, 4, 3, 1],
            vec![2, 1, 0, 0],
            vec![
                vec![vec![1], vec![1]],
                vec![vec![1], vec![2], vec![2]],
                vec![vec![1], vec![2], vec![3]],
                vec![vec![3]],
            ],
        );
        assert_eq!(rec.straightened, want);
        let flag = Flag::new(vec![2, 3, 4]).unwrap();
        assert_eq!(flag_evolution(&rec, &flag).unwrap(), Flag::new(vec![2, 2, 3, 3]).unwrap());
        let back = uncrowd_inverse(t.shape(), &rec.output_shape, &rec.recording, &rec.straightened).unwrap();
        assert_eq!(back, t);
    }

    use crate::shape::Composition;
}
