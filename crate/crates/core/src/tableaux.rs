//! Set-valued tableaux on `λ∗μ` and the K-theoretic Littlewood-Richardson
//! rule, used as an independent oracle for the Pieri engine.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{QkError, Result};
use crate::integer::{sign, Integer};
use crate::poset::{HookParams, Partition};

/// A skew diagram `outer / inner` of English-convention rows, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewDiagram {
    outer: Partition,
    inner: Partition,
}

impl SkewDiagram {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if inner.len() > outer.len() || (0..inner.len()).any(|i| inner.part(i) > outer.part(i)) {
            return Err(QkError::NotContained);
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Half-open column range `[inner_r, outer_r)` of row `r`.
    pub fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        self.inner.part(r)..self.outer.part(r)
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.row_range(r).contains(&c)
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

/// `λ∗μ`: the bottom-left corner of `μ` placed on the top-right corner of `λ`.
pub fn star_shape(lambda: &Partition, mu: &Partition) -> SkewDiagram {
    let width = lambda.part(0);
    let mut outer: Vec<usize> = mu.parts().iter().map(|&x| x + width).collect();
    outer.extend_from_slice(lambda.parts());
    let inner = vec![width; mu.len()];
    SkewDiagram::new(
        Partition::new(outer).expect("decreasing by construction"),
        Partition::new(inner).expect("constant"),
    )
    .expect("inner row lengths never exceed outer ones")
}

/// A word in positive letters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReadingWord(pub Vec<usize>);

impl ReadingWord {
    /// Each letter `w > 1` is followed by more copies of `w - 1` than of `w`.
    pub fn is_reverse_lattice(&self) -> bool {
        let mut seen: Vec<usize> = Vec::new();
        for &w in self.0.iter().rev() {
            if w >= seen.len() {
                seen.resize(w + 1, 0);
            }
            if w > 1 && seen[w - 1] <= seen[w] {
                return false;
            }
            seen[w] += 1;
        }
        true
    }

    /// `c_i` = number of `i`s, up to the largest letter present.
    pub fn content(&self) -> Vec<usize> {
        let top = self.0.iter().copied().max().unwrap_or(0);
        let mut c = vec![0; top];
        for &w in &self.0 {
            c[w - 1] += 1;
        }
        c
    }
}

impl fmt::Display for ReadingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

/// A filling of a skew diagram by nonempty finite sets of positive integers
/// with rows weakly and columns strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetValuedTableau {
    diagram: SkewDiagram,
    rows: Vec<Vec<BTreeSet<usize>>>,
}

impl SetValuedTableau {
    /// `rows[r]` lists the sets of row `r` from left to right.
    pub fn new(diagram: SkewDiagram, rows: Vec<Vec<BTreeSet<usize>>>) -> Result<Self> {
        if rows.len() != diagram.rows() {
            return Err(QkError::LengthMismatch {
                expected: diagram.rows(),
                got: rows.len(),
            });
        }
        for (r, row) in rows.iter().enumerate() {
            let want = diagram.row_range(r).len();
            if row.len() != want {
                return Err(QkError::LengthMismatch {
                    expected: want,
                    got: row.len(),
                });
            }
            if row.iter().any(|s| s.is_empty() || s.contains(&0)) {
                return Err(QkError::Domain(
                    "boxes hold nonempty sets of positive integers".into(),
                ));
            }
        }
        let t = Self { diagram, rows };
        for r in 0..t.diagram.rows() {
            for c in t.diagram.row_range(r) {
                let here = t.cell(r, c).expect("in diagram");
                if let Some(right) = t.cell(r, c + 1) {
                    if here.last() > right.first() {
                        return Err(QkError::Domain(format!(
                            "row {} not weakly increasing",
                            r + 1
                        )));
                    }
                }
                if let Some(below) = t.cell(r + 1, c) {
                    if here.last() >= below.first() {
                        return Err(QkError::Domain(format!(
                            "column {} not strictly increasing",
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn diagram(&self) -> &SkewDiagram {
        &self.diagram
    }

    pub fn rows(&self) -> &[Vec<BTreeSet<usize>>] {
        &self.rows
    }

    /// The set in box `(r, c)`, if the box belongs to the diagram.
    pub fn cell(&self, r: usize, c: usize) -> Option<&BTreeSet<usize>> {
        if r >= self.diagram.rows() || !self.diagram.contains(r, c) {
            return None;
        }
        self.rows[r].get(c - self.diagram.inner.part(r))
    }

    /// Rows from bottom to top, each row left to right, each set increasing.
    pub fn reading_word(&self) -> ReadingWord {
        ReadingWord(
            self.rows
                .iter()
                .rev()
                .flat_map(|row| row.iter().flat_map(|s| s.iter().copied()))
                .collect(),
        )
    }
}

/// Nested set lists in row order, e.g. `[[{1},{1,2}],[{3}]]`.
impl fmt::Display for SetValuedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, set) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn reading_word(t: &SetValuedTableau) -> ReadingWord {
    t.reading_word()
}

pub fn is_reverse_lattice(w: &ReadingWord) -> bool {
    w.is_reverse_lattice()
}

pub fn content(w: &ReadingWord) -> Vec<usize> {
    w.content()
}

struct Cell {
    row: usize,
    right: Option<usize>,
    above: Option<usize>,
}

/// Backtracking over the reverse of the reading order, so the lattice
/// condition on suffixes can be checked letter by letter.
struct Search<'a> {
    diagram: &'a SkewDiagram,
    nu: &'a [usize],
    cells: Vec<Cell>,
    sets: Vec<Vec<usize>>,
    counts: Vec<usize>,
    placed: usize,
    total: usize,
    found: u64,
    visit: Option<&'a mut (dyn FnMut(&SetValuedTableau) + 'a)>,
}

impl<'a> Search<'a> {
    fn new(
        diagram: &'a SkewDiagram,
        nu: &'a [usize],
        visit: Option<&'a mut (dyn FnMut(&SetValuedTableau) + 'a)>,
    ) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut cells = Vec::new();
        for r in 0..diagram.rows() {
            for c in diagram.row_range(r).rev() {
                index.insert((r, c), cells.len());
                cells.push(Cell {
                    row: r,
                    right: index.get(&(r, c + 1)).copied(),
                    above: r.checked_sub(1).and_then(|u| index.get(&(u, c)).copied()),
                });
            }
        }
        Self {
            diagram,
            nu,
            sets: vec![Vec::new(); cells.len()],
            cells,
            counts: vec![0; nu.len() + 1],
            placed: 0,
            total: nu.iter().sum(),
            found: 0,
            visit,
        }
    }

    fn allowed(&self, w: usize) -> bool {
        self.counts[w] < self.nu[w - 1] && (w == 1 || self.counts[w - 1] > self.counts[w])
    }

    fn next_cell(&mut self, idx: usize) {
        if idx == self.cells.len() {
            if self.placed == self.total {
                self.found += 1;
                self.report();
            }
            return;
        }
        if self.total - self.placed < self.cells.len() - idx {
            return;
        }
        let cell = &self.cells[idx];
        let hi = cell
            .right
            .map_or(self.nu.len(), |j| *self.sets[j].last().expect("filled"));
        let lo = cell.above.map_or(1, |j| self.sets[j][0] + 1);
        self.extend_cell(idx, lo, hi);
    }

    /// Adds letters to cell `idx` in decreasing order, each at most `cap`.
    fn extend_cell(&mut self, idx: usize, lo: usize, cap: usize) {
        let mut w = cap;
        while w >= lo && w >= 1 {
            if self.allowed(w) {
                self.sets[idx].push(w);
                self.counts[w] += 1;
                self.placed += 1;
                self.next_cell(idx + 1);
                if self.placed < self.total {
                    self.extend_cell(idx, lo, w - 1);
                }
                self.placed -= 1;
                self.counts[w] -= 1;
                self.sets[idx].pop();
            }
            w -= 1;
        }
    }

    fn report(&mut self) {
        let Some(visit) = self.visit.as_mut() else {
            return;
        };
        let mut rows: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); self.diagram.rows()];
        for (cell, set) in self.cells.iter().zip(&self.sets) {
            rows[cell.row].push(set.iter().copied().collect());
        }
        rows.iter_mut().for_each(|row| row.reverse());
        let t = SetValuedTableau {
            diagram: self.diagram.clone(),
            rows,
        };
        visit(&t);
    }
}

/// Number of set-valued tableaux of the given shape whose reading word is a
/// reverse lattice word with content `ν`.
pub fn count_lr_tableaux(shape: &SkewDiagram, nu: &Partition) -> Integer {
    Integer::from(search(shape, nu, None))
}

/// As [`count_lr_tableaux`], handing every tableau to `visit`.
pub fn for_each_lr_tableau(
    shape: &SkewDiagram,
    nu: &Partition,
    mut visit: impl FnMut(&SetValuedTableau),
) -> Integer {
    Integer::from(search(shape, nu, Some(&mut visit)))
}

fn search<'a>(
    shape: &'a SkewDiagram,
    nu: &'a Partition,
    visit: Option<&'a mut (dyn FnMut(&SetValuedTableau) + 'a)>,
) -> u64 {
    let mut s = Search::new(shape, nu.parts(), visit);
    if s.total < s.cells.len() {
        return 0;
    }
    s.next_cell(0);
    s.found
}

/// `N_{λ,μ}^ν = (-1)^{|ν|-|λ|-|μ|} · #{T on λ∗μ : w(T) reverse lattice of content ν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Integer {
    let count = count_lr_tableaux(&star_shape(lambda, mu), nu);
    if count.is_zero() {
        return count;
    }
    let e = nu.size() as i64 - lambda.size() as i64 - mu.size() as i64;
    sign(e) * count
}

/// `ρ_t = (t-1, ..., 1)`.
pub fn staircase(t: usize) -> Partition {
    Partition::new((1..t).rev().collect()).expect("decreasing")
}

/// `(t, t, t-1, ..., 2)`: `ρ_t[1]` with one box removed. For `t = 1` this
/// is the empty shape.
pub fn staircase_top_content(t: usize) -> Partition {
    if t <= 1 {
        return Partition::empty();
    }
    let mut parts = vec![t];
    parts.extend((2..=t).rev());
    Partition::new(parts).expect("decreasing")
}

/// Checks that rows of the `ρ_t` block of `(a\b)∗ρ_t` hold their row numbers.
fn staircase_block_forced(t: &SetValuedTableau, block_rows: usize) -> bool {
    t.rows()[..block_rows]
        .iter()
        .enumerate()
        .all(|(r, row)| row.iter().all(|s| s.len() == 1 && s.contains(&(r + 1))))
}

/// Number of pairs `(i, T)` with `1 <= i <= min(a,b)` and `T` a tableau of
/// shape `(a\b)∗ρ_t` with reverse lattice word of content `(t,t,t-1,...,2)`,
/// such that every box containing some `j <= i` is exactly `{j}`.
pub fn marked_pair_count(t: i64, a: i64, b: i64) -> Result<Integer> {
    if t < 1 {
        return Err(QkError::Domain(format!(
            "staircase size t must be >= 1, got {t}"
        )));
    }
    if a < 0 || b < 0 {
        return Ok(Integer::zero());
    }
    let hook = HookParams::new(a, b).partition()?;
    let tu = t as usize;
    let shape = star_shape(&hook, &staircase(tu));
    let mut pairs = 0u64;
    let mut forced = true;
    for_each_lr_tableau(&shape, &staircase_top_content(tu), |tab| {
        forced &= staircase_block_forced(tab, tu - 1);
        let mut i = 0;
        while i < a.min(b) as usize && only_singletons(tab, i + 1) {
            i += 1;
        }
        pairs += i as u64;
    });
    if !forced {
        return Err(QkError::Domain(format!(
            "a tableau on (a\\b)∗ρ_{t} does not fill ρ_{t} by row numbers"
        )));
    }
    Ok(Integer::from(pairs))
}

fn only_singletons(t: &SetValuedTableau, j: usize) -> bool {
    t.rows()
        .iter()
        .flatten()
        .all(|s| !s.contains(&j) || s.len() == 1)
}
