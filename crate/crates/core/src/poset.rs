//! Quantum shapes: order ideals of the cylinder `Z^2 / Z(m, m-n)`.
//!
//! A shape is stored by the column of the last box in each of the rows
//! `1..=m`; every other row is determined by periodicity, row `i + m` ending
//! `n - m` columns to the left of row `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QkError, Result};

/// The Grassmannian `Gr(m, n)`: `m`-planes in `n`-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassContext {
    m: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(QkError::InvalidContext { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width of the rectangle, `n - m`.
    pub fn k(&self) -> usize {
        self.n - self.m
    }

    /// Every context with `2 <= n <= max_n`, ordered by `(n, m)`.
    pub fn all_up_to(max_n: usize) -> Vec<GrassContext> {
        (2..=max_n)
            .flat_map(|n| (1..n).map(move |m| GrassContext { m, n }))
            .collect()
    }

    /// All classical shapes of this context, in lexicographic order of parts.
    pub fn classical_shapes(&self) -> Vec<QuantumShape> {
        Partition::all_in_rectangle(self.m, self.k())
            .into_iter()
            .map(|p| QuantumShape::from_partition(*self, &p).expect("fits by construction"))
            .collect()
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.m, self.n)
    }
}

impl FromStr for GrassContext {
    type Err = QkError;

    /// Parses `"m,n"`.
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list(s)?;
        match v.as_slice() {
            [m, n] if *m >= 0 && *n >= 0 => GrassContext::new(*m as usize, *n as usize),
            _ => Err(QkError::Parse(format!(
                "expected context \"m,n\", got {s:?}"
            ))),
        }
    }
}

/// Parses a comma-separated integer list. Surrounding parentheses are
/// optional; `""` and `"()"` give the empty list.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| QkError::Parse(format!("{x:?}: {e}")))
        })
        .collect()
}

/// A quantum shape, stored as the row ends `(λ_1, ..., λ_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumShape {
    context: GrassContext,
    parts: Vec<i64>,
}

impl QuantumShape {
    /// Validates `parts` against the two order-ideal constraints.
    pub fn new(context: GrassContext, parts: Vec<i64>) -> Result<Self> {
        let m = context.m;
        if parts.len() != m {
            return Err(QkError::LengthMismatch {
                expected: m,
                got: parts.len(),
            });
        }
        if let Some(index) = (0..m - 1).find(|&i| parts[i] < parts[i + 1]) {
            return Err(QkError::NotMonotone {
                index: index + 1,
                left: parts[index],
                right: parts[index + 1],
            });
        }
        let wrapped = parts[m - 1] + context.k() as i64;
        if wrapped < parts[0] {
            return Err(QkError::WrapViolation {
                wrapped,
                first: parts[0],
            });
        }
        Ok(Self { context, parts })
    }

    /// The empty classical shape `(0, ..., 0)`.
    pub fn empty(context: GrassContext) -> Self {
        Self {
            context,
            parts: vec![0; context.m],
        }
    }

    /// Pads a partition with zeros to `m` rows.
    pub fn from_partition(context: GrassContext, p: &Partition) -> Result<Self> {
        if !p.fits(context) {
            return Err(QkError::DoesNotFit(p.to_string()));
        }
        let mut parts: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
        parts.resize(context.m, 0);
        Self::new(context, parts)
    }

    pub fn context(&self) -> GrassContext {
        self.context
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `|λ| = Σ λ_i`.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Column of the last box in row `r` of the periodic box set, for any `r`.
    pub fn row_end(&self, r: i64) -> i64 {
        let m = self.context.m as i64;
        let i = (r - 1).rem_euclid(m) + 1;
        let j = (r - i) / m;
        self.parts[(i - 1) as usize] - j * self.context.k() as i64
    }

    /// Whether the box `(r, c)` of `Z^2` lies in the shape.
    pub fn contains_box(&self, r: i64, c: i64) -> bool {
        c <= self.row_end(r)
    }

    pub fn is_classical(&self) -> bool {
        let k = self.context.k() as i64;
        self.parts.iter().all(|&x| (0..=k).contains(&x))
    }

    /// Translation by `r` rows down and `s` columns right. Negative amounts
    /// translate up and left.
    pub fn translate(&self, r: i64, s: i64) -> Self {
        let parts = (1..=self.context.m as i64)
            .map(|i| self.row_end(i - r) + s)
            .collect();
        Self {
            context: self.context,
            parts,
        }
    }

    /// `λ[d]`: the shape moved `d` steps down the diagonal.
    pub fn shift(&self, d: i64) -> Self {
        self.translate(d, d)
    }

    /// Returns `(μ, d)` with `λ[-d]` the classical shape `μ`, so `O^λ = q^d O^μ`.
    pub fn classicalize(&self) -> (Partition, i64) {
        let m = self.context.m as i64;
        // λ[-d] is classical exactly when (m + d, d) is the last box of λ on its diagonal.
        let on_diag = |k: i64| self.row_end(m + k) >= k;
        let mut d = 0;
        if on_diag(0) {
            while on_diag(d + 1) {
                d += 1;
            }
        } else {
            while !on_diag(d) {
                d -= 1;
            }
        }
        let base = self.shift(-d);
        debug_assert!(base.is_classical());
        (base.to_partition().expect("classical by construction"), d)
    }

    /// The partition of a classical shape.
    pub fn to_partition(&self) -> Result<Partition> {
        if !self.is_classical() {
            return Err(QkError::NotClassical);
        }
        Partition::new(self.parts.iter().map(|&x| x as usize).collect())
    }

    /// Number of maximal boxes of the shape; `λ_{m+1} := λ_1 - (n - m)`.
    pub fn quantum_corners(&self) -> usize {
        (1..=self.context.m as i64)
            .filter(|&i| self.row_end(i) > self.row_end(i + 1))
            .count()
    }

    /// `λ ⊆ ν` on the row representatives.
    pub fn is_within(&self, outer: &QuantumShape) -> Result<bool> {
        if self.context != outer.context {
            return Err(QkError::ContextMismatch);
        }
        Ok(self.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b))
    }
}

impl fmt::Display for QuantumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.parts.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// `λ ⊆ ν`.
pub fn contains(lambda: &QuantumShape, nu: &QuantumShape) -> Result<bool> {
    lambda.is_within(nu)
}

/// A skew shape `ν/λ` of quantum shapes with `λ ⊆ ν`.
#[derive(Debug, Clone, Copy)]
pub struct SkewShape<'a> {
    outer: &'a QuantumShape,
    inner: &'a QuantumShape,
}

impl<'a> SkewShape<'a> {
    pub fn new(outer: &'a QuantumShape, inner: &'a QuantumShape) -> Result<Self> {
        if !inner.is_within(outer)? {
            return Err(QkError::NotContained);
        }
        Ok(Self { outer, inner })
    }

    fn pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.inner
            .parts
            .iter()
            .copied()
            .zip(self.outer.parts.iter().copied())
    }

    /// `|ν/λ|`.
    pub fn size(&self) -> i64 {
        self.pairs().map(|(l, n)| n - l).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.inner == self.outer
    }

    /// At most one box in each column: `ν_i <= λ_{i-1}` with `λ_0 = λ_m + n - m`.
    pub fn is_horizontal_strip(&self) -> bool {
        (1..=self.inner.context.m as i64)
            .all(|i| self.outer.row_end(i) <= self.inner.row_end(i - 1))
    }

    /// At most one box in each row.
    pub fn is_vertical_strip(&self) -> bool {
        self.pairs().all(|(l, n)| n <= l + 1)
    }

    /// Nonempty and `ν ⊆ λ[1]`.
    pub fn is_rim(&self) -> bool {
        !self.is_empty()
            && self
                .outer
                .is_within(&self.inner.shift(1))
                .expect("same context")
    }

    /// `ν = λ[1]`.
    pub fn is_unbroken_rim(&self) -> bool {
        *self.outer == self.inner.shift(1)
    }

    /// Number of nonempty rows among `1..=m`.
    pub fn row_count(&self) -> usize {
        self.pairs().filter(|(l, n)| n > l).count()
    }

    /// Number of nonempty columns among `1..=n-m`. Each box class has exactly
    /// one representative there, found by reducing its column mod `n - m`.
    pub fn col_count(&self) -> usize {
        let k = self.inner.context.k() as i64;
        let mut seen = vec![false; k as usize];
        for (l, n) in self.pairs() {
            for c in (l + 1..=n).take(k as usize) {
                seen[c.rem_euclid(k) as usize] = true;
            }
        }
        seen.into_iter().filter(|&b| b).count()
    }
}

pub fn skew_size(nu: &QuantumShape, lambda: &QuantumShape) -> Result<i64> {
    Ok(SkewShape::new(nu, lambda)?.size())
}

pub fn is_horizontal_strip(nu: &QuantumShape, lambda: &QuantumShape) -> Result<bool> {
    Ok(SkewShape::new(nu, lambda)?.is_horizontal_strip())
}

pub fn is_vertical_strip(nu: &QuantumShape, lambda: &QuantumShape) -> Result<bool> {
    Ok(SkewShape::new(nu, lambda)?.is_vertical_strip())
}

pub fn is_rim(nu: &QuantumShape, lambda: &QuantumShape) -> Result<bool> {
    Ok(SkewShape::new(nu, lambda)?.is_rim())
}

pub fn row_count(nu: &QuantumShape, lambda: &QuantumShape) -> Result<usize> {
    Ok(SkewShape::new(nu, lambda)?.row_count())
}

pub fn col_count(nu: &QuantumShape, lambda: &QuantumShape) -> Result<usize> {
    Ok(SkewShape::new(nu, lambda)?.col_count())
}

/// An integer partition with trailing zeros removed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(QkError::InvalidPartition);
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fits(&self, context: GrassContext) -> bool {
        self.len() <= context.m && self.part(0) <= context.k()
    }

    /// Number of boxes with nothing south or east: distinct nonzero part values.
    pub fn corners(&self) -> usize {
        let mut v = self.parts.clone();
        v.dedup();
        v.len()
    }

    /// Complement in the `m x (n-m)` rectangle, rotated: `λ^∨_i = (n-m) - λ_{m+1-i}`.
    pub fn dual(&self, context: GrassContext) -> Result<Partition> {
        if !self.fits(context) {
            return Err(QkError::DoesNotFit(self.to_string()));
        }
        let (m, k) = (context.m, context.k());
        Partition::new((0..m).map(|i| k - self.part(m - 1 - i)).collect())
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.part(0))
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// All partitions inside a `rows x cols` rectangle, lexicographically.
    pub fn all_in_rectangle(rows: usize, cols: usize) -> Vec<Partition> {
        fn go(rows: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == rows {
                out.push(cur.clone());
                return;
            }
            for v in 0..=cap {
                cur.push(v);
                go(rows, v, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        go(rows, cols, &mut Vec::with_capacity(rows), &mut raw);
        let mut out: Vec<Partition> = raw
            .into_iter()
            .map(|p| Partition::new(p).expect("decreasing by construction"))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.parts.iter())
    }
}

impl FromStr for Partition {
    type Err = QkError;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list(s)?;
        if v.iter().any(|&x| x < 0) {
            return Err(QkError::InvalidPartition);
        }
        Partition::new(v.into_iter().map(|x| x as usize).collect())
    }
}

/// Arm/leg parameters of the hook `(a\b) = (b+1, 1^a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HookParams {
    pub a: i64,
    pub b: i64,
}

impl HookParams {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// Number of boxes, `a + b + 1`.
    pub fn size(&self) -> i64 {
        self.a + self.b + 1
    }

    /// The partition `(b+1, 1^a)`; negative parameters are the zero class.
    pub fn partition(&self) -> Result<Partition> {
        if self.a < 0 || self.b < 0 {
            return Err(QkError::NegativeHook {
                a: self.a,
                b: self.b,
            });
        }
        let mut parts = vec![self.b as usize + 1];
        parts.extend(std::iter::repeat_n(1, self.a as usize));
        Partition::new(parts)
    }

    /// Whether `(a\b)` is a classical shape of `context`.
    pub fn fits(&self, context: GrassContext) -> bool {
        self.a >= 0 && self.b >= 0 && self.a < context.m as i64 && self.b < context.k() as i64
    }
}

impl FromStr for HookParams {
    type Err = QkError;

    fn from_str(s: &str) -> Result<Self> {
        match parse_int_list(s)?.as_slice() {
            [a, b] => Ok(HookParams::new(*a, *b)),
            _ => Err(QkError::Parse(format!("expected hook \"a,b\", got {s:?}"))),
        }
    }
}

pub fn hook_partition(h: HookParams) -> Result<Partition> {
    h.partition()
}

/// The staircase `ρ_t = (t-1, ..., 1, 0)` in `Gr(t, 2t)`.
pub fn rho(t: i64) -> Result<(GrassContext, QuantumShape)> {
    if t < 1 {
        return Err(QkError::Domain(format!("staircase needs t >= 1, got {t}")));
    }
    let ctx = GrassContext::new(t as usize, 2 * t as usize)?;
    let shape = QuantumShape::new(ctx, (0..t).rev().collect())?;
    Ok((ctx, shape))
}

pub fn dual(lambda: &Partition, context: GrassContext) -> Result<Partition> {
    lambda.dual(context)
}

pub fn corners(lambda: &Partition) -> usize {
    lambda.corners()
}
