//! Linear combinations over the quantum-shape basis and the Pieri-rule
//! engine that multiplies them by row, column and hook classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{QkError, Result};
use crate::integer::{binom, sign, Integer};
use crate::poset::{GrassContext, HookParams, Partition, QuantumShape, SkewShape};

/// A finite integer combination `Σ c_ν O^ν` of quantum-shape classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLinearCombination {
    context: GrassContext,
    terms: BTreeMap<QuantumShape, Integer>,
}

impl QLinearCombination {
    pub fn zero(context: GrassContext) -> Self {
        Self {
            context,
            terms: BTreeMap::new(),
        }
    }

    /// The single class `O^λ`.
    pub fn basis(shape: QuantumShape) -> Self {
        let mut lc = Self::zero(shape.context());
        lc.terms.insert(shape, Integer::one());
        lc
    }

    pub fn context(&self) -> GrassContext {
        self.context
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QuantumShape, &Integer)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &QuantumShape> {
        self.terms.keys()
    }

    /// Adds `coeff · O^shape`, dropping the entry if it cancels.
    pub fn add_term(&mut self, shape: QuantumShape, coeff: Integer) -> Result<()> {
        if shape.context() != self.context {
            return Err(QkError::ContextMismatch);
        }
        self.push(shape, coeff);
        Ok(())
    }

    fn push(&mut self, shape: QuantumShape, coeff: Integer) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(shape) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &QLinearCombination, by: &Integer) {
        for (s, c) in &other.terms {
            self.push(s.clone(), c * by);
        }
    }

    pub fn scale(&self, by: &Integer) -> Self {
        let mut out = Self::zero(self.context);
        out.add_scaled(self, by);
        out
    }

    /// Coefficient of `O^ν`, zero when absent.
    pub fn coefficient(&self, nu: &QuantumShape) -> Result<Integer> {
        if nu.context() != self.context {
            return Err(QkError::ContextMismatch);
        }
        Ok(self.terms.get(nu).cloned().unwrap_or_default())
    }

    /// Extends `f`, given on basis classes, linearly.
    pub fn apply<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&QuantumShape) -> Result<QLinearCombination>,
    {
        let mut out = Self::zero(self.context);
        for (s, c) in &self.terms {
            out.add_scaled(&f(s)?, c);
        }
        Ok(out)
    }

    /// Rewrites every class as `q^d O^μ` with `μ` classical.
    pub fn normalize(&self) -> Vec<GradedTerm> {
        let mut out: Vec<GradedTerm> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let (shape, degree) = s.classicalize();
                GradedTerm {
                    shape,
                    degree,
                    coeff: c.clone(),
                }
            })
            .collect();
        out.sort();
        out
    }
}

impl AddAssign<&QLinearCombination> for QLinearCombination {
    fn add_assign(&mut self, rhs: &QLinearCombination) {
        assert_eq!(self.context, rhs.context, "context mismatch");
        self.add_scaled(rhs, &Integer::one());
    }
}

impl Add for &QLinearCombination {
    type Output = QLinearCombination;

    fn add(self, rhs: Self) -> QLinearCombination {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &QLinearCombination {
    type Output = QLinearCombination;

    fn sub(self, rhs: Self) -> QLinearCombination {
        assert_eq!(self.context, rhs.context, "context mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &-Integer::one());
        out
    }
}

impl Neg for &QLinearCombination {
    type Output = QLinearCombination;

    fn neg(self) -> QLinearCombination {
        self.scale(&-Integer::one())
    }
}

impl fmt::Display for QLinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{}O{s}", fmt_coeff(c))?;
        }
        Ok(())
    }
}

fn fmt_coeff(c: &Integer) -> String {
    let a = c.abs();
    if a.is_one() {
        String::new()
    } else {
        format!("{a}·")
    }
}

/// One term `coeff · q^degree · O^shape` of a normalized expansion.
///
/// Ordered by `(degree, shape)`, with shapes compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTerm {
    pub shape: Partition,
    pub degree: i64,
    #[serde(with = "crate::integer::json_int")]
    pub coeff: Integer,
}

impl Ord for GradedTerm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, &self.shape, &self.coeff).cmp(&(other.degree, &other.shape, &other.coeff))
    }
}

impl PartialOrd for GradedTerm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `O^λ · O^j`: signed sum over horizontal strips `ν/λ`.
pub fn pieri_row(lambda: &QuantumShape, j: i64) -> Result<QLinearCombination> {
    let ctx = lambda.context();
    let k = ctx.k() as i64;
    if !(0..=k).contains(&j) {
        return Err(QkError::OutOfRange {
            what: "row Pieri index j",
            value: j,
            lo: 0,
            hi: k,
        });
    }
    let m = ctx.m();
    // ν_i ranges independently over [λ_i, λ_{i-1}], λ_0 = λ_m + n - m.
    let ranges: Vec<(i64, i64)> = (1..=m as i64)
        .map(|i| (lambda.row_end(i), lambda.row_end(i - 1)))
        .collect();
    let mut out = QLinearCombination::zero(ctx);
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let size: i64 = cur.iter().zip(lambda.parts()).map(|(a, b)| a - b).sum();
        if size >= j {
            let rows = cur
                .iter()
                .zip(lambda.parts())
                .filter(|(a, b)| a > b)
                .count() as i64;
            let c = sign(size - j) * binom(rows - 1, size - j);
            if !c.is_zero() {
                let nu = QuantumShape::new(ctx, cur.clone()).expect("horizontal strips are shapes");
                out.push(nu, c);
            }
        }
        // odometer step
        let mut idx = 0;
        loop {
            if idx == m {
                return Ok(out);
            }
            if cur[idx] < ranges[idx].1 {
                cur[idx] += 1;
                break;
            }
            cur[idx] = ranges[idx].0;
            idx += 1;
        }
    }
}

/// `O^λ · O^{1^i}`: signed sum over vertical strips `μ/λ`.
pub fn pieri_col(lambda: &QuantumShape, i: i64) -> Result<QLinearCombination> {
    let ctx = lambda.context();
    let m = ctx.m();
    if !(0..=m as i64).contains(&i) {
        return Err(QkError::OutOfRange {
            what: "column Pieri index i",
            value: i,
            lo: 0,
            hi: m as i64,
        });
    }
    let mut out = QLinearCombination::zero(ctx);
    for mask in 0u64..(1u64 << m) {
        let size = mask.count_ones() as i64;
        if size < i {
            continue;
        }
        let parts: Vec<i64> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(r, &p)| p + ((mask >> r) & 1) as i64)
            .collect();
        let Ok(mu) = QuantumShape::new(ctx, parts) else {
            continue;
        };
        let cols = SkewShape::new(&mu, lambda)
            .expect("grown shape")
            .col_count() as i64;
        let c = sign(size - i) * binom(cols - 1, size - i);
        out.push(mu, c);
    }
    Ok(out)
}

/// Which product of special classes a hook-decomposition term stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HookFactor {
    /// `O^{1^i}`
    Column(i64),
    /// `O^j`
    Row(i64),
    /// `O^{1^i} · O^j`
    Product(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookTerm {
    pub coeff: Integer,
    pub factor: HookFactor,
}

/// Writes `O^{(a\b)}`, `a, b >= 1`, in terms of row and column classes:
///
/// `Σ_{i=2}^{a+1} C(a-i+b, b-1) O^{1^i} + Σ_{j=2}^{b+1} C(a+b-j, a-1) O^j
///  - Σ_{i=1}^{a} Σ_{j=1}^{b} C(a-i+b-j, a-i) O^{1^i} O^j`
pub fn hook_decomposition(a: i64, b: i64) -> Result<Vec<HookTerm>> {
    if a < 1 || b < 1 {
        return Err(QkError::Domain(format!(
            "hook decomposition needs a, b >= 1, got ({a}\\{b})"
        )));
    }
    let cols = (2..=a + 1).map(|i| HookTerm {
        coeff: binom(a - i + b, b - 1),
        factor: HookFactor::Column(i),
    });
    let rows = (2..=b + 1).map(|j| HookTerm {
        coeff: binom(a + b - j, a - 1),
        factor: HookFactor::Row(j),
    });
    let products = (1..=a).flat_map(|i| {
        (1..=b).map(move |j| HookTerm {
            coeff: -binom(a - i + b - j, a - i),
            factor: HookFactor::Product(i, j),
        })
    });
    Ok(cols.chain(rows).chain(products).collect())
}

/// `O^λ · O^{(a\b)}` for a hook fitting the `m x (n-m)` rectangle.
pub fn multiply_by_hook(lambda: &QuantumShape, h: HookParams) -> Result<QLinearCombination> {
    let ctx = lambda.context();
    if h.a < 0 || h.b < 0 {
        return Err(QkError::NegativeHook { a: h.a, b: h.b });
    }
    if !h.fits(ctx) {
        return Err(QkError::HookDoesNotFit {
            a: h.a,
            b: h.b,
            m: ctx.m(),
            k: ctx.k(),
        });
    }
    match (h.a, h.b) {
        (a, 0) => return pieri_col(lambda, a + 1),
        (0, b) => return pieri_row(lambda, b + 1),
        _ => {}
    }
    let terms = hook_decomposition(h.a, h.b)?;
    // Product(i, j) is evaluated as column Pieri first, then row Pieri.
    let col_images: Vec<QLinearCombination> = (1..=h.a)
        .map(|i| pieri_col(lambda, i))
        .collect::<Result<_>>()?;
    let mut out = QLinearCombination::zero(ctx);
    for HookTerm { coeff, factor } in terms {
        let part = match factor {
            HookFactor::Column(i) => pieri_col(lambda, i)?,
            HookFactor::Row(j) => pieri_row(lambda, j)?,
            HookFactor::Product(i, j) => col_images[(i - 1) as usize].apply(|s| pieri_row(s, j))?,
        };
        out.add_scaled(&part, &coeff);
    }
    Ok(out)
}

/// Every support shape `ν` of `O^λ · O^{(a\b)}` satisfies `λ ⊆ ν ⊆ λ[1]`.
pub fn verify_support(lambda: &QuantumShape, h: HookParams) -> Result<bool> {
    let product = multiply_by_hook(lambda, h)?;
    let top = lambda.shift(1);
    for nu in product.support() {
        if !(lambda.is_within(nu)? && nu.is_within(&top)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Translating `λ` by `(r, s)` translates every term of its hook product by
/// the same amount, with unchanged coefficients.
pub fn translation_covariance_check(
    lambda: &QuantumShape,
    h: HookParams,
    r: i64,
    s: i64,
) -> Result<bool> {
    let base = multiply_by_hook(lambda, h)?;
    let moved = multiply_by_hook(&lambda.translate(r, s), h)?;
    if base.len() != moved.len() {
        return Ok(false);
    }
    for (nu, c) in base.iter() {
        if moved.coefficient(&nu.translate(r, s))? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn coefficient(lc: &QLinearCombination, nu: &QuantumShape) -> Result<Integer> {
    lc.coefficient(nu)
}

pub fn normalize(lc: &QLinearCombination) -> Vec<GradedTerm> {
    lc.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize, n: usize) -> GrassContext {
        GrassContext::new(m, n).unwrap()
    }

    fn sh(c: GrassContext, parts: &[i64]) -> QuantumShape {
        QuantumShape::new(c, parts.to_vec()).unwrap()
    }

    fn lc(c: GrassContext, terms: &[(&[i64], i64)]) -> QLinearCombination {
        let mut out = QLinearCombination::zero(c);
        for (p, v) in terms {
            out.add_term(sh(c, p), Integer::from(*v)).unwrap();
        }
        out
    }

    fn hook_shape(c: GrassContext, a: i64, b: i64) -> QuantumShape {
        QuantumShape::from_partition(c, &HookParams::new(a, b).partition().unwrap()).unwrap()
    }

    // Hook action by the recursion (a\b) = (a-1\b) + (a\b-1) - O^{1^a} O^b,
    // evaluating the product row-first.
    fn hook_by_recursion(l: &QuantumShape, a: i64, b: i64) -> QLinearCombination {
        if b == 0 {
            return pieri_col(l, a + 1).unwrap();
        }
        if a == 0 {
            return pieri_row(l, b + 1).unwrap();
        }
        let prod = pieri_row(l, b).unwrap().apply(|s| pieri_col(s, a)).unwrap();
        &(&hook_by_recursion(l, a - 1, b) + &hook_by_recursion(l, a, b - 1)) - &prod
    }

    #[test]
    fn pieri_row_examples() {
        let c = ctx(2, 4);
        assert_eq!(
            pieri_row(&sh(c, &[1, 0]), 1).unwrap(),
            lc(c, &[(&[1, 1], 1), (&[2, 0], 1), (&[2, 1], -1)])
        );
        assert_eq!(
            pieri_row(&sh(c, &[2, 2]), 1).unwrap(),
            lc(c, &[(&[3, 2], 1)])
        );
        let l = sh(ctx(3, 7), &[4, 1, 0]);
        assert_eq!(
            pieri_row(&l, 0).unwrap(),
            QLinearCombination::basis(l.clone())
        );
        assert!(pieri_row(&l, 5).is_err());
        assert!(pieri_row(&l, -1).is_err());
    }

    #[test]
    fn pieri_col_examples() {
        let c = ctx(2, 4);
        let l = sh(c, &[1, 0]);
        assert_eq!(
            pieri_col(&l, 1).unwrap(),
            lc(c, &[(&[1, 1], 1), (&[2, 0], 1), (&[2, 1], -1)])
        );
        assert_eq!(pieri_col(&l, 2).unwrap(), lc(c, &[(&[2, 1], 1)]));
        assert_eq!(
            pieri_col(&l, 0).unwrap(),
            QLinearCombination::basis(l.clone())
        );
        assert!(pieri_col(&l, 3).is_err());
    }

    #[test]
    fn hook_decomposition_examples() {
        use HookFactor::*;
        let f = |v: &[HookTerm]| -> Vec<(i64, HookFactor)> {
            v.iter()
                .map(|t| (i64::try_from(&t.coeff).unwrap(), t.factor))
                .collect()
        };
        assert_eq!(
            f(&hook_decomposition(1, 1).unwrap()),
            vec![(1, Column(2)), (1, Row(2)), (-1, Product(1, 1))]
        );
        assert_eq!(
            f(&hook_decomposition(1, 2).unwrap()),
            vec![
                (1, Column(2)),
                (1, Row(2)),
                (1, Row(3)),
                (-1, Product(1, 1)),
                (-1, Product(1, 2))
            ]
        );
        let d = f(&hook_decomposition(2, 1).unwrap());
        assert!(d.contains(&(-1, Product(1, 1))));
        assert!(hook_decomposition(0, 1).is_err());
        assert!(hook_decomposition(1, 0).is_err());
    }

    #[test]
    fn worked_product() {
        let c = ctx(2, 4);
        let p = multiply_by_hook(&sh(c, &[1, 0]), HookParams::new(1, 1)).unwrap();
        assert_eq!(p, lc(c, &[(&[2, 2], 1), (&[3, 1], 1), (&[3, 2], -1)]));
        assert_eq!(p.coefficient(&sh(c, &[2, 2])).unwrap(), Integer::from(1));
        assert_eq!(p.coefficient(&sh(c, &[1, 0])).unwrap(), Integer::from(0));
        assert_eq!(p.coefficient(&sh(c, &[3, 2])).unwrap(), Integer::from(-1));
        assert!(p.coefficient(&sh(ctx(2, 5), &[1, 0])).is_err());
        let terms = p.normalize();
        let flat: Vec<(Vec<usize>, i64, i64)> = terms
            .iter()
            .map(|t| {
                (
                    t.shape.parts().to_vec(),
                    t.degree,
                    i64::try_from(&t.coeff).unwrap(),
                )
            })
            .collect();
        assert_eq!(
            flat,
            vec![(vec![2, 2], 0, 1), (vec![], 1, 1), (vec![1], 1, -1)]
        );
    }

    #[test]
    fn normalize_examples() {
        let c = ctx(2, 4);
        let n = |terms: &[(&[i64], i64)]| lc(c, terms).normalize();
        assert_eq!(
            n(&[(&[3, 2], -1)]),
            vec![GradedTerm {
                shape: "1".parse().unwrap(),
                degree: 1,
                coeff: Integer::from(-1)
            }]
        );
        assert_eq!(
            n(&[(&[1, 0], 5)]),
            vec![GradedTerm {
                shape: "1".parse().unwrap(),
                degree: 0,
                coeff: Integer::from(5)
            }]
        );
        assert_eq!(
            n(&[(&[3, 1], 1)]),
            vec![GradedTerm {
                shape: Partition::empty(),
                degree: 1,
                coeff: Integer::from(1)
            }]
        );
    }

    #[test]
    fn single_box_hook_is_row_pieri() {
        for c in GrassContext::all_up_to(6) {
            for l in c.classical_shapes() {
                assert_eq!(
                    multiply_by_hook(&l, HookParams::new(0, 0)).unwrap(),
                    pieri_row(&l, 1).unwrap()
                );
                assert!(verify_support(&l, HookParams::new(0, 0)).unwrap());
            }
        }
    }

    #[test]
    fn hook_must_fit() {
        let l = QuantumShape::empty(ctx(2, 4));
        assert!(matches!(
            multiply_by_hook(&l, HookParams::new(2, 0)),
            Err(QkError::HookDoesNotFit { .. })
        ));
        assert!(matches!(
            multiply_by_hook(&l, HookParams::new(0, 2)),
            Err(QkError::HookDoesNotFit { .. })
        ));
        assert!(matches!(
            multiply_by_hook(&l, HookParams::new(-1, 0)),
            Err(QkError::NegativeHook { .. })
        ));
    }

    #[test]
    fn support_and_translation_examples() {
        let c = ctx(2, 4);
        let l = sh(c, &[1, 0]);
        let h = HookParams::new(1, 1);
        assert!(verify_support(&l, h).unwrap());
        assert!(translation_covariance_check(&l, h, 1, 0).unwrap());
        assert!(translation_covariance_check(&l, h, 0, 0).unwrap());
        assert!(translation_covariance_check(&l, h, 3, -2).unwrap());
    }

    #[test]
    fn lemma_decomposition_matches_recursion() {
        for c in GrassContext::all_up_to(7) {
            for l in c.classical_shapes() {
                for a in 0..c.m() as i64 {
                    for b in 0..c.k() as i64 {
                        assert_eq!(
                            multiply_by_hook(&l, HookParams::new(a, b)).unwrap(),
                            hook_by_recursion(&l, a, b),
                            "{c} {l} ({a}\\{b})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn three_term_identity_from_empty_shape() {
        for c in GrassContext::all_up_to(8) {
            let (m, k) = (c.m() as i64, c.k() as i64);
            let empty = QuantumShape::empty(c);
            for i in 1..=m {
                for j in 1..=k {
                    let got = pieri_col(&empty, i)
                        .unwrap()
                        .apply(|s| pieri_row(s, j))
                        .unwrap();
                    if i == m && j == k {
                        // both Seidel translations: q
                        assert_eq!(got, QLinearCombination::basis(empty.shift(1)));
                        continue;
                    }
                    let mut want = QLinearCombination::zero(c);
                    for (a, b, v) in [(i - 1, j, 1), (i, j - 1, 1), (i, j, -1)] {
                        if HookParams::new(a, b).fits(c) {
                            want.add_term(hook_shape(c, a, b), Integer::from(v))
                                .unwrap();
                        }
                    }
                    assert_eq!(got, want, "{c} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn row_and_column_pieri_commute() {
        for c in GrassContext::all_up_to(7) {
            let (m, k) = (c.m() as i64, c.k() as i64);
            for l in c.classical_shapes() {
                let base = QLinearCombination::basis(l.clone());
                for i in 0..=m {
                    for j in 0..=k {
                        let rc = base
                            .apply(|s| pieri_row(s, j))
                            .unwrap()
                            .apply(|s| pieri_col(s, i))
                            .unwrap();
                        let cr = base
                            .apply(|s| pieri_col(s, i))
                            .unwrap()
                            .apply(|s| pieri_row(s, j))
                            .unwrap();
                        assert_eq!(rc, cr, "{c} {l} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn seidel_classes_translate() {
        for c in GrassContext::all_up_to(8) {
            let (m, k) = (c.m() as i64, c.k() as i64);
            for l in c.classical_shapes() {
                for d in [-1, 0, 2] {
                    let l = l.shift(d);
                    assert_eq!(
                        pieri_col(&l, m).unwrap(),
                        QLinearCombination::basis(l.translate(0, 1))
                    );
                    assert_eq!(
                        pieri_row(&l, k).unwrap(),
                        QLinearCombination::basis(l.translate(1, 0))
                    );
                }
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let c = ctx(2, 4);
        let p = lc(c, &[(&[2, 2], 1), (&[3, 1], 2), (&[3, 2], -1)]);
        assert_eq!(p.to_string(), "O(2,2) + 2·O(3,1) - O(3,2)");
        assert_eq!(QLinearCombination::zero(c).to_string(), "0");
    }
}
