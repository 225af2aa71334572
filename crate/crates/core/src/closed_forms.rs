//! Closed formulas for `C_{m,n}(λ, a, b)`, the coefficient of `q O^λ` in
//! `O^λ · O^{(a\b)}`, and the row/column reduction to the staircase.
//!
//! `c(t, a, b)` below always means `C_{t,2t}(ρ_t, a, b)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{QkError, Result};
use crate::integer::{binom, sign, Integer};
use crate::poset::{GrassContext, Partition, QuantumShape};

fn require_t(t: i64) -> Result<()> {
    if t < 1 {
        return Err(QkError::Domain(format!(
            "staircase size t must be >= 1, got {t}"
        )));
    }
    Ok(())
}

/// `c(t,a,b) = Σ_{i=1}^{a} Σ_{j=1}^{b} (-1)^{i+j+1} C(a-i+b-j, a-i) C(t-1, i-1) C(t-1, j-1)`.
pub fn c_double_sum(t: i64, a: i64, b: i64) -> Result<Integer> {
    require_t(t)?;
    let mut acc = Integer::zero();
    for i in 1..=a {
        for j in 1..=b {
            acc += sign(i + j + 1)
                * binom(a - i + b - j, a - i)
                * binom(t - 1, i - 1)
                * binom(t - 1, j - 1);
        }
    }
    Ok(acc)
}

/// `c(t,a,b) = Σ_{i=1}^{a} (-1)^{b+i+1} C(t-1, i-1) C(t-2-a+i, b-1)`.
pub fn c_single_sum(t: i64, a: i64, b: i64) -> Result<Integer> {
    require_t(t)?;
    if a < 0 || b < 0 {
        return Ok(Integer::zero());
    }
    Ok((1..=a)
        .map(|i| sign(b + i + 1) * binom(t - 1, i - 1) * binom(t - 2 - a + i, b - 1))
        .sum())
}

/// Sign-definite form: `(-1)^{a+b+1} Σ_{i=1}^{min(a,b)} C(t-1-i, a-i) C(t-1-i, b-i)`.
///
/// Defined for `0 <= a, b <= t`; negative `a` or `b` give the zero class.
pub fn c_positive(t: i64, a: i64, b: i64) -> Result<Integer> {
    require_t(t)?;
    if a < 0 || b < 0 {
        return Ok(Integer::zero());
    }
    if a > t || b > t {
        return Err(QkError::Domain(format!(
            "c({t},{a},{b}) needs 0 <= a, b <= t"
        )));
    }
    Ok(sign(a + b + 1) * positive_count(t, a, b))
}

/// `Σ_{i=1}^{min(a,b)} C(t-1-i, a-i) C(t-1-i, b-i)`, the magnitude of `c(t, a, b)`.
pub fn positive_count(t: i64, a: i64, b: i64) -> Integer {
    (1..=a.min(b))
        .map(|i| binom(t - 1 - i, a - i) * binom(t - 1 - i, b - i))
        .sum()
}

fn require_fg_domain(a: i64, b: i64) -> Result<()> {
    if a < 2 || b < 1 {
        return Err(QkError::Domain(format!(
            "auxiliary sums need a >= 2 and b >= 1, got a={a}, b={b}"
        )));
    }
    Ok(())
}

/// `f(t,a,b,r) = Σ_{i=1}^{a-1} (-1)^{a+i} C(t-1, i-1) C(t-2-a+r+i, b-1)`.
pub fn f_aux(t: i64, a: i64, b: i64, r: i64) -> Result<Integer> {
    require_fg_domain(a, b)?;
    Ok((1..a)
        .map(|i| sign(a + i) * binom(t - 1, i - 1) * binom(t - 2 - a + r + i, b - 1))
        .sum())
}

/// `g(t,a,b,r) = -C(t-2, a-2) C(t-2+r, b-1) + Σ_{i=1}^{a-1} (-1)^{a+i+1} C(t-2, i-1) C(t-2-a+r+i, b-2)`.
pub fn g_aux(t: i64, a: i64, b: i64, r: i64) -> Result<Integer> {
    require_fg_domain(a, b)?;
    let head = -(binom(t - 2, a - 2) * binom(t - 2 + r, b - 1));
    let tail: Integer = (1..a)
        .map(|i| sign(a + i + 1) * binom(t - 2, i - 1) * binom(t - 2 - a + r + i, b - 2))
        .sum();
    Ok(head + tail)
}

/// `C_{m,n}(λ,a,b) = Σ_{i=1}^{a} Σ_{j=1}^{b} (-1)^{n-i-j-1} C(a-i+b-j, a-i) C(t-1, m-i) C(t-1, n-m-j)`
/// with `t` the number of quantum corners of `λ`.
pub fn c_direct(lambda: &QuantumShape, a: i64, b: i64) -> Integer {
    let ctx = lambda.context();
    let (m, n) = (ctx.m() as i64, ctx.n() as i64);
    let t = lambda.quantum_corners() as i64;
    let mut acc = Integer::zero();
    for i in 1..=a {
        for j in 1..=b {
            acc += sign(n - i - j - 1)
                * binom(a - i + b - j, a - i)
                * binom(t - 1, m - i)
                * binom(t - 1, n - m - j);
        }
    }
    acc
}

/// `C_{m,n}(λ,a,b) = c(t, a-m+t, b-n+m+t)` for classical `λ` with `t`
/// quantum corners, `0 <= a <= m` and `0 <= b <= n-m`.
pub fn c_reduced(lambda: &QuantumShape, a: i64, b: i64) -> Result<Integer> {
    if !lambda.is_classical() {
        return Err(QkError::NotClassical);
    }
    let ctx = lambda.context();
    let (m, k) = (ctx.m() as i64, ctx.k() as i64);
    if !(0..=m).contains(&a) {
        return Err(QkError::OutOfRange {
            what: "a",
            value: a,
            lo: 0,
            hi: m,
        });
    }
    if !(0..=k).contains(&b) {
        return Err(QkError::OutOfRange {
            what: "b",
            value: b,
            lo: 0,
            hi: k,
        });
    }
    let (t, alpha, beta) = reduced_arguments(lambda, a, b);
    c_positive(t, alpha, beta)
}

/// `(t, a - m + t, b - n + m + t)`.
pub fn reduced_arguments(lambda: &QuantumShape, a: i64, b: i64) -> (i64, i64, i64) {
    let ctx = lambda.context();
    let t = lambda.quantum_corners() as i64;
    (t, a - ctx.m() as i64 + t, b - ctx.k() as i64 + t)
}

/// Which kind of repeat [`ReductionState::reduce_step_preferring`] removes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Removal {
    Row,
    Column,
}

/// One stage of removing repeated rows and columns from `λ`, the rectangle
/// and the hook at once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionState {
    pub m: usize,
    pub n: usize,
    pub lambda: Partition,
    pub a: i64,
    pub b: i64,
}

impl ReductionState {
    pub fn new(m: usize, n: usize, lambda: Partition, a: i64, b: i64) -> Result<Self> {
        let ctx = GrassContext::new(m, n)?;
        if !lambda.fits(ctx) {
            return Err(QkError::DoesNotFit(lambda.to_string()));
        }
        Ok(Self { m, n, lambda, a, b })
    }

    pub fn context(&self) -> GrassContext {
        GrassContext::new(self.m, self.n).expect("validated on construction")
    }

    pub fn shape(&self) -> QuantumShape {
        QuantumShape::from_partition(self.context(), &self.lambda)
            .expect("validated on construction")
    }

    pub fn quantum_corners(&self) -> usize {
        self.shape().quantum_corners()
    }

    fn padded(&self) -> Vec<usize> {
        let mut p = self.lambda.parts().to_vec();
        p.resize(self.m, 0);
        p
    }

    /// The column translate of `λ` whose last row is empty.
    pub fn with_empty_last_row(&self) -> Self {
        let p = self.padded();
        let shift = p[self.m - 1];
        let parts = p.into_iter().map(|x| x - shift).collect();
        Self {
            lambda: Partition::new(parts).expect("still decreasing"),
            ..self.clone()
        }
    }

    /// Removes one repeated row, or a repeated column if no row repeats.
    ///
    /// Rows `i` and `i+1` repeat when `λ_i = λ_{i+1}`, and rows `m` and `1`
    /// repeat across the boundary when `λ_1 = n-m` and `λ_m = 0`. A column
    /// repeats when a horizontal run of the boundary path has length at least
    /// two, including the run that wraps from the top-right to the bottom-left.
    pub fn reduce_step(&self) -> Result<Self> {
        self.reduce_step_preferring(Removal::Row)
    }

    /// As [`reduce_step`](Self::reduce_step), trying `first` before the other kind.
    pub fn reduce_step_preferring(&self, first: Removal) -> Result<Self> {
        let (m, k) = (self.m, self.n - self.m);
        let t = self.quantum_corners();
        if t >= m.max(k) {
            return Err(QkError::NoRemovableRepeat);
        }
        let row = t < m && (first == Removal::Row || t >= k);
        if row {
            self.remove_row()
        } else {
            self.remove_column()
        }
    }

    fn remove_row(&self) -> Result<Self> {
        let (m, k) = (self.m, self.n - self.m);
        let mut p = self.padded();
        if let Some(i) = (0..m - 1).find(|&i| p[i] == p[i + 1]) {
            p.remove(i + 1);
        } else {
            debug_assert!(p[0] == k && p[m - 1] == 0);
            p.remove(0);
        }
        Self::new(m - 1, self.n - 1, Partition::new(p)?, self.a - 1, self.b)
    }

    fn remove_column(&self) -> Result<Self> {
        let (m, k) = (self.m, self.n - self.m);
        let mut p = self.padded();
        if let Some(i) = (0..m - 1).find(|&i| p[i] - p[i + 1] >= 2) {
            p[..=i].iter_mut().for_each(|x| *x -= 1);
        } else if p[0] == k {
            debug_assert!(p[m - 1] >= 2);
            p.iter_mut().for_each(|x| *x -= 1);
        }
        // otherwise the wrapped run ends in an empty column at the right edge
        Self::new(m, self.n - 1, Partition::new(p)?, self.a, self.b - 1)
    }

    pub fn is_terminal(&self) -> bool {
        let t = self.quantum_corners();
        t >= self.m.max(self.n - self.m)
    }
}

pub fn reduce_step(s: &ReductionState) -> Result<ReductionState> {
    s.reduce_step()
}

/// Iterates [`ReductionState::reduce_step`] to the staircase. The chain
/// starts from the column translate of the input with an empty last row,
/// which leaves `C` unchanged and makes the final shape exactly `ρ_t`.
pub fn reduction_chain(start: &ReductionState) -> Vec<ReductionState> {
    reduction_chain_preferring(start, Removal::Row)
}

pub fn reduction_chain_preferring(start: &ReductionState, first: Removal) -> Vec<ReductionState> {
    let mut chain = vec![start.with_empty_last_row()];
    loop {
        let last = chain.last().expect("nonempty");
        if last.is_terminal() {
            return chain;
        }
        let next = last
            .reduce_step_preferring(first)
            .expect("non-terminal states reduce");
        chain.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::rho;

    fn i(v: i64) -> Integer {
        Integer::from(v)
    }

    fn shape(m: usize, n: usize, parts: &[i64]) -> QuantumShape {
        QuantumShape::new(GrassContext::new(m, n).unwrap(), parts.to_vec()).unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn double_sum_examples() {
        assert_eq!(c_double_sum(2, 1, 1).unwrap(), i(-1));
        for t in 1..6 {
            for b in 0..=t {
                assert_eq!(c_double_sum(t, 0, b).unwrap(), i(0));
            }
        }
        assert_eq!(c_double_sum(3, 2, 2).unwrap(), i(-2));
        assert!(c_double_sum(0, 1, 1).is_err());
        assert_eq!(c_double_sum(3, -1, 2).unwrap(), i(0));
    }

    #[test]
    fn single_sum_examples() {
        assert_eq!(c_single_sum(2, 1, 1).unwrap(), i(-1));
        for t in 1..6 {
            for a in 0..=t {
                assert_eq!(c_single_sum(t, a, 0).unwrap(), i(0));
            }
        }
        assert_eq!(c_single_sum(3, 1, 2).unwrap(), i(1));
        for t in 2..10 {
            for b in 0..=t {
                assert_eq!(
                    c_single_sum(t, 1, b).unwrap(),
                    sign(b) * binom(t - 2, b - 1)
                );
            }
        }
    }

    #[test]
    fn positive_examples() {
        assert_eq!(c_positive(3, 2, 1).unwrap(), i(1));
        assert_eq!(c_positive(4, 0, 3).unwrap(), i(0));
        assert_eq!(c_positive(3, 2, 2).unwrap(), i(-2));
        assert_eq!(c_positive(5, 5, 5).unwrap(), i(-1));
        assert!(c_positive(3, 4, 1).is_err());
        assert!(c_positive(0, 0, 0).is_err());
        assert_eq!(c_positive(3, -1, 2).unwrap(), i(0));
    }

    #[test]
    fn auxiliary_examples() {
        for t in -3..8 {
            for b in 1..6 {
                for r in -3..4 {
                    assert_eq!(f_aux(t, 2, b, r).unwrap(), -binom(t - 3 + r, b - 1));
                    assert_eq!(
                        g_aux(t, 2, b, r).unwrap(),
                        -binom(t - 2 + r, b - 1) + binom(t - 3 + r, b - 2)
                    );
                }
            }
        }
        assert_eq!(f_aux(4, 3, 2, 0).unwrap(), i(-3));
        assert_eq!(g_aux(4, 3, 2, 0).unwrap(), i(-3));
        assert!(f_aux(4, 1, 2, 0).is_err());
        assert!(g_aux(4, 2, 0, 0).is_err());
    }

    #[test]
    fn direct_examples() {
        let l = shape(2, 4, &[1, 0]);
        assert_eq!(c_direct(&l, 1, 1), i(-1));
        assert_eq!(c_direct(&l, 0, 1), i(0));
        assert_eq!(c_direct(&l, 1, 0), i(0));
        let l = shape(4, 8, &[3, 3, 2, 0]);
        assert_eq!(c_direct(&l, 2, 2), c_positive(3, 1, 1).unwrap());
        assert_eq!(c_direct(&l, 2, 2), i(-1));
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(c_reduced(&shape(2, 4, &[1, 0]), 1, 1).unwrap(), i(-1));
        assert_eq!(c_reduced(&shape(4, 8, &[3, 3, 2, 0]), 1, 1).unwrap(), i(0));
        let fig = shape(5, 9, &[3, 3, 2, 0, 0]);
        assert_eq!(reduced_arguments(&fig, 4, 2), (3, 2, 1));
        assert_eq!(c_reduced(&fig, 4, 2).unwrap(), i(1));
        assert_eq!(
            c_reduced(&shape(2, 4, &[3, 2]), 1, 1),
            Err(QkError::NotClassical)
        );
        assert!(c_reduced(&shape(2, 4, &[1, 0]), 3, 1).is_err());
        assert!(c_reduced(&shape(2, 4, &[1, 0]), 1, -1).is_err());
    }

    #[test]
    fn reduction_of_figure_instance() {
        let s = ReductionState::new(5, 9, part(&[3, 3, 2]), 4, 2).unwrap();
        let first = s.reduce_step().unwrap();
        assert_eq!(
            first,
            ReductionState::new(4, 8, part(&[3, 2]), 3, 2).unwrap()
        );
        let chain = reduction_chain(&s);
        let last = chain.last().unwrap();
        assert_eq!(
            *last,
            ReductionState::new(3, 6, part(&[2, 1]), 2, 1).unwrap()
        );
        assert!(last.reduce_step().is_err());
        let (ctx, r3) = rho(3).unwrap();
        assert_eq!(last.context(), ctx);
        assert_eq!(last.shape(), r3);
    }

    #[test]
    fn staircase_is_terminal() {
        for t in 1..7 {
            let s = ReductionState::new(
                t,
                2 * t,
                rho(t as i64).unwrap().1.to_partition().unwrap(),
                1,
                1,
            )
            .unwrap();
            assert_eq!(s.reduce_step(), Err(QkError::NoRemovableRepeat));
        }
    }

    #[test]
    fn formulas_agree() {
        for t in 1..=12 {
            for a in 0..=t {
                for b in 0..=t {
                    let d = c_double_sum(t, a, b).unwrap();
                    assert_eq!(d, c_single_sum(t, a, b).unwrap(), "t={t} a={a} b={b}");
                    assert_eq!(d, c_positive(t, a, b).unwrap(), "t={t} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn f_equals_g() {
        for t in -5..=8 {
            for a in 2..=8 {
                for b in 1..=8 {
                    for r in -5..=5 {
                        assert_eq!(f_aux(t, a, b, r).unwrap(), g_aux(t, a, b, r).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn leading_term_plus_f() {
        for t in 1..=12 {
            for a in 2..=t {
                for b in 1..=t {
                    let s = sign(a + b + 1);
                    let rhs = &s * binom(t - 1, a - 1) * binom(t - 2, b - 1)
                        + &s * f_aux(t, a, b, 0).unwrap();
                    assert_eq!(c_single_sum(t, a, b).unwrap(), rhs);
                }
            }
        }
    }

    #[test]
    fn symmetry_sign_and_recursion() {
        for t in 1..=12 {
            for a in 0..=t {
                for b in 0..=t {
                    let c = c_positive(t, a, b).unwrap();
                    assert_eq!(c, c_positive(t, b, a).unwrap());
                    assert!(sign(a + b + 1) * &c >= i(0));
                    if t >= 2 && a >= 1 && b >= 1 {
                        let rec = sign(a + b + 1) * binom(t - 2, a - 1) * binom(t - 2, b - 1)
                            + c_positive(t - 1, a - 1, b - 1).unwrap();
                        assert_eq!(c, rec, "t={t} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_chains_end_at_staircase() {
        for ctx in GrassContext::all_up_to(9) {
            for l in ctx.classical_shapes() {
                let p = l.to_partition().unwrap();
                for a in 0..=ctx.m() as i64 {
                    for b in 0..=ctx.k() as i64 {
                        let start = ReductionState::new(ctx.m(), ctx.n(), p.clone(), a, b).unwrap();
                        let want = c_direct(&l, a, b);
                        let (t, alpha, beta) = reduced_arguments(&l, a, b);
                        for first in [Removal::Row, Removal::Column] {
                            let chain = reduction_chain_preferring(&start, first);
                            for s in &chain {
                                assert_eq!(s.quantum_corners() as i64, t);
                                assert_eq!(c_direct(&s.shape(), s.a, s.b), want);
                            }
                            let last = chain.last().unwrap();
                            let (rctx, r) = rho(t).unwrap();
                            assert_eq!((last.context(), last.shape()), (rctx, r), "{ctx} {p}");
                            assert_eq!((last.a, last.b), (alpha, beta));
                        }
                    }
                }
            }
        }
    }
}
