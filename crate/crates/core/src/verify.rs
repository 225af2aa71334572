//! Verification sweeps cross-checking the Pieri engine, the closed forms and
//! the tableau oracle. Cases run in parallel; reports keep input order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::json;

use crate::closed_forms::{
    c_direct, c_double_sum, c_positive, c_reduced, c_single_sum, f_aux, g_aux, reduced_arguments,
    reduction_chain, reduction_chain_preferring, ReductionState, Removal,
};
use crate::error::{QkError, Result};
use crate::integer::{binom, sign, Integer};
use crate::poset::{GrassContext, HookParams, QuantumShape};
use crate::report::{CaseRecord, VerificationReport};
use crate::ring::{multiply_by_hook, translation_covariance_check, GradedTerm};
use crate::tableaux::{lr_coefficient, marked_pair_count, staircase, staircase_top_content};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    PieriVsClosedForm,
    FormulaAgreement,
    FEqualsG,
    Support,
    Signs,
    Translation,
    LrClassical,
    MarkedPairs,
    ReductionChain,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::PieriVsClosedForm,
        Suite::FormulaAgreement,
        Suite::FEqualsG,
        Suite::Support,
        Suite::Signs,
        Suite::Translation,
        Suite::LrClassical,
        Suite::MarkedPairs,
        Suite::ReductionChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PieriVsClosedForm => "pieri-vs-closed-form",
            Suite::FormulaAgreement => "formula-agreement",
            Suite::FEqualsG => "f-equals-g",
            Suite::Support => "support",
            Suite::Signs => "signs",
            Suite::Translation => "translation",
            Suite::LrClassical => "lr-classical",
            Suite::MarkedPairs => "marked-pairs",
            Suite::ReductionChain => "reduction-chain",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = QkError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| QkError::Parse(format!("unknown suite {s:?}")))
    }
}

/// Range bounds; unset fields take per-suite defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepParams {
    pub max_n: Option<usize>,
    pub max_t: Option<i64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

const DEFAULT_SEED: u64 = 20240611;

/// Largest hook `a + b + 1` used by the classical tableau cross-check.
pub const LR_MAX_HOOK: i64 = 5;

pub fn run(suite: Suite, p: SweepParams) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut params = BTreeMap::new();
    let cases = match suite {
        Suite::PieriVsClosedForm => {
            let n = p.max_n.unwrap_or(8);
            params.insert("max_n".into(), n as i64);
            pieri_vs_closed_form(n)?
        }
        Suite::FormulaAgreement => {
            let t = p.max_t.unwrap_or(12);
            params.insert("max_t".into(), t);
            formula_agreement(t)?
        }
        Suite::FEqualsG => {
            let t = p.max_t.unwrap_or(8);
            params.insert("max_t".into(), t);
            f_equals_g(t)?
        }
        Suite::Support => {
            let n = p.max_n.unwrap_or(8);
            params.insert("max_n".into(), n as i64);
            support(n)?
        }
        Suite::Signs => {
            let n = p.max_n.unwrap_or(8);
            params.insert("max_n".into(), n as i64);
            signs(n)?
        }
        Suite::Translation => {
            let n = p.max_n.unwrap_or(7);
            let samples = p.samples.unwrap_or(256);
            let seed = p.seed.unwrap_or(DEFAULT_SEED);
            params.insert("max_n".into(), n as i64);
            params.insert("samples".into(), samples as i64);
            params.insert("seed".into(), seed as i64);
            translation(n, samples, seed)?
        }
        Suite::LrClassical => {
            let n = p.max_n.unwrap_or(7);
            let t = p.max_t.unwrap_or(5);
            params.insert("max_n".into(), n as i64);
            params.insert("max_t".into(), t);
            params.insert("max_hook_size".into(), LR_MAX_HOOK);
            lr_classical(n, t)?
        }
        Suite::MarkedPairs => {
            let t = p.max_t.unwrap_or(5);
            params.insert("max_t".into(), t);
            marked_pairs(t)?
        }
        Suite::ReductionChain => {
            let n = p.max_n.unwrap_or(9);
            params.insert("max_n".into(), n as i64);
            reduction(n)?
        }
    };
    Ok(VerificationReport::new(
        suite.name(),
        params,
        cases,
        start.elapsed(),
    ))
}

fn flatten(v: Vec<Vec<CaseRecord>>) -> Vec<CaseRecord> {
    v.into_iter().flatten().collect()
}

/// Every `(context, classical λ, fitting hook)` with `2 <= n <= max_n`.
pub fn classical_instances(max_n: usize) -> Vec<(QuantumShape, HookParams)> {
    let mut out = Vec::new();
    for ctx in GrassContext::all_up_to(max_n) {
        for l in ctx.classical_shapes() {
            for a in 0..ctx.m() as i64 {
                for b in 0..ctx.k() as i64 {
                    out.push((l.clone(), HookParams::new(a, b)));
                }
            }
        }
    }
    out
}

fn instance_json(l: &QuantumShape, h: HookParams) -> serde_json::Value {
    let c = l.context();
    json!({"m": c.m(), "n": c.n(), "shape": l.parts(), "a": h.a, "b": h.b})
}

fn pieri_vs_closed_form(max_n: usize) -> Result<Vec<CaseRecord>> {
    classical_instances(max_n)
        .par_iter()
        .map(|(l, h)| {
            let product = multiply_by_hook(l, *h)?;
            let pieri = product.coefficient(&l.shift(1))?;
            Ok(CaseRecord::new(
                instance_json(l, *h),
                vec![
                    ("pieri", pieri),
                    ("c_reduced", c_reduced(l, h.a, h.b)?),
                    ("c_direct", c_direct(l, h.a, h.b)),
                ],
            ))
        })
        .collect()
}

fn formula_agreement(max_t: i64) -> Result<Vec<CaseRecord>> {
    let grid: Vec<(i64, i64, i64)> = (1..=max_t)
        .flat_map(|t| (0..=t).flat_map(move |a| (0..=t).map(move |b| (t, a, b))))
        .collect();
    grid.par_iter()
        .map(|&(t, a, b)| {
            Ok(CaseRecord::new(
                json!({"t": t, "a": a, "b": b}),
                vec![
                    ("double_sum", c_double_sum(t, a, b)?),
                    ("single_sum", c_single_sum(t, a, b)?),
                    ("positive", c_positive(t, a, b)?),
                ],
            ))
        })
        .collect()
}

fn f_equals_g(max_t: i64) -> Result<Vec<CaseRecord>> {
    let mut grid = Vec::new();
    for t in -5..=max_t {
        for a in 2..=8 {
            for b in 1..=8 {
                for r in -5..=5 {
                    grid.push((t, a, b, r));
                }
            }
        }
    }
    grid.par_iter()
        .map(|&(t, a, b, r)| {
            Ok(CaseRecord::new(
                json!({"t": t, "a": a, "b": b, "r": r}),
                vec![("f", f_aux(t, a, b, r)?), ("g", g_aux(t, a, b, r)?)],
            ))
        })
        .collect()
}

/// Number of terms of `O^λ O^{(a\b)}`, and how many satisfy `λ ⊆ ν ⊆ λ[1]` with `ν/λ` a rim.
fn support(max_n: usize) -> Result<Vec<CaseRecord>> {
    classical_instances(max_n)
        .par_iter()
        .map(|(l, h)| {
            let product = multiply_by_hook(l, *h)?;
            let top = l.shift(1);
            let mut lawful = 0usize;
            for nu in product.support() {
                let rim = crate::poset::SkewShape::new(nu, l)
                    .map(|s| s.is_rim())
                    .unwrap_or(false);
                if l.is_within(nu)? && nu.is_within(&top)? && rim {
                    lawful += 1;
                }
            }
            Ok(CaseRecord::new(
                instance_json(l, *h),
                vec![
                    ("terms", Integer::from(product.len())),
                    ("lawful", Integer::from(lawful)),
                ],
            ))
        })
        .collect()
}

/// `(-1)^{|ν| + dn - |λ| - (a+b+1)} N >= 0` and `d ∈ {0, 1}` for every term `q^d O^ν`.
pub fn term_obeys_sign_law(l: &QuantumShape, h: HookParams, t: &GradedTerm) -> bool {
    let n = l.context().n() as i64;
    let e = t.shape.size() as i64 + t.degree * n - l.size() - h.size();
    (0..=1).contains(&t.degree) && !(sign(e) * &t.coeff).is_negative()
}

fn signs(max_n: usize) -> Result<Vec<CaseRecord>> {
    classical_instances(max_n)
        .par_iter()
        .map(|(l, h)| {
            let terms = multiply_by_hook(l, *h)?.normalize();
            let ok = terms
                .iter()
                .filter(|t| term_obeys_sign_law(l, *h, t))
                .count();
            Ok(CaseRecord::new(
                instance_json(l, *h),
                vec![
                    ("terms", Integer::from(terms.len())),
                    ("lawful", Integer::from(ok)),
                ],
            ))
        })
        .collect()
}

/// A random quantum shape of `ctx`: a classical shape moved by a random translation.
fn random_shape(rng: &mut StdRng, ctx: GrassContext) -> QuantumShape {
    let shapes = ctx.classical_shapes();
    let base = &shapes[rng.random_range(0..shapes.len())];
    let (m, n) = (ctx.m() as i64, ctx.n() as i64);
    base.translate(rng.random_range(-2 * m..=2 * m), rng.random_range(-n..=n))
}

fn translation(max_n: usize, samples: usize, seed: u64) -> Result<Vec<CaseRecord>> {
    let contexts = GrassContext::all_up_to(max_n);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut inst = Vec::with_capacity(samples);
    for _ in 0..samples {
        let ctx = contexts[rng.random_range(0..contexts.len())];
        let l = random_shape(&mut rng, ctx);
        let h = HookParams::new(
            rng.random_range(0..ctx.m() as i64),
            rng.random_range(0..ctx.k() as i64),
        );
        let (m, n) = (ctx.m() as i64, ctx.n() as i64);
        let r = rng.random_range(-2 * m..=2 * m);
        let s = rng.random_range(-2 * n..=2 * n);
        inst.push((l, h, r, s));
    }
    inst.par_iter()
        .map(|(l, h, r, s)| {
            let ok = translation_covariance_check(l, *h, *r, *s)?;
            let mut input = instance_json(l, *h);
            input["r"] = json!(r);
            input["s"] = json!(s);
            Ok(CaseRecord::new(
                input,
                vec![
                    ("expected", Integer::from(1)),
                    ("covariant", Integer::from(ok as u8)),
                ],
            ))
        })
        .collect()
}

fn lr_classical(max_n: usize, max_t: i64) -> Result<Vec<CaseRecord>> {
    let inst = classical_instances(max_n);
    let small: Vec<_> = inst
        .iter()
        .filter(|(_, h)| h.size() <= LR_MAX_HOOK)
        .collect();
    let degree_zero = small
        .par_iter()
        .map(|(l, h)| {
            let ctx = l.context();
            let terms = multiply_by_hook(l, *h)?.normalize();
            let lp = l.to_partition()?;
            let hp = h.partition()?;
            let mut out = Vec::new();
            for nu in ctx.classical_shapes() {
                let np = nu.to_partition()?;
                let pieri = terms
                    .iter()
                    .find(|t| t.degree == 0 && t.shape == np)
                    .map_or_else(Integer::zero, |t| t.coeff.clone());
                let mut input = instance_json(l, *h);
                input["nu"] = json!(np);
                out.push(CaseRecord::new(
                    input,
                    vec![("pieri", pieri), ("lr", lr_coefficient(&lp, &hp, &np))],
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let broken = inst
        .par_iter()
        .map(|(l, h)| broken_rim_cases(l, *h))
        .collect::<Result<Vec<_>>>()?;

    let prop_inst: Vec<(i64, i64, i64)> = (1..=max_t)
        .flat_map(|t| (0..t).flat_map(move |a| (0..t).map(move |b| (t, a, b))))
        .collect();
    let staircase_cases = prop_inst
        .par_iter()
        .map(|&(t, a, b)| {
            let tu = t as usize;
            let nu = staircase_top_content(tu);
            let h = HookParams::new(a, b);
            let ctx = GrassContext::new(tu, 2 * tu)?;
            let rho = QuantumShape::from_partition(ctx, &staircase(tu))?;
            let pieri = multiply_by_hook(&rho, h)?
                .normalize()
                .into_iter()
                .find(|g| g.degree == 0 && g.shape == nu)
                .map_or_else(Integer::zero, |g| g.coeff);
            Ok(CaseRecord::new(
                json!({"t": t, "a": a, "b": b, "nu": nu}),
                vec![
                    ("lr", lr_coefficient(&staircase(tu), &h.partition()?, &nu)),
                    (
                        "formula",
                        sign(a + b) * binom(t - 2, a - 1) * binom(t - 2, b - 1),
                    ),
                    ("pieri", pieri),
                ],
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = flatten(degree_zero);
    out.extend(flatten(broken));
    out.extend(staircase_cases);
    Ok(out)
}

/// For every term `ν ≠ λ[1]`, translate the pair so a maximal box of `λ[1]`
/// missing from `ν` lands on `(1, n-m+1)`; both shapes become classical and
/// the coefficient is a classical K-theory constant.
fn broken_rim_cases(l: &QuantumShape, h: HookParams) -> Result<Vec<CaseRecord>> {
    let ctx = l.context();
    let k = ctx.k() as i64;
    let top = l.shift(1);
    let hp = h.partition()?;
    let mut out = Vec::new();
    for (nu, coeff) in multiply_by_hook(l, h)?.iter() {
        if *nu == top {
            continue;
        }
        let r = (1..=ctx.m() as i64)
            .find(|&r| top.row_end(r) > top.row_end(r + 1) && !nu.contains_box(r, top.row_end(r)))
            .ok_or_else(|| QkError::Domain(format!("no maximal box of {top} outside {nu}")))?;
        let c = top.row_end(r);
        let (dr, dc) = (1 - r, k + 1 - c);
        let lp = l.translate(dr, dc).to_partition()?;
        let np = nu.translate(dr, dc).to_partition()?;
        let mut input = instance_json(l, h);
        input["term"] = json!(nu.parts());
        out.push(CaseRecord::new(
            input,
            vec![
                ("pieri", coeff.clone()),
                ("lr_translated", lr_coefficient(&lp, &hp, &np)),
            ],
        ));
    }
    Ok(out)
}

fn marked_pairs(max_t: i64) -> Result<Vec<CaseRecord>> {
    let grid: Vec<(i64, i64, i64)> = (1..=max_t)
        .flat_map(|t| (0..t).flat_map(move |a| (0..t).map(move |b| (t, a, b))))
        .collect();
    grid.par_iter()
        .map(|&(t, a, b)| {
            let c = c_positive(t, a, b)?;
            Ok(CaseRecord::new(
                json!({"t": t, "a": a, "b": b}),
                vec![
                    ("marked_pairs", marked_pair_count(t, a, b)?),
                    ("abs_c_positive", c.abs()),
                    ("signed_c_positive", sign(a + b + 1) * c),
                ],
            ))
        })
        .collect()
}

fn reduction(max_n: usize) -> Result<Vec<CaseRecord>> {
    let mut inst = Vec::new();
    for ctx in GrassContext::all_up_to(max_n) {
        for l in ctx.classical_shapes() {
            for a in 0..=ctx.m() as i64 {
                for b in 0..=ctx.k() as i64 {
                    inst.push((l.clone(), HookParams::new(a, b)));
                }
            }
        }
    }
    inst.par_iter()
        .map(|(l, h)| {
            let ctx = l.context();
            let start = ReductionState::new(ctx.m(), ctx.n(), l.to_partition()?, h.a, h.b)?;
            let chain = reduction_chain(&start);
            let end = chain.last().expect("nonempty");
            let (t, _, _) = reduced_arguments(l, h.a, h.b);
            let mut values = vec![
                ("c_direct_start", c_direct(l, h.a, h.b)),
                ("c_direct_end", c_direct(&end.shape(), end.a, end.b)),
                ("c_positive_end", c_positive(t, end.a, end.b)?),
            ];
            let alt = reduction_chain_preferring(&start, Removal::Column);
            let alt_end = alt.last().expect("nonempty");
            values.push((
                "c_direct_end_columns_first",
                c_direct(&alt_end.shape(), alt_end.a, alt_end.b),
            ));
            if h.fits(ctx) {
                values.push(("pieri", multiply_by_hook(l, *h)?.coefficient(&l.shift(1))?));
            }
            let mut input = instance_json(l, *h);
            input["steps"] = json!(chain.len() - 1);
            Ok(CaseRecord::new(input, values))
        })
        .collect()
}
