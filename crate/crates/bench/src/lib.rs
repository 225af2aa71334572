//! Shared workloads for the criterion benchmarks.

use qkhook_core::{GrassContext, HookParams, QuantumShape};

/// Every `(λ, hook)` pair with `λ` classical and the hook fitting, in `ctx`.
pub fn hook_workload(ctx: GrassContext) -> Vec<(QuantumShape, HookParams)> {
    let mut out = Vec::new();
    for l in ctx.classical_shapes() {
        for a in 0..ctx.m() as i64 {
            for b in 0..ctx.k() as i64 {
                out.push((l.clone(), HookParams::new(a, b)));
            }
        }
    }
    out
}
