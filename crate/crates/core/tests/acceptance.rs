//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All identities are compared exactly over Q(√2, i). The only tolerances are
//! the wall-clock budgets below.

use std::time::{Duration, Instant};

use cubic_dirac::dirac::{bracket_identities, compare_embedding, omega_identities, RhsOptions};
use cubic_dirac::modules::WeightModule;
use cubic_dirac::spectral::{
    CandidateScan, GPrimeLabel, LRepLabel, PeterWeylBlock, Sl2Spectral, SpinLabel, DEFAULT_TRUNCATION, SCAN_RANGE,
};
use cubic_dirac::suites;
use cubic_dirac::{ExactScalar, Result};

const CLIFFORD_BUDGET: Duration = Duration::from_secs(1);
const BRACKET_BUDGET: Duration = Duration::from_secs(1);
const EMBEDDING_BUDGET: Duration = Duration::from_secs(10);
const DS_KERNEL_BUDGET: Duration = Duration::from_secs(5);
const TRUNCATION: usize = 40;
const MAX_M: i64 = 5;

struct Outcome {
    id: u8,
    name: &'static str,
    ok: bool,
    details: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn check(id: u8, name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let (ok, details) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, name, ok, details }
}

fn within(t: Duration, budget: Duration) -> (bool, String) {
    (t < budget, format!("{:.3}s of {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
}

fn clifford_axioms() -> Result<(bool, String)> {
    let ((rel, assoc), t) = timed(|| (suites::clifford_relations(), suites::clifford_associativity()));
    let ((r_ok, r), (a_ok, a)) = (rel?, assoc?);
    let (t_ok, ts) = within(t, CLIFFORD_BUDGET);
    Ok((r_ok && a_ok && t_ok, format!("{r}; {a}; {ts}")))
}

fn alpha_brackets(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let pairs = ctx.triple().pairs()?;
    let (res, t) = timed(|| pairs.iter().map(suites::alpha_bracket).collect::<Result<Vec<_>>>());
    let res = res?;
    let (t_ok, ts) = within(t, BRACKET_BUDGET);
    let names: Vec<&str> = pairs.iter().map(|p| p.name()).collect();
    Ok((res.iter().all(|r| r.0) && t_ok, format!("pairs {names:?}; {ts}")))
}

fn alpha_morphism_and_restriction(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let mut ok = true;
    for p in ctx.triple().pairs()? {
        ok &= suites::alpha_morphism(&p)?.0;
    }
    let (r_ok, r) = suites::alpha_restriction(ctx.triple())?;
    Ok((ok && r_ok, format!("morphism on all pairs: {ok}; restriction: {r}")))
}

fn spin_factors(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let (i_ok, i) = suites::spin_intertwining(&ctx.setup)?;
    let (d_ok, _) = suites::spin_decomposition(&ctx.setup)?;
    let dims = (ctx.setup.s_ls.dim(), ctx.setup.s_qlp.dim());
    Ok((i_ok && d_ok && dims == (2, 1), format!("spin factor dims {dims:?}; intertwining {i}; decomposition {d_ok}")))
}

fn omega(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let t = ctx.triple();
    let w = omega_identities(t)?;
    let b = bracket_identities(t)?;
    let w_ok = w.len() == 27 && w.iter().all(|i| i.lhs == i.rhs);
    let b_ok = b.iter().all(|i| i.lhs == i.rhs);
    Ok((w_ok && b_ok, format!("{} omega triples, {} bracket identities", w.len(), b.len())))
}

fn embedding(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let (res, t) = timed(|| -> Result<(bool, bool)> {
        let mut holds = true;
        let mut control_fails = true;
        for m in 0..=MAX_M as usize {
            let e = WeightModule::sl2_irrep(2 * m);
            for form in [1, 2] {
                holds &= compare_embedding(&ctx.setup, &e, form, &RhsOptions::default())?.holds();
            }
            let perturbed = RhsOptions {
                cubic_override: Some(ExactScalar::int(-1)),
            };
            control_fails &= !compare_embedding(&ctx.setup, &e, 2, &perturbed)?.holds();
        }
        Ok((holds, control_fails))
    });
    let (holds, control_fails) = res?;
    let (t_ok, ts) = within(t, EMBEDDING_BUDGET);
    Ok((
        holds && control_fails && t_ok,
        format!("both forms for m = 0..{MAX_M}: {holds}; perturbed cubic coefficient rejected: {control_fails}; {ts}"),
    ))
}

fn block_eigenvalues(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let hosts = [WeightModule::sl2_irrep(20), WeightModule::sl2_irrep(19)];
    let denom = (&ExactScalar::int(2) * &ExactScalar::sqrt2()).inv().expect("nonzero");
    for a in -10..=10i64 {
        for b in -10..=10i64 {
            let blk = PeterWeylBlock::new(a, b, SpinLabel::One, &hosts[(a + b).rem_euclid(2) as usize])?;
            let got = ctx.block_eigenvalue(&blk)?;
            if got != &ExactScalar::int(a - b) * &denom {
                return Ok((false, format!("({a},{b}) gives {}", got.compact())));
            }
        }
    }
    Ok((true, "(a-b)/(2*r2) for |a|,|b| <= 10".into()))
}

fn cancellation(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let mut ok = true;
    let mut shown = Vec::new();
    for w in 0..=6 {
        let out = ctx.cubic_cancellation(&WeightModule::sl2_irrep(w))?;
        ok &= out.holds() && out.blocks.is_empty() == (w % 2 == 1);
        shown.push(format!("{w}:{}", out.blocks.len()));
    }
    Ok((ok, format!("k=-2 blocks per highest weight {}", shown.join(" "))))
}

fn kernel_dh(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    for m in 0..=MAX_M {
        let k = ctx.kernel_dh(&WeightModule::sl2_irrep(2 * m as usize))?;
        let mut expected = vec![(2 * m, "e".to_string()), (-2 * m, "1".to_string())];
        expected.sort();
        if k != expected {
            return Ok((false, format!("m = {m}: {k:?}")));
        }
    }
    Ok((true, format!("dimension 2 for m = 0..{MAX_M}")))
}

fn ds_kernels(ctx: &Sl2Spectral) -> Result<(bool, String, Option<CandidateScan>)> {
    let (res, t) = timed(|| -> Result<(bool, CandidateScan)> {
        let scan = ctx.scan_candidates(TRUNCATION)?;
        let mut ok = true;
        for m in 0..=MAX_M {
            let hw = ctx.dirac_kernel(&WeightModule::highest_weight_module(-m - 2, TRUNCATION)?)?;
            let lw = if m == 0 {
                ctx.dirac_kernel(&WeightModule::sl2_irrep(0))?
            } else {
                ctx.dirac_kernel(&WeightModule::lowest_weight_module(m, TRUNCATION)?)?
            };
            ok &= hw.contains(-m - 1, "e") && lw.contains(m - 1, "1");
            let hits: Vec<i64> = scan.highest.iter().filter(|(_, k)| k.contains(-m - 1, "e")).map(|(n, _)| *n).collect();
            ok &= hits == [-m - 2];
        }
        Ok((ok, scan))
    });
    let (ok, scan) = res?;
    let (t_ok, ts) = within(t, DS_KERNEL_BUDGET);
    Ok((
        ok && t_ok,
        format!("N = {TRUNCATION}, scan over nu in -{SCAN_RANGE}..-1 with one hit per m; {ts}"),
        Some(scan),
    ))
}

fn expected_row(m: i64) -> Vec<LRepLabel> {
    use GPrimeLabel::*;
    let lab = |gprime, kprime| LRepLabel { gprime, kprime };
    match m {
        0 => vec![lab(DsPlus(2), -1), lab(Trivial, -1)],
        1 => vec![lab(DsPlus(3), 0), lab(LdsMinus, -2)],
        _ => vec![lab(DsPlus(m + 2), m - 1), lab(DsMinus(-m), -m - 1)],
    }
}

fn table(ctx: &Sl2Spectral, scan: &CandidateScan) -> Result<(bool, String)> {
    let mut ok = true;
    let mut shown = Vec::new();
    for m in 0..=MAX_M {
        let row = ctx.representation_table(m, scan)?;
        ok &= row.labels == expected_row(m);
        // each label comes from exactly one scan hit
        ok &= row.evidence.len() == row.labels.len();
        shown.push(row.to_json_rows().to_string());
    }
    Ok((ok, shown.join(" ")))
}

fn basis_independence(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    for w in 0..=2 * MAX_M as usize {
        let (ok, d) = suites::basis_independence(ctx, &WeightModule::sl2_irrep(w))?;
        if !ok {
            return Ok((false, format!("weight {w}: {d}")));
        }
    }
    Ok((true, format!("highest weights 0..{}", 2 * MAX_M)))
}

#[test]
fn acceptance() {
    assert_eq!(TRUNCATION, DEFAULT_TRUNCATION);
    let ctx = Sl2Spectral::new().expect("triple builds");
    let mut out = vec![
        check(1, "clifford axioms", clifford_axioms),
        check(2, "alpha bracket on all pairs", || alpha_brackets(&ctx)),
        check(3, "alpha morphism and restriction", || alpha_morphism_and_restriction(&ctx)),
        check(4, "spin intertwining and decomposition", || spin_factors(&ctx)),
        check(5, "omega coefficients", || omega(&ctx)),
        check(6, "embedding identity", || embedding(&ctx)),
        check(7, "cubic scalar", || suites::cubic_scalar_check(&ctx)),
    ];
    let (ds_ok, ds_details, scan) = ds_kernels(&ctx).unwrap_or_else(|e| (false, format!("error: {e}"), None));
    out.push(check(8, "block eigenvalues", || block_eigenvalues(&ctx)));
    out.push(check(9, "cubic cancellation", || cancellation(&ctx)));
    out.push(check(10, "kernel of D_h", || kernel_dh(&ctx)));
    out.push(Outcome { id: 11, name: "discrete series kernels", ok: ds_ok, details: ds_details });
    match &scan {
        Some(scan) => out.push(check(12, "representation table", || table(&ctx, scan))),
        None => out.push(Outcome { id: 12, name: "representation table", ok: false, details: "no scan".into() }),
    }
    out.push(check(13, "basis independence", || basis_independence(&ctx)));

    for o in &out {
        println!("{} [{:>2}] {}: {}", if o.ok { "PASS" } else { "FAIL" }, o.id, o.name, o.details);
    }
    let failed: Vec<u8> = out.iter().filter(|o| !o.ok).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
