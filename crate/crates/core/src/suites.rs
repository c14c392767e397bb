//! Verification suites behind the `verify` and `table64` commands.
//!
//! Every check is computed from the library objects; expected values appear
//! only as oracles to compare against.

use std::sync::Arc;

use crate::clifford::{CliffordElement, QuadraticSpace, ReductivePair};
use crate::dirac::{bracket_identities, compare_embedding, omega_identities, DiracSetup, FormalDiracElement, RhsOptions, Symbol};
use crate::error::Result;
use crate::lie::unit_vector;
use crate::linalg::{vec_sub, ExactMatrix};
use crate::modules::WeightModule;
use crate::report::CheckResult;
use crate::scalar::ExactScalar;
use crate::spectral::{
    CandidateScan, CharacterLabel, GPrimeLabel, LRepLabel, PeterWeylBlock, Sl2Spectral, SpinLabel, TableRow,
};
use crate::spin::{intertwines, SpinModule};
use crate::triple::{build_sl2_triple, TripleData, SL2_TRIPLE_TEXT};

/// Runs a fallible check, turning an error into a failing result.
fn run(suite: &str, check: &str, anchor: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match f() {
        Ok((ok, details)) => CheckResult::new(suite, check, ok, details, anchor),
        Err(e) => CheckResult::from_error(suite, check, &e, anchor),
    }
}

/// Every quadratic space the library builds: all signatures in dimensions
/// 1 to 6, the spaces of the SL(2,R) triple and `s′`.
pub fn constructed_spaces() -> Result<Vec<Arc<QuadraticSpace>>> {
    let mut out = Vec::new();
    for n in 1..=6usize {
        for p in 0..=n {
            let signs: Vec<i8> = (0..n).map(|i| if i < p { 1 } else { -1 }).collect();
            let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
            out.push(QuadraticSpace::new(format!("R({p},{})", n - p), labels, signs)?);
        }
    }
    let t = build_sl2_triple();
    out.extend([t.ql_space()?, t.ql_prime_space()?, t.ls_space()?, t.q_space()?, t.hs_space()?]);
    out.push(Sl2Spectral::new()?.s_sprime.space().clone());
    Ok(out)
}

fn all_monomials(space: &Arc<QuadraticSpace>) -> Vec<CliffordElement> {
    (0..1u32 << space.dim())
        .map(|m| CliffordElement::monomial(space, m, ExactScalar::one()))
        .collect()
}

/// `e_i e_j + e_j e_i = δ_ij ε_i` on every basis pair of every space.
pub fn clifford_relations() -> Result<(bool, String)> {
    let spaces = constructed_spaces()?;
    let mut bad = Vec::new();
    for s in &spaces {
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let (a, b) = (CliffordElement::generator(s, i), CliffordElement::generator(s, j));
                let anti = a.try_mul(&b)?.try_add(&b.try_mul(&a)?)?;
                let expected = if i == j { s.sign(i) } else { ExactScalar::zero() };
                if anti != CliffordElement::scalar(s, expected) {
                    bad.push(format!("{}: ({i},{j})", s.name()));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{} spaces; failures: {bad:?}", spaces.len())))
}

/// `(xy)z = x(yz)` on all monomial triples in dimension at most 4.
///
/// A product of monomials is a scalar times a monomial, so the pairwise
/// products are tabulated once and both bracketings read off the table.
pub fn clifford_associativity() -> Result<(bool, String)> {
    let mut count = 0usize;
    let mut bad = Vec::new();
    for s in constructed_spaces()?.iter().filter(|s| s.dim() <= 4) {
        let monos = all_monomials(s);
        let n = monos.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &monos {
            for y in &monos {
                let p = x.try_mul(y)?;
                if p.terms().len() != 1 {
                    return Ok((false, format!("{}: {x} * {y} = {p} is not a monomial", s.name())));
                }
                let (&mask, c) = p.terms().iter().next().expect("one term");
                table.push((mask as usize, c.clone()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (xy, c_xy) = &table[x * n + y];
                for z in 0..n {
                    count += 1;
                    let (yz, c_yz) = &table[y * n + z];
                    let (l, c_l) = &table[xy * n + z];
                    let (r, c_r) = &table[x * n + yz];
                    if l != r || c_xy * c_l != c_yz * c_r {
                        bad.push(format!("{}: {} {} {}", s.name(), monos[x], monos[y], monos[z]));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} triples; failures: {}", bad.len())))
}

/// `[α(X), Y] = [X, Y]` in `C(q)` for acting basis `X` and complement basis `Y`.
pub fn alpha_bracket(pair: &ReductivePair) -> Result<(bool, String)> {
    let alg = pair.algebra();
    let mut count = 0;
    for x in pair.acting() {
        let ax = pair.alpha(x)?;
        for y in pair.complement() {
            count += 1;
            let lhs = ax.commutator(&pair.to_clifford(y)?)?;
            let rhs = pair.to_clifford(&alg.bracket(x, y))?;
            if lhs != rhs {
                return Ok((false, format!("mismatch at {} with {}: {lhs} vs {rhs}", pair.name(), count)));
            }
        }
    }
    Ok((true, format!("{count} pairs")))
}

/// `[α(X), α(X′)] = α([X, X′])` on the acting basis.
pub fn alpha_morphism(pair: &ReductivePair) -> Result<(bool, String)> {
    let alg = pair.algebra();
    let mut count = 0;
    for x in pair.acting() {
        for y in pair.acting() {
            count += 1;
            let lhs = pair.alpha(x)?.commutator(&pair.alpha(y)?)?;
            let rhs = pair.alpha(&alg.bracket(x, y))?;
            if lhs != rhs {
                return Ok((false, format!("{lhs} vs {rhs}")));
            }
        }
    }
    Ok((true, format!("{count} pairs")))
}

fn is_symmetric(pair: &ReductivePair) -> bool {
    let alg = pair.algebra();
    pair.complement().iter().all(|x| {
        pair.complement()
            .iter()
            .all(|y| pair.complement().iter().all(|z| alg.form_eval(&alg.bracket(x, y), z).is_zero()))
    })
}

pub fn clifford_suite() -> Vec<CheckResult> {
    const S: &str = "clifford";
    let mut out = vec![
        run(S, "relations", "clifford relation", clifford_relations),
        run(S, "associativity", "clifford associativity", clifford_associativity),
    ];
    let pairs = match build_sl2_triple().pairs() {
        Ok(p) => p,
        Err(e) => return vec![CheckResult::from_error(S, "pairs", &e, "triple pairs")],
    };
    for p in &pairs {
        out.push(run(S, &format!("alpha-bracket {}", p.name()), "alpha bracket", || alpha_bracket(p)));
        out.push(run(S, &format!("alpha-morphism {}", p.name()), "alpha morphism", || alpha_morphism(p)));
        out.push(run(S, &format!("cubic {}", p.name()), "cubic element", || {
            let c = p.cubic_element();
            let sym = is_symmetric(p);
            Ok((c.is_zero() == sym, format!("symmetric: {sym}; c = {c}")))
        }));
    }
    out
}

/// Clifford relations of the generator matrices in every space, for both `ζ`.
pub fn spin_relations() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for s in constructed_spaces()? {
        for zeta in [1, -1] {
            let pol = crate::spin::Polarization::standard(&s, zeta)?;
            let m = SpinModule::new(s.clone(), pol);
            for i in 0..s.dim() {
                for j in 0..s.dim() {
                    count += 1;
                    let anti = m.generator(i).anticommutator(m.generator(j));
                    let expected = if i == j { s.sign(i) } else { ExactScalar::zero() };
                    if !anti.is_scalar_multiple_of_identity(&expected) {
                        bad.push(format!("{} zeta={zeta} ({i},{j})", s.name()));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} pairs; failures: {bad:?}")))
}

/// `γ(xy) = γ(x)γ(y)` on all monomial pairs in dimension at most 4.
pub fn spin_multiplicative() -> Result<(bool, String)> {
    let mut count = 0;
    for s in constructed_spaces()?.into_iter().filter(|s| s.dim() <= 4) {
        let m = SpinModule::standard(s.clone())?;
        let monos = all_monomials(&s);
        for x in &monos {
            for y in &monos {
                count += 1;
                if m.gamma(&x.try_mul(y)?)? != &m.gamma(x)? * &m.gamma(y)? {
                    return Ok((false, format!("{}: {x} * {y}", s.name())));
                }
            }
        }
    }
    Ok((true, format!("{count} products")))
}

/// The multiplication map intertwines the graded action, on all monomial pairs.
pub fn spin_intertwining(setup: &DiracSetup) -> Result<(bool, String)> {
    let mut count = 0;
    for c in all_monomials(setup.s_ls.space()) {
        for d in all_monomials(setup.s_qlp.space()) {
            count += 1;
            if !intertwines(&setup.split, &setup.s_ls, &setup.s_qlp, &setup.s_ql, &c, &d)? {
                return Ok((false, format!("fails for {c} ⊗ {d}")));
            }
        }
    }
    Ok((true, format!("{count} monomial pairs")))
}

/// `α_{l,l∩h}(X) = α_{l,l∩k}(X) ⊗ 1 + 1 ⊗ α_{l∩k,l∩h}(X)` in `C(q_l)`, and the
/// same identity on spin modules through the multiplication map.
pub fn spin_decomposition(setup: &DiracSetup) -> Result<(bool, String)> {
    let t = &setup.triple;
    let (l_lh, l_lk, lk_lh) = (t.pair_l_lh()?, t.pair_l_lk()?, t.pair_lk_lh()?);
    let mut details = Vec::new();
    let mut ok = true;
    for x in t.lh_basis() {
        let lhs = l_lh.alpha(&x.coords)?;
        let a = l_lk.alpha(&x.coords)?;
        let b = lk_lh.alpha(&x.coords)?;
        let rhs = setup.split.embed_a(&a)?.try_add(&setup.split.embed_b(&b)?)?;
        let clifford_ok = lhs == rhs;
        let on_product = &setup.s_ls.gamma(&a)?.kron(&ExactMatrix::identity(setup.s_qlp.dim()))
            + &ExactMatrix::identity(setup.s_ls.dim()).kron(&setup.s_qlp.gamma(&b)?);
        let module_ok = &setup.s_ql.gamma(&lhs)? * &setup.mult == &setup.mult * &on_product;
        ok &= clifford_ok && module_ok;
        details.push(format!("{}: alpha = {lhs}, clifford {clifford_ok}, modules {module_ok}", x.label));
    }
    Ok((ok, details.join("; ")))
}

/// `γ(2ZT₁T₂)` on `S_{q_l}`, with the expected scalar `1/√2`.
pub fn cubic_scalar_check(ctx: &Sl2Spectral) -> Result<(bool, String)> {
    let m = ctx.setup.s_ql.gamma(&ctx.cubic_monomial()?)?;
    let expected = ExactScalar::inv_sqrt2();
    let from_c = ctx.setup.s_ql.gamma(&ctx.setup.pair_l_lh.cubic_element())?.scale(&ExactScalar::int(-2));
    let ok = m.is_scalar_multiple_of_identity(&expected) && from_c == m;
    let shown = m.as_scalar().map_or_else(|| format!("{m:?}"), |s| s.compact());
    Ok((ok, format!("acts by {shown}; equals -2 gamma(c): {}", from_c == m)))
}

pub fn spin_suite() -> Vec<CheckResult> {
    const S: &str = "spin";
    let mut out = vec![
        run(S, "clifford-relations", "spin module", spin_relations),
        run(S, "multiplicative", "spin module", spin_multiplicative),
    ];
    let ctx = match Sl2Spectral::new() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckResult::from_error(S, "setup", &e, "triple"));
            return out;
        }
    };
    out.push(run(S, "intertwining", "multiplication map", || spin_intertwining(&ctx.setup)));
    out.push(run(S, "decomposition", "alpha decomposition", || spin_decomposition(&ctx.setup)));
    out.push(run(S, "cubic-scalar", "cubic scalar", || cubic_scalar_check(&ctx)));
    out.push(run(S, "sprime-weights", "spin weights", || {
        Ok((ctx.spin_weights() == [-1, 1], format!("weights on 1, e: {:?}", ctx.spin_weights())))
    }));
    out
}

/// `ρ⁻ ∘ α_{l∩h} = α_h` on `l∩h`, with `C(q)` identified with `C(q_l)` through `ρ⁻`.
pub fn alpha_restriction(t: &TripleData) -> Result<(bool, String)> {
    let (g_h, l_lh) = (t.pair_g_h()?, t.pair_l_lh()?);
    let ql = t.ql_space()?;
    let images: Vec<CliffordElement> = (0..ql.dim()).map(|i| CliffordElement::generator(&ql, i)).collect();
    let mut details = Vec::new();
    let mut ok = true;
    for x in t.lh_basis() {
        let lhs = l_lh.alpha(&x.coords)?;
        let rhs = g_h.alpha(&x.coords)?.map_generators(&ql, &images)?;
        ok &= lhs == rhs;
        details.push(format!("{}: {lhs} vs {rhs}", x.label));
    }
    Ok((ok, details.join("; ")))
}

pub fn triple_suite() -> Vec<CheckResult> {
    const S: &str = "triple";
    let t = match TripleData::parse(SL2_TRIPLE_TEXT) {
        Ok(t) => t,
        Err(e) => return vec![CheckResult::from_error(S, "load", &e, "triple data")],
    };
    vec![
        run(S, "load", "triple data", || {
            let built = build_sl2_triple();
            Ok((built == t, format!("{}: data file matches the builder", t.name())))
        }),
        run(S, "type-s", "type S", || {
            let f = t.type_s_facts()?;
            Ok((f.is_type_s(), format!("{f:?}")))
        }),
        run(S, "nu-spaces", "nu eigenspaces", || {
            let dims: Vec<String> = t
                .nu_decompose()
                .iter()
                .map(|s| format!("{}:{}", s.nu.compact(), s.basis.len()))
                .collect();
            Ok((dims == ["-1:1", "0:2", "1:1"], dims.join(", ")))
        }),
        run(S, "rho-isometry", "rho isometry", || {
            let g = t.g();
            let mut ok = true;
            for x in t.ql_named() {
                for y in t.ql_named() {
                    ok &= g.form_eval(&t.rho_minus(&x.coords)?, &t.rho_minus(&y.coords)?) == g.form_eval(&x.coords, &y.coords);
                }
            }
            for x in t.ls_basis() {
                for y in t.ls_basis() {
                    ok &= g.form_eval(&t.rho_plus(&x.coords)?, &t.rho_plus(&y.coords)?) == g.form_eval(&x.coords, &y.coords);
                }
            }
            Ok((ok, "rho- on q_l and rho+ on l∩s preserve the form".into()))
        }),
        run(S, "rho-split", "rho decomposition", || {
            // ρ⁻(T) = √2 T − ρ⁺(T) on l∩s and ρ⁺(Z) = 0
            let r2 = ExactScalar::sqrt2();
            let mut ok = true;
            for x in t.ls_basis() {
                let lhs = t.rho_minus(&x.coords)?;
                let rhs = vec_sub(&x.coords.iter().map(|c| &r2 * c).collect::<Vec<_>>(), &t.rho_plus(&x.coords)?);
                ok &= lhs == rhs;
            }
            for z in t.ql_prime_basis() {
                ok &= t.rho_plus(&z.coords)?.iter().all(ExactScalar::is_zero);
            }
            Ok((ok, "rho-(T) = r2*T - rho+(T), rho+(Z) = 0".into()))
        }),
        run(S, "alpha-restriction", "alpha restriction", || alpha_restriction(&t)),
        run(S, "bracket-coefficients", "bracket coefficients", || {
            let ids = bracket_identities(&t)?;
            let bad: Vec<_> = ids.iter().filter(|i| i.lhs != i.rhs).collect();
            let nonzero = ids.iter().filter(|i| !i.rhs.is_zero()).count();
            Ok((
                bad.is_empty() && ids.len() == 4,
                format!("{} identities ({nonzero} nonzero); failures: {bad:?}", ids.len()),
            ))
        }),
        run(S, "omega", "omega coefficients", || {
            let ids = omega_identities(&t)?;
            let bad: Vec<_> = ids.iter().filter(|i| i.lhs != i.rhs).map(|i| i.labels.clone()).collect();
            Ok((bad.is_empty() && ids.len() == 27, format!("{} ordered triples; failures: {bad:?}", ids.len())))
        }),
    ]
}

fn symbol_index(d: &FormalDiracElement, label: &str) -> Option<Symbol> {
    d.symbols().labels.iter().position(|l| l == label).map(Symbol::Basis)
}

/// `transfer` is linear: checked on the geometric element and an element with
/// an `h`-symbol and a unit term.
pub fn transfer_linearity(setup: &DiracSetup, e: &WeightModule) -> Result<(bool, String)> {
    let d1 = setup.geometric_dirac_element(e)?;
    let dim = d1.dim();
    let mut d2 = FormalDiracElement::zero(setup.g_symbols.clone(), dim);
    for (k, _) in setup.g_symbols.labels.iter().enumerate() {
        let m = setup.s_ql.parity_operator().kron(&ExactMatrix::identity(e.dim())).scale(&ExactScalar::int(k as i64 + 1));
        d2.add_term(Symbol::Basis(k), &m);
    }
    d2.add_term(Symbol::Unit, &ExactMatrix::identity(dim));
    let lambda: ExactScalar = "1/3 + 2*i*r2".parse()?;
    let lhs = setup.transfer(&d1.try_add(&d2.scale(&lambda))?, e)?;
    let rhs = setup.transfer(&d1, e)?.try_add(&setup.transfer(&d2, e)?.scale(&lambda))?;
    Ok((lhs == rhs, format!("lambda = {}", lambda.compact())))
}

/// `D_{h,h∩k}(E)` commutes with the diagonal action of `h∩k` on `E ⊗ S_{h∩s}`.
pub fn h_invariance(setup: &DiracSetup, e: &WeightModule) -> Result<(bool, String)> {
    let d = setup.d_h_hk_native(e)?;
    let mut ok = true;
    for x in setup.triple.hk_basis() {
        let act = &e.pi(&setup.module_map().mul_vec(&x.coords)).kron(&ExactMatrix::identity(setup.s_hs.dim()))
            + &ExactMatrix::identity(e.dim()).kron(&setup.s_hs.gamma(&setup.pair_h_hk.alpha(&x.coords)?)?);
        ok &= d.commutator(&act).is_zero();
    }
    Ok((ok, format!("{} elements of h∩k", setup.triple.hk_basis().len())))
}

pub fn embedding_suite(setup: &DiracSetup, weight: usize) -> Vec<CheckResult> {
    const S: &str = "embedding";
    let e = WeightModule::sl2_irrep(weight);
    let name = |c: &str| format!("w{weight}/{c}");
    let anchor = "embedding identity";
    vec![
        run(S, &name("geometric-element"), "geometric Dirac element", || {
            let d = setup.geometric_dirac_element(&e)?;
            let mut ok = d.terms().len() == 3;
            let mut parts = Vec::new();
            for (s, m) in d.terms() {
                let sq = m * m;
                let ok_sq = sq.is_scalar_multiple_of_identity(&ExactScalar::ratio(1, 2))
                    || sq.is_scalar_multiple_of_identity(&ExactScalar::ratio(-1, 2));
                ok &= ok_sq;
                parts.push(format!("{} squares to {}", d.symbol_label(*s), sq.as_scalar().map_or("?".into(), |x| x.compact())));
            }
            if let Some(z) = symbol_index(&d, "q.Z") {
                let ez = setup.s_ql.gamma(&CliffordElement::generator(setup.s_ql.space(), 0))?.kron(&ExactMatrix::identity(e.dim()));
                ok &= d.term(z) == ez.scale(&ExactScalar::int(-1));
            }
            Ok((ok, parts.join(", ")))
        }),
        run(S, &name("transfer-linearity"), "transfer", || transfer_linearity(setup, &e)),
        run(S, &name("cubic-part"), anchor, || {
            let (d2, _) = setup.unit_term_pieces(&e)?;
            let c = setup.s_ql.gamma(&setup.pair_l_lh.cubic_element())?.kron(&ExactMatrix::identity(e.dim()));
            Ok((d2 == c.scale(&ExactScalar::int(-2)), "unit-symbol spin part equals -2 gamma(c)".into()))
        }),
        run(S, &name("form1"), anchor, || {
            let cmp = compare_embedding(setup, &e, 1, &RhsOptions::default())?;
            Ok((cmp.holds(), format!("{} symbols compared; mismatches {:?}", cmp.lhs.terms().len(), cmp.mismatches)))
        }),
        run(S, &name("form2"), anchor, || {
            let cmp = compare_embedding(setup, &e, 2, &RhsOptions::default())?;
            Ok((cmp.holds(), format!("{} symbols compared; mismatches {:?}", cmp.lhs.terms().len(), cmp.mismatches)))
        }),
        run(S, &name("forms-agree"), anchor, || {
            let a = setup.assemble_rhs(&e, 1, &RhsOptions::default())?;
            let b = setup.assemble_rhs(&e, 2, &RhsOptions::default())?;
            Ok((a == b, format!("mismatches {:?}", a.mismatches(&b))))
        }),
        run(S, &name("negative-control"), anchor, || {
            let opts = RhsOptions {
                cubic_override: Some(ExactScalar::int(-1)),
            };
            let cmp = compare_embedding(setup, &e, 2, &opts)?;
            let syms: Vec<&str> = cmp.mismatches.iter().map(|(s, _)| s.as_str()).collect();
            Ok((
                !cmp.holds() && syms == ["1"],
                format!("cubic coefficient -1 is rejected at symbols {syms:?}"),
            ))
        }),
        run(S, &name("h-invariance"), "algebraic Dirac operator", || h_invariance(setup, &e)),
    ]
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

/// `D_{h,h∩k}` from the `h, e, f` presentation, the `ẽ, f̃` basis and the rotated basis.
pub fn basis_independence(ctx: &Sl2Spectral, e: &WeightModule) -> Result<(bool, String)> {
    let hef = ctx.dirac_gprime(e, None)?;
    let ortho = ctx.dirac_gprime(e, Some(&Sl2Spectral::orthonormal_sprime_basis()))?;
    let rotated = ctx.dirac_gprime(e, Some(&Sl2Spectral::rotated_sprime_basis()))?;
    let ge = ctx.s_sprime.gamma_vector(&ctx.pair_sprime.project(&unit_vector(3, 1))?);
    let gf = ctx.s_sprime.gamma_vector(&ctx.pair_sprime.project(&unit_vector(3, 2))?);
    let oracle = &e.generator(1).kron(&gf) + &e.generator(2).kron(&ge);
    Ok((
        hef == ortho && ortho == rotated && hef == oracle,
        format!("hef = orthonormal: {}, orthonormal = rotated: {}, hef = e⊗f+f⊗e: {}", hef == ortho, ortho == rotated, hef == oracle),
    ))
}

pub fn spectral_suite(ctx: &Sl2Spectral, scan: &CandidateScan, weight: usize) -> Vec<CheckResult> {
    const S: &str = "spectral";
    let e = WeightModule::sl2_irrep(weight);
    let name = |c: &str| format!("w{weight}/{c}");
    let even = weight % 2 == 0;
    let m = (weight / 2) as i64;
    let mut out = vec![
        run(S, &name("block-eigenvalues"), "block eigenvalues", || {
            let big_even = WeightModule::sl2_irrep(20);
            let big_odd = WeightModule::sl2_irrep(19);
            let denom = &ExactScalar::int(2) * &ExactScalar::sqrt2();
            let mut count = 0;
            for a in -10..=10i64 {
                for b in -10..=10i64 {
                    let host = if (a + b) % 2 == 0 { &big_even } else { &big_odd };
                    let blk = PeterWeylBlock::new(a, b, SpinLabel::One, host)?;
                    let expected = &ExactScalar::int(a - b) * &denom.inv().expect("nonzero");
                    count += 1;
                    if ctx.block_eigenvalue(&blk)? != expected {
                        return Ok((false, format!("({a},{b})")));
                    }
                }
            }
            Ok((true, format!("{count} blocks with |a|,|b| <= 10")))
        }),
        run(S, &name("character-actions"), "character actions", || {
            let t = ctx.triple();
            let named = |l: &str| t.lh_basis().iter().chain(t.ql_named()).find(|v| v.label == l).map(|v| v.coords.clone());
            let (w, z) = (named("W").unwrap_or_default(), named("Z").unwrap_or_default());
            let half_i = &ExactScalar::i() * &ExactScalar::ratio(1, 2);
            for a in -10..=10i64 {
                for b in -10..=10i64 {
                    let c = CharacterLabel::new(a, b);
                    if ctx.character_action(&c, &w)? != &half_i * &ExactScalar::int(a + b)
                        || ctx.character_action(&c, &z)? != &half_i * &ExactScalar::int(a - b)
                    {
                        return Ok((false, format!("({a},{b})")));
                    }
                }
            }
            Ok((true, "W by i(a+b)/2 and Z by i(a-b)/2".into()))
        }),
        run(S, &name("cubic-scalar"), "cubic scalar", || cubic_scalar_check(ctx)),
        run(S, &name("cancellation"), "cubic cancellation", || {
            let out = ctx.cubic_cancellation(&e)?;
            Ok((
                out.holds(),
                format!(
                    "{} blocks with a-b=-2; even weights: {}; sums zero: {}",
                    out.blocks.len(),
                    out.even_weights,
                    out.sums.iter().all(|(_, s)| s.is_zero())
                ),
            ))
        }),
        run(S, &name("basis-independence"), "algebraic Dirac operator", || basis_independence(ctx, &e)),
    ];
    if !even {
        for c in ["kernel-dh", "reduction-blocks", "ds-kernels", "uniqueness-scan"] {
            out.push(CheckResult::skipped(S, &name(c), "odd weight", "discrete series kernels"));
        }
        return out;
    }
    out.push(run(S, &name("kernel-dh"), "kernel of D_h", || {
        let k = ctx.kernel_dh(&e)?;
        let expected = if m == 0 {
            vec![(0, "1".to_string()), (0, "e".to_string())]
        } else {
            vec![(-2 * m, "1".to_string()), (2 * m, "e".to_string())]
        };
        Ok((k == expected, format!("{k:?}")))
    }));
    out.push(run(S, &name("reduction-blocks"), "reduction blocks", || {
        let r = ctx.reduction_blocks(m)?;
        Ok((r.failures.is_empty(), format!("{} and {}; {:?}", r.u_block, r.one_block, r.failures)))
    }));
    out.push(run(S, &name("ds-kernels"), "discrete series kernels", || {
        let n = scan.truncation;
        let hw = ctx.dirac_kernel(&WeightModule::highest_weight_module(-m - 2, n)?)?;
        let lw = if m == 0 {
            ctx.dirac_kernel(&WeightModule::sl2_irrep(0))?
        } else {
            ctx.dirac_kernel(&WeightModule::lowest_weight_module(m, n)?)?
        };
        let weights_on = |k: &crate::spectral::DiracKernel, spin: &str| -> Vec<i64> {
            k.entries.iter().filter(|e| e.spin_part() == Some(spin)).map(|e| e.total_weight).collect()
        };
        let hw_ok = weights_on(&hw, "e") == [-m - 1];
        let lw_ok = weights_on(&lw, "1") == [m - 1];
        let show = |k: &crate::spectral::DiracKernel| k.entries.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ");
        Ok((
            hw_ok && lw_ok,
            format!(
                "highest weight {}: [{}] ({} boundary vectors dropped); lowest weight {m}: [{}]",
                -m - 2,
                show(&hw),
                hw.discarded_boundary,
                show(&lw)
            ),
        ))
    }));
    out.push(run(S, &name("uniqueness-scan"), "discrete series kernels", || {
        let hits: Vec<i64> = scan
            .highest
            .iter()
            .filter(|(_, k)| k.contains(-m - 1, "e"))
            .map(|(nu, _)| *nu)
            .collect();
        Ok((hits == [-m - 2], format!("highest weights with kernel weight {} on e: {hits:?}", -m - 1)))
    }));
    out
}

pub fn table_suite(ctx: &Sl2Spectral, scan: &CandidateScan, weight: usize) -> (Vec<CheckResult>, Option<TableRow>) {
    const S: &str = "table";
    let m = (weight / 2) as i64;
    match ctx.representation_table(m, scan) {
        Ok(row) => {
            let ok = row.labels == expected_row(m);
            let shown: Vec<String> = row.labels.iter().map(|l| l.to_string()).collect();
            let evidence: Vec<String> = row
                .evidence
                .iter()
                .map(|e| format!("{}-part weight {} matched by {:?}", e.spin, e.target_weight, e.matches))
                .collect();
            let check = CheckResult::new(
                S,
                &format!("m{m}"),
                ok,
                format!("{}; {}", shown.join(" + "), evidence.join("; ")),
                "representation table",
            );
            (vec![check], Some(row))
        }
        Err(e) => (vec![CheckResult::from_error(S, &format!("m{m}"), &e, "representation table")], None),
    }
}

/// Every suite: structural checks, the embedding identity and the table for
/// weights `0, 2, …, 10`, and spectral checks for every weight up to 10.
pub fn all_suites(truncation: usize) -> Vec<CheckResult> {
    let mut out = clifford_suite();
    out.extend(spin_suite());
    out.extend(triple_suite());
    let ctx = match Sl2Spectral::new() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckResult::from_error("spectral", "setup", &e, "triple"));
            return out;
        }
    };
    let scan = match ctx.scan_candidates(truncation) {
        Ok(s) => s,
        Err(e) => {
            out.push(CheckResult::from_error("spectral", "scan", &e, "discrete series kernels"));
            return out;
        }
    };
    for w in (0..=10).step_by(2) {
        out.extend(embedding_suite(&ctx.setup, w));
        out.extend(table_suite(&ctx, &scan, w).0);
    }
    for w in 0..=10 {
        out.extend(spectral_suite(&ctx, &scan, w));
    }
    out
}
