//! The SL(2,R) example worked out: Peter–Weyl blocks over `L∩K = SO(2)×SO(2)`,
//! eigenvalues of `D_{L∩K/L∩H}(E)`, the cubic scalar, the kernel of
//! `D_{h,h∩k}(E)`, Dirac kernels on truncated highest and lowest weight
//! modules, and the resulting table of `L = G′×K′` representations.
//!
//! Kernels on truncated modules are computed block by block: `e⊗f + f⊗e`
//! preserves the total `k′`-weight (module weight plus spin weight), so each
//! block has at most two basis vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::clifford::{CliffordElement, QuadraticSpace, ReductivePair};
use crate::dirac::{algebraic_dirac, DiracSetup};
use crate::error::{Error, Result};
use crate::lie::{sl2_real_to_hef, unit_vector, LieAlgebra};
use crate::linalg::{ExactMatrix, ExactVector};
use crate::modules::WeightModule;
use crate::scalar::ExactScalar;
use crate::spin::{Polarization, SpinModule};
use crate::triple::{build_sl2_triple, TripleData};

/// Lowest and highest weights scanned when identifying `π*`.
pub const SCAN_RANGE: i64 = 12;
pub const DEFAULT_TRUNCATION: usize = 40;

/// The character `C_{a,b}` of `SO(2)×SO(2)`: `(h,0)` acts by `a`, `(0,h)` by `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharacterLabel {
    pub a: i64,
    pub b: i64,
}

impl CharacterLabel {
    pub fn new(a: i64, b: i64) -> Self {
        CharacterLabel { a, b }
    }

    pub fn dual(&self) -> Self {
        CharacterLabel::new(-self.a, -self.b)
    }
}

impl fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{})", self.a, self.b)
    }
}

/// Basis element of `S_{l∩s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpinLabel {
    One,
    U,
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinLabel::One => "1",
            SpinLabel::U => "u",
        })
    }
}

/// A summand `C_{−a,−b} ⊗ C_{a,b} ⊗ S_{q_l′} ⊗ E_{−a−b}` tagged with a basis
/// element of `S_{l∩s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PeterWeylBlock {
    pub left: CharacterLabel,
    pub right: CharacterLabel,
    pub spin_ls: SpinLabel,
    pub e_weight: i64,
}

impl PeterWeylBlock {
    /// Fails unless `−a−b` is a weight of `E`.
    pub fn new(a: i64, b: i64, spin_ls: SpinLabel, e: &WeightModule) -> Result<Self> {
        let w = -a - b;
        if !e.weights().contains(&w) {
            return Err(Error::InadmissibleBlock(format!("weight {w} of C({a},{b}) does not occur in E")));
        }
        let right = CharacterLabel::new(a, b);
        Ok(PeterWeylBlock {
            left: right.dual(),
            right,
            spin_ls,
            e_weight: w,
        })
    }

    pub fn k(&self) -> i64 {
        self.right.a - self.right.b
    }
}

impl fmt::Display for PeterWeylBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}⊗{}⊗E[{}]", self.spin_ls, self.left, self.right, self.e_weight)
    }
}

/// `G′`-part of an `L`-representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GPrimeLabel {
    DsPlus(i64),
    DsMinus(i64),
    LdsMinus,
    Trivial,
}

impl GPrimeLabel {
    fn name(&self) -> &'static str {
        match self {
            GPrimeLabel::DsPlus(_) => "DS+",
            GPrimeLabel::DsMinus(_) => "DS-",
            GPrimeLabel::LdsMinus => "LDS-",
            GPrimeLabel::Trivial => "Trivial",
        }
    }

    fn parameter(&self) -> Option<i64> {
        match self {
            GPrimeLabel::DsPlus(n) | GPrimeLabel::DsMinus(n) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LRepLabel {
    pub gprime: GPrimeLabel,
    pub kprime: i64,
}

impl LRepLabel {
    /// `[name, parameter or null, "C", character]`.
    pub fn to_json_row(&self) -> serde_json::Value {
        serde_json::json!([self.gprime.name(), self.gprime.parameter(), "C", self.kprime])
    }
}

impl fmt::Display for LRepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gprime.parameter() {
            Some(n) => write!(f, "({}({}), C({}))", self.gprime.name(), n, self.kprime),
            None => write!(f, "({}, C({}))", self.gprime.name(), self.kprime),
        }
    }
}

/// One kernel vector: its total weight and the (module weight, spin label)
/// pairs in its support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KernelEntry {
    pub total_weight: i64,
    pub support: Vec<(i64, String)>,
}

impl KernelEntry {
    /// The spin label when every support element carries the same one.
    pub fn spin_part(&self) -> Option<&str> {
        let first = &self.support.first()?.1;
        self.support.iter().all(|(_, s)| s == first).then_some(first.as_str())
    }
}

impl fmt::Display for KernelEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(|(w, s)| format!("E[{w}]⊗{s}")).collect();
        write!(f, "weight {}: {}", self.total_weight, parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiracKernel {
    pub entries: Vec<KernelEntry>,
    /// Kernel vectors living only on the truncation level, dropped as artifacts.
    pub discarded_boundary: usize,
}

impl DiracKernel {
    pub fn contains(&self, total_weight: i64, spin: &str) -> bool {
        self.entries
            .iter()
            .any(|e| e.total_weight == total_weight && e.spin_part() == Some(spin))
    }
}

#[derive(Clone, Debug)]
pub struct CancellationOutcome {
    pub blocks: Vec<PeterWeylBlock>,
    /// `(block, eigenvalue + cubic scalar)` for every block.
    pub sums: Vec<(PeterWeylBlock, ExactScalar)>,
    pub even_weights: bool,
}

impl CancellationOutcome {
    pub fn holds(&self) -> bool {
        self.sums.iter().all(|(_, s)| s.is_zero()) && (!self.blocks.is_empty() == self.even_weights)
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub m: i64,
    pub u_block: PeterWeylBlock,
    pub one_block: PeterWeylBlock,
    pub kernel: Vec<KernelEntry>,
    pub failures: Vec<String>,
}

/// Evidence for one table entry: the scan target and the unique match.
#[derive(Clone, Debug)]
pub struct ScanEvidence {
    pub spin: String,
    pub target_weight: i64,
    pub matches: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub m: i64,
    pub labels: Vec<LRepLabel>,
    pub evidence: Vec<ScanEvidence>,
}

impl TableRow {
    pub fn to_json_rows(&self) -> serde_json::Value {
        serde_json::Value::Array(self.labels.iter().map(LRepLabel::to_json_row).collect())
    }
}

/// Kernels of `D_{g′,k′}` on the scanned candidate modules for `π*`.
#[derive(Clone, Debug)]
pub struct CandidateScan {
    pub truncation: usize,
    /// `highest_weight_module(ν)` for `ν = −1, …, −SCAN_RANGE`.
    pub highest: Vec<(i64, DiracKernel)>,
    /// The trivial module (`μ = 0`) and `lowest_weight_module(μ)` for `μ = 1, …, SCAN_RANGE`.
    pub lowest: Vec<(i64, DiracKernel)>,
}

/// The pair `(g′, k′)` with `g′ = sl(2,C)`, `k′ = Ch` and `s′` spanned by
/// `ẽ, f̃`, with the spin module `S_{s′} = C1 ⊕ Ce`.
#[derive(Clone, Debug)]
pub struct Sl2Spectral {
    pub setup: DiracSetup,
    pub gprime: Arc<LieAlgebra>,
    pub pair_sprime: ReductivePair,
    pub s_sprime: SpinModule,
    spin_weights: Vec<i64>,
}

impl Sl2Spectral {
    pub fn new() -> Result<Self> {
        Self::from_triple(Arc::new(build_sl2_triple()))
    }

    pub fn from_triple(triple: Arc<TripleData>) -> Result<Self> {
        let setup = DiracSetup::new(triple)?;
        let gprime = LieAlgebra::sl2();
        let basis = Self::orthonormal_sprime_basis();
        let space = QuadraticSpace::new("s'", vec!["et".into(), "ft".into()], vec![1, 1])?;
        let pair_sprime = ReductivePair::new(
            "(g',k')",
            gprime.clone(),
            vec!["h".into()],
            vec![unit_vector(3, 0)],
            space.clone(),
            basis.to_vec(),
        )?;
        // e = (ẽ − i f̃)/√2 and f = (ẽ + i f̃)/√2 in the (ẽ, f̃) coordinates
        let r = ExactScalar::inv_sqrt2();
        let ir = &ExactScalar::i() * &r;
        let pol = Polarization::new(
            &space,
            vec![vec![r.clone(), -&ir]],
            vec![vec![r, ir]],
            vec!["e".into()],
            None,
            1,
        )?;
        let s_sprime = SpinModule::new(space, pol);
        let spin_weights = s_sprime
            .weights_of(&pair_sprime, &unit_vector(3, 0))?
            .iter()
            .map(|w| {
                w.as_integer()
                    .ok_or_else(|| Error::EigenvalueOutsideField(format!("spin weight {w} is not an integer")))
            })
            .collect::<Result<_>>()?;
        Ok(Sl2Spectral {
            setup,
            gprime,
            pair_sprime,
            s_sprime,
            spin_weights,
        })
    }

    /// `ẽ = (e+f)/√2`, `f̃ = i(e−f)/√2` in `h, e, f` coordinates.
    pub fn orthonormal_sprime_basis() -> [ExactVector; 2] {
        let conv = sl2_real_to_hef();
        [conv.column(1), conv.column(2)]
    }

    /// The orthonormal basis `(cẽ + sf̃, −sẽ + cf̃)` with `c = 3/5`, `s = 4/5`.
    pub fn rotated_sprime_basis() -> [ExactVector; 2] {
        let [et, ft] = Self::orthonormal_sprime_basis();
        let (c, s) = (ExactScalar::ratio(3, 5), ExactScalar::ratio(4, 5));
        let comb = |x: &ExactScalar, y: &ExactScalar| -> ExactVector {
            et.iter().zip(&ft).map(|(a, b)| &(x * a) + &(y * b)).collect()
        };
        [comb(&c, &s), comb(&-&s, &c)]
    }

    /// Weights of `α_{k′}(h)` on the basis `1, e` of `S_{s′}`.
    pub fn spin_weights(&self) -> &[i64] {
        &self.spin_weights
    }

    pub fn triple(&self) -> &TripleData {
        &self.setup.triple
    }

    /// `D_{g′,k′}(M)` on `M ⊗ S_{s′}`, from the `h, e, f` presentation by default.
    pub fn dirac_gprime(&self, m: &WeightModule, basis: Option<&[ExactVector]>) -> Result<ExactMatrix> {
        let default = [unit_vector(3, 1), unit_vector(3, 2)];
        let basis = basis.unwrap_or(&default);
        algebraic_dirac(&self.pair_sprime, m, &ExactMatrix::identity(3), &self.s_sprime, Some(basis))
    }

    /// The scalar by which an element of `l∩k` (in `g` coordinates) acts on `C_{a,b}`.
    pub fn character_action(&self, c: &CharacterLabel, x: &[ExactScalar]) -> Result<ExactScalar> {
        let t = self.triple();
        let g = t.g();
        let idx = |l: &str| {
            g.index_of(l)
                .ok_or_else(|| Error::InvalidTriple(format!("missing basis vector {l}")))
        };
        let (i1, i2) = (idx("ht.1")?, idx("ht.2")?);
        if x.iter().enumerate().any(|(k, v)| k != i1 && k != i2 && !v.is_zero()) {
            return Err(Error::NotInSpan("element is not in the Cartan part of l∩k".into()));
        }
        // ht = λh with λ read off the realization
        let lambda = sl2_real_to_hef().get(0, 0).clone();
        Ok(&(&x[i1] * &(&lambda * &ExactScalar::int(c.a))) + &(&x[i2] * &(&lambda * &ExactScalar::int(c.b))))
    }

    fn named(&self, label: &str) -> Result<ExactVector> {
        let t = self.triple();
        t.lh_basis()
            .iter()
            .chain(t.ql_named())
            .find(|v| v.label == label)
            .map(|v| v.coords.clone())
            .ok_or_else(|| Error::InvalidTriple(format!("missing basis vector {label}")))
    }

    /// The scalar by which `Z ∈ C(q_l′)` acts on the one-dimensional `S_{q_l′}`.
    pub fn gamma_z_scalar(&self) -> Result<ExactScalar> {
        let s = &self.setup.s_qlp;
        let z = s
            .space()
            .index_of("Z")
            .ok_or_else(|| Error::InvalidTriple("q_l' has no Z".into()))?;
        s.gamma(&CliffordElement::generator(s.space(), z))?
            .as_scalar()
            .ok_or_else(|| Error::NonScalar("Z does not act by a scalar on S_{q_l'}".into()))
    }

    /// `D_{L∩K/L∩H} = −Z ⊗ Z` on a block: `−(Z on C_{a,b}) · (Z on S_{q_l′})`.
    pub fn block_eigenvalue(&self, blk: &PeterWeylBlock) -> Result<ExactScalar> {
        let z = self.named("Z")?;
        let on_char = self.character_action(&blk.right, &z)?;
        Ok(-&(&on_char * &self.gamma_z_scalar()?))
    }

    /// `γ(2ZT₁T₂)` on `S_{q_l}`; fails unless it is a scalar.
    pub fn cubic_scalar(&self) -> Result<ExactScalar> {
        self.cubic_scalar_scaled(&ExactScalar::int(2))
    }

    /// `γ(λ ZT₁T₂)` on `S_{q_l}` as a scalar.
    pub fn cubic_scalar_scaled(&self, lambda: &ExactScalar) -> Result<ExactScalar> {
        let ql = self.setup.s_ql.space();
        let idx = |l: &str| ql.index_of(l).ok_or_else(|| Error::InvalidTriple(format!("q_l has no {l}")));
        let elt = CliffordElement::from_indices(ql, &[idx("Z")?, idx("T1")?, idx("T2")?], lambda.clone())?;
        self.setup
            .s_ql
            .gamma(&elt)?
            .as_scalar()
            .ok_or_else(|| Error::NonScalar("ZT1T2 does not act by a scalar".into()))
    }

    /// The element `2ZT₁T₂` of `C(q_l)`.
    pub fn cubic_monomial(&self) -> Result<CliffordElement> {
        let ql = self.setup.s_ql.space();
        let idx = |l: &str| ql.index_of(l).ok_or_else(|| Error::InvalidTriple(format!("q_l has no {l}")));
        CliffordElement::from_indices(ql, &[idx("Z")?, idx("T1")?, idx("T2")?], ExactScalar::int(2))
    }

    /// All admissible blocks with `a − b = k`, for both spin labels.
    pub fn blocks_with_k(&self, e: &WeightModule, k: i64) -> Vec<PeterWeylBlock> {
        let mut weights: Vec<i64> = e.weights().to_vec();
        weights.sort();
        weights.dedup();
        let mut out = Vec::new();
        for w in weights {
            // a + b = −w, a − b = k
            if (k - w) % 2 != 0 {
                continue;
            }
            let (a, b) = ((k - w) / 2, (-w - k) / 2);
            for spin in [SpinLabel::One, SpinLabel::U] {
                if let Ok(blk) = PeterWeylBlock::new(a, b, spin, e) {
                    out.push(blk);
                }
            }
        }
        out
    }

    pub fn cubic_cancellation(&self, e: &WeightModule) -> Result<CancellationOutcome> {
        let cubic = self.cubic_scalar()?;
        let blocks = self.blocks_with_k(e, -2);
        let sums = blocks
            .iter()
            .map(|b| Ok((*b, &self.block_eigenvalue(b)? + &cubic)))
            .collect::<Result<_>>()?;
        Ok(CancellationOutcome {
            blocks,
            sums,
            even_weights: e.has_even_weights(),
        })
    }

    fn spin_label(&self, k: usize) -> String {
        self.s_sprime.basis_label(k)
    }

    /// Kernel of `D_{g′,k′}` on `M ⊗ S_{s′}`, with the truncation guard.
    pub fn dirac_kernel(&self, m: &WeightModule) -> Result<DiracKernel> {
        let d = self.dirac_gprime(m, None)?;
        let ds = self.s_sprime.dim();
        let n = m.dim() * ds;
        let total = |idx: usize| m.weights()[idx / ds] + self.spin_weights[idx % ds];
        let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for idx in 0..n {
            blocks.entry(total(idx)).or_default().push(idx);
        }
        for r in 0..n {
            for c in 0..n {
                if total(r) != total(c) && !d.get(r, c).is_zero() {
                    return Err(Error::InvalidModule("Dirac operator does not preserve the total weight".into()));
                }
            }
        }
        let top = m.truncation();
        let mut entries = Vec::new();
        let mut discarded = 0;
        for (w, idxs) in &blocks {
            let sub = d.select(idxs, idxs);
            for v in sub.nullspace() {
                let support: Vec<usize> = idxs
                    .iter()
                    .zip(&v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, _)| *i)
                    .collect();
                if let Some(top) = top {
                    let at_top = support.iter().filter(|&&i| i / ds == top).count();
                    if at_top == support.len() {
                        discarded += 1;
                        continue;
                    }
                    if at_top > 0 {
                        return Err(Error::TruncationArtifact(format!(
                            "kernel vector of weight {w} reaches truncation level {top}"
                        )));
                    }
                }
                entries.push(KernelEntry {
                    total_weight: *w,
                    support: support
                        .iter()
                        .map(|&i| (m.weights()[i / ds], self.spin_label(i % ds)))
                        .collect(),
                });
            }
        }
        entries.sort();
        Ok(DiracKernel {
            entries,
            discarded_boundary: discarded,
        })
    }

    /// `ker D_{h,h∩k}(E)` as (E-weight, spin label) pairs.
    pub fn kernel_dh(&self, e: &WeightModule) -> Result<Vec<(i64, String)>> {
        let k = self.dirac_kernel(e)?;
        let mut out = Vec::new();
        for entry in k.entries {
            if entry.support.len() != 1 {
                return Err(Error::InvalidModule(format!("kernel vector is not a weight vector: {entry}")));
            }
            out.push(entry.support[0].clone());
        }
        out.sort();
        Ok(out)
    }

    /// The two blocks on which the embedded operator reduces to `√2 D_{L/L∩K}(Ẽ)`.
    pub fn reduction_blocks(&self, m: i64) -> Result<ReductionOutcome> {
        if m < 0 {
            return Err(Error::InvalidModule("m must be nonnegative".into()));
        }
        let e = WeightModule::sl2_irrep(2 * m as usize);
        let u_block = PeterWeylBlock::new(-m - 1, -m + 1, SpinLabel::U, &e)?;
        let one_block = PeterWeylBlock::new(m - 1, m + 1, SpinLabel::One, &e)?;
        let kernel = self.dirac_kernel(&e)?.entries;
        let cubic = self.cubic_scalar()?;
        let mut failures = Vec::new();
        for blk in [&u_block, &one_block] {
            if blk.k() != -2 {
                failures.push(format!("{blk}: a-b = {}", blk.k()));
            }
            let sum = &self.block_eigenvalue(blk)? + &cubic;
            if !sum.is_zero() {
                failures.push(format!("{blk}: eigenvalue + cubic scalar = {}", sum.compact()));
            }
        }
        // e ∈ S_{h∩s} is identified with u ∈ S_{l∩s}
        let has = |w: i64, s: &str| kernel.iter().any(|k| k.support == vec![(w, s.to_string())]);
        if !has(u_block.e_weight, "e") {
            failures.push(format!("E[{}]⊗e is not in the kernel", u_block.e_weight));
        }
        if !has(one_block.e_weight, "1") {
            failures.push(format!("E[{}]⊗1 is not in the kernel", one_block.e_weight));
        }
        Ok(ReductionOutcome {
            m,
            u_block,
            one_block,
            kernel,
            failures,
        })
    }

    pub fn scan_candidates(&self, truncation: usize) -> Result<CandidateScan> {
        let mut highest = Vec::new();
        for nu in (-SCAN_RANGE..=-1).rev() {
            highest.push((nu, self.dirac_kernel(&WeightModule::highest_weight_module(nu, truncation)?)?));
        }
        let mut lowest = vec![(0, self.dirac_kernel(&WeightModule::sl2_irrep(0))?)];
        for mu in 1..=SCAN_RANGE {
            lowest.push((mu, self.dirac_kernel(&WeightModule::lowest_weight_module(mu, truncation)?)?));
        }
        Ok(CandidateScan {
            truncation,
            highest,
            lowest,
        })
    }

    /// The `L`-representations in the kernel for `E` of highest weight `2m`.
    ///
    /// For the `u`-block with `G′`-character `p`, `π*` is the unique scanned
    /// highest weight module whose kernel on `e ⊗ π*` has weight `−p`; then
    /// `π = DS⁺` with lowest weight `−ν`. For the `1`-block the same is done
    /// with lowest weight modules on `1 ⊗ π*`.
    pub fn representation_table(&self, m: i64, scan: &CandidateScan) -> Result<TableRow> {
        if !(0..=SCAN_RANGE - 2).contains(&m) {
            return Err(Error::InvalidModule(format!("m = {m} is outside the scanned range")));
        }
        let c63 = self.reduction_blocks(m)?;
        if !c63.failures.is_empty() {
            return Err(Error::InvalidModule(c63.failures.join("; ")));
        }
        let unique = |cands: &[(i64, DiracKernel)], target: i64, spin: &str| -> Result<(i64, ScanEvidence)> {
            let hits: Vec<i64> = cands
                .iter()
                .filter(|(_, k)| k.contains(target, spin))
                .map(|(p, _)| *p)
                .collect();
            let evidence = ScanEvidence {
                spin: spin.to_string(),
                target_weight: target,
                matches: hits.iter().map(|p| p.to_string()).collect(),
            };
            match hits.as_slice() {
                [p] => Ok((*p, evidence)),
                _ => Err(Error::InvalidModule(format!(
                    "expected one module with kernel weight {target} on {spin}, found {hits:?}"
                ))),
            }
        };
        let (p_u, k_u) = (c63.u_block.left.a, c63.u_block.left.b);
        let (nu, ev_u) = unique(&scan.highest, -p_u, "e")?;
        let first = match -nu {
            n if n >= 2 => GPrimeLabel::DsPlus(n),
            n => return Err(Error::InvalidModule(format!("lowest weight {n} is not a discrete series"))),
        };
        let (p_1, k_1) = (c63.one_block.left.a, c63.one_block.left.b);
        let (mu, ev_1) = unique(&scan.lowest, -p_1, "1")?;
        let second = match mu {
            0 => GPrimeLabel::Trivial,
            1 => GPrimeLabel::LdsMinus,
            n => GPrimeLabel::DsMinus(-n),
        };
        Ok(TableRow {
            m,
            labels: vec![
                LRepLabel {
                    gprime: first,
                    kprime: k_u,
                },
                LRepLabel {
                    gprime: second,
                    kprime: k_1,
                },
            ],
            evidence: vec![ev_u, ev_1],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Sl2Spectral {
        Sl2Spectral::new().unwrap()
    }

    #[test]
    fn spin_weights_computed() {
        assert_eq!(ctx().spin_weights(), &[-1, 1]);
    }

    #[test]
    fn z_acts_by_i_over_root2() {
        let c = ctx();
        assert_eq!(c.gamma_z_scalar().unwrap(), &ExactScalar::i() * &ExactScalar::inv_sqrt2());
    }

    #[test]
    fn character_actions() {
        let c = ctx();
        let w = c.named("W").unwrap();
        let z = c.named("Z").unwrap();
        let half_i = &ExactScalar::i() * &ExactScalar::ratio(1, 2);
        for (a, b) in [(3, 1), (-2, 5), (0, 0)] {
            let ch = CharacterLabel::new(a, b);
            assert_eq!(c.character_action(&ch, &w).unwrap(), &half_i * &ExactScalar::int(a + b));
            assert_eq!(c.character_action(&ch, &z).unwrap(), &half_i * &ExactScalar::int(a - b));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let c = ctx();
        let e = WeightModule::sl2_irrep(4);
        let b = PeterWeylBlock::new(0, 0, SpinLabel::One, &e).unwrap();
        assert!(c.block_eigenvalue(&b).unwrap().is_zero());
        let b = PeterWeylBlock::new(3, 1, SpinLabel::One, &e).unwrap();
        assert_eq!(c.block_eigenvalue(&b).unwrap(), ExactScalar::inv_sqrt2());
        let b = PeterWeylBlock::new(-3, -1, SpinLabel::U, &e).unwrap();
        assert_eq!(c.block_eigenvalue(&b).unwrap(), -&ExactScalar::inv_sqrt2());
        assert!(matches!(
            PeterWeylBlock::new(5, 5, SpinLabel::One, &e),
            Err(Error::InadmissibleBlock(_))
        ));
    }

    #[test]
    fn cubic_scalar_and_sign_control() {
        let c = ctx();
        assert_eq!(c.cubic_scalar().unwrap(), ExactScalar::inv_sqrt2());
        assert_eq!(c.cubic_scalar_scaled(&ExactScalar::int(-2)).unwrap(), -&ExactScalar::inv_sqrt2());
    }

    #[test]
    fn cancellation_parity() {
        let c = ctx();
        let out = c.cubic_cancellation(&WeightModule::sl2_irrep(0)).unwrap();
        assert!(out.holds());
        assert!(out.blocks.iter().any(|b| b.right == CharacterLabel::new(-1, 1)));
        let odd = c.cubic_cancellation(&WeightModule::sl2_irrep(1)).unwrap();
        assert!(odd.blocks.is_empty() && odd.holds());
    }

    #[test]
    fn kernel_dh_examples() {
        let c = ctx();
        assert_eq!(
            c.kernel_dh(&WeightModule::sl2_irrep(2)).unwrap(),
            vec![(-2, "1".to_string()), (2, "e".to_string())]
        );
        assert_eq!(
            c.kernel_dh(&WeightModule::sl2_irrep(0)).unwrap(),
            vec![(0, "1".to_string()), (0, "e".to_string())]
        );
    }

    #[test]
    fn kernel_controls() {
        let c = ctx();
        let e = WeightModule::sl2_irrep(2);
        let ge = c.s_sprime.gamma_vector(&c.pair_sprime.project(&unit_vector(3, 1)).unwrap());
        let gf = c.s_sprime.gamma_vector(&c.pair_sprime.project(&unit_vector(3, 2)).unwrap());
        let ef = e.generator(1).kron(&gf);
        let fe = e.generator(2).kron(&ge);
        let plus = &ef + &fe;
        assert_eq!(plus, c.dirac_gprime(&e, None).unwrap());
        // the antisymmetric combination only flips signs inside each 2x2 block
        assert_eq!(plus.nullspace(), (&ef - &fe).nullspace());
        assert_ne!(plus.nullspace(), ef.nullspace());
    }

    #[test]
    fn truncated_kernels() {
        let c = ctx();
        let k = c.dirac_kernel(&WeightModule::highest_weight_module(-4, 40).unwrap()).unwrap();
        assert_eq!(k.entries.len(), 1);
        assert!(k.contains(-3, "e"));
        let k = c.dirac_kernel(&WeightModule::lowest_weight_module(3, 40).unwrap()).unwrap();
        assert_eq!(k.entries.len(), 1);
        assert!(k.contains(2, "1"));
    }

    #[test]
    fn reduction_blocks_m2() {
        let c = ctx();
        let out = c.reduction_blocks(2).unwrap();
        assert!(out.failures.is_empty(), "{:?}", out.failures);
        assert_eq!(out.u_block.right, CharacterLabel::new(-3, -1));
        assert_eq!(out.one_block.right, CharacterLabel::new(1, 3));
        let out0 = c.reduction_blocks(0).unwrap();
        assert_eq!(out0.u_block.right, out0.one_block.right);
        assert_ne!(out0.u_block.spin_ls, out0.one_block.spin_ls);
    }

    #[test]
    fn table_rows() {
        let c = ctx();
        let scan = c.scan_candidates(DEFAULT_TRUNCATION).unwrap();
        let row = |m| c.representation_table(m, &scan).unwrap().labels;
        use GPrimeLabel::*;
        assert_eq!(
            row(3),
            vec![LRepLabel { gprime: DsPlus(5), kprime: 2 }, LRepLabel { gprime: DsMinus(-3), kprime: -4 }]
        );
        assert_eq!(
            row(1),
            vec![LRepLabel { gprime: DsPlus(3), kprime: 0 }, LRepLabel { gprime: LdsMinus, kprime: -2 }]
        );
        assert_eq!(
            row(0),
            vec![LRepLabel { gprime: DsPlus(2), kprime: -1 }, LRepLabel { gprime: Trivial, kprime: -1 }]
        );
        let json = c.representation_table(0, &scan).unwrap().to_json_rows().to_string();
        assert_eq!(json, r#"[["DS+",2,"C",-1],["Trivial",null,"C",-1]]"#);
    }
}

#[cfg(test)]
mod transported_spin {
    use super::*;

    /// Weight-vector support of `ker D_{h,h∩k}(E)` on `E ⊗ S_{h∩s}`, with the
    /// spin polarization carried over from `S_{l∩s}`.
    fn native_kernel(m: usize) -> Vec<(i64, usize)> {
        let c = Sl2Spectral::new().unwrap();
        let e = WeightModule::sl2_irrep(2 * m);
        let d = c.setup.d_h_hk_native(&e).unwrap();
        let ds = c.setup.s_hs.dim();
        let mut out = Vec::new();
        for v in d.nullspace() {
            let support: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
            assert_eq!(support.len(), 1, "not a weight vector: {support:?}");
            out.push((e.weights()[support[0] / ds], support[0] % ds));
        }
        out.sort();
        out
    }

    // The transported u (mask 1) pairs with the lowest weight of E, the
    // opposite line to the u-block, whose E-weight is 2m.
    #[test]
    fn transported_polarization_kernel_lines() {
        for m in 1..=3i64 {
            assert_eq!(native_kernel(m as usize), vec![(-2 * m, 1), (2 * m, 0)]);
            let blk = PeterWeylBlock::new(-m - 1, -m + 1, SpinLabel::U, &WeightModule::sl2_irrep(2 * m as usize)).unwrap();
            assert_eq!(blk.e_weight, 2 * m);
        }
    }
}
