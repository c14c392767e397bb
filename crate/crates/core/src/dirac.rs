//! Algebraic and geometric Dirac operators and the transfer from `G/H` to `L/L∩H`.
//!
//! A geometric Dirac operator is kept as a formal first-order element
//! `Σ Y ⊗ M`, where `Y` runs over a basis of enveloping symbols (plus the
//! unit) and `M` is an endomorphism of `S ⊗ E`. Matrices act on `S ⊗ E` with
//! the spin index slow.
//!
//! The transfer rewrites every `g`-symbol as an `l`-part plus an `h`-part and
//! moves the `h`-part into the endomorphism factor with
//! `X ⊗ M ↦ −1 ⊗ M∘dτ(X)`, where `dτ(X) = γ(α_h(X)) ⊗ 1 + 1 ⊗ β(X)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::clifford::{CliffordElement, ReductivePair};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, vec_add, vec_is_zero, vec_scale, vec_sub, ExactMatrix, ExactVector};
use crate::modules::WeightModule;
use crate::scalar::ExactScalar;
use crate::spin::{graded_tensor_action, mult_iso, SpaceSplit, SpinModule};
use crate::triple::TripleData;

/// A basis of enveloping symbols, given as vectors of the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolBasis {
    pub name: String,
    pub labels: Vec<String>,
    pub vectors: Vec<ExactVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Unit,
    Basis(usize),
}

/// A finite sum `Σ symbol ⊗ matrix` with at most one entry per symbol and
/// no zero matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalDiracElement {
    symbols: Arc<SymbolBasis>,
    dim: usize,
    terms: BTreeMap<Symbol, ExactMatrix>,
}

impl FormalDiracElement {
    pub fn zero(symbols: Arc<SymbolBasis>, dim: usize) -> Self {
        FormalDiracElement {
            symbols,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn symbols(&self) -> &Arc<SymbolBasis> {
        &self.symbols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Symbol, ExactMatrix> {
        &self.terms
    }

    pub fn term(&self, s: Symbol) -> ExactMatrix {
        self.terms
            .get(&s)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.dim, self.dim))
    }

    pub fn symbol_label(&self, s: Symbol) -> String {
        match s {
            Symbol::Unit => "1".into(),
            Symbol::Basis(i) => self.symbols.labels[i].clone(),
        }
    }

    pub fn add_term(&mut self, s: Symbol, m: &ExactMatrix) {
        assert_eq!((m.rows(), m.cols()), (self.dim, self.dim), "endomorphism has the wrong size");
        let sum = &self.term(s) + m;
        if sum.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, sum);
        }
    }

    /// Adds `Y ⊗ m` for an arbitrary vector `Y` in the span of the symbols.
    pub fn add_vector_term(&mut self, y: &[ExactScalar], m: &ExactMatrix) -> Result<()> {
        if vec_is_zero(y) {
            return Ok(());
        }
        let c = coordinates(&self.symbols.vectors, y)
            .map_err(|_| Error::NotInSpan(format!("symbol is not in the span of {}", self.symbols.name)))?;
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                self.add_term(Symbol::Basis(i), &m.scale(ci));
            }
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.symbols != other.symbols || self.dim != other.dim {
            return Err(Error::IncompatibleSpaces("formal elements over different symbols".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (s, m) in &other.terms {
            out.add_term(*s, m);
        }
        Ok(out)
    }

    pub fn scale(&self, x: &ExactScalar) -> Self {
        let mut out = Self::zero(self.symbols.clone(), self.dim);
        for (s, m) in &self.terms {
            out.add_term(*s, &m.scale(x));
        }
        out
    }

    /// Labels of the symbols whose matrices differ, with a short entry diff.
    pub fn mismatches(&self, other: &Self) -> Vec<(String, String)> {
        let mut keys: Vec<Symbol> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|s| {
                let (a, b) = (self.term(s), other.term(s));
                (a != b).then(|| (self.symbol_label(s), a.diff_summary(&b, 2)))
            })
            .collect()
    }
}

impl fmt::Debug for FormalDiracElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalDiracElement over {} [", self.symbols.name)?;
        for (s, m) in &self.terms {
            write!(f, " {} ⊗ {:?};", self.symbol_label(*s), m)?;
        }
        write!(f, " ]")
    }
}

/// Operator on `A ⊗ B` rewritten as an operator on `B ⊗ A`.
pub fn swap_tensor_factors(m: &ExactMatrix, da: usize, db: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(da * db, da * db);
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    let x = m.get(a * db + b, a2 * db + b2);
                    if !x.is_zero() {
                        out.set(b * da + a, b2 * da + a2, x.clone());
                    }
                }
            }
        }
    }
    out
}

/// Operator `M` on `A ⊗ C` extended to `A ⊗ B ⊗ C` by the identity on `B`.
pub fn insert_identity_middle(m: &ExactMatrix, da: usize, db: usize, dc: usize) -> ExactMatrix {
    let n = da * db * dc;
    let mut out = ExactMatrix::zeros(n, n);
    for a in 0..da {
        for c in 0..dc {
            for a2 in 0..da {
                for c2 in 0..dc {
                    let x = m.get(a * dc + c, a2 * dc + c2);
                    if x.is_zero() {
                        continue;
                    }
                    for b in 0..db {
                        out.set((a * db + b) * dc + c, (a2 * db + b) * dc + c2, x.clone());
                    }
                }
            }
        }
    }
    out
}

/// `D = Σ_j π(X_j) ⊗ γ(X^j)` on `V ⊗ S`, with `X^j` the dual basis of `X_j`.
///
/// `module_map` sends coordinates of the pair's algebra to coordinates of the
/// algebra `V` is a module for. Without an explicit basis the complement's
/// orthonormal basis is used.
pub fn algebraic_dirac(
    pair: &ReductivePair,
    v: &WeightModule,
    module_map: &ExactMatrix,
    spin: &SpinModule,
    basis: Option<&[ExactVector]>,
) -> Result<ExactMatrix> {
    let alg = pair.algebra();
    let basis: Vec<ExactVector> = basis.map_or_else(|| pair.complement().to_vec(), <[_]>::to_vec);
    let k = basis.len();
    if k != pair.space().dim() {
        return Err(Error::Dimension("basis size differs from the complement dimension".into()));
    }
    let mut gram = ExactMatrix::zeros(k, k);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            gram.set(i, j, alg.form_eval(x, y));
        }
    }
    let inv = gram.inverse()?;
    let mut out = ExactMatrix::zeros(v.dim() * spin.dim(), v.dim() * spin.dim());
    for (j, xj) in basis.iter().enumerate() {
        let mut dual = alg.zero_vector();
        for (l, xl) in basis.iter().enumerate() {
            let c = inv.get(l, j);
            if !c.is_zero() {
                dual = vec_add(&dual, &vec_scale(xl, c));
            }
        }
        let pi = v.pi(&module_map.mul_vec(xj));
        let gamma = spin.gamma_vector(&pair.project(&dual)?);
        out = &out + &pi.kron(&gamma);
    }
    Ok(out)
}

/// Everything attached to a type S triple that the embedding identity needs.
#[derive(Clone, Debug)]
pub struct DiracSetup {
    pub triple: Arc<TripleData>,
    pub s_ls: SpinModule,
    pub s_qlp: SpinModule,
    pub s_ql: SpinModule,
    pub s_hs: SpinModule,
    pub split: SpaceSplit,
    /// `S_{l∩s} ⊗ S_{q_l'} → S_{q_l}`.
    pub mult: ExactMatrix,
    pub pair_g_h: ReductivePair,
    pub pair_l_lh: ReductivePair,
    pub pair_h_hk: ReductivePair,
    pub g_symbols: Arc<SymbolBasis>,
    pub l_symbols: Arc<SymbolBasis>,
    module_map: ExactMatrix,
}

/// Which coefficient multiplies `1 ⊗ γ(c) ⊗ 1` on the right-hand side.
#[derive(Clone, Debug, Default)]
pub struct RhsOptions {
    pub cubic_override: Option<ExactScalar>,
}

/// Constituent operators of the right-hand side, as formal elements over `l`.
#[derive(Clone, Debug)]
pub struct RhsParts {
    pub d_hat_l_lh: FormalDiracElement,
    pub d_lk_lh: FormalDiracElement,
    pub d_l_lk: FormalDiracElement,
    pub gamma_c: ExactMatrix,
    pub d_h_hk: ExactMatrix,
}

impl DiracSetup {
    pub fn new(triple: Arc<TripleData>) -> Result<Self> {
        triple.require_type_s()?;
        let module_map = triple
            .module_map()
            .cloned()
            .ok_or_else(|| Error::InvalidTriple("triple has no module map for coefficient modules".into()))?;
        let s_ls = SpinModule::standard(triple.ls_space()?)?;
        let s_qlp = SpinModule::standard(triple.ql_prime_space()?)?;
        let split = SpaceSplit::by_labels(triple.ql_space()?, triple.ls_space()?, triple.ql_prime_space()?)?;
        let s_ql = split.joint_module(&s_ls, &s_qlp)?;
        let mult = mult_iso(&s_ls, &s_qlp)?;
        // ρ⁺ maps T_k to the k-th generator of h∩s isometrically, so the
        // polarization coordinates carry over unchanged.
        let hs = triple.hs_space()?;
        let p = s_ls.polarization().clone();
        let pol = crate::spin::Polarization::new(&hs, p.plus, p.minus, p.plus_labels, p.odd_vector, p.zeta)?;
        let s_hs = SpinModule::new(hs, pol);
        let q = triple.q_basis()?;
        let mut g_labels: Vec<String> = q.iter().map(|v| v.label.clone()).collect();
        let mut g_vectors: Vec<ExactVector> = q.iter().map(|v| v.coords.clone()).collect();
        for v in triple.h_basis() {
            g_labels.push(v.label.clone());
            g_vectors.push(v.coords.clone());
        }
        let l_named: Vec<_> = triple.lh_basis().iter().chain(triple.ql_named()).collect();
        let g_symbols = Arc::new(SymbolBasis {
            name: "g".into(),
            labels: g_labels,
            vectors: g_vectors,
        });
        let l_symbols = Arc::new(SymbolBasis {
            name: "l".into(),
            labels: l_named.iter().map(|v| v.label.clone()).collect(),
            vectors: l_named.iter().map(|v| v.coords.clone()).collect(),
        });
        Ok(DiracSetup {
            pair_g_h: triple.pair_g_h()?,
            pair_l_lh: triple.pair_l_lh()?,
            pair_h_hk: triple.pair_h_hk()?,
            triple,
            s_ls,
            s_qlp,
            s_ql,
            s_hs,
            split,
            mult,
            g_symbols,
            l_symbols,
            module_map,
        })
    }

    pub fn module_map(&self) -> &ExactMatrix {
        &self.module_map
    }

    fn total_dim(&self, e: &WeightModule) -> usize {
        self.s_ql.dim() * e.dim()
    }

    /// `γ_{q_l}(x) ⊗ 1_E`.
    fn spin_part(&self, x: &CliffordElement, e: &WeightModule) -> Result<ExactMatrix> {
        Ok(self.s_ql.gamma(x)?.kron(&ExactMatrix::identity(e.dim())))
    }

    /// `D_{G/H}(E) = Σ_i ε_i ρ⁻(e_i) ⊗ γ(e_i) ⊗ 1` over the `q_l` basis, with
    /// `S_q` identified with `S_{q_l}` through `ρ⁻`.
    pub fn geometric_dirac_element(&self, e: &WeightModule) -> Result<FormalDiracElement> {
        let ql = self.s_ql.space().clone();
        let mut d = FormalDiracElement::zero(self.g_symbols.clone(), self.total_dim(e));
        for i in 0..ql.dim() {
            let m = self.spin_part(&CliffordElement::generator(&ql, i), e)?.scale(&ql.sign(i));
            d.add_term(Symbol::Basis(i), &m);
        }
        Ok(d)
    }

    /// `dτ(X) = γ_{q_l}(ρ⁻⁻¹ α_h(X)) ⊗ 1 + 1 ⊗ β(X)` for `X ∈ h`.
    pub fn d_tau(&self, x: &[ExactScalar], e: &WeightModule) -> Result<ExactMatrix> {
        let ql = self.s_ql.space();
        let images: Vec<CliffordElement> = (0..ql.dim()).map(|i| CliffordElement::generator(ql, i)).collect();
        let alpha = self.pair_g_h.alpha(x)?.map_generators(ql, &images)?;
        let spin = self.spin_part(&alpha, e)?;
        let beta = ExactMatrix::identity(self.s_ql.dim()).kron(&e.pi(&self.module_map.mul_vec(x)));
        Ok(&spin + &beta)
    }

    /// Splits `Y ∈ g` as `Σ c_i d_i e_i` (in `q_l`) plus an element of `h`,
    /// using `ρ⁻(e_i) = d_i e_i − ρ⁺(e_i)`.
    pub fn split_symbol(&self, y: &[ExactScalar]) -> Result<(ExactVector, ExactVector)> {
        let t = &self.triple;
        let half = ExactScalar::ratio(1, 2);
        let sy = t.sigma().mul_vec(y);
        let y_h = vec_scale(&vec_add(y, &sy), &half);
        let y_q = vec_scale(&vec_sub(y, &sy), &half);
        let g = t.g();
        let mut l_part = g.zero_vector();
        let mut h_part = y_h;
        let mut rebuilt = g.zero_vector();
        for v in t.ql_named() {
            let rm = t.rho_minus(&v.coords)?;
            let eps = g.form_eval(&rm, &rm);
            let c = &eps * &g.form_eval(&y_q, &rm);
            if c.is_zero() {
                continue;
            }
            rebuilt = vec_add(&rebuilt, &vec_scale(&rm, &c));
            let d = TripleData::d_nu(&t.nu_of(&v.coords)?)?;
            l_part = vec_add(&l_part, &vec_scale(&v.coords, &(&c * &d)));
            h_part = vec_sub(&h_part, &vec_scale(&t.rho_plus(&v.coords)?, &c));
        }
        if rebuilt != y_q {
            return Err(Error::ResidualHSymbol("q-part is not spanned by the ρ⁻ images".into()));
        }
        if t.sigma().mul_vec(&h_part) != h_part {
            return Err(Error::ResidualHSymbol("h-part is not fixed by sigma".into()));
        }
        Ok((l_part, h_part))
    }

    /// Transfers a formal element over `g` to one over `l`.
    pub fn transfer(&self, d: &FormalDiracElement, e: &WeightModule) -> Result<FormalDiracElement> {
        let mut out = FormalDiracElement::zero(self.l_symbols.clone(), d.dim());
        for (s, m) in d.terms() {
            let y = match s {
                Symbol::Unit => {
                    out.add_term(Symbol::Unit, m);
                    continue;
                }
                Symbol::Basis(i) => &d.symbols().vectors[*i],
            };
            let (l_part, h_part) = self.split_symbol(y)?;
            out.add_vector_term(&l_part, m)?;
            if !vec_is_zero(&h_part) {
                let moved = (m * &self.d_tau(&h_part, e)?).scale(&ExactScalar::int(-1));
                out.add_term(Symbol::Unit, &moved);
            }
        }
        Ok(out)
    }

    /// The graded action of `c ⊗ d` moved to `S_{q_l}` by the multiplication map, tensored with `1_E`.
    fn split_action(&self, c: &CliffordElement, d: &CliffordElement, e: &WeightModule) -> Result<ExactMatrix> {
        let g = graded_tensor_action(&self.s_ls, &self.s_qlp, c, d)?;
        let moved = &(&self.mult * &g) * &self.mult.transpose();
        Ok(moved.kron(&ExactMatrix::identity(e.dim())))
    }

    /// `D_{h,h∩k}(E)` as an operator on `E ⊗ S_{h∩s}`.
    pub fn d_h_hk_native(&self, e: &WeightModule) -> Result<ExactMatrix> {
        algebraic_dirac(&self.pair_h_hk, e, &self.module_map, &self.s_hs, None)
    }

    /// The constituent operators of the right-hand side.
    pub fn rhs_parts(&self, e: &WeightModule) -> Result<RhsParts> {
        let dim = self.total_dim(e);
        let ql = self.s_ql.space().clone();
        let ls = self.s_ls.space().clone();
        let qlp = self.s_qlp.space().clone();
        let mut d_hat = FormalDiracElement::zero(self.l_symbols.clone(), dim);
        for (i, v) in self.triple.ql_named().iter().enumerate() {
            let m = self.spin_part(&CliffordElement::generator(&ql, i), e)?.scale(&ql.sign(i));
            d_hat.add_vector_term(&v.coords, &m)?;
        }
        let mut d_lk_lh = FormalDiracElement::zero(self.l_symbols.clone(), dim);
        for (j, v) in self.triple.ql_prime_basis().iter().enumerate() {
            let m = self
                .split_action(&CliffordElement::one(&ls), &CliffordElement::generator(&qlp, j), e)?
                .scale(&qlp.sign(j));
            d_lk_lh.add_vector_term(&v.coords, &m)?;
        }
        let mut d_l_lk = FormalDiracElement::zero(self.l_symbols.clone(), dim);
        for (k, v) in self.triple.ls_basis().iter().enumerate() {
            let m = self
                .split_action(&CliffordElement::generator(&ls, k), &CliffordElement::one(&qlp), e)?
                .scale(&ls.sign(k));
            d_l_lk.add_vector_term(&v.coords, &m)?;
        }
        let gamma_c = self.spin_part(&self.pair_l_lh.cubic_element(), e)?;
        // E ⊗ S_{h∩s} → S_{l∩s} ⊗ E → S_{l∩s} ⊗ S_{q_l'} ⊗ E → S_{q_l} ⊗ E
        let native = self.d_h_hk_native(e)?;
        let swapped = swap_tensor_factors(&native, e.dim(), self.s_hs.dim());
        let widened = insert_identity_middle(&swapped, self.s_ls.dim(), self.s_qlp.dim(), e.dim());
        let p = self.mult.kron(&ExactMatrix::identity(e.dim()));
        let d_h_hk = &(&p * &widened) * &p.transpose();
        Ok(RhsParts {
            d_hat_l_lh: d_hat,
            d_lk_lh,
            d_l_lk,
            gamma_c,
            d_h_hk,
        })
    }

    /// The right-hand side of the embedding identity in either of its two forms.
    ///
    /// Form 1: `√2 D_{L/L∩H} + (1−√2) D_{L∩K/L∩H} + (√2−2) ⊗ γ(c) ⊗ 1 + 1 ⊗ D_{h,h∩k}`
    /// with `D_{L/L∩H} = D̂_{L/L∩H} − 1 ⊗ γ(c) ⊗ 1`.
    /// Form 2: `√2 D_{L/L∩K} + D_{L∩K/L∩H} − 2 ⊗ γ(c) ⊗ 1 + 1 ⊗ D_{h,h∩k}`.
    pub fn assemble_rhs(&self, e: &WeightModule, form: u8, options: &RhsOptions) -> Result<FormalDiracElement> {
        let parts = self.rhs_parts(e)?;
        let r2 = ExactScalar::sqrt2();
        let one = ExactScalar::one();
        let mut out = match form {
            1 => {
                let mut d_l_lh = parts.d_hat_l_lh.clone();
                d_l_lh.add_term(Symbol::Unit, &parts.gamma_c.scale(&ExactScalar::int(-1)));
                let cubic = options.cubic_override.clone().unwrap_or(&r2 - &ExactScalar::int(2));
                let mut out = d_l_lh.scale(&r2).try_add(&parts.d_lk_lh.scale(&(&one - &r2)))?;
                out.add_term(Symbol::Unit, &parts.gamma_c.scale(&cubic));
                out
            }
            2 => {
                let cubic = options.cubic_override.clone().unwrap_or(ExactScalar::int(-2));
                let mut out = parts.d_l_lk.scale(&r2).try_add(&parts.d_lk_lh)?;
                out.add_term(Symbol::Unit, &parts.gamma_c.scale(&cubic));
                out
            }
            other => return Err(Error::Parse(format!("unknown form {other}; expected 1 or 2"))),
        };
        out.add_term(Symbol::Unit, &parts.d_h_hk);
        Ok(out)
    }

    /// Pieces of the transferred unit term: `Σ_k γ(T_k) γ(α_h(ρ⁺T_k))` (spin
    /// only) and `Σ_k γ(T_k) ⊗ β(ρ⁺T_k)`.
    pub fn unit_term_pieces(&self, e: &WeightModule) -> Result<(ExactMatrix, ExactMatrix)> {
        let ql = self.s_ql.space().clone();
        let images: Vec<CliffordElement> = (0..ql.dim()).map(|i| CliffordElement::generator(&ql, i)).collect();
        let offset = self.triple.ql_prime_basis().len();
        let mut d2 = ExactMatrix::zeros(self.total_dim(e), self.total_dim(e));
        let mut d3 = d2.clone();
        for (k, v) in self.triple.ls_basis().iter().enumerate() {
            let rp = self.triple.rho_plus(&v.coords)?;
            let tk = CliffordElement::generator(&ql, offset + k);
            let alpha = self.pair_g_h.alpha(&rp)?.map_generators(&ql, &images)?;
            d2 = &d2 + &self.spin_part(&tk.try_mul(&alpha)?, e)?;
            let beta = e.pi(&self.module_map.mul_vec(&rp));
            d3 = &d3 + &self.s_ql.gamma(&tk)?.kron(&beta);
        }
        Ok((d2, d3))
    }
}

/// Outcome of comparing the transferred operator with one form of the right-hand side.
#[derive(Clone, Debug)]
pub struct EmbeddingComparison {
    pub form: u8,
    pub lhs: FormalDiracElement,
    pub rhs: FormalDiracElement,
    pub mismatches: Vec<(String, String)>,
}

impl EmbeddingComparison {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `transfer(D_{G/H}(E))` with the given form of the right-hand side.
pub fn compare_embedding(setup: &DiracSetup, e: &WeightModule, form: u8, options: &RhsOptions) -> Result<EmbeddingComparison> {
    let lhs = setup.transfer(&setup.geometric_dirac_element(e)?, e)?;
    let rhs = setup.assemble_rhs(e, form, options)?;
    let mismatches = lhs.mismatches(&rhs);
    Ok(EmbeddingComparison {
        form,
        lhs,
        rhs,
        mismatches,
    })
}

/// One instance of `⟨[ρ⁺T_k, ρ⁻Z_r], ρ⁻T_i⟩ = ⟨[T_k, Z_r], T_i⟩`.
#[derive(Clone, Debug)]
pub struct BracketIdentity {
    pub labels: (String, String, String),
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

pub fn bracket_identities(t: &TripleData) -> Result<Vec<BracketIdentity>> {
    let g = t.g();
    let mut out = Vec::new();
    for tk in t.ls_basis() {
        for zr in t.ql_prime_basis() {
            for ti in t.ls_basis() {
                let lhs = g.form_eval(
                    &g.bracket(&t.rho_plus(&tk.coords)?, &t.rho_minus(&zr.coords)?),
                    &t.rho_minus(&ti.coords)?,
                );
                let rhs = g.form_eval(&g.bracket(&tk.coords, &zr.coords), &ti.coords);
                out.push(BracketIdentity {
                    labels: (tk.label.clone(), zr.label.clone(), ti.label.clone()),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(out)
}

/// One instance of `ω(ρ⁺X, ρ⁻Y, ρ⁻Z) = ¼ d_ν d_ν′ d_ν″ (1+ν−ν′−ν″) ω(X, Y, Z)`.
#[derive(Clone, Debug)]
pub struct OmegaIdentity {
    pub labels: (String, String, String),
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

pub fn omega_identities(t: &TripleData) -> Result<Vec<OmegaIdentity>> {
    let ql = t.ql_named();
    let mut out = Vec::new();
    for x in &ql {
        for y in &ql {
            for z in &ql {
                let (nx, ny, nz) = (t.nu_of(&x.coords)?, t.nu_of(&y.coords)?, t.nu_of(&z.coords)?);
                let d = &(&TripleData::d_nu(&nx)? * &TripleData::d_nu(&ny)?) * &TripleData::d_nu(&nz)?;
                let coeff = &(&d * &ExactScalar::ratio(1, 4)) * &(&(&(&ExactScalar::one() + &nx) - &ny) - &nz);
                let lhs = t.omega(&t.rho_plus(&x.coords)?, &t.rho_minus(&y.coords)?, &t.rho_minus(&z.coords)?);
                let rhs = &coeff * &t.omega(&x.coords, &y.coords, &z.coords);
                out.push(OmegaIdentity {
                    labels: (x.label.clone(), y.label.clone(), z.label.clone()),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::build_sl2_triple;

    fn setup() -> DiracSetup {
        DiracSetup::new(Arc::new(build_sl2_triple())).unwrap()
    }

    #[test]
    fn geometric_element_has_three_terms() {
        let s = setup();
        let e = WeightModule::sl2_irrep(2);
        let d = s.geometric_dirac_element(&e).unwrap();
        assert_eq!(d.terms().len(), 3);
        // Z-term: −γ(Z)⊗1, squares to −(−1/2)·1
        let z = d.term(Symbol::Basis(0));
        assert!((&z * &z).is_scalar_multiple_of_identity(&ExactScalar::ratio(-1, 2)));
        let t1 = d.term(Symbol::Basis(1));
        assert!((&t1 * &t1).is_scalar_multiple_of_identity(&ExactScalar::ratio(1, 2)));
    }

    #[test]
    fn transfer_splits_symbols() {
        let s = setup();
        let t = &s.triple;
        let z = &t.ql_prime_basis()[0].coords;
        let (l, h) = s.split_symbol(&t.rho_minus(z).unwrap()).unwrap();
        assert_eq!(&l, z);
        assert!(vec_is_zero(&h));
        let t1 = &t.ls_basis()[0].coords;
        let (l, h) = s.split_symbol(&t.rho_minus(t1).unwrap()).unwrap();
        assert_eq!(l, vec_scale(t1, &ExactScalar::sqrt2()));
        assert_eq!(h, vec_scale(&t.rho_plus(t1).unwrap(), &ExactScalar::int(-1)));
    }

    #[test]
    fn unit_term_cubic_piece() {
        let s = setup();
        let e = WeightModule::sl2_irrep(0);
        let (d2, _) = s.unit_term_pieces(&e).unwrap();
        let c = s.spin_part(&s.pair_l_lh.cubic_element(), &e).unwrap();
        assert_eq!(d2, c.scale(&ExactScalar::int(-2)));
    }

    #[test]
    fn both_forms_hold_for_small_modules() {
        let s = setup();
        for n in [0, 1, 2] {
            let e = WeightModule::sl2_irrep(n);
            for form in [1, 2] {
                let cmp = compare_embedding(&s, &e, form, &RhsOptions::default()).unwrap();
                assert!(cmp.holds(), "n={n} form={form}: {:?}", cmp.mismatches);
            }
        }
    }

    #[test]
    fn perturbed_cubic_coefficient_fails_on_unit_only() {
        let s = setup();
        let e = WeightModule::sl2_irrep(2);
        let opts = RhsOptions {
            cubic_override: Some(ExactScalar::int(-1)),
        };
        let cmp = compare_embedding(&s, &e, 2, &opts).unwrap();
        let syms: Vec<&str> = cmp.mismatches.iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(syms, vec!["1"]);
    }

    #[test]
    fn bracket_identity_values() {
        let t = build_sl2_triple();
        let ids = bracket_identities(&t).unwrap();
        assert_eq!(ids.len(), 4);
        for id in &ids {
            assert_eq!(id.lhs, id.rhs);
        }
        // k = T1, i = T2: ⟨[T1, Z], T2⟩ = −1
        let v = ids.iter().find(|i| i.labels == ("T1".into(), "Z".into(), "T2".into())).unwrap();
        assert_eq!(v.rhs, ExactScalar::int(-1));
    }

    #[test]
    fn omega_identity_all_triples() {
        let t = build_sl2_triple();
        let ids = omega_identities(&t).unwrap();
        assert_eq!(ids.len(), 27);
        assert!(ids.iter().all(|i| i.lhs == i.rhs));
    }

    #[test]
    fn tensor_reshuffles() {
        let a = ExactMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::from_int_rows(&[&[0, 5], &[6, 7]]);
        assert_eq!(swap_tensor_factors(&a.kron(&b), 2, 2), b.kron(&a));
        let c = ExactMatrix::identity(3);
        assert_eq!(insert_identity_middle(&a.kron(&b), 2, 3, 2), a.kron(&c).kron(&b));
    }
}
