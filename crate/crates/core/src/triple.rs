//! Transitive triples at the Lie algebra level.
//!
//! A triple is a Lie algebra `g` with an invariant form, two commuting
//! involutive automorphisms `σ` (fixing `h`) and `θ` (fixing `k`), and a
//! θ-stable subalgebra `l`. The complement `q_l` of `l∩h` in `l` splits into
//! the ν-eigenspaces `l(ν)` of `(X, Y) ↦ ⟨σX, Y⟩` against the form, and the
//! maps `ρ^±(X) = d_ν (X ± σX)/2` with `d_ν = ((1−ν)/2)^{−1/2}` send `q_l`
//! to `h` and `q`.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::clifford::{QuadraticSpace, ReductivePair};
use crate::error::{Error, Result};
use crate::lie::{self, LieAlgebra};
use crate::linalg::{coordinates, vec_add, vec_is_zero, vec_scale, vec_sub, ExactMatrix, ExactVector};
use crate::scalar::{ExactScalar, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVector {
    pub label: String,
    pub coords: ExactVector,
}

impl NamedVector {
    pub fn new(label: impl Into<String>, coords: ExactVector) -> Self {
        NamedVector {
            label: label.into(),
            coords,
        }
    }
}

/// One eigenspace `l(ν)`, with a basis of vectors in `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuSpace {
    pub nu: ExactScalar,
    pub basis: Vec<ExactVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    name: String,
    g: Arc<LieAlgebra>,
    sigma: ExactMatrix,
    theta: ExactMatrix,
    h_basis: Vec<NamedVector>,
    l_basis: Vec<NamedVector>,
    lh_basis: Vec<NamedVector>,
    ql_prime_basis: Vec<NamedVector>,
    ls_basis: Vec<NamedVector>,
    module_map: Option<ExactMatrix>,
    nu_spaces: Vec<NuSpace>,
}

/// Summary of the features that make a triple of type S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSFacts {
    pub rho_plus_surjective: bool,
    pub rho_plus_injective: bool,
    pub ls_dim_even: bool,
    pub lambdas: Vec<ExactScalar>,
    pub mus: Vec<ExactScalar>,
}

impl TypeSFacts {
    pub fn is_type_s(&self) -> bool {
        self.rho_plus_surjective && !self.rho_plus_injective
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidTriple(msg.into())
}

fn apply(m: &ExactMatrix, v: &[ExactScalar]) -> ExactVector {
    m.mul_vec(v)
}

fn span_rank(vectors: &[&ExactVector], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols: Vec<ExactVector> = vectors.iter().map(|v| (*v).clone()).collect();
    ExactMatrix::from_columns(n, &cols).rank()
}

impl TripleData {
    /// Builds a triple and checks its structural invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        g: Arc<LieAlgebra>,
        sigma: ExactMatrix,
        theta: ExactMatrix,
        h_basis: Vec<NamedVector>,
        l_basis: Vec<NamedVector>,
        lh_basis: Vec<NamedVector>,
        ql_prime_basis: Vec<NamedVector>,
        ls_basis: Vec<NamedVector>,
        module_map: Option<ExactMatrix>,
    ) -> Result<Self> {
        let mut t = TripleData {
            name: name.into(),
            g,
            sigma,
            theta,
            h_basis,
            l_basis,
            lh_basis,
            ql_prime_basis,
            ls_basis,
            module_map,
            nu_spaces: Vec::new(),
        };
        t.validate_structure()?;
        t.nu_spaces = t.compute_nu_spaces()?;
        t.validate_bases()?;
        Ok(t)
    }

    fn validate_structure(&self) -> Result<()> {
        let g = &self.g;
        let n = g.dim();
        let id = ExactMatrix::identity(n);
        for (name, m) in [("sigma", &self.sigma), ("theta", &self.theta)] {
            if m.rows() != n || m.cols() != n {
                return Err(invalid(format!("{name} has the wrong shape")));
            }
            if m * m != id {
                return Err(invalid(format!("{name} is not an involution")));
            }
            if &(&m.transpose() * g.form()) * m != *g.form() {
                return Err(invalid(format!("{name} does not preserve the form")));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let (x, y) = (g.basis(i), g.basis(j));
                    if apply(m, &g.bracket(&x, &y)) != g.bracket(&apply(m, &x), &apply(m, &y)) {
                        return Err(invalid(format!("{name} is not a Lie algebra automorphism")));
                    }
                }
            }
        }
        if &self.sigma * &self.theta != &self.theta * &self.sigma {
            return Err(invalid("sigma and theta do not commute"));
        }
        for v in self.all_named() {
            if v.coords.len() != n {
                return Err(invalid(format!("{} has {} coordinates, expected {n}", v.label, v.coords.len())));
            }
        }
        // h is the full +1 eigenspace of σ.
        for v in &self.h_basis {
            if apply(&self.sigma, &v.coords) != v.coords {
                return Err(invalid(format!("{} is not fixed by sigma", v.label)));
            }
        }
        let h: Vec<&ExactVector> = self.h_basis.iter().map(|v| &v.coords).collect();
        let fixed = (&self.sigma - &id).nullspace().len();
        if span_rank(&h, n) != h.len() || h.len() != fixed {
            return Err(invalid("h basis does not span the fixed points of sigma"));
        }
        // l is a θ-stable subalgebra with nondegenerate form.
        let l: Vec<ExactVector> = self.l_basis.iter().map(|v| v.coords.clone()).collect();
        if span_rank(&l.iter().collect::<Vec<_>>(), n) != l.len() {
            return Err(invalid("l basis is linearly dependent"));
        }
        for x in &l {
            coordinates(&l, &apply(&self.theta, x)).map_err(|_| invalid("l is not theta-stable"))?;
            for y in &l {
                coordinates(&l, &g.bracket(x, y)).map_err(|_| invalid("l is not a subalgebra"))?;
            }
        }
        if self.l_gram().rank() != l.len() {
            return Err(invalid("form is degenerate on l"));
        }
        let hl: Vec<&ExactVector> = h.iter().copied().chain(l.iter()).collect();
        if span_rank(&hl, n) != n {
            return Err(invalid("g is not the sum of h and l"));
        }
        Ok(())
    }

    fn validate_bases(&self) -> Result<()> {
        let g = &self.g;
        let l: Vec<ExactVector> = self.l_basis.iter().map(|v| v.coords.clone()).collect();
        let pieces: Vec<&ExactVector> = self
            .lh_basis
            .iter()
            .chain(&self.ql_prime_basis)
            .chain(&self.ls_basis)
            .map(|v| &v.coords)
            .collect();
        if pieces.len() != l.len() || span_rank(&pieces, g.dim()) != l.len() {
            return Err(invalid("l∩h, q_l' and l∩s bases do not form a basis of l"));
        }
        for v in &self.lh_basis {
            if apply(&self.sigma, &v.coords) != v.coords {
                return Err(invalid(format!("{} is not in h", v.label)));
            }
        }
        for (group, theta_sign) in [(&self.ql_prime_basis, 1), (&self.ls_basis, -1)] {
            for v in group.iter() {
                coordinates(&l, &v.coords).map_err(|_| invalid(format!("{} is not in l", v.label)))?;
                let expected = vec_scale(&v.coords, &ExactScalar::int(theta_sign));
                if apply(&self.theta, &v.coords) != expected {
                    return Err(invalid(format!("{} has the wrong theta parity", v.label)));
                }
                let nu = self.nu_of(&v.coords)?;
                if nu.is_one() {
                    return Err(invalid(format!("{} lies in l∩h", v.label)));
                }
                let sv = apply(&self.sigma, &v.coords);
                if !vec_is_zero(&g.bracket(&v.coords, &sv)) {
                    return Err(invalid(format!("basis vector {} does not commute with its sigma image", v.label)));
                }
                for w in &self.lh_basis {
                    if !g.form_eval(&v.coords, &w.coords).is_zero() {
                        return Err(invalid(format!("{} is not orthogonal to {}", v.label, w.label)));
                    }
                }
            }
        }
        let ql: Vec<&NamedVector> = self.ql_named();
        for (i, x) in ql.iter().enumerate() {
            for (j, y) in ql.iter().enumerate() {
                let ip = g.form_eval(&x.coords, &y.coords);
                let ok = if i == j {
                    ip.is_one() || ip == ExactScalar::int(-1)
                } else {
                    ip.is_zero()
                };
                if !ok {
                    return Err(invalid(format!("{} and {} are not orthonormal", x.label, y.label)));
                }
            }
        }
        if let Some(m) = &self.module_map {
            if m.cols() != g.dim() {
                return Err(invalid("module map has the wrong number of columns"));
            }
        }
        Ok(())
    }

    fn all_named(&self) -> impl Iterator<Item = &NamedVector> {
        self.h_basis
            .iter()
            .chain(&self.l_basis)
            .chain(&self.lh_basis)
            .chain(&self.ql_prime_basis)
            .chain(&self.ls_basis)
    }

    fn l_gram(&self) -> ExactMatrix {
        let k = self.l_basis.len();
        let mut gm = ExactMatrix::zeros(k, k);
        for (i, x) in self.l_basis.iter().enumerate() {
            for (j, y) in self.l_basis.iter().enumerate() {
                gm.set(i, j, self.g.form_eval(&x.coords, &y.coords));
            }
        }
        gm
    }

    /// Matrix `A` on l-coordinates with `⟨σX, Y⟩ = ⟨AX, Y⟩` for `X, Y ∈ l`.
    fn nu_operator(&self) -> Result<ExactMatrix> {
        let k = self.l_basis.len();
        let mut gs = ExactMatrix::zeros(k, k);
        for (i, x) in self.l_basis.iter().enumerate() {
            let sx = apply(&self.sigma, &x.coords);
            for (j, y) in self.l_basis.iter().enumerate() {
                gs.set(i, j, self.g.form_eval(&sx, &y.coords));
            }
        }
        Ok(&self.l_gram().transpose().inverse()? * &gs.transpose())
    }

    fn compute_nu_spaces(&self) -> Result<Vec<NuSpace>> {
        let a = self.nu_operator()?;
        let k = a.rows();
        let roots = rational_eigenvalues(&a)?;
        let mut spaces = Vec::new();
        let mut total = 0;
        for nu in roots {
            let shifted = &a - &ExactMatrix::scalar(k, nu.clone());
            let basis: Vec<ExactVector> = shifted
                .nullspace()
                .iter()
                .map(|c| self.l_combination(c))
                .collect();
            total += basis.len();
            spaces.push(NuSpace { nu, basis });
        }
        if total != k {
            return Err(Error::EigenvalueOutsideField(
                "ν-eigenspaces do not fill l over Q(√2, i)".into(),
            ));
        }
        Ok(spaces)
    }

    fn l_combination(&self, c: &[ExactScalar]) -> ExactVector {
        let mut out = self.g.zero_vector();
        for (x, v) in c.iter().zip(&self.l_basis) {
            if !x.is_zero() {
                out = vec_add(&out, &vec_scale(&v.coords, x));
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    pub fn sigma(&self) -> &ExactMatrix {
        &self.sigma
    }

    pub fn theta(&self) -> &ExactMatrix {
        &self.theta
    }

    pub fn h_basis(&self) -> &[NamedVector] {
        &self.h_basis
    }

    pub fn l_basis(&self) -> &[NamedVector] {
        &self.l_basis
    }

    pub fn lh_basis(&self) -> &[NamedVector] {
        &self.lh_basis
    }

    pub fn ql_prime_basis(&self) -> &[NamedVector] {
        &self.ql_prime_basis
    }

    pub fn ls_basis(&self) -> &[NamedVector] {
        &self.ls_basis
    }

    /// Linear map from `g`-coordinates to the coordinates of the algebra that
    /// the coefficient modules `E` are defined over.
    pub fn module_map(&self) -> Option<&ExactMatrix> {
        self.module_map.as_ref()
    }

    /// The q_l basis: the `Z_j` followed by the `T_k`.
    pub fn ql_named(&self) -> Vec<&NamedVector> {
        self.ql_prime_basis.iter().chain(&self.ls_basis).collect()
    }

    /// The ν-eigenspaces of `l`, sorted by ν.
    pub fn nu_decompose(&self) -> &[NuSpace] {
        &self.nu_spaces
    }

    /// The ν with `⟨σX, Y⟩ = ν⟨X, Y⟩` for all `Y ∈ l`; fails unless `X` lies in
    /// a single eigenspace.
    pub fn nu_of(&self, x: &[ExactScalar]) -> Result<ExactScalar> {
        if vec_is_zero(x) {
            return Err(invalid("zero vector has no eigenvalue"));
        }
        for space in &self.nu_spaces {
            if !space.basis.is_empty() && coordinates(&space.basis, x).is_ok() {
                return Ok(space.nu.clone());
            }
        }
        Err(invalid("vector does not lie in a single ν-eigenspace"))
    }

    /// `d_ν = ((1−ν)/2)^{−1/2}`.
    pub fn d_nu(nu: &ExactScalar) -> Result<ExactScalar> {
        let q = nu
            .as_rational()
            .ok_or_else(|| Error::EigenvalueOutsideField(nu.to_string()))?;
        if nu.is_one() {
            return Err(Error::UndefinedScale(nu.compact()));
        }
        let t = (Rational::from_integer(BigInt::from(1)) - q) / Rational::from_integer(BigInt::from(2));
        let root = ExactScalar::sqrt_of_rational(&t)
            .ok_or_else(|| Error::EigenvalueOutsideField(format!("square root of {t}")))?;
        Ok(root.inv().expect("nonzero root"))
    }

    /// `ρ⁺(X) = d_ν (X + σX)/2` for `X ∈ l(ν)`, `ν ≠ 1`.
    pub fn rho_plus(&self, x: &[ExactScalar]) -> Result<ExactVector> {
        self.rho(x, 1)
    }

    /// `ρ⁻(X) = d_ν (X − σX)/2` for `X ∈ l(ν)`, `ν ≠ 1`.
    pub fn rho_minus(&self, x: &[ExactScalar]) -> Result<ExactVector> {
        self.rho(x, -1)
    }

    fn rho(&self, x: &[ExactScalar], sign: i64) -> Result<ExactVector> {
        let nu = self.nu_of(x)?;
        let d = Self::d_nu(&nu)?;
        let sx = vec_scale(&apply(&self.sigma, x), &ExactScalar::int(sign));
        Ok(vec_scale(&vec_add(x, &sx), &(&d * &ExactScalar::ratio(1, 2))))
    }

    /// ρ⁺ on `q_l` extended by the identity on `l∩h`.
    pub fn rho_plus_extended(&self, x_l_coords: &[ExactScalar]) -> Result<ExactVector> {
        let mut out = self.g.zero_vector();
        let pieces: Vec<&NamedVector> = self.lh_basis.iter().chain(self.ql_named()).collect();
        let basis: Vec<ExactVector> = pieces.iter().map(|v| v.coords.clone()).collect();
        let x = self.l_combination(x_l_coords);
        let c = coordinates(&basis, &x)?;
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let image = if i < self.lh_basis.len() {
                basis[i].clone()
            } else {
                self.rho_plus(&basis[i])?
            };
            out = vec_add(&out, &vec_scale(&image, ci));
        }
        Ok(out)
    }

    pub fn type_s_facts(&self) -> Result<TypeSFacts> {
        let n = self.g.dim();
        let k = self.l_basis.len();
        let images: Vec<ExactVector> = (0..k)
            .map(|i| self.rho_plus_extended(&lie::unit_vector(k, i)))
            .collect::<Result<_>>()?;
        let rank = ExactMatrix::from_columns(n, &images).rank();
        let nus = |group: &[NamedVector]| -> Result<Vec<ExactScalar>> {
            let mut v: Vec<ExactScalar> = group.iter().map(|x| self.nu_of(&x.coords)).collect::<Result<_>>()?;
            v.dedup();
            Ok(v)
        };
        Ok(TypeSFacts {
            rho_plus_surjective: rank == self.h_basis.len(),
            rho_plus_injective: rank == k,
            ls_dim_even: self.ls_basis.len() % 2 == 0,
            lambdas: nus(&self.ql_prime_basis)?,
            mus: nus(&self.ls_basis)?,
        })
    }

    /// Fails unless the triple is of type S with even-dimensional `l∩s`.
    pub fn require_type_s(&self) -> Result<TypeSFacts> {
        let f = self.type_s_facts()?;
        if !f.is_type_s() {
            return Err(invalid("rho+ is not surjective-but-not-injective"));
        }
        if !f.ls_dim_even {
            return Err(invalid("l∩s is odd-dimensional"));
        }
        Ok(f)
    }

    /// `ω(X, Y, Z) = ⟨[X, Y], Z⟩`.
    pub fn omega(&self, x: &[ExactScalar], y: &[ExactScalar], z: &[ExactScalar]) -> ExactScalar {
        self.g.form_eval(&self.g.bracket(x, y), z)
    }

    fn space_of(&self, name: &str, vs: &[&NamedVector]) -> Result<Arc<QuadraticSpace>> {
        let signs = vs
            .iter()
            .map(|v| if self.g.form_eval(&v.coords, &v.coords).is_one() { 1 } else { -1 })
            .collect();
        QuadraticSpace::new(name, vs.iter().map(|v| v.label.clone()).collect(), signs)
    }

    /// `q_l` with generators `Z_j, T_k`.
    pub fn ql_space(&self) -> Result<Arc<QuadraticSpace>> {
        self.space_of("q_l", &self.ql_named())
    }

    pub fn ql_prime_space(&self) -> Result<Arc<QuadraticSpace>> {
        self.space_of("q_l'", &self.ql_prime_basis.iter().collect::<Vec<_>>())
    }

    pub fn ls_space(&self) -> Result<Arc<QuadraticSpace>> {
        self.space_of("l∩s", &self.ls_basis.iter().collect::<Vec<_>>())
    }

    /// `ρ⁻(Z_j), ρ⁻(T_k)` as an orthonormal basis of `q`.
    pub fn q_basis(&self) -> Result<Vec<NamedVector>> {
        self.ql_named()
            .into_iter()
            .map(|v| Ok(NamedVector::new(format!("q.{}", v.label), self.rho_minus(&v.coords)?)))
            .collect()
    }

    /// `ρ⁺(T_k)` as a basis of `h∩s`.
    pub fn hs_basis(&self) -> Result<Vec<NamedVector>> {
        self.ls_basis
            .iter()
            .map(|v| Ok(NamedVector::new(format!("h.{}", v.label), self.rho_plus(&v.coords)?)))
            .collect()
    }

    pub fn q_space(&self) -> Result<Arc<QuadraticSpace>> {
        let q = self.q_basis()?;
        self.space_of("q", &q.iter().collect::<Vec<_>>())
    }

    pub fn hs_space(&self) -> Result<Arc<QuadraticSpace>> {
        let hs = self.hs_basis()?;
        self.space_of("h∩s", &hs.iter().collect::<Vec<_>>())
    }

    /// A basis of `h∩k`, the θ-fixed part of `h`.
    pub fn hk_basis(&self) -> Vec<NamedVector> {
        let n = self.g.dim();
        let hs: Vec<ExactVector> = self.h_basis.iter().map(|v| v.coords.clone()).collect();
        let hmat = ExactMatrix::from_columns(n, &hs);
        let m = &(&self.theta - &ExactMatrix::identity(n)) * &hmat;
        m.nullspace()
            .iter()
            .enumerate()
            .map(|(i, c)| NamedVector::new(format!("hk{}", i + 1), hmat.mul_vec(c)))
            .collect()
    }

    fn pair(&self, name: &str, acting: &[NamedVector], space: Arc<QuadraticSpace>, comp: &[&NamedVector]) -> Result<ReductivePair> {
        ReductivePair::new(
            name,
            self.g.clone(),
            acting.iter().map(|v| v.label.clone()).collect(),
            acting.iter().map(|v| v.coords.clone()).collect(),
            space,
            comp.iter().map(|v| v.coords.clone()).collect(),
        )
    }

    /// `(g, h)` with complement `q`.
    pub fn pair_g_h(&self) -> Result<ReductivePair> {
        let q = self.q_basis()?;
        self.pair("(g,h)", &self.h_basis, self.q_space()?, &q.iter().collect::<Vec<_>>())
    }

    /// `(l, l∩h)` with complement `q_l`.
    pub fn pair_l_lh(&self) -> Result<ReductivePair> {
        self.pair("(l,l∩h)", &self.lh_basis, self.ql_space()?, &self.ql_named())
    }

    /// `(l, l∩k)` with complement `l∩s`.
    pub fn pair_l_lk(&self) -> Result<ReductivePair> {
        let lk: Vec<NamedVector> = self.lh_basis.iter().chain(&self.ql_prime_basis).cloned().collect();
        self.pair("(l,l∩k)", &lk, self.ls_space()?, &self.ls_basis.iter().collect::<Vec<_>>())
    }

    /// `(l∩k, l∩h)` with complement `q_l'`.
    pub fn pair_lk_lh(&self) -> Result<ReductivePair> {
        self.pair(
            "(l∩k,l∩h)",
            &self.lh_basis,
            self.ql_prime_space()?,
            &self.ql_prime_basis.iter().collect::<Vec<_>>(),
        )
    }

    /// `(h, h∩k)` with complement `h∩s`, spanned by the `ρ⁺(T_k)`.
    pub fn pair_h_hk(&self) -> Result<ReductivePair> {
        let hs = self.hs_basis()?;
        self.pair("(h,h∩k)", &self.hk_basis(), self.hs_space()?, &hs.iter().collect::<Vec<_>>())
    }

    /// All five reductive pairs attached to the triple.
    pub fn pairs(&self) -> Result<Vec<ReductivePair>> {
        Ok(vec![
            self.pair_g_h()?,
            self.pair_l_lh()?,
            self.pair_l_lk()?,
            self.pair_lk_lh()?,
            self.pair_h_hk()?,
        ])
    }

    // -----------------------------------------------------------------------
    // Text format
    // -----------------------------------------------------------------------

    /// Writes the triple as `key = value` lines that [`TripleData::parse`] reads back.
    pub fn to_text(&self) -> String {
        let g = &self.g;
        let n = g.dim();
        let vec_text = |v: &[ExactScalar]| v.iter().map(|x| x.compact()).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "algebra = {}", g.name());
        let _ = writeln!(out, "labels = {}", g.labels().join(", "));
        for i in 0..n {
            let _ = writeln!(out, "form.row = {}", vec_text(g.form().row(i)));
        }
        for i in 0..n {
            for j in i + 1..n {
                let b = g.bracket(&g.basis(i), &g.basis(j));
                if !vec_is_zero(&b) {
                    let _ = writeln!(out, "bracket {} {} = {}", g.labels()[i], g.labels()[j], vec_text(&b));
                }
            }
        }
        for i in 0..n {
            let _ = writeln!(out, "sigma.row = {}", vec_text(self.sigma.row(i)));
        }
        for i in 0..n {
            let _ = writeln!(out, "theta.row = {}", vec_text(self.theta.row(i)));
        }
        for (key, group) in [
            ("h", &self.h_basis),
            ("l", &self.l_basis),
            ("lh", &self.lh_basis),
            ("qlprime", &self.ql_prime_basis),
            ("ls", &self.ls_basis),
        ] {
            for v in group.iter() {
                let _ = writeln!(out, "{key} {} = {}", v.label, vec_text(&v.coords));
            }
        }
        if let Some(m) = &self.module_map {
            for i in 0..m.rows() {
                let _ = writeln!(out, "module_map.row = {}", vec_text(m.row(i)));
            }
        }
        out
    }

    /// Parses the text format written by [`TripleData::to_text`].
    ///
    /// Blank lines and lines starting with `#` are ignored. Brackets not
    /// listed are zero; listed brackets `[a, b]` imply `[b, a] = −[a, b]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut algebra = String::new();
        let mut labels: Vec<String> = Vec::new();
        let mut form_rows = Vec::new();
        let mut brackets: Vec<(String, String, ExactVector)> = Vec::new();
        let mut sigma_rows = Vec::new();
        let mut theta_rows = Vec::new();
        let mut map_rows = Vec::new();
        let mut groups: [Vec<NamedVector>; 5] = Default::default();
        let parse_vec = |s: &str, lineno: usize| -> Result<ExactVector> {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<ExactScalar>()
                        .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))
                })
                .collect()
        };
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {lineno}: expected 'key = value'")))?;
            let key: Vec<&str> = key.split_whitespace().collect();
            let value = value.trim();
            match key.as_slice() {
                ["name"] => name = value.to_string(),
                ["algebra"] => algebra = value.to_string(),
                ["labels"] => labels = value.split(',').map(|s| s.trim().to_string()).collect(),
                ["form.row"] => form_rows.push(parse_vec(value, lineno)?),
                ["sigma.row"] => sigma_rows.push(parse_vec(value, lineno)?),
                ["theta.row"] => theta_rows.push(parse_vec(value, lineno)?),
                ["module_map.row"] => map_rows.push(parse_vec(value, lineno)?),
                ["bracket", a, b] => brackets.push((a.to_string(), b.to_string(), parse_vec(value, lineno)?)),
                [group, label] => {
                    let slot = match *group {
                        "h" => 0,
                        "l" => 1,
                        "lh" => 2,
                        "qlprime" => 3,
                        "ls" => 4,
                        other => return Err(Error::Parse(format!("line {lineno}: unknown group '{other}'"))),
                    };
                    groups[slot].push(NamedVector::new(*label, parse_vec(value, lineno)?));
                }
                _ => return Err(Error::Parse(format!("line {lineno}: unknown key"))),
            }
        }
        let n = labels.len();
        if n == 0 {
            return Err(Error::Parse("missing labels".into()));
        }
        let square = |rows: Vec<ExactVector>, what: &str| -> Result<ExactMatrix> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Parse(format!("{what} must be {n}x{n}")));
            }
            Ok(ExactMatrix::from_rows(rows))
        };
        let form = square(form_rows, "form")?;
        let sigma = square(sigma_rows, "sigma")?;
        let theta = square(theta_rows, "theta")?;
        let mut structure = vec![vec![ExactScalar::zero(); n]; n * n];
        for (a, b, v) in brackets {
            let i = labels.iter().position(|l| *l == a).ok_or_else(|| Error::Parse(format!("unknown label {a}")))?;
            let j = labels.iter().position(|l| *l == b).ok_or_else(|| Error::Parse(format!("unknown label {b}")))?;
            if v.len() != n {
                return Err(Error::Parse(format!("bracket {a} {b} has the wrong length")));
            }
            structure[j * n + i] = vec_scale(&v, &ExactScalar::int(-1));
            structure[i * n + j] = v;
        }
        let g = Arc::new(LieAlgebra::new(algebra, labels, structure, form)?);
        let module_map = if map_rows.is_empty() {
            None
        } else {
            Some(ExactMatrix::from_rows(map_rows))
        };
        let [h, l, lh, qp, ls] = groups;
        Self::new(name, g, sigma, theta, h, l, lh, qp, ls, module_map)
    }
}

/// Roots in Q of the characteristic polynomial, provided all its
/// coefficients are rational. Roots are returned once each, sorted.
fn rational_eigenvalues(a: &ExactMatrix) -> Result<Vec<ExactScalar>> {
    let coeffs = char_poly(a);
    let rat: Vec<Rational> = coeffs
        .iter()
        .map(|c| {
            c.as_rational()
                .cloned()
                .ok_or_else(|| Error::EigenvalueOutsideField(format!("characteristic polynomial coefficient {c}")))
        })
        .collect::<Result<_>>()?;
    // Clear denominators.
    let lcm = rat
        .iter()
        .fold(BigInt::from(1), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
    let mut poly: Vec<BigInt> = rat.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    // poly[i] is the coefficient of x^(deg − i).
    let mut roots: Vec<Rational> = Vec::new();
    while poly.len() > 1 {
        if poly.last().unwrap().is_zero() {
            poly.pop();
            roots.push(Rational::zero());
            continue;
        }
        let lead = poly[0].abs();
        let constant = poly.last().unwrap().abs();
        let candidates = small_divisors(&constant)?
            .into_iter()
            .flat_map(|p| small_divisors(&lead).unwrap_or_default().into_iter().map(move |q| Rational::new(p.clone(), q)))
            .flat_map(|r| [r.clone(), -r]);
        let mut found = None;
        for r in candidates {
            if eval_poly(&poly, &r).is_zero() {
                found = Some(r);
                break;
            }
        }
        let Some(r) = found else {
            return Err(Error::EigenvalueOutsideField("characteristic polynomial has an irrational root".into()));
        };
        poly = deflate(&poly, &r);
        roots.push(r);
    }
    roots.sort();
    roots.dedup();
    Ok(roots.into_iter().map(ExactScalar::rational).collect())
}

fn small_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .to_u64()
        .filter(|&v| v <= 1_000_000_000)
        .ok_or_else(|| Error::EigenvalueOutsideField("characteristic polynomial coefficients too large".into()))?;
    Ok((1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).map(BigInt::from).collect())
}

fn eval_poly(poly: &[BigInt], x: &Rational) -> Rational {
    poly.iter().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

/// Divides by `(x − r)` and rescales back to integer coefficients.
fn deflate(poly: &[BigInt], r: &Rational) -> Vec<BigInt> {
    let mut out: Vec<Rational> = Vec::with_capacity(poly.len() - 1);
    let mut acc = Rational::zero();
    for c in &poly[..poly.len() - 1] {
        acc = acc * r + Rational::from_integer(c.clone());
        out.push(acc.clone());
    }
    let lcm = out
        .iter()
        .fold(BigInt::from(1), |a, q| num_integer::Integer::lcm(&a, q.denom()));
    out.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier, leading coefficient first.
fn char_poly(a: &ExactMatrix) -> Vec<ExactScalar> {
    let n = a.rows();
    let mut coeffs = vec![ExactScalar::one()];
    let mut m = ExactMatrix::zeros(n, n);
    let id = ExactMatrix::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(coeffs.last().unwrap());
        let am = a * &m;
        let c = &(-am.trace()) / &ExactScalar::int(k as i64);
        coeffs.push(c);
    }
    coeffs
}

/// The triple `(G′×G′, ΔG′, G′×K′)` for `G′ = SL(2,R)`, `K′ = SO(2)`.
///
/// `g` has basis `(h̃,0), (ẽ,0), (f̃,0), (0,h̃), (0,ẽ), (0,f̃)` with the sum of
/// the trace forms; `σ` swaps the factors; `θ` fixes `k′×k′`.
/// `W = (h̃,h̃)/√2`, `Z = (h̃,−h̃)/√2`, `T1 = (ẽ,0)`, `T2 = (f̃,0)`.
pub fn build_sl2_triple() -> TripleData {
    let blocks = lie::sl2_real_matrices();
    let z2 = ExactMatrix::zeros(2, 2);
    let block_diag = |a: &ExactMatrix, b: &ExactMatrix| {
        let mut m = ExactMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m.set(i, j, a.get(i, j).clone());
                m.set(i + 2, j + 2, b.get(i, j).clone());
            }
        }
        m
    };
    let mut mats = Vec::new();
    for b in &blocks {
        mats.push(block_diag(b, &z2));
    }
    for b in &blocks {
        mats.push(block_diag(&z2, b));
    }
    let names = lie::labels(&["ht.1", "et.1", "ft.1", "ht.2", "et.2", "ft.2"]);
    let realized = LieAlgebra::from_matrices("sl2r+sl2r", names.clone(), mats).expect("product algebra");
    let structure: Vec<ExactVector> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .map(|(i, j)| realized.bracket(&realized.basis(i), &realized.basis(j)))
        .collect();
    let g = Arc::new(
        LieAlgebra::new("sl2r+sl2r", names, structure, realized.form().clone()).expect("product algebra"),
    );
    let mut sigma = ExactMatrix::zeros(6, 6);
    for i in 0..3 {
        sigma.set(i + 3, i, ExactScalar::one());
        sigma.set(i, i + 3, ExactScalar::one());
    }
    let theta = ExactMatrix::diagonal(&[1, -1, -1, 1, -1, -1].map(ExactScalar::int));
    let e = |i| lie::unit_vector(6, i);
    let r = ExactScalar::inv_sqrt2();
    let h_basis = vec![
        NamedVector::new("hd", vec_add(&e(0), &e(3))),
        NamedVector::new("ed", vec_add(&e(1), &e(4))),
        NamedVector::new("fd", vec_add(&e(2), &e(5))),
    ];
    let l_basis = vec![
        NamedVector::new("ht.1", e(0)),
        NamedVector::new("et.1", e(1)),
        NamedVector::new("ft.1", e(2)),
        NamedVector::new("ht.2", e(3)),
    ];
    let lh = vec![NamedVector::new("W", vec_scale(&vec_add(&e(0), &e(3)), &r))];
    let qp = vec![NamedVector::new("Z", vec_scale(&vec_sub(&e(0), &e(3)), &r))];
    let ls = vec![NamedVector::new("T1", e(1)), NamedVector::new("T2", e(2))];
    let to_hef = lie::sl2_real_to_hef();
    let mut module_map = ExactMatrix::zeros(3, 6);
    for i in 0..3 {
        for j in 0..3 {
            module_map.set(i, j, to_hef.get(i, j).clone());
        }
    }
    TripleData::new("sl2r x sl2r / diag / sl2r x so2", g, sigma, theta, h_basis, l_basis, lh, qp, ls, Some(module_map))
        .expect("the SL(2,R) triple satisfies all structural checks")
}

/// The shipped text description of the SL(2,R) triple.
pub const SL2_TRIPLE_TEXT: &str = include_str!("../data/sl2_triple.txt");

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> ExactScalar {
        ExactScalar::ratio(p, q)
    }

    #[test]
    fn nu_decomposition_of_sl2_triple() {
        let t = build_sl2_triple();
        let spaces = t.nu_decompose();
        let nus: Vec<ExactScalar> = spaces.iter().map(|s| s.nu.clone()).collect();
        assert_eq!(nus, vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(spaces.iter().map(|s| s.basis.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(t.nu_of(&t.lh_basis()[0].coords).unwrap(), ExactScalar::one());
        assert_eq!(t.nu_of(&t.ql_prime_basis()[0].coords).unwrap(), ExactScalar::int(-1));
        for v in t.ls_basis() {
            assert!(t.nu_of(&v.coords).unwrap().is_zero());
        }
        // eigenspaces are mutually orthogonal
        for (i, a) in spaces.iter().enumerate() {
            for b in &spaces[i + 1..] {
                for x in &a.basis {
                    for y in &b.basis {
                        assert!(t.g().form_eval(x, y).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn scale_factors() {
        assert_eq!(TripleData::d_nu(&ExactScalar::int(-1)).unwrap(), ExactScalar::one());
        assert_eq!(TripleData::d_nu(&ExactScalar::zero()).unwrap(), ExactScalar::sqrt2());
        assert!(matches!(TripleData::d_nu(&ExactScalar::one()), Err(Error::UndefinedScale(_))));
    }

    #[test]
    fn rho_values() {
        let t = build_sl2_triple();
        let z = &t.ql_prime_basis()[0].coords;
        assert!(vec_is_zero(&t.rho_plus(z).unwrap()));
        assert_eq!(&t.rho_minus(z).unwrap(), z);
        let r = ExactScalar::inv_sqrt2();
        let t1 = &t.ls_basis()[0].coords;
        let e = |i| lie::unit_vector(6, i);
        assert_eq!(t.rho_plus(t1).unwrap(), vec_scale(&vec_add(&e(1), &e(4)), &r));
        assert_eq!(t.rho_minus(t1).unwrap(), vec_scale(&vec_sub(&e(1), &e(4)), &r));
        assert!(matches!(t.rho_plus(&t.lh_basis()[0].coords), Err(Error::UndefinedScale(_))));
        for x in t.ql_named() {
            let p = t.rho_plus(&x.coords).unwrap();
            let m = t.rho_minus(&x.coords).unwrap();
            let d = TripleData::d_nu(&t.nu_of(&x.coords).unwrap()).unwrap();
            assert_eq!(vec_add(&p, &m), vec_scale(&x.coords, &d));
            assert!(vec_is_zero(&t.g().bracket(&p, &m)));
            for y in t.ql_named() {
                let my = t.rho_minus(&y.coords).unwrap();
                assert_eq!(t.g().form_eval(&m, &my), t.g().form_eval(&x.coords, &y.coords));
            }
        }
    }

    #[test]
    fn instance_norms_and_dimensions() {
        let t = build_sl2_triple();
        let g = t.g();
        let z = &t.ql_prime_basis()[0].coords;
        assert_eq!(g.form_eval(z, z), ExactScalar::int(-1));
        let t1 = &t.ls_basis()[0].coords;
        let st1 = t.sigma().mul_vec(t1);
        assert_eq!(st1, lie::unit_vector(6, 4));
        assert!(vec_is_zero(&g.bracket(t1, &st1)));
        assert_eq!(t.h_basis().len() + t.l_basis().len() - t.lh_basis().len(), 6);
    }

    #[test]
    fn type_s() {
        let f = build_sl2_triple().require_type_s().unwrap();
        assert_eq!(f.lambdas, vec![ExactScalar::int(-1)]);
        assert_eq!(f.mus, vec![ExactScalar::zero()]);
    }

    #[test]
    fn degenerate_triple_has_single_eigenvalue() {
        let g = LieAlgebra::sl2_real();
        let id = ExactMatrix::identity(3);
        let theta = ExactMatrix::diagonal(&[1, -1, -1].map(ExactScalar::int));
        let basis: Vec<NamedVector> = (0..3).map(|i| NamedVector::new(g.labels()[i].clone(), g.basis(i))).collect();
        let t = TripleData::new("degenerate", g, id.clone(), theta, basis.clone(), basis.clone(), basis, vec![], vec![], None)
            .unwrap();
        let spaces = t.nu_decompose();
        assert_eq!(spaces.len(), 1);
        assert!(spaces[0].nu.is_one());
        assert_eq!(spaces[0].basis.len(), 3);
    }

    #[test]
    fn broken_involution_is_rejected() {
        let t = build_sl2_triple();
        let mut text = t.to_text();
        text = text.replacen("theta.row = 1, 0, 0, 0, 0, 0", "theta.row = -1, 0, 0, 0, 0, 0", 1);
        assert!(matches!(TripleData::parse(&text), Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn text_round_trip_and_shipped_file() {
        let t = build_sl2_triple();
        assert_eq!(TripleData::parse(&t.to_text()).unwrap(), t);
        assert_eq!(TripleData::parse(SL2_TRIPLE_TEXT).unwrap(), t);
    }

    #[test]
    fn char_poly_of_diagonal() {
        let a = ExactMatrix::diagonal(&[1, 2, 2].map(ExactScalar::int));
        let roots = rational_eigenvalues(&a).unwrap();
        assert_eq!(roots, vec![ExactScalar::int(1), ExactScalar::int(2)]);
        let rot = ExactMatrix::from_int_rows(&[&[0, 2], &[1, 0]]);
        assert!(matches!(rational_eigenvalues(&rot), Err(Error::EigenvalueOutsideField(_))));
    }
}
