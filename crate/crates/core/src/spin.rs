//! Spin modules as exterior algebras over a maximal isotropic subspace.
//!
//! Plus vectors act by wedging, minus vectors by contraction. In odd
//! dimension the leftover vector `Z` with `⟨Z, Z⟩ = ε` acts by `ζ·s/√2` on
//! even monomials and by `−ζ·s/√2` on odd ones, where `s = 1` for `ε = 1`
//! and `s = i` for `ε = −1`.
//!
//! Basis vectors of a spin module are indexed by bitmasks over the plus
//! vectors, so index 0 is `1` and index 1 is the first plus vector.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::clifford::{CliffordElement, QuadraticSpace, ReductivePair};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, ExactVector};
use crate::scalar::ExactScalar;

/// A choice of dually paired isotropic subspaces, plus an odd vector in odd dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub plus: Vec<ExactVector>,
    pub minus: Vec<ExactVector>,
    pub plus_labels: Vec<String>,
    pub odd_vector: Option<ExactVector>,
    pub zeta: i8,
}

impl Polarization {
    /// Validates isotropy, the pairing `⟨plus_i, minus_j⟩ = δ_ij`, and the odd vector.
    pub fn new(
        space: &QuadraticSpace,
        plus: Vec<ExactVector>,
        minus: Vec<ExactVector>,
        plus_labels: Vec<String>,
        odd_vector: Option<ExactVector>,
        zeta: i8,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::IncompatibleSpaces(format!("polarization of {}: {msg}", space.name())));
        if plus.len() != minus.len() || plus.len() != plus_labels.len() {
            return bad("plus and minus lists differ in length".into());
        }
        if 2 * plus.len() + usize::from(odd_vector.is_some()) != space.dim() {
            return bad("vector counts do not fill the space".into());
        }
        if zeta != 1 && zeta != -1 {
            return bad("zeta must be +1 or -1".into());
        }
        let all = plus.iter().chain(&minus).chain(odd_vector.iter());
        if all.clone().any(|v| v.len() != space.dim()) {
            return bad("vector has the wrong length".into());
        }
        for (i, a) in plus.iter().enumerate() {
            for (j, b) in plus.iter().enumerate() {
                if !space.form(a, b).is_zero() || !space.form(&minus[i], &minus[j]).is_zero() {
                    return bad("plus or minus vectors are not isotropic".into());
                }
                let expected = if i == j { ExactScalar::one() } else { ExactScalar::zero() };
                if space.form(a, &minus[j]) != expected {
                    return bad("plus and minus vectors are not dually paired".into());
                }
            }
        }
        if let Some(z) = &odd_vector {
            let n = space.form(z, z);
            if n != ExactScalar::one() && n != ExactScalar::int(-1) {
                return bad("odd vector must have norm +1 or -1".into());
            }
            if plus.iter().chain(&minus).any(|v| !space.form(v, z).is_zero()) {
                return bad("odd vector is not orthogonal to the isotropic part".into());
            }
        }
        Ok(Polarization {
            plus,
            minus,
            plus_labels,
            odd_vector,
            zeta,
        })
    }

    /// Pairs positive basis vectors with each other, then negative ones, then
    /// mixed; an unpaired vector becomes the odd vector.
    ///
    /// For `a, b` both positive: `u = (a + ib)/√2`, `v = (a − ib)/√2`.
    /// Both negative: `u = (a + ib)/√2`, `v = −(a − ib)/√2`.
    /// Mixed (`a` positive): `u = (a + b)/√2`, `v = (a − b)/√2`.
    pub fn standard(space: &QuadraticSpace, zeta: i8) -> Result<Self> {
        let n = space.dim();
        let pos: Vec<usize> = (0..n).filter(|&i| space.signs()[i] == 1).collect();
        let neg: Vec<usize> = (0..n).filter(|&i| space.signs()[i] == -1).collect();
        let r = ExactScalar::inv_sqrt2();
        let i_r = &ExactScalar::i() * &r;
        let unit = |k: usize, x: &ExactScalar| {
            let mut v = vec![ExactScalar::zero(); n];
            v[k] = x.clone();
            v
        };
        let add = |a: ExactVector, b: ExactVector| -> ExactVector { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        let mut labels = Vec::new();
        let mut push = |u: ExactVector, v: ExactVector, a: usize, b: usize| {
            labels.push(format!("u({},{})", space.labels()[a], space.labels()[b]));
            plus.push(u);
            minus.push(v);
        };
        for c in pos.chunks_exact(2) {
            push(add(unit(c[0], &r), unit(c[1], &i_r)), add(unit(c[0], &r), unit(c[1], &-&i_r)), c[0], c[1]);
        }
        for c in neg.chunks_exact(2) {
            push(add(unit(c[0], &r), unit(c[1], &i_r)), add(unit(c[0], &-&r), unit(c[1], &i_r)), c[0], c[1]);
        }
        let lone_pos = (pos.len() % 2 == 1).then(|| *pos.last().unwrap());
        let lone_neg = (neg.len() % 2 == 1).then(|| *neg.last().unwrap());
        let odd = match (lone_pos, lone_neg) {
            (Some(a), Some(b)) => {
                push(add(unit(a, &r), unit(b, &r)), add(unit(a, &r), unit(b, &-&r)), a, b);
                None
            }
            (Some(a), None) | (None, Some(a)) => Some(unit(a, &ExactScalar::one())),
            (None, None) => None,
        };
        Self::new(space, plus, minus, labels, odd, zeta)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.plus.len());
        self.plus_labels = labels;
        self
    }
}

/// The spin module `⋀ q⁺` of `C(q)` with a fixed polarization.
#[derive(Clone, Debug)]
pub struct SpinModule {
    space: Arc<QuadraticSpace>,
    polarization: Polarization,
    generators: Vec<ExactMatrix>,
}

/// A vector of a spin module as a map from plus-subsets to coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpinVector {
    coefficients: BTreeMap<u32, ExactScalar>,
}

impl SpinVector {
    pub fn monomial(mask: u32, x: ExactScalar) -> Self {
        let mut coefficients = BTreeMap::new();
        if !x.is_zero() {
            coefficients.insert(mask, x);
        }
        SpinVector { coefficients }
    }

    pub fn from_dense(v: &[ExactScalar]) -> Self {
        SpinVector {
            coefficients: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i as u32, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> ExactVector {
        let mut v = vec![ExactScalar::zero(); dim];
        for (&m, x) in &self.coefficients {
            v[m as usize] = x.clone();
        }
        v
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, ExactScalar> {
        &self.coefficients
    }

    pub fn coefficient(&self, mask: u32) -> ExactScalar {
        self.coefficients.get(&mask).cloned().unwrap_or_default()
    }
}

fn parity_sign(mask: usize) -> ExactScalar {
    if mask.count_ones() % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::int(-1)
    }
}

impl SpinModule {
    pub fn new(space: Arc<QuadraticSpace>, polarization: Polarization) -> Self {
        let generators = (0..space.dim())
            .map(|k| Self::generator_matrix(&space, &polarization, k))
            .collect();
        SpinModule {
            space,
            polarization,
            generators,
        }
    }

    /// The module with the standard polarization and `ζ = +1`.
    pub fn standard(space: Arc<QuadraticSpace>) -> Result<Self> {
        let pol = Polarization::standard(&space, 1)?;
        Ok(Self::new(space, pol))
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn polarization(&self) -> &Polarization {
        &self.polarization
    }

    pub fn dim(&self) -> usize {
        1 << self.polarization.plus.len()
    }

    /// Label of a basis monomial, e.g. `1` or `u` or `u1^u2`.
    pub fn basis_label(&self, mask: usize) -> String {
        if mask == 0 {
            return "1".into();
        }
        let parts: Vec<&str> = (0..self.polarization.plus.len())
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| self.polarization.plus_labels[j].as_str())
            .collect();
        parts.join("^")
    }

    fn wedge_matrix(p: usize, j: usize) -> ExactMatrix {
        let dim = 1 << p;
        let mut m = ExactMatrix::zeros(dim, dim);
        for mask in 0..dim {
            if mask & (1 << j) != 0 {
                continue;
            }
            let before = mask & ((1 << j) - 1);
            m.set(mask | (1 << j), mask, parity_sign(before));
        }
        m
    }

    fn contraction_matrix(p: usize, j: usize) -> ExactMatrix {
        let dim = 1 << p;
        let mut m = ExactMatrix::zeros(dim, dim);
        for mask in 0..dim {
            if mask & (1 << j) == 0 {
                continue;
            }
            let before = mask & ((1 << j) - 1);
            m.set(mask & !(1 << j), mask, parity_sign(before));
        }
        m
    }

    fn odd_matrix(space: &QuadraticSpace, pol: &Polarization, p: usize) -> ExactMatrix {
        let z = pol.odd_vector.as_ref().expect("odd vector present");
        let s = if space.form(z, z).is_one() {
            ExactScalar::one()
        } else {
            ExactScalar::i()
        };
        let base = &(&s * &ExactScalar::int(pol.zeta as i64)) * &ExactScalar::inv_sqrt2();
        let diag: Vec<ExactScalar> = (0..1usize << p).map(|m| &parity_sign(m) * &base).collect();
        ExactMatrix::diagonal(&diag)
    }

    /// `γ(e_k)`, from `e_k = Σ ⟨e_k, v_j⟩ u_j + Σ ⟨e_k, u_j⟩ v_j + (⟨e_k, Z⟩/⟨Z, Z⟩) Z`.
    fn generator_matrix(space: &QuadraticSpace, pol: &Polarization, k: usize) -> ExactMatrix {
        let n = space.dim();
        let p = pol.plus.len();
        let mut ek = vec![ExactScalar::zero(); n];
        ek[k] = ExactScalar::one();
        let mut m = ExactMatrix::zeros(1 << p, 1 << p);
        for j in 0..p {
            let cu = space.form(&ek, &pol.minus[j]);
            if !cu.is_zero() {
                m = &m + &Self::wedge_matrix(p, j).scale(&cu);
            }
            let cv = space.form(&ek, &pol.plus[j]);
            if !cv.is_zero() {
                m = &m + &Self::contraction_matrix(p, j).scale(&cv);
            }
        }
        if let Some(z) = &pol.odd_vector {
            let cz = &space.form(&ek, z) / &space.form(z, z);
            if !cz.is_zero() {
                m = &m + &Self::odd_matrix(space, pol, p).scale(&cz);
            }
        }
        m
    }

    /// `γ(e_k)` for the `k`-th basis vector of the space.
    pub fn generator(&self, k: usize) -> &ExactMatrix {
        &self.generators[k]
    }

    /// The action matrix of a Clifford element.
    pub fn gamma(&self, x: &CliffordElement) -> Result<ExactMatrix> {
        if x.space() != &self.space {
            return Err(Error::IncompatibleSpaces(format!(
                "element of C({}) acting on the spin module of {}",
                x.space().name(),
                self.space.name()
            )));
        }
        let mut out = ExactMatrix::zeros(self.dim(), self.dim());
        for (&mask, coeff) in x.terms() {
            let mut prod = ExactMatrix::scalar(self.dim(), coeff.clone());
            for k in (0..self.space.dim()).filter(|k| mask & (1 << k) != 0) {
                prod = &prod * &self.generators[k];
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// `γ` of a degree-one element with the given coordinates.
    pub fn gamma_vector(&self, coords: &[ExactScalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim(), self.dim());
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.generators[k].scale(c);
            }
        }
        out
    }

    pub fn act(&self, x: &CliffordElement, v: &SpinVector) -> Result<SpinVector> {
        let m = self.gamma(x)?;
        Ok(SpinVector::from_dense(&m.mul_vec(&v.to_dense(self.dim()))))
    }

    /// `+1` on even monomials, `−1` on odd ones.
    pub fn parity_operator(&self) -> ExactMatrix {
        let diag: Vec<ExactScalar> = (0..self.dim()).map(parity_sign).collect();
        ExactMatrix::diagonal(&diag)
    }

    /// Weights of a Cartan element acting through `γ ∘ α`, read off the diagonal.
    pub fn weights_of(&self, pair: &ReductivePair, h: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let m = self.gamma(&pair.alpha(h)?)?;
        if !m.is_diagonal() {
            return Err(Error::NonScalar("Cartan element does not act diagonally on the spin basis".into()));
        }
        Ok((0..m.rows()).map(|i| m.get(i, i).clone()).collect())
    }
}

/// A decomposition of a quadratic space as an orthogonal sum `A ⊕ B`, with
/// the positions of the generators of `A` and `B` inside the joint space.
#[derive(Clone, Debug)]
pub struct SpaceSplit {
    pub joint: Arc<QuadraticSpace>,
    pub a: Arc<QuadraticSpace>,
    pub b: Arc<QuadraticSpace>,
    pub a_positions: Vec<usize>,
    pub b_positions: Vec<usize>,
}

impl SpaceSplit {
    /// Matches generators by label. Fails unless every joint label occurs in
    /// exactly one factor with the same sign.
    pub fn by_labels(joint: Arc<QuadraticSpace>, a: Arc<QuadraticSpace>, b: Arc<QuadraticSpace>) -> Result<Self> {
        let locate = |s: &QuadraticSpace| -> Result<Vec<usize>> {
            s.labels()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let p = joint.index_of(l).ok_or_else(|| {
                        Error::IncompatibleSpaces(format!("{l} is not a generator of {}", joint.name()))
                    })?;
                    if joint.signs()[p] != s.signs()[i] {
                        return Err(Error::IncompatibleSpaces(format!("{l} changes sign in {}", joint.name())));
                    }
                    Ok(p)
                })
                .collect()
        };
        let a_positions = locate(&a)?;
        let b_positions = locate(&b)?;
        let mut seen: Vec<usize> = a_positions.iter().chain(&b_positions).copied().collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != joint.dim() || a.dim() + b.dim() != joint.dim() {
            return Err(Error::IncompatibleSpaces(format!(
                "{} and {} do not split {}",
                a.name(),
                b.name(),
                joint.name()
            )));
        }
        Ok(SpaceSplit {
            joint,
            a,
            b,
            a_positions,
            b_positions,
        })
    }

    fn lift(&self, v: &[ExactScalar], positions: &[usize]) -> ExactVector {
        let mut out = vec![ExactScalar::zero(); self.joint.dim()];
        for (x, &p) in v.iter().zip(positions) {
            out[p] = x.clone();
        }
        out
    }

    /// The joint spin module: plus vectors of `A` then of `B`, odd vector from `B`.
    pub fn joint_module(&self, sa: &SpinModule, sb: &SpinModule) -> Result<SpinModule> {
        if sa.polarization.odd_vector.is_some() {
            return Err(Error::OddFirstFactor(self.a.dim()));
        }
        let pa = &sa.polarization;
        let pb = &sb.polarization;
        let plus = pa
            .plus
            .iter()
            .map(|v| self.lift(v, &self.a_positions))
            .chain(pb.plus.iter().map(|v| self.lift(v, &self.b_positions)))
            .collect();
        let minus = pa
            .minus
            .iter()
            .map(|v| self.lift(v, &self.a_positions))
            .chain(pb.minus.iter().map(|v| self.lift(v, &self.b_positions)))
            .collect();
        let labels = pa.plus_labels.iter().chain(&pb.plus_labels).cloned().collect();
        let odd = pb.odd_vector.as_ref().map(|z| self.lift(z, &self.b_positions));
        let pol = Polarization::new(&self.joint, plus, minus, labels, odd, pb.zeta)?;
        Ok(SpinModule::new(self.joint.clone(), pol))
    }

    pub fn embed_a(&self, c: &CliffordElement) -> Result<CliffordElement> {
        c.embed(&self.joint, &self.a_positions)
    }

    pub fn embed_b(&self, d: &CliffordElement) -> Result<CliffordElement> {
        d.embed(&self.joint, &self.b_positions)
    }
}

/// Matrix of `(c ⊗ d)(s ⊗ t) = (−1)^{deg d · deg s} cs ⊗ dt` on `S_A ⊗ S_B`
/// (index of `S_A` slow), extended to inhomogeneous `d` by parity.
pub fn graded_tensor_action(
    sa: &SpinModule,
    sb: &SpinModule,
    c: &CliffordElement,
    d: &CliffordElement,
) -> Result<ExactMatrix> {
    let gc = sa.gamma(c)?;
    let even = gc.kron(&sb.gamma(&d.even_part())?);
    let odd = (&gc * &sa.parity_operator()).kron(&sb.gamma(&d.odd_part())?);
    Ok(&even + &odd)
}

/// The multiplication map `S_A ⊗ S_B → S_{A⊕B}`, `s ⊗ t ↦ s ∧ t`, as a
/// permutation matrix. The first factor must be even-dimensional.
pub fn mult_iso(sa: &SpinModule, sb: &SpinModule) -> Result<ExactMatrix> {
    if sa.polarization.odd_vector.is_some() {
        return Err(Error::OddFirstFactor(sa.space.dim()));
    }
    let na = sa.polarization.plus.len();
    let dim = sa.dim() * sb.dim();
    let mut p = ExactMatrix::zeros(dim, dim);
    for s in 0..sa.dim() {
        for t in 0..sb.dim() {
            p.set(s | (t << na), s * sb.dim() + t, ExactScalar::one());
        }
    }
    Ok(p)
}

/// Applies [`mult_iso`] to a single product vector.
pub fn mult_iso_vector(sa: &SpinModule, sb: &SpinModule, s: &SpinVector, t: &SpinVector) -> Result<SpinVector> {
    let p = mult_iso(sa, sb)?;
    let prod: ExactVector = s
        .to_dense(sa.dim())
        .iter()
        .flat_map(|x| t.to_dense(sb.dim()).into_iter().map(move |y| x * &y))
        .collect();
    Ok(SpinVector::from_dense(&p.mul_vec(&prod)))
}

/// Checks `γ_joint(c·d) ∘ P = P ∘ (c ⊗ d)` for the multiplication map `P`.
pub fn intertwines(
    split: &SpaceSplit,
    sa: &SpinModule,
    sb: &SpinModule,
    joint: &SpinModule,
    c: &CliffordElement,
    d: &CliffordElement,
) -> Result<bool> {
    let p = mult_iso(sa, sb)?;
    let lhs = &joint.gamma(&split.embed_a(c)?.try_mul(&split.embed_b(d)?)?)? * &p;
    let rhs = &p * &graded_tensor_action(sa, sb, c, d)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::labels;

    fn ql() -> Arc<QuadraticSpace> {
        QuadraticSpace::new("ql", labels(&["Z", "T1", "T2"]), vec![-1, 1, 1]).unwrap()
    }

    #[test]
    fn standard_polarization_of_ql() {
        let s = SpinModule::standard(ql()).unwrap();
        assert_eq!(s.dim(), 2);
        let r = ExactScalar::inv_sqrt2();
        let ir = &ExactScalar::i() * &r;
        // γ(T1): 1 ↦ u/√2, u ↦ 1/√2
        let t1 = s.generator(1);
        assert_eq!(t1.get(1, 0), &r);
        assert_eq!(t1.get(0, 1), &r);
        // γ(Z) = diag(i/√2, −i/√2)
        assert_eq!(s.generator(0), &ExactMatrix::diagonal(&[ir.clone(), -&ir]));
    }

    #[test]
    fn clifford_relation_in_many_signatures() {
        for signs in [vec![1], vec![-1], vec![1, 1], vec![1, -1], vec![-1, -1, 1], vec![1, 1, 1, -1], vec![-1, 1, -1, 1, 1], vec![1, 1, 1, 1, 1, 1], vec![-1, 1, -1, 1, -1, 1]] {
            let names: Vec<String> = (0..signs.len()).map(|i| format!("x{i}")).collect();
            let q = QuadraticSpace::new("t", names, signs.clone()).unwrap();
            let s = SpinModule::standard(q.clone()).unwrap();
            assert_eq!(s.dim(), 1 << (signs.len() / 2));
            for i in 0..q.dim() {
                for j in 0..q.dim() {
                    let ac = s.generator(i).anticommutator(s.generator(j));
                    let expected = if i == j { q.sign(i) } else { ExactScalar::zero() };
                    assert!(ac.is_scalar_multiple_of_identity(&expected), "{signs:?} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn gamma_is_multiplicative_dim4() {
        let q = QuadraticSpace::new("t", labels(&["a", "b", "c", "d"]), vec![1, -1, 1, 1]).unwrap();
        let s = SpinModule::standard(q.clone()).unwrap();
        let monos: Vec<CliffordElement> = (0..16).map(|m| CliffordElement::monomial(&q, m, ExactScalar::one())).collect();
        for x in &monos {
            for y in &monos {
                let lhs = s.gamma(&x.try_mul(y).unwrap()).unwrap();
                let rhs = &s.gamma(x).unwrap() * &s.gamma(y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn odd_first_factor_is_rejected() {
        let a = QuadraticSpace::new("a", labels(&["Z"]), vec![-1]).unwrap();
        let b = QuadraticSpace::new("b", labels(&["T1", "T2"]), vec![1, 1]).unwrap();
        let sa = SpinModule::standard(a).unwrap();
        let sb = SpinModule::standard(b).unwrap();
        assert!(matches!(mult_iso(&sa, &sb), Err(Error::OddFirstFactor(1))));
    }

    #[test]
    fn koszul_sign_on_odd_odd_odd() {
        let a = QuadraticSpace::new("ls", labels(&["T1", "T2"]), vec![1, 1]).unwrap();
        let b = QuadraticSpace::new("qlp", labels(&["Z"]), vec![-1]).unwrap();
        let sa = SpinModule::standard(a.clone()).unwrap();
        let sb = SpinModule::standard(b.clone()).unwrap();
        let t1 = CliffordElement::generator(&a, 0);
        let z = CliffordElement::generator(&b, 0);
        let m = graded_tensor_action(&sa, &sb, &t1, &z).unwrap();
        // (T1 ⊗ Z)(u ⊗ 1) = −(T1 u) ⊗ (Z 1) = −(1/√2)(i/√2) (1 ⊗ 1) = −(i/2)(1 ⊗ 1)
        assert_eq!(m.get(0, 1), &(&ExactScalar::i() * &ExactScalar::ratio(-1, 2)));
    }
}
