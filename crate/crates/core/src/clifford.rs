//! Clifford algebras of diagonal quadratic spaces.
//!
//! The defining relation is `XY + YX = ⟨X, Y⟩`, so an orthonormal basis
//! vector squares to `ε/2`. Monomials are bitmasks over the label order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{vec_is_zero, vec_sub, ExactVector};
use crate::scalar::ExactScalar;

/// A vector space with an ordered basis and a diagonal form `⟨e_i, e_j⟩ = δ_ij ε_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSpace {
    name: String,
    labels: Vec<String>,
    signs: Vec<i8>,
}

impl QuadraticSpace {
    pub fn new(name: impl Into<String>, labels: Vec<String>, signs: Vec<i8>) -> Result<Arc<Self>> {
        if labels.len() != signs.len() {
            return Err(Error::IncompatibleSpaces("label and sign counts differ".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::IncompatibleSpaces("signs must be +1 or -1".into()));
        }
        if labels.len() > 30 {
            return Err(Error::IncompatibleSpaces("dimension above 30 is not supported".into()));
        }
        Ok(Arc::new(QuadraticSpace {
            name: name.into(),
            labels,
            signs,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, i: usize) -> ExactScalar {
        ExactScalar::int(self.signs[i] as i64)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `⟨x, y⟩ = Σ ε_i x_i y_i`.
    pub fn form(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        (0..self.dim())
            .filter(|&i| !x[i].is_zero() && !y[i].is_zero())
            .map(|i| &self.sign(i) * &(&x[i] * &y[i]))
            .sum()
    }
}

/// A sum of basis monomials with exact coefficients; no zero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    space: Arc<QuadraticSpace>,
    terms: BTreeMap<u32, ExactScalar>,
}

fn mask_indices(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Sign and scalar of the product of two basis monomials.
fn monomial_product(space: &QuadraticSpace, a: u32, b: u32) -> (u32, ExactScalar) {
    let mut swaps = 0u32;
    for j in mask_indices(b) {
        swaps += (a >> (j + 1)).count_ones();
    }
    let mut coeff = if swaps % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::int(-1)
    };
    let half = ExactScalar::ratio(1, 2);
    for k in mask_indices(a & b) {
        coeff = &coeff * &(&space.sign(k) * &half);
    }
    (a ^ b, coeff)
}

impl CliffordElement {
    pub fn zero(space: &Arc<QuadraticSpace>) -> Self {
        CliffordElement {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(space: &Arc<QuadraticSpace>, x: ExactScalar) -> Self {
        Self::monomial(space, 0, x)
    }

    pub fn one(space: &Arc<QuadraticSpace>) -> Self {
        Self::scalar(space, ExactScalar::one())
    }

    pub fn monomial(space: &Arc<QuadraticSpace>, mask: u32, x: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(mask, x);
        }
        CliffordElement {
            space: space.clone(),
            terms,
        }
    }

    /// Monomial from a strictly increasing index list.
    pub fn from_indices(space: &Arc<QuadraticSpace>, indices: &[usize], x: ExactScalar) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= space.dim()) {
            return Err(Error::IncompatibleSpaces("monomial indices must be strictly increasing".into()));
        }
        let mask = indices.iter().fold(0u32, |m, &i| m | (1 << i));
        Ok(Self::monomial(space, mask, x))
    }

    pub fn generator(space: &Arc<QuadraticSpace>, i: usize) -> Self {
        Self::monomial(space, 1 << i, ExactScalar::one())
    }

    /// The degree-one element `Σ x_i e_i`.
    pub fn vector(space: &Arc<QuadraticSpace>, coords: &[ExactScalar]) -> Self {
        let mut out = Self::zero(space);
        for (i, x) in coords.iter().enumerate() {
            out.add_term(1 << i, x);
        }
        out
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<u32, ExactScalar> {
        &self.terms
    }

    pub fn coefficient(&self, mask: u32) -> ExactScalar {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mask: u32, x: &ExactScalar) {
        if x.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_default();
        *entry += x;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn check_same(&self, other: &CliffordElement) -> Result<()> {
        if self.space != other.space {
            return Err(Error::IncompatibleSpaces(format!(
                "Clifford algebras of '{}' and '{}'",
                self.space.name, other.space.name
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &CliffordElement) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.space);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                let (mask, sign) = monomial_product(&self.space, a, b);
                out.add_term(mask, &(&sign * &(x * y)));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &CliffordElement) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, x) in &other.terms {
            out.add_term(m, x);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CliffordElement) -> Result<Self> {
        self.try_add(&other.scale(&ExactScalar::int(-1)))
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &CliffordElement) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, x: &ExactScalar) -> Self {
        let mut out = Self::zero(&self.space);
        for (&m, y) in &self.terms {
            out.add_term(m, &(x * y));
        }
        out
    }

    /// `Some(true)` if purely odd, `Some(false)` if purely even, `None` if mixed.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<bool> {
        let mut odd = self.terms.keys().map(|m| m.count_ones() % 2 == 1);
        match odd.next() {
            None => Some(false),
            Some(first) => odd.all(|o| o == first).then_some(first),
        }
    }

    pub fn even_part(&self) -> Self {
        self.filter_parity(false)
    }

    pub fn odd_part(&self) -> Self {
        self.filter_parity(true)
    }

    fn filter_parity(&self, odd: bool) -> Self {
        CliffordElement {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.count_ones() % 2 == 1) == odd)
                .map(|(m, x)| (*m, x.clone()))
                .collect(),
        }
    }

    /// Extends a map on generators multiplicatively: a monomial
    /// `e_{i1}⋯e_{ik}` goes to `images[i1]⋯images[ik]`.
    pub fn map_generators(&self, target: &Arc<QuadraticSpace>, images: &[CliffordElement]) -> Result<Self> {
        if images.len() != self.space.dim() {
            return Err(Error::IncompatibleSpaces("one image per generator is required".into()));
        }
        let mut out = Self::zero(target);
        for (&m, x) in &self.terms {
            let mut prod = Self::scalar(target, x.clone());
            for i in mask_indices(m) {
                prod = prod.try_mul(&images[i])?;
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }

    /// Embeds into a larger space by relabeling generator `i` as `target[positions[i]]`.
    pub fn embed(&self, target: &Arc<QuadraticSpace>, positions: &[usize]) -> Result<Self> {
        for (i, &p) in positions.iter().enumerate() {
            if target.signs[p] != self.space.signs[i] {
                return Err(Error::IncompatibleSpaces(format!(
                    "generator {} changes sign under the embedding",
                    self.space.labels[i]
                )));
            }
        }
        let images: Vec<CliffordElement> = positions
            .iter()
            .map(|&p| CliffordElement::generator(target, p))
            .collect();
        self.map_generators(target, &images)
    }
}

/// `j(X ∧ Y) = ½(XY − YX)` for vectors given in coordinates.
pub fn chevalley_j(space: &Arc<QuadraticSpace>, x: &[ExactScalar], y: &[ExactScalar]) -> CliffordElement {
    let cx = CliffordElement::vector(space, x);
    let cy = CliffordElement::vector(space, y);
    cx.commutator(&cy)
        .expect("same space")
        .scale(&ExactScalar::ratio(1, 2))
}

impl fmt::Display for CliffordElement {
    /// Signed sum of label products, e.g. `-1*Z*T1*T2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&m, x)| {
                let mut s = x.compact();
                for i in mask_indices(m) {
                    s.push('*');
                    s.push_str(&self.space.labels[i]);
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({})[{}]", self.space.name, self)
    }
}

/// A Lie algebra `g`, a subalgebra acting on an orthonormal complement `q`,
/// and the complement's quadratic space.
#[derive(Clone, Debug)]
pub struct ReductivePair {
    name: String,
    algebra: Arc<LieAlgebra>,
    acting: Vec<ExactVector>,
    acting_labels: Vec<String>,
    space: Arc<QuadraticSpace>,
    complement: Vec<ExactVector>,
}

impl ReductivePair {
    /// Fails unless the complement basis is orthonormal with the space's signs
    /// and orthogonal to the acting subalgebra.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<LieAlgebra>,
        acting_labels: Vec<String>,
        acting: Vec<ExactVector>,
        space: Arc<QuadraticSpace>,
        complement: Vec<ExactVector>,
    ) -> Result<Self> {
        let name = name.into();
        if complement.len() != space.dim() || acting.len() != acting_labels.len() {
            return Err(Error::IncompatibleSpaces(format!("{name}: basis sizes do not match")));
        }
        for (i, x) in complement.iter().enumerate() {
            for (j, y) in complement.iter().enumerate() {
                let expected = if i == j { space.sign(i) } else { ExactScalar::zero() };
                if algebra.form_eval(x, y) != expected {
                    return Err(Error::IncompatibleSpaces(format!(
                        "{name}: complement basis is not orthonormal at ({}, {})",
                        space.labels[i], space.labels[j]
                    )));
                }
            }
            for (k, a) in acting.iter().enumerate() {
                if !algebra.form_eval(x, a).is_zero() {
                    return Err(Error::IncompatibleSpaces(format!(
                        "{name}: {} is not orthogonal to {}",
                        space.labels[i], acting_labels[k]
                    )));
                }
            }
        }
        Ok(ReductivePair {
            name,
            algebra,
            acting,
            acting_labels,
            space,
            complement,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Arc<QuadraticSpace> {
        &self.space
    }

    pub fn acting(&self) -> &[ExactVector] {
        &self.acting
    }

    pub fn acting_labels(&self) -> &[String] {
        &self.acting_labels
    }

    pub fn complement(&self) -> &[ExactVector] {
        &self.complement
    }

    /// Coordinates of `v` in the complement basis; fails if `v` is not in its span.
    pub fn project(&self, v: &[ExactScalar]) -> Result<ExactVector> {
        let coords: ExactVector = self
            .complement
            .iter()
            .enumerate()
            .map(|(i, e)| &self.space.sign(i) * &self.algebra.form_eval(v, e))
            .collect();
        let rebuilt = self.from_coords(&coords);
        if !vec_is_zero(&vec_sub(v, &rebuilt)) {
            return Err(Error::NotInSpan(format!("vector is not in the complement of {}", self.name)));
        }
        Ok(coords)
    }

    /// The ambient vector `Σ c_i e_i`.
    pub fn from_coords(&self, coords: &[ExactScalar]) -> ExactVector {
        let mut out = self.algebra.zero_vector();
        for (c, e) in coords.iter().zip(&self.complement) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(e) {
                *o += c * x;
            }
        }
        out
    }

    /// A complement vector as a degree-one Clifford element.
    pub fn to_clifford(&self, v: &[ExactScalar]) -> Result<CliffordElement> {
        Ok(CliffordElement::vector(&self.space, &self.project(v)?))
    }

    /// `α(X) = −Σ_{i<j} ε_i ε_j ⟨[X, e_i], e_j⟩ e_i e_j`.
    pub fn alpha(&self, x: &[ExactScalar]) -> Result<CliffordElement> {
        let n = self.space.dim();
        let mut pairing = vec![vec![ExactScalar::zero(); n]; n];
        for (i, ei) in self.complement.iter().enumerate() {
            let image = self.algebra.bracket(x, ei);
            let coords = self.project(&image).map_err(|_| {
                Error::NotStable(format!(
                    "{} on {} (image of {} leaves the complement)",
                    render_vector(&self.algebra, x),
                    self.name,
                    self.space.labels[i]
                ))
            })?;
            for j in 0..n {
                // ⟨[X, e_i], e_j⟩ = ε_j · coordinate j
                pairing[i][j] = &self.space.sign(j) * &coords[j];
            }
        }
        let mut out = CliffordElement::zero(&self.space);
        for i in 0..n {
            for j in i + 1..n {
                let c = -(&(&self.space.sign(i) * &self.space.sign(j)) * &pairing[i][j]);
                out.add_term((1 << i) | (1 << j), &c);
            }
        }
        Ok(out)
    }

    /// `c = Σ_{i<j<k} ε_i ε_j ε_k ⟨[e_i, e_j], e_k⟩ e_i e_j e_k`.
    pub fn cubic_element(&self) -> CliffordElement {
        let n = self.space.dim();
        let mut out = CliffordElement::zero(&self.space);
        for i in 0..n {
            for j in i + 1..n {
                let b = self.algebra.bracket(&self.complement[i], &self.complement[j]);
                for k in j + 1..n {
                    let w = self.algebra.form_eval(&b, &self.complement[k]);
                    if w.is_zero() {
                        continue;
                    }
                    let s = &(&self.space.sign(i) * &self.space.sign(j)) * &self.space.sign(k);
                    out.add_term((1 << i) | (1 << j) | (1 << k), &(&s * &w));
                }
            }
        }
        out
    }
}

/// Renders an element as a sum of labelled basis vectors.
pub fn render_vector(alg: &LieAlgebra, v: &[ExactScalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(alg.labels())
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, l)| format!("{}*{l}", x.compact()))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::labels;

    fn space(signs: &[i8]) -> Arc<QuadraticSpace> {
        let names: Vec<String> = (1..=signs.len()).map(|i| format!("e{i}")).collect();
        QuadraticSpace::new("test", names, signs.to_vec()).unwrap()
    }

    #[test]
    fn generators_square_to_half_sign() {
        let q = space(&[1, -1]);
        for i in 0..2 {
            let e = CliffordElement::generator(&q, i);
            let sq = e.try_mul(&e).unwrap();
            assert_eq!(sq, CliffordElement::scalar(&q, &q.sign(i) * &ExactScalar::ratio(1, 2)));
        }
    }

    #[test]
    fn bivector_squares_to_minus_quarter() {
        let q = space(&[1, 1]);
        let b = CliffordElement::from_indices(&q, &[0, 1], ExactScalar::one()).unwrap();
        assert_eq!(
            b.try_mul(&b).unwrap(),
            CliffordElement::scalar(&q, ExactScalar::ratio(-1, 4))
        );
    }

    #[test]
    fn exhaustive_associativity_dim4() {
        let q = space(&[1, -1, 1, -1]);
        let monos: Vec<CliffordElement> = (0..16u32)
            .map(|m| CliffordElement::monomial(&q, m, ExactScalar::one()))
            .collect();
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    let l = a.try_mul(b).unwrap().try_mul(c).unwrap();
                    let r = a.try_mul(&b.try_mul(c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn chevalley_map_examples() {
        let q = space(&[1, 1]);
        let e1 = [ExactScalar::one(), ExactScalar::zero()];
        let e2 = [ExactScalar::zero(), ExactScalar::one()];
        assert!(chevalley_j(&q, &e1, &e1).is_zero());
        assert_eq!(
            chevalley_j(&q, &e1, &e2),
            CliffordElement::from_indices(&q, &[0, 1], ExactScalar::one()).unwrap()
        );
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = space(&[1]);
        let b = QuadraticSpace::new("other", labels(&["x"]), vec![1]).unwrap();
        let r = CliffordElement::one(&a).try_mul(&CliffordElement::one(&b));
        assert!(matches!(r, Err(Error::IncompatibleSpaces(_))));
    }

    #[test]
    fn rendering() {
        let q = QuadraticSpace::new("ql", labels(&["Z", "T1", "T2"]), vec![-1, 1, 1]).unwrap();
        let c = CliffordElement::from_indices(&q, &[0, 1, 2], ExactScalar::int(-1)).unwrap();
        assert_eq!(c.to_string(), "-1*Z*T1*T2");
    }

    fn sl2_pair() -> ReductivePair {
        let g = LieAlgebra::sl2_real();
        let s = QuadraticSpace::new("s", labels(&["et", "ft"]), vec![1, 1]).unwrap();
        ReductivePair::new("sl2/so2", g.clone(), labels(&["ht"]), vec![g.basis(0)], s, vec![g.basis(1), g.basis(2)])
            .unwrap()
    }

    #[test]
    fn alpha_realizes_adjoint_action() {
        let p = sl2_pair();
        let x = p.algebra().basis(0);
        let a = p.alpha(&x).unwrap();
        for y in p.complement() {
            let lhs = a.commutator(&p.to_clifford(y).unwrap()).unwrap();
            let rhs = p.to_clifford(&p.algebra().bracket(&x, y)).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(p.alpha(&p.algebra().zero_vector()).unwrap().is_zero());
    }

    #[test]
    fn alpha_rejects_unstable_complement() {
        let p = sl2_pair();
        let r = p.alpha(&p.algebra().basis(1));
        assert!(matches!(r, Err(Error::NotStable(_))));
    }

    #[test]
    fn symmetric_pair_has_zero_cubic_element() {
        assert!(sl2_pair().cubic_element().is_zero());
    }
}
