//! Lie algebras given by structure constants and an invariant bilinear form.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{coordinates, vec_is_zero, ExactMatrix, ExactVector};
use crate::scalar::ExactScalar;

/// A finite-dimensional Lie algebra over Q(√2, i) with an invariant form.
///
/// Elements are coordinate vectors in the stored basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `structure[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    structure: Vec<ExactVector>,
    form: ExactMatrix,
    realization: Option<Vec<ExactMatrix>>,
}

impl LieAlgebra {
    /// Builds an algebra from structure constants and a Gram matrix.
    ///
    /// Fails unless the bracket is antisymmetric, satisfies Jacobi, and the
    /// form is symmetric and invariant.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<ExactVector>,
        form: ExactMatrix,
    ) -> Result<Self> {
        let n = labels.len();
        if structure.len() != n * n || structure.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidLie("structure constants have the wrong shape".into()));
        }
        if form.rows() != n || form.cols() != n {
            return Err(Error::InvalidLie("Gram matrix has the wrong shape".into()));
        }
        let alg = LieAlgebra {
            name: name.into(),
            labels,
            structure,
            form,
            realization: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Builds an algebra spanned by matrices, with bracket the commutator and
    /// form `⟨X, Y⟩ = trace(XY)`.
    pub fn from_matrices(
        name: impl Into<String>,
        labels: Vec<String>,
        matrices: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let n = matrices.len();
        if labels.len() != n {
            return Err(Error::InvalidLie("label count differs from basis size".into()));
        }
        let flat: Vec<ExactVector> = matrices.iter().map(flatten).collect();
        let mut structure = Vec::with_capacity(n * n);
        for a in &matrices {
            for b in &matrices {
                let c = flatten(&a.commutator(b));
                let coords = coordinates(&flat, &c).map_err(|_| {
                    Error::InvalidLie("matrices do not span a Lie algebra".into())
                })?;
                structure.push(coords);
            }
        }
        let mut form = ExactMatrix::zeros(n, n);
        for (i, a) in matrices.iter().enumerate() {
            for (j, b) in matrices.iter().enumerate() {
                form.set(i, j, (a * b).trace());
            }
        }
        let mut alg = Self::new(name, labels, structure, form)?;
        alg.realization = Some(matrices);
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let sum: ExactVector = self
                    .structure_at(i, j)
                    .iter()
                    .zip(self.structure_at(j, i))
                    .map(|(a, b)| a + b)
                    .collect();
                if !vec_is_zero(&sum) {
                    return Err(Error::InvalidLie(format!(
                        "bracket not antisymmetric on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
                if self.form.get(i, j) != self.form.get(j, i) {
                    return Err(Error::InvalidLie("form is not symmetric".into()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let jac = [
                        self.bracket(&x, &self.bracket(&y, &z)),
                        self.bracket(&y, &self.bracket(&z, &x)),
                        self.bracket(&z, &self.bracket(&x, &y)),
                    ];
                    let total: ExactVector = (0..n)
                        .map(|t| jac.iter().map(|v| &v[t]).sum())
                        .collect();
                    if !vec_is_zero(&total) {
                        return Err(Error::InvalidLie(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                    let inv = self.form_eval(&self.bracket(&x, &y), &z)
                        + self.form_eval(&y, &self.bracket(&x, &z));
                    if !inv.is_zero() {
                        return Err(Error::InvalidLie(format!(
                            "form is not invariant on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
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

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn form(&self) -> &ExactMatrix {
        &self.form
    }

    pub fn realization(&self) -> Option<&[ExactMatrix]> {
        self.realization.as_deref()
    }

    /// The `i`-th basis vector.
    pub fn basis(&self, i: usize) -> ExactVector {
        unit_vector(self.dim(), i)
    }

    pub fn zero_vector(&self) -> ExactVector {
        vec![ExactScalar::zero(); self.dim()]
    }

    fn structure_at(&self, i: usize, j: usize) -> &ExactVector {
        &self.structure[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactVector {
        let n = self.dim();
        let mut out = vec![ExactScalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                for (t, c) in self.structure_at(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[t] += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// The bilinear (not sesquilinear) form `xᵀ G y`.
    pub fn form_eval(&self, x: &[ExactScalar], y: &[ExactScalar]) -> ExactScalar {
        let gy = self.form.mul_vec(y);
        x.iter()
            .zip(&gy)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Matrix of `ad(x)` in the stored basis.
    pub fn ad(&self, x: &[ExactScalar]) -> ExactMatrix {
        let n = self.dim();
        let cols: Vec<ExactVector> = (0..n).map(|j| self.bracket(x, &self.basis(j))).collect();
        ExactMatrix::from_columns(n, &cols)
    }

    /// Direct sum `a ⊕ b` with the orthogonal sum of the two forms.
    pub fn direct_sum(name: impl Into<String>, a: &LieAlgebra, b: &LieAlgebra) -> Result<Self> {
        let (na, nb) = (a.dim(), b.dim());
        let n = na + nb;
        let mut labels: Vec<String> = a.labels.iter().map(|l| format!("{l}.1")).collect();
        labels.extend(b.labels.iter().map(|l| format!("{l}.2")));
        let mut structure = vec![vec![ExactScalar::zero(); n]; n * n];
        for i in 0..na {
            for j in 0..na {
                for (t, c) in a.structure_at(i, j).iter().enumerate() {
                    structure[i * n + j][t] = c.clone();
                }
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                for (t, c) in b.structure_at(i, j).iter().enumerate() {
                    structure[(na + i) * n + na + j][na + t] = c.clone();
                }
            }
        }
        let mut form = ExactMatrix::zeros(n, n);
        for i in 0..na {
            for j in 0..na {
                form.set(i, j, a.form.get(i, j).clone());
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                form.set(na + i, na + j, b.form.get(i, j).clone());
            }
        }
        Self::new(name, labels, structure, form)
    }

    /// The subalgebra spanned by `basis`, with the restricted form.
    pub fn subalgebra(
        &self,
        name: impl Into<String>,
        labels: Vec<String>,
        basis: &[ExactVector],
    ) -> Result<Self> {
        let mut structure = Vec::with_capacity(basis.len() * basis.len());
        for x in basis {
            for y in basis {
                let coords = coordinates(basis, &self.bracket(x, y)).map_err(|_| {
                    Error::InvalidLie("span is not closed under the bracket".into())
                })?;
                structure.push(coords);
            }
        }
        let k = basis.len();
        let mut form = ExactMatrix::zeros(k, k);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                form.set(i, j, self.form_eval(x, y));
            }
        }
        Self::new(name, labels, structure, form)
    }

    /// sl(2) in the basis h, e, f with the trace form.
    ///
    /// `h = [[0,−i],[i,0]]`, `e = ½[[1,i],[i,−1]]`, `f = ½[[1,−i],[−i,−1]]`,
    /// so that `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> Arc<Self> {
        let (h, e, f) = sl2_hef_matrices();
        Arc::new(
            Self::from_matrices("sl2", labels(&["h", "e", "f"]), vec![h, e, f])
                .expect("sl2 realization is a Lie algebra"),
        )
    }

    /// sl(2, R) in the orthonormal basis h̃, ẽ, f̃ with the trace form.
    pub fn sl2_real() -> Arc<Self> {
        Arc::new(
            Self::from_matrices("sl2r", labels(&["ht", "et", "ft"]), sl2_real_matrices().to_vec())
                .expect("sl2 real realization is a Lie algebra"),
        )
    }

    /// so(2) spanned by `h` with the trace form `⟨h, h⟩ = 2`.
    pub fn so2() -> Arc<Self> {
        let (h, _, _) = sl2_hef_matrices();
        Arc::new(
            Self::from_matrices("so2", labels(&["h"]), vec![h]).expect("so2 is a Lie algebra"),
        )
    }
}

pub(crate) fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn unit_vector(n: usize, i: usize) -> ExactVector {
    let mut v = vec![ExactScalar::zero(); n];
    v[i] = ExactScalar::one();
    v
}

fn flatten(m: &ExactMatrix) -> ExactVector {
    (0..m.rows())
        .flat_map(|i| m.row(i).to_vec())
        .collect()
}

/// The 2×2 matrices of h, e, f.
pub fn sl2_hef_matrices() -> (ExactMatrix, ExactMatrix, ExactMatrix) {
    let i = ExactScalar::i();
    let z = ExactScalar::zero;
    let half = ExactScalar::ratio(1, 2);
    let h = ExactMatrix::from_rows(vec![vec![z(), -&i], vec![i.clone(), z()]]);
    let e = ExactMatrix::from_rows(vec![
        vec![ExactScalar::one(), i.clone()],
        vec![i.clone(), ExactScalar::int(-1)],
    ])
    .scale(&half);
    let f = ExactMatrix::from_rows(vec![
        vec![ExactScalar::one(), -&i],
        vec![-&i, ExactScalar::int(-1)],
    ])
    .scale(&half);
    (h, e, f)
}

/// The 2×2 matrices of h̃ = (i/√2)h, ẽ = (e+f)/√2, f̃ = i(e−f)/√2.
pub fn sl2_real_matrices() -> [ExactMatrix; 3] {
    let (h, e, f) = sl2_hef_matrices();
    let r = ExactScalar::inv_sqrt2();
    let ir = &ExactScalar::i() * &r;
    [h.scale(&ir), (&e + &f).scale(&r), (&e - &f).scale(&ir)]
}

/// Coordinates in the h, e, f basis of the h̃, ẽ, f̃ basis vectors (as columns).
pub fn sl2_real_to_hef() -> ExactMatrix {
    let r = ExactScalar::inv_sqrt2();
    let ir = &ExactScalar::i() * &r;
    let z = ExactScalar::zero;
    ExactMatrix::from_rows(vec![
        vec![ir.clone(), z(), z()],
        vec![z(), r.clone(), ir.clone()],
        vec![z(), r.clone(), -&ir],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations_and_trace_form() {
        let g = LieAlgebra::sl2();
        let (h, e, f) = (g.basis(0), g.basis(1), g.basis(2));
        let two = ExactScalar::int(2);
        assert_eq!(g.bracket(&h, &e), crate::linalg::vec_scale(&e, &two));
        assert_eq!(g.bracket(&h, &f), crate::linalg::vec_scale(&f, &-two.clone()));
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.form_eval(&e, &f), ExactScalar::one());
        assert_eq!(g.form_eval(&h, &h), ExactScalar::int(2));
        assert!(g.form_eval(&e, &e).is_zero());
        assert!(g.form_eval(&f, &f).is_zero());
    }

    #[test]
    fn real_basis_is_orthonormal_with_signs() {
        let g = LieAlgebra::sl2_real();
        let expected = ExactMatrix::diagonal(&[
            ExactScalar::int(-1),
            ExactScalar::one(),
            ExactScalar::one(),
        ]);
        assert_eq!(g.form(), &expected);
        // [h̃, ẽ] = √2 f̃ and [h̃, f̃] = −√2 ẽ
        let r2 = ExactScalar::sqrt2();
        assert_eq!(
            g.bracket(&g.basis(0), &g.basis(1)),
            crate::linalg::vec_scale(&g.basis(2), &r2)
        );
        assert_eq!(
            g.bracket(&g.basis(0), &g.basis(2)),
            crate::linalg::vec_scale(&g.basis(1), &-r2)
        );
    }

    #[test]
    fn real_to_hef_matches_matrices() {
        let (h, e, f) = sl2_hef_matrices();
        let m = sl2_real_to_hef();
        let real = sl2_real_matrices();
        for (j, target) in real.iter().enumerate() {
            let rebuilt = &(&h.scale(m.get(0, j)) + &e.scale(m.get(1, j))) + &f.scale(m.get(2, j));
            assert_eq!(&rebuilt, target);
        }
    }

    #[test]
    fn product_algebras_pass_construction_checks() {
        let g1 = LieAlgebra::sl2_real();
        let k1 = LieAlgebra::so2();
        assert!(LieAlgebra::direct_sum("g", &g1, &g1).is_ok());
        let l = LieAlgebra::direct_sum("l", &g1, &k1).unwrap();
        assert_eq!(l.dim(), 4);
        assert_eq!(LieAlgebra::so2().form().get(0, 0), &ExactScalar::int(2));
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 + [b,-b] + [c,a] = -b.
        let z = || vec![ExactScalar::zero(); 3];
        let mut s = vec![z(); 9];
        let e = |i| unit_vector(3, i);
        s[1] = e(0);
        s[3] = crate::linalg::vec_scale(&e(0), &ExactScalar::int(-1));
        s[2] = e(1);
        s[6] = crate::linalg::vec_scale(&e(1), &ExactScalar::int(-1));
        let r = LieAlgebra::new("bad", labels(&["a", "b", "c"]), s, ExactMatrix::zeros(3, 3));
        assert!(matches!(r, Err(Error::InvalidLie(_))));
    }

    #[test]
    fn subalgebra_restricts_form() {
        let g = LieAlgebra::sl2();
        let k = g.subalgebra("k", labels(&["h"]), &[g.basis(0)]).unwrap();
        assert_eq!(k.form().get(0, 0), &ExactScalar::int(2));
        assert!(g
            .subalgebra("bad", labels(&["e", "f"]), &[g.basis(1), g.basis(2)])
            .is_err());
    }
}
