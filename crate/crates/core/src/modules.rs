//! Weight modules: finite irreducibles of sl(2), truncated highest and
//! lowest weight modules, duals, tensor products and restrictions.
//!
//! A truncated module keeps levels `v_0..v_N`; bracket relations are only
//! required on the certified vectors (levels below `N`).

use std::sync::Arc;

use crate::clifford::ReductivePair;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{ExactMatrix, ExactVector};
use crate::scalar::ExactScalar;
use crate::spin::SpinModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Finite,
    LowestWeightTruncated { lowest: i64 },
    HighestWeightTruncated { highest: i64 },
    Tensor,
    Dual,
    Restricted,
    Spin,
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    algebra: Arc<LieAlgebra>,
    labels: Vec<String>,
    weights: Vec<i64>,
    action: Vec<ExactMatrix>,
    kind: ModuleKind,
    truncation: Option<usize>,
    certified: Vec<bool>,
    weight_index: usize,
}

impl WeightModule {
    /// Validates bracket relations on certified vectors and that the weight
    /// generator acts diagonally by the stored weights.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        algebra: Arc<LieAlgebra>,
        labels: Vec<String>,
        weights: Vec<i64>,
        action: Vec<ExactMatrix>,
        kind: ModuleKind,
        truncation: Option<usize>,
        certified: Vec<bool>,
        weight_index: usize,
    ) -> Result<Self> {
        let dim = labels.len();
        if weights.len() != dim || certified.len() != dim || action.len() != algebra.dim() {
            return Err(Error::InvalidModule("inconsistent sizes".into()));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule("action matrix has the wrong shape".into()));
        }
        let module = WeightModule {
            algebra,
            labels,
            weights,
            action,
            kind,
            truncation,
            certified,
            weight_index,
        };
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<()> {
        let n = self.algebra.dim();
        let cols: Vec<usize> = (0..self.dim()).filter(|&j| self.certified[j]).collect();
        let rows: Vec<usize> = (0..self.dim()).collect();
        for a in 0..n {
            for b in a + 1..n {
                let lhs = self.action[a].commutator(&self.action[b]);
                let rhs = self.pi(&self.algebra.bracket(&self.algebra.basis(a), &self.algebra.basis(b)));
                if lhs.select(&rows, &cols) != rhs.select(&rows, &cols) {
                    return Err(Error::InvalidModule(format!(
                        "relation [{}, {}] fails",
                        self.algebra.labels()[a],
                        self.algebra.labels()[b]
                    )));
                }
            }
        }
        let h = &self.action[self.weight_index];
        let expected: Vec<ExactScalar> = self.weights.iter().map(|&w| ExactScalar::int(w)).collect();
        if h != &ExactMatrix::diagonal(&expected) {
            return Err(Error::InvalidModule("weight generator is not diagonal with the stored weights".into()));
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn certified(&self) -> &[bool] {
        &self.certified
    }

    /// Action matrix of the `i`-th basis element.
    pub fn generator(&self, i: usize) -> &ExactMatrix {
        &self.action[i]
    }

    /// Action matrix of an arbitrary element in coordinates.
    pub fn pi(&self, x: &[ExactScalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim(), self.dim());
        for (c, m) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn has_even_weights(&self) -> bool {
        self.weights.iter().all(|w| w % 2 == 0)
    }

    /// The finite irreducible sl(2)-module of highest weight `n`: basis
    /// `v_0..v_n` of weights `n − 2j`, `f v_j = v_{j+1}`, `e v_j = j(n−j+1) v_{j−1}`.
    pub fn sl2_irrep(n: usize) -> Self {
        let weights: Vec<i64> = (0..=n).map(|j| n as i64 - 2 * j as i64).collect();
        let dim = n + 1;
        let mut e = ExactMatrix::zeros(dim, dim);
        let mut f = ExactMatrix::zeros(dim, dim);
        for j in 0..dim {
            if j + 1 < dim {
                f.set(j + 1, j, ExactScalar::one());
            }
            if j > 0 {
                e.set(j - 1, j, ExactScalar::int((j * (n - j + 1)) as i64));
            }
        }
        let h = ExactMatrix::diagonal(&weights.iter().map(|&w| ExactScalar::int(w)).collect::<Vec<_>>());
        Self::new(
            LieAlgebra::sl2(),
            (0..dim).map(|j| format!("v{j}")).collect(),
            weights,
            vec![h, e, f],
            ModuleKind::Finite,
            None,
            vec![true; dim],
            0,
        )
        .expect("finite irreducible module satisfies the sl2 relations")
    }

    /// Truncated lowest weight module: weights `μ + 2j`, `e v_j = v_{j+1}`
    /// (`e v_N = 0`), `f v_j = −j(μ+j−1) v_{j−1}`.
    pub fn lowest_weight_module(mu: i64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModule("truncation level must be at least 2".into()));
        }
        let dim = n + 1;
        let weights: Vec<i64> = (0..dim).map(|j| mu + 2 * j as i64).collect();
        let mut e = ExactMatrix::zeros(dim, dim);
        let mut f = ExactMatrix::zeros(dim, dim);
        for j in 0..dim {
            if j + 1 < dim {
                e.set(j + 1, j, ExactScalar::one());
            }
            if j > 0 {
                let j = j as i64;
                f.set((j - 1) as usize, j as usize, ExactScalar::int(-j * (mu + j - 1)));
            }
        }
        let h = ExactMatrix::diagonal(&weights.iter().map(|&w| ExactScalar::int(w)).collect::<Vec<_>>());
        Self::new(
            LieAlgebra::sl2(),
            (0..dim).map(|j| format!("v{j}")).collect(),
            weights,
            vec![h, e, f],
            ModuleKind::LowestWeightTruncated { lowest: mu },
            Some(n),
            (0..dim).map(|j| j < n).collect(),
            0,
        )
    }

    /// Truncated highest weight module: weights `μ − 2j`, `f v_j = v_{j+1}`
    /// (`f v_N = 0`), `e v_j = j(μ−j+1) v_{j−1}`.
    pub fn highest_weight_module(mu: i64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModule("truncation level must be at least 2".into()));
        }
        let dim = n + 1;
        let weights: Vec<i64> = (0..dim).map(|j| mu - 2 * j as i64).collect();
        let mut e = ExactMatrix::zeros(dim, dim);
        let mut f = ExactMatrix::zeros(dim, dim);
        for j in 0..dim {
            if j + 1 < dim {
                f.set(j + 1, j, ExactScalar::one());
            }
            if j > 0 {
                let j = j as i64;
                e.set((j - 1) as usize, j as usize, ExactScalar::int(j * (mu - j + 1)));
            }
        }
        let h = ExactMatrix::diagonal(&weights.iter().map(|&w| ExactScalar::int(w)).collect::<Vec<_>>());
        Self::new(
            LieAlgebra::sl2(),
            (0..dim).map(|j| format!("v{j}")).collect(),
            weights,
            vec![h, e, f],
            ModuleKind::HighestWeightTruncated { highest: mu },
            Some(n),
            (0..dim).map(|j| j < n).collect(),
            0,
        )
    }

    /// The dual module, `X ↦ −π(X)ᵀ`. Only defined for untruncated modules.
    pub fn dual(&self) -> Result<Self> {
        if self.truncation.is_some() {
            return Err(Error::InvalidModule("dual of a truncated module is not supported".into()));
        }
        let neg = ExactScalar::int(-1);
        Self::new(
            self.algebra.clone(),
            self.labels.iter().map(|l| format!("{l}*")).collect(),
            self.weights.iter().map(|w| -w).collect(),
            self.action.iter().map(|m| m.transpose().scale(&neg)).collect(),
            ModuleKind::Dual,
            None,
            vec![true; self.dim()],
            self.weight_index,
        )
    }

    /// `M1 ⊗ M2` with `X ↦ π₁(X)⊗1 + 1⊗π₂(X)`; the index of `M1` is slow.
    pub fn tensor_action(m1: &Self, m2: &Self) -> Result<Self> {
        if m1.algebra != m2.algebra {
            return Err(Error::InvalidModule("tensor factors are modules for different algebras".into()));
        }
        let (i1, i2) = (ExactMatrix::identity(m1.dim()), ExactMatrix::identity(m2.dim()));
        let action = m1
            .action
            .iter()
            .zip(&m2.action)
            .map(|(a, b)| &a.kron(&i2) + &i1.kron(b))
            .collect();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        let mut certified = Vec::new();
        for i in 0..m1.dim() {
            for j in 0..m2.dim() {
                labels.push(format!("{}(x){}", m1.labels[i], m2.labels[j]));
                weights.push(m1.weights[i] + m2.weights[j]);
                certified.push(m1.certified[i] && m2.certified[j]);
            }
        }
        let truncation = m1.truncation.or(m2.truncation);
        Self::new(
            m1.algebra.clone(),
            labels,
            weights,
            action,
            ModuleKind::Tensor,
            truncation,
            certified,
            m1.weight_index,
        )
    }

    /// Restriction to a subalgebra whose basis is given in coordinates of
    /// this module's algebra.
    pub fn restrict(&self, sub: Arc<LieAlgebra>, inclusion: &[ExactVector], weight_index: usize) -> Result<Self> {
        if inclusion.len() != sub.dim() {
            return Err(Error::InvalidModule("one image per subalgebra basis element is required".into()));
        }
        let action: Vec<ExactMatrix> = inclusion.iter().map(|x| self.pi(x)).collect();
        let h = &action[weight_index];
        if !h.is_diagonal() {
            return Err(Error::InvalidModule("weight generator does not act diagonally".into()));
        }
        let weights = (0..self.dim())
            .map(|i| {
                h.get(i, i)
                    .as_integer()
                    .ok_or_else(|| Error::InvalidModule(format!("weight {} is not an integer", h.get(i, i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            sub,
            self.labels.clone(),
            weights,
            action,
            ModuleKind::Restricted,
            self.truncation,
            self.certified.clone(),
            weight_index,
        )
    }

    /// A spin module regarded as a module for the acting subalgebra of `pair`
    /// through `γ ∘ α`. The subalgebra is presented as `sub`, whose basis maps
    /// to `pair.acting()` in order.
    pub fn from_spin(spin: &SpinModule, pair: &ReductivePair, sub: Arc<LieAlgebra>, weight_index: usize) -> Result<Self> {
        if sub.dim() != pair.acting().len() {
            return Err(Error::InvalidModule("subalgebra does not match the acting basis".into()));
        }
        let action = pair
            .acting()
            .iter()
            .map(|x| spin.gamma(&pair.alpha(x)?))
            .collect::<Result<Vec<_>>>()?;
        let h = &action[weight_index];
        if !h.is_diagonal() {
            return Err(Error::InvalidModule("weight generator does not act diagonally on the spin basis".into()));
        }
        let weights = (0..spin.dim())
            .map(|i| {
                h.get(i, i)
                    .as_integer()
                    .ok_or_else(|| Error::InvalidModule(format!("spin weight {} is not an integer", h.get(i, i))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            sub,
            (0..spin.dim()).map(|m| spin.basis_label(m)).collect(),
            weights,
            action,
            ModuleKind::Spin,
            None,
            vec![true; spin.dim()],
            weight_index,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_is_zero;

    fn kernel_weights(m: &WeightModule, gen: usize) -> Vec<i64> {
        m.generator(gen)
            .nullspace()
            .iter()
            .map(|v| {
                let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                assert_eq!(support.len(), 1);
                m.weights()[support[0]]
            })
            .collect()
    }

    #[test]
    fn trivial_irrep() {
        let m = WeightModule::sl2_irrep(0);
        assert_eq!(m.dim(), 1);
        assert!((0..3).all(|i| m.generator(i).is_zero()));
    }

    #[test]
    fn adjoint_sized_irrep() {
        let m = WeightModule::sl2_irrep(2);
        assert_eq!(m.weights(), &[2, 0, -2]);
        assert_eq!(kernel_weights(&m, 1), vec![2]);
        assert_eq!(kernel_weights(&m, 2), vec![-2]);
    }

    #[test]
    fn irrep_weights_are_full_string() {
        for m in 0..5 {
            let e = WeightModule::sl2_irrep(2 * m);
            let expected: Vec<i64> = (0..=2 * m as i64).rev().map(|k| 2 * k - 2 * m as i64).collect();
            assert_eq!(e.weights(), expected.as_slice());
        }
    }

    #[test]
    fn lowest_weight_kernel_of_f() {
        let m = WeightModule::lowest_weight_module(4, 10).unwrap();
        let certified: Vec<usize> = (0..10).collect();
        let f = m.generator(2).select(&(0..11).collect::<Vec<_>>(), &certified);
        let ker = f.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(!ker[0][0].is_zero());
        assert!(vec_is_zero(&ker[0][1..]));
        assert!(WeightModule::lowest_weight_module(4, 1).is_err());
    }

    #[test]
    fn highest_weight_kernels() {
        let m = WeightModule::highest_weight_module(-3, 10).unwrap();
        assert_eq!(kernel_weights(&m, 1), vec![-3]);
        let rows: Vec<usize> = (0..11).collect();
        let f = m.generator(2).select(&rows, &(0..10).collect::<Vec<_>>());
        assert!(f.nullspace().is_empty());
    }

    #[test]
    fn tensor_weights_add() {
        let v = WeightModule::sl2_irrep(1);
        let t = WeightModule::tensor_action(&v, &v).unwrap();
        assert_eq!(t.weights(), &[2, 0, 0, -2]);
        let triv = WeightModule::sl2_irrep(0);
        let m = WeightModule::sl2_irrep(3);
        let tm = WeightModule::tensor_action(&triv, &m).unwrap();
        for i in 0..3 {
            assert_eq!(tm.generator(i), m.generator(i));
        }
    }

    #[test]
    fn dual_negates_weights() {
        let d = WeightModule::sl2_irrep(3).dual().unwrap();
        assert_eq!(d.weights(), &[-3, -1, 1, 3]);
        assert!(WeightModule::lowest_weight_module(2, 5).unwrap().dual().is_err());
    }
}
