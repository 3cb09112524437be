//! Exact operators on tensor powers of `V` and `V*`.
//!
//! Matrix convention used everywhere in the crate: rows are indexed by the
//! *input* basis tensor, columns by the *output* one, so that
//! `R(x_i ⊗ x_j) = R_{ij}^{kl} x_k ⊗ x_l` is stored at row `(i,j)`, column `(k,l)`.
//! With this convention the matrix product `A·B` means "apply `A`, then `B`",
//! and the usual matrix identities such as `R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃` or
//! `Tr₂ R₁₂Ψ₂₃ = P₁₃` read literally as products of matrices.
//!
//! Multi-indices are flattened with leg 1 most significant.

mod matrix;

pub use matrix::{KernelImage, Matrix, Rref};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which space a tensor leg belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Space {
    V,
    Dual,
}

/// Flattens a multi-index (leg 1 most significant).
pub fn flat(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// Inverse of [`flat`].
pub fn unflat(mut k: usize, legs: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for slot in out.iter_mut().rev() {
        *slot = k % n;
        k /= n;
    }
    out
}

/// A linear operator on `N^legs`-dimensional tensor space with leg labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinOperator {
    dim: usize,
    inputs: Vec<Space>,
    outputs: Vec<Space>,
    mat: Matrix,
}

impl LinOperator {
    pub fn new(dim: usize, inputs: Vec<Space>, outputs: Vec<Space>, mat: Matrix) -> Result<Self> {
        if inputs.len() != outputs.len() || inputs.is_empty() {
            return Err(Error::ShapeMismatch(
                "leg label lists must be non-empty and equal length".into(),
            ));
        }
        let size = dim.pow(inputs.len() as u32);
        if mat.rows() != size || mat.cols() != size {
            return Err(Error::ShapeMismatch(format!(
                "{} legs of dimension {dim} need a {size}x{size} grid, got {}x{}",
                inputs.len(),
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(LinOperator {
            dim,
            inputs,
            outputs,
            mat,
        })
    }

    /// Operator on `V^{⊗legs}`.
    pub fn on_v(dim: usize, mat: Matrix) -> Result<Self> {
        let legs = leg_count(dim, mat.rows())?;
        Self::new(dim, vec![Space::V; legs], vec![Space::V; legs], mat)
    }

    pub fn identity(dim: usize, labels: Vec<Space>) -> Self {
        let size = dim.pow(labels.len() as u32);
        LinOperator {
            dim,
            inputs: labels.clone(),
            outputs: labels,
            mat: Matrix::identity(size),
        }
    }

    /// The flip `x_i ⊗ x_j ↦ x_j ⊗ x_i` on `V ⊗ V`.
    pub fn flip(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim * dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(flat(&[i, j], dim), flat(&[j, i], dim))] = Scalar::one();
            }
        }
        LinOperator {
            dim,
            inputs: vec![Space::V; 2],
            outputs: vec![Space::V; 2],
            mat: m,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[Space] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Space] {
        &self.outputs
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// Coefficient of the output tensor `out` in the image of the input tensor `inp`.
    pub fn entry(&self, inp: &[usize], out: &[usize]) -> &Scalar {
        &self.mat[(flat(inp, self.dim), flat(out, self.dim))]
    }

    pub fn relabel(mut self, inputs: Vec<Space>, outputs: Vec<Space>) -> Result<Self> {
        if inputs.len() != self.legs() || outputs.len() != self.legs() {
            return Err(Error::ShapeMismatch(
                "relabel must keep the leg count".into(),
            ));
        }
        self.inputs = inputs;
        self.outputs = outputs;
        Ok(self)
    }

    /// Places a two-leg operator on legs `(first, first + 1)` (1-based) of a
    /// `total`-leg tensor product; the remaining legs get identities labelled
    /// by `rest` (a list of `total` labels whose entries at the placed legs are ignored).
    pub fn place_labelled(&self, first: usize, total: usize, rest: &[Space]) -> Result<Self> {
        if self.legs() != 2 {
            return Err(Error::ShapeMismatch(
                "place expects a two-leg operator".into(),
            ));
        }
        if first == 0 || first >= total || rest.len() != total {
            return Err(Error::BadPlacement {
                first,
                second: first + 1,
                total,
            });
        }
        let n = self.dim;
        let left = Matrix::identity(n.pow((first - 1) as u32));
        let right = Matrix::identity(n.pow((total - first - 1) as u32));
        let mat = left.kron(&self.mat).kron(&right);
        let mut inputs = rest.to_vec();
        let mut outputs = rest.to_vec();
        inputs[first - 1] = self.inputs[0];
        inputs[first] = self.inputs[1];
        outputs[first - 1] = self.outputs[0];
        outputs[first] = self.outputs[1];
        Ok(LinOperator {
            dim: n,
            inputs,
            outputs,
            mat,
        })
    }

    /// [`place_labelled`](Self::place_labelled) with all other legs in `V`.
    pub fn place(&self, first: usize, total: usize) -> Result<Self> {
        self.place_labelled(first, total, &vec![Space::V; total])
    }

    /// `self` followed by `next` (matrix product `self · next`).
    pub fn then(&self, next: &LinOperator) -> Result<Self> {
        if self.dim != next.dim || self.outputs != next.inputs {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {:?}->{:?} with {:?}->{:?}",
                self.inputs, self.outputs, next.inputs, next.outputs
            )));
        }
        Ok(LinOperator {
            dim: self.dim,
            inputs: self.inputs.clone(),
            outputs: next.outputs.clone(),
            mat: self.mat.mul(&next.mat),
        })
    }

    pub fn add(&self, other: &LinOperator) -> Result<Self> {
        self.same_shape(other)?;
        Ok(LinOperator {
            mat: self.mat.add(&other.mat),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &LinOperator) -> Result<Self> {
        self.same_shape(other)?;
        Ok(LinOperator {
            mat: self.mat.sub(&other.mat),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        LinOperator {
            mat: self.mat.scale(s),
            ..self.clone()
        }
    }

    fn same_shape(&self, other: &LinOperator) -> Result<()> {
        if self.dim != other.dim || self.inputs != other.inputs || self.outputs != other.outputs {
            return Err(Error::ShapeMismatch(
                "operators act on different spaces".into(),
            ));
        }
        Ok(())
    }

    /// Contracts the given legs (1-based). Tracing every leg yields a 1x1 operator
    /// with no legs, returned here as a matrix of size 1.
    pub fn partial_trace(&self, traced: &[usize]) -> Result<Matrix> {
        let legs = self.legs();
        if traced.iter().any(|&l| l == 0 || l > legs) {
            return Err(Error::ShapeMismatch(format!(
                "trace legs {traced:?} out of 1..={legs}"
            )));
        }
        for &l in traced {
            if self.inputs[l - 1] != self.outputs[l - 1] {
                return Err(Error::ShapeMismatch(format!(
                    "leg {l} changes space; cannot trace"
                )));
            }
        }
        let n = self.dim;
        let keep: Vec<usize> = (1..=legs).filter(|l| !traced.contains(l)).collect();
        let tr: Vec<usize> = (1..=legs).filter(|l| traced.contains(l)).collect();
        let ksize = n.pow(keep.len() as u32);
        let tsize = n.pow(tr.len() as u32);
        let mut out = Matrix::zeros(ksize, ksize);
        let mut full_r = vec![0; legs];
        let mut full_c = vec![0; legs];
        for r in 0..ksize {
            let ri = unflat(r, keep.len(), n);
            for c in 0..ksize {
                let ci = unflat(c, keep.len(), n);
                let mut acc = Scalar::zero();
                for t in 0..tsize {
                    let ti = unflat(t, tr.len(), n);
                    for (k, &l) in keep.iter().enumerate() {
                        full_r[l - 1] = ri[k];
                        full_c[l - 1] = ci[k];
                    }
                    for (k, &l) in tr.iter().enumerate() {
                        full_r[l - 1] = ti[k];
                        full_c[l - 1] = ti[k];
                    }
                    let e = &self.mat[(flat(&full_r, n), flat(&full_c, n))];
                    if !e.is_zero() {
                        acc += e;
                    }
                }
                out[(r, c)] = acc;
            }
        }
        Ok(out)
    }

    /// Same operator acting on the legs in reverse order (conjugation by the
    /// leg-reversing permutation).
    pub fn reversed_legs(&self) -> Self {
        let n = self.dim;
        let legs = self.legs();
        let size = self.mat.rows();
        let rev = |k: usize| {
            let mut v = unflat(k, legs, n);
            v.reverse();
            flat(&v, n)
        };
        let mat = Matrix::from_fn(size, size, |r, c| self.mat[(rev(r), rev(c))].clone());
        let mut inputs = self.inputs.clone();
        let mut outputs = self.outputs.clone();
        inputs.reverse();
        outputs.reverse();
        LinOperator {
            dim: n,
            inputs,
            outputs,
            mat,
        }
    }
}

fn leg_count(dim: usize, size: usize) -> Result<usize> {
    let mut legs = 0;
    let mut s = 1;
    while s < size {
        s *= dim;
        legs += 1;
    }
    if s != size || legs == 0 {
        return Err(Error::ShapeMismatch(format!(
            "{size} is not a positive power of {dim}"
        )));
    }
    Ok(legs)
}

/// Operator `P_{13}` on three legs: swaps the outer legs.
pub fn outer_swap(dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim.pow(2), dim.pow(2));
    for i in 0..dim {
        for j in 0..dim {
            m[(flat(&[i, j], dim), flat(&[j, i], dim))] = Scalar::one();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn placing_flip_on_two_legs_is_itself() {
        let p = LinOperator::flip(3);
        assert_eq!(p.place(1, 2).unwrap(), p);
    }

    #[test]
    fn placing_identity_gives_identity() {
        let i = LinOperator::identity(2, vec![Space::V; 2]);
        assert!(i.place(2, 3).unwrap().matrix().is_identity());
    }

    #[test]
    fn bad_placement() {
        let p = LinOperator::flip(2);
        assert!(matches!(p.place(3, 3), Err(Error::BadPlacement { .. })));
        assert!(matches!(p.place(0, 3), Err(Error::BadPlacement { .. })));
    }

    #[test]
    fn full_trace_of_flip_is_dimension() {
        for n in 1..=4 {
            let t = LinOperator::flip(n).partial_trace(&[1, 2]).unwrap();
            assert_eq!(t[(0, 0)], Scalar::int(n as i64));
        }
    }

    #[test]
    fn flip_braid_relation() {
        let p = LinOperator::flip(2);
        let a = p.place(1, 3).unwrap();
        let b = p.place(2, 3).unwrap();
        let lhs = a.then(&b).unwrap().then(&a).unwrap();
        let rhs = b.then(&a).unwrap().then(&b).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_checks_labels() {
        let a = LinOperator::identity(2, vec![Space::V, Space::Dual]);
        let b = LinOperator::identity(2, vec![Space::Dual, Space::V]);
        assert!(a.then(&b).is_err());
    }

    #[test]
    fn flat_roundtrip() {
        for k in 0..27 {
            assert_eq!(flat(&unflat(k, 3, 3), 3), k);
        }
    }
}
