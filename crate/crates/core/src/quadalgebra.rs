//! Quadratic algebras `T(V)/⟨W⟩` built degree by degree.
//!
//! The degree-`k` component is computed from the previous two:
//! `Q_k = (Q_{k−1} ⊗ V) / (Q_{k−2} ⊗ W)`. Relations are row-reduced with the
//! largest word as pivot, so the surviving basis consists of the
//! lexicographically earliest words.

use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::braiding::{spectral_projectors, Braiding, Kind, Series};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{Matrix, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Sym,
    Lambda,
}

/// A word in the generators, 0-based letters.
pub type Word = Vec<usize>;

/// One graded piece of the quotient.
#[derive(Debug, Clone)]
pub struct Component {
    pub degree: usize,
    /// Standard words, sorted lexicographically.
    pub basis: Vec<Word>,
    /// Entry `s·N + b`: coordinates of `basis_{k−1}[s] · x_b` in this component.
    right_mult: Vec<Vec<Scalar>>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.basis.binary_search_by(|b| b.as_slice().cmp(w)).ok()
    }
}

#[derive(Debug)]
pub struct GradedQuotient {
    n: usize,
    space: Space,
    label: String,
    /// Basis of `W ⊂ gen⊗gen`, coordinates indexed `a·N + b`.
    relations: Vec<Vec<Scalar>>,
    cache: Mutex<Vec<Arc<Component>>>,
}

impl Clone for GradedQuotient {
    fn clone(&self) -> Self {
        GradedQuotient {
            n: self.n,
            space: self.space,
            label: self.label.clone(),
            relations: self.relations.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl GradedQuotient {
    /// The quotient by the span of the given quadratic relations.
    pub fn new(
        n: usize,
        space: Space,
        relations: Vec<Vec<Scalar>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if relations.iter().any(|r| r.len() != n * n) {
            return Err(Error::ShapeMismatch(
                "relations must live in the tensor square".into(),
            ));
        }
        // keep an independent spanning set
        let relations = if relations.is_empty() {
            relations
        } else {
            Matrix::from_rows(relations).row_space()
        };
        let q = GradedQuotient {
            n,
            space,
            label: label.into(),
            relations,
            cache: Mutex::new(Vec::new()),
        };
        q.seed();
        Ok(q)
    }

    /// The free tensor algebra on `n` generators.
    pub fn free(n: usize, space: Space) -> Self {
        Self::new(n, space, Vec::new(), format!("free-{n}")).expect("no relations")
    }

    fn seed(&self) {
        let mut c = self.cache.lock().expect("cache lock");
        c.push(Arc::new(Component {
            degree: 0,
            basis: vec![vec![]],
            right_mult: vec![],
        }));
        let right_mult = (0..self.n)
            .map(|b| {
                let mut v = vec![Scalar::zero(); self.n];
                v[b] = Scalar::one();
                v
            })
            .collect();
        c.push(Arc::new(Component {
            degree: 1,
            basis: (0..self.n).map(|b| vec![b]).collect(),
            right_mult,
        }));
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relations(&self) -> &[Vec<Scalar>] {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// Degree-`k` component, computed on first use.
    pub fn component(&self, k: usize) -> Arc<Component> {
        let mut cache = self.cache.lock().expect("cache lock");
        while cache.len() <= k {
            let next = self.extend(&cache);
            cache.push(Arc::new(next));
        }
        cache[k].clone()
    }

    fn extend(&self, cache: &[Arc<Component>]) -> Component {
        let n = self.n;
        let k = cache.len();
        let prev = &cache[k - 1];
        let prev2 = &cache[k - 2];
        let cols = prev.dim() * n;
        // relation rows: u·w for u a standard word of degree k−2, w ∈ W
        let mut rows = Vec::new();
        for u in 0..prev2.dim() {
            for w in &self.relations {
                let mut row = vec![Scalar::zero(); cols];
                for a in 0..n {
                    for b in 0..n {
                        let c = &w[a * n + b];
                        if c.is_zero() {
                            continue;
                        }
                        let ua = &prev.right_mult[u * n + a];
                        for (s, coeff) in ua.iter().enumerate() {
                            if !coeff.is_zero() {
                                row[s * n + b] += &(c * coeff);
                            }
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    // reversed so that pivots land on the largest words
                    row.reverse();
                    rows.push(row);
                }
            }
        }
        let (pivot_of, red) = if rows.is_empty() {
            (vec![None; cols], None)
        } else {
            let r = Matrix::from_rows(rows).rref();
            let mut pivot_of = vec![None; cols];
            for (row, &p) in r.pivots.iter().enumerate() {
                pivot_of[cols - 1 - p] = Some(row);
            }
            (pivot_of, Some(r.matrix))
        };
        let free_cols: Vec<usize> = (0..cols).filter(|&c| pivot_of[c].is_none()).collect();
        let basis: Vec<Word> = free_cols
            .iter()
            .map(|&c| {
                let mut w = prev.basis[c / n].clone();
                w.push(c % n);
                w
            })
            .collect();
        let mut pos = vec![usize::MAX; cols];
        for (i, &c) in free_cols.iter().enumerate() {
            pos[c] = i;
        }
        let right_mult = (0..cols)
            .map(|c| {
                let mut v = vec![Scalar::zero(); free_cols.len()];
                match pivot_of[c] {
                    None => v[pos[c]] = Scalar::one(),
                    Some(row) => {
                        let red = red.as_ref().expect("pivot implies relations");
                        for (i, &f) in free_cols.iter().enumerate() {
                            let e = &red[(row, cols - 1 - f)];
                            if !e.is_zero() {
                                v[i] = -e;
                            }
                        }
                    }
                }
                v
            })
            .collect();
        Component {
            degree: k,
            basis,
            right_mult,
        }
    }

    /// Dimensions of components `0..=kmax`.
    pub fn poincare(&self, kmax: usize) -> Vec<usize> {
        (0..=kmax).map(|k| self.component(k).dim()).collect()
    }

    /// `v · x_b` for `v` given in coordinates of component `k`.
    pub fn right_multiply(&self, k: usize, v: &[Scalar], b: usize) -> Vec<Scalar> {
        let next = self.component(k + 1);
        let mut out = vec![Scalar::zero(); next.dim()];
        for (s, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, e) in next.right_mult[s * self.n + b].iter().enumerate() {
                if !e.is_zero() {
                    out[i] += &(c * e);
                }
            }
        }
        out
    }

    /// Coordinates of a single word in its component.
    pub fn project_word(&self, w: &[usize]) -> Vec<Scalar> {
        let mut v = vec![Scalar::one()];
        for (k, &b) in w.iter().enumerate() {
            v = self.right_multiply(k, &v, b);
        }
        v
    }

    /// Coordinates of a homogeneous tensor `Σ c·word` over generators of `space`.
    pub fn normal_form(&self, space: Space, tensor: &[(Word, Scalar)]) -> Result<Vec<Scalar>> {
        if space != self.space {
            return Err(Error::SpaceMismatch(format!(
                "{space:?} tensor in a {:?} algebra",
                self.space
            )));
        }
        let Some(k) = tensor.first().map(|(w, _)| w.len()) else {
            return Ok(Vec::new());
        };
        let mut out = vec![Scalar::zero(); self.component(k).dim()];
        for (w, c) in tensor {
            if w.len() != k || w.iter().any(|&x| x >= self.n) {
                return Err(Error::ShapeMismatch(format!(
                    "word {w:?} is not a degree-{k} word"
                )));
            }
            for (o, e) in out.iter_mut().zip(self.project_word(w)) {
                if !e.is_zero() {
                    *o += &(c * &e);
                }
            }
        }
        Ok(out)
    }

    /// Matrix with one row per free word of degree `k` (lexicographic), giving its coordinates.
    pub fn projection_matrix(&self, k: usize) -> Matrix {
        let n = self.n;
        let rows = (0..n.pow(k as u32))
            .map(|idx| self.project_word(&crate::tensor::unflat(idx, k, n)))
            .collect::<Vec<_>>();
        if rows.is_empty() {
            return Matrix::zeros(0, 0);
        }
        Matrix::from_rows(rows)
    }

    /// Product of basis element `i` of degree `a` and basis element `j` of degree `b`.
    pub fn multiply_basis(&self, a: usize, i: usize, b: usize, j: usize) -> Vec<Scalar> {
        let mut w = self.component(a).basis[i].clone();
        w.extend_from_slice(&self.component(b).basis[j]);
        self.project_word(&w)
    }
}

/// Relation space `W` of the requested algebra, on `V` or `V*`.
pub fn relation_space(b: &Braiding, kind: AlgebraKind, space: Space) -> Result<Vec<Vec<Scalar>>> {
    let n = b.dim();
    let nn = n * n;
    let r = match space {
        Space::V => b.matrix().clone(),
        Space::Dual => b.extend_to_duals()?.dual_dual.into_matrix(),
    };
    let q = b.q().clone();
    let qinv = q.inv()?;
    let image = |m: &Matrix| m.row_space();
    let kernel = |m: &Matrix| m.left_kernel();
    Ok(match b.kind() {
        Kind::Involutive | Kind::Hecke => match kind {
            AlgebraKind::Sym => image(&Matrix::scalar_identity(nn, &q).sub(&r)),
            AlgebraKind::Lambda => image(&Matrix::scalar_identity(nn, &qinv).add(&r)),
        },
        Kind::Bmw => {
            let proj = spectral_projectors(&r, &b.eigenvalues())?;
            let series = b.series().ok_or_else(|| {
                Error::UnsupportedConstruction("BMW braiding without a series".into())
            })?;
            let p_minus = proj.get(&-&qinv).expect("eigenvalue present").clone();
            let p_q = proj.get(&q).expect("eigenvalue present").clone();
            match (series, kind) {
                (Series::Orthogonal, AlgebraKind::Sym) => image(&p_minus),
                (Series::Orthogonal, AlgebraKind::Lambda) => kernel(&p_minus),
                (Series::Symplectic, AlgebraKind::Sym) => kernel(&p_q),
                (Series::Symplectic, AlgebraKind::Lambda) => image(&p_q),
            }
        }
    })
}

/// A projector `Π` (row convention) whose image is the relation space `W`.
pub fn relation_projector(b: &Braiding, kind: AlgebraKind, space: Space) -> Result<Matrix> {
    let nn = b.dim() * b.dim();
    let r = match space {
        Space::V => b.matrix().clone(),
        Space::Dual => b.extend_to_duals()?.dual_dual.into_matrix(),
    };
    let q = b.q().clone();
    let proj = spectral_projectors(&r, &b.eigenvalues())?;
    let p_q = proj.get(&q).expect("eigenvalue present").clone();
    let p_minus = proj.get(&-&q.inv()?).expect("eigenvalue present").clone();
    let complement = |p: Matrix| Matrix::identity(nn).sub(&p);
    Ok(match (b.kind(), b.series(), kind) {
        (Kind::Involutive | Kind::Hecke, _, AlgebraKind::Sym) => p_minus,
        (Kind::Involutive | Kind::Hecke, _, AlgebraKind::Lambda) => p_q,
        (Kind::Bmw, Some(Series::Orthogonal), AlgebraKind::Sym) => p_minus,
        (Kind::Bmw, Some(Series::Orthogonal), AlgebraKind::Lambda) => complement(p_minus),
        (Kind::Bmw, Some(Series::Symplectic), AlgebraKind::Sym) => complement(p_q),
        (Kind::Bmw, Some(Series::Symplectic), AlgebraKind::Lambda) => p_q,
        (Kind::Bmw, None, _) => {
            return Err(Error::UnsupportedConstruction(
                "BMW braiding without a series".into(),
            ))
        }
    })
}

/// `Sym_R` or `Λ_R` of `V` or `V*`.
pub fn make_algebra(b: &Braiding, kind: AlgebraKind, space: Space) -> Result<GradedQuotient> {
    let w = relation_space(b, kind, space)?;
    let side = match space {
        Space::V => "V",
        Space::Dual => "V*",
    };
    GradedQuotient::new(
        b.dim(),
        space,
        w,
        format!("{kind:?}({side}) of {}", b.label()).to_lowercase(),
    )
}

/// Dimension of the image of `span(rows)` in `T²/W`.
fn image_in_quotient(rows: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> usize {
    let stack = |extra: &[Vec<Scalar>]| -> usize {
        let all: Vec<Vec<Scalar>> = w.iter().chain(extra).cloned().collect();
        if all.is_empty() {
            0
        } else {
            Matrix::from_rows(all).rank()
        }
    };
    stack(rows) - stack(&[])
}

/// Where the `μ`-eigenspace of a BMW braiding on `V⊗V` lands in the degree-2
/// components of `Sym_R(V)` and `Λ_R(V)`. Both `Im P^μ` and `Ker P^μ` are
/// measured. Returns `None` for non-BMW braidings.
pub fn mu_line_report(b: &Braiding) -> Result<Option<String>> {
    let Some(mu) = b.mu() else { return Ok(None) };
    let nn = b.dim() * b.dim();
    let proj = spectral_projectors(b.matrix(), &b.eigenvalues())?;
    let p_mu = proj.get(mu).expect("eigenvalue present");
    let im = p_mu.row_space();
    let ker = p_mu.left_kernel();
    let mut parts = Vec::new();
    for kind in [AlgebraKind::Sym, AlgebraKind::Lambda] {
        let w = relation_space(b, kind, Space::V)?;
        parts.push(format!(
            "{kind:?}^2 (dim {}): Im P^mu -> {}, Ker P^mu -> {}",
            nn - w.len(),
            image_in_quotient(&im, &w),
            image_in_quotient(&ker, &w)
        ));
    }
    Ok(Some(format!(
        "dim Im P^mu = {}; {}",
        im.len(),
        parts.join("; ")
    )))
}

/// `binomial(n+k−1, k)` and `binomial(n, k)`: the classical dimensions.
pub fn classical_dims(n: usize, kind: AlgebraKind, kmax: usize) -> Vec<usize> {
    let binom = |a: usize, b: usize| -> usize {
        if b > a {
            return 0;
        }
        (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1))
    };
    (0..=kmax)
        .map(|k| match kind {
            AlgebraKind::Sym if k == 0 => 1,
            AlgebraKind::Sym => binom(n + k - 1, k),
            AlgebraKind::Lambda => binom(n, k),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_sym_is_polynomial_ring() {
        let a = make_algebra(&Braiding::flip(3), AlgebraKind::Sym, Space::V).unwrap();
        assert_eq!(a.poincare(4), vec![1, 3, 6, 10, 15]);
        assert_eq!(a.relations().len(), 3);
    }

    #[test]
    fn hecke_two_lambda() {
        let a = make_algebra(&Braiding::standard_hecke(2), AlgebraKind::Lambda, Space::V).unwrap();
        assert_eq!(a.poincare(4), vec![1, 2, 1, 0, 0]);
        assert_eq!(a.component(3).dim(), 0);
    }

    #[test]
    fn hecke_sym_dims() {
        let a = make_algebra(&Braiding::standard_hecke(2), AlgebraKind::Sym, Space::V).unwrap();
        assert_eq!(a.poincare(5), vec![1, 2, 3, 4, 5, 6]);
        let b = make_algebra(&Braiding::standard_hecke(3), AlgebraKind::Sym, Space::V).unwrap();
        assert_eq!(b.poincare(3), vec![1, 3, 6, 10]);
    }

    #[test]
    fn normal_forms() {
        let a = make_algebra(&Braiding::flip(2), AlgebraKind::Sym, Space::V).unwrap();
        let one = Scalar::one();
        let x21 = a
            .normal_form(Space::V, &[(vec![1, 0], one.clone())])
            .unwrap();
        let x12 = a
            .normal_form(Space::V, &[(vec![0, 1], one.clone())])
            .unwrap();
        assert_eq!(x21, x12);
        assert_eq!(x12, vec![Scalar::zero(), one.clone(), Scalar::zero()]);
        for w in a.relations() {
            let t: Vec<_> = w
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i / 2, i % 2], c.clone()))
                .collect();
            assert!(a
                .normal_form(Space::V, &t)
                .unwrap()
                .iter()
                .all(Scalar::is_zero));
        }
        assert!(matches!(
            a.normal_form(Space::Dual, &[(vec![0], one)]),
            Err(Error::SpaceMismatch(_))
        ));
    }

    #[test]
    fn projection_fixes_basis() {
        let a = make_algebra(&Braiding::standard_hecke(2), AlgebraKind::Sym, Space::Dual).unwrap();
        for k in 0..4 {
            let c = a.component(k);
            for (i, w) in c.basis.iter().enumerate() {
                let v = a.project_word(w);
                assert!(v.iter().enumerate().all(|(j, x)| if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }));
            }
        }
    }

    #[test]
    fn bmw_series_dims() {
        for (b, kind) in [
            (Braiding::bmw_orthogonal_3(), AlgebraKind::Sym),
            (Braiding::bmw_orthogonal_3(), AlgebraKind::Lambda),
            (Braiding::bmw_symplectic_2(), AlgebraKind::Sym),
            (Braiding::bmw_symplectic_2(), AlgebraKind::Lambda),
        ] {
            for space in [Space::V, Space::Dual] {
                let a = make_algebra(&b, kind, space).unwrap();
                assert_eq!(
                    a.poincare(4),
                    classical_dims(b.dim(), kind, 4),
                    "{}",
                    a.label()
                );
            }
        }
    }

    #[test]
    fn relation_projectors_span_relations() {
        for b in [
            Braiding::standard_hecke(2),
            Braiding::bmw_orthogonal_3(),
            Braiding::bmw_symplectic_2(),
        ] {
            for kind in [AlgebraKind::Sym, AlgebraKind::Lambda] {
                for space in [Space::V, Space::Dual] {
                    let p = relation_projector(&b, kind, space).unwrap();
                    let w = relation_space(&b, kind, space).unwrap();
                    let span = if w.is_empty() {
                        vec![]
                    } else {
                        Matrix::from_rows(w).row_space()
                    };
                    assert_eq!(p.row_space(), span, "{} {kind:?} {space:?}", b.label());
                }
            }
        }
    }

    #[test]
    fn classical() {
        assert_eq!(
            classical_dims(3, AlgebraKind::Sym, 4),
            vec![1, 3, 6, 10, 15]
        );
        assert_eq!(classical_dims(2, AlgebraKind::Lambda, 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn mu_line_lands_in_one_degree_two_component() {
        let orth = mu_line_report(&Braiding::bmw_orthogonal_3())
            .unwrap()
            .unwrap();
        assert!(orth.starts_with("dim Im P^mu = 1"), "{orth}");
        assert!(orth.contains("Sym^2 (dim 6): Im P^mu -> 1"), "{orth}");
        assert!(orth.contains("Lambda^2 (dim 3): Im P^mu -> 0"), "{orth}");
        let symp = mu_line_report(&Braiding::bmw_symplectic_2())
            .unwrap()
            .unwrap();
        assert!(symp.contains("Sym^2 (dim 3): Im P^mu -> 0"), "{symp}");
        assert!(symp.contains("Lambda^2 (dim 1): Im P^mu -> 1"), "{symp}");
        assert_eq!(mu_line_report(&Braiding::standard_hecke(2)).unwrap(), None);
    }
}
