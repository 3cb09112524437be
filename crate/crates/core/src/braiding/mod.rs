//! Braidings `R: V⊗V → V⊗V`, their skew-inverse `Ψ`, the matrices `B`, `C`,
//! extensions to the dual space, pairings and spectral projectors.
//!
//! Entries follow the crate-wide convention `R(x_i⊗x_j) = R_{ij}^{kl} x_k⊗x_l`
//! (row `(i,j)`, column `(k,l)`).

pub mod spectral;
mod table;

pub use table::{BraidingTable, TableEntry, TABLE_FORMAT_VERSION};

use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{expect_equal, gating, CheckRecord};
use crate::scalar::Scalar;
use crate::tensor::{flat, outer_swap, LinOperator, Matrix, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `R² = I`.
    Involutive,
    /// `(R − q)(R + q⁻¹) = 0`.
    Hecke,
    /// `(R − q)(R + q⁻¹)(R − μ) = 0`.
    Bmw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Orthogonal,
    Symplectic,
}

impl Series {
    /// The value of `μ` forced by the series at dimension `n`.
    pub fn expected_mu(self, n: usize) -> Scalar {
        self.expected_mu_at(n, &Scalar::q())
    }

    /// `μ` forced by the series when the deformation parameter takes the value `q`.
    pub fn expected_mu_at(self, n: usize, q: &Scalar) -> Scalar {
        let inv = q.inv().expect("deformation parameter is non-zero");
        match self {
            Series::Orthogonal => inv.pow(n as u32 - 1),
            Series::Symplectic => -inv.pow(n as u32 + 1),
        }
    }
}

/// `Ψ` together with `B = Tr₁Ψ`, `C = Tr₂Ψ` and the scalar `α` of `BC = αI`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewInverse {
    /// Stored with row `(l,m)`, column `(j,n)` holding `Ψ_{lm}^{jn}`.
    pub psi: LinOperator,
    pub b: Matrix,
    pub c: Matrix,
    /// `None` when `BC` is not a multiple of the identity.
    pub alpha: Option<Scalar>,
}

/// The braiding extended to the three mixed tensor squares.
#[derive(Debug, Clone)]
pub struct DualExtensions {
    /// `V⊗V* → V*⊗V`, built from `R⁻¹`.
    pub v_dual: LinOperator,
    /// `V*⊗V → V⊗V*`, built from `Ψ`.
    pub dual_v: LinOperator,
    /// `V*⊗V* → V*⊗V*`.
    pub dual_dual: LinOperator,
}

/// Pairings between `V` and `V*`; all matrices are indexed `[i][j]` with `i` the `V` index.
#[derive(Debug, Clone)]
pub struct Pairings {
    /// `⟨x_i, x^j⟩_r`.
    pub right: Matrix,
    /// `⟨x^j, x_i⟩_l`, computed by contracting the `V*⊗V` extension.
    pub left: Matrix,
    /// `⟨x_i, x̃^j⟩_r` for the left-dual basis.
    pub tilde: Matrix,
    /// Row `i` holds the coordinates of `x̃^i` in the basis `x^k`.
    pub tilde_basis: Matrix,
}

/// Spectral idempotents of `R`, keyed by eigenvalue.
#[derive(Debug, Clone)]
pub struct Projectors {
    pub parts: Vec<(Scalar, Matrix)>,
}

impl Projectors {
    pub fn get(&self, eigenvalue: &Scalar) -> Option<&Matrix> {
        self.parts
            .iter()
            .find(|(l, _)| l == eigenvalue)
            .map(|(_, p)| p)
    }
}

/// `P^λ = Π_{ν≠λ} (M − ν)/(λ − ν)` for an operator `M` annihilated by `Π (M − λ)`.
pub fn spectral_projectors(m: &Matrix, eigenvalues: &[Scalar]) -> Result<Projectors> {
    let nn = m.rows();
    let mut parts = Vec::with_capacity(eigenvalues.len());
    for (a, la) in eigenvalues.iter().enumerate() {
        let mut p = Matrix::identity(nn);
        for (b, nu) in eigenvalues.iter().enumerate() {
            if a == b {
                continue;
            }
            let gap = la - nu;
            if gap.is_zero() {
                return Err(Error::NonGenericPoint {
                    point: format!("eigenvalues {la} and {nu} collide"),
                });
            }
            p = p.mul(&m.sub(&Matrix::scalar_identity(nn, nu)).scale(&gap.inv()?));
        }
        parts.push((la.clone(), p));
    }
    Ok(Projectors { parts })
}

#[derive(Debug, Clone)]
pub struct Braiding {
    n: usize,
    r: LinOperator,
    kind: Kind,
    series: Option<Series>,
    q: Scalar,
    mu: Option<Scalar>,
    label: String,
    psi: OnceLock<Result<LinOperator>>,
    skew: OnceLock<Result<SkewInverse>>,
}

impl Braiding {
    /// Builds a braiding without validating any of its defining relations.
    pub fn unchecked(
        n: usize,
        r: Matrix,
        kind: Kind,
        series: Option<Series>,
        q: Scalar,
        mu: Option<Scalar>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let r = LinOperator::new(n, vec![Space::V; 2], vec![Space::V; 2], r)?;
        if (kind == Kind::Bmw) != mu.is_some() || (kind == Kind::Bmw) != series.is_some() {
            return Err(Error::InvalidTable(
                "μ and series are required exactly for BMW braidings".into(),
            ));
        }
        Ok(Braiding {
            n,
            r,
            kind,
            series,
            q,
            mu,
            label: label.into(),
            psi: OnceLock::new(),
            skew: OnceLock::new(),
        })
    }

    /// Builds a braiding and checks the braid relation and minimal polynomial.
    pub fn new(
        n: usize,
        r: Matrix,
        kind: Kind,
        series: Option<Series>,
        q: Scalar,
        mu: Option<Scalar>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let b = Self::unchecked(n, r, kind, series, q, mu, label)?;
        if let Some(w) = b.braid_defect() {
            return Err(Error::InvalidTable(format!("braid relation fails at {w}")));
        }
        if let Some(w) = b.min_poly_defect() {
            return Err(Error::InvalidTable(format!(
                "minimal polynomial fails at {w}"
            )));
        }
        Ok(b)
    }

    /// The flip `P(x_i⊗x_j) = x_j⊗x_i`.
    pub fn flip(n: usize) -> Self {
        Self::superflip(n, 0)
    }

    /// The super-flip with `m` even and `n` odd basis vectors:
    /// `x_i⊗x_j ↦ (−1)^{p(i)p(j)} x_j⊗x_i`.
    pub fn superflip(m: usize, n: usize) -> Self {
        let dim = m + n;
        let odd = |i: usize| i >= m;
        let mat = Matrix::from_fn(dim * dim, dim * dim, |row, col| {
            let (i, j) = (row / dim, row % dim);
            if col != flat(&[j, i], dim) {
                Scalar::zero()
            } else if odd(i) && odd(j) {
                Scalar::int(-1)
            } else {
                Scalar::one()
            }
        });
        let label = if n == 0 {
            format!("flip-{m}")
        } else {
            format!("superflip-{m}-{n}")
        };
        Self::new(dim, mat, Kind::Involutive, None, Scalar::one(), None, label)
            .expect("super-flip is an involutive braiding")
    }

    /// The standard Drinfeld–Jimbo Hecke braiding of `U_q(gl(N))`:
    /// `R(x_i⊗x_i) = q x_i⊗x_i`, and for `i ≠ j`
    /// `R(x_i⊗x_j) = x_j⊗x_i + [i<j](q − q⁻¹) x_i⊗x_j`.
    pub fn standard_hecke(n: usize) -> Self {
        let lambda = Scalar::lambda();
        let mat = Matrix::from_fn(n * n, n * n, |row, col| {
            let (i, j) = (row / n, row % n);
            let (k, l) = (col / n, col % n);
            if i == j {
                if (k, l) == (i, j) {
                    Scalar::q()
                } else {
                    Scalar::zero()
                }
            } else if (k, l) == (j, i) {
                Scalar::one()
            } else if (k, l) == (i, j) && i < j {
                lambda.clone()
            } else {
                Scalar::zero()
            }
        });
        Self::new(
            n,
            mat,
            Kind::Hecke,
            None,
            Scalar::q(),
            None,
            format!("std-hecke-{n}"),
        )
        .expect("standard Hecke braiding satisfies its relations")
    }

    /// Shipped orthogonal BMW braiding for `N = 3`.
    pub fn bmw_orthogonal_3() -> Self {
        Self::from_json(include_str!("../../tables/bmw-orthogonal-3.json"))
            .expect("shipped table is valid")
    }

    /// Shipped symplectic BMW braiding for `N = 2`.
    pub fn bmw_symplectic_2() -> Self {
        Self::from_json(include_str!("../../tables/bmw-symplectic-2.json"))
            .expect("shipped table is valid")
    }

    /// Resolves a builtin name: `flip`, `superflip-M-N`, `std-hecke`, `bmw-orth`, `bmw-symp`.
    pub fn builtin(name: &str, n: usize) -> Result<Self> {
        match name {
            "flip" => Ok(Self::flip(n)),
            "std-hecke" | "hecke" => {
                if n < 2 {
                    return Err(Error::Unsupported(
                        "standard Hecke braiding needs N >= 2".into(),
                    ));
                }
                Ok(Self::standard_hecke(n))
            }
            "bmw-orth" | "bmw-orthogonal" if n == 3 => Ok(Self::bmw_orthogonal_3()),
            "bmw-symp" | "bmw-symplectic" if n == 2 => Ok(Self::bmw_symplectic_2()),
            "bmw-orth" | "bmw-orthogonal" | "bmw-symp" | "bmw-symplectic" => {
                Err(Error::Unsupported(format!(
                    "no shipped {name} table for N = {n}; load one with --table"
                )))
            }
            _ => {
                if let Some(rest) = name.strip_prefix("superflip-") {
                    let parts: Vec<_> = rest
                        .split('-')
                        .filter_map(|s| s.parse::<usize>().ok())
                        .collect();
                    if let [m, k] = parts[..] {
                        if m + k >= 1 {
                            return Ok(Self::superflip(m, k));
                        }
                    }
                }
                Err(Error::Unsupported(format!("unknown braiding {name}")))
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn series(&self) -> Option<Series> {
        self.series
    }

    /// The deformation parameter: `q` itself when generic, a constant after
    /// specialization, `1` for involutive braidings.
    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn mu(&self) -> Option<&Scalar> {
        self.mu.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn operator(&self) -> &LinOperator {
        &self.r
    }

    pub fn matrix(&self) -> &Matrix {
        self.r.matrix()
    }

    /// `R_{ij}^{kl}` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.matrix()[(i * self.n + j, k * self.n + l)]
    }

    /// Roots of the minimal polynomial: `q, −q⁻¹` and, for BMW, `μ`.
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        let q = &self.q;
        let mut ev = vec![q.clone(), -q.inv().expect("q is non-zero")];
        if let Some(mu) = &self.mu {
            ev.push(mu.clone());
        }
        ev
    }

    /// Substitutes `q = q0` in every entry.
    pub fn specialize(&self, q0: &BigRational) -> Result<Self> {
        let mat = self.matrix().try_specialize(q0)?;
        let q = self.q.specialize(q0)?;
        if q.is_zero() {
            return Err(Error::NonGenericPoint {
                point: q0.to_string(),
            });
        }
        let mu = self.mu.as_ref().map(|m| m.specialize(q0)).transpose()?;
        Self::unchecked(
            self.n,
            mat,
            self.kind,
            self.series,
            q,
            mu,
            format!("{}@q={q0}", self.label),
        )
    }

    /// Witness of the first entry where `R₁₂R₂₃R₁₂ ≠ R₂₃R₁₂R₂₃`.
    pub fn braid_defect(&self) -> Option<String> {
        let a = self.r.place(1, 3).ok()?;
        let b = self.r.place(2, 3).ok()?;
        let lhs = a.matrix().mul(b.matrix()).mul(a.matrix());
        let rhs = b.matrix().mul(a.matrix()).mul(b.matrix());
        expect_equal(&lhs, &rhs).err()
    }

    /// Witness of the first non-zero entry of `Π_λ (R − λ)` over [`eigenvalues`](Self::eigenvalues).
    pub fn min_poly_defect(&self) -> Option<String> {
        let nn = self.n * self.n;
        let mut acc = Matrix::identity(nn);
        for ev in self.eigenvalues() {
            acc = acc.mul(&self.matrix().sub(&Matrix::scalar_identity(nn, &ev)));
        }
        expect_equal(&acc, &Matrix::zeros(nn, nn)).err()
    }

    /// `Ψ` from `R_{ij}^{kl} Ψ_{lm}^{jn} = δ_m^k δ_i^n`.
    ///
    /// Regrouping indices as `Rt[(k,i),(l,j)] = R_{ij}^{kl}` turns the system
    /// into `Rt · X = I` with `X[(l,j),(m,n)] = Ψ_{lm}^{jn}`.
    pub fn psi(&self) -> Result<&LinOperator> {
        self.psi
            .get_or_init(|| {
                let n = self.n;
                let nn = n * n;
                let rt = Matrix::from_fn(nn, nn, |row, col| {
                    let (k, i) = (row / n, row % n);
                    let (l, j) = (col / n, col % n);
                    self.entry(i, j, k, l).clone()
                });
                let x = rt.inverse().map_err(|_| Error::NotSkewInvertible)?;
                let psi = Matrix::from_fn(nn, nn, |row, col| {
                    let (l, m) = (row / n, row % n);
                    let (j, p) = (col / n, col % n);
                    x[(l * n + j, m * n + p)].clone()
                });
                LinOperator::new(n, vec![Space::V; 2], vec![Space::V; 2], psi)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `Ψ`, `B = Tr₁Ψ`, `C = Tr₂Ψ` and `α`; computed once.
    pub fn skew_inverse(&self) -> Result<&SkewInverse> {
        self.skew
            .get_or_init(|| {
                let psi = self.psi()?.clone();
                let b = psi.partial_trace(&[1])?;
                let c = psi.partial_trace(&[2])?;
                if b.inverse().is_err() {
                    return Err(Error::NotStrictlySkewInvertible("B"));
                }
                if c.inverse().is_err() {
                    return Err(Error::NotStrictlySkewInvertible("C"));
                }
                let alpha = b.mul(&c).as_scalar_multiple_of_identity();
                Ok(SkewInverse { psi, b, c, alpha })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn extend_to_duals(&self) -> Result<DualExtensions> {
        let n = self.n;
        let nn = n * n;
        let rinv = self.matrix().inverse()?;
        let psi = self.psi()?.matrix();
        let idx = |a: usize, b: usize| a * n + b;
        // x_i⊗x^j ↦ (R⁻¹)_{ki}^{lj} x^k⊗x_l
        let v_dual = Matrix::from_fn(nn, nn, |row, col| {
            let (i, j) = (row / n, row % n);
            let (k, l) = (col / n, col % n);
            rinv[(idx(k, i), idx(l, j))].clone()
        });
        // x^i⊗x_j ↦ Ψ_{kj}^{li} x_l⊗x^k
        let dual_v = Matrix::from_fn(nn, nn, |row, col| {
            let (i, j) = (row / n, row % n);
            let (l, k) = (col / n, col % n);
            psi[(idx(k, j), idx(l, i))].clone()
        });
        // x^i⊗x^j ↦ R_{lk}^{ji} x^k⊗x^l
        let dual_dual = Matrix::from_fn(nn, nn, |row, col| {
            let (i, j) = (row / n, row % n);
            let (k, l) = (col / n, col % n);
            self.entry(l, k, j, i).clone()
        });
        use Space::{Dual, V};
        Ok(DualExtensions {
            v_dual: LinOperator::new(n, vec![V, Dual], vec![Dual, V], v_dual)?,
            dual_v: LinOperator::new(n, vec![Dual, V], vec![V, Dual], dual_v)?,
            dual_dual: LinOperator::new(n, vec![Dual, Dual], vec![Dual, Dual], dual_dual)?,
        })
    }

    /// The braiding between the given pair of spaces.
    pub fn on_spaces(&self, a: Space, b: Space) -> Result<LinOperator> {
        Ok(match (a, b) {
            (Space::V, Space::V) => self.r.clone(),
            (Space::V, Space::Dual) => self.extend_to_duals()?.v_dual,
            (Space::Dual, Space::V) => self.extend_to_duals()?.dual_v,
            (Space::Dual, Space::Dual) => self.extend_to_duals()?.dual_dual,
        })
    }

    /// `R₁₂R₂₃R₁₂ = R₂₃R₁₂R₂₃` on `s₁⊗s₂⊗s₃`, each factor the appropriate extension.
    pub fn mixed_braid_defect(&self, s: [Space; 3]) -> Result<Option<String>> {
        let op = |x: Space, y: Space, first: usize, rest: [Space; 3]| -> Result<LinOperator> {
            self.on_spaces(x, y)?.place_labelled(first, 3, &rest)
        };
        let [a, b, c] = s;
        let lhs = op(a, b, 1, [a, b, c])?
            .then(&op(a, c, 2, [b, a, c])?)?
            .then(&op(b, c, 1, [b, c, a])?)?;
        let rhs = op(b, c, 2, [a, b, c])?
            .then(&op(a, c, 1, [a, c, b])?)?
            .then(&op(a, b, 2, [c, a, b])?)?;
        Ok(expect_equal(lhs.matrix(), rhs.matrix()).err())
    }

    pub fn dual_pairings(&self) -> Result<Pairings> {
        let n = self.n;
        let skew = self.skew_inverse()?;
        let binv = skew
            .b
            .inverse()
            .map_err(|_| Error::NotStrictlySkewInvertible("B"))?;
        let ext = self.extend_to_duals()?;
        // ⟨x^j, x_i⟩_l = ⟨ , ⟩_r ∘ R(x^j ⊗ x_i)
        let left = Matrix::from_fn(n, n, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..n {
                acc += ext.dual_v.entry(&[j, i], &[k, k]);
            }
            acc
        });
        Ok(Pairings {
            right: Matrix::identity(n),
            left,
            tilde: binv.clone(),
            tilde_basis: binv.transpose(),
        })
    }

    /// `P^λ = Π_{ν≠λ} (R − ν)/(λ − ν)`.
    pub fn projectors(&self) -> Result<Projectors> {
        spectral_projectors(self.matrix(), &self.eigenvalues())
    }

    /// The full property suite for this braiding.
    pub fn check_suite(&self) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let id = |s: &str| format!("braiding.{}.{s}", self.label);
        out.push(gating(&id("braid"), "braid relation", || {
            match self.braid_defect() {
                None => Ok(()),
                Some(w) => Err(w),
            }
        }));
        let anchor = match self.kind {
            Kind::Involutive => "involutivity R^2 = I",
            Kind::Hecke => "Hecke condition",
            Kind::Bmw => "BMW cubic minimal polynomial",
        };
        out.push(gating(&id("minimal-polynomial"), anchor, || {
            match self.min_poly_defect() {
                None => Ok(()),
                Some(w) => Err(w),
            }
        }));
        if let Some(series) = self.series {
            out.push(gating(&id("mu"), "mu fixed by the series", || {
                let expected = series.expected_mu_at(self.n, &self.q);
                match &self.mu {
                    Some(m) if *m == expected => Ok(()),
                    m => Err(format!("mu = {m:?}, expected {expected}")),
                }
            }));
        }
        out.push(gating(
            &id("skew-invertible"),
            "Tr_2 R_12 Psi_23 = P_13",
            || {
                let psi = self.psi().map_err(|e| e.to_string())?;
                let lhs = self
                    .r
                    .place(1, 3)
                    .and_then(|a| a.then(&psi.place(2, 3)?))
                    .and_then(|m| m.partial_trace(&[2]))
                    .map_err(|e| e.to_string())?;
                expect_equal(&lhs, &outer_swap(self.n))
            },
        ));
        let skew = self.skew_inverse();
        out.push(gating(
            &id("strictly-skew-invertible"),
            "B and C invertible",
            || skew.as_ref().map(|_| ()).map_err(|e| e.to_string()),
        ));
        if let Ok(s) = skew {
            let rec = gating(&id("bc-scalar"), "B C = alpha I", || {
                s.alpha
                    .as_ref()
                    .map(|_| ())
                    .ok_or_else(|| "BC is not scalar".to_string())
            });
            let detail = s
                .alpha
                .as_ref()
                .map(|a| format!("alpha = {a}"))
                .unwrap_or_default();
            out.push(rec.with_detail(detail));
            out.push(gating(&id("left-pairing"), "<x^j, x_i>_l = B_i^j", || {
                let p = self.dual_pairings().map_err(|e| e.to_string())?;
                expect_equal(&p.left, &s.b)?;
                // ⟨x̃^i, x_j⟩_l = δ
                let back = p.tilde_basis.mul(&p.left.transpose());
                expect_equal(&back, &Matrix::identity(self.n))
            }));
            out.push(gating(
                &id("mixed-braid"),
                "braid relation on mixed V, V* legs",
                || {
                    use Space::{Dual, V};
                    for s in [V, Dual].into_iter().flat_map(|a| {
                        [V, Dual]
                            .into_iter()
                            .flat_map(move |b| [V, Dual].into_iter().map(move |c| [a, b, c]))
                    }) {
                        match self.mixed_braid_defect(s) {
                            Ok(None) => {}
                            Ok(Some(w)) => return Err(format!("{s:?}: {w}")),
                            Err(e) => return Err(format!("{s:?}: {e}")),
                        }
                    }
                    Ok(())
                },
            ));
        }
        out.push(gating(&id("projectors"), "spectral projectors", || {
            let p = self.projectors().map_err(|e| e.to_string())?;
            self.projector_defect(&p)
        }));
        out
    }

    /// Idempotence, orthogonality, completeness and `R = Σ λ P^λ`.
    pub fn projector_defect(&self, p: &Projectors) -> std::result::Result<(), String> {
        let nn = self.n * self.n;
        let mut sum = Matrix::zeros(nn, nn);
        let mut recon = Matrix::zeros(nn, nn);
        for (a, (la, pa)) in p.parts.iter().enumerate() {
            for (b, (_, pb)) in p.parts.iter().enumerate() {
                let prod = pa.mul(pb);
                let want = if a == b {
                    pa.clone()
                } else {
                    Matrix::zeros(nn, nn)
                };
                expect_equal(&prod, &want).map_err(|w| format!("P{a} P{b}: {w}"))?;
            }
            sum = sum.add(pa);
            recon = recon.add(&pa.scale(la));
        }
        expect_equal(&sum, &Matrix::identity(nn)).map_err(|w| format!("sum: {w}"))?;
        expect_equal(&recon, self.matrix()).map_err(|w| format!("reconstruction: {w}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn flip_skew_inverse_is_flip() {
        let b = Braiding::flip(2);
        let s = b.skew_inverse().unwrap();
        assert_eq!(s.psi.matrix(), LinOperator::flip(2).matrix());
        assert!(s.b.is_identity() && s.c.is_identity());
        assert_eq!(s.alpha, Some(Scalar::one()));
    }

    #[test]
    fn superflip_b_is_grading() {
        let b = Braiding::superflip(1, 1);
        let s = b.skew_inverse().unwrap();
        assert_eq!(
            s.b,
            Matrix::from_rows(vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::int(-1)]
            ])
        );
    }

    #[test]
    fn flip_passes_hecke_condition_at_q_one() {
        let b = Braiding::flip(3);
        assert!(b.min_poly_defect().is_none());
    }

    #[test]
    fn hecke_two_projector_ranks() {
        let b = Braiding::standard_hecke(2);
        let p = b.projectors().unwrap();
        assert_eq!(p.get(&Scalar::q()).unwrap().rank(), 3);
        assert_eq!(p.get(&-Scalar::q_pow(-1)).unwrap().rank(), 1);
        let m = Matrix::scalar_identity(4, &Scalar::q()).sub(b.matrix());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn hecke_degenerates_to_flip() {
        let one = BigRational::from_integer(1.into());
        let b = Braiding::standard_hecke(3).specialize(&one).unwrap();
        assert_eq!(b.matrix(), Braiding::flip(3).matrix());
    }

    #[test]
    fn hecke_suite_passes() {
        for n in 2..=3 {
            let recs = Braiding::standard_hecke(n).check_suite();
            assert!(all_passed(&recs), "{recs:#?}");
            let s = Braiding::standard_hecke(n).skew_inverse().unwrap().clone();
            assert!(s.b.is_diagonal() && s.c.is_diagonal());
        }
    }

    #[test]
    fn projector_is_not_skew_invertible() {
        let mut m = Matrix::zeros(4, 4);
        m[(0, 0)] = Scalar::one();
        let b = Braiding::unchecked(2, m, Kind::Hecke, None, Scalar::q(), None, "proj").unwrap();
        assert_eq!(b.skew_inverse().unwrap_err(), Error::NotSkewInvertible);
    }

    #[test]
    fn flip_extensions_are_flips() {
        let ext = Braiding::flip(3).extend_to_duals().unwrap();
        let p = LinOperator::flip(3);
        for op in [&ext.v_dual, &ext.dual_v, &ext.dual_dual] {
            assert_eq!(op.matrix(), p.matrix());
        }
    }

    #[test]
    fn non_generic_projector_point() {
        let b = Braiding::standard_hecke(2);
        // the denominators q + q^-1 never vanish on the rationals; q = 0 is rejected
        assert!(b.specialize(&BigRational::from_integer(0.into())).is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(Braiding::builtin("superflip-2-1", 0).unwrap().dim(), 3);
        assert!(Braiding::builtin("nope", 2).is_err());
    }
}
