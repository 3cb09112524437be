//! The braided Lie algebra `gl(V_R)` on `End(V) ≅ V⊗V*`.
//!
//! Basis `l_i^j` has index `i·N + j`; `End(V)^{⊗k}` is flattened with the
//! first factor most significant. All maps use the row convention of
//! [`Matrix`]: a row is the input, so `A·B` applies `A` first.

use crate::braiding::{Braiding, Kind};
use crate::error::{Error, Result};
use crate::report::{expect_equal, gating, report_only, CheckRecord};
use crate::scalar::Scalar;
use crate::tensor::Matrix;

type Sparse = Vec<(usize, Scalar)>;

#[derive(Debug, Clone)]
pub struct BraidedLie {
    braiding: Braiding,
    /// `𝓡` on `End(V)^{⊗2}`, `N⁴×N⁴`.
    rhat: Matrix,
    /// `∘: End(V)^{⊗2} → End(V)`, `N⁴×N²`.
    circ: Matrix,
    /// `[,] = (I − 𝓡)·∘`.
    bracket: Matrix,
    /// `Tr_R l_i^j = (BC)_i^j`, as an `N²×1` column.
    trace: Matrix,
    alpha: Option<Scalar>,
    m1: Matrix,
    m2: Matrix,
}

/// Coefficients of the entries of `R₁₂L₁R₁₂L₁` and `L₁R₁₂L₁R₁₂` in the
/// `l⊗l` basis; row `(i,k,j,m)` is the entry `((i,k),(j,m))`.
pub fn mre_coefficients(r: &Matrix, n: usize) -> (Matrix, Matrix) {
    let nn = n * n;
    let e2 = nn * nn;
    let ix = |a: usize, b: usize| a * n + b;
    let pair = |a: usize, b: usize, c: usize, d: usize| ix(a, b) * nn + ix(c, d);
    // L₁R₁₂L₁ entry ((i,k),(j,m)) = Σ R_{ak}^{cm} l_i^a ⊗ l_c^j
    let mut lrl = vec![Sparse::new(); e2];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let slot = &mut lrl[ix(i, k) * nn + ix(j, m)];
                    for a in 0..n {
                        for c in 0..n {
                            let e = &r[(ix(a, k), ix(c, m))];
                            if !e.is_zero() {
                                slot.push((pair(i, a, c, j), e.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut m1 = Matrix::zeros(e2, e2);
    let mut m2 = Matrix::zeros(e2, e2);
    for row in 0..nn {
        for col in 0..nn {
            for p in 0..nn {
                let e = &r[(row, p)];
                if !e.is_zero() {
                    for (t, c) in &lrl[p * nn + col] {
                        m1[(row * nn + col, *t)] += &(e * c);
                    }
                }
                let e = &r[(p, col)];
                if !e.is_zero() {
                    for (t, c) in &lrl[row * nn + p] {
                        m2[(row * nn + col, *t)] += &(e * c);
                    }
                }
            }
        }
    }
    (m1, m2)
}

/// Coefficients of the entries of `R₁₂L₁ − L₁R₁₂` in the `l` basis, `N⁴×N²`.
fn mre_linear_part(r: &Matrix, n: usize) -> Matrix {
    let nn = n * n;
    let ix = |a: usize, b: usize| a * n + b;
    let mut out = Matrix::zeros(nn * nn, nn);
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for m in 0..n {
                    let row = ix(i, k) * nn + ix(j, m);
                    for a in 0..n {
                        out[(row, ix(a, j))] += &r[(ix(i, k), ix(a, m))];
                        out[(row, ix(i, a))] -= &r[(ix(a, k), ix(j, m))];
                    }
                }
            }
        }
    }
    out
}

/// Builds `gl(V_R)` for an involutive or Hecke braiding.
pub fn braided_lie(b: &Braiding) -> Result<BraidedLie> {
    if b.kind() == Kind::Bmw {
        return Err(Error::UnsupportedConstruction(
            "the BMW L-algebra is not an enveloping algebra of a braided Lie algebra".into(),
        ));
    }
    let n = b.dim();
    let nn = n * n;
    let skew = b.skew_inverse()?;
    if skew.b.inverse().is_err() {
        return Err(Error::NotStrictlySkewInvertible("B"));
    }
    let (m1, m2) = mre_coefficients(b.matrix(), n);
    let m1inv = m1.inverse().map_err(|_| Error::RhatNotDetermined)?;
    let rhat = m1inv.mul(&m2);
    let circ = Matrix::from_fn(nn * nn, nn, |row, col| {
        let (x, y) = (row / nn, row % nn);
        let (i, j, k, m) = (x / n, x % n, y / n, y % n);
        if col == i * n + m {
            skew.b[(k, j)].clone()
        } else {
            Scalar::zero()
        }
    });
    let bracket = Matrix::identity(nn * nn).sub(&rhat).mul(&circ);
    let bc = skew.b.mul(&skew.c);
    let trace = Matrix::from_fn(nn, 1, |e, _| bc[(e / n, e % n)].clone());
    Ok(BraidedLie {
        braiding: b.clone(),
        rhat,
        circ,
        bracket,
        trace,
        alpha: skew.alpha.clone(),
        m1,
        m2,
    })
}

fn sparse_rows(m: &Matrix) -> Vec<Sparse> {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .filter(|&c| !m[(r, c)].is_zero())
                .map(|c| (c, m[(r, c)].clone()))
                .collect()
        })
        .collect()
}

/// Which Hecke Jacobi identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiForm {
    /// `[,][,]₂₃(I − 𝓡)₁₂ = [,][,]₁₂`; reduces to the classical identity at `R = P`.
    Left,
    /// `[,][,]₂₃(I − 𝓡)₂₃ = [,][,]₁₂`.
    Inner,
}

impl BraidedLie {
    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn rhat(&self) -> &Matrix {
        &self.rhat
    }

    pub fn circ(&self) -> &Matrix {
        &self.circ
    }

    pub fn bracket_matrix(&self) -> &Matrix {
        &self.bracket
    }

    pub fn trace_functional(&self) -> &Matrix {
        &self.trace
    }

    pub fn alpha(&self) -> Option<&Scalar> {
        self.alpha.as_ref()
    }

    fn end_dim(&self) -> usize {
        self.braiding.dim().pow(2)
    }

    /// `[l_e, l_f]_R` as coordinates in `End(V)`.
    pub fn bracket(&self, e: usize, f: usize) -> Vec<Scalar> {
        self.bracket.row(e * self.end_dim() + f).to_vec()
    }

    /// `M₁𝓡 = M₂`.
    pub fn defining_defect(&self) -> std::result::Result<(), String> {
        expect_equal(&self.m1.mul(&self.rhat), &self.m2)
    }

    /// `Tr_R l_i^j = α δ_i^j`.
    pub fn trace_defect(&self) -> std::result::Result<(), String> {
        let nn = self.end_dim();
        let n = self.braiding.dim();
        let alpha = self
            .alpha
            .clone()
            .ok_or("BC is not a multiple of the identity")?;
        let want = Matrix::from_fn(nn, 1, |e, _| {
            if e / n == e % n {
                alpha.clone()
            } else {
                Scalar::zero()
            }
        });
        expect_equal(&self.trace, &want)
    }

    /// `Tr_R [l_e, l_f]_R = 0` for all basis pairs.
    pub fn trace_of_brackets_defect(&self) -> std::result::Result<(), String> {
        let t = self.bracket.mul(&self.trace);
        let nn = self.end_dim();
        match (0..t.rows()).find(|&r| !t[(r, 0)].is_zero()) {
            None => Ok(()),
            Some(r) => Err(format!("pair ({}, {})", r / nn + 1, r % nn + 1)),
        }
    }

    /// `∘` applied to `R₁₂L₁R₁₂L₁ − L₁R₁₂L₁R₁₂` gives `R₁₂L₁ − L₁R₁₂` entrywise,
    /// and `M₁(I − 𝓡) = M₁ − M₂` recovers the bracket form of the relation.
    pub fn mre_bracket_defect(&self) -> std::result::Result<(), String> {
        let n = self.braiding.dim();
        let lhs = self.m1.sub(&self.m2).mul(&self.circ);
        expect_equal(&lhs, &mre_linear_part(self.braiding.matrix(), n))
            .map_err(|w| format!("circ of mRE: {w}"))?;
        let via_bracket = self.m1.mul(&self.bracket);
        expect_equal(&via_bracket, &lhs).map_err(|w| format!("bracket form: {w}"))
    }

    /// Applies `(I − 𝓡)` or `𝓡` at legs `(1,2)` or `(2,3)` of a sparse vector on `End(V)^{⊗3}`.
    fn apply_pair(
        &self,
        v: &[(usize, Scalar)],
        rows: &[Sparse],
        at12: bool,
        keep_identity: bool,
    ) -> Sparse {
        let nn = self.end_dim();
        let mut acc = std::collections::BTreeMap::<usize, Scalar>::new();
        let mut push = |k: usize, c: Scalar| {
            let slot = acc.entry(k).or_insert_with(Scalar::zero);
            *slot += &c;
        };
        for (idx, c) in v {
            let (a, b, z) = (idx / (nn * nn), (idx / nn) % nn, idx % nn);
            if keep_identity {
                push(*idx, c.clone());
            }
            let sign = if keep_identity {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            let p = if at12 { a * nn + b } else { b * nn + z };
            for (t, e) in &rows[p] {
                let out = if at12 { t * nn + z } else { a * nn * nn + t };
                push(out, &(&sign * c) * e);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `[,][,]₂₃` on a sparse vector of `End(V)^{⊗3}`.
    fn nested_23(&self, v: &[(usize, Scalar)], br: &[Sparse]) -> Vec<Scalar> {
        let nn = self.end_dim();
        let mut mid = vec![Scalar::zero(); nn * nn];
        for (idx, c) in v {
            let (a, p) = (idx / (nn * nn), idx % (nn * nn));
            for (f, e) in &br[p] {
                mid[a * nn + f] += &(c * e);
            }
        }
        self.apply_bracket(&mid, br)
    }

    fn apply_bracket(&self, v: &[Scalar], br: &[Sparse]) -> Vec<Scalar> {
        let nn = self.end_dim();
        let mut out = vec![Scalar::zero(); nn];
        for (p, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (g, e) in &br[p] {
                out[*g] += &(c * e);
            }
        }
        out
    }

    fn triple_witness(&self, idx: usize) -> String {
        let nn = self.end_dim();
        let n = self.braiding.dim();
        let l = |e: usize| format!("l_{}^{}", e / n + 1, e % n + 1);
        format!(
            "({}, {}, {})",
            l(idx / (nn * nn)),
            l((idx / nn) % nn),
            l(idx % nn)
        )
    }

    /// The Hecke Jacobi identity in the given form, on every basis triple.
    pub fn jacobi_defect(&self, form: JacobiForm) -> std::result::Result<(), String> {
        let nn = self.end_dim();
        let br = sparse_rows(&self.bracket);
        let rh = sparse_rows(&self.rhat);
        for idx in 0..nn * nn * nn {
            let e = vec![(idx, Scalar::one())];
            let moved = self.apply_pair(&e, &rh, form == JacobiForm::Left, true);
            let lhs = self.nested_23(&moved, &br);
            let (a, p) = (idx / nn, idx % nn);
            let mut mid = vec![Scalar::zero(); nn * nn];
            for (f, c) in &br[a] {
                mid[f * nn + p] += c;
            }
            let rhs = self.apply_bracket(&mid, &br);
            if lhs != rhs {
                return Err(format!("triple {}", self.triple_witness(idx)));
            }
        }
        Ok(())
    }

    /// `[,][,]₂₃(I + 𝓡₁₂𝓡₂₃ + 𝓡₂₃𝓡₁₂) = 0`, the form valid for involutive braidings.
    pub fn involutive_jacobi_defect(&self) -> std::result::Result<(), String> {
        let nn = self.end_dim();
        let br = sparse_rows(&self.bracket);
        let rh = sparse_rows(&self.rhat);
        for idx in 0..nn * nn * nn {
            let e = vec![(idx, Scalar::one())];
            // 𝓡₁₂𝓡₂₃ applies 𝓡₂₃ first
            let a = self.apply_pair(&self.apply_pair(&e, &rh, false, false), &rh, true, false);
            let b = self.apply_pair(&self.apply_pair(&e, &rh, true, false), &rh, false, false);
            let mut v = e;
            v.extend(a);
            v.extend(b);
            if self.nested_23(&v, &br).iter().any(|c| !c.is_zero()) {
                return Err(format!("triple {}", self.triple_witness(idx)));
            }
        }
        Ok(())
    }

    pub fn check_suite(&self) -> Vec<CheckRecord> {
        let id = |s: &str| format!("lie.{}.{s}", self.braiding.label());
        let mut out = vec![
            gating(
                &id("rhat-defining"),
                "defining property of the braided flip on End(V)⊗End(V)",
                || self.defining_defect(),
            ),
            gating(
                &id("trace-generators"),
                "R-trace of the basis l_i^j",
                || self.trace_defect(),
            )
            .with_detail(format!(
                "alpha = {}",
                self.alpha.as_ref().map_or("none".into(), |a| a.to_string())
            )),
            gating(
                &id("trace-brackets"),
                "R-trace vanishes on brackets",
                || self.trace_of_brackets_defect(),
            ),
            gating(
                &id("mre-bracket"),
                "modified reflection equation in bracket form",
                || self.mre_bracket_defect(),
            ),
            gating(&id("jacobi"), "braided Jacobi identity", || {
                self.jacobi_defect(JacobiForm::Left)
            }),
            report_only(
                &id("jacobi-inner"),
                "braided Jacobi identity with (I - Rhat) on legs 2,3",
                || match self.jacobi_defect(JacobiForm::Inner) {
                    Ok(()) => "holds".into(),
                    Err(w) => format!("fails at {w}"),
                },
            ),
        ];
        if self.braiding.kind() == Kind::Involutive {
            out.push(gating(
                &id("jacobi-involutive"),
                "classical-form braided Jacobi identity",
                || self.involutive_jacobi_defect(),
            ));
        }
        out
    }
}
