//! Baxterized braidings `R(u,v)` depending on spectral parameters.
//!
//! Rational: `R(u,v) = R − I/(u−v)`, `g(u,v) = 1 − 1/(u−v)`.
//! Trigonometric: `R(u,v) = R − λu I/(u−v)`, `g(u,v) = q − λu/(u−v)`, `λ = q − q⁻¹`.
//!
//! Identities in `u, v, w` are certified on integer grids. After multiplying
//! by the `(u−v)` denominators every entry is a polynomial of degree at most
//! 2 in each spectral variable, so vanishing on a grid with 3 or more points
//! per variable proves the identity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Braiding, Kind};
use crate::error::{Error, Result};
use crate::report::{expect_equal, gating, CheckRecord};
use crate::scalar::Scalar;
use crate::tensor::{LinOperator, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Rational,
    Trigonometric,
}

/// Per-variable degree bound of the cleared identities.
pub const DEGREE_BOUND: usize = 2;

/// Grid used for certification: `DEGREE_BOUND + 2` integer points.
pub fn certificate_grid() -> Vec<BigRational> {
    (1..=(DEGREE_BOUND as i64 + 2)).map(int).collect()
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

#[derive(Debug, Clone)]
pub struct CurrentBraiding {
    base: Braiding,
    flavor: Flavor,
}

/// Attaches spectral parameters to an involutive (rational) or Hecke (trigonometric) braiding.
pub fn baxterize(b: &Braiding, flavor: Flavor) -> Result<CurrentBraiding> {
    match (b.kind(), flavor) {
        (Kind::Involutive, Flavor::Rational) | (Kind::Hecke, Flavor::Trigonometric) => {
            Ok(CurrentBraiding {
                base: b.clone(),
                flavor,
            })
        }
        (k, f) => Err(Error::UnsupportedBase(format!(
            "{f:?} Baxterization of a {k:?} braiding"
        ))),
    }
}

impl CurrentBraiding {
    pub fn base(&self) -> &Braiding {
        &self.base
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn lambda(&self) -> Scalar {
        let q = self.base.q();
        q - &q.inv().expect("q is non-zero")
    }

    /// `h(u)`: numerator of the identity coefficient, `1` or `λu`.
    pub fn h(&self, u: &BigRational) -> Scalar {
        match self.flavor {
            Flavor::Rational => Scalar::one(),
            Flavor::Trigonometric => &self.lambda() * &Scalar::rational(u),
        }
    }

    /// `f(u,v) = h(u)/(u−v)`, the coefficient subtracted from `R`.
    pub fn f(&self, u: &BigRational, v: &BigRational) -> Result<Scalar> {
        let d = u - v;
        if d.is_zero() {
            return Err(Error::NonGenericPoint {
                point: format!("u = v = {u}"),
            });
        }
        Ok(&self.h(u) * &Scalar::rational(&(BigRational::from_integer(1.into()) / d)))
    }

    /// `R(u,v) = R − f(u,v) I`.
    pub fn at(&self, u: &BigRational, v: &BigRational) -> Result<Matrix> {
        let nn = self.base.dim().pow(2);
        Ok(self
            .base
            .matrix()
            .sub(&Matrix::scalar_identity(nn, &self.f(u, v)?)))
    }

    /// `g(u,v)`.
    pub fn normalizer(&self, u: &BigRational, v: &BigRational) -> Result<Scalar> {
        let lead = match self.flavor {
            Flavor::Rational => Scalar::one(),
            Flavor::Trigonometric => self.base.q().clone(),
        };
        Ok(&lead - &self.f(u, v)?)
    }

    /// `𝓡(u,v) = R(u,v)/g(u,v)`.
    pub fn normalized_at(&self, u: &BigRational, v: &BigRational) -> Result<Matrix> {
        let g = self.normalizer(u, v)?;
        if g.is_zero() {
            return Err(Error::NonGenericPoint {
                point: format!("g({u}, {v}) = 0"),
            });
        }
        Ok(self.at(u, v)?.scale(&g.inv()?))
    }

    /// `(u−v) R(u,v) = (u−v)R − h(u)I`, defined everywhere.
    pub fn cleared_at(&self, u: &BigRational, v: &BigRational) -> Matrix {
        let nn = self.base.dim().pow(2);
        let d = Scalar::rational(&(u - v));
        self.base
            .matrix()
            .scale(&d)
            .sub(&Matrix::scalar_identity(nn, &self.h(u)))
    }

    /// `(u−v) g(u,v)`.
    pub fn cleared_normalizer(&self, u: &BigRational, v: &BigRational) -> Scalar {
        let d = Scalar::rational(&(u - v));
        match self.flavor {
            Flavor::Rational => &d - &Scalar::one(),
            Flavor::Trigonometric => &(self.base.q() * &d) - &self.h(u),
        }
    }

    /// `R̃(u,v)R̃(v,u) = g̃(u,v)g̃(v,u) I` on the certificate grid.
    pub fn certify_unitarity(&self) -> std::result::Result<(), String> {
        let nn = self.base.dim().pow(2);
        let grid = certificate_grid();
        for u in &grid {
            for v in &grid {
                let lhs = self.cleared_at(u, v).mul(&self.cleared_at(v, u));
                let g = &self.cleared_normalizer(u, v) * &self.cleared_normalizer(v, u);
                expect_equal(&lhs, &Matrix::scalar_identity(nn, &g))
                    .map_err(|w| format!("(u,v)=({u},{v}): {w}"))?;
            }
        }
        Ok(())
    }

    /// `R₁₂(u,v)R₂₃(u,w)R₁₂(v,w) = R₂₃(v,w)R₁₂(u,w)R₂₃(u,v)` on the certificate grid.
    pub fn certify_braid(&self) -> std::result::Result<(), String> {
        let n = self.base.dim();
        let grid = certificate_grid();
        let place = |m: Matrix, first: usize| -> Matrix {
            LinOperator::on_v(n, m)
                .and_then(|op| op.place(first, 3))
                .expect("two-leg operator")
                .into_matrix()
        };
        for u in &grid {
            for v in &grid {
                for w in &grid {
                    let lhs = place(self.cleared_at(u, v), 1)
                        .mul(&place(self.cleared_at(u, w), 2))
                        .mul(&place(self.cleared_at(v, w), 1));
                    let rhs = place(self.cleared_at(v, w), 2)
                        .mul(&place(self.cleared_at(u, w), 1))
                        .mul(&place(self.cleared_at(u, v), 2));
                    expect_equal(&lhs, &rhs).map_err(|e| format!("(u,v,w)=({u},{v},{w}): {e}"))?;
                }
            }
        }
        Ok(())
    }

    /// `𝓡(u,v)𝓡(v,u) = I` at the given points, evaluated directly.
    pub fn unitarity_at(&self, points: &[(i64, i64)]) -> std::result::Result<(), String> {
        let nn = self.base.dim().pow(2);
        for &(a, b) in points {
            let (u, v) = (int(a), int(b));
            let prod = self
                .normalized_at(&u, &v)
                .and_then(|x| Ok(x.mul(&self.normalized_at(&v, &u)?)))
                .map_err(|e| e.to_string())?;
            expect_equal(&prod, &Matrix::identity(nn)).map_err(|w| format!("({a},{b}): {w}"))?;
        }
        Ok(())
    }

    /// Sample points for the direct unitarity check; rational ones avoid the
    /// zeros `u − v = ±1` of the normalizer.
    pub fn sample_points(&self) -> &'static [(i64, i64)] {
        match self.flavor {
            Flavor::Rational => &[(2, 5), (1, 8), (3, 11)],
            Flavor::Trigonometric => &[(2, 3), (5, 7), (3, 11)],
        }
    }

    pub fn check_suite(&self) -> Vec<CheckRecord> {
        let id = |s: &str| {
            format!("spectral.{}.{:?}.{s}", self.base.label(), self.flavor).to_lowercase()
        };
        vec![
            gating(
                &id("unitarity-points"),
                "normalized unitarity at sample points",
                || self.unitarity_at(self.sample_points()),
            ),
            gating(
                &id("unitarity-grid"),
                "unitarity certified on a degree-bound grid",
                || self.certify_unitarity(),
            ),
            gating(
                &id("braid-grid"),
                "spectral braid relation certified on a degree-bound grid",
                || self.certify_braid(),
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    #[test]
    fn rational_flip_shape() {
        let c = baxterize(&Braiding::flip(2), Flavor::Rational).unwrap();
        let m = c.at(&int(3), &int(1)).unwrap();
        let half = Scalar::rational(&BigRational::new(1.into(), 2.into()));
        let want = Braiding::flip(2)
            .matrix()
            .sub(&Matrix::scalar_identity(4, &half));
        assert_eq!(m, want);
    }

    #[test]
    fn bmw_is_rejected() {
        let r = baxterize(&Braiding::bmw_symplectic_2(), Flavor::Trigonometric);
        assert!(matches!(r, Err(Error::UnsupportedBase(_))));
        assert!(baxterize(&Braiding::flip(2), Flavor::Trigonometric).is_err());
    }

    #[test]
    fn suites_pass() {
        let a = baxterize(&Braiding::flip(3), Flavor::Rational).unwrap();
        let b = baxterize(&Braiding::standard_hecke(2), Flavor::Trigonometric).unwrap();
        for c in [a, b] {
            let recs = c.check_suite();
            assert!(all_passed(&recs), "{recs:#?}");
        }
    }

    #[test]
    fn pole_is_non_generic() {
        let c = baxterize(&Braiding::flip(2), Flavor::Rational).unwrap();
        assert!(matches!(
            c.at(&int(2), &int(2)),
            Err(Error::NonGenericPoint { .. })
        ));
        // g(u,v) = 1 − 1/(u−v) vanishes at u − v = 1
        assert!(c.normalized_at(&int(3), &int(2)).is_err());
    }

    #[test]
    fn corrupted_base_fails_grid() {
        let b = Braiding::standard_hecke(2);
        let mut m = b.matrix().clone();
        m[(1, 1)] = Scalar::q();
        let bad = Braiding::unchecked(2, m, Kind::Hecke, None, Scalar::q(), None, "bad").unwrap();
        let c = baxterize(&bad, Flavor::Trigonometric).unwrap();
        assert!(c.certify_braid().is_err());
    }
}
