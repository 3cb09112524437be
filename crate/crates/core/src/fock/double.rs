use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::element::DoubleElement;
use crate::braiding::{Braiding, Kind, Series};
use crate::error::{Error, Result};
use crate::quadalgebra::{make_algebra, relation_projector, AlgebraKind, GradedQuotient, Word};
use crate::report::{all_passed, expect_equal, gating, CheckRecord};
use crate::scalar::Scalar;
use crate::tensor::{Matrix, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Symmetric algebras, exchange coefficient `q⁻¹`.
    Bosonic,
    /// Skew-symmetric algebras, exchange coefficient `−q`.
    Fermionic,
}

impl Flavor {
    pub fn algebra_kind(self) -> AlgebraKind {
        match self {
            Flavor::Bosonic => AlgebraKind::Sym,
            Flavor::Fermionic => AlgebraKind::Lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Hecke,
    BmwOrthogonal,
    BmwSymplectic,
}

/// A generator of the double: `x_i` (creation side) or `x^j` (annihilation side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    B(usize),
    A(usize),
}

/// `x^l` moved across a word `w` of `B`: `Σ_j hi[j] x^j + lo`.
#[derive(Debug)]
struct Moved {
    /// Coordinates in `B_{|w|}` for each trailing `x^j`.
    hi: Vec<Vec<Scalar>>,
    /// Coordinates in `B_{|w|−1}`; empty when `w` is empty.
    lo: Vec<Scalar>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Side {
    B,
    A,
}

/// Side, degrees and basis positions of a cached component product.
type ProductKey = (Side, usize, usize, usize, usize);

/// The double `B ⊗ A` with permutation rule
/// `x^l x_k = c · Σ x_i x^j X_{(l,k)}^{(i,j)} + B_k^l`, where `X` is the
/// braiding on `V*⊗V` (entries `Ψ_{jk}^{il}`) and `c = q⁻¹` (bosonic) or `−q` (fermionic).
pub struct FockDouble {
    braiding: Braiding,
    flavor: Flavor,
    family: Family,
    free_b: bool,
    b_alg: GradedQuotient,
    a_alg: GradedQuotient,
    coeff: Scalar,
    exchange: Matrix,
    pairing: Matrix,
    moves: Mutex<HashMap<(usize, Word), Arc<Moved>>>,
    sigmas: Mutex<HashMap<(Word, usize, usize), Arc<DoubleElement>>>,
    products: Mutex<HashMap<ProductKey, Arc<Vec<Scalar>>>>,
}

impl std::fmt::Debug for FockDouble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FockDouble")
            .field("braiding", &self.braiding.label())
            .field("flavor", &self.flavor)
            .field("family", &self.family)
            .field("free_b", &self.free_b)
            .finish()
    }
}

fn admissible(b: &Braiding, flavor: Flavor, family: Family) -> Result<()> {
    let ok = match family {
        Family::Hecke => matches!(b.kind(), Kind::Hecke | Kind::Involutive),
        Family::BmwOrthogonal => {
            b.kind() == Kind::Bmw
                && b.series() == Some(Series::Orthogonal)
                && flavor == Flavor::Bosonic
        }
        Family::BmwSymplectic => {
            b.kind() == Kind::Bmw
                && b.series() == Some(Series::Symplectic)
                && flavor == Flavor::Fermionic
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedDouble(format!(
            "{flavor:?} double of family {family:?} over a {:?} braiding",
            b.kind()
        )))
    }
}

/// Builds the double and runs [`FockDouble::verify_compatibility`]; any failure is an error.
pub fn make_double(
    b: &Braiding,
    flavor: Flavor,
    family: Family,
    free_b: bool,
) -> Result<FockDouble> {
    let d = FockDouble::unchecked(b, flavor, family, free_b, None)?;
    let recs = d.verify_compatibility();
    if let Some(bad) = recs.iter().find(|r| !r.passed()) {
        return Err(Error::IncompatibleDouble(format!(
            "{}: {}",
            bad.id,
            bad.witness.clone().unwrap_or_default()
        )));
    }
    Ok(d)
}

impl FockDouble {
    /// Builds the double without verifying compatibility. `exchange` overrides
    /// the permutation tensor (row `(l,k)`, column `(i,j)`), e.g. for negative controls.
    pub fn unchecked(
        b: &Braiding,
        flavor: Flavor,
        family: Family,
        free_b: bool,
        exchange: Option<Matrix>,
    ) -> Result<Self> {
        admissible(b, flavor, family)?;
        let skew = b.skew_inverse()?;
        let kind = flavor.algebra_kind();
        let b_alg = if free_b {
            GradedQuotient::free(b.dim(), Space::V)
        } else {
            make_algebra(b, kind, Space::V)?
        };
        let a_alg = make_algebra(b, kind, Space::Dual)?;
        let q = b.q();
        let coeff = match flavor {
            Flavor::Bosonic => q.inv()?,
            Flavor::Fermionic => -q,
        };
        let exchange = match exchange {
            Some(x) => x,
            None => b.extend_to_duals()?.dual_v.into_matrix(),
        };
        Ok(FockDouble {
            braiding: b.clone(),
            flavor,
            family,
            free_b,
            b_alg,
            a_alg,
            coeff,
            exchange,
            pairing: skew.b.clone(),
            moves: Mutex::new(HashMap::new()),
            sigmas: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        })
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn free_b(&self) -> bool {
        self.free_b
    }

    /// The creation-side algebra (generators `x_i`).
    pub fn b_algebra(&self) -> &GradedQuotient {
        &self.b_alg
    }

    /// The annihilation-side algebra (generators `x^j`).
    pub fn a_algebra(&self) -> &GradedQuotient {
        &self.a_alg
    }

    /// The exchange coefficient `c`.
    pub fn exchange_coefficient(&self) -> &Scalar {
        &self.coeff
    }

    /// The matrix `B` with `[k][l] = B_k^l`.
    pub fn pairing(&self) -> &Matrix {
        &self.pairing
    }

    pub fn exchange_tensor(&self) -> &Matrix {
        &self.exchange
    }

    fn n(&self) -> usize {
        self.braiding.dim()
    }

    fn alg(&self, side: Side) -> &GradedQuotient {
        match side {
            Side::B => &self.b_alg,
            Side::A => &self.a_alg,
        }
    }

    /// Product of two basis elements of one side, as coordinates.
    fn basis_product(
        &self,
        side: Side,
        d1: usize,
        i1: usize,
        d2: usize,
        i2: usize,
    ) -> Arc<Vec<Scalar>> {
        let key = (side, d1, i1, d2, i2);
        if let Some(v) = self.products.lock().expect("cache").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.alg(side).multiply_basis(d1, i1, d2, i2));
        self.products.lock().expect("cache").insert(key, v.clone());
        v
    }

    /// `x_i · v` for `v` in `B_deg`.
    fn b_left_mul(&self, i: usize, deg: usize, v: &[Scalar], out: &mut [Scalar], c: &Scalar) {
        for (s, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let f = c * x;
            for (t, e) in self.basis_product(Side::B, 1, i, deg, s).iter().enumerate() {
                if !e.is_zero() {
                    out[t] += &(&f * e);
                }
            }
        }
    }

    fn move_letter(&self, l: usize, w: &[usize]) -> Arc<Moved> {
        let key = (l, w.to_vec());
        if let Some(m) = self.moves.lock().expect("cache").get(&key) {
            return m.clone();
        }
        let n = self.n();
        let d = w.len();
        let moved = if d == 0 {
            let hi = (0..n)
                .map(|j| {
                    vec![if j == l {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }]
                })
                .collect();
            Moved { hi, lo: Vec::new() }
        } else {
            let (b1, rest) = (w[0], &w[1..]);
            let dim_d = self.b_alg.component(d).dim();
            let dim_lo = self.b_alg.component(d - 1).dim();
            let mut hi = vec![vec![Scalar::zero(); dim_d]; n];
            let mut lo = vec![Scalar::zero(); dim_lo];
            for i in 0..n {
                for j in 0..n {
                    let x = &self.exchange[(l * n + b1, i * n + j)];
                    if x.is_zero() {
                        continue;
                    }
                    let coef = &self.coeff * x;
                    let inner = self.move_letter(j, rest);
                    for (j2, v) in inner.hi.iter().enumerate() {
                        self.b_left_mul(i, d - 1, v, &mut hi[j2], &coef);
                    }
                    if d >= 2 {
                        self.b_left_mul(i, d - 2, &inner.lo, &mut lo, &coef);
                    }
                }
            }
            let pair = &self.pairing[(b1, l)];
            if !pair.is_zero() {
                for (o, e) in lo.iter_mut().zip(self.b_alg.project_word(rest)) {
                    if !e.is_zero() {
                        *o += &(pair * &e);
                    }
                }
            }
            Moved { hi, lo }
        };
        let moved = Arc::new(moved);
        self.moves.lock().expect("cache").insert(key, moved.clone());
        moved
    }

    /// The word `a` (A letters) times basis element `s` of `B_r`, normal-ordered.
    fn sigma_basis(&self, a: &[usize], r: usize, s: usize) -> Arc<DoubleElement> {
        let key = (a.to_vec(), r, s);
        if let Some(e) = self.sigmas.lock().expect("cache").get(&key) {
            return e.clone();
        }
        let out = match a.split_last() {
            None => DoubleElement::term((r, s, 0, 0), Scalar::one()),
            Some((&last, prefix)) => {
                let w = self.b_alg.component(r).basis[s].clone();
                let m = self.move_letter(last, &w);
                let mut out = DoubleElement::zero();
                for (j, v) in m.hi.iter().enumerate() {
                    let e = self.sigma_vec(prefix, r, v);
                    out = out.add(&self.right_mul_a(&e, j));
                }
                if r > 0 {
                    out = out.add(&self.sigma_vec(prefix, r - 1, &m.lo));
                }
                out
            }
        };
        let out = Arc::new(out);
        self.sigmas.lock().expect("cache").insert(key, out.clone());
        out
    }

    fn sigma_vec(&self, a: &[usize], r: usize, v: &[Scalar]) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (s, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_assign_scaled(&self.sigma_basis(a, r, s), c);
            }
        }
        out
    }

    fn right_mul_a(&self, e: &DoubleElement, j: usize) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (&(bd, bi, ad, ai), c) in e.iter() {
            for (t, x) in self.basis_product(Side::A, ad, ai, 1, j).iter().enumerate() {
                if !x.is_zero() {
                    out.add_term((bd, bi, ad + 1, t), &(c * x));
                }
            }
        }
        out
    }

    /// Product in the double: `(b₁⊗a₁)(b₂⊗a₂) = b₁ · σ(a₁⊗b₂) · a₂`.
    pub fn mul(&self, x: &DoubleElement, y: &DoubleElement) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (&(b1d, b1i, a1d, a1i), c1) in x.iter() {
            let a_word = self.a_alg.component(a1d).basis[a1i].clone();
            for (&(b2d, b2i, a2d, a2i), c2) in y.iter() {
                let c12 = c1 * c2;
                let s = self.sigma_basis(&a_word, b2d, b2i);
                for (&(bd, bi, ad, ai), c3) in s.iter() {
                    let c123 = &c12 * c3;
                    let bb = self.basis_product(Side::B, b1d, b1i, bd, bi);
                    let aa = self.basis_product(Side::A, ad, ai, a2d, a2i);
                    for (t, xb) in bb.iter().enumerate() {
                        if xb.is_zero() {
                            continue;
                        }
                        let cb = &c123 * xb;
                        for (u, xa) in aa.iter().enumerate() {
                            if !xa.is_zero() {
                                out.add_term((b1d + bd, t, ad + a2d, u), &(&cb * xa));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn generator(&self, g: Gen) -> DoubleElement {
        match g {
            Gen::B(i) => DoubleElement::b_gen(i),
            Gen::A(j) => DoubleElement::a_gen(j),
        }
    }

    /// Normal form of a product of generators (left fold).
    pub fn normal_order(&self, word: &[Gen]) -> DoubleElement {
        word.iter().fold(DoubleElement::one(), |acc, &g| {
            self.mul(&acc, &self.generator(g))
        })
    }

    /// Normal form of a product of generators (right fold).
    pub fn normal_order_right(&self, word: &[Gen]) -> DoubleElement {
        word.iter().rev().fold(DoubleElement::one(), |acc, &g| {
            self.mul(&self.generator(g), &acc)
        })
    }

    /// Normal form computed by rewriting free words with the permutation rule,
    /// leftmost pattern first, and projecting into the quotients only at the end.
    pub fn normal_order_free(&self, word: &[Gen]) -> DoubleElement {
        let n = self.n();
        let mut pending: Vec<(Vec<Gen>, Scalar)> = vec![(word.to_vec(), Scalar::one())];
        let mut done: HashMap<Vec<Gen>, Scalar> = HashMap::new();
        while let Some((w, c)) = pending.pop() {
            let Some(p) = w
                .windows(2)
                .position(|g| matches!(g, [Gen::A(_), Gen::B(_)]))
            else {
                *done.entry(w).or_insert_with(Scalar::zero) += &c;
                continue;
            };
            let (Gen::A(l), Gen::B(k)) = (w[p], w[p + 1]) else {
                unreachable!()
            };
            for i in 0..n {
                for j in 0..n {
                    let x = &self.exchange[(l * n + k, i * n + j)];
                    if x.is_zero() {
                        continue;
                    }
                    let mut v = w[..p].to_vec();
                    v.extend([Gen::B(i), Gen::A(j)]);
                    v.extend_from_slice(&w[p + 2..]);
                    pending.push((v, &(&c * &self.coeff) * x));
                }
            }
            let pair = &self.pairing[(k, l)];
            if !pair.is_zero() {
                let mut v = w[..p].to_vec();
                v.extend_from_slice(&w[p + 2..]);
                pending.push((v, &c * pair));
            }
        }
        let mut out = DoubleElement::zero();
        for (w, c) in done {
            if c.is_zero() {
                continue;
            }
            let bw: Vec<usize> = w
                .iter()
                .filter_map(|g| if let Gen::B(i) = g { Some(*i) } else { None })
                .collect();
            let aw: Vec<usize> = w
                .iter()
                .filter_map(|g| if let Gen::A(j) = g { Some(*j) } else { None })
                .collect();
            let bv = self.b_alg.project_word(&bw);
            let av = self.a_alg.project_word(&aw);
            for (t, xb) in bv.iter().enumerate() {
                if xb.is_zero() {
                    continue;
                }
                for (u, xa) in av.iter().enumerate() {
                    if !xa.is_zero() {
                        out.add_term((bw.len(), t, aw.len(), u), &(&(&c * xb) * xa));
                    }
                }
            }
        }
        out
    }

    /// `a ▷ v`: the part of `a · v` with no annihilation generators left.
    pub fn act(&self, a: &DoubleElement, v: &DoubleElement) -> DoubleElement {
        self.mul(a, v).a_degree_zero()
    }

    /// Closed matrix identities expressing that moving an annihilator across a
    /// relation (in either algebra) lands back in the relation ideal, and that
    /// the degree-lowering terms vanish on relations.
    pub fn matrix_compatibility(&self) -> Vec<CheckRecord> {
        let n = self.n();
        let id_n = Matrix::identity(n);
        let d = &self.exchange;
        let c = &self.coeff;
        let beta = Matrix::from_fn(n * n, 1, |row, _| self.pairing[(row % n, row / n)].clone());
        let kind = self.flavor.algebra_kind();
        let prefix = self.id_prefix();
        let mut out = Vec::new();
        if !self.free_b {
            out.push(gating(
                &format!("{prefix}.matrix-b"),
                "annihilator moved across creation relations",
                || {
                    let pi = relation_projector(&self.braiding, kind, Space::V)
                        .map_err(|e| e.to_string())?;
                    let x = id_n.kron(&pi).mul(&d.kron(&id_n)).mul(&id_n.kron(d));
                    expect_equal(&x.mul(&pi.kron(&id_n)), &x)
                        .map_err(|w| format!("degree 2: {w}"))?;
                    let e1 = d.kron(&id_n).mul(&id_n.kron(&beta)).scale(c);
                    let e2 = beta.kron(&id_n);
                    let low = id_n.kron(&pi).mul(&e1.add(&e2));
                    expect_equal(&low, &Matrix::zeros(n * n * n, n))
                        .map_err(|w| format!("lowering: {w}"))
                },
            ));
        }
        out.push(gating(
            &format!("{prefix}.matrix-a"),
            "annihilation relations moved across a creator",
            || {
                let pi = relation_projector(&self.braiding, kind, Space::Dual)
                    .map_err(|e| e.to_string())?;
                let y = pi.kron(&id_n).mul(&id_n.kron(d)).mul(&d.kron(&id_n));
                expect_equal(&y.mul(&id_n.kron(&pi)), &y).map_err(|w| format!("degree 2: {w}"))?;
                let e1 = id_n.kron(d).mul(&beta.kron(&id_n)).scale(c);
                let e2 = id_n.kron(&beta);
                let low = pi.kron(&id_n).mul(&e1.add(&e2));
                expect_equal(&low, &Matrix::zeros(n * n * n, n))
                    .map_err(|w| format!("lowering: {w}"))
            },
        ));
        out
    }

    /// Every mixed word of the given length, normal-ordered by left fold,
    /// right fold and free rewriting, must give one element.
    pub fn diamond_defect(&self, length: usize) -> Option<String> {
        let n = self.n();
        let gens: Vec<Gen> = (0..n).map(Gen::B).chain((0..n).map(Gen::A)).collect();
        let total = gens.len().pow(length as u32);
        for code in 0..total {
            let word: Vec<Gen> = crate::tensor::unflat(code, length, gens.len())
                .iter()
                .map(|&g| gens[g])
                .collect();
            let has_a = word.iter().any(|g| matches!(g, Gen::A(_)));
            let has_b = word.iter().any(|g| matches!(g, Gen::B(_)));
            if !(has_a && has_b) {
                continue;
            }
            let left = self.normal_order(&word);
            let right = self.normal_order_right(&word);
            if left != right {
                return Some(format!("{word:?}: left fold {left} vs right fold {right}"));
            }
            let free = self.normal_order_free(&word);
            if left != free {
                return Some(format!("{word:?}: fold {left} vs free rewriting {free}"));
            }
        }
        None
    }

    pub fn verify_compatibility(&self) -> Vec<CheckRecord> {
        let mut out = self.matrix_compatibility();
        out.push(gating(
            &format!("{}.diamond-3", self.id_prefix()),
            "rewrite order independence",
            || match self.diamond_defect(3) {
                None => Ok(()),
                Some(w) => Err(w),
            },
        ));
        out
    }

    pub fn is_compatible(&self) -> bool {
        all_passed(&self.verify_compatibility())
    }

    pub(crate) fn id_prefix(&self) -> String {
        let fam = match self.family {
            Family::Hecke => "hecke",
            Family::BmwOrthogonal => "bmw-orthogonal",
            Family::BmwSymplectic => "bmw-symplectic",
        };
        let fl = match self.flavor {
            Flavor::Bosonic => "bosonic",
            Flavor::Fermionic => "fermionic",
        };
        let free = if self.free_b { ".free-b" } else { "" };
        format!("double.{}.{fam}.{fl}{free}", self.braiding.label())
    }
}
