use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// `(B-degree, B-basis index, A-degree, A-basis index)`.
pub type Key = (usize, usize, usize, usize);

/// A normal-ordered element `Σ c · b ⊗ a` of the double, in the reduced bases
/// of the two quotient algebras. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DoubleElement {
    terms: BTreeMap<Key, Scalar>,
}

impl DoubleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term((0, 0, 0, 0), Scalar::one())
    }

    pub fn term(key: Key, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(key, &c);
        e
    }

    /// The generator `x_i`.
    pub fn b_gen(i: usize) -> Self {
        Self::term((1, i, 0, 0), Scalar::one())
    }

    /// The generator `x^j`.
    pub fn a_gen(j: usize) -> Self {
        Self::term((0, 0, 1, j), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &Key) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Key, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign_scaled(&mut self, other: &DoubleElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, &(v * c));
        }
    }

    pub fn add(&self, other: &DoubleElement) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &DoubleElement) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, c);
        out
    }

    /// Terms with A-degree zero.
    pub fn a_degree_zero(&self) -> Self {
        DoubleElement {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.2 == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((bd, bi, ad, ai), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·b[{bd}:{bi}]a[{ad}:{ai}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
