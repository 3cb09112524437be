//! JSON braiding tables: 1-based entries `R_{ij}^{kl}`, omitted entries zero.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Braiding, Kind, Series};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::Matrix;

pub const TABLE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidingTable {
    pub format_version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Numeric deformation parameter of a specialized braiding; symbolic `q` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Scalar>,
    pub entries: Vec<TableEntry>,
}

impl BraidingTable {
    fn matrix(&self) -> Result<Matrix> {
        let n = self.n;
        let mut m = Matrix::zeros(n * n, n * n);
        let mut seen = BTreeSet::new();
        for e in &self.entries {
            let idx = [e.i, e.j, e.k, e.l];
            if idx.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::InvalidTable(format!(
                    "index out of 1..={n} in entry {idx:?}"
                )));
            }
            if !seen.insert(idx) {
                return Err(Error::InvalidTable(format!("duplicate entry {idx:?}")));
            }
            m[((e.i - 1) * n + e.j - 1, (e.k - 1) * n + e.l - 1)] = e.value.clone();
        }
        Ok(m)
    }
}

impl Braiding {
    /// Validates a table: μ against the series, then the braid relation, the
    /// minimal polynomial and strict skew-invertibility.
    pub fn from_table(t: &BraidingTable) -> Result<Self> {
        if t.format_version != TABLE_FORMAT_VERSION {
            return Err(Error::InvalidTable(format!(
                "unsupported format_version {}",
                t.format_version
            )));
        }
        if t.n == 0 {
            return Err(Error::InvalidTable("N must be positive".into()));
        }
        let mat = t.matrix()?;
        let q = match (t.kind, &t.q) {
            (Kind::Involutive, _) => Scalar::one(),
            (_, Some(q0)) if q0.as_rational().is_none() || q0.is_zero() => {
                return Err(Error::InvalidTable(format!(
                    "q must be a non-zero rational, got {q0}"
                )));
            }
            (_, Some(q0)) => q0.clone(),
            (_, None) => Scalar::q(),
        };
        if t.kind == Kind::Bmw {
            let series = t
                .series
                .ok_or_else(|| Error::InvalidTable("bmw table needs a series".into()))?;
            let mu =
                t.mu.as_ref()
                    .ok_or_else(|| Error::InvalidTable("bmw table needs mu".into()))?;
            let expected = series.expected_mu_at(t.n, &q);
            if *mu != expected {
                return Err(Error::InconsistentMu {
                    declared: mu.to_string(),
                    expected: expected.to_string(),
                });
            }
        } else if t.series.is_some() || t.mu.is_some() {
            return Err(Error::InvalidTable(
                "series and mu apply to bmw tables only".into(),
            ));
        }
        let label = t
            .label
            .clone()
            .unwrap_or_else(|| format!("table-{:?}-{}", t.kind, t.n).to_lowercase());
        let b = Braiding::new(t.n, mat, t.kind, t.series, q, t.mu.clone(), label)?;
        b.skew_inverse()
            .map_err(|e| Error::InvalidTable(e.to_string()))?;
        Ok(b)
    }

    pub fn to_table(&self) -> BraidingTable {
        let n = self.dim();
        let mut entries = Vec::new();
        for row in 0..n * n {
            for col in 0..n * n {
                let v = &self.matrix()[(row, col)];
                if !v.is_zero() {
                    entries.push(TableEntry {
                        i: row / n + 1,
                        j: row % n + 1,
                        k: col / n + 1,
                        l: col % n + 1,
                        value: v.clone(),
                    });
                }
            }
        }
        BraidingTable {
            format_version: TABLE_FORMAT_VERSION,
            n,
            kind: self.kind(),
            series: self.series(),
            mu: self.mu().cloned(),
            label: Some(self.label().to_string()),
            q: match self.kind() {
                Kind::Involutive => None,
                _ => self.q().as_rational().map(|r| Scalar::rational(&r)),
            },
            entries,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: BraidingTable = serde_json::from_str(s).map_err(|e| {
            Error::InvalidTable(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_table(&t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_table()).expect("tables serialize")
    }

    pub fn load_table(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        Self::from_json(&s).map_err(|e| match e {
            Error::InvalidTable(m) => Error::InvalidTable(format!("{}: {m}", path.display())),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_load() {
        let o = Braiding::bmw_orthogonal_3();
        assert_eq!(o.mu(), Some(&Scalar::q_pow(-2)));
        let s = Braiding::bmw_symplectic_2();
        assert_eq!(s.mu(), Some(&-Scalar::q_pow(-3)));
    }

    #[test]
    fn orthogonal_mu_projector_is_a_line() {
        let o = Braiding::bmw_orthogonal_3();
        let p = o.projectors().unwrap();
        assert_eq!(p.get(&Scalar::q_pow(-2)).unwrap().rank(), 1);
    }

    #[test]
    fn shipped_tables_pass_full_suite() {
        for b in [Braiding::bmw_orthogonal_3(), Braiding::bmw_symplectic_2()] {
            let recs = b.check_suite();
            assert!(crate::report::all_passed(&recs), "{recs:#?}");
        }
    }

    #[test]
    fn roundtrip() {
        let b = Braiding::standard_hecke(2);
        let back = Braiding::from_json(&b.to_json()).unwrap();
        assert_eq!(back.matrix(), b.matrix());
    }

    #[test]
    fn wrong_mu_is_inconsistent() {
        let mut t = Braiding::bmw_symplectic_2().to_table();
        t.mu = Some(Scalar::q_pow(-3));
        assert!(matches!(
            Braiding::from_table(&t),
            Err(Error::InconsistentMu { .. })
        ));
    }

    #[test]
    fn corrupted_entry_is_invalid() {
        let mut t = Braiding::bmw_orthogonal_3().to_table();
        t.entries[1].value = Scalar::int(7);
        assert!(matches!(
            Braiding::from_table(&t),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn shipped_hecke_tables_match_generator() {
        for (n, text) in [
            (2, include_str!("../../tables/std-hecke-2.json")),
            (3, include_str!("../../tables/std-hecke-3.json")),
        ] {
            let b = Braiding::from_json(text).unwrap();
            assert_eq!(b.matrix(), Braiding::standard_hecke(n).matrix());
        }
    }

    #[test]
    fn out_of_range_index() {
        let mut t = Braiding::flip(2).to_table();
        t.entries[0].k = 3;
        assert!(matches!(
            Braiding::from_table(&t),
            Err(Error::InvalidTable(_))
        ));
    }
}
