use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::matrix::SymMatrix;
use crate::scalar::{Rational, Scalar};

/// Which algorithm produced a [`DsMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Dense,
    Tree,
    PathClosedForm,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dense => "dense",
            Engine::Tree => "tree",
            Engine::PathClosedForm => "path-closed-form",
        })
    }
}

/// The inverse `(I + h L_G)^{-1}` together with how it was obtained.
///
/// `T = f64` is float mode, `T = Rational` exact mode.
#[derive(Debug, Clone, PartialEq)]
pub struct DsMatrix<T = f64> {
    pub h: T,
    pub engine: Engine,
    pub matrix: SymMatrix<T>,
}

impl<T: Scalar> DsMatrix<T> {
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        self.matrix.get(i, j)
    }

    pub fn mode(&self) -> &'static str {
        if T::EXACT {
            "exact"
        } else {
            "float"
        }
    }

    pub fn to_float(&self) -> DsMatrix<f64> {
        DsMatrix { h: self.h.to_f64(), engine: self.engine, matrix: self.matrix.to_f64() }
    }

    /// Smallest entry, written `omega(G)` in the literature.
    pub fn omega(&self) -> T {
        self.matrix.min_entry()
    }

    /// `{"n":, "h":, "mode":, "engine":, "rows":[[...]]}`; exact entries are
    /// `"p/q"` strings, float entries 17-significant-digit numbers.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"n\":{},\"h\":{},\"mode\":\"{}\",\"engine\":\"{}\",\"rows\":[",
            self.n(),
            self.h.json_token(),
            self.mode(),
            self.engine
        );
        for (i, row) in self.matrix.rows().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&x.json_token());
            }
            out.push(']');
        }
        out.push_str("]}\n");
        out
    }

    /// One row per matrix row, comma separated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.matrix.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.json_token().trim_matches('"').to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl DsMatrix<Rational> {
    /// Least common denominator of all entries.
    pub fn common_denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.matrix.rows().flatten().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()))
    }
}
