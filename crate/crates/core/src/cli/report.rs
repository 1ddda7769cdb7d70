//! Reports and their JSON / text renderings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::linalg::{CMatrix, CVector};
use crate::relation::LinearRelation;
use crate::subspace::{Coset, Subspace};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NoSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub tolerance: Tolerance,
    pub results: Value,
    pub diagnostics: Value,
}

impl Report {
    /// JSON with keys in sorted order, so output is byte-stable.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        let status = serde_json::to_value(self.status).expect("status serializes");
        out.push_str(&format!(
            "status: {}\n",
            status.as_str().unwrap_or_default()
        ));
        out.push_str(&format!(
            "tolerance: abs_eps={:e} rel_eps={:e} cmp_eps={:e}\n",
            self.tolerance.abs_eps, self.tolerance.rel_eps, self.tolerance.cmp_eps
        ));
        for (label, value) in [
            ("results", &self.results),
            ("diagnostics", &self.diagnostics),
        ] {
            if value.as_object().is_some_and(|m| !m.is_empty()) {
                out.push_str(&format!("{label}:\n"));
                text_object(value.as_object().unwrap(), 1, &mut out);
            }
        }
        out
    }
}

/// Rounds to ten significant digits and snaps values below `1e-10` to zero,
/// so reports do not carry rounding noise.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-10 {
        return 0.0;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

pub fn real(x: f64) -> Value {
    json!(round(x))
}

pub fn complex(z: Complex64) -> Value {
    json!([round(z.re), round(z.im)])
}

pub fn vector(v: &CVector) -> Value {
    Value::Array(v.iter().map(|z| complex(*z)).collect())
}

pub fn matrix(m: &CMatrix) -> Value {
    Value::Array(
        m.row_iter()
            .map(|row| Value::Array(row.iter().map(|z| complex(*z)).collect()))
            .collect(),
    )
}

/// Reduced row echelon basis: unique for a given subspace, which keeps the
/// output independent of how the subspace was computed.
pub fn canonical_basis(s: &Subspace) -> Vec<CVector> {
    let mut rows = s.basis().transpose();
    let (k, n) = rows.shape();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == k {
            break;
        }
        let (best, size) =
            (pivot_row..k)
                .map(|i| (i, rows[(i, col)].norm()))
                .fold(
                    (pivot_row, -1.0),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
        if size < 1e-8 {
            continue;
        }
        rows.swap_rows(best, pivot_row);
        let lead = rows[(pivot_row, col)];
        for j in 0..n {
            rows[(pivot_row, j)] /= lead;
        }
        for i in 0..k {
            if i != pivot_row {
                let factor = rows[(i, col)];
                for j in 0..n {
                    let delta = factor * rows[(pivot_row, j)];
                    rows[(i, j)] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    rows.row_iter().map(|r| r.transpose()).collect()
}

pub fn subspace(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "basis": canonical_basis(s).iter().map(vector).collect::<Vec<_>>(),
    })
}

pub fn coset(c: &Coset) -> Value {
    match c {
        Coset::Empty { .. } => json!({ "empty": true }),
        Coset::Affine { point, direction } => json!({
            "empty": false,
            "point": vector(point),
            "directions": canonical_basis(direction).iter().map(vector).collect::<Vec<_>>(),
        }),
    }
}

/// A relation as the list of pairs spanning its graph, the same shape the
/// problem files accept.
pub fn relation(r: &LinearRelation, tol: &Tolerance) -> Value {
    let (n, m) = (r.dim_in(), r.dim_out());
    let pairs: Vec<Value> = canonical_basis(r.graph())
        .iter()
        .map(|v| {
            json!([
                vector(&v.rows(0, n).into_owned()),
                vector(&v.rows(n, m).into_owned())
            ])
        })
        .collect();
    json!({
        "dim_in": n,
        "dim_out": m,
        "is_operator": r.is_operator(tol),
        "pairs": pairs,
    })
}

fn as_complex(v: &Value) -> Option<(f64, f64)> {
    match v.as_array()?.as_slice() {
        [re, im] => Some((re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

fn complex_text(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if re == 0.0 {
        format!("{im}i")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// Renders a vector of complex pairs as `(a, b, ...)`.
fn vector_text(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    if items.is_empty() {
        return None;
    }
    let parts: Option<Vec<String>> = items
        .iter()
        .map(|z| as_complex(z).map(|(re, im)| complex_text(re, im)))
        .collect();
    parts.map(|p| format!("({})", p.join(", ")))
}

fn inline_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(x) => Some(x.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(_) => vector_text(v),
        Value::Object(_) => None,
    }
}

fn text_object(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (key, value) in map {
        if let Some(line) = inline_text(value) {
            out.push_str(&format!("{pad}{key}: {line}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{key}:\n"));
        text_value(value, depth + 1, out);
    }
}

fn text_value(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => text_object(map, depth, out),
        Value::Array(items) => {
            for item in items {
                match inline_text(item) {
                    Some(line) => out.push_str(&format!("{pad}- {line}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text_value(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!(
            "{pad}{}\n",
            inline_text(other).unwrap_or_default()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;

    #[test]
    fn canonical_basis_is_echelon() {
        let t = Tolerance::default();
        let s = Subspace::from_columns(&real_matrix(3, 2, &[1.0, 1.0, 1.0, -1.0, 0.0, 2.0]), &t);
        let basis = canonical_basis(&s);
        assert_eq!(basis.len(), 2);
        assert!((basis[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(basis[0][1].norm() < 1e-12);
        assert!((basis[1][1] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rounding_snaps_noise() {
        assert_eq!(round(3e-13), 0.0);
        assert_eq!(round(-0.0), 0.0);
        assert_eq!(round(0.1 + 0.2), 0.3);
    }

    #[test]
    fn report_round_trips() {
        let r = Report {
            command: "smooth".into(),
            status: Status::NoSolution,
            tolerance: Tolerance::default(),
            results: json!({"min_value": 0.5, "point": [[1.0, 0.0]]}),
            diagnostics: json!({}),
        };
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}
