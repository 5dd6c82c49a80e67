//! Linear logistic head over externally supplied embedding vectors, trained
//! by seeded minibatch gradient descent, plus the embedding table format.

use std::collections::BTreeMap;
use std::path::Path;

use super::ModelParams;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::optimize::{minibatch_gd, GdParams};
use crate::scalar::Scalar;

pub(super) fn train<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    learning_rate: f64,
    epochs: usize,
    batch_size: usize,
    seed: u64,
) -> Result<ModelParams<S>> {
    let d = x.n_cols();
    let eval = |params: &[S], batch: &[usize]| {
        let w: Vec<f64> = params[..d].iter().map(|v| v.to_f64().unwrap()).collect();
        let b = params[d].to_f64().unwrap();
        let mut loss = 0.0;
        let mut grad = vec![0.0; d + 1];
        for &i in batch {
            let row = x.row(i);
            let z: f64 = row
                .iter()
                .zip(&w)
                .map(|(xi, wi)| xi.to_f64().unwrap() * wi)
                .sum::<f64>()
                + b;
            let p = if z >= 0.0 {
                1.0 / (1.0 + (-z).exp())
            } else {
                let e = z.exp();
                e / (1.0 + e)
            };
            let target = if y[i] > 0.0 { 1.0 } else { 0.0 };
            let eps = 1e-12;
            loss -= target * (p + eps).ln() + (1.0 - target) * (1.0 - p + eps).ln();
            let delta = p - target;
            for (g, xi) in grad[..d].iter_mut().zip(row) {
                *g += delta * xi.to_f64().unwrap();
            }
            grad[d] += delta;
        }
        let n = batch.len() as f64;
        (
            S::from_f64_lit(loss / n),
            grad.into_iter().map(|g| S::from_f64_lit(g / n)).collect(),
        )
    };
    let params = GdParams {
        learning_rate,
        epochs,
        batch_size,
        seed,
    };
    let result = minibatch_gd(x.n_rows(), vec![S::zero(); d + 1], eval, &params)?;
    let mut weights = result.parameters;
    let bias = weights.pop().expect("bias slot");
    Ok(ModelParams::Linear { weights, bias })
}

/// Document id → embedding vector with a uniform dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable<S> {
    dimension: usize,
    vectors: BTreeMap<String, Vec<S>>,
}

impl<S: Scalar> EmbeddingTable<S> {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&[S]> {
        self.vectors.get(id).map(Vec::as_slice)
    }

    /// Rows for the given ids, in order. Unknown ids are an error.
    pub fn rows_for(&self, ids: &[String]) -> Result<Matrix<S>> {
        let mut rows = Vec::with_capacity(ids.len());
        for id in ids {
            let v = self.get(id).ok_or_else(|| {
                Error::Validation(format!("no embedding vector for document '{id}'"))
            })?;
            rows.push(v.to_vec());
        }
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, self.dimension));
        }
        Ok(Matrix::from_rows(rows))
    }
}

/// Load an embedding table: a header line with the dimension, then one
/// `id<TAB>v1<TAB>…<TAB>vd` line per document.
pub fn load_embedding_table<S: Scalar>(path: &Path) -> Result<EmbeddingTable<S>> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_embedding_table(&content, &display)
}

pub fn parse_embedding_table<S: Scalar>(content: &str, origin: &str) -> Result<EmbeddingTable<S>> {
    let mut lines = content
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "empty embedding table"))?;
    let dimension: usize = header.trim().parse().map_err(|_| {
        Error::parse(
            origin,
            header_no + 1,
            format!("header must be the dimension, found '{header}'"),
        )
    })?;
    if dimension == 0 {
        return Err(Error::parse(origin, header_no + 1, "dimension must be positive"));
    }
    let mut vectors = BTreeMap::new();
    for (lineno, line) in lines {
        let line_no = lineno + 1;
        let mut parts = line.split('\t');
        let id = parts.next().unwrap_or("").trim();
        if id.is_empty() {
            return Err(Error::parse(origin, line_no, "empty document id"));
        }
        let values: Vec<S> = parts
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(origin, line_no, format!("bad float '{p}'")))
                    .map(S::from_f64_lit)
            })
            .collect::<Result<_>>()?;
        if values.len() != dimension {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected {dimension} values, found {}", values.len()),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(format!(
                "non-finite embedding value for document '{id}'"
            )));
        }
        if vectors.insert(id.to_string(), values).is_some() {
            return Err(Error::parse(origin, line_no, format!("duplicate id '{id}'")));
        }
    }
    Ok(EmbeddingTable { dimension, vectors })
}

/// Serialize a table in the documented format.
pub fn embedding_table_to_string<S: Scalar>(table: &EmbeddingTable<S>) -> String {
    let mut out = format!("{}\n", table.dimension);
    for (id, v) in &table.vectors {
        out.push_str(id);
        for x in v {
            out.push('\t');
            out.push_str(&format!("{x}"));
        }
        out.push('\n');
    }
    out
}
