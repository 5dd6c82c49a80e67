//! CART decision tree with Gini impurity.
//!
//! Deterministic: the best split maximizes Gini gain with ties broken by
//! lowest feature index, then lowest threshold. Trees consume raw
//! (unstandardized) features.

use serde::{Deserialize, Serialize};

use super::ModelParams;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Arena node; `usize` indices point into the node vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode<S> {
    Split {
        feature: usize,
        threshold: S,
        left: usize,
        right: usize,
    },
    Leaf {
        /// Fraction of positive-class (pro-Kremlin) rows in the leaf.
        score: S,
    },
}

fn gini(pos: usize, total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let p = pos as f64 / total as f64;
    2.0 * p * (1.0 - p)
}

struct SplitChoice {
    feature: usize,
    threshold: f64,
    gain: f64,
}

/// Best split of the rows in `indices`, or `None` when nothing improves.
fn best_split<S: Scalar>(x: &Matrix<S>, y: &[f64], indices: &[usize]) -> Option<SplitChoice> {
    let total = indices.len();
    let pos_total = indices.iter().filter(|&&i| y[i] > 0.0).count();
    let parent = gini(pos_total, total);
    let mut best: Option<SplitChoice> = None;
    for feature in 0..x.n_cols() {
        let mut values: Vec<(f64, bool)> = indices
            .iter()
            .map(|&i| (x.get(i, feature).to_f64().unwrap(), y[i] > 0.0))
            .collect();
        values.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite features"));
        let mut left_n = 0usize;
        let mut left_pos = 0usize;
        for k in 0..total - 1 {
            left_n += 1;
            if values[k].1 {
                left_pos += 1;
            }
            if values[k].0 == values[k + 1].0 {
                continue;
            }
            let right_n = total - left_n;
            let right_pos = pos_total - left_pos;
            let weighted = (left_n as f64 * gini(left_pos, left_n)
                + right_n as f64 * gini(right_pos, right_n))
                / total as f64;
            let gain = parent - weighted;
            let threshold = (values[k].0 + values[k + 1].0) / 2.0;
            let better = match &best {
                None => gain > 1e-15,
                Some(b) => {
                    gain > b.gain + 1e-15
                        || ((gain - b.gain).abs() <= 1e-15
                            && (feature < b.feature
                                || (feature == b.feature && threshold < b.threshold)))
                }
            };
            if better {
                best = Some(SplitChoice {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

fn grow<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    indices: Vec<usize>,
    depth: usize,
    max_depth: Option<usize>,
    min_split: usize,
    nodes: &mut Vec<TreeNode<S>>,
) -> usize {
    let pos = indices.iter().filter(|&&i| y[i] > 0.0).count();
    let total = indices.len();
    let make_leaf = |nodes: &mut Vec<TreeNode<S>>| {
        nodes.push(TreeNode::Leaf {
            score: S::from_f64_lit(pos as f64 / total as f64),
        });
        nodes.len() - 1
    };
    if pos == 0 || pos == total || total < min_split {
        return make_leaf(nodes);
    }
    if let Some(limit) = max_depth {
        if depth >= limit {
            return make_leaf(nodes);
        }
    }
    let Some(split) = best_split(x, y, &indices) else {
        return make_leaf(nodes);
    };
    let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
        .into_iter()
        .partition(|&i| x.get(i, split.feature).to_f64().unwrap() <= split.threshold);
    debug_assert!(!left_idx.is_empty() && !right_idx.is_empty());
    // Reserve this node's slot before growing children.
    nodes.push(TreeNode::Leaf { score: S::zero() });
    let me = nodes.len() - 1;
    let left = grow(x, y, left_idx, depth + 1, max_depth, min_split, nodes);
    let right = grow(x, y, right_idx, depth + 1, max_depth, min_split, nodes);
    nodes[me] = TreeNode::Split {
        feature: split.feature,
        threshold: S::from_f64_lit(split.threshold),
        left,
        right,
    };
    me
}

pub(super) fn train<S: Scalar>(
    x: &Matrix<S>,
    y: &[f64],
    max_depth: Option<usize>,
    min_split: usize,
) -> Result<ModelParams<S>> {
    if min_split < 2 {
        return Err(Error::Training("min_split must be at least 2".into()));
    }
    let mut nodes = Vec::new();
    let root = grow(
        x,
        y,
        (0..x.n_rows()).collect(),
        0,
        max_depth,
        min_split,
        &mut nodes,
    );
    debug_assert_eq!(root, 0);
    Ok(ModelParams::Tree { nodes })
}

pub(super) fn scores<S: Scalar>(nodes: &[TreeNode<S>], x: &Matrix<S>) -> Vec<S> {
    (0..x.n_rows())
        .map(|i| {
            let row = x.row(i);
            let mut at = 0usize;
            loop {
                match &nodes[at] {
                    TreeNode::Leaf { score } => return *score,
                    TreeNode::Split {
                        feature,
                        threshold,
                        left,
                        right,
                    } => {
                        at = if row[*feature] <= *threshold { *left } else { *right };
                    }
                }
            }
        })
        .collect()
}

/// Depth of the tree (a lone leaf has depth 0).
pub fn tree_depth<S>(nodes: &[TreeNode<S>]) -> usize {
    fn walk<S>(nodes: &[TreeNode<S>], at: usize) -> usize {
        match &nodes[at] {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
        }
    }
    if nodes.is_empty() {
        0
    } else {
        walk(nodes, 0)
    }
}
