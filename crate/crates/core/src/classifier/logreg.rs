//! Binary logistic regression trained by full-batch gradient descent.
//!
//! The objective is mean cross-entropy plus an L2 penalty `(l2/2)·‖w‖²`
//! on the weights (the bias is unpenalized). With L2-normalized feature
//! rows the gradient is Lipschitz with constant at most `1/4 + l2`, so the
//! default step of 0.5 decreases the loss monotonically.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::PublicationRecord;
use crate::{Scalar, Sdg};

use super::tfidf::{SparseVector, TfidfModel};
use super::TrainError;

/// Settings one ensemble was trained with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams<S> {
    pub iterations: u32,
    pub learning_rate: S,
    pub l2: S,
    pub negatives_ratio: u32,
    pub seed: u64,
}

/// Weight vector and bias of one SDG's binary model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdgWeights<S> {
    pub weights: Vec<S>,
    pub bias: S,
}

/// One-vs-rest ensemble over a shared TF-IDF space, with the decision
/// threshold used by the combination stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRegModel<S> {
    pub models: BTreeMap<Sdg, SdgWeights<S>>,
    pub hyper: Hyperparams<S>,
    pub threshold: S,
}

/// Numerically stable logistic function.
pub fn sigmoid<S: Scalar>(z: S) -> S {
    if z >= S::zero() {
        S::one() / (S::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (S::one() + e)
    }
}

/// Keep probabilities strictly inside (0, 1) at the boundary of the float
/// format, so downstream thresholding at 1.0 keeps its semantics.
fn clamp_probability<S: Scalar>(p: S) -> S {
    p.max(S::epsilon()).min(S::one() - S::epsilon())
}

/// Mean cross-entropy plus `(l2/2)·‖w‖²`, computed from logits so large
/// magnitudes cannot overflow.
pub fn logistic_loss<S: Scalar>(
    weights: &[S],
    bias: S,
    features: &[&SparseVector<S>],
    labels: &[bool],
    l2: S,
) -> S {
    let m = S::of_usize(features.len());
    let mut total = S::zero();
    for (x, &y) in features.iter().zip(labels) {
        let z = x.dot_dense(weights) + bias;
        let y_term = if y { z } else { S::zero() };
        total = total + z.max(S::zero()) - y_term + (-z.abs()).exp().ln_1p();
    }
    let penalty = weights
        .iter()
        .map(|&w| w * w)
        .fold(S::zero(), |a, b| a + b);
    total / m + l2 / S::of_f64(2.0) * penalty
}

/// Analytic gradient of [`logistic_loss`] with respect to (weights, bias).
pub fn loss_gradient<S: Scalar>(
    weights: &[S],
    bias: S,
    features: &[&SparseVector<S>],
    labels: &[bool],
    l2: S,
) -> (Vec<S>, S) {
    let m = S::of_usize(features.len());
    let mut grad_w: Vec<S> = weights.iter().map(|&w| l2 * w).collect();
    let mut grad_b = S::zero();
    for (x, &y) in features.iter().zip(labels) {
        let z = x.dot_dense(weights) + bias;
        let err = (sigmoid(z) - if y { S::one() } else { S::zero() }) / m;
        for (i, v) in x.iter() {
            grad_w[i as usize] = grad_w[i as usize] + err * v;
        }
        grad_b = grad_b + err;
    }
    (grad_w, grad_b)
}

/// Train one binary model from sparse features. `dim` is the vocabulary
/// size. Starts from zero weights; deterministic for fixed inputs.
pub fn train_binary<S: Scalar>(
    features: &[&SparseVector<S>],
    labels: &[bool],
    dim: usize,
    iterations: u32,
    learning_rate: S,
    l2: S,
) -> Result<SdgWeights<S>, TrainError> {
    if features.len() != labels.len() {
        return Err(TrainError::InvalidConfig(
            "feature and label counts differ".to_string(),
        ));
    }
    if !labels.iter().any(|&y| y) || !labels.iter().any(|&y| !y) {
        return Err(TrainError::DegenerateLabels);
    }
    let mut weights = vec![S::zero(); dim];
    let mut bias = S::zero();
    for iteration in 0..iterations {
        let (grad_w, grad_b) = loss_gradient(&weights, bias, features, labels, l2);
        for (w, g) in weights.iter_mut().zip(grad_w) {
            *w = *w - learning_rate * g;
        }
        bias = bias - learning_rate * grad_b;
        let loss = logistic_loss(&weights, bias, features, labels, l2);
        if !loss.is_finite() {
            return Err(TrainError::NonFiniteLoss { iteration });
        }
    }
    Ok(SdgWeights { weights, bias })
}

impl<S: Scalar> SdgWeights<S> {
    /// Clamped probability for one document vector.
    pub fn score(&self, x: &SparseVector<S>) -> S {
        clamp_probability(sigmoid(x.dot_dense(&self.weights) + self.bias))
    }
}

/// Per-SDG probabilities for one record; deterministic and strictly
/// inside (0, 1).
pub fn predict<S: Scalar>(
    record: &PublicationRecord,
    tfidf: &TfidfModel<S>,
    model: &LogRegModel<S>,
) -> BTreeMap<Sdg, S> {
    let x = tfidf.vectorize(record);
    model
        .models
        .iter()
        .map(|(&sdg, weights)| (sdg, weights.score(&x)))
        .collect()
}
