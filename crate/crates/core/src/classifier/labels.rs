//! Weak-supervision training sets derived from query-bank output.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Corpus;
use crate::engine::{Provenance, SdgMapping};
use crate::Sdg;

use super::TrainError;

/// Labeled document indices for one SDG: positives are the query hits,
/// negatives a seeded uniform sample of unassigned records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdgTrainingSet {
    pub sdg: Sdg,
    pub positives: Vec<u32>,
    pub negatives: Vec<u32>,
}

/// Per-SDG training sets plus the SDGs skipped for lack of positives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingSets {
    pub sets: Vec<SdgTrainingSet>,
    pub skipped: Vec<Sdg>,
}

/// Partial Fisher–Yates: the first `n` elements end up a uniform sample
/// without replacement, in shuffled order.
pub(crate) fn sample_without_replacement<T, R: Rng>(rng: &mut R, mut pool: Vec<T>, n: usize) -> Vec<T> {
    let n = n.min(pool.len());
    for i in 0..n {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(n);
    pool
}

/// Build one training set per SDG with query-provenance positives.
///
/// Negatives are drawn uniformly (seeded, one independent stream per SDG)
/// from records carrying no assignment for that SDG, capped at
/// `ratio × |positives|`. SDGs without positives are skipped and reported.
pub fn build_training_set(
    mapping: &SdgMapping,
    corpus: &Corpus,
    ratio: u32,
    seed: u64,
) -> Result<TrainingSets, TrainError> {
    if ratio == 0 {
        return Err(TrainError::InvalidConfig(
            "negatives-per-positive ratio must be at least 1".to_string(),
        ));
    }
    let mut sets = Vec::new();
    let mut skipped = Vec::new();
    for sdg in Sdg::all() {
        let mut positives = Vec::new();
        let mut candidates = Vec::new();
        for (doc, record) in corpus.iter().enumerate() {
            let doc = doc as u32;
            match mapping.get(&record.id).and_then(|m| m.get(&sdg)) {
                Some(Provenance::Query) => positives.push(doc),
                Some(Provenance::Ml) => {}
                None => candidates.push(doc),
            }
        }
        if positives.is_empty() {
            skipped.push(sdg);
            continue;
        }
        let want = (ratio as usize).saturating_mul(positives.len());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sdg.get() as u64);
        let mut negatives = sample_without_replacement(&mut rng, candidates, want);
        negatives.sort_unstable();
        sets.push(SdgTrainingSet {
            sdg,
            positives,
            negatives,
        });
    }
    Ok(TrainingSets { sets, skipped })
}
