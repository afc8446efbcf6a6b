//! Mini-batch planning and online selection of in-batch negatives and
//! positives.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::ConstraintSet;
use crate::embedding::EmbeddingStore;
use crate::error::{Error, Result};

/// Relation stream a mini-batch is drawn from. The declaration order is the
/// round-robin order used by [`plan_epoch`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BatchRelation {
    Synonym,
    Antonym,
    Hypernym,
    Quadruplet,
    /// Hyponym-hypernym pairs trained only with the asymmetric norm term.
    Direction,
}

impl BatchRelation {
    pub const ALL: [BatchRelation; 5] = [
        BatchRelation::Synonym,
        BatchRelation::Antonym,
        BatchRelation::Hypernym,
        BatchRelation::Quadruplet,
        BatchRelation::Direction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BatchRelation::Synonym => "syn",
            BatchRelation::Antonym => "ant",
            BatchRelation::Hypernym => "hyper",
            BatchRelation::Quadruplet => "quad",
            BatchRelation::Direction => "direction",
        }
    }
}

impl fmt::Display for BatchRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single constraint instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instance {
    Pair(usize, usize),
    Quad {
        anchor: usize,
        synonym: usize,
        hypernym: usize,
    },
}

impl Instance {
    pub fn rows(&self) -> Vec<usize> {
        match *self {
            Instance::Pair(a, b) => vec![a, b],
            Instance::Quad {
                anchor,
                synonym,
                hypernym,
            } => vec![anchor, synonym, hypernym],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiniBatch {
    pub relation: BatchRelation,
    pub items: Vec<Instance>,
    pub epoch: usize,
    pub batch_index: usize,
}

impl MiniBatch {
    /// Distinct rows across all items, ascending.
    pub fn rows(&self) -> BTreeSet<usize> {
        self.items.iter().flat_map(Instance::rows).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NegativePolicy {
    /// The closest candidate plus uniformly random ones.
    ClosestPlusRandom,
    ClosestOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxKind {
    NegativeClosest,
    NegativeRandom,
    PositiveFarthest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuxSample {
    pub row: usize,
    pub kind: AuxKind,
}

/// An anchor with its constraint partner and the in-batch samples chosen for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledTriplet {
    pub anchor: usize,
    pub partner: usize,
    /// Set for quadruplet instances.
    pub hypernym: Option<usize>,
    pub aux: Vec<AuxSample>,
}

impl SampledTriplet {
    pub fn aux_rows(&self) -> Vec<usize> {
        self.aux.iter().map(|s| s.row).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NegativeClass {
    Hard,
    SemiHard,
    Easy,
}

pub(crate) fn stream_rng(seed: u64, epoch: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((epoch as u64) << 8) | stream);
    rng
}

/// Shuffles every relation's instances, chunks them into batches of at most
/// `batch_size` and interleaves the relations round-robin.
pub fn plan_epoch(
    instances: &[(BatchRelation, Vec<Instance>)],
    batch_size: usize,
    seed: u64,
    epoch: usize,
) -> Result<Vec<MiniBatch>> {
    if batch_size == 0 {
        return Err(Error::Config("batch size must be at least 1".into()));
    }
    let mut sorted: Vec<&(BatchRelation, Vec<Instance>)> = instances.iter().filter(|(_, v)| !v.is_empty()).collect();
    if sorted.is_empty() {
        return Err(Error::Empty("no constraint instances to plan".into()));
    }
    sorted.sort_by_key(|(rel, _)| *rel);

    let mut queues: Vec<std::vec::IntoIter<Vec<Instance>>> = Vec::new();
    let mut relations = Vec::new();
    for (rel, items) in sorted {
        let mut items = items.clone();
        let mut rng = stream_rng(seed, epoch, *rel as u64);
        items.shuffle(&mut rng);
        let chunks: Vec<Vec<Instance>> = items.chunks(batch_size).map(<[Instance]>::to_vec).collect();
        queues.push(chunks.into_iter());
        relations.push(*rel);
    }

    let mut plan = Vec::new();
    loop {
        let mut any = false;
        for (queue, &relation) in queues.iter_mut().zip(&relations) {
            if let Some(items) = queue.next() {
                any = true;
                plan.push(MiniBatch {
                    relation,
                    items,
                    epoch,
                    batch_index: plan.len(),
                });
            }
        }
        if !any {
            break;
        }
    }
    Ok(plan)
}

fn candidate_pool(batch: &MiniBatch, item: usize, anchor: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let own: BTreeSet<usize> = batch
        .items
        .get(item)
        .map(Instance::rows)
        .unwrap_or_default()
        .into_iter()
        .collect();
    let pool: BTreeSet<usize> = batch
        .items
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != item)
        .flat_map(|(_, inst)| inst.rows())
        .filter(|r| *r != anchor && !own.contains(r) && keep(*r))
        .collect();
    pool.into_iter().collect()
}

/// Index of the best candidate under `better`, ties to the lower row.
fn pick_extreme(store: &EmbeddingStore, anchor: usize, pool: &[usize], farthest: bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &row) in pool.iter().enumerate() {
        let d = store.distance(anchor, row);
        let better = match best {
            None => true,
            Some((_, bd)) if farthest => d > bd,
            Some((_, bd)) => d < bd,
        };
        if better {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// In-batch negatives for the anchor of `batch.items[item]`.
///
/// Candidates come from the other items of the batch, excluding the anchor's
/// own instance and any row that is a synonym or taxonomic relative of the
/// anchor. Distances are read from the current space.
#[allow(clippy::too_many_arguments)]
pub fn select_negatives<R: Rng>(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    batch: &MiniBatch,
    item: usize,
    anchor: usize,
    policy: NegativePolicy,
    k: usize,
    rng: &mut R,
) -> Vec<AuxSample> {
    if k == 0 {
        return Vec::new();
    }
    let mut pool = candidate_pool(batch, item, anchor, |r| !constraints.is_positive_for(anchor, r));
    let mut out = Vec::new();
    match policy {
        NegativePolicy::ClosestOnly => {
            while out.len() < k {
                let Some(i) = pick_extreme(store, anchor, &pool, false) else {
                    break;
                };
                out.push(AuxSample {
                    row: pool.remove(i),
                    kind: AuxKind::NegativeClosest,
                });
            }
        }
        NegativePolicy::ClosestPlusRandom => {
            if let Some(i) = pick_extreme(store, anchor, &pool, false) {
                out.push(AuxSample {
                    row: pool.remove(i),
                    kind: AuxKind::NegativeClosest,
                });
            }
            let extra = (k - out.len().min(k)).min(pool.len());
            let picks: Vec<usize> = pool.choose_multiple(rng, extra).copied().collect();
            out.extend(picks.into_iter().map(|row| AuxSample {
                row,
                kind: AuxKind::NegativeRandom,
            }));
        }
    }
    out
}

/// In-batch positives (farthest rows) for the anchor of an antonym item,
/// excluding the anchor's antonyms.
pub fn select_positives(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    batch: &MiniBatch,
    item: usize,
    anchor: usize,
    k: usize,
) -> Vec<AuxSample> {
    let mut pool = candidate_pool(batch, item, anchor, |r| !constraints.is_antonym(anchor, r));
    let mut out = Vec::new();
    while out.len() < k {
        let Some(i) = pick_extreme(store, anchor, &pool, true) else {
            break;
        };
        out.push(AuxSample {
            row: pool.remove(i),
            kind: AuxKind::PositiveFarthest,
        });
    }
    out
}

/// Places `candidate` relative to the positive's distance and the margin band.
pub fn classify_negative(
    store: &EmbeddingStore,
    anchor: usize,
    positive: usize,
    candidate: usize,
    margin: f64,
) -> NegativeClass {
    classify_distances(
        store.distance(anchor, positive),
        store.distance(anchor, candidate),
        margin,
    )
}

pub fn classify_distances(positive: f64, candidate: f64, margin: f64) -> NegativeClass {
    if candidate < positive {
        NegativeClass::Hard
    } else if candidate <= margin + positive {
        NegativeClass::SemiHard
    } else {
        NegativeClass::Easy
    }
}

/// Expands a batch into anchored samples. Symmetric relations are mirrored so
/// both members of a pair act as anchor.
pub fn sample_batch<R: Rng>(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    batch: &MiniBatch,
    policy: NegativePolicy,
    k: usize,
    rng: &mut R,
) -> Vec<SampledTriplet> {
    let mut out = Vec::new();
    for (item, inst) in batch.items.iter().enumerate() {
        match (batch.relation, *inst) {
            (BatchRelation::Synonym, Instance::Pair(a, b)) => {
                for (anchor, partner) in [(a, b), (b, a)] {
                    let aux = select_negatives(store, constraints, batch, item, anchor, policy, k, rng);
                    out.push(SampledTriplet {
                        anchor,
                        partner,
                        hypernym: None,
                        aux,
                    });
                }
            }
            (BatchRelation::Antonym, Instance::Pair(a, b)) => {
                for (anchor, partner) in [(a, b), (b, a)] {
                    let aux = select_positives(store, constraints, batch, item, anchor, k);
                    out.push(SampledTriplet {
                        anchor,
                        partner,
                        hypernym: None,
                        aux,
                    });
                }
            }
            (BatchRelation::Hypernym, Instance::Pair(hypo, hyper)) => {
                let aux = select_negatives(store, constraints, batch, item, hypo, policy, k, rng);
                out.push(SampledTriplet {
                    anchor: hypo,
                    partner: hyper,
                    hypernym: None,
                    aux,
                });
            }
            (
                BatchRelation::Quadruplet,
                Instance::Quad {
                    anchor,
                    synonym,
                    hypernym,
                },
            ) => {
                let aux = select_negatives(store, constraints, batch, item, anchor, policy, k, rng);
                out.push(SampledTriplet {
                    anchor,
                    partner: synonym,
                    hypernym: Some(hypernym),
                    aux,
                });
            }
            (BatchRelation::Direction, Instance::Pair(hypo, hyper)) => out.push(SampledTriplet {
                anchor: hypo,
                partner: hyper,
                hypernym: None,
                aux: Vec::new(),
            }),
            (rel, inst) => unreachable!("instance {inst:?} in {rel} batch"),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::PairRelation;

    fn pairs(n: usize) -> Vec<Instance> {
        (0..n).map(|i| Instance::Pair(2 * i, 2 * i + 1)).collect()
    }

    #[test]
    fn chunking_and_determinism() {
        let input = vec![(BatchRelation::Synonym, pairs(10))];
        let plan = plan_epoch(&input, 4, 7, 0).unwrap();
        let sizes: Vec<usize> = plan.iter().map(|b| b.items.len()).collect();
        assert_eq!(sizes, vec![4, 4, 2]);
        assert_eq!(plan, plan_epoch(&input, 4, 7, 0).unwrap());
        assert_ne!(plan, plan_epoch(&input, 4, 7, 1).unwrap());
    }

    #[test]
    fn round_robin_order() {
        let input = vec![
            (BatchRelation::Hypernym, pairs(3)),
            (BatchRelation::Synonym, pairs(5)),
            (BatchRelation::Antonym, Vec::new()),
        ];
        let plan = plan_epoch(&input, 2, 1, 0).unwrap();
        let rels: Vec<BatchRelation> = plan.iter().map(|b| b.relation).collect();
        use BatchRelation::*;
        assert_eq!(rels, vec![Synonym, Hypernym, Synonym, Hypernym, Synonym]);

        let only_ant = vec![(Antonym, pairs(3))];
        assert!(plan_epoch(&only_ant, 1, 1, 0)
            .unwrap()
            .iter()
            .all(|b| b.relation == Antonym));
        assert!(plan_epoch(&[(Synonym, Vec::new())], 2, 1, 0).is_err());
        assert!(plan_epoch(&only_ant, 0, 1, 0).is_err());
    }

    fn store(rows: Vec<Vec<f64>>) -> EmbeddingStore {
        EmbeddingStore::from_rows(rows.into_iter().enumerate().map(|(i, v)| (format!("w{i}"), v))).unwrap()
    }

    fn batch(items: Vec<Instance>) -> MiniBatch {
        MiniBatch {
            relation: BatchRelation::Synonym,
            items,
            epoch: 0,
            batch_index: 0,
        }
    }

    #[test]
    fn closest_is_parallel_candidate() {
        let s = store(vec![
            vec![1.0, 0.2],
            vec![0.0, 1.0],
            vec![-1.0, 0.3],
            vec![2.0, 0.4],
            vec![0.3, -1.0],
            vec![-0.5, -0.5],
        ]);
        let b = batch(vec![Instance::Pair(0, 1), Instance::Pair(2, 3), Instance::Pair(4, 5)]);
        let c = ConstraintSet::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let neg = select_negatives(&s, &c, &b, 0, 0, NegativePolicy::ClosestPlusRandom, 2, &mut rng);
        assert_eq!(
            neg[0],
            AuxSample {
                row: 3,
                kind: AuxKind::NegativeClosest
            }
        );
        assert_eq!(neg.len(), 2);
        assert_eq!(neg[1].kind, AuxKind::NegativeRandom);
    }

    #[test]
    fn synonym_pool_excluded() {
        let s = store(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![1.0, -1.0]]);
        let mut c = ConstraintSet::new();
        c.insert(PairRelation::Synonym, 0, 2);
        c.insert(PairRelation::Synonym, 0, 3);
        let b = batch(vec![Instance::Pair(0, 1), Instance::Pair(2, 3)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(select_negatives(&s, &c, &b, 0, 0, NegativePolicy::ClosestPlusRandom, 2, &mut rng).is_empty());
    }

    #[test]
    fn positives_farthest() {
        let s = store(vec![vec![1.0, 0.5], vec![0.0, 1.0], vec![-1.0, -0.5], vec![0.3, 1.0]]);
        let c = ConstraintSet::new();
        let b = batch(vec![Instance::Pair(0, 1), Instance::Pair(2, 3)]);
        assert_eq!(select_positives(&s, &c, &b, 0, 0, 1)[0].row, 2);
        let single = batch(vec![Instance::Pair(0, 1)]);
        assert!(select_positives(&s, &c, &single, 0, 0, 1).is_empty());
    }

    #[test]
    fn classification() {
        assert_eq!(classify_distances(0.5, 0.1, 0.9), NegativeClass::Hard);
        assert_eq!(classify_distances(0.5, 0.6, 0.9), NegativeClass::SemiHard);
        assert_eq!(classify_distances(0.5, 1.5, 0.9), NegativeClass::Easy);
        assert_eq!(classify_distances(0.5, 0.5, 0.9), NegativeClass::SemiHard);
        assert_eq!(classify_distances(0.5, 1.25, 0.75), NegativeClass::SemiHard);
    }
}
