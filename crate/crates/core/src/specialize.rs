//! Training driver: plans batches, samples in-batch negatives/positives,
//! evaluates the preset's losses and applies one AdaGrad step per batch.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::constraints::{hypernym_closure, ConstraintSet, Pair, PairRelation};
use crate::embedding::{cosine_distance, EmbeddingStore, Space};
use crate::error::{Error, Result};
use crate::loss::{self, LossResult, Margins};
use crate::sampler::{self, BatchRelation, Instance, MiniBatch, NegativePolicy, SampledTriplet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Retrofitting,
    Counterfitting,
    AttractRepel,
    Lear,
    HierarchyFitting,
    HierarchyFittingAdDir,
    HierarchyFittingAdIndir,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Retrofitting,
        Preset::Counterfitting,
        Preset::AttractRepel,
        Preset::Lear,
        Preset::HierarchyFitting,
        Preset::HierarchyFittingAdDir,
        Preset::HierarchyFittingAdIndir,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Retrofitting => "retrofitting",
            Preset::Counterfitting => "counter-fitting",
            Preset::AttractRepel => "attract-repel",
            Preset::Lear => "lear",
            Preset::HierarchyFitting => "hierarchy-fitting",
            Preset::HierarchyFittingAdDir => "hierarchy-fitting-ad-dir",
            Preset::HierarchyFittingAdIndir => "hierarchy-fitting-ad-indir",
        }
    }

    /// Relations that must be non-empty for this preset.
    pub fn required_relations(self) -> &'static [PairRelation] {
        use PairRelation::*;
        match self {
            Preset::Retrofitting => &[],
            Preset::Counterfitting | Preset::AttractRepel => &[Synonym, Antonym],
            Preset::Lear
            | Preset::HierarchyFitting
            | Preset::HierarchyFittingAdDir
            | Preset::HierarchyFittingAdIndir => &[Synonym, Antonym, Hypernym],
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('_', "-").to_ascii_lowercase();
        let norm = match norm.as_str() {
            "counterfitting" => "counter-fitting",
            "attractrepel" => "attract-repel",
            other => other,
        };
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| Error::Config(format!("unknown method '{s}'")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecializeConfig {
    pub preset: Preset,
    pub margins: Margins,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
    pub adagrad_epsilon: f64,
    /// Original-space neighbours preserved by counter-fitting.
    pub neighbor_k: usize,
    pub retrofit_alpha: f64,
    pub retrofit_iterations: usize,
    /// In-batch samples per anchor.
    pub samples_k: usize,
    pub negative_policy: NegativePolicy,
    /// Hop limit for the hypernym closure; `None` is unbounded.
    pub closure_depth: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 20_210_901;

impl Default for SpecializeConfig {
    fn default() -> Self {
        SpecializeConfig {
            preset: Preset::HierarchyFitting,
            margins: Margins::default(),
            learning_rate: 0.03,
            epochs: 20,
            batch_size: 128,
            seed: DEFAULT_SEED,
            adagrad_epsilon: 1e-8,
            neighbor_k: 10,
            retrofit_alpha: 1.0,
            retrofit_iterations: 10,
            samples_k: 2,
            negative_policy: NegativePolicy::ClosestPlusRandom,
            closure_depth: None,
        }
    }
}

impl SpecializeConfig {
    pub fn validate(&self) -> Result<()> {
        self.margins.validate()?;
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Config("learning rate must be > 0".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch size must be at least 1".into()));
        }
        if self.adagrad_epsilon.is_nan() || self.adagrad_epsilon < 0.0 {
            return Err(Error::Config("adagrad epsilon must be >= 0".into()));
        }
        if self.retrofit_alpha.is_nan() || self.retrofit_alpha <= 0.0 {
            return Err(Error::Config("retrofit alpha must be > 0".into()));
        }
        Ok(())
    }
}

/// Per-relation statistics for one epoch.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RelationStats {
    pub batches: usize,
    pub total_loss: f64,
    pub active_terms: usize,
    pub total_terms: usize,
}

impl RelationStats {
    pub fn mean_loss(&self) -> f64 {
        if self.batches == 0 {
            0.0
        } else {
            self.total_loss / self.batches as f64
        }
    }

    pub fn active_fraction(&self) -> f64 {
        if self.total_terms == 0 {
            0.0
        } else {
            self.active_terms as f64 / self.total_terms as f64
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EpochLog {
    pub epoch: usize,
    pub relations: BTreeMap<String, RelationStats>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainLog {
    pub epochs: Vec<EpochLog>,
    pub wall_time: Duration,
    pub batches_processed: usize,
}

impl TrainLog {
    /// `epoch<TAB>relation<TAB>mean_loss<TAB>active_fraction`, one line per
    /// epoch and relation. Epochs are 1-based.
    pub fn write_tsv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for e in &self.epochs {
            for (rel, st) in &e.relations {
                writeln!(
                    out,
                    "{}\t{}\t{:.9e}\t{:.6}",
                    e.epoch,
                    rel,
                    st.mean_loss(),
                    st.active_fraction()
                )?;
            }
        }
        Ok(())
    }

    pub fn stats(&self, epoch: usize, relation: &str) -> Option<&RelationStats> {
        self.epochs.iter().find(|e| e.epoch == epoch)?.relations.get(relation)
    }
}

/// Per-coordinate AdaGrad state, allocated lazily for the rows it has
/// updated.
#[derive(Clone, Debug)]
pub struct AdaGrad {
    accumulators: BTreeMap<usize, Vec<f64>>,
    dim: usize,
    learning_rate: f64,
    epsilon: f64,
}

impl AdaGrad {
    pub fn new(dim: usize, learning_rate: f64, epsilon: f64) -> Self {
        AdaGrad {
            accumulators: BTreeMap::new(),
            dim,
            learning_rate,
            epsilon,
        }
    }

    pub fn accumulator(&self, row: usize) -> Option<&[f64]> {
        self.accumulators.get(&row).map(Vec::as_slice)
    }

    /// Applies sparse gradients to a row-major matrix. On a non-finite
    /// gradient nothing is updated and the offending row is returned.
    pub fn step(&mut self, params: &mut [f64], grads: &BTreeMap<usize, Vec<f64>>) -> std::result::Result<(), usize> {
        if let Some((&row, _)) = grads.iter().find(|(_, g)| g.iter().any(|x| !x.is_finite())) {
            return Err(row);
        }
        let dim = self.dim;
        for (&row, g) in grads {
            let acc = self.accumulators.entry(row).or_insert_with(|| vec![0.0; dim]);
            for ((x, a), gi) in params[row * dim..(row + 1) * dim].iter_mut().zip(acc).zip(g) {
                *a += gi * gi;
                *x -= self.learning_rate * gi / (a.sqrt() + self.epsilon);
            }
        }
        Ok(())
    }
}

/// `acc += g^2; x -= lr * g / (sqrt(acc) + eps)` on every coordinate of every
/// row present in `grads`.
pub fn adagrad_step(
    accumulators: &mut [f64],
    params: &mut [f64],
    dim: usize,
    grads: &BTreeMap<usize, Vec<f64>>,
    learning_rate: f64,
    epsilon: f64,
) -> std::result::Result<(), usize> {
    if let Some((&row, _)) = grads.iter().find(|(_, g)| g.iter().any(|x| !x.is_finite())) {
        return Err(row);
    }
    for (&row, g) in grads {
        let span = row * dim..(row + 1) * dim;
        for ((x, acc), gi) in params[span.clone()].iter_mut().zip(&mut accumulators[span]).zip(g) {
            *acc += gi * gi;
            *x -= learning_rate * gi / (acc.sqrt() + epsilon);
        }
    }
    Ok(())
}

fn check_required(constraints: &ConstraintSet, preset: Preset) -> Result<()> {
    for &rel in preset.required_relations() {
        if constraints.pairs(rel).is_empty() {
            return Err(Error::MissingRelation {
                relation: rel.name().to_owned(),
            });
        }
    }
    Ok(())
}

/// Quadruplet seeds: every synonym pair joined with the direct hypernyms of
/// either member, anchored on that member.
pub fn quadruplet_instances(constraints: &ConstraintSet) -> Vec<Instance> {
    let hypers = constraints.direct_hypernym_map();
    let mut out = BTreeSet::new();
    for &(a, b) in constraints.synonyms() {
        for (anchor, synonym) in [(a, b), (b, a)] {
            for &hypernym in hypers.get(&anchor).into_iter().flatten() {
                if hypernym != synonym {
                    out.insert(Instance::Quad {
                        anchor,
                        synonym,
                        hypernym,
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}

fn pair_instances(pairs: &BTreeSet<Pair>) -> Vec<Instance> {
    pairs.iter().map(|&(a, b)| Instance::Pair(a, b)).collect()
}

fn closed_hypernyms(constraints: &ConstraintSet, depth: Option<usize>) -> BTreeSet<Pair> {
    if constraints.closure_computed() {
        constraints.indirect_hypernyms().clone()
    } else {
        hypernym_closure(constraints.direct_hypernyms(), depth)
    }
}

/// Specializes a copy of `store`. The original snapshot of the returned store
/// is left as loaded.
pub fn specialize(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    config: &SpecializeConfig,
) -> Result<(EmbeddingStore, TrainLog)> {
    config.validate()?;
    check_required(constraints, config.preset)?;
    match config.preset {
        Preset::Retrofitting => retrofit(store, constraints, config.retrofit_alpha, config.retrofit_iterations),
        Preset::Counterfitting => counterfit(store, constraints, config),
        _ => Trainer::new(store, constraints, config).run(),
    }
}

/// Counter-fitting: margin-based synonym/antonym terms plus hinge
/// preservation of each word's top original-space neighbours.
pub fn counterfit(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    config: &SpecializeConfig,
) -> Result<(EmbeddingStore, TrainLog)> {
    config.validate()?;
    check_required(constraints, Preset::Counterfitting)?;
    let config = SpecializeConfig {
        preset: Preset::Counterfitting,
        ..config.clone()
    };
    Trainer::new(store, constraints, &config).run()
}

struct Trainer<'a> {
    store: EmbeddingStore,
    constraints: &'a ConstraintSet,
    config: &'a SpecializeConfig,
    streams: Vec<(BatchRelation, Vec<Instance>)>,
    neighbors: BTreeMap<usize, Vec<(usize, f64)>>,
    /// One optimizer per relation stream.
    optimizers: BTreeMap<BatchRelation, AdaGrad>,
}

impl<'a> Trainer<'a> {
    fn new(store: &EmbeddingStore, constraints: &'a ConstraintSet, config: &'a SpecializeConfig) -> Self {
        use BatchRelation::*;
        let syn = pair_instances(constraints.synonyms());
        let ant = pair_instances(constraints.antonyms());
        let mut streams = vec![(Synonym, syn), (Antonym, ant)];
        match config.preset {
            Preset::Lear => {
                let closed = pair_instances(&closed_hypernyms(constraints, config.closure_depth));
                streams.push((Hypernym, closed.clone()));
                streams.push((Direction, closed));
            }
            Preset::HierarchyFitting | Preset::HierarchyFittingAdDir | Preset::HierarchyFittingAdIndir => {
                streams.push((Hypernym, pair_instances(constraints.direct_hypernyms())));
                streams.push((Quadruplet, quadruplet_instances(constraints)));
                match config.preset {
                    Preset::HierarchyFittingAdDir => {
                        streams.push((Direction, pair_instances(constraints.direct_hypernyms())));
                    }
                    Preset::HierarchyFittingAdIndir => {
                        let closed = closed_hypernyms(constraints, config.closure_depth);
                        streams.push((Direction, pair_instances(&closed)));
                    }
                    _ => {}
                }
            }
            _ => {}
        }

        let mut neighbors = BTreeMap::new();
        if config.preset == Preset::Counterfitting {
            let words: BTreeSet<usize> = constraints
                .synonyms()
                .iter()
                .chain(constraints.antonyms())
                .flat_map(|&(a, b)| [a, b])
                .collect();
            for w in words {
                let nn = store
                    .nearest_neighbors(w, config.neighbor_k.max(1), Space::Original)
                    .expect("constraint rows are valid");
                let nn = if config.neighbor_k == 0 { Vec::new() } else { nn };
                neighbors.insert(w, nn.into_iter().map(|(r, cos)| (r, 1.0 - cos)).collect());
            }
        }

        let optimizers = streams
            .iter()
            .map(|(rel, _)| {
                (
                    *rel,
                    AdaGrad::new(store.dim(), config.learning_rate, config.adagrad_epsilon),
                )
            })
            .collect();
        Trainer {
            store: store.clone(),
            constraints,
            config,
            streams,
            neighbors,
            optimizers,
        }
    }

    fn run(mut self) -> Result<(EmbeddingStore, TrainLog)> {
        let started = Instant::now();
        let mut log = TrainLog::default();
        for epoch in 0..self.config.epochs {
            let plan = sampler::plan_epoch(&self.streams, self.config.batch_size, self.config.seed, epoch)?;
            let mut rng = sampler::stream_rng(self.config.seed, epoch, 0x40);
            let mut entry = EpochLog {
                epoch: epoch + 1,
                relations: BTreeMap::new(),
            };
            for batch in &plan {
                let result = self.batch_loss(batch, &mut rng)?;
                let st = entry.relations.entry(batch.relation.name().to_owned()).or_default();
                st.batches += 1;
                st.total_loss += result.relation.loss;
                st.active_terms += result.relation.active_terms;
                st.total_terms += result.relation.total_terms;

                let mut total = result.relation;
                total.merge(result.regularizer);
                self.optimizers
                    .get_mut(&batch.relation)
                    .expect("every planned relation has an optimizer")
                    .step(self.store.current_matrix_mut(), &total.grads)
                    .map_err(|row| Error::NonFiniteGradient {
                        row,
                        relation: batch.relation.name().to_owned(),
                        epoch: epoch + 1,
                        batch: batch.batch_index,
                    })?;
                log.batches_processed += 1;
            }
            log::debug!(
                "epoch {}: {}",
                epoch + 1,
                entry
                    .relations
                    .iter()
                    .map(|(r, s)| format!("{r} loss={:.4} active={:.3}", s.mean_loss(), s.active_fraction()))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            log.epochs.push(entry);
        }
        log.wall_time = started.elapsed();
        Ok((self.store, log))
    }

    fn batch_loss<R: rand::Rng>(&self, batch: &MiniBatch, rng: &mut R) -> Result<BatchLoss> {
        let store = &self.store;
        let m = &self.config.margins;
        let mut relation = LossResult::new();
        let mut regularizer = LossResult::new();

        if self.config.preset == Preset::Counterfitting {
            for inst in &batch.items {
                let Instance::Pair(a, b) = *inst else { continue };
                relation.merge(match batch.relation {
                    BatchRelation::Synonym => loss::counterfit_synonym_loss(store, a, b, m.m_syn),
                    _ => loss::counterfit_antonym_loss(store, a, b, m.m_ant),
                });
            }
            for row in batch.rows() {
                if let Some(nn) = self.neighbors.get(&row) {
                    regularizer.merge(loss::counterfit_preserve_loss(store, row, nn));
                }
            }
            return Ok(BatchLoss { relation, regularizer });
        }

        let samples = sampler::sample_batch(
            store,
            self.constraints,
            batch,
            self.config.negative_policy,
            self.config.samples_k,
            rng,
        );
        let ar_family = matches!(self.config.preset, Preset::AttractRepel | Preset::Lear);
        let mut touched = batch.rows();

        for t in &samples {
            let aux = t.aux_rows();
            touched.extend(aux.iter().copied());
            relation.merge(self.relation_loss(batch.relation, t, &aux)?);
            if ar_family {
                let mut rows = vec![t.anchor, t.partner];
                rows.extend(&aux);
                regularizer.merge(loss::attract_repel_reg_loss(store, &rows, m.m_reg));
            }
        }
        if !ar_family {
            let rows: Vec<usize> = touched.into_iter().collect();
            regularizer.merge(loss::preservation_loss(store, &rows, m.gamma_reg));
        }
        Ok(BatchLoss { relation, regularizer })
    }

    fn relation_loss(&self, relation: BatchRelation, t: &SampledTriplet, aux: &[usize]) -> Result<LossResult> {
        let store = &self.store;
        let m = &self.config.margins;
        let lear = self.config.preset == Preset::Lear;
        Ok(match relation {
            BatchRelation::Synonym => loss::triplet_attract_loss(store, t.anchor, t.partner, aux, m.m_syn),
            BatchRelation::Antonym => loss::triplet_repel_loss(store, t.anchor, t.partner, aux, m.m_ant),
            BatchRelation::Hypernym if lear => loss::hypernym_triplet_loss(store, t.anchor, t.partner, aux, m.m_syn),
            BatchRelation::Hypernym => loss::hypernym_triplet_loss(store, t.anchor, t.partner, aux, m.m_hyp),
            BatchRelation::Quadruplet => loss::quadruplet_hierarchy_loss(
                store,
                t.anchor,
                t.partner,
                t.hypernym.expect("quadruplet sample carries a hypernym"),
                aux,
                m.m_hie_syn,
                m.m_hie_hyp,
            ),
            BatchRelation::Direction => loss::asymmetric_norm_loss(store, t.anchor, t.partner, m.ad_weight)?,
        })
    }
}

struct BatchLoss {
    relation: LossResult,
    regularizer: LossResult,
}

/// Retrofitting by Jacobi sweeps of the closed-form update
/// `v_a = (alpha * o_a + sum_p beta * v_p) / (alpha + sum_p beta)` with
/// `beta = 1 / degree(a)`, over synonyms and direct hypernyms as undirected
/// edges. Stops early once no component moves by 1e-6 or more.
pub fn retrofit(
    store: &EmbeddingStore,
    constraints: &ConstraintSet,
    alpha: f64,
    iterations: usize,
) -> Result<(EmbeddingStore, TrainLog)> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Config("retrofit alpha must be > 0".into()));
    }
    if constraints.synonyms().is_empty() && constraints.direct_hypernyms().is_empty() {
        return Err(Error::MissingRelation {
            relation: "synonyms".into(),
        });
    }
    let started = Instant::now();
    let graph = retrofit_graph(constraints);
    let dim = store.dim();
    let mut out = store.clone();
    let mut log = TrainLog::default();
    let mut next = out.current_matrix().to_vec();

    for it in 0..iterations {
        let cur = out.current_matrix();
        let mut max_change: f64 = 0.0;
        for (&a, nbrs) in &graph {
            let beta = 1.0 / nbrs.len() as f64;
            let orig = store.original_vector(a);
            let slot = &mut next[a * dim..(a + 1) * dim];
            for (k, x) in slot.iter_mut().enumerate() {
                let pulled: f64 = nbrs.iter().map(|&p| beta * cur[p * dim + k]).sum();
                let v = (alpha * orig[k] + pulled) / (alpha + beta * nbrs.len() as f64);
                max_change = max_change.max((v - cur[a * dim + k]).abs());
                *x = v;
            }
        }
        out.current_matrix_mut().copy_from_slice(&next);
        let mut relations = BTreeMap::new();
        relations.insert(
            "retrofit".to_owned(),
            RelationStats {
                batches: 1,
                total_loss: max_change,
                active_terms: 0,
                total_terms: 0,
            },
        );
        log.epochs.push(EpochLog {
            epoch: it + 1,
            relations,
        });
        log.batches_processed += 1;
        if max_change < 1e-6 {
            break;
        }
    }
    log.wall_time = started.elapsed();
    Ok((out, log))
}

/// Undirected neighbour lists used by retrofitting.
pub fn retrofit_graph(constraints: &ConstraintSet) -> BTreeMap<usize, BTreeSet<usize>> {
    let mut graph: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in constraints.synonyms().iter().chain(constraints.direct_hypernyms()) {
        graph.entry(a).or_default().insert(b);
        graph.entry(b).or_default().insert(a);
    }
    graph
}

/// Largest absolute deviation from the retrofitting fixed point.
pub fn retrofit_residual(store: &EmbeddingStore, constraints: &ConstraintSet, alpha: f64) -> f64 {
    let graph = retrofit_graph(constraints);
    let mut worst: f64 = 0.0;
    for (&a, nbrs) in &graph {
        let beta = 1.0 / nbrs.len() as f64;
        let v = store.vector(a);
        let o = store.original_vector(a);
        for k in 0..store.dim() {
            let pulled: f64 = nbrs.iter().map(|&p| beta * store.vector(p)[k]).sum();
            let target = (alpha * o[k] + pulled) / (alpha + beta * nbrs.len() as f64);
            worst = worst.max((v[k] - target).abs());
        }
    }
    worst
}

/// Mean current-space distance over a pair set.
pub fn mean_pair_distance(store: &EmbeddingStore, pairs: &BTreeSet<Pair>) -> f64 {
    if pairs.is_empty() {
        return 0.0;
    }
    pairs
        .iter()
        .map(|&(a, b)| cosine_distance(store.vector(a), store.vector(b)))
        .sum::<f64>()
        / pairs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adagrad_recurrence() {
        let mut acc = vec![0.0];
        let mut x = vec![0.0];
        let g = BTreeMap::from([(0, vec![1.0])]);
        adagrad_step(&mut acc, &mut x, 1, &g, 1.0, 0.0).unwrap();
        assert_eq!(x[0], -1.0);
        adagrad_step(&mut acc, &mut x, 1, &g, 1.0, 0.0).unwrap();
        assert!((x[0] - (-1.0 - 1.0 / 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn adagrad_zero_and_nonfinite() {
        let mut acc = vec![0.0; 4];
        let mut x = vec![1.0, 2.0, 3.0, 4.0];
        let zero = BTreeMap::from([(1, vec![0.0, 0.0])]);
        adagrad_step(&mut acc, &mut x, 2, &zero, 0.03, 1e-8).unwrap();
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
        let bad = BTreeMap::from([(0, vec![0.5, 0.5]), (1, vec![f64::NAN, 0.0])]);
        assert_eq!(adagrad_step(&mut acc, &mut x, 2, &bad, 0.03, 1e-8), Err(1));
        assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert_eq!(
            "hierarchy_fitting_ad_indir".parse::<Preset>().unwrap(),
            Preset::HierarchyFittingAdIndir
        );
        assert!("foo".parse::<Preset>().is_err());
    }

    #[test]
    fn quad_join() {
        let mut c = ConstraintSet::new();
        c.insert(PairRelation::Synonym, 0, 1);
        c.insert(PairRelation::Hypernym, 0, 2);
        c.insert(PairRelation::Hypernym, 1, 3);
        let q = quadruplet_instances(&c);
        assert_eq!(
            q,
            vec![
                Instance::Quad {
                    anchor: 0,
                    synonym: 1,
                    hypernym: 2
                },
                Instance::Quad {
                    anchor: 1,
                    synonym: 0,
                    hypernym: 3
                },
            ]
        );
    }

    #[test]
    fn config_validation() {
        assert!(SpecializeConfig::default().validate().is_ok());
        let bad = SpecializeConfig {
            learning_rate: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SpecializeConfig {
            epochs: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
