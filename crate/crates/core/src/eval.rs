//! Intrinsic evaluation: similarity correlation, hypernymy directionality,
//! thresholded hypernymy detection and graded entailment.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embedding::{cosine_similarity, norm, EmbeddingStore};
use crate::error::{Error, Result};
use crate::loss::asymmetric_score;

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityDataset {
    pub name: String,
    pub pairs: Vec<(String, String, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationLabel {
    /// The second word is a hypernym of the first.
    Hyper,
    /// The second word is a hyponym of the first.
    Hypo,
    Other,
}

impl FromStr for RelationLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hyper" => Ok(RelationLabel::Hyper),
            "hypo" => Ok(RelationLabel::Hypo),
            "other" => Ok(RelationLabel::Other),
            other => Err(Error::Config(format!("unknown relation label '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationEntry {
    pub word1: String,
    pub word2: String,
    pub label: RelationLabel,
    pub direction_known: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationDataset {
    pub name: String,
    pub entries: Vec<RelationEntry>,
}

/// Outcome of one evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub dataset: String,
    pub metric: String,
    pub value: f64,
    /// Fraction of pairs with both words covered.
    pub coverage: f64,
    pub n_pairs: usize,
    pub n_covered: usize,
    /// Per-iteration thresholds (thresholded protocols only).
    pub thresholds: Vec<Vec<f64>>,
    /// Per-iteration held-out accuracies (thresholded protocols only).
    pub iteration_accuracies: Vec<f64>,
}

impl EvalReport {
    fn new(dataset: &str, metric: &str, value: f64, n_pairs: usize, n_covered: usize) -> Self {
        EvalReport {
            dataset: dataset.to_owned(),
            metric: metric.to_owned(),
            value,
            coverage: if n_pairs == 0 {
                0.0
            } else {
                n_covered as f64 / n_pairs as f64
            },
            n_pairs,
            n_covered,
            thresholds: Vec::new(),
            iteration_accuracies: Vec::new(),
        }
    }

    pub fn n_excluded(&self) -> usize {
        self.n_pairs - self.n_covered
    }

    pub const TSV_HEADER: &'static str = "dataset\tmetric\tvalue\tcoverage\tn_pairs\tn_covered";

    pub fn to_tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{:.6}\t{:.6}\t{}\t{}",
            self.dataset, self.metric, self.value, self.coverage, self.n_pairs, self.n_covered
        )
    }

    pub fn write_tsv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::TSV_HEADER)?;
        writeln!(out, "{}", self.to_tsv_row())
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<12} {:>10} {:>9} {:>8} {:>8}",
            "dataset", "metric", "value", "coverage", "pairs"
        )?;
        write!(
            f,
            "{:<12} {:>10} {:>9.4} {:>8.3} {:>4}/{:<4}",
            self.dataset, self.metric, self.value, self.coverage, self.n_covered, self.n_pairs
        )?;
        if !self.iteration_accuracies.is_empty() {
            write!(f, "\n({} threshold iterations)", self.iteration_accuracies.len())?;
        }
        Ok(())
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into())
}

fn tsv_lines(path: &Path) -> Result<Vec<(usize, Vec<String>)>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = if trimmed.contains('\t') {
            trimmed.split('\t').map(|f| f.trim().to_owned()).collect()
        } else {
            trimmed.split_whitespace().map(str::to_owned).collect()
        };
        rows.push((i + 1, fields));
    }
    Ok(rows)
}

/// Reads `word1<TAB>word2<TAB>score` lines.
pub fn load_similarity_dataset(path: impl AsRef<Path>) -> Result<SimilarityDataset> {
    let path = path.as_ref();
    let mut pairs = Vec::new();
    for (line, fields) in tsv_lines(path)? {
        if fields.len() < 3 {
            return Err(Error::parse(path, line, "expected word1, word2 and score"));
        }
        let score: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(path, line, format!("invalid score '{}'", fields[2])))?;
        if !score.is_finite() {
            return Err(Error::parse(path, line, "non-finite score"));
        }
        pairs.push((fields[0].clone(), fields[1].clone(), score));
    }
    if pairs.len() < 2 {
        return Err(Error::Empty(format!("{} needs at least 2 pairs", path.display())));
    }
    Ok(SimilarityDataset {
        name: dataset_name(path),
        pairs,
    })
}

/// Reads `word1<TAB>word2<TAB>label` lines with labels `hyper|hypo|other`.
pub fn load_relation_dataset(path: impl AsRef<Path>) -> Result<RelationDataset> {
    let path = path.as_ref();
    let mut entries = Vec::new();
    for (line, fields) in tsv_lines(path)? {
        if fields.len() < 3 {
            return Err(Error::parse(path, line, "expected word1, word2 and label"));
        }
        let label: RelationLabel = fields[2]
            .parse()
            .map_err(|_| Error::parse(path, line, format!("unknown label '{}'", fields[2])))?;
        entries.push(RelationEntry {
            word1: fields[0].clone(),
            word2: fields[1].clone(),
            label,
            direction_known: label != RelationLabel::Other,
        });
    }
    if entries.is_empty() {
        return Err(Error::Empty(format!("{} has no entries", path.display())));
    }
    Ok(RelationDataset {
        name: dataset_name(path),
        entries,
    })
}

/// Average (fractional) ranks, 1-based.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && xs[order[j]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rank correlation with average ranks for ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::Undefined("Spearman needs at least 2 observations".into()));
    }
    pearson(&average_ranks(xs), &average_ranks(ys))
        .ok_or_else(|| Error::Undefined("Spearman is undefined for constant input".into()))
}

pub fn eval_similarity(store: &EmbeddingStore, dataset: &SimilarityDataset, use_backoff: bool) -> Result<EvalReport> {
    let mut model = Vec::new();
    let mut human = Vec::new();
    for (w1, w2, score) in &dataset.pairs {
        if let (Some(a), Some(b)) = (store.resolve(w1, use_backoff), store.resolve(w2, use_backoff)) {
            model.push(cosine_similarity(store.vector(a), store.vector(b)));
            human.push(*score);
        }
    }
    if model.len() < 2 {
        return Err(Error::Undefined(format!(
            "only {} covered pair(s) in {}",
            model.len(),
            dataset.name
        )));
    }
    let rho = spearman(&model, &human)?;
    Ok(EvalReport::new(
        &dataset.name,
        "spearman",
        rho,
        dataset.pairs.len(),
        model.len(),
    ))
}

/// Orientation of the norm ratio inside [`hyper_score`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormRatio {
    /// `|candidate hypernym| / |word|`.
    #[default]
    HyperOverHypo,
    /// `|word| / |candidate hypernym|`.
    HypoOverHyper,
}

pub fn hyper_score_vectors(u: &[f64], v: &[f64], ratio: NormRatio) -> f64 {
    let cos = cosine_similarity(u, v);
    match ratio {
        NormRatio::HyperOverHypo => cos * norm(v) / norm(u),
        NormRatio::HypoOverHyper => cos * norm(u) / norm(v),
    }
}

/// `cos(u, v) * |v| / |u|` where `v` is the candidate hypernym.
pub fn hyper_score(store: &EmbeddingStore, u: &str, v: &str, use_backoff: bool) -> Result<f64> {
    let a = store
        .resolve(u, use_backoff)
        .ok_or_else(|| Error::Uncovered(u.to_owned()))?;
    let b = store
        .resolve(v, use_backoff)
        .ok_or_else(|| Error::Uncovered(v.to_owned()))?;
    Ok(hyper_score_vectors(
        store.vector(a),
        store.vector(b),
        NormRatio::default(),
    ))
}

/// Covered relation entries as `(row1, row2, label)`.
fn covered_entries(
    store: &EmbeddingStore,
    dataset: &RelationDataset,
    use_backoff: bool,
) -> Vec<(usize, usize, RelationLabel)> {
    dataset
        .entries
        .iter()
        .filter_map(|e| {
            Some((
                store.resolve(&e.word1, use_backoff)?,
                store.resolve(&e.word2, use_backoff)?,
                e.label,
            ))
        })
        .collect()
}

/// Fraction of directed pairs where the hyponym has the strictly smaller norm.
/// `hypo`-labelled entries are flipped; `other` entries are ignored.
pub fn bless_directionality(
    store: &EmbeddingStore,
    dataset: &RelationDataset,
    use_backoff: bool,
) -> Result<EvalReport> {
    let directed: Vec<&RelationEntry> = dataset.entries.iter().filter(|e| e.direction_known).collect();
    let mut correct = 0usize;
    let mut covered = 0usize;
    for e in &directed {
        let (Some(a), Some(b)) = (
            store.resolve(&e.word1, use_backoff),
            store.resolve(&e.word2, use_backoff),
        ) else {
            continue;
        };
        let (hypo, hyper) = match e.label {
            RelationLabel::Hyper => (a, b),
            _ => (b, a),
        };
        covered += 1;
        if store.norm(hypo) < store.norm(hyper) {
            correct += 1;
        }
    }
    if covered == 0 {
        return Err(Error::Undefined(format!(
            "no covered directed pairs in {}",
            dataset.name
        )));
    }
    Ok(EvalReport::new(
        &dataset.name,
        "accuracy",
        correct as f64 / covered as f64,
        directed.len(),
        covered,
    ))
}

/// Threshold maximizing accuracy of `score > t` against `labels`. Candidates
/// are `-inf`, midpoints between adjacent distinct sorted scores, and `+inf`;
/// ties go to the smaller threshold.
pub fn fit_threshold(scores: &[f64], labels: &[bool]) -> f64 {
    let mut sorted: Vec<f64> = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let mut candidates = vec![f64::NEG_INFINITY];
    candidates.extend(sorted.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    candidates.push(f64::INFINITY);

    let hits = |t: f64| scores.iter().zip(labels).filter(|(&s, &l)| (s > t) == l).count();
    let mut best = (candidates[0], hits(candidates[0]));
    for &t in &candidates[1..] {
        let h = hits(t);
        if h > best.1 {
            best = (t, h);
        }
    }
    best.0
}

/// Iterations and sampling fraction of the thresholded protocols.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdProtocol {
    pub iterations: usize,
    pub sample_fraction: f64,
    pub seed: u64,
    pub ratio: NormRatio,
}

impl Default for ThresholdProtocol {
    fn default() -> Self {
        ThresholdProtocol {
            iterations: 1000,
            sample_fraction: 0.02,
            seed: crate::specialize::DEFAULT_SEED,
            ratio: NormRatio::default(),
        }
    }
}

/// Draws a sample (as a boolean mask) holding at least one item of every
/// class present in `classes`, retrying a bounded number of times.
fn stratified_draw(rng: &mut ChaCha8Rng, classes: &[u8], size: usize) -> Vec<bool> {
    let n = classes.len();
    let mut present: Vec<u8> = classes.to_vec();
    present.sort_unstable();
    present.dedup();
    let size = size.max(present.len()).min(n.saturating_sub(1)).max(1);
    let mut mask = vec![false; n];
    for _ in 0..1000 {
        mask.iter_mut().for_each(|m| *m = false);
        for i in index::sample(rng, n, size) {
            mask[i] = true;
        }
        let ok = present
            .iter()
            .all(|&c| classes.iter().zip(&mask).any(|(&k, &m)| m && k == c));
        if ok {
            return mask;
        }
    }
    mask
}

/// Binary hypernymy detection with HyperScore and a threshold fitted on a
/// small random sample, averaged over repeated draws. `hypo` and `other`
/// labels both count as the negative class.
pub fn wbless_classify(
    store: &EmbeddingStore,
    dataset: &RelationDataset,
    protocol: ThresholdProtocol,
    use_backoff: bool,
) -> Result<EvalReport> {
    let entries = covered_entries(store, dataset, use_backoff);
    let scores: Vec<f64> = entries
        .iter()
        .map(|&(a, b, _)| hyper_score_vectors(store.vector(a), store.vector(b), protocol.ratio))
        .collect();
    let labels: Vec<bool> = entries.iter().map(|e| e.2 == RelationLabel::Hyper).collect();
    let mut report = wbless_from_scores(&scores, &labels, protocol)?;
    report.dataset = dataset.name.clone();
    report.n_pairs = dataset.entries.len();
    report.coverage = report.n_covered as f64 / report.n_pairs as f64;
    Ok(report)
}

/// The WBLESS protocol over precomputed scores.
pub fn wbless_from_scores(scores: &[f64], labels: &[bool], protocol: ThresholdProtocol) -> Result<EvalReport> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: scores.len(),
            got: labels.len(),
        });
    }
    if !labels.iter().any(|&l| l) || labels.iter().all(|&l| l) {
        return Err(Error::Undefined("binary classification needs both classes".into()));
    }
    if scores.len() < 3 {
        return Err(Error::Undefined("too few covered pairs".into()));
    }
    let classes: Vec<u8> = labels.iter().map(|&l| l as u8).collect();
    let size = (protocol.sample_fraction * scores.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(protocol.seed);
    let mut report = EvalReport::new("scores", "accuracy", 0.0, scores.len(), scores.len());

    for _ in 0..protocol.iterations {
        let mask = stratified_draw(&mut rng, &classes, size);
        let (mut s, mut l) = (Vec::new(), Vec::new());
        for i in (0..scores.len()).filter(|&i| mask[i]) {
            s.push(scores[i]);
            l.push(labels[i]);
        }
        let t = fit_threshold(&s, &l);
        let held: Vec<usize> = (0..scores.len()).filter(|&i| !mask[i]).collect();
        let hits = held.iter().filter(|&&i| (scores[i] > t) == labels[i]).count();
        report.thresholds.push(vec![t]);
        report.iteration_accuracies.push(hits as f64 / held.len() as f64);
    }
    report.value = mean(&report.iteration_accuracies);
    Ok(report)
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Per-pair inputs to the two-stage BIBLESS classifier.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiblessScores {
    /// Direction-agnostic relatedness: max of HyperScore in both orders.
    pub taxonomic: f64,
    /// Signed norm asymmetry of `(word1, word2)`; negative when word2 is longer.
    pub direction: f64,
}

fn bibless_predict(s: BiblessScores, t1: f64, t2: f64) -> RelationLabel {
    if s.taxonomic <= t1 {
        RelationLabel::Other
    } else if -s.direction > t2 {
        RelationLabel::Hyper
    } else {
        RelationLabel::Hypo
    }
}

/// Three-way detection: a first threshold separates taxonomic pairs from the
/// rest, a second one on the norm asymmetry assigns direction.
pub fn bibless_classify(
    store: &EmbeddingStore,
    dataset: &RelationDataset,
    protocol: ThresholdProtocol,
    use_backoff: bool,
) -> Result<EvalReport> {
    let entries = covered_entries(store, dataset, use_backoff);
    let scores: Vec<BiblessScores> = entries
        .iter()
        .map(|&(a, b, _)| {
            let (u, v) = (store.vector(a), store.vector(b));
            BiblessScores {
                taxonomic: hyper_score_vectors(u, v, protocol.ratio).max(hyper_score_vectors(v, u, protocol.ratio)),
                direction: asymmetric_score(u, v),
            }
        })
        .collect();
    let labels: Vec<RelationLabel> = entries.iter().map(|e| e.2).collect();
    let mut report = bibless_from_scores(&scores, &labels, protocol)?;
    report.dataset = dataset.name.clone();
    report.n_pairs = dataset.entries.len();
    report.coverage = report.n_covered as f64 / report.n_pairs as f64;
    Ok(report)
}

/// The BIBLESS protocol over precomputed scores.
pub fn bibless_from_scores(
    scores: &[BiblessScores],
    labels: &[RelationLabel],
    protocol: ThresholdProtocol,
) -> Result<EvalReport> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: scores.len(),
            got: labels.len(),
        });
    }
    if scores.len() < 2 {
        return Err(Error::Undefined("too few covered pairs".into()));
    }
    let classes: Vec<u8> = labels
        .iter()
        .map(|l| match l {
            RelationLabel::Hyper => 0,
            RelationLabel::Hypo => 1,
            RelationLabel::Other => 2,
        })
        .collect();
    let size = (protocol.sample_fraction * scores.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(protocol.seed);
    let mut report = EvalReport::new("scores", "accuracy", 0.0, scores.len(), scores.len());

    for _ in 0..protocol.iterations {
        let mask = stratified_draw(&mut rng, &classes, size);
        let sample: Vec<usize> = (0..scores.len()).filter(|&i| mask[i]).collect();
        let t1 = fit_threshold(
            &sample.iter().map(|&i| scores[i].taxonomic).collect::<Vec<_>>(),
            &sample
                .iter()
                .map(|&i| labels[i] != RelationLabel::Other)
                .collect::<Vec<_>>(),
        );
        let directed: Vec<usize> = sample
            .iter()
            .copied()
            .filter(|&i| labels[i] != RelationLabel::Other)
            .collect();
        let t2 = if directed.is_empty() {
            0.0
        } else {
            fit_threshold(
                &directed.iter().map(|&i| -scores[i].direction).collect::<Vec<_>>(),
                &directed
                    .iter()
                    .map(|&i| labels[i] == RelationLabel::Hyper)
                    .collect::<Vec<_>>(),
            )
        };
        let held: Vec<usize> = (0..scores.len()).filter(|&i| !mask[i]).collect();
        let hits = held
            .iter()
            .filter(|&&i| bibless_predict(scores[i], t1, t2) == labels[i])
            .count();
        report.thresholds.push(vec![t1, t2]);
        report.iteration_accuracies.push(if held.is_empty() {
            0.0
        } else {
            hits as f64 / held.len() as f64
        });
    }
    report.value = mean(&report.iteration_accuracies);
    Ok(report)
}

/// Spearman correlation between HyperScore and graded entailment ratings.
pub fn hyperlex_eval(store: &EmbeddingStore, dataset: &SimilarityDataset, use_backoff: bool) -> Result<EvalReport> {
    hyperlex_eval_with(store, dataset, use_backoff, NormRatio::default())
}

/// [`hyperlex_eval`] with an explicit norm-ratio orientation.
pub fn hyperlex_eval_with(
    store: &EmbeddingStore,
    dataset: &SimilarityDataset,
    use_backoff: bool,
    ratio: NormRatio,
) -> Result<EvalReport> {
    let mut model = Vec::new();
    let mut human = Vec::new();
    for (w1, w2, score) in &dataset.pairs {
        if let (Some(a), Some(b)) = (store.resolve(w1, use_backoff), store.resolve(w2, use_backoff)) {
            model.push(hyper_score_vectors(store.vector(a), store.vector(b), ratio));
            human.push(*score);
        }
    }
    if model.len() < 2 {
        return Err(Error::Undefined(format!(
            "only {} covered pair(s) in {}",
            model.len(),
            dataset.name
        )));
    }
    let rho = spearman(&model, &human)?;
    Ok(EvalReport::new(
        &dataset.name,
        "spearman",
        rho,
        dataset.pairs.len(),
        model.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spearman_fixtures() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((spearman(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!((spearman(&a, &[4.0, 3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
        assert!((spearman(&a, &[1.0, 3.0, 2.0, 4.0]).unwrap() - 0.8).abs() < 1e-12);
        assert!(spearman(&a, &[1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(spearman(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn ranks_with_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 30.0]), vec![1.5, 3.0, 1.5, 4.0]);
    }

    #[test]
    fn hyper_score_cases() {
        let u = [1.0, 0.0];
        let v = [1.6, 1.2]; // cos 0.8, norm 2
        assert!((hyper_score_vectors(&u, &v, NormRatio::HyperOverHypo) - 1.6).abs() < 1e-12);
        assert!((hyper_score_vectors(&u, &u, NormRatio::HyperOverHypo) - 1.0).abs() < 1e-12);
        assert!((hyper_score_vectors(&u, &v, NormRatio::HypoOverHyper) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn threshold_fit_prefers_smaller() {
        let t = fit_threshold(&[0.1, 0.2, 0.8, 0.9], &[false, false, true, true]);
        assert!((t - 0.5).abs() < 1e-12);
        assert_eq!(fit_threshold(&[0.3, 0.4], &[false, false]), f64::INFINITY);
        assert_eq!(fit_threshold(&[0.3, 0.4], &[true, true]), f64::NEG_INFINITY);
    }

    #[test]
    fn wbless_requires_two_classes() {
        let p = ThresholdProtocol::default();
        assert!(wbless_from_scores(&[0.1, 0.2, 0.3], &[true, true, true], p).is_err());
    }

    #[test]
    fn bibless_others_only() {
        let scores: Vec<BiblessScores> = (0..100)
            .map(|i| BiblessScores {
                taxonomic: i as f64 / 100.0,
                direction: 0.0,
            })
            .collect();
        let labels = vec![RelationLabel::Other; 100];
        let p = ThresholdProtocol {
            iterations: 20,
            ..Default::default()
        };
        assert_eq!(bibless_from_scores(&scores, &labels, p).unwrap().value, 1.0);
    }
}
