#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use hierfit::constraints::{ConstraintSet, PairRelation};
use hierfit::embedding::EmbeddingStore;
use hierfit::loss::{self, LossResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FD_STEP: f64 = 1e-5;
pub const FD_TOLERANCE: f64 = 1e-4;
pub const FD_INSTANCES: usize = 100;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if v.iter().any(|&x| x != 0.0) {
            return v;
        }
    }
}

/// Random vector scaled to roughly unit norm, the magnitude of normalized
/// embeddings.
pub fn unit_scale_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    let s = (3.0 / dim as f64).sqrt();
    random_vector(rng, dim).into_iter().map(|x| x * s).collect()
}

pub fn words(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

/// Random store whose current vectors have drifted away from the originals
/// when `drift > 0`.
pub fn random_store<R: Rng>(rng: &mut R, n: usize, dim: usize, drift: f64) -> EmbeddingStore {
    let rows: Vec<(String, Vec<f64>)> = words(n).into_iter().map(|w| (w, random_vector(rng, dim))).collect();
    let mut store = EmbeddingStore::from_rows(rows).unwrap();
    if drift > 0.0 {
        for r in 0..n {
            for x in store.vector_mut(r) {
                *x += rng.gen_range(-drift..drift);
            }
        }
    }
    store
}

/// Relative error between the analytic gradient of `f` and central finite
/// differences over every coordinate of `rows`. `None` when a perturbation
/// changes the set of active hinge terms, i.e. the instance sits on a kink.
pub fn fd_relative_error<F>(store: &mut EmbeddingStore, rows: &[usize], f: F) -> Option<f64>
where
    F: Fn(&EmbeddingStore) -> LossResult,
{
    let base = f(store);
    let rows: BTreeSet<usize> = rows.iter().copied().collect();
    let mut diff2 = 0.0;
    let mut fd2 = 0.0;
    let mut an2 = 0.0;
    for &r in &rows {
        let analytic = base
            .grad(r)
            .map(<[f64]>::to_vec)
            .unwrap_or_else(|| vec![0.0; store.dim()]);
        for k in 0..store.dim() {
            let x = store.vector(r)[k];
            store.vector_mut(r)[k] = x + FD_STEP;
            let plus = f(store);
            store.vector_mut(r)[k] = x - FD_STEP;
            let minus = f(store);
            store.vector_mut(r)[k] = x;
            if plus.active_terms != base.active_terms || minus.active_terms != base.active_terms {
                return None;
            }
            let fd = (plus.loss - minus.loss) / (2.0 * FD_STEP);
            diff2 += (fd - analytic[k]).powi(2);
            fd2 += fd * fd;
            an2 += analytic[k] * analytic[k];
        }
    }
    let scale = fd2.sqrt().max(an2.sqrt());
    Some(if scale == 0.0 { 0.0 } else { diff2.sqrt() / scale })
}

pub type KernelCase = Box<dyn Fn(&EmbeddingStore) -> LossResult>;

/// One random instance of a kernel: the loss closure and the rows it reads.
pub fn kernel_instance<R: Rng>(kernel: &str, rng: &mut R) -> (EmbeddingStore, Vec<usize>, KernelCase) {
    let dim = rng.gen_range(5..=50);
    let mut store = random_store(rng, 8, dim, 0.3);
    let mut rows: Vec<usize> = (0..8).collect();
    for i in (1..rows.len()).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    let m: f64 = rng.gen_range(0.1..1.0);
    let m2: f64 = rng.gen_range(0.0..0.5);
    let w: f64 = rng.gen_range(0.5..2.0);
    let (a, b, c) = (rows[0], rows[1], rows[2]);
    let rest: Vec<usize> = rows[3..3 + rng.gen_range(1..=4)].to_vec();
    let mut touched = vec![a, b, c];
    touched.extend(&rest);
    let case: KernelCase = match kernel {
        "contrastive" => {
            let similar = rng.gen_bool(0.5);
            if !similar {
                pull_close(&mut store, a, b, rng);
            }
            Box::new(move |s| loss::contrastive_loss(s, a, b, similar, m))
        }
        "triplet_attract" => Box::new(move |s| loss::triplet_attract_loss(s, a, b, &rest, m)),
        "triplet_repel" => Box::new(move |s| loss::triplet_repel_loss(s, a, b, &rest, m)),
        "hypernym_triplet" => Box::new(move |s| loss::hypernym_triplet_loss(s, a, b, &rest, m)),
        "quadruplet" => {
            let m_syn = m2;
            Box::new(move |s| loss::quadruplet_hierarchy_loss(s, a, b, c, &rest, m_syn, m))
        }
        "preservation" => {
            let rows = touched.clone();
            Box::new(move |s| loss::preservation_loss(s, &rows, w))
        }
        "attract_repel_reg" => {
            let rows = touched.clone();
            Box::new(move |s| loss::attract_repel_reg_loss(s, &rows, w))
        }
        "counterfit_synonym" => Box::new(move |s| loss::counterfit_synonym_loss(s, a, b, m)),
        "counterfit_antonym" => {
            pull_close(&mut store, a, b, rng);
            Box::new(move |s| loss::counterfit_antonym_loss(s, a, b, m2))
        }
        "counterfit_preserve" => {
            let nbrs: Vec<(usize, f64)> = rest
                .iter()
                .map(|&j| (j, (store.distance(a, j) - rng.gen_range(-0.1..0.3)).max(0.0)))
                .collect();
            Box::new(move |s| loss::counterfit_preserve_loss(s, a, &nbrs))
        }
        "asymmetric_norm" => {
            let scale = rng.gen_range(1.2..3.0);
            for x in store.vector_mut(a) {
                *x *= scale;
            }
            Box::new(move |s| loss::asymmetric_norm_loss(s, a, b, w).unwrap())
        }
        other => panic!("unknown kernel {other}"),
    };
    (store, touched, case)
}

fn pull_close<R: Rng>(store: &mut EmbeddingStore, a: usize, b: usize, rng: &mut R) {
    let target: Vec<f64> = store.vector(a).iter().map(|x| x + rng.gen_range(-0.2..0.2)).collect();
    store.vector_mut(b).copy_from_slice(&target);
}

pub const KERNELS: [&str; 11] = [
    "contrastive",
    "triplet_attract",
    "triplet_repel",
    "hypernym_triplet",
    "quadruplet",
    "preservation",
    "attract_repel_reg",
    "counterfit_synonym",
    "counterfit_antonym",
    "counterfit_preserve",
    "asymmetric_norm",
];

/// Worst relative error over `FD_INSTANCES` active, kink-free instances.
pub fn worst_fd_error(kernel: &str, seed: u64) -> (f64, usize) {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < FD_INSTANCES {
        attempts += 1;
        assert!(attempts < 50 * FD_INSTANCES, "{kernel}: too few usable instances");
        let (mut store, rows, f) = kernel_instance(kernel, &mut rng);
        if f(&store).active_terms == 0 && f(&store).loss == 0.0 {
            continue;
        }
        if let Some(err) = fd_relative_error(&mut store, &rows, &f) {
            worst = worst.max(err);
            accepted += 1;
        }
    }
    (worst, accepted)
}

/// 60-word, 10-d fixture with 20 synonym, 10 antonym and 15 direct
/// hypernym pairs over ten categories. Each category has a hypernym, a
/// synonym pair `syn_a`/`syn_b` (both under the hypernym in the first five
/// categories, only `syn_a` in the rest), a second synonym pair whose first
/// member is an antonym of `syn_a`, and one unconstrained distractor.
/// Category members start clustered around a shared centroid.
pub struct HierarchyFixture {
    pub store: EmbeddingStore,
    pub constraints: ConstraintSet,
}

pub fn hierarchy_fixture(seed: u64) -> HierarchyFixture {
    let mut rng = rng(seed);
    let dim = 10;
    let mut rows = Vec::new();
    for c in 0..10 {
        let centroid = unit_scale_vector(&mut rng, dim);
        for name in ["hyper", "syn_a", "syn_b", "opp_a", "opp_b", "other"] {
            let v: Vec<f64> = centroid.iter().map(|x| x + rng.gen_range(-0.2..0.2)).collect();
            rows.push((format!("{name}{c}"), v));
        }
    }
    let store = EmbeddingStore::from_rows(rows).unwrap();
    let r = |w: &str, c: usize| store.row_of(&format!("{w}{c}")).unwrap();
    let mut cs = ConstraintSet::new();
    for c in 0..10 {
        cs.insert(PairRelation::Synonym, r("syn_a", c), r("syn_b", c));
        cs.insert(PairRelation::Synonym, r("opp_a", c), r("opp_b", c));
        cs.insert(PairRelation::Hypernym, r("syn_a", c), r("hyper", c));
        if c < 5 {
            cs.insert(PairRelation::Hypernym, r("syn_b", c), r("hyper", c));
        }
        cs.insert(PairRelation::Antonym, r("syn_a", c), r("opp_a", c));
    }
    HierarchyFixture { store, constraints: cs }
}

/// 27-node taxonomy: 3 roots, 2 children each, 3 grandchildren per child,
/// giving 24 direct hyponym-hypernym pairs. Siblings under a child are
/// synonyms; the two children of a root are antonyms.
pub fn taxonomy_fixture(seed: u64) -> (EmbeddingStore, ConstraintSet, Vec<(usize, usize)>) {
    let mut rng = rng(seed);
    let dim = 10;
    let mut rows = Vec::new();
    for r in 0..3 {
        rows.push((format!("root{r}"), unit_scale_vector(&mut rng, dim)));
        for c in 0..2 {
            rows.push((format!("node{r}_{c}"), unit_scale_vector(&mut rng, dim)));
            for g in 0..3 {
                rows.push((format!("leaf{r}_{c}_{g}"), unit_scale_vector(&mut rng, dim)));
            }
        }
    }
    let store = EmbeddingStore::from_rows(rows).unwrap();
    let row = |w: String| store.row_of(&w).unwrap();
    let mut cs = ConstraintSet::new();
    let mut direct = Vec::new();
    for r in 0..3 {
        let root = row(format!("root{r}"));
        for c in 0..2 {
            let node = row(format!("node{r}_{c}"));
            direct.push((node, root));
            for g in 0..3 {
                let leaf = row(format!("leaf{r}_{c}_{g}"));
                direct.push((leaf, node));
                if g > 0 {
                    cs.insert(PairRelation::Synonym, row(format!("leaf{r}_{c}_{}", g - 1)), leaf);
                }
            }
        }
        cs.insert(
            PairRelation::Antonym,
            row(format!("node{r}_0")),
            row(format!("node{r}_1")),
        );
    }
    for &(hypo, hyper) in &direct {
        cs.insert(PairRelation::Hypernym, hypo, hyper);
    }
    (store, cs, direct)
}

/// Fraction of `(hypo, hyper)` pairs with a strictly shorter hyponym.
pub fn norm_accuracy(store: &EmbeddingStore, pairs: &[(usize, usize)]) -> f64 {
    let ok = pairs.iter().filter(|&&(a, b)| store.norm(a) < store.norm(b)).count();
    ok as f64 / pairs.len() as f64
}

/// Audit for the hierarchy fixture: share of quadruplets ordered by the
/// hierarchy margin, and share of words (with both synonyms and antonyms)
/// whose mean synonym distance is below their mean antonym distance.
pub fn hierarchy_audit(store: &EmbeddingStore, cs: &ConstraintSet) -> (f64, f64) {
    let quads = hierfit::specialize::quadruplet_instances(cs);
    let mut ordered = 0;
    for q in &quads {
        if let hierfit::sampler::Instance::Quad {
            anchor,
            synonym,
            hypernym,
        } = *q
        {
            if store.distance(anchor, synonym) + 0.001 <= store.distance(anchor, hypernym) {
                ordered += 1;
            }
        }
    }
    let mut words: BTreeSet<usize> = BTreeSet::new();
    for &(a, b) in cs.synonyms() {
        words.insert(a);
        words.insert(b);
    }
    let mut eligible = 0;
    let mut good = 0;
    for &w in &words {
        let syn: Vec<f64> = cs
            .synonyms()
            .iter()
            .filter_map(|&(a, b)| (a == w).then_some(b).or((b == w).then_some(a)))
            .map(|o| store.distance(w, o))
            .collect();
        let ant: Vec<f64> = cs
            .antonyms()
            .iter()
            .filter_map(|&(a, b)| (a == w).then_some(b).or((b == w).then_some(a)))
            .map(|o| store.distance(w, o))
            .collect();
        if syn.is_empty() || ant.is_empty() {
            continue;
        }
        eligible += 1;
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        if mean(&syn) < mean(&ant) {
            good += 1;
        }
    }
    (ordered as f64 / quads.len() as f64, good as f64 / eligible as f64)
}
