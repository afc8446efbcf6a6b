//! Loss kernels over the cosine distance `D(u, v) = 1 - cos(u, v)`, each
//! returning its value together with analytic gradients with respect to the
//! current vectors of every participating row.
//!
//! All hinge terms use a zero subgradient at the boundary, so a term that
//! evaluates to exactly zero contributes nothing.

use std::collections::BTreeMap;

use crate::embedding::{cosine_similarity, dot, norm, EmbeddingStore};
use crate::error::{Error, Result};

/// Margins and loss weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Margins {
    pub m_syn: f64,
    pub m_ant: f64,
    pub m_hyp: f64,
    pub m_hie_syn: f64,
    pub m_hie_hyp: f64,
    /// Per-triplet preservation weight for the ATTRACT-REPEL family.
    pub m_reg: f64,
    /// Preservation weight for hierarchy-fitting.
    pub gamma_reg: f64,
    pub m_contrastive: f64,
    /// Weight of the asymmetric norm term.
    pub ad_weight: f64,
}

impl Default for Margins {
    fn default() -> Self {
        Margins {
            m_syn: 0.9,
            m_ant: 0.3,
            m_hyp: 0.6,
            m_hie_syn: 0.001,
            m_hie_hyp: 0.6,
            m_reg: 1e-9,
            gamma_reg: 0.001,
            m_contrastive: 0.9,
            ad_weight: 1.0,
        }
    }
}

impl Margins {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m_syn", self.m_syn),
            ("m_ant", self.m_ant),
            ("m_hyp", self.m_hyp),
            ("m_hie_syn", self.m_hie_syn),
            ("m_hie_hyp", self.m_hie_hyp),
            ("m_reg", self.m_reg),
            ("gamma_reg", self.gamma_reg),
            ("m_contrastive", self.m_contrastive),
            ("ad_weight", self.ad_weight),
        ];
        for (name, value) in fields {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::Config(format!(
                    "{name} must be a finite value >= 0, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Scalar loss with sparse per-row gradients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LossResult {
    pub loss: f64,
    /// Gradient with respect to the current vector of each row, ascending by row.
    pub grads: BTreeMap<usize, Vec<f64>>,
    /// Hinge terms that were strictly positive.
    pub active_terms: usize,
    /// Hinge terms evaluated.
    pub total_terms: usize,
}

impl LossResult {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_grad(&mut self, row: usize, scale: f64, g: &[f64]) {
        let entry = self.grads.entry(row).or_insert_with(|| vec![0.0; g.len()]);
        for (e, x) in entry.iter_mut().zip(g) {
            *e += scale * x;
        }
    }

    /// Accumulates another result into this one.
    pub fn merge(&mut self, other: LossResult) {
        self.loss += other.loss;
        self.active_terms += other.active_terms;
        self.total_terms += other.total_terms;
        for (row, g) in other.grads {
            self.add_grad(row, 1.0, &g);
        }
    }

    pub fn grad(&self, row: usize) -> Option<&[f64]> {
        self.grads.get(&row).map(Vec::as_slice)
    }
}

/// Gradient of `1 - cos(u, v)` with respect to `u`.
///
/// Exactly zero when `u == v` component-wise.
pub fn distance_grad(u: &[f64], v: &[f64]) -> Vec<f64> {
    if u == v {
        return vec![0.0; u.len()];
    }
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return vec![0.0; u.len()];
    }
    let cos = dot(u, v) / (nu * nv);
    u.iter()
        .zip(v)
        .map(|(&ui, &vi)| -(vi / (nu * nv) - cos * ui / (nu * nu)))
        .collect()
}

fn dist(store: &EmbeddingStore, a: usize, b: usize) -> f64 {
    store.distance(a, b)
}

/// Adds `scale * dD(a, b)` for both rows.
fn push_distance_grad(res: &mut LossResult, store: &EmbeddingStore, a: usize, b: usize, scale: f64) {
    if a == b {
        return;
    }
    let (u, v) = (store.vector(a), store.vector(b));
    res.add_grad(a, scale, &distance_grad(u, v));
    res.add_grad(b, scale, &distance_grad(v, u));
}

/// One hinge `max(0, margin + D(plus) - D(minus))`.
fn hinge(res: &mut LossResult, store: &EmbeddingStore, margin: f64, plus: (usize, usize), minus: (usize, usize)) {
    res.total_terms += 1;
    let term = margin + dist(store, plus.0, plus.1) - dist(store, minus.0, minus.1);
    if term > 0.0 {
        res.loss += term;
        res.active_terms += 1;
        push_distance_grad(res, store, plus.0, plus.1, 1.0);
        push_distance_grad(res, store, minus.0, minus.1, -1.0);
    }
}

/// Pairwise contrastive loss: `D` for similar pairs, `max(0, m - D)` otherwise.
pub fn contrastive_loss(store: &EmbeddingStore, x1: usize, x2: usize, similar: bool, m: f64) -> LossResult {
    let mut res = LossResult::new();
    res.total_terms = 1;
    let d = dist(store, x1, x2);
    if similar {
        res.loss = d;
        if d > 0.0 {
            res.active_terms = 1;
            push_distance_grad(&mut res, store, x1, x2, 1.0);
        }
    } else {
        let term = m - d;
        if term > 0.0 {
            res.loss = term;
            res.active_terms = 1;
            push_distance_grad(&mut res, store, x1, x2, -1.0);
        }
    }
    res
}

/// `sum_ns max(0, m + D(a, p) - D(a, ns))`.
pub fn triplet_attract_loss(
    store: &EmbeddingStore,
    anchor: usize,
    positive: usize,
    negatives: &[usize],
    m: f64,
) -> LossResult {
    let mut res = LossResult::new();
    for &ns in negatives {
        hinge(&mut res, store, m, (anchor, positive), (anchor, ns));
    }
    res
}

/// `sum_ps max(0, m + D(a, ps) - D(a, ant))`.
pub fn triplet_repel_loss(
    store: &EmbeddingStore,
    anchor: usize,
    antonym: usize,
    positives: &[usize],
    m: f64,
) -> LossResult {
    let mut res = LossResult::new();
    for &ps in positives {
        hinge(&mut res, store, m, (anchor, ps), (anchor, antonym));
    }
    res
}

/// Triplet loss on a direct hyponym-hypernym pair.
pub fn hypernym_triplet_loss(
    store: &EmbeddingStore,
    anchor: usize,
    hypernym: usize,
    negatives: &[usize],
    m: f64,
) -> LossResult {
    triplet_attract_loss(store, anchor, hypernym, negatives, m)
}

/// Quadruplet hierarchy loss over `(anchor, synonym, hypernym, negatives)`,
/// with the anchor/synonym-mirrored terms included.
pub fn quadruplet_hierarchy_loss(
    store: &EmbeddingStore,
    anchor: usize,
    synonym: usize,
    hypernym: usize,
    negatives: &[usize],
    m_hie_syn: f64,
    m_hie_hyp: f64,
) -> LossResult {
    let mut res = LossResult::new();
    hinge(&mut res, store, m_hie_syn, (anchor, synonym), (anchor, hypernym));
    for &ns in negatives {
        hinge(&mut res, store, m_hie_hyp, (anchor, synonym), (hypernym, ns));
    }
    hinge(&mut res, store, m_hie_syn, (synonym, anchor), (synonym, hypernym));
    for &ns in negatives {
        hinge(&mut res, store, m_hie_hyp, (synonym, anchor), (hypernym, ns));
    }
    res
}

fn drift_term(res: &mut LossResult, store: &EmbeddingStore, row: usize, weight: f64) {
    let cur = store.vector(row);
    let orig = store.original_vector(row);
    if cur == orig {
        return;
    }
    res.loss += weight * (1.0 - cosine_similarity(cur, orig));
    res.add_grad(row, weight, &distance_grad(cur, orig));
}

/// `gamma * sum_x D(current_x, original_x)` over the given rows.
pub fn preservation_loss(store: &EmbeddingStore, rows: &[usize], gamma: f64) -> LossResult {
    let mut res = LossResult::new();
    for &row in rows {
        drift_term(&mut res, store, row, gamma);
    }
    res
}

/// `m_reg` times the original-vs-current distance of each row of a triplet.
pub fn attract_repel_reg_loss(store: &EmbeddingStore, rows: &[usize], m_reg: f64) -> LossResult {
    preservation_loss(store, rows, m_reg)
}

/// Counter-fitting synonym term. The margin is read as a cosine-similarity
/// floor: `max(0, m_syn - cos(a, b))`, i.e. `max(0, D - (1 - m_syn))`.
pub fn counterfit_synonym_loss(store: &EmbeddingStore, a: usize, b: usize, m_syn: f64) -> LossResult {
    let mut res = LossResult::new();
    res.total_terms = 1;
    let term = dist(store, a, b) - (1.0 - m_syn);
    if term > 0.0 {
        res.loss = term;
        res.active_terms = 1;
        push_distance_grad(&mut res, store, a, b, 1.0);
    }
    res
}

/// Counter-fitting antonym term, `max(0, cos(a, b) - m_ant)`, i.e.
/// `max(0, (1 - m_ant) - D)`.
pub fn counterfit_antonym_loss(store: &EmbeddingStore, a: usize, b: usize, m_ant: f64) -> LossResult {
    let mut res = LossResult::new();
    res.total_terms = 1;
    let term = (1.0 - m_ant) - dist(store, a, b);
    if term > 0.0 {
        res.loss = term;
        res.active_terms = 1;
        push_distance_grad(&mut res, store, a, b, -1.0);
    }
    res
}

/// `sum_j max(0, D(a, j) - original_distance_j)` over precomputed neighbours.
pub fn counterfit_preserve_loss(store: &EmbeddingStore, anchor: usize, neighbors: &[(usize, f64)]) -> LossResult {
    let mut res = LossResult::new();
    for &(j, original) in neighbors {
        res.total_terms += 1;
        let term = dist(store, anchor, j) - original;
        if term > 0.0 {
            res.loss += term;
            res.active_terms += 1;
            push_distance_grad(&mut res, store, anchor, j, 1.0);
        }
    }
    res
}

/// Signed norm asymmetry `(|u| - |v|) / (|u| + |v|)`; negative when `u` is
/// the shorter vector.
pub fn asymmetric_score(u: &[f64], v: &[f64]) -> f64 {
    let (nu, nv) = (norm(u), norm(v));
    (nu - nv) / (nu + nv)
}

/// `weight * max(0, asymmetric_score(hypo, hyper))`.
pub fn asymmetric_norm_loss(store: &EmbeddingStore, hypo: usize, hyper: usize, weight: f64) -> Result<LossResult> {
    let (u, v) = (store.vector(hypo), store.vector(hyper));
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut res = LossResult::new();
    res.total_terms = 1;
    let score = (nu - nv) / (nu + nv);
    if score > 0.0 && hypo != hyper {
        res.loss = weight * score;
        res.active_terms = 1;
        let denom = (nu + nv) * (nu + nv);
        // d score / d|u| = 2|v| / (|u|+|v|)^2, d score / d|v| = -2|u| / (|u|+|v|)^2
        let du = weight * 2.0 * nv / denom / nu;
        let dv = -weight * 2.0 * nu / denom / nv;
        res.add_grad(hypo, du, u);
        res.add_grad(hyper, dv, v);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit vector at angle `theta` in the plane, padded to 2-d.
    fn at(theta: f64) -> Vec<f64> {
        vec![theta.cos(), theta.sin()]
    }

    /// Angle whose cosine distance from angle 0 equals `d`.
    fn angle_for(d: f64) -> f64 {
        (1.0 - d).acos()
    }

    fn store(rows: Vec<Vec<f64>>) -> EmbeddingStore {
        EmbeddingStore::from_rows(rows.into_iter().enumerate().map(|(i, v)| (format!("w{i}"), v))).unwrap()
    }

    #[test]
    fn contrastive_examples() {
        let s = store(vec![at(0.0), at(0.0), at(angle_for(1.2)), at(angle_for(0.4))]);
        let r = contrastive_loss(&s, 0, 1, true, 0.9);
        assert_eq!(r.loss, 0.0);
        assert!(r.grads.is_empty());
        assert_eq!(contrastive_loss(&s, 0, 2, false, 0.9).loss, 0.0);
        assert!((contrastive_loss(&s, 0, 3, false, 0.9).loss - 0.5).abs() < 1e-12);
    }

    #[test]
    fn triplet_examples() {
        // anchor 0, positive at D=0.2, negative at D=1.5
        let s = store(vec![at(0.0), at(angle_for(0.2)), at(-angle_for(1.5))]);
        assert_eq!(triplet_attract_loss(&s, 0, 1, &[2], 0.9).loss, 0.0);

        let s = store(vec![at(0.0), at(angle_for(0.8)), at(-angle_for(1.0))]);
        let r = triplet_attract_loss(&s, 0, 1, &[2], 0.9);
        assert!((r.loss - 0.7).abs() < 1e-12);
        assert_eq!(r.active_terms, 1);

        let s = store(vec![at(0.0), at(angle_for(0.1)), at(-angle_for(1.9))]);
        assert_eq!(triplet_repel_loss(&s, 0, 2, &[1], 0.3).loss, 0.0);
        let s = store(vec![at(0.0), at(angle_for(0.5)), at(-angle_for(0.6))]);
        assert!((triplet_repel_loss(&s, 0, 2, &[1], 0.3).loss - 0.2).abs() < 1e-12);

        let s = store(vec![at(0.0), at(angle_for(0.3)), at(-angle_for(1.0))]);
        assert_eq!(hypernym_triplet_loss(&s, 0, 1, &[2], 0.6).loss, 0.0);
        let s = store(vec![at(0.0), at(angle_for(0.5)), at(-angle_for(0.9))]);
        assert!((hypernym_triplet_loss(&s, 0, 1, &[2], 0.6).loss - 0.2).abs() < 1e-12);
    }

    #[test]
    fn inactive_triplet_has_no_grads() {
        let s = store(vec![at(0.0), at(angle_for(0.2)), at(-angle_for(1.5))]);
        let r = triplet_attract_loss(&s, 0, 1, &[2], 0.9);
        assert!(r.grads.is_empty());
        assert_eq!((r.active_terms, r.total_terms), (0, 1));
    }

    #[test]
    fn quadruplet_first_term() {
        // 3-d: anchor and synonym in the xy-plane, hypernym tilted toward z,
        // negative far from the hypernym.
        let a = vec![1.0, 0.0, 0.0];
        let t = angle_for(0.3);
        let syn = vec![t.cos(), t.sin(), 0.0];
        let h = angle_for(0.2);
        let hyp = vec![h.cos(), -h.sin() * 0.6, -h.sin() * 0.8];
        let ns = vec![-hyp[0], -hyp[1], -hyp[2]];
        let s = store(vec![a, syn, hyp, ns]);
        assert!((s.distance(0, 1) - 0.3).abs() < 1e-12);
        assert!((s.distance(0, 2) - 0.2).abs() < 1e-12);
        assert!(s.distance(1, 2) > 0.301);
        let r = quadruplet_hierarchy_loss(&s, 0, 1, 2, &[3], 0.001, 0.6);
        assert!((r.loss - 0.101).abs() < 1e-12, "{}", r.loss);
        assert_eq!(r.active_terms, 1);
    }

    #[test]
    fn preservation_examples() {
        let mut s = store(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(preservation_loss(&s, &[0, 1], 0.001).loss, 0.0);
        s.vector_mut(0).copy_from_slice(&[0.0, 2.0]);
        let r = preservation_loss(&s, &[0, 1], 0.001);
        assert!((r.loss - 0.001).abs() < 1e-15);
        assert!(r.grad(1).is_none());
        assert!((attract_repel_reg_loss(&s, &[0, 1], 1e-9).loss - 1e-9).abs() < 1e-20);
    }

    #[test]
    fn counterfit_examples() {
        let mut s = store(vec![at(0.0), at(1.0), at(2.0)]);
        s.vector_mut(1).copy_from_slice(&at(0.0));
        assert!(counterfit_synonym_loss(&s, 0, 1, 0.9).grads.is_empty());
        s.vector_mut(2).copy_from_slice(&at(std::f64::consts::PI));
        assert!(counterfit_antonym_loss(&s, 0, 2, 0.3).grads.is_empty());

        let mut s = store(vec![at(0.0), at(angle_for(0.3))]);
        assert_eq!(counterfit_preserve_loss(&s, 0, &[(1, 0.3 + 1e-12)]).loss, 0.0);
        s.vector_mut(1).copy_from_slice(&at(angle_for(0.5)));
        assert!((counterfit_preserve_loss(&s, 0, &[(1, 0.3)]).loss - 0.2).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_examples() {
        let s = store(vec![vec![1.0, 0.0], vec![0.0, 3.0], vec![0.0, 1.0]]);
        assert!((asymmetric_score(s.vector(0), s.vector(1)) + 0.5).abs() < 1e-15);
        assert_eq!(asymmetric_norm_loss(&s, 0, 1, 1.0).unwrap().loss, 0.0);
        assert_eq!(asymmetric_norm_loss(&s, 0, 2, 1.0).unwrap().loss, 0.0);
        let r = asymmetric_norm_loss(&s, 1, 0, 1.0).unwrap();
        assert!((r.loss - 0.5).abs() < 1e-15);
    }

    #[test]
    fn margins_validate() {
        assert!(Margins::default().validate().is_ok());
        let bad = Margins {
            m_syn: -0.1,
            ..Margins::default()
        };
        assert!(bad.validate().is_err());
    }
}
