//! Semantic specialization of static word embeddings with lexical constraints.
//!
//! The crate loads pre-trained vectors ([`embedding`]), ingests synonym,
//! antonym and hypernym pairs ([`constraints`]), and refines the vector space
//! with margin-based metric-learning losses ([`loss`]) over online-sampled
//! mini-batches ([`sampler`]), driven by AdaGrad ([`specialize`]). The
//! [`eval`] module scores the result on similarity, hypernymy-direction,
//! hypernymy-detection and graded-entailment protocols.

pub mod cli;
pub mod constraints;
pub mod embedding;
pub mod error;
pub mod eval;
pub mod loss;
pub mod sampler;
pub mod specialize;

pub use constraints::{ConstraintSet, ConstraintStats, PairRelation};
pub use embedding::{load_embeddings, save_embeddings, EmbeddingStore, Format, LookupResult, Space};
pub use error::{Error, Result};
pub use eval::{EvalReport, RelationDataset, SimilarityDataset};
pub use loss::{LossResult, Margins};
pub use specialize::{specialize, Preset, SpecializeConfig, TrainLog};
