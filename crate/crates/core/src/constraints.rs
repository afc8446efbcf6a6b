//! Lexical constraint pairs restricted to an embedding vocabulary.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use crate::embedding::EmbeddingStore;
use crate::error::{Error, Result};

pub type Pair = (usize, usize);

/// Relation carried by a pair file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRelation {
    Synonym,
    Antonym,
    /// Ordered `(hyponym, hypernym)`.
    Hypernym,
}

impl PairRelation {
    pub fn is_symmetric(self) -> bool {
        !matches!(self, PairRelation::Hypernym)
    }

    pub fn name(self) -> &'static str {
        match self {
            PairRelation::Synonym => "synonyms",
            PairRelation::Antonym => "antonyms",
            PairRelation::Hypernym => "hypernyms",
        }
    }
}

impl FromStr for PairRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "syn" | "synonym" | "synonyms" => Ok(PairRelation::Synonym),
            "ant" | "antonym" | "antonyms" => Ok(PairRelation::Antonym),
            "hyper" | "hypernym" | "hypernyms" => Ok(PairRelation::Hypernym),
            other => Err(Error::Config(format!("unknown relation '{other}'"))),
        }
    }
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstraintStats {
    pub synonyms: usize,
    pub antonyms: usize,
    pub direct_hypernyms: usize,
    pub indirect_hypernyms: usize,
    /// Pairs with at least one word outside the vocabulary.
    pub dropped_oov: usize,
    pub dropped_self: usize,
    /// Synonym pairs removed because the same pair is also an antonym pair.
    pub conflicts_resolved: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    synonyms: BTreeSet<Pair>,
    antonyms: BTreeSet<Pair>,
    direct_hypernyms: BTreeSet<Pair>,
    indirect_hypernyms: BTreeSet<Pair>,
    closure_computed: bool,
    dropped_oov: usize,
    dropped_self: usize,
    conflicts_resolved: usize,
}

fn canonical(a: usize, b: usize) -> Pair {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a pair of rows. Self pairs are counted and dropped.
    pub fn insert(&mut self, relation: PairRelation, a: usize, b: usize) {
        if a == b {
            self.dropped_self += 1;
            return;
        }
        match relation {
            PairRelation::Synonym => {
                let p = canonical(a, b);
                if self.antonyms.contains(&p) {
                    self.conflicts_resolved += 1;
                } else {
                    self.synonyms.insert(p);
                }
            }
            PairRelation::Antonym => {
                let p = canonical(a, b);
                if self.synonyms.remove(&p) {
                    self.conflicts_resolved += 1;
                }
                self.antonyms.insert(p);
            }
            PairRelation::Hypernym => {
                self.direct_hypernyms.insert((a, b));
                if self.closure_computed {
                    self.closure_computed = false;
                    self.indirect_hypernyms.clear();
                }
            }
        }
    }

    /// Reads a pair file, keeping only pairs whose words are both in the
    /// vocabulary (exact match). Returns a set holding just this relation.
    pub fn load_pairs(path: impl AsRef<Path>, relation: PairRelation, store: &EmbeddingStore) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_pairs(BufReader::new(file), relation, store, path)
    }

    pub fn read_pairs<R: BufRead>(
        reader: R,
        relation: PairRelation,
        store: &EmbeddingStore,
        path: &Path,
    ) -> Result<Self> {
        let mut set = ConstraintSet::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    path,
                    i + 1,
                    format!("expected 2 fields, found {}", fields.len()),
                ));
            }
            match (store.row_of(fields[0]), store.row_of(fields[1])) {
                (Some(a), Some(b)) => set.insert(relation, a, b),
                _ => set.dropped_oov += 1,
            }
        }
        Ok(set)
    }

    /// Merges another set into this one; antonymy wins over synonymy.
    pub fn merge(&mut self, other: ConstraintSet) {
        for &(a, b) in &other.antonyms {
            self.insert(PairRelation::Antonym, a, b);
        }
        for &(a, b) in &other.synonyms {
            self.insert(PairRelation::Synonym, a, b);
        }
        for &(a, b) in &other.direct_hypernyms {
            self.closure_computed &= self.direct_hypernyms.contains(&(a, b));
            self.insert(PairRelation::Hypernym, a, b);
        }
        if !self.closure_computed {
            self.indirect_hypernyms.clear();
        }
        self.dropped_oov += other.dropped_oov;
        self.dropped_self += other.dropped_self;
        self.conflicts_resolved += other.conflicts_resolved;
    }

    /// Computes and stores the transitive hypernym closure.
    pub fn compute_closure(&mut self, max_depth: Option<usize>) {
        self.indirect_hypernyms = hypernym_closure(&self.direct_hypernyms, max_depth);
        self.closure_computed = true;
    }

    pub fn synonyms(&self) -> &BTreeSet<Pair> {
        &self.synonyms
    }

    pub fn antonyms(&self) -> &BTreeSet<Pair> {
        &self.antonyms
    }

    pub fn direct_hypernyms(&self) -> &BTreeSet<Pair> {
        &self.direct_hypernyms
    }

    /// Closed hypernym set; empty until [`compute_closure`](Self::compute_closure) runs.
    pub fn indirect_hypernyms(&self) -> &BTreeSet<Pair> {
        &self.indirect_hypernyms
    }

    pub fn closure_computed(&self) -> bool {
        self.closure_computed
    }

    pub fn pairs(&self, relation: PairRelation) -> &BTreeSet<Pair> {
        match relation {
            PairRelation::Synonym => &self.synonyms,
            PairRelation::Antonym => &self.antonyms,
            PairRelation::Hypernym => &self.direct_hypernyms,
        }
    }

    pub fn is_synonym(&self, a: usize, b: usize) -> bool {
        self.synonyms.contains(&canonical(a, b))
    }

    pub fn is_antonym(&self, a: usize, b: usize) -> bool {
        self.antonyms.contains(&canonical(a, b))
    }

    /// True when either word is a (direct or closed) hypernym of the other.
    pub fn is_taxonomic(&self, a: usize, b: usize) -> bool {
        let hit = |s: &BTreeSet<Pair>| s.contains(&(a, b)) || s.contains(&(b, a));
        hit(&self.direct_hypernyms) || hit(&self.indirect_hypernyms)
    }

    /// Rows that must not serve as negatives for `anchor`: its synonyms and
    /// taxonomic relatives.
    pub fn is_positive_for(&self, anchor: usize, candidate: usize) -> bool {
        self.is_synonym(anchor, candidate) || self.is_taxonomic(anchor, candidate)
    }

    /// Hypernyms of each hyponym, from the direct set.
    pub fn direct_hypernym_map(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(hypo, hyper) in &self.direct_hypernyms {
            map.entry(hypo).or_default().push(hyper);
        }
        map
    }

    pub fn stats(&self) -> ConstraintStats {
        ConstraintStats {
            synonyms: self.synonyms.len(),
            antonyms: self.antonyms.len(),
            direct_hypernyms: self.direct_hypernyms.len(),
            indirect_hypernyms: self.indirect_hypernyms.len(),
            dropped_oov: self.dropped_oov,
            dropped_self: self.dropped_self,
            conflicts_resolved: self.conflicts_resolved,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.synonyms.is_empty() && self.antonyms.is_empty() && self.direct_hypernyms.is_empty()
    }
}

/// Transitive closure of ordered `(hyponym, hypernym)` pairs up to
/// `max_depth` hops (`None` = unbounded). Self pairs produced by cycles are
/// omitted.
pub fn hypernym_closure(direct: &BTreeSet<Pair>, max_depth: Option<usize>) -> BTreeSet<Pair> {
    let mut parents: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(hypo, hyper) in direct {
        parents.entry(hypo).or_default().push(hyper);
    }
    let limit = max_depth.unwrap_or(usize::MAX);
    let mut closure = BTreeSet::new();
    for &start in parents.keys() {
        let mut visited = BTreeSet::from([start]);
        let mut queue = VecDeque::from([(start, 0usize)]);
        while let Some((node, depth)) = queue.pop_front() {
            if depth >= limit {
                continue;
            }
            for &up in parents.get(&node).into_iter().flatten() {
                if visited.insert(up) {
                    closure.insert((start, up));
                    queue.push_back((up, depth + 1));
                }
            }
        }
    }
    closure
}
