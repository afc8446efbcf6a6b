//! Dense word-embedding storage.
//!
//! An [`EmbeddingStore`] keeps two matrices of identical shape: the `current`
//! vectors that specialization updates in place, and the `original` vectors
//! frozen at load time. Distances are cosine based and computed on the raw
//! vectors every time; nothing is renormalized, because vector norms carry the
//! hypernymy-direction signal.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Text serialization formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    /// `token v1 ... vdim` per line, no header.
    GloveText,
    /// `count dim` header line followed by GloVe-style records.
    Word2VecText,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "glove-text" | "glove" => Ok(Format::GloveText),
            "word2vec-text" | "word2vec" => Ok(Format::Word2VecText),
            other => Err(Error::Config(format!("unknown embedding format '{other}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::GloveText => "glove-text",
            Format::Word2VecText => "word2vec-text",
        })
    }
}

/// Which of the two matrices a query reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Current,
    Original,
}

/// Result of an OOV back-off lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupResult {
    pub row: Option<usize>,
    pub matched_token: Option<String>,
    /// Number of trailing characters removed before a match (0 = exact hit).
    pub truncation_depth: usize,
    pub covered: bool,
}

#[derive(Clone, Debug)]
pub struct EmbeddingStore {
    vocab: Vec<String>,
    index: HashMap<String, usize>,
    dim: usize,
    current: Vec<f64>,
    original: Vec<f64>,
    duplicates_dropped: usize,
}

impl EmbeddingStore {
    /// Builds a store from `(token, vector)` records. Later duplicates of a
    /// token are dropped and counted.
    pub fn from_rows<I, S>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut store = EmbeddingStore {
            vocab: Vec::new(),
            index: HashMap::new(),
            dim: 0,
            current: Vec::new(),
            original: Vec::new(),
            duplicates_dropped: 0,
        };
        for (token, vector) in rows {
            store.push(token.into(), vector)?;
        }
        if store.vocab.is_empty() {
            return Err(Error::Empty("no embedding records".into()));
        }
        Ok(store)
    }

    fn push(&mut self, token: String, vector: Vec<f64>) -> Result<bool> {
        if self.vocab.is_empty() && self.dim == 0 {
            if vector.is_empty() {
                return Err(Error::Empty(format!("vector for '{token}' has no components")));
            }
            self.dim = vector.len();
        }
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config(format!("non-finite component in '{token}'")));
        }
        if vector.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroVector);
        }
        if self.index.contains_key(&token) {
            self.duplicates_dropped += 1;
            return Ok(false);
        }
        self.index.insert(token.clone(), self.vocab.len());
        self.vocab.push(token);
        self.current.extend_from_slice(&vector);
        self.original.extend_from_slice(&vector);
        Ok(true)
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn token(&self, row: usize) -> &str {
        &self.vocab[row]
    }

    pub fn row_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// Number of duplicate records skipped while building the store.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    pub fn check_row(&self, row: usize) -> Result<()> {
        if row < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidRow { row, len: self.len() })
        }
    }

    pub fn vector(&self, row: usize) -> &[f64] {
        &self.current[row * self.dim..(row + 1) * self.dim]
    }

    pub fn original_vector(&self, row: usize) -> &[f64] {
        &self.original[row * self.dim..(row + 1) * self.dim]
    }

    pub fn vector_in(&self, row: usize, space: Space) -> &[f64] {
        match space {
            Space::Current => self.vector(row),
            Space::Original => self.original_vector(row),
        }
    }

    /// Mutable access to a current vector. The original snapshot has no
    /// mutable accessor.
    pub fn vector_mut(&mut self, row: usize) -> &mut [f64] {
        let dim = self.dim;
        &mut self.current[row * dim..(row + 1) * dim]
    }

    pub fn current_matrix(&self) -> &[f64] {
        &self.current
    }

    pub fn original_matrix(&self) -> &[f64] {
        &self.original
    }

    pub(crate) fn current_matrix_mut(&mut self) -> &mut [f64] {
        &mut self.current
    }

    /// Makes the current vectors the new frozen snapshot.
    pub fn freeze_current(&mut self) {
        self.original.copy_from_slice(&self.current);
    }

    /// Current-space cosine distance between two rows.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        cosine_distance(self.vector(a), self.vector(b))
    }

    pub fn cosine(&self, a: usize, b: usize) -> f64 {
        cosine_similarity(self.vector(a), self.vector(b))
    }

    pub fn norm(&self, row: usize) -> f64 {
        norm(self.vector(row))
    }

    /// Looks `token` up, stripping trailing characters until a vocabulary
    /// entry matches.
    pub fn backoff_lookup(&self, token: &str) -> LookupResult {
        let mut probe = token.trim();
        let mut depth = 0;
        while !probe.is_empty() {
            if let Some(row) = self.row_of(probe) {
                return LookupResult {
                    row: Some(row),
                    matched_token: Some(probe.to_owned()),
                    truncation_depth: depth,
                    covered: true,
                };
            }
            let cut = probe.char_indices().next_back().map(|(i, _)| i).unwrap_or(0);
            probe = &probe[..cut];
            depth += 1;
        }
        LookupResult {
            row: None,
            matched_token: None,
            truncation_depth: depth,
            covered: false,
        }
    }

    /// Resolves a token either exactly or through back-off.
    pub fn resolve(&self, token: &str, use_backoff: bool) -> Option<usize> {
        if use_backoff {
            self.backoff_lookup(token).row
        } else {
            self.row_of(token.trim())
        }
    }

    /// The `k` rows most cosine-similar to `row`, excluding `row` itself.
    /// Ties are broken by ascending row index.
    pub fn nearest_neighbors(&self, row: usize, k: usize, space: Space) -> Result<Vec<(usize, f64)>> {
        self.check_row(row)?;
        if k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        let query = self.vector_in(row, space);
        let mut scored: Vec<(usize, f64)> = (0..self.len())
            .filter(|&r| r != row)
            .map(|r| (r, cosine_similarity(query, self.vector_in(r, space))))
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        scored.truncate(k);
        Ok(scored)
    }
}

pub fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

/// Cosine similarity; 0 when either vector has zero norm.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> f64 {
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    (dot(u, v) / (nu * nv)).clamp(-1.0, 1.0)
}

/// `1 - cos(u, v)` without validation.
pub fn cosine_distance(u: &[f64], v: &[f64]) -> f64 {
    if u == v {
        return 0.0;
    }
    1.0 - cosine_similarity(u, v)
}

/// Cosine distance `1 - cos(u, v)`, in `[0, 2]`.
pub fn distance(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    if norm(u) == 0.0 || norm(v) == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(cosine_distance(u, v))
}

pub fn load_embeddings(path: impl AsRef<Path>, format: Format) -> Result<EmbeddingStore> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_embeddings(BufReader::new(file), format, path)
}

pub fn read_embeddings<R: BufRead>(reader: R, format: Format, path: &Path) -> Result<EmbeddingStore> {
    let mut store = EmbeddingStore {
        vocab: Vec::new(),
        index: HashMap::new(),
        dim: 0,
        current: Vec::new(),
        original: Vec::new(),
        duplicates_dropped: 0,
    };
    let mut declared_count = None;
    let mut records = 0usize;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        if format == Format::Word2VecText && declared_count.is_none() {
            let mut fields = line.split_whitespace();
            let count = fields.next().and_then(|f| f.parse::<usize>().ok());
            let dim = fields.next().and_then(|f| f.parse::<usize>().ok());
            match (count, dim, fields.next()) {
                (Some(count), Some(dim), None) if dim > 0 => {
                    declared_count = Some(count);
                    store.dim = dim;
                }
                _ => return Err(Error::parse(path, lineno, "expected 'count dim' header")),
            }
            continue;
        }

        let mut fields = line.split_whitespace();
        let token = fields.next().expect("non-empty line has a field");
        let vector = fields
            .map(|f| match f.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                Ok(_) => Err(Error::parse(path, lineno, format!("non-finite value '{f}'"))),
                Err(_) => Err(Error::parse(path, lineno, format!("invalid number '{f}'"))),
            })
            .collect::<Result<Vec<f64>>>()?;
        records += 1;
        store.push(token.to_owned(), vector).map_err(|e| match e {
            Error::DimensionMismatch { expected, got } => {
                Error::parse(path, lineno, format!("expected {expected} components, found {got}"))
            }
            Error::ZeroVector => Error::parse(path, lineno, format!("zero vector for '{token}'")),
            other => Error::parse(path, lineno, other.to_string()),
        })?;
    }

    if let Some(count) = declared_count {
        if count != records {
            return Err(Error::parse(
                path,
                1,
                format!("header declares {count} records, found {records}"),
            ));
        }
    }
    if store.vocab.is_empty() {
        return Err(Error::Empty(format!("{} has no embedding records", path.display())));
    }
    if store.duplicates_dropped > 0 {
        log::warn!(
            "{}: dropped {} duplicate token(s); first occurrence kept",
            path.display(),
            store.duplicates_dropped
        );
    }
    Ok(store)
}

pub fn save_embeddings(store: &EmbeddingStore, path: impl AsRef<Path>, format: Format) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_embeddings(store, &mut out, format).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

/// Writes the current vectors with 9 significant digits per component.
pub fn write_embeddings<W: Write>(store: &EmbeddingStore, out: &mut W, format: Format) -> std::io::Result<()> {
    if store.is_empty() {
        return Err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "cannot save an empty store",
        ));
    }
    if format == Format::Word2VecText {
        writeln!(out, "{} {}", store.len(), store.dim())?;
    }
    for (row, token) in store.vocab().iter().enumerate() {
        out.write_all(token.as_bytes())?;
        for x in store.vector(row) {
            write!(out, " {x:.8e}")?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn read(text: &str, format: Format) -> Result<EmbeddingStore> {
        read_embeddings(Cursor::new(text), format, Path::new("mem"))
    }

    #[test]
    fn glove_three_lines() {
        let s = read("a 1 2 3 4\nb 0 1 0 0\nc 1 1 1 1\n", Format::GloveText).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.dim(), 4);
        for (i, t) in s.vocab().iter().enumerate() {
            assert_eq!(s.row_of(t), Some(i));
        }
    }

    #[test]
    fn word2vec_header() {
        let s = read("2 3\nx 1 0 0\ny 0 1 0\r\n", Format::Word2VecText).unwrap();
        assert_eq!((s.len(), s.dim()), (2, 3));
    }

    #[test]
    fn bad_number_reports_line() {
        match read("a 1 2 3\nb 1 2 x\n", Format::GloveText) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_and_nonfinite() {
        assert!(matches!(
            read("a 1 2 3\nb 1 2\n", Format::GloveText),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read("a 1 inf 3\n", Format::GloveText),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read("a 0 0 0\n", Format::GloveText),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(read("", Format::GloveText), Err(Error::Empty(_))));
        assert!(read("3 2\na 1 2\n", Format::Word2VecText).is_err());
    }

    #[test]
    fn duplicates_first_wins() {
        let s = read("a 1 0\nb 0 1\na 5 5\n", Format::GloveText).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.duplicates_dropped(), 1);
        assert_eq!(s.vector(0), &[1.0, 0.0]);
    }

    #[test]
    fn glove_output_has_no_header() {
        let s = read("tok 1 2\n", Format::GloveText).unwrap();
        let mut buf = Vec::new();
        write_embeddings(&s, &mut buf, Format::GloveText).unwrap();
        assert_eq!(buf[0], b't');
    }

    #[test]
    fn distance_cases() {
        let u = [1.0, 2.0, 3.0];
        assert_eq!(distance(&u, &u).unwrap(), 0.0);
        assert!((distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((distance(&[1.0, -2.0], &[-1.0, 2.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(distance(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn backoff() {
        let s = EmbeddingStore::from_rows(vec![("running", vec![1.0, 0.0]), ("run", vec![0.0, 1.0])]).unwrap();
        let hit = s.backoff_lookup("running");
        assert_eq!((hit.row, hit.truncation_depth), (Some(0), 0));
        assert_eq!(hit.matched_token.as_deref(), Some("running"));
        let r = s.backoff_lookup("runz");
        assert_eq!((r.row, r.truncation_depth), (Some(1), 1));
        assert_eq!(r.matched_token.as_deref(), Some("run"));
        let miss = s.backoff_lookup("qqq");
        assert!(!miss.covered && miss.row.is_none());
        assert!(miss.truncation_depth <= 3);
    }

    #[test]
    fn neighbors_parallel_first() {
        let s = EmbeddingStore::from_rows(vec![
            ("a", vec![1.0, 2.0]),
            ("b", vec![2.0, 4.0]),
            ("c", vec![-1.0, 0.5]),
        ])
        .unwrap();
        let nn = s.nearest_neighbors(0, 10, Space::Current).unwrap();
        assert_eq!(nn.len(), 2);
        assert_eq!(nn[0].0, 1);
        assert!((nn[0].1 - 1.0).abs() < 1e-12);
        assert!(s.nearest_neighbors(0, 0, Space::Current).is_err());
        assert!(s.nearest_neighbors(9, 1, Space::Current).is_err());
    }
}
