//! Per-degree on-disk cache of counital filtration layers and primitives.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use primfree::bialg::Presentation;
use primfree::exactq::{QVector, Subspace};
use primfree::format::{rational_from_pair, rational_pair};
use primfree::graded::FiltrationTable;
use primfree::lie::Prepared;
use primfree::{Error, Result};
use serde::{Deserialize, Serialize};

type Basis = Vec<Vec<[i64; 2]>>;

#[derive(Serialize, Deserialize)]
struct DegreeFile {
    input_hash: String,
    degree: usize,
    ambient_dim: usize,
    layers: Vec<Basis>,
    primitives: Basis,
}

pub struct Cache {
    dir: PathBuf,
    hash: String,
}

fn encode(s: &Subspace) -> Result<Basis> {
    s.basis()
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| rational_pair(c).map(|(n, d)| [n, d]))
                .collect()
        })
        .collect()
}

fn decode(ambient: usize, basis: &Basis) -> Result<Subspace> {
    let vectors = basis
        .iter()
        .map(|v| v.iter().map(|[n, d]| rational_from_pair(*n, *d)).collect::<Result<QVector>>())
        .collect::<Result<Vec<_>>>()?;
    let s = Subspace::span(ambient, vectors.clone())?;
    if s.basis() != vectors.as_slice() {
        return Err(Error::Format("cached basis is not canonical".into()));
    }
    Ok(s)
}

impl Cache {
    pub fn new(dir: &Path, hash: &str) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
            hash: hash.to_string(),
        })
    }

    fn path(&self, n: usize) -> PathBuf {
        self.dir.join(format!("{}-{n}.json", self.hash))
    }

    fn load_degree(&self, h: &Presentation, n: usize) -> Option<(Vec<Subspace>, Subspace)> {
        let text = fs::read_to_string(self.path(n)).ok()?;
        let file: DegreeFile = serde_json::from_str(&text).ok()?;
        if file.input_hash != self.hash || file.degree != n || file.ambient_dim != h.dim(n) {
            return None;
        }
        let layers = file
            .layers
            .iter()
            .map(|b| decode(file.ambient_dim, b))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        let prims = decode(file.ambient_dim, &file.primitives).ok()?;
        Some((layers, prims))
    }

    /// Cached data for every degree, or `None` if any degree is missing or stale.
    pub fn load(&self, h: &Presentation) -> Option<Prepared> {
        let mut layers = Vec::new();
        let mut primitives = Vec::new();
        for n in 0..=h.max_degree() {
            let (l, p) = self.load_degree(h, n)?;
            layers.push(l);
            primitives.push(p);
        }
        let filtration = FiltrationTable::new(h.dims(), layers).ok()?;
        Some(Prepared {
            filtration,
            primitives,
        })
    }

    /// Writes one file per degree, each through a temporary file in the same
    /// directory that is then renamed into place.
    pub fn store(&self, prepared: &Prepared) -> Result<()> {
        let io = |e: std::io::Error| Error::Resource(format!("cache write failed: {e}"));
        for (n, prims) in prepared.primitives.iter().enumerate() {
            let file = DegreeFile {
                input_hash: self.hash.clone(),
                degree: n,
                ambient_dim: prims.ambient_dim(),
                layers: prepared
                    .filtration
                    .layers(n)
                    .iter()
                    .map(encode)
                    .collect::<Result<_>>()?,
                primitives: encode(prims)?,
            };
            let text = serde_json::to_string(&file).map_err(|e| Error::Format(e.to_string()))?;
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
            tmp.write_all(text.as_bytes()).map_err(io)?;
            tmp.persist(self.path(n)).map_err(|e| io(e.error))?;
        }
        Ok(())
    }
}
