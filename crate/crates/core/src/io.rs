//! Loading the JSON file formats.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{coefficient_names, AEmbedding, AlgebraJson, FiniteAlgebra};
use crate::congruence::{Congruence, CongruenceJson};
use crate::equations::{EqSystem, SystemJson};
use crate::freealg::Family;
use crate::geometry::{AlgebraicSet, PointsJson};
use crate::signature::{Signature, SignatureJson};
use crate::{Error, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_signature(path: &Path) -> Result<Signature> {
    let raw: SignatureJson = read_json(path)?;
    Signature::try_from(raw)
}

/// An algebra file, with its coefficient embedding when it names one.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    /// The algebra in its own language.
    pub plain: Arc<FiniteAlgebra>,
    pub embedding: Option<AEmbedding>,
}

impl LoadedAlgebra {
    /// The working algebra: the A-algebra when an embedding is present.
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        match &self.embedding {
            Some(e) => &e.codomain,
            None => &self.plain,
        }
    }
}

/// Reads an algebra; `embedding.of` is resolved against the file's directory.
pub fn load_algebra(path: &Path) -> Result<LoadedAlgebra> {
    let raw: AlgebraJson = read_json(path)?;
    let plain = Arc::new(FiniteAlgebra::from_json(&raw)?);
    let embedding = match &raw.embedding {
        None => None,
        Some(e) => {
            let a_path = sibling(path, &e.of);
            let a_raw: AlgebraJson = read_json(&a_path)?;
            if a_raw.embedding.is_some() {
                return Err(Error::InvalidEmbedding(format!(
                    "coefficient algebra {} itself names an embedding",
                    a_path.display()
                )));
            }
            let a = Arc::new(FiniteAlgebra::from_json(&a_raw)?);
            let names = coefficient_names(a.size());
            Some(AEmbedding::attach(a, &plain, e.map.clone(), &names)?)
        }
    };
    Ok(LoadedAlgebra { plain, embedding })
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    match path.parent() {
        Some(dir) => dir.join(name),
        None => PathBuf::from(name),
    }
}

pub fn load_system(path: &Path, sig: Arc<Signature>) -> Result<EqSystem> {
    let raw: SystemJson = read_json(path)?;
    EqSystem::from_json(&raw, sig)
}

pub fn load_points(path: &Path) -> Result<AlgebraicSet> {
    let raw: PointsJson = read_json(path)?;
    raw.to_set()
}

/// `{"pairs":[[0,2],[1,3]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsJson {
    pub pairs: Vec<(usize, usize)>,
}

pub fn load_pairs(path: &Path, m: usize) -> Result<Vec<(usize, usize)>> {
    let raw: PairsJson = read_json(path)?;
    if let Some(&(a, b)) = raw.pairs.iter().find(|&&(a, b)| a >= m || b >= m) {
        return Err(Error::InvalidPartition(format!(
            "pair ({a},{b}) outside a carrier of size {m}"
        )));
    }
    Ok(raw.pairs)
}

/// `{"chain":[{"blocks":[[0],[1]]},{"blocks":[[0,1]]}]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub chain: Vec<CongruenceJson>,
}

pub fn load_chain(path: &Path, m: usize) -> Result<Vec<Congruence>> {
    let raw: ChainJson = read_json(path)?;
    raw.chain.iter().map(|c| c.to_congruence(m)).collect()
}

/// Either every file names an embedding of one shared `A`, or none does.
pub fn load_family(paths: &[PathBuf]) -> Result<Family> {
    let loaded = paths
        .iter()
        .map(|p| load_algebra(p))
        .collect::<Result<Vec<_>>>()?;
    let with = loaded.iter().filter(|l| l.embedding.is_some()).count();
    if with == 0 {
        return Family::plain(loaded.iter().map(|l| l.plain.clone()).collect());
    }
    if with < loaded.len() {
        let k = loaded.iter().position(|l| l.embedding.is_none()).expect("counted");
        return Err(Error::MissingEmbedding(paths[k].display().to_string()));
    }
    let embeddings: Vec<AEmbedding> = loaded.into_iter().filter_map(|l| l.embedding).collect();
    let a = embeddings[0].domain.clone();
    Family::with_coefficients(a, embeddings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::cyclic_group;
    use std::io::Write;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    #[test]
    fn algebra_with_embedding() {
        let dir = tempfile::tempdir().unwrap();
        let z2 = serde_json::to_string(&cyclic_group(2).to_json()).unwrap();
        write(dir.path(), "z2.json", &z2);
        let mut z4 = cyclic_group(4).to_json();
        z4.embedding = Some(crate::algebra::EmbeddingJson {
            of: "z2.json".into(),
            map: vec![0, 2],
        });
        let p = write(dir.path(), "z4.json", &serde_json::to_string(&z4).unwrap());
        let l = load_algebra(&p).unwrap();
        let e = l.embedding.as_ref().unwrap();
        assert_eq!(l.algebra().sig().constants(), &["zero", "c0", "c1"]);
        assert_eq!(e.map, vec![0, 2]);
        let fam = load_family(&[p.clone(), p]).unwrap();
        assert_eq!(fam.members().len(), 2);
    }

    #[test]
    fn error_codes() {
        let dir = tempfile::tempdir().unwrap();
        let missing = load_algebra(&dir.path().join("nope.json")).unwrap_err();
        assert_eq!(missing.code(), "missing_file");
        let p = write(dir.path(), "bad.json", "{\"size\": ");
        assert_eq!(load_algebra(&p).unwrap_err().code(), "malformed_json");
    }
}
