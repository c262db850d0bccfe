//! On-disk structure-constant dumps.
//!
//! A dump is a single JSON text document with fields `p`, `dim`, `labels`,
//! optional `grading`, and `triples`: a list of quadruples `[i, j, k, c]`
//! with `i < j`, meaning the coefficient of basis vector `k` in `[b_i, b_j]`
//! is `c`.  Indices are 0-based positions into `labels`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::liecore::LieAlgebra;
use crate::sparse::SparseVec;

#[derive(Serialize, Deserialize)]
struct Dump {
    p: u64,
    dim: usize,
    labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<i64>>,
    triples: Vec<(usize, usize, usize, u64)>,
}

/// Serialize a structure-constant algebra to the dump document.
pub fn write_dump(alg: &LieAlgebra) -> String {
    let mut triples = Vec::new();
    for (&(i, j), v) in &alg.sc {
        for &(k, c) in &v.entries {
            triples.push((i, j, k, c));
        }
    }
    let dump = Dump {
        p: alg.p,
        dim: alg.dim,
        labels: alg.labels.clone(),
        grading: alg.grading.clone(),
        triples,
    };
    serde_json::to_string_pretty(&dump).expect("dump serialization cannot fail")
}

/// Parse a dump document back into an algebra.
pub fn read_dump(text: &str) -> Result<LieAlgebra, String> {
    let dump: Dump = serde_json::from_str(text).map_err(|e| format!("malformed dump: {e}"))?;
    if dump.labels.len() != dump.dim {
        return Err(format!(
            "dump has {} labels but dim {}",
            dump.labels.len(),
            dump.dim
        ));
    }
    let mut alg = LieAlgebra::new(dump.p, dump.labels);
    let mut per_pair: std::collections::BTreeMap<(usize, usize), Vec<(usize, u64)>> =
        std::collections::BTreeMap::new();
    for (i, j, k, c) in dump.triples {
        if i >= j || k >= dump.dim || c == 0 || c >= dump.p {
            return Err(format!("invalid triple [{i}, {j}, {k}, {c}]"));
        }
        per_pair.entry((i, j)).or_default().push((k, c));
    }
    for ((i, j), terms) in per_pair {
        alg.set_bracket(i, j, SparseVec::from_terms(terms, dump.p));
    }
    alg.grading = dump.grading;
    if let Some(g) = &alg.grading {
        if g.len() != alg.dim {
            return Err("grading length does not match dim".into());
        }
    }
    Ok(alg)
}

/// Cache directory precedence: explicit flag, then the CARTANLAB_CACHE
/// environment variable, then ./cache.
pub fn cache_dir(flag: Option<&str>) -> PathBuf {
    if let Some(d) = flag {
        return PathBuf::from(d);
    }
    if let Ok(d) = std::env::var("CARTANLAB_CACHE") {
        if !d.is_empty() {
            return PathBuf::from(d);
        }
    }
    PathBuf::from("cache")
}

/// Write a dump under its canonical key; returns the file path.
pub fn store(dir: &Path, key: &str, alg: &LieAlgebra) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{key}.json"));
    std::fs::write(&path, write_dump(alg))?;
    Ok(path)
}

/// Load a dump by key, if present.
pub fn load(dir: &Path, key: &str) -> Option<Result<LieAlgebra, String>> {
    let path = dir.join(format!("{key}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    Some(read_dump(&text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_witt;
    use crate::dpalg::Shape;

    #[test]
    fn dump_round_trip() {
        let alg = build_witt(&Shape::new(5, &[1])).to_lie_algebra().unwrap();
        let text = write_dump(&alg);
        let back = read_dump(&text).unwrap();
        assert_eq!(back.p, alg.p);
        assert_eq!(back.dim, alg.dim);
        assert_eq!(back.labels, alg.labels);
        assert_eq!(back.grading, alg.grading);
        assert_eq!(back.sc, alg.sc);
        // Serialization is stable.
        assert_eq!(text, write_dump(&back));
    }

    #[test]
    fn dump_rejects_bad_triples() {
        let alg = build_witt(&Shape::new(3, &[1])).to_lie_algebra().unwrap();
        let mut text = write_dump(&alg);
        text = text.replace("\"dim\": 3", "\"dim\": 2");
        assert!(read_dump(&text).is_err());
    }

    #[test]
    fn cache_dir_precedence() {
        assert_eq!(cache_dir(Some("/tmp/x")), PathBuf::from("/tmp/x"));
        assert_eq!(cache_dir(None), PathBuf::from("cache"));
    }
}
