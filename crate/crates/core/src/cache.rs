//! On-disk storage of admissible bases.
//!
//! One file per `(k, d, order)` holding the full-degree basis. A header line
//! `k=5 d=20 weight=- order=wlex version=1` is followed by the admissible
//! monomials as tuples, a `#relations` line, and one line per inadmissible
//! monomial: its coordinate and the hex string of its admissible coordinates.
//! Weight quotients are derived from the full basis on load.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hit::{FullBasis, QuotientBasis};
use crate::linalg::BitVector;
use crate::poly::{Monomial, MonomialOrder, WeightVector};

pub const CACHE_ENV: &str = "HITPROB_CACHE";
const VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    /// `explicit`, else `$HITPROB_CACHE`, else no cache.
    pub fn from_env(explicit: Option<PathBuf>) -> Option<Self> {
        explicit
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .map(BasisCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, k: usize, d: u32, order: MonomialOrder) -> PathBuf {
        self.dir.join(format!("basis-k{k}-d{d}-{}.txt", order.tag()))
    }

    /// Reads a stored basis; `Ok(None)` when there is no entry.
    pub fn load(&self, k: usize, d: u32, order: MonomialOrder) -> Result<Option<FullBasis>> {
        let path = self.path_for(k, d, order);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        decode(&text, k, d, order).map(Some)
    }

    pub fn store(&self, basis: &FullBasis) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(basis.k(), basis.d(), basis.order());
        let mut tmp = tempfile_in(&self.dir)?;
        tmp.1.write_all(encode(basis).as_bytes())?;
        tmp.1.sync_all()?;
        drop(tmp.1);
        fs::rename(&tmp.0, &path)?;
        Ok(path)
    }

    pub fn get_or_compute(&self, k: usize, d: u32, order: MonomialOrder) -> Result<FullBasis> {
        if let Some(b) = self.load(k, d, order)? {
            return Ok(b);
        }
        let b = FullBasis::compute(k, d, order)?;
        self.store(&b)?;
        Ok(b)
    }
}

fn tempfile_in(dir: &Path) -> Result<(PathBuf, fs::File)> {
    for n in 0..1000u32 {
        let path = dir.join(format!(".tmp-{}-{n}", std::process::id()));
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(f) => return Ok((path, f)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::Cache("could not create a temporary file".into()))
}

pub fn encode(basis: &FullBasis) -> String {
    let mut out = format!(
        "k={} d={} weight=- order={} version={VERSION}\n",
        basis.k(),
        basis.d(),
        basis.order().tag()
    );
    let monos = basis.index().monomials();
    for &c in basis.admissible_cols() {
        out.push_str(&monos[c].to_tuple_string());
        out.push('\n');
    }
    out.push_str("#relations\n");
    for (p, v) in basis.relation_rows() {
        out.push_str(&format!("{p} {}\n", v.to_hex()));
    }
    out
}

pub fn decode(text: &str, k: usize, d: u32, order: MonomialOrder) -> Result<FullBasis> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Cache("empty cache file".into()))?;
    let want = format!("k={k} d={d} weight=- order={} version={VERSION}", order.tag());
    if header.trim() != want {
        return Err(Error::Cache(format!("header `{header}` does not match `{want}`")));
    }
    let mut admissible: Vec<Monomial> = Vec::new();
    let mut in_relations = false;
    let mut rows = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "#relations" {
            in_relations = true;
            continue;
        }
        if !in_relations {
            let m = Monomial::parse_tuple(line).map_err(|e| Error::Cache(e.to_string()))?;
            if m.k() != k {
                return Err(Error::Cache(format!("{line} has the wrong number of variables")));
            }
            admissible.push(m);
        } else {
            let (p, hex) = line
                .split_once(' ')
                .ok_or_else(|| Error::Cache(format!("malformed relation line `{line}`")))?;
            let p: usize = p.parse().map_err(|_| Error::Cache(format!("bad coordinate in `{line}`")))?;
            let v = BitVector::from_hex(admissible.len(), hex).map_err(|e| Error::Cache(e.to_string()))?;
            rows.push((p, v));
        }
    }
    if !in_relations {
        return Err(Error::Cache("missing #relations separator".into()));
    }
    FullBasis::from_parts(k, d, order, &admissible, rows)
}

/// The basis of `(QP_k)_d`, or of `QP_k(w)`, going through the cache when one is given.
pub fn basis(
    cache: Option<&BasisCache>,
    k: usize,
    d: u32,
    weight: Option<&WeightVector>,
    order: MonomialOrder,
) -> Result<QuotientBasis> {
    let full = match cache {
        Some(c) => c.get_or_compute(k, d, order)?,
        None => FullBasis::compute(k, d, order)?,
    };
    let full = Arc::new(full);
    match weight {
        Some(w) => QuotientBasis::with_weight(full, w),
        None => Ok(QuotientBasis::from_full(full)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_basis() {
        for (k, d) in [(2, 3), (3, 7), (4, 9), (3, 0)] {
            let b = FullBasis::compute(k, d, MonomialOrder::WeightLex).unwrap();
            let back = decode(&encode(&b), k, d, MonomialOrder::WeightLex).unwrap();
            assert_eq!(back.admissible_cols(), b.admissible_cols());
            let (q1, q2) = (QuotientBasis::from_full(Arc::new(b)), QuotientBasis::from_full(Arc::new(back)));
            assert_eq!(q1.relations(), q2.relations());
        }
    }

    #[test]
    fn header_is_checked() {
        let b = FullBasis::compute(2, 3, MonomialOrder::WeightLex).unwrap();
        let text = encode(&b);
        assert!(text.starts_with("k=2 d=3 weight=- order=wlex version=1\n[0,3]\n"));
        assert!(decode(&text, 2, 4, MonomialOrder::WeightLex).is_err());
        assert!(decode(&text, 2, 3, MonomialOrder::Lex).is_err());
    }

    #[test]
    fn corrupted_rows_are_rejected() {
        let b = FullBasis::compute(3, 5, MonomialOrder::WeightLex).unwrap();
        let text = encode(&b);
        let cut: String = text.lines().take(text.lines().count() - 1).map(|l| format!("{l}\n")).collect();
        assert!(matches!(decode(&cut, 3, 5, MonomialOrder::WeightLex), Err(Error::Cache(_))));
        let no_sep = text.replace("#relations\n", "");
        assert!(decode(&no_sep, 3, 5, MonomialOrder::WeightLex).is_err());
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        assert!(cache.load(3, 6, MonomialOrder::WeightLex).unwrap().is_none());
        let b = cache.get_or_compute(3, 6, MonomialOrder::WeightLex).unwrap();
        let again = cache.load(3, 6, MonomialOrder::WeightLex).unwrap().unwrap();
        assert_eq!(b.admissible_cols(), again.admissible_cols());
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }
}
