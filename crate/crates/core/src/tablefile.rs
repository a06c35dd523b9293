//! JSON form of a [`ConstantTable`] and the on-disk table cache.
//!
//! Elements are written as their canonical reduced words, 1-based. A cache
//! file is named by a SHA-256 digest of the Cartan matrix, the basis and
//! [`FORMAT_VERSION`]; before a cached table is trusted, three random
//! products are recomputed and compared.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constants::{Calculator, ConstantTable};
use crate::derived::Basis;
use crate::error::{Error, Result};
use crate::rootsys::{ElementId, WeylGroup};

pub const FORMAT_VERSION: u32 = 1;

/// Number of products recomputed when a cached table is read.
pub const SPOT_CHECKS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub format_version: u32,
    pub basis: Basis,
    pub cartan: Vec<Vec<i64>>,
    pub elements: Vec<Vec<usize>>,
    pub entries: Vec<EntryFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFile {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub coeff: i64,
}

/// Canonical reduced word of `x`, 1-based.
pub fn word_of(group: &WeylGroup, x: ElementId) -> Vec<usize> {
    group.canonical_word(x).indices().iter().map(|i| i + 1).collect()
}

fn element_of(group: &WeylGroup, word: &[usize]) -> Result<ElementId> {
    let zero_based = word
        .iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::Parse("generator indices start at 1".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    group.evaluate(&zero_based)
}

pub fn to_file(group: &WeylGroup, table: &ConstantTable) -> TableFile {
    TableFile {
        format_version: FORMAT_VERSION,
        basis: table.basis(),
        cartan: table.cartan().rows(),
        elements: table.elements().iter().map(|&x| word_of(group, x)).collect(),
        entries: table
            .nonzero()
            .map(|((u, v, w), coeff)| EntryFile {
                u: word_of(group, u),
                v: word_of(group, v),
                w: word_of(group, w),
                coeff,
            })
            .collect(),
    }
}

pub fn from_file(group: &WeylGroup, file: &TableFile) -> Result<ConstantTable> {
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "table format version {} (expected {FORMAT_VERSION})",
            file.format_version
        )));
    }
    if file.cartan != group.cartan().rows() {
        return Err(Error::Parse("table was built for a different Cartan matrix".into()));
    }
    let mut elements = file
        .elements
        .iter()
        .map(|w| element_of(group, w))
        .collect::<Result<Vec<_>>>()?;
    elements.sort();
    let entries = file
        .entries
        .iter()
        .map(|e| {
            Ok((
                (element_of(group, &e.u)?, element_of(group, &e.v)?, element_of(group, &e.w)?),
                e.coeff,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ConstantTable::from_entries(file.basis, group.cartan().clone(), elements, entries)
}

/// Hex digest identifying a full table of `basis` for `group`.
pub fn cache_key(group: &WeylGroup, basis: Basis) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("v{FORMAT_VERSION};{};{:?}", basis.name(), group.cartan().rows()));
    hex::encode(hasher.finalize())
}

pub fn cache_path(dir: &Path, group: &WeylGroup, basis: Basis) -> PathBuf {
    dir.join(format!("{}.json", cache_key(group, basis)))
}

/// Reads a cached full table. Any problem, including a failed spot check,
/// is returned as an error so the caller can warn and recompute.
pub fn load_cached(dir: &Path, group: &WeylGroup, basis: Basis) -> Result<Option<ConstantTable>> {
    let path = cache_path(dir, group, basis);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Parse(format!("{}: {e}", path.display()))),
    };
    let file: TableFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if file.basis != basis {
        return Err(Error::Parse(format!("{}: wrong basis", path.display())));
    }
    let table = from_file(group, &file)?;
    if table.elements().len() != group.order() {
        return Err(Error::Parse(format!("{}: incomplete element list", path.display())));
    }
    spot_check(group, &table)?;
    Ok(Some(table))
}

/// Recomputes [`SPOT_CHECKS`] random products and compares them with the
/// table.
pub fn spot_check(group: &WeylGroup, table: &ConstantTable) -> Result<()> {
    let calc = Calculator::new(group, table.basis());
    let mut pairs: Vec<(ElementId, ElementId)> = table
        .elements()
        .iter()
        .flat_map(|&u| table.elements().iter().map(move |&v| (u, v)))
        .collect();
    pairs.shuffle(&mut rand::thread_rng());
    for &(u, v) in pairs.iter().take(SPOT_CHECKS) {
        if calc.expand_product(u, v)? != table.product(u, v) {
            return Err(Error::Parse(format!(
                "cached product of {:?} and {:?} does not match a recomputation",
                word_of(group, u),
                word_of(group, v)
            )));
        }
    }
    Ok(())
}

/// Writes the table through a temporary file in the same directory and a
/// rename, so readers never see a partial file.
pub fn store_cached(dir: &Path, group: &WeylGroup, table: &ConstantTable) -> std::io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, group, table.basis());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, &to_file(group, table))?;
    tmp.flush()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}
