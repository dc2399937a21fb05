//! On-disk catalogs: `<root>/<order>/<index>.pc` files plus a `manifest`
//! per order directory holding `count <N>` and `complete yes|no`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use lcmlab_core::constructors::pc_group;
use lcmlab_core::cover::{CatalogId, Universe};
use lcmlab_core::GroupTable;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pcfile::{read_pc, PcFile};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: CatalogId,
    pub group: GroupTable,
    pub file: PcFile,
    pub path: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub count: usize,
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct OrderCatalog {
    pub order: u32,
    pub manifest: Manifest,
    /// Sorted by index.
    pub entries: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub orders: BTreeMap<u32, OrderCatalog>,
    pub warnings: Vec<String>,
}

impl Catalog {
    pub fn get(&self, order: u32) -> Option<&OrderCatalog> {
        self.orders.get(&order)
    }

    pub fn entry(&self, id: CatalogId) -> Option<&CatalogEntry> {
        self.orders
            .get(&id.order)?
            .entries
            .iter()
            .find(|e| e.id == id)
    }

    pub fn is_complete(&self, order: u32) -> bool {
        self.orders.get(&order).is_some_and(|o| o.manifest.complete)
    }

    /// Entries of every order, ascending by `(order, index)`.
    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.orders.values().flat_map(|o| o.entries.iter())
    }

    pub fn universe(&self) -> Universe {
        let mut u = Universe::new();
        for o in self.orders.values() {
            for e in &o.entries {
                u.push(e.id, e.group.clone());
            }
            u.set_complete(o.order, o.manifest.complete);
        }
        u
    }
}

pub fn parse_manifest(text: &str, path: &Path) -> Result<Manifest> {
    let mut count = None;
    let mut complete = None;
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Format {
            path: path.to_path_buf(),
            line: n + 1,
            message,
        };
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["count", c] => {
                count = Some(c.parse().map_err(|_| bad(format!("bad count {c:?}")))?);
            }
            ["complete", "yes"] => complete = Some(true),
            ["complete", "no"] => complete = Some(false),
            _ => return Err(bad(format!("unrecognised manifest line {line:?}"))),
        }
    }
    match (count, complete) {
        (Some(count), Some(complete)) => Ok(Manifest { count, complete }),
        _ => Err(Error::Format {
            path: path.to_path_buf(),
            line: 0,
            message: "manifest needs both \"count\" and \"complete\"".into(),
        }),
    }
}

fn numeric_dirs(root: &Path) -> Result<Vec<(u32, PathBuf)>> {
    let mut out = Vec::new();
    let rd = std::fs::read_dir(root).map_err(|e| Error::io(root, e))?;
    for entry in rd {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        let path = entry.path();
        if !path.is_dir() {
            continue;
        }
        if let Some(order) = path.file_name().and_then(|s| s.to_str()).and_then(|s| s.parse().ok()) {
            out.push((order, path));
        }
    }
    out.sort();
    Ok(out)
}

/// Loads one order directory, compiling every file.
pub fn load_order(dir: &Path, order: u32) -> Result<OrderCatalog> {
    let manifest_path = dir.join("manifest");
    let manifest = match std::fs::read_to_string(&manifest_path) {
        Ok(text) => parse_manifest(&text, &manifest_path)?,
        Err(e) => return Err(Error::io(manifest_path, e)),
    };
    let mut files: BTreeMap<u32, PathBuf> = BTreeMap::new();
    let rd = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in rd {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().and_then(|s| s.to_str()) != Some("pc") {
            continue;
        }
        let index: u32 = path
            .file_stem()
            .and_then(|s| s.to_str())
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Catalog(format!("{}: file name is not <index>.pc", path.display())))?;
        if let Some(prev) = files.insert(index, path.clone()) {
            return Err(Error::Catalog(format!(
                "duplicate entry {order}:{index} ({} and {})",
                prev.display(),
                path.display()
            )));
        }
    }
    if files.len() != manifest.count {
        return Err(Error::Catalog(format!(
            "{}: manifest count {} but {} files present",
            dir.display(),
            manifest.count,
            files.len()
        )));
    }
    let entries = files
        .into_par_iter()
        .map(|(index, path)| {
            let file = read_pc(&path)?;
            let group = pc_group(&file.presentation)
                .map_err(|e| Error::group(path.display().to_string(), e))?;
            if group.order() != order as usize {
                return Err(Error::Catalog(format!(
                    "{}: group has order {}, expected {order}",
                    path.display(),
                    group.order()
                )));
            }
            let id = CatalogId { order, index };
            let group = group.with_label(id.to_string());
            Ok(CatalogEntry {
                id,
                group,
                file,
                path,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrderCatalog {
        order,
        manifest,
        entries,
    })
}

/// Loads every order directory under `root`.
pub fn load_catalog(root: &Path) -> Result<Catalog> {
    load_catalog_filtered(root, |_| true)
}

/// Loads the order directories accepted by `want`.
pub fn load_catalog_filtered(root: &Path, want: impl Fn(u32) -> bool) -> Result<Catalog> {
    let mut cat = Catalog::default();
    let dirs = numeric_dirs(root)?;
    if dirs.is_empty() {
        cat.warnings
            .push(format!("catalog directory {} is empty", root.display()));
    }
    for (order, dir) in dirs {
        if want(order) {
            cat.orders.insert(order, load_order(&dir, order)?);
        }
    }
    Ok(cat)
}

/// The catalog shipped with this crate.
pub fn bundled_catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog")
}
