use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::matrix::{construct_classical_group, ClassicalFamily, ClassicalGroupSpec};

/// On-disk multiplication table: `mul[a * order + b]` is the index of `a * b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub mul: Vec<u32>,
}

impl TableFile {
    pub fn load(path: &Path) -> Result<TableFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// [`construct_group_with_cap`] with the default cap.
pub fn construct_group(descriptor: &str) -> Result<Arc<FiniteGroup>> {
    construct_group_with_cap(descriptor, DEFAULT_CAP)
}

/// Builds a group from a descriptor: `S:n`, `A:n`, `table:<path>`, or a
/// matrix family such as `PSL:2:7` or `U:3:2`.
pub fn construct_group_with_cap(descriptor: &str, cap: usize) -> Result<Arc<FiniteGroup>> {
    let d = descriptor.trim();
    if let Some(path) = d.strip_prefix("table:") {
        let table = TableFile::load(Path::new(path))?;
        if table.order > cap {
            return Err(Error::Capacity {
                order: table.order as u128,
                cap,
            });
        }
        return FiniteGroup::from_table(d, table.order, table.mul);
    }
    let parts: Vec<&str> = d.split(':').collect();
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::descriptor(d, format!("{s:?} is not a nonnegative integer")))
    };
    match parts.as_slice() {
        [kind @ ("S" | "A"), n] => {
            let n = num(n)?;
            if n == 0 {
                return Err(Error::descriptor(d, "degree must be positive"));
            }
            let group = if *kind == "S" {
                FiniteGroup::symmetric(n)
            } else {
                FiniteGroup::alternating(n)
            }
            .map_err(|e| Error::descriptor(d, e.to_string()))?;
            group.ensure_enumerable(cap)?;
            Ok(group)
        }
        [family, n, q] => {
            let family: ClassicalFamily = family.parse().map_err(|_| Error::descriptor(d, "unknown family"))?;
            let spec = ClassicalGroupSpec::new(family, num(n)?, num(q)? as u32)
                .map_err(|e| Error::descriptor(d, e.to_string()))?;
            construct_classical_group(&spec, cap)
        }
        _ => Err(Error::descriptor(d, "expected KIND:n, FAMILY:n:q or table:<path>")),
    }
}
