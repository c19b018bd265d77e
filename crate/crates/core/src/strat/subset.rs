use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strat::set::{Cell, CellId, Simplex, StratifiedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetKind {
    /// Both regular and entire: the whole ambient set.
    Full,
    Regular,
    Entire,
    Neither,
}

/// A face-closed family of cells with its own thin flags.
#[derive(Clone, Debug)]
pub struct SubsetHandle {
    ambient: Arc<StratifiedSet>,
    members: BTreeSet<CellId>,
    thin: BTreeSet<CellId>,
}

impl PartialEq for SubsetHandle {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && self.thin == other.thin
            && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl SubsetHandle {
    pub fn new(ambient: Arc<StratifiedSet>, members: BTreeSet<CellId>, thin: BTreeSet<CellId>) -> Result<Self> {
        for &c in members.iter().chain(&thin) {
            if c.0 >= ambient.len() {
                return Err(Error::UnknownCell(c.to_string()));
            }
        }
        for &c in &thin {
            if !members.contains(&c) {
                return Err(Error::BadParams(format!("thin `{}` is not a member", ambient.name(c))));
            }
            if !ambient.cell(c).thin {
                return Err(Error::BadParams(format!("`{}` is not thin in the ambient set", ambient.name(c))));
            }
        }
        let h = SubsetHandle { ambient, members, thin };
        if let Some(c) = h.first_unclosed() {
            return Err(Error::BadParams(format!("`{}` has a face outside the subset", h.ambient.name(c))));
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(ambient: Arc<StratifiedSet>, members: BTreeSet<CellId>, thin: BTreeSet<CellId>) -> Self {
        SubsetHandle { ambient, members, thin }
    }

    pub fn full(ambient: Arc<StratifiedSet>) -> Self {
        let members = ambient.ids().collect();
        let thin = ambient.ids().filter(|&c| ambient.cell(c).thin).collect();
        SubsetHandle { ambient, members, thin }
    }

    pub fn ambient(&self) -> &Arc<StratifiedSet> {
        &self.ambient
    }

    pub fn members(&self) -> &BTreeSet<CellId> {
        &self.members
    }

    pub fn thin_members(&self) -> &BTreeSet<CellId> {
        &self.thin
    }

    pub fn contains(&self, c: CellId) -> bool {
        self.members.contains(&c)
    }

    /// Whether `x` is a simplex of the subset that is thin there.
    pub fn is_thin(&self, x: &Simplex) -> bool {
        x.is_degenerate() || self.thin.contains(&x.cell)
    }

    fn first_unclosed(&self) -> Option<CellId> {
        self.members.iter().copied().find(|&c| {
            self.ambient.cell(c).faces.iter().any(|f| !self.members.contains(&f.cell))
        })
    }

    pub fn kind(&self) -> SubsetKind {
        let regular = self.members.iter().all(|&c| self.ambient.cell(c).thin == self.thin.contains(&c));
        let entire = self.members.len() == self.ambient.len();
        match (regular, entire) {
            (true, true) => SubsetKind::Full,
            (true, false) => SubsetKind::Regular,
            (false, true) => SubsetKind::Entire,
            (false, false) => SubsetKind::Neither,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|&c| self.ambient.name(c).to_string()).collect()
    }

    /// The subset as a stratified set in its own right, with the ambient ids
    /// of its cells in order.
    pub fn materialize(&self) -> (StratifiedSet, Vec<CellId>) {
        let old: Vec<CellId> = self.members.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.ambient.len()];
        for (i, c) in old.iter().enumerate() {
            new_id[c.0] = i;
        }
        let cells = old
            .iter()
            .map(|&c| {
                let cell = self.ambient.cell(c);
                Cell {
                    name: cell.name.clone(),
                    dim: cell.dim,
                    thin: self.thin.contains(&c),
                    faces: cell
                        .faces
                        .iter()
                        .map(|f| Simplex { cell: CellId(new_id[f.cell.0]), word: f.word.clone() })
                        .collect(),
                }
            })
            .collect();
        let set = StratifiedSet::from_cells_unchecked(self.ambient.dim_cap(), cells)
            .with_truncated(self.ambient.truncated());
        (set, old)
    }
}

/// Smallest face-closed subset containing `seeds`, with ambient thinness.
pub fn regular_generated(ambient: &Arc<StratifiedSet>, seeds: &[CellId]) -> Result<SubsetHandle> {
    let mut members = BTreeSet::new();
    let mut stack = Vec::new();
    for &s in seeds {
        if s.0 >= ambient.len() {
            return Err(Error::UnknownCell(s.to_string()));
        }
        stack.push(s);
    }
    while let Some(c) = stack.pop() {
        if members.insert(c) {
            stack.extend(ambient.cell(c).faces.iter().map(|f| f.cell));
        }
    }
    let thin = members.iter().copied().filter(|&c| ambient.cell(c).thin).collect();
    Ok(SubsetHandle::new_unchecked(ambient.clone(), members, thin))
}

/// Like [`regular_generated`] but with seeds named.
pub fn regular_generated_by_name(ambient: &Arc<StratifiedSet>, seeds: &[&str]) -> Result<SubsetHandle> {
    let ids = seeds.iter().map(|s| ambient.lookup(s)).collect::<Result<Vec<_>>>()?;
    regular_generated(ambient, &ids)
}

pub fn union_regular(ambient: &Arc<StratifiedSet>, parts: &[SubsetHandle]) -> Result<SubsetHandle> {
    let mut members = BTreeSet::new();
    for p in parts {
        if !(Arc::ptr_eq(&p.ambient, ambient) || *p.ambient == **ambient) {
            return Err(Error::AmbientMismatch);
        }
        members.extend(p.members.iter().copied());
    }
    let thin = members.iter().copied().filter(|&c| ambient.cell(c).thin).collect();
    Ok(SubsetHandle::new_unchecked(ambient.clone(), members, thin))
}
