use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::strat::set::{CellId, Simplex, SimplexJson, StratifiedSet, ValidationReport};

/// A simplicial map that preserves thinness, given on nondegenerate cells.
#[derive(Clone, Debug)]
pub struct StratifiedMap {
    source: Arc<StratifiedSet>,
    target: Arc<StratifiedSet>,
    assignment: Vec<Simplex>,
}

impl PartialEq for StratifiedMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl StratifiedMap {
    pub fn new(source: Arc<StratifiedSet>, target: Arc<StratifiedSet>, assignment: Vec<Simplex>) -> Result<Self> {
        let map = StratifiedMap::new_unchecked(source, target, assignment);
        map.validate().into_result()?;
        Ok(map)
    }

    pub fn new_unchecked(source: Arc<StratifiedSet>, target: Arc<StratifiedSet>, assignment: Vec<Simplex>) -> Self {
        StratifiedMap { source, target, assignment }
    }

    pub fn source(&self) -> &Arc<StratifiedSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<StratifiedSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[Simplex] {
        &self.assignment
    }

    pub fn image(&self, c: CellId) -> &Simplex {
        &self.assignment[c.0]
    }

    pub fn apply(&self, x: &Simplex) -> Simplex {
        self.target.degenerate_word(&self.assignment[x.cell.0], &x.word)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &StratifiedMap) -> Result<StratifiedMap> {
        if *self.target != *other.source {
            return Err(Error::Mismatch { expected: 0, found: 1 });
        }
        let assignment = self.assignment.iter().map(|x| other.apply(x)).collect();
        Ok(StratifiedMap::new_unchecked(self.source.clone(), other.target.clone(), assignment))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let (src, tgt) = (&*self.source, &*self.target);
        if self.assignment.len() != src.len() {
            report.push(format!("assignment covers {} of {} cells", self.assignment.len(), src.len()));
            return report;
        }
        for (i, y) in self.assignment.iter().enumerate() {
            let c = src.cell(CellId(i));
            if y.cell.0 >= tgt.len() {
                report.push(format!("`{}` maps to an unknown cell", c.name));
                continue;
            }
            if tgt.dim(y) != c.dim {
                report.push(format!("`{}` maps to a simplex of dimension {}", c.name, tgt.dim(y)));
                continue;
            }
            if c.thin && !tgt.is_thin(y) {
                report.push(format!("thin `{}` maps to non-thin `{}`", c.name, tgt.render(y)));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for (i, y) in self.assignment.iter().enumerate() {
            let c = src.cell(CellId(i));
            for (k, f) in c.faces.iter().enumerate() {
                let expected = self.apply(f);
                match tgt.face(y, k) {
                    Ok(actual) if actual == expected => {}
                    _ => report.push(format!("face {k} of `{}` is not preserved", c.name)),
                }
            }
        }
        report
    }

    pub fn to_json(&self) -> BTreeMap<String, SimplexJson> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, y)| (self.source.name(CellId(i)).to_string(), self.target.simplex_json(y)))
            .collect()
    }

    pub fn from_json(
        source: Arc<StratifiedSet>,
        target: Arc<StratifiedSet>,
        json: &BTreeMap<String, SimplexJson>,
    ) -> Result<StratifiedMap> {
        let mut assignment = Vec::with_capacity(source.len());
        for c in source.cells() {
            let y = json.get(&c.name).ok_or_else(|| Error::UnknownCell(c.name.clone()))?;
            assignment.push(target.simplex_from_json(y)?);
        }
        if json.len() != source.len() {
            return Err(Error::Parse("map names cells outside its source".into()));
        }
        Ok(StratifiedMap::new_unchecked(source, target, assignment))
    }
}
