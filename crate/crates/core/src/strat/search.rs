//! Backtracking enumeration of stratified maps, cell by cell in id order.

use std::sync::Arc;

use crate::error::Result;
use crate::operator::Operator;
use crate::strat::map::StratifiedMap;
use crate::strat::set::{CellId, Simplex, StratifiedSet};

type Filter<'a> = Box<dyn Fn(CellId, &Simplex) -> bool + 'a>;

/// Search for maps from a face-closed family of source cells into a target,
/// optionally with some cells prescribed and candidates filtered.
pub struct MapSearch<'a> {
    source: &'a StratifiedSet,
    target: &'a StratifiedSet,
    domain: Vec<CellId>,
    fixed: Vec<Option<Simplex>>,
    filter: Option<Filter<'a>>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a StratifiedSet, target: &'a StratifiedSet) -> Self {
        MapSearch {
            source,
            target,
            domain: source.ids().collect(),
            fixed: vec![None; source.len()],
            filter: None,
        }
    }

    pub fn on_cells(mut self, cells: impl IntoIterator<Item = CellId>) -> Self {
        let mut domain: Vec<CellId> = cells.into_iter().collect();
        domain.sort();
        domain.dedup();
        self.domain = domain;
        self
    }

    pub fn fix(mut self, cell: CellId, image: Simplex) -> Self {
        self.fixed[cell.0] = Some(image);
        self
    }

    pub fn fix_all(mut self, prescribed: &[Option<Simplex>]) -> Self {
        for (i, p) in prescribed.iter().enumerate() {
            if p.is_some() {
                self.fixed[i] = p.clone();
            }
        }
        self
    }

    pub fn filter(mut self, f: impl Fn(CellId, &Simplex) -> bool + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    /// Calls `visit` on every solution until it returns `false`.
    pub fn for_each(&self, mut visit: impl FnMut(&[Option<Simplex>]) -> bool) {
        let mut assign = vec![None; self.source.len()];
        self.go(0, &mut assign, &mut visit);
    }

    pub fn first(&self) -> Option<Vec<Option<Simplex>>> {
        let mut out = None;
        self.for_each(|a| {
            out = Some(a.to_vec());
            false
        });
        out
    }

    pub fn collect(&self) -> Vec<Vec<Option<Simplex>>> {
        let mut out = Vec::new();
        self.for_each(|a| {
            out.push(a.to_vec());
            true
        });
        out
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            true
        });
        n
    }

    fn go(
        &self,
        pos: usize,
        assign: &mut Vec<Option<Simplex>>,
        visit: &mut dyn FnMut(&[Option<Simplex>]) -> bool,
    ) -> bool {
        let Some(&a) = self.domain.get(pos) else {
            return visit(assign);
        };
        for cand in self.candidates(a, assign) {
            assign[a.0] = Some(cand);
            if !self.go(pos + 1, assign, visit) {
                assign[a.0] = None;
                return false;
            }
        }
        assign[a.0] = None;
        true
    }

    fn candidates(&self, a: CellId, assign: &[Option<Simplex>]) -> Vec<Simplex> {
        let cell = self.source.cell(a);
        let faces: Vec<Simplex> = cell
            .faces
            .iter()
            .map(|f| {
                let base = assign[f.cell.0].as_ref().expect("domain is face-closed");
                self.target.degenerate_word(base, &f.word)
            })
            .collect();
        let mut out = match &self.fixed[a.0] {
            Some(y) => vec![y.clone()],
            None if cell.dim == 0 => self.target.cells_of_dim(0).map(Simplex::cell).collect(),
            None => {
                let mut v: Vec<Simplex> =
                    self.target.cells_with_faces(&faces).iter().map(|&c| Simplex::cell(c)).collect();
                for j in 0..cell.dim {
                    if faces[j] == faces[j + 1] {
                        let op = Operator::degeneracy(cell.dim - 1, j).expect("index in range");
                        let y = self.target.act(&faces[j], &op).expect("dimension matches");
                        if !v.contains(&y) {
                            v.push(y);
                        }
                    }
                }
                v.sort();
                v
            }
        };
        out.retain(|y| {
            y.cell.0 < self.target.len()
                && self.target.dim(y) == cell.dim
                && (!cell.thin || self.target.is_thin(y))
                && self.filter.as_ref().map_or(true, |f| f(a, y))
                && (cell.dim == 0 || self.faces_match(y, &faces))
        });
        out
    }

    fn faces_match(&self, y: &Simplex, faces: &[Simplex]) -> bool {
        faces.iter().enumerate().all(|(i, f)| self.target.face(y, i).map_or(false, |g| g == *f))
    }
}

/// All stratified maps `a -> x`, in deterministic order.
pub fn enumerate_maps(a: &Arc<StratifiedSet>, x: &Arc<StratifiedSet>) -> Result<Vec<StratifiedMap>> {
    if let Some(d) = a.max_dim() {
        x.require_dim(d)?;
    }
    Ok(MapSearch::new(a, x)
        .collect()
        .into_iter()
        .map(|v| StratifiedMap::new_unchecked(a.clone(), x.clone(), v.into_iter().map(Option::unwrap).collect()))
        .collect())
}
