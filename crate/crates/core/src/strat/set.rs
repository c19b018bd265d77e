use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId(pub usize);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A simplex in normal form: a nondegenerate cell acted on by a degeneracy
/// word (repeat positions, largest first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub cell: CellId,
    pub word: Vec<usize>,
}

impl Simplex {
    pub fn cell(cell: CellId) -> Self {
        Simplex { cell, word: Vec::new() }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    pub thin: bool,
    pub faces: Vec<Simplex>,
}

/// A finite stratified simplicial set stored by its nondegenerate cells.
///
/// Cells are kept sorted by dimension, so cell ids order simplices by
/// `(dimension, id)`. Simplices of every dimension are representable; above
/// the cap only degenerate ones exist unless the set is marked truncated, in
/// which case nothing above the cap is trustworthy.
pub struct StratifiedSet {
    dim_cap: usize,
    truncated: bool,
    cells: Vec<Cell>,
    names: HashMap<String, CellId>,
    by_faces: OnceLock<HashMap<Vec<Simplex>, Vec<CellId>>>,
}

impl Clone for StratifiedSet {
    fn clone(&self) -> Self {
        StratifiedSet::raw(self.dim_cap, self.truncated, self.cells.clone())
    }
}

impl PartialEq for StratifiedSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim_cap == other.dim_cap && self.truncated == other.truncated && self.cells == other.cells
    }
}

impl Eq for StratifiedSet {}

impl fmt::Debug for StratifiedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StratifiedSet")
            .field("dim_cap", &self.dim_cap)
            .field("census", &self.census())
            .finish()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSet(self.violations.join("; ")))
        }
    }
}

/// Incremental construction in dimension order.
#[derive(Default)]
pub struct SetBuilder {
    cells: Vec<Cell>,
}

impl SetBuilder {
    pub fn new() -> Self {
        SetBuilder::default()
    }

    pub fn add(&mut self, name: impl Into<String>, thin: bool, faces: Vec<Simplex>) -> CellId {
        let dim = faces.len().saturating_sub(1);
        self.cells.push(Cell { name: name.into(), dim, thin, faces });
        CellId(self.cells.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn finish(self, dim_cap: usize) -> Result<StratifiedSet> {
        StratifiedSet::from_cells(dim_cap, self.cells)
    }
}

impl StratifiedSet {
    fn raw(dim_cap: usize, truncated: bool, cells: Vec<Cell>) -> Self {
        let mut names = HashMap::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            names.entry(c.name.clone()).or_insert(CellId(i));
        }
        StratifiedSet { dim_cap, truncated, cells, names, by_faces: OnceLock::new() }
    }

    /// Builds and validates.
    pub fn from_cells(dim_cap: usize, cells: Vec<Cell>) -> Result<Self> {
        let set = StratifiedSet::raw(dim_cap, false, cells);
        set.validate().into_result()?;
        Ok(set)
    }

    /// Builds without validation, for deliberately broken test inputs.
    pub fn from_cells_unchecked(dim_cap: usize, cells: Vec<Cell>) -> Self {
        StratifiedSet::raw(dim_cap, false, cells)
    }

    pub fn empty() -> Self {
        StratifiedSet::raw(0, false, Vec::new())
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Highest dimension answered faithfully, `None` when complete.
    pub fn effective_cap(&self) -> Option<usize> {
        self.truncated.then_some(self.dim_cap)
    }

    pub fn require_dim(&self, d: usize) -> Result<()> {
        match self.effective_cap() {
            Some(cap) if d > cap => Err(Error::CapExceeded { requested: d, cap }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).map(CellId)
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = CellId> + '_ {
        self.ids().filter(move |&c| self.cells[c.0].dim == d)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn lookup(&self, name: &str) -> Result<CellId> {
        self.names.get(name).copied().ok_or_else(|| Error::UnknownCell(name.to_string()))
    }

    pub fn name(&self, id: CellId) -> &str {
        &self.cells[id.0].name
    }

    /// Cells per dimension.
    pub fn census(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.cells {
            if out.len() <= c.dim {
                out.resize(c.dim + 1, 0);
            }
            out[c.dim] += 1;
        }
        out
    }

    /// Thin cells per dimension.
    pub fn thin_census(&self) -> Vec<usize> {
        let mut out = vec![0; self.census().len()];
        for c in self.cells.iter().filter(|c| c.thin) {
            out[c.dim] += 1;
        }
        out
    }

    pub fn dim(&self, x: &Simplex) -> usize {
        self.cells[x.cell.0].dim + x.word.len()
    }

    pub fn is_thin(&self, x: &Simplex) -> bool {
        x.is_degenerate() || self.cells[x.cell.0].thin
    }

    pub fn render(&self, x: &Simplex) -> String {
        if x.word.is_empty() {
            self.name(x.cell).to_string()
        } else {
            format!("{}@{:?}", self.name(x.cell), x.word)
        }
    }

    /// The surjection recorded in a simplex's word.
    pub fn degeneracy_of(&self, x: &Simplex) -> Operator {
        Operator::degeneracy_word(self.cells[x.cell.0].dim, &x.word)
    }

    /// Normal form of `x·α`.
    pub fn act(&self, x: &Simplex, alpha: &Operator) -> Result<Simplex> {
        let d = self.dim(x);
        if alpha.target() != d as i64 {
            return Err(Error::DimensionMismatch { expected: d, found: alpha.target().max(0) as usize });
        }
        if alpha.source() < 0 {
            return Err(Error::DimensionMismatch { expected: 0, found: 0 });
        }
        let beta = self.degeneracy_of(x).compose(alpha)?;
        let (mono, epi) = beta.epi_mono();
        let y = self.face_of_cell(x.cell, &mono);
        Ok(self.degenerate_by(&y, &epi))
    }

    fn face_of_cell(&self, c: CellId, mono: &Operator) -> Simplex {
        if mono.is_identity() {
            return Simplex::cell(c);
        }
        let top = mono.cod();
        let missing = (0..=top)
            .rev()
            .find(|v| mono.values().binary_search(v).is_err())
            .expect("non-identity injection misses a vertex");
        let rest = Operator::from_parts(
            mono.dom(),
            top - 1,
            mono.values().iter().map(|&v| if v < missing { v } else { v - 1 }).collect(),
        );
        let f = &self.cells[c.0].faces[missing];
        self.act(f, &rest).expect("stored faces have the right dimension")
    }

    /// `y·s` for a surjection `s` onto the dimension of `y`.
    pub fn degenerate_by(&self, y: &Simplex, s: &Operator) -> Simplex {
        if s.is_identity() {
            return y.clone();
        }
        let t = self.degeneracy_of(y).compose(s).expect("surjection lands on y");
        Simplex { cell: y.cell, word: t.word_of() }
    }

    /// `y` acted on by the surjection whose word is `word`.
    pub fn degenerate_word(&self, y: &Simplex, word: &[usize]) -> Simplex {
        if word.is_empty() {
            return y.clone();
        }
        self.degenerate_by(y, &Operator::degeneracy_word(self.dim(y), word))
    }

    pub fn face(&self, x: &Simplex, i: usize) -> Result<Simplex> {
        let d = self.dim(x);
        if d == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        self.act(x, &Operator::face(d, i)?)
    }

    pub fn degenerate(&self, x: &Simplex, j: usize) -> Result<Simplex> {
        self.act(x, &Operator::degeneracy(self.dim(x), j)?)
    }

    pub fn vertices(&self, x: &Simplex) -> Vec<CellId> {
        let d = self.dim(x);
        (0..=d)
            .map(|i| self.act(x, &Operator::vertex(d, i).expect("vertex in range")).expect("vertex").cell)
            .collect()
    }

    /// All simplices of dimension `m`, nondegenerate or not, ordered by (cell, word).
    pub fn simplices_of_dim(&self, m: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for c in self.ids() {
            let d = self.cells[c.0].dim;
            if d > m {
                break;
            }
            for mut rep in subsets(m, m - d) {
                rep.reverse();
                out.push(Simplex { cell: c, word: rep });
            }
        }
        out.sort();
        out
    }

    /// Nondegenerate cells with exactly these faces.
    pub fn cells_with_faces(&self, faces: &[Simplex]) -> &[CellId] {
        let index = self.by_faces.get_or_init(|| {
            let mut m: HashMap<Vec<Simplex>, Vec<CellId>> = HashMap::new();
            for (i, c) in self.cells.iter().enumerate() {
                if c.dim > 0 {
                    m.entry(c.faces.clone()).or_default().push(CellId(i));
                }
            }
            m
        });
        index.get(faces).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut seen = HashMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            if let Some(j) = seen.insert(c.name.as_str(), i) {
                report.push(format!("cells {j} and {i} share the name `{}`", c.name));
            }
        }
        let mut structural = true;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 && self.cells[i - 1].dim > c.dim {
                report.push(format!("cell `{}` is out of dimension order", c.name));
                structural = false;
            }
            if c.dim > self.dim_cap {
                report.push(format!("cell `{}` has dimension {} above the cap {}", c.name, c.dim, self.dim_cap));
            }
            if c.dim == 0 {
                if c.thin {
                    report.push(format!("0-cell `{}` is marked thin", c.name));
                }
                if !c.faces.is_empty() {
                    report.push(format!("0-cell `{}` has faces", c.name));
                    structural = false;
                }
                continue;
            }
            if c.faces.len() != c.dim + 1 {
                report.push(format!("cell `{}` has {} faces, expected {}", c.name, c.faces.len(), c.dim + 1));
                structural = false;
                continue;
            }
            for (k, f) in c.faces.iter().enumerate() {
                if f.cell.0 >= i {
                    report.push(format!("face {k} of `{}` refers to a later cell", c.name));
                    structural = false;
                    continue;
                }
                let base = self.cells[f.cell.0].dim;
                if base + f.word.len() + 1 != c.dim {
                    report.push(format!("face {k} of `{}` has the wrong dimension", c.name));
                    structural = false;
                }
                let canonical = Operator::degeneracy_word(base, &f.word).word_of();
                let in_range = f.word.first().map_or(true, |&j| j < base + f.word.len());
                if !in_range || canonical != f.word {
                    report.push(format!("face {k} of `{}` has a non-normal word {:?}", c.name, f.word));
                    structural = false;
                }
            }
        }
        if !structural {
            return report;
        }
        for (i, c) in self.cells.iter().enumerate() {
            if c.dim < 2 {
                continue;
            }
            for b in 1..=c.dim {
                for a in 0..b {
                    let lhs = self.face(&c.faces[b], a);
                    let rhs = self.face(&c.faces[a], b - 1);
                    if lhs.is_err() || lhs != rhs {
                        report.push(format!(
                            "simplicial identity d{a}d{b} = d{}d{a} fails on `{}`",
                            b - 1,
                            self.cells[i].name
                        ));
                    }
                }
            }
        }
        report
    }

    /// Entire superset with extra thin cells.
    pub fn make_thin(&self, extra: &[CellId]) -> Result<StratifiedSet> {
        let mut cells = self.cells.clone();
        for &c in extra {
            let cell = cells.get_mut(c.0).ok_or_else(|| Error::UnknownCell(c.to_string()))?;
            if cell.dim == 0 {
                return Err(Error::ZeroDimensional(cell.name.clone()));
            }
            cell.thin = true;
        }
        Ok(StratifiedSet::raw(self.dim_cap, self.truncated, cells))
    }

    pub fn to_json(&self) -> SetJson {
        SetJson {
            dim_cap: self.dim_cap,
            truncated: self.truncated,
            cells: self
                .cells
                .iter()
                .map(|c| CellJson {
                    id: c.name.clone(),
                    dim: c.dim,
                    thin: c.thin,
                    faces: c.faces.iter().map(|f| self.simplex_json(f)).collect(),
                })
                .collect(),
        }
    }

    pub fn simplex_json(&self, x: &Simplex) -> SimplexJson {
        SimplexJson { cell: self.name(x.cell).to_string(), word: x.word.clone() }
    }

    pub fn simplex_from_json(&self, x: &SimplexJson) -> Result<Simplex> {
        let cell = self.lookup(&x.cell)?;
        let base = self.cells[cell.0].dim;
        if Operator::degeneracy_word(base, &x.word).word_of() != x.word {
            return Err(Error::Parse(format!("non-normal word {:?} on `{}`", x.word, x.cell)));
        }
        Ok(Simplex { cell, word: x.word.clone() })
    }

    pub fn from_json(json: &SetJson) -> Result<StratifiedSet> {
        let mut order: Vec<usize> = (0..json.cells.len()).collect();
        order.sort_by_key(|&i| json.cells[i].dim);
        let mut ids = HashMap::new();
        for (new, &old) in order.iter().enumerate() {
            if ids.insert(json.cells[old].id.as_str(), CellId(new)).is_some() {
                return Err(Error::Parse(format!("duplicate cell id `{}`", json.cells[old].id)));
            }
        }
        let mut cells = Vec::with_capacity(order.len());
        for &old in &order {
            let c = &json.cells[old];
            let faces = c
                .faces
                .iter()
                .map(|f| {
                    ids.get(f.cell.as_str())
                        .map(|&cell| Simplex { cell, word: f.word.clone() })
                        .ok_or_else(|| Error::UnknownCell(f.cell.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            cells.push(Cell { name: c.id.clone(), dim: c.dim, thin: c.thin, faces });
        }
        let set = StratifiedSet::raw(json.dim_cap, json.truncated, cells);
        set.validate().into_result()?;
        Ok(set)
    }
}

/// `k`-element subsets of `0..n`, each ascending, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            if n - i < k - acc.len() {
                break;
            }
            acc.push(i);
            go(n, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub cell: String,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: String,
    pub dim: usize,
    pub thin: bool,
    pub faces: Vec<SimplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetJson {
    pub dim_cap: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    pub cells: Vec<CellJson>,
}
