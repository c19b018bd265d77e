//! Named stratified sets: standard and complicial simplices, horns, Gray
//! cubes, the C/H family and the comparison map from cubes to simplices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CubeCoordinate, Operator};
use crate::strat::{Cell, CellId, Simplex, StratifiedMap, StratifiedSet, SubsetHandle};

/// Nerve of a finite poset given by a linear extension, chains up to `max_dim`.
struct ChainComplex {
    cells: Vec<Cell>,
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, CellId>,
}

fn chain_complex(
    count: usize,
    less: impl Fn(usize, usize) -> bool,
    max_dim: usize,
    name: impl Fn(usize) -> String,
    thin: impl Fn(&[usize]) -> bool,
) -> ChainComplex {
    let mut out = ChainComplex { cells: Vec::new(), chains: Vec::new(), index: HashMap::new() };
    let mut layer: Vec<Vec<usize>> = (0..count).map(|v| vec![v]).collect();
    for d in 0..=max_dim {
        if layer.is_empty() {
            break;
        }
        for chain in &layer {
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..=d)
                    .map(|i| {
                        let mut f = chain.clone();
                        f.remove(i);
                        Simplex::cell(out.index[&f])
                    })
                    .collect()
            };
            let label = chain.iter().map(|&v| name(v)).collect::<Vec<_>>().join("<");
            out.index.insert(chain.clone(), CellId(out.cells.len()));
            out.cells.push(Cell { name: label, dim: d, thin: d > 0 && thin(chain), faces });
            out.chains.push(chain.clone());
        }
        let mut next = Vec::new();
        for chain in &layer {
            let last = *chain.last().expect("chains are nonempty");
            for v in last + 1..count {
                if less(last, v) {
                    let mut c = chain.clone();
                    c.push(v);
                    next.push(c);
                }
            }
        }
        layer = next;
    }
    out
}

/// A standard simplex `Δ[n]` (or a face-closed part of it) with a chosen stratification.
#[derive(Clone, Debug)]
pub struct DeltaShape {
    pub n: usize,
    pub set: Arc<StratifiedSet>,
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, CellId>,
}

impl DeltaShape {
    fn build(n: usize, max_dim: usize, thin: impl Fn(&[usize]) -> bool) -> DeltaShape {
        let cx = chain_complex(n + 1, |a, b| a < b, max_dim, |v| v.to_string(), thin);
        let set = StratifiedSet::from_cells_unchecked(n, cx.cells);
        DeltaShape { n, set: Arc::new(set), chains: cx.chains, index: cx.index }
    }

    fn with_thin_faces(mut self, faces: &[usize]) -> DeltaShape {
        let extra: Vec<CellId> = faces
            .iter()
            .map(|&j| self.cell_of(&(0..=self.n).filter(|&v| v != j).collect::<Vec<_>>()))
            .collect();
        self.set = Arc::new(self.set.make_thin(&extra).expect("faces have positive dimension"));
        self
    }

    pub fn cell_of(&self, vertices: &[usize]) -> CellId {
        self.index[vertices]
    }

    pub fn chain(&self, c: CellId) -> &[usize] {
        &self.chains[c.0]
    }

    pub fn top(&self) -> CellId {
        self.cell_of(&(0..=self.n).collect::<Vec<_>>())
    }

    /// The cell `δ_j` of the top simplex.
    pub fn face_cell(&self, j: usize) -> CellId {
        self.cell_of(&(0..=self.n).filter(|&v| v != j).collect::<Vec<_>>())
    }

    /// The simplex named by an operator into `[n]`.
    pub fn simplex_of(&self, op: &Operator) -> Simplex {
        let (mono, epi) = op.epi_mono();
        Simplex { cell: self.cell_of(mono.values()), word: epi.word_of() }
    }

    /// The injection `[dim] -> [n]` of a cell.
    pub fn operator_of(&self, c: CellId) -> Operator {
        let chain = &self.chains[c.0];
        Operator::new(chain.len() as i64 - 1, self.n as i64, chain.clone()).expect("chains are increasing")
    }
}

pub fn standard(n: usize) -> StratifiedSet {
    standard_shape(n).set.as_ref().clone()
}

pub fn standard_shape(n: usize) -> DeltaShape {
    DeltaShape::build(n, n, |_| false)
}

pub fn boundary(n: usize) -> StratifiedSet {
    boundary_shape(n).set.as_ref().clone()
}

pub fn boundary_shape(n: usize) -> DeltaShape {
    let mut s = DeltaShape::build(n, n.saturating_sub(1), |_| false);
    if n == 0 {
        s = DeltaShape { n, set: Arc::new(StratifiedSet::empty()), chains: Vec::new(), index: HashMap::new() };
    }
    s
}

pub fn standard_thin(n: usize) -> StratifiedSet {
    DeltaShape::build(n, n, move |c| c.len() == n + 1).set.as_ref().clone()
}

fn check_nk(n: usize, k: usize, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(Error::OutOfRange { value: n as i64, max: i64::MAX });
    }
    if k > n {
        return Err(Error::OutOfRange { value: k as i64, max: n as i64 });
    }
    Ok(())
}

/// `{k−1, k, k+1} ∩ [n]`.
pub fn admissible_core(n: usize, k: usize) -> Vec<usize> {
    [k.checked_sub(1), Some(k), Some(k + 1)].into_iter().flatten().filter(|&v| v <= n).collect()
}

/// `Δᵏ[n]`: a face is thin iff its image contains `{k−1, k, k+1} ∩ [n]`.
pub fn complicial_shape(n: usize, k: usize) -> Result<DeltaShape> {
    check_nk(n, k, 1)?;
    let core = admissible_core(n, k);
    Ok(DeltaShape::build(n, n, move |c| core.iter().all(|v| c.contains(v))))
}

/// The faces `δ_{k−1}`, `δ_{k+1}` that exist.
pub fn primed_faces(n: usize, k: usize) -> Vec<usize> {
    [k.checked_sub(1), Some(k + 1)].into_iter().flatten().filter(|&v| v <= n).collect()
}

pub fn complicial_primed_shape(n: usize, k: usize) -> Result<DeltaShape> {
    check_nk(n, k, 2)?;
    Ok(complicial_shape(n, k)?.with_thin_faces(&primed_faces(n, k)))
}

pub fn complicial_dprimed_shape(n: usize, k: usize) -> Result<DeltaShape> {
    check_nk(n, k, 2)?;
    let mut faces = primed_faces(n, k);
    faces.push(k);
    Ok(complicial_shape(n, k)?.with_thin_faces(&faces))
}

pub fn complicial(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(complicial_shape(n, k)?.set.as_ref().clone())
}

pub fn complicial_primed(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(complicial_primed_shape(n, k)?.set.as_ref().clone())
}

pub fn complicial_dprimed(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(complicial_dprimed_shape(n, k)?.set.as_ref().clone())
}

/// `Λᵏ[n]` as a regular subset of `Δᵏ[n]`.
pub fn horn(n: usize, k: usize) -> Result<SubsetHandle> {
    let shape = complicial_shape(n, k)?;
    horn_in(&shape, k)
}

/// The horn on the faces other than `δ_k`, inside any stratification of `Δ[n]`.
pub fn horn_in(shape: &DeltaShape, k: usize) -> Result<SubsetHandle> {
    let seeds: Vec<CellId> = (0..=shape.n).filter(|&i| i != k).map(|i| shape.face_cell(i)).collect();
    crate::strat::regular_generated(&shape.set, &seeds)
}

/// A function `w: (r, s] -> ⌜m⌝`, the simplex `(ρ_{w(s)}, …, ρ_{w(r+1)})`
/// of a Gray cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeFunction {
    pub lower: usize,
    pub upper: usize,
    pub m: usize,
    /// `values[i]` is `w(lower + 1 + i)`.
    pub values: Vec<CubeCoordinate>,
}

impl CubeFunction {
    pub fn new(lower: usize, m: usize, values: Vec<CubeCoordinate>) -> Result<Self> {
        for v in &values {
            if let CubeCoordinate::Index(i) = v {
                if *i == 0 || *i > m {
                    return Err(Error::OutOfRange { value: *i as i64, max: m as i64 });
                }
            }
        }
        Ok(CubeFunction { lower, upper: lower + values.len(), m, values })
    }

    /// A function on `(0, n]` given as `w(1), …, w(n)`.
    pub fn on_cube(m: usize, values: Vec<CubeCoordinate>) -> Result<Self> {
        CubeFunction::new(0, m, values)
    }

    pub fn get(&self, i: usize) -> CubeCoordinate {
        self.values[i - self.lower - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn integer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m + 1];
        for v in &self.values {
            if let CubeCoordinate::Index(i) = v {
                counts[*i] += 1;
            }
        }
        counts
    }

    /// Nondegenerate iff every integer `1..=m` is a value.
    pub fn is_integer_surjective(&self) -> bool {
        self.integer_counts()[1..].iter().all(|&c| c > 0)
    }

    /// Every integer `1..=m` is hit exactly once.
    pub fn is_partial_bijection(&self) -> bool {
        self.integer_counts()[1..].iter().all(|&c| c == 1)
    }

    /// `∃ i < j` with `w(i) < w(j)` both integers.
    pub fn has_strict_inversion(&self) -> bool {
        let ints: Vec<usize> = self.values.iter().filter_map(|v| v.integer()).collect();
        ints.iter().enumerate().any(|(a, &x)| ints[a + 1..].iter().any(|&y| x < y))
    }

    /// Vertex `j` as coordinates `a_{lower+1}, …, a_upper`.
    pub fn vertex(&self, j: usize) -> Vec<u8> {
        self.values
            .iter()
            .map(|v| match v {
                CubeCoordinate::Plus => 1,
                CubeCoordinate::Minus => 0,
                CubeCoordinate::Index(i) => u8::from(*i <= j),
            })
            .collect()
    }

    /// `(w·α)(i) = rho_precompose(w(i), α)`.
    pub fn act(&self, alpha: &Operator) -> Result<CubeFunction> {
        if alpha.target() != self.m as i64 {
            return Err(Error::DimensionMismatch { expected: self.m, found: alpha.target().max(0) as usize });
        }
        Ok(CubeFunction {
            lower: self.lower,
            upper: self.upper,
            m: alpha.dom(),
            values: self.values.iter().map(|&v| crate::operator::rho_precompose(v, alpha)).collect(),
        })
    }

    /// Splits a function as `w′·σ` with `w′` integer-surjective.
    pub fn normal_form(&self) -> (CubeFunction, Operator) {
        let used: BTreeSet<usize> = self.values.iter().filter_map(|v| v.integer()).collect();
        let used: Vec<usize> = used.into_iter().collect();
        let rank = |u: usize| used.binary_search(&u).expect("used value") + 1;
        let values = self
            .values
            .iter()
            .map(|v| match v {
                CubeCoordinate::Index(u) => CubeCoordinate::Index(rank(*u)),
                other => *other,
            })
            .collect();
        let sigma = (0..=self.m).map(|j| used.iter().filter(|&&u| u <= j).count()).collect();
        let w = CubeFunction { lower: self.lower, upper: self.upper, m: used.len(), values };
        (w, Operator::from_parts(self.m, used.len(), sigma))
    }

    /// Coordinate operators `ρ_{w(i)}` as value lists, highest index first.
    fn ordinates(&self) -> Vec<Vec<u8>> {
        self.values
            .iter()
            .rev()
            .map(|v| {
                let rho = v.rho(self.m).expect("values checked at construction");
                rho.values().iter().map(|&x| x as u8).collect()
            })
            .collect()
    }

    /// Thinness in the iterated lax Gray tensor `Δ[1]^⊗n`.
    pub fn is_tensor_thin(&self) -> bool {
        tensor_thin(&self.ordinates())
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> =
            self.values.iter().enumerate().map(|(i, v)| format!("{}↦{}", self.lower + 1 + i, v)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for CubeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A simplex of `Δ[1]` given by values: thin iff degenerate.
fn interval_thin(op: &[u8]) -> bool {
    op.len() > 1 && op.windows(2).any(|w| w[0] == w[1])
}

/// Thinness of `(α_n, …, α_1)` in `Δ[1]^⊗n`, read as `Δ[1]^⊗(n−1) ⊗ Δ[1]`:
/// thin iff for each `p` the front `p`-face of the first factor or the
/// back `(m−p)`-face of the last is thin.
fn tensor_thin(ops: &[Vec<u8>]) -> bool {
    let m = ops[0].len() - 1;
    if m == 0 {
        return false;
    }
    if ops.len() == 1 {
        return interval_thin(&ops[0]);
    }
    let (front, last) = ops.split_at(ops.len() - 1);
    let last = &last[0];
    (0..=m).all(|p| {
        interval_thin(&last[p..]) || {
            let heads: Vec<Vec<u8>> = front.iter().map(|o| o[..=p].to_vec()).collect();
            tensor_thin(&heads)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeClass {
    Degenerate,
    Thin,
    Special,
    Plain,
}

/// A Gray cube or one of its stratified variants, with each cell's function.
#[derive(Clone, Debug)]
pub struct Cube {
    pub n: usize,
    pub set: Arc<StratifiedSet>,
    functions: Vec<CubeFunction>,
    index: HashMap<Vec<CubeCoordinate>, CellId>,
}

fn vertex_label(bits: &[u8]) -> String {
    let parts: Vec<String> = bits.iter().rev().map(|b| b.to_string()).collect();
    format!("({})", parts.join(","))
}

impl Cube {
    /// Cells on `(lower, lower + len]`; with `pinned` the top coordinate is
    /// held at 0, giving the homsets of the coherent path category.
    pub(crate) fn build(lower: usize, len: usize, pinned: bool) -> Cube {
        let free = if pinned { len - 1 } else { len };
        let verts: Vec<Vec<u8>> = {
            let mut v: Vec<Vec<u8>> = (0..1u32 << free)
                .map(|mask| {
                    let mut bits: Vec<u8> = (0..free).map(|i| ((mask >> i) & 1) as u8).collect();
                    if pinned {
                        bits.push(0);
                    }
                    bits
                })
                .collect();
            v.sort_by_key(|b| (b.iter().map(|&x| x as u32).sum::<u32>(), b.iter().rev().cloned().collect::<Vec<_>>()));
            v
        };
        let less = |a: usize, b: usize| verts[a] != verts[b] && verts[a].iter().zip(&verts[b]).all(|(x, y)| x <= y);
        let function_of = |chain: &[usize]| -> CubeFunction {
            let values = (0..len)
                .map(|i| {
                    let col: Vec<u8> = chain.iter().map(|&v| verts[v][i]).collect();
                    CubeCoordinate::from_rho(&col.iter().map(|&x| x as usize).collect::<Vec<_>>())
                })
                .collect();
            CubeFunction { lower, upper: lower + len, m: chain.len() - 1, values }
        };
        let cx = chain_complex(verts.len(), less, free, |v| vertex_label(&verts[v]), |c| {
            function_of(c).is_tensor_thin()
        });
        let functions: Vec<CubeFunction> = cx.chains.iter().map(|c| function_of(c)).collect();
        let index = functions.iter().enumerate().map(|(i, f)| (f.values.clone(), CellId(i))).collect();
        let set = StratifiedSet::from_cells_unchecked(free, cx.cells);
        Cube { n: len, set: Arc::new(set), functions, index }
    }

    pub fn new(n: usize) -> Cube {
        Cube::build(0, n, false)
    }

    pub fn function(&self, c: CellId) -> &CubeFunction {
        &self.functions[c.0]
    }

    pub fn functions(&self) -> &[CubeFunction] {
        &self.functions
    }

    pub fn cell_of(&self, w: &CubeFunction) -> Result<CellId> {
        self.index.get(&w.values).copied().ok_or_else(|| Error::UnknownCell(w.describe()))
    }

    /// Normal form of any function on the cube's interval.
    pub fn simplex_of(&self, w: &CubeFunction) -> Result<Simplex> {
        let (core, sigma) = w.normal_form();
        Ok(Simplex { cell: self.cell_of(&core)?, word: sigma.word_of() })
    }

    /// The function of a simplex, degenerate or not.
    pub fn function_of(&self, x: &Simplex) -> CubeFunction {
        let w = &self.functions[x.cell.0];
        w.act(&self.set.degeneracy_of(x)).expect("word matches cell dimension")
    }

    pub fn with_thin(&self, extra: &[CellId]) -> Result<Cube> {
        Ok(Cube { set: Arc::new(self.set.make_thin(extra)?), ..self.clone() })
    }
}

pub fn cube(n: usize) -> StratifiedSet {
    Cube::new(n).set.as_ref().clone()
}

pub fn classify_cube_simplex(n: usize, w: &CubeFunction) -> Result<CubeClass> {
    if w.len() != n {
        return Err(Error::BadParams(format!("function on {} points, expected {n}", w.len())));
    }
    Ok(if !w.is_integer_surjective() {
        CubeClass::Degenerate
    } else if w.m > 0 && w.is_partial_bijection() && !w.is_tensor_thin() {
        CubeClass::Special
    } else if w.m > 0 && w.is_tensor_thin() {
        CubeClass::Thin
    } else {
        CubeClass::Plain
    })
}

/// `cⁿ: Δ[1]^⊗n -> Δ[n]`, vertex `a ↦ min({n} ∪ {n − i : a_i = 0})`.
pub fn c_map(n: usize) -> StratifiedMap {
    let cube = Cube::new(n);
    let delta = standard_shape(n);
    let assignment = cube.functions.iter().map(|w| delta.simplex_of(&comparison_operator(w, n))).collect();
    StratifiedMap::new_unchecked(cube.set.clone(), delta.set.clone(), assignment)
}

/// Vertex values of `cⁿ` along a cube simplex (coordinates `(lower, lower+n]`).
pub(crate) fn comparison_operator(w: &CubeFunction, n: usize) -> Operator {
    let values = (0..=w.m)
        .map(|j| {
            let a = w.vertex(j);
            (1..=n).filter(|&i| a[i - 1] == 0).map(|i| n - i).min().unwrap_or(n).min(n)
        })
        .collect();
    Operator::new(w.m as i64, n as i64, values).expect("the comparison map is monotone")
}

fn check_ckn(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange { value: n as i64, max: i64::MAX });
    }
    if k == 0 || k > n {
        return Err(Error::OutOfRange { value: k as i64, max: n as i64 });
    }
    Ok(())
}

/// Criteria (i) and (ii) of `Cᵏₙ`, evaluated on partial bijections only.
pub fn ckn_extra_thin(w: &CubeFunction, k: usize) -> bool {
    if w.m == 0 || !w.is_partial_bijection() {
        return false;
    }
    let n = w.upper;
    let is_int = |i: usize| w.get(i).integer().is_some();
    let gap = (1..=n).any(|l| {
        w.get(l) == CubeCoordinate::Minus && (1..l).any(|i| is_int(i)) && (l + 1..=n).any(|j| is_int(j))
    });
    let pinned = is_int(k)
        && [k.checked_sub(1), Some(k + 1)]
            .into_iter()
            .flatten()
            .filter(|&i| (1..=n).contains(&i))
            .all(|i| w.get(i) != CubeCoordinate::Plus);
    gap || pinned
}

/// `Cᵏₙ`.
pub fn big_c_cube(n: usize, k: usize) -> Result<Cube> {
    check_ckn(n, k)?;
    let cube = Cube::new(n);
    let extra: Vec<CellId> = cube
        .set
        .ids()
        .filter(|&c| !cube.set.cell(c).thin && ckn_extra_thin(cube.function(c), k))
        .collect();
    cube.with_thin(&extra)
}

pub fn big_c(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(big_c_cube(n, k)?.set.as_ref().clone())
}

/// Membership in `Hᵏₙ`.
pub fn in_big_h(w: &CubeFunction, k: usize) -> bool {
    (1..=w.upper).any(|i| match w.get(i) {
        CubeCoordinate::Minus => true,
        CubeCoordinate::Plus => i != k,
        CubeCoordinate::Index(_) => false,
    })
}

/// `Hᵏₙ ⊆ Cᵏₙ`, regular.
pub fn big_h(n: usize, k: usize) -> Result<SubsetHandle> {
    let c = big_c_cube(n, k)?;
    big_h_in(&c, k)
}

pub fn big_h_in(c: &Cube, k: usize) -> Result<SubsetHandle> {
    let seeds: Vec<CellId> = c.set.ids().filter(|&id| in_big_h(c.function(id), k)).collect();
    crate::strat::regular_generated(&c.set, &seeds)
}

/// `w_i`: `+` at `i`, then the order-reversing bijection on the rest.
pub fn special_w(n: usize, i: usize) -> Result<CubeFunction> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange { value: i as i64, max: n as i64 });
    }
    let values = (1..=n)
        .map(|p| match p.cmp(&i) {
            std::cmp::Ordering::Equal => CubeCoordinate::Plus,
            std::cmp::Ordering::Greater => CubeCoordinate::Index(n + 1 - p),
            std::cmp::Ordering::Less => CubeCoordinate::Index(n - p),
        })
        .collect();
    CubeFunction::on_cube(n - 1, values)
}

/// `s_n(i) = n − i + 1`.
pub fn special_top(n: usize) -> CubeFunction {
    CubeFunction::on_cube(n, (1..=n).map(|i| CubeCoordinate::Index(n - i + 1)).collect())
        .expect("values within range")
}

fn c_variant(n: usize, k: usize, with_k: bool) -> Result<Cube> {
    let c = big_c_cube(n, k)?;
    let mut idx: Vec<usize> = [k.checked_sub(1), Some(k + 1)].into_iter().flatten().filter(|&i| (1..=n).contains(&i)).collect();
    if with_k {
        idx.push(k);
    }
    let extra = idx.iter().map(|&i| c.cell_of(&special_w(n, i)?)).collect::<Result<Vec<_>>>()?;
    c.with_thin(&extra)
}

/// `Ċᵏₙ`.
pub fn c_dot_cube(n: usize, k: usize) -> Result<Cube> {
    c_variant(n, k, false)
}

/// `C̈ᵏₙ`.
pub fn c_ddot_cube(n: usize, k: usize) -> Result<Cube> {
    c_variant(n, k, true)
}

pub fn c_dot(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(c_dot_cube(n, k)?.set.as_ref().clone())
}

pub fn c_ddot(n: usize, k: usize) -> Result<StratifiedSet> {
    Ok(c_ddot_cube(n, k)?.set.as_ref().clone())
}

/// Builds a named shape for the command line.
pub fn named_shape(name: &str, n: Option<usize>, k: Option<usize>) -> Result<StratifiedSet> {
    let need_n = || n.ok_or_else(|| Error::BadParams(format!("shape `{name}` needs --n")));
    let need_k = || k.ok_or_else(|| Error::BadParams(format!("shape `{name}` needs --k")));
    match name {
        "delta" => Ok(standard(need_n()?)),
        "boundary" => Ok(boundary(need_n()?)),
        "delta-thin" => Ok(standard_thin(need_n()?)),
        "complicial" => complicial(need_n()?, need_k()?),
        "complicial-primed" => complicial_primed(need_n()?, need_k()?),
        "complicial-dprimed" => complicial_dprimed(need_n()?, need_k()?),
        "horn" => Ok(horn(need_n()?, need_k()?)?.materialize().0),
        "cube" => Ok(cube(need_n()?)),
        "bigC" => big_c(need_n()?, need_k()?),
        "bigH" => Ok(big_h(need_n()?, need_k()?)?.materialize().0),
        "Cdot" => c_dot(need_n()?, need_k()?),
        "Cddot" => c_ddot(need_n()?, need_k()?),
        other => Err(Error::UnknownShape(other.to_string())),
    }
}

#[cfg(test)]
mod tests;
