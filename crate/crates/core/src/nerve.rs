//! The stratified nerve of an enriched category: its `n`-simplices are
//! enriched functors out of `S_lax[n]`, stored by their hom components.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::enriched::{suspension, EnrichedCategory, EnrichedFunctor};
use crate::error::{Error, Result};
use crate::hc_path::{arrow_of, hom_cube, path_act, simplex_of_arrow, split_at_zeros, PathArrow};
use crate::operator::{CubeCoordinate, Operator};
use crate::shapes::{special_top, standard, standard_shape};
use crate::strat::{Cell, CellId, MapSearch, Simplex, StratifiedMap, StratifiedSet};

/// An enriched functor `S_lax[dim] -> E`. `homs[(r, s)]` lists the images of
/// the cells of `hom_cube(s − r)` for `r < s`; `hom(r, r)` goes to identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub dim: usize,
    pub objects: Vec<usize>,
    pub homs: BTreeMap<(usize, usize), Vec<Simplex>>,
}

/// The arrow `ρ_{s_{n−1}}` of `S_lax(0, n)`, `n ≥ 1`.
pub fn special_arrow(n: usize) -> PathArrow {
    let mut w = if n > 1 { special_top(n - 1).values } else { Vec::new() };
    w.push(CubeCoordinate::Minus);
    PathArrow { r: 0, s: n, m: n - 1, w }
}

/// The value of a (possibly partial) simplex on an arrow whose hom is already assigned.
fn evaluate_in(
    e: &EnrichedCategory,
    objects: &[usize],
    homs: &BTreeMap<(usize, usize), Vec<Simplex>>,
    a: &PathArrow,
) -> Result<Simplex> {
    let (x, y) = (objects[a.r], objects[a.s]);
    if a.r == a.s {
        return Ok(e.identity_simplex(x, a.m));
    }
    let z = simplex_of_arrow(a)?;
    let images = homs.get(&(a.r, a.s)).ok_or_else(|| Error::BadParams(format!("hom({},{}) unassigned", a.r, a.s)))?;
    Ok(e.hom(x, y).degenerate_word(&images[z.cell.0], &z.word))
}

/// Composite of the images of the indecomposable pieces of `a`, if it has at least two.
fn composite_in(
    e: &EnrichedCategory,
    objects: &[usize],
    homs: &BTreeMap<(usize, usize), Vec<Simplex>>,
    a: &PathArrow,
) -> Result<Option<Simplex>> {
    let pieces = split_at_zeros(a);
    if pieces.len() < 2 {
        return Ok(None);
    }
    let mut acc = evaluate_in(e, objects, homs, &pieces[0])?;
    for p in &pieces[1..] {
        let y = evaluate_in(e, objects, homs, p)?;
        acc = e.compose(objects[a.r], objects[p.r], objects[p.s], &y, &acc)?;
    }
    Ok(Some(acc))
}

/// `f(a)` for an arrow `a` of `S_lax[f.dim]`.
pub fn evaluate(e: &EnrichedCategory, f: &NerveSimplex, a: &PathArrow) -> Result<Simplex> {
    if a.s > f.dim {
        return Err(Error::OutOfRange { value: a.s as i64, max: f.dim as i64 });
    }
    evaluate_in(e, &f.objects, &f.homs, a)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..=n).flat_map(|r| (r + 1..=n).map(move |s| (r, s))).collect();
    out.sort_by_key(|&(r, s)| (s - r, r));
    out
}

fn check_cap(e: &EnrichedCategory, objects: &[usize]) -> Result<bool> {
    for (r, s) in pairs(objects.len() - 1) {
        let h = e.hom(objects[r], objects[s]);
        if h.is_empty() {
            return Ok(false);
        }
        h.require_dim(s - r - 1)?;
    }
    Ok(true)
}

fn object_maps(objects: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out.into_iter().flat_map(|m: Vec<usize>| (0..objects).map(move |o| [m.clone(), vec![o]].concat())).collect();
    }
    out
}

/// Every `n`-simplex of the nerve: object maps in lexicographic order, then
/// hom components pair by pair, shortest first.
pub fn nerve_simplices(e: &EnrichedCategory, n: usize) -> Result<Vec<NerveSimplex>> {
    let mut out = Vec::new();
    let order = pairs(n);
    for objects in object_maps(e.len(), n) {
        if check_cap(e, &objects)? {
            extend(e, n, &objects, &order, &mut BTreeMap::new(), &mut out)?;
        }
    }
    Ok(out)
}

fn extend(
    e: &EnrichedCategory,
    n: usize,
    objects: &[usize],
    order: &[(usize, usize)],
    homs: &mut BTreeMap<(usize, usize), Vec<Simplex>>,
    out: &mut Vec<NerveSimplex>,
) -> Result<()> {
    let Some(&(r, s)) = order.first() else {
        out.push(NerveSimplex { dim: n, objects: objects.to_vec(), homs: homs.clone() });
        return Ok(());
    };
    let cube = hom_cube(s - r);
    let target = e.hom(objects[r], objects[s]);
    let prescribed =
        cube.set.ids().map(|c| composite_in(e, objects, homs, &arrow_of(r, &cube, c))).collect::<Result<Vec<_>>>()?;
    let solutions = MapSearch::new(&cube.set, target).fix_all(&prescribed).collect();
    for sol in solutions {
        homs.insert((r, s), sol.into_iter().map(|y| y.expect("total map")).collect());
        extend(e, n, objects, &order[1..], homs, out)?;
    }
    homs.remove(&(r, s));
    Ok(())
}

/// Checks that `f` is an enriched functor: stratified hom components that
/// respect composition.
pub fn validate_simplex(e: &EnrichedCategory, f: &NerveSimplex) -> Result<()> {
    let bad = |msg: String| Error::IllFormedFunctor(msg);
    if f.objects.len() != f.dim + 1 || f.objects.iter().any(|&o| o >= e.len()) {
        return Err(bad("object map does not match the dimension".into()));
    }
    for (r, s) in pairs(f.dim) {
        let cube = hom_cube(s - r);
        let images = f.homs.get(&(r, s)).ok_or_else(|| bad(format!("hom({r},{s}) missing")))?;
        if images.len() != cube.set.len() {
            return Err(bad(format!("hom({r},{s}) has {} images for {} cells", images.len(), cube.set.len())));
        }
        let map = StratifiedMap::new(cube.set.clone(), e.hom(f.objects[r], f.objects[s]).clone(), images.clone())
            .map_err(|err| bad(format!("hom({r},{s}): {err}")))?;
        for c in cube.set.ids() {
            if let Some(y) = composite_in(e, &f.objects, &f.homs, &arrow_of(r, &cube, c))? {
                if *map.image(c) != y {
                    return Err(bad(format!("hom({r},{s}) does not respect composition at `{}`", cube.set.name(c))));
                }
            }
        }
    }
    if f.homs.len() != pairs(f.dim).len() {
        return Err(bad("hom components outside r < s".into()));
    }
    Ok(())
}

/// `f·α`, precomposition with `S_lax(α)`.
pub fn nerve_act(e: &EnrichedCategory, f: &NerveSimplex, alpha: &Operator) -> Result<NerveSimplex> {
    if alpha.cod() != f.dim || alpha.source() < 0 {
        return Err(Error::DimensionMismatch { expected: f.dim, found: alpha.cod() });
    }
    let m = alpha.dom();
    let objects: Vec<usize> = (0..=m).map(|i| f.objects[alpha.apply(i)]).collect();
    let mut homs = BTreeMap::new();
    for (r, s) in pairs(m) {
        let cube = hom_cube(s - r);
        let images = cube
            .set
            .ids()
            .map(|c| evaluate(e, f, &path_act(alpha, &arrow_of(r, &cube, c))?))
            .collect::<Result<Vec<_>>>()?;
        homs.insert((r, s), images);
    }
    Ok(NerveSimplex { dim: m, objects, homs })
}

pub fn nerve_face(e: &EnrichedCategory, f: &NerveSimplex, j: usize) -> Result<NerveSimplex> {
    nerve_act(e, f, &Operator::face(f.dim, j)?)
}

pub fn nerve_degeneracy(e: &EnrichedCategory, f: &NerveSimplex, j: usize) -> Result<NerveSimplex> {
    nerve_act(e, f, &Operator::degeneracy(f.dim, j)?)
}

/// The smallest `j` with `f = s_j d_j f`.
pub fn degeneracy_index(e: &EnrichedCategory, f: &NerveSimplex) -> Result<Option<usize>> {
    for j in 0..f.dim {
        let collapse = Operator::face(f.dim, j)?.compose(&Operator::degeneracy(f.dim - 1, j)?)?;
        if nerve_act(e, f, &collapse)? == *f {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

pub fn is_degenerate(e: &EnrichedCategory, f: &NerveSimplex) -> Result<bool> {
    Ok(degeneracy_index(e, f)?.is_some())
}

/// The thinness rule above dimension 1: the special top arrow goes to a thin simplex.
fn thin_above_one(e: &EnrichedCategory, f: &NerveSimplex) -> Result<bool> {
    let y = evaluate(e, f, &special_arrow(f.dim))?;
    Ok(e.hom(f.objects[0], f.objects[f.dim]).is_thin(&y))
}

/// Whether the 1-simplex `edge` has an equivalence inverse among `triangles`.
fn has_inverse(e: &EnrichedCategory, edge: &NerveSimplex, triangles: &[NerveSimplex]) -> Result<bool> {
    let (x, y) = (edge.objects[0], edge.objects[1]);
    let identity = |o: usize| -> Result<NerveSimplex> {
        let point = NerveSimplex { dim: 0, objects: vec![o], homs: BTreeMap::new() };
        nerve_degeneracy(e, &point, 0)
    };
    let (id_x, id_y) = (identity(x)?, identity(y)?);
    let mut faces = HashMap::new();
    for t in triangles {
        if thin_above_one(e, t)? {
            let d = (nerve_face(e, t, 0)?, nerve_face(e, t, 1)?, nerve_face(e, t, 2)?);
            faces.insert(t, d);
        }
    }
    for (u, (u0, u1, u2)) in &faces {
        if u.objects != [x, y, x] || *u2 != *edge || *u1 != id_x {
            continue;
        }
        let reverse = u0;
        if faces.values().any(|(v0, v1, v2)| v2 == reverse && v0 == edge && *v1 == id_y) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The nerve's thinness rule; 1-simplices are thin when they have an
/// equivalence inverse witnessed by thin 2-simplices.
pub fn nerve_thin(e: &EnrichedCategory, f: &NerveSimplex) -> Result<bool> {
    match f.dim {
        0 => Ok(false),
        1 => {
            if is_degenerate(e, f)? {
                return Ok(true);
            }
            let triangles = match nerve_simplices(e, 2) {
                Ok(t) => t,
                Err(Error::CapExceeded { .. }) => return Ok(false),
                Err(err) => return Err(err),
            };
            has_inverse(e, f, &triangles)
        }
        _ => Ok(is_degenerate(e, f)? || thin_above_one(e, f)?),
    }
}

/// Whether every `k`-admissible face of `f` sends its special top arrow to a thin simplex.
pub fn classify_complicial(e: &EnrichedCategory, f: &NerveSimplex, k: usize) -> Result<bool> {
    let n = f.dim;
    if k == 0 || k >= n {
        return Err(Error::OutOfRange { value: k as i64, max: n as i64 - 1 });
    }
    for image in subsets(n) {
        let m = image.len() - 1;
        if m == 0 {
            continue;
        }
        let alpha = Operator::new(m as i64, n as i64, image)?;
        if !alpha.is_admissible(k)? {
            continue;
        }
        let a = path_act(&alpha, &special_arrow(m))?;
        let y = evaluate(e, f, &a)?;
        if !e.hom(f.objects[a.r], f.objects[a.s]).is_thin(&y) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u64..1 << (n + 1)).map(|bits| (0..=n).filter(|&i| bits >> i & 1 == 1).collect()).collect()
}

fn cell_name(e: &EnrichedCategory, f: &NerveSimplex, serial: usize) -> String {
    let objects: Vec<&str> = f.objects.iter().map(|&o| e.objects()[o].as_str()).collect();
    if f.dim == 0 {
        objects[0].to_string()
    } else {
        format!("{}#{serial}", objects.join(">"))
    }
}

/// The stratified nerve up to dimension `dim_cap`, together with the simplex behind each cell.
pub struct Nerve {
    pub set: Arc<StratifiedSet>,
    pub simplices: Vec<NerveSimplex>,
}

/// Builds the nerve up to `dim_cap`. It is marked truncated when a hom is, or
/// when nondegenerate simplices exist one dimension up.
pub fn build_nerve(e: &EnrichedCategory, dim_cap: usize) -> Result<Nerve> {
    let mut index: HashMap<NerveSimplex, Simplex> = HashMap::new();
    let mut cells: Vec<Cell> = Vec::new();
    let mut simplices = Vec::new();
    let triangles = if dim_cap >= 1 { nerve_simplices(e, 2).ok() } else { None };
    let mut serials: HashMap<Vec<usize>, usize> = HashMap::new();
    for n in 0..=dim_cap {
        let layer = if n == 2 && triangles.is_some() { triangles.clone().expect("checked") } else { nerve_simplices(e, n)? };
        for f in layer {
            if let Some(j) = degeneracy_index(e, &f)? {
                let below = &index[&nerve_face(e, &f, j)?];
                let base = cells[below.cell.0].dim;
                let word = Operator::degeneracy_word(base, &below.word)
                    .compose(&Operator::degeneracy(n - 1, j)?)?
                    .word_of();
                index.insert(f, Simplex { cell: below.cell, word });
                continue;
            }
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|j| Ok(index[&nerve_face(e, &f, j)?].clone())).collect::<Result<Vec<_>>>()?
            };
            let thin = match n {
                0 => false,
                1 => triangles.as_ref().map_or(Ok(false), |t| has_inverse(e, &f, t))?,
                _ => thin_above_one(e, &f)?,
            };
            let serial = serials.entry(f.objects.clone()).or_insert(0);
            let name = cell_name(e, &f, *serial);
            *serial += 1;
            index.insert(f.clone(), Simplex::cell(CellId(cells.len())));
            cells.push(Cell { name, dim: n, thin, faces });
            simplices.push(f);
        }
    }
    let hom_truncated = (0..e.len()).any(|a| (0..e.len()).any(|b| e.hom(a, b).truncated()));
    let truncated = hom_truncated || {
        match nerve_simplices(e, dim_cap + 1) {
            Ok(above) => {
                let mut any = false;
                for f in &above {
                    if !is_degenerate(e, f)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            Err(Error::CapExceeded { .. }) => true,
            Err(err) => return Err(err),
        }
    };
    let set = StratifiedSet::from_cells(dim_cap, cells)?.with_truncated(truncated);
    Ok(Nerve { set: Arc::new(set), simplices })
}

/// The image of a nerve simplex under an enriched functor.
pub fn functor_image(functor: &EnrichedFunctor, f: &NerveSimplex) -> NerveSimplex {
    let objects: Vec<usize> = f.objects.iter().map(|&o| functor.object_map[o]).collect();
    let homs = f
        .homs
        .iter()
        .map(|(&(r, s), images)| {
            let map = functor.hom_map(f.objects[r], f.objects[s]);
            ((r, s), images.iter().map(|y| map.apply(y)).collect())
        })
        .collect();
    NerveSimplex { dim: f.dim, objects, homs }
}

/// `ΣΔ[n]`, the suspension of the standard simplex.
pub fn sigma_delta(n: usize) -> EnrichedCategory {
    suspension(&standard(n))
}

/// `fⁿ: S_lax[n + 1] -> ΣΔ[n]`, sending `0, …, n` to `0` and `n + 1` to `1`.
/// On arrows `r -> n + 1`, a vertex goes to `min({n − r} ∪ {n − i : a_i = 0})`.
pub fn sigma_functor(n: usize) -> NerveSimplex {
    let top = n + 1;
    let delta = standard_shape(n);
    let mut objects = vec![0; top];
    objects.push(1);
    let mut homs = BTreeMap::new();
    for (r, s) in pairs(top) {
        let cube = hom_cube(s - r);
        let images = cube
            .functions()
            .iter()
            .map(|w| {
                if s <= n {
                    return Simplex { cell: CellId(0), word: Operator::terminal(w.m).word_of() };
                }
                let values = (0..=w.m)
                    .map(|j| {
                        let a = w.vertex(j);
                        (1..s - r).filter(|&t| a[t - 1] == 0).map(|t| n - (r + t)).min().unwrap_or(n - r)
                    })
                    .collect();
                delta.simplex_of(&Operator::new(w.m as i64, n as i64, values).expect("the comparison map is monotone"))
            })
            .collect();
        homs.insert((r, s), images);
    }
    NerveSimplex { dim: top, objects, homs }
}

/// The Yoneda functor `ΣΔ[m] -> E` of an `m`-simplex `x` of `hom(a, b)`.
pub fn yoneda_functor(e: &Arc<EnrichedCategory>, a: usize, b: usize, x: &Simplex) -> Result<EnrichedFunctor> {
    let target = e.hom(a, b);
    let m = target.dim(x);
    let source = Arc::new(sigma_delta(m));
    let delta = standard_shape(m);
    let assignment =
        delta.set.ids().map(|c| target.act(x, &delta.operator_of(c))).collect::<Result<Vec<_>>>()?;
    let mut maps = BTreeMap::new();
    maps.insert((0, 1), StratifiedMap::new(source.hom(0, 1).clone(), target.clone(), assignment)?);
    for (o, image) in [(0, a), (1, b)] {
        let id = vec![Simplex::cell(e.identity(image))];
        maps.insert((o, o), StratifiedMap::new(source.hom(o, o).clone(), e.hom(image, image).clone(), id)?);
    }
    EnrichedFunctor::new(source, e.clone(), vec![a, b], maps)
}

/// Evaluates a nerve simplex at the special top arrow, recovering the arrow
/// a Yoneda functor composed with `fⁿ` came from.
pub fn recover_arrow(e: &EnrichedCategory, f: &NerveSimplex) -> Result<Simplex> {
    if f.dim == 0 {
        return Err(Error::OutOfRange { value: 0, max: 0 });
    }
    evaluate(e, f, &special_arrow(f.dim))
}
