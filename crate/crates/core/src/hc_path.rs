//! The homotopy coherent path category `S_lax[n]`: homsets are pinned Gray
//! cubes, composition is concatenation, and simplicial operators act by the
//! elementary insertion and merge rules.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{CubeCoordinate, Operator};
use crate::shapes::{Cube, CubeFunction};
use crate::strat::{CellId, Simplex, StratifiedSet};

/// An `m`-simplex of `S_lax(r, s)`, as `w: (r, s] -> ⌜m⌝` with `w(s) = −`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArrow", into = "RawArrow")]
pub struct PathArrow {
    pub r: usize,
    pub s: usize,
    pub m: usize,
    /// `w[i]` is `w(r + 1 + i)`.
    pub w: Vec<CubeCoordinate>,
}

#[derive(Serialize, Deserialize)]
struct RawArrow {
    r: usize,
    s: usize,
    m: usize,
    w: BTreeMap<String, CubeCoordinate>,
}

impl TryFrom<RawArrow> for PathArrow {
    type Error = Error;

    fn try_from(raw: RawArrow) -> Result<Self> {
        let mut w = Vec::new();
        for i in raw.r + 1..=raw.s {
            let v = raw
                .w
                .get(&i.to_string())
                .ok_or_else(|| Error::Parse(format!("missing w({i})")))?;
            w.push(*v);
        }
        if raw.w.len() != w.len() {
            return Err(Error::Parse("w has indices outside (r, s]".into()));
        }
        PathArrow::new(raw.r, raw.s, raw.m, w)
    }
}

impl From<PathArrow> for RawArrow {
    fn from(a: PathArrow) -> Self {
        let w = a.w.iter().enumerate().map(|(i, v)| ((a.r + 1 + i).to_string(), *v)).collect();
        RawArrow { r: a.r, s: a.s, m: a.m, w }
    }
}

impl PathArrow {
    pub fn new(r: usize, s: usize, m: usize, w: Vec<CubeCoordinate>) -> Result<Self> {
        if s < r {
            return Err(Error::BadInterval { r, s });
        }
        if w.len() != s - r {
            return Err(Error::BadParams(format!("w has {} values on ({r}, {s}]", w.len())));
        }
        if s > r && w[s - r - 1] != CubeCoordinate::Minus {
            return Err(Error::BadParams(format!("w({s}) must be −")));
        }
        for v in &w {
            if let CubeCoordinate::Index(i) = v {
                if *i == 0 || *i > m {
                    return Err(Error::OutOfRange { value: *i as i64, max: m as i64 });
                }
            }
        }
        Ok(PathArrow { r, s, m, w })
    }

    pub fn identity(r: usize, m: usize) -> Self {
        PathArrow { r, s: r, m, w: Vec::new() }
    }

    /// The indecomposable 0-arrow `⟨r, s⟩`, all ordinates `+` but the last.
    pub fn generator(r: usize, s: usize) -> Result<Self> {
        if s <= r {
            return Err(Error::BadInterval { r, s });
        }
        let mut w = vec![CubeCoordinate::Plus; s - r - 1];
        w.push(CubeCoordinate::Minus);
        PathArrow::new(r, s, 0, w)
    }

    pub fn get(&self, i: usize) -> CubeCoordinate {
        self.w[i - self.r - 1]
    }

    pub fn function(&self) -> CubeFunction {
        CubeFunction { lower: 0, upper: self.w.len(), m: self.m, values: self.w.clone() }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.function().is_integer_surjective()
    }

    pub fn is_thin(&self) -> bool {
        self.m > 0 && (self.is_degenerate() || self.function().is_tensor_thin())
    }

    /// Indecomposable: no `−` strictly inside the interval.
    pub fn is_indecomposable(&self) -> bool {
        self.s > self.r && self.w[..self.w.len() - 1].iter().all(|&v| v != CubeCoordinate::Minus)
    }

    fn shifted(&self, r: usize, s: usize, w: Vec<CubeCoordinate>) -> PathArrow {
        PathArrow { r, s, m: self.m, w }
    }

    fn act_face(&self, k: usize) -> PathArrow {
        if self.s < k {
            self.clone()
        } else if k <= self.r {
            self.shifted(self.r + 1, self.s + 1, self.w.clone())
        } else {
            let mut w = self.w.clone();
            w.insert(k - self.r - 1, CubeCoordinate::Plus);
            self.shifted(self.r, self.s + 1, w)
        }
    }

    fn act_degeneracy(&self, k: usize) -> PathArrow {
        if self.s <= k {
            self.clone()
        } else if k < self.r {
            self.shifted(self.r - 1, self.s - 1, self.w.clone())
        } else if k == self.r {
            self.shifted(self.r, self.s - 1, self.w[1..].to_vec())
        } else {
            let at = k - self.r - 1;
            let mut w = self.w.clone();
            let merged = w[at].meet(w[at + 1]);
            w.remove(at + 1);
            w[at] = merged;
            self.shifted(self.r, self.s - 1, w)
        }
    }

    /// The simplicial action on the cube coordinate, `w·β` for `β: [m′] -> [m]`.
    pub fn act_dim(&self, beta: &Operator) -> Result<PathArrow> {
        let f = self.function().act(beta)?;
        Ok(PathArrow { r: self.r, s: self.s, m: f.m, w: f.values })
    }
}

/// `b ∘ a`, concatenating `w`.
pub fn compose_path(b: &PathArrow, a: &PathArrow) -> Result<PathArrow> {
    if a.s != b.r {
        return Err(Error::ObjectMismatch(format!("({}, {}] then ({}, {}]", a.r, a.s, b.r, b.s)));
    }
    if a.m != b.m {
        return Err(Error::DimensionMismatch { expected: a.m, found: b.m });
    }
    let mut w = a.w.clone();
    w.extend_from_slice(&b.w);
    Ok(PathArrow { r: a.r, s: b.s, m: a.m, w })
}

/// Indecomposable pieces in composition order.
pub fn split_at_zeros(a: &PathArrow) -> Vec<PathArrow> {
    let mut out = Vec::new();
    let mut start = a.r;
    for i in a.r + 1..=a.s {
        if a.get(i) == CubeCoordinate::Minus {
            let w = a.w[start - a.r..i - a.r].to_vec();
            out.push(PathArrow { r: start, s: i, m: a.m, w });
            start = i;
        }
    }
    out
}

/// `S_lax(α)` applied to an arrow of `S_lax[n]`, `n` the source of `α`.
pub fn path_act(alpha: &Operator, a: &PathArrow) -> Result<PathArrow> {
    if alpha.source() < 0 || a.s > alpha.dom() {
        return Err(Error::OutOfRange { value: a.s as i64, max: alpha.source() });
    }
    let ez = alpha.ez_factorize();
    let mut cur = a.clone();
    for &j in &ez.degeneracies {
        cur = cur.act_degeneracy(j);
    }
    for &j in &ez.faces {
        cur = cur.act_face(j);
    }
    Ok(cur)
}

/// Membership in the homotopy coherent horn `Λᵏ[n]`.
pub fn hc_horn_member(n: usize, k: usize, a: &PathArrow) -> Result<bool> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange { value: k as i64, max: n as i64 - 1 });
    }
    if a.r != 0 || a.s != n {
        return Ok(true);
    }
    Ok((1..n).any(|i| match a.get(i) {
        CubeCoordinate::Minus => true,
        CubeCoordinate::Plus => i != k,
        CubeCoordinate::Index(_) => false,
    }))
}

fn cube_cache() -> &'static Mutex<HashMap<usize, Arc<Cube>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Cube>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The stratified homset of length `len = s − r`, shared across calls.
pub fn hom_cube(len: usize) -> Arc<Cube> {
    let mut cache = cube_cache().lock().expect("cube cache poisoned");
    cache
        .entry(len)
        .or_insert_with(|| Arc::new(if len == 0 { Cube::build(0, 0, false) } else { Cube::build(0, len, true) }))
        .clone()
}

pub fn hom_set(r: usize, s: usize) -> Result<StratifiedSet> {
    if s < r {
        return Err(Error::BadInterval { r, s });
    }
    Ok(hom_cube(s - r).set.as_ref().clone())
}

/// The arrow of `S_lax(r, r + len)` carried by a cell of `hom_cube(len)`.
pub fn arrow_of(r: usize, cube: &Cube, c: CellId) -> PathArrow {
    let f = cube.function(c);
    PathArrow { r, s: r + f.values.len(), m: f.m, w: f.values.clone() }
}

/// Normal form of an arrow inside `hom_cube(s − r)`.
pub fn simplex_of_arrow(a: &PathArrow) -> Result<Simplex> {
    hom_cube(a.s - a.r).simplex_of(&a.function())
}

/// Every arrow of `S_lax[n]` given by a nondegenerate cell of dimension at most `max_dim`.
pub fn generators_up_to(n: usize, max_dim: usize) -> Vec<PathArrow> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in r..=n {
            let cube = hom_cube(s - r);
            for c in cube.set.ids() {
                if cube.set.cell(c).dim <= max_dim {
                    out.push(arrow_of(r, &cube, c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::CubeCoordinate::{Index, Minus, Plus};
    use crate::shapes::cube;
    use proptest::prelude::*;

    fn arrow(r: usize, m: usize, w: &[CubeCoordinate]) -> PathArrow {
        PathArrow::new(r, r + w.len(), m, w.to_vec()).unwrap()
    }

    #[test]
    fn hom_set_examples() {
        assert_eq!(hom_set(0, 0).unwrap().census(), vec![1]);
        assert_eq!(hom_set(0, 0).unwrap().name(CellId(0)), "()");
        assert_eq!(hom_set(0, 1).unwrap().census(), vec![1]);
        let h = hom_set(0, 3).unwrap();
        assert_eq!(h.len(), 11);
        assert_eq!(h.census(), cube(2).census());
        assert_eq!(h.thin_census(), cube(2).thin_census());
        assert!(matches!(hom_set(2, 1), Err(Error::BadInterval { .. })));
        for len in 0..=5 {
            assert!(hom_cube(len).set.validate().is_valid());
        }
    }

    #[test]
    fn hom_cube_matches_smaller_cube() {
        for len in 1..=4 {
            let h = hom_cube(len);
            let c = Cube::new(len - 1);
            for id in c.set.ids() {
                let mut w = c.function(id).values.clone();
                w.push(Minus);
                let a = PathArrow::new(0, len, c.function(id).m, w).unwrap();
                let x = simplex_of_arrow(&a).unwrap();
                assert!(!x.is_degenerate());
                assert_eq!(h.set.cell(x.cell).thin, c.set.cell(id).thin);
            }
        }
    }

    #[test]
    fn compose_examples() {
        let a = arrow(0, 1, &[Index(1), Minus]);
        assert_eq!(compose_path(&PathArrow::identity(2, 1), &a).unwrap(), a);
        let g01 = PathArrow::generator(0, 1).unwrap();
        let g12 = PathArrow::generator(1, 2).unwrap();
        assert_eq!(compose_path(&g12, &g01).unwrap().w, vec![Minus, Minus]);
        let b = arrow(2, 1, &[Minus]);
        let c = compose_path(&b, &a).unwrap();
        assert_eq!(c.w, vec![Index(1), Minus, Minus]);
        assert!(matches!(compose_path(&a, &a), Err(Error::ObjectMismatch(_))));
        assert!(matches!(compose_path(&b, &arrow(0, 2, &[Index(1), Minus])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn split_examples() {
        let a = arrow(0, 1, &[Index(1), Minus]);
        assert_eq!(split_at_zeros(&a), vec![a.clone()]);
        // vertex (0,1,0): a_1 = 0, a_2 = 1, a_3 = 0
        let v = arrow(0, 0, &[Minus, Plus, Minus]);
        let parts = split_at_zeros(&v);
        assert_eq!(parts, vec![arrow(0, 0, &[Minus]), arrow(1, 0, &[Plus, Minus])]);
        assert!(split_at_zeros(&PathArrow::identity(3, 0)).is_empty());
    }

    #[test]
    fn split_round_trips_and_composition_is_thin_preserving() {
        let gens = generators_up_to(4, 3);
        for a in &gens {
            let parts = split_at_zeros(a);
            if a.r == a.s {
                continue;
            }
            let mut acc = parts[0].clone();
            for p in &parts[1..] {
                acc = compose_path(p, &acc).unwrap();
            }
            assert_eq!(&acc, a);
            assert!(parts.iter().all(PathArrow::is_indecomposable));
        }
        for a in &gens {
            for b in &gens {
                if a.s == b.r && a.m == b.m {
                    let c = compose_path(b, a).unwrap();
                    if a.is_thin() || b.is_thin() {
                        assert!(c.is_thin(), "{a:?} {b:?}");
                    }
                    for x in &gens {
                        if b.s == x.r && x.m == a.m {
                            let l = compose_path(x, &c).unwrap();
                            let r = compose_path(&compose_path(x, b).unwrap(), a).unwrap();
                            assert_eq!(l, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn path_act_examples() {
        let top = arrow(0, 1, &[Index(1), Minus]);
        let d1 = Operator::face(3, 1).unwrap();
        assert_eq!(path_act(&d1, &top).unwrap().w, vec![Plus, Index(1), Minus]);

        let s0 = Operator::degeneracy(1, 0).unwrap();
        let a = arrow(0, 1, &[Index(1), Minus]);
        let b = path_act(&s0, &a).unwrap();
        assert_eq!((b.r, b.s, b.w.clone()), (0, 1, vec![Minus]));

        let s1 = Operator::degeneracy(2, 1).unwrap();
        let a = arrow(0, 2, &[Index(1), Index(2), Minus]);
        let b = path_act(&s1, &a).unwrap();
        assert_eq!((b.r, b.s, b.w.clone()), (0, 2, vec![Index(2), Minus]));
    }

    #[test]
    fn faces_insert_plus() {
        for n in 1..=4 {
            for k in 0..=n {
                let d = Operator::face(n, k).unwrap();
                let gens = generators_up_to(n - 1, 3);
                let images: Vec<PathArrow> = gens.iter().map(|a| path_act(&d, a).unwrap()).collect();
                let mut seen = std::collections::HashSet::new();
                for (a, b) in gens.iter().zip(&images) {
                    assert!(seen.insert(b.clone()), "not injective");
                    if a.r < k && k <= a.s {
                        assert_eq!(b.get(k), Plus);
                    }
                }
            }
        }
    }

    #[test]
    fn path_act_is_a_stratified_functor() {
        let gens = generators_up_to(3, 2);
        for n in 0..=3 {
            for k in 0..=3 {
                let mut ops = Vec::new();
                if k <= n + 1 && n + 1 <= 4 {
                    ops.push(Operator::face(n + 1, k).unwrap());
                }
                if k < n {
                    ops.push(Operator::degeneracy(n - 1, k).unwrap());
                }
                for alpha in ops {
                    if alpha.dom() != 3 {
                        continue;
                    }
                    for a in &gens {
                        let fa = path_act(&alpha, a).unwrap();
                        assert!(!a.is_thin() || fa.is_thin());
                        let beta = Operator::face(a.m.max(1), 0).unwrap();
                        if a.m > 0 {
                            let lhs = path_act(&alpha, &a.act_dim(&beta).unwrap()).unwrap();
                            assert_eq!(lhs, fa.act_dim(&beta).unwrap());
                        }
                        for b in &gens {
                            if a.s == b.r && a.m == b.m {
                                let ba = compose_path(b, a).unwrap();
                                let rhs = compose_path(&path_act(&alpha, b).unwrap(), &fa).unwrap();
                                assert_eq!(path_act(&alpha, &ba).unwrap(), rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn horn_membership_examples() {
        let a = arrow(1, 1, &[Index(1), Minus]);
        assert!(hc_horn_member(3, 1, &a).unwrap());
        assert!(!hc_horn_member(3, 1, &arrow(0, 2, &[Index(1), Index(2), Minus])).unwrap());
        assert!(hc_horn_member(3, 1, &arrow(0, 1, &[Index(1), Plus, Minus])).unwrap());
        assert!(hc_horn_member(3, 0, &a).is_err());
    }

    #[test]
    fn arrow_json() {
        let a = arrow(1, 2, &[Index(2), Plus, Minus]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"r":1,"s":4,"m":2,"w":{"2":2,"3":"+","4":"-"}}"#);
        let back: PathArrow = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PathArrow>(r#"{"r":0,"s":1,"m":0,"w":{"1":"+"}}"#).is_err());
    }

    fn arb_op(max: usize) -> impl Strategy<Value = Operator> {
        (0..=max, 0..=max).prop_flat_map(|(n, m)| {
            proptest::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
                v.sort_unstable();
                Operator::new(n as i64, m as i64, v).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn path_act_is_functorial(a in arb_op(4), seed in proptest::collection::vec(0usize..5, 5)) {
            let p = a.cod();
            let b = {
                let mut v: Vec<usize> = seed.iter().take(p + 1).map(|x| x % 5).collect();
                while v.len() < p + 1 { v.push(4); }
                v.sort_unstable();
                Operator::new(p as i64, 4, v).unwrap()
            };
            let ba = b.compose(&a).unwrap();
            for x in generators_up_to(a.dom(), 2) {
                let lhs = path_act(&ba, &x).unwrap();
                let rhs = path_act(&b, &path_act(&a, &x).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
