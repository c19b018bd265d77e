//! Categories enriched in stratified sets under the Gray product, with the
//! constructors used as test beds for nerves.

mod category;
mod functor;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use category::{
    cyclic_group, describe_string, from_category, terminal_category, walking_arrow, walking_iso, ArrowSpec,
    CategoryNerve, CategoryPresentation, CompositeSpec, FiniteCategory, Morphism,
};
pub use functor::{all_functors, local_fibration_check, EnrichedFunctor};

use crate::anodyne::{rlp_report, LiftingReport, Mode};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::shapes::standard;
use crate::strat::{
    gray_product, gray_product_capped, CellId, Product, SetJson, Simplex, SimplexJson, StratifiedMap, StratifiedSet,
};

/// A composition map `hom(b, c) ⊛ hom(a, b) -> hom(a, c)`.
#[derive(Clone, Debug)]
pub struct Composition {
    pub product: Product,
    pub map: StratifiedMap,
}

#[derive(Clone, Debug)]
pub struct EnrichedCategory {
    objects: Vec<String>,
    dim_cap: usize,
    homs: BTreeMap<(usize, usize), Arc<StratifiedSet>>,
    identities: Vec<CellId>,
    comps: BTreeMap<(usize, usize, usize), Composition>,
    gray_validated: bool,
}

/// Unvalidated components; missing homs are empty and missing tables empty.
#[derive(Clone, Debug)]
pub struct EnrichedData {
    pub objects: Vec<String>,
    pub dim_cap: usize,
    pub homs: BTreeMap<(usize, usize), Arc<StratifiedSet>>,
    pub identities: Vec<CellId>,
    pub comps: BTreeMap<(usize, usize, usize), Vec<Simplex>>,
}

fn composition_product(left: &Arc<StratifiedSet>, right: &Arc<StratifiedSet>, dim_cap: usize) -> Product {
    if left.truncated() || right.truncated() {
        gray_product_capped(left, right, dim_cap)
    } else {
        gray_product(left, right)
    }
}

fn law(msg: impl Into<String>) -> Error {
    Error::LawViolation(msg.into())
}

impl EnrichedData {
    pub fn new(objects: Vec<String>, dim_cap: usize) -> Self {
        EnrichedData { objects, dim_cap, homs: BTreeMap::new(), identities: Vec::new(), comps: BTreeMap::new() }
    }

    pub fn hom(&self, a: usize, b: usize) -> Arc<StratifiedSet> {
        self.homs.get(&(a, b)).cloned().unwrap_or_else(|| Arc::new(StratifiedSet::empty()))
    }

    /// The domain of the composition map for `(a, b, c)`.
    pub fn product(&self, a: usize, b: usize, c: usize) -> Product {
        composition_product(&self.hom(b, c), &self.hom(a, b), self.dim_cap)
    }

    /// Fills every table from a rule on the component simplices `(y, x)`, `y ∈ hom(b, c)`.
    pub fn tabulate(&mut self, rule: impl Fn(usize, usize, usize, &Simplex, &Simplex) -> Result<Simplex>) -> Result<()> {
        let n = self.objects.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let product = self.product(a, b, c);
                    let table = product
                        .set()
                        .ids()
                        .map(|z| {
                            let (y, x) = product.components(z);
                            rule(a, b, c, y, x)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    self.comps.insert((a, b, c), table);
                }
            }
        }
        Ok(())
    }
}

/// Validates the components and the unit and associativity laws on all
/// simplices up to the dimension cap.
pub fn make_enriched(data: EnrichedData) -> Result<EnrichedCategory> {
    let n = data.objects.len();
    if data.identities.len() != n {
        return Err(law(format!("{} identities for {n} objects", data.identities.len())));
    }
    let mut homs = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            homs.insert((a, b), data.hom(a, b));
        }
    }
    for (a, &id) in data.identities.iter().enumerate() {
        let h = &homs[&(a, a)];
        if id.0 >= h.len() || h.cell(id).dim != 0 {
            return Err(law(format!("identity of `{}` is not a vertex of its endo-hom", data.objects[a])));
        }
    }
    let mut comps = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let product = data.product(a, b, c);
                let table = data.comps.get(&(a, b, c)).cloned().unwrap_or_default();
                let map = StratifiedMap::new(product.set().clone(), homs[&(a, c)].clone(), table)
                    .map_err(|e| law(format!("composition ({a},{b},{c}) is not a stratified map: {e}")))?;
                comps.insert((a, b, c), Composition { product, map });
            }
        }
    }
    let e = EnrichedCategory { objects: data.objects, dim_cap: data.dim_cap, homs, identities: data.identities, comps, gray_validated: false };
    e.check_units()?;
    e.check_associativity()?;
    Ok(e)
}

impl EnrichedCategory {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn gray_validated(&self) -> bool {
        self.gray_validated
    }

    pub fn hom(&self, a: usize, b: usize) -> &Arc<StratifiedSet> {
        &self.homs[&(a, b)]
    }

    pub fn identity(&self, a: usize) -> CellId {
        self.identities[a]
    }

    /// The identity of `a` as an `m`-simplex.
    pub fn identity_simplex(&self, a: usize, m: usize) -> Simplex {
        let id = Simplex::cell(self.identities[a]);
        self.hom(a, a).degenerate_by(&id, &Operator::terminal(m))
    }

    pub fn composition(&self, a: usize, b: usize, c: usize) -> &Composition {
        &self.comps[&(a, b, c)]
    }

    /// `y ∘ x` for equal-dimensional `y ∈ hom(b, c)`, `x ∈ hom(a, b)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, y: &Simplex, x: &Simplex) -> Result<Simplex> {
        let comp = &self.comps[&(a, b, c)];
        let z = comp.product.pair(y, x)?;
        Ok(comp.map.apply(&z))
    }

    fn check_units(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                for x in h.ids().filter(|&x| h.cell(x).dim <= self.dim_cap) {
                    let m = h.cell(x).dim;
                    let x = Simplex::cell(x);
                    let right = self.compose(a, a, b, &x, &self.identity_simplex(a, m))?;
                    let left = self.compose(a, b, b, &self.identity_simplex(b, m), &x)?;
                    if right != x || left != x {
                        return Err(law(format!("unit law fails at `{}` in hom({a},{b})", h.render(&x))));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.len();
        let simplices: BTreeMap<(usize, usize), Vec<Vec<Simplex>>> = self
            .homs
            .iter()
            .map(|(&k, h)| (k, (0..=self.dim_cap).map(|m| h.simplices_of_dim(m)).collect()))
            .collect();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for m in 0..=self.dim_cap {
                            for z in &simplices[&(c, d)][m] {
                                for y in &simplices[&(b, c)][m] {
                                    for x in &simplices[&(a, b)][m] {
                                        if z.word.iter().any(|j| y.word.contains(j) && x.word.contains(j)) {
                                            continue;
                                        }
                                        let left = self.compose(a, c, d, z, &self.compose(a, b, c, y, x)?)?;
                                        let right = self.compose(a, b, d, &self.compose(b, c, d, z, y)?, x)?;
                                        if left != right {
                                            return Err(law(format!(
                                                "associativity fails on ({a},{b},{c},{d}) at ({}, {}, {})",
                                                self.hom(c, d).render(z),
                                                self.hom(b, c).render(y),
                                                self.hom(a, b).render(x)
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_data(&self) -> EnrichedData {
        EnrichedData {
            objects: self.objects.clone(),
            dim_cap: self.dim_cap,
            homs: self.homs.clone(),
            identities: self.identities.clone(),
            comps: self.comps.iter().map(|(&k, c)| (k, c.map.assignment().to_vec())).collect(),
        }
    }

    /// Every positive-dimensional cell of every hom made thin.
    pub fn maximally_stratified(&self) -> Result<EnrichedCategory> {
        let mut data = self.to_data();
        for h in data.homs.values_mut() {
            let positive: Vec<CellId> = h.ids().filter(|&c| h.cell(c).dim > 0).collect();
            *h = Arc::new(h.make_thin(&positive)?);
        }
        make_enriched(data)
    }

    /// Runs the weak-complicial report on every nonempty hom.
    pub fn validate_gray(&mut self, dmax: usize) -> Result<GrayReport> {
        let mut homs = Vec::new();
        for (&(a, b), h) in &self.homs {
            if !h.is_empty() {
                homs.push(HomReport { source: a, target: b, report: rlp_report(h, dmax, Mode::All)? });
            }
        }
        let passed = homs.iter().all(|h| h.report.passed());
        self.gray_validated = passed;
        Ok(GrayReport { dmax, passed, homs })
    }

    pub fn to_json(&self) -> EnrichedJson {
        let homs = self
            .homs
            .iter()
            .filter(|(_, h)| !h.is_empty())
            .map(|(&(a, b), h)| HomJson { source: a, target: b, set: h.to_json() })
            .collect();
        let comps = self
            .comps
            .iter()
            .filter(|(_, c)| !c.product.set().is_empty())
            .map(|(&(a, b, c), comp)| CompJson { a, b, c, map: comp.map.to_json() })
            .collect();
        EnrichedJson {
            objects: self.objects.clone(),
            dim_cap: self.dim_cap,
            identities: self.identities.iter().enumerate().map(|(a, &id)| self.hom(a, a).name(id).to_string()).collect(),
            homs,
            comps,
        }
    }

    pub fn from_json(json: &EnrichedJson) -> Result<EnrichedCategory> {
        let mut data = EnrichedData::new(json.objects.clone(), json.dim_cap);
        for h in &json.homs {
            let set = StratifiedSet::from_json(&h.set)?;
            if data.homs.insert((h.source, h.target), Arc::new(set)).is_some() {
                return Err(Error::Parse(format!("hom({},{}) given twice", h.source, h.target)));
            }
        }
        for (a, name) in json.identities.iter().enumerate() {
            data.identities.push(data.hom(a, a).lookup(name)?);
        }
        for c in &json.comps {
            let product = data.product(c.a, c.b, c.c);
            let map = StratifiedMap::from_json(product.set().clone(), data.hom(c.a, c.c), &c.map)?;
            data.comps.insert((c.a, c.b, c.c), map.assignment().to_vec());
        }
        make_enriched(data)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomJson {
    pub source: usize,
    pub target: usize,
    pub set: SetJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompJson {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub map: BTreeMap<String, SimplexJson>,
}

/// Interchange form; homs not listed are empty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnrichedJson {
    pub objects: Vec<String>,
    pub dim_cap: usize,
    pub identities: Vec<String>,
    pub homs: Vec<HomJson>,
    pub comps: Vec<CompJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub source: usize,
    pub target: usize,
    pub report: LiftingReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrayReport {
    pub dmax: usize,
    pub passed: bool,
    pub homs: Vec<HomReport>,
}

/// One object with `Δ[0]` as its hom.
pub fn terminal() -> EnrichedCategory {
    let mut data = EnrichedData::new(vec!["*".into()], 0);
    data.homs.insert((0, 0), Arc::new(standard(0)));
    data.identities.push(CellId(0));
    data.tabulate(|_, _, _, y, _| Ok(y.clone())).expect("point tables");
    make_enriched(data).expect("the terminal enriched category is lawful")
}

/// Objects `0` and `1` with `x` as the only nontrivial hom.
pub fn suspension(x: &StratifiedSet) -> EnrichedCategory {
    let mut data = EnrichedData::new(vec!["0".into(), "1".into()], x.dim_cap());
    let point = Arc::new(standard(0));
    data.homs.insert((0, 0), point.clone());
    data.homs.insert((1, 1), point);
    data.homs.insert((0, 1), Arc::new(x.clone()));
    data.identities = vec![CellId(0), CellId(0)];
    data.tabulate(|_, b, c, y, x| Ok(if b == c { x.clone() } else { y.clone() })).expect("projection tables");
    make_enriched(data).expect("suspensions are lawful")
}

/// A one-object category whose hom is the nerve of a commutative monoid
/// presentation, composing simplices pointwise.
pub fn delooping(p: &CategoryPresentation, dim_cap: usize) -> Result<EnrichedCategory> {
    let cat = FiniteCategory::new(p)?;
    if cat.objects().len() != 1 {
        return Err(Error::IllFormedCategory("delooping needs exactly one object".into()));
    }
    let nerve = CategoryNerve::build(cat, dim_cap);
    let mut data = EnrichedData::new(nerve.category.objects().to_vec(), dim_cap);
    data.homs.insert((0, 0), nerve.set.clone());
    data.identities.push(CellId(0));
    data.tabulate(|_, _, _, y, x| {
        let ((_, second), (_, first)) = (nerve.decode(y), nerve.decode(x));
        let string: Vec<Morphism> = first.iter().zip(&second).map(|(&f, &g)| nerve.category.compose(f, g)).collect();
        nerve.encode(0, &string)
    })?;
    make_enriched(data)
}
