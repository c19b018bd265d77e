use std::collections::BTreeMap;
use std::sync::Arc;

use crate::anodyne::{relative_rlp_report, LiftingReport, Mode};
use crate::enriched::EnrichedCategory;
use crate::error::{Error, Result};
use crate::strat::{enumerate_maps, Simplex, StratifiedMap};

/// An object map with a stratified map on every hom, commuting with
/// identities and composition.
#[derive(Clone, Debug)]
pub struct EnrichedFunctor {
    pub source: Arc<EnrichedCategory>,
    pub target: Arc<EnrichedCategory>,
    pub object_map: Vec<usize>,
    pub hom_maps: BTreeMap<(usize, usize), StratifiedMap>,
}

fn ill(msg: impl Into<String>) -> Error {
    Error::IllFormedFunctor(msg.into())
}

impl EnrichedFunctor {
    /// Homs missing from `hom_maps` must be empty.
    pub fn new(
        source: Arc<EnrichedCategory>,
        target: Arc<EnrichedCategory>,
        object_map: Vec<usize>,
        mut hom_maps: BTreeMap<(usize, usize), StratifiedMap>,
    ) -> Result<Self> {
        let n = source.len();
        if object_map.len() != n || object_map.iter().any(|&o| o >= target.len()) {
            return Err(ill("object map does not match the objects"));
        }
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (object_map[a], object_map[b]);
                let (dom, cod) = (source.hom(a, b), target.hom(fa, fb));
                let map = hom_maps
                    .entry((a, b))
                    .or_insert_with(|| StratifiedMap::new_unchecked(dom.clone(), cod.clone(), Vec::new()));
                if **map.source() != **dom || **map.target() != **cod {
                    return Err(ill(format!("hom({a},{b}) component has the wrong ends")));
                }
                let report = map.validate();
                if !report.is_valid() {
                    return Err(ill(format!("hom({a},{b}) component: {}", report.violations.join("; "))));
                }
            }
        }
        for a in 0..n {
            let id = Simplex::cell(source.identity(a));
            if hom_maps[&(a, a)].apply(&id) != Simplex::cell(target.identity(object_map[a])) {
                return Err(ill(format!("identity of object {a} is not preserved")));
            }
        }
        let f = EnrichedFunctor { source, target, object_map, hom_maps };
        f.check_composition()?;
        Ok(f)
    }

    fn check_composition(&self) -> Result<()> {
        let n = self.source.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let comp = self.source.composition(a, b, c);
                    let (fa, fb, fc) = (self.object_map[a], self.object_map[b], self.object_map[c]);
                    for z in comp.product.set().ids() {
                        let (y, x) = comp.product.components(z);
                        let lhs = self.hom_maps[&(a, c)].apply(comp.map.image(z));
                        let (fy, fx) = (self.hom_maps[&(b, c)].apply(y), self.hom_maps[&(a, b)].apply(x));
                        let rhs = self.target.compose(fa, fb, fc, &fy, &fx)?;
                        if lhs != rhs {
                            return Err(ill(format!("composition ({a},{b},{c}) is not preserved")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(e: &Arc<EnrichedCategory>) -> Self {
        let n = e.len();
        let mut hom_maps = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let h = e.hom(a, b);
                let assignment = h.ids().map(Simplex::cell).collect();
                hom_maps.insert((a, b), StratifiedMap::new_unchecked(h.clone(), h.clone(), assignment));
            }
        }
        EnrichedFunctor { source: e.clone(), target: e.clone(), object_map: (0..n).collect(), hom_maps }
    }

    /// The unique functor to the terminal enriched category.
    pub fn to_terminal(e: &Arc<EnrichedCategory>) -> Self {
        let point = Arc::new(crate::enriched::terminal());
        let mut hom_maps = BTreeMap::new();
        for a in 0..e.len() {
            for b in 0..e.len() {
                let h = e.hom(a, b);
                let assignment = h.ids().map(|c| point.identity_simplex(0, h.cell(c).dim)).collect();
                hom_maps.insert((a, b), StratifiedMap::new_unchecked(h.clone(), point.hom(0, 0).clone(), assignment));
            }
        }
        EnrichedFunctor { source: e.clone(), target: point, object_map: vec![0; e.len()], hom_maps }
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &StratifiedMap {
        &self.hom_maps[&(a, b)]
    }
}

/// Checks that every hom component lifts against all elementary anodyne
/// extensions up to `dmax`.
pub fn local_fibration_check(f: &EnrichedFunctor, dmax: usize) -> Result<LiftingReport> {
    let mut report = LiftingReport::default();
    for (&(a, b), p) in &f.hom_maps {
        if p.source().is_empty() {
            continue;
        }
        let part = relative_rlp_report(p, dmax, Mode::All)?;
        report.absorb(part, &format!("hom({a},{b})"));
    }
    Ok(report)
}

/// Every enriched functor between two finite enriched categories, object maps in
/// lexicographic order and hom components in enumeration order.
pub fn all_functors(source: &Arc<EnrichedCategory>, target: &Arc<EnrichedCategory>) -> Result<Vec<EnrichedFunctor>> {
    let n = source.len();
    let mut object_maps = vec![Vec::new()];
    for _ in 0..n {
        object_maps = object_maps
            .into_iter()
            .flat_map(|m: Vec<usize>| (0..target.len()).map(move |o| [m.clone(), vec![o]].concat()))
            .collect();
    }
    let keys: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for object_map in object_maps {
        let mut choices = Vec::new();
        for &(a, b) in &keys {
            choices.push(enumerate_maps(source.hom(a, b), target.hom(object_map[a], object_map[b]))?);
        }
        let mut picks = vec![0; keys.len()];
        'outer: loop {
            if choices.iter().all(|c| !c.is_empty()) {
                let maps = keys.iter().zip(&picks).enumerate().map(|(i, (&k, &p))| (k, choices[i][p].clone())).collect();
                if let Ok(f) = EnrichedFunctor::new(source.clone(), target.clone(), object_map.clone(), maps) {
                    out.push(f);
                }
            } else {
                break;
            }
            for i in (0..picks.len()).rev() {
                picks[i] += 1;
                if picks[i] < choices[i].len() {
                    continue 'outer;
                }
                picks[i] = 0;
            }
            break;
        }
    }
    Ok(out)
}
