//! Finite categories and their equivalence-stratified nerves.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::strat::{Cell, CellId, Simplex, StratifiedSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// `second ∘ first = result`; a missing result is an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub first: String,
    pub second: String,
    #[serde(default)]
    pub result: Option<String>,
}

/// A finite category: objects, non-identity arrows and their composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryPresentation {
    pub objects: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub composites: Vec<CompositeSpec>,
}

/// A morphism: `None` is an identity, `Some(i)` the `i`-th arrow.
pub type Morphism = Option<usize>;

#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    table: HashMap<(usize, usize), Morphism>,
}

fn ill(msg: impl Into<String>) -> Error {
    Error::IllFormedCategory(msg.into())
}

impl FiniteCategory {
    pub fn new(p: &CategoryPresentation) -> Result<Self> {
        let mut obj_index = HashMap::new();
        for (i, o) in p.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(ill(format!("duplicate object `{o}`")));
            }
        }
        let mut arrow_index = HashMap::new();
        let (mut source, mut target) = (Vec::new(), Vec::new());
        for (i, a) in p.arrows.iter().enumerate() {
            if arrow_index.insert(a.name.as_str(), i).is_some() {
                return Err(ill(format!("duplicate arrow `{}`", a.name)));
            }
            let s = *obj_index.get(a.source.as_str()).ok_or_else(|| ill(format!("unknown object `{}`", a.source)))?;
            let t = *obj_index.get(a.target.as_str()).ok_or_else(|| ill(format!("unknown object `{}`", a.target)))?;
            source.push(s);
            target.push(t);
        }
        let lookup = |name: &str| arrow_index.get(name).copied().ok_or_else(|| ill(format!("unknown arrow `{name}`")));
        let mut table = HashMap::new();
        for c in &p.composites {
            let (f, g) = (lookup(&c.first)?, lookup(&c.second)?);
            if target[f] != source[g] {
                return Err(ill(format!("`{}` then `{}` is not composable", c.first, c.second)));
            }
            let h = match &c.result {
                Some(name) => {
                    let h = lookup(name)?;
                    if source[h] != source[f] || target[h] != target[g] {
                        return Err(ill(format!("`{name}` has the wrong endpoints")));
                    }
                    Some(h)
                }
                None if source[f] == target[g] => None,
                None => return Err(ill(format!("`{}` then `{}` cannot be an identity", c.first, c.second))),
            };
            if table.insert((f, g), h).is_some() {
                return Err(ill(format!("`{}` then `{}` listed twice", c.first, c.second)));
            }
        }
        let cat = FiniteCategory { objects: p.objects.clone(), arrows: p.arrows.iter().map(|a| a.name.clone()).collect(), source, target, table };
        for f in 0..cat.arrows.len() {
            for g in cat.after(f) {
                if !cat.table.contains_key(&(f, g)) {
                    return Err(ill(format!("missing composite of `{}` then `{}`", cat.arrows[f], cat.arrows[g])));
                }
            }
        }
        for f in 0..cat.arrows.len() {
            for g in cat.after(f) {
                for h in cat.after(g) {
                    let left = cat.compose(cat.compose(Some(f), Some(g)), Some(h));
                    let right = cat.compose(Some(f), cat.compose(Some(g), Some(h)));
                    if left != right {
                        return Err(ill(format!(
                            "composition of `{}`, `{}`, `{}` is not associative",
                            cat.arrows[f], cat.arrows[g], cat.arrows[h]
                        )));
                    }
                }
            }
        }
        Ok(cat)
    }

    fn after(&self, f: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&g| self.source[g] == self.target[f]).collect()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    /// `second ∘ first`, assuming the two are composable.
    pub fn compose(&self, first: Morphism, second: Morphism) -> Morphism {
        match (first, second) {
            (None, g) => g,
            (f, None) => f,
            (Some(f), Some(g)) => self.table[&(f, g)],
        }
    }

    pub fn is_invertible(&self, f: usize) -> bool {
        self.after(f).into_iter().any(|g| self.table[&(f, g)].is_none() && self.table.get(&(g, f)) == Some(&None))
    }

    pub fn is_commutative(&self) -> bool {
        self.table.iter().all(|(&(f, g), h)| self.table.get(&(g, f)).is_none_or(|k| k == h))
    }

    fn end_of(&self, start: usize, path: &[Morphism]) -> usize {
        path.iter().fold(start, |o, m| m.map_or(o, |a| self.target[a]))
    }
}

fn arrow(name: &str, source: &str, target: &str) -> ArrowSpec {
    ArrowSpec { name: name.into(), source: source.into(), target: target.into() }
}

fn composite(first: &str, second: &str, result: Option<&str>) -> CompositeSpec {
    CompositeSpec { first: first.into(), second: second.into(), result: result.map(str::to_string) }
}

pub fn terminal_category() -> CategoryPresentation {
    CategoryPresentation { objects: vec!["*".into()], arrows: Vec::new(), composites: Vec::new() }
}

/// The walking arrow `0 → 1`.
pub fn walking_arrow() -> CategoryPresentation {
    CategoryPresentation { objects: vec!["0".into(), "1".into()], arrows: vec![arrow("f", "0", "1")], composites: Vec::new() }
}

/// The walking isomorphism `f: 0 ⇄ 1 :g`.
pub fn walking_iso() -> CategoryPresentation {
    CategoryPresentation {
        objects: vec!["0".into(), "1".into()],
        arrows: vec![arrow("f", "0", "1"), arrow("g", "1", "0")],
        composites: vec![composite("f", "g", None), composite("g", "f", None)],
    }
}

/// The cyclic group of the given order as a one-object category.
pub fn cyclic_group(order: usize) -> CategoryPresentation {
    let name = |i: usize| format!("g{i}");
    let arrows = (1..order).map(|i| arrow(&name(i), "*", "*")).collect();
    let mut composites = Vec::new();
    for i in 1..order {
        for j in 1..order {
            let r = (i + j) % order;
            composites.push(CompositeSpec { first: name(i), second: name(j), result: (r != 0).then(|| name(r)) });
        }
    }
    CategoryPresentation { objects: vec!["*".into()], arrows, composites }
}

/// The nerve of a finite category up to a dimension cap, with invertible
/// edges and every simplex of dimension at least 2 thin.
#[derive(Clone, Debug)]
pub struct CategoryNerve {
    pub category: FiniteCategory,
    pub set: Arc<StratifiedSet>,
    keys: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), CellId>,
}

impl CategoryNerve {
    pub fn build(category: FiniteCategory, dim_cap: usize) -> CategoryNerve {
        let mut keys: Vec<(usize, Vec<usize>)> = (0..category.objects.len()).map(|o| (o, Vec::new())).collect();
        let mut layer = keys.clone();
        let mut truncated = false;
        for m in 1..=dim_cap + 1 {
            let mut next = Vec::new();
            for (start, path) in &layer {
                let end = path.last().map_or(*start, |&a| category.target[a]);
                for a in (0..category.arrows.len()).filter(|&a| category.source[a] == end) {
                    let mut p = path.clone();
                    p.push(a);
                    next.push((*start, p));
                }
            }
            if m > dim_cap {
                truncated = !next.is_empty();
                break;
            }
            keys.extend(next.iter().cloned());
            layer = next;
        }
        let index: HashMap<(usize, Vec<usize>), CellId> = keys.iter().cloned().enumerate().map(|(i, k)| (k, CellId(i))).collect();
        let mut nerve = CategoryNerve { category, set: Arc::new(StratifiedSet::empty()), keys, index };
        let cells = nerve
            .keys
            .iter()
            .map(|(start, path)| {
                let cat = &nerve.category;
                let m = path.len();
                let name = if m == 0 {
                    cat.objects[*start].clone()
                } else {
                    path.iter().map(|&a| cat.arrows[a].as_str()).collect::<Vec<_>>().join("|")
                };
                let thin = m >= 2 || (m == 1 && cat.is_invertible(path[0]));
                let string: Vec<Morphism> = path.iter().map(|&a| Some(a)).collect();
                let faces = if m == 0 { Vec::new() } else { (0..=m).map(|i| nerve.face_of(*start, &string, i)).collect() };
                Cell { name, dim: m, thin, faces }
            })
            .collect();
        nerve.set = Arc::new(StratifiedSet::from_cells_unchecked(dim_cap, cells).with_truncated(truncated));
        nerve
    }

    fn face_of(&self, start: usize, string: &[Morphism], i: usize) -> Simplex {
        let m = string.len();
        let cat = &self.category;
        let (start, face): (usize, Vec<Morphism>) = if i == 0 {
            (cat.end_of(start, &string[..1]), string[1..].to_vec())
        } else if i == m {
            (start, string[..m - 1].to_vec())
        } else {
            let mut f = string[..i - 1].to_vec();
            f.push(cat.compose(string[i - 1], string[i]));
            f.extend_from_slice(&string[i + 1..]);
            (start, f)
        };
        self.encode(start, &face).expect("faces of listed strings are listed")
    }

    /// The simplex of a string of morphisms starting at an object.
    pub fn encode(&self, start: usize, string: &[Morphism]) -> Result<Simplex> {
        let path: Vec<usize> = string.iter().flatten().copied().collect();
        let key_start = if path.is_empty() { self.category.end_of(start, string) } else { start };
        let cell = *self
            .index
            .get(&(key_start, path.clone()))
            .ok_or_else(|| Error::CapExceeded { requested: path.len(), cap: self.set.dim_cap() })?;
        let mut values = vec![0];
        for m in string {
            let last = *values.last().expect("nonempty");
            values.push(last + usize::from(m.is_some()));
        }
        let op = Operator::from_parts(string.len(), path.len(), values);
        Ok(Simplex { cell, word: op.word_of() })
    }

    /// The start object and morphism string of a simplex.
    pub fn decode(&self, x: &Simplex) -> (usize, Vec<Morphism>) {
        let (start, path) = &self.keys[x.cell.0];
        let alpha = self.set.degeneracy_of(x);
        let string = (1..=alpha.dom())
            .map(|j| {
                let (a, b) = (alpha.apply(j - 1), alpha.apply(j));
                (a != b).then(|| path[b - 1])
            })
            .collect();
        (*start, string)
    }
}

/// The equivalence-stratified nerve of a presented category, truncated at `dim_cap`.
pub fn from_category(p: &CategoryPresentation, dim_cap: usize) -> Result<StratifiedSet> {
    let nerve = CategoryNerve::build(FiniteCategory::new(p)?, dim_cap);
    Ok(nerve.set.as_ref().clone())
}

/// Names of the morphisms in a string, identities as `1`.
pub fn describe_string(cat: &FiniteCategory, string: &[Morphism]) -> String {
    let parts: Vec<&str> = string.iter().map(|m| m.map_or("1", |a| cat.arrows[a].as_str())).collect();
    parts.join("|")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentations_validate() {
        assert!(FiniteCategory::new(&walking_iso()).is_ok());
        assert!(FiniteCategory::new(&cyclic_group(3)).unwrap().is_commutative());
        let mut broken = walking_iso();
        broken.composites.pop();
        assert!(matches!(FiniteCategory::new(&broken), Err(Error::IllFormedCategory(_))));
        let mut bad = walking_arrow();
        bad.arrows.push(arrow("h", "0", "2"));
        assert!(FiniteCategory::new(&bad).is_err());
        let mut wrong = walking_iso();
        wrong.composites[0].result = Some("f".into());
        assert!(FiniteCategory::new(&wrong).is_err());
    }

    #[test]
    fn nerve_examples() {
        let point = from_category(&terminal_category(), 3).unwrap();
        assert_eq!(point.census(), vec![1]);
        assert!(!point.truncated());

        let arrow = from_category(&walking_arrow(), 3).unwrap();
        assert_eq!(arrow.census(), vec![2, 1]);
        assert_eq!(arrow.thin_census(), vec![0, 0]);

        let iso = from_category(&walking_iso(), 4).unwrap();
        assert_eq!(iso.census(), vec![2, 2, 2, 2, 2]);
        assert_eq!(iso.thin_census(), vec![0, 2, 2, 2, 2]);
        assert!(iso.truncated());
        assert!(iso.validate().is_valid());

        let z2 = from_category(&cyclic_group(2), 4).unwrap();
        assert_eq!(z2.census(), vec![1, 1, 1, 1, 1]);
        assert!(z2.validate().is_valid());
        let z3 = from_category(&cyclic_group(3), 3).unwrap();
        assert_eq!(z3.census(), vec![1, 2, 4, 8]);
        assert!(z3.validate().is_valid());
    }

    #[test]
    fn encode_and_decode_agree() {
        let nerve = CategoryNerve::build(FiniteCategory::new(&walking_iso()).unwrap(), 3);
        for m in 0..=3 {
            for x in nerve.set.simplices_of_dim(m) {
                let (start, string) = nerve.decode(&x);
                assert_eq!(string.len(), m);
                assert_eq!(nerve.encode(start, &string).unwrap(), x);
            }
        }
        let f = Some(0);
        let g = Some(1);
        let x = nerve.encode(0, &[f, None, g]).unwrap();
        assert_eq!(x.word, vec![1]);
        assert_eq!(describe_string(&nerve.category, &nerve.decode(&x).1), "f|1|g");
        assert!(nerve.encode(0, &[f, g, f, g]).is_err());
    }
}
