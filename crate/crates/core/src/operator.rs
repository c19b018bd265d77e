//! Simplicial operators: monotone maps `[n] -> [m]` between finite ordinals,
//! including the empty ordinal `[-1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly increasing map `[n] -> [m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawOperator", into = "RawOperator")]
pub struct Operator {
    source: i64,
    target: i64,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    n: i64,
    m: i64,
    values: Vec<usize>,
}

impl TryFrom<RawOperator> for Operator {
    type Error = Error;

    fn try_from(raw: RawOperator) -> Result<Self> {
        Operator::new(raw.n, raw.m, raw.values)
    }
}

impl From<Operator> for RawOperator {
    fn from(op: Operator) -> Self {
        RawOperator { n: op.source, m: op.target, values: op.values }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elementary {
    Face,
    Degeneracy,
    Vertex,
    Terminal,
}

/// Epi-mono factorization. Both words are listed in the order the maps are
/// applied: faces strictly increasing, degeneracies strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EzFactorization {
    pub faces: Vec<usize>,
    pub degeneracies: Vec<usize>,
}

impl Operator {
    pub fn new(n: i64, m: i64, values: Vec<usize>) -> Result<Self> {
        if n < -1 || m < -1 {
            return Err(Error::OutOfRange { value: n.min(m), max: i64::MAX });
        }
        if values.len() as i64 != n + 1 {
            return Err(Error::Mismatch { expected: n + 1, found: values.len() as i64 });
        }
        for &v in &values {
            if v as i64 > m {
                return Err(Error::OutOfRange { value: v as i64, max: m });
            }
        }
        if let Some(p) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::NonMonotone(p + 1));
        }
        Ok(Operator { source: n, target: m, values })
    }

    pub(crate) fn from_parts(n: usize, m: usize, values: Vec<usize>) -> Self {
        debug_assert_eq!(values.len(), n + 1);
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= m));
        Operator { source: n as i64, target: m as i64, values }
    }

    pub fn identity(n: usize) -> Self {
        Operator::from_parts(n, n, (0..=n).collect())
    }

    pub fn source(&self) -> i64 {
        self.source
    }

    pub fn target(&self) -> i64 {
        self.target
    }

    /// Source ordinal as an index; panics on the empty ordinal.
    pub fn dom(&self) -> usize {
        usize::try_from(self.source).expect("empty ordinal")
    }

    pub fn cod(&self) -> usize {
        usize::try_from(self.target).expect("empty ordinal")
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn face(n: usize, j: usize) -> Result<Self> {
        Operator::elementary(Elementary::Face, n, j)
    }

    pub fn degeneracy(n: usize, j: usize) -> Result<Self> {
        Operator::elementary(Elementary::Degeneracy, n, j)
    }

    pub fn vertex(n: usize, i: usize) -> Result<Self> {
        Operator::elementary(Elementary::Vertex, n, i)
    }

    pub fn terminal(n: usize) -> Self {
        Operator::from_parts(n, 0, vec![0; n + 1])
    }

    /// The elementary operators `δⁿⱼ`, `σⁿⱼ`, `εⁿⱼ` and `ηⁿ` (the index is ignored for `η`).
    pub fn elementary(kind: Elementary, n: usize, j: usize) -> Result<Self> {
        if kind != Elementary::Terminal && j > n {
            return Err(Error::OutOfRange { value: j as i64, max: n as i64 });
        }
        Ok(match kind {
            Elementary::Face => {
                let values = (0..n).map(|i| if i < j { i } else { i + 1 }).collect();
                Operator { source: n as i64 - 1, target: n as i64, values }
            }
            Elementary::Degeneracy => {
                let values = (0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect();
                Operator::from_parts(n + 1, n, values)
            }
            Elementary::Vertex => Operator::from_parts(0, n, vec![j]),
            Elementary::Terminal => Operator::terminal(n),
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Operator) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::Mismatch { expected: self.source, found: inner.target });
        }
        Ok(Operator {
            source: inner.source,
            target: self.target,
            values: inner.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() as i64 == self.target + 1
    }

    /// Sorted distinct values.
    pub fn image(&self) -> Vec<usize> {
        let mut im = self.values.clone();
        im.dedup();
        im
    }

    pub fn ez_factorize(&self) -> EzFactorization {
        let image = self.image();
        let faces = (0..=self.target)
            .map(|v| v as usize)
            .filter(|v| image.binary_search(v).is_err())
            .collect();
        let degeneracies = (0..self.values.len().saturating_sub(1))
            .rev()
            .filter(|&j| self.values[j] == self.values[j + 1])
            .collect();
        EzFactorization { faces, degeneracies }
    }

    /// Splits `self` as `face ∘ degeneracy` with an injective and a surjective part.
    pub fn epi_mono(&self) -> (Operator, Operator) {
        let image = self.image();
        let k = image.len() as i64 - 1;
        let surj = self
            .values
            .iter()
            .map(|v| image.binary_search(v).expect("value in image"))
            .collect();
        (
            Operator { source: k, target: self.target, values: image },
            Operator { source: self.source, target: k, values: surj },
        )
    }

    /// Rebuilds the composite of a factorization starting from ordinal `[n]`.
    pub fn from_factorization(n: i64, ez: &EzFactorization) -> Result<Self> {
        let mut op = Operator { source: n, target: n, values: (0..(n + 1) as usize).collect() };
        for &j in &ez.degeneracies {
            if op.target < 1 {
                return Err(Error::OutOfRange { value: j as i64, max: op.target - 1 });
            }
            op = Operator::degeneracy((op.target - 1) as usize, j)?.compose(&op)?;
        }
        for &j in &ez.faces {
            let step = Operator::face((op.target + 1) as usize, j)?;
            op = step.compose(&op)?;
        }
        Ok(op)
    }

    /// The surjection `[base + word.len()] -> [base]` named by a degeneracy word.
    pub fn degeneracy_word(base: usize, word: &[usize]) -> Self {
        let top = base + word.len();
        let mut values = Vec::with_capacity(top + 1);
        let mut v = 0;
        for i in 0..=top {
            values.push(v);
            if i < top && !word.contains(&i) {
                v += 1;
            }
        }
        Operator::from_parts(top, base, values)
    }

    /// Repeat positions of a surjection, in applied (decreasing) order.
    pub fn word_of(&self) -> Vec<usize> {
        self.ez_factorize().degeneracies
    }

    pub fn is_admissible(&self, k: usize) -> Result<bool> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let needed = [k.checked_sub(1), Some(k), Some(k + 1)];
        Ok(needed
            .into_iter()
            .flatten()
            .filter(|&v| v as i64 <= self.target)
            .all(|v| self.values.binary_search(&v).is_ok()))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.source, self.target, self.values)
    }
}

/// A point of the doubly pointed set `⌜m⌝ = {−, 1, …, m, +}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubeCoordinate {
    Minus,
    Plus,
    Index(usize),
}

impl CubeCoordinate {
    /// Position in the order `+ < 1 < … < m < −`, i.e. where the step happens.
    pub fn flip_rank(self) -> usize {
        match self {
            CubeCoordinate::Plus => 0,
            CubeCoordinate::Index(i) => i,
            CubeCoordinate::Minus => usize::MAX,
        }
    }

    /// Pointwise minimum of the two step operators.
    pub fn meet(self, other: CubeCoordinate) -> CubeCoordinate {
        if self.flip_rank() >= other.flip_rank() {
            self
        } else {
            other
        }
    }

    pub fn integer(self) -> Option<usize> {
        match self {
            CubeCoordinate::Index(i) => Some(i),
            _ => None,
        }
    }

    /// The operator `ρ_v: [m] -> [1]`.
    pub fn rho(self, m: usize) -> Result<Operator> {
        let values = (0..=m)
            .map(|j| match self {
                CubeCoordinate::Minus => 0,
                CubeCoordinate::Plus => 1,
                CubeCoordinate::Index(i) => usize::from(j >= i),
            })
            .collect();
        if let CubeCoordinate::Index(i) = self {
            if i == 0 || i > m {
                return Err(Error::OutOfRange { value: i as i64, max: m as i64 });
            }
        }
        Ok(Operator::from_parts(m, 1, values))
    }

    /// Reads back a coordinate from a value sequence into `[1]`.
    pub fn from_rho(values: &[usize]) -> CubeCoordinate {
        match values.iter().position(|&v| v == 1) {
            None => CubeCoordinate::Minus,
            Some(0) => CubeCoordinate::Plus,
            Some(t) => CubeCoordinate::Index(t),
        }
    }

    pub fn symbol(self) -> String {
        match self {
            CubeCoordinate::Minus => "-".into(),
            CubeCoordinate::Plus => "+".into(),
            CubeCoordinate::Index(i) => i.to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<CubeCoordinate> {
        match s.trim() {
            "-" | "−" => Ok(CubeCoordinate::Minus),
            "+" => Ok(CubeCoordinate::Plus),
            t => t
                .parse::<usize>()
                .ok()
                .filter(|&i| i > 0)
                .map(CubeCoordinate::Index)
                .ok_or_else(|| Error::Parse(format!("bad cube coordinate `{t}`"))),
        }
    }
}

impl fmt::Display for CubeCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

impl Serialize for CubeCoordinate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CubeCoordinate::Index(i) => s.serialize_u64(*i as u64),
            other => s.serialize_str(&other.symbol()),
        }
    }
}

impl<'de> Deserialize<'de> for CubeCoordinate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let parsed = match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .filter(|&i| i > 0)
                .map(|i| CubeCoordinate::Index(i as usize))
                .ok_or_else(|| Error::Parse(format!("bad cube coordinate {n}"))),
            serde_json::Value::String(s) => CubeCoordinate::parse(s),
            other => Err(Error::Parse(format!("bad cube coordinate {other}"))),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// `v′` with `ρ_v ∘ α = ρ_{v′}`.
pub fn rho_precompose(v: CubeCoordinate, alpha: &Operator) -> CubeCoordinate {
    match v {
        CubeCoordinate::Minus | CubeCoordinate::Plus => v,
        CubeCoordinate::Index(i) => match alpha.values.iter().position(|&a| a >= i) {
            None => CubeCoordinate::Minus,
            Some(0) => CubeCoordinate::Plus,
            Some(t) => CubeCoordinate::Index(t),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn op(n: i64, m: i64, v: &[usize]) -> Operator {
        Operator::new(n, m, v.to_vec()).unwrap()
    }

    /// Every monotone map `[n] -> [m]`.
    fn all_ops(n: usize, m: usize) -> Vec<Operator> {
        fn go(n: usize, m: usize, lo: usize, acc: &mut Vec<usize>, out: &mut Vec<Operator>) {
            if acc.len() == n + 1 {
                out.push(Operator::from_parts(n, m, acc.clone()));
                return;
            }
            for v in lo..=m {
                acc.push(v);
                go(n, m, v, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(n, m, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn construction_examples() {
        assert!(op(1, 1, &[0, 1]).is_identity());
        assert_eq!(op(1, 2, &[0, 2]), Operator::face(2, 1).unwrap());
        assert_eq!(Operator::new(1, 1, vec![1, 0]), Err(Error::NonMonotone(1)));
        assert!(matches!(Operator::new(1, 1, vec![0, 2]), Err(Error::OutOfRange { .. })));
        assert_eq!(Operator::new(-1, 3, vec![]).unwrap().values(), &[] as &[usize]);
    }

    #[test]
    fn composition_examples() {
        let s = Operator::degeneracy(0, 0).unwrap();
        let d = Operator::face(1, 0).unwrap();
        assert!(s.compose(&d).unwrap().is_identity());
        let c = Operator::face(2, 2).unwrap().compose(&d).unwrap();
        assert_eq!(c, Operator::vertex(2, 1).unwrap());
        let e = Operator::terminal(2).compose(&Operator::vertex(2, 1).unwrap()).unwrap();
        assert!(e.is_identity());
        assert!(matches!(d.compose(&d), Err(Error::Mismatch { .. })));
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(Operator::face(2, 1).unwrap().values(), &[0, 2]);
        assert_eq!(Operator::degeneracy(1, 0).unwrap().values(), &[0, 0, 1]);
        assert_eq!(Operator::vertex(2, 1).unwrap().values(), &[1]);
        assert_eq!(Operator::terminal(2).values(), &[0, 0, 0]);
        assert!(Operator::face(2, 3).is_err());
        let iota = Operator::face(0, 0).unwrap();
        assert_eq!((iota.source(), iota.target()), (-1, 0));
    }

    #[test]
    fn factorization_examples() {
        let ez = Operator::identity(3).ez_factorize();
        assert!(ez.faces.is_empty() && ez.degeneracies.is_empty());
        let ez = op(1, 1, &[0, 0]).ez_factorize();
        assert_eq!((ez.faces, ez.degeneracies), (vec![1], vec![0]));
        // δ²₂ ∘ δ¹₀ has image {1}: the missing vertices are 0 and 2
        let c = Operator::face(2, 2).unwrap().compose(&Operator::face(1, 0).unwrap()).unwrap();
        let ez = c.ez_factorize();
        assert_eq!((ez.faces.clone(), ez.degeneracies.clone()), (vec![0, 2], vec![]));
        assert_eq!(Operator::from_factorization(0, &ez).unwrap(), c);
    }

    #[test]
    fn factorization_round_trips_exhaustively() {
        for n in 0..=5 {
            for m in 0..=5 {
                for a in all_ops(n, m) {
                    let ez = a.ez_factorize();
                    assert!(ez.faces.windows(2).all(|w| w[0] < w[1]));
                    assert!(ez.degeneracies.windows(2).all(|w| w[0] > w[1]));
                    assert_eq!(Operator::from_factorization(n as i64, &ez).unwrap(), a, "{a}");
                    let (mono, epi) = a.epi_mono();
                    assert_eq!(mono.compose(&epi).unwrap(), a);
                    assert_eq!(Operator::degeneracy_word(epi.cod(), &epi.word_of()), epi);
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        for n in 0..=2 {
            for m in 0..=2 {
                for p in 0..=2 {
                    for a in all_ops(n, m) {
                        for b in all_ops(m, p) {
                            for c in all_ops(p, 2) {
                                let l = c.compose(&b).unwrap().compose(&a).unwrap();
                                let r = c.compose(&b.compose(&a).unwrap()).unwrap();
                                assert_eq!(l, r);
                            }
                        }
                        assert_eq!(Operator::identity(m).compose(&a).unwrap(), a);
                        assert_eq!(a.compose(&Operator::identity(n)).unwrap(), a);
                    }
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        let d22 = Operator::face(2, 2).unwrap();
        assert_eq!(rho_precompose(CubeCoordinate::Plus, &d22), CubeCoordinate::Plus);
        assert_eq!(rho_precompose(CubeCoordinate::Index(2), &d22), CubeCoordinate::Minus);
        let d20 = Operator::face(2, 0).unwrap();
        assert_eq!(rho_precompose(CubeCoordinate::Index(2), &d20), CubeCoordinate::Index(1));
    }

    #[test]
    fn rho_precompose_matches_pointwise() {
        for m in 0..=5 {
            let mut coords = vec![CubeCoordinate::Minus, CubeCoordinate::Plus];
            coords.extend((1..=m).map(CubeCoordinate::Index));
            for v in coords {
                let rho = v.rho(m).unwrap();
                for mp in 0..=5 {
                    for a in all_ops(mp, m) {
                        let lhs = rho.compose(&a).unwrap();
                        let w = rho_precompose(v, &a);
                        assert_eq!(lhs, w.rho(mp).unwrap());
                        assert_eq!(CubeCoordinate::from_rho(lhs.values()), w);
                    }
                }
            }
        }
    }

    #[test]
    fn admissibility_examples() {
        for n in 1..=4 {
            for k in 0..=n {
                assert!(Operator::identity(n).is_admissible(k).unwrap());
            }
        }
        assert!(!Operator::face(3, 1).unwrap().is_admissible(2).unwrap());
        assert!(Operator::face(3, 0).unwrap().is_admissible(2).unwrap());
        assert_eq!(Operator::degeneracy(1, 0).unwrap().is_admissible(0), Err(Error::NotInjective));
    }

    #[test]
    fn coordinate_json() {
        let cs = vec![CubeCoordinate::Minus, CubeCoordinate::Index(3), CubeCoordinate::Plus];
        let s = serde_json::to_string(&cs).unwrap();
        assert_eq!(s, r#"["-",3,"+"]"#);
        let back: Vec<CubeCoordinate> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cs);
        let minus: CubeCoordinate = serde_json::from_str("\"−\"").unwrap();
        assert_eq!(minus, CubeCoordinate::Minus);
        let o: Operator = serde_json::from_str(r#"{"n":1,"m":2,"values":[0,2]}"#).unwrap();
        assert_eq!(o, Operator::face(2, 1).unwrap());
        assert!(serde_json::from_str::<Operator>(r#"{"n":1,"m":2,"values":[2,0]}"#).is_err());
    }

    fn arb_op(max: usize) -> impl Strategy<Value = Operator> {
        (0..=max, 0..=max).prop_flat_map(|(n, m)| {
            proptest::collection::vec(0..=m, n + 1).prop_map(move |mut v| {
                v.sort_unstable();
                Operator::from_parts(n, m, v)
            })
        })
    }

    proptest! {
        #[test]
        fn admissibility_monotone_in_image(a in arb_op(5), extra in 0usize..6, k in 0usize..6) {
            prop_assume!(a.is_injective() && k as i64 <= a.target());
            let mut bigger = a.values().to_vec();
            if (extra as i64) <= a.target() && !bigger.contains(&extra) {
                bigger.push(extra);
                bigger.sort_unstable();
            }
            let b = Operator::from_parts(bigger.len() - 1, a.cod(), bigger);
            if a.is_admissible(k).unwrap() {
                prop_assert!(b.is_admissible(k).unwrap());
            }
        }

        #[test]
        fn epi_mono_is_unique(a in arb_op(6)) {
            let (mono, epi) = a.epi_mono();
            prop_assert!(mono.is_injective());
            prop_assert!(epi.is_surjective());
            prop_assert_eq!(mono.compose(&epi).unwrap(), a);
        }
    }
}
