//! Lifting reports against the elementary horn and thinness extensions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{complicial_dprimed_shape, complicial_primed_shape, complicial_shape, horn_in};
use crate::strat::{CellId, MapSearch, Simplex, StratifiedMap, StratifiedSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `0 < k < n` only.
    Inner,
    #[default]
    All,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inner" => Ok(Mode::Inner),
            "all" => Ok(Mode::All),
            other => Err(Error::BadParams(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    Horn,
    Thinness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub kind: ExtensionKind,
    pub n: usize,
    pub k: usize,
}

fn sup(d: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    d.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, k) = (self.n, sup(self.k));
        match self.kind {
            ExtensionKind::Horn => write!(f, "Λ{k}[{n}] ↪ Δ{k}[{n}]"),
            ExtensionKind::Thinness => write!(f, "Δ{k}[{n}]′ ↪ Δ{k}[{n}]″"),
        }
    }
}

/// Horn instances from `n = 1` (`n = 2` when inner), thinness instances from `n = 2`.
pub fn instances(dmax: usize, mode: Mode) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=dmax {
        let ks: Vec<usize> = match mode {
            Mode::Inner => (1..n).collect(),
            Mode::All => (0..=n).collect(),
        };
        for &k in &ks {
            out.push(Instance { kind: ExtensionKind::Horn, n, k });
        }
        if n >= 2 {
            for &k in &ks {
                out.push(Instance { kind: ExtensionKind::Thinness, n, k });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedInstance {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub scope: String,
    pub instance: Instance,
    pub label: String,
    pub problems: usize,
}

/// An unfilled lifting problem: the map on the smaller shape and, for
/// relative checks, the map on the larger shape below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingFailure {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub scope: String,
    pub instance: Instance,
    pub label: String,
    pub upper: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingReport {
    pub checked: Vec<CheckedInstance>,
    pub failures: Vec<LiftingFailure>,
}

impl LiftingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn problems(&self) -> usize {
        self.checked.iter().map(|c| c.problems).sum()
    }

    /// Appends another report, tagging its entries with `scope`.
    pub fn absorb(&mut self, other: LiftingReport, scope: &str) {
        self.checked.extend(other.checked.into_iter().map(|mut c| {
            c.scope = scope.to_string();
            c
        }));
        self.failures.extend(other.failures.into_iter().map(|mut f| {
            f.scope = scope.to_string();
            f
        }));
    }

    pub fn failed_instances(&self) -> Vec<Instance> {
        let mut out: Vec<Instance> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.instance) {
                out.push(f.instance);
            }
        }
        out
    }
}

fn describe(source: &StratifiedSet, target: &StratifiedSet, map: &[Option<Simplex>]) -> BTreeMap<String, String> {
    map.iter()
        .enumerate()
        .filter_map(|(i, y)| y.as_ref().map(|y| (source.name(CellId(i)).to_string(), target.render(y))))
        .collect()
}

/// Whether `x` is a weak complicial set up to `dmax`, instance by instance.
pub fn rlp_report(x: &Arc<StratifiedSet>, dmax: usize, mode: Mode) -> Result<LiftingReport> {
    x.require_dim(dmax)?;
    run(x, None, dmax, mode)
}

/// Whether `p` has the right lifting property against every instance up to `dmax`.
pub fn relative_rlp_report(p: &StratifiedMap, dmax: usize, mode: Mode) -> Result<LiftingReport> {
    p.source().require_dim(dmax)?;
    p.target().require_dim(dmax)?;
    run(p.source(), Some(p), dmax, mode)
}

fn run(x: &StratifiedSet, p: Option<&StratifiedMap>, dmax: usize, mode: Mode) -> Result<LiftingReport> {
    let mut report = LiftingReport::default();
    for inst in instances(dmax, mode) {
        let label = inst.to_string();
        let mut problems = 0;
        let mut failures = Vec::new();
        match inst.kind {
            ExtensionKind::Horn => {
                let shape = complicial_shape(inst.n, inst.k)?;
                let horn = horn_in(&shape, inst.k)?;
                let src = &*shape.set;
                MapSearch::new(src, x).on_cells(horn.members().iter().copied()).for_each(|u| {
                    match p {
                        None => {
                            problems += 1;
                            if MapSearch::new(src, x).fix_all(u).first().is_none() {
                                failures.push((describe(src, x, u), None));
                            }
                        }
                        Some(p) => {
                            let y = &**p.target();
                            let pu: Vec<Option<Simplex>> = u.iter().map(|s| s.as_ref().map(|s| p.apply(s))).collect();
                            MapSearch::new(src, y).fix_all(&pu).for_each(|v| {
                                problems += 1;
                                let lift = MapSearch::new(src, x)
                                    .fix_all(u)
                                    .filter(|c, s| horn.contains(c) || Some(p.apply(s)) == v[c.0])
                                    .first();
                                if lift.is_none() {
                                    failures.push((describe(src, x, u), Some(describe(src, y, v))));
                                }
                                true
                            });
                        }
                    }
                    true
                });
            }
            ExtensionKind::Thinness => {
                let primed = complicial_primed_shape(inst.n, inst.k)?;
                let dprimed = complicial_dprimed_shape(inst.n, inst.k)?;
                let extra: Vec<CellId> =
                    primed.set.ids().filter(|&c| dprimed.set.cell(c).thin && !primed.set.cell(c).thin).collect();
                let src = &*primed.set;
                MapSearch::new(src, x).for_each(|u| {
                    let image = |c: &CellId| u[c.0].as_ref().expect("total map");
                    let below_thin = match p {
                        None => true,
                        Some(p) => extra.iter().all(|c| p.target().is_thin(&p.apply(image(c)))),
                    };
                    if below_thin {
                        problems += 1;
                        if !extra.iter().all(|c| x.is_thin(image(c))) {
                            let lower = p.map(|p| {
                                let pu: Vec<Option<Simplex>> = u.iter().map(|s| s.as_ref().map(|s| p.apply(s))).collect();
                                describe(src, p.target(), &pu)
                            });
                            failures.push((describe(src, x, u), lower));
                        }
                    }
                    true
                });
            }
        }
        for (upper, lower) in failures {
            report.failures.push(LiftingFailure { scope: String::new(), instance: inst, label: label.clone(), upper, lower });
        }
        report.checked.push(CheckedInstance { scope: String::new(), instance: inst, label, problems });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{standard, standard_thin};

    fn arc(s: StratifiedSet) -> Arc<StratifiedSet> {
        Arc::new(s)
    }

    #[test]
    fn instance_lists() {
        let inner = instances(3, Mode::Inner);
        assert_eq!(inner.len(), 1 + 1 + 2 + 2);
        assert_eq!(inner[0].to_string(), "Λ¹[2] ↪ Δ¹[2]");
        assert_eq!(inner[1].to_string(), "Δ¹[2]′ ↪ Δ¹[2]″");
        assert_eq!(instances(2, Mode::All).len(), 2 + 3 + 3);
        assert_eq!("inner".parse::<Mode>().unwrap(), Mode::Inner);
        assert!("outer".parse::<Mode>().is_err());
    }

    #[test]
    fn point_is_weak_complicial() {
        let r = rlp_report(&arc(standard(0)), 3, Mode::All).unwrap();
        assert!(r.passed());
        assert!(r.checked.iter().all(|c| c.problems == 1));
    }

    #[test]
    fn two_simplex_lacks_inner_filler() {
        let r = rlp_report(&arc(standard(2)), 2, Mode::Inner).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failed_instances(), vec![Instance { kind: ExtensionKind::Horn, n: 2, k: 1 }]);
        let f = &r.failures[0];
        assert_eq!(f.upper["0<1"], "0<1");
        assert_eq!(f.upper["1<2"], "1<2");
    }

    #[test]
    fn interval_is_weak_complicial() {
        assert!(rlp_report(&arc(standard(1)), 3, Mode::All).unwrap().passed());
        assert!(!rlp_report(&arc(standard_thin(1)), 2, Mode::All).unwrap().passed());
    }

    #[test]
    fn truncation_is_respected() {
        let z = crate::enriched::from_category(&crate::enriched::cyclic_group(2), 2).unwrap();
        assert!(matches!(rlp_report(&arc(z), 3, Mode::All), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn adding_thin_flags_keeps_passing_thinness_instances() {
        let x = arc(crate::shapes::cube(2));
        let positive: Vec<CellId> = x.ids().filter(|&c| x.cell(c).dim > 0).collect();
        let thin = rlp_report(&arc(x.make_thin(&positive).unwrap()), 2, Mode::All).unwrap();
        assert!(thin.failures.iter().all(|f| f.instance.kind == ExtensionKind::Horn));
    }
}
