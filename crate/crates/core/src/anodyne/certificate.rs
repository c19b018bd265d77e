//! Towers of elementary anodyne pushouts inside a fixed ambient set.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{complicial_dprimed_shape, complicial_primed_shape, complicial_shape, horn_in, DeltaShape};
use crate::strat::{CellId, SetJson, Simplex, SimplexJson, StratifiedMap, StratifiedSet, SubsetHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Along `Λᵏ[n] ↪ Δᵏ[n]`.
    Horn,
    /// Along `Δᵏ[n]′ ↪ Δᵏ[n]″`.
    Thinness,
    /// A horn step followed by a thinness step on the same simplex.
    ThinHorn,
}

/// One pushout; `attach` starts at `Δᵏ[n]` for horns and `Δᵏ[n]″` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    pub n: usize,
    pub k: usize,
    pub attach: StratifiedMap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnodyneCertificate {
    pub name: String,
    pub ambient: Arc<StratifiedSet>,
    pub start: SubsetHandle,
    pub finish: SubsetHandle,
    pub steps: Vec<Step>,
}

/// The source shape of an attaching map.
pub fn attach_shape(kind: StepKind, n: usize, k: usize) -> Result<DeltaShape> {
    match kind {
        StepKind::Horn => complicial_shape(n, k),
        StepKind::Thinness | StepKind::ThinHorn => complicial_dprimed_shape(n, k),
    }
}

/// The map `Δ[n] -> Z` picking out an `n`-cell, from the given stratification of `Δ[n]`.
pub fn yoneda_attach(shape: &DeltaShape, ambient: &Arc<StratifiedSet>, cell: CellId) -> Result<StratifiedMap> {
    let dim = ambient.cell(cell).dim;
    if dim != shape.n {
        return Err(Error::DimensionMismatch { expected: shape.n, found: dim });
    }
    let top = Simplex::cell(cell);
    let assignment =
        shape.set.ids().map(|c| ambient.act(&top, &shape.operator_of(c))).collect::<Result<Vec<_>>>()?;
    Ok(StratifiedMap::new_unchecked(shape.set.clone(), ambient.clone(), assignment))
}

impl Step {
    pub fn new(kind: StepKind, n: usize, k: usize, ambient: &Arc<StratifiedSet>, cell: CellId) -> Result<Step> {
        let shape = attach_shape(kind, n, k)?;
        Ok(Step { kind, n, k, attach: yoneda_attach(&shape, ambient, cell)? })
    }

    pub fn by_name(kind: StepKind, n: usize, k: usize, ambient: &Arc<StratifiedSet>, name: &str) -> Result<Step> {
        Step::new(kind, n, k, ambient, ambient.lookup(name)?)
    }

    /// The ambient cell of the top simplex.
    pub fn top_image(&self) -> &Simplex {
        let top = self.attach.source().ids().last().expect("Δ[n] is nonempty");
        self.attach.image(top)
    }
}

/// Members and thin flags while walking a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerState {
    pub members: BTreeSet<CellId>,
    pub thin: BTreeSet<CellId>,
}

impl TowerState {
    pub fn of(h: &SubsetHandle) -> Self {
        TowerState { members: h.members().clone(), thin: h.thin_members().clone() }
    }

    fn contains(&self, y: &Simplex) -> bool {
        self.members.contains(&y.cell)
    }

    fn is_thin(&self, y: &Simplex) -> bool {
        y.is_degenerate() || self.thin.contains(&y.cell)
    }

    pub fn is_within(&self, other: &TowerState) -> bool {
        self.members.is_subset(&other.members) && self.thin.is_subset(&other.thin)
    }

    pub fn handle(&self, ambient: &Arc<StratifiedSet>) -> Result<SubsetHandle> {
        SubsetHandle::new(ambient.clone(), self.members.clone(), self.thin.clone())
    }
}

fn violation(step: usize, condition: impl Into<String>) -> Error {
    Error::StepViolation { step, condition: condition.into() }
}

fn horn_phase(state: &mut TowerState, shape: &DeltaShape, attach: &StratifiedMap, k: usize, step: usize) -> Result<()> {
    let ambient = attach.target();
    let horn = horn_in(shape, k)?;
    for &c in horn.members() {
        let y = attach.image(c);
        if !state.contains(y) {
            return Err(violation(step, format!("horn cell `{}` lands outside the subset", shape.set.name(c))));
        }
        if shape.set.cell(c).thin && !state.is_thin(y) {
            return Err(violation(step, format!("thin horn cell `{}` lands on non-thin `{}`", shape.set.name(c), ambient.render(y))));
        }
    }
    let (top, face) = (attach.image(shape.top()), attach.image(shape.face_cell(k)));
    for (what, y) in [("top", top), ("missing face", face)] {
        if y.is_degenerate() {
            return Err(violation(step, format!("{what} lands on degenerate `{}`", ambient.render(y))));
        }
        if state.contains(y) {
            return Err(violation(step, format!("{what} `{}` is already present", ambient.render(y))));
        }
    }
    if top.cell == face.cell {
        return Err(violation(step, "top and missing face collide"));
    }
    state.members.insert(top.cell);
    state.members.insert(face.cell);
    for c in shape.set.ids().filter(|&c| shape.set.cell(c).thin && !horn.contains(c)) {
        let y = attach.image(c);
        if !y.is_degenerate() {
            state.thin.insert(y.cell);
        }
    }
    Ok(())
}

fn thinness_phase(state: &mut TowerState, n: usize, k: usize, attach: &StratifiedMap, step: usize) -> Result<()> {
    let ambient = attach.target();
    let primed = complicial_primed_shape(n, k)?;
    for c in primed.set.ids() {
        let y = attach.image(c);
        if !state.contains(y) {
            return Err(violation(step, format!("cell `{}` lands outside the subset", primed.set.name(c))));
        }
        if primed.set.cell(c).thin && !state.is_thin(y) {
            return Err(violation(step, format!("thin cell `{}` lands on non-thin `{}`", primed.set.name(c), ambient.render(y))));
        }
    }
    let y = attach.image(primed.face_cell(k));
    if y.is_degenerate() || !state.thin.insert(y.cell) {
        return Err(violation(step, format!("face `{}` is already thin, so the step adds nothing", ambient.render(y))));
    }
    Ok(())
}

/// Applies one step to the state, checking its pushout side conditions.
pub fn apply_step(state: &mut TowerState, step: &Step, ambient: &Arc<StratifiedSet>, index: usize) -> Result<()> {
    let shape = attach_shape(step.kind, step.n, step.k).map_err(|e| violation(index, e.to_string()))?;
    if **step.attach.source() != *shape.set {
        return Err(violation(index, "attach does not start at the step's shape"));
    }
    if !Arc::ptr_eq(step.attach.target(), ambient) && **step.attach.target() != **ambient {
        return Err(violation(index, "attach does not land in the ambient set"));
    }
    let report = step.attach.validate();
    if !report.is_valid() {
        return Err(violation(index, format!("attach is not a stratified map: {}", report.violations.join("; "))));
    }
    match step.kind {
        StepKind::Horn => horn_phase(state, &shape, &step.attach, step.k, index),
        StepKind::Thinness => thinness_phase(state, step.n, step.k, &step.attach, index),
        StepKind::ThinHorn => {
            let base = complicial_shape(step.n, step.k)?;
            horn_phase(state, &base, &step.attach, step.k, index)?;
            thinness_phase(state, step.n, step.k, &step.attach, index)
        }
    }
}

/// Walks the tower and returns every intermediate subset, start first.
pub fn verify_certificate(c: &AnodyneCertificate) -> Result<Vec<SubsetHandle>> {
    let ambient = &c.ambient;
    for (what, h) in [("start", &c.start), ("finish", &c.finish)] {
        if !Arc::ptr_eq(h.ambient(), ambient) && **h.ambient() != **ambient {
            return Err(violation(0, format!("{what} lives in another ambient set")));
        }
    }
    let mut state = TowerState::of(&c.start);
    let mut trail = vec![state.handle(ambient).map_err(|e| violation(0, e.to_string()))?];
    for (i, step) in c.steps.iter().enumerate() {
        apply_step(&mut state, step, ambient, i + 1)?;
        trail.push(state.handle(ambient).map_err(|e| violation(i + 1, e.to_string()))?);
    }
    let finish = TowerState::of(&c.finish);
    if state != finish {
        let missing = finish.members.difference(&state.members).count();
        let extra = state.members.difference(&finish.members).count();
        let thin = finish.thin.symmetric_difference(&state.thin).count();
        return Err(violation(
            c.steps.len() + 1,
            format!("end state differs from finish ({missing} missing, {extra} extra, {thin} thin flags differ)"),
        ));
    }
    Ok(trail)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetJson {
    pub members: Vec<String>,
    pub thin: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub kind: StepKind,
    pub n: usize,
    pub k: usize,
    pub attach: BTreeMap<String, SimplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(default)]
    pub name: String,
    pub ambient: SetJson,
    pub start: SubsetJson,
    pub finish: SubsetJson,
    pub steps: Vec<StepJson>,
}

fn subset_json(h: &SubsetHandle) -> SubsetJson {
    let a = h.ambient();
    SubsetJson {
        members: h.members().iter().map(|&c| a.name(c).to_string()).collect(),
        thin: h.thin_members().iter().map(|&c| a.name(c).to_string()).collect(),
    }
}

fn subset_from_json(ambient: &Arc<StratifiedSet>, j: &SubsetJson) -> Result<SubsetHandle> {
    let ids = |names: &[String]| names.iter().map(|s| ambient.lookup(s)).collect::<Result<BTreeSet<_>>>();
    SubsetHandle::new(ambient.clone(), ids(&j.members)?, ids(&j.thin)?)
}

impl AnodyneCertificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            name: self.name.clone(),
            ambient: self.ambient.to_json(),
            start: subset_json(&self.start),
            finish: subset_json(&self.finish),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson { kind: s.kind, n: s.n, k: s.k, attach: s.attach.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &CertificateJson) -> Result<AnodyneCertificate> {
        let ambient = Arc::new(StratifiedSet::from_json(&j.ambient)?);
        let mut steps = Vec::new();
        for s in &j.steps {
            let shape = attach_shape(s.kind, s.n, s.k)?;
            let attach = StratifiedMap::from_json(shape.set.clone(), ambient.clone(), &s.attach)?;
            steps.push(Step { kind: s.kind, n: s.n, k: s.k, attach });
        }
        Ok(AnodyneCertificate {
            name: j.name.clone(),
            start: subset_from_json(&ambient, &j.start)?,
            finish: subset_from_json(&ambient, &j.finish)?,
            ambient,
            steps,
        })
    }
}
