//! Depth-first search for pushout towers, and single-field mutations of towers.

use std::collections::HashMap;
use std::sync::Arc;

use crate::anodyne::certificate::{
    apply_step, attach_shape, verify_certificate, yoneda_attach, AnodyneCertificate, Step, StepKind, TowerState,
};
use crate::error::{Error, Result};
use crate::shapes::DeltaShape;
use crate::strat::{CellId, Simplex, StratifiedSet, SubsetHandle};

struct Searcher<'a> {
    ambient: &'a Arc<StratifiedSet>,
    finish: TowerState,
    shapes: HashMap<(StepKind, usize, usize), DeltaShape>,
    /// Largest remaining budget already known to fail from a state.
    dead: HashMap<TowerState, usize>,
}

impl Searcher<'_> {
    fn shape(&mut self, kind: StepKind, n: usize, k: usize) -> &DeltaShape {
        self.shapes.entry((kind, n, k)).or_insert_with(|| attach_shape(kind, n, k).expect("k ≤ n"))
    }

    fn candidates(&mut self, state: &TowerState) -> Vec<Step> {
        let ambient = self.ambient.clone();
        let mut out = Vec::new();
        let cells: Vec<CellId> = self.finish.members.iter().copied().collect();
        for c in cells {
            let n = ambient.cell(c).dim;
            if n == 0 {
                continue;
            }
            let faces = &ambient.cell(c).faces;
            let missing: Vec<usize> = (0..=n).filter(|&j| !state.members.contains(&faces[j].cell)).collect();
            let mut kinds: Vec<(StepKind, usize)> = Vec::new();
            if !state.members.contains(&c) {
                if let [k] = missing[..] {
                    if !faces[k].is_degenerate() {
                        kinds.push((StepKind::Horn, k));
                        if n >= 2 {
                            kinds.push((StepKind::ThinHorn, k));
                        }
                    }
                }
            } else if n >= 2 {
                for k in 0..=n {
                    let f = &faces[k];
                    if !f.is_degenerate() && !state.thin.contains(&f.cell) && self.finish.thin.contains(&f.cell) {
                        kinds.push((StepKind::Thinness, k));
                    }
                }
            }
            for (kind, k) in kinds {
                let shape = self.shape(kind, n, k);
                if let Ok(attach) = yoneda_attach(shape, &ambient, c) {
                    out.push(Step { kind, n, k, attach });
                }
            }
        }
        out
    }

    fn dfs(&mut self, state: TowerState, steps: &mut Vec<Step>, budget: usize) -> bool {
        if state == self.finish {
            return true;
        }
        if budget == 0 || self.dead.get(&state).is_some_and(|&b| b >= budget) {
            return false;
        }
        for step in self.candidates(&state) {
            let mut next = state.clone();
            if apply_step(&mut next, &step, self.ambient, steps.len() + 1).is_err() || !next.is_within(&self.finish) {
                continue;
            }
            steps.push(step);
            if self.dfs(next, steps, budget - 1) {
                return true;
            }
            steps.pop();
        }
        self.dead.insert(state, budget);
        false
    }
}

/// A verified tower from `start` to `finish` of at most `budget` steps, if any.
pub fn search_tower(start: &SubsetHandle, finish: &SubsetHandle, budget: usize) -> Result<Option<AnodyneCertificate>> {
    let ambient = start.ambient();
    if !Arc::ptr_eq(ambient, finish.ambient()) && **ambient != **finish.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let (from, to) = (TowerState::of(start), TowerState::of(finish));
    if !from.is_within(&to) {
        return Err(Error::BadParams("start is not contained in finish".into()));
    }
    let mut searcher = Searcher { ambient, finish: to, shapes: HashMap::new(), dead: HashMap::new() };
    let mut steps = Vec::new();
    if !searcher.dfs(from, &mut steps, budget) {
        return Ok(None);
    }
    let cert = AnodyneCertificate {
        name: "search".into(),
        ambient: ambient.clone(),
        start: start.clone(),
        finish: finish.clone(),
        steps,
    };
    verify_certificate(&cert)?;
    Ok(Some(cert))
}

/// Every single-field change of a certificate: a step's kind, `k` or one
/// attaching image, dropping a step, and one member or thin flag of
/// `start` or `finish`.
pub fn mutations(c: &AnodyneCertificate) -> Vec<(String, AnodyneCertificate)> {
    let ambient = &c.ambient;
    let mut out = Vec::new();
    let mut push = |label: String, f: &dyn Fn(&mut AnodyneCertificate)| {
        let mut m = c.clone();
        f(&mut m);
        out.push((label, m));
    };
    for (i, step) in c.steps.iter().enumerate() {
        let top = step.top_image().cell;
        for kind in [StepKind::Horn, StepKind::Thinness, StepKind::ThinHorn] {
            if kind != step.kind {
                if let Ok(s) = Step::new(kind, step.n, step.k, ambient, top) {
                    push(format!("step {} kind {kind:?}", i + 1), &|m| m.steps[i] = s.clone());
                }
            }
        }
        for k in (0..=step.n).filter(|&k| k != step.k) {
            if let Ok(s) = Step::new(step.kind, step.n, k, ambient, top) {
                push(format!("step {} k = {k}", i + 1), &|m| m.steps[i] = s.clone());
            }
        }
        let src = step.attach.source();
        for cell in src.ids() {
            let dim = src.cell(cell).dim;
            let current = step.attach.image(cell).clone();
            let other = ambient.cells_of_dim(dim).map(Simplex::cell).find(|y| *y != current);
            if let Some(y) = other {
                push(format!("step {} image of {}", i + 1, src.name(cell)), &|m| {
                    let mut assignment = m.steps[i].attach.assignment().to_vec();
                    assignment[cell.0] = y.clone();
                    m.steps[i].attach = crate::strat::StratifiedMap::new_unchecked(src.clone(), ambient.clone(), assignment);
                });
            }
        }
        push(format!("drop step {}", i + 1), &|m| {
            m.steps.remove(i);
        });
    }
    for (which, h) in [("start", &c.start), ("finish", &c.finish)] {
        let toggled = |members: bool, cell: CellId| -> Option<SubsetHandle> {
            let (mut mem, mut thin) = (h.members().clone(), h.thin_members().clone());
            if members {
                if !mem.remove(&cell) {
                    mem.insert(cell);
                }
                thin.retain(|t| mem.contains(t));
            } else if !thin.remove(&cell) {
                thin.insert(cell);
            }
            SubsetHandle::new(ambient.clone(), mem, thin).ok()
        };
        for cell in ambient.ids() {
            for members in [true, false] {
                if let Some(new) = toggled(members, cell) {
                    let what = if members { "member" } else { "thin flag" };
                    push(format!("{which} {what} {}", ambient.name(cell)), &|m| {
                        if which == "start" {
                            m.start = new.clone();
                        } else {
                            m.finish = new.clone();
                        }
                    });
                }
            }
        }
    }
    out
}
