//! The hand-built towers for the cubes `Cᵏₙ`.

use std::sync::Arc;

use crate::anodyne::certificate::{AnodyneCertificate, Step, StepKind};
use crate::error::Result;
use crate::shapes::{big_c_cube, big_h_in, Cube};
use crate::strat::{StratifiedSet, SubsetHandle};

/// The 2-simplex of `C²₃` that `Ĉ²₃` makes thin.
pub const C_HAT_EXTRA: &str = "(0,0,0)<(0,1,0)<(1,1,1)";

/// `Ĉ²₃`.
pub fn c_hat_cube() -> Cube {
    let c = big_c_cube(3, 2).expect("valid parameters");
    let extra = c.set.lookup(C_HAT_EXTRA).expect("cell exists");
    c.with_thin(&[extra]).expect("positive dimension")
}

fn tower(
    name: &str,
    ambient: &Arc<StratifiedSet>,
    start: SubsetHandle,
    steps: &[(StepKind, usize, usize, &str)],
) -> Result<AnodyneCertificate> {
    let steps = steps.iter().map(|&(kind, n, k, cell)| Step::by_name(kind, n, k, ambient, cell)).collect::<Result<_>>()?;
    Ok(AnodyneCertificate {
        name: name.to_string(),
        ambient: ambient.clone(),
        start,
        finish: SubsetHandle::full(ambient.clone()),
        steps,
    })
}

fn h_to_c(n: usize, k: usize, name: &str, steps: &[(StepKind, usize, usize, &str)]) -> Result<AnodyneCertificate> {
    let c = big_c_cube(n, k)?;
    tower(name, &c.set, big_h_in(&c, k)?, steps)
}

pub fn h12_certificate() -> AnodyneCertificate {
    h_to_c(
        2,
        1,
        "H12-C12",
        &[(StepKind::Horn, 2, 1, "(0,0)<(1,0)<(1,1)"), (StepKind::Horn, 2, 0, "(0,0)<(0,1)<(1,1)")],
    )
    .expect("builtin tower")
}

pub fn h22_certificate() -> AnodyneCertificate {
    h_to_c(
        2,
        2,
        "H22-C22",
        &[(StepKind::Horn, 2, 1, "(0,0)<(0,1)<(1,1)"), (StepKind::Horn, 2, 0, "(0,0)<(1,0)<(1,1)")],
    )
    .expect("builtin tower")
}

/// The steps `H²₃ ⊆ V₁ ⊆ … ⊆ V₇ ⊆ Ĉ²₃`.
pub const H23_STEPS: [(StepKind, usize, usize, &str); 8] = [
    (StepKind::Horn, 2, 1, "(0,0,0)<(0,1,1)<(1,1,1)"),
    (StepKind::ThinHorn, 3, 2, "(0,0,0)<(0,0,1)<(0,1,1)<(1,1,1)"),
    (StepKind::Horn, 3, 1, "(0,0,0)<(0,0,1)<(1,0,1)<(1,1,1)"),
    (StepKind::Horn, 3, 2, "(0,0,0)<(1,0,0)<(1,0,1)<(1,1,1)"),
    (StepKind::Horn, 3, 1, "(0,0,0)<(1,0,0)<(1,1,0)<(1,1,1)"),
    (StepKind::Horn, 2, 1, "(0,1,0)<(0,1,1)<(1,1,1)"),
    (StepKind::ThinHorn, 3, 2, "(0,0,0)<(0,1,0)<(0,1,1)<(1,1,1)"),
    (StepKind::Horn, 3, 0, "(0,0,0)<(0,1,0)<(1,1,0)<(1,1,1)"),
];

pub fn h23_certificate() -> AnodyneCertificate {
    let c = c_hat_cube();
    let start = big_h_in(&c, 2).expect("valid parameters");
    tower("H23-Chat23", &c.set, start, &H23_STEPS).expect("builtin tower")
}

/// The simplex whose `δ₂` face is the cell `Ĉ²₃` thins.
pub const C23_THINNESS_SIMPLEX: &str = "(0,0,0)<(0,1,0)<(0,1,1)<(1,1,1)";

pub fn c23_certificate() -> AnodyneCertificate {
    let hat = c_hat_cube();
    let plain = big_c_cube(3, 2).expect("valid parameters");
    let members = hat.set.ids().collect();
    let thin = plain.set.ids().filter(|&c| plain.set.cell(c).thin).collect();
    let start = SubsetHandle::new(hat.set.clone(), members, thin).expect("entire subset");
    tower("C23-Chat23", &hat.set, start, &[(StepKind::Thinness, 3, 2, C23_THINNESS_SIMPLEX)]).expect("builtin tower")
}

pub fn builtin_certificates() -> Vec<AnodyneCertificate> {
    vec![h12_certificate(), h22_certificate(), h23_certificate(), c23_certificate()]
}
