//! Weak-complicial lifting reports and certified towers of anodyne pushouts.

mod builtin;
mod certificate;
mod lifting;
mod search;

pub use builtin::{
    builtin_certificates, c23_certificate, c_hat_cube, h12_certificate, h22_certificate, h23_certificate,
    C23_THINNESS_SIMPLEX, C_HAT_EXTRA, H23_STEPS,
};
pub use certificate::{
    apply_step, attach_shape, verify_certificate, yoneda_attach, AnodyneCertificate, CertificateJson, Step, StepJson,
    StepKind, SubsetJson, TowerState,
};
pub use lifting::{
    instances, relative_rlp_report, rlp_report, CheckedInstance, ExtensionKind, Instance, LiftingFailure, LiftingReport,
    Mode,
};
pub use search::{mutations, search_tower};
