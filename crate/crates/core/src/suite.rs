//! The verification suite: each item checks one family of claims at desk
//! scale and reports pass/fail with a short detail line.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::anodyne::{
    builtin_certificates, h12_certificate, h23_certificate, mutations, rlp_report, search_tower, verify_certificate,
    Mode, H23_STEPS,
};
use crate::enriched::{
    all_functors, cyclic_group, delooping, from_category, suspension, walking_iso, EnrichedCategory,
};
use crate::error::Result;
use crate::hc_path::{generators_up_to, path_act};
use crate::nerve::{
    build_nerve, functor_image, is_degenerate, nerve_simplices, nerve_thin, recover_arrow, sigma_functor,
    yoneda_functor, NerveSimplex,
};
use crate::operator::{CubeCoordinate, Operator};
use crate::shapes::{big_h_in, c_map, cube, standard, standard_thin, CubeFunction};
use crate::strat::{regular_generated_by_name, union_regular, StratifiedSet};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<SuiteItem>,
}

fn item(name: &str, outcome: Result<std::result::Result<String, String>>) -> SuiteItem {
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    SuiteItem { name: name.to_string(), passed, detail }
}

/// Every function `(0, n] -> ⌜m⌝`.
pub fn all_cube_functions(n: usize, m: usize) -> Vec<CubeFunction> {
    let mut values = vec![Vec::new()];
    for _ in 0..n {
        values = values
            .into_iter()
            .flat_map(|v: Vec<CubeCoordinate>| {
                let mut options = vec![CubeCoordinate::Minus, CubeCoordinate::Plus];
                options.extend((1..=m).map(CubeCoordinate::Index));
                options.into_iter().map(move |c| [v.clone(), vec![c]].concat())
            })
            .collect();
    }
    values.into_iter().map(|v| CubeFunction::on_cube(m, v).expect("values in range")).collect()
}

/// Degenerate iff `w = (w·δ_j)·σ_j` for some `j`.
pub fn brute_force_degenerate(w: &CubeFunction) -> bool {
    (0..w.m).any(|j| {
        let face = Operator::face(w.m, j).expect("j < m");
        let degeneracy = Operator::degeneracy(w.m - 1, j).expect("j < m");
        w.act(&face).and_then(|v| v.act(&degeneracy)).is_ok_and(|v| v == *w)
    })
}

/// Top cells of `cube(n)` number `n!` with one non-thin, and degeneracy is
/// integer non-surjectivity, for `2 ≤ n ≤ nmax`.
pub fn cube_census(nmax: usize) -> Result<std::result::Result<String, String>> {
    let mut tops = Vec::new();
    for n in 2..=nmax {
        let c = cube(n);
        let top: Vec<_> = c.cells_of_dim(n).collect();
        let plain = top.iter().filter(|&&x| !c.cell(x).thin).count();
        let factorial: usize = (1..=n).product();
        if top.len() != factorial || plain != 1 {
            return Ok(Err(format!("cube({n}): {} top cells, {plain} non-thin", top.len())));
        }
        for m in 0..=n {
            for w in all_cube_functions(n, m) {
                if brute_force_degenerate(&w) == w.is_integer_surjective() {
                    return Ok(Err(format!("degeneracy mismatch at {}", w.describe())));
                }
            }
        }
        tops.push(format!("{n}:{}", top.len()));
    }
    Ok(Ok(format!("top cells {}", tops.join(" "))))
}

pub fn c_map_stratified(nmax: usize) -> Result<std::result::Result<String, String>> {
    for n in 0..=nmax {
        let report = c_map(n).validate();
        if !report.is_valid() {
            return Ok(Err(format!("c_map({n}): {}", report.violations.join("; "))));
        }
    }
    Ok(Ok(format!("c_map(n) stratified for n ≤ {nmax}")))
}

fn random_operator(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Operator {
    let mut values: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=m)).collect();
    values.sort_unstable();
    Operator::new(n as i64, m as i64, values).expect("sorted values in range")
}

/// `path_act(β∘α) = path_act(β)∘path_act(α)` on random composable pairs.
pub fn functoriality_sample(
    seed: u64,
    samples: usize,
    max_ordinal: usize,
    max_dim: usize,
) -> Result<std::result::Result<String, String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..samples {
        let (p, q, r) =
            (rng.gen_range(0..=max_ordinal), rng.gen_range(0..=max_ordinal), rng.gen_range(0..=max_ordinal));
        let alpha = random_operator(&mut rng, p, q);
        let beta = random_operator(&mut rng, q, r);
        let both = beta.compose(&alpha)?;
        for g in generators_up_to(p, max_dim) {
            let lhs = path_act(&both, &g)?;
            let rhs = path_act(&beta, &path_act(&alpha, &g)?)?;
            if lhs != rhs {
                return Ok(Err(format!("fails for α = {alpha}, β = {beta} on {g:?}")));
            }
            checked += 1;
        }
    }
    Ok(Ok(format!("{samples} pairs, {checked} generator checks")))
}

/// All builtin towers verify, `H²₃` follows `V₁…V₇`, and every single-field mutation fails.
pub fn builtin_certificate_check() -> Result<std::result::Result<String, String>> {
    let certs = builtin_certificates();
    let mut mutants = 0;
    for c in &certs {
        if let Err(e) = verify_certificate(c) {
            return Ok(Err(format!("{}: {e}", c.name)));
        }
        for (label, m) in mutations(c) {
            if verify_certificate(&m).is_ok() {
                return Ok(Err(format!("{}: mutation `{label}` verifies", c.name)));
            }
            mutants += 1;
        }
    }
    let h23 = h23_certificate();
    if h23.steps.len() != 8 {
        return Ok(Err(format!("H23 tower has {} steps", h23.steps.len())));
    }
    let trail = verify_certificate(&h23)?;
    let start = big_h_in(&crate::anodyne::c_hat_cube(), 2)?;
    for i in 1..=7 {
        let seeds: Vec<&str> = H23_STEPS[..i].iter().map(|s| s.3).collect();
        let expected = union_regular(&h23.ambient, &[start.clone(), regular_generated_by_name(&h23.ambient, &seeds)?])?;
        if trail[i].members() != expected.members() {
            return Ok(Err(format!("V{i} differs from its generator list")));
        }
    }
    Ok(Ok(format!("{} certificates, {mutants} mutations rejected", certs.len())))
}

pub fn tower_search(budget: usize) -> Result<std::result::Result<String, String>> {
    let c = h12_certificate();
    Ok(match search_tower(&c.start, &c.finish, budget)? {
        Some(found) => Ok(format!("{} steps", found.steps.len())),
        None => Err(format!("no tower within {budget} steps")),
    })
}

/// The enriched categories the nerve checks run on.
pub fn desk_examples() -> Result<Vec<(String, EnrichedCategory)>> {
    Ok(vec![
        ("ΣΔ[0]".into(), suspension(&standard(0))),
        ("ΣΔ[1]".into(), suspension(&standard(1))),
        ("ΣN(I)".into(), suspension(&from_category(&walking_iso(), 4)?)),
        ("BN(Z/2)".into(), delooping(&cyclic_group(2), 4)?),
    ])
}

/// Cell-for-cell equality ignoring names, caps and truncation.
pub fn same_shape(a: &StratifiedSet, b: &StratifiedSet) -> bool {
    a.len() == b.len()
        && a.ids().all(|c| {
            let (x, y) = (a.cell(c), b.cell(c));
            x.dim == y.dim && x.thin == y.thin && x.faces == y.faces
        })
}

/// `N(ΣΔ[0]) ≅ Δ[1]`, and degenerate simplices are thin in every desk example.
pub fn nerve_identities(dmax: usize) -> Result<std::result::Result<String, String>> {
    let arrow = suspension(&standard(0));
    let nerve = build_nerve(&arrow, dmax)?;
    if !same_shape(&nerve.set, &standard(1)) {
        return Ok(Err(format!("N(ΣΔ[0]) has census {:?}", nerve.set.census())));
    }
    let two = nerve_simplices(&arrow, 2)?.len();
    if two != 4 {
        return Ok(Err(format!("N(ΣΔ[0]) has {two} 2-simplices")));
    }
    let mut degenerate = 0;
    for (name, e) in desk_examples()? {
        for n in 1..=dmax {
            for f in nerve_simplices(&e, n)? {
                if is_degenerate(&e, &f)? {
                    if !nerve_thin(&e, &f)? {
                        return Ok(Err(format!("{name}: a degenerate {n}-simplex is not thin")));
                    }
                    degenerate += 1;
                }
            }
        }
    }
    Ok(Ok(format!("N(ΣΔ[0]) ≅ Δ[1]; {degenerate} degenerate simplices thin")))
}

/// Nerve images of a functor on every simplex of the source nerve up to `dmax`.
fn nerve_image(source: &EnrichedCategory, f: &crate::enriched::EnrichedFunctor, dmax: usize) -> Result<Vec<NerveSimplex>> {
    let mut out = Vec::new();
    for n in 0..=dmax {
        out.extend(nerve_simplices(source, n)?.iter().map(|x| functor_image(f, x)));
    }
    Ok(out)
}

/// Arrows come back from `ŷ∘fⁿ`, and distinct functors have distinct nerves.
pub fn faithfulness_probe(dmax: usize) -> Result<std::result::Result<String, String>> {
    let homs = [standard(1), standard(2), standard_thin(1), from_category(&walking_iso(), 4)?];
    let mut recovered = 0;
    for x in &homs {
        let e = Arc::new(suspension(x));
        let h = e.hom(0, 1).clone();
        for m in 0..=2 {
            for y in h.simplices_of_dim(m) {
                let g = functor_image(&yoneda_functor(&e, 0, 1, &y)?, &sigma_functor(m));
                if recover_arrow(&e, &g)? != y {
                    return Ok(Err(format!("arrow `{}` is not recovered", h.render(&y))));
                }
                recovered += 1;
            }
        }
    }
    let small = [standard(0), standard(1)];
    let mut functors = 0;
    for x in &small {
        for y in &homs[..3] {
            let (s, t) = (Arc::new(suspension(x)), Arc::new(suspension(y)));
            let all = all_functors(&s, &t)?;
            let images = all.iter().map(|f| nerve_image(&s, f, dmax)).collect::<Result<Vec<_>>>()?;
            for i in 0..images.len() {
                if images[i + 1..].contains(&images[i]) {
                    return Ok(Err("two functors share a nerve".into()));
                }
            }
            functors += all.len();
        }
    }
    Ok(Ok(format!("{recovered} arrows recovered; {functors} functors separated")))
}

/// Inner horn and thinness extensions of the nerves of the desk examples.
pub fn nerve_inner_rlp(dmax: usize) -> Result<std::result::Result<String, String>> {
    let mut parts = Vec::new();
    for (name, e) in desk_examples()? {
        let nerve = build_nerve(&e, dmax)?;
        let report = rlp_report(&nerve.set, dmax, Mode::Inner)?;
        if !report.passed() {
            return Ok(Err(format!("{name}: fails {}", report.failures[0].label)));
        }
        parts.push(format!("{name} {:?}", nerve.set.census()));
    }
    Ok(Ok(parts.join("; ")))
}

pub fn nerve_censuses(dmax: usize) -> Result<std::result::Result<String, String>> {
    let mut parts = Vec::new();
    for (name, e) in desk_examples()? {
        let nerve = build_nerve(&e, dmax)?;
        if !nerve.set.validate().is_valid() {
            return Ok(Err(format!("{name}: nerve is not a stratified set")));
        }
        parts.push(format!("{name} {:?}/{:?}", nerve.set.census(), nerve.set.thin_census()));
    }
    Ok(Ok(parts.join("; ")))
}

/// Runs every item in order.
pub fn run_suite(seed: u64) -> SuiteReport {
    let items = vec![
        item("cube census", cube_census(4)),
        item("c_map stratified", c_map_stratified(4)),
        item("S_lax functoriality", functoriality_sample(seed, 200, 5, 3)),
        item("builtin certificates", builtin_certificate_check()),
        item("tower search", tower_search(10)),
        item("nerve censuses", nerve_censuses(3)),
        item("nerve identities", nerve_identities(3)),
        item("faithfulness", faithfulness_probe(3)),
        item("nerve inner RLP", nerve_inner_rlp(3)),
    ];
    SuiteReport { seed, passed: items.iter().all(|i| i.passed), items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agrees_on_small_cubes() {
        assert!(cube_census(3).unwrap().is_ok());
        assert_eq!(all_cube_functions(2, 1).len(), 9);
    }

    #[test]
    fn functoriality_is_reproducible() {
        let a = functoriality_sample(7, 20, 4, 2).unwrap();
        assert!(a.is_ok());
        assert_eq!(a, functoriality_sample(7, 20, 4, 2).unwrap());
    }

    #[test]
    fn failing_items_report_their_error() {
        let i = item("x", Err(crate::error::Error::BadParams("nope".into())));
        assert!(!i.passed);
        assert!(i.detail.contains("nope"));
    }
}
