use super::*;
use crate::operator::CubeCoordinate::{Index, Minus, Plus};

fn w(values: &[CubeCoordinate]) -> CubeFunction {
    let m = values.iter().filter_map(|v| v.integer()).max().unwrap_or(0);
    CubeFunction::on_cube(m, values.to_vec()).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn standard_family() {
    assert_eq!(standard(2).census(), vec![3, 3, 1]);
    assert_eq!(standard(2).thin_census(), vec![0, 0, 0]);
    assert_eq!(boundary(2).census(), vec![3, 3]);
    assert_eq!(standard_thin(1).thin_census(), vec![0, 1]);
    assert_eq!(standard(0).census(), vec![1]);
    for n in 0..=4 {
        assert!(standard(n).validate().is_valid());
        assert!(boundary(n).validate().is_valid());
    }
}

#[test]
fn complicial_family() {
    assert_eq!(complicial(1, 0).unwrap(), standard_thin(1));
    let c21 = complicial(2, 1).unwrap();
    assert_eq!(c21.thin_census(), vec![0, 0, 1]);
    let h = horn(2, 1).unwrap();
    let names = h.names();
    assert_eq!(names, vec!["0", "1", "2", "0<1", "1<2"]);
    assert!(complicial_primed(1, 0).is_err());
    assert!(complicial(2, 3).is_err());

    let p = complicial_primed_shape(3, 1).unwrap();
    for (j, thin) in [(0, true), (1, false), (2, true), (3, true)] {
        assert_eq!(p.set.cell(p.face_cell(j)).thin, thin, "face {j}");
    }
    let pp = complicial_dprimed_shape(3, 1).unwrap();
    assert!(pp.set.cell(pp.face_cell(1)).thin);
    let p0 = complicial_primed_shape(2, 0).unwrap();
    assert!(p0.set.cell(p0.face_cell(1)).thin);
    assert!(!p0.set.cell(p0.face_cell(0)).thin);
}

#[test]
fn thin_faces_of_complicial_simplices_are_admissible() {
    for n in 1..=4 {
        for k in 0..=n {
            let s = complicial_shape(n, k).unwrap();
            for c in s.set.ids() {
                let op = s.operator_of(c);
                let expect = s.set.cell(c).dim > 0 && op.is_admissible(k).unwrap();
                assert_eq!(s.set.cell(c).thin, expect);
            }
        }
    }
}

#[test]
fn cube_censuses() {
    let c2 = Cube::new(2);
    assert_eq!(c2.set.census(), vec![4, 5, 2]);
    assert_eq!(c2.set.thin_census(), vec![0, 0, 1]);
    let thin_top = c2.cell_of(&w(&[Index(1), Index(2)])).unwrap();
    assert!(c2.set.cell(thin_top).thin);
    let diag = c2.cell_of(&w(&[Index(1), Index(1)])).unwrap();
    assert!(!c2.set.cell(diag).thin);
    assert_eq!(c2.set.name(thin_top), "(0,0)<(0,1)<(1,1)");

    for n in 2..=4 {
        let c = Cube::new(n);
        let tops: Vec<CellId> = c.set.cells_of_dim(n).collect();
        assert_eq!(tops.len(), factorial(n));
        assert_eq!(tops.iter().filter(|&&t| !c.set.cell(t).thin).count(), 1);
        assert!(c.set.validate().is_valid());
    }
}

#[test]
fn cube_thinness_agrees_with_inversions_on_partial_bijections() {
    for n in 1..=4 {
        let c = Cube::new(n);
        for f in c.functions() {
            if f.m > 0 && f.is_partial_bijection() {
                assert_eq!(f.is_tensor_thin(), f.has_strict_inversion(), "{f}");
            }
            if f.is_tensor_thin() {
                assert!(f.has_strict_inversion(), "{f}");
            }
        }
    }
}

#[test]
fn classify_examples() {
    assert_eq!(classify_cube_simplex(2, &w(&[Index(2), Index(1)])).unwrap(), CubeClass::Special);
    assert_eq!(classify_cube_simplex(2, &w(&[Index(1), Index(2)])).unwrap(), CubeClass::Thin);
    assert_eq!(classify_cube_simplex(2, &w(&[Index(1), Plus])).unwrap(), CubeClass::Special);
    assert_eq!(classify_cube_simplex(2, &w(&[Index(1), Index(1)])).unwrap(), CubeClass::Plain);
    let gap = CubeFunction::on_cube(3, vec![Index(1), Index(3)]).unwrap();
    assert_eq!(classify_cube_simplex(2, &gap).unwrap(), CubeClass::Degenerate);
}

#[test]
fn degeneracy_matches_brute_force() {
    for n in 0..=3 {
        let c = Cube::new(n);
        for d in 0..=3 {
            for x in c.set.simplices_of_dim(d) {
                let f = c.function_of(&x);
                assert_eq!(f.m, d);
                // a simplex is degenerate iff some σ_j·δ_j round trip fixes it
                let brute = (0..d).any(|j| {
                    let y = c.set.face(&x, j).unwrap();
                    c.set.degenerate(&y, j).unwrap() == x
                });
                assert_eq!(brute, !f.is_integer_surjective());
                assert_eq!(c.simplex_of(&f).unwrap(), x);
            }
        }
    }
}

#[test]
fn c_map_examples() {
    let c = c_map(2);
    let cube = Cube::new(2);
    let delta = standard_shape(2);
    let special = cube.cell_of(&special_top(2)).unwrap();
    assert_eq!(*c.image(special), Simplex::cell(delta.top()));
    let thin = cube.cell_of(&w(&[Index(1), Index(2)])).unwrap();
    let img = c.image(thin);
    assert_eq!(delta.set.vertices(img), vec![delta.cell_of(&[0]), delta.cell_of(&[0]), delta.cell_of(&[2])]);
    let top = cube.set.lookup("(1,1)").unwrap();
    assert_eq!(*c.image(top), Simplex::cell(delta.cell_of(&[2])));
    let bottom = cube.set.lookup("(0,0)").unwrap();
    assert_eq!(*c.image(bottom), Simplex::cell(delta.cell_of(&[0])));
}

#[test]
fn c_map_is_stratified() {
    for n in 0..=4 {
        let report = c_map(n).validate();
        assert!(report.is_valid(), "n = {n}: {:?}", report.violations);
    }
}

#[test]
fn special_functions() {
    assert_eq!(special_top(2).values, vec![Index(2), Index(1)]);
    assert_eq!(special_w(3, 2).unwrap().values, vec![Index(2), Plus, Index(1)]);
    assert_eq!(special_w(2, 1).unwrap().values, vec![Plus, Index(1)]);
    assert!(special_w(2, 3).is_err());
    for n in 1..=4 {
        let c = Cube::new(n);
        let s = c.cell_of(&special_top(n)).unwrap();
        assert!(!c.set.cell(s).thin);
        for i in 1..=n {
            let wi = special_w(n, i).unwrap();
            assert!(wi.is_partial_bijection() && !wi.has_strict_inversion());
        }
    }
}

#[test]
fn ckn_examples() {
    let c = big_c_cube(3, 2).unwrap();
    let h = big_h(3, 2).unwrap();
    let w2 = c.cell_of(&special_w(3, 2).unwrap()).unwrap();
    assert!(!c.set.cell(w2).thin);
    assert!(!h.contains(w2));
    let gap = c.cell_of(&w(&[Index(2), Minus, Index(1)])).unwrap();
    assert!(c.set.cell(gap).thin);
    assert!(h.contains(gap));

    let c12 = big_c_cube(2, 1).unwrap();
    let h12 = big_h(2, 1).unwrap();
    let edge = c12.cell_of(&w(&[Index(1), Minus])).unwrap();
    assert!(c12.set.cell(edge).thin);
    assert!(h12.contains(edge));
    let diag = c12.cell_of(&w(&[Index(1), Index(1)])).unwrap();
    assert!(!c12.set.cell(diag).thin);

    assert!(big_c(1, 1).is_err());
    assert!(big_c(3, 0).is_err());
}

#[test]
fn ckn_structure() {
    for n in 2..=4 {
        for k in 1..=n {
            let base = Cube::new(n);
            let c = big_c_cube(n, k).unwrap();
            let h = big_h_in(&c, k).unwrap();
            assert_eq!(h.kind(), crate::strat::SubsetKind::Regular);
            let dot = c_dot_cube(n, k).unwrap();
            let ddot = c_ddot_cube(n, k).unwrap();
            for id in c.set.ids() {
                let (b, t, d, dd) =
                    (base.set.cell(id).thin, c.set.cell(id).thin, dot.set.cell(id).thin, ddot.set.cell(id).thin);
                assert!(!b || t);
                assert!(!t || d);
                assert!(!d || dd);
                let f = c.function(id);
                if t && !b {
                    assert!(f.is_partial_bijection() && !f.has_strict_inversion());
                }
            }
            // criterion (ii) thins the special top, as in Δᵏ[n]
            let s = c.cell_of(&special_top(n)).unwrap();
            assert!(c.set.cell(s).thin && !base.set.cell(s).thin);
        }
    }
}

#[test]
fn named_shapes() {
    assert_eq!(named_shape("cube", Some(2), None).unwrap().len(), 11);
    assert_eq!(named_shape("delta", Some(0), None).unwrap().len(), 1);
    assert!(matches!(named_shape("bigH", Some(3), Some(2)), Ok(_)));
    assert!(matches!(named_shape("blob", Some(1), None), Err(Error::UnknownShape(_))));
    assert!(matches!(named_shape("cube", None, None), Err(Error::BadParams(_))));
}
