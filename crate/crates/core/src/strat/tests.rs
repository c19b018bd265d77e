use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::operator::Operator;
use crate::shapes::{self, big_c_cube, big_h, standard, standard_thin};

fn arc(s: StratifiedSet) -> Arc<StratifiedSet> {
    Arc::new(s)
}

fn all_ops(n: usize, m: usize) -> Vec<Operator> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn go(n: usize, m: usize, lo: usize, acc: &mut Vec<usize>, out: &mut Vec<Operator>) {
        if acc.len() == n + 1 {
            out.push(Operator::new(n as i64, m as i64, acc.clone()).unwrap());
            return;
        }
        for v in lo..=m {
            acc.push(v);
            go(n, m, v, acc, out);
            acc.pop();
        }
    }
    go(n, m, 0, &mut acc, &mut out);
    out
}

#[test]
fn validation_examples() {
    assert!(standard(2).validate().is_valid());
    let mut cells = standard(2).cells().to_vec();
    let top = cells.last_mut().unwrap();
    top.faces.swap(0, 1);
    let broken = StratifiedSet::from_cells_unchecked(2, cells);
    let report = broken.validate();
    assert!(!report.is_valid());
    assert!(report.violations.iter().any(|v| v.contains("simplicial identity")));

    let mut cells = standard(1).cells().to_vec();
    cells[0].thin = true;
    let report = StratifiedSet::from_cells_unchecked(1, cells).validate();
    assert!(report.violations.iter().any(|v| v.contains("0-cell")));
}

#[test]
fn act_examples() {
    let d2 = standard(2);
    let top = Simplex::cell(d2.lookup("0<1<2").unwrap());
    assert_eq!(d2.act(&top, &Operator::identity(2)).unwrap(), top);

    let s0 = Operator::degeneracy(2, 0).unwrap();
    let d0 = Operator::face(3, 0).unwrap();
    let stepwise = d2.act(&d2.act(&top, &s0).unwrap(), &d0).unwrap();
    assert_eq!(stepwise, d2.act(&top, &s0.compose(&d0).unwrap()).unwrap());
    assert_eq!(stepwise, top);

    let v = Simplex::cell(d2.lookup("1").unwrap());
    let total = d2.act(&v, &Operator::terminal(3)).unwrap();
    assert_eq!(total, Simplex { cell: v.cell, word: vec![2, 1, 0] });
    assert!(matches!(d2.act(&top, &Operator::identity(1)), Err(crate::Error::DimensionMismatch { .. })));
}

#[test]
fn act_is_functorial_on_small_shapes() {
    for x in [standard(3), shapes::cube(3), shapes::big_c(3, 2).unwrap()] {
        for d in 0..=3 {
            for s in x.simplices_of_dim(d) {
                for m in 0..=3 {
                    for a in all_ops(m, d) {
                        let xa = x.act(&s, &a).unwrap();
                        for p in 0..=2 {
                            for b in all_ops(p, m) {
                                let lhs = x.act(&xa, &b).unwrap();
                                let rhs = x.act(&s, &a.compose(&b).unwrap()).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn regular_generated_examples() {
    let d2 = arc(standard(2));
    assert!(regular_generated(&d2, &[]).unwrap().members().is_empty());
    let top = d2.lookup("0<1<2").unwrap();
    assert_eq!(regular_generated(&d2, &[top]).unwrap().members().len(), 7);

    let c = big_c_cube(2, 1).unwrap();
    let u = regular_generated_by_name(&c.set, &["(0,0)<(1,0)<(1,1)"]).unwrap();
    assert_eq!(u.members().len(), 7);
    assert_eq!(u.kind(), SubsetKind::Regular);
}

#[test]
fn regular_generated_is_a_closure_operator() {
    let c = arc(shapes::cube(3));
    let ids: Vec<CellId> = c.ids().collect();
    for (i, &a) in ids.iter().enumerate().step_by(3) {
        let b = ids[(i * 7 + 5) % ids.len()];
        let small = regular_generated(&c, &[a]).unwrap();
        let big = regular_generated(&c, &[a, b]).unwrap();
        let again = regular_generated(&c, &small.members().iter().copied().collect::<Vec<_>>()).unwrap();
        assert_eq!(again, small);
        assert!(small.members().contains(&a));
        assert!(small.members().is_subset(big.members()));
    }
}

#[test]
fn make_thin_examples() {
    let d2 = standard(2);
    assert_eq!(d2.make_thin(&[]).unwrap(), d2);
    let positive: Vec<CellId> = d2.ids().filter(|&c| d2.cell(c).dim > 0).collect();
    let max = d2.make_thin(&positive).unwrap();
    assert_eq!(max.thin_census(), vec![0, 3, 1]);
    let v = d2.lookup("0").unwrap();
    assert!(matches!(d2.make_thin(&[v]), Err(crate::Error::ZeroDimensional(_))));
}

#[test]
fn union_and_kinds() {
    let c = big_c_cube(2, 1).unwrap();
    let h = big_h(2, 1).unwrap();
    let h = SubsetHandle::new(c.set.clone(), h.members().clone(), h.thin_members().clone()).unwrap();
    assert_eq!(union_regular(&c.set, &[h.clone(), h.clone()]).unwrap(), h);
    let g = regular_generated_by_name(&c.set, &["(0,0)<(1,0)<(1,1)"]).unwrap();
    let u = union_regular(&c.set, &[h.clone(), g]).unwrap();
    // H¹₂ has three edges; U adds the 2-cell and the diagonal
    assert_eq!(h.members().len(), 7);
    assert_eq!(u.members().len(), 9);

    let other = arc(standard(2));
    assert_eq!(union_regular(&other, &[h]).unwrap_err(), crate::Error::AmbientMismatch);

    let c23 = big_c_cube(3, 2).unwrap();
    assert_eq!(SubsetHandle::full(c23.set.clone()).kind(), SubsetKind::Full);
    let h23 = big_h(3, 2).unwrap();
    assert_eq!(h23.kind(), SubsetKind::Regular);
    let full = SubsetHandle::full(c23.set.clone());
    let mut thin = full.thin_members().clone();
    let dropped = *thin.iter().next().unwrap();
    thin.remove(&dropped);
    let entire = SubsetHandle::new(c23.set.clone(), full.members().clone(), thin).unwrap();
    assert_eq!(entire.kind(), SubsetKind::Entire);
}

#[test]
fn gray_product_censuses() {
    let p = gray_product(&arc(standard(0)), &arc(standard(2)));
    assert_eq!(p.set().census(), standard(2).census());
    assert!(p.set().validate().is_valid());

    let i = arc(standard(1));
    let p = gray_product(&i, &i);
    assert_eq!(p.set().census(), vec![4, 5, 2]);
    // no edge has two thin components; both 2-cells pair two degenerate triangles
    assert_eq!(p.set().thin_census(), vec![0, 0, 2]);
    assert!(p.set().validate().is_valid());

    let t = arc(standard_thin(1));
    let p = gray_product(&t, &t);
    assert_eq!(p.set().census(), vec![4, 5, 2]);
    // both 2-cells, and the edges whose components are both thin
    assert_eq!(p.set().thin_census(), vec![0, 5, 2]);
    let it = gray_product(&i, &t);
    assert_eq!(it.set().thin_census(), vec![0, 2, 2]);
    for c in it.set().ids() {
        let (x, y) = it.components(c);
        assert_eq!(it.set().cell(c).thin, i.is_thin(x) && t.is_thin(y) && it.set().cell(c).dim > 0);
    }
}

#[test]
fn gray_product_pairs_normalize() {
    let i = arc(standard(1));
    let d2 = arc(standard(2));
    let p = gray_product(&i, &d2);
    for m in 0..=3 {
        for x in i.simplices_of_dim(m) {
            for y in d2.simplices_of_dim(m) {
                let z = p.pair(&x, &y).unwrap();
                assert_eq!(p.set().dim(&z), m);
                let (cx, cy) = p.components(z.cell).clone();
                assert_eq!(i.degenerate_word(&cx, &z.word), x);
                assert_eq!(d2.degenerate_word(&cy, &z.word), y);
            }
        }
    }
}

#[test]
fn enumerate_examples() {
    let x = arc(standard(2));
    assert_eq!(enumerate_maps(&arc(standard(0)), &x).unwrap().len(), 3);
    let i = arc(standard(1));
    assert_eq!(enumerate_maps(&i, &i).unwrap().len(), 3);
    assert_eq!(enumerate_maps(&arc(standard_thin(1)), &i).unwrap().len(), 2);
    for f in enumerate_maps(&arc(standard(2)), &arc(shapes::cube(2))).unwrap() {
        assert!(f.validate().is_valid());
    }
}

#[test]
fn enumeration_count_ignores_names() {
    let a = arc(standard(2));
    let x = shapes::cube(2);
    let renamed: Vec<Cell> =
        x.cells().iter().enumerate().map(|(i, c)| Cell { name: format!("z{i}"), ..c.clone() }).collect();
    let y = arc(StratifiedSet::from_cells(x.dim_cap(), renamed).unwrap());
    assert_eq!(enumerate_maps(&a, &arc(x)).unwrap().len(), enumerate_maps(&a, &y).unwrap().len());
}

#[test]
fn json_round_trip() {
    let c = shapes::big_c(3, 2).unwrap();
    let json = serde_json::to_string(&c.to_json()).unwrap();
    let back = StratifiedSet::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, c);
    assert!(json.contains("\"dim_cap\":3"));
}

#[test]
fn materialized_subset_is_valid() {
    let h = big_h(3, 2).unwrap();
    let (set, old) = h.materialize();
    assert!(set.validate().is_valid());
    assert_eq!(old.len(), set.len());
}

proptest! {
    #[test]
    fn maps_compose_with_faces(seed in 0usize..200) {
        let a = arc(standard(2));
        let x = arc(shapes::cube(3));
        let maps = enumerate_maps(&a, &x).unwrap();
        let f = &maps[seed % maps.len()];
        prop_assert!(f.validate().is_valid());
        for s in a.simplices_of_dim(3) {
            for j in 0..=3 {
                let lhs = x.face(&f.apply(&s), j).unwrap();
                let rhs = f.apply(&a.face(&s, j).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
