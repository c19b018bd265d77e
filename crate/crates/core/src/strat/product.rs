use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::strat::set::{subsets, Cell, CellId, Simplex, StratifiedSet};

/// The cartesian product `X ⊛ Y` together with its pair coordinates.
#[derive(Clone, Debug)]
pub struct Product {
    pub left: Arc<StratifiedSet>,
    pub right: Arc<StratifiedSet>,
    set: Arc<StratifiedSet>,
    pairs: Vec<(Simplex, Simplex)>,
    index: HashMap<(Simplex, Simplex), CellId>,
}

pub fn gray_product(x: &Arc<StratifiedSet>, y: &Arc<StratifiedSet>) -> Product {
    let cap = x.dim_cap() + y.dim_cap();
    gray_product_capped(x, y, cap)
}

/// Product keeping only nondegenerate pairs of dimension at most `cap`.
pub fn gray_product_capped(x: &Arc<StratifiedSet>, y: &Arc<StratifiedSet>, cap: usize) -> Product {
    let mut p = Product {
        left: x.clone(),
        right: y.clone(),
        set: Arc::new(StratifiedSet::empty()),
        pairs: Vec::new(),
        index: HashMap::new(),
    };
    let mut cells: Vec<Cell> = Vec::new();
    for m in 0..=cap {
        for a in x.ids() {
            let da = x.cell(a).dim;
            if da > m {
                break;
            }
            for b in y.ids() {
                let db = y.cell(b).dim;
                if db > m {
                    break;
                }
                if da + db < m {
                    continue;
                }
                for ra in subsets(m, m - da) {
                    let rest: Vec<usize> = (0..m).filter(|j| !ra.contains(j)).collect();
                    for pick in subsets(rest.len(), m - db) {
                        let rb: Vec<usize> = pick.iter().map(|&i| rest[i]).collect();
                        let sa = Simplex { cell: a, word: ra.iter().rev().copied().collect() };
                        let sb = Simplex { cell: b, word: rb.iter().rev().copied().collect() };
                        let faces = if m == 0 {
                            Vec::new()
                        } else {
                            (0..=m)
                                .map(|i| {
                                    let fa = x.face(&sa, i).expect("face");
                                    let fb = y.face(&sb, i).expect("face");
                                    p.normalize(&fa, &fb).expect("lower pairs are indexed")
                                })
                                .collect()
                        };
                        let name = format!("({};{})", x.render(&sa), y.render(&sb));
                        let thin = m > 0 && x.is_thin(&sa) && y.is_thin(&sb);
                        p.index.insert((sa.clone(), sb.clone()), CellId(cells.len()));
                        p.pairs.push((sa, sb));
                        cells.push(Cell { name, dim: m, thin, faces });
                    }
                }
            }
        }
    }
    let exceeds = x.max_dim().unwrap_or(0) + y.max_dim().unwrap_or(0) > cap;
    let truncated = x.truncated() || y.truncated() || (exceeds && !x.is_empty() && !y.is_empty());
    p.set = Arc::new(StratifiedSet::from_cells_unchecked(cap, cells).with_truncated(truncated));
    p
}

fn repeats(x: &Simplex) -> &[usize] {
    &x.word
}

impl Product {
    pub fn set(&self) -> &Arc<StratifiedSet> {
        &self.set
    }

    pub fn components(&self, c: CellId) -> &(Simplex, Simplex) {
        &self.pairs[c.0]
    }

    /// Normal form of the pair `(x, y)` of equal-dimensional simplices.
    pub fn pair(&self, x: &Simplex, y: &Simplex) -> Result<Simplex> {
        let (dx, dy) = (self.left.dim(x), self.right.dim(y));
        if dx != dy {
            return Err(Error::DimensionMismatch { expected: dx, found: dy });
        }
        self.normalize(x, y)
    }

    fn normalize(&self, x: &Simplex, y: &Simplex) -> Result<Simplex> {
        let common: Vec<usize> = repeats(x).iter().copied().filter(|j| repeats(y).contains(j)).collect();
        if common.is_empty() {
            return self.index.get(&(x.clone(), y.clone())).map(|&c| Simplex::cell(c)).ok_or_else(|| {
                Error::CapExceeded { requested: self.left.dim(x), cap: self.set.dim_cap() }
            });
        }
        let collapse = |s: &Simplex, set: &StratifiedSet| -> Simplex {
            let values = set.degeneracy_of(s);
            let kept: Vec<usize> = values
                .values()
                .iter()
                .enumerate()
                .filter(|(t, _)| *t == 0 || !common.contains(&(t - 1)))
                .map(|(_, &v)| v)
                .collect();
            let op = Operator::from_parts(kept.len() - 1, values.cod(), kept);
            Simplex { cell: s.cell, word: op.word_of() }
        };
        let (cx, cy) = (collapse(x, &self.left), collapse(y, &self.right));
        let cell = *self.index.get(&(cx.clone(), cy.clone())).ok_or_else(|| Error::CapExceeded {
            requested: self.left.dim(&cx),
            cap: self.set.dim_cap(),
        })?;
        Ok(Simplex { cell, word: common })
    }
}
