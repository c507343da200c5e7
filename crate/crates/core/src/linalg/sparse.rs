use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Scalar, Subspace};
use crate::error::{Error, Result};

/// Sparse rational vector keyed by coordinate index. Zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

type IntVec = BTreeMap<usize, BigInt>;

#[derive(Debug, Clone)]
struct Row {
    vec: IntVec,
    tag: IntVec,
}

/// Outcome of inserting a vector into a [`SparseEchelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    /// The vector enlarged the span; the new row has this pivot.
    Independent(usize),
    /// The vector was already in the span. The payload is the relation among
    /// tagged inputs that reduced it to zero (empty for untagged inserts).
    Dependent(SparseVec),
}

/// Semi-echelon basis of a subspace of a large coordinate space. Each row has
/// a distinct pivot (its lowest index) and integer primitive entries.
#[derive(Debug, Clone, Default)]
pub struct SparseEchelon {
    ambient_dim: usize,
    rows: BTreeMap<usize, Row>,
}

fn to_ints(v: &SparseVec) -> IntVec {
    let ints = super::to_primitive_ints(v.values());
    v.keys().copied().zip(ints).filter(|(_, x)| !x.is_zero()).collect()
}

fn to_rational(v: &IntVec) -> SparseVec {
    v.iter().map(|(&k, x)| (k, Scalar::from_integer(x.clone()))).collect()
}

/// `a*w - b*r` on sparse integer vectors.
fn combine(a: &BigInt, w: &IntVec, b: &BigInt, r: &IntVec) -> IntVec {
    let mut out = IntVec::new();
    for (&k, x) in w {
        out.insert(k, a * x);
    }
    for (&k, y) in r {
        let e = out.entry(k).or_insert_with(BigInt::zero);
        *e -= b * y;
        if e.is_zero() {
            out.remove(&k);
        }
    }
    out
}

fn joint_primitive(row: &mut Row) {
    let g = row.vec.values().chain(row.tag.values()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.vec.values_mut().chain(row.tag.values_mut()) {
        *x = &*x / &g;
    }
}

impl SparseEchelon {
    pub fn new(ambient_dim: usize) -> Self {
        SparseEchelon { ambient_dim, rows: BTreeMap::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        match v.keys().next_back() {
            Some(&k) if k >= self.ambient_dim => {
                Err(Error::DimensionMismatch { left: self.ambient_dim, right: k + 1 })
            }
            _ => Ok(()),
        }
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some((&lead, x)) = row.vec.iter().next() {
            let Some(pivot_row) = self.rows.get(&lead) else { break };
            let p = &pivot_row.vec[&lead];
            let g = p.gcd(x);
            let a = p / &g;
            let b = x / &g;
            row.vec = combine(&a, &row.vec, &b, &pivot_row.vec);
            row.tag = combine(&a, &row.tag, &b, &pivot_row.tag);
            joint_primitive(&mut row);
        }
        row
    }

    fn insert_row(&mut self, row: Row) -> Insertion {
        let mut row = self.reduce(row);
        let Some((&lead, x)) = row.vec.iter().next() else {
            let mut tag = row.tag;
            let flip = tag.values().next().is_some_and(|x| x.is_negative());
            if flip {
                tag.values_mut().for_each(|x| *x = -&*x);
            }
            return Insertion::Dependent(to_rational(&tag));
        };
        if x.is_negative() {
            row.vec.values_mut().chain(row.tag.values_mut()).for_each(|x| *x = -&*x);
        }
        self.rows.insert(lead, row);
        Insertion::Independent(lead)
    }

    /// Inserts `v` without tracking relations.
    pub fn insert(&mut self, v: &SparseVec) -> Result<Insertion> {
        self.check(v)?;
        Ok(self.insert_row(Row { vec: to_ints(v), tag: IntVec::new() }))
    }

    /// Inserts `v` labelled by `label`; a dependent result reports the relation
    /// among labels (coefficients of previously tagged inputs plus this one).
    pub fn insert_tagged(&mut self, v: &SparseVec, label: usize) -> Result<Insertion> {
        self.check(v)?;
        let lcm = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let vec = v.iter().map(|(&k, x)| (k, (x * &lcm).to_integer())).collect();
        let mut row = Row { vec, tag: IntVec::from([(label, lcm)]) };
        joint_primitive(&mut row);
        Ok(self.insert_row(row))
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        self.check(v)?;
        Ok(self.reduce(Row { vec: to_ints(v), tag: IntVec::new() }).vec.is_empty())
    }

    /// Pivot row as a rational vector (not reduced against other rows).
    pub fn row(&self, pivot: usize) -> Option<SparseVec> {
        self.rows.get(&pivot).map(|r| to_rational(&r.vec))
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduced row-echelon basis with unit pivots, ordered by pivot.
    pub fn canonical_basis(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut v = to_rational(&row.vec);
            let targets: Vec<usize> = v.keys().copied().filter(|k| *k != pivot && done.contains_key(k)).collect();
            for k in targets {
                let Some(f) = v.get(&k).cloned() else { continue };
                for (&j, y) in &done[&k] {
                    let e = v.entry(j).or_insert_with(Scalar::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        v.remove(&j);
                    }
                }
            }
            let lead = v[&pivot].clone();
            v.values_mut().for_each(|x| *x /= &lead);
            done.insert(pivot, v);
        }
        done.into_values().collect()
    }
}

/// Kernel of the linear map whose `j`-th column is `columns[j]`, optionally
/// modulo a fixed subspace `base`: the relations `t` with `sum t_j columns[j] in base`.
pub fn kernel_of_columns(base: Option<&SparseEchelon>, ambient_dim: usize, columns: &[SparseVec]) -> Result<Subspace> {
    let mut ech = match base {
        Some(b) => {
            if b.ambient_dim != ambient_dim {
                return Err(Error::DimensionMismatch { left: ambient_dim, right: b.ambient_dim });
            }
            b.clone()
        }
        None => SparseEchelon::new(ambient_dim),
    };
    let mut relations = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Insertion::Dependent(tag) = ech.insert_tagged(col, j)? {
            let mut dense = vec![Scalar::zero(); columns.len()];
            for (k, x) in tag {
                dense[k] = x;
            }
            relations.push(dense);
        }
    }
    Subspace::from_spanning(columns.len(), &relations)
}

#[cfg(test)]
mod tests {
    use super::super::{kernel, scalar, ExactMatrix};
    use super::*;
    use proptest::prelude::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().filter(|(_, x)| *x != 0).map(|&(k, x)| (k, scalar(x))).collect()
    }

    #[test]
    fn insertion_and_membership() {
        let mut e = SparseEchelon::new(4);
        assert_eq!(e.insert(&sv(&[(0, 2), (1, 4)])).unwrap(), Insertion::Independent(0));
        assert_eq!(e.insert(&sv(&[(0, 1), (2, 1)])).unwrap(), Insertion::Independent(1));
        assert!(e.contains(&sv(&[(0, 3), (1, 4), (2, 1)])).unwrap());
        assert!(!e.contains(&sv(&[(3, 1)])).unwrap());
        assert!(e.contains(&SparseVec::new()).unwrap());
        assert!(matches!(e.insert(&sv(&[(1, 2), (2, -1)])).unwrap(), Insertion::Dependent(_)));
        assert_eq!(e.dim(), 2);
        assert!(e.insert(&sv(&[(4, 1)])).is_err());
    }

    #[test]
    fn canonical_basis_is_rref() {
        let mut e = SparseEchelon::new(3);
        e.insert(&sv(&[(0, 1), (1, 1), (2, 1)])).unwrap();
        e.insert(&sv(&[(1, 2), (2, 4)])).unwrap();
        let b = e.canonical_basis();
        assert_eq!(b, vec![sv(&[(0, 1), (2, -1)]), sv(&[(1, 1), (2, 2)])]);
    }

    #[test]
    fn tagged_relations() {
        let cols = vec![sv(&[(0, 1)]), sv(&[(1, 3)]), sv(&[(0, 2), (1, -6)])];
        let k = kernel_of_columns(None, 2, &cols).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[scalar(-2), scalar(2), scalar(1)]).unwrap());

        let mut base = SparseEchelon::new(2);
        base.insert(&sv(&[(1, 1)])).unwrap();
        let k = kernel_of_columns(Some(&base), 2, &cols).unwrap();
        assert_eq!(k.dim(), 2);
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    }

    proptest! {
        #[test]
        fn agrees_with_dense(rows in arb_matrix()) {
            let cols = rows[0].len();
            let mut e = SparseEchelon::new(cols);
            for r in &rows {
                e.insert(&sv(&r.iter().copied().enumerate().collect::<Vec<_>>())).unwrap();
            }
            let dense_rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| scalar(x)).collect()).collect();
            let s = Subspace::from_spanning(cols, &dense_rows).unwrap();
            let from_sparse: Vec<Vec<Scalar>> = e.canonical_basis().iter().map(|v| {
                let mut d = vec![Scalar::zero(); cols];
                for (&k, x) in v { d[k] = x.clone(); }
                d
            }).collect();
            prop_assert_eq!(s.basis(), &from_sparse[..]);

            // kernel of the transpose via tagged columns
            let as_cols: Vec<SparseVec> = rows.iter().map(|r| sv(&r.iter().copied().enumerate().collect::<Vec<_>>())).collect();
            let k = kernel_of_columns(None, cols, &as_cols).unwrap();
            let m = ExactMatrix::from_rows(cols, dense_rows).unwrap().transpose();
            prop_assert_eq!(k, kernel(&m));
        }
    }
}
