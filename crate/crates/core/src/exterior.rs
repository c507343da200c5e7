//! Sparse multivectors in `wedge^k m`, the Leibniz action of the Levi,
//! submodule generation and Schur-functor dimension counts.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{gl_off_diagonal, levi_action_on_m, GlElement, TangentModel};
use crate::linalg::{Insertion, Scalar, SparseEchelon, SparseVec};
use crate::partitions::{Ambient, Partition};

pub const DEFAULT_MAX_WEDGE_DIM: u128 = 20_000;

/// Element of `wedge^k m`, keyed by strictly increasing tuples of cell indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    k: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Multivector {
    pub fn zero(k: usize) -> Self {
        Multivector { k, terms: BTreeMap::new() }
    }

    /// A single basis wedge; the factors are sorted, picking up the permutation sign.
    pub fn basis(factors: &[usize], coeff: Scalar) -> Self {
        let mut w = Self::zero(factors.len());
        if let Some((key, sign)) = sort_with_sign(factors) {
            w.add_term(key, if sign { -coeff } else { coeff });
        }
        w
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        debug_assert_eq!(key.len(), self.k);
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(key.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Multivector {
        let mut out = Self::zero(self.k);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * s);
        }
        out
    }

    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let mut out = Self::zero(self.k + other.k);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let factors: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((key, sign)) = sort_with_sign(&factors) {
                    let c = x * y;
                    out.add_term(key, if sign { -c } else { c });
                }
            }
        }
        out
    }

    pub fn from_vector(v: &SparseVec) -> Multivector {
        let mut out = Self::zero(1);
        for (&k, x) in v {
            out.add_term(vec![k], x.clone());
        }
        out
    }

    /// Coordinates in `wedge^k` of an `n`-dimensional space, by colex rank.
    pub fn to_sparse(&self, binom: &Binomials) -> SparseVec {
        self.terms.iter().map(|(key, c)| (binom.rank(key), c.clone())).collect()
    }

    pub fn from_sparse(k: usize, v: &SparseVec, binom: &Binomials) -> Multivector {
        let mut out = Self::zero(k);
        for (&r, c) in v {
            out.add_term(binom.unrank(r, k), c.clone());
        }
        out
    }
}

/// Sorts distinct indices, returning whether the permutation was odd; `None` on a repeat.
fn sort_with_sign(factors: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = factors.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, odd))
}

/// Binomial table for ranking k-subsets of `0..n` in colex order.
#[derive(Debug, Clone)]
pub struct Binomials {
    table: Vec<Vec<u128>>,
}

impl Binomials {
    pub fn new(n: usize) -> Self {
        let mut table = vec![vec![0u128; n + 2]; n + 1];
        for i in 0..=n {
            table[i][0] = 1;
            for j in 1..=i {
                table[i][j] = table[i - 1][j - 1].saturating_add(if j < i { table[i - 1][j] } else { 0 });
            }
        }
        Binomials { table }
    }

    pub fn get(&self, n: usize, k: usize) -> u128 {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }

    pub fn rank(&self, key: &[usize]) -> usize {
        key.iter().enumerate().map(|(t, &s)| self.get(s, t + 1) as usize).sum()
    }

    pub fn unrank(&self, mut r: usize, k: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for t in (0..k).rev() {
            let mut s = t;
            while self.get(s + 1, t + 1) as usize <= r {
                s += 1;
            }
            r -= self.get(s, t + 1) as usize;
            out[t] = s;
        }
        out
    }
}

fn checked_wedge_dim(mdim: usize, k: usize, cap: u128) -> Result<Binomials> {
    let binom = Binomials::new(mdim);
    let size = binom.get(mdim, k);
    if size > cap {
        return Err(Error::ResourceExceeded { what: format!("dim wedge^{k} of a {mdim}-dimensional space"), size, cap });
    }
    Ok(binom)
}

/// `v_1 ^ ... ^ v_k` for the cells of `n_a` in canonical order.
pub fn top_wedge(model: &TangentModel) -> Result<Multivector> {
    if model.k() == 0 {
        return Err(Error::DegenerateK);
    }
    let amb = model.ambient();
    let key: Vec<usize> = model.na_cells().iter().map(|c| c.index(amb)).collect();
    Ok(Multivector::basis(&key, Scalar::one()))
}

/// Leibniz extension of a linear map on `m`, given by the images of basis cells.
pub fn leibniz(w: &Multivector, image: impl Fn(usize) -> Result<SparseVec>) -> Result<Multivector> {
    let mut out = Multivector::zero(w.k);
    let mut cache: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (key, c) in &w.terms {
        for t in 0..key.len() {
            let img = match cache.get(&key[t]) {
                Some(v) => v.clone(),
                None => {
                    let v = image(key[t])?;
                    cache.insert(key[t], v.clone());
                    v
                }
            };
            for (cp, x) in img {
                let mut factors = key.clone();
                factors[t] = cp;
                if let Some((sorted, odd)) = sort_with_sign(&factors) {
                    let coeff = c * x;
                    out.add_term(sorted, if odd { -coeff } else { coeff });
                }
            }
        }
    }
    Ok(out)
}

/// The derivation action of a block-diagonal `X` on `wedge^k m`.
pub fn derivation_action(ambient: Ambient, x: &GlElement, w: &Multivector) -> Result<Multivector> {
    leibniz(w, |idx| levi_action_on_m(ambient, x, &SparseVec::from([(idx, Scalar::one())])))
}

/// `phi^k(v_1 ^ ... ^ v_k) = sum_s v_1 ^ ... ^ phi(v_s) ^ ... ^ v_k`, lifting
/// `m/n_a` to the span of the complement cells.
pub fn phi_k(phi: &SparseVec, model: &TangentModel) -> Result<Multivector> {
    let images: Vec<SparseVec> = (0..model.k()).map(|s| model.hom_apply(phi, s)).collect();
    phi_k_from_images(model, &images)
}

/// As [`phi_k`] but with arbitrary lifts `images[s]` of `phi(v_s)` in `m`.
pub fn phi_k_from_images(model: &TangentModel, images: &[SparseVec]) -> Result<Multivector> {
    let top = top_wedge(model)?;
    let amb = model.ambient();
    leibniz(&top, |idx| {
        let s = model.na_position(idx).expect("top wedge factors lie in n_a");
        debug_assert_eq!(model.na_cells()[s].index(amb), idx);
        Ok(images[s].clone())
    })
}

/// A Levi-stable subspace of `wedge^k m` together with its label.
#[derive(Debug, Clone)]
pub struct SchurModule {
    pub k: usize,
    pub label: Partition,
    binom: Binomials,
    echelon: SparseEchelon,
}

impl SchurModule {
    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient_dim()
    }

    pub fn contains(&self, w: &Multivector) -> Result<bool> {
        if w.k != self.k {
            return Err(Error::DimensionMismatch { left: self.k, right: w.k });
        }
        self.echelon.contains(&w.to_sparse(&self.binom))
    }

    pub fn echelon(&self) -> &SparseEchelon {
        &self.echelon
    }

    pub fn binomials(&self) -> &Binomials {
        &self.binom
    }

    /// Canonical reduced basis, as multivectors.
    pub fn basis(&self) -> Vec<Multivector> {
        self.echelon.canonical_basis().iter().map(|v| Multivector::from_sparse(self.k, v, &self.binom)).collect()
    }
}

/// Smallest subspace containing `seed` and stable under every generator.
pub fn generate_submodule(
    ambient: Ambient,
    seed: &Multivector,
    generators: &[GlElement],
    label: Partition,
    cap: u128,
) -> Result<SchurModule> {
    let k = seed.k;
    let binom = checked_wedge_dim(ambient.dim(), k, cap)?;
    let mut echelon = SparseEchelon::new(binom.get(ambient.dim(), k) as usize);
    let mut queue = VecDeque::new();
    if let Insertion::Independent(_) = echelon.insert(&seed.to_sparse(&binom))? {
        queue.push_back(seed.clone());
    }
    while let Some(w) = queue.pop_front() {
        for x in generators {
            let y = derivation_action(ambient, x, &w)?;
            if y.is_zero() {
                continue;
            }
            if let Insertion::Independent(_) = echelon.insert(&y.to_sparse(&binom))? {
                queue.push_back(y);
            }
        }
    }
    Ok(SchurModule { k, label, binom, echelon })
}

/// `I_a`: the module generated by the top wedge of `n_a` under `gl(E) + gl(Q)`.
pub fn build_ia(model: &TangentModel, cap: u128) -> Result<SchurModule> {
    let amb = model.ambient();
    let seed = top_wedge(model)?;
    generate_submodule(amb, &seed, &gl_off_diagonal(amb), model.partition().dual(), cap)
}

/// Whether `w` lies in `I_a`. The line `wedge^k n_a` is the generating seed, so
/// plain membership covers the lift ambiguity of [`phi_k`].
pub fn membership_in_ia(w: &Multivector, ia: &SchurModule, model: &TangentModel) -> Result<bool> {
    debug_assert!(ia.contains(&top_wedge(model)?)?);
    ia.contains(w)
}

/// `dim S_lambda(C^d)` by the hook-content formula.
pub fn schur_dim(lambda: &[usize], d: usize) -> Result<BigUint> {
    let rows = lambda.iter().filter(|&&x| x > 0).count();
    if rows > d {
        return Err(Error::TooManyRows { rows, dim: d });
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &len) in lambda.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&x| x > j).count();
            num *= BigUint::from(d + j - i);
            den *= BigUint::from(arm + leg + 1);
        }
    }
    Ok(num / den)
}

/// Expected `dim I_a = dim S_{a*}(E*) * dim S_{(a*)'}(Q)`.
pub fn expected_ia_dim(a: &Partition) -> BigUint {
    let d = a.dual();
    let amb = a.ambient();
    schur_dim(d.parts(), amb.m()).unwrap() * schur_dim(d.conjugate().parts(), amb.c()).unwrap()
}

/// Cauchy's identity in degree `k`: `sum_{|b|=k} dim S_b(C^m) dim S_{b'}(C^c) = C(mc, k)`.
pub fn cauchy_check(m: usize, c: usize, k: usize) -> bool {
    let Ok(amb) = Ambient::new(m, m + c) else { return false };
    let total: BigUint = crate::partitions::enumerate_box(amb, crate::partitions::CodimFilter::exactly(k))
        .map(|b| schur_dim(b.parts(), m).unwrap() * schur_dim(b.conjugate().parts(), c).unwrap())
        .sum();
    total == BigUint::from(Binomials::new(m * c).get(m * c, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;
    use crate::liealg::Cell;

    fn p(m: usize, n: usize, parts: &[usize]) -> Partition {
        Partition::validate(m, n, parts).unwrap()
    }

    #[test]
    fn ranking_roundtrip() {
        let b = Binomials::new(7);
        for k in 0..=7 {
            let total = b.get(7, k) as usize;
            let mut seen = vec![false; total];
            for r in 0..total {
                let key = b.unrank(r, k);
                assert!(key.windows(2).all(|w| w[0] < w[1]) && key.iter().all(|&s| s < 7));
                assert_eq!(b.rank(&key), r);
                seen[r] = true;
            }
            assert!(seen.into_iter().all(|x| x));
        }
    }

    #[test]
    fn sign_of_sorting() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0, 2]), Some((vec![0, 1, 2], true)));
        assert_eq!(sort_with_sign(&[1, 0, 1]), None);
    }

    #[test]
    fn top_wedge_examples() {
        let t = TangentModel::new(&p(3, 5, &[2, 2, 0])).unwrap();
        let amb = t.ambient();
        let w = top_wedge(&t).unwrap();
        let key = vec![Cell::new(3, 1).index(amb), Cell::new(3, 2).index(amb)];
        assert_eq!(w.terms(), &BTreeMap::from([(key, scalar(1))]));

        let t = TangentModel::new(&p(2, 4, &[0, 0])).unwrap();
        assert_eq!(top_wedge(&t).unwrap().terms().keys().next().unwrap(), &vec![0, 1, 2, 3]);

        let t = TangentModel::new(&p(2, 5, &[2, 2])).unwrap();
        let amb = t.ambient();
        let key = vec![Cell::new(1, 1).index(amb), Cell::new(2, 1).index(amb)];
        assert_eq!(top_wedge(&t).unwrap().terms().keys().next().unwrap(), &key);

        let t = TangentModel::new(&p(2, 4, &[2, 2])).unwrap();
        assert_eq!(top_wedge(&t), Err(Error::DegenerateK));
    }

    #[test]
    fn derivation_examples() {
        let amb = Ambient::new(2, 4).unwrap();
        let x = GlElement::elementary(4, 4, 3).add(&GlElement::elementary(4, 1, 2));
        let v = SparseVec::from([(1, scalar(2)), (2, scalar(-1))]);
        let w = Multivector::from_vector(&v);
        assert_eq!(derivation_action(amb, &x, &w).unwrap(), Multivector::from_vector(&levi_action_on_m(amb, &x, &v).unwrap()));

        // trace of X on m: E_{1,1} acts by -1 on the c cells of column 1
        let full = Multivector::basis(&[0, 1, 2, 3], scalar(1));
        let x = GlElement::elementary(4, 1, 1).add(&GlElement::elementary(4, 3, 3).scale(&scalar(5)));
        assert_eq!(derivation_action(amb, &x, &full).unwrap(), full.scale(&scalar(-2 + 10)));

        let x11 = Cell::new(1, 1).index(amb);
        let x12 = Cell::new(1, 2).index(amb);
        let w = Multivector::basis(&[x11, x12], scalar(1));
        assert!(derivation_action(amb, &GlElement::elementary(4, 4, 3), &w).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule_on_products() {
        let amb = Ambient::new(2, 5).unwrap();
        let gens: Vec<GlElement> = gl_off_diagonal(amb);
        let u = Multivector::basis(&[0, 3], scalar(1)).add(&Multivector::basis(&[1, 5], scalar(-2)));
        let v = Multivector::basis(&[2], scalar(3)).add(&Multivector::basis(&[4], scalar(1)));
        for x in gens.iter().chain([GlElement::elementary(5, 1, 1)].iter()) {
            let lhs = derivation_action(amb, x, &u.wedge(&v)).unwrap();
            let rhs = derivation_action(amb, x, &u).unwrap().wedge(&v).add(&u.wedge(&derivation_action(amb, x, &v).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schur_dim_examples() {
        assert_eq!(schur_dim(&[1], 3).unwrap(), BigUint::from(3u32));
        assert_eq!(schur_dim(&[2], 3).unwrap(), BigUint::from(6u32));
        assert_eq!(schur_dim(&[1, 1], 2).unwrap(), BigUint::from(1u32));
        assert_eq!(schur_dim(&[1, 1, 1], 2), Err(Error::TooManyRows { rows: 3, dim: 2 }));
        assert_eq!(schur_dim(&[], 4).unwrap(), BigUint::from(1u32));
        // regression value, agreed with the tableau count in tests/oracles.rs
        assert_eq!(schur_dim(&[4, 4, 2, 2], 4).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn cauchy_examples() {
        assert!(cauchy_check(2, 2, 4));
        assert!(cauchy_check(2, 2, 2));
        for k in 0..=9 {
            assert!(cauchy_check(3, 3, k));
        }
    }

    #[test]
    fn submodule_examples() {
        let amb = Ambient::new(2, 4).unwrap();
        let full = Multivector::basis(&[0, 1, 2, 3], scalar(1));
        let m = generate_submodule(amb, &full, &gl_off_diagonal(amb), p(2, 4, &[0, 0]), DEFAULT_MAX_WEDGE_DIM).unwrap();
        assert_eq!(m.dim(), 1);

        for (a, expect) in [(p(2, 5, &[2, 2]), 6usize), (p(3, 5, &[2, 2, 0]), 6)] {
            let t = TangentModel::new(&a).unwrap();
            let ia = build_ia(&t, DEFAULT_MAX_WEDGE_DIM).unwrap();
            assert_eq!(ia.dim(), expect);
            assert_eq!(BigUint::from(expect), expected_ia_dim(&a));
        }
    }

    #[test]
    fn generation_is_order_independent_and_closed() {
        let a = p(3, 6, &[2, 1, 0]);
        let t = TangentModel::new(&a).unwrap();
        let amb = t.ambient();
        let seed = top_wedge(&t).unwrap();
        let mut gens = gl_off_diagonal(amb);
        let m1 = generate_submodule(amb, &seed, &gens, a.dual(), DEFAULT_MAX_WEDGE_DIM).unwrap();
        gens.reverse();
        gens.rotate_left(5);
        let m2 = generate_submodule(amb, &seed, &gens, a.dual(), DEFAULT_MAX_WEDGE_DIM).unwrap();
        assert_eq!(m1.echelon().canonical_basis(), m2.echelon().canonical_basis());
        assert_eq!(BigUint::from(m1.dim()), expected_ia_dim(&a));
        let all: Vec<GlElement> = gens.into_iter().chain(t.cartan_generators()).collect();
        for w in m1.basis() {
            for x in &all {
                assert!(m1.contains(&derivation_action(amb, x, &w).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn phi_k_examples() {
        let t = TangentModel::new(&p(3, 5, &[2, 2, 0])).unwrap();
        let amb = t.ambient();
        assert!(phi_k(&SparseVec::new(), &t).unwrap().is_zero());
        let idx = |i, q| Cell::new(i, q).index(amb);
        let u = |i, q| t.quotient_position(idx(i, q)).unwrap();
        let phi = SparseVec::from([(t.hom_index(0, u(1, 1)), scalar(1)), (t.hom_index(1, u(1, 2)), scalar(1))]);
        let expected = Multivector::basis(&[idx(1, 1), idx(3, 2)], scalar(1))
            .add(&Multivector::basis(&[idx(3, 1), idx(1, 2)], scalar(1)));
        assert_eq!(phi_k(&phi, &t).unwrap(), expected);

        let t1 = TangentModel::new(&p(2, 4, &[2, 1])).unwrap();
        assert_eq!(t1.k(), 1);
        let phi = SparseVec::from([(t1.hom_index(0, 1), scalar(4))]);
        let expected = Multivector::from_vector(&t1.hom_apply(&phi, 0));
        assert_eq!(phi_k(&phi, &t1).unwrap(), expected);
    }

    #[test]
    fn resource_cap() {
        let t = TangentModel::new(&p(4, 10, &[6, 4, 2, 2])).unwrap();
        assert!(matches!(build_ia(&t, DEFAULT_MAX_WEDGE_DIM), Err(Error::ResourceExceeded { .. })));
    }
}
