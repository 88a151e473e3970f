//! Admissible sets `Adm(mu)` and their K-variants.

use std::collections::HashSet;

use serde::Serialize;

use crate::affine_weyl::{AffineWeyl, Elt, NodeSet};
use crate::error::Result;
use crate::frobenius::GroupInstance;

/// Cap on `|W_K|` when enumerating parabolic subgroups.
pub const PARABOLIC_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmFlavor {
    Plain,
    KDouble,
    KMin,
    Spade,
}

#[derive(Clone, Debug)]
pub struct AdmSet {
    pub flavor: AdmFlavor,
    elements: Vec<Elt>,
    set: HashSet<Elt>,
}

impl AdmSet {
    fn new(g: &AffineWeyl, flavor: AdmFlavor, set: HashSet<Elt>) -> Self {
        let elements = g.sorted(set.iter().cloned());
        AdmSet { flavor, elements, set }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Elt) -> bool {
        self.set.contains(x)
    }

    /// Elements sorted by length, then by their rendering.
    pub fn elements(&self) -> &[Elt] {
        &self.elements
    }

    pub fn as_set(&self) -> &HashSet<Elt> {
        &self.set
    }
}

/// `{w : w <= t^{x mu} for some x in W0}`.
pub fn adm_of(g: &AffineWeyl, mu: &[i64]) -> HashSet<Elt> {
    let mut out = HashSet::new();
    for lam in g.orbit(mu) {
        out.extend(g.ideal_subword(&g.translation(&lam)));
    }
    out
}

pub fn adm(inst: &GroupInstance) -> AdmSet {
    AdmSet::new(&inst.group, AdmFlavor::Plain, adm_of(&inst.group, &inst.mu))
}

/// `Adm(mu) cap ^K W~`.
pub fn adm_cap_kw(inst: &GroupInstance) -> AdmSet {
    let g = &inst.group;
    let set = adm_of(g, &inst.mu)
        .into_iter()
        .filter(|w| g.is_min_in_left_coset(inst.k, w))
        .collect();
    AdmSet::new(g, AdmFlavor::KMin, set)
}

/// `W_K Adm(mu) W_K`.
pub fn adm_k_double_of(g: &AffineWeyl, mu: &[i64], k: NodeSet) -> Result<HashSet<Elt>> {
    let wk = g.parabolic_elements(k, PARABOLIC_CAP)?;
    let base = adm_of(g, mu);
    let mut left = HashSet::new();
    for u in &wk {
        for w in &base {
            left.insert(g.mul(u, w));
        }
    }
    let mut out = HashSet::new();
    for w in &left {
        for u in &wk {
            out.insert(g.mul(w, u));
        }
    }
    Ok(out)
}

pub fn adm_k_double(inst: &GroupInstance) -> Result<AdmSet> {
    Ok(AdmSet::new(&inst.group, AdmFlavor::KDouble, adm_k_double_of(&inst.group, &inst.mu, inst.k)?))
}

/// `union over lambda in W0 mu of (^K W~ cap t^lambda W_K)`.
pub fn adm_spade_of(g: &AffineWeyl, mu: &[i64], k: NodeSet) -> Result<HashSet<Elt>> {
    let wk = g.parabolic_elements(k, PARABOLIC_CAP)?;
    let mut out = HashSet::new();
    for lam in g.orbit(mu) {
        let t = g.translation(&lam);
        for u in &wk {
            let x = g.mul(&t, u);
            if g.is_min_in_left_coset(k, &x) {
                out.insert(x);
            }
        }
    }
    Ok(out)
}

pub fn adm_spade(inst: &GroupInstance) -> Result<AdmSet> {
    Ok(AdmSet::new(&inst.group, AdmFlavor::Spade, adm_spade_of(&inst.group, &inst.mu, inst.k)?))
}

/// Compares `Adm^K(l1) Adm^K(l2)` with `Adm^K(l1 + l2)` as sets.
pub fn verify_additivity(g: &AffineWeyl, l1: &[i64], l2: &[i64], k: NodeSet) -> Result<bool> {
    let a = adm_k_double_of(g, l1, k)?;
    let b = adm_k_double_of(g, l2, k)?;
    let sum: Vec<i64> = l1.iter().zip(l2).map(|(x, y)| x + y).collect();
    let c = adm_k_double_of(g, &sum, k)?;
    let mut prod = HashSet::new();
    for x in &a {
        for y in &b {
            prod.insert(g.mul(x, y));
        }
    }
    Ok(prod == c)
}

/// Every element of `^K Adm(l1 + l2)_spade` factors through the two spade sets.
pub fn verify_weak_additivity_spade(g: &AffineWeyl, l1: &[i64], l2: &[i64], k: NodeSet) -> Result<bool> {
    let a = adm_spade_of(g, l1, k)?;
    let b = adm_spade_of(g, l2, k)?;
    let sum: Vec<i64> = l1.iter().zip(l2).map(|(x, y)| x + y).collect();
    let c = adm_spade_of(g, &sum, k)?;
    Ok(c.iter().all(|w| a.iter().any(|x| b.contains(&g.mul(&g.inverse(x), w)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::Frobenius;
    use crate::root_datum::{CartanType, RootDatum};
    use std::sync::Arc;

    fn inst(t: CartanType, r: usize, mu: &[i64], k: &[usize]) -> GroupInstance {
        let g = Arc::new(AffineWeyl::new(Arc::new(RootDatum::new(t, r).unwrap())).unwrap());
        let s = Arc::new(Frobenius::identity(g));
        GroupInstance::new(s, mu, k.iter().copied().collect()).unwrap()
    }

    #[test]
    fn figure_two_counts() {
        let i = inst(CartanType::C, 2, &[0, 1], &[1]);
        assert_eq!(adm(&i).len(), 13);
        assert_eq!(adm_cap_kw(&i).len(), 9);
        assert_eq!(adm_spade(&i).unwrap().len(), 4);
    }

    #[test]
    fn small_counts() {
        assert_eq!(adm(&inst(CartanType::A, 1, &[1], &[])).len(), 3);
        assert_eq!(adm(&inst(CartanType::A, 2, &[1, 0], &[])).len(), 7);
        assert_eq!(adm(&inst(CartanType::A, 2, &[2, 0], &[])).len(), 19);
        let i = inst(CartanType::A, 1, &[1], &[1]);
        let kmin = adm_cap_kw(&i);
        assert_eq!(kmin.len(), 2);
        // brute force: filter by coset representatives
        let brute: HashSet<Elt> = adm(&i)
            .elements()
            .iter()
            .filter(|w| i.group.min_coset_rep(i.k, w) == **w)
            .cloned()
            .collect();
        assert_eq!(&brute, kmin.as_set());
    }

    #[test]
    fn spade_subsets() {
        for (t, r, mu, k) in [
            (CartanType::C, 2, vec![0, 1], vec![1]),
            (CartanType::A, 2, vec![2, 0], vec![1, 2]),
            (CartanType::A, 3, vec![0, 1, 0], vec![0, 2]),
        ] {
            let i = inst(t, r, &mu, &k);
            let a = adm(&i);
            let sp = adm_spade(&i).unwrap();
            for w in sp.elements() {
                assert!(a.contains(w));
                assert!(i.group.is_min_in_left_coset(i.k, w));
            }
            let e = i.with_k(NodeSet::empty()).unwrap();
            let sp0 = adm_spade(&e).unwrap();
            let trans: HashSet<Elt> = i.group.orbit(&mu).iter().map(|l| i.group.translation(l)).collect();
            assert_eq!(sp0.as_set(), &trans);
        }
    }

    #[test]
    fn downward_closed_and_projection_consistent() {
        let i = inst(CartanType::C, 2, &[1, 1], &[0]);
        let a = adm(&i);
        for w in a.elements() {
            for x in i.group.ideal_bfs(w) {
                assert!(a.contains(&x));
            }
            assert!(a.contains(&i.group.min_coset_rep(i.k, w)));
        }
    }

    #[test]
    fn additivity_examples() {
        let i = inst(CartanType::A, 2, &[1, 0], &[]);
        for k in [vec![], vec![0], vec![1], vec![1, 2]] {
            let k: NodeSet = k.into_iter().collect();
            assert!(verify_additivity(&i.group, &[1, 0], &[1, 0], k).unwrap());
            assert!(verify_weak_additivity_spade(&i.group, &[1, 0], &[1, 0], k).unwrap());
            assert!(verify_additivity(&i.group, &[1, 0], &[0, 0], k).unwrap());
        }
        let c = inst(CartanType::C, 2, &[0, 1], &[1]);
        assert!(verify_additivity(&c.group, &[0, 1], &[0, 1], c.k).unwrap());
        assert!(verify_weak_additivity_spade(&c.group, &[0, 1], &[0, 1], c.k).unwrap());
    }
}
