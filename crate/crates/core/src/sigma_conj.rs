//! Newton vectors, Kottwitz points and the set `B(G, mu)`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine_weyl::{AffineWeyl, Elt};
use crate::frobenius::{Frobenius, GroupInstance};
use crate::rational::{frac, q, QMat, QVec, Q};
use crate::root_datum::{identity_mat, mat_mul, mat_vec};

/// Class of the Omega-part in the sigma-coinvariants, named by the smallest
/// node label `j` of a `tau_j` in the class (0 for the identity class).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct KottwitzPoint(pub usize);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SigmaClass {
    pub kappa: KottwitzPoint,
    pub nu: QVec,
}

impl SigmaClass {
    pub fn is_basic(&self) -> bool {
        self.nu.is_zero()
    }

    pub fn describe(&self) -> String {
        format!("(kappa=t{}, nu={})", self.kappa.0, self.nu)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonVector {
    pub nu: QVec,
    pub nu_bar: QVec,
}

/// Linear part and translation of the affine map `w o sigma`.
fn w_sigma(sigma: &Frobenius, w: &Elt) -> (Vec<i64>, Vec<i64>) {
    let g = sigma.group();
    let r = g.rank();
    let w0 = g.datum().weyl();
    let lin = mat_mul(w0.matrix(w.w), sigma.linear_part(), r);
    let wc = w0.act_int(w.w, sigma.sigma_of_zero());
    let trans = (0..r).map(|i| w.lam[i] + wc[i]).collect();
    (lin, trans)
}

fn linear_order(m: &[i64], r: usize) -> usize {
    let id = identity_mat(r);
    let mut cur = m.to_vec();
    let mut n = 1;
    while cur != id {
        cur = mat_mul(m, &cur, r);
        n += 1;
        assert!(n < 100_000, "linear part of infinite order");
    }
    n
}

/// `nu_w = lambda / n` where `(w sigma)^n = t^lambda`, using `n` times `multiple`.
pub fn newton_vector_with(sigma: &Frobenius, w: &Elt, multiple: usize) -> NewtonVector {
    let g = sigma.group();
    let r = g.rank();
    let (lin, b) = w_sigma(sigma, w);
    let n = linear_order(&lin, r) * multiple;
    let mut sum = vec![0i64; r];
    let mut lk = b.clone();
    for _ in 0..n {
        for i in 0..r {
            sum[i] += lk[i];
        }
        lk = mat_vec(&lin, &lk, r);
    }
    let nu = QVec(sum.iter().map(|&s| Q::new(s, n as i64)).collect());
    let (nu_bar, _) = g.datum().dominant_representative(&nu);
    NewtonVector { nu, nu_bar }
}

pub fn newton_vector(sigma: &Frobenius, w: &Elt) -> NewtonVector {
    newton_vector_with(sigma, w, 1)
}

/// Straightness through `<nu_bar, 2 rho> = l(w)`.
pub fn is_straight(sigma: &Frobenius, w: &Elt) -> bool {
    let g = sigma.group();
    let nv = newton_vector(sigma, w);
    g.datum().pair_two_rho(&nv.nu_bar) == q(g.length(w) as i64)
}

/// `w sigma(w) .. sigma^{m-1}(w)`, the W~-part of `(w sigma)^m`.
pub fn twisted_power(sigma: &Frobenius, w: &Elt, m: usize) -> Elt {
    let g = sigma.group();
    let mut acc = g.identity();
    let mut cur = w.clone();
    for _ in 0..m {
        acc = g.mul(&acc, &cur);
        cur = sigma.apply(&cur);
    }
    acc
}

/// Straightness through `l((w sigma)^m) = m l(w)` for `m = 1..=max_m`.
pub fn is_straight_by_powers(sigma: &Frobenius, w: &Elt, max_m: usize) -> bool {
    let g = sigma.group();
    let l = g.length(w);
    (1..=max_m).all(|m| g.length(&twisted_power(sigma, w, m)) == m * l)
}

/// Index of `sigma(tau)` for each Omega element.
fn sigma_on_omega(sigma: &Frobenius) -> Vec<usize> {
    let g = sigma.group();
    g.omega_elements().iter().map(|t| g.omega_part(&sigma.apply(t))).collect()
}

/// Omega-coinvariant class of an Omega index.
pub fn kottwitz_of_omega(sigma: &Frobenius, idx: usize) -> KottwitzPoint {
    let g = sigma.group();
    let om = g.omega_elements();
    let on = sigma_on_omega(sigma);
    // subgroup generated by tau sigma(tau)^{-1}
    let mut h: BTreeSet<usize> = BTreeSet::new();
    h.insert(0);
    let gens: Vec<usize> = (0..om.len())
        .map(|i| g.omega_part(&g.mul(&om[i], &g.inverse(&om[on[i]]))))
        .collect();
    loop {
        let mut grew = false;
        for &a in h.clone().iter() {
            for &b in &gens {
                if h.insert(g.omega_part(&g.mul(&om[a], &om[b]))) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let coset_nodes = h.iter().map(|&x| {
        let c = g.omega_part(&g.mul(&om[idx], &om[x]));
        g.omega_nodes()[c]
    });
    KottwitzPoint(coset_nodes.min().unwrap())
}

pub fn kottwitz(sigma: &Frobenius, w: &Elt) -> KottwitzPoint {
    kottwitz_of_omega(sigma, sigma.group().omega_part(w))
}

pub fn sigma_class(sigma: &Frobenius, w: &Elt) -> SigmaClass {
    SigmaClass { kappa: kottwitz(sigma, w), nu: newton_vector(sigma, w).nu_bar }
}

/// `mu^natural`, the Kottwitz point of `t^mu`.
pub fn mu_natural(inst: &GroupInstance) -> KottwitzPoint {
    kottwitz(&inst.sigma, &inst.group.translation(&inst.mu))
}

/// Classes of the sigma-straight elements of the given admissible set.
pub fn b_g_mu_via_straight<'a, I>(inst: &GroupInstance, adm: I) -> BTreeSet<SigmaClass>
where
    I: IntoIterator<Item = &'a Elt>,
{
    adm.into_iter()
        .filter(|w| is_straight(&inst.sigma, w))
        .map(|w| sigma_class(&inst.sigma, w))
        .collect()
}

/// `<v, omega_O>` as a row over coweight coordinates.
fn orbit_weight(g: &AffineWeyl, orbit: &[usize]) -> QVec {
    g.datum().weight_orbit_sum(orbit).expect("orbit nodes in range")
}

/// Enumerates `B(G, mu)` from the orbit-wise integrality and positivity criterion.
pub fn b_g_mu_via_criterion(inst: &GroupInstance) -> BTreeSet<SigmaClass> {
    let g = &inst.group;
    let sigma = &inst.sigma;
    let r = g.rank();
    let orbits = sigma.sigma0_orbits();
    let weights: Vec<QVec> = orbits.iter().map(|o| orbit_weight(g, o)).collect();
    let mu = inst.mu_q();
    let s0 = QVec::from_ints(sigma.sigma_of_zero().iter().copied());
    let kappa = mu_natural(inst);
    let mut out = BTreeSet::new();
    out.insert(SigmaClass { kappa, nu: QVec::zeros(r) });

    let m = orbits.len();
    for mask in 1u32..(1 << m) {
        let t: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        // M[o][o'] = <sum_{k in O'} omega_k^vee, omega_O>
        let n = t.len();
        let mut mat = QMat::zeros(n, n);
        for (a, &oa) in t.iter().enumerate() {
            for (b, &ob) in t.iter().enumerate() {
                let mut v = QVec::zeros(r);
                for &k in &orbits[ob] {
                    v[k - 1] = Q::one();
                }
                mat.set(a, b, v.dot(&weights[oa]));
            }
        }
        let inv = mat.inverse().expect("folded inverse Cartan block is invertible");
        let ranges: Vec<Vec<Q>> = t
            .iter()
            .map(|&o| {
                let f = frac((&mu + &s0).dot(&weights[o]));
                let upper = mu.dot(&weights[o]);
                let mut vals = Vec::new();
                let mut y = f;
                while y <= upper {
                    if y.is_positive() {
                        vals.push(y);
                    }
                    y += Q::one();
                }
                vals
            })
            .collect();
        if ranges.iter().any(Vec::is_empty) {
            continue;
        }
        for ys in ranges.iter().map(|v| v.iter().copied()).multi_cartesian_product() {
            let x = inv.apply(&QVec(ys));
            if !x.iter().all(Signed::is_positive) {
                continue;
            }
            let mut v = QVec::zeros(r);
            for (a, &o) in t.iter().enumerate() {
                for &k in &orbits[o] {
                    v[k - 1] = x[a];
                }
            }
            out.insert(SigmaClass { kappa, nu: v });
        }
    }
    out
}

/// `c1 <= c2`: equal Kottwitz points and `nu2 - nu1` a nonnegative sum of coroots.
pub fn leq_dominance(g: &AffineWeyl, c1: &SigmaClass, c2: &SigmaClass) -> bool {
    c1.kappa == c2.kappa && g.datum().dominance_leq(&c1.nu, &c2.nu)
}

pub fn is_basic(c: &SigmaClass) -> bool {
    c.is_basic()
}

/// Unique minimal and maximal elements, if they exist.
pub fn extremal_classes(g: &AffineWeyl, set: &BTreeSet<SigmaClass>) -> (Option<SigmaClass>, Option<SigmaClass>) {
    let mins: Vec<&SigmaClass> =
        set.iter().filter(|c| set.iter().all(|d| leq_dominance(g, c, d))).collect();
    let maxs: Vec<&SigmaClass> =
        set.iter().filter(|c| set.iter().all(|d| leq_dominance(g, d, c))).collect();
    (
        (mins.len() == 1).then(|| mins[0].clone()),
        (maxs.len() == 1).then(|| maxs[0].clone()),
    )
}

/// `x w sigma(x)^{-1}`.
pub fn sigma_conjugate(sigma: &Frobenius, x: &Elt, w: &Elt) -> Elt {
    let g = sigma.group();
    g.mul(&g.mul(x, w), &g.inverse(&sigma.apply(x)))
}

pub fn zero_q() -> Q {
    Q::zero()
}
