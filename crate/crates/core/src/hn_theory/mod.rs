//! Minute coweights, Hodge-Newton decomposability and the fixed point conditions.

mod classify;
mod coxeter;

pub use classify::*;
pub use coxeter::*;

use num_traits::Zero;
use serde::Serialize;

use crate::admissible::{adm_cap_kw, adm_spade, AdmFlavor};
use crate::affine_weyl::{Elt, NodeSet};
use crate::error::{Error, Result};
use crate::frobenius::{Frobenius, GroupInstance};
use crate::polyhedron::Polyhedron;
use crate::rational::{frac, q, QVec, Q};
use crate::sigma_conj::{b_g_mu_via_criterion, newton_vector, SigmaClass};

#[derive(Clone, Debug, Serialize)]
pub struct OrbitValue {
    pub orbit: Vec<usize>,
    #[serde(serialize_with = "crate::rational::ser_q")]
    pub value: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinuteReport {
    pub minute: bool,
    pub harris_taylor: bool,
    pub orbits: Vec<OrbitValue>,
}

/// `<mu, omega_O> + {<sigma(0), omega_O>}` for every sigma_0-orbit `O`.
pub fn minute_report(sigma: &Frobenius, mu: &[i64]) -> MinuteReport {
    let d = sigma.group().datum();
    let mu_q = QVec::from_ints(mu.iter().copied());
    let c = QVec::from_ints(sigma.sigma_of_zero().iter().copied());
    let orbits: Vec<OrbitValue> = sigma
        .sigma0_orbits()
        .into_iter()
        .map(|o| {
            let w = d.weight_orbit_sum(&o).expect("orbit nodes in range");
            let value = d.pair_weight(&mu_q, &w) + frac(d.pair_weight(&c, &w));
            OrbitValue { orbit: o, value }
        })
        .collect();
    MinuteReport {
        minute: orbits.iter().all(|o| o.value <= q(1)),
        harris_taylor: orbits.iter().all(|o| o.value < q(1)),
        orbits,
    }
}

pub fn is_minute(sigma: &Frobenius, mu: &[i64]) -> bool {
    minute_report(sigma, mu).minute
}

/// A standard Levi given by its finite nodes `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviSpec {
    pub j: Vec<usize>,
    pub sigma_stable: bool,
}

/// Minimal sigma_0-stable `J` witnessing Hodge-Newton decomposability of `c`.
pub fn is_hn_decomposable(inst: &GroupInstance, c: &SigmaClass) -> Result<Option<LeviSpec>> {
    if c.is_basic() {
        return Err(Error::Invalid("the basic class is not subject to decomposition".into()));
    }
    if !b_g_mu_via_criterion(inst).contains(c) {
        return Err(Error::Invalid(format!("{} is not in B(G, mu)", c.describe())));
    }
    Ok(hn_witness(inst, c))
}

fn hn_witness(inst: &GroupInstance, c: &SigmaClass) -> Option<LeviSpec> {
    let d = inst.datum();
    let r = d.rank;
    let defect = d.coroot_coords(&(&inst.mu_diamond() - &c.nu));
    if defect.iter().any(|x| *x < q(0)) {
        return None;
    }
    let mut j: Vec<bool> = (0..r).map(|i| c.nu[i].is_zero() || !defect[i].is_zero()).collect();
    let s0 = inst.sigma.sigma0();
    loop {
        let mut changed = false;
        for i in 0..r {
            if j[i] && !j[s0[i + 1] - 1] {
                j[s0[i + 1] - 1] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if j.iter().all(|&b| b) {
        return None;
    }
    Some(LeviSpec { j: (0..r).filter(|&i| j[i]).map(|i| i + 1).collect(), sigma_stable: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct FullyHnReport {
    pub fully_hn: bool,
    pub classes: usize,
    pub non_decomposable: Vec<SigmaClass>,
}

pub fn fully_hn_report(inst: &GroupInstance) -> FullyHnReport {
    let classes = b_g_mu_via_criterion(inst);
    let bad: Vec<SigmaClass> = classes
        .iter()
        .filter(|c| !c.is_basic() && hn_witness(inst, c).is_none())
        .cloned()
        .collect();
    FullyHnReport { fully_hn: bad.is_empty(), classes: classes.len(), non_decomposable: bad }
}

pub fn is_fully_hn(inst: &GroupInstance) -> bool {
    fully_hn_report(inst).fully_hn
}

/// Node permutation of `tau sigma` where `tau` is the Omega-part of `w`.
fn tau_sigma_perm(sigma: &Frobenius, w: &Elt) -> Vec<usize> {
    let g = sigma.group();
    let tau = &g.omega_elements()[g.omega_part(w)];
    let pt = g.node_permutation(tau);
    sigma.node_perm().iter().map(|&i| pt[i]).collect()
}

/// Smallest `tau sigma`-stable set containing the support of `w tau^{-1}`.
pub fn supp_sigma(sigma: &Frobenius, w: &Elt) -> NodeSet {
    let g = sigma.group();
    let (word, _) = g.reduced_word(w);
    let perm = tau_sigma_perm(sigma, w);
    let mut s: NodeSet = word.iter().map(|&i| i as usize).collect();
    loop {
        let next = s.union(&s.iter().map(|i| perm[i]).collect());
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Largest `K' in K` with `Ad(w) sigma (K') = K'`.
pub fn max_adapted_subset(sigma: &Frobenius, k: NodeSet, w: &Elt) -> NodeSet {
    let g = sigma.group();
    let winv = g.inverse(w);
    let image = |i: usize| g.simple_index(&g.mul_all([w, g.simple(sigma.node_perm()[i]), &winv]));
    let mut cur = k;
    loop {
        let bad = cur.iter().find(|&i| image(i).is_none_or(|j| !cur.contains(j)));
        match bad {
            Some(i) => cur.remove(i),
            None => return cur,
        }
    }
}

/// Exact fixed point of `w o sigma` in the closed base alcove.
pub fn fixed_point_in_closed_alcove(sigma: &Frobenius, w: &Elt) -> Option<QVec> {
    let g = sigma.group();
    let d = g.datum();
    let r = g.rank();
    let m = g.to_affine(w).compose(sigma.affine_map());
    let mut p = Polyhedron::new(r);
    for i in 0..r {
        let mut e = QVec::zeros(r);
        e[i] = q(1);
        p.geq(e, q(0));
        // (m - id) x = -trans
        let row = QVec((0..r).map(|j| q(m.lin[i * r + j] - i64::from(i == j))).collect());
        p.eq(row, q(-m.trans[i]));
    }
    let theta = QVec::from_ints(d.root(d.highest_root()).iter().copied());
    p.leq(theta, q(1));
    p.find_point()
}

/// Fixed point test computed twice: finiteness of `W_{supp_sigma(w)}` and
/// exact feasibility. Disagreement is an internal error.
pub fn has_fixed_point_in_closed_alcove(sigma: &Frobenius, w: &Elt) -> Result<bool> {
    let g = sigma.group();
    let comb = g.is_finite_parabolic(supp_sigma(sigma, w));
    let geom = fixed_point_in_closed_alcove(sigma, w).is_some();
    if comb != geom {
        return Err(Error::Internal(format!(
            "fixed point computations disagree for {} (support finite: {comb}, feasible: {geom})",
            g.format(w)
        )));
    }
    Ok(comb)
}

#[derive(Clone, Debug, Serialize)]
pub struct FcReport {
    pub flavor: AdmFlavor,
    pub holds: bool,
    pub central_elements: usize,
    pub failures: Vec<String>,
}

fn fc_over<'a>(inst: &GroupInstance, flavor: AdmFlavor, it: impl Iterator<Item = &'a Elt>) -> Result<FcReport> {
    let mut central = 0;
    let mut failures = Vec::new();
    for w in it {
        if !newton_vector(&inst.sigma, w).nu_bar.is_zero() {
            continue;
        }
        central += 1;
        if !has_fixed_point_in_closed_alcove(&inst.sigma, w)? {
            failures.push(inst.group.format(w));
        }
    }
    Ok(FcReport { flavor, holds: failures.is_empty(), central_elements: central, failures })
}

/// Every `w` in `Adm(mu) cap ^K W~` with central Newton point makes `w sigma` fix a point.
pub fn fc_condition(inst: &GroupInstance) -> Result<FcReport> {
    fc_over(inst, AdmFlavor::KMin, adm_cap_kw(inst).elements().iter())
}

pub fn fc_spade_condition(inst: &GroupInstance) -> Result<FcReport> {
    fc_over(inst, AdmFlavor::Spade, adm_spade(inst)?.elements().iter())
}
