//! Root systems attached to `K`, sigma-Coxeter elements and permissible triples.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use crate::admissible::adm_spade_of;
use crate::affine_weyl::{AffineWeyl, Elt, NodeSet};
use crate::error::{Error, Result};
use crate::frobenius::{Frobenius, GroupInstance};
use crate::rational::{q, solve_affine, QMat, QVec, Q};
use crate::sigma_conj::newton_vector;

use super::{build_group, fixed_point_in_closed_alcove, has_fixed_point_in_closed_alcove};
use crate::root_datum::CartanType;

/// Root index of `alpha_i` for `i >= 1`, of `-theta` for `i = 0`.
pub fn underline_root(g: &AffineWeyl, i: usize) -> usize {
    let d = g.datum();
    if i == 0 {
        d.negate_root(d.highest_root())
    } else {
        d.simple_root(i)
    }
}

/// Connected components of `k` in the affine diagram, each sorted.
pub fn components(g: &AffineWeyl, k: NodeSet) -> Vec<NodeSet> {
    let mut left = k;
    let mut out = Vec::new();
    loop {
        let Some(start) = left.iter().next() else { break };
        let mut comp = NodeSet::empty();
        let mut queue = VecDeque::from([start]);
        comp.insert(start);
        while let Some(a) = queue.pop_front() {
            for b in left.iter() {
                if !comp.contains(b) && g.adjacent(a, b) {
                    comp.insert(b);
                    queue.push_back(b);
                }
            }
        }
        for x in comp.iter() {
            left.remove(x);
        }
        out.push(comp);
    }
    out
}

/// The finite root system spanned by the `alpha_i` (`i` in `K`), with `alpha_0 = -theta`.
#[derive(Clone, Debug)]
pub struct UnderlineRootSystem {
    pub k: NodeSet,
    pub nodes: Vec<usize>,
    pub simple: Vec<usize>,
    /// Root indices of the positive system, with coefficients on `nodes`.
    pub positive: Vec<(usize, Vec<i64>)>,
    pub components: Vec<NodeSet>,
    /// Sum of the highest roots of the components, in simple-root coordinates.
    pub theta_k: Vec<i64>,
    pub e_k: QVec,
    /// `omega_{j,K}` in simple-root coordinates, indexed like `nodes`.
    pub fundamental_weights: Vec<QVec>,
}

impl UnderlineRootSystem {
    pub fn new(g: &AffineWeyl, k: NodeSet) -> Result<Self> {
        if !g.is_finite_parabolic(k) {
            return Err(Error::Invalid(format!("W_K is infinite for K = {k:?}")));
        }
        let d = g.datum();
        let r = g.rank();
        let nodes = k.to_vec();
        let simple: Vec<usize> = nodes.iter().map(|&i| underline_root(g, i)).collect();
        let n = nodes.len();
        let mut m = QMat::zeros(r, n);
        for (c, &s) in simple.iter().enumerate() {
            for (row, &x) in d.root(s).iter().enumerate() {
                m.set(row, c, q(x));
            }
        }
        let mut positive = Vec::new();
        for beta in 0..d.num_roots() {
            if n == 0 {
                break;
            }
            let b = QVec::from_ints(d.root(beta).iter().copied());
            if let Some((x, _)) = solve_affine(&m, &b) {
                if x.iter().all(|c| c.is_integer() && *c >= q(0)) {
                    positive.push((beta, x.iter().map(|c| c.to_integer()).collect::<Vec<i64>>()));
                }
            }
        }
        let components = components(g, k);
        let mut theta_k = vec![0i64; r];
        for comp in &components {
            let (best, _) = positive
                .iter()
                .filter(|(_, c)| nodes.iter().zip(c).all(|(node, x)| *x == 0 || comp.contains(*node)))
                .max_by_key(|(_, c)| c.iter().sum::<i64>())
                .expect("component has roots");
            for (t, x) in theta_k.iter_mut().zip(d.root(*best)) {
                *t += x;
            }
        }
        let outside: Vec<usize> = (0..=r).filter(|i| !k.contains(*i)).collect();
        let mut e_k = QVec::zeros(r);
        for &j in &outside {
            if j > 0 {
                e_k[j - 1] += Q::new(1, d.marks()[j]);
            }
        }
        let e_k = e_k.scale(Q::new(1, outside.len() as i64));
        // Cartan matrix C[a][b] = <alpha_a^vee, alpha_b>; omega = (C^T)^{-1} alpha
        let mut cart = QMat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                cart.set(a, b, q(d.pair_int(d.coroot(simple[a]), simple[b])));
            }
        }
        let inv = cart.transpose().inverse().unwrap_or_else(|| QMat::identity(0));
        let fundamental_weights = (0..n)
            .map(|j| {
                let mut w = QVec::zeros(r);
                for (b, &s) in simple.iter().enumerate() {
                    let c = inv.at(j, b);
                    for (row, &x) in d.root(s).iter().enumerate() {
                        w[row] += c * q(x);
                    }
                }
                w
            })
            .collect();
        Ok(UnderlineRootSystem { k, nodes, simple, positive, components, theta_k, e_k, fundamental_weights })
    }

    /// Orthogonal projection onto the span of the coroots of `Phi_K`.
    pub fn project(&self, g: &AffineWeyl, v: &QVec) -> QVec {
        let d = g.datum();
        let n = self.simple.len();
        let r = g.rank();
        if n == 0 {
            return QVec::zeros(r);
        }
        let cor: Vec<QVec> = self.simple.iter().map(|&s| QVec::from_ints(d.coroot(s).iter().copied())).collect();
        let mut h = QMat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                h.set(a, b, d.inner(&cor[a], &cor[b]));
            }
        }
        let rhs = QVec(cor.iter().map(|c| d.inner(v, c)).collect());
        let c = h.inverse().expect("coroots independent").apply(&rhs);
        let mut out = QVec::zeros(r);
        for (ci, cv) in c.iter().zip(&cor) {
            out = &out + &cv.scale(*ci);
        }
        out
    }

    /// `v_K`, the projection of `v - e^K`.
    pub fn v_k(&self, g: &AffineWeyl, v: &QVec) -> QVec {
        self.project(g, &(v - &self.e_k))
    }

    pub fn pair_theta_k(&self, v: &QVec) -> Q {
        v.iter().zip(&self.theta_k).map(|(a, &b)| a * q(b)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct CoxeterWitness {
    pub gamma: NodeSet,
    pub base: NodeSet,
    pub layers: Vec<Vec<usize>>,
    pub element: Elt,
}

/// `c = c_0 c_1 ...` where `c_n` is the product of `s_j` at distance `n` from the base.
pub fn build_coxeter_witness(g: &AffineWeyl, gamma: NodeSet, base: NodeSet) -> Result<CoxeterWitness> {
    if !base.is_subset(&gamma) {
        return Err(Error::Invalid(format!("base {base:?} is not inside {gamma:?}")));
    }
    let comps = components(g, gamma);
    let edges = gamma.to_vec().into_iter().tuple_combinations().filter(|&(a, b)| g.adjacent(a, b)).count();
    if !g.is_finite_parabolic(gamma) || edges + comps.len() != gamma.len() {
        return Err(Error::Invalid(format!("{gamma:?} contains a cycle")));
    }
    if comps.iter().any(|c| c.iter().filter(|&i| base.contains(i)).count() != 1) {
        return Err(Error::Invalid(format!("base {base:?} must meet each component of {gamma:?} once")));
    }
    let mut dist = vec![usize::MAX; g.rank() + 1];
    let mut queue: VecDeque<usize> = base.iter().collect();
    for i in base.iter() {
        dist[i] = 0;
    }
    while let Some(a) = queue.pop_front() {
        for b in gamma.iter() {
            if dist[b] == usize::MAX && g.adjacent(a, b) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    let depth = gamma.iter().map(|i| dist[i]).max().map_or(0, |m| m + 1);
    let layers: Vec<Vec<usize>> = (0..depth).map(|n| gamma.iter().filter(|&i| dist[i] == n).collect()).collect();
    let mut element = g.identity();
    for layer in &layers {
        for &i in layer {
            element = g.mul(&element, g.simple(i));
        }
    }
    Ok(CoxeterWitness { gamma, base, layers, element })
}

fn reflect_root(g: &AffineWeyl, node: usize, gamma: &[i64]) -> Vec<i64> {
    let d = g.datum();
    let a = underline_root(g, node);
    let c: i64 = d.coroot(a).iter().zip(gamma).map(|(x, y)| x * y).sum();
    gamma.iter().zip(d.root(a)).map(|(x, y)| x - c * y).collect()
}

/// Closed formula `c(v) = v - sum_j <v, gamma_j> alpha_j^vee` for the linear part of `c`.
pub fn coxeter_formula_action(g: &AffineWeyl, cw: &CoxeterWitness, v: &QVec) -> QVec {
    let d = g.datum();
    let mut out = v.clone();
    for (n, layer) in cw.layers.iter().enumerate() {
        for &j in layer {
            let mut gam: Vec<i64> = d.root(underline_root(g, j)).to_vec();
            for later in &cw.layers[n + 1..] {
                for &k in later {
                    gam = reflect_root(g, k, &gam);
                }
            }
            let pair: Q = v.iter().zip(&gam).map(|(a, &b)| a * q(b)).sum();
            let cor = d.coroot(underline_root(g, j));
            for (o, &c) in out.0.iter_mut().zip(cor) {
                *o -= pair * q(c);
            }
        }
    }
    out
}

/// Linear part of `c` applied to `v`.
pub fn coxeter_direct_action(g: &AffineWeyl, cw: &CoxeterWitness, v: &QVec) -> QVec {
    g.datum().weyl().act_q(cw.element.w, v)
}

/// All `Gamma` in `kp` meeting each orbit of `perm` once, containing `base`,
/// with `base` meeting each component of `Gamma` once.
pub fn based_subdiagrams(g: &AffineWeyl, perm: &[usize], kp: NodeSet, base: NodeSet) -> Vec<NodeSet> {
    let orbits = node_orbits_in(perm, kp);
    if orbits.is_empty() {
        return if base.is_empty() { vec![NodeSet::empty()] } else { vec![] };
    }
    let mut out: Vec<NodeSet> = orbits
        .into_iter()
        .multi_cartesian_product()
        .map(|c| c.into_iter().collect::<NodeSet>())
        .filter(|gamma| {
            base.is_subset(gamma)
                && components(g, *gamma).iter().all(|c| c.iter().filter(|&i| base.contains(i)).count() == 1)
        })
        .collect();
    out.sort_by_key(|s| s.0);
    out
}

/// Orbits of `perm` inside the stable set `k`.
pub fn node_orbits_in(perm: &[usize], k: NodeSet) -> Vec<Vec<usize>> {
    let mut seen = NodeSet::empty();
    let mut out = Vec::new();
    for i in k.iter() {
        if seen.contains(i) {
            continue;
        }
        let mut orb = Vec::new();
        let mut j = i;
        while !seen.contains(j) {
            seen.insert(j);
            orb.push(j);
            j = perm[j];
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// Unions of sigma-orbits of connected components of `k`.
pub fn sigma_components(g: &AffineWeyl, sigma: &Frobenius, k: NodeSet) -> Vec<NodeSet> {
    let comps = components(g, k);
    let mut out: Vec<NodeSet> = Vec::new();
    for c in comps {
        if out.iter().any(|s| c.is_subset(s)) {
            continue;
        }
        let mut s = c;
        loop {
            let img: NodeSet = s.iter().map(|i| sigma.node_perm()[i]).collect();
            let next = s.union(&img);
            if next == s {
                break;
            }
            s = next;
        }
        out.push(s);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PermissibleTriple {
    pub lambda: Vec<i64>,
    pub gamma: NodeSet,
    pub base: NodeSet,
    pub element: String,
    #[serde(skip)]
    pub elt: Elt,
    pub central_newton: bool,
    pub in_spade: bool,
    pub fixed_point: Option<QVec>,
}

fn pair_underline(g: &AffineWeyl, lam: &[i64], i: usize) -> i64 {
    g.datum().pair_int(lam, underline_root(g, i))
}

pub fn is_k_dominant(g: &AffineWeyl, k: NodeSet, lam: &[i64]) -> bool {
    k.iter().all(|i| pair_underline(g, lam, i) >= 0)
}

/// All permissible triples for `(mu, K)`, with the evaluation of their elements.
pub fn permissible_triples(inst: &GroupInstance) -> Result<Vec<PermissibleTriple>> {
    let g = &inst.group;
    let sigma = &inst.sigma;
    let spade = adm_spade_of(g, &inst.mu, inst.k)?;
    let mut out = Vec::new();
    for lam in g.orbit(&inst.mu) {
        if !is_k_dominant(g, inst.k, &lam) {
            continue;
        }
        let kp = sigma_components(g, sigma, inst.k)
            .into_iter()
            .filter(|c| c.iter().any(|i| pair_underline(g, &lam, i) != 0))
            .fold(NodeSet::empty(), |a, c| a.union(&c));
        let orbits = node_orbits_in(sigma.node_perm(), kp);
        let gammas: Vec<NodeSet> = if orbits.is_empty() {
            vec![NodeSet::empty()]
        } else {
            orbits.into_iter().multi_cartesian_product().map(|c| c.into_iter().collect()).collect()
        };
        for gamma in gammas {
            let comps = components(g, gamma);
            let choices: Vec<Vec<usize>> = comps
                .iter()
                .map(|c| c.iter().filter(|&i| pair_underline(g, &lam, i) > 0).collect())
                .collect();
            if choices.iter().any(|c: &Vec<usize>| c.is_empty()) {
                continue;
            }
            let bases: Vec<NodeSet> = if choices.is_empty() {
                vec![NodeSet::empty()]
            } else {
                choices.into_iter().multi_cartesian_product().map(|c| c.into_iter().collect()).collect()
            };
            for base in bases {
                let cw = build_coxeter_witness(g, gamma, base)?;
                let elt = g.mul(&g.translation(&lam), &cw.element);
                let central_newton = newton_vector(sigma, &elt).nu_bar.is_zero();
                let fixed_point = fixed_point_in_closed_alcove(sigma, &elt);
                has_fixed_point_in_closed_alcove(sigma, &elt)?;
                out.push(PermissibleTriple {
                    lambda: lam.to_vec(),
                    gamma,
                    base,
                    element: g.format(&elt),
                    in_spade: spade.contains(&elt),
                    elt,
                    central_newton,
                    fixed_point,
                });
            }
        }
    }
    Ok(out)
}

/// First permissible triple whose element has central Newton point but no
/// fixed point in the closed alcove.
pub fn witness_search_non_minute(inst: &GroupInstance) -> Result<Option<PermissibleTriple>> {
    Ok(permissible_triples(inst)?.into_iter().find(|t| t.central_newton && t.fixed_point.is_none()))
}

/// Searches every maximal sigma-stable `K`.
pub fn witness_search_maximal(inst: &GroupInstance) -> Result<Option<(NodeSet, PermissibleTriple)>> {
    for k in crate::frobenius::maximal_sigma_stable_levels(&inst.sigma) {
        if let Some(t) = witness_search_non_minute(&inst.with_k(k)?)? {
            return Ok(Some((k, t)));
        }
    }
    Ok(None)
}

/// `<v_K, theta_K> <= 1` at the fixed point of a permissible triple.
pub fn check_theta_bound(g: &AffineWeyl, k: NodeSet, v: &QVec) -> Result<bool> {
    let u = UnderlineRootSystem::new(g, k)?;
    Ok(u.pair_theta_k(&u.v_k(g, v)) <= q(1))
}

/// Compares the closed formula for the Coxeter element with its direct action
/// on `cases` random instances; returns the mismatches.
pub fn coxeter_formula_mismatches(seed: u64, cases: usize) -> Result<Vec<String>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let types = [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4), (CartanType::A, 4)];
    let groups = types.iter().map(|&(t, r)| build_group(t, r)).collect::<Result<Vec<_>>>()?;
    let mut done = 0;
    let mut bad = Vec::new();
    while done < cases {
        let g = &groups[rng.gen_range(0..groups.len())];
        let r = g.rank();
        let k: NodeSet = (0..=r).filter(|_| rng.gen_bool(0.6)).collect();
        if k.is_empty() || !g.is_finite_parabolic(k) {
            continue;
        }
        let gamma: NodeSet = k.iter().filter(|_| rng.gen_bool(0.7)).collect();
        if gamma.is_empty() {
            continue;
        }
        let base: NodeSet = components(g, gamma)
            .iter()
            .map(|c| {
                let v = c.to_vec();
                v[rng.gen_range(0..v.len())]
            })
            .collect();
        let cw = build_coxeter_witness(g, gamma, base)?;
        let v = QVec((0..r).map(|_| Q::new(rng.gen_range(-9..10), rng.gen_range(1..5))).collect());
        if coxeter_formula_action(g, &cw, &v) != coxeter_direct_action(g, &cw, &v) {
            bad.push(format!("{:?} gamma={gamma:?} base={base:?} v={v}", g));
        }
        done += 1;
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::adm_of;
    use crate::frobenius::{enumerate_sigmas, maximal_sigma_stable_levels};
    use crate::root_datum::{CartanType, RootDatum};
    use std::sync::Arc;

    fn group(t: CartanType, r: usize) -> Arc<AffineWeyl> {
        Arc::new(AffineWeyl::new(Arc::new(RootDatum::new(t, r).unwrap())).unwrap())
    }

    #[test]
    fn underline_types() {
        let g = group(CartanType::C, 2);
        let u = UnderlineRootSystem::new(&g, [0, 1].into_iter().collect()).unwrap();
        assert_eq!(u.positive.len(), 4);
        let u = UnderlineRootSystem::new(&g, [0, 2].into_iter().collect()).unwrap();
        assert_eq!(u.positive.len(), 2);
        assert_eq!(u.components.len(), 2);
        let g = group(CartanType::A, 3);
        let u = UnderlineRootSystem::new(&g, [0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(u.positive.len(), 6);
        assert_eq!(u.components.len(), 1);
        let d = g.datum();
        for (j, w) in u.fundamental_weights.iter().enumerate() {
            for (i, &s) in u.simple.iter().enumerate() {
                let p: Q = w.iter().zip(d.coroot(s)).map(|(a, &b)| a * q(b)).sum();
                assert_eq!(p, q(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        let g = group(CartanType::A, 3);
        let cw = build_coxeter_witness(&g, [2, 3].into_iter().collect(), [2].into_iter().collect()).unwrap();
        assert_eq!(cw.element, g.mul(g.simple(2), g.simple(3)));
        let v = QVec::from_ints([3, -1, 2]);
        assert_eq!(coxeter_formula_action(&g, &cw, &v), coxeter_direct_action(&g, &cw, &v));
        let single = build_coxeter_witness(&g, [1].into_iter().collect(), [1].into_iter().collect()).unwrap();
        assert_eq!(&single.element, g.simple(1));
        assert!(build_coxeter_witness(&g, NodeSet::full(3), [0].into_iter().collect()).is_err());
        assert!(build_coxeter_witness(&g, [1, 3].into_iter().collect(), [1].into_iter().collect()).is_err());
    }

    #[test]
    fn formula_matches_direct_action_randomized() {
        let bad = coxeter_formula_mismatches(7, 200).unwrap();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn existence_of_based_subdiagrams() {
        for (t, r) in [(CartanType::A, 3), (CartanType::A, 4), (CartanType::C, 3), (CartanType::D, 4), (CartanType::B, 3)] {
            let g = group(t, r);
            for s in enumerate_sigmas(&g) {
                for k in crate::frobenius::sigma_stable_levels(&s) {
                    if k.is_empty() {
                        continue;
                    }
                    let sc = sigma_components(&g, &s, k);
                    // one base node per sigma-component
                    for base in sc.iter().map(|c| c.to_vec()).multi_cartesian_product() {
                        let base: NodeSet = base.into_iter().collect();
                        let found = based_subdiagrams(&g, s.node_perm(), k, base);
                        assert!(!found.is_empty(), "{:?} {:?} {:?}", s.label(), k, base);
                    }
                }
            }
        }
    }

    #[test]
    fn triples_lie_in_spade_and_are_central_for_maximal_k() {
        for (t, r, mu) in [(CartanType::A, 2, vec![2, 0]), (CartanType::C, 2, vec![0, 2]), (CartanType::A, 3, vec![0, 1, 0])] {
            let g = group(t, r);
            for s in enumerate_sigmas(&g) {
                let s = Arc::new(s);
                for k in maximal_sigma_stable_levels(&s) {
                    let inst = GroupInstance::new(s.clone(), &mu, k).unwrap();
                    let adm = adm_of(&g, &mu);
                    for tr in permissible_triples(&inst).unwrap() {
                        assert!(tr.in_spade, "{} {}", inst.label(), tr.element);
                        assert!(adm.contains(&tr.elt));
                        assert!(tr.central_newton, "{} {}", inst.label(), tr.element);
                        if let Some(v) = &tr.fixed_point {
                            assert!(check_theta_bound(&g, k, v).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witness_for_non_minute_control() {
        let g = group(CartanType::A, 2);
        let s = Arc::new(Frobenius::identity(g));
        let inst = GroupInstance::new(s.clone(), &[2, 0], [1, 2].into_iter().collect()).unwrap();
        assert!(witness_search_non_minute(&inst).unwrap().is_some());
        let minute = GroupInstance::new(s, &[1, 0], [1, 2].into_iter().collect()).unwrap();
        assert!(witness_search_non_minute(&minute).unwrap().is_none());
    }
}
