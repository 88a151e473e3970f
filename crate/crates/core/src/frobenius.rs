//! Frobenius automorphisms `sigma = tau o varsigma` of the extended affine Weyl
//! group, together with the instances `(W~, sigma, mu, K)` built on them.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;

use crate::affine_weyl::{AffMap, AffineWeyl, Elt, Lat, NodeSet};
use crate::error::{Error, Result};
use crate::rational::{q, QVec, Q};
use crate::root_datum::{identity_mat, mat_mul, mat_vec, CartanType, RootDatum, WIdx};

/// Permutation `pi` of the finite nodes, stored with `pi[0] = 0`.
pub type DiagramPerm = Vec<usize>;

pub fn identity_perm(rank: usize) -> DiagramPerm {
    (0..=rank).collect()
}

pub fn is_diagram_automorphism(d: &RootDatum, pi: &[usize]) -> bool {
    let r = d.rank;
    if pi.len() != r + 1 || pi[0] != 0 {
        return false;
    }
    let mut seen = vec![false; r + 1];
    for &p in &pi[1..] {
        if p == 0 || p > r || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    (1..=r).all(|i| (1..=r).all(|j| d.cartan(pi[i], pi[j]) == d.cartan(i, j)))
}

/// All automorphisms of the finite Dynkin diagram.
pub fn diagram_automorphisms(d: &RootDatum) -> Vec<DiagramPerm> {
    let r = d.rank;
    (1..=r)
        .permutations(r)
        .map(|p| std::iter::once(0).chain(p).collect::<Vec<_>>())
        .filter(|p| is_diagram_automorphism(d, p))
        .collect()
}

/// The distinguished nontrivial automorphism: reversal in type A, the swap of
/// the two short legs in type D. Identity when none exists.
pub fn varsigma0(d: &RootDatum) -> DiagramPerm {
    let r = d.rank;
    let mut p = identity_perm(r);
    match d.cartan_type {
        CartanType::A => {
            for i in 1..=r {
                p[i] = r + 1 - i;
            }
        }
        CartanType::D => {
            p.swap(r - 1, r);
        }
        _ => {}
    }
    p
}

/// Parses `id`, `varsigma0`, `triality` (D4 only) or `perm:i1,..,ir`.
pub fn parse_diagram(d: &RootDatum, s: &str) -> Result<DiagramPerm> {
    let r = d.rank;
    let p = match s.trim() {
        "id" => identity_perm(r),
        "varsigma0" => {
            let p = varsigma0(d);
            if p == identity_perm(r) && r > 1 {
                return Err(Error::Invalid(format!("{} has no nontrivial diagram automorphism", d.name())));
            }
            p
        }
        "triality" => {
            if d.cartan_type != CartanType::D || r != 4 {
                return Err(Error::Invalid("triality exists only in type D4".into()));
            }
            vec![0, 3, 2, 4, 1]
        }
        other => {
            let body = other
                .strip_prefix("perm:")
                .ok_or_else(|| Error::Invalid(format!("unknown diagram automorphism {other:?}")))?;
            let imgs: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Invalid(format!("bad permutation {body:?}")))?;
            std::iter::once(0).chain(imgs).collect()
        }
    };
    if !is_diagram_automorphism(d, &p) {
        return Err(Error::Invalid(format!("{p:?} is not an automorphism of the {} diagram", d.name())));
    }
    Ok(p)
}

fn affine_order(m: &AffMap) -> usize {
    let mut cur = m.clone();
    for n in 1..=10_000 {
        if cur.is_identity() {
            return n;
        }
        cur = m.compose(&cur);
    }
    panic!("affine map of infinite order")
}

pub struct Frobenius {
    group: Arc<AffineWeyl>,
    tau: usize,
    diagram: DiagramPerm,
    map: AffMap,
    inv_map: AffMap,
    node_perm: Vec<usize>,
    sigma0: Vec<usize>,
    correcting: WIdx,
    w_conj: Vec<WIdx>,
    order: usize,
}

impl fmt::Debug for Frobenius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frobenius({})", self.label())
    }
}

impl Frobenius {
    /// `sigma = tau o varsigma` with `tau` an index into the Omega list.
    pub fn new(group: Arc<AffineWeyl>, tau: usize, diagram: DiagramPerm) -> Result<Self> {
        let d = group.datum();
        let r = d.rank;
        if tau >= group.omega_elements().len() {
            return Err(Error::Invalid(format!("Omega index {tau} out of range")));
        }
        if !is_diagram_automorphism(d, &diagram) {
            return Err(Error::Invalid(format!("{diagram:?} is not a diagram automorphism")));
        }
        let mut p = vec![0i64; r * r];
        for i in 1..=r {
            p[(diagram[i] - 1) * r + (i - 1)] = 1;
        }
        let vs = AffMap { lin: p, trans: vec![0; r] };
        let map = group.to_affine(&group.omega_elements()[tau]).compose(&vs);
        let order = affine_order(&map);
        let mut inv_map = AffMap { lin: identity_mat(r), trans: vec![0; r] };
        for _ in 0..order - 1 {
            inv_map = inv_map.compose(&map);
        }
        let w0 = d.weyl();
        let pinv = &inv_map.lin;
        let w_conj: Vec<WIdx> = w0
            .elements()
            .map(|w| {
                let m = mat_mul(&mat_mul(&map.lin, w0.matrix(w), r), pinv, r);
                w0.lookup(&m).ok_or_else(|| Error::Internal("p(sigma) does not normalize W0".into()))
            })
            .collect::<Result<_>>()?;
        let ones = vec![1i64; r];
        let pr = mat_vec(&map.lin, &ones, r);
        let correcting = w0
            .elements()
            .find(|&w| w0.act_int(w, &pr) == ones)
            .ok_or_else(|| Error::Internal("no correcting Weyl element".into()))?;
        let s0m = mat_mul(w0.matrix(correcting), &map.lin, r);
        let mut sigma0 = vec![0usize; r + 1];
        for i in 1..=r {
            let col: Vec<i64> = (0..r).map(|k| s0m[k * r + (i - 1)]).collect();
            let target = col
                .iter()
                .position(|&c| c == 1)
                .filter(|_| col.iter().filter(|&&c| c != 0).count() == 1)
                .ok_or_else(|| Error::Internal("sigma_0 is not a node permutation".into()))?;
            sigma0[i] = target + 1;
        }
        let mut f = Frobenius {
            group: group.clone(),
            tau,
            diagram,
            map,
            inv_map,
            node_perm: vec![],
            sigma0,
            correcting,
            w_conj,
            order,
        };
        f.node_perm = (0..=r)
            .map(|i| {
                let c = f.apply(group.simple(i));
                group
                    .simple_index(&c)
                    .ok_or_else(|| Error::Invalid("sigma does not preserve the base alcove".into()))
            })
            .collect::<Result<_>>()?;
        Ok(f)
    }

    pub fn identity(group: Arc<AffineWeyl>) -> Self {
        let r = group.rank();
        Self::new(group, 0, identity_perm(r)).expect("identity is valid")
    }

    /// Build from the node label `j` of `tau_j` (0 for identity).
    pub fn from_node(group: Arc<AffineWeyl>, omega_node: usize, diagram: DiagramPerm) -> Result<Self> {
        let idx = group.omega_index_of_node(omega_node).ok_or_else(|| {
            Error::Invalid(format!(
                "no Omega element attached to node {omega_node}; special nodes are {:?}",
                group.omega_nodes()
            ))
        })?;
        Self::new(group, idx, diagram)
    }

    pub fn group(&self) -> &Arc<AffineWeyl> {
        &self.group
    }

    pub fn tau_index(&self) -> usize {
        self.tau
    }

    pub fn tau_node(&self) -> usize {
        self.group.omega_nodes()[self.tau]
    }

    pub fn diagram(&self) -> &DiagramPerm {
        &self.diagram
    }

    pub fn affine_map(&self) -> &AffMap {
        &self.map
    }

    pub fn inverse_map(&self) -> &AffMap {
        &self.inv_map
    }

    /// Order of sigma as an affine map of V.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `sigma(0)` in coweight coordinates.
    pub fn sigma_of_zero(&self) -> &[i64] {
        &self.map.trans
    }

    /// Linear part `p(sigma)`, row-major.
    pub fn linear_part(&self) -> &[i64] {
        &self.map.lin
    }

    /// Correcting element `w` with `sigma_0 = w p(sigma)`.
    pub fn correcting_element(&self) -> WIdx {
        self.correcting
    }

    /// Permutation of finite nodes induced by `sigma_0` (entry 0 unused).
    pub fn sigma0(&self) -> &[usize] {
        &self.sigma0
    }

    /// Permutation of affine nodes: `sigma(s_i) = s_{pi(i)}`.
    pub fn node_perm(&self) -> &[usize] {
        &self.node_perm
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }

    pub fn apply_point(&self, v: &QVec) -> QVec {
        self.map.apply_q(v)
    }

    /// `sigma(x) = F x F^{-1}` for the affine map F of sigma.
    pub fn apply(&self, x: &Elt) -> Elt {
        let r = self.group.rank();
        let w0 = self.group.datum().weyl();
        let wp = self.w_conj[x.w as usize];
        let c = &self.map.trans;
        let pl = mat_vec(&self.map.lin, &x.lam, r);
        let wc = w0.act_int(wp, c);
        Elt { lam: (0..r).map(|i| c[i] + pl[i] - wc[i]).collect(), w: wp }
    }

    pub fn apply_weyl(&self, w: WIdx) -> WIdx {
        self.w_conj[w as usize]
    }

    /// Linear action of `p(sigma)` on integral coweights.
    pub fn linear_apply_int(&self, lam: &[i64]) -> Lat {
        mat_vec(&self.map.lin, lam, self.group.rank()).into_iter().collect()
    }

    pub fn linear_apply_q(&self, v: &QVec) -> QVec {
        let r = self.group.rank();
        let m = &self.map.lin;
        QVec((0..r).map(|i| (0..r).map(|j| q(m[i * r + j]) * v[j]).sum()).collect())
    }

    /// `sigma_0` acting on V.
    pub fn sigma0_apply_q(&self, v: &QVec) -> QVec {
        let mut out = QVec::zeros(v.len());
        for i in 1..=v.len() {
            out[self.sigma0[i] - 1] = v[i - 1];
        }
        out
    }

    /// Orbits of `sigma_0` on `{1, .., r}`, each sorted, ordered by minimum.
    pub fn sigma0_orbits(&self) -> Vec<Vec<usize>> {
        perm_orbits(&self.sigma0[1..].iter().map(|&x| x - 1).collect::<Vec<_>>())
            .into_iter()
            .map(|o| o.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    /// Orbits of sigma on the affine nodes.
    pub fn node_orbits(&self) -> Vec<Vec<usize>> {
        perm_orbits(&self.node_perm)
    }

    pub fn sigma_stable(&self, k: NodeSet) -> bool {
        k.iter().all(|i| k.contains(self.node_perm[i]))
    }

    /// Average of the sigma_0-orbit of `v`.
    pub fn sigma0_average(&self, v: &QVec) -> QVec {
        let mut acc = QVec::zeros(v.len());
        let mut cur = v.clone();
        let mut n = 0;
        loop {
            acc = &acc + &cur;
            n += 1;
            cur = self.sigma0_apply_q(&cur);
            if cur == *v {
                break;
            }
        }
        acc.scale(Q::new(1, n))
    }

    pub fn is_sigma0_fixed(&self, v: &QVec) -> bool {
        self.sigma0_apply_q(v) == *v
    }

    /// Short label like `id`, `t1`, `d[2,1]`, `t1*d[2,1]`.
    pub fn label(&self) -> String {
        let r = self.group.rank();
        let mut parts = Vec::new();
        if self.tau != 0 {
            parts.push(format!("t{}", self.tau_node()));
        }
        if self.diagram != identity_perm(r) {
            parts.push(format!("d[{}]", self.diagram[1..].iter().join(",")));
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join("*")
        }
    }

    /// Conjugate `phi sigma phi^{-1}` by a diagram automorphism `phi`.
    pub fn conjugate_by(&self, phi: &Frobenius) -> Result<Frobenius> {
        let m = phi.affine_map().compose(&self.map).compose(phi.inverse_map());
        find_sigma_with_map(&self.group, &m)
    }
}

fn find_sigma_with_map(group: &Arc<AffineWeyl>, m: &AffMap) -> Result<Frobenius> {
    let trans: Lat = m.trans.iter().copied().collect();
    let tau = group
        .omega_elements()
        .iter()
        .position(|t| t.lam == trans)
        .ok_or_else(|| Error::Internal("conjugate does not preserve the alcove".into()))?;
    let tinv = group.inverse(&group.omega_elements()[tau]);
    let rest = group.to_affine(&tinv).compose(m);
    let r = group.rank();
    let mut pi = vec![0usize; r + 1];
    for i in 1..=r {
        let col: Vec<i64> = (0..r).map(|k| rest.lin[k * r + (i - 1)]).collect();
        pi[i] = col
            .iter()
            .position(|&c| c == 1)
            .ok_or_else(|| Error::Internal("not a diagram map".into()))?
            + 1;
    }
    let f = Frobenius::new(group.clone(), tau, pi)?;
    if f.map != *m {
        return Err(Error::Internal("conjugate reconstruction mismatch".into()));
    }
    Ok(f)
}

pub fn perm_orbits(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut orb = vec![];
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            orb.push(j);
            j = p[j];
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// All `tau o varsigma`, deduplicated as affine maps.
pub fn enumerate_sigmas(group: &Arc<AffineWeyl>) -> Vec<Frobenius> {
    let auts = diagram_automorphisms(group.datum());
    let mut out: Vec<Frobenius> = Vec::new();
    for tau in 0..group.omega_elements().len() {
        for pi in &auts {
            let f = Frobenius::new(group.clone(), tau, pi.clone()).expect("valid automorphism");
            if !out.iter().any(|g| g.map == f.map) {
                out.push(f);
            }
        }
    }
    out
}

/// A group with Frobenius, a dominant coweight and a level structure.
#[derive(Clone, Debug)]
pub struct GroupInstance {
    pub group: Arc<AffineWeyl>,
    pub sigma: Arc<Frobenius>,
    pub mu: Lat,
    pub k: NodeSet,
}

impl GroupInstance {
    pub fn new(sigma: Arc<Frobenius>, mu: &[i64], k: NodeSet) -> Result<Self> {
        let group = sigma.group().clone();
        let r = group.rank();
        if mu.len() != r {
            return Err(Error::Invalid(format!("mu has {} coordinates, rank is {r}", mu.len())));
        }
        if mu.iter().any(|&x| x < 0) {
            return Err(Error::Invalid(format!("mu = {mu:?} is not dominant")));
        }
        if k.iter().any(|i| i > r) {
            return Err(Error::Invalid(format!("K = {k:?} has a node outside 0..={r}")));
        }
        if !group.is_finite_parabolic(k) {
            return Err(Error::Invalid(format!("W_K is infinite for K = {k:?}")));
        }
        if !sigma.sigma_stable(k) {
            return Err(Error::Invalid(format!("K = {k:?} is not sigma-stable")));
        }
        Ok(GroupInstance { group, sigma, mu: mu.iter().copied().collect(), k })
    }

    pub fn with_k(&self, k: NodeSet) -> Result<Self> {
        GroupInstance::new(self.sigma.clone(), &self.mu, k)
    }

    pub fn datum(&self) -> &RootDatum {
        self.group.datum()
    }

    pub fn mu_q(&self) -> QVec {
        QVec::from_ints(self.mu.iter().copied())
    }

    /// `mu^diamond`, the sigma_0-orbit average of mu.
    pub fn mu_diamond(&self) -> QVec {
        self.sigma.sigma0_average(&self.mu_q())
    }

    pub fn is_mu_zero(&self) -> bool {
        self.mu.iter().all(Zero::is_zero)
    }

    pub fn label(&self) -> String {
        format!(
            "({}~, mu=[{}], sigma={}, K={:?})",
            self.datum().name(),
            self.mu.iter().join(","),
            self.sigma.label(),
            self.k
        )
    }
}

/// All sigma-stable K with W_K finite, sorted by size then bits.
pub fn sigma_stable_levels(sigma: &Frobenius) -> Vec<NodeSet> {
    let r = sigma.group().rank();
    let mut out: Vec<NodeSet> = NodeSet::full(r)
        .subsets()
        .filter(|k| sigma.group().is_finite_parabolic(*k) && sigma.sigma_stable(*k))
        .collect();
    out.sort_by_key(|k| (k.len(), k.0));
    out
}

/// Maximal sigma-stable proper subsets of the affine nodes.
pub fn maximal_sigma_stable_levels(sigma: &Frobenius) -> Vec<NodeSet> {
    let all = sigma_stable_levels(sigma);
    all.iter()
        .filter(|k| !all.iter().any(|k2| k2 != *k && k.is_subset(k2)))
        .copied()
        .collect()
}

pub fn is_dominant_int(mu: &[i64]) -> bool {
    mu.iter().all(|&x| x >= 0)
}

pub fn q_of(x: i64) -> Q {
    q(x)
}
