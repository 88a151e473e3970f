//! Nonemptiness and dimension of `X_w(b)` by Deligne-Lusztig reduction.
//!
//! Minimal length elements are taken as axioms: `X_w(b)` is nonempty only for
//! `b = [w]`, of dimension `l(w) - <nu_w, 2 rho>`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use crate::admissible::adm_cap_kw;
use crate::affine_weyl::Elt;
use crate::error::{Error, Result};
use crate::frobenius::{Frobenius, GroupInstance};
use crate::rational::q;
use crate::sigma_conj::{b_g_mu_via_criterion, newton_vector, sigma_class, SigmaClass};

pub type DimMap = BTreeMap<SigmaClass, usize>;

/// Closure of `{w}` under `x -> s x sigma(s)` with `l(s x sigma(s)) = l(x)`.
pub fn cyclic_shift_orbit(sigma: &Frobenius, w: &Elt) -> HashSet<Elt> {
    let g = sigma.group();
    let l = g.length(w);
    let mut seen = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(x) = queue.pop_front() {
        for s in 0..=g.rank() {
            let y = twisted_conj_simple(sigma, s, &x);
            if g.length(&y) == l && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `s_i x sigma(s_i)`.
pub fn twisted_conj_simple(sigma: &Frobenius, i: usize, x: &Elt) -> Elt {
    let g = sigma.group();
    g.right_mul_simple(&g.left_mul_simple(i, x), sigma.node_perm()[i])
}

/// A length-decreasing move `(w', s)` with `w'` in the cyclic-shift orbit.
#[derive(Clone, Debug)]
struct Reduction {
    conj: Elt,
    mult: Elt,
}

pub struct DlOracle {
    sigma: Arc<Frobenius>,
    check_paths: bool,
    memo: Mutex<HashMap<Elt, Arc<DimMap>>>,
}

impl DlOracle {
    pub fn new(sigma: Arc<Frobenius>) -> Self {
        DlOracle { sigma, check_paths: true, memo: Mutex::new(HashMap::new()) }
    }

    /// Skips the second-path comparison.
    pub fn unchecked(sigma: Arc<Frobenius>) -> Self {
        DlOracle { check_paths: false, ..Self::new(sigma) }
    }

    pub fn sigma(&self) -> &Arc<Frobenius> {
        &self.sigma
    }

    pub fn cache_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    fn reductions(&self, orbit: &HashSet<Elt>, limit: usize) -> Vec<Reduction> {
        let g = self.sigma.group();
        let mut out: Vec<Reduction> = Vec::new();
        let mut seen_children = HashSet::new();
        for x in g.sorted(orbit.iter().cloned()) {
            let l = g.length(&x);
            for s in 0..=g.rank() {
                let y = twisted_conj_simple(&self.sigma, s, &x);
                if g.length(&y) < l {
                    let sx = g.left_mul_simple(s, &x);
                    if seen_children.insert((y.clone(), sx.clone())) {
                        out.push(Reduction { conj: y, mult: sx });
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    fn reduce_along(&self, red: &Reduction, depth: usize) -> Result<DimMap> {
        let mut out = DimMap::new();
        for child in [&red.conj, &red.mult] {
            for (c, d) in self.dim_rec(child, depth + 1)?.iter() {
                let e = out.entry(c.clone()).or_insert(0);
                *e = (*e).max(d + 1);
            }
        }
        Ok(out)
    }

    fn dim_rec(&self, w: &Elt, depth: usize) -> Result<Arc<DimMap>> {
        if let Some(m) = self.memo.lock().unwrap().get(w) {
            return Ok(m.clone());
        }
        let g = self.sigma.group();
        if depth > 4 * g.length(w) + 64 {
            return Err(Error::Internal(format!("reduction depth exceeded at {}", g.format(w))));
        }
        let orbit = cyclic_shift_orbit(&self.sigma, w);
        let limit = if self.check_paths { 2 } else { 1 };
        let reds = self.reductions(&orbit, limit);
        let map = if reds.is_empty() {
            let nv = newton_vector(&self.sigma, w);
            let d = q(g.length(w) as i64) - g.datum().pair_two_rho(&nv.nu_bar);
            if !d.is_integer() || d < q(0) {
                return Err(Error::Internal(format!("non-integral base dimension at {}", g.format(w))));
            }
            DimMap::from([(sigma_class(&self.sigma, w), d.to_integer() as usize)])
        } else {
            let first = self.reduce_along(&reds[0], depth)?;
            for other in &reds[1..] {
                let alt = self.reduce_along(other, depth)?;
                if alt != first {
                    return Err(Error::Internal(format!(
                        "reduction paths disagree at {}",
                        g.format(w)
                    )));
                }
            }
            first
        };
        let map = Arc::new(map);
        let mut memo = self.memo.lock().unwrap();
        for x in orbit {
            memo.insert(x, map.clone());
        }
        Ok(map)
    }

    pub fn dl_dimension(&self, w: &Elt) -> Result<Arc<DimMap>> {
        self.dim_rec(w, 0)
    }

    /// Whether `w` has no length-decreasing move anywhere in its orbit.
    pub fn is_minimal_length(&self, w: &Elt) -> bool {
        self.reductions(&cyclic_shift_orbit(&self.sigma, w), 1).is_empty()
    }
}

/// `max_{w in Adm cap ^K W~} dim X_w(b)`, or `None` if every `X_w(b)` is empty.
pub fn dim_x_mu_b_k(oracle: &DlOracle, inst: &GroupInstance, c: &SigmaClass) -> Result<Option<usize>> {
    let mut best = None;
    for w in adm_cap_kw(inst).elements() {
        if let Some(&d) = oracle.dl_dimension(w)?.get(c) {
            best = Some(best.map_or(d, |b: usize| b.max(d)));
        }
    }
    Ok(best)
}

/// Dimension of `X(mu, b)_K` for every class of `B(G, mu)`.
pub fn dim_table(oracle: &DlOracle, inst: &GroupInstance) -> Result<BTreeMap<SigmaClass, Option<usize>>> {
    let mut out: BTreeMap<SigmaClass, Option<usize>> =
        b_g_mu_via_criterion(inst).into_iter().map(|c| (c, None)).collect();
    for w in adm_cap_kw(inst).elements() {
        for (c, &d) in oracle.dl_dimension(w)?.iter() {
            match out.get_mut(c) {
                Some(e) => *e = Some(e.map_or(d, |b| b.max(d))),
                None => {
                    return Err(Error::Internal(format!(
                        "class {} met by {} lies outside B(G, mu)",
                        c.describe(),
                        inst.group.format(w)
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Elements of `Adm cap ^K W~` meeting more or fewer than one class of `B(G, mu)`.
pub fn ekor_newton_violations(oracle: &DlOracle, inst: &GroupInstance) -> Result<Vec<(Elt, usize)>> {
    let bgmu: BTreeSet<SigmaClass> = b_g_mu_via_criterion(inst);
    let mut bad = Vec::new();
    for w in adm_cap_kw(inst).elements() {
        let n = oracle.dl_dimension(w)?.keys().filter(|c| bgmu.contains(c)).count();
        if n != 1 {
            bad.push((w.clone(), n));
        }
    }
    Ok(bad)
}

pub fn ekor_newton_uniqueness(oracle: &DlOracle, inst: &GroupInstance) -> Result<bool> {
    Ok(ekor_newton_violations(oracle, inst)?.is_empty())
}
