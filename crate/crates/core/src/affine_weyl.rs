//! The extended affine Weyl group `P^vee x| W0`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{frac, q, QVec, Q};
use crate::root_datum::{mat_mul, mat_vec, RootDatum, WIdx};

pub type Lat = SmallVec<[i64; 6]>;

/// `t^lam w`, acting on V by `v -> lam + w v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Elt {
    pub lam: Lat,
    pub w: WIdx,
}

/// A subset of the affine nodes `{0, .., r}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    /// All of `S~ = {0, .., r}`.
    pub fn full(rank: usize) -> Self {
        NodeSet((1u32 << (rank + 1)) - 1)
    }

    /// Finite nodes `{1, .., r}`.
    pub fn finite(rank: usize) -> Self {
        NodeSet(Self::full(rank).0 & !1)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`.
    pub fn subsets(&self) -> impl Iterator<Item = NodeSet> {
        let m = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == m { None } else { Some(((c | !m).wrapping_add(1)) & m) };
            Some(NodeSet(c))
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = NodeSet::empty();
        for i in it {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// An integral affine map `v -> trans + lin v` on coweight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffMap {
    pub lin: Vec<i64>,
    pub trans: Vec<i64>,
}

impl AffMap {
    pub fn compose(&self, o: &AffMap) -> AffMap {
        let r = self.trans.len();
        let t = mat_vec(&self.lin, &o.trans, r);
        AffMap {
            lin: mat_mul(&self.lin, &o.lin, r),
            trans: t.iter().zip(&self.trans).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn apply_q(&self, v: &QVec) -> QVec {
        let r = self.trans.len();
        QVec(
            (0..r)
                .map(|i| q(self.trans[i]) + (0..r).map(|j| q(self.lin[i * r + j]) * v[j]).sum::<Q>())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        let r = self.trans.len();
        self.trans.iter().all(|&x| x == 0)
            && (0..r).all(|i| (0..r).all(|j| self.lin[i * r + j] == i64::from(i == j)))
    }
}

pub struct AffineWeyl {
    datum: Arc<RootDatum>,
    s0: Elt,
    s_theta: WIdx,
    reflections: Vec<WIdx>,
    omega: Vec<Elt>,
    omega_nodes: Vec<usize>,
    omega_key: HashMap<Vec<Q>, usize>,
    simples: Vec<Elt>,
}

impl fmt::Debug for AffineWeyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineWeyl({})", self.datum.name())
    }
}

impl AffineWeyl {
    pub fn new(datum: Arc<RootDatum>) -> Result<Self> {
        let r = datum.rank;
        let w0 = datum.weyl();
        let reflections: Vec<WIdx> = (0..datum.num_positive())
            .map(|b| {
                let cv = datum.coroot(b);
                let rt = datum.root(b);
                let mut m = vec![0i64; r * r];
                for i in 0..r {
                    for j in 0..r {
                        m[i * r + j] = i64::from(i == j) - cv[i] * rt[j];
                    }
                }
                w0.lookup(&m).ok_or_else(|| Error::Internal("reflection not in W0".into()))
            })
            .collect::<Result<_>>()?;
        let theta = datum.highest_root();
        let s_theta = reflections[theta];
        let s0 = Elt { lam: datum.coroot(theta).iter().copied().collect(), w: s_theta };
        let mut g = AffineWeyl {
            datum: datum.clone(),
            s0,
            s_theta,
            reflections,
            omega: vec![],
            omega_nodes: vec![],
            omega_key: HashMap::new(),
            simples: vec![],
        };
        g.simples = (0..=r)
            .map(|i| if i == 0 { g.s0.clone() } else { g.finite(w0.simple(i)) })
            .collect();
        let mut omega = vec![g.identity()];
        let mut nodes = vec![0];
        for j in 1..=r {
            if datum.marks()[j] != 1 {
                continue;
            }
            let mut lam = Lat::from_elem(0, r);
            lam[j - 1] = 1;
            let found: Vec<Elt> = w0
                .elements()
                .map(|w| Elt { lam: lam.clone(), w })
                .filter(|x| g.length(x) == 0)
                .collect();
            if found.len() != 1 {
                return Err(Error::Internal(format!(
                    "expected one length-zero element over omega_{j}^vee, found {}",
                    found.len()
                )));
            }
            omega.push(found.into_iter().next().unwrap());
            nodes.push(j);
        }
        for (i, t) in omega.iter().enumerate() {
            let key = g.lattice_class(&t.lam);
            if g.omega_key.insert(key, i).is_some() {
                return Err(Error::Internal("two Omega elements in one class".into()));
            }
        }
        g.omega = omega;
        g.omega_nodes = nodes;
        Ok(g)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> Arc<RootDatum> {
        self.datum.clone()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn identity(&self) -> Elt {
        Elt { lam: Lat::from_elem(0, self.rank()), w: 0 }
    }

    pub fn translation(&self, lam: &[i64]) -> Elt {
        Elt { lam: lam.iter().copied().collect(), w: 0 }
    }

    pub fn finite(&self, w: WIdx) -> Elt {
        Elt { lam: Lat::from_elem(0, self.rank()), w }
    }

    /// Simple affine reflection `s_i`, `i in 0..=r`.
    pub fn simple(&self, i: usize) -> &Elt {
        &self.simples[i]
    }

    /// Reflection `s_beta` in W0 for a positive root index.
    pub fn finite_reflection(&self, beta: usize) -> WIdx {
        let b = if self.datum.is_positive(beta) { beta } else { self.datum.negate_root(beta) };
        self.reflections[b]
    }

    /// Affine reflection in the hyperplane `<v, beta> = k`.
    pub fn affine_reflection(&self, beta: usize, k: i64) -> Elt {
        let cv = self.datum.coroot(beta);
        Elt { lam: cv.iter().map(|c| c * k).collect(), w: self.finite_reflection(beta) }
    }

    pub fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let w0 = self.datum.weyl();
        let wl = w0.act_int(a.w, &b.lam);
        Elt {
            lam: a.lam.iter().zip(&wl).map(|(x, y)| x + y).collect(),
            w: w0.mul(a.w, b.w),
        }
    }

    pub fn mul_all<'a, I: IntoIterator<Item = &'a Elt>>(&self, it: I) -> Elt {
        it.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inverse(&self, x: &Elt) -> Elt {
        let w0 = self.datum.weyl();
        let wi = w0.inverse(x.w);
        Elt { lam: w0.act_int(wi, &x.lam).iter().map(|c| -c).collect(), w: wi }
    }

    pub fn pow(&self, x: &Elt, n: usize) -> Elt {
        (0..n).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    pub fn act(&self, x: &Elt, v: &QVec) -> QVec {
        let wv = self.datum.weyl().act_q(x.w, v);
        QVec(wv.iter().zip(&x.lam).map(|(a, &b)| a + q(b)).collect())
    }

    pub fn to_affine(&self, x: &Elt) -> AffMap {
        AffMap { lin: self.datum.weyl().matrix(x.w).to_vec(), trans: x.lam.to_vec() }
    }

    /// Element with the given affine map, if it lies in the group.
    pub fn from_affine(&self, m: &AffMap) -> Option<Elt> {
        let w = self.datum.weyl().lookup(&m.lin)?;
        Some(Elt { lam: m.trans.iter().copied().collect(), w })
    }

    /// `floor <x(e), beta>` for `e` in the base alcove.
    pub fn floor(&self, x: &Elt, beta: usize) -> i64 {
        let w0 = self.datum.weyl();
        let pre = w0.act_root(w0.inverse(x.w), beta);
        self.datum.pair_int(&x.lam, beta) - i64::from(!self.datum.is_positive(pre))
    }

    /// Number of affine root hyperplanes separating the base alcove from `x(a)`.
    pub fn length(&self, x: &Elt) -> usize {
        let w0 = self.datum.weyl();
        let wi = w0.inverse(x.w);
        (0..self.datum.num_positive())
            .map(|b| {
                let neg = !self.datum.is_positive(w0.act_root(wi, b));
                (self.datum.pair_int(&x.lam, b) - i64::from(neg)).unsigned_abs() as usize
            })
            .sum()
    }

    /// Iwahori-Matsumoto formula, kept as an independent check of `length`.
    pub fn length_im(&self, x: &Elt) -> usize {
        let w0 = self.datum.weyl();
        let wi = w0.inverse(x.w);
        (0..self.datum.num_positive())
            .map(|b| {
                let p = self.datum.pair_int(&x.lam, b);
                if self.datum.is_positive(w0.act_root(wi, b)) {
                    p.unsigned_abs() as usize
                } else {
                    (p - 1).unsigned_abs() as usize
                }
            })
            .sum()
    }

    /// `l(s_i x) < l(x)`.
    pub fn is_left_descent(&self, x: &Elt, i: usize) -> bool {
        if i == 0 {
            self.floor(x, self.datum.highest_root()) >= 1
        } else {
            self.floor(x, self.datum.simple_root(i)) <= -1
        }
    }

    /// `l(x s_i) < l(x)`.
    pub fn is_right_descent(&self, x: &Elt, i: usize) -> bool {
        self.is_left_descent(&self.inverse(x), i)
    }

    pub fn left_mul_simple(&self, i: usize, x: &Elt) -> Elt {
        self.mul(self.simple(i), x)
    }

    pub fn right_mul_simple(&self, x: &Elt, i: usize) -> Elt {
        self.mul(x, self.simple(i))
    }

    fn lattice_class(&self, lam: &[i64]) -> Vec<Q> {
        let v = QVec::from_ints(lam.iter().copied());
        self.datum.coroot_coords(&v).iter().map(|&c| frac(c)).collect()
    }

    pub fn omega_elements(&self) -> &[Elt] {
        &self.omega
    }

    /// Node label `j` of `tau_j` for each Omega element (0 for the identity).
    pub fn omega_nodes(&self) -> &[usize] {
        &self.omega_nodes
    }

    /// Index into `omega_elements` of the Omega element `tau_j`.
    pub fn omega_index_of_node(&self, j: usize) -> Option<usize> {
        self.omega_nodes.iter().position(|&n| n == j)
    }

    /// Index of the Omega-part of `x`.
    pub fn omega_part(&self, x: &Elt) -> usize {
        self.omega_key[&self.lattice_class(&x.lam)]
    }

    /// Permutation of the affine nodes induced by conjugation `x s_i x^{-1}`
    /// for a length-zero `x`.
    pub fn node_permutation(&self, tau: &Elt) -> Vec<usize> {
        let inv = self.inverse(tau);
        (0..=self.rank())
            .map(|i| {
                let c = self.mul(&self.mul(tau, self.simple(i)), &inv);
                self.simple_index(&c).expect("length-zero conjugation permutes simples")
            })
            .collect()
    }

    pub fn simple_index(&self, x: &Elt) -> Option<usize> {
        self.simples.iter().position(|s| s == x)
    }

    /// Lexicographically least reduced word `s_{i_1} .. s_{i_k}` and the
    /// Omega index `tau` with `x = s_{i_1} .. s_{i_k} tau`.
    pub fn reduced_word(&self, x: &Elt) -> (Vec<u8>, usize) {
        let mut cur = x.clone();
        let mut word = Vec::new();
        loop {
            match (0..=self.rank()).find(|&i| self.is_left_descent(&cur, i)) {
                Some(i) => {
                    word.push(i as u8);
                    cur = self.left_mul_simple(i, &cur);
                }
                None => break,
            }
        }
        let t = self.omega_part(&cur);
        debug_assert_eq!(cur, self.omega[t]);
        (word, t)
    }

    /// `s0.s1*t1` style rendering; `e` for the identity word.
    pub fn format(&self, x: &Elt) -> String {
        let (word, t) = self.reduced_word(x);
        let mut s = if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(".")
        };
        if t != 0 {
            s.push_str(&format!("*t{}", self.omega_nodes[t]));
        }
        s
    }

    /// Parses the `format` rendering back into an element.
    pub fn parse(&self, s: &str) -> Result<Elt> {
        let (word, tau) = match s.split_once('*') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let mut x = self.identity();
        if word.trim() != "e" {
            for letter in word.split('.') {
                let i: usize = letter
                    .trim()
                    .strip_prefix('s')
                    .and_then(|n| n.parse().ok())
                    .filter(|&i| i <= self.rank())
                    .ok_or_else(|| Error::Parse(format!("bad generator {letter:?} in {s:?}")))?;
                x = self.mul(&x, self.simple(i));
            }
        }
        if let Some(t) = tau {
            let j: usize = t
                .trim()
                .strip_prefix('t')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad Omega part {t:?}")))?;
            let idx = self
                .omega_index_of_node(j)
                .ok_or_else(|| Error::Parse(format!("no Omega element t{j}")))?;
            x = self.mul(&x, &self.omega[idx]);
        }
        Ok(x)
    }

    /// Bruhat order, via the lifting property along right descents of `y`.
    pub fn bruhat_leq(&self, x: &Elt, y: &Elt) -> bool {
        if self.omega_part(x) != self.omega_part(y) {
            return false;
        }
        let (mut x, mut y) = (x.clone(), y.clone());
        loop {
            let (lx, ly) = (self.length(&x), self.length(&y));
            if lx > ly {
                return false;
            }
            if lx == ly {
                return x == y;
            }
            let s = (0..=self.rank())
                .find(|&i| self.is_right_descent(&y, i))
                .expect("positive length has a descent");
            y = self.right_mul_simple(&y, s);
            if self.is_right_descent(&x, s) {
                x = self.right_mul_simple(&x, s);
            }
        }
    }

    /// `{x : x <= y}` as the set of subword products of a reduced word of `y`.
    pub fn ideal_subword(&self, y: &Elt) -> HashSet<Elt> {
        let (word, t) = self.reduced_word(y);
        let mut set: HashSet<Elt> = HashSet::new();
        set.insert(self.omega[t].clone());
        for &i in word.iter().rev() {
            let new: Vec<Elt> = set.iter().map(|x| self.left_mul_simple(i as usize, x)).collect();
            set.extend(new);
        }
        set
    }

    /// Hyperplanes `(beta, k)` with `beta > 0` separating `a` from `y(a)`.
    pub fn separating_hyperplanes(&self, y: &Elt) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for b in 0..self.datum.num_positive() {
            let f = self.floor(y, b);
            let ks = if f >= 1 { 1..=f } else { f + 1..=0 };
            for k in ks {
                out.push((b, k));
            }
        }
        out
    }

    /// `{x : x <= y}` by downward reflection BFS.
    pub fn ideal_bfs(&self, y: &Elt) -> HashSet<Elt> {
        self.ideal_bfs_filtered(y, |_| true)
    }

    /// Downward reflection BFS using only reflections whose root passes `keep`.
    pub fn ideal_bfs_filtered<F: Fn(usize) -> bool>(&self, y: &Elt, keep: F) -> HashSet<Elt> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(y.clone());
        queue.push_back(y.clone());
        while let Some(z) = queue.pop_front() {
            for (b, k) in self.separating_hyperplanes(&z) {
                if !keep(b) {
                    continue;
                }
                let nz = self.mul(&self.affine_reflection(b, k), &z);
                if seen.insert(nz.clone()) {
                    queue.push_back(nz);
                }
            }
        }
        seen
    }

    /// Minimal length element of `W_K x`.
    pub fn min_coset_rep(&self, k: NodeSet, x: &Elt) -> Elt {
        let mut cur = x.clone();
        while let Some(i) = k.iter().find(|&i| self.is_left_descent(&cur, i)) {
            cur = self.left_mul_simple(i, &cur);
        }
        cur
    }

    /// Minimal length element of `x W_K`.
    pub fn min_right_coset_rep(&self, x: &Elt, k: NodeSet) -> Elt {
        let mut cur = x.clone();
        while let Some(i) = k.iter().find(|&i| self.is_right_descent(&cur, i)) {
            cur = self.right_mul_simple(&cur, i);
        }
        cur
    }

    pub fn is_min_in_left_coset(&self, k: NodeSet, x: &Elt) -> bool {
        k.iter().all(|i| !self.is_left_descent(x, i))
    }

    /// `W_K` is finite iff K misses a node of the (connected) affine diagram.
    pub fn is_finite_parabolic(&self, k: NodeSet) -> bool {
        !NodeSet::full(self.rank()).is_subset(&k)
    }

    /// All elements of `W_K`, or an error when it is infinite or exceeds `cap`.
    pub fn parabolic_elements(&self, k: NodeSet, cap: usize) -> Result<Vec<Elt>> {
        let mut seen = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut head = 0;
        while head < out.len() {
            for i in k.iter() {
                let n = self.mul(&out[head], self.simple(i));
                if seen.insert(n.clone()) {
                    if out.len() >= cap {
                        return Err(Error::Invalid(format!("W_K for K={k:?} exceeds {cap} elements")));
                    }
                    out.push(n);
                }
            }
            head += 1;
        }
        Ok(out)
    }

    /// The W0-orbit of an integral coweight, sorted.
    pub fn orbit(&self, lam: &[i64]) -> Vec<Lat> {
        let w0 = self.datum.weyl();
        let set: BTreeSet<Lat> = w0.elements().map(|w| w0.act_int(w, lam).into_iter().collect()).collect();
        set.into_iter().collect()
    }

    /// Affine node adjacency in the affine Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let d = &self.datum;
        let root_of = |n: usize| if n == 0 { d.negate_root(d.highest_root()) } else { d.simple_root(n) };
        let (ri, rj) = (root_of(i), root_of(j));
        let cv: Vec<i64> = d.coroot(ri).to_vec();
        d.pair_int(&cv, rj) != 0
    }

    /// Sort key for deterministic reports.
    pub fn sort_key(&self, x: &Elt) -> (usize, String) {
        (self.length(x), self.format(x))
    }

    pub fn sorted(&self, set: impl IntoIterator<Item = Elt>) -> Vec<Elt> {
        let mut v: Vec<(usize, String, Elt)> = set
            .into_iter()
            .map(|x| {
                let (l, s) = self.sort_key(&x);
                (l, s, x)
            })
            .collect();
        v.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        v.into_iter().map(|t| t.2).collect()
    }

    pub fn s_theta(&self) -> WIdx {
        self.s_theta
    }

    pub fn is_zero_lat(lam: &[i64]) -> bool {
        lam.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::CartanType;

    fn group(t: CartanType, r: usize) -> AffineWeyl {
        AffineWeyl::new(Arc::new(RootDatum::new(t, r).unwrap())).unwrap()
    }

    fn small_types() -> Vec<(CartanType, usize)> {
        use CartanType::*;
        vec![(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (D, 4)]
    }

    /// Elements of length <= n by BFS on words, with the word length found.
    fn bfs_lengths(g: &AffineWeyl, n: usize) -> HashMap<Elt, usize> {
        let mut dist = HashMap::new();
        let mut frontier = Vec::new();
        for t in g.omega_elements() {
            dist.insert(t.clone(), 0);
            frontier.push(t.clone());
        }
        for d in 1..=n {
            let mut next = Vec::new();
            for x in &frontier {
                for i in 0..=g.rank() {
                    let y = g.left_mul_simple(i, x);
                    if !dist.contains_key(&y) {
                        dist.insert(y.clone(), d);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    #[test]
    fn length_matches_word_bfs() {
        for (t, r) in small_types() {
            let g = group(t, r);
            let n = if r >= 3 { 4 } else { 6 };
            for (x, d) in bfs_lengths(&g, n) {
                assert_eq!(g.length(&x), d, "{t}{r} {x:?}");
                assert_eq!(g.length_im(&x), d, "{t}{r} {x:?}");
            }
        }
    }

    #[test]
    fn length_examples() {
        let a1 = group(CartanType::A, 1);
        assert_eq!(a1.length(&a1.translation(&[2])), 2);
        let a2 = group(CartanType::A, 2);
        assert_eq!(a2.length(&a2.translation(&[1, 0])), 2);
        for t in a2.omega_elements() {
            assert_eq!(a2.length(t), 0);
        }
        assert_eq!(a1.length(a1.simple(0)), 1);
    }

    #[test]
    fn omega_group_orders() {
        let expect = [(CartanType::A, 3, 4), (CartanType::B, 3, 2), (CartanType::C, 2, 2), (CartanType::D, 4, 4)];
        for (t, r, n) in expect {
            let g = group(t, r);
            assert_eq!(g.omega_elements().len(), n);
            let om = g.omega_elements();
            for a in om {
                for b in om {
                    let c = g.mul(a, b);
                    assert_eq!(g.length(&c), 0);
                    assert!(om.contains(&c));
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let a1 = group(CartanType::A, 1);
        let zero = QVec::zeros(1);
        assert_eq!(a1.act(a1.simple(0), &zero), QVec::from_ints([2]));
        assert_eq!(a1.act(&a1.translation(&[3]), &zero), QVec::from_ints([3]));
        let v = QVec(vec![crate::rational::qr(1, 3)]);
        assert_eq!(a1.act(&a1.identity(), &v), v);
    }

    #[test]
    fn reduced_word_roundtrip() {
        for (t, r) in small_types() {
            let g = group(t, r);
            for (x, _) in bfs_lengths(&g, 3) {
                let (w, _) = g.reduced_word(&x);
                assert_eq!(w.len(), g.length(&x));
                assert_eq!(g.parse(&g.format(&x)).unwrap(), x);
            }
        }
        let a1 = group(CartanType::A, 1);
        assert_eq!(a1.format(&a1.translation(&[1])), "s0*t1");
        assert!(a1.parse("s2").is_err());
        assert!(a1.parse("s1*t5").is_err());
    }

    #[test]
    fn bruhat_matches_both_ideal_constructions() {
        for (t, r) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::C, 2), (CartanType::B, 3), (CartanType::A, 3)] {
            let g = group(t, r);
            let n = if r >= 3 { 4 } else { 6 };
            let elts: Vec<Elt> = bfs_lengths(&g, n).into_keys().collect();
            for y in elts.iter().filter(|y| g.length(y) <= n) {
                let a = g.ideal_subword(y);
                let b = g.ideal_bfs(y);
                assert_eq!(a, b, "{t}{r} {}", g.format(y));
                if r <= 2 {
                    for x in &elts {
                        assert_eq!(g.bruhat_leq(x, y), a.contains(x));
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let a1 = group(CartanType::A, 1);
        let t = a1.translation(&[1]);
        assert!(a1.bruhat_leq(&t, &t));
        let tau = &a1.omega_elements()[1];
        assert!(a1.bruhat_leq(tau, &t));
        assert!(!a1.bruhat_leq(a1.simple(1), &t));
        assert!(!a1.bruhat_leq(&a1.identity(), tau));
    }

    #[test]
    fn coset_representatives() {
        let a2 = group(CartanType::A, 2);
        let k = NodeSet::from_iter([1]);
        let x = a2.translation(&[1, 0]);
        let s1x = a2.left_mul_simple(1, &x);
        let (lx, ls) = (a2.length(&x), a2.length(&s1x));
        let rep = a2.min_coset_rep(k, &x);
        assert_eq!(rep, if ls < lx { s1x.clone() } else { x.clone() });
        // exhaustive check of the coset
        let coset = [x.clone(), s1x];
        let min = coset.iter().min_by_key(|y| a2.length(y)).unwrap();
        assert_eq!(&rep, min);
        assert_eq!(a2.min_coset_rep(NodeSet::empty(), &x), x);
        assert_eq!(a2.min_coset_rep(k, &rep), rep);
    }

    #[test]
    fn finite_parabolic_matches_enumeration() {
        for (t, r) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::C, 2), (CartanType::B, 3), (CartanType::A, 3), (CartanType::C, 3)] {
            let g = group(t, r);
            for k in NodeSet::full(r).subsets() {
                let enumerated = g.parabolic_elements(k, 5000).is_ok();
                assert_eq!(g.is_finite_parabolic(k), enumerated, "{t}{r} {k:?}");
            }
        }
        let a2 = group(CartanType::A, 2);
        assert_eq!(a2.parabolic_elements(NodeSet::from_iter([0, 1]), 100).unwrap().len(), 6);
    }

    #[test]
    fn group_axioms_on_samples() {
        let g = group(CartanType::C, 3);
        let elts: Vec<Elt> = bfs_lengths(&g, 3).into_keys().take(40).collect();
        for a in &elts {
            assert_eq!(g.mul(a, &g.inverse(a)), g.identity());
            assert_eq!(g.length(&g.inverse(a)), g.length(a));
            for b in elts.iter().take(10) {
                for c in elts.iter().take(5) {
                    assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                }
                assert!(g.length(&g.mul(a, b)) <= g.length(a) + g.length(b));
            }
        }
    }

    #[test]
    fn translations_have_length_two_rho() {
        for (t, r) in small_types() {
            let g = group(t, r);
            for i in 0..r {
                let mut lam = vec![0; r];
                lam[i] = 1;
                let expected = g.datum().two_rho()[i] as usize;
                for l in g.orbit(&lam) {
                    assert_eq!(g.length(&g.translation(&l)), expected);
                }
            }
        }
    }

    #[test]
    fn subsets_enumerates_all() {
        let s = NodeSet::from_iter([0, 2, 3]);
        let all: Vec<NodeSet> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(&s)));
    }
}
