//! Classical root data in Bourbaki labelling.
//!
//! Coweights (elements of V) are stored in fundamental-coweight coordinates,
//! `x_i = <v, alpha_i>`, so the coweight lattice is `Z^r`. Roots and weights
//! (elements of V*) are stored in simple-root coordinates. The natural pairing
//! is then the plain dot product.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{q, QMat, QVec, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            other => Err(Error::Unsupported(format!("cartan type {other:?}"))),
        }
    }
}

/// Largest finite Weyl group we are willing to tabulate.
pub const MAX_WEYL_ORDER: u64 = 50_000;

pub type WIdx = u32;

/// The finite Weyl group, fully tabulated.
#[derive(Clone, Debug)]
pub struct FiniteWeyl {
    rank: usize,
    mats: Vec<Vec<i64>>,
    root_perm: Vec<Vec<u16>>,
    words: Vec<Vec<u8>>,
    left: Vec<Vec<WIdx>>,
    inv: Vec<WIdx>,
    index: HashMap<Vec<i64>, WIdx>,
}

impl FiniteWeyl {
    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn identity(&self) -> WIdx {
        0
    }

    /// Matrix acting on coweight coordinates, row-major.
    pub fn matrix(&self, w: WIdx) -> &[i64] {
        &self.mats[w as usize]
    }

    /// Reduced word with letters in `1..=r`, leftmost factor first.
    pub fn word(&self, w: WIdx) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn length(&self, w: WIdx) -> usize {
        self.words[w as usize].len()
    }

    pub fn simple(&self, i: usize) -> WIdx {
        self.left[0][i - 1]
    }

    /// `s_i w`.
    pub fn left_simple(&self, i: usize, w: WIdx) -> WIdx {
        self.left[w as usize][i - 1]
    }

    pub fn mul(&self, u: WIdx, w: WIdx) -> WIdx {
        self.words[u as usize]
            .iter()
            .rev()
            .fold(w, |acc, &i| self.left[acc as usize][i as usize - 1])
    }

    pub fn inverse(&self, w: WIdx) -> WIdx {
        self.inv[w as usize]
    }

    /// Image of the root with index `root` under `w`.
    pub fn act_root(&self, w: WIdx, root: usize) -> usize {
        self.root_perm[w as usize][root] as usize
    }

    pub fn lookup(&self, mat: &[i64]) -> Option<WIdx> {
        self.index.get(mat).copied()
    }

    pub fn act_int(&self, w: WIdx, x: &[i64]) -> Vec<i64> {
        mat_vec(self.matrix(w), x, self.rank)
    }

    pub fn act_q(&self, w: WIdx, x: &QVec) -> QVec {
        let m = self.matrix(w);
        let r = self.rank;
        QVec((0..r).map(|i| (0..r).map(|j| q(m[i * r + j]) * x[j]).sum()).collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = WIdx> {
        0..self.mats.len() as WIdx
    }
}

pub fn mat_vec(m: &[i64], x: &[i64], r: usize) -> Vec<i64> {
    (0..r).map(|i| (0..r).map(|j| m[i * r + j] * x[j]).sum()).collect()
}

pub fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut c = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x != 0 {
                for j in 0..r {
                    c[i * r + j] += x * b[k * r + j];
                }
            }
        }
    }
    c
}

pub fn identity_mat(r: usize) -> Vec<i64> {
    let mut m = vec![0; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    pub rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    coroots_cr: Vec<Vec<i64>>,
    root_index: HashMap<Vec<i64>, usize>,
    npos: usize,
    theta: usize,
    marks: Vec<i64>,
    two_rho: Vec<i64>,
    to_coroot: QMat,
    gram: QMat,
    weyl: FiniteWeyl,
}

fn weyl_order(t: CartanType, r: usize) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    match t {
        CartanType::A => fact(r + 1),
        CartanType::B | CartanType::C => (1u64 << r) * fact(r),
        CartanType::D => (1u64 << (r - 1)) * fact(r),
    }
}

fn cartan_matrix(t: CartanType, r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        a[i][i] = 2;
    }
    let chain = match t {
        CartanType::D => r - 1,
        _ => r,
    };
    for i in 0..chain.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match t {
        CartanType::A => {}
        // alpha_r short: <alpha_{r-1}^vee, alpha_r> = -1, <alpha_r^vee, alpha_{r-1}> = -2
        CartanType::B => a[r - 1][r - 2] = -2,
        CartanType::C => a[r - 2][r - 1] = -2,
        CartanType::D => {
            a[r - 3][r - 1] = -1;
            a[r - 1][r - 3] = -1;
        }
    }
    a
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let min = match cartan_type {
            CartanType::A => 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 3,
        };
        if rank < min {
            return Err(Error::Unsupported(format!(
                "type {cartan_type} needs rank >= {min}, got {rank}"
            )));
        }
        if rank > 12 || weyl_order(cartan_type, rank) > MAX_WEYL_ORDER {
            return Err(Error::Unsupported(format!(
                "type {cartan_type}{rank}: Weyl group too large to tabulate"
            )));
        }
        let r = rank;
        let cartan = cartan_matrix(cartan_type, r);

        // roots with coroots, as a W-orbit of the simple (root, coroot) pairs
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((b, bv)) = queue.pop_front() {
            for i in 0..r {
                let p: i64 = (0..r).map(|j| b[j] * cartan[i][j]).sum();
                let pv: i64 = (0..r).map(|j| bv[j] * cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[i] -= p;
                let mut nbv = bv.clone();
                nbv[i] -= pv;
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), nbv.clone());
                    queue.push_back((nb, nbv));
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> =
            seen.into_iter().filter(|(b, _)| b.iter().all(|&c| c >= 0)).collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let npos = pos.len();
        let mut roots = Vec::with_capacity(2 * npos);
        let mut coroots_cr = Vec::with_capacity(2 * npos);
        for (b, bv) in &pos {
            roots.push(b.clone());
            coroots_cr.push(bv.clone());
        }
        for (b, bv) in &pos {
            roots.push(b.iter().map(|c| -c).collect());
            coroots_cr.push(bv.iter().map(|c| -c).collect());
        }
        let coroots: Vec<Vec<i64>> = coroots_cr
            .iter()
            .map(|d| (0..r).map(|k| (0..r).map(|i| d[i] * cartan[i][k]).sum()).collect())
            .collect();
        let root_index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        let theta = npos - 1;
        let mut marks = vec![1];
        marks.extend(roots[theta].iter().copied());
        let two_rho: Vec<i64> = (0..r).map(|k| roots[..npos].iter().map(|b| b[k]).sum()).collect();

        let a = QMat::from_ints(r, r, &cartan.concat());
        let to_coroot = a
            .transpose()
            .inverse()
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;

        // symmetrizer: (alpha_i^vee, alpha_j^vee) = A_ij d_j, short coroots of length^2 2
        let mut d: Vec<Option<Q>> = vec![None; r];
        d[0] = Some(Q::one());
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..r {
                for j in 0..r {
                    if i != j && cartan[i][j] != 0 {
                        if let (Some(di), None) = (d[i], d[j]) {
                            d[j] = Some(q(cartan[j][i]) * di / q(cartan[i][j]));
                            changed = true;
                        }
                    }
                }
            }
        }
        let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
        let dmin = *d.iter().min().unwrap();
        let mut g = QMat::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                g.set(i, j, q(cartan[i][j]) * d[j] / dmin);
            }
        }
        let gram = to_coroot.transpose().mul(&g).mul(&to_coroot);

        let weyl = build_weyl(&cartan, &roots, &root_index);
        Ok(RootDatum {
            cartan_type,
            rank,
            cartan,
            roots,
            coroots,
            coroots_cr,
            root_index,
            npos,
            theta,
            marks,
            two_rho,
            to_coroot,
            gram,
            weyl,
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn weyl(&self) -> &FiniteWeyl {
        &self.weyl
    }

    /// `<alpha_i^vee, alpha_j>` with nodes `1..=r`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        2 * self.npos
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.npos
    }

    pub fn negate_root(&self, root: usize) -> usize {
        if root < self.npos {
            root + self.npos
        } else {
            root - self.npos
        }
    }

    /// Root in simple-root coordinates.
    pub fn root(&self, idx: usize) -> &[i64] {
        &self.roots[idx]
    }

    /// Coroot of root `idx` in fundamental-coweight coordinates.
    pub fn coroot(&self, idx: usize) -> &[i64] {
        &self.coroots[idx]
    }

    /// Coroot of root `idx` in simple-coroot coordinates.
    pub fn coroot_in_coroot_basis(&self, idx: usize) -> &[i64] {
        &self.coroots_cr[idx]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn simple_root(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank];
        e[i - 1] = 1;
        self.root_index[&e]
    }

    pub fn highest_root(&self) -> usize {
        self.theta
    }

    /// Alcove marks `a_0 = 1, a_1, .., a_r`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// `2 rho` in simple-root coordinates.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn pair_int(&self, lam: &[i64], root: usize) -> i64 {
        lam.iter().zip(&self.roots[root]).map(|(a, b)| a * b).sum()
    }

    pub fn pair_q(&self, v: &QVec, root: usize) -> Q {
        v.iter().zip(&self.roots[root]).map(|(a, &b)| a * q(b)).sum()
    }

    /// Pairing of a coweight with a weight given in simple-root coordinates.
    pub fn pair_weight(&self, v: &QVec, weight: &QVec) -> Q {
        v.dot(weight)
    }

    pub fn pair_two_rho(&self, v: &QVec) -> Q {
        v.iter().zip(&self.two_rho).map(|(a, &b)| a * q(b)).sum()
    }

    /// Fundamental weight `omega_j` in simple-root coordinates.
    pub fn fundamental_weight(&self, j: usize) -> QVec {
        self.to_coroot.row(j - 1)
    }

    /// Fundamental coweight `omega_j^vee` in coweight coordinates.
    pub fn fundamental_coweight(&self, j: usize) -> QVec {
        let mut v = QVec::zeros(self.rank);
        v[j - 1] = Q::one();
        v
    }

    /// `sum_{i in orbit} omega_i`.
    pub fn weight_orbit_sum(&self, orbit: &[usize]) -> Result<QVec> {
        let mut acc = QVec::zeros(self.rank);
        for &i in orbit {
            if i == 0 || i > self.rank {
                return Err(Error::Invalid(format!("node {i} out of range 1..={}", self.rank)));
            }
            acc = &acc + &self.fundamental_weight(i);
        }
        Ok(acc)
    }

    /// Coordinates of `v` in the simple-coroot basis.
    pub fn coroot_coords(&self, v: &QVec) -> QVec {
        self.to_coroot.apply(v)
    }

    /// W0-invariant inner product on V.
    pub fn inner(&self, a: &QVec, b: &QVec) -> Q {
        self.gram.apply(b).dot(a)
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn is_dominant(&self, v: &QVec) -> bool {
        v.iter().all(|x| !x.is_negative())
    }

    /// Dominant element of the W0-orbit of `v`, with a word `s_{i_1} .. s_{i_k}`
    /// (leftmost first) whose product sends `v` to it.
    pub fn dominant_representative(&self, v: &QVec) -> (QVec, Vec<u8>) {
        let mut x = v.clone();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| x[i].is_negative()) {
            x = self.reflect_simple(&x, i + 1);
            applied.push((i + 1) as u8);
        }
        applied.reverse();
        (x, applied)
    }

    pub fn reflect_simple(&self, v: &QVec, i: usize) -> QVec {
        let c = v[i - 1];
        let mut out = v.clone();
        for k in 0..self.rank {
            out[k] -= c * q(self.cartan[i - 1][k]);
        }
        out
    }

    /// Reflection `s_beta` applied to a rational coweight.
    pub fn reflect(&self, v: &QVec, root: usize) -> QVec {
        let c = self.pair_q(v, root);
        let cv = &self.coroots[root];
        QVec((0..self.rank).map(|k| v[k] - c * q(cv[k])).collect())
    }

    /// `true` when `v` is central, i.e. zero in the adjoint space.
    pub fn is_central(&self, v: &QVec) -> bool {
        v.is_zero()
    }

    /// Dominance order on V: `b - a` is a nonnegative combination of simple coroots.
    pub fn dominance_leq(&self, a: &QVec, b: &QVec) -> bool {
        self.coroot_coords(&(b - a)).iter().all(|x| !x.is_negative())
    }

    /// `<v, 2rho>` for the dominant conjugate of v equals `sum_{beta>0} |<v, beta>|`.
    pub fn abs_pair_two_rho(&self, v: &QVec) -> Q {
        (0..self.npos).map(|b| self.pair_q(v, b).abs()).sum()
    }

    pub fn is_zero_q(x: &Q) -> bool {
        x.is_zero()
    }
}

fn build_weyl(
    cartan: &[Vec<i64>],
    roots: &[Vec<i64>],
    root_index: &HashMap<Vec<i64>, usize>,
) -> FiniteWeyl {
    let r = cartan.len();
    let nroots = roots.len();
    let simple_mats: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut m = identity_mat(r);
            for j in 0..r {
                m[j * r + i] -= cartan[i][j];
            }
            m
        })
        .collect();
    let simple_perms: Vec<Vec<u16>> = (0..r)
        .map(|i| {
            roots
                .iter()
                .map(|b| {
                    let p: i64 = (0..r).map(|j| b[j] * cartan[i][j]).sum();
                    let mut nb = b.clone();
                    nb[i] -= p;
                    root_index[&nb] as u16
                })
                .collect()
        })
        .collect();

    let mut mats = vec![identity_mat(r)];
    let mut root_perm = vec![(0..nroots as u16).collect::<Vec<_>>()];
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut index = HashMap::new();
    index.insert(identity_mat(r), 0 as WIdx);
    let mut head = 0;
    while head < mats.len() {
        for i in 0..r {
            let m = mat_mul(&simple_mats[i], &mats[head], r);
            if index.contains_key(&m) {
                continue;
            }
            let perm: Vec<u16> =
                root_perm[head].iter().map(|&b| simple_perms[i][b as usize]).collect();
            let mut w = vec![(i + 1) as u8];
            w.extend_from_slice(&words[head]);
            index.insert(m.clone(), mats.len() as WIdx);
            mats.push(m);
            root_perm.push(perm);
            words.push(w);
        }
        head += 1;
    }
    let left: Vec<Vec<WIdx>> = mats
        .iter()
        .map(|m| (0..r).map(|i| index[&mat_mul(&simple_mats[i], m, r)]).collect())
        .collect();
    let mut fw = FiniteWeyl { rank: r, mats, root_perm, words, left, inv: vec![], index };
    fw.inv = (0..fw.order() as WIdx)
        .map(|w| {
            fw.words[w as usize]
                .iter()
                .fold(0 as WIdx, |acc, &i| fw.left[acc as usize][i as usize - 1])
        })
        .collect();
    fw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn all_types() -> Vec<(CartanType, usize)> {
        use CartanType::*;
        vec![(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (C, 2), (C, 3), (D, 3), (D, 4)]
    }

    #[test]
    fn bourbaki_cartan_matrices() {
        let b3 = RootDatum::new(CartanType::B, 3).unwrap();
        assert_eq!(b3.cartan(2, 3), -1);
        assert_eq!(b3.cartan(3, 2), -2);
        let c3 = RootDatum::new(CartanType::C, 3).unwrap();
        assert_eq!(c3.cartan(2, 3), -2);
        assert_eq!(c3.cartan(3, 2), -1);
        let d4 = RootDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(d4.cartan(2, 3), -1);
        assert_eq!(d4.cartan(2, 4), -1);
        assert_eq!(d4.cartan(3, 4), 0);
        assert_eq!(d4.cartan(1, 2), -1);
    }

    #[test]
    fn root_counts_and_weyl_orders() {
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            let expected_pos = match t {
                CartanType::A => r * (r + 1) / 2,
                CartanType::B | CartanType::C => r * r,
                CartanType::D => r * (r - 1),
            };
            assert_eq!(d.num_positive(), expected_pos, "{t}{r}");
            assert_eq!(d.weyl().order() as u64, weyl_order(t, r), "{t}{r}");
        }
    }

    #[test]
    fn marks_of_highest_root() {
        let b3 = RootDatum::new(CartanType::B, 3).unwrap();
        assert_eq!(b3.marks(), &[1, 1, 2, 2]);
        let c3 = RootDatum::new(CartanType::C, 3).unwrap();
        assert_eq!(c3.marks(), &[1, 2, 2, 1]);
        let d4 = RootDatum::new(CartanType::D, 4).unwrap();
        assert_eq!(d4.marks(), &[1, 1, 2, 1, 1]);
        // theta is the unique maximal positive root: theta - beta is a nonneg combination
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            let th = d.root(d.highest_root()).to_vec();
            for b in 0..d.num_positive() {
                assert!(th.iter().zip(d.root(b)).all(|(x, y)| x >= y));
            }
        }
    }

    #[test]
    fn fundamental_pairings() {
        let a1 = RootDatum::new(CartanType::A, 1).unwrap();
        let w = a1.fundamental_weight(1);
        assert_eq!(a1.fundamental_coweight(1).dot(&w), qr(1, 2));
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        let v = a2.fundamental_coweight(1);
        assert_eq!(v.dot(&a2.fundamental_weight(1)), qr(2, 3));
        assert_eq!(v.dot(&a2.fundamental_weight(2)), qr(1, 3));
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            for i in 1..=r {
                // <alpha_i^vee, omega_j> = delta_ij
                let cv = QVec::from_ints(d.coroot(d.simple_root(i)).iter().copied());
                for j in 1..=r {
                    let expect = if i == j { q(1) } else { q(0) };
                    assert_eq!(cv.dot(&d.fundamental_weight(j)), expect);
                    // <omega_i^vee, alpha_j> = delta_ij
                    assert_eq!(d.pair_q(&d.fundamental_coweight(i), d.simple_root(j)), expect);
                }
            }
        }
    }

    #[test]
    fn cartan_row_is_pairing_row() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        assert_eq!(a2.coroot(a2.simple_root(1)), &[2, -1]);
    }

    #[test]
    fn inner_product_is_invariant_and_positive() {
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            assert!(d.gram().is_positive_definite(), "{t}{r}");
            let basis: Vec<QVec> = (1..=r).map(|i| d.fundamental_coweight(i)).collect();
            for i in 1..=r {
                for a in &basis {
                    for b in &basis {
                        let sa = d.reflect_simple(a, i);
                        let sb = d.reflect_simple(b, i);
                        assert_eq!(d.inner(&sa, &sb), d.inner(a, b));
                    }
                }
            }
            // short coroots have squared length 2
            let min = (0..d.num_positive())
                .map(|b| {
                    let v = QVec::from_ints(d.coroot(b).iter().copied());
                    d.inner(&v, &v)
                })
                .min()
                .unwrap();
            assert_eq!(min, q(2));
        }
    }

    #[test]
    fn weyl_root_action_is_compatible_with_pairing() {
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            let w0 = d.weyl();
            let v: Vec<i64> = (0..r as i64).map(|i| 3 * i - 1).collect();
            for w in w0.elements() {
                let wv = w0.act_int(w, &v);
                for b in 0..d.num_roots() {
                    assert_eq!(d.pair_int(&wv, w0.act_root(w, b)), d.pair_int(&v, b));
                }
                assert_eq!(w0.mul(w, w0.inverse(w)), w0.identity());
            }
        }
    }

    #[test]
    fn dominant_representative_examples() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        let v = -&a2.fundamental_coweight(1);
        let (dom, word) = a2.dominant_representative(&v);
        assert_eq!(dom, a2.fundamental_coweight(2));
        let mut x = v.clone();
        for &i in word.iter().rev() {
            x = a2.reflect_simple(&x, i as usize);
        }
        assert_eq!(x, dom);
        // brute-force orbit oracle
        let w0 = a2.weyl();
        let orbit: Vec<QVec> = w0.elements().map(|w| w0.act_q(w, &v)).collect();
        let doms: Vec<&QVec> = orbit.iter().filter(|u| a2.is_dominant(u)).collect();
        assert!(doms.iter().all(|u| **u == dom));

        let a1 = RootDatum::new(CartanType::A, 1).unwrap();
        let (dom, word) = a1.dominant_representative(&QVec::from_ints([-1]));
        assert_eq!(dom, QVec::from_ints([1]));
        assert_eq!(word, vec![1]);
        let (dom2, word2) = a1.dominant_representative(&dom);
        assert_eq!(dom2, dom);
        assert!(word2.is_empty());
    }

    #[test]
    fn weight_orbit_sums() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        let rho = QVec(a2.two_rho().iter().map(|&x| qr(x, 2)).collect());
        assert_eq!(a2.weight_orbit_sum(&[1, 2]).unwrap(), rho);
        assert_eq!(a2.weight_orbit_sum(&[1]).unwrap(), a2.fundamental_weight(1));
        assert!(a2.weight_orbit_sum(&[3]).is_err());
    }

    #[test]
    fn two_rho_pairing_matches_root_sum() {
        for (t, r) in all_types() {
            let d = RootDatum::new(t, r).unwrap();
            for i in 1..=r {
                let v = d.fundamental_coweight(i);
                let s: Q = (0..d.num_positive()).map(|b| d.pair_q(&v, b)).sum();
                assert_eq!(d.pair_two_rho(&v), s);
            }
        }
        let c2 = RootDatum::new(CartanType::C, 2).unwrap();
        assert_eq!(c2.two_rho(), &[4, 3]);
        let b3 = RootDatum::new(CartanType::B, 3).unwrap();
        assert_eq!(b3.two_rho(), &[5, 8, 9]);
    }

    #[test]
    fn unsupported_inputs() {
        assert!(RootDatum::new(CartanType::B, 1).is_err());
        assert!(RootDatum::new(CartanType::D, 2).is_err());
        assert!(RootDatum::new(CartanType::A, 12).is_err());
    }
}
