//! Exact feasibility of small rational polyhedra by Fourier-Motzkin elimination.

use num_traits::{Signed, Zero};

use crate::rational::{solve_affine, QMat, QVec, Q};

/// `a . x <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ineq {
    pub a: QVec,
    pub b: Q,
}

#[derive(Clone, Debug, Default)]
pub struct Polyhedron {
    dim: usize,
    ineqs: Vec<Ineq>,
    eqs: Vec<Ineq>,
}

impl Polyhedron {
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn leq(&mut self, a: QVec, b: Q) -> &mut Self {
        self.ineqs.push(Ineq { a, b });
        self
    }

    pub fn geq(&mut self, a: QVec, b: Q) -> &mut Self {
        self.ineqs.push(Ineq { a: -&a, b: -b });
        self
    }

    pub fn eq(&mut self, a: QVec, b: Q) -> &mut Self {
        self.eqs.push(Ineq { a, b });
        self
    }

    /// Some point of the polyhedron, or `None` if it is empty.
    pub fn find_point(&self) -> Option<QVec> {
        let n = self.dim;
        let (p, kernel) = if self.eqs.is_empty() {
            let kernel = (0..n)
                .map(|i| {
                    let mut e = QVec::zeros(n);
                    e[i] = Q::from_integer(1);
                    e
                })
                .collect();
            (QVec::zeros(n), kernel)
        } else {
            let mut m = QMat::zeros(self.eqs.len(), n);
            for (i, e) in self.eqs.iter().enumerate() {
                for j in 0..n {
                    m.set(i, j, e.a[j]);
                }
            }
            let b = QVec(self.eqs.iter().map(|e| e.b).collect());
            solve_affine(&m, &b)?
        };
        // x = p + sum t_k kernel_k
        let reduced: Vec<Ineq> = self
            .ineqs
            .iter()
            .map(|c| Ineq {
                a: QVec(kernel.iter().map(|k| c.a.dot(k)).collect()),
                b: c.b - c.a.dot(&p),
            })
            .collect();
        let t = fm_point(kernel.len(), reduced)?;
        let mut x = p;
        for (tk, k) in t.iter().zip(&kernel) {
            x = &x + &k.scale(*tk);
        }
        Some(x)
    }

    pub fn is_feasible(&self) -> bool {
        self.find_point().is_some()
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.ineqs.iter().all(|c| c.a.dot(x) <= c.b) && self.eqs.iter().all(|c| c.a.dot(x) == c.b)
    }
}

fn normalize(c: Ineq) -> Ineq {
    let lead = c.a.iter().find(|x| !x.is_zero()).map(|x| x.abs());
    match lead {
        Some(s) => Ineq { a: c.a.scale(s.recip()), b: c.b / s },
        None => c,
    }
}

/// Eliminates the last variable repeatedly, then back-substitutes.
fn fm_point(n: usize, sys: Vec<Ineq>) -> Option<QVec> {
    let mut stages: Vec<Vec<Ineq>> = Vec::with_capacity(n + 1);
    let mut cur = sys;
    for k in (0..n).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in &cur {
            let x = c.a[k];
            if x.is_positive() {
                pos.push(c.clone());
            } else if x.is_negative() {
                neg.push(c.clone());
            } else {
                rest.push(c.clone());
            }
        }
        for p in &pos {
            for m in &neg {
                let (fp, fm) = (-m.a[k], p.a[k]);
                let c = Ineq { a: &p.a.scale(fp) + &m.a.scale(fm), b: p.b * fp + m.b * fm };
                rest.push(normalize(c));
            }
        }
        rest.sort_by(|x, y| x.a.0.cmp(&y.a.0).then(x.b.cmp(&y.b)));
        rest.dedup();
        stages.push(std::mem::replace(&mut cur, rest));
    }
    if cur.iter().any(|c| c.b.is_negative()) {
        return None;
    }
    stages.reverse();
    let mut x = QVec::zeros(n);
    for (k, sys) in stages.iter().enumerate() {
        let (mut lo, mut hi): (Option<Q>, Option<Q>) = (None, None);
        for c in sys {
            let coef = c.a[k];
            if coef.is_zero() {
                continue;
            }
            let partial: Q = (0..k).map(|j| c.a[j] * x[j]).sum();
            let bound = (c.b - partial) / coef;
            if coef.is_positive() {
                hi = Some(hi.map_or(bound, |h| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound, |l| l.max(bound)));
            }
        }
        x[k] = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return None;
                }
                (l + h) / Q::from_integer(2)
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => Q::zero(),
        };
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn v(xs: &[i64]) -> QVec {
        QVec::from_ints(xs.iter().copied())
    }

    #[test]
    fn simplex_and_empty() {
        let mut p = Polyhedron::new(2);
        p.geq(v(&[1, 0]), q(0)).geq(v(&[0, 1]), q(0)).leq(v(&[1, 1]), q(1));
        let x = p.find_point().unwrap();
        assert!(p.contains(&x));
        p.geq(v(&[1, 1]), qr(3, 2));
        assert!(p.find_point().is_none());
    }

    #[test]
    fn equality_constraints() {
        let mut p = Polyhedron::new(3);
        for i in 0..3 {
            let mut e = QVec::zeros(3);
            e[i] = q(1);
            p.geq(e, q(0));
        }
        p.leq(v(&[1, 1, 1]), q(1));
        p.eq(v(&[1, -1, 0]), q(0)).eq(v(&[0, 1, -1]), q(0));
        let x = p.find_point().unwrap();
        assert!(p.contains(&x));
        assert_eq!(x[0], x[2]);
        p.eq(v(&[1, 0, 0]), qr(1, 2));
        assert!(p.find_point().is_none());
    }
}
