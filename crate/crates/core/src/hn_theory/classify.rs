//! Exhaustive scan of small triples against the classification table.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine_weyl::{AffMap, AffineWeyl, NodeSet};
use crate::error::{Error, Result};
use crate::frobenius::{enumerate_sigmas, identity_perm, varsigma0, Frobenius, GroupInstance};
use crate::rational::QVec;
use crate::root_datum::{CartanType, RootDatum};

use super::{is_fully_hn, is_minute};

/// Affine types covered by the default scan.
pub fn default_scan_cases() -> Vec<(CartanType, usize)> {
    use CartanType::*;
    vec![(A, 1), (A, 2), (A, 3), (A, 4), (B, 3), (C, 2), (C, 3), (D, 4)]
}

pub fn build_group(t: CartanType, r: usize) -> Result<Arc<AffineWeyl>> {
    Ok(Arc::new(AffineWeyl::new(Arc::new(RootDatum::new(t, r)?))?))
}

/// Nonzero dominant coweights with `<mu, 2 rho> <= bound`.
pub fn dominant_coweights_bounded(d: &RootDatum, bound: i64) -> Vec<Vec<i64>> {
    let tr = d.two_rho();
    let ranges: Vec<Vec<i64>> = tr.iter().map(|&c| (0..=bound / c).collect()).collect();
    let mut out: Vec<Vec<i64>> = ranges
        .into_iter()
        .multi_cartesian_product()
        .filter(|mu| mu.iter().any(|&x| x != 0))
        .filter(|mu| mu.iter().zip(tr).map(|(a, b)| a * b).sum::<i64>() <= bound)
        .collect();
    out.sort_by_key(|mu| (mu.iter().zip(tr).map(|(a, b)| a * b).sum::<i64>(), mu.clone()));
    out
}

fn unit(r: usize, idx: &[usize]) -> Vec<i64> {
    let mut v = vec![0; r];
    for &i in idx {
        v[i - 1] += 1;
    }
    v
}

/// One row of the classification table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub label: String,
    pub mu: Vec<i64>,
    pub sigma: Arc<Frobenius>,
}

/// Rows of the classification table that exist for this affine type.
pub fn table_rows(g: &Arc<AffineWeyl>) -> Result<Vec<TableRow>> {
    let d = g.datum();
    let r = g.rank();
    let name = format!("{}~", d.name());
    let id = identity_perm(r);
    let mut rows: Vec<(String, Vec<i64>, usize, Vec<usize>)> = Vec::new();
    match d.cartan_type {
        CartanType::A => {
            rows.push(("w1, id".into(), unit(r, &[1]), 0, id.clone()));
            rows.push((format!("w1, t{r}"), unit(r, &[1]), r, id.clone()));
            if r >= 2 {
                rows.push(("w1, varsigma0".into(), unit(r, &[1]), 0, varsigma0(d)));
            }
            if r >= 3 && r % 2 == 1 {
                rows.push(("w1, t1*varsigma0".into(), unit(r, &[1]), 1, varsigma0(d)));
            }
            rows.push((format!("w1+w{r}, id"), unit(r, &[1, r]), 0, id.clone()));
            if r == 3 {
                rows.push(("w2, id".into(), unit(r, &[2]), 0, id.clone()));
                rows.push(("w2, varsigma0".into(), unit(r, &[2]), 0, varsigma0(d)));
                rows.push(("w2, t2".into(), unit(r, &[2]), 2, id.clone()));
            }
        }
        CartanType::B => {
            rows.push(("w1, id".into(), unit(r, &[1]), 0, id.clone()));
            rows.push(("w1, t1".into(), unit(r, &[1]), 1, id.clone()));
        }
        CartanType::C => {
            rows.push(("w1, id".into(), unit(r, &[1]), 0, id.clone()));
            if r == 2 {
                rows.push(("w2, id".into(), unit(r, &[2]), 0, id.clone()));
                rows.push(("w2, t2".into(), unit(r, &[2]), 2, id.clone()));
            }
        }
        CartanType::D => {
            rows.push(("w1, id".into(), unit(r, &[1]), 0, id.clone()));
            rows.push(("w1, varsigma0".into(), unit(r, &[1]), 0, varsigma0(d)));
            // The literal composite swaps only 0 and 1 and is conjugate to varsigma0
            // under Omega; the distinct order-two twist is 0<->1, r-1<->r.
            rows.push(("w1, t1*varsigma0".into(), unit(r, &[1]), 1, id.clone()));
        }
    }
    rows.into_iter()
        .map(|(label, mu, node, diag)| {
            Ok(TableRow { label: format!("({name}, {label})"), mu, sigma: Arc::new(Frobenius::from_node(g.clone(), node, diag)?) })
        })
        .collect()
}

/// Table rows closed under conjugation by all diagram automorphisms.
pub struct TableIndex {
    map: HashMap<(Vec<i64>, AffMap), String>,
    pub rows: Vec<TableRow>,
}

impl TableIndex {
    pub fn new(g: &Arc<AffineWeyl>) -> Result<Self> {
        let rows = table_rows(g)?;
        let d = g.datum();
        let auts = enumerate_sigmas(g);
        let mut map = HashMap::new();
        for row in &rows {
            for phi in &auts {
                let img = phi.linear_apply_q(&QVec::from_ints(row.mu.iter().copied()));
                let mu = d
                    .dominant_representative(&img)
                    .0
                    .to_ints()
                    .ok_or_else(|| Error::Internal("non-integral image of mu".into()))?;
                let s = row.sigma.conjugate_by(phi)?;
                map.entry((mu, s.affine_map().clone())).or_insert_with(|| row.label.clone());
            }
        }
        Ok(TableIndex { map, rows })
    }

    pub fn lookup(&self, mu: &[i64], sigma: &Frobenius) -> Option<&str> {
        self.map.get(&(mu.to_vec(), sigma.affine_map().clone())).map(String::as_str)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub group: String,
    pub mu: Vec<i64>,
    pub sigma: String,
    pub minute: bool,
    pub fully_hn: bool,
    pub table_row: Option<String>,
}

impl ScanRow {
    pub fn agrees(&self) -> bool {
        self.minute == self.fully_hn && self.minute == self.table_row.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub instances: usize,
    pub rows: Vec<ScanRow>,
    /// Table rows realized by some minute instance.
    pub reconstructed: Vec<String>,
    /// Table rows within the bound that no instance realized.
    pub missing: Vec<String>,
    pub discrepancies: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty() && self.missing.is_empty()
    }
}

/// Every `(type, mu, sigma)` with `0 < <mu, 2 rho> <= bound`: minute, fully
/// Hodge-Newton decomposable and table membership must agree.
pub fn classification_scan(cases: &[(CartanType, usize)], bound: i64) -> Result<ScanReport> {
    let mut work = Vec::new();
    let mut expected = BTreeSet::new();
    for &(t, r) in cases {
        let g = build_group(t, r)?;
        let index = Arc::new(TableIndex::new(&g)?);
        for row in &index.rows {
            let two_rho: i64 = row.mu.iter().zip(g.datum().two_rho()).map(|(a, b)| a * b).sum();
            if two_rho <= bound {
                expected.insert(row.label.clone());
            }
        }
        let sigmas: Vec<Arc<Frobenius>> = enumerate_sigmas(&g).into_iter().map(Arc::new).collect();
        for mu in dominant_coweights_bounded(g.datum(), bound) {
            for s in &sigmas {
                work.push((index.clone(), s.clone(), mu.clone()));
            }
        }
    }
    let rows: Vec<ScanRow> = work
        .par_iter()
        .map(|(index, s, mu)| {
            let inst = GroupInstance::new(s.clone(), mu, NodeSet::empty())?;
            Ok(ScanRow {
                group: format!("{}~", inst.datum().name()),
                mu: mu.clone(),
                sigma: s.label(),
                minute: is_minute(s, mu),
                fully_hn: is_fully_hn(&inst),
                table_row: index.lookup(mu, s).map(str::to_string),
            })
        })
        .collect::<Result<_>>()?;
    let reconstructed: BTreeSet<String> = rows.iter().filter_map(|r| r.table_row.clone()).collect();
    let missing = expected.difference(&reconstructed).cloned().collect();
    let discrepancies = rows
        .iter()
        .filter(|r| !r.agrees())
        .map(|r| {
            format!(
                "{} mu={:?} sigma={}: minute={} fully_hn={} table={:?}",
                r.group, r.mu, r.sigma, r.minute, r.fully_hn, r.table_row
            )
        })
        .collect();
    Ok(ScanReport { instances: rows.len(), rows, reconstructed: reconstructed.into_iter().collect(), missing, discrepancies })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_coweights() {
        let d = RootDatum::new(CartanType::A, 1).unwrap();
        assert_eq!(dominant_coweights_bounded(&d, 3), vec![vec![1], vec![2], vec![3]]);
        let d = RootDatum::new(CartanType::A, 2).unwrap();
        assert!(dominant_coweights_bounded(&d, 6).contains(&vec![1, 1]));
    }

    #[test]
    fn small_scan_agrees() {
        let rep = classification_scan(&[(CartanType::A, 1), (CartanType::A, 2), (CartanType::C, 2)], 6).unwrap();
        assert!(rep.discrepancies.is_empty(), "{:#?}", rep.discrepancies);
        assert!(rep.missing.is_empty(), "{:?}", rep.missing);
        assert!(rep.reconstructed.contains(&"(C2~, w2, t2)".to_string()));
    }

    #[test]
    fn table_membership_examples() {
        let g = build_group(CartanType::A, 3).unwrap();
        let idx = TableIndex::new(&g).unwrap();
        let t2 = Frobenius::from_node(g.clone(), 2, identity_perm(3)).unwrap();
        assert!(idx.lookup(&[0, 1, 0], &t2).is_some());
        let b = build_group(CartanType::B, 3).unwrap();
        let idx = TableIndex::new(&b).unwrap();
        let id = Frobenius::identity(b.clone());
        assert!(idx.lookup(&[1, 0, 0], &id).is_some());
        assert!(idx.lookup(&[0, 1, 0], &id).is_none());
    }
}
