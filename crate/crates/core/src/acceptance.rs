//! The acceptance suite: eight criteria, each returning a verdict with detail.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adlv_oracle::{dim_table, ekor_newton_violations, DlOracle};
use crate::admissible::{adm, adm_cap_kw, adm_of, adm_spade, verify_additivity, verify_weak_additivity_spade};
use crate::affine_weyl::{AffineWeyl, Elt, NodeSet};
use crate::conditions::evaluate_conditions;
use crate::error::{Error, Result};
use crate::frobenius::{enumerate_sigmas, sigma_stable_levels, Frobenius, GroupInstance};
use crate::hn_decomp::verify_adm_decomposition;
use crate::hn_theory::{
    build_group, classification_scan, coxeter_formula_mismatches, default_scan_cases, dominant_coweights_bounded,
    fc_condition, has_fixed_point_in_closed_alcove, table_rows, witness_search_maximal,
};
use crate::root_datum::CartanType;
use crate::sigma_conj::{
    b_g_mu_via_criterion, b_g_mu_via_straight, extremal_classes, is_straight, is_straight_by_powers, kottwitz,
    newton_vector, sigma_conjugate,
};

pub const CRITERIA: [&str; 8] = [
    "figure2",
    "classification",
    "bgmu-cross",
    "dl-oracle",
    "fixed-points",
    "adm-partition",
    "additivity",
    "properties",
];

const BUILTIN_GOLDEN: &str = include_str!("../golden/acceptance.json");

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Figure2Golden {
    pub adm: usize,
    pub adm_kw: usize,
    pub spade: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Golden {
    pub figure2: Figure2Golden,
    pub a1_adm: usize,
    pub classification_rows: Vec<String>,
}

impl Golden {
    pub fn builtin() -> Result<Self> {
        Self::parse(BUILTIN_GOLDEN)
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("golden file: {e}")))
    }

    pub fn from_path(p: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
        Self::parse(&s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub budget_secs: u64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {:<14} {:>8} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.millis,
            self.detail
        )
    }
}

fn budget(name: &str) -> u64 {
    match name {
        "figure2" => 1,
        "classification" | "adm-partition" => 300,
        "dl-oracle" => 600,
        "additivity" | "properties" => 120,
        _ => 600,
    }
}

/// Verdict and one-line detail.
type Verdict = (bool, String);

pub fn run_criterion(name: &str, golden: &Golden) -> Result<CriterionOutcome> {
    let f: fn(&Golden) -> Result<Verdict> = match name {
        "figure2" => figure2,
        "classification" => classification,
        "bgmu-cross" => bgmu_cross,
        "dl-oracle" => dl_oracle,
        "fixed-points" => fixed_points,
        "adm-partition" => adm_partition,
        "additivity" => additivity,
        "properties" => |_| properties(7),
        _ => return Err(Error::Invalid(format!("unknown criterion {name:?}; expected one of {CRITERIA:?}"))),
    };
    let start = Instant::now();
    let (mut passed, mut detail) = f(golden).unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = start.elapsed();
    let budget_secs = budget(name);
    if elapsed > Duration::from_secs(budget_secs) {
        passed = false;
        detail = format!("{detail}; over the {budget_secs} s budget");
    }
    Ok(CriterionOutcome { name: name.into(), passed, detail, millis: elapsed.as_millis(), budget_secs })
}

pub fn run_all(golden: &Golden) -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|c| run_criterion(c, golden).expect("known criterion")).collect()
}

fn ident(t: CartanType, r: usize, mu: &[i64], k: &[usize]) -> Result<GroupInstance> {
    let s = Arc::new(Frobenius::identity(build_group(t, r)?));
    GroupInstance::new(s, mu, k.iter().copied().collect())
}

fn figure2(golden: &Golden) -> Result<Verdict> {
    let i = ident(CartanType::C, 2, &[0, 1], &[1])?;
    let got = Figure2Golden { adm: adm(&i).len(), adm_kw: adm_cap_kw(&i).len(), spade: adm_spade(&i)?.len() };
    let a1 = adm(&ident(CartanType::A, 1, &[1], &[])?).len();
    let ok = got == golden.figure2 && a1 == golden.a1_adm;
    Ok((ok, format!("|Adm| = {}, |Adm cap ^K W| = {}, |^K Adm_spade| = {}, A1: {a1}", got.adm, got.adm_kw, got.spade)))
}

fn classification(golden: &Golden) -> Result<Verdict> {
    let rep = classification_scan(&default_scan_cases(), 6)?;
    let want: BTreeSet<&String> = golden.classification_rows.iter().collect();
    let got: BTreeSet<&String> = rep.reconstructed.iter().collect();
    let mut detail = format!(
        "{} instances, {} rows reconstructed, {} discrepancies",
        rep.instances,
        rep.reconstructed.len(),
        rep.discrepancies.len()
    );
    if let Some(d) = rep.discrepancies.first() {
        detail.push_str(&format!("; first: {d}"));
    }
    if !rep.missing.is_empty() {
        detail.push_str(&format!("; missing {:?}", rep.missing));
    }
    if want != got {
        detail.push_str(&format!(
            "; golden mismatch: expected-only {:?}, computed-only {:?}",
            want.difference(&got).collect::<Vec<_>>(),
            got.difference(&want).collect::<Vec<_>>()
        ));
    }
    Ok((rep.passed() && want == got, detail))
}

/// Every `(group, sigma, mu)` of the classification scan with `K` empty.
fn scan_instances() -> Result<Vec<GroupInstance>> {
    let mut out = Vec::new();
    for (t, r) in default_scan_cases() {
        let g = build_group(t, r)?;
        let sigmas: Vec<Arc<Frobenius>> = enumerate_sigmas(&g).into_iter().map(Arc::new).collect();
        for mu in dominant_coweights_bounded(g.datum(), 6) {
            for s in &sigmas {
                out.push(GroupInstance::new(s.clone(), &mu, NodeSet::empty())?);
            }
        }
    }
    Ok(out)
}

fn bgmu_cross(_: &Golden) -> Result<Verdict> {
    let insts = scan_instances()?;
    let bad: Vec<String> = insts
        .par_iter()
        .filter_map(|i| {
            let a = adm_of(&i.group, &i.mu);
            let s = b_g_mu_via_straight(i, a.iter());
            let c = b_g_mu_via_criterion(i);
            let (lo, hi) = extremal_classes(&i.group, &c);
            let ok = s == c && lo.is_some_and(|x| x.is_basic()) && hi.is_some();
            (!ok).then(|| i.label())
        })
        .collect();
    Ok((bad.is_empty(), format!("{} instances, {} mismatches{}", insts.len(), bad.len(), first(&bad))))
}

fn first(v: &[String]) -> String {
    v.first().map(|x| format!("; first: {x}")).unwrap_or_default()
}

/// Table rows of rank at most 3 with their sigma.
fn small_table_rows() -> Result<Vec<(String, Arc<Frobenius>, Vec<i64>)>> {
    let mut out = Vec::new();
    for (t, r) in default_scan_cases().into_iter().filter(|&(_, r)| r <= 3) {
        let g = build_group(t, r)?;
        for row in table_rows(&g)? {
            out.push((row.label, row.sigma, row.mu));
        }
    }
    Ok(out)
}

fn controls() -> Result<Vec<GroupInstance>> {
    Ok(vec![ident(CartanType::A, 2, &[2, 0], &[])?, ident(CartanType::C, 2, &[0, 2], &[])?])
}

fn dl_oracle(_: &Golden) -> Result<Verdict> {
    let rows = small_table_rows()?;
    let results: Vec<Result<(usize, Vec<String>)>> = rows
        .par_iter()
        .map(|(label, s, mu)| {
            let o = DlOracle::new(s.clone());
            let mut bad = Vec::new();
            let levels = sigma_stable_levels(s);
            for k in &levels {
                let i = GroupInstance::new(s.clone(), mu, *k)?;
                let dims_ok = dim_table(&o, &i)?.iter().all(|(c, d)| c.is_basic() || *d == Some(0));
                let unique = ekor_newton_violations(&o, &i)?.is_empty();
                if !(dims_ok && unique) {
                    bad.push(format!("{label} K={k:?}: dims {dims_ok}, uniqueness {unique}"));
                }
            }
            Ok((levels.len(), bad))
        })
        .collect();
    let mut n = 0;
    let mut bad = Vec::new();
    for r in results {
        let (k, b) = r?;
        n += k;
        bad.extend(b);
    }
    let mut controls_ok = true;
    for c in controls()? {
        let o = DlOracle::new(c.sigma.clone());
        for k in sigma_stable_levels(&c.sigma) {
            let i = c.with_k(k)?;
            let dims_ok = dim_table(&o, &i)?.iter().all(|(c, d)| c.is_basic() || *d == Some(0));
            let unique = ekor_newton_violations(&o, &i)?.is_empty();
            if dims_ok && unique {
                controls_ok = false;
                bad.push(format!("control {} passes both", i.label()));
            }
        }
    }
    Ok((
        bad.is_empty() && controls_ok,
        format!("{} table rows, {n} (row, K) instances, {} failures{}", rows.len(), bad.len(), first(&bad)),
    ))
}

fn fixed_points(_: &Golden) -> Result<Verdict> {
    let rows = small_table_rows()?;
    let mut sets: Vec<(Arc<Frobenius>, Vec<i64>)> = rows.iter().map(|(_, s, mu)| (s.clone(), mu.clone())).collect();
    for c in controls()? {
        sets.push((c.sigma.clone(), c.mu.to_vec()));
    }
    let compared: usize = sets
        .par_iter()
        .map(|(s, mu)| -> Result<usize> {
            let a = adm_of(s.group(), mu);
            for w in &a {
                has_fixed_point_in_closed_alcove(s, w)?;
            }
            Ok(a.len())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();

    let bad: Vec<String> = rows
        .par_iter()
        .map(|(label, s, mu)| -> Result<Vec<String>> {
            let o = DlOracle::new(s.clone());
            let mut bad = Vec::new();
            for k in sigma_stable_levels(s) {
                let r = evaluate_conditions(&o, &GroupInstance::new(s.clone(), mu, k)?)?;
                if !(r.basic_fixed_points && r.fc) {
                    bad.push(format!("{label} K={k:?}"));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .concat();

    let mut witnesses = Vec::new();
    let mut controls_ok = true;
    for c in controls()? {
        match witness_search_maximal(&c)? {
            Some((k, t)) => {
                let fc = fc_condition(&c.with_k(k)?)?;
                let ok = !fc.holds && t.central_newton && t.fixed_point.is_none();
                controls_ok &= ok;
                witnesses.push(format!("{} K={k:?}: {}", c.label(), t.element));
            }
            None => {
                controls_ok = false;
                witnesses.push(format!("{}: no witness", c.label()));
            }
        }
    }
    Ok((
        bad.is_empty() && controls_ok,
        format!(
            "{compared} elements agree; {} table failures{}; control witnesses [{}]",
            bad.len(),
            first(&bad),
            witnesses.join("; ")
        ),
    ))
}

fn adm_partition(_: &Golden) -> Result<Verdict> {
    let cases = [
        ident(CartanType::A, 1, &[1], &[])?,
        ident(CartanType::A, 2, &[1, 1], &[])?,
        ident(CartanType::A, 3, &[0, 1, 0], &[])?,
    ];
    let mut classes = 0;
    let mut blocks = 0;
    let mut bad = Vec::new();
    for i in &cases {
        let o = DlOracle::new(i.sigma.clone());
        for c in b_g_mu_via_criterion(i).into_iter().filter(|c| !c.is_basic()) {
            let rep = verify_adm_decomposition(&o, i, &c)?;
            classes += 1;
            blocks += rep.blocks.len();
            if !rep.passed() {
                bad.push(format!("{} {}: {}", i.label(), c.describe(), rep.failures.join(", ")));
            }
        }
    }
    Ok((bad.is_empty(), format!("{classes} non-basic classes, {blocks} blocks{}", first(&bad))))
}

fn additivity(_: &Golden) -> Result<Verdict> {
    let a2 = build_group(CartanType::A, 2)?;
    let mut bad = Vec::new();
    for k in [vec![], vec![0], vec![1], vec![1, 2]] {
        let k: NodeSet = k.into_iter().collect();
        if !verify_additivity(&a2, &[1, 0], &[1, 0], k)? {
            bad.push(format!("A2 additivity K={k:?}"));
        }
        if !verify_weak_additivity_spade(&a2, &[1, 0], &[1, 0], k)? {
            bad.push(format!("A2 spade K={k:?}"));
        }
    }
    let c2 = build_group(CartanType::C, 2)?;
    let k: NodeSet = [1].into_iter().collect();
    if !verify_additivity(&c2, &[0, 1], &[0, 1], k)? {
        bad.push("C2 additivity".into());
    }
    if !verify_weak_additivity_spade(&c2, &[0, 1], &[0, 1], k)? {
        bad.push("C2 spade".into());
    }
    Ok((bad.is_empty(), format!("10 checks, {} failures{}", bad.len(), first(&bad))))
}

/// Random element: a word of length below `len` times a random Omega element.
pub fn random_element(g: &AffineWeyl, rng: &mut impl Rng, len: usize) -> Elt {
    let mut x = g.omega_elements()[rng.gen_range(0..g.omega_elements().len())].clone();
    for _ in 0..rng.gen_range(0..len) {
        x = g.left_mul_simple(rng.gen_range(0..=g.rank()), &x);
    }
    x
}

/// Randomized property checks; returns the number of checks performed.
pub fn property_checks(seed: u64) -> Result<(usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut n = 0;
    let types = [(CartanType::A, 2), (CartanType::B, 3), (CartanType::C, 2), (CartanType::D, 4), (CartanType::A, 3)];
    for (t, r) in types {
        let g = build_group(t, r)?;
        let sigmas = enumerate_sigmas(&g);
        for _ in 0..60 {
            let (x, y, z) = (random_element(&g, &mut rng, 10), random_element(&g, &mut rng, 10), random_element(&g, &mut rng, 10));
            n += 1;
            if g.mul(&g.mul(&x, &y), &z) != g.mul(&x, &g.mul(&y, &z)) {
                bad.push(format!("associativity in {g:?}"));
            }
            if g.mul(&x, &g.inverse(&x)) != g.identity() || g.mul(&g.identity(), &x) != x {
                bad.push(format!("inverse or identity in {g:?}"));
            }
            if g.length(&x) != g.length(&g.inverse(&x)) || g.length(&x) != g.length_im(&x) {
                bad.push(format!("length of {}", g.format(&x)));
            }
            if g.parse(&g.format(&x))? != x {
                bad.push(format!("round trip of {}", g.format(&x)));
            }
            let s = &sigmas[rng.gen_range(0..sigmas.len())];
            if g.length(&s.apply(&x)) != g.length(&x) {
                bad.push(format!("sigma {} changes length of {}", s.label(), g.format(&x)));
            }
            let conj = sigma_conjugate(s, &y, &x);
            if newton_vector(s, &conj).nu_bar != newton_vector(s, &x).nu_bar || kottwitz(s, &conj) != kottwitz(s, &x) {
                bad.push(format!("class of {} not conjugation invariant", g.format(&x)));
            }
            if is_straight(s, &x) != is_straight_by_powers(s, &x, 12) {
                bad.push(format!("straightness criteria disagree at {}", g.format(&x)));
            }
        }
        // Bruhat order on a lower ideal: subword and reflection closures agree.
        let top = g.translation(&vec![1; r]);
        let sub = g.ideal_subword(&top);
        let bfs: HashSet<Elt> = g.ideal_bfs(&top);
        n += 1;
        if sub != bfs {
            bad.push(format!("ideals of {} disagree", g.format(&top)));
        }
        let elts = g.sorted(sub);
        for _ in 0..200 {
            let a = &elts[rng.gen_range(0..elts.len())];
            let b = &elts[rng.gen_range(0..elts.len())];
            let c = &elts[rng.gen_range(0..elts.len())];
            n += 1;
            if !g.bruhat_leq(a, a) || !g.bruhat_leq(a, &top) {
                bad.push(format!("reflexivity or ideal bound at {}", g.format(a)));
            }
            if a != b && g.bruhat_leq(a, b) && g.bruhat_leq(b, a) {
                bad.push("antisymmetry".into());
            }
            if g.bruhat_leq(a, b) && g.bruhat_leq(b, c) && !g.bruhat_leq(a, c) {
                bad.push("transitivity".into());
            }
            if g.bruhat_leq(a, b) != g.ideal_subword(b).contains(a) {
                bad.push(format!("subword property at {} <= {}", g.format(a), g.format(b)));
            }
        }
    }
    // Reduction paths agree; a disagreement surfaces as an error.
    for (t, r) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::A, 3)] {
        let g = build_group(t, r)?;
        for s in enumerate_sigmas(&g) {
            let o = DlOracle::new(Arc::new(s));
            for w in adm_of(&g, &vec![1; r]) {
                o.dl_dimension(&w)?;
                n += 1;
            }
        }
    }
    let cox = coxeter_formula_mismatches(seed, 200)?;
    n += 200;
    bad.extend(cox);
    Ok((n, bad))
}

fn properties(seed: u64) -> Result<Verdict> {
    let (n, bad) = property_checks(seed)?;
    Ok((bad.is_empty(), format!("{n} checks, {} failures{}", bad.len(), first(&bad))))
}
