//! The six equivalent conditions, each evaluated by its own method.

use serde::Serialize;

use crate::adlv_oracle::{dim_table, ekor_newton_violations, DlOracle};
use crate::admissible::adm_cap_kw;
use crate::affine_weyl::NodeSet;
use crate::error::{Error, Result};
use crate::frobenius::GroupInstance;
use crate::hn_theory::{
    fc_condition, fully_hn_report, has_fixed_point_in_closed_alcove, minute_report, witness_search_maximal,
    PermissibleTriple,
};
use crate::sigma_conj::{mu_natural, SigmaClass};
use crate::rational::QVec;

#[derive(Clone, Debug, Serialize)]
pub struct ClassDim {
    pub class: SigmaClass,
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessTriple {
    pub k: NodeSet,
    pub triple: PermissibleTriple,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionsReport {
    pub instance: String,
    /// (1) every non-basic class is Hodge-Newton decomposable.
    pub fully_hn: bool,
    /// (2)
    pub minute: bool,
    /// (3) every non-basic `X(mu, b)_K` is zero-dimensional.
    pub nonbasic_dims_zero: bool,
    /// (4) every `X_w(b)` for `w` in `Adm cap ^K W~` meets one class.
    pub ekor_unique: bool,
    /// (5) `w sigma` has a fixed point whenever `X_w(b_basic)` is nonempty.
    pub basic_fixed_points: bool,
    /// (6)
    pub fc: bool,
    pub dims: Vec<ClassDim>,
    pub non_decomposable: Vec<SigmaClass>,
    pub ekor_violations: Vec<String>,
    pub basic_fixed_point_failures: Vec<String>,
    pub fc_failures: Vec<String>,
    pub witness: Option<WitnessTriple>,
    pub agree: bool,
}

pub fn evaluate_conditions(oracle: &DlOracle, inst: &GroupInstance) -> Result<ConditionsReport> {
    if inst.is_mu_zero() {
        return Err(Error::Invalid("mu must be nonzero".into()));
    }
    if oracle.sigma().affine_map() != inst.sigma.affine_map() {
        return Err(Error::Invalid("oracle and instance use different Frobenius maps".into()));
    }
    let g = &inst.group;
    let hn = fully_hn_report(inst);
    let minute = minute_report(&inst.sigma, &inst.mu).minute;

    let table = dim_table(oracle, inst)?;
    let nonbasic_dims_zero = table.iter().all(|(c, d)| c.is_basic() || *d == Some(0));
    let dims = table.into_iter().map(|(class, dim)| ClassDim { class, dim }).collect();

    let ekor_violations: Vec<String> = ekor_newton_violations(oracle, inst)?
        .into_iter()
        .map(|(w, n)| format!("{} meets {n} classes", g.format(&w)))
        .collect();

    let basic = SigmaClass { kappa: mu_natural(inst), nu: QVec::zeros(g.rank()) };
    let mut basic_fixed_point_failures = Vec::new();
    for w in adm_cap_kw(inst).elements() {
        if oracle.dl_dimension(w)?.contains_key(&basic) && !has_fixed_point_in_closed_alcove(&inst.sigma, w)? {
            basic_fixed_point_failures.push(g.format(w));
        }
    }

    let fc = fc_condition(inst)?;
    let witness = if minute {
        None
    } else {
        witness_search_maximal(inst)?.map(|(k, triple)| WitnessTriple { k, triple })
    };

    let flags = [
        hn.fully_hn,
        minute,
        nonbasic_dims_zero,
        ekor_violations.is_empty(),
        basic_fixed_point_failures.is_empty(),
        fc.holds,
    ];
    Ok(ConditionsReport {
        instance: inst.label(),
        fully_hn: hn.fully_hn,
        minute,
        nonbasic_dims_zero,
        ekor_unique: ekor_violations.is_empty(),
        basic_fixed_points: basic_fixed_point_failures.is_empty(),
        fc: fc.holds,
        dims,
        non_decomposable: hn.non_decomposable,
        ekor_violations,
        basic_fixed_point_failures,
        fc_failures: fc.failures,
        witness,
        agree: flags.iter().all(|&f| f == flags[0]),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::frobenius::{identity_perm, Frobenius};
    use crate::hn_theory::build_group;
    use crate::root_datum::CartanType;

    #[test]
    fn table_rows_satisfy_all() {
        let g = build_group(CartanType::C, 2).unwrap();
        let t2 = Arc::new(Frobenius::from_node(g, 2, identity_perm(2)).unwrap());
        let o = DlOracle::new(t2.clone());
        for k in [NodeSet::empty(), [1].into_iter().collect()] {
            let k: NodeSet = k;
            if !t2.sigma_stable(k) {
                continue;
            }
            let i = GroupInstance::new(t2.clone(), &[0, 1], k).unwrap();
            let r = evaluate_conditions(&o, &i).unwrap();
            assert!(r.agree && r.minute, "{r:#?}");
        }
    }

    #[test]
    fn control_fails_all() {
        let g = build_group(CartanType::A, 2).unwrap();
        let s = Arc::new(Frobenius::identity(g));
        let o = DlOracle::new(s.clone());
        for k in [vec![], vec![0], vec![1, 2]] {
            let i = GroupInstance::new(s.clone(), &[2, 0], k.into_iter().collect()).unwrap();
            let r = evaluate_conditions(&o, &i).unwrap();
            assert!(!r.minute && !r.fully_hn && !r.nonbasic_dims_zero && !r.ekor_unique);
            assert!(r.witness.is_some());
        }
    }

    #[test]
    fn zero_mu_rejected() {
        let g = build_group(CartanType::A, 1).unwrap();
        let s = Arc::new(Frobenius::identity(g));
        let i = GroupInstance::new(s.clone(), &[0], NodeSet::empty()).unwrap();
        assert!(evaluate_conditions(&DlOracle::new(s), &i).is_err());
    }
}
