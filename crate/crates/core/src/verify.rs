//! Named property checks over a whole group, grouped into suites.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, CoxeterType, GenSet, Side};
use crate::error::{Error, Result};
use crate::hybrid::{
    chain_product, default_chain, expand_in_hybrid, factorize_chain, hybrid_element, parabolic_kl,
    restriction_coeffs, transition_matrix, Coeffs, HybridBasisSpec,
};
use crate::klbasis::{is_rationally_smooth_type_a, r_element, KlCache, KlOracle};
use crate::laurent::LaurentPoly;
use crate::oracles;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Involutions,
    Positivity,
    Oracles,
    Structure,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "involutions" => Ok(Suite::Involutions),
            "positivity" => Ok(Suite::Positivity),
            "oracles" => Ok(Suite::Oracles),
            "structure" => Ok(Suite::Structure),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected one of all, involutions, positivity, oracles, structure".into(),
            }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Involutions => "involutions",
            Suite::Positivity => "positivity",
            Suite::Oracles => "oracles",
            Suite::Structure => "structure",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub group: String,
    pub suite: String,
    pub crystallographic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Outcome of one property: the number of cases checked, or the first
/// counterexample.
type Outcome = std::result::Result<usize, String>;

fn run(name: &str, f: impl FnOnce() -> Outcome) -> Check {
    match f() {
        Ok(n) => Check {
            name: name.to_string(),
            passed: true,
            detail: format!("{n} cases"),
        },
        Err(e) => Check {
            name: name.to_string(),
            passed: false,
            detail: e,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run_suite(kl: &KlCache, suite: Suite) -> Report {
    let sys = kl.system();
    kl.precompute();
    let mut checks = Vec::new();
    let want = |s: Suite| suite == Suite::All || suite == s;
    if want(Suite::Involutions) {
        checks.extend(involution_checks(kl));
    }
    if want(Suite::Positivity) {
        checks.extend(positivity_checks(kl));
    }
    if want(Suite::Oracles) {
        checks.extend(oracle_checks(kl));
    }
    if want(Suite::Structure) {
        checks.extend(structure_checks(kl));
    }
    let crystallographic = sys.kind().is_crystallographic();
    Report {
        group: sys.kind().to_string(),
        suite: suite.to_string(),
        crystallographic,
        note: (!crystallographic).then(|| {
            "non-crystallographic group: positivity results here go beyond the Weyl group setting of the geometric argument".to_string()
        }),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn involution_checks(kl: &KlCache) -> Vec<Check> {
    let sys = kl.system();
    let alg = kl.algebra();
    let elems = sys.enumerate();
    vec![
        run("bar_is_involution", || {
            for &w in &elems {
                let t = alg.t_basis(w).scale(&LaurentPoly::q());
                ensure(t.bar().bar() == t, || format!("bar(bar(qT[{}])) differs", sys.word_string(w)))?;
            }
            Ok(elems.len())
        }),
        run("omega_is_involution", || {
            for &w in &elems {
                let t = alg.t_basis(w).scale(&LaurentPoly::q());
                ensure(t.omega().omega() == t, || format!("omega twice differs at {}", sys.word_string(w)))?;
            }
            Ok(elems.len())
        }),
        run("psi_is_involution_commuting_with_bar", || {
            for &w in &elems {
                let t = alg.t_basis(w).scale(&LaurentPoly::q());
                ensure(t.psi().psi() == t && t.psi().bar() == t.bar().psi(), || {
                    format!("psi fails at {}", sys.word_string(w))
                })?;
            }
            Ok(elems.len())
        }),
        run("kl_self_dual", || {
            for &w in &elems {
                let c = kl.kl_element(w);
                ensure(c.bar() == c, || format!("C[{}] is not bar invariant", sys.word_string(w)))?;
            }
            Ok(elems.len())
        }),
        run("psi_maps_c_w_to_c_w_inverse", || {
            for &w in &elems {
                ensure(kl.kl_element(w).psi() == kl.kl_element(sys.inverse(w)), || {
                    format!("Psi(C[{}]) mismatch", sys.word_string(w))
                })?;
            }
            Ok(elems.len())
        }),
    ]
}

pub fn positivity_checks(kl: &KlCache) -> Vec<Check> {
    let sys = kl.system();
    let elems = sys.enumerate();
    let subsets: Vec<GenSet> = GenSet::all_subsets(sys.rank()).collect();
    vec![
        run("kl_polynomials_nonnegative_with_degree_bounds", || {
            let mut n = 0;
            for &w in &elems {
                for (&x, h) in kl.column(w) {
                    n += 1;
                    let gap = (sys.length(w) - sys.length(x)) as i32;
                    let ok = h.has_nonnegative_coeffs()
                        && (x == w || (h.min_exponent() >= Some(1) && h.max_exponent() <= Some(gap)));
                    ensure(ok, || format!("h[{}, {}] = {h}", sys.word_string(x), sys.word_string(w)))?;
                }
            }
            Ok(n)
        }),
        run("restriction_coefficients_nonnegative", || {
            let mut n = 0;
            for &j in &subsets {
                for u in sys.min_coset_reps(j, Side::Left) {
                    for &w in &elems {
                        for (v, c) in restriction_coeffs(kl, u, w, j).map_err(|e| e.to_string())? {
                            n += 1;
                            ensure(c.is_nonnegative_polynomial(), || {
                                format!(
                                    "h^J[{}*{}, {}] = {c} for J = {{{j}}}",
                                    sys.word_string(u),
                                    sys.word_string(v),
                                    sys.word_string(w)
                                )
                            })?;
                        }
                    }
                }
            }
            Ok(n)
        }),
        run("transition_matrices_nonnegative", || {
            let mut n = 0;
            for &j in &subsets {
                for &i in subsets.iter().filter(|i| i.is_subset(j)) {
                    let m = transition_matrix(kl, i, j).map_err(|e| e.to_string())?;
                    n += m.nnz();
                    if let Some((r, c, p)) = m.first_non_positive() {
                        return Err(format!(
                            "h^{{I,J}}[{}, {}] = {p} for I = {{{i}}}, J = {{{j}}}",
                            sys.word_string(r),
                            sys.word_string(c)
                        ));
                    }
                }
            }
            Ok(n)
        }),
        run("chain_factorization", || {
            let factors = factorize_chain(kl, &default_chain(sys.rank())).map_err(|e| e.to_string())?;
            ensure(factors.iter().all(|m| m.is_nonnegative_polynomial()), || {
                "a factor has an entry outside Z>=0[q]".into()
            })?;
            let product = chain_product(&factors).map_err(|e| e.to_string())?;
            ensure(product == kl.kl_matrix(), || "product of factors differs from the KL matrix".into())?;
            Ok(factors.len())
        }),
    ]
}

pub fn oracle_checks(kl: &KlCache) -> Vec<Check> {
    let sys = kl.system();
    let elems = sys.enumerate();
    let mut checks = vec![
        run("kl_dual_path", || {
            let oracle = KlOracle::new(Arc::clone(kl.algebra().system_arc()));
            for &w in &elems {
                for &x in &elems {
                    ensure(kl.kl_poly(x, w) == oracle.kl_poly(x, w), || {
                        format!("h[{}, {}] differs between recursions", sys.word_string(x), sys.word_string(w))
                    })?;
                }
            }
            Ok(elems.len() * elems.len())
        }),
        run("parabolic_kl_sign_module", || {
            let mut n = 0;
            for j in GenSet::all_subsets(sys.rank()) {
                let a = parabolic_kl(kl, j).map_err(|e| e.to_string())?;
                let b = oracles::parabolic_kl_deodhar(kl, j).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("parabolic KL matrices differ for J = {{{j}}}"))?;
                n += 1;
            }
            Ok(n)
        }),
        run("r_element_restriction", || {
            let alg = kl.algebra();
            let mut n = 0;
            for j in GenSet::all_subsets(sys.rank()) {
                for u in sys.min_coset_reps(j, Side::Left) {
                    for &w in &elems {
                        let a = oracles::r_restriction(alg, u, w, j).map_err(|e| e.to_string())?;
                        ensure(a == oracles::r_restriction_direct(alg, u, w, j), || {
                            format!("R restriction differs: u = {}, w = {}, J = {{{j}}}", sys.word_string(u), sys.word_string(w))
                        })?;
                        n += 1;
                    }
                }
            }
            Ok(n)
        }),
    ];
    match sys.kind() {
        CoxeterType::I2(_) => checks.push(run("dihedral_closed_form", || {
            let j = GenSet::singleton(0);
            let mut n = 0;
            for u in sys.min_coset_reps(j, Side::Left) {
                for &w in &elems {
                    let a = oracles::dihedral_restriction(sys, u, w).map_err(|e| e.to_string())?;
                    let b = restriction_coeffs(kl, u, w, j).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("u = {}, w = {}", sys.word_string(u), sys.word_string(w)))?;
                    n += 1;
                }
            }
            Ok(n)
        })),
        CoxeterType::A(n) => {
            checks.push(run("rational_smoothness_patterns", || {
                for &w in &elems {
                    let smooth = is_rationally_smooth_type_a(sys, w).map_err(|e| e.to_string())?;
                    let equal = r_element(kl.algebra(), w) == kl.kl_element(w);
                    ensure(smooth == equal, || format!("w = {}", sys.word_string(w)))?;
                }
                Ok(elems.len())
            }));
            checks.push(run("parabolic_kl_maximal_quotient", || {
                let m = parabolic_kl(kl, GenSet::from_indices(0..n - 1)).map_err(|e| e.to_string())?;
                for &u in m.rows() {
                    for &u2 in m.cols() {
                        let expected = match sys.length(u2) as i64 - sys.length(u) as i64 {
                            0 => LaurentPoly::one(),
                            1 => LaurentPoly::q(),
                            _ => LaurentPoly::zero(),
                        };
                        ensure(m.entry(u, u2) == expected, || {
                            format!("u = {}, u' = {}", sys.word_string(u), sys.word_string(u2))
                        })?;
                    }
                }
                Ok(m.rows().len() * m.cols().len())
            }));
            if n >= 3 {
                checks.extend(type_a_checks(kl, n));
            }
        }
        _ => {}
    }
    checks
}

fn type_a_checks(kl: &KlCache, n: usize) -> Vec<Check> {
    let sys = kl.system();
    let j = GenSet::from_indices(0..n - 1);
    let wj = sys.parabolic_elements(j);
    vec![
        run("type_a_restriction_closed_forms", || {
            let mut count = 0;
            for i in 1..=3 {
                let u = oracles::tail_product(sys, i);
                for w in sys.elements() {
                    let a = oracles::type_a_restriction(kl, i, w).map_err(|e| e.to_string())?;
                    let b = restriction_coeffs(kl, u, w, j).map_err(|e| e.to_string())?;
                    ensure(a == b, || format!("i = {i}, w = {}", sys.word_string(w)))?;
                    count += 1;
                }
            }
            Ok(count)
        }),
        run("type_a_shift_identity", || {
            let mut count = 0;
            for &y in &wj {
                for &x in &wj {
                    for i in 1..=n {
                        let ok = oracles::heq1_check(kl, i, y, x).map_err(|e| e.to_string())?;
                        ensure(ok, || format!("i = {i}, y = {}, x = {}", sys.word_string(y), sys.word_string(x)))?;
                        count += 1;
                    }
                }
            }
            Ok(count)
        }),
        run("type_a_shift_by_two", || {
            let mut count = 0;
            for &y in &wj {
                for &x in &wj {
                    for i in 1..=n - 2 {
                        let ok = oracles::hi2i_check(kl, i, y, x).map_err(|e| e.to_string())?;
                        ensure(ok, || format!("i = {i}, y = {}, x = {}", sys.word_string(y), sys.word_string(x)))?;
                        count += 1;
                    }
                }
            }
            Ok(count)
        }),
    ]
}

pub fn structure_checks(kl: &KlCache) -> Vec<Check> {
    let sys = kl.system();
    let alg = kl.algebra();
    let elems = sys.enumerate();
    let subsets: Vec<GenSet> = GenSet::all_subsets(sys.rank()).collect();
    vec![
        run("hybrid_unitriangular", || {
            let mut n = 0;
            for &j in &subsets {
                for &w in &elems {
                    let (u, v) = sys.parabolic_factorize_left(w, j);
                    let tc = hybrid_element(kl, HybridBasisSpec::tc(j), w);
                    let ok = tc.coeff(w).is_one()
                        && tc.terms().iter().all(|(&y, c)| {
                            let (yu, yv) = sys.parabolic_factorize_left(y, j);
                            yu == u && *c == kl.kl_poly(yv, v) && sys.bruhat_leq(y, w)
                        });
                    ensure(ok, || format!("TC[{}] for J = {{{j}}}", sys.word_string(w)))?;
                    n += 1;
                }
            }
            Ok(n)
        }),
        run("restriction_orthogonality", || {
            let mut n = 0;
            for &j in &subsets {
                let reps = sys.min_coset_reps(j, Side::Left);
                for &u in &reps {
                    for &u2 in &reps {
                        let r = (&alg.t_basis(sys.inverse(u)) * &alg.t_basis(u2)).restrict(j);
                        let expected = if u == u2 { alg.one() } else { alg.zero() };
                        ensure(r == expected, || format!("u = {}, u' = {}", sys.word_string(u), sys.word_string(u2)))?;
                        n += 1;
                    }
                }
            }
            Ok(n)
        }),
        run("standard_times_hybrid", || {
            let mut n = 0;
            for &j in &subsets {
                for &i in subsets.iter().filter(|i| i.is_subset(j)) {
                    for u in sys.min_coset_reps(j, Side::Left) {
                        for z in sys.parabolic_elements(j) {
                            let lhs = &alg.t_basis(u) * &hybrid_element(kl, HybridBasisSpec::tc(i), z);
                            let rhs = hybrid_element(kl, HybridBasisSpec::tc(i), sys.multiply(u, z));
                            ensure(lhs == rhs, || format!("u = {}, z = {}", sys.word_string(u), sys.word_string(z)))?;
                            n += 1;
                        }
                    }
                }
            }
            Ok(n)
        }),
        run("restriction_vanishing_and_support", || {
            let mut n = 0;
            for &j in &subsets {
                for u in sys.min_coset_reps(j, Side::Left) {
                    for &w in &elems {
                        let coeffs = restriction_coeffs(kl, u, w, j).map_err(|e| e.to_string())?;
                        let (wq, _) = sys.parabolic_factorize_left(w, j);
                        if !sys.bruhat_leq(u, wq) {
                            ensure(coeffs.is_empty(), || format!("support: u = {}, w = {}", sys.word_string(u), sys.word_string(w)))?;
                        }
                        for v in sys.parabolic_elements(j) {
                            let uv = sys.multiply(u, v);
                            let killed = !sys.bruhat_leq(uv, w)
                                || j.iter().any(|s| !sys.is_right_descent(v, s) && sys.is_right_descent(w, s));
                            if killed {
                                ensure(!coeffs.contains_key(&v), || {
                                    format!("vanishing: u = {}, v = {}, w = {}", sys.word_string(u), sys.word_string(v), sys.word_string(w))
                                })?;
                            }
                            n += 1;
                        }
                    }
                }
            }
            Ok(n)
        }),
        run("psi_transport", || {
            let mut n = 0;
            for &j in &subsets {
                for &w in &elems {
                    let tc = hybrid_element(kl, HybridBasisSpec::tc(j), w);
                    let ct = hybrid_element(kl, HybridBasisSpec::ct(j), sys.inverse(w));
                    ensure(tc.psi() == ct, || format!("Psi(TC[{}])", sys.word_string(w)))?;
                    let expanded = expand_in_hybrid(kl, &ct, HybridBasisSpec::ct(j));
                    ensure(expanded == Coeffs::from([(sys.inverse(w), LaurentPoly::one())]), || {
                        format!("CT expansion of CT[{}]", sys.word_string(sys.inverse(w)))
                    })?;
                    n += 1;
                }
            }
            Ok(n)
        }),
        run("transition_block_structure", || {
            let mut n = 0;
            for &j in &subsets {
                for &i in subsets.iter().filter(|i| i.is_subset(j)) {
                    let m = transition_matrix(kl, i, j).map_err(|e| e.to_string())?;
                    for (r, c, _) in m.entries() {
                        let (ru, _) = sys.parabolic_factorize_left(r, j);
                        let (cu, _) = sys.parabolic_factorize_left(c, j);
                        ensure(ru == cu && sys.bruhat_leq(r, c), || {
                            format!("entry ({}, {}) for I = {{{i}}}, J = {{{j}}}", sys.word_string(r), sys.word_string(c))
                        })?;
                    }
                    ensure(m.is_bruhat_unitriangular(sys), || format!("diagonal for I = {{{i}}}, J = {{{j}}}"))?;
                    n += 1;
                }
            }
            Ok(n)
        }),
    ]
}

/// Builds a system and runs a suite.
pub fn verify_group(kind: CoxeterType, allow_large: bool, suite: Suite) -> Result<Report> {
    let sys = Arc::new(CoxeterSystem::with_options(kind, allow_large)?);
    Ok(run_suite(&KlCache::new(sys), suite))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_groups() {
        for (t, suite) in [
            ("A2", Suite::Involutions),
            ("A3", Suite::Positivity),
            ("I2(7)", Suite::Oracles),
            ("A3", Suite::All),
            ("I2(6)", Suite::Structure),
        ] {
            let report = verify_group(t.parse().unwrap(), false, suite).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(report.passed, "{t} {suite}: {failures:?}");
            assert!(!report.checks.is_empty());
        }
        let r = verify_group(CoxeterType::I2(7), false, Suite::Oracles).unwrap();
        assert!(!r.crystallographic && r.note.is_some());
        assert!(r.checks.iter().any(|c| c.name == "dihedral_closed_form"));
    }

    #[test]
    fn suite_names() {
        assert_eq!("oracles".parse::<Suite>().unwrap(), Suite::Oracles);
        assert!("everything".parse::<Suite>().is_err());
    }
}
