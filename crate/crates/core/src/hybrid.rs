//! Hybrid bases `TC^J_w = T_{w^J} C_{w_J}` and `CT^J_w = C_{_J w} T_{^J w}`,
//! restriction coefficients `h^J_{uv,w}` and transition matrices between
//! hybrid bases.
//!
//! Restriction coefficients are defined by
//! `(T_{u^-1} C_w)|_J = sum_{v in W_J} h^J_{uv,w} C_v` for `u` in `W^J`.
//! The `T`-side of the left hand side is `sum_v h_{uv,w} T_v`, so they are
//! obtained from one Kazhdan-Lusztig column by a triangular solve in `W_J`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coxeter::{CoxeterSystem, Element, GenSet, Side};
use crate::error::{Error, Result};
use crate::hecke::{add_scaled_into, HeckeElement, Terms};
use crate::klbasis::KlCache;
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `T_{w^J} C_{w_J}`
    TC,
    /// `C_{_J w} T_{^J w}`
    CT,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HybridBasisSpec {
    pub subset: GenSet,
    pub orientation: Orientation,
}

impl HybridBasisSpec {
    pub fn tc(subset: GenSet) -> Self {
        HybridBasisSpec {
            subset,
            orientation: Orientation::TC,
        }
    }

    pub fn ct(subset: GenSet) -> Self {
        HybridBasisSpec {
            subset,
            orientation: Orientation::CT,
        }
    }
}

/// Coefficient vector in some basis, keyed by the basis label.
pub type Coeffs = BTreeMap<Element, LaurentPoly>;

/// The hybrid basis element for `w`.
pub fn hybrid_element(kl: &KlCache, spec: HybridBasisSpec, w: Element) -> HeckeElement {
    let sys = kl.system();
    // Lengths add across the factorization, so T_u T_x = T_{ux} and the
    // product is a relabelling of the KL column of the parabolic part.
    let terms: Terms = match spec.orientation {
        Orientation::TC => {
            let (u, v) = sys.parabolic_factorize_left(w, spec.subset);
            kl.column(v).iter().map(|(&x, h)| (sys.multiply(u, x), h.clone())).collect()
        }
        Orientation::CT => {
            let (v, u) = sys.parabolic_factorize_right(w, spec.subset);
            kl.column(v).iter().map(|(&x, h)| (sys.multiply(x, u), h.clone())).collect()
        }
    };
    HeckeElement::from_terms(kl.algebra(), terms)
}

/// Expands `g`, supported on `W_J`, in the Kazhdan-Lusztig basis of `H_J`.
/// Peels off the top term in canonical order each step; the KL matrix is
/// unitriangular so the leading coefficient is read off directly.
pub fn kl_expand_parabolic(kl: &KlCache, g: &Terms) -> Coeffs {
    let mut rest = g.clone();
    let mut out = Coeffs::new();
    while let Some((&v, c)) = rest.iter().next_back() {
        let c = c.clone();
        let neg = -&c;
        for (&y, h) in kl.column(v) {
            add_scaled_into(&mut rest, y, &neg, h);
        }
        debug_assert!(!rest.contains_key(&v));
        out.insert(v, c);
    }
    out
}

/// Coefficients of `h` in the given hybrid basis.
pub fn expand_in_hybrid(kl: &KlCache, h: &HeckeElement, spec: HybridBasisSpec) -> Coeffs {
    let sys = kl.system();
    match spec.orientation {
        Orientation::CT => {
            // Psi(CT^J_w) = TC^J_{w^-1}
            let flipped = expand_in_hybrid(kl, &h.psi(), HybridBasisSpec::tc(spec.subset));
            flipped.into_iter().map(|(x, c)| (sys.inverse(x), c)).collect()
        }
        Orientation::TC => {
            let j = spec.subset;
            let alg = kl.algebra();
            let mut out = Coeffs::new();
            for u in sys.min_coset_reps(j, Side::Left) {
                let g = (&alg.t_basis(sys.inverse(u)) * h).restrict(j);
                if g.is_zero() {
                    continue;
                }
                for (v, c) in kl_expand_parabolic(kl, g.terms()) {
                    out.insert(sys.multiply(u, v), c);
                }
            }
            out
        }
    }
}

/// `v -> h^J_{uv,w}` for `v` in `W_J` (zeros omitted).
pub fn restriction_coeffs(kl: &KlCache, u: Element, w: Element, subset: GenSet) -> Result<Coeffs> {
    let sys = kl.system();
    sys.check_subset(subset)?;
    sys.require_min_left_rep(u, subset)?;
    Ok(restriction_coeffs_unchecked(kl, sys, u, w, subset))
}

fn restriction_coeffs_unchecked(
    kl: &KlCache,
    sys: &CoxeterSystem,
    u: Element,
    w: Element,
    subset: GenSet,
) -> Coeffs {
    let g: Terms = kl
        .column(w)
        .iter()
        .filter_map(|(&x, h)| {
            let (xu, xv) = sys.parabolic_factorize_left(x, subset);
            (xu == u).then(|| (xv, h.clone()))
        })
        .collect();
    kl_expand_parabolic(kl, &g)
}

fn check_nested(sys: &CoxeterSystem, i: GenSet, j: GenSet) -> Result<()> {
    sys.check_subset(j)?;
    if !i.is_subset(j) {
        return Err(Error::Domain(format!("I = {{{i}}} is not contained in J = {{{j}}}")));
    }
    Ok(())
}

/// Matrix of `h^{I,J}_{x,w}`: column `w` holds the `TC^I`-coordinates of
/// `TC^J_w`. Built from the single block `[TC^I_v] C_{v'}` over `W_J`,
/// replicated across the cosets `u W_J`.
pub fn transition_matrix(kl: &KlCache, i: GenSet, j: GenSet) -> Result<PolyMatrix> {
    let sys = kl.system();
    check_nested(sys, i, j)?;
    let wj = sys.parabolic_elements(j);
    let block: Vec<(Element, Coeffs)> = wj
        .par_iter()
        .map(|&v2| {
            let mut col = Coeffs::new();
            // [TC^I_{ab}] C_{v2} = [C_b] (T_{a^-1} C_{v2})|_I
            for a in sys.min_coset_reps(i, Side::Left) {
                if !sys.in_parabolic(a, j) || !sys.bruhat_leq(a, v2) {
                    continue;
                }
                for (b, c) in restriction_coeffs_unchecked(kl, sys, a, v2, i) {
                    col.insert(sys.multiply(a, b), c);
                }
            }
            (v2, col)
        })
        .collect();
    let all = sys.enumerate();
    let mut m = PolyMatrix::new(all.clone(), all);
    for u in sys.min_coset_reps(j, Side::Left) {
        for (v2, col) in &block {
            let c = sys.multiply(u, *v2);
            for (v, p) in col {
                m.set(sys.multiply(u, *v), c, p.clone());
            }
        }
    }
    Ok(m)
}

/// Same matrix, expanding every `TC^J_w` in the `TC^I` basis independently.
pub fn transition_matrix_direct(kl: &KlCache, i: GenSet, j: GenSet) -> Result<PolyMatrix> {
    let sys = kl.system();
    check_nested(sys, i, j)?;
    let all = sys.enumerate();
    let cols: Vec<(Element, Coeffs)> = all
        .par_iter()
        .map(|&w| {
            let tc = hybrid_element(kl, HybridBasisSpec::tc(j), w);
            (w, expand_in_hybrid(kl, &tc, HybridBasisSpec::tc(i)))
        })
        .collect();
    let mut m = PolyMatrix::new(all.clone(), all);
    for (w, col) in cols {
        for (x, p) in col {
            m.set(x, w, p);
        }
    }
    Ok(m)
}

/// `J_i = {1, .., i}` for `i = 0..rank`.
pub fn default_chain(rank: usize) -> Vec<GenSet> {
    (0..=rank).map(|i| GenSet::from_indices(0..i)).collect()
}

/// Parses `"∅<1<1,2"`: subsets separated by `<`, each a comma-separated
/// list of 1-based generators, `∅` (or an empty field) for the empty set.
pub fn parse_chain(s: &str, rank: usize) -> Result<Vec<GenSet>> {
    let chain = s
        .split('<')
        .map(|part| GenSet::parse(part, rank))
        .collect::<Result<Vec<_>>>()?;
    validate_chain(&chain, rank)?;
    Ok(chain)
}

/// Strictly increasing from the empty set to all of `S`.
pub fn validate_chain(chain: &[GenSet], rank: usize) -> Result<()> {
    let full = GenSet::full(rank);
    if chain.len() < 2 || chain[0] != GenSet::empty() || *chain.last().unwrap() != full {
        return Err(Error::Domain("a chain must run from the empty set to all generators".into()));
    }
    for (k, pair) in chain.windows(2).enumerate() {
        if !pair[0].is_subset(pair[1]) || pair[0] == pair[1] {
            return Err(Error::Domain(format!(
                "chain is not strictly increasing at step {}: {{{}}} then {{{}}}",
                k + 1,
                pair[0],
                pair[1]
            )));
        }
    }
    Ok(())
}

/// Factors `M_k = transition_matrix(J_{k-1}, J_k)`; their product in order
/// is the Kazhdan-Lusztig matrix.
pub fn factorize_chain(kl: &KlCache, chain: &[GenSet]) -> Result<Vec<PolyMatrix>> {
    validate_chain(chain, kl.system().rank())?;
    chain.windows(2).map(|p| transition_matrix(kl, p[0], p[1])).collect()
}

/// Product of the factors, to compare with the Kazhdan-Lusztig matrix.
pub fn chain_product(factors: &[PolyMatrix]) -> Result<PolyMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Domain("empty factorization".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| acc.try_mul(m))
}

/// Matrix over `W^J x W^J` with entry `(u, u') = h^J_{u,u'}`, the parabolic
/// Kazhdan-Lusztig polynomials for the sign representation.
pub fn parabolic_kl(kl: &KlCache, subset: GenSet) -> Result<PolyMatrix> {
    let sys = kl.system();
    sys.check_subset(subset)?;
    let reps = sys.min_coset_reps(subset, Side::Left);
    let mut m = PolyMatrix::new(reps.clone(), reps.clone());
    for &u2 in &reps {
        for &u in &reps {
            let c = restriction_coeffs_unchecked(kl, sys, u, u2, subset);
            if let Some(p) = c.get(&sys.identity()) {
                m.set(u, u2, p.clone());
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;

    fn cache(t: &str) -> KlCache {
        KlCache::for_type(t.parse().unwrap()).unwrap()
    }

    fn el(kl: &KlCache, w: &str) -> Element {
        kl.system().parse_word(w).unwrap()
    }

    #[test]
    fn hybrid_element_examples() {
        let kl = cache("A3");
        let sys = kl.system();
        let alg = kl.algebra();
        for w in sys.elements() {
            assert_eq!(hybrid_element(&kl, HybridBasisSpec::tc(GenSet::empty()), w), alg.t_basis(w));
            assert_eq!(hybrid_element(&kl, HybridBasisSpec::tc(sys.generators()), w), kl.kl_element(w));
            let s1 = GenSet::singleton(0);
            let ws1 = sys.right_mul(w, 0);
            if sys.length(ws1) < sys.length(w) {
                let expected = &alg.t_basis(w) + &alg.t_basis(ws1).scale(&LaurentPoly::q());
                assert_eq!(hybrid_element(&kl, HybridBasisSpec::tc(s1), w), expected);
            }
        }
        // TC^{1,2}_{u s2 s1} = T_u (T_{s2} + q) C_{s1}
        let j = GenSet::from_indices([0, 1]);
        for u in sys.min_coset_reps(j, Side::Left) {
            let w = sys.multiply(u, el(&kl, "2,1"));
            let cs2 = &alg.t_generator(1) + &alg.scalar(LaurentPoly::q());
            let expected = &(&alg.t_basis(u) * &cs2) * &kl.kl_element(el(&kl, "1"));
            assert_eq!(hybrid_element(&kl, HybridBasisSpec::tc(j), w), expected);
        }
    }

    #[test]
    fn hybrid_element_matches_product() {
        let kl = cache("B3");
        let sys = kl.system();
        let alg = kl.algebra();
        for j in GenSet::all_subsets(3) {
            for w in sys.elements() {
                let (u, v) = sys.parabolic_factorize_left(w, j);
                let tc = &alg.t_basis(u) * &kl.kl_element(v);
                assert_eq!(hybrid_element(&kl, HybridBasisSpec::tc(j), w), tc);
                let (v, u) = sys.parabolic_factorize_right(w, j);
                let ct = &kl.kl_element(v) * &alg.t_basis(u);
                assert_eq!(hybrid_element(&kl, HybridBasisSpec::ct(j), w), ct);
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let kl = cache("A3");
        let sys = kl.system();
        let alg = kl.algebra();
        for j in GenSet::all_subsets(3) {
            for w in sys.elements() {
                let spec = HybridBasisSpec::tc(j);
                let got = expand_in_hybrid(&kl, &hybrid_element(&kl, spec, w), spec);
                assert_eq!(got, Coeffs::from([(w, LaurentPoly::one())]));
            }
        }
        for w in sys.elements() {
            let got = expand_in_hybrid(&kl, &kl.kl_element(w), HybridBasisSpec::tc(GenSet::empty()));
            assert_eq!(&got, kl.column(w));
        }
        let s = sys.generator(2);
        let got = expand_in_hybrid(&kl, &alg.t_basis(s), HybridBasisSpec::tc(sys.generators()));
        assert_eq!(got, Coeffs::from([(s, LaurentPoly::one()), (sys.identity(), -LaurentPoly::q())]));
    }

    #[test]
    fn restriction_coefficient_examples() {
        let kl = cache("A3");
        let sys = kl.system();
        let j = GenSet::from_indices([0, 1]);
        let s = sys.generator(0);
        assert_eq!(
            restriction_coeffs(&kl, sys.identity(), s, j).unwrap(),
            Coeffs::from([(s, LaurentPoly::one())])
        );
        // u not below w^J gives zero
        for u in sys.min_coset_reps(j, Side::Left) {
            for w in sys.elements() {
                let (wq, _) = sys.parabolic_factorize_left(w, j);
                if !sys.bruhat_leq(u, wq) {
                    assert!(restriction_coeffs(&kl, u, w, j).unwrap().is_empty());
                }
            }
        }
        // u = s2 s3, w^J = s1 s2 s3 gives q C_{w_J}
        let u = el(&kl, "2,3");
        for v in sys.parabolic_elements(j) {
            let w = sys.multiply(el(&kl, "1,2,3"), v);
            assert_eq!(restriction_coeffs(&kl, u, w, j).unwrap(), Coeffs::from([(v, LaurentPoly::q())]));
        }
        let err = restriction_coeffs(&kl, el(&kl, "1"), s, j).unwrap_err();
        assert!(matches!(err, Error::NotCosetRepresentative { descent: 1, .. }));
    }

    #[test]
    fn restriction_coeffs_match_direct_restriction() {
        for t in ["A3", "B3"] {
            let kl = cache(t);
            let sys = kl.system();
            let alg = kl.algebra();
            for j in GenSet::all_subsets(3) {
                for u in sys.min_coset_reps(j, Side::Left) {
                    for w in sys.elements() {
                        let direct = (&alg.t_basis(sys.inverse(u)) * &kl.kl_element(w)).restrict(j);
                        let coeffs = restriction_coeffs(&kl, u, w, j).unwrap();
                        let mut rebuilt = alg.zero();
                        for (v, c) in &coeffs {
                            rebuilt = &rebuilt + &kl.kl_element(*v).scale(c);
                        }
                        assert_eq!(rebuilt, direct, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn transition_matrix_examples() {
        let kl = cache("A3");
        let sys = kl.system();
        let all = sys.enumerate();
        for j in GenSet::all_subsets(3) {
            assert_eq!(transition_matrix(&kl, j, j).unwrap(), PolyMatrix::identity(all.clone()));
        }
        assert_eq!(transition_matrix(&kl, GenSet::empty(), sys.generators()).unwrap(), kl.kl_matrix());
        let i = GenSet::singleton(0);
        let j = GenSet::from_indices([0, 1]);
        let m = transition_matrix(&kl, i, j).unwrap();
        for u in sys.min_coset_reps(j, Side::Left) {
            let col = m.column(sys.multiply(u, el(&kl, "1,2")));
            let expected = Coeffs::from([
                (sys.multiply(u, el(&kl, "1,2")), LaurentPoly::one()),
                (sys.multiply(u, el(&kl, "2")), LaurentPoly::q()),
                (sys.multiply(u, el(&kl, "1")), LaurentPoly::q()),
            ]);
            assert_eq!(col, expected);
        }
        assert!(matches!(transition_matrix(&kl, j, i), Err(Error::Domain(_))));
    }

    #[test]
    fn block_replication_matches_direct_expansion() {
        for t in ["A3", "B3", "I2(6)"] {
            let kl = cache(t);
            let r = kl.system().rank();
            for j in GenSet::all_subsets(r) {
                for i in GenSet::all_subsets(r).filter(|i| i.is_subset(j)) {
                    let fast = transition_matrix(&kl, i, j).unwrap();
                    assert_eq!(fast, transition_matrix_direct(&kl, i, j).unwrap(), "{t}");
                    assert!(fast.is_nonnegative_polynomial());
                    assert!(fast.is_bruhat_unitriangular(kl.system()));
                }
            }
        }
    }

    #[test]
    fn factorization() {
        for t in ["A2", "A3", "B3", "I2(5)"] {
            let kl = cache(t);
            let r = kl.system().rank();
            let factors = factorize_chain(&kl, &default_chain(r)).unwrap();
            assert_eq!(factors.len(), r);
            assert_eq!(chain_product(&factors).unwrap(), kl.kl_matrix(), "{t}");
            let single = factorize_chain(&kl, &[GenSet::empty(), GenSet::full(r)]).unwrap();
            assert_eq!(single, vec![kl.kl_matrix()]);
        }
    }

    #[test]
    fn chain_parsing() {
        assert_eq!(
            parse_chain("\u{2205}<1<1,2", 2).unwrap(),
            vec![GenSet::empty(), GenSet::singleton(0), GenSet::full(2)]
        );
        assert_eq!(parse_chain("<1,2", 2).unwrap(), vec![GenSet::empty(), GenSet::full(2)]);
        assert!(parse_chain("1<1,2", 2).is_err());
        assert!(parse_chain("\u{2205}<1", 2).is_err());
        assert!(parse_chain("\u{2205}<1<1<1,2", 2).is_err());
        assert!(parse_chain("\u{2205}<2<1,2,3", 3).is_ok());
        assert!(parse_chain("\u{2205}<1,2<2<1,2,3", 3).is_err());
    }

    #[test]
    fn parabolic_kl_type_a_quotient() {
        for n in 2..=4 {
            let kl = KlCache::for_type(CoxeterType::A(n)).unwrap();
            let sys = kl.system();
            let j = GenSet::from_indices(0..n - 1);
            let m = parabolic_kl(&kl, j).unwrap();
            for &u in m.rows() {
                for &u2 in m.cols() {
                    let gap = sys.length(u2) as i64 - sys.length(u) as i64;
                    let expected = match gap {
                        0 => LaurentPoly::one(),
                        1 => LaurentPoly::q(),
                        _ => LaurentPoly::zero(),
                    };
                    assert_eq!(m.entry(u, u2), expected);
                }
            }
        }
    }

    #[test]
    fn ct_expansion_by_transport() {
        let kl = cache("A3");
        let sys = kl.system();
        for j in GenSet::all_subsets(3) {
            for w in sys.elements() {
                let tc = hybrid_element(&kl, HybridBasisSpec::tc(j), w);
                assert_eq!(tc.psi(), hybrid_element(&kl, HybridBasisSpec::ct(j), sys.inverse(w)));
                let h = &kl.kl_element(sys.longest_element()) * &tc;
                let ct = expand_in_hybrid(&kl, &h.psi(), HybridBasisSpec::ct(j));
                let tc_coeffs = expand_in_hybrid(&kl, &h, HybridBasisSpec::tc(j));
                let transported: Coeffs = tc_coeffs.into_iter().map(|(x, c)| (sys.inverse(x), c)).collect();
                assert_eq!(ct, transported);
            }
        }
    }
}
