//! Independent computations used to cross-check the main pipeline: the
//! sign-induced module, closed forms for dihedral groups and for type A
//! with `J = {1, .., n-1}`, and restriction of the elements `R_w`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coxeter::{CoxeterSystem, CoxeterType, Element, GenSet, Side};
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::hybrid::{kl_expand_parabolic, Coeffs};
use crate::klbasis::{r_element, KlCache};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

/// `sum_u a_u T_u e_J` in the module induced from the sign character of
/// `H_J`, where `T_s e_J = -q e_J` for `s` in `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignModuleElement {
    pub subset: GenSet,
    pub terms: BTreeMap<Element, LaurentPoly>,
}

impl SignModuleElement {
    pub fn zero(subset: GenSet) -> Self {
        SignModuleElement {
            subset,
            terms: BTreeMap::new(),
        }
    }

    /// `T_u e_J` for `u` in `W^J`.
    pub fn basis(subset: GenSet, u: Element) -> Self {
        SignModuleElement {
            subset,
            terms: BTreeMap::from([(u, LaurentPoly::one())]),
        }
    }

    fn add(&mut self, u: Element, c: &LaurentPoly) {
        crate::hecke::add_into(&mut self.terms, u, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: Element) -> LaurentPoly {
        self.terms.get(&u).cloned().unwrap_or_else(LaurentPoly::zero)
    }
}

fn neg_q_pow(k: usize) -> LaurentPoly {
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    LaurentPoly::monomial(sign, k as i32)
}

/// Image of `h e_J`: `T_{uv}` with `u` in `W^J`, `v` in `W_J` goes to
/// `(-q)^{l(v)} T_u e_J`.
pub fn sign_project(sys: &CoxeterSystem, h: &HeckeElement, subset: GenSet) -> SignModuleElement {
    let mut out = SignModuleElement::zero(subset);
    for (&x, a) in h.terms() {
        let (u, v) = sys.parabolic_factorize_left(x, subset);
        out.add(u, &(a * &neg_q_pow(sys.length(v))));
    }
    out
}

/// `T_s` acting on the induced module, from the rules
/// `su > u, su in W^J`: `T_{su} e`; `su = us'` with `s'` in `J`: `-q T_u e`;
/// `su < u`: `T_{su} e + (q^-1 - q) T_u e`.
pub fn sign_act_generator(sys: &CoxeterSystem, s: usize, m: &SignModuleElement) -> SignModuleElement {
    let j = m.subset;
    let mut out = SignModuleElement::zero(j);
    let minus_q = -LaurentPoly::q();
    let d = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
    for (&u, a) in &m.terms {
        let su = sys.left_mul(s, u);
        if sys.length(su) < sys.length(u) {
            out.add(su, a);
            out.add(u, &(a * &d));
        } else if sys.is_min_left_rep(su, j) {
            out.add(su, a);
        } else {
            out.add(u, &(a * &minus_q));
        }
    }
    out
}

/// `h` acting on a module element, generator by generator.
pub fn sign_act(sys: &CoxeterSystem, h: &HeckeElement, m: &SignModuleElement) -> SignModuleElement {
    let mut out = SignModuleElement::zero(m.subset);
    for (&x, a) in h.terms() {
        let image = sys
            .word(x)
            .iter()
            .rev()
            .fold(m.clone(), |acc, &s| sign_act_generator(sys, s as usize, &acc));
        for (u, c) in image.terms {
            out.add(u, &(a * &c));
        }
    }
    out
}

/// Parabolic Kazhdan-Lusztig matrix over `W^J` read off from
/// `C_{u'} e_J = sum_u P_{u,u'} T_u e_J`.
pub fn parabolic_kl_deodhar(kl: &KlCache, subset: GenSet) -> Result<PolyMatrix> {
    let sys = kl.system();
    sys.check_subset(subset)?;
    let reps = sys.min_coset_reps(subset, Side::Left);
    let mut m = PolyMatrix::new(reps.clone(), reps.clone());
    for &u2 in &reps {
        let image = sign_project(sys, &kl.kl_element(u2), subset);
        for (u, p) in image.terms {
            m.set(u, u2, p);
        }
    }
    Ok(m)
}

/// Closed form for `(T_{u^-1} C_w)|_{{1}}` in `I2(m)`, `u` in `W^{{1}}` of
/// length `k`: `q^{l(w)-k-1} C_{s1}` if `w >= us1`; `q^{l(w)-k}` if
/// `u <= w <= (us1)` with letters 1 and 2 swapped; zero otherwise. Cases
/// are tried in that order.
pub fn dihedral_restriction(sys: &CoxeterSystem, u: Element, w: Element) -> Result<Coeffs> {
    let CoxeterType::I2(_) = sys.kind() else {
        return Err(Error::UnsupportedType(format!("dihedral formula needs I2(m), got {}", sys.kind())));
    };
    let j = GenSet::singleton(0);
    sys.require_min_left_rep(u, j)?;
    let k = sys.length(u) as i32;
    let lw = sys.length(w) as i32;
    let us1 = sys.right_mul(u, 0);
    let swapped: Vec<usize> = sys.word(us1).iter().map(|&s| 1 - s as usize).collect();
    let swapped = sys.element_from_word(&swapped)?;
    Ok(if sys.bruhat_leq(us1, w) {
        Coeffs::from([(sys.generator(0), LaurentPoly::q_pow(lw - k - 1))])
    } else if sys.bruhat_leq(u, w) && sys.bruhat_leq(w, swapped) {
        Coeffs::from([(sys.identity(), LaurentPoly::q_pow(lw - k))])
    } else {
        Coeffs::new()
    })
}

fn type_a_rank(sys: &CoxeterSystem) -> Result<usize> {
    match sys.kind() {
        CoxeterType::A(n) => Ok(n),
        other => Err(Error::UnsupportedType(format!("type A formula needs A(n), got {other}"))),
    }
}

/// `s_i s_{i+1} .. s_n` (1-based `i`); the identity for `i = n + 1`.
pub fn tail_product(sys: &CoxeterSystem, i: usize) -> Element {
    let n = sys.rank();
    let letters: Vec<usize> = (i..=n).map(|k| k - 1).collect();
    sys.element_from_word(&letters).expect("letters within rank")
}

/// Closed forms for `(T_{s_n .. s_i} C_w)|_{[n-1]}` in type `A(n)`, i.e.
/// restriction coefficients for `u = s_i .. s_n`, `i` in `{1, 2, 3}`.
pub fn type_a_restriction(kl: &KlCache, i: usize, w: Element) -> Result<Coeffs> {
    let sys = kl.system();
    let n = type_a_rank(sys)?;
    if !(1..=3).contains(&i) || i > n {
        return Err(Error::Domain(format!("type A closed forms need 1 <= i <= min(3, n), got i = {i}, n = {n}")));
    }
    let j = GenSet::from_indices(0..n - 1);
    let (wq, wj) = sys.parabolic_factorize_left(w, j);
    let single = |c: LaurentPoly| Coeffs::from([(wj, c)]);
    let q = LaurentPoly::q();
    let out = if wq == tail_product(sys, i) {
        single(LaurentPoly::one())
    } else if i >= 2 && wq == tail_product(sys, i - 1) {
        single(q)
    } else if i == 3 && wq == tail_product(sys, 1) {
        if sys.is_left_descent(wj, 0) {
            single(LaurentPoly::q_pow(2))
        } else {
            // q C_{s1} C_{w_J}, re-expanded in the KL basis of W_J
            let alg = kl.algebra();
            let cs1 = &alg.t_generator(0) + &alg.scalar(LaurentPoly::q());
            let prod = (&cs1 * &kl.kl_element(wj)).scale(&q);
            kl_expand_parabolic(kl, prod.terms())
        }
    } else {
        Coeffs::new()
    };
    Ok(out)
}

fn check_in_quotient_subgroup(sys: &CoxeterSystem, n: usize, els: &[Element]) -> Result<()> {
    let j = GenSet::from_indices(0..n - 1);
    if els.iter().all(|&x| sys.in_parabolic(x, j)) {
        Ok(())
    } else {
        Err(Error::Domain("elements must lie in W_{[n-1]}".into()))
    }
}

/// `h_{y,x} = h_{s_i..s_n y, s_i..s_n x}` for `y, x` in `W_{[n-1]}`.
pub fn heq1_check(kl: &KlCache, i: usize, y: Element, x: Element) -> Result<bool> {
    let sys = kl.system();
    let n = type_a_rank(sys)?;
    check_in_quotient_subgroup(sys, n, &[y, x])?;
    if i == 0 || i > n {
        return Err(Error::Domain(format!("need 1 <= i <= {n}, got {i}")));
    }
    let t = tail_product(sys, i);
    Ok(kl.kl_poly(y, x) == kl.kl_poly(sys.multiply(t, y), sys.multiply(t, x)))
}

/// Checks `h_{s_{i+2}..s_n y, s_i..s_n x}` against
/// `q^2 h_{y,x}` if `s_i x < x`; `q h_{s_i y,x} + h_{y,x}` if `s_i y < y`,
/// `s_i x > x`; `q h_{s_i y,x} + q^2 h_{y,x}` otherwise; together with the
/// coefficient of `q`: `delta_{s_i y, x} + mu(y, x)` in the middle case and
/// zero otherwise.
pub fn hi2i_check(kl: &KlCache, i: usize, y: Element, x: Element) -> Result<bool> {
    let sys = kl.system();
    let n = type_a_rank(sys)?;
    check_in_quotient_subgroup(sys, n, &[y, x])?;
    if i == 0 || i + 2 > n {
        return Err(Error::Domain(format!("need 1 <= i <= n - 2 = {}, got {i}", n as i64 - 2)));
    }
    let s = i - 1;
    let lhs_row = sys.multiply(tail_product(sys, i + 2), y);
    let lhs_col = sys.multiply(tail_product(sys, i), x);
    let lhs = kl.kl_poly(lhs_row, lhs_col);
    let siy = sys.left_mul(s, y);
    let hyx = kl.kl_poly(y, x);
    let q = LaurentPoly::q();
    let q2 = LaurentPoly::q_pow(2);
    let x_desc = sys.is_left_descent(x, s);
    let y_desc = sys.is_left_descent(y, s);
    let expected = if x_desc {
        &q2 * &hyx
    } else if y_desc {
        &(&q * &kl.kl_poly(siy, x)) + &hyx
    } else {
        &(&q * &kl.kl_poly(siy, x)) + &(&q2 * &hyx)
    };
    let mu_expected = if !x_desc && y_desc {
        BigInt::from((siy == x) as i32) + kl.mu(y, x)
    } else {
        BigInt::from(0)
    };
    Ok(lhs == expected && kl.mu(lhs_row, lhs_col) == mu_expected)
}

/// `(T_{u^-1} R_w)|_J` from the maximal elements `gamma` of
/// `{v in W_J : uv <= w}`: `q^{l(w)-l(u)} sum_gamma q^{-l(gamma)} R_gamma`.
pub fn r_restriction(alg: &Arc<HeckeAlgebra>, u: Element, w: Element, subset: GenSet) -> Result<HeckeElement> {
    let sys = alg.system();
    sys.require_min_left_rep(u, subset)?;
    let below: Vec<Element> = sys
        .parabolic_elements(subset)
        .into_iter()
        .filter(|&v| sys.bruhat_leq(sys.multiply(u, v), w))
        .collect();
    let maximal = below
        .iter()
        .filter(|&&g| !below.iter().any(|&v| sys.bruhat_lt(g, v)));
    let base = sys.length(w) as i32 - sys.length(u) as i32;
    let mut out = alg.zero();
    for &g in maximal {
        let scaled = r_element(alg, g).scale(&LaurentPoly::q_pow(base - sys.length(g) as i32));
        out = &out + &scaled;
    }
    Ok(out)
}

/// `(T_{u^-1} R_w)|_J` by multiplying out.
pub fn r_restriction_direct(alg: &Arc<HeckeAlgebra>, u: Element, w: Element, subset: GenSet) -> HeckeElement {
    let sys = alg.system();
    (&alg.t_basis(sys.inverse(u)) * &r_element(alg, w)).restrict(subset)
}
