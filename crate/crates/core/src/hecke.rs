//! The Hecke algebra `H(W)` over `Z[q, q^-1]` in the standard basis `{T_w}`.
//!
//! Relations: `T_s^2 = 1 + (q^-1 - q) T_s`, and `T_u T_v = T_{uv}` whenever
//! lengths add. Elements are sparse maps from group elements to Laurent
//! polynomials; every operation keeps them free of zero coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::coxeter::{CoxeterSystem, Element, GenSet};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Sparse `T`-expansion: `x -> [T_x] h`.
pub type Terms = BTreeMap<Element, LaurentPoly>;

fn q_inv_minus_q() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, 1), (1, -1)])
}

pub(crate) fn add_into(terms: &mut Terms, x: Element, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(x).or_insert_with(LaurentPoly::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&x);
    }
}

pub(crate) fn add_scaled_into(terms: &mut Terms, x: Element, a: &LaurentPoly, b: &LaurentPoly) {
    let entry = terms.entry(x).or_insert_with(LaurentPoly::zero);
    entry.add_product(a, b);
    if entry.is_zero() {
        terms.remove(&x);
    }
}

/// `T_s * h` on raw terms.
pub fn left_mul_generator(sys: &CoxeterSystem, s: usize, terms: &Terms) -> Terms {
    let mut out = Terms::new();
    let d = q_inv_minus_q();
    for (&w, a) in terms {
        let sw = sys.left_mul(s, w);
        add_into(&mut out, sw, a);
        if sys.length(sw) < sys.length(w) {
            add_scaled_into(&mut out, w, &d, a);
        }
    }
    out
}

/// `h * T_s` on raw terms.
pub fn right_mul_generator(sys: &CoxeterSystem, terms: &Terms, s: usize) -> Terms {
    let mut out = Terms::new();
    let d = q_inv_minus_q();
    for (&w, a) in terms {
        let ws = sys.right_mul(w, s);
        add_into(&mut out, ws, a);
        if sys.length(ws) < sys.length(w) {
            add_scaled_into(&mut out, w, &d, a);
        }
    }
    out
}

/// `h * C_s = h * (T_s + q)` on raw terms.
pub fn right_mul_kl_generator(sys: &CoxeterSystem, terms: &Terms, s: usize) -> Terms {
    let mut out = Terms::new();
    for (&x, a) in terms {
        let xs = sys.right_mul(x, s);
        add_into(&mut out, xs, a);
        let e = if sys.length(xs) > sys.length(x) { 1 } else { -1 };
        add_into(&mut out, x, &a.shift(e));
    }
    out
}

/// `T_x * h` on raw terms, applying the generators of `x` right to left.
pub fn left_mul_standard(sys: &CoxeterSystem, x: Element, terms: &Terms) -> Terms {
    sys.word(x)
        .iter()
        .rev()
        .fold(terms.clone(), |acc, &s| left_mul_generator(sys, s as usize, &acc))
}

/// Product of two raw expansions.
pub fn multiply_terms(sys: &CoxeterSystem, a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&x, c) in a {
        for (y, d) in left_mul_standard(sys, x, b) {
            add_scaled_into(&mut out, y, c, &d);
        }
    }
    out
}

/// A Hecke algebra together with its lazily tabulated `bar(T_x)`.
pub struct HeckeAlgebra {
    system: Arc<CoxeterSystem>,
    bar_table: Vec<OnceLock<Terms>>,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeAlgebra({})", self.system.kind())
    }
}

impl HeckeAlgebra {
    pub fn new(system: Arc<CoxeterSystem>) -> Arc<Self> {
        let n = system.size();
        Arc::new(HeckeAlgebra {
            system,
            bar_table: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    /// `bar(T_x) = bar(T_{xs}) (T_s + q - q^-1)` for the last letter `s` of
    /// the normal word of `x`.
    pub fn bar_standard(&self, x: Element) -> &Terms {
        self.bar_table[x.index()].get_or_init(|| {
            let sys = &*self.system;
            if x == sys.identity() {
                return Terms::from([(x, LaurentPoly::one())]);
            }
            let s = *sys.word(x).last().expect("nonidentity word") as usize;
            let prev = self.bar_standard(sys.right_mul(x, s));
            let mut out = right_mul_generator(sys, prev, s);
            let shift = -q_inv_minus_q();
            for (&y, a) in prev {
                add_scaled_into(&mut out, y, &shift, a);
            }
            out
        })
    }

    pub fn zero(self: &Arc<Self>) -> HeckeElement {
        HeckeElement::from_terms(self, Terms::new())
    }

    pub fn one(self: &Arc<Self>) -> HeckeElement {
        self.t_basis(self.system.identity())
    }

    /// The standard basis element `T_w`.
    pub fn t_basis(self: &Arc<Self>, w: Element) -> HeckeElement {
        HeckeElement::from_terms(self, Terms::from([(w, LaurentPoly::one())]))
    }

    /// `T_s` for the 0-based generator `s`.
    pub fn t_generator(self: &Arc<Self>, s: usize) -> HeckeElement {
        self.t_basis(self.system.generator(s))
    }

    pub fn scalar(self: &Arc<Self>, c: LaurentPoly) -> HeckeElement {
        let mut terms = Terms::new();
        add_into(&mut terms, self.system.identity(), &c);
        HeckeElement::from_terms(self, terms)
    }
}

/// An element of a Hecke algebra, `sum_x a_x T_x`.
#[derive(Clone)]
pub struct HeckeElement {
    alg: Arc<HeckeAlgebra>,
    terms: Terms,
}

impl HeckeElement {
    /// Builds an element, dropping zero coefficients.
    pub fn from_terms(alg: &Arc<HeckeAlgebra>, mut terms: Terms) -> Self {
        terms.retain(|_, c| !c.is_zero());
        HeckeElement {
            alg: Arc::clone(alg),
            terms,
        }
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.alg.system()
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `[T_x] h`.
    pub fn coeff(&self, x: Element) -> LaurentPoly {
        self.terms.get(&x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.terms.keys().copied()
    }

    fn check_same(&self, other: &HeckeElement) -> Result<()> {
        let (a, b) = (self.system().kind(), other.system().kind());
        if a == b {
            Ok(())
        } else {
            Err(Error::SystemMismatch {
                left: a.to_string(),
                right: b.to_string(),
            })
        }
    }

    fn with_terms(&self, terms: Terms) -> HeckeElement {
        HeckeElement {
            alg: Arc::clone(&self.alg),
            terms,
        }
    }

    pub fn try_add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (&x, c) in &other.terms {
            add_into(&mut terms, x, c);
        }
        Ok(self.with_terms(terms))
    }

    pub fn try_sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.check_same(other)?;
        Ok(self.with_terms(multiply_terms(self.system(), &self.terms, &other.terms)))
    }

    /// `c * h` for a scalar `c`.
    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        if c.is_zero() {
            return self.with_terms(Terms::new());
        }
        self.with_terms(self.terms.iter().map(|(&x, a)| (x, a * c)).collect())
    }

    /// `T_s h`.
    pub fn left_mul_generator(&self, s: usize) -> HeckeElement {
        self.with_terms(left_mul_generator(self.system(), s, &self.terms))
    }

    /// `h T_s`.
    pub fn right_mul_generator(&self, s: usize) -> HeckeElement {
        self.with_terms(right_mul_generator(self.system(), &self.terms, s))
    }

    /// The bar involution: `q -> q^-1` on scalars and `T_x -> T_{x^-1}^-1`.
    pub fn bar(&self) -> HeckeElement {
        let mut out = Terms::new();
        for (&x, a) in &self.terms {
            let ab = a.bar();
            for (&y, b) in self.alg.bar_standard(x) {
                add_scaled_into(&mut out, y, &ab, b);
            }
        }
        self.with_terms(out)
    }

    /// The anti-automorphism `T_x -> T_x^-1`, barring scalars.
    pub fn omega(&self) -> HeckeElement {
        let sys = self.system();
        let mut out = Terms::new();
        for (&x, a) in &self.terms {
            let ab = a.bar();
            for (&y, b) in self.alg.bar_standard(sys.inverse(x)) {
                add_scaled_into(&mut out, y, &ab, b);
            }
        }
        self.with_terms(out)
    }

    /// The anti-automorphism `T_w -> T_{w^-1}` fixing scalars.
    pub fn psi(&self) -> HeckeElement {
        let sys = self.system();
        self.with_terms(self.terms.iter().map(|(&x, a)| (sys.inverse(x), a.clone())).collect())
    }

    /// The pairing with `(bar(T_x), T_y) = delta_{x,y}`, semilinear in the
    /// first slot: `sum_x [T_x](bar h) * [T_x] h2`.
    pub fn form(&self, other: &HeckeElement) -> Result<LaurentPoly> {
        self.check_same(other)?;
        let b = self.bar();
        let mut out = LaurentPoly::zero();
        for (x, a) in &b.terms {
            if let Some(c) = other.terms.get(x) {
                out.add_product(a, c);
            }
        }
        Ok(out)
    }

    /// Projection onto the parabolic subalgebra `H_J`: keeps exactly the
    /// terms `T_w` with `w` in `W_J`. The result stays in the ambient algebra.
    pub fn restrict(&self, subset: GenSet) -> HeckeElement {
        let sys = self.system();
        self.with_terms(
            self.terms
                .iter()
                .filter(|(&x, _)| sys.in_parabolic(x, subset))
                .map(|(&x, a)| (x, a.clone()))
                .collect(),
        )
    }

    /// Whether every term lies in `W_J`.
    pub fn is_supported_in(&self, subset: GenSet) -> bool {
        self.terms.keys().all(|&x| self.system().in_parabolic(x, subset))
    }

    /// `{"terms": [{"word": [..], "coeff": {..}}]}`, words 1-based.
    pub fn to_json(&self) -> Value {
        let sys = self.system();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&x, a)| json!({ "word": sys.word_one_based(x), "coeff": a }))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(alg: &Arc<HeckeAlgebra>, value: &Value) -> Result<HeckeElement> {
        let bad = |reason: &str| Error::Parse {
            input: value.to_string(),
            reason: reason.to_string(),
        };
        let list = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let sys = alg.system();
        let mut terms = Terms::new();
        for item in list {
            let word: Vec<usize> = item
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without \"word\""))?
                .iter()
                .map(|v| match v.as_u64() {
                    Some(i) if i >= 1 && (i as usize) <= sys.rank() => Ok(i as usize - 1),
                    _ => Err(bad("word letter outside the generator range")),
                })
                .collect::<Result<_>>()?;
            let coeff: LaurentPoly = serde_json::from_value(
                item.get("coeff").cloned().ok_or_else(|| bad("term without \"coeff\""))?,
            )
            .map_err(|e| bad(&e.to_string()))?;
            add_into(&mut terms, sys.element_from_word(&word)?, &coeff);
        }
        Ok(HeckeElement::from_terms(alg, terms))
    }
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.system().kind() == other.system().kind() && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sys = self.system();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&x, a)| format!("({a})*T[{}]", sys.word_string(x)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        self.with_terms(self.terms.iter().map(|(&x, a)| (x, -a)).collect())
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_add(rhs).expect("sum of elements from different Hecke algebras")
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_sub(rhs).expect("difference of elements from different Hecke algebras")
    }
}

impl Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        self.try_mul(rhs).expect("product of elements from different Hecke algebras")
    }
}
