//! Kazhdan-Lusztig basis elements `C_w = sum_x h_{x,w} T_x`.
//!
//! [`KlCache`] builds columns with the product-and-correct recursion
//! `C_{ws} = C_w C_s - sum_{z < w, zs < z} mu(z, w) C_z` along ShortLex normal
//! words. [`KlOracle`] evaluates `h_{y,x}` by an unrelated recursion on left
//! descents and keeps its own memo table, so the two can check each other.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterSystem, CoxeterType, Element};
use crate::error::{Error, Result};
use crate::hecke::{add_into, add_scaled_into, right_mul_kl_generator, HeckeAlgebra, HeckeElement, Terms};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

const CACHE_FORMAT_VERSION: u64 = 1;

/// Lazily filled table `w -> (x -> h_{x,w})`, safe to share across threads.
pub struct KlCache {
    alg: Arc<HeckeAlgebra>,
    columns: Vec<OnceLock<Terms>>,
}

impl KlCache {
    pub fn new(system: Arc<CoxeterSystem>) -> Self {
        Self::with_algebra(HeckeAlgebra::new(system))
    }

    pub fn with_algebra(alg: Arc<HeckeAlgebra>) -> Self {
        let n = alg.system().size();
        KlCache {
            alg,
            columns: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Convenience constructor from a type within the default bounds.
    pub fn for_type(kind: CoxeterType) -> Result<Self> {
        Ok(Self::new(Arc::new(CoxeterSystem::new(kind)?)))
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.alg
    }

    pub fn system(&self) -> &CoxeterSystem {
        self.alg.system()
    }

    /// The `T`-expansion of `C_w`.
    pub fn column(&self, w: Element) -> &Terms {
        self.columns[w.index()].get_or_init(|| self.compute_column(w))
    }

    fn compute_column(&self, w: Element) -> Terms {
        let sys = self.system();
        if w == sys.identity() {
            return Terms::from([(w, LaurentPoly::one())]);
        }
        let s = *sys.word(w).last().expect("nonidentity word") as usize;
        let x = sys.right_mul(w, s);
        let cx = self.column(x);
        let mut out = right_mul_kl_generator(sys, cx, s);
        for (&z, h) in cx {
            if z == x || !sys.is_right_descent(z, s) {
                continue;
            }
            let mu = h.coeff(1);
            if mu == BigInt::from(0) {
                continue;
            }
            let mu = LaurentPoly::constant(-mu);
            for (&y, c) in self.column(z) {
                add_scaled_into(&mut out, y, &mu, c);
            }
        }
        out
    }

    /// Fills every column, in parallel on the current rayon pool.
    pub fn precompute(&self) {
        let sys = self.system();
        // Level by level keeps workers from blocking on each other.
        let mut by_length: Vec<Vec<Element>> = Vec::new();
        for w in sys.elements() {
            let l = sys.length(w);
            if by_length.len() <= l {
                by_length.resize(l + 1, Vec::new());
            }
            by_length[l].push(w);
        }
        for level in by_length {
            level.par_iter().for_each(|&w| {
                self.column(w);
            });
        }
    }

    pub fn is_computed(&self, w: Element) -> bool {
        self.columns[w.index()].get().is_some()
    }

    /// `C_w` as a Hecke algebra element.
    pub fn kl_element(&self, w: Element) -> HeckeElement {
        HeckeElement::from_terms(&self.alg, self.column(w).clone())
    }

    /// `h_{x,w}`; zero exactly when `x` is not below `w`.
    pub fn kl_poly(&self, x: Element, w: Element) -> LaurentPoly {
        self.column(w).get(&x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Coefficient of `q` in `h_{z,w}`.
    pub fn mu(&self, z: Element, w: Element) -> BigInt {
        self.column(w).get(&z).map(|h| h.coeff(1)).unwrap_or_default()
    }

    /// Full matrix with entry `(x, w) = h_{x,w}`.
    pub fn kl_matrix(&self) -> PolyMatrix {
        self.precompute();
        let all = self.system().enumerate();
        let mut m = PolyMatrix::new(all.clone(), all.clone());
        for &w in &all {
            for (&x, h) in self.column(w) {
                m.set(x, w, h.clone());
            }
        }
        m
    }

    fn cache_file(&self, dir: &Path) -> PathBuf {
        dir.join(format!("kl-{}.json", self.system().kind()))
    }

    /// Writes all computed columns to `dir`. Returns the file path.
    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        let sys = self.system();
        let columns: Vec<Value> = sys
            .elements()
            .filter_map(|w| {
                self.columns[w.index()].get().map(|col| {
                    let entries: Vec<Value> =
                        col.iter().map(|(x, h)| json!([x.index(), h])).collect();
                    json!([w.index(), entries])
                })
            })
            .collect();
        let doc = json!({
            "format_version": CACHE_FORMAT_VERSION,
            "type": sys.kind().to_string(),
            "order": sys.elements().map(|x| sys.word_string(x)).collect::<Vec<_>>(),
            "columns": columns,
        });
        fs::create_dir_all(dir).map_err(io_error)?;
        let path = self.cache_file(dir);
        fs::write(&path, serde_json::to_string(&doc).map_err(|e| Error::Domain(e.to_string()))?)
            .map_err(io_error)?;
        Ok(path)
    }

    /// Loads columns from a file written by [`KlCache::save`]. A missing
    /// file, or one written for another type, order or format version, is
    /// ignored. Returns the number of columns loaded.
    pub fn load(&self, dir: &Path) -> Result<usize> {
        let path = self.cache_file(dir);
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(0);
        };
        let bad = |reason: &str| Error::Parse {
            input: path.display().to_string(),
            reason: reason.to_string(),
        };
        let doc: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
        let sys = self.system();
        let order: Vec<String> = sys.elements().map(|x| sys.word_string(x)).collect();
        if doc["format_version"] != json!(CACHE_FORMAT_VERSION)
            || doc["type"] != json!(sys.kind().to_string())
            || doc["order"] != json!(order)
        {
            return Ok(0);
        }
        let n = sys.size();
        let index = |v: &Value| -> Result<Element> {
            match v.as_u64() {
                Some(i) if (i as usize) < n => Ok(Element::from_index(i as usize)),
                _ => Err(bad("element index out of range")),
            }
        };
        let mut loaded = 0;
        for col in doc["columns"].as_array().ok_or_else(|| bad("missing columns"))? {
            let w = index(&col[0])?;
            let mut terms = Terms::new();
            for entry in col[1].as_array().ok_or_else(|| bad("malformed column"))? {
                let h: LaurentPoly =
                    serde_json::from_value(entry[1].clone()).map_err(|e| bad(&e.to_string()))?;
                add_into(&mut terms, index(&entry[0])?, &h);
            }
            if self.columns[w.index()].set(terms).is_ok() {
                loaded += 1;
            }
        }
        Ok(loaded)
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("cache I/O failed: {e}"))
}

/// `R_w = sum_{y <= w} q^{l(w) - l(y)} T_y`.
pub fn r_element(alg: &Arc<HeckeAlgebra>, w: Element) -> HeckeElement {
    let sys = alg.system();
    let lw = sys.length(w) as i32;
    let terms = sys
        .lower_interval(w)
        .map(|y| (y, LaurentPoly::q_pow(lw - sys.length(y) as i32)))
        .collect();
    HeckeElement::from_terms(alg, terms)
}

/// Whether the one-line notation of `w` avoids both 3412 and 4231.
pub fn is_rationally_smooth_type_a(sys: &CoxeterSystem, w: Element) -> Result<bool> {
    let CoxeterType::A(_) = sys.kind() else {
        return Err(Error::UnsupportedType(format!(
            "pattern avoidance criterion needs type A, got {}",
            sys.kind()
        )));
    };
    let p = sys.one_line(w).expect("type A elements are permutations");
    Ok(!contains_pattern(p, &[3, 4, 1, 2]) && !contains_pattern(p, &[4, 2, 3, 1]))
}

/// Whether some subsequence of `p` is order-isomorphic to `pattern`.
pub fn contains_pattern(p: &[i8], pattern: &[i8]) -> bool {
    fn rec(p: &[i8], pattern: &[i8], start: usize, chosen: &mut Vec<i8>) -> bool {
        let k = chosen.len();
        if k == pattern.len() {
            return true;
        }
        for i in start..p.len() {
            let ok = chosen
                .iter()
                .zip(pattern)
                .all(|(&c, &pc)| (c < p[i]) == (pc < pattern[k]));
            if ok {
                chosen.push(p[i]);
                if rec(p, pattern, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(p, pattern, 0, &mut Vec::new())
}

/// `h_{y,x}` by recursion on the smallest left descent `s` of `x`:
/// `h_{y,x} = h_{sy,sx} + q^c h_{y,sx} - sum_{y <= w < sx, sw < w} mu(w, sx) h_{y,w}`
/// with `c = -1` if `sy < y` and `c = 1` otherwise.
pub struct KlOracle {
    system: Arc<CoxeterSystem>,
    memo: RwLock<HashMap<(Element, Element), LaurentPoly>>,
}

impl KlOracle {
    pub fn new(system: Arc<CoxeterSystem>) -> Self {
        KlOracle {
            system,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn kl_poly(&self, y: Element, x: Element) -> LaurentPoly {
        let sys = &*self.system;
        if y == x {
            return LaurentPoly::one();
        }
        if !sys.bruhat_leq(y, x) {
            return LaurentPoly::zero();
        }
        if let Some(h) = self.memo.read().expect("oracle memo poisoned").get(&(y, x)) {
            return h.clone();
        }
        let s = sys.descents(x, crate::coxeter::Side::Left).iter().next().expect("x > y has a descent");
        let sx = sys.left_mul(s, x);
        let sy = sys.left_mul(s, y);
        let c = if sys.length(sy) < sys.length(y) { -1 } else { 1 };
        let mut h = self.kl_poly(sy, sx);
        h += &self.kl_poly(y, sx).shift(c);
        let candidates: Vec<Element> = sys
            .lower_interval(sx)
            .filter(|&w| w != sx && sys.is_left_descent(w, s) && sys.bruhat_leq(y, w))
            .collect();
        for w in candidates {
            let mu = self.kl_poly(w, sx).coeff(1);
            if mu != BigInt::from(0) {
                h.sub_product(&LaurentPoly::constant(mu), &self.kl_poly(y, w));
            }
        }
        self.memo.write().expect("oracle memo poisoned").insert((y, x), h.clone());
        h
    }

    pub fn mu(&self, z: Element, w: Element) -> BigInt {
        self.kl_poly(z, w).coeff(1)
    }
}
