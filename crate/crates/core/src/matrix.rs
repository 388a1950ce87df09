//! Sparse matrices of Laurent polynomials indexed by group elements.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::coxeter::{CoxeterSystem, Element, GenSet};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Rows and columns are labelled by group elements in canonical order;
/// absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: Vec<Element>,
    cols: Vec<Element>,
    entries: BTreeMap<(Element, Element), LaurentPoly>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Element>, cols: Vec<Element>) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(labels: Vec<Element>) -> Self {
        let mut m = PolyMatrix::new(labels.clone(), labels.clone());
        for x in labels {
            m.set(x, x, LaurentPoly::one());
        }
        m
    }

    pub fn rows(&self) -> &[Element] {
        &self.rows
    }

    pub fn cols(&self) -> &[Element] {
        &self.cols
    }

    pub fn set(&mut self, row: Element, col: Element, value: LaurentPoly) {
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: Element, col: Element) -> Option<&LaurentPoly> {
        self.entries.get(&(row, col))
    }

    pub fn entry(&self, row: Element, col: Element) -> LaurentPoly {
        self.get(row, col).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Nonzero entries in (row, column) canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Element, Element, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Column `col` as a map `row -> entry`.
    pub fn column(&self, col: Element) -> BTreeMap<Element, LaurentPoly> {
        self.entries
            .iter()
            .filter(|((_, c), _)| *c == col)
            .map(|(&(r, _), p)| (r, p.clone()))
            .collect()
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Domain("matrix dimensions do not match".into()));
        }
        let mut by_row: HashMap<Element, Vec<(Element, &LaurentPoly)>> = HashMap::new();
        for (&(r, c), p) in &other.entries {
            by_row.entry(r).or_default().push((c, p));
        }
        let mut acc: BTreeMap<(Element, Element), LaurentPoly> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for &(c, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                acc.entry((r, c)).or_insert_with(LaurentPoly::zero).add_product(a, b);
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(PolyMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries: acc,
        })
    }

    /// Every entry lies in `Z_{>=0}[q]`.
    pub fn is_nonnegative_polynomial(&self) -> bool {
        self.entries.values().all(LaurentPoly::is_nonnegative_polynomial)
    }

    /// First entry outside `Z_{>=0}[q]`, if any.
    pub fn first_non_positive(&self) -> Option<(Element, Element, &LaurentPoly)> {
        self.entries().find(|(_, _, p)| !p.is_nonnegative_polynomial())
    }

    /// Unitriangular with respect to the Bruhat order.
    pub fn is_bruhat_unitriangular(&self, sys: &CoxeterSystem) -> bool {
        self.cols.iter().all(|&c| self.entry(c, c).is_one())
            && self.entries().all(|(r, c, _)| sys.bruhat_leq(r, c))
    }

    /// `{"type", "I", "J", "order", "entries": [[row, col, poly], ..]}` with
    /// rows and columns as positions in `order`.
    pub fn to_json(&self, sys: &CoxeterSystem, i: Option<GenSet>, j: Option<GenSet>) -> Value {
        let pos: HashMap<Element, usize> = self.rows.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let cpos: HashMap<Element, usize> = self.cols.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let entries: Vec<Value> = self
            .entries()
            .map(|(r, c, p)| json!([pos[&r], cpos[&c], p.to_string()]))
            .collect();
        let words = |v: &[Element]| -> Vec<String> { v.iter().map(|&x| sys.word_string(x)).collect() };
        let mut out = json!({
            "type": sys.kind().to_string(),
            "order": words(&self.rows),
            "entries": entries,
        });
        if self.cols != self.rows {
            out["col_order"] = json!(words(&self.cols));
        }
        if let Some(i) = i {
            out["I"] = json!(i.to_one_based());
        }
        if let Some(j) = j {
            out["J"] = json!(j.to_one_based());
        }
        out
    }

    /// Dense CSV: a header of column words, then one line per row.
    pub fn to_csv(&self, sys: &CoxeterSystem) -> String {
        let quote = |s: String| format!("\"{s}\"");
        let mut out = String::from("row");
        for &c in &self.cols {
            out.push(',');
            out.push_str(&quote(sys.word_string(c)));
        }
        out.push('\n');
        for &r in &self.rows {
            out.push_str(&quote(sys.word_string(r)));
            for &c in &self.cols {
                out.push(',');
                out.push_str(&quote(self.entry(r, c).to_string()));
            }
            out.push('\n');
        }
        out
    }
}
