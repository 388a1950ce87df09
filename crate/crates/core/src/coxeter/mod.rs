//! Finite Coxeter systems `(W, S)`.
//!
//! A [`CoxeterSystem`] is built from a [`CoxeterType`] by enumerating a
//! faithful realization breadth-first. Elements are then addressed by
//! [`Element`] handles whose numeric order is the canonical order used for
//! every matrix in the crate: by length, then by ShortLex normal word.
//! Multiplication by generators, inverses, descent sets and the full Bruhat
//! order are tabulated at construction, so every query afterwards is a
//! read-only lookup.

mod realization;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
pub use realization::Repr;

/// The supported irreducible finite types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    I2(usize),
}

/// Largest group order accepted when `allow_large` is set.
const HARD_ORDER_LIMIT: u128 = 50_000;

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::I2(_) => 2,
        }
    }

    /// `|W|` from the classical formula.
    pub fn order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match *self {
            CoxeterType::A(n) => fact(n + 1),
            CoxeterType::B(n) => (1u128 << n) * fact(n),
            CoxeterType::D(n) => (1u128 << (n - 1)) * fact(n),
            CoxeterType::I2(m) => 2 * m as u128,
        }
    }

    /// Symmetric Coxeter matrix, 0-based, with `m(s, s) = 1`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut m = vec![vec![2; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut set = |i: usize, j: usize, v: usize| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match *self {
            CoxeterType::A(n) => (0..n - 1).for_each(|i| set(i, i + 1, 3)),
            CoxeterType::B(n) => {
                (0..n - 2).for_each(|i| set(i, i + 1, 3));
                set(n - 2, n - 1, 4);
            }
            CoxeterType::D(n) => {
                (0..n - 2).for_each(|i| set(i, i + 1, 3));
                set(n - 3, n - 1, 3);
            }
            CoxeterType::I2(mm) => set(0, 1, mm),
        }
        m
    }

    /// Weyl groups of Kac-Moody algebras: everything except `I2(m)` with
    /// `m` outside `{2, 3, 4, 6}`.
    pub fn is_crystallographic(&self) -> bool {
        match *self {
            CoxeterType::I2(m) => matches!(m, 2 | 3 | 4 | 6),
            _ => true,
        }
    }

    fn check(&self, allow_large: bool) -> Result<()> {
        let unsupported = |why: &str| Err(Error::UnsupportedType(format!("{self}: {why}")));
        let (min_ok, desk_ok) = match *self {
            CoxeterType::A(n) => (n >= 1, n <= 5),
            CoxeterType::B(n) => (n >= 2, n <= 4),
            CoxeterType::D(n) => (n >= 3, n <= 4),
            CoxeterType::I2(m) => (m >= 3, m <= 24),
        };
        if !min_ok {
            return unsupported("rank below the supported minimum");
        }
        if !desk_ok && !allow_large {
            return unsupported("beyond the default size bounds (A5, B4, D4, I2(24)); pass allow_large to override");
        }
        if self.order() > HARD_ORDER_LIMIT {
            return unsupported("group order exceeds the hard limit of 50000 elements");
        }
        Ok(())
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| bad("expected I2(m)"))?;
            let m = inner.parse().map_err(|_| bad("bad dihedral order"))?;
            return Ok(CoxeterType::I2(m));
        }
        let mut chars = upper.chars();
        let letter = chars.next().ok_or_else(|| bad("empty type"))?;
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a type such as A3, B4, D4 or I2(7)"))?;
        match letter {
            'A' => Ok(CoxeterType::A(n)),
            'B' => Ok(CoxeterType::B(n)),
            'D' => Ok(CoxeterType::D(n)),
            _ => Err(bad("unknown type letter")),
        }
    }
}

/// Handle to an element of a [`CoxeterSystem`]; its numeric value is the
/// position in the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Element(i as u32)
    }
}

/// A subset of the generators, stored as a bit mask of 0-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u32);

impl GenSet {
    pub fn empty() -> Self {
        GenSet(0)
    }

    pub fn full(rank: usize) -> Self {
        GenSet(((1u64 << rank) - 1) as u32)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        GenSet(indices.into_iter().fold(0, |m, s| m | (1 << s)))
    }

    pub fn singleton(s: usize) -> Self {
        GenSet(1 << s)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    /// 0-based generator indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }

    /// All subsets of `{0, .., rank-1}`.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        (0..1u32 << rank).map(GenSet)
    }

    /// Parses a comma-separated list of 1-based generator indices. `""`,
    /// `"e"` and `"∅"` denote the empty set.
    pub fn parse(s: &str, rank: usize) -> Result<GenSet> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "\u{2205}" || t == "{}" {
            return Ok(GenSet::empty());
        }
        let t = t.trim_start_matches('{').trim_end_matches('}');
        let mut set = GenSet::empty();
        for (pos, tok) in t.split(',').enumerate() {
            let i: usize = tok.trim().parse().map_err(|_| Error::Parse {
                input: s.to_string(),
                reason: format!("entry {pos} ({tok:?}) is not a generator index"),
            })?;
            if i == 0 || i > rank {
                return Err(Error::Parse {
                    input: s.to_string(),
                    reason: format!("entry {pos}: generator {i} outside 1..={rank}"),
                });
            }
            set.0 |= 1 << (i - 1);
        }
        Ok(set)
    }

    /// 1-based indices, for serialization.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|s| s + 1).collect()
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Parabolic data for a subset `J`: the subgroup `W_J` and the minimal
/// coset representatives on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    pub subset: GenSet,
    /// `W_J` in canonical order.
    pub elements: Vec<Element>,
    /// `W^J`: minimal length representatives of the left cosets `wW_J`.
    pub left_reps: Vec<Element>,
    /// `^J W`: minimal length representatives of the right cosets `W_J w`.
    pub right_reps: Vec<Element>,
}

/// A finite Coxeter system with all group tables precomputed.
pub struct CoxeterSystem {
    kind: CoxeterType,
    matrix: Vec<Vec<usize>>,
    reprs: Vec<Repr>,
    index: HashMap<Repr, Element>,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    /// `right_mul[s][x] = x * s`
    right_mul: Vec<Vec<u32>>,
    /// `left_mul[s][x] = s * x`
    left_mul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    right_descents: Vec<GenSet>,
    left_descents: Vec<GenSet>,
    support: Vec<GenSet>,
    /// Row `w` is the bit set of `{u : u <= w}`.
    bruhat: Vec<Vec<u64>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("kind", &self.kind)
            .field("order", &self.size())
            .finish()
    }
}

impl CoxeterSystem {
    /// Builds a system within the default desk-scale bounds.
    pub fn new(kind: CoxeterType) -> Result<Self> {
        Self::with_options(kind, false)
    }

    pub fn with_options(kind: CoxeterType, allow_large: bool) -> Result<Self> {
        kind.check(allow_large)?;
        let rank = kind.rank();

        let id = realization::identity(kind);
        let mut reprs = vec![id.clone()];
        let mut index = HashMap::from([(id, Element(0))]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut lengths = vec![0u32];

        // Breadth-first over lengths. Processing each level in ShortLex order
        // and extending by generators in increasing order discovers every
        // element first through its ShortLex normal word.
        let mut level = 0..1;
        while !level.is_empty() {
            let next_start = reprs.len();
            for i in level.clone() {
                for s in 0..rank {
                    let y = realization::right_generator(kind, &reprs[i], s);
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), Element(reprs.len() as u32));
                        reprs.push(y);
                        let mut w = words[i].clone();
                        w.push(s as u8);
                        words.push(w);
                        lengths.push(lengths[i] + 1);
                    }
                }
            }
            level = next_start..reprs.len();
        }
        let n = reprs.len();
        debug_assert_eq!(n as u128, kind.order());

        let right_mul: Vec<Vec<u32>> = (0..rank)
            .map(|s| {
                reprs
                    .iter()
                    .map(|x| index[&realization::right_generator(kind, x, s)].0)
                    .collect()
            })
            .collect();

        let inverse: Vec<u32> = words
            .iter()
            .map(|w| w.iter().rev().fold(0u32, |x, &s| right_mul[s as usize][x as usize]))
            .collect();

        let left_mul: Vec<Vec<u32>> = (0..rank)
            .map(|s| {
                (0..n)
                    .map(|x| inverse[right_mul[s][inverse[x] as usize] as usize])
                    .collect()
            })
            .collect();

        let descents = |table: &Vec<Vec<u32>>| -> Vec<GenSet> {
            (0..n)
                .map(|x| {
                    GenSet::from_indices(
                        (0..rank).filter(|&s| lengths[table[s][x] as usize] < lengths[x]),
                    )
                })
                .collect()
        };
        let right_descents = descents(&right_mul);
        let left_descents = descents(&left_mul);
        let support = words
            .iter()
            .map(|w| GenSet::from_indices(w.iter().map(|&s| s as usize)))
            .collect();

        let mut sys = CoxeterSystem {
            kind,
            matrix: kind.coxeter_matrix(),
            reprs,
            index,
            words,
            lengths,
            right_mul,
            left_mul,
            inverse,
            right_descents,
            left_descents,
            support,
            bruhat: Vec::new(),
        };
        sys.bruhat = sys.build_bruhat();
        Ok(sys)
    }

    /// Evaluates the lifting recursion for every pair, processing `w` in
    /// canonical order so the row for `sw` is always available.
    fn build_bruhat(&self) -> Vec<Vec<u64>> {
        let n = self.size();
        let blocks = n.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
        let get = |row: &Vec<u64>, u: usize| row[u / 64] >> (u % 64) & 1 == 1;
        for w in 0..n {
            let mut row = vec![0u64; blocks];
            row[w / 64] |= 1 << (w % 64);
            if w > 0 {
                let s = self.left_descents[w].iter().next().expect("nonidentity has a descent");
                let sw = self.left_mul[s][w] as usize;
                let lw = self.lengths[w];
                for u in 0..n {
                    if self.lengths[u] >= lw {
                        break;
                    }
                    let su = self.left_mul[s][u] as usize;
                    let below = if self.lengths[su] < self.lengths[u] {
                        get(&rows[sw], su)
                    } else {
                        get(&rows[sw], u)
                    };
                    if below {
                        row[u / 64] |= 1 << (u % 64);
                    }
                }
            }
            rows.push(row);
        }
        rows
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    /// `|W|`.
    pub fn size(&self) -> usize {
        self.reprs.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn generators(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// All elements in canonical order.
    pub fn enumerate(&self) -> Vec<Element> {
        self.elements().collect()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.size() as u32).map(Element)
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn generator(&self, s: usize) -> Element {
        Element(self.right_mul[s][0])
    }

    pub fn longest_element(&self) -> Element {
        Element(self.size() as u32 - 1)
    }

    pub fn length(&self, x: Element) -> usize {
        self.lengths[x.index()] as usize
    }

    /// ShortLex normal word, 0-based letters.
    pub fn word(&self, x: Element) -> &[u8] {
        &self.words[x.index()]
    }

    /// Normal word with 1-based letters.
    pub fn word_one_based(&self, x: Element) -> Vec<usize> {
        self.word(x).iter().map(|&s| s as usize + 1).collect()
    }

    /// Normal word as comma-separated 1-based letters; `""` for the identity.
    pub fn word_string(&self, x: Element) -> String {
        self.word_one_based(x)
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn repr(&self, x: Element) -> &Repr {
        &self.reprs[x.index()]
    }

    /// One-line notation, for the permutation realizations.
    pub fn one_line(&self, x: Element) -> Option<&[i8]> {
        match self.repr(x) {
            Repr::Perm(p) => Some(p),
            Repr::Dihedral { .. } => None,
        }
    }

    pub fn from_repr(&self, r: &Repr) -> Option<Element> {
        self.index.get(r).copied()
    }

    pub fn inverse(&self, x: Element) -> Element {
        Element(self.inverse[x.index()])
    }

    pub fn mul_generator(&self, x: Element, s: usize, side: Side) -> Element {
        match side {
            Side::Right => Element(self.right_mul[s][x.index()]),
            Side::Left => Element(self.left_mul[s][x.index()]),
        }
    }

    /// `x * s`
    pub fn right_mul(&self, x: Element, s: usize) -> Element {
        Element(self.right_mul[s][x.index()])
    }

    /// `s * x`
    pub fn left_mul(&self, s: usize, x: Element) -> Element {
        Element(self.left_mul[s][x.index()])
    }

    /// Group product `a * b`.
    pub fn multiply(&self, a: Element, b: Element) -> Element {
        self.word(b).iter().fold(a, |x, &s| self.right_mul(x, s as usize))
    }

    /// Product of an arbitrary (not necessarily reduced) word of 0-based letters.
    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        let rank = self.rank();
        word.iter().try_fold(self.identity(), |x, &s| {
            if s >= rank {
                Err(Error::Domain(format!("generator index {s} outside 0..{rank}")))
            } else {
                Ok(self.right_mul(x, s))
            }
        })
    }

    /// Parses a comma-separated word of 1-based generator indices; `"e"` or
    /// the empty string denote the identity.
    pub fn parse_word(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        if t.is_empty() || t == "e" {
            return Ok(self.identity());
        }
        let rank = self.rank();
        let mut letters = Vec::new();
        for (pos, tok) in t.split(',').enumerate() {
            match tok.trim().parse::<usize>() {
                Ok(i) if (1..=rank).contains(&i) => letters.push(i - 1),
                _ => {
                    return Err(Error::Parse {
                        input: s.to_string(),
                        reason: format!("invalid generator {tok:?} at index {pos} (expected 1..={rank})"),
                    })
                }
            }
        }
        self.element_from_word(&letters)
    }

    pub fn descents(&self, x: Element, side: Side) -> GenSet {
        match side {
            Side::Right => self.right_descents[x.index()],
            Side::Left => self.left_descents[x.index()],
        }
    }

    pub fn is_right_descent(&self, x: Element, s: usize) -> bool {
        self.right_descents[x.index()].contains(s)
    }

    pub fn is_left_descent(&self, x: Element, s: usize) -> bool {
        self.left_descents[x.index()].contains(s)
    }

    /// Bruhat order `u <= w`.
    pub fn bruhat_leq(&self, u: Element, w: Element) -> bool {
        let (u, row) = (u.index(), &self.bruhat[w.index()]);
        row[u / 64] >> (u % 64) & 1 == 1
    }

    pub fn bruhat_lt(&self, u: Element, w: Element) -> bool {
        u != w && self.bruhat_leq(u, w)
    }

    /// The Bruhat interval `{x : x <= w}` in canonical order.
    pub fn lower_interval(&self, w: Element) -> impl Iterator<Item = Element> + '_ {
        (0..=w.index()).map(Element::from_index).filter(move |&x| self.bruhat_leq(x, w))
    }

    /// Set of generators occurring in any reduced word of `x`.
    pub fn support(&self, x: Element) -> GenSet {
        self.support[x.index()]
    }

    /// Membership in the parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, x: Element, subset: GenSet) -> bool {
        self.support(x).is_subset(subset)
    }

    /// `w = w^J * w_J` with `w^J` in `W^J` and `w_J` in `W_J`.
    pub fn parabolic_factorize_left(&self, w: Element, subset: GenSet) -> (Element, Element) {
        let mut quot = w;
        let mut par = self.identity();
        while let Some(s) = self.descents(quot, Side::Right).intersection(subset).iter().next() {
            quot = self.right_mul(quot, s);
            par = self.left_mul(s, par);
        }
        (quot, par)
    }

    /// `w = _J w * ^J w` with `_J w` in `W_J` and `^J w` in `^J W`.
    pub fn parabolic_factorize_right(&self, w: Element, subset: GenSet) -> (Element, Element) {
        let mut quot = w;
        let mut par = self.identity();
        while let Some(s) = self.descents(quot, Side::Left).intersection(subset).iter().next() {
            quot = self.left_mul(s, quot);
            par = self.right_mul(par, s);
        }
        (par, quot)
    }

    /// Left representatives (`W^J`, no right descent in `J`) or right
    /// representatives (`^J W`, no left descent in `J`), in canonical order.
    pub fn min_coset_reps(&self, subset: GenSet, side: Side) -> Vec<Element> {
        let descent_side = match side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        self.elements()
            .filter(|&x| self.descents(x, descent_side).intersection(subset).is_empty())
            .collect()
    }

    pub fn is_min_left_rep(&self, u: Element, subset: GenSet) -> bool {
        self.descents(u, Side::Right).intersection(subset).is_empty()
    }

    pub fn parabolic_elements(&self, subset: GenSet) -> Vec<Element> {
        self.elements().filter(|&x| self.in_parabolic(x, subset)).collect()
    }

    pub fn parabolic(&self, subset: GenSet) -> ParabolicData {
        ParabolicData {
            subset,
            elements: self.parabolic_elements(subset),
            left_reps: self.min_coset_reps(subset, Side::Left),
            right_reps: self.min_coset_reps(subset, Side::Right),
        }
    }

    /// Checks `u` is in `W^J`, naming an offending descent otherwise.
    pub fn require_min_left_rep(&self, u: Element, subset: GenSet) -> Result<()> {
        match self.descents(u, Side::Right).intersection(subset).iter().next() {
            None => Ok(()),
            Some(s) => Err(Error::NotCosetRepresentative {
                word: self.word_string(u),
                subset: subset.to_string(),
                descent: s + 1,
            }),
        }
    }

    /// Subsets are given 0-based; rejects generators outside the rank.
    pub fn check_subset(&self, subset: GenSet) -> Result<()> {
        if subset.is_subset(self.generators()) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "subset {{{subset}}} is not contained in the generators of {}",
                self.kind
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sys(t: &str) -> CoxeterSystem {
        CoxeterSystem::new(t.parse().unwrap()).unwrap()
    }

    fn el(s: &CoxeterSystem, w: &str) -> Element {
        s.parse_word(w).unwrap()
    }

    fn perm(s: &CoxeterSystem, p: &[i8]) -> Element {
        s.from_repr(&Repr::Perm(p.to_vec())).unwrap()
    }

    /// Every element reachable as a subword of the fixed reduced word of `w`.
    fn subword_ideal(s: &CoxeterSystem, w: Element) -> HashSet<Element> {
        let word = s.word(w);
        (0..1u32 << word.len())
            .map(|mask| {
                word.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(s.identity(), |x, (_, &l)| s.right_mul(x, l as usize))
            })
            .collect()
    }

    /// All reduced words of `w`, by recursion on right descents.
    fn reduced_words(s: &CoxeterSystem, w: Element) -> Vec<Vec<u8>> {
        if w == s.identity() {
            return vec![vec![]];
        }
        s.descents(w, Side::Right)
            .iter()
            .flat_map(|d| {
                reduced_words(s, s.right_mul(w, d)).into_iter().map(move |mut v| {
                    v.push(d as u8);
                    v
                })
            })
            .collect()
    }

    #[test]
    fn type_strings() {
        for t in ["A3", "B4", "D4", "I2(7)"] {
            assert_eq!(t.parse::<CoxeterType>().unwrap().to_string(), t);
        }
        assert!("X3".parse::<CoxeterType>().is_err());
        assert!("I2(".parse::<CoxeterType>().is_err());
        assert!(matches!(
            CoxeterSystem::new(CoxeterType::A(6)),
            Err(Error::UnsupportedType(_))
        ));
        assert!(CoxeterSystem::with_options(CoxeterType::A(6), true).is_ok());
        assert!(CoxeterSystem::new(CoxeterType::D(2)).is_err());
        assert!(CoxeterSystem::new(CoxeterType::I2(25)).is_err());
    }

    #[test]
    fn group_orders_match_classical_formulas() {
        for t in ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D3", "D4", "I2(3)", "I2(8)", "I2(24)"] {
            let s = sys(t);
            assert_eq!(s.size() as u128, s.kind().order(), "{t}");
            assert_eq!(s.rank(), s.kind().rank());
        }
    }

    #[test]
    fn realization_satisfies_coxeter_relations() {
        for t in ["A4", "B4", "D4", "I2(5)", "I2(12)"] {
            let s = sys(t);
            let m = s.coxeter_matrix();
            for a in 0..s.rank() {
                assert_eq!(m[a][a], 1);
                for b in 0..s.rank() {
                    assert_eq!(m[a][b], m[b][a]);
                    if a == b {
                        continue;
                    }
                    let st = s.multiply(s.generator(a), s.generator(b));
                    let mut x = st;
                    let mut k = 1;
                    while x != s.identity() {
                        x = s.multiply(x, st);
                        k += 1;
                    }
                    assert_eq!(k, m[a][b], "{t}: order of s{a}s{b}");
                }
            }
        }
    }

    #[test]
    fn left_table_matches_realization() {
        for t in ["A3", "B3", "D4", "I2(5)", "I2(6)"] {
            let s = sys(t);
            for x in s.elements() {
                for g in 0..s.rank() {
                    let direct = realization::left_generator(s.kind(), s.repr(x), g);
                    assert_eq!(s.from_repr(&direct), Some(s.left_mul(g, x)), "{t}");
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let a2 = sys("A2");
        let s1 = a2.generator(0);
        assert_eq!(a2.multiply(s1, s1), a2.identity());
        let s1s2 = a2.multiply(s1, a2.generator(1));
        assert_eq!(a2.one_line(s1s2), Some(&[2i8, 3, 1][..]));
        assert_eq!(a2.length(s1s2), 2);

        let i3 = sys("I2(3)");
        let ab = el(&i3, "1,2");
        let ba = el(&i3, "2,1");
        assert_eq!(i3.multiply(ab, ba), i3.identity());
    }

    #[test]
    fn length_examples() {
        assert_eq!(sys("A3").length(sys("A3").identity()), 0);
        let a2 = sys("A2");
        assert_eq!(a2.length(a2.longest_element()), 3);
        let b2 = sys("B2");
        assert_eq!(b2.length(b2.longest_element()), 4);
        // Type A length is the inversion number.
        let a4 = sys("A4");
        for x in a4.elements() {
            let p = a4.one_line(x).unwrap();
            let inv = (0..p.len())
                .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            assert_eq!(a4.length(x), inv);
        }
    }

    #[test]
    fn length_invariants() {
        for t in ["A3", "B3", "D4", "I2(7)"] {
            let s = sys(t);
            for x in s.elements() {
                assert_eq!(s.length(x) == 0, x == s.identity());
                assert_eq!(s.length(x), s.word(x).len());
                assert_eq!(s.length(s.inverse(x)), s.length(x));
                for g in 0..s.rank() {
                    let lx = s.length(x) as isize;
                    let ly = s.length(s.right_mul(x, g)) as isize;
                    assert_eq!((lx - ly).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn descent_examples() {
        let a2 = sys("A2");
        assert!(a2.descents(a2.identity(), Side::Left).is_empty());
        assert_eq!(a2.descents(a2.longest_element(), Side::Right), a2.generators());
        assert_eq!(a2.descents(a2.longest_element(), Side::Left), a2.generators());
        let s1s2 = el(&a2, "1,2");
        assert_eq!(a2.descents(s1s2, Side::Right), GenSet::singleton(1));
        assert_eq!(a2.descents(s1s2, Side::Left), GenSet::singleton(0));
    }

    #[test]
    fn enumerate_examples() {
        let a1 = sys("A1");
        assert_eq!(a1.enumerate(), vec![a1.identity(), a1.generator(0)]);
        let a2 = sys("A2");
        let lens: Vec<usize> = a2.elements().map(|x| a2.length(x)).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(sys("I2(4)").size(), 8);
    }

    #[test]
    fn canonical_order_is_length_then_shortlex() {
        for t in ["A3", "B3", "I2(6)"] {
            let s = sys(t);
            let keys: Vec<(usize, Vec<u8>)> =
                s.elements().map(|x| (s.length(x), s.word(x).to_vec())).collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]), "{t}");
            // The normal word is the lexicographically least reduced word.
            for x in s.elements() {
                let min = reduced_words(&s, x).into_iter().min().unwrap();
                assert_eq!(min, s.word(x));
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let a3 = sys("A3");
        for w in a3.elements() {
            assert!(a3.bruhat_leq(a3.identity(), w));
            assert!(a3.bruhat_leq(w, w));
        }
        let x3412 = perm(&a3, &[3, 4, 1, 2]);
        let x4231 = perm(&a3, &[4, 2, 3, 1]);
        assert!(!a3.bruhat_leq(x3412, x4231));
        assert!(!a3.bruhat_leq(x4231, x3412));
        // Oracle: subwords of every reduced word of the larger element.
        for w in [x3412, x4231] {
            let other = if w == x3412 { x4231 } else { x3412 };
            for word in reduced_words(&a3, w) {
                let found = (0..1u32 << word.len()).any(|mask| {
                    let x = word
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .fold(a3.identity(), |x, (_, &l)| a3.right_mul(x, l as usize));
                    x == other
                });
                assert!(!found);
            }
        }
    }

    #[test]
    fn bruhat_matches_subword_criterion() {
        for t in ["A3", "I2(6)", "B3"] {
            let s = sys(t);
            for w in s.elements() {
                let ideal = subword_ideal(&s, w);
                for u in s.elements() {
                    assert_eq!(s.bruhat_leq(u, w), ideal.contains(&u), "{t}");
                }
            }
        }
    }

    #[test]
    fn bruhat_is_graded_partial_order() {
        let s = sys("A3");
        let all = s.enumerate();
        for &a in &all {
            for &b in &all {
                if s.bruhat_leq(a, b) && s.bruhat_leq(b, a) {
                    assert_eq!(a, b);
                }
                if s.bruhat_lt(a, b) {
                    assert!(s.length(a) < s.length(b));
                }
                for &c in &all {
                    if s.bruhat_leq(a, b) && s.bruhat_leq(b, c) {
                        assert!(s.bruhat_leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let a2 = sys("A2");
        let j = GenSet::singleton(0);
        let s1 = el(&a2, "1");
        assert_eq!(a2.parabolic_factorize_left(s1, j), (a2.identity(), s1));
        assert_eq!(a2.parabolic_factorize_right(s1, j), (s1, a2.identity()));
        assert_eq!(a2.parabolic_factorize_left(el(&a2, "2,1"), j), (el(&a2, "2"), s1));
        assert_eq!(
            a2.parabolic_factorize_left(el(&a2, "1,2"), j),
            (el(&a2, "1,2"), a2.identity())
        );
        assert_eq!(a2.parabolic_factorize_right(el(&a2, "1,2"), j), (s1, el(&a2, "2")));
    }

    #[test]
    fn factorizations_are_unique_and_length_additive() {
        for t in ["A3", "B3", "I2(5)"] {
            let s = sys(t);
            for j in GenSet::all_subsets(s.rank()) {
                let data = s.parabolic(j);
                assert_eq!(data.left_reps.len() * data.elements.len(), s.size());
                assert_eq!(data.right_reps.len() * data.elements.len(), s.size());
                for &u in &data.left_reps {
                    assert!(data.right_reps.contains(&s.inverse(u)));
                    for g in j.iter() {
                        assert!(s.length(s.right_mul(u, g)) > s.length(u));
                    }
                    for &v in &data.elements {
                        assert_eq!(s.length(s.multiply(u, v)), s.length(u) + s.length(v));
                    }
                }
                for w in s.elements() {
                    let (u, v) = s.parabolic_factorize_left(w, j);
                    assert_eq!(s.multiply(u, v), w);
                    assert!(data.left_reps.contains(&u) && s.in_parabolic(v, j));
                    let (v2, u2) = s.parabolic_factorize_right(w, j);
                    assert_eq!(s.multiply(v2, u2), w);
                    // transport along inversion
                    let (ui, vi) = s.parabolic_factorize_left(s.inverse(w), j);
                    assert_eq!((s.inverse(vi), s.inverse(ui)), (v2, u2));
                    // brute force uniqueness
                    let count = data
                        .left_reps
                        .iter()
                        .flat_map(|&a| data.elements.iter().map(move |&b| (a, b)))
                        .filter(|&(a, b)| s.multiply(a, b) == w)
                        .count();
                    assert_eq!(count, 1);
                }
            }
        }
    }

    #[test]
    fn parabolic_projection_preserves_bruhat() {
        for t in ["A3", "B3"] {
            let s = sys(t);
            for j in GenSet::all_subsets(s.rank()) {
                for u in s.elements() {
                    for w in s.elements() {
                        if s.bruhat_leq(u, w) {
                            let (uq, _) = s.parabolic_factorize_left(u, j);
                            let (wq, _) = s.parabolic_factorize_left(w, j);
                            assert!(s.bruhat_leq(uq, wq));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nested_quotient_factorization() {
        // I ⊆ J, u ∈ W^J, z ∈ W^I ∩ W_J  ⇒  uz ∈ W^I
        for t in ["A3", "B3"] {
            let s = sys(t);
            for j in GenSet::all_subsets(s.rank()) {
                for i in GenSet::all_subsets(s.rank()).filter(|i| i.is_subset(j)) {
                    for u in s.min_coset_reps(j, Side::Left) {
                        for z in s.parabolic_elements(j) {
                            if s.is_min_left_rep(z, i) {
                                assert!(s.is_min_left_rep(s.multiply(u, z), i));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_rep_examples() {
        let a3 = sys("A3");
        assert_eq!(a3.min_coset_reps(a3.generators(), Side::Left), vec![a3.identity()]);
        assert_eq!(a3.min_coset_reps(GenSet::empty(), Side::Left), a3.enumerate());
        for n in 2..=5 {
            let s = sys(&format!("A{n}"));
            let j = GenSet::from_indices(0..n - 1);
            let mut expected: Vec<Element> = (1..=n + 1)
                .map(|i| {
                    // s_i s_{i+1} ... s_n, with i = n + 1 the identity
                    let letters: Vec<usize> = (i..=n).map(|k| k - 1).collect();
                    s.element_from_word(&letters).unwrap()
                })
                .collect();
            expected.sort();
            assert_eq!(s.min_coset_reps(j, Side::Left), expected);
        }
    }

    #[test]
    fn word_parsing() {
        let a3 = sys("A3");
        assert_eq!(a3.parse_word("e").unwrap(), a3.identity());
        assert_eq!(a3.parse_word("").unwrap(), a3.identity());
        assert_eq!(a3.parse_word("1,1").unwrap(), a3.identity());
        let err = a3.parse_word("1,5,2").unwrap_err();
        assert!(err.to_string().contains("index 1"), "{err}");
        assert!(a3.parse_word("1,x").is_err());
        let w = a3.parse_word("2,3,1,2").unwrap();
        assert_eq!(a3.one_line(w), Some(&[3i8, 4, 1, 2][..]));
        assert_eq!(a3.word_string(a3.parse_word("2,1").unwrap()), "2,1");
    }

    #[test]
    fn genset_parsing() {
        assert_eq!(GenSet::parse("1,3", 3).unwrap(), GenSet::from_indices([0, 2]));
        assert_eq!(GenSet::parse("\u{2205}", 3).unwrap(), GenSet::empty());
        assert!(GenSet::parse("4", 3).is_err());
        assert!(GenSet::parse("0", 3).is_err());
        assert_eq!(GenSet::from_indices([0, 2]).to_string(), "1,3");
    }
}
