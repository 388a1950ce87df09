//! Concrete faithful realizations of the supported finite Coxeter groups.
//!
//! Generators are 0-based here. Types B and D follow Bourbaki labelling:
//! generators `0..n-1` are the adjacent transpositions of positions
//! `(i, i+1)` and the last generator is the extra one (a sign change of the
//! last entry for B, a swap-and-negate of the last two entries for D).

use super::CoxeterType;

/// Canonical form of a group element in its realization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Repr {
    /// One-line notation. Type A uses values `1..=n+1`; types B and D use
    /// signed values `+-1..=+-n`.
    Perm(Vec<i8>),
    /// Dihedral element given by its length and the first letter of its
    /// alternating reduced word. The identity is `(0, 0)` and the longest
    /// element is normalized to first letter `0`.
    Dihedral { length: u16, first: u8 },
}

pub(crate) fn identity(kind: CoxeterType) -> Repr {
    match kind {
        CoxeterType::A(n) => Repr::Perm((1..=(n as i8 + 1)).collect()),
        CoxeterType::B(n) | CoxeterType::D(n) => Repr::Perm((1..=n as i8).collect()),
        CoxeterType::I2(_) => Repr::Dihedral { length: 0, first: 0 },
    }
}

/// `x * s` for the generator `s`.
pub(crate) fn right_generator(kind: CoxeterType, x: &Repr, s: usize) -> Repr {
    match (kind, x) {
        (CoxeterType::A(_), Repr::Perm(p)) => {
            let mut p = p.clone();
            p.swap(s, s + 1);
            Repr::Perm(p)
        }
        (CoxeterType::B(n), Repr::Perm(p)) => {
            let mut p = p.clone();
            if s + 1 < n {
                p.swap(s, s + 1);
            } else {
                p[n - 1] = -p[n - 1];
            }
            Repr::Perm(p)
        }
        (CoxeterType::D(n), Repr::Perm(p)) => {
            let mut p = p.clone();
            if s + 1 < n {
                p.swap(s, s + 1);
            } else {
                let (a, b) = (p[n - 2], p[n - 1]);
                p[n - 2] = -b;
                p[n - 1] = -a;
            }
            Repr::Perm(p)
        }
        (CoxeterType::I2(m), Repr::Dihedral { length, first }) => {
            dihedral_right(m as u16, *length, *first, s as u8)
        }
        _ => unreachable!("realization does not match Coxeter type"),
    }
}

/// `s * x` computed directly on the realization. Used to cross-check the
/// tables derived from right multiplication.
#[cfg(test)]
pub(crate) fn left_generator(kind: CoxeterType, x: &Repr, s: usize) -> Repr {
    match (kind, x) {
        (CoxeterType::A(_), Repr::Perm(p)) => {
            let (a, b) = (s as i8 + 1, s as i8 + 2);
            Repr::Perm(
                p.iter()
                    .map(|&v| match v {
                        v if v == a => b,
                        v if v == b => a,
                        v => v,
                    })
                    .collect(),
            )
        }
        (CoxeterType::B(n), Repr::Perm(p)) => {
            let n = n as i8;
            let s = s as i8;
            Repr::Perm(
                p.iter()
                    .map(|&v| {
                        let (sign, a) = (v.signum(), v.abs());
                        if s + 1 < n {
                            if a == s + 1 {
                                sign * (s + 2)
                            } else if a == s + 2 {
                                sign * (s + 1)
                            } else {
                                v
                            }
                        } else if a == n {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect(),
            )
        }
        (CoxeterType::D(n), Repr::Perm(p)) => {
            let n = n as i8;
            let s = s as i8;
            Repr::Perm(
                p.iter()
                    .map(|&v| {
                        let (sign, a) = (v.signum(), v.abs());
                        if s + 1 < n {
                            if a == s + 1 {
                                sign * (s + 2)
                            } else if a == s + 2 {
                                sign * (s + 1)
                            } else {
                                v
                            }
                        } else if a == n - 1 {
                            -sign * n
                        } else if a == n {
                            -sign * (n - 1)
                        } else {
                            v
                        }
                    })
                    .collect(),
            )
        }
        (CoxeterType::I2(m), Repr::Dihedral { length, first }) => {
            dihedral_left(m as u16, *length, *first, s as u8)
        }
        _ => unreachable!("realization does not match Coxeter type"),
    }
}

fn dihedral_norm(m: u16, length: u16, first: u8) -> Repr {
    if length == 0 || length == m {
        Repr::Dihedral { length, first: 0 }
    } else {
        Repr::Dihedral { length, first }
    }
}

fn dihedral_right(m: u16, length: u16, first: u8, s: u8) -> Repr {
    if length == 0 {
        return dihedral_norm(m, 1, s);
    }
    if length == m {
        // Pick the reduced word of w0 ending in s, then drop that letter.
        let first = if m % 2 == 1 { s } else { 1 - s };
        return dihedral_norm(m, m - 1, first);
    }
    let last = if length % 2 == 1 { first } else { 1 - first };
    if last == s {
        dihedral_norm(m, length - 1, first)
    } else {
        dihedral_norm(m, length + 1, first)
    }
}

#[cfg(test)]
fn dihedral_left(m: u16, length: u16, first: u8, s: u8) -> Repr {
    if length == 0 {
        return dihedral_norm(m, 1, s);
    }
    if length == m {
        // w0 = s * (word starting with the other letter, of length m - 1).
        return dihedral_norm(m, m - 1, 1 - s);
    }
    if first == s {
        dihedral_norm(m, length - 1, 1 - s)
    } else {
        dihedral_norm(m, length + 1, s)
    }
}
