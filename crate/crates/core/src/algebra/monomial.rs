//! Exponent vectors and the term orders used throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A power product `x_0^{a_0} ... x_{n-1}^{a_{n-1}}` with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn new<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let exps: SmallVec<[u32; 8]> = exps.into_iter().collect();
        let deg = exps.iter().sum();
        Monomial { deg, exps }
    }

    /// The monomial `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = 1;
        m.deg = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            deg: other.deg - self.deg,
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b)),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables with positive exponent (first 64 variables).
    pub fn support_mask(&self) -> u128 {
        let mut mask = 0u128;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                mask |= 1u128 << i;
            }
        }
        mask
    }

    /// Copy with variable `var` removed from the signature.
    pub fn drop_var(&self, var: usize) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != var)
                .map(|(_, e)| *e),
        )
    }

    /// Copy with `count` zero exponents inserted at position `at`.
    pub fn insert_vars(&self, at: usize, count: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::with_capacity(self.exps.len() + count);
        exps.extend_from_slice(&self.exps[..at]);
        exps.extend(std::iter::repeat(0).take(count));
        exps.extend_from_slice(&self.exps[at..]);
        Monomial { deg: self.deg, exps }
    }

    pub(crate) fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.deg = m.deg - m.exps[var] + e;
        m.exps[var] = e;
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Monomial {
    /// Render as `x^2*y`, with `1` for the empty product.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Admissible term orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum TermOrder {
    Lex,
    #[default]
    GrevLex,
    /// Block order eliminating the first `k` variables: graded reverse
    /// lexicographic on the first block, ties broken by graded reverse
    /// lexicographic on the remaining variables.
    Elim(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // a smaller exponent in the last differing variable makes the monomial larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.exps.cmp(&b.exps),
            TermOrder::GrevLex => match a.deg.cmp(&b.deg) {
                Ordering::Equal => grevlex(&a.exps, &b.exps),
                o => o,
            },
            TermOrder::Elim(k) => {
                let k = (*k).min(a.exps.len());
                match grevlex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => grevlex(&a.exps[k..], &b.exps[k..]),
                    o => o,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::GrevLex => "grevlex".into(),
            TermOrder::Elim(k) => format!("elim({k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z vs y^2 in grevlex with x > y > z: y^2 > x*z
        let xz = Monomial::new([1, 0, 1]);
        let yy = Monomial::new([0, 2, 0]);
        assert_eq!(TermOrder::GrevLex.cmp(&yy, &xz), Ordering::Greater);
        assert_eq!(TermOrder::Lex.cmp(&yy, &xz), Ordering::Less);
    }

    #[test]
    fn elimination_order_prefers_first_block() {
        let z = Monomial::new([1, 0, 0]);
        let big = Monomial::new([0, 5, 5]);
        assert_eq!(TermOrder::Elim(1).cmp(&z, &big), Ordering::Greater);
        assert_eq!(TermOrder::GrevLex.cmp(&z, &big), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new([1, 2]);
        let b = Monomial::new([2, 1]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::new([2, 2]));
        assert_eq!(a.quotient_of(&l), Monomial::new([1, 0]));
    }
}
