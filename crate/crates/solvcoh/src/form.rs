//! Sparse exterior-algebra elements over up to 62 generators.
//!
//! A monomial is a bitmask whose set bits are the (strictly increasing)
//! generator indices of a wedge product; a form maps monomials to nonzero
//! scalars. Wedge products carry permutation-parity signs.

use crate::scalar::Scalar;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_GENERATORS: usize = 62;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Form {
    terms: BTreeMap<u64, Scalar>,
}

/// Parity sign picked up when concatenating the sorted index sets `a` and
/// `b`: counts, for each member of `b`, the members of `a` above it.
pub fn merge_sign(a: u64, b: u64) -> i32 {
    debug_assert_eq!(a & b, 0);
    let mut swaps = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// The basis monomial for a set of generator indices.
    pub fn basis(mask: u64) -> Self {
        let mut f = Form::zero();
        f.terms.insert(mask, Scalar::one());
        f
    }

    /// The degree-1 generator `g_i`.
    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_GENERATORS);
        Form::basis(1u64 << i)
    }

    pub fn unit() -> Self {
        Form::basis(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.terms.iter().map(|(&m, s)| (m, s))
    }

    pub fn coefficient(&self, mask: u64) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: u64, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self.terms.iter().map(|(&m, s)| (m, s * c)).collect(),
        }
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(&m, s)| (m, -s)).collect(),
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if ma & mb != 0 {
                    continue;
                }
                let sign = merge_sign(ma, mb);
                let mut c = ca * cb;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(ma | mb, &c);
            }
        }
        out
    }

    /// Wedge power `self ∧ ... ∧ self` (k factors).
    pub fn wedge_pow(&self, k: usize) -> Form {
        let mut acc = Form::unit();
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Degrees (monomial sizes) present in the form, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self
            .terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The unique degree when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The component supported on monomials of the given degree.
    pub fn degree_part(&self, d: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == d)
                .map(|(&m, s)| (m, s.clone()))
                .collect(),
        }
    }

    /// Keep only the monomials accepted by the filter.
    pub fn filter_masks(&self, mut keep: impl FnMut(u64) -> bool) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, s)| (m, s.clone()))
                .collect(),
        }
    }

    /// Coordinates with respect to an ordered monomial basis. `None` when a
    /// term falls outside the basis.
    pub fn coordinates(&self, basis: &[u64]) -> Option<Vec<Scalar>> {
        let index: BTreeMap<u64, usize> =
            basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut v = vec![Scalar::zero(); basis.len()];
        for (m, c) in self.terms() {
            let &i = index.get(&m)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    pub fn from_coordinates(basis: &[u64], coords: &[Scalar]) -> Form {
        assert_eq!(basis.len(), coords.len());
        let mut f = Form::zero();
        for (&m, c) in basis.iter().zip(coords) {
            f.add_term(m, c);
        }
        f
    }

    /// Complex conjugation given an involutive index pairing: generator
    /// indices are remapped through `pair`, coefficients conjugated, and the
    /// reordering sign applied.
    pub fn conjugate(&self, pair: &[usize]) -> Form {
        let mut out = Form::zero();
        for (mask, c) in self.terms() {
            let mut indices: Vec<usize> = (0..MAX_GENERATORS)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pair[i])
                .collect();
            // Parity of the permutation sorting the remapped indices.
            let mut sign = 1i32;
            for i in 0..indices.len() {
                for j in (i + 1)..indices.len() {
                    if indices[i] > indices[j] {
                        sign = -sign;
                    }
                }
            }
            indices.sort_unstable();
            let new_mask = indices.iter().fold(0u64, |acc, &i| acc | 1u64 << i);
            let mut coeff = c.conj();
            if sign < 0 {
                coeff = -coeff;
            }
            out.add_term(new_mask, &coeff);
        }
        out
    }

    /// Pretty rendering with generator labels, e.g. `1/2·dz1 + i·dz2^dz3`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (mask, c) in self.terms() {
            let mono: Vec<&str> = (0..MAX_GENERATORS)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| labels[i].as_str())
                .collect();
            let coeff = c.to_string();
            let body = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono.join("^")
            } else if coeff == "-1" {
                format!("-{}", mono.join("^"))
            } else if c.im.is_zero() || c.re.is_zero() {
                format!("{}·{}", coeff, mono.join("^"))
            } else {
                format!("({})·{}", coeff, mono.join("^"))
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| format!("{}·e[{:b}]", c, m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All degree-`p` monomial masks over `n` generators, ascending.
pub fn degree_masks(n: usize, p: usize) -> Vec<u64> {
    assert!(n <= MAX_GENERATORS);
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Gosper's hack starting from the lowest p-bit pattern.
    if p == 0 {
        return vec![0];
    }
    let mut v: u64 = (1u64 << p) - 1;
    let limit: u64 = 1u64 << n;
    while v < limit {
        out.push(v);
        let t = v | (v - 1);
        v = (t + 1) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let g: Vec<Form> = (0..4).map(Form::generator).collect();
        // g0 ∧ g1 = -(g1 ∧ g0)
        assert_eq!(g[0].wedge(&g[1]), g[1].wedge(&g[0]).neg());
        // g_i ∧ g_i = 0
        assert!(g[2].wedge(&g[2]).is_zero());
        // (g0∧g1) ∧ (g2∧g3) = +g0∧g1∧g2∧g3 ; swapping blocks keeps sign (even degree)
        let a = g[0].wedge(&g[1]);
        let b = g[2].wedge(&g[3]);
        assert_eq!(a.wedge(&b), b.wedge(&a));
        assert_eq!(a.wedge(&b).coefficient(0b1111), Scalar::one());
    }

    #[test]
    fn merge_sign_matches_bubble_count() {
        // g2 ∧ g0: one inversion
        assert_eq!(merge_sign(0b100, 0b001), -1);
        assert_eq!(merge_sign(0b001, 0b100), 1);
        assert_eq!(merge_sign(0b101, 0b010), -1); // g0g2 ∧ g1: g1 passes g2
    }

    #[test]
    fn degree_masks_are_binomials() {
        assert_eq!(degree_masks(6, 0), vec![0]);
        assert_eq!(degree_masks(6, 1).len(), 6);
        assert_eq!(degree_masks(6, 3).len(), 20);
        assert_eq!(degree_masks(6, 6).len(), 1);
        assert!(degree_masks(4, 5).is_empty());
    }

    #[test]
    fn conjugation_pairs_and_signs() {
        // pairing 0<->2, 1<->3 (two complex generators)
        let pair = {
            let mut p: Vec<usize> = (0..MAX_GENERATORS).collect();
            p[0] = 2;
            p[2] = 0;
            p[1] = 3;
            p[3] = 1;
            p
        };
        let f = Form::generator(0).wedge(&Form::generator(1)).scale(&Scalar::i());
        let c = f.conjugate(&pair);
        // conj(i·g0∧g1) = -i·g2∧g3
        assert_eq!(c.coefficient(0b1100), -Scalar::i());
        // conjugating twice is the identity
        assert_eq!(c.conjugate(&pair), f);
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = degree_masks(3, 2);
        let f = Form::basis(0b011).scale(&Scalar::from_ratio(2, 3));
        let coords = f.coordinates(&basis).unwrap();
        assert_eq!(Form::from_coordinates(&basis, &coords), f);
        let outside = Form::basis(0b100);
        assert!(outside.coordinates(&basis).is_none());
    }
}
