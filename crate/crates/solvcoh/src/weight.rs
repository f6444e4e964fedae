//! The finitely generated abelian group of flat-bundle classes.
//!
//! A class is an integer vector of length `rank`, read modulo a declared
//! relations lattice. A rational `real_log` map per symbol records the
//! log-modulus of the corresponding character over the abelianization;
//! a class is unitary exactly when its real-log vanishes.

use crate::intmat::{IntegerLattice, LengthMismatch};
use num::rational::BigRational;
use num::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGroup {
    pub rank: usize,
    pub relations: IntegerLattice,
    /// One rational vector of length `base_dim` per symbol.
    pub real_log: Vec<Vec<BigRational>>,
    pub base_dim: usize,
}

/// A flat-bundle class: an integer vector read modulo the group relations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightClass(pub Vec<i64>);

impl WeightClass {
    pub fn zero(rank: usize) -> Self {
        WeightClass(vec![0; rank])
    }

    pub fn add(&self, other: &WeightClass) -> WeightClass {
        assert_eq!(self.0.len(), other.0.len());
        WeightClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> WeightClass {
        WeightClass(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightGroupError {
    /// real_log does not vanish on a relation generator, so unitarity would
    /// depend on the chosen representative.
    RealLogOnRelation { relation_index: usize },
    Shape(String),
}

impl std::fmt::Display for WeightGroupError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightGroupError::RealLogOnRelation { relation_index } => write!(
                f,
                "real_log nonzero on relation generator {}",
                relation_index
            ),
            WeightGroupError::Shape(s) => write!(f, "{}", s),
        }
    }
}

impl std::error::Error for WeightGroupError {}

impl WeightGroup {
    pub fn new(
        rank: usize,
        relations: Vec<Vec<i64>>,
        real_log: Vec<Vec<BigRational>>,
        base_dim: usize,
    ) -> Result<Self, WeightGroupError> {
        if real_log.len() != rank {
            return Err(WeightGroupError::Shape(format!(
                "expected {} real_log rows, got {}",
                rank,
                real_log.len()
            )));
        }
        for (i, row) in real_log.iter().enumerate() {
            if row.len() != base_dim {
                return Err(WeightGroupError::Shape(format!(
                    "real_log row {} has length {}, expected base_dim {}",
                    i,
                    row.len(),
                    base_dim
                )));
            }
        }
        let relations = IntegerLattice::new(rank, relations)
            .map_err(|e| WeightGroupError::Shape(e.to_string()))?;
        let group = WeightGroup {
            rank,
            relations,
            real_log,
            base_dim,
        };
        for (idx, rel) in group.relations.generators.iter().enumerate() {
            if !group.real_log_of_vector(rel).iter().all(Zero::is_zero) {
                return Err(WeightGroupError::RealLogOnRelation {
                    relation_index: idx,
                });
            }
        }
        Ok(group)
    }

    /// The trivial group (rank 0); every class is the zero class.
    pub fn trivial() -> Self {
        WeightGroup {
            rank: 0,
            relations: IntegerLattice::trivial(0),
            real_log: Vec::new(),
            base_dim: 0,
        }
    }

    fn real_log_of_vector(&self, v: &[i64]) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); self.base_dim];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigRational::from_integer(c.into());
            for (a, l) in acc.iter_mut().zip(&self.real_log[i]) {
                *a += &c * l;
            }
        }
        acc
    }

    /// Bundle equality: the difference of representatives lies in the
    /// relations lattice.
    pub fn class_equal(&self, a: &WeightClass, b: &WeightClass) -> Result<bool, LengthMismatch> {
        let diff: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
        if a.0.len() != self.rank || b.0.len() != self.rank {
            return Err(LengthMismatch {
                expected: self.rank,
                got: a.0.len().max(b.0.len()),
            });
        }
        self.relations.contains(&diff)
    }

    /// Unitarity of the class: the real-log homomorphism vanishes on it.
    /// Representative-independent because real_log vanishes on relations.
    pub fn is_unitary(&self, a: &WeightClass) -> bool {
        self.real_log_of_vector(&a.0).iter().all(Zero::is_zero)
    }

    /// Canonical representative modulo the relations lattice; used for map
    /// keys and deterministic ordering. Agrees with `class_equal`.
    pub fn canonical(&self, a: &WeightClass) -> WeightClass {
        let reduced = self.relations.reduce(&a.0).expect("rank checked");
        WeightClass(
            reduced
                .iter()
                .map(|b| i64::try_from(b).expect("weight outside i64 range"))
                .collect(),
        )
    }

    /// Sum of the member weights over a multi-index.
    pub fn multiindex_class(&self, weights: &[WeightClass], index: &[usize]) -> WeightClass {
        let mut acc = WeightClass::zero(self.rank);
        for &i in index {
            acc = acc.add(&weights[i]);
        }
        acc
    }

    /// The distinct classes of all p-element multi-indices, deduplicated by
    /// class equality and ordered by canonical representative.
    pub fn enumerate_k(&self, weights: &[WeightClass], p: usize) -> Vec<WeightClass> {
        let n = weights.len();
        if p > n {
            return Vec::new();
        }
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize != p {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let class = self.multiindex_class(weights, &idx);
            seen.insert(self.canonical(&class));
        }
        seen.into_iter().collect()
    }

    /// Union of `enumerate_k` over all degrees.
    pub fn enumerate_k_all(&self, weights: &[WeightClass]) -> Vec<WeightClass> {
        let mut seen = std::collections::BTreeSet::new();
        for p in 0..=weights.len() {
            seen.extend(self.enumerate_k(weights, p));
        }
        seen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// The weight data of the six-generator fixture: W = ℤ, no relations,
    /// real_log of the symbol = 1/2.
    fn sec8_group() -> WeightGroup {
        WeightGroup::new(1, vec![], vec![vec![rat(1, 2)]], 1).unwrap()
    }

    fn sec8_weights() -> Vec<WeightClass> {
        [0i64, 1, -1, 0, 1, -1]
            .iter()
            .map(|&w| WeightClass(vec![w]))
            .collect()
    }

    #[test]
    fn class_equal_basic() {
        let g = sec8_group();
        let a = WeightClass(vec![1]);
        assert!(g.class_equal(&a, &a).unwrap());
        assert!(!g
            .class_equal(&WeightClass(vec![1]), &WeightClass(vec![-1]))
            .unwrap());

        let g2 = WeightGroup::new(1, vec![vec![2]], vec![vec![rat(0, 1)]], 1).unwrap();
        assert!(g2
            .class_equal(&WeightClass(vec![0]), &WeightClass(vec![2]))
            .unwrap());
        assert!(!g2
            .class_equal(&WeightClass(vec![0]), &WeightClass(vec![1]))
            .unwrap());
    }

    #[test]
    fn real_log_must_vanish_on_relations() {
        let err = WeightGroup::new(1, vec![vec![1]], vec![vec![rat(1, 2)]], 1).unwrap_err();
        assert_eq!(err, WeightGroupError::RealLogOnRelation { relation_index: 0 });
    }

    #[test]
    fn unitarity() {
        let g = sec8_group();
        assert!(g.is_unitary(&WeightClass(vec![0])));
        assert!(!g.is_unitary(&WeightClass(vec![1])));
        let g0 = WeightGroup::new(1, vec![], vec![vec![rat(0, 1)]], 1).unwrap();
        assert!(g0.is_unitary(&WeightClass(vec![5])));
    }

    #[test]
    fn multiindex_addition() {
        let g = sec8_group();
        let w = sec8_weights();
        assert_eq!(g.multiindex_class(&w, &[]), WeightClass(vec![0]));
        assert_eq!(g.multiindex_class(&w, &[1]), WeightClass(vec![1]));
        // indices 1 and 4 are the two weight +1 generators
        assert_eq!(g.multiindex_class(&w, &[1, 4]), WeightClass(vec![2]));
    }

    #[test]
    fn enumerate_k_examples() {
        let g = sec8_group();
        let w = sec8_weights();
        assert_eq!(g.enumerate_k(&w, 0), vec![WeightClass(vec![0])]);
        let k1 = g.enumerate_k(&w, 1);
        assert_eq!(
            k1,
            vec![
                WeightClass(vec![-1]),
                WeightClass(vec![0]),
                WeightClass(vec![1])
            ]
        );
        let all = g.enumerate_k_all(&w);
        assert_eq!(
            all,
            (-2..=2).map(|k| WeightClass(vec![k])).collect::<Vec<_>>()
        );
    }

    #[test]
    fn canonical_respects_relations() {
        let g = WeightGroup::new(2, vec![vec![2, 0]], vec![vec![rat(0, 1)], vec![rat(1, 1)]], 1)
            .unwrap();
        let a = WeightClass(vec![5, 3]);
        let b = WeightClass(vec![1, 3]);
        assert_eq!(g.canonical(&a), g.canonical(&b));
        assert!(g.class_equal(&a, &b).unwrap());
        assert_ne!(g.canonical(&a), g.canonical(&WeightClass(vec![0, 3])));
    }
}
