//! Ingestion and validation of solvmanifold model data, and the weight-graded
//! invariant complex it generates.
//!
//! A model is a list of exterior-algebra generators, each carrying a weight
//! class, an optional bidegree tag and a log-derivative 1-form, together with
//! structure constants for the nilpotent part of the differential. The full
//! differential on a generator is the structure-constant part plus
//! `logderiv ∧ generator`, extended to the whole algebra as a graded
//! derivation.

use crate::form::{degree_masks, Form, MAX_GENERATORS};
use crate::linalg::ScalarMatrix;
use crate::scalar::Scalar;
use crate::weight::{WeightClass, WeightGroup};
use num::rational::BigRational;
use num::Zero;
use std::collections::BTreeMap;

/// Bidegree tag of a generator of the complexified model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bidegree {
    /// A (1,0) generator.
    Holomorphic,
    /// A (0,1) generator.
    Antiholomorphic,
}

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub label: String,
    pub weight: WeightClass,
    pub bidegree: Option<Bidegree>,
    /// Coefficients of the log-derivative 1-form over the generators.
    pub logderiv: Vec<BigRational>,
}

/// Structure-constant triple: `d g_k` contains `coeff · g_i ∧ g_j`, `i < j`.
#[derive(Clone, Debug)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    /// Free text naming the hypothesis under which Dolbeault results
    /// transfer from the model to the manifold; echoed into reports.
    pub dolbeault_justification: Option<String>,
    pub group: WeightGroup,
    pub generators: Vec<GeneratorSpec>,
    pub structure_constants: Vec<StructureConstant>,
    /// Named form literals usable from the command line.
    pub forms: BTreeMap<String, Form>,
    /// Names of forms declared as symplectic candidates.
    pub symplectic: Vec<String>,
    /// Optional pretty 1-form name per weight symbol.
    pub symbol_forms: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    TooManyGenerators {
        count: usize,
    },
    WeightLength {
        generator: usize,
    },
    LogderivLength {
        generator: usize,
    },
    StructureIndex {
        triple: usize,
    },
    DuplicateTriple {
        triple: usize,
    },
    /// weight(g_k) ≠ weight(g_i) + weight(g_j) for a listed triple.
    WeightInhomogeneous {
        i: usize,
        j: usize,
        k: usize,
    },
    /// A log-derivative touches a generator that is not closed of weight 0.
    LogderivSupport {
        generator: usize,
        support: usize,
    },
    /// Bidegree tags present on some but not all generators, or counts differ.
    ConjugationPairing {
        holomorphic: usize,
        antiholomorphic: usize,
    },
    /// D² ≠ 0 on a generator; the witness is D(D(g)).
    DSquared {
        generator: usize,
        witness: String,
    },
    /// The lower central series stabilizes above zero.
    NotNilpotent {
        stabilized_dim: usize,
    },
    SymplecticUnknownForm {
        name: String,
    },
    SymbolFormUnknown {
        symbol: usize,
        name: String,
    },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use ValidationIssue::*;
        match self {
            TooManyGenerators { count } => {
                write!(f, "{} generators exceed the supported maximum {}", count, MAX_GENERATORS)
            }
            WeightLength { generator } => {
                write!(f, "generator {}: weight vector length differs from group rank", generator + 1)
            }
            LogderivLength { generator } => {
                write!(f, "generator {}: logderiv length differs from generator count", generator + 1)
            }
            StructureIndex { triple } => {
                write!(f, "structure constant {}: index out of range or not i<j", triple + 1)
            }
            DuplicateTriple { triple } => {
                write!(f, "structure constant {}: duplicate (i,j,k) triple", triple + 1)
            }
            WeightInhomogeneous { i, j, k } => write!(
                f,
                "weight of g{} is not the sum of the weights of g{} and g{}",
                k + 1,
                i + 1,
                j + 1
            ),
            LogderivSupport { generator, support } => write!(
                f,
                "logderiv of g{} touches g{}, which is not a closed generator of weight 0",
                generator + 1,
                support + 1
            ),
            ConjugationPairing {
                holomorphic,
                antiholomorphic,
            } => write!(
                f,
                "bidegree tags must cover all generators with matching counts ({} holomorphic vs {} antiholomorphic)",
                holomorphic, antiholomorphic
            ),
            DSquared { generator, witness } => {
                write!(f, "D²(g{}) = {} is nonzero", generator + 1, witness)
            }
            NotNilpotent { stabilized_dim } => write!(
                f,
                "lower central series stabilizes at dimension {}; the model must present a nilpotent algebra (split the semisimple part into weights)",
                stabilized_dim
            ),
            SymplecticUnknownForm { name } => {
                write!(f, "symplectic declaration references unknown form '{}'", name)
            }
            SymbolFormUnknown { symbol, name } => {
                write!(f, "symbol_form for symbol {} references unknown form '{}'", symbol + 1, name)
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.issues.is_empty() {
            write!(f, "valid")
        } else {
            for issue in &self.issues {
                writeln!(f, "invalid: {}", issue)?;
            }
            Ok(())
        }
    }
}

impl ModelSpec {
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn labels(&self) -> Vec<String> {
        // Padded to the bitmask width so Form::render can index directly.
        let mut labels: Vec<String> = self.generators.iter().map(|g| g.label.clone()).collect();
        labels.resize(MAX_GENERATORS, String::new());
        labels
    }

    /// The log-derivative of a generator as a degree-1 form.
    pub fn logderiv_form(&self, gen: usize) -> Form {
        let mut f = Form::zero();
        for (s, c) in self.generators[gen].logderiv.iter().enumerate() {
            if !c.is_zero() {
                f.add_term(1u64 << s, &Scalar::new(c.clone(), BigRational::zero()));
            }
        }
        f
    }

    /// Structure-constant part of the differential on a generator.
    fn ce_dgen(&self, k: usize) -> Form {
        let mut f = Form::zero();
        for sc in &self.structure_constants {
            if sc.k == k {
                f.add_term((1u64 << sc.i) | (1u64 << sc.j), &sc.coeff);
            }
        }
        f
    }

    /// Full differential on a generator: structure constants plus twist.
    fn full_dgen(&self, k: usize) -> Form {
        self.ce_dgen(k)
            .add(&self.logderiv_form(k).wedge(&Form::generator(k)))
    }

    /// Structural validation. Lists every violation rather than stopping at
    /// the first; never panics on bad data.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let n = self.n();
        if n > MAX_GENERATORS {
            issues.push(ValidationIssue::TooManyGenerators { count: n });
            return ValidationReport { issues };
        }
        for (idx, g) in self.generators.iter().enumerate() {
            if g.weight.0.len() != self.group.rank {
                issues.push(ValidationIssue::WeightLength { generator: idx });
            }
            if g.logderiv.len() != n {
                issues.push(ValidationIssue::LogderivLength { generator: idx });
            }
        }
        if !issues.is_empty() {
            return ValidationReport { issues };
        }

        let mut seen = std::collections::BTreeSet::new();
        for (t, sc) in self.structure_constants.iter().enumerate() {
            if sc.i >= sc.j || sc.j >= n || sc.k >= n {
                issues.push(ValidationIssue::StructureIndex { triple: t });
                continue;
            }
            if !seen.insert((sc.i, sc.j, sc.k)) {
                issues.push(ValidationIssue::DuplicateTriple { triple: t });
            }
            let sum = self.generators[sc.i].weight.add(&self.generators[sc.j].weight);
            match self.group.class_equal(&self.generators[sc.k].weight, &sum) {
                Ok(true) => {}
                _ => issues.push(ValidationIssue::WeightInhomogeneous {
                    i: sc.i,
                    j: sc.j,
                    k: sc.k,
                }),
            }
        }

        // Log-derivatives must be supported on closed weight-0 generators.
        let zero_class = WeightClass::zero(self.group.rank);
        for (idx, g) in self.generators.iter().enumerate() {
            for (s, c) in g.logderiv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let weight_ok = self
                    .group
                    .class_equal(&self.generators[s].weight, &zero_class)
                    .unwrap_or(false);
                let closed_ok = self.full_dgen(s).is_zero();
                if !weight_ok || !closed_ok {
                    issues.push(ValidationIssue::LogderivSupport {
                        generator: idx,
                        support: s,
                    });
                }
            }
        }

        let tagged = self.generators.iter().filter(|g| g.bidegree.is_some()).count();
        if tagged != 0 {
            let holo = self
                .generators
                .iter()
                .filter(|g| g.bidegree == Some(Bidegree::Holomorphic))
                .count();
            let anti = self
                .generators
                .iter()
                .filter(|g| g.bidegree == Some(Bidegree::Antiholomorphic))
                .count();
            if tagged != n || holo != anti {
                issues.push(ValidationIssue::ConjugationPairing {
                    holomorphic: holo,
                    antiholomorphic: anti,
                });
            }
        }

        // D² = 0 on generators suffices for the whole algebra.
        let dgens: Vec<Form> = (0..n).map(|k| self.full_dgen(k)).collect();
        let labels = self.labels();
        for k in 0..n {
            let dd = apply_derivation(&dgens, &dgens[k]);
            if !dd.is_zero() {
                issues.push(ValidationIssue::DSquared {
                    generator: k,
                    witness: dd.render(&labels),
                });
            }
        }

        if issues.is_empty() {
            let lcs = lower_central_series_of(&dgens, n);
            if *lcs.last().unwrap() != 0 {
                issues.push(ValidationIssue::NotNilpotent {
                    stabilized_dim: *lcs.last().unwrap(),
                });
            }
        }

        for name in &self.symplectic {
            if !self.forms.contains_key(name) {
                issues.push(ValidationIssue::SymplecticUnknownForm { name: name.clone() });
            }
        }
        for (sym, name) in self.symbol_forms.iter().enumerate() {
            if let Some(name) = name {
                if !self.forms.contains_key(name) {
                    issues.push(ValidationIssue::SymbolFormUnknown {
                        symbol: sym,
                        name: name.clone(),
                    });
                }
            }
        }

        ValidationReport { issues }
    }
}

/// Extend a differential given on generators to a form, as a graded
/// derivation: crossing a generator flips the sign.
pub fn apply_derivation(dgens: &[Form], form: &Form) -> Form {
    let mut out = Form::zero();
    for (mask, coeff) in form.terms() {
        let mut sign_neg = false;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !dgens[i].is_zero() {
                let below = mask & ((1u64 << i) - 1);
                let above = mask & !((1u64 << (i + 1)) - 1);
                let term = Form::basis(below)
                    .wedge(&dgens[i])
                    .wedge(&Form::basis(above));
                let mut c = coeff.clone();
                if sign_neg {
                    c = -c;
                }
                for (m, tc) in term.terms() {
                    out.add_term(m, &(tc * &c));
                }
            }
            sign_neg = !sign_neg;
        }
    }
    out
}

fn lower_central_series_of(dgens: &[Form], n: usize) -> Vec<usize> {
    // Bracket coefficients: coefficient of g_a∧g_b (a<b) in D(g_k) gives the
    // g_k-coordinate of [e_a, e_b], up to a global sign that is irrelevant
    // for the spans below.
    let bracket = |a: usize, b: usize| -> Vec<Scalar> {
        (0..n)
            .map(|k| {
                if a < b {
                    dgens[k].coefficient((1u64 << a) | (1u64 << b))
                } else if b < a {
                    -dgens[k].coefficient((1u64 << b) | (1u64 << a))
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    };

    let mut dims = vec![n];
    let mut current: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect();
    loop {
        let mut next_vectors = Vec::new();
        for a in 0..n {
            for v in &current {
                // [e_a, v] with v = Σ v_b e_b
                let mut w = vec![Scalar::zero(); n];
                for (b, vb) in v.iter().enumerate() {
                    if vb.is_zero() {
                        continue;
                    }
                    let br = bracket(a, b);
                    for (k, brk) in br.iter().enumerate() {
                        if !brk.is_zero() {
                            w[k] += &(brk * vb);
                        }
                    }
                }
                if w.iter().any(|x| !x.is_zero()) {
                    next_vectors.push(w);
                }
            }
        }
        let next = crate::linalg::span_basis(&next_vectors, n);
        let dim = next.len();
        let prev = *dims.last().unwrap();
        dims.push(dim);
        if dim == 0 || dim == prev {
            break;
        }
        current = next;
    }
    dims
}

/// Engine-facing error for operations on the complex.
#[derive(Debug, Clone)]
pub enum ModelError {
    Invalid(ValidationReport),
}

impl std::fmt::Display for ModelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelError::Invalid(r) => write!(f, "{}", r),
        }
    }
}

impl std::error::Error for ModelError {}

/// The weight-graded invariant model complex with its materialized
/// differential. Immutable after construction; block extraction for distinct
/// (class, degree) pairs can run in parallel.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    pub spec: ModelSpec,
    dgens: Vec<Form>,
    ce_dgens: Vec<Form>,
    weights: Vec<WeightClass>,
}

impl InvariantComplex {
    /// Validate and build. Fails with the full validation report.
    pub fn build(spec: ModelSpec) -> Result<Self, ModelError> {
        let report = spec.validate();
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        let n = spec.n();
        let dgens: Vec<Form> = (0..n).map(|k| spec.full_dgen(k)).collect();
        let ce_dgens: Vec<Form> = (0..n).map(|k| spec.ce_dgen(k)).collect();
        let weights: Vec<WeightClass> = spec
            .generators
            .iter()
            .map(|g| spec.group.canonical(&g.weight))
            .collect();
        Ok(InvariantComplex {
            spec,
            dgens,
            ce_dgens,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn group(&self) -> &WeightGroup {
        &self.spec.group
    }

    pub fn weights(&self) -> &[WeightClass] {
        &self.weights
    }

    pub fn dgen(&self, i: usize) -> &Form {
        &self.dgens[i]
    }

    pub fn ce_dgen(&self, i: usize) -> &Form {
        &self.ce_dgens[i]
    }

    /// Full differential (structure constants plus twists).
    pub fn d_apply(&self, f: &Form) -> Form {
        apply_derivation(&self.dgens, f)
    }

    /// Untwisted structure-constant differential; the bigraded layer splits
    /// this one by bidegree.
    pub fn ce_apply(&self, f: &Form) -> Form {
        apply_derivation(&self.ce_dgens, f)
    }

    /// Weight class of a monomial (canonical representative).
    pub fn class_of_mask(&self, mask: u64) -> WeightClass {
        let mut acc = WeightClass::zero(self.group().rank);
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc = acc.add(&self.weights[i]);
        }
        self.group().canonical(&acc)
    }

    /// Degree-p monomials of a given class, ascending by bitmask.
    pub fn block_basis(&self, w: &WeightClass, p: usize) -> Vec<u64> {
        let w = self.group().canonical(w);
        degree_masks(self.n(), p)
            .into_iter()
            .filter(|&m| self.class_of_mask(m) == w)
            .collect()
    }

    /// Matrix of the differential from the (w,p) block to the (w,p+1) block.
    pub fn block_matrix(&self, w: &WeightClass, p: usize) -> ScalarMatrix {
        let src = self.block_basis(w, p);
        let dst = self.block_basis(w, p + 1);
        let mut m = ScalarMatrix::zeros(dst.len(), src.len());
        for (j, &mask) in src.iter().enumerate() {
            let image = self.d_apply(&Form::basis(mask));
            let coords = image
                .coordinates(&dst)
                .expect("differential leaves its weight block");
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// The matrices entering and leaving the degree-p, class-w subspace:
    /// (D_p restricted, D_{p−1} restricted).
    pub fn weight_block(&self, w: &WeightClass, p: usize) -> (ScalarMatrix, ScalarMatrix) {
        let outgoing = self.block_matrix(w, p);
        let incoming = if p == 0 {
            ScalarMatrix::zeros(self.block_basis(w, 0).len(), 0)
        } else {
            self.block_matrix(w, p - 1)
        };
        (outgoing, incoming)
    }

    /// The unipotent hull is abelian iff the differential kills every
    /// generator.
    pub fn hull_is_abelian(&self) -> bool {
        self.dgens.iter().all(Form::is_zero)
    }

    /// Dimensions of the lower central series of the dual algebra, ending
    /// at 0 (validation guarantees nilpotency).
    pub fn lower_central_series(&self) -> Vec<usize> {
        lower_central_series_of(&self.dgens, self.n())
    }

    pub fn labels(&self) -> Vec<String> {
        self.spec.labels()
    }

    /// The pretty 1-form attached to a class, when every weight symbol has
    /// one: the weighted sum of the symbol forms.
    pub fn class_one_form(&self, w: &WeightClass) -> Option<Form> {
        let mut acc = Form::zero();
        for (sym, name) in self.spec.symbol_forms.iter().enumerate() {
            let coeff = w.0[sym];
            if coeff == 0 {
                continue;
            }
            let name = name.as_ref()?;
            let f = self.spec.forms.get(name)?;
            acc = acc.add(&f.scale(&Scalar::from_integer(coeff)));
        }
        Some(acc)
    }

    /// The class named by a closed 1-form, if the symbol forms express it
    /// integrally. Inverse of `class_one_form` where defined.
    pub fn class_of_one_form(&self, phi: &Form) -> Option<WeightClass> {
        let rank = self.group().rank;
        if phi.is_zero() {
            return Some(WeightClass::zero(rank));
        }
        // Solve phi = Σ w_j · s_j over the monomial support.
        let mut masks: std::collections::BTreeSet<u64> = phi.terms().map(|(m, _)| m).collect();
        let mut symbol_forms = Vec::with_capacity(rank);
        for name in &self.spec.symbol_forms {
            let f = self.spec.forms.get(name.as_ref()?)?;
            masks.extend(f.terms().map(|(m, _)| m));
            symbol_forms.push(f.clone());
        }
        let basis: Vec<u64> = masks.into_iter().collect();
        let columns: Vec<Vec<Scalar>> = symbol_forms
            .iter()
            .map(|f| f.coordinates(&basis).unwrap())
            .collect();
        let rhs = phi.coordinates(&basis).unwrap();
        let coeffs = crate::linalg::membership(&rhs, &columns)?;
        let mut w = Vec::with_capacity(rank);
        for c in coeffs {
            if !c.im.is_zero() || !c.re.denom().eq(&num::BigInt::from(1)) {
                return None;
            }
            w.push(i64::try_from(c.re.numer()).ok()?);
        }
        Some(self.group().canonical(&WeightClass(w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_is_valid_and_abelian() {
        let spec = fixtures::torus();
        assert!(spec.validate().is_valid());
        let c = InvariantComplex::build(spec).unwrap();
        assert!(c.hull_is_abelian());
        assert_eq!(c.lower_central_series(), vec![2, 0]);
    }

    #[test]
    fn heisenberg_valid_not_abelian() {
        let spec = fixtures::heisenberg();
        assert!(spec.validate().is_valid());
        let c = InvariantComplex::build(spec).unwrap();
        assert!(!c.hull_is_abelian());
        assert_eq!(c.lower_central_series(), vec![3, 1, 0]);
        // D kills every multi-index except the bare g3: the extension to
        // g1∧g3 and g2∧g3 produces a repeated generator and dies.
        for mask in 0u64..8 {
            let image = c.d_apply(&Form::basis(mask));
            assert_eq!(image.is_zero(), mask != 0b100, "mask {:b}", mask);
        }
    }

    #[test]
    fn heisenberg_with_bogus_triple_is_invalid() {
        // d x2 = x1 ∧ x3 on top of d x3 = −x1 ∧ x2 still squares to zero
        // (both expansions hit a repeated x1), but the brackets it encodes
        // make ad(e1) invertible on ⟨e2,e3⟩, so the algebra is not
        // nilpotent and validation rejects it.
        let mut spec = fixtures::heisenberg();
        spec.structure_constants.push(StructureConstant {
            i: 0,
            j: 2,
            k: 1,
            coeff: Scalar::one(),
        });
        let report = spec.validate();
        assert!(!report.is_valid());
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::NotNilpotent { .. })));
    }

    #[test]
    fn d_squared_violation_reported_with_witness() {
        // d g4 = g2 ∧ g3 with d g2 = g1 ∧ g2 gives D²(g4) = g1∧g2∧g3 ≠ 0.
        let spec = fixtures::plain_model(
            "broken",
            4,
            vec![
                StructureConstant {
                    i: 1,
                    j: 2,
                    k: 3,
                    coeff: Scalar::one(),
                },
                StructureConstant {
                    i: 0,
                    j: 1,
                    k: 1,
                    coeff: Scalar::one(),
                },
            ],
        );
        let report = spec.validate();
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::DSquared { generator: 3, .. })));
    }

    #[test]
    fn kodaira_thurston_series() {
        let c = InvariantComplex::build(fixtures::kodaira_thurston()).unwrap();
        assert_eq!(c.lower_central_series(), vec![4, 1, 0]);
    }

    #[test]
    fn sec8_differential_vanishes() {
        let spec = fixtures::sec8();
        assert!(spec.validate().is_valid(), "{}", spec.validate());
        let c = InvariantComplex::build(spec).unwrap();
        // Structure constants cancel against the log-derivative twists.
        for i in 0..6 {
            assert!(c.dgen(i).is_zero(), "generator {}", i);
        }
        assert!(c.hull_is_abelian());
        // ... but the untwisted part alone does not vanish.
        assert!(!c.ce_dgen(1).is_zero());
    }

    #[test]
    fn sec8_weight_blocks() {
        let c = InvariantComplex::build(fixtures::sec8()).unwrap();
        let plus = WeightClass(vec![1]);
        assert_eq!(c.block_basis(&plus, 1), vec![0b000010, 0b010000]);
        let (out, inc) = c.weight_block(&plus, 1);
        assert!(out.is_zero());
        assert!(inc.is_zero());
        assert!(c.block_basis(&WeightClass(vec![3]), 2).is_empty());
        assert_eq!(c.block_basis(&WeightClass(vec![0]), 1).len(), 2);
    }

    #[test]
    fn non_nilpotent_model_rejected() {
        // d g2 = g1 ∧ g2 presents a solvable, non-nilpotent algebra.
        let spec = fixtures::plain_model(
            "solvable",
            2,
            vec![StructureConstant {
                i: 0,
                j: 1,
                k: 1,
                coeff: Scalar::one(),
            }],
        );
        let report = spec.validate();
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::NotNilpotent { .. })));
    }

    #[test]
    fn weight_homogeneity_enforced() {
        let mut spec = fixtures::sec8();
        // g1 ∧ g2 has class +1 but g3 has class −1.
        spec.structure_constants.push(StructureConstant {
            i: 0,
            j: 1,
            k: 2,
            coeff: Scalar::one(),
        });
        let report = spec.validate();
        assert!(report
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::WeightInhomogeneous { .. })));
    }

    #[test]
    fn class_one_form_round_trip() {
        let c = InvariantComplex::build(fixtures::sec8()).unwrap();
        let phi = c.class_one_form(&WeightClass(vec![1])).unwrap();
        assert_eq!(c.class_of_one_form(&phi), Some(WeightClass(vec![1])));
        assert_eq!(c.class_of_one_form(&Form::zero()), Some(WeightClass(vec![0])));
        // A form outside the symbol span names no class.
        assert_eq!(c.class_of_one_form(&Form::generator(0)), None);
    }
}
