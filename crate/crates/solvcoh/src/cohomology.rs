//! Per-class twisted cohomology, jump loci, cup products, hard-Lefschetz and
//! Massey diagnostics, and the rescaling-symmetry verdict.
//!
//! Per-(class, degree) computations are independent; the jump-locus scan
//! fans out over classes and reassembles deterministically.

use crate::form::Form;
use crate::linalg::{membership, solve, span_basis, PivotOrder, ScalarMatrix};
use crate::model::InvariantComplex;
use crate::par::par_map;
use crate::scalar::Scalar;
use crate::weight::WeightClass;
use std::collections::BTreeSet;

#[derive(Debug, Clone)]
pub enum EngineError {
    /// The class is outside the multi-index character set, so its
    /// cohomology vanishes identically; computing an empty block would be
    /// misleading and is refused.
    ClassOutsideK { class: WeightClass },
    NotClosed { what: String },
    NotSymplectic { reason: String },
    /// A cup-product precondition of the Massey triple fails.
    CupNonzero { pair: String },
    WrongShape { what: String },
    /// Two routes that must agree did not; indicates input data outside the
    /// theorems' hypotheses, or a bug.
    Internal { what: String },
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineError::ClassOutsideK { class } => write!(
                f,
                "class {:?} is not a multi-index character class; its cohomology vanishes in every degree",
                class.0
            ),
            EngineError::NotClosed { what } => write!(f, "{} is not closed", what),
            EngineError::NotSymplectic { reason } => write!(f, "form is not symplectic: {}", reason),
            EngineError::CupNonzero { pair } => {
                write!(f, "cup product {} does not vanish in cohomology", pair)
            }
            EngineError::WrongShape { what } => write!(f, "{}", what),
            EngineError::Internal { what } => write!(f, "internal consistency failure: {}", what),
        }
    }
}

impl std::error::Error for EngineError {}

/// Cohomology of one (class, degree) block: dimension, echelon-canonical
/// representatives and the image basis they were completed against.
#[derive(Debug, Clone)]
pub struct DegreeData {
    pub basis: Vec<u64>,
    pub dim: usize,
    pub representatives: Vec<Form>,
    pub image_basis: Vec<Form>,
    rep_vectors: Vec<Vec<Scalar>>,
    image_vectors: Vec<Vec<Scalar>>,
}

impl DegreeData {
    /// Cohomology coordinates of a closed form in this block, or `None`
    /// when the form does not lie in the block span.
    pub fn project(&self, f: &Form) -> Option<Vec<Scalar>> {
        let v = f.coordinates(&self.basis)?;
        let mut span = self.rep_vectors.clone();
        span.extend(self.image_vectors.iter().cloned());
        let coeffs = membership(&v, &span)?;
        Some(coeffs[..self.dim].to_vec())
    }
}

/// Per-degree cohomology of a single weight class.
#[derive(Debug, Clone)]
pub struct ClassCohomology {
    pub class: WeightClass,
    pub degrees: Vec<DegreeData>,
}

impl ClassCohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(|d| d.dim).sum()
    }
}

/// Twisted cohomology of the block of a single class, all degrees.
///
/// Representatives are deterministic: the echelonized kernel basis is
/// filtered to the vectors that extend the image span.
pub fn cohomology(
    complex: &InvariantComplex,
    class: &WeightClass,
) -> Result<ClassCohomology, EngineError> {
    let group = complex.group();
    let w = group.canonical(class);
    let k_all = group.enumerate_k_all(complex.weights());
    if !k_all.contains(&w) {
        return Err(EngineError::ClassOutsideK { class: w });
    }
    Ok(cohomology_unchecked(complex, &w))
}

fn cohomology_unchecked(complex: &InvariantComplex, w: &WeightClass) -> ClassCohomology {
    let n = complex.n();
    let degrees = par_map((0..=n).collect::<Vec<_>>(), |p| degree_data(complex, w, p));
    ClassCohomology {
        class: w.clone(),
        degrees,
    }
}

fn degree_data(complex: &InvariantComplex, w: &WeightClass, p: usize) -> DegreeData {
    let basis = complex.block_basis(w, p);
    let outgoing = complex.block_matrix(w, p);
    let kernel = outgoing.kernel_basis();

    let image_vectors: Vec<Vec<Scalar>> = if p == 0 {
        Vec::new()
    } else {
        let prev_basis = complex.block_basis(w, p - 1);
        let images: Vec<Vec<Scalar>> = prev_basis
            .iter()
            .map(|&m| {
                complex
                    .d_apply(&Form::basis(m))
                    .coordinates(&basis)
                    .expect("differential preserves its weight block")
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        span_basis(&images, basis.len())
    };

    let picked = crate::linalg::echelon_completion(&image_vectors, &kernel, basis.len());
    let rep_vectors: Vec<Vec<Scalar>> = picked.iter().map(|&i| kernel[i].clone()).collect();
    let dim = kernel.len() - image_vectors.len();
    debug_assert_eq!(rep_vectors.len(), dim);

    DegreeData {
        dim,
        representatives: rep_vectors
            .iter()
            .map(|v| Form::from_coordinates(&basis, v))
            .collect(),
        image_basis: image_vectors
            .iter()
            .map(|v| Form::from_coordinates(&basis, v))
            .collect(),
        rep_vectors,
        image_vectors,
        basis,
    }
}

/// All per-(class, degree) data over the multi-index character classes,
/// assembled in canonical class order.
#[derive(Debug, Clone)]
pub struct CohomologyTable {
    pub classes: Vec<ClassCohomology>,
}

impl CohomologyTable {
    pub fn compute(complex: &InvariantComplex) -> Self {
        let k_all = complex.group().enumerate_k_all(complex.weights());
        let classes = par_map(k_all, |w| cohomology_unchecked(complex, &w));
        CohomologyTable { classes }
    }

    pub fn class(&self, w: &WeightClass) -> Option<&ClassCohomology> {
        self.classes.iter().find(|c| &c.class == w)
    }
}

/// The cohomology jump loci: per degree, the set of classes with nonzero
/// twisted cohomology.
#[derive(Debug, Clone)]
pub struct JumpLocus {
    pub per_degree: Vec<BTreeSet<WeightClass>>,
    pub all: BTreeSet<WeightClass>,
}

pub fn jump_loci(complex: &InvariantComplex) -> JumpLocus {
    let table = CohomologyTable::compute(complex);
    jump_loci_from_table(complex, &table)
}

pub fn jump_loci_from_table(complex: &InvariantComplex, table: &CohomologyTable) -> JumpLocus {
    let n = complex.n();
    let mut per_degree = vec![BTreeSet::new(); n + 1];
    let mut all = BTreeSet::new();
    for cc in &table.classes {
        for (p, d) in cc.degrees.iter().enumerate() {
            if d.dim > 0 {
                per_degree[p].insert(cc.class.clone());
                all.insert(cc.class.clone());
            }
        }
    }
    JumpLocus { per_degree, all }
}

fn check_closed_in_block(
    complex: &InvariantComplex,
    rep: &Form,
    what: &str,
) -> Result<(WeightClass, usize), EngineError> {
    if rep.is_zero() {
        return Ok((WeightClass::zero(complex.group().rank), 0));
    }
    let degree = rep
        .homogeneous_degree()
        .ok_or_else(|| EngineError::WrongShape {
            what: format!("{} is not degree-homogeneous", what),
        })?;
    let classes: BTreeSet<WeightClass> = rep
        .terms()
        .map(|(m, _)| complex.class_of_mask(m))
        .collect();
    if classes.len() != 1 {
        return Err(EngineError::WrongShape {
            what: format!("{} mixes weight classes", what),
        });
    }
    if !complex.d_apply(rep).is_zero() {
        return Err(EngineError::NotClosed {
            what: what.to_string(),
        });
    }
    Ok((classes.into_iter().next().unwrap(), degree))
}

/// Cup product of two closed block representatives, projected to the
/// cohomology of the sum class. Returns the landing class and the
/// coefficients over its representatives.
pub fn cup(
    complex: &InvariantComplex,
    rep1: &Form,
    rep2: &Form,
) -> Result<(WeightClass, Vec<Scalar>), EngineError> {
    let (w1, p1) = check_closed_in_block(complex, rep1, "first factor")?;
    let (w2, p2) = check_closed_in_block(complex, rep2, "second factor")?;
    let w = complex.group().canonical(&w1.add(&w2));
    let wedge = rep1.wedge(rep2);
    if wedge.is_zero() {
        let dim = cohomology(complex, &w)
            .map(|cc| cc.degrees[p1 + p2].dim)
            .unwrap_or(0);
        return Ok((w, vec![Scalar::zero(); dim]));
    }
    let cc = cohomology(complex, &w)?;
    let data = &cc.degrees[p1 + p2];
    let coeffs = data.project(&wedge).ok_or_else(|| EngineError::Internal {
        what: "closed wedge failed to project".to_string(),
    })?;
    Ok((w, coeffs))
}

/// Symplectic-form preconditions: closed, degree 2, class 0, top power
/// nonzero; the generator count must be even.
pub fn check_symplectic(complex: &InvariantComplex, omega: &Form) -> Result<usize, EngineError> {
    let n = complex.n();
    if n % 2 != 0 {
        return Err(EngineError::NotSymplectic {
            reason: format!("model dimension {} is odd", n),
        });
    }
    let half = n / 2;
    if omega.homogeneous_degree() != Some(2) {
        return Err(EngineError::NotSymplectic {
            reason: "not homogeneous of degree 2".to_string(),
        });
    }
    let zero = WeightClass::zero(complex.group().rank);
    if omega.terms().any(|(m, _)| complex.class_of_mask(m) != zero) {
        return Err(EngineError::NotSymplectic {
            reason: "not of weight class 0".to_string(),
        });
    }
    if !complex.d_apply(omega).is_zero() {
        return Err(EngineError::NotClosed {
            what: "symplectic candidate".to_string(),
        });
    }
    if omega.wedge_pow(half).is_zero() {
        return Err(EngineError::NotSymplectic {
            reason: format!("omega^{} vanishes", half),
        });
    }
    Ok(half)
}

/// One row of a Lefschetz verdict: the map `[ω]^{n−i}∧ : H^i → H^{2n−i}`.
#[derive(Debug, Clone)]
pub struct LefschetzRow {
    pub i: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub bijective: bool,
}

/// Hard-Lefschetz test for one twist class.
pub fn lefschetz_test(
    complex: &InvariantComplex,
    omega: &Form,
    class: &WeightClass,
) -> Result<Vec<LefschetzRow>, EngineError> {
    let half = check_symplectic(complex, omega)?;
    let cc = cohomology(complex, class)?;
    let mut rows = Vec::new();
    for i in 0..=half {
        let source = &cc.degrees[i];
        let target = &cc.degrees[2 * half - i];
        let power = omega.wedge_pow(half - i);
        let mut columns = Vec::new();
        let mut projected = true;
        for rep in &source.representatives {
            match target.project(&power.wedge(rep)) {
                Some(coeffs) => columns.push(coeffs),
                None => {
                    projected = false;
                    break;
                }
            }
        }
        let bijective = if source.dim != target.dim || !projected {
            false
        } else if source.dim == 0 {
            true
        } else {
            let rank = ScalarMatrix::from_columns(&columns, target.dim).rank();
            rank == source.dim
        };
        rows.push(LefschetzRow {
            i,
            source_dim: source.dim,
            target_dim: target.dim,
            bijective,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct HyperLefschetz {
    pub per_class: Vec<(WeightClass, Vec<LefschetzRow>)>,
    pub all_pass: bool,
    pub hull_abelian: bool,
}

/// Lefschetz over every jump-locus class, cross-checked against the
/// structural criterion: the two verdicts must agree for model data that
/// genuinely comes from a lattice quotient.
pub fn hyper_lefschetz(
    complex: &InvariantComplex,
    omega: &Form,
) -> Result<HyperLefschetz, EngineError> {
    check_symplectic(complex, omega)?;
    let loci = jump_loci(complex);
    let classes: Vec<WeightClass> = loci.all.into_iter().collect();
    let results = par_map(classes, |w| {
        let rows = lefschetz_test(complex, omega, &w);
        (w, rows)
    });
    let mut per_class = Vec::new();
    for (w, rows) in results {
        per_class.push((w, rows?));
    }
    let all_pass = per_class
        .iter()
        .all(|(_, rows)| rows.iter().all(|r| r.bijective));
    let hull_abelian = complex.hull_is_abelian();
    if all_pass != hull_abelian {
        return Err(EngineError::Internal {
            what: format!(
                "hyper-Lefschetz verdict ({}) disagrees with the abelian-hull criterion ({})",
                all_pass, hull_abelian
            ),
        });
    }
    Ok(HyperLefschetz {
        per_class,
        all_pass,
        hull_abelian,
    })
}

#[derive(Debug, Clone)]
pub struct MasseyResult {
    pub class: WeightClass,
    pub degree: usize,
    pub representative: Form,
    pub coefficients: Vec<Scalar>,
    pub indeterminacy_dim: usize,
    pub vanishes: bool,
}

/// Triple Massey product ⟨[a],[b],[c]⟩ with deterministic primitive solves.
/// Requires `[a]∪[b] = 0` and `[b]∪[c] = 0`; reports vanishing modulo the
/// indeterminacy subspace `[a]∪H + H∪[c]`.
pub fn massey_triple(
    complex: &InvariantComplex,
    a: &Form,
    b: &Form,
    c: &Form,
    order: PivotOrder,
) -> Result<MasseyResult, EngineError> {
    let (wa, pa) = check_closed_in_block(complex, a, "a")?;
    let (wb, pb) = check_closed_in_block(complex, b, "b")?;
    let (wc, pc) = check_closed_in_block(complex, c, "c")?;
    let group = complex.group();

    let (wab, cab) = cup(complex, a, b)?;
    if cab.iter().any(|s| !s.is_zero()) {
        return Err(EngineError::CupNonzero {
            pair: "[a]∪[b]".to_string(),
        });
    }
    let (wbc, cbc) = cup(complex, b, c)?;
    if cbc.iter().any(|s| !s.is_zero()) {
        return Err(EngineError::CupNonzero {
            pair: "[b]∪[c]".to_string(),
        });
    }

    // Primitives: D x = a∧b and D y = b∧c inside their blocks.
    let solve_primitive = |wedge: &Form, w: &WeightClass, p: usize| -> Result<Form, EngineError> {
        if wedge.is_zero() {
            return Ok(Form::zero());
        }
        let src_basis = complex.block_basis(w, p - 1);
        let dst_basis = complex.block_basis(w, p);
        let matrix = complex.block_matrix(w, p - 1);
        let rhs = wedge
            .coordinates(&dst_basis)
            .ok_or_else(|| EngineError::Internal {
                what: "wedge escaped its block".to_string(),
            })?;
        let x = solve(&matrix, &rhs, order).ok_or_else(|| EngineError::Internal {
            what: "cup vanished in cohomology but no primitive was found".to_string(),
        })?;
        Ok(Form::from_coordinates(&src_basis, &x))
    };
    let x = solve_primitive(&a.wedge(b), &group.canonical(&wab), pa + pb)?;
    let y = solve_primitive(&b.wedge(c), &group.canonical(&wbc), pb + pc)?;

    // m = a∧y − (−1)^{|a|} x∧c
    let sign = if pa % 2 == 0 {
        Scalar::from_integer(-1)
    } else {
        Scalar::one()
    };
    let m = a.wedge(&y).add(&x.wedge(c).scale(&sign));
    debug_assert!(complex.d_apply(&m).is_zero());

    let w_total = group.canonical(&wa.add(&wb).add(&wc));
    let degree = pa + pb + pc - 1;
    let target = cohomology(complex, &w_total)?;
    let data = &target.degrees[degree];
    let coefficients = if m.is_zero() {
        vec![Scalar::zero(); data.dim]
    } else {
        data.project(&m).ok_or_else(|| EngineError::Internal {
            what: "Massey representative failed to project".to_string(),
        })?
    };

    // Indeterminacy: [a]∪H^{|b|+|c|−1}(wb+wc) + H^{|a|+|b|−1}(wa+wb)∪[c].
    let mut indet = Vec::new();
    if pb + pc >= 1 {
        if let Ok(right) = cohomology(complex, &group.canonical(&wb.add(&wc))) {
            for h in &right.degrees[pb + pc - 1].representatives {
                if let Some(v) = data.project(&a.wedge(h)) {
                    indet.push(v);
                }
            }
        }
    }
    if pa + pb >= 1 {
        if let Ok(left) = cohomology(complex, &group.canonical(&wa.add(&wb))) {
            for h in &left.degrees[pa + pb - 1].representatives {
                if let Some(v) = data.project(&h.wedge(c)) {
                    indet.push(v);
                }
            }
        }
    }
    let indet_basis = span_basis(&indet, data.dim);
    let vanishes = membership(&coefficients, &indet_basis).is_some();

    Ok(MasseyResult {
        class: w_total,
        degree,
        representative: m,
        coefficients,
        indeterminacy_dim: indet_basis.len(),
        vanishes,
    })
}

#[derive(Debug, Clone)]
pub struct MuSymmetry {
    pub symmetric: bool,
    /// A non-unitary class with nonzero first cohomology, when asymmetric.
    pub witness: Option<(WeightClass, usize)>,
}

/// Rescaling symmetry of all twisted Betti numbers: holds iff every
/// generator weight is unitary. When it fails, a degree-1 witness class
/// with nonzero cohomology is produced (generator order decides ties).
pub fn mu_symmetry(complex: &InvariantComplex) -> MuSymmetry {
    let group = complex.group();
    let symmetric = complex.weights().iter().all(|w| group.is_unitary(w));
    if symmetric {
        return MuSymmetry {
            symmetric: true,
            witness: None,
        };
    }
    let mut seen = BTreeSet::new();
    for w in complex.weights() {
        if group.is_unitary(w) || !seen.insert(w.clone()) {
            continue;
        }
        if let Ok(cc) = cohomology(complex, w) {
            if cc.degrees[1].dim > 0 {
                return MuSymmetry {
                    symmetric: false,
                    witness: Some((w.clone(), cc.degrees[1].dim)),
                };
            }
        }
    }
    MuSymmetry {
        symmetric: false,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::InvariantComplex;

    fn build(spec: crate::model::ModelSpec) -> InvariantComplex {
        InvariantComplex::build(spec).unwrap()
    }

    #[test]
    fn torus_cohomology() {
        let c = build(fixtures::torus());
        let cc = cohomology(&c, &WeightClass(vec![])).unwrap();
        assert_eq!(cc.dims(), vec![1, 2, 1]);
    }

    #[test]
    fn heisenberg_betti() {
        let c = build(fixtures::heisenberg());
        let cc = cohomology(&c, &WeightClass(vec![])).unwrap();
        assert_eq!(cc.dims(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn sec8_class_plus_one() {
        let c = build(fixtures::sec8());
        let cc = cohomology(&c, &WeightClass(vec![1])).unwrap();
        assert_eq!(cc.dims(), vec![0, 2, 4, 4, 4, 2, 0]);
        assert_eq!(cc.total_dim(), 16);
    }

    #[test]
    fn class_outside_k_rejected() {
        let c = build(fixtures::sec8());
        let err = cohomology(&c, &WeightClass(vec![7])).unwrap_err();
        assert!(matches!(err, EngineError::ClassOutsideK { .. }));
    }

    #[test]
    fn jump_loci_examples() {
        let torus = build(fixtures::torus());
        let j = jump_loci(&torus);
        assert_eq!(j.all.len(), 1);

        let sec8 = build(fixtures::sec8());
        let j = jump_loci(&sec8);
        let expected: BTreeSet<WeightClass> = (-2..=2).map(|k| WeightClass(vec![k])).collect();
        assert_eq!(j.all, expected);

        let heis = build(fixtures::heisenberg());
        let j = jump_loci(&heis);
        assert_eq!(j.all.len(), 1);
    }

    #[test]
    fn cup_examples() {
        let torus = build(fixtures::torus());
        // [g1] ∪ [g2] generates H².
        let (w, coeffs) = cup(&torus, &Form::generator(0), &Form::generator(1)).unwrap();
        assert_eq!(w, WeightClass(vec![]));
        assert_eq!(coeffs.len(), 1);
        assert!(!coeffs[0].is_zero());
        // unit cup x = x
        let unit = Form::unit();
        let (_, coeffs) = cup(&torus, &unit, &Form::generator(0)).unwrap();
        assert_eq!(coeffs.iter().filter(|c| !c.is_zero()).count(), 1);

        let heis = build(fixtures::heisenberg());
        let (_, coeffs) = cup(&heis, &Form::generator(0), &Form::generator(1)).unwrap();
        assert!(coeffs.iter().all(Scalar::is_zero), "g1∧g2 is exact");
    }

    #[test]
    fn lefschetz_torus_passes_kt_fails() {
        let torus = build(fixtures::torus());
        let omega = torus.spec.forms["omega"].clone();
        let rows = lefschetz_test(&torus, &omega, &WeightClass(vec![])).unwrap();
        assert!(rows.iter().all(|r| r.bijective));

        let kt = build(fixtures::kodaira_thurston());
        let omega = kt.spec.forms["omega"].clone();
        let rows = lefschetz_test(&kt, &omega, &WeightClass(vec![])).unwrap();
        assert!(rows[0].bijective, "i=0 pairs constants with the volume");
        assert!(!rows[1].bijective, "[ω]∧[e1] is exact");
    }

    #[test]
    fn lefschetz_rejects_bad_omega() {
        let torus = build(fixtures::torus());
        let err = lefschetz_test(&torus, &Form::generator(0), &WeightClass(vec![])).unwrap_err();
        assert!(matches!(err, EngineError::NotSymplectic { .. }));
        let kt = build(fixtures::kodaira_thurston());
        // degenerate closed 2-form: (e1∧e2)^2 = 0
        let degenerate = Form::generator(0).wedge(&Form::generator(1));
        let err = lefschetz_test(&kt, &degenerate, &WeightClass(vec![])).unwrap_err();
        assert!(matches!(err, EngineError::NotSymplectic { .. }));
        // e3∧e4 is not closed: d(e3∧e4) = e3∧e1∧e2 ≠ 0
        let nonclosed = Form::generator(2).wedge(&Form::generator(3));
        let err = lefschetz_test(&kt, &nonclosed, &WeightClass(vec![])).unwrap_err();
        assert!(matches!(err, EngineError::NotClosed { .. }));
    }

    #[test]
    fn hyper_lefschetz_agreement() {
        let torus = build(fixtures::torus());
        let omega = torus.spec.forms["omega"].clone();
        let hl = hyper_lefschetz(&torus, &omega).unwrap();
        assert!(hl.all_pass && hl.hull_abelian);

        let kt = build(fixtures::kodaira_thurston());
        let omega = kt.spec.forms["omega"].clone();
        let hl = hyper_lefschetz(&kt, &omega).unwrap();
        assert!(!hl.all_pass && !hl.hull_abelian);
    }

    #[test]
    fn massey_heisenberg_nonvanishing() {
        let heis = build(fixtures::heisenberg());
        let g1 = Form::generator(0);
        let g2 = Form::generator(1);
        let m = massey_triple(&heis, &g1, &g1, &g2, PivotOrder::Forward).unwrap();
        assert!(!m.vanishes);
        assert_eq!(m.indeterminacy_dim, 0);
        // x = 0, D y = g1∧g2 gives y = −g3; representative −g1∧g3.
        let expected = Form::generator(0).wedge(&Form::generator(2)).neg();
        assert_eq!(m.representative, expected);

        // The primitive choice must not matter modulo indeterminacy.
        let m2 = massey_triple(&heis, &g1, &g1, &g2, PivotOrder::Reverse).unwrap();
        assert_eq!(m.vanishes, m2.vanishes);
        assert_eq!(m.coefficients, m2.coefficients);
    }

    #[test]
    fn massey_precondition_enforced() {
        let torus = build(fixtures::torus());
        // [g1]∪[g2] ≠ 0 on the torus.
        let err = massey_triple(
            &torus,
            &Form::generator(0),
            &Form::generator(1),
            &Form::generator(0),
            PivotOrder::Forward,
        )
        .unwrap_err();
        assert!(matches!(err, EngineError::CupNonzero { .. }));
    }

    #[test]
    fn massey_zero_and_torus_vanish() {
        let heis = build(fixtures::heisenberg());
        let m = massey_triple(
            &heis,
            &Form::zero(),
            &Form::generator(0),
            &Form::generator(1),
            PivotOrder::Forward,
        )
        .unwrap();
        assert!(m.vanishes);

        // With D = 0 every defined triple has zero primitives, so the
        // product vanishes outright.
        let torus = build(fixtures::torus());
        let m = massey_triple(
            &torus,
            &Form::generator(0),
            &Form::generator(0),
            &Form::generator(0),
            PivotOrder::Forward,
        )
        .unwrap();
        assert!(m.vanishes);
    }

    #[test]
    fn mu_symmetry_examples() {
        let torus = build(fixtures::torus());
        assert!(mu_symmetry(&torus).symmetric);

        let heis = build(fixtures::heisenberg());
        assert!(mu_symmetry(&heis).symmetric);

        let sec8 = build(fixtures::sec8());
        let mu = mu_symmetry(&sec8);
        assert!(!mu.symmetric);
        assert_eq!(mu.witness, Some((WeightClass(vec![1]), 2)));
    }

    #[test]
    fn euler_characteristic_identity() {
        for spec in [
            fixtures::torus(),
            fixtures::heisenberg(),
            fixtures::kodaira_thurston(),
            fixtures::sec8(),
            fixtures::iwasawa(),
        ] {
            let c = build(spec);
            for w in c.group().enumerate_k_all(c.weights()) {
                let cc = cohomology(&c, &w).unwrap();
                let mut euler_h = 0i64;
                let mut euler_block = 0i64;
                for (p, d) in cc.degrees.iter().enumerate() {
                    let sign = if p % 2 == 0 { 1 } else { -1 };
                    euler_h += sign * d.dim as i64;
                    euler_block += sign * d.basis.len() as i64;
                }
                assert_eq!(euler_h, euler_block, "class {:?}", w.0);
            }
        }
    }

    #[test]
    fn poincare_pairing_on_abelian_hull() {
        let c = build(fixtures::sec8());
        let n = c.n();
        for w in c.group().enumerate_k_all(c.weights()) {
            let cc = cohomology(&c, &w).unwrap();
            let opp = cohomology(&c, &w.neg()).unwrap();
            for p in 0..=n {
                assert_eq!(cc.degrees[p].dim, opp.degrees[n - p].dim);
            }
        }
    }

    #[test]
    fn jump_locus_contained_in_k() {
        for spec in [fixtures::sec8(), fixtures::heisenberg()] {
            let c = build(spec);
            let j = jump_loci(&c);
            for (p, classes) in j.per_degree.iter().enumerate() {
                let kp: BTreeSet<WeightClass> =
                    c.group().enumerate_k(c.weights(), p).into_iter().collect();
                assert!(classes.is_subset(&kp), "degree {}", p);
            }
        }
    }
}
