//! The admissibility classifier and its report: orchestrates the structural
//! criteria, the cohomology table, jump loci, optional Lefschetz and Massey
//! evidence, and renders human- or machine-readable output.
//!
//! Every verdict line carries a stable justification label naming the
//! criterion that decided it.

use crate::cohomology::{
    cohomology, hyper_lefschetz, jump_loci_from_table, massey_triple, mu_symmetry,
    CohomologyTable, EngineError, HyperLefschetz, JumpLocus,
};
use crate::form::Form;
use crate::linalg::PivotOrder;
use crate::model::{InvariantComplex, ModelError, ModelSpec};
use crate::weight::WeightClass;

/// Stable justification labels for verdict lines.
pub mod labels {
    pub const HULL: &str = "abelian-unipotent-hull-criterion";
    pub const UNITARY: &str = "unitary-weights-criterion";
    pub const MU: &str = "rescaling-symmetry<=>unitary-weights";
    pub const B1: &str = "even-first-betti-corroboration";
    pub const HYPER_FORMAL: &str = "hyper-formality<=>abelian-hull";
    pub const HYPER_LEFSCHETZ: &str = "hyper-hard-lefschetz<=>abelian-hull";
    pub const ADMISSIBLE: &str = "kaehler<=>unitary-semisimple-splitting";
}

#[derive(Debug)]
pub enum ClassifyError {
    Invalid(ModelError),
    Engine(EngineError),
}

impl std::fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassifyError::Invalid(e) => write!(f, "{}", e),
            ClassifyError::Engine(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ClassifyError {}

impl From<ModelError> for ClassifyError {
    fn from(e: ModelError) -> Self {
        ClassifyError::Invalid(e)
    }
}

impl From<EngineError> for ClassifyError {
    fn from(e: EngineError) -> Self {
        ClassifyError::Engine(e)
    }
}

#[derive(Debug, Clone)]
pub struct MasseyWitness {
    pub inputs: [String; 3],
    pub class: WeightClass,
    pub degree: usize,
    pub representative: String,
}

/// The classifier's findings for one model.
#[derive(Debug)]
pub struct Report {
    pub name: String,
    pub dimension: usize,
    pub hull_abelian: bool,
    pub lower_central_series: Vec<usize>,
    pub weights_unitary: bool,
    pub mu_symmetric: bool,
    pub mu_witness: Option<(WeightClass, usize)>,
    pub b1: usize,
    pub hyper_formal: bool,
    pub massey_witness: Option<MasseyWitness>,
    /// None when no symplectic form was supplied (not evaluated).
    pub hyper_lefschetz: Option<(String, HyperLefschetz)>,
    pub jump: JumpLocus,
    /// Per class (canonical order): dimensions by degree.
    pub table: Vec<(WeightClass, Vec<usize>)>,
    /// Pretty 1-forms per jump-locus class when symbol forms are declared.
    pub class_forms: Vec<(WeightClass, Option<String>)>,
    pub admissible: bool,
    pub reasons: Vec<&'static str>,
    pub justification: Option<String>,
}

/// Hunt for a nonvanishing triple Massey product among closed degree-1
/// generators. Deterministic: first hit in lexicographic index order.
fn find_massey_witness(complex: &InvariantComplex) -> Option<MasseyWitness> {
    let n = complex.n();
    let labels = complex.labels();
    let closed: Vec<usize> = (0..n).filter(|&i| complex.dgen(i).is_zero()).collect();
    for &a in &closed {
        for &b in &closed {
            for &c in &closed {
                let fa = Form::generator(a);
                let fb = Form::generator(b);
                let fc = Form::generator(c);
                let Ok(m) = massey_triple(complex, &fa, &fb, &fc, PivotOrder::Forward) else {
                    continue;
                };
                if !m.vanishes {
                    return Some(MasseyWitness {
                        inputs: [
                            labels[a].clone(),
                            labels[b].clone(),
                            labels[c].clone(),
                        ],
                        class: m.class,
                        degree: m.degree,
                        representative: m.representative.render(&labels),
                    });
                }
            }
        }
    }
    None
}

/// Run the full classification. `spec` must be structurally parseable; math
/// validation failures surface as `ClassifyError::Invalid`.
pub fn classify(spec: ModelSpec) -> Result<Report, ClassifyError> {
    let complex = InvariantComplex::build(spec)?;
    let n = complex.n();
    let labels = complex.labels();

    let hull_abelian = complex.hull_is_abelian();
    let lcs = complex.lower_central_series();
    let group = complex.group();
    let weights_unitary = complex.weights().iter().all(|w| group.is_unitary(w));
    let mu = mu_symmetry(&complex);

    let zero = WeightClass::zero(group.rank);
    let b1 = cohomology(&complex, &zero)?.degrees[1].dim;

    // Hyper-formality is decided by the structural criterion; a Massey
    // witness is attached when the verdict is negative and one exists at
    // degree one.
    let hyper_formal = hull_abelian;
    let massey_witness = if hull_abelian {
        None
    } else {
        find_massey_witness(&complex)
    };

    let hl = match complex.spec.symplectic.first() {
        Some(name) => {
            let omega = complex
                .spec
                .forms
                .get(name)
                .cloned()
                .ok_or_else(|| EngineError::WrongShape {
                    what: format!("symplectic form '{}' not found", name),
                })?;
            Some((name.clone(), hyper_lefschetz(&complex, &omega)?))
        }
        None => None,
    };

    let table_full = CohomologyTable::compute(&complex);
    let jump = jump_loci_from_table(&complex, &table_full);
    let table: Vec<(WeightClass, Vec<usize>)> = table_full
        .classes
        .iter()
        .map(|cc| (cc.class.clone(), cc.dims()))
        .collect();
    let class_forms: Vec<(WeightClass, Option<String>)> = jump
        .all
        .iter()
        .map(|w| {
            let rendered = complex.class_one_form(w).map(|f| f.render(&labels));
            (w.clone(), rendered)
        })
        .collect();

    let mut reasons = Vec::new();
    if n % 2 != 0 {
        reasons.push("odd-dimension");
    }
    if !hull_abelian {
        reasons.push("non-abelian-hull");
    }
    if !weights_unitary {
        reasons.push("non-unitary-weights");
    }
    let admissible = reasons.is_empty();

    // Consequence assertions: a positive verdict must come with rescaling
    // symmetry and even first Betti number, and the two hyper verdicts must
    // match the structural criterion.
    if admissible {
        if !mu.symmetric {
            return Err(EngineError::Internal {
                what: "admissible verdict with broken rescaling symmetry".to_string(),
            }
            .into());
        }
        if b1 % 2 != 0 {
            return Err(EngineError::Internal {
                what: format!("admissible verdict with odd first Betti number {}", b1),
            }
            .into());
        }
    }
    if let Some((_, hl)) = &hl {
        debug_assert_eq!(hl.all_pass, hull_abelian);
    }

    Ok(Report {
        name: complex.spec.name.clone(),
        dimension: n,
        hull_abelian,
        lower_central_series: lcs,
        weights_unitary,
        mu_symmetric: mu.symmetric,
        mu_witness: mu.witness,
        b1,
        hyper_formal,
        massey_witness,
        hyper_lefschetz: hl,
        jump,
        table,
        class_forms,
        admissible,
        reasons,
        justification: complex.spec.dolbeault_justification.clone(),
    })
}

fn class_token(w: &WeightClass) -> String {
    if w.0.is_empty() {
        "0".to_string()
    } else {
        w.0.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn dims_token(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Stable machine rendering: one `solvcoh-report v1` document, key-value
/// lines, deterministic order, byte-identical across runs.
pub fn render_machine(r: &Report) -> String {
    let mut out = String::new();
    out.push_str("solvcoh-report v1\n");
    out.push_str(&format!("fixture {}\n", r.name));
    out.push_str(&format!("dimension {}\n", r.dimension));
    out.push_str(&format!(
        "verdict hull_abelian {} {}\n",
        r.hull_abelian,
        labels::HULL
    ));
    out.push_str(&format!(
        "verdict weights_unitary {} {}\n",
        r.weights_unitary,
        labels::UNITARY
    ));
    out.push_str(&format!(
        "verdict mu_symmetry {} {}\n",
        r.mu_symmetric,
        labels::MU
    ));
    out.push_str(&format!(
        "verdict hyper_formal {} {}\n",
        r.hyper_formal,
        labels::HYPER_FORMAL
    ));
    match &r.hyper_lefschetz {
        Some((name, hl)) => out.push_str(&format!(
            "verdict hyper_hard_lefschetz {} {} omega={}\n",
            hl.all_pass,
            labels::HYPER_LEFSCHETZ,
            name
        )),
        None => out.push_str(&format!(
            "verdict hyper_hard_lefschetz not-evaluated {} reason=no-symplectic-form\n",
            labels::HYPER_LEFSCHETZ
        )),
    }
    out.push_str(&format!(
        "verdict kaehler_admissible {} {}\n",
        r.admissible,
        labels::ADMISSIBLE
    ));
    out.push_str(&format!(
        "b1 {} {}  {}\n",
        r.b1,
        if r.b1 % 2 == 0 { "even" } else { "odd" },
        labels::B1
    ));
    if !r.reasons.is_empty() {
        out.push_str(&format!("reasons [{}]\n", r.reasons.join(",")));
    }
    if let Some((w, dim)) = &r.mu_witness {
        out.push_str(&format!(
            "mu_witness class {} dimH1 {}\n",
            class_token(w),
            dim
        ));
    }
    if let Some(mw) = &r.massey_witness {
        out.push_str(&format!(
            "massey_witness inputs {},{},{} class {} degree {} rep {}\n",
            mw.inputs[0],
            mw.inputs[1],
            mw.inputs[2],
            class_token(&mw.class),
            mw.degree,
            mw.representative
        ));
    }
    out.push_str(&format!("lcs {}\n", dims_token(&r.lower_central_series)));
    out.push_str(&format!("jumploci count {}\n", r.jump.all.len()));
    for (w, form) in &r.class_forms {
        match form {
            Some(f) => out.push_str(&format!("jumplocus class {} form {}\n", class_token(w), f)),
            None => out.push_str(&format!("jumplocus class {}\n", class_token(w))),
        }
    }
    for (w, dims) in &r.table {
        out.push_str(&format!(
            "cohomology class {} dims {}\n",
            class_token(w),
            dims_token(dims)
        ));
    }
    if let Some((_, hl)) = &r.hyper_lefschetz {
        for (w, rows) in &hl.per_class {
            for row in rows {
                out.push_str(&format!(
                    "lefschetz class {} i {} {}x{} {}\n",
                    class_token(w),
                    row.i,
                    row.source_dim,
                    row.target_dim,
                    if row.bijective { "iso" } else { "fail" }
                ));
            }
        }
    }
    if let Some(j) = &r.justification {
        out.push_str(&format!("dolbeault_model_justification {}\n", j));
    }
    out
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    out.push_str(&format!("model: {} ({} generators)\n", r.name, r.dimension));
    out.push_str(&format!(
        "  abelian unipotent hull     {:>4}   [{}]\n",
        yes_no(r.hull_abelian),
        labels::HULL
    ));
    out.push_str(&format!(
        "  all weights unitary        {:>4}   [{}]\n",
        yes_no(r.weights_unitary),
        labels::UNITARY
    ));
    out.push_str(&format!(
        "  rescaling symmetry         {:>4}   [{}]\n",
        yes_no(r.mu_symmetric),
        labels::MU
    ));
    out.push_str(&format!(
        "  hyper-formal               {:>4}   [{}]\n",
        yes_no(r.hyper_formal),
        labels::HYPER_FORMAL
    ));
    match &r.hyper_lefschetz {
        Some((name, hl)) => out.push_str(&format!(
            "  hyper-hard-Lefschetz ({})  {:>4}   [{}]\n",
            name,
            yes_no(hl.all_pass),
            labels::HYPER_LEFSCHETZ
        )),
        None => out.push_str(&format!(
            "  hyper-hard-Lefschetz       not evaluated (no symplectic form)   [{}]\n",
            labels::HYPER_LEFSCHETZ
        )),
    }
    out.push_str(&format!(
        "  first Betti number         {:>4}   ({})   [{}]\n",
        r.b1,
        if r.b1 % 2 == 0 { "even" } else { "odd" },
        labels::B1
    ));
    out.push_str(&format!(
        "\nverdict: {}   [{}]\n",
        if r.admissible {
            "Kähler-admissible".to_string()
        } else {
            format!("NOT Kähler-admissible ({})", r.reasons.join(", "))
        },
        labels::ADMISSIBLE
    ));
    if let Some((w, dim)) = &r.mu_witness {
        out.push_str(&format!(
            "  witness: non-unitary class {} with dim H^1 = {}\n",
            class_token(w),
            dim
        ));
    }
    if let Some(mw) = &r.massey_witness {
        out.push_str(&format!(
            "  witness: Massey product <[{}],[{}],[{}]> = [{}] nonzero in degree {}\n",
            mw.inputs[0], mw.inputs[1], mw.inputs[2], mw.representative, mw.degree
        ));
    }
    out.push_str(&format!("\njump locus ({} classes):\n", r.jump.all.len()));
    for (w, form) in &r.class_forms {
        match form {
            Some(f) => out.push_str(&format!("  E[{}]  twist  {}\n", class_token(w), f)),
            None => out.push_str(&format!("  E[{}]\n", class_token(w))),
        }
    }
    out.push_str("\ncohomology dimensions (class: H^0 .. H^n):\n");
    for (w, dims) in &r.table {
        out.push_str(&format!("  {:>8}:  {}\n", class_token(w), dims_token(dims)));
    }
    if let Some((name, hl)) = &r.hyper_lefschetz {
        out.push_str(&format!("\nLefschetz grid for {} (class, i, verdict):\n", name));
        for (w, rows) in &hl.per_class {
            for row in rows {
                out.push_str(&format!(
                    "  class {:>6}  i={}  {}x{}  {}\n",
                    class_token(w),
                    row.i,
                    row.source_dim,
                    row.target_dim,
                    if row.bijective { "iso" } else { "FAIL" }
                ));
            }
        }
    }
    if let Some(j) = &r.justification {
        out.push_str(&format!(
            "\nDolbeault results transfer to the manifold under: {}\n",
            j
        ));
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_is_admissible() {
        let r = classify(fixtures::torus()).unwrap();
        assert!(r.admissible);
        assert!(r.hull_abelian && r.weights_unitary && r.mu_symmetric);
        assert_eq!(r.b1, 2);
        assert!(r.hyper_lefschetz.as_ref().unwrap().1.all_pass);
        assert!(r.massey_witness.is_none());
    }

    #[test]
    fn sec8_is_not_admissible() {
        let r = classify(fixtures::sec8()).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.reasons, vec!["non-unitary-weights"]);
        assert!(r.hull_abelian);
        assert!(r.hyper_formal);
        assert!(r.hyper_lefschetz.as_ref().unwrap().1.all_pass);
        assert!(!r.mu_symmetric);
        assert_eq!(r.mu_witness, Some((WeightClass(vec![1]), 2)));
        assert_eq!(r.b1, 2);
        assert_eq!(r.jump.all.len(), 5);
    }

    #[test]
    fn heisenberg_not_admissible_with_massey_witness() {
        let r = classify(fixtures::heisenberg()).unwrap();
        assert!(!r.admissible);
        assert!(r.reasons.contains(&"non-abelian-hull"));
        assert!(r.reasons.contains(&"odd-dimension"));
        assert!(!r.hyper_formal);
        let mw = r.massey_witness.expect("non-formality witness");
        assert_eq!(mw.inputs, ["x1".to_string(), "x1".into(), "x2".into()]);
        assert!(r.hyper_lefschetz.is_none());
    }

    #[test]
    fn kodaira_thurston_fails_lefschetz() {
        let r = classify(fixtures::kodaira_thurston()).unwrap();
        assert!(!r.admissible);
        assert_eq!(r.reasons, vec!["non-abelian-hull"]);
        let (_, hl) = r.hyper_lefschetz.as_ref().unwrap();
        assert!(!hl.all_pass);
        assert!(r.massey_witness.is_some());
    }

    #[test]
    fn machine_rendering_is_deterministic() {
        let a = render_machine(&classify(fixtures::sec8()).unwrap());
        let b = render_machine(&classify(fixtures::sec8()).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("solvcoh-report v1\n"));
        assert!(a.contains("verdict kaehler_admissible false"));
        assert!(a.contains("reasons [non-unitary-weights]"));
    }

    #[test]
    fn text_rendering_mentions_witnesses() {
        let r = classify(fixtures::sec8()).unwrap();
        let text = render_text(&r);
        assert!(text.contains("NOT Kähler-admissible"));
        assert!(text.contains("non-unitary class 1"));
        assert!(text.contains("jump locus (5 classes)"));
        // pretty 1-form rendered through the symbol form
        assert!(text.contains("dz1"), "{}", text);
    }
}
