//! Command-line interface: validates fixtures and runs the cohomology,
//! jump-locus, Lefschetz, Massey, Dolbeault, spectral-sequence, Hodge and
//! classification operations on them.
//!
//! Exit codes: 0 = computed (verdict positive where applicable),
//! 1 = computed with a negative verdict (classify, shd, hyper-shd,
//! lefschetz; for massey, a nonvanishing product), 2 = input error.

use clap::{Parser, Subcommand, ValueEnum};
use solvcoh::bigraded::{
    bott_chern, dolbeault_cohomology, hyper_shd_test, shd_test, split_bigrading, BigradedError,
    DeRhamRoute,
};
use solvcoh::cohomology::{cohomology, jump_loci, lefschetz_test, massey_triple, EngineError};
use solvcoh::fixture;
use solvcoh::linalg::PivotOrder;
use solvcoh::model::{InvariantComplex, ModelError};
use solvcoh::report::{classify, render_machine, render_text, ClassifyError};
use solvcoh::scalar::parse_real_scalar;
use solvcoh::spectral::spectral_sequence;
use solvcoh::weight::WeightClass;
use solvcoh::Form;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(
    name = "solvcoh",
    version,
    about = "Exact twisted cohomology, jump loci and Kähler-admissibility diagnostics for solvmanifold models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fixture file against the schema and the model axioms.
    Validate {
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Twisted cohomology of one weight class.
    Cohomology {
        fixture: PathBuf,
        /// Class vector, comma-separated integers (e.g. "1" or "1,0").
        #[arg(long)]
        class: String,
        /// Restrict the report to a single degree.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All classes with nonzero twisted cohomology.
    Jumploci {
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hard-Lefschetz test over every jump-locus class. Exit 1 on failure.
    Lefschetz {
        fixture: PathBuf,
        /// Name of a 2-form from the fixture's forms section.
        #[arg(long)]
        omega: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Triple Massey product of three named closed forms. Exit 1 when the
    /// product does not vanish (a non-formality witness).
    Massey {
        fixture: PathBuf,
        /// Three form names, comma-separated.
        #[arg(long)]
        reps: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Twisted Dolbeault cohomology of the bigraded model.
    Dolbeault {
        fixture: PathBuf,
        /// Holomorphic 1-form twist (form name).
        #[arg(long)]
        theta: Option<String>,
        /// (0,1) flat twist (form name).
        #[arg(long)]
        phi01: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Spectral sequence pages of the double complex (∂̄+B, t·θ).
    Spectral {
        fixture: PathBuf,
        #[arg(long)]
        theta: String,
        /// Rescaling of θ, a nonzero rational.
        #[arg(long, default_value = "1")]
        t: String,
        /// Number of pages to print.
        #[arg(long, default_value_t = 4)]
        pages: usize,
        /// (0,1) flat twist (form name).
        #[arg(long)]
        phi01: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Strong-Hodge-decomposition test. Exit 1 on failure.
    Shd {
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Hyper-strong-Hodge-decomposition test for one twist pair.
    /// Exit 1 on failure.
    #[command(name = "hyper-shd")]
    HyperShd {
        fixture: PathBuf,
        /// Holomorphic 1-form θ (form name; omitted = 0).
        #[arg(long)]
        theta: Option<String>,
        /// Holomorphic 1-form ϑ (form name; omitted = 0).
        #[arg(long)]
        vartheta: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Kähler-admissibility classification. Exit 1 when not admissible.
    Classify {
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bott–Chern cohomology (optionally twisted).
    BottChern {
        fixture: PathBuf,
        /// Twist on ∂ (form name).
        #[arg(long)]
        a: Option<String>,
        /// Twist on ∂̄ (form name).
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("SOLVCOH_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

struct InputError(String);

impl From<EngineError> for InputError {
    fn from(e: EngineError) -> Self {
        InputError(e.to_string())
    }
}

impl From<BigradedError> for InputError {
    fn from(e: BigradedError) -> Self {
        InputError(e.to_string())
    }
}

impl From<ModelError> for InputError {
    fn from(e: ModelError) -> Self {
        InputError(e.to_string())
    }
}

impl From<ClassifyError> for InputError {
    fn from(e: ClassifyError) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<solvcoh::ModelSpec, InputError> {
    fixture::parse_file(path).map_err(|errs| {
        let mut msg = String::new();
        for e in errs {
            msg.push_str(&format!("{}\n", e));
        }
        InputError(msg)
    })
}

fn build(path: &PathBuf) -> Result<InvariantComplex, InputError> {
    let spec = load(path)?;
    Ok(InvariantComplex::build(spec)?)
}

fn parse_class(s: &str, rank: usize) -> Result<WeightClass, InputError> {
    let v: Result<Vec<i64>, _> = if s.trim().is_empty() || s.trim() == "0" && rank == 0 {
        Ok(Vec::new())
    } else {
        s.split(',').map(|t| t.trim().parse::<i64>()).collect()
    };
    let v = v.map_err(|_| InputError(format!("bad class vector '{}'", s)))?;
    if v.len() != rank {
        return Err(InputError(format!(
            "class vector has {} entries, weight rank is {}",
            v.len(),
            rank
        )));
    }
    Ok(WeightClass(v))
}

fn named_form(complex: &InvariantComplex, name: &str) -> Result<Form, InputError> {
    complex
        .spec
        .forms
        .get(name)
        .cloned()
        .ok_or_else(|| InputError(format!("no form named '{}' in the fixture", name)))
}

fn optional_form(complex: &InvariantComplex, name: &Option<String>) -> Result<Form, InputError> {
    match name {
        Some(n) => named_form(complex, n),
        None => Ok(Form::zero()),
    }
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

fn dims_csv(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: Cli) -> Result<u8, InputError> {
    match cli.command {
        Command::Validate { fixture, format } => {
            let spec = load(&fixture)?;
            let report = spec.validate();
            if report.is_valid() {
                match format {
                    Format::Text => println!("valid"),
                    Format::Machine => {
                        println!("solvcoh-report v1");
                        println!("validate ok");
                    }
                }
                Ok(0)
            } else {
                Err(InputError(report.to_string()))
            }
        }
        Command::Cohomology {
            fixture,
            class,
            degree,
            format,
        } => {
            let complex = build(&fixture)?;
            let w = parse_class(&class, complex.group().rank)?;
            let cc = cohomology(&complex, &w)?;
            let labels = complex.labels();
            let degrees: Vec<usize> = match degree {
                Some(p) if p < cc.degrees.len() => vec![p],
                Some(p) => {
                    return Err(InputError(format!(
                        "degree {} exceeds the model dimension {}",
                        p,
                        complex.n()
                    )))
                }
                None => (0..cc.degrees.len()).collect(),
            };
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!("class {}", class_token(&cc.class));
                    for &p in &degrees {
                        println!("dim {} {}", p, cc.degrees[p].dim);
                        for rep in &cc.degrees[p].representatives {
                            println!("rep {} {}", p, rep.render(&labels));
                        }
                    }
                }
                Format::Text => {
                    println!("class {}:", class_token(&cc.class));
                    for &p in &degrees {
                        println!("  H^{} dim {}", p, cc.degrees[p].dim);
                        for rep in &cc.degrees[p].representatives {
                            println!("    [{}]", rep.render(&labels));
                        }
                    }
                    println!("  total {}", cc.total_dim());
                }
            }
            Ok(0)
        }
        Command::Jumploci { fixture, format } => {
            let complex = build(&fixture)?;
            let labels = complex.labels();
            let j = jump_loci(&complex);
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!("jumploci count {}", j.all.len());
                    for w in &j.all {
                        match complex.class_one_form(w) {
                            Some(f) => println!(
                                "jumplocus class {} form {}",
                                class_token(w),
                                f.render(&labels)
                            ),
                            None => println!("jumplocus class {}", class_token(w)),
                        }
                    }
                    for (p, classes) in j.per_degree.iter().enumerate() {
                        if !classes.is_empty() {
                            let toks: Vec<String> = classes.iter().map(class_token).collect();
                            println!("degree {} classes {}", p, toks.join(" "));
                        }
                    }
                }
                Format::Text => {
                    println!("jump locus: {} classes", j.all.len());
                    for w in &j.all {
                        match complex.class_one_form(w) {
                            Some(f) => {
                                println!("  E[{}]  twist  {}", class_token(w), f.render(&labels))
                            }
                            None => println!("  E[{}]", class_token(w)),
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Lefschetz {
            fixture,
            omega,
            format,
        } => {
            let complex = build(&fixture)?;
            let omega_form = named_form(&complex, &omega)?;
            let j = jump_loci(&complex);
            let mut all_pass = true;
            let mut lines = Vec::new();
            for w in &j.all {
                let rows = lefschetz_test(&complex, &omega_form, w)?;
                for row in rows {
                    all_pass &= row.bijective;
                    lines.push((w.clone(), row));
                }
            }
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!("lefschetz omega {} pass {}", omega, all_pass);
                    for (w, row) in &lines {
                        println!(
                            "lefschetz class {} i {} {}x{} {}",
                            class_token(w),
                            row.i,
                            row.source_dim,
                            row.target_dim,
                            if row.bijective { "iso" } else { "fail" }
                        );
                    }
                }
                Format::Text => {
                    println!(
                        "hard Lefschetz with {}: {}",
                        omega,
                        if all_pass { "PASS" } else { "FAIL" }
                    );
                    for (w, row) in &lines {
                        println!(
                            "  class {:>6}  i={}  {}x{}  {}",
                            class_token(w),
                            row.i,
                            row.source_dim,
                            row.target_dim,
                            if row.bijective { "iso" } else { "FAIL" }
                        );
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Massey {
            fixture,
            reps,
            format,
        } => {
            let complex = build(&fixture)?;
            let labels = complex.labels();
            let names: Vec<&str> = reps.split(',').map(str::trim).collect();
            if names.len() != 3 {
                return Err(InputError("--reps takes three form names".to_string()));
            }
            let a = named_form(&complex, names[0])?;
            let b = named_form(&complex, names[1])?;
            let c = named_form(&complex, names[2])?;
            let m = massey_triple(&complex, &a, &b, &c, PivotOrder::Forward)?;
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!(
                        "massey vanishes {} class {} degree {} indeterminacy {}",
                        m.vanishes,
                        class_token(&m.class),
                        m.degree,
                        m.indeterminacy_dim
                    );
                    println!("massey rep {}", m.representative.render(&labels));
                }
                Format::Text => {
                    println!(
                        "Massey product <[{}],[{}],[{}]>: {}",
                        names[0],
                        names[1],
                        names[2],
                        if m.vanishes {
                            "vanishes (mod indeterminacy)".to_string()
                        } else {
                            format!(
                                "NONZERO, representative [{}] in degree {}",
                                m.representative.render(&labels),
                                m.degree
                            )
                        }
                    );
                    println!("  indeterminacy dimension {}", m.indeterminacy_dim);
                }
            }
            Ok(if m.vanishes { 0 } else { 1 })
        }
        Command::Dolbeault {
            fixture,
            theta,
            phi01,
            format,
        } => {
            let complex = build(&fixture)?;
            let big = split_bigrading(&complex)?;
            let theta_form = optional_form(&complex, &theta)?;
            let b_form = optional_form(&complex, &phi01)?;
            let d = dolbeault_cohomology(&big, &b_form, &theta_form)?;
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    for (k, dim) in d.per_total.iter().enumerate() {
                        println!("dolbeault total {} {}", k, dim);
                    }
                    if let Some(pq) = &d.per_pq {
                        for (&(p, q), &dim) in pq {
                            println!("dolbeault pq {} {} {}", p, q, dim);
                        }
                    }
                }
                Format::Text => {
                    println!("twisted Dolbeault dimensions by total degree:");
                    for (k, dim) in d.per_total.iter().enumerate() {
                        println!("  H^{}: {}", k, dim);
                    }
                    match &d.per_pq {
                        Some(pq) => {
                            println!("by bidegree:");
                            for (&(p, q), &dim) in pq {
                                println!("  h^({},{}) = {}", p, q, dim);
                            }
                        }
                        None => println!("(θ ≠ 0 breaks the bigrading; totals only)"),
                    }
                }
            }
            Ok(0)
        }
        Command::Spectral {
            fixture,
            theta,
            t,
            pages,
            phi01,
            format,
        } => {
            let complex = build(&fixture)?;
            let big = split_bigrading(&complex)?;
            let theta_form = named_form(&complex, &theta)?;
            let b_form = optional_form(&complex, &phi01)?;
            let t_scalar =
                parse_real_scalar(&t).ok_or_else(|| InputError(format!("bad rational '{}'", t)))?;
            let ss = spectral_sequence(&big, &b_form, &theta_form, &t_scalar, pages)?;
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    for page in &ss.pages {
                        for (&(p, q), &dim) in &page.dims {
                            println!("page {} {} {} {}", page.r, p, q, dim);
                        }
                    }
                    for (&(p, q), &dim) in &ss.e_infinity.dims {
                        println!("einf {} {} {}", p, q, dim);
                    }
                }
                Format::Text => {
                    for page in &ss.pages {
                        println!("E_{}:", page.r);
                        if page.dims.is_empty() {
                            println!("  0");
                        }
                        for (&(p, q), &dim) in &page.dims {
                            println!("  ({},{}) = {}", p, q, dim);
                        }
                    }
                    println!("E_inf:");
                    if ss.e_infinity.dims.is_empty() {
                        println!("  0");
                    }
                    for (&(p, q), &dim) in &ss.e_infinity.dims {
                        println!("  ({},{}) = {}", p, q, dim);
                    }
                }
            }
            Ok(0)
        }
        Command::Shd { fixture, format } => {
            let complex = build(&fixture)?;
            let big = split_bigrading(&complex)?;
            let r = shd_test(&big)?;
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!("shd pass {}", r.pass);
                    println!(
                        "shd dims bc {} dolbeault {} derham {}",
                        dims_csv(&r.bc_dims),
                        dims_csv(&r.dolbeault_dims),
                        dims_csv(&r.de_rham_dims)
                    );
                    if let Some(j) = &r.justification {
                        println!("dolbeault_model_justification {}", j);
                    }
                }
                Format::Text => {
                    println!(
                        "strong Hodge decomposition: {}",
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                    println!("  Bott-Chern dims {:?}", r.bc_dims);
                    println!("  Dolbeault  dims {:?}", r.dolbeault_dims);
                    println!("  de Rham    dims {:?}", r.de_rham_dims);
                    if let Some(j) = &r.justification {
                        println!("  transfers to the manifold under: {}", j);
                    }
                }
            }
            Ok(if r.pass { 0 } else { 1 })
        }
        Command::HyperShd {
            fixture,
            theta,
            vartheta,
            format,
        } => {
            let complex = build(&fixture)?;
            let big = split_bigrading(&complex)?;
            let theta_form = optional_form(&complex, &theta)?;
            let vartheta_form = optional_form(&complex, &vartheta)?;
            let r = hyper_shd_test(&big, &theta_form, &vartheta_form)?;
            let route = match &r.de_rham_route {
                DeRhamRoute::ClassBlock(w) => format!("class-block {}", class_token(w)),
                DeRhamRoute::Direct => "direct".to_string(),
            };
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    println!("hyper_shd pass {}", r.pass);
                    println!(
                        "hyper_shd dims bc {} dolbeault {} del {} derham {}",
                        dims_csv(&r.bc_dims),
                        dims_csv(&r.dolbeault_dims),
                        dims_csv(&r.del_dims),
                        dims_csv(&r.de_rham_dims)
                    );
                    println!("hyper_shd derham_route {}", route);
                    if let Some((k, dr, dolb)) = r.mismatch {
                        println!(
                            "hyper_shd mismatch degree {} derham {} dolbeault {}",
                            k, dr, dolb
                        );
                        println!(
                            "hyper_shd mismatch totals derham {} dolbeault {}",
                            r.de_rham_dims.iter().sum::<usize>(),
                            r.dolbeault_dims.iter().sum::<usize>()
                        );
                    }
                }
                Format::Text => {
                    println!(
                        "hyper strong Hodge decomposition: {}",
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                    println!("  Bott-Chern dims {:?}", r.bc_dims);
                    println!("  Dolbeault  dims {:?}", r.dolbeault_dims);
                    println!("  conj-del   dims {:?}", r.del_dims);
                    println!("  de Rham    dims {:?}  (via {})", r.de_rham_dims, route);
                    if let Some((k, dr, dolb)) = r.mismatch {
                        println!(
                            "  decisive mismatch in degree {}: de Rham {} vs Dolbeault {} (totals {} vs {})",
                            k,
                            dr,
                            dolb,
                            r.de_rham_dims.iter().sum::<usize>(),
                            r.dolbeault_dims.iter().sum::<usize>()
                        );
                    }
                }
            }
            Ok(if r.pass { 0 } else { 1 })
        }
        Command::Classify { fixture, format } => {
            let spec = load(&fixture)?;
            let report = classify(spec)?;
            match format {
                Format::Machine => print!("{}", render_machine(&report)),
                Format::Text => print!("{}", render_text(&report)),
            }
            Ok(if report.admissible { 0 } else { 1 })
        }
        Command::BottChern {
            fixture,
            a,
            b,
            format,
        } => {
            let complex = build(&fixture)?;
            let big = split_bigrading(&complex)?;
            let a_form = optional_form(&complex, &a)?;
            let b_form = optional_form(&complex, &b)?;
            let bc = bott_chern(&big, &a_form, &b_form)?;
            match format {
                Format::Machine => {
                    println!("solvcoh-report v1");
                    for (k, dim) in bc.dims().iter().enumerate() {
                        println!("bott_chern {} {}", k, dim);
                    }
                }
                Format::Text => {
                    println!("Bott-Chern dimensions by total degree:");
                    for (k, dim) in bc.dims().iter().enumerate() {
                        println!("  H^{}: {}", k, dim);
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}
