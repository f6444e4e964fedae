//! The `solvcoh-fixture v1` file format: a line-oriented description of a
//! model (weight group, generators, structure constants, named forms).
//!
//! The canonical serializer writes rationals in lowest terms, monomial
//! indices strictly increasing and sections in a fixed order, so
//! parse → serialize → parse is the identity on canonical files and golden
//! files stay stable.

use crate::form::Form;
use crate::model::{Bidegree, GeneratorSpec, ModelSpec, StructureConstant};
use crate::scalar::{parse_rational, rational_token, Scalar};
use crate::weight::{WeightClass, WeightGroup};
use num::rational::BigRational;
use num::Zero;
use std::collections::BTreeMap;

pub const FORMAT_HEADER: &str = "solvcoh-fixture v1";

/// A schema error with line provenance. Codes are stable strings reused by
/// the machine output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub code: &'static str,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: [{}] {}", self.line, self.code, self.message)
    }
}

impl std::error::Error for ParseError {}

pub const E_HEADER: &str = "bad-header";
pub const E_SYNTAX: &str = "syntax";
pub const E_RANGE: &str = "index-range";
pub const E_LABEL: &str = "unknown-label";
pub const E_ORDER: &str = "section-order";
pub const E_DUP: &str = "duplicate";
pub const E_REAL_LOG: &str = "real-log-on-relation";

fn err(line: usize, code: &'static str, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        code,
        message: message.into(),
    }
}

struct Builder {
    name: Option<String>,
    justification: Option<String>,
    rank: Option<usize>,
    base_dim: Option<usize>,
    relations: Vec<Vec<i64>>,
    real_log: BTreeMap<usize, Vec<BigRational>>,
    symbol_forms: BTreeMap<usize, String>,
    generators: Vec<(String, Vec<i64>, Option<Bidegree>, Vec<(String, BigRational)>)>,
    structure: Vec<(String, String, String, Scalar, usize)>,
    forms: Vec<(String, Vec<(Vec<String>, Scalar)>, usize)>,
    symplectic: Vec<String>,
}

/// Parse a fixture document. Collects every schema error rather than
/// stopping at the first.
pub fn parse(input: &str) -> Result<ModelSpec, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim() == FORMAT_HEADER => {}
        Some((_, first)) => {
            return Err(vec![err(
                1,
                E_HEADER,
                format!("expected '{}', found '{}'", FORMAT_HEADER, first.trim()),
            )])
        }
        None => return Err(vec![err(1, E_HEADER, "empty file")]),
    }

    let mut b = Builder {
        name: None,
        justification: None,
        rank: None,
        base_dim: None,
        relations: Vec::new(),
        real_log: BTreeMap::new(),
        symbol_forms: BTreeMap::new(),
        generators: Vec::new(),
        structure: Vec::new(),
        forms: Vec::new(),
        symplectic: Vec::new(),
    };

    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().unwrap();
        let rest: Vec<&str> = tokens.collect();
        match directive {
            "name" => {
                if rest.is_empty() {
                    errors.push(err(lineno, E_SYNTAX, "name requires a value"));
                } else {
                    b.name = Some(rest.join(" "));
                }
            }
            "justification" => {
                b.justification = Some(rest.join(" "));
            }
            "weight_rank" => match rest.as_slice() {
                [v] => match v.parse::<usize>() {
                    Ok(r) => b.rank = Some(r),
                    Err(_) => errors.push(err(lineno, E_SYNTAX, "weight_rank must be an integer")),
                },
                _ => errors.push(err(lineno, E_SYNTAX, "weight_rank takes one integer")),
            },
            "base_dim" => match rest.as_slice() {
                [v] => match v.parse::<usize>() {
                    Ok(r) => b.base_dim = Some(r),
                    Err(_) => errors.push(err(lineno, E_SYNTAX, "base_dim must be an integer")),
                },
                _ => errors.push(err(lineno, E_SYNTAX, "base_dim takes one integer")),
            },
            "relation" => {
                let Some(rank) = b.rank else {
                    errors.push(err(lineno, E_ORDER, "relation before weight_rank"));
                    continue;
                };
                let parsed: Option<Vec<i64>> = rest.iter().map(|t| t.parse().ok()).collect();
                match parsed {
                    Some(v) if v.len() == rank => b.relations.push(v),
                    _ => errors.push(err(
                        lineno,
                        E_SYNTAX,
                        format!("relation requires {} integers", rank),
                    )),
                }
            }
            "real_log" => {
                let (Some(rank), Some(base_dim)) = (b.rank, b.base_dim) else {
                    errors.push(err(lineno, E_ORDER, "real_log before weight_rank/base_dim"));
                    continue;
                };
                if rest.len() != base_dim + 1 {
                    errors.push(err(
                        lineno,
                        E_SYNTAX,
                        format!("real_log requires a symbol index and {} rationals", base_dim),
                    ));
                    continue;
                }
                let Ok(sym) = rest[0].parse::<usize>() else {
                    errors.push(err(lineno, E_SYNTAX, "bad symbol index"));
                    continue;
                };
                if sym == 0 || sym > rank {
                    errors.push(err(lineno, E_RANGE, format!("symbol {} out of range", sym)));
                    continue;
                }
                let values: Option<Vec<BigRational>> =
                    rest[1..].iter().map(|t| parse_rational(t)).collect();
                match values {
                    Some(v) => {
                        if b.real_log.insert(sym - 1, v).is_some() {
                            errors.push(err(lineno, E_DUP, format!("real_log for symbol {}", sym)));
                        }
                    }
                    None => errors.push(err(lineno, E_SYNTAX, "bad rational in real_log")),
                }
            }
            "symbol_form" => match rest.as_slice() {
                [sym, name] => {
                    let Ok(sym) = sym.parse::<usize>() else {
                        errors.push(err(lineno, E_SYNTAX, "bad symbol index"));
                        continue;
                    };
                    let rank = b.rank.unwrap_or(0);
                    if sym == 0 || sym > rank {
                        errors.push(err(lineno, E_RANGE, format!("symbol {} out of range", sym)));
                        continue;
                    }
                    b.symbol_forms.insert(sym - 1, name.to_string());
                }
                _ => errors.push(err(lineno, E_SYNTAX, "symbol_form takes index and form name")),
            },
            "gen" => {
                let Some(rank) = b.rank else {
                    errors.push(err(lineno, E_ORDER, "gen before weight_rank"));
                    continue;
                };
                if rest.is_empty() {
                    errors.push(err(lineno, E_SYNTAX, "gen requires a label"));
                    continue;
                }
                let label = rest[0].to_string();
                let mut pos = 1;
                let mut weight = Vec::new();
                let mut bidegree = None;
                let mut logderiv = Vec::new();
                if rest.get(pos) == Some(&"weight") {
                    pos += 1;
                    let mut ok = true;
                    for _ in 0..rank {
                        match rest.get(pos).and_then(|t| t.parse::<i64>().ok()) {
                            Some(v) => {
                                weight.push(v);
                                pos += 1;
                            }
                            None => {
                                errors.push(err(
                                    lineno,
                                    E_SYNTAX,
                                    format!("weight requires {} integers", rank),
                                ));
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                } else if rank > 0 {
                    errors.push(err(lineno, E_SYNTAX, "gen requires a weight section"));
                    continue;
                }
                if rest.get(pos) == Some(&"bidegree") {
                    pos += 1;
                    match rest.get(pos) {
                        Some(&"h") => {
                            bidegree = Some(Bidegree::Holomorphic);
                            pos += 1;
                        }
                        Some(&"a") => {
                            bidegree = Some(Bidegree::Antiholomorphic);
                            pos += 1;
                        }
                        _ => errors.push(err(lineno, E_SYNTAX, "bidegree must be h or a")),
                    }
                }
                if rest.get(pos) == Some(&"logderiv") {
                    pos += 1;
                    while pos < rest.len() {
                        let label_ref = rest[pos].to_string();
                        match rest.get(pos + 1).and_then(|t| parse_rational(t)) {
                            Some(c) => {
                                logderiv.push((label_ref, c));
                                pos += 2;
                            }
                            None => {
                                errors.push(err(
                                    lineno,
                                    E_SYNTAX,
                                    "logderiv takes (label rational) pairs",
                                ));
                                pos = rest.len();
                            }
                        }
                    }
                } else if pos != rest.len() {
                    errors.push(err(lineno, E_SYNTAX, "unexpected tokens on gen line"));
                }
                b.generators.push((label, weight, bidegree, logderiv));
            }
            "struct" => match rest.as_slice() {
                [k, i, j, re, im] => match (parse_rational(re), parse_rational(im)) {
                    (Some(re), Some(im)) => {
                        b.structure.push((
                            k.to_string(),
                            i.to_string(),
                            j.to_string(),
                            Scalar::new(re, im),
                            lineno,
                        ));
                    }
                    _ => errors.push(err(lineno, E_SYNTAX, "bad rational in struct line")),
                },
                _ => errors.push(err(
                    lineno,
                    E_SYNTAX,
                    "struct takes: target i j re im (labels then two rationals)",
                )),
            },
            "form" => {
                if rest.is_empty() {
                    errors.push(err(lineno, E_SYNTAX, "form requires a name"));
                    continue;
                }
                let name = rest[0].to_string();
                let mut terms: Vec<(Vec<String>, Scalar)> = Vec::new();
                let mut chunk: Vec<&str> = Vec::new();
                let mut ok = true;
                fn flush(
                    chunk: &mut Vec<&str>,
                    terms: &mut Vec<(Vec<String>, Scalar)>,
                ) -> bool {
                    if chunk.is_empty() {
                        return true;
                    }
                    if chunk.len() != 3 {
                        return false;
                    }
                    let labels: Vec<String> = if chunk[0] == "1" {
                        Vec::new()
                    } else {
                        chunk[0].split('^').map(|s| s.to_string()).collect()
                    };
                    match (parse_rational(chunk[1]), parse_rational(chunk[2])) {
                        (Some(re), Some(im)) => {
                            terms.push((labels, Scalar::new(re, im)));
                            chunk.clear();
                            true
                        }
                        _ => false,
                    }
                }
                for tok in &rest[1..] {
                    if *tok == ";" {
                        if !flush(&mut chunk, &mut terms) {
                            ok = false;
                            break;
                        }
                    } else {
                        chunk.push(tok);
                    }
                }
                if ok {
                    ok = flush(&mut chunk, &mut terms);
                }
                if !ok {
                    errors.push(err(
                        lineno,
                        E_SYNTAX,
                        "form terms are '<l1^l2^..> re im' separated by ';'",
                    ));
                } else {
                    b.forms.push((name, terms, lineno));
                }
            }
            "symplectic" => match rest.as_slice() {
                [name] => b.symplectic.push(name.to_string()),
                _ => errors.push(err(lineno, E_SYNTAX, "symplectic takes one form name")),
            },
            other => errors.push(err(
                lineno,
                E_SYNTAX,
                format!("unknown directive '{}'", other),
            )),
        }
    }

    // Assemble; label resolution and group construction can add errors.
    let rank = b.rank.unwrap_or(0);
    let base_dim = b.base_dim.unwrap_or(0);
    let mut real_log = Vec::new();
    for sym in 0..rank {
        match b.real_log.get(&sym) {
            Some(v) => real_log.push(v.clone()),
            None => real_log.push(vec![BigRational::zero(); base_dim]),
        }
    }
    let group = match WeightGroup::new(rank, b.relations.clone(), real_log, base_dim) {
        Ok(g) => Some(g),
        Err(e) => {
            let code = match e {
                crate::weight::WeightGroupError::RealLogOnRelation { .. } => E_REAL_LOG,
                _ => E_SYNTAX,
            };
            errors.push(err(0, code, e.to_string()));
            None
        }
    };

    let label_index: BTreeMap<String, usize> = b
        .generators
        .iter()
        .enumerate()
        .map(|(i, (l, _, _, _))| (l.clone(), i))
        .collect();
    if label_index.len() != b.generators.len() {
        errors.push(err(0, E_DUP, "duplicate generator labels"));
    }
    let n = b.generators.len();

    let resolve = |label: &str, line: usize, errors: &mut Vec<ParseError>| -> Option<usize> {
        match label_index.get(label) {
            Some(&i) => Some(i),
            None => {
                errors.push(err(line, E_LABEL, format!("unknown generator '{}'", label)));
                None
            }
        }
    };

    let mut generators = Vec::new();
    for (label, weight, bidegree, logderiv_pairs) in &b.generators {
        let mut logderiv = vec![BigRational::zero(); n];
        for (ref_label, coeff) in logderiv_pairs {
            if let Some(i) = resolve(ref_label, 0, &mut errors) {
                logderiv[i] = coeff.clone();
            }
        }
        generators.push(GeneratorSpec {
            label: label.clone(),
            weight: WeightClass(weight.clone()),
            bidegree: *bidegree,
            logderiv,
        });
    }

    let mut structure_constants = Vec::new();
    for (k, i, j, coeff, line) in &b.structure {
        let (k, i, j) = (
            resolve(k, *line, &mut errors),
            resolve(i, *line, &mut errors),
            resolve(j, *line, &mut errors),
        );
        let (Some(k), Some(i), Some(j)) = (k, i, j) else {
            continue;
        };
        if i >= j {
            errors.push(err(
                *line,
                E_RANGE,
                "struct factors must be in strictly increasing generator order",
            ));
            continue;
        }
        structure_constants.push(StructureConstant {
            i,
            j,
            k,
            coeff: coeff.clone(),
        });
    }

    let mut forms = BTreeMap::new();
    for (name, terms, line) in &b.forms {
        let mut form = Form::zero();
        let mut ok = true;
        for (term_labels, coeff) in terms {
            let mut mask = 0u64;
            let mut last: Option<usize> = None;
            for l in term_labels {
                match resolve(l, *line, &mut errors) {
                    Some(i) => {
                        if last.map_or(false, |p| p >= i) {
                            errors.push(err(
                                *line,
                                E_RANGE,
                                "monomial indices must be strictly increasing",
                            ));
                            ok = false;
                            break;
                        }
                        mask |= 1u64 << i;
                        last = Some(i);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            form.add_term(mask, coeff);
        }
        if ok && forms.insert(name.clone(), form).is_some() {
            errors.push(err(*line, E_DUP, format!("duplicate form '{}'", name)));
        }
    }

    let mut symbol_forms = vec![None; rank];
    for (sym, name) in &b.symbol_forms {
        symbol_forms[*sym] = Some(name.clone());
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    Ok(ModelSpec {
        name: b.name.unwrap_or_else(|| "unnamed".to_string()),
        dolbeault_justification: b.justification,
        group: group.expect("errors empty implies group built"),
        generators,
        structure_constants,
        forms,
        symplectic: b.symplectic,
        symbol_forms,
    })
}

/// Parse a fixture file from disk.
pub fn parse_file(path: &std::path::Path) -> Result<ModelSpec, Vec<ParseError>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        vec![err(0, E_SYNTAX, format!("cannot read {}: {}", path.display(), e))]
    })?;
    parse(&text)
}

fn scalar_tokens(s: &Scalar) -> String {
    format!("{} {}", rational_token(&s.re), rational_token(&s.im))
}

fn mono_token(mask: u64, labels: &[String]) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let parts: Vec<&str> = (0..crate::form::MAX_GENERATORS)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| labels[i].as_str())
        .collect();
    parts.join("^")
}

/// Canonical serialization; `parse(serialize(spec))` reproduces the spec.
pub fn serialize(spec: &ModelSpec) -> String {
    let labels = spec.labels();
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!("name {}\n", spec.name));
    if let Some(j) = &spec.dolbeault_justification {
        out.push_str(&format!("justification {}\n", j));
    }
    out.push_str(&format!("weight_rank {}\n", spec.group.rank));
    out.push_str(&format!("base_dim {}\n", spec.group.base_dim));
    for rel in &spec.group.relations.generators {
        let toks: Vec<String> = rel.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("relation {}\n", toks.join(" ")));
    }
    for (sym, row) in spec.group.real_log.iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let toks: Vec<String> = row.iter().map(rational_token).collect();
        out.push_str(&format!("real_log {} {}\n", sym + 1, toks.join(" ")));
    }
    for (sym, name) in spec.symbol_forms.iter().enumerate() {
        if let Some(name) = name {
            out.push_str(&format!("symbol_form {} {}\n", sym + 1, name));
        }
    }
    for g in &spec.generators {
        let mut line = format!("gen {}", g.label);
        if spec.group.rank > 0 {
            let toks: Vec<String> = g.weight.0.iter().map(|v| v.to_string()).collect();
            line.push_str(&format!(" weight {}", toks.join(" ")));
        }
        match g.bidegree {
            Some(Bidegree::Holomorphic) => line.push_str(" bidegree h"),
            Some(Bidegree::Antiholomorphic) => line.push_str(" bidegree a"),
            None => {}
        }
        if g.logderiv.iter().any(|c| !c.is_zero()) {
            line.push_str(" logderiv");
            for (i, c) in g.logderiv.iter().enumerate() {
                if !c.is_zero() {
                    line.push_str(&format!(" {} {}", labels[i], rational_token(c)));
                }
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    let mut scs: Vec<&StructureConstant> = spec.structure_constants.iter().collect();
    scs.sort_by_key(|sc| (sc.k, sc.i, sc.j));
    for sc in scs {
        out.push_str(&format!(
            "struct {} {} {} {}\n",
            labels[sc.k],
            labels[sc.i],
            labels[sc.j],
            scalar_tokens(&sc.coeff)
        ));
    }
    for (name, form) in &spec.forms {
        let mut line = format!("form {}", name);
        let mut first = true;
        for (mask, c) in form.terms() {
            if !first {
                line.push_str(" ;");
            }
            line.push_str(&format!(
                " {} {}",
                mono_token(mask, &labels),
                scalar_tokens(c)
            ));
            first = false;
        }
        out.push_str(&line);
        out.push('\n');
    }
    let mut sympl = spec.symplectic.clone();
    sympl.sort();
    for name in sympl {
        out.push_str(&format!("symplectic {}\n", name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn assert_round_trip(spec: &ModelSpec) {
        let text = serialize(spec);
        let parsed = parse(&text).unwrap_or_else(|e| panic!("{:?}\n{}", e, text));
        assert_eq!(serialize(&parsed), text, "canonical round trip");
        assert_eq!(parsed.validate().is_valid(), spec.validate().is_valid());
    }

    #[test]
    fn round_trips_all_fixtures() {
        for spec in [
            fixtures::torus(),
            fixtures::complex_torus(),
            fixtures::heisenberg(),
            fixtures::kodaira_thurston(),
            fixtures::kodaira_thurston_complex(),
            fixtures::iwasawa(),
            fixtures::sec8(),
            fixtures::synthetic_weights(2),
        ] {
            assert_round_trip(&spec);
        }
    }

    #[test]
    fn sec8_parse_shape() {
        let text = serialize(&fixtures::sec8());
        let spec = parse(&text).unwrap();
        assert_eq!(spec.generators.len(), 6);
        assert_eq!(spec.group.rank, 1);
        assert_eq!(
            spec.group.real_log[0][0],
            num::rational::BigRational::new(1.into(), 2.into())
        );
        assert!(spec.validate().is_valid());
    }

    #[test]
    fn bad_header_rejected() {
        let errs = parse("not a fixture\n").unwrap_err();
        assert_eq!(errs[0].code, E_HEADER);
    }

    #[test]
    fn real_log_on_relation_is_distinct_error() {
        let text =
            "solvcoh-fixture v1\nname bad\nweight_rank 1\nbase_dim 1\nrelation 1\nreal_log 1 1/2\n";
        let errs = parse(text).unwrap_err();
        assert!(errs.iter().any(|e| e.code == E_REAL_LOG), "{:?}", errs);
    }

    #[test]
    fn unknown_label_and_range_errors() {
        let text = "solvcoh-fixture v1\nname bad\nweight_rank 0\nbase_dim 0\ngen a\ngen b\nstruct a b missing 1 0\n";
        let errs = parse(text).unwrap_err();
        assert!(errs.iter().any(|e| e.code == E_LABEL));

        let text = "solvcoh-fixture v1\nname bad\nweight_rank 0\nbase_dim 0\ngen a\ngen b\ngen c\nstruct c b a 1 0\n";
        let errs = parse(text).unwrap_err();
        assert!(errs.iter().any(|e| e.code == E_RANGE));
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "solvcoh-fixture v1\n# a comment\nname t\n\nweight_rank 0\nbase_dim 0\ngen a # trailing\ngen b\n";
        let spec = parse(text).unwrap();
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(spec.name, "t");
    }
}
