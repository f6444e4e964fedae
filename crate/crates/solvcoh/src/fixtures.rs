//! Built-in example models: tori, the Heisenberg and Kodaira–Thurston
//! nilmanifolds, the Iwasawa-type complex Heisenberg model, and the
//! six-generator completely solvable model with non-unitary weights.
//! These back the test suite, the benchmarks and the shipped fixture files.

use crate::form::Form;
use crate::model::{Bidegree, GeneratorSpec, ModelSpec, StructureConstant};
use crate::scalar::Scalar;
use crate::weight::{WeightClass, WeightGroup};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::collections::BTreeMap;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn zero_logderiv(n: usize) -> Vec<BigRational> {
    vec![BigRational::zero(); n]
}

fn generator(
    label: &str,
    weight: Vec<i64>,
    bidegree: Option<Bidegree>,
    logderiv: Vec<BigRational>,
) -> GeneratorSpec {
    GeneratorSpec {
        label: label.to_string(),
        weight: WeightClass(weight),
        bidegree,
        logderiv,
    }
}

/// A model with trivial weights, no bidegrees and the given structure
/// constants; generators are labeled g1..gn.
pub fn plain_model(name: &str, n: usize, structure: Vec<StructureConstant>) -> ModelSpec {
    ModelSpec {
        name: name.to_string(),
        dolbeault_justification: None,
        group: WeightGroup::trivial(),
        generators: (0..n)
            .map(|i| generator(&format!("g{}", i + 1), vec![], None, zero_logderiv(n)))
            .collect(),
        structure_constants: structure,
        forms: BTreeMap::new(),
        symplectic: Vec::new(),
        symbol_forms: Vec::new(),
    }
}

/// The 2-torus: two closed generators, everything trivial.
pub fn torus() -> ModelSpec {
    let mut spec = plain_model("torus", 2, Vec::new());
    spec.generators[0].label = "e1".into();
    spec.generators[1].label = "e2".into();
    let omega = Form::generator(0).wedge(&Form::generator(1));
    spec.forms.insert("omega".into(), omega);
    spec.forms.insert("e1".into(), Form::generator(0));
    spec.forms.insert("e2".into(), Form::generator(1));
    spec.symplectic.push("omega".into());
    spec
}

/// A complex 1-torus: one holomorphic generator and its conjugate.
pub fn complex_torus() -> ModelSpec {
    let n = 2;
    let spec = ModelSpec {
        name: "complex_torus".to_string(),
        dolbeault_justification: Some("complex parallelizable torus".to_string()),
        group: WeightGroup::trivial(),
        generators: vec![
            generator("dz1", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator(
                "dzbar1",
                vec![],
                Some(Bidegree::Antiholomorphic),
                zero_logderiv(n),
            ),
        ],
        structure_constants: Vec::new(),
        forms: BTreeMap::from([
            (
                "omega".to_string(),
                Form::generator(0).wedge(&Form::generator(1)).scale(&Scalar::i()),
            ),
            ("theta".to_string(), Form::generator(0)),
        ]),
        symplectic: vec!["omega".to_string()],
        symbol_forms: Vec::new(),
    };
    spec
}

/// A complex n-torus (used by unit tests).
pub fn complex_torus_n(dim: usize) -> ModelSpec {
    let n = 2 * dim;
    ModelSpec {
        name: format!("complex_torus_{}", dim),
        dolbeault_justification: Some("complex parallelizable torus".to_string()),
        group: WeightGroup::trivial(),
        generators: (0..dim)
            .map(|i| {
                generator(
                    &format!("dz{}", i + 1),
                    vec![],
                    Some(Bidegree::Holomorphic),
                    zero_logderiv(n),
                )
            })
            .chain((0..dim).map(|i| {
                generator(
                    &format!("dzbar{}", i + 1),
                    vec![],
                    Some(Bidegree::Antiholomorphic),
                    zero_logderiv(n),
                )
            }))
            .collect(),
        structure_constants: Vec::new(),
        forms: BTreeMap::new(),
        symplectic: Vec::new(),
        symbol_forms: Vec::new(),
    }
}

/// The Heisenberg nilmanifold model: d x3 = −x1 ∧ x2.
pub fn heisenberg() -> ModelSpec {
    let mut spec = plain_model(
        "heisenberg",
        3,
        vec![StructureConstant {
            i: 0,
            j: 1,
            k: 2,
            coeff: Scalar::from_integer(-1),
        }],
    );
    spec.generators[0].label = "x1".into();
    spec.generators[1].label = "x2".into();
    spec.generators[2].label = "x3".into();
    spec.forms.insert("x1".into(), Form::generator(0));
    spec.forms.insert("x2".into(), Form::generator(1));
    spec
}

/// The Kodaira–Thurston nilmanifold model: d e4 = e1 ∧ e2, with the
/// symplectic form e1∧e4 + e2∧e3.
pub fn kodaira_thurston() -> ModelSpec {
    let mut spec = plain_model(
        "kodaira_thurston",
        4,
        vec![StructureConstant {
            i: 0,
            j: 1,
            k: 3,
            coeff: Scalar::one(),
        }],
    );
    for (i, l) in ["e1", "e2", "e3", "e4"].iter().enumerate() {
        spec.generators[i].label = l.to_string();
    }
    let omega = Form::generator(0)
        .wedge(&Form::generator(3))
        .add(&Form::generator(1).wedge(&Form::generator(2)));
    spec.forms.insert("omega".into(), omega);
    spec.forms.insert("e1".into(), Form::generator(0));
    spec.symplectic.push("omega".into());
    spec
}

/// The complex Heisenberg (Iwasawa-type) model: d z3 = −z1 ∧ z2 and its
/// conjugate.
pub fn iwasawa() -> ModelSpec {
    let n = 6;
    ModelSpec {
        name: "iwasawa".to_string(),
        dolbeault_justification: Some("complex parallelizable nilmanifold".to_string()),
        group: WeightGroup::trivial(),
        generators: vec![
            generator("z1", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator("z2", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator("z3", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator("zbar1", vec![], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
            generator("zbar2", vec![], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
            generator("zbar3", vec![], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
        ],
        structure_constants: vec![
            StructureConstant {
                i: 0,
                j: 1,
                k: 2,
                coeff: Scalar::from_integer(-1),
            },
            StructureConstant {
                i: 3,
                j: 4,
                k: 5,
                coeff: Scalar::from_integer(-1),
            },
        ],
        forms: BTreeMap::new(),
        symplectic: Vec::new(),
        symbol_forms: Vec::new(),
    }
}

/// The six-generator completely solvable model: a complex line acting on
/// ℂ² with reciprocal real eigencharacters. Weight group ℤ with real-log
/// 1/2; generators dz2, dzbar2 carry weight +1 and dz3, dzbar3 weight −1,
/// and the structure constants cancel the log-derivative twists exactly.
pub fn sec8() -> ModelSpec {
    let n = 6;
    let group = WeightGroup::new(1, vec![], vec![vec![rat(1, 2)]], 1).unwrap();
    let half = |sign: i64| -> Vec<BigRational> {
        let mut v = zero_logderiv(n);
        v[0] = rat(sign, 2);
        v[3] = rat(sign, 2);
        v
    };
    let generators = vec![
        generator("dz1", vec![0], Some(Bidegree::Holomorphic), zero_logderiv(n)),
        generator("dz2", vec![1], Some(Bidegree::Holomorphic), half(1)),
        generator("dz3", vec![-1], Some(Bidegree::Holomorphic), half(-1)),
        generator("dzbar1", vec![0], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
        generator("dzbar2", vec![1], Some(Bidegree::Antiholomorphic), half(1)),
        generator("dzbar3", vec![-1], Some(Bidegree::Antiholomorphic), half(-1)),
    ];
    let c = Scalar::from_ratio(1, 2);
    let structure_constants = vec![
        // d dz2 = -(1/2)(dz1+dzbar1) ∧ dz2
        StructureConstant { i: 0, j: 1, k: 1, coeff: -&c },
        StructureConstant { i: 1, j: 3, k: 1, coeff: c.clone() },
        // d dz3 = +(1/2)(dz1+dzbar1) ∧ dz3
        StructureConstant { i: 0, j: 2, k: 2, coeff: c.clone() },
        StructureConstant { i: 2, j: 3, k: 2, coeff: -&c },
        // d dzbar2 = -(1/2)(dz1+dzbar1) ∧ dzbar2
        StructureConstant { i: 0, j: 4, k: 4, coeff: -&c },
        StructureConstant { i: 3, j: 4, k: 4, coeff: -&c },
        // d dzbar3 = +(1/2)(dz1+dzbar1) ∧ dzbar3
        StructureConstant { i: 0, j: 5, k: 5, coeff: c.clone() },
        StructureConstant { i: 3, j: 5, k: 5, coeff: c.clone() },
    ];
    let omega = Form::generator(0)
        .wedge(&Form::generator(3))
        .scale(&Scalar::i())
        .add(&Form::generator(1).wedge(&Form::generator(5)))
        .add(&Form::generator(4).wedge(&Form::generator(2)));
    let mut phihalf = Form::zero();
    phihalf.add_term(1 << 0, &c);
    phihalf.add_term(1 << 3, &c);
    let theta = Form::generator(0).scale(&c);
    ModelSpec {
        name: "sec8".to_string(),
        dolbeault_justification: Some(
            "holomorphically split semidirect product with lattice-compatible bigraded subalgebra"
                .to_string(),
        ),
        group,
        generators,
        structure_constants,
        forms: BTreeMap::from([
            ("omega".to_string(), omega),
            ("theta".to_string(), theta),
            ("phihalf".to_string(), phihalf),
        ]),
        symplectic: vec!["omega".to_string()],
        symbol_forms: vec![Some("phihalf".to_string())],
    }
}

/// The Kodaira–Thurston model with its standard complex structure:
/// d cz2 = cz1 ∧ czbar1 and the conjugate relation.
pub fn kodaira_thurston_complex() -> ModelSpec {
    let n = 4;
    ModelSpec {
        name: "kodaira_thurston_complex".to_string(),
        dolbeault_justification: Some("abelian complex structure on a nilmanifold".to_string()),
        group: WeightGroup::trivial(),
        generators: vec![
            generator("cz1", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator("cz2", vec![], Some(Bidegree::Holomorphic), zero_logderiv(n)),
            generator("czbar1", vec![], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
            generator("czbar2", vec![], Some(Bidegree::Antiholomorphic), zero_logderiv(n)),
        ],
        structure_constants: vec![
            StructureConstant {
                i: 0,
                j: 2,
                k: 1,
                coeff: Scalar::one(),
            },
            StructureConstant {
                i: 0,
                j: 2,
                k: 3,
                coeff: Scalar::from_integer(-1),
            },
        ],
        forms: BTreeMap::from([("theta".to_string(), Form::generator(0))]),
        symplectic: Vec::new(),
        symbol_forms: Vec::new(),
    }
}

/// Synthetic abelian-hull model with `pairs` reciprocal weight pairs over a
/// single closed base generator; exercises many weight classes. Used by the
/// benchmarks.
pub fn synthetic_weights(pairs: usize) -> ModelSpec {
    let n = 1 + 2 * pairs;
    assert!(n <= crate::form::MAX_GENERATORS);
    let group = WeightGroup::new(1, vec![], vec![vec![rat(1, 1)]], 1).unwrap();
    let mut generators = vec![generator("b", vec![0], None, zero_logderiv(n))];
    let mut structure_constants = Vec::new();
    for k in 0..pairs {
        let w = (k + 1) as i64;
        for (sign, suffix) in [(1i64, "p"), (-1, "m")] {
            let idx = generators.len();
            let mut logderiv = zero_logderiv(n);
            logderiv[0] = rat(sign * w, 1);
            generators.push(generator(
                &format!("x{}{}", k + 1, suffix),
                vec![sign * w],
                None,
                logderiv,
            ));
            // cancel the twist: d x = -(sign*w) b ∧ x
            structure_constants.push(StructureConstant {
                i: 0,
                j: idx,
                k: idx,
                coeff: Scalar::from_integer(-sign * w),
            });
        }
    }
    ModelSpec {
        name: format!("synthetic_{}", pairs),
        dolbeault_justification: None,
        group,
        generators,
        structure_constants,
        forms: BTreeMap::new(),
        symplectic: Vec::new(),
        symbol_forms: Vec::new(),
    }
}
