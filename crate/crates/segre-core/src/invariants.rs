//! Enumerative verdicts: algebraic multiplicity, containment of
//! varieties, containment of components, singular-locus membership,
//! and emptiness.
//!
//! Each test reduces to a handful of projective degrees and scheme
//! classes and compares them against what the ambient degrees predict.
//! The containment tests never manipulate radicals or Jacobians: a
//! variety X lies in a reduced scheme Y exactly when X sits multiply —
//! with algebraic multiplicity at least two — on the hypersurface cut
//! out by the product of one general combination of X's equations with
//! one general combination of Y's, and a component-level variant of the
//! same idea compares deficit values instead of a single multiplicity.
//!
//! Every verdict carries a witness: the integers or classes that force
//! the answer, sufficient to re-derive it without rerunning counts.

use crate::chow::ChowClass;
use crate::degrees::{multi_indices, Engine};
use crate::error::{Error, Result};
use crate::poly::{general_combination, GradedIdeal, Multidegree, SchemeSpec};
use crate::segre::{complement, lambda_values};
use num::{BigInt, Integer, ToPrimitive, Zero};

const SUB_MULT_X_CLASS: u64 = 0x30;
const SUB_MULT_Y_CLASS: u64 = 0x31;
const SUB_MULT_TABLE: u64 = 0x32;
const SUB_SING_X_CLASS: u64 = 0x38;
const SUB_SING_Z_CLASS: u64 = 0x39;
const SUB_SING_TABLE: u64 = 0x3a;
const SUB_CONTAINS_DRAW: u64 = 0x40;
const SUB_COMPONENT_DIM: u64 = 0x50;
const SUB_COMPONENT_DRAW: u64 = 0x51;
const SUB_COMPONENT_Z_TABLE: u64 = 0x52;
const SUB_COMPONENT_T_TABLE: u64 = 0x53;
const SUB_EMPTY_TABLE: u64 = 0x60;

/// One named value backing a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessValue {
    /// An integer (a multiplicity, a count, a threshold).
    Int(BigInt),
    /// A slice index.
    Index(Vec<u32>),
    /// A class in the ambient Chow ring.
    Class(ChowClass),
    /// A free-form note.
    Text(String),
}

/// A yes/no answer together with the values that force it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub witness: Vec<(String, WitnessValue)>,
}

impl Verdict {
    pub fn answer_str(&self) -> &'static str {
        if self.answer {
            "yes"
        } else {
            "no"
        }
    }

    /// JSON form: `{"answer":"yes","witness":{...},"seed":N}`. Witness
    /// entries keep their insertion order.
    pub fn to_json_string(&self, seed: u64) -> String {
        let mut s = String::from("{\"answer\":\"");
        s.push_str(self.answer_str());
        s.push_str("\",\"witness\":{");
        for (i, (name, value)) in self.witness.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('"');
            s.push_str(name);
            s.push_str("\":");
            match value {
                WitnessValue::Int(n) => s.push_str(&n.to_string()),
                WitnessValue::Index(a) => {
                    s.push('[');
                    for (k, x) in a.iter().enumerate() {
                        if k > 0 {
                            s.push(',');
                        }
                        s.push_str(&x.to_string());
                    }
                    s.push(']');
                }
                WitnessValue::Class(c) => s.push_str(&c.to_json_string()),
                WitnessValue::Text(t) => {
                    s.push('"');
                    for ch in t.chars() {
                        match ch {
                            '"' => s.push_str("\\\""),
                            '\\' => s.push_str("\\\\"),
                            _ => s.push(ch),
                        }
                    }
                    s.push('"');
                }
            }
        }
        s.push_str("},\"seed\":");
        s.push_str(&seed.to_string());
        s.push('}');
        s
    }
}

fn check_same_ambient(x: &SchemeSpec, y: &SchemeSpec) -> Result<()> {
    if x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// The algebraic multiplicity e_X Y of the host scheme Y along the
/// variety X ⊆ Y: the multiplicity of the local ring of Y at X's
/// generic point. Computed from the class of Y, the class of X, and the
/// projective degrees of the pair at slice level dim X, after padding
/// X's generators to the componentwise maximum of both natural
/// multidegrees; every slice index with a nonzero coefficient of \[X\]
/// is evaluated and all must agree, so a violated containment or an
/// unlucky draw is reported instead of silently mis-answered.
pub fn multiplicity(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<u64> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    if !x.asserted_variety {
        return Err(Error::Precondition(
            "multiplicity requires the center to be asserted a variety".into(),
        ));
    }
    let ambient = x.ambient().clone();
    let d_x = x.ideal.natural_multidegree()?;
    let target = if y.ideal.is_zero_ideal() {
        d_x
    } else {
        d_x.componentwise_max(&y.ideal.natural_multidegree()?)
    };
    let x_h = x.ideal.alpha_homogenize_to(&target)?;

    let (dim_x, x_class) = engine.class_of(
        &ambient,
        x.ideal.generators(),
        x.asserted_dim,
        SUB_MULT_X_CLASS,
    )?;
    let dim_x = dim_x.ok_or_else(|| Error::Precondition("the center is empty".into()))?;
    let (dim_y, y_class) = engine.class_of(
        &ambient,
        y.ideal.generators(),
        y.asserted_dim,
        SUB_MULT_Y_CLASS,
    )?;
    let dim_y = dim_y.ok_or_else(|| Error::Precondition("the host scheme is empty".into()))?;
    if dim_y < dim_x {
        return Err(Error::Precondition(format!(
            "the center has dimension {dim_x}, exceeding the host dimension {dim_y}"
        )));
    }

    let table = engine.degree_table_levels(
        &ambient,
        y.ideal.generators(),
        x_h.generators(),
        dim_y,
        &[dim_x],
        SUB_MULT_TABLE,
    )?;
    let alpha_div = ChowClass::divisor_of_multidegree(&ambient, &target);
    let z_class = alpha_div.pow((dim_y - dim_x) as u32).mul(&y_class)?;

    let mut found: Option<(BigInt, Vec<u32>)> = None;
    for a in multi_indices(&ambient, dim_x) {
        let e = complement(&ambient, &a);
        let v = x_class.coefficient(&e);
        if v.is_zero() {
            continue;
        }
        let g = table
            .get(&a)
            .expect("every slice index of the level is tabulated");
        let excess = z_class.coefficient(&e) - BigInt::from(g);
        let (q, r) = excess.div_rem(&v);
        if !r.is_zero() {
            return Err(Error::MultiplicityInconsistent(format!(
                "at slice index {a:?} the excess {excess} is not a multiple of the center \
                 degree {v}"
            )));
        }
        if q < BigInt::from(1) {
            return Err(Error::MultiplicityInconsistent(format!(
                "at slice index {a:?} the excess {excess} over the center degree {v} is not \
                 positive; is the center contained in the host?"
            )));
        }
        match &found {
            None => found = Some((q, a)),
            Some((prev, first)) if *prev != q => {
                return Err(Error::MultiplicityInconsistent(format!(
                    "slice index {first:?} gives {prev} but {a:?} gives {q}"
                )));
            }
            Some(_) => {}
        }
    }
    let (e, _) = found.ok_or_else(|| {
        Error::MultiplicityInconsistent("the center's class has no nonzero coefficient".into())
    })?;
    e.to_u64().ok_or_else(|| {
        Error::MultiplicityInconsistent(format!("multiplicity {e} does not fit in 64 bits"))
    })
}

/// Whether some top-dimensional component of the reduced scheme X lies
/// in the singular locus of the irreducible host Z (of geometric
/// multiplicity 𝔪, asserted on the spec): true exactly when, at some
/// slice index a of level dim X where X's class has a nonzero
/// coefficient q_a, the excess z_a - g_a strictly exceeds 𝔪·q_a. No
/// Jacobian ideal is ever formed.
pub fn in_singular_locus(engine: &Engine, x: &SchemeSpec, z: &SchemeSpec) -> Result<Verdict> {
    x.validate()?;
    z.validate()?;
    check_same_ambient(x, z)?;
    if !z.asserted_irreducible {
        return Err(Error::Precondition(
            "the singular-locus test requires the host to be asserted irreducible".into(),
        ));
    }
    if x.geometric_multiplicity != 1 {
        return Err(Error::Precondition(
            "the singular-locus test requires a reduced candidate scheme".into(),
        ));
    }
    let ambient = x.ambient().clone();
    if z.ideal.is_zero_ideal() {
        return Ok(Verdict {
            answer: false,
            witness: vec![(
                "note".into(),
                WitnessValue::Text("the host is the whole ambient space, which is smooth".into()),
            )],
        });
    }
    let m_z = BigInt::from(z.geometric_multiplicity);
    let target = x
        .ideal
        .natural_multidegree()?
        .componentwise_max(&z.ideal.natural_multidegree()?);
    let x_h = x.ideal.alpha_homogenize_to(&target)?;

    let (dim_x, x_class) = engine.class_of(
        &ambient,
        x.ideal.generators(),
        x.asserted_dim,
        SUB_SING_X_CLASS,
    )?;
    let dim_x =
        dim_x.ok_or_else(|| Error::Precondition("the candidate scheme is empty".into()))?;
    let (dim_z, z_class) = engine.class_of(
        &ambient,
        z.ideal.generators(),
        z.asserted_dim,
        SUB_SING_Z_CLASS,
    )?;
    let dim_z = dim_z.ok_or_else(|| Error::Precondition("the host scheme is empty".into()))?;
    if dim_z < dim_x {
        return Err(Error::Precondition(format!(
            "the candidate has dimension {dim_x}, exceeding the host dimension {dim_z}"
        )));
    }

    let table = engine.degree_table_levels(
        &ambient,
        z.ideal.generators(),
        x_h.generators(),
        dim_z,
        &[dim_x],
        SUB_SING_TABLE,
    )?;
    let alpha_div = ChowClass::divisor_of_multidegree(&ambient, &target);
    let z_val = alpha_div.pow((dim_z - dim_x) as u32).mul(&z_class)?;

    let mut excess = ChowClass::zero(ambient.clone());
    let mut threshold = ChowClass::zero(ambient.clone());
    let mut hit: Option<Vec<u32>> = None;
    for a in multi_indices(&ambient, dim_x) {
        let e = complement(&ambient, &a);
        let q = x_class.coefficient(&e);
        let g = table
            .get(&a)
            .expect("every slice index of the level is tabulated");
        let lhs = z_val.coefficient(&e) - BigInt::from(g);
        let rhs = &m_z * &q;
        excess = excess.add(&ChowClass::monomial(ambient.clone(), e.clone(), lhs.clone()))?;
        threshold = threshold.add(&ChowClass::monomial(ambient.clone(), e, rhs.clone()))?;
        if !q.is_zero() && lhs > rhs && hit.is_none() {
            hit = Some(a);
        }
    }
    let mut witness = vec![
        ("excess".into(), WitnessValue::Class(excess)),
        ("threshold".into(), WitnessValue::Class(threshold)),
    ];
    let answer = hit.is_some();
    if let Some(a) = hit {
        witness.push(("index".into(), WitnessValue::Index(a)));
    }
    Ok(Verdict { answer, witness })
}

/// Whether the variety X is contained in the reduced scheme Y. Builds
/// Θ = V(general combination of X's equations), Ω = V(general
/// combination of Y's), and the hypersurface Z = Θ ∪ Ω; X always lies
/// on the Θ branch with multiplicity one, so X ⊆ Y exactly when the
/// multiplicity of Z along X is at least two. Combination draws that
/// lead to inconsistent or undecidable counts are retried with fresh
/// coefficients up to the engine's attempt budget.
pub fn contains(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<Verdict> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    if !x.asserted_variety {
        return Err(Error::Precondition(
            "the containment test requires the candidate to be asserted a variety".into(),
        ));
    }
    if y.geometric_multiplicity != 1 {
        return Err(Error::Precondition(
            "the containment test requires a reduced reference scheme".into(),
        ));
    }
    let ambient = x.ambient().clone();
    let x_h = x.ideal.alpha_homogenize()?;
    let y_h = y.ideal.alpha_homogenize()?;

    let attempts = engine.config().max_attempts.max(2);
    let mut last: Option<Error> = None;
    for attempt in 0..attempts {
        let mut rng = engine.draw_rng(&[SUB_CONTAINS_DRAW, attempt as u64]);
        let span = engine.rational_span();
        let p_theta = general_combination(x_h.generators(), span, &mut rng)?;
        let p_omega = general_combination(y_h.generators(), span, &mut rng)?;
        let z_ideal = GradedIdeal::new(ambient.clone(), vec![p_theta.mul(&p_omega)?])?;
        let z = SchemeSpec::new(z_ideal).with_dim(ambient.dim() - 1);
        match multiplicity(engine, x, &z) {
            Ok(e) => {
                return Ok(Verdict {
                    answer: e >= 2,
                    witness: vec![
                        ("multiplicity".into(), WitnessValue::Int(BigInt::from(e))),
                        ("attempt".into(), WitnessValue::Int(BigInt::from(attempt))),
                    ],
                });
            }
            Err(err) => match err {
                Error::MultiplicityInconsistent(_) | Error::GenericityExhausted { .. } => {
                    last = Some(err);
                }
                other => return Err(other),
            },
        }
    }
    Err(last.expect("at least one attempt always runs"))
}

/// Whether some top-dimensional irreducible component of X lies in the
/// reduced scheme Y. With Θ, Ω, Z as in [`contains`], compares the
/// deficit values of the pair (X, Z) against those of (X, Θ) at slice
/// level dim X: the extra branch through a contained component is
/// visible exactly as a changed deficit. Reports existence only — which
/// component is contained would require a decomposition.
pub fn component_contained(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<Verdict> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    if y.geometric_multiplicity != 1 {
        return Err(Error::Precondition(
            "the component containment test requires a reduced reference scheme".into(),
        ));
    }
    let ambient = x.ambient().clone();
    let x_h = x.ideal.alpha_homogenize()?;
    let alpha_x = x_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;
    let y_h = y.ideal.alpha_homogenize()?;
    let alpha_y = y_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;
    let alpha_z = Multidegree(
        alpha_x
            .entries()
            .iter()
            .zip(alpha_y.entries())
            .map(|(&a, &b)| a + b)
            .collect(),
    );

    let dim_x = match x.asserted_dim {
        Some(d) => d,
        None => engine
            .dimension_of(&ambient, x.ideal.generators(), SUB_COMPONENT_DIM)?
            .ok_or_else(|| Error::Precondition("the candidate scheme is empty".into()))?,
    };
    let dim_hyp = ambient.dim() - 1;
    if dim_hyp < dim_x {
        return Err(Error::Precondition(
            "the candidate fills the whole ambient space".into(),
        ));
    }
    let z_class = ChowClass::divisor_of_multidegree(&ambient, &alpha_z);
    let theta_class = ChowClass::divisor_of_multidegree(&ambient, &alpha_x);

    let attempts = engine.config().max_attempts.max(2);
    let mut last: Option<Error> = None;
    for attempt in 0..attempts {
        let mut rng = engine.draw_rng(&[SUB_COMPONENT_DRAW, attempt as u64]);
        let span = engine.rational_span();
        let p_theta = general_combination(x_h.generators(), span, &mut rng)?;
        let p_omega = general_combination(y_h.generators(), span, &mut rng)?;
        let z_gen = p_theta.mul(&p_omega)?;
        let salt = (attempt as u64) << 8;
        let lam_z = lambda_values(
            engine,
            &ambient,
            x_h.generators(),
            &alpha_x,
            &[z_gen],
            dim_hyp,
            &z_class,
            &[dim_x],
            SUB_COMPONENT_Z_TABLE | salt,
        );
        let lam_t = lambda_values(
            engine,
            &ambient,
            x_h.generators(),
            &alpha_x,
            &[p_theta],
            dim_hyp,
            &theta_class,
            &[dim_x],
            SUB_COMPONENT_T_TABLE | salt,
        );
        let (lam_z, lam_t) = match (lam_z, lam_t) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(err @ Error::GenericityExhausted { .. }), _)
            | (_, Err(err @ Error::GenericityExhausted { .. })) => {
                last = Some(err);
                continue;
            }
            (Err(err), _) | (_, Err(err)) => return Err(err),
        };

        let mut class_z = ChowClass::zero(ambient.clone());
        let mut class_t = ChowClass::zero(ambient.clone());
        let mut differs: Option<Vec<u32>> = None;
        for (a, vz) in &lam_z {
            let e = complement(&ambient, a);
            let vt = lam_t
                .get(a)
                .expect("both tables cover the same level")
                .clone();
            class_z = class_z.add(&ChowClass::monomial(ambient.clone(), e.clone(), vz.clone()))?;
            class_t = class_t.add(&ChowClass::monomial(ambient.clone(), e, vt.clone()))?;
            if *vz != vt && differs.is_none() {
                differs = Some(a.clone());
            }
        }
        let mut witness = vec![
            ("deficit_z".into(), WitnessValue::Class(class_z)),
            ("deficit_theta".into(), WitnessValue::Class(class_t)),
            ("attempt".into(), WitnessValue::Int(BigInt::from(attempt))),
        ];
        let answer = differs.is_some();
        if let Some(a) = differs {
            witness.push(("index".into(), WitnessValue::Index(a)));
        }
        return Ok(Verdict { answer, witness });
    }
    Err(last.expect("at least one attempt always runs"))
}

/// Whether the subscheme cut out by `b` in a single projective space is
/// empty. After padding the generators to a common degree d, the scheme
/// is empty exactly when every projective degree g_i of the pair
/// (B, Pⁿ) attains the Bézout bound d^{n-i}; any point of B depresses
/// some count below the bound.
pub fn is_empty(engine: &Engine, b: &GradedIdeal) -> Result<Verdict> {
    let ambient = b.ambient().clone();
    if ambient.num_factors() != 1 {
        return Err(Error::SingleFactorRequired);
    }
    if b.is_zero_ideal() {
        return Ok(Verdict {
            answer: false,
            witness: vec![(
                "note".into(),
                WitnessValue::Text("no generators: the whole ambient space".into()),
            )],
        });
    }
    let b_h = b.alpha_homogenize()?;
    let d = b_h
        .alpha()
        .expect("homogenized ideals share one multidegree")
        .entries()[0];
    let n = ambient.dim();
    let levels: Vec<usize> = (0..=n).collect();
    let table = engine.degree_table_levels(
        &ambient,
        &[],
        b_h.generators(),
        n,
        &levels,
        SUB_EMPTY_TABLE,
    )?;

    let mut observed = ChowClass::zero(ambient.clone());
    let mut expected = ChowClass::zero(ambient.clone());
    let mut empty = true;
    for i in 0..=n {
        let g = BigInt::from(
            table
                .get(&[i as u32])
                .expect("every level of the table is present"),
        );
        let want = BigInt::from(d).pow((n - i) as u32);
        let e = vec![(n - i) as u32];
        observed = observed.add(&ChowClass::monomial(ambient.clone(), e.clone(), g.clone()))?;
        expected = expected.add(&ChowClass::monomial(ambient.clone(), e, want.clone()))?;
        if g != want {
            empty = false;
        }
    }
    Ok(Verdict {
        answer: empty,
        witness: vec![
            ("observed".into(), WitnessValue::Class(observed)),
            ("expected".into(), WitnessValue::Class(expected)),
            ("degree".into(), WitnessValue::Int(BigInt::from(d))),
        ],
    })
}
