//! Intersection products inside a smooth complete intersection.
//!
//! For varieties X and V inside a smooth complete intersection Y ⊆ Pⁿ,
//! the product X ·_Y V lives in dimension dim X + dim V - dim Y and is
//! supported on X ∩ V. It is recovered from the Segre class of the
//! diagonal restricted to X × V: embed both factors in Pⁿ × Pⁿ, compute
//! s(Δ ∩ (X × V), X × V), pull the result back through the diagonal,
//! and cap with the Chern class of Y's tangent bundle. No normal cones
//! or blowups are ever materialized; everything reduces to the same
//! point counts as the rest of the library.

use crate::chow::ChowClass;
use crate::degrees::Engine;
use crate::error::{Error, Result};
use crate::invariants::is_empty;
use crate::poly::{Ambient, GradedIdeal, Homogeneity, Multidegree, MultiPoly, SchemeSpec};
use crate::segre::segre_class;

/// A smooth complete intersection host Y = V(equations) in a single
/// projective space; no equations means Y is the whole space. The
/// dimension is n - (number of equations) by definition and is never
/// probed; supplying equations that do not form a smooth complete
/// intersection violates the contract of [`intersection_product`].
#[derive(Clone, Debug)]
pub struct CISpec {
    ambient: Ambient,
    equations: Vec<MultiPoly>,
}

impl CISpec {
    pub fn new(ambient: Ambient, equations: Vec<MultiPoly>) -> Result<CISpec> {
        if ambient.num_factors() != 1 {
            return Err(Error::SingleFactorRequired);
        }
        if equations.len() > ambient.dim() {
            return Err(Error::InvalidScheme(format!(
                "{} equations leave no dimensions in P^{}",
                equations.len(),
                ambient.dim()
            )));
        }
        for (i, f) in equations.iter().enumerate() {
            if f.ambient() != &ambient {
                return Err(Error::AmbientMismatch);
            }
            if f.is_zero() {
                return Err(Error::InvalidScheme(format!("equation {i} is zero")));
            }
            match f.multidegree()? {
                Homogeneity::Homogeneous(_) => {}
                Homogeneity::NotHomogeneous => {
                    return Err(Error::NotHomogeneousGenerator { index: i });
                }
            }
        }
        Ok(CISpec { ambient, equations })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim() - self.equations.len()
    }

    /// Total Chern class of the tangent bundle of Y, truncated to the
    /// ambient ring: (1 + h)^{n+1} divided by prod_i (1 + d_i h).
    pub fn tangent_chern(&self) -> Result<ChowClass> {
        let degrees: Vec<Multidegree> = self
            .equations
            .iter()
            .map(|f| match f.multidegree() {
                Ok(Homogeneity::Homogeneous(d)) => d,
                _ => unreachable!("validated at construction"),
            })
            .collect();
        ChowClass::chern_complete_intersection(&self.ambient, &degrees)
    }
}

/// The ideal of I × J inside the doubled ambient space: I's generators
/// in the first copy of the variables together with J's in the second.
pub fn embed_product(i: &GradedIdeal, j: &GradedIdeal) -> Result<GradedIdeal> {
    if i.ambient() != j.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let doubled = i.ambient().doubled();
    let mut gens: Vec<MultiPoly> = i
        .generators()
        .iter()
        .map(|g| g.embed_in_doubled(0))
        .collect();
    gens.extend(j.generators().iter().map(|g| g.embed_in_doubled(1)));
    GradedIdeal::new(doubled, gens)
}

/// The ideal of the diagonal of Pⁿ × Pⁿ: the 2×2 minors x_i y_j - x_j y_i
/// pairing the two copies of the coordinates. Only single projective
/// spaces have a diagonal cut out by bihomogeneous forms of one shape,
/// so products are rejected.
pub fn diagonal_ideal(ambient: &Ambient) -> Result<GradedIdeal> {
    if ambient.num_factors() != 1 {
        return Err(Error::SingleFactorRequired);
    }
    let n = ambient.dim();
    let doubled = ambient.doubled();
    let offset = ambient.total_vars();
    let dom = crate::poly::Domain::Rat;
    let mut gens = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            let xi = MultiPoly::variable(doubled.clone(), i, dom);
            let xj = MultiPoly::variable(doubled.clone(), j, dom);
            let yi = MultiPoly::variable(doubled.clone(), offset + i, dom);
            let yj = MultiPoly::variable(doubled.clone(), offset + j, dom);
            gens.push(xi.mul(&yj)?.sub(&xj.mul(&yi)?)?);
        }
    }
    GradedIdeal::new(doubled, gens)
}

/// The intersection product X ·_Y V for varieties X, V inside the
/// smooth complete intersection Y, as a class of dimension
/// dim X + dim V - dim Y in the Chow ring of the ambient projective
/// space. Empty intersections and negative expected dimension give the
/// zero class. The Segre class of the diagonal in X × V must be a
/// diagonal pushforward — for genuine subvarieties of Y it always is,
/// and a failure is reported rather than rounded away.
pub fn intersection_product(
    engine: &Engine,
    x: &SchemeSpec,
    v: &SchemeSpec,
    y: &CISpec,
) -> Result<ChowClass> {
    x.validate()?;
    v.validate()?;
    if x.ambient() != v.ambient() || x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let ambient = x.ambient().clone();
    if ambient.num_factors() != 1 {
        return Err(Error::SingleFactorRequired);
    }
    if !x.asserted_variety || !v.asserted_variety {
        return Err(Error::Precondition(
            "intersection products require both factors to be asserted varieties".into(),
        ));
    }

    let dim_y = y.dim();
    let dim_x = match x.asserted_dim {
        Some(d) => d,
        None => engine
            .dimension_of(&ambient, x.ideal.generators(), SUB_X_DIM)?
            .ok_or_else(|| Error::Precondition("the first factor is empty".into()))?,
    };
    let dim_v = match v.asserted_dim {
        Some(d) => d,
        None => engine
            .dimension_of(&ambient, v.ideal.generators(), SUB_V_DIM)?
            .ok_or_else(|| Error::Precondition("the second factor is empty".into()))?,
    };
    if dim_x > dim_y || dim_v > dim_y {
        return Err(Error::Precondition(
            "both factors must lie in the host".into(),
        ));
    }
    if dim_x + dim_v < dim_y {
        return Ok(ChowClass::zero(ambient));
    }
    let expected = dim_x + dim_v - dim_y;

    // A disjoint pair multiplies to zero; detect it before building the
    // doubled system, which is much larger.
    let joint = x.ideal.union(&v.ideal)?;
    if is_empty(engine, &joint)?.answer {
        return Ok(ChowClass::zero(ambient));
    }

    let product = embed_product(&x.ideal, &v.ideal)?;
    let diagonal = diagonal_ideal(&ambient)?;
    let s = segre_class(
        engine,
        &SchemeSpec::new(diagonal),
        &SchemeSpec::variety(product).with_dim(dim_x + dim_v),
    )?;
    let s_base = s
        .diagonal_invert(&ambient)?
        .ok_or(Error::NotInDiagonalImage)?;
    let capped = y.tangent_chern()?.mul(&s_base)?;
    Ok(capped.dim_part(expected))
}

const SUB_X_DIM: u64 = 0x70;
const SUB_V_DIM: u64 = 0x71;
