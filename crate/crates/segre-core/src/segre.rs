//! Segre classes of pairs X ⊆ Y from projective degree tables.
//!
//! For a pair of subschemes of a product of projective spaces, the
//! counts g_a of the pair's sliced, excised systems determine the Segre
//! class s(X, Y): each slice index a contributes the deficit between
//! the count predicted by the ambient degrees alone and the observed
//! count, and a triangular recursion over slice levels converts those
//! deficits into the coefficients of s(X, Y). The recursion needs
//! degrees only at levels up to dim X; for a single projective space
//! there is also a closed form using the full table, implemented here
//! with its own counts so the two paths can serve as independent
//! cross-checks.

use crate::chow::ChowClass;
use crate::degrees::Engine;
use crate::error::{Error, Result};
use crate::poly::{Ambient, GradedIdeal, Multidegree, MultiPoly, SchemeSpec};
use num::BigInt;
use std::collections::BTreeMap;

const SUB_DIM: u64 = 0x10;
const SUB_HOST_CLASS: u64 = 0x11;
const SUB_TABLE: u64 = 0x12;
const SUB_TOP_DIM: u64 = 0x18;
const SUB_TOP_HOST_CLASS: u64 = 0x19;
const SUB_TOP_TABLE: u64 = 0x1a;
const SUB_CF_HOST_CLASS: u64 = 0x21;
const SUB_CF_TABLE: u64 = 0x22;
const SUB_LC_DIM: u64 = 0x28;
const SUB_LC_HOST_CLASS: u64 = 0x29;
const SUB_LC_TABLE: u64 = 0x2a;

/// Exponent of the point class minus a slice index: where the count at
/// slice index a lives in the Chow ring.
pub(crate) fn complement(ambient: &Ambient, a: &[u32]) -> Vec<u32> {
    ambient
        .factors()
        .iter()
        .zip(a)
        .map(|(&n, &aj)| n as u32 - aj)
        .collect()
}

/// The deficit values at the requested levels for a pair (X, Y): for
/// each slice index a,
///
///   lambda_a = integral(h^a alpha^{dim Y - |a|} [Y]) - g_a
///
/// where alpha is the common multidegree of X's generators as a divisor
/// class. `x_gens` must already share one multidegree.
#[allow(clippy::too_many_arguments)]
pub(crate) fn lambda_values(
    engine: &Engine,
    ambient: &Ambient,
    x_gens: &[MultiPoly],
    alpha: &Multidegree,
    y_gens: &[MultiPoly],
    dim_y: usize,
    y_class: &ChowClass,
    levels: &[usize],
    subtag: u64,
) -> Result<BTreeMap<Vec<u32>, BigInt>> {
    let table = engine.degree_table_levels(ambient, y_gens, x_gens, dim_y, levels, subtag)?;
    let alpha_div = ChowClass::divisor_of_multidegree(ambient, alpha);
    let mut out = BTreeMap::new();
    for (a, &g) in &table.entries {
        let level: u32 = a.iter().sum();
        let z_class = alpha_div.pow((dim_y - level as usize) as u32).mul(y_class)?;
        let z = z_class.coefficient(&complement(ambient, a));
        out.insert(a.clone(), z - BigInt::from(g));
    }
    Ok(out)
}

fn check_same_ambient(x: &SchemeSpec, y: &SchemeSpec) -> Result<()> {
    if x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// The Segre class s(X ∩ Y, Y), an element of the Chow ring of the
/// ambient product. Y must be asserted irreducible; its asserted
/// geometric multiplicity scales the result. When X contains Y's ideal
/// this is s(X, Y) itself. An empty intersection yields the zero class.
pub fn segre_class(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<ChowClass> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    if !y.asserted_irreducible {
        return Err(Error::Precondition(
            "Segre classes require the host scheme to be asserted irreducible".into(),
        ));
    }
    let ambient = x.ambient().clone();
    let x_h = x.ideal.alpha_homogenize()?;
    let alpha = x_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;

    let mut union: Vec<MultiPoly> = x_h.generators().to_vec();
    union.extend_from_slice(y.ideal.generators());
    let dim_x = match engine.dimension_of(&ambient, &union, SUB_DIM)? {
        None => return Ok(ChowClass::zero(ambient)),
        Some(d) => d,
    };

    let (dim_y, y_class) = engine.class_of(
        &ambient,
        y.ideal.generators(),
        y.asserted_dim,
        SUB_HOST_CLASS,
    )?;
    let dim_y = dim_y.ok_or_else(|| Error::InvalidScheme("host scheme is empty".into()))?;
    if dim_y < dim_x {
        return Err(Error::Precondition(format!(
            "the pair has dimension {dim_x}, exceeding the host dimension {dim_y}"
        )));
    }

    let levels: Vec<usize> = (0..=dim_x).collect();
    let lambda = lambda_values(
        engine,
        &ambient,
        x_h.generators(),
        &alpha,
        y.ideal.generators(),
        dim_y,
        &y_class,
        &levels,
        SUB_TABLE,
    )?;

    // Triangular recursion from the top level down: the deficit at a
    // slice index counts contributions from every higher-dimensional
    // piece of s, weighted by (1 + alpha)^{dim Y - level}.
    let alpha_div = ChowClass::divisor_of_multidegree(&ambient, &alpha);
    let one = ChowClass::one(ambient.clone());
    let mut s = ChowClass::zero(ambient.clone());
    for level in (0..=dim_x).rev() {
        let weight = one
            .add(&alpha_div)?
            .pow((dim_y - level) as u32)
            .mul(&s)?;
        let mut layer = ChowClass::zero(ambient.clone());
        for (a, l) in lambda.iter().filter(|(a, _)| {
            a.iter().sum::<u32>() as usize == level
        }) {
            let e = complement(&ambient, a);
            let corr = weight.coefficient(&e);
            layer = layer.add(&ChowClass::monomial(ambient.clone(), e, l - corr))?;
        }
        s = s.add(&layer)?;
    }
    Ok(s.scale(&BigInt::from(y.geometric_multiplicity)))
}

/// The deficit class Λ(X, Y) = Σ_a λ_a h^{n-a}: for each slice index a
/// of level at most dim(X ∩ Y), the count the ambient degrees alone
/// would predict minus the observed projective degree. Entries above
/// that level vanish identically and are not computed.
pub fn lambda_class(engine: &Engine, x: &GradedIdeal, y: &SchemeSpec) -> Result<ChowClass> {
    y.validate()?;
    if x.ambient() != y.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let ambient = x.ambient().clone();
    let x_h = x.alpha_homogenize()?;
    let alpha = x_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;

    let mut union: Vec<MultiPoly> = x_h.generators().to_vec();
    union.extend_from_slice(y.ideal.generators());
    let dim_x = match engine.dimension_of(&ambient, &union, SUB_LC_DIM)? {
        None => return Ok(ChowClass::zero(ambient)),
        Some(d) => d,
    };

    let (dim_y, y_class) = engine.class_of(
        &ambient,
        y.ideal.generators(),
        y.asserted_dim,
        SUB_LC_HOST_CLASS,
    )?;
    let dim_y = dim_y.ok_or_else(|| Error::InvalidScheme("host scheme is empty".into()))?;
    if dim_y < dim_x {
        return Err(Error::Precondition(format!(
            "the pair has dimension {dim_x}, exceeding the host dimension {dim_y}"
        )));
    }

    let levels: Vec<usize> = (0..=dim_x).collect();
    let lambda = lambda_values(
        engine,
        &ambient,
        x_h.generators(),
        &alpha,
        y.ideal.generators(),
        dim_y,
        &y_class,
        &levels,
        SUB_LC_TABLE,
    )?;
    let mut out = ChowClass::zero(ambient.clone());
    for (a, l) in &lambda {
        let e = complement(&ambient, a);
        out = out.add(&ChowClass::monomial(ambient.clone(), e, l.clone()))?;
    }
    Ok(out)
}

/// Only the dimension-(dim X∩Y) part of s(X ∩ Y, Y): the top level of
/// the deficit table, which needs no recursion. Much cheaper than the
/// full class when only the leading behavior matters.
pub fn segre_top_part(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<ChowClass> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    if !y.asserted_irreducible {
        return Err(Error::Precondition(
            "Segre classes require the host scheme to be asserted irreducible".into(),
        ));
    }
    let ambient = x.ambient().clone();
    let x_h = x.ideal.alpha_homogenize()?;
    let alpha = x_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;
    let mut union: Vec<MultiPoly> = x_h.generators().to_vec();
    union.extend_from_slice(y.ideal.generators());
    let dim_x = match engine.dimension_of(&ambient, &union, SUB_TOP_DIM)? {
        None => return Ok(ChowClass::zero(ambient)),
        Some(d) => d,
    };
    let (dim_y, y_class) = engine.class_of(
        &ambient,
        y.ideal.generators(),
        y.asserted_dim,
        SUB_TOP_HOST_CLASS,
    )?;
    let dim_y = dim_y.ok_or_else(|| Error::InvalidScheme("host scheme is empty".into()))?;
    if dim_y < dim_x {
        return Err(Error::Precondition(format!(
            "the pair has dimension {dim_x}, exceeding the host dimension {dim_y}"
        )));
    }
    let lambda = lambda_values(
        engine,
        &ambient,
        x_h.generators(),
        &alpha,
        y.ideal.generators(),
        dim_y,
        &y_class,
        &[dim_x],
        SUB_TOP_TABLE,
    )?;
    let mut top = ChowClass::zero(ambient.clone());
    for (a, l) in &lambda {
        top = top.add(&ChowClass::monomial(
            ambient.clone(),
            complement(&ambient, a),
            l.clone(),
        ))?;
    }
    Ok(top.scale(&BigInt::from(y.geometric_multiplicity)))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Closed form for s(X ∩ Y, Y) in a single projective space, computed
/// from the full projective degree table with its own independent
/// randomness:
///
///   s_i = sum_{j=i}^{t} C(t-i, j-i) (-d)^{j-i} (d^{t-j} deg Y - g_j)
///
/// with t = dim Y and d the common degree of X's generators. Y must be
/// asserted a variety. Serves as a cross-check of the recursion.
pub fn segre_closed_form_pn(engine: &Engine, x: &SchemeSpec, y: &SchemeSpec) -> Result<ChowClass> {
    x.validate()?;
    y.validate()?;
    check_same_ambient(x, y)?;
    let ambient = x.ambient().clone();
    if ambient.num_factors() != 1 {
        return Err(Error::SingleFactorRequired);
    }
    if !y.asserted_variety {
        return Err(Error::Precondition(
            "the closed form requires the host scheme to be asserted a variety".into(),
        ));
    }
    let n = ambient.factors()[0];
    let x_h = x.ideal.alpha_homogenize()?;
    let alpha = x_h
        .alpha()
        .cloned()
        .ok_or_else(|| Error::InvalidScheme("generators share no multidegree".into()))?;
    let d = BigInt::from(alpha.entries()[0]);

    let (dim_y, y_class) = engine.class_of(
        &ambient,
        y.ideal.generators(),
        y.asserted_dim,
        SUB_CF_HOST_CLASS,
    )?;
    let t = dim_y.ok_or_else(|| Error::InvalidScheme("host scheme is empty".into()))?;
    let deg_y = y_class.coefficient(&[(n - t) as u32]);

    let table = engine.degree_table(
        &ambient,
        y.ideal.generators(),
        x_h.generators(),
        t,
        t,
        SUB_CF_TABLE,
    )?;

    let lam = |j: usize| -> BigInt {
        let g = BigInt::from(table.get(&[j as u32]).expect("table covers 0..=t"));
        d.pow((t - j) as u32) * &deg_y - g
    };
    let mut s = ChowClass::zero(ambient.clone());
    for i in 0..=t {
        let mut si = BigInt::from(0);
        for j in i..=t {
            let sign = BigInt::from(if (j - i) % 2 == 0 { 1 } else { -1 });
            si += binomial(t - i, j - i) * (&d * sign).pow((j - i) as u32) * lam(j);
        }
        s = s.add(&ChowClass::monomial(
            ambient.clone(),
            vec![(n - i) as u32],
            si,
        ))?;
    }
    Ok(s.scale(&BigInt::from(y.geometric_multiplicity)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degrees::CountConfig;
    use crate::poly::{Domain, GradedIdeal};

    fn engine(seed: u64) -> Engine {
        Engine::new(CountConfig::new(seed)).unwrap()
    }

    fn rat_var(a: &Ambient, v: usize) -> MultiPoly {
        MultiPoly::variable(a.clone(), v, Domain::Rat)
    }

    fn whole_space(a: &Ambient) -> SchemeSpec {
        SchemeSpec::variety(GradedIdeal::new(a.clone(), vec![]).unwrap())
            .with_dim(a.dim())
    }

    #[test]
    fn hypersurface_in_projective_space() {
        // s(V(f), P^3) for a degree-2 f is 2h - 4h^2 + 8h^3
        let e = engine(3);
        let p3 = Ambient::projective(3);
        let f = rat_var(&p3, 0)
            .mul(&rat_var(&p3, 1))
            .unwrap()
            .sub(&rat_var(&p3, 2).mul(&rat_var(&p3, 3)).unwrap())
            .unwrap();
        let x = SchemeSpec::new(GradedIdeal::new(p3.clone(), vec![f]).unwrap());
        let s = segre_class(&e, &x, &whole_space(&p3)).unwrap();
        assert_eq!(s.to_string(), "8*h^3 - 4*h^2 + 2*h");
        let cf = segre_closed_form_pn(&e, &x, &whole_space(&p3)).unwrap();
        assert_eq!(s, cf);
        let top = segre_top_part(&e, &x, &whole_space(&p3)).unwrap();
        assert_eq!(top.to_string(), "2*h");
    }

    #[test]
    fn scheme_in_itself_is_its_class() {
        // s(X, X) = [X] for a hyperplane
        let e = engine(17);
        let p3 = Ambient::projective(3);
        let f = rat_var(&p3, 0).add(&rat_var(&p3, 3)).unwrap();
        let ideal = GradedIdeal::new(p3.clone(), vec![f]).unwrap();
        let x = SchemeSpec::new(ideal.clone());
        let y = SchemeSpec::variety(ideal);
        let s = segre_class(&e, &x, &y).unwrap();
        assert_eq!(s.to_string(), "h");
    }

    #[test]
    fn twisted_cubic_matches_the_closed_form() {
        // smooth rational curve of degree 3: s = 3h^2 - 10h^3
        let e = engine(29);
        let p3 = Ambient::projective(3);
        let x = |i| rat_var(&p3, i);
        let gens = vec![
            x(1).mul(&x(3)).unwrap().sub(&x(2).mul(&x(2)).unwrap()).unwrap(),
            x(0).mul(&x(3)).unwrap().sub(&x(1).mul(&x(2)).unwrap()).unwrap(),
            x(0).mul(&x(2)).unwrap().sub(&x(1).mul(&x(1)).unwrap()).unwrap(),
        ];
        let xs = SchemeSpec::new(GradedIdeal::new(p3.clone(), gens).unwrap());
        let s = segre_class(&e, &xs, &whole_space(&p3)).unwrap();
        assert_eq!(s.to_string(), "-10*h^3 + 3*h^2");
        let cf = segre_closed_form_pn(&e, &xs, &whole_space(&p3)).unwrap();
        assert_eq!(s, cf);
    }

    #[test]
    fn padded_pair_on_a_nodal_cubic() {
        // two points of a nodal cubic: X = V(x0, x1) presented in degree
        // 3 inside Y = V(x0^3 + x0^2 x2 - x1^2 x2)
        let e = engine(41);
        let p2 = Ambient::projective(2);
        let x = |i| rat_var(&p2, i);
        let cubic = x(0)
            .pow(3)
            .unwrap()
            .add(&x(0).pow(2).unwrap().mul(&x(2)).unwrap())
            .unwrap()
            .sub(&x(1).pow(2).unwrap().mul(&x(2)).unwrap())
            .unwrap();
        let xi = GradedIdeal::new(p2.clone(), vec![x(0), x(1)])
            .unwrap()
            .alpha_homogenize_to(&Multidegree(vec![3]))
            .unwrap();
        let xs = SchemeSpec::new(xi);
        let ys = SchemeSpec::variety(GradedIdeal::new(p2.clone(), vec![cubic]).unwrap());
        let s = segre_class(&e, &xs, &ys).unwrap();
        assert_eq!(s.to_string(), "2*h^2");
    }

    #[test]
    fn deficit_class_of_the_nodal_pair() {
        // same pair as above: the ambient degrees predict (9, 3) while
        // the projective degrees are (7, 3), leaving a deficit of 2 in
        // dimension zero only.
        let e = engine(43);
        let p2 = Ambient::projective(2);
        let x = |i| rat_var(&p2, i);
        let cubic = x(0)
            .pow(3)
            .unwrap()
            .add(&x(0).pow(2).unwrap().mul(&x(2)).unwrap())
            .unwrap()
            .sub(&x(1).pow(2).unwrap().mul(&x(2)).unwrap())
            .unwrap();
        let xi = GradedIdeal::new(p2.clone(), vec![x(0), x(1)])
            .unwrap()
            .alpha_homogenize_to(&Multidegree(vec![3]))
            .unwrap();
        let ys = SchemeSpec::variety(GradedIdeal::new(p2.clone(), vec![cubic]).unwrap());
        let lam = lambda_class(&e, &xi, &ys).unwrap();
        assert_eq!(lam.to_string(), "2*h^2");
    }

    #[test]
    fn empty_pair_has_zero_class() {
        let e = engine(4);
        let p2 = Ambient::projective(2);
        // V(x0, x1, x2) is empty
        let gens: Vec<MultiPoly> = (0..3).map(|i| rat_var(&p2, i)).collect();
        let xs = SchemeSpec::new(GradedIdeal::new(p2.clone(), gens).unwrap());
        let s = segre_class(&e, &xs, &whole_space(&p2)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn host_multiplicity_scales_the_class() {
        let e = engine(8);
        let p2 = Ambient::projective(2);
        let f = rat_var(&p2, 0).add(&rat_var(&p2, 1)).unwrap();
        let ideal = GradedIdeal::new(p2.clone(), vec![f]).unwrap();
        let x = SchemeSpec::new(ideal.clone());
        let y = SchemeSpec::irreducible(ideal).with_multiplicity(3);
        let s = segre_class(&e, &x, &y).unwrap();
        assert_eq!(s.to_string(), "3*h");
    }
}
