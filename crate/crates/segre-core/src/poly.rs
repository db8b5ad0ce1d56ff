//! Multigraded polynomials over Q and over prime fields.
//!
//! The coordinate ring of P^{n_1} x ... x P^{n_m} carries one variable
//! block per factor and a Z^m grading by block degrees. This module
//! provides exact arithmetic in that ring, the per-factor homogeneity
//! check, homogenization of an ideal to a common multidegree, and the
//! random forms (linear slices and generic combinations of generators)
//! that the counting machinery consumes.

use crate::error::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// ambient products of projective spaces
// ---------------------------------------------------------------------------

/// A product P^{n_1} x ... x P^{n_m}, m >= 1. Factor j contributes the
/// variable block x^{(j)}_0 ... x^{(j)}_{n_j}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ambient {
    factor_dims: Vec<usize>,
}

impl Ambient {
    pub fn new(factor_dims: Vec<usize>) -> Self {
        assert!(!factor_dims.is_empty(), "ambient needs at least one factor");
        Ambient { factor_dims }
    }

    /// Single projective space P^n.
    pub fn projective(n: usize) -> Self {
        Ambient::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    /// Total number of coordinate variables, sum of (n_j + 1).
    pub fn total_vars(&self) -> usize {
        self.factor_dims.iter().map(|n| n + 1).sum()
    }

    /// Dimension of the ambient variety, sum of n_j.
    pub fn dim(&self) -> usize {
        self.factor_dims.iter().sum()
    }

    /// Index range of factor j's variable block.
    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.factor_dims[..j].iter().map(|n| n + 1).sum();
        start..start + self.factor_dims[j] + 1
    }

    /// Which factor a flat variable index belongs to.
    pub fn block_of(&self, var: usize) -> usize {
        let mut acc = 0;
        for (j, n) in self.factor_dims.iter().enumerate() {
            acc += n + 1;
            if var < acc {
                return j;
            }
        }
        panic!("variable index {var} out of range");
    }

    /// The ambient of X x V constructions: every factor repeated, first
    /// copy blocks followed by second copy blocks.
    pub fn doubled(&self) -> Ambient {
        let mut f = self.factor_dims.clone();
        f.extend_from_slice(&self.factor_dims);
        Ambient::new(f)
    }

    /// Block degrees of an exponent vector.
    pub fn multidegree_of_exponent(&self, exp: &[u32]) -> Multidegree {
        debug_assert_eq!(exp.len(), self.total_vars());
        let mut d = Vec::with_capacity(self.num_factors());
        for j in 0..self.num_factors() {
            d.push(self.block_range(j).map(|v| exp[v]).sum());
        }
        Multidegree(d)
    }
}

// ---------------------------------------------------------------------------
// multidegrees
// ---------------------------------------------------------------------------

/// One block degree per factor.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn zero(m: usize) -> Self {
        Multidegree(vec![0; m])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn componentwise_max(&self, other: &Multidegree) -> Multidegree {
        Multidegree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; caller guarantees self >= other.
    pub fn sub(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// coefficients
// ---------------------------------------------------------------------------

/// Coefficient domain: exact rationals, or the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    Rat,
    Fp(u64),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rat => write!(f, "Q"),
            Domain::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// A nonzero coefficient in one of the supported domains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Rat(BigRational),
    Fp { value: u64, prime: u64 },
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(p < (1 << 32));
    (a * b) % p
}

/// Modular inverse by the extended Euclidean algorithm; `a` must be a
/// nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "inverse of a zero divisor mod {p}");
    (t0.rem_euclid(p as i128)) as u64
}

impl Coeff {
    pub fn domain(&self) -> Domain {
        match self {
            Coeff::Rat(_) => Domain::Rat,
            Coeff::Fp { prime, .. } => Domain::Fp(*prime),
        }
    }

    pub fn rat_int(n: i64) -> Coeff {
        Coeff::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn fp(value: u64, prime: u64) -> Coeff {
        Coeff::Fp {
            value: value % prime,
            prime,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Fp { value, .. } => *value == 0,
        }
    }

    pub fn one_of(domain: Domain) -> Coeff {
        match domain {
            Domain::Rat => Coeff::Rat(BigRational::one()),
            Domain::Fp(p) => Coeff::Fp { value: 1, prime: p },
        }
    }

    fn check(&self, other: &Coeff) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch(format!(
                "{} vs {}",
                self.domain(),
                other.domain()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Fp { value: a, prime }, Coeff::Fp { value: b, .. }) => Coeff::Fp {
                value: add_mod(*a, *b, *prime),
                prime: *prime,
            },
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Coeff) -> Result<Coeff> {
        self.check(other)?;
        Ok(match (self, other) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Fp { value: a, prime }, Coeff::Fp { value: b, .. }) => Coeff::Fp {
                value: mul_mod(*a, *b, *prime),
                prime: *prime,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Fp { value, prime } => Coeff::Fp {
                value: if *value == 0 { 0 } else { prime - value },
                prime: *prime,
            },
        }
    }
}

/// Reduce a rational with denominator invertible mod p to a residue.
fn rat_mod(r: &BigRational, p: u64) -> Result<u64> {
    let pp = BigInt::from(p);
    let num = ((r.numer() % &pp) + &pp) % &pp;
    let den = ((r.denom() % &pp) + &pp) % &pp;
    let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
    let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
    if den == 0 {
        return Err(Error::BadPrime(
            p,
            "a denominator vanishes modulo this prime".into(),
        ));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// A polynomial in the coordinate ring of an ambient product, stored as
/// a map from exponent vectors (length = total variables) to nonzero
/// coefficients. All coefficients of one polynomial share a domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    ambient: Ambient,
    terms: BTreeMap<Vec<u32>, Coeff>,
}

/// Result of the per-factor homogeneity check. Not being homogeneous is
/// a reportable value, not an error, so loaders can point at the exact
/// offending generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Homogeneous(Multidegree),
    NotHomogeneous,
}

impl MultiPoly {
    pub fn zero(ambient: Ambient) -> Self {
        MultiPoly {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: Ambient, c: Coeff) -> Self {
        let mut p = MultiPoly::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.ambient.total_vars()], c);
        }
        p
    }

    /// The coordinate variable with flat index `var`.
    pub fn variable(ambient: Ambient, var: usize, domain: Domain) -> Self {
        let mut exp = vec![0u32; ambient.total_vars()];
        exp[var] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Coeff::one_of(domain));
        MultiPoly { ambient, terms }
    }

    pub fn from_terms(ambient: Ambient, entries: Vec<(Vec<u32>, Coeff)>) -> Result<Self> {
        let mut p = MultiPoly::zero(ambient);
        for (exp, c) in entries {
            if exp.len() != p.ambient.total_vars() {
                return Err(Error::AmbientMismatch);
            }
            p.add_term(exp, c)?;
        }
        Ok(p)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Domain of the coefficients; `None` for the zero polynomial, which
    /// is compatible with every domain.
    pub fn domain(&self) -> Option<Domain> {
        self.terms.values().next().map(|c| c.domain())
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Coeff) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if let Some(d) = self.domain() {
            if d != c.domain() {
                return Err(Error::DomainMismatch(format!("{} vs {}", d, c.domain())));
            }
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        if let (Some(a), Some(b)) = (self.domain(), other.domain()) {
            if a != b {
                return Err(Error::DomainMismatch(format!("{a} vs {b}")));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (exp, c) in &other.terms {
            out.add_term(exp.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(self.ambient.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Result<MultiPoly> {
        if c.is_zero() {
            return Ok(MultiPoly::zero(self.ambient.clone()));
        }
        let mut out = MultiPoly::zero(self.ambient.clone());
        for (exp, v) in &self.terms {
            out.add_term(exp.clone(), v.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly> {
        let domain = self.domain().unwrap_or(Domain::Rat);
        let mut acc = MultiPoly::constant(self.ambient.clone(), Coeff::one_of(domain));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiply by a single monomial (used for homogenization padding).
    pub fn mul_monomial(&self, exp: &[u32]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ambient.clone());
        for (ea, c) in &self.terms {
            let e: Vec<u32> = ea.iter().zip(exp).map(|(x, y)| x + y).collect();
            out.terms.insert(e, c.clone());
        }
        out
    }

    /// Per-factor homogeneity check. The zero polynomial carries every
    /// multidegree at once and is rejected.
    pub fn multidegree(&self) -> Result<Homogeneity> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut it = self.terms.keys();
        let first = self.ambient.multidegree_of_exponent(it.next().unwrap());
        for exp in it {
            if self.ambient.multidegree_of_exponent(exp) != first {
                return Ok(Homogeneity::NotHomogeneous);
            }
        }
        Ok(Homogeneity::Homogeneous(first))
    }

    /// Reduce a rational-coefficient polynomial modulo p. Terms whose
    /// coefficient vanishes mod p are dropped; a polynomial already over
    /// F_p passes through only if the primes agree.
    pub fn to_fp(&self, p: u64) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.ambient.clone());
        for (exp, c) in &self.terms {
            let value = match c {
                Coeff::Rat(r) => rat_mod(r, p)?,
                Coeff::Fp { value, prime } => {
                    if *prime != p {
                        return Err(Error::DomainMismatch(format!(
                            "polynomial over F_{prime} cannot be reinterpreted over F_{p}"
                        )));
                    }
                    *value
                }
            };
            if value != 0 {
                out.terms.insert(exp.clone(), Coeff::fp(value, p));
            }
        }
        Ok(out)
    }

    /// Map a polynomial into the doubled ambient, as the `copy`-th factor
    /// group (0 = first copy blocks, 1 = second copy blocks).
    pub fn embed_in_doubled(&self, copy: usize) -> MultiPoly {
        let doubled = self.ambient.doubled();
        let nv = self.ambient.total_vars();
        let offset = copy * nv;
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut e = vec![0u32; doubled.total_vars()];
            e[offset..offset + nv].copy_from_slice(exp);
            terms.insert(e, c.clone());
        }
        MultiPoly {
            ambient: doubled,
            terms,
        }
    }

    /// Render using the given variable names, in a form the input grammar
    /// accepts back (explicit `*` and `^`, integer coefficients).
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exp, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = match c {
                Coeff::Rat(r) => (r.is_negative(), {
                    let a = r.abs();
                    if a.is_integer() {
                        a.numer().to_string()
                    } else {
                        format!("{}/{}", a.numer(), a.denom())
                    }
                }),
                Coeff::Fp { value, .. } => (false, value.to_string()),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in exp.iter().enumerate() {
                if e == 1 {
                    factors.push(names[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// graded ideals
// ---------------------------------------------------------------------------

/// A finite list of generators in one ambient. `alpha` is set exactly
/// when every generator is homogeneous of one common multidegree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedIdeal {
    ambient: Ambient,
    generators: Vec<MultiPoly>,
    alpha: Option<Multidegree>,
}

impl GradedIdeal {
    /// Build an ideal from generators; zero generators are dropped.
    pub fn new(ambient: Ambient, generators: Vec<MultiPoly>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ambient() != &ambient {
                return Err(Error::AmbientMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let mut alpha = None;
        let mut uniform = true;
        for g in &gens {
            match g.multidegree()? {
                Homogeneity::Homogeneous(d) => match &alpha {
                    None => alpha = Some(d),
                    Some(a) if *a == d => {}
                    _ => uniform = false,
                },
                Homogeneity::NotHomogeneous => uniform = false,
            }
        }
        Ok(GradedIdeal {
            ambient,
            generators: gens,
            alpha: if uniform { alpha } else { None },
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Common multidegree of the generators, when they share one.
    pub fn alpha(&self) -> Option<&Multidegree> {
        self.alpha.as_ref()
    }

    /// Append the generators of `other` (same ambient); used to form
    /// ideal sums like I_X + I_Y.
    pub fn union(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        GradedIdeal::new(self.ambient.clone(), gens)
    }

    /// Natural target multidegree: the componentwise maximum of the
    /// generators' multidegrees. Errors if a generator is not homogeneous
    /// (pointing at it) or if there are no generators.
    pub fn natural_multidegree(&self) -> Result<Multidegree> {
        if self.generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let mut d = Multidegree::zero(self.ambient.num_factors());
        for (i, g) in self.generators.iter().enumerate() {
            match g.multidegree()? {
                Homogeneity::Homogeneous(dg) => d = d.componentwise_max(&dg),
                Homogeneity::NotHomogeneous => {
                    return Err(Error::NotHomogeneousGenerator { index: i })
                }
            }
        }
        Ok(d)
    }

    /// Regenerate the ideal so every generator has the componentwise
    /// maximal multidegree of the input generators. A deficient
    /// generator w of multidegree d is replaced by the products
    /// w * prod_j (x^{(j)}_k)^{D_j - d_j}, one for every choice of a
    /// single variable per deficient factor. The result cuts out the
    /// same subscheme: both ideals have the same saturation with respect
    /// to the product of the irrelevant ideals.
    pub fn alpha_homogenize(&self) -> Result<GradedIdeal> {
        let d = self.natural_multidegree()?;
        self.alpha_homogenize_to(&d)
    }

    /// Same as [`alpha_homogenize`](Self::alpha_homogenize) but padding
    /// to a caller-chosen multidegree at or above the natural one.
    pub fn alpha_homogenize_to(&self, target: &Multidegree) -> Result<GradedIdeal> {
        let natural = self.natural_multidegree()?;
        if !natural.le(target) {
            return Err(Error::PaddingBelowNatural {
                requested: target.to_string(),
                natural: natural.to_string(),
            });
        }
        let m = self.ambient.num_factors();
        let mut out: Vec<MultiPoly> = Vec::new();
        for g in &self.generators {
            let dg = match g.multidegree()? {
                Homogeneity::Homogeneous(d) => d,
                Homogeneity::NotHomogeneous => unreachable!("checked by natural_multidegree"),
            };
            let deficit = target.sub(&dg);
            if deficit.total() == 0 {
                out.push(g.clone());
                continue;
            }
            // One padding monomial per choice of a single variable in each
            // deficient factor, raised to the missing degree.
            let deficient: Vec<usize> = (0..m).filter(|&j| deficit.0[j] > 0).collect();
            let mut choices: Vec<Vec<u32>> = vec![vec![0u32; self.ambient.total_vars()]];
            for &j in &deficient {
                let mut next = Vec::new();
                for base in &choices {
                    for v in self.ambient.block_range(j) {
                        let mut e = base.clone();
                        e[v] += deficit.0[j];
                        next.push(e);
                    }
                }
                choices = next;
            }
            for e in choices {
                out.push(g.mul_monomial(&e));
            }
        }
        GradedIdeal::new(self.ambient.clone(), out)
    }
}

// ---------------------------------------------------------------------------
// scheme specifications
// ---------------------------------------------------------------------------

/// An ideal together with the caller's assertions about the subscheme it
/// cuts out. Assertions are taken on faith; they select which theorems
/// apply and short-circuit dimension probing when a dimension is known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeSpec {
    pub ideal: GradedIdeal,
    pub asserted_irreducible: bool,
    pub asserted_variety: bool,
    /// Length of the local ring at a generic point of each top component.
    pub geometric_multiplicity: u64,
    pub asserted_dim: Option<usize>,
}

impl SchemeSpec {
    pub fn new(ideal: GradedIdeal) -> Self {
        SchemeSpec {
            ideal,
            asserted_irreducible: false,
            asserted_variety: false,
            geometric_multiplicity: 1,
            asserted_dim: None,
        }
    }

    pub fn variety(ideal: GradedIdeal) -> Self {
        SchemeSpec {
            asserted_irreducible: true,
            asserted_variety: true,
            ..SchemeSpec::new(ideal)
        }
    }

    pub fn irreducible(ideal: GradedIdeal) -> Self {
        SchemeSpec {
            asserted_irreducible: true,
            ..SchemeSpec::new(ideal)
        }
    }

    pub fn with_multiplicity(mut self, m: u64) -> Self {
        self.geometric_multiplicity = m;
        self
    }

    pub fn with_dim(mut self, d: usize) -> Self {
        self.asserted_dim = Some(d);
        self
    }

    pub fn ambient(&self) -> &Ambient {
        self.ideal.ambient()
    }

    /// Enforce the assertion invariants.
    pub fn validate(&self) -> Result<()> {
        if self.asserted_variety && (!self.asserted_irreducible || self.geometric_multiplicity != 1)
        {
            return Err(Error::InvalidScheme(
                "a variety assertion implies irreducible with multiplicity 1".into(),
            ));
        }
        if self.geometric_multiplicity == 0 {
            return Err(Error::InvalidScheme(
                "geometric multiplicity must be positive".into(),
            ));
        }
        if let Some(d) = self.asserted_dim {
            if d > self.ambient().dim() {
                return Err(Error::InvalidScheme(format!(
                    "asserted dimension {d} exceeds the ambient dimension {}",
                    self.ambient().dim()
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// random forms
// ---------------------------------------------------------------------------

/// Draw from the sampling set {1, ..., span-1} and map into the domain.
fn draw_coeff<R: Rng>(domain: Domain, span: u64, rng: &mut R) -> Coeff {
    let v = rng.gen_range(1..span);
    match domain {
        Domain::Rat => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        Domain::Fp(p) => Coeff::fp(v, p),
    }
}

/// A linear form in the variables of one factor block with coefficients
/// drawn independently and uniformly from {1, ..., span-1}. For F_p
/// coefficients `span` is the prime itself.
pub fn general_linear_form<R: Rng>(
    ambient: &Ambient,
    block: usize,
    domain: Domain,
    span: u64,
    rng: &mut R,
) -> MultiPoly {
    let mut p = MultiPoly::zero(ambient.clone());
    for v in ambient.block_range(block) {
        let mut exp = vec![0u32; ambient.total_vars()];
        exp[v] = 1;
        let c = draw_coeff(domain, span, rng);
        p.add_term(exp, c).expect("fresh terms never clash");
    }
    p
}

/// A random linear combination of generators that all share one
/// multidegree; the combination is again homogeneous of that
/// multidegree. Coefficients are drawn from {1, ..., span-1}.
pub fn general_combination<R: Rng>(
    gens: &[MultiPoly],
    span: u64,
    rng: &mut R,
) -> Result<MultiPoly> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut degree: Option<Multidegree> = None;
    for g in gens {
        match g.multidegree()? {
            Homogeneity::Homogeneous(d) => match &degree {
                None => degree = Some(d),
                Some(prev) if *prev == d => {}
                Some(prev) => {
                    return Err(Error::MixedMultidegrees(format!("{prev} vs {d}")));
                }
            },
            Homogeneity::NotHomogeneous => {
                return Err(Error::MixedMultidegrees(
                    "a generator is not homogeneous".into(),
                ))
            }
        }
    }
    let domain = gens[0].domain().expect("nonzero generators have a domain");
    let mut acc = MultiPoly::zero(gens[0].ambient().clone());
    for g in gens {
        let c = draw_coeff(domain, span, rng);
        acc = acc.add(&g.scale(&c)?)?;
    }
    Ok(acc)
}

/// Convenience: a BigInt from a possibly-large signed value.
pub fn bigint(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Sign-aware digit extraction used by a couple of renderers.
pub fn bigint_is_negative(n: &BigInt) -> bool {
    n.sign() == Sign::Minus
}
