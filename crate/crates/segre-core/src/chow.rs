//! The Chow ring of a product of projective spaces.
//!
//! For P^{n_1} x ... x P^{n_m} this is Z[h_1, ..., h_m] modulo the
//! relations h_j^{n_j+1} = 0, where h_j is the pullback of the
//! hyperplane class from the j-th factor. Classes are stored as integer
//! coefficient vectors over the monomial basis {h^e : e_j <= n_j}.
//! Besides ring arithmetic the module provides the pieces the rest of
//! the library leans on: integrals (the coefficient of the point class),
//! graded parts by dimension, inverses of unit power series, Chern
//! classes of complete intersections, and the pushforward and partial
//! inverse of the diagonal embedding into the doubled product.

use crate::error::{Error, Result};
use crate::poly::{Ambient, Multidegree};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// An element of the Chow ring of an ambient product, as a map from
/// truncated exponent vectors (length = number of factors, entry j at
/// most n_j) to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChowClass {
    ambient: Ambient,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ChowClass {
    pub fn zero(ambient: Ambient) -> Self {
        ChowClass {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        let m = ambient.num_factors();
        let mut c = ChowClass::zero(ambient);
        c.terms.insert(vec![0; m], BigInt::one());
        c
    }

    /// c * h^e, already reduced: exponents beyond the factor dimensions
    /// vanish silently.
    pub fn monomial(ambient: Ambient, exp: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exp.len(), ambient.num_factors());
        let mut c = ChowClass::zero(ambient);
        c.add_term(&exp, coeff);
        c
    }

    /// The hyperplane class of factor j.
    pub fn divisor(ambient: Ambient, j: usize) -> Self {
        let m = ambient.num_factors();
        let mut e = vec![0u32; m];
        e[j] = 1;
        ChowClass::monomial(ambient, e, BigInt::one())
    }

    /// The divisor class of a multidegree: sum of d_j h_j.
    pub fn divisor_of_multidegree(ambient: &Ambient, d: &Multidegree) -> Self {
        let mut acc = ChowClass::zero(ambient.clone());
        for (j, &dj) in d.entries().iter().enumerate() {
            let mut e = vec![0u32; ambient.num_factors()];
            e[j] = 1;
            acc.add_term(&e, BigInt::from(dj));
        }
        acc
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: &[u32], coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        // truncation: h_j^{n_j+1} = 0
        for (j, &n) in self.ambient.factors().iter().enumerate() {
            if exp[j] as usize > n {
                return;
            }
        }
        match self.terms.entry(exp.to_vec()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    fn check(&self, other: &ChowClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> ChowClass {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> ChowClass {
        if k.is_zero() {
            return ChowClass::zero(self.ambient.clone());
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.clone() * k;
        }
        out
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        let mut out = ChowClass::zero(self.ambient.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> ChowClass {
        let mut acc = ChowClass::one(self.ambient.clone());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// The degree of the zero-cycle part: the coefficient of the point
    /// class h_1^{n_1} ... h_m^{n_m}.
    pub fn integral(&self) -> BigInt {
        let point: Vec<u32> = self.ambient.factors().iter().map(|&n| n as u32).collect();
        self.coefficient(&point)
    }

    /// Dimension of the cycle h^e: ambient dimension minus |e|.
    pub fn term_dimension(ambient: &Ambient, exp: &[u32]) -> usize {
        ambient.dim() - exp.iter().sum::<u32>() as usize
    }

    /// The part of the class in cycle dimension d.
    pub fn dim_part(&self, d: usize) -> ChowClass {
        let mut out = ChowClass::zero(self.ambient.clone());
        for (e, c) in &self.terms {
            if ChowClass::term_dimension(&self.ambient, e) == d {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Multiplicative inverse of a class whose constant term is 1 or -1
    /// (the positive-codimension part is nilpotent, so the geometric
    /// series terminates).
    pub fn series_inverse(&self) -> Result<ChowClass> {
        let m = self.ambient.num_factors();
        let c0 = self.coefficient(&vec![0; m]);
        if !(c0.clone().abs()).is_one() {
            return Err(Error::Precondition(format!(
                "cannot invert a class with constant term {c0} over the integers"
            )));
        }
        // self = c0 (1 - n) with n of positive codimension
        let n = ChowClass::one(self.ambient.clone())
            .sub(&self.scale(&c0))
            .expect("same ambient");
        let mut acc = ChowClass::one(self.ambient.clone());
        let mut power = ChowClass::one(self.ambient.clone());
        for _ in 0..self.ambient.dim() {
            power = power.mul(&n).expect("same ambient");
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power).expect("same ambient");
        }
        Ok(acc.scale(&c0))
    }

    /// Total Chern class of (the tangent bundle of) a smooth complete
    /// intersection of hypersurfaces with the given multidegrees:
    /// prod_j (1 + h_j)^{n_j + 1} * prod_i (1 + d_i . h)^{-1},
    /// restricted to the intersection (the restriction is implicit; the
    /// class lives on the ambient product).
    pub fn chern_complete_intersection(
        ambient: &Ambient,
        hypersurfaces: &[Multidegree],
    ) -> Result<ChowClass> {
        let mut acc = ChowClass::one(ambient.clone());
        for (j, &n) in ambient.factors().iter().enumerate() {
            let f = ChowClass::one(ambient.clone())
                .add(&ChowClass::divisor(ambient.clone(), j))
                .expect("same ambient");
            acc = acc.mul(&f.pow(n as u32 + 1)).expect("same ambient");
        }
        for d in hypersurfaces {
            let f = ChowClass::one(ambient.clone())
                .add(&ChowClass::divisor_of_multidegree(ambient, d))
                .expect("same ambient");
            acc = acc.mul(&f.series_inverse()?).expect("same ambient");
        }
        Ok(acc)
    }

    /// Pushforward along the diagonal embedding of the ambient product
    /// into its double (first-copy blocks followed by second-copy
    /// blocks): h^e maps to the product over factors of
    /// sum_{i+k = e_j + n_j} h_{j,1}^i h_{j,2}^k with 0 <= i, k <= n_j.
    pub fn diagonal_pushforward(&self) -> ChowClass {
        let m = self.ambient.num_factors();
        let doubled = self.ambient.doubled();
        let mut out = ChowClass::zero(doubled.clone());
        for (e, c) in &self.terms {
            let mut acc = ChowClass::one(doubled.clone());
            for (j, &n) in self.ambient.factors().iter().enumerate() {
                let n = n as u32;
                let mut factor = ChowClass::zero(doubled.clone());
                let total = e[j] + n;
                for i in 0..=n.min(total) {
                    let k = total - i;
                    if k > n {
                        continue;
                    }
                    let mut exp = vec![0u32; 2 * m];
                    exp[j] = i;
                    exp[m + j] = k;
                    factor.add_term(&exp, BigInt::one());
                }
                acc = acc.mul(&factor).expect("same ambient");
            }
            out = out.add(&acc.scale(c)).expect("same ambient");
        }
        out
    }

    /// Partial inverse of [`diagonal_pushforward`]: `self` must live on
    /// `base.doubled()`. Returns `Ok(None)` when the class is not a
    /// pushforward from the diagonal. The candidate is read off from the
    /// coefficients at h_1^{n} (x) h_2^{e} and then checked by pushing
    /// it forward again.
    pub fn diagonal_invert(&self, base: &Ambient) -> Result<Option<ChowClass>> {
        if self.ambient != base.doubled() {
            return Err(Error::AmbientMismatch);
        }
        let m = base.num_factors();
        let mut candidate = ChowClass::zero(base.clone());
        for (e, c) in &self.terms {
            let first_full = base
                .factors()
                .iter()
                .enumerate()
                .all(|(j, &n)| e[j] as usize == n);
            if first_full {
                candidate.add_term(&e[m..], c.clone());
            }
        }
        if candidate.diagonal_pushforward() == *self {
            Ok(Some(candidate))
        } else {
            Ok(None)
        }
    }

    /// JSON rendering: exponent vectors ascending lexicographically,
    /// coefficients as bare integer literals.
    pub fn to_json_string(&self) -> String {
        let mut s = String::from("{\"ambient\":[");
        for (i, n) in self.ambient.factors().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&n.to_string());
        }
        s.push_str("],\"terms\":[");
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str("{\"exp\":[");
            for (k, x) in e.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                s.push_str(&x.to_string());
            }
            s.push_str("],\"coeff\":");
            s.push_str(&c.to_string());
            s.push('}');
        }
        s.push_str("]}");
        s
    }
}

impl fmt::Display for ChowClass {
    /// Human form: terms from lowest cycle dimension to highest (total
    /// exponent descending, ties lexicographically descending), with the
    /// hyperplane class written `h` for a single factor and `h1, h2,
    /// ...` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let single = self.ambient.num_factors() == 1;
        let mut order: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        order.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().sum();
            let db: u32 = eb.iter().sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (i, (e, c)) in order.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = if single {
                    "h".to_string()
                } else {
                    format!("h{}", j + 1)
                };
                if x == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{x}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
