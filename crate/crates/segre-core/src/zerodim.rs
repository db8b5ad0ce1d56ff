//! Zero-dimensional polynomial systems over prime fields.
//!
//! Everything upstream reduces to one question: given an affine ideal
//! over F_p, what is the dimension of the quotient ring as an F_p vector
//! space? This module answers it with Buchberger's algorithm (degree
//! reverse lexicographic order, Gebauer-Moeller pair elimination, sugar
//! selection) followed by a staircase count of standard monomials.
//! Systems that are not zero-dimensional report [`CountResult::Infinite`]
//! instead of a number.
//!
//! Two deliberate choices shape the code. First, linear generators are
//! eliminated by substitution before any basis computation; the slicing
//! and dehomogenizing forms the callers add are all linear, so this
//! routinely removes most variables while preserving the quotient
//! dimension exactly. Second, reduced Groebner bases are canonical
//! (monic, pairwise tail-reduced, sorted by leading monomial), so the
//! computation is a pure function of the input.

use crate::error::{Error, Result};
use crate::poly::{add_mod, inv_mod, mul_mod, sub_mod, Coeff, MultiPoly};
use std::cmp::Ordering;
use std::collections::BTreeMap;

// ---------------------------------------------------------------------------
// monomials
// ---------------------------------------------------------------------------

/// An exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    exps: Vec<u32>,
    deg: u32,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Mono { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Mono {
            exps: vec![0; nvars],
            deg: 0,
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Quotient by a divisor; caller guarantees divisibility.
    pub fn div(&self, other: &Mono) -> Mono {
        debug_assert!(other.divides(self));
        Mono::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some((var, exp))` when exactly one variable appears.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut hit = None;
        for (v, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if hit.is_some() {
                    return None;
                }
                hit = Some((v, e));
            }
        }
        hit
    }

    /// Largest variable index with a nonzero exponent.
    fn max_var(&self) -> Option<usize> {
        (0..self.exps.len()).rev().find(|&v| self.exps[v] > 0)
    }
}

/// Degree reverse lexicographic order: higher total degree wins; on a
/// tie, the monomial with the smaller exponent at the last position
/// where they differ is the larger one. The last variable is therefore
/// the least, which is where callers put auxiliary variables.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for i in (0..self.exps.len()).rev() {
                if self.exps[i] != other.exps[i] {
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// polynomials over F_p
// ---------------------------------------------------------------------------

/// A polynomial over F_p with terms kept in strictly descending monomial
/// order and nonzero coefficients; the first term is the leading term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPoly {
    nvars: usize,
    prime: u64,
    terms: Vec<(Mono, u64)>,
}

impl FpPoly {
    pub fn zero(nvars: usize, prime: u64) -> Self {
        FpPoly {
            nvars,
            prime,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, prime: u64, c: u64) -> Self {
        let c = c % prime;
        let mut p = FpPoly::zero(nvars, prime);
        if c != 0 {
            p.terms.push((Mono::one(nvars), c));
        }
        p
    }

    pub fn one(nvars: usize, prime: u64) -> Self {
        FpPoly::constant(nvars, prime, 1)
    }

    pub fn variable(nvars: usize, prime: u64, var: usize) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[var] = 1;
        FpPoly {
            nvars,
            prime,
            terms: vec![(Mono::new(exps), 1)],
        }
    }

    /// Build from an exponent/coefficient map, dropping zeros.
    pub fn from_map(nvars: usize, prime: u64, map: BTreeMap<Mono, u64>) -> Self {
        let terms: Vec<(Mono, u64)> = map
            .into_iter()
            .rev()
            .filter(|(_, c)| *c % prime != 0)
            .map(|(m, c)| (m, c % prime))
            .collect();
        FpPoly {
            nvars,
            prime,
            terms,
        }
    }

    /// Reinterpret a multigraded polynomial over F_p in a flat affine
    /// variable list of size `nvars`, padding trailing exponents (the
    /// extra slots host auxiliary variables). The polynomial must carry
    /// F_p coefficients for the same prime.
    pub fn from_multipoly(mp: &MultiPoly, nvars: usize, prime: u64) -> Result<FpPoly> {
        let base = mp.ambient().total_vars();
        if base > nvars {
            return Err(Error::AmbientMismatch);
        }
        let mut map = BTreeMap::new();
        for (exp, c) in mp.terms() {
            let value = match c {
                Coeff::Fp { value, prime: q } if *q == prime => *value,
                _ => {
                    return Err(Error::DomainMismatch(format!(
                        "expected coefficients over F_{prime}"
                    )))
                }
            };
            let mut e = vec![0u32; nvars];
            e[..base].copy_from_slice(exp);
            map.insert(Mono::new(e), value);
        }
        Ok(FpPoly::from_map(nvars, prime, map))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.deg() == 0
    }

    pub fn leading(&self) -> Option<(&Mono, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, u64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg()).max().unwrap_or(0)
    }

    pub fn monic(&self) -> FpPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) if lc == 1 => self.clone(),
            Some((_, lc)) => self.scale(inv_mod(lc, self.prime)),
        }
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let c = c % self.prime;
        if c == 0 {
            return FpPoly::zero(self.nvars, self.prime);
        }
        FpPoly {
            nvars: self.nvars,
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), mul_mod(*v, c, self.prime)))
                .collect(),
        }
    }

    /// self + c * other, by merging the two sorted term lists.
    pub fn add_scaled(&self, other: &FpPoly, c: u64) -> FpPoly {
        debug_assert_eq!(self.prime, other.prime);
        debug_assert_eq!(self.nvars, other.nvars);
        let p = self.prime;
        let c = c % p;
        if c == 0 {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = mul_mod(other.terms[j].1, c, p);
                    out.push((other.terms[j].0.clone(), v));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = add_mod(self.terms[i].1, mul_mod(other.terms[j].1, c, p), p);
                    if v != 0 {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, v) in &other.terms[j..] {
            out.push((m.clone(), mul_mod(*v, c, p)));
        }
        FpPoly {
            nvars: self.nvars,
            prime: p,
            terms: out,
        }
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        self.add_scaled(other, self.prime - 1)
    }

    /// Multiply by a single term; preserves the sorted order.
    pub fn mul_term(&self, mono: &Mono, c: u64) -> FpPoly {
        let c = c % self.prime;
        if c == 0 {
            return FpPoly::zero(self.nvars, self.prime);
        }
        FpPoly {
            nvars: self.nvars,
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), mul_mod(*v, c, self.prime)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        let p = self.prime;
        let mut map: BTreeMap<Mono, u64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let v = mul_mod(*ca, *cb, p);
                let e = map.entry(m).or_insert(0);
                *e = add_mod(*e, v, p);
            }
        }
        FpPoly::from_map(self.nvars, p, map)
    }

    /// Substitute `replacement` for the variable `var`, which must not
    /// itself appear in the replacement.
    pub fn substitute(&self, var: usize, replacement: &FpPoly) -> FpPoly {
        let p = self.prime;
        // group terms by the exponent of var, with var stripped out
        let mut by_k: BTreeMap<u32, FpPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exps()[var];
            let mut e = m.exps().to_vec();
            e[var] = 0;
            let part = by_k
                .entry(k)
                .or_insert_with(|| FpPoly::zero(self.nvars, p));
            let mut map: BTreeMap<Mono, u64> = BTreeMap::new();
            map.insert(Mono::new(e), *c);
            *part = part.add(&FpPoly::from_map(self.nvars, p, map));
        }
        let mut acc = FpPoly::zero(self.nvars, p);
        let mut power = FpPoly::one(self.nvars, p);
        let mut k_done = 0u32;
        for (k, part) in by_k {
            while k_done < k {
                power = power.mul(replacement);
                k_done += 1;
            }
            acc = acc.add(&part.mul(&power));
        }
        acc
    }

    /// Mark which variables appear in this polynomial.
    pub fn mark_vars(&self, seen: &mut [bool]) {
        for (m, _) in &self.terms {
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[v] = true;
                }
            }
        }
    }

    /// Rewrite onto a smaller variable list; `map[v]` gives the new index
    /// of old variable v, and every appearing variable must be mapped.
    fn compact(&self, map: &[Option<usize>], new_nvars: usize) -> FpPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; new_nvars];
                for (v, &ex) in m.exps().iter().enumerate() {
                    if ex > 0 {
                        e[map[v].expect("active variable must be mapped")] = ex;
                    }
                }
                (Mono::new(e), *c)
            })
            .collect();
        FpPoly {
            nvars: new_nvars,
            prime: self.prime,
            terms,
        }
    }
}

// ---------------------------------------------------------------------------
// affine ideals and counting results
// ---------------------------------------------------------------------------

/// A finite generating set in F_p[x_0, ..., x_{nvars-1}].
#[derive(Clone, Debug)]
pub struct AffineIdeal {
    pub nvars: usize,
    pub prime: u64,
    pub generators: Vec<FpPoly>,
}

impl AffineIdeal {
    pub fn new(nvars: usize, prime: u64, generators: Vec<FpPoly>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::AmbientMismatch);
            }
            if g.prime() != prime {
                return Err(Error::DomainMismatch(format!(
                    "generator over F_{} in an ideal over F_{}",
                    g.prime(),
                    prime
                )));
            }
        }
        Ok(AffineIdeal {
            nvars,
            prime,
            generators,
        })
    }
}

/// Vector-space dimension of the quotient ring, or the verdict that the
/// solution set is positive-dimensional.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CountResult {
    Finite(u64),
    Infinite,
}

// ---------------------------------------------------------------------------
// reduction
// ---------------------------------------------------------------------------

/// Fully reduce `f` against a list of monic polynomials, tracking sugar
/// degrees: reducing by g via the monomial q raises the sugar to at
/// least sugar(g) + deg(q).
fn nf_sugar(f: &FpPoly, fsugar: u32, basis: &[(FpPoly, u32)]) -> (FpPoly, u32) {
    let p = f.prime;
    let nvars = f.nvars;
    let mut sugar = fsugar;
    let mut work: BTreeMap<Mono, u64> = f.terms.iter().cloned().collect();
    let mut done: Vec<(Mono, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.pop_last() {
        for (g, gsugar) in basis {
            let (glm, _) = match g.leading() {
                Some(l) => l,
                None => continue,
            };
            if glm.divides(&lm) {
                let q = lm.div(glm);
                sugar = sugar.max(gsugar + q.deg());
                // subtract lc * q * g; the head cancels by construction
                for (m, c) in g.terms.iter().skip(1) {
                    let key = m.mul(&q);
                    let delta = mul_mod(lc, *c, p);
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            let v = sub_mod(0, delta, p);
                            if v != 0 {
                                e.insert(v);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let v = sub_mod(*e.get(), delta, p);
                            if v == 0 {
                                e.remove();
                            } else {
                                *e.get_mut() = v;
                            }
                        }
                    }
                }
                continue 'outer;
            }
        }
        done.push((lm, lc));
    }
    (
        FpPoly {
            nvars,
            prime: p,
            terms: done,
        },
        sugar,
    )
}

/// The remainder of `f` on full division by `basis` (need not be a
/// Groebner basis; the result depends on the order of the list unless it
/// is one). Basis elements are used in their monic form.
pub fn normal_form(f: &FpPoly, basis: &[FpPoly]) -> FpPoly {
    let monic: Vec<(FpPoly, u32)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g.monic(), 0))
        .collect();
    nf_sugar(f, 0, &monic).0
}

/// S-polynomial of two monic polynomials.
pub fn s_polynomial(f: &FpPoly, g: &FpPoly) -> FpPoly {
    let (lf, cf) = f.leading().expect("s-polynomial of a zero polynomial");
    let (lg, cg) = g.leading().expect("s-polynomial of a zero polynomial");
    debug_assert!(cf == 1 && cg == 1, "s_polynomial expects monic inputs");
    let tau = lf.lcm(lg);
    f.mul_term(&tau.div(lf), 1).sub(&g.mul_term(&tau.div(lg), 1))
}

// ---------------------------------------------------------------------------
// Buchberger with Gebauer-Moeller pair elimination
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn make_pair(i: usize, j: usize, basis: &[(FpPoly, u32)]) -> Pair {
    let (lmi, _) = basis[i].0.leading().unwrap();
    let (lmj, _) = basis[j].0.leading().unwrap();
    let lcm = lmi.lcm(lmj);
    let sugar = (basis[i].1 + lcm.deg() - lmi.deg()).max(basis[j].1 + lcm.deg() - lmj.deg());
    Pair { i, j, lcm, sugar }
}

/// Install a new monic basis element, pruning the pair queue with the
/// three Gebauer-Moeller criteria (proper-divisor, duplicate-lcm, and
/// coprime leading terms) plus the chain rule on the surviving old pairs.
fn gm_update(basis: &mut Vec<(FpPoly, u32)>, pairs: &mut Vec<Pair>, h: FpPoly, hsugar: u32) {
    let t = basis.len();
    let lmh = h.leading().expect("basis elements are nonzero").0.clone();
    basis.push((h, hsugar));

    let cand: Vec<Pair> = (0..t).map(|i| make_pair(i, t, basis)).collect();
    // proper-divisor criterion between the new pairs
    let mut keep: Vec<bool> = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a != b
                && cand[b].lcm.divides(&cand[a].lcm)
                && cand[b].lcm != cand[a].lcm
            {
                keep[a] = false;
                break;
            }
        }
    }
    // duplicate-lcm criterion: keep the first of each equal-lcm class
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..a {
            if keep[b] && cand[b].lcm == cand[a].lcm {
                keep[a] = false;
                break;
            }
        }
    }
    // coprime criterion
    for (a, pair) in cand.iter().enumerate() {
        if keep[a] {
            let (lmi, _) = basis[pair.i].0.leading().unwrap();
            if lmi.coprime(&lmh) {
                keep[a] = false;
            }
        }
    }
    // chain rule against existing pairs
    pairs.retain(|pr| {
        let (lmi, _) = basis[pr.i].0.leading().unwrap();
        let (lmj, _) = basis[pr.j].0.leading().unwrap();
        !(lmh.divides(&pr.lcm) && lmi.lcm(&lmh) != pr.lcm && lmj.lcm(&lmh) != pr.lcm)
    });
    pairs.extend(
        cand.into_iter()
            .zip(keep)
            .filter_map(|(p, k)| if k { Some(p) } else { None }),
    );
}

/// Compute the canonical reduced Groebner basis in degree reverse
/// lexicographic order: monic generators, none with a leading monomial
/// dividing another's, every term of each fully reduced against the
/// rest, sorted by ascending leading monomial. The unit ideal yields
/// `[1]`; the zero ideal yields `[]`.
pub fn groebner_basis(ideal: &AffineIdeal) -> Vec<FpPoly> {
    let p = ideal.prime;
    let nvars = ideal.nvars;
    let unit = || vec![FpPoly::one(nvars, p)];
    let mut basis: Vec<(FpPoly, u32)> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in &ideal.generators {
        if g.is_zero() {
            continue;
        }
        let (h, hs) = nf_sugar(g, g.total_degree(), &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        gm_update(&mut basis, &mut pairs, h.monic(), hs);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| a.lcm.cmp(&b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&basis[pair.i].0, &basis[pair.j].0);
        if s.is_zero() {
            continue;
        }
        let (h, hs) = nf_sugar(&s, pair.sugar, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return unit();
        }
        gm_update(&mut basis, &mut pairs, h.monic(), hs);
    }

    // minimize: scan by ascending leading monomial, drop multiples
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| basis[a].0.leading().unwrap().0.cmp(basis[b].0.leading().unwrap().0));
    let mut minimal: Vec<FpPoly> = Vec::new();
    for idx in order {
        let lm = basis[idx].0.leading().unwrap().0;
        if !minimal
            .iter()
            .any(|g| g.leading().unwrap().0.divides(lm))
        {
            minimal.push(basis[idx].0.clone());
        }
    }
    // tail-reduce each against the others (leading terms are immune
    // because minimal leading monomials are pairwise indivisible)
    let mut reduced: Vec<FpPoly> = minimal.clone();
    for i in 0..reduced.len() {
        let others: Vec<FpPoly> = reduced
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced[i] = normal_form(&reduced[i], &others).monic();
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}

// ---------------------------------------------------------------------------
// quotient dimension
// ---------------------------------------------------------------------------

/// Dimension of F_p[x]/I as an F_p vector space, or `Infinite` when the
/// solution set is positive-dimensional.
///
/// Linear generators are first eliminated by substitution (a ring
/// isomorphism onto a polynomial ring with fewer variables, so the
/// quotient dimension is unchanged), the surviving system is compacted
/// onto the variables it actually mentions, and the staircase of the
/// reduced Groebner basis is counted. A variable that is neither
/// eliminated nor mentioned is free, which forces `Infinite` unless the
/// ideal is the unit ideal.
pub fn quotient_dimension(ideal: &AffineIdeal) -> CountResult {
    let p = ideal.prime;
    let nvars = ideal.nvars;
    let mut gens: Vec<FpPoly> = ideal
        .generators
        .iter()
        .filter(|g| !g.is_zero())
        .cloned()
        .collect();
    let mut eliminated = vec![false; nvars];

    'elim: loop {
        for gi in 0..gens.len() {
            if gens[gi].is_constant() {
                return CountResult::Finite(0);
            }
            if gens[gi].total_degree() == 1 {
                let g = gens[gi].clone();
                let (lm, lc) = g.leading().unwrap();
                let (v, _) = lm.pure_power().expect("a linear leading monomial");
                // g = lc * x_v + rest  =>  x_v := -rest / lc
                let rest = g.sub(&FpPoly::variable(nvars, p, v).scale(lc));
                let r = rest.scale(p - inv_mod(lc, p));
                let mut next: Vec<FpPoly> = Vec::with_capacity(gens.len() - 1);
                for (gj, h) in gens.iter().enumerate() {
                    if gj == gi {
                        continue;
                    }
                    let s = h.substitute(v, &r);
                    if !s.is_zero() {
                        next.push(s);
                    }
                }
                gens = next;
                eliminated[v] = true;
                continue 'elim;
            }
        }
        break;
    }

    let mut appears = vec![false; nvars];
    for g in &gens {
        g.mark_vars(&mut appears);
    }
    let free_vars = (0..nvars)
        .filter(|&v| !eliminated[v] && !appears[v])
        .count();

    if gens.is_empty() {
        return if free_vars > 0 {
            CountResult::Infinite
        } else {
            CountResult::Finite(1)
        };
    }

    // compact onto the active variables
    let mut map: Vec<Option<usize>> = vec![None; nvars];
    let mut active = 0usize;
    for v in 0..nvars {
        if appears[v] {
            map[v] = Some(active);
            active += 1;
        }
    }
    let compacted: Vec<FpPoly> = gens.iter().map(|g| g.compact(&map, active)).collect();
    let gb = groebner_basis(&AffineIdeal {
        nvars: active,
        prime: p,
        generators: compacted,
    });
    if gb.len() == 1 && gb[0].is_constant() {
        return CountResult::Finite(0);
    }
    if free_vars > 0 {
        return CountResult::Infinite;
    }
    staircase_count(&gb, active)
}

/// Count monomials outside the leading-term ideal. Requires every
/// variable to carry a pure-power leading monomial (the finiteness
/// criterion); otherwise the staircase is infinite.
fn staircase_count(gb: &[FpPoly], nvars: usize) -> CountResult {
    let lms: Vec<&Mono> = gb.iter().map(|g| g.leading().unwrap().0).collect();
    let mut bound: Vec<Option<u32>> = vec![None; nvars];
    for lm in &lms {
        if let Some((v, e)) = lm.pure_power() {
            bound[v] = Some(bound[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bound: Vec<u32> = match bound.into_iter().collect::<Option<Vec<_>>>() {
        Some(b) => b,
        None => return CountResult::Infinite,
    };
    // depth of each leading monomial: the last variable it mentions
    let depth: Vec<usize> = lms.iter().map(|m| m.max_var().unwrap_or(0)).collect();
    let mut prefix = vec![0u32; nvars];
    let alive: Vec<usize> = (0..lms.len()).collect();
    let n = dfs_count(&lms, &depth, &bound, &mut prefix, 0, &alive);
    CountResult::Finite(n)
}

fn dfs_count(
    lms: &[&Mono],
    depth: &[usize],
    bound: &[u32],
    prefix: &mut Vec<u32>,
    var: usize,
    alive: &[usize],
) -> u64 {
    if var == bound.len() {
        // every alive monomial divides the completed exponent vector
        return if alive.is_empty() { 1 } else { 0 };
    }
    let mut total = 0u64;
    for e in 0..bound[var] {
        prefix[var] = e;
        let mut next_alive = Vec::with_capacity(alive.len());
        let mut pruned = false;
        for &idx in alive {
            if lms[idx].exps()[var] <= e {
                if depth[idx] <= var {
                    // divides the prefix already, independent of the suffix
                    pruned = true;
                    break;
                }
                next_alive.push(idx);
            }
        }
        if pruned {
            continue;
        }
        total += dfs_count(lms, depth, bound, prefix, var + 1, &next_alive);
    }
    prefix[var] = 0;
    total
}

// ---------------------------------------------------------------------------
// primality
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
