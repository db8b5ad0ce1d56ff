//! The randomized counting engine.
//!
//! Every invariant in this library reduces to integers of the same
//! shape: the number of points (counted with multiplicity) in a
//! zero-dimensional system built from an ideal, some generic linear
//! slices, one generic dehomogenizing form per factor, a few generic
//! combinations of another ideal's generators, and optionally a
//! Rabinowitsch generator 1 - T*P_0 that excises the locus the
//! combinations were drawn from.
//!
//! Randomness is deterministic: every drawn coefficient comes from a
//! stream seeded by the master seed and a tag path identifying the
//! operation, the slice index, and the attempt number — never by
//! execution order — so results are reproducible under parallelism. A
//! count is accepted only when two independent attempts agree; attempts
//! alternate between two prime fields so that unlucky primes and
//! unlucky coefficient draws are both detected, and a bounded number of
//! retries separates bad luck from systematic failure.

use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::poly::{self, Ambient, Coeff, Domain, GradedIdeal, MultiPoly, SchemeSpec};
use crate::rng::{derive_rng, index_tag, DEFAULT_PRIME, SECOND_PRIME, THIRD_PRIME};
use crate::zerodim::{is_prime, quotient_dimension, AffineIdeal, CountResult, FpPoly};
use num::BigInt;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Tag for dimension probes.
pub const TAG_DIMENSION: u64 = 1;
/// Tag for multidegree (class) counts; independent of the probe path.
pub const TAG_CLASS: u64 = 2;
/// Tag for projective degree counts.
pub const TAG_PROJECTIVE: u64 = 3;
/// Tag for emptiness counts.
pub const TAG_EMPTY: u64 = 4;
/// Tag for auxiliary random draws (combination hypersurfaces).
pub const TAG_DRAW: u64 = 5;

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

/// Seed, prime pair, and retry budget shared by all counts of a run.
#[derive(Clone, Debug)]
pub struct CountConfig {
    /// Master seed; all randomness is a pure function of it.
    pub master_seed: u64,
    /// The two prime fields attempts alternate between.
    pub primes: [u64; 2],
    /// Upper bound on attempts per count (at least 2 are always made
    /// available, since acceptance requires two agreeing runs).
    pub max_attempts: u32,
}

impl CountConfig {
    pub fn new(master_seed: u64) -> Self {
        CountConfig {
            master_seed,
            primes: [DEFAULT_PRIME, SECOND_PRIME],
            max_attempts: 5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(Error::BadPrime(p, "not a prime".into()));
            }
            if p < 3 || p >= (1 << 32) {
                return Err(Error::BadPrime(
                    p,
                    "field characteristic must be an odd prime below 2^32".into(),
                ));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// system assembly
// ---------------------------------------------------------------------------

/// Recipe for one zero-dimensional count.
pub(crate) struct CountSystem<'a> {
    pub ambient: &'a Ambient,
    /// Generators included verbatim (after reduction mod p).
    pub fixed: &'a [MultiPoly],
    /// Generators, all of one multidegree, that generic combinations are
    /// drawn from.
    pub combos: &'a [MultiPoly],
    /// Number of generic linear forms per factor.
    pub slice: &'a [u32],
    /// Number of generic combinations P_1, ..., P_c to append.
    pub num_combos: usize,
    /// Append 1 - T*P_0 with a fresh combination P_0, adding the
    /// auxiliary variable T after all coordinates.
    pub rabinowitsch: bool,
}

/// Assemble the affine system over F_p. The draw order is fixed: slice
/// forms by ascending factor, dehomogenizing forms by ascending factor,
/// then P_1, ..., P_c, then P_0.
fn build_system(sys: &CountSystem, prime: u64, rng: &mut ChaCha8Rng) -> Result<AffineIdeal> {
    let m = sys.ambient.num_factors();
    let base = sys.ambient.total_vars();
    let nvars = base + usize::from(sys.rabinowitsch);
    let dom = Domain::Fp(prime);
    let mut gens: Vec<FpPoly> = Vec::new();

    for g in sys.fixed {
        let f = g.to_fp(prime)?;
        if f.is_zero() {
            return Err(Error::BadPrime(
                prime,
                "a generator vanishes modulo this prime".into(),
            ));
        }
        gens.push(FpPoly::from_multipoly(&f, nvars, prime)?);
    }

    for j in 0..m {
        for _ in 0..sys.slice[j] {
            let f = poly::general_linear_form(sys.ambient, j, dom, prime, rng);
            gens.push(FpPoly::from_multipoly(&f, nvars, prime)?);
        }
    }

    for j in 0..m {
        let f = poly::general_linear_form(sys.ambient, j, dom, prime, rng);
        let f = f.sub(&MultiPoly::constant(sys.ambient.clone(), Coeff::fp(1, prime)))?;
        gens.push(FpPoly::from_multipoly(&f, nvars, prime)?);
    }

    if sys.num_combos > 0 || sys.rabinowitsch {
        if sys.combos.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let combos_fp: Vec<MultiPoly> = sys
            .combos
            .iter()
            .map(|g| g.to_fp(prime))
            .collect::<Result<_>>()?;
        if combos_fp.iter().any(|g| g.is_zero()) {
            return Err(Error::BadPrime(
                prime,
                "a generator vanishes modulo this prime".into(),
            ));
        }
        for _ in 0..sys.num_combos {
            let p = poly::general_combination(&combos_fp, prime, rng)?;
            gens.push(FpPoly::from_multipoly(&p, nvars, prime)?);
        }
        if sys.rabinowitsch {
            let p0 = poly::general_combination(&combos_fp, prime, rng)?;
            let p0 = FpPoly::from_multipoly(&p0, nvars, prime)?;
            let t = FpPoly::variable(nvars, prime, base);
            gens.push(FpPoly::one(nvars, prime).sub(&t.mul(&p0)));
        }
    }

    AffineIdeal::new(nvars, prime, gens)
}

// ---------------------------------------------------------------------------
// index enumeration
// ---------------------------------------------------------------------------

/// All slice indices a with a_j <= n_j and |a| = total, in ascending
/// lexicographic order.
pub fn multi_indices(ambient: &Ambient, total: usize) -> Vec<Vec<u32>> {
    fn rec(factors: &[usize], total: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if factors.is_empty() {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let budget: usize = factors[1..].iter().sum();
        let lo = total.saturating_sub(budget);
        let hi = factors[0].min(total);
        for v in lo..=hi {
            prefix.push(v as u32);
            rec(&factors[1..], total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(ambient.factors(), total, &mut prefix, &mut out);
    out
}

// ---------------------------------------------------------------------------
// the engine
// ---------------------------------------------------------------------------

/// Shared handle for all counting operations of a run.
pub struct Engine {
    config: CountConfig,
}

impl Engine {
    pub fn new(config: CountConfig) -> Result<Engine> {
        config.validate()?;
        Ok(Engine { config })
    }

    pub fn config(&self) -> &CountConfig {
        &self.config
    }

    fn attempt(
        &self,
        prime: u64,
        tags: &[u64],
        attempt: u32,
        sys: &CountSystem,
    ) -> Result<CountResult> {
        let mut path = tags.to_vec();
        path.push(u64::from(attempt));
        let mut rng = derive_rng(self.config.master_seed, &path);
        let ideal = build_system(sys, prime, &mut rng)?;
        Ok(quotient_dimension(&ideal))
    }

    /// Run the count until two attempts agree on a finite value.
    /// Attempt i draws fresh coefficients and works over primes[i % 2];
    /// a prime that divides a denominator or kills a generator falls
    /// back to a reserve prime for that attempt.
    pub(crate) fn agreed_count(
        &self,
        context: &str,
        tags: &[u64],
        sys: &CountSystem,
    ) -> Result<u64> {
        let attempts = self.config.max_attempts.max(2);
        let mut observed: Vec<String> = Vec::new();
        let mut seen: Vec<u64> = Vec::new();
        for attempt in 0..attempts {
            let prime = self.config.primes[attempt as usize % 2];
            let outcome = match self.attempt(prime, tags, attempt, sys) {
                Ok(c) => c,
                Err(Error::BadPrime(..)) if prime != THIRD_PRIME => {
                    self.attempt(THIRD_PRIME, tags, attempt, sys)?
                }
                Err(e) => return Err(e),
            };
            match outcome {
                CountResult::Infinite => observed.push("infinite".to_string()),
                CountResult::Finite(n) => {
                    if seen.contains(&n) {
                        return Ok(n);
                    }
                    seen.push(n);
                    observed.push(n.to_string());
                }
            }
        }
        Err(Error::GenericityExhausted {
            context: context.to_string(),
            observed,
            attempts,
        })
    }

    /// Dimension of the subscheme cut out by `gens`, or `None` when it
    /// is empty. Probes descend from the ambient dimension: the first
    /// level at which some generic slice meets the scheme in finitely
    /// many (and at least one) points is the dimension.
    pub fn dimension_of(
        &self,
        ambient: &Ambient,
        gens: &[MultiPoly],
        subtag: u64,
    ) -> Result<Option<usize>> {
        for level in (0..=ambient.dim()).rev() {
            let counts = self.level_counts(ambient, gens, level, &[TAG_DIMENSION, subtag])?;
            if counts.iter().any(|(_, c)| *c > 0) {
                return Ok(Some(level));
            }
        }
        Ok(None)
    }

    fn level_counts(
        &self,
        ambient: &Ambient,
        gens: &[MultiPoly],
        level: usize,
        tags: &[u64],
    ) -> Result<Vec<(Vec<u32>, u64)>> {
        let indices = multi_indices(ambient, level);
        indices
            .into_par_iter()
            .map(|a| {
                let mut path = tags.to_vec();
                path.push(index_tag(&a));
                let sys = CountSystem {
                    ambient,
                    fixed: gens,
                    combos: &[],
                    slice: &a,
                    num_combos: 0,
                    rabinowitsch: false,
                };
                let c = self.agreed_count("slice count", &path, &sys)?;
                Ok((a, c))
            })
            .collect()
    }

    /// The class of the subscheme cut out by `gens` in the Chow ring of
    /// the ambient product — the counts of its generic slices at its own
    /// dimension, with multiplicity. Returns the dimension alongside
    /// (`None` and the zero class for an empty scheme). An asserted
    /// dimension skips the probes; the counts themselves use a tag path
    /// independent of how the dimension was found.
    pub fn class_of(
        &self,
        ambient: &Ambient,
        gens: &[MultiPoly],
        asserted_dim: Option<usize>,
        subtag: u64,
    ) -> Result<(Option<usize>, ChowClass)> {
        let dim = match asserted_dim {
            Some(d) => Some(d),
            None => self.dimension_of(ambient, gens, subtag)?,
        };
        let d = match dim {
            None => return Ok((None, ChowClass::zero(ambient.clone()))),
            Some(d) => d,
        };
        let counts = self.level_counts(ambient, gens, d, &[TAG_CLASS, subtag])?;
        let mut class = ChowClass::zero(ambient.clone());
        for (a, c) in counts {
            let e: Vec<u32> = ambient
                .factors()
                .iter()
                .zip(&a)
                .map(|(&n, &aj)| n as u32 - aj)
                .collect();
            class = class.add(&ChowClass::monomial(
                ambient.clone(),
                e,
                BigInt::from(c),
            ))?;
        }
        Ok((Some(d), class))
    }

    /// Projective degrees of the pair (X, Y) at the given levels: for a
    /// slice index a, the number of points of Y, sliced by a generic
    /// L^a and by dim Y - |a| generic combinations of X's generators,
    /// that lie off a further generic combination hypersurface.
    pub fn degree_table_levels(
        &self,
        ambient: &Ambient,
        y_gens: &[MultiPoly],
        x_combo_gens: &[MultiPoly],
        dim_y: usize,
        levels: &[usize],
        subtag: u64,
    ) -> Result<DegreeTable> {
        let mut wanted: Vec<Vec<u32>> = Vec::new();
        for &level in levels {
            if level > dim_y {
                continue;
            }
            wanted.extend(multi_indices(ambient, level));
        }
        let entries: Vec<(Vec<u32>, u64)> = wanted
            .into_par_iter()
            .map(|a| {
                let total: u32 = a.iter().sum();
                let sys = CountSystem {
                    ambient,
                    fixed: y_gens,
                    combos: x_combo_gens,
                    slice: &a,
                    num_combos: dim_y - total as usize,
                    rabinowitsch: true,
                };
                let path = [TAG_PROJECTIVE, subtag, index_tag(&a)];
                let g = self.agreed_count("projective degree", &path, &sys)?;
                Ok((a, g))
            })
            .collect::<Result<_>>()?;
        Ok(DegreeTable {
            ambient: ambient.clone(),
            dim_y,
            entries: entries.into_iter().collect(),
        })
    }

    /// Projective degrees at every level up to `bound` (inclusive),
    /// capped by dim Y.
    pub fn degree_table(
        &self,
        ambient: &Ambient,
        y_gens: &[MultiPoly],
        x_combo_gens: &[MultiPoly],
        dim_y: usize,
        bound: usize,
        subtag: u64,
    ) -> Result<DegreeTable> {
        let levels: Vec<usize> = (0..=bound.min(dim_y)).collect();
        self.degree_table_levels(ambient, y_gens, x_combo_gens, dim_y, &levels, subtag)
    }

    /// A single projective degree g_a(X, Y). `x` must already be
    /// alpha-homogeneous (its generators share one multidegree); the
    /// host's dimension is probed unless asserted.
    pub fn projective_degree(
        &self,
        x: &GradedIdeal,
        y: &SchemeSpec,
        a: &[u32],
    ) -> Result<u64> {
        y.validate()?;
        if x.ambient() != y.ambient() {
            return Err(Error::AmbientMismatch);
        }
        if x.alpha().is_none() {
            return Err(Error::MixedMultidegrees(
                "projective degrees need generators of one shared multidegree".into(),
            ));
        }
        let ambient = x.ambient();
        if a.len() != ambient.num_factors() {
            return Err(Error::InvalidSliceIndex {
                index: format!("{a:?}"),
                bound: ambient.num_factors(),
            });
        }
        for (j, (&aj, &nj)) in a.iter().zip(ambient.factors()).enumerate() {
            if aj as usize > nj {
                return Err(Error::InvalidSliceIndex {
                    index: format!("factor {j} of {a:?}"),
                    bound: nj,
                });
            }
        }
        let dim_y = match y.asserted_dim {
            Some(d) => d,
            None => self
                .dimension_of(ambient, y.ideal.generators(), TAG_PROJECTIVE)?
                .ok_or_else(|| Error::Precondition("the host scheme is empty".into()))?,
        };
        let total: u32 = a.iter().sum();
        if total as usize > dim_y {
            return Err(Error::InvalidSliceIndex {
                index: format!("{a:?}"),
                bound: dim_y,
            });
        }
        let sys = CountSystem {
            ambient,
            fixed: y.ideal.generators(),
            combos: x.generators(),
            slice: a,
            num_combos: dim_y - total as usize,
            rabinowitsch: true,
        };
        let path = [TAG_PROJECTIVE, 0, index_tag(a)];
        self.agreed_count("projective degree", &path, &sys)
    }

    /// A deterministic stream for auxiliary draws (e.g. the combination
    /// hypersurfaces the containment tests build), derived from the
    /// master seed and a tag path.
    pub fn draw_rng(&self, tags: &[u64]) -> ChaCha8Rng {
        let mut path = vec![TAG_DRAW];
        path.extend_from_slice(tags);
        derive_rng(self.config.master_seed, &path)
    }

    /// Sampling span for coefficient draws over the rationals.
    pub fn rational_span(&self) -> u64 {
        self.config.primes[0]
    }
}

// ---------------------------------------------------------------------------
// degree tables
// ---------------------------------------------------------------------------

/// Projective degrees g_a indexed by slice index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub ambient: Ambient,
    pub dim_y: usize,
    pub entries: BTreeMap<Vec<u32>, u64>,
}

impl DegreeTable {
    /// All computed entries, keyed by slice index in lexicographic
    /// order.
    pub fn entries(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.entries
    }

    pub fn get(&self, a: &[u32]) -> Option<u64> {
        self.entries.get(a).copied()
    }

    /// The class G = sum of g_a h^{n-a} collecting the table.
    pub fn shadow_class(&self) -> ChowClass {
        let mut class = ChowClass::zero(self.ambient.clone());
        for (a, &g) in &self.entries {
            let e: Vec<u32> = self
                .ambient
                .factors()
                .iter()
                .zip(a)
                .map(|(&n, &aj)| n as u32 - aj)
                .collect();
            class = class
                .add(&ChowClass::monomial(
                    self.ambient.clone(),
                    e,
                    BigInt::from(g),
                ))
                .expect("same ambient");
        }
        class
    }
}
