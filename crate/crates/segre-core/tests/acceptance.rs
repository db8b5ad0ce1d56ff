//! Acceptance gate for the workspace. Each numbered criterion is a
//! worked computation with frozen exact values, checked at integer
//! equality, plus randomized property suites. Every criterion reports
//! one `PASS:`/`FAIL:` line (visible with `--nocapture`); a failure
//! also fails the test in the usual way.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use segre_core::rng::{DEFAULT_PRIME, SECOND_PRIME};
use segre_core::zerodim::{groebner_basis, normal_form, s_polynomial, AffineIdeal, FpPoly, Mono};
use segre_core::{
    contains, diagonal_ideal, embed_product, in_singular_locus, intersection_product, is_empty,
    lambda_class, multiplicity, segre_class, segre_closed_form_pn, Ambient, CISpec, ChowClass,
    Coeff, CountConfig, Domain, Engine, GradedIdeal, Multidegree, MultiPoly, SchemeSpec, Verdict,
    WitnessValue,
};

fn check(number: u32, what: &str, f: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => println!("PASS: criterion {number} — {what} ({secs:.2}s)"),
        Err(cause) => {
            println!("FAIL: criterion {number} — {what} ({secs:.2}s)");
            resume_unwind(cause);
        }
    }
}

fn engine(seed: u64) -> Engine {
    Engine::new(CountConfig::new(seed)).expect("default configuration is valid")
}

/// Builds a polynomial with rational coefficients from (coefficient,
/// exponent vector) pairs.
fn poly(ambient: &Ambient, terms: &[(i64, &[u32])]) -> MultiPoly {
    MultiPoly::from_terms(
        ambient.clone(),
        terms
            .iter()
            .map(|(c, e)| (e.to_vec(), Coeff::rat_int(*c)))
            .collect(),
    )
    .expect("term list is well formed")
}

fn var(ambient: &Ambient, i: usize) -> MultiPoly {
    MultiPoly::variable(ambient.clone(), i, Domain::Rat)
}

/// Builds a Chow class from (coefficient, exponent vector) pairs.
fn class(ambient: &Ambient, terms: &[(i64, &[u32])]) -> ChowClass {
    let mut acc = ChowClass::zero(ambient.clone());
    for (c, e) in terms {
        acc = acc
            .add(&ChowClass::monomial(
                ambient.clone(),
                e.to_vec(),
                BigInt::from(*c),
            ))
            .expect("same ambient");
    }
    acc
}

fn ideal(ambient: &Ambient, gens: Vec<MultiPoly>) -> GradedIdeal {
    GradedIdeal::new(ambient.clone(), gens).expect("generators are well formed")
}

fn witness_int(v: &Verdict, key: &str) -> BigInt {
    for (k, w) in &v.witness {
        if k == key {
            if let WitnessValue::Int(n) = w {
                return n.clone();
            }
        }
    }
    panic!("verdict has no integer witness named `{key}`");
}

fn witness_class(v: &Verdict, key: &str) -> ChowClass {
    for (k, w) in &v.witness {
        if k == key {
            if let WitnessValue::Class(c) = w {
                return c.clone();
            }
        }
    }
    panic!("verdict has no class witness named `{key}`");
}

/// All exponent vectors of the given multidegree, one block per factor.
fn monomials_of(ambient: &Ambient, degree: &[u32]) -> Vec<Vec<u32>> {
    fn block(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
        if nvars == 1 {
            return vec![vec![deg]];
        }
        let mut out = Vec::new();
        for first in 0..=deg {
            for mut rest in block(nvars - 1, deg - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for (j, &n) in ambient.factors().iter().enumerate() {
        let choices = block(n + 1, degree[j]);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for prefix in &acc {
            for choice in &choices {
                let mut e = prefix.clone();
                e.extend_from_slice(choice);
                next.push(e);
            }
        }
        acc = next;
    }
    acc
}

/// A dense form of the given multidegree with nonzero random
/// coefficients in ±1..=9.
fn random_form(ambient: &Ambient, degree: &[u32], rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = monomials_of(ambient, degree)
        .into_iter()
        .map(|e| {
            let mag: i64 = rng.gen_range(1..=9);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            (e, Coeff::rat_int(mag * sign))
        })
        .collect();
    MultiPoly::from_terms(ambient.clone(), terms).expect("dense form is well formed")
}

// ---------------------------------------------------------------------------
// criterion 1: a point on a plane nodal cubic
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_plane_nodal_cubic() {
    check(1, "plane nodal cubic degree table and deficit class", || {
        let amb = Ambient::projective(2);
        let eng = engine(101);
        // X is the node (0:0:1) of Y = V(x0^3 + x0^2 x2 - x1^2 x2).
        let x = ideal(&amb, vec![var(&amb, 0), var(&amb, 1)]);
        let cubic = poly(&amb, &[(1, &[3, 0, 0]), (1, &[2, 0, 1]), (-1, &[0, 2, 1])]);
        let y = SchemeSpec::variety(ideal(&amb, vec![cubic]));

        // Presented by cubics, the slice degrees are 7 and 3.
        let x3 = x.alpha_homogenize_to(&Multidegree(vec![3])).unwrap();
        assert_eq!(eng.projective_degree(&x3, &y, &[0]).unwrap(), 7);
        assert_eq!(eng.projective_degree(&x3, &y, &[1]).unwrap(), 3);

        let table = eng
            .degree_table(&amb, y.ideal.generators(), x3.generators(), 1, 1, 0x90)
            .unwrap();
        assert_eq!(
            table.shadow_class(),
            class(&amb, &[(7, &[2]), (3, &[1])]),
            "shadow of the graph"
        );

        let lambda = lambda_class(&eng, &x3, &y).unwrap();
        assert_eq!(lambda, class(&amb, &[(2, &[2])]), "deficit class");
    });
}

// ---------------------------------------------------------------------------
// criterion 2: a divisor on a threefold in P^2 x P^3
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_divisor_in_a_product() {
    check(2, "bigraded degree table and deficit class in P2 x P3", || {
        let amb = Ambient::new(vec![2, 3]);
        let eng = engine(102);
        // Variables: x0 x1 x2 | y0 y1 y2 y3.
        let g1 = poly(
            &amb,
            &[(1, &[1, 0, 1, 1, 0, 0, 0]), (-1, &[0, 2, 0, 0, 0, 1, 0])],
        );
        let g2 = poly(&amb, &[(1, &[0, 0, 0, 0, 0, 0, 1])]);
        let divisor = poly(
            &amb,
            &[(1, &[0, 1, 0, 0, 0, 1, 0]), (1, &[1, 0, 0, 1, 0, 0, 0])],
        );
        let y = SchemeSpec::variety(ideal(&amb, vec![g1.clone(), g2.clone()])).with_dim(3);
        let x = ideal(&amb, vec![g1, g2, divisor]);

        assert_eq!(
            eng.class_of(&amb, y.ideal.generators(), y.asserted_dim, 0x91)
                .unwrap()
                .1,
            class(&amb, &[(2, &[1, 1]), (1, &[0, 2])]),
            "host class"
        );

        let x_h = x.alpha_homogenize().unwrap();
        assert_eq!(x_h.alpha().unwrap(), &Multidegree(vec![2, 1]));
        let table = eng
            .degree_table(&amb, y.ideal.generators(), x_h.generators(), 3, 3, 0x92)
            .unwrap();
        let expected: &[(&[u32], u64)] = &[
            (&[0, 0], 0),
            (&[1, 0], 0),
            (&[0, 1], 1),
            (&[2, 0], 0),
            (&[1, 1], 1),
            (&[0, 2], 2),
            (&[2, 1], 1),
            (&[1, 2], 2),
            (&[0, 3], 0),
        ];
        assert_eq!(table.entries().len(), expected.len());
        for (a, g) in expected {
            assert_eq!(table.get(a), Some(*g), "slice degree at {a:?}");
        }
        assert_eq!(
            table.shadow_class(),
            class(
                &amb,
                &[
                    (1, &[2, 2]),
                    (1, &[1, 2]),
                    (2, &[2, 1]),
                    (1, &[0, 2]),
                    (2, &[1, 1]),
                ]
            ),
            "shadow of the graph"
        );

        let lambda = lambda_class(&eng, &x, &y).unwrap();
        assert_eq!(
            lambda,
            class(
                &amb,
                &[
                    (24, &[2, 3]),
                    (11, &[2, 2]),
                    (6, &[1, 3]),
                    (2, &[2, 1]),
                    (3, &[1, 2]),
                    (1, &[0, 3]),
                ]
            ),
            "deficit class"
        );
    });
}

// ---------------------------------------------------------------------------
// criterion 3: the twisted cubic inside its double
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_twisted_cubic_multiplicity() {
    check(3, "twisted cubic in its double: class, cone class, multiplicity", || {
        let amb = Ambient::projective(3);
        let eng = engine(103);
        let (x, y, z, w) = (var(&amb, 0), var(&amb, 1), var(&amb, 2), var(&amb, 3));
        let cubic = SchemeSpec::variety(ideal(
            &amb,
            vec![
                y.mul(&w).unwrap().sub(&z.mul(&z).unwrap()).unwrap(),
                x.mul(&w).unwrap().sub(&y.mul(&z).unwrap()).unwrap(),
                x.mul(&z).unwrap().sub(&y.mul(&y).unwrap()).unwrap(),
            ],
        ));
        let double = SchemeSpec::irreducible(ideal(
            &amb,
            vec![
                poly(
                    &amb,
                    &[
                        (2, &[0, 1, 1, 1]),
                        (-1, &[0, 0, 3, 0]),
                        (-1, &[1, 0, 0, 2]),
                    ],
                ),
                poly(&amb, &[(1, &[1, 0, 1, 0]), (-1, &[0, 2, 0, 0])]),
            ],
        ));

        let x_class = eng
            .class_of(&amb, cubic.ideal.generators(), None, 0x93)
            .unwrap()
            .1;
        assert_eq!(x_class, class(&amb, &[(3, &[2])]), "cycle class of the curve");

        let cone = segre_class(&eng, &cubic, &double).unwrap();
        assert_eq!(cone, class(&amb, &[(6, &[2])]), "cone class");

        // The multiplicity both by the slice-count formula and as the
        // ratio of the cone class to the cycle class.
        assert_eq!(multiplicity(&eng, &cubic, &double).unwrap(), 2);
        let ratio = cone.coefficient(&[2]) / x_class.coefficient(&[2]);
        assert_eq!(ratio, BigInt::from(2));
    });
}

// ---------------------------------------------------------------------------
// criterion 4: a line in the singular locus of a determinantal surface
// ---------------------------------------------------------------------------

/// The sixteen 3x3 minors of the 4x4 matrix with the given rows.
fn minors_3x3(rows: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    fn det3(m: [[&MultiPoly; 3]; 3]) -> MultiPoly {
        let mut acc = m[0][0]
            .mul(
                &m[1][1]
                    .mul(m[2][2])
                    .unwrap()
                    .sub(&m[1][2].mul(m[2][1]).unwrap())
                    .unwrap(),
            )
            .unwrap();
        acc = acc
            .sub(
                &m[0][1]
                    .mul(
                        &m[1][0]
                            .mul(m[2][2])
                            .unwrap()
                            .sub(&m[1][2].mul(m[2][0]).unwrap())
                            .unwrap(),
                    )
                    .unwrap(),
            )
            .unwrap();
        acc.add(
            &m[0][2]
                .mul(
                    &m[1][0]
                        .mul(m[2][1])
                        .unwrap()
                        .sub(&m[1][1].mul(m[2][0]).unwrap())
                        .unwrap(),
                )
                .unwrap(),
        )
        .unwrap()
    }
    let mut out = Vec::with_capacity(16);
    for rows_pick in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        for cols_pick in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            out.push(det3([
                [
                    &rows[rows_pick[0]][cols_pick[0]],
                    &rows[rows_pick[0]][cols_pick[1]],
                    &rows[rows_pick[0]][cols_pick[2]],
                ],
                [
                    &rows[rows_pick[1]][cols_pick[0]],
                    &rows[rows_pick[1]][cols_pick[1]],
                    &rows[rows_pick[1]][cols_pick[2]],
                ],
                [
                    &rows[rows_pick[2]][cols_pick[0]],
                    &rows[rows_pick[2]][cols_pick[1]],
                    &rows[rows_pick[2]][cols_pick[2]],
                ],
            ]));
        }
    }
    out
}

#[test]
fn criterion_4_determinantal_surface_singular_locus() {
    check(4, "line in the singular locus of a degree-20 surface in P6", || {
        let amb = Ambient::projective(6);
        let eng = engine(104);
        let v = |i: usize| var(&amb, i);
        let s = |c: i64, i: usize| {
            let mut e = vec![0u32; 7];
            e[i] = 1;
            poly(&amb, &[(c, &e)])
        };
        let rows = vec![
            vec![v(0), v(1), v(2), v(3)],
            vec![s(3, 3), s(4, 4), s(5, 5), s(6, 6)],
            vec![v(2), v(3), v(4), v(5)],
            vec![
                v(0).add(&s(5, 1)).unwrap(),
                v(1).add(&s(6, 2)).unwrap(),
                v(2).add(&s(7, 3)).unwrap(),
                v(3).add(&s(8, 4)).unwrap(),
            ],
        ];
        let surface = SchemeSpec::irreducible(ideal(&amb, minors_3x3(&rows))).with_dim(2);
        let line =
            SchemeSpec::variety(ideal(&amb, (0..5).map(v).collect::<Vec<_>>())).with_dim(1);

        // The single dimension-1 slice degree of the line presented by
        // cubics, inside the surface.
        let line_cubed = line
            .ideal
            .alpha_homogenize_to(&Multidegree(vec![3]))
            .unwrap();
        assert_eq!(eng.projective_degree(&line_cubed, &surface, &[1]).unwrap(), 58);

        assert_eq!(multiplicity(&eng, &line, &surface).unwrap(), 2);

        let verdict = in_singular_locus(&eng, &line, &surface).unwrap();
        assert!(verdict.answer, "the line lies in the singular locus");
    });
}

// ---------------------------------------------------------------------------
// criterion 5: products of ruling lines on a smooth quadric surface
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_quadric_intersection_products() {
    check(5, "ruling-line products on the smooth quadric in P3", || {
        let amb = Ambient::projective(3);
        let eng = engine(105);
        let (x, y, z, w) = (var(&amb, 0), var(&amb, 1), var(&amb, 2), var(&amb, 3));
        let q = x.mul(&y).unwrap().sub(&z.mul(&w).unwrap()).unwrap();
        let host = CISpec::new(amb.clone(), vec![q]).unwrap();
        let l = SchemeSpec::variety(ideal(&amb, vec![x.clone(), w.clone()]));
        let k = SchemeSpec::variety(ideal(&amb, vec![y.clone(), w.clone()]));

        assert_eq!(
            host.tangent_chern().unwrap(),
            class(&amb, &[(1, &[0]), (2, &[1]), (2, &[2])]),
            "tangent class of the quadric"
        );

        // The diagonal-restricted cone classes behind the two products.
        let diag = diagonal_ideal(&amb).unwrap();
        let inverted = |a: &SchemeSpec, b: &SchemeSpec| {
            let product = embed_product(&a.ideal, &b.ideal).unwrap();
            let s = segre_class(
                &eng,
                &SchemeSpec::new(diag.clone()),
                &SchemeSpec::variety(product).with_dim(2),
            )
            .unwrap();
            s.diagonal_invert(&amb).unwrap().expect("class is a pushforward")
        };
        assert_eq!(inverted(&l, &k), class(&amb, &[(1, &[3])]));
        assert_eq!(inverted(&l, &l), class(&amb, &[(1, &[2]), (-2, &[3])]));

        assert_eq!(
            intersection_product(&eng, &l, &k, &host).unwrap(),
            class(&amb, &[(1, &[3])]),
            "opposite rulings meet in a point"
        );
        assert_eq!(
            intersection_product(&eng, &l, &l, &host).unwrap(),
            ChowClass::zero(amb.clone()),
            "a ruling is self-orthogonal"
        );
    });
}

// ---------------------------------------------------------------------------
// criterion 6: containment of threefolds in P^2 x P^2 x P^2
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_triple_product_containment() {
    check(6, "containment via multiplicity 2 in P2 x P2 x P2", || {
        let amb = Ambient::new(vec![2, 2, 2]);
        let eng = engine(106);
        // Variables: x0 x1 x2 | y0 y1 y2 | z0 z1 z2.
        let tri = |c: i64, xi: usize, yj: usize, zk: usize| {
            let mut e = vec![0u32; 9];
            e[xi] = 1;
            e[3 + yj] = 1;
            e[6 + zk] = 1;
            poly(&amb, &[(c, &e)])
        };
        let join = |parts: Vec<MultiPoly>| {
            parts
                .into_iter()
                .reduce(|a, b| a.add(&b).unwrap())
                .unwrap()
        };
        let f1 = join(vec![
            tri(-10, 2, 1, 0),
            tri(2, 1, 2, 0),
            tri(35, 2, 0, 1),
            tri(-7, 0, 2, 1),
            tri(-25, 1, 0, 2),
            tri(25, 0, 1, 2),
        ]);
        let f2 = join(vec![
            tri(9, 2, 1, 0),
            tri(-9, 1, 2, 0),
            tri(-4, 2, 0, 1),
            tri(4, 0, 2, 1),
            tri(3, 1, 0, 2),
            tri(-3, 0, 1, 2),
        ]);
        // A fixed dense trilinear form standing in for a general one.
        let f_coeffs: [i64; 27] = [
            3, -7, 5, 2, 9, -4, 8, -1, 6, -5, 4, 11, -9, 2, 7, -3, 10, 1, -8, 6, -2, 13, 5, -6, 9,
            -11, 4,
        ];
        let mut f_terms = Vec::new();
        let mut idx = 0;
        for xi in 0..3 {
            for yj in 0..3 {
                for zk in 0..3 {
                    f_terms.push(tri(f_coeffs[idx], xi, yj, zk));
                    idx += 1;
                }
            }
        }
        let f = join(f_terms);

        let mut x_gens = Vec::new();
        for yj in 0..3 {
            let y_var = var(&amb, 3 + yj);
            x_gens.push(y_var.mul(&f1).unwrap());
            x_gens.push(y_var.mul(&f2).unwrap());
        }
        x_gens.push(f.clone());
        let x = SchemeSpec::variety(ideal(&amb, x_gens)).with_dim(3);

        let z0 = var(&amb, 6);
        let z1 = var(&amb, 7);
        let y_gen = z0.mul(&f1).unwrap().sub(&z1.mul(&f2).unwrap()).unwrap();
        let y = SchemeSpec::new(ideal(&amb, vec![y_gen, f])).with_dim(4);

        let verdict = contains(&eng, &x, &y).unwrap();
        assert_eq!(witness_int(&verdict, "multiplicity"), BigInt::from(2));
        assert!(verdict.answer, "the threefold lies in the fourfold");
    });
}

// ---------------------------------------------------------------------------
// criterion 7: radical equality for a pair of cubical schemes in P^6
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_radical_equality_in_p6() {
    check(7, "level-4 deficit values and two component verdicts in P6", || {
        let amb = Ambient::projective(6);
        let eng = engine(107);
        let f1 = poly(
            &amb,
            &[
                (1, &[0, 0, 1, 1, 0, 1, 0]),
                (-5, &[1, 0, 0, 0, 0, 0, 2]),
                (3, &[1, 1, 1, 0, 0, 0, 0]),
            ],
        );
        // A fixed cubic standing in for a general one.
        let f2 = poly(
            &amb,
            &[
                (1, &[3, 0, 0, 0, 0, 0, 0]),
                (2, &[0, 2, 0, 0, 1, 0, 0]),
                (-3, &[0, 0, 1, 1, 0, 0, 1]),
                (5, &[0, 0, 0, 0, 1, 1, 1]),
                (7, &[0, 1, 1, 0, 0, 1, 0]),
                (-1, &[0, 0, 0, 3, 0, 0, 0]),
                (4, &[1, 0, 0, 0, 1, 0, 1]),
                (6, &[0, 0, 2, 0, 0, 0, 1]),
            ],
        );
        let x = SchemeSpec::variety(ideal(&amb, vec![f1.clone(), f2.clone()])).with_dim(4);
        let y = SchemeSpec::new(ideal(
            &amb,
            vec![
                f1.mul(&f1).unwrap(),
                f1.mul(&f2).unwrap(),
                f2.mul(&f2).unwrap(),
            ],
        ))
        .with_dim(4);

        let forward = segre_core::component_contained(&eng, &x, &y).unwrap();
        assert_eq!(
            witness_class(&forward, "deficit_z"),
            class(&amb, &[(27, &[2])])
        );
        assert_eq!(
            witness_class(&forward, "deficit_theta"),
            class(&amb, &[(9, &[2])])
        );
        assert!(forward.answer, "the cut variety is a component of the fat scheme");

        let backward = segre_core::component_contained(&eng, &y, &x).unwrap();
        assert_eq!(
            witness_class(&backward, "deficit_z"),
            class(&amb, &[(54, &[2])])
        );
        assert_eq!(
            witness_class(&backward, "deficit_theta"),
            class(&amb, &[(36, &[2])])
        );
        assert!(backward.answer, "the fat scheme's support is a component of the cut variety");
    });
}

// ---------------------------------------------------------------------------
// criterion 8: randomized property suites
// ---------------------------------------------------------------------------

const SUITE_INSTANCES: usize = 20;

/// Suite (a): the level-by-level recursion agrees with the closed form
/// available in a single projective space.
fn suite_recursion_vs_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8a);
    for i in 0..SUITE_INSTANCES {
        let n = if i % 4 == 3 { 4 } else { 3 };
        let amb = Ambient::projective(n);
        let eng = engine(0x8a00 + i as u64);
        let d_y = rng.gen_range(1..=2u32);
        let d_x = rng.gen_range(1..=2u32);
        let host_gen = random_form(&amb, &[d_y], &mut rng);
        let extra = random_form(&amb, &[d_x], &mut rng);
        let y = SchemeSpec::variety(ideal(&amb, vec![host_gen.clone()])).with_dim(n - 1);
        let x = SchemeSpec::new(ideal(&amb, vec![host_gen, extra]));
        let recursive = segre_class(&eng, &x, &y).unwrap();
        let closed = segre_closed_form_pn(&eng, &x, &y).unwrap();
        assert_eq!(recursive, closed, "instance {i}: s(X,Y) in P^{n}");
    }
}

/// Suite (b): slicing with a general hyperplane shifts the degree table
/// down by one.
fn suite_hyperplane_slicing() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8b);
    for i in 0..SUITE_INSTANCES {
        let amb = Ambient::projective(3);
        let eng = engine(0x8b00 + i as u64);
        let host_gen = random_form(&amb, &[2], &mut rng);
        let extra = random_form(&amb, &[2], &mut rng);
        let ell = random_form(&amb, &[1], &mut rng);
        let y = SchemeSpec::variety(ideal(&amb, vec![host_gen.clone()])).with_dim(2);
        let x = ideal(&amb, vec![host_gen.clone(), extra.clone()])
            .alpha_homogenize()
            .unwrap();
        let y_cut = SchemeSpec::variety(ideal(&amb, vec![host_gen.clone(), ell.clone()]))
            .with_dim(1);
        let x_cut = ideal(&amb, vec![host_gen, extra, ell])
            .alpha_homogenize()
            .unwrap();
        for nu in 1..=2u32 {
            let whole = eng.projective_degree(&x, &y, &[nu]).unwrap();
            let sliced = eng.projective_degree(&x_cut, &y_cut, &[nu - 1]).unwrap();
            assert_eq!(whole, sliced, "instance {i}: slice degree at {nu}");
        }
    }
}

/// Suite (c): the deficit vanishes one level above the dimension of the
/// center, computed explicitly from the slice degree there.
fn suite_deficit_vanishes_above_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8c);
    for i in 0..SUITE_INSTANCES {
        let amb = Ambient::projective(3);
        let eng = engine(0x8c00 + i as u64);
        let d_y = rng.gen_range(1..=2u32);
        let host_gen = random_form(&amb, &[d_y], &mut rng);
        let extra = random_form(&amb, &[2], &mut rng);
        let y = SchemeSpec::variety(ideal(&amb, vec![host_gen.clone()])).with_dim(2);
        let x = ideal(&amb, vec![host_gen, extra]).alpha_homogenize().unwrap();
        let alpha = x.alpha().unwrap().clone();
        // dim X = 1, so level 2 must show no deficit: the slice degree
        // equals the coefficient of alpha^(dim Y - 2) [Y].
        let g = eng.projective_degree(&x, &y, &[2]).unwrap();
        let y_class = eng
            .class_of(&amb, y.ideal.generators(), y.asserted_dim, 0x9c)
            .unwrap()
            .1;
        let z = ChowClass::divisor_of_multidegree(&amb, &alpha)
            .pow(0)
            .mul(&y_class)
            .unwrap()
            .coefficient(&[1]);
        assert_eq!(BigInt::from(g), z, "instance {i}: no deficit above the center");
    }
}

/// Suite (d): pushing a class to the doubled ambient space and pulling
/// it back through the diagonal is the identity.
fn suite_diagonal_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8d);
    let amb = Ambient::projective(3);
    for i in 0..SUITE_INSTANCES {
        let mut c = ChowClass::zero(amb.clone());
        for e in 0..=3u32 {
            let coeff: i64 = rng.gen_range(-9..=9);
            c = c
                .add(&ChowClass::monomial(
                    amb.clone(),
                    vec![e],
                    BigInt::from(coeff),
                ))
                .unwrap();
        }
        let pushed = c.diagonal_pushforward();
        let back = pushed
            .diagonal_invert(&amb)
            .unwrap()
            .expect("pushforwards invert");
        assert_eq!(back, c, "instance {i}: diagonal round trip");
    }
}

/// Suite (e): the cone class and the multiplicity do not depend on the
/// degree at which the center's generators are presented.
fn suite_presentation_independence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8e);
    for i in 0..SUITE_INSTANCES {
        let amb = Ambient::projective(2);
        let eng = engine(0x8e00 + i as u64);
        let point = ideal(&amb, vec![var(&amb, 0), var(&amb, 1)]);
        // A host curve through the point: x0 l1 + x1 l2 = 0.
        let l1 = random_form(&amb, &[1], &mut rng);
        let l2 = random_form(&amb, &[1], &mut rng);
        let host_gen = var(&amb, 0)
            .mul(&l1)
            .unwrap()
            .add(&var(&amb, 1).mul(&l2).unwrap())
            .unwrap();
        let y = SchemeSpec::variety(ideal(&amb, vec![host_gen]));

        let pad = rng.gen_range(1..=3u32);
        let padded = point.alpha_homogenize_to(&Multidegree(vec![pad])).unwrap();

        let natural_spec = SchemeSpec::variety(point);
        let padded_spec = SchemeSpec::variety(padded);
        let s_natural = segre_class(&eng, &natural_spec, &y).unwrap();
        let s_padded = segre_class(&eng, &padded_spec, &y).unwrap();
        assert_eq!(s_natural, s_padded, "instance {i}: cone class under padding");

        let e_natural = multiplicity(&eng, &natural_spec, &y).unwrap();
        let e_padded = multiplicity(&eng, &padded_spec, &y).unwrap();
        assert_eq!(e_natural, e_padded, "instance {i}: multiplicity under padding");
    }
}

/// Suite (f): the emptiness verdict matches construction-time ground
/// truth, which is exactly the full-Bezout criterion.
fn suite_emptiness_matches_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8f);
    for i in 0..SUITE_INSTANCES {
        let amb = Ambient::projective(2);
        let eng = engine(0x8f00 + i as u64);
        if i % 2 == 0 {
            // Two general forms in the plane always meet.
            let a = random_form(&amb, &[rng.gen_range(1..=2u32)], &mut rng);
            let b = random_form(&amb, &[rng.gen_range(1..=2u32)], &mut rng);
            let both = ideal(&amb, vec![a, b]).alpha_homogenize().unwrap();
            let verdict = is_empty(&eng, &both).unwrap();
            assert!(!verdict.answer, "instance {i}: a plane pair meets");
        } else {
            // Powers of three independent linear forms cut out nothing.
            let e = rng.gen_range(1..=2u32);
            let (a, b, c): (i64, i64, i64) = (
                rng.gen_range(1..=5),
                rng.gen_range(1..=5),
                rng.gen_range(1..=5),
            );
            let l1 = poly(&amb, &[(1, &[1, 0, 0]), (a, &[0, 1, 0])]);
            let l2 = poly(&amb, &[(1, &[0, 1, 0]), (b, &[0, 0, 1])]);
            let l3 = poly(&amb, &[(1, &[0, 0, 1]), (c, &[1, 0, 0])]);
            let gens = vec![
                l1.pow(e).unwrap(),
                l2.pow(e).unwrap(),
                l3.pow(e).unwrap(),
            ];
            let verdict = is_empty(&eng, &ideal(&amb, gens)).unwrap();
            assert!(verdict.answer, "instance {i}: independent powers are empty");
        }
    }
}

/// Suite (g): every S-polynomial of a computed basis reduces to zero
/// against that basis, and the original generators do too.
fn suite_s_polynomials_reduce_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x90);
    for i in 0..SUITE_INSTANCES {
        let nvars = 3;
        let p = DEFAULT_PRIME;
        let num_gens = rng.gen_range(2..=3);
        let mut gens = Vec::new();
        for _ in 0..num_gens {
            let num_terms = rng.gen_range(2..=4);
            let mut map = std::collections::BTreeMap::new();
            for _ in 0..num_terms {
                let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=2u32)).collect();
                let c = rng.gen_range(1..p);
                map.insert(Mono::new(exps), c);
            }
            gens.push(FpPoly::from_map(nvars, p, map));
        }
        let affine = AffineIdeal::new(nvars, p, gens.clone()).unwrap();
        let basis = groebner_basis(&affine);
        for (j, f) in basis.iter().enumerate() {
            for g in basis.iter().skip(j + 1) {
                let s = s_polynomial(f, g);
                assert!(
                    normal_form(&s, &basis).is_zero(),
                    "instance {i}: an S-polynomial fails to reduce"
                );
            }
        }
        for f in &gens {
            assert!(
                normal_form(f, &basis).is_zero(),
                "instance {i}: a generator fails to reduce"
            );
        }
    }
}

/// Suite (h): identical seeds give byte-identical results, and the two
/// supported primes agree on every value.
fn suite_determinism_and_prime_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x91);
    for i in 0..SUITE_INSTANCES {
        let amb = Ambient::projective(2);
        let seed = 0x9100 + i as u64;
        let point = SchemeSpec::variety(ideal(&amb, vec![var(&amb, 0), var(&amb, 1)]));
        let l1 = random_form(&amb, &[1], &mut rng);
        let l2 = random_form(&amb, &[1], &mut rng);
        let host_gen = var(&amb, 0)
            .mul(&l1)
            .unwrap()
            .add(&var(&amb, 1).mul(&l2).unwrap())
            .unwrap();
        let y = SchemeSpec::variety(ideal(&amb, vec![host_gen]));

        let first = segre_class(&engine(seed), &point, &y).unwrap();
        let second = segre_class(&engine(seed), &point, &y).unwrap();
        assert_eq!(first, second, "instance {i}: rerun changed the class");
        assert_eq!(
            first.to_json_string(),
            second.to_json_string(),
            "instance {i}: rerun changed the rendering"
        );

        let mut swapped = CountConfig::new(seed);
        swapped.primes = [SECOND_PRIME, DEFAULT_PRIME];
        let other_prime = segre_class(&Engine::new(swapped).unwrap(), &point, &y).unwrap();
        assert_eq!(first, other_prime, "instance {i}: primes disagree");
    }
}

#[test]
fn criterion_8_property_suites() {
    check(8, "eight randomized property suites, 20 instances each", || {
        suite_recursion_vs_closed_form();
        suite_hyperplane_slicing();
        suite_deficit_vanishes_above_center();
        suite_diagonal_roundtrip();
        suite_presentation_independence();
        suite_emptiness_matches_construction();
        suite_s_polynomials_reduce_to_zero();
        suite_determinism_and_prime_agreement();
    });
}
