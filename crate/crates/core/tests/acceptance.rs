//! Acceptance gate: one test per criterion, each emitting a single pass/fail
//! line via the harness.

use std::collections::BTreeMap;
use std::time::Instant;

use glueq::cocycle::{
    cocycle_condition_residual, d_pm1, h_i, holonomy, is_unipotent, pgl_cocycle_from_shapes,
    q1, x_i,
};
use glueq::cusp::{cusp_to_nz, generate_cusp, verify_cusp};
use glueq::fixtures::{self, expected};
use glueq::gluing::{
    beta_matrices, canonical_row, generate, symplectic_pairing, to_nz, RoleRow,
};
use glueq::lattice::{self, act, binomial, classify, points, PointKind};
use glueq::perm::Perm4;
use glueq::ptolemy::{
    decoration_to_ptolemy, mu, pullback_ptolemy, random_decoration, x_coordinate_from_ptolemy,
    PtolemyAssignment,
};
use glueq::shape::{pullback_shape, x_coordinate_from_shapes, ShapeAssignment};
use glueq::solver::{find_flattening, newton_solve, nz_reduce, one_loop, DropStrategy, NZDatum, SolveConfig};
use glueq::triangulation::edge_local_model;
use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The four §-printed n=3 figure-eight components, `z_i = z^{1100}_{e_i}`,
/// flattened in column order (tet 0: e3..e0, tet 1: e3..e0).
fn fig8_n3_component(which: usize, root: usize) -> Vec<C> {
    let sq = |d: f64| if root == 0 { d.sqrt() } else { -d.sqrt() };
    let w3 = match which {
        0 => C::new(-0.25, sq(7.0) / 4.0),
        1 | 3 => C::new(0.5, sq(3.0) / 2.0),
        2 => C::new(1.25, sq(7.0) / 4.0),
        _ => unreachable!(),
    };
    let one = C::new(1.0, 0.0);
    let (z, w): ([C; 4], [C; 4]) = match which {
        0 => (
            [w3 + 1.5, 0.5 * w3 + 0.5, -0.5 * w3 + 0.25, -w3 + one],
            [-w3 - 0.5, 2.0 * w3 + 2.0, -2.0 * w3 + one, w3],
        ),
        1 => (
            [-w3 + one, w3, w3, -w3 + one],
            [w3, -w3 + one, -w3 + one, w3],
        ),
        2 => (
            [w3 - 1.5, -2.0 * w3 + 4.0, 2.0 * w3 - one, -w3 + one],
            [-w3 + 2.5, -0.5 * w3 + one, 0.5 * w3 - 0.25, w3],
        ),
        3 => ([-w3 + one; 4], [w3; 4]),
        _ => unreachable!(),
    };
    vec![z[3], z[2], z[1], z[0], w[3], w[2], w[1], w[0]]
}

fn fig8_geometric(n: usize) -> Vec<C> {
    let x = C::from_polar(1.0, std::f64::consts::PI / 3.0);
    match n {
        2 => vec![x, x.conj()],
        3 => fig8_n3_component(3, 1),
        _ => panic!("no geometric fixture for n={}", n),
    }
}

fn row_multiset(rows: impl Iterator<Item = (RoleRow, i8)>) -> BTreeMap<(RoleRow, i8), usize> {
    let mut out = BTreeMap::new();
    for (row, rhs) in rows {
        *out.entry((canonical_row(&row), rhs)).or_insert(0) += 1;
    }
    out
}

#[test]
fn criterion_01_counting() {
    let t0 = Instant::now();
    let tri = fixtures::fig8();
    for (n, want) in [(2, 2), (3, 8), (4, 20), (5, 40)] {
        let sys = generate(&tri, n).unwrap();
        assert_eq!(sys.equations.len(), want);
        assert_eq!(want, tri.num_tet() * binomial(n + 1, 3));
    }
    assert!(t0.elapsed().as_secs_f64() < 1.0);
    println!("criterion 1 (counting 2/8/20/40): PASS");
}

#[test]
fn criterion_02_symplectic() {
    let t0 = Instant::now();
    for tri in [fixtures::fig8(), fixtures::five_tet()] {
        for n in 2..=5 {
            let sys = generate(&tri, n).unwrap();
            let rows = to_nz(&sys.equations)
                .unwrap()
                .symplectic_rows(&tri.eps, sys.subs.len());
            let r = tri.num_tet() * binomial(n + 1, 3);
            assert_eq!(rows.len(), r);
            assert!(rows.iter().all(|row| row.len() == 2 * r));
            for i in 0..r {
                for j in i + 1..r {
                    assert_eq!(symplectic_pairing(&rows[i], &rows[j]).unwrap(), 0);
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0);
    println!("criterion 2 (symplectic r x 2r, exact): PASS");
}

#[test]
fn criterion_03_chain_complex() {
    let tri = fixtures::fig8();
    for n in 2..=4 {
        let (beta, beta_star) = beta_matrices(&tri, n).unwrap();
        for bs in &beta_star {
            for j in 0..beta[0].len() {
                let dot: i64 = (0..beta.len()).map(|k| bs[k] * beta[k][j]).sum();
                assert_eq!(dot, 0, "n={}", n);
            }
        }
    }
    println!("criterion 3 (beta* . beta = 0): PASS");
}

#[test]
fn criterion_04_fixture_equality() {
    let tri = fixtures::fig8();
    let cases: [(usize, &str, Option<&str>); 6] = [
        (3, expected::FIG8_N3_GLUING, None),
        (4, expected::FIG8_N4_GLUING, None),
        (3, expected::FIG8_N3_CUSP_MU, Some("mu")),
        (4, expected::FIG8_N4_CUSP_MU, Some("mu")),
        (3, expected::FIG8_N3_CUSP_LAMBDA, Some("lambda")),
        (4, expected::FIG8_N4_CUSP_LAMBDA, Some("lambda")),
    ];
    for (n, text, curve) in cases {
        let sys = generate(&tri, n).unwrap();
        let got = match curve {
            None => row_multiset(sys.equations.iter().map(|eq| (eq.role_row(&sys), 1i8))),
            Some(c) => row_multiset(
                generate_cusp(&tri, n, c)
                    .unwrap()
                    .iter()
                    .map(|eq| (eq.role_row(&sys), eq.rhs_sign)),
            ),
        };
        let want = row_multiset(expected::parse(text, n).into_iter().map(|e| (e.row, e.rhs)));
        assert_eq!(got, want, "n={} curve={:?}", n, curve);
    }
    println!("criterion 4 (n=3,4 published equation sets): PASS");
}

#[test]
fn criterion_05_printed_solutions() {
    let t0 = Instant::now();
    let tri = fixtures::fig8();
    let sys = generate(&tri, 3).unwrap();
    let nz = to_nz(&sys.equations).unwrap();
    for which in 0..4 {
        for root in 0..2 {
            let flat = fig8_n3_component(which, root);
            let res = glueq::gluing::verify_solution(&nz, &flat, 1e-9).unwrap();
            assert!(res < 1e-9, "component {} root {}: gluing residual {}", which, root, res);
            let z = ShapeAssignment::from_flat(3, 2, &flat);
            for curve in ["mu", "lambda"] {
                let eqs = generate_cusp(&tri, 3, curve).unwrap();
                let res = verify_cusp(&eqs, &z, &sys, 1e-9).unwrap();
                assert!(res < 1e-9, "component {} root {} {}: {}", which, root, curve, res);
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 1.0);
    println!("criterion 5 (all printed n=3 components, residual < 1e-9): PASS");
}

#[test]
fn criterion_06_monomial_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for n in 2..=4 {
        for _ in 0..100 {
            let g = random_decoration(n, &mut rng);
            let c = decoration_to_ptolemy(n, &g).unwrap();
            assert!(c.relation_residual() < 1e-10);
            let z = mu(&c, 1e-8).unwrap();
            // single-simplex shape relations and interior equations
            assert!(glueq::shape::internal_determinacy_residual(&z) < 1e-9);
            for &t in points(n).iter().filter(|&&t| classify(t) == PointKind::Face) {
                let a = x_coordinate_from_ptolemy(&c, 0, t).unwrap();
                let b = x_coordinate_from_shapes(&z, 0, t).unwrap();
                assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
            }
        }
    }
    // edge equations hold on the edge local model
    for k in 3..=6 {
        let tri = edge_local_model(k);
        for n in 2..=3 {
            let mut mats: Vec<_> = (0..k + 2).map(|_| random_decoration(n, &mut rng)[0].clone()).collect();
            let (ga, gb) = (mats.pop().unwrap(), mats.pop().unwrap());
            // tet i sees the edge endpoints at vertices 0,1 and the equator
            // vertices u_i at 2 and u_{i-1} at 3
            let vals: Vec<Vec<C>> = (0..k)
                .map(|i| {
                    let dec = [
                        ga.clone(),
                        gb.clone(),
                        mats[i].clone(),
                        mats[(i + k - 1) % k].clone(),
                    ];
                    decoration_to_ptolemy(n, &dec).unwrap().c[0].clone()
                })
                .collect();
            let c = PtolemyAssignment::new(n, vals);
            let q = lattice::quotient(&tri, n).unwrap();
            assert!(c.identification_residual(&q) < 1e-9);
            let z = mu(&c, 1e-8).unwrap();
            let sys = generate(&tri, n).unwrap();
            for eq in sys.equations.iter().filter(|eq| {
                eq.kind == PointKind::Edge && eq.rep.1[2] == 0 && eq.rep.1[3] == 0
            }) {
                let mut p = C::new(1.0, 0.0);
                for ((tet, s, role), m) in eq.role_row(&sys) {
                    p *= glueq::shape::role_value(z.z_at(tet, s), role).powi(m as i32);
                }
                assert!((p - 1.0).norm() < 1e-9, "k={} n={}", k, n);
            }
        }
    }
    println!("criterion 6 (monomial map, 100 decorations + edge local model): PASS");
}

#[test]
fn criterion_07_pullback_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in 2..=4 {
        let g = random_decoration(n, &mut rng);
        let c = decoration_to_ptolemy(n, &g).unwrap();
        let z = mu(&c, 1e-8).unwrap();
        for sigma in Perm4::all() {
            let cs = pullback_ptolemy(&sigma, &c);
            assert!(cs.relation_residual() < 1e-10);
            let zs = pullback_shape(&sigma, &z);
            // mu commutes with pullback
            let mz = mu(&cs, 1e-8).unwrap();
            for &s in &lattice::subsimplices(n) {
                assert!((mz.z_at(0, s) - zs.z_at(0, s)).norm() < 1e-10 * zs.z_at(0, s).norm().max(1.0));
            }
            // X(sigma* c)_t = X(c)_{sigma t}^{sgn sigma}
            for &t in points(n).iter().filter(|&&t| classify(t) == PointKind::Face) {
                let lhs = x_coordinate_from_ptolemy(&cs, 0, t).unwrap();
                let x = x_coordinate_from_ptolemy(&c, 0, act(&sigma, t)).unwrap();
                let rhs = if sigma.is_even() { x } else { 1.0 / x };
                assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
            }
            // contravariant composition: tau* (sigma* c) = (sigma tau)* c
            for tau in Perm4::all() {
                let lhs = pullback_ptolemy(&tau, &cs);
                let rhs = pullback_ptolemy(&sigma.compose(&tau), &c);
                for &t in &points(n) {
                    assert!((lhs.at(0, t) - rhs.at(0, t)).norm() < 1e-10);
                }
            }
        }
    }
    println!("criterion 7 (pullback laws, all 24 permutations): PASS");
}

#[test]
fn criterion_08_cocycle() {
    // printed beta matrices, symbolically
    let b2 = x_i(2, 1, C::new(1.0, 0.0)).mul(&d_pm1(2));
    let want2 = [[-1.0, 1.0], [0.0, 1.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((b2[(i, j)] - want2[i][j]).norm() < 1e-12);
        }
    }
    let x = C::new(0.7, -0.4); // generic X_{1,1}
    let b3 = x_i(3, 1, C::new(1.0, 0.0))
        .mul(&x_i(3, 2, C::new(1.0, 0.0)))
        .mul(&h_i(3, 1, x))
        .mul(&x_i(3, 1, C::new(1.0, 0.0)))
        .mul(&d_pm1(3));
    let want3 = [
        [x, -x - 1.0, C::new(1.0, 0.0)],
        [C::new(0.0, 0.0), C::new(-1.0, 0.0), C::new(1.0, 0.0)],
        [C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)],
    ];
    for i in 0..3 {
        for j in 0..3 {
            assert!((b3[(i, j)] - want3[i][j]).norm() < 1e-12);
        }
    }
    assert!((q1(3).mul(&q1(3)).add(&glueq::cmatrix::CMat::identity(3).scale(C::new(-1.0, 0.0)))).max_norm() < 1e-12);

    // face products for random decorations
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=4 {
        let g = random_decoration(n, &mut rng);
        let c = decoration_to_ptolemy(n, &g).unwrap();
        let z = mu(&c, 1e-7).unwrap();
        let coc = pgl_cocycle_from_shapes(&z, 0).unwrap();
        assert!(cocycle_condition_residual(&coc, 1e-8).unwrap(), "n={}", n);
    }

    // geometric n=3 figure-eight: face products and unipotent holonomy
    let tri = fixtures::fig8();
    let z = ShapeAssignment::from_flat(3, 2, &fig8_geometric(3));
    let cocs: Vec<_> = (0..2).map(|t| pgl_cocycle_from_shapes(&z, t).unwrap()).collect();
    for coc in &cocs {
        assert!(cocycle_condition_residual(coc, 1e-8).unwrap());
    }
    for curve in ["mu", "lambda"] {
        let h = holonomy(&tri, &cocs, &tri.curve(curve).unwrap().steps).unwrap();
        assert!(is_unipotent(&h, 1e-6), "{} holonomy not unipotent", curve);
    }
    println!("criterion 8 (natural cocycle + unipotent holonomy): PASS");
}

#[test]
fn criterion_09_one_loop() {
    let t0 = Instant::now();
    let tri = fixtures::fig8();
    for (n, want, tol) in [(2usize, 3f64.sqrt() / 2.0, 1e-6), (3, 10.5, 1e-4)] {
        let red = nz_reduce(&tri, n, "mu", DropStrategy::Forward).unwrap();
        let z = fig8_geometric(n);
        assert!(glueq::gluing::verify_solution(&red.ab, &z, 1e-9).unwrap() < 1e-9);
        let (f, f2) = find_flattening(&red.a_dg, &red.b_dg, &red.nu).unwrap();
        let datum = NZDatum {
            a: red.a_dg.clone(),
            b: red.b_dg.clone(),
            nu: red.nu.clone(),
            z,
            f,
            f2,
        };
        let tau = one_loop(&datum).unwrap();
        assert!((tau.norm() - want).abs() < tol, "n={}: |tau| = {}", n, tau.norm());
    }
    assert!(t0.elapsed().as_secs_f64() < 10.0);
    println!("criterion 9 (|tau_2| = sqrt(3)/2, |tau_3| = 21/2): PASS");
}

#[test]
fn criterion_10_solver() {
    let t0 = Instant::now();
    let tri = fixtures::fig8();
    for n in [2usize, 3] {
        let sys = generate(&tri, n).unwrap();
        let mut nz = to_nz(&sys.equations).unwrap();
        for curve in ["mu", "lambda"] {
            let cu = cusp_to_nz(&generate_cusp(&tri, n, curve).unwrap());
            nz.a.extend(cu.a);
            nz.b.extend(cu.b);
            nz.rhs.extend(cu.rhs);
        }
        let cfg = SolveConfig {
            restarts: 200,
            seed: 1,
            ..Default::default()
        };
        let sols = newton_solve(&nz, &cfg);
        // determinism: identical list on rerun
        let again = newton_solve(&nz, &cfg);
        assert_eq!(format!("{:?}", sols), format!("{:?}", again));
        let near = |target: &[C]| {
            sols.iter().any(|s| {
                s.iter()
                    .zip(target)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
                    < 1e-6
            })
        };
        if n == 2 {
            let g = fig8_geometric(2);
            let conj: Vec<C> = g.iter().map(|z| z.conj()).collect();
            assert!(near(&g) && near(&conj));
        } else {
            // every printed component is recovered
            for which in 0..4 {
                assert!(
                    (0..2).any(|root| near(&fig8_n3_component(which, root))),
                    "component {} not found",
                    which
                );
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 30.0);
    println!("criterion 10 (deterministic solver recovers all components): PASS");
}
