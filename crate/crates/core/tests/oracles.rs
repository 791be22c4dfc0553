//! Fixed values computed by independent oracles (naive expansion, per-factor
//! products, binomial sums, finite differences) and then frozen.

mod common;

use common::*;
use hzoo::constructions::*;
use hzoo::diffops::{dir_derivative, exp_laplacian, gradient, konig_apply, laplacian};
use hzoo::expr::parse_poly;
use hzoo::geometry::{enumerate_faces, restrict, sample_face, Face};
use hzoo::numerics::{fd_error_bound, fd_laplacian, halton_points, poly_field, FD_RESIDUAL_BOUND, FD_STEP};
use hzoo::polyring::{rat, ratio, Exponent, GaussPoly, GaussRational, Poly, Rational};
use hzoo::verify::*;
use num_traits::Zero;

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

fn f3_direct(x: &[f64]) -> f64 {
    let s: Vec<f64> = x.iter().map(|v| v * v).collect();
    (s[0] - s[1]) * (s[0] - s[2]) * (s[1] - s[2])
}

#[test]
fn vandermonde_3_naive_expansion() {
    let y = |i| Poly::var(3, i);
    let factors = [&y(0) - &y(1), &y(0) - &y(2), &y(1) - &y(2)];
    let left = naive_mul(&factors[0], &factors[1]);
    let left = Poly::from_terms(3, left.into_iter().map(|(e, c)| (Exponent::new(e), c)));
    let expansion = naive_mul(&left, &factors[2]);
    assert_eq!(expansion.len(), 6);
    assert!(expansion.values().all(|c| *c == rat(1) || *c == rat(-1)));
    assert_eq!(term_map(&vandermonde(3).unwrap()), expansion);
}

#[test]
fn product_naive_six_terms() {
    let p = parse_poly("x1 + 2*x2 - 1", 2).unwrap();
    let q = parse_poly("x1*x2 + 3", 2).unwrap();
    let naive = naive_mul(&p, &q);
    assert_eq!(naive.len(), 6);
    assert_eq!(term_map(&(&p * &q)), naive);
}

#[test]
fn f3_partial_matches_finite_difference() {
    let f3 = squared_vandermonde(3).unwrap();
    let exact = f3.partial(0).unwrap().eval(&rats(&[1, 2, 3])).unwrap();
    let h = 1e-4;
    let fd = (f3_direct(&[1.0 + h, 2.0, 3.0]) - f3_direct(&[1.0 - h, 2.0, 3.0])) / (2.0 * h);
    assert!((fd - 110.0).abs() < 1e-4, "{fd}");
    assert_eq!(exact, rat(110));
}

#[test]
fn f3_gradient_matches_finite_differences() {
    let f3 = squared_vandermonde(3).unwrap();
    let x = [1.0, 2.0, 3.0];
    let h = 1e-4;
    for (i, g) in gradient(&f3).iter().enumerate() {
        let (mut fwd, mut bwd) = (x, x);
        fwd[i] += h;
        bwd[i] -= h;
        let fd = (f3_direct(&fwd) - f3_direct(&bwd)) / (2.0 * h);
        let exact = g.eval_f64(&x);
        assert!((fd - exact).abs() < 1e-4 * exact.abs().max(1.0), "axis {i}: {fd} vs {exact}");
    }
}

#[test]
fn f3_substitution_shape() {
    let f3 = vandermonde(3).unwrap().substitute(3, &squares(3)).unwrap();
    assert_eq!(f3, squared_vandermonde(3).unwrap());
    assert_eq!(f3.num_terms(), 6);
    assert!(f3.terms().all(|(e, _)| e.total_degree() == 6));
}

#[test]
fn f3_per_factor_value() {
    let f3 = squared_vandermonde(3).unwrap();
    let direct = (1 - 4) * (1 - 9) * (4 - 9);
    assert_eq!(direct, -120);
    assert_eq!(f3.eval(&rats(&[1, 2, 3])).unwrap(), rat(direct));
}

#[test]
fn f3_vanishes_on_diagonal_cube_points() {
    let f3 = squared_vandermonde(3).unwrap();
    let half = ratio(1, 2);
    assert!(f3.eval(&[half.clone(), half.clone(), rat(0)]).unwrap().is_zero());
    assert!(f3.eval(&[half.clone(), -half.clone(), rat(0)]).unwrap().is_zero());
    let face = Face::new(3, [(0, half.clone()), (1, -half)]);
    assert!(restrict(&f3, &face).unwrap().is_zero());
}

#[test]
fn vandermonde_4_per_factor_value() {
    let y = [1i64, 2, 3, 4];
    let mut direct = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            direct *= y[i] - y[j];
        }
    }
    assert_eq!(direct, 12);
    assert_eq!(vandermonde(4).unwrap().eval(&rats(&y)).unwrap(), rat(direct));
}

#[test]
fn g2_laplacian_cancels() {
    let g2 = odd_squared_vandermonde(2).unwrap();
    assert_eq!(g2, parse_poly("x1^3*x2 - x1*x2^3", 2).unwrap());
    // ∂²/∂x1² gives 6 x1 x2, ∂²/∂x2² gives -6 x1 x2.
    assert_eq!(g2.partial(0).unwrap().partial(0).unwrap(), parse_poly("6*x1*x2", 2).unwrap());
    assert_eq!(g2.partial(1).unwrap().partial(1).unwrap(), parse_poly("-6*x1*x2", 2).unwrap());
    assert!(laplacian(&g2).is_zero());
}

#[test]
fn translation_invariance_of_vandermonde() {
    let v3 = vandermonde(3).unwrap();
    assert!(dir_derivative(&v3, &rats(&[1, 1, 1])).unwrap().is_zero());
    let h3 = exp_vandermonde(3).unwrap();
    assert!(dir_derivative(h3.body(), &rats(&[1, 1, 1])).unwrap().is_zero());
}

#[test]
fn exp_vandermonde_eigenvalue() {
    let h3 = exp_vandermonde(3).unwrap();
    let lap = exp_laplacian(&h3);
    assert_eq!(lap.weight(), h3.weight());
    assert_eq!(lap.body(), &vandermonde(3).unwrap().scale(&rat(3)));
    assert!(check_eigen(&exp_vandermonde(4).unwrap(), &rat(4)).passed());
}

#[test]
fn konig_operator_on_vandermonde() {
    // Direct expansion for d = 3: Σ y_i² ∂²_i V = 2[y1²(y2-y3) - y2²(y1-y3) + y3²(y1-y2)] = 2V.
    let v3 = vandermonde(3).unwrap();
    let hand = parse_poly("2*(x1^2*(x2 - x3) - x2^2*(x1 - x3) + x3^2*(x1 - x2))", 3).unwrap();
    assert_eq!(hand, v3.scale(&rat(2)));
    assert_eq!(konig_apply(&v3, &rat(0), &rat(0), &ratio(1, 2)), hand);
    // Only the y_i² part survives: konig(V_d) = d(d-1)(d-2)/3 · V_d.
    for d in 2..=6usize {
        let v = vandermonde(d).unwrap();
        let eigen = rat((d * (d - 1) * (d - 2) / 3) as i64);
        for (a, b, c) in [(rat(0), rat(0), ratio(1, 2)), (ratio(-3, 2), rat(7), ratio(2, 5))] {
            assert_eq!(konig_apply(&v, &a, &b, &c), v.scale(&eigen), "d = {d}");
        }
    }
    assert!(konig_apply(&vandermonde(2).unwrap(), &rat(4), &rat(-1), &rat(3)).is_zero());
    assert!(konig_apply(&Poly::one(3), &rat(5), &rat(-2), &ratio(7, 3)).is_zero());
}

#[test]
fn planar_binomial_oracle() {
    for n in 1..=8u32 {
        let mut terms = Vec::new();
        for k in (0..=n).step_by(2) {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            terms.push((Exponent::new(vec![n - k, k]), rat(sign * binomial(n as u64, k as u64))));
        }
        assert_eq!(planar_power(n), Poly::from_terms(2, terms), "n = {n}");
    }
    assert_eq!(planar_power(6), parse_poly("x1^6 - 15*x1^4*x2^2 + 15*x1^2*x2^4 - x2^6", 2).unwrap());
}

#[test]
fn complex_square_split() {
    let w = &GaussPoly::var(2, 0) + &GaussPoly::var(2, 1).scale(&GaussRational::i());
    let (re, im) = w.pow(2).re_im();
    assert_eq!(re, parse_poly("x1^2 - x2^2", 2).unwrap());
    assert_eq!(im, parse_poly("2*x1*x2", 2).unwrap());
    let pair = quadratic_morphism(1).unwrap();
    assert_eq!((pair.phi1, pair.phi2), (re, im));
}

#[test]
fn quadratic_morphism_gradients_by_hand() {
    let pair = quadratic_morphism(1).unwrap();
    // ∇φ1 = (2x1, -2x2), ∇φ2 = (2x2, 2x1): both norms 4(x1² + x2²), inner product 0.
    let (gap, inner) = conformality_defects(&pair);
    assert!(gap.is_zero() && inner.is_zero());
    let g1 = gradient(&pair.phi1);
    let norm: Poly = &(&g1[0] * &g1[0]) + &(&g1[1] * &g1[1]);
    assert_eq!(norm, parse_poly("4*x1^2 + 4*x2^2", 2).unwrap());
    for n in 1..=3 {
        assert!(check_conformality(&quadratic_morphism(n).unwrap()).passed());
    }
}

#[test]
fn first_odd_power_is_sixth_planar_power() {
    let fam = morphism_power_family(1, 1).unwrap();
    assert_eq!(fam[1], planar_power(6));
}

#[test]
fn p1_quotient_remultiplies() {
    let phi1 = quadratic_morphism(1).unwrap().phi1;
    let p1 = &morphism_power_family(1, 1).unwrap()[1];
    let q = p1.exact_divide(&phi1).unwrap().expect("phi1 divides P_1");
    assert_eq!(q.total_degree(), Some(4));
    assert_eq!(&q * &phi1, *p1);
    // (x1^6 - 15x1^4x2^2 + 15x1^2x2^4 - x2^6) / (x1^2 - x2^2)
    assert_eq!(q, parse_poly("x1^4 - 14*x1^2*x2^2 + x2^4", 2).unwrap());
}

#[test]
fn phi2_does_not_divide_phi1() {
    let pair = quadratic_morphism(1).unwrap();
    let fam = morphism_power_family(1, 0).unwrap();
    let cert = check_divides_family(&pair.phi2, &fam).unwrap();
    assert!(!cert.passed());
    assert!(cert.witness.is_some());
}

#[test]
fn composition_complex_power_oracle() {
    let pair = quadratic_morphism(1).unwrap();
    let outer = parse_poly("x1^2 - x2^2", 2).unwrap();
    let composed = outer.compose(&[pair.phi1.clone(), pair.phi2.clone()]).unwrap();
    assert_eq!(composed, planar_power(4));
    assert!(check_composition(&outer, &pair).unwrap().passed());
}

#[test]
fn ansatz_with_z_and_z_squared() {
    let z = GaussPoly::var(1, 0);
    let g = [z.clone(), z.pow(2)];
    let xi = null_vector_ansatz(&g).unwrap();
    assert_eq!(xi.len(), 4);
    // G = z² + z⁴.
    let one = GaussPoly::one(1);
    let big_g = &z.pow(2) + &z.pow(4);
    assert_eq!(xi[0], &one - &big_g);
    assert_eq!(xi[1], (&one + &big_g).scale(&GaussRational::i()));
    // Hand expansion: (1-G)² - (1+G)² + 4z² + 4z⁴ = -4G + 4G = 0.
    let squares: Vec<GaussPoly> = xi.iter().map(|p| p * p).collect();
    assert_eq!(&squares[0] + &squares[1], big_g.scale(&GaussRational::real(rat(-4))));
    assert_eq!(&squares[2] + &squares[3], big_g.scale(&GaussRational::real(rat(4))));
}

#[test]
fn odd_morphism_seven_components_harmonic() {
    let z = GaussPoly::var(1, 0);
    let pair = odd_morphism(7, &[z, GaussPoly::one(1), GaussPoly::zero(1)]).unwrap();
    assert_eq!(pair.arity(), 7);
    assert!(laplacian(&pair.phi1).is_zero());
    assert!(laplacian(&pair.phi2).is_zero());
}

#[test]
fn odd_morphism_five_is_real() {
    let pair = odd_morphism(5, &[GaussPoly::var(1, 0)]).unwrap();
    assert_eq!(pair.arity(), 5);
    assert!(!pair.phi1.is_zero() && !pair.phi2.is_zero());
    assert!(check_conformality(&pair).passed());
}

#[test]
fn planar_vanisher_exact_values() {
    let (re, im) = planar_vanisher(&[GaussRational::i(), GaussRational::real(rat(2))]);
    for pt in [rats(&[0, 1]), rats(&[2, 0])] {
        assert!(re.eval(&pt).unwrap().is_zero());
        assert!(im.eval(&pt).unwrap().is_zero());
    }
    // (z - i)(z - 2) at z = 0 is 2i.
    assert_eq!(re.eval(&rats(&[0, 0])).unwrap(), rat(0));
    assert_eq!(im.eval(&rats(&[0, 0])).unwrap(), rat(2));
    assert!(laplacian(&re).is_zero() && laplacian(&im).is_zero());
}

#[test]
fn prism_finite_difference() {
    let psi = TrigProduct::prism(&[rat(1), rat(1)]).unwrap();
    assert_eq!(psi.eigenvalue(), rat(0));
    let f = |x: &[f64]| Some(psi.eval_f64(x));
    let r = fd_laplacian(&f, &[0.3, 0.7], FD_STEP).unwrap();
    assert!(r.abs() <= FD_RESIDUAL_BOUND, "{r}");
    assert_eq!(TrigProduct::prism(&[rat(3), rat(4), rat(5)]).unwrap().eigenvalue(), rat(0));

    let off = TrigProduct::prism(&[rat(1), rat(1), rat(1)]).unwrap();
    let g = |x: &[f64]| Some(off.eval_f64(x));
    let x = [0.4, 0.9, 0.6];
    let r = fd_laplacian(&g, &x, FD_STEP).unwrap();
    assert!((r + off.eval_f64(&x)).abs() <= FD_RESIDUAL_BOUND, "{r}");
}

#[test]
fn half_strip_finite_difference() {
    let f0 = HalfStrip::default();
    let f = |x: &[f64]| f0.sample(x);
    let r = fd_laplacian(&f, &[0.2, 0.5], FD_STEP).unwrap();
    assert!(r.abs() <= 1e-5, "{r}");
}

#[test]
fn strip_finite_difference() {
    let f = |x: &[f64]| Some(strip_exp_sin(x[0], x[1]));
    let r = fd_laplacian(&f, &[0.5, 1.0], FD_STEP).unwrap();
    assert!(r.abs() <= 1e-6, "{r}");
}

#[test]
fn f4_vanishes_at_all_two_face_samples() {
    let f4 = squared_vandermonde(4).unwrap();
    let faces = enumerate_faces(4, 2).unwrap();
    assert_eq!(faces.len(), 24);
    for face in &faces {
        for pt in sample_face(face, 5) {
            assert!(f4.eval(&pt).unwrap().is_zero(), "{face}");
        }
    }
}

#[test]
fn f3_fails_on_two_skeleton() {
    let cert = check_skeleton_vanishing(&squared_vandermonde(3).unwrap(), 3, 2).unwrap();
    assert!(!cert.passed());
    assert_eq!(cert.subcases.len(), 6);
    assert!(cert.witness.is_some());
}

#[test]
fn verifier_examples() {
    assert!(check_harmonic(&squared_vandermonde(5).unwrap()).passed());
    let p2 = &morphism_power_family(2, 2).unwrap()[2];
    assert!(check_harmonic(p2).passed());
    assert!(check_skeleton_vanishing(&odd_squared_vandermonde(3).unwrap(), 3, 1).unwrap().passed());
    let fam = morphism_power_family(1, 3).unwrap();
    assert!(check_divides_family(&quadratic_morphism(1).unwrap().phi1, &fam).unwrap().passed());
    let cert = check_linear_independence(&morphism_power_family(2, 2).unwrap()).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.subcases[0].detail.as_deref(), Some("rank 3 of 3; degrees (2, 6, 10)"));
}

#[test]
fn common_zeros_on_the_diagonal() {
    let phi1 = quadratic_morphism(1).unwrap().phi1;
    let fam = morphism_power_family(1, 3).unwrap();
    let probes: Vec<Vec<Rational>> = (1..=6).map(|t| vec![ratio(t, 3), ratio(t, 3)]).collect();
    assert!(common_zero_witness(&phi1, &fam, &probes).unwrap().passed());
    let off = vec![vec![rat(1), rat(2)]];
    assert!(matches!(common_zero_witness(&phi1, &fam, &off), Err(VerifyError::ProbeOffZeroSet { .. })));
}

#[test]
fn symbolic_and_numeric_harmonicity_agree() {
    let z = GaussPoly::var(1, 0);
    let mut certified: Vec<Poly> = vec![
        squared_vandermonde(3).unwrap(),
        squared_vandermonde(4).unwrap(),
        odd_squared_vandermonde(3).unwrap(),
        vandermonde(4).unwrap(),
        planar_power(3),
        planar_power(4),
        planar_power(5),
    ];
    let quad = quadratic_morphism(2).unwrap();
    certified.extend([quad.phi1, quad.phi2]);
    certified.extend(morphism_power_family(1, 2).unwrap());
    let pair = odd_morphism(5, &[z.pow(2)]).unwrap();
    certified.extend([pair.phi1, pair.phi2]);
    let mut moderate = 0;
    for p in &certified {
        assert!(check_harmonic(p).passed());
        let bound = fd_error_bound(p, FD_STEP);
        let d = p.arity();
        let f = poly_field(p);
        for x in &halton_points(20, &vec![-1.0; d], &vec![1.0; d]) {
            let r = fd_laplacian(&f, x, FD_STEP).unwrap();
            assert!(r.abs() <= bound, "{p} at {x:?}: {r} above a priori bound {bound}");
            if bound <= FD_RESIDUAL_BOUND {
                assert!(r.abs() <= FD_RESIDUAL_BOUND);
            }
        }
        if bound <= FD_RESIDUAL_BOUND {
            moderate += 1;
        }
    }
    assert!(moderate >= 5, "only {moderate} polynomials of moderate size");
    // Re z^5 has Σ ∂⁴_i = 240 x1, so its truncation term reaches 1e-5 at |x1| = 1/2.
    assert!(fd_error_bound(&planar_power(5), FD_STEP) > FD_RESIDUAL_BOUND);
}

#[test]
fn round_trip_f4() {
    let f4 = squared_vandermonde(4).unwrap();
    assert_eq!(parse_poly(&f4.to_string(), 4).unwrap(), f4);
}
