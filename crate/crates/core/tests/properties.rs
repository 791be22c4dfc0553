mod common;

use common::*;
use hzoo::constructions::null_vector_ansatz;
use hzoo::diffops::{divergence_sum, euler_second_order, gradient, konig_apply, laplacian};
use hzoo::expr::{parse, parse_poly};
use hzoo::geometry::{enumerate_faces, restrict};
use hzoo::numerics::fd_laplacian;
use hzoo::polyring::{ratio, Exponent, GaussPoly, GaussRational, Poly, Rational};
use hzoo::verify::linalg::rank;
use hzoo::verify::{check_divides_family, check_harmonic, common_zero_witness};
use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;

fn sum(ps: impl IntoIterator<Item = Poly>, arity: usize) -> Poly {
    ps.into_iter().fold(Poly::zero(arity), |acc, p| &acc + &p)
}

proptest! {
    #[test]
    fn addition_is_a_commutative_group(p in poly(3, 6, 3), q in poly(3, 6, 3), r in poly(3, 6, 3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &Poly::zero(3), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p - &q, &p + &(-&q));
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive(
        p in poly(3, 5, 2), q in poly(3, 5, 2), r in poly(3, 5, 2)
    ) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &Poly::one(3), p.clone());
        prop_assert!((&p * &Poly::zero(3)).is_zero());
    }

    #[test]
    fn product_matches_naive_oracle(p in poly(3, 6, 3), q in poly(3, 6, 3)) {
        prop_assert_eq!(term_map(&(&p * &q)), naive_mul(&p, &q));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(3, 6, 3), q in poly(3, 6, 3), x in point(3)) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
        prop_assert_eq!((-&p).eval(&x).unwrap(), -pv);
    }

    #[test]
    fn canonical_form_is_insertion_order_independent(
        terms in prop::collection::vec((prop::collection::vec(0u32..=3, 2), small_rational()), 0..8),
        split in small_rational(),
        x in point(2),
    ) {
        let build = |ts: &[(Vec<u32>, Rational)]| {
            Poly::from_terms(2, ts.iter().map(|(e, c)| (Exponent::new(e.clone()), c.clone())))
        };
        let forward = build(&terms);
        let mut reversed = terms.clone();
        reversed.reverse();
        // Split every coefficient into two summands.
        let halves: Vec<_> = terms
            .iter()
            .flat_map(|(e, c)| [(e.clone(), c - &split), (e.clone(), split.clone())])
            .collect();
        prop_assert_eq!(&build(&reversed), &forward);
        prop_assert_eq!(&build(&halves), &forward);
        prop_assert!(forward.terms().all(|(_, c)| !c.is_zero()));
        let direct: Rational = terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(&x).map(|(&k, v)| num_traits::pow(v.clone(), k as usize)).product::<Rational>())
            .sum();
        prop_assert_eq!(forward.eval(&x).unwrap(), direct);
    }

    #[test]
    fn partial_derivatives_commute(p in poly(3, 6, 4), i in 0usize..3, j in 0usize..3) {
        let a = p.partial(i).unwrap().partial(j).unwrap();
        let b = p.partial(j).unwrap().partial(i).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pow_equals_repeated_multiplication(p in poly(2, 4, 2), n in 0u32..=5) {
        let chain = (0..n).fold(Poly::one(2), |acc, _| &acc * &p);
        prop_assert_eq!(p.pow(n), chain);
    }

    #[test]
    fn exact_divide_is_sound(p in poly(2, 4, 2), q in nonzero_poly(2, 4, 2), r in poly(2, 3, 2)) {
        let product = &p * &q;
        prop_assert_eq!(product.exact_divide(&q).unwrap(), Some(p.clone()));
        let a = &product + &r;
        if let Some(quot) = a.exact_divide(&q).unwrap() {
            prop_assert_eq!(&quot * &q, a.clone());
        }
        let (quot, rem) = a.div_rem(&q).unwrap();
        prop_assert_eq!(&(&quot * &q) + &rem, a);
    }

    #[test]
    fn laplacian_is_linear(p in poly(3, 6, 3), q in poly(3, 6, 3), c in small_rational()) {
        let lhs = laplacian(&(&p.scale(&c) + &q));
        prop_assert_eq!(lhs, &laplacian(&p).scale(&c) + &laplacian(&q));
    }

    #[test]
    fn laplacian_product_rule(p in poly(3, 4, 3), q in poly(3, 4, 3)) {
        let cross = sum(gradient(&p).iter().zip(gradient(&q)).map(|(a, b)| a * &b), 3);
        let rhs = &(&(&p * &laplacian(&q)) + &(&q * &laplacian(&p))) + &cross.scale(&ratio(2, 1));
        prop_assert_eq!(laplacian(&(&p * &q)), rhs);
    }

    #[test]
    fn konig_operator_decomposes(p in poly(3, 6, 3), a in small_rational(), b in small_rational(), c in small_rational()) {
        let d = 3;
        let linear = sum((0..d).map(|i| &Poly::var(d, i) * &p.partial(i).unwrap().partial(i).unwrap()), d);
        let expected = &(&(&euler_second_order(&p) + &linear.scale(&a)) + &laplacian(&p).scale(&b))
            + &divergence_sum(&p).scale(&c);
        prop_assert_eq!(konig_apply(&p, &a, &b, &c), expected);
        prop_assert_eq!(konig_apply(&p, &Rational::zero(), &Rational::zero(), &Rational::zero()), euler_second_order(&p));
    }

    #[test]
    fn squaring_chain_rule(v in poly(3, 5, 3)) {
        // Δ(V(x²)) = (4 Σ y_i ∂²_i V + 2 Σ ∂_i V) at y = x².
        let d = 3;
        let sq = squares(d);
        let lhs = laplacian(&v.substitute(d, &sq).unwrap());
        prop_assert_eq!(lhs, chain_rule_rhs(&v).substitute(d, &sq).unwrap());
    }

    #[test]
    fn restriction_commutes_with_evaluation(
        p in poly(4, 6, 3), k in 0usize..=4, pick in any::<prop::sample::Index>(), x in point(4)
    ) {
        let faces = enumerate_faces(4, k).unwrap();
        let face = &faces[pick.index(faces.len())];
        let free_pt: Vec<Rational> = x[..k].to_vec();
        let r = restrict(&p, face).unwrap();
        prop_assert_eq!(r.arity(), k);
        prop_assert_eq!(r.eval(&free_pt).unwrap(), p.eval(&face.lift(&free_pt)).unwrap());
    }

    #[test]
    fn rank_matches_minor_oracle(
        rows in 1usize..=4, cols in 1usize..=4,
        entries in prop::collection::vec(-3i64..=3, 16),
        dup in any::<bool>(),
    ) {
        let mut m: Vec<Vec<Rational>> = (0..rows)
            .map(|r| (0..cols).map(|c| ratio(entries[r * 4 + c], 1 + (c as i64 % 2))).collect())
            .collect();
        if dup && rows > 1 {
            m[rows - 1] = m[0].iter().map(|v| v * ratio(-2, 3)).collect();
        }
        prop_assert_eq!(rank(&m), minor_rank(&m));
    }

    #[test]
    fn divisibility_couples_with_common_zeros(
        members in prop::collection::vec(poly(3, 4, 2), 1..4),
        c in nonzero_rational(),
        ts in prop::collection::vec((small_rational(), small_rational()), 1..6),
    ) {
        // q = x1 - c·x2 vanishes on (c·t, t, s).
        let q = &Poly::var(3, 0) - &Poly::var(3, 1).scale(&c);
        let family: Vec<Poly> = members.iter().map(|m| m * &q).collect();
        let probes: Vec<Vec<Rational>> = ts.iter().map(|(t, s)| vec![&c * t, t.clone(), s.clone()]).collect();
        prop_assert!(check_divides_family(&q, &family).unwrap().passed());
        prop_assert!(common_zero_witness(&q, &family, &probes).unwrap().passed());
    }

    #[test]
    fn certificates_are_deterministic(p in poly(3, 6, 3)) {
        let a = serde_json::to_string(&check_harmonic(&p)).unwrap();
        let b = serde_json::to_string(&check_harmonic(&p.clone())).unwrap();
        prop_assert_eq!(a, b);
        let cert = check_harmonic(&p);
        prop_assert_eq!(cert.passed(), laplacian(&p).is_zero());
        prop_assert_eq!(cert.witness.is_some(), !cert.passed());
    }

    #[test]
    fn stencil_is_exact_on_cubics(p in poly(3, 8, 3), x in prop::collection::vec(-1.0f64..1.0, 3), h in 1e-2f64..0.5) {
        let cubic = Poly::from_terms(3, p.terms().filter(|(e, _)| e.total_degree() <= 3).map(|(e, c)| (e.clone(), c.clone())));
        let f = |y: &[f64]| Some(cubic.eval_f64(y));
        let fd = fd_laplacian(&f, &x, h).unwrap();
        let exact = laplacian(&cubic).eval_f64(&x);
        let scale = 1.0 + cubic.max_abs_coeff();
        prop_assert!((fd - exact).abs() <= 1e-9 * scale / (h * h), "fd {} exact {}", fd, exact);
    }

    #[test]
    fn pretty_print_round_trips(p in poly(4, 8, 4)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 4).unwrap(), p);
    }

    #[test]
    fn null_vector_ansatz_is_isotropic(
        coeffs in prop::collection::vec(prop::collection::vec((small_rational(), small_rational()), 0..4), 1..4)
    ) {
        let z = GaussPoly::var(1, 0);
        let g: Vec<GaussPoly> = coeffs
            .iter()
            .map(|cs| cs.iter().enumerate().fold(GaussPoly::zero(1), |acc, (k, (re, im))| {
                &acc + &z.pow(k as u32).scale(&GaussRational::new(re.clone(), im.clone()))
            }))
            .collect();
        let xi = null_vector_ansatz(&g).unwrap();
        prop_assert_eq!(xi.len(), g.len() + 2);
        let total = xi.iter().fold(GaussPoly::zero(1), |acc, p| &acc + &(p * p));
        prop_assert!(total.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn parser_is_total_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..48)) {
        let src = String::from_utf8_lossy(&bytes);
        let _ = parse(&src, 3);
    }

    #[test]
    fn parser_is_total_on_near_grammar(src in "[x0-9+*^/() \\-]{0,40}") {
        if let Err(e) = parse(&src, 3) {
            prop_assert!(e.offset <= src.len());
        }
    }
}

#[test]
fn face_counts_match_formula() {
    for d in 0..=8usize {
        for k in 0..=d {
            let expected = (0..k).fold(1usize, |acc, i| acc * (d - i) / (i + 1)) << (d - k);
            let faces = enumerate_faces(d, k).unwrap();
            assert_eq!(faces.len(), expected, "d={d} k={k}");
            assert!(faces.iter().all(|f| f.face_dim() == k));
            assert_eq!(faces.iter().map(|f| f.to_string()).unique().count(), expected);
        }
    }
    assert!(enumerate_faces(3, 4).is_err());
}

fn chain_rule_rhs(v: &Poly) -> Poly {
    let d = v.arity();
    let linear = sum((0..d).map(|i| &Poly::var(d, i) * &v.partial(i).unwrap().partial(i).unwrap()), d);
    &linear.scale(&ratio(4, 1)) + &divergence_sum(v).scale(&ratio(2, 1))
}

/// Largest `r` with a nonzero `r x r` minor, by cofactor expansion.
fn minor_rank(m: &[Vec<Rational>]) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    for r in (1..=rows.min(cols)).rev() {
        for rs in (0..rows).combinations(r) {
            for cs in (0..cols).combinations(r) {
                let sub: Vec<Vec<Rational>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if !det(&sub).is_zero() {
                    return r;
                }
            }
        }
    }
    0
}

fn det(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let sign = if j % 2 == 0 { ratio(1, 1) } else { ratio(-1, 1) };
            sign * &m[0][j] * det(&minor)
        })
        .sum()
}
