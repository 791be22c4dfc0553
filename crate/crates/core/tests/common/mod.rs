#![allow(dead_code)]

use std::collections::BTreeMap;

use hzoo::polyring::{ratio, Exponent, Poly, Rational};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

/// Random polynomial with up to `max_terms` terms and per-variable degree at
/// most `max_exp`.
pub fn poly(arity: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, arity), small_rational()), 0..=max_terms)
        .prop_map(move |terms| Poly::from_terms(arity, terms.into_iter().map(|(e, c)| (Exponent::new(e), c))))
}

pub fn nonzero_poly(arity: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    poly(arity, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn point(arity: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), arity)
}

/// `y_i ↦ x_i²` for every coordinate.
pub fn squares(d: usize) -> BTreeMap<usize, Poly> {
    (0..d).map(|i| (i, Poly::var(d, i).pow(2))).collect()
}

pub fn rats(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| ratio(v, 1)).collect()
}

/// Naive product over explicit term lists, independent of `Poly`'s own
/// multiplication.
pub fn naive_mul(p: &Poly, q: &Poly) -> BTreeMap<Vec<u32>, Rational> {
    let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (e1, c1) in p.terms() {
        for (e2, c2) in q.terms() {
            let e: Vec<u32> = e1.as_slice().iter().zip(e2.as_slice()).map(|(a, b)| a + b).collect();
            *acc.entry(e).or_insert_with(|| ratio(0, 1)) += c1 * c2;
        }
    }
    acc.retain(|_, c| *c != ratio(0, 1));
    acc
}

pub fn term_map(p: &Poly) -> BTreeMap<Vec<u32>, Rational> {
    p.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect()
}
