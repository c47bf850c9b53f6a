#![allow(dead_code)]

use posyn_core::ltlf::Formula;
use proptest::prelude::*;

pub fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Every word of exactly `len` letters over `width` propositions.
pub fn words(width: usize, len: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    let letters = 1usize << width;
    let total = letters.pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let l = code % letters;
                code /= letters;
                (0..width).map(|i| l >> i & 1 == 1).collect()
            })
            .collect()
    })
}

/// Every word of length 1 through `max_len`.
pub fn words_up_to(width: usize, max_len: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    (1..=max_len).flat_map(move |len| words(width, len))
}

/// Formulas over `props` using every operator, nested at most `depth` deep.
pub fn formula(props: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => prop::sample::select(props).prop_map(Formula::prop),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::weak_next),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::release(a, b)),
            inner.clone().prop_map(Formula::eventually),
            inner.prop_map(Formula::globally),
        ]
    })
}
