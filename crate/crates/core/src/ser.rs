//! Serde helpers writing rationals as exact strings.

use serde::Serializer;

use crate::exactmath::{to_exact_string, Rational};

pub fn rat<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_exact_string(q))
}


pub fn rat_matrix<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| r.iter().map(to_exact_string).collect::<Vec<_>>()))
}

pub fn rat_tensor<S: Serializer>(t: &[Vec<Vec<Rational>>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(t.iter().map(|m| {
        m.iter()
            .map(|r| r.iter().map(to_exact_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    }))
}
