//! Rate bounds for sequential/availability codes and the exact rate of a
//! constructed code, all in exact rational arithmetic.

use num_rational::Ratio;
use serde::Serialize;

use crate::construct::{CodeLayout, ConstructedCode};

pub type Rational = Ratio<u128>;

/// Serializes a rational as `"p/q"`.
pub mod ratio_string {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// `∏_{j=1..t} 1/(1 + 1/(j·r))`, the availability bound.
pub fn rate_availability_bound(r: usize, t: usize) -> Rational {
    let r = r as u128;
    (1..=t as u128).fold(Rational::from_integer(1), |acc, j| {
        acc * Rational::new(j * r, j * r + 1)
    })
}

/// `r/(r+2)`, the bound for two sequential erasures.
pub fn rate_2seq_bound(r: usize) -> Rational {
    Rational::new(r as u128, r as u128 + 2)
}

/// `(r/(r+1))^2`, the bound for three sequential erasures.
pub fn rate_3seq_bound(r: usize) -> Rational {
    let x = Rational::new(r as u128, r as u128 + 1);
    x * x
}

/// `(1 + (t-1)/r + 1/r^2)^-1`, the rate of the resolvable-configuration
/// family (stated there for odd `t ≥ 3`).
pub fn rate_resolvable(r: usize, t: usize) -> Rational {
    let r = r as u128;
    let t = t as u128;
    (Rational::from_integer(1) + Rational::new(t.saturating_sub(1), r) + Rational::new(1, r * r)).recip()
}

/// The closed-form rate claimed for the construction, evaluated literally:
/// `(1 + ⌈t/r⌉ + ⌈1/r²⌉(δ-1))^-1` with `t = t_i(δ-1)`.
pub fn rate_closed_form(r: usize, t_i: usize, delta: usize) -> Rational {
    let (r, t_i, delta) = (r as u128, t_i as u128, delta as u128);
    let t = t_i * (delta - 1);
    let denom = 1 + ceil_div(t, r) + ceil_div(1, r * r) * (delta - 1);
    Rational::new(1, denom)
}

/// `k/n` with `n = k + (b + ⌈s/r⌉)(δ-1)`.
pub fn exact_rate(layout: &CodeLayout) -> Rational {
    let k = layout.k as u128;
    let n = k + ((layout.b + layout.global_blocks) * (layout.delta - 1)) as u128;
    Rational::new(k, n)
}

/// `dimension / length` read off the parity-check matrix.
pub fn rate_from_matrix(code: &ConstructedCode) -> Rational {
    Rational::new(code.code.dimension() as u128, code.h().cols() as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub name: &'static str,
    #[serde(with = "ratio_string")]
    pub value: Rational,
    /// Set when the parameters fall outside the bound's hypotheses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RateReport {
    pub r: usize,
    pub t: usize,
    #[serde(with = "ratio_string")]
    pub exact_rate: Rational,
    #[serde(with = "ratio_string")]
    pub closed_form_rate: Rational,
    /// The closed form disagrees with `k/n`.
    pub closed_form_diverges: bool,
    pub bounds: Vec<BoundValue>,
    pub notes: Vec<String>,
}

/// Compares the construction's exact rate with the closed form and the
/// published bounds, taking `t = t_i(δ-1)`.
pub fn rate_report(layout: &CodeLayout) -> RateReport {
    let r = layout.r;
    let t = layout.t_claim();
    let exact = exact_rate(layout);
    let closed_form = rate_closed_form(r, layout.t_i, layout.delta);
    let mut bounds = vec![BoundValue {
        name: "availability product",
        value: rate_availability_bound(r, t),
        note: None,
    }];
    bounds.push(BoundValue {
        name: "2-sequential",
        value: rate_2seq_bound(r),
        note: (t != 2).then(|| format!("stated for t = 2, here t = {t}")),
    });
    bounds.push(BoundValue {
        name: "3-sequential",
        value: rate_3seq_bound(r),
        note: (t != 3).then(|| format!("stated for t = 3, here t = {t}")),
    });
    bounds.push(BoundValue {
        name: "resolvable configuration",
        value: rate_resolvable(r, t),
        note: (t < 3 || t.is_multiple_of(2)).then(|| format!("stated for odd t >= 3, here t = {t}")),
    });
    let mut notes = Vec::new();
    if closed_form != exact {
        notes.push(format!(
            "closed-form rate {}/{} differs from k/n = {}/{}",
            closed_form.numer(),
            closed_form.denom(),
            exact.numer(),
            exact.denom()
        ));
    }
    RateReport {
        r,
        t,
        exact_rate: exact,
        closed_form_rate: closed_form,
        closed_form_diverges: closed_form != exact,
        bounds,
        notes,
    }
}
