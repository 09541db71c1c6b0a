//! Finite-field arithmetic over GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector of the
//! residue polynomial read in base `p`, lowest degree first. `0` is the zero
//! element and `1` the multiplicative identity. Multiplication goes through
//! log/antilog tables keyed to a designated primitive element, addition is
//! digit-wise modulo `p` (plain XOR when `p = 2`).
//!
//! The default defining polynomials are `x^2+x+1` for GF(4), `x^3+x+1` for
//! GF(8) and `x^4+x+1` for GF(16); prime fields are the integers mod `p`.
//! Any other order gets the first monic irreducible polynomial in encoding
//! order and the smallest element of full multiplicative order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: usize = 1 << 16;

/// Serializable description of a field: characteristic, degree, defining
/// polynomial (coefficients low-to-high, monic) and the generator encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub prim_poly: Vec<u32>,
    pub generator: u32,
}

impl FieldSpec {
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})[", self.p, self.m)?;
        let mut first = true;
        for (deg, &c) in self.prim_poly.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (deg, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (d, 1) => write!(f, "x^{d}")?,
                (d, c) => write!(f, "{c}x^{d}")?,
            }
        }
        write!(f, "]")
    }
}

struct Tables {
    spec: FieldSpec,
    q: usize,
    p: u16,
    /// exp[i] = generator^i, doubled so that exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
    neg: Vec<u16>,
    /// Full addition table for small odd-characteristic fields.
    add: Option<Vec<u16>>,
}

/// A finite field with precomputed tables. Cheap to clone (shared storage)
/// and immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.spec)
    }
}

impl Field {
    /// The field of order `p^m` with the default polynomial and generator.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        check_size(p, m)?;
        let prim_poly = default_poly(p, m);
        let generator = smallest_generator(p, m, &prim_poly)
            .ok_or_else(|| Error::param(format!("no primitive element in GF({p}^{m})")))?;
        Field::from_spec(&FieldSpec {
            p,
            m,
            prim_poly,
            generator,
        })
    }

    /// The default field of order `q`; `q` must be a prime power.
    pub fn with_order(q: usize) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        Field::new(p, m)
    }

    /// Builds a field from an explicit description, validating irreducibility
    /// of the polynomial and the order of the generator.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let (p, m) = (spec.p, spec.m);
        check_size(p, m)?;
        if spec.prim_poly.len() != m as usize + 1 || spec.prim_poly[m as usize] != 1 {
            return Err(Error::param(format!(
                "defining polynomial must be monic of degree {m}, got {:?}",
                spec.prim_poly
            )));
        }
        if spec.prim_poly.iter().any(|&c| c >= p) {
            return Err(Error::param("polynomial coefficient out of range"));
        }
        if !is_irreducible(&spec.prim_poly, p) {
            return Err(Error::param(format!("{:?} is reducible over GF({p})", spec.prim_poly)));
        }
        let q = spec.order();
        if spec.generator as usize >= q || spec.generator == 0 {
            return Err(Error::param(format!("generator {} out of range", spec.generator)));
        }

        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().take(q - 1).enumerate() {
            if i > 0 && cur == 1 {
                return Err(Error::param(format!(
                    "generator {} has order {i}, not {}",
                    spec.generator,
                    q - 1
                )));
            }
            *slot = cur as u16;
            log[cur as usize] = i as u32;
            cur = poly_mulmod(cur, spec.generator, &spec.prim_poly, p);
        }
        if cur != 1 {
            return Err(Error::param("generator does not generate the multiplicative group"));
        }
        for i in q - 1..2 * (q - 1) {
            exp[i] = exp[i - (q - 1)];
        }

        let neg = (0..q as u32).map(|a| digit_neg(a, p) as u16).collect();
        let add = if p != 2 && q <= 256 {
            let mut t = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = digit_add(a as u32, b as u32, p) as u16;
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(Field(Arc::new(Tables {
            spec: spec.clone(),
            q,
            p: p as u16,
            exp,
            log,
            neg,
            add,
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    /// The designated primitive element.
    pub fn generator(&self) -> u16 {
        self.0.spec.generator as u16
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.0.q as u16
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as usize) < self.0.q
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        let t = &self.0;
        if t.p == 2 {
            a ^ b
        } else if let Some(add) = &t.add {
            add[a as usize * t.q + b as usize]
        } else {
            digit_add(a as u32, b as u32, t.p as u32) as u16
        }
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let t = &self.0;
        let l = t.log[a as usize] as usize;
        Some(t.exp[(t.q - 1 - l) % (t.q - 1)])
    }

    pub fn div(&self, a: u16, b: u16) -> Option<u16> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^e`, with `a^0 = 1` and negative exponents through the inverse.
    /// `None` only for a zero base with a negative exponent.
    pub fn pow(&self, a: u16, e: i64) -> Option<u16> {
        if e == 0 {
            return Some(1);
        }
        if a == 0 {
            return if e > 0 { Some(0) } else { None };
        }
        let t = &self.0;
        let order = (t.q - 1) as i64;
        let l = t.log[a as usize] as i64;
        let idx = (l * e.rem_euclid(order)).rem_euclid(order);
        Some(t.exp[idx as usize])
    }

    /// `generator^e` for any integer `e`.
    pub fn beta_pow(&self, e: i64) -> u16 {
        let order = (self.0.q - 1) as i64;
        self.0.exp[e.rem_euclid(order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u16) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[a as usize] as usize;
        Some(n / gcd(n, l))
    }

    /// Wraps a raw encoding as a field-checked element.
    pub fn element(&self, value: u32) -> Result<FieldElement<'_>> {
        if !self.contains(value) {
            return Err(Error::param(format!("{value} is not an element of GF({})", self.0.q)));
        }
        Ok(FieldElement {
            field: self,
            value: value as u16,
        })
    }
}

/// An element tied to its field. Binary operations check that both operands
/// come from the same field.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    value: u16,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Checked operations return `Result`, so the operator traits do not fit.
#[allow(clippy::should_implement_trait)]
impl<'f> FieldElement<'f> {
    pub fn value(self) -> u16 {
        self.value
    }

    pub fn field(self) -> &'f Field {
        self.field
    }

    fn same_field(self, other: FieldElement<'_>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.spec().to_string(),
                right: other.field.spec().to_string(),
            });
        }
        Ok(())
    }

    fn wrap(self, value: u16) -> FieldElement<'f> {
        FieldElement {
            field: self.field,
            value,
        }
    }

    pub fn add(self, other: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(self, other: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(self, other: FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<FieldElement<'f>> {
        self.field
            .inv(self.value)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(self, e: i64) -> Result<FieldElement<'f>> {
        self.field
            .pow(self.value, e)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }
}

/// Factors `q` as `p^m`, if it is a prime power.
pub fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check_size(p: u32, m: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::param(format!("characteristic {p} is not prime")));
    }
    if m == 0 {
        return Err(Error::param("extension degree must be at least 1"));
    }
    let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q > MAX_ORDER as u128 {
        return Err(Error::param(format!(
            "GF({p}^{m}) exceeds the supported order {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn digits(mut a: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn digit_add(mut a: u32, mut b: u32, p: u32) -> u32 {
    let (mut out, mut place) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn digit_neg(mut a: u32, p: u32) -> u32 {
    let (mut out, mut place) = (0, 1);
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

/// Product of two encoded residues modulo the monic polynomial `modulus`.
fn poly_mulmod(a: u32, b: u32, modulus: &[u32], p: u32) -> u32 {
    let m = modulus.len() - 1;
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    undigits(&prod[..m], p)
}

/// Reduces `a` in place modulo monic `modulus`.
fn poly_rem(a: &mut [u32], modulus: &[u32], p: u32) {
    let m = modulus.len() - 1;
    for deg in (m..a.len()).rev() {
        let c = a[deg];
        if c == 0 {
            continue;
        }
        for (k, &mc) in modulus.iter().enumerate() {
            let idx = deg - m + k;
            a[idx] = (a[idx] + (p - c) * mc) % p;
        }
    }
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            let mut rem = poly.to_vec();
            poly_rem(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_poly(p: u32, m: u32) -> Vec<u32> {
    match (p, m) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        _ => {
            let m = m as usize;
            (0..p.pow(m as u32))
                .map(|low| {
                    let mut poly = digits(low, p, m);
                    poly.push(1);
                    poly
                })
                .find(|poly| is_irreducible(poly, p))
                .expect("an irreducible polynomial of every degree exists")
        }
    }
}

fn smallest_generator(p: u32, m: u32, poly: &[u32]) -> Option<u32> {
    let q = p.pow(m);
    (1..q).find(|&g| {
        let mut cur = g;
        let mut ord = 1;
        while cur != 1 {
            cur = poly_mulmod(cur, g, poly, p);
            ord += 1;
        }
        ord == q - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_examples() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.generator(), 2);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(1), Some(1));
        assert_eq!(f.pow(2, 3), Some(1));
        for a in f.elements() {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.pow(a, 0), Some(1));
            assert_eq!(f.pow(a, 1), Some(a));
        }
    }

    #[test]
    fn gf5_examples() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.generator(), 2);
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::new(2, 3).unwrap();
        assert_eq!(f.inv(0), None);
        assert_eq!(f.pow(0, -1), None);
        assert_eq!(f.pow(0, 3), Some(0));
        assert!(matches!(f.element(0).unwrap().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn negative_powers_invert() {
        let f = Field::new(3, 2).unwrap();
        for a in 1..9u16 {
            let ai = f.pow(a, -1).unwrap();
            assert_eq!(f.mul(a, ai), 1);
            assert_eq!(f.pow(a, -3).unwrap(), f.pow(ai, 3).unwrap());
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let f4 = Field::new(2, 2).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let a = f4.element(2).unwrap();
        let b = f5.element(2).unwrap();
        assert!(matches!(a.add(b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.mul(b), Err(Error::FieldMismatch { .. })));
        assert_eq!(a.mul(a).unwrap().value(), 3);
    }

    #[test]
    fn spec_validation() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        let bad = FieldSpec {
            p: 2,
            m: 2,
            prim_poly: vec![1, 0, 1],
            generator: 2,
        };
        assert!(Field::from_spec(&bad).is_err());
        // x is not primitive in GF(9) defined by x^2+1 (order 4)
        let weak = FieldSpec {
            p: 3,
            m: 2,
            prim_poly: vec![1, 0, 1],
            generator: 3,
        };
        assert!(Field::from_spec(&weak).is_err());
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::new(2, 16).is_ok());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn default_generators_have_full_order() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 64, 81, 125, 128, 256] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.order_of(f.generator()), Some(q - 1), "q = {q}");
        }
    }
}
