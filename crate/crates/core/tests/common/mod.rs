//! Independent reference arithmetic: elements are coefficient vectors over
//! GF(p), multiplied as polynomials and reduced by schoolbook division.

#![allow(dead_code)]

use slrc::FieldSpec;

pub struct PolyField {
    p: u32,
    m: usize,
    /// Monic modulus, constant term first, length m+1.
    modulus: Vec<u32>,
}

impl PolyField {
    pub fn new(spec: &FieldSpec) -> PolyField {
        PolyField {
            p: spec.p,
            m: spec.m as usize,
            modulus: spec.prim_poly.clone(),
        }
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m as u32)
    }

    fn digits(&self, a: u16) -> Vec<u32> {
        let mut a = a as u32;
        (0..self.m)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, d: &[u32]) -> u16 {
        d.iter().rev().fold(0u32, |acc, &x| acc * self.p + x) as u16
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.m];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for deg in (self.m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &mk) in self.modulus.iter().enumerate() {
                let idx = deg - self.m + k;
                prod[idx] = (prod[idx] + self.p * self.p - c * mk % self.p) % self.p;
            }
        }
        self.encode(&prod[..self.m])
    }

    pub fn dot(&self, a: &[u16], b: &[u16]) -> u16 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}
