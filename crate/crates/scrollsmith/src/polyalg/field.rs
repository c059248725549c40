//! Prime fields and their quadratic extensions.
//!
//! Arithmetic contexts are separated from element payloads: a context carries
//! the modulus data and hands out plain `Copy`-ish elements. All arithmetic is
//! exact; nothing here ever rounds.

use std::fmt;

use rand::RngCore;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("modulus {0} is too small; need p >= 3")]
    TooSmall(u64),
}

/// Context-style field interface.
///
/// Elements are inert payloads; every operation goes through the context so
/// that quotient constructions can carry their modulus around.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Uniform random element (zero included).
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p` for an odd prime `p`. Elements are reduced `u64`s.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 {
            return Err(FieldError::TooSmall(p));
        }
        if p % 2 == 0 || !is_prime_u64(p) {
            return Err(FieldError::NotAnOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn pow_u64(&self, a: u64, e: u64) -> u64 {
        Field::pow(self, &a, e as u128)
    }

    /// Euler criterion. Zero counts as a square.
    pub fn is_square(&self, a: u64) -> bool {
        if a == 0 {
            return true;
        }
        self.pow_u64(a, (self.p - 1) / 2) == 1
    }

    /// Tonelli–Shanks square root in `F_p`; `None` when `a` is a non-residue.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow_u64(a, (p + 1) / 4));
        }
        // p = 1 mod 4: full Tonelli–Shanks.
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = self.least_nonresidue();
        let mut m = s;
        let mut c = self.pow_u64(z, q);
        let mut t = self.pow_u64(a, q);
        let mut r = self.pow_u64(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
                if i == m {
                    return None; // unreachable for genuine squares
                }
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Smallest quadratic non-residue.
    pub fn least_nonresidue(&self) -> u64 {
        let mut n = 2u64;
        while self.is_square(n) {
            n += 1;
        }
        n
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: i64) -> u64 {
        self.elem(n)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow_u64(*a, self.p - 2))
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        // Rejection sampling keeps the distribution exactly uniform.
        let zone = u64::MAX - u64::MAX % self.p;
        loop {
            let v = rng.next_u64();
            if v < zone {
                return v % self.p;
            }
        }
    }
}

/// An element `re + im*u` of `F_{p^2} = F_p[u]/(u^2 - n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    pub re: u64,
    pub im: u64,
}

impl QuadElem {
    pub const ZERO: QuadElem = QuadElem { re: 0, im: 0 };
}

/// The quadratic extension `F_{p^2} = F_p[u]/(u^2 - n)` for the least
/// non-residue `n` of `p`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadExtField {
    base: PrimeField,
    nonresidue: u64,
}

impl QuadExtField {
    pub fn new(base: PrimeField) -> Self {
        let n = base.least_nonresidue();
        QuadExtField {
            base,
            nonresidue: n,
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn embed(&self, a: u64) -> QuadElem {
        QuadElem { re: a, im: 0 }
    }

    /// The base-field value when `im = 0`.
    pub fn in_base(&self, a: &QuadElem) -> Option<u64> {
        (a.im == 0).then_some(a.re)
    }

    pub fn conj(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            re: a.re,
            im: self.base.neg(&a.im),
        }
    }

    /// Norm `a * conj(a) = re^2 - n*im^2`, an element of the base field.
    pub fn norm(&self, a: &QuadElem) -> u64 {
        let f = &self.base;
        let re2 = f.mul(&a.re, &a.re);
        let im2 = f.mul(&a.im, &a.im);
        f.sub(&re2, &f.mul(&self.nonresidue, &im2))
    }

    /// Square root in `F_{p^2}` (always exists for squares; every base-field
    /// element has a root here).
    pub fn sqrt(&self, a: &QuadElem) -> Option<QuadElem> {
        let f = &self.base;
        if self.is_zero(a) {
            return Some(QuadElem::ZERO);
        }
        if a.im == 0 {
            // sqrt of a base element: either in F_p or along the u-axis.
            if let Some(r) = f.sqrt(a.re) {
                return Some(QuadElem { re: r, im: 0 });
            }
            let quot = f.mul(&a.re, &f.inv(&self.nonresidue)?);
            let r = f.sqrt(quot)?;
            return Some(QuadElem { re: 0, im: r });
        }
        // x = c + d*u with c^2 + n d^2 = ... solve via the norm.
        // (c + du)^2 = a requires c^2 + n d^2 = re and 2cd = im.
        let norm = self.norm(a);
        let s = f.sqrt(norm)?; // a is a square in F_{p^2} iff its norm is a QR in F_p
        let half = f.inv(&2)?;
        for sign in [s, f.neg(&s)] {
            let c2 = f.mul(&f.add(&a.re, &sign), &half);
            if let Some(c) = f.sqrt(c2) {
                if c != 0 {
                    let d = f.mul(&a.im, &f.inv(&f.mul(&2, &c))?);
                    let cand = QuadElem { re: c, im: d };
                    if self.mul(&cand, &cand) == *a {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Renders an element as `c`, `c*u`, or `a + b*u`.
    pub fn render(&self, a: &QuadElem) -> String {
        match (a.re, a.im) {
            (re, 0) => format!("{re}"),
            (0, im) => format!("{im}*u"),
            (re, im) => format!("{re} + {im}*u"),
        }
    }
}

impl Field for QuadExtField {
    type Elem = QuadElem;

    fn zero(&self) -> QuadElem {
        QuadElem::ZERO
    }

    fn one(&self) -> QuadElem {
        QuadElem { re: 1, im: 0 }
    }

    fn from_int(&self, n: i64) -> QuadElem {
        self.embed(self.base.elem(n))
    }

    fn is_zero(&self, a: &QuadElem) -> bool {
        a.re == 0 && a.im == 0
    }

    fn add(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            re: self.base.add(&a.re, &b.re),
            im: self.base.add(&a.im, &b.im),
        }
    }

    fn sub(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        QuadElem {
            re: self.base.sub(&a.re, &b.re),
            im: self.base.sub(&a.im, &b.im),
        }
    }

    fn neg(&self, a: &QuadElem) -> QuadElem {
        QuadElem {
            re: self.base.neg(&a.re),
            im: self.base.neg(&a.im),
        }
    }

    fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let f = &self.base;
        let ac = f.mul(&a.re, &b.re);
        let bd = f.mul(&a.im, &b.im);
        let ad = f.mul(&a.re, &b.im);
        let bc = f.mul(&a.im, &b.re);
        QuadElem {
            re: f.add(&ac, &f.mul(&self.nonresidue, &bd)),
            im: f.add(&ad, &bc),
        }
    }

    fn inv(&self, a: &QuadElem) -> Option<QuadElem> {
        if self.is_zero(a) {
            return None;
        }
        let f = &self.base;
        let n = self.norm(a);
        let ninv = f.inv(&n)?;
        let c = self.conj(a);
        Some(QuadElem {
            re: f.mul(&c.re, &ninv),
            im: f.mul(&c.im, &ninv),
        })
    }

    fn sample(&self, rng: &mut dyn RngCore) -> QuadElem {
        QuadElem {
            re: self.base.sample(rng),
            im: self.base.sample(rng),
        }
    }
}

/// Deterministic Miller–Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % m as u128) as u64;
        }
        a = ((a as u128 * a as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(10006).is_err());
        assert!(PrimeField::new(10007).is_ok());
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(10007).unwrap();
        for a in [1u64, 2, 5000, 10006] {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn sqrt_roundtrip_fp() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = f.sample(&mut rng);
            let sq = f.mul(&a, &a);
            let r = f.sqrt(sq).expect("square must have a root");
            assert_eq!(f.mul(&r, &r), sq);
        }
    }

    #[test]
    fn quad_ext_field_axioms_spot() {
        let f = PrimeField::new(101).unwrap();
        let e = QuadExtField::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = e.sample(&mut rng);
            let b = e.sample(&mut rng);
            let c = e.sample(&mut rng);
            let lhs = e.mul(&a, &e.add(&b, &c));
            let rhs = e.add(&e.mul(&a, &b), &e.mul(&a, &c));
            assert_eq!(lhs, rhs);
            if !e.is_zero(&a) {
                let inv = e.inv(&a).unwrap();
                assert!(e.is_one(&e.mul(&a, &inv)));
            }
        }
    }

    #[test]
    fn sqrt_roundtrip_fp2() {
        let f = PrimeField::new(10007).unwrap();
        let e = QuadExtField::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = e.sample(&mut rng);
            let sq = e.mul(&a, &a);
            let r = e.sqrt(&sq).expect("square must have a root in F_p^2");
            assert_eq!(e.mul(&r, &r), sq);
        }
        // Every base element gets a root in the extension.
        for a in 0u64..50 {
            let z = e.embed(a);
            let r = e.sqrt(&z).expect("base elements are squares in F_p^2");
            assert_eq!(e.mul(&r, &r), z);
        }
    }
}
