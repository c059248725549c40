//! Dense univariate polynomials over a field, with Euclidean division, gcd,
//! and radical factorization over prime fields.
//!
//! Degrees in this crate stay tiny (tens), so everything is plain schoolbook
//! arithmetic on dense coefficient vectors.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField, QuadElem, QuadExtField};

/// A dense univariate polynomial. Invariant: the leading coefficient is
/// nonzero; the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>, // coeffs[k] multiplies x^k
}

impl<F: Field> Poly<F> {
    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        let coeffs = if field.is_zero(&c) { vec![] } else { vec![c] };
        Poly { field, coeffs }
    }

    pub fn from_coeffs(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// The monomial x.
    pub fn x(field: F) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        Poly { field, coeffs }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.field.add(&self.coeff(k), &other.coeff(k)));
        }
        Poly::from_coeffs(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.field.sub(&self.coeff(k), &other.coeff(k)));
        }
        Poly::from_coeffs(self.field.clone(), out)
    }

    pub fn neg(&self) -> Self {
        let out = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        Poly::from_coeffs(self.field.clone(), out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Poly::zero(self.field.clone());
        }
        let out = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::from_coeffs(self.field.clone(), out)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.leading().expect("division by zero polynomial");
        let dinv = self
            .field
            .inv(dlead)
            .expect("leading coefficient must be invertible");
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(self.field.clone()), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![self.field.zero(); qlen];
        for k in (0..qlen).rev() {
            let c = self.field.mul(&rem[k + ddeg], &dinv);
            if self.field.is_zero(&c) {
                continue;
            }
            quot[k] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = self.field.sub(&rem[k + j], &self.field.mul(&c, d));
            }
        }
        (
            Poly::from_coeffs(self.field.clone(), quot),
            Poly::from_coeffs(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let linv = self.field.inv(l).expect("field leading coefficient");
                self.scale(&linv)
            }
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field.clone());
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| self.field.mul(&self.field.from_int(k as i64), c))
            .collect();
        Poly::from_coeffs(self.field.clone(), out)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::constant(self.field.clone(), self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Maps coefficients into another field through `embed`.
    pub fn map_field<G: Field>(&self, target: &G, embed: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::from_coeffs(target.clone(), self.coeffs.iter().map(embed).collect())
    }
}

/// The quotient field `F_p[x]/(m)` for a monic irreducible `m`.
///
/// Used to evaluate polynomial data at a root of `m` without leaving exact
/// arithmetic; inversion is by extended Euclid, which succeeds for every
/// nonzero residue precisely because `m` is irreducible.
#[derive(Clone, PartialEq, Debug)]
pub struct QuotientField {
    base: PrimeField,
    modulus: Poly<PrimeField>,
}

impl QuotientField {
    /// `modulus` must be monic irreducible of degree >= 1 (not checked beyond
    /// degree; callers obtain it from the factorizer).
    pub fn new(base: PrimeField, modulus: Poly<PrimeField>) -> Self {
        assert!(
            modulus.degree().map_or(false, |d| d >= 1),
            "modulus must be non-constant"
        );
        QuotientField {
            base,
            modulus: modulus.monic(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &Poly<PrimeField> {
        &self.modulus
    }

    /// The residue class of x, i.e. the adjoined root.
    pub fn generator(&self) -> Poly<PrimeField> {
        Poly::x(self.base).rem(&self.modulus)
    }

    pub fn embed_base(&self, a: u64) -> Poly<PrimeField> {
        Poly::constant(self.base, a)
    }
}

impl Field for QuotientField {
    type Elem = Poly<PrimeField>;

    fn zero(&self) -> Self::Elem {
        Poly::zero(self.base)
    }

    fn one(&self) -> Self::Elem {
        Poly::constant(self.base, 1)
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        Poly::constant(self.base, self.base.elem(n))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b).rem(&self.modulus)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        // Extended Euclid on (a, m).
        let mut r0 = a.rem(&self.modulus);
        let mut r1 = self.modulus.clone();
        let mut s0 = self.one();
        let mut s1 = self.zero();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd; irreducible modulus makes it a nonzero constant.
        let lead = r0.leading()?.clone();
        let linv = self.base.inv(&lead)?;
        Some(s0.scale(&linv).rem(&self.modulus))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let k = self.degree();
        let coeffs = (0..k).map(|_| self.base.sample(rng)).collect();
        Poly::from_coeffs(self.base, coeffs)
    }
}

/// Distinct monic irreducible factors of `f` over `F_p` (the radical), via
/// squarefree reduction, distinct-degree splitting, and Cantor–Zassenhaus.
pub fn distinct_irreducible_factors(f: &Poly<PrimeField>) -> Vec<Poly<PrimeField>> {
    let field = *f.field();
    let mut out = Vec::new();
    let mut stack = vec![radical(f)];
    while let Some(g) = stack.pop() {
        let Some(d) = g.degree() else { continue };
        if d == 0 {
            continue;
        }
        collect_factors(&g, &mut out);
    }
    out.sort_by(|a, b| {
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap_or(0);
        da.cmp(&db).then_with(|| {
            let ca: Vec<u64> = a.coeffs().to_vec();
            let cb: Vec<u64> = b.coeffs().to_vec();
            ca.cmp(&cb)
        })
    });
    out.dedup();
    let _ = field;
    out
}

/// Squarefree monic polynomial with the same roots as `f`.
fn radical(f: &Poly<PrimeField>) -> Poly<PrimeField> {
    let field = *f.field();
    let p = field.modulus();
    let mut g = f.monic();
    loop {
        let Some(d) = g.degree() else {
            return g;
        };
        if d == 0 {
            return g;
        }
        let der = g.derivative();
        if der.is_zero() {
            // g = h(x^p) = h(x)^p in characteristic p: take the p-th root.
            let mut coeffs = Vec::new();
            for k in (0..=d).step_by(p as usize) {
                coeffs.push(g.coeff(k));
            }
            g = Poly::from_coeffs(field, coeffs);
            continue;
        }
        let s = g.gcd(&der);
        if s.is_constant() {
            return g;
        }
        g = g.div_exact(&s).expect("gcd divides");
    }
}

fn collect_factors(f: &Poly<PrimeField>, out: &mut Vec<Poly<PrimeField>>) {
    // f is monic squarefree here. Distinct-degree phase first.
    let field = *f.field();
    let p = field.modulus();
    let mut rest = f.clone();
    let mut frob = Poly::x(field); // x^(p^d) mod rest, updated as d grows
    let mut d = 0usize;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            // What remains is irreducible.
            out.push(rest.monic());
            break;
        }
        frob = frob.pow_mod(p as u128, &rest);
        let diff = frob.sub(&Poly::x(field));
        let g = rest.gcd(&diff);
        if let Some(gd) = g.degree() {
            if gd > 0 {
                split_equal_degree(&g, d, out);
                rest = rest.div_exact(&g).expect("gcd divides");
                frob = frob.rem(&rest);
            }
        }
    }
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn split_equal_degree(f: &Poly<PrimeField>, d: usize, out: &mut Vec<Poly<PrimeField>>) {
    let field = *f.field();
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.monic());
        return;
    }
    let p = field.modulus();
    // Deterministic splitting attempts: seed from the coefficients.
    let mut h = 0xcbf29ce484222325u64;
    for c in f.coeffs() {
        h = (h ^ c).wrapping_mul(0x100000001b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(h);
    let e = ((p as u128).pow(d as u32) - 1) / 2;
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| field.sample(&mut rng)).collect();
        let a = Poly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let b = a.pow_mod(e, f);
        let b1 = b.sub(&Poly::constant(field, 1));
        let g = f.gcd(&b1);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < deg {
                split_equal_degree(&g, d, out);
                split_equal_degree(&f.div_exact(&g).expect("gcd divides"), d, out);
                return;
            }
        }
    }
}

/// Roots of `f` in `F_p`.
pub fn roots_in_base(f: &Poly<PrimeField>) -> Vec<u64> {
    let field = *f.field();
    let mut roots: Vec<u64> = distinct_irreducible_factors(f)
        .into_iter()
        .filter(|g| g.degree() == Some(1))
        .map(|g| field.neg(&g.coeff(0)))
        .collect();
    roots.sort_unstable();
    roots
}

/// Roots of `f` with coordinates in `F_p` or `F_{p^2}`, plus the degrees of
/// any irreducible factors whose roots live in higher extensions.
pub fn roots_up_to_quadratic(
    f: &Poly<PrimeField>,
    ext: &QuadExtField,
) -> (Vec<QuadElem>, Vec<usize>) {
    let field = *f.field();
    let mut points = Vec::new();
    let mut higher = Vec::new();
    for g in distinct_irreducible_factors(f) {
        match g.degree() {
            Some(1) => points.push(ext.embed(field.neg(&g.coeff(0)))),
            Some(2) => {
                // x^2 + bx + c, roots (-b ± sqrt(b^2 - 4c)) / 2.
                let b = g.coeff(1);
                let c = g.coeff(0);
                let disc = field.sub(&field.mul(&b, &b), &field.mul(&4, &c));
                let s = ext
                    .sqrt(&ext.embed(disc))
                    .expect("base elements are squares in F_p^2");
                let half = ext.embed(field.inv(&2).unwrap());
                let mb = ext.embed(field.neg(&b));
                points.push(ext.mul(&ext.add(&mb, &s), &half));
                points.push(ext.mul(&ext.sub(&mb, &s), &half));
            }
            Some(d) if d >= 3 => higher.push(d),
            _ => {}
        }
    }
    points.sort_by_key(|q| (q.re, q.im));
    points.dedup();
    (points, higher)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn rand_poly(field: PrimeField, deg: usize, rng: &mut impl Rng) -> Poly<PrimeField> {
        let mut coeffs: Vec<u64> = (0..deg).map(|_| field.sample(rng)).collect();
        coeffs.push(1 + field.sample(rng) % (field.modulus() - 1));
        Poly::from_coeffs(field, coeffs)
    }

    #[test]
    fn divrem_reconstructs() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = rand_poly(f, rng.gen_range(0..8), &mut rng);
            let b = rand_poly(f, rng.gen_range(0..5), &mut rng);
            let (q, r) = a.divrem(&b);
            assert_eq!(q.mul(&b).add(&r), a);
            if let (Some(rd), Some(bd)) = (r.degree(), b.degree()) {
                assert!(rd < bd);
            }
        }
    }

    #[test]
    fn gcd_divides_both() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let a = rand_poly(f, rng.gen_range(1..7), &mut rng);
            let b = rand_poly(f, rng.gen_range(1..7), &mut rng);
            let g = a.gcd(&b);
            assert!(a.div_exact(&g).is_some());
            assert!(b.div_exact(&g).is_some());
        }
    }

    #[test]
    fn factors_multiply_back_to_radical() {
        let f = fp(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = rand_poly(f, rng.gen_range(1..10), &mut rng);
            let factors = distinct_irreducible_factors(&a);
            let mut prod = Poly::constant(f, 1);
            for g in &factors {
                // Irreducibility spot check: degree-1 or no roots in F_p.
                if g.degree() == Some(2) {
                    assert!(roots_in_base(g).is_empty());
                }
                assert!(a.div_exact(g).is_some(), "factor must divide");
                prod = prod.mul(g);
            }
            // prod is the radical, so it divides a and has the same roots.
            assert!(a.div_exact(&prod).is_some());
        }
    }

    #[test]
    fn roots_found_for_split_polynomials() {
        let f = fp(10007);
        // (x - 3)(x - 5)(x^2 + 1)-ish product with known roots.
        let x = Poly::x(f);
        let a = x.sub(&Poly::constant(f, 3));
        let b = x.sub(&Poly::constant(f, 5));
        let c = x.mul(&x).add(&Poly::constant(f, 1));
        let prod = a.mul(&b).mul(&c);
        assert_eq!(roots_in_base(&prod).len(), 2 + roots_in_base(&c).len());
        let ext = QuadExtField::new(f);
        let (pts, higher) = roots_up_to_quadratic(&prod, &ext);
        assert!(higher.is_empty());
        assert_eq!(pts.len(), 4); // 3, 5, and the two roots of x^2 + 1
        for r in pts {
            let val = prod.map_field(&ext, |c| ext.embed(*c)).eval(&r);
            assert!(ext.is_zero(&val));
        }
    }

    #[test]
    fn small_characteristic_radical() {
        // Derivative vanishes: x^11 - x over F_11 has radical with all of F_11 as roots.
        let f = fp(11);
        let x = Poly::x(f);
        let xp = x.pow_mod(11, &Poly::from_coeffs(f, vec![1; 14]));
        let _ = xp;
        let mut coeffs = vec![0u64; 12];
        coeffs[11] = 1;
        let poly = Poly::from_coeffs(f, coeffs).sub(&x); // x^11 - x
        let sq = poly.mul(&poly); // force the p-th-root path via repeated factors
        assert_eq!(roots_in_base(&sq).len(), 11);
    }

    #[test]
    fn quotient_field_inverse() {
        let f = fp(101);
        // x^2 + 1 is irreducible mod 101? 101 = 1 mod 4, so -1 is a QR; pick x^2 - n instead.
        let n = f.least_nonresidue();
        let m = Poly::from_coeffs(f, vec![f.neg(&n), 0, 1]);
        let k = QuotientField::new(f, m);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let a = k.sample(&mut rng);
            if k.is_zero(&a) {
                continue;
            }
            let inv = k.inv(&a).unwrap();
            assert!(k.is_one(&k.mul(&a, &inv)));
        }
    }
}
