//! Homogeneous binary forms in (t0 : t1).
//!
//! A form of degree d stores d+1 coefficients; index k multiplies
//! t0^(d-k) t1^k. The identically-zero form is a distinguished value carrying
//! a nominal degree so that degree bookkeeping survives arithmetic (forms
//! prescribed a negative degree are identically zero).
//!
//! Roots at (1:0) and (0:1) are handled by explicit power extraction before
//! dehomogenizing, so gcds and root listings never drop the points at
//! infinity.

use rand::RngCore;
use thiserror::Error;

use super::field::{Field, PrimeField, QuadElem, QuadExtField};
use super::poly::{self, Poly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },
    #[error("gcd of two identically-zero forms is undefined")]
    BothZero,
    #[error("resultant requires both degrees >= 1")]
    ResultantDegree,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<F: Field> {
    field: F,
    degree: i64,
    coeffs: Vec<F::Elem>, // empty <=> identically zero; else len = degree + 1
}

impl<F: Field> BinaryForm<F> {
    /// The zero form with a nominal degree (negative degrees are fine).
    pub fn zero(field: F, degree: i64) -> Self {
        BinaryForm {
            field,
            degree,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(field: F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "use zero() for the empty form");
        let degree = coeffs.len() as i64 - 1;
        BinaryForm {
            field,
            degree,
            coeffs,
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        BinaryForm {
            field,
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// Uniform random form of the prescribed degree; identically zero when
    /// the degree is negative.
    pub fn random(field: F, degree: i64, rng: &mut dyn RngCore) -> Self {
        if degree < 0 {
            return BinaryForm::zero(field, degree);
        }
        let coeffs = (0..=degree).map(|_| field.sample(rng)).collect();
        BinaryForm {
            field,
            degree,
            coeffs,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() || self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// A nonzero binary form of positive degree always has projective roots
    /// over the algebraic closure.
    pub fn has_root_over_closure(&self) -> bool {
        self.is_zero() || self.degree >= 1
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FormError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(FormError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(BinaryForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FormError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BinaryForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        BinaryForm {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return BinaryForm::zero(self.field.clone(), degree);
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
        BinaryForm {
            field: self.field.clone(),
            degree,
            coeffs: out,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm::constant(self.field.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Homogeneous evaluation at (t0, t1).
    pub fn eval(&self, t0: &F::Elem, t1: &F::Elem) -> F::Elem {
        if self.coeffs.is_empty() {
            return self.field.zero();
        }
        let d = self.coeffs.len() - 1;
        let mut t0_pows = Vec::with_capacity(d + 1);
        let mut p = self.field.one();
        for _ in 0..=d {
            t0_pows.push(p.clone());
            p = self.field.mul(&p, t0);
        }
        let mut result = self.field.zero();
        let mut t1_pow = self.field.one();
        for (k, c) in self.coeffs.iter().enumerate() {
            let term = self.field.mul(c, &t0_pows[d - k]);
            let term = self.field.mul(&term, &t1_pow);
            result = self.field.add(&result, &term);
            t1_pow = self.field.mul(&t1_pow, t1);
        }
        result
    }

    pub fn map_field<G: Field>(
        &self,
        target: &G,
        embed: impl Fn(&F::Elem) -> G::Elem,
    ) -> BinaryForm<G> {
        if self.coeffs.is_empty() {
            return BinaryForm::zero(target.clone(), self.degree);
        }
        BinaryForm {
            field: target.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(embed).collect(),
        }
    }

    /// Splits off the roots at (1:0) and (0:1):
    /// `f = t0^t0_mult * t1^t1_mult * unit-part`, where the unit part
    /// dehomogenizes (t = t1/t0) to a polynomial with nonzero constant and
    /// leading coefficients. `None` for the zero form.
    pub fn decompose(&self) -> Option<FormParts<F>> {
        if self.is_zero() {
            return None;
        }
        let lo = self
            .coeffs
            .iter()
            .position(|c| !self.field.is_zero(c))
            .unwrap();
        let hi = self
            .coeffs
            .iter()
            .rposition(|c| !self.field.is_zero(c))
            .unwrap();
        let unit = Poly::from_coeffs(self.field.clone(), self.coeffs[lo..=hi].to_vec());
        Some(FormParts {
            t1_mult: lo,
            t0_mult: self.coeffs.len() - 1 - hi,
            unit,
        })
    }

    /// Rebuilds `t0^t0_mult * t1^t1_mult * homogenization(unit)`.
    pub fn recompose(field: F, parts: &FormParts<F>) -> Self {
        let ud = parts.unit.degree().expect("unit part is nonzero");
        let degree = (parts.t0_mult + parts.t1_mult + ud) as i64;
        let mut coeffs = vec![field.zero(); degree as usize + 1];
        for (k, c) in parts.unit.coeffs().iter().enumerate() {
            coeffs[parts.t1_mult + k] = c.clone();
        }
        BinaryForm {
            field,
            degree,
            coeffs,
        }
    }

    /// Monic gcd in the graded sense: positive gcd degree is equivalent to a
    /// shared projective root over the algebraic closure. gcd(f, 0) = f
    /// normalized; gcd(0, 0) is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self, FormError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(FormError::BothZero),
            (true, false) => Ok(other.normalized()),
            (false, true) => Ok(self.normalized()),
            (false, false) => {
                let a = self.decompose().unwrap();
                let b = other.decompose().unwrap();
                let unit = a.unit.gcd(&b.unit);
                let parts = FormParts {
                    t0_mult: a.t0_mult.min(b.t0_mult),
                    t1_mult: a.t1_mult.min(b.t1_mult),
                    unit,
                };
                Ok(BinaryForm::recompose(self.field.clone(), &parts))
            }
        }
    }

    /// Normalizes the leading (highest t1-power) nonzero coefficient to 1.
    pub fn normalized(&self) -> Self {
        match self.decompose() {
            None => self.clone(),
            Some(parts) => {
                let lead = parts.unit.leading().unwrap().clone();
                let linv = self.field.inv(&lead).expect("nonzero leading");
                self.scale(&linv)
            }
        }
    }

    /// Exact division; `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(
                self.field.clone(),
                self.degree - divisor.degree(),
            ));
        }
        let a = self.decompose().unwrap();
        let b = divisor.decompose().unwrap();
        if a.t0_mult < b.t0_mult || a.t1_mult < b.t1_mult {
            return None;
        }
        let unit = a.unit.div_exact(&b.unit)?;
        let parts = FormParts {
            t0_mult: a.t0_mult - b.t0_mult,
            t1_mult: a.t1_mult - b.t1_mult,
            unit,
        };
        Some(BinaryForm::recompose(self.field.clone(), &parts))
    }

    /// Removes from `self` every root shared with `e` (to full multiplicity).
    /// Returns `self` unchanged when either side is zero.
    pub fn strip_shared_roots(&self, e: &Self) -> Self {
        if self.is_zero() || e.is_zero() {
            return self.clone();
        }
        let mut h = self.clone();
        loop {
            let g = h.gcd(e).expect("both nonzero");
            if g.degree() <= 0 || g.is_zero() {
                return h;
            }
            h = h.div_exact(&g).expect("gcd divides");
        }
    }

    /// Sylvester resultant of two forms of degree >= 1. Nonzero exactly when
    /// the forms share no projective root over the closure (a form that is
    /// identically zero shares roots with everything, giving 0).
    pub fn resultant(&self, other: &Self) -> Result<F::Elem, FormError> {
        if self.degree < 1 || other.degree < 1 {
            return Err(FormError::ResultantDegree);
        }
        let m = self.degree as usize;
        let n = other.degree as usize;
        let size = m + n;
        let mut mat = vec![vec![self.field.zero(); size]; size];
        for row in 0..n {
            for k in 0..=m {
                mat[row][row + k] = self.coeff(k);
            }
        }
        for row in 0..m {
            for k in 0..=n {
                mat[n + row][row + k] = other.coeff(k);
            }
        }
        Ok(det_elem_matrix(&self.field, mat))
    }
}

/// Root-multiplicity decomposition of a nonzero form.
#[derive(Clone, Debug)]
pub struct FormParts<F: Field> {
    pub t0_mult: usize,
    pub t1_mult: usize,
    pub unit: Poly<F>,
}

/// Determinant over a field by Gaussian elimination.
fn det_elem_matrix<F: Field>(field: &F, mut mat: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = mat.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&mat[r][col])) else {
            return field.zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = field.neg(&det);
        }
        let pval = mat[col][col].clone();
        det = field.mul(&det, &pval);
        let pinv = field.inv(&pval).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&mat[r][col]) {
                continue;
            }
            let factor = field.mul(&mat[r][col], &pinv);
            for c in col..n {
                let sub = field.mul(&factor, &mat[col][c]);
                mat[r][c] = field.sub(&mat[r][c], &sub);
            }
        }
    }
    det
}

/// Gcd over a list, skipping identically-zero entries. `None` when every
/// entry is zero (the common zero locus is then everything).
pub fn gcd_list<F: Field>(forms: &[BinaryForm<F>]) -> Option<BinaryForm<F>> {
    let mut acc: Option<BinaryForm<F>> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.normalized(),
            Some(g) => g.gcd(f).expect("nonzero operands"),
        });
    }
    acc
}

/// Determinant of a square matrix of binary forms by Laplace expansion
/// (matrices here are at most 4x4 Sylvester blocks).
pub fn det_form_matrix<F: Field>(mat: &[Vec<BinaryForm<F>>]) -> BinaryForm<F> {
    let n = mat.len();
    assert!(n > 0 && mat.iter().all(|r| r.len() == n));
    if n == 1 {
        return mat[0][0].clone();
    }
    let field = mat[0][0].field().clone();
    let mut acc: Option<BinaryForm<F>> = None;
    for (col, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BinaryForm<F>>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = entry.mul(&det_form_matrix(&minor));
        if col % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.checked_add(&term).expect("determinant terms homogeneous"),
        });
    }
    match acc {
        Some(a) => a,
        None => {
            // Whole first row zero: determinant is zero; degree bookkeeping
            // is irrelevant downstream for zero forms.
            BinaryForm::zero(field, 0)
        }
    }
}

/// Projective roots of a prime-field form with coordinates in F_p or F_{p^2},
/// plus the degrees of irreducible factors beyond quadratic (whose roots
/// exist over the closure but are not representable here).
#[derive(Clone, Debug, Default)]
pub struct ProjectiveRoots {
    pub points: Vec<(QuadElem, QuadElem)>,
    pub higher_factor_degrees: Vec<usize>,
}

pub fn projective_roots_fp2(f: &BinaryForm<PrimeField>, ext: &QuadExtField) -> ProjectiveRoots {
    let mut out = ProjectiveRoots::default();
    let Some(parts) = f.decompose() else {
        return out; // zero form: callers treat the whole line separately
    };
    if parts.t1_mult > 0 {
        out.points.push((ext.embed(1), ext.embed(0)));
    }
    if parts.t0_mult > 0 {
        out.points.push((ext.embed(0), ext.embed(1)));
    }
    let (finite, higher) = poly::roots_up_to_quadratic(&parts.unit, ext);
    for tau in finite {
        out.points.push((ext.embed(1), tau));
    }
    out.higher_factor_degrees = higher;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn form(field: PrimeField, coeffs: &[i64]) -> BinaryForm<PrimeField> {
        BinaryForm::from_coeffs(field, coeffs.iter().map(|c| field.elem(*c)).collect())
    }

    #[test]
    fn eval_examples() {
        let f = fp(10007);
        // t0^2 + t1^2 at (1, 0) = 1.
        let g = form(f, &[1, 0, 1]);
        assert_eq!(g.eval(&1, &0), 1);
        // mul(t0, t1) = t0 t1 of degree 2.
        let t0 = form(f, &[1, 0]);
        let t1 = form(f, &[0, 1]);
        let prod = t0.mul(&t1);
        assert_eq!(prod.degree(), 2);
        assert_eq!(prod.eval(&3, &5), 15);
    }

    #[test]
    fn product_evaluation_is_multiplicative() {
        let f = fp(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let a = BinaryForm::random(f, rng.gen_range(0..6), &mut rng);
            let b = BinaryForm::random(f, rng.gen_range(0..6), &mut rng);
            let t0 = f.sample(&mut rng);
            let t1 = f.sample(&mut rng);
            let lhs = a.mul(&b).eval(&t0, &t1);
            let rhs = f.mul(&a.eval(&t0, &t1), &b.eval(&t0, &t1));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homogeneity() {
        let f = fp(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let deg = rng.gen_range(0..7);
            let a = BinaryForm::random(f, deg, &mut rng);
            let t0 = f.sample(&mut rng);
            let t1 = f.sample(&mut rng);
            let lam = f.sample(&mut rng);
            let lhs = a.eval(&f.mul(&lam, &t0), &f.mul(&lam, &t1));
            let rhs = f.mul(&f.pow_u64(lam, deg as u64), &a.eval(&t0, &t1));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gcd_spec_cases() {
        let f = fp(10007);
        // gcd(t0 t1, t0^2) = t0.
        let t0t1 = form(f, &[0, 1, 0]);
        let t0sq = form(f, &[1, 0, 0]);
        let g = t0t1.gcd(&t0sq).unwrap();
        assert_eq!(g.degree(), 1);
        assert!(f.is_zero(&g.eval(&0, &1)));
        // gcd(f, 1) = 1.
        let one = BinaryForm::constant(f, 1);
        let any = form(f, &[3, 1, 4, 1]);
        let g = any.gcd(&one).unwrap();
        assert_eq!(g.degree(), 0);
        // Planted common factor.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let u = BinaryForm::random(f, rng.gen_range(1..4), &mut rng);
            if u.is_zero() {
                continue;
            }
            let a = BinaryForm::random(f, rng.gen_range(1..4), &mut rng);
            let b = BinaryForm::random(f, rng.gen_range(1..4), &mut rng);
            if a.is_zero() || b.is_zero() || a.gcd(&b).unwrap().degree() > 0 {
                continue;
            }
            let g = u.mul(&a).gcd(&u.mul(&b)).unwrap();
            assert_eq!(g.degree(), u.degree(), "gcd must associate to u");
            assert!(u.mul(&a).div_exact(&g).is_some());
        }
    }

    #[test]
    fn resultant_matches_gcd() {
        let f = fp(10007);
        // resultant(t0, t1) is a unit.
        let t0 = form(f, &[1, 0]);
        let t1 = form(f, &[0, 1]);
        assert_ne!(t0.resultant(&t1).unwrap(), 0);
        // resultant(f, f) = 0 for deg >= 1.
        let g = form(f, &[2, 3, 5]);
        assert_eq!(g.resultant(&g).unwrap(), 0);
        // Degree-0 inputs are rejected.
        let one = BinaryForm::constant(f, 1);
        assert_eq!(one.resultant(&g), Err(FormError::ResultantDegree));
        // Random agreement: res = 0 <=> gcd degree > 0.
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..300 {
            let a = BinaryForm::random(f, rng.gen_range(1..5), &mut rng);
            let b = BinaryForm::random(f, rng.gen_range(1..5), &mut rng);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let res_zero = f.is_zero(&a.resultant(&b).unwrap());
            let gcd_pos = a.gcd(&b).unwrap().degree() > 0;
            assert_eq!(res_zero, gcd_pos);
        }
    }

    #[test]
    fn roots_include_points_at_infinity() {
        let f = fp(10007);
        let ext = QuadExtField::new(f);
        // t0 * t1 * (t0 - 2 t1): roots at (0:1), (1:0), and a finite point.
        let t0 = form(f, &[1, 0]);
        let t1 = form(f, &[0, 1]);
        let lin = form(f, &[1, -2]);
        let prod = t0.mul(&t1).mul(&lin);
        let roots = projective_roots_fp2(&prod, &ext);
        assert_eq!(roots.points.len(), 3);
        for (a, b) in &roots.points {
            let pe = prod.map_field(&ext, |c| ext.embed(*c));
            assert!(ext.is_zero(&pe.eval(a, b)));
        }
    }

    #[test]
    fn strip_shared_roots_removes_all_copies() {
        let f = fp(10007);
        let u = form(f, &[1, 3]);
        let v = form(f, &[1, 7]);
        let h = u.mul(&u).mul(&v); // u^2 v
        let stripped = h.strip_shared_roots(&u);
        assert_eq!(stripped.degree(), 1);
        assert!(stripped.gcd(&u).unwrap().degree() == 0);
    }
}
