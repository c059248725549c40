//! Bihomogeneous forms on a ruled surface over the projective line.
//!
//! A form here is homogeneous of degree `x_deg` in a fiber pair (x : y) and
//! has binary-form coefficients in (t0 : t1). The fiber coordinate x may
//! carry a twist weight: the coefficient of x^i y^(x_deg - i) is a binary
//! form of degree `base_deg + i * x_weight`. Weight 0 recovers plain
//! bidegree-(a, b) forms on P^1 x P^1; positive weight is the grading on the
//! surface obtained from a twisted rank-2 bundle, which is where the minor
//! systems of the quadric pencils live.

use thiserror::Error;

use super::field::{Field, PrimeField, QuadElem, QuadExtField};
use super::form::{det_form_matrix, gcd_list, projective_roots_fp2, BinaryForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BihomError {
    #[error("common zeros of an empty system are undefined")]
    EmptySystem,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BihomForm<F: Field> {
    x_deg: usize,
    x_weight: i64,
    base_deg: i64,
    cols: Vec<BinaryForm<F>>, // cols[i] multiplies x^i y^(x_deg - i)
}

impl<F: Field> BihomForm<F> {
    /// `cols[i]` must be a form of degree `base_deg + i * x_weight` or
    /// identically zero (its nominal degree is normalized on entry).
    pub fn new(x_deg: usize, x_weight: i64, base_deg: i64, cols: Vec<BinaryForm<F>>) -> Self {
        assert_eq!(cols.len(), x_deg + 1, "one coefficient per x-power");
        let cols = cols
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let want = base_deg + i as i64 * x_weight;
                if c.is_zero() {
                    BinaryForm::zero(c.field().clone(), want)
                } else {
                    assert_eq!(c.degree(), want, "coefficient degree grid mismatch");
                    c
                }
            })
            .collect();
        BihomForm {
            x_deg,
            x_weight,
            base_deg,
            cols,
        }
    }

    pub fn x_deg(&self) -> usize {
        self.x_deg
    }

    pub fn x_weight(&self) -> i64 {
        self.x_weight
    }

    pub fn base_deg(&self) -> i64 {
        self.base_deg
    }

    pub fn col(&self, i: usize) -> &BinaryForm<F> {
        &self.cols[i]
    }

    pub fn cols(&self) -> &[BinaryForm<F>] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn field(&self) -> &F {
        self.cols[0].field()
    }

    pub fn eval(&self, t: (&F::Elem, &F::Elem), x: (&F::Elem, &F::Elem)) -> F::Elem {
        let field = self.field().clone();
        let mut result = field.zero();
        let mut x_pow = field.one();
        let mut y_pows = Vec::with_capacity(self.x_deg + 1);
        let mut p = field.one();
        for _ in 0..=self.x_deg {
            y_pows.push(p.clone());
            p = field.mul(&p, x.1);
        }
        for (i, c) in self.cols.iter().enumerate() {
            let ct = c.eval(t.0, t.1);
            let term = field.mul(&ct, &x_pow);
            let term = field.mul(&term, &y_pows[self.x_deg - i]);
            result = field.add(&result, &term);
            x_pow = field.mul(&x_pow, x.0);
        }
        result
    }

    pub fn neg(&self) -> Self {
        BihomForm {
            x_deg: self.x_deg,
            x_weight: self.x_weight,
            base_deg: self.base_deg,
            cols: self.cols.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.x_deg, other.x_deg);
        assert_eq!(self.x_weight, other.x_weight);
        assert_eq!(self.base_deg, other.base_deg);
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| a.checked_add(b).expect("grid degrees agree"))
            .collect();
        BihomForm {
            x_deg: self.x_deg,
            x_weight: self.x_weight,
            base_deg: self.base_deg,
            cols,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.x_weight, other.x_weight, "weights must agree");
        let field = self.field().clone();
        let x_deg = self.x_deg + other.x_deg;
        let base_deg = self.base_deg + other.base_deg;
        let mut cols: Vec<BinaryForm<F>> = (0..=x_deg)
            .map(|i| BinaryForm::zero(field.clone(), base_deg + i as i64 * self.x_weight))
            .collect();
        for (i, a) in self.cols.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.cols.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                cols[i + j] = cols[i + j]
                    .checked_add(&a.mul(b))
                    .expect("graded product degrees agree");
            }
        }
        BihomForm {
            x_deg,
            x_weight: self.x_weight,
            base_deg,
            cols,
        }
    }

    /// Gcd of the coefficient forms: roots are the fibers over which the
    /// whole form vanishes identically. `None` when the form is zero.
    pub fn content(&self) -> Option<BinaryForm<F>> {
        gcd_list(&self.cols)
    }

    /// Restriction to a fixed base point, as a binary form in (x : y) over a
    /// possibly larger field.
    pub fn restrict_to_fiber<K: Field>(
        &self,
        target: &K,
        embed: &dyn Fn(&F::Elem) -> K::Elem,
        t0: &K::Elem,
        t1: &K::Elem,
    ) -> BinaryForm<K> {
        let coeffs: Vec<K::Elem> = (0..=self.x_deg)
            .rev()
            .map(|i| self.cols[i].map_field(target, embed).eval(t0, t1))
            .collect();
        // coeffs currently ordered x^deg .. x^0, i.e. matching the binary
        // form convention coeff[k] * x^(deg-k) y^k.
        BinaryForm::from_coeffs(target.clone(), coeffs)
    }

    /// Sylvester resultant eliminating the fiber pair (x : y); a binary form
    /// in (t0 : t1). Vanishes at exactly the fibers where the two restricted
    /// forms share a projective root (the zero restriction shares roots with
    /// everything).
    pub fn resultant_x(&self, other: &Self) -> BinaryForm<F> {
        assert!(self.x_deg >= 1 && other.x_deg >= 1);
        let field = self.field().clone();
        let m = self.x_deg;
        let n = other.x_deg;
        let size = m + n;
        // Row degrees chosen so every entry and every determinant term is
        // homogeneous; zero placeholders carry the right nominal degrees.
        let mut mat: Vec<Vec<BinaryForm<F>>> = Vec::with_capacity(size);
        for row in 0..n {
            let mut r = Vec::with_capacity(size);
            for col in 0..size {
                let k = col as i64 - row as i64;
                if (0..=m as i64).contains(&k) {
                    // Coefficient of x^(m-k): self.cols[m - k].
                    r.push(self.cols[m - k as usize].clone());
                } else {
                    r.push(BinaryForm::zero(field.clone(), 0));
                }
            }
            mat.push(r);
        }
        for row in 0..m {
            let mut r = Vec::with_capacity(size);
            for col in 0..size {
                let k = col as i64 - row as i64;
                if (0..=n as i64).contains(&k) {
                    r.push(other.cols[n - k as usize].clone());
                } else {
                    r.push(BinaryForm::zero(field.clone(), 0));
                }
            }
            mat.push(r);
        }
        det_form_matrix(&mat)
    }
}

/// A common zero of a bihomogeneous system, in normalized projective
/// coordinates over F_p or F_{p^2}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BihomPoint {
    pub t: (QuadElem, QuadElem),
    pub x: (QuadElem, QuadElem),
}

/// Common projective zeros of a system of bihomogeneous forms, with
/// coordinates in F_p or F_{p^2}.
///
/// Base points with residues in F_p are swept directly; extension base points
/// are located by pairwise elimination (resultants in the fiber pair, then
/// gcd over the base), so they are only reachable for systems with at least
/// two forms that are not identically zero. Positive-dimensional parts
/// (whole fibers, and the curve carved out by a single form) are enumerated
/// over F_p. This lists zeros over the stated fields; it is not a closure
/// certificate.
pub fn common_zeros_bihom(
    forms: &[BihomForm<PrimeField>],
) -> Result<Vec<BihomPoint>, BihomError> {
    if forms.is_empty() {
        return Err(BihomError::EmptySystem);
    }
    let field = *forms[0].field();
    let ext = QuadExtField::new(field);
    let p = field.modulus();
    let mut points: Vec<BihomPoint> = Vec::new();

    let active: Vec<&BihomForm<PrimeField>> = forms.iter().filter(|f| !f.is_zero()).collect();

    // Base points over F_p: direct substitution, fiber gcd in (x : y).
    let mut t_points: Vec<(QuadElem, QuadElem)> = Vec::with_capacity(p as usize + 1);
    for tau in 0..p {
        t_points.push((ext.embed(1), ext.embed(tau)));
    }
    t_points.push((ext.embed(0), ext.embed(1)));

    // Extension base points: candidates from pairwise elimination.
    if active.len() >= 2 {
        let mut candidate_gcd: Option<BinaryForm<PrimeField>> = None;
        let mut resultants = Vec::new();
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                if active[i].x_deg() >= 1 && active[j].x_deg() >= 1 {
                    resultants.push(active[i].resultant_x(active[j]));
                }
            }
        }
        for r in &resultants {
            if r.is_zero() {
                continue;
            }
            candidate_gcd = Some(match candidate_gcd {
                None => r.normalized(),
                Some(g) => g.gcd(r).expect("nonzero operands"),
            });
        }
        if let Some(g) = candidate_gcd {
            let roots = projective_roots_fp2(&g, &ext);
            for (t0, t1) in roots.points {
                if t1.im != 0 || t0.im != 0 {
                    t_points.push((t0, t1));
                }
            }
        }
    }

    let embed = |c: &u64| ext.embed(*c);
    for (t0, t1) in t_points {
        // Restrict every form to this fiber.
        let restricted: Vec<BinaryForm<QuadExtField>> = forms
            .iter()
            .map(|f| f.restrict_to_fiber(&ext, &embed, &t0, &t1))
            .collect();
        match gcd_list(&restricted) {
            None => {
                // Whole fiber vanishes; enumerate its F_p points.
                if t0.im == 0 && t1.im == 0 {
                    for xi in 0..p {
                        points.push(BihomPoint {
                            t: (t0, t1),
                            x: (ext.embed(1), ext.embed(xi)),
                        });
                    }
                    points.push(BihomPoint {
                        t: (t0, t1),
                        x: (ext.embed(0), ext.embed(1)),
                    });
                }
            }
            Some(g) if g.degree() >= 1 => {
                for (x0, x1) in fiber_roots(&ext, &g) {
                    points.push(BihomPoint {
                        t: (t0, t1),
                        x: (x0, x1),
                    });
                }
            }
            _ => {}
        }
    }

    for pt in &mut points {
        *pt = normalize_point(&ext, *pt);
    }
    points.sort_by_key(|q| (q.t.0.re, q.t.0.im, q.t.1.re, q.t.1.im, q.x.0.re, q.x.0.im, q.x.1.re, q.x.1.im));
    points.dedup();
    Ok(points)
}

/// Roots of a binary form over the quadratic extension, where computable:
/// explicit multiplicity splitting plus linear and quadratic factors (the
/// latter only when the discriminant has a root in the extension).
fn fiber_roots(
    ext: &QuadExtField,
    g: &BinaryForm<QuadExtField>,
) -> Vec<(QuadElem, QuadElem)> {
    let mut out = Vec::new();
    let Some(parts) = g.decompose() else {
        return out;
    };
    if parts.t1_mult > 0 {
        out.push((ext.embed(1), ext.embed(0)));
    }
    if parts.t0_mult > 0 {
        out.push((ext.embed(0), ext.embed(1)));
    }
    let u = parts.unit;
    match u.degree() {
        Some(1) => {
            let a = u.coeff(1);
            let b = u.coeff(0);
            let root = ext.neg(&ext.div(&b, &a).expect("nonzero leading"));
            out.push((ext.embed(1), root));
        }
        Some(2) => {
            let a = u.coeff(2);
            let b = u.coeff(1);
            let c = u.coeff(0);
            let disc = ext.sub(&ext.mul(&b, &b), &ext.mul(&ext.from_int(4), &ext.mul(&a, &c)));
            if let Some(s) = ext.sqrt(&disc) {
                let inv2a = ext
                    .inv(&ext.mul(&ext.from_int(2), &a))
                    .expect("nonzero leading");
                for sign in [s, ext.neg(&s)] {
                    let num = ext.add(&ext.neg(&b), &sign);
                    out.push((ext.embed(1), ext.mul(&num, &inv2a)));
                }
            }
        }
        _ => {}
    }
    out.sort_by_key(|q| (q.0.re, q.0.im, q.1.re, q.1.im));
    out.dedup();
    out
}

fn normalize_point(ext: &QuadExtField, pt: BihomPoint) -> BihomPoint {
    let norm_pair = |(a, b): (QuadElem, QuadElem)| -> (QuadElem, QuadElem) {
        if !ext.is_zero(&a) {
            let inv = ext.inv(&a).unwrap();
            (ext.one(), ext.mul(&b, &inv))
        } else if !ext.is_zero(&b) {
            let inv = ext.inv(&b).unwrap();
            (ext.mul(&a, &inv), ext.one())
        } else {
            (a, b)
        }
    };
    BihomPoint {
        t: norm_pair(pt.t),
        x: norm_pair(pt.x),
    }
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
    fn single_form_x_t0_zero_set() {
        // x * t0 on P^1 x P^1: zeros are the fiber t0 = 0 plus the section x = 0.
        let f = fp(11);
        let x_t0 = BihomForm::new(
            1,
            0,
            1,
            vec![BinaryForm::zero(f, 1), form(f, &[1, 0])],
        );
        let zeros = common_zeros_bihom(&[x_t0]).unwrap();
        // Section x = 0 over each of the 12 F_p base points, plus the whole
        // fiber over t0 = 0 (12 points, one shared with the section).
        assert_eq!(zeros.len(), 12 + 12 - 1);
        let f_ext = QuadExtField::new(f);
        for z in &zeros {
            assert!(
                f_ext.is_zero(&z.x.0) || f_ext.is_zero(&z.t.0),
                "every zero has x = 0 or t0 = 0"
            );
        }
    }

    #[test]
    fn coordinate_forms_have_no_common_zero() {
        let f = fp(11);
        let x = BihomForm::new(1, 0, 0, vec![BinaryForm::zero(f, 0), form(f, &[1])]);
        let y = BihomForm::new(1, 0, 0, vec![form(f, &[1]), BinaryForm::zero(f, 0)]);
        let zeros = common_zeros_bihom(&[x, y]).unwrap();
        assert!(zeros.is_empty());
    }

    #[test]
    fn planted_common_zero_is_found() {
        let f = fp(10007);
        let ext = QuadExtField::new(f);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..40 {
            // Plant a zero at t = (1 : tau), x = (xi : 1) with F_p coordinates,
            // using forms L_i = a_i(t) * (x - xi*y) + (t1 - tau*t0) * b_i(t) * y.
            let tau = f.sample(&mut rng);
            let xi = f.sample(&mut rng);
            let lin_t = form(f, &[f.neg(&tau) as i64, 1]); // t1 - tau t0
            let mut system = Vec::new();
            for _ in 0..2 {
                let a = BinaryForm::random(f, 1, &mut rng);
                let b = BinaryForm::random(f, 0, &mut rng);
                let col_y = lin_t
                    .mul(&b)
                    .checked_add(&a.scale(&f.neg(&xi)))
                    .expect("degree 1 both");
                system.push(BihomForm::new(1, 0, 1, vec![col_y, a]));
            }
            let zeros = common_zeros_bihom(&system).unwrap();
            let want_t = (ext.embed(1), ext.embed(tau));
            let want_x = if xi == 0 {
                (ext.embed(0), ext.embed(1))
            } else {
                (ext.embed(1), ext.embed(f.inv(&xi).unwrap()))
            };
            assert!(
                zeros.iter().any(|z| z.t == want_t && z.x == want_x),
                "planted point missing in trial {trial}"
            );
        }
    }

    #[test]
    fn resultant_x_matches_pointwise_resultant() {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..60 {
            let w = rng.gen_range(0..3);
            let base_a = rng.gen_range(0..3);
            let base_b = rng.gen_range(0..3);
            let a = BihomForm::new(
                2,
                w,
                base_a,
                (0..3)
                    .map(|i| BinaryForm::random(f, base_a + i * w, &mut rng))
                    .collect(),
            );
            let b = BihomForm::new(
                2,
                w,
                base_b,
                (0..3)
                    .map(|i| BinaryForm::random(f, base_b + i * w, &mut rng))
                    .collect(),
            );
            let res = a.resultant_x(&b);
            for tau in 0..20u64 {
                let embed = |c: &u64| *c;
                let fa = a.restrict_to_fiber(&f, &embed, &1, &tau);
                let fb = b.restrict_to_fiber(&f, &embed, &1, &tau);
                let pointwise = if fa.is_zero() || fb.is_zero() {
                    0
                } else {
                    fa.resultant(&fb).unwrap()
                };
                assert_eq!(res.eval(&1, &tau), pointwise);
            }
        }
    }
}
