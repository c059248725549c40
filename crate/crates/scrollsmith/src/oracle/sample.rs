//! Sampling of concrete quadric pencils and their restrictions.
//!
//! An instance fixes the two symmetric coefficient grids alpha and beta:
//! f_m(x, t) = sum over i <= j of coeff_m[i][j](t) x_i x_j, with
//! deg coeff_1[i][j] = d_i + d_j + b1 and deg coeff_2[i][j] = d_i + d_j + b2
//! (identically zero when the degree is negative). Coefficients are sampled
//! uniformly, so "general member" questions become questions about one
//! random instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polyalg::{BihomForm, BinaryForm, Field, PrimeField};
use crate::scroll::ScrollParams;

/// One member of the pencil: a symmetric grid of coefficient forms.
#[derive(Clone, Debug)]
pub struct QuadricEquation {
    /// Upper-triangular storage: coeff[i][j - i] for 0-based i <= j.
    coeff: Vec<Vec<BinaryForm<PrimeField>>>,
    twist: i64,
}

impl QuadricEquation {
    fn sample(params: &ScrollParams, twist: i64, field: PrimeField, rng: &mut ChaCha8Rng) -> Self {
        let mut coeff = Vec::with_capacity(5);
        for i in 1..=5usize {
            let mut row = Vec::with_capacity(5 - i + 1);
            for j in i..=5usize {
                let deg = params.degree(i) + params.degree(j) + twist;
                row.push(BinaryForm::random(field, deg, rng));
            }
            coeff.push(row);
        }
        QuadricEquation { coeff, twist }
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Coefficient of x_i x_j (1-based, unordered).
    pub fn coeff(&self, i: usize, j: usize) -> &BinaryForm<PrimeField> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        assert!((1..=5).contains(&i) && j <= 5);
        &self.coeff[i - 1][j - i]
    }

    /// Evaluates f(t, x) for explicit coordinates in any field containing
    /// the coefficients through `embed`.
    pub fn eval<K: Field>(
        &self,
        target: &K,
        embed: &dyn Fn(&u64) -> K::Elem,
        t: (&K::Elem, &K::Elem),
        x: &[K::Elem; 5],
    ) -> K::Elem {
        let mut acc = target.zero();
        for i in 1..=5usize {
            for j in i..=5usize {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let cv = c.map_field(target, embed).eval(t.0, t.1);
                let term = target.mul(&cv, &target.mul(&x[i - 1], &x[j - 1]));
                acc = target.add(&acc, &term);
            }
        }
        acc
    }

    /// The fiberwise gradient (d f / d x_1, ..., d f / d x_5) at a point.
    pub fn grad_x<K: Field>(
        &self,
        target: &K,
        embed: &dyn Fn(&u64) -> K::Elem,
        t: (&K::Elem, &K::Elem),
        x: &[K::Elem; 5],
    ) -> [K::Elem; 5] {
        let mut out = [
            target.zero(),
            target.zero(),
            target.zero(),
            target.zero(),
            target.zero(),
        ];
        for (k, slot) in out.iter_mut().enumerate() {
            let k = k + 1;
            let mut acc = target.zero();
            for i in 1..=5usize {
                let c = self.coeff(i, k);
                if c.is_zero() {
                    continue;
                }
                let mut cv = c.map_field(target, embed).eval(t.0, t.1);
                if i == k {
                    cv = target.mul(&cv, &target.from_int(2));
                }
                acc = target.add(&acc, &target.mul(&cv, &x[i - 1]));
            }
            *slot = acc;
        }
        out
    }
}

/// A sampled pencil over a prime field, deterministic in the seed.
#[derive(Clone, Debug)]
pub struct PencilInstance {
    params: ScrollParams,
    field: PrimeField,
    seed: u64,
    alpha: QuadricEquation,
    beta: QuadricEquation,
}

impl PencilInstance {
    pub fn sample(params: &ScrollParams, field: PrimeField, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = QuadricEquation::sample(params, params.b1(), field, &mut rng);
        let beta = QuadricEquation::sample(params, params.b2(), field, &mut rng);
        PencilInstance {
            params: *params,
            field,
            seed,
            alpha,
            beta,
        }
    }

    pub fn params(&self) -> &ScrollParams {
        &self.params
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn alpha(&self) -> &QuadricEquation {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadricEquation {
        &self.beta
    }

    pub fn equation(&self, which: usize) -> &QuadricEquation {
        match which {
            1 => &self.alpha,
            2 => &self.beta,
            _ => panic!("equation index must be 1 or 2"),
        }
    }

    /// Gradient row of f_which restricted to the subscroll Y_k (the entries
    /// d f / d x_i for i < k, as forms in the surviving fiber coordinates
    /// x_k..x_5). Entry `i` of the result multiplies x_{k + i}.
    fn gradient_row(&self, which: usize, k: usize, i: usize) -> Vec<BinaryForm<PrimeField>> {
        let eq = self.equation(which);
        (k..=5).map(|j| eq.coeff(i, j).clone()).collect()
    }

    /// Rows of the gradient matrix on Y5 = {x1 = .. = x4 = 0}: the constant
    /// fiber direction leaves binary forms alpha_i5, beta_i5 for i = 1..4.
    pub fn y5_gradient_rows(&self) -> [Vec<BinaryForm<PrimeField>>; 2] {
        let a = (1..=4).map(|i| self.alpha.coeff(i, 5).clone()).collect();
        let b = (1..=4).map(|i| self.beta.coeff(i, 5).clone()).collect();
        [a, b]
    }

    /// Restriction of f_which to Y5: the coefficient of x5^2.
    pub fn y5_restriction(&self, which: usize) -> BinaryForm<PrimeField> {
        self.equation(which).coeff(5, 5).clone()
    }

    /// The three gradient entries of f_which on Y4 = {x1 = x2 = x3 = 0}, as
    /// weighted x-linear forms in (x4 : x5) on the ruled surface F(d4, 0):
    /// g_i = coeff(i,4) x4 + coeff(i,5) x5 for i = 1, 2, 3.
    pub fn y4_gradient_forms(&self, which: usize) -> [BihomForm<PrimeField>; 3] {
        let d4 = self.params.degree(4);
        let b = self.equation(which).twist();
        let mk = |i: usize| {
            let base = self.params.degree(i) + b; // degree of coeff(i, 5)
            BihomForm::new(
                1,
                d4,
                base,
                vec![
                    self.equation(which).coeff(i, 5).clone(),
                    self.equation(which).coeff(i, 4).clone(),
                ],
            )
        };
        [mk(1), mk(2), mk(3)]
    }

    /// Restriction of f_which to Y4 as a weighted x-quadratic on F(d4, 0):
    /// coeff(4,4) x4^2 + coeff(4,5) x4 x5 + coeff(5,5) x5^2.
    pub fn y4_restriction(&self, which: usize) -> BihomForm<PrimeField> {
        let d4 = self.params.degree(4);
        let b = self.equation(which).twist();
        BihomForm::new(
            2,
            d4,
            b,
            vec![
                self.equation(which).coeff(5, 5).clone(),
                self.equation(which).coeff(4, 5).clone(),
                self.equation(which).coeff(4, 4).clone(),
            ],
        )
    }

    /// The three 2x2 minors of the gradient matrix on Y4, indexed (12),
    /// (13), (23); x-quadratics on F(d4, 0).
    pub fn y4_minors(&self) -> [BihomForm<PrimeField>; 3] {
        let a = self.y4_gradient_forms(1);
        let b = self.y4_gradient_forms(2);
        let minor = |i: usize, j: usize| a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
        [minor(0, 1), minor(0, 2), minor(1, 2)]
    }

    /// All six 2x2 minors of the gradient matrix on Y5 (four columns), as
    /// binary forms in t. Full row proportionality on Y5 is equivalent to
    /// the simultaneous vanishing of these.
    pub fn y5_minors(&self) -> Vec<BinaryForm<PrimeField>> {
        let [a, b] = self.y5_gradient_rows();
        let mut out = Vec::with_capacity(6);
        for i in 0..4 {
            for j in i + 1..4 {
                let m = a[i]
                    .mul(&b[j])
                    .checked_sub(&a[j].mul(&b[i]))
                    .expect("minor degrees agree");
                out.push(m);
            }
        }
        out
    }

    /// The two gradient rows of f_1 on Y3 = {x1 = x2 = 0}, as coefficient
    /// triples over (x3, x4, x5): row i = (coeff(i,3), coeff(i,4), coeff(i,5)).
    pub fn y3_gradient_rows(&self) -> [[BinaryForm<PrimeField>; 3]; 2] {
        let row = |i: usize| {
            let r = self.gradient_row(1, 3, i);
            [r[0].clone(), r[1].clone(), r[2].clone()]
        };
        [row(1), row(2)]
    }

    /// Restriction of f_which to Y3: the symmetric 3x3 coefficient grid over
    /// (x3, x4, x5), indexed by unordered pairs from {3, 4, 5}.
    pub fn y3_restriction(&self, which: usize) -> Y3Quadric {
        let eq = self.equation(which);
        Y3Quadric {
            c33: eq.coeff(3, 3).clone(),
            c34: eq.coeff(3, 4).clone(),
            c35: eq.coeff(3, 5).clone(),
            c44: eq.coeff(4, 4).clone(),
            c45: eq.coeff(4, 5).clone(),
            c55: eq.coeff(5, 5).clone(),
        }
    }
}

/// A fiberwise conic on the threefold Y3, with binary-form coefficients.
#[derive(Clone, Debug)]
pub struct Y3Quadric {
    pub c33: BinaryForm<PrimeField>,
    pub c34: BinaryForm<PrimeField>,
    pub c35: BinaryForm<PrimeField>,
    pub c44: BinaryForm<PrimeField>,
    pub c45: BinaryForm<PrimeField>,
    pub c55: BinaryForm<PrimeField>,
}

impl Y3Quadric {
    pub fn is_zero(&self) -> bool {
        self.c33.is_zero()
            && self.c34.is_zero()
            && self.c35.is_zero()
            && self.c44.is_zero()
            && self.c45.is_zero()
            && self.c55.is_zero()
    }

    /// Substitutes a triple of binary forms for (x3, x4, x5); the result is
    /// a binary form in t when the degree grid is consistent.
    pub fn eval_forms(&self, w: &[BinaryForm<PrimeField>; 3]) -> BinaryForm<PrimeField> {
        let terms = [
            self.c33.mul(&w[0]).mul(&w[0]),
            self.c34.mul(&w[0]).mul(&w[1]),
            self.c35.mul(&w[0]).mul(&w[2]),
            self.c44.mul(&w[1]).mul(&w[1]),
            self.c45.mul(&w[1]).mul(&w[2]),
            self.c55.mul(&w[2]).mul(&w[2]),
        ];
        let mut acc: Option<BinaryForm<PrimeField>> = None;
        for t in terms {
            acc = Some(match acc {
                None => t,
                Some(a) => a.checked_add(&t).expect("grid degrees agree"),
            });
        }
        acc.expect("six terms")
    }

    /// Evaluates the conic at a fixed base point as a quadratic form grid
    /// over a larger field: returns the six coefficients (c33, c34, c35,
    /// c44, c45, c55) there.
    pub fn eval_at_t<K: Field>(
        &self,
        target: &K,
        embed: &dyn Fn(&u64) -> K::Elem,
        t: (&K::Elem, &K::Elem),
    ) -> [K::Elem; 6] {
        let ev = |f: &BinaryForm<PrimeField>| f.map_field(target, embed).eval(t.0, t.1);
        [
            ev(&self.c33),
            ev(&self.c34),
            ev(&self.c35),
            ev(&self.c44),
            ev(&self.c45),
            ev(&self.c55),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: [i64; 4], b1: i64, b2: i64) -> ScrollParams {
        ScrollParams::new(d, b1, b2).unwrap()
    }

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn degree_grid_matches_coeff_degrees() {
        let p = params([2, 1, 1, 1], -2, -1);
        let inst = PencilInstance::sample(&p, fp(10007), 7);
        for (which, b) in [(1, -2i64), (2, -1i64)] {
            let grid = p.coeff_degrees(b);
            for i in 1..=5 {
                for j in i..=5 {
                    let want = grid.entry(i, j);
                    let got = inst.equation(which).coeff(i, j);
                    if want < 0 {
                        assert!(got.is_zero(), "negative degree must be zero");
                    } else {
                        assert_eq!(got.degree(), want);
                    }
                }
            }
        }
        // X2 family spot checks: alpha_55 is zero, alpha_15 a constant.
        assert!(inst.alpha().coeff(5, 5).is_zero());
        assert_eq!(inst.alpha().coeff(1, 5).degree(), 0);
    }

    #[test]
    fn sampling_is_deterministic_in_seed() {
        let p = params([0, 0, 0, 0], 0, 1);
        let f = fp(10007);
        let a = PencilInstance::sample(&p, f, 42);
        let b = PencilInstance::sample(&p, f, 42);
        for i in 1..=5 {
            for j in i..=5 {
                assert_eq!(a.alpha().coeff(i, j), b.alpha().coeff(i, j));
                assert_eq!(a.beta().coeff(i, j), b.beta().coeff(i, j));
            }
        }
        let c = PencilInstance::sample(&p, f, 43);
        let differs = (1..=5).any(|i| {
            (i..=5).any(|j| a.alpha().coeff(i, j) != c.alpha().coeff(i, j))
        });
        assert!(differs, "different seeds should differ somewhere");
    }

    #[test]
    fn gradient_matches_finite_difference_structure() {
        // grad is linear in x: f(x + e_k) - f(x) - f(e_k) = grad_k-ish; use
        // the direct bilinear identity f(x + y) = f(x) + f(y) + x^T A y with
        // A the symmetrized grid, so grad(x) = (A + A^T) x.
        let p = params([1, 1, 0, 0], -1, 0);
        let f = fp(101);
        let inst = PencilInstance::sample(&p, f, 5);
        let embed = |c: &u64| *c;
        let t = (&3u64, &4u64);
        let x = [1u64, 5, 7, 2, 9];
        let y = [4u64, 0, 3, 8, 6];
        let fx = inst.alpha().eval(&f, &embed, t, &x);
        let fy = inst.alpha().eval(&f, &embed, t, &y);
        let mut xy = [0u64; 5];
        for k in 0..5 {
            xy[k] = f.add(&x[k], &y[k]);
        }
        let fxy = inst.alpha().eval(&f, &embed, t, &xy);
        let grad = inst.alpha().grad_x(&f, &embed, t, &x);
        let mut pairing = f.zero();
        for k in 0..5 {
            pairing = f.add(&pairing, &f.mul(&grad[k], &y[k]));
        }
        // f(x + y) - f(x) - f(y) = grad(x) . y for quadratic forms.
        let lhs = f.sub(&f.sub(&fxy, &fx), &fy);
        assert_eq!(lhs, pairing);
    }

    #[test]
    fn y4_minors_are_consistent_pointwise() {
        let p = params([4, 3, 2, 1], -4, -3);
        let f = fp(101);
        let inst = PencilInstance::sample(&p, f, 11);
        let minors = inst.y4_minors();
        let embed = |c: &u64| *c;
        for tau in 0..10u64 {
            for xi in 0..10u64 {
                // Point (t0 : t1) = (1 : tau), (x4 : x5) = (xi : 1) on Y4.
                let x = [0u64, 0, 0, xi, 1];
                let ga = inst.alpha().grad_x(&f, &embed, (&1, &tau), &x);
                let gb = inst.beta().grad_x(&f, &embed, (&1, &tau), &x);
                for (idx, (i, j)) in [(0usize, 1usize), (0, 2), (1, 2)].iter().enumerate() {
                    let want = f.sub(&f.mul(&ga[*i], &gb[*j]), &f.mul(&ga[*j], &gb[*i]));
                    let got = minors[idx].eval((&1, &tau), (&xi, &1));
                    assert_eq!(got, want);
                }
            }
        }
    }
}
