//! Scroll parameters and their divisor-class bookkeeping.
//!
//! A fivefold scroll over the projective line is determined by twisting
//! degrees d1 >= d2 >= d3 >= d4 >= d5 = 0 (the last degree is normalized away
//! and never stored). A pencil of fiberwise quadrics on it is determined by
//! two class twists b1 <= b2. Everything downstream — base loci, the
//! smoothness case table, Euler characteristics, rationality verdicts — is a
//! pure function of these six integers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScrollError {
    #[error("degrees must be sorted descending and non-negative, got {0:?}")]
    UnsortedDegrees([i64; 4]),
    #[error("quadric twists must satisfy b1 <= b2, got ({0}, {1})")]
    UnorderedTwists(i64, i64),
    #[error("empty first linear system: 2*d1 + b1 = {0} < 0")]
    EmptyFirstSystem(i64),
}

/// Canonical parameters (d1, d2, d3, d4; b1, b2) of a pencil of fiberwise
/// quadrics on the scroll F(d1, ..., d4, 0).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ScrollParams {
    d: [i64; 4],
    b1: i64,
    b2: i64,
}

impl ScrollParams {
    /// Builds from already-canonical data: `d` sorted descending and
    /// non-negative, `b1 <= b2`, and a non-empty first linear system.
    pub fn new(d: [i64; 4], b1: i64, b2: i64) -> Result<Self, ScrollError> {
        if d[3] < 0 || d[0] < d[1] || d[1] < d[2] || d[2] < d[3] {
            return Err(ScrollError::UnsortedDegrees(d));
        }
        if b1 > b2 {
            return Err(ScrollError::UnorderedTwists(b1, b2));
        }
        if 2 * d[0] + b1 < 0 {
            return Err(ScrollError::EmptyFirstSystem(2 * d[0] + b1));
        }
        Ok(ScrollParams { d, b1, b2 })
    }

    /// Normalizes a raw five-degree tuple: sorts descending, subtracts the
    /// common twist so the least degree is zero (compensating each b by +2c,
    /// which keeps the quadric classes fixed), and orders the twists.
    pub fn canonicalize(d_raw: [i64; 5], b1: i64, b2: i64) -> Result<Self, ScrollError> {
        let mut d = d_raw;
        d.sort_unstable_by(|a, b| b.cmp(a));
        let c = d[4];
        let d4 = [d[0] - c, d[1] - c, d[2] - c, d[3] - c];
        let (mut b1, mut b2) = (b1 + 2 * c, b2 + 2 * c);
        if b1 > b2 {
            std::mem::swap(&mut b1, &mut b2);
        }
        ScrollParams::new(d4, b1, b2)
    }

    /// The normalization applied by [`ScrollParams::canonicalize`], reported
    /// for echoing in interfaces: (common twist subtracted, b-swap needed).
    pub fn canonicalization_of(d_raw: [i64; 5], b1: i64, b2: i64) -> (i64, bool) {
        let mut d = d_raw;
        d.sort_unstable_by(|a, b| b.cmp(a));
        (d[4], b1 + 2 * d[4] > b2 + 2 * d[4])
    }

    pub fn d(&self) -> [i64; 4] {
        self.d
    }

    /// Degree d_i with 1-based index; d_5 = 0.
    pub fn degree(&self, i: usize) -> i64 {
        assert!((1..=5).contains(&i));
        if i == 5 {
            0
        } else {
            self.d[i - 1]
        }
    }

    pub fn b1(&self) -> i64 {
        self.b1
    }

    pub fn b2(&self) -> i64 {
        self.b2
    }

    pub fn b(&self, which: usize) -> i64 {
        match which {
            1 => self.b1,
            2 => self.b2,
            _ => panic!("quadric index must be 1 or 2"),
        }
    }

    /// Degree matrix of the coefficient polynomials of a fiberwise quadric
    /// in |2M + bL|: entry (i, j) = d_i + d_j + b.
    pub fn coeff_degrees(&self, b: i64) -> CoeffDegreeMatrix {
        let mut m = [[0i64; 5]; 5];
        for i in 1..=5 {
            for j in 1..=5 {
                m[i - 1][j - 1] = self.degree(i) + self.degree(j) + b;
            }
        }
        CoeffDegreeMatrix(m)
    }

    /// Base locus of the full linear system |2M + bL| on this scroll.
    pub fn base_locus(&self, b: i64) -> BaseLocus {
        let [_, d2, d3, d4] = self.d;
        if b >= 0 {
            BaseLocus::Empty
        } else if 2 * d4 + b >= 0 {
            BaseLocus::Y5
        } else if 2 * d3 + b >= 0 {
            BaseLocus::Y4
        } else if 2 * d2 + b >= 0 {
            BaseLocus::Y3
        } else {
            BaseLocus::TooLarge
        }
    }

    /// Topological Euler characteristic of the (smooth) complete
    /// intersection: -16 * sum(d) - 20*b1 - 20*b2 + 16.
    pub fn euler_characteristic(&self) -> i64 {
        let sum: i64 = self.d.iter().sum();
        -16 * sum - 20 * self.b1 - 20 * self.b2 + 16
    }

    /// Rationality verdict for a smooth standard fibration with these
    /// parameters: rational exactly when the Euler characteristic is 0, -8,
    /// or -4. Callers are responsible for smoothness and standardness.
    pub fn rationality_verdict(&self) -> RationalityVerdict {
        let chi = self.euler_characteristic();
        let verdict = if matches!(chi, 0 | -8 | -4) {
            Rationality::Rational
        } else {
            Rationality::Nonrational
        };
        RationalityVerdict { verdict, chi }
    }
}

impl std::fmt::Display for ScrollParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d=({},{},{},{}) b=({},{})",
            self.d[0], self.d[1], self.d[2], self.d[3], self.b1, self.b2
        )
    }
}

/// Which negative subscroll is the base locus of a fiberwise-quadric system.
/// Ordered by inclusion: Empty ⊂ Y5 ⊂ Y4 ⊂ Y3 ⊂ TooLarge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum BaseLocus {
    Empty,
    Y5,
    Y4,
    Y3,
    /// The base locus contains the subscroll Y2 (or more); no smooth
    /// intersection exists with such a system, so this is terminal.
    TooLarge,
}

/// An integer divisor class a*M + c*L on a scroll or subscroll, where M is
/// the tautological class and L the fiber class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DivisorClass {
    pub m: i64,
    pub l: i64,
}

impl DivisorClass {
    pub fn new(m: i64, l: i64) -> Self {
        DivisorClass { m, l }
    }

    /// The class of a fiberwise quadric with twist `b`.
    pub fn fiberwise_quadric(b: i64) -> Self {
        DivisorClass { m: 2, l: b }
    }

    /// Intersection pairing of two curve classes on the ruled surface
    /// F(n, 0), where M^2 = n, M.L = 1, L^2 = 0.
    pub fn intersect_on_ruled_surface(&self, other: &DivisorClass, n: i64) -> i64 {
        self.m * other.m * n + self.m * other.l + self.l * other.m
    }
}

/// Degrees d_i + d_j + b of the coefficient polynomials of a quadric;
/// negative entries mean the coefficient is identically zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoeffDegreeMatrix([[i64; 5]; 5]);

impl CoeffDegreeMatrix {
    /// Entry with 1-based indices, matching the coordinate numbering.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        assert!((1..=5).contains(&i) && (1..=5).contains(&j));
        self.0[i - 1][j - 1]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Rationality {
    Rational,
    Nonrational,
}

/// Rationality verdict together with the Euler characteristic it is based on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RationalityVerdict {
    pub verdict: Rationality,
    pub chi: i64,
}

impl RationalityVerdict {
    pub fn is_rational(&self) -> bool {
        self.verdict == Rationality::Rational
    }
}
