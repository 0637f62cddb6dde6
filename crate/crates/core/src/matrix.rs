//! Symmetric rational matrices indexed by colors.
//!
//! These house strut-exponential parts `[A/2]`, linking matrices and the
//! Gaussian data of the integration calculus. Inversion is exact: a
//! fraction-free (Bareiss) forward elimination on the cleared-denominator
//! integer matrix, followed by exact rational back-substitution.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::Color;
use crate::error::PairingError;
use crate::Rational;

/// A square rational matrix indexed by an ordered color set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrutMatrix {
    colors: Vec<Color>,
    entries: Vec<Vec<Rational>>,
    symmetric: bool,
}

impl StrutMatrix {
    pub fn empty() -> Self {
        StrutMatrix {
            colors: vec![],
            entries: vec![],
            symmetric: true,
        }
    }

    /// Builds a matrix, recording whether it is symmetric.
    pub fn new(colors: Vec<Color>, entries: Vec<Vec<Rational>>) -> Result<Self, PairingError> {
        let n = colors.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(PairingError::ColorMismatch {
                expected: format!("{n}x{n}"),
                found: format!("{}x?", entries.len()),
            });
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| entries[i][j] == entries[j][i]));
        Ok(StrutMatrix {
            colors,
            entries,
            symmetric,
        })
    }

    pub fn zero(colors: Vec<Color>) -> Self {
        let n = colors.len();
        StrutMatrix {
            colors,
            entries: vec![vec![Rational::zero(); n]; n],
            symmetric: true,
        }
    }

    /// The antidiagonal pairing of `identity(g)`: entries 1 between `i-`
    /// and `i+`, colors ordered minus-then-plus.
    pub fn identity_pairing(g: usize) -> Self {
        let mut colors = Vec::with_capacity(2 * g);
        for i in 1..=g {
            colors.push(Color::minus(i as u32));
        }
        for i in 1..=g {
            colors.push(Color::plus(i as u32));
        }
        let mut m = StrutMatrix::zero(colors);
        for i in 0..g {
            m.entries[i][g + i] = Rational::one();
            m.entries[g + i][i] = Rational::one();
        }
        m
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn dim(&self) -> usize {
        self.colors.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn index_of(&self, c: &Color) -> Option<usize> {
        self.colors.iter().position(|x| x == c)
    }

    /// Entry addressed by colors; zero when either color is absent.
    pub fn get(&self, a: &Color, b: &Color) -> Rational {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.entries[i][j].clone(),
            _ => Rational::zero(),
        }
    }

    /// Sets the `(a, b)` and `(b, a)` entries.
    pub fn set_sym(&mut self, a: &Color, b: &Color, q: Rational) {
        let i = self.index_of(a).expect("color in matrix");
        let j = self.index_of(b).expect("color in matrix");
        self.entries[i][j] = q.clone();
        self.entries[j][i] = q;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|q| q.is_zero()))
    }

    pub fn neg(&self) -> Self {
        StrutMatrix {
            colors: self.colors.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|q| -q).collect())
                .collect(),
            symmetric: self.symmetric,
        }
    }

    pub fn add(&self, other: &StrutMatrix) -> Result<Self, PairingError> {
        self.check_colors(other)?;
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.entries[i][j] + &other.entries[i][j])
                    .collect()
            })
            .collect();
        StrutMatrix::new(self.colors.clone(), entries)
    }

    /// Restriction to a subset of the colors, in the given order.
    pub fn restrict(&self, colors: &[Color]) -> Result<Self, PairingError> {
        let idx: Vec<usize> = colors
            .iter()
            .map(|c| {
                self.index_of(c).ok_or_else(|| PairingError::ColorMismatch {
                    expected: format!("{:?}", self.colors),
                    found: c.to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        StrutMatrix::new(colors.to_vec(), entries)
    }

    /// Rectangular block `rows x cols` as plain data.
    pub fn block(&self, rows: &[Color], cols: &[Color]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|a| cols.iter().map(|b| self.get(a, b)).collect())
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination on the
    /// cleared-denominator integer matrix.
    pub fn det(&self) -> Rational {
        let n = self.dim();
        if n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        for row in &self.entries {
            for q in row {
                scale = num_integer::lcm(scale, q.denom().clone());
            }
        }
        let mut m: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| q.numer() * (&scale / q.denom()))
                    .collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Rational::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_scaled = sign * m[n - 1][n - 1].clone();
        let mut denom = BigInt::one();
        for _ in 0..n {
            denom *= &scale;
        }
        Rational::new(det_scaled, denom)
    }

    /// Exact inverse; errors when singular.
    pub fn inverse(&self) -> Result<StrutMatrix, PairingError> {
        let n = self.dim();
        let mut aug: Vec<Vec<Rational>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&i| !aug[i][k].is_zero()) else {
                return Err(PairingError::Singular);
            };
            aug.swap(k, pivot);
            let p = aug[k][k].clone();
            for v in aug[k].iter_mut() {
                *v /= &p;
            }
            for i in 0..n {
                if i == k || aug[i][k].is_zero() {
                    continue;
                }
                let f = aug[i][k].clone();
                let row_k = aug[k].clone();
                for (v, w) in aug[i].iter_mut().zip(row_k) {
                    *v -= &f * &w;
                }
            }
        }
        let entries = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        StrutMatrix::new(self.colors.clone(), entries)
    }

    /// Schur complement after eliminating the colors in `s`:
    /// `M/S = M_{S'S'} - M_{S'S} M_{SS}^{-1} M_{SS'}`.
    pub fn schur_complement(&self, s: &[Color]) -> Result<StrutMatrix, PairingError> {
        let rest: Vec<Color> = self
            .colors
            .iter()
            .filter(|c| !s.contains(c))
            .cloned()
            .collect();
        let a = self.restrict(s)?;
        let a_inv = a.inverse()?;
        let cross = self.block(&rest, s); // M_{S'S}
        let cross_t = self.block(s, &rest); // M_{SS'}
        let n = rest.len();
        let k = s.len();
        let mut entries = self.block(&rest, &rest);
        for i in 0..n {
            for j in 0..n {
                let mut corr = Rational::zero();
                for p in 0..k {
                    for q in 0..k {
                        corr += &cross[i][p] * a_inv.entry(p, q) * &cross_t[q][j];
                    }
                }
                entries[i][j] -= corr;
            }
        }
        StrutMatrix::new(rest, entries)
    }

    /// Congruence transform `T^t M T` for a square `T` over the same colors.
    pub fn congruence(&self, t: &StrutMatrix) -> Result<StrutMatrix, PairingError> {
        self.check_colors(t)?;
        let n = self.dim();
        let mut mt = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mt[i][j] += &self.entries[i][k] * t.entry(k, j);
                }
            }
        }
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += t.entry(k, i) * &mt[k][j];
                }
            }
        }
        StrutMatrix::new(self.colors.clone(), out)
    }

    fn check_colors(&self, other: &StrutMatrix) -> Result<(), PairingError> {
        if self.colors != other.colors {
            return Err(PairingError::ColorMismatch {
                expected: format!("{:?}", self.colors),
                found: format!("{:?}", other.colors),
            });
        }
        Ok(())
    }
}

impl fmt::Display for StrutMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::notation::matrix_to_string(self))
    }
}

/// Multiplies rectangular rational blocks; `cols` is the column count of
/// `b`, needed explicitly when the inner dimension vanishes.
pub(crate) fn block_mul(
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
    cols: usize,
) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); cols]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] += &a[i][l] * &brow[j];
            }
        }
    }
    out
}

pub(crate) fn block_add(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}
