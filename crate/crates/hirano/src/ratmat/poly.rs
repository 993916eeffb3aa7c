use std::fmt;

use num_traits::{One, Zero};

use super::{rat_int, render_rational, Matrix, MatrixError, Rational};

/// Univariate polynomial over the rationals, coefficients in ascending
/// degree with no trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => render_rational(c),
                1 => format!("{}*x", render_rational(c)),
                _ => format!("{}*x^{}", render_rational(c), i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// `x - root`
    pub fn linear(root: i64) -> Self {
        Self::from_i64(&[-root, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    /// Exact Euclidean division; panics if `rhs` is zero.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = rhs.coeffs.len() - 1;
        let lead = rhs.coeffs.last().unwrap().clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k].clone() / &lead;
            if !c.is_zero() {
                quot[k - d] = c.clone();
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[k - d + j] -= &c * b;
                }
            }
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.coeffs.last().unwrap().clone();
            a.scale(&(Rational::one() / lead))
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix, MatrixError> {
        if !m.is_square() {
            return Err(MatrixError::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut acc = Matrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?;
            for i in 0..n {
                let v = acc.at(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Factors out `x^p (x-1)^q (x+1)^r`; returns `(p, q, r, leftover)`.
    pub fn split_hirano_roots(&self) -> (usize, usize, usize, Self) {
        let mut counts = [0usize; 3];
        let mut rest = self.clone();
        for (i, root) in [0i64, 1, -1].into_iter().enumerate() {
            let lin = Self::linear(root);
            loop {
                if rest.is_zero() {
                    break;
                }
                let (q, r) = rest.div_rem(&lin);
                if r.is_zero() {
                    rest = q;
                    counts[i] += 1;
                } else {
                    break;
                }
            }
        }
        (counts[0], counts[1], counts[2], rest)
    }
}
