//! Commuting structured + nilpotent splittings by Newton iteration.
//!
//! The general engine is the Jordan-Chevalley decomposition: Newton's method
//! applied to the squarefree part of the characteristic polynomial, started
//! at the matrix itself. Each step stays inside Q[A], so the structured part
//! automatically commutes with everything that commutes with A. The Hirano
//! and strongly Drazin splittings use the fixed polynomials `x^3 - x` and
//! `x^2 - x`; under their preconditions the Newton derivative is invertible
//! at every step, so a singular step signals a caller error.

use crate::error::{Error, Result};
use crate::gendrazin::is_nilpotent;
use crate::ratmat::{Matrix, MatrixError, Poly};

/// Result of a commuting split `input = structured_part + nilpart`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPair {
    pub structured_part: Matrix,
    pub nilpart: Matrix,
    pub nil_exponent: usize,
    pub newton_steps: usize,
}

fn require_square(m: &Matrix) -> Result<usize> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare { rows: m.rows(), cols: m.cols() }.into());
    }
    Ok(m.rows())
}

fn newton_cap(n: usize) -> usize {
    // ceil(log2 n) + 1; convergence is quadratic in the nilpotent ideal.
    (usize::BITS - (n - 1).leading_zeros()) as usize + 1
}

/// Newton iteration `X <- X - q(X) q'(X)^{-1}` from `X = a` until `q(X) = 0`
/// exactly. Returns `(S, steps)`.
fn newton_split(a: &Matrix, q: &Poly, cap: usize) -> Result<(Matrix, usize)> {
    let dq = q.derivative();
    let mut x = a.clone();
    let mut steps = 0usize;
    loop {
        let qx = q.eval_matrix(&x)?;
        if qx.is_zero() {
            return Ok((x, steps));
        }
        if steps == cap {
            return Err(Error::IterationCapExceeded(cap));
        }
        let dqx = dq.eval_matrix(&x)?;
        let inv = dqx.try_inverse()?.ok_or(Error::SingularNewtonStep)?;
        x = x.sub(&qx.mul(&inv)?)?;
        steps += 1;
    }
}

fn finish(a: &Matrix, s: Matrix, steps: usize) -> Result<SplitPair> {
    let nilpart = a.sub(&s)?;
    let nil_exponent = is_nilpotent(&nilpart)?
        .ok_or_else(|| Error::CertificateFailure("split nilpart is not nilpotent".into()))?;
    if s.mul(&nilpart)? != nilpart.mul(&s)? {
        return Err(Error::CertificateFailure("split parts do not commute".into()));
    }
    Ok(SplitPair { structured_part: s, nilpart, nil_exponent, newton_steps: steps })
}

/// General Jordan-Chevalley decomposition: `a = S + N` with `S` semisimple
/// (squarefree minimal polynomial), `N` nilpotent, `SN = NS`, and `S` a
/// polynomial in `a`.
pub fn jordan_chevalley(a: &Matrix) -> Result<SplitPair> {
    let n = require_square(a)?;
    let chi = a.char_poly()?;
    let q = {
        let g = chi.gcd(&chi.derivative());
        let (q, r) = chi.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    };
    let (s, steps) = newton_split(a, &q, newton_cap(n))?;
    finish(a, s, steps)
}

/// Tripotent + nilpotent split for Hirano-invertible input: `a = E + N` with
/// `E^3 = E`. Newton iteration on the fixed polynomial `x^3 - x`; `3X^2 - I`
/// is invertible throughout because the spectrum lies in `{-1, 0, 1}`.
pub fn tripotent_nilpotent(a: &Matrix) -> Result<SplitPair> {
    let n = require_square(a)?;
    if is_nilpotent(&a.sub(&a.power(3)?)?)?.is_none() {
        return Err(Error::NotHirano);
    }
    let q = Poly::from_i64(&[0, -1, 0, 1]);
    let (e, steps) = newton_split(a, &q, newton_cap(n))?;
    let pair = finish(a, e, steps)?;
    if pair.structured_part.power(3)? != pair.structured_part {
        return Err(Error::CertificateFailure("structured part is not tripotent".into()));
    }
    Ok(pair)
}

/// Idempotent + nilpotent split for strongly Drazin invertible input:
/// `a = F + N` with `F^2 = F`. Newton iteration on `x^2 - x`.
pub fn idempotent_nilpotent(a: &Matrix) -> Result<SplitPair> {
    let n = require_square(a)?;
    if is_nilpotent(&a.sub(&a.power(2)?)?)?.is_none() {
        return Err(Error::NotStronglyDrazin);
    }
    let q = Poly::from_i64(&[0, -1, 1]);
    let (f, steps) = newton_split(a, &q, newton_cap(n))?;
    let pair = finish(a, f, steps)?;
    if pair.structured_part.mul(&pair.structured_part)? != pair.structured_part {
        return Err(Error::CertificateFailure("structured part is not idempotent".into()));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_i64(&[&[a, b], &[c, d]])
    }

    #[test]
    fn jc_diagonal_is_fixed_point() {
        let d = Matrix::diag(&[rat(2, 1), rat(-3, 1), rat(0, 1)]);
        let p = jordan_chevalley(&d).unwrap();
        assert_eq!(p.structured_part, d);
        assert!(p.nilpart.is_zero());
        assert!(p.newton_steps <= 1);
    }

    #[test]
    fn jc_jordan_block() {
        let a = m2(1, 1, 0, 1);
        let p = jordan_chevalley(&a).unwrap();
        assert_eq!(p.structured_part, Matrix::identity(2));
        assert_eq!(p.nilpart, m2(0, 1, 0, 0));
    }

    #[test]
    fn jc_nilpotent() {
        let a = m2(0, 1, 0, 0);
        let p = jordan_chevalley(&a).unwrap();
        assert!(p.structured_part.is_zero());
        assert_eq!(p.nilpart, a);
    }

    #[test]
    fn tripotent_fixed_point() {
        let t = Matrix::diag(&[rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let p = tripotent_nilpotent(&t).unwrap();
        assert_eq!(p.structured_part, t);
        assert!(p.nilpart.is_zero());
    }

    #[test]
    fn tripotent_jordan_block_matches_jc() {
        let a = m2(1, 1, 0, 1);
        let p = tripotent_nilpotent(&a).unwrap();
        assert_eq!(p.structured_part, Matrix::identity(2));
        assert_eq!(p.nilpart, m2(0, 1, 0, 0));
        let jc = jordan_chevalley(&a).unwrap();
        assert_eq!(p.structured_part, jc.structured_part);
    }

    #[test]
    fn tripotent_rejects_non_hirano() {
        assert!(matches!(
            tripotent_nilpotent(&Matrix::diag(&[rat(2, 1)])),
            Err(Error::NotHirano)
        ));
    }

    #[test]
    fn idempotent_fixed_point() {
        let p0 = m2(1, 1, 0, 0);
        let p = idempotent_nilpotent(&p0).unwrap();
        assert_eq!(p.structured_part, p0);
        assert!(p.nilpart.is_zero());
    }

    #[test]
    fn idempotent_jordan_block() {
        let a = m2(1, 1, 0, 1);
        let p = idempotent_nilpotent(&a).unwrap();
        assert_eq!(p.structured_part, Matrix::identity(2));
        assert_eq!(p.nilpart, m2(0, 1, 0, 0));
    }

    #[test]
    fn idempotent_rejects_non_strongly_drazin() {
        assert!(matches!(
            idempotent_nilpotent(&Matrix::diag(&[rat(-1, 1)])),
            Err(Error::NotStronglyDrazin)
        ));
    }

    #[test]
    fn truncated_shift_example_idempotent_split() {
        let a = Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]);
        let p = idempotent_nilpotent(&a).unwrap();
        let f = &p.structured_part;
        assert_eq!(f.mul(f).unwrap(), *f);
        assert!(p.nilpart.power(2).unwrap().is_zero());
        let jc = jordan_chevalley(&a).unwrap();
        assert_eq!(p.structured_part, jc.structured_part);
    }
}
