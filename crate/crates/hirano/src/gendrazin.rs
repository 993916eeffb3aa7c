//! Index, Drazin inverse, spectral projections, and the strongly Drazin /
//! Hirano variants, all with self-verifying certificates.
//!
//! The Drazin inverse is computed through the core-nilpotent decomposition:
//! with `k = ind(A)`, the columns of `A^k` and the kernel of `A^k` split the
//! space into an invertible core and a nilpotent part. Hirano and strongly
//! Drazin inverses coincide with the Drazin inverse when they exist; we
//! compute them that way and then verify the stronger defining equation
//! rather than assuming it.

use crate::decomp;
use crate::error::{Error, Result};
use crate::ratmat::{Matrix, MatrixError};

/// Drazin inverse together with the index and spectral projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrazinData {
    /// Smallest positive `k` with `(A - A^2 A^D)^k = 0`; invertible matrices
    /// get index 1 under this convention.
    pub index_k: usize,
    /// `A^D`
    pub dinv: Matrix,
    /// `A^e = A A^D`
    pub core_proj: Matrix,
    /// `A^pi = I - A^e`
    pub core_complement: Matrix,
}

/// Machine-checkable witness that `A = E + N` with `E` tripotent, `N`
/// nilpotent, `EN = NE`, and `Z` the Hirano inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiranoCert {
    pub z: Matrix,
    pub tripotent: Matrix,
    pub nilpart: Matrix,
    pub nil_exponent: usize,
}

/// Witness that `A = F + N` with `F` idempotent, `N` nilpotent, `FN = NF`,
/// and `Z` the strongly Drazin inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDrazinCert {
    pub z: Matrix,
    pub idem: Matrix,
    pub nilpart: Matrix,
    pub nil_exponent: usize,
}

fn require_square(m: &Matrix) -> Result<usize> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare { rows: m.rows(), cols: m.cols() }.into());
    }
    Ok(m.rows())
}

/// Smallest `e <= n` with `m^e = 0`, or `None` if `m` is not nilpotent.
pub fn is_nilpotent(m: &Matrix) -> Result<Option<usize>> {
    let n = require_square(m)?;
    let mut p = m.clone();
    for e in 1..=n {
        if p.is_zero() {
            return Ok(Some(e));
        }
        if e < n {
            p = p.mul(m)?;
        }
    }
    Ok(None)
}

/// Index of `a`: `max(1, smallest k with rank(a^k) = rank(a^{k+1}))`.
pub fn index(a: &Matrix) -> Result<usize> {
    require_square(a)?;
    let mut p = a.clone();
    let mut prev_rank = p.rank();
    for k in 1.. {
        p = p.mul(a)?;
        let r = p.rank();
        if r == prev_rank {
            return Ok(k);
        }
        prev_rank = r;
    }
    unreachable!()
}

/// Drazin inverse via the core-nilpotent decomposition. The returned data is
/// re-verified against every defining equation; an inconsistency is an
/// implementation bug and surfaces as `CertificateFailure`.
pub fn drazin_inverse(a: &Matrix) -> Result<DrazinData> {
    let n = require_square(a)?;
    let k = index(a)?;
    let ak = a.power(k)?;
    let core = ak.col_space_basis();
    let kernel = ak.null_space_basis();
    let r = core.cols();

    let dinv = if r == 0 {
        Matrix::zero(n, n)
    } else if r == n {
        a.try_inverse()?
            .ok_or_else(|| Error::CertificateFailure("full-rank core not invertible".into()))?
    } else {
        let t = core.hstack(&kernel)?;
        let t_inv = t
            .try_inverse()?
            .ok_or_else(|| Error::CertificateFailure("basis change not invertible".into()))?;
        let b = t_inv.mul(a)?.mul(&t)?;
        // b = diag(C, N) with C invertible r x r; both spaces are A-invariant.
        let mut c = Matrix::zero(r, r);
        for i in 0..r {
            for j in 0..r {
                c.set(i, j, b.at(i, j).clone());
            }
        }
        let c_inv = c
            .try_inverse()?
            .ok_or_else(|| Error::CertificateFailure("core block not invertible".into()))?;
        let mut middle = Matrix::zero(n, n);
        for i in 0..r {
            for j in 0..r {
                middle.set(i, j, c_inv.at(i, j).clone());
            }
        }
        t.mul(&middle)?.mul(&t_inv)?
    };

    let core_proj = a.mul(&dinv)?;
    let core_complement = Matrix::identity(n).sub(&core_proj)?;
    let data = DrazinData { index_k: k, dinv, core_proj, core_complement };
    verify_drazin(a, &data)?;
    Ok(data)
}

fn verify_drazin(a: &Matrix, d: &DrazinData) -> Result<()> {
    let z = &d.dinv;
    let fail = |what: &str| Err(Error::CertificateFailure(format!("Drazin: {what}")));
    if a.mul(z)? != z.mul(a)? {
        return fail("AZ != ZA");
    }
    if z.mul(a)?.mul(z)? != *z {
        return fail("ZAZ != Z");
    }
    let residual = a.sub(&a.mul(a)?.mul(z)?)?;
    if !residual.power(d.index_k)?.is_zero() {
        return fail("(A - A^2 Z)^k != 0");
    }
    if d.index_k > 1 && residual.power(d.index_k - 1)?.is_zero() {
        return fail("index not minimal");
    }
    if d.core_proj.mul(&d.core_proj)? != d.core_proj {
        return fail("A^e not idempotent");
    }
    if d.core_proj.add(&d.core_complement)? != Matrix::identity(a.rows()) {
        return fail("A^e + A^pi != I");
    }
    Ok(())
}

/// Nilpotency exponent of `a - a^2`, i.e. evidence that the strongly Drazin
/// inverse exists.
pub fn is_strongly_drazin_invertible(a: &Matrix) -> Result<Option<usize>> {
    require_square(a)?;
    is_nilpotent(&a.sub(&a.power(2)?)?)
}

/// Nilpotency exponent of `a - a^3`, i.e. evidence that the Hirano inverse
/// exists.
pub fn is_hirano_invertible(a: &Matrix) -> Result<Option<usize>> {
    require_square(a)?;
    is_nilpotent(&a.sub(&a.power(3)?)?)
}

/// Eigenvalue criterion: true iff `char_poly(a) = x^p (x-1)^q (x+1)^r`.
/// Agrees with `is_hirano_invertible` on every input.
pub fn eigencheck_hirano(a: &Matrix) -> Result<bool> {
    require_square(a)?;
    let (_, _, _, rest) = a.char_poly()?.split_hirano_roots();
    Ok(rest.degree() == Some(0))
}

/// Hirano inverse with a fully verified certificate.
pub fn hirano_inverse(a: &Matrix) -> Result<HiranoCert> {
    let n = require_square(a)?;
    let Some(_) = is_hirano_invertible(a)? else {
        return Err(Error::NotHirano);
    };
    let z = drazin_inverse(a)?.dinv;
    let split = decomp::tripotent_nilpotent(a)?;
    let cert = HiranoCert {
        z,
        tripotent: split.structured_part,
        nilpart: split.nilpart,
        nil_exponent: split.nil_exponent,
    };
    let fail = |what: &str| Err(Error::CertificateFailure(format!("Hirano: {what}")));
    if a.mul(&cert.z)? != cert.z.mul(a)? {
        return fail("AZ != ZA");
    }
    if cert.z.mul(a)?.mul(&cert.z)? != cert.z {
        return fail("ZAZ != Z");
    }
    let residual = a.power(2)?.sub(&a.mul(&cert.z)?)?;
    if is_nilpotent(&residual)?.is_none() {
        return fail("A^2 - AZ not nilpotent");
    }
    let e = &cert.tripotent;
    if e.power(3)? != *e {
        return fail("E^3 != E");
    }
    if !cert.nilpart.power(n)?.is_zero() {
        return fail("N not nilpotent");
    }
    if e.mul(&cert.nilpart)? != cert.nilpart.mul(e)? {
        return fail("EN != NE");
    }
    if e.add(&cert.nilpart)? != *a {
        return fail("E + N != A");
    }
    Ok(cert)
}

/// Strongly Drazin inverse with a fully verified certificate.
pub fn strongly_drazin_inverse(a: &Matrix) -> Result<StrongDrazinCert> {
    let n = require_square(a)?;
    let Some(_) = is_strongly_drazin_invertible(a)? else {
        return Err(Error::NotStronglyDrazin);
    };
    let z = drazin_inverse(a)?.dinv;
    let split = decomp::idempotent_nilpotent(a)?;
    let cert = StrongDrazinCert {
        z,
        idem: split.structured_part,
        nilpart: split.nilpart,
        nil_exponent: split.nil_exponent,
    };
    let fail = |what: &str| Err(Error::CertificateFailure(format!("strong Drazin: {what}")));
    if a.mul(&cert.z)? != cert.z.mul(a)? {
        return fail("AZ != ZA");
    }
    if cert.z.mul(a)?.mul(&cert.z)? != cert.z {
        return fail("ZAZ != Z");
    }
    let residual = a.sub(&a.mul(&cert.z)?)?;
    if is_nilpotent(&residual)?.is_none() {
        return fail("A - AZ not nilpotent");
    }
    let f = &cert.idem;
    if f.mul(f)? != *f {
        return fail("F^2 != F");
    }
    if !cert.nilpart.power(n)?.is_zero() {
        return fail("N not nilpotent");
    }
    if f.mul(&cert.nilpart)? != cert.nilpart.mul(f)? {
        return fail("FN != NF");
    }
    if f.add(&cert.nilpart)? != *a {
        return fail("F + N != A");
    }
    Ok(cert)
}

/// Cline's formula: given `z_ba = (BA)^D`, produce `(AB)^D = A z_ba^2 B`.
/// The caller-supplied inverse is verified first, and the output is verified
/// against the Drazin equations for `AB` before being returned.
pub fn cline_transfer(a: &Matrix, b: &Matrix, z_ba: &Matrix) -> Result<Matrix> {
    if a.cols() != b.rows() || a.rows() != b.cols() {
        return Err(MatrixError::Dimension(format!(
            "cline_transfer: A {}x{}, B {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ))
        .into());
    }
    let ba = b.mul(a)?;
    let check = |m: &Matrix, z: &Matrix, label: &str| -> Result<()> {
        let ok = m.mul(z)? == z.mul(m)?
            && z.mul(m)?.mul(z)? == *z
            && is_nilpotent(&m.sub(&m.mul(m)?.mul(z)?)?)?.is_some();
        if ok {
            Ok(())
        } else {
            Err(Error::BadInverse(label.to_string()))
        }
    };
    check(&ba, z_ba, "BA")?;
    let out = a.mul(&z_ba.mul(z_ba)?)?.mul(b)?;
    let ab = a.mul(b)?;
    check(&ab, &out, "AB").map_err(|_| {
        Error::CertificateFailure("Cline transfer output fails the Drazin equations".into())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> Matrix {
        Matrix::from_i64(&[&[a, b], &[c, d]])
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(is_nilpotent(&m2(0, 1, 0, 0)).unwrap(), Some(2));
        assert_eq!(is_nilpotent(&Matrix::identity(2)).unwrap(), None);
        // A - A^3 for A = [[1,0],[2,1]]
        let a = m2(1, 0, 2, 1);
        let r = a.sub(&a.power(3).unwrap()).unwrap();
        assert_eq!(r, m2(0, 0, -4, 0));
        assert_eq!(is_nilpotent(&r).unwrap(), Some(2));
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&Matrix::identity(3)).unwrap(), 1);
        assert_eq!(index(&m2(0, 1, 0, 0)).unwrap(), 2);
        let d = Matrix::diag(&[rat(2, 1), rat(0, 1)]);
        assert_eq!(index(&d).unwrap(), 1);
        // verify the defining property with A^D = diag(1/2, 0)
        let dd = drazin_inverse(&d).unwrap();
        let res = d.sub(&d.power(2).unwrap().mul(&dd.dinv).unwrap()).unwrap();
        assert!(res.is_zero());
    }

    #[test]
    fn drazin_examples() {
        // nilpotent -> zero inverse
        let n = m2(0, 1, 0, 0);
        assert!(drazin_inverse(&n).unwrap().dinv.is_zero());
        // idempotent -> itself
        let p = m2(1, 1, 0, 0);
        assert_eq!(drazin_inverse(&p).unwrap().dinv, p);
        // diag(2, 0) -> diag(1/2, 0)
        let d = Matrix::diag(&[rat(2, 1), rat(0, 1)]);
        assert_eq!(
            drazin_inverse(&d).unwrap().dinv,
            Matrix::diag(&[rat(1, 2), rat(0, 1)])
        );
    }

    #[test]
    fn strongly_drazin_predicate() {
        assert_eq!(
            is_strongly_drazin_invertible(&m2(1, 1, 0, 0)).unwrap(),
            Some(1)
        );
        // truncated shift-like operator from a rank-one perturbation of I
        let a = Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]);
        let r = a.sub(&a.power(2).unwrap()).unwrap();
        assert_eq!(r, Matrix::from_i64(&[&[0, 0, -1], &[0, 0, -1], &[0, 0, 0]]));
        assert!(is_strongly_drazin_invertible(&a).unwrap().is_some());
        let neg = Matrix::diag(&[rat(-1, 1)]);
        assert_eq!(is_strongly_drazin_invertible(&neg).unwrap(), None);
    }

    #[test]
    fn hirano_predicate() {
        assert_eq!(is_hirano_invertible(&m2(1, 0, 2, 1)).unwrap(), Some(2));
        assert_eq!(is_hirano_invertible(&Matrix::diag(&[rat(2, 1)])).unwrap(), None);
        let t = Matrix::diag(&[rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(is_hirano_invertible(&t).unwrap(), Some(1));
    }

    #[test]
    fn eigencheck_matches_predicate() {
        for m in [
            m2(1, 0, 2, 1),
            m2(0, 1, 0, 0),
            Matrix::diag(&[rat(2, 1), rat(0, 1)]),
            Matrix::identity(2),
            m2(1, 1, 0, 0),
            m2(2, 3, 1, 1),
        ] {
            assert_eq!(
                eigencheck_hirano(&m).unwrap(),
                is_hirano_invertible(&m).unwrap().is_some(),
                "disagreement on {m:?}"
            );
        }
        assert!(!eigencheck_hirano(&Matrix::diag(&[rat(2, 1), rat(0, 1)])).unwrap());
    }

    #[test]
    fn hirano_inverse_examples() {
        let a = m2(1, 1, 0, 1);
        let cert = hirano_inverse(&a).unwrap();
        assert_eq!(cert.z, m2(1, -1, 0, 1));
        let t = Matrix::diag(&[rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(hirano_inverse(&t).unwrap().z, t);
        assert!(hirano_inverse(&m2(0, 1, 0, 0)).unwrap().z.is_zero());
        assert!(matches!(
            hirano_inverse(&Matrix::diag(&[rat(2, 1)])),
            Err(Error::NotHirano)
        ));
    }

    #[test]
    fn strongly_drazin_inverse_examples() {
        let p = m2(1, 1, 0, 0);
        let cert = strongly_drazin_inverse(&p).unwrap();
        assert_eq!(cert.z, p);
        assert_eq!(cert.idem, p);
        assert!(cert.nilpart.is_zero());

        let a = m2(1, 1, 0, 1);
        let cert = strongly_drazin_inverse(&a).unwrap();
        assert_eq!(cert.z, m2(1, -1, 0, 1));
        assert_eq!(cert.idem, Matrix::identity(2));
        assert_eq!(cert.nilpart, m2(0, 1, 0, 0));

        assert!(matches!(
            strongly_drazin_inverse(&Matrix::diag(&[rat(2, 1), rat(0, 1)])),
            Err(Error::NotStronglyDrazin)
        ));
    }

    #[test]
    fn cline_examples() {
        // a = I: (AB)^D = B^D
        let b = m2(1, 1, 0, 0);
        let zb = drazin_inverse(&b).unwrap().dinv;
        assert_eq!(cline_transfer(&Matrix::identity(2), &b, &zb).unwrap(), zb);

        let a = m2(1, 0, 0, 0);
        let b = m2(1, 1, 0, 0);
        let z_ba = m2(1, 0, 0, 0); // ba is idempotent
        assert_eq!(cline_transfer(&a, &b, &z_ba).unwrap(), m2(1, 1, 0, 0));

        // ba = 0 -> result 0
        let a = m2(0, 1, 0, 0);
        let b = m2(0, 1, 0, 0);
        let ba = b.mul(&a).unwrap();
        assert!(ba.is_zero());
        assert!(cline_transfer(&a, &b, &Matrix::zero(2, 2)).unwrap().is_zero());

        // wrong inverse rejected
        assert!(matches!(
            cline_transfer(&a, &b, &Matrix::identity(2)),
            Err(Error::BadInverse(_))
        ));
    }
}
