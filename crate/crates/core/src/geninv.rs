//! Moore-Penrose and group inverses over the rationals.
//!
//! Both inverses are computed from a full-rank factorization `M = F·G`,
//! which keeps everything in ℚ:
//!
//! * `M† = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`
//! * `M# = F (G F)⁻² G`, defined exactly when `rank(M²) = rank(M)`.
//!
//! Every result is re-checked against its defining equations before it is
//! returned. A failed check is a bug in this module and panics.

use crate::error::{Error, Result};
use crate::ratmat::Matrix;

/// Exact truth values of the four Penrose equations for a candidate `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PenroseCertificate {
    /// `M X M = M`
    pub eq1_holds: bool,
    /// `X M X = X`
    pub eq2_holds: bool,
    /// `(M X)ᵀ = M X`
    pub eq3_holds: bool,
    /// `(X M)ᵀ = X M`
    pub eq4_holds: bool,
}

impl PenroseCertificate {
    pub fn all(&self) -> bool {
        self.eq1_holds && self.eq2_holds && self.eq3_holds && self.eq4_holds
    }
}

/// Exact truth values of the three group-inverse equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCertificate {
    /// `M X M = M`
    pub eq1_holds: bool,
    /// `X M X = X`
    pub eq2_holds: bool,
    /// `M X = X M`
    pub commute_holds: bool,
}

impl GroupCertificate {
    pub fn all(&self) -> bool {
        self.eq1_holds && self.eq2_holds && self.commute_holds
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Penrose(PenroseCertificate),
    Group(GroupCertificate),
}

impl Certificate {
    pub fn all(&self) -> bool {
        match self {
            Certificate::Penrose(c) => c.all(),
            Certificate::Group(c) => c.all(),
        }
    }
}

/// A generalized inverse together with the certificate it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInverseResult {
    pub inverse: Matrix,
    pub certificate: Certificate,
}

fn check_shapes(op: &'static str, m: &Matrix, x: &Matrix) -> Result<()> {
    if x.shape() != (m.cols(), m.rows()) {
        return Err(Error::Dimension {
            op,
            left: m.shape(),
            right: x.shape(),
        });
    }
    Ok(())
}

pub fn check_penrose(m: &Matrix, x: &Matrix) -> Result<PenroseCertificate> {
    check_shapes("check_penrose", m, x)?;
    let mx = m * x;
    let xm = x * m;
    Ok(PenroseCertificate {
        eq1_holds: &mx * m == *m,
        eq2_holds: &xm * x == *x,
        eq3_holds: mx.transpose() == mx,
        eq4_holds: xm.transpose() == xm,
    })
}

pub fn check_group(m: &Matrix, x: &Matrix) -> Result<GroupCertificate> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "check_group",
            shape: m.shape(),
        });
    }
    check_shapes("check_group", m, x)?;
    let mx = m * x;
    let xm = x * m;
    Ok(GroupCertificate {
        eq1_holds: &mx * m == *m,
        eq2_holds: &xm * x == *x,
        commute_holds: mx == xm,
    })
}

fn invert_gram(g: &Matrix) -> Matrix {
    g.inverse()
        .expect("Gram matrix of a full-rank factor is nonsingular")
}

/// The Moore-Penrose inverse, with its Penrose certificate.
pub fn pinv(m: &Matrix) -> GenInverseResult {
    let f = m.full_rank_factorize();
    let inverse = if f.rank == 0 {
        Matrix::zeros(m.cols(), m.rows())
    } else {
        let (left, right) = (&f.left, &f.right);
        let rt = right.transpose();
        let lt = left.transpose();
        &(&rt * &invert_gram(&(right * &rt))) * &(&invert_gram(&(&lt * left)) * &lt)
    };
    let cert = check_penrose(m, &inverse).expect("pinv has transposed shape");
    assert!(cert.all(), "pinv failed its Penrose certificate: {cert:?} for {m:?}");
    GenInverseResult {
        inverse,
        certificate: Certificate::Penrose(cert),
    }
}

/// `rank(M²) = rank(M)`.
pub fn group_inverse_exists(m: &Matrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "group_inverse_exists",
            shape: m.shape(),
        });
    }
    Ok((m * m).rank() == m.rank())
}

/// The group inverse, with its group certificate.
pub fn ginv(m: &Matrix) -> Result<GenInverseResult> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "ginv",
            shape: m.shape(),
        });
    }
    let rank = m.rank();
    let rank_sq = (m * m).rank();
    if rank != rank_sq {
        return Err(Error::NoGroupInverse {
            block: None,
            rank,
            rank_sq,
        });
    }
    let f = m.full_rank_factorize();
    let inverse = if f.rank == 0 {
        Matrix::zeros(m.rows(), m.cols())
    } else {
        let core = (&f.right * &f.left)
            .inverse()
            .expect("G·F is nonsingular when the rank condition holds");
        &(&f.left * &(&core * &core)) * &f.right
    };
    let cert = check_group(m, &inverse)?;
    assert!(cert.all(), "ginv failed its group certificate: {cert:?} for {m:?}");
    Ok(GenInverseResult {
        inverse,
        certificate: Certificate::Group(cert),
    })
}

/// `M X M = M` and `X M X = X`.
pub fn is_12_inverse(x: &Matrix, m: &Matrix) -> Result<bool> {
    check_shapes("is_12_inverse", m, x)?;
    let c = check_penrose(m, x)?;
    Ok(c.eq1_holds && c.eq2_holds)
}

impl Matrix {
    /// Shorthand for `pinv(self).inverse`.
    pub fn pinv(&self) -> Matrix {
        pinv(self).inverse
    }

    /// Shorthand for `ginv(self)` keeping only the matrix.
    pub fn ginv(&self) -> Result<Matrix> {
        ginv(self).map(|r| r.inverse)
    }
}
