//! The matrix involutions used throughout: plain transpose, the
//! quaternionic involution ♯ on 2x2 blocks, their blockwise combination
//! `sharp_tr`, and the conversion between the transpose-based and
//! sharp-based unitary pictures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;

/// Which linear antimultiplicative involution to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum InvolutionKind {
    /// Matrix transpose.
    #[serde(rename = "TR")]
    Transpose,
    /// Blockwise quaternionic transpose; only defined on even sizes.
    #[serde(rename = "SHARP_TR")]
    SharpTranspose,
}

/// The quaternionic involution on a single 2x2 matrix:
/// `[[a,b],[c,d]] -> [[d,-b],[-c,a]]`.
pub fn sharp2(a: &ExactMatrix) -> Result<ExactMatrix> {
    if a.size() != 2 {
        return Err(Error::dim(format!("sharp2 requires a 2x2 matrix, got {}", a.size())));
    }
    Ok(ExactMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => a.get(1, 1),
        (0, 1) => -a.get(0, 1),
        (1, 0) => -a.get(1, 0),
        _ => a.get(0, 0),
    }))
}

/// View an even-size matrix as a grid of 2x2 blocks; block (i,j) of the
/// result is `sharp2` of block (j,i) of the input.
pub fn sharp_tr(a: &ExactMatrix) -> Result<ExactMatrix> {
    let n = a.size();
    if !n.is_multiple_of(2) {
        return Err(Error::dim(format!("sharp_tr requires an even size, got {n}")));
    }
    Ok(ExactMatrix::from_fn(n, |r, c| {
        let (i, p) = (r / 2, r % 2);
        let (j, q) = (c / 2, c % 2);
        let src = |x: usize, y: usize| a.get(2 * j + x, 2 * i + y);
        match (p, q) {
            (0, 0) => src(1, 1),
            (0, 1) => -src(0, 1),
            (1, 0) => -src(1, 0),
            _ => src(0, 0),
        }
    }))
}

/// Dispatch over the two involutions.
pub fn apply(kind: InvolutionKind, a: &ExactMatrix) -> Result<ExactMatrix> {
    match kind {
        InvolutionKind::Transpose => Ok(a.transpose()),
        InvolutionKind::SharpTranspose => sharp_tr(a),
    }
}

/// The canonical antisymmetric unit `w = [[0,1],[-1,0]]`.
pub fn w2() -> ExactMatrix {
    ExactMatrix::from_gauss([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]])
}

/// Block-diagonal `I_m ⊗ w`, size `2m`, in the same 2x2-block convention as
/// [`sharp_tr`]. Squares to `-I`.
pub fn w_matrix(m: usize) -> ExactMatrix {
    assert!(m >= 1, "w_matrix needs m >= 1");
    ExactMatrix::identity(m).kron(&w2())
}

/// Direction of a unitary-picture conversion.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PictureDirection {
    /// `u -> u·W`: trades the transpose-based symmetry for the sharp-based
    /// one (with the sign of the relation flipped).
    ToSharpPicture,
    /// `u -> u·(-W)`, the inverse conversion.
    ToTrPicture,
}

/// Multiply a unitary on the right by `±W`. The two directions compose to
/// the identity since `W·(-W) = I`.
pub fn picture_convert(u: &ExactMatrix, direction: PictureDirection) -> Result<ExactMatrix> {
    let n = u.size();
    if !n.is_multiple_of(2) {
        return Err(Error::dim(format!("picture conversion requires an even size, got {n}")));
    }
    if !u.is_unitary() {
        return Err(Error::contract("picture conversion requires a unitary input"));
    }
    let w = w_matrix(n / 2);
    match direction {
        PictureDirection::ToSharpPicture => u.mul(&w),
        PictureDirection::ToTrPicture => u.mul(&w.neg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Dyadic;

    #[test]
    fn sharp2_formula() {
        let m = ExactMatrix::from_gauss([[(1, 0), (2, 0)], [(3, 0), (4, 0)]]);
        let s = sharp2(&m).unwrap();
        assert_eq!(s, ExactMatrix::from_gauss([[(4, 0), (-2, 0)], [(-3, 0), (1, 0)]]));
        assert_eq!(sharp2(&ExactMatrix::identity(2)).unwrap(), ExactMatrix::identity(2));
        // w is anti-fixed: w^sharp = -w
        assert_eq!(sharp2(&w2()).unwrap(), w2().neg());
    }

    #[test]
    fn sharp_tr_reduces_to_sharp2_for_one_block() {
        let m = ExactMatrix::from_gauss([[(1, 2), (0, -1)], [(5, 0), (0, 3)]]);
        assert_eq!(sharp_tr(&m).unwrap(), sharp2(&m).unwrap());
        assert!(sharp_tr(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn apply_dispatches_over_both_kinds() {
        let i4 = ExactMatrix::identity(4);
        assert_eq!(apply(InvolutionKind::Transpose, &i4).unwrap(), i4);
        assert_eq!(apply(InvolutionKind::SharpTranspose, &i4).unwrap(), i4);
        let m = ExactMatrix::from_gauss([[(0, 0), (2, 1)], [(-1, 3), (0, 0)]]);
        assert_eq!(apply(InvolutionKind::Transpose, &m).unwrap(), m.transpose());
        assert_eq!(apply(InvolutionKind::SharpTranspose, &m).unwrap(), sharp2(&m).unwrap());
    }

    #[test]
    fn w_matrix_squares_to_minus_identity() {
        for m in 1..4 {
            let w = w_matrix(m);
            assert_eq!(w.mul(&w).unwrap(), ExactMatrix::identity(2 * m).neg());
        }
        assert_eq!(w_matrix(2), w2().block_diag(&w2()));
    }

    #[test]
    fn picture_round_trip_and_identity_image() {
        let u = ExactMatrix::identity(2);
        let v = picture_convert(&u, PictureDirection::ToSharpPicture).unwrap();
        assert_eq!(v, w2());
        let back = picture_convert(&v, PictureDirection::ToTrPicture).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn picture_convert_rejects_non_unitary() {
        let m = ExactMatrix::scalar(2, Dyadic::integer(2));
        assert!(matches!(
            picture_convert(&m, PictureDirection::ToSharpPicture),
            Err(Error::Contract(_))
        ));
    }
}
