//! Fixed-size matrix helpers generic over [`Scalar`].

use super::dual::Scalar;

pub type Mat<S, const N: usize> = [[S; N]; N];

pub fn zeros<S: Scalar, const N: usize>() -> Mat<S, N> {
    [[S::zero(); N]; N]
}

pub fn det3<S: Scalar>(m: &Mat<S, 3>) -> S {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse through the adjugate; `None` when the determinant is zero.
pub fn inv3<S: Scalar>(m: &Mat<S, 3>) -> Option<Mat<S, 3>> {
    let d = det3(m);
    if d.re() == 0.0 {
        return None;
    }
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ];
    Some(adj.map(|row| row.map(|v| v / d)))
}

/// Gauss-Jordan without pivoting; meant for positive-definite matrices.
pub fn inv_spd<S: Scalar, const N: usize>(m: &Mat<S, N>) -> Option<Mat<S, N>> {
    let mut a = *m;
    let mut inv: Mat<S, N> = zeros();
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = S::one();
    }
    for c in 0..N {
        let p = a[c][c];
        if p.re() <= 0.0 {
            return None;
        }
        for j in 0..N {
            a[c][j] = a[c][j] / p;
            inv[c][j] = inv[c][j] / p;
        }
        for r in 0..N {
            if r != c {
                let f = a[r][c];
                for j in 0..N {
                    let (ac, ic) = (a[c][j], inv[c][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Determinant of the 4x4 matrix whose columns are `cols`.
pub fn det4_cols<S: Scalar>(cols: &[[S; 4]; 4]) -> S {
    let mut acc = S::zero();
    for r in 0..4 {
        let minor: Mat<S, 3> = std::array::from_fn(|i| {
            let row = if i < r { i } else { i + 1 };
            std::array::from_fn(|j| cols[j + 1][row])
        });
        let term = cols[0][r] * det3(&minor);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn mat_vec<S: Scalar, const N: usize>(m: &Mat<S, N>, v: &[S; N]) -> [S; N] {
    std::array::from_fn(|i| {
        let mut acc = S::zero();
        for j in 0..N {
            acc += m[i][j] * v[j];
        }
        acc
    })
}

pub fn mat_mul<S: Scalar, const N: usize>(a: &Mat<S, N>, b: &Mat<S, N>) -> Mat<S, N> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..N {
                acc += a[i][k] * b[k][j];
            }
            acc
        })
    })
}

/// `u^T G v`.
pub fn inner<S: Scalar, const N: usize>(g: &Mat<S, N>, u: &[S; N], v: &[S; N]) -> S {
    let gv = mat_vec(g, v);
    let mut acc = S::zero();
    for i in 0..N {
        acc += u[i] * gv[i];
    }
    acc
}

pub fn to_f64<S: Scalar, const N: usize>(v: &[S; N]) -> [f64; N] {
    std::array::from_fn(|i| v[i].re())
}

pub fn mat_to_f64<S: Scalar, const N: usize>(m: &Mat<S, N>) -> Mat<f64, N> {
    std::array::from_fn(|i| to_f64(&m[i]))
}
