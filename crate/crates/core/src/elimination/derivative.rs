use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{int, Epsilon, Monomial, MultiPoly, Rational, Var};

use super::reference;
use super::system::BSquaredSolution;
use super::Check;

/// Consistency polynomials obtained by comparing the two expressions for `e_n(b_n^2)`:
///
/// `P_n = eps q [(mu_k - mu_n) p_j + (mu_j - mu_n) p_k]
///        - mu_n (mu_j - mu_n)(mu_k - mu_n) [(p_n' q - p_n q') + q^2]`
/// with `{j, k}` the other two indices.
pub fn derivative_identity_polys(sol: &BSquaredSolution, eps: Epsilon) -> [MultiPoly; 3] {
    let q = &sol.q;
    let dq = q.diff_t();
    let q2 = q * q;
    let e = eps.poly();
    [1usize, 2, 3].map(|n| {
        let (j, k) = match n {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        let p = |i: usize| &sol.p[i - 1];
        let mix = &(MultiPoly::diff_mu(k, n) * p(j)) + &(MultiPoly::diff_mu(j, n) * p(k));
        let first = &(&e * q) * &mix;
        let wronskian = &(&p(n).diff_t() * q) - &(p(n) * &dq);
        let pref = MultiPoly::mu(n) * MultiPoly::diff_mu(j, n) * MultiPoly::diff_mu(k, n);
        &first - &(&pref * &(&wronskian + &q2))
    })
}

/// Leading `t` terms of `P_1, P_2, P_3` against the closed forms.
pub fn extract_and_check_t5(polys: &[MultiPoly; 3], expected: &[MultiPoly; 3]) -> (Vec<Check>, Vec<MultiPoly>) {
    let mut checks = Vec::new();
    let mut coeffs = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let n = k + 1;
        match p.leading_term_t() {
            Ok((deg, lead)) => {
                let name = format!("P{n}-degree-5");
                checks.push(if deg == 5 {
                    Check::pass(name, "5")
                } else {
                    Check::fail(name, format!("{deg}"))
                });
                let name = format!("P{n}-t5-coefficient");
                let c5 = p.coeff_t(5);
                checks.push(if deg == 5 && c5 == expected[k] {
                    Check::pass(name, "structurally equal")
                } else {
                    Check::fail(name, format!("computed {c5}; expected {}", expected[k]))
                });
                coeffs.push(if deg == 5 { c5 } else { lead });
            }
            Err(_) => {
                checks.push(Check::fail(format!("P{n}-degree-5"), "zero polynomial"));
                coeffs.push(MultiPoly::zero());
            }
        }
    }
    (checks, coeffs)
}

/// Factor analysis of a `t^5` coefficient: it must be an integer multiple of
/// `linear * cofactor`, vanish on the diagonal `m1 = m2 = m3`, and have a
/// cofactor with no zeros at pairwise-distinct `mu`.
pub fn analyze_t5_factor(coeff: &MultiPoly, n: usize) -> (Vec<Check>, Option<[i64; 3]>) {
    let mut out = Vec::new();
    let (linear, cofactor) = reference::t5_factorization()[n - 1].clone();

    let diag = coeff
        .substitute(Var::Mu2, &MultiPoly::mu(1))
        .substitute(Var::Mu3, &MultiPoly::mu(1));
    out.push(if diag.is_zero() {
        Check::pass(format!("P{n}-t5-vanishes-on-diagonal"), "identically zero at m1=m2=m3")
    } else {
        Check::fail(format!("P{n}-t5-vanishes-on-diagonal"), format!("{diag}"))
    });

    // The quadratic factor is a sum of squares vanishing only on the diagonal;
    // the remaining factors are differences of distinct curvatures.
    let y_psd = quadratic_form_vanishes_only_on_diagonal(&reference::quad_y());
    let row = coeff.div_exact(&cofactor).and_then(|lin| {
        // lin = k * (a m1 + b m2 + c m3) with integer k
        if lin.total_degree() != Some(1) || !lin.coeff(&Monomial::ONE).is_zero() {
            return None;
        }
        let r = [Var::Mu1, Var::Mu2, Var::Mu3].map(|v| lin.coeff(&Monomial::var(v)));
        let scale = linear.coeff(&Monomial::var(Var::Mu1));
        let k = &r[0] / &scale;
        let ok = (0..3).all(|i| {
            r[i] == &linear.coeff(&Monomial::var([Var::Mu1, Var::Mu2, Var::Mu3][i])) * &k
        });
        if !ok || !k.is_integer() || k.is_zero() {
            return None;
        }
        let prim = [0, 1, 2].map(|i| (&r[i] / &k).to_i64().unwrap_or(0));
        Some((prim, k))
    });
    match row {
        Some((prim, k)) => {
            out.push(Check::pass(
                format!("P{n}-t5-linear-factor"),
                format!("{} * ({}) * cofactor", k, linear),
            ));
            out.push(if y_psd {
                Check::pass(
                    format!("P{n}-t5-cofactor-nonvanishing"),
                    "cofactor = differences * positive quadratic form",
                )
            } else {
                Check::fail(format!("P{n}-t5-cofactor-nonvanishing"), "quadratic form")
            });
            (out, Some(prim))
        }
        None => {
            out.push(Check::fail(
                format!("P{n}-t5-linear-factor"),
                format!("{coeff} is not an integer multiple of ({linear}) * cofactor"),
            ));
            (out, None)
        }
    }
}

/// True when the quadratic form `q(m1, m2, m3)` is positive semidefinite with
/// kernel exactly `span{(1,1,1)}`: LDL^T pivots `(+, +, 0)` and the Gram matrix
/// annihilates `(1,1,1)`.
pub fn quadratic_form_vanishes_only_on_diagonal(q: &MultiPoly) -> bool {
    let vars = [Var::Mu1, Var::Mu2, Var::Mu3];
    if q.total_degree() != Some(2) || q.degree_in(Var::T).unwrap_or(0) != 0 {
        return false;
    }
    let half = crate::algebra::rat(1, 2);
    let g: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let m = Monomial::var(vars[i]).mul(&Monomial::var(vars[j]));
                    if i == j {
                        q.coeff(&m)
                    } else {
                        q.coeff(&m) * &half
                    }
                })
                .collect()
        })
        .collect();
    if q.terms().any(|(m, _)| m.degree() != 2) {
        return false;
    }
    let d1 = g[0][0].clone();
    let d2 = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    let kernel_ok = g.iter().all(|row| (&row[0] + &row[1] + &row[2]).is_zero());
    d1 > Rational::zero() && d2 > Rational::zero() && kernel_ok
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuKernel {
    pub rank: usize,
    pub basis: Vec<[i64; 3]>,
}

/// Exact row reduction of a 3x3 integer matrix; kernel vectors are returned
/// primitive with first nonzero entry positive.
pub fn solve_mu_system(matrix: &[[i64; 3]; 3]) -> MuKernel {
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| int(v)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..3).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v = &*v / &piv;
        }
        for i in 0..3 {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..3 {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); 3];
            v[f] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            primitive(&v)
        })
        .collect();
    MuKernel {
        rank: pivots.len(),
        basis,
    }
}

fn primitive(v: &[Rational]) -> [i64; 3] {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out = [0i64; 3];
    for (o, x) in out.iter_mut().zip(ints.iter()) {
        *o = (x / &g).to_i64().expect("small kernel entry");
    }
    if out.iter().find(|x| **x != 0).map(|x| x.is_negative()).unwrap_or(false) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_system_has_rank_two_and_diagonal_kernel() {
        let k = solve_mu_system(&reference::MU_SYSTEM);
        assert_eq!(k.rank, 2);
        assert_eq!(k.basis, vec![[1, 1, 1]]);
        for row in reference::MU_SYSTEM {
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn quadratic_form_test() {
        assert!(quadratic_form_vanishes_only_on_diagonal(&reference::quad_y()));
        assert!(quadratic_form_vanishes_only_on_diagonal(&reference::quad_x()));
        let indefinite = MultiPoly::diff_mu(1, 2) * MultiPoly::diff_mu(1, 3);
        assert!(!quadratic_form_vanishes_only_on_diagonal(&indefinite));
        let sq = MultiPoly::diff_mu(1, 2).pow(2);
        assert!(!quadratic_form_vanishes_only_on_diagonal(&sq));
    }

    #[test]
    fn row_reduction_of_full_rank_and_zero() {
        let id = solve_mu_system(&[[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
        assert_eq!(id.rank, 3);
        assert!(id.basis.is_empty());
        let z = solve_mu_system(&[[0; 3]; 3]);
        assert_eq!(z.rank, 0);
        assert_eq!(z.basis.len(), 3);
    }
}
