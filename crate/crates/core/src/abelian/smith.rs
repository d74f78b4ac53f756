//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal, nonnegative,
/// and satisfying the divisibility chain. `u_inv` is the inverse of `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `s` (length `min(rows, cols)`).
    pub fn invariants(&self) -> Vec<BigInt> {
        self.s.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Reduction {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    // row[target] += k * row[src]; the inverse update is col[src] -= k * col[target].
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(target, src, k);
        self.u.add_row_multiple(target, src, k);
        self.u_inv.add_col_multiple(src, target, &-k);
    }

    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(target, src, k);
        self.v.add_col_multiple(target, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_abs_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reduction {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = r.min_abs_from(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);

        loop {
            let pivot = r.a[(t, t)].clone();
            let mut leftover = false;
            for i in t + 1..rows {
                if !r.a[(i, t)].is_zero() {
                    let q = r.a[(i, t)].div_floor(&pivot);
                    r.add_row(i, t, &-q);
                    leftover |= !r.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !r.a[(t, j)].is_zero() {
                    let q = r.a[(t, j)].div_floor(&pivot);
                    r.add_col(j, t, &-q);
                    leftover |= !r.a[(t, j)].is_zero();
                }
            }

            if leftover {
                // a remainder smaller than the pivot survived; promote it
                let below = (t + 1..rows).filter(|&i| !r.a[(i, t)].is_zero()).map(|i| (i, t));
                let right = (t + 1..cols).filter(|&j| !r.a[(t, j)].is_zero()).map(|j| (t, j));
                let (i, j) = below
                    .chain(right)
                    .min_by(|x, y| r.a[*x].abs().cmp(&r.a[*y].abs()))
                    .expect("leftover entry exists");
                if j == t {
                    r.swap_rows(t, i);
                } else {
                    r.swap_cols(t, j);
                }
                continue;
            }

            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !r.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }

        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
    }

    SmithForm { u: r.u, u_inv: r.u_inv, s: r.a, v: r.v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracle: the k-th determinantal divisor is the gcd of all
    // k x k minors; invariant factors are successive quotients.
    fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let d = m.select_rows(&rs).select_cols(&cs).determinant();
                g = g.gcd(&d);
            }
        }
        g
    }

    fn oracle_invariants(m: &IntMatrix) -> Vec<BigInt> {
        let n = m.rows().min(m.cols());
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=n {
            let d = minors_gcd(m, k);
            if d.is_zero() {
                out.push(BigInt::zero());
                prev = BigInt::zero();
            } else {
                out.push(&d / &prev);
                prev = d;
            }
        }
        out
    }

    fn check(m: &IntMatrix) {
        let f = smith_normal_form(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s, "U M V != S for {m}");
        assert!(f.s.is_diagonal());
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(m.rows()));
        let d = f.invariants();
        assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {d:?}");
        }
        assert_eq!(d, oracle_invariants(m));
    }

    #[test]
    fn identity_is_fixed() {
        let f = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(f.s, IntMatrix::identity(2));
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(2));
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_i64(&[[2, 0], [0, 3]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.s, IntMatrix::from_i64(&[[1, 0], [0, 6]]));
        assert_eq!(oracle_invariants(&m), vec![BigInt::from(1), BigInt::from(6)]);
        check(&m);
    }

    #[test]
    fn zero_map() {
        let f = smith_normal_form(&IntMatrix::from_i64(&[[0]]));
        assert_eq!(f.s, IntMatrix::from_i64(&[[0]]));
    }

    #[test]
    fn empty_and_rectangular() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
        check(&IntMatrix::from_i64(&[[4, 6, 10]]));
        check(&IntMatrix::from_i64(&[[-4], [6], [0]]));
        check(&IntMatrix::from_i64(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_i64(&rows)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn random_matrices_satisfy_contract(m in small_matrix()) {
            check(&m);
        }
    }
}
