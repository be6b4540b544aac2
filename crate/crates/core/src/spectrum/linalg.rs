//! Dense complex elimination for the tiny `(n+1)×(n+1)` systems.

use num_complex::Complex64;

use crate::{Error, Result};

pub(crate) type Matrix = Vec<Vec<Complex64>>;

/// Determinant by LU with partial pivoting.
pub(crate) fn determinant(m: &Matrix) -> Complex64 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap_or(k);
        if a[pivot][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let l = a[i][k] / a[k][k];
            for j in k..n {
                let u = a[k][j];
                a[i][j] -= l * u;
            }
        }
    }
    det
}

/// A nonzero vector spanning the (assumed one-dimensional) null space of
/// `m`, by Gaussian elimination with full pivoting. The last pivot is taken
/// as zero; any earlier pivot below `rel_tol·max|m|` means the null space
/// is larger than one dimension.
pub(crate) fn null_vector(m: &Matrix, rel_tol: f64) -> Result<Vec<Complex64>> {
    let n = m.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if n == 1 {
        return Ok(vec![Complex64::new(1.0, 0.0)]);
    }
    let mut a = m.clone();
    let mut cols: Vec<usize> = (0..n).collect();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let threshold = rel_tol * scale;
    for k in 0..n - 1 {
        let (mut pi, mut pj, mut best) = (k, k, -1.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if v.norm() > best {
                    best = v.norm();
                    pi = i;
                    pj = j;
                }
            }
        }
        if best <= threshold {
            return Err(Error::Rank(format!(
                "null space has dimension {} (pivot {best:.3e} below {threshold:.3e})",
                n - k
            )));
        }
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        cols.swap(k, pj);
        for i in k + 1..n {
            let l = a[i][k] / a[k][k];
            for j in k..n {
                let u = a[k][j];
                a[i][j] -= l * u;
            }
        }
    }
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[n - 1] = Complex64::new(1.0, 0.0);
    for i in (0..n - 1).rev() {
        let s: Complex64 = (i + 1..n).map(|j| a[i][j] * y[j]).sum();
        y[i] = -s / a[i][i];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (i, &c) in cols.iter().enumerate() {
        x[c] = y[i];
    }
    Ok(x)
}

pub(crate) fn mat_vec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_small_matrices() {
        let m = vec![vec![c(2.0, 0.0), c(1.0, 1.0)], vec![c(0.0, -1.0), c(3.0, 0.0)]];
        // 6 − (1+i)(−i) = 6 − (1 − i)
        let d = determinant(&m);
        assert!((d - c(5.0, 1.0)).norm() < 1e-15);
        let id: Matrix = (0..3)
            .map(|i| (0..3).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        assert_eq!(determinant(&id), c(1.0, 0.0));
    }

    #[test]
    fn null_vector_of_rank_deficient() {
        // rows are multiples of (1, 2i, -1)
        let r = [c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)];
        let m: Matrix = vec![
            r.to_vec(),
            r.iter().map(|z| z * c(0.0, 3.0)).collect(),
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        ];
        let v = null_vector(&m, 1e-12).unwrap();
        assert!(norm(&mat_vec(&m, &v)) < 1e-14 * norm(&v));
    }

    #[test]
    fn two_dimensional_null_space_is_rank_error() {
        let m: Matrix = vec![vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(null_vector(&m, 1e-12).is_ok());
        let z: Matrix = vec![vec![c(0.0, 0.0); 2]; 2];
        assert!(matches!(null_vector(&z, 1e-12), Err(Error::Rank(_))));
        let m3: Matrix = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0), c(6.0, 0.0)],
            vec![c(-1.0, 0.0), c(-2.0, 0.0), c(-3.0, 0.0)],
        ];
        assert!(matches!(null_vector(&m3, 1e-12), Err(Error::Rank(_))));
    }
}
