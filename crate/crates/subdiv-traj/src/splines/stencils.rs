//! Fixed linear stencils on Bezier control points: midpoint subdivision
//! (De Casteljau) and parameter-derivative maps.

use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Binomial coefficient as f64; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Subdivision and derivative stencils for one polynomial degree.
///
/// `d1`/`d2` are the (M+1)x(M+1) maps splitting a piece at s = 1/2:
/// the curve with control points `d1 w` traces the parent over [0, 1/2]
/// and `d2 w` the parent over [1/2, 1]. `s1` (M x (M+1)) and `s2`
/// ((M-1) x (M+1)) map control points to the control points of the first
/// and second s-derivative curves.
#[derive(Debug)]
pub struct SubdivisionStencils {
    pub degree: usize,
    pub d1: DMatrix<f64>,
    pub d2: DMatrix<f64>,
    pub s1: DMatrix<f64>,
    pub s2: DMatrix<f64>,
}

/// Control-point map of the `order`-th s-derivative of a degree-`degree`
/// Bezier curve: rows are M!/(M-r)! times r-th forward differences.
pub fn derivative_stencil(degree: usize, order: usize) -> DMatrix<f64> {
    assert!(order <= degree, "derivative order exceeds degree");
    let mut factor = 1.0;
    for r in 0..order {
        factor *= (degree - r) as f64;
    }
    let rows = degree + 1 - order;
    let mut m = DMatrix::zeros(rows, degree + 1);
    for i in 0..rows {
        for j in 0..=order {
            let sign = if (order - j) % 2 == 0 { 1.0 } else { -1.0 };
            m[(i, i + j)] = factor * sign * binomial(order, j);
        }
    }
    m
}

fn build(degree: usize) -> SubdivisionStencils {
    let n = degree + 1;
    let mut d1 = DMatrix::zeros(n, n);
    let mut d2 = DMatrix::zeros(n, n);
    for i in 0..n {
        let pow = 0.5f64.powi(i as i32);
        for j in 0..=i {
            d1[(i, j)] = binomial(i, j) * pow;
        }
        let pow = 0.5f64.powi((degree - i) as i32);
        for j in i..n {
            d2[(i, j)] = binomial(degree - i, j - i) * pow;
        }
    }
    let s1 = derivative_stencil(degree, 1);
    let s2 = if degree >= 2 {
        derivative_stencil(degree, 2)
    } else {
        DMatrix::zeros(0, n)
    };
    SubdivisionStencils { degree, d1, d2, s1, s2 }
}

/// Shared per-degree stencil cache.
pub fn stencils(degree: usize) -> Arc<SubdivisionStencils> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SubdivisionStencils>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(degree).or_insert_with(|| Arc::new(build(degree))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_are_exact() {
        assert_eq!(binomial(8, 3), 56.0);
        assert_eq!(binomial(8, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(binomial(16, 8), 12870.0);
    }

    #[test]
    fn degree_one_split_is_midpoint() {
        let s = stencils(1);
        assert_eq!(s.d1[(0, 0)], 1.0);
        assert_eq!(s.d1[(1, 0)], 0.5);
        assert_eq!(s.d1[(1, 1)], 0.5);
        assert_eq!(s.d2[(0, 0)], 0.5);
        assert_eq!(s.d2[(0, 1)], 0.5);
        assert_eq!(s.d2[(1, 1)], 1.0);
    }

    #[test]
    fn derivative_stencil_rows_are_scaled_differences() {
        let s1 = derivative_stencil(2, 1);
        assert_eq!(s1[(0, 0)], -2.0);
        assert_eq!(s1[(0, 1)], 2.0);
        let s2 = derivative_stencil(3, 2);
        // 3*2 * (P0 - 2 P1 + P2)
        assert_eq!(s2[(0, 0)], 6.0);
        assert_eq!(s2[(0, 1)], -12.0);
        assert_eq!(s2[(0, 2)], 6.0);
    }

    #[test]
    fn subdivision_rows_sum_to_one() {
        let s = stencils(8);
        for i in 0..9 {
            let r1: f64 = (0..9).map(|j| s.d1[(i, j)]).sum();
            let r2: f64 = (0..9).map(|j| s.d2[(i, j)]).sum();
            assert!((r1 - 1.0).abs() < 1e-15);
            assert!((r2 - 1.0).abs() < 1e-15);
        }
    }
}
