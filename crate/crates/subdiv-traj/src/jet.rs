//! Second-order forward-mode dual numbers over a fixed set of `N` variables.
//!
//! A [`Jet`] carries a value together with its gradient and (symmetric)
//! Hessian with respect to the active variables. Distance and barrier
//! formulas are evaluated on jets so that exact first and second
//! derivatives fall out of the same code path that computes values.
//!
//! `N` is small (at most 12: four 3-space points), so dense arrays are the
//! right representation.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug)]
pub struct Jet<const N: usize> {
    pub v: f64,
    pub g: [f64; N],
    pub h: [[f64; N]; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(v: f64) -> Self {
        Jet { v, g: [0.0; N], h: [[0.0; N]; N] }
    }

    /// A variable with index `i` and current value `v`.
    pub fn variable(i: usize, v: f64) -> Self {
        let mut g = [0.0; N];
        g[i] = 1.0;
        Jet { v, g, h: [[0.0; N]; N] }
    }

    /// Chain rule for a scalar function applied to this jet:
    /// given f(v), f'(v) and f''(v), returns f(self).
    pub fn chain(&self, f: f64, df: f64, ddf: f64) -> Self {
        let mut out = Jet::constant(f);
        for i in 0..N {
            out.g[i] = df * self.g[i];
        }
        for i in 0..N {
            for j in 0..N {
                out.h[i][j] = df * self.h[i][j] + ddf * self.g[i] * self.g[j];
            }
        }
        out
    }

    pub fn sqrt(&self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * r * r))
    }

    pub fn recip(&self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.v *= s;
        for i in 0..N {
            out.g[i] *= s;
            for j in 0..N {
                out.h[i][j] *= s;
            }
        }
        out
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Jet<N>;
    fn add(self, rhs: Jet<N>) -> Jet<N> {
        let mut out = self;
        out.v += rhs.v;
        for i in 0..N {
            out.g[i] += rhs.g[i];
            for j in 0..N {
                out.h[i][j] += rhs.h[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Jet<N>;
    fn sub(self, rhs: Jet<N>) -> Jet<N> {
        let mut out = self;
        out.v -= rhs.v;
        for i in 0..N {
            out.g[i] -= rhs.g[i];
            for j in 0..N {
                out.h[i][j] -= rhs.h[i][j];
            }
        }
        out
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Jet<N>;
    fn neg(self) -> Jet<N> {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Jet<N>;
    fn mul(self, rhs: Jet<N>) -> Jet<N> {
        let mut out = Jet::constant(self.v * rhs.v);
        for i in 0..N {
            out.g[i] = self.g[i] * rhs.v + rhs.g[i] * self.v;
        }
        for i in 0..N {
            for j in 0..N {
                out.h[i][j] = self.h[i][j] * rhs.v
                    + rhs.h[i][j] * self.v
                    + self.g[i] * rhs.g[j]
                    + self.g[j] * rhs.g[i];
            }
        }
        out
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Jet<N>;
    fn div(self, rhs: Jet<N>) -> Jet<N> {
        self * rhs.recip()
    }
}

/// A point or vector in 3-space with jet coordinates.
pub type JetVec3<const N: usize> = [Jet<N>; 3];

pub fn jv_constant<const N: usize>(p: [f64; 3]) -> JetVec3<N> {
    [Jet::constant(p[0]), Jet::constant(p[1]), Jet::constant(p[2])]
}

/// A 3-space point whose coordinates are variables `base..base+3`.
pub fn jv_variable<const N: usize>(base: usize, p: [f64; 3]) -> JetVec3<N> {
    [
        Jet::variable(base, p[0]),
        Jet::variable(base + 1, p[1]),
        Jet::variable(base + 2, p[2]),
    ]
}

pub fn jv_sub<const N: usize>(a: &JetVec3<N>, b: &JetVec3<N>) -> JetVec3<N> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn jv_dot<const N: usize>(a: &JetVec3<N>, b: &JetVec3<N>) -> Jet<N> {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn jv_cross<const N: usize>(a: &JetVec3<N>, b: &JetVec3<N>) -> JetVec3<N> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn jv_norm_squared<const N: usize>(a: &JetVec3<N>) -> Jet<N> {
    jv_dot(a, a)
}

pub fn jv_norm<const N: usize>(a: &JetVec3<N>) -> Jet<N> {
    jv_norm_squared(a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    // f(x, y) = x^2 y + sqrt(x) / y evaluated as a jet; derivatives by hand.
    #[test]
    fn composite_expression_matches_hand_derivatives() {
        let x = 2.0;
        let y = 3.0;
        let jx = Jet::<2>::variable(0, x);
        let jy = Jet::<2>::variable(1, y);
        let f = jx * jx * jy + jx.sqrt() / jy;

        let sx = x.sqrt();
        assert!((f.v - (x * x * y + sx / y)).abs() < 1e-12);
        // df/dx = 2xy + 1/(2 sqrt(x) y)
        assert!((f.g[0] - (2.0 * x * y + 0.5 / (sx * y))).abs() < 1e-12);
        // df/dy = x^2 - sqrt(x)/y^2
        assert!((f.g[1] - (x * x - sx / (y * y))).abs() < 1e-12);
        // d2f/dx2 = 2y - 1/(4 x^{3/2} y)
        assert!((f.h[0][0] - (2.0 * y - 0.25 / (x * sx * y))).abs() < 1e-12);
        // d2f/dxdy = 2x - 1/(2 sqrt(x) y^2)
        assert!((f.h[0][1] - (2.0 * x - 0.5 / (sx * y * y))).abs() < 1e-12);
        assert!((f.h[0][1] - f.h[1][0]).abs() == 0.0);
        // d2f/dy2 = 2 sqrt(x)/y^3
        assert!((f.h[1][1] - 2.0 * sx / (y * y * y)).abs() < 1e-12);
    }

    #[test]
    fn vector_norm_derivatives_match_finite_differences() {
        let p = [1.3, -0.7, 2.1];
        let jp = jv_variable::<3>(0, p);
        let n = jv_norm(&jp);

        let f = |q: [f64; 3]| (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
        let h = 1e-6;
        for i in 0..3 {
            let mut qp = p;
            let mut qm = p;
            qp[i] += h;
            qm[i] -= h;
            let fd = (f(qp) - f(qm)) / (2.0 * h);
            assert!((n.g[i] - fd).abs() < 1e-8, "grad {i}: {} vs {}", n.g[i], fd);
        }
        for i in 0..3 {
            for j in 0..3 {
                let mut a = p;
                a[i] += h;
                a[j] += h;
                let mut b = p;
                b[i] += h;
                b[j] -= h;
                let mut c = p;
                c[i] -= h;
                c[j] += h;
                let mut d = p;
                d[i] -= h;
                d[j] -= h;
                let fd = (f(a) - f(b) - f(c) + f(d)) / (4.0 * h * h);
                assert!((n.h[i][j] - fd).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn cross_product_is_antisymmetric() {
        let a = jv_variable::<6>(0, [0.3, 1.2, -0.4]);
        let b = jv_variable::<6>(3, [-1.0, 0.5, 0.8]);
        let ab = jv_cross(&a, &b);
        let ba = jv_cross(&b, &a);
        for k in 0..3 {
            assert!((ab[k].v + ba[k].v).abs() < 1e-15);
            for i in 0..6 {
                assert!((ab[k].g[i] + ba[k].g[i]).abs() < 1e-15);
            }
        }
    }
}
