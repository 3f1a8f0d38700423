//! Eigenvalues of the companion matrix of a monic polynomial.
//!
//! The companion matrix is upper Hessenberg, so after diagonal balancing it
//! goes straight into the shifted double-step QR iteration.

use num_complex::Complex64;

use crate::{Error, Result};

const RADIX: f64 = 2.0;
const MAX_ITERATIONS: usize = 60;

/// Row-major square matrix, 0-based.
struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }
}

/// Roots of `r^n + c[n-1] r^{n-1} + ... + c[0]` where `lower = c[0..n]`.
pub(crate) fn monic_roots(lower: &[f64]) -> Result<Vec<Complex64>> {
    let n = lower.len();
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![Complex64::new(-lower[0], 0.0)]),
        _ => {}
    }
    let mut a = Matrix::zeros(n);
    for j in 0..n {
        a.set(0, j, -lower[n - 1 - j]);
    }
    for i in 1..n {
        a.set(i, i - 1, 1.0);
    }
    balance(&mut a);
    hessenberg_eigenvalues(&mut a)
}

/// Diagonal similarity by powers of two until row and column norms agree.
fn balance(a: &mut Matrix) {
    let n = a.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a.get(j, i).abs();
                    r += a.get(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a.data[i * n + j] *= ginv;
                }
                for j in 0..n {
                    a.data[j * n + i] *= f;
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
///
/// Indices below follow the 1-based convention of the classical algorithm;
/// `at(i, j)` maps them onto the 0-based storage.
fn hessenberg_eigenvalues(a: &mut Matrix) -> Result<Vec<Complex64>> {
    let n = a.n;
    let at = |m: &Matrix, i: usize, j: usize| m.get(i - 1, j - 1);
    let put = |m: &mut Matrix, i: usize, j: usize, v: f64| m.set(i - 1, j - 1, v);
    let bump = |m: &mut Matrix, i: usize, j: usize, v: f64| m.add(i - 1, j - 1, v);

    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += at(a, i, j).abs();
        }
    }

    let mut nn = n;
    let mut t = 0.0;
    while nn >= 1 {
        let mut its = 0;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 2 {
                let mut s = at(a, l - 1, l - 1).abs() + at(a, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(a, l, l - 1).abs() + s == s {
                    put(a, l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = at(a, nn, nn);
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = at(a, nn - 1, nn - 1);
            let mut w = at(a, nn, nn - 1) * at(a, nn - 1, nn);
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn = nn.saturating_sub(2);
                break;
            }

            if its == MAX_ITERATIONS {
                return Err(Error::NoConvergence);
            }
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    bump(a, i, i, -x);
                }
                let s = at(a, nn, nn - 1).abs() + at(a, nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // look for two consecutive small subdiagonal elements
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = at(a, m, m);
                r = x - z;
                let s = y - z;
                p = (r * s - w) / at(a, m + 1, m) + at(a, m, m + 1);
                q = at(a, m + 1, m + 1) - z - r - s;
                r = at(a, m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at(a, m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at(a, m - 1, m - 1).abs() + z.abs() + at(a, m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                put(a, i, i - 2, 0.0);
                if i != m + 2 {
                    put(a, i, i - 3, 0.0);
                }
            }

            // double QR step on rows l..nn and columns m..nn
            let mut k = m;
            while k < nn {
                if k != m {
                    p = at(a, k, k - 1);
                    q = at(a, k + 1, k - 1);
                    r = 0.0;
                    if k != nn - 1 {
                        r = at(a, k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            let v = -at(a, k, k - 1);
                            put(a, k, k - 1, v);
                        }
                    } else {
                        put(a, k, k - 1, -s * x);
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = at(a, k, j) + q * at(a, k + 1, j);
                        if k != nn - 1 {
                            p += r * at(a, k + 2, j);
                            bump(a, k + 2, j, -p * z);
                        }
                        bump(a, k + 1, j, -p * y);
                        bump(a, k, j, -p * x);
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        p = x * at(a, i, k) + y * at(a, i, k + 1);
                        if k != nn - 1 {
                            p += z * at(a, i, k + 2);
                            bump(a, i, k + 2, -p * r);
                        }
                        bump(a, i, k + 1, -p * q);
                        bump(a, i, k, -p);
                    }
                }
                k += 1;
            }
        }
    }

    Ok((1..=n).map(|i| Complex64::new(wr[i], wi[i])).collect())
}
