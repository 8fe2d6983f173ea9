//! Complex Schur form: Householder reduction to Hessenberg form followed by
//! single-shift implicit QR with Wilkinson shifts (structure follows LAPACK's
//! `zgehrd`/`zlahqr`/`ztrexc`).

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Maximum QR iterations per eigenvalue before giving up.
pub const MAX_ITER_PER_EIGENVALUE: usize = 30;

/// Givens rotation `[c s; -conj(s) c]` mapping `(f, g)` to `(r, 0)`.
#[inline]
pub(crate) fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    if g == ZERO {
        return (1.0, ZERO);
    }
    if f == ZERO {
        return (0.0, g.conj() / g.norm());
    }
    let fa = f.norm();
    let nrm = fa.hypot(g.norm());
    let c = fa / nrm;
    let s = (f / fa) * g.conj() / nrm;
    (c, s)
}

/// Left-multiplies rows `i`, `j` by the rotation over columns `cols`.
#[inline]
fn rot_rows(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64, cols: std::ops::Range<usize>) {
    for col in cols {
        let x = m[(i, col)];
        let y = m[(j, col)];
        m[(i, col)] = x * c + s * y;
        m[(j, col)] = y * c - s.conj() * x;
    }
}

/// Right-multiplies columns `i`, `j` by the adjoint rotation over `rows`.
#[inline]
fn rot_cols(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: Complex64, rows: std::ops::Range<usize>) {
    for row in rows {
        let x = m[(row, i)];
        let y = m[(row, j)];
        m[(row, i)] = x * c + y * s.conj();
        m[(row, j)] = y * c - x * s;
    }
}

/// Reduces `a` to upper Hessenberg form in place, accumulating the unitary
/// transformation into `q` when given (`A = Q H Q*`).
pub(crate) fn hessenberg(a: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    for k in 0..n - 2 {
        let norm: f64 = ((k + 1)..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        let tail: f64 = ((k + 2)..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in (k + 1)..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        for x in &mut v[k + 1..n] {
            *x /= vnorm;
        }
        // Left: rows k+1.., columns k..
        for j in k..n {
            let w: Complex64 = ((k + 1)..n).map(|i| v[i].conj() * a[(i, j)]).sum();
            for i in (k + 1)..n {
                let vi = v[i];
                a[(i, j)] -= vi * w * 2.0;
            }
        }
        // Right: all rows, columns k+1..
        for i in 0..n {
            let w: Complex64 = ((k + 1)..n).map(|j| a[(i, j)] * v[j]).sum();
            for j in (k + 1)..n {
                let vj = v[j];
                a[(i, j)] -= w * vj.conj() * 2.0;
            }
        }
        if let Some(q) = q.as_deref_mut() {
            for i in 0..n {
                let w: Complex64 = ((k + 1)..n).map(|j| q[(i, j)] * v[j]).sum();
                for j in (k + 1)..n {
                    let vj = v[j];
                    q[(i, j)] -= w * vj.conj() * 2.0;
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            a[(i, k)] = ZERO;
        }
    }
}

fn l1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Wilkinson shift from the trailing 2×2 block ending at `i`.
fn wilkinson_shift(h: &ComplexMatrix, i: usize) -> Complex64 {
    let mut t = h[(i, i)];
    let u = h[(i - 1, i)].sqrt() * h[(i, i - 1)].sqrt();
    let s = l1(u);
    if s != 0.0 {
        let x = (h[(i - 1, i - 1)] - t) * 0.5;
        let sx = l1(x);
        let s = s.max(sx);
        let mut y = ((x / s) * (x / s) + (u / s) * (u / s)).sqrt() * s;
        if sx > 0.0 {
            let xs = x / sx;
            if xs.re * y.re + xs.im * y.im < 0.0 {
                y = -y;
            }
        }
        let denom = x + y;
        if denom != ZERO {
            t -= u * (u / denom);
        }
    }
    t
}

/// Drives an upper Hessenberg matrix to upper triangular form by shifted QR.
pub(crate) fn hessenberg_qr(h: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>) -> Result<()> {
    let n = h.rows();
    if n <= 1 {
        return Ok(());
    }
    let max_total = MAX_ITER_PER_EIGENVALUE * n;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let ulp = f64::EPSILON;
    let small = f64::MIN_POSITIVE * (n as f64 / ulp);

    while hi > 0 {
        // Look for a negligible subdiagonal entry.
        let mut l = hi;
        while l > 0 {
            let sub = l1(h[(l, l - 1)]);
            if sub <= small {
                break;
            }
            let mut tst = l1(h[(l - 1, l - 1)]) + l1(h[(l, l)]);
            if tst == 0.0 {
                if l >= 2 {
                    tst += h[(l - 1, l - 2)].re.abs();
                }
                if l < hi {
                    tst += h[(l + 1, l)].re.abs();
                }
            }
            if h[(l, l - 1)].re.abs() <= ulp * tst {
                // Ahues & Tisseur refinement of the deflation test.
                let ab = l1(h[(l, l - 1)]).max(l1(h[(l - 1, l)]));
                let ba = l1(h[(l, l - 1)]).min(l1(h[(l - 1, l)]));
                let diff = h[(l - 1, l - 1)] - h[(l, l)];
                let aa = l1(h[(l, l)]).max(l1(diff));
                let bb = l1(h[(l, l)]).min(l1(diff));
                let s = aa + ab;
                if ba * (ab / s) <= small.max(ulp * (bb * (aa / s))) {
                    break;
                }
            }
            l -= 1;
        }
        if l > 0 {
            h[(l, l - 1)] = ZERO;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }

        total += 1;
        its += 1;
        if total > max_total {
            return Err(Error::SchurFailed(max_total));
        }

        let mu = if its.is_multiple_of(10) {
            if its.is_multiple_of(20) {
                h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs()
            } else {
                h[(l, l)] + 0.75 * h[(l + 1, l)].re.abs()
            }
        } else {
            wilkinson_shift(h, hi)
        };

        // Introduce the bulge and chase it down.
        for k in l..hi {
            let (c, s) =
                if k == l { givens(h[(l, l)] - mu, h[(l + 1, l)]) } else { givens(h[(k, k - 1)], h[(k + 1, k - 1)]) };
            let first_col = if k == l { l } else { k - 1 };
            rot_rows(h, k, k + 1, c, s, first_col..n);
            if k > l {
                h[(k + 1, k - 1)] = ZERO;
            }
            let last_row = (k + 2).min(hi) + 1;
            rot_cols(h, k, k + 1, c, s, 0..last_row);
            if let Some(q) = q.as_deref_mut() {
                rot_cols(q, k, k + 1, c, s, 0..n);
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(())
}

/// Swaps the adjacent diagonal entries `k`, `k+1` of an upper triangular
/// matrix by a unitary similarity, updating `q`.
pub(crate) fn swap_adjacent(t: &mut ComplexMatrix, q: &mut ComplexMatrix, k: usize) {
    let n = t.rows();
    let t11 = t[(k, k)];
    let t22 = t[(k + 1, k + 1)];
    let (c, s) = givens(t[(k, k + 1)], t22 - t11);
    if k + 2 < n {
        rot_rows(t, k, k + 1, c, s, (k + 2)..n);
    }
    rot_cols(t, k, k + 1, c, s, 0..k);
    t[(k, k)] = t22;
    t[(k + 1, k + 1)] = t11;
    rot_cols(q, k, k + 1, c, s, 0..n);
}

/// Diagonal similarity scaling by powers of two so that row and column
/// norms are comparable (Parlett–Reinsch). Eigenvalues are unchanged exactly.
pub(crate) fn balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    for _ in 0..(100 * n.max(1)) {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[(j, i)]);
                    r += l1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g && f < 1e150 {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g && f > 1e-150 {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
    refine_balance(a);
}

/// Osborne iteration with exact scalings `sqrt(r/c)`, run after the radix-2
/// pass so graded cyclic structure is equalized along the whole cycle.
fn refine_balance(a: &mut ComplexMatrix) {
    let n = a.rows();
    for _ in 0..(200 * n.max(1)) {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += l1(a[(j, i)]);
                    r += l1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let f = (r / c).sqrt();
            if (f - 1.0).abs() > 1e-3 {
                converged = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}
