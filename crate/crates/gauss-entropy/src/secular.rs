//! Eigen-decomposition of a diagonal-plus-rank-one matrix `diag(d) + ρ z zᵀ`.
//!
//! Deflation follows the usual divide-and-conquer recipe (negligible `z_i`,
//! nearly equal `d_i` merged by a Givens rotation); roots of the secular
//! equation are found on shifted variables with a two-pole rational model
//! safeguarded by bisection; eigenvectors use the recomputed `ẑ` of Gu and
//! Eisenstat, so they come out orthogonal even for clustered roots.

use crate::RMat;

pub struct RankOne {
    /// ascending
    pub values: Vec<f64>,
    /// columns match `values`
    pub vectors: RMat,
}

pub fn rank_one_eigen(d: &[f64], z: &[f64], rho: f64) -> RankOne {
    rank_one(d, z, rho, true)
}

/// Eigenvalues only (ascending); skips the O(n²) eigenvector assembly.
pub fn rank_one_values(d: &[f64], z: &[f64], rho: f64) -> Vec<f64> {
    rank_one(d, z, rho, false).values
}

fn rank_one(d: &[f64], z: &[f64], rho: f64, vectors: bool) -> RankOne {
    assert_eq!(d.len(), z.len());
    let n = d.len();
    if rho < 0.0 {
        let nd: Vec<f64> = d.iter().map(|x| -x).collect();
        let r = rank_one(&nd, z, -rho, vectors);
        let values = r.values.iter().rev().map(|x| -x).collect();
        let vectors = if vectors { RMat::from_fn(n, n, |i, j| r.vectors[(i, n - 1 - j)]) } else { r.vectors };
        return RankOne { values, vectors };
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let mut ds: Vec<f64> = perm.iter().map(|&i| d[i]).collect();
    let mut zs: Vec<f64> = perm.iter().map(|&i| z[i]).collect();

    let znorm = zs.iter().map(|x| x * x).sum::<f64>().sqrt();
    let dmax = ds.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let r = rho * znorm * znorm;
    let eps = f64::EPSILON;
    let tol = 8.0 * eps * dmax.max(r);

    let mut vec_sorted = if vectors { RMat::zeros(n, n) } else { RMat::zeros(0, 0) };
    let mut values = vec![0.0; n];
    if n == 0 {
        return RankOne { values, vectors: vec_sorted };
    }
    if r <= tol || znorm == 0.0 {
        values.copy_from_slice(&ds);
        if !vectors {
            return values_only(values);
        }
        for i in 0..n {
            vec_sorted[(i, i)] = 1.0;
        }
        return finish(values, vec_sorted, &perm);
    }
    for x in zs.iter_mut() {
        *x /= znorm;
    }

    // deflation
    let mut deflated = vec![false; n];
    let mut rots: Vec<(usize, usize, f64, f64)> = Vec::new();
    let mut prev: Option<usize> = None;
    for j in 0..n {
        if r * zs[j].abs() <= tol {
            deflated[j] = true;
            continue;
        }
        if let Some(p) = prev {
            let tau = zs[p].hypot(zs[j]);
            let c = zs[j] / tau;
            let s = -zs[p] / tau;
            let t = ds[j] - ds[p];
            if (t * c * s).abs() <= tol {
                zs[j] = tau;
                zs[p] = 0.0;
                let dp = ds[p] * c * c + ds[j] * s * s;
                ds[j] = ds[p] * s * s + ds[j] * c * c;
                ds[p] = dp;
                deflated[p] = true;
                rots.push((p, j, c, s));
            }
        }
        prev = Some(j);
    }

    let mut nd: Vec<usize> = (0..n).filter(|&i| !deflated[i]).collect();
    nd.sort_by(|&a, &b| ds[a].total_cmp(&ds[b]));
    let k = nd.len();
    let dk: Vec<f64> = nd.iter().map(|&i| ds[i]).collect();
    let zk: Vec<f64> = nd.iter().map(|&i| zs[i]).collect();

    let roots = secular_roots(&dk, &zk, r);
    if !vectors {
        let mut col = 0;
        for i in (0..n).filter(|&i| deflated[i]) {
            values[col] = ds[i];
            col += 1;
        }
        for &(o, tau) in &roots {
            values[col] = dk[o] + tau;
            col += 1;
        }
        return values_only(values);
    }

    // Gu–Eisenstat ẑ
    let mut zhat = vec![0.0; k];
    for i in 0..k {
        let diff = |j: usize| (dk[i] - dk[roots[j].0]) - roots[j].1;
        let mut w = diff(i);
        for j in 0..k {
            if j != i {
                w *= diff(j) / (dk[i] - dk[j]);
            }
        }
        zhat[i] = (-w / r).max(0.0).sqrt().copysign(zk[i]);
    }

    let mut col = 0;
    for &i in (0..n).filter(|&i| deflated[i]).collect::<Vec<_>>().iter() {
        values[col] = ds[i];
        vec_sorted[(i, col)] = 1.0;
        col += 1;
    }
    for &(o, tau) in roots.iter() {
        values[col] = dk[o] + tau;
        let mut v: Vec<f64> = (0..k)
            .map(|i| zhat[i] / ((dk[i] - dk[o]) - tau))
            .collect();
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= nv;
        }
        for (a, &i) in nd.iter().enumerate() {
            vec_sorted[(i, col)] = v[a];
        }
        col += 1;
    }
    // undo the deflation rotations: vectors ← G₁⋯G_m · E
    for &(p, j, c, s) in rots.iter().rev() {
        for cidx in 0..n {
            let ep = vec_sorted[(p, cidx)];
            let ej = vec_sorted[(j, cidx)];
            vec_sorted[(p, cidx)] = c * ep - s * ej;
            vec_sorted[(j, cidx)] = s * ep + c * ej;
        }
    }
    finish(values, vec_sorted, &perm)
}

fn values_only(mut values: Vec<f64>) -> RankOne {
    values.sort_by(|a, b| a.total_cmp(b));
    RankOne { values, vectors: RMat::zeros(0, 0) }
}

fn finish(values: Vec<f64>, vec_sorted: RMat, perm: &[usize]) -> RankOne {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut vectors = RMat::zeros(n, n);
    for (newc, &oldc) in order.iter().enumerate() {
        for a in 0..n {
            vectors[(perm[a], newc)] = vec_sorted[(a, oldc)];
        }
    }
    RankOne {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors,
    }
}

/// Eigenvalues of `diag(d) + r z zᵀ` (d strictly ascending, r > 0, ‖z‖ ≤ 1)
/// as pairs `(origin index, offset)`: root = d[origin] + offset.
pub fn secular_roots(d: &[f64], z: &[f64], r: f64) -> Vec<(usize, f64)> {
    let k = d.len();
    let z2: Vec<f64> = z.iter().map(|x| x * x).collect();
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        return vec![(0, r * z2[0])];
    }
    let inv_r = 1.0 / r;
    let mut out = Vec::with_capacity(k);
    let mut delta = vec![0.0; k];
    for i in 0..k {
        let last = i == k - 1;
        let (origin, mut lo, mut hi, left, right);
        if !last {
            let half = 0.5 * (d[i + 1] - d[i]);
            let f_mid = inv_r
                + (0..k)
                    .map(|j| z2[j] / ((d[j] - d[i]) - half))
                    .sum::<f64>();
            left = i;
            right = i + 1;
            if f_mid >= 0.0 {
                origin = i;
                lo = 0.0;
                hi = half;
            } else {
                origin = i + 1;
                lo = -half;
                hi = 0.0;
            }
        } else {
            origin = i;
            lo = 0.0;
            hi = r * z2.iter().sum::<f64>();
            left = k - 2;
            right = k - 1;
        }
        for j in 0..k {
            delta[j] = d[j] - d[origin];
        }
        let eval = |tau: f64| -> (f64, f64, f64, f64, f64, f64) {
            // g, |terms| sum, psi, psi', phi, phi'
            let (mut psi, mut dpsi, mut phi, mut dphi, mut abs) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for j in 0..k {
                let t = 1.0 / (delta[j] - tau);
                let term = z2[j] * t;
                abs += term.abs();
                if j <= left {
                    psi += term;
                    dpsi += term * t;
                } else {
                    phi += term;
                    dphi += term * t;
                }
            }
            (inv_r + psi + phi, abs + inv_r, psi, dpsi, phi, dphi)
        };
        let mut tau = 0.5 * (lo + hi);
        let mut width_hist = [hi - lo, hi - lo];
        let mut it = 0;
        loop {
            it += 1;
            let (g, scale, psi, dpsi, phi, dphi) = eval(tau);
            if g.abs() <= 4.0 * f64::EPSILON * (k as f64) * scale || it > 400 {
                break;
            }
            if g < 0.0 {
                lo = tau;
            } else {
                hi = tau;
            }
            if hi - lo <= 2.0 * f64::EPSILON * tau.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            let dl = delta[left] - tau;
            let dr = delta[right] - tau;
            let sl = dpsi * dl * dl;
            let sr = dphi * dr * dr;
            let a = inv_r + (psi - dpsi * dl) + (phi - dphi * dr);
            let b = a * (dl + dr) + sl + sr;
            let c = dl * dr * g;
            let disc = b * b - 4.0 * a * c;
            let mut next = f64::NAN;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                let (e1, e2) = if b >= 0.0 {
                    ((b + sq) / (2.0 * a), 2.0 * c / (b + sq))
                } else {
                    ((b - sq) / (2.0 * a), 2.0 * c / (b - sq))
                };
                let inside = |e: f64| e.is_finite() && tau + e > lo && tau + e < hi;
                next = match (inside(e1), inside(e2)) {
                    (true, true) => tau + if e1.abs() < e2.abs() { e1 } else { e2 },
                    (true, false) => tau + e1,
                    (false, true) => tau + e2,
                    _ => f64::NAN,
                };
            }
            let width = hi - lo;
            // no usable model step, or the bracket stalls: bisect
            if !next.is_finite() || (it % 3 == 0 && width > 0.5 * width_hist[0]) {
                next = 0.5 * (lo + hi);
            }
            width_hist = [width_hist[1], width];
            if next == tau {
                break;
            }
            tau = next;
        }
        out.push((origin, tau));
    }
    out
}
