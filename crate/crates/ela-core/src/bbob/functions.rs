//! Evaluators for the 24 benchmark functions, implemented from the standard
//! definitions. Function identity, conditioning, and penalty structure per
//! function id:
//!
//!  1 sphere                     13 sharp ridge
//!  2 separable ellipsoid        14 different powers
//!  3 separable Rastrigin        15 rotated Rastrigin
//!  4 skew Rastrigin-Bueche      16 Weierstrass
//!  5 linear slope               17 Schaffers F7
//!  6 attractive sector          18 Schaffers F7, ill-conditioned
//!  7 step ellipsoid             19 composite Griewank-Rosenbrock
//!  8 Rosenbrock                 20 Schwefel
//!  9 rotated Rosenbrock         21 Gallagher 101 peaks
//! 10 rotated ellipsoid          22 Gallagher 21 peaks
//! 11 discus                     23 Katsuura
//! 12 bent cigar                 24 Lunacek bi-Rastrigin

use std::f64::consts::{PI, TAU};

use super::transforms::{f_pen, index_ratio, t_asy, t_osz, t_osz_scalar};
use super::ProblemInstance;

/// Evaluates `inst` at `x` (dimension already checked by the caller).
pub(super) fn evaluate(inst: &ProblemInstance, x: &[f64]) -> f64 {
    let d = x.len();
    let x_opt = inst.x_opt();
    let f_opt = inst.f_opt();

    match inst.function_id() {
        1 => {
            let mut acc = 0.0;
            for i in 0..d {
                let z = x[i] - x_opt[i];
                acc += z * z;
            }
            acc + f_opt
        }
        2 => {
            let z = t_osz(&shifted(x, x_opt));
            ramp_sum(&z, 6.0) + f_opt
        }
        3 => {
            let mut z = t_asy(&t_osz(&shifted(x, x_opt)), 0.2);
            scale_in_place(&mut z, inst.lambda());
            rastrigin_core(&z) + f_opt
        }
        4 => {
            let w = t_osz(&shifted(x, x_opt));
            let mut z = Vec::with_capacity(d);
            for (i, &wi) in w.iter().enumerate() {
                let mut s = 10.0f64.powf(0.5 * index_ratio(i, d));
                // 1-based odd coordinates with positive value get an extra
                // factor 10 (the skew).
                if wi > 0.0 && i % 2 == 0 {
                    s *= 10.0;
                }
                z.push(s * wi);
            }
            rastrigin_core(&z) + 100.0 * f_pen(x) + f_opt
        }
        5 => {
            let mut acc = 0.0;
            for i in 0..d {
                let s = x_opt[i].signum() * 10.0f64.powf(index_ratio(i, d));
                let z = if x_opt[i] * x[i] < 25.0 { x[i] } else { x_opt[i] };
                acc += 5.0 * s.abs() - s * z;
            }
            acc + f_opt
        }
        6 => {
            let mut z = inst.rotation_r().mat_vec(&shifted(x, x_opt));
            scale_in_place(&mut z, inst.lambda());
            let z = inst.rotation_q().mat_vec(&z);
            let mut acc = 0.0;
            for i in 0..d {
                let s = if z[i] * x_opt[i] > 0.0 { 100.0 } else { 1.0 };
                let t = s * z[i];
                acc += t * t;
            }
            t_osz_scalar(acc.powf(0.9)) + f_opt
        }
        7 => {
            let mut zhat = inst.rotation_r().mat_vec(&shifted(x, x_opt));
            scale_in_place(&mut zhat, inst.lambda());
            let ztilde: Vec<f64> = zhat
                .iter()
                .map(|&v| {
                    if v.abs() > 0.5 {
                        (0.5 + v).floor()
                    } else {
                        (0.5 + 10.0 * v).floor() / 10.0
                    }
                })
                .collect();
            let z = inst.rotation_q().mat_vec(&ztilde);
            let sum = ramp_sum(&z, 2.0);
            0.1 * (zhat[0].abs() / 1e4).max(sum) + f_pen(x) + f_opt
        }
        8 => {
            let c = rosenbrock_scale(d);
            let z: Vec<f64> = (0..d).map(|i| c * (x[i] - x_opt[i]) + 1.0).collect();
            rosenbrock_core(&z) + f_opt
        }
        9 => {
            let c = rosenbrock_scale(d);
            let rx = inst.rotation_r().mat_vec(x);
            let z: Vec<f64> = rx.iter().map(|&v| c * v + 0.5).collect();
            rosenbrock_core(&z) + f_opt
        }
        10 => {
            let z = t_osz(&inst.rotation_r().mat_vec(&shifted(x, x_opt)));
            ramp_sum(&z, 6.0) + f_opt
        }
        11 => {
            let z = t_osz(&inst.rotation_r().mat_vec(&shifted(x, x_opt)));
            let mut acc = 1e6 * z[0] * z[0];
            for &v in &z[1..] {
                acc += v * v;
            }
            acc + f_opt
        }
        12 => {
            let inner = t_asy(&inst.rotation_r().mat_vec(&shifted(x, x_opt)), 0.5);
            let z = inst.rotation_r().mat_vec(&inner);
            let mut acc = z[0] * z[0];
            for &v in &z[1..] {
                acc += 1e6 * v * v;
            }
            acc + f_opt
        }
        13 => {
            let mut z = inst.rotation_r().mat_vec(&shifted(x, x_opt));
            scale_in_place(&mut z, inst.lambda());
            let z = inst.rotation_q().mat_vec(&z);
            let mut tail = 0.0;
            for &v in &z[1..] {
                tail += v * v;
            }
            z[0] * z[0] + 100.0 * tail.sqrt() + f_opt
        }
        14 => {
            let z = inst.rotation_r().mat_vec(&shifted(x, x_opt));
            let mut acc = 0.0;
            for (i, &v) in z.iter().enumerate() {
                acc += v.abs().powf(2.0 + 4.0 * index_ratio(i, d));
            }
            acc.sqrt() + f_opt
        }
        15 => {
            let inner = t_asy(&t_osz(&inst.rotation_r().mat_vec(&shifted(x, x_opt))), 0.2);
            let mut z = inst.rotation_q().mat_vec(&inner);
            scale_in_place(&mut z, inst.lambda());
            let z = inst.rotation_r().mat_vec(&z);
            rastrigin_core(&z) + f_opt
        }
        16 => {
            let inner = t_osz(&inst.rotation_r().mat_vec(&shifted(x, x_opt)));
            let mut z = inst.rotation_q().mat_vec(&inner);
            scale_in_place(&mut z, inst.lambda());
            let z = inst.rotation_r().mat_vec(&z);
            // f0 = sum over k of 2^-k cos(pi 3^k).
            let mut f0 = 0.0;
            let mut acc = 0.0;
            let mut half_pow = 1.0;
            let mut three_pow = 1.0;
            for _k in 0..12 {
                f0 += half_pow * (PI * three_pow).cos();
                half_pow *= 0.5;
                three_pow *= 3.0;
            }
            for &zi in &z {
                half_pow = 1.0;
                three_pow = 1.0;
                for _k in 0..12 {
                    acc += half_pow * (TAU * three_pow * (zi + 0.5)).cos();
                    half_pow *= 0.5;
                    three_pow *= 3.0;
                }
            }
            let core = acc / d as f64 - f0;
            10.0 * core * core * core + 10.0 / d as f64 * f_pen(x) + f_opt
        }
        17 | 18 => {
            let inner = t_asy(&inst.rotation_r().mat_vec(&shifted(x, x_opt)), 0.5);
            let mut z = inst.rotation_q().mat_vec(&inner);
            scale_in_place(&mut z, inst.lambda());
            let mut acc = 0.0;
            for i in 0..d - 1 {
                let s = (z[i] * z[i] + z[i + 1] * z[i + 1]).sqrt();
                acc += s.sqrt() * (1.0 + (50.0 * s.powf(0.2)).sin().powi(2));
            }
            let mean = acc / (d - 1) as f64;
            mean * mean + 10.0 * f_pen(x) + f_opt
        }
        19 => {
            let c = rosenbrock_scale(d);
            let rx = inst.rotation_r().mat_vec(x);
            let z: Vec<f64> = rx.iter().map(|&v| c * v + 0.5).collect();
            let mut acc = 0.0;
            for i in 0..d - 1 {
                let a = z[i] * z[i] - z[i + 1];
                let b = z[i] - 1.0;
                let s = 100.0 * a * a + b * b;
                acc += s / 4000.0 - s.cos();
            }
            10.0 * acc / (d - 1) as f64 + 10.0 + f_opt
        }
        20 => {
            let signs = inst.signs();
            let lambda = inst.lambda();
            let xhat: Vec<f64> = (0..d).map(|i| 2.0 * signs[i] * x[i]).collect();
            let opt2 = 2.0 * SCHWEFEL_OPT_HALF_ABS;
            let mut zhat = vec![0.0; d];
            zhat[0] = xhat[0];
            for i in 1..d {
                zhat[i] = xhat[i] + 0.25 * (xhat[i - 1] - opt2);
            }
            let mut acc = 0.0;
            let mut z_over_100 = vec![0.0; d];
            for i in 0..d {
                let z = 100.0 * (lambda[i] * (zhat[i] - opt2) + opt2);
                z_over_100[i] = z / 100.0;
                acc += z * (z.abs().sqrt()).sin();
            }
            -acc / (100.0 * d as f64) + 4.189828872724339 + 100.0 * f_pen(&z_over_100) + f_opt
        }
        21 | 22 => {
            let peaks = inst.peaks();
            let rx = inst.rotation_r().mat_vec(x);
            let mut best = f64::NEG_INFINITY;
            for p in 0..peaks.w.len() {
                let c = peaks.c.row(p);
                let ry = peaks.ry.row(p);
                let mut q = 0.0;
                for j in 0..d {
                    let u = rx[j] - ry[j];
                    q += c[j] * u * u;
                }
                let v = peaks.w[p] * (-q / (2.0 * d as f64)).exp();
                if v > best {
                    best = v;
                }
            }
            let t = t_osz_scalar(10.0 - best);
            t * t + f_pen(x) + f_opt
        }
        23 => {
            let mut z = inst.rotation_r().mat_vec(&shifted(x, x_opt));
            scale_in_place(&mut z, inst.lambda());
            let z = inst.rotation_q().mat_vec(&z);
            let df = d as f64;
            let exponent = 10.0 / df.powf(1.2);
            let mut prod = 1.0;
            for (i, &zi) in z.iter().enumerate() {
                let mut acc = 0.0;
                let mut pow2 = 2.0;
                for _j in 0..32 {
                    let t = pow2 * zi;
                    acc += (t - (t + 0.5).floor()).abs() / pow2;
                    pow2 *= 2.0;
                }
                prod *= (1.0 + (i + 1) as f64 * acc).powf(exponent);
            }
            let scale = 10.0 / (df * df);
            scale * prod - scale + f_pen(x) + f_opt
        }
        24 => {
            let signs = inst.signs();
            let lambda = inst.lambda();
            let mu0 = 2.5;
            let df = d as f64;
            let s = 1.0 - 1.0 / (2.0 * (df + 20.0).sqrt() - 8.2);
            let mu1 = -((mu0 * mu0 - 1.0) / s).sqrt();
            let xhat: Vec<f64> = (0..d).map(|i| 2.0 * signs[i] * x[i]).collect();
            let mut z = inst
                .rotation_r()
                .mat_vec(&xhat.iter().map(|&v| v - mu0).collect::<Vec<f64>>());
            scale_in_place(&mut z, lambda);
            let z = inst.rotation_q().mat_vec(&z);
            let mut sum0 = 0.0;
            let mut sum1 = 0.0;
            let mut cos_sum = 0.0;
            for i in 0..d {
                let a = xhat[i] - mu0;
                let b = xhat[i] - mu1;
                sum0 += a * a;
                sum1 += b * b;
                cos_sum += (TAU * z[i]).cos();
            }
            sum0.min(df + s * sum1) + 10.0 * (df - cos_sum) + 1e4 * f_pen(x) + f_opt
        }
        other => unreachable!("function id {other} rejected at construction"),
    }
}

const SCHWEFEL_OPT_HALF_ABS: f64 = 4.2096874633 / 2.0;

#[inline]
fn shifted(x: &[f64], x_opt: &[f64]) -> Vec<f64> {
    x.iter().zip(x_opt).map(|(a, b)| a - b).collect()
}

#[inline]
fn scale_in_place(v: &mut [f64], diag: &[f64]) {
    for (x, s) in v.iter_mut().zip(diag) {
        *x *= s;
    }
}

/// `sum_i 10^(p * ratio_i) z_i^2` — the conditioned quadratic backbone.
fn ramp_sum(z: &[f64], p: f64) -> f64 {
    let d = z.len();
    let mut acc = 0.0;
    for (i, &v) in z.iter().enumerate() {
        acc += 10.0f64.powf(p * index_ratio(i, d)) * v * v;
    }
    acc
}

fn rastrigin_core(z: &[f64]) -> f64 {
    let d = z.len() as f64;
    let mut cos_sum = 0.0;
    let mut norm_sq = 0.0;
    for &v in z {
        cos_sum += (TAU * v).cos();
        norm_sq += v * v;
    }
    10.0 * (d - cos_sum) + norm_sq
}

fn rosenbrock_core(z: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..z.len() - 1 {
        let a = z[i] * z[i] - z[i + 1];
        let b = z[i] - 1.0;
        acc += 100.0 * a * a + b * b;
    }
    acc
}

fn rosenbrock_scale(d: usize) -> f64 {
    ((d as f64).sqrt() / 8.0).max(1.0)
}
