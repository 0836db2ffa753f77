//! One-dimensional quadrature rules: trapezoid, Gauss-Hermite and Gauss-Legendre.

use std::f64::consts::PI;

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Composite trapezoid rule with `n` equispaced nodes on `[a, b]`.
pub fn trapezoid(a: f64, b: f64, n: usize) -> Rule1d {
    assert!(n >= 2 && b > a);
    let h = (b - a) / (n - 1) as f64;
    let nodes = (0..n).map(|i| a + h * i as f64).collect();
    let weights = (0..n).map(|i| if i == 0 || i == n - 1 { 0.5 * h } else { h }).collect();
    Rule1d { nodes, weights }
}

/// Gauss-Hermite rule for the weight `exp(-x^2)` (physicists' convention).
///
/// Roots are refined by Newton iteration on the orthonormal three-term
/// recurrence, so the weights are accurate in the relative sense even for
/// tail nodes. Nodes are returned in increasing order.
pub fn gauss_hermite_physicists(n: usize) -> Rule1d {
    assert!(n >= 1);
    let pim4 = PI.powf(-0.25);
    let nf = n as f64;
    let half = n.div_ceil(2);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0_f64;
    for i in 0..half {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let (p1, p2) = hermite_orthonormal(n, z, pim4);
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                let (_, p2) = hermite_orthonormal(n, z, pim4);
                pp = (2.0 * nf).sqrt() * p2;
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    Rule1d { nodes: idx.iter().map(|&i| x[i]).collect(), weights: idx.iter().map(|&i| w[i]).collect() }
}

fn hermite_orthonormal(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}

/// Gauss-Hermite rule for the standard normal weight `exp(-x^2/2)`:
/// `sum w_i g(x_i) ~ int g(x) exp(-x^2/2) dx`.
pub fn gauss_hermite_probabilists(n: usize) -> Rule1d {
    let phys = gauss_hermite_physicists(n);
    let s = std::f64::consts::SQRT_2;
    Rule1d { nodes: phys.nodes.iter().map(|x| x * s).collect(), weights: phys.weights.iter().map(|w| w * s).collect() }
}

/// Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Rule1d {
    assert!(n >= 1);
    let nf = n as f64;
    let half = n.div_ceil(2);
    let mid = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..half {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p1, p2) = legendre(n, z);
            let pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        let (p1, p2) = legendre(n, z);
        let pp = nf * (z * p1 - p2) / (z * z - 1.0);
        x[i] = mid - hl * z;
        x[n - 1 - i] = mid + hl * z;
        w[i] = 2.0 * hl / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    Rule1d { nodes: x, weights: w }
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
    }
    (p1, p2)
}
