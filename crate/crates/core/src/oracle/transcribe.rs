//! Closed-form bound formulas written out term by term.
//!
//! These take raw coherence numbers and assume every single and tail is
//! positive. They share nothing with the level engine in `bounds` beyond
//! `f64::powf`, so agreement between the two is a meaningful check.
//!
//! `c[0..N]` are the singles and `t[0..N-1]` the tails `C_{n+1..N}`.

fn gamma(kd: f64, alpha: f64) -> f64 {
    ((1.0 + kd).powf(alpha) - kd - 1.0) / kd.powf(alpha)
}

fn lambda(kd: f64, alpha: f64) -> f64 {
    ((1.0 + kd).powf(alpha) - 1.0) / kd.powf(alpha)
}

fn omega(c: &[f64], t: &[f64], n: usize) -> f64 {
    1.0 + t[n] / c[n]
}

fn upsilon(c: &[f64], t: &[f64], n: usize) -> f64 {
    1.0 + c[n] / t[n]
}

/// `Σ_{n<N} Ω_n Γ^{n−1} C_n^α + Γ^{N−1} C_N^α`.
pub fn thm1_rhs(c: &[f64], t: &[f64], alpha: f64, kd: f64) -> f64 {
    let big_n = c.len();
    let g = gamma(kd, alpha);
    let mut sum = 0.0;
    for n in 0..big_n - 1 {
        sum += omega(c, t, n) * g.powi(n as i32) * c[n].powf(alpha);
    }
    sum + g.powi(big_n as i32 - 1) * c[big_n - 1].powf(alpha)
}

/// Descending for positions `1..=m`, ascending after, one Γ.
pub fn thm2_rhs(c: &[f64], t: &[f64], alpha: f64, kd: f64, m: usize) -> f64 {
    let big_n = c.len();
    let g = gamma(kd, alpha);
    let mut sum = 0.0;
    for n in 0..m {
        sum += g.powi(n as i32) * omega(c, t, n) * c[n].powf(alpha);
    }
    sum += g.powi(m as i32 + 1) * c[m].powf(alpha);
    for n in m + 1..big_n - 1 {
        let ups: f64 = (m..n).map(|j| upsilon(c, t, j)).product();
        sum += g.powi(m as i32 + 1) * ups * c[n].powf(alpha);
    }
    let ups_all: f64 = (m..big_n - 1).map(|j| upsilon(c, t, j)).product();
    sum + g.powi(m as i32) * ups_all * c[big_n - 1].powf(alpha)
}

/// Three qubits, ascend at the first split and descend at the second.
pub fn cor1_rhs(c: &[f64], t: &[f64], alpha: f64, kd1: f64, kd2: f64) -> f64 {
    let a = 1.0 + c[0] / t[0];
    let b = 1.0 + c[2] / c[1];
    a * b * c[1].powf(alpha)
        + a * gamma(kd2, alpha) * c[2].powf(alpha)
        + gamma(kd1, alpha) * c[0].powf(alpha)
}

/// `Σ_n Ω_n Γ_1…Γ_{n−1} C_n^α`.
pub fn thm3_rhs(c: &[f64], t: &[f64], alpha: f64, kds: &[f64]) -> f64 {
    let big_n = c.len();
    let gs: Vec<f64> = kds.iter().map(|&k| gamma(k, alpha)).collect();
    let mut sum = 0.0;
    for n in 0..big_n {
        let prod: f64 = gs[..n].iter().product();
        let om = if n + 1 < big_n { omega(c, t, n) } else { 1.0 };
        sum += om * prod * c[n].powf(alpha);
    }
    sum
}

/// Per-level Γ_n, descending for `1..=m`, ascending after.
///
/// Position `n > m` (not last) gets `Γ_1…Γ_m · Γ_n · Υ_{m+1}…Υ_{n−1}`, and the
/// last position `Γ_1…Γ_m · Υ_{m+1}…Υ_{N−1}`.
pub fn thm4_rhs(c: &[f64], t: &[f64], alpha: f64, kds: &[f64], m: usize) -> f64 {
    let big_n = c.len();
    let gs: Vec<f64> = kds.iter().map(|&k| gamma(k, alpha)).collect();
    let head: f64 = gs[..m].iter().product();
    let mut sum = 0.0;
    for n in 0..m {
        let prod: f64 = gs[..n].iter().product();
        sum += prod * omega(c, t, n) * c[n].powf(alpha);
    }
    for n in m..big_n - 1 {
        let ups: f64 = (m..n).map(|j| upsilon(c, t, j)).product();
        sum += head * gs[n] * ups * c[n].powf(alpha);
    }
    let ups_all: f64 = (m..big_n - 1).map(|j| upsilon(c, t, j)).product();
    sum + head * ups_all * c[big_n - 1].powf(alpha)
}

/// Comparator with `λ_n = B^{n−1}` (n ≤ m), `B^{m+1}` (m < n < N), `B^m` (n = N)
/// and `B = Λ(kd)`.
pub fn ref_rhs(c: &[f64], alpha: f64, kd: f64, m: usize) -> f64 {
    let big_n = c.len();
    let b = lambda(kd, alpha);
    (1..=big_n)
        .map(|n| {
            let power = if n <= m {
                n - 1
            } else if n < big_n {
                m + 1
            } else {
                m
            };
            b.powi(power as i32) * c[n - 1].powf(alpha)
        })
        .sum()
}

/// Three-qubit comparator expanded ascend-then-descend:
/// `C_2^α + Λ_2 C_3^α + Λ_1 C_1^α`.
pub fn ref_hybrid_rhs(c: &[f64], alpha: f64, kd1: f64, kd2: f64) -> f64 {
    c[1].powf(alpha) + lambda(kd2, alpha) * c[2].powf(alpha) + lambda(kd1, alpha) * c[0].powf(alpha)
}
