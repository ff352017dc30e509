//! Integer-order Bessel functions of the first kind.
//!
//! Ascending series for `|x| ≤ 8`, Miller's backward recurrence (normalized by
//! `J₀ + 2ΣJ₂ₖ = 1`) beyond. Both stay within ~1e-14 absolute over the
//! ranges used by the cylindrical seeds.

const SERIES_LIMIT: f64 = 8.0;

/// `J_m(x)` for any integer order.
pub fn bessel_j(m: i32, x: f64) -> f64 {
    if m < 0 {
        let v = bessel_j(-m, x);
        return if m % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = bessel_j(m, -x);
        return if m % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        series(m as u32, x)
    } else {
        miller(m as u32, x)
    }
}

/// `J_m'(x) = (J_{m−1}(x) − J_{m+1}(x)) / 2`.
pub fn bessel_j_prime(m: i32, x: f64) -> f64 {
    0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x))
}

fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let q = -half * half;
    let mut sum = term;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && k as f64 > half {
            break;
        }
        if k > 200 {
            break;
        }
    }
    sum
}

fn miller(m: u32, x: f64) -> f64 {
    let top = (m as f64).max(x);
    let mut n = (top + 30.0 + (50.0 * top).sqrt()) as u32;
    n += n % 2;
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{k+1}
    let mut j_curr = 1e-30; // J_k
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=n).rev() {
        // J_{k-1} = (2k/x) J_k − J_{k+1}
        let j_prev = k as f64 * two_over_x * j_curr - j_next;
        j_next = j_curr;
        j_curr = j_prev;
        if k - 1 == m {
            wanted = j_curr;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * j_curr;
        }
        if j_curr.abs() > 1e250 {
            j_curr *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    // j_curr now holds the unnormalized J_0
    norm += j_curr;
    if m == n {
        // never happens: n exceeds m by construction
        return 0.0;
    }
    wanted / norm
}
