//! Small numeric helpers shared by the analytic layers.

use crate::error::{ModelError, Result};

/// Probability mass function of `Binomial(trials, p)` as a vector indexed by
/// the number of successes. Evaluated in log space so large `trials` with
/// extreme `p` neither overflow nor underflow prematurely.
pub fn binomial_pmf(trials: u32, p: f64) -> Vec<f64> {
    let m = trials as usize;
    let mut pmf = vec![0.0; m + 1];
    if p <= 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p >= 1.0 {
        pmf[m] = 1.0;
        return pmf;
    }
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let mut ln_choose = 0.0f64;
    for (i, slot) in pmf.iter_mut().enumerate() {
        if i > 0 {
            ln_choose += ((m - i + 1) as f64).ln() - (i as f64).ln();
        }
        *slot = (ln_choose + i as f64 * ln_p + (m - i) as f64 * ln_q).exp();
    }
    pmf
}

/// Solves `(1 - beta)^players = non_bid` for the per-player probability,
/// i.e. `beta = 1 - non_bid^(1/players)`, through `expm1`/`ln` so that tiny
/// exponents keep full precision. The raw value is returned unclamped; a
/// `non_bid` above one yields a negative probability.
pub fn per_player_beta(non_bid: f64, players: f64) -> f64 {
    if non_bid <= 0.0 {
        return 1.0;
    }
    -(non_bid.ln() / players).exp_m1()
}

/// Clamps a raw probability into `[0, 1]`, reporting whether clamping was
/// needed.
pub fn clamp_probability(raw: f64) -> (f64, bool) {
    if raw < 0.0 {
        (0.0, true)
    } else if raw > 1.0 {
        (1.0, true)
    } else {
        (raw, false)
    }
}

/// Bisection on a continuous function with a sign change on `[lo, hi]`.
///
/// Iterates until the bracket can no longer be halved in floating point (or
/// `max_iter` is hit) and returns the endpoint with the smaller residual.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(ModelError::NoRoot(format!(
            "f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign"
        )));
    }
    let mut best = if f_lo.abs() < f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.abs() < best.1.abs() {
            best = (mid, f_mid);
        }
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_sums_to_one_and_matches_small_case() {
        let pmf = binomial_pmf(3, 0.5);
        assert_eq!(pmf.len(), 4);
        for (got, want) in pmf.iter().zip([0.125, 0.375, 0.375, 0.125]) {
            assert!((got - want).abs() < 1e-15);
        }
        for &(m, p) in &[(49u32, 0.088), (200, 0.999), (0, 0.3), (7, 1.0), (7, 0.0)] {
            let s: f64 = binomial_pmf(m, p).iter().sum();
            assert!((s - 1.0).abs() < 1e-12, "m={m} p={p} sum={s}");
        }
    }

    #[test]
    fn beta_inverts_power() {
        let b = per_player_beta(0.01, 50.0);
        assert!(((1.0 - b).powi(50) - 0.01).abs() < 1e-14);
        assert_eq!(per_player_beta(1.0, 10.0), 0.0);
        assert!(per_player_beta(2.0, 10.0) < 0.0);
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 200).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 10).is_err());
    }
}
