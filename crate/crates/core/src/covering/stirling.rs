use crate::error::{invalid, Result};

/// Largest `r` accepted by [`stirling2`].
pub const STIRLING_MAX_R: u32 = 20;

/// Stirling number of the second kind via the inclusion-exclusion closed
/// form `S(r, k) = (1/k!) Σ_j (-1)^(k-j) C(k, j) j^r`, for `0 <= k <= r <= 20`.
pub fn stirling2(r: u32, k: u32) -> Result<u64> {
    if k > r || r > STIRLING_MAX_R {
        return Err(invalid(format!("stirling2({r}, {k}) needs 0 <= k <= r <= {STIRLING_MAX_R}")));
    }
    let mut binom: i128 = 1;
    let mut sum: i128 = 0;
    for j in 0..=k as i128 {
        if j > 0 {
            binom = binom * (k as i128 - j + 1) / j;
        }
        let term = binom * j.pow(r);
        if (k as i128 - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let factorial: i128 = (1..=k as i128).product();
    debug_assert_eq!(sum % factorial, 0);
    Ok((sum / factorial) as u64)
}

/// Bell number `B_r = Σ_k S(r, k)`.
pub fn bell(r: u32) -> Result<u64> {
    (0..=r).map(|k| stirling2(r, k)).sum()
}
