use rand::Rng;

use super::zeta::zeta_scaled;
use crate::error::{Error, Result};

const TABLE_LEN: u64 = 1000;
/// Draws are truncated here; only reachable for exponents very close to 1.
const MAX_DRAW: u64 = 1 << 50;

/// Discrete power law `P(X = x) ∝ x^-alpha` on `x >= xmin`, sampled by
/// inverse CDF.
#[derive(Debug, Clone)]
pub struct DiscretePowerLaw {
    alpha: f64,
    xmin: u64,
    zmin: f64,
    /// `ccdf[i] = P(X >= xmin + i)`
    ccdf: Vec<f64>,
}

impl DiscretePowerLaw {
    pub fn new(alpha: f64, xmin: u64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) || xmin == 0 {
            return Err(Error::InvalidArgument(format!(
                "power law needs alpha > 1 and xmin >= 1, got {alpha} and {xmin}"
            )));
        }
        let base = xmin as f64;
        let zmin = zeta_scaled(alpha, base, base);
        let mut ccdf = Vec::with_capacity(TABLE_LEN as usize + 1);
        let mut c = 1.0f64;
        for i in 0..=TABLE_LEN {
            ccdf.push(c);
            let x = (xmin + i) as f64;
            c = (c - (-alpha * (x / base).ln()).exp() / zmin).max(0.0);
        }
        Ok(Self {
            alpha,
            xmin,
            zmin,
            ccdf,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn xmin(&self) -> u64 {
        self.xmin
    }

    pub fn pmf(&self, x: u64) -> f64 {
        if x < self.xmin {
            return 0.0;
        }
        (-self.alpha * (x as f64 / self.xmin as f64).ln()).exp() / self.zmin
    }

    /// `P(X >= x)`
    pub fn ccdf(&self, x: u64) -> f64 {
        if x <= self.xmin {
            return 1.0;
        }
        match self.ccdf.get((x - self.xmin) as usize) {
            Some(&c) => c,
            None => zeta_scaled(self.alpha, x as f64, self.xmin as f64) / self.zmin,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = 1.0 - rng.random::<f64>();
        let i = self.ccdf.partition_point(|&c| c >= u);
        if i < self.ccdf.len() {
            return self.xmin + i as u64 - 1;
        }
        // beyond the table: largest x with ccdf(x) >= u
        let mut lo = self.xmin + TABLE_LEN;
        let mut hi = lo.saturating_mul(2).min(MAX_DRAW);
        while self.ccdf(hi) >= u {
            if hi == MAX_DRAW {
                return MAX_DRAW;
            }
            lo = hi;
            hi = hi.saturating_mul(2).min(MAX_DRAW);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.ccdf(mid) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}
