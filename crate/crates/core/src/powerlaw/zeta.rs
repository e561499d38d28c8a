// B_2k / (2k)! for k = 1..=7
const BERNOULLI_OVER_FACTORIAL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
];

/// Hurwitz zeta `sum_{k>=0} (a + k)^-s` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    zeta_scaled(s, a, 1.0)
}

/// `base^s * hurwitz_zeta(s, a)`, i.e. `sum_{k>=0} ((a + k) / base)^-s`.
///
/// Working relative to `base` keeps tail ratios representable when `s` is
/// large. Small arguments are summed directly until `x >= max(10, s)`, the
/// rest is an Euler-Maclaurin expansion accurate to about 1e-12.
pub(crate) fn zeta_scaled(s: f64, a: f64, base: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0 && base > 0.0);
    let lb = base.ln();
    let term = |x: f64| (-s * (x.ln() - lb)).exp();
    let threshold = s.max(10.0);
    let mut x = a;
    let mut sum = 0.0;
    while x < threshold {
        sum += term(x);
        x += 1.0;
    }
    let t = term(x);
    let mut tail = x / (s - 1.0) + 0.5;
    let mut poch = s;
    let mut xp = 1.0 / x;
    for (j, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += c * poch * xp;
        let k = 2.0 * j as f64;
        poch *= (s + k + 1.0) * (s + k + 2.0);
        xp /= x * x;
    }
    sum + t * tail
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(s: f64, a: f64) -> f64 {
        // direct sum plus integral bound for the remainder
        let n = 2_000_000u64;
        let mut sum = 0.0;
        for k in (0..n).rev() {
            sum += (a + k as f64).powf(-s);
        }
        let x = a + n as f64;
        sum + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s)
    }

    #[test]
    fn riemann_values() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((hurwitz_zeta(2.0, 1.0) - pi2 / 6.0).abs() < 1e-12);
        assert!((hurwitz_zeta(4.0, 1.0) - pi2 * pi2 / 90.0).abs() < 1e-12);
        assert!((hurwitz_zeta(3.0, 1.0) - 1.202_056_903_159_594).abs() < 1e-12);
    }

    #[test]
    fn matches_direct_summation() {
        for &(s, a) in &[(2.5, 5.0), (1.5, 1.0), (3.7, 2.0), (2.1, 40.0), (12.0, 3.0)] {
            let z = hurwitz_zeta(s, a);
            let b = brute(s, a);
            assert!(((z - b) / b).abs() < 1e-10, "s={s} a={a}: {z} vs {b}");
        }
    }

    #[test]
    fn scaled_form_survives_huge_exponent() {
        let z = zeta_scaled(2000.0, 1000.0, 1000.0);
        assert!(z.is_finite() && z > 1.0);
        // first term is exactly one, the next is (1001/1000)^-2000
        let second = (1001.0f64 / 1000.0).powf(-2000.0);
        assert!(z > 1.0 + second);
    }

    #[test]
    fn recurrence() {
        let (s, a) = (2.3, 7.0);
        let d = hurwitz_zeta(s, a) - hurwitz_zeta(s, a + 1.0);
        assert!((d - a.powf(-s)).abs() < 1e-14);
    }
}
