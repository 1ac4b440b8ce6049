//! Special functions used by the asymptotic pipeline: the complex
//! dilogarithm, the quantum dilogarithm, and the Jacobi theta function with
//! its Poisson-transformed twin.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Errors shared by the numerical special-function and asymptotics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymError {
    /// The dilogarithm was evaluated on its branch cut `[1, inf)`.
    #[error("dilogarithm argument {0} lies on the branch cut [1, inf)")]
    BranchCut(f64),
    /// A series was evaluated outside its region of convergence.
    #[error("input outside the convergence region: {0}")]
    DivergentInput(String),
    /// A convergent sum failed to settle within its term budget.
    #[error("convergence budget exceeded: {detail}")]
    ConvergenceBudgetExceeded { detail: String },
    /// Node doubling stopped improving before reaching the tolerance.
    #[error("quadrature not converged: relative change {rel_change:e} at {nodes} nodes")]
    QuadratureNotConverged { rel_change: f64, nodes: usize },
}

/// Bernoulli numbers `B_0..B_30` (odd indices beyond 1 are zero).
const BERNOULLI: [f64; 31] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0,
];

/// Direct defining series, reliable for `|z| <= 1/2`.
fn dilog_direct(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zp = Complex64::new(1.0, 0.0);
    for m in 1..=90u32 {
        zp *= z;
        let term = zp / (m as f64 * m as f64);
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum
}

/// Expansion in `u = -log(1 - z)`, convergent for `|u| < 2*pi`; used on the
/// annulus where neither the direct series nor the reflection applies.
fn dilog_bernoulli(z: Complex64) -> Complex64 {
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    debug_assert!(u.norm() < 2.0 * PI);
    let mut sum = Complex64::new(0.0, 0.0);
    // term_n = B_n * u^(n+1) / (n+1)!
    let mut upow = u;
    let mut fact = 1.0f64;
    for (n, &b) in BERNOULLI.iter().enumerate() {
        fact *= (n + 1) as f64;
        if b != 0.0 {
            sum += b * upow / fact;
        }
        upow *= u;
    }
    sum
}

fn dilog_inner(z: Complex64) -> Complex64 {
    let pi2_6 = PI * PI / 6.0;
    if z.norm() <= 0.5 {
        return dilog_direct(z);
    }
    if z.norm() > 1.0 {
        // inversion: Li2(z) = -pi^2/6 - log(-z)^2/2 - Li2(1/z)
        let l = (-z).ln();
        return -pi2_6 - 0.5 * l * l - dilog_inner(1.0 / z);
    }
    let w = Complex64::new(1.0, 0.0) - z;
    if w.norm() <= 0.5 {
        if w.norm() == 0.0 {
            return Complex64::new(pi2_6, 0.0);
        }
        // reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return pi2_6 - z.ln() * w.ln() - dilog_direct(w);
    }
    dilog_bernoulli(z)
}

/// Complex dilogarithm `sum_(n>=1) z^n / n^2`, analytically continued with
/// branch cut `[1, inf)`. Accurate to close to machine precision.
pub fn dilog(z: Complex64) -> Result<Complex64, AsymError> {
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(AsymError::BranchCut(z.re));
    }
    Ok(dilog_inner(z))
}

/// Quantum dilogarithm `sum_(m>=1) x^m / (m (1 - q^m))`, which equals
/// `-log (x; q)_inf` for `|x| < 1`, `0 < q < 1`.
pub fn quantum_dilog(x: Complex64, q: f64) -> Result<Complex64, AsymError> {
    if x.norm() >= 1.0 {
        return Err(AsymError::DivergentInput(format!(
            "|x| = {} must be < 1",
            x.norm()
        )));
    }
    if !(0.0 < q && q < 1.0) {
        return Err(AsymError::DivergentInput(format!(
            "q = {q} must lie in (0, 1)"
        )));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xp = Complex64::new(1.0, 0.0);
    let mut qp = 1.0f64;
    let budget = 200_000usize;
    for m in 1..=budget {
        xp *= x;
        qp *= q;
        let term = xp / (m as f64 * (1.0 - qp));
        sum += term;
        // geometric tail bound: remaining terms < |term| * |x| / (1 - |x|)
        if term.norm() * x.norm() / (1.0 - x.norm()) < 1e-18 * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(AsymError::ConvergenceBudgetExceeded {
        detail: format!("quantum dilogarithm at |x| = {} after {budget} terms", x.norm()),
    })
}

/// Jacobi theta function `sum_(n in Z) q^(n^2) x^n` for `0 < q < 1`, `x != 0`.
pub fn theta(q: f64, x: Complex64) -> Result<Complex64, AsymError> {
    if !(0.0 < q && q < 1.0) {
        return Err(AsymError::DivergentInput(format!(
            "q = {q} must lie in (0, 1)"
        )));
    }
    if x.norm() == 0.0 {
        return Err(AsymError::DivergentInput(
            "x = 0 has no Laurent value".to_string(),
        ));
    }
    let xinv = 1.0 / x;
    let mut sum = Complex64::new(1.0, 0.0);
    let (mut xp, mut xn) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    for n in 1..=1000u32 {
        xp *= x;
        xn *= xinv;
        let qn2 = (-(n as f64) * (n as f64) * (-q.ln())).exp();
        let term = qn2 * (xp + xn);
        sum += term;
        if term.norm() < 1e-19 * (1.0 + sum.norm()) && qn2 * qn2 < 1e-19 {
            return Ok(sum);
        }
    }
    Err(AsymError::ConvergenceBudgetExceeded {
        detail: format!("theta at q = {q}"),
    })
}

/// Poisson-transformed evaluation of
/// `theta(e^(-k(k+1) eps / 2); e^(2 pi i u))`:
/// `sqrt(2 pi / (eps k(k+1))) * sum_(n in Z) e^(-2 pi^2 (n+u)^2 / (eps k(k+1)))`.
pub fn theta_poisson(k: u32, eps: f64, u: Complex64) -> Result<Complex64, AsymError> {
    assert!(k >= 1);
    if eps <= 0.0 {
        return Err(AsymError::DivergentInput(format!(
            "eps = {eps} must be positive"
        )));
    }
    let a = eps * (k as f64) * (k as f64 + 1.0);
    let pref = (2.0 * PI / a).sqrt();
    let gauss = |t: Complex64| (-2.0 * PI * PI * t * t / a).exp();
    let mut sum = gauss(u);
    for n in 1..=1000i32 {
        let term = gauss(u + n as f64) + gauss(u - n as f64);
        sum += term;
        // the n-th pair is dominated by e^(-2 pi^2 (n - |u|)^2 / a)
        let bound = (-2.0 * PI * PI * (n as f64 - u.norm()).powi(2) / a).exp();
        if n as f64 > u.norm() + 1.0 && bound < 1e-19 * (1.0 + sum.norm()) {
            return Ok(pref * sum);
        }
    }
    Err(AsymError::ConvergenceBudgetExceeded {
        detail: format!("theta_poisson at eps = {eps}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const PI2_6: f64 = PI * PI / 6.0;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dilog_special_values() {
        assert_eq!(dilog(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let half = dilog(c(0.5, 0.0)).unwrap();
        let expect = PI * PI / 12.0 - 0.5 * 2.0f64.ln().powi(2);
        assert!((half.re - expect).abs() < 1e-15 && half.im.abs() < 1e-15);
        assert!((expect - 0.5822405265).abs() < 1e-9);
        let neg1 = dilog(c(-1.0, 0.0)).unwrap();
        assert!((neg1.re + PI * PI / 12.0).abs() < 1e-15);
        assert!(matches!(dilog(c(1.5, 0.0)), Err(AsymError::BranchCut(_))));
        assert!(matches!(dilog(c(1.0, 0.0)), Err(AsymError::BranchCut(_))));
    }

    #[test]
    fn dilog_agrees_with_long_direct_series_everywhere_it_converges() {
        // brute-force oracle: the defining series summed far past machine
        // precision, valid for |z| < 1
        let brute = |z: Complex64| {
            let mut sum = c(0.0, 0.0);
            let mut zp = c(1.0, 0.0);
            for m in 1..=4000u32 {
                zp *= z;
                sum += zp / (m as f64 * m as f64);
            }
            sum
        };
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..60 {
            let r = 0.95 * rng.gen::<f64>();
            let t = 2.0 * PI * rng.gen::<f64>();
            let z = c(r * t.cos(), r * t.sin());
            if z.im == 0.0 && z.re >= 1.0 {
                continue;
            }
            let got = dilog(z).unwrap();
            assert!((got - brute(z)).norm() < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn dilog_reflection_identity_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let mut tested = 0;
        while tested < 100 {
            let z = c(4.0 * rng.gen::<f64>() - 2.0, 4.0 * rng.gen::<f64>() - 2.0);
            // keep clear of both branch cuts (z real >= 1, or z real <= 0)
            if z.im.abs() < 1e-3 || z.norm() < 0.05 || (c(1.0, 0.0) - z).norm() < 0.05 {
                continue;
            }
            let lhs = dilog(z).unwrap() + dilog(c(1.0, 0.0) - z).unwrap();
            let rhs = PI2_6 - z.ln() * (c(1.0, 0.0) - z).ln();
            assert!((lhs - rhs).norm() < 1e-12, "z = {z}, diff = {}", (lhs - rhs).norm());
            tested += 1;
        }
    }

    #[test]
    fn quantum_dilog_duality_with_truncated_product() {
        for &(xr, xi, q) in &[
            (0.3, 0.0, 0.5),
            (-0.7, 0.0, 0.8),
            (0.2, 0.4, 0.6),
            (0.5, 0.0, 0.1),
        ] {
            let x = c(xr, xi);
            let mut product = c(1.0, 0.0);
            let mut qp = 1.0;
            for _ in 0..2000 {
                product *= c(1.0, 0.0) - x * qp;
                qp *= q;
            }
            let via_sum = (-quantum_dilog(x, q).unwrap()).exp();
            assert!(
                (via_sum - product).norm() < 1e-12 * product.norm(),
                "x = {x}, q = {q}"
            );
        }
        assert_eq!(quantum_dilog(c(0.0, 0.0), 0.5).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn quantum_dilog_rejects_divergent_input() {
        assert!(matches!(
            quantum_dilog(c(1.0, 0.0), 0.5),
            Err(AsymError::DivergentInput(_))
        ));
        assert!(matches!(
            quantum_dilog(c(0.5, 0.0), 1.0),
            Err(AsymError::DivergentInput(_))
        ));
    }

    #[test]
    fn theta_matches_poisson_form_on_a_grid() {
        let cheight = 2.0f64.ln() / (2.0 * PI);
        for &k in &[1u32, 2] {
            for &eps in &[0.2, 0.5, 1.0] {
                for &ur in &[0.0, 0.1, -0.35] {
                    let u = c(ur, cheight);
                    let q = (-(k as f64) * (k as f64 + 1.0) * eps / 2.0).exp();
                    let x = (c(0.0, 2.0 * PI) * u).exp();
                    let direct = theta(q, x).unwrap();
                    let poisson = theta_poisson(k, eps, u).unwrap();
                    assert!(
                        (direct - poisson).norm() < 1e-10 * direct.norm(),
                        "k={k} eps={eps} u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn theta_symmetry_and_x_equals_one() {
        let q: f64 = 0.3;
        let mut direct = 1.0;
        for n in 1..40u32 {
            direct += 2.0 * q.powi((n * n) as i32);
        }
        let at_one = theta(q, c(1.0, 0.0)).unwrap();
        assert!((at_one.re - direct).abs() < 1e-14 && at_one.im.abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let t = 2.0 * PI * rng.gen::<f64>();
            let x = c(t.cos(), t.sin());
            let a = theta(q, x).unwrap();
            let b = theta(q, 1.0 / x).unwrap();
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn theta_rejects_bad_parameters() {
        assert!(theta(1.0, c(0.5, 0.0)).is_err());
        assert!(theta(0.5, c(0.0, 0.0)).is_err());
        assert!(theta_poisson(1, 0.0, c(0.0, 0.0)).is_err());
    }
}
