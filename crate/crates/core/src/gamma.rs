//! Log-gamma on the complex plane via the Stirling series with a recurrence
//! shift, plus log-space helpers shared with the functional-equation factor.

use crate::error::{Error, Result};
use crate::Complex;
use std::f64::consts::PI;

/// Bernoulli numbers B_2, B_4, …, B_26.
pub const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

const LN_2PI_HALF: f64 = 0.918938533204672741780329736406; // ln(2π)/2
const STIRLING_SHIFT: f64 = 12.0;
const STIRLING_TERMS: usize = 10;

/// Principal-branch log Γ(z).
///
/// Right half-plane values (Re z ≥ 1/2) come from the recurrence-shifted
/// Stirling series and are canonical. Points with Re z < 1/2 are reflected;
/// there the imaginary part is defined modulo 2π (every consumer in this
/// crate exponentiates, so only the real part must be exact). Relative error
/// ≤ 1e−12 for |z| ≥ 1/2.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    if z.im == 0.0 && z.re <= 0.0 && (z.re - z.re.round()).abs() < 1e-12 {
        return Err(Error::Pole {
            re: z.re,
            im: z.im,
            dist: (z.re - z.re.round()).abs(),
        });
    }
    if z.re > 0.0 {
        Ok(log_gamma_right(z))
    } else {
        // Reflection: log Γ(z) = log π − log sin(πz) − log Γ(1−z).
        let w = Complex::new(1.0, 0.0) - z;
        Ok(PI.ln() - log_sin(PI * z) - log_gamma_right(w))
    }
}

/// Stirling evaluation valid for Re z ≥ 1/2 after shifting to Re w ≥ 12.
fn log_gamma_right(z: Complex) -> Complex {
    let mut w = z;
    let mut shift = Complex::new(0.0, 0.0);
    while w.re < STIRLING_SHIFT {
        shift -= w.ln();
        w += 1.0;
    }
    let mut series = Complex::new(0.0, 0.0);
    let w2 = w * w;
    let mut wpow = w; // w^(2k-1)
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate().take(STIRLING_TERMS) {
        let k1 = (2 * k + 1) as f64;
        let k2 = (2 * k + 2) as f64;
        series += b / (k1 * k2) / wpow;
        wpow *= w2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series + shift
}

/// log sin(z) computed without overflow for large |Im z|.
///
/// For |Im z| ≤ 20 the direct principal logarithm is used; otherwise the
/// dominant exponential is factored out. The branch is continuous within
/// each half-plane and conjugate-symmetric; consumers exponentiate.
pub fn log_sin(z: Complex) -> Complex {
    if z.im.abs() <= 20.0 {
        z.sin().ln()
    } else if z.im > 0.0 {
        // sin z = −e^{−iz}(1 − e^{2iz}) / (2i); |e^{2iz}| = e^{−2 Im z} here.
        let i = Complex::new(0.0, 1.0);
        let small = (2.0 * i * z).exp();
        -i * z + (Complex::new(1.0, 0.0) - small).ln()
            - Complex::new(std::f64::consts::LN_2, -PI / 2.0)
    } else {
        log_sin(z.conj()).conj()
    }
}
