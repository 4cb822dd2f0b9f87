//! Real special functions: log-gamma, digamma, trigamma, and the regularized
//! incomplete Beta function with its inverse.
//!
//! Everything here is self-contained so results are reproducible bit for bit
//! across platforms. Out-of-domain arguments return [`Error::Domain`].

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// π²/6, the value of ψ⁽¹⁾(1).
pub const PI_SQUARED_OVER_SIX: f64 = PI * PI / 6.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `(-1)^k (ζ(k) - 1) / k` for k = 2..=40: Taylor coefficients of
/// `ln Γ(2 + z) = (1 - γ) z + Σ c_k z^k`, convergent for |z| < 2.
const LG2_COEFFS: [f64; 39] = [
    0.322_467_033_424_113_2,
    -0.067_352_301_053_198_1,
    0.020_580_808_427_784_548,
    -0.007_385_551_028_673_985,
    0.002_890_510_330_741_523,
    -0.001_192_753_911_703_261,
    0.000_509_669_524_743_042_4,
    -0.000_223_154_758_453_579_4,
    9.945_751_278_180_853e-5,
    -4.492_623_673_813_314e-5,
    2.050_721_277_567_069e-5,
    -9.439_488_275_268_396e-6,
    4.374_866_789_907_488e-6,
    -2.039_215_753_801_366e-6,
    9.551_412_130_407_42e-7,
    -4.492_469_198_764_566e-7,
    2.120_718_480_555_466_6e-7,
    -1.004_322_482_396_81e-7,
    4.769_810_169_363_98e-8,
    -2.271_109_460_894_316_5e-8,
    1.083_865_921_489_695_4e-8,
    -5.183_475_041_970_047e-9,
    2.483_674_543_802_478e-9,
    -1.192_140_140_586_091_2e-9,
    5.731_367_241_678_862e-10,
    -2.759_522_885_124_233e-10,
    1.330_476_437_424_449e-10,
    -6.422_964_563_838_1e-11,
    3.104_424_774_732_227e-11,
    -1.502_138_408_075_414_2e-11,
    7.275_974_480_239_08e-12,
    -3.527_742_476_575_915e-12,
    1.711_991_790_559_618e-12,
    -8.315_385_841_420_285e-13,
    4.042_200_525_289_44e-13,
    -1.966_475_631_096_616_5e-13,
    9.573_630_387_838_556e-14,
    -4.664_076_026_428_374e-14,
    2.273_736_960_065_972_3e-14,
];

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, "finite and > 0", x))
    }
}

/// `ln Γ(2 + z)` for |z| <= 0.5.
fn lgamma_near_two(z: f64) -> f64 {
    let tail = LG2_COEFFS.iter().rev().fold(0.0, |acc, &c| acc * z + c);
    z * ((1.0 - EULER_GAMMA) + z * tail)
}

fn lgamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0 + inv2 / 156.0))))));
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// Natural log of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("log_gamma argument", x)?;
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // x + 1 lands in [1, 1.5)
        log_gamma_unchecked(x + 1.0) - x.ln()
    } else if x < 1.5 {
        let z = x - 1.0;
        lgamma_near_two(z) - z.ln_1p()
    } else if x <= 2.5 {
        lgamma_near_two(x - 2.0)
    } else if x < 10.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        prod.ln() + lgamma_near_two(y - 2.0)
    } else {
        lgamma_stirling(x)
    }
}

/// ψ⁽⁰⁾(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma argument", x)?;
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    acc + x.ln() - 0.5 / x - series
}

/// ψ⁽¹⁾(x) = d²/dx² ln Γ(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma argument", x)?;
    Ok(trigamma_unchecked(x))
}

pub(crate) fn trigamma_unchecked(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Σ B_{2j} / x^{2j+1}
    let series = inv
        * inv2
        * (1.0 / 6.0
            - inv2
                * (1.0 / 30.0
                    - inv2
                        * (1.0 / 42.0
                            - inv2
                                * (1.0 / 30.0
                                    - inv2 * (5.0 / 66.0 - inv2 * (691.0 / 2730.0 - inv2 * 7.0 / 6.0))))));
    acc + inv + 0.5 * inv2 + series
}

/// Shape parameters of a Beta distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    a: f64,
    b: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_positive("Beta shape a", a)?;
        check_positive("Beta shape b", b)?;
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn variance(&self) -> f64 {
        let s = self.a + self.b;
        self.a * self.b / (s * s * (s + 1.0))
    }

    fn ln_beta(&self) -> f64 {
        log_gamma_unchecked(self.a) + log_gamma_unchecked(self.b) - log_gamma_unchecked(self.a + self.b)
    }

    /// Density at `x`; `+inf` at an endpoint where the density diverges.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_unit("Beta density argument", x)?;
        Ok(self.pdf_unchecked(x))
    }

    fn pdf_unchecked(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        if x == 0.0 || x == 1.0 {
            let (edge, other) = if x == 0.0 { (a, b) } else { (b, a) };
            return if edge < 1.0 {
                f64::INFINITY
            } else if edge > 1.0 {
                0.0
            } else {
                // Beta(1, c) at its boundary: c
                other
            };
        }
        ((a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - self.ln_beta()).exp()
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        reg_inc_beta(*self, x)
    }

    pub fn quantile(&self, prob: f64) -> Result<f64> {
        inv_reg_inc_beta(*self, prob)
    }
}

fn check_unit(what: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::domain(what, "in [0, 1]", x))
    }
}

/// Continued fraction for I_x(a, b) (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    const MAX_ITER: usize = 50_000;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::Numeric(format!(
        "incomplete Beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )))
}

/// Regularized incomplete Beta function I_x(a, b) = Pr(X <= x), X ~ Beta(a, b).
pub fn reg_inc_beta(p: BetaParams, x: f64) -> Result<f64> {
    check_unit("incomplete Beta argument", x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let (a, b) = (p.a, p.b);
    let ln_front = a * x.ln() + b * (-x).ln_1p() - p.ln_beta();
    let front = ln_front.exp();
    let value = if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x)? / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x)? / b
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Inverse of [`reg_inc_beta`] in `x`: bisection to isolate the root, then
/// Newton steps kept inside the bracket.
pub fn inv_reg_inc_beta(p: BetaParams, prob: f64) -> Result<f64> {
    check_unit("incomplete Beta probability", prob)?;
    if prob == 0.0 {
        return Ok(0.0);
    }
    if prob == 1.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..12 {
        let x = 0.5 * (lo + hi);
        if reg_inc_beta(p, x)? < prob {
            lo = x;
        } else {
            hi = x;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = reg_inc_beta(p, x)? - prob;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let density = p.pdf_unchecked(x);
        let newton = x - f / density;
        let next = if density.is_finite() && density > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-16 * x.max(1e-300) || hi - lo <= f64::EPSILON * hi {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}
