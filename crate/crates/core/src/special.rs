//! Log-gamma.
//!
//! Lanczos approximation with g = 7 and nine coefficients, evaluated in log
//! space. Around the two zeros of `ln Γ` (x = 1 and x = 2) the Lanczos sum only
//! has absolute accuracy, so there the Taylor series of `ln Γ(1 + z)` in
//! zeta values is used instead to keep the error relative.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GammaError {
    #[error("log-gamma requires a finite x > 0 (got {0})")]
    Domain(f64),
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

// zeta(k) for k = 2..=30
const ZETA: [f64; 29] = [
    1.644_934_066_848_226_4,
    1.202_056_903_159_594_3,
    1.082_323_233_711_138_2,
    1.036_927_755_143_370_0,
    1.017_343_061_984_449_1,
    1.008_349_277_381_922_8,
    1.004_077_356_197_944_3,
    1.002_008_392_826_082_2,
    1.000_994_575_127_818_1,
    1.000_494_188_604_119_5,
    1.000_246_086_553_308_0,
    1.000_122_713_347_578_5,
    1.000_061_248_135_058_7,
    1.000_030_588_236_307_0,
    1.000_015_282_259_408_7,
    1.000_007_637_197_637_9,
    1.000_003_817_293_265_0,
    1.000_001_908_212_716_6,
    1.000_000_953_962_033_9,
    1.000_000_476_932_986_8,
    1.000_000_238_450_502_7,
    1.000_000_119_219_925_97,
    1.000_000_059_608_189_05,
    1.000_000_029_803_503_51,
    1.000_000_014_901_554_83,
    1.000_000_007_450_711_79,
    1.000_000_003_725_334_02,
    1.000_000_001_862_659_72,
    1.000_000_000_931_327_43,
];

const SERIES_RADIUS: f64 = 0.25;

/// Natural log of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64, GammaError> {
    if !(x.is_finite() && x > 0.0) {
        return Err(GammaError::Domain(x));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    let z1 = x - 1.0;
    if z1.abs() <= SERIES_RADIUS {
        return ln_gamma_1p(z1);
    }
    let z2 = x - 2.0;
    if z2.abs() <= SERIES_RADIUS {
        return ln_gamma_1p(z2) + z2.ln_1p();
    }
    lanczos(x)
}

/// `ln Γ(1 + z)` for small `|z|`.
fn ln_gamma_1p(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zk = z;
    for (i, zeta) in ZETA.iter().enumerate() {
        zk *= z;
        let k = (i + 2) as f64;
        let term = zeta * zk / k;
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum - EULER_GAMMA * z
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}
