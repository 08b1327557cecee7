//! 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK `qk15` tables).

/// Kronrod abscissae, outermost first; the last entry is the centre.
pub(crate) const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

pub(crate) const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_83,
];

/// Gauss weights for `XGK[1]`, `XGK[3]`, `XGK[5]` and the centre.
pub(crate) const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_67,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_39,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Integral of |f|, used for the roundoff floor.
    pub abs_value: f64,
}

pub(crate) fn apply<F, E>(f: &F, a: f64, b: f64) -> Result<Estimate, (f64, E)>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| f(x).map_err(|e| (x, e));

    let fc = eval(centre)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_value = WGK[7] * fc.abs();
    for (j, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let dx = half * x;
        let (lo, hi) = (eval(centre - dx)?, eval(centre + dx)?);
        kronrod += w * (lo + hi);
        abs_value += w * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    Ok(Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_value * half.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kronrod_exact_to_degree_22() {
        for k in [0u32, 5, 13, 22] {
            let f = |x: f64| Ok::<_, ()>(x.powi(k as i32));
            let est = apply(&f, 0.0, 1.0).unwrap();
            let exact = 1.0 / (k + 1) as f64;
            assert!((est.value - exact).abs() < 1e-15, "degree {k}");
        }
        // the Gauss rule is only exact to degree 13
        let f = |x: f64| Ok::<_, ()>(x.powi(14));
        assert!(apply(&f, 0.0, 1.0).unwrap().error > 1e-12);
    }
}
