use crate::scalar::Real;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function by the Lanczos approximation, with reflection below 1/2.
pub fn gamma<T: Real>(x: T) -> T {
    T::lit(gamma_f64(x.as_f64()))
}

fn gamma_f64(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_f64(1.0 - x));
    }
    let x = x - 1.0;
    let t = x + G + 0.5;
    let mut a = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn<T: Real>(a: T, b: T) -> T {
    gamma(a) * gamma(b) / gamma(a + b)
}
