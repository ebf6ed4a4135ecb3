//! Bessel functions of the first kind for integer order and real argument.
//!
//! `J_0` and `J_1` use the Cephes rational approximations (a rational fit on
//! `[0, 5]`, the Hankel asymptotic form with rational `P`, `Q` beyond). Higher
//! orders come from forward recurrence when `z >= m` and from the power series
//! otherwise, so the recurrence is only ever run in its stable direction.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// `J_m(z)` for integer `m >= 0` and `z >= 0`.
pub fn bessel_j(m: u32, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("bessel_j requires finite z >= 0, got {z}")));
    }
    Ok(jn(m, z))
}

/// `(J_{m-1}(z), J_m(z), J_{m+1}(z))` with `J_{-1} = -J_1`.
///
/// The derivative is `J_m'(z) = (J_{m-1}(z) - J_{m+1}(z)) / 2`.
pub fn bessel_j_triplet(m: u32, z: f64) -> (f64, f64, f64) {
    if z == 0.0 {
        let at = |k: i64| if k == 0 { 1.0 } else { 0.0 };
        let m = m as i64;
        return (at(m - 1), at(m), at(m + 1));
    }
    let mu = m as usize;
    if (mu + 1) as f64 <= z {
        // recurrence upward from J_0, J_1
        let j0 = j0(z);
        let j1 = j1(z);
        if m == 0 {
            return (-j1, j0, j1);
        }
        let mut prev = j0;
        let mut cur = j1;
        for k in 1..m {
            let next = 2.0 * k as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        let next = 2.0 * m as f64 / z * cur - prev;
        return (prev, cur, next);
    }
    let lower = if m == 0 { -jn(1, z) } else { jn(m - 1, z) };
    (lower, jn(m, z), jn(m + 1, z))
}

pub(crate) fn jn(m: u32, z: f64) -> f64 {
    match m {
        0 => j0(z),
        1 => j1(z),
        _ if z == 0.0 => 0.0,
        _ if z >= m as f64 => {
            let mut prev = j0(z);
            let mut cur = j1(z);
            for k in 1..m {
                let next = 2.0 * k as f64 / z * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        _ => series(m, z),
    }
}

/// Power series `(z/2)^m Σ (-z²/4)^k / (k! (m+k)!)`.
fn series(m: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let q = -half * half;
    let mut term = (1..=m).fold(1.0, |acc, k| acc * half / k as f64);
    let mut sum = term;
    for k in 1..200 {
        term *= q / (k as f64 * (m + k) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn polevl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Horner evaluation with an implicit leading coefficient of one.
fn p1evl(x: f64, coef: &[f64]) -> f64 {
    coef.iter().fold(1.0, |acc, &c| acc * x + c)
}

pub(crate) fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 5.0 {
        let z = x * x;
        if x < 1e-5 {
            return 1.0 - 0.25 * z;
        }
        let p = (z - J0_DR1) * (z - J0_DR2);
        return p * polevl(z, &J0_RP) / p1evl(z, &J0_RQ);
    }
    let w = 5.0 / x;
    let q = 25.0 / (x * x);
    let p = polevl(q, &J0_PP) / polevl(q, &J0_PQ);
    let q = polevl(q, &J0_QP) / p1evl(q, &J0_QQ);
    let xn = x - FRAC_PI_4;
    let (s, c) = xn.sin_cos();
    (p * c - w * q * s) * SQRT_2_OVER_PI / x.sqrt()
}

pub(crate) fn j1(x: f64) -> f64 {
    if x < 0.0 {
        return -j1(-x);
    }
    if x <= 5.0 {
        let z = x * x;
        let w = polevl(z, &J1_RP) / p1evl(z, &J1_RQ);
        return w * x * (z - J1_Z1) * (z - J1_Z2);
    }
    let w = 5.0 / x;
    let z = w * w;
    let p = polevl(z, &J1_PP) / polevl(z, &J1_PQ);
    let q = polevl(z, &J1_QP) / p1evl(z, &J1_QQ);
    let xn = x - 0.75 * PI;
    let (s, c) = xn.sin_cos();
    (p * c - w * q * s) * SQRT_2_OVER_PI / x.sqrt()
}

// squares of the first two zeros of J_0
const J0_DR1: f64 = 5.783_185_962_946_784;
const J0_DR2: f64 = 30.471_262_343_662_087;

const J0_RP: [f64; 4] = [
    -4.794_432_209_782_018e9,
    1.956_174_919_465_565_7e12,
    -2.492_483_443_609_677_2e14,
    9.708_622_510_473_064e15,
];
const J0_RQ: [f64; 8] = [
    4.995_631_471_526_51e2,
    1.737_854_016_763_747e5,
    4.844_096_583_399_621e7,
    1.118_555_370_453_568_3e10,
    2.112_775_201_154_892e12,
    3.105_182_298_574_225_6e14,
    3.181_219_559_432_049_6e16,
    1.710_862_940_810_431_5e18,
];
const J0_PP: [f64; 7] = [
    7.969_367_292_973_471e-4,
    8.283_523_921_074_408e-2,
    1.239_533_716_464_143,
    5.447_250_030_587_687,
    8.747_165_001_998_17,
    5.303_240_382_353_949,
    1.0,
];
const J0_PQ: [f64; 7] = [
    9.244_088_105_588_637e-4,
    8.562_884_743_544_745e-2,
    1.253_527_439_010_589_5,
    5.470_977_403_304_171,
    8.761_908_832_370_695,
    5.306_052_882_353_947,
    1.0,
];
const J0_QP: [f64; 8] = [
    -1.136_638_388_984_691_6e-2,
    -1.282_527_186_705_093_1,
    -1.955_395_442_577_359_7e1,
    -9.320_601_521_237_683e1,
    -1.776_811_679_804_880_6e2,
    -1.470_775_051_549_511_8e2,
    -5.141_053_267_665_993e1,
    -6.050_143_506_007_285,
];
const J0_QQ: [f64; 7] = [
    6.431_782_561_181_78e1,
    8.564_300_259_769_806e2,
    3.882_401_836_054_016_3e3,
    7.240_467_741_956_525e3,
    5.930_727_011_873_169e3,
    2.062_093_316_603_278_3e3,
    2.420_057_402_402_914e2,
];

// squares of the first two zeros of J_1
const J1_Z1: f64 = 1.468_197_064_212_389_3e1;
const J1_Z2: f64 = 4.921_845_632_169_46e1;

const J1_RP: [f64; 4] = [
    -8.999_712_257_055_594e8,
    4.522_282_979_981_940_3e11,
    -7.274_942_452_218_183e13,
    3.682_957_328_638_529e15,
];
const J1_RQ: [f64; 8] = [
    6.208_364_781_180_543e2,
    2.569_872_567_577_488_4e5,
    8.351_467_914_319_493e7,
    2.215_115_954_797_925e10,
    4.749_141_220_799_914e12,
    7.843_696_078_762_359e14,
    8.952_223_361_846_274e16,
    5.322_786_203_326_801e18,
];
const J1_PP: [f64; 7] = [
    7.621_256_162_081_731e-4,
    7.313_970_569_409_176e-2,
    1.127_196_081_296_849_3,
    5.112_079_511_468_076,
    8.424_045_901_417_724,
    5.214_515_986_823_615,
    1.0,
];
const J1_PQ: [f64; 7] = [
    5.713_231_280_725_487e-4,
    6.884_559_087_544_954e-2,
    1.105_142_326_340_617,
    5.073_863_861_286_015,
    8.399_855_543_276_042,
    5.209_828_486_823_619,
    1.0,
];
const J1_QP: [f64; 8] = [
    5.108_625_947_501_766e-2,
    4.982_138_729_512_334,
    7.582_382_841_325_453e1,
    3.667_796_093_601_508e2,
    7.108_563_049_989_261e2,
    5.974_896_124_006_136e2,
    2.116_887_571_005_721_3e2,
    2.520_702_058_580_237_2e1,
];
const J1_QQ: [f64; 7] = [
    7.423_732_770_356_752e1,
    1.056_448_860_382_628_3e3,
    4.986_410_583_376_536e3,
    9.562_318_924_047_562e3,
    7.997_041_604_473_507e3,
    2.826_192_785_176_390_8e3,
    3.360_936_078_106_983e2,
];
