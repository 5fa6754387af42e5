//! Matrix exponential by scaling and squaring with diagonal Padé approximants
//! (degrees 3, 5, 7, 9, 13 selected from the 1-norm).

use nalgebra::DMatrix;

use super::{ensure_square, norm1, ComplexMatrix, C64};
use crate::error::{Error, Result};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.539398330063230e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068;
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `exp(a)` for a square complex matrix.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_square(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let norm = norm1(a);
    if !norm.is_finite() {
        return Err(Error::ExpmOverflow { norm });
    }
    let ident = DMatrix::<C64>::identity(n, n);

    for (theta, coeffs) in [
        (THETA_3, &B3[..]),
        (THETA_5, &B5[..]),
        (THETA_7, &B7[..]),
        (THETA_9, &B9[..]),
    ] {
        if norm <= theta {
            let out = pade_low(a, coeffs, &ident)?;
            return check(out, norm);
        }
    }

    let s = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    if s > 1000 {
        return Err(Error::ExpmOverflow { norm });
    }
    let scaled = a / C64::new(2f64.powi(s), 0.0);
    let mut r = pade13(&scaled, &ident)?;
    for _ in 0..s {
        r = &r * &r;
        if r.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::ExpmOverflow { norm });
        }
    }
    check(r, norm)
}

fn check(m: ComplexMatrix, norm: f64) -> Result<ComplexMatrix> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(m)
    } else {
        Err(Error::ExpmOverflow { norm })
    }
}

fn pade_low(a: &ComplexMatrix, b: &[f64], ident: &ComplexMatrix) -> Result<ComplexMatrix> {
    let a2 = a * a;
    let deg = b.len() - 1;
    // even powers A^0, A^2, A^4, ...
    let mut powers = vec![ident.clone(), a2.clone()];
    while 2 * powers.len() <= deg {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u = DMatrix::<C64>::zeros(a.nrows(), a.ncols());
    let mut v = DMatrix::<C64>::zeros(a.nrows(), a.ncols());
    for (k, p) in powers.iter().enumerate() {
        if 2 * k + 1 <= deg {
            u += p * C64::new(b[2 * k + 1], 0.0);
        }
        v += p * C64::new(b[2 * k], 0.0);
    }
    let u = a * u;
    solve_pade(&u, &v)
}

fn pade13(a: &ComplexMatrix, ident: &ComplexMatrix) -> Result<ComplexMatrix> {
    let b = |k: usize| C64::new(B13[k], 0.0);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9));
    let u = a * (u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + ident * b(1));
    let v_inner = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8));
    let v = v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + ident * b(0);
    solve_pade(&u, &v)
}

/// `(V - U)^{-1} (V + U)`
fn solve_pade(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let p = v + u;
    let q = v - u;
    let norm = norm1(u);
    q.lu().solve(&p).ok_or(Error::ExpmOverflow { norm })
}
