//! Adaptive Gauss–Kronrod (7, 15) quadrature of matrix-valued integrands.

use crate::error::Result;
use crate::numerics::{frobenius, ComplexMatrix, C64};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_DEPTH: usize = 40;

pub struct Integral {
    pub value: ComplexMatrix,
    /// Summed `|K15 − G7|` estimate over the accepted panels.
    pub error: f64,
}

/// `∫_a^b f(s) ds` to `max(abs_tol, rel_tol · ‖∫‖)`.
pub fn integrate<F>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let (value, error) = panel(f, a, b, rel_tol, abs_tol, 0)?;
    Ok(Integral { value, error })
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(ComplexMatrix, ComplexMatrix)>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = &fc * C64::new(WGK[7], 0.0);
    let mut g = &fc * C64::new(WG[3], 0.0);
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x)? + f(c + x)?;
        k += &s * C64::new(WGK[i], 0.0);
        if i % 2 == 1 {
            g += &s * C64::new(WG[i / 2], 0.0);
        }
    }
    Ok((k * C64::new(h, 0.0), g * C64::new(h, 0.0)))
}

fn panel<F>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    depth: usize,
) -> Result<(ComplexMatrix, f64)>
where
    F: Fn(f64) -> Result<ComplexMatrix>,
{
    let (k, g) = gk15(f, a, b)?;
    let err = frobenius(&(&k - &g));
    if err <= abs_tol.max(rel_tol * frobenius(&k)) || depth >= MAX_DEPTH {
        return Ok((k, err));
    }
    let m = 0.5 * (a + b);
    let (l, el) = panel(f, a, m, rel_tol, abs_tol / 2.0, depth + 1)?;
    let (r, er) = panel(f, m, b, rel_tol, abs_tol / 2.0, depth + 1)?;
    Ok((l + r, el + er))
}
