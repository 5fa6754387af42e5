//! Small explicit integrators for linear moment equations.

use crate::numerics::C64;

type State = Vec<C64>;

fn axpy(y: &[C64], h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = y.to_vec();
    for (c, k) in terms {
        let s = h * c;
        for (o, v) in out.iter_mut().zip(k.iter()) {
            *o += v * s;
        }
    }
    out
}

// Dormand–Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Adaptive Dormand–Prince integration of `y' = f(t, y)` from `t0`,
/// returning the state at each of `t_out` (non-decreasing, `≥ t0`).
pub fn dopri5<F>(f: F, t0: f64, y0: &[C64], t_out: &[f64], rtol: f64, atol: f64) -> Vec<State>
where
    F: Fn(f64, &[C64]) -> State,
{
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h: f64 = 1e-3;
    let mut out = Vec::with_capacity(t_out.len());
    let mut k1 = f(t, &y);
    for &target in t_out {
        while t < target {
            let mut step = h.min(target - t);
            loop {
                let last = step >= target - t;
                let k2 = f(t + C2 * step, &axpy(&y, step, &[(A21, &k1)]));
                let k3 = f(t + C3 * step, &axpy(&y, step, &[(A31, &k1), (A32, &k2)]));
                let k4 = f(
                    t + C4 * step,
                    &axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
                );
                let k5 = f(
                    t + C5 * step,
                    &axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
                );
                let k6 = f(
                    t + step,
                    &axpy(
                        &y,
                        step,
                        &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                    ),
                );
                let y5 = axpy(
                    &y,
                    step,
                    &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
                );
                let k7 = f(t + step, &y5);
                let err_vec = axpy(
                    &vec![C64::new(0.0, 0.0); y.len()],
                    step,
                    &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
                );
                let err = err_vec
                    .iter()
                    .zip(y.iter().zip(&y5))
                    .map(|(e, (a, b))| {
                        let sc = atol + rtol * a.norm().max(b.norm());
                        (e.norm() / sc).powi(2)
                    })
                    .sum::<f64>()
                    .sqrt()
                    / (y.len().max(1) as f64).sqrt();
                if err <= 1.0 || step < 1e-14 {
                    t = if last { target } else { t + step };
                    y = y5;
                    k1 = k7;
                    let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    if !last || fac < 1.0 {
                        h = step * fac;
                    }
                    break;
                }
                step *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                h = step;
            }
            if !y.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                break;
            }
        }
        out.push(y.clone());
    }
    out
}
