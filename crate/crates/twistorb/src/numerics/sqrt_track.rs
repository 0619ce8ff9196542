//! Analytic square roots of nonvanishing complex-valued functions along a
//! homotopy segment.
//!
//! Given f analytic with f(s) ≠ 0 on [0,1] and a chosen square root at
//! s = 0, the tracked root follows the continuous branch: at each step the
//! principal root of f(s) is flipped, if necessary, to stay close to the
//! previous value; steps whose phase jump still exceeds π/2 are bisected.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Continuously tracked square root of `f` along s ∈ [0,1].
///
/// `root_at_zero` must square to `f(0.0)`. `initial_steps` subdivides the
/// segment; bisection refines adaptively. `zero_eps` guards against the
/// tracked function vanishing (relative to its value at 0).
pub fn track_sqrt(
    f: &dyn Fn(f64) -> Complex64,
    root_at_zero: Complex64,
    initial_steps: usize,
    zero_eps: f64,
) -> Result<Complex64> {
    let f0 = f(0.0);
    let scale = f0.norm().max(1e-300);
    let check = root_at_zero * root_at_zero - f0;
    if check.norm() > 1e-8 * scale.max(1.0) {
        return Err(Error::BranchFailure(format!(
            "seed root does not square to f(0): residual {:.3e}",
            check.norm()
        )));
    }

    let mut s = 0.0_f64;
    let mut root = root_at_zero;
    let mut h = 1.0 / initial_steps as f64;
    let min_h = 1e-8;
    let mut steps_taken = 0usize;

    while s < 1.0 - 1e-15 {
        let s_next = (s + h).min(1.0);
        let val = f(s_next);
        if val.norm() < zero_eps * scale {
            return Err(Error::BranchFailure(format!(
                "tracked function vanished at s = {s_next:.6}"
            )));
        }
        let principal = val.sqrt();
        let cand = if (principal - root).norm() <= (-principal - root).norm() {
            principal
        } else {
            -principal
        };
        // phase jump relative to the previous root
        let ratio = cand / root;
        if ratio.arg().abs() > std::f64::consts::FRAC_PI_2 && h > min_h {
            h *= 0.5;
            continue;
        }
        root = cand;
        s = s_next;
        steps_taken += 1;
        if steps_taken > 2_000_000 {
            return Err(Error::BranchFailure("step budget exhausted".into()));
        }
        // gently re-expand after successful steps
        h = (h * 1.5).min(1.0 / initial_steps as f64);
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_through_full_winding() {
        // f(s) = e^{2πi s·2}: square root must wind once, ending at e^{2πi} = 1
        // after passing through -1 at s = 1/2.
        let f = |s: f64| Complex64::from_polar(1.0, 4.0 * std::f64::consts::PI * s);
        let r = track_sqrt(&f, Complex64::new(1.0, 0.0), 64, 1e-12).unwrap();
        assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        // halfway: e^{2πi s} at s=1/2 is -1, principal sqrt would give +i or -i;
        // continuity forces a consistent signed value, checked by the winding above.
    }

    #[test]
    fn rejects_bad_seed() {
        let f = |_: f64| Complex64::new(4.0, 0.0);
        assert!(track_sqrt(&f, Complex64::new(1.0, 0.0), 8, 1e-12).is_err());
    }

    #[test]
    fn result_squares_to_target() {
        let f = |s: f64| Complex64::new(1.0 + s, 0.5 * s);
        let r = track_sqrt(&f, Complex64::new(1.0, 0.0), 16, 1e-12).unwrap();
        let target = f(1.0);
        assert!((r * r - target).norm() < 1e-10);
    }
}
