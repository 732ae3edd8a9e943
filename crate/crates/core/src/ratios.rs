//! Checkers for three elementary ratio inequalities used when bounding the
//! Rayleigh quotient of sweep sets.
//!
//! Each checker validates its preconditions first and returns
//! [`Error::Precondition`] when they fail, so a rejected input is never
//! confused with a violated inequality. Fractions with a zero denominator and
//! a non-negative numerator are read as `+∞`; every chain below orders its
//! denominators, so this keeps the chains well defined.

use alloc::format;

use crate::error::{Error, Result};

/// Relative slack for floating-point comparisons.
pub const RELATIVE_TOL: f64 = 1e-12;

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

fn at_least(lhs: f64, rhs: f64) -> bool {
    if lhs >= rhs {
        return true;
    }
    if !lhs.is_finite() || !rhs.is_finite() {
        return false;
    }
    rhs - lhs <= RELATIVE_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{name} must be finite and non-negative, got {v}"
        )))
    }
}

/// `max a_i/b_i ≥ Σa / Σb ≥ min a_i/b_i` for `a_i ≥ 0`, `b_i > 0`.
pub fn mediant_check(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    let (mut sa, mut sb) = (0.0, 0.0);
    for (&ai, &bi) in a.iter().zip(b) {
        nonneg("a_i", ai)?;
        if !(bi > 0.0 && bi.is_finite()) {
            return Err(Error::Precondition(format!(
                "b_i must be positive, got {bi}"
            )));
        }
        let r = ai / bi;
        max = max.max(r);
        min = min.min(r);
        sa += ai;
        sb += bi;
    }
    let mid = sa / sb;
    Ok(at_least(max, mid) && at_least(mid, min))
}

/// Inputs of [`box_ratio_check`]. `big_a`, `big_b` are the constants `A`, `B`;
/// `hi ≥ x_i ≥ lo ≥ 0` bound the sequence `x`.
#[derive(Debug, Clone, Copy)]
pub struct BoxRatioInput<'a> {
    pub big_a: f64,
    pub big_b: f64,
    pub hi: f64,
    pub lo: f64,
    pub c: &'a [f64],
    /// When present, the second chain is checked too; it needs
    /// `A − hi·Σd_i ≥ 0`.
    pub d: Option<&'a [f64]>,
    pub x: &'a [f64],
}

/// ```text
/// A/(B + lo·Σc) ≥ A/(B + Σc_i x_i) ≥ A/(B + hi·Σc)
/// (A − lo·Σd)/(B + lo·Σc) ≥ (A − Σd_i x_i)/(B + Σc_i x_i) ≥ (A − hi·Σd)/(B + hi·Σc)
/// ```
///
/// An empty sequence is vacuously true.
pub fn box_ratio_check(input: &BoxRatioInput<'_>) -> Result<bool> {
    let BoxRatioInput {
        big_a,
        big_b,
        hi,
        lo,
        c,
        d,
        x,
    } = *input;
    nonneg("A", big_a)?;
    nonneg("B", big_b)?;
    nonneg("lo", lo)?;
    if !(hi >= lo && hi.is_finite()) {
        return Err(Error::Precondition(format!(
            "need hi >= lo, got hi = {hi}, lo = {lo}"
        )));
    }
    if c.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: c.len(),
        });
    }
    if let Some(d) = d {
        if d.len() != x.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                found: d.len(),
            });
        }
    }
    if x.is_empty() {
        return Ok(true);
    }
    for (&ci, &xi) in c.iter().zip(x) {
        nonneg("c_i", ci)?;
        if !(xi >= lo && xi <= hi) {
            return Err(Error::Precondition(format!(
                "x_i = {xi} outside [{lo}, {hi}]"
            )));
        }
    }
    let sc: f64 = c.iter().sum();
    let scx: f64 = c.iter().zip(x).map(|(ci, xi)| ci * xi).sum();
    let den = [big_b + lo * sc, big_b + scx, big_b + hi * sc];
    let first = at_least(ratio(big_a, den[0]), ratio(big_a, den[1]))
        && at_least(ratio(big_a, den[1]), ratio(big_a, den[2]));

    let Some(d) = d else { return Ok(first) };
    for &di in d {
        nonneg("d_i", di)?;
    }
    let sd: f64 = d.iter().sum();
    let sdx: f64 = d.iter().zip(x).map(|(di, xi)| di * xi).sum();
    if !(big_a - hi * sd >= 0.0) {
        return Err(Error::Precondition(format!(
            "A - hi * sum(d) = {} < 0",
            big_a - hi * sd
        )));
    }
    let left = ratio(big_a - lo * sd, den[0]);
    let mid = ratio((big_a - sdx).max(0.0), den[1]);
    let right = ratio(big_a - hi * sd, den[2]);
    Ok(first && at_least(left, mid) && at_least(mid, right))
}

/// Inputs of [`weighted_ratio_check`]: `hi ≥ X/Y ≥ lo ≥ 0` and constants `A, B, C, D`.
#[derive(Debug, Clone, Copy)]
pub struct WeightedRatioInput {
    pub x: f64,
    pub y: f64,
    pub hi: f64,
    pub lo: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub big_c: f64,
    pub big_d: f64,
}

/// `(AX + BY)/(CX + DY) ≥ min{(A·hi + B)/(C·hi + D), (A·lo + B)/(C·lo + D)}`.
pub fn weighted_ratio_check(input: &WeightedRatioInput) -> Result<bool> {
    let WeightedRatioInput {
        x,
        y,
        hi,
        lo,
        big_a,
        big_b,
        big_c,
        big_d,
    } = *input;
    for (name, v) in [
        ("X", x),
        ("A", big_a),
        ("B", big_b),
        ("C", big_c),
        ("D", big_d),
        ("lo", lo),
    ] {
        nonneg(name, v)?;
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Precondition(format!("Y must be positive, got {y}")));
    }
    let r = x / y;
    let slack = RELATIVE_TOL * 1f64.max(hi.abs());
    if !(hi.is_finite() && hi >= lo && r >= lo - slack && r <= hi + slack) {
        return Err(Error::Precondition(format!(
            "X/Y = {r} outside [{lo}, {hi}]"
        )));
    }
    let den = big_c * x + big_d * y;
    if !(den > 0.0) {
        return Err(Error::Precondition("CX + DY must be positive".into()));
    }
    let lhs = (big_a * x + big_b * y) / den;
    let at_hi = ratio(big_a * hi + big_b, big_c * hi + big_d);
    let at_lo = ratio(big_a * lo + big_b, big_c * lo + big_d);
    Ok(at_least(lhs, at_hi.min(at_lo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn mediant_examples() {
        assert!(mediant_check(&[1.0, 3.0], &[1.0, 1.0]).unwrap());
        assert!(mediant_check(&[2.0, 5.0, 0.5], &[2.0, 5.0, 0.5]).unwrap());
        assert_eq!(mediant_check(&[], &[]), Err(Error::EmptyInput));
        assert!(matches!(
            mediant_check(&[1.0], &[0.0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            mediant_check(&[-1.0], &[1.0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn box_ratio_boundaries() {
        let c = [1.0, 2.0, 0.5];
        let d = [0.1, 0.2, 0.3];
        for x in [vec![0.5; 3], vec![2.0; 3], vec![0.5, 1.0, 2.0]] {
            let input = BoxRatioInput {
                big_a: 3.0,
                big_b: 1.0,
                hi: 2.0,
                lo: 0.5,
                c: &c,
                d: Some(&d),
                x: &x,
            };
            assert!(box_ratio_check(&input).unwrap());
        }
    }

    #[test]
    fn box_ratio_rejections() {
        let c = [1.0];
        let d = [2.0];
        let base = BoxRatioInput {
            big_a: 1.0,
            big_b: 1.0,
            hi: 1.0,
            lo: 0.0,
            c: &c,
            d: Some(&d),
            x: &[0.5],
        };
        assert!(matches!(
            box_ratio_check(&base),
            Err(Error::Precondition(_))
        ));
        let outside = BoxRatioInput {
            d: None,
            x: &[3.0],
            ..base
        };
        assert!(matches!(
            box_ratio_check(&outside),
            Err(Error::Precondition(_))
        ));
        let empty = BoxRatioInput {
            c: &[],
            d: None,
            x: &[],
            ..base
        };
        assert!(box_ratio_check(&empty).unwrap());
    }

    #[test]
    fn box_ratio_zero_denominators() {
        let input = BoxRatioInput {
            big_a: 0.0,
            big_b: 0.0,
            hi: 1.0,
            lo: 0.0,
            c: &[1.0],
            d: Some(&[0.0]),
            x: &[0.0],
        };
        assert!(box_ratio_check(&input).unwrap());
    }

    #[test]
    fn weighted_ratio_boundaries() {
        let base = WeightedRatioInput {
            x: 1.0,
            y: 2.0,
            hi: 2.0,
            lo: 0.5,
            big_a: 1.0,
            big_b: 3.0,
            big_c: 2.0,
            big_d: 1.0,
        };
        // X/Y at lo: equal to the lo branch.
        let lhs = (1.0 * 1.0 + 3.0 * 2.0) / (2.0 * 1.0 + 1.0 * 2.0);
        let at_lo = (1.0 * 0.5 + 3.0) / (2.0 * 0.5 + 1.0);
        assert_eq!(lhs, at_lo);
        assert!(weighted_ratio_check(&base).unwrap());
        assert!(weighted_ratio_check(&WeightedRatioInput { x: 4.0, ..base }).unwrap());
        assert!(matches!(
            weighted_ratio_check(&WeightedRatioInput { x: 5.0, ..base }),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            weighted_ratio_check(&WeightedRatioInput { y: 0.0, ..base }),
            Err(Error::Precondition(_))
        ));
    }
}
