//! The logistic bridge between the reals and the unit interval.
//!
//! The logistic map `f(x) = 1 / (1 + e^-x)` carries addition on the reals
//! to `T_R(a, b) = ab / (ab + (1 - a)(1 - b))` on `(0, 1)`. `T_R` is
//! commutative, associative and monotone but has no identity: `T_R(a, 1)`
//! is 1, not `a`. The Lukasiewicz t-norm `max(0, a + b - 1)` is provided
//! for comparison. This is the only module that uses floating point.

use std::io;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum FuzzyError {
    #[error("{0} lies outside the closed unit interval")]
    OutOfRange(f64),
    #[error("{0} is not strictly between 0 and 1")]
    NotInterior(f64),
    #[error("T_R is undefined at ({a}, {b})")]
    Undefined { a: f64, b: f64 },
    #[error("grid resolution must be at least 1")]
    Resolution,
}

/// A point of the open unit interval, stored together with its complement
/// so that values close to 1 keep full relative precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitValue {
    p: f64,
    q: f64,
}

impl UnitValue {
    pub fn new(p: f64) -> Result<Self, FuzzyError> {
        if p > 0.0 && p < 1.0 {
            Ok(UnitValue { p, q: 1.0 - p })
        } else {
            Err(FuzzyError::NotInterior(p))
        }
    }

    pub fn value(self) -> f64 {
        self.p
    }

    /// `1 - p`, computed without cancellation when produced by [`logistic`].
    pub fn complement(self) -> f64 {
        self.q
    }
}

pub fn logistic(x: f64) -> UnitValue {
    UnitValue {
        p: 1.0 / (1.0 + (-x).exp()),
        q: 1.0 / (1.0 + x.exp()),
    }
}

pub fn logit(u: UnitValue) -> f64 {
    u.p.ln() - u.q.ln()
}

/// `logit` on a bare probability.
pub fn logit_value(p: f64) -> Result<f64, FuzzyError> {
    UnitValue::new(p).map(logit)
}

fn unit(x: f64) -> Result<f64, FuzzyError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(FuzzyError::OutOfRange(x))
    }
}

/// `max(0, a + b - 1)`, evaluated on the sorted pair as `lo - (1 - hi)`
/// so that `T_L(a, 1) = a` and `T_L(a, b) = T_L(b, a)` hold exactly.
pub fn t_lukasiewicz(a: f64, b: f64) -> Result<f64, FuzzyError> {
    let (a, b) = (unit(a)?, unit(b)?);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Ok((lo - (1.0 - hi)).max(0.0))
}

/// `ab / (ab + (1 - a)(1 - b))` on the closed square. Undefined at the
/// corners `(0, 1)` and `(1, 0)`; 1 whenever one argument is 1 and the
/// other positive.
pub fn t_riesz(a: f64, b: f64) -> Result<f64, FuzzyError> {
    let (a, b) = (unit(a)?, unit(b)?);
    if (a == 0.0 && b == 1.0) || (a == 1.0 && b == 0.0) {
        return Err(FuzzyError::Undefined { a, b });
    }
    if a == 1.0 || b == 1.0 {
        return Ok(1.0);
    }
    let num = a * b;
    Ok(num / (num + (1.0 - a) * (1.0 - b)))
}

/// `T_R` on interior values, using the stored complements.
pub fn t_riesz_unit(a: UnitValue, b: UnitValue) -> UnitValue {
    let num = a.p * b.p;
    let den = a.q * b.q;
    UnitValue {
        p: num / (num + den),
        q: den / (num + den),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TNorm {
    Lukasiewicz,
    Riesz,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> Result<f64, FuzzyError> {
        match self {
            TNorm::Lukasiewicz => t_lukasiewicz(a, b),
            TNorm::Riesz => t_riesz(a, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRow {
    pub a: f64,
    pub b: f64,
    /// `None` where the operation is undefined.
    pub value: Option<f64>,
}

/// `(n + 1)^2` samples of the closed unit square, `a` varying slowest.
pub fn emit_grid(op: TNorm, n: usize) -> Result<Vec<GridRow>, FuzzyError> {
    if n == 0 {
        return Err(FuzzyError::Resolution);
    }
    let coord = |i: usize| i as f64 / n as f64;
    let mut rows = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let (a, b) = (coord(i), coord(j));
            rows.push(GridRow {
                a,
                b,
                value: op.apply(a, b).ok(),
            });
        }
    }
    Ok(rows)
}

/// Fixed-point decimal with 17 significant digits.
pub fn format_sig17(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x);
    let exponent: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    let decimals = (16 - exponent).clamp(0, 400) as usize;
    format!("{:.*}", decimals, x)
}

pub fn write_grid_csv<W: io::Write>(rows: &[GridRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["a", "b", "value"])?;
    for row in rows {
        let value = row.value.map(format_sig17).unwrap_or_default();
        w.write_record([format_sig17(row.a), format_sig17(row.b), value])?;
    }
    w.flush()?;
    Ok(())
}

/// Which t-norm laws held on a sample grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TNormLaws {
    pub commutative: bool,
    pub monotone: bool,
    pub associative: bool,
    pub identity: bool,
}

/// Checks the four t-norm laws on the interior points `i / n`; associativity
/// is compared within `tolerance`, the others exactly.
pub fn check_laws(op: TNorm, n: usize, tolerance: f64) -> TNormLaws {
    let pts: Vec<f64> = (1..n).map(|i| i as f64 / n as f64).collect();
    let t = |a: f64, b: f64| op.apply(a, b).expect("interior point");
    let mut laws = TNormLaws {
        commutative: true,
        monotone: true,
        associative: true,
        identity: true,
    };
    for &a in &pts {
        laws.identity &= op.apply(a, 1.0) == Ok(a);
        for (j, &b) in pts.iter().enumerate() {
            let ab = t(a, b);
            laws.commutative &= ab == t(b, a);
            if let Some(&b2) = pts.get(j + 1) {
                laws.monotone &= ab <= t(a, b2);
            }
            for &c in &pts {
                laws.associative &= (t(ab, c) - t(a, t(b, c))).abs() <= tolerance;
            }
        }
    }
    laws
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_values() {
        assert_eq!(logistic(0.0).value(), 0.5);
        assert_eq!(logit_value(0.5).unwrap(), 0.0);
        assert!((logistic(2.0).value() - 0.8807970779778823).abs() < 1e-12);
        assert!(logit_value(0.0).is_err() && logit_value(1.0).is_err());
        for i in -300..=300 {
            let x = i as f64 / 10.0;
            assert!((logit(logistic(x)) - x).abs() < 1e-9, "{x}");
        }
    }

    #[test]
    fn lukasiewicz_values() {
        assert!((t_lukasiewicz(0.7, 0.8).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(t_lukasiewicz(0.3, 0.3).unwrap(), 0.0);
        assert_eq!(t_lukasiewicz(0.37, 1.0).unwrap(), 0.37);
        assert!(t_lukasiewicz(1.2, 0.0).is_err());
    }

    #[test]
    fn riesz_values() {
        assert_eq!(t_riesz(0.5, 0.5).unwrap(), 0.5);
        let f2 = 0.8807970779778823;
        assert!((t_riesz(f2, f2).unwrap() - 0.9820137900379085).abs() < 1e-9);
        assert_eq!(t_riesz(0.4, 1.0).unwrap(), 1.0);
        assert_eq!(t_riesz(1.0, 0.4).unwrap(), 1.0);
        assert_eq!(t_riesz(0.0, 0.0).unwrap(), 0.0);
        assert!(matches!(
            t_riesz(0.0, 1.0),
            Err(FuzzyError::Undefined { .. })
        ));
        assert!(matches!(
            t_riesz(1.0, 0.0),
            Err(FuzzyError::Undefined { .. })
        ));
    }

    #[test]
    fn unit_riesz_tracks_complements() {
        let r = t_riesz_unit(logistic(20.0), logistic(15.0));
        assert!((logit(r) - 35.0).abs() < 1e-9);
    }

    #[test]
    fn laws() {
        let tl = check_laws(TNorm::Lukasiewicz, 20, 1e-12);
        assert_eq!(
            tl,
            TNormLaws {
                commutative: true,
                monotone: true,
                associative: true,
                identity: true
            }
        );
        let tr = check_laws(TNorm::Riesz, 20, 1e-9);
        assert_eq!(
            tr,
            TNormLaws {
                commutative: true,
                monotone: true,
                associative: true,
                identity: false
            }
        );
    }

    #[test]
    fn grid_csv() {
        let rows = emit_grid(TNorm::Lukasiewicz, 1).unwrap();
        let values: Vec<_> = rows.iter().map(|r| (r.a, r.b, r.value)).collect();
        assert_eq!(
            values,
            [
                (0.0, 0.0, Some(0.0)),
                (0.0, 1.0, Some(0.0)),
                (1.0, 0.0, Some(0.0)),
                (1.0, 1.0, Some(1.0))
            ]
        );
        let mut out = Vec::new();
        write_grid_csv(&emit_grid(TNorm::Riesz, 1).unwrap(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "a,b,value");
        assert_eq!(lines[2], "0.0000000000000000,1.0000000000000000,");
        assert_eq!(
            lines[4],
            "1.0000000000000000,1.0000000000000000,1.0000000000000000"
        );
        let mid = emit_grid(TNorm::Lukasiewicz, 2).unwrap();
        assert_eq!(
            mid[4],
            GridRow {
                a: 0.5,
                b: 0.5,
                value: Some(0.0)
            }
        );
        assert!(emit_grid(TNorm::Riesz, 0).is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig17(0.5), "0.50000000000000000");
        assert_eq!(format_sig17(0.1), "0.10000000000000001");
        assert_eq!(format_sig17(1.0), "1.0000000000000000");
    }
}
