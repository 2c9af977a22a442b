use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

/// Two-sided interval `mean +- half_width`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub half_width: f64,
    /// Set when only one value was given; the half-width is then 0.
    pub single_run: bool,
}

fn check_level(level: f64) -> Result<()> {
    if level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "confidence level {level} outside (0, 1)"
        )))
    }
}

/// Student-t interval over run means.
pub fn confidence_interval(values: &[f64], level: f64) -> Result<ConfidenceInterval> {
    check_level(level)?;
    if values.is_empty() {
        return Err(Error::InvalidConfig(
            "confidence interval of no values".into(),
        ));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Ok(ConfidenceInterval {
            mean,
            half_width: 0.0,
            single_run: true,
        });
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let t = StudentsT::new(0.0, 1.0, n - 1.0)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.5 + level / 2.0);
    Ok(ConfidenceInterval {
        mean,
        half_width: t * (var / n).sqrt(),
        single_run: false,
    })
}

/// Normal quantile `z` with `P(|Z| <= z) = level`.
pub fn normal_quantile(level: f64) -> Result<f64> {
    check_level(level)?;
    Ok(Normal::standard().inverse_cdf(0.5 + level / 2.0))
}

/// `(best / measured, 100 (measured - best) / best)` for a minimization
/// problem with positive costs.
pub fn approximation_ratio(best_known: f64, measured_cost: f64) -> Result<(f64, f64)> {
    if !(best_known > 0.0 && best_known.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "best known cost {best_known} must be positive"
        )));
    }
    if !(measured_cost > 0.0 && measured_cost.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "measured cost {measured_cost} must be positive"
        )));
    }
    Ok((
        best_known / measured_cost,
        (measured_cost - best_known) / best_known * 100.0,
    ))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    use super::*;

    #[test]
    fn constant_values_have_zero_width() {
        let ci = confidence_interval(&[1.0; 4], 0.95).unwrap();
        assert_eq!((ci.mean, ci.half_width, ci.single_run), (1.0, 0.0, false));
        let one = confidence_interval(&[3.5], 0.95).unwrap();
        assert!(one.single_run);
        assert_eq!(one.half_width, 0.0);
        assert!(confidence_interval(&[], 0.95).is_err());
        assert!(confidence_interval(&[1.0], 1.0).is_err());
    }

    #[test]
    fn two_values_use_the_one_dof_quantile() {
        let ci = confidence_interval(&[0.0, 2.0], 0.95).unwrap();
        assert_eq!(ci.mean, 1.0);
        assert!((ci.half_width - 12.706).abs() < 1e-3);
    }

    #[test]
    fn coverage_of_seeded_normal_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let covered = (0..1000)
            .filter(|_| {
                let draws: Vec<f64> = (0..10).map(|_| StandardNormal.sample(&mut rng)).collect();
                let ci = confidence_interval(&draws, 0.95).unwrap();
                (ci.mean - 0.0).abs() <= ci.half_width
            })
            .count();
        assert!(covered >= 930, "covered {covered} of 1000");
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(approximation_ratio(6700.0, 6700.0).unwrap(), (1.0, 0.0));
        let (r, g) = approximation_ratio(6786.0, 8898.0).unwrap();
        assert!((r - 0.763).abs() < 5e-4);
        assert!((g - 31.1).abs() < 0.05);
        assert!(approximation_ratio(0.0, 1.0).is_err());
        assert!(approximation_ratio(-3.0, 1.0).is_err());
        assert!(approximation_ratio(3.0, 0.0).is_err());
    }

    #[test]
    fn normal_quantile_at_95() {
        assert!((normal_quantile(0.95).unwrap() - 1.959964).abs() < 1e-6);
    }
}
