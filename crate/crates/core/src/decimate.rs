//! Decimation `D_p` (keep every p-th point) and superposition of ordered configurations.

use std::f64::consts::PI;

use rand::Rng;

use crate::density::canonical_angle;
use crate::error::{domain, Error, Result};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigKind {
    /// Points on the real line, stored in decreasing order.
    Line,
    /// Angles in `[0, 2π)`, stored in increasing order.
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderedConfig {
    values: Vec<f64>,
    kind: ConfigKind,
}

impl OrderedConfig {
    /// Checks strict canonical order (and the angle range for circles).
    pub fn new(values: Vec<f64>, kind: ConfigKind) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NotANumber("configuration value"));
        }
        let ordered = match kind {
            ConfigKind::Line => values.windows(2).all(|w| w[0] > w[1]),
            ConfigKind::Circle => {
                values.windows(2).all(|w| w[0] < w[1]) && values.iter().all(|&v| (0.0..TWO_PI).contains(&v))
            }
        };
        if !ordered {
            return Err(domain(format!("values are not in strict canonical {kind:?} order")));
        }
        Ok(Self { values, kind })
    }

    /// Sorts the values into canonical order first.
    pub fn from_unsorted(mut values: Vec<f64>, kind: ConfigKind) -> Result<Self> {
        match kind {
            ConfigKind::Line => values.sort_by(|a, b| b.total_cmp(a)),
            ConfigKind::Circle => {
                for v in &mut values {
                    *v = canonical_angle(*v);
                }
                values.sort_by(|a, b| a.total_cmp(b));
            }
        }
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Tie(w[0]));
        }
        Self::new(values, kind)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Elements at positions `p, 2p, 3p, …` (1-based) in canonical order.
pub fn decimate(config: &OrderedConfig, p: usize) -> Result<OrderedConfig> {
    if p == 0 {
        return Err(domain("decimation stride must be >= 1"));
    }
    let values = config.values.iter().skip(p - 1).step_by(p).copied().collect();
    Ok(OrderedConfig { values, kind: config.kind })
}

/// `D_2`.
pub fn even(config: &OrderedConfig) -> Result<OrderedConfig> {
    decimate(config, 2)
}

/// Sorted union of two configurations of the same kind.
pub fn superimpose(c1: &OrderedConfig, c2: &OrderedConfig) -> Result<OrderedConfig> {
    if c1.kind != c2.kind {
        return Err(Error::KindMismatch(format!("{:?} vs {:?}", c1.kind, c2.kind)));
    }
    let mut merged = Vec::with_capacity(c1.len() + c2.len());
    merged.extend_from_slice(&c1.values);
    merged.extend_from_slice(&c2.values);
    OrderedConfig::from_unsorted(merged, c1.kind)
}

/// Circular decimation counted from a uniformly chosen point of the configuration.
///
/// The chosen point is moved to angle `2π` (so it becomes the last position),
/// positions `p, 2p, …` are kept, and the result is rotated by a uniform
/// random angle. For a rotation-invariant ensemble without a marked point this
/// is the decimation the circular identity refers to; counting from the fixed
/// angle 0 instead gives a different law.
pub fn decimate_from_random_point<R: Rng + ?Sized>(
    config: &OrderedConfig,
    p: usize,
    rng: &mut R,
) -> Result<OrderedConfig> {
    if config.kind != ConfigKind::Circle {
        return Err(Error::KindMismatch("point-anchored decimation needs a circular configuration".into()));
    }
    if p == 0 {
        return Err(domain("decimation stride must be >= 1"));
    }
    if config.is_empty() {
        return decimate(config, p);
    }
    let n = config.len();
    let anchor_idx = rng.random_range(0..n);
    let anchor = config.values[anchor_idx];
    // Relative angles in (0, 2π]; the anchor itself maps to 2π.
    let relative: Vec<f64> = (1..=n).map(|k| {
        let v = config.values[(anchor_idx + k) % n] - anchor;
        if k == n { TWO_PI } else { v.rem_euclid(TWO_PI) }
    }).collect();
    let shift = rng.random::<f64>() * TWO_PI;
    let kept = relative.iter().skip(p - 1).step_by(p).map(|v| v + shift).collect();
    OrderedConfig::from_unsorted(kept, ConfigKind::Circle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn line(v: &[f64]) -> OrderedConfig {
        OrderedConfig::new(v.to_vec(), ConfigKind::Line).unwrap()
    }

    fn circle(v: &[f64]) -> OrderedConfig {
        OrderedConfig::new(v.to_vec(), ConfigKind::Circle).unwrap()
    }

    #[test]
    fn decimate_examples() {
        let c = line(&[9.0, 7.0, 5.0, 3.0, 1.0]);
        assert_eq!(decimate(&c, 2).unwrap().values(), &[7.0, 3.0]);
        assert_eq!(decimate(&c, 3).unwrap().values(), &[5.0]);
        assert_eq!(decimate(&c, 1).unwrap(), c);
        assert_eq!(even(&c).unwrap().values(), &[7.0, 3.0]);
        assert!(decimate(&c, 0).is_err());
    }

    #[test]
    fn superimpose_examples() {
        let s = superimpose(&line(&[3.0, 1.0]), &line(&[2.0])).unwrap();
        assert_eq!(s.values(), &[3.0, 2.0, 1.0]);
        let s = superimpose(&line(&[0.5]), &line(&[])).unwrap();
        assert_eq!(s.values(), &[0.5]);
        let s = superimpose(&circle(&[1.0, 4.0]), &circle(&[2.0, 5.0])).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 4.0, 5.0]);
        assert!(matches!(superimpose(&line(&[1.0]), &circle(&[1.0])), Err(Error::KindMismatch(_))));
        assert!(matches!(superimpose(&line(&[2.0, 1.0]), &line(&[1.0])), Err(Error::Tie(_))));
    }

    #[test]
    fn order_is_validated() {
        assert!(OrderedConfig::new(vec![1.0, 2.0], ConfigKind::Line).is_err());
        assert!(OrderedConfig::new(vec![2.0, 1.0], ConfigKind::Circle).is_err());
        assert!(OrderedConfig::new(vec![1.0, 7.0], ConfigKind::Circle).is_err());
        assert!(OrderedConfig::new(vec![f64::NAN], ConfigKind::Line).is_err());
    }

    #[test]
    fn anchored_decimation_keeps_every_other_gap() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let c = circle(&[0.5, 1.0, 2.0, 3.5, 4.0, 6.0]);
        for _ in 0..20 {
            let d = decimate_from_random_point(&c, 2, &mut rng).unwrap();
            assert_eq!(d.len(), 3);
            // Every other point survives, so consecutive kept gaps are sums of two original gaps.
            let gaps: Vec<f64> = (0..3).map(|k| (d.values()[(k + 1) % 3] - d.values()[k]).rem_euclid(TWO_PI)).collect();
            let total: f64 = gaps.iter().sum();
            assert!((total - TWO_PI).abs() < 1e-12);
            // Kept gaps are sums of adjacent pairs of original gaps, in one of two pairings.
            let mut sorted = gaps.clone();
            sorted.sort_by(|a, b| a.total_cmp(b));
            let orig = [0.5, 1.0, 1.5, 0.5, 2.0, TWO_PI - 5.5];
            let mut a: Vec<f64> = (0..3).map(|k| orig[2 * k] + orig[2 * k + 1]).collect();
            let mut b: Vec<f64> = (0..3).map(|k| orig[2 * k + 1] + orig[(2 * k + 2) % 6]).collect();
            a.sort_by(|x, y| x.total_cmp(y));
            b.sort_by(|x, y| x.total_cmp(y));
            let close = |u: &[f64]| u.iter().zip(&sorted).all(|(x, y)| (x - y).abs() < 1e-12);
            assert!(close(&a) || close(&b));
        }
        assert!(decimate_from_random_point(&line(&[1.0]), 2, &mut rng).is_err());
    }

    proptest::proptest! {
        #[test]
        fn decimated_length_and_order(mut v in proptest::collection::vec(-1e3f64..1e3, 0..40), p in 1usize..6) {
            v.sort_by(|a, b| b.total_cmp(a));
            v.dedup();
            let c = OrderedConfig::new(v, ConfigKind::Line).unwrap();
            let d = decimate(&c, p).unwrap();
            proptest::prop_assert_eq!(d.len(), c.len() / p);
            proptest::prop_assert!(d.values().windows(2).all(|w| w[0] > w[1]));
        }

        #[test]
        fn superposition_is_identity_under_unit_stride(a in proptest::collection::vec(0.0f64..6.28, 0..10),
                                                        b in proptest::collection::vec(0.0f64..6.28, 0..10)) {
            let ca = OrderedConfig::from_unsorted(a, ConfigKind::Circle);
            let cb = OrderedConfig::from_unsorted(b, ConfigKind::Circle);
            if let (Ok(ca), Ok(cb)) = (ca, cb) {
                if let Ok(s) = superimpose(&ca, &cb) {
                    proptest::prop_assert_eq!(decimate(&s, 1).unwrap(), s.clone());
                    proptest::prop_assert_eq!(s.len(), ca.len() + cb.len());
                }
            }
        }
    }
}
