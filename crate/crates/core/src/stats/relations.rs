use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::decimate::{decimate, decimate_from_random_point, ConfigKind, OrderedConfig};
use crate::density::{CircularSpec, DAParams, Ensemble, EnsembleSpec, Weight};
use crate::error::{domain, Error, Result};
use crate::sampler::LineDaTarget;

/// Weight parameters shared by the relations; each relation reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationParams {
    pub a: f64,
    pub b: f64,
}

impl Default for RelationParams {
    fn default() -> Self {
        Self { a: 0.0, b: 0.0 }
    }
}

fn small_beta(r: usize) -> f64 {
    2.0 / (r as f64 + 1.0)
}

fn large_beta(r: usize) -> f64 {
    2.0 * (r as f64 + 1.0)
}

/// Exponent attached to every interior endpoint in the composition construction.
fn interior_exponent(r: usize) -> f64 {
    1.0 + small_beta(r)
}

/// `D_{r+1}` applied to a `β = 2/(r+1)` ensemble equals a `β = 2(r+1)` ensemble.
pub trait DecimationRelation: Send + Sync {
    fn id(&self) -> u8;
    fn name(&self) -> &'static str;
    fn lhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble>;
    fn rhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble>;

    fn is_circular(&self) -> bool {
        false
    }

    /// Keep every `stride`-th point of one canonical LHS row.
    fn decimate_row(&self, row: &[f64], stride: usize, _rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        let kind = if self.is_circular() { ConfigKind::Circle } else { ConfigKind::Line };
        Ok(decimate(&OrderedConfig::new(row.to_vec(), kind)?, stride)?.into_values())
    }

    /// Conditional density of the remaining LHS points given one RHS row, if
    /// the relation has a forward Dixon–Anderson construction.
    fn conditional(&self, _r: usize, _p: &RelationParams, _rhs_row: &[f64]) -> Option<Result<LineDaTarget>> {
        None
    }
}

fn line(beta: f64, n: usize, weight: Weight) -> Result<Ensemble> {
    Ok(Ensemble::Line(EnsembleSpec::new(beta, n, weight)?))
}

fn circle(beta: f64, n: usize, b: f64) -> Result<Ensemble> {
    Ok(Ensemble::Circle(CircularSpec::new(beta, n, b)?))
}

fn sizes(r: usize, n: usize, extra: bool) -> Result<usize> {
    if r == 0 || n == 0 {
        return Err(domain("relations need r >= 1 and N >= 1"));
    }
    Ok((r + 1) * n + if extra { r } else { 0 })
}

struct Jacobi;

impl DecimationRelation for Jacobi {
    fn id(&self) -> u8 {
        1
    }
    fn name(&self) -> &'static str {
        "jacobi"
    }
    fn lhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        line(small_beta(r), sizes(r, n, true)?, Weight::Jacobi { a: p.a, b: p.b })
    }
    fn rhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        let (rf, twor) = (r as f64 + 1.0, 2.0 * r as f64);
        line(large_beta(r), n, Weight::Jacobi { a: rf * p.a + twor, b: rf * p.b + twor })
    }
    fn conditional(&self, r: usize, p: &RelationParams, rhs_row: &[f64]) -> Option<Result<LineDaTarget>> {
        let mut a = vec![1.0];
        a.extend_from_slice(rhs_row);
        a.push(0.0);
        let mut s = vec![p.b + 1.0];
        s.extend(std::iter::repeat_n(interior_exponent(r), rhs_row.len()));
        s.push(p.a + 1.0);
        Some(DAParams::new(r, a, s).map(|params| LineDaTarget::from_params(&params)))
    }
}

struct JacobiB;

impl DecimationRelation for JacobiB {
    fn id(&self) -> u8 {
        2
    }
    fn name(&self) -> &'static str {
        "jacobi-b"
    }
    fn lhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        line(small_beta(r), sizes(r, n, false)?, Weight::Jacobi { a: 0.0, b: p.b })
    }
    fn rhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        let (rf, twor) = (r as f64 + 1.0, 2.0 * r as f64);
        line(large_beta(r), n, Weight::Jacobi { a: 0.0, b: rf * p.b + twor })
    }
    fn conditional(&self, r: usize, p: &RelationParams, rhs_row: &[f64]) -> Option<Result<LineDaTarget>> {
        let mut a = vec![1.0];
        a.extend_from_slice(rhs_row);
        let mut s = vec![p.b + 1.0];
        s.extend(std::iter::repeat_n(interior_exponent(r), rhs_row.len()));
        Some(DAParams::new(r, a, s).map(|params| LineDaTarget::from_params(&params)))
    }
}

struct LaguerreA;

impl DecimationRelation for LaguerreA {
    fn id(&self) -> u8 {
        3
    }
    fn name(&self) -> &'static str {
        "laguerre-a"
    }
    fn lhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        line(small_beta(r), sizes(r, n, true)?, Weight::Laguerre { a: p.a, c: 1.0 })
    }
    fn rhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        let rf = r as f64 + 1.0;
        line(large_beta(r), n, Weight::Laguerre { a: rf * p.a + 2.0 * r as f64, c: rf })
    }
    fn conditional(&self, r: usize, p: &RelationParams, rhs_row: &[f64]) -> Option<Result<LineDaTarget>> {
        let mut a = rhs_row.to_vec();
        a.push(0.0);
        let mut s = vec![interior_exponent(r); rhs_row.len()];
        s.push(p.a + 1.0);
        Some(Ok(LineDaTarget::unbounded_top(r, &a, &s, 1.0)))
    }
}

struct Laguerre;

impl DecimationRelation for Laguerre {
    fn id(&self) -> u8 {
        4
    }
    fn name(&self) -> &'static str {
        "laguerre"
    }
    fn lhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        line(small_beta(r), sizes(r, n, false)?, Weight::Laguerre { a: 0.0, c: 1.0 })
    }
    fn rhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        line(large_beta(r), n, Weight::Laguerre { a: 0.0, c: r as f64 + 1.0 })
    }
    fn conditional(&self, r: usize, _p: &RelationParams, rhs_row: &[f64]) -> Option<Result<LineDaTarget>> {
        let s = vec![interior_exponent(r); rhs_row.len()];
        Some(Ok(LineDaTarget::unbounded_top(r, rhs_row, &s, 1.0)))
    }
}

struct Gaussian;

impl DecimationRelation for Gaussian {
    fn id(&self) -> u8 {
        5
    }
    fn name(&self) -> &'static str {
        "gaussian"
    }
    fn lhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        line(small_beta(r), sizes(r, n, true)?, Weight::Gaussian { c: 1.0 })
    }
    fn rhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        line(large_beta(r), n, Weight::Gaussian { c: r as f64 + 1.0 })
    }
}

struct CircularB;

impl DecimationRelation for CircularB {
    fn id(&self) -> u8 {
        6
    }
    fn name(&self) -> &'static str {
        "circular-b"
    }
    fn is_circular(&self) -> bool {
        true
    }
    fn lhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        circle(small_beta(r), sizes(r, n, true)?, p.b)
    }
    fn rhs(&self, r: usize, n: usize, p: &RelationParams) -> Result<Ensemble> {
        circle(large_beta(r), n, (r as f64 + 1.0) * p.b + 2.0 * r as f64)
    }
}

/// Without a singularity there is no distinguished angle, so counting starts
/// from a uniformly chosen eigenvalue rather than from angle 0.
struct Circular0;

impl DecimationRelation for Circular0 {
    fn id(&self) -> u8 {
        7
    }
    fn name(&self) -> &'static str {
        "circular-0"
    }
    fn is_circular(&self) -> bool {
        true
    }
    fn lhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        circle(small_beta(r), sizes(r, n, false)?, 0.0)
    }
    fn rhs(&self, r: usize, n: usize, _p: &RelationParams) -> Result<Ensemble> {
        circle(large_beta(r), n, 0.0)
    }
    fn decimate_row(&self, row: &[f64], stride: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
        let config = OrderedConfig::new(row.to_vec(), ConfigKind::Circle)?;
        Ok(decimate_from_random_point(&config, stride, rng)?.into_values())
    }
}

/// The seven relations, addressable by name or by number.
#[derive(Clone)]
pub struct RelationRegistry {
    entries: BTreeMap<&'static str, Arc<dyn DecimationRelation>>,
}

impl Default for RelationRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl RelationRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        let all: [Arc<dyn DecimationRelation>; 7] = [
            Arc::new(Jacobi),
            Arc::new(JacobiB),
            Arc::new(LaguerreA),
            Arc::new(Laguerre),
            Arc::new(Gaussian),
            Arc::new(CircularB),
            Arc::new(Circular0),
        ];
        for rel in all {
            reg.register(rel);
        }
        reg
    }

    pub fn register(&mut self, relation: Arc<dyn DecimationRelation>) {
        self.entries.insert(relation.name(), relation);
    }

    /// Looks up by name (`"gaussian"`) or number (`"5"`).
    pub fn get(&self, key: &str) -> Result<Arc<dyn DecimationRelation>> {
        if let Some(rel) = self.entries.get(key) {
            return Ok(rel.clone());
        }
        if let Ok(id) = key.parse::<u8>() {
            if let Some(rel) = self.entries.values().find(|r| r.id() == id) {
                return Ok(rel.clone());
            }
        }
        Err(Error::Unknown { kind: "relation", name: key.to_string() })
    }

    /// Relations in numeric order.
    pub fn all(&self) -> Vec<Arc<dyn DecimationRelation>> {
        let mut v: Vec<_> = self.entries.values().cloned().collect();
        v.sort_by_key(|r| r.id());
        v
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.all().iter().map(|r| r.name()).collect()
    }
}
