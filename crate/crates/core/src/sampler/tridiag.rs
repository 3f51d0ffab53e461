use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{domain, Result};

use super::{stream_rng, ChainConfig, SampleBatch};

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagMatrix {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl TridiagMatrix {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(domain("tridiagonal matrix must be non-empty"));
        }
        if off.len() + 1 != diag.len() {
            return Err(domain(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(crate::error::Error::NotANumber("tridiagonal entry"));
        }
        Ok(Self { diag, off })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for k in 1..self.diag.len() {
            let prev = if q == 0.0 { f64::EPSILON * (self.off[k - 1].abs() + 1.0) } else { q };
            q = self.diag[k] - x - self.off[k - 1] * self.off[k - 1] / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }
}

/// All eigenvalues in ascending order by bisection on the Sturm count.
pub fn tridiag_eigenvalues(m: &TridiagMatrix) -> Vec<f64> {
    let n = m.size();
    let (lo0, hi0) = m.gershgorin();
    let pad = 1e-12 * (lo0.abs().max(hi0.abs()) + 1.0);
    let (lo0, hi0) = (lo0 - pad, hi0 + pad);
    (0..n)
        .map(|k| {
            // The k-th eigenvalue is the smallest x with count_below(x) > k.
            let (mut lo, mut hi) = (lo0, hi0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if m.count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Random tridiagonal matrix whose eigenvalues follow `ME_{β,N}(e^{−x²/2})`.
///
/// Diagonal entries are standard normal; the `k`-th off-diagonal entry is
/// `sqrt(G)` with `G ~ Gamma((N − k)β/2, 1)`.
pub fn gaussian_tridiag_matrix<R: rand::Rng + ?Sized>(beta: f64, n: usize, rng: &mut R) -> Result<TridiagMatrix> {
    if !(beta > 0.0) || n == 0 {
        return Err(domain(format!("tridiagonal model needs beta > 0 and N >= 1, got beta = {beta}, N = {n}")));
    }
    let diag = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let off = (1..n)
        .map(|k| {
            let g = Gamma::new((n - k) as f64 * beta / 2.0, 1.0).expect("positive shape");
            g.sample(rng).sqrt()
        })
        .collect();
    TridiagMatrix::new(diag, off)
}

/// `count` exact draws from `ME_{β,N}(e^{−x²/2})`, rows in decreasing order.
pub fn sample_gaussian_tridiag(beta: f64, n: usize, count: usize, master_seed: u64) -> Result<SampleBatch> {
    let rows = (0..count as u64)
        .map(|i| {
            let mut rng = stream_rng(master_seed, i);
            let m = gaussian_tridiag_matrix(beta, n, &mut rng)?;
            let mut ev = tridiag_eigenvalues(&m);
            ev.reverse();
            Ok(ev)
        })
        .collect::<Result<Vec<_>>>()?;
    let config = ChainConfig::default().with_chains(count.max(1));
    SampleBatch::from_rows(rows, n, format!("ME[beta={beta},N={n},gaussian(c=0.5)]/tridiagonal"), master_seed, config)
}
