//! Exact check of the roots-of-unity cancellation behind the reordering of
//! endpoints: the inversion statistic `K`, its phase sum over all
//! arrangements, and the generating polynomial `F(z)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};

/// A line of 0's and 1's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence01 {
    bits: Vec<u8>,
}

impl Sequence01 {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(domain(format!("sequence entries must be 0 or 1, found {b}")));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    fn from_mask(mask: u32, len: usize) -> Self {
        let bits = (0..len).map(|j| ((mask >> j) & 1) as u8).collect();
        Self { bits }
    }
}

/// Sum over the 1's of the number of 0's strictly to their right.
pub fn k_statistic(seq: &Sequence01) -> u64 {
    let mut zeros_right = 0u64;
    let mut total = 0u64;
    for &b in seq.bits.iter().rev() {
        if b == 0 {
            zeros_right += 1;
        } else {
            total += zeros_right;
        }
    }
    total
}

/// All arrangements of `zeros` 0's and `ones` 1's.
pub fn arrangements(zeros: usize, ones: usize) -> impl Iterator<Item = Sequence01> {
    let len = zeros + ones;
    assert!(len < 32, "arrangement length must fit in a u32 mask");
    (0u32..(1u32 << len))
        .filter(move |m| m.count_ones() as usize == ones)
        .map(move |m| Sequence01::from_mask(m, len))
}

fn unit(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// `Σ_A e^{−2πi K(A)/(r+1)}` without the `1 ≤ q ≤ r` restriction.
pub fn phase_sum_any(r: usize, q: usize) -> Complex64 {
    let denom = (r + 1) as f64;
    arrangements(r, q)
        .map(|seq| unit(-2.0 * PI * (k_statistic(&seq) % (r as u64 + 1)) as f64 / denom))
        .sum()
}

/// The phase sum over all arrangements of `r` 0's and `q` 1's; vanishes for `1 ≤ q ≤ r`.
pub fn phase_sum(r: usize, q: usize) -> Result<Complex64> {
    if r == 0 || q == 0 || q > r {
        return Err(domain(format!("phase sum needs 1 <= q <= r, got r = {r}, q = {q}")));
    }
    Ok(phase_sum_any(r, q))
}

/// Coefficients `c_0, …, c_{r+q}` of `F(z) = Π_{j=1}^{r+q} (1 + z e^{−2πi(j−1)/(r+1)})`.
pub fn f_poly_coeffs(r: usize, q: usize) -> Vec<Complex64> {
    let denom = (r + 1) as f64;
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for j in 0..r + q {
        let w = unit(-2.0 * PI * (j % (r + 1)) as f64 / denom);
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * w;
        }
        coeffs = next;
    }
    coeffs
}

/// Phase relating the coefficient of `z^q` in `F` to the phase sum:
/// `K(A) = Σ_j n_j (r+q−j) − (q² − q)/2`.
pub fn phase_correction(r: usize, q: usize) -> Complex64 {
    let shift = (q * q - q) / 2;
    unit(2.0 * PI * (shift % (r + 1)) as f64 / (r + 1) as f64)
}
