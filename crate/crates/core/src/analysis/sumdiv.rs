use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Which branch of the construction a finite sequence falls into.
///
/// On a finite horizon the limsup is read off the tail: with `ρ` the
/// maximum over the second half divided by the maximum over the first half,
/// `ρ > 1` means unbounded, `ρ ≥ 1/2` a positive limsup, and anything
/// smaller a vanishing one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumDivCase {
    Unbounded,
    Positive,
    Vanishing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumDivResult {
    pub case: SumDivCase,
    /// Selected indices `k_l` (1-based), strictly increasing.
    pub subsequence_indices: Vec<usize>,
    /// `ratio_table[j−1][l] = Σ_{i=1}^{j} a_{k_l−i} / a_{k_l}`, `None` when
    /// `k_l ≤ j`.
    pub ratio_table: Vec<Vec<Option<f64>>>,
    /// Knots `(k, g(k))` of the convex decreasing envelope (vanishing case).
    pub envelope_knots: Vec<(usize, f64)>,
}

impl SumDivResult {
    /// Largest ratio for `j` over selected indices `k_l ≥ from`.
    pub fn tail_sup(&self, j: usize, from: usize) -> Option<f64> {
        self.subsequence_indices
            .iter()
            .zip(&self.ratio_table[j - 1])
            .filter(|(&k, r)| k >= from && r.is_some())
            .map(|(_, r)| r.unwrap())
            .reduce(f64::max)
    }
}

/// Subsequence along which `Σ_{i=1}^j a_{k−i} / a_k` stays near `j`.
///
/// `a[0]` is `a_1`.
pub fn sumdiv_subsequence(a: &[f64], j_max: usize) -> Result<SumDivResult> {
    if a.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(invalid("sequence must be finite and nonnegative"));
    }
    if a.iter().filter(|&&x| x > 0.0).count() < 3 {
        return Err(invalid("sequence needs at least three nonzero terms"));
    }
    if j_max == 0 {
        return Err(invalid("j_max must be positive"));
    }
    let n = a.len();
    let mid = n / 2;
    let head = a[..mid.max(1)].iter().cloned().fold(0.0, f64::max);
    let tail = a[mid..].iter().cloned().fold(0.0, f64::max);
    let rho = if head > 0.0 { tail / head } else { f64::INFINITY };
    let (case, indices, knots) = if rho > 1.0 + 1e-9 {
        // running records: a_{k−i} ≤ a_k for all i
        let mut best = f64::NEG_INFINITY;
        let idx: Vec<usize> = (0..n)
            .filter(|&k| {
                let rec = a[k] > 0.0 && a[k] >= best;
                best = best.max(a[k]);
                rec
            })
            .map(|k| k + 1)
            .collect();
        (SumDivCase::Unbounded, idx, vec![])
    } else if rho >= 0.5 {
        // terms approaching the limsup, read as the tail maximum
        let idx: Vec<usize> = (0..n).filter(|&k| a[k] > 0.0 && a[k] >= 0.95 * tail).map(|k| k + 1).collect();
        (SumDivCase::Positive, idx, vec![])
    } else {
        let f2 = running_max_knots(a);
        let knots = convex_knots(&f2);
        (SumDivCase::Vanishing, knots.iter().map(|k| k.0).collect(), knots)
    };
    let ratio_table = (1..=j_max)
        .map(|j| {
            indices
                .iter()
                .map(|&k| (k > j).then(|| (1..=j).map(|i| a[k - i - 1]).sum::<f64>() / a[k - 1]))
                .collect()
        })
        .collect();
    Ok(SumDivResult { case, subsequence_indices: indices, ratio_table, envelope_knots: knots })
}

/// `k_1` = last index of the global maximum; `k_{l+1}` = last index of the
/// maximum over `k > k_l`. Stops once the remaining terms vanish.
fn running_max_knots(a: &[f64]) -> Vec<(usize, f64)> {
    let n = a.len();
    // suffix maximum with its last position
    let mut best = vec![(0.0, 0usize); n + 1];
    for k in (0..n).rev() {
        let (m, p) = best[k + 1];
        best[k] = if a[k] > m || (p == 0 && a[k] >= m) { (a[k], k + 1) } else { (m, p) };
    }
    let mut out = vec![];
    let mut k = 0;
    while k < n {
        let (m, p) = best[k];
        if !(m > 0.0) {
            break;
        }
        out.push((p, m));
        k = p;
    }
    out
}

/// Convexified selection among the running-max knots: the next knot is the
/// first one whose chord slope from the current knot is at least the slope
/// of the last accepted segment. The second knot is the second running-max
/// knot, since no segment exists yet.
fn convex_knots(f2: &[(usize, f64)]) -> Vec<(usize, f64)> {
    let mut out = vec![f2[0]];
    if f2.len() == 1 {
        return out;
    }
    out.push(f2[1]);
    let mut pos = 1;
    loop {
        let (k0, g0) = out[out.len() - 2];
        let (k1, g1) = out[out.len() - 1];
        // f3(k1 − 1) − f3(k1) on the last linear piece
        let drop = (g0 - g1) / (k1 - k0) as f64;
        let next = f2[pos + 1..].iter().position(|&(kj, fj)| drop / 2.0 + (fj - g1) / (2.0 * (kj - k1) as f64) >= 0.0);
        match next {
            Some(off) => {
                pos += 1 + off;
                out.push(f2[pos]);
            }
            None => break,
        }
    }
    out
}
