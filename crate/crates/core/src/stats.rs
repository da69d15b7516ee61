//! Paired Wilcoxon signed-rank marks and Friedman average ranks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// Outcome of comparing a result column against the reference column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    /// Significantly larger.
    #[serde(rename = "+")]
    Plus,
    /// Significantly smaller.
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "=")]
    Equal,
}

impl Mark {
    pub fn symbol(self) -> &'static str {
        match self {
            Mark::Plus => "+",
            Mark::Minus => "-",
            Mark::Equal => "=",
        }
    }

    pub fn flip(self) -> Mark {
        match self {
            Mark::Plus => Mark::Minus,
            Mark::Minus => Mark::Plus,
            Mark::Equal => Mark::Equal,
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedRankTest {
    /// Non-zero differences.
    pub n: usize,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    pub exact: bool,
}

/// Largest sample (after dropping zero differences) handled exactly.
pub const EXACT_LIMIT: usize = 25;

/// Average ranks (1-based) of `values`, ascending.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Two-sided Wilcoxon signed-rank test on `a - b`. Returns `None` when every
/// difference is zero.
pub fn signed_rank_test(a: &[f64], b: &[f64]) -> Result<Option<SignedRankTest>> {
    if a.len() != b.len() {
        return Err(contract("paired samples must have equal length"));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|v| *v != 0.0).collect();
    let n = d.len();
    if n == 0 {
        return Ok(None);
    }
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let (p_value, exact) = if n <= EXACT_LIMIT {
        (exact_p(&ranks, w_plus), true)
    } else {
        (normal_p(&ranks, w_plus), false)
    };
    Ok(Some(SignedRankTest {
        n,
        w_plus,
        w_minus,
        p_value,
        exact,
    }))
}

/// Exact two-sided p-value. Ranks are doubled to integers (average ranks are
/// multiples of one half) and the null distribution of the doubled W+ is
/// built by counting subsets.
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; max + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=max).rev() {
            counts[s] += counts[s - r];
        }
    }
    let total = 2f64.powi(ranks.len() as i32);
    let w = (2.0 * w_plus).round() as usize;
    let lower: f64 = counts[..=w].iter().sum::<f64>() / total;
    let upper: f64 = counts[w..].iter().sum::<f64>() / total;
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_p(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut tie = 0.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie += t * t * t - t;
        i = j + 1;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// `+` when `a` is significantly larger than `b`, `-` when smaller, `=` otherwise.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64], alpha: f64) -> Result<Mark> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(contract("alpha must lie in (0, 1)"));
    }
    if a.len() < 5 {
        return Err(contract("signed-rank test needs at least 5 pairs"));
    }
    let Some(t) = signed_rank_test(a, b)? else {
        return Ok(Mark::Equal);
    };
    if t.p_value >= alpha {
        return Ok(Mark::Equal);
    }
    let mut d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let med = median(&mut d);
    Ok(if med > 0.0 {
        Mark::Plus
    } else if med < 0.0 {
        Mark::Minus
    } else if t.w_plus > t.w_minus {
        Mark::Plus
    } else {
        Mark::Minus
    })
}

/// Average rank of each algorithm (column) over instances (rows). Larger
/// values get larger ranks; ties share the average rank.
pub fn friedman_ranks(table: &[Vec<f64>]) -> Result<Vec<f64>> {
    let k = table.first().map_or(0, Vec::len);
    if table.is_empty() || k < 2 {
        return Err(contract("friedman ranking needs at least one instance and two algorithms"));
    }
    if table.iter().any(|r| r.len() != k) {
        return Err(contract("ragged result table"));
    }
    let mut sum = vec![0.0; k];
    for row in table {
        for (s, r) in sum.iter_mut().zip(average_ranks(row)) {
            *s += r;
        }
    }
    Ok(sum.into_iter().map(|s| s / table.len() as f64).collect())
}

pub fn mean(v: &[f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for a single value.
pub fn std_dev(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let mu = mean(v);
    (v.iter().map(|x| (x - mu).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}
