//! Exact hypervolume with reference-front normalization.

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::pareto::nondominated_indices;

/// How objective values are mapped into the unit box before measuring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HvNormalization {
    /// Lower corner is `min(0, min over the measured points)`, upper corner is
    /// the reference front's maximum. This is the common platform convention.
    #[default]
    OriginAnchored,
    /// Lower corner is the reference front's ideal point, upper corner its nadir.
    IdealNadir,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HvConfig {
    pub reference_front: Vec<Vec<f64>>,
    /// Head-room factor applied to the normalization range.
    pub scale: f64,
    pub normalization: HvNormalization,
}

impl HvConfig {
    pub fn new(reference_front: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_normalization(reference_front, HvNormalization::default())
    }

    pub fn with_normalization(
        reference_front: Vec<Vec<f64>>,
        normalization: HvNormalization,
    ) -> Result<Self> {
        if reference_front.is_empty() {
            return Err(contract("reference front must not be empty"));
        }
        let m = reference_front[0].len();
        if reference_front.iter().any(|p| p.len() != m || p.iter().any(|v| !v.is_finite())) {
            return Err(contract("reference front rows must be finite and equal length"));
        }
        Ok(Self {
            reference_front,
            scale: 1.1,
            normalization,
        })
    }

    pub fn m(&self) -> usize {
        self.reference_front[0].len()
    }

    fn front_min_max(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.m();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for p in &self.reference_front {
            for j in 0..m {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        (lo, hi)
    }
}

/// Normalized hypervolume of `points` against `(1, ..., 1)`.
pub fn hv<R: AsRef<[f64]>>(points: &[R], cfg: &HvConfig) -> Result<f64> {
    let m = cfg.m();
    if !matches!(m, 2 | 3 | 5) {
        return Err(Error::UnsupportedDimension(m));
    }
    if !(cfg.scale > 1.0) {
        return Err(contract("hv scale must exceed 1"));
    }
    if points.is_empty() {
        return Ok(0.0);
    }
    for p in points {
        let p = p.as_ref();
        if p.len() != m || p.iter().any(|v| !v.is_finite()) {
            return Err(contract("hv points must be finite with the front's dimension"));
        }
    }
    let (front_lo, front_hi) = cfg.front_min_max();
    let lo: Vec<f64> = match cfg.normalization {
        HvNormalization::OriginAnchored => (0..m)
            .map(|j| points.iter().map(|p| p.as_ref()[j]).fold(0.0, f64::min))
            .collect(),
        HvNormalization::IdealNadir => front_lo,
    };
    let span: Vec<f64> = (0..m)
        .map(|j| {
            let s = (front_hi[j] - lo[j]) * cfg.scale;
            if s > 0.0 {
                s
            } else {
                cfg.scale
            }
        })
        .collect();
    let norm: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(j, &v)| (v - lo[j]) / span[j])
                .collect::<Vec<f64>>()
        })
        .filter(|p: &Vec<f64>| p.iter().all(|&v| v < 1.0))
        .collect();
    Ok(hv_exact(&norm, &vec![1.0; m]))
}

/// Exact hypervolume dominated by `points` and bounded by `reference`.
/// Points not strictly better than the reference in every objective are ignored.
pub fn hv_exact<R: AsRef<[f64]>>(points: &[R], reference: &[f64]) -> f64 {
    let pts: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.as_ref().to_vec())
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    let keep = nondominated_indices(&pts);
    let pts: Vec<Vec<f64>> = keep.into_iter().map(|i| pts[i].clone()).collect();
    slice_volume(pts, reference)
}

fn slice_volume(mut pts: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    let m = reference.len();
    match m {
        1 => pts.iter().map(|p| reference[0] - p[0]).fold(0.0, f64::max),
        2 => sweep_2d(&mut pts, reference),
        _ => {
            // Slice along the last objective; each slab's cross-section is the
            // (m-1)-dimensional volume of the points already below it.
            pts.sort_by(|a, b| a[m - 1].total_cmp(&b[m - 1]));
            let sub_ref = &reference[..m - 1];
            let mut total = 0.0;
            let mut active: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
            for i in 0..pts.len() {
                let p = &pts[i];
                let proj = p[..m - 1].to_vec();
                if !active.iter().any(|q| crate::pareto::weakly_dominates(q, &proj)) {
                    active.retain(|q| !crate::pareto::weakly_dominates(&proj, q));
                    active.push(proj);
                }
                let top = if i + 1 < pts.len() { pts[i + 1][m - 1] } else { reference[m - 1] };
                let depth = top - p[m - 1];
                if depth > 0.0 {
                    total += depth * slice_volume(active.clone(), sub_ref);
                }
            }
            total
        }
    }
}

fn sweep_2d(pts: &mut [Vec<f64>], reference: &[f64]) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut prev_y = reference[1];
    for p in pts.iter() {
        if p[1] < prev_y {
            area += (reference[0] - p[0]) * (prev_y - p[1]);
            prev_y = p[1];
        }
    }
    area
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_volumes() {
        assert_eq!(hv_exact(&[[0.0, 0.0]], &[1.0, 1.0]), 1.0);
        assert!((hv_exact(&[[0.5, 0.5, 0.5]], &[1.0; 3]) - 0.125).abs() < 1e-15);
        assert!((hv_exact(&[[0.5; 5]], &[1.0; 5]) - 0.5f64.powi(5)).abs() < 1e-15);
        let two = hv_exact(&[[0.0, 0.5], [0.5, 0.0]], &[1.0, 1.0]);
        assert!((two - 0.75).abs() < 1e-15);
        let three = hv_exact(&[[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]], &[1.0; 3]);
        assert!((three - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normalized_protocol() {
        let cfg = HvConfig::new(vec![vec![0.0, 1.1], vec![1.1, 0.0]]).unwrap();
        let empty: [[f64; 2]; 0] = [];
        assert_eq!(hv(&empty, &cfg).unwrap(), 0.0);
        assert!((hv(&[[0.0, 0.0]], &cfg).unwrap() - 1.0).abs() < 1e-15);
        // beyond the box after normalization: discarded
        assert_eq!(hv(&[[1.3, 0.0]], &cfg).unwrap(), 0.0);
        let cfg4 = HvConfig::new(vec![vec![0.0; 4]]).unwrap();
        assert!(matches!(hv(&[[0.0; 4]], &cfg4), Err(Error::UnsupportedDimension(4))));
    }

    #[test]
    fn ideal_nadir_protocol() {
        let front = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        let cfg = HvConfig::with_normalization(front, HvNormalization::IdealNadir).unwrap();
        let v = hv(&[[1.0, 1.0]], &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }
}
