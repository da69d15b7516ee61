//! Pareto dominance helpers (minimization).

use std::cmp::Ordering;

/// `a` is no worse everywhere and strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// `a` is no worse than `b` in every objective.
pub fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Indices of the non-dominated rows, in input order. Exact duplicates are
/// all kept.
pub fn nondominated_indices<R: AsRef<[f64]>>(points: &[R]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    if points[0].as_ref().len() == 2 {
        return nondominated_2d(points);
    }
    (0..points.len())
        .filter(|&i| {
            let p = points[i].as_ref();
            !points.iter().any(|q| dominates(q.as_ref(), p))
        })
        .collect()
}

fn nondominated_2d<R: AsRef<[f64]>>(points: &[R]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        let (pa, pb) = (points[a].as_ref(), points[b].as_ref());
        pa[0].total_cmp(&pb[0]).then(pa[1].total_cmp(&pb[1]))
    });
    let mut keep = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    for i in idx {
        let p = points[i].as_ref();
        match best {
            None => {
                keep.push(i);
                best = Some((p[0], p[1]));
            }
            Some((bx, by)) => {
                if p[1] < by {
                    keep.push(i);
                    best = Some((p[0], p[1]));
                } else if p[1] == by && p[0] == bx {
                    keep.push(i);
                }
            }
        }
    }
    keep.sort_unstable();
    keep
}

/// Keep the non-dominated rows, dropping exact duplicates.
pub fn nondominated_unique(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let keep = nondominated_indices(&points);
    let mut out: Vec<Vec<f64>> = keep.into_iter().map(|i| points[i].clone()).collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    out.dedup();
    out
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Front number (0-based) of each member under the supplied strict dominance
/// relation. Deb's fast non-dominated sort.
pub fn front_numbers(n: usize, dom: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut dominated_by = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dom(i, j) {
                dominates_list[i].push(j);
                dominated_by[j] += 1;
            } else if dom(j, i) {
                dominates_list[j].push(i);
                dominated_by[i] += 1;
            }
        }
    }
    let mut front = vec![usize::MAX; n];
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by[i] == 0).collect();
    let mut k = 0;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            front[i] = k;
            for &j in &dominates_list[i] {
                dominated_by[j] -= 1;
                if dominated_by[j] == 0 {
                    next.push(j);
                }
            }
        }
        current = next;
        k += 1;
    }
    front
}

/// NSGA-II crowding distance of the rows in `members` (indices into `objs`).
pub fn crowding_distance<R: AsRef<[f64]>>(objs: &[R], members: &[usize]) -> Vec<f64> {
    let k = members.len();
    let mut dist = vec![0.0; k];
    if k == 0 {
        return dist;
    }
    let m = objs[members[0]].as_ref().len();
    for j in 0..m {
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| objs[members[a]].as_ref()[j].total_cmp(&objs[members[b]].as_ref()[j]));
        let lo = objs[members[order[0]]].as_ref()[j];
        let hi = objs[members[order[k - 1]]].as_ref()[j];
        dist[order[0]] = f64::INFINITY;
        dist[order[k - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for w in 1..k.saturating_sub(1) {
            let prev = objs[members[order[w - 1]]].as_ref()[j];
            let next = objs[members[order[w + 1]]].as_ref()[j];
            dist[order[w]] += (next - prev) / span;
        }
    }
    dist
}
