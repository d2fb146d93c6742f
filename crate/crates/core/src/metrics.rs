//! Convergence metrics: inverted generational distance and average
//! convergence rate.

use crate::error::{Error, Result};
use crate::problem::{dominates, ObjectiveVector};

/// Denominator guard in [`acr`].
pub const ACR_EPS: f64 = 1e-12;

/// Mean over reference points of the distance to the nearest obtained point,
/// after scaling each axis by the reference set's extent. Axes along which
/// the reference has zero extent are dropped.
pub fn igd(obtained: &[Vec<f64>], reference: &[Vec<f64>]) -> Result<f64> {
    if obtained.is_empty() || reference.is_empty() {
        return Err(Error::Metric("igd needs non-empty obtained and reference sets".into()));
    }
    let dim = reference[0].len();
    if let Some(bad) = obtained.iter().chain(reference).find(|p| p.len() != dim) {
        return Err(Error::Dimension {
            expected: dim,
            got: bad.len(),
        });
    }
    let axes: Vec<(usize, f64, f64)> = (0..dim)
        .filter_map(|k| {
            let (lo, hi) = reference
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            (hi > lo).then_some((k, lo, hi - lo))
        })
        .collect();
    let norm = |p: &[f64]| -> Vec<f64> { axes.iter().map(|&(k, lo, ext)| (p[k] - lo) / ext).collect() };
    let obt: Vec<Vec<f64>> = obtained.iter().map(|p| norm(p)).collect();
    let total: f64 = reference
        .iter()
        .map(|r| {
            let r = norm(r);
            obt.iter()
                .map(|o| r.iter().zip(o).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

fn as_points(objs: &[ObjectiveVector]) -> Vec<Vec<f64>> {
    objs.iter().map(|o| vec![o.f1, o.f2, o.f3]).collect()
}

/// [`igd`] over `(f1, f2, f3)`.
pub fn igd_objectives(obtained: &[ObjectiveVector], reference: &[ObjectiveVector]) -> Result<f64> {
    igd(&as_points(obtained), &as_points(reference))
}

/// IGD of every snapshot against one reference front.
pub fn igd_series(snapshots: &[Vec<ObjectiveVector>], reference: &[ObjectiveVector]) -> Result<Vec<f64>> {
    let reference = as_points(reference);
    snapshots.iter().map(|s| igd(&as_points(s), &reference)).collect()
}

/// Non-dominated union of several archives, identical vectors kept once.
/// Order follows first appearance.
pub fn reference_front<'a>(sets: impl IntoIterator<Item = &'a [ObjectiveVector]>) -> Vec<ObjectiveVector> {
    let mut pool: Vec<ObjectiveVector> = Vec::new();
    for o in sets.into_iter().flatten() {
        if !pool.contains(o) {
            pool.push(*o);
        }
    }
    pool.iter()
        .filter(|a| !pool.iter().any(|b| dominates(b, a)))
        .copied()
        .collect()
}

/// Index of the entry closest to the ideal point once each minimized
/// objective is scaled to `[0, 1]`. Feasible entries are preferred.
pub fn knee_index(objs: &[ObjectiveVector]) -> Option<usize> {
    let any_feasible = objs.iter().any(|o| o.is_feasible());
    let pool: Vec<usize> = (0..objs.len())
        .filter(|&i| !any_feasible || objs[i].is_feasible())
        .collect();
    let lo: [f64; 3] = std::array::from_fn(|k| pool.iter().map(|&i| objs[i].minimized()[k]).fold(f64::INFINITY, f64::min));
    let hi: [f64; 3] =
        std::array::from_fn(|k| pool.iter().map(|&i| objs[i].minimized()[k]).fold(f64::NEG_INFINITY, f64::max));
    let dist = |i: usize| -> f64 {
        let m = objs[i].minimized();
        (0..3)
            .filter(|&k| hi[k] > lo[k])
            .map(|k| ((m[k] - lo[k]) / (hi[k] - lo[k])).powi(2))
            .sum()
    };
    pool.into_iter().min_by(|&a, &b| dist(a).total_cmp(&dist(b)))
}

/// `|b_t - b_(t-1)| / (|b_1 - b_T| + eps)` per objective for `t = 2..=T`.
pub fn acr(best: &[[f64; 3]]) -> Result<Vec<[f64; 3]>> {
    if best.len() < 2 {
        return Err(Error::Metric(format!(
            "acr needs at least 2 iterations, got {}",
            best.len()
        )));
    }
    let first = best[0];
    let last = best[best.len() - 1];
    let denom: [f64; 3] = std::array::from_fn(|k| (first[k] - last[k]).abs() + ACR_EPS);
    Ok(best
        .windows(2)
        .map(|w| std::array::from_fn(|k| (w[1][k] - w[0][k]).abs() / denom[k]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(v: &[&[f64]]) -> Vec<Vec<f64>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn identical_sets_have_zero_igd() {
        let r = pts(&[&[0.0, 3.0], &[1.0, 2.0], &[4.0, 0.0]]);
        assert_eq!(igd(&r, &r).unwrap(), 0.0);
    }

    #[test]
    fn two_point_geometry() {
        let r = pts(&[&[0.0, 0.0], &[1.0, 1.0]]);
        let o = pts(&[&[0.0, 0.0]]);
        let v = igd(&o, &r).unwrap();
        assert!((v - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn flat_axis_is_dropped() {
        let r = pts(&[&[0.0, 5.0], &[2.0, 5.0]]);
        let o = pts(&[&[0.0, 100.0]]);
        // Only the first axis counts: distances 0 and 1.
        assert!((igd(&o, &r).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_or_ragged_inputs_fail() {
        let r = pts(&[&[0.0, 1.0]]);
        assert!(igd(&[], &r).is_err());
        assert!(igd(&r, &[]).is_err());
        assert!(igd(&pts(&[&[0.0]]), &r).is_err());
    }

    // Straight double loop with explicit min/max scans.
    fn igd_oracle(o: &[Vec<f64>], r: &[Vec<f64>]) -> f64 {
        let d = r[0].len();
        let mut lo = vec![f64::MAX; d];
        let mut hi = vec![f64::MIN; d];
        for p in r {
            for k in 0..d {
                if p[k] < lo[k] {
                    lo[k] = p[k];
                }
                if p[k] > hi[k] {
                    hi[k] = p[k];
                }
            }
        }
        let mut sum = 0.0;
        for p in r {
            let mut best = f64::MAX;
            for q in o {
                let mut s = 0.0;
                for k in 0..d {
                    if hi[k] > lo[k] {
                        let a = (p[k] - lo[k]) / (hi[k] - lo[k]);
                        let b = (q[k] - lo[k]) / (hi[k] - lo[k]);
                        s += (a - b) * (a - b);
                    }
                }
                if s.sqrt() < best {
                    best = s.sqrt();
                }
            }
            sum += best;
        }
        sum / r.len() as f64
    }

    #[test]
    fn random_sets_match_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let mut gen = |n| -> Vec<Vec<f64>> {
                (0..n)
                    .map(|_| (0..3).map(|_| rng.random_range(-50.0..50.0)).collect())
                    .collect()
            };
            let o = gen(20);
            let r = gen(20);
            assert!((igd(&o, &r).unwrap() - igd_oracle(&o, &r)).abs() < 1e-12);
        }
    }

    fn point() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0..10.0f64, 3)
    }

    proptest! {
        #[test]
        fn adding_a_point_never_raises_igd(
            o in prop::collection::vec(point(), 1..10),
            r in prop::collection::vec(point(), 1..10),
            extra in point(),
        ) {
            let before = igd(&o, &r).unwrap();
            let mut more = o.clone();
            more.push(extra);
            prop_assert!(igd(&more, &r).unwrap() <= before + 1e-12);
        }

        #[test]
        fn superset_of_reference_scores_zero(
            r in prop::collection::vec(point(), 1..10),
            extra in prop::collection::vec(point(), 0..5),
        ) {
            let mut o = extra.clone();
            o.extend(r.iter().cloned());
            prop_assert!(igd(&o, &r).unwrap().abs() < 1e-12);
        }

        #[test]
        fn acr_matches_direct_formula(
            steps in prop::collection::vec(prop::array::uniform3(0.0..5.0f64), 2..30),
        ) {
            // Monotone series built from non-negative increments.
            let mut best = vec![[0.0; 3]];
            for s in &steps {
                let b = *best.last().unwrap();
                best.push([b[0] + s[0], b[1] - s[1], b[2] - s[2]]);
            }
            let got = acr(&best).unwrap();
            let t = best.len();
            for (i, row) in got.iter().enumerate() {
                for k in 0..3 {
                    let want = (best[i + 1][k] - best[i][k]).abs()
                        / ((best[0][k] - best[t - 1][k]).abs() + ACR_EPS);
                    prop_assert_eq!(row[k], want);
                }
            }
        }
    }

    #[test]
    fn constant_series_has_zero_acr() {
        let a = acr(&[[1.0, 2.0, 3.0]; 5]).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn linear_series_has_flat_acr() {
        let t = 11;
        let best: Vec<[f64; 3]> = (0..t).map(|i| [i as f64, -2.0 * i as f64, 0.5 * i as f64]).collect();
        for row in acr(&best).unwrap() {
            for v in row {
                assert!((v - 1.0 / (t - 1) as f64).abs() < 1e-9);
            }
        }
        assert!(acr(&best[..1]).is_err());
    }

    #[test]
    fn knee_is_closest_to_ideal() {
        let objs = [
            ObjectiveVector::new(10.0, 0.0, 0.0, 0.0),
            ObjectiveVector::new(0.0, -10.0, 0.0, 0.0),
            ObjectiveVector::new(8.0, -8.0, 0.0, 0.0),
            ObjectiveVector::new(20.0, -20.0, 0.0, 1.0),
        ];
        assert_eq!(knee_index(&objs), Some(2));
        assert_eq!(knee_index(&[]), None);
    }

    #[test]
    fn reference_front_drops_dominated_and_duplicates() {
        let a = ObjectiveVector::new(10.0, -5.0, 100.0, 0.0);
        let b = ObjectiveVector::new(5.0, -10.0, 100.0, 0.0);
        let worse = ObjectiveVector::new(4.0, -4.0, 200.0, 0.0);
        let s1 = vec![a, worse];
        let s2 = vec![b, a];
        let front = reference_front([s1.as_slice(), s2.as_slice()]);
        assert_eq!(front, vec![a, b]);
    }
}
