//! Frontier of (cost, score) points: lower cost and higher score are better.

use crate::error::{Error, Result};

use super::point::ScalePoint;

/// Splits `points` into (frontier, dominated).
///
/// The frontier is sorted by ascending x. Exact (x, score) duplicates keep
/// the earliest input point on the frontier; later copies go to the
/// dominated side.
pub fn pareto_split(points: &[ScalePoint]) -> Result<(Vec<ScalePoint>, Vec<ScalePoint>)> {
    if points.is_empty() {
        return Err(Error::Empty("pareto frontier of no points"));
    }
    if let Some(p) = points.iter().find(|p| p.x.is_nan() || p.score.is_nan()) {
        return Err(Error::Domain(format!(
            "point `{}` has a NaN coordinate",
            p.label
        )));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    // stable: equal (x, score) stay in input order
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&points[a], &points[b]);
        pa.x.total_cmp(&pb.x).then(pb.score.total_cmp(&pa.score))
    });

    let mut frontier = Vec::new();
    let mut dominated = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for i in order {
        let p = &points[i];
        if p.score > best {
            best = p.score;
            frontier.push(p.clone());
        } else {
            dominated.push(p.clone());
        }
    }
    Ok((frontier, dominated))
}

/// Non-dominated points, ascending in x.
pub fn pareto_frontier(points: &[ScalePoint]) -> Result<Vec<ScalePoint>> {
    pareto_split(points).map(|(f, _)| f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<ScalePoint> {
        v.iter()
            .enumerate()
            .map(|(i, &(x, s))| ScalePoint {
                label: format!("p{i}"),
                x,
                score: s,
            })
            .collect()
    }

    fn coords(v: &[ScalePoint]) -> Vec<(f64, f64)> {
        v.iter().map(|p| (p.x, p.score)).collect()
    }

    #[test]
    fn singleton() {
        let f = pareto_frontier(&pts(&[(1.0, 0.5)])).unwrap();
        assert_eq!(coords(&f), vec![(1.0, 0.5)]);
    }

    #[test]
    fn drops_dominated_middle_point() {
        let f = pareto_frontier(&pts(&[(1.0, 0.5), (2.0, 0.4), (3.0, 0.6)])).unwrap();
        assert_eq!(coords(&f), vec![(1.0, 0.5), (3.0, 0.6)]);
    }

    #[test]
    fn duplicates_keep_first_label() {
        let mut p = pts(&[(2.0, 0.7), (1.0, 0.3), (2.0, 0.7)]);
        p[2].label = "second".into();
        let f = pareto_frontier(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[1].label, "p0");
    }

    #[test]
    fn equal_score_higher_cost_is_dominated() {
        let f = pareto_frontier(&pts(&[(1.0, 0.5), (2.0, 0.5)])).unwrap();
        assert_eq!(coords(&f), vec![(1.0, 0.5)]);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(pareto_frontier(&[]), Err(Error::Empty(_))));
    }
}
