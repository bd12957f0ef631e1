use crate::error::{Result, ScatterError};
use crate::instance::{at_least, scatter, Instance, Tour};

/// Result of [`normalize_tour`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub tour: Tour,
    /// Number of 2-exchanges performed.
    pub swaps: usize,
}

/// Exchange argument around a low-degree point `p`.
///
/// Given a tour with scatter at least `ell`, repeatedly takes an edge
/// `{x, y}` with both endpoints at distance `>= 2 ell` from `p` and an edge
/// `{z, t}` inside the open radius-`ell` ball around `p`, and 2-exchanges
/// them. The new edges join a far point to a ball point, so they have length
/// `>= ell` and are never offending themselves; each swap removes one
/// offending edge.
pub fn normalize_tour(instance: &Instance, tour: &Tour, ell: f64, p: usize) -> Result<Normalization> {
    let n = instance.n();
    if p >= n {
        return Err(ScatterError::IndexOutOfRange { index: p, len: n });
    }
    let s = scatter(instance, tour)?;
    if !at_least(s, ell) {
        return Err(ScatterError::Precondition(format!(
            "tour scatter {s} is below the threshold {ell}"
        )));
    }
    let inside: Vec<bool> = (0..n).map(|x| !at_least(instance.dist(p, x), ell)).collect();
    let ball = inside.iter().filter(|&&b| b).count();
    if 2 * ball <= n {
        return Err(ScatterError::Precondition(format!(
            "point {p} is not low-degree: its radius-{ell} ball holds {ball} of {n} points"
        )));
    }
    let far: Vec<bool> = (0..n).map(|x| at_least(instance.dist(p, x), 2.0 * ell)).collect();

    let mut order = tour.order().to_vec();
    let mut swaps = 0;
    while let Some(i) = (0..n).find(|&i| far[order[i]] && far[order[(i + 1) % n]]) {
        // rotate so the offending edge is (order[0], order[1])
        order.rotate_left(i);
        let j = (2..n)
            .find(|&j| inside[order[j]] && inside[order[(j + 1) % n]])
            .ok_or_else(|| {
                ScatterError::Contract(format!(
                    "no tour edge lies inside the ball around {p}"
                ))
            })?;
        // edges (x, y) = (o[0], o[1]) and (z, t) = (o[j], o[j+1]) become
        // (x, z) and (y, t)
        order[1..=j].reverse();
        swaps += 1;
        if swaps > n {
            return Err(ScatterError::Contract("normalization exceeded n swaps".into()));
        }
    }
    Ok(Normalization {
        tour: Tour::new(order)?,
        swaps,
    })
}
