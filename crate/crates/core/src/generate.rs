//! Deterministic graph families used as test corpora.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of G(n, p) draws attempted before giving up on connectivity.
pub const GNP_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Two cliques `K_a` and `K_b` joined by one bridge edge `(a-1, a)`.
    Barbell(usize, usize),
    /// Clique `K_k` whose last vertex starts a path of `t` extra vertices.
    Lollipop(usize, usize),
    Gnp(usize, f64),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Barbell(..) => "barbell",
            Family::Lollipop(..) => "lollipop",
            Family::Gnp(..) => "gnp",
        }
    }
}

fn need_at_least_two(what: &str, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "{what} needs k >= 2, got {k}"
        )));
    }
    Ok(())
}

fn clique(offset: usize, k: usize, edges: &mut Vec<(usize, usize, f64)>) {
    for u in 0..k {
        for v in u + 1..k {
            edges.push((offset + u, offset + v, 1.0));
        }
    }
}

/// Builds a member of `family`. Only `Gnp` consumes the seed.
pub fn generate(family: Family, seed: u64) -> Result<Graph> {
    let mut edges = Vec::new();
    match family {
        Family::Path(k) => {
            need_at_least_two("path", k)?;
            edges.extend((0..k - 1).map(|i| (i, i + 1, 1.0)));
            Graph::new(k, &edges)
        }
        Family::Cycle(k) => {
            need_at_least_two("cycle", k)?;
            edges.extend((0..k).map(|i| (i, (i + 1) % k, 1.0)));
            Graph::new(k, &edges)
        }
        Family::Complete(k) => {
            need_at_least_two("complete", k)?;
            clique(0, k, &mut edges);
            Graph::new(k, &edges)
        }
        Family::Barbell(a, b) => {
            need_at_least_two("barbell", a)?;
            need_at_least_two("barbell", b)?;
            clique(0, a, &mut edges);
            clique(a, b, &mut edges);
            edges.push((a - 1, a, 1.0));
            Graph::new(a + b, &edges)
        }
        Family::Lollipop(k, t) => {
            need_at_least_two("lollipop", k)?;
            clique(0, k, &mut edges);
            edges.extend((0..t).map(|i| (k - 1 + i, k + i, 1.0)));
            Graph::new(k + t, &edges)
        }
        Family::Gnp(n, p) => {
            need_at_least_two("gnp", n)?;
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "gnp needs p in (0, 1], got {p}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..GNP_MAX_ATTEMPTS {
                edges.clear();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen::<f64>() < p {
                            edges.push((u, v, 1.0));
                        }
                    }
                }
                let g = Graph::new(n, &edges)?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
            Err(Error::NotConnected(GNP_MAX_ATTEMPTS))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let c6 = generate(Family::Cycle(6), 0).unwrap();
        assert_eq!((c6.n(), c6.m(), c6.total_volume()), (6, 6, 12.0));

        let bb = generate(Family::Barbell(3, 3), 0).unwrap();
        assert_eq!((bb.n(), bb.m(), bb.total_volume()), (6, 7, 14.0));

        let lp = generate(Family::Lollipop(6, 2), 0).unwrap();
        assert_eq!((lp.n(), lp.total_volume()), (8, 34.0));
        assert_eq!(lp.degrees(), &[5.0, 5.0, 5.0, 5.0, 5.0, 6.0, 2.0, 1.0]);

        let p4 = generate(Family::Path(4), 0).unwrap();
        assert_eq!(p4.degrees(), &[1.0, 2.0, 2.0, 1.0]);

        let k5 = generate(Family::Complete(5), 0).unwrap();
        assert_eq!(k5.m(), 10);
    }

    #[test]
    fn degenerate_parameters_rejected() {
        assert!(matches!(
            generate(Family::Path(1), 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(Family::Barbell(1, 3), 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(Family::Gnp(5, 0.0), 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(Family::Gnp(5, 1.5), 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn gnp_is_deterministic_and_connected() {
        let a = generate(Family::Gnp(10, 0.5), 7).unwrap();
        let b = generate(Family::Gnp(10, 0.5), 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert_eq!(generate(Family::Gnp(6, 1.0), 3).unwrap().m(), 15);
    }

    #[test]
    fn gnp_gives_up_when_connectivity_is_hopeless() {
        assert_eq!(
            generate(Family::Gnp(40, 1e-6), 1),
            Err(Error::NotConnected(GNP_MAX_ATTEMPTS))
        );
    }
}
