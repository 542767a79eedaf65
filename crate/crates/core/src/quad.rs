//! Composite Simpson rule on a uniform grid.

/// Nodes and weights of the composite Simpson rule with `points` nodes on `[lo, hi]`.
///
/// `points` must be odd and at least 3.
#[derive(Debug, Clone)]
pub struct Simpson {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Simpson {
    pub fn new(lo: f64, hi: f64, points: usize) -> Self {
        assert!(points >= 3 && points % 2 == 1, "Simpson needs an odd node count >= 3");
        let h = (hi - lo) / (points - 1) as f64;
        let nodes = (0..points).map(|i| lo + h * i as f64).collect();
        let weights = (0..points)
            .map(|i| {
                let c = if i == 0 || i == points - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        Simpson { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}
