//! Gauss-Legendre rules and their mappings onto the integration domains the
//! verification checks need.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_order` from the Tricomi-style initial guess.
    ///
    /// Panics if `order == 0`.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be >= 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // x descends from near +1; store ascending and mirror
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// How the base rule on `[-1, 1]` is carried onto the physical domain.
///
/// With `s = (1 + t) / 2 ∈ [0, 1]`:
/// - `Finite`: `x = a + (b - a) s`
/// - `Rational`: `x = scale · s / (1 - s)` on `[0, ∞)`
/// - `Tangent`: `x = scale · tan(π s / 2)` on `[0, ∞)`
/// - `Composite`: `panels` copies of the base rule tiling `[a, b]` (equal
///   widths unless built by [`QuadratureRule::on_panels`])
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mapping {
    Finite { a: f64, b: f64 },
    Rational { scale: f64 },
    Tangent { scale: f64 },
    Composite { a: f64, b: f64, panels: usize },
}

/// Physical nodes and weights of a mapped Gauss-Legendre rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    mapping: Mapping,
}

impl QuadratureRule {
    pub fn new(base: GaussLegendre, mapping: Mapping) -> Self {
        let mut nodes = Vec::with_capacity(base.order());
        let mut weights = Vec::with_capacity(base.order());
        match mapping {
            Mapping::Finite { a, b } => {
                let half = 0.5 * (b - a);
                for (t, w) in base.nodes.iter().zip(&base.weights) {
                    nodes.push(a + half * (1.0 + t));
                    weights.push(half * w);
                }
            }
            Mapping::Rational { scale } => {
                for (t, w) in base.nodes.iter().zip(&base.weights) {
                    let s = 0.5 * (1.0 + t);
                    let one_minus = 1.0 - s;
                    nodes.push(scale * s / one_minus);
                    weights.push(0.5 * w * scale / (one_minus * one_minus));
                }
            }
            Mapping::Tangent { scale } => {
                for (t, w) in base.nodes.iter().zip(&base.weights) {
                    let s = 0.5 * (1.0 + t);
                    let arg = 0.5 * PI * s;
                    let c = arg.cos();
                    nodes.push(scale * arg.tan());
                    weights.push(0.5 * w * scale * 0.5 * PI / (c * c));
                }
            }
            Mapping::Composite { a, b, panels } => {
                let panels = panels.max(1);
                let width = (b - a) / panels as f64;
                nodes.reserve(base.order() * panels);
                for k in 0..panels {
                    let lo = a + width * k as f64;
                    for (t, w) in base.nodes.iter().zip(&base.weights) {
                        nodes.push(lo + 0.5 * width * (1.0 + t));
                        weights.push(0.5 * width * w);
                    }
                }
            }
        }
        Self {
            nodes,
            weights,
            mapping,
        }
    }

    /// Gauss-Legendre of `order` on `[a, b]`.
    pub fn finite(order: usize, a: f64, b: f64) -> Self {
        Self::new(GaussLegendre::new(order), Mapping::Finite { a, b })
    }

    /// `panels` copies of an `order`-point rule tiling `[a, b]`.
    pub fn composite(order: usize, a: f64, b: f64, panels: usize) -> Self {
        Self::new(GaussLegendre::new(order), Mapping::Composite { a, b, panels })
    }

    /// One copy of `base` on each interval between consecutive `edges`.
    pub fn on_panels(base: &GaussLegendre, edges: &[f64]) -> Self {
        let mut nodes = Vec::with_capacity(base.order() * edges.len());
        let mut weights = Vec::with_capacity(base.order() * edges.len());
        for pair in edges.windows(2) {
            let half = 0.5 * (pair[1] - pair[0]);
            for (t, w) in base.nodes.iter().zip(&base.weights) {
                nodes.push(pair[0] + half * (1.0 + t));
                weights.push(half * w);
            }
        }
        let a = edges.first().copied().unwrap_or(0.0);
        let b = edges.last().copied().unwrap_or(a);
        Self {
            nodes,
            weights,
            mapping: Mapping::Composite {
                a,
                b,
                panels: edges.len().saturating_sub(1),
            },
        }
    }

    /// `order`-point rule on `[0, ∞)` through `x = scale · s / (1 - s)`.
    pub fn semi_infinite(order: usize, scale: f64) -> Self {
        Self::new(GaussLegendre::new(order), Mapping::Rational { scale })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mapping(&self) -> Mapping {
        self.mapping
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * f(x) })
            .sum()
    }
}
