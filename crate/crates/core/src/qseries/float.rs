use serde::{Deserialize, Serialize};

use super::ModelTag;
use crate::error::{MzvError, Result};
use crate::words::Composition;

/// Approximate classical value: the raw partial sum over `m1 ≤ cutoff`, the
/// partial sum plus an asymptotic tail estimate, and a rigorous upper bound on
/// the omitted tail (the exact value lies in `[partial, partial + tail_bound]`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloatEstimate {
    pub partial: f64,
    pub corrected: f64,
    pub tail_bound: f64,
    pub cutoff: usize,
}

impl FloatEstimate {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.partial - 1e-12 && x <= self.partial + self.tail_bound + 1e-12
    }
}

fn check_convergent(parts: &[i64]) -> Result<()> {
    match parts.split_first() {
        Some((&first, rest)) if first >= 2 && rest.iter().all(|&k| k >= 1) => Ok(()),
        Some(_) => Err(MzvError::Inadmissible {
            comp: Composition::new(parts).to_string(),
            model: "classical".into(),
        }),
        None => Ok(()),
    }
}

/// `layers[j][m]` is the nested sum over `m ≥ m_{j+1} > ⋯ > m_n > 0`.
fn layers(parts: &[i64], cutoff: usize) -> Vec<Vec<f64>> {
    let n = parts.len();
    let mut out = vec![vec![0.0; cutoff + 1]; n + 1];
    out[n] = vec![1.0; cutoff + 1];
    for j in (0..n).rev() {
        let mut acc = 0.0;
        let mut comp = 0.0;
        for m in 1..=cutoff {
            let inner = if j + 1 == n { 1.0 } else { out[j + 1][m - 1] };
            let term = inner / (m as f64).powi(parts[j] as i32) - comp;
            let t = acc + term;
            comp = (t - acc) - term;
            acc = t;
            out[j][m] = acc;
        }
    }
    out
}

/// Terms `Σ_i c u^a e^{−b u}` used for the nested tail integral.
type ExpPoly = Vec<(f64, u32, f64)>;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `∫_0^v u^a e^{−b u} du` as a function of `v`.
fn integrate_to(f: &ExpPoly) -> ExpPoly {
    let mut out = Vec::new();
    for &(c, a, b) in f {
        if b == 0.0 {
            out.push((c / f64::from(a + 1), a + 1, 0.0));
        } else {
            let scale = c * factorial(a) / b.powi(a as i32 + 1);
            out.push((scale, 0, 0.0));
            for i in 0..=a {
                out.push((-scale * b.powi(i as i32) / factorial(i), i, b));
            }
        }
    }
    out
}

fn times_exp(f: &ExpPoly, s: f64) -> ExpPoly {
    f.iter().map(|&(c, a, b)| (c, a, b + s)).collect()
}

/// `∫_0^∞ f`; every term must decay.
fn integrate_all(f: &ExpPoly) -> f64 {
    f.iter()
        .map(|&(c, a, b)| c * factorial(a) / b.powi(a as i32 + 1))
        .sum()
}

/// Tail `Σ_{m1 > M} m1^{−k1} Σ_{m1 > m2 > ⋯}` approximated by the nested
/// integral over `M < x_ℓ < ⋯ < x1`, with the sums below `M` frozen at their
/// value at `M`. In logarithmic variables `x = M e^u` each layer contributes
/// `M^{1−k} e^{(1−k)u}`.
fn tail_estimate(parts: &[i64], layers: &[Vec<f64>], cutoff: usize) -> f64 {
    let big_m = cutoff as f64;
    let mut total = 0.0;
    for depth in 1..=parts.len() {
        let s: Vec<f64> = parts[..depth].iter().map(|&k| (k - 1) as f64).collect();
        let mut g: ExpPoly = vec![(1.0, 0, s[depth - 1])];
        for &sj in s[..depth - 1].iter().rev() {
            g = times_exp(&integrate_to(&g), sj);
        }
        let scale = big_m.powf(-s.iter().sum::<f64>());
        let frozen = if depth == parts.len() {
            1.0
        } else {
            layers[depth][cutoff]
        };
        total += frozen * scale * integrate_all(&g);
    }
    total
}

/// Rigorous bound `∫_M^∞ (1 + ln x)^r / (r! x^{k1}) dx` with `r = n − 1`,
/// using `Σ_{m > m2 > ⋯ > mn} Π 1/m_j ≤ H_{m−1}^r / r!` and `H_m ≤ 1 + ln m`.
fn tail_bound(parts: &[i64], cutoff: usize) -> f64 {
    if parts.is_empty() {
        return 0.0;
    }
    let r = (parts.len() - 1) as u32;
    let s = (parts[0] - 1) as f64;
    let l = (cutoff as f64).ln();
    let sum: f64 = (0..=r)
        .map(|i| {
            factorial(r) / factorial(r - i) * (1.0 + l).powi((r - i) as i32) / s.powi(i as i32 + 1)
        })
        .sum();
    (-s * l).exp() * sum / factorial(r)
}

/// Classical multiple zeta value by nested partial summation over `m1 ≤ cutoff`.
pub fn zeta_classical_float(comp: &Composition, cutoff: usize) -> Result<FloatEstimate> {
    check_convergent(comp.parts())?;
    if cutoff < 2 {
        return Err(MzvError::Order(cutoff));
    }
    let parts = comp.parts();
    if parts.is_empty() {
        return Ok(FloatEstimate {
            partial: 1.0,
            corrected: 1.0,
            tail_bound: 0.0,
            cutoff,
        });
    }
    let l = layers(parts, cutoff);
    let partial = l[0][cutoff];
    Ok(FloatEstimate {
        partial,
        corrected: partial + tail_estimate(parts, &l, cutoff),
        tail_bound: tail_bound(parts, cutoff),
        cutoff,
    })
}

/// Evaluation of the q-model at real `q` scaled by `(1 − q)^weight`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitSample {
    pub q: f64,
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub model: String,
    pub comp: String,
    pub target: f64,
    pub samples: Vec<LimitSample>,
    /// Whether `|scaled − target|` decreases along the samples.
    pub approaching: bool,
}

/// `(1 − q)^wt ζ^model(comp)` at real `q`, summing until the outer terms fall
/// below double precision.
fn model_at(model: ModelTag, parts: &[i64], q: f64) -> f64 {
    let n = parts.len();
    let cutoff = ((1e-18f64).ln() / q.ln()).ceil().max(1.0) as usize * (n.max(1));
    let factor = |j: usize, m: usize| {
        let qm = q.powi(m as i32);
        let k = parts[j] as i32;
        let num = match model {
            ModelTag::SZ | ModelTag::SZstar => qm.powi(k),
            ModelTag::BZ => qm.powi(k - 1),
            ModelTag::OOZ if j == 0 => qm,
            ModelTag::OOZ => 1.0,
        };
        num / (1.0 - qm).powi(k)
    };
    let mut inner = vec![1.0; cutoff + 1];
    for j in (0..n).rev() {
        let mut acc = 0.0;
        let mut layer = vec![0.0; cutoff + 1];
        for m in 1..=cutoff {
            let src = if j + 1 == n {
                1.0
            } else if model == ModelTag::SZstar {
                inner[m]
            } else {
                inner[m - 1]
            };
            acc += factor(j, m) * src;
            layer[m] = acc;
        }
        inner = layer;
    }
    let weight: i64 = parts.iter().sum();
    inner[cutoff] * (1.0 - q).powi(weight as i32)
}

/// Real-axis diagnostic of `lim_{q↑1} (1 − q)^wt ζ^model = ζ` at the given
/// sample points.
pub fn limit_scaling_check(model: ModelTag, comp: &Composition, qs: &[f64]) -> Result<LimitReport> {
    model.check(comp.parts())?;
    let target = zeta_classical_float(comp, 100_000)?.corrected;
    let samples: Vec<LimitSample> = qs
        .iter()
        .map(|&q| LimitSample {
            q,
            scaled: model_at(model, comp.parts(), q),
        })
        .collect();
    let approaching = samples
        .windows(2)
        .all(|w| (w[1].scaled - target).abs() <= (w[0].scaled - target).abs());
    Ok(LimitReport {
        model: model.to_string(),
        comp: comp.to_string(),
        target,
        samples,
        approaching,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn est(p: &[i64]) -> FloatEstimate {
        zeta_classical_float(&Composition::new(p), 100_000).unwrap()
    }

    #[test]
    fn zeta_two() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let e = est(&[2]);
        assert!((e.partial - 1.644934).abs() < 1e-5);
        assert!(e.contains(z2));
        assert!((e.corrected - z2).abs() < 1e-9);
    }

    #[test]
    fn euler_and_depth_three_relations() {
        let (a, b) = (est(&[2, 1]), est(&[3]));
        assert!((a.partial - b.partial).abs() <= a.tail_bound + b.tail_bound);
        assert!((a.corrected - b.corrected).abs() < 1e-8);
        let (a, b) = (est(&[2, 1, 1]), est(&[4]));
        assert!((a.partial - b.partial).abs() <= a.tail_bound + b.tail_bound);
        assert!((a.corrected - b.corrected).abs() < 1e-7);
        assert!(zeta_classical_float(&Composition::new([1, 2]), 10).is_err());
    }

    #[test]
    fn limit_trend() {
        let r =
            limit_scaling_check(ModelTag::OOZ, &Composition::new([2]), &[0.5, 0.7, 0.9]).unwrap();
        assert!(r.approaching);
        assert!(r.samples.iter().all(|s| s.scaled.is_finite()));
        let r = limit_scaling_check(ModelTag::SZ, &Composition::new([2]), &[0.5]).unwrap();
        assert!(r.samples[0].scaled > 0.0);
    }
}
