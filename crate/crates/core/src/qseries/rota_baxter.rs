use num_bigint::BigInt;
use num_traits::Zero;

use super::QPoly;
use crate::error::{MzvError, Result};
use crate::words::Composition;

/// Truncated series in `t` and `q`, indexed `[t-degree][q-degree]`.
struct Bivariate {
    order: usize,
    c: Vec<Vec<BigInt>>,
}

impl Bivariate {
    /// `y(t) = t / (1 − t)`.
    fn y(order: usize) -> Bivariate {
        let mut c = vec![vec![BigInt::zero(); order + 1]; order + 1];
        for row in c.iter_mut().skip(1) {
            row[0] = BigInt::from(1);
        }
        Bivariate { order, c }
    }

    /// Multiplication by `y(t)`: coefficient of `t^a` becomes `Σ_{a' < a}`.
    fn times_y(&mut self) {
        let mut running = vec![BigInt::zero(); self.order + 1];
        for a in 0..=self.order {
            let row = std::mem::replace(&mut self.c[a], running.clone());
            for (r, v) in running.iter_mut().zip(row) {
                *r += v;
            }
        }
    }

    /// `P[f](t) = Σ_{m ≥ 0} f(q^m t)`, sending `t^a q^b` to `t^a q^b / (1 − q^a)`.
    fn rota_baxter(&mut self) {
        for a in 1..=self.order {
            let row = &mut self.c[a];
            for b in a..=self.order {
                let prev = row[b - a].clone();
                row[b] += prev;
            }
        }
    }

    /// Substitution `t = q`.
    fn at_t_equals_q(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.order + 1];
        for (a, row) in self.c.iter().enumerate() {
            for (b, v) in row.iter().enumerate().take(self.order + 1 - a) {
                out[a + b] += v;
            }
        }
        out
    }
}

/// `ζ^OOZ(k1, ..., kn) = P^{k1}[y P^{k2}[y ⋯ P^{kn}[y]]](t)` at `t = q`,
/// computed on truncations of total `t`- and `q`-degree at most `order`.
pub fn rota_baxter_eval_ooz(comp: &Composition, order: usize) -> Result<QPoly> {
    if order < 1 {
        return Err(MzvError::Order(order));
    }
    if let Some(&k) = comp.parts().iter().find(|&&k| k < 0) {
        return Err(MzvError::NegativeExponent(k));
    }
    let Some((&last, rest)) = comp.parts().split_last() else {
        return QPoly::one(order);
    };
    let mut f = Bivariate::y(order);
    for _ in 0..last {
        f.rota_baxter();
    }
    for &k in rest.iter().rev() {
        f.times_y();
        for _ in 0..k {
            f.rota_baxter();
        }
    }
    QPoly::from_integers(order, f.at_t_equals_q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::zeta_ooz;

    #[test]
    fn agrees_with_nested_sum() {
        for parts in [vec![3], vec![2, 1], vec![1, 0, 2], vec![0], vec![]] {
            let c = Composition::new(parts);
            assert_eq!(
                rota_baxter_eval_ooz(&c, 10).unwrap(),
                zeta_ooz(&c, 10).unwrap(),
                "{c}"
            );
        }
    }

    #[test]
    fn single_one_counts_divisors() {
        let v = rota_baxter_eval_ooz(&Composition::new([1]), 10).unwrap();
        let divisors: Vec<usize> = (1..=10)
            .map(|n| (1..=n).filter(|d| n % d == 0).count())
            .collect();
        for (n, d) in divisors.iter().enumerate() {
            assert_eq!(v.coeff(n + 1), crate::linear::rational(*d as i64));
        }
        assert!(rota_baxter_eval_ooz(&Composition::new([2, -1]), 5).is_err());
    }
}
