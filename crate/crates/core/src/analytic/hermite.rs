use num_traits::Num;

use super::jet::Jet;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// The unique polynomial of degree below `sum(order_i + 1)` whose jet at each
/// node's base equals that node, via confluent divided differences.
pub fn hermite_interpolate<T: Num + Clone + PartialEq>(nodes: &[Jet<T>]) -> Result<Polynomial<T>> {
    for (i, a) in nodes.iter().enumerate() {
        if nodes[i + 1..].iter().any(|b| b.base == a.base) {
            return Err(Error::DuplicateBasePoints);
        }
    }
    // z_k with each base repeated order+1 times; owner[k] indexes the node
    let mut z = Vec::new();
    let mut owner = Vec::new();
    for (i, j) in nodes.iter().enumerate() {
        for _ in 0..=j.order() {
            z.push(j.base.clone());
            owner.push(i);
        }
    }
    let m = z.len();
    // table[k] holds f[z_k .. z_{k+level}] for the current level
    let mut table: Vec<T> = (0..m).map(|k| nodes[owner[k]].coeffs[0].clone()).collect();
    let mut newton = Vec::with_capacity(m);
    if m > 0 {
        newton.push(table[0].clone());
    }
    for level in 1..m {
        let mut next = Vec::with_capacity(m - level);
        for k in 0..m - level {
            let v = if owner[k] == owner[k + level] {
                nodes[owner[k]].coeffs[level].clone()
            } else {
                (table[k + 1].clone() - table[k].clone()) / (z[k + level].clone() - z[k].clone())
            };
            next.push(v);
        }
        newton.push(next[0].clone());
        table = next;
    }
    // Horner on the Newton form
    let mut p = Polynomial::zero();
    for k in (0..m).rev() {
        p = p
            .mul(&Polynomial::linear(z[k].clone()))
            .add(&Polynomial::constant(newton[k].clone()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn single_node_line() {
        let p = hermite_interpolate(&[Jet::new(q(0, 1), vec![q(1, 1), q(2, 1)])]).unwrap();
        assert_eq!(p.coeffs(), &[q(1, 1), q(2, 1)]);
    }

    #[test]
    fn zero_values_give_zero() {
        let p = hermite_interpolate(&[
            Jet::new(q(0, 1), vec![q(0, 1)]),
            Jet::new(q(1, 1), vec![q(0, 1)]),
        ])
        .unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn duplicate_bases() {
        let j = Jet::new(q(2, 1), vec![q(1, 1)]);
        assert_eq!(hermite_interpolate(&[j.clone(), j]).unwrap_err(), Error::DuplicateBasePoints);
    }

    #[test]
    fn random_jets_re_extract_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let bases = [q(-1, 2), q(0, 1), q(3, 1)];
            let nodes: Vec<Jet<BigRational>> = bases
                .iter()
                .map(|b| {
                    let order = rng.gen_range(0..=2);
                    Jet::new(
                        b.clone(),
                        (0..=order).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect(),
                    )
                })
                .collect();
            let p = hermite_interpolate(&nodes).unwrap();
            let total: usize = nodes.iter().map(|n| n.order() + 1).sum();
            assert!(p.degree().map_or(true, |d| d < total));
            for n in &nodes {
                let t = p.taylor_at(&n.base, n.order());
                assert_eq!(t, n.coeffs);
            }
            assert!(!nodes.is_empty() || p.coeffs().iter().all(|c| c.is_zero()));
        }
    }
}
