//! Test-only oracles. None of these call into the firing or reduction code
//! they are used to check.

#![allow(dead_code)]

use chipfire::{Divisor, Graph};
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

/// Membership in the integer image of the Laplacian, via the exact inverse of
/// the reduced Laplacian (row and column 0 deleted).
pub struct LaplacianOracle {
    inverse: Vec<Vec<BigRational>>,
}

impl LaplacianOracle {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count() - 1;
        let entry = |r: usize, c: usize| -> BigRational {
            let (u, v) = (r + 1, c + 1);
            let value = if u == v {
                g.neighbors(u).len() as i64
            } else if g.adjacent(u, v) {
                -1
            } else {
                0
            };
            BigRational::from_integer(BigInt::from(value))
        };
        // Gauss-Jordan on [L' | I]
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..n).map(|c| entry(r, c)).collect();
                row.extend((0..n).map(|c| {
                    if c == r {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("nonsingular");
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        let inverse = a.into_iter().map(|row| row[n..].to_vec()).collect();
        Self { inverse }
    }

    pub fn in_image(&self, diff: &[i64]) -> bool {
        if diff.iter().sum::<i64>() != 0 {
            return false;
        }
        let rhs: Vec<BigRational> = diff[1..]
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        self.inverse.iter().all(|row| {
            let x: BigRational = row
                .iter()
                .zip(&rhs)
                .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
            x.is_integer()
        })
    }

    pub fn equivalent(&self, a: &Divisor, b: &Divisor) -> bool {
        let diff: Vec<i64> = a.values.iter().zip(&b.values).map(|(x, y)| x - y).collect();
        self.in_image(&diff)
    }
}

/// Naive burning fixpoint: repeat full sweeps until nothing new catches fire.
/// Returns the unburned vertices in ascending order.
pub fn naive_unburned(g: &Graph, d: &[i64], q: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut burned = vec![false; n];
    burned[q] = true;
    loop {
        let mut changed = false;
        for v in 0..n {
            if burned[v] {
                continue;
            }
            let burning = g.neighbors(v).iter().filter(|&&w| burned[w]).count() as i64;
            if burning > d[v] {
                burned[v] = true;
                changed = true;
            }
        }
        if !changed {
            return (0..n).filter(|&v| !burned[v]).collect();
        }
    }
}

/// Legal set-firing straight from the definition, with the set given as a bitmask.
pub fn legal_mask(g: &Graph, d: &[i64], mask: u64) -> bool {
    let inside = |v: usize| mask >> v & 1 == 1;
    (0..g.vertex_count()).filter(|&v| inside(v)).all(|v| {
        let out = g.neighbors(v).iter().filter(|&&w| !inside(w)).count() as i64;
        d[v] >= 0 && d[v] - out >= 0
    })
}

/// No nonempty subset of `V − {q}` fires legally.
pub fn reduced_by_definition(g: &Graph, d: &[i64], q: usize) -> bool {
    let n = g.vertex_count();
    if (0..n).any(|v| v != q && d[v] < 0) {
        return false;
    }
    let full = (1u64 << n) - 1;
    let allowed = full & !(1 << q);
    let mut mask = allowed;
    while mask != 0 {
        if legal_mask(g, d, mask) {
            return false;
        }
        mask = (mask - 1) & allowed;
    }
    true
}

/// All effective divisors of a given degree on `n` vertices (plain recursion).
pub fn effective_divisors(n: usize, degree: i64) -> Vec<Vec<i64>> {
    fn go(left: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(left - c, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degree, n, &mut Vec::new(), &mut out);
    out
}

/// Rank from the definition: for each `k`, every effective `E` of degree `k`
/// must leave `D − E` equivalent (by the Laplacian oracle) to some effective
/// divisor of the same degree.
pub fn rank_by_definition(g: &Graph, d: &Divisor, max_k: i64) -> i64 {
    let oracle = LaplacianOracle::new(g);
    let n = g.vertex_count();
    let has_effective = |target: &[i64]| -> bool {
        let deg: i64 = target.iter().sum();
        deg >= 0
            && effective_divisors(n, deg).iter().any(|f| {
                let diff: Vec<i64> = f.iter().zip(target).map(|(a, b)| a - b).collect();
                oracle.in_image(&diff)
            })
    };
    if !has_effective(&d.values) {
        return -1;
    }
    for k in 1..=max_k {
        for e in effective_divisors(n, k) {
            let shifted: Vec<i64> = d.values.iter().zip(&e).map(|(a, b)| a - b).collect();
            if !has_effective(&shifted) {
                return k - 1;
            }
        }
    }
    max_k
}

pub fn random_divisor<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Divisor {
    Divisor::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

pub fn abs_max(d: &Divisor) -> i64 {
    d.values.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn is_integer_free(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}
