//! p-step Fibonacci numbers and their running sums.
//!
//! `F_i^p` is fixed by `F_1 = 1`, `F_0 = F_{-1} = ... = F_{2-p} = 0` and
//! `F_i = F_{i-1} + ... + F_{i-p}`. `p = 2` gives the Fibonacci numbers and `p = 3` the
//! Tribonacci numbers.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

fn check_step(p: usize) -> Result<()> {
    if p < 2 {
        return Err(domain(format!("step count p must be at least 2, got {p}")));
    }
    Ok(())
}

/// Lowest index at which `F_i^p` is defined.
pub fn lowest_index(p: usize) -> i64 {
    2 - p as i64
}

#[derive(Debug)]
struct Inner {
    // values[k] = F_{k + 2 - p}
    values: Vec<BigInt>,
    // prefix[k] = SF_k = F_1 + ... + F_k, prefix[0] = 0
    prefix: Vec<BigInt>,
}

/// Memoized table of `F_i^p`, grown on demand.
///
/// Lookups take `&self`; growth happens behind a lock, so a table can be shared across
/// threads and behaves like a pure function of `(p, i)`.
#[derive(Debug)]
pub struct StepFibTable {
    p: usize,
    inner: RwLock<Inner>,
}

impl StepFibTable {
    pub fn new(p: usize) -> Result<Self> {
        check_step(p)?;
        // F_{2-p} .. F_0 are zero, F_1 = 1.
        let mut values = vec![BigInt::zero(); p - 1];
        values.push(BigInt::one());
        let prefix = vec![BigInt::zero(), BigInt::one()];
        Ok(Self {
            p,
            inner: RwLock::new(Inner { values, prefix }),
        })
    }

    /// Table pre-extended through index `max_index`.
    pub fn with_max_index(p: usize, max_index: i64) -> Result<Self> {
        let table = Self::new(p)?;
        table.extend_to(max_index);
        Ok(table)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    fn slot(&self, i: i64) -> usize {
        (i - lowest_index(self.p)) as usize
    }

    fn extend_to(&self, i: i64) {
        if i < 1 {
            return;
        }
        let needed = self.slot(i) + 1;
        if self.inner.read().expect("fib table lock").values.len() >= needed {
            return;
        }
        let mut inner = self.inner.write().expect("fib table lock");
        while inner.values.len() < needed {
            let len = inner.values.len();
            let next: BigInt = inner.values[len - self.p..].iter().sum();
            let sum = inner.prefix.last().expect("prefix seeded") + &next;
            inner.values.push(next);
            inner.prefix.push(sum);
        }
    }

    /// `F_i^p`. Indices below `2 - p` are rejected.
    pub fn fib(&self, i: i64) -> Result<BigInt> {
        if i < lowest_index(self.p) {
            return Err(domain(format!(
                "index {i} lies below the initial block (lowest is {})",
                lowest_index(self.p)
            )));
        }
        self.extend_to(i);
        let slot = self.slot(i);
        Ok(self.inner.read().expect("fib table lock").values[slot].clone())
    }

    /// `SF_i^p = F_1 + ... + F_i` for `i >= 1`.
    pub fn prefix_sum(&self, i: i64) -> Result<BigInt> {
        if i < 1 {
            return Err(domain(format!("prefix sums start at index 1, got {i}")));
        }
        self.extend_to(i);
        Ok(self.inner.read().expect("fib table lock").prefix[i as usize].clone())
    }
}

/// `F_i^p`.
pub fn fib(p: usize, i: i64) -> Result<BigInt> {
    StepFibTable::new(p)?.fib(i)
}

/// `SF_i^p = Σ_{j=1}^{i} F_j^p`.
pub fn fib_prefix_sum(p: usize, i: i64) -> Result<BigInt> {
    StepFibTable::new(p)?.prefix_sum(i)
}

/// Shifted sequence `t_k = 1 + t_{k-1} + ... + t_{k-p}` with `t_1 = 1` and
/// `t_0 = ... = t_{2-p} = 0`.
///
/// Computed from its own recurrence rather than from the prefix sums it equals.
pub fn t_value(p: usize, k: i64) -> Result<BigInt> {
    Ok(t_sequence(p, k)?.pop().expect("non-empty"))
}

/// `t_1 ..= t_k` as a vector (index 0 holds `t_1`).
pub fn t_sequence(p: usize, k: i64) -> Result<Vec<BigInt>> {
    check_step(p)?;
    if k < 1 {
        return Err(domain(format!("t_k is defined for k >= 1, got {k}")));
    }
    let mut window = vec![BigInt::zero(); p - 1];
    window.push(BigInt::one());
    for _ in 1..k {
        let next = BigInt::one() + window[window.len() - p..].iter().sum::<BigInt>();
        window.push(next);
    }
    Ok(window.split_off(p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fibonacci_and_tribonacci() {
        let f2: Vec<_> = (1..=6).map(|i| fib(2, i).unwrap()).collect();
        assert_eq!(f2, ints(&[1, 1, 2, 3, 5, 8]));
        let f3: Vec<_> = (1..=6).map(|i| fib(3, i).unwrap()).collect();
        assert_eq!(f3, ints(&[1, 1, 2, 4, 7, 13]));
        assert_eq!(fib(5, 0).unwrap(), BigInt::zero());
    }

    #[test]
    fn initial_block() {
        let table = StepFibTable::new(6).unwrap();
        for i in -4..=0 {
            assert!(table.fib(i).unwrap().is_zero());
        }
        assert!(table.fib(-5).is_err());
        assert!(fib(1, 3).is_err());
        assert!(fib(2, -1).is_err());
        assert_eq!(fib(2, 0).unwrap(), BigInt::zero());
    }

    #[test]
    fn prefix_sums() {
        let sf: Vec<_> = (1..=5).map(|i| fib_prefix_sum(2, i).unwrap()).collect();
        assert_eq!(sf, ints(&[1, 2, 4, 7, 12]));
        assert_eq!(fib_prefix_sum(3, 4).unwrap(), BigInt::from(8));
        assert!(fib_prefix_sum(2, 0).is_err());
    }

    #[test]
    fn t_values() {
        let t: Vec<_> = (1..=4).map(|k| t_value(2, k).unwrap()).collect();
        assert_eq!(t, ints(&[1, 2, 4, 7]));
        assert_eq!(t_value(2, 3).unwrap(), fib(2, 5).unwrap() - 1);
        assert_eq!(t_value(3, 2).unwrap(), BigInt::from(2));
        assert!(t_value(2, 0).is_err());
    }

    #[test]
    fn exceeds_u64_without_overflow() {
        let f100 = fib(2, 100).unwrap();
        assert_eq!(f100.to_string(), "354224848179261915075");
    }

    #[test]
    fn t_equals_prefix_sum() {
        for p in 2..=7 {
            let table = StepFibTable::new(p).unwrap();
            let t = t_sequence(p, 40).unwrap();
            for k in 1..=40 {
                assert_eq!(
                    t[k as usize - 1],
                    table.prefix_sum(k).unwrap(),
                    "p={p} k={k}"
                );
            }
        }
    }

    #[test]
    fn doubling_window() {
        for p in 2..=8 {
            let table = StepFibTable::new(p).unwrap();
            for i in 2..=p as i64 {
                assert_eq!(table.fib(i + 1).unwrap(), table.fib(i).unwrap() * 2);
            }
        }
    }

    #[test]
    fn prefix_difference_is_term() {
        for p in 2..=6 {
            let table = StepFibTable::new(p).unwrap();
            for i in 2..=30 {
                let diff = table.prefix_sum(i).unwrap() - table.prefix_sum(i - 1).unwrap();
                assert_eq!(diff, table.fib(i).unwrap());
            }
        }
    }

    #[test]
    fn window_sum_corollary() {
        // q = F_{q+1} - Σ_{j=1}^{q-2} j F_{q-j} for 3 <= q <= p
        for p in 3..=10 {
            let table = StepFibTable::new(p).unwrap();
            for q in 3..=p as i64 {
                let corr: BigInt = (1..=q - 2)
                    .map(|j| BigInt::from(j) * table.fib(q - j).unwrap())
                    .sum();
                assert_eq!(table.fib(q + 1).unwrap() - corr, BigInt::from(q));
            }
        }
    }

    #[test]
    fn shared_table_across_threads() {
        let table = StepFibTable::new(3).unwrap();
        let expected = fib(3, 60).unwrap();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| assert_eq!(table.fib(60).unwrap(), expected));
            }
        });
    }
}
