use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, m: u32) -> Rational {
    (0..m).map(|i| a + Rational::from(i as i64)).fold(Rational::one(), |acc, f| acc * f)
}

/// Binomial coefficient, zero when `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Memoized binomial coefficients.
///
/// Concurrent readers share the table; fills take the write lock.
#[derive(Debug, Default)]
pub struct BinomialTable {
    memo: RwLock<HashMap<(i64, i64), BigInt>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        let key = (n, k.min(n - k));
        if let Some(v) = self.memo.read().expect("binomial memo poisoned").get(&key) {
            return v.clone();
        }
        let v = binom(key.0, key.1);
        self.memo.write().expect("binomial memo poisoned").entry(key).or_insert(v).clone()
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("binomial memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::q;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&q(1, 2), 0), q(1, 1));
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
        assert_eq!(pochhammer(&q(2, 1), 3), q(24, 1));
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(4, 1), BigInt::from(4));
        assert_eq!(binom(6, 3), BigInt::from(20));
        assert_eq!(binom(3, 5), BigInt::zero());
        assert_eq!(binom(3, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_rule_up_to_64() {
        for n in 1..=64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn table_agrees_and_is_shareable() {
        let table = BinomialTable::new();
        std::thread::scope(|s| {
            for t in 0..4 {
                let table = &table;
                s.spawn(move || {
                    for n in 0..40 {
                        for k in -1..=n + 1 {
                            assert_eq!(table.get(n, k), binom(n, k), "thread {t}");
                        }
                    }
                });
            }
        });
        assert!(!table.is_empty());
    }
}
