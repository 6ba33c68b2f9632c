//! Prime enumeration helpers used by the eigenvalue tables and the sieve.

/// All primes `<= n` in increasing order (plain Eratosthenes; `n <= ~10^8`).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(if n > 16 { n / (n.ilog2() as usize) } else { 8 });
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Index of `p` in the sorted prime list, if present.
pub fn prime_index(primes: &[u64], p: u64) -> Option<usize> {
    primes.binary_search(&p).ok()
}
