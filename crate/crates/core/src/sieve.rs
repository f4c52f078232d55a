//! Linear sieve shared by the mollifier table and the prime-power series:
//! smallest prime factors, Möbius values, divisor counts, von Mangoldt.

/// Smallest-prime-factor table for 0..=n_max (0 marks primes and n < 2).
pub struct Sieve {
    pub n_max: usize,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl Sieve {
    pub fn new(n_max: usize) -> Sieve {
        let mut spf = vec![0u32; n_max + 1];
        let mut primes = Vec::new();
        for i in 2..=n_max {
            if spf[i] == 0 {
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if ip > n_max {
                    break;
                }
                spf[ip] = p;
                if i % p as usize == 0 {
                    break;
                }
            }
        }
        Sieve { n_max, spf, primes }
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] == 0
    }

    /// Smallest prime factor of n (n itself when n is prime).
    pub fn smallest_prime_factor(&self, n: usize) -> Option<u32> {
        if n < 2 {
            return None;
        }
        Some(if self.spf[n] == 0 {
            n as u32
        } else {
            self.spf[n]
        })
    }

    /// μ(n) for 1..=n_max (index 0 unused).
    pub fn mobius_table(&self) -> Vec<i8> {
        let mut mu = vec![0i8; self.n_max + 1];
        if self.n_max >= 1 {
            mu[1] = 1;
        }
        for i in 2..=self.n_max {
            if self.spf[i] == 0 {
                mu[i] = -1;
            } else {
                let p = self.spf[i] as usize;
                let m = i / p;
                mu[i] = if m % p == 0 { 0 } else { -mu[m] };
            }
        }
        mu
    }

    /// d(n), the number of divisors, for 1..=n_max.
    pub fn divisor_table(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n_max + 1];
        // cnt[i] = exponent of the smallest prime in i.
        let mut cnt = vec![0u32; self.n_max + 1];
        if self.n_max >= 1 {
            d[1] = 1;
        }
        for i in 2..=self.n_max {
            if self.spf[i] == 0 {
                d[i] = 2;
                cnt[i] = 1;
            } else {
                let p = self.spf[i] as usize;
                let m = i / p;
                if m % p == 0 {
                    cnt[i] = cnt[m] + 1;
                    d[i] = d[m] / (cnt[m] + 1) * (cnt[i] + 1);
                } else {
                    cnt[i] = 1;
                    d[i] = d[m] * 2;
                }
            }
        }
        d
    }

    /// Λ(n): log p when n = p^k, 0 otherwise.
    pub fn von_mangoldt(&self, n: usize) -> f64 {
        match self.prime_power_base(n) {
            Some(p) => (p as f64).ln(),
            None => 0.0,
        }
    }

    /// The prime p when n = p^k for some k ≥ 1.
    pub fn prime_power_base(&self, n: usize) -> Option<u32> {
        if n < 2 {
            return None;
        }
        let p = self.smallest_prime_factor(n)? as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            Some(p as u32)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mobius(n: usize) -> i8 {
        let mut m = n;
        let mut k = 0;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if m > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn naive_divisors(n: usize) -> u32 {
        (1..=n).filter(|d| n % d == 0).count() as u32
    }

    #[test]
    fn sieve_matches_naive_oracles() {
        let s = Sieve::new(2000);
        let mu = s.mobius_table();
        let d = s.divisor_table();
        for n in 1..=2000 {
            assert_eq!(mu[n], naive_mobius(n), "mu({n})");
            assert_eq!(d[n], naive_divisors(n), "d({n})");
        }
    }

    #[test]
    fn von_mangoldt_prime_powers() {
        let s = Sieve::new(100);
        assert_eq!(s.von_mangoldt(8), 2.0f64.ln());
        assert_eq!(s.von_mangoldt(7), 7.0f64.ln());
        assert_eq!(s.von_mangoldt(12), 0.0);
        assert_eq!(s.von_mangoldt(1), 0.0);
        assert_eq!(s.von_mangoldt(81), 3.0f64.ln());
    }
}
