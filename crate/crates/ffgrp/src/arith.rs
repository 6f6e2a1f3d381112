//! Integer utilities: primality, factorization, prime powers, and a small
//! deterministic generator for reproducible pseudo-random trials.

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple in u128 to survive intermediate growth.
pub fn lcm_u128(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    let g = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / g * b
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This base set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64, seed: u64) -> u64 {
    // Brent's cycle variant.
    let c = seed | 1;
    let mut x = seed % n;
    let mut y = x;
    let mut d = 1u64;
    let f = |v: u64| (mul_mod(v, v, n) + c) % n;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        d = gcd(x.abs_diff(y), n);
    }
    d
}

/// Prime factorization as sorted (prime, exponent) pairs.
///
/// Trial division up to 10^6 covers everything the desk-scale grids need;
/// Pollard rho picks up any larger cofactor.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    while d <= 1_000_000 && d * d <= n {
        for inc in [0, 4] {
            let q = d + inc;
            while n.is_multiple_of(q) {
                push(q, &mut out);
                n /= q;
            }
        }
        d += 6;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let mut seed = 2u64;
        let mut f = pollard_rho(m, seed);
        while f == m {
            seed += 1;
            f = pollard_rho(m, seed);
        }
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    out
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Writes `q = p^k` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Ascending prime powers `q` in `2..=qmax`.
pub fn prime_powers_upto(qmax: u64) -> Vec<u64> {
    (2..=qmax).filter(|&q| prime_power(q).is_some()).collect()
}

/// Fixed linear-congruential generator for reproducible trial sequences.
///
/// Used wherever a seeded source of trial values is needed (equal-degree
/// splitting, randomized test corpora) so that outputs are identical
/// across runs without a global RNG.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg {
            state: seed ^ 0x9e37_79b9_7f4a_7c15,
        }
    }

    /// Seed derived from a byte-level hash of arbitrary input data.
    pub fn from_bytes(bytes: impl IntoIterator<Item = u64>) -> Self {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        for b in bytes {
            h ^= b;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        Lcg::new(h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        // xorshift the high bits down; raw LCG low bits alternate parity
        let x = self.state;
        (x ^ (x >> 33)).wrapping_mul(0xff51_afd7_ed55_8ccd)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}
