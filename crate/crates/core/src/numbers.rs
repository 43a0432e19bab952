//! Small integer helpers shared by the group and graph code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `g` modulo `m`, or `None` when `g` is not a unit.
pub fn multiplicative_order(g: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(g % m, m) != 1 {
        return None;
    }
    let g = g % m;
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    Some(k)
}

pub fn euler_phi(m: u64) -> u64 {
    prime_divisors(m)
        .into_iter()
        .fold(m, |acc, p| acc / p * (p - 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
