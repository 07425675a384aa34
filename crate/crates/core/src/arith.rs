//! Small integer helpers: sieves, divisor sums, multiplicative assembly.

/// Smallest-prime-factor table for `0..=n` (entries 0 and 1 are 0).
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

pub fn primes_upto(n: usize) -> Vec<u64> {
    let spf = spf_sieve(n);
    (2..=n).filter(|&i| spf[i] as usize == i).map(|i| i as u64).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// sigma_k(n) for every n in `0..=n_max` (index 0 unused).
pub fn sigma_table(k: u32, n_max: usize) -> Vec<i128> {
    let mut s = vec![0i128; n_max + 1];
    for d in 1..=n_max {
        let dk = (d as i128).pow(k);
        let mut m = d;
        while m <= n_max {
            s[m] += dk;
            m += d;
        }
    }
    s
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128) as i128;
    (r * r == n).then_some(r)
}

pub fn is_squarefree(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        if n % d == 0 {
            n /= d;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Fill `a[1..=m]` from prime-power values, `a[0]` unused.
///
/// `local(p, e)` must return the coefficient at `p^e` for every prime power
/// up to `m`; the rest follows by multiplicativity.
pub fn multiplicative<T, F, M>(m: usize, one: T, mut local: F, mul: M) -> Vec<T>
where
    T: Clone,
    F: FnMut(u64, u32) -> T,
    M: Fn(&T, &T) -> T,
{
    let spf = spf_sieve(m);
    let mut a: Vec<Option<T>> = vec![None; m + 1];
    a[1] = Some(one.clone());
    for n in 2..=m {
        let p = spf[n] as usize;
        let mut q = n;
        let mut e = 0u32;
        while q % p == 0 {
            q /= p;
            e += 1;
        }
        let v = if q == 1 {
            local(p as u64, e)
        } else {
            let pe = n / q;
            mul(a[pe].as_ref().unwrap(), a[q].as_ref().unwrap())
        };
        a[n] = Some(v);
    }
    a[0] = Some(one);
    a.into_iter().map(|x| x.unwrap()).collect()
}

/// Prime-power coefficients of `1 / P(X)` where `P` has constant term 1.
pub fn invert_poly_i(p: &[rug::Integer], terms: usize) -> Vec<rug::Integer> {
    use rug::Integer;
    let mut b = vec![Integer::new(); terms];
    if terms == 0 {
        return b;
    }
    b[0] = Integer::from(1);
    for n in 1..terms {
        let mut acc = Integer::new();
        for j in 1..p.len().min(n + 1) {
            acc -= Integer::from(&p[j] * &b[n - j]);
        }
        b[n] = acc;
    }
    b
}
