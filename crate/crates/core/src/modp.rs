//! Arithmetic modulo a fixed word-size prime.
//!
//! Used only for one-sided rank bounds: reducing an integral system modulo a
//! prime can lower its rank but never raise it.

/// 2^5·3^2·5·7·11·13·1489 + 1, so every K ≤ 32 with K | 2^5·3^2·5·7·11·13 divides P - 1.
pub const P: u64 = 2_146_304_161;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    a * b % P
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    a %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv(a: u64) -> u64 {
    assert!(a % P != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact multiplicative order k, if k | P - 1.
pub fn root_of_unity(k: u64) -> Option<u64> {
    if k == 0 || (P - 1) % k != 0 {
        return None;
    }
    let fac = prime_factors(k);
    (2..P).map(|g| pow(g, (P - 1) / k)).find(|&w| fac.iter().all(|&r| pow(w, k / r) != 1))
}

/// Incrementally maintained reduced echelon basis over F_P.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = sub(*x, mul(f, y));
                }
            }
        }
    }

    /// Adds `v` if independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else { return false };
        let s = inv(w[p]);
        for x in w.iter_mut() {
            *x = mul(*x, s);
        }
        for row in self.rows.iter_mut() {
            let f = row[p];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&w) {
                if y != 0 {
                    *x = sub(*x, mul(f, y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

/// Rank of a dense matrix over F_P.
pub fn rank(mut m: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = mul(*x, s);
        }
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                if y != 0 {
                    *x = sub(*x, mul(f, y));
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Deterministic splitmix64 stream, for random compressions of linear systems.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_mod_p(&mut self) -> u64 {
        self.next_u64() % P
    }
}
