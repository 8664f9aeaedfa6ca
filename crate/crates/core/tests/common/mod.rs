//! Test-side oracles that share no code with the library.
#![allow(dead_code)]

pub mod snf {
    /// Exact determinant by fraction-free elimination.
    pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
                m.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Invariant factors (> 1) and free rank of `Z^cols / rowspace(m)` from
    /// the gcds of the `k x k` minors.
    pub fn cokernel(m: &[Vec<i64>], cols: usize) -> (Vec<u64>, usize) {
        let rows = m.len();
        let mut prev = 1i128;
        let mut factors = Vec::new();
        let mut rank = 0;
        for k in 1..=rows.min(cols) {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                    g = gcd(g, det(minor));
                    if g == 1 {
                        break;
                    }
                }
                if g == 1 {
                    break;
                }
            }
            if g == 0 {
                break;
            }
            rank = k;
            let d = g / prev;
            if d > 1 {
                factors.push(d as u64);
            }
            prev = g;
        }
        (factors, cols - rank)
    }
}

/// Invariants of `sl_2` acting on `K[SL_2]` by conjugation, with its own
/// monomials, reduction and elimination. Variables are ordered
/// `x11, x12, x21, x22`.
pub mod sl2 {
    use std::collections::HashMap;

    pub type Mono = [u32; 4];
    pub type Poly = HashMap<Mono, u64>;

    pub struct Oracle {
        pub p: u64,
    }

    fn add(f: &mut Poly, m: Mono, c: u64, p: u64) {
        let e = f.entry(m).or_insert(0);
        *e = (*e + c) % p;
        if *e == 0 {
            f.remove(&m);
        }
    }

    /// Images of the four coordinates under `E12`, `E21`, `H`, read off
    /// `x X - X x` by hand.
    fn images(which: usize, p: u64) -> [Vec<(Mono, u64)>; 4] {
        let m1 = p - 1;
        let (x11, x12, x21, x22) = ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]);
        match which {
            0 => [vec![(x21, m1)], vec![(x11, 1), (x22, m1)], vec![], vec![(x21, 1)]],
            1 => [vec![(x12, 1)], vec![], vec![(x22, 1), (x11, m1)], vec![(x12, m1)]],
            _ => [vec![], vec![(x12, (p - 2) % p)], vec![(x21, 2 % p)], vec![]],
        }
    }

    impl Oracle {
        pub fn new(p: u64) -> Self {
            Self { p }
        }

        pub fn monomials(d: u32) -> Vec<Mono> {
            let mut out = Vec::new();
            for a in 0..=d {
                for b in 0..=d - a {
                    for c in 0..=d - a - b {
                        for e in 0..=d - a - b - c {
                            if a == 0 || e == 0 {
                                out.push([a, b, c, e]);
                            }
                        }
                    }
                }
            }
            out
        }

        pub fn derive(&self, which: usize, m: Mono) -> Poly {
            let img = images(which, self.p);
            let mut f = Poly::new();
            for v in 0..4 {
                if m[v] == 0 {
                    continue;
                }
                let mut rest = m;
                rest[v] -= 1;
                for &(t, c) in &img[v] {
                    let prod = [rest[0] + t[0], rest[1] + t[1], rest[2] + t[2], rest[3] + t[3]];
                    add(&mut f, prod, c * (m[v] as u64 % self.p) % self.p, self.p);
                }
            }
            f
        }

        /// Rewrites `x11 x22 -> 1 + x12 x21` until no term has both.
        pub fn reduce(&self, f: &Poly) -> Poly {
            let mut out = Poly::new();
            let mut todo: Vec<(Mono, u64)> = f.iter().map(|(m, c)| (*m, *c)).collect();
            while let Some((m, c)) = todo.pop() {
                if m[0] > 0 && m[3] > 0 {
                    let base = [m[0] - 1, m[1], m[2], m[3] - 1];
                    todo.push((base, c));
                    todo.push(([base[0], base[1] + 1, base[2] + 1, base[3]], c));
                } else {
                    add(&mut out, m, c, self.p);
                }
            }
            out
        }

        /// Matrix (rows = output coordinates) of derivation `which` on the
        /// reduced monomials of degree `<= d`.
        pub fn matrix(&self, which: usize, d: u32) -> Vec<Vec<u64>> {
            let monos = Self::monomials(d);
            let idx: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut rows = vec![vec![0u64; monos.len()]; monos.len()];
            for (j, m) in monos.iter().enumerate() {
                for (t, c) in self.reduce(&self.derive(which, *m)) {
                    rows[idx[&t]][j] = c;
                }
            }
            rows
        }

        pub fn invariant_dim(&self, d: u32) -> usize {
            let mut rows = Vec::new();
            for w in 0..3 {
                rows.extend(self.matrix(w, d));
            }
            let cols = Self::monomials(d).len();
            cols - rank(rows, self.p)
        }

        /// Whether `D^k = 0` on the reduced space of degree `<= d` for some `k`.
        pub fn is_nilpotent(&self, which: usize, d: u32) -> bool {
            let m = self.matrix(which, d);
            let n = m.len();
            let mut power = m.clone();
            for _ in 0..n {
                if power.iter().all(|r| r.iter().all(|&x| x == 0)) {
                    return true;
                }
                power = mul(&power, &m, self.p);
            }
            power.iter().all(|r| r.iter().all(|&x| x == 0))
        }
    }

    fn mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let n = a.len();
        let mut c = vec![vec![0u64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
                }
            }
        }
        c
    }

    fn inv(a: u64, p: u64) -> u64 {
        (1..p).find(|&b| a * b % p == 1).unwrap()
    }

    pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
            rows.swap(r, k);
            let iv = inv(rows[r][c], p);
            let pivot: Vec<u64> = rows[r].iter().map(|&x| x * iv % p).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for j in c..cols {
                        row[j] = (row[j] + p * p - f * pivot[j] % p) % p;
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }
}
