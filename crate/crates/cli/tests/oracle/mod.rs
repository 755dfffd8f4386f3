//! Brute-force reference computations over F_q with plain integers.
//! Nothing here calls into the library.

#![allow(dead_code)]

pub type M = [u64; 4];

#[derive(Clone, Copy)]
pub struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn add(&self, a: &M, b: &M) -> M {
        std::array::from_fn(|i| (a[i] + b[i]) % self.q)
    }

    pub fn mul(&self, a: &M, b: &M) -> M {
        let q = self.q;
        [
            (a[0] * b[0] + a[1] * b[2]) % q,
            (a[0] * b[1] + a[1] * b[3]) % q,
            (a[2] * b[0] + a[3] * b[2]) % q,
            (a[2] * b[1] + a[3] * b[3]) % q,
        ]
    }

    pub fn id(&self) -> M {
        [1, 0, 0, 1]
    }

    pub fn tr(&self, a: &M) -> u64 {
        (a[0] + a[3]) % self.q
    }

    pub fn det(&self, a: &M) -> u64 {
        (a[0] * a[3] + self.q * self.q - (a[1] * a[2]) % self.q) % self.q
    }

    pub fn m(&self, a: &M) -> u64 {
        let t = self.tr(a);
        (t * t + 4 * self.q * self.q - 4 * self.det(a)) % self.q
    }

    pub fn inv_el(&self, x: u64) -> u64 {
        (1..self.q).find(|y| x * y % self.q == 1).expect("nonzero")
    }

    pub fn inverse(&self, a: &M) -> Option<M> {
        let d = self.det(a);
        if d == 0 {
            return None;
        }
        let di = self.inv_el(d);
        let q = self.q;
        Some([
            a[3] * di % q,
            (q - a[1]) % q * di % q,
            (q - a[2]) % q * di % q,
            a[0] * di % q,
        ])
    }

    pub fn is_scalar(&self, a: &M) -> bool {
        a[1] == 0 && a[2] == 0 && a[0] == a[3]
    }

    /// All q^4 matrices, `(a11, a12, a21, a22)` lexicographic.
    pub fn all(&self) -> Vec<M> {
        let q = self.q;
        let mut v = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        v.push([a, b, c, d]);
                    }
                }
            }
        }
        v
    }

    pub fn gl2(&self) -> Vec<M> {
        self.all().into_iter().filter(|a| self.det(a) != 0).collect()
    }

    /// One representative per class of GL_2 modulo scalars.
    pub fn pgl2(&self) -> Vec<M> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for p in self.gl2() {
            let class: Vec<M> = (1..self.q)
                .map(|c| std::array::from_fn(|i| p[i] * c % self.q))
                .collect();
            let key = *class.iter().min().unwrap();
            if seen.insert(key) {
                out.push(p);
            }
        }
        out
    }

    pub fn conj(&self, p: &M, a: &M) -> M {
        let pi = self.inverse(p).expect("invertible");
        self.mul(&self.mul(&pi, a), p)
    }

    pub fn rank(&self, rows: &[M]) -> usize {
        let q = self.q;
        let mut rows: Vec<M> = rows.to_vec();
        let mut r = 0;
        for col in 0..4 {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv_el(rows[r][col]);
            let pr: M = std::array::from_fn(|k| rows[r][k] * inv % q);
            rows[r] = pr;
            for i in 0..rows.len() {
                if i != r && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for k in 0..4 {
                        rows[i][k] = (rows[i][k] + q * q - f * pr[k] % q) % q;
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// All products of at most three generators, with the identity.
    pub fn short_words(&self, gens: &[M]) -> Vec<M> {
        let mut out = vec![self.id()];
        let mut layer = vec![self.id()];
        for _ in 0..3 {
            let next: Vec<M> = layer
                .iter()
                .flat_map(|w| gens.iter().map(move |g| (w, g)))
                .map(|(w, g)| self.mul(w, g))
                .collect();
            out.extend(next.iter().copied());
            layer = next;
        }
        out
    }

    /// Dimension of the unital algebra generated by `gens`: the span of words
    /// of length at most 3 (the length filtration of a subspace of a
    /// 4-dimensional space stabilizes after three steps).
    pub fn mold_dim(&self, gens: &[M]) -> usize {
        self.rank(&self.short_words(gens))
    }

    pub fn label(&self, gens: &[M]) -> &'static str {
        match self.mold_dim(gens) {
            4 => "air",
            3 => "borel",
            1 => "scalar",
            2 => {
                if gens.iter().any(|g| self.m(g) != 0) {
                    "semisimple"
                } else if self.q == 2 {
                    "unipotent_f2"
                } else {
                    "unipotent"
                }
            }
            _ => unreachable!(),
        }
    }

    /// Determinants, then traces of increasing products in shortlex order of
    /// index sets.
    pub fn invariants(&self, gens: &[M]) -> Vec<u64> {
        let n = gens.len();
        let mut out: Vec<u64> = gens.iter().map(|g| self.det(g)).collect();
        let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        for s in subsets {
            let p = s.iter().fold(self.id(), |acc, &i| self.mul(&acc, &gens[i]));
            out.push(self.tr(&p));
        }
        out
    }

    /// Least conjugate of the tuple, as a vector of matrices.
    pub fn canonical(&self, pgl: &[M], gens: &[M]) -> Vec<M> {
        pgl.iter()
            .map(|p| gens.iter().map(|a| self.conj(p, a)).collect::<Vec<M>>())
            .min()
            .unwrap()
    }

    pub fn stabilizer(&self, pgl: &[M], gens: &[M]) -> usize {
        pgl.iter()
            .filter(|p| gens.iter().all(|a| self.conj(p, a) == *a))
            .count()
    }

    /// Every tuple of length `m` over `alphabet`, first coordinate slowest.
    pub fn tuples(alphabet: &[M], m: usize) -> Vec<Vec<M>> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|t| {
                    alphabet.iter().map(move |a| {
                        let mut t = t.clone();
                        t.push(*a);
                        t
                    })
                })
                .collect();
        }
        out
    }
}
