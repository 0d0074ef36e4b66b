//! Brute-force reference implementations. They decode arc masks themselves
//! and answer every question by trying all vertex permutations, so they
//! share nothing with the library beyond the mask layout.

#![allow(dead_code, clippy::needless_range_loop)]

pub struct Naive {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Naive {
    /// Bit `j` of the mask is the `j`-th off-diagonal pair in row-major order.
    pub fn from_mask(n: usize, mask: u64) -> Naive {
        let mut adj = vec![vec![false; n]; n];
        let mut j = 0;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    adj[u][v] = mask >> j & 1 == 1;
                    j += 1;
                }
            }
        }
        Naive { n, adj }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Naive {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in arcs {
            adj[u][v] = true;
        }
        Naive { n, adj }
    }

    pub fn out_deg(&self, v: usize) -> i64 {
        self.adj[v].iter().filter(|&&a| a).count() as i64
    }

    pub fn in_deg(&self, v: usize) -> i64 {
        (0..self.n).filter(|&u| self.adj[u][v]).count() as i64
    }

    pub fn deg(&self, v: usize) -> i64 {
        self.out_deg(v) + self.in_deg(v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v] || self.adj[v][u]
    }

    pub fn strong(&self) -> bool {
        let n = self.n;
        let mut r = self.adj.clone();
        for (v, row) in r.iter_mut().enumerate() {
            row[v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r.iter().all(|row| row.iter().all(|&b| b))
    }

    pub fn a_k(&self, k: i64) -> bool {
        let n = self.n as i64;
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y || self.adjacent(x, y) {
                    continue;
                }
                for z in 0..self.n {
                    if z == x || z == y {
                        continue;
                    }
                    let base = self.deg(x) + self.deg(y);
                    if !self.adj[x][z] && base + self.out_deg(x) + self.in_deg(z) < 3 * n - 2 + k {
                        return false;
                    }
                    if !self.adj[z][x] && base + self.in_deg(x) + self.out_deg(z) < 3 * n - 2 + k {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `d(x) + d(y) >= 2n + offset` for every non-adjacent pair.
    pub fn degree_sum(&self, offset: i64) -> bool {
        let n = self.n as i64;
        (0..self.n).all(|x| {
            (x + 1..self.n).all(|y| self.adjacent(x, y) || self.deg(x) + self.deg(y) >= 2 * n + offset)
        })
    }

    /// Some vertex order carries every arc of `pattern` (given on `0..n`).
    pub fn embeds(&self, pattern: &[(usize, usize)]) -> bool {
        permutations(self.n)
            .iter()
            .any(|p| pattern.iter().all(|&(a, b)| self.adj[p[a]][p[b]]))
    }

    pub fn has_hc(&self) -> bool {
        self.embeds(&cycle_arcs(self.n))
    }

    pub fn has_bypass(&self) -> bool {
        self.n >= 3 && self.embeds(&bypass_arcs(self.n, 2))
    }

    pub fn has_pattern(&self, k: usize) -> bool {
        self.embeds(&bypass_arcs(self.n, k))
    }

    /// A cycle through exactly `n - 1` vertices.
    pub fn has_pre_hc(&self) -> bool {
        let m = self.n - 1;
        (0..self.n).any(|skip| {
            let keep: Vec<usize> = (0..self.n).filter(|&v| v != skip).collect();
            permutations(m).iter().any(|p| {
                (0..m).all(|i| self.adj[keep[p[i]]][keep[p[(i + 1) % m]]])
            })
        })
    }

    pub fn isomorphic(&self, other: &Naive) -> bool {
        self.n == other.n
            && permutations(self.n).iter().any(|p| {
                (0..self.n).all(|u| (0..self.n).all(|v| self.adj[u][v] == other.adj[p[u]][p[v]]))
            })
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

pub fn cycle_arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

/// Directed `n`-cycle with its last `k - 1` arcs reversed.
pub fn bypass_arcs(n: usize, k: usize) -> Vec<(usize, usize)> {
    cycle_arcs(n)
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| if i + k > n { (b, a) } else { (a, b) })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `x1..x4 = 0..3`, `y = 4`, written out from the tournament's definition.
pub fn naive_t5() -> Naive {
    Naive::from_arcs(
        5,
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4), (4, 1), (4, 3), (0, 2), (1, 3)],
    )
}

/// Balanced complete bipartite digraph with parts `0..h` and `h..2h`.
pub fn naive_kbb(h: usize) -> Naive {
    let mut arcs = Vec::new();
    for a in 0..h {
        for b in h..2 * h {
            arcs.push((a, b));
            arcs.push((b, a));
        }
    }
    Naive::from_arcs(2 * h, &arcs)
}

/// Every mask of order `n` (as `(mask, Naive)`) passing `keep`.
pub fn scan(n: usize, keep: impl Fn(&Naive) -> bool) -> Vec<(u64, Naive)> {
    (0..1u64 << (n * (n - 1)))
        .map(|m| (m, Naive::from_mask(n, m)))
        .filter(|(_, g)| keep(g))
        .collect()
}
