//! Reference computations that share no code with the library.

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for i in 0..m {
        // Newton on P_m starting from the Chebyshev-like guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=m {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Binary-alphabet evidence by tensor quadrature over the product of simplices.
///
/// `rows[h] = (n(h0), n(h1))`. Each row's parameter is `θ_h = p(0|h)`; with all
/// `α = 1` the Dirichlet prior density is `Γ(2)/(Γ(1)Γ(1)) = 1` on every factor.
pub fn binary_evidence_quadrature(rows: &[(u32, u32)], nodes: &[f64], weights: &[f64]) -> f64 {
    let m = nodes.len();
    let dims = rows.len();
    let total = m.pow(dims as u32);
    let mut sum = 0.0;
    let mut idx = vec![0usize; dims];
    for _ in 0..total {
        let mut term = 1.0;
        for (d, &(n0, n1)) in rows.iter().enumerate() {
            let t = nodes[idx[d]];
            term *= weights[idx[d]] * t.powi(n0 as i32) * (1.0 - t).powi(n1 as i32);
        }
        sum += term;
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    sum
}

/// Counts of `(h^k, s)` by scanning every window, codes read most-significant first.
pub fn window_counts(seq: &[usize], k: usize) -> Vec<(u32, u32)> {
    let mut rows = vec![(0u32, 0u32); 1 << k];
    for w in seq.windows(k + 1) {
        let h = w[..k].iter().fold(0, |acc, &s| acc * 2 + s);
        if w[k] == 0 {
            rows[h].0 += 1;
        } else {
            rows[h].1 += 1;
        }
    }
    rows
}

/// Euler's constant from the harmonic series with Euler-Maclaurin tail terms.
pub fn euler_gamma_series() -> f64 {
    let n = 1000.0_f64;
    let harmonic: f64 = (1..=1000).rev().map(|k| 1.0 / k as f64).sum();
    harmonic - n.ln() - 1.0 / (2.0 * n) + 1.0 / (12.0 * n * n) - 1.0 / (120.0 * n.powi(4))
        + 1.0 / (252.0 * n.powi(6))
}

/// `ζ(2)` from partial sums plus the Euler-Maclaurin remainder.
pub fn zeta2_series() -> f64 {
    let n = 1000.0_f64;
    let partial: f64 = (1..=1000).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    partial + 1.0 / n - 1.0 / (2.0 * n * n) + 1.0 / (6.0 * n.powi(3)) - 1.0 / (30.0 * n.powi(5))
}

/// Two-state binary process given as `[T0, T1]`, each row-major 2×2.
pub struct TwoState {
    pub t: [[f64; 4]; 2],
}

impl TwoState {
    pub fn simple_nondeterministic() -> Self {
        Self {
            t: [[0.0, 0.0, 0.5, 0.0], [0.5, 0.5, 0.0, 0.5]],
        }
    }

    /// Stationary distribution by power iteration on `T0 + T1`.
    pub fn stationary(&self) -> [f64; 2] {
        let t: Vec<f64> = (0..4).map(|i| self.t[0][i] + self.t[1][i]).collect();
        let mut pi = [0.5, 0.5];
        for _ in 0..10_000 {
            // average with the previous iterate to damp period-2 oscillation
            let next = [pi[0] * t[0] + pi[1] * t[2], pi[0] * t[1] + pi[1] * t[3]];
            pi = [0.5 * (pi[0] + next[0]), 0.5 * (pi[1] + next[1])];
        }
        pi
    }

    /// Probabilities of all binary words of length `len`, most-significant symbol first.
    pub fn word_probs(&self, len: usize) -> Vec<f64> {
        let pi = self.stationary();
        (0..1usize << len)
            .map(|code| {
                let mut v = pi;
                for i in (0..len).rev() {
                    let m = &self.t[(code >> i) & 1];
                    v = [v[0] * m[0] + v[1] * m[2], v[0] * m[1] + v[1] * m[3]];
                }
                v[0] + v[1]
            })
            .collect()
    }

    /// Exact `H(s | h^k)` in bits.
    pub fn conditional_entropy(&self, k: usize) -> f64 {
        let joint = self.word_probs(k + 1);
        let mut h = 0.0;
        for pair in joint.chunks(2) {
            let ph = pair[0] + pair[1];
            for &p in pair {
                if p > 0.0 {
                    h -= p * (p / ph).log2();
                }
            }
        }
        h
    }
}

/// True if every block of 1s flanked by 0s on both sides has even length.
pub fn flanked_one_blocks_even(seq: &[usize]) -> bool {
    let zeros: Vec<usize> = seq
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 0)
        .map(|(i, _)| i)
        .collect();
    zeros.windows(2).all(|w| (w[1] - w[0] - 1) % 2 == 0)
}
