//! Cartan data: validated triples (C, D, Ω), the exchange matrix, the
//! homological bilinear form, root systems, and Coxeter combinatorics.
//!
//! Vertices are numbered 1..n at every external surface (configs, display,
//! error messages); internally everything is 0-based. An orientation pair
//! `(i, j)` declares the edge `c_ij < 0` oriented with an arrow `j -> i`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Integer vector indexed by vertices. Doubles as a root (in simple-root
/// coordinates) and as a locally free rank vector.
pub type RankVector = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("not a Cartan matrix: {0}")]
    NotCartan(String),
    #[error("not a symmetrizer: {0}")]
    NotSymmetrizer(String),
    #[error("bad orientation: {0}")]
    BadOrientation(String),
    #[error("Cartan matrix is not indecomposable (diagram is disconnected)")]
    NotConnected,
}

/// A validated symmetrizable Cartan datum of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    n: usize,
    /// Row-major n*n Cartan matrix.
    cartan: Vec<i64>,
    /// Symmetrizer diagonal (c_1, ..., c_n), all >= 1.
    sym: Vec<i64>,
    /// Orientation pairs (i, j), 0-based, each meaning an arrow j -> i.
    omega: Vec<(usize, usize)>,
}

impl CartanDatum {
    /// Validates (C, D, Ω) and returns the datum.
    pub fn new(
        cartan_rows: &[Vec<i64>],
        sym: &[i64],
        omega_pairs: &[(usize, usize)],
    ) -> Result<Self, CartanError> {
        let n = cartan_rows.len();
        if n == 0 {
            return Err(CartanError::NotCartan("empty matrix".into()));
        }
        for (i, row) in cartan_rows.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::NotCartan(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
        }
        let c = |i: usize, j: usize| cartan_rows[i][j];
        for i in 0..n {
            if c(i, i) != 2 {
                return Err(CartanError::NotCartan(format!(
                    "diagonal entry c_{}{} = {} != 2",
                    i + 1,
                    i + 1,
                    c(i, i)
                )));
            }
            for j in 0..n {
                if i != j && c(i, j) > 0 {
                    return Err(CartanError::NotCartan(format!(
                        "off-diagonal entry c_{}{} = {} > 0",
                        i + 1,
                        j + 1,
                        c(i, j)
                    )));
                }
                if i != j && (c(i, j) == 0) != (c(j, i) == 0) {
                    return Err(CartanError::NotCartan(format!(
                        "zero pattern not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if sym.len() != n {
            return Err(CartanError::NotSymmetrizer(format!(
                "symmetrizer has length {}, expected {}",
                sym.len(),
                n
            )));
        }
        if sym.iter().any(|&d| d < 1) {
            return Err(CartanError::NotSymmetrizer(
                "symmetrizer entries must be >= 1".into(),
            ));
        }
        // DC symmetric and positive definite (leading principal minors > 0).
        let dc = |i: usize, j: usize| sym[i] * c(i, j);
        for i in 0..n {
            for j in 0..n {
                if dc(i, j) != dc(j, i) {
                    return Err(CartanError::NotSymmetrizer(format!(
                        "DC is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for k in 1..=n {
            let minor = int_det(&|i, j| dc(i, j), k);
            if minor <= 0 {
                return Err(CartanError::NotSymmetrizer(format!(
                    "DC is not positive definite: leading {}x{} minor is {}",
                    k, k, minor
                )));
            }
        }
        // Orientation: exactly one of (i,j),(j,i) per negative entry, never both.
        let mut seen = BTreeSet::new();
        for &(i, j) in omega_pairs {
            if i >= n || j >= n || i == j {
                return Err(CartanError::BadOrientation(format!(
                    "pair ({}, {}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            if c(i, j) >= 0 {
                return Err(CartanError::BadOrientation(format!(
                    "pair ({}, {}) has c_ij = {} >= 0",
                    i + 1,
                    j + 1,
                    c(i, j)
                )));
            }
            if !seen.insert((i, j)) {
                return Err(CartanError::BadOrientation(format!(
                    "duplicate pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if c(i, j) < 0 {
                    let fwd = seen.contains(&(i, j));
                    let bwd = seen.contains(&(j, i));
                    if fwd == bwd {
                        return Err(CartanError::BadOrientation(format!(
                            "edge {{{}, {}}} must carry exactly one direction",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let omega: Vec<(usize, usize)> = seen.into_iter().collect();
        let datum = CartanDatum {
            n,
            cartan: cartan_rows.iter().flatten().copied().collect(),
            sym: sym.to_vec(),
            omega,
        };
        if !datum.quiver_is_acyclic(&datum.omega) {
            return Err(CartanError::BadOrientation(
                "the quiver Q° has an oriented cycle".into(),
            ));
        }
        if !datum.is_connected() {
            return Err(CartanError::NotConnected);
        }
        Ok(datum)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cartan entry c_ij, 0-based.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.n + j]
    }

    /// Symmetrizer entry c_i, 0-based.
    pub fn sym(&self, i: usize) -> i64 {
        self.sym[i]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    /// Orientation pairs (i, j): arrow j -> i in Q°.
    pub fn omega(&self) -> &[(usize, usize)] {
        &self.omega
    }

    /// Same Cartan matrix and orientation with symmetrizer scaled by k.
    pub fn scaled_symmetrizer(&self, k: i64) -> CartanDatum {
        let mut d = self.clone();
        for e in d.sym.iter_mut() {
            *e *= k;
        }
        d
    }

    /// Stable identifier used as a cache key component.
    pub fn fingerprint(&self) -> String {
        let mut s = format!("n{}c", self.n);
        for &e in &self.cartan {
            s.push_str(&e.to_string());
            s.push(',');
        }
        s.push('d');
        for &e in &self.sym {
            s.push_str(&e.to_string());
            s.push(',');
        }
        s.push('o');
        for &(i, j) in &self.omega {
            s.push_str(&format!("{}-{};", i + 1, j + 1));
        }
        s
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if w != v && self.c(v, w) != 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    fn quiver_is_acyclic(&self, omega: &[(usize, usize)]) -> bool {
        // arrows j -> i for (i, j); Kahn's algorithm
        let mut indeg = vec![0usize; self.n];
        for &(i, _) in omega {
            indeg[i] += 1;
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for &(i, j) in omega {
                if j == v {
                    indeg[i] -= 1;
                    if indeg[i] == 0 {
                        queue.push(i);
                    }
                }
            }
        }
        removed == self.n
    }

    /// The exchange matrix B: b_ij = c_ij if (j,i) in Ω, -c_ij if (i,j) in Ω, else 0.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j) in &self.omega {
            // (i, j) in Ω: b_ij = -c_ij and b_ji = c_ji
            b[i][j] = -self.c(i, j);
            b[j][i] = self.c(j, i);
        }
        b
    }

    /// Homological bilinear form on rank vectors:
    /// <e_i, e_j> = c_i c_ij if (j,i) in Ω, c_i if i = j, else 0, extended bilinearly.
    pub fn bilinear(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0i64;
        for i in 0..self.n {
            acc += self.sym(i) * a[i] * b[i];
        }
        for &(j, i) in &self.omega {
            // The pair (j, i) contributes <e_i, e_j> = c_i c_ij.
            acc += self.sym(i) * self.c(i, j) * a[i] * b[j];
        }
        acc
    }

    /// Simple reflection s_i(v) = v - (Σ_j c_ij v_j) α_i on root coordinates.
    pub fn reflect(&self, i: usize, v: &[i64]) -> RankVector {
        let mut w = v.to_vec();
        let pairing: i64 = (0..self.n).map(|j| self.c(i, j) * v[j]).sum();
        w[i] -= pairing;
        w
    }

    /// s_i(Ω): flip every orientation pair incident to vertex i.
    pub fn omega_reflected(omega: &[(usize, usize)], i: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = omega
            .iter()
            .map(|&(a, b)| if a == i || b == i { (b, a) } else { (a, b) })
            .collect();
        out.sort_unstable();
        out
    }

    /// Sinks of Q°(C, Ω): vertices with no outgoing arrow, i.e. never a
    /// second coordinate of a pair.
    pub fn sinks_of(&self, omega: &[(usize, usize)]) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| omega.iter().all(|&(_, j)| j != v))
            .collect()
    }

    /// Sources of Q°(C, Ω): vertices with no incoming arrow.
    pub fn sources_of(&self, omega: &[(usize, usize)]) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| omega.iter().all(|&(i, _)| i != v))
            .collect()
    }

    /// All positive roots, computed by closing the simple roots under simple
    /// reflections and keeping nonnegative vectors. Sorted by (height, lex).
    pub fn positive_roots(&self) -> Vec<RankVector> {
        let mut found: BTreeSet<RankVector> = BTreeSet::new();
        let mut queue: Vec<RankVector> = Vec::new();
        for i in 0..self.n {
            let mut e = vec![0i64; self.n];
            e[i] = 1;
            found.insert(e.clone());
            queue.push(e);
        }
        while let Some(v) = queue.pop() {
            for i in 0..self.n {
                let w = self.reflect(i, &v);
                if w.iter().all(|&x| x >= 0) && !found.contains(&w) {
                    found.insert(w.clone());
                    queue.push(w);
                }
            }
        }
        let mut roots: Vec<RankVector> = found.into_iter().collect();
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        roots
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_roots().iter().any(|r| r == v)
    }

    /// Whether the Cartan matrix is symmetric.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.c(i, j) == self.c(j, i)))
    }

    /// (+)-admissible sequence, Coxeter number, a (-)-adapted reduced word for
    /// w_0, and the induced enumeration of the positive roots.
    pub fn coxeter_data(&self) -> CoxeterData {
        let n = self.n;
        // (+)-admissible sequence: repeatedly extract the lowest-index unused
        // sink of the current quiver.
        let mut omega = self.omega.clone();
        let mut used = vec![false; n];
        let mut iplus = Vec::with_capacity(n);
        for _ in 0..n {
            let v = self
                .sinks_of(&omega)
                .into_iter()
                .find(|&v| !used[v])
                .expect("acyclic quiver always has an unused sink");
            used[v] = true;
            iplus.push(v);
            omega = Self::omega_reflected(&omega, v);
        }
        debug_assert_eq!(omega, self.omega, "full sink sweep must restore Ω");

        // Coxeter number: order of c = s_{i_1} ... s_{i_n} on the root lattice.
        let apply_c = |v: &[i64]| -> RankVector {
            let mut w = v.to_vec();
            for &i in iplus.iter().rev() {
                w = self.reflect(i, &w);
            }
            w
        };
        let mut h = 0usize;
        let mut basis: Vec<RankVector> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e
            })
            .collect();
        loop {
            basis = basis.iter().map(|v| apply_c(v)).collect();
            h += 1;
            let is_id = basis
                .iter()
                .enumerate()
                .all(|(i, v)| v.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)));
            if is_id {
                break;
            }
            assert!(h < 1000, "Coxeter element order did not terminate");
        }

        let roots = self.positive_roots();
        let r = roots.len();
        assert_eq!(2 * r, n * h, "|Δ⁺| must equal n·h/2");

        // (-)-adapted reduced word for w_0. For non-symmetric C this is
        // (i_n, ..., i_1) repeated h/2 times; for symmetric C that word can
        // fail to be reduced, so fall back to a greedy source extraction that
        // keeps each new root positive and fresh.
        let jminus = if !self.is_symmetric() && h % 2 == 0 {
            let cyclic: Vec<usize> = iplus.iter().rev().copied().cycle().take(r).collect();
            self.validate_minus_adapted(&cyclic, &roots)
                .unwrap_or_else(|| {
                    self.greedy_minus_adapted(&roots)
                        .expect("greedy (-)-adapted word construction failed")
                })
        } else {
            self.greedy_minus_adapted(&roots)
                .expect("greedy (-)-adapted word construction failed")
        };
        let root_order = self.beta_enumeration(&jminus);

        // Injective rank vectors: rk(I_{i_k}) = s_{i_n} ... s_{i_{k+1}}(α_{i_k}).
        // rk(I_{i_k}) = s_{i_n} ... s_{i_{k+1}}(α_{i_k}): rightmost acts first.
        let mut injective_ranks = vec![vec![0i64; n]; n];
        for k in 0..n {
            let mut v = vec![0i64; n];
            v[iplus[k]] = 1;
            for t in (k + 1)..n {
                v = self.reflect(iplus[t], &v);
            }
            injective_ranks[iplus[k]] = v;
        }

        CoxeterData {
            iplus,
            h,
            jminus,
            root_order,
            injective_ranks,
        }
    }

    /// β_k = s_{j_1} ... s_{j_{k-1}}(α_{j_k}) for the given word.
    fn beta_enumeration(&self, word: &[usize]) -> Vec<RankVector> {
        let mut betas = Vec::with_capacity(word.len());
        for (k, &jk) in word.iter().enumerate() {
            let mut v = vec![0i64; self.n];
            v[jk] = 1;
            for &j in word[..k].iter().rev() {
                v = self.reflect(j, &v);
            }
            betas.push(v);
        }
        betas
    }

    /// Checks that `word` is source-adapted and enumerates Δ⁺ bijectively.
    fn validate_minus_adapted(&self, word: &[usize], roots: &[RankVector]) -> Option<Vec<usize>> {
        let mut omega = self.omega.clone();
        for &j in word {
            if !self.sources_of(&omega).contains(&j) {
                return None;
            }
            omega = Self::omega_reflected(&omega, j);
        }
        let betas = self.beta_enumeration(word);
        let set: BTreeSet<&RankVector> = betas.iter().collect();
        if set.len() != roots.len() || !roots.iter().all(|r| set.contains(r)) {
            return None;
        }
        Some(word.to_vec())
    }

    fn greedy_minus_adapted(&self, roots: &[RankVector]) -> Option<Vec<usize>> {
        let r = roots.len();
        let mut omega = self.omega.clone();
        let mut word: Vec<usize> = Vec::with_capacity(r);
        // w = s_{j_1} ... s_{j_k} as a matrix acting on columns.
        let mut w: Vec<RankVector> = (0..self.n)
            .map(|i| {
                let mut e = vec![0i64; self.n];
                e[i] = 1;
                e
            })
            .collect();
        let mut taken: BTreeSet<RankVector> = BTreeSet::new();
        for _ in 0..r {
            let mut chosen = None;
            for j in self.sources_of(&omega) {
                // β = w(α_j) = column j of w (columns stored as images of e_j).
                let beta = w[j].clone();
                if beta.iter().all(|&x| x >= 0) && !taken.contains(&beta) {
                    chosen = Some((j, beta));
                    break;
                }
            }
            let (j, beta) = chosen?;
            taken.insert(beta);
            word.push(j);
            omega = Self::omega_reflected(&omega, j);
            // w <- w ∘ s_j: new column i is w(s_j(e_i)).
            let cols: Vec<RankVector> = (0..self.n)
                .map(|i| {
                    let mut e = vec![0i64; self.n];
                    e[i] = 1;
                    let se = self.reflect(j, &e);
                    let mut out = vec![0i64; self.n];
                    for (t, &coef) in se.iter().enumerate() {
                        for (x, o) in w[t].iter().zip(out.iter_mut()) {
                            *o += coef * x;
                        }
                    }
                    out
                })
                .collect();
            w = cols;
        }
        if taken.len() == r {
            Some(word)
        } else {
            None
        }
    }
}

/// Coxeter combinatorics attached to a datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterData {
    /// (+)-admissible sink sequence (i_1, ..., i_n), 0-based.
    pub iplus: Vec<usize>,
    /// Coxeter number.
    pub h: usize,
    /// (-)-adapted reduced word for w_0, length |Δ⁺|.
    pub jminus: Vec<usize>,
    /// Enumeration β_k = s_{j_1}...s_{j_{k-1}}(α_{j_k}); Hom(M(β_k), M(β_l)) = 0 for k < l.
    pub root_order: Vec<RankVector>,
    /// Rank vector of the indecomposable injective at each vertex.
    pub injective_ranks: Vec<RankVector>,
}

/// The positive roots in an order with Hom(M(β_k), M(β_l)) = 0 for k < l.
pub fn hom_vanishing_order(datum: &CartanDatum) -> Vec<RankVector> {
    datum.coxeter_data().root_order
}

/// Fomin-Zelevinsky matrix mutation at k (0-based). Works for rectangular
/// extended matrices (rows x n) mutated in a column direction.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let rows = b.len();
    let cols = b[0].len();
    let mut out = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + sgn(b[i][k]) * max0(b[i][k] * b[k][j])
            };
        }
    }
    out
}

fn sgn(x: i64) -> i64 {
    match x.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

fn max0(x: i64) -> i64 {
    x.max(0)
}

fn int_det(entry: &dyn Fn(usize, usize) -> i64, k: usize) -> i128 {
    // Fraction-free Gaussian elimination (Bareiss) on the leading k x k block.
    let mut a = vec![vec![0i128; k]; k];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = entry(i, j) as i128;
        }
    }
    let mut prev = 1i128;
    let mut sign = 1i128;
    for p in 0..k {
        if a[p][p] == 0 {
            let swap = (p + 1..k).find(|&r| a[r][p] != 0);
            match swap {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in (p + 1)..k {
            for j in (p + 1)..k {
                a[i][j] = (a[p][p] * a[i][j] - a[i][p] * a[p][j]) / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    sign * a[k - 1][k - 1]
}

pub fn format_root(v: &[i64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            if x == 1 {
                format!("a{}", i + 1)
            } else {
                format!("{}a{}", x, i + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.c(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(
            f,
            "D = diag({:?}), Ω = {{{}}}",
            self.sym,
            self.omega
                .iter()
                .map(|&(i, j)| format!("({},{})", i + 1, j + 1))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn validates_b2() {
        let d = CartanDatum::new(
            &[vec![2, -1], vec![-2, 2]],
            &[2, 1],
            &[(0, 1)],
        )
        .unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.c(1, 0), -2);
    }

    #[test]
    fn validates_a1() {
        let d = CartanDatum::new(&[vec![2]], &[1], &[]).unwrap();
        assert_eq!(d.positive_roots(), vec![vec![1]]);
        let cx = d.coxeter_data();
        assert_eq!(cx.iplus, vec![0]);
        assert_eq!(cx.h, 2);
        assert_eq!(cx.root_order, vec![vec![1]]);
    }

    #[test]
    fn rejects_affine_a1() {
        let err = CartanDatum::new(&[vec![2, -2], vec![-2, 2]], &[1, 1], &[(0, 1)]).unwrap_err();
        assert!(matches!(err, CartanError::NotSymmetrizer(_)));
    }

    #[test]
    fn rejects_bad_orientations() {
        // missing pair
        let err = CartanDatum::new(&[vec![2, -1], vec![-2, 2]], &[2, 1], &[]).unwrap_err();
        assert!(matches!(err, CartanError::BadOrientation(_)));
        // both directions
        let err =
            CartanDatum::new(&[vec![2, -1], vec![-2, 2]], &[2, 1], &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, CartanError::BadOrientation(_)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = CartanDatum::new(
            &[vec![2, 0], vec![0, 2]],
            &[1, 1],
            &[],
        )
        .unwrap_err();
        assert_eq!(err, CartanError::NotConnected);
    }

    #[test]
    fn exchange_matrices_match_known_cases() {
        assert_eq!(
            presets::datum("B2").unwrap().exchange_matrix(),
            vec![vec![0, 1], vec![-2, 0]]
        );
        assert_eq!(
            presets::datum("G2").unwrap().exchange_matrix(),
            vec![vec![0, 3], vec![-1, 0]]
        );
        assert_eq!(
            presets::datum("B3").unwrap().exchange_matrix(),
            vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]
        );
    }

    #[test]
    fn exchange_matrix_is_skew_symmetrizable() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            let b = d.exchange_matrix();
            for i in 0..d.n() {
                for j in 0..d.n() {
                    assert_eq!(
                        d.sym(i) * b[i][j],
                        -d.sym(j) * b[j][i],
                        "c_i b_ij = -c_j b_ji fails for {} at ({}, {})",
                        name,
                        i,
                        j
                    );
                }
            }
        }
    }

    #[test]
    fn bilinear_form_b2_values() {
        let d = presets::datum("B2").unwrap();
        let a1 = vec![1, 0];
        let a2 = vec![0, 1];
        assert_eq!(d.bilinear(&a1, &a1), 2);
        assert_eq!(d.bilinear(&a2, &a1), -2);
        assert_eq!(d.bilinear(&a1, &a2), 0);
        assert_eq!(d.bilinear(&[0, 0], &a2), 0);
    }

    #[test]
    fn positive_root_counts() {
        for (name, count) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("G2", 6),
        ] {
            let d = presets::datum(name).unwrap();
            assert_eq!(d.positive_roots().len(), count, "type {}", name);
        }
    }

    #[test]
    fn b2_roots_and_g2_highest() {
        let b2 = presets::datum("B2").unwrap();
        assert_eq!(
            b2.positive_roots(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]
        );
        let g2 = presets::datum("G2").unwrap();
        assert!(g2.positive_roots().contains(&vec![3, 2]));
    }

    #[test]
    fn roots_are_symmetrizer_independent() {
        for name in ["A2", "B2", "G2", "B3"] {
            let d = presets::datum(name).unwrap();
            let d2 = d.scaled_symmetrizer(3);
            assert_eq!(d.positive_roots(), d2.positive_roots());
        }
    }

    #[test]
    fn coxeter_data_b2() {
        let d = presets::datum("B2").unwrap();
        let cx = d.coxeter_data();
        assert_eq!(cx.iplus, vec![0, 1]);
        assert_eq!(cx.h, 4);
        assert_eq!(cx.jminus, vec![1, 0, 1, 0]);
        assert_eq!(
            cx.root_order,
            vec![vec![0, 1], vec![1, 2], vec![1, 1], vec![1, 0]]
        );
        assert_eq!(cx.injective_ranks[0], vec![1, 2]);
        assert_eq!(cx.injective_ranks[1], vec![0, 1]);
    }

    #[test]
    fn coxeter_data_a2_order() {
        let d = presets::datum("A2").unwrap();
        let cx = d.coxeter_data();
        assert_eq!(cx.h, 3);
        assert_eq!(
            cx.root_order,
            vec![vec![0, 1], vec![1, 1], vec![1, 0]]
        );
    }

    #[test]
    fn root_count_is_nh_over_2() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            let cx = d.coxeter_data();
            assert_eq!(2 * d.positive_roots().len(), d.n() * cx.h, "type {}", name);
        }
    }

    #[test]
    fn root_order_enumerates_all_roots() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            let cx = d.coxeter_data();
            let mut sorted = cx.root_order.clone();
            sorted.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
            assert_eq!(sorted, d.positive_roots(), "type {}", name);
        }
    }

    #[test]
    fn bilinear_sign_pattern_on_root_order() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            let order = hom_vanishing_order(&d);
            for k in 0..order.len() {
                for l in 0..order.len() {
                    let v = d.bilinear(&order[k], &order[l]);
                    if k < l {
                        assert!(v <= 0, "{}: <β_{}, β_{}> = {} > 0", name, k, l, v);
                    } else {
                        assert!(v >= 0, "{}: <β_{}, β_{}> = {} < 0", name, k, l, v);
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_mutation_involutive_and_matches_reflected_orientation() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            let b = d.exchange_matrix();
            for k in 0..d.n() {
                assert_eq!(mutate_matrix(&mutate_matrix(&b, k), k), b);
            }
            // At a sink or source of Q°, matrix mutation agrees with s_k(Ω).
            let sinks = d.sinks_of(d.omega());
            let sources = d.sources_of(d.omega());
            for &k in sinks.iter().chain(sources.iter()) {
                let refl = CartanDatum::new(
                    &(0..d.n())
                        .map(|i| (0..d.n()).map(|j| d.c(i, j)).collect())
                        .collect::<Vec<_>>(),
                    d.symmetrizer(),
                    &CartanDatum::omega_reflected(d.omega(), k),
                )
                .unwrap();
                assert_eq!(
                    refl.exchange_matrix(),
                    mutate_matrix(&b, k),
                    "type {} at k = {}",
                    name,
                    k
                );
            }
        }
    }

    #[test]
    fn g2_mutation_example() {
        let b = vec![vec![0, 3], vec![-1, 0]];
        assert_eq!(mutate_matrix(&b, 1), vec![vec![0, -3], vec![1, 0]]);
    }
}
