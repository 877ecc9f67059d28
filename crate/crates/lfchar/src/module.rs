//! Concrete locally free representations over finite prime fields:
//! construction, Hom/Ext dimensions, rigidity testing, and randomized search
//! for the indecomposable rigid module attached to a positive root.

use crate::cartan::{format_root, CartanDatum, RankVector};
use crate::fq::{canonical_eps, Fp, Mat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modules live over different data or fields")]
    Mismatch,
    #[error("negative Ext dimension: hom = {hom}, form = {form}")]
    NegativeExt { hom: usize, form: i64 },
    #[error("no rigid module with rank vector {0} found after {1} tries at q = {2}")]
    SearchExhausted(String, usize, u64),
    #[error("integer lift violates the commutation relation at arrow ({0}, {1})")]
    RelationViolation(usize, usize),
    #[error("action is not locally free at vertex {0}")]
    NotLocallyFree(usize),
}

/// A locally free module: canonical nilpotent loop actions (implied by the
/// rank vector) plus one matrix per arrow of the quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HModule {
    pub q: u64,
    pub rank: RankVector,
    /// Arrow (i, j) carries the map M_j -> M_i as a (d_i x d_j)-matrix.
    pub arrows: BTreeMap<(usize, usize), Mat>,
}

impl HModule {
    pub fn dims(&self, datum: &CartanDatum) -> Vec<usize> {
        (0..datum.n())
            .map(|i| datum.sym(i) as usize * self.rank[i] as usize)
            .collect()
    }

    pub fn eps(&self, datum: &CartanDatum, i: usize) -> Mat {
        canonical_eps(datum.sym(i) as usize, self.rank[i] as usize)
    }

    pub fn total_dim(&self, datum: &CartanDatum) -> usize {
        self.dims(datum).iter().sum()
    }

    /// Checks the commutation relation at every arrow.
    pub fn check_relations(&self, datum: &CartanDatum) -> Result<(), ModuleError> {
        let fp = Fp::new(self.q).map_err(|_| ModuleError::NotPrime(self.q))?;
        for (&(i, j), a) in &self.arrows {
            let lhs = self
                .eps(datum, i)
                .pow(datum.c(j, i).unsigned_abs() as usize, &fp)
                .mul(a, &fp);
            let rhs = a.mul(
                &self.eps(datum, j).pow(datum.c(i, j).unsigned_abs() as usize, &fp),
                &fp,
            );
            if lhs != rhs {
                return Err(ModuleError::RelationViolation(i, j));
            }
        }
        Ok(())
    }
}

/// The free module ⊕_i E_i^{r_i}: canonical loop actions, zero arrow maps.
pub fn free_module(datum: &CartanDatum, r: &[i64], q: u64) -> Result<HModule, ModuleError> {
    let fp = Fp::new(q).map_err(|_| ModuleError::NotPrime(q))?;
    let _ = fp;
    let mut arrows = BTreeMap::new();
    for &(i, j) in datum.omega() {
        let di = datum.sym(i) as usize * r[i] as usize;
        let dj = datum.sym(j) as usize * r[j] as usize;
        arrows.insert((i, j), Mat::zeros(di, dj));
    }
    Ok(HModule {
        q,
        rank: r.to_vec(),
        arrows,
    })
}

/// The generalized simple E_i.
pub fn simple_module(datum: &CartanDatum, i: usize, q: u64) -> HModule {
    let mut r = vec![0i64; datum.n()];
    r[i] = 1;
    free_module(datum, &r, q).expect("prime checked by caller")
}

/// Basis of the space of matrices satisfying the commutation relation for
/// arrow (i, j) at rank vector r.
pub fn arrow_solution_space(
    datum: &CartanDatum,
    r: &[i64],
    q: u64,
    arrow: (usize, usize),
) -> Result<Vec<Mat>, ModuleError> {
    let fp = Fp::new(q).map_err(|_| ModuleError::NotPrime(q))?;
    let (i, j) = arrow;
    let di = datum.sym(i) as usize * r[i] as usize;
    let dj = datum.sym(j) as usize * r[j] as usize;
    if di == 0 || dj == 0 {
        return Ok(Vec::new());
    }
    let ei = canonical_eps(datum.sym(i) as usize, r[i] as usize)
        .pow(datum.c(j, i).unsigned_abs() as usize, &fp);
    let ej = canonical_eps(datum.sym(j) as usize, r[j] as usize)
        .pow(datum.c(i, j).unsigned_abs() as usize, &fp);
    // Unknown X is d_i x d_j; equation E_i^a X - X E_j^b = 0 entrywise.
    let unknowns = di * dj;
    let mut sys = Mat::zeros(unknowns, unknowns);
    for a in 0..di {
        for b in 0..dj {
            let row = a * dj + b;
            for k in 0..di {
                let c = ei.at(a, k);
                if c != 0 {
                    let col = k * dj + b;
                    sys.set(row, col, fp.add(sys.at(row, col), c));
                }
            }
            for k in 0..dj {
                let c = ej.at(k, b);
                if c != 0 {
                    let col = a * dj + k;
                    sys.set(row, col, fp.sub(sys.at(row, col), c));
                }
            }
        }
    }
    let kernel = sys.kernel_basis(&fp);
    let mut basis = Vec::with_capacity(kernel.rows);
    for t in 0..kernel.rows {
        let mut m = Mat::zeros(di, dj);
        for a in 0..di {
            for b in 0..dj {
                m.set(a, b, kernel.at(t, a * dj + b));
            }
        }
        basis.push(m);
    }
    Ok(basis)
}

/// Deterministic sub-seed derivation (splitmix64 over mixed-in labels).
pub fn derive_seed(master: u64, labels: &[u64]) -> u64 {
    let mut z = master;
    for &l in labels {
        z = z.wrapping_add(0x9e3779b97f4a7c15).wrapping_add(l.wrapping_mul(0xbf58476d1ce4e5b9));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
    }
    z
}

/// A random locally free module: canonical loop actions, each arrow map drawn
/// uniformly from its solution space. Deterministic in the seed.
pub fn sample_locally_free(
    datum: &CartanDatum,
    r: &[i64],
    q: u64,
    seed: u64,
) -> Result<HModule, ModuleError> {
    let fp = Fp::new(q).map_err(|_| ModuleError::NotPrime(q))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arrows = BTreeMap::new();
    for &(i, j) in datum.omega() {
        let basis = arrow_solution_space(datum, r, q, (i, j))?;
        let di = datum.sym(i) as usize * r[i] as usize;
        let dj = datum.sym(j) as usize * r[j] as usize;
        let mut m = Mat::zeros(di, dj);
        for b in &basis {
            let coef = rng.gen_range(0..q);
            if coef != 0 {
                for (x, &y) in m.a.iter_mut().zip(b.a.iter()) {
                    *x = fp.add(*x, fp.mul(coef, y));
                }
            }
        }
        arrows.insert((i, j), m);
    }
    let m = HModule {
        q,
        rank: r.to_vec(),
        arrows,
    };
    m.check_relations(datum)?;
    Ok(m)
}

fn hom_system(datum: &CartanDatum, m: &HModule, n: &HModule) -> Result<(Mat, Vec<usize>), ModuleError> {
    if m.q != n.q || m.rank.len() != n.rank.len() {
        return Err(ModuleError::Mismatch);
    }
    let fp = Fp::new(m.q).map_err(|_| ModuleError::NotPrime(m.q))?;
    let dm = m.dims(datum);
    let dn = n.dims(datum);
    let nv = datum.n();
    let mut offsets = vec![0usize; nv + 1];
    for i in 0..nv {
        offsets[i + 1] = offsets[i] + dn[i] * dm[i];
    }
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    // Vertex equations: f_i E^M_i = E^N_i f_i.
    for i in 0..nv {
        if dm[i] == 0 || dn[i] == 0 {
            continue;
        }
        let em = m.eps(datum, i);
        let en = n.eps(datum, i);
        for a in 0..dn[i] {
            for b in 0..dm[i] {
                let mut row = vec![0u64; unknowns];
                for k in 0..dm[i] {
                    let c = em.at(k, b);
                    if c != 0 {
                        let col = offsets[i] + a * dm[i] + k;
                        row[col] = fp.add(row[col], c);
                    }
                }
                for k in 0..dn[i] {
                    let c = en.at(a, k);
                    if c != 0 {
                        let col = offsets[i] + k * dm[i] + b;
                        row[col] = fp.sub(row[col], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    // Arrow equations: f_i A^M_{ij} = A^N_{ij} f_j.
    for &(i, j) in datum.omega() {
        if dn[i] * dm[j] == 0 {
            continue;
        }
        let am = &m.arrows[&(i, j)];
        let an = &n.arrows[&(i, j)];
        for a in 0..dn[i] {
            for b in 0..dm[j] {
                let mut row = vec![0u64; unknowns];
                for k in 0..dm[i] {
                    let c = am.at(k, b);
                    if c != 0 {
                        let col = offsets[i] + a * dm[i] + k;
                        row[col] = fp.add(row[col], c);
                    }
                }
                for k in 0..dn[j] {
                    let c = an.at(a, k);
                    if c != 0 {
                        let col = offsets[j] + k * dm[j] + b;
                        row[col] = fp.sub(row[col], c);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() {
        Mat::zeros(0, unknowns)
    } else {
        Mat::from_rows(&rows)
    };
    Ok((sys, offsets))
}

/// dim_{F_q} Hom_H(M, N), by one linear solve.
pub fn hom_dim(datum: &CartanDatum, m: &HModule, n: &HModule) -> Result<usize, ModuleError> {
    let fp = Fp::new(m.q).map_err(|_| ModuleError::NotPrime(m.q))?;
    let (sys, offsets) = hom_system(datum, m, n)?;
    Ok(offsets[datum.n()] - sys.rank(&fp))
}

/// Basis of Hom_H(M, N) as per-vertex matrix tuples.
pub fn hom_basis(
    datum: &CartanDatum,
    m: &HModule,
    n: &HModule,
) -> Result<Vec<Vec<Mat>>, ModuleError> {
    let fp = Fp::new(m.q).map_err(|_| ModuleError::NotPrime(m.q))?;
    let (sys, offsets) = hom_system(datum, m, n)?;
    let kernel = sys.kernel_basis(&fp);
    let dm = m.dims(datum);
    let dn = n.dims(datum);
    let mut out = Vec::with_capacity(kernel.rows);
    for t in 0..kernel.rows {
        let mut fs = Vec::with_capacity(datum.n());
        for i in 0..datum.n() {
            let mut f = Mat::zeros(dn[i], dm[i]);
            for a in 0..dn[i] {
                for b in 0..dm[i] {
                    f.set(a, b, kernel.at(t, offsets[i] + a * dm[i] + b));
                }
            }
            fs.push(f);
        }
        out.push(fs);
    }
    Ok(out)
}

/// dim Ext^1 for locally free modules, via hom − ⟨rk M, rk N⟩.
pub fn ext1_dim_lf(datum: &CartanDatum, m: &HModule, n: &HModule) -> Result<usize, ModuleError> {
    let hom = hom_dim(datum, m, n)? as i64;
    let form = datum.bilinear(&m.rank, &n.rank);
    if hom < form {
        return Err(ModuleError::NegativeExt {
            hom: hom as usize,
            form,
        });
    }
    Ok((hom - form) as usize)
}

pub fn is_rigid(datum: &CartanDatum, m: &HModule) -> Result<bool, ModuleError> {
    Ok(ext1_dim_lf(datum, m, m)? == 0)
}

/// Block-diagonal direct sum.
pub fn direct_sum(datum: &CartanDatum, a: &HModule, b: &HModule) -> Result<HModule, ModuleError> {
    if a.q != b.q {
        return Err(ModuleError::Mismatch);
    }
    let rank: RankVector = a.rank.iter().zip(b.rank.iter()).map(|(x, y)| x + y).collect();
    let da = a.dims(datum);
    let db = b.dims(datum);
    let mut arrows = BTreeMap::new();
    for &(i, j) in datum.omega() {
        let ma = &a.arrows[&(i, j)];
        let mb = &b.arrows[&(i, j)];
        let mut m = Mat::zeros(da[i] + db[i], da[j] + db[j]);
        for r in 0..ma.rows {
            for c in 0..ma.cols {
                m.set(r, c, ma.at(r, c));
            }
        }
        for r in 0..mb.rows {
            for c in 0..mb.cols {
                m.set(da[i] + r, da[j] + c, mb.at(r, c));
            }
        }
        arrows.insert((i, j), m);
    }
    Ok(HModule {
        q: a.q,
        rank,
        arrows,
    })
}

/// Whether End(M) contains an idempotent other than 0 and 1, i.e. whether M
/// decomposes. Exhaustive over End when small; otherwise a Fitting-style
/// search for a splitting endomorphism.
pub fn has_nontrivial_idempotent(datum: &CartanDatum, m: &HModule) -> Result<bool, ModuleError> {
    let fp = Fp::new(m.q).map_err(|_| ModuleError::NotPrime(m.q))?;
    let basis = hom_basis(datum, m, m)?;
    let h = basis.len();
    if h <= 1 {
        return Ok(false);
    }
    let dims = m.dims(datum);
    let idm: Vec<Mat> = dims.iter().map(|&d| Mat::identity(d)).collect();
    let q = m.q;
    let combos = (q as u128).checked_pow(h as u32);
    if let Some(total) = combos.filter(|&t| t <= 200_000) {
        let mut coeffs = vec![0u64; h];
        for _ in 0..total {
            let e = combine(&basis, &coeffs, &dims, &fp);
            if !is_all_zero(&e) && e != idm && is_idempotent(&e, &fp) {
                return Ok(true);
            }
            // odometer
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        return Ok(false);
    }
    // Fitting tier: look for an endomorphism that is neither invertible nor
    // nilpotent; its stable kernel/image split M.
    let total_dim: usize = dims.iter().sum();
    let mut candidates: Vec<Vec<u64>> = Vec::new();
    for t in 0..h {
        let mut c = vec![0u64; h];
        c[t] = 1;
        candidates.push(c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d_eca7);
    for _ in 0..16 {
        candidates.push((0..h).map(|_| rng.gen_range(0..q)).collect());
    }
    for coeffs in candidates {
        let f = combine(&basis, &coeffs, &dims, &fp);
        for lambda in 0..q {
            let shifted: Vec<Mat> = f
                .iter()
                .zip(idm.iter())
                .map(|(fi, id)| {
                    let mut s = fi.clone();
                    for r in 0..s.rows {
                        let v = fp.sub(s.at(r, r), fp.mul(lambda, id.at(r, r)));
                        s.set(r, r, v);
                    }
                    s
                })
                .collect();
            let powed: Vec<Mat> = shifted.iter().map(|s| s.pow(total_dim, &fp)).collect();
            let kdim: usize = powed
                .iter()
                .map(|p| p.cols - p.rank(&fp))
                .sum();
            if kdim > 0 && kdim < total_dim {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn combine(basis: &[Vec<Mat>], coeffs: &[u64], dims: &[usize], fp: &Fp) -> Vec<Mat> {
    let mut out: Vec<Mat> = dims.iter().map(|&d| Mat::zeros(d, d)).collect();
    for (b, &c) in basis.iter().zip(coeffs.iter()) {
        if c == 0 {
            continue;
        }
        for (o, bm) in out.iter_mut().zip(b.iter()) {
            for (x, &y) in o.a.iter_mut().zip(bm.a.iter()) {
                *x = fp.add(*x, fp.mul(c, y));
            }
        }
    }
    out
}

fn is_all_zero(e: &[Mat]) -> bool {
    e.iter().all(|m| m.is_zero())
}

fn is_idempotent(e: &[Mat], fp: &Fp) -> bool {
    e.iter().all(|m| m.mul(m, fp) == *m)
}

/// Finds the rigid locally free module with rank vector `beta` by repeated
/// generic sampling. Deterministic in the seed; candidates with a nontrivial
/// idempotent in their endomorphism algebra are rejected.
pub fn find_rigid(
    datum: &CartanDatum,
    beta: &[i64],
    q: u64,
    seed: u64,
    max_tries: usize,
) -> Result<HModule, ModuleError> {
    for t in 0..max_tries {
        let try_seed = derive_seed(seed, &[q, t as u64, 0x5eed]);
        let m = sample_locally_free(datum, beta, q, try_seed)?;
        if is_rigid(datum, &m)? && !has_nontrivial_idempotent(datum, &m)? {
            return Ok(m);
        }
    }
    Err(ModuleError::SearchExhausted(
        format_root(beta),
        max_tries,
        q,
    ))
}

pub const DEFAULT_MAX_TRIES: usize = 64;

/// Rebuilds a module in canonical coordinates from a raw action: per-vertex
/// nilpotents and arrow maps in arbitrary bases. Fails if some vertex space
/// is not free over its truncated polynomial ring.
pub fn from_raw_action(
    datum: &CartanDatum,
    q: u64,
    vertex_dims: &[usize],
    eps: &[Mat],
    arrows: &BTreeMap<(usize, usize), Mat>,
) -> Result<HModule, ModuleError> {
    let fp = Fp::new(q).map_err(|_| ModuleError::NotPrime(q))?;
    let n = datum.n();
    let mut rank = vec![0i64; n];
    let mut change = Vec::with_capacity(n);
    let mut change_inv = Vec::with_capacity(n);
    for i in 0..n {
        let c = datum.sym(i) as usize;
        let d = vertex_dims[i];
        if d % c != 0 {
            return Err(ModuleError::NotLocallyFree(i));
        }
        let r = d / c;
        rank[i] = r as i64;
        if d == 0 {
            change.push(Mat::zeros(0, 0));
            change_inv.push(Mat::zeros(0, 0));
            continue;
        }
        if !eps[i].pow(c, &fp).is_zero() {
            return Err(ModuleError::NotLocallyFree(i));
        }
        // Generators: standard vectors independent modulo im(eps).
        let mut img_rows: Vec<Vec<u64>> = Vec::new();
        for col in 0..d {
            let v: Vec<u64> = (0..d).map(|row| eps[i].at(row, col)).collect();
            if v.iter().any(|&x| x != 0) {
                img_rows.push(v);
            }
        }
        let mut gens: Vec<usize> = Vec::new();
        let mut test = img_rows.clone();
        let mut test_mat = if test.is_empty() {
            Mat::zeros(0, d)
        } else {
            Mat::from_rows(&test)
        };
        let mut cur_rank = test_mat.rank(&fp);
        for e in 0..d {
            if gens.len() == r {
                break;
            }
            let mut v = vec![0u64; d];
            v[e] = 1;
            test.push(v);
            test_mat = Mat::from_rows(&test);
            let nr = test_mat.rank(&fp);
            if nr > cur_rank {
                cur_rank = nr;
                gens.push(e);
            } else {
                test.pop();
            }
        }
        if gens.len() != r {
            return Err(ModuleError::NotLocallyFree(i));
        }
        // Change of basis: column (s*c + t) is eps^t g_s.
        let mut p = Mat::zeros(d, d);
        for (s, &g) in gens.iter().enumerate() {
            let mut v = vec![0u64; d];
            v[g] = 1;
            for t in 0..c {
                for (row, &x) in v.iter().enumerate() {
                    p.set(row, s * c + t, x);
                }
                // v <- eps * v
                let mut nv = vec![0u64; d];
                for (row, nvr) in nv.iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (k, &x) in v.iter().enumerate() {
                        if x != 0 {
                            acc = fp.add(acc, fp.mul(eps[i].at(row, k), x));
                        }
                    }
                    *nvr = acc;
                }
                v = nv;
            }
        }
        let pinv = p.inverse(&fp).ok_or(ModuleError::NotLocallyFree(i))?;
        change.push(p);
        change_inv.push(pinv);
    }
    let mut new_arrows = BTreeMap::new();
    for &(i, j) in datum.omega() {
        let a = arrows
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(vertex_dims[i], vertex_dims[j]));
        let transformed = if vertex_dims[i] == 0 || vertex_dims[j] == 0 {
            Mat::zeros(vertex_dims[i], vertex_dims[j])
        } else {
            change_inv[i].mul(&a.mul(&change[j], &fp), &fp)
        };
        new_arrows.insert((i, j), transformed);
    }
    let m = HModule {
        q,
        rank,
        arrows: new_arrows,
    };
    m.check_relations(datum)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn free_module_shapes() {
        let d = presets::datum("B2").unwrap();
        let e1 = simple_module(&d, 0, 5);
        assert_eq!(e1.dims(&d), vec![2, 0]);
        let e2 = simple_module(&d, 1, 5);
        assert_eq!(e2.dims(&d), vec![0, 1]);
        let zero = free_module(&d, &[0, 0], 5).unwrap();
        assert_eq!(zero.total_dim(&d), 0);
        assert!(free_module(&d, &[1, 1], 4).is_err());
    }

    #[test]
    fn arrow_space_dims_match_brute_force() {
        // B2 at r = (1, 1): the constraint is vacuous, dim 2 = full 2x1 space.
        let d = presets::datum("B2").unwrap();
        let basis = arrow_solution_space(&d, &[1, 1], 5, (0, 1)).unwrap();
        assert_eq!(basis.len(), 2);
        // brute force over F_2 to cross-check the count of solutions
        let d2 = presets::datum("A2").unwrap();
        let basis2 = arrow_solution_space(&d2, &[1, 1], 5, (0, 1)).unwrap();
        assert_eq!(basis2.len(), 1);
        // empty when a vertex has rank 0
        let basis3 = arrow_solution_space(&d, &[0, 1], 5, (0, 1)).unwrap();
        assert!(basis3.is_empty());
    }

    #[test]
    fn b3_arrow_space_brute_check() {
        // Constraint eps_1 A = A eps_2 on 2x2 matrices over F_2: enumerate.
        let d = presets::datum("B3").unwrap();
        let basis = arrow_solution_space(&d, &[1, 1, 0], 2, (0, 1)).unwrap();
        let fp = Fp::new(2).unwrap();
        let e1 = canonical_eps(2, 1);
        let mut count = 0u32;
        for bits in 0..16u32 {
            let m = Mat::from_rows(&[
                vec![(bits & 1) as u64, ((bits >> 1) & 1) as u64],
                vec![((bits >> 2) & 1) as u64, ((bits >> 3) & 1) as u64],
            ]);
            if e1.mul(&m, &fp) == m.mul(&e1, &fp) {
                count += 1;
            }
        }
        assert_eq!(1u32 << basis.len(), count);
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = presets::datum("B2").unwrap();
        let a = sample_locally_free(&d, &[1, 1], 5, 1).unwrap();
        let b = sample_locally_free(&d, &[1, 1], 5, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dims(&d), vec![2, 1]);
        a.check_relations(&d).unwrap();
        let zero = sample_locally_free(&d, &[0, 0], 5, 99).unwrap();
        assert_eq!(zero.total_dim(&d), 0);
    }

    #[test]
    fn hom_dims_b2() {
        let d = presets::datum("B2").unwrap();
        let e1 = simple_module(&d, 0, 5);
        let e2 = simple_module(&d, 1, 5);
        assert_eq!(hom_dim(&d, &e1, &e1).unwrap(), 2);
        assert_eq!(hom_dim(&d, &e2, &e1).unwrap(), 0);
        let zero = free_module(&d, &[0, 0], 5).unwrap();
        assert_eq!(hom_dim(&d, &zero, &e1).unwrap(), 0);
    }

    #[test]
    fn hom_dim_brute_force_small() {
        // E_1 over F_2 in B2: all f_1 in F_2^{2x2} commuting with eps_1.
        let d = presets::datum("B2").unwrap();
        let e1 = simple_module(&d, 0, 2);
        let fp = Fp::new(2).unwrap();
        let eps = e1.eps(&d, 0);
        let mut count = 0;
        for bits in 0..16u32 {
            let m = Mat::from_rows(&[
                vec![(bits & 1) as u64, ((bits >> 1) & 1) as u64],
                vec![((bits >> 2) & 1) as u64, ((bits >> 3) & 1) as u64],
            ]);
            if m.mul(&eps, &fp) == eps.mul(&m, &fp) {
                count += 1;
            }
        }
        assert_eq!(count, 1 << hom_dim(&d, &e1, &e1).unwrap());
    }

    #[test]
    fn ext_values_b2() {
        let d = presets::datum("B2").unwrap();
        let e1 = simple_module(&d, 0, 5);
        let e2 = simple_module(&d, 1, 5);
        assert_eq!(ext1_dim_lf(&d, &e2, &e1).unwrap(), 2);
        assert_eq!(ext1_dim_lf(&d, &e1, &e2).unwrap(), 0);
        assert_eq!(ext1_dim_lf(&d, &e1, &e1).unwrap(), 0);
        assert!(is_rigid(&d, &e1).unwrap());
        assert!(is_rigid(&d, &e2).unwrap());
        let sum = direct_sum(&d, &e1, &e2).unwrap();
        assert!(!is_rigid(&d, &sum).unwrap());
        let zero = free_module(&d, &[0, 0], 5).unwrap();
        assert!(is_rigid(&d, &zero).unwrap());
    }

    #[test]
    fn ext_via_projective_presentation_b2() {
        // 0 -> E_1 -> P_2 -> E_2 -> 0 with P_2 projective gives
        // Ext^1(E_2, E_1) = dim Hom(E_1, E_1) - dim Hom(P_2, E_1).
        let d = presets::datum("B2").unwrap();
        let q = 5;
        let e1 = simple_module(&d, 0, q);
        let e2 = simple_module(&d, 1, q);
        let mut arrows = BTreeMap::new();
        let mut a = Mat::zeros(2, 1);
        a.set(0, 0, 1);
        arrows.insert((0usize, 1usize), a);
        let p2 = HModule {
            q,
            rank: vec![1, 1],
            arrows,
        };
        p2.check_relations(&d).unwrap();
        let via_presentation =
            hom_dim(&d, &e1, &e1).unwrap() - hom_dim(&d, &p2, &e1).unwrap();
        assert_eq!(via_presentation, ext1_dim_lf(&d, &e2, &e1).unwrap());
    }

    #[test]
    fn direct_sum_hom_additivity() {
        let d = presets::datum("B2").unwrap();
        let e1 = simple_module(&d, 0, 5);
        let e2 = simple_module(&d, 1, 5);
        let m = sample_locally_free(&d, &[1, 2], 5, 7).unwrap();
        let sum = direct_sum(&d, &e1, &e2).unwrap();
        assert_eq!(sum.rank, vec![1, 1]);
        assert_eq!(
            hom_dim(&d, &sum, &m).unwrap(),
            hom_dim(&d, &e1, &m).unwrap() + hom_dim(&d, &e2, &m).unwrap()
        );
    }

    #[test]
    fn find_rigid_small_roots() {
        let d = presets::datum("B2").unwrap();
        // simple roots come out as the simples
        let m = find_rigid(&d, &[1, 0], 5, 3, 64).unwrap();
        assert_eq!(m.rank, vec![1, 0]);
        assert!(is_rigid(&d, &m).unwrap());
        // P_2 = M(a1 + a2): End dimension <β,β> = 1
        let p2 = find_rigid(&d, &[1, 1], 5, 3, 64).unwrap();
        assert_eq!(hom_dim(&d, &p2, &p2).unwrap(), 1);
        // I_1 = M(a1 + 2a2): End dimension 2
        let i1 = find_rigid(&d, &[1, 2], 5, 3, 64).unwrap();
        assert_eq!(hom_dim(&d, &i1, &i1).unwrap(), 2);
    }

    #[test]
    fn find_rigid_reproducible_and_seed_invariant_profile() {
        let d = presets::datum("G2").unwrap();
        let a = find_rigid(&d, &[3, 2], 5, 11, 64).unwrap();
        let b = find_rigid(&d, &[3, 2], 5, 11, 64).unwrap();
        assert_eq!(a, b);
        let c = find_rigid(&d, &[3, 2], 5, 987, 64).unwrap();
        // different seed, same iso class: hom profile against a battery agrees
        for i in 0..2 {
            let e = simple_module(&d, i, 5);
            assert_eq!(hom_dim(&d, &a, &e).unwrap(), hom_dim(&d, &c, &e).unwrap());
            assert_eq!(hom_dim(&d, &e, &a).unwrap(), hom_dim(&d, &e, &c).unwrap());
        }
        assert_eq!(hom_dim(&d, &a, &a).unwrap(), hom_dim(&d, &c, &c).unwrap());
    }

    #[test]
    fn find_rigid_all_roots_all_types_small_primes() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            for beta in d.positive_roots() {
                for q in [2u64, 3] {
                    let m = find_rigid(&d, &beta, q, 5, 128)
                        .unwrap_or_else(|e| panic!("{} {:?} q={}: {}", name, beta, q, e));
                    assert!(is_rigid(&d, &m).unwrap());
                    assert_eq!(
                        hom_dim(&d, &m, &m).unwrap() as i64,
                        d.bilinear(&beta, &beta)
                    );
                }
            }
        }
    }

    #[test]
    fn hom_vanishing_along_root_order() {
        for name in ["A2", "B2", "G2"] {
            let d = presets::datum(name).unwrap();
            let order = crate::cartan::hom_vanishing_order(&d);
            let mods: Vec<HModule> = order
                .iter()
                .map(|b| find_rigid(&d, b, 5, 21, 64).unwrap())
                .collect();
            for k in 0..mods.len() {
                for l in (k + 1)..mods.len() {
                    assert_eq!(
                        hom_dim(&d, &mods[k], &mods[l]).unwrap(),
                        0,
                        "{}: Hom(M(β_{}), M(β_{})) != 0",
                        name,
                        k,
                        l
                    );
                }
            }
        }
    }

    #[test]
    fn nonrigid_lift_is_indecomposable_not_rigid() {
        let d = presets::datum("B2").unwrap();
        let lift = presets::b2_nonrigid_rank11();
        let m = lift.realize(&d, 5).unwrap();
        assert!(!is_rigid(&d, &m).unwrap());
        assert!(!has_nontrivial_idempotent(&d, &m).unwrap());
        assert_eq!(hom_dim(&d, &m, &m).unwrap(), 2);
    }

    #[test]
    fn g2_nonrigid_lifts_are_indecomposable_not_rigid() {
        let d = presets::datum("G2").unwrap();
        for lift in [presets::g2_nonrigid_m1(), presets::g2_nonrigid_m2()] {
            let m = lift.realize(&d, 5).unwrap();
            assert!(!is_rigid(&d, &m).unwrap(), "lift must not be rigid");
            assert!(
                !has_nontrivial_idempotent(&d, &m).unwrap(),
                "lift must be indecomposable"
            );
        }
    }

    #[test]
    fn from_raw_action_recovers_canonical_form() {
        let d = presets::datum("B2").unwrap();
        let fp = Fp::new(5).unwrap();
        // eps_1 in a scrambled basis of F_5^2.
        let p = Mat::from_rows(&[vec![1, 2], vec![3, 2]]);
        let pinv = p.inverse(&fp).unwrap();
        let eps1 = p.mul(&canonical_eps(2, 1), &fp).mul(&pinv, &fp);
        let mut arrows = BTreeMap::new();
        let a = p.mul(&Mat::from_rows(&[vec![1], vec![0]]), &fp);
        arrows.insert((0usize, 1usize), a);
        let m = from_raw_action(
            &d,
            5,
            &[2, 1],
            &[eps1, Mat::zeros(1, 1)],
            &arrows,
        )
        .unwrap();
        assert_eq!(m.rank, vec![1, 1]);
        m.check_relations(&d).unwrap();
        // not locally free: eps with too-small rank (two Jordan blocks of size 1)
        let bad = from_raw_action(
            &d,
            5,
            &[2, 1],
            &[Mat::zeros(2, 2), Mat::zeros(1, 1)],
            &BTreeMap::new(),
        );
        assert!(matches!(bad, Err(ModuleError::NotLocallyFree(0))));
    }
}
