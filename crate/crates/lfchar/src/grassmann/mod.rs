//! Point counting of locally free submodule Grassmannians and filtration
//! varieties, Euler characteristics via interpolation at q = 1, and the
//! F-polynomial of a module.

mod counting;
mod filtration;
mod interp;

pub use counting::{
    count_lf_submodules, count_lf_submodules_enumerative, for_each_free_sub, free_sub_count,
    gaussian_binomial, SubBasis,
};
pub use filtration::{
    check_prop41, count_filtration_chains, filtration_exists, flag_count, standard_battery,
    ChainStep,
};
pub use interp::CountPoly;

use crate::cartan::{format_root, CartanDatum, RankVector};
use crate::laurent::LaurentPoly;
use crate::module::{direct_sum, find_rigid, free_module, HModule, ModuleError, DEFAULT_MAX_TRIES};
pub use crate::module::derive_seed;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("rank vector out of range: {0}")]
    RankOutOfRange(String),
    #[error("interpolation mismatch: {0}")]
    InterpolationMismatch(String),
    #[error("not enough primes: need {needed}, got {got}")]
    NotEnoughPrimes { needed: usize, got: usize },
    #[error("filtration rank mismatch: {0}")]
    RankMismatch(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Primes available for counting; the degree bound of a job selects a prefix.
pub const PRIME_POOL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn default_primes(degree_bound: usize) -> Result<Vec<u64>, CountError> {
    let needed = degree_bound + 2;
    if needed > PRIME_POOL.len() {
        return Err(CountError::NotEnoughPrimes {
            needed,
            got: PRIME_POOL.len(),
        });
    }
    Ok(PRIME_POOL[..needed].to_vec())
}

/// Degree bound for the counting polynomial of Gr(r, M): the sum over
/// vertices of the dimension c_i r_i (m_i - r_i) of the per-vertex variety.
pub fn degree_bound(datum: &CartanDatum, m: &[i64], r: &[i64]) -> usize {
    (0..datum.n())
        .map(|i| (datum.sym(i) * r[i] * (m[i] - r[i])) as usize)
        .sum()
}

/// An explicit module given by integer matrices, reduced mod each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLift {
    pub rank: RankVector,
    pub arrows: std::collections::BTreeMap<(usize, usize), Vec<Vec<i64>>>,
}

impl IntegerLift {
    pub fn realize(&self, datum: &CartanDatum, q: u64) -> Result<HModule, ModuleError> {
        let fp = crate::fq::Fp::new(q).map_err(|_| ModuleError::NotPrime(q))?;
        let mut arrows = std::collections::BTreeMap::new();
        for &(i, j) in datum.omega() {
            let di = datum.sym(i) as usize * self.rank[i] as usize;
            let dj = datum.sym(j) as usize * self.rank[j] as usize;
            let mut m = crate::fq::Mat::zeros(di, dj);
            if let Some(rows) = self.arrows.get(&(i, j)) {
                assert_eq!(rows.len(), di, "lift arrow ({}, {}) row count", i, j);
                for (r, row) in rows.iter().enumerate() {
                    assert_eq!(row.len(), dj, "lift arrow ({}, {}) col count", i, j);
                    for (c, &x) in row.iter().enumerate() {
                        m.set(r, c, fp.from_i64(x));
                    }
                }
            }
            arrows.insert((i, j), m);
        }
        let module = HModule {
            q,
            rank: self.rank.clone(),
            arrows,
        };
        module.check_relations(datum)?;
        Ok(module)
    }
}

/// How to build the module whose Grassmannians are counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    /// Direct sum of the rigid indecomposables attached to these roots
    /// (a multiset, kept sorted).
    Roots(Vec<RankVector>),
    /// Explicit integer matrices reduced mod each prime.
    Lift(IntegerLift),
}

impl ModuleSpec {
    pub fn roots(mut roots: Vec<RankVector>) -> ModuleSpec {
        roots.sort();
        ModuleSpec::Roots(roots)
    }

    pub fn total_rank(&self, n: usize) -> RankVector {
        match self {
            ModuleSpec::Roots(roots) => {
                let mut total = vec![0i64; n];
                for r in roots {
                    for (t, x) in total.iter_mut().zip(r.iter()) {
                        *t += x;
                    }
                }
                total
            }
            ModuleSpec::Lift(l) => l.rank.clone(),
        }
    }

    /// Realizes the module over F_q, deterministically in the seed.
    pub fn realize(
        &self,
        datum: &CartanDatum,
        q: u64,
        seed: u64,
    ) -> Result<HModule, ModuleError> {
        match self {
            ModuleSpec::Roots(roots) => {
                let mut acc = free_module(datum, &vec![0; datum.n()], q)?;
                for (idx, beta) in roots.iter().enumerate() {
                    let part = find_rigid(
                        datum,
                        beta,
                        q,
                        derive_seed(seed, &[q, idx as u64]),
                        DEFAULT_MAX_TRIES,
                    )?;
                    acc = direct_sum(datum, &acc, &part)?;
                }
                Ok(acc)
            }
            ModuleSpec::Lift(l) => l.realize(datum, q),
        }
    }

    pub fn canonical_string(&self) -> String {
        match self {
            ModuleSpec::Roots(roots) => {
                let parts: Vec<String> = roots.iter().map(|r| format_root(r)).collect();
                format!("sum[{}]", parts.join("+"))
            }
            ModuleSpec::Lift(l) => {
                let mut s = format!("lift r{:?} ", l.rank);
                for (&(i, j), rows) in &l.arrows {
                    s.push_str(&format!("a{}-{}{:?}", i, j, rows));
                }
                s
            }
        }
    }
}

/// Cache interface for raw counts, keyed by datum, spec, rank vector, prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountKey {
    pub datum: String,
    pub spec: String,
    pub r: RankVector,
    pub q: u64,
}

pub trait CountStore: Sync {
    fn get(&self, key: &CountKey) -> Option<u128>;
    fn put(&self, key: &CountKey, count: u128);
}

fn counts_for(
    datum: &CartanDatum,
    spec: &ModuleSpec,
    r: &[i64],
    primes: &[u64],
    seed: u64,
    store: Option<&dyn CountStore>,
) -> Result<Vec<(u64, u128)>, CountError> {
    let mut out: Vec<(u64, u128)> = primes
        .par_iter()
        .map(|&q| -> Result<(u64, u128), CountError> {
            let key = CountKey {
                datum: datum.fingerprint(),
                spec: spec.canonical_string(),
                r: r.to_vec(),
                q,
            };
            if let Some(s) = store {
                if let Some(c) = s.get(&key) {
                    return Ok((q, c));
                }
            }
            let module = spec.realize(datum, q, seed)?;
            let count = count_lf_submodules(datum, &module, r)?;
            if let Some(s) = store {
                s.put(&key, count);
            }
            Ok((q, count))
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by_key(|&(q, _)| q);
    Ok(out)
}

/// Euler characteristic of Gr_lf(r, M) for the module described by `spec`:
/// counts points at each prime, fits the counting polynomial, evaluates at 1.
pub fn euler_char_gr(
    datum: &CartanDatum,
    spec: &ModuleSpec,
    r: &[i64],
    primes: Option<&[u64]>,
    seed: u64,
    store: Option<&dyn CountStore>,
) -> Result<(BigInt, CountPoly), CountError> {
    let m = spec.total_rank(datum.n());
    if r.len() != m.len() || r.iter().zip(m.iter()).any(|(&x, &y)| x < 0 || x > y) {
        return Err(CountError::RankOutOfRange(format!(
            "r = {:?} not within total rank {:?}",
            r, m
        )));
    }
    let bound = degree_bound(datum, &m, r);
    let primes_vec = match primes {
        Some(p) => p.to_vec(),
        None => default_primes(bound)?,
    };
    if primes_vec.len() < bound + 2 {
        return Err(CountError::NotEnoughPrimes {
            needed: bound + 2,
            got: primes_vec.len(),
        });
    }
    let samples = counts_for(datum, spec, r, &primes_vec, seed, store)?;
    let context = format!("chi(Gr({:?}, {}))", r, spec.canonical_string());
    let poly = CountPoly::fit(&samples, bound, &context)?;
    let chi = poly.value_at_one();
    if chi.is_negative() {
        return Err(CountError::InterpolationMismatch(format!(
            "{}: negative Euler characteristic {}",
            context, chi
        )));
    }
    Ok((chi, poly))
}

/// F-polynomial: sum over r <= rk(M) of chi(Gr(r, M)) t^r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolynomialValue {
    pub poly: LaurentPoly,
    pub rank: RankVector,
}

pub fn f_polynomial(
    datum: &CartanDatum,
    spec: &ModuleSpec,
    primes: Option<&[u64]>,
    seed: u64,
    store: Option<&dyn CountStore>,
) -> Result<FPolynomialValue, CountError> {
    let n = datum.n();
    let m = spec.total_rank(n);
    let mut poly = LaurentPoly::zero(n);
    let mut r = vec![0i64; n];
    loop {
        let (chi, _) = euler_char_gr(datum, spec, &r, primes, seed, store)?;
        poly = poly.add(&LaurentPoly::monomial(
            r.iter().map(|&x| x as i32).collect(),
            chi,
        ));
        // advance the odometer over the box [0, m]
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            r[i] += 1;
            if r[i] <= m[i] {
                break;
            }
            r[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    let value = FPolynomialValue { poly, rank: m };
    validate_f_polynomial(&value)?;
    Ok(value)
}

fn validate_f_polynomial(f: &FPolynomialValue) -> Result<(), CountError> {
    let zero_exp = vec![0i32; f.rank.len()];
    if !f.poly.coeff(&zero_exp).is_one() {
        return Err(CountError::Internal(format!(
            "F-polynomial constant term is {} (must be 1)",
            f.poly.coeff(&zero_exp)
        )));
    }
    let top: Vec<i32> = f.rank.iter().map(|&x| x as i32).collect();
    if !f.poly.coeff(&top).is_one() {
        return Err(CountError::Internal(format!(
            "F-polynomial top term is {} (must be 1)",
            f.poly.coeff(&top)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use num_bigint::BigInt;

    #[test]
    fn euler_char_b2_projective_line() {
        let d = presets::datum("B2").unwrap();
        let spec = ModuleSpec::roots(vec![vec![1, 2]]);
        let (chi, poly) = euler_char_gr(&d, &spec, &[1, 1], None, 1, None).unwrap();
        assert_eq!(chi, BigInt::from(2));
        // the counting polynomial is q + 1
        assert_eq!(poly.eval(&BigInt::from(7)), BigInt::from(8));
    }

    #[test]
    fn euler_trivial_ranks() {
        let d = presets::datum("G2").unwrap();
        let spec = ModuleSpec::roots(vec![vec![3, 2]]);
        let (chi0, _) = euler_char_gr(&d, &spec, &[0, 0], None, 1, None).unwrap();
        assert_eq!(chi0, BigInt::from(1));
        let (chitop, _) = euler_char_gr(&d, &spec, &[3, 2], None, 1, None).unwrap();
        assert_eq!(chitop, BigInt::from(1));
    }

    #[test]
    fn g2_chi_table() {
        let d = presets::datum("G2").unwrap();
        let spec = ModuleSpec::roots(vec![vec![3, 2]]);
        for (r, expect) in [
            (vec![0i64, 0], 1),
            (vec![1, 0], 3),
            (vec![2, 0], 3),
            (vec![3, 0], 1),
            (vec![2, 1], 3),
            (vec![3, 1], 2),
            (vec![3, 2], 1),
            (vec![1, 1], 0),
        ] {
            let (chi, _) = euler_char_gr(&d, &spec, &r, None, 1, None).unwrap();
            assert_eq!(chi, BigInt::from(expect), "r = {:?}", r);
        }
    }

    #[test]
    fn f_polynomials_of_simples() {
        for name in presets::TYPE_NAMES {
            let d = presets::datum(name).unwrap();
            for i in 0..d.n() {
                let mut beta = vec![0i64; d.n()];
                beta[i] = 1;
                let spec = ModuleSpec::roots(vec![beta]);
                let f = f_polynomial(&d, &spec, None, 1, None).unwrap();
                // 1 + t_i
                let mut expected = LaurentPoly::one(d.n());
                expected = expected.add(&LaurentPoly::var(d.n(), i));
                assert_eq!(f.poly, expected, "type {} vertex {}", name, i);
            }
        }
    }

    #[test]
    fn b2_f_polynomials_match_known() {
        let d = presets::datum("B2").unwrap();
        let f = f_polynomial(&d, &ModuleSpec::roots(vec![vec![1, 2]]), None, 1, None).unwrap();
        let mut expect = LaurentPoly::one(2);
        expect = expect.add(&LaurentPoly::monomial(vec![1, 0], BigInt::from(1)));
        expect = expect.add(&LaurentPoly::monomial(vec![1, 1], BigInt::from(2)));
        expect = expect.add(&LaurentPoly::monomial(vec![1, 2], BigInt::from(1)));
        assert_eq!(f.poly, expect);
        let f2 = f_polynomial(&d, &ModuleSpec::roots(vec![vec![1, 1]]), None, 1, None).unwrap();
        let mut expect2 = LaurentPoly::one(2);
        expect2 = expect2.add(&LaurentPoly::monomial(vec![1, 0], BigInt::from(1)));
        expect2 = expect2.add(&LaurentPoly::monomial(vec![1, 1], BigInt::from(1)));
        assert_eq!(f2.poly, expect2);
    }

    #[test]
    fn direct_sum_euler_factorization() {
        // chi(Gr(r, M ⊕ N)) = Σ_{s+t=r} chi(Gr(s,M)) chi(Gr(t,N))
        let d = presets::datum("B2").unwrap();
        let spec_m = ModuleSpec::roots(vec![vec![1, 1]]);
        let spec_n = ModuleSpec::roots(vec![vec![0, 1]]);
        let spec_sum = ModuleSpec::roots(vec![vec![1, 1], vec![0, 1]]);
        for r in [[1i64, 1], [1, 2], [0, 1], [1, 0]] {
            let (lhs, _) = euler_char_gr(&d, &spec_sum, &r, None, 3, None).unwrap();
            let mut rhs = BigInt::from(0);
            for s0 in 0..=r[0] {
                for s1 in 0..=r[1] {
                    let s = [s0, s1];
                    let t = [r[0] - s0, r[1] - s1];
                    if s[0] > 1 || s[1] > 1 || t[0] > 0 || t[1] > 1 {
                        continue;
                    }
                    let a = euler_char_gr(&d, &spec_m, &s, None, 3, None).unwrap().0;
                    let b = euler_char_gr(&d, &spec_n, &t, None, 3, None).unwrap().0;
                    rhs += a * b;
                }
            }
            assert_eq!(lhs, rhs, "r = {:?}", r);
        }
    }

    #[test]
    fn lift_realization_checks_relations() {
        let d = presets::datum("B2").unwrap();
        let lift = presets::b2_nonrigid_rank11();
        let m = lift.realize(&d, 5).unwrap();
        assert_eq!(m.rank, vec![1, 1]);
        // a lift violating (H2): in B3 the (0,1) arrow must commute with eps
        let d3 = presets::datum("B3").unwrap();
        let mut arrows = std::collections::BTreeMap::new();
        arrows.insert((0usize, 1usize), vec![vec![0, 1], vec![0, 0]]);
        let bad = IntegerLift {
            rank: vec![1, 1, 0],
            arrows,
        };
        assert!(matches!(
            bad.realize(&d3, 5),
            Err(ModuleError::RelationViolation(0, 1))
        ));
    }

    #[test]
    fn not_enough_primes_is_detected() {
        let d = presets::datum("B2").unwrap();
        let spec = ModuleSpec::roots(vec![vec![1, 2]]);
        let err = euler_char_gr(&d, &spec, &[1, 1], Some(&[2, 3]), 1, None).unwrap_err();
        assert!(matches!(err, CountError::NotEnoughPrimes { .. }));
    }

    #[test]
    fn symmetrizer_independent_chi() {
        let d = presets::datum("B2").unwrap();
        let d2 = d.scaled_symmetrizer(2);
        let spec = ModuleSpec::roots(vec![vec![1, 2]]);
        for r in [[1i64, 1], [1, 2], [1, 0]] {
            let (a, _) = euler_char_gr(&d, &spec, &r, None, 1, None).unwrap();
            let (b, _) = euler_char_gr(&d2, &spec, &r, None, 1, None).unwrap();
            assert_eq!(a, b, "r = {:?}", r);
        }
    }
}
