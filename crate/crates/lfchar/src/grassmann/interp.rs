//! Exact interpolation of counting polynomials from per-prime point counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CountError;

/// One-variable integer counting polynomial together with the samples it was
/// fitted to. The fit uses the first `degree_bound + 1` samples; the rest
/// must be reproduced exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPoly {
    /// Coefficients, ascending degree.
    pub coeffs: Vec<BigInt>,
    pub degree_bound: usize,
    pub samples: Vec<(u64, BigInt)>,
}

#[derive(Clone)]
struct Rat {
    n: BigInt,
    d: BigInt,
}

impl Rat {
    fn from_int(n: BigInt) -> Rat {
        Rat {
            n,
            d: BigInt::one(),
        }
    }

    fn normalize(mut self) -> Rat {
        if self.d.is_negative() {
            self.n = -self.n;
            self.d = -self.d;
        }
        let g = self.n.gcd(&self.d);
        if !g.is_one() && !g.is_zero() {
            self.n /= &g;
            self.d /= &g;
        }
        self
    }

    fn add(&self, other: &Rat) -> Rat {
        Rat {
            n: &self.n * &other.d + &other.n * &self.d,
            d: &self.d * &other.d,
        }
        .normalize()
    }

    fn sub(&self, other: &Rat) -> Rat {
        Rat {
            n: &self.n * &other.d - &other.n * &self.d,
            d: &self.d * &other.d,
        }
        .normalize()
    }

    fn mul(&self, other: &Rat) -> Rat {
        Rat {
            n: &self.n * &other.n,
            d: &self.d * &other.d,
        }
        .normalize()
    }

    fn div(&self, other: &Rat) -> Rat {
        Rat {
            n: &self.n * &other.d,
            d: &self.d * &other.n,
        }
        .normalize()
    }

    fn is_integer(&self) -> bool {
        self.d.is_one()
    }
}

impl CountPoly {
    /// Fits a polynomial of degree <= `degree_bound` through the first
    /// `degree_bound + 1` samples and checks every remaining sample against
    /// the fit. `context` labels error reports.
    pub fn fit(
        samples: &[(u64, u128)],
        degree_bound: usize,
        context: &str,
    ) -> Result<CountPoly, CountError> {
        if samples.len() < degree_bound + 2 {
            return Err(CountError::NotEnoughPrimes {
                needed: degree_bound + 2,
                got: samples.len(),
            });
        }
        let pts: Vec<(BigInt, BigInt)> = samples
            .iter()
            .map(|&(q, c)| (BigInt::from(q), BigInt::from(c)))
            .collect();
        let k = degree_bound + 1;
        // Newton divided differences on the first k points.
        let mut table: Vec<Rat> = pts[..k]
            .iter()
            .map(|(_, c)| Rat::from_int(c.clone()))
            .collect();
        let mut newton: Vec<Rat> = vec![table[0].clone()];
        for level in 1..k {
            for i in 0..(k - level) {
                let dx = Rat::from_int(&pts[i + level].0 - &pts[i].0);
                table[i] = table[i + 1].sub(&table[i]).div(&dx);
            }
            table.truncate(k - level);
            newton.push(table[0].clone());
        }
        // Expand to monomial coefficients.
        let mut coeffs: Vec<Rat> = vec![Rat::from_int(BigInt::zero()); k];
        let mut basis: Vec<Rat> = vec![Rat::from_int(BigInt::one())]; // Π (x - x_j)
        for (j, c) in newton.iter().enumerate() {
            for (t, b) in basis.iter().enumerate() {
                coeffs[t] = coeffs[t].add(&c.mul(b));
            }
            // basis <- basis * (x - x_j)
            let xj = Rat::from_int(pts[j].0.clone());
            let mut next = vec![Rat::from_int(BigInt::zero()); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] = next[t + 1].add(b);
                next[t] = next[t].sub(&b.mul(&xj));
            }
            basis = next;
        }
        if coeffs.iter().any(|c| !c.is_integer()) {
            return Err(CountError::InterpolationMismatch(format!(
                "{}: fitted polynomial has non-integer coefficients; samples {:?}",
                context, samples
            )));
        }
        let mut int_coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.n).collect();
        while int_coeffs.len() > 1 && int_coeffs.last().map_or(false, |c| c.is_zero()) {
            int_coeffs.pop();
        }
        let poly = CountPoly {
            coeffs: int_coeffs,
            degree_bound,
            samples: samples
                .iter()
                .map(|&(q, c)| (q, BigInt::from(c)))
                .collect(),
        };
        for (q, c) in &pts {
            if &poly.eval(q) != c {
                return Err(CountError::InterpolationMismatch(format!(
                    "{}: count at q = {} is {} but the degree-{} fit through the first {} samples predicts {}; all samples {:?}",
                    context,
                    q,
                    c,
                    degree_bound,
                    k,
                    poly.eval(q),
                    samples
                )));
            }
        }
        Ok(poly)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The Euler characteristic: the value at q = 1.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let var = match i {
                    0 => String::new(),
                    1 => "q".into(),
                    _ => format!("q^{}", i),
                };
                if var.is_empty() {
                    format!("{}", c)
                } else if c.is_one() {
                    var
                } else {
                    format!("{}*{}", c, var)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_quadratic() {
        // q^2 + q + 1 at q = 2,3,5,7
        let samples = [(2u64, 7u128), (3, 13), (5, 31), (7, 57)];
        let p = CountPoly::fit(&samples, 2, "test").unwrap();
        assert_eq!(
            p.coeffs,
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(p.value_at_one(), BigInt::from(3));
    }

    #[test]
    fn detects_mismatch_on_extra_sample() {
        let samples = [(2u64, 7u128), (3, 13), (5, 31), (7, 58)];
        let err = CountPoly::fit(&samples, 2, "test").unwrap_err();
        assert!(matches!(err, CountError::InterpolationMismatch(_)));
    }

    #[test]
    fn needs_enough_samples() {
        let samples = [(2u64, 7u128), (3, 13)];
        let err = CountPoly::fit(&samples, 2, "test").unwrap_err();
        assert!(matches!(err, CountError::NotEnoughPrimes { .. }));
    }

    #[test]
    fn fits_lower_degree_than_bound() {
        // constant 1 with bound 3
        let samples = [(2u64, 1u128), (3, 1), (5, 1), (7, 1), (11, 1)];
        let p = CountPoly::fit(&samples, 3, "test").unwrap();
        assert_eq!(p.coeffs, vec![BigInt::from(1)]);
    }
}
