//! f-vectors, h-vectors, the f-polynomial and two-node Birkhoff
//! poisedness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{self, MAX_CATALOG_K, MAX_EXHAUSTIVE_K};
use crate::error::{Error, Result};
use crate::graph::{pairs, SmallGraph};
use crate::par;
use crate::properties::PropertySpec;

/// Exact binomial coefficient for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `f_i`: number of `i`-edge subsets `A` of `E(K_k)` with `Φ(K_k[A]) = 1`.
///
/// Sweeps all `2^C(k,2)` subsets for `k ≤ 6` and weighs catalog classes by
/// their labelled copy counts for `k ∈ {7, 8}`.
pub fn f_vector(phi: &PropertySpec, k: usize) -> Result<Vec<BigInt>> {
    if k == 0 || k > MAX_CATALOG_K {
        return Err(Error::too_large("f-vector k", k, MAX_CATALOG_K));
    }
    let d = pairs(k);
    if k <= MAX_EXHAUSTIVE_K {
        f_vector_sweep(phi, k)
    } else {
        let cat = catalog::shared(k)?;
        let mut f = vec![BigInt::zero(); d + 1];
        let values = par::map(cat.entries(), |e| phi.evaluate(&e.graph));
        for (e, v) in cat.entries().iter().zip(values) {
            if v? {
                f[e.edge_count()] += e.labeled_copies();
            }
        }
        Ok(f)
    }
}

/// The `2^C(k,2)` subset sweep, available for `k ≤ 6`.
pub fn f_vector_sweep(phi: &PropertySpec, k: usize) -> Result<Vec<BigInt>> {
    if k == 0 || k > MAX_EXHAUSTIVE_K {
        return Err(Error::too_large("f-vector sweep k", k, MAX_EXHAUSTIVE_K));
    }
    let d = pairs(k);
    let (counts, err) = par::fold_range(
        0..1u64 << d,
        || (vec![0u64; d + 1], None::<Error>),
        |(counts, err), bits| {
            if err.is_some() {
                return;
            }
            let g = SmallGraph::from_edge_bits(k, bits as u128).expect("k <= 6");
            match phi.evaluate(&g) {
                Ok(true) => counts[bits.count_ones() as usize] += 1,
                Ok(false) => {}
                Err(e) => *err = Some(e),
            }
        },
        |(mut a, ea), (b, eb)| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            (a, ea.or(eb))
        },
    );
    match err {
        Some(e) => Err(e),
        None => Ok(counts.into_iter().map(BigInt::from).collect()),
    }
}

/// `h_ℓ = Σ_{i ≤ ℓ} (-1)^{ℓ-i} C(d-i, ℓ-i) f_i` with `d = len(f) - 1`.
pub fn h_vector(f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len().saturating_sub(1);
    (0..f.len())
        .map(|l| {
            (0..=l).fold(BigInt::zero(), |acc, i| {
                let term = binomial(d - i, l - i) * &f[i];
                if (l - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Inverse of [`h_vector`]: `f_ℓ = Σ_{i ≤ ℓ} C(d-i, ℓ-i) h_i`.
pub fn f_from_h(h: &[BigInt]) -> Vec<BigInt> {
    let d = h.len().saturating_sub(1);
    (0..h.len())
        .map(|l| (0..=l).map(|i| binomial(d - i, l - i) * &h[i]).sum())
        .collect()
}

/// `𝔣(x) = Σ_i f_i x^{d-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPolynomial {
    /// `coeffs[p]` is the coefficient of `x^p`.
    coeffs: Vec<BigInt>,
}

impl FPolynomial {
    pub fn from_f(f: &[BigInt]) -> Self {
        FPolynomial {
            coeffs: f.iter().rev().cloned().collect(),
        }
    }

    /// Nominal degree `d`; the actual degree may be lower.
    pub fn d(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `𝔣^{(j)}(x)`.
    pub fn derivative_at(&self, j: usize, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut power = BigRational::one();
        for p in j..self.coeffs.len() {
            // falling factorial p (p-1) .. (p-j+1)
            let ff: BigInt = (p - j + 1..=p).map(BigInt::from).product();
            acc += BigRational::from_integer(ff * &self.coeffs[p]) * &power;
            power *= x;
        }
        acc
    }
}

/// A `2 × (d+1)` incidence matrix of vanishing conditions: row 0 at
/// `x = -1`, row 1 at `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffMatrix {
    rows: [Vec<bool>; 2],
}

impl BirkhoffMatrix {
    pub fn new(at_minus_one: Vec<bool>, at_zero: Vec<bool>) -> Result<Self> {
        if at_minus_one.len() != at_zero.len() || at_zero.is_empty() {
            return Err(Error::InvalidMatrix(format!(
                "rows of length {} and {}",
                at_minus_one.len(),
                at_zero.len()
            )));
        }
        Ok(BirkhoffMatrix {
            rows: [at_minus_one, at_zero],
        })
    }

    pub fn d(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.rows[i]
    }

    pub fn ones(&self) -> usize {
        self.rows.iter().flatten().filter(|&&e| e).count()
    }

    /// `M_j`: number of conditions on derivatives of order at most `j`.
    pub fn m(&self, j: usize) -> usize {
        (0..=j)
            .map(|i| self.rows[0][i] as usize + self.rows[1][i] as usize)
            .sum()
    }

    /// Pólya's criterion: with exactly `d+1` conditions, poised iff
    /// `M_j ≥ j+1` for every `j < d`.
    pub fn polya_poised(&self) -> Result<bool> {
        let d = self.d();
        if self.ones() != d + 1 {
            return Err(Error::InvalidMatrix(format!(
                "{} conditions, expected d+1 = {}",
                self.ones(),
                d + 1
            )));
        }
        Ok((0..d).all(|j| self.m(j) > j))
    }

    /// The conditions forced by an f-vector whose `h`-entries
    /// `h_d, .., h_{β+1}` all vanish: `𝔣^{(j)}(-1) = 0` for `j < w`, and
    /// `𝔣^{(j)}(0) = 0` wherever `f_{d-j} = 0`, keeping exactly `β+1` of the
    /// latter.
    pub fn from_vanishing(f: &[BigInt]) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::InvalidMatrix("empty f-vector".into()));
        }
        let d = f.len() - 1;
        let w = hamming_weight(f);
        let beta1 = d + 1 - w;
        let row1 = (0..=d).map(|j| j < w).collect();
        let mut kept = 0;
        let row2 = (0..=d)
            .map(|j| {
                let on = f[d - j].is_zero() && kept < beta1;
                kept += on as usize;
                on
            })
            .collect();
        Self::new(row1, row2)
    }
}

pub fn hamming_weight(v: &[BigInt]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// f- and h-vector data for one `(Φ, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub k: usize,
    pub d: usize,
    #[serde(with = "crate::json::big_vec")]
    pub f: Vec<BigInt>,
    #[serde(with = "crate::json::big_vec")]
    pub h: Vec<BigInt>,
    pub hw: usize,
    /// `d − hw`; negative only when every entry of `f` is non-zero.
    pub beta: i64,
    pub max_nonzero_h_index: Option<usize>,
}

impl Spectrum {
    pub fn from_f(k: usize, f: Vec<BigInt>) -> Self {
        let d = pairs(k);
        debug_assert_eq!(f.len(), d + 1);
        let h = h_vector(&f);
        let hw = hamming_weight(&f);
        let max_nonzero_h_index = h.iter().rposition(|x| !x.is_zero());
        Spectrum {
            k,
            d,
            f,
            h,
            hw,
            beta: d as i64 - hw as i64,
            max_nonzero_h_index,
        }
    }

    /// `Φ` is false on every `k`-vertex graph.
    pub fn trivially_false(&self) -> bool {
        self.hw == 0
    }

    pub fn polynomial(&self) -> FPolynomial {
        FPolynomial::from_f(&self.f)
    }

    /// Checks `𝔣^{(j)}(0) = j!·f_{d-j}` and `𝔣^{(j)}(-1) = j!·h_{d-j}` for
    /// every `j ≤ d`.
    pub fn check_derivative_identities(&self) -> Result<()> {
        let p = self.polynomial();
        let zero = BigRational::zero();
        let minus_one = -BigRational::one();
        let mut fact = BigInt::one();
        for j in 0..=self.d {
            if j > 0 {
                fact *= j;
            }
            let at0 = p.derivative_at(j, &zero);
            let at1 = p.derivative_at(j, &minus_one);
            let want0 = BigRational::from_integer(&fact * &self.f[self.d - j]);
            let want1 = BigRational::from_integer(&fact * &self.h[self.d - j]);
            if at0 != want0 || at1 != want1 {
                return Err(Error::Consistency(format!(
                    "derivative identity fails at j = {j} (k = {})",
                    self.k
                )));
            }
        }
        Ok(())
    }

    /// Unless `Φ` is trivially false: some `h_ℓ` with `ℓ ≥ β+1` is non-zero.
    pub fn check_vanishing_bound(&self) -> Result<()> {
        if self.trivially_false() {
            return Ok(());
        }
        let ok = match self.max_nonzero_h_index {
            Some(i) => i as i64 > self.beta,
            None => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Consistency(format!(
                "k = {}: no non-zero h entry above beta = {}",
                self.k, self.beta
            )))
        }
    }
}

/// Full spectrum of `(Φ, k)` with the derivative identities and the
/// vanishing bound asserted.
pub fn spectrum_report(phi: &PropertySpec, k: usize) -> Result<Spectrum> {
    let s = Spectrum::from_f(k, f_vector(phi, k)?);
    s.check_derivative_identities()?;
    s.check_vanishing_bound()?;
    if !s.trivially_false() {
        let e = BirkhoffMatrix::from_vanishing(&s.f)?;
        if !e.polya_poised()? {
            return Err(Error::Consistency(format!(
                "k = {k}: vanishing-condition matrix is not poised"
            )));
        }
    }
    debug_assert!(s.f.iter().all(|x| !x.is_negative()));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_f_vectors() {
        assert_eq!(f_vector(&PropertySpec::always_true(), 3).unwrap(), ints(&[1, 3, 3, 1]));
        assert_eq!(f_vector(&PropertySpec::no_edges(), 4).unwrap(), ints(&[1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(f_vector(&PropertySpec::connected(), 3).unwrap(), ints(&[0, 0, 3, 1]));
    }

    #[test]
    fn h_vectors() {
        assert_eq!(h_vector(&ints(&[1, 3, 3, 1])), ints(&[1, 0, 0, 0]));
        assert_eq!(h_vector(&ints(&[1, 0, 0, 0])), ints(&[1, -3, 3, -1]));
        let f = ints(&[0, 0, 3, 1]);
        assert_eq!(f_from_h(&h_vector(&f)), f);
    }

    #[test]
    fn derivatives_of_x_plus_one() {
        let p = FPolynomial::from_f(&ints(&[1, 1]));
        let m1 = -BigRational::one();
        assert!(p.derivative_at(0, &m1).is_zero());
        assert_eq!(p.derivative_at(1, &m1), BigRational::one());
    }

    #[test]
    fn polya_examples() {
        let taylor = BirkhoffMatrix::new(vec![false; 4], vec![true; 4]).unwrap();
        assert!(taylor.polya_poised().unwrap());
        let bad = BirkhoffMatrix::new(vec![false, true], vec![false, true]).unwrap();
        assert!(!bad.polya_poised().unwrap());
        let short = BirkhoffMatrix::new(vec![true, false], vec![false, false]).unwrap();
        assert!(short.polya_poised().is_err());
    }

    #[test]
    fn report_examples() {
        let s = spectrum_report(&PropertySpec::no_edges(), 3).unwrap();
        assert_eq!((s.hw, s.beta), (1, 2));
        assert_eq!(s.h[3], BigInt::from(-1));
        let s = spectrum_report(&PropertySpec::always_false(), 4).unwrap();
        assert!(s.trivially_false() && s.max_nonzero_h_index.is_none());
        let s = spectrum_report(&PropertySpec::edge_count_even(), 3).unwrap();
        assert_eq!(s.f, ints(&[1, 0, 3, 0]));
        assert_eq!((s.hw, s.beta), (2, 1));
        assert!(s.max_nonzero_h_index.unwrap() >= 2);
    }

    #[test]
    fn catalog_route_matches_sweep_at_six() {
        for phi in crate::properties::builtin_zoo() {
            let sweep = f_vector_sweep(&phi, 6).unwrap();
            let cat = catalog::shared(6).unwrap();
            let mut f = vec![BigInt::zero(); 16];
            for e in cat.entries() {
                if phi.evaluate(&e.graph).unwrap() {
                    f[e.edge_count()] += e.labeled_copies();
                }
            }
            assert_eq!(sweep, f, "{}", phi.name());
        }
    }
}
