//! `#IndSub(Φ, k, G)` by subset enumeration and through the homomorphism
//! basis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{HostGraph, MAX_SMALL};
use crate::hombasis::{hom_vector, HomVector};
use crate::par;
use crate::properties::PropertySpec;
use crate::spectrum::binomial;

/// Default cap on the number of `k`-subsets [`count_brute`] will examine.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Visits every `k`-subset of `lo..n` extending `prefix`, in lexicographic
/// order.
fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, prefix: &mut Vec<usize>, lo: usize, visit: &mut F) {
    if prefix.len() == k {
        visit(prefix);
        return;
    }
    let need = k - prefix.len();
    for v in lo..=n.saturating_sub(need) {
        prefix.push(v);
        for_each_subset(n, k, prefix, v + 1, visit);
        prefix.pop();
    }
}

/// Enumerates all `k`-subsets of `V(g)`. Refuses, rather than truncates,
/// when `C(n, k)` exceeds `budget`.
pub fn count_brute(phi: &PropertySpec, k: usize, g: &HostGraph, budget: u64) -> Result<BigUint> {
    if k > MAX_SMALL {
        return Err(Error::too_large("subset size k", k, MAX_SMALL));
    }
    let n = g.n();
    let needed = binomial(n, k);
    if needed > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    if k > n {
        return Ok(BigUint::default());
    }
    if k == 0 {
        let empty = g.induced_small(&[])?;
        return Ok(BigUint::from(phi.evaluate(&empty)? as u8));
    }
    let by_first = par::map_range(0..(n - k + 1) as u64, |first| -> Result<u64> {
        let mut count = 0u64;
        let mut err = None;
        let mut prefix = vec![first as usize];
        for_each_subset(n, k, &mut prefix, first as usize + 1, &mut |s: &[usize]| {
            if err.is_some() {
                return;
            }
            match g.induced_small(s).and_then(|h| phi.evaluate(&h)) {
                Ok(true) => count += 1,
                Ok(false) => {}
                Err(e) => err = Some(e),
            }
        });
        err.map_or(Ok(count), Err)
    });
    let mut total = 0u64;
    for c in by_first {
        total += c?;
    }
    Ok(BigUint::from(total))
}

/// `Σ a(H)·#Hom(H, g)` for a precomputed vector; the rational sum must be a
/// non-negative integer.
pub fn count_with_vector(hv: &HomVector, g: &HostGraph) -> Result<BigUint> {
    let total = hv.evaluate(g)?;
    if !total.is_integer() {
        return Err(Error::Consistency(format!(
            "basis sum {total} is not an integer (k = {})",
            hv.k()
        )));
    }
    let t = total.to_integer();
    if t.is_negative() {
        return Err(Error::Consistency(format!("basis sum {t} is negative (k = {})", hv.k())));
    }
    Ok(t.to_biguint().expect("non-negative"))
}

pub fn count_basis(phi: &PropertySpec, k: usize, g: &HostGraph) -> Result<BigUint> {
    count_with_vector(&hom_vector(phi, k)?, g)
}

/// Homomorphism vectors keyed by `(property name, k)`, computed on first
/// use. Properties sharing a cache must have distinct names.
#[derive(Default)]
pub struct BasisCache {
    vectors: Mutex<HashMap<(String, usize), Arc<HomVector>>>,
}

impl BasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, phi: &PropertySpec, k: usize) -> Result<Arc<HomVector>> {
        let key = (phi.name().to_string(), k);
        if let Some(v) = self.vectors.lock().unwrap().get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(hom_vector(phi, k)?);
        Ok(Arc::clone(self.vectors.lock().unwrap().entry(key).or_insert(v)))
    }

    pub fn count(&self, phi: &PropertySpec, k: usize, g: &HostGraph) -> Result<BigUint> {
        let hv = self.get(phi, k)?;
        count_with_vector(&hv, g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Basis,
    Brute,
    Both,
}

/// Counts by one or both methods; with [`Method::Both`] a disagreement is a
/// consistency error.
pub fn count(phi: &PropertySpec, k: usize, g: &HostGraph, method: Method, budget: u64) -> Result<(Option<BigUint>, Option<BigUint>)> {
    let basis = match method {
        Method::Basis | Method::Both => Some(count_basis(phi, k, g)?),
        Method::Brute => None,
    };
    let brute = match method {
        Method::Brute | Method::Both => Some(count_brute(phi, k, g, budget)?),
        Method::Basis => None,
    };
    if let (Some(a), Some(b)) = (&basis, &brute) {
        if a != b {
            return Err(Error::Consistency(format!(
                "basis count {a} differs from brute-force count {b} for {} at k = {k}",
                phi.name()
            )));
        }
    }
    Ok((basis, brute))
}

/// Both sides of `#IndSub(¬Φ, k, G) = C(n, k) − #IndSub(Φ, k, G)`.
pub fn count_negation_check(phi: &PropertySpec, k: usize, g: &HostGraph, budget: u64) -> Result<(BigUint, BigUint)> {
    let lhs = count_brute(&phi.negate(), k, g, budget)?;
    let all = binomial(g.n(), k).to_biguint().expect("binomials are non-negative");
    let rhs = all - count_brute(phi, k, g, budget)?;
    if lhs != rhs {
        return Err(Error::Consistency(format!("negation identity fails: {lhs} != {rhs}")));
    }
    Ok((lhs, rhs))
}

/// Both sides of `#IndSub(Φ̅, k, G) = #IndSub(Φ, k, G̅)`.
pub fn count_inverse_check(phi: &PropertySpec, k: usize, g: &HostGraph, budget: u64) -> Result<(BigUint, BigUint)> {
    let lhs = count_brute(&phi.invert(), k, g, budget)?;
    let rhs = count_brute(phi, k, &g.complement(), budget)?;
    if lhs != rhs {
        return Err(Error::Consistency(format!("inversion identity fails: {lhs} != {rhs}")));
    }
    Ok((lhs, rhs))
}

/// Number of independent sets of size `k`, by enumeration.
pub fn count_independent_sets(g: &HostGraph, k: usize, budget: u64) -> Result<BigUint> {
    count_brute(&PropertySpec::no_edges(), k, g, budget)
}
