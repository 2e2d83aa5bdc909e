//! The graded ring of symmetric functions over `Q`, truncated at a degree
//! bound, with Schur and power-sum bases, and its wreath-product extension
//! `Lambda_Gamma = Lambda^{tensor l}`.
//!
//! Multiplication by a power sum is the border-strip (Murnaghan-Nakayama)
//! rule; all basis transitions are driven by it. The Schur-type bases are
//! orthonormal for the Hall pairing, which is what the Fock space layer
//! relies on.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::partitions::{Multipartition, Partition};
use crate::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymFuncError {
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymBasis {
    Schur,
    Power,
}

/// A finitely supported rational vector over partitions in a tagged basis,
/// truncated at the degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: SymBasis,
    bound: u32,
    coeffs: BTreeMap<Partition, Rat>,
}

impl SymFunc {
    pub fn zero(basis: SymBasis, bound: u32) -> Self {
        SymFunc {
            basis,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit of the ring, `s_{} = p_{} = 1`.
    pub fn unit(basis: SymBasis, bound: u32) -> Self {
        let mut f = SymFunc::zero(basis, bound);
        f.add_term(Partition::empty(), Rat::one());
        f
    }

    pub fn schur(lambda: Partition, bound: u32) -> Self {
        assert!(lambda.size() <= bound);
        let mut f = SymFunc::zero(SymBasis::Schur, bound);
        f.add_term(lambda, Rat::one());
        f
    }

    pub fn power(lambda: Partition, bound: u32) -> Self {
        assert!(lambda.size() <= bound);
        let mut f = SymFunc::zero(SymBasis::Power, bound);
        f.add_term(lambda, Rat::one());
        f
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Rat {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Maximal size of a supporting partition (0 for the zero vector).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|k| k.size()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Rat) {
        debug_assert!(lambda.size() <= self.bound);
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rat) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis, self.bound);
        }
        SymFunc {
            basis: self.basis,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn plus(&self, other: &SymFunc) -> SymFunc {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        assert_eq!(self.bound, other.bound, "degree bound mismatch");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn minus(&self, other: &SymFunc) -> SymFunc {
        self.plus(&other.scaled(&rat(-1)))
    }

    pub fn to_schur(&self) -> SymFunc {
        match self.basis {
            SymBasis::Schur => self.clone(),
            SymBasis::Power => {
                let mut out = SymFunc::zero(SymBasis::Schur, self.bound);
                for (mu, c) in &self.coeffs {
                    for (lam, chi) in power_to_schur(mu).coeffs() {
                        out.add_term(lam.clone(), chi * c);
                    }
                }
                out
            }
        }
    }

    pub fn to_power(&self) -> SymFunc {
        match self.basis {
            SymBasis::Power => self.clone(),
            SymBasis::Schur => {
                let mut out = SymFunc::zero(SymBasis::Power, self.bound);
                for (lam, c) in &self.coeffs {
                    for (mu, v) in schur_to_power(lam).coeffs() {
                        out.add_term(mu.clone(), v * c);
                    }
                }
                out
            }
        }
    }

    /// Product, computed in the power basis where it is free. Errors if a
    /// resulting term would exceed the degree bound.
    pub fn mul(&self, other: &SymFunc) -> Result<SymFunc, SymFuncError> {
        assert_eq!(self.bound, other.bound, "degree bound mismatch");
        let a = self.to_power();
        let b = other.to_power();
        let mut out = SymFunc::zero(SymBasis::Power, self.bound);
        for (la, ca) in a.coeffs() {
            for (lb, cb) in b.coeffs() {
                let degree = la.size() + lb.size();
                if degree > self.bound {
                    return Err(SymFuncError::DegreeOverflow {
                        degree,
                        bound: self.bound,
                    });
                }
                let mut parts = la.parts().to_vec();
                parts.extend_from_slice(lb.parts());
                out.add_term(Partition::from_unsorted(parts), ca * cb);
            }
        }
        Ok(match self.basis {
            SymBasis::Power => out,
            SymBasis::Schur => out.to_schur(),
        })
    }

    /// JSON object mapping canonical partition strings to rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_linear(f, self.coeffs.iter())
    }
}

/// Common "c1 [..] + c2 [..] - ..." rendering for linear combinations.
pub(crate) fn format_linear<'a, K: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Rat)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (key, coeff) in terms {
        any = true;
        let (negative, mag) = if coeff.is_negative() {
            (true, -coeff.clone())
        } else {
            (false, coeff.clone())
        };
        if first {
            if negative {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", if negative { "-" } else { "+" })?;
        }
        if !mag.is_one() {
            write!(f, "{mag} ")?;
        }
        write!(f, "{key}")?;
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

/// Border strips of size `r` that can be added to `lambda`: the resulting
/// partitions together with the sign `(-1)^height`.
pub(crate) fn add_border_strips(lambda: &Partition, r: u32) -> Vec<(Partition, i32)> {
    let window = lambda.len() + r as usize;
    let betas = lambda.beta_numbers(window);
    let mut out = Vec::new();
    for (k, &b) in betas.iter().enumerate() {
        let target = b + r as i64;
        if betas.contains(&target) {
            continue;
        }
        let height = betas.iter().filter(|&&x| x > b && x < target).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next = betas.clone();
        next[k] = target;
        out.push((Partition::from_beta_numbers(next), sign));
    }
    out
}

/// Multiplication by the power sum `p_r`, expanded in the Schur basis by the
/// Murnaghan-Nakayama rule. Terms above the degree bound are dropped.
pub fn mult_by_power_sum(r: u32, f: &SymFunc) -> SymFunc {
    assert!(r >= 1);
    let f = f.to_schur();
    let mut out = SymFunc::zero(SymBasis::Schur, f.bound());
    for (lam, c) in f.coeffs() {
        if lam.size() + r > f.bound() {
            continue;
        }
        for (mu, sign) in add_border_strips(lam, r) {
            out.add_term(mu, c * rat(sign as i64));
        }
    }
    out
}

// Character table of S_n as the transition p_mu = sum_lambda chi[mu][lambda] s_lambda,
// memoized per degree behind a process-wide lock.
struct CharTable {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    chi: Vec<Vec<BigInt>>,
}

fn char_table(n: u32) -> Arc<CharTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CharTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().unwrap();
    if let Some(t) = guard.get(&n) {
        return Arc::clone(t);
    }
    let parts = Partition::all(n);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let mut chi = Vec::with_capacity(parts.len());
    for mu in &parts {
        let mut f = SymFunc::unit(SymBasis::Schur, n);
        for &part in mu.parts() {
            f = mult_by_power_sum(part, &f);
        }
        let mut row = vec![BigInt::zero(); parts.len()];
        for (lam, c) in f.coeffs() {
            debug_assert!(c.is_integer());
            row[index[lam]] = c.to_integer();
        }
        chi.push(row);
    }
    let table = Arc::new(CharTable { parts, index, chi });
    guard.insert(n, Arc::clone(&table));
    table
}

/// Expansion of `p_lambda` in the Schur basis.
pub fn power_to_schur(lambda: &Partition) -> SymFunc {
    let n = lambda.size();
    let table = char_table(n);
    let mu_idx = table.index[lambda];
    let mut out = SymFunc::zero(SymBasis::Schur, n);
    for (i, lam) in table.parts.iter().enumerate() {
        let v = &table.chi[mu_idx][i];
        if !v.is_zero() {
            out.add_term(lam.clone(), Rat::from_integer(v.clone()));
        }
    }
    out
}

/// Expansion of `s_lambda` in the power-sum basis:
/// `s_lambda = sum_mu z_mu^{-1} chi^lambda(mu) p_mu`.
pub fn schur_to_power(lambda: &Partition) -> SymFunc {
    let n = lambda.size();
    let table = char_table(n);
    let lam_idx = table.index[lambda];
    let mut out = SymFunc::zero(SymBasis::Power, n);
    for (i, mu) in table.parts.iter().enumerate() {
        let v = &table.chi[i][lam_idx];
        if !v.is_zero() {
            let z = Rat::from_integer(mu.z_value());
            out.add_term(mu.clone(), Rat::from_integer(v.clone()) / z);
        }
    }
    out
}

/// The Hall pairing: Schur functions are orthonormal,
/// `<p_lambda, p_mu> = delta z_lambda`.
pub fn hall_pairing(f: &SymFunc, g: &SymFunc) -> Rat {
    assert_eq!(f.bound(), g.bound(), "degree bound mismatch");
    match (f.basis(), g.basis()) {
        (SymBasis::Power, SymBasis::Power) => {
            let mut acc = Rat::zero();
            for (lam, a) in f.coeffs() {
                if let Some(b) = g.coeffs().get(lam) {
                    acc += a * b * Rat::from_integer(lam.z_value());
                }
            }
            acc
        }
        _ => {
            let a = f.to_schur();
            let b = g.to_schur();
            let mut acc = Rat::zero();
            for (lam, x) in a.coeffs() {
                if let Some(y) = b.coeffs().get(lam) {
                    acc += x * y;
                }
            }
            acc
        }
    }
}

/// The plethysm `psi^m` with the power sum `p_m`: the ring endomorphism
/// determined by `p_r -> p_{mr}`. The result is expanded in the basis of `f`.
pub fn plethysm_psi_m(m: u32, f: &SymFunc) -> Result<SymFunc, SymFuncError> {
    assert!(m >= 1);
    let degree = m * f.degree();
    if degree > f.bound() {
        return Err(SymFuncError::DegreeOverflow {
            degree,
            bound: f.bound(),
        });
    }
    let p = f.to_power();
    let mut out = SymFunc::zero(SymBasis::Power, f.bound());
    for (lam, c) in p.coeffs() {
        out.add_term(lam.dilate(m), c.clone());
    }
    Ok(match f.basis() {
        SymBasis::Power => out,
        SymBasis::Schur => out.to_schur(),
    })
}

/// Component rotation `(tau lambda)(p) = lambda(p+1)` on `Z_ell`.
pub fn rotate_tau(mp: &Multipartition) -> Multipartition {
    let ell = mp.ell();
    Multipartition::new(
        (0..ell)
            .map(|p| mp.component((p + 1) % ell).clone())
            .collect(),
    )
}

/// Inverse rotation `(tau^{-1} lambda)(p) = lambda(p-1)`.
pub fn rotate_tau_inv(mp: &Multipartition) -> Multipartition {
    let ell = mp.ell();
    Multipartition::new(
        (0..ell)
            .map(|p| mp.component((p + ell - 1) % ell).clone())
            .collect(),
    )
}

/// An element of `Lambda_Gamma` in the orthonormal `S_lambda` basis indexed
/// by `ell`-partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WreathFunc {
    ell: usize,
    bound: u32,
    coeffs: BTreeMap<Multipartition, Rat>,
}

impl WreathFunc {
    pub fn zero(ell: usize, bound: u32) -> Self {
        WreathFunc {
            ell,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(ell: usize, bound: u32) -> Self {
        let mut f = WreathFunc::zero(ell, bound);
        f.add_term(Multipartition::empty(ell), Rat::one());
        f
    }

    pub fn s_basis(mp: Multipartition, bound: u32) -> Self {
        assert!(mp.size() <= bound);
        let ell = mp.ell();
        let mut f = WreathFunc::zero(ell, bound);
        f.add_term(mp, Rat::one());
        f
    }

    /// The power sum `P_{r,p}` expanded in the `S` basis.
    pub fn power_sum(r: u32, p: usize, ell: usize, bound: u32) -> Self {
        wreath_mult_by_p(r, p, &WreathFunc::unit(ell, bound))
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeffs(&self) -> &BTreeMap<Multipartition, Rat> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mp: Multipartition, coeff: Rat) {
        debug_assert_eq!(mp.ell(), self.ell);
        debug_assert!(mp.size() <= self.bound);
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(mp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rat) -> WreathFunc {
        if c.is_zero() {
            return WreathFunc::zero(self.ell, self.bound);
        }
        WreathFunc {
            ell: self.ell,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn plus(&self, other: &WreathFunc) -> WreathFunc {
        assert_eq!(self.ell, other.ell);
        assert_eq!(self.bound, other.bound);
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for WreathFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_linear(f, self.coeffs.iter())
    }
}

/// Multiplication by `P_{r,p}`: the Murnaghan-Nakayama rule on the `p`-th
/// tensor component only. Terms above the bound are dropped.
pub fn wreath_mult_by_p(r: u32, p: usize, f: &WreathFunc) -> WreathFunc {
    assert!(r >= 1);
    assert!(p < f.ell());
    let mut out = WreathFunc::zero(f.ell(), f.bound());
    for (mp, c) in f.coeffs() {
        if mp.size() + r > f.bound() {
            continue;
        }
        for (comp, sign) in add_border_strips(mp.component(p), r) {
            out.add_term(mp.with_component(p, comp), c * rat(sign as i64));
        }
    }
    out
}

/// The orthonormal pairing of `Lambda_Gamma`: `<S_lambda, S_mu> = delta`.
pub fn wreath_pairing(f: &WreathFunc, g: &WreathFunc) -> Rat {
    assert_eq!(f.ell(), g.ell(), "component count mismatch");
    assert_eq!(f.bound(), g.bound(), "degree bound mismatch");
    let mut acc = Rat::zero();
    for (mp, a) in f.coeffs() {
        if let Some(b) = g.coeffs().get(mp) {
            acc += a * b;
        }
    }
    acc
}

/// Restriction `Lambda_Gamma -> Lambda`: `S_lambda -> prod_p S_{lambda(p)}`,
/// `P_{r,p} -> P_r`.
pub fn restrict_to_sym(f: &WreathFunc) -> Result<SymFunc, SymFuncError> {
    let mut out = SymFunc::zero(SymBasis::Schur, f.bound());
    for (mp, c) in f.coeffs() {
        let mut prod = SymFunc::unit(SymBasis::Schur, f.bound());
        for comp in mp.components() {
            if comp.is_empty() {
                continue;
            }
            prod = prod.mul(&SymFunc::schur(comp.clone(), f.bound()))?;
        }
        out = out.plus(&prod.scaled(c));
    }
    Ok(out)
}

/// Induction `Lambda -> Lambda_Gamma`: the ring homomorphism determined by
/// `P_r -> P_r^1 = sum_p P_{r,p}`.
pub fn induce_from_sym(f: &SymFunc, ell: usize) -> WreathFunc {
    let p = f.to_power();
    let mut out = WreathFunc::zero(ell, f.bound());
    for (mu, c) in p.coeffs() {
        let mut w = WreathFunc::unit(ell, f.bound());
        for &part in mu.parts() {
            let mut next = WreathFunc::zero(ell, f.bound());
            for comp in 0..ell {
                next = next.plus(&wreath_mult_by_p(part, comp, &w));
            }
            w = next;
        }
        out = out.plus(&w.scaled(c));
    }
    out
}
