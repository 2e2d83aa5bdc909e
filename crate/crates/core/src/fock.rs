//! The charged level-`l` Fock space of affine `sl_m` on the multipartition
//! basis, with the Chevalley operators `e_q`, `f_q`, the Heisenberg
//! operators `b_r`, `b'_r` (through the identification with
//! `Lambda_Gamma`), affine weights, and the Casimir operators.
//!
//! The basis vector `|lambda, s>` corresponds to `S_{tau lambda}` in
//! `Lambda_Gamma`; the component rotation `tau` lives exactly once, in the
//! transport functions here.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::partitions::{addable_removable, nodes_with_residue, Charge, Multipartition, Partition};
use crate::symfunc::{add_border_strips, format_linear, rotate_tau, rotate_tau_inv};
use crate::{rat, Rat};

/// Ambient data of a charged Fock space: rank `m >= 2`, level `ell`, an
/// `ell`-charge, and the degree bound used for truncation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockSpaceParams {
    pub m: u32,
    pub ell: usize,
    pub charge: Charge,
    pub bound: u32,
}

impl FockSpaceParams {
    pub fn new(m: u32, ell: usize, charge: Charge, bound: u32) -> Self {
        assert!(m >= 2, "the rank m must be at least 2");
        assert!(ell >= 1);
        assert_eq!(charge.len(), ell, "charge length must equal ell");
        FockSpaceParams {
            m,
            ell,
            charge,
            bound,
        }
    }
}

/// A finitely supported rational combination of basis vectors `|lambda, s>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    params: FockSpaceParams,
    coeffs: BTreeMap<Multipartition, Rat>,
}

impl FockVector {
    pub fn zero(params: FockSpaceParams) -> Self {
        FockVector {
            params,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(params: FockSpaceParams, mp: Multipartition) -> Self {
        assert_eq!(mp.ell(), params.ell);
        assert!(mp.size() <= params.bound);
        let mut v = FockVector::zero(params);
        v.add_term(mp, Rat::one());
        v
    }

    pub fn vacuum(params: FockSpaceParams) -> Self {
        let mp = Multipartition::empty(params.ell);
        FockVector::basis(params, mp)
    }

    pub fn params(&self) -> &FockSpaceParams {
        &self.params
    }

    pub fn coeffs(&self) -> &BTreeMap<Multipartition, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, mp: &Multipartition) -> Rat {
        self.coeffs.get(mp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, mp: Multipartition, coeff: Rat) {
        debug_assert_eq!(mp.ell(), self.params.ell);
        if coeff.is_zero() || mp.size() > self.params.bound {
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

    pub fn scaled(&self, c: &Rat) -> FockVector {
        if c.is_zero() {
            return FockVector::zero(self.params.clone());
        }
        FockVector {
            params: self.params.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        assert_eq!(self.params, other.params, "Fock space parameters mismatch");
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn minus(&self, other: &FockVector) -> FockVector {
        self.plus(&other.scaled(&rat(-1)))
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

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_linear(f, self.coeffs.iter())
    }
}

/// The orthonormal pairing on the `|lambda, s>` basis.
pub fn fock_pairing(u: &FockVector, v: &FockVector) -> Rat {
    assert_eq!(u.params, v.params, "Fock space parameters mismatch");
    let mut acc = Rat::zero();
    for (mp, a) in u.coeffs() {
        if let Some(b) = v.coeffs().get(mp) {
            acc += a * b;
        }
    }
    acc
}

/// `e_q`: sum over removals of residue-`q` nodes.
pub fn apply_e(q: u32, v: &FockVector) -> FockVector {
    let params = v.params().clone();
    let mut out = FockVector::zero(params.clone());
    for (mp, c) in v.coeffs() {
        let (_, removable) = addable_removable(mp, &params.charge, params.m, q);
        for node in removable {
            let comp = mp.component(node.comp).with_cell_removed(node.row, node.col);
            out.add_term(mp.with_component(node.comp, comp), c.clone());
        }
    }
    out
}

/// `f_q`: sum over additions of residue-`q` nodes; terms beyond the degree
/// bound are dropped.
pub fn apply_f(q: u32, v: &FockVector) -> FockVector {
    let params = v.params().clone();
    let mut out = FockVector::zero(params.clone());
    for (mp, c) in v.coeffs() {
        if mp.size() + 1 > params.bound {
            continue;
        }
        let (addable, _) = addable_removable(mp, &params.charge, params.m, q);
        for node in addable {
            let comp = mp.component(node.comp).with_cell_added(node.row, node.col);
            out.add_term(mp.with_component(node.comp, comp), c.clone());
        }
    }
    out
}

// Border strips of size `r` removable from `lambda`, with the MN sign. The
// sign matches the corresponding addition, so removal is the transpose of
// addition in the orthonormal basis.
fn remove_border_strips(lambda: &Partition, r: u32) -> Vec<(Partition, i32)> {
    let window = lambda.len() + r as usize;
    let betas = lambda.beta_numbers(window);
    let mut out = Vec::new();
    for (k, &b) in betas.iter().enumerate() {
        let target = b - r as i64;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let height = betas.iter().filter(|&&x| x > target && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next = betas.clone();
        next[k] = target;
        out.push((Partition::from_beta_numbers(next), sign));
    }
    out
}

/// `b_r`: transport to `Lambda_Gamma` by `|lambda,s> -> S_{tau lambda}`,
/// multiply by `P^1_{mr} = sum_p P_{mr,p}`, transport back. Terms beyond the
/// bound are dropped.
pub fn apply_b(r: u32, v: &FockVector) -> FockVector {
    assert!(r >= 1);
    let params = v.params().clone();
    let strip = params.m * r;
    let mut out = FockVector::zero(params.clone());
    for (mp, c) in v.coeffs() {
        if mp.size() + strip > params.bound {
            continue;
        }
        let shifted = rotate_tau(mp);
        for p in 0..params.ell {
            for (comp, sign) in add_border_strips(shifted.component(p), strip) {
                let image = rotate_tau_inv(&shifted.with_component(p, comp));
                out.add_term(image, c * rat(sign as i64));
            }
        }
    }
    out
}

/// `b'_r`: the adjoint of `b_r` in the orthonormal basis, realized by
/// border-strip removal through the same transport.
pub fn apply_b_dual(r: u32, v: &FockVector) -> FockVector {
    assert!(r >= 1);
    let params = v.params().clone();
    let strip = params.m * r;
    let mut out = FockVector::zero(params.clone());
    for (mp, c) in v.coeffs() {
        if mp.size() < strip {
            continue;
        }
        let shifted = rotate_tau(mp);
        for p in 0..params.ell {
            for (comp, sign) in remove_border_strips(shifted.component(p), strip) {
                let image = rotate_tau_inv(&shifted.with_component(p, comp));
                out.add_term(image, c * rat(sign as i64));
            }
        }
    }
    out
}

/// The level-`ml` Casimir `(1/ml) sum_r b_r b'_r` applied to a vector.
pub fn apply_casimir(v: &FockVector) -> FockVector {
    let params = v.params().clone();
    let max_degree = v.coeffs().keys().map(|k| k.size()).max().unwrap_or(0);
    let level = rat((params.m as i64) * (params.ell as i64));
    let mut out = FockVector::zero(params.clone());
    let mut r = 1;
    while params.m * r <= max_degree {
        out = out.plus(&apply_b(r, &apply_b_dual(r, v)));
        r += 1;
    }
    out.scaled(&level.recip())
}

/// An affine weight in the basis `(omega_0, ..., omega_{k-1}, delta)` of the
/// rank-`k` extended affine weight space, with the pairing
/// `<omega_p, omega_q> = min(p,q) - pq/k`, `<omega_p, delta> = 1`,
/// `<delta, delta> = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineWeight {
    pub omega: Vec<i64>,
    pub delta: Rat,
}

impl AffineWeight {
    pub fn zero(rank: usize) -> Self {
        AffineWeight {
            omega: vec![0; rank],
            delta: Rat::zero(),
        }
    }

    pub fn fundamental(p: usize, rank: usize) -> Self {
        let mut w = AffineWeight::zero(rank);
        w.omega[p] = 1;
        w
    }

    /// The simple root `alpha_q = 2 omega_q - omega_{q-1} - omega_{q+1}
    /// (+ delta if q = 0)`, indices mod the rank.
    pub fn alpha(q: usize, rank: usize) -> Self {
        assert!(rank >= 2);
        let mut w = AffineWeight::zero(rank);
        w.omega[q] += 2;
        w.omega[(q + rank - 1) % rank] -= 1;
        w.omega[(q + 1) % rank] -= 1;
        if q == 0 {
            w.delta = Rat::one();
        }
        w
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    /// The level: the sum of the fundamental-weight coefficients.
    pub fn level(&self) -> i64 {
        self.omega.iter().sum()
    }

    pub fn plus(&self, other: &AffineWeight) -> AffineWeight {
        assert_eq!(self.rank(), other.rank());
        AffineWeight {
            omega: self
                .omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| a + b)
                .collect(),
            delta: &self.delta + &other.delta,
        }
    }

    pub fn minus(&self, other: &AffineWeight) -> AffineWeight {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, c: i64) -> AffineWeight {
        AffineWeight {
            omega: self.omega.iter().map(|a| a * c).collect(),
            delta: &self.delta * rat(c),
        }
    }

    pub fn with_delta(mut self, delta: Rat) -> AffineWeight {
        self.delta = delta;
        self
    }

    /// The bilinear pairing of the extended affine weight space.
    pub fn pairing(&self, other: &AffineWeight) -> Rat {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let k = self.rank() as i64;
        let mut acc = Rat::zero();
        for (p, &a) in self.omega.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (q, &b) in other.omega.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let (p, q) = (p as i64, q as i64);
                let form = rat(p.min(q)) - Rat::new((p * q).into(), k.into());
                acc += rat(a * b) * form;
            }
        }
        acc += &self.delta * rat(other.level());
        acc += &other.delta * rat(self.level());
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "omega": self.omega,
            "delta": self.delta.to_string(),
        })
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, &a) in self.omega.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if first {
                if a < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if a < 0 { "-" } else { "+" })?;
            }
            if a.abs() != 1 {
                write!(f, "{} ", a.abs())?;
            }
            write!(f, "w{p}")?;
        }
        if !self.delta.is_zero() {
            let mag = self.delta.abs();
            if first {
                if self.delta.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if self.delta.is_negative() { "-" } else { "+" })?;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "d")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Delta(s,m) = (1/2) sum_p <omega_{s_p mod m}, omega_{s_p mod m}>
/// + (1/2) sum_p s_p (s_p/m - 1)`.
pub fn delta_scaling(charge: &Charge, m: u32) -> Rat {
    let half = Rat::new(1.into(), 2.into());
    let mut acc = Rat::zero();
    for &s in charge.entries() {
        let a = s.rem_euclid(m as i64);
        let omega = AffineWeight::fundamental(a as usize, m as usize);
        acc += &half * omega.pairing(&omega);
        acc += &half * rat(s) * (Rat::new(s.into(), (m as i64).into()) - Rat::one());
    }
    acc
}

/// The `tilde sl_m`-weight of `|lambda, s>`:
/// `-Delta(s,m) delta + sum_p omega_{s_p mod m} - sum_q n_q(lambda) alpha_q`.
pub fn weight_of(mp: &Multipartition, params: &FockSpaceParams) -> AffineWeight {
    let m = params.m as usize;
    let mut w = AffineWeight::zero(m).with_delta(-delta_scaling(&params.charge, params.m));
    for &s in params.charge.entries() {
        w.omega[s.rem_euclid(params.m as i64) as usize] += 1;
    }
    let counts = nodes_with_residue(mp, &params.charge, params.m);
    for (q, &n) in counts.iter().enumerate() {
        if n > 0 {
            w = w.minus(&AffineWeight::alpha(q, m).scaled(n as i64));
        }
    }
    w
}

/// The number of multipartitions of each degree `0..=n` for the parameters.
pub fn degree_dimension(params: &FockSpaceParams, n: u32) -> u64 {
    crate::partitions::count_table(n, params.ell)[n as usize]
}

/// Matrix of the level-`ml` Casimir on the degree-`n` basis (the canonical
/// sorted order of `Multipartition::all`). Symmetric, PSD, rational.
pub fn casimir_matrix(n: u32, params: &FockSpaceParams) -> Vec<Vec<Rat>> {
    assert!(n <= params.bound);
    let basis = Multipartition::all(n, params.ell);
    let index: BTreeMap<&Multipartition, usize> =
        basis.iter().enumerate().map(|(i, mp)| (mp, i)).collect();
    let mut mat = vec![vec![Rat::zero(); basis.len()]; basis.len()];
    for (col, mp) in basis.iter().enumerate() {
        let image = apply_casimir(&FockVector::basis(params.clone(), mp.clone()));
        for (key, c) in image.coeffs() {
            mat[index[key]][col] = c.clone();
        }
    }
    mat
}

/// Matrix of the `m`-th Casimir `(1/ml) sum_r b_{mr} b'_{mr}` on the
/// partitions of `n` inside the level-1 Fock space of `sl_ell`, where `b_t`
/// acts as multiplication by `P_{ell t}`.
pub fn casimir_m_matrix_level1(n: u32, m: u32, ell: usize) -> Vec<Vec<Rat>> {
    let basis = Partition::all(n);
    let index: BTreeMap<&Partition, usize> =
        basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let level = rat(m as i64 * ell as i64);
    let mut mat = vec![vec![Rat::zero(); basis.len()]; basis.len()];
    let stride = (ell as u32) * m;
    for (col, lam) in basis.iter().enumerate() {
        let mut r = 1u32;
        while stride * r <= n {
            let strip = stride * r;
            for (down, s1) in remove_border_strips(lam, strip) {
                for (up, s2) in add_border_strips(&down, strip) {
                    mat[index[&up]][col] += rat((s1 * s2) as i64) / &level;
                }
            }
            r += 1;
        }
        let _ = col;
    }
    mat
}

/// Dense row-major JSON export of a rational matrix.
pub fn matrix_to_json(mat: &[Vec<Rat>]) -> serde_json::Value {
    serde_json::json!({
        "rows": mat.len(),
        "cols": mat.first().map(|r| r.len()).unwrap_or(0),
        "entries": mat
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, ell: usize, charge: &[i64], bound: u32) -> FockSpaceParams {
        FockSpaceParams::new(m, ell, Charge::new(charge.to_vec()), bound)
    }

    fn basis(params: &FockSpaceParams, s: &str) -> FockVector {
        FockVector::basis(params.clone(), s.parse().unwrap())
    }

    #[test]
    fn e_f_examples() {
        let pr = params(2, 1, &[0], 8);
        let v = basis(&pr, "[1]");
        assert_eq!(apply_e(0, &v), basis(&pr, "[]"));
        assert!(apply_e(1, &v).is_zero());

        let v = basis(&pr, "[2,1]");
        assert_eq!(apply_e(1, &v), basis(&pr, "[2]").plus(&basis(&pr, "[1,1]")));

        let pr2 = params(2, 2, &[0, 0], 8);
        let v = FockVector::vacuum(pr2.clone());
        assert_eq!(
            apply_f(0, &v),
            basis(&pr2, "[1]|[]").plus(&basis(&pr2, "[]|[1]"))
        );
    }

    #[test]
    fn f_truncates_at_bound() {
        let pr = params(2, 1, &[0], 1);
        let v = basis(&pr, "[1]");
        assert!(apply_f(0, &v).is_zero());
        assert!(apply_f(1, &v).is_zero());
    }

    #[test]
    fn chevalley_on_small_degrees() {
        for (m, ell, charge) in [(2, 1, vec![0i64]), (3, 1, vec![0]), (2, 2, vec![0, 1])] {
            let pr = params(m, ell, &charge, 6);
            for n in 0..=4u32 {
                for mp in Multipartition::all(n, ell) {
                    let v = FockVector::basis(pr.clone(), mp.clone());
                    for q in 0..m {
                        for qq in 0..m {
                            let lhs = apply_e(q, &apply_f(qq, &v))
                                .minus(&apply_f(qq, &apply_e(q, &v)));
                            let expected = if q == qq {
                                let (a, r) = addable_removable(&mp, &pr.charge, m, q);
                                v.scaled(&rat(a.len() as i64 - r.len() as i64))
                            } else {
                                FockVector::zero(pr.clone())
                            };
                            assert_eq!(lhs, expected, "m={m} ell={ell} mp={mp} q={q} qq={qq}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn b_examples() {
        let pr = params(2, 1, &[0], 8);
        let v = FockVector::vacuum(pr.clone());
        assert_eq!(
            apply_b(1, &v),
            basis(&pr, "[2]").minus(&basis(&pr, "[1,1]"))
        );
        assert!(apply_b(3, &FockVector::zero(pr.clone())).is_zero());

        // two components, trivial charge: all four strip placements
        let pr2 = params(2, 2, &[0, 0], 8);
        let v = FockVector::vacuum(pr2.clone());
        let expected = basis(&pr2, "[2]|[]")
            .minus(&basis(&pr2, "[1,1]|[]"))
            .plus(&basis(&pr2, "[]|[2]"))
            .minus(&basis(&pr2, "[]|[1,1]"));
        assert_eq!(apply_b(1, &v), expected);
    }

    #[test]
    fn b_dual_examples_and_adjointness() {
        let pr = params(2, 1, &[0], 8);
        assert_eq!(apply_b_dual(1, &basis(&pr, "[2]")), basis(&pr, "[]"));
        assert_eq!(
            apply_b_dual(1, &basis(&pr, "[1,1]")),
            basis(&pr, "[]").scaled(&rat(-1))
        );
        // degree reasons
        assert!(apply_b_dual(2, &basis(&pr, "[2,1]")).is_zero());

        // <b'_r x, y> = <x, b_r y> over whole degree blocks
        for (m, ell, charge) in [(2u32, 1usize, vec![0i64]), (2, 2, vec![1, -1])] {
            let pr = params(m, ell, &charge, 8);
            for r in 1..=2u32 {
                for n in (m * r)..=5 {
                    for x in Multipartition::all(n, ell) {
                        let vx = FockVector::basis(pr.clone(), x.clone());
                        let bx = apply_b_dual(r, &vx);
                        for y in Multipartition::all(n - m * r, ell) {
                            let vy = FockVector::basis(pr.clone(), y.clone());
                            let by = apply_b(r, &vy);
                            assert_eq!(fock_pairing(&bx, &vy), fock_pairing(&vx, &by));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_level_small() {
        // [b'_r, b_t] = delta_{rt} r m ell on low degrees
        for (m, ell, charge) in [(2u32, 1usize, vec![0i64]), (2, 2, vec![0, 0])] {
            let pr = params(m, ell, &charge, 12);
            for r in 1..=2u32 {
                for t in 1..=2u32 {
                    for n in 0..=3u32 {
                        for mp in Multipartition::all(n, ell) {
                            let v = FockVector::basis(pr.clone(), mp);
                            let lhs = apply_b_dual(r, &apply_b(t, &v))
                                .minus(&apply_b(t, &apply_b_dual(r, &v)));
                            let expected = if r == t {
                                v.scaled(&rat(r as i64 * m as i64 * ell as i64))
                            } else {
                                FockVector::zero(pr.clone())
                            };
                            assert_eq!(lhs, expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_orthonormal() {
        let pr = params(2, 2, &[0, 1], 4);
        let all: Vec<_> = (0..=3).flat_map(|n| Multipartition::all(n, 2)).collect();
        for a in &all {
            for b in &all {
                let va = FockVector::basis(pr.clone(), a.clone());
                let vb = FockVector::basis(pr.clone(), b.clone());
                let expected = if a == b { rat(1) } else { rat(0) };
                assert_eq!(fock_pairing(&va, &vb), expected);
            }
        }
    }

    #[test]
    fn weight_examples() {
        let pr = params(2, 2, &[0, 0], 8);
        let w = weight_of(&Multipartition::empty(2), &pr);
        assert_eq!(w.omega, vec![2, 0]);
        assert!(w.delta.is_zero());

        let pr = params(2, 1, &[0], 8);
        let w = weight_of(&"[1]".parse().unwrap(), &pr);
        // omega_0 - alpha_0 = -omega_0 + 2 omega_1 - delta
        assert_eq!(w.omega, vec![-1, 2]);
        assert_eq!(w.delta, rat(-1));

        // D-eigenvalue (the delta coefficient) is -n_0 for trivial charge
        for n in 0..=5 {
            for mp in Multipartition::all(n, 1) {
                let w = weight_of(&mp, &pr);
                let n0 = nodes_with_residue(&mp, &pr.charge, 2)[0];
                assert_eq!(w.delta, rat(-(n0 as i64)));
            }
        }
    }

    #[test]
    fn e_raises_weight_by_alpha() {
        let pr = params(3, 2, &[1, -1], 6);
        for n in 1..=4u32 {
            for mp in Multipartition::all(n, 2) {
                let w = weight_of(&mp, &pr);
                for q in 0..3u32 {
                    let image = apply_e(q, &FockVector::basis(pr.clone(), mp.clone()));
                    for nu in image.coeffs().keys() {
                        let wn = weight_of(nu, &pr);
                        assert_eq!(wn, w.plus(&AffineWeight::alpha(q as usize, 3)));
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_table() {
        let w1 = AffineWeight::fundamental(1, 2);
        assert_eq!(w1.pairing(&w1), Rat::new(1.into(), 2.into()));
        let w0 = AffineWeight::fundamental(0, 4);
        for q in 0..4 {
            assert_eq!(w0.pairing(&AffineWeight::fundamental(q, 4)), rat(0));
        }
        let d = AffineWeight::zero(3).with_delta(Rat::one());
        assert_eq!(d.pairing(&d), rat(0));
        assert_eq!(AffineWeight::fundamental(2, 3).pairing(&d), rat(1));
    }

    #[test]
    fn casimir_examples() {
        let pr = params(2, 1, &[0], 8);
        // below degree m the matrix is zero
        for n in 0..2u32 {
            let mat = casimir_matrix(n, &pr);
            assert!(mat.iter().flatten().all(|e| e.is_zero()));
        }
        // degree 2: eigenvalues {0, 1}, eigenvector |2> - |1,1> for 1
        let mat = casimir_matrix(2, &pr);
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(
            mat,
            vec![
                vec![half.clone(), -half.clone()],
                vec![-half.clone(), half.clone()]
            ]
        );
        let v = basis(&pr, "[2]").minus(&basis(&pr, "[1,1]"));
        assert_eq!(apply_casimir(&v), v);

        // symmetry on a bigger block
        let pr = params(2, 2, &[0, 1], 8);
        let mat = casimir_matrix(4, &pr);
        for i in 0..mat.len() {
            for j in 0..mat.len() {
                assert_eq!(mat[i][j], mat[j][i]);
            }
        }
    }

    #[test]
    fn casimir_trace_gram_identity() {
        // trace of the degree-n Casimir block = (1/ml) sum_r of the squared
        // column norms of b_r from degree n - mr
        let pr = params(2, 2, &[0, 1], 8);
        for n in 0..=5u32 {
            let mat = casimir_matrix(n, &pr);
            let trace: Rat = (0..mat.len()).map(|i| mat[i][i].clone()).sum();
            let mut gram = Rat::zero();
            let mut r = 1u32;
            while pr.m * r <= n {
                for nu in Multipartition::all(n - pr.m * r, 2) {
                    let col = apply_b(r, &FockVector::basis(pr.clone(), nu));
                    for c in col.coeffs().values() {
                        gram += c * c;
                    }
                }
                r += 1;
            }
            let level = rat((pr.m * 2) as i64);
            assert_eq!(trace, gram / level, "n={n}");
        }
    }

    #[test]
    fn casimir_commutes_with_chevalley_operators() {
        let pr = params(2, 2, &[1, -1], 12);
        for n in 1..=4u32 {
            for mp in Multipartition::all(n, 2) {
                let v = FockVector::basis(pr.clone(), mp);
                for q in 0..2u32 {
                    let a = apply_casimir(&apply_e(q, &v));
                    let b = apply_e(q, &apply_casimir(&v));
                    assert_eq!(a, b);
                    let a = apply_casimir(&apply_f(q, &v));
                    let b = apply_f(q, &apply_casimir(&v));
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn casimir_m_level1_agrees_with_ell1_casimir() {
        // ell = 1 in the level-1 model is the (m, ell=1) Fock-space Casimir
        for m in 2..=3u32 {
            let pr = params(m, 1, &[0], 8);
            for n in 0..=6u32 {
                let a = casimir_m_matrix_level1(n, m, 1);
                let b = casimir_matrix(n, &pr);
                assert_eq!(a, b, "m={m} n={n}");
            }
        }
        // below degree m*ell the matrix vanishes
        for n in 0..6u32 {
            let mat = casimir_m_matrix_level1(n, 2, 3);
            assert!(mat.iter().flatten().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn matrix_json_shape() {
        let pr = params(2, 1, &[0], 4);
        let json = matrix_to_json(&casimir_matrix(2, &pr));
        assert_eq!(json["rows"], 2);
        assert_eq!(json["entries"][0][0], "1/2");
    }
}
