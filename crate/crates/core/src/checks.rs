//! The runnable invariant suite behind the `check` subcommand: every
//! module's invariants at a configured scale, each reported as a named
//! pass/fail line.

use num::{BigInt, One, Zero};
use std::collections::BTreeMap;

use crate::crystal::{self, NodeOrder};
use crate::fock::{
    apply_b, apply_b_dual, apply_casimir, apply_e, apply_f, casimir_matrix,
    weight_of, AffineWeight, FockSpaceParams, FockVector,
};
use crate::grading::{support_order_le, GradingEngine};
use crate::levelrank::{
    dagger, enumerate_bounded, gamma_hat, gamma_of_charge, level_lift_prime, dual_model_column_dim,
    tau_charge_to_core, tau_core_to_charge, xi_action,
};
use crate::partitions::{
    addable_removable, nodes_with_residue, rebuild_from_core_quotient, Charge, Multipartition,
    Partition,
};
use crate::symfunc::{
    hall_pairing, mult_by_power_sum, plethysm_psi_m, wreath_pairing, SymFunc, WreathFunc,
};
use crate::rat;

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A named invariant check, runnable independently of the others.
pub struct NamedCheck {
    pub name: &'static str,
    run: Box<dyn FnOnce() -> Result<(), String> + Send>,
}

impl NamedCheck {
    pub fn run(self) -> CheckReport {
        match (self.run)() {
            Ok(()) => CheckReport {
                name: self.name,
                passed: true,
                detail: String::new(),
            },
            Err(detail) => CheckReport {
                name: self.name,
                passed: false,
                detail,
            },
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// The whole invariant suite for one parameter set, as independently
/// runnable checks. `max_degree` is the configured scale; individual checks
/// cap it where the cost would be excessive for an interactive command.
pub fn invariant_checks(
    m: u32,
    ell: usize,
    charge: &Charge,
    max_degree: u32,
    order: NodeOrder,
) -> Vec<NamedCheck> {
    let params = FockSpaceParams::new(m, ell, charge.clone(), max_degree);
    let charge = charge.clone();
    fn check<F>(name: &'static str, f: F) -> NamedCheck
    where
        F: FnOnce() -> Result<(), String> + Send + 'static,
    {
        NamedCheck {
            name,
            run: Box::new(f),
        }
    }
    let p = move || params.clone();
    vec![
        check("partitions/conjugation-involution", move || {
            conjugation_involution(max_degree)
        }),
        check("partitions/core-quotient", move || {
            core_quotient_identities(max_degree)
        }),
        {
            let p = p();
            check("partitions/residue-counts", move || residue_counts(&p))
        },
        check("symfunc/basis-transitions", move || {
            basis_transitions(max_degree)
        }),
        check("symfunc/mn-polynomial-oracle", move || {
            mn_polynomial_oracle(max_degree)
        }),
        check("symfunc/pairing-adjointness", move || {
            pairing_adjointness(max_degree)
        }),
        check("symfunc/plethysm-multiplicative", move || {
            plethysm_multiplicative(max_degree)
        }),
        check("symfunc/wreath-pairing", move || {
            wreath_pairing_values(ell, max_degree)
        }),
        {
            let p = p();
            check("fock/chevalley", move || chevalley(&p))
        },
        {
            let p = p();
            check("fock/heisenberg-relations", move || heisenberg_relations(&p))
        },
        {
            let p = p();
            check("fock/casimir-spectrum", move || casimir_spectrum(&p))
        },
        {
            let p = p();
            check("fock/kernel-identity", move || kernel_identity(&p))
        },
        {
            let p = p();
            check("fock/weight-steps", move || weight_steps(&p))
        },
        {
            let p = p();
            check("grading/casimir-commutes-sl", move || {
                casimir_commutes_sl(&p)
            })
        },
        {
            let p = p();
            check("grading/marginals", move || grading_marginals(&p))
        },
        {
            let p = p();
            check("grading/support-order", move || support_order(&p))
        },
        {
            let p = p();
            check("grading/findim-two-routes", move || findim_two_routes(&p))
        },
        {
            let p = p();
            check("grading/isom1", move || isom1(&p))
        },
        {
            let p = p();
            check("crystal/mutual-inverse", move || {
                crystal_mutual_inverse(&p, order)
            })
        },
        {
            let p = p();
            check("crystal/string-lengths", move || crystal_strings(&p, order))
        },
        {
            let p = p();
            check("crystal/hw-count-oracle", move || crystal_hw_counts(&p, order))
        },
        {
            let p = p();
            check("crystal/depth-census-oracle", move || crystal_census(&p, order))
        },
        check("levelrank/xi-isometry", move || xi_isometry(ell.max(2))),
        check("levelrank/gammaxi", move || gammaxi(ell.max(2), m)),
        check("levelrank/extremal-criterion", move || {
            extremal_criterion(ell.max(2))
        }),
        check("levelrank/dagger-bijection", move || {
            dagger_bijection(ell.max(2), m)
        }),
        check("levelrank/core-charge-dictionary", move || {
            core_charge_dictionary(ell.max(2))
        }),
        check("levelrank/dual-column-totals", move || {
            dual_column_totals(m, ell, &charge, max_degree)
        }),
    ]
}

/// Runs the suite sequentially.
pub fn run_invariant_suite(
    m: u32,
    ell: usize,
    charge: &Charge,
    max_degree: u32,
    order: NodeOrder,
) -> Vec<CheckReport> {
    invariant_checks(m, ell, charge, max_degree, order)
        .into_iter()
        .map(NamedCheck::run)
        .collect()
}

fn conjugation_involution(max_degree: u32) -> Result<(), String> {
    for n in 0..=max_degree.min(10) {
        for lam in Partition::all(n) {
            ensure!(
                lam.conjugate().conjugate() == lam,
                "conjugate not involutive on {lam}"
            );
        }
    }
    Ok(())
}

fn core_quotient_identities(max_degree: u32) -> Result<(), String> {
    for n in 0..=max_degree.min(10) {
        for lam in Partition::all(n) {
            for ell in 2..=4usize {
                let cq = lam.core_quotient(ell);
                ensure!(
                    lam.size() == cq.core.size() + ell as u32 * cq.quotient.size(),
                    "size identity fails for {lam}, ell={ell}"
                );
                let reduce = |v: Vec<i64>| {
                    let mut counts = vec![0u64; ell];
                    for c in v {
                        counts[c.rem_euclid(ell as i64) as usize] += 1;
                    }
                    counts
                };
                let lhs = reduce(lam.contents());
                let mut rhs = reduce(cq.core.contents());
                for r in rhs.iter_mut() {
                    *r += cq.quotient.size() as u64;
                }
                ensure!(lhs == rhs, "content congruence fails for {lam}, ell={ell}");
                let back = rebuild_from_core_quotient(&cq, ell)
                    .map_err(|e| format!("rebuild failed for {lam}: {e}"))?;
                ensure!(back == lam, "core/quotient round trip fails for {lam}");
            }
        }
    }
    Ok(())
}

fn residue_counts(params: &FockSpaceParams) -> Result<(), String> {
    for n in 0..=params.bound.min(6) {
        for mp in Multipartition::all(n, params.ell) {
            let counts = nodes_with_residue(&mp, &params.charge, params.m);
            ensure!(
                counts.iter().sum::<u64>() == mp.size() as u64,
                "residue counts of {mp} do not sum to the size"
            );
        }
    }
    Ok(())
}

fn basis_transitions(max_degree: u32) -> Result<(), String> {
    for n in 0..=max_degree.min(7) {
        for lam in Partition::all(n) {
            let s = SymFunc::schur(lam.clone(), n);
            ensure!(
                s.to_power().to_schur() == s,
                "schur->power->schur not the identity on {lam}"
            );
        }
    }
    Ok(())
}

// Honest polynomial expansion of p_r * s_lambda by tableau enumeration.
fn mn_polynomial_oracle(max_degree: u32) -> Result<(), String> {
    type Poly = BTreeMap<Vec<u32>, BigInt>;
    fn poly_add(a: &mut Poly, mono: Vec<u32>, c: BigInt) {
        let e = a.entry(mono.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            a.remove(&mono);
        }
    }
    fn schur_poly(lam: &Partition, nvars: usize) -> Poly {
        let mut out = Poly::new();
        if lam.is_empty() {
            poly_add(&mut out, vec![0; nvars], BigInt::one());
            return out;
        }
        let shape: Vec<u32> = lam.parts().to_vec();
        let mut filling: Vec<Vec<u32>> = shape.iter().map(|&r| vec![0; r as usize]).collect();
        fn rec(
            shape: &[u32],
            filling: &mut Vec<Vec<u32>>,
            i: usize,
            j: usize,
            nvars: usize,
            out: &mut Poly,
        ) {
            if i == shape.len() {
                let mut mono = vec![0u32; nvars];
                for row in filling.iter() {
                    for &e in row {
                        mono[(e - 1) as usize] += 1;
                    }
                }
                poly_add(out, mono, BigInt::one());
                return;
            }
            let (ni, nj) = if j + 1 < shape[i] as usize {
                (i, j + 1)
            } else {
                (i + 1, 0)
            };
            let mut lo = 1;
            if j > 0 {
                lo = lo.max(filling[i][j - 1]);
            }
            if i > 0 {
                lo = lo.max(filling[i - 1][j] + 1);
            }
            for e in lo..=(nvars as u32) {
                filling[i][j] = e;
                rec(shape, filling, ni, nj, nvars, out);
            }
            filling[i][j] = 0;
        }
        rec(&shape, &mut filling, 0, 0, nvars, &mut out);
        out
    }
    let deg_cap = max_degree.clamp(2, 6);
    for r in 1..=4u32 {
        for n in 0..=deg_cap.saturating_sub(r) {
            let nvars = deg_cap.max(r) as usize + 1;
            for lam in Partition::all(n) {
                let mn = mult_by_power_sum(r, &SymFunc::schur(lam.clone(), n + r));
                let mut lhs = Poly::new();
                for (mu, c) in mn.coeffs() {
                    ensure!(c.is_integer(), "MN coefficient not integral");
                    for (mono, v) in schur_poly(mu, nvars) {
                        poly_add(&mut lhs, mono, v * c.to_integer());
                    }
                }
                let mut rhs = Poly::new();
                let base = schur_poly(&lam, nvars);
                for i in 0..nvars {
                    for (mono, v) in &base {
                        let mut m2 = mono.clone();
                        m2[i] += r;
                        poly_add(&mut rhs, m2, v.clone());
                    }
                }
                ensure!(lhs == rhs, "MN disagrees with the oracle on p_{r} s_{lam}");
            }
        }
    }
    Ok(())
}

fn pairing_adjointness(max_degree: u32) -> Result<(), String> {
    for r in 1..=3u32 {
        for n in 0..=max_degree.min(5).saturating_sub(r) {
            for lam in Partition::all(n) {
                let pf = mult_by_power_sum(r, &SymFunc::schur(lam.clone(), n + r));
                for mu in Partition::all(n + r) {
                    let lhs = hall_pairing(&pf, &SymFunc::schur(mu.clone(), n + r));
                    ensure!(
                        lhs == pf.coeff(&mu),
                        "pairing transpose mismatch at ({lam}, {mu})"
                    );
                }
            }
        }
    }
    Ok(())
}

fn plethysm_multiplicative(max_degree: u32) -> Result<(), String> {
    let bound = max_degree.clamp(4, 8);
    let m = 2u32;
    for a in 0..=2u32 {
        for b in 0..=(bound / m).saturating_sub(a).min(2) {
            for la in Partition::all(a) {
                for lb in Partition::all(b) {
                    let fa = SymFunc::schur(la.clone(), bound);
                    let fb = SymFunc::schur(lb.clone(), bound);
                    let lhs = plethysm_psi_m(m, &fa.mul(&fb).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    let rhs = plethysm_psi_m(m, &fa)
                        .map_err(|e| e.to_string())?
                        .mul(&plethysm_psi_m(m, &fb).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    ensure!(lhs == rhs, "psi^2 not multiplicative on ({la}, {lb})");
                }
            }
        }
    }
    Ok(())
}

fn wreath_pairing_values(ell: usize, max_degree: u32) -> Result<(), String> {
    let bound = max_degree.max(4);
    for r in 1..=bound.min(4) {
        for s in 1..=bound.min(4) {
            for p in 0..ell {
                for q in 0..ell {
                    let f = WreathFunc::power_sum(r, p, ell, bound);
                    let g = WreathFunc::power_sum(s, q, ell, bound);
                    let expected = if r == s && p == q { rat(r as i64) } else { rat(0) };
                    ensure!(
                        wreath_pairing(&f, &g) == expected,
                        "<P_({r},{p}), P_({s},{q})> wrong"
                    );
                }
            }
        }
    }
    Ok(())
}

fn chevalley(params: &FockSpaceParams) -> Result<(), String> {
    let roomy = FockSpaceParams {
        bound: params.bound + 1,
        ..params.clone()
    };
    for n in 0..=params.bound {
        for mp in Multipartition::all(n, params.ell) {
            let v = FockVector::basis(roomy.clone(), mp.clone());
            for q in 0..params.m {
                for qq in 0..params.m {
                    let lhs = apply_e(q, &apply_f(qq, &v)).minus(&apply_f(qq, &apply_e(q, &v)));
                    let expected = if q == qq {
                        let (a, r) = addable_removable(&mp, &params.charge, params.m, q);
                        v.scaled(&rat(a.len() as i64 - r.len() as i64))
                    } else {
                        FockVector::zero(roomy.clone())
                    };
                    ensure!(lhs == expected, "Chevalley fails at {mp}, e_{q} f_{qq}");
                }
            }
        }
    }
    Ok(())
}

fn heisenberg_relations(params: &FockSpaceParams) -> Result<(), String> {
    let m = params.m;
    let level = rat(m as i64 * params.ell as i64);
    let roomy = FockSpaceParams {
        bound: params.bound + 2 * m,
        ..params.clone()
    };
    for r in 1..=(params.bound / m).max(1) {
        for t in 1..=(params.bound / m).max(1) {
            for n in 0..=params.bound.saturating_sub(m * t) {
                for mp in Multipartition::all(n, params.ell) {
                    let v = FockVector::basis(roomy.clone(), mp.clone());
                    let lhs =
                        apply_b_dual(r, &apply_b(t, &v)).minus(&apply_b(t, &apply_b_dual(r, &v)));
                    let expected = if r == t {
                        v.scaled(&(rat(r as i64) * &level))
                    } else {
                        FockVector::zero(roomy.clone())
                    };
                    ensure!(lhs == expected, "[b'_{r}, b_{t}] wrong on {mp}");
                    for q in 0..m {
                        let c1 = apply_e(q, &apply_b(t, &v)).minus(&apply_b(t, &apply_e(q, &v)));
                        ensure!(c1.is_zero(), "[e_{q}, b_{t}] nonzero on {mp}");
                        let c2 = apply_f(q, &apply_b(t, &v)).minus(&apply_b(t, &apply_f(q, &v)));
                        ensure!(c2.is_zero(), "[f_{q}, b_{t}] nonzero on {mp}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn casimir_spectrum(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    let roomy = FockSpaceParams {
        bound: params.bound + 2 * params.m,
        ..params.clone()
    };
    for n in 0..=params.bound {
        let mat = casimir_matrix(n, params);
        for (r, row) in mat.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                ensure!(*e == mat[c][r], "casimir not symmetric at degree {n}");
            }
        }
        ensure!(
            eng.casimir_diagonalizable(n),
            "casimir spectrum escapes 0..={} at degree {n}",
            n / params.m
        );
    }
    // [casimir, b_r] = r b_r on vectors that stay within the roomy bound
    for r in 1..=(params.bound / params.m).max(1) {
        for n in 0..=params.bound.saturating_sub(params.m * r) {
            for mp in Multipartition::all(n, params.ell) {
                let v = FockVector::basis(roomy.clone(), mp);
                let lhs = apply_casimir(&apply_b(r, &v)).minus(&apply_b(r, &apply_casimir(&v)));
                ensure!(
                    lhs == apply_b(r, &v).scaled(&rat(r as i64)),
                    "[casimir, b_{r}] != r b_{r} at degree {n}"
                );
            }
        }
    }
    Ok(())
}

fn kernel_identity(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    for n in 0..=params.bound {
        let a = eng.heisenberg_kernel(n);
        let b = eng.casimir_eigenspace(n, 0);
        ensure!(
            a.dim() == b.dim(),
            "ker casimir != cap ker b' at degree {n} (dims {} vs {})",
            b.dim(),
            a.dim()
        );
        for (x, y) in a.basis.iter().zip(&b.basis) {
            ensure!(
                x.coeffs() == y.coeffs(),
                "kernel bases differ at degree {n}"
            );
        }
    }
    Ok(())
}

fn weight_steps(params: &FockSpaceParams) -> Result<(), String> {
    let m = params.m as usize;
    for n in 0..=params.bound.min(6) {
        for mp in Multipartition::all(n, params.ell) {
            let w = weight_of(&mp, params);
            let v = FockVector::basis(params.clone(), mp.clone());
            for q in 0..params.m {
                for nu in apply_e(q, &v).coeffs().keys() {
                    ensure!(
                        weight_of(nu, params) == w.plus(&AffineWeight::alpha(q as usize, m)),
                        "e_{q} does not raise the weight by alpha at {mp}"
                    );
                }
                for nu in apply_f(q, &v).coeffs().keys() {
                    ensure!(
                        weight_of(nu, params) == w.minus(&AffineWeight::alpha(q as usize, m)),
                        "f_{q} does not lower the weight by alpha at {mp}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn casimir_commutes_sl(params: &FockSpaceParams) -> Result<(), String> {
    let roomy = FockSpaceParams {
        bound: 2 * params.bound + 2,
        ..params.clone()
    };
    for n in 0..=params.bound.min(5) {
        for mp in Multipartition::all(n, params.ell) {
            let v = FockVector::basis(roomy.clone(), mp.clone());
            for q in 0..params.m {
                ensure!(
                    apply_casimir(&apply_e(q, &v)) == apply_e(q, &apply_casimir(&v)),
                    "[casimir, e_{q}] nonzero at {mp}"
                );
                ensure!(
                    apply_casimir(&apply_f(q, &v)) == apply_f(q, &apply_casimir(&v)),
                    "[casimir, f_{q}] nonzero at {mp}"
                );
            }
        }
    }
    Ok(())
}

fn grading_marginals(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    for n in 0..=params.bound {
        let table = eng.graded_dims(n);
        for i in 0..=n {
            ensure!(
                table.row_sum(i) == eng.depth_space_dim(n, i),
                "row sum mismatch at (n={n}, i={i})"
            );
        }
        for j in 0..=(n / params.m) {
            ensure!(
                table.column_sum(j) == eng.casimir_eigenspace_dim(n, j),
                "column sum mismatch at (n={n}, j={j})"
            );
        }
    }
    Ok(())
}

fn support_order(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    let n = params.bound.min(5);
    let table = eng.graded_dims(n);
    let m = params.m;
    let pairs: Vec<(i64, i64)> = (0..=n as i64)
        .flat_map(|i| (0..=(n / m) as i64).map(move |j| (i, j)))
        .collect();
    let cum = |target: (i64, i64)| -> u64 {
        table
            .entries
            .iter()
            .filter(|(&(ip, jp), _)| support_order_le((ip as i64, jp as i64), target, m))
            .map(|(_, &d)| d)
            .sum()
    };
    for &a in &pairs {
        for &b in &pairs {
            if support_order_le(a, b, m) {
                ensure!(
                    cum(a) <= cum(b),
                    "cumulative filtration not monotone from {a:?} to {b:?}"
                );
            }
        }
    }
    Ok(())
}

fn findim_two_routes(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    let h = eng.findim_counts(params.bound).map_err(|e| e.to_string())?;
    for n in 0..=params.bound {
        ensure!(
            h[n as usize] == eng.singular_dim(n),
            "h_{n} != dim singular({n})"
        );
    }
    // round trip: K(t) = h(t) * sum_r p(r) t^{mr}
    for n in 0..=params.bound {
        let mut acc = 0u64;
        let mut r = 0u32;
        while params.m * r <= n {
            acc += Partition::count(r) * h[(n - params.m * r) as usize];
            r += 1;
        }
        ensure!(
            acc == eng.highest_weight_dim(n),
            "deconvolution round trip fails at degree {n}"
        );
    }
    Ok(())
}

fn isom1(params: &FockSpaceParams) -> Result<(), String> {
    let mut eng = GradingEngine::new(params.clone());
    for n in 0..=params.bound {
        for j in 0..=(n / params.m) {
            ensure!(eng.isom1_check(n, j), "isom1 fails at (n={n}, j={j})");
        }
    }
    Ok(())
}

fn crystal_mutual_inverse(params: &FockSpaceParams, order: NodeOrder) -> Result<(), String> {
    for n in 0..=params.bound.min(6) {
        for mp in Multipartition::all(n, params.ell) {
            for q in 0..params.m {
                if let Some(down) = crystal::tilde_f(q, &mp, params, order) {
                    ensure!(
                        crystal::tilde_e(q, &down, params, order) == Some(mp.clone()),
                        "tilde_e tilde_f != id at {mp}, q={q}"
                    );
                }
                if let Some(up) = crystal::tilde_e(q, &mp, params, order) {
                    ensure!(
                        crystal::tilde_f(q, &up, params, order) == Some(mp.clone()),
                        "tilde_f tilde_e != id at {mp}, q={q}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn crystal_strings(params: &FockSpaceParams, order: NodeOrder) -> Result<(), String> {
    for n in 0..=params.bound.min(6) {
        for mp in Multipartition::all(n, params.ell) {
            for q in 0..params.m {
                let (a, r) = addable_removable(&mp, &params.charge, params.m, q);
                let diff = crystal::phi(q, &mp, params, order) as i64
                    - crystal::epsilon(q, &mp, params, order) as i64;
                ensure!(
                    diff == a.len() as i64 - r.len() as i64,
                    "phi - epsilon != A - R at {mp}, q={q}"
                );
            }
        }
    }
    Ok(())
}

fn crystal_hw_counts(params: &FockSpaceParams, order: NodeOrder) -> Result<(), String> {
    let graph = crystal::build_graph(params, order);
    let mut eng = GradingEngine::new(params.clone());
    for n in 0..=params.bound {
        ensure!(
            graph.highest_weight_count(n) == eng.highest_weight_dim(n),
            "hw-vertex count != kernel dimension at degree {n}"
        );
    }
    Ok(())
}

fn crystal_census(params: &FockSpaceParams, order: NodeOrder) -> Result<(), String> {
    let graph = crystal::build_graph(params, order);
    let mut eng = GradingEngine::new(params.clone());
    for n in 0..=params.bound {
        let census = graph.depth_census(n);
        let table = eng.graded_dims(n);
        for i in 0..=n {
            ensure!(
                census.get(&i).copied().unwrap_or(0) == table.row_sum(i),
                "depth census != table row sums at (n={n}, i={i})"
            );
        }
    }
    Ok(())
}

fn lattice_combo(coeffs: &[i64], rank: usize) -> AffineWeight {
    let mut beta = AffineWeight::zero(rank);
    for (p, &c) in coeffs.iter().enumerate() {
        beta.omega[p + 1] += c;
        beta.omega[0] -= c;
    }
    beta
}

fn window(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 1..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn xi_isometry(rank: usize) -> Result<(), String> {
    let omega0 = AffineWeight::fundamental(0, rank);
    for a in window(rank, 2) {
        let beta = lattice_combo(&a, rank);
        let image = xi_action(&beta, &omega0);
        ensure!(
            image.pairing(&image).is_zero(),
            "xi_beta(omega_0) not isotropic for {a:?}"
        );
        for b in window(rank, 1) {
            let beta2 = lattice_combo(&b, rank);
            let lhs = xi_action(&beta, &xi_action(&beta2, &omega0));
            let rhs = xi_action(&beta.plus(&beta2), &omega0);
            ensure!(lhs == rhs, "xi group law fails for {a:?}, {b:?}");
        }
    }
    Ok(())
}

fn gammaxi(ell: usize, m: u32) -> Result<(), String> {
    for tail in window(ell, 3) {
        let head: i64 = -tail.iter().sum::<i64>();
        let mut entries = vec![head];
        entries.extend(tail);
        let s = Charge::new(entries.clone());
        let gamma = gamma_of_charge(&s).map_err(|e| e.to_string())?;
        let omega0 = AffineWeight::fundamental(0, ell);
        let pulled = xi_action(&gamma.scaled(-1), &omega0);
        ensure!(
            level_lift_prime(&pulled, m) == gamma_hat(s.entries(), m),
            "gammaxi identity fails for charge {entries:?}"
        );
    }
    Ok(())
}

fn extremal_criterion(rank: usize) -> Result<(), String> {
    let omega0 = AffineWeight::fundamental(0, rank);
    for a in window(rank, 2) {
        let beta = lattice_combo(&a, rank);
        let extremal = xi_action(&beta, &omega0);
        for i in 0..=2i64 {
            let mu = extremal.clone().with_delta(&extremal.delta - rat(i));
            ensure!(
                (mu.pairing(&mu) == rat(0)) == (i == 0),
                "extremal criterion fails for beta={a:?}, i={i}"
            );
        }
    }
    Ok(())
}

fn dagger_bijection(ell: usize, m: u32) -> Result<(), String> {
    let domain = enumerate_bounded(ell, m, 0, -(m as i64), m as i64);
    let mut images = Vec::new();
    for lam in &domain {
        let mu = dagger(lam, m).map_err(|e| format!("dagger failed: {e}"))?;
        let mut w = AffineWeight::zero(ell);
        for &e in mu.entries() {
            w.omega[e.rem_euclid(ell as i64) as usize] += 1;
        }
        ensure!(
            w == gamma_hat(lam.entries(), m),
            "dagger weight identity fails on {:?}",
            lam.entries()
        );
        images.push(mu);
    }
    let count = images.len();
    images.sort();
    images.dedup();
    ensure!(images.len() == count, "dagger is not injective");
    Ok(())
}

fn core_charge_dictionary(ell: usize) -> Result<(), String> {
    for n in 0..=10u32 {
        for lam in Partition::all(n) {
            if !lam.is_core(ell) {
                continue;
            }
            let s = tau_core_to_charge(&lam, ell).map_err(|e| e.to_string())?;
            let back = tau_charge_to_core(&s, ell).map_err(|e| e.to_string())?;
            ensure!(back == lam, "tau round trip fails on {lam}");
            let mp = Multipartition::new(vec![lam.clone()]);
            let n0 = nodes_with_residue(&mp, &Charge::zero(1), ell as u32)[0];
            let sq: i64 = s.entries().iter().map(|&e| e * e).sum();
            ensure!(
                2 * n0 as i64 == sq,
                "n_0(core) != (sum s^2)/2 on {lam}"
            );
        }
    }
    Ok(())
}

fn dual_column_totals(m: u32, ell: usize, charge: &Charge, max_degree: u32) -> Result<(), String> {
    if charge.entries().iter().any(|&s| s != 0) {
        // the numerical identity is stated for the trivial charge only
        return Ok(());
    }
    let cap = max_degree.min(if ell >= 3 { 3 } else { 4 });
    let params = FockSpaceParams::new(m, ell, charge.clone(), cap);
    let mut eng = GradingEngine::new(params);
    for n in 0..=cap {
        let table = eng.graded_dims(n);
        for j in 0..=n {
            let lhs = table.column_sum(j);
            let rhs = dual_model_column_dim(n, j, m, ell);
            ensure!(lhs == rhs, "dual-model column identity fails at (n={n}, j={j})");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scale_passes() {
        let reports = run_invariant_suite(2, 2, &Charge::new(vec![0, 1]), 4, NodeOrder::default());
        for r in &reports {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        assert!(reports.len() > 20);
    }

    #[test]
    fn ell_one_scale_passes() {
        let reports = run_invariant_suite(2, 1, &Charge::zero(1), 4, NodeOrder::default());
        for r in &reports {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
