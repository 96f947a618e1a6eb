//! Checkers for the identities satisfied by the `q`-Whittaker tables and the
//! `Q`-kernel. Every check is an exact comparison; each returns a report.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::gram::Specialization;
use super::qkernel::{c_coefficients, KernelSeries};
use super::scalar::scalar_qw_at;
use super::table::{cached_series_table, cached_table, norm_closed_form, QWhittakerTable};
use crate::error::{Error, Result};
use crate::exactalg::{Coefficient, Poly, QSeries, RationalFunction};
use crate::partitions::{partitions_up_to, weyl_dimension, Partition};
use crate::report::{Cell, VerificationReport};
use crate::symfunc::{
    cauchy_r, ct_inner, monomial_sym, principal_specialize, schur, schur_coefficient_by_alternation, schur_laurent,
    to_schur_basis, SchurIndex, SymmetricFunction,
};

fn cell(ok: bool, detail: impl FnOnce() -> Value) -> Cell {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    Ok(())
}

/// `λ ∈ Par(r-1)` padded to length `r`, with `|λ| ≤ max_size`.
fn par_r_minus_one(rank: usize, max_size: u32) -> Vec<Partition> {
    partitions_up_to(rank, max_size)
        .into_iter()
        .filter(|p| p.last() == 0)
        .collect()
}

fn int_series(n: &BigInt, order: usize) -> QSeries {
    QSeries::new(order, vec![BigRational::from_integer(n.clone())])
}

fn rf_series(f: &RationalFunction, order: usize) -> Result<QSeries> {
    crate::exactalg::series_from_ratfunc(f, order)
}

/// Norms against the closed form and the recursion `b_ξ = b_{ξ - 1^r} / (1 - q^{ξ_r})`,
/// monicity and dominance triangularity of every entry, and `⟨P_ξ, P_ψ⟩` recomputed
/// from the power-sum scalar product.
pub fn verify_norm_recursion(table: &QWhittakerTable) -> Result<VerificationReport> {
    let spec = table.specialization();
    let r = table.rank();
    let mut report = VerificationReport::new("norms")
        .param("rank", r)
        .param("max_size", table.max_size())
        .param("specialization", spec);
    let closed = |xi: &Partition| match spec {
        Specialization::Generic => RationalFunction::from_poly(norm_closed_form(xi)),
        Specialization::AtZero => RationalFunction::one(),
    };
    for (xi, norm) in table.norms() {
        let want = closed(xi);
        report.push(cell(
            norm == &want,
            || json!({"partition": xi, "norm": norm.to_string(), "closed_form": want.to_string()}),
        ));
        if xi.last() > 0 {
            let prev = xi.shifted_down(1);
            let factor = match spec {
                Specialization::Generic => RationalFunction::from_poly(Poly::one_minus_q_pow(xi.last() as usize)),
                Specialization::AtZero => RationalFunction::one(),
            };
            let rec = table.norm(&prev)?.mul(&factor);
            report.push(cell(
                norm == &rec,
                || json!({"partition": xi, "norm": norm.to_string(), "recursion": rec.to_string()}),
            ));
        }
    }
    for (xi, entry) in table.entries() {
        let monic = entry.coeff(xi) == RationalFunction::one();
        let lower = entry.terms().keys().all(|psi| psi.dominated_by(xi).unwrap_or(false));
        report.push(cell(
            monic && lower,
            || json!({"partition": xi, "triangularity": false}),
        ));
    }
    let mut by_degree: BTreeMap<u32, Vec<&Partition>> = BTreeMap::new();
    for xi in table.entries().keys() {
        by_degree.entry(xi.size()).or_default().push(xi);
    }
    let pairs: Vec<(&Partition, &Partition)> = by_degree
        .values()
        .flat_map(|v| {
            v.iter()
                .enumerate()
                .flat_map(move |(i, a)| v[i..].iter().map(move |b| (*a, *b)))
        })
        .collect();
    let cells = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Cell> {
            let got = scalar_qw_at(table.entry(a)?, table.entry(b)?, spec)?;
            let want = if a == b { closed(a) } else { RationalFunction::zero() };
            Ok(cell(
                got == want,
                || json!({"pair": [a, b], "scalar_product": got.to_string(), "expected": want.to_string()}),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    cells.into_iter().for_each(|c| report.push(c));
    Ok(report)
}

/// The Gram–Schmidt table with the scalar product at `q = 0` equals the Schur table.
pub fn verify_schur_degeneration(rank: usize, max_size: u32) -> Result<VerificationReport> {
    check_rank(rank)?;
    let mut report = VerificationReport::new("schur-degeneration")
        .param("rank", rank)
        .param("max_size", max_size);
    let table = cached_table(rank, max_size, Specialization::AtZero)?;
    for xi in partitions_up_to(rank, max_size) {
        let s = schur::<BigRational>(&xi)?.map_coeffs(|c| RationalFunction::from_bigint(&c.to_integer()));
        let got = table.entry(&xi)?;
        report.push(cell(got == &s, || json!({"partition": xi, "entry": got.to_string()})));
    }
    Ok(report)
}

/// `(s_{λ,ℓ}, s_{μ,m}) = δ` for `λ, μ ∈ Par(r-1)` with `|λ| ≤ D` and `|deg s_{λ,ℓ}| ≤ D`.
pub fn verify_orthonormality(rank: usize, max_degree: u32) -> Result<VerificationReport> {
    check_rank(rank)?;
    let d = max_degree as i64;
    let r = rank as i64;
    let mut indices = Vec::new();
    for lambda in par_r_minus_one(rank, max_degree) {
        let size = lambda.size() as i64;
        // |λ| + rℓ ∈ [-D, D]
        let lo = (-d - size).div_euclid(r) + i64::from((-d - size).rem_euclid(r) != 0);
        let hi = (d - size).div_euclid(r);
        for ell in lo..=hi {
            indices.push(SchurIndex::new(lambda.clone(), ell)?);
        }
    }
    let funcs = indices
        .iter()
        .map(schur_laurent::<BigRational>)
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..indices.len())
        .flat_map(|i| (i..indices.len()).map(move |j| (i, j)))
        .collect();
    let cells = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Cell> {
            let got = ct_inner(&funcs[i], &funcs[j])?;
            let want = BigRational::from_integer(BigInt::from(i32::from(i == j)));
            Ok(cell(
                got == want,
                || json!({"left": indices[i].to_string(), "right": indices[j].to_string(), "value": got.to_string()}),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new("orthonormality")
        .param("rank", rank)
        .param("degree", max_degree);
    cells.into_iter().for_each(|c| report.push(c));
    Ok(report)
}

/// `R_r = Σ_{ξ ∈ Par(r)} s_ξ(1) s_ξ` and `R'_r = Σ_{λ ∈ Par(r-1)} s_λ(1) s_λ` through degree `D`.
pub fn verify_cauchy_kernels(rank: usize, max_degree: u32) -> Result<VerificationReport> {
    check_rank(rank)?;
    let mut report = VerificationReport::new("cauchy-kernels")
        .param("rank", rank)
        .param("degree", max_degree);
    for primed in [false, true] {
        let lhs = cauchy_r::<BigRational>(rank, max_degree, primed);
        let mut rhs = SymmetricFunction::zero(rank);
        for xi in partitions_up_to(rank, max_degree) {
            if primed && xi.last() != 0 {
                continue;
            }
            let s = schur::<BigRational>(&xi)?;
            rhs = rhs.add(&s.scale(&principal_specialize(&s)));
        }
        for xi in partitions_up_to(rank, max_degree) {
            let (a, b) = (lhs.coeff(&xi), rhs.coeff(&xi));
            let name = if primed { "R'" } else { "R" };
            report.push(cell(
                a == b,
                || json!({"kernel": name, "monomial": xi, "lhs": a.to_string(), "rhs": b.to_string()}),
            ));
        }
    }
    Ok(report)
}

/// `(s_{λ,ℓ}, f R_r) = f(1) s_λ(1)` for `ℓ ∈ {deg f, deg f + 1}`, with `f` running
/// over the monomial functions of degree `≤ max_f_degree` and their sum.
pub fn verify_mult(rank: usize, max_f_degree: u32, max_lambda_size: u32) -> Result<VerificationReport> {
    check_rank(rank)?;
    let mut fs: Vec<(SymmetricFunction<BigRational>, u32)> = partitions_up_to(rank, max_f_degree)
        .into_iter()
        .map(|xi| (monomial_sym(&xi), xi.size()))
        .collect();
    let sum = fs.iter().fold(SymmetricFunction::zero(rank), |acc, (f, _)| acc.add(f));
    fs.push((sum, max_f_degree));
    let mut cells_in = Vec::new();
    for (fi, (_, deg)) in fs.iter().enumerate() {
        for lambda in par_r_minus_one(rank, max_lambda_size) {
            for ell in [*deg, deg + 1] {
                cells_in.push((fi, SchurIndex::new(lambda.clone(), ell as i64)?));
            }
        }
    }
    let top = cells_in.iter().map(|(_, idx)| idx.degree() as u32).max().unwrap_or(0);
    let kernel = cauchy_r::<BigRational>(rank, top, false);
    let cells = cells_in
        .par_iter()
        .map(|(fi, idx)| -> Result<Cell> {
            let f = &fs[*fi].0;
            let d = idx.degree();
            let fr = f.multiply(&kernel.truncate_degree(d))?.homogeneous(d);
            let got = ct_inner(&schur_laurent(idx)?, &fr)?;
            let want = principal_specialize(f).mul(&BigRational::from_integer(weyl_dimension(&idx.lambda)));
            Ok(cell(got == want, || {
                json!({"f": f.to_string(), "index": idx.to_string(), "lhs": got.to_string(), "rhs": want.to_string()})
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new("mult")
        .param("rank", rank)
        .param("max_f_degree", max_f_degree)
        .param("max_lambda_size", max_lambda_size);
    cells.into_iter().for_each(|c| report.push(c));
    Ok(report)
}

/// `[q^m] φ_{λ,ℓ} = c_m s_λ(1)` at `ℓ = rm` and `ℓ = rm + 1` for `m ≤ max_m`.
pub fn verify_lim(rank: usize, order: usize, max_m: usize, lambdas: &[Partition]) -> Result<VerificationReport> {
    check_rank(rank)?;
    let order = order.max(max_m);
    for l in lambdas {
        SchurIndex::new(l.padded(rank)?, 0)?;
    }
    let lambdas: Vec<Partition> = lambdas.iter().map(|l| l.padded(rank)).collect::<Result<_>>()?;
    let r = rank as u32;
    let top = lambdas.iter().map(|l| l.size()).max().unwrap_or(0) + r * (r * max_m as u32 + 1);
    let kernel = KernelSeries::q_kernel(rank, top, order)?;
    let c = c_coefficients(rank, order);
    let mut cells_in = Vec::new();
    for lambda in &lambdas {
        for m in 0..=max_m {
            for ell in [r * m as u32, r * m as u32 + 1] {
                cells_in.push((lambda.clone(), m, ell as i64));
            }
        }
    }
    let cells = cells_in
        .par_iter()
        .map(|(lambda, m, ell)| -> Result<Cell> {
            let phi = kernel.schur_coeff(&SchurIndex::new(lambda.clone(), *ell)?)?;
            let got = phi.coeff(*m).expect("within order");
            let want = c.coeff(*m).expect("within order") * BigRational::from_integer(weyl_dimension(lambda));
            Ok(cell(got == want, || {
                json!({"lambda": lambda, "m": m, "ell": ell, "coefficient": got.to_string(), "expected": want.to_string()})
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new("lim")
        .param("rank", rank)
        .param("order", order)
        .param("max_m", max_m)
        .param("lambdas", &lambdas);
    cells.into_iter().for_each(|c| report.push(c));
    Ok(report)
}

/// Schur coefficients of `(|x|;q)_∞ / ∏(x_i;q)_∞^r` against `ψ_{λ,ℓ}` from `Q`,
/// the valuation bound `ψ_{λ,ℓ} ∈ q^{⌊ℓ/r⌋} Z[[q]]`, and the partial sums
/// `Σ_{ℓ ≤ L} ψ_{λ,ℓ} = φ_{λ,L} ≡ s_λ(1)/(q;q)_∞^{r²-1}` through `q^{⌊L/r⌋}`.
pub fn verify_lhs(rank: usize, max_degree: u32, order: usize) -> Result<VerificationReport> {
    check_rank(rank)?;
    let lhs = KernelSeries::lhs_kernel(rank, max_degree, order)?.to_symmetric();
    let expansion = to_schur_basis(&lhs)?;
    let q = KernelSeries::q_kernel(rank, max_degree, order)?;
    let c = c_coefficients(rank, order);
    let zero = QSeries::zero_to(order);
    let mut report = VerificationReport::new("lhs")
        .param("rank", rank)
        .param("degree", max_degree)
        .param("order", order);
    let mut indexed = BTreeSet::new();
    for lambda in par_r_minus_one(rank, max_degree) {
        let dim = weyl_dimension(&lambda);
        let mut partial = zero.clone();
        let mut prev_phi = zero.clone();
        let mut ell = 0i64;
        while lambda.size() as i64 + rank as i64 * ell <= max_degree as i64 {
            let idx = SchurIndex::new(lambda.clone(), ell)?;
            let phi = q.schur_coeff(&idx)?;
            let psi = phi.sub(&prev_phi);
            let got = expansion.get(&idx).unwrap_or(&zero);
            report.push(cell(
                got == &psi,
                || json!({"part": "i", "index": idx.to_string(), "kernel": got.to_string(), "psi": psi.to_string()}),
            ));
            let bound = ell as usize / rank;
            let val_ok = psi.valuation().is_none_or(|v| v >= bound);
            report.push(cell(
                val_ok,
                || json!({"part": "ii", "index": idx.to_string(), "psi": psi.to_string()}),
            ));
            partial = partial.add(got);
            let limit_ok = (0..=bound.min(order))
                .all(|m| partial.coeff(m) == c.coeff(m).map(|x| x * BigRational::from_integer(dim.clone())));
            report.push(cell(partial == phi && limit_ok, || {
                json!({"part": "iii", "index": idx.to_string(), "partial_sum": partial.to_string(), "phi": phi.to_string()})
            }));
            indexed.insert(idx);
            prev_phi = phi;
            ell += 1;
        }
    }
    for idx in expansion.keys() {
        report.push(cell(
            indexed.contains(idx),
            || json!({"part": "i", "unexpected_index": idx.to_string()}),
        ));
    }
    Ok(report)
}

/// `(|x|;q)_∞ / ∏(x_j;q)_∞^r = Σ_{λ ∈ Par(r-1)} P_λ(1) P_λ(x) / ∏(q;q)_{λ_i - λ_{i+1}}`
/// through `x`-degree `D` and `q^order`, monomial by monomial.
pub fn verify_cauchy_t0(rank: usize, max_degree: u32, order: usize) -> Result<VerificationReport> {
    check_rank(rank)?;
    let lhs = KernelSeries::lhs_kernel(rank, max_degree, order)?;
    let table = cached_table(rank, max_degree, Specialization::Generic)?;
    let mut rhs: HashMap<Partition, QSeries> = HashMap::new();
    for lambda in par_r_minus_one(rank, max_degree) {
        let p = table.entry(&lambda)?;
        let weight = principal_specialize(p).checked_div(&RationalFunction::from_poly(norm_closed_form(&lambda)))?;
        for (xi, c) in p.terms() {
            let t = rf_series(&c.mul(&weight), order)?;
            let e = rhs.entry(xi.clone()).or_insert_with(|| QSeries::zero_to(order));
            *e = e.add(&t);
        }
    }
    let mut report = VerificationReport::new("cauchy-t0")
        .param("rank", rank)
        .param("degree", max_degree)
        .param("order", order);
    let zero = QSeries::zero_to(order);
    for xi in partitions_up_to(rank, max_degree) {
        let a = lhs.m_coeff(&xi)?;
        let b = rhs.get(&xi).unwrap_or(&zero);
        report.push(cell(
            &a == b,
            || json!({"monomial": xi, "lhs": a.to_string(), "rhs": b.to_string()}),
        ));
    }
    Ok(report)
}

/// Per-`μ` terms `η^μ_{λ,ℓ} P_μ(1) / ∏(q;q)_{μ_i - μ_{i+1}}` through `q^order`, for
/// `μ ∈ Par(r-1)` with `|μ| ≤ mu_bound`; zero terms are omitted.
pub fn crucial_contributions(
    lambda: &Partition,
    rank: usize,
    order: usize,
    mu_bound: u32,
) -> Result<Vec<(Partition, QSeries)>> {
    check_rank(rank)?;
    let lambda = lambda.padded(rank)?;
    SchurIndex::new(lambda.clone(), 0)?;
    let table = cached_series_table(rank, mu_bound, order)?;
    let mus: Vec<Partition> = par_r_minus_one(rank, mu_bound)
        .into_iter()
        .filter(|mu| mu.size() >= lambda.size() && (mu.size() - lambda.size()) % rank as u32 == 0)
        .collect();
    let terms = mus
        .par_iter()
        .map(|mu| -> Result<Option<(Partition, QSeries)>> {
            let ell = ((mu.size() - lambda.size()) / rank as u32) as i64;
            let p = table.entry(mu)?;
            let eta = schur_coefficient_by_alternation(p, &SchurIndex::new(lambda.clone(), ell)?);
            if eta.is_zero() {
                return Ok(None);
            }
            let inv_norm = QSeries::from_poly(&norm_closed_form(mu), order).inverse()?;
            Ok(Some((mu.clone(), eta.mul(&principal_specialize(p)).mul(&inv_norm))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().flatten().collect())
}

/// `s_λ(1)/(q;q)_∞^{r²-1} = Σ_μ Σ_ℓ η^μ_{λ,ℓ} P_μ(1) / ∏(q;q)_{μ_i - μ_{i+1}}` through
/// `q^order`. The `μ`-sum is cut at `|μ| ≤ mu_bound` (default `|λ| + r·order`) and
/// re-run at `mu_bound + r`; a change between the two runs is inconclusive.
pub fn verify_crucial(
    lambda: &Partition,
    rank: usize,
    order: usize,
    mu_bound: Option<u32>,
) -> Result<VerificationReport> {
    check_rank(rank)?;
    let lambda = lambda.padded(rank)?;
    let bound = mu_bound.unwrap_or(lambda.size() + rank as u32 * order as u32);
    let sum = |b: u32| -> Result<QSeries> {
        Ok(crucial_contributions(&lambda, rank, order, b)?
            .into_iter()
            .fold(QSeries::zero_to(order), |acc, (_, t)| acc.add(&t)))
    };
    let first = sum(bound)?;
    let second = sum(bound + rank as u32)?;
    let lhs = c_coefficients(rank, order).mul(&int_series(&weyl_dimension(&lambda), order));
    let mut report = VerificationReport::new("crucial")
        .param("rank", rank)
        .param("lambda", &lambda)
        .param("order", order)
        .param("mu_bound", bound)
        .param("rerun_bound", bound + rank as u32);
    for m in 0..=order {
        let (a, b) = (lhs.coeff(m), second.coeff(m));
        report.push(cell(
            a == b,
            || json!({"q_power": m, "lhs": a.map(|x| x.to_string()), "rhs": b.map(|x| x.to_string())}),
        ));
    }
    if first != second {
        report.unstable(json!({"bound": bound, "sum": first.to_string(), "rerun_sum": second.to_string()}));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_verifications_pass() {
        let t = cached_table(2, 4, Specialization::Generic).unwrap();
        assert!(verify_norm_recursion(&t).unwrap().passed());
        assert!(verify_schur_degeneration(2, 4).unwrap().passed());
        assert!(verify_orthonormality(2, 3).unwrap().passed());
        assert!(verify_cauchy_kernels(2, 4).unwrap().passed());
        assert!(verify_mult(2, 2, 2).unwrap().passed());
        assert!(verify_lim(2, 2, 2, &[p(&[0]), p(&[1])]).unwrap().passed());
        assert!(verify_lhs(2, 4, 3).unwrap().passed());
        assert!(verify_cauchy_t0(2, 3, 3).unwrap().passed());
        assert!(verify_cauchy_t0(1, 3, 3).unwrap().passed());
    }

    #[test]
    fn crucial_small_case() {
        let terms = crucial_contributions(&p(&[0, 0]), 2, 2, 4).unwrap();
        let want = vec![
            (p(&[0, 0]), QSeries::from_ints(2, &[1])),
            (p(&[2, 0]), QSeries::from_ints(2, &[0, 3, 4])),
            (p(&[4, 0]), QSeries::from_ints(2, &[0, 0, 5])),
        ];
        assert_eq!(terms, want);
        let rep = verify_crucial(&p(&[0, 0]), 2, 2, None).unwrap();
        assert_eq!(rep.status, Status::Pass);
    }

    #[test]
    fn small_bound_is_inconclusive() {
        let rep = verify_crucial(&p(&[0, 0]), 2, 2, Some(0)).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
    }

    #[test]
    fn corrupted_table_fails() {
        let t = cached_table(2, 3, Specialization::Generic).unwrap();
        let json = serde_json::to_string(&*t)
            .unwrap()
            .replacen(r#""num":["1","1"]"#, r#""num":["1","2"]"#, 1);
        let bad: QWhittakerTable = serde_json::from_str(&json).unwrap();
        assert_ne!(bad, *t);
        assert_eq!(verify_norm_recursion(&bad).unwrap().status, Status::Fail);
    }
}
