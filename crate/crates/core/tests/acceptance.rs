//! Acceptance run: one line per criterion, exact equality throughout.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use weylrec::exactalg::QSeries;
use weylrec::macdonald::{
    c_coefficients, cached_table, crucial_contributions, eta_coeffs, verify_cauchy_kernels, verify_cauchy_t0,
    verify_crucial, verify_lhs, verify_lim, verify_mult, verify_norm_recursion, verify_orthonormality,
    verify_schur_degeneration, Specialization,
};
use weylrec::partitions::{partitions_up_to, DominantWeight, Partition};
use weylrec::report::VerificationReport;
use weylrec::symfunc::SchurIndex;
use weylrec::weylchar::{
    dominant_weights, hilbert_global, hilbert_local, hilbert_projective, local_weyl_character,
    reciprocity_multiplicities, reciprocity_terms, verify_reciprocity, verify_reciprocity_with, Grouping,
};
use weylrec::Result;

type Outcome = Result<Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn w(c: &[u32]) -> DominantWeight {
    DominantWeight::new(c.to_vec())
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn require(failures: &mut Vec<String>, report: VerificationReport) {
    if report.cells_checked == 0 {
        failures.push(format!("{report}: no cells checked"));
    } else if !report.passed() {
        failures.push(format!(
            "{report} first failure: {}",
            report.first_failure.clone().unwrap_or_default()
        ));
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(failures: &mut Vec<String>, what: &str, got: T, want: T) {
    if got != want {
        failures.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

/// The norm ranges shared by several criteria.
const NORM_RANGES: [(usize, u32); 2] = [(2, 6), (3, 5)];

fn norms() -> Outcome {
    let mut f = Vec::new();
    for (r, n) in NORM_RANGES {
        require(
            &mut f,
            verify_norm_recursion(&*cached_table(r, n, Specialization::Generic)?)?,
        );
    }
    Ok(f)
}

fn orthonormality() -> Outcome {
    let mut f = Vec::new();
    for r in [2, 3] {
        require(&mut f, verify_orthonormality(r, 5)?);
    }
    Ok(f)
}

fn cauchy_kernels() -> Outcome {
    let mut f = Vec::new();
    for r in [2, 3] {
        require(&mut f, verify_cauchy_kernels(r, 6)?);
    }
    Ok(f)
}

fn mult_and_lim() -> Outcome {
    let mut f = Vec::new();
    for r in [2, 3] {
        require(&mut f, verify_mult(r, 3, 3)?);
        let lambdas = partitions_up_to(r - 1, 3);
        require(&mut f, verify_lim(r, 3, 3, &lambdas)?);
    }
    expect(
        &mut f,
        "c at r=2",
        c_coefficients(2, 3),
        QSeries::from_ints(3, &[1, 3, 9, 22]),
    );
    Ok(f)
}

fn lhs() -> Outcome {
    let mut f = Vec::new();
    for r in [2, 3] {
        require(&mut f, verify_lhs(r, 6, 6)?);
    }
    Ok(f)
}

fn cauchy_t0() -> Outcome {
    let mut f = Vec::new();
    for r in [2, 3] {
        require(&mut f, verify_cauchy_t0(r, 6, 8)?);
    }
    Ok(f)
}

fn reciprocity_cases() -> Vec<(usize, DominantWeight)> {
    vec![
        (2, w(&[0])),
        (2, w(&[1])),
        (2, w(&[2])),
        (2, w(&[3])),
        (3, w(&[0, 0])),
        (3, w(&[1, 0])),
        (3, w(&[1, 1])),
    ]
}

fn reciprocity() -> Outcome {
    let mut f = Vec::new();
    for (r, lw) in reciprocity_cases() {
        require(&mut f, verify_reciprocity(&lw, r, 6)?);
        require(&mut f, verify_crucial(&lw.to_partition(), r, 6, None)?);
    }
    require(
        &mut f,
        verify_reciprocity_with(&w(&[1]), 2, 6, None, Grouping::PerWeight)?,
    );

    let series = |c: &[i64]| QSeries::from_ints(2, c);
    expect(
        &mut f,
        "projective at (2, 0)",
        hilbert_projective(&w(&[0]), 2, 2)?.to_series(2)?,
        series(&[1, 3, 9]),
    );
    let terms: Vec<QSeries> = reciprocity_terms(&w(&[0]), 2, 2, 4)?
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    expect(
        &mut f,
        "per-weight terms",
        terms,
        vec![series(&[1]), series(&[0, 3, 4]), series(&[0, 0, 5])],
    );
    let crucial: Vec<QSeries> = crucial_contributions(&p(&[0, 0]), 2, 2, 4)?
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    expect(
        &mut f,
        "crucial terms",
        crucial,
        vec![series(&[1]), series(&[0, 3, 4]), series(&[0, 0, 5])],
    );
    Ok(f)
}

/// Dimension of `V(1)^{⊗m}` for `sl_2`, by iterated Clebsch–Gordan on highest weights.
fn tensor_power_dimension(m: u32) -> u64 {
    let mut highest: BTreeMap<u32, u64> = BTreeMap::from([(0, 1)]);
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for (&a, &k) in &highest {
            *next.entry(a + 1).or_insert(0) += k;
            if a > 0 {
                *next.entry(a - 1).or_insert(0) += k;
            }
        }
        highest = next;
    }
    highest.iter().map(|(&a, &k)| k * u64::from(a + 1)).sum()
}

fn sl2_sanity() -> Outcome {
    let mut f = Vec::new();
    for m in 0..=4u32 {
        let at_one = hilbert_local(&w(&[m]), 2)?.at_one();
        expect(
            &mut f,
            &format!("dim W_loc({m}ω)"),
            at_one,
            Some(BigInt::from(tensor_power_dimension(m))),
        );
    }
    let table = cached_table(2, 2, Specialization::Generic)?;
    expect(
        &mut f,
        "P_(2,0)",
        table.entry(&p(&[2, 0]))?.to_string(),
        "m[2,0] + (1+q)·m[1,1]".to_string(),
    );
    let eta = eta_coeffs(&p(&[2, 0]), 2)?;
    let want = BTreeMap::from([
        (SchurIndex::new(p(&[2, 0]), 0)?, weylrec::exactalg::Poly::one()),
        (
            SchurIndex::new(p(&[0, 0]), 1)?,
            weylrec::exactalg::Poly::from_i64s(&[0, 1]),
        ),
    ]);
    expect(&mut f, "η^(2)", eta.coeffs, want);
    Ok(f)
}

fn schur_degeneration() -> Outcome {
    let mut f = Vec::new();
    for (r, n) in NORM_RANGES {
        require(&mut f, verify_schur_degeneration(r, n)?);
    }
    Ok(f)
}

fn structural() -> Outcome {
    let mut f = Vec::new();
    for (r, n) in NORM_RANGES {
        for lw in dominant_weights(r, n) {
            let eta = eta_coeffs(&lw.to_partition(), r)?;
            if !eta.is_nonnegative() {
                f.push(format!("η^{} has a negative coefficient", lw.to_partition()));
            }
            local_weyl_character(&lw, r)?;
            let local = hilbert_local(&lw, r)?;
            let global = hilbert_global(&lw, r, 6)?;
            let projective = hilbert_projective(&lw, r, 6)?;
            for h in [local, global, projective] {
                if !h.is_nonnegative_integral() {
                    f.push(format!("Hilbert series of {lw} at rank {r}: {h}"));
                }
            }
        }
    }
    // Negative or non-integral reciprocity multiplicities abort with an error.
    for (r, lw) in reciprocity_cases() {
        let bound = lw.to_partition().size() + r as u32 * 6;
        reciprocity_multiplicities(&lw, r, 6, bound)?;
    }
    for r in [2, 3] {
        let zero = DominantWeight::new(vec![0; r - 1]);
        expect(
            &mut f,
            "W(0,0)",
            hilbert_global(&zero, r, 8)?.to_series(8)?,
            QSeries::one_to(8),
        );
    }
    Ok(f)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("q-Whittaker norms and orthogonality", norms),
        ("constant-term orthonormality", orthonormality),
        ("Cauchy kernels", cauchy_kernels),
        ("multiplication and limit coefficients", mult_and_lim),
        ("kernel Schur coefficients and valuations", lhs),
        ("t=0 Cauchy specialization", cauchy_t0),
        ("reciprocity at character level", reciprocity),
        ("sl_2 sanity", sl2_sanity),
        ("Schur degeneration", schur_degeneration),
        ("nonnegativity and integrality", structural),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| id.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(failures) if failures.is_empty() => println!("{id} ({name}): PASS in {secs:.2}s"),
            Ok(failures) => {
                all = false;
                println!("{id} ({name}): FAIL in {secs:.1}s");
                failures.iter().for_each(|m| println!("    {m}"));
            }
            Err(e) => {
                all = false;
                println!("{id} ({name}): FAIL in {secs:.1}s: {e}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
