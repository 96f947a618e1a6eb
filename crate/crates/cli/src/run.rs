use std::fmt;
use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;
use weylrec::macdonald::{
    cached_table, verify_cauchy_kernels, verify_cauchy_t0, verify_crucial, verify_lhs, verify_lim, verify_mult,
    verify_norm_recursion, verify_orthonormality, EtaTable, QWhittakerSeriesTable, Specialization,
};
use weylrec::partitions::{partitions_up_to, weight_to_partition, DominantWeight, Partition};
use weylrec::report::{Status, VerificationReport};
use weylrec::symfunc::to_schur_basis;
use weylrec::weylchar::{
    hilbert_global, hilbert_local, hilbert_projective, local_weyl_character, reciprocity_multiplicities,
    verify_reciprocity_with, Grouping, ReciprocityRow, ReciprocityTable,
};

use crate::args::{
    Basis, Bound, CharacterKind, Cli, Command, Config, Format, GroupingArg, HilbertKind, Identity, List, VerifyArgs,
};
use crate::cache::TableCache;

/// How a successful run ends.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

/// Malformed input that parsed syntactically; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Errors caused by the arguments rather than by the computation.
pub fn is_input_error(e: &weylrec::Error) -> bool {
    use weylrec::Error::*;
    matches!(
        e,
        NotAPartition(_) | LengthMismatch { .. } | RankMismatch(..) | NonzeroLastPart(_) | InvalidArgument(_)
    )
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn weight(list: &List, rank: usize) -> Result<DominantWeight> {
    if list.0 == [0] {
        return Ok(DominantWeight::zero(rank));
    }
    if list.0.len() + 1 != rank {
        return Err(usage(format!(
            "a weight for sl_{rank} has {} coordinates, got {}",
            rank - 1,
            list.0.len()
        )));
    }
    Ok(DominantWeight::new(list.0.clone()))
}

fn partition(list: &List, len: usize) -> Result<Partition> {
    let p = Partition::new(list.0.clone()).map_err(|e| usage(e.to_string()))?;
    p.padded(len)
        .map_err(|_| usage(format!("{p} has more than {len} nonzero parts")))
}

fn auto_bound(config: &Config, lambda: &Partition, order: usize) -> u32 {
    match config.mu_bound {
        Bound::Fixed(b) => b,
        Bound::Auto => lambda.size() + config.rank as u32 * order as u32,
    }
}

struct Output<'a> {
    config: &'a Config,
}

impl Output<'_> {
    fn write(&self, text: &str) -> Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.config.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }

    fn emit<T: Serialize>(&self, text: impl FnOnce() -> String, value: &T) -> Result<()> {
        match self.config.format {
            Format::Text => self.write(&text()),
            Format::Json => self.write(&serde_json::to_string_pretty(value)?),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let config = &cli.config;
    if config.rank < 2 {
        return Err(usage("--rank must be at least 2"));
    }
    let cache = TableCache::from_env();
    let out = Output { config };
    let rank = config.rank;
    match &cli.command {
        Command::Macdonald { partition: list, basis } => {
            let xi = partition(list, rank)?;
            if let Some(c) = &cache {
                c.exact(rank, xi.size(), Specialization::Generic)?;
            }
            let table = cached_table(rank, xi.size(), Specialization::Generic)?;
            let entry = table.entry(&xi)?;
            match basis {
                Basis::M => out.emit(|| entry.to_string(), entry)?,
                Basis::S => {
                    let coeffs = to_schur_basis(entry)?
                        .into_iter()
                        .map(|(idx, c)| match c.as_polynomial() {
                            Some(p) => Ok((idx, p.clone())),
                            None => Err(weylrec::Error::NonPolynomialCoefficient(format!("{idx}: {c}"))),
                        })
                        .collect::<weylrec::Result<_>>()?;
                    let eta = EtaTable { mu: xi, coeffs };
                    out.emit(|| eta.to_string(), &eta)?;
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Character {
            which: CharacterKind::LocalWeyl { weight: list },
        } => {
            let lw = weight(list, rank)?;
            if let Some(c) = &cache {
                c.exact(rank, lw.to_partition().size(), Specialization::Generic)?;
            }
            let ch = local_weyl_character(&lw, rank)?;
            out.emit(|| ch.to_string(), &ch)?;
            Ok(Outcome::Pass)
        }
        Command::Hilbert { which, weight: list } => {
            let lw = weight(list, rank)?;
            let size = lw.to_partition().size();
            let h = match which {
                HilbertKind::Local => {
                    if let Some(c) = &cache {
                        c.exact(rank, size, Specialization::Generic)?;
                    }
                    hilbert_local(&lw, rank)?
                }
                HilbertKind::Global => {
                    if let Some(c) = &cache {
                        c.series(rank, size, config.order)?;
                    }
                    hilbert_global(&lw, rank, config.order)?
                }
                HilbertKind::Projective => hilbert_projective(&lw, rank, config.order)?,
            };
            out.emit(|| h.to_string(), &h)?;
            Ok(Outcome::Pass)
        }
        Command::Verify(args) => verify(config, args, cache.as_ref(), &out),
        Command::ReciprocityTable {
            weight: list,
            max_grade,
            prefix,
        } => {
            let lw = weight(list, rank)?;
            let grade = max_grade.unwrap_or(config.order as u32);
            let bound = auto_bound(config, &lw.to_partition(), grade as usize);
            if let Some(c) = &cache {
                c.series(rank, bound + rank as u32, grade as usize)?;
            }
            let mut table = reciprocity_multiplicities(&lw, rank, grade, bound)?;
            if let Some(k) = prefix {
                table.rows = table.prefix(*k).into_iter().cloned().collect();
            }
            out.emit(|| render_reciprocity(&table), &table)?;
            Ok(if table.stable {
                Outcome::Pass
            } else {
                Outcome::Inconclusive
            })
        }
        Command::Export { max_size, truncated } => {
            let json = if *truncated {
                let t = QWhittakerSeriesTable::build(rank, *max_size, config.order)?;
                serde_json::to_string_pretty(&t)?
            } else {
                if let Some(c) = &cache {
                    c.exact(rank, *max_size, Specialization::Generic)?;
                }
                serde_json::to_string_pretty(&*cached_table(rank, *max_size, Specialization::Generic)?)?
            };
            out.write(&json)?;
            Ok(Outcome::Pass)
        }
    }
}

fn render_row(row: &ReciprocityRow) -> String {
    let mut c: Vec<String> = row.mu.iter().map(|x| x.to_string()).collect();
    c.push(row.s.to_string());
    format!("({}): {}", c.join(","), row.mult)
}

fn render_reciprocity(t: &ReciprocityTable) -> String {
    let lambda: Vec<String> = t.lambda.iter().map(|x| x.to_string()).collect();
    let mut lines = vec![format!(
        "# lambda=({}) rank={} max_grade={} mu_bound={} rerun_bound={} stable={}",
        lambda.join(","),
        t.rank,
        t.max_grade,
        t.mu_bound,
        t.rerun_bound,
        t.stable
    )];
    lines.extend(t.rows.iter().map(render_row));
    lines.join("\n")
}

fn verify(config: &Config, args: &VerifyArgs, cache: Option<&TableCache>, out: &Output) -> Result<Outcome> {
    let rank = config.rank;
    let (order, degree) = (config.order, config.degree);
    let lambda = || -> Result<Partition> {
        match (&args.weight, &args.partition) {
            (Some(w), _) => Ok(weight(w, rank)?.to_partition()),
            (None, Some(p)) => {
                let p = partition(p, rank)?;
                if p.last() != 0 {
                    return Err(usage(format!("{p} must have at most {} nonzero parts", rank - 1)));
                }
                Ok(p)
            }
            (None, None) => Ok(Partition::zero(rank)),
        }
    };
    let report: VerificationReport = match args.identity {
        Identity::Orthonormality => verify_orthonormality(rank, degree)?,
        Identity::CauchyKernels => verify_cauchy_kernels(rank, degree)?,
        Identity::CauchyT0 => verify_cauchy_t0(rank, degree, order)?,
        Identity::Mult => verify_mult(rank, degree, args.max_size.unwrap_or(3))?,
        Identity::Lim => {
            let lambdas = partitions_up_to(rank - 1, args.max_size.unwrap_or(3));
            verify_lim(rank, order, args.max_m, &lambdas)?
        }
        Identity::Lhs => verify_lhs(rank, degree, order)?,
        Identity::Norms => {
            let n = args.max_size.unwrap_or(5);
            if let Some(c) = cache {
                c.exact(rank, n, Specialization::Generic)?;
            }
            verify_norm_recursion(&*cached_table(rank, n, Specialization::Generic)?)?
        }
        Identity::Crucial | Identity::Reciprocity => {
            let lambda = lambda()?;
            let bound = auto_bound(config, &lambda, order);
            if let Some(c) = cache {
                c.series(rank, bound + rank as u32, order)?;
            }
            if args.identity == Identity::Crucial {
                verify_crucial(&lambda, rank, order, Some(bound))?
            } else {
                let grouping = match args.grouping {
                    GroupingArg::PerGrade => Grouping::PerGrade,
                    GroupingArg::PerWeight => Grouping::PerWeight,
                };
                let lw = DominantWeight::from_partition(&lambda)?;
                weight_to_partition(&lw, rank)?;
                verify_reciprocity_with(&lw, rank, order, Some(bound), grouping)?
            }
        }
    };
    out.emit(|| report.to_string(), &report)?;
    Ok(match report.status {
        Status::Pass => Outcome::Pass,
        Status::Fail => Outcome::Fail,
        Status::Inconclusive => Outcome::Inconclusive,
    })
}
