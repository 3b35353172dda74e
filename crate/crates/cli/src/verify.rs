//! The `verify` subcommand: seven self-check suites, run in a fixed order,
//! each reported on its own line.  The exit status is zero only when every
//! suite passes.

use std::io::Write;
use std::path::PathBuf;

use partition_stats::asymptotics::{self, parity_note};
use partition_stats::genfun::{self, Backend};
use partition_stats::oracle::{oracle_series, oracle_stat};
use partition_stats::partitions::enumerate_by_supernorm_bound;
use partition_stats::primes::reciprocal_mertens_product_exact;
use partition_stats::{
    BigRational, Ensemble, EnsembleSpec, MathConstants, Mode, PrimeTable, Restriction, Result,
    Weight,
};

use crate::sink;

#[derive(clap::Args)]
pub struct Args {
    /// Depth of the scaling suites (oracle agreement is capped at 20,
    /// the chain at 70)
    #[arg(long, default_value_t = 70)]
    nmax: u32,
    /// Sieve limit for the prime table
    #[arg(long, default_value_t = 1_000_000)]
    sieve_limit: u64,
    /// Decimal places in the report text
    #[arg(long, default_value_t = 12)]
    precision: usize,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Self-test hook: perturb one recurrence value so suite 1 must fail
    #[arg(long, hide = true)]
    fault_injection: bool,
}

struct Suite {
    name: &'static str,
    passed: bool,
    detail: String,
}

pub fn run(args: &Args) -> Result<bool> {
    let table = sink::build_table(args.sieve_limit)?;
    let prec = args.precision;
    let mut suites = Vec::with_capacity(7);

    suites.push(oracle_agreement(&table, args.nmax.min(20), args.fault_injection)?);

    // suites 2 and 3 (and the witness for suite 7) come from one scan
    let ineq = asymptotics::inequality_suite(&table, args.nmax.min(70), Backend::Exact)?;

    let identities_pass = ineq.reports[2].all_hold && ineq.reports[3].all_hold;
    suites.push(Suite {
        name: "ones-stripping identities",
        passed: identities_pass,
        detail: if identities_pass {
            format!(
                "individual statistics equal the cumulative no-ones ones exactly for n <= {}",
                ineq.reports[2].range.1
            )
        } else {
            format!(
                "mismatch near n = {} (worst margin {:.prec$e})",
                ineq.reports[2].worst_at, ineq.reports[2].worst_margin
            )
        },
    });

    let chain_pass = ineq.reports[0].all_hold && ineq.reports[1].all_hold;
    suites.push(Suite {
        name: "cumulative supernorm chain",
        passed: chain_pass,
        detail: match (chain_pass, ineq.chain_strict_from) {
            (true, Some(k)) => format!(
                "size <= perimeter <= max for 1 <= n <= {}; strict in both links from n = {k}",
                ineq.chain.len()
            ),
            (true, None) => format!(
                "size <= perimeter <= max for 1 <= n <= {}; equality persists at the top",
                ineq.chain.len()
            ),
            (false, _) => format!(
                "violated near n = {} (margin {:.prec$e})",
                ineq.reports[0].worst_at.min(ineq.reports[1].worst_at),
                ineq.reports[0].worst_margin.min(ineq.reports[1].worst_margin)
            ),
        },
    });

    suites.push(perimeter_linear_bound(&table, prec)?);
    suites.push(closed_forms(&table)?);
    suites.push(bijection(&table)?);

    let witness_pass = ineq.reports[5].all_hold
        && ineq.witness_size_14 > 0.193805
        && ineq.witness_size_14 < 0.193815
        && ineq.witness_per_14 > 0.192875
        && ineq.witness_per_14 < 0.192885;
    suites.push(Suite {
        name: "size/perimeter witness at n = 14",
        passed: witness_pass,
        detail: format!(
            "supernorm statistics {:.prec$} (size) > {:.prec$} (perimeter)",
            ineq.witness_size_14, ineq.witness_per_14
        ),
    });

    let mut w = sink::open(args.out.as_deref())?;
    let total = suites.len();
    let mut all = true;
    for (i, suite) in suites.iter().enumerate() {
        let verdict = if suite.passed { "ok" } else { "FAIL" };
        writeln!(w, "[{}/{total}] {}: {verdict} ({})", i + 1, suite.name, suite.detail)?;
        all &= suite.passed;
    }

    writeln!(w, "notes:")?;
    let consts = MathConstants::new();
    writeln!(
        w,
        "  e^gamma * log 7 = {:.prec$}; the simplified constant 3.3432 sometimes \
         quoted for it understates the true value, which is what the scans use",
        consts.e_gamma * 7f64.ln()
    )?;
    let star = genfun::series(
        &table,
        &EnsembleSpec::new(
            Ensemble::Size,
            Mode::Individual,
            Restriction::NoOnes,
            Weight::Norm,
        ),
        40,
        Backend::Float,
    )?;
    let split = parity_note(&star)
        .iter()
        .take_while(|row| row.odd_below_even)
        .count();
    writeln!(
        w,
        "  parity split of the no-ones size statistic: odd slots sit below even \
         ones for 3 <= 2k+1 <= {} (observation only, nothing is asserted past the \
         scanned range)",
        2 * split + 1
    )?;
    writeln!(
        w,
        "result: {}",
        if all {
            format!("all {total} suites passed")
        } else {
            "at least one suite failed".to_string()
        }
    )?;
    w.flush()?;
    Ok(all)
}

/// Suite 1: the generating-function recurrences against brute-force
/// enumeration over every finite-family configuration.
fn oracle_agreement(table: &PrimeTable, cap: u32, fault: bool) -> Result<Suite> {
    let mut checked = 0usize;
    for ensemble in [Ensemble::Size, Ensemble::Perimeter] {
        for weight in [Weight::Norm, Weight::Supernorm] {
            for restriction in [Restriction::All, Restriction::NoOnes, Restriction::Distinct] {
                for mode in [Mode::Individual, Mode::Cumulative] {
                    for beta in [1.0, 2.0] {
                        let spec = EnsembleSpec::new(ensemble, mode, restriction, weight)
                            .with_beta(beta);
                        let series = genfun::series(table, &spec, cap, Backend::Exact)?;
                        let expected = oracle_series(table, &spec, cap)?;
                        for n in 0..=cap {
                            let mut got = series.exact_value(n).expect("within nmax").clone();
                            // self-test hook: prove a mismatch is caught and
                            // reported, see the hidden --fault-injection flag
                            if fault
                                && n == 2
                                && ensemble == Ensemble::Perimeter
                                && weight == Weight::Supernorm
                                && restriction == Restriction::All
                                && mode == Mode::Individual
                                && beta == 1.0
                            {
                                got += BigRational::from_integer(1.into());
                            }
                            if got != expected[n as usize] {
                                return Ok(Suite {
                                    name: "oracle agreement",
                                    passed: false,
                                    detail: format!(
                                        "{spec} at n = {n}: enumeration gives {}, \
                                         recurrence gives {got}",
                                        expected[n as usize]
                                    ),
                                });
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(Suite {
        name: "oracle agreement",
        passed: true,
        detail: format!("{checked} values across 48 configurations, n <= {cap}, all equal"),
    })
}

/// Suite 4: the individual perimeter norm statistic never exceeds n.
fn perimeter_linear_bound(table: &PrimeTable, prec: usize) -> Result<Suite> {
    let spec = EnsembleSpec::new(
        Ensemble::Perimeter,
        Mode::Individual,
        Restriction::All,
        Weight::Norm,
    );
    // exact by enumeration through 20
    for n in 1..=20u32 {
        let value = oracle_stat(table, &spec, n)?;
        if value > BigRational::from_integer(n.into()) {
            return Ok(Suite {
                name: "linear perimeter bound",
                passed: false,
                detail: format!("enumeration exceeds n at n = {n}: {value}"),
            });
        }
    }
    // float recurrence through 2000
    let series = genfun::series(table, &spec, 2000, Backend::Float)?;
    let mut worst = f64::INFINITY;
    let mut worst_at = 0u32;
    for n in 1..=2000u32 {
        let margin = n as f64 - series.value_f64(n).expect("within nmax");
        if margin < worst {
            worst = margin;
            worst_at = n;
        }
    }
    Ok(Suite {
        name: "linear perimeter bound",
        passed: worst >= 0.0,
        detail: format!(
            "exact through n = 20; float margin bottoms out at {worst:.prec$} (n = {worst_at}) \
             through 2000"
        ),
    })
}

/// Suite 5: closed forms for the no-ones max-part statistics and the exact
/// product form of the cumulative supernorm statistic.
fn closed_forms(table: &PrimeTable) -> Result<Suite> {
    let one = BigRational::from_integer(1.into());

    // slot 0 and the vanishing slot 1
    if genfun::max_norm_star(0, Mode::Individual) != one
        || genfun::max_norm_star(0, Mode::Cumulative) != one
        || genfun::max_norm_star(1, Mode::Individual) != BigRational::from_integer(0.into())
        || genfun::max_norm_star(1, Mode::Cumulative) != one
    {
        return Ok(Suite {
            name: "max-part closed forms",
            passed: false,
            detail: "base slots of the no-ones statistics are off".into(),
        });
    }

    // closed form against the telescoping product, maintained incrementally
    let mut running = one.clone(); // product of j/(j-1) for 2 <= j <= n
    for n in 2..=10_000u32 {
        running *= BigRational::new(n.into(), (n - 1).into());
        let cumulative = genfun::max_norm_star(n, Mode::Cumulative);
        let individual = genfun::max_norm_star(n, Mode::Individual);
        if cumulative != BigRational::from_integer(n.into())
            || cumulative != running
            || individual != one
        {
            return Ok(Suite {
                name: "max-part closed forms",
                passed: false,
                detail: format!(
                    "route disagreement at n = {n}: product {running}, closed form {cumulative}"
                ),
            });
        }
    }
    // the per-call product route, spot-checked where a full scan would be
    // quadratic
    for n in [1u32, 7, 100, 1_000, 10_000] {
        for mode in [Mode::Individual, Mode::Cumulative] {
            if genfun::max_norm_star_product_route(n, mode) != genfun::max_norm_star(n, mode) {
                return Ok(Suite {
                    name: "max-part closed forms",
                    passed: false,
                    detail: format!("product route disagrees at n = {n}"),
                });
            }
        }
    }

    // supernorm: series recurrence against a from-scratch exact product
    let series = genfun::max_supernorm_series(table, Mode::Cumulative, 200, Backend::Exact)?;
    for n in 1..=200u32 {
        let from_scratch = reciprocal_mertens_product_exact(table, table.nth_prime(n as u64)?)?;
        if series.exact_value(n) != Some(&from_scratch) {
            return Ok(Suite {
                name: "max-part closed forms",
                passed: false,
                detail: format!(
                    "cumulative supernorm product disagrees at n = {n}: series {}, product {}",
                    series.exact_value(n).expect("within nmax"),
                    from_scratch
                ),
            });
        }
    }

    Ok(Suite {
        name: "max-part closed forms",
        passed: true,
        detail: "norm forms agree through 10000, supernorm products through 200".into(),
    })
}

/// Suite 6: the supernorm enumerates every positive integer exactly once.
fn bijection(table: &PrimeTable) -> Result<Suite> {
    const BOUND: u64 = 10_000;
    let mut seen = Vec::with_capacity(BOUND as usize);
    for partition in enumerate_by_supernorm_bound(table, BOUND)? {
        let value = partition
            .supernorm_u128(table)?
            .expect("supernorms below the bound fit in u128");
        seen.push(value as u64);
    }
    let count = seen.len();
    seen.sort_unstable();
    let complete = count as u64 == BOUND && seen.iter().zip(1..=BOUND).all(|(&s, i)| s == i);
    Ok(Suite {
        name: "supernorm bijection",
        passed: complete,
        detail: if complete {
            format!("{BOUND} partitions, supernorms exactly 1..={BOUND}")
        } else {
            format!("enumeration yielded {count} partitions or skipped a value")
        },
    })
}
