//! The experiment runners behind each subcommand. Every runner returns the
//! output table plus a pass/fail verdict for its built-in assertions.

use ampforge::apps::{
    benchmark_tanh, find_maximum, planted_max_state, prepare_state, MaxFindSpec, PrepareOutcome,
    StatePrepSpec,
};
use ampforge::circuits::{build_diag_encoding, ComplexEncodingMode};
use ampforge::engine::QetNoise;
use ampforge::poly::library::{
    approx_cos, approx_exp, approx_gaussian, approx_logistic, approx_sin, approx_tanh,
    CertifiedApproximation, TargetFn,
};
use ampforge::sampling::{oracle_for_state, random_complex_oracle, random_real_oracle};
use ampforge::{Error, Result};
use rayon::prelude::*;

use crate::config::{
    parse_noise, ApproxErrorArgs, BenchmarkTanhArgs, EncodeCheckArgs, LemmaFuzzArgs, MaxFindArgs,
    PrepareStateArgs, TransformArgs,
};
use crate::fuzz;
use crate::output::{fmt_b, fmt_f, fmt_u, Table};

pub struct RunOutcome {
    pub table: Table,
    pub pass: bool,
    pub summary: String,
    /// Extra artifacts as (file extension, body) pairs.
    pub extra: Vec<(String, String)>,
}

impl RunOutcome {
    fn new(table: Table, pass: bool, summary: String) -> Self {
        RunOutcome {
            table,
            pass,
            summary,
            extra: Vec::new(),
        }
    }
}

fn pool(parallelism: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter {
            name: "parallelism",
            message: e.to_string(),
        })
}

/// Theorem-level exactness of the diagonal encodings on seeded oracles.
pub fn encode_check(args: &EncodeCheckArgs) -> Result<RunOutcome> {
    let mut table = Table::new(vec![
        "n_qubits",
        "seed",
        "mode",
        "alpha",
        "ancillas",
        "controlled_u_queries",
        "block_deviation",
        "pass",
    ]);
    struct EncRow {
        seed: u64,
        mode: &'static str,
        alpha: f64,
        ancillas: usize,
        queries: u64,
        deviation: f64,
    }
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.common.seed + i)
        .collect();
    let n = args.n;
    let complex = args.complex;
    let rows: Vec<EncRow> = pool(args.common.parallelism)?
        .install(|| {
            seeds
                .par_iter()
                .map(|&seed| -> Result<Vec<EncRow>> {
                    let mut out = Vec::new();
                    let mut push = |mode, be: &ampforge::blockenc::BlockEncoding| -> Result<()> {
                        let deviation = be.verify_against(be.claimed().unwrap())?;
                        out.push(EncRow {
                            seed,
                            mode,
                            alpha: be.alpha(),
                            ancillas: be.ancillas(),
                            queries: be.unitary().controlled_u_queries(),
                            deviation,
                        });
                        Ok(())
                    };
                    let real = random_real_oracle(n, seed)?;
                    push(
                        "real",
                        &build_diag_encoding(&real, ComplexEncodingMode::Dilation)?,
                    )?;
                    if complex {
                        let oracle = random_complex_oracle(n, seed)?;
                        push(
                            "lcu",
                            &build_diag_encoding(&oracle, ComplexEncodingMode::LinearCombination)?,
                        )?;
                        push(
                            "dilation",
                            &build_diag_encoding(&oracle, ComplexEncodingMode::Dilation)?,
                        )?;
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()
        })?
        .into_iter()
        .flatten()
        .collect();

    let mut pass = true;
    let mut worst = 0.0f64;
    for row in rows {
        let ok = row.deviation <= 1e-9;
        pass &= ok;
        worst = worst.max(row.deviation);
        table.push(vec![
            n.to_string(),
            row.seed.to_string(),
            row.mode.to_string(),
            fmt_f(row.alpha),
            row.ancillas.to_string(),
            fmt_u(row.queries),
            fmt_f(row.deviation),
            fmt_b(ok),
        ]);
    }
    Ok(RunOutcome::new(
        table,
        pass,
        format!("encode-check: worst block deviation {worst:.3e} (threshold 1e-9)"),
    ))
}

/// Function transforms with the end-to-end l2 guarantee.
pub fn transform(args: &TransformArgs) -> Result<RunOutcome> {
    let target = args.function.target()?;
    let noise = parse_noise(&args.noise)?;
    let mut table = Table::new(vec![
        "function",
        "engine",
        "n_qubits",
        "seed",
        "eps",
        "target_norm",
        "poly_norm",
        "realized_norm",
        "eta",
        "gamma",
        "delta0",
        "achieved_l2_error",
        "success_probability",
        "aa_rounds",
        "controlled_u_queries",
        "depth_estimate",
        "poly_degree",
        "pass",
    ]);
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.common.seed + i)
        .collect();
    let n = args.n;
    let eps = args.eps;
    let runs = pool(args.common.parallelism)?.install(|| {
        seeds
            .par_iter()
            .map(|&seed| -> Result<_> {
                let oracle = random_real_oracle(n, seed)?;
                let run = ampforge::engine::function_transform(
                    &oracle,
                    0,
                    &target,
                    eps,
                    noise,
                    ampforge::engine::EngineChoice::Auto,
                    ampforge::poly::DEFAULT_DEGREE_CAP,
                    seed,
                )?;
                Ok((seed, run))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut pass = true;
    let mut histograms = Vec::new();
    for (seed, run) in &runs {
        if args.samples > 0 {
            histograms.push(serde_json::json!({
                "seed": seed,
                "samples": args.samples,
                "counts": sample_counts(&run.state, args.samples, *seed),
            }));
        }
        let r = &run.report;
        let ok = r.achieved_l2_error <= eps;
        pass &= ok;
        table.push(vec![
            target.name(),
            format!("{:?}", r.engine).to_lowercase(),
            n.to_string(),
            seed.to_string(),
            fmt_f(eps),
            fmt_f(r.target_norm),
            fmt_f(r.poly_norm),
            fmt_f(r.realized_norm),
            r.eta.map(fmt_f).unwrap_or_default(),
            fmt_f(r.gamma),
            fmt_f(r.delta0),
            fmt_f(r.achieved_l2_error),
            fmt_f(r.success_probability),
            fmt_u(r.aa_rounds),
            fmt_u(r.controlled_u_queries),
            fmt_u(r.depth_estimate),
            run.approximation.degree().to_string(),
            fmt_b(ok),
        ]);
    }
    let mut outcome = RunOutcome::new(
        table,
        pass,
        format!(
            "transform: {} on {} seeds at eps {eps:.1e}, all within budget: {pass}",
            target.name(),
            args.count
        ),
    );
    if args.samples > 0 {
        outcome.extra.push((
            "samples.json".to_string(),
            serde_json::to_string_pretty(&histograms).expect("serializable"),
        ));
    }
    Ok(outcome)
}

/// Seeded measurement histogram over the exact output distribution.
fn sample_counts(state: &ampforge::linalg::StateVector, samples: usize, seed: u64) -> Vec<u64> {
    let probs: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cdf.push(acc);
    }
    let mut counts = vec![0u64; probs.len()];
    let mut rng = ampforge::sampling::rng_for_seed(seed.wrapping_mul(0xd1342543de82ef95));
    for _ in 0..samples {
        let u: f64 = rand::Rng::gen(&mut rng);
        let idx = cdf.partition_point(|c| *c < u).min(probs.len() - 1);
        counts[idx] += 1;
    }
    counts
}

fn series_approx(target: &TargetFn, k: usize) -> Result<CertifiedApproximation> {
    match target {
        TargetFn::Tanh => approx_tanh(k),
        TargetFn::Exp => approx_exp(k),
        TargetFn::Cos => approx_cos(k),
        TargetFn::Sin => approx_sin(k),
        TargetFn::Logistic => approx_logistic(k),
        TargetFn::Gaussian { sigma } => approx_gaussian(k, *sigma),
        other => Err(Error::InvalidParameter {
            name: "function",
            message: format!("{} has no fixed-truncation series form", other.name()),
        }),
    }
}

/// Measured approximation error against the analytic tail bound, per k.
pub fn approx_error(args: &ApproxErrorArgs) -> Result<RunOutcome> {
    let target = args.function.target()?;
    let k_min = args.k_min.unwrap_or(args.k);
    if k_min > args.k {
        return Err(Error::InvalidParameter {
            name: "k_min",
            message: "k_min exceeds k".into(),
        });
    }
    let mut table = Table::new(vec![
        "function",
        "series_terms",
        "poly_degree",
        "analytic_bound",
        "measured_sup_error",
        "pass",
    ]);
    let mut pass = true;
    let mut exports = Vec::new();
    for k in k_min..=args.k {
        let cert = match series_approx(&target, k) {
            Ok(c) => c,
            Err(Error::InvalidParameter { .. }) if k < 2 => continue,
            Err(e) => return Err(e),
        };
        let ok = cert.measured_error <= cert.sup_error_bound;
        pass &= ok;
        if args.coefficients {
            exports.push(serde_json::json!({
                "function": target.name(),
                "series_terms": k,
                "coefficients": cert.poly.export(),
            }));
        }
        table.push(vec![
            target.name(),
            k.to_string(),
            cert.degree().to_string(),
            fmt_f(cert.sup_error_bound),
            fmt_f(cert.measured_error),
            fmt_b(ok),
        ]);
    }
    let mut outcome = RunOutcome::new(
        table,
        pass,
        format!(
            "approx-error: {} for k in [{k_min}, {}], measured under bound: {pass}",
            target.name(),
            args.k
        ),
    );
    if args.coefficients {
        outcome.extra.push((
            "coefficients.json".to_string(),
            serde_json::to_string_pretty(&exports).expect("serializable"),
        ));
    }
    Ok(outcome)
}

/// Engine comparison on tanh with the scaling-fit assertions.
pub fn benchmark(args: &BenchmarkTanhArgs) -> Result<RunOutcome> {
    if args.n_min < 1 || args.n_max < args.n_min {
        return Err(Error::InvalidParameter {
            name: "n_range",
            message: "need 1 <= n_min <= n_max".into(),
        });
    }
    let n_range: Vec<usize> = (args.n_min..=args.n_max).collect();
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.common.seed + i)
        .collect();
    let (rows, summary) = benchmark_tanh(&n_range, &seeds, args.eps)?;

    let mut table = Table::new(vec![
        "n_qubits",
        "seed",
        "eps",
        "series_terms",
        "queries_importance",
        "queries_uniform",
        "ratio",
        "target_norm",
        "gamma_tilde",
        "error_importance",
        "error_uniform",
    ]);
    for r in &rows {
        table.push(vec![
            r.n_qubits.to_string(),
            r.seed.to_string(),
            fmt_f(r.eps),
            r.series_terms.to_string(),
            fmt_u(r.queries_importance),
            fmt_u(r.queries_uniform),
            fmt_f(r.ratio),
            fmt_f(r.target_norm),
            fmt_f(r.gamma_tilde),
            fmt_f(r.error_importance),
            fmt_f(r.error_uniform),
        ]);
    }
    let pass = summary.min_target_norm >= 0.75
        && summary.max_gamma_tilde <= 2.0
        && summary.importance_variation <= 0.15
        && (0.8..=1.2).contains(&summary.uniform_slope_vs_sqrt_n)
        && (0.4..=0.6).contains(&summary.ratio_slope_vs_n)
        && rows
            .iter()
            .all(|r| r.error_importance <= r.eps && r.error_uniform <= r.eps);
    Ok(RunOutcome::new(
        table,
        pass,
        format!(
            "benchmark-tanh: importance variation {:.3}, uniform slope {:.3}, ratio slope {:.3}, min norm {:.3}, max gamma~ {:.3}",
            summary.importance_variation,
            summary.uniform_slope_vs_sqrt_n,
            summary.ratio_slope_vs_n,
            summary.min_target_norm,
            summary.max_gamma_tilde
        ),
    ))
}

/// Maximum finding on planted instances.
pub fn max_find(args: &MaxFindArgs) -> Result<RunOutcome> {
    let mut table = Table::new(vec![
        "n_qubits",
        "seed",
        "psi1",
        "delta_gap",
        "eps",
        "erf_scale",
        "mask_degree",
        "true_index",
        "found_index",
        "top_probability",
        "exact_masked_top_probability",
        "mask_leakage_ratio",
        "controlled_u_queries",
        "pass",
    ]);
    let seeds: Vec<u64> = (0..args.count as u64)
        .map(|i| args.common.seed + i)
        .collect();
    let n = args.n;
    let dim = 1usize << n;
    let threshold = (1.0 - args.eps * args.eps / 2.0).powi(2);
    let runs = pool(args.common.parallelism)?.install(|| {
        seeds
            .par_iter()
            .map(|&seed| -> Result<_> {
                let true_index = (seed as usize * 7 + 3) % dim;
                let state = planted_max_state(n, seed, args.psi1, args.gap, true_index)?;
                let oracle = oracle_for_state(&state)?;
                let spec = MaxFindSpec::new(oracle, args.psi1, args.gap, args.eps)?;
                let out = find_maximum(&spec, QetNoise::Off, seed)?;
                Ok((seed, true_index, out))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut pass = true;
    for (seed, true_index, out) in runs {
        let ok = out.index == true_index
            && out.top_probability >= threshold
            && out.exact_masked_top_probability >= threshold
            && out.mask_leakage_ratio <= 1.0;
        pass &= ok;
        table.push(vec![
            n.to_string(),
            seed.to_string(),
            fmt_f(args.psi1),
            fmt_f(args.gap),
            fmt_f(args.eps),
            fmt_f(out.erf_scale),
            out.mask_degree.to_string(),
            true_index.to_string(),
            out.index.to_string(),
            fmt_f(out.top_probability),
            fmt_f(out.exact_masked_top_probability),
            fmt_f(out.mask_leakage_ratio),
            fmt_u(out.report.controlled_u_queries),
            fmt_b(ok),
        ]);
    }
    Ok(RunOutcome::new(
        table,
        pass,
        format!(
            "max-find: {} planted trials at gap {}, all correct with top probability >= {threshold:.5}: {pass}",
            args.count, args.gap
        ),
    ))
}

/// Continuous state preparation against grid-normalized samples.
pub fn prepare(args: &PrepareStateArgs) -> Result<RunOutcome> {
    if args.domain.len() != 2 {
        return Err(Error::InvalidParameter {
            name: "domain",
            message: "expected two endpoints".into(),
        });
    }
    let target = args.function.target()?;
    let spec = StatePrepSpec {
        target: target.clone(),
        domain: (args.domain[0], args.domain[1]),
        n_qubits: args.n,
        eps: args.eps,
        degree_cap: ampforge::poly::DEFAULT_DEGREE_CAP,
    };
    let out: PrepareOutcome = prepare_state(&spec, args.common.seed)?;
    let mut table = Table::new(vec![
        "function",
        "n_qubits",
        "eps",
        "achieved_l2_error",
        "filling_ratio",
        "ladder_alpha",
        "controlled_u_queries",
        "composed_degree",
        "pass",
    ]);
    let ok = out.report.achieved_l2_error <= args.eps && out.ladder_alpha < 4.0;
    table.push(vec![
        target.name(),
        args.n.to_string(),
        fmt_f(args.eps),
        fmt_f(out.report.achieved_l2_error),
        fmt_f(out.filling_ratio),
        fmt_f(out.ladder_alpha),
        fmt_u(out.report.controlled_u_queries),
        out.composed_degree.to_string(),
        fmt_b(ok),
    ]);
    Ok(RunOutcome::new(
        table,
        ok,
        format!(
            "prepare-state: {} on {} qubits, error {:.3e} (budget {:.1e}), filling ratio {:.4}",
            target.name(),
            args.n,
            out.report.achieved_l2_error,
            args.eps,
            out.filling_ratio
        ),
    ))
}

/// The six lemma fuzz suites.
pub fn lemma_fuzz(args: &LemmaFuzzArgs) -> Result<RunOutcome> {
    let outcomes = fuzz::run_all(args.scale, args.common.seed)?;
    let mut table = Table::new(vec!["lemma", "trials", "violations", "worst_slack", "pass"]);
    let mut pass = true;
    for o in &outcomes {
        let ok = o.violations == 0;
        pass &= ok;
        table.push(vec![
            o.name.to_string(),
            o.trials.to_string(),
            o.violations.to_string(),
            fmt_f(o.worst_slack),
            fmt_b(ok),
        ]);
    }
    Ok(RunOutcome::new(
        table,
        pass,
        format!(
            "lemma-fuzz: {} suites, zero violations: {pass}",
            outcomes.len()
        ),
    ))
}
