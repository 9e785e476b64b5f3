use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use gcnet::bounds::{
    best_bounds, compare_upper_bounds, covering_lower_recursive, figure_curves, gap_bounds,
    rmax_lower_lll, rmax_lower_mrd, rmax_upper_alpha2, rmax_upper_ez, rmax_upper_subspace,
};
use gcnet::constructor::{
    covering_code_mrd_dual, covering_to_solution, network_code_params, oracle_max_code_within,
    randomized_solution, ConstructError,
};
use gcnet::network::{simulate as run_simulation, verify_solution, SolutionFile};
use gcnet::{
    BoundReport, CoveringCodeParams, DerivedConstants, FieldSpec, NetworkParams, NetworkSolution,
};

use crate::error::Failure;
use crate::output::{csv_table, emit, fixed, json, read_json, Format};
use crate::{Ctx, FieldArgs, Method, NetArgs};

/// Ambient dimensions above this skip the recursive covering bound.
const RECURSION_MAX_N: u64 = 256;

fn network(net: &NetArgs) -> Result<NetworkParams, Failure> {
    Ok(NetworkParams::new(
        net.h,
        net.r.unwrap_or(net.alpha),
        net.alpha,
        net.ell,
        net.eps,
    )?)
}

fn check_field(q: u64, t: u64) -> Result<(), Failure> {
    FieldSpec::new(q)?;
    if t == 0 {
        return Err(Failure::Usage("t must be at least 1".into()));
    }
    Ok(())
}

fn opt_fixed(x: Option<f64>) -> String {
    x.map(fixed).unwrap_or_default()
}

fn report_row(r: &BoundReport, selected: bool) -> Vec<String> {
    vec![
        r.source.tag().to_string(),
        format!("{:?}", r.kind).to_lowercase(),
        r.valid.to_string(),
        selected.to_string(),
        fixed(r.value_log2),
        r.value_exact
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_default(),
        opt_fixed(r.approx_log2),
        r.notes.clone(),
    ]
}

pub fn bounds(ctx: &Ctx, net: &NetArgs, field: &FieldArgs) -> Result<(), Failure> {
    let p = network(net)?;
    let (q, t) = (field.q, field.t);
    check_field(q, t)?;
    let mut reports = vec![
        rmax_upper_subspace(&p, q, t),
        rmax_upper_ez(&p, q, t),
        rmax_upper_alpha2(&p, q, t),
        rmax_lower_lll(&p, q, t),
        rmax_lower_mrd(&p, q, t),
    ];
    // r_max at (q, t) is the largest covering code with these parameters
    if let Ok(c) = network_code_params(&p, q, t) {
        if c.n <= RECURSION_MAX_N {
            if let Ok(cl) = covering_lower_recursive(c.n, c.k, c.delta, c.alpha, c.q) {
                reports.push(cl.recursive);
                reports.push(cl.direct);
            }
        }
    }
    let best = best_bounds(&p, q, t);
    let is_best = |r: &BoundReport| r.source == best.upper.source || r.source == best.lower.source;
    let c = DerivedConstants::new(&p);
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&json!({
            "params": p,
            "q": q,
            "t": t,
            "classification": p.classify(),
            "constants": {
                "theta": c.theta,
                "beta": c.beta(),
                "f": c.f(t),
                "g": c.g(t),
            },
            "reports": reports,
            "best_upper": best.upper,
            "best_lower": best.lower,
        }))?,
        Format::Csv => {
            let rows: Vec<_> = reports.iter().map(|r| report_row(r, is_best(r))).collect();
            csv_table(
                &[
                    "source",
                    "kind",
                    "valid",
                    "selected",
                    "value_log2",
                    "value_exact",
                    "approx_log2",
                    "notes",
                ],
                &rows,
            )?
        }
    };
    emit(ctx.out.as_deref(), &text)
}

pub fn figure(ctx: &Ctx, net: &NetArgs, t_max: u64) -> Result<(), Failure> {
    let p = network(net)?;
    if t_max == 0 {
        return Err(Failure::Usage("t-max must be at least 1".into()));
    }
    let rows = figure_curves(&p, t_max);
    let gap = gap_bounds(&p);
    let text = match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let table: Vec<_> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.t.to_string(),
                        fixed(r.necessary()),
                        fixed(r.sufficient()),
                        fixed(r.two_pow_t()),
                    ]
                })
                .collect();
            let mut s = csv_table(&["t", "necessary", "sufficient", "two_pow_t"], &table)?;
            s.push_str(&format!("# max_gap_bits={}\n", fixed(gap.gap_upper_bits)));
            s.push_str(&format!(
                "# min_gap_bits={}\n",
                opt_fixed(gap.gap_lower_bits)
            ));
            s.push_str(&format!("# t_necessary={}\n", gap.t_necessary));
            if let Some(t) = gap.t_sufficient {
                s.push_str(&format!("# t_sufficient={t}\n"));
            }
            s.push_str(&format!(
                "# argmin_q={} argmin_t={}\n",
                gap.argmin_q, gap.argmin_t
            ));
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "t": r.t,
                        "necessary": r.necessary(),
                        "sufficient": r.sufficient(),
                        "two_pow_t": r.two_pow_t(),
                    })
                })
                .collect();
            json(&json!({ "params": p, "rows": rows, "gap": gap }))?
        }
    };
    emit(ctx.out.as_deref(), &text)
}

fn from_code(p: &NetworkParams, q: u64, t: u64, cap: u64) -> Result<NetworkSolution, Failure> {
    let c = network_code_params(p, q, t)?;
    let code = covering_code_mrd_dual(&c, cap)?;
    Ok(covering_to_solution(p, q, t, &code)?)
}

fn from_oracle(p: &NetworkParams, q: u64, t: u64, cap: u64) -> Result<NetworkSolution, Failure> {
    let c = network_code_params(p, q, t)?;
    let best = oracle_max_code_within(&c, true, cap, u64::MAX)?;
    Ok(covering_to_solution(p, q, t, &best.witness)?)
}

pub fn construct(
    ctx: &Ctx,
    net: &NetArgs,
    field: &FieldArgs,
    method: Method,
    attempts: u64,
    cap: u64,
) -> Result<(), Failure> {
    let p = network(net)?;
    let (q, t) = (field.q, field.t);
    check_field(q, t)?;
    let random = || -> Result<NetworkSolution, Failure> {
        Ok(randomized_solution(&p, q, t, attempts, ctx.seed)?.solution)
    };
    let sol = match method {
        Method::Mrd => from_code(&p, q, t, cap)?,
        Method::Oracle => from_oracle(&p, q, t, cap)?,
        Method::Random => random()?,
        Method::Auto => match from_code(&p, q, t, cap) {
            Ok(s) => s,
            Err(Failure::Usage(_)) | Err(Failure::Compute(_)) => random()?,
            Err(e) => return Err(e),
        },
    };
    emit(ctx.out.as_deref(), &json(&sol.to_file(&p))?)
}

fn load(path: &Path) -> Result<(NetworkParams, NetworkSolution), Failure> {
    let file: SolutionFile = read_json(path)?;
    Ok(file.into_solution()?)
}

pub fn verify(ctx: &Ctx, path: &Path) -> Result<(), Failure> {
    let (p, sol) = load(path)?;
    let v = verify_solution(&p, &sol)?;
    let failure = v.first_failure.as_ref().map(|s| {
        s.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    });
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&json!({
            "valid": v.valid,
            "first_failure": v.first_failure,
            "receivers_checked": v.receivers_checked,
        }))?,
        Format::Csv => csv_table(
            &["valid", "first_failure", "receivers_checked"],
            &[vec![
                v.valid.to_string(),
                failure.clone().unwrap_or_default(),
                v.receivers_checked.to_string(),
            ]],
        )?,
    };
    emit(ctx.out.as_deref(), &text)?;
    match failure {
        None => Ok(()),
        Some(s) => Err(Failure::Compute(format!(
            "receiver {{{s}}} fails the rank condition"
        ))),
    }
}

#[derive(Serialize)]
struct ReceiverRow {
    subset: Vec<usize>,
    unique: bool,
    recovered: bool,
}

pub fn simulate(
    ctx: &Ctx,
    path: &Path,
    message: Option<Vec<u32>>,
    max_receivers: u64,
) -> Result<(), Failure> {
    let (p, sol) = load(path)?;
    let x = match message {
        Some(m) => m,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let order = sol.field().order();
            (0..p.h * sol.t())
                .map(|_| rng.random_range(0..order))
                .collect()
        }
    };
    let s = run_simulation(&p, &sol, &x, ctx.seed, max_receivers)?;
    let rows: Vec<ReceiverRow> = s
        .outcomes
        .iter()
        .map(|o| ReceiverRow {
            subset: o.subset.clone(),
            unique: o.unique,
            recovered: o.recovered(&x),
        })
        .collect();
    let all = s.all_recovered(&x);
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&json!({
            "message": x,
            "sampled": s.sampled,
            "all_recovered": all,
            "receivers": rows,
        }))?,
        Format::Csv => {
            let table: Vec<_> = rows
                .iter()
                .map(|r| {
                    let subset = r
                        .subset
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    vec![subset, r.unique.to_string(), r.recovered.to_string()]
                })
                .collect();
            csv_table(&["subset", "unique", "recovered"], &table)?
        }
    };
    emit(ctx.out.as_deref(), &text)?;
    if all {
        Ok(())
    } else {
        Err(Failure::Compute(
            "some receivers did not recover the message".into(),
        ))
    }
}

pub fn oracle(
    ctx: &Ctx,
    [n, k, delta, alpha, q]: [u64; 5],
    multiset: bool,
    cap: u64,
    max_nodes: Option<u64>,
) -> Result<(), Failure> {
    FieldSpec::new(q)?;
    let c = CoveringCodeParams::new(n, k, delta, alpha, q)?;
    let found = match oracle_max_code_within(&c, multiset, cap, max_nodes.unwrap_or(u64::MAX)) {
        Ok(r) => r,
        Err(ConstructError::SearchBudget { nodes, best, bound }) => {
            return Err(Failure::Compute(format!(
                "node budget of {nodes} exhausted; the maximum lies in [{best}, {bound}]"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&json!({
            "size": found.size,
            "nodes": found.nodes,
            "witness": found.witness.to_file(),
        }))?,
        Format::Csv => csv_table(
            &["size", "nodes"],
            &[vec![found.size.to_string(), found.nodes.to_string()]],
        )?,
    };
    emit(ctx.out.as_deref(), &text)
}

pub fn compare(ctx: &Ctx, net: &NetArgs, qs: &[u64], t_max: u64) -> Result<(), Failure> {
    let p = network(net)?;
    if t_max == 0 {
        return Err(Failure::Usage("t-max must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &q in qs {
        FieldSpec::new(q)?;
        for t in 1..=t_max {
            rows.push((q, t, compare_upper_bounds(&p, q, t)));
        }
    }
    if let Some((q, t, _)) = rows.iter().find(|r| !r.2.consistent) {
        return Err(Failure::Internal(format!(
            "comparison predicates disagree with the exact values at q={q}, t={t}"
        )));
    }
    let text = match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let table: Vec<_> = rows
                .iter()
                .map(|(q, t, c)| {
                    let win = c
                        .winner
                        .and_then(|w| c.candidates.iter().find(|r| r.source == w));
                    vec![
                        q.to_string(),
                        t.to_string(),
                        c.compare2.to_string(),
                        c.compare.to_string(),
                        c.compare_alpha2.to_string(),
                        c.winner.map(|w| w.tag().to_string()).unwrap_or_default(),
                        win.and_then(|r| r.value_exact.as_ref())
                            .map(|v| v.to_string())
                            .unwrap_or_default(),
                        win.map(|r| fixed(r.value_log2)).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_table(
                &[
                    "q",
                    "t",
                    "compare2",
                    "compare",
                    "compare_alpha2",
                    "winner",
                    "winner_exact",
                    "winner_log2",
                ],
                &table,
            )?
        }
        Format::Json => {
            let out: Vec<_> = rows
                .iter()
                .map(|(q, t, c)| json!({ "q": q, "t": t, "comparison": c }))
                .collect();
            json(&json!({ "params": p, "rows": out }))?
        }
    };
    emit(ctx.out.as_deref(), &text)
}
