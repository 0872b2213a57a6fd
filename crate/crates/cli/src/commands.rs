use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypercordial::hypertree::{parse_hypertree, write_hypertrees};
use hypercordial::{
    brute_force_label, distinct_subset_sum, distinct_subset_sum_avoiding, enumerate_hypertrees,
    explore_conjecture, label_hypertree, random_hypertree, theorem_applies, CordialError,
    ExploreConfig, ExploreReport, Hypertree, LabelingReport, SearchOutcome, VertexLabeling,
    ZkError,
};
use serde::Serialize;

use crate::{Command, Format, Method, Status};

pub fn run(command: Command, format: Option<Format>) -> Result<Status> {
    let json = format.unwrap_or(Format::Json) == Format::Json;
    match command {
        Command::Label {
            input,
            k,
            method,
            budget,
        } => label(&input, k, method, budget, json),
        Command::Verify { input, labels, k } => verify(&input, labels, k, json),
        Command::Zk { k, l, a, forbid } => zk(k, l, a, &forbid, format == Some(Format::Json)),
        Command::Random { p, m, seed, out } => {
            emit(&random_hypertree(p, m, seed).to_string(), out.as_deref())
        }
        Command::Enumerate { p, m, out } => enumerate(p, m, out.as_deref()),
        Command::Explore {
            p,
            m,
            k,
            budget,
            jobs,
        } => explore(p, m, k, budget, jobs, json),
    }
}

fn read_tree(path: &Path) -> Result<Hypertree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hypertree(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<Status> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(Status::Success)
}

fn to_json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn negative(reason: impl std::fmt::Display) -> Result<Status> {
    eprintln!("{reason}");
    Ok(Status::Negative)
}

fn join(values: &[usize], sep: &str) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn plain_report(r: &LabelingReport) -> String {
    format!(
        "labels {}\nedge_labels {}\nvertex_hist {}\nedge_hist {}\nk_friendly {}\nk_cordial {}\n",
        join(&r.labels, " "),
        join(&r.edge_labels, " "),
        join(&r.vertex_hist, " "),
        join(&r.edge_hist, " "),
        r.k_friendly,
        r.k_cordial,
    )
}

#[derive(Serialize)]
struct LabelOutput {
    #[serde(flatten)]
    report: LabelingReport,
    method: &'static str,
    fallback_fired: bool,
}

fn label(input: &Path, k: usize, method: Method, budget: u64, json: bool) -> Result<Status> {
    let t = read_tree(input)?;
    let theorem = match method {
        Method::Theorem => true,
        Method::Brute => false,
        Method::Auto => theorem_applies(t.p(), k),
    };
    let (labeling, fallback_fired) = if theorem {
        match label_hypertree(&t, k) {
            Ok(c) => (c.labeling, c.fallback_fired),
            Err(e @ CordialError::TheoremNotApplicable { .. }) => bail!("{e}; try --method brute"),
            Err(e) => return negative(e),
        }
    } else {
        match brute_force_label(&t, k, budget) {
            Ok(SearchOutcome::Found(c)) => (c, false),
            Ok(SearchOutcome::NoneExists) => {
                return negative(format!("no {k}-cordial labeling exists"))
            }
            Err(e) => return negative(e),
        }
    };
    let output = LabelOutput {
        report: LabelingReport::new(&t, &labeling)?,
        method: if theorem { "theorem" } else { "brute" },
        fallback_fired,
    };
    if json {
        print!("{}", to_json(&output)?);
    } else {
        print!(
            "method {}\nfallback_fired {}\n{}",
            output.method,
            fallback_fired,
            plain_report(&output.report)
        );
    }
    Ok(Status::Success)
}

fn verify(input: &Path, labels: Vec<usize>, k: usize, json: bool) -> Result<Status> {
    let t = read_tree(input)?;
    let labeling = VertexLabeling::new(k, labels)?;
    let report = LabelingReport::new(&t, &labeling)?;
    if json {
        print!("{}", to_json(&report)?);
    } else {
        print!("{}", plain_report(&report));
    }
    Ok(if report.k_cordial {
        Status::Success
    } else {
        Status::Negative
    })
}

fn zk(k: usize, l: usize, a: usize, forbid: &[usize], json: bool) -> Result<Status> {
    let witness = if forbid.is_empty() {
        distinct_subset_sum(k, l, a)
    } else {
        distinct_subset_sum_avoiding(k, l, a, forbid)
    };
    let witness = match witness {
        Ok(w) => w,
        Err(e @ ZkError::Infeasible { .. }) => return negative(e),
        Err(e) => return Err(e.into()),
    };
    if json {
        print!("{}", to_json(&witness)?);
    } else {
        println!("{}", join(&witness.elements, ","));
    }
    Ok(Status::Success)
}

fn enumerate(p: usize, m: usize, out: Option<&Path>) -> Result<Status> {
    let trees: Vec<Hypertree> = enumerate_hypertrees(p, m).collect();
    let Some(dir) = out else {
        print!("{}", write_hypertrees(&trees));
        return Ok(Status::Success);
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let width = trees.len().to_string().len().max(4);
    for (i, t) in trees.iter().enumerate() {
        let path = dir.join(format!("{i:0width$}.ht"));
        fs::write(&path, t.to_string()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Status::Success)
}

fn plain_explore(report: &ExploreReport) -> String {
    let mut out = String::from("p m k hypertrees cordial non_cordial exceeded theorem_verified\n");
    for c in &report.cells {
        let verified = if c.theorem_applies {
            c.theorem_verified.to_string()
        } else {
            "-".into()
        };
        writeln!(
            out,
            "{} {} {} {} {} {} {} {}",
            c.p, c.m, c.k, c.hypertrees, c.cordial, c.non_cordial, c.exceeded, verified
        )
        .unwrap();
    }
    for c in &report.counterexamples {
        write!(out, "\ncounterexample k={}\n{}", c.k, c.hypertree).unwrap();
    }
    for f in &report.theorem_failures {
        write!(
            out,
            "\nconstruction failed k={}: {}\n{}",
            f.k, f.error, f.hypertree
        )
        .unwrap();
    }
    out
}

fn explore(
    p: RangeInclusive<usize>,
    m: RangeInclusive<usize>,
    k: RangeInclusive<usize>,
    budget: u64,
    jobs: usize,
    json: bool,
) -> Result<Status> {
    let report = explore_conjecture(&ExploreConfig {
        p,
        m,
        k,
        budget,
        jobs,
    })?;
    if json {
        print!("{}", to_json(&report)?);
    } else {
        print!("{}", plain_explore(&report));
    }
    if report.exceeded() > 0 {
        eprintln!("{} instances exceeded the search budget", report.exceeded());
    }
    if report.non_cordial() > 0 || !report.theorem_failures.is_empty() {
        Ok(Status::Negative)
    } else {
        Ok(Status::Success)
    }
}
