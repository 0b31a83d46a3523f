use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use ordsub::class::violations;
use ordsub::format::{
    class_report_to_json, parse_set_function, set_function_to_json, witness_to_json,
    TableForm,
};
use ordsub::gen::{cut_function, enumerate_linear_orders, enumerate_weak_orders, modular_plus_concave, random_function, search_witness_par, Edge};
use ordsub::hierarchy::{levels_to_json, parse_chain};
use ordsub::minimize::{certify_assuming, certify_global_min_par, interval_descent_par, MinimalityCertificate};
use ordsub::value::Rational;
use ordsub::verify::{run_suite, Suite};
use ordsub::{
    argmin, classify_par, constrained_minimize, family_chain, levels, qh_from_chain, check_qh, Codomain,
    ConditionWitness, Error, GroundSet, Hypothesis, Outcome, Predicate, SetFunction, Subset,
};
use serde_json::{json, Value};

use crate::{AssumeArg, Cli, Command, GenerateKind, KindArg, Mode, OutputArgs, EXIT_FAILS, EXIT_OK};

pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub status: u8,
    /// Text printed when `--json` is off.
    pub text: String,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "exit_status": self.status,
        })
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            println!("{}", serde_json::to_string_pretty(&self.to_json()).expect("reports serialize"));
        } else {
            print!("{}", self.text);
        }
    }
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let threads = usize::from(cli.threads);
    match &cli.command {
        Command::Classify { file, all_witnesses, limit } => classify(file, cli.witness, *all_witnesses, *limit, threads),
        Command::Minimize { file, mode, start } => minimize(file, *mode, start, threads),
        Command::Certify { file, point, assume } => certify(file, point, *assume, threads),
        Command::Hierarchy { file, chain } => hierarchy(file, *chain),
        Command::Constrained { phi, f, k } => constrained(phi, f, *k),
        Command::Verify { suite, n } => verify(suite, *n, threads),
        Command::Generate { kind, output } => generate(kind, output, cli.json),
        Command::Search { n, predicate, output } => search(*n, predicate, output, cli.json, threads),
    }
}

fn load(path: &Path) -> Result<SetFunction> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_set_function(&text).with_context(|| format!("{}", path.display()))
}

fn path_json(path: &Path) -> Value {
    json!(path.display().to_string())
}

fn braces(ground: &GroundSet, s: Subset) -> String {
    format!("{{{}}}", ground.format_subset(s))
}

fn witness_line(f: &SetFunction, w: &ConditionWitness) -> String {
    let g = f.ground();
    let c = f.codomain();
    format!(
        "X={} Y={}: f(X)={} f(Y)={} f(X∪Y)={} f(X∩Y)={}",
        braces(g, w.x),
        braces(g, w.y),
        c.display(&w.v_x),
        c.display(&w.v_y),
        c.display(&w.v_union),
        c.display(&w.v_inter)
    )
}

fn classify(file: &Path, witness: bool, all: bool, limit: usize, threads: usize) -> Result<RunReport> {
    let f = load(file)?;
    let report = classify_par(&f, threads);
    let mut results = class_report_to_json(&f, &report, witness);
    let mut text = String::new();
    for (cond, outcome) in report.iter() {
        let flag = match outcome.flag() {
            Some(true) => "true",
            Some(false) => "false",
            None => "n/a",
        };
        let _ = writeln!(text, "{:<20}{flag}", cond.name());
        if witness && !all {
            if let Some(w) = outcome.witness() {
                let _ = writeln!(text, "    {}", witness_line(&f, w));
            }
        }
    }
    if all {
        let mut every = serde_json::Map::new();
        for (cond, outcome) in report.iter() {
            if !matches!(outcome, Outcome::Fails(_)) {
                continue;
            }
            let list = violations(&f, cond, limit);
            for w in &list {
                let _ = writeln!(text, "{:<20}{}", cond.name(), witness_line(&f, w));
            }
            every.insert(cond.name().into(), list.iter().map(|w| witness_to_json(&f, w)).collect());
        }
        results["violations"] = Value::Object(every);
    }
    let inputs = json!({ "file": path_json(file), "witness": witness, "all_witnesses": all, "limit": limit });
    Ok(RunReport { command: "classify", inputs, results, status: EXIT_OK, text })
}

fn certificate_text(f: &SetFunction, c: &MinimalityCertificate) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "point           {}", braces(f.ground(), c.point));
    let _ = writeln!(text, "value           {}", f.codomain().display(&c.value));
    let _ = writeln!(text, "interval-local  {} ({} + {} evaluations)", c.interval_local, c.lower_checked, c.upper_checked);
    let hyp = match c.hypothesis {
        Some(h) if c.evidence == ordsub::minimize::Evidence::Asserted => format!("{h} (assumed)"),
        Some(h) => h.to_string(),
        None => "none".into(),
    };
    let _ = writeln!(text, "hypothesis      {hyp}");
    let _ = writeln!(text, "global          {}", c.verdict.tag());
    text
}

fn minimize(file: &Path, mode: Mode, start: &str, threads: usize) -> Result<RunReport> {
    let f = load(file)?;
    let g = f.ground();
    let (results, text) = match mode {
        Mode::Brute => {
            let d = argmin(&f);
            let mut text = format!("min value  {}\nminimizers", f.codomain().display(&d.min_value));
            for &s in &d.minimizers {
                let _ = write!(text, " {}", braces(g, s));
            }
            text.push('\n');
            (d.to_json(&f), text)
        }
        Mode::Descent => {
            let x = g.parse_subset(start).context("--start")?;
            let trace = interval_descent_par(&f, x, threads)?;
            let mut text = String::from("step  point  value\n");
            for (i, (s, v)) in trace.steps.iter().enumerate() {
                let _ = writeln!(text, "{i:<6}{:<7}{}", braces(g, *s), f.codomain().display(v));
            }
            text.push_str(&certificate_text(&f, &trace.certificate));
            (trace.to_json(&f), text)
        }
    };
    let mode_name = match mode {
        Mode::Brute => "brute",
        Mode::Descent => "descent",
    };
    let mut inputs = json!({ "file": path_json(file), "mode": mode_name });
    if mode == Mode::Descent {
        inputs["start"] = json!(start);
    }
    Ok(RunReport { command: "minimize", inputs, results, status: EXIT_OK, text })
}

fn certify(file: &Path, point: &str, assume: Option<AssumeArg>, threads: usize) -> Result<RunReport> {
    let f = load(file)?;
    let x = f.ground().parse_subset(point).context("--point")?;
    let cert = match assume {
        None => certify_global_min_par(&f, x, threads)?,
        Some(a) => {
            let h = match a {
                AssumeArg::Q1 => Hypothesis::Q1,
                AssumeArg::Q2 => Hypothesis::Q2,
                AssumeArg::Q4Injective => Hypothesis::Q4Injective,
            };
            certify_assuming(&f, x, h)?
        }
    };
    let status = if cert.global() { EXIT_OK } else { EXIT_FAILS };
    let inputs = json!({
        "file": path_json(file),
        "point": point,
        "assume": assume.map(|a| match a {
            AssumeArg::Q1 => "Q1",
            AssumeArg::Q2 => "Q2",
            AssumeArg::Q4Injective => "Q4-with-(*)",
        }),
    });
    Ok(RunReport { command: "certify", inputs, results: cert.to_json(&f), text: certificate_text(&f, &cert), status })
}

fn hierarchy(file: &Path, from_chain: bool) -> Result<RunReport> {
    let inputs = json!({ "file": path_json(file), "chain": from_chain });
    let f = if from_chain {
        let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
        let (ground, chain) = parse_chain(&text).with_context(|| format!("{}", file.display()))?;
        match qh_from_chain(&ground, &chain) {
            Ok(f) => f,
            Err(Error::ChainNotQh(w)) => {
                let f = SetFunction::from_ints(ground, &chain_levels(&chain))?;
                let text = format!("chain does not induce a (Qh) function\nwitness  {}\n", witness_line(&f, &w));
                let results = json!({ "qh": false, "witness": witness_to_json(&f, &w) });
                return Ok(RunReport { command: "hierarchy", inputs, results, status: EXIT_FAILS, text });
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        load(file)?
    };
    let g = f.ground();
    let lv = levels(&f);
    let chain = family_chain(&f);
    let qh = check_qh(&f);
    let mut text = String::new();
    let mu: Vec<String> = lv.mu.iter().map(|v| f.codomain().display(v)).collect();
    let _ = writeln!(text, "p      {}", lv.p());
    let _ = writeln!(text, "mu     {}", mu.join(" < "));
    for (i, fam) in chain.families().iter().enumerate() {
        let members: Vec<String> = fam.iter().map(|&s| braces(g, s)).collect();
        let _ = writeln!(text, "F_{i:<4} {}", members.join(" "));
    }
    let _ = writeln!(text, "Qh     {}", qh.holds());
    let mut results = json!({
        "levels": levels_to_json(&f, &lv),
        "chain": chain.to_json(g),
        "qh": qh.holds(),
    });
    if let Some(w) = qh.witness() {
        let _ = writeln!(text, "    {}", witness_line(&f, w));
        results["witness"] = witness_to_json(&f, w);
    }
    let status = if qh.holds() { EXIT_OK } else { EXIT_FAILS };
    Ok(RunReport { command: "hierarchy", inputs, results, status, text })
}

/// Level index of every subset, for reporting a rejected chain.
fn chain_levels(chain: &ordsub::LevelChain) -> Vec<i64> {
    let len = chain.families().last().map_or(0, Vec::len);
    let mut level = vec![0i64; len];
    for (i, fam) in chain.families().iter().enumerate().rev() {
        for &s in fam {
            level[s.index()] = i as i64;
        }
    }
    level
}

fn constrained(phi_path: &Path, f_path: &Path, k: usize) -> Result<RunReport> {
    let phi = load(phi_path)?;
    let f = load(f_path)?;
    let c = constrained_minimize(&phi, &f, k)?;
    let g = phi.ground();
    let mut text = format!(
        "threshold  {}\nfeasible   {}\nmin value  {}\nminimizers",
        f.codomain().display(&c.threshold),
        c.feasible,
        phi.codomain().display(&c.argmin.min_value)
    );
    for &s in &c.argmin.minimizers {
        let _ = write!(text, " {}", braces(g, s));
    }
    text.push('\n');
    let mut results = c.argmin.to_json(&phi);
    results["threshold"] = ordsub::format::value_to_json(f.codomain(), &c.threshold);
    results["feasible"] = json!(c.feasible);
    let inputs = json!({ "phi": path_json(phi_path), "f": path_json(f_path), "k": k });
    Ok(RunReport { command: "constrained", inputs, results, status: EXIT_OK, text })
}

fn verify(suite: &str, n: usize, threads: usize) -> Result<RunReport> {
    let suite: Suite = suite.parse()?;
    let r = run_suite(suite, n, threads)?;
    let mut text = format!(
        "suite       {}\nn           {}\nscanned     {}\nhypothesis  {}\nviolations  {}\n",
        suite, n, r.scanned, r.hypothesis, r.violations
    );
    if let Some(v) = &r.first_violation {
        let _ = writeln!(text, "first       #{} ranks {:?}: {}", v.index, v.ranks, v.detail);
    }
    let status = if r.passed() { EXIT_OK } else { EXIT_FAILS };
    let inputs = json!({ "suite": suite.name(), "n": n });
    Ok(RunReport { command: "verify", inputs, results: r.to_json(), status, text })
}

fn int_list(s: &str, what: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("{what}: `{t}` is not an integer")))
        .collect()
}

fn parse_edges(s: &str) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (ends, w) = item.split_once(':').unwrap_or((item, "1"));
        let (u, v) = ends
            .split_once('-')
            .with_context(|| format!("edge `{item}` should look like u-v:w"))?;
        let u: usize = u.trim().parse().with_context(|| format!("edge `{item}`: bad endpoint"))?;
        let v: usize = v.trim().parse().with_context(|| format!("edge `{item}`: bad endpoint"))?;
        let weight: Rational = w.trim().parse().map_err(|_| anyhow::anyhow!("edge `{item}`: bad weight `{w}`"))?;
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        edges.push(Edge { u, v, weight });
    }
    Ok(edges)
}

fn generated(kind: &GenerateKind) -> Result<(SetFunction, Value)> {
    Ok(match kind {
        GenerateKind::Const { n, value } => {
            let ground = GroundSet::letters(*n)?;
            let f = SetFunction::from_ints(ground.clone(), &vec![*value; ground.power_set_len()])?;
            (f, json!({ "kind": "const", "n": n, "value": value }))
        }
        GenerateKind::Cut { n, edges } => {
            (cut_function(*n, &parse_edges(edges)?)?, json!({ "kind": "cut", "n": n, "edges": edges }))
        }
        GenerateKind::Concave { n, weights, g } => {
            let f = modular_plus_concave(*n, &int_list(weights, "--weights")?, &int_list(g, "--g")?)?;
            (f, json!({ "kind": "concave", "n": n, "weights": weights, "g": g }))
        }
        GenerateKind::Random { n, distinct, seed, codomain, labels } => {
            let c = match (codomain, labels) {
                (KindArg::Integer, None) => Codomain::Integer,
                (KindArg::Rational, None) => Codomain::Rational,
                (KindArg::Labels, Some(l)) => Codomain::labels(l.split(',').map(str::trim))?,
                (KindArg::Labels, None) => bail!("--codomain labels needs --labels"),
                (_, Some(_)) => bail!("--labels only applies to --codomain labels"),
            };
            let kind = match codomain {
                KindArg::Integer => "integer",
                KindArg::Rational => "rational",
                KindArg::Labels => "labels",
            };
            let f = random_function(*n, &c, *distinct, *seed)?;
            (f, json!({ "kind": "random", "n": n, "distinct": distinct, "seed": seed, "codomain": kind, "labels": labels }))
        }
        GenerateKind::Weak { n, index } => {
            let f = enumerate_weak_orders(*n)?
                .nth(*index)
                .with_context(|| format!("index {index} is past the last weak order on {n} elements"))?;
            (f, json!({ "kind": "weak", "n": n, "index": index }))
        }
        GenerateKind::Linear { n, index } => {
            let f = enumerate_linear_orders(*n)?
                .nth(*index)
                .with_context(|| format!("index {index} is past the last linear order on {n} elements"))?;
            (f, json!({ "kind": "linear", "n": n, "index": index }))
        }
    })
}

/// Writes the function to `--out` or, without `--json`, to stdout.
fn emit_function(f: &SetFunction, output: &OutputArgs, as_json: bool) -> Result<(Value, String)> {
    let form = if output.sparse { TableForm::Sparse } else { TableForm::Dense };
    let body = set_function_to_json(f, form);
    let pretty = serde_json::to_string_pretty(&body)? + "\n";
    let text = match &output.out {
        Some(path) => {
            fs::write(path, &pretty).with_context(|| format!("cannot write {}", path.display()))?;
            format!("wrote {}\n", path.display())
        }
        None if as_json => String::new(),
        None => pretty,
    };
    Ok((body, text))
}

fn output_inputs(inputs: &mut Value, output: &OutputArgs) {
    inputs["out"] = json!(output.out.as_ref().map(|p: &PathBuf| p.display().to_string()));
    inputs["sparse"] = json!(output.sparse);
}

fn generate(kind: &GenerateKind, output: &OutputArgs, as_json: bool) -> Result<RunReport> {
    let (f, mut inputs) = generated(kind)?;
    output_inputs(&mut inputs, output);
    let (function, text) = emit_function(&f, output, as_json)?;
    Ok(RunReport { command: "generate", inputs, results: json!({ "function": function }), status: EXIT_OK, text })
}

fn search(n: usize, predicate: &str, output: &OutputArgs, as_json: bool, threads: usize) -> Result<RunReport> {
    let pred: Predicate = predicate.parse()?;
    let mut inputs = json!({ "n": n, "predicate": predicate });
    output_inputs(&mut inputs, output);
    match search_witness_par(n, &pred, threads)? {
        Some(f) => {
            let (function, text) = emit_function(&f, output, as_json)?;
            let report = classify_par(&f, threads);
            let results = json!({
                "found": true,
                "function": function,
                "classification": class_report_to_json(&f, &report, false),
            });
            Ok(RunReport { command: "search", inputs, results, status: EXIT_OK, text })
        }
        None => Ok(RunReport {
            command: "search",
            inputs,
            results: json!({ "found": false }),
            status: EXIT_FAILS,
            text: format!("no function on {n} elements satisfies {pred}\n"),
        }),
    }
}
