use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use evasion_core::graphcat::{
    check_relations, Catalog, Graph, InclusionPoset, RelationCheck, LISTED_CIRCULANT_INCLUSIONS,
    LISTED_PETERSEN_RELATIONS,
};
use evasion_core::indsolve::{
    case_trace, label_of, rank_filter, stated_cases, table_column, CaseOutcome, NamedForm,
    SolutionTable, TABLE,
};
use evasion_core::lemmas::{
    bundled_specs, five_vertex_example, parse_specs, run_all, select, FormSource, HomReport,
    LemmaReport, LemmaSpec, SuiteReport,
};
use evasion_core::oliver::{chain_forms, search_chains, ChainRecord, OliverChain, Theorem};
use evasion_core::perm::PermGroup;
use evasion_core::LinearForm;
use serde_json::json;

use crate::{Format, Status};

/// Expected class counts of the catalogs the rest of the pipeline uses.
fn expected_class_count(n: usize) -> Option<usize> {
    match n {
        5 => Some(3),
        10 => Some(22),
        _ => None,
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Mismatch
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn catalog(n: usize, format: Format) -> Result<Status> {
    let cat = Catalog::build(n)?;
    let summaries = cat.summaries();
    let expected = expected_class_count(n);
    let ok = expected.is_none_or(|k| k == cat.len());
    match format {
        Format::Json => print_json(&json!({
            "n": n,
            "count": cat.len(),
            "expected": expected,
            "classes": summaries,
        }))?,
        Format::Text => {
            for s in &summaries {
                println!(
                    "{:<6} edges {:>2}  degree {}  members {}",
                    s.id,
                    s.edges,
                    s.degree,
                    s.members.join(" ")
                );
            }
            match expected {
                Some(k) => println!("{} classes (expected {k})", cat.len()),
                None => println!("{} classes", cat.len()),
            }
        }
    }
    Ok(status(ok))
}

fn witness_text(w: &Option<Vec<usize>>) -> String {
    match w {
        Some(w) => w
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(" "),
        None => "none".into(),
    }
}

pub fn poset(dot: bool, format: Format) -> Result<Status> {
    let cat = Catalog::build(10)?;
    let poset = InclusionPoset::build(&cat);
    if dot {
        print!("{}", poset.to_dot());
        return Ok(Status::Ok);
    }
    let checks: Vec<RelationCheck> = check_relations(&cat, &LISTED_CIRCULANT_INCLUSIONS)
        .into_iter()
        .chain(check_relations(&cat, &LISTED_PETERSEN_RELATIONS))
        .collect();
    let ok = checks.iter().all(|c| c.holds);
    match format {
        Format::Json => print_json(&json!({
            "poset": poset.summary(),
            "listed": checks,
        }))?,
        Format::Text => {
            let summary = poset.summary();
            println!(
                "{} strict relations, {} Hasse edges",
                summary.relations.len(),
                summary.hasse.len()
            );
            for (a, b) in &summary.hasse {
                println!("  {a} < {b}");
            }
            println!("listed relations:");
            for c in &checks {
                println!(
                    "{} {} < {}  witness {}",
                    pass(c.holds),
                    c.smaller,
                    c.larger,
                    witness_text(&c.witness)
                );
            }
            println!(
                "{}/{} listed relations hold",
                checks.iter().filter(|c| c.holds).count(),
                checks.len()
            );
        }
    }
    Ok(status(ok))
}

fn load_specs(path: Option<&Path>) -> Result<Vec<LemmaSpec>> {
    match path {
        None => Ok(bundled_specs()),
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_specs(&text)?)
        }
    }
}

fn run_suite(path: Option<&Path>, cat: &Catalog, poset: &InclusionPoset) -> Result<SuiteReport> {
    Ok(run_all(&load_specs(path)?, cat, poset)?)
}

fn hom_text(out: &mut String, label: &str, h: &HomReport) {
    let _ = writeln!(
        out,
        "  {label}: onto Z{} {}  kernel order {}",
        h.modulus,
        if h.surjective { "yes" } else { "NO" },
        h.kernel_order
    );
    if let Some(k) = h.expected_kernel_order {
        if k != h.kernel_order {
            let _ = writeln!(out, "    stated kernel order {k} differs");
        }
    }
    if !h.kernel_generators.is_empty() {
        let _ = writeln!(
            out,
            "    kernel generators {}",
            h.kernel_generators.join(", ")
        );
    }
}

fn lemma_text(r: &LemmaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.name, pass(r.passed()));
    let _ = writeln!(out, "  |Γ| = {}", r.gamma_order);
    hom_text(&mut out, "φ", &r.hom);
    if let Some(h) = &r.second {
        hom_text(&mut out, "φ′", h);
    }
    let q: Vec<String> = r.quotient_orders.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "  quotient orders {}", q.join(", "));
    match &r.chain {
        Ok(c) => {
            let _ = writeln!(out, "  chain {c}");
        }
        Err(e) => {
            let _ = writeln!(out, "  chain FAILED: {e}");
        }
    }
    let _ = writeln!(
        out,
        "  orbits {} ({})",
        r.orbit_labels.join(", "),
        if r.orbits_match {
            "as stated".to_string()
        } else {
            format!("stated {}", r.expected_orbit_labels.join(", "))
        }
    );
    let _ = writeln!(out, "  raw {}", r.raw);
    for n in &r.raw_notes {
        let _ = writeln!(out, "    note: {n}");
    }
    if let Some(f) = &r.form {
        let _ = writeln!(out, "  form {f}");
    }
    if let Some(f) = &r.reduced {
        if Some(f) != r.form.as_ref() {
            let _ = writeln!(out, "  with earlier facts {f}");
        }
    }
    let _ = writeln!(
        out,
        "  stated {} ({})",
        r.expected,
        if r.form_matches { "matches" } else { "DIFFERS" }
    );
    if !r.facts.is_empty() {
        let facts: Vec<String> = r.facts.iter().map(|(v, x)| format!("i{v}={x}")).collect();
        let _ = writeln!(out, "  forces {}", facts.join(", "));
    }
    for w in &r.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
    }
    out
}

pub fn lemma(name: &str, lemmas: Option<&Path>, format: Format) -> Result<Status> {
    let cat = Catalog::build(10)?;
    let poset = InclusionPoset::build(&cat);
    let specs = load_specs(lemmas)?;
    let chosen: Vec<LemmaSpec> = select(&specs, name)?.into_iter().cloned().collect();
    let suite = run_all(&chosen, &cat, &poset)?;
    // Congruence lemmas pulled in for their facts are run but not reported.
    let shown: Vec<&LemmaReport> = if name.eq_ignore_ascii_case("all") {
        suite.lemmas.iter().collect()
    } else {
        suite
            .lemmas
            .iter()
            .filter(|l| l.name.eq_ignore_ascii_case(name))
            .collect()
    };
    let passed = shown.iter().filter(|l| l.passed()).count();
    match format {
        Format::Json => print_json(&json!({
            "lemmas": shown,
            "facts": suite.facts,
            "passed": passed,
            "total": shown.len(),
        }))?,
        Format::Text => {
            for r in &shown {
                print!("{}", lemma_text(r));
            }
            println!("{passed}/{} lemmas verified", shown.len());
        }
    }
    Ok(status(passed == shown.len()))
}

fn read_chain_library(path: &Path) -> Result<Vec<OliverChain>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut chains = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: ChainRecord = serde_json::from_str(line)
            .with_context(|| format!("{}:{}: bad chain record", path.display(), i + 1))?;
        let chain = rec
            .to_chain()
            .with_context(|| format!("{}:{}: chain does not verify", path.display(), i + 1))?;
        chains.push(chain);
    }
    Ok(chains)
}

pub struct SolveArgs<'a> {
    pub extras: &'a [String],
    pub chains: Option<&'a Path>,
    pub n: usize,
    pub expect: bool,
    pub source: FormSource,
    pub lemmas: Option<&'a Path>,
    pub format: Format,
}

fn solve_five(format: Format) -> Result<Status> {
    let r = five_vertex_example()?;
    match format {
        Format::Json => print_json(&r)?,
        Format::Text => {
            println!("classes {}", r.classes.join(", "));
            println!("chain {}", r.chain);
            println!("orbits {}", r.orbit_labels.join(", "));
            println!("form {}", r.form);
            if r.solutions.is_empty() {
                println!("no solutions: conjecture holds for 5 vertices");
            } else {
                println!("{} solutions", r.solutions.len());
            }
        }
    }
    Ok(status(r.solutions.is_empty()))
}

pub fn solve(args: SolveArgs<'_>) -> Result<Status> {
    match args.n {
        5 => return solve_five(args.format),
        10 => {}
        n => bail!("solve supports n = 5 or n = 10, got {n}"),
    }
    let cat = Catalog::build(10)?;
    let poset = InclusionPoset::build(&cat);
    let suite = run_suite(args.lemmas, &cat, &poset)?;
    let mut added: Vec<NamedForm> = Vec::new();
    for e in args.extras {
        let f: LinearForm = e
            .parse()
            .with_context(|| format!("extra constraint {e:?}"))?;
        added.push(NamedForm::new("extra", f));
    }
    if let Some(p) = args.chains {
        let cf = chain_forms(&read_chain_library(p)?, &cat);
        for (i, f) in rank_filter(&cf.forms).kept.into_iter().enumerate() {
            added.push(NamedForm::new(format!("chain{}", i + 1), f));
        }
    }
    let sys = suite
        .system(args.source, &cat, &poset)?
        .with(added.iter().cloned())?;
    let sols = sys.enumerate_solutions();
    let table = SolutionTable::new(sys.variables(), &sols);

    // The table columns that survive the added constraints.
    let expected: Vec<&str> = TABLE
        .iter()
        .map(|(l, _)| *l)
        .filter(|l| {
            let a = table_column(l).expect("table labels resolve");
            added.iter().all(|f| f.form.holds(&a.values))
        })
        .collect();
    let mut got: Vec<Option<&str>> = sols.iter().map(label_of).collect();
    got.sort_unstable();
    let mut want: Vec<Option<&str>> = expected.iter().map(|l| Some(*l)).collect();
    want.sort_unstable();
    let matches = got == want;

    let source = match args.source {
        FormSource::Printed => "printed",
        FormSource::Derived => "derived",
    };
    match args.format {
        Format::Json => print_json(&json!({
            "source": source,
            "forms": sys.forms(),
            "solutions": table,
            "count": sols.len(),
            "expected": expected,
            "matches_expected": matches,
        }))?,
        Format::Text => {
            println!("system: {} forms ({source})", sys.forms().len());
            for f in sys.forms() {
                println!("  {:<6} {}", f.name, f.form);
            }
            if sols.is_empty() {
                println!("no solutions");
            } else {
                print!("{table}");
            }
            let unlabeled = got.iter().filter(|l| l.is_none()).count();
            println!("{} solutions, {} outside the table", sols.len(), unlabeled);
            if args.expect {
                println!(
                    "expected columns: {}  {}",
                    if expected.is_empty() {
                        "none".to_string()
                    } else {
                        expected.join(" ")
                    },
                    if matches { "match" } else { "MISMATCH" }
                );
            }
        }
    }
    Ok(status(!args.expect || matches))
}

fn outcome_text(o: &CaseOutcome) -> String {
    match o {
        CaseOutcome::Infeasible => "infeasible".into(),
        CaseOutcome::Columns(c) => c.join(" "),
    }
}

fn labels_text(labels: &[Option<&str>]) -> String {
    if labels.is_empty() {
        return "infeasible".into();
    }
    labels
        .iter()
        .map(|l| l.unwrap_or("?"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cases(source: FormSource, lemmas: Option<&Path>, format: Format) -> Result<Status> {
    let cat = Catalog::build(10)?;
    let poset = InclusionPoset::build(&cat);
    let suite = run_suite(lemmas, &cat, &poset)?;
    let sys = suite.system(source, &cat, &poset)?;
    let results = case_trace(&sys, &suite.facts, &stated_cases());
    let ok = results.iter().all(|r| r.outcome_confirmed);
    match format {
        Format::Json => print_json(&results)?,
        Format::Text => {
            for r in &results {
                println!(
                    "{} {}  got {}  stated {}",
                    r.name,
                    pass(r.outcome_confirmed),
                    labels_text(&r.labels),
                    outcome_text(&r.expected)
                );
                for c in &r.checks {
                    let mark = if c.confirmed { "ok" } else { "unconfirmed" };
                    match &c.detail {
                        Some(d) => println!("  [{mark}] {}: {d}", c.description),
                        None => println!("  [{mark}] {}", c.description),
                    }
                }
            }
            let unconfirmed: usize = results.iter().map(|r| r.unconfirmed_steps().count()).sum();
            println!(
                "{}/{} case outcomes confirmed, {unconfirmed} unconfirmed steps",
                results.iter().filter(|r| r.outcome_confirmed).count(),
                results.len()
            );
        }
    }
    Ok(status(ok))
}

pub fn search(
    ambient: &[String],
    degree: usize,
    max_order: Option<usize>,
    budget: usize,
    out: Option<&Path>,
    format: Format,
) -> Result<Status> {
    let group = PermGroup::from_cycle_strings(degree, ambient)?;
    let max_order = max_order.unwrap_or(group.order());
    let res = search_chains(&group, max_order, budget)?;
    if let Some(p) = out {
        let mut f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
        for c in &res.chains {
            writeln!(f, "{}", serde_json::to_string(&c.record())?)?;
        }
    }
    let cat = Catalog::build(degree)?;
    let cf = chain_forms(&res.chains, &cat);
    let rank = rank_filter(&cf.forms);
    let thm2 = res
        .chains
        .iter()
        .filter(|c| c.theorem == Theorem::Two)
        .count();
    match format {
        Format::Json => print_json(&json!({
            "ambient_order": group.order(),
            "candidates": res.candidates,
            "examined": res.examined,
            "truncated": res.truncated,
            "chains": res.chains.len(),
            "theorem2_chains": thm2,
            "rejected": cf.rejected,
            "degenerate": cf.degenerate,
            "forms": rank.kept,
            "discarded": rank.discarded,
        }))?,
        Format::Text => {
            println!("ambient order {}", group.order());
            println!("candidate subgroups {}", res.candidates);
            println!("tuples examined {}", res.examined);
            println!(
                "chains {} ({} first kind, {thm2} second kind)",
                res.chains.len(),
                res.chains.len() - thm2
            );
            if res.truncated {
                println!("truncated: budget exhausted");
            }
            println!(
                "chains without usable form: {} unidentifiable, {} degenerate",
                cf.rejected, cf.degenerate
            );
            println!("forms {}", rank.kept.len());
            for f in &rank.kept {
                println!("  {f}");
            }
            println!("discarded as dependent {}", rank.discarded.len());
            if let Some(p) = out {
                println!("library written to {}", p.display());
            }
        }
    }
    Ok(if res.truncated {
        Status::Truncated
    } else {
        Status::Ok
    })
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let trimmed = text.trim();
    // A bare 45-character edge string stands for a ten-vertex graph.
    if !trimmed.contains(['\n', '=', ' ']) {
        return Ok(Graph::from_bit_string(10, trimmed)?);
    }
    Ok(Graph::parse_edge_list(&text)?)
}

pub fn identify(path: &Path, format: Format) -> Result<Status> {
    let g = read_graph(path)?;
    let cat = Catalog::build(g.n())?;
    let class = cat.identify(&g);
    let complement = class.and_then(|c| cat.complement_class(c));
    match format {
        Format::Json => print_json(&json!({
            "n": g.n(),
            "edges": g.edge_count(),
            "bits": g.to_bit_string(),
            "class": class,
            "complement_class": complement,
        }))?,
        Format::Text => match class {
            Some(c) => {
                print!("class {c}");
                if let Some(k) = complement {
                    print!("  complement {k}");
                }
                println!();
            }
            None => println!("not vertex-transitive"),
        },
    }
    Ok(status(class.is_some()))
}
