use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nonf::analysis::{
    analyze, connectivity_verdict, lemma_harness_multi, module_decomposition, verify_d_class_proposition,
    verify_icyclic_formula,
};
use nonf::class::{f2_member, two_recognizability_report, ClassSpec};
use nonf::corpus::{self, builtin_corpus, read_group_file, write_atomic, write_group_file, FamilySpec};
use nonf::graph::{build_nonf_graph, Mode};
use nonf::{FiniteGroup, GroupError};

#[derive(Parser)]
#[command(name = "nonf", version, about = "Non-F graphs of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph, isolated set, components and verdicts for one group.
    Analyze {
        /// A group file, or `family:<spec>` such as `family:dihedral(6)`.
        #[arg(long)]
        group: String,
        /// Class spec, e.g. `cyclic`, `twoprimes`, `forbid:B,C`.
        #[arg(long = "class")]
        class: String,
        #[arg(long, default_value = "orbit")]
        mode: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite over the built-in corpus.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        max_order: usize,
    },
    /// Write a built-in family to a group file.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Built-in corpus listings.
    Corpus {
        #[command(subcommand)]
        what: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Family syntax and the standard corpus with orders.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Propositions,
    Lemmas,
    Examples,
}

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<GroupError>() {
        Some(GroupError::CapExceeded { .. } | GroupError::BudgetExceeded(_)) => EXIT_CAP,
        Some(GroupError::ShapeMismatch { .. } | GroupError::InvariantViolated(_)) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn load_group(arg: &str) -> Result<FiniteGroup> {
    if let Some(spec) = arg.strip_prefix("family:") {
        return Ok(FamilySpec::parse(spec)?.construct()?);
    }
    let path = PathBuf::from(arg);
    read_group_file(&path).with_context(|| format!("reading group file {}", path.display()))
}

/// Prints one check line; returns whether it passed.
fn check(name: &str, ok: bool, detail: impl std::fmt::Display) -> bool {
    println!("{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
    if !ok {
        println!("failure={name}");
    }
    ok
}

fn named_corpus(max_order: usize) -> Result<Vec<(String, FiniteGroup)>> {
    Ok(builtin_corpus(max_order)?
        .into_iter()
        .map(|e| (e.name, e.group))
        .collect())
}

fn suite_propositions(max_order: usize) -> Result<bool> {
    let groups = named_corpus(max_order)?;
    let mut all = true;
    let bad: Vec<&str> = groups
        .iter()
        .filter(|(_, g)| !verify_icyclic_formula(g).unwrap_or(false))
        .map(|(n, _)| n.as_str())
        .collect();
    all &= check("icyclic-formula", bad.is_empty(), format!("{} groups, failing {bad:?}", groups.len()));
    for s in ["cyclic", "oneprime", "twoprimes"] {
        let spec = ClassSpec::parse(s)?;
        let mut bad = Vec::new();
        for (n, g) in &groups {
            if !connectivity_verdict(g, &spec)?.1.is_connected() {
                bad.push(n.as_str());
            }
        }
        all &= check(&format!("{s}-connected"), bad.is_empty(), format!("disconnected {bad:?}"));
    }
    let d = ClassSpec::parse("twoprimes")?;
    let rec = two_recognizability_report(&d, &groups)?;
    all &= check("twoprimes-2-recognizable", rec.witnesses.is_empty(), format!("witnesses {:?}", rec.witnesses));
    let prop = verify_d_class_proposition(&groups)?;
    all &= check("twoprimes-proposition", prop.passes(), format!("failing {:?}", prop.failures()));
    Ok(all)
}

fn suite_lemmas(max_order: usize) -> Result<bool> {
    let groups = named_corpus(max_order)?;
    let specs: Vec<ClassSpec> = ["cyclic", "oneprime", "twoprimes", "abelian", "nilpotent", "soluble"]
        .iter()
        .map(|s| ClassSpec::parse(s))
        .collect::<nonf::Result<_>>()?;
    let mut all = true;
    for r in lemma_harness_multi(&groups, &specs)? {
        for o in &r.outcomes {
            all &= check(
                &format!("{}/{}", r.spec, o.name),
                o.passed(),
                format!("{} instances, {} skipped", o.instances, o.skipped),
            );
            for f in &o.failures {
                println!("failure={}/{}: {f}", r.spec, o.name);
            }
        }
    }
    Ok(all)
}

/// The example constructions that fit under `max_order`.
fn suite_examples(max_order: usize) -> Result<bool> {
    let mut all = true;
    let s8 = corpus::sylow2_sym8()?;
    if s8.order() <= max_order {
        let m = ClassSpec::parse("metabelian")?;
        let member = m.is_member(&s8)?;
        let f2 = f2_member(&m, &s8)?;
        all &= check("sylow2-sym8-metabelian", !member && f2, format!("member {member}, F_2 member {f2}"));
    }
    let q = corpus::example2_quotient()?;
    if q.order() <= max_order {
        let dec = module_decomposition(&q)?;
        all &= check(
            "example2-quotient-shape",
            dec.t == 2 && dec.endo_dim == 1 && dec.w_family.len() == 5,
            format!("t = {}, endo_dim = {}, |W| = {}", dec.t, dec.endo_dim, dec.w_family.len()),
        );
    }
    let x = corpus::example1_inner(3)?;
    if x.order() <= max_order {
        let dec = module_decomposition(&x)?;
        all &= check(
            "example1-inner-shape",
            dec.t == 3 && dec.endo_dim == 2 && dec.w_family.len() == 13,
            format!("t = {}, endo_dim = {}, |W| = {}", dec.t, dec.endo_dim, dec.w_family.len()),
        );
    }
    if 75_264 <= max_order {
        let g = corpus::example2()?;
        let spec = ClassSpec::parse_with("forbid:B,C", Some(&g))?;
        let graph = build_nonf_graph(&g, &spec, Mode::OrbitReduced)?;
        let p = &g.provenance().subgroups;
        let mut comps = graph.components();
        comps.sort();
        let mut expected = vec![p["Omega_B"].clone(), p["Omega_C"].clone()];
        expected.sort();
        all &= check(
            "example2-graph",
            graph.isolated == p["I_expected"] && comps == expected,
            format!("|I| = {}, {} components", graph.isolated.len(), graph.component_count),
        );
    }
    Ok(all)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { group, class, mode, out } => {
            let g = load_group(&group)?;
            let spec = ClassSpec::parse_with(&class, Some(&g))?;
            let mode = Mode::parse(&mode)?;
            let report = analyze(&g, &spec, mode)?;
            let text = report.to_text(&g);
            match out {
                Some(path) => write_atomic(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(if report.passed() { 0 } else { EXIT_FAILED })
        }
        Command::Verify { suite, max_order } => {
            let ok = match suite {
                Suite::Propositions => suite_propositions(max_order)?,
                Suite::Lemmas => suite_lemmas(max_order)?,
                Suite::Examples => suite_examples(max_order)?,
            };
            Ok(if ok { 0 } else { EXIT_FAILED })
        }
        Command::Construct { family, out } => {
            let g = FamilySpec::parse(&family)?.construct()?;
            write_group_file(&out, &g)?;
            println!("wrote {} (order {}) to {}", family, g.order(), out.display());
            Ok(0)
        }
        Command::Corpus { what: CorpusCmd::List } => {
            println!("families:");
            for f in corpus::FAMILIES {
                println!("  {f}");
            }
            println!("corpus:");
            for name in corpus::CORPUS {
                println!("  {name:<48} {}", FamilySpec::parse(name)?.expected_order());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
