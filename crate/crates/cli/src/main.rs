//! `caysum`: decide subgroup perfect codes in Cayley sum graphs, sweep the
//! symmetric/alternating families, and export graphs.
//!
//! Exit codes: 0 on success (including NO verdicts), 1 when a verification
//! sweep finds the classification violated or a self-check disagrees, 2 on
//! usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use caysum::bitset::BitSet;
use caysum::{
    classify, decide_subgroup_perfect_code, enumerate_subgroups_with_cap, find_coset_obstruction,
    parse_generator_list, usable_classes, verify_family, verify_preliminaries, CayleySumGraph,
    Family, FamilyReport, GroupSpec, PermGroup, PrelimReport, SubgroupRow, SweepOptions, Verdict,
    DEFAULT_ENUMERATION_CAP,
};

const ENUMERATION_CAP_ENV: &str = "CAYSUM_MAX_ORDER";

#[derive(Parser)]
#[command(
    name = "caysum",
    about = "Subgroup perfect codes of finite permutation groups in Cayley sum graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a single JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output document to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Cap on the group order for subgroup enumeration (overrides the
    /// CAYSUM_MAX_ORDER environment variable; default 1000).
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Symmetric,
    Alternating,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Symmetric => Family::Symmetric,
            FamilyArg::Alternating => Family::Alternating,
        }
    }
}

#[derive(Args)]
struct GroupArg {
    /// Ambient group spec: "S:n", "A:n", or "gens:n:<cycles>;<cycles>;..."
    #[arg(long, value_name = "SPEC")]
    ambient: String,
}

#[derive(Subcommand)]
enum Command {
    /// Show order, conjugacy classes, squares, and involutions of a group.
    Info(GroupArg),
    /// Decide whether a subgroup is a perfect code of some Cayley sum graph.
    Decide {
        #[command(flatten)]
        group: GroupArg,
        /// Generators of the subgroup, as ";"-separated cycle expressions.
        #[arg(long, value_name = "CYCLES")]
        subgroup: String,
    },
    /// Full analysis of one subgroup: classification, usable classes,
    /// obstruction, and the decision certificate.
    Analyze {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, value_name = "CYCLES")]
        subgroup: String,
    },
    /// Sweep every subgroup of a family and verify the classification.
    Verify {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Degree range, e.g. "3..5" or "4".
        #[arg(long, value_name = "A..B")]
        n: String,
        #[arg(long)]
        up_to_conjugacy: bool,
        /// Permit degree 7 (runs up to conjugacy; expensive).
        #[arg(long)]
        allow_degree_7: bool,
    },
    /// Run the preliminary generation/structure checks.
    Prelims {
        #[arg(long, default_value_t = 6, value_name = "N")]
        n_max: usize,
    },
    /// List the subgroups of a group.
    Subgroups {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        up_to_conjugacy: bool,
    },
    /// Export a Cayley sum graph in DOT format.
    ExportGraph {
        #[command(flatten)]
        group: GroupArg,
        /// Connection set given element by element (";"-separated cycles).
        #[arg(long, value_name = "CYCLES", conflicts_with = "connection_classes")]
        connection_set: Option<String>,
        /// Connection set given by conjugacy-class representatives, expanded
        /// to their full classes.
        #[arg(long, value_name = "CYCLES")]
        connection_classes: Option<String>,
        /// Subgroup whose vertices are highlighted.
        #[arg(long, value_name = "CYCLES")]
        highlight_subgroup: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn enumeration_cap(cli: &Cli) -> Result<usize> {
    if let Some(cap) = cli.max_order {
        return Ok(cap);
    }
    match std::env::var(ENUMERATION_CAP_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| anyhow!("{ENUMERATION_CAP_ENV} must be an integer, got {text:?}")),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .with_context(|| format!("cannot write {}", path.display()))?;
            file.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                file.write_all(b"\n")?;
            }
        }
        None => println!("{}", text.trim_end_matches('\n')),
    }
    Ok(())
}

fn realize_ambient(spec_text: &str) -> Result<(GroupSpec, PermGroup)> {
    let spec = GroupSpec::parse(spec_text)?;
    let group = spec.realize()?;
    Ok((spec, group))
}

fn realize_subgroup(g: &PermGroup, gens_text: &str) -> Result<PermGroup> {
    let generators = parse_generator_list(gens_text, g.degree())?;
    Ok(g.subgroup(&generators)?)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Info(group) => cmd_info(cli, &group.ambient),
        Command::Decide { group, subgroup } => cmd_decide(cli, &group.ambient, subgroup),
        Command::Analyze { group, subgroup } => cmd_analyze(cli, &group.ambient, subgroup),
        Command::Verify {
            family,
            n,
            up_to_conjugacy,
            allow_degree_7,
        } => cmd_verify(cli, (*family).into(), n, *up_to_conjugacy, *allow_degree_7),
        Command::Prelims { n_max } => cmd_prelims(cli, *n_max),
        Command::Subgroups {
            group,
            up_to_conjugacy,
        } => cmd_subgroups(cli, &group.ambient, *up_to_conjugacy),
        Command::ExportGraph {
            group,
            connection_set,
            connection_classes,
            highlight_subgroup,
        } => cmd_export_graph(
            cli,
            &group.ambient,
            connection_set.as_deref(),
            connection_classes.as_deref(),
            highlight_subgroup.as_deref(),
        ),
    }
}

fn cmd_info(cli: &Cli, ambient: &str) -> Result<u8> {
    let (spec, g) = realize_ambient(ambient)?;
    let classes: Vec<_> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative.to_string(),
                "size": c.size(),
                "is_square_class": c.is_square_class,
            })
        })
        .collect();
    let profile = g.involution_profile();
    let by_k: serde_json::Map<String, serde_json::Value> = profile
        .by_count
        .iter()
        .map(|(k, set)| (k.to_string(), json!(set.len())))
        .collect();
    let doc = json!({
        "spec": spec.to_string(),
        "degree": g.degree(),
        "order": g.order(),
        "class_count": g.conjugacy_classes().len(),
        "classes": classes,
        "square_count": g.squares().len(),
        "involutions": {
            "count": profile.involutions.len(),
            "by_transpositions": by_k,
            "i_min": profile.i_min,
        },
    });
    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&doc)?)?;
    } else {
        let mut out = format!(
            "group {spec}: degree {}, order {}\nconjugacy classes ({}):\n",
            g.degree(),
            g.order(),
            g.conjugacy_classes().len()
        );
        for c in g.conjugacy_classes() {
            out.push_str(&format!(
                "  {:<24} size {:>4}  {}\n",
                c.representative.to_string(),
                c.size(),
                if c.is_square_class { "square" } else { "non-square" }
            ));
        }
        out.push_str(&format!(
            "squares: {} of {} elements\ninvolutions: {} (minimal transposition count: {})\n",
            g.squares().len(),
            g.order(),
            profile.involutions.len(),
            profile
                .i_min
                .map_or("none".to_string(), |k| k.to_string()),
        ));
        emit(cli, &out)?;
    }
    Ok(0)
}

fn cmd_decide(cli: &Cli, ambient: &str, subgroup: &str) -> Result<u8> {
    let (_, g) = realize_ambient(ambient)?;
    let h = realize_subgroup(&g, subgroup)?;
    let certificate = decide_subgroup_perfect_code(&g, &h);

    // Self-check: a YES witness must survive a fresh pass through the graph
    // oracle and the size law.
    if certificate.verdict == Verdict::Yes {
        let s = certificate
            .witness_connection_set(&g)
            .ok_or_else(|| anyhow!("cannot re-materialize witness"))?;
        let graph = CayleySumGraph::build(&g, &s)
            .map_err(|e| anyhow!("witness failed to build: {e}"))?;
        let h_bits = g.member_indices(&h)?;
        if !graph.is_perfect_code(&h_bits) || h_bits.len() * (s.len() + 1) != g.order() {
            eprintln!("self-check failed: witness rejected by the graph oracle");
            return Ok(1);
        }
    }

    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&certificate)?)?;
    } else {
        let mut out = format!(
            "verdict: {}\n",
            match certificate.verdict {
                Verdict::Yes => "yes",
                Verdict::No => "no",
            }
        );
        if let Some(witness) = &certificate.witness {
            if witness.is_empty() {
                out.push_str("witness_S: (empty connection set)\n");
            } else {
                out.push_str(&format!("witness_S: {}\n", witness.join(", ")));
            }
        }
        if let Some(refutation) = &certificate.refutation {
            out.push_str(&format!("refutation: {:?}\n", refutation.mode));
            if let Some(x) = &refutation.x {
                out.push_str(&format!("obstructed coset representative: {x}\n"));
                for e in refutation.evidence.iter().flatten() {
                    out.push_str(&format!(
                        "  z = {:<20} {:?}{}\n",
                        e.z,
                        e.reason,
                        e.w.as_ref().map_or(String::new(), |w| format!(" (w = {w})"))
                    ));
                }
            }
        }
        emit(cli, &out)?;
    }
    Ok(0)
}

fn cmd_analyze(cli: &Cli, ambient: &str, subgroup: &str) -> Result<u8> {
    let (spec, g) = realize_ambient(ambient)?;
    let h = realize_subgroup(&g, subgroup)?;
    let family = match spec {
        GroupSpec::Symmetric(_) => Some(Family::Symmetric),
        GroupSpec::Alternating(_) => Some(Family::Alternating),
        GroupSpec::Generated { .. } => None,
    };
    let case = classify(&g, &h, family);
    let profile = h.involution_profile();
    let usable = usable_classes(&g, &h);
    let obstruction = find_coset_obstruction(&g, &h);
    let certificate = decide_subgroup_perfect_code(&g, &h);

    let doc = json!({
        "ambient": spec.to_string(),
        "ambient_order": g.order(),
        "subgroup_order": h.order(),
        "index": g.order() / h.order(),
        "case": case,
        "involutions": {
            "count": profile.involutions.len(),
            "i_min": profile.i_min,
        },
        "usable_classes": usable.iter().map(|u| json!({
            "representative": u.class.representative.to_string(),
            "size": u.class.size(),
            "cosets_hit": u.coset_hits.len(),
        })).collect::<Vec<_>>(),
        "coset_obstruction": obstruction,
        "certificate": certificate,
        "fingerprint": h.fingerprint(),
    });
    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&doc)?)?;
    } else {
        let mut out = format!(
            "subgroup of {spec}: order {} (index {}), case {:?} (i_min {})\n",
            h.order(),
            g.order() / h.order(),
            case.tag,
            case.i_min.map_or("none".into(), |k| k.to_string()),
        );
        out.push_str(&format!("usable classes: {}\n", usable.len()));
        for u in &usable {
            out.push_str(&format!(
                "  {:<24} size {:>4} hitting {} cosets\n",
                u.class.representative.to_string(),
                u.class.size(),
                u.coset_hits.len()
            ));
        }
        out.push_str(&format!(
            "coset obstruction: {}\n",
            obstruction
                .as_ref()
                .map_or("none".to_string(), |o| format!("at x = {}", o.x)),
        ));
        out.push_str(&format!("verdict: {:?}\n", certificate.verdict));
        if let Some(w) = &certificate.witness {
            out.push_str(&format!("witness_S: [{}]\n", w.join(", ")));
        }
        emit(cli, &out)?;
    }
    Ok(0)
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    if let Some((a, b)) = text.split_once("..") {
        Ok((a.trim().parse()?, b.trim().parse()?))
    } else {
        let n: usize = text.trim().parse()?;
        Ok((n, n))
    }
}

fn cmd_verify(
    cli: &Cli,
    family: Family,
    range: &str,
    up_to_conjugacy: bool,
    allow_degree_7: bool,
) -> Result<u8> {
    let (n_min, n_max) = parse_range(range).context("range must look like \"3..5\" or \"4\"")?;
    let options = SweepOptions {
        up_to_conjugacy,
        allow_degree_7,
        enumeration_cap: enumeration_cap(cli)?,
    };
    let reports = verify_family(family, n_min, n_max, &options)?;
    let all_hold = reports.iter().all(|r| r.summary.theorem_holds);
    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&reports)?)?;
    } else {
        let mut out = String::new();
        for report in &reports {
            out.push_str(&render_family_table(report));
            out.push('\n');
        }
        emit(cli, &out)?;
    }
    Ok(if all_hold { 0 } else { 1 })
}

fn tag_name(tag: caysum::CaseTag) -> String {
    // The serde rename carries the canonical hyphenated name.
    serde_json::to_value(tag)
        .expect("tag serializes")
        .as_str()
        .expect("tag is a string")
        .to_string()
}

/// Renders one family report as a fixed-width table sorted by
/// (order, fingerprint). An empty row list yields just the header.
fn render_family_table(report: &FamilyReport) -> String {
    let mut out = format!(
        "family {} degree {}: {} subgroups{}, {} perfect, classification {}\n",
        report.family,
        report.n,
        report.summary.total,
        if report.up_to_conjugacy {
            " (up to conjugacy)"
        } else {
            ""
        },
        report.summary.perfect_count,
        if report.summary.theorem_holds {
            "HOLDS"
        } else {
            "VIOLATED"
        },
    );
    out.push_str(&format!(
        "{:<6} {:<12} {:<6} {:<8} {:<12} {}\n",
        "ORDER", "CASE", "I_MIN", "VERDICT", "OBSTRUCTION", "DETAIL"
    ));
    let mut rows: Vec<&SubgroupRow> = report.rows.iter().collect();
    rows.sort_by(|a, b| (a.order, &a.fingerprint).cmp(&(b.order, &b.fingerprint)));
    for row in rows {
        let detail = match row.verdict {
            Verdict::Yes => {
                let witness = row.witness_or_refutation.witness.as_ref().unwrap();
                if witness.is_empty() {
                    "witness: empty connection set".to_string()
                } else {
                    format!("witness: {}", witness.join(", "))
                }
            }
            Verdict::No => row
                .witness_or_refutation
                .refutation
                .as_ref()
                .and_then(|r| r.x.as_ref())
                .map_or("exhausted cover search".to_string(), |x| {
                    format!("obstructed coset: {x}")
                }),
        };
        out.push_str(&format!(
            "{:<6} {:<12} {:<6} {:<8} {:<12} {}\n",
            row.order,
            tag_name(row.case.tag),
            row.case.i_min.map_or("-".to_string(), |k| k.to_string()),
            format!("{:?}", row.verdict).to_lowercase(),
            if row.coset_obstruction_found { "yes" } else { "no" },
            detail,
        ));
    }
    out
}

fn cmd_prelims(cli: &Cli, n_max: usize) -> Result<u8> {
    let report = verify_preliminaries(n_max)?;
    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&report)?)?;
    } else {
        emit(cli, &render_prelim_table(&report))?;
    }
    Ok(if report.all_passed { 0 } else { 1 })
}

fn render_prelim_table(report: &PrelimReport) -> String {
    let mut out = format!(
        "preliminary checks up to degree {}: {}\n",
        report.n_max,
        if report.all_passed { "ALL PASS" } else { "FAILURES" }
    );
    out.push_str(&format!("{:<55} {:<3} {:<6} DETAIL\n", "CHECK", "N", "STATUS"));
    for c in &report.checks {
        out.push_str(&format!(
            "{:<55} {:<3} {:<6} {}{}\n",
            c.check,
            c.n,
            if c.passed { "pass" } else { "FAIL" },
            c.detail,
            c.counterexample
                .as_ref()
                .map_or(String::new(), |ce| format!(" [counterexample: {ce}]")),
        ));
    }
    out
}

fn cmd_subgroups(cli: &Cli, ambient: &str, up_to_conjugacy: bool) -> Result<u8> {
    let (spec, g) = realize_ambient(ambient)?;
    let subgroups = enumerate_subgroups_with_cap(&g, up_to_conjugacy, enumeration_cap(cli)?)?;
    let mut entries: Vec<(usize, String, Vec<String>)> = subgroups
        .iter()
        .map(|h| {
            (
                h.order(),
                h.fingerprint(),
                h.generators().iter().map(|p| p.to_string()).collect(),
            )
        })
        .collect();
    entries.sort();
    if cli.json {
        let doc = json!({
            "ambient": spec.to_string(),
            "up_to_conjugacy": up_to_conjugacy,
            "count": entries.len(),
            "subgroups": entries.iter().map(|(order, fingerprint, gens)| json!({
                "order": order,
                "generators": gens,
                "fingerprint": fingerprint,
            })).collect::<Vec<_>>(),
        });
        emit(cli, &serde_json::to_string_pretty(&doc)?)?;
    } else {
        let mut out = format!(
            "{} subgroups of {spec}{}\n",
            entries.len(),
            if up_to_conjugacy { " (up to conjugacy)" } else { "" }
        );
        for (order, _, gens) in &entries {
            let gens = if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join("; ")
            };
            out.push_str(&format!("order {order:>4}  generated by {gens}\n"));
        }
        emit(cli, &out)?;
    }
    Ok(0)
}

fn cmd_export_graph(
    cli: &Cli,
    ambient: &str,
    connection_set: Option<&str>,
    connection_classes: Option<&str>,
    highlight_subgroup: Option<&str>,
) -> Result<u8> {
    let (_, g) = realize_ambient(ambient)?;
    let mut s = BitSet::new(g.order());
    match (connection_set, connection_classes) {
        (Some(text), None) => {
            for p in parse_generator_list(text, g.degree())? {
                let idx = g
                    .index_of(&p)
                    .ok_or_else(|| anyhow!("{p} is not a member of the ambient group"))?;
                s.insert(idx);
            }
        }
        (None, Some(text)) => {
            for p in parse_generator_list(text, g.degree())? {
                s.union_with(&g.class_of(&p)?.members);
            }
        }
        (None, None) => {} // empty connection set: edgeless graph
        (Some(_), Some(_)) => bail!("give either --connection-set or --connection-classes"),
    }
    let graph = CayleySumGraph::build(&g, &s).map_err(|e| anyhow!("{e}"))?;
    let highlight = match highlight_subgroup {
        Some(text) => g.member_indices(&realize_subgroup(&g, text)?)?,
        None => BitSet::new(g.order()),
    };
    let dot = graph.export_dot(&highlight);
    if cli.json {
        emit(cli, &serde_json::to_string_pretty(&json!({ "dot": dot }))?)?;
    } else {
        emit(cli, &dot)?;
    }
    Ok(0)
}
