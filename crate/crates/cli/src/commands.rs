use std::fs;
use std::path::{Path, PathBuf};

use nbkc::compose::{embed_in_nbkc, join_nbc, product_nbc, vertex_addition, ProductKind};
use nbkc::dot::export_dot;
use nbkc::families::{
    circulant_arith_nbc, circulant_residue_nbc, complete_graph_nbc, complete_multipartite_nbc, cycle_nbc, hamming_nbc,
    hypercube_nbc, CirculantSpec, HammingSpec,
};
use nbkc::io::{read_coloring, read_graph, read_roles, write_coloring, write_graph, write_roles};
use nbkc::reduction::{decode, reduce_ess_to_nbc, EssInstance, ReductionInstance, Role};
use nbkc::solver::{solve, to_cnf, SolveConfig, SolveMode, SolveStatus};
use nbkc::unions::{cycle_union_nbc, union_congruence, union_nbc_independent, union_over_set, UnionSpec};
use nbkc::verify::{check_necessary, is_closed_nbkc, is_nbkc, ColoredGraph};
use nbkc::{Coloring, Error, Graph, Rule, VertexSet};

use super::{Command, Family, Format, Kind, Mode};

pub enum CliError {
    Refused { rule: String, reasons: Vec<String> },
    Unsat,
    Budget,
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn report(&self) {
        match self {
            CliError::Refused { rule, reasons } => {
                println!("REFUSED {rule}");
                for r in reasons {
                    eprintln!("  {r}");
                }
            }
            CliError::Unsat => println!("UNSAT"),
            CliError::Budget => println!("BUDGET_EXCEEDED"),
            CliError::Usage(msg) => eprintln!("error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Refused(r) => CliError::Refused { rule: r.rule.to_string(), reasons: r.reasons },
            Error::NotBalanced => CliError::Refused { rule: Rule::Unbalanced.to_string(), reasons: Vec::new() },
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: nbkc::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => usage(format!("{}:{line}:{column}: {message}", path.display())),
        other => usage(format!("{}: {other}", path.display())),
    })
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    with_path(path, read_graph(&read_text(path)?))
}

fn load_coloring(path: &Path, g: &Graph) -> CliResult<Coloring> {
    let c = with_path(path, read_coloring(&read_text(path)?))?;
    if c.len() != g.order() {
        return Err(usage(format!("{}: colors {} vertices, graph has {}", path.display(), c.len(), g.order())));
    }
    Ok(c)
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_pair(prefix: &str, cg: &ColoredGraph) -> CliResult {
    let (gp, cp) = (format!("{prefix}.graph"), format!("{prefix}.coloring"));
    write(Path::new(&gp), &write_graph(&cg.graph))?;
    write(Path::new(&cp), &write_coloring(&cg.coloring))?;
    println!("wrote {gp} ({} vertices, {} edges) and {cp} (k = {})", cg.graph.order(), cg.graph.size(), cg.coloring.k());
    Ok(())
}

fn list(text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| usage(format!("`{s}` is not a nonnegative integer in list `{text}`"))))
        .collect()
}

fn json<T: serde::Serialize>(value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Construct { family, k, output } => construct(family, k, output),
        Command::Verify { graph, coloring, closed, format } => {
            let g = load_graph(&graph)?;
            let c = load_coloring(&coloring, &g)?;
            let report = if closed { is_closed_nbkc(&g, &c)? } else { is_nbkc(&g, &c)? };
            match format {
                Format::Json => json(&report)?,
                Format::Text => {
                    println!("class sizes {:?}", report.class_sizes);
                    for v in report.violations.iter().take(10) {
                        println!("vertex {} sees {:?}", v.vertex, v.counts);
                    }
                    if report.violations.len() > 10 {
                        println!("... {} more violations", report.violations.len() - 10);
                    }
                }
            }
            if !report.balanced {
                return Err(CliError::Refused { rule: Rule::Unbalanced.to_string(), reasons: Vec::new() });
            }
            if format == Format::Text {
                println!("BALANCED");
            }
            Ok(())
        }
        Command::Analyze { graph, k, format } => {
            let g = load_graph(&graph)?;
            let report = check_necessary(&g, k)?;
            match format {
                Format::Json => json(&report)?,
                Format::Text => {
                    println!("degrees divisible by {k}: {}", report.degree_ok);
                    if let Some(v) = report.first_bad_vertex {
                        println!("first bad vertex {v} (degree {})", g.degree(v));
                    }
                    match report.order_ok {
                        Some(ok) => println!("order {} >= {}: {ok}", g.order(), 2 * k),
                        None => println!("order bound not applicable (isolated vertex)"),
                    }
                    if let Some(r) = report.regularity {
                        println!("{}-regular: |V| mod {k} = {}, |E| mod {} = {}", r.degree, r.order_residue, k * k, r.size_residue);
                    }
                }
            }
            if let Some(rule) = report.failed_rule() {
                return Err(CliError::Refused { rule: rule.to_string(), reasons: Vec::new() });
            }
            if format == Format::Text {
                println!("POSSIBLY_COLORABLE");
            }
            Ok(())
        }
        Command::Solve { graph, k, mode, budget, jobs, fixed, output } => {
            let g = load_graph(&graph)?;
            let fixed = fixed
                .iter()
                .map(|f| {
                    let (v, c) = f.split_once('=').ok_or_else(|| usage(format!("--fix expects V=C, got `{f}`")))?;
                    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("bad --fix `{f}`")));
                    Ok((parse(v)?, parse(c)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let cfg = SolveConfig {
                mode: match mode {
                    Mode::First => SolveMode::FirstWitness,
                    Mode::Canonical => SolveMode::CanonicalMin,
                    Mode::Count => SolveMode::Count,
                },
                node_budget: budget,
                parallel: jobs > 1,
                jobs: Some(jobs.max(1)),
                fixed,
                ..SolveConfig::default()
            };
            let out = solve(&g, k, &cfg)?;
            eprintln!(
                "nodes {} pruned: necessity {} quota {} feasibility {} symmetry {}",
                out.nodes_explored,
                out.pruned_by.necessity,
                out.pruned_by.quota,
                out.pruned_by.feasibility,
                out.pruned_by.symmetry
            );
            if let Some(n) = out.count {
                println!("COUNT {n}");
            }
            match out.status {
                SolveStatus::Sat(c) => {
                    println!("SAT");
                    match output {
                        Some(p) => write(&p, &write_coloring(&c))?,
                        None => print!("{}", write_coloring(&c)),
                    }
                    Ok(())
                }
                SolveStatus::Unsat => Err(CliError::Unsat),
                SolveStatus::BudgetExceeded => Err(CliError::Budget),
            }
        }
        Command::Product { kind, g, h, cg, ch, output } => {
            let gg = load_graph(&g)?;
            let hg = load_graph(&h)?;
            let cg = cg.map(|p| load_coloring(&p, &gg)).transpose()?;
            let ch = ch.map(|p| load_coloring(&p, &hg)).transpose()?;
            let kind = match kind {
                Kind::Cartesian => ProductKind::Cartesian,
                Kind::Direct => ProductKind::Direct,
                Kind::Strong => ProductKind::Strong,
                Kind::Lexicographic => ProductKind::Lexicographic,
            };
            let out = product_nbc(kind, &gg, cg.as_ref(), &hg, ch.as_ref())?;
            write_pair(&output, &out)
        }
        Command::Join { g, cg, h, ch, output } => {
            let gg = load_graph(&g)?;
            let hg = load_graph(&h)?;
            let cg = load_coloring(&cg, &gg)?;
            let ch = load_coloring(&ch, &hg)?;
            write_pair(&output, &join_nbc(&gg, &cg, &hg, &ch)?)
        }
        Command::Embed { graph, k, output } => {
            let g = load_graph(&graph)?;
            let e = embed_in_nbkc(&g, k)?;
            write_pair(&output, &e.host)?;
            println!("vertex i of the input is vertex i of the host");
            Ok(())
        }
        Command::VertexAdd { graph, coloring, u, v, output } => {
            let g = load_graph(&graph)?;
            let c = load_coloring(&coloring, &g)?;
            let out = vertex_addition(&g, &c, &list(&u)?, &list(&v)?)?;
            println!("class sizes {:?}", out.coloring.class_sizes());
            write_pair(&output, &out)
        }
        Command::Union { graph, set, copies, cycle, coloring, k, output, format } => {
            union(graph, &set, copies, cycle, coloring, k, &output, format)
        }
        Command::Reduce { ess, k, output } => {
            let elements = list(&ess)?.into_iter().map(|x| x as u64).collect();
            let r = reduce_ess_to_nbc(&EssInstance::new(elements, k, None)?)?;
            let roles = output.with_extension("roles");
            write(&output, &write_graph(&r.graph))?;
            write(&roles, &write_roles(&r))?;
            println!(
                "wrote {} ({} vertices, {} edges) and {}",
                output.display(),
                r.graph.order(),
                r.graph.size(),
                roles.display()
            );
            Ok(())
        }
        Command::Decode { graph, coloring, roles } => {
            let g = load_graph(&graph)?;
            let c = load_coloring(&coloring, &g)?;
            let roles_path = roles.unwrap_or_else(|| graph.with_extension("roles"));
            let labels = with_path(&roles_path, read_roles(&read_text(&roles_path)?))?;
            let r = with_path(&roles_path, ReductionInstance::from_roles(g, labels.into_iter().map(|l| l.0).collect()))?;
            let p = decode(&r, &c)?;
            for (i, (part, sum)) in p.parts.iter().zip(&p.sums).enumerate() {
                println!("T{} = {part:?} sum {sum}", i + 1);
            }
            Ok(())
        }
        Command::ExportDot { graph, coloring, roles, output } => {
            let g = load_graph(&graph)?;
            let c = coloring.map(|p| load_coloring(&p, &g)).transpose()?;
            let roles: Option<Vec<Role>> = match roles {
                Some(p) => Some(with_path(&p, read_roles(&read_text(&p)?))?.into_iter().map(|l| l.0).collect()),
                None => None,
            };
            emit(output, &export_dot(&g, c.as_ref(), roles.as_deref()))
        }
        Command::ExportCnf { graph, k, output } => {
            let g = load_graph(&graph)?;
            emit(output, &to_cnf(&g, k)?.to_dimacs())
        }
    }
}

fn emit(output: Option<PathBuf>, text: &str) -> CliResult {
    match output {
        Some(p) => write(&p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct(family: Family, k: Option<usize>, output: Option<String>) -> CliResult {
    let need_k = |name: &str| k.ok_or_else(|| usage(format!("{name} needs -k")));
    let two_colors = |name: &str| match k {
        None | Some(2) => Ok(()),
        Some(other) => Err(CliError::Refused {
            rule: Rule::DegreeDivisibility.to_string(),
            reasons: vec![format!("{name} construction is for 2 colors, got {other}")],
        }),
    };
    let (name, out) = match family {
        Family::Cycle { m } => {
            if m >= 3 && k.is_some_and(|k| k != 2) {
                let report = check_necessary(&Graph::cycle(m)?, k.unwrap_or(2))?;
                if let Some(rule) = report.failed_rule() {
                    return Err(CliError::Refused { rule: rule.to_string(), reasons: Vec::new() });
                }
            }
            two_colors("cycle")?;
            (format!("cycle-{m}"), cycle_nbc(m)?)
        }
        Family::Multipartite { parts } => {
            let sizes = list(&parts)?;
            let k = need_k("multipartite")?;
            let tag: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            (format!("multipartite-{}", tag.join("-")), complete_multipartite_nbc(&sizes, k)?)
        }
        Family::Complete { n } => {
            let r = complete_graph_nbc(n, need_k("complete")?)?;
            return Err(Error::Refused(r).into());
        }
        Family::Circulant { n, connections, residue } => {
            let conn = list(&connections)?;
            let tag: Vec<String> = conn.iter().map(|s| s.to_string()).collect();
            let spec = CirculantSpec::new(n, conn)?;
            let out = if residue {
                circulant_residue_nbc(&spec, need_k("circulant --residue")?)?
            } else {
                let out = circulant_arith_nbc(&spec)?;
                if let Some(k) = k.filter(|&k| k != out.coloring.k()) {
                    return Err(usage(format!("this circulant takes {} colors, not {k}", out.coloring.k())));
                }
                out
            };
            (format!("circulant-{n}-{}", tag.join("-")), out)
        }
        Family::Hamming { d } => {
            let k = need_k("hamming")?;
            (format!("hamming-{d}-{k}"), hamming_nbc(HammingSpec::new(d, k)?)?)
        }
        Family::Hypercube { d } => {
            two_colors("hypercube")?;
            (format!("hypercube-{d}"), hypercube_nbc(d)?)
        }
    };
    write_pair(&output.unwrap_or(name), &out)
}

#[allow(clippy::too_many_arguments)]
fn union(
    graph: Option<PathBuf>,
    set: &str,
    copies: usize,
    cycle: Option<usize>,
    coloring: Option<PathBuf>,
    k: Option<usize>,
    output: &str,
    format: Format,
) -> CliResult {
    let s: VertexSet = list(set)?.into_iter().collect();
    let (g, k) = if let Some(m) = cycle {
        if graph.is_some() {
            return Err(usage("give either a graph file or --cycle, not both"));
        }
        let g = Graph::cycle(m)?;
        if g.is_independent(&s) {
            let c = cycle_nbc(m)?;
            return write_pair(output, &union_nbc_independent(&c.graph, &c.coloring, &s, copies)?);
        }
        match cycle_union_nbc(m, &s, copies) {
            Ok(out) => return write_pair(output, &out),
            Err(Error::Refused(r)) if r.rule == Rule::NotIdeal => {
                eprintln!("glue set is not ideal ({}); no coloring constructed", r.reasons.join("; "));
            }
            Err(e) => return Err(e.into()),
        }
        (g, Some(k.unwrap_or(2)))
    } else {
        let path = graph.ok_or_else(|| usage("union needs a graph file or --cycle"))?;
        (load_graph(&path)?, k)
    };
    if g.is_independent(&s) {
        if let Some(cp) = coloring {
            let c = load_coloring(&cp, &g)?;
            return write_pair(output, &union_nbc_independent(&g, &c, &s, copies)?);
        }
    } else {
        let k = match (k, &coloring) {
            (Some(k), _) => k,
            (None, Some(cp)) => load_coloring(cp, &g)?.k(),
            (None, None) => return Err(usage("dependent glue set: give -k for the congruence test")),
        };
        let report = union_congruence(&g, &s, k)?;
        match format {
            Format::Json => json(&report)?,
            Format::Text => println!("L = {}, M = {}, modulus {}", report.l, report.m, report.modulus),
        }
        if !report.admissible(copies) {
            return Err(CliError::Refused {
                rule: Rule::UnionCongruence.to_string(),
                reasons: vec![format!("{copies} is not 1 mod {}", report.modulus)],
            });
        }
    }
    let u = union_over_set(&UnionSpec::new(g, s, copies)?)?;
    let gp = format!("{output}.graph");
    write(Path::new(&gp), &write_graph(&u.graph))?;
    println!("wrote {gp} ({} vertices, {} edges); no coloring constructed, try `solve`", u.graph.order(), u.graph.size());
    Ok(())
}
