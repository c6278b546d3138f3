use std::collections::BTreeSet;
use std::fmt::Write;

use nomcu_core::fixpoint::{combine_leaf_solutions, Bounds};
use nomcu_core::oracle::{accepts, brute_force_visit, in_space, TermSpace};
use nomcu_core::report::{self, Report, RunMetadata, SCHEMA_VERSION};
use nomcu_core::sat::{self, OneInThreeInstance};
use nomcu_core::syntax::{parse_problem_with, parse_solution_with, ParsedProblem};
use nomcu_core::unifier::{build_derivation_tree, check_solution, DerivationTree, Solution, Triple};
use nomcu_core::{Atom, Error, FreshnessContext, FunctionSymbol, Substitution, Term, Variable};
use serde_json::json;

use crate::config::{Format, Mode, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO_SOLUTION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::MalformedProblem { .. } | Error::WellFormedness { .. } => EXIT_INPUT,
        Error::NonGroundAssignment { .. } | Error::InvariantViolation(_) => EXIT_INVARIANT,
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, Error> {
    match cfg.mode {
        Mode::Simplify | Mode::Solve => simplify_or_solve(cfg),
        Mode::Check => check(cfg),
        Mode::Sat => run_sat(cfg),
        Mode::OracleCompare => oracle_compare(cfg),
    }
}

fn metadata(cfg: &RunConfig) -> RunMetadata {
    RunMetadata {
        mode: cfg.mode.name().to_string(),
        input: cfg.input_label.clone(),
        max_depth: cfg.max_depth,
        max_count: cfg.max_count,
        translated: cfg.translate,
    }
}

fn parse(cfg: &RunConfig) -> Result<ParsedProblem, Error> {
    parse_problem_with(cfg.problem.as_deref().unwrap_or_default(), cfg.translate)
}

/// Symbols available to combinatory solutions: those of the problem, with
/// `*` added when none of them is commutative.
fn generators(parsed: &ParsedProblem) -> Vec<FunctionSymbol> {
    let mut sig = parsed.signature.clone();
    if parsed.commutative_symbols().is_empty() {
        sig.push(FunctionSymbol::commutative("*"));
    }
    sig
}

fn leaf_solutions(tree: &DerivationTree, sig: &[FunctionSymbol], cfg: &RunConfig) -> Result<Vec<(usize, Solution)>, Error> {
    let bounds = Bounds {
        max_depth: cfg.max_depth,
        max_count: cfg.max_count,
    };
    let mut out = Vec::new();
    for n in tree.successful_leaves() {
        for s in combine_leaf_solutions(&n.triple, sig, bounds)? {
            out.push((n.id, s));
        }
    }
    Ok(out)
}

fn status(found: bool) -> u8 {
    if found {
        EXIT_OK
    } else {
        EXIT_NO_SOLUTION
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable report");
    s.push('\n');
    s
}

fn simplify_or_solve(cfg: &RunConfig) -> Result<Outcome, Error> {
    let parsed = parse(cfg)?;
    let sig = generators(&parsed);
    let tree = build_derivation_tree(parsed.ctx, parsed.problem)?;
    let solutions = match cfg.mode {
        Mode::Solve => leaf_solutions(&tree, &sig, cfg)?,
        _ => Vec::new(),
    };
    let successful = tree.successful_leaves().count();
    let stdout = match cfg.format {
        Format::Json => to_json(&Report::new(metadata(cfg), &tree, &solutions)),
        Format::Text => {
            let mut out = report::render_tree(&tree);
            let _ = writeln!(out, "{successful} successful of {} leaves", tree.leaves().count());
            if cfg.mode == Mode::Solve {
                out.push_str("solutions:\n");
                out.push_str(&report::render_solutions(&solutions));
            }
            out
        }
    };
    Ok(Outcome {
        code: status(successful > 0),
        stdout,
    })
}

fn check(cfg: &RunConfig) -> Result<Outcome, Error> {
    let parsed = parse(cfg)?;
    let text = cfg.solution.as_deref().unwrap_or_default();
    let sol = parse_solution_with(text.trim(), &parsed.signature)?;
    let root = Triple::root(parsed.ctx, parsed.problem);
    let valid = check_solution(&root, &sol);
    let stdout = match cfg.format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "run": metadata(cfg),
            "solution": sol.to_string(),
            "valid": valid,
        })),
        Format::Text => format!("{sol}: {}\n", if valid { "valid" } else { "invalid" }),
    };
    Ok(Outcome {
        code: status(valid),
        stdout,
    })
}

fn run_sat(cfg: &RunConfig) -> Result<Outcome, Error> {
    let inst = OneInThreeInstance::parse(cfg.clauses.as_deref().unwrap_or_default())?;
    let valuation = sat::solve(&inst)?;
    if let Some(v) = &valuation {
        if !inst.satisfied_by(v) {
            return Err(Error::InvariantViolation(format!("decoded valuation {v:?} is not one-in-three")));
        }
    }
    let stdout = match cfg.format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "run": metadata(cfg),
            "clauses": inst.clauses.len(),
            "satisfiable": valuation.is_some(),
            "valuation": valuation,
        })),
        Format::Text => match &valuation {
            Some(v) => {
                let mut out = String::from("SAT\n");
                for (p, b) in v {
                    let _ = writeln!(out, "{p} = {b}");
                }
                out
            }
            None => "UNSAT\n".to_string(),
        },
    };
    Ok(Outcome {
        code: status(valuation.is_some()),
        stdout,
    })
}

/// Binds every root variable to its image under `sol`, with the variables
/// left in that image replaced by `<>`.
fn ground_instance(sol: &Solution, root_vars: &BTreeSet<Variable>) -> Substitution {
    let mut rest = BTreeSet::new();
    for x in root_vars {
        sol.subst.lookup(x).collect_vars(&mut rest);
    }
    let unit: Substitution = rest.into_iter().map(|y| (y, Term::Unit)).collect();
    root_vars
        .iter()
        .map(|x| (x.clone(), unit.apply(&sol.subst.lookup(x))))
        .collect()
}

fn oracle_compare(cfg: &RunConfig) -> Result<Outcome, Error> {
    let parsed = parse(cfg)?;
    let (ctx, problem) = (parsed.ctx.clone(), parsed.problem.clone());
    let mut atoms: BTreeSet<Atom> = problem.atoms();
    atoms.extend(ctx.domain());
    if atoms.is_empty() {
        atoms.insert(Atom::new("a"));
    }
    let space = TermSpace::ground(atoms.into_iter().collect(), problem.symbols().into_iter().collect(), cfg.max_depth);
    let tree = build_derivation_tree(ctx.clone(), problem.clone())?;
    let leaves: Vec<&Triple> = tree.successful_leaves().map(|n| &n.triple).collect();
    let solutions = leaf_solutions(&tree, &parsed.signature, cfg)?;

    let mut mismatches = Vec::new();
    let oracle_count = brute_force_visit(&ctx, &problem, &space, |g| {
        let sol = Solution::new(FreshnessContext::new(), g.clone());
        if !leaves.iter().any(|l| check_solution(l, &sol)) && mismatches.len() < cfg.max_count {
            mismatches.push(format!("oracle solution {g} is not covered by any successful leaf"));
        }
        true
    });
    if (oracle_count > 0) != !leaves.is_empty() {
        mismatches.push(format!(
            "oracle found {oracle_count} ground solutions, tree has {} successful leaves",
            leaves.len()
        ));
    }
    let root_vars: BTreeSet<Variable> = problem.vars().into_iter().chain(ctx.variables()).collect();
    let mut confirmed = 0;
    for (leaf, s) in &solutions {
        let g = ground_instance(s, &root_vars);
        if g.iter().all(|(_, v)| in_space(v, &space)) {
            if accepts(&ctx, &problem, &space, &g) {
                confirmed += 1;
            } else {
                mismatches.push(format!("oracle rejects {g}, an instance of {s} from leaf {leaf}"));
            }
        }
    }

    let stdout = match cfg.format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "run": metadata(cfg),
            "oracle_solutions": oracle_count,
            "successful_leaves": leaves.len(),
            "emitted_confirmed": confirmed,
            "mismatches": mismatches,
        })),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "oracle: {oracle_count} ground solutions up to depth {}", cfg.max_depth);
            let _ = writeln!(out, "tree: {} successful leaves, {} solutions emitted", leaves.len(), solutions.len());
            let _ = writeln!(out, "confirmed: {confirmed} emitted solutions in the oracle space");
            for m in &mismatches {
                let _ = writeln!(out, "mismatch: {m}");
            }
            out.push_str(if mismatches.is_empty() { "agree\n" } else { "DISAGREE\n" });
            out
        }
    };
    Ok(Outcome {
        code: status(mismatches.is_empty()),
        stdout,
    })
}
