//! Positive 1-in-3-SAT as nominal C-unification.
//!
//! A clause `(p, q, r)` becomes
//! `((X_p + X_q) + X_r) + Y_i ≈? ((b + b) + a) + ((b + a) + b)` with `+`
//! commutative. The right-hand side holds three `b` and one `a` at the
//! second level, so each `X` must be one of the atoms and exactly one of
//! `X_p`, `X_q`, `X_r` is `a`. True is read as `a`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, ParseError};
use crate::fixpoint::{combine_leaf_solutions, Bounds};
use crate::nominal::{FunctionSymbol, Term, Variable};
use crate::relations::FreshnessContext;
use crate::unifier::{build_derivation_tree, Constraint, Problem, Solution};

pub type Valuation = BTreeMap<String, bool>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneInThreeInstance {
    pub clauses: Vec<[String; 3]>,
}

impl OneInThreeInstance {
    pub fn new<S: Into<String>>(clauses: impl IntoIterator<Item = [S; 3]>) -> Self {
        OneInThreeInstance {
            clauses: clauses.into_iter().map(|c| c.map(Into::into)).collect(),
        }
    }

    /// One clause per line, three whitespace-separated names; `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut clauses = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            match words.as_slice() {
                [] => continue,
                [p, q, r] => {
                    for (w, col) in [(p, 0), (q, 1), (r, 2)] {
                        if !w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                            return Err(ParseError {
                                line: n + 1,
                                column: body.find(*w).unwrap_or(col) + 1,
                                message: format!("`{w}` is not a variable name"),
                            });
                        }
                    }
                    clauses.push([p.to_string(), q.to_string(), r.to_string()]);
                }
                _ => {
                    return Err(ParseError {
                        line: n + 1,
                        column: 1,
                        message: format!("expected 3 names per clause, found {}", words.len()),
                    })
                }
            }
        }
        Ok(OneInThreeInstance { clauses })
    }

    /// Propositional variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.clauses
            .iter()
            .flatten()
            .filter(|v| seen.insert(v.as_str()))
            .cloned()
            .collect()
    }

    /// Exactly one variable of each clause is true.
    pub fn satisfied_by(&self, v: &Valuation) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().filter(|p| v.get(*p).copied().unwrap_or(false)).count() == 1)
    }
}

pub fn plus() -> FunctionSymbol {
    FunctionSymbol::commutative("+")
}

pub fn x_var(p: &str) -> Variable {
    Variable::new(format!("X_{p}"))
}

pub fn y_var(i: usize) -> Variable {
    Variable::new(format!("Y_{i}"))
}

/// The problem `⟨∅, {E_1, …, E_n}⟩`.
pub fn encode(inst: &OneInThreeInstance) -> Problem {
    let f = plus();
    let v = |x: Variable| Term::Susp(Default::default(), x);
    let (a, b) = (Term::atom("a"), Term::atom("b"));
    let rhs = Term::comm(
        &f,
        Term::comm(&f, Term::comm(&f, b.clone(), b.clone()), a.clone()),
        Term::comm(&f, Term::comm(&f, b.clone(), a), b),
    );
    inst.clauses
        .iter()
        .enumerate()
        .map(|(i, [p, q, r])| {
            let lhs = Term::comm(
                &f,
                Term::comm(&f, Term::comm(&f, v(x_var(p)), v(x_var(q))), v(x_var(r))),
                v(y_var(i + 1)),
            );
            Constraint::eq(lhs, rhs.clone())
        })
        .collect()
}

/// `p ↦ (X_p σ = a)`. Every `X_p` must be bound to `a` or `b`.
pub fn decode(sol: &Solution, inst: &OneInThreeInstance) -> Result<Valuation, Error> {
    inst.variables()
        .into_iter()
        .map(|p| {
            let x = x_var(&p);
            match sol.subst.lookup(&x) {
                Term::Atom(at) if at.name() == "a" => Ok((p, true)),
                Term::Atom(at) if at.name() == "b" => Ok((p, false)),
                _ => Err(Error::NonGroundAssignment {
                    variable: x.name().to_string(),
                }),
            }
        })
        .collect()
}

/// Decoded valuations of every successful leaf, in tree order.
pub fn solve_all(inst: &OneInThreeInstance) -> Result<Vec<Valuation>, Error> {
    let tree = build_derivation_tree(FreshnessContext::new(), encode(inst))?;
    let mut out = Vec::new();
    for leaf in tree.successful_leaves() {
        let bounds = Bounds { max_depth: 0, max_count: 1 };
        if let Some(sol) = combine_leaf_solutions(&leaf.triple, &[plus()], bounds)?.first() {
            out.push(decode(sol, inst)?);
        }
    }
    Ok(out)
}

/// First valuation found through unification, if any.
pub fn solve(inst: &OneInThreeInstance) -> Result<Option<Valuation>, Error> {
    Ok(solve_all(inst)?.into_iter().next())
}

/// Exhaustive search over all valuations.
pub fn brute_force(inst: &OneInThreeInstance) -> Option<Valuation> {
    let vars = inst.variables();
    (0u64..1 << vars.len()).find_map(|bits| {
        let v: Valuation = vars
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), bits >> i & 1 == 1))
            .collect();
        inst.satisfied_by(&v).then_some(v)
    })
}
