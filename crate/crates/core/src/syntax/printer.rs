//! Concrete syntax output. Everything printed here is accepted back by the
//! parser and yields a structurally equal value.

use std::fmt::{self, Write as _};

use crate::nominal::{FunctionSymbol, Permutation, Substitution, Term};
use crate::relations::FreshnessContext;
use crate::unifier::{Constraint, Problem, Solution, Triple};

/// Characters that make up operator symbols such as `*` or `+`.
pub const OPERATOR_CHARS: &[char] = &['*', '+', '&', '@', '$', '%', '~', '!', '⊕'];

pub fn is_operator_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| OPERATOR_CHARS.contains(&c))
}

fn is_infix(t: &Term) -> bool {
    matches!(t, Term::App(f, arg) if f.is_commutative() && is_operator_name(f.name()) && arg.is_pair())
}

fn write_symbol(out: &mut impl fmt::Write, f: &FunctionSymbol) -> fmt::Result {
    match (f.is_commutative(), is_operator_name(f.name())) {
        (false, _) => out.write_str(f.name()),
        (true, true) => write!(out, "{}C", f.name()),
        (true, false) => write!(out, "{}^C", f.name()),
    }
}

fn write_term(out: &mut impl fmt::Write, t: &Term, top: bool) -> fmt::Result {
    match t {
        Term::Unit => out.write_str("<>"),
        Term::Atom(a) => out.write_str(a.name()),
        Term::Abs(a, body) => {
            write!(out, "[{a}]")?;
            write_term(out, body, false)
        }
        Term::Pair(l, r) => {
            out.write_char('(')?;
            write_term(out, l, true)?;
            out.write_str(", ")?;
            write_term(out, r, true)?;
            out.write_char(')')
        }
        Term::App(f, arg) if is_infix(t) => {
            let Term::Pair(l, r) = &**arg else { unreachable!() };
            if !top {
                out.write_char('(')?;
            }
            write_term(out, l, false)?;
            write!(out, " {} ", f.name())?;
            write_term(out, r, false)?;
            if !top {
                out.write_char(')')?;
            }
            Ok(())
        }
        Term::App(f, arg) => {
            write_symbol(out, f)?;
            out.write_char(' ')?;
            write_term(out, arg, false)
        }
        Term::Susp(p, x) => {
            if !p.is_nil() {
                write!(out, "{p}.")?;
            }
            out.write_str(x.name())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, true)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, true)
    }
}

impl fmt::Display for FunctionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbol(f, self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_nil() {
            return f.write_str("id");
        }
        for s in self.swaps() {
            write!(f, "({} {})", s.first(), s.second())?;
        }
        Ok(())
    }
}

impl fmt::Display for FreshnessContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<_> = self.iter().collect();
        items.sort_by(|(a, x), (b, y)| (x, a).cmp(&(y, b)));
        f.write_char('{')?;
        for (i, (a, x)) in items.into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}#{x}")?;
        }
        f.write_char('}')
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        f.write_char('{')?;
        for (i, (x, t)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}/{t}")?;
        }
        f.write_char('}')
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Equation(s, t) => write!(f, "{s} =? {t}"),
            Constraint::Freshness(a, t) => write!(f, "{a} #? {t}"),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}, {{{}}}⟩", self.ctx, self.subst, self.problem)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.ctx, self.subst)
    }
}

/// `commutative: …` preamble, or the empty string when `signature` has no
/// commutative symbol.
pub fn signature_line(signature: &[FunctionSymbol]) -> String {
    let names: Vec<&str> = signature
        .iter()
        .filter(|f| f.is_commutative())
        .map(|f| f.name())
        .collect();
    if names.is_empty() {
        String::new()
    } else {
        format!("commutative: {}\n", names.join(", "))
    }
}

/// A problem in the input format: preamble, context, `|-`, constraints.
pub fn print_problem(signature: &[FunctionSymbol], ctx: &FreshnessContext, p: &Problem) -> String {
    format!("{}{} |- {}", signature_line(signature), ctx, p)
}
