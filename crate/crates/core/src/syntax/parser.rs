//! Concrete syntax input.
//!
//! ```text
//! problem    ::= preamble? ctx "|-" (constraint (";" constraint)*)?
//! preamble   ::= "commutative" ":" symbol ("," symbol)*
//! ctx        ::= "{" (atom ("," atom)* "#" VAR ("," ...)*)? "}"
//! constraint ::= term "=?" term | atom "#?" term
//! term       ::= prefix (OP prefix)*            left associative, commutative
//! prefix     ::= "<>" | atom | "[" atom "]" prefix | "(" term "," term ")"
//!              | "(" term ")" | perm "." VAR | "id" "." VAR | VAR
//!              | symbol prefix
//! symbol     ::= ident ("^C")? | OP ("C" | "^C")?
//! perm       ::= ("(" atom atom ")")+
//! ```
//!
//! Atoms and symbols are lower-case identifiers, variables upper-case ones.
//! An identifier immediately followed by something that can start a term
//! is a function symbol, otherwise an atom. A symbol is commutative if it is
//! listed in the preamble, marked `^C` (or `C` directly after an operator)
//! anywhere, or used infix anywhere; the theory is then fixed for the whole
//! input.

use std::collections::BTreeSet;

use crate::error::{Error, ParseError};
use crate::nominal::{Atom, FunctionSymbol, Permutation, Substitution, Swapping, Term, Theory, Variable};
use crate::relations::FreshnessContext;
use crate::unifier::{translate_commutative_suspensions, Constraint, Problem, Solution};

use super::printer::OPERATOR_CHARS;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Op(String),
    CommMark,
    Unit,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    Comma,
    Semi,
    Dot,
    Colon,
    Slash,
    Hash,
    EqQ,
    HashQ,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) | Tok::Op(s) => format!("`{s}`"),
            Tok::CommMark => "`^C`".into(),
            Tok::Unit => "`<>`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Hash => "`#`".into(),
            Tok::EqQ => "`=?`".into(),
            Tok::HashQ => "`#?`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| ParseError { line, column, message };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            '/' => Tok::Slash,
            '⟨' => Tok::LAngle,
            '⟩' | '>' => Tok::RAngle,
            '⊢' => Tok::Turnstile,
            '<' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Tok::Unit
            }
            '<' => Tok::LAngle,
            '=' | '≈' if chars.get(i + 1) == Some(&'?') => {
                adv = 2;
                Tok::EqQ
            }
            '#' if chars.get(i + 1) == Some(&'?') => {
                adv = 2;
                Tok::HashQ
            }
            '#' => Tok::Hash,
            '|' if chars.get(i + 1) == Some(&'-') => {
                adv = 2;
                Tok::Turnstile
            }
            '^' if chars.get(i + 1) == Some(&'C') => {
                adv = 2;
                Tok::CommMark
            }
            c if OPERATOR_CHARS.contains(&c) => {
                let mut j = i;
                while j < chars.len() && OPERATOR_CHARS.contains(&chars[j]) {
                    j += 1;
                }
                adv = j - i;
                Tok::Op(chars[i..j].iter().collect())
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                adv = j - i;
                let word: String = chars[i..j].iter().collect();
                if c.is_uppercase() {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                }
            }
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line: l0, column: c0 });
        i += adv;
        col += adv;
        // an operator written with a `C` suffix, e.g. `*C`
        if matches!(out.last().map(|s| &s.tok), Some(Tok::Op(_)))
            && chars.get(i) == Some(&'C')
            && !chars.get(i + 1).is_some_and(|&c| is_ident_char(c))
        {
            out.push(Spanned { tok: Tok::CommMark, line, column: col });
            i += 1;
            col += 1;
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    commutative: BTreeSet<String>,
    /// Every symbol applied in the input, in order of use.
    used: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            commutative: BTreeSet::new(),
            used: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> PResult<Atom> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Atom::new(s))
            }
            _ => self.unexpected("an atom"),
        }
    }

    fn variable(&mut self) -> PResult<Variable> {
        match self.peek().clone() {
            Tok::Var(s) => {
                self.bump();
                Ok(Variable::new(s))
            }
            _ => self.unexpected("a variable"),
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    /// Can the current token start a prefix term, excluding operators?
    fn starts_argument(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Var(_) | Tok::Unit | Tok::LParen | Tok::LBrack
        )
    }

    fn note_use(&mut self, name: &str) {
        self.used.push(name.to_string());
    }

    fn term(&mut self) -> PResult<Term> {
        let mut lhs = self.prefix()?;
        while let Tok::Op(op) = self.peek().clone() {
            self.bump();
            self.eat(Tok::CommMark);
            self.commutative.insert(op.clone());
            let rhs = self.prefix()?;
            lhs = Term::app(FunctionSymbol::plain(&op), Term::pair(lhs, rhs));
        }
        Ok(lhs)
    }

    fn symbol_marker(&mut self, name: &str) {
        if self.eat(Tok::CommMark) {
            self.commutative.insert(name.to_string());
        }
    }

    fn prefix(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Unit => {
                self.bump();
                Ok(Term::Unit)
            }
            Tok::LBrack => {
                self.bump();
                let a = self.atom()?;
                self.expect(Tok::RBrack)?;
                Ok(Term::abs(a, self.prefix()?))
            }
            Tok::Var(x) => {
                self.bump();
                Ok(Term::var(&x))
            }
            Tok::Ident(id) if id == "id" && *self.peek_at(1) == Tok::Dot => {
                self.bump();
                self.bump();
                let x = self.variable()?;
                Ok(Term::Susp(Permutation::identity(), x))
            }
            Tok::Ident(name) => {
                self.note_use(&name);
                self.bump();
                if *self.peek() == Tok::CommMark {
                    self.symbol_marker(&name);
                    return Ok(Term::app(FunctionSymbol::plain(&name), self.prefix()?));
                }
                if self.starts_argument() {
                    Ok(Term::app(FunctionSymbol::plain(&name), self.prefix()?))
                } else {
                    Ok(Term::Atom(Atom::new(name)))
                }
            }
            Tok::Op(op) => {
                self.note_use(&op);
                self.bump();
                self.symbol_marker(&op);
                Ok(Term::app(FunctionSymbol::plain(&op), self.prefix()?))
            }
            Tok::LParen => {
                if self.at_permutation() {
                    let p = self.permutation()?;
                    self.expect(Tok::Dot)?;
                    let x = self.variable()?;
                    return Ok(Term::Susp(p, x));
                }
                self.bump();
                let first = self.term()?;
                if self.eat(Tok::Comma) {
                    let second = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::pair(first, second))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            _ => self.unexpected("a term"),
        }
    }

    /// `( ident ident )` followed by `(` or `.`.
    fn at_permutation(&self) -> bool {
        matches!(
            (self.peek_at(0), self.peek_at(1), self.peek_at(2), self.peek_at(3), self.peek_at(4)),
            (Tok::LParen, Tok::Ident(_), Tok::Ident(_), Tok::RParen, Tok::LParen | Tok::Dot)
        )
    }

    fn permutation(&mut self) -> PResult<Permutation> {
        let mut swaps = Vec::new();
        while *self.peek() == Tok::LParen {
            self.bump();
            let a = self.atom()?;
            let b = self.atom()?;
            self.expect(Tok::RParen)?;
            match Swapping::new(a, b) {
                Some(s) => swaps.push(s),
                None => return self.error("a swapping needs two different atoms"),
            }
        }
        Ok(Permutation::from_swaps(swaps))
    }

    fn context(&mut self) -> PResult<FreshnessContext> {
        self.expect(Tok::LBrace)?;
        let mut ctx = FreshnessContext::new();
        if self.eat(Tok::RBrace) {
            return Ok(ctx);
        }
        loop {
            let mut atoms = vec![self.atom()?];
            while self.eat(Tok::Comma) {
                atoms.push(self.atom()?);
            }
            self.expect(Tok::Hash)?;
            let x = self.variable()?;
            for a in atoms {
                ctx.insert(a, x.clone());
            }
            if self.eat(Tok::RBrace) {
                return Ok(ctx);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn constraint(&mut self) -> PResult<Constraint> {
        if let (Tok::Ident(a), Tok::HashQ) = (self.peek_at(0).clone(), self.peek_at(1)) {
            self.bump();
            self.bump();
            return Ok(Constraint::fresh(Atom::new(a), self.term()?));
        }
        let s = self.term()?;
        self.expect(Tok::EqQ)?;
        let t = self.term()?;
        Ok(Constraint::eq(s, t))
    }

    fn preamble(&mut self) -> PResult<()> {
        if !matches!((self.peek_at(0), self.peek_at(1)), (Tok::Ident(k), Tok::Colon) if k == "commutative") {
            return Ok(());
        }
        self.bump();
        self.bump();
        loop {
            let name = match self.bump() {
                Tok::Ident(s) | Tok::Op(s) => s,
                _ => {
                    self.pos -= 1;
                    return self.unexpected("a symbol");
                }
            };
            self.eat(Tok::CommMark);
            self.commutative.insert(name);
            if !self.eat(Tok::Comma) {
                return Ok(());
            }
        }
    }

    fn substitution(&mut self) -> PResult<Substitution> {
        if let Tok::Ident(id) = self.peek() {
            if id == "id" {
                self.bump();
                return Ok(Substitution::identity());
            }
        }
        self.expect(Tok::LBrace)?;
        let mut out = Substitution::identity();
        if self.eat(Tok::RBrace) {
            return Ok(out);
        }
        loop {
            let x = self.variable()?;
            self.expect(Tok::Slash)?;
            let t = self.term()?;
            out.bind(x, t);
            if self.eat(Tok::RBrace) {
                return Ok(out);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn resolve(&self, t: &Term) -> Term {
        match t {
            Term::Unit | Term::Atom(_) | Term::Susp(..) => t.clone(),
            Term::Abs(a, b) => Term::abs(a.clone(), self.resolve(b)),
            Term::Pair(l, r) => Term::pair(self.resolve(l), self.resolve(r)),
            Term::App(f, arg) => {
                let theory = if self.commutative.contains(f.name()) {
                    Theory::Commutative
                } else {
                    Theory::Plain
                };
                Term::app(FunctionSymbol::new(f.name(), theory), self.resolve(arg))
            }
        }
    }

    fn resolve_constraint(&self, c: &Constraint) -> Constraint {
        match c {
            Constraint::Equation(s, t) => Constraint::eq(self.resolve(s), self.resolve(t)),
            Constraint::Freshness(a, t) => Constraint::fresh(a.clone(), self.resolve(t)),
        }
    }

    fn resolve_subst(&self, s: &Substitution) -> Substitution {
        s.iter().map(|(x, t)| (x.clone(), self.resolve(t))).collect()
    }

    fn signature(&self) -> Vec<FunctionSymbol> {
        let mut names: Vec<&String> = self.used.iter().collect();
        names.extend(self.commutative.iter());
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in names {
            if seen.insert(n.clone()) {
                let th = if self.commutative.contains(n) {
                    Theory::Commutative
                } else {
                    Theory::Plain
                };
                out.push(FunctionSymbol::new(n, th));
            }
        }
        out.sort();
        out
    }
}

/// A parsed unification problem together with the symbols it declares or uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedProblem {
    pub signature: Vec<FunctionSymbol>,
    pub ctx: FreshnessContext,
    pub problem: Problem,
}

impl ParsedProblem {
    pub fn commutative_symbols(&self) -> Vec<FunctionSymbol> {
        self.signature.iter().filter(|f| f.is_commutative()).cloned().collect()
    }
}

impl std::fmt::Display for ParsedProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::printer::print_problem(&self.signature, &self.ctx, &self.problem))
    }
}

/// Parses a problem and rejects commutative applications to non-pairs.
pub fn parse_problem(text: &str) -> Result<ParsedProblem, Error> {
    parse_problem_with(text, false)
}

/// Like [`parse_problem`]; with `translate`, commutative applications to
/// suspensions are first rewritten by [`translate_commutative_suspensions`].
pub fn parse_problem_with(text: &str, translate: bool) -> Result<ParsedProblem, Error> {
    let mut p = Parser::new(text)?;
    p.preamble()?;
    let ctx = p.context()?;
    p.expect(Tok::Turnstile)?;
    let mut raw = Vec::new();
    if *p.peek() != Tok::Eof {
        raw.push(p.constraint()?);
        while p.eat(Tok::Semi) {
            if *p.peek() == Tok::Eof {
                break;
            }
            raw.push(p.constraint()?);
        }
    }
    p.expect_eof()?;
    let mut problem: Problem = raw.iter().map(|c| p.resolve_constraint(c)).collect();
    let mut ctx = ctx;
    if translate {
        (ctx, problem) = translate_commutative_suspensions(&ctx, &problem);
    }
    if let Some(bad) = problem.ill_formed_application() {
        return Err(Error::ill_formed_input(bad));
    }
    Ok(ParsedProblem {
        signature: p.signature(),
        ctx,
        problem,
    })
}

fn with_signature(text: &str, signature: &[FunctionSymbol]) -> PResult<Parser> {
    let mut p = Parser::new(text)?;
    p.commutative
        .extend(signature.iter().filter(|f| f.is_commutative()).map(|f| f.name().to_string()));
    Ok(p)
}

/// Parses a single term. Symbols listed as commutative in `signature` keep
/// that theory even when the term itself gives no evidence for it.
pub fn parse_term_with(text: &str, signature: &[FunctionSymbol]) -> Result<Term, Error> {
    let mut p = with_signature(text, signature)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(p.resolve(&t))
}

pub fn parse_term(text: &str) -> Result<Term, Error> {
    parse_term_with(text, &[])
}

pub fn parse_context(text: &str) -> Result<FreshnessContext, Error> {
    let mut p = Parser::new(text)?;
    let ctx = p.context()?;
    p.expect_eof()?;
    Ok(ctx)
}

pub fn parse_substitution_with(text: &str, signature: &[FunctionSymbol]) -> Result<Substitution, Error> {
    let mut p = with_signature(text, signature)?;
    let s = p.substitution()?;
    p.expect_eof()?;
    Ok(p.resolve_subst(&s))
}

/// `⟨{ctx}, {X/t, …}⟩`, also written with `<` and `>`; the substitution may
/// be `id`.
pub fn parse_solution_with(text: &str, signature: &[FunctionSymbol]) -> Result<Solution, Error> {
    let mut p = with_signature(text, signature)?;
    p.expect(Tok::LAngle)?;
    let ctx = p.context()?;
    p.expect(Tok::Comma)?;
    let s = p.substitution()?;
    p.expect(Tok::RAngle)?;
    p.expect_eof()?;
    Ok(Solution::new(ctx, p.resolve_subst(&s)))
}

pub fn parse_solution(text: &str) -> Result<Solution, Error> {
    parse_solution_with(text, &[])
}
