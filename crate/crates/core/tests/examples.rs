mod common;

use nomcu_core::fixpoint::{combine_leaf_solutions, solve_fixpoint_equation, Bounds};
use nomcu_core::nominal::{FunctionSymbol, Permutation, Substitution, Term, Variable};
use nomcu_core::relations::{alpha_c_equiv, FreshnessContext};
use nomcu_core::syntax::{parse_problem, parse_term_with};
use nomcu_core::unifier::{build_derivation_tree, check_conditions, Rule, Solution, Triple};

fn star() -> FunctionSymbol {
    FunctionSymbol::commutative("*")
}

#[test]
fn intro_derivation() {
    let parsed = parse_problem("{} |- [a][b]X =? [b][a]X").unwrap();
    let tree = build_derivation_tree(parsed.ctx, parsed.problem).unwrap();
    let rules: Vec<Rule> = tree.edges().map(|(_, r, _)| r).collect();
    assert_eq!(rules, vec![Rule::EqAbsOther, Rule::EqAbsSame, Rule::FreshAbsSame]);
    assert_eq!(tree.successful_leaves().count(), 1);
}

#[test]
fn fixpoint_example_leaves() {
    let parsed = parse_problem("{} |- [e]((a b).X * Y) =? [f]((a c)(c d).X * Y)").unwrap();
    let root = Triple::root(parsed.ctx.clone(), parsed.problem.clone());
    let tree = build_derivation_tree(parsed.ctx, parsed.problem).unwrap();
    assert_eq!(tree.count_rule(Rule::EqC), 2);
    let leaves: Vec<&Triple> = tree.successful_leaves().map(|n| &n.triple).collect();
    assert_eq!(leaves.len(), 2);

    let q1 = leaves[0];
    assert_eq!(q1.ctx.to_string(), "{e#X, e#Y}");
    assert!(q1.subst.is_identity());
    let pi2 = Permutation::from_pairs([("a", "b"), ("e", "f"), ("c", "d"), ("a", "c")]);
    let mut actions: Vec<(String, bool)> = q1
        .problem
        .iter()
        .map(|c| {
            let (p, x) = c.as_fixpoint().unwrap();
            let want = if x.name() == "X" { pi2.clone() } else { Permutation::from_pairs([("e", "f")]) };
            (x.name().to_string(), p.same_action(&want))
        })
        .collect();
    actions.sort();
    assert_eq!(actions, vec![("X".into(), true), ("Y".into(), true)]);

    let q2 = leaves[1];
    assert_eq!(q2.ctx.to_string(), "{e#Y, f#Y}");
    assert_eq!(q2.subst.to_string(), "{X/(e f)(a b).Y}");
    let (p, y) = q2.problem.iter().next().unwrap().as_fixpoint().unwrap();
    assert_eq!(y.name(), "Y");
    // the residual permutation maps a→b→d→c→a
    let derived = nomcu_core::fixpoint::Cycle::from_names(&["a", "b", "d", "c"]).unwrap().to_permutation();
    assert!(p.same_action(&derived), "{p}");

    // every combinatory solution of each leaf solves the original problem
    for leaf in leaves {
        for s in combine_leaf_solutions(leaf, &[star(), FunctionSymbol::commutative("⊕")], Bounds::default()).unwrap() {
            assert!(check_conditions(&root, &s), "{s}");
        }
    }
}

#[test]
fn four_cycle_in_the_other_direction_is_not_a_solution() {
    // a fixpoint of (a b c d), not of (a b d c)
    let parsed = parse_problem("{} |- [e]((a b).X * Y) =? [f]((a c)(c d).X * Y)").unwrap();
    let root = Triple::root(parsed.ctx, parsed.problem);
    let sig = [star(), FunctionSymbol::commutative("⊕")];
    let y = parse_term_with("(a ⊕ c) * (b ⊕ d)", &sig).unwrap();
    let ctx = FreshnessContext::new();
    let p = Permutation::from_pairs([("a", "b"), ("c", "d"), ("a", "c")]);
    assert!(alpha_c_equiv(&ctx, &y.permute(&p), &y));
    let x = y.permute(&Permutation::from_pairs([("e", "f"), ("a", "b")]));
    let sigma: Substitution = [(Variable::new("X"), x), (Variable::new("Y"), y)].into_iter().collect();
    assert!(!check_conditions(&root, &Solution::new(ctx, sigma)));
}

#[test]
fn transposition_pseudo_cycle_solutions() {
    let p = Permutation::from_pairs([("a", "b")]);
    let sols = solve_fixpoint_equation(
        &FreshnessContext::new(),
        &p,
        &Variable::new("X"),
        &[star()],
        Bounds { max_depth: 3, max_count: 256 },
    );
    let values: Vec<Term> = sols.iter().filter_map(|s| s.subst.get(&Variable::new("X")).cloned()).collect();
    let ctx = FreshnessContext::new();
    for want in [
        "a * b",
        "(a * a) * (b * b)",
        "(a * b) * (a * b)",
        "((a * a) * a) * ((b * b) * b)",
        "(a * (a * a)) * (b * (b * b))",
    ] {
        let want = parse_term_with(want, &[star()]).unwrap();
        assert!(values.iter().any(|v| alpha_c_equiv(&ctx, v, &want)), "{want} missing");
    }
    for v in &values {
        assert!(alpha_c_equiv(&ctx, &v.permute(&p), v), "{v}");
    }
}

#[test]
fn failing_leaf_on_distinct_atoms() {
    let parsed = parse_problem("{} |- a =? b").unwrap();
    let tree = build_derivation_tree(parsed.ctx, parsed.problem).unwrap();
    assert!(!tree.has_successful_leaf());
    assert_eq!(tree.len(), 1);
}

#[test]
fn stuck_freshness_fails() {
    let parsed = parse_problem("{} |- [a]X =? [b]a").unwrap();
    let tree = build_derivation_tree(parsed.ctx, parsed.problem).unwrap();
    assert!(!tree.has_successful_leaf());
    let (kind, reason) = tree.leaves().next().unwrap().leaf.unwrap();
    assert_eq!(kind, nomcu_core::unifier::LeafKind::Fail);
    assert_eq!(reason, Some(nomcu_core::unifier::FailReason::StuckFreshness));
}
