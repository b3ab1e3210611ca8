//! Brute-force property checkers: confluence modulo flattening, forward and
//! inverse simulation of the embeddings, and strong normalization.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::lsc::{
    is_gcvlax_inv_step, lsc_redexes, weak_eval_steps, Calculus, LscRule,
};
use crate::sharing::{
    equiv_flatten, flatten_class, sharing_redexes, weak_step_named_sharing, SharingRule,
};
use crate::syntax::lsc_term::LscTerm;
use crate::syntax::sharing_term::SharingTerm;
use crate::translations::{
    in_image, inverse_lsc_image, tra_cbn, tra_cbs, tra_cbv, translate_rulename, TranslationKind,
};

use super::graph::{sharing_graph, Caps};

/// One failing instance of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// The outcome of checking one property on a batch of instances.
#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub property: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
    /// Instances skipped because a cap truncated the search.
    pub inconclusive: usize,
    pub wall_time: Duration,
}

impl PropertyReport {
    pub fn new(property: impl Into<String>) -> PropertyReport {
        PropertyReport {
            property: property.into(),
            instances: 0,
            failures: Vec::new(),
            inconclusive: 0,
            wall_time: Duration::ZERO,
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, input: impl ToString, expected: impl ToString, actual: impl ToString) {
        self.failures.push(Failure {
            input: input.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Merge another report for the same property into this one.
    pub fn absorb(&mut self, other: PropertyReport) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self.inconclusive += other.inconclusive;
        self.wall_time += other.wall_time;
    }

    pub fn summary(&self) -> String {
        let status = if !self.ok() {
            "FAIL"
        } else if self.inconclusive > 0 {
            "inconclusive"
        } else {
            "ok"
        };
        format!(
            "{}: {} ({} instances, {} failures, {} inconclusive)",
            self.property,
            status,
            self.instances,
            self.failures.len(),
            self.inconclusive
        )
    }
}

// ---------------------------------------------------------------------------
// Confluence modulo flattening

/// Check that all normal forms reachable from `t` under →! are pairwise
/// flattening-equivalent. Truncated searches count as inconclusive.
pub fn check_confluence_mod_flatten(t: &SharingTerm, caps: &Caps) -> PropertyReport {
    let start = Instant::now();
    let mut report = PropertyReport::new("confluence-mod-flattening");
    let g = sharing_graph(t, caps);
    report.instances += 1;
    if g.truncated {
        report.inconclusive += 1;
    } else {
        let maxima = g.maximal_nodes();
        for (i, &a) in maxima.iter().enumerate() {
            for &b in &maxima[i + 1..] {
                report.instances += 1;
                if !equiv_flatten(&g.nodes[a], &g.nodes[b]) {
                    report.fail(
                        t,
                        "flattening-equivalent normal forms",
                        format!("{} vs {}", g.nodes[a], g.nodes[b]),
                    );
                }
            }
        }
    }
    report.wall_time = start.elapsed();
    report
}

// ---------------------------------------------------------------------------
// Simulation

fn calc_of(kind: TranslationKind) -> Calculus {
    match kind {
        TranslationKind::Cbn => Calculus::Cbn,
        TranslationKind::Cbv => Calculus::Cbv,
        TranslationKind::Cbs => Calculus::Cbs,
        TranslationKind::Bang => unreachable!("bang is not an LSC calculus"),
    }
}

/// The calculus whose steps the inverse translation produces.
fn inverse_calc_of(kind: TranslationKind) -> Calculus {
    match kind {
        TranslationKind::Cbn => Calculus::Cbn,
        TranslationKind::Cbv => Calculus::Cbv,
        TranslationKind::Cbs => Calculus::Cbs,
        TranslationKind::Bang => unreachable!("bang is not an LSC calculus"),
    }
}

fn translate(t: &LscTerm, kind: TranslationKind) -> SharingTerm {
    match kind {
        TranslationKind::Cbn => tra_cbn(t),
        TranslationKind::Cbv => tra_cbv(t),
        TranslationKind::Cbs => tra_cbs(t),
        TranslationKind::Bang => unreachable!("bang is not an LSC calculus"),
    }
}

/// The rule sequence simulating one source rule step.
pub fn simulation_rule_seq(rule: LscRule, kind: TranslationKind) -> Option<Vec<SharingRule>> {
    use SharingRule::*;
    match kind {
        TranslationKind::Cbn => match rule {
            LscRule::Db => Some(vec![Sdb]),
            LscRule::Ls => Some(vec![Sls, Sreq]),
            LscRule::Gc => Some(vec![Sgc]),
            _ => None,
        },
        TranslationKind::Cbv => match rule {
            LscRule::Db => Some(vec![Sls, Sreq, Sdb, Sgc]),
            LscRule::Lsv => Some(vec![Sls]),
            LscRule::GcvLax => Some(vec![Sgc]),
            _ => None,
        },
        TranslationKind::Cbs => match rule {
            LscRule::Db => Some(vec![Sreq, Sdb]),
            LscRule::Lsw => Some(vec![Sls]),
            LscRule::Gc => Some(vec![Sgc]),
            _ => None,
        },
        TranslationKind::Bang => None,
    }
}

/// Follow an exact rule sequence from `start`, returning true when some
/// path through it ends α-equal to `target`.
fn follow_rules(start: &SharingTerm, seq: &[SharingRule], target: &SharingTerm) -> bool {
    let mut frontier: Vec<SharingTerm> = vec![start.clone()];
    for rule in seq {
        let mut next: Vec<SharingTerm> = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        for t in &frontier {
            for (r, u) in sharing_redexes(t) {
                if r == *rule {
                    let c = u.canon();
                    if seen.insert(c.to_string()) {
                        next.push(c);
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.iter().any(|u| u.alpha_eq(target))
}

/// Check simulation and inverse simulation of the `kind` embedding on the
/// source term `t`:
///
/// * every source calculus step is simulated by the tabulated →! rule
///   sequence between translations,
/// * every source weak-evaluation step is simulated by its translated
///   rulename sequence,
/// * every →! step from the translation stays in the image grammar (up to
///   flattening) and inverts to at most one step of the inverse calculus.
pub fn check_simulation(t: &LscTerm, kind: TranslationKind, _caps: &Caps) -> PropertyReport {
    let start = Instant::now();
    let mut report = PropertyReport::new(format!("simulation-{kind}"));
    let calc = calc_of(kind);
    let image = translate(t, kind);

    // forward simulation of calculus steps with the tabulated rule sequence
    for (rule, t2) in lsc_redexes(t, calc) {
        report.instances += 1;
        let seq = match simulation_rule_seq(rule, kind) {
            Some(s) => s,
            None => {
                report.fail(t, format!("a rule sequence for {rule}"), "none tabulated");
                continue;
            }
        };
        let target = translate(&t2, kind);
        if !follow_rules(&image, &seq, &target) {
            let shown: Vec<String> = seq.iter().map(|r| r.to_string()).collect();
            report.fail(
                format!("{t} --{rule}--> {t2}"),
                format!("{image} --{}--> {target}", shown.join(",")),
                "no such path",
            );
        }
    }

    // forward simulation of weak evaluation with translated rulenames
    for (rho, t2) in weak_eval_steps(t, calc) {
        report.instances += 1;
        let seq = match translate_rulename(&rho, kind) {
            Ok(s) => s,
            Err(e) => {
                report.fail(t, format!("a rulename sequence for {rho}"), e);
                continue;
            }
        };
        let target = translate(&t2, kind);
        let mut frontier = vec![image.clone()];
        for name in &seq {
            let mut next = Vec::new();
            for s in &frontier {
                next.extend(weak_step_named_sharing(s, name));
            }
            frontier = next;
        }
        if !frontier.iter().any(|s| s.alpha_eq(&target)) {
            let shown: Vec<String> = seq.iter().map(|r| r.to_string()).collect();
            report.fail(
                format!("{t} --{rho}--> {t2}"),
                format!("{image} --{}--> {target}", shown.join(",")),
                "no such weak-evaluation path",
            );
        }
    }

    // image closure and inverse simulation of single →! steps
    let inv_calc = inverse_calc_of(kind);
    for (rule, s2) in sharing_redexes(&image) {
        report.instances += 1;
        let in_img = in_image(&s2, kind).is_some()
            || flatten_class(&s2).iter().any(|u| in_image(u, kind).is_some());
        if !in_img {
            report.fail(
                format!("{image} --{rule}--> {s2}"),
                format!("a term in the {kind} image (up to flattening)"),
                "not in the image",
            );
            continue;
        }
        let witness = if in_image(&s2, kind).is_some() {
            s2.clone()
        } else {
            flatten_class(&s2)
                .into_iter()
                .find(|u| in_image(u, kind).is_some())
                .unwrap()
        };
        let back = match inverse_lsc_image(&witness, kind) {
            Ok(b) => b,
            Err(e) => {
                report.fail(format!("{image} --{rule}--> {s2}"), "invertible image term", e);
                continue;
            }
        };
        let matched = back.alpha_eq(t)
            || lsc_redexes(t, inv_calc).iter().any(|(_, u)| u.alpha_eq(&back))
            || (kind == TranslationKind::Cbv && is_gcvlax_inv_step(t, &back));
        if !matched {
            report.fail(
                format!("{image} --{rule}--> {s2}"),
                format!("{t} itself or one {inv_calc:?} step from it"),
                format!("inverse is {back}"),
            );
        }
    }

    report.wall_time = start.elapsed();
    report
}

// ---------------------------------------------------------------------------
// Strong normalization

/// Outcome of the strong-normalization search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnResult {
    /// Every maximal →! sequence from the term terminates; the payload is
    /// the longest one.
    Normalizing { longest: usize },
    /// The step budget ran out (or a cycle was found) before closure.
    Timeout,
}

/// Compute the longest →! reduction from `t` by memoized depth-first
/// search, giving up after expanding `cap` distinct terms.
pub fn check_sn(t: &SharingTerm, cap: usize) -> SnResult {
    fn go(
        t: &SharingTerm,
        memo: &mut HashMap<String, usize>,
        stack: &mut HashSet<String>,
        budget: &mut usize,
    ) -> Option<usize> {
        let key = t.canon().to_string();
        if let Some(&n) = memo.get(&key) {
            return Some(n);
        }
        if stack.contains(&key) || *budget == 0 {
            return None; // cycle or out of budget
        }
        *budget -= 1;
        stack.insert(key.clone());
        let mut longest = 0;
        for (_, u) in sharing_redexes(t) {
            longest = longest.max(1 + go(&u, memo, stack, budget)?);
        }
        stack.remove(&key);
        memo.insert(key, longest);
        Some(longest)
    }
    let mut budget = cap;
    match go(t, &mut HashMap::new(), &mut HashSet::new(), &mut budget) {
        Some(longest) => SnResult::Normalizing { longest },
        None => SnResult::Timeout,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_lsc, parse_sharing};

    #[test]
    fn confluence_on_a_flattening_peak() {
        // reductions under ! produce answers that differ only by chain
        // position, joinable modulo flattening
        let t = parse_sharing("u0[u := (!v)[v := (!~u1)[w := !u2]]]").unwrap();
        let r = check_confluence_mod_flatten(&t, &Caps::default());
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!(r.inconclusive, 0);
    }

    #[test]
    fn simulation_of_a_cbn_ls_step() {
        let t = parse_lsc("x[x := y]").unwrap();
        let r = check_simulation(&t, TranslationKind::Cbn, &Caps::default());
        assert!(r.ok(), "{:?}", r.failures);
        assert!(r.instances > 0);
    }

    #[test]
    fn simulation_across_kinds_on_a_beta_redex() {
        let t = parse_lsc("(\\x. x) y").unwrap();
        for kind in [
            TranslationKind::Cbn,
            TranslationKind::Cbv,
            TranslationKind::Cbs,
        ] {
            let r = check_simulation(&t, kind, &Caps::default());
            assert!(r.ok(), "{kind}: {:?}", r.failures);
        }
    }

    #[test]
    fn sn_on_typed_fixtures() {
        let t = crate::translations::tra_cbn(&parse_lsc("(\\x. x) (\\y. y)").unwrap());
        match check_sn(&t, 5_000) {
            SnResult::Normalizing { longest } => assert!(longest > 0 && longest <= 5_000),
            SnResult::Timeout => panic!("typed fixture timed out"),
        }
    }

    #[test]
    fn sn_times_out_on_omega() {
        let omega = parse_lsc("(\\x. x x) (\\x. x x)").unwrap();
        let t = crate::translations::tra_cbn(&omega);
        assert_eq!(check_sn(&t, 200), SnResult::Timeout);
    }
}
