//! Acceptance suite: one test per headline property, each exhaustive over
//! all terms below a size bound and each ending in a single PASS/FAIL line.

use std::collections::{BTreeMap, HashSet};
use std::process::Command;

use sharelam::bang::{
    bang_check, bang_is_nf, bang_redexes, canonical_unfold, der_unfold, infer_bang,
};
use sharelam::lsc::{
    infer_lsc, lsc_check_at, lsc_is_nf, lsc_redexes, weak_eval_steps, Calculus, LscRule,
};
use sharelam::lsc::fusion_closure;
use sharelam::mscll::{check_derivation, compile_typing, neg, sequent_of, Formula};
use sharelam::oracle::{
    check_confluence_mod_flatten, check_sn, simulation_rule_seq, stream_bang, stream_lsc,
    stream_sharing, Caps, SnResult,
};
use sharelam::oracle::sharing_graph;
use sharelam::sharing::{
    classify_nf, equiv_flatten, flatten_class, sharing_is_nf, sharing_redexes, to_lsc,
    typecheck_sharing, typing_derivation, weak_eval_sharing, weak_step_named_sharing,
    SharingRule, SharingType, TypingEnv,
};
use sharelam::syntax::bang_term::BangTerm;
use sharelam::syntax::lsc_term::{pv, LscTerm};
use sharelam::syntax::sharing_term::{lv, uv, SharingTerm};
use sharelam::translations::{
    inverse_bang_image, inverse_lsc_image, tra_bang, tra_cbn, tra_cbs, tra_cbv,
    translate_rulename, TranslationKind,
};
use sharelam::VarName;

// ---------------------------------------------------------------------------
// shared machinery

/// Collects counterexamples and renders the single verdict line.
struct Verdict {
    criterion: u32,
    title: &'static str,
    instances: u64,
    failures: Vec<String>,
}

impl Verdict {
    fn new(criterion: u32, title: &'static str) -> Verdict {
        Verdict { criterion, title, instances: 0, failures: Vec::new() }
    }

    fn seen(&mut self) {
        self.instances += 1;
    }

    fn fail(&mut self, msg: impl Into<String>) {
        if self.failures.len() < 5 {
            self.failures.push(msg.into());
        } else {
            self.failures.push(String::new());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!(
                "criterion {:2} ({}): PASS [{} instances]",
                self.criterion, self.title, self.instances
            );
        } else {
            println!(
                "criterion {:2} ({}): FAIL [{} instances, {} counterexamples; first: {}]",
                self.criterion,
                self.title,
                self.instances,
                self.failures.len(),
                self.failures[0]
            );
            panic!("criterion {} failed", self.criterion);
        }
    }
}

fn lsc_pool2() -> Vec<VarName> {
    vec![pv("x"), pv("y")]
}

fn lsc_pool3() -> Vec<VarName> {
    vec![pv("x"), pv("y"), pv("z")]
}

fn sharing_pool2() -> Vec<VarName> {
    vec![uv("u"), uv("v")]
}

fn sharing_pool4() -> Vec<VarName> {
    vec![uv("u"), uv("v"), lv("a"), lv("c")]
}

const LSC_KINDS: [TranslationKind; 3] =
    [TranslationKind::Cbn, TranslationKind::Cbv, TranslationKind::Cbs];

fn tra(t: &LscTerm, kind: TranslationKind) -> SharingTerm {
    match kind {
        TranslationKind::Cbn => tra_cbn(t),
        TranslationKind::Cbv => tra_cbv(t),
        TranslationKind::Cbs => tra_cbs(t),
        TranslationKind::Bang => unreachable!(),
    }
}

fn calc_of(kind: TranslationKind) -> Calculus {
    match kind {
        TranslationKind::Cbn => Calculus::Cbn,
        TranslationKind::Cbv => Calculus::Cbv,
        TranslationKind::Cbs => Calculus::Cbs,
        TranslationKind::Bang => unreachable!(),
    }
}

/// The calculus in which a single →! step from a `kind` image inverts.
fn inverse_calc_of(kind: TranslationKind) -> Calculus {
    match kind {
        TranslationKind::Cbn => Calculus::Cbn,
        TranslationKind::Cbv => Calculus::Cbv,
        TranslationKind::Cbs => Calculus::Cbs,
        TranslationKind::Bang => unreachable!(),
    }
}

/// Follow an exact →! rule sequence, true when some path ends at `target`.
fn follow_rules(start: &SharingTerm, seq: &[SharingRule], target: &SharingTerm) -> bool {
    let mut frontier: Vec<SharingTerm> = vec![start.clone()];
    for rule in seq {
        let mut next = Vec::new();
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

// ---------------------------------------------------------------------------
// 1. left inverse of the four translations

#[test]
fn c01_translation_left_inverse() {
    let mut v = Verdict::new(1, "translation left inverse");
    let pool = lsc_pool3();
    for n in 1..=8 {
        stream_lsc(n, &pool, &mut |t| {
            for kind in LSC_KINDS {
                v.seen();
                match inverse_lsc_image(&tra(&t, kind), kind) {
                    Ok(back) if back.alpha_eq(&t) => {}
                    Ok(back) => v.fail(format!("{kind}: {t} inverts to {back}")),
                    Err(e) => v.fail(format!("{kind}: {t} fails to invert: {e}")),
                }
            }
        });
    }
    for n in 1..=8 {
        stream_bang(n, &pool, false, &mut |t| {
            v.seen();
            match tra_bang(&t).and_then(|s| inverse_bang_image(&s)) {
                Ok(back) if back.alpha_eq(&t) => {}
                Ok(back) => v.fail(format!("bang: {t} inverts to {back}")),
                Err(e) => v.fail(format!("bang: {t} fails to invert: {e}")),
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 2. simulation of calculus steps with bounded →! sequences

#[test]
fn c02_simulation_step_bounds() {
    let mut v = Verdict::new(2, "simulation step bounds");
    let pool = lsc_pool2();
    for n in 1..=7 {
        stream_lsc(n, &pool, &mut |t| {
            for kind in LSC_KINDS {
                let calc = calc_of(kind);
                let image = tra(&t, kind);
                for (rule, t2) in lsc_redexes(&t, calc) {
                    v.seen();
                    let seq = match simulation_rule_seq(rule, kind) {
                        Some(s) => s,
                        None => {
                            v.fail(format!("{kind}: no sequence for {rule}"));
                            continue;
                        }
                    };
                    let len_ok = match kind {
                        TranslationKind::Cbn => (1..=2).contains(&seq.len()),
                        TranslationKind::Cbv => (1..=4).contains(&seq.len()),
                        TranslationKind::Cbs => match rule {
                            LscRule::Db => seq.len() == 2,
                            LscRule::Lsw | LscRule::Gc => seq.len() == 1,
                            _ => false,
                        },
                        TranslationKind::Bang => false,
                    };
                    if !len_ok {
                        v.fail(format!("{kind}: {rule} sequence length {}", seq.len()));
                        continue;
                    }
                    if !follow_rules(&image, &seq, &tra(&t2, kind)) {
                        v.fail(format!("{kind}: {t} --{rule}--> {t2} not simulated"));
                    }
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 3. image closure and inverse single-step simulation

/// Invert an image-reachable term, falling back to its flattening class.
fn invert_mod_flatten(s: &SharingTerm, kind: TranslationKind) -> Option<LscTerm> {
    if let Ok(b) = inverse_lsc_image(s, kind) {
        return Some(b);
    }
    flatten_class(s)
        .iter()
        .find_map(|f| inverse_lsc_image(f, kind).ok())
}

fn invert_bang_mod_flatten(s: &SharingTerm) -> Option<BangTerm> {
    if let Ok(b) = inverse_bang_image(s) {
        return Some(b);
    }
    flatten_class(s).iter().find_map(|f| inverse_bang_image(f).ok())
}

#[test]
fn c03_image_closure_and_inverse_simulation() {
    let mut v = Verdict::new(3, "image closure and inverse simulation");
    let caps = Caps::default();
    let pool = lsc_pool2();
    for n in 1..=6 {
        stream_lsc(n, &pool, &mut |t| {
            for kind in LSC_KINDS {
                let inv_calc = inverse_calc_of(kind);
                let g = sharing_graph(&tra(&t, kind), &caps);
                if g.truncated {
                    v.fail(format!("{kind}: graph of {t} truncated"));
                    return;
                }
                for node in &g.nodes {
                    v.seen();
                    let back = match invert_mod_flatten(node, kind) {
                        Some(b) => b,
                        None => {
                            v.fail(format!("{kind}: {node} escapes the image"));
                            continue;
                        }
                    };
                    let succ = lsc_redexes(&back, inv_calc);
                    for (_r, s2) in sharing_redexes(node) {
                        let back2 = match invert_mod_flatten(&s2, kind) {
                            Some(b) => b,
                            None => {
                                v.fail(format!("{kind}: step target {s2} escapes the image"));
                                continue;
                            }
                        };
                        // ▷V additionally allows inserting one dead lax-value
                        // substitution: back2 undoes it with a gcvlax step
                        let ok = back2.alpha_eq(&back)
                            || succ.iter().any(|(_, u)| u.alpha_eq(&back2))
                            || (kind == TranslationKind::Cbv
                                && lsc_redexes(&back2, Calculus::Cbv)
                                    .iter()
                                    .any(|(r, u)| *r == LscRule::GcvLax && u.alpha_eq(&back)));
                        if !ok {
                            v.fail(format!(
                                "{kind}: {back} does not reach {back2} in one {inv_calc:?} step"
                            ));
                        }
                    }
                }
            }
        });
    }
    // the Bang embedding, with simplified Bang steps on the inverse side
    for n in 1..=6 {
        stream_bang(n, &pool, false, &mut |t| {
            let image = tra_bang(&t).expect("simplified terms translate");
            let g = sharing_graph(&image, &caps);
            if g.truncated {
                v.fail(format!("bang: graph of {t} truncated"));
                return;
            }
            for node in &g.nodes {
                v.seen();
                let back = match invert_bang_mod_flatten(node) {
                    Some(b) => b,
                    None => {
                        v.fail(format!("bang: {node} escapes the image"));
                        continue;
                    }
                };
                let succ = bang_redexes(&back, true).expect("inverse output is simplified");
                for (_r, s2) in sharing_redexes(node) {
                    let back2 = match invert_bang_mod_flatten(&s2) {
                        Some(b) => b,
                        None => {
                            v.fail(format!("bang: step target {s2} escapes the image"));
                            continue;
                        }
                    };
                    let ok = back2.alpha_eq(&back)
                        || succ.iter().any(|(_, u)| u.alpha_eq(&back2));
                    if !ok {
                        v.fail(format!("bang: {back} does not reach {back2} in one step"));
                    }
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 4. normal-form preservation

#[test]
fn c04_normal_form_preservation() {
    let mut v = Verdict::new(4, "normal-form preservation");
    let pool = lsc_pool2();
    for n in 1..=8 {
        stream_lsc(n, &pool, &mut |t| {
            for kind in LSC_KINDS {
                v.seen();
                let src_nf = lsc_is_nf(&t, calc_of(kind));
                let img_nf = sharing_is_nf(&tra(&t, kind));
                if src_nf != img_nf {
                    v.fail(format!("{kind}: {t} nf={src_nf} but image nf={img_nf}"));
                }
            }
        });
    }
    for n in 1..=8 {
        stream_bang(n, &pool, false, &mut |t| {
            v.seen();
            let src_nf = bang_is_nf(&t, true).unwrap();
            let img_nf = sharing_is_nf(&tra_bang(&t).unwrap());
            if src_nf != img_nf {
                v.fail(format!("bang: {t} nf={src_nf} but image nf={img_nf}"));
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 5. normal-form grammar adequacy

#[test]
fn c05_nf_grammar_adequacy() {
    let mut v = Verdict::new(5, "normal-form grammar adequacy");
    let pool = sharing_pool4();
    for n in 1..=9 {
        stream_sharing(n, &pool, &mut |t| {
            v.seen();
            let in_grammar = classify_nf(&t).is_some();
            let irreducible = sharing_is_nf(&t);
            if in_grammar != irreducible {
                v.fail(format!("{t}: grammar={in_grammar} irreducible={irreducible}"));
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 6. subject reduction in all three typed calculi

/// `inst` is an instance of `gen` under a consistent atom substitution.
fn sharing_instance(
    gen: &SharingType,
    inst: &SharingType,
    m: &mut BTreeMap<String, SharingType>,
) -> bool {
    match (gen, inst) {
        (SharingType::Atom(a), s) => match m.get(a) {
            Some(prev) => prev == s,
            None => {
                m.insert(a.clone(), s.clone());
                true
            }
        },
        (SharingType::Lolli(a, b), SharingType::Lolli(c, d)) => {
            sharing_instance(a, c, m) && sharing_instance(b, d, m)
        }
        (SharingType::Grant(a), SharingType::Grant(b)) => sharing_instance(a, b, m),
        (SharingType::Bang(a), SharingType::Bang(b)) => sharing_instance(a, b, m),
        _ => false,
    }
}

/// Move every atom into a namespace the checker's fresh-name generator
/// never uses, so pinned environment atoms cannot collide with fresh ones.
fn pin_atoms(ty: &SharingType) -> SharingType {
    match ty {
        SharingType::Atom(a) => SharingType::Atom(format!("#{a}")),
        SharingType::Lolli(a, b) => SharingType::lolli(pin_atoms(a), pin_atoms(b)),
        SharingType::Grant(a) => SharingType::grant(pin_atoms(a)),
        SharingType::Bang(a) => SharingType::bang(pin_atoms(a)),
    }
}

#[test]
fn c06_subject_reduction() {
    let mut v = Verdict::new(6, "subject reduction");
    // sharing calculus, with two ambient linear variables
    let mut env = TypingEnv::default();
    env.gamma.insert(lv("a"), SharingType::Atom("k0".into()));
    env.gamma.insert(lv("c"), SharingType::Atom("k1".into()));
    let pool = sharing_pool4();
    for n in 1..=8 {
        stream_sharing(n, &pool, &mut |t| {
            let d = match typing_derivation(&env, &t) {
                Ok(d) => d,
                Err(_) => return,
            };
            let env2 = TypingEnv {
                delta: d.delta.iter().map(|(x, a)| (x.clone(), pin_atoms(a))).collect(),
                gamma: env.gamma.iter().map(|(x, a)| (x.clone(), pin_atoms(a))).collect(),
            };
            let expected = pin_atoms(&d.ty);
            for (rule, t2) in sharing_redexes(&t) {
                v.seen();
                match typecheck_sharing(&env2, &t2) {
                    Ok((ty2, _)) => {
                        let mut m = BTreeMap::new();
                        if !sharing_instance(&ty2, &expected, &mut m) {
                            v.fail(format!("{t} --{rule}--> {t2}: {expected} vs {ty2}"));
                        }
                    }
                    Err(e) => v.fail(format!("{t} --{rule}--> {t2}: untypable ({e})")),
                }
            }
        });
    }
    // LSC, all four calculi
    let lpool = lsc_pool2();
    for n in 1..=8 {
        stream_lsc(n, &lpool, &mut |t| {
            let (lenv, ty) = match infer_lsc(&t) {
                Some(p) => p,
                None => return,
            };
            for calc in [Calculus::Cbn, Calculus::Cbv, Calculus::Cbs, Calculus::Cbnd] {
                for (rule, t2) in lsc_redexes(&t, calc) {
                    v.seen();
                    if !lsc_check_at(&lenv, &t2, &ty) {
                        v.fail(format!("lsc {t} --{rule}--> {t2}: loses type {ty}"));
                    }
                }
            }
        });
    }
    // full Bang calculus
    for n in 1..=8 {
        stream_bang(n, &lpool, true, &mut |t| {
            let (benv, ty) = match infer_bang(&t) {
                Some(p) => p,
                None => return,
            };
            for (rule, t2) in bang_redexes(&t, false).unwrap() {
                v.seen();
                if !bang_check(&benv, &t2, &ty) {
                    v.fail(format!("bang {t} --{rule}--> {t2}: loses type {ty}"));
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 7. confluence modulo flattening

#[test]
fn c07_confluence_modulo_flattening() {
    let mut v = Verdict::new(7, "confluence modulo flattening");
    let caps = Caps::default();
    let pool = sharing_pool2();
    for n in 1..=8 {
        stream_sharing(n, &pool, &mut |t| {
            v.seen();
            let r = check_confluence_mod_flatten(&t, &caps);
            if !r.ok() {
                v.fail(format!("{t}: {}", r.summary()));
            } else if r.inconclusive > 0 {
                v.fail(format!("{t}: truncated search"));
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 8. flattening strong bisimulation and gc-postponement

/// All terms reachable from `t` by !gc steps only (including `t`).
fn gc_closure(t: &SharingTerm) -> Vec<SharingTerm> {
    let mut out = vec![t.canon()];
    let mut seen: HashSet<String> = out.iter().map(|u| u.to_string()).collect();
    let mut i = 0;
    while i < out.len() {
        for (r, u) in sharing_redexes(&out[i]) {
            if r == SharingRule::Sgc {
                let c = u.canon();
                if seen.insert(c.to_string()) {
                    out.push(c);
                }
            }
        }
        i += 1;
    }
    out
}

#[test]
fn c08_flattening_bisimulation_and_gc_postponement() {
    let mut v = Verdict::new(8, "flattening bisimulation and gc-postponement");
    let pool = sharing_pool2();
    for n in 1..=8 {
        stream_sharing(n, &pool, &mut |t| {
            let steps = sharing_redexes(&t);
            // ≡ is a strong bisimulation: each step from t is matched by an
            // equally-labelled step from every flattening-equivalent term
            for t2 in flatten_class(&t) {
                if t2.alpha_eq(&t) {
                    continue;
                }
                let steps2 = sharing_redexes(&t2);
                for (r, s) in &steps {
                    v.seen();
                    if !steps2.iter().any(|(r2, s2)| r2 == r && equiv_flatten(s, s2)) {
                        v.fail(format!("{t} --{r}--> {s} unmatched from {t2}"));
                    }
                }
            }
            // gc-postponement: a gc step followed by another rule can be
            // reordered to that rule first, then gc steps
            for (r1, s) in &steps {
                if *r1 != SharingRule::Sgc {
                    continue;
                }
                for (r2, target) in sharing_redexes(s) {
                    if r2 == SharingRule::Sgc {
                        continue;
                    }
                    v.seen();
                    let ok = steps.iter().any(|(ra, u)| {
                        *ra == r2 && gc_closure(u).iter().any(|w| w.alpha_eq(&target))
                    });
                    if !ok {
                        v.fail(format!("{t} --!gc--> {s} --{r2}--> {target} cannot postpone"));
                    }
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 9. strong normalization of typed terms, with simulation up to fusion

#[test]
fn c09_sn_of_typed_terms() {
    let mut v = Verdict::new(9, "strong normalization of typed terms");
    let env = TypingEnv::default();
    let pool = sharing_pool2();
    for n in 1..=8 {
        stream_sharing(n, &pool, &mut |t| {
            if typecheck_sharing(&env, &t).is_err() {
                return;
            }
            v.seen();
            match check_sn(&t, 5000) {
                SnResult::Normalizing { .. } => {}
                SnResult::Timeout => v.fail(format!("{t}: hit the step cap")),
            }
        });
    }
    // simulation up to fusion: each non-gc step maps to ≥1 LSC steps
    // whose endpoint fuses to the image of the target
    for n in 1..=7 {
        stream_sharing(n, &pool, &mut |t| {
            if typecheck_sharing(&env, &t).is_err() {
                return;
            }
            let start = to_lsc(&t);
            for (rule, s) in sharing_redexes(&t) {
                if rule == SharingRule::Sgc {
                    continue;
                }
                v.seen();
                let target = to_lsc(&s);
                let mut frontier = vec![start.canon()];
                let mut found = false;
                'depth: for _ in 0..3 {
                    let mut next = Vec::new();
                    let mut seen: HashSet<String> = HashSet::new();
                    for u in &frontier {
                        for (_, w) in lsc_redexes(u, Calculus::Cbn) {
                            let c = w.canon();
                            if seen.insert(c.to_string()) {
                                next.push(c);
                            }
                        }
                    }
                    for w in &next {
                        if fusion_closure(w).iter().any(|f| f.alpha_eq(&target)) {
                            found = true;
                            break 'depth;
                        }
                    }
                    frontier = next;
                    if frontier.is_empty() {
                        break;
                    }
                }
                if !found {
                    v.fail(format!("{t} --{rule}--> {s}: image step not fused"));
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 10. weak-evaluation containment and rulename-translation simulation

#[test]
fn c10_weak_evaluation() {
    let mut v = Verdict::new(10, "weak evaluation containment and simulation");
    let pool = lsc_pool2();
    for n in 1..=7 {
        stream_lsc(n, &pool, &mut |t| {
            for kind in LSC_KINDS {
                let calc = calc_of(kind);
                let succ = lsc_redexes(&t, calc);
                let image = tra(&t, kind);
                for (rho, t2) in weak_eval_steps(&t, calc) {
                    // containment in the full calculus
                    v.seen();
                    if !succ.iter().any(|(_, u)| u.alpha_eq(&t2)) {
                        v.fail(format!("{calc:?}: weak step {t} -> {t2} not a calculus step"));
                        continue;
                    }
                    // rulename-translation simulation on weak sharing steps
                    let names = match translate_rulename(&rho, kind) {
                        Ok(ns) => ns,
                        Err(e) => {
                            v.fail(format!("{kind}: rulename untranslatable: {e}"));
                            continue;
                        }
                    };
                    let mut frontier = vec![image.clone()];
                    for name in &names {
                        let mut next = Vec::new();
                        let mut seen: HashSet<String> = HashSet::new();
                        for u in &frontier {
                            for w in weak_step_named_sharing(u, name) {
                                let c = w.canon();
                                if seen.insert(c.to_string()) {
                                    next.push(c);
                                }
                            }
                        }
                        frontier = next;
                    }
                    let target = tra(&t2, kind);
                    if !frontier.iter().any(|u| u.alpha_eq(&target)) {
                        v.fail(format!("{kind}: weak step {t} -> {t2} not simulated"));
                    }
                }
            }
        });
    }
    // sharing weak evaluation is contained in →!
    let spool = sharing_pool2();
    for n in 1..=7 {
        stream_sharing(n, &spool, &mut |t| {
            let succ = sharing_redexes(&t);
            for (name, t2) in weak_eval_sharing(&t) {
                v.seen();
                let ok = succ
                    .iter()
                    .any(|(r, u)| r.to_string() == name.to_string() && u.alpha_eq(&t2));
                if !ok {
                    v.fail(format!("sharing weak step {t} --{name}--> {t2} not a step"));
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 11. full/simplified Bang mutual simulation through unfolding

#[test]
fn c11_bang_mutual_simulation() {
    let mut v = Verdict::new(11, "full/simplified Bang mutual simulation");
    let pool = lsc_pool2();
    for n in 1..=7 {
        stream_bang(n, &pool, true, &mut |t| {
            let s = canonical_unfold(&t);
            v.seen();
            if !der_unfold(&t, &s) {
                v.fail(format!("{t}: canonical unfolding {s} not related"));
                return;
            }
            // forward: each full step is matched by simplified steps from s
            for (rule, t2) in bang_redexes(&t, false).unwrap() {
                v.seen();
                let mut frontier = vec![s.canon()];
                let mut matched = der_unfold(&t2, &s);
                'f: for _ in 0..2 {
                    let mut next = Vec::new();
                    let mut seen: HashSet<String> = HashSet::new();
                    for u in &frontier {
                        for (_, w) in bang_redexes(u, true).unwrap() {
                            let c = w.canon();
                            if seen.insert(c.to_string()) {
                                next.push(c);
                            }
                        }
                    }
                    for w in &next {
                        if der_unfold(&t2, w) {
                            matched = true;
                            break 'f;
                        }
                    }
                    frontier = next;
                }
                if !matched {
                    v.fail(format!("full step {t} --{rule}--> {t2} unmatched"));
                }
            }
            // backward: each simplified step from s is matched by ≤1 full step
            for (rule, s1) in bang_redexes(&s, true).unwrap() {
                v.seen();
                let matched = der_unfold(&t, &s1)
                    || bang_redexes(&t, false)
                        .unwrap()
                        .iter()
                        .any(|(_, t1)| der_unfold(t1, &s1));
                if !matched {
                    v.fail(format!("simplified step {s} --{rule}--> {s1} unmatched from {t}"));
                }
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 12. logic layer: negation involution and compilation soundness

fn formulas_up_to(size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); size + 1];
    if size >= 1 {
        by_size[1] = vec![Formula::PosAtom("a".into()), Formula::NegAtom("a".into())];
    }
    for n in 2..=size {
        let mut fs = Vec::new();
        for f in by_size[n - 1].clone() {
            fs.push(Formula::ofcourse(f.clone()));
            fs.push(Formula::whynot(f.clone()));
            fs.push(Formula::grantf(f.clone()));
            fs.push(Formula::demandf(f));
        }
        for k in 1..n - 1 {
            for l in by_size[k].clone() {
                for r in by_size[n - 1 - k].clone() {
                    fs.push(Formula::tensor(l.clone(), r.clone()));
                    fs.push(Formula::par(l.clone(), r));
                }
            }
        }
        by_size[n] = fs;
    }
    by_size.into_iter().flatten().collect()
}

#[test]
fn c12_logic_layer() {
    let mut v = Verdict::new(12, "negation involution and compilation soundness");
    for f in formulas_up_to(7) {
        v.seen();
        if neg(&neg(&f)) != f {
            v.fail(format!("negation not involutive on {f}"));
        }
        // the De Morgan laws, checked one constructor at a time
        let g = Formula::PosAtom("a".into());
        if neg(&Formula::tensor(f.clone(), g.clone()))
            != Formula::par(neg(&f), neg(&g))
            || neg(&Formula::ofcourse(f.clone())) != Formula::whynot(neg(&f))
            || neg(&Formula::grantf(f.clone())) != Formula::demandf(neg(&f))
        {
            v.fail(format!("De Morgan fails under {f}"));
        }
    }
    // deep deterministic samples (all-unary towers over each atom polarity)
    for depth in [8usize, 12, 16] {
        for start in [Formula::PosAtom("a".into()), Formula::NegAtom("a".into())] {
            v.seen();
            let mut f = start;
            for i in 0..depth {
                f = match i % 4 {
                    0 => Formula::ofcourse(f),
                    1 => Formula::grantf(f),
                    2 => Formula::whynot(f),
                    _ => Formula::demandf(f),
                };
            }
            if neg(&neg(&f)) != f {
                v.fail(format!("negation not involutive at depth {depth}"));
            }
        }
    }
    // compilation of every typable term's derivation checks and concludes
    // the judgment's sequent
    let mut env = TypingEnv::default();
    env.gamma.insert(lv("a"), SharingType::Atom("k0".into()));
    let pool = vec![uv("u"), uv("v"), lv("a")];
    for n in 1..=7 {
        stream_sharing(n, &pool, &mut |t| {
            let d = match typing_derivation(&env, &t) {
                Ok(d) => d,
                Err(_) => return,
            };
            v.seen();
            match compile_typing(&d) {
                Ok(der) => {
                    if der.conclusion != sequent_of(&d) {
                        v.fail(format!("{t}: wrong concluding sequent"));
                    } else if let Err(es) = check_derivation(&der) {
                        v.fail(format!("{t}: derivation rejected: {}", es[0]));
                    }
                }
                Err(e) => v.fail(format!("{t}: compilation failed: {e}")),
            }
        });
    }
    v.finish();
}

// ---------------------------------------------------------------------------
// 13. golden command-line transcripts

fn run_cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_sharelam"))
        .args(args)
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).expect("utf-8 output"), out.status.code().unwrap())
}

#[test]
fn c13_golden_cli_transcripts() {
    let mut v = Verdict::new(13, "golden command-line transcripts");
    let cases: &[(&[&str], &str, i32)] = &[
        (
            &["typecheck", "--lang", "sharing", "\\'a. (!~(!u))[u := 'a]"],
            "!~A -o !~(!~A)\n",
            0,
        ),
        (&["translate", "--kind", "cbn", "\\x. x"], "\\'a. open(x)[x := 'a]\n", 0),
        (
            &["reduce", "--calculus", "sharing", "--trace", "--max-steps", "1",
              "open((~'a)[u := !v])"],
            "open((~'a)[u := !v])\n--!req--> 'a[u := !v]\n",
            0,
        ),
        (
            &["eval", "--calculus", "sharing", "--trace", "(!u)[u := !~v]"],
            "(!u)[u := !~v]\n--!ls--> (!~v)[u := !~v]\n--!gc--> !~v\n",
            0,
        ),
        (
            &["eval", "--calculus", "sharing", "--trace", "(u v)[u := !((\\'a.'a)(~w))]"],
            "(u v)[u := !((\\'a. 'a) ~w)]\n--!db--> (u v)[u := !~w]\n--!ls--> (~w v)[u := !~w]\n--!gc--> ~w v\n",
            0,
        ),
        (
            &["reduce", "--calculus", "sharing", "--trace",
              "u0[u := (!v)[v := (!~u1)[w := !u2]]]"],
            "u0[u := (!v)[v := (!~u1)[w := !u2]]]\n--!gc--> u0[v := (!~u1)[w := !u2]]\n--!gc--> u0[w := !u2]\n--!gc--> u0\n",
            0,
        ),
        (&["nf", "(open(u) open(u))[u := !v]"], "app\n", 0),
        (&["typecheck", "--lang", "lsc", "x x"], "", 1),
    ];
    for (args, want_out, want_code) in cases {
        v.seen();
        let (out, code) = run_cli(args);
        if out != *want_out || code != *want_code {
            v.fail(format!(
                "{:?}: got exit {code} output {:?}, want exit {want_code} output {:?}",
                args, out, want_out
            ));
        }
    }
    v.finish();
}
