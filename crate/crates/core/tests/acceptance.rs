//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{ab, load, Gen};
use lassokit::langops::{compile_dfa, root};
use lassokit::lasso::{
    enumerate_lassos, equivalents_within, gamma_equiv, normal_form, up_equal, Lasso,
};
use lassokit::lassoaut::equivalent_lasso;
use lassokit::lassoexp::{
    compile_df, compile_lasso, compile_lasso_labeled, d1_general, d2_general, member_lasso_naive,
    parse_lexp, DisjunctiveForm, LassoExpr,
};
use lassokit::omega::{gamma_map, h_map, omega_to_omega_automaton, parse_oexp, represent, to_nba, up_member};
use lassokit::ratexp::{deriv, member_naive, normalize_b, parse_rexp, split, RatExpr};
use lassokit::LassoAutomaton;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lasso(s: &str) -> Lasso {
    Lasso::parse(s).unwrap()
}

fn rexp(s: &str) -> RatExpr {
    parse_rexp(s, &ab()).unwrap()
}

fn is_a_star(w: &str) -> bool {
    w.chars().all(|c| c == 'a')
}

fn criterion_1() -> Outcome {
    let unsat = load("unsat.lauto");
    let mut checked = 0;
    for l in enumerate_lassos(&ab(), 6, 6) {
        let want = is_a_star(l.spoke()) && l.cycle().starts_with('b') && is_a_star(&l.cycle()[1..]);
        ensure!(unsat.accepts(&l).unwrap() == want, "mismatch on {l}");
        checked += 1;
    }
    ensure!(unsat.accepts(&lasso("aaa:baa")).unwrap(), "aaa:baa rejected");
    Ok(format!("{checked} lassos, 0 mismatches"))
}

/// Every γ-class within the bounds is accepted or rejected as a whole.
fn brute_force_saturated(a: &LassoAutomaton, bound: usize) -> Option<(Lasso, Lasso)> {
    let mut seen: HashMap<Lasso, (Lasso, bool)> = HashMap::new();
    for l in enumerate_lassos(a.alphabet(), bound, bound) {
        let acc = a.accepts(&l).unwrap();
        let nf = normal_form(&l);
        match seen.get(&nf) {
            Some((other, b)) if *b != acc => return Some((other.clone(), l)),
            Some(_) => {}
            None => {
                seen.insert(nf, (l, acc));
            }
        }
    }
    None
}

fn criterion_2() -> Outcome {
    let unsat = load("unsat.lauto");
    let (acc, rej) = unsat.saturation_counterexample().unwrap().ok_or("unsat reported saturated")?;
    ensure!(gamma_equiv(&acc, &rej), "{acc} and {rej} are not γ-equivalent");
    ensure!(normal_form(&acc) == lasso(":b"), "counterexample class is {}", normal_form(&acc));
    ensure!(unsat.accepts(&acc).unwrap() && !unsat.accepts(&rej).unwrap(), "acceptance does not differ");
    let a_tail = load("a_tail.lauto");
    ensure!(a_tail.is_saturated().unwrap(), "a_tail reported unsaturated");
    if let Some((x, y)) = brute_force_saturated(&a_tail, 5) {
        return Err(format!("a_tail brute force refutes saturation: {x} vs {y}"));
    }
    Ok(format!("unsat counterexample ({acc}, {rej}); a_tail saturated, brute force up to 5 agrees"))
}

fn criterion_3() -> Outcome {
    let rho = parse_lexp("b(a*b@)", &ab()).unwrap();
    let mut checked = 0;
    for l in enumerate_lassos(&ab(), 6, 6) {
        let want = l.spoke().starts_with('b') && is_a_star(&l.spoke()[1..]) && l.cycle() == "b";
        ensure!(member_lasso_naive(&rho, &l) == want, "mismatch on {l}");
        checked += 1;
    }
    let aut = compile_lasso(&rho, &ab()).unwrap();
    let diff = equivalent_lasso(&aut, &load("b_astar_b.lauto")).unwrap();
    ensure!(diff.is_none(), "compiled automaton differs from b_astar_b on {}", diff.unwrap());
    Ok(format!("{checked} lassos, equivalent to b_astar_b"))
}

fn criterion_4() -> Outcome {
    let rho = parse_lexp("b(ab)*(ab*)@", &ab()).unwrap();
    let (aut, spokes, loops) = compile_lasso_labeled(&rho, &ab()).unwrap();
    ensure!(
        aut.reachable_spokes().len() == 3 && spokes.len() == 3,
        "spoke states: {}",
        spokes.len()
    );
    ensure!(loops.len() == 2, "loop states: {}", loops.len());
    for l in enumerate_lassos(&ab(), 5, 5) {
        ensure!(aut.accepts(&l).unwrap() == member_lasso_naive(&rho, &l), "mismatch on {l}");
    }
    let names: Vec<String> = loops.iter().map(ToString::to_string).collect();
    Ok(format!("3 spoke + 2 loop states (loops {names:?}), agrees up to 5"))
}

fn criterion_5() -> Outcome {
    let rho = parse_lexp("b(ab)*(ab*)@", &ab()).unwrap();
    let aut = compile_lasso(&rho, &ab()).unwrap();
    let e = aut.extract_expr().unwrap();
    let back = compile_lasso(&e, &ab()).unwrap();
    ensure!(equivalent_lasso(&aut, &back).unwrap().is_none(), "round trip differs");
    let drawn = load("b_ab_loop.lauto");
    ensure!(equivalent_lasso(&aut, &drawn).unwrap().is_none(), "differs from the b_ab_loop fixture");
    let e_drawn = drawn.extract_expr().unwrap();
    let back_drawn = compile_lasso(&e_drawn, &ab()).unwrap();
    ensure!(equivalent_lasso(&drawn, &back_drawn).unwrap().is_none(), "b_ab_loop round trip differs");
    Ok(format!("extracted {e_drawn}"))
}

fn criterion_6() -> Outcome {
    let listed = [
        ("1", "b(a+b*)"),
        ("b", "1(a+b*)"),
        ("b1", "a"),
        ("ba", "1"),
        ("bb*1", "bb*"),
        ("bb*b", "1b*"),
        ("b1", "1"),
        ("bb*b", "1"),
    ];
    let want: BTreeSet<(RatExpr, RatExpr)> =
        listed.iter().map(|(l, r)| (normalize_b(&rexp(l)), normalize_b(&rexp(r)))).collect();
    let got: BTreeSet<(RatExpr, RatExpr)> =
        split(&rexp("b(a+b*)")).into_iter().map(|p| (p.left, p.right)).collect();
    ensure!(got == want, "got {got:?}");
    Ok(format!("{} pairs", got.len()))
}

fn criterion_7() -> Outcome {
    let weak = LassoExpr::prefix(rexp("(a+b)*"), LassoExpr::Circle(rexp("a")));
    ensure!(!member_lasso_naive(&weak, &lasso(":aa")), "((a+b)*, a) contains (ε, aa)");
    let t = parse_oexp("(a+b)*a$", &ab()).unwrap();
    ensure!(up_member(&t, &lasso(":aa")).unwrap(), "a^ω not in (a+b)*a$");
    ensure!(represent(&t, &ab()).unwrap().member(&lasso(":aa")), "representation misses (ε, aa)");
    Ok("(ε,aa) missed weakly, caught by the representation".into())
}

fn criterion_8() -> Outcome {
    let tau = DisjunctiveForm::from_pairs([(rexp("aaa"), rexp("a"))]).unwrap();
    let g = gamma_map(&tau, &ab()).unwrap().to_expr();
    let want = parse_lexp("aa(a@)+aaa(a@)", &ab()).unwrap();
    for l in enumerate_lassos(&ab(), 6, 6) {
        ensure!(member_lasso_naive(&g, &l) == member_lasso_naive(&want, &l), "differ on {l}");
    }
    ensure!(member_lasso_naive(&g, &lasso("aa:a")), "(aa, a) missing");
    ensure!(!member_lasso_naive(&g, &lasso("a:a")), "(a, a) present");
    ensure!(!member_lasso_naive(&g, &lasso(":a")), "(ε, a) present");
    Ok(format!("Γ = {g}; (aa,a) in, its reduct (a,a) out"))
}

fn criterion_9() -> Outcome {
    let corpus = ["a$", "(ab)$", "a(ba)$", "(a+b)*a$", "(aa)$+b(ab)$", "b(a+b*)a$"];
    let lassos = enumerate_lassos(&ab(), 4, 4);
    let mut report = Vec::new();
    for src in corpus {
        let start = Instant::now();
        let t = parse_oexp(src, &ab()).unwrap();
        let aut = omega_to_omega_automaton(&t, &ab()).map_err(|e| format!("{src}: {e}"))?;
        ensure!(aut.is_saturated().unwrap(), "{src}: not saturated");
        let nba = to_nba(&t, &ab()).unwrap();
        for l in &lassos {
            ensure!(aut.accepts(l).unwrap() == nba.accepts_lasso(l).unwrap(), "{src}: mismatch on {l}");
        }
        let took = start.elapsed();
        ensure!(took <= Duration::from_secs(30), "{src}: took {took:?}");
        report.push(format!("{src} {}+{} states {:.1}s", aut.num_spoke_states(), aut.num_loop_states(), took.as_secs_f64()));
    }
    Ok(report.join("; "))
}

// ----------------------------------------------------------------------------
// Property suites

const CASES: usize = 200;

fn suite_rexp_fundamental(g: &mut Gen) -> Result<(), String> {
    let words = ab().words_up_to(6);
    for _ in 0..CASES {
        let size = g.rng_range(1, 9);
        let t = g.rexp(size);
        for w in &words {
            let want = match w.chars().next() {
                None => t.ewp(),
                Some(a) => member_naive(&deriv(&t, a), &w[1..]),
            };
            ensure!(member_naive(&t, w) == want, "t = {t}, u = {w:?}");
        }
    }
    Ok(())
}

fn suite_lasso_fundamental(g: &mut Gen) -> Result<(), String> {
    let lassos = enumerate_lassos(&ab(), 4, 4);
    let words = ab().words_up_to(4);
    for _ in 0..CASES {
        let size = g.rng_range(1, 7);
        let rho = g.lexp(size);
        for a in ['a', 'b'] {
            let d1 = d1_general(&rho, a);
            let d2 = d2_general(&rho, a);
            for l in &lassos {
                let longer = Lasso::new(format!("{a}{}", l.spoke()), l.cycle()).unwrap();
                ensure!(
                    member_lasso_naive(&rho, &longer) == member_lasso_naive(&d1, l),
                    "d1: ρ = {rho}, a = {a}, l = {l}"
                );
            }
            for w in &words {
                let l = Lasso::new("", format!("{a}{w}")).unwrap();
                ensure!(
                    member_lasso_naive(&rho, &l) == member_naive(&d2, w),
                    "d2: ρ = {rho}, a = {a}, w = {w:?}"
                );
            }
        }
    }
    Ok(())
}

fn terminal_forms(l: &Lasso, out: &mut BTreeSet<Lasso>, seen: &mut BTreeSet<Lasso>) {
    if !seen.insert(l.clone()) {
        return;
    }
    let next = l.successors();
    if next.is_empty() {
        out.insert(l.clone());
    }
    for n in next {
        terminal_forms(&n, out, seen);
    }
}

fn suite_gamma(g: &mut Gen) -> Result<(), String> {
    for _ in 0..CASES {
        let spoke_len = g.rng_range(0, 8);
        let spoke = g.exact_word(spoke_len);
        let cycle_len = g.rng_range(1, 9 - spoke_len);
        let l = Lasso::new(spoke, g.exact_word(cycle_len)).unwrap();
        let mut ends = BTreeSet::new();
        terminal_forms(&l, &mut ends, &mut BTreeSet::new());
        ensure!(ends.len() == 1 && ends.contains(&normal_form(&l)), "{l} ends in {ends:?}");
    }
    let lassos = enumerate_lassos(&ab(), 4, 4);
    let nfs: Vec<Lasso> = lassos.iter().map(normal_form).collect();
    for (i, x) in lassos.iter().enumerate() {
        for (j, y) in lassos.iter().enumerate() {
            ensure!((nfs[i] == nfs[j]) == up_equal(x, y), "{x} vs {y}");
        }
    }
    Ok(())
}

/// Languages up to length 6 over {a, b}, as bitmasks over the 127 words.
struct LangCache {
    words: Vec<String>,
    memo: HashMap<RatExpr, u128>,
}

impl LangCache {
    fn new() -> LangCache {
        LangCache { words: ab().words_up_to(6), memo: HashMap::new() }
    }

    fn lang(&mut self, t: &RatExpr) -> u128 {
        if let Some(&m) = self.memo.get(t) {
            return m;
        }
        let m = self
            .words
            .iter()
            .enumerate()
            .filter(|(_, w)| member_naive(t, w))
            .fold(0u128, |m, (i, _)| m | 1 << i);
        self.memo.insert(t.clone(), m);
        m
    }

    fn index(&self, w: &str) -> usize {
        self.words.iter().position(|x| x == w).unwrap()
    }
}

fn subset(x: u128, y: u128) -> bool {
    x & !y == 0
}

fn suite_split(g: &mut Gen) -> Result<(), String> {
    let mut cache = LangCache::new();
    for _ in 0..CASES {
        let size = g.rng_range(1, 7);
        let t = g.rexp(size);
        let lt = cache.lang(&t);
        let pairs: Vec<_> = split(&t).into_iter().collect();
        let masks: Vec<(u128, u128)> = pairs.iter().map(|p| (cache.lang(&p.left), cache.lang(&p.right))).collect();
        for p in &pairs {
            let cat = RatExpr::concat(p.left.clone(), p.right.clone());
            ensure!(subset(cache.lang(&cat), lt), "unsound pair {p} of {t}");
        }
        for (i, w) in cache.words.clone().iter().enumerate() {
            if lt >> i & 1 == 0 {
                continue;
            }
            for k in 0..=w.len() {
                let (iu, iv) = (cache.index(&w[..k]), cache.index(&w[k..]));
                ensure!(
                    masks.iter().any(|(l, r)| l >> iu & 1 == 1 && r >> iv & 1 == 1),
                    "no pair of {t} covers {}|{}",
                    &w[..k],
                    &w[k..]
                );
            }
        }
        for p in &pairs {
            for q in split(&p.right) {
                let lead = cache.lang(&RatExpr::concat(p.left.clone(), q.left.clone()));
                let tail = cache.lang(&q.right);
                ensure!(
                    masks.iter().any(|(l, r)| subset(lead, *l) && subset(tail, *r)),
                    "no transfer pair for {p} then {q} in {t}"
                );
            }
        }
    }
    Ok(())
}

fn suite_axioms(g: &mut Gen) -> Result<(), String> {
    let lassos = enumerate_lassos(&ab(), 3, 3);
    let sum = LassoExpr::sum;
    let pre = LassoExpr::prefix;
    for i in 0..12 * 50 {
        let (t, r) = (g.rexp(3), g.rexp(3));
        let (rho, sigma, tau) = (g.lexp(4), g.lexp(4), g.lexp(4));
        let (lhs, rhs) = match i % 12 {
            0 => (pre(RatExpr::One, rho.clone()), rho),
            1 => (pre(RatExpr::Zero, rho), LassoExpr::Zero),
            2 => (sum(rho.clone(), sigma.clone()), sum(sigma, rho)),
            3 => (
                pre(RatExpr::sum(t.clone(), r.clone()), rho.clone()),
                sum(pre(t, rho.clone()), pre(r, rho)),
            ),
            4 => (LassoExpr::Circle(RatExpr::Zero), LassoExpr::Zero),
            5 => (
                sum(sum(rho.clone(), sigma.clone()), tau.clone()),
                sum(rho, sum(sigma, tau)),
            ),
            6 => (
                pre(t.clone(), sum(rho.clone(), sigma.clone())),
                sum(pre(t.clone(), rho), pre(t, sigma)),
            ),
            7 => (sum(LassoExpr::Zero, rho.clone()), rho),
            8 => (sum(rho.clone(), rho.clone()), rho),
            9 => (
                pre(t.clone(), pre(r.clone(), rho.clone())),
                pre(RatExpr::concat(t, r), rho),
            ),
            10 => (pre(t, LassoExpr::Zero), LassoExpr::Zero),
            _ => {
                let (t, r) = (g.proper_rexp(3), g.proper_rexp(3));
                (
                    LassoExpr::Circle(RatExpr::sum(t.clone(), r.clone())),
                    sum(LassoExpr::Circle(t), LassoExpr::Circle(r)),
                )
            }
        };
        for l in &lassos {
            ensure!(
                member_lasso_naive(&lhs, l) == member_lasso_naive(&rhs, l),
                "axiom {}: {lhs} vs {rhs} on {l}",
                i % 12
            );
        }
    }
    Ok(())
}

fn suite_root(g: &mut Gen) -> Result<(), String> {
    let words: Vec<String> = ab().words_up_to(4).into_iter().filter(|w| !w.is_empty()).collect();
    let mut done = 0;
    while done < CASES {
        let size = g.rng_range(1, 8);
        let t = g.rexp(size);
        let d = compile_dfa(&t, &ab()).unwrap();
        let n = d.num_states();
        if n > 6 {
            continue;
        }
        done += 1;
        let rt = root(&d).unwrap();
        ensure!(!rt.run("").unwrap(), "ε in root of {t}");
        for w in &words {
            let want = (1..=n).any(|k| d.run(&w.repeat(k)).unwrap());
            ensure!(rt.run(w).unwrap() == want, "root of {t} on {w}");
        }
    }
    Ok(())
}

fn suite_h_closure(g: &mut Gen) -> Result<(), String> {
    let lassos = enumerate_lassos(&ab(), 4, 4);
    for _ in 0..CASES {
        let size = g.rng_range(1, 6);
        let t = g.oexp(size);
        let h = h_map(&t).unwrap();
        let aut = compile_df(&h, &ab()).unwrap();
        let e = h.to_expr();
        for l in &lassos {
            if !aut.accepts(l).unwrap() {
                continue;
            }
            for x in l.expansions(3).into_iter().filter(|x| x.size() <= 8) {
                ensure!(member_lasso_naive(&e, &x), "h({t}) has {l} but not {x}");
            }
        }
    }
    Ok(())
}

fn suite_gamma_map(g: &mut Gen) -> Result<(), String> {
    let lassos = enumerate_lassos(&ab(), 4, 4);
    let small = enumerate_lassos(&ab(), 3, 3);
    for _ in 0..CASES {
        let n = g.rng_range(1, 3);
        let pairs: Vec<(RatExpr, RatExpr)> = (0..n).map(|_| (g.rexp(3), g.proper_rexp(3))).collect();
        let tau = DisjunctiveForm::from_pairs(pairs).unwrap();
        let gamma = gamma_map(&tau, &ab()).unwrap();
        let ta = compile_df(&tau, &ab()).unwrap();
        let ga = compile_df(&gamma, &ab()).unwrap();
        for l in &lassos {
            ensure!(!ta.accepts(l).unwrap() || ga.accepts(l).unwrap(), "τ = {tau} has {l}, Γ(τ) not");
        }
        for l in &small {
            if ga.accepts(l).unwrap() {
                let found = equivalents_within(l, 16, 24).iter().any(|x| ta.accepts(x).unwrap());
                ensure!(found, "Γ({tau}) has {l} with no γ-equivalent lasso of τ found");
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    type Suite = fn(&mut Gen) -> Result<(), String>;
    let suites: [(&str, Suite); 8] = [
        ("rexp fundamental theorem", suite_rexp_fundamental),
        ("lasso fundamental theorem", suite_lasso_fundamental),
        ("γ confluence + representation lemma", suite_gamma),
        ("∇ soundness/completeness/transfer", suite_split),
        ("LA axioms", suite_axioms),
        ("root oracle", suite_root),
        ("h expansion closure", suite_h_closure),
        ("Γ inclusion + φ-images", suite_gamma_map),
    ];
    let mut failures = Vec::new();
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut g = Gen::new(0x5eed + i as u64, &ab());
        if let Err(e) = suite(&mut g) {
            failures.push(format!("{name}: {e}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} suites x {CASES}+ cases", suites.len()))
    } else {
        Err(failures.join("; "))
    }
}

trait GenExt {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize;
    fn exact_word(&mut self, n: usize) -> String;
}

impl GenExt for Gen {
    fn rng_range(&mut self, lo: usize, hi: usize) -> usize {
        use rand::Rng;
        self.rng.gen_range(lo..hi)
    }

    fn exact_word(&mut self, n: usize) -> String {
        (0..n).map(|_| self.letter()).collect()
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("unsaturated fixture language", criterion_1),
        ("saturation of both fixtures", criterion_2),
        ("b(a*b@) and the b_astar_b fixture", criterion_3),
        ("Brzozowski lasso automaton state counts", criterion_4),
        ("extraction round trip", criterion_5),
        ("splitting b(a+b*)", criterion_6),
        ("weak vs full representation", criterion_7),
        ("Γ on (aaa, a)", criterion_8),
        ("ω-expression pipeline", criterion_9),
        ("property suites", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
