//! Deterministic lasso automata: acceptance, equivalence, Kleene
//! extraction, and an exact saturation check.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::langops::{
    self, boolean_combine, complement, dfa_to_expr, left_derivative, parse_alphabet, parse_row,
    right_quotient, root, BoolOp, Dfa, StateTable,
};
use crate::lasso::Lasso;
use crate::lassoexp::LassoExpr;
use crate::omega::OmegaExpr;
use crate::ratexp::RatExpr;

/// `(X, Y, x̄, δ1, δ2, δ3, F)` over an explicit alphabet. Transition tables
/// are row-major with one row of `alphabet.len()` targets per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoAutomaton {
    alphabet: Alphabet,
    spoke_names: Vec<String>,
    loop_names: Vec<String>,
    d1: Vec<usize>,
    d2: Vec<usize>,
    d3: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl LassoAutomaton {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Alphabet,
        spoke_names: Vec<String>,
        loop_names: Vec<String>,
        d1: Vec<usize>,
        d2: Vec<usize>,
        d3: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<LassoAutomaton> {
        let (nx, ny, k) = (spoke_names.len(), loop_names.len(), alphabet.len());
        let bad = |m: &str| Err(Error::Format { line: 0, msg: m.to_owned() });
        if nx == 0 || ny == 0 {
            return bad("both sorts need at least one state");
        }
        if initial >= nx || finals.len() != ny {
            return bad("initial or final states out of range");
        }
        if d1.len() != nx * k || d2.len() != nx * k || d3.len() != ny * k {
            return bad("transition tables are not total");
        }
        if d1.iter().any(|&x| x >= nx) || d2.iter().chain(&d3).any(|&y| y >= ny) {
            return bad("transition target out of range");
        }
        let mut all: Vec<&String> = spoke_names.iter().chain(&loop_names).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return bad("state names must be distinct");
        }
        Ok(LassoAutomaton { alphabet, spoke_names, loop_names, d1, d2, d3, initial, finals })
    }

    /// Like [`LassoAutomaton::new`] with spoke states named `x0, x1, …` and
    /// loop states `y0, y1, …`.
    pub fn with_default_names(
        alphabet: Alphabet,
        d1: Vec<usize>,
        d2: Vec<usize>,
        d3: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<LassoAutomaton> {
        let k = alphabet.len();
        let xs = (0..d1.len() / k).map(|i| format!("x{i}")).collect();
        let ys = (0..d3.len() / k).map(|i| format!("y{i}")).collect();
        LassoAutomaton::new(alphabet, xs, ys, d1, d2, d3, initial, finals)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_spoke_states(&self) -> usize {
        self.spoke_names.len()
    }

    pub fn num_loop_states(&self) -> usize {
        self.loop_names.len()
    }

    pub fn spoke_names(&self) -> &[String] {
        &self.spoke_names
    }

    pub fn loop_names(&self) -> &[String] {
        &self.loop_names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, y: usize) -> bool {
        self.finals[y]
    }

    pub fn spoke_next(&self, x: usize, sym: usize) -> usize {
        self.d1[x * self.alphabet.len() + sym]
    }

    pub fn switch_next(&self, x: usize, sym: usize) -> usize {
        self.d2[x * self.alphabet.len() + sym]
    }

    pub fn loop_next(&self, y: usize, sym: usize) -> usize {
        self.d3[y * self.alphabet.len() + sym]
    }

    pub fn run_spoke(&self, word: &str) -> Result<usize> {
        let syms = self.alphabet.encode(word)?;
        Ok(syms.into_iter().fold(self.initial, |x, s| self.spoke_next(x, s)))
    }

    /// `(δ2:δ3)(x, w)` for nonempty `w`.
    fn run_loop(&self, x: usize, syms: &[usize]) -> usize {
        let y = self.switch_next(x, syms[0]);
        syms[1..].iter().fold(y, |y, &s| self.loop_next(y, s))
    }

    pub fn accepts(&self, l: &Lasso) -> Result<bool> {
        let x = self.run_spoke(l.spoke())?;
        let v = self.alphabet.encode(l.cycle())?;
        Ok(self.finals[self.run_loop(x, &v)])
    }

    /// Spoke states reachable from the initial one, each with the
    /// shortlex-least word reaching it, in breadth-first order.
    pub fn reachable_spokes(&self) -> Vec<(usize, String)> {
        let mut word: Vec<Option<String>> = vec![None; self.num_spoke_states()];
        word[self.initial] = Some(String::new());
        let mut order = vec![self.initial];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            let w = word[x].clone().expect("visited");
            for (s, &c) in self.alphabet.letters().iter().enumerate() {
                let y = self.spoke_next(x, s);
                if word[y].is_none() {
                    word[y] = Some(format!("{w}{c}"));
                    order.push(y);
                }
            }
            i += 1;
        }
        order.into_iter().map(|x| (x, word[x].take().expect("visited"))).collect()
    }

    fn loop_dfa_with(&self, x: usize, finals: &[bool]) -> Dfa {
        let k = self.alphabet.len();
        let mut trans = Vec::with_capacity((self.num_loop_states() + 1) * k);
        trans.extend((0..k).map(|s| self.switch_next(x, s) + 1));
        trans.extend(self.d3.iter().map(|y| y + 1));
        let mut fs = vec![false];
        fs.extend_from_slice(finals);
        Dfa::new(self.alphabet.clone(), trans, 0, fs).expect("well-formed loop DFA")
    }

    /// `P_x = {w ∈ Σ⁺ : (δ2:δ3)(x, w) ∈ F}`.
    pub fn loop_dfa(&self, x: usize) -> Dfa {
        self.loop_dfa_with(x, &self.finals)
    }

    /// `S_x`, the spoke words leading from the initial state to `x`.
    pub fn spoke_lang_dfa(&self, x: usize) -> Dfa {
        let finals = (0..self.num_spoke_states()).map(|q| q == x).collect();
        Dfa::new(self.alphabet.clone(), self.d1.clone(), self.initial, finals)
            .expect("well-formed spoke DFA")
    }

    /// `Σ_x S_x·(P_x)@` over the reachable spoke states.
    pub fn extract_expr(&self) -> Result<LassoExpr> {
        let mut summands = Vec::new();
        for (x, _) in self.reachable_spokes() {
            let p = dfa_to_expr(&self.loop_dfa(x))?;
            if p == RatExpr::Zero {
                continue;
            }
            if p.ewp() {
                return Err(Error::Certification(format!("loop expression {p} accepts ε")));
            }
            let s = dfa_to_expr(&self.spoke_lang_dfa(x))?;
            summands.push(LassoExpr::prefix(s, LassoExpr::Circle(p)));
        }
        Ok(LassoExpr::sum_all(summands))
    }

    /// `Σ_{x,y} S_x·(R_{x,y})^ω` where `R_{x,y}` collects the nonempty `u`
    /// with `δ1(x,u) = x`, `(δ2:δ3)(x,u) = y` and `δ3(y,u) = y`. Only
    /// meaningful, and only allowed, on saturated automata.
    pub fn extract_omega_expr(&self) -> Result<OmegaExpr> {
        if !self.is_saturated()? {
            return Err(Error::NotSaturated);
        }
        let ny = self.num_loop_states();
        let mut summands = Vec::new();
        for (x, _) in self.reachable_spokes() {
            let spoke_return = self.spoke_lang_dfa(x).with_initial(x);
            let mut s = None;
            for y in (0..ny).filter(|&y| self.finals[y]) {
                let only_y: Vec<bool> = (0..ny).map(|q| q == y).collect();
                let switch_run = self.loop_dfa_with(x, &only_y);
                let loop_return = Dfa::new(self.alphabet.clone(), self.d3.clone(), y, only_y)?;
                let r = boolean_combine(&spoke_return, &switch_run, BoolOp::And)?;
                let r = boolean_combine(&r, &loop_return, BoolOp::And)?;
                if r.is_empty() {
                    continue;
                }
                let r = dfa_to_expr(&r)?;
                let s = match &s {
                    Some(s) => s,
                    None => s.insert(dfa_to_expr(&self.spoke_lang_dfa(x))?),
                };
                summands.push(OmegaExpr::prefix(s.clone(), OmegaExpr::power(r)?));
            }
        }
        Ok(OmegaExpr::sum_all(summands))
    }

    // ------------------------------------------------------------------------
    // Saturation

    pub fn is_saturated(&self) -> Result<bool> {
        Ok(self.saturation_counterexample()?.is_none())
    }

    /// A pair of γ-equivalent lassos of which exactly the first is accepted,
    /// or `None` when the accepted language is a union of γ-classes.
    ///
    /// For every reachable `x` and letter `a`, with `x' = δ1(x, a)`:
    /// `a⁻¹P_x = P_{x'}a⁻¹`, `√P_x ⊆ P_x` and `P_x ∩ √(Σ*∖P_x) = ∅`.
    pub fn saturation_counterexample(&self) -> Result<Option<(Lasso, Lasso)>> {
        let mut best: Option<(u8, usize, Lasso, Lasso)> = None;
        let mut offer = |rank: u8, acc: Lasso, rej: Lasso| {
            let key = (rank, acc.size() + rej.size(), acc, rej);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        };
        let reach = self.reachable_spokes();
        let loops: Vec<Dfa> = (0..self.num_spoke_states()).map(|x| self.loop_dfa(x)).collect();
        for (x, u) in &reach {
            let px = &loops[*x];
            for (s, &a) in self.alphabet.letters().iter().enumerate() {
                let x2 = self.spoke_next(*x, s);
                let left = left_derivative(px, a)?;
                let right = right_quotient(&loops[x2], a)?;
                if let Some(w) = langops::distinguishing_word(&left, &right)? {
                    let short = Lasso::new(u.clone(), format!("{a}{w}"))?;
                    let long = Lasso::new(format!("{u}{a}"), format!("{w}{a}"))?;
                    if left.run(&w)? {
                        offer(0, short, long);
                    } else {
                        offer(0, long, short);
                    }
                }
            }
            let rt = root(px)?;
            if let Some(w) = boolean_combine(&rt, px, BoolOp::Diff)?.shortest_word() {
                let k = self.power_flipping(px, &w, true);
                offer(1, Lasso::new(u.clone(), w.repeat(k))?, Lasso::new(u.clone(), w)?);
            }
            let rt = root(&complement(px))?;
            if let Some(w) = boolean_combine(px, &rt, BoolOp::And)?.shortest_word() {
                let k = self.power_flipping(px, &w, false);
                offer(2, Lasso::new(u.clone(), w.clone())?, Lasso::new(u.clone(), w.repeat(k))?);
            }
        }
        Ok(best.map(|(_, _, acc, rej)| (acc, rej)))
    }

    /// Least `k ≥ 1` with `w^k ∈ P` equal to `accepted`.
    fn power_flipping(&self, p: &Dfa, w: &str, accepted: bool) -> usize {
        (1..=p.num_states() + 1)
            .find(|&k| p.run(&w.repeat(k)).expect("alphabet checked") == accepted)
            .expect("root witness has a matching power")
    }

    // ------------------------------------------------------------------------
    // Text formats

    /// Serialises in the line format read by [`LassoAutomaton::read`].
    pub fn write(&self) -> String {
        let mut out = format!("alphabet: {}\nspoke:", self.alphabet);
        for n in &self.spoke_names {
            let _ = write!(out, " {n}");
        }
        out.push_str("\nloop:");
        for n in &self.loop_names {
            let _ = write!(out, " {n}");
        }
        let _ = write!(out, "\ninitial: {}\nfinal:", self.spoke_names[self.initial]);
        for (y, n) in self.loop_names.iter().enumerate() {
            if self.finals[y] {
                let _ = write!(out, " {n}");
            }
        }
        out.push('\n');
        let letters = self.alphabet.letters();
        for (key, table, from, to) in [
            ("d1", &self.d1, &self.spoke_names, &self.spoke_names),
            ("d2", &self.d2, &self.spoke_names, &self.loop_names),
            ("d3", &self.d3, &self.loop_names, &self.loop_names),
        ] {
            for (q, name) in from.iter().enumerate() {
                for (s, c) in letters.iter().enumerate() {
                    let _ = writeln!(out, "{key}: {name} {c} {}", to[table[q * letters.len() + s]]);
                }
            }
        }
        out
    }

    /// Reads the line format
    ///
    /// ```text
    /// alphabet: a b
    /// spoke: x0 x1
    /// loop: y2 y3
    /// initial: x0
    /// final: y2
    /// d1: x0 a x0
    /// d2: x0 b y2
    /// d3: y2 a y2
    /// ```
    ///
    /// with `#` comments. Every table must have exactly one row per state
    /// and symbol.
    pub fn read(text: &str) -> Result<LassoAutomaton> {
        let mut header: [Option<(usize, Vec<String>)>; 5] = Default::default();
        let keys = ["alphabet", "spoke", "loop", "initial", "final"];
        let mut rows: [Vec<(usize, Vec<String>)>; 3] = Default::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content
                .split_once(':')
                .ok_or_else(|| Error::Format { line, msg: "expected 'key: value'".into() })?;
            let key = key.trim();
            let words: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if let Some(h) = keys.iter().position(|k| *k == key) {
                if header[h].is_some() {
                    return Err(Error::Format { line, msg: format!("duplicate '{key}' line") });
                }
                header[h] = Some((line, words));
            } else if let Some(t) = ["d1", "d2", "d3"].iter().position(|k| *k == key) {
                rows[t].push((line, words));
            } else {
                return Err(Error::Format { line, msg: format!("unknown key '{key}'") });
            }
        }
        let mut take = |h: usize| {
            header[h].take().ok_or_else(|| Error::Format {
                line: 0,
                msg: format!("missing '{}' line", keys[h]),
            })
        };
        let (aline, awords) = take(0)?;
        let alphabet = parse_alphabet(&awords, aline)?;
        let (sline, spoke_names) = take(1)?;
        let (lline, loop_names) = take(2)?;
        let (iline, iwords) = take(3)?;
        let (fline, fwords) = take(4)?;
        let xs = StateTable::new(&spoke_names, sline)?;
        let ys = StateTable::new(&loop_names, lline)?;
        if let Some(n) = loop_names.iter().find(|n| xs.get(n).is_some()) {
            return Err(Error::Format { line: lline, msg: format!("'{n}' is both a spoke and a loop state") });
        }
        if iwords.len() != 1 {
            return Err(Error::Format { line: iline, msg: "expected exactly one initial state".into() });
        }
        let initial = xs.lookup(&iwords[0], iline)?;
        let mut finals = vec![false; loop_names.len()];
        for w in &fwords {
            finals[ys.lookup(w, fline)?] = true;
        }
        let k = alphabet.len();
        let [r1, r2, r3] = rows;
        let d1 = fill_table("d1", r1, &xs, &spoke_names, &xs, &alphabet)?;
        let d2 = fill_table("d2", r2, &xs, &spoke_names, &ys, &alphabet)?;
        let d3 = fill_table("d3", r3, &ys, &loop_names, &ys, &alphabet)?;
        debug_assert_eq!(d1.len(), spoke_names.len() * k);
        LassoAutomaton::new(alphabet, spoke_names, loop_names, d1, d2, d3, initial, finals)
    }

    /// Graphviz rendering: spoke edges solid, switch edges dotted, loop
    /// edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lasso {\n  rankdir=LR;\n  start [shape=point];\n");
        for n in &self.spoke_names {
            let _ = writeln!(out, "  \"{n}\" [shape=box];");
        }
        for (y, n) in self.loop_names.iter().enumerate() {
            let shape = if self.finals[y] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  \"{n}\" [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> \"{}\";", self.spoke_names[self.initial]);
        let letters = self.alphabet.letters();
        for (table, from, to, style) in [
            (&self.d1, &self.spoke_names, &self.spoke_names, "solid"),
            (&self.d2, &self.spoke_names, &self.loop_names, "dotted"),
            (&self.d3, &self.loop_names, &self.loop_names, "dashed"),
        ] {
            for (q, name) in from.iter().enumerate() {
                let mut groups: Vec<(usize, String)> = Vec::new();
                for (s, &c) in letters.iter().enumerate() {
                    let r = table[q * letters.len() + s];
                    match groups.iter_mut().find(|(t, _)| *t == r) {
                        Some((_, l)) => {
                            l.push(',');
                            l.push(c);
                        }
                        None => groups.push((r, c.to_string())),
                    }
                }
                for (r, label) in groups {
                    let _ = writeln!(
                        out,
                        "  \"{name}\" -> \"{}\" [label=\"{label}\", style={style}];",
                        to[r]
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn fill_table(
    key: &str,
    rows: Vec<(usize, Vec<String>)>,
    from: &StateTable,
    from_names: &[String],
    to: &StateTable,
    alphabet: &Alphabet,
) -> Result<Vec<usize>> {
    let k = alphabet.len();
    let mut table: Vec<Option<usize>> = vec![None; from_names.len() * k];
    for (line, words) in rows {
        let (q, s, r) = parse_row(&words, line, alphabet)?;
        let (q, r) = (from.lookup(q, line)?, to.lookup(r, line)?);
        let slot = &mut table[q * k + s];
        if slot.is_some() {
            return Err(Error::Format {
                line,
                msg: format!("duplicate {key} row for ({}, {})", from_names[q], alphabet.letters()[s]),
            });
        }
        *slot = Some(r);
    }
    table
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| Error::Format {
                line: 0,
                msg: format!(
                    "missing {key} row for ({}, {})",
                    from_names[i / k],
                    alphabet.letters()[i % k]
                ),
            })
        })
        .collect()
}

/// Lasso-language equivalence. On a difference, returns a lasso accepted
/// by exactly one automaton, minimizing `|u| + |v|` and then shortlex.
pub fn equivalent_lasso(a1: &LassoAutomaton, a2: &LassoAutomaton) -> Result<Option<Lasso>> {
    if a1.alphabet != a2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let letters = a1.alphabet.letters();
    let k = letters.len();
    let n2 = a2.num_spoke_states();
    let mut spoke_word: Vec<Option<String>> = vec![None; a1.num_spoke_states() * n2];
    let start = a1.initial * n2 + a2.initial;
    spoke_word[start] = Some(String::new());
    let mut queue = VecDeque::from([(a1.initial, a2.initial)]);
    let mut best: Option<Lasso> = None;
    while let Some((x1, x2)) = queue.pop_front() {
        let u = spoke_word[x1 * n2 + x2].clone().expect("visited");
        if let Some(v) = loop_disagreement(a1, a2, x1, x2) {
            let cand = Lasso::new(u.clone(), v)?;
            let better = best
                .as_ref()
                .is_none_or(|b| (cand.size(), &cand) < (b.size(), b));
            if better {
                best = Some(cand);
            }
        }
        for s in 0..k {
            let (y1, y2) = (a1.spoke_next(x1, s), a2.spoke_next(x2, s));
            let slot = &mut spoke_word[y1 * n2 + y2];
            if slot.is_none() {
                *slot = Some(format!("{u}{}", letters[s]));
                queue.push_back((y1, y2));
            }
        }
    }
    Ok(best)
}

/// Shortlex-least nonempty `v` with `(δ2:δ3)` acceptance differing from
/// the spoke pair `(x1, x2)`.
fn loop_disagreement(a1: &LassoAutomaton, a2: &LassoAutomaton, x1: usize, x2: usize) -> Option<String> {
    let letters = a1.alphabet.letters();
    let n2 = a2.num_loop_states();
    let mut word: Vec<Option<String>> = vec![None; a1.num_loop_states() * n2];
    let mut queue = VecDeque::new();
    for (s, &c) in letters.iter().enumerate() {
        let (y1, y2) = (a1.switch_next(x1, s), a2.switch_next(x2, s));
        if word[y1 * n2 + y2].is_none() {
            word[y1 * n2 + y2] = Some(c.to_string());
            queue.push_back((y1, y2));
        }
    }
    while let Some((y1, y2)) = queue.pop_front() {
        let v = word[y1 * n2 + y2].clone().expect("visited");
        if a1.finals[y1] != a2.finals[y2] {
            return Some(v);
        }
        for (s, &c) in letters.iter().enumerate() {
            let (z1, z2) = (a1.loop_next(y1, s), a2.loop_next(y2, s));
            if word[z1 * n2 + z2].is_none() {
                word[z1 * n2 + z2] = Some(format!("{v}{c}"));
                queue.push_back((z1, z2));
            }
        }
    }
    None
}
