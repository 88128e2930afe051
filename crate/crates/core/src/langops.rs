//! Deterministic finite automata over an explicit [`Alphabet`]: compilation
//! from rational expressions by derivatives, Boolean operations, quotients,
//! the root operation, minimization and state elimination back to
//! expressions.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::ratexp::{deriv, normalize_b, RatExpr};
use crate::STATE_CAP;

/// A complete DFA. States are `0..num_states()`; the transition table is
/// stored row-major, one row of `alphabet.len()` targets per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        trans: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Result<Dfa> {
        let n = finals.len();
        if n == 0 || initial >= n {
            return Err(Error::Certification("DFA needs an initial state".into()));
        }
        if trans.len() != n * alphabet.len() || trans.iter().any(|&q| q >= n) {
            return Err(Error::Certification("DFA transition table is not total".into()));
        }
        Ok(Dfa { alphabet, trans, initial, finals })
    }

    /// The one-state automaton accepting nothing.
    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa {
            trans: vec![0; alphabet.len()],
            alphabet: alphabet.clone(),
            initial: 0,
            finals: vec![false],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    /// Successor of `q` on the symbol with alphabet index `sym`.
    pub fn next(&self, q: usize, sym: usize) -> usize {
        self.trans[q * self.alphabet.len() + sym]
    }

    pub fn run_from(&self, q: usize, word: &str) -> Result<usize> {
        let syms = self.alphabet.encode(word)?;
        Ok(syms.into_iter().fold(q, |q, s| self.next(q, s)))
    }

    pub fn run(&self, word: &str) -> Result<bool> {
        Ok(self.finals[self.run_from(self.initial, word)?])
    }

    pub fn with_initial(&self, initial: usize) -> Dfa {
        Dfa { initial, ..self.clone() }
    }

    pub fn with_finals(&self, finals: Vec<bool>) -> Dfa {
        assert_eq!(finals.len(), self.num_states());
        Dfa { finals, ..self.clone() }
    }

    fn sym_index(&self, a: char) -> Result<usize> {
        self.alphabet.index_of(a).ok_or(Error::SymbolOutsideAlphabet(a))
    }

    /// Shortest accepted word (ties broken by alphabet order), if any.
    pub fn shortest_word(&self) -> Option<String> {
        let k = self.alphabet.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    word.push(self.alphabet.letters()[s]);
                    cur = p;
                }
                return Some(word.into_iter().rev().collect());
            }
            for s in 0..k {
                let r = self.next(q, s);
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, s));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    fn reachable(&self) -> Vec<usize> {
        let mut order = vec![self.initial];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for s in 0..self.alphabet.len() {
                let r = self.next(q, s);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// Minimal equivalent DFA (Moore partition refinement on the reachable
    /// part). States are numbered in breadth-first order from the initial one.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let order = self.reachable();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let n = order.len();
        let next = |i: usize, s: usize| index[self.next(order[i], s)];
        let mut class: Vec<usize> = order.iter().map(|&q| usize::from(self.finals[q])).collect();
        let mut count = 0;
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut refined = Vec::with_capacity(n);
            for i in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                sig.extend((0..k).map(|s| class[next(i, s)]));
                let fresh = ids.len();
                refined.push(*ids.entry(sig).or_insert(fresh));
            }
            let new_count = ids.len();
            class = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // renumber classes breadth-first from the initial state
        let mut renum = vec![usize::MAX; count];
        let mut rep = Vec::with_capacity(count);
        let mut queue = VecDeque::from([0usize]);
        renum[class[0]] = 0;
        rep.push(0);
        while let Some(i) = queue.pop_front() {
            for s in 0..k {
                let j = next(i, s);
                if renum[class[j]] == usize::MAX {
                    renum[class[j]] = rep.len();
                    rep.push(j);
                    queue.push_back(j);
                }
            }
        }
        let mut trans = Vec::with_capacity(rep.len() * k);
        for &i in &rep {
            trans.extend((0..k).map(|s| renum[class[next(i, s)]]));
        }
        let finals = rep.iter().map(|&i| self.finals[order[i]]).collect();
        Dfa { alphabet: self.alphabet.clone(), trans, initial: 0, finals }
    }

    /// States that are reachable and can reach a final state.
    fn useful(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut reach = vec![false; n];
        for q in self.reachable() {
            reach[q] = true;
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..k {
                preds[self.next(q, s)].push(q);
            }
        }
        let mut co = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| co[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !co[p] {
                    co[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..n).map(|q| reach[q] && co[q]).collect()
    }

    /// Graphviz rendering; every edge is solid.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}];");
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for (q, label) in self.grouped_edges() {
            for (r, letters) in label {
                let _ = writeln!(out, "  q{q} -> q{r} [label=\"{letters}\"];");
            }
        }
        out.push_str("}\n");
        out
    }

    fn grouped_edges(&self) -> Vec<(usize, Vec<(usize, String)>)> {
        (0..self.num_states())
            .map(|q| {
                let mut groups: Vec<(usize, String)> = Vec::new();
                for (s, &c) in self.alphabet.letters().iter().enumerate() {
                    let r = self.next(q, s);
                    match groups.iter_mut().find(|(t, _)| *t == r) {
                        Some((_, l)) => {
                            l.push(',');
                            l.push(c);
                        }
                        None => groups.push((r, c.to_string())),
                    }
                }
                (q, groups)
            })
            .collect()
    }

    /// Line-oriented text form, readable by [`Dfa::read`].
    pub fn write(&self) -> String {
        let mut out = format!("alphabet: {}\nstates:", self.alphabet);
        for q in 0..self.num_states() {
            let _ = write!(out, " q{q}");
        }
        let _ = write!(out, "\ninitial: q{}\nfinal:", self.initial);
        for q in (0..self.num_states()).filter(|&q| self.finals[q]) {
            let _ = write!(out, " q{q}");
        }
        out.push('\n');
        for q in 0..self.num_states() {
            for (s, c) in self.alphabet.letters().iter().enumerate() {
                let _ = writeln!(out, "d: q{q} {c} q{}", self.next(q, s));
            }
        }
        out
    }

    /// Parses the format produced by [`Dfa::write`]:
    ///
    /// ```text
    /// alphabet: a b
    /// states: q0 q1
    /// initial: q0
    /// final: q1
    /// d: q0 a q1
    /// ```
    pub fn read(text: &str) -> Result<Dfa> {
        let mut alphabet = None;
        let mut names: Option<Vec<String>> = None;
        let mut initial = None;
        let mut finals_raw: Option<(usize, Vec<String>)> = None;
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| Error::Format {
                line: line_no,
                msg: "expected 'key: value'".into(),
            })?;
            let words: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            let dup = |line| Error::Format { line, msg: format!("duplicate '{}' line", key.trim()) };
            match key.trim() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(dup(line_no));
                    }
                    alphabet = Some(parse_alphabet(&words, line_no)?);
                }
                "states" => {
                    if names.is_some() {
                        return Err(dup(line_no));
                    }
                    names = Some(words);
                }
                "initial" => {
                    if initial.is_some() {
                        return Err(dup(line_no));
                    }
                    initial = Some((line_no, words));
                }
                "final" => {
                    if finals_raw.is_some() {
                        return Err(dup(line_no));
                    }
                    finals_raw = Some((line_no, words));
                }
                "d" => rows.push((line_no, words)),
                other => {
                    return Err(Error::Format { line: line_no, msg: format!("unknown key '{other}'") })
                }
            }
        }
        let missing = |what: &str| Error::Format { line: 0, msg: format!("missing '{what}' line") };
        let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
        let names = names.ok_or_else(|| missing("states"))?;
        let table = StateTable::new(&names, 0)?;
        let (iline, iwords) = initial.ok_or_else(|| missing("initial"))?;
        if iwords.len() != 1 {
            return Err(Error::Format { line: iline, msg: "expected exactly one initial state".into() });
        }
        let initial = table.lookup(&iwords[0], iline)?;
        let mut finals = vec![false; names.len()];
        if let Some((fline, fwords)) = finals_raw {
            for w in &fwords {
                finals[table.lookup(w, fline)?] = true;
            }
        }
        let k = alphabet.len();
        let mut trans: Vec<Option<usize>> = vec![None; names.len() * k];
        for (line, words) in rows {
            let (from, sym, to) = parse_row(&words, line, &alphabet)?;
            let (from, to) = (table.lookup(from, line)?, table.lookup(to, line)?);
            let slot = &mut trans[from * k + sym];
            if slot.is_some() {
                return Err(Error::Format { line, msg: "duplicate transition".into() });
            }
            *slot = Some(to);
        }
        let mut full = Vec::with_capacity(trans.len());
        for (i, t) in trans.into_iter().enumerate() {
            match t {
                Some(t) => full.push(t),
                None => {
                    return Err(Error::Format {
                        line: 0,
                        msg: format!(
                            "missing transition for ({}, {})",
                            names[i / k],
                            alphabet.letters()[i % k]
                        ),
                    })
                }
            }
        }
        Dfa::new(alphabet, full, initial, finals)
    }
}

pub(crate) fn parse_alphabet(words: &[String], line: usize) -> Result<Alphabet> {
    let mut letters = Vec::new();
    for w in words {
        let mut cs = w.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => letters.push(c),
            _ => return Err(Error::Format { line, msg: format!("'{w}' is not a single letter") }),
        }
    }
    Alphabet::new(letters).map_err(|e| Error::Format { line, msg: e.to_string() })
}

pub(crate) fn parse_row<'w>(
    words: &'w [String],
    line: usize,
    alphabet: &Alphabet,
) -> Result<(&'w str, usize, &'w str)> {
    if words.len() != 3 {
        return Err(Error::Format { line, msg: "expected 'state symbol state'".into() });
    }
    let mut cs = words[1].chars();
    let sym = match (cs.next(), cs.next()) {
        (Some(c), None) => alphabet
            .index_of(c)
            .ok_or_else(|| Error::Format { line, msg: format!("unknown symbol '{c}'") })?,
        _ => return Err(Error::Format { line, msg: format!("unknown symbol '{}'", words[1]) }),
    };
    Ok((&words[0], sym, &words[2]))
}

pub(crate) struct StateTable {
    ids: HashMap<String, usize>,
}

impl StateTable {
    pub(crate) fn new(names: &[String], line: usize) -> Result<StateTable> {
        let mut ids = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if ids.insert(n.clone(), i).is_some() {
                return Err(Error::Format { line, msg: format!("state '{n}' declared twice") });
            }
        }
        if ids.is_empty() {
            return Err(Error::Format { line, msg: "no states declared".into() });
        }
        Ok(StateTable { ids })
    }

    pub(crate) fn get(&self, name: &str) -> Option<usize> {
        self.ids.get(name).copied()
    }

    pub(crate) fn lookup(&self, name: &str, line: usize) -> Result<usize> {
        self.get(name)
            .ok_or_else(|| Error::Format { line, msg: format!("unknown state '{name}'") })
    }
}

// ----------------------------------------------------------------------------
// Construction from expressions

/// Brzozowski DFA of `t`, plus the normalized expression labelling each state.
pub fn compile_dfa_labeled(t: &RatExpr, alphabet: &Alphabet) -> Result<(Dfa, Vec<RatExpr>)> {
    let start = normalize_b(t);
    let mut ids: HashMap<RatExpr, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut trans = Vec::new();
    let mut i = 0;
    while i < states.len() {
        for &a in alphabet.letters() {
            let d = deriv(&states[i], a);
            let next = match ids.get(&d) {
                Some(&j) => j,
                None => {
                    if states.len() >= STATE_CAP {
                        return Err(Error::StateCap(STATE_CAP));
                    }
                    ids.insert(d.clone(), states.len());
                    states.push(d);
                    states.len() - 1
                }
            };
            trans.push(next);
        }
        i += 1;
    }
    let finals = states.iter().map(RatExpr::ewp).collect();
    let dfa = Dfa { alphabet: alphabet.clone(), trans, initial: 0, finals };
    Ok((dfa, states))
}

/// Brzozowski DFA of `t`: states are normal forms reachable by derivatives.
pub fn compile_dfa(t: &RatExpr, alphabet: &Alphabet) -> Result<Dfa> {
    Ok(compile_dfa_labeled(t, alphabet)?.0)
}

// ----------------------------------------------------------------------------
// Boolean algebra

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Diff,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::And => x && y,
            BoolOp::Or => x || y,
            BoolOp::Diff => x && !y,
        }
    }
}

/// Product automaton over the reachable state pairs.
pub fn boolean_combine(d1: &Dfa, d2: &Dfa, op: BoolOp) -> Result<Dfa> {
    if d1.alphabet != d2.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let k = d1.alphabet.len();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(d1.initial, d2.initial)];
    ids.insert(pairs[0], 0);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in 0..k {
            let succ = (d1.next(p, s), d2.next(q, s));
            let id = *ids.entry(succ).or_insert_with(|| {
                pairs.push(succ);
                pairs.len() - 1
            });
            trans.push(id);
        }
        i += 1;
    }
    let finals = pairs.iter().map(|&(p, q)| op.apply(d1.finals[p], d2.finals[q])).collect();
    Ok(Dfa { alphabet: d1.alphabet.clone(), trans, initial: 0, finals })
}

pub fn complement(d: &Dfa) -> Dfa {
    d.with_finals(d.finals.iter().map(|f| !f).collect())
}

/// Whether `L(d)` is empty, with the shortest accepted word otherwise.
pub fn is_empty_dfa(d: &Dfa) -> (bool, Option<String>) {
    let w = d.shortest_word();
    (w.is_none(), w)
}

/// Shortest word on which `d1` and `d2` disagree, if any.
pub fn distinguishing_word(d1: &Dfa, d2: &Dfa) -> Result<Option<String>> {
    let x = boolean_combine(d1, d2, BoolOp::And)?;
    let sym = x.with_finals(
        boolean_combine(d1, d2, BoolOp::Or)?
            .finals
            .iter()
            .zip(&x.finals)
            .map(|(o, a)| *o && !*a)
            .collect(),
    );
    Ok(sym.shortest_word())
}

/// Language equivalence, with the shortest distinguishing word otherwise.
pub fn equivalent_dfa(d1: &Dfa, d2: &Dfa) -> Result<(bool, Option<String>)> {
    let w = distinguishing_word(d1, d2)?;
    Ok((w.is_none(), w))
}

// ----------------------------------------------------------------------------
// Quotients and root

/// `a⁻¹L = {v : av ∈ L}`.
pub fn left_derivative(d: &Dfa, a: char) -> Result<Dfa> {
    let s = d.sym_index(a)?;
    Ok(d.with_initial(d.next(d.initial, s)))
}

/// `L a⁻¹ = {v : va ∈ L}`.
pub fn right_quotient(d: &Dfa, a: char) -> Result<Dfa> {
    let s = d.sym_index(a)?;
    Ok(d.with_finals((0..d.num_states()).map(|q| d.finals[d.next(q, s)]).collect()))
}

/// `√L = {u ∈ Σ⁺ : ∃k ≥ 1, u^k ∈ L}`.
///
/// States are the transformations `f_u` of `d` induced by nonempty words,
/// plus a separate non-final start state for `ε`. A transformation is
/// final when the orbit of the initial state under it meets a final state.
pub fn root(d: &Dfa) -> Result<Dfa> {
    let d = d.minimize();
    let n = d.num_states();
    let k = d.alphabet.len();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut funcs: Vec<Vec<usize>> = Vec::new();
    // state 0 is the ε marker; function i lives at state i + 1
    let mut trans = vec![0; k];
    for s in 0..k {
        let f: Vec<usize> = (0..n).map(|q| d.next(q, s)).collect();
        let id = *ids.entry(f.clone()).or_insert_with(|| {
            funcs.push(f);
            funcs.len() - 1
        });
        trans[s] = id + 1;
    }
    let mut i = 0;
    while i < funcs.len() {
        for s in 0..k {
            let f: Vec<usize> = funcs[i].iter().map(|&q| d.next(q, s)).collect();
            let id = match ids.get(&f) {
                Some(&id) => id,
                None => {
                    if funcs.len() >= STATE_CAP {
                        return Err(Error::StateCap(STATE_CAP));
                    }
                    ids.insert(f.clone(), funcs.len());
                    funcs.push(f);
                    funcs.len() - 1
                }
            };
            trans.push(id + 1);
        }
        i += 1;
    }
    let mut finals = vec![false];
    finals.extend(funcs.iter().map(|f| orbit_hits_final(f, d.initial, &d.finals)));
    Ok(Dfa { alphabet: d.alphabet.clone(), trans, initial: 0, finals }.minimize())
}

fn orbit_hits_final(f: &[usize], start: usize, finals: &[bool]) -> bool {
    let mut seen = vec![false; f.len()];
    let mut q = f[start];
    while !seen[q] {
        if finals[q] {
            return true;
        }
        seen[q] = true;
        q = f[q];
    }
    false
}

// ----------------------------------------------------------------------------
// State elimination

fn s_concat(l: &RatExpr, r: &RatExpr) -> RatExpr {
    match (l, r) {
        (RatExpr::Zero, _) | (_, RatExpr::Zero) => RatExpr::Zero,
        (RatExpr::One, _) => r.clone(),
        (_, RatExpr::One) => l.clone(),
        _ => RatExpr::concat(l.clone(), r.clone()),
    }
}

fn s_sum(l: Option<RatExpr>, r: RatExpr) -> RatExpr {
    match l {
        None | Some(RatExpr::Zero) => r,
        Some(l) if l == r => l,
        Some(l) => RatExpr::sum(l, r),
    }
}

fn s_star(e: &RatExpr) -> RatExpr {
    match e {
        RatExpr::Zero | RatExpr::One => RatExpr::One,
        RatExpr::Star(_) => e.clone(),
        _ => RatExpr::star(e.clone()),
    }
}

/// A rational expression for `L(d)`, obtained by state elimination.
///
/// The automaton is minimized and trimmed first. States are removed
/// greedily by smallest in-degree × out-degree. The result is checked by
/// recompiling it and comparing with `d`.
pub fn dfa_to_expr(d: &Dfa) -> Result<RatExpr> {
    let m = d.minimize();
    let useful = m.useful();
    let states: Vec<usize> = (0..m.num_states()).filter(|&q| useful[q]).collect();
    if states.is_empty() {
        return Ok(RatExpr::Zero);
    }
    let mut index = vec![usize::MAX; m.num_states()];
    for (i, &q) in states.iter().enumerate() {
        index[q] = i;
    }
    let n = states.len();
    let (src, dst) = (n, n + 1);
    let mut edge: Vec<Vec<Option<RatExpr>>> = vec![vec![None; n + 2]; n + 2];
    for (i, &q) in states.iter().enumerate() {
        for (s, &c) in m.alphabet.letters().iter().enumerate() {
            let r = m.next(q, s);
            if useful[r] {
                let j = index[r];
                edge[i][j] = Some(s_sum(edge[i][j].take(), RatExpr::Letter(c)));
            }
        }
        if m.finals[q] {
            edge[i][dst] = Some(RatExpr::One);
        }
    }
    edge[src][index[m.initial]] = Some(RatExpr::One);

    let mut alive: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let degree = |k: usize, edge: &Vec<Vec<Option<RatExpr>>>, alive: &Vec<bool>| {
            let live = |x: usize| x >= n || alive[x];
            let ins = (0..n + 2).filter(|&p| p != k && live(p) && edge[p][k].is_some()).count();
            let outs = (0..n + 2).filter(|&s| s != k && live(s) && edge[k][s].is_some()).count();
            ins * outs
        };
        let k = (0..n)
            .filter(|&k| alive[k])
            .min_by_key(|&k| degree(k, &edge, &alive))
            .expect("a live state remains");
        alive[k] = false;
        let live = |x: usize| x >= n || alive[x];
        let self_loop = edge[k][k].as_ref().map_or(RatExpr::One, s_star);
        let preds: Vec<usize> = (0..n + 2).filter(|&p| live(p) && edge[p][k].is_some()).collect();
        let succs: Vec<usize> = (0..n + 2).filter(|&s| live(s) && edge[k][s].is_some()).collect();
        for &p in &preds {
            let into = edge[p][k].clone().expect("pred edge");
            let head = s_concat(&into, &self_loop);
            for &s in &succs {
                let out = edge[k][s].as_ref().expect("succ edge");
                let path = s_concat(&head, out);
                edge[p][s] = Some(s_sum(edge[p][s].take(), path));
            }
        }
        for x in 0..n + 2 {
            edge[x][k] = None;
            edge[k][x] = None;
        }
    }
    let result = normalize_b(&edge[src][dst].take().unwrap_or(RatExpr::Zero));
    let check = compile_dfa(&result, &d.alphabet)?;
    if let Some(w) = distinguishing_word(&check, d)? {
        return Err(Error::Certification(format!(
            "state elimination produced {result}, which disagrees on '{w}'"
        )));
    }
    Ok(result)
}
