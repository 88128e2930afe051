//! Rational ω-expressions, a Büchi-automaton membership oracle for
//! ultimately periodic words, and the maps `h` and `Γ` turning an
//! ω-expression into a saturated lasso automaton.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::langops::{boolean_combine, compile_dfa, dfa_to_expr, root, BoolOp, Dfa};
use crate::lasso::Lasso;
use crate::lassoaut::LassoAutomaton;
use crate::lassoexp::{compile_df, DisjunctiveForm};
use crate::ratexp::{self, normalize_b, split, RatExpr};
use crate::syntax::{self, Node, Syn};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaExpr {
    Zero,
    Sum(Arc<OmegaExpr>, Arc<OmegaExpr>),
    Prefix(RatExpr, Arc<OmegaExpr>),
    /// `r$`, infinite concatenations of words of `r`; `r` never has the
    /// empty word property.
    Power(RatExpr),
}

impl OmegaExpr {
    pub fn power(r: RatExpr) -> Result<OmegaExpr> {
        if r.ewp() {
            return Err(Error::EmptyWordOperand { pos: 0, op: '$' });
        }
        Ok(OmegaExpr::Power(r))
    }

    pub fn prefix(t: RatExpr, rest: OmegaExpr) -> OmegaExpr {
        OmegaExpr::Prefix(t, Arc::new(rest))
    }

    pub fn sum(l: OmegaExpr, r: OmegaExpr) -> OmegaExpr {
        OmegaExpr::Sum(Arc::new(l), Arc::new(r))
    }

    pub fn sum_all(items: impl IntoIterator<Item = OmegaExpr>) -> OmegaExpr {
        let items: Vec<OmegaExpr> = items.into_iter().collect();
        let mut it = items.into_iter().rev();
        match it.next() {
            None => OmegaExpr::Zero,
            Some(last) => it.fold(last, |acc, l| OmegaExpr::sum(l, acc)),
        }
    }
}

impl fmt::Display for OmegaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaExpr::Zero => f.write_str("0"),
            OmegaExpr::Power(r) => {
                r.fmt_operand(f)?;
                f.write_str("$")
            }
            OmegaExpr::Prefix(t, rest) => {
                t.fmt_prefix(f)?;
                match rest.as_ref() {
                    OmegaExpr::Sum(..) => write!(f, "({rest})"),
                    _ => write!(f, "{rest}"),
                }
            }
            OmegaExpr::Sum(l, r) => match l.as_ref() {
                OmegaExpr::Sum(..) => write!(f, "({l})+{r}"),
                _ => write!(f, "{l}+{r}"),
            },
        }
    }
}

pub fn parse_oexp(text: &str, alphabet: &Alphabet) -> Result<OmegaExpr> {
    from_syntax(&syntax::parse(text, alphabet)?)
}

fn from_syntax(s: &Syn) -> Result<OmegaExpr> {
    Ok(match &s.node {
        Node::Zero => OmegaExpr::Zero,
        Node::Omega(r) => {
            let r = ratexp::from_syntax(r)?;
            if r.ewp() {
                return Err(Error::EmptyWordOperand { pos: s.pos, op: '$' });
            }
            OmegaExpr::Power(r)
        }
        Node::Concat(l, r) => OmegaExpr::prefix(ratexp::from_syntax(l)?, from_syntax(r)?),
        Node::Sum(l, r) => OmegaExpr::sum(from_syntax(l)?, from_syntax(r)?),
        _ => return Err(Error::Sort { pos: s.pos, expected: "an ω-expression" }),
    })
}

// ----------------------------------------------------------------------------
// Büchi oracle

/// Nondeterministic Büchi automaton, used only as a membership oracle.
#[derive(Clone, Debug)]
pub struct Nba {
    alphabet: Alphabet,
    /// `trans[q][sym]` lists the successors of `q`.
    trans: Vec<Vec<Vec<usize>>>,
    initials: Vec<usize>,
    accepting: Vec<bool>,
}

impl Nba {
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    fn add_state(&mut self, accepting: bool) -> usize {
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.accepting.push(accepting);
        self.accepting.len() - 1
    }

    /// Copies `other` in, returning the offset of its states.
    fn absorb(&mut self, other: Nba) -> usize {
        let off = self.num_states();
        for row in other.trans {
            self.trans.push(row.into_iter().map(|ts| ts.into_iter().map(|t| t + off).collect()).collect());
        }
        self.accepting.extend(other.accepting);
        off
    }

    fn dfa_part(&mut self, d: &Dfa) -> usize {
        let off = self.num_states();
        for q in 0..d.num_states() {
            self.add_state(false);
            for s in 0..self.alphabet.len() {
                let t = d.next(q, s) + off;
                self.trans[off + q][s].push(t);
            }
        }
        off
    }

    /// Whether `u v^ω` is accepted: search the product with the lasso's
    /// position graph for a reachable accepting node on a cycle.
    pub fn accepts_lasso(&self, l: &Lasso) -> Result<bool> {
        let u = self.alphabet.encode(l.spoke())?;
        let v = self.alphabet.encode(l.cycle())?;
        let word: Vec<usize> = u.iter().chain(&v).copied().collect();
        let len = word.len();
        let next_pos = |p: usize| if p + 1 == len { u.len() } else { p + 1 };
        let n = self.num_states();
        let id = |q: usize, p: usize| q * len + p;
        let succ = |node: usize| {
            let (q, p) = (node / len, node % len);
            self.trans[q][word[p]].iter().map(move |&r| id(r, next_pos(p)))
        };
        let mut seen = vec![false; n * len];
        let mut stack: Vec<usize> = self.initials.iter().map(|&q| id(q, 0)).collect();
        for &s in &stack {
            seen[s] = true;
        }
        let mut reached = Vec::new();
        while let Some(node) = stack.pop() {
            reached.push(node);
            for m in succ(node) {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        for &start in reached.iter().filter(|&&nd| self.accepting[nd / len]) {
            let mut inner = vec![false; n * len];
            let mut stack: Vec<usize> = succ(start).collect();
            while let Some(node) = stack.pop() {
                if node == start {
                    return Ok(true);
                }
                if !inner[node] {
                    inner[node] = true;
                    stack.extend(succ(node));
                }
            }
        }
        Ok(false)
    }
}

/// Büchi automaton for `⟦T⟧ω`, built from DFAs of the rational parts
/// without any lasso machinery.
pub fn to_nba(t: &OmegaExpr, alphabet: &Alphabet) -> Result<Nba> {
    let mut nba = Nba {
        alphabet: alphabet.clone(),
        trans: Vec::new(),
        initials: Vec::new(),
        accepting: Vec::new(),
    };
    match t {
        OmegaExpr::Zero => {}
        OmegaExpr::Sum(l, r) => {
            let l = to_nba(l, alphabet)?;
            let r = to_nba(r, alphabet)?;
            let (li, ri) = (l.initials.clone(), r.initials.clone());
            let lo = nba.absorb(l);
            let ro = nba.absorb(r);
            nba.initials = li.iter().map(|q| q + lo).chain(ri.iter().map(|q| q + ro)).collect();
        }
        OmegaExpr::Power(r) => {
            let d = compile_dfa(r, alphabet)?;
            let off = nba.dfa_part(&d);
            let s = nba.add_state(true);
            for sym in 0..alphabet.len() {
                let first = d.next(d.initial(), sym);
                nba.trans[s][sym].push(first + off);
                if d.is_final(first) {
                    nba.trans[s][sym].push(s);
                }
                for q in 0..d.num_states() {
                    if d.is_final(d.next(q, sym)) {
                        nba.trans[q + off][sym].push(s);
                    }
                }
            }
            nba.initials = vec![s];
        }
        OmegaExpr::Prefix(p, rest) => {
            let d = compile_dfa(p, alphabet)?;
            let tail = to_nba(rest, alphabet)?;
            let entry: Vec<Vec<usize>> = (0..alphabet.len())
                .map(|sym| {
                    let mut ts: Vec<usize> =
                        tail.initials.iter().flat_map(|&i| tail.trans[i][sym].clone()).collect();
                    ts.sort_unstable();
                    ts.dedup();
                    ts
                })
                .collect();
            let off = nba.dfa_part(&d);
            let toff = nba.absorb(tail);
            for q in (0..d.num_states()).filter(|&q| d.is_final(q)) {
                for (sym, ts) in entry.iter().enumerate() {
                    nba.trans[q + off][sym].extend(ts.iter().map(|t| t + toff));
                }
            }
            nba.initials = vec![d.initial() + off];
        }
    }
    Ok(nba)
}

fn letters_of(t: &OmegaExpr, l: &Lasso) -> Alphabet {
    let text = t.to_string();
    Alphabet::infer([text.as_str(), l.spoke(), l.cycle()])
}

/// Whether `u v^ω ∈ ⟦T⟧ω`.
pub fn up_member(t: &OmegaExpr, l: &Lasso) -> Result<bool> {
    to_nba(t, &letters_of(t, l))?.accepts_lasso(l)
}

// ----------------------------------------------------------------------------
// h and Γ

/// The weak representation `h(T)` as a disjunctive form, with each
/// `(t*·t0, t1·t*·t0)` loop normalized.
pub fn h_map(t: &OmegaExpr) -> Result<DisjunctiveForm> {
    Ok(match t {
        OmegaExpr::Zero => DisjunctiveForm::new(),
        OmegaExpr::Sum(l, r) => h_map(l)?.union(&h_map(r)?),
        OmegaExpr::Prefix(p, rest) => h_map(rest)?.prefixed(p),
        OmegaExpr::Power(r) => {
            let star = RatExpr::star(r.clone());
            let mut pairs = Vec::new();
            for sp in split(r) {
                let spoke = RatExpr::concat(star.clone(), sp.left.clone());
                let cycle = normalize_b(&RatExpr::concat_all([sp.right, star.clone(), sp.left]));
                if cycle.ewp() {
                    return Err(Error::Certification(format!("h produced a loop {cycle} with ε")));
                }
                pairs.push((spoke, cycle));
            }
            DisjunctiveForm::from_pairs(pairs)?
        }
    })
}

/// `Γ(τ) = Σ (t0', √((t1' ∩ s1')·s0'))@` over the splits of each
/// `(t, s) ∈ τ`, with empty loop languages dropped.
pub fn gamma_map(df: &DisjunctiveForm, alphabet: &Alphabet) -> Result<DisjunctiveForm> {
    let mut memo: HashMap<(RatExpr, RatExpr, RatExpr), Option<RatExpr>> = HashMap::new();
    let mut out = DisjunctiveForm::new();
    for (t, s) in df.pairs() {
        let s_splits = split(s);
        for tp in split(t) {
            let t1 = compile_dfa(&tp.right, alphabet)?;
            for sp in &s_splits {
                let key = (tp.right.clone(), sp.left.clone(), sp.right.clone());
                let cycle = match memo.get(&key) {
                    Some(c) => c.clone(),
                    None => {
                        let c = gamma_loop(&t1, &sp.left, &sp.right, alphabet)?;
                        memo.insert(key, c.clone());
                        c
                    }
                };
                if let Some(c) = cycle {
                    out.insert(tp.left.clone(), c);
                }
            }
        }
    }
    Ok(out)
}

fn gamma_loop(t1: &Dfa, s0: &RatExpr, s1: &RatExpr, alphabet: &Alphabet) -> Result<Option<RatExpr>> {
    let meet = boolean_combine(t1, &compile_dfa(s1, alphabet)?, BoolOp::And)?;
    if meet.is_empty() {
        return Ok(None);
    }
    let meet = dfa_to_expr(&meet)?;
    let body = compile_dfa(&RatExpr::concat(meet, s0.clone()), alphabet)?;
    let rt = root(&body)?;
    if rt.is_empty() {
        return Ok(None);
    }
    let e = dfa_to_expr(&rt)?;
    if e.ewp() {
        return Err(Error::Certification(format!("root expression {e} accepts ε")));
    }
    Ok(Some(e))
}

/// Applies Γ until the form stops changing, at most `max_rounds` times.
/// There is no termination guarantee for arbitrary inputs; returns the last
/// form together with whether a fixpoint was reached.
pub fn gamma_fixpoint(
    df: &DisjunctiveForm,
    alphabet: &Alphabet,
    max_rounds: usize,
) -> Result<(DisjunctiveForm, bool)> {
    let mut cur = df.clone();
    for _ in 0..max_rounds {
        let next = gamma_map(&cur, alphabet)?;
        if next == cur {
            return Ok((cur, true));
        }
        cur = next;
    }
    Ok((cur, false))
}

pub fn represent(t: &OmegaExpr, alphabet: &Alphabet) -> Result<DisjunctiveForm> {
    gamma_map(&h_map(t)?, alphabet)
}

/// Saturated lasso automaton accepting the lassos of `⟦T⟧ω`. Saturation of
/// the result is checked exactly before returning.
pub fn omega_to_omega_automaton(t: &OmegaExpr, alphabet: &Alphabet) -> Result<LassoAutomaton> {
    let aut = compile_df(&represent(t, alphabet)?, alphabet)?;
    if let Some((acc, rej)) = aut.saturation_counterexample()? {
        return Err(Error::Certification(format!(
            "pipeline output for {t} is not saturated: accepts {acc} but not {rej}"
        )));
    }
    Ok(aut)
}

/// Spoke and loop expressions of `df`, as a set, for display in tests.
pub fn pair_strings(df: &DisjunctiveForm) -> BTreeSet<(String, String)> {
    df.pairs().map(|(t, s)| (t.to_string(), s.to_string())).collect()
}
