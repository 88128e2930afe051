//! Rational lasso expressions `0 | r@ | t·ρ | ρ + ρ`, their disjunctive
//! forms, spoke and switch derivatives, and compilation into lasso automata.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::lasso::Lasso;
use crate::lassoaut::LassoAutomaton;
use crate::ratexp::{self, deriv, member_naive, normalize_b, sum_normalized, RatExpr};
use crate::syntax::{self, Node, Syn};
use crate::STATE_CAP;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LassoExpr {
    Zero,
    /// `r@`, the lassos `(ε, w)` with `w ∈ ⟦r⟧`; `r` never has the empty
    /// word property.
    Circle(RatExpr),
    Prefix(RatExpr, Arc<LassoExpr>),
    Sum(Arc<LassoExpr>, Arc<LassoExpr>),
}

impl LassoExpr {
    pub fn circle(r: RatExpr) -> Result<LassoExpr> {
        if r.ewp() {
            return Err(Error::EmptyWordOperand { pos: 0, op: '@' });
        }
        Ok(LassoExpr::Circle(r))
    }

    pub fn prefix(t: RatExpr, rho: LassoExpr) -> LassoExpr {
        LassoExpr::Prefix(t, Arc::new(rho))
    }

    pub fn sum(l: LassoExpr, r: LassoExpr) -> LassoExpr {
        LassoExpr::Sum(Arc::new(l), Arc::new(r))
    }

    /// Right-nested sum; `0` when empty.
    pub fn sum_all(items: impl IntoIterator<Item = LassoExpr>) -> LassoExpr {
        let items: Vec<LassoExpr> = items.into_iter().collect();
        let mut it = items.into_iter().rev();
        match it.next() {
            None => LassoExpr::Zero,
            Some(last) => it.fold(last, |acc, l| LassoExpr::sum(l, acc)),
        }
    }
}

impl fmt::Display for LassoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LassoExpr::Zero => f.write_str("0"),
            LassoExpr::Circle(r) => {
                r.fmt_operand(f)?;
                f.write_str("@")
            }
            LassoExpr::Prefix(t, rho) => {
                t.fmt_prefix(f)?;
                match rho.as_ref() {
                    LassoExpr::Sum(..) => write!(f, "({rho})"),
                    _ => write!(f, "{rho}"),
                }
            }
            LassoExpr::Sum(l, r) => match l.as_ref() {
                LassoExpr::Sum(..) => write!(f, "({l})+{r}"),
                _ => write!(f, "{l}+{r}"),
            },
        }
    }
}

/// Parses a lasso expression. A concatenation's last factor carries the
/// lasso sort, every other factor is rational.
pub fn parse_lexp(text: &str, alphabet: &Alphabet) -> Result<LassoExpr> {
    from_syntax(&syntax::parse(text, alphabet)?)
}

fn from_syntax(s: &Syn) -> Result<LassoExpr> {
    Ok(match &s.node {
        Node::Zero => LassoExpr::Zero,
        Node::Circle(r) => {
            let r = ratexp::from_syntax(r)?;
            if r.ewp() {
                return Err(Error::EmptyWordOperand { pos: s.pos, op: '@' });
            }
            LassoExpr::Circle(r)
        }
        Node::Concat(l, r) => LassoExpr::prefix(ratexp::from_syntax(l)?, from_syntax(r)?),
        Node::Sum(l, r) => LassoExpr::sum(from_syntax(l)?, from_syntax(r)?),
        _ => return Err(Error::Sort { pos: s.pos, expected: "a lasso expression" }),
    })
}

/// Decides `l ∈ ⟦ρ⟧∘` from the semantics alone.
pub fn member_lasso_naive(rho: &LassoExpr, l: &Lasso) -> bool {
    member_from(rho, l.spoke(), l.cycle())
}

fn member_from(rho: &LassoExpr, u: &str, v: &str) -> bool {
    match rho {
        LassoExpr::Zero => false,
        LassoExpr::Circle(r) => u.is_empty() && member_naive(r, v),
        LassoExpr::Prefix(t, rest) => {
            (0..=u.len()).any(|i| member_naive(t, &u[..i]) && member_from(rest, &u[i..], v))
        }
        LassoExpr::Sum(l, r) => member_from(l, u, v) || member_from(r, u, v),
    }
}

// ----------------------------------------------------------------------------
// Disjunctive forms

/// A finite sum `Σ tᵢ·(rᵢ)@`, kept canonical: spokes normalized, loops
/// syntactic, pairs sorted and deduplicated, pairs denoting nothing dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DisjunctiveForm {
    pairs: BTreeSet<(RatExpr, RatExpr)>,
}

impl DisjunctiveForm {
    pub fn new() -> DisjunctiveForm {
        DisjunctiveForm::default()
    }

    /// Builds a form from `(spoke, loop)` pairs. Loops with the empty word
    /// property are rejected.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (RatExpr, RatExpr)>) -> Result<Self> {
        let mut df = DisjunctiveForm::new();
        for (t, s) in pairs {
            if s.ewp() {
                return Err(Error::EmptyWordOperand { pos: 0, op: '@' });
            }
            df.insert(t, s);
        }
        Ok(df)
    }

    pub(crate) fn insert(&mut self, spoke: RatExpr, cycle: RatExpr) {
        let spoke = normalize_b(&spoke);
        if spoke == RatExpr::Zero || normalize_b(&cycle) == RatExpr::Zero {
            return;
        }
        self.pairs.insert((spoke, cycle));
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(RatExpr, RatExpr)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn union(&self, other: &DisjunctiveForm) -> DisjunctiveForm {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        DisjunctiveForm { pairs }
    }

    /// `t · self`, distributed over the spokes.
    pub fn prefixed(&self, t: &RatExpr) -> DisjunctiveForm {
        let mut out = DisjunctiveForm::new();
        for (s, r) in &self.pairs {
            out.insert(RatExpr::concat(t.clone(), s.clone()), r.clone());
        }
        out
    }

    pub fn to_expr(&self) -> LassoExpr {
        LassoExpr::sum_all(
            self.pairs.iter().map(|(t, r)| LassoExpr::prefix(t.clone(), LassoExpr::Circle(r.clone()))),
        )
    }

    pub fn member(&self, l: &Lasso) -> bool {
        member_lasso_naive(&self.to_expr(), l)
    }
}

impl fmt::Display for DisjunctiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            t.fmt_prefix(f)?;
            write!(f, ".({r})@")?;
        }
        Ok(())
    }
}

pub fn disjunctive_form(rho: &LassoExpr) -> DisjunctiveForm {
    match rho {
        LassoExpr::Zero => DisjunctiveForm::new(),
        LassoExpr::Circle(r) => {
            let mut df = DisjunctiveForm::new();
            df.insert(RatExpr::One, r.clone());
            df
        }
        LassoExpr::Prefix(t, rest) => disjunctive_form(rest).prefixed(t),
        LassoExpr::Sum(l, r) => disjunctive_form(l).union(&disjunctive_form(r)),
    }
}

// ----------------------------------------------------------------------------
// Derivatives

/// Spoke derivative on arbitrary lasso expressions, unsimplified.
pub fn d1_general(rho: &LassoExpr, a: char) -> LassoExpr {
    match rho {
        LassoExpr::Zero | LassoExpr::Circle(_) => LassoExpr::Zero,
        LassoExpr::Prefix(r, rest) => LassoExpr::sum(
            LassoExpr::Prefix(deriv(r, a), rest.clone()),
            LassoExpr::prefix(RatExpr::iverson(r.ewp()), d1_general(rest, a)),
        ),
        LassoExpr::Sum(l, r) => LassoExpr::sum(d1_general(l, a), d1_general(r, a)),
    }
}

/// Switch derivative on arbitrary lasso expressions, normalized.
pub fn d2_general(rho: &LassoExpr, a: char) -> RatExpr {
    normalize_b(&raw_d2(rho, a))
}

fn raw_d2(rho: &LassoExpr, a: char) -> RatExpr {
    match rho {
        LassoExpr::Zero => RatExpr::Zero,
        LassoExpr::Circle(t) => deriv(t, a),
        LassoExpr::Prefix(r, rest) => RatExpr::concat(RatExpr::iverson(r.ewp()), raw_d2(rest, a)),
        LassoExpr::Sum(l, r) => RatExpr::sum(raw_d2(l, a), raw_d2(r, a)),
    }
}

pub fn d1_df(df: &DisjunctiveForm, a: char) -> DisjunctiveForm {
    let mut out = DisjunctiveForm::new();
    for (t, s) in &df.pairs {
        out.insert(deriv(t, a), s.clone());
    }
    out
}

pub fn d2_df(df: &DisjunctiveForm, a: char) -> RatExpr {
    sum_normalized(df.pairs.iter().filter(|(t, _)| t.ewp()).map(|(_, s)| deriv(s, a)).collect())
}

// ----------------------------------------------------------------------------
// Compilation

/// Lasso automaton of `ρ` with the disjunctive form labelling each spoke
/// state and the normalized expression labelling each loop state.
pub fn compile_lasso_labeled(
    rho: &LassoExpr,
    alphabet: &Alphabet,
) -> Result<(LassoAutomaton, Vec<DisjunctiveForm>, Vec<RatExpr>)> {
    compile_df_labeled(&disjunctive_form(rho), alphabet)
}

pub fn compile_lasso(rho: &LassoExpr, alphabet: &Alphabet) -> Result<LassoAutomaton> {
    Ok(compile_lasso_labeled(rho, alphabet)?.0)
}

pub fn compile_df(df: &DisjunctiveForm, alphabet: &Alphabet) -> Result<LassoAutomaton> {
    Ok(compile_df_labeled(df, alphabet)?.0)
}

struct Interner<T> {
    ids: HashMap<T, usize>,
    items: Vec<T>,
}

impl<T: Clone + Eq + std::hash::Hash> Interner<T> {
    fn new() -> Self {
        Interner { ids: HashMap::new(), items: Vec::new() }
    }

    fn intern(&mut self, item: T) -> Result<usize> {
        if let Some(&id) = self.ids.get(&item) {
            return Ok(id);
        }
        if self.items.len() >= STATE_CAP {
            return Err(Error::StateCap(STATE_CAP));
        }
        self.ids.insert(item.clone(), self.items.len());
        self.items.push(item);
        Ok(self.items.len() - 1)
    }
}

pub fn compile_df_labeled(
    df: &DisjunctiveForm,
    alphabet: &Alphabet,
) -> Result<(LassoAutomaton, Vec<DisjunctiveForm>, Vec<RatExpr>)> {
    let mut spokes = Interner::new();
    let mut loops = Interner::new();
    spokes.intern(df.clone())?;
    let (mut d1, mut d2, mut d3) = (Vec::new(), Vec::new(), Vec::new());
    let mut i = 0;
    while i < spokes.items.len() {
        let cur = spokes.items[i].clone();
        for &a in alphabet.letters() {
            d1.push(spokes.intern(d1_df(&cur, a))?);
            d2.push(loops.intern(d2_df(&cur, a))?);
        }
        i += 1;
    }
    let mut j = 0;
    while j < loops.items.len() {
        let cur = loops.items[j].clone();
        for &a in alphabet.letters() {
            d3.push(loops.intern(deriv(&cur, a))?);
        }
        j += 1;
    }
    let finals = loops.items.iter().map(RatExpr::ewp).collect();
    let aut = LassoAutomaton::with_default_names(alphabet.clone(), d1, d2, d3, 0, finals)?;
    Ok((aut, spokes.items, loops.items))
}
