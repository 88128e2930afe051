//! Rational expressions: syntax, a derivative-free membership oracle,
//! Brzozowski derivatives, a canonical normal form, and the sequential
//! splitting relation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::syntax::{self, Node, Syn};

/// A rational expression over `0`, `1`, letters, concatenation, sum and star.
///
/// The derived ordering (constructor rank, then children left to right) is
/// the order used to sort summands in [`normalize_b`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatExpr {
    Zero,
    One,
    Letter(char),
    Concat(Arc<RatExpr>, Arc<RatExpr>),
    Sum(Arc<RatExpr>, Arc<RatExpr>),
    Star(Arc<RatExpr>),
}

impl RatExpr {
    pub fn letter(c: char) -> RatExpr {
        RatExpr::Letter(c)
    }

    pub fn concat(l: RatExpr, r: RatExpr) -> RatExpr {
        RatExpr::Concat(Arc::new(l), Arc::new(r))
    }

    pub fn sum(l: RatExpr, r: RatExpr) -> RatExpr {
        RatExpr::Sum(Arc::new(l), Arc::new(r))
    }

    pub fn star(e: RatExpr) -> RatExpr {
        RatExpr::Star(Arc::new(e))
    }

    /// `[b]` as an expression: `1` when `b` holds, `0` otherwise.
    pub fn iverson(b: bool) -> RatExpr {
        if b {
            RatExpr::One
        } else {
            RatExpr::Zero
        }
    }

    /// Right-nested concatenation of `items`; `1` when empty.
    pub fn concat_all(items: impl IntoIterator<Item = RatExpr>) -> RatExpr {
        let items: Vec<RatExpr> = items.into_iter().collect();
        let mut it = items.into_iter().rev();
        match it.next() {
            None => RatExpr::One,
            Some(last) => it.fold(last, |acc, l| RatExpr::concat(l, acc)),
        }
    }

    /// The expression matching exactly `word`.
    pub fn word(word: &str) -> RatExpr {
        RatExpr::concat_all(word.chars().map(RatExpr::Letter))
    }

    /// Whether the empty word belongs to the language.
    pub fn ewp(&self) -> bool {
        match self {
            RatExpr::Zero | RatExpr::Letter(_) => false,
            RatExpr::One | RatExpr::Star(_) => true,
            RatExpr::Sum(l, r) => l.ewp() || r.ewp(),
            RatExpr::Concat(l, r) => l.ewp() && r.ewp(),
        }
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            RatExpr::Zero | RatExpr::One | RatExpr::Letter(_) => 1,
            RatExpr::Star(e) => 1 + e.size(),
            RatExpr::Concat(l, r) | RatExpr::Sum(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of letter occurrences.
    pub fn letter_count(&self) -> usize {
        match self {
            RatExpr::Zero | RatExpr::One => 0,
            RatExpr::Letter(_) => 1,
            RatExpr::Star(e) => e.letter_count(),
            RatExpr::Concat(l, r) | RatExpr::Sum(l, r) => l.letter_count() + r.letter_count(),
        }
    }

    fn is_sum(&self) -> bool {
        matches!(self, RatExpr::Sum(..))
    }

    fn is_atomic(&self) -> bool {
        matches!(self, RatExpr::Zero | RatExpr::One | RatExpr::Letter(_) | RatExpr::Star(_))
    }

    /// Writes `self` as an operand of a prefix position, parenthesised when
    /// printing it bare would re-associate.
    pub(crate) fn fmt_prefix(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    /// Writes `self` as the operand of a postfix operator.
    pub(crate) fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatExpr::Concat(..) | RatExpr::Sum(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatExpr::Zero => f.write_str("0"),
            RatExpr::One => f.write_str("1"),
            RatExpr::Letter(c) => write!(f, "{c}"),
            RatExpr::Star(e) => {
                e.fmt_operand(f)?;
                f.write_str("*")
            }
            RatExpr::Concat(l, r) => {
                if l.is_atomic() {
                    write!(f, "{l}")?;
                } else {
                    write!(f, "({l})")?;
                }
                if r.is_sum() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            RatExpr::Sum(l, r) => {
                if l.is_sum() {
                    write!(f, "({l})+{r}")
                } else {
                    write!(f, "{l}+{r}")
                }
            }
        }
    }
}

/// Parses a rational expression; `@` and `$` are rejected.
pub fn parse_rexp(text: &str, alphabet: &Alphabet) -> Result<RatExpr> {
    from_syntax(&syntax::parse(text, alphabet)?)
}

pub(crate) fn from_syntax(s: &Syn) -> Result<RatExpr> {
    Ok(match &s.node {
        Node::Zero => RatExpr::Zero,
        Node::One => RatExpr::One,
        Node::Letter(c) => RatExpr::Letter(*c),
        Node::Concat(l, r) => RatExpr::concat(from_syntax(l)?, from_syntax(r)?),
        Node::Sum(l, r) => RatExpr::sum(from_syntax(l)?, from_syntax(r)?),
        Node::Star(e) => RatExpr::star(from_syntax(e)?),
        Node::Circle(_) | Node::Omega(_) => {
            return Err(Error::Sort { pos: s.pos, expected: "a rational expression" })
        }
    })
}

// ----------------------------------------------------------------------------
// Normal form

/// Canonical representative used as DFA state.
///
/// Applies `1·t → t`, `t·1 → t`, `0·t → 0`, `t·0 → 0` and treats sums as
/// duplicate-free sets: nested sums are flattened, `0` summands dropped, the
/// rest sorted and rebuilt right-nested. Idempotent.
pub fn normalize_b(t: &RatExpr) -> RatExpr {
    match t {
        RatExpr::Zero | RatExpr::One | RatExpr::Letter(_) => t.clone(),
        RatExpr::Concat(l, r) => mk_concat(normalize_b(l), normalize_b(r)),
        RatExpr::Sum(..) => {
            let mut items = Vec::new();
            collect_summands(t, &mut items);
            build_sum(items.into_iter().map(normalize_b).collect())
        }
        RatExpr::Star(e) => RatExpr::star(normalize_b(e)),
    }
}

fn collect_summands<'a>(t: &'a RatExpr, out: &mut Vec<&'a RatExpr>) {
    match t {
        RatExpr::Sum(l, r) => {
            collect_summands(l, out);
            collect_summands(r, out);
        }
        _ => out.push(t),
    }
}

fn mk_concat(l: RatExpr, r: RatExpr) -> RatExpr {
    match (&l, &r) {
        (RatExpr::Zero, _) | (_, RatExpr::Zero) => RatExpr::Zero,
        (RatExpr::One, _) => r,
        (_, RatExpr::One) => l,
        _ => RatExpr::concat(l, r),
    }
}

/// Sum of already normalized items.
fn build_sum(items: Vec<RatExpr>) -> RatExpr {
    let mut flat = Vec::with_capacity(items.len());
    for it in &items {
        let mut parts = Vec::new();
        collect_summands(it, &mut parts);
        flat.extend(parts.into_iter().filter(|p| **p != RatExpr::Zero).cloned());
    }
    flat.sort();
    flat.dedup();
    let mut it = flat.into_iter().rev();
    match it.next() {
        None => RatExpr::Zero,
        Some(last) => it.fold(last, |acc, l| RatExpr::sum(l, acc)),
    }
}

/// Normalized sum of normalized expressions.
pub(crate) fn sum_normalized(items: Vec<RatExpr>) -> RatExpr {
    build_sum(items)
}

// ----------------------------------------------------------------------------
// Derivatives

/// Brzozowski derivative `d(t, a)`, returned in normal form.
pub fn deriv(t: &RatExpr, a: char) -> RatExpr {
    normalize_b(&raw_deriv(t, a))
}

fn raw_deriv(t: &RatExpr, a: char) -> RatExpr {
    match t {
        RatExpr::Zero | RatExpr::One => RatExpr::Zero,
        RatExpr::Letter(b) => RatExpr::iverson(*b == a),
        RatExpr::Sum(l, r) => RatExpr::sum(raw_deriv(l, a), raw_deriv(r, a)),
        RatExpr::Concat(l, r) => RatExpr::sum(
            RatExpr::Concat(Arc::new(raw_deriv(l, a)), r.clone()),
            RatExpr::concat(RatExpr::iverson(l.ewp()), raw_deriv(r, a)),
        ),
        RatExpr::Star(e) => RatExpr::Concat(Arc::new(raw_deriv(e, a)), Arc::new(t.clone())),
    }
}

/// Derivative by a whole word; the identity on the empty word.
pub fn word_deriv(t: &RatExpr, word: &str) -> RatExpr {
    word.chars().fold(t.clone(), |acc, a| deriv(&acc, a))
}

// ----------------------------------------------------------------------------
// Membership oracle

/// Decides `word ∈ ⟦t⟧` straight from the semantics, trying every
/// factorisation. Memoized on (subterm, span); independent of [`deriv`].
pub fn member_naive(t: &RatExpr, word: &str) -> bool {
    let w: Vec<char> = word.chars().collect();
    let mut memo = HashMap::new();
    member_span(t, &w, 0, w.len(), &mut memo)
}

type Memo = HashMap<(*const RatExpr, usize, usize), bool>;

fn member_span(t: &RatExpr, w: &[char], i: usize, j: usize, memo: &mut Memo) -> bool {
    let key = (t as *const RatExpr, i, j);
    if let Some(&hit) = memo.get(&key) {
        return hit;
    }
    let res = match t {
        RatExpr::Zero => false,
        RatExpr::One => i == j,
        RatExpr::Letter(c) => j == i + 1 && w[i] == *c,
        RatExpr::Sum(l, r) => member_span(l, w, i, j, memo) || member_span(r, w, i, j, memo),
        RatExpr::Concat(l, r) => {
            (i..=j).any(|k| member_span(l, w, i, k, memo) && member_span(r, w, k, j, memo))
        }
        RatExpr::Star(e) => {
            i == j
                || (i + 1..=j)
                    .any(|k| member_span(e, w, i, k, memo) && member_span(t, w, k, j, memo))
        }
    };
    memo.insert(key, res);
    res
}

/// `{u ∈ ⟦t⟧ : |u| ≤ max_len}` in shortlex order.
pub fn enumerate_language(t: &RatExpr, alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    alphabet.words_up_to(max_len).into_iter().filter(|w| member_naive(t, w)).collect()
}

// ----------------------------------------------------------------------------
// Sequential splitting

/// A pair `(left, right)` with `⟦left·right⟧ ⊆ ⟦t⟧`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitPair {
    pub left: RatExpr,
    pub right: RatExpr,
}

impl SplitPair {
    fn new(left: RatExpr, right: RatExpr) -> SplitPair {
        SplitPair { left: normalize_b(&left), right: normalize_b(&right) }
    }
}

impl fmt::Display for SplitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// The sequential splitting relation `∇t`, both components normalized and
/// duplicates removed.
pub fn split(t: &RatExpr) -> BTreeSet<SplitPair> {
    match t {
        RatExpr::Zero => BTreeSet::new(),
        RatExpr::One => BTreeSet::from([SplitPair::new(RatExpr::One, RatExpr::One)]),
        RatExpr::Letter(_) => BTreeSet::from([
            SplitPair::new(RatExpr::One, t.clone()),
            SplitPair::new(t.clone(), RatExpr::One),
        ]),
        RatExpr::Sum(l, r) => {
            let mut out = split(l);
            out.extend(split(r));
            out
        }
        RatExpr::Concat(l, r) => {
            let r = r.as_ref();
            let l = l.as_ref();
            let mut out: BTreeSet<SplitPair> = split(l)
                .into_iter()
                .map(|p| SplitPair::new(p.left, RatExpr::concat(p.right, r.clone())))
                .collect();
            out.extend(
                split(r)
                    .into_iter()
                    .map(|p| SplitPair::new(RatExpr::concat(l.clone(), p.left), p.right)),
            );
            out
        }
        RatExpr::Star(e) => {
            let e = e.as_ref();
            let mut out: BTreeSet<SplitPair> = split(e)
                .into_iter()
                .map(|p| {
                    SplitPair::new(
                        RatExpr::concat(t.clone(), p.left),
                        RatExpr::concat(p.right, t.clone()),
                    )
                })
                .collect();
            out.insert(SplitPair::new(RatExpr::One, RatExpr::One));
            out.insert(SplitPair::new(RatExpr::concat(t.clone(), e.clone()), RatExpr::One));
            out
        }
    }
}
