//! Lassos `(u, v)` and the γ rewrite system
//! `(ua, va) → (u, av)`, `(u, v^k) → (u, v)`.

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A spoke word and a nonempty loop word, standing for `u v^ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    spoke: String,
    cycle: String,
}

impl Lasso {
    pub fn new(spoke: impl Into<String>, cycle: impl Into<String>) -> Result<Lasso> {
        let (spoke, cycle) = (spoke.into(), cycle.into());
        if cycle.is_empty() {
            return Err(Error::InvalidLasso("the loop must be nonempty".into()));
        }
        if let Some(c) = spoke.chars().chain(cycle.chars()).find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::InvalidLasso(format!("'{c}' is not a letter a-z")));
        }
        Ok(Lasso { spoke, cycle })
    }

    /// Parses the literal `spoke:loop`; an empty spoke may be written `ε`.
    pub fn parse(text: &str) -> Result<Lasso> {
        let (u, v) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::InvalidLasso(format!("'{text}' is not of the form spoke:loop")))?;
        let unepsilon = |s: &str| if s == "ε" { String::new() } else { s.to_owned() };
        Lasso::new(unepsilon(u), unepsilon(v))
    }

    pub fn spoke(&self) -> &str {
        &self.spoke
    }

    pub fn cycle(&self) -> &str {
        &self.cycle
    }

    /// `|u| + |v|`.
    pub fn size(&self) -> usize {
        self.spoke.len() + self.cycle.len()
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        alphabet.encode(&self.spoke)?;
        alphabet.encode(&self.cycle)?;
        Ok(())
    }

    /// One γ step, trying γ1 before γ2; `None` on a normal form.
    pub fn reduce_step(&self) -> Option<Lasso> {
        self.gamma1_reduct().or_else(|| self.gamma2_reduct())
    }

    fn gamma1_reduct(&self) -> Option<Lasso> {
        let a = self.spoke.chars().last()?;
        if self.cycle.ends_with(a) {
            let u = &self.spoke[..self.spoke.len() - 1];
            let v = &self.cycle[..self.cycle.len() - 1];
            Some(Lasso { spoke: u.to_owned(), cycle: format!("{a}{v}") })
        } else {
            None
        }
    }

    fn gamma2_reduct(&self) -> Option<Lasso> {
        let w = primitive_root(&self.cycle);
        (w.len() < self.cycle.len()).then(|| Lasso { spoke: self.spoke.clone(), cycle: w.to_owned() })
    }

    /// Every lasso reachable by a single γ step, including all `k` for γ2.
    pub fn successors(&self) -> Vec<Lasso> {
        let mut out: Vec<Lasso> = self.gamma1_reduct().into_iter().collect();
        let n = self.cycle.len();
        for p in 1..n {
            if n.is_multiple_of(p) && self.cycle[..p].repeat(n / p) == self.cycle {
                out.push(Lasso { spoke: self.spoke.clone(), cycle: self.cycle[..p].to_owned() });
            }
        }
        out
    }

    pub fn normal_form(&self) -> Lasso {
        let w = primitive_root(&self.cycle);
        // drop the common suffix of spoke and loop^ω, then rotate
        let (u, w) = (self.spoke.as_bytes(), w.as_bytes());
        let mut strip = 0;
        while strip < u.len() && u[u.len() - 1 - strip] == w[(w.len() - 1 - strip % w.len()) % w.len()]
        {
            strip += 1;
        }
        let r = strip % w.len();
        let mut cycle = Vec::with_capacity(w.len());
        cycle.extend_from_slice(&w[w.len() - r..]);
        cycle.extend_from_slice(&w[..w.len() - r]);
        Lasso {
            spoke: String::from_utf8(u[..u.len() - strip].to_vec()).expect("ascii"),
            cycle: String::from_utf8(cycle).expect("ascii"),
        }
    }

    pub fn is_normal(&self) -> bool {
        self.reduce_step().is_none()
    }

    /// The γ1-expansion and the γ2-expansions up to power `k_max`.
    pub fn expansions(&self, k_max: usize) -> Vec<Lasso> {
        let mut chars = self.cycle.chars();
        let a = chars.next().expect("nonempty loop");
        let rest = chars.as_str();
        let mut out = vec![Lasso { spoke: format!("{}{a}", self.spoke), cycle: format!("{rest}{a}") }];
        out.extend(
            (2..=k_max).map(|k| Lasso { spoke: self.spoke.clone(), cycle: self.cycle.repeat(k) }),
        );
        out
    }

    /// Prefix of `u v^ω` of length `n`.
    pub fn unroll(&self, n: usize) -> String {
        self.spoke.chars().chain(self.cycle.chars().cycle()).take(n).collect()
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.spoke, self.cycle)
    }
}

/// Shortest `w` with `v = w^k`, found from the longest proper border.
pub fn primitive_root(v: &str) -> &str {
    let b = v.as_bytes();
    let n = b.len();
    if n == 0 {
        return v;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        &v[..p]
    } else {
        v
    }
}

pub fn normal_form(l: &Lasso) -> Lasso {
    l.normal_form()
}

pub fn gamma_equiv(l1: &Lasso, l2: &Lasso) -> bool {
    l1.normal_form() == l2.normal_form()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether both lassos denote the same infinite word, by direct comparison
/// of sufficiently long prefixes.
pub fn up_equal(l1: &Lasso, l2: &Lasso) -> bool {
    let (p, q) = (l1.cycle.len(), l2.cycle.len());
    let n = l1.spoke.len().max(l2.spoke.len()) + p / gcd(p, q) * q;
    l1.unroll(n) == l2.unroll(n)
}

/// All `(u, v)` with `|u| ≤ max_spoke` and `1 ≤ |v| ≤ max_loop`, spokes
/// outermost, both in shortlex order.
pub fn enumerate_lassos(alphabet: &Alphabet, max_spoke: usize, max_loop: usize) -> Vec<Lasso> {
    let spokes = alphabet.words_up_to(max_spoke);
    let loops: Vec<String> =
        alphabet.words_up_to(max_loop).into_iter().filter(|w| !w.is_empty()).collect();
    let mut out = Vec::with_capacity(spokes.len() * loops.len());
    for u in &spokes {
        for v in &loops {
            out.push(Lasso { spoke: u.clone(), cycle: v.clone() });
        }
    }
    out
}

/// Every lasso γ-equivalent to `l` with spoke and loop lengths within the
/// given bounds.
pub fn equivalents_within(l: &Lasso, max_spoke: usize, max_loop: usize) -> Vec<Lasso> {
    let nf = l.normal_form();
    let w = nf.cycle.as_bytes();
    let mut out = Vec::new();
    if nf.spoke.len() > max_spoke {
        return out;
    }
    for extra in 0..=max_spoke.saturating_sub(nf.spoke.len()) {
        // spoke = nf.spoke followed by `extra` letters of w^ω
        let spoke = nf.unroll(nf.spoke.len() + extra);
        let r = extra % w.len();
        let rotated: Vec<u8> = w[r..].iter().chain(&w[..r]).copied().collect();
        let rotated = String::from_utf8(rotated).expect("ascii");
        for k in 1..=max_loop / w.len() {
            out.push(Lasso { spoke: spoke.clone(), cycle: rotated.repeat(k) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Lasso {
        Lasso::parse(s).unwrap()
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(l(":b"), Lasso::new("", "b").unwrap());
        assert_eq!(l("ε:b"), l(":b"));
        assert_eq!(l("aaa:baa").to_string(), "aaa:baa");
        assert!(Lasso::parse("ab:").is_err());
        assert!(Lasso::parse("ab").is_err());
        assert!(Lasso::parse("A:b").is_err());
    }

    #[test]
    fn single_steps() {
        assert_eq!(l("aba:baba").reduce_step(), Some(l("ab:abab")));
        assert_eq!(l(":abab").reduce_step(), Some(l(":ab")));
        assert_eq!(l(":ab").reduce_step(), None);
    }

    #[test]
    fn normal_forms() {
        assert_eq!(l("aba:baba").normal_form(), l(":ab"));
        assert_eq!(l("ab:ab").normal_form(), l(":ab"));
        assert_eq!(l(":a").normal_form(), l(":a"));
        assert_eq!(l("aaa:baa").normal_form(), l("a:aab"));
        assert_eq!(l("b:b").normal_form(), l(":b"));
        assert_eq!(l("bab:ab").normal_form(), l(":ba"));
    }

    #[test]
    fn equivalence() {
        assert!(gamma_equiv(&l(":b"), &l("b:b")));
        assert!(!gamma_equiv(&l(":a"), &l(":b")));
        assert!(!gamma_equiv(&l("aaa:baa"), &l(":ab")));
        assert!(up_equal(&l("aba:baba"), &l("a:ba")));
        assert!(!up_equal(&l(":ab"), &l(":ba")));
        assert!(up_equal(&l(":a"), &l(":aa")));
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(l(":ab").expansions(2), vec![l("a:ba"), l(":abab")]);
        assert_eq!(l("b:b").expansions(3), vec![l("bb:b"), l("b:bb"), l("b:bbb")]);
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root("abab"), "ab");
        assert_eq!(primitive_root("aba"), "aba");
        assert_eq!(primitive_root("aaaa"), "a");
    }

    #[test]
    fn enumeration_counts() {
        let a = Alphabet::from_letters("a").unwrap();
        let ab = Alphabet::from_letters("ab").unwrap();
        assert_eq!(enumerate_lassos(&a, 0, 1), vec![l(":a")]);
        assert_eq!(enumerate_lassos(&ab, 1, 1).len(), 6);
        assert_eq!(enumerate_lassos(&ab, 2, 2).len(), 42);
    }

    #[test]
    fn bounded_equivalents_are_exactly_the_class() {
        let ab = Alphabet::from_letters("ab").unwrap();
        for x in enumerate_lassos(&ab, 2, 3) {
            let mut got = equivalents_within(&x, 3, 4);
            got.sort();
            let mut want: Vec<Lasso> =
                enumerate_lassos(&ab, 3, 4).into_iter().filter(|y| gamma_equiv(&x, y)).collect();
            want.sort();
            assert_eq!(got, want, "{x}");
        }
    }
}
