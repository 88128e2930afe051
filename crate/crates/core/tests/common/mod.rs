#![allow(dead_code)]

use std::path::PathBuf;

use lassokit::lassoexp::LassoExpr;
use lassokit::{Alphabet, LassoAutomaton, OmegaExpr, RatExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ab() -> Alphabet {
    Alphabet::from_letters("ab").unwrap()
}

pub fn load(name: &str) -> LassoAutomaton {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    LassoAutomaton::read(&text).unwrap()
}

/// Seeded generator of random expressions and automata.
pub struct Gen {
    pub rng: ChaCha8Rng,
    letters: Vec<char>,
}

impl Gen {
    pub fn new(seed: u64, alphabet: &Alphabet) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), letters: alphabet.letters().to_vec() }
    }

    pub fn letter(&mut self) -> char {
        self.letters[self.rng.gen_range(0..self.letters.len())]
    }

    pub fn word(&mut self, max_len: usize) -> String {
        let n = self.rng.gen_range(0..=max_len);
        (0..n).map(|_| self.letter()).collect()
    }

    /// Random expression with about `size` nodes.
    pub fn rexp(&mut self, size: usize) -> RatExpr {
        if size <= 1 {
            return match self.rng.gen_range(0..10) {
                0 => RatExpr::Zero,
                1 => RatExpr::One,
                _ => RatExpr::Letter(self.letter()),
            };
        }
        match self.rng.gen_range(0..5) {
            0 => RatExpr::star(self.rexp(size - 1)),
            1 | 2 => {
                let k = self.rng.gen_range(1..size);
                RatExpr::concat(self.rexp(k), self.rexp(size - k))
            }
            _ => {
                let k = self.rng.gen_range(1..size);
                RatExpr::sum(self.rexp(k), self.rexp(size - k))
            }
        }
    }

    /// Random expression without the empty word property.
    pub fn proper_rexp(&mut self, size: usize) -> RatExpr {
        let r = self.rexp(size);
        if r.ewp() {
            RatExpr::concat(RatExpr::Letter(self.letter()), r)
        } else {
            r
        }
    }

    pub fn lexp(&mut self, size: usize) -> LassoExpr {
        if size <= 2 {
            return if self.rng.gen_range(0..8) == 0 {
                LassoExpr::Zero
            } else {
                LassoExpr::Circle(self.proper_rexp(size.max(1)))
            };
        }
        match self.rng.gen_range(0..3) {
            0 => LassoExpr::Circle(self.proper_rexp(size)),
            1 => {
                let k = self.rng.gen_range(1..size);
                LassoExpr::prefix(self.rexp(k), self.lexp(size - k))
            }
            _ => {
                let k = self.rng.gen_range(1..size);
                LassoExpr::sum(self.lexp(k), self.lexp(size - k))
            }
        }
    }

    pub fn oexp(&mut self, size: usize) -> OmegaExpr {
        if size <= 2 {
            return OmegaExpr::Power(self.proper_rexp(size.max(1)));
        }
        match self.rng.gen_range(0..3) {
            0 => OmegaExpr::Power(self.proper_rexp(size)),
            1 => {
                let k = self.rng.gen_range(1..size);
                OmegaExpr::prefix(self.rexp(k), self.oexp(size - k))
            }
            _ => {
                let k = self.rng.gen_range(1..size);
                OmegaExpr::sum(self.oexp(k), self.oexp(size - k))
            }
        }
    }

    pub fn automaton(&mut self, nx: usize, ny: usize) -> LassoAutomaton {
        let k = self.letters.len();
        let d1 = (0..nx * k).map(|_| self.rng.gen_range(0..nx)).collect();
        let d2 = (0..nx * k).map(|_| self.rng.gen_range(0..ny)).collect();
        let d3 = (0..ny * k).map(|_| self.rng.gen_range(0..ny)).collect();
        let finals = (0..ny).map(|_| self.rng.gen_bool(0.4)).collect();
        let alphabet = Alphabet::new(self.letters.iter().copied()).unwrap();
        LassoAutomaton::with_default_names(alphabet, d1, d2, d3, 0, finals).unwrap()
    }
}
