use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;

use super::dense::DensePerm;
use crate::error::{Error, Result};

/// One letter of a word in the generators: generator index, possibly inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A permutation group given by generators, with their inverses cached.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<DensePerm>,
    inverses: Vec<DensePerm>,
    names: Vec<String>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<DensePerm>) -> Result<PermGroup> {
        let names = (0..generators.len()).map(|i| format!("g{i}")).collect();
        PermGroup::with_names(degree, generators, names)
    }

    pub fn with_names(degree: usize, generators: Vec<DensePerm>, names: Vec<String>) -> Result<PermGroup> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        assert_eq!(names.len(), generators.len());
        let inverses = generators.iter().map(DensePerm::inverse).collect();
        Ok(PermGroup {
            degree,
            generators,
            inverses,
            names,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[DensePerm] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, l: Letter) -> &DensePerm {
        if l.inverse {
            &self.inverses[l.generator]
        } else {
            &self.generators[l.generator]
        }
    }

    /// Breadth-first closure of `point` under the generators.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// All orbits, each listed from its least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let orb = self.orbit(p);
                for &x in &orb {
                    seen[x] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    /// Every generator is an even permutation.
    pub fn all_even(&self) -> bool {
        self.generators.iter().all(|g| g.sign() == 1)
    }

    /// A word of `len` letters drawn uniformly from the generators and their inverses.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Vec<Letter> {
        let k = self.generators.len();
        (0..len)
            .map(|_| {
                let c = rng.gen_range(0..2 * k);
                Letter {
                    generator: c % k,
                    inverse: c >= k,
                }
            })
            .collect()
    }

    pub fn evaluate(&self, word: &[Letter]) -> DensePerm {
        let mut acc = DensePerm::identity(self.degree);
        for &l in word {
            acc.then_assign(self.letter(l));
        }
        acc
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        let mut out = String::new();
        for (i, l) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[l.generator]);
            if l.inverse {
                let _ = write!(out, "^-1");
            }
        }
        out
    }
}
