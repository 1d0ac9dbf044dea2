use std::fmt;

use super::word::{self, cyclic_reduce, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub rels: Vec<Word>,
    pub provenance: Option<String>,
}

impl Presentation {
    /// Validates letters and cyclically reduces relators; trivial relators are dropped.
    pub fn new(gens: Vec<String>, rels: Vec<Word>) -> Result<Self> {
        let n = gens.len() as i32;
        for (i, r) in rels.iter().enumerate() {
            if r.iter().any(|&l| l == 0 || l.abs() > n) {
                return Err(Error::Input(format!("relator {i} uses a generator out of range")));
            }
        }
        let rels = rels.into_iter().map(|r| cyclic_reduce(&r)).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { gens, rels, provenance: None })
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn total_length(&self) -> usize {
        self.rels.iter().map(|r| r.len()).sum()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g == name)
    }

    pub fn word_string(&self, w: &[i32]) -> String {
        word::to_string(w, &self.gens)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.provenance {
            writeln!(f, "provenance \"{}\";", p.replace('"', "'"))?;
        }
        writeln!(f, "gens {};", self.gens.join(", "))?;
        let rels: Vec<String> = self.rels.iter().map(|r| self.word_string(r)).collect();
        write!(f, "rels {};", rels.join(",\n     "))
    }
}
