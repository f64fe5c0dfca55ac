use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered generator names, each flagged as invertible (Laurent) or not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    names: Vec<String>,
    invertible: Vec<bool>,
}

/// Identifier grammar: an ASCII letter followed by letters, digits or `_`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, bool)>) -> Result<Arc<Self>> {
        let (names, invertible): (Vec<String>, Vec<bool>) =
            vars.into_iter().map(|(s, inv)| (s.into(), inv)).unzip();
        if names.is_empty() {
            return Err(Error::InvalidSignature("no variables".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::InvalidSignature(format!("`{name}` is not an identifier")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(Signature { names, invertible }))
    }

    /// A signature without invertible variables.
    pub fn polynomial(names: &[&str]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| (*n, false)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        self.invertible[i]
    }

    pub fn has_invertible(&self) -> bool {
        self.invertible.iter().any(|&b| b)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for Signature {
    /// Renders as the `vars` line of an algebra file, `*` marking invertible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(name)?;
            if self.invertible[i] {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}
