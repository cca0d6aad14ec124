//! The ambient polynomial ring: a prime field plus a named variable roster.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use std::fmt;
use std::sync::Arc;

/// A polynomial ring F_p[x_1..x_n]. Shared behind `Arc`; two rings are the
/// same iff modulus and variable names agree.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(field: PrimeField, vars: Vec<String>) -> Result<Arc<Ring>> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::Invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    /// Convenience constructor over the default field.
    pub fn default_with_vars(names: &[&str]) -> Arc<Ring> {
        Ring::new(
            PrimeField::default(),
            names.iter().map(|s| s.to_string()).collect(),
        )
        .expect("valid variable names")
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Extend by fresh variables placed in front (used by elimination
    /// computations; the new variables get top priority in block orders).
    pub fn prepend_vars(&self, fresh: &[&str]) -> Result<Arc<Ring>> {
        let mut vars: Vec<String> = fresh.iter().map(|s| s.to_string()).collect();
        for v in &self.vars {
            if fresh.contains(&v.as_str()) {
                return Err(Error::Invalid(format!("variable {v} already present")));
            }
            vars.push(v.clone());
        }
        Ring::new(self.field, vars)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[{}]", self.field.modulus(), self.vars.join(","))
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        assert_eq!(r.nvars(), 3);
        assert_eq!(r.var_index("y"), Some(1));
        assert_eq!(r.to_string(), "F32003[x,y,z]");
    }

    #[test]
    fn duplicates_rejected() {
        assert!(Ring::new(
            PrimeField::default(),
            vec!["x".into(), "x".into()]
        )
        .is_err());
    }

    #[test]
    fn prepend() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let r2 = r.prepend_vars(&["t"]).unwrap();
        assert_eq!(r2.vars(), &["t", "x", "y"]);
        assert!(r.prepend_vars(&["x"]).is_err());
    }
}
