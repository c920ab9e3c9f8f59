use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::coeff::Field;
use crate::error::{AlgebraError, Result};
use crate::monomial::MonomialOrder;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

/// A polynomial ring `k[x_1..x_n]` with a fixed monomial order.
///
/// Cheap to clone. Two rings are equal when their variables, field and order
/// agree, so polynomials built from structurally identical rings interoperate.
#[derive(Clone, Eq)]
pub struct PolyRing(Arc<RingData>);

impl std::hash::Hash for PolyRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Front,
    Back,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S], order: MonomialOrder) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        if let MonomialOrder::Weighted(w) = &order {
            if w.len() != vars.len() {
                return Err(AlgebraError::InvalidArgument(format!(
                    "weight vector has length {} for {} variables",
                    w.len(),
                    vars.len()
                )));
            }
        }
        Ok(PolyRing(Arc::new(RingData { vars, field, order })))
    }

    /// `QQ[vars]` with grevlex.
    pub fn rational<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        Self::new(Field::Rational, vars, MonomialOrder::Grevlex)
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        Self::new(self.field(), self.vars(), order)
    }

    pub fn with_field(&self, field: Field) -> Result<Self> {
        Self::new(field, self.vars(), self.order().clone())
    }

    /// Adds `new_vars` at the front or back under `order`.
    pub fn extend<S: AsRef<str>>(
        &self,
        new_vars: &[S],
        position: Position,
        order: MonomialOrder,
    ) -> Result<Self> {
        for v in new_vars {
            if self.var_index(v.as_ref()).is_some() {
                return Err(AlgebraError::NameCollision(v.as_ref().to_string()));
            }
        }
        let new: Vec<String> = new_vars.iter().map(|s| s.as_ref().to_string()).collect();
        let vars = match position {
            Position::Front => new.iter().chain(self.vars()).cloned().collect::<Vec<_>>(),
            Position::Back => self.vars().iter().chain(&new).cloned().collect::<Vec<_>>(),
        };
        Self::new(self.field(), &vars, order)
    }

    /// Ring over the same field with the named variables moved to the front
    /// and an order eliminating them.
    pub fn elimination_ring(&self, eliminate: &[String]) -> Result<Self> {
        for v in eliminate {
            if self.var_index(v).is_none() {
                return Err(AlgebraError::UnknownVariable(v.clone()));
            }
        }
        let mut vars: Vec<String> = eliminate.to_vec();
        vars.extend(
            self.vars()
                .iter()
                .filter(|v| !eliminate.contains(v))
                .cloned(),
        );
        Self::new(self.field(), &vars, MonomialOrder::Block(eliminate.len()))
    }

    /// A variable name of the form `{stem}{n}` not used in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        (0..)
            .map(|n| format!("{stem}{n}"))
            .find(|c| self.var_index(c).is_none())
            .expect("infinitely many candidates")
    }

    pub(crate) fn describe(&self) -> String {
        format!("{}[{}]", self.field(), self.vars().join(","))
    }
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.describe(), self.order())
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extension_keeps_variable_order() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let s = r
            .extend(&["u", "v"], Position::Back, MonomialOrder::Grevlex)
            .unwrap();
        assert_eq!(s.vars(), &["x", "y", "u", "v"]);
        let t = r
            .extend(&["t"], Position::Front, MonomialOrder::Block(1))
            .unwrap();
        assert_eq!(t.vars(), &["t", "x", "y"]);
        assert!(t.order().eliminates_prefix(1));
    }

    #[test]
    fn name_collisions_are_rejected() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        assert_eq!(
            r.extend(&["x"], Position::Back, MonomialOrder::Grevlex),
            Err(AlgebraError::NameCollision("x".into()))
        );
        assert!(PolyRing::rational(&["x", "x"]).is_err());
    }

    #[test]
    fn fresh_names_avoid_existing_ones() {
        let r = PolyRing::rational(&["w0", "w1"]).unwrap();
        assert_eq!(r.fresh_name("w"), "w2");
    }
}
