//! The acting group. Only ℤ₂ = {e, σ} is instantiated.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A finite group given by its multiplication table.
pub trait FiniteGroup: Copy + Eq + fmt::Debug {
    fn identity() -> Self;
    fn compose(self, other: Self) -> Self;
    fn inverse(self) -> Self;
    fn elements() -> Vec<Self>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupElement {
    Identity,
    Sigma,
}

impl GroupElement {
    pub fn is_identity(self) -> bool {
        self == GroupElement::Identity
    }
}

impl FiniteGroup for GroupElement {
    fn identity() -> Self {
        GroupElement::Identity
    }

    fn compose(self, other: Self) -> Self {
        if self == other {
            GroupElement::Identity
        } else {
            GroupElement::Sigma
        }
    }

    fn inverse(self) -> Self {
        self
    }

    fn elements() -> Vec<Self> {
        vec![GroupElement::Identity, GroupElement::Sigma]
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Identity => f.write_str("e"),
            GroupElement::Sigma => f.write_str("sigma"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_on_table() {
        let all = GroupElement::elements();
        let e = GroupElement::identity();
        for &a in &all {
            assert_eq!(a.compose(e), a);
            assert_eq!(e.compose(a), a);
            assert_eq!(a.compose(a.inverse()), e);
            for &b in &all {
                for &c in &all {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        assert_eq!(GroupElement::Sigma.compose(GroupElement::Sigma), e);
    }
}
