//! Monomials of the free commutative nonassociative algebra on one
//! indeterminate: binary trees with leaves `X`, stored canonically.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Debug)]
enum Node {
    Leaf,
    Product {
        left: MagmaTerm,
        right: MagmaTerm,
        degree: usize,
    },
}

/// A canonical commutative binary tree. At every product node
/// `left <= right` under the term order (degree first, then left subtree,
/// then right subtree), so `a·b` and `b·a` build the same value.
///
/// Subtrees are shared, which keeps towers like `X^[k]` linear in `k`.
#[derive(Clone)]
pub struct MagmaTerm(Arc<Node>);

impl MagmaTerm {
    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self(Arc::new(Node::Leaf))
    }

    /// The canonical product `a·b`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        Self(Arc::new(Node::Product {
            left: left.clone(),
            right: right.clone(),
            degree: a.degree() + b.degree(),
        }))
    }

    /// Principal power `X^k`: `X^1 = X`, `X^k = X·X^(k-1)`.
    pub fn principal_power(k: usize) -> Self {
        assert!(k >= 1, "powers start at 1");
        let x = Self::x();
        let mut acc = x.clone();
        for _ in 1..k {
            acc = Self::product(&x, &acc);
        }
        acc
    }

    /// Plenary power `X^[k]`: `X^[1] = X`, `X^[k] = X^[k-1]·X^[k-1]`.
    pub fn plenary_power(k: usize) -> Self {
        assert!(k >= 1, "powers start at 1");
        let mut acc = Self::x();
        for _ in 1..k {
            acc = Self::product(&acc, &acc);
        }
        acc
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Product { degree, .. } => *degree,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(&*self.0, Node::Leaf)
    }

    /// The two factors of a product node.
    pub fn factors(&self) -> Option<(&MagmaTerm, &MagmaTerm)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Product { left, right, .. } => Some((left, right)),
        }
    }

    /// `Some(k)` when this is the principal power `X^k`.
    pub fn as_principal_power(&self) -> Option<usize> {
        match self.factors() {
            None => Some(1),
            Some((l, r)) if l.is_leaf() => r.as_principal_power().map(|k| k + 1),
            Some(_) => None,
        }
    }

    /// `Some(k)` when this is the plenary power `X^[k]`.
    pub fn as_plenary_power(&self) -> Option<usize> {
        match self.factors() {
            None => Some(1),
            Some((l, r)) if l == r => l.as_plenary_power().map(|k| k + 1),
            Some(_) => None,
        }
    }

    /// Stable identity of the shared node, for memoizing evaluations.
    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }
}

impl PartialEq for MagmaTerm {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MagmaTerm {}

impl PartialOrd for MagmaTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MagmaTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.degree().cmp(&other.degree()).then_with(|| {
            match (self.factors(), other.factors()) {
                (Some((la, ra)), Some((lb, rb))) => la.cmp(lb).then_with(|| ra.cmp(rb)),
                // equal degree and one side is a leaf: both are leaves
                _ => Ordering::Equal,
            }
        })
    }
}

impl Hash for MagmaTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree().hash(state);
        if let Some((l, r)) = self.factors() {
            l.hash(state);
            r.hash(state);
        }
    }
}

/// Writes the term as an atom of the identity grammar: `X`, `X^k`, `X^[k]`
/// or a parenthesized product.
pub(crate) fn write_atom(t: &MagmaTerm, out: &mut String) {
    if let Some(k) = t.as_principal_power() {
        match k {
            1 => out.push('X'),
            _ => out.push_str(&format!("X^{k}")),
        }
    } else if let Some(k) = t.as_plenary_power() {
        out.push_str(&format!("X^[{k}]"));
    } else {
        out.push('(');
        write_factor(t, out);
        out.push(')');
    }
}

/// Writes the term as a factor (a bare product `A*B` is allowed).
pub(crate) fn write_factor(t: &MagmaTerm, out: &mut String) {
    match t.factors() {
        Some((l, r)) if t.as_principal_power().is_none() && t.as_plenary_power().is_none() => {
            write_atom(l, out);
            out.push('*');
            write_atom(r, out);
        }
        _ => write_atom(t, out),
    }
}

impl fmt::Display for MagmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_factor(self, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for MagmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MagmaTerm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_canonical_form() {
        let x = MagmaTerm::x();
        let x2 = MagmaTerm::product(&x, &x);
        let a = MagmaTerm::product(&x, &x2);
        let b = MagmaTerm::product(&x2, &x);
        assert_eq!(a, b);
        assert_eq!(a.factors().unwrap().0.degree(), 1);
    }

    #[test]
    fn power_towers() {
        assert_eq!(MagmaTerm::principal_power(1), MagmaTerm::x());
        assert_eq!(MagmaTerm::principal_power(2), MagmaTerm::plenary_power(2));
        assert_eq!(MagmaTerm::plenary_power(3).degree(), 4);
        assert_eq!(MagmaTerm::plenary_power(9).degree(), 256);
        assert_eq!(MagmaTerm::principal_power(5).as_principal_power(), Some(5));
        assert_eq!(MagmaTerm::plenary_power(4).as_plenary_power(), Some(4));
        assert_eq!(MagmaTerm::plenary_power(3).as_principal_power(), None);
    }

    #[test]
    fn display_forms() {
        let x2 = MagmaTerm::principal_power(2);
        let x3 = MagmaTerm::principal_power(3);
        assert_eq!(MagmaTerm::product(&x3, &x3).to_string(), "X^3*X^3");
        let t = MagmaTerm::product(&MagmaTerm::plenary_power(3), &x2);
        assert_eq!(t.to_string(), "X^2*X^[3]");
        let nested = MagmaTerm::product(&t, &MagmaTerm::x());
        assert_eq!(nested.to_string(), "X*(X^2*X^[3])");
    }
}
