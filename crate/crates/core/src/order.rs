//! Monomial orders: lexicographic and degree-reverse-lexicographic, each with
//! a configurable variable priority.

use crate::monomial::Monomial;
use smallvec::SmallVec;
use std::cmp::Ordering;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A total, multiplicative monomial order with 1 minimal.
///
/// `priority[0]` is the most significant variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(priority: Vec<usize>) -> Self {
        assert_permutation(&priority);
        MonomialOrder {
            kind: OrderKind::Lex,
            priority,
        }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn degrevlex_with_priority(priority: Vec<usize>) -> Self {
        assert_permutation(&priority);
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            priority,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Ties break on the least significant differing variable,
                // with the smaller exponent winning.
                for &i in self.priority.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    /// A sort key that compares (as a plain integer vector) exactly like the
    /// order itself. Used to drive heaps without repeated comparator calls.
    pub fn key(&self, m: &Monomial) -> SmallVec<[i64; 9]> {
        let mut key: SmallVec<[i64; 9]> = SmallVec::with_capacity(self.priority.len() + 1);
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    key.push(m.exp(i) as i64);
                }
            }
            OrderKind::DegRevLex => {
                key.push(m.total_degree() as i64);
                for &i in self.priority.iter().rev() {
                    key.push(-(m.exp(i) as i64));
                }
            }
        }
        key
    }
}

fn assert_permutation(priority: &[usize]) {
    let mut seen = vec![false; priority.len()];
    for &i in priority {
        assert!(i < priority.len() && !seen[i], "priority must be a permutation");
        seen[i] = true;
    }
}
