//! Ultimately periodic infinite sequences.

use std::fmt;

/// An infinite sequence `prefix . cycle^ω`, always kept canonical: the
/// cycle is its own minimal period and the prefix cannot be shortened by
/// rotating the cycle. Canonical lassos compare equal iff the infinite
/// sequences do.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lasso<T> {
    prefix: Vec<T>,
    cycle: Vec<T>,
}

impl<T: Clone + Eq> Lasso<T> {
    /// # Panics
    /// If `cycle` is empty.
    pub fn new(prefix: Vec<T>, cycle: Vec<T>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        let mut lasso = Lasso { prefix, cycle };
        lasso.canonicalize();
        lasso
    }

    pub fn constant(x: T) -> Self {
        Lasso {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    fn canonicalize(&mut self) {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        self.cycle.truncate(period);
        while let Some(last) = self.prefix.last() {
            if *last != self.cycle[self.cycle.len() - 1] {
                break;
            }
            self.prefix.pop();
            self.cycle.rotate_right(1);
        }
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    pub fn get(&self, i: usize) -> &T {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Indices `0..window()` determine the whole sequence.
    pub fn window(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Positions sufficient to compare `self` with `other` pointwise.
    pub fn joint_window(&self, other: &Self) -> usize {
        self.prefix.len().max(other.prefix.len()) + lcm(self.cycle.len(), other.cycle.len())
    }

    /// Pointwise combination; the result is canonical again.
    pub fn zip_with<U: Clone + Eq, R: Clone + Eq>(&self, other: &Lasso<U>, f: impl Fn(&T, &U) -> R) -> Lasso<R> {
        let pre = self.prefix.len().max(other.prefix().len());
        let per = lcm(self.cycle.len(), other.cycle().len());
        let prefix = (0..pre).map(|i| f(self.get(i), other.get(i))).collect();
        let cycle = (pre..pre + per).map(|i| f(self.get(i), other.get(i))).collect();
        Lasso::new(prefix, cycle)
    }

    pub fn map<R: Clone + Eq>(&self, f: impl Fn(&T) -> R) -> Lasso<R> {
        Lasso::new(
            self.prefix.iter().map(&f).collect(),
            self.cycle.iter().map(&f).collect(),
        )
    }

    /// `head . self`.
    pub fn cons(&self, head: T) -> Self {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(head);
        prefix.extend(self.prefix.iter().cloned());
        Lasso::new(prefix, self.cycle.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Lasso<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} | {:?}", self.prefix, self.cycle)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
