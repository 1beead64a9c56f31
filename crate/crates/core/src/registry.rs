//! Named, runtime-selectable strategies for distances and order relations.

use std::collections::BTreeMap;

use crate::barcode::Barcode;
use crate::distances::{bottleneck, wasserstein, Matching};
use crate::error::{Error, Result};
use crate::multiperm::CanonicalInvariant;

/// A distance between barcodes with an optimal matching as witness.
pub trait DistanceMetric: Send + Sync {
    fn name(&self) -> &'static str;

    /// `q` is ignored by metrics that have no exponent.
    fn distance(&self, left: &Barcode, right: &Barcode, q: f64) -> Result<(f64, Matching)>;
}

/// A partial order on canonical words of one shape.
pub trait OrderRelation: Send + Sync {
    fn name(&self) -> &'static str;

    fn leq(&self, s: &CanonicalInvariant, t: &CanonicalInvariant) -> Result<bool>;

    fn compare(&self, s: &CanonicalInvariant, t: &CanonicalInvariant) -> Result<Comparison> {
        Ok(match (self.leq(s, t)?, self.leq(t, s)?) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn as_str(&self) -> &'static str {
        match self {
            Comparison::Less => "LT",
            Comparison::Greater => "GT",
            Comparison::Equal => "EQ",
            Comparison::Incomparable => "INCOMPARABLE",
        }
    }
}

pub struct Bottleneck;

impl DistanceMetric for Bottleneck {
    fn name(&self) -> &'static str {
        "bottleneck"
    }

    fn distance(&self, left: &Barcode, right: &Barcode, _q: f64) -> Result<(f64, Matching)> {
        Ok(bottleneck(left, right))
    }
}

pub struct Wasserstein;

impl DistanceMetric for Wasserstein {
    fn name(&self) -> &'static str {
        "wasserstein"
    }

    fn distance(&self, left: &Barcode, right: &Barcode, q: f64) -> Result<(f64, Matching)> {
        wasserstein(left, right, q)
    }
}

/// Containment of `iota` inversion sets.
pub struct NewmanOrder;

impl OrderRelation for NewmanOrder {
    fn name(&self) -> &'static str {
        "newman"
    }

    fn leq(&self, s: &CanonicalInvariant, t: &CanonicalInvariant) -> Result<bool> {
        s.newman_leq(t)
    }
}

/// Componentwise containment of inversion multisets.
pub struct MultisetOrder;

impl OrderRelation for MultisetOrder {
    fn name(&self) -> &'static str {
        "multiset"
    }

    fn leq(&self, s: &CanonicalInvariant, t: &CanonicalInvariant) -> Result<bool> {
        s.prec(t)
    }
}

/// Strategies of one kind, keyed by name.
pub struct Registry<S: ?Sized> {
    kind: &'static str,
    entries: BTreeMap<&'static str, Box<S>>,
}

impl<S: ?Sized> Registry<S> {
    pub fn empty(kind: &'static str) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &'static str, strategy: Box<S>) -> &mut Self {
        self.entries.insert(name, strategy);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&S> {
        self.entries
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().collect::<Vec<_>>().join(", "),
            })
    }
}

impl Registry<dyn DistanceMetric> {
    pub fn metrics() -> Self {
        let mut r = Self::empty("metric");
        r.register("bottleneck", Box::new(Bottleneck))
            .register("wasserstein", Box::new(Wasserstein));
        r
    }
}

impl Registry<dyn OrderRelation> {
    pub fn orders() -> Self {
        let mut r = Self::empty("order");
        r.register("newman", Box::new(NewmanOrder))
            .register("multiset", Box::new(MultisetOrder));
        r
    }
}
