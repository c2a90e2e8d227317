//! Configuration checking: which vertices outside the candidate solution may
//! be added back.
//!
//! A removed vertex gets its flag cleared and may only re-enter once some
//! vertex in its neighbourhood changes state. The one-level strategy watches
//! N(v); the two-level strategy watches N²(v), the vertices within distance 2.

use std::str::FromStr;

use crate::error::Error;
use crate::graph::{Graph, TwoHopScratch};

/// Flag-update rule applied on every add and remove.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CcStrategy {
    OneLevel,
    #[default]
    TwoLevel,
    /// Every vertex outside S is always allowed.
    Disabled,
}

impl CcStrategy {
    pub fn label(self) -> &'static str {
        match self {
            CcStrategy::OneLevel => "one-level",
            CcStrategy::TwoLevel => "two-level",
            CcStrategy::Disabled => "off",
        }
    }
}

impl FromStr for CcStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "two-level" => Ok(CcStrategy::TwoLevel),
            "one-level" => Ok(CcStrategy::OneLevel),
            "off" => Ok(CcStrategy::Disabled),
            _ => Err(Error::Config(format!("unknown cc strategy {s:?}"))),
        }
    }
}

/// The per-vertex ConfChange flags together with the rule that maintains them.
#[derive(Clone, Debug)]
pub struct ConfChange {
    strategy: CcStrategy,
    flags: Vec<bool>,
}

impl ConfChange {
    /// All flags start set.
    pub fn new(strategy: CcStrategy, n: usize) -> Self {
        Self {
            strategy,
            flags: vec![true; n],
        }
    }

    pub fn strategy(&self) -> CcStrategy {
        self.strategy
    }

    #[inline]
    pub fn is_changed(&self, v: usize) -> bool {
        self.strategy == CcStrategy::Disabled || self.flags[v]
    }

    /// Raw flag, ignoring the strategy.
    pub fn flag(&self, v: usize) -> bool {
        self.flags[v]
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    /// Applies the removal rule for `v`. Returns the number of flag writes.
    pub fn on_remove(&mut self, g: &Graph, scratch: &mut TwoHopScratch, v: usize) -> usize {
        match self.strategy {
            CcStrategy::Disabled => 0,
            CcStrategy::OneLevel => {
                self.flags[v] = false;
                for &u in g.neighbors(v) {
                    self.flags[u as usize] = true;
                }
                1 + g.degree(v)
            }
            CcStrategy::TwoLevel => {
                self.flags[v] = false;
                let ring = g.two_level_neighbors(v, scratch);
                for &u in ring {
                    self.flags[u as usize] = true;
                }
                1 + ring.len()
            }
        }
    }

    /// Applies the addition rule for `v`; v's own flag is left alone.
    /// Returns the number of flag writes.
    pub fn on_add(&mut self, g: &Graph, scratch: &mut TwoHopScratch, v: usize) -> usize {
        match self.strategy {
            CcStrategy::Disabled => 0,
            CcStrategy::OneLevel => {
                for &u in g.neighbors(v) {
                    self.flags[u as usize] = true;
                }
                g.degree(v)
            }
            CcStrategy::TwoLevel => {
                let ring = g.two_level_neighbors(v, scratch);
                for &u in ring {
                    self.flags[u as usize] = true;
                }
                ring.len()
            }
        }
    }
}
