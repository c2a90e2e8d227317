//! Legacy greedy scoring functions used by the scoring ablations.
//!
//! With `d(u)` the number of uncovered vertices a candidate would cover and
//! `W(u)` their total weight:
//!
//! | kind | value            |
//! |------|------------------|
//! | S1   | d(u) / w(u)      |
//! | S2   | W(u) / w(u)      |
//! | S3   | W(u) - w(u)      |
//! | S4   | d(u) W(u) / w(u) |
//!
//! Counts range over the closed neighbourhood N[u] unless the open
//! variant is requested. Removal scores evaluate the same formula over the
//! vertices that would lose their only dominator and negate it.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{Score, SearchState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LegacyScoreKind {
    S1,
    S2,
    S3,
    S4,
}

impl LegacyScoreKind {
    pub const ALL: [LegacyScoreKind; 4] = [Self::S1, Self::S2, Self::S3, Self::S4];

    pub fn label(self) -> &'static str {
        match self {
            Self::S1 => "s1",
            Self::S2 => "s2",
            Self::S3 => "s3",
            Self::S4 => "s4",
        }
    }

    fn value(self, d: i64, big_w: i64, w: i64) -> Score {
        match self {
            Self::S1 => Score::new(d, w),
            Self::S2 => Score::new(big_w, w),
            Self::S3 => Score::integer(big_w - w),
            Self::S4 => Score::new(d * big_w, w),
        }
    }
}

/// Scoring function driving both add and remove selection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ScoreKind {
    /// Frequency-weighted coverage gain or loss, maintained incrementally.
    #[default]
    Freq,
    Legacy(LegacyScoreKind),
}

impl ScoreKind {
    pub fn label(self) -> &'static str {
        match self {
            ScoreKind::Freq => "freq",
            ScoreKind::Legacy(k) => k.label(),
        }
    }
}

impl FromStr for ScoreKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "freq" => Ok(ScoreKind::Freq),
            "s1" => Ok(ScoreKind::Legacy(LegacyScoreKind::S1)),
            "s2" => Ok(ScoreKind::Legacy(LegacyScoreKind::S2)),
            "s3" => Ok(ScoreKind::Legacy(LegacyScoreKind::S3)),
            "s4" => Ok(ScoreKind::Legacy(LegacyScoreKind::S4)),
            _ => Err(Error::Config(format!("unknown score {s:?}"))),
        }
    }
}

fn scan<F>(st: &SearchState<'_>, u: usize, open: bool, mut hit: F) -> (i64, i64)
where
    F: FnMut(usize) -> bool,
{
    let wg = st.weighted_graph();
    let (mut d, mut big_w) = (0i64, 0i64);
    for x in wg.graph().closed_neighbors(u).skip(usize::from(open)) {
        if hit(x) {
            d += 1;
            big_w += wg.weight(x);
        }
    }
    (d, big_w)
}

/// Add score of `u` (unchecked: `u` must lie outside S).
pub(crate) fn add_score(kind: LegacyScoreKind, st: &SearchState<'_>, u: usize, open: bool) -> Score {
    let (d, big_w) = scan(st, u, open, |x| st.cover_count(x) == 0);
    kind.value(d, big_w, st.weighted_graph().weight(u))
}

/// Negated removal score of `u` (unchecked: `u` must lie in S).
pub(crate) fn removal_score(kind: LegacyScoreKind, st: &SearchState<'_>, u: usize, open: bool) -> Score {
    let (d, big_w) = scan(st, u, open, |x| st.cover_count(x) == 1);
    let s = kind.value(d, big_w, st.weighted_graph().weight(u));
    Score::new(-s.num, s.den)
}

/// Legacy score of a candidate addition `u`, over N[u] (or N(u) when `open`).
pub fn legacy_score(kind: LegacyScoreKind, st: &SearchState<'_>, u: usize, open: bool) -> Result<Score> {
    if st.contains(u) {
        return Err(Error::Precondition(format!(
            "legacy add score requested for vertex {} already in S",
            u + 1
        )));
    }
    Ok(add_score(kind, st, u, open))
}

/// Removal counterpart of [`legacy_score`]: the formula over the vertices
/// `u` alone dominates, negated.
pub fn for_removal_negation(
    kind: LegacyScoreKind,
    st: &SearchState<'_>,
    u: usize,
    open: bool,
) -> Result<Score> {
    if !st.contains(u) {
        return Err(Error::Precondition(format!(
            "removal score requested for vertex {} outside S",
            u + 1
        )));
    }
    Ok(removal_score(kind, st, u, open))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::CcStrategy;
    use crate::graph::{Graph, WeightedGraph};
    use LegacyScoreKind::*;

    fn star() -> WeightedGraph {
        WeightedGraph::new(Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]), vec![1; 4]).unwrap()
    }

    #[test]
    fn empty_star_add_scores() {
        let wg = star();
        let st = SearchState::new(&wg, CcStrategy::TwoLevel);
        assert_eq!(legacy_score(S1, &st, 0, false).unwrap(), Score::new(4, 1));
        assert_eq!(legacy_score(S3, &st, 0, false).unwrap(), Score::integer(3));
        assert_eq!(legacy_score(S4, &st, 0, false).unwrap(), Score::integer(16));
        // open neighbourhood drops the vertex itself
        assert_eq!(legacy_score(S1, &st, 0, true).unwrap(), Score::new(3, 1));
        for v in 0..4 {
            assert_eq!(
                legacy_score(S1, &st, v, false).unwrap(),
                legacy_score(S2, &st, v, false).unwrap()
            );
        }
    }

    #[test]
    fn fully_covered_candidate() {
        let wg = WeightedGraph::new(Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]), vec![1, 5, 1, 1]).unwrap();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        assert_eq!(legacy_score(S1, &st, 1, false).unwrap(), Score::new(0, 5));
        assert_eq!(legacy_score(S2, &st, 1, false).unwrap(), Score::new(0, 5));
        assert_eq!(legacy_score(S3, &st, 1, false).unwrap(), Score::integer(-5));
        assert_eq!(legacy_score(S4, &st, 1, false).unwrap(), Score::integer(0));
        assert!(matches!(legacy_score(S1, &st, 0, false), Err(Error::Precondition(_))));
    }

    #[test]
    fn removal_scores() {
        let wg = star();
        let mut st = SearchState::new(&wg, CcStrategy::TwoLevel);
        st.add_vertex(0).unwrap();
        assert_eq!(for_removal_negation(S2, &st, 0, false).unwrap(), Score::new(-4, 1));
        assert_eq!(for_removal_negation(S3, &st, 0, false).unwrap(), Score::integer(-3));
        assert!(matches!(
            for_removal_negation(S1, &st, 1, false),
            Err(Error::Precondition(_))
        ));

        // leaf 1 is redundant next to the center
        st.add_vertex(1).unwrap();
        for k in [S1, S2, S4] {
            assert_eq!(for_removal_negation(k, &st, 1, false).unwrap(), Score::integer(0));
        }
        // S3 of an empty loss set is -(0 - w) = w
        assert_eq!(for_removal_negation(S3, &st, 1, false).unwrap(), Score::integer(1));
    }

    #[test]
    fn parse_score_kinds() {
        assert_eq!("freq".parse::<ScoreKind>().unwrap(), ScoreKind::Freq);
        for k in LegacyScoreKind::ALL {
            assert_eq!(k.label().parse::<ScoreKind>().unwrap(), ScoreKind::Legacy(k));
        }
        assert!("s5".parse::<ScoreKind>().is_err());
    }
}
