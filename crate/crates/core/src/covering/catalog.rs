use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error};

/// The small graphs arising as unions of overlapping 2-stars and triangles.
///
/// Canonical labelings (1-based in display, 0-based in [`MotifId::edges`]):
///
/// | motif     | edges                    |
/// |-----------|--------------------------|
/// | 1-star    | 12                       |
/// | 2-star    | 12 13                    |
/// | 3-cycle   | 12 13 23                 |
/// | 3-star    | 14 24 34                 |
/// | 3-path    | 12 23 34                 |
/// | 4-cycle   | 12 23 34 14              |
/// | 3-pan     | 12 13 23 34              |
/// | diamond   | 12 13 23 24 34           |
/// | 4-star    | 15 25 35 45              |
/// | 4-path    | 12 23 34 45              |
/// | chair     | 12 23 34 35              |
/// | butterfly | 12 13 23 34 35 45        |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MotifId {
    OneStar,
    TwoStar,
    ThreeCycle,
    ThreeStar,
    ThreePath,
    FourCycle,
    ThreePan,
    Diamond,
    FourStar,
    FourPath,
    Chair,
    Butterfly,
}

impl MotifId {
    pub const ALL: [MotifId; 12] = [
        MotifId::OneStar,
        MotifId::TwoStar,
        MotifId::ThreeCycle,
        MotifId::ThreeStar,
        MotifId::ThreePath,
        MotifId::FourCycle,
        MotifId::ThreePan,
        MotifId::Diamond,
        MotifId::FourStar,
        MotifId::FourPath,
        MotifId::Chair,
        MotifId::Butterfly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MotifId::OneStar => "1-star",
            MotifId::TwoStar => "2-star",
            MotifId::ThreeCycle => "3-cycle",
            MotifId::ThreeStar => "3-star",
            MotifId::ThreePath => "3-path",
            MotifId::FourCycle => "4-cycle",
            MotifId::ThreePan => "3-pan",
            MotifId::Diamond => "diamond",
            MotifId::FourStar => "4-star",
            MotifId::FourPath => "4-path",
            MotifId::Chair => "chair",
            MotifId::Butterfly => "butterfly",
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            MotifId::OneStar => 2,
            MotifId::TwoStar | MotifId::ThreeCycle => 3,
            MotifId::ThreeStar
            | MotifId::ThreePath
            | MotifId::FourCycle
            | MotifId::ThreePan
            | MotifId::Diamond => 4,
            MotifId::FourStar | MotifId::FourPath | MotifId::Chair | MotifId::Butterfly => 5,
        }
    }

    /// Edges on vertices `0..vertex_count()`.
    pub fn edges(self) -> &'static [(u8, u8)] {
        match self {
            MotifId::OneStar => &[(0, 1)],
            MotifId::TwoStar => &[(0, 1), (0, 2)],
            MotifId::ThreeCycle => &[(0, 1), (0, 2), (1, 2)],
            MotifId::ThreeStar => &[(0, 3), (1, 3), (2, 3)],
            MotifId::ThreePath => &[(0, 1), (1, 2), (2, 3)],
            MotifId::FourCycle => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            MotifId::ThreePan => &[(0, 1), (0, 2), (1, 2), (2, 3)],
            MotifId::Diamond => &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            MotifId::FourStar => &[(0, 4), (1, 4), (2, 4), (3, 4)],
            MotifId::FourPath => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            MotifId::Chair => &[(0, 1), (1, 2), (2, 3), (2, 4)],
            MotifId::Butterfly => &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)],
        }
    }

    /// Edges as vertex bitmasks.
    pub fn edge_masks(self) -> Vec<u32> {
        self.edges()
            .iter()
            .map(|&(a, b)| (1u32 << a) | (1u32 << b))
            .collect()
    }

    /// The `r`-star motif, when it is in the catalog.
    pub fn star(r: usize) -> Option<MotifId> {
        match r {
            1 => Some(MotifId::OneStar),
            2 => Some(MotifId::TwoStar),
            3 => Some(MotifId::ThreeStar),
            4 => Some(MotifId::FourStar),
            _ => None,
        }
    }
}

impl fmt::Display for MotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MotifId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let id = match key.as_str() {
            "1-star" | "edge" | "k2" => MotifId::OneStar,
            "2-star" | "s2" | "2-path" | "wedge" => MotifId::TwoStar,
            "3-cycle" | "triangle" | "k3" => MotifId::ThreeCycle,
            "3-star" => MotifId::ThreeStar,
            "3-path" => MotifId::ThreePath,
            "4-cycle" => MotifId::FourCycle,
            "3-pan" | "paw" => MotifId::ThreePan,
            "diamond" => MotifId::Diamond,
            "4-star" => MotifId::FourStar,
            "4-path" => MotifId::FourPath,
            "chair" | "fork" => MotifId::Chair,
            "butterfly" | "bowtie" => MotifId::Butterfly,
            _ => return Err(invalid(format!("unknown motif '{s}'"))),
        };
        Ok(id)
    }
}

impl From<MotifId> for String {
    fn from(m: MotifId) -> String {
        m.name().to_string()
    }
}

impl TryFrom<String> for MotifId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_and_edge_counts_match_table() {
        let expected = [
            (2, 1),
            (3, 2),
            (3, 3),
            (4, 3),
            (4, 3),
            (4, 4),
            (4, 4),
            (4, 5),
            (5, 4),
            (5, 4),
            (5, 4),
            (5, 6),
        ];
        for (m, (v, e)) in MotifId::ALL.iter().zip(expected) {
            assert_eq!(m.vertex_count(), v, "{m}");
            assert_eq!(m.edges().len(), e, "{m}");
        }
    }

    #[test]
    fn every_vertex_is_used_and_edges_are_simple() {
        for m in MotifId::ALL {
            let mut seen = 0u32;
            for &(a, b) in m.edges() {
                assert!(a < b && (b as usize) < m.vertex_count());
                seen |= (1 << a) | (1 << b);
            }
            assert_eq!(seen, (1 << m.vertex_count()) - 1, "{m}");
        }
    }

    #[test]
    fn names_round_trip() {
        for m in MotifId::ALL {
            assert_eq!(m.name().parse::<MotifId>().unwrap(), m);
        }
        assert_eq!("triangle".parse::<MotifId>().unwrap(), MotifId::ThreeCycle);
        assert!("pentagon".parse::<MotifId>().is_err());
    }
}
