use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::gf::Field;
use crate::p1curve::RationalMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Mobius,
    Squaring,
    Twist,
    Descent,
    Composition,
}

/// One elementary construction and the map it contributed.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    pub params: Value,
    pub map: RationalMap,
}

/// A rational self-map of P¹ with the chain of steps that built it. The
/// chain is listed outermost first, so the map is chain[0] ∘ chain[1] ∘ ….
#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    map: RationalMap,
    chain: Vec<Step>,
}

impl Cover {
    pub fn identity(k: &Field) -> Self {
        Cover {
            map: RationalMap::identity(k),
            chain: Vec::new(),
        }
    }

    pub fn from_step(kind: StepKind, params: Value, map: RationalMap) -> Self {
        Cover {
            chain: vec![Step {
                kind,
                params,
                map: map.clone(),
            }],
            map,
        }
    }

    /// A cover whose chain is a single opaque step that records its map.
    pub fn from_map(map: RationalMap) -> Self {
        Self::from_step(
            StepKind::Composition,
            serde_json::json!({ "map": crate::json::map(&map) }),
            map,
        )
    }

    /// Unchecked constructor, for deserialized covers.
    pub fn from_parts(map: RationalMap, chain: Vec<Step>) -> Self {
        Cover { map, chain }
    }

    pub fn map(&self) -> &RationalMap {
        &self.map
    }

    pub fn chain(&self) -> &[Step] {
        &self.chain
    }

    pub fn chain_mut(&mut self) -> &mut Vec<Step> {
        &mut self.chain
    }

    pub fn field(&self) -> &Field {
        self.map.field()
    }

    pub fn degree(&self) -> usize {
        self.map.degree()
    }

    /// self ∘ inner.
    pub fn then(&self, inner: &Cover) -> Cover {
        let mut chain = self.chain.clone();
        chain.extend(inner.chain.iter().cloned());
        Cover {
            map: self.map.compose(&inner.map),
            chain,
        }
    }

    pub fn recompose(&self) -> RationalMap {
        self.chain
            .iter()
            .fold(RationalMap::identity(self.field()), |acc, s| acc.compose(&s.map))
    }

    /// The chain recomposes to the map and the degrees multiply.
    pub fn chain_is_consistent(&self) -> bool {
        let product: usize = self.chain.iter().map(|s| s.map.degree()).product();
        self.recompose() == self.map && product == self.map.degree()
    }
}
