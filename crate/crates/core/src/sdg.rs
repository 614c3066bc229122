use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

/// One of the 17 UN Sustainable Development Goals, used as a class label.
///
/// The inner id is guaranteed to lie in `1..=17`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Sdg(u8);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("SDG id {0} is outside 1..=17")]
pub struct SdgRangeError(pub u8);

impl Sdg {
    pub const FIRST: Sdg = Sdg(1);
    pub const LAST: Sdg = Sdg(17);

    pub fn new(id: u8) -> Result<Self, SdgRangeError> {
        if (1..=17).contains(&id) {
            Ok(Sdg(id))
        } else {
            Err(SdgRangeError(id))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// All 17 goals in ascending order.
    pub fn all() -> impl Iterator<Item = Sdg> {
        (1..=17).map(Sdg)
    }
}

impl TryFrom<u8> for Sdg {
    type Error = SdgRangeError;

    fn try_from(id: u8) -> Result<Self, Self::Error> {
        Sdg::new(id)
    }
}

impl fmt::Display for Sdg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Sdg {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let id = u8::deserialize(deserializer)?;
        Sdg::new(id).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_is_enforced() {
        assert!(Sdg::new(0).is_err());
        assert!(Sdg::new(18).is_err());
        assert_eq!(Sdg::new(1).unwrap().get(), 1);
        assert_eq!(Sdg::new(17).unwrap().get(), 17);
        assert_eq!(Sdg::all().count(), 17);
    }

    #[test]
    fn serde_rejects_out_of_range() {
        let ok: Sdg = serde_json::from_str("7").unwrap();
        assert_eq!(ok.get(), 7);
        assert!(serde_json::from_str::<Sdg>("0").is_err());
        assert!(serde_json::from_str::<Sdg>("18").is_err());
    }

    #[test]
    fn usable_as_json_map_key() {
        use std::collections::BTreeMap;
        let mut m = BTreeMap::new();
        m.insert(Sdg::new(3).unwrap(), 0.5f64);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"3":0.5}"#);
        let back: BTreeMap<Sdg, f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
