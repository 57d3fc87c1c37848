//! Defect category vocabulary.
//!
//! A [`CategorySet`] is an ordered list of category names; a category's id is
//! its position in the list, so ids are always dense from 0. Two presets
//! cover the usual inspection stages: the after-development set (ADI) and the
//! after-etch set (AEI). Custom sets are allowed anywhere a preset is.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// One named defect class. `id` is the index into the owning [`CategorySet`];
/// boxes refer to categories by this id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectCategory {
    pub id: u32,
    pub name: String,
}

/// Ordered, duplicate-free list of category names. Serialized as a plain
/// list of names; ids are implied by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct CategorySet {
    names: Vec<String>,
}

impl CategorySet {
    /// Builds a set from names, assigning dense ids 0..n in order.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Config("category set must not be empty".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::Config("category name must not be empty".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::Config(format!("duplicate category name: {a:?}")));
            }
        }
        Ok(CategorySet { names })
    }

    /// After-development-inspection line/space defect classes.
    pub fn adi() -> Self {
        CategorySet::new(["micro_bridge", "gap", "bridge", "line_collapse", "probable_gap"])
            .expect("preset is valid")
    }

    /// After-etch-inspection defect classes.
    pub fn aei() -> Self {
        CategorySet::new(["break", "bridge", "dark_spot", "pattern_collapse"])
            .expect("preset is valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Category for a given id, if in range.
    pub fn get(&self, id: u32) -> Option<DefectCategory> {
        self.names.get(id as usize).map(|name| DefectCategory {
            id,
            name: name.clone(),
        })
    }

    /// Name for a given id, if in range.
    pub fn name(&self, id: u32) -> Option<&str> {
        self.names.get(id as usize).map(String::as_str)
    }

    /// Id for a given name, if present.
    pub fn id_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// All ids, 0..n.
    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.names.len() as u32).into_iter()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

impl TryFrom<Vec<String>> for CategorySet {
    type Error = Error;
    fn try_from(names: Vec<String>) -> Result<Self> {
        CategorySet::new(names)
    }
}

impl From<CategorySet> for Vec<String> {
    fn from(set: CategorySet) -> Self {
        set.names
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_dense_and_names_resolve() {
        let set = CategorySet::adi();
        assert_eq!(set.len(), 5);
        assert_eq!(set.id_of("micro_bridge"), Some(0));
        assert_eq!(set.id_of("probable_gap"), Some(4));
        assert_eq!(set.name(2), Some("bridge"));
        assert_eq!(set.get(5), None);
    }

    #[test]
    fn aei_preset_has_four_classes() {
        let set = CategorySet::aei();
        assert_eq!(set.names(), ["break", "bridge", "dark_spot", "pattern_collapse"]);
    }

    #[test]
    fn duplicates_and_empties_rejected() {
        assert!(CategorySet::new(["a", "b", "a"]).is_err());
        assert!(CategorySet::new(Vec::<String>::new()).is_err());
        assert!(CategorySet::new(["a", ""]).is_err());
    }

    #[test]
    fn serde_round_trip_is_a_name_list() {
        let set = CategorySet::adi();
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(
            json,
            r#"["micro_bridge","gap","bridge","line_collapse","probable_gap"]"#
        );
        let back: CategorySet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }
}
