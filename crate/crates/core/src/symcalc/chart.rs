use std::sync::Arc;

use super::SymError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoordKind {
    /// May appear inside coefficients.
    Full,
    /// Appears only through its differential; every coefficient is constant
    /// along it.
    Angle,
}

/// A coordinate chart. Coordinate `k` is polynomial variable `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chart {
    name: String,
    coords: Vec<(String, CoordKind)>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: impl Into<String>, coords: Vec<(String, CoordKind)>) -> Result<ChartRef, SymError> {
        if coords.len() > 64 {
            return Err(SymError::Chart("at most 64 coordinates are supported".into()));
        }
        for (i, (a, _)) in coords.iter().enumerate() {
            if a.is_empty() || !a.chars().next().unwrap().is_alphabetic() || !a.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(SymError::Chart(format!("invalid coordinate name '{a}'")));
            }
            if a == "i" {
                return Err(SymError::Chart("'i' is reserved for the imaginary unit".into()));
            }
            if coords[..i].iter().any(|(b, _)| b == a) {
                return Err(SymError::Chart(format!("duplicate coordinate '{a}'")));
            }
        }
        Ok(Arc::new(Chart { name: name.into(), coords }))
    }

    /// Convenience constructor: all coordinates full.
    pub fn full(name: &str, names: &[&str]) -> ChartRef {
        Self::new(name, names.iter().map(|n| (n.to_string(), CoordKind::Full)).collect()).expect("valid chart")
    }

    /// Convenience constructor with explicit kinds.
    pub fn with_kinds(name: &str, coords: &[(&str, CoordKind)]) -> ChartRef {
        Self::new(name, coords.iter().map(|(n, k)| (n.to_string(), *k)).collect()).expect("valid chart")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord_name(&self, k: usize) -> &str {
        &self.coords[k].0
    }

    pub fn kind(&self, k: usize) -> CoordKind {
        self.coords[k].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|(n, _)| n == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.coords.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn coords(&self) -> &[(String, CoordKind)] {
        &self.coords
    }

    /// Bitmask of angle coordinates.
    pub fn angle_mask(&self) -> u64 {
        self.coords.iter().enumerate().filter(|(_, (_, k))| *k == CoordKind::Angle).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// The chart with coordinate `k` deleted.
    pub fn without(&self, k: usize, name: &str) -> ChartRef {
        let mut coords = self.coords.clone();
        coords.remove(k);
        Arc::new(Chart { name: name.to_string(), coords })
    }
}

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
